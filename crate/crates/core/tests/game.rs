mod common;

use common::*;
use respgames_core::game::json::RawGame;
use respgames_core::game::{
    chance_probability, check_perfect_recall, coalition_history, consistent_plays, enumerate_plays, history,
    play_probability, validate_raw, HistoryItem,
};
use respgames_core::gen::{random_game, random_mixed_profile, rng, GameParams, Grouping};
use respgames_core::{Coalition, Error, GameTree, Label, Owner, Play, Rational, StrategyProfile};

fn clauses(text: &str) -> Vec<&'static str> {
    let raw: RawGame = serde_json::from_str(text).unwrap();
    validate_raw(&raw).into_iter().map(|v| v.clause).collect()
}

#[test]
fn corpus_style_games_round_trip_byte_identical() {
    for g in [matching_pennies(), running_example(), refinement_counterexample(), forgetful()] {
        let text = g.to_json();
        let again = GameTree::from_json(&text).unwrap();
        assert_eq!(again.to_json(), text);
        assert_eq!(again.node_count(), g.node_count());
        assert_eq!(again.info_sets().len(), g.info_sets().len());
    }
}

#[test]
fn random_games_round_trip() {
    let mut rg = rng(11);
    for _ in 0..50 {
        let g = random_game(&mut rg, &GameParams::small(3));
        let text = g.to_json();
        assert_eq!(GameTree::from_json(&text).unwrap().to_json(), text);
    }
}

#[test]
fn validation_reports_each_broken_clause() {
    let unknown_child = r#"{"players":1,"root":"a","nodes":[
        {"id":"a","owner":"p1","actions":[{"name":"x","child":"zz"}]}],"info_sets":[]}"#;
    assert!(clauses(unknown_child).contains(&"unknown-child"));

    let unlabeled = r#"{"players":1,"root":"a","nodes":[
        {"id":"a","owner":"p1","actions":[{"name":"x","child":"b"}]},
        {"id":"b","owner":"terminal","actions":[]}],"info_sets":[]}"#;
    assert_eq!(clauses(unlabeled), vec!["label"]);

    let bad_owner = r#"{"players":1,"root":"a","nodes":[
        {"id":"a","owner":"p2","actions":[{"name":"x","child":"b"}]},
        {"id":"b","owner":"terminal","actions":[],"label":"E"}],"info_sets":[]}"#;
    assert_eq!(clauses(bad_owner), vec!["owner"]);

    let mismatched_actions = r#"{"players":1,"root":"r","nodes":[
        {"id":"r","owner":"p1","actions":[{"name":"x","child":"a"},{"name":"y","child":"b"}]},
        {"id":"a","owner":"p1","actions":[{"name":"u","child":"c"}]},
        {"id":"b","owner":"p1","actions":[{"name":"v","child":"d"}]},
        {"id":"c","owner":"terminal","actions":[],"label":"E"},
        {"id":"d","owner":"terminal","actions":[],"label":"notE"}],
        "info_sets":[{"owner":"p1","id":"I","nodes":["a","b"]}]}"#;
    assert!(!clauses(mismatched_actions).is_empty());

    let bad_sum = r#"{"players":1,"root":"a","nodes":[
        {"id":"a","owner":"chance","actions":[{"name":"x","child":"b"},{"name":"y","child":"c"}],
         "probs":{"x":"1/2","y":"1/3"}},
        {"id":"b","owner":"terminal","actions":[],"label":"E"},
        {"id":"c","owner":"terminal","actions":[],"label":"notE"}],"info_sets":[]}"#;
    assert_eq!(clauses(bad_sum), vec!["chance-distribution"]);

    let two_parents = r#"{"players":1,"root":"a","nodes":[
        {"id":"a","owner":"p1","actions":[{"name":"x","child":"b"},{"name":"y","child":"b"}]},
        {"id":"b","owner":"terminal","actions":[],"label":"E"}],"info_sets":[]}"#;
    assert!(clauses(two_parents).contains(&"parent"));

    match GameTree::from_json(two_parents) {
        Err(Error::InvalidGame(v)) => assert!(!v.is_empty()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn malformed_json_is_a_json_error() {
    assert!(matches!(GameTree::from_json("{\"players\": 1, "), Err(Error::Json(_))));
}

#[test]
fn perfect_recall_detection() {
    assert!(check_perfect_recall(&matching_pennies()).is_empty());
    assert!(check_perfect_recall(&running_example()).is_empty());
    let g = forgetful();
    let v = check_perfect_recall(&g);
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].player, 1);
    assert_eq!(g.info_set(v[0].info_set).name.as_ref(), "J");
}

#[test]
fn histories_follow_the_definition() {
    let g = matching_pennies();
    let s4 = g.node_id("s4").unwrap();
    let i2 = g.info_set_id("I2").unwrap();
    let s0 = g.info_of(g.root()).unwrap();
    assert_eq!(
        history(&g, s4),
        vec![
            HistoryItem::Info(s0),
            HistoryItem::Action("h1".into()),
            HistoryItem::Info(i2),
            HistoryItem::Action("t2".into()),
        ]
    );
    // Terminal nodes keep the trailing action of a coalition member.
    let c2 = Coalition::new(2, [2]).unwrap();
    assert_eq!(coalition_history(&g, s4, &c2), vec![HistoryItem::Info(i2), HistoryItem::Action("t2".into())]);
    let s1 = g.node_id("s1").unwrap();
    assert_eq!(coalition_history(&g, s1, &c2), vec![HistoryItem::Info(i2)]);
    let c1 = Coalition::new(2, [1]).unwrap();
    assert_eq!(coalition_history(&g, s1, &c1), vec![HistoryItem::Info(s0), HistoryItem::Action("h1".into())]);
}

#[test]
fn plays_and_probabilities() {
    let g = running_example();
    let plays = enumerate_plays(&g);
    assert_eq!(plays.len(), 8);
    let p = play(&g, &["B", "h2'", "t3"]);
    assert_eq!(g.name(p.leaf()), "s12");
    assert_eq!(chance_probability(&g, &p).unwrap(), r(1, 2));
    let s1 = sigma1(&g);
    assert_eq!(play_probability(&g, &s1, &p).unwrap(), r(1, 2));
    let consistent: Vec<String> = consistent_plays(&g, &s1).iter().map(|p| g.name(p.leaf()).to_string()).collect();
    assert_eq!(consistent, vec!["s12", "s14"]);
    assert!(Play::from_actions(&g, &["A", "h2"]).is_err());
    assert!(Play::from_actions(&g, &["A", "zz"]).is_err());
}

#[test]
fn play_probabilities_sum_to_one() {
    let mut rg = rng(5);
    for _ in 0..40 {
        let g = random_game(&mut rg, &GameParams::small(3));
        let s = random_mixed_profile(&mut rg, &g);
        let total: Rational = enumerate_plays(&g).iter().map(|p| play_probability(&g, &s, p).unwrap()).sum();
        assert_eq!(total, Rational::one());
    }
}

#[test]
fn profiles_parse_and_validate() {
    let g = running_example();
    let text = r#"[
        {"player": 1, "choices": [{"info_set": "s0", "dist": {"A": "1/3", "B": "2/3"}}]},
        {"player": 2, "choices": [{"info_set": "s1", "action": "t2"}]},
        {"player": 3, "choices": [{"info_set": "I3", "action": "h3"},
                                  {"info_set": "s5", "action": "h3"},
                                  {"info_set": "s6", "action": "t3"}]}
    ]"#;
    let s = StrategyProfile::from_json(&g, text).unwrap();
    let s0 = g.info_of(g.root()).unwrap();
    assert_eq!(s.dist(s0), &[r(1, 3), r(2, 3)]);
    let again = StrategyProfile::from_raw(&g, &s.to_raw(&g)).unwrap();
    assert_eq!(again, s);

    let bad = r#"[{"player": 1, "choices": [{"info_set": "s0", "dist": {"A": "1/2", "B": "1/3"}}]}]"#;
    assert!(StrategyProfile::from_json(&g, bad).is_err());
    assert!(StrategyProfile::pure_by_name(&g, &[("s0", "A")]).is_err());
}

#[test]
fn generated_games_respect_their_grouping() {
    let mut rg = rng(3);
    for _ in 0..100 {
        let g = random_game(&mut rg, &GameParams::small(4));
        assert!(g.node_count() <= 40);
        assert!(check_perfect_recall(&g).is_empty());
        assert!(g.leaves().all(|n| g.label(n).is_some()));
    }
    let mut found_imperfect = false;
    for _ in 0..200 {
        let p = GameParams { grouping: Grouping::Arbitrary, merge_prob: 0.9, ..GameParams::small(2) };
        let g = random_game(&mut rg, &p);
        found_imperfect |= !check_perfect_recall(&g).is_empty();
    }
    assert!(found_imperfect);
}

#[test]
fn relabel_keeps_structure() {
    let g = matching_pennies();
    let flipped = g.relabel(|n| g.label(n).unwrap().negate());
    for n in g.leaves() {
        assert_eq!(flipped.label(n), Some(g.label(n).unwrap().negate()));
    }
    assert_eq!(flipped.owner(g.root()), Owner::Player(1));
    assert_eq!(Label::parse("notE"), Some(Label::NotE));
}
