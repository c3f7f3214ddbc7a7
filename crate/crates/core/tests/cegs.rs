use respgames_core::cegs::{per_state_gadget, unroll, validate_cegs, Cegs, RawCegs};
use respgames_core::game::{check_perfect_recall, validate_raw};
use respgames_core::solver::game_value;
use respgames_core::{Error, GameTree, Label, Owner, Rational};

const CAP: usize = 100_000;

fn raw(text: &str) -> RawCegs {
    serde_json::from_str(text).unwrap()
}

/// Two players pick h or t at once; a mismatch leads to the bad state.
const PENNIES: &str = r#"{
    "players": 2, "states": ["s", "bad"], "actions": ["h", "t"],
    "avail": [{"s": ["h", "t"], "bad": ["h"]}, {"s": ["h", "t"], "bad": ["h"]}],
    "trans": {"s|h,h": "s", "s|t,t": "s", "s|h,t": "bad", "s|t,h": "bad", "bad|h,h": "bad"}
}"#;

/// One player who cannot tell `a` from `b`; `y` moves to `b`.
const FORGETFUL: &str = r#"{
    "players": 1, "states": ["a", "b"], "actions": ["x", "y"],
    "indist": [[["a", "b"]]],
    "avail": [{"a": ["x", "y"], "b": ["x", "y"]}],
    "trans": {"a|x": "a", "a|y": "b", "b|x": "b", "b|y": "a"}
}"#;

/// Three players with state-dependent action counts.
const UNEVEN: &str = r#"{
    "players": 3, "states": ["p", "q", "r"], "actions": ["a", "b", "c"],
    "indist": [[["p", "q"]], [], [["q", "r"]]],
    "avail": [
        {"p": ["a", "b"], "q": ["a", "b"], "r": ["c"]},
        {"p": ["a", "b", "c"], "q": ["a"], "r": ["a", "b"]},
        {"p": ["a"], "q": ["b", "c"], "r": ["b", "c"]}
    ],
    "trans": {
        "p|a,a,a": "q", "p|a,b,a": "r", "p|a,c,a": "p", "p|b,a,a": "p", "p|b,b,a": "q", "p|b,c,a": "r",
        "q|a,a,b": "r", "q|a,a,c": "q", "q|b,a,b": "p", "q|b,a,c": "p",
        "r|c,a,b": "r", "r|c,a,c": "p", "r|c,b,b": "q", "r|c,b,c": "q"
    }
}"#;

/// Node count by direct recursion over the transition system.
fn count_nodes(m: &Cegs, s: usize, rounds: u32) -> u128 {
    if rounds == 0 {
        return 1;
    }
    let mut internal = 0u128;
    let mut layer = 1u128;
    for i in 0..m.players as usize {
        internal += layer;
        layer *= m.avail[i][s].len() as u128;
    }
    internal + m.joint_actions(s).iter().map(|j| count_nodes(m, m.successor(s, j), rounds - 1)).sum::<u128>()
}

fn leaves_e(g: &GameTree) -> usize {
    g.leaves().filter(|&n| g.label(n) == Some(Label::E)).count()
}

#[test]
fn well_formed_structures_validate() {
    for text in [PENNIES, FORGETFUL, UNEVEN] {
        assert!(validate_cegs(&raw(text)).is_empty());
    }
    let loop1 = r#"{"players": 1, "states": ["s"], "actions": ["a"], "avail": [{"s": ["a"]}], "trans": {"s|a": "s"}}"#;
    assert!(validate_cegs(&raw(loop1)).is_empty());
}

#[test]
fn broken_structures_report_their_clause() {
    let clauses =
        |text: &str| -> Vec<&'static str> { validate_cegs(&raw(text)).into_iter().map(|v| v.clause).collect() };
    let uneven_avail = FORGETFUL.replace(r#""b": ["x", "y"]}"#, r#""b": ["x"]}"#);
    assert!(clauses(&uneven_avail).contains(&"avail-indist"));
    let partial = FORGETFUL.replace(r#", "b|y": "a""#, "");
    assert_eq!(clauses(&partial), vec!["trans-total"]);
    let overlapping = FORGETFUL.replace(r#"[[["a", "b"]]]"#, r#"[[["a", "b"], ["b"]]]"#);
    assert!(clauses(&overlapping).contains(&"equivalence"));
    let unknown = FORGETFUL.replace(r#""a|x": "a""#, r#""a|x": "zz""#);
    assert!(clauses(&unknown).contains(&"trans"));
    assert!(matches!(Cegs::from_json(&partial), Err(Error::Cegs(_))));
}

#[test]
fn gadget_shapes() {
    let m = Cegs::from_json(PENNIES).unwrap();
    let g = per_state_gadget(&m, 0).unwrap();
    assert_eq!(g.node_count(), 7);
    // Player 2 does not see player 1's same-round pick.
    let p2: Vec<_> = g.player_info_sets(2).collect();
    assert_eq!(p2.len(), 1);
    assert_eq!(g.info_set(p2[0]).nodes.len(), 2);
    let path = per_state_gadget(&m, 1).unwrap();
    assert_eq!(path.node_count(), 3);
    assert!(path.nodes().all(|n| path.is_terminal(n) || path.edges(n).len() == 1));

    let u = Cegs::from_json(UNEVEN).unwrap();
    for s in 0..3 {
        let g = per_state_gadget(&u, s).unwrap();
        assert_eq!(g.node_count() as u128, count_nodes(&u, s, 1));
        for n in g.nodes().filter(|&n| g.owner(n) == Owner::Player(2)) {
            assert_eq!(g.edges(n).len(), u.avail[1][s].len());
        }
    }
}

#[test]
fn one_round_of_pennies_is_matching_pennies() {
    let m = Cegs::from_json(PENNIES).unwrap();
    let g = unroll(&m, 0, 1, &[1], CAP).unwrap();
    assert_eq!(g.node_count(), 7);
    assert_eq!(leaves_e(&g), 2);
    assert_eq!(game_value(&g, 1, Label::NotE).unwrap().value, Rational::new(1, 2));
    let safe = unroll(&m, 0, 1, &[], CAP).unwrap();
    assert_eq!(leaves_e(&safe), 0);
}

#[test]
fn unrolled_sizes_follow_the_recurrence() {
    for text in [PENNIES, FORGETFUL, UNEVEN] {
        let m = Cegs::from_json(text).unwrap();
        for s in 0..m.states.len() {
            for h in 1..=4 {
                let expected = count_nodes(&m, s, h);
                assert_eq!(m.unrolled_size(s, h), expected);
                let g = unroll(&m, s, h, &[], CAP).unwrap();
                assert_eq!(g.node_count() as u128, expected);
                assert!(validate_raw(&g.to_raw()).is_empty());
            }
        }
    }
}

#[test]
fn indistinguishable_states_cost_recall() {
    let m = Cegs::from_json(FORGETFUL).unwrap();
    assert!(check_perfect_recall(&unroll(&m, 0, 1, &[], CAP).unwrap()).is_empty());
    assert!(!check_perfect_recall(&unroll(&m, 0, 2, &[], CAP).unwrap()).is_empty());
}

#[test]
fn labels_track_bad_visits() {
    let m = Cegs::from_json(FORGETFUL).unwrap();
    // From a, two rounds: only x,x avoids b.
    let g = unroll(&m, 0, 2, &[1], CAP).unwrap();
    assert_eq!(g.leaves().count(), 4);
    assert_eq!(leaves_e(&g), 3);
    // The initial state counts as visited.
    let from_b = unroll(&m, 1, 2, &[1], CAP).unwrap();
    assert_eq!(leaves_e(&from_b), 4);
}

#[test]
fn limits() {
    let m = Cegs::from_json(UNEVEN).unwrap();
    assert!(matches!(unroll(&m, 0, 0, &[], CAP), Err(Error::Cegs(_))));
    let size = m.unrolled_size(0, 6) as usize;
    assert!(matches!(unroll(&m, 0, 6, &[], size - 1), Err(Error::LimitExceeded(_))));
}
