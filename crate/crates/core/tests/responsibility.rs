mod common;

use common::*;
use respgames_core::game::{enumerate_plays, GameBuilder};
use respgames_core::gen::{random_game, random_pure_profile, rng, GameParams};
use respgames_core::responsibility::{
    brute_force_property_c, brute_force_property_f, brute_force_property_s, build_bar_game, build_hat_game,
    is_minimal_exhaustive, is_responsible, minimal_responsible_coalitions, property, property_c, property_f,
    property_f_with, property_s, property_s_with, DEFAULT_SUBSET_CAP,
};
use respgames_core::solver::DEFAULT_ORACLE_LIMIT;
use respgames_core::{
    induce, BackwardContext, Coalition, Error, GameTree, InduceOptions, Kind, Label, Owner, Play, StrategyProfile,
};

fn co(g: &GameTree, members: &[u32]) -> Coalition {
    Coalition::new(g.players(), members.iter().copied()).unwrap()
}

fn to_leaf(g: &GameTree, name: &str) -> BackwardContext {
    BackwardContext::new(Play::to_leaf(g, g.node_id(name).unwrap()).unwrap())
}

#[test]
fn forward_property_on_the_running_example() {
    let g = running_example();
    assert!(!property_f(&g, co(&g, &[3])).unwrap());
    assert!(!property_f(&g, co(&g, &[1])).unwrap());
    assert!(property_f(&g, co(&g, &[1, 3])).unwrap());
    assert!(property_f(&g, co(&g, &[2, 3])).unwrap());
    assert!(property_f(&g, co(&g, &[1, 2, 3])).unwrap());
    assert!(is_responsible(&g, co(&g, &[1, 3]), Kind::F, None).unwrap());
    assert!(!is_responsible(&g, co(&g, &[1, 2, 3]), Kind::F, None).unwrap());
    let minimal = minimal_responsible_coalitions(&g, Kind::F, None, DEFAULT_SUBSET_CAP).unwrap();
    assert_eq!(minimal, vec![co(&g, &[1, 3]), co(&g, &[2, 3])]);
}

#[test]
fn forward_property_of_trivial_games() {
    let all_safe = GameBuilder::new(2)
        .player("a", 1, &[("x", "b"), ("y", "c")])
        .leaf("b", Label::NotE)
        .leaf("c", Label::NotE)
        .build()
        .unwrap();
    assert!(property_f(&all_safe, Coalition::empty()).unwrap());
    assert!(is_responsible(&all_safe, Coalition::empty(), Kind::F, None).unwrap());
    assert_eq!(
        minimal_responsible_coalitions(&all_safe, Kind::F, None, DEFAULT_SUBSET_CAP).unwrap(),
        vec![Coalition::empty()]
    );
    let doomed = all_safe.relabel(|_| Label::E);
    assert!(!property_f(&doomed, Coalition::full(2)).unwrap());
    assert!(minimal_responsible_coalitions(&doomed, Kind::F, None, DEFAULT_SUBSET_CAP).unwrap().is_empty());
}

#[test]
fn strategic_property_on_the_running_example() {
    let g = running_example();
    let s12 = to_leaf(&g, "s12");
    let (holds, witness) = property_s(&g, co(&g, &[3]), &s12).unwrap();
    assert!(holds);
    assert_eq!(g.name(witness.unwrap()), "s5");
    assert!(is_responsible(&g, co(&g, &[3]), Kind::S, Some(&s12)).unwrap());

    let s8 = to_leaf(&g, "s8");
    for i in 1..=3 {
        assert!(!property_s(&g, co(&g, &[i]), &s8).unwrap().0);
    }
    assert!(property_s(&g, co(&g, &[2, 3]), &s8).unwrap().0);
    assert!(property_s(&g, co(&g, &[1, 3]), &s8).unwrap().0);
    assert_eq!(
        minimal_responsible_coalitions(&g, Kind::S, Some(&s8), DEFAULT_SUBSET_CAP).unwrap(),
        vec![co(&g, &[1, 3]), co(&g, &[2, 3])]
    );
}

#[test]
fn causal_property_on_the_running_example() {
    let g = running_example();
    let ctx1 = BackwardContext::with_profile(play(&g, &["B", "h2'", "t3"]), sigma1(&g));
    assert!(property_c(&g, co(&g, &[1]), &ctx1).unwrap());
    assert!(property_c(&g, co(&g, &[3]), &ctx1).unwrap());
    assert!(!property_c(&g, co(&g, &[2]), &ctx1).unwrap());

    let ctx2 = BackwardContext::with_profile(play(&g, &["A", "h2", "t3"]), sigma2(&g));
    for i in 1..=3 {
        assert!(property_c(&g, co(&g, &[i]), &ctx2).unwrap());
        assert!(is_responsible(&g, co(&g, &[i]), Kind::C, Some(&ctx2)).unwrap());
    }
}

#[test]
fn causal_property_in_matching_pennies() {
    let g = matching_pennies();
    let profile = StrategyProfile::pure_by_name(&g, &[("s0", "h1"), ("I2", "t2")]).unwrap();
    let ctx = BackwardContext::with_profile(play(&g, &["h1", "t2"]), profile);
    assert!(property_c(&g, co(&g, &[1]), &ctx).unwrap());
    assert!(property_c(&g, co(&g, &[2]), &ctx).unwrap());
    assert!(!property_c(&g, Coalition::empty(), &ctx).unwrap());
}

#[test]
fn contexts_are_checked() {
    let g = running_example();
    let not_e = to_leaf(&g, "s7");
    assert!(matches!(property_s(&g, co(&g, &[1]), &not_e), Err(Error::Context(_))));
    let no_profile = to_leaf(&g, "s8");
    assert!(matches!(property_c(&g, co(&g, &[1]), &no_profile), Err(Error::Context(_))));
    // σ¹ plays B at the root, so a play through A is inconsistent with it.
    let off = BackwardContext::with_profile(play(&g, &["A", "h2", "t3"]), sigma1(&g));
    assert!(matches!(property_c(&g, co(&g, &[1]), &off), Err(Error::Context(_))));
    assert!(property(&g, co(&g, &[1]), Kind::S, None).is_err());
    assert_eq!("S".parse::<Kind>().unwrap(), Kind::S);
    assert!("x".parse::<Kind>().is_err());
    assert_eq!(Kind::C.to_string(), "c");
}

#[test]
fn hat_game_shapes() {
    let g = running_example();
    let ig = induce(&g, co(&g, &[3])).unwrap();
    let hat = build_hat_game(&ig, g.node_id("s3").unwrap()).unwrap();
    assert_eq!(hat.edges(hat.root()).len(), 2);
    assert_eq!(hat.owner(hat.root()), Owner::Player(2));
    assert_eq!(hat.node_count(), 1 + 6);
    let hat5 = build_hat_game(&ig, g.node_id("s5").unwrap()).unwrap();
    assert_eq!(hat5.edges(hat5.root()).len(), 1);
    let top = build_hat_game(&ig, g.root()).unwrap();
    assert_eq!(top.node_count(), g.node_count() + 1);
}

#[test]
fn bar_game_drops_ruled_out_edges() {
    let g = running_example();
    let c = co(&g, &[1, 3]);
    let ig = induce(&g, c).unwrap();
    let lifted = respgames_core::coalition::lift_profile(&g, &sigma1(&g), &ig).unwrap();
    let bar = build_bar_game(&ig, &lifted, &play(&g, &["B", "h2'", "t3"])).unwrap();
    let s2 = bar.node_id("s2").unwrap();
    let kept: Vec<&str> = bar.edges(s2).iter().map(|e| &*e.action).collect();
    assert_eq!(kept, vec!["h2'"]);
    assert_eq!(bar.probs(s2).unwrap(), &[r(1, 1)]);
    // Player 2 (the opponent) is pure, so its node becomes unary.
    assert_eq!(bar.edges(bar.node_id("s1").unwrap()).len(), 1);
    assert!(bar.node_id("s6").is_err());
}

/// The root belongs to player 2, who mixes; player 1 moves after R.
fn mixed_opponent() -> GameTree {
    GameBuilder::new(2)
        .player("r", 2, &[("L", "e"), ("R", "p")])
        .player("p", 1, &[("x", "safe"), ("y", "hit")])
        .leaf("e", Label::E)
        .leaf("safe", Label::NotE)
        .leaf("hit", Label::E)
        .build()
        .unwrap()
}

#[test]
fn mixed_opponents_break_the_strategic_to_causal_inclusion() {
    let g = mixed_opponent();
    let profile = StrategyProfile::from_json(
        &g,
        r#"[{"player": 1, "choices": [{"info_set": "p", "action": "y"}]},
            {"player": 2, "choices": [{"info_set": "r", "dist": {"L": "1/2", "R": "1/2"}}]}]"#,
    )
    .unwrap();
    let ctx = BackwardContext::with_profile(play(&g, &["R", "y"]), profile);
    assert!(property_s(&g, co(&g, &[1]), &ctx).unwrap().0);
    assert!(!property_c(&g, co(&g, &[1]), &ctx).unwrap());
    assert!(!property_c(&g, Coalition::empty(), &ctx).unwrap());
    // With player 2 pure the inclusion holds again.
    let pure = StrategyProfile::pure_by_name(&g, &[("p", "y"), ("r", "R")]).unwrap();
    let ctx = BackwardContext::with_profile(play(&g, &["R", "y"]), pure);
    assert!(property_c(&g, co(&g, &[1]), &ctx).unwrap());
}

#[test]
fn refinement_off_reproduces_the_counterexample() {
    let g = refinement_counterexample();
    let c = co(&g, &[2, 3]);
    let off = InduceOptions { refine: false };
    assert!(property_f(&g, c).unwrap());
    assert!(!property_f_with(&g, c, off).unwrap());
    assert!(!brute_force_property_f(&g, c, off, DEFAULT_ORACLE_LIMIT).unwrap());
    let e_plays: Vec<Play> = enumerate_plays(&g).into_iter().filter(|p| g.label(p.leaf()) == Some(Label::E)).collect();
    assert!(!e_plays.is_empty());
    for p in e_plays {
        let ctx = BackwardContext::new(p);
        assert!(property_s_with(&g, c, &ctx, off).unwrap().0);
        assert!(brute_force_property_s(&g, c, &ctx, off, DEFAULT_ORACLE_LIMIT).unwrap().0);
    }
}

#[test]
fn fast_checkers_match_the_brute_force_oracles() {
    let mut rg = rng(41);
    let opts = InduceOptions::default();
    let limit = 50_000;
    let mut positives = [0usize; 3];
    let (mut checked, mut skipped) = (0usize, 0usize);
    for _ in 0..120 {
        let g = random_game(&mut rg, &GameParams { max_nodes: 25, ..GameParams::small(3) });
        let profile = random_pure_profile(&mut rg, &g);
        let e_plays: Vec<Play> = respgames_core::game::consistent_plays(&g, &profile)
            .into_iter()
            .filter(|p| g.label(p.leaf()) == Some(Label::E))
            .collect();
        for m in 0..8 {
            let c = Coalition::from_mask(m);
            let brute_f = match brute_force_property_f(&g, c, opts, limit) {
                Ok(v) => v,
                Err(Error::LimitExceeded(_)) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => panic!("{e}"),
            };
            checked += 1;
            let f = property_f(&g, c).unwrap();
            assert_eq!(f, brute_f);
            positives[0] += usize::from(f);
            for p in &e_plays {
                let ctx = BackwardContext::with_profile(p.clone(), profile.clone());
                let (s, w) = property_s(&g, c, &ctx).unwrap();
                let (bs, bw) = brute_force_property_s(&g, c, &ctx, opts, limit).unwrap();
                assert_eq!(s, bs);
                assert_eq!(w, bw, "witnesses differ");
                let cc = property_c(&g, c, &ctx).unwrap();
                assert_eq!(cc, brute_force_property_c(&g, c, &ctx, opts, limit).unwrap());
                positives[1] += usize::from(s);
                positives[2] += usize::from(cc);
            }
        }
    }
    assert!(checked > 10 * skipped, "checked {checked}, skipped {skipped}");
    assert!(positives.iter().all(|&k| k > 0), "{positives:?}");
}

#[test]
fn remove_one_minimality_matches_exhaustive_minimality() {
    let mut rg = rng(42);
    for _ in 0..60 {
        let g = random_game(&mut rg, &GameParams::small(4));
        for m in 0..16 {
            let c = Coalition::from_mask(m);
            assert_eq!(
                is_responsible(&g, c, Kind::F, None).unwrap(),
                is_minimal_exhaustive(&g, c, Kind::F, None).unwrap()
            );
        }
    }
}

#[test]
fn subset_cap_is_enforced() {
    let g = running_example();
    assert!(matches!(minimal_responsible_coalitions(&g, Kind::F, None, 2), Err(Error::LimitExceeded(_))));
}
