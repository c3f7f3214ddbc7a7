mod common;

use std::collections::HashMap;

use common::*;
use respgames_core::coalition::{lift_profile, post_states};
use respgames_core::game::{check_perfect_recall, coalition_history, HistoryItem};
use respgames_core::gen::{random_game, random_mixed_profile, rng, GameParams, Grouping};
use respgames_core::{induce, induce_with, Coalition, InduceOptions, NodeId, Owner, Side};

/// The partition of a source information set that refinement must produce:
/// members grouped by their coalition history (w.r.t. the owning side),
/// node ids ascending within a group.
fn expected_partition(g: &respgames_core::GameTree, c: Coalition, members: &[NodeId], owner: u32) -> Vec<Vec<NodeId>> {
    let side = if c.contains(owner) { c } else { c.complement(g.players()) };
    let mut groups: HashMap<Vec<HistoryItem>, Vec<NodeId>> = HashMap::new();
    for &n in members {
        groups.entry(coalition_history(g, n, &side)).or_default().push(n);
    }
    let mut out: Vec<Vec<NodeId>> = groups.into_values().collect();
    out.sort();
    out
}

fn check_induced(g: &respgames_core::GameTree, c: Coalition) {
    let ig = induce(g, c).unwrap();
    assert_eq!(ig.game.players(), 2);
    assert_eq!(ig.game.node_count(), g.node_count());
    assert!(check_perfect_recall(&ig.game).is_empty(), "induced game lacks perfect recall");
    for n in g.nodes() {
        assert_eq!(ig.game.label(n), g.label(n));
        let expected = match g.owner(n) {
            Owner::Player(i) if c.contains(i) => Owner::Player(1),
            Owner::Player(_) => Owner::Player(2),
            other => other,
        };
        assert_eq!(ig.game.owner(n), expected);
    }
    // Each source player information set is split exactly by coalition
    // history.
    for (k, is) in g.info_sets().iter().enumerate() {
        let Owner::Player(owner) = is.owner else { continue };
        let src = respgames_core::InfoSetId(k);
        let mut got: Vec<Vec<NodeId>> = ig
            .game
            .info_sets()
            .iter()
            .enumerate()
            .filter(|(j, _)| ig.source_info_set(respgames_core::InfoSetId(*j)) == src)
            .map(|(_, x)| x.nodes.clone())
            .collect();
        got.sort();
        assert_eq!(got, expected_partition(g, c, &is.nodes, owner));
    }
}

#[test]
fn induced_games_have_perfect_recall_for_every_coalition() {
    let mut rg = rng(21);
    for _ in 0..60 {
        let g = random_game(&mut rg, &GameParams::small(3));
        for m in 0..8 {
            check_induced(&g, Coalition::from_mask(m));
        }
    }
}

#[test]
fn refinement_restores_recall_lost_in_the_source() {
    check_induced(&forgetful(), Coalition::new(2, [1]).unwrap());
    let mut rg = rng(22);
    let mut imperfect = 0;
    for _ in 0..150 {
        let p = GameParams { grouping: Grouping::Arbitrary, merge_prob: 0.9, ..GameParams::small(3) };
        let g = random_game(&mut rg, &p);
        imperfect += usize::from(!check_perfect_recall(&g).is_empty());
        for m in 0..8 {
            check_induced(&g, Coalition::from_mask(m));
        }
    }
    assert!(imperfect > 10, "generator produced too few imperfect-recall games ({imperfect})");
}

#[test]
fn refinement_splits_the_counterexample_set() {
    let g = refinement_counterexample();
    let c = Coalition::new(3, [1, 3]).unwrap();
    let ig = induce(&g, c).unwrap();
    let origin = ig.origin(&g);
    let from_i3: Vec<&String> = origin.iter().filter(|(_, s)| *s == "I3").map(|(k, _)| k).collect();
    assert_eq!(from_i3.len(), 2);

    let flat = induce_with(&g, c, InduceOptions { refine: false }).unwrap();
    assert!(!flat.refined);
    assert_eq!(flat.game.info_sets().len(), g.info_sets().len());
    for (a, b) in flat.game.info_sets().iter().zip(g.info_sets()) {
        assert_eq!(a.nodes, b.nodes);
    }
    // Without refinement player 1 of G_C forgets its own first move.
    assert!(!check_perfect_recall(&flat.game).is_empty());
    // For {3} alone the set is not split: 3 never saw player 1's move.
    let ig3 = induce(&g, Coalition::new(3, [3]).unwrap()).unwrap();
    assert_eq!(ig3.game.info_sets().len(), g.info_sets().len());
}

#[test]
fn refinement_keys_are_shared_by_members() {
    let g = running_example();
    let c = Coalition::new(3, [1, 3]).unwrap();
    let ig = induce(&g, c).unwrap();
    for (k, is) in ig.game.info_sets().iter().enumerate() {
        let key = ig.refinement_key(&g, respgames_core::InfoSetId(k));
        if let Owner::Player(1) = is.owner {
            for &n in &is.nodes {
                let mut h = coalition_history(&g, n, &c);
                h.pop();
                assert_eq!(h, key);
            }
        }
    }
    assert_eq!(ig.side_of(g.root()), Some(Side::Coalition));
    assert_eq!(ig.side_of(g.node_id("s1").unwrap()), Some(Side::Opponent));
    assert_eq!(ig.side_of(g.node_id("s2").unwrap()), None);
}

#[test]
fn invalid_coalitions_are_rejected() {
    assert!(Coalition::new(3, [4]).is_err());
    assert!(Coalition::parse("{1,5}", 3).is_err());
    assert_eq!(Coalition::parse("{1,3}", 3).unwrap(), Coalition::new(3, [1, 3]).unwrap());
    assert_eq!(Coalition::parse("{}", 3).unwrap(), Coalition::empty());
    assert_eq!(Coalition::new(3, [3, 1]).unwrap().to_string(), "{1,3}");
    assert!(induce(&matching_pennies(), Coalition::from_mask(0b100)).is_err());
}

#[test]
fn lifted_profiles_keep_play_probabilities() {
    use respgames_core::game::{enumerate_plays, play_probability};
    let mut rg = rng(23);
    for _ in 0..40 {
        let g = random_game(&mut rg, &GameParams::small(3));
        let s = random_mixed_profile(&mut rg, &g);
        let c = Coalition::from_mask(0b101);
        let ig = induce(&g, c).unwrap();
        let lifted = lift_profile(&g, &s, &ig).unwrap();
        for p in enumerate_plays(&g) {
            assert_eq!(play_probability(&g, &s, &p).unwrap(), play_probability(&ig.game, &lifted, &p).unwrap());
        }
    }
}

#[test]
fn post_states_cover_the_subtrees() {
    let g = running_example();
    let i3 = g.info_set_id("I3").unwrap();
    let names: Vec<&str> = post_states(&g, i3).into_iter().map(|n| g.name(n)).collect();
    let mut expected = ["s3", "s4", "s7", "s8", "s9", "s10"];
    expected.sort_by_key(|s| g.node_id(s).unwrap());
    assert_eq!(names, expected);
}
