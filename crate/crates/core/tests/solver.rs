mod common;

use common::*;
use respgames_core::gen::{random_game, rng, GameParams};
use respgames_core::solver::{
    brute_force_can_guarantee, can_guarantee, can_guarantee_lp, game_value, DEFAULT_ORACLE_LIMIT,
};
use respgames_core::{induce, Coalition, GameTree, Label, NodeId, Owner, Rational};

/// Backward induction on a perfect-information game: max at the
/// maximizer's nodes, min at the opponent's, expectation at chance.
fn expectimax(g: &GameTree, n: NodeId, maximizer: u32, win: Label) -> Rational {
    let kids = g.edges(n).iter().map(|e| expectimax(g, e.child, maximizer, win));
    match g.owner(n) {
        Owner::Terminal => {
            if g.label(n) == Some(win) {
                Rational::one()
            } else {
                Rational::zero()
            }
        }
        Owner::Chance => {
            let probs = g.probs(n).unwrap().to_vec();
            kids.zip(probs).map(|(v, p)| &v * &p).sum()
        }
        Owner::Player(i) if i == maximizer => kids.max().unwrap(),
        Owner::Player(_) => kids.min().unwrap(),
    }
}

fn perfect_information(seed: u64) -> Vec<GameTree> {
    let mut rg = rng(seed);
    (0..150).map(|_| random_game(&mut rg, &GameParams { merge_prob: 0.0, ..GameParams::small(2) })).collect()
}

#[test]
fn matching_pennies_is_worth_one_half_to_both_sides() {
    let g = matching_pennies();
    for (player, win) in [(1, Label::NotE), (2, Label::E), (1, Label::E), (2, Label::NotE)] {
        assert_eq!(game_value(&g, player, win).unwrap().value, r(1, 2));
    }
    assert!(!can_guarantee(&g, 1, Label::NotE).unwrap());
    assert!(!can_guarantee_lp(&g, 1, Label::NotE).unwrap());
}

#[test]
fn matching_pennies_plan_mixes_evenly() {
    let g = matching_pennies();
    let v = game_value(&g, 1, Label::NotE).unwrap();
    let b = v.behavioral(&g);
    assert_eq!(b.dists.len(), 1);
    assert_eq!(b.dists[0].1, vec![r(1, 2), r(1, 2)]);
}

#[test]
fn lp_value_matches_backward_induction() {
    for g in perfect_information(31) {
        for player in [1, 2] {
            for win in [Label::E, Label::NotE] {
                assert_eq!(
                    game_value(&g, player, win).unwrap().value,
                    expectimax(&g, g.root(), player, win),
                    "{}",
                    g.to_json()
                );
            }
        }
    }
}

#[test]
fn values_of_both_sides_are_complementary() {
    let mut rg = rng(32);
    for _ in 0..80 {
        let g = random_game(&mut rg, &GameParams::small(3));
        let ig = induce(&g, Coalition::from_mask(0b011)).unwrap();
        let a = game_value(&ig.game, 1, Label::NotE).unwrap().value;
        let b = game_value(&ig.game, 2, Label::E).unwrap().value;
        assert_eq!(&a + &b, Rational::one());
    }
}

#[test]
fn guarantee_procedures_agree() {
    let mut rg = rng(33);
    let mut wins = 0;
    for _ in 0..150 {
        let g = random_game(&mut rg, &GameParams::small(3));
        for m in [0b001, 0b011, 0b110] {
            let ig = induce(&g, Coalition::from_mask(m)).unwrap();
            for (player, win) in [(1, Label::NotE), (2, Label::E)] {
                let fast = can_guarantee(&ig.game, player, win).unwrap();
                let lp = can_guarantee_lp(&ig.game, player, win).unwrap();
                let brute = brute_force_can_guarantee(&ig.game, player, win, DEFAULT_ORACLE_LIMIT).unwrap();
                assert_eq!(fast, brute);
                assert_eq!(lp, brute);
                wins += usize::from(fast);
            }
        }
    }
    assert!(wins > 0);
}

#[test]
fn sure_win_needs_perfect_recall() {
    let g = forgetful();
    assert!(can_guarantee(&g, 1, Label::NotE).is_err());
    // The oracle still answers: L then l reaches s5.
    assert!(brute_force_can_guarantee(&g, 1, Label::NotE, DEFAULT_ORACLE_LIMIT).unwrap());
    assert!(brute_force_can_guarantee(&g, 1, Label::E, DEFAULT_ORACLE_LIMIT).unwrap());
}

#[test]
fn oracle_limit_is_enforced() {
    let g = running_example();
    let ig = induce(&g, Coalition::full(3)).unwrap();
    assert!(brute_force_can_guarantee(&ig.game, 1, Label::NotE, 2).is_err());
}
