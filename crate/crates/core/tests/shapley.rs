mod common;

use common::*;
use proptest::prelude::*;
use respgames_core::shapley::{
    induced_coop_game, responsibility_value, responsibility_vector, shapley, shapley_permutation, CooperativeGame,
};
use respgames_core::{BackwardContext, Coalition, Kind, Play, Rational};

/// Every arrival order of players 1..=n, built by insertion.
fn orders(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for o in orders(n - 1) {
        for pos in 0..=o.len() {
            let mut p = o.clone();
            p.insert(pos, n);
            out.push(p);
        }
    }
    out
}

/// Average marginal contribution over every arrival order.
fn by_orders(cg: &CooperativeGame) -> Vec<Rational> {
    let all = orders(cg.n);
    let mut acc = vec![Rational::zero(); cg.n as usize];
    for o in &all {
        let mut arrived = Coalition::empty();
        for &i in o {
            let after = arrived.with(i);
            acc[i as usize - 1] += &(cg.value(after) - cg.value(arrived));
            arrived = after;
        }
    }
    let total = Rational::from_integer(all.len() as i64);
    acc.iter().map(|a| a / &total).collect()
}

fn from_bits(n: u32, bits: u64) -> CooperativeGame {
    CooperativeGame::from_fn(n, |c| Rational::from_integer((bits.checked_shr(c.mask() as u32).unwrap_or(0) & 1) as i64))
}

#[test]
fn glove_game() {
    // Player 1 holds a left glove, players 2 and 3 right gloves.
    let cg = CooperativeGame::from_fn(3, |c| {
        Rational::from_integer(i64::from(c.contains(1) && (c.contains(2) || c.contains(3))))
    });
    assert_eq!(shapley(&cg), vec![r(2, 3), r(1, 6), r(1, 6)]);
    assert_eq!(by_orders(&cg), shapley(&cg));
}

#[test]
fn running_example_vectors() {
    let g = running_example();
    assert_eq!(responsibility_vector(&g, Kind::F, None).unwrap(), vec![r(1, 6), r(1, 6), r(2, 3)]);
    let s8 = BackwardContext::new(Play::to_leaf(&g, g.node_id("s8").unwrap()).unwrap());
    assert_eq!(responsibility_vector(&g, Kind::S, Some(&s8)).unwrap(), vec![r(1, 6), r(1, 6), r(2, 3)]);
    let s12 = BackwardContext::new(Play::to_leaf(&g, g.node_id("s12").unwrap()).unwrap());
    assert_eq!(responsibility_vector(&g, Kind::S, Some(&s12)).unwrap(), vec![r(0, 1), r(0, 1), r(1, 1)]);
    let c2 = BackwardContext::with_profile(play(&g, &["A", "h2", "t3"]), sigma2(&g));
    assert_eq!(responsibility_vector(&g, Kind::C, Some(&c2)).unwrap(), vec![r(1, 3); 3]);
    assert_eq!(responsibility_value(&g, Kind::F, 3, None).unwrap(), r(2, 3));
    assert!(responsibility_value(&g, Kind::F, 4, None).is_err());
}

#[test]
fn induced_game_is_the_upward_closure() {
    let g = running_example();
    let (cg, findings) = induced_coop_game(&g, Kind::F, None, true).unwrap();
    assert!(findings.is_empty());
    for m in 0..8u64 {
        let c = Coalition::from_mask(m);
        let expected = c.is_subset(Coalition::from_mask(0b111)) && (m & 0b101 == 0b101 || m & 0b110 == 0b110);
        assert_eq!(*cg.value(c), Rational::from_integer(i64::from(expected)), "{c}");
    }
    assert!(cg.is_monotone());
}

#[test]
fn matching_pennies_splits_evenly() {
    let g = matching_pennies();
    assert_eq!(responsibility_vector(&g, Kind::F, None).unwrap(), vec![r(1, 2), r(1, 2)]);
}

#[test]
fn permutation_formula_has_a_cap() {
    assert!(shapley_permutation(&from_bits(9, 0)).is_err());
    assert!(CooperativeGame::new(2, vec![Rational::zero(); 3]).is_err());
}

proptest! {
    #[test]
    fn subset_formula_equals_average_over_orders(n in 1u32..=5, bits in any::<u64>()) {
        let cg = from_bits(n, bits);
        let v = shapley(&cg);
        prop_assert_eq!(&v, &by_orders(&cg));
        prop_assert_eq!(&v, &shapley_permutation(&cg).unwrap());
        let sum: Rational = v.iter().cloned().sum();
        prop_assert_eq!(sum, cg.value(cg.full()) - cg.value(Coalition::empty()));
    }

    #[test]
    fn symmetric_players_get_equal_shares(n in 2u32..=6, k in 0u32..=6) {
        // Threshold game: value 1 iff at least k players.
        let cg = CooperativeGame::from_fn(n, |c| Rational::from_integer(i64::from(c.len() as u32 >= k)));
        let v = shapley(&cg);
        prop_assert!(v.windows(2).all(|w| w[0] == w[1]));
        let expected = if (1..=n).contains(&k) { Rational::new(1, n as i64) } else { Rational::zero() };
        prop_assert_eq!(&v[0], &expected);
    }

    #[test]
    fn null_players_get_nothing(n in 2u32..=6, bits in any::<u64>()) {
        // Player n never changes the value.
        let base = from_bits(n - 1, bits);
        let cg = CooperativeGame::from_fn(n, |c| base.value(c.without(n)).clone());
        prop_assert!(shapley(&cg)[n as usize - 1].is_zero());
    }
}
