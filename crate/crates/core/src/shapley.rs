//! The 0/1 cooperative game a responsibility notion induces, and exact
//! Shapley values on it.

use serde::Serialize;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::GameTree;
use crate::rational::{factorial, Rational};
use crate::responsibility::{coalitions_by_size, BackwardContext, Kind, PropertyOracle, DEFAULT_SUBSET_CAP};

/// A characteristic function on all `2^n` coalitions, indexed by bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CooperativeGame {
    pub n: u32,
    pub values: Vec<Rational>,
}

impl CooperativeGame {
    pub fn new(n: u32, values: Vec<Rational>) -> Result<Self> {
        if n > 30 || values.len() != 1usize << n {
            return Err(Error::LimitExceeded(format!("a cooperative game on {n} players needs 2^{n} values")));
        }
        Ok(CooperativeGame { n, values })
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(Coalition) -> Rational) -> Self {
        let values = (0..1u64 << n).map(|m| f(Coalition::from_mask(m))).collect();
        CooperativeGame { n, values }
    }

    pub fn value(&self, c: Coalition) -> &Rational {
        &self.values[c.mask() as usize]
    }

    pub fn full(&self) -> Coalition {
        Coalition::full(self.n)
    }

    /// Whether `v(S) <= v(T)` whenever `S ⊆ T`.
    pub fn is_monotone(&self) -> bool {
        (0..self.values.len())
            .all(|m| (0..self.n).all(|i| m & (1 << i) != 0 || self.values[m] <= self.values[m | 1 << i]))
    }
}

/// A coalition where the raw property and its upward closure disagree: the
/// coalition fails the property although a subset of it satisfies it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityFinding {
    pub coalition: String,
    pub witness_subset: String,
}

/// Value 1 on exactly the coalitions that contain a coalition with the
/// property (every such coalition contains a minimal one). With `audit`,
/// the raw property is evaluated on every coalition as well and each
/// coalition where closure and property disagree is reported.
pub fn induced_coop_game(
    g: &GameTree,
    kind: Kind,
    ctx: Option<&BackwardContext>,
    audit: bool,
) -> Result<(CooperativeGame, Vec<MonotonicityFinding>)> {
    if g.players() > DEFAULT_SUBSET_CAP {
        return Err(Error::LimitExceeded(format!(
            "{} players exceed the subset-enumeration cap of {DEFAULT_SUBSET_CAP}",
            g.players()
        )));
    }
    let oracle = PropertyOracle::new(g, kind, ctx)?;
    induced_coop_game_with(&oracle, audit)
}

pub fn induced_coop_game_with(
    oracle: &PropertyOracle<'_>,
    audit: bool,
) -> Result<(CooperativeGame, Vec<MonotonicityFinding>)> {
    let n = oracle.game().players();
    let mut wins = vec![false; 1usize << n];
    let mut findings = Vec::new();
    for c in coalitions_by_size(n) {
        let m = c.mask() as usize;
        let inherited = c.members().find(|&i| wins[c.without(i).mask() as usize]);
        wins[m] = match inherited {
            Some(i) => {
                if audit && !oracle.eval(c)? {
                    let witness = smallest_winning_subset(&wins, c.without(i));
                    findings
                        .push(MonotonicityFinding { coalition: c.to_string(), witness_subset: witness.to_string() });
                }
                true
            }
            None => oracle.eval(c)?,
        };
    }
    let values = wins.into_iter().map(|w| if w { Rational::one() } else { Rational::zero() }).collect();
    Ok((CooperativeGame { n, values }, findings))
}

fn smallest_winning_subset(wins: &[bool], c: Coalition) -> Coalition {
    let mut cur = c;
    'outer: loop {
        for i in cur.members() {
            if wins[cur.without(i).mask() as usize] {
                cur = cur.without(i);
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Weight `|S|! (n-|S|-1)! / n!` of a coalition of size `s` not containing
/// the player.
fn weights(n: u32) -> Vec<Rational> {
    let nf = factorial(n);
    (0..n).map(|s| Rational::from_bigint(factorial(s) * factorial(n - s - 1), nf.clone())).collect()
}

/// Shapley values by the subset-weight formula.
pub fn shapley(cg: &CooperativeGame) -> Vec<Rational> {
    let n = cg.n;
    if n == 0 {
        return Vec::new();
    }
    let w = weights(n);
    (1..=n)
        .map(|i| {
            let bit = 1u64 << (i - 1);
            let mut acc = Rational::zero();
            for m in 0..1u64 << n {
                if m & bit != 0 {
                    continue;
                }
                let gain = &cg.values[(m | bit) as usize] - &cg.values[m as usize];
                if !gain.is_zero() {
                    acc += &(&w[m.count_ones() as usize] * &gain);
                }
            }
            acc
        })
        .collect()
}

/// Largest player count [`shapley_permutation`] accepts.
pub const PERMUTATION_MAX_PLAYERS: u32 = 8;

/// Shapley values as the average marginal contribution over all `n!`
/// orders of arrival.
pub fn shapley_permutation(cg: &CooperativeGame) -> Result<Vec<Rational>> {
    let n = cg.n as usize;
    if cg.n > PERMUTATION_MAX_PLAYERS {
        return Err(Error::LimitExceeded(format!("permutation formula limited to {PERMUTATION_MAX_PLAYERS} players")));
    }
    let mut totals = vec![Rational::zero(); n];
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count: i64 = 0;
    loop {
        let mut mask = 0usize;
        for &p in &perm {
            let next = mask | 1 << p;
            totals[p] += &(&cg.values[next] - &cg.values[mask]);
            mask = next;
        }
        count += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let count = Rational::from_integer(count);
    Ok(totals.into_iter().map(|t| &t / &count).collect())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Responsibility values of every player (1-based order).
pub fn responsibility_vector(g: &GameTree, kind: Kind, ctx: Option<&BackwardContext>) -> Result<Vec<Rational>> {
    let (cg, _) = induced_coop_game(g, kind, ctx, false)?;
    Ok(shapley(&cg))
}

/// Responsibility value of one player.
pub fn responsibility_value(g: &GameTree, kind: Kind, player: u32, ctx: Option<&BackwardContext>) -> Result<Rational> {
    if player == 0 || player > g.players() {
        return Err(Error::InvalidCoalition(format!("player {player} is not in 1..={}", g.players())));
    }
    Ok(responsibility_vector(g, kind, ctx)?.swap_remove(player as usize - 1))
}
