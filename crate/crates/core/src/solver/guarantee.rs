//! Deciding whether one side can force every consistent play into a
//! `win_label` leaf.

use std::sync::Arc;

use super::value::game_value;
use crate::error::{Error, Result};
use crate::game::{player_recall_violations, FastMap, GameTree, InfoSetId, Label, NodeId, Owner};

/// Default cap on the number of pure strategies the brute-force oracle
/// enumerates.
pub const DEFAULT_ORACLE_LIMIT: u128 = 1_000_000;

fn everything(_: NodeId, _: usize) -> bool {
    true
}

/// Exact test of "value = 1" for `player` from the root.
///
/// A behavioural strategy reaches only `win_label` leaves iff any pure
/// selection from its support does, so it suffices to search pure
/// strategies. With perfect recall the player's sequences form a tree and
/// the search decomposes: a sequence is winning iff no losing leaf hangs
/// directly under it and every information set below it has some winning
/// action. That is linear in the size of the game.
pub fn can_guarantee(g: &GameTree, player: u32, win_label: Label) -> Result<bool> {
    sure_win_from(g, player, win_label, &[g.root()], &everything)
}

/// [`can_guarantee`] restricted to plays starting at any of `roots` and using
/// only edges for which `allowed` holds. `roots` must share the player's
/// history (e.g. one information set of the player, or the root).
pub fn sure_win_from(
    g: &GameTree,
    player: u32,
    win_label: Label,
    roots: &[NodeId],
    allowed: &dyn Fn(NodeId, usize) -> bool,
) -> Result<bool> {
    if let Some(v) = player_recall_violations(g, player).into_iter().next() {
        return Err(v.into_error(g));
    }
    Ok(sure_win_unchecked(g, player, win_label, roots, allowed))
}

/// As [`sure_win_from`], trusting the caller that `player` has perfect recall.
pub(crate) fn sure_win_unchecked(
    g: &GameTree,
    player: u32,
    win_label: Label,
    roots: &[NodeId],
    allowed: &dyn Fn(NodeId, usize) -> bool,
) -> bool {
    SureWin { g, player, win_label, allowed }.group(roots.to_vec())
}

struct SureWin<'a> {
    g: &'a GameTree,
    player: u32,
    win_label: Label,
    allowed: &'a dyn Fn(NodeId, usize) -> bool,
}

impl SureWin<'_> {
    /// All nodes in `frontier` share one sequence of the player.
    fn group(&self, frontier: Vec<NodeId>) -> bool {
        let g = self.g;
        let mut stack = frontier;
        let mut order: Vec<InfoSetId> = Vec::new();
        let mut members: FastMap<InfoSetId, Vec<NodeId>> = FastMap::default();
        while let Some(n) = stack.pop() {
            match g.owner(n) {
                Owner::Terminal => {
                    if g.label(n) != Some(self.win_label) {
                        return false;
                    }
                }
                Owner::Player(p) if p == self.player => {
                    let i = g.info_of(n).unwrap();
                    members
                        .entry(i)
                        .or_insert_with(|| {
                            order.push(i);
                            Vec::new()
                        })
                        .push(n);
                }
                _ => {
                    for (k, e) in g.edges(n).iter().enumerate() {
                        if (self.allowed)(n, k) {
                            stack.push(e.child);
                        }
                    }
                }
            }
        }
        order.into_iter().all(|i| {
            let ms = &members[&i];
            (0..g.info_set(i).actions.len()).any(|slot| {
                let next: Vec<NodeId> = ms
                    .iter()
                    .filter_map(|&m| {
                        let k = (0..g.edges(m).len()).find(|&k| g.slot(m, k) == slot)?;
                        (self.allowed)(m, k).then(|| g.child(m, k))
                    })
                    .collect();
                self.group(next)
            })
        })
    }
}

/// Test oracle: enumerate every pure strategy of `player` (one action per
/// information set) and check all consistent plays. Needs no perfect recall.
pub fn brute_force_can_guarantee(g: &GameTree, player: u32, win_label: Label, limit: u128) -> Result<bool> {
    brute_force_from(g, player, win_label, &[g.root()], &everything, limit)
}

pub fn brute_force_from(
    g: &GameTree,
    player: u32,
    win_label: Label,
    roots: &[NodeId],
    allowed: &dyn Fn(NodeId, usize) -> bool,
    limit: u128,
) -> Result<bool> {
    Ok(pure_strategies(g, player, limit)?
        .any(|choice| wins_with(g, player, win_label, roots, allowed, &|i| choice[i.0])))
}

/// Whether the pure strategy `choice` (information set → action slot) of
/// `player` wins every play from `roots`.
pub(crate) fn wins_with(
    g: &GameTree,
    player: u32,
    win_label: Label,
    roots: &[NodeId],
    allowed: &dyn Fn(NodeId, usize) -> bool,
    choice: &dyn Fn(InfoSetId) -> usize,
) -> bool {
    let mut stack = roots.to_vec();
    while let Some(n) = stack.pop() {
        match g.owner(n) {
            Owner::Terminal => {
                if g.label(n) != Some(win_label) {
                    return false;
                }
            }
            Owner::Player(p) if p == player => {
                let slot = choice(g.info_of(n).unwrap());
                if let Some(k) = (0..g.edges(n).len()).find(|&k| g.slot(n, k) == slot) {
                    if allowed(n, k) {
                        stack.push(g.child(n, k));
                    }
                }
            }
            _ => {
                for (k, e) in g.edges(n).iter().enumerate() {
                    if allowed(n, k) {
                        stack.push(e.child);
                    }
                }
            }
        }
    }
    true
}

/// Odometer over pure strategies of `player`, as dense vectors indexed by
/// information set id (entries for other owners stay 0).
pub(crate) fn pure_strategies(g: &GameTree, player: u32, limit: u128) -> Result<impl Iterator<Item = Vec<usize>>> {
    let sets: Vec<(InfoSetId, usize)> = g.player_info_sets(player).map(|i| (i, g.info_set(i).actions.len())).collect();
    let mut count: u128 = 1;
    for (_, k) in &sets {
        count = count.saturating_mul(*k as u128);
        if count > limit {
            return Err(Error::LimitExceeded(format!("player {player} has more than {limit} pure strategies")));
        }
    }
    let total = g.info_sets().len();
    let mut cur: Option<Vec<usize>> = Some(vec![0; total]);
    Ok(std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut carry = true;
        for (i, k) in &sets {
            if !carry {
                break;
            }
            next[i.0] += 1;
            if next[i.0] == *k {
                next[i.0] = 0;
            } else {
                carry = false;
            }
        }
        cur = if carry { None } else { Some(next) };
        Some(out)
    }))
}

/// "value = 1" through the sequence-form LP.
///
/// Only `player` needs perfect recall: if the opponent lacks it, its
/// information sets are split into singletons first. A more informed
/// opponent can only lower the value, but a pure winning strategy wins
/// against every opponent behaviour, so value 1 is unaffected.
pub fn can_guarantee_lp(g: &GameTree, player: u32, win_label: Label) -> Result<bool> {
    let opp = 3 - player;
    let g2 = if player_recall_violations(g, opp).is_empty() { g.clone() } else { split_player(g, opp) };
    Ok(game_value(&g2, player, win_label)?.value.is_one())
}

/// Same game with every information set of `player` split into singletons.
fn split_player(g: &GameTree, player: u32) -> GameTree {
    let mut partition = Vec::new();
    let mut sources = Vec::new();
    for (k, is) in g.info_sets().iter().enumerate() {
        if is.owner == Owner::Player(player) && is.nodes.len() > 1 {
            for &n in &is.nodes {
                partition.push((Arc::from(format!("{}@{}", is.name, g.name(n))), is.owner, vec![n]));
                sources.push(InfoSetId(k));
            }
        } else {
            partition.push((is.name.clone(), is.owner, is.nodes.clone()));
            sources.push(InfoSetId(k));
        }
    }
    g.refine(g.players(), g.nodes().map(|n| g.owner(n)).collect(), partition, &sources)
}
