use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::game::{player_recall_violations, GameTree, InfoSetId, Label, NodeId, Owner};
use crate::rational::Rational;

/// A non-empty sequence `(I, a)`; the empty sequence has index 0 and no
/// entry in [`SideSequences::seqs`] payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    /// `None` for the empty sequence.
    pub last: Option<(InfoSetId, usize)>,
    pub parent: usize,
}

#[derive(Debug, Clone)]
pub struct SideSequences {
    pub player: u32,
    /// Index 0 is the empty sequence.
    pub seqs: Vec<Sequence>,
    /// For each information set of the side: the sequence leading to it and
    /// its child sequences (one per action, in action order).
    pub info_sets: Vec<(InfoSetId, usize, Vec<usize>)>,
}

impl SideSequences {
    /// Rows of the realization constraint matrix (row 0 is `x(∅) = 1`);
    /// each row is a sparse list of `(sequence, coefficient in {-1, 1})`.
    pub fn constraint_rows(&self) -> Vec<Vec<(usize, i64)>> {
        let mut rows = vec![vec![(0, 1)]];
        for (_, parent, children) in &self.info_sets {
            let mut row = vec![(*parent, -1)];
            row.extend(children.iter().map(|&c| (c, 1)));
            rows.push(row);
        }
        rows
    }
}

#[derive(Debug, Clone)]
pub struct SequenceForm {
    pub maximizer: SideSequences,
    pub opponent: SideSequences,
    pub win_label: Label,
    /// Nonzero entries of `A[max seq][opp seq]`.
    pub payoff: BTreeMap<(usize, usize), Rational>,
}

fn side_sequences(g: &GameTree, player: u32) -> (SideSequences, HashMap<(InfoSetId, usize), usize>) {
    let mut seqs = vec![Sequence { last: None, parent: 0 }];
    let mut index = HashMap::new();
    let mut infos = Vec::new();
    // Preorder guarantees an information set's parent sequence exists first.
    let mut seq_of = vec![0usize; g.node_count()];
    let mut seen = vec![false; g.info_sets().len()];
    for &n in g.preorder() {
        if g.is_terminal(n) {
            continue;
        }
        let here = seq_of[n.0];
        if g.owner(n) == Owner::Player(player) {
            let i = g.info_of(n).unwrap();
            if !seen[i.0] {
                seen[i.0] = true;
                let children: Vec<usize> = (0..g.info_set(i).actions.len())
                    .map(|s| {
                        seqs.push(Sequence { last: Some((i, s)), parent: here });
                        index.insert((i, s), seqs.len() - 1);
                        seqs.len() - 1
                    })
                    .collect();
                infos.push((i, here, children));
            }
            for k in 0..g.edges(n).len() {
                seq_of[g.child(n, k).0] = index[&(i, g.slot(n, k))];
            }
        } else {
            for e in g.edges(n) {
                seq_of[e.child.0] = here;
            }
        }
    }
    (SideSequences { player, seqs, info_sets: infos }, index)
}

/// Sequence form of a two-player game for `maximizer` (1 or 2), payoff 1 at
/// leaves labelled `win_label` and 0 elsewhere.
pub fn build_sequence_form(g: &GameTree, maximizer: u32, win_label: Label) -> Result<SequenceForm> {
    if g.players() != 2 || !(1..=2).contains(&maximizer) {
        return Err(Error::Internal("sequence form needs a two-player game and side 1 or 2".into()));
    }
    let opp = 3 - maximizer;
    for p in [maximizer, opp] {
        if let Some(v) = player_recall_violations(g, p).into_iter().next() {
            return Err(v.into_error(g));
        }
    }
    let (max_side, max_index) = side_sequences(g, maximizer);
    let (opp_side, opp_index) = side_sequences(g, opp);

    let mut payoff: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    let mut stack: Vec<(NodeId, usize, usize, Rational)> = vec![(g.root(), 0, 0, Rational::one())];
    while let Some((n, sx, sy, p)) = stack.pop() {
        match g.owner(n) {
            Owner::Terminal => {
                if g.label(n) == Some(win_label) {
                    *payoff.entry((sx, sy)).or_default() += &p;
                }
            }
            Owner::Chance => {
                for (k, q) in g.probs(n).unwrap().iter().enumerate() {
                    stack.push((g.child(n, k), sx, sy, &p * q));
                }
            }
            Owner::Player(q) => {
                let i = g.info_of(n).unwrap();
                for k in 0..g.edges(n).len() {
                    let s = g.slot(n, k);
                    let (nx, ny) = if q == maximizer { (max_index[&(i, s)], sy) } else { (sx, opp_index[&(i, s)]) };
                    stack.push((g.child(n, k), nx, ny, p.clone()));
                }
            }
        }
    }
    Ok(SequenceForm { maximizer: max_side, opponent: opp_side, win_label, payoff })
}
