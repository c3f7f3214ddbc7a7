use super::lp::{lp_solve, Cmp, LinearProgram, LpOutcome, VarKind};
use super::sequence::{build_sequence_form, SequenceForm};
use crate::error::{Error, Result};
use crate::game::{BehavioralStrategy, GameTree, InfoSetId, Label};
use crate::rational::Rational;

/// Optimal realization weights of the maximizer, indexed like
/// `SequenceForm::maximizer.seqs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationPlan {
    pub weights: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub struct GameValue {
    pub value: Rational,
    pub plan: RealizationPlan,
    pub form: SequenceForm,
}

impl GameValue {
    /// Behavioral strategy of the realization plan; information sets the
    /// plan never reaches get the uniform distribution.
    pub fn behavioral(&self, g: &GameTree) -> BehavioralStrategy {
        let side = &self.form.maximizer;
        let dists = side
            .info_sets
            .iter()
            .map(|(i, parent, children)| {
                let w = &self.plan.weights[*parent];
                let d = if w.is_positive() {
                    children.iter().map(|&c| &self.plan.weights[c] / w).collect()
                } else {
                    let k = g.info_set(*i).actions.len() as i64;
                    vec![Rational::new(1, k); children.len()]
                };
                (*i, d)
            })
            .collect::<Vec<(InfoSetId, Vec<Rational>)>>();
        BehavioralStrategy { player: side.player, dists }
    }
}

/// The max-min probability that `maximizer` reaches a `win_label` leaf.
///
/// Solves `max q_0  s.t.  F^T q - A^T x <= 0,  E x = e,  x >= 0,  q free`,
/// where `x` is the maximizer's realization plan and `q` has one entry per
/// opponent constraint row.
pub fn game_value(g: &GameTree, maximizer: u32, win_label: Label) -> Result<GameValue> {
    let form = build_sequence_form(g, maximizer, win_label)?;
    let mx = &form.maximizer;
    let op = &form.opponent;
    let mut lp = LinearProgram::default();
    let x: Vec<usize> = (0..mx.seqs.len()).map(|_| lp.add_var(VarKind::NonNegative)).collect();
    let q: Vec<usize> = (0..=op.info_sets.len()).map(|_| lp.add_var(VarKind::Free)).collect();

    // One dual row per opponent sequence.
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); op.seqs.len()];
    for (r, row) in op.constraint_rows().into_iter().enumerate() {
        for (s, coef) in row {
            rows[s].push((q[r], Rational::from_integer(coef)));
        }
    }
    for (&(sx, sy), a) in &form.payoff {
        rows[sy].push((x[sx], -a));
    }
    for row in rows {
        lp.add_constraint(row, Cmp::Le, Rational::zero());
    }
    for (r, row) in mx.constraint_rows().into_iter().enumerate() {
        let rhs = if r == 0 { Rational::one() } else { Rational::zero() };
        lp.add_constraint(row.into_iter().map(|(s, c)| (x[s], Rational::from_integer(c))).collect(), Cmp::Eq, rhs);
    }
    lp.objective = vec![(q[0], Rational::one())];

    match lp_solve(&lp) {
        LpOutcome::Optimal { value, x: sol } => {
            let weights = x.iter().map(|&i| sol[i].clone()).collect();
            Ok(GameValue { value, plan: RealizationPlan { weights }, form })
        }
        other => Err(Error::Internal(format!("sequence-form LP did not reach an optimum: {other:?}"))),
    }
}
