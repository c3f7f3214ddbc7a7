//! Exact two-phase primal simplex over rationals with Bland's rule.
//!
//! The tableau is kept as sparse rows; the objective rows are dense. Pivot
//! choice is fully determined by the input, so identical programs always
//! follow identical pivot sequences.

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Free,
    NonNegative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub cmp: Cmp,
    pub rhs: Rational,
}

/// `maximize objective · x` subject to the constraints.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub vars: Vec<VarKind>,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<(usize, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn add_var(&mut self, kind: VarKind) -> usize {
        self.vars.push(kind);
        self.vars.len() - 1
    }

    pub fn add_constraint(&mut self, coeffs: Vec<(usize, Rational)>, cmp: Cmp, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, cmp, rhs });
    }
}

type Row = Vec<(u32, Rational)>;

fn row_get(row: &Row, col: u32) -> Option<&Rational> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|i| &row[i].1)
}

/// `a - f * b` for sparse rows.
fn row_sub_scaled(a: &Row, f: &Rational, b: &Row) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(f * &b[j].1);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

struct Tableau {
    rows: Vec<Row>,
    rhs: Vec<Rational>,
    basis: Vec<u32>,
    /// Dense objective rows (`-c` reduced), with their current value.
    objs: Vec<(Vec<Rational>, Rational)>,
    ncols: usize,
    /// Columns that may never enter (artificials after phase one).
    banned: Vec<bool>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: u32) {
        let piv = row_get(&self.rows[r], c).expect("nonzero pivot").clone();
        let inv = piv.recip();
        if !inv.is_one() {
            for e in self.rows[r].iter_mut() {
                e.1 = &e.1 * &inv;
            }
            self.rhs[r] = &self.rhs[r] * &inv;
        }
        let prow = std::mem::take(&mut self.rows[r]);
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            if let Some(f) = row_get(&self.rows[i], c).cloned() {
                self.rows[i] = row_sub_scaled(&self.rows[i], &f, &prow);
                self.rhs[i] = &self.rhs[i] - &(&f * &prhs);
            }
        }
        for (obj, val) in self.objs.iter_mut() {
            let f = obj[c as usize].clone();
            if !f.is_zero() {
                for (col, v) in &prow {
                    obj[*col as usize] = &obj[*col as usize] - &(&f * v);
                }
                *val = &*val - &(&f * &prhs);
            }
        }
        self.rows[r] = prow;
        self.basis[r] = c;
    }

    /// Runs Bland's rule on objective `k`. Returns false if unbounded.
    fn optimize(&mut self, k: usize) -> bool {
        loop {
            let entering = (0..self.ncols).find(|&j| !self.banned[j] && self.objs[k].0[j].is_negative());
            let Some(c) = entering else { return true };
            let c = c as u32;
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if let Some(a) = row_get(row, c) {
                    if a.is_positive() {
                        let ratio = &self.rhs[i] / a;
                        let better = match &best {
                            None => true,
                            Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                        };
                        if better {
                            best = Some((i, ratio));
                        }
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

pub fn lp_solve(lp: &LinearProgram) -> LpOutcome {
    // Column layout: structural columns (free variables split in two),
    // then slacks/surpluses, then artificials.
    let mut col_of: Vec<(u32, Option<u32>)> = Vec::with_capacity(lp.vars.len());
    let mut ncols = 0u32;
    for v in &lp.vars {
        match v {
            VarKind::NonNegative => {
                col_of.push((ncols, None));
                ncols += 1;
            }
            VarKind::Free => {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            }
        }
    }
    let structural = ncols as usize;

    let mut rows: Vec<Row> = Vec::with_capacity(lp.constraints.len());
    let mut rhs = Vec::with_capacity(lp.constraints.len());
    let mut kinds = Vec::with_capacity(lp.constraints.len());
    for con in &lp.constraints {
        let flip = con.rhs.is_negative();
        let mut dense: std::collections::BTreeMap<u32, Rational> = std::collections::BTreeMap::new();
        for (v, a) in &con.coeffs {
            let a = if flip { -a } else { a.clone() };
            let (p, m) = col_of[*v];
            *dense.entry(p).or_default() += &a;
            if let Some(m) = m {
                *dense.entry(m).or_default() -= &a;
            }
        }
        rows.push(dense.into_iter().filter(|(_, a)| !a.is_zero()).collect::<Row>());
        rhs.push(if flip { -&con.rhs } else { con.rhs.clone() });
        kinds.push(match (con.cmp, flip) {
            (Cmp::Eq, _) => Cmp::Eq,
            (Cmp::Le, false) | (Cmp::Ge, true) => Cmp::Le,
            (Cmp::Ge, false) | (Cmp::Le, true) => Cmp::Ge,
        });
    }
    let m = rows.len();
    let mut basis = vec![0u32; m];
    let mut artificial = Vec::new();
    for i in 0..m {
        if kinds[i] != Cmp::Eq {
            let sign = if kinds[i] == Cmp::Le { Rational::one() } else { -Rational::one() };
            rows[i].push((ncols, sign));
            if kinds[i] == Cmp::Le {
                basis[i] = ncols;
            }
            ncols += 1;
        }
    }
    for i in 0..m {
        if kinds[i] != Cmp::Le {
            rows[i].push((ncols, Rational::one()));
            basis[i] = ncols;
            artificial.push(ncols);
            ncols += 1;
        }
    }
    let n = ncols as usize;

    let mut phase2 = vec![Rational::zero(); n];
    for (v, c) in &lp.objective {
        let (p, mm) = col_of[*v];
        phase2[p as usize] -= c;
        if let Some(mm) = mm {
            phase2[mm as usize] += c;
        }
    }
    let mut phase1 = vec![Rational::zero(); n];
    let mut phase1_val = Rational::zero();
    for &a in &artificial {
        phase1[a as usize] = Rational::one();
    }
    // Price out the initial artificial basis.
    for i in 0..m {
        if artificial.contains(&basis[i]) {
            for (c, v) in &rows[i] {
                phase1[*c as usize] -= v;
            }
            phase1_val -= &rhs[i];
        }
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis,
        objs: vec![(phase2, Rational::zero()), (phase1, phase1_val)],
        ncols: n,
        banned: vec![false; n],
    };

    if !artificial.is_empty() {
        t.optimize(1);
        if t.objs[1].1.is_negative() {
            return LpOutcome::Infeasible;
        }
        let is_art = |c: u32, art: &[u32]| art.binary_search(&c).is_ok();
        // Drive remaining (zero-valued) artificials out; drop redundant rows.
        let mut i = 0;
        while i < t.rows.len() {
            if is_art(t.basis[i], &artificial) {
                let col = t.rows[i].iter().map(|e| e.0).find(|&c| !is_art(c, &artificial));
                match col {
                    Some(c) => t.pivot(i, c),
                    None => {
                        t.rows.remove(i);
                        t.rhs.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for &a in &artificial {
            t.banned[a as usize] = true;
        }
        t.objs.truncate(1);
    }
    if !t.optimize(0) {
        return LpOutcome::Unbounded;
    }

    let mut colval = vec![Rational::zero(); structural];
    for (i, &b) in t.basis.iter().enumerate() {
        if (b as usize) < structural {
            colval[b as usize] = t.rhs[i].clone();
        }
    }
    let x = col_of
        .iter()
        .map(|&(p, mm)| match mm {
            None => colval[p as usize].clone(),
            Some(mm) => &colval[p as usize] - &colval[mm as usize],
        })
        .collect();
    LpOutcome::Optimal { value: t.objs[0].1.clone(), x }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn single_bound() {
        let mut lp = LinearProgram::default();
        let x = lp.add_var(VarKind::NonNegative);
        lp.add_constraint(vec![(x, r(1, 1))], Cmp::Le, r(1, 1));
        lp.objective = vec![(x, r(1, 1))];
        assert_eq!(lp_solve(&lp), LpOutcome::Optimal { value: r(1, 1), x: vec![r(1, 1)] });
    }

    #[test]
    fn equality_third() {
        let mut lp = LinearProgram::default();
        let x = lp.add_var(VarKind::NonNegative);
        let y = lp.add_var(VarKind::NonNegative);
        lp.add_constraint(vec![(x, r(1, 1)), (y, r(1, 1))], Cmp::Eq, r(1, 3));
        lp.objective = vec![(x, r(1, 1)), (y, r(1, 1))];
        match lp_solve(&lp) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, r(1, 3)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::default();
        let x = lp.add_var(VarKind::NonNegative);
        lp.add_constraint(vec![(x, r(1, 1))], Cmp::Ge, r(2, 1));
        lp.add_constraint(vec![(x, r(1, 1))], Cmp::Le, r(1, 1));
        assert_eq!(lp_solve(&lp), LpOutcome::Infeasible);

        let mut lp = LinearProgram::default();
        let x = lp.add_var(VarKind::Free);
        lp.add_constraint(vec![(x, r(1, 1))], Cmp::Ge, r(-5, 1));
        lp.objective = vec![(x, r(1, 1))];
        assert_eq!(lp_solve(&lp), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variable_negative_optimum() {
        // max -x  s.t. x >= -3/2 with x free: attained at x = -3/2.
        let mut lp = LinearProgram::default();
        let x = lp.add_var(VarKind::Free);
        lp.add_constraint(vec![(x, r(1, 1))], Cmp::Ge, r(-3, 2));
        lp.objective = vec![(x, r(-1, 1))];
        assert_eq!(lp_solve(&lp), LpOutcome::Optimal { value: r(3, 2), x: vec![r(-3, 2)] });
    }

    #[test]
    fn redundant_equalities() {
        // x + y = 1 twice, maximize 2x + y.
        let mut lp = LinearProgram::default();
        let x = lp.add_var(VarKind::NonNegative);
        let y = lp.add_var(VarKind::NonNegative);
        for _ in 0..2 {
            lp.add_constraint(vec![(x, r(1, 1)), (y, r(1, 1))], Cmp::Eq, r(1, 1));
        }
        lp.objective = vec![(x, r(2, 1)), (y, r(1, 1))];
        assert_eq!(lp_solve(&lp), LpOutcome::Optimal { value: r(2, 1), x: vec![r(1, 1), r(0, 1)] });
    }

    #[test]
    fn deterministic() {
        let mut lp = LinearProgram::default();
        let v: Vec<_> = (0..4).map(|_| lp.add_var(VarKind::NonNegative)).collect();
        lp.add_constraint(v.iter().map(|&i| (i, r(1, 1))).collect(), Cmp::Le, r(1, 1));
        lp.add_constraint(vec![(v[0], r(1, 1)), (v[1], r(-1, 1))], Cmp::Eq, r(0, 1));
        lp.objective = v.iter().map(|&i| (i, r(1, 1))).collect();
        assert_eq!(lp_solve(&lp), lp_solve(&lp.clone()));
    }
}
