use super::{compile_to_game, induced_profile_and_play, label_event, CausalModel, Context, EventFormula, Intervention};
use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::responsibility::{is_responsible, BackwardContext, Kind};

/// Largest number of (contingency, setting) pairs the cause checks try.
const SEARCH_CAP: u128 = 1 << 22;

/// Outcome of a cause check. `failed` names the first clause that does not
/// hold; `setting` and `contingency` witness the counterfactual clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauseVerdict {
    pub is_cause: bool,
    pub failed: Option<&'static str>,
    pub setting: Option<Intervention>,
    pub contingency: Vec<usize>,
}

impl CauseVerdict {
    fn fails(clause: &'static str) -> Self {
        CauseVerdict { is_cause: false, failed: Some(clause), setting: None, contingency: Vec::new() }
    }
}

fn validate(m: &CausalModel, ctx: &Context, x: &Intervention, phi: &EventFormula) -> Result<()> {
    m.check_context(ctx)?;
    phi.check(m)?;
    for (k, &(v, val)) in x.0.iter().enumerate() {
        if v >= m.endogenous.len() || val >= m.endogenous[v].range.len() {
            return Err(Error::Causal("candidate cause out of range".into()));
        }
        if x.0[..k].iter().any(|&(w, _)| w == v) {
            return Err(Error::Causal("candidate cause mentions a variable twice".into()));
        }
    }
    Ok(())
}

/// AC1: the candidate values and `phi` both hold in the actual world.
fn ac1(m: &CausalModel, ctx: &Context, x: &Intervention, phi: &EventFormula) -> bool {
    let actual = m.evaluate_unchecked(ctx, &Intervention::default());
    x.0.iter().all(|&(v, val)| actual[v] == val) && phi.eval(&actual)
}

/// Every assignment of values to `vars`, odometer order.
fn settings(m: &CausalModel, vars: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![Vec::new()];
    for &v in vars {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<(usize, usize)>| {
                (0..m.endogenous[v].range.len()).map(move |val| {
                    let mut p = prefix.clone();
                    p.push((v, val));
                    p
                })
            })
            .collect();
    }
    out
}

fn setting_count(m: &CausalModel, vars: &[usize]) -> u128 {
    vars.iter().map(|&v| m.endogenous[v].range.len() as u128).product()
}

/// AC2 with the contingency set drawn from `contingencies`: some setting of
/// `vars` together with freezing a contingency at its actual values makes
/// `phi` false.
fn counterfactual(
    m: &CausalModel,
    ctx: &Context,
    vars: &[usize],
    phi: &EventFormula,
    contingencies: &[Vec<usize>],
) -> Option<(Intervention, Vec<usize>)> {
    let actual = m.evaluate_unchecked(ctx, &Intervention::default());
    for w in contingencies {
        for s in settings(m, vars) {
            let mut iv = s.clone();
            iv.extend(w.iter().map(|&v| (v, actual[v])));
            if !phi.eval(&m.evaluate_unchecked(ctx, &Intervention(iv))) {
                return Some((Intervention(s), w.clone()));
            }
        }
    }
    None
}

fn proper_subsets(vars: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let n = vars.len();
    (1..(1u64 << n) - 1).map(move |mask| (0..n).filter(|&k| mask & (1 << k) != 0).map(|k| vars[k]).collect())
}

fn all_subsets(vars: &[usize]) -> Vec<Vec<usize>> {
    let n = vars.len();
    (0..1u64 << n).map(|mask| (0..n).filter(|&k| mask & (1 << k) != 0).map(|k| vars[k]).collect()).collect()
}

fn check(
    m: &CausalModel,
    ctx: &Context,
    x: &Intervention,
    phi: &EventFormula,
    contingencies: &dyn Fn(&[usize]) -> Vec<Vec<usize>>,
) -> Result<CauseVerdict> {
    validate(m, ctx, x, phi)?;
    if x.0.is_empty() || !ac1(m, ctx, x, phi) {
        return Ok(CauseVerdict::fails("AC1"));
    }
    let vars: Vec<usize> = x.0.iter().map(|&(v, _)| v).collect();
    let rest: Vec<usize> = (0..m.endogenous.len()).filter(|v| !vars.contains(v)).collect();
    // Settings times contingency sets, once per subset of the candidate.
    let contingency_count = contingencies(&rest).len() as u128;
    let cost = setting_count(m, &vars).saturating_mul(contingency_count).saturating_mul(1 << vars.len().min(64));
    if cost > SEARCH_CAP {
        return Err(Error::LimitExceeded("cause search space too large".into()));
    }
    let Some((setting, w)) = counterfactual(m, ctx, &vars, phi, &contingencies(&rest)) else {
        return Ok(CauseVerdict::fails("AC2"));
    };
    for sub in proper_subsets(&vars) {
        let rest_sub: Vec<usize> = (0..m.endogenous.len()).filter(|v| !sub.contains(v)).collect();
        if counterfactual(m, ctx, &sub, phi, &contingencies(&rest_sub)).is_some() {
            return Ok(CauseVerdict::fails("AC3"));
        }
    }
    Ok(CauseVerdict { is_cause: true, failed: None, setting: Some(setting), contingency: w })
}

/// But-for cause: AC1, a setting of the candidate variables alone that
/// falsifies `phi`, and no smaller set of candidate variables with the same
/// property.
pub fn but_for_direct(m: &CausalModel, ctx: &Context, x: &Intervention, phi: &EventFormula) -> Result<CauseVerdict> {
    check(m, ctx, x, phi, &|_| vec![Vec::new()])
}

/// Actual cause: as [`but_for_direct`], but the counterfactual may also
/// freeze any set of other variables at their actual values.
pub fn actual_cause(m: &CausalModel, ctx: &Context, x: &Intervention, phi: &EventFormula) -> Result<CauseVerdict> {
    m.check_context(ctx)?;
    if m.endogenous.len() > 20 {
        return Err(Error::LimitExceeded("too many variables for the contingency search".into()));
    }
    check(m, ctx, x, phi, &|rest| all_subsets(rest))
}

/// But-for causality decided in the compiled game: the candidate variables,
/// as a coalition, are c-responsible for the event `phi` on the play the
/// context induces. AC1 failures are a negative verdict, not an error.
pub fn but_for_via_game(
    m: &CausalModel,
    ctx: &Context,
    x: &Intervention,
    phi: &EventFormula,
    node_cap: usize,
) -> Result<CauseVerdict> {
    validate(m, ctx, x, phi)?;
    if x.0.is_empty() || !ac1(m, ctx, x, phi) {
        return Ok(CauseVerdict::fails("AC1"));
    }
    let cg = compile_to_game(m, node_cap)?;
    let g = label_event(&cg, phi);
    let (profile, play) = induced_profile_and_play(m, &cg, ctx)?;
    let c = Coalition::new(g.players(), x.0.iter().map(|&(v, _)| v as u32 + 1))?;
    let ctx = BackwardContext::with_profile(play, profile);
    let yes = is_responsible(&g, c, Kind::C, Some(&ctx))?;
    Ok(CauseVerdict {
        is_cause: yes,
        failed: if yes { None } else { Some("c-responsibility") },
        setting: None,
        contingency: Vec::new(),
    })
}
