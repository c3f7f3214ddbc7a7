//! Recursive structural-equation models with finite ranges.

mod cause;
mod compile;
mod formula;

pub use cause::{actual_cause, but_for_direct, but_for_via_game, CauseVerdict};
pub use compile::{compile_to_game, induced_profile_and_play, label_event, CompiledGame};
pub use formula::EventFormula;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A range value as written in JSON; numbers and booleans are accepted and
/// kept as their textual form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawValue {
    Text(String),
    Int(i64),
    Bool(bool),
}

impl RawValue {
    fn into_string(self) -> String {
        match self {
            RawValue::Text(s) => s,
            RawValue::Int(i) => i.to_string(),
            RawValue::Bool(b) => b.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawExogenous {
    pub name: String,
    pub range: Vec<RawValue>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawEndogenous {
    pub name: String,
    pub range: Vec<RawValue>,
    #[serde(default)]
    pub parents: Vec<String>,
    /// Parent values joined by `,` (the empty key when there are no
    /// parents) to the variable's value.
    pub table: BTreeMap<String, RawValue>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawCausalModel {
    #[serde(default)]
    pub exogenous: Vec<RawExogenous>,
    pub endogenous: Vec<RawEndogenous>,
    /// Total order on the endogenous variables; defaults to listing order.
    #[serde(default)]
    pub order: Vec<String>,
}

/// Refers to a variable of either kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarRef {
    Exo(usize),
    Endo(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub range: Vec<String>,
}

impl Variable {
    pub fn value_index(&self, v: &str) -> Option<usize> {
        self.range.iter().position(|x| x == v)
    }
}

/// Structural function of one endogenous variable, as a table over the
/// product of its parents' ranges (row-major, first parent slowest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub parents: Vec<VarRef>,
    pub table: Vec<usize>,
}

/// Endogenous variables are stored in the model's causal order, and every
/// parent of a variable is exogenous or comes earlier in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalModel {
    pub exogenous: Vec<Variable>,
    pub endogenous: Vec<Variable>,
    pub equations: Vec<Equation>,
}

/// Values of the exogenous variables, as range indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Context(pub Vec<usize>);

/// Forced values for some endogenous variables, as `(variable, value)`
/// range indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Intervention(pub Vec<(usize, usize)>);

fn check_value_text(var: &str, v: &str) -> Result<()> {
    if v.is_empty() || v.contains([',', '(', ')', '=', '|', '&', '!', ' ']) {
        return Err(Error::Causal(format!("value {v:?} of {var} must be non-empty and free of ,()=|&! and spaces")));
    }
    Ok(())
}

fn parse_range(name: &str, raw: Vec<RawValue>) -> Result<Vec<String>> {
    let range: Vec<String> = raw.into_iter().map(RawValue::into_string).collect();
    if range.is_empty() {
        return Err(Error::Causal(format!("variable {name} has an empty range")));
    }
    for (k, v) in range.iter().enumerate() {
        check_value_text(name, v)?;
        if range[..k].contains(v) {
            return Err(Error::Causal(format!("variable {name} lists {v:?} twice")));
        }
    }
    Ok(range)
}

impl CausalModel {
    pub fn from_json(text: &str) -> Result<CausalModel> {
        let raw: RawCausalModel = serde_json::from_str(text)?;
        CausalModel::from_raw(raw)
    }

    pub fn from_raw(raw: RawCausalModel) -> Result<CausalModel> {
        let mut names: HashMap<String, VarRef> = HashMap::new();
        let mut exogenous = Vec::new();
        for (k, u) in raw.exogenous.into_iter().enumerate() {
            if names.insert(u.name.clone(), VarRef::Exo(k)).is_some() {
                return Err(Error::Causal(format!("variable {} declared twice", u.name)));
            }
            let range = parse_range(&u.name, u.range)?;
            exogenous.push(Variable { name: u.name, range });
        }
        let order: Vec<String> = if raw.order.is_empty() {
            raw.endogenous.iter().map(|v| v.name.clone()).collect()
        } else {
            raw.order.clone()
        };
        if order.len() != raw.endogenous.len() {
            return Err(Error::Causal("order must list every endogenous variable exactly once".into()));
        }
        let mut by_name: HashMap<String, RawEndogenous> = HashMap::new();
        for v in raw.endogenous {
            if names.contains_key(&v.name) || by_name.contains_key(&v.name) {
                return Err(Error::Causal(format!("variable {} declared twice", v.name)));
            }
            by_name.insert(v.name.clone(), v);
        }
        let mut endogenous = Vec::new();
        let mut equations = Vec::new();
        for (k, name) in order.iter().enumerate() {
            let v = by_name.remove(name).ok_or_else(|| {
                Error::Causal(format!("order mentions {name:?}, which is not an endogenous variable (or repeats it)"))
            })?;
            let range = parse_range(&v.name, v.range)?;
            let parents = v
                .parents
                .iter()
                .map(|p| match names.get(p) {
                    Some(&r) => Ok(r),
                    None if by_name.contains_key(p) => {
                        Err(Error::Causal(format!("{} depends on {p}, which does not precede it in the order", v.name)))
                    }
                    None => Err(Error::Causal(format!("{} depends on unknown variable {p:?}", v.name))),
                })
                .collect::<Result<Vec<_>>>()?;
            for (a, p) in v.parents.iter().enumerate() {
                if v.parents[..a].contains(p) {
                    return Err(Error::Causal(format!("{} lists parent {p} twice", v.name)));
                }
            }
            names.insert(v.name.clone(), VarRef::Endo(k));
            let var = Variable { name: v.name.clone(), range };
            let ranges: Vec<&Variable> = parents
                .iter()
                .map(|&p| match p {
                    VarRef::Exo(i) => &exogenous[i],
                    VarRef::Endo(i) => &endogenous[i],
                })
                .collect();
            let size: usize = ranges.iter().map(|r| r.range.len()).product();
            let mut table = vec![usize::MAX; size];
            for (key, val) in v.table {
                let parts: Vec<&str> =
                    if key.is_empty() { Vec::new() } else { key.split(',').map(str::trim).collect() };
                if parts.len() != ranges.len() {
                    return Err(Error::Causal(format!("{}: table key {key:?} does not match its parents", v.name)));
                }
                let mut idx = 0;
                for (part, r) in parts.iter().zip(&ranges) {
                    let j = r
                        .value_index(part)
                        .ok_or_else(|| Error::Causal(format!("{}: {part:?} is not a value of {}", v.name, r.name)))?;
                    idx = idx * r.range.len() + j;
                }
                let val = val.into_string();
                let out = var
                    .value_index(&val)
                    .ok_or_else(|| Error::Causal(format!("{}: {val:?} is out of range", v.name)))?;
                table[idx] = out;
            }
            if table.contains(&usize::MAX) {
                return Err(Error::Causal(format!("{}: table does not cover every parent assignment", v.name)));
            }
            endogenous.push(var);
            equations.push(Equation { parents, table });
        }
        Ok(CausalModel { exogenous, endogenous, equations })
    }

    pub fn to_raw(&self) -> RawCausalModel {
        let exogenous = self
            .exogenous
            .iter()
            .map(|u| RawExogenous {
                name: u.name.clone(),
                range: u.range.iter().cloned().map(RawValue::Text).collect(),
            })
            .collect();
        let endogenous = self
            .endogenous
            .iter()
            .zip(&self.equations)
            .map(|(v, eq)| {
                let ranges: Vec<&Variable> = eq.parents.iter().map(|&p| self.var(p)).collect();
                let mut table = BTreeMap::new();
                for (idx, &out) in eq.table.iter().enumerate() {
                    let mut rest = idx;
                    let mut parts = vec![String::new(); ranges.len()];
                    for (slot, r) in ranges.iter().enumerate().rev() {
                        parts[slot] = r.range[rest % r.range.len()].clone();
                        rest /= r.range.len();
                    }
                    table.insert(parts.join(","), RawValue::Text(v.range[out].clone()));
                }
                RawEndogenous {
                    name: v.name.clone(),
                    range: v.range.iter().cloned().map(RawValue::Text).collect(),
                    parents: eq.parents.iter().map(|&p| self.var(p).name.clone()).collect(),
                    table,
                }
            })
            .collect();
        RawCausalModel { exogenous, endogenous, order: self.endogenous.iter().map(|v| v.name.clone()).collect() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("serializable")
    }

    pub fn var(&self, r: VarRef) -> &Variable {
        match r {
            VarRef::Exo(i) => &self.exogenous[i],
            VarRef::Endo(i) => &self.endogenous[i],
        }
    }

    pub fn endo_index(&self, name: &str) -> Result<usize> {
        self.endogenous
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::Causal(format!("unknown endogenous variable {name:?}")))
    }

    /// Value of `F_X` for endogenous `x` given the exogenous context and the
    /// values of the variables before `x` (later entries are ignored).
    pub fn apply(&self, x: usize, ctx: &Context, values: &[usize]) -> usize {
        let eq = &self.equations[x];
        let mut idx = 0;
        for &p in &eq.parents {
            let (v, len) = match p {
                VarRef::Exo(i) => (ctx.0[i], self.exogenous[i].range.len()),
                VarRef::Endo(i) => (values[i], self.endogenous[i].range.len()),
            };
            idx = idx * len + v;
        }
        eq.table[idx]
    }

    pub fn check_context(&self, ctx: &Context) -> Result<()> {
        if ctx.0.len() != self.exogenous.len() || ctx.0.iter().zip(&self.exogenous).any(|(&v, u)| v >= u.range.len()) {
            return Err(Error::Causal("context does not assign every exogenous variable a value in range".into()));
        }
        Ok(())
    }

    /// Parses a context from `name -> value` pairs.
    pub fn context(&self, pairs: &BTreeMap<String, String>) -> Result<Context> {
        let mut vals = Vec::new();
        for u in &self.exogenous {
            let v = pairs.get(&u.name).ok_or_else(|| Error::Causal(format!("context misses {}", u.name)))?;
            vals.push(u.value_index(v).ok_or_else(|| Error::Causal(format!("{v:?} is not a value of {}", u.name)))?);
        }
        if let Some(extra) = pairs.keys().find(|k| !self.exogenous.iter().any(|u| &u.name == *k)) {
            return Err(Error::Causal(format!("context assigns unknown variable {extra:?}")));
        }
        Ok(Context(vals))
    }

    /// Parses `X=x` pairs into an intervention (or a candidate cause).
    pub fn assignment(&self, pairs: &[(String, String)]) -> Result<Intervention> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for (name, val) in pairs {
            let x = self.endo_index(name)?;
            let v = self.endogenous[x]
                .value_index(val)
                .ok_or_else(|| Error::Causal(format!("{val:?} is not a value of {name}")))?;
            if out.iter().any(|&(y, _)| y == x) {
                return Err(Error::Causal(format!("{name} assigned twice")));
            }
            out.push((x, v));
        }
        Ok(Intervention(out))
    }

    /// Solves the equations in causal order; intervened variables take
    /// their forced values.
    pub fn evaluate(&self, ctx: &Context, iv: &Intervention) -> Result<Vec<usize>> {
        self.check_context(ctx)?;
        for &(x, v) in &iv.0 {
            if x >= self.endogenous.len() || v >= self.endogenous[x].range.len() {
                return Err(Error::Causal("intervention out of range".into()));
            }
        }
        Ok(self.evaluate_unchecked(ctx, iv))
    }

    pub(crate) fn evaluate_unchecked(&self, ctx: &Context, iv: &Intervention) -> Vec<usize> {
        let mut values = vec![0; self.endogenous.len()];
        for x in 0..self.endogenous.len() {
            values[x] = match iv.0.iter().find(|&&(y, _)| y == x) {
                Some(&(_, v)) => v,
                None => self.apply(x, ctx, &values),
            };
        }
        values
    }

    /// `(M, u) ⊨ [Y ← y] φ`.
    pub fn holds(&self, ctx: &Context, iv: &Intervention, phi: &EventFormula) -> Result<bool> {
        phi.check(self)?;
        Ok(phi.eval(&self.evaluate(ctx, iv)?))
    }

    /// Name/value rendering of a full endogenous assignment.
    pub fn describe(&self, values: &[usize]) -> BTreeMap<String, String> {
        self.endogenous.iter().zip(values).map(|(v, &i)| (v.name.clone(), v.range[i].clone())).collect()
    }

    /// Every context, in lexicographic order of range indices.
    pub fn contexts(&self) -> Vec<Context> {
        let mut out = vec![Vec::new()];
        for u in &self.exogenous {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<usize>| {
                    (0..u.range.len()).map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Context).collect()
    }
}
