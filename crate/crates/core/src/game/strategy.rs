use std::collections::BTreeMap;

use super::json::{RawChoice, RawProfile, RawStrategy};
use super::{GameTree, InfoSet, InfoSetId, NodeId, Owner};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Distributions for the information sets of one player. Each distribution
/// is aligned with [`InfoSet::actions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehavioralStrategy {
    pub player: u32,
    pub dists: Vec<(InfoSetId, Vec<Rational>)>,
}

/// One distribution for every non-chance information set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyProfile {
    dists: Vec<Option<Vec<Rational>>>,
}

fn check_dist(is: &InfoSet, d: &[Rational]) -> Result<()> {
    if d.len() != is.actions.len() {
        return Err(Error::Profile(format!("distribution at {:?} has wrong length", is.name)));
    }
    if d.iter().any(|p| p.is_negative()) {
        return Err(Error::Profile(format!("negative probability at {:?}", is.name)));
    }
    let total: Rational = d.iter().sum();
    if !total.is_one() {
        return Err(Error::Profile(format!("distribution at {:?} sums to {total}", is.name)));
    }
    Ok(())
}

impl StrategyProfile {
    /// Assembles per-player strategies; together they must cover every
    /// player information set exactly once.
    pub fn new(g: &GameTree, strategies: Vec<BehavioralStrategy>) -> Result<StrategyProfile> {
        let mut dists: Vec<Option<Vec<Rational>>> = vec![None; g.info_sets().len()];
        for s in strategies {
            for (i, d) in s.dists {
                let is = g.info_sets().get(i.0).ok_or_else(|| Error::Profile("unknown information set".into()))?;
                if is.owner != Owner::Player(s.player) {
                    return Err(Error::Profile(format!("{:?} is not owned by player {}", is.name, s.player)));
                }
                check_dist(is, &d)?;
                if dists[i.0].replace(d).is_some() {
                    return Err(Error::Profile(format!("{:?} covered twice", is.name)));
                }
            }
        }
        for (is, d) in g.info_sets().iter().zip(&dists) {
            if matches!(is.owner, Owner::Player(_)) && d.is_none() {
                return Err(Error::Profile(format!("no distribution for {:?}", is.name)));
            }
        }
        Ok(StrategyProfile { dists })
    }

    /// Builds a profile from a function of each player information set.
    pub fn from_fn(g: &GameTree, mut f: impl FnMut(InfoSetId, &InfoSet) -> Vec<Rational>) -> Result<StrategyProfile> {
        let mut dists = Vec::with_capacity(g.info_sets().len());
        for (k, is) in g.info_sets().iter().enumerate() {
            if matches!(is.owner, Owner::Player(_)) {
                let d = f(InfoSetId(k), is);
                check_dist(is, &d)?;
                dists.push(Some(d));
            } else {
                dists.push(None);
            }
        }
        Ok(StrategyProfile { dists })
    }

    /// A pure profile; `choose` returns an index into [`InfoSet::actions`].
    pub fn pure(g: &GameTree, mut choose: impl FnMut(InfoSetId, &InfoSet) -> usize) -> StrategyProfile {
        StrategyProfile::from_fn(g, |i, is| {
            let k = choose(i, is);
            (0..is.actions.len()).map(|j| if j == k { Rational::one() } else { Rational::zero() }).collect()
        })
        .expect("Dirac distributions are valid")
    }

    /// Pure profile given by action names per information set name. Every
    /// player information set must be mentioned.
    pub fn pure_by_name(g: &GameTree, choices: &[(&str, &str)]) -> Result<StrategyProfile> {
        let mut map = BTreeMap::new();
        for (is, a) in choices {
            let id = g.info_set_id(is)?;
            let set = g.info_set(id);
            let k = set
                .actions
                .iter()
                .position(|x| &**x == *a)
                .ok_or_else(|| Error::Profile(format!("no action {a:?} at {is:?}")))?;
            map.insert(id, k);
        }
        let mut missing = None;
        let p = StrategyProfile::pure(g, |i, is| {
            *map.get(&i).unwrap_or_else(|| {
                missing.get_or_insert_with(|| is.name.to_string());
                &0
            })
        });
        match missing {
            Some(m) => Err(Error::Profile(format!("no choice given for {m:?}"))),
            None => Ok(p),
        }
    }

    pub fn uniform(g: &GameTree) -> StrategyProfile {
        StrategyProfile::from_fn(g, |_, is| {
            let n = is.actions.len() as i64;
            vec![Rational::new(1, n); is.actions.len()]
        })
        .expect("uniform distributions are valid")
    }

    /// Distribution at a player information set.
    pub fn dist(&self, i: InfoSetId) -> &[Rational] {
        self.dists[i.0].as_deref().expect("player information set")
    }

    /// Probability of taking edge `edge` at player node `n`.
    pub fn edge_prob(&self, g: &GameTree, n: NodeId, edge: usize) -> Rational {
        let i = g.info_of(n).expect("player node");
        self.dist(i)[g.slot(n, edge)].clone()
    }

    pub fn is_pure(&self) -> bool {
        self.dists.iter().flatten().all(|d| d.iter().all(|p| p.is_zero() || p.is_one()))
    }

    pub fn strategy_of(&self, g: &GameTree, player: u32) -> BehavioralStrategy {
        BehavioralStrategy { player, dists: g.player_info_sets(player).map(|i| (i, self.dist(i).to_vec())).collect() }
    }

    pub fn from_raw(g: &GameTree, raw: &RawProfile) -> Result<StrategyProfile> {
        let mut strategies = Vec::new();
        for s in raw {
            let player = match (&s.player, s.side.as_deref()) {
                (Some(p), None) => *p,
                (None, Some("C")) => 1,
                (None, Some("Cbar")) => 2,
                _ => {
                    return Err(Error::Profile(
                        "each strategy needs exactly one of `player` or `side` (\"C\"/\"Cbar\")".into(),
                    ))
                }
            };
            let mut dists = Vec::new();
            for c in &s.choices {
                let id = g.info_set_id(&c.info_set).map_err(|e| Error::Profile(e.to_string()))?;
                let is = g.info_set(id);
                let d = match (&c.dist, &c.action) {
                    (Some(d), None) => {
                        for k in d.keys() {
                            if !is.actions.iter().any(|a| &**a == k) {
                                return Err(Error::Profile(format!("unknown action {k:?} at {:?}", is.name)));
                            }
                        }
                        is.actions
                            .iter()
                            .map(|a| match d.get(&**a) {
                                None => Ok(Rational::zero()),
                                Some(s) => s
                                    .parse()
                                    .map_err(|e: crate::rational::ParseRationalError| Error::Profile(e.to_string())),
                            })
                            .collect::<Result<Vec<_>>>()?
                    }
                    (None, Some(a)) => {
                        let k = is
                            .actions
                            .iter()
                            .position(|x| &**x == a)
                            .ok_or_else(|| Error::Profile(format!("unknown action {a:?} at {:?}", is.name)))?;
                        (0..is.actions.len()).map(|j| if j == k { Rational::one() } else { Rational::zero() }).collect()
                    }
                    _ => {
                        return Err(Error::Profile(format!(
                            "choice at {:?} needs exactly one of `dist` or `action`",
                            is.name
                        )))
                    }
                };
                dists.push((id, d));
            }
            strategies.push(BehavioralStrategy { player, dists });
        }
        StrategyProfile::new(g, strategies)
    }

    pub fn from_json(g: &GameTree, text: &str) -> Result<StrategyProfile> {
        StrategyProfile::from_raw(g, &serde_json::from_str(text)?)
    }

    pub fn to_raw(&self, g: &GameTree) -> RawProfile {
        (1..=g.players())
            .map(|p| RawStrategy {
                player: Some(p),
                side: None,
                choices: g
                    .player_info_sets(p)
                    .map(|i| {
                        let is = g.info_set(i);
                        RawChoice {
                            info_set: is.name.to_string(),
                            dist: Some(
                                is.actions
                                    .iter()
                                    .zip(self.dist(i))
                                    .map(|(a, q)| (a.to_string(), q.to_string()))
                                    .collect(),
                            ),
                            action: None,
                        }
                    })
                    .collect(),
            })
            .collect()
    }
}
