//! Concurrent epistemic game structures and their depth-bounded unrolling
//! into extensive-form games.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::json::{RawAction, RawGame, RawInfoSet, RawNode};
use crate::game::{GameTree, Label};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawCegs {
    pub players: u32,
    pub states: Vec<String>,
    pub actions: Vec<String>,
    /// Per player, the equivalence classes of indistinguishable states.
    /// States a player's list omits are only equivalent to themselves.
    #[serde(default)]
    pub indist: Vec<Vec<Vec<String>>>,
    /// Per player, the actions available in each state.
    pub avail: Vec<BTreeMap<String, Vec<String>>>,
    /// `"s|a1,…,an"` to the successor state.
    pub trans: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CegsViolation {
    pub clause: &'static str,
    pub detail: String,
}

impl fmt::Display for CegsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.clause, self.detail)
    }
}

/// A validated structure with everything stored as indices.
#[derive(Debug, Clone)]
pub struct Cegs {
    pub players: u32,
    pub states: Vec<String>,
    pub actions: Vec<String>,
    /// `class[i][s]`: representative (smallest member) of `s`'s class for
    /// player `i + 1`.
    pub class: Vec<Vec<usize>>,
    /// `avail[i][s]`: actions of player `i + 1` in state `s`, in the order
    /// of [`Cegs::actions`].
    pub avail: Vec<Vec<Vec<usize>>>,
    trans: HashMap<(usize, Vec<usize>), usize>,
}

fn violation(clause: &'static str, detail: String) -> CegsViolation {
    CegsViolation { clause, detail }
}

/// Checks every structural requirement and lists what fails.
pub fn validate_cegs(raw: &RawCegs) -> Vec<CegsViolation> {
    match build(raw) {
        Ok(_) => Vec::new(),
        Err(v) => v,
    }
}

fn index_of(names: &[String]) -> HashMap<&str, usize> {
    names.iter().enumerate().map(|(k, s)| (s.as_str(), k)).collect()
}

fn build(raw: &RawCegs) -> std::result::Result<Cegs, Vec<CegsViolation>> {
    let mut out = Vec::new();
    let n = raw.players as usize;
    if n == 0 {
        out.push(violation("players", "at least one player is required".into()));
    }
    if raw.states.is_empty() {
        out.push(violation("states", "at least one state is required".into()));
    }
    for (clause, names) in [("states", &raw.states), ("actions", &raw.actions)] {
        for (k, s) in names.iter().enumerate() {
            if names[..k].contains(s) {
                out.push(violation(clause, format!("{s:?} is listed twice")));
            }
            if s.is_empty() || s.contains(['|', ',', '.']) {
                out.push(violation(clause, format!("{s:?} must be non-empty and free of | , .")));
            }
        }
    }
    let states = index_of(&raw.states);
    let actions = index_of(&raw.actions);
    let ns = raw.states.len();

    // Indistinguishability: the classes must partition the states.
    if raw.indist.len() > n {
        out.push(violation("indist", format!("{} relations given for {n} players", raw.indist.len())));
    }
    let mut class = vec![(0..ns).collect::<Vec<usize>>(); n];
    for (i, classes) in raw.indist.iter().enumerate().take(n) {
        let mut seen = vec![false; ns];
        for members in classes {
            let mut ids = Vec::new();
            for s in members {
                match states.get(s.as_str()) {
                    Some(&k) if seen[k] => {
                        out.push(violation("equivalence", format!("player {}: state {s:?} lies in two classes", i + 1)))
                    }
                    Some(&k) => {
                        seen[k] = true;
                        ids.push(k);
                    }
                    None => out.push(violation("indist", format!("player {}: unknown state {s:?}", i + 1))),
                }
            }
            if let Some(&rep) = ids.iter().min() {
                for &k in &ids {
                    class[i][k] = rep;
                }
            }
        }
    }

    // Availability.
    let mut avail = vec![vec![Vec::new(); ns]; n];
    if raw.avail.len() != n {
        out.push(violation("avail", format!("{} availability maps given for {n} players", raw.avail.len())));
    }
    for (i, map) in raw.avail.iter().enumerate().take(n) {
        for (s, acts) in map {
            let Some(&k) = states.get(s.as_str()) else {
                out.push(violation("avail", format!("player {}: unknown state {s:?}", i + 1)));
                continue;
            };
            let mut ids = Vec::new();
            for a in acts {
                match actions.get(a.as_str()) {
                    Some(&j) if !ids.contains(&j) => ids.push(j),
                    Some(_) => out.push(violation("avail", format!("player {}: {a:?} repeated at {s:?}", i + 1))),
                    None => out.push(violation("avail", format!("player {}: unknown action {a:?}", i + 1))),
                }
            }
            ids.sort_unstable();
            avail[i][k] = ids;
        }
        for (k, s) in raw.states.iter().enumerate() {
            if avail[i][k].is_empty() {
                out.push(violation("avail", format!("player {} has no action at {s:?}", i + 1)));
            }
        }
    }
    for i in 0..n {
        for k in 0..ns {
            let rep = class[i][k];
            if avail[i][k] != avail[i][rep] {
                out.push(violation(
                    "avail-indist",
                    format!(
                        "player {}: {:?} and {:?} are indistinguishable but offer different actions",
                        i + 1,
                        raw.states[rep],
                        raw.states[k]
                    ),
                ));
            }
        }
    }

    // Transitions.
    let mut trans = HashMap::new();
    for (key, target) in &raw.trans {
        let Some((s, joint)) = key.split_once('|') else {
            out.push(violation("trans", format!("key {key:?} is not of the form s|a1,...,an")));
            continue;
        };
        let Some(&sk) = states.get(s) else {
            out.push(violation("trans", format!("unknown state {s:?} in {key:?}")));
            continue;
        };
        let parts: Vec<&str> = if joint.is_empty() { Vec::new() } else { joint.split(',').collect() };
        if parts.len() != n {
            out.push(violation("trans", format!("{key:?} does not give one action per player")));
            continue;
        }
        let mut ids = Vec::new();
        for (i, a) in parts.iter().enumerate() {
            match actions.get(a) {
                Some(&j) if avail.get(i).is_some_and(|av| av[sk].contains(&j)) => ids.push(j),
                Some(_) => out.push(violation("trans", format!("{key:?}: {a:?} is not available to player {}", i + 1))),
                None => out.push(violation("trans", format!("{key:?}: unknown action {a:?}"))),
            }
        }
        let Some(&tk) = states.get(target.as_str()) else {
            out.push(violation("trans", format!("{key:?} leads to unknown state {target:?}")));
            continue;
        };
        if ids.len() == n {
            trans.insert((sk, ids), tk);
        }
    }
    let m =
        Cegs { players: raw.players, states: raw.states.clone(), actions: raw.actions.clone(), class, avail, trans };
    if out.is_empty() {
        for s in 0..ns {
            for joint in m.joint_actions(s) {
                if !m.trans.contains_key(&(s, joint.clone())) {
                    out.push(violation("trans-total", format!("no transition for {}", m.key(s, &joint))));
                }
            }
        }
    }
    if out.is_empty() {
        Ok(m)
    } else {
        Err(out)
    }
}

impl Cegs {
    pub fn from_raw(raw: &RawCegs) -> Result<Cegs> {
        build(raw).map_err(|v| Error::Cegs(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")))
    }

    pub fn from_json(text: &str) -> Result<Cegs> {
        let raw: RawCegs = serde_json::from_str(text)?;
        Cegs::from_raw(&raw)
    }

    pub fn state_id(&self, name: &str) -> Result<usize> {
        self.states.iter().position(|s| s == name).ok_or_else(|| Error::Cegs(format!("unknown state {name:?}")))
    }

    fn key(&self, s: usize, joint: &[usize]) -> String {
        let acts: Vec<&str> = joint.iter().map(|&a| self.actions[a].as_str()).collect();
        format!("{}|{}", self.states[s], acts.join(","))
    }

    /// All available joint actions at `s`, first player slowest.
    pub fn joint_actions(&self, s: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for i in 0..self.players as usize {
            out = out
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    self.avail[i][s].iter().map(move |&a| {
                        let mut q = p.clone();
                        q.push(a);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn successor(&self, s: usize, joint: &[usize]) -> usize {
        self.trans[&(s, joint.to_vec())]
    }

    /// Nonterminal nodes of one state's gadget: `Σ_k ∏_{i<k} |d_i(s)|`.
    pub fn gadget_internal(&self, s: usize) -> u128 {
        let mut total = 0u128;
        let mut layer = 1u128;
        for i in 0..self.players as usize {
            total += layer;
            layer = layer.saturating_mul(self.avail[i][s].len() as u128);
        }
        total
    }

    /// Nodes of the `rounds`-round unrolling from `s`.
    pub fn unrolled_size(&self, s: usize, rounds: u32) -> u128 {
        let mut memo = HashMap::new();
        self.size_rec(s, rounds, &mut memo)
    }

    fn size_rec(&self, s: usize, r: u32, memo: &mut HashMap<(usize, u32), u128>) -> u128 {
        if r == 0 {
            return 1;
        }
        if let Some(&v) = memo.get(&(s, r)) {
            return v;
        }
        let mut total = self.gadget_internal(s);
        for joint in self.joint_actions(s) {
            total = total.saturating_add(self.size_rec(self.successor(s, &joint), r - 1, memo));
        }
        memo.insert((s, r), total);
        total
    }
}

fn player_node(owner: usize, id: String, actions: Vec<RawAction>) -> RawNode {
    RawNode { id, owner: format!("p{owner}"), actions, probs: None, label: None }
}

/// One round at state `s` as a game: player `k` moves knowing only the
/// state; leaves are complete joint actions (labelled `¬E`).
pub fn per_state_gadget(m: &Cegs, s: usize) -> Result<GameTree> {
    let mut u = Unroller::new(m, 1, &[]);
    u.player(s, m.states[s].clone(), 0, 0, Vec::new(), false, true);
    u.finish(m.states[s].clone())
}

/// Glues `horizon` rounds of gadgets, starting at `init`. Player `k`'s
/// information sets are keyed by round and by `k`'s indistinguishability
/// class of the current state, so nobody sees the other players' moves of
/// the same round. A leaf is `E` iff the visited states `s_0 … s_h`
/// include a bad state.
pub fn unroll(m: &Cegs, init: usize, horizon: u32, bad: &[usize], node_cap: usize) -> Result<GameTree> {
    if horizon == 0 {
        return Err(Error::Cegs("the horizon must be at least 1".into()));
    }
    let size = m.unrolled_size(init, horizon);
    if size > node_cap as u128 {
        return Err(Error::LimitExceeded(format!("unrolling has {size} nodes, above the cap of {node_cap}")));
    }
    let mut u = Unroller::new(m, horizon, bad);
    let root = m.states[init].clone();
    u.player(init, root.clone(), 0, 0, Vec::new(), bad.contains(&init), false);
    u.finish(root)
}

struct Unroller<'a> {
    m: &'a Cegs,
    horizon: u32,
    bad: &'a [usize],
    nodes: Vec<RawNode>,
    info: BTreeMap<String, (usize, Vec<String>)>,
}

impl<'a> Unroller<'a> {
    fn new(m: &'a Cegs, horizon: u32, bad: &'a [usize]) -> Self {
        Unroller { m, horizon, bad, nodes: Vec::new(), info: BTreeMap::new() }
    }

    /// Emits the subtree where player `k + 1` moves at state `s` in round
    /// `r`, after the same-round choices `joint` of the earlier players.
    /// With `single`, stops after one round.
    #[allow(clippy::too_many_arguments)]
    fn player(&mut self, s: usize, name: String, r: u32, k: usize, joint: Vec<usize>, seen_bad: bool, single: bool) {
        let m = self.m;
        let n = m.players as usize;
        if k == n {
            let t = m.successor(s, &joint);
            let bad = seen_bad || self.bad.contains(&t);
            if single || r + 1 == self.horizon {
                let label = if bad { Label::E } else { Label::NotE };
                self.nodes.push(RawNode {
                    id: name,
                    owner: "terminal".into(),
                    actions: Vec::new(),
                    probs: None,
                    label: Some(label.as_str().into()),
                });
            } else {
                self.player(t, name, r + 1, 0, Vec::new(), bad, single);
            }
            return;
        }
        let key = format!("p{}@{}:{}", k + 1, r, m.states[m.class[k][s]]);
        self.info.entry(key).or_insert_with(|| (k + 1, Vec::new())).1.push(name.clone());
        let children: Vec<(usize, String)> =
            m.avail[k][s].iter().map(|&a| (a, format!("{name}.{}", m.actions[a]))).collect();
        let actions =
            children.iter().map(|(a, c)| RawAction { name: m.actions[*a].clone(), child: c.clone() }).collect();
        self.nodes.push(player_node(k + 1, name, actions));
        for (a, c) in children {
            let mut j = joint.clone();
            j.push(a);
            self.player(s, c, r, k + 1, j, seen_bad, single);
        }
    }

    fn finish(self, root: String) -> Result<GameTree> {
        let info_sets = self
            .info
            .into_iter()
            .map(|(id, (owner, nodes))| RawInfoSet { owner: format!("p{owner}"), id, nodes })
            .collect();
        GameTree::from_raw(&RawGame { players: self.m.players as i64, nodes: self.nodes, root, info_sets })
    }
}
