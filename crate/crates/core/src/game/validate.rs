use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use super::json::RawGame;
use super::{GameTree, Owner};
use crate::rational::Rational;

/// One broken well-formedness clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: &'static str,
    /// The node or information set at fault.
    pub subject: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: {}", self.clause, self.subject, self.detail)
    }
}

pub(crate) fn parse_owner(s: &str, players: i64) -> Option<Owner> {
    match s {
        "chance" => Some(Owner::Chance),
        "terminal" => Some(Owner::Terminal),
        _ => {
            let i: u32 = s.strip_prefix('p')?.parse().ok()?;
            (i >= 1 && i as i64 <= players).then_some(Owner::Player(i))
        }
    }
}

/// Checks every structural clause of an extensive form game on an untrusted
/// candidate. Returns the empty list iff the candidate is a valid game.
pub fn validate_raw(raw: &RawGame) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut v = |clause: &'static str, subject: &str, detail: String| {
        out.push(Violation { clause, subject: subject.to_string(), detail })
    };

    if raw.players < 1 {
        v("player-count", "players", format!("need at least one player, got {}", raw.players));
    }

    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, n) in raw.nodes.iter().enumerate() {
        if n.id.is_empty() {
            v("node-id", &n.id, "empty node id".into());
        }
        if index.insert(n.id.as_str(), i).is_some() {
            v("duplicate-node", &n.id, "node id used more than once".into());
        }
    }

    let owners: Vec<Option<Owner>> = raw
        .nodes
        .iter()
        .map(|n| {
            let o = parse_owner(&n.owner, raw.players);
            if o.is_none() {
                v("owner", &n.id, format!("unknown owner {:?}", n.owner));
            }
            o
        })
        .collect();

    // Tree shape.
    let mut parent_count = vec![0usize; raw.nodes.len()];
    for n in &raw.nodes {
        let mut seen = BTreeSet::new();
        for a in &n.actions {
            if !seen.insert(a.name.as_str()) {
                v("duplicate-action", &n.id, format!("action {:?} listed twice", a.name));
            }
            match index.get(a.child.as_str()) {
                Some(&c) => parent_count[c] += 1,
                None => v("unknown-child", &n.id, format!("action {:?} leads to unknown node {:?}", a.name, a.child)),
            }
        }
    }
    let root = index.get(raw.root.as_str()).copied();
    match root {
        None => v("root", &raw.root, "root is not a node".into()),
        Some(r) if parent_count[r] > 0 => v("root", &raw.root, "root has a parent".into()),
        _ => {}
    }
    for (i, n) in raw.nodes.iter().enumerate() {
        if Some(i) != root {
            match parent_count[i] {
                0 => v("parent", &n.id, "non-root node without a parent".into()),
                1 => {}
                k => v("parent", &n.id, format!("node has {k} parents")),
            }
        }
    }
    if let Some(r) = root {
        let mut seen = vec![false; raw.nodes.len()];
        let mut stack = vec![r];
        seen[r] = true;
        while let Some(x) = stack.pop() {
            for a in &raw.nodes[x].actions {
                if let Some(&c) = index.get(a.child.as_str()) {
                    if !seen[c] {
                        seen[c] = true;
                        stack.push(c);
                    }
                }
            }
        }
        for (i, n) in raw.nodes.iter().enumerate() {
            if !seen[i] {
                v("unreachable", &n.id, "node not reachable from the root (or lies on a cycle)".into());
            }
        }
    }

    // Per-node clauses.
    for (n, owner) in raw.nodes.iter().zip(&owners) {
        let Some(owner) = owner else { continue };
        match owner {
            Owner::Terminal => {
                if !n.actions.is_empty() {
                    v("terminal-actions", &n.id, "terminal node has actions".into());
                }
                match n.label.as_deref() {
                    Some("E") | Some("notE") => {}
                    Some(other) => v("label", &n.id, format!("label must be \"E\" or \"notE\", got {other:?}")),
                    None => v("label", &n.id, "terminal node without label".into()),
                }
            }
            _ => {
                if n.actions.is_empty() {
                    v("no-actions", &n.id, "nonterminal node without actions".into());
                }
                if n.label.is_some() {
                    v("label", &n.id, "internal node carries a label".into());
                }
            }
        }
        if *owner == Owner::Chance {
            check_chance(n, &mut v);
        } else if n.probs.is_some() {
            v("probs", &n.id, "probabilities given for a non-chance node".into());
        }
    }

    // Information sets.
    let mut member_of: HashMap<&str, &str> = HashMap::new();
    let mut ids = BTreeSet::new();
    for is in &raw.info_sets {
        if !ids.insert(is.id.as_str()) {
            v("duplicate-info-set", &is.id, "information set id used more than once".into());
        }
        if is.nodes.is_empty() {
            v("empty-info-set", &is.id, "information set without nodes".into());
        }
        let is_owner = parse_owner(&is.owner, raw.players);
        match is_owner {
            None => v("owner", &is.id, format!("unknown information set owner {:?}", is.owner)),
            Some(Owner::Terminal) => v("info-set-owner", &is.id, "terminal nodes have no information sets".into()),
            _ => {}
        }
        let mut first: Option<usize> = None;
        for name in &is.nodes {
            let Some(&i) = index.get(name.as_str()) else {
                v("unknown-node", &is.id, format!("member {name:?} is not a node"));
                continue;
            };
            if let Some(prev) = member_of.insert(name.as_str(), is.id.as_str()) {
                v("info-set-overlap", &is.id, format!("node {name:?} already belongs to {prev:?}"));
            }
            if let (Some(o), Some(io)) = (owners[i], is_owner) {
                if o != io {
                    v(
                        "info-set-owner",
                        &is.id,
                        format!("node {name:?} is owned by {:?}, not {:?}", raw.nodes[i].owner, is.owner),
                    );
                }
            }
            match first {
                None => first = Some(i),
                Some(f) => {
                    let (a, b) = (&raw.nodes[f], &raw.nodes[i]);
                    let sa: BTreeSet<&str> = a.actions.iter().map(|x| x.name.as_str()).collect();
                    let sb: BTreeSet<&str> = b.actions.iter().map(|x| x.name.as_str()).collect();
                    if sa != sb {
                        v("action-set mismatch", &is.id, format!("{:?} and {:?} offer different actions", a.id, b.id));
                    } else if owners[i] == Some(Owner::Chance) && !same_dist(a, b) {
                        v(
                            "chance-distribution mismatch",
                            &is.id,
                            format!("{:?} and {:?} have different distributions", a.id, b.id),
                        );
                    }
                }
            }
        }
    }
    // Nodes left out get a singleton set named after themselves; that name
    // must not already be taken.
    for (n, owner) in raw.nodes.iter().zip(&owners) {
        if matches!(owner, Some(Owner::Chance) | Some(Owner::Player(_)))
            && !member_of.contains_key(n.id.as_str())
            && ids.contains(n.id.as_str())
        {
            v("info-set-name", &n.id, "implicit singleton information set collides with an explicit id".into());
        }
    }
    out
}

fn check_chance(n: &super::json::RawNode, v: &mut impl FnMut(&'static str, &str, String)) {
    let Some(probs) = &n.probs else {
        v("chance-distribution", &n.id, "chance node without probabilities".into());
        return;
    };
    let mut total = Rational::zero();
    for a in &n.actions {
        match probs.get(&a.name).map(|p| p.parse::<Rational>()) {
            None => v("chance-distribution", &n.id, format!("no probability for action {:?}", a.name)),
            Some(Err(e)) => v("chance-distribution", &n.id, e.to_string()),
            Some(Ok(p)) => {
                if !p.is_positive() {
                    v("chance-distribution", &n.id, format!("action {:?} has non-positive probability {p}", a.name));
                }
                total += p;
            }
        }
    }
    for k in probs.keys() {
        if !n.actions.iter().any(|a| &a.name == k) {
            v("chance-distribution", &n.id, format!("probability for unknown action {k:?}"));
        }
    }
    if !total.is_one() {
        v("chance-distribution", &n.id, format!("probabilities sum to {total}, not 1"));
    }
}

fn same_dist(a: &super::json::RawNode, b: &super::json::RawNode) -> bool {
    let parse = |n: &super::json::RawNode| -> Option<Vec<(String, Rational)>> {
        let p = n.probs.as_ref()?;
        p.iter().map(|(k, s)| Some((k.clone(), s.parse().ok()?))).collect()
    };
    parse(a) == parse(b)
}

/// Re-checks a constructed game. A [`GameTree`] can only be built from a
/// candidate that passed [`validate_raw`], so this is always empty unless an
/// internal invariant broke.
pub fn validate_game(g: &GameTree) -> Vec<Violation> {
    validate_raw(&g.to_raw())
}
