use std::sync::Arc;

use super::json::RawPlay;
use super::{GameTree, InfoSetId, NodeId, Owner, StrategyProfile};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A root-to-leaf path together with the action taken at every step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Play {
    pub nodes: Vec<NodeId>,
    pub actions: Vec<Arc<str>>,
}

impl Play {
    /// The unique play ending in `leaf`.
    pub fn to_leaf(g: &GameTree, leaf: NodeId) -> Result<Play> {
        if !g.is_terminal(leaf) {
            return Err(Error::Play(format!("{:?} is not a terminal node", g.name(leaf))));
        }
        let mut nodes = vec![leaf];
        let mut actions = Vec::new();
        let mut cur = leaf;
        while let Some((p, e)) = g.parent_edge(cur) {
            nodes.push(p);
            actions.push(g.edges(p)[e].action.clone());
            cur = p;
        }
        nodes.reverse();
        actions.reverse();
        Ok(Play { nodes, actions })
    }

    pub fn from_actions<S: AsRef<str>>(g: &GameTree, actions: &[S]) -> Result<Play> {
        let mut cur = g.root();
        for a in actions {
            cur = g
                .child_by_action(cur, a.as_ref())
                .ok_or_else(|| Error::Play(format!("no action {:?} at node {:?}", a.as_ref(), g.name(cur))))?;
        }
        if !g.is_terminal(cur) {
            return Err(Error::Play(format!("action sequence stops at internal node {:?}", g.name(cur))));
        }
        Play::to_leaf(g, cur)
    }

    pub fn from_raw(g: &GameTree, raw: &RawPlay) -> Result<Play> {
        match raw {
            RawPlay::Leaf { leaf } => Play::to_leaf(g, g.node_id(leaf).map_err(|e| Error::Play(e.to_string()))?),
            RawPlay::Actions { actions } => Play::from_actions(g, actions),
        }
    }

    pub fn from_json(g: &GameTree, text: &str) -> Result<Play> {
        Play::from_raw(g, &serde_json::from_str(text)?)
    }

    pub fn to_raw(&self, g: &GameTree) -> RawPlay {
        RawPlay::Leaf { leaf: g.name(self.leaf()).to_string() }
    }

    pub fn leaf(&self) -> NodeId {
        *self.nodes.last().expect("plays are nonempty")
    }

    /// Checks that this is a play of `g` (parent/child links, actions, leaf).
    pub fn check(&self, g: &GameTree) -> Result<()> {
        let bad = || Error::Play("not a play of this game".into());
        if self.nodes.first() != Some(&g.root()) || self.actions.len() + 1 != self.nodes.len() {
            return Err(bad());
        }
        for (k, a) in self.actions.iter().enumerate() {
            if g.child_by_action(self.nodes[k], a) != Some(self.nodes[k + 1]) {
                return Err(bad());
            }
        }
        if !g.is_terminal(self.leaf()) {
            return Err(bad());
        }
        Ok(())
    }

    /// Steps `(node, edge index)` along the play.
    pub fn steps<'a>(&'a self, g: &'a GameTree) -> impl Iterator<Item = (NodeId, usize)> + 'a {
        self.nodes.windows(2).map(move |w| (w[0], g.parent_edge(w[1]).expect("child").1))
    }

    pub fn names(&self, g: &GameTree) -> Vec<String> {
        self.nodes.iter().map(|&n| g.name(n).to_string()).collect()
    }
}

/// All root-to-leaf plays, depth first in action order.
pub fn enumerate_plays(g: &GameTree) -> Vec<Play> {
    g.leaves().map(|l| Play::to_leaf(g, l).expect("leaf")).collect()
}

#[derive(Debug, Clone, Copy)]
pub enum PlayTarget {
    Node(NodeId),
    InfoSet(InfoSetId),
}

pub fn plays_through(g: &GameTree, target: PlayTarget) -> Vec<Play> {
    enumerate_plays(g)
        .into_iter()
        .filter(|p| match target {
            PlayTarget::Node(n) => p.nodes.contains(&n),
            PlayTarget::InfoSet(i) => p.nodes.iter().any(|&n| g.info_of(n) == Some(i)),
        })
        .collect()
}

/// Plays whose every player step has positive probability under `profile`.
pub fn consistent_plays(g: &GameTree, profile: &StrategyProfile) -> Vec<Play> {
    let mut out = Vec::new();
    let mut stack = vec![g.root()];
    // Depth-first in action order: push children in reverse.
    while let Some(n) = stack.pop() {
        if g.is_terminal(n) {
            out.push(Play::to_leaf(g, n).expect("leaf"));
            continue;
        }
        for (k, e) in g.edges(n).iter().enumerate().rev() {
            let ok = match g.owner(n) {
                Owner::Player(_) => profile.edge_prob(g, n, k).is_positive(),
                _ => true,
            };
            if ok {
                stack.push(e.child);
            }
        }
    }
    out
}

/// Product of chance probabilities along `p`.
pub fn chance_probability(g: &GameTree, p: &Play) -> Result<Rational> {
    p.check(g)?;
    let mut r = Rational::one();
    for (n, k) in p.steps(g) {
        if let Some(probs) = g.probs(n) {
            r *= &probs[k];
        }
    }
    Ok(r)
}

/// Probability of `p` under `profile` and chance.
pub fn play_probability(g: &GameTree, profile: &StrategyProfile, p: &Play) -> Result<Rational> {
    p.check(g)?;
    let mut r = Rational::one();
    for (n, k) in p.steps(g) {
        match g.owner(n) {
            Owner::Chance => r *= &g.probs(n).unwrap()[k],
            Owner::Player(_) => r *= &profile.edge_prob(g, n, k),
            Owner::Terminal => unreachable!(),
        }
    }
    Ok(r)
}
