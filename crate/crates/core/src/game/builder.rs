use super::json::{RawAction, RawGame, RawInfoSet, RawNode};
use super::{GameTree, Label};
use crate::error::Result;
use crate::rational::Rational;

/// Programmatic construction of games; the result goes through the same
/// validation as parsed JSON. The first node added is the root unless
/// [`root`](Self::root) says otherwise.
#[derive(Debug, Clone)]
pub struct GameBuilder {
    raw: RawGame,
}

impl GameBuilder {
    pub fn new(players: u32) -> Self {
        GameBuilder {
            raw: RawGame { players: players as i64, nodes: Vec::new(), root: String::new(), info_sets: Vec::new() },
        }
    }

    fn push(&mut self, node: RawNode) -> &mut Self {
        if self.raw.nodes.is_empty() && self.raw.root.is_empty() {
            self.raw.root = node.id.clone();
        }
        self.raw.nodes.push(node);
        self
    }

    /// A node of player `p` with `(action, child)` edges.
    pub fn player(&mut self, id: &str, p: u32, actions: &[(&str, &str)]) -> &mut Self {
        self.push(RawNode {
            id: id.into(),
            owner: format!("p{p}"),
            actions: actions.iter().map(|(a, c)| RawAction { name: (*a).into(), child: (*c).into() }).collect(),
            probs: None,
            label: None,
        })
    }

    /// A chance node with `(action, child, probability)` edges.
    pub fn chance(&mut self, id: &str, actions: &[(&str, &str, Rational)]) -> &mut Self {
        self.push(RawNode {
            id: id.into(),
            owner: "chance".into(),
            actions: actions.iter().map(|(a, c, _)| RawAction { name: (*a).into(), child: (*c).into() }).collect(),
            probs: Some(actions.iter().map(|(a, _, p)| ((*a).to_string(), p.to_string())).collect()),
            label: None,
        })
    }

    pub fn leaf(&mut self, id: &str, label: Label) -> &mut Self {
        self.push(RawNode {
            id: id.into(),
            owner: "terminal".into(),
            actions: Vec::new(),
            probs: None,
            label: Some(label.as_str().into()),
        })
    }

    /// An information set of player `p` (use [`chance_info_set`](Self::chance_info_set) for chance).
    pub fn info_set(&mut self, id: &str, p: u32, nodes: &[&str]) -> &mut Self {
        self.raw.info_sets.push(RawInfoSet {
            owner: format!("p{p}"),
            id: id.into(),
            nodes: nodes.iter().map(|s| s.to_string()).collect(),
        });
        self
    }

    pub fn chance_info_set(&mut self, id: &str, nodes: &[&str]) -> &mut Self {
        self.raw.info_sets.push(RawInfoSet {
            owner: "chance".into(),
            id: id.into(),
            nodes: nodes.iter().map(|s| s.to_string()).collect(),
        });
        self
    }

    pub fn root(&mut self, id: &str) -> &mut Self {
        self.raw.root = id.into();
        self
    }

    pub fn raw(&self) -> &RawGame {
        &self.raw
    }

    pub fn build(&self) -> Result<GameTree> {
        GameTree::from_raw(&self.raw)
    }
}
