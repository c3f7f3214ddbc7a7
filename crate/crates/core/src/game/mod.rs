//! Finite extensive form games with chance, information sets and binary
//! `E`/`notE` outcomes.

mod builder;
mod history;
pub mod json;
mod play;
mod strategy;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use builder::GameBuilder;
pub use history::{
    check_perfect_recall, coalition_history, history, player_recall_violations, HistoryItem, RecallViolation,
};
pub(crate) use history::{prefix_history_ids, FastMap, HistoryInterner};
pub use play::{
    chance_probability, consistent_plays, enumerate_plays, play_probability, plays_through, Play, PlayTarget,
};
pub use strategy::{BehavioralStrategy, StrategyProfile};
pub use validate::{validate_game, validate_raw, Violation};

use crate::error::{Error, Result};
use crate::rational::Rational;
use json::{RawAction, RawGame, RawInfoSet, RawNode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InfoSetId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Owner {
    Chance,
    /// 1-based player id.
    Player(u32),
    Terminal,
}

impl fmt::Display for Owner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Owner::Chance => f.write_str("chance"),
            Owner::Player(i) => write!(f, "p{i}"),
            Owner::Terminal => f.write_str("terminal"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    E,
    #[serde(rename = "notE")]
    NotE,
}

impl Label {
    pub fn negate(self) -> Label {
        match self {
            Label::E => Label::NotE,
            Label::NotE => Label::E,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::E => "E",
            Label::NotE => "notE",
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        match s {
            "E" => Some(Label::E),
            "notE" | "¬E" | "not-E" => Some(Label::NotE),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub action: Arc<str>,
    pub child: NodeId,
}

#[derive(Debug, Clone)]
pub struct InfoSet {
    pub name: Arc<str>,
    pub owner: Owner,
    /// Members in ascending node order.
    pub nodes: Vec<NodeId>,
    /// Action names; [`GameTree::slot`] maps each member's edges into this
    /// order.
    pub actions: Vec<Arc<str>>,
}

#[derive(Debug)]
struct Topology {
    names: Vec<Arc<str>>,
    index: HashMap<Arc<str>, NodeId>,
    edges: Vec<Vec<Edge>>,
    /// Parent node and the index of the edge leading here.
    parent: Vec<Option<(NodeId, u32)>>,
    depth: Vec<u32>,
    root: NodeId,
    preorder: Vec<NodeId>,
}

/// An immutable, validated game tree. Clones are cheap: the tree shape is
/// shared, which is what lets induced games reuse their source's structure.
#[derive(Debug, Clone)]
pub struct GameTree {
    topo: Arc<Topology>,
    players: u32,
    owners: Arc<Vec<Owner>>,
    probs: Arc<Vec<Option<Vec<Rational>>>>,
    labels: Arc<Vec<Option<Label>>>,
    info_of: Arc<Vec<Option<InfoSetId>>>,
    info_sets: Arc<Vec<InfoSet>>,
    /// For every node and edge: the position of the edge's action in the
    /// node's information-set action list.
    slots: Arc<Vec<Vec<u32>>>,
}

impl GameTree {
    /// Parses and validates the JSON wire format.
    pub fn from_json(text: &str) -> Result<GameTree> {
        let raw: RawGame = serde_json::from_str(text)?;
        GameTree::from_raw(&raw)
    }

    pub fn from_raw(raw: &RawGame) -> Result<GameTree> {
        let violations = validate_raw(raw);
        if !violations.is_empty() {
            return Err(Error::InvalidGame(violations));
        }
        let players = raw.players as u32;
        let names: Vec<Arc<str>> = raw.nodes.iter().map(|n| Arc::from(n.id.as_str())).collect();
        let index: HashMap<Arc<str>, NodeId> = names.iter().enumerate().map(|(i, n)| (n.clone(), NodeId(i))).collect();
        let edges: Vec<Vec<Edge>> = raw
            .nodes
            .iter()
            .map(|n| {
                n.actions
                    .iter()
                    .map(|a| Edge { action: Arc::from(a.name.as_str()), child: index[a.child.as_str()] })
                    .collect()
            })
            .collect();
        let owners: Vec<Owner> =
            raw.nodes.iter().map(|n| validate::parse_owner(&n.owner, raw.players).expect("validated")).collect();
        let probs: Vec<Option<Vec<Rational>>> = raw
            .nodes
            .iter()
            .map(|n| {
                n.probs.as_ref().map(|p| n.actions.iter().map(|a| p[&a.name].parse().expect("validated")).collect())
            })
            .collect();
        let labels: Vec<Option<Label>> = raw.nodes.iter().map(|n| n.label.as_deref().and_then(Label::parse)).collect();
        let root = index[raw.root.as_str()];
        let topo = Topology::new(names, index, edges, root);

        let mut partition: Vec<(Arc<str>, Owner, Vec<NodeId>)> = raw
            .info_sets
            .iter()
            .map(|is| {
                let nodes = is.nodes.iter().map(|n| topo.index[n.as_str()]).collect();
                (Arc::from(is.id.as_str()), validate::parse_owner(&is.owner, raw.players).unwrap(), nodes)
            })
            .collect();
        let mut covered = vec![false; owners.len()];
        for (_, _, nodes) in &partition {
            for n in nodes {
                covered[n.0] = true;
            }
        }
        for (i, o) in owners.iter().enumerate() {
            if *o != Owner::Terminal && !covered[i] {
                partition.push((topo.names[i].clone(), *o, vec![NodeId(i)]));
            }
        }
        let topo = Arc::new(topo);
        Ok(GameTree::assemble(topo, players, Arc::new(owners), Arc::new(probs), Arc::new(labels), partition))
    }

    /// Builds the shared per-partition tables.
    fn assemble(
        topo: Arc<Topology>,
        players: u32,
        owners: Arc<Vec<Owner>>,
        probs: Arc<Vec<Option<Vec<Rational>>>>,
        labels: Arc<Vec<Option<Label>>>,
        partition: Vec<(Arc<str>, Owner, Vec<NodeId>)>,
    ) -> GameTree {
        let n = topo.names.len();
        let mut info_of = vec![None; n];
        let mut info_sets = Vec::with_capacity(partition.len());
        for (k, (name, owner, mut nodes)) in partition.into_iter().enumerate() {
            nodes.sort();
            for x in &nodes {
                info_of[x.0] = Some(InfoSetId(k));
            }
            let actions = topo.edges[nodes[0].0].iter().map(|e| e.action.clone()).collect();
            info_sets.push(InfoSet { name, owner, nodes, actions });
        }
        let slots = (0..n)
            .map(|i| match info_of[i] {
                None => Vec::new(),
                Some(InfoSetId(k)) => {
                    let acts: &Vec<Arc<str>> = &info_sets[k].actions;
                    topo.edges[i]
                        .iter()
                        .map(|e| acts.iter().position(|a| *a == e.action).expect("validated") as u32)
                        .collect()
                }
            })
            .collect();
        GameTree {
            topo,
            players,
            owners,
            probs,
            labels,
            info_of: Arc::new(info_of),
            info_sets: Arc::new(info_sets),
            slots: Arc::new(slots),
        }
    }

    /// Same tree, chance and labels; new ownership, and information sets
    /// that refine the current ones: each new set lists the current set it
    /// was cut from. Action order (and so the slot table) is inherited.
    /// The caller guarantees the partition is well-formed.
    pub(crate) fn refine(
        &self,
        players: u32,
        owners: Vec<Owner>,
        partition: Vec<(Arc<str>, Owner, Vec<NodeId>)>,
        sources: &[InfoSetId],
    ) -> GameTree {
        debug_assert_eq!(partition.len(), sources.len());
        let mut info_of = vec![None; self.topo.names.len()];
        let info_sets = partition
            .into_iter()
            .zip(sources)
            .enumerate()
            .map(|(k, ((name, owner, nodes), src))| {
                for x in &nodes {
                    debug_assert_eq!(self.info_of[x.0], Some(*src));
                    info_of[x.0] = Some(InfoSetId(k));
                }
                debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
                InfoSet { name, owner, nodes, actions: self.info_sets[src.0].actions.clone() }
            })
            .collect();
        GameTree {
            topo: self.topo.clone(),
            players,
            owners: Arc::new(owners),
            probs: self.probs.clone(),
            labels: self.labels.clone(),
            info_of: Arc::new(info_of),
            info_sets: Arc::new(info_sets),
            slots: self.slots.clone(),
        }
    }

    /// Same game with new leaf labels (indexed by node; `None` for internal
    /// nodes).
    pub fn with_labels(&self, labels: Vec<Option<Label>>) -> Result<GameTree> {
        if labels.len() != self.node_count() {
            return Err(Error::Internal("label vector has wrong length".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_some() != self.is_terminal(NodeId(i)) {
                return Err(Error::Internal(format!("label mismatch at node {:?}", self.name(NodeId(i)))));
            }
        }
        let mut g = self.clone();
        g.labels = Arc::new(labels);
        Ok(g)
    }

    /// Relabels every leaf through `f`.
    pub fn relabel(&self, f: impl Fn(NodeId) -> Label) -> GameTree {
        let labels = (0..self.node_count()).map(|i| self.is_terminal(NodeId(i)).then(|| f(NodeId(i)))).collect();
        self.with_labels(labels).expect("shape preserved")
    }

    pub fn players(&self) -> u32 {
        self.players
    }

    pub fn node_count(&self) -> usize {
        self.topo.names.len()
    }

    pub fn root(&self) -> NodeId {
        self.topo.root
    }

    pub fn name(&self, n: NodeId) -> &str {
        &self.topo.names[n.0]
    }

    pub fn node_id(&self, name: &str) -> Result<NodeId> {
        self.topo.index.get(name).copied().ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn owner(&self, n: NodeId) -> Owner {
        self.owners[n.0]
    }

    pub fn is_terminal(&self, n: NodeId) -> bool {
        self.owners[n.0] == Owner::Terminal
    }

    pub fn edges(&self, n: NodeId) -> &[Edge] {
        &self.topo.edges[n.0]
    }

    pub fn child(&self, n: NodeId, edge: usize) -> NodeId {
        self.topo.edges[n.0][edge].child
    }

    pub fn edge_index(&self, n: NodeId, action: &str) -> Option<usize> {
        self.topo.edges[n.0].iter().position(|e| &*e.action == action)
    }

    pub fn child_by_action(&self, n: NodeId, action: &str) -> Option<NodeId> {
        self.edge_index(n, action).map(|i| self.child(n, i))
    }

    pub fn parent(&self, n: NodeId) -> Option<NodeId> {
        self.topo.parent[n.0].map(|(p, _)| p)
    }

    /// Parent and index of the edge that leads to `n`.
    pub fn parent_edge(&self, n: NodeId) -> Option<(NodeId, usize)> {
        self.topo.parent[n.0].map(|(p, e)| (p, e as usize))
    }

    pub fn depth(&self, n: NodeId) -> u32 {
        self.topo.depth[n.0]
    }

    pub fn label(&self, n: NodeId) -> Option<Label> {
        self.labels[n.0]
    }

    /// Chance distribution aligned with [`edges`](Self::edges).
    pub fn probs(&self, n: NodeId) -> Option<&[Rational]> {
        self.probs[n.0].as_deref()
    }

    pub fn info_of(&self, n: NodeId) -> Option<InfoSetId> {
        self.info_of[n.0]
    }

    pub fn info_set(&self, id: InfoSetId) -> &InfoSet {
        &self.info_sets[id.0]
    }

    pub fn info_sets(&self) -> &[InfoSet] {
        &self.info_sets
    }

    pub fn info_set_id(&self, name: &str) -> Result<InfoSetId> {
        self.info_sets
            .iter()
            .position(|is| &*is.name == name)
            .map(InfoSetId)
            .ok_or_else(|| Error::UnknownInfoSet(name.to_string()))
    }

    /// Position of edge `edge` of `n` in the action list of `n`'s
    /// information set.
    pub fn slot(&self, n: NodeId, edge: usize) -> usize {
        self.slots[n.0][edge] as usize
    }

    /// Nodes in depth-first order, children in action order.
    pub fn preorder(&self) -> &[NodeId] {
        &self.topo.preorder
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.node_count()).map(NodeId)
    }

    pub fn leaves(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.topo.preorder.iter().copied().filter(|&n| self.is_terminal(n))
    }

    pub fn player_info_sets(&self, player: u32) -> impl Iterator<Item = InfoSetId> + '_ {
        self.info_sets
            .iter()
            .enumerate()
            .filter(move |(_, is)| is.owner == Owner::Player(player))
            .map(|(k, _)| InfoSetId(k))
    }

    /// Whether `n` lies in the subtree rooted at `ancestor` (inclusive).
    pub fn is_descendant(&self, n: NodeId, ancestor: NodeId) -> bool {
        let mut cur = Some(n);
        while let Some(c) = cur {
            if self.depth(c) < self.depth(ancestor) {
                return false;
            }
            if c == ancestor {
                return true;
            }
            cur = self.parent(c);
        }
        false
    }

    pub fn to_raw(&self) -> RawGame {
        let nodes = self
            .nodes()
            .map(|n| RawNode {
                id: self.name(n).to_string(),
                owner: self.owner(n).to_string(),
                actions: self
                    .edges(n)
                    .iter()
                    .map(|e| RawAction { name: e.action.to_string(), child: self.name(e.child).to_string() })
                    .collect(),
                probs: self
                    .probs(n)
                    .map(|p| self.edges(n).iter().zip(p).map(|(e, q)| (e.action.to_string(), q.to_string())).collect()),
                label: self.label(n).map(|l| l.as_str().to_string()),
            })
            .collect();
        let info_sets = self
            .info_sets
            .iter()
            .map(|is| RawInfoSet {
                owner: is.owner.to_string(),
                id: is.name.to_string(),
                nodes: is.nodes.iter().map(|&n| self.name(n).to_string()).collect(),
            })
            .collect();
        RawGame { players: self.players as i64, nodes, root: self.name(self.root()).to_string(), info_sets }
    }

    /// Canonical JSON: re-parsing and re-serializing is byte-identical.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("serializable")
    }
}

impl Topology {
    fn new(names: Vec<Arc<str>>, index: HashMap<Arc<str>, NodeId>, edges: Vec<Vec<Edge>>, root: NodeId) -> Topology {
        let n = names.len();
        let mut parent = vec![None; n];
        let mut depth = vec![0u32; n];
        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            preorder.push(x);
            for (k, e) in edges[x.0].iter().enumerate().rev() {
                parent[e.child.0] = Some((x, k as u32));
                depth[e.child.0] = depth[x.0] + 1;
                stack.push(e.child);
            }
        }
        Topology { names, index, edges, parent, depth, root, preorder }
    }
}
