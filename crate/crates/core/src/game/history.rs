use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};
use std::sync::Arc;

use super::{GameTree, InfoSetId, NodeId, Owner};
use crate::coalition::Coalition;

/// One entry of `I_0 a_0 I_1 a_1 … I_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HistoryItem {
    Info(InfoSetId),
    Action(Arc<str>),
}

impl HistoryItem {
    pub fn display(&self, g: &GameTree) -> String {
        match self {
            HistoryItem::Info(i) => format!("I:{}", g.info_set(*i).name),
            HistoryItem::Action(a) => a.to_string(),
        }
    }
}

/// Information sets visited and actions taken from the root to `s`, ending
/// with `s`'s own information set when `s` is not terminal.
pub fn history(g: &GameTree, s: NodeId) -> Vec<HistoryItem> {
    filtered_history(g, s, |_| true)
}

/// The subsequence of [`history`] controlled by members of `c`. Chance
/// entries never survive.
pub fn coalition_history(g: &GameTree, s: NodeId, c: &Coalition) -> Vec<HistoryItem> {
    filtered_history(g, s, |o| matches!(o, Owner::Player(i) if c.contains(i)))
}

fn filtered_history(g: &GameTree, s: NodeId, keep: impl Fn(Owner) -> bool) -> Vec<HistoryItem> {
    let mut path = Vec::new();
    let mut cur = s;
    while let Some((p, e)) = g.parent_edge(cur) {
        path.push((p, e));
        cur = p;
    }
    let mut out = Vec::new();
    for &(p, e) in path.iter().rev() {
        if keep(g.owner(p)) {
            out.push(HistoryItem::Info(g.info_of(p).expect("internal node")));
            out.push(HistoryItem::Action(g.edges(p)[e].action.clone()));
        }
    }
    if let Some(i) = g.info_of(s) {
        if keep(g.owner(s)) {
            out.push(HistoryItem::Info(i));
        }
    }
    out
}

/// Multiply-rotate hasher for the interner's small integer keys; the
/// default SipHash dominates the cost of inducing large games.
#[derive(Debug, Default)]
pub(crate) struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }

    fn write_u32(&mut self, v: u32) {
        self.write_u64(v as u64);
    }

    fn write_usize(&mut self, v: usize) {
        self.write_u64(v as u64);
    }

    fn write_u64(&mut self, v: u64) {
        self.0 = (self.0.rotate_left(5) ^ v).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
    }
}

pub(crate) type FastMap<K, V> = HashMap<K, V, BuildHasherDefault<KeyHasher>>;

/// Hash-consed histories. Id 0 is the empty history; every other id extends
/// a parent id by one `(information set, action slot)` pair.
#[derive(Debug, Default)]
pub(crate) struct HistoryInterner {
    map: FastMap<(u32, u32, u32), u32>,
    entries: Vec<(u32, u32, u32)>,
}

impl HistoryInterner {
    pub fn new() -> Self {
        HistoryInterner { map: HashMap::default(), entries: vec![(0, 0, 0)] }
    }

    pub fn extend(&mut self, prefix: u32, info: InfoSetId, slot: usize) -> u32 {
        let key = (prefix, info.0 as u32, slot as u32);
        if let Some(&id) = self.map.get(&key) {
            return id;
        }
        let id = self.entries.len() as u32;
        self.entries.push(key);
        self.map.insert(key, id);
        id
    }

    /// `(parent, info set, slot)` of a non-empty history id.
    pub fn entry(&self, id: u32) -> (u32, InfoSetId, usize) {
        let (p, i, s) = self.entries[id as usize];
        (p, InfoSetId(i as usize), s as usize)
    }
}

/// For every node, the interned coalition history of the path strictly
/// above it, counting only parents for which `member` holds. Sound for any
/// partition because ids are keyed by `g`'s own information sets.
pub(crate) fn prefix_history_ids(
    g: &GameTree,
    member: impl Fn(NodeId) -> bool,
    interner: &mut HistoryInterner,
) -> Vec<u32> {
    let mut ids = vec![0u32; g.node_count()];
    for &n in g.preorder() {
        if g.is_terminal(n) {
            continue;
        }
        let own = ids[n.0];
        let m = member(n);
        let info = g.info_of(n);
        for (k, e) in g.edges(n).iter().enumerate() {
            ids[e.child.0] = if m { interner.extend(own, info.unwrap(), g.slot(n, k)) } else { own };
        }
    }
    ids
}

/// A perfect-recall failure: two members of one information set with
/// different own histories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecallViolation {
    pub player: u32,
    pub info_set: InfoSetId,
    pub witness: (NodeId, NodeId),
}

/// First perfect-recall witness per information set of `player`.
pub fn player_recall_violations(g: &GameTree, player: u32) -> Vec<RecallViolation> {
    let mut interner = HistoryInterner::new();
    let ids = prefix_history_ids(g, |n| g.owner(n) == Owner::Player(player), &mut interner);
    let mut out = Vec::new();
    for i in g.player_info_sets(player) {
        let nodes = &g.info_set(i).nodes;
        let first = nodes[0];
        if let Some(&other) = nodes.iter().find(|n| ids[n.0] != ids[first.0]) {
            out.push(RecallViolation { player, info_set: i, witness: (first, other) });
        }
    }
    out
}

/// All perfect-recall violations of `g`, players in ascending order. Empty
/// iff the game has perfect recall.
pub fn check_perfect_recall(g: &GameTree) -> Vec<RecallViolation> {
    (1..=g.players()).flat_map(|p| player_recall_violations(g, p)).collect()
}

impl RecallViolation {
    pub fn into_error(self, g: &GameTree) -> crate::error::Error {
        crate::error::Error::ImperfectRecall {
            player: self.player,
            info_set: g.info_set(self.info_set).name.to_string(),
            first: g.name(self.witness.0).to_string(),
            second: g.name(self.witness.1).to_string(),
        }
    }
}
