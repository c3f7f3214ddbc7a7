//! Coalitions and the two-player games they induce.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::game::{
    coalition_history, player_recall_violations, prefix_history_ids, GameTree, HistoryInterner, HistoryItem, InfoSetId,
    NodeId, Owner, StrategyProfile,
};

/// A set of players, stored as a bitmask (so at most 64 players).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Coalition(u64);

pub const MAX_PLAYERS: u32 = 64;

impl Coalition {
    pub fn empty() -> Coalition {
        Coalition(0)
    }

    pub fn full(n: u32) -> Coalition {
        assert!(n <= MAX_PLAYERS);
        Coalition(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    /// Members are 1-based player ids.
    pub fn new(players: u32, members: impl IntoIterator<Item = u32>) -> Result<Coalition> {
        let mut mask = 0u64;
        for i in members {
            if i == 0 || i > players || i > MAX_PLAYERS {
                return Err(Error::InvalidCoalition(format!("player {i} is not in 1..={players}")));
            }
            mask |= 1 << (i - 1);
        }
        Ok(Coalition(mask))
    }

    /// Parses `"1,3"`; the empty string (or `"{}"`) is the empty coalition.
    pub fn parse(s: &str, players: u32) -> Result<Coalition> {
        let t = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if t.is_empty() {
            return Ok(Coalition::empty());
        }
        let ids = t
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::InvalidCoalition(format!("bad member {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Coalition::new(players, ids)
    }

    pub fn from_mask(mask: u64) -> Coalition {
        Coalition(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: u32) -> bool {
        (1..=MAX_PLAYERS).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn members(self) -> impl Iterator<Item = u32> {
        (1..=MAX_PLAYERS).filter(move |&i| self.contains(i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, i: u32) -> Coalition {
        Coalition(self.0 | 1 << (i - 1))
    }

    pub fn without(self, i: u32) -> Coalition {
        Coalition(self.0 & !(1 << (i - 1)))
    }

    pub fn complement(self, n: u32) -> Coalition {
        Coalition(Coalition::full(n).0 & !self.0)
    }

    pub fn is_subset(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    /// Sort key: by size, then lexicographically by member list.
    pub fn order_key(self) -> (usize, Vec<u32>) {
        (self.len(), self.members().collect())
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", m.join(","))
    }
}

/// The two players of an induced game: the coalition is player 1, the
/// complement player 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Coalition,
    Opponent,
}

impl Side {
    pub fn player(self) -> u32 {
        match self {
            Side::Coalition => 1,
            Side::Opponent => 2,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Coalition => Side::Opponent,
            Side::Opponent => Side::Coalition,
        }
    }

    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "C" | "1" | "coalition" => Some(Side::Coalition),
            "Cbar" | "2" | "opponent" => Some(Side::Opponent),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InduceOptions {
    /// Split source information sets by coalition history. Turning this off
    /// only exists to reproduce what goes wrong without it.
    pub refine: bool,
}

impl Default for InduceOptions {
    fn default() -> Self {
        InduceOptions { refine: true }
    }
}

/// `G_C`: same nodes, chance and labels as the source; two players.
#[derive(Debug, Clone)]
pub struct InducedGame {
    pub game: GameTree,
    pub coalition: Coalition,
    pub refined: bool,
    /// Source information set of every induced information set.
    source_info: Vec<InfoSetId>,
}

pub fn induce(g: &GameTree, c: Coalition) -> Result<InducedGame> {
    induce_with(g, c, InduceOptions::default())
}

pub fn induce_with(g: &GameTree, c: Coalition, opts: InduceOptions) -> Result<InducedGame> {
    if !c.is_subset(Coalition::full(g.players().min(MAX_PLAYERS))) {
        return Err(Error::InvalidCoalition(format!("{c} is not a subset of 1..={}", g.players())));
    }
    let side_of = |n: NodeId| match g.owner(n) {
        Owner::Player(i) if c.contains(i) => Some(Side::Coalition),
        Owner::Player(_) => Some(Side::Opponent),
        _ => None,
    };
    let owners: Vec<Owner> = g
        .nodes()
        .map(|n| match (g.owner(n), side_of(n)) {
            (_, Some(s)) => Owner::Player(s.player()),
            (o, None) => o,
        })
        .collect();

    let mut interner = HistoryInterner::new();
    let (ids_c, ids_o) = if opts.refine {
        (
            prefix_history_ids(g, |n| side_of(n) == Some(Side::Coalition), &mut interner),
            prefix_history_ids(g, |n| side_of(n) == Some(Side::Opponent), &mut interner),
        )
    } else {
        (Vec::new(), Vec::new())
    };

    let mut partition: Vec<(Arc<str>, Owner, Vec<NodeId>)> = Vec::new();
    let mut source_info = Vec::new();
    for (k, is) in g.info_sets().iter().enumerate() {
        let src = InfoSetId(k);
        let first = is.nodes[0];
        let Some(side) = side_of(first) else {
            partition.push((is.name.clone(), is.owner, is.nodes.clone()));
            source_info.push(src);
            continue;
        };
        let owner = Owner::Player(side.player());
        if !opts.refine {
            partition.push((is.name.clone(), owner, is.nodes.clone()));
            source_info.push(src);
            continue;
        }
        let ids = if side == Side::Coalition { &ids_c } else { &ids_o };
        let mut groups: BTreeMap<u32, Vec<NodeId>> = BTreeMap::new();
        let mut order = Vec::new();
        for &n in &is.nodes {
            let h = ids[n.0];
            groups.entry(h).or_insert_with(|| {
                order.push(h);
                Vec::new()
            });
            groups.get_mut(&h).unwrap().push(n);
        }
        for h in order {
            let name = format!("{}#{:016x}", is.name, key_hash(g, &is.name, h, &interner));
            partition.push((Arc::from(name), owner, groups.remove(&h).unwrap()));
            source_info.push(src);
        }
    }

    let game = g.refine(2, owners, partition, &source_info);
    if opts.refine {
        for side in [Side::Coalition, Side::Opponent] {
            if let Some(v) = player_recall_violations(&game, side.player()).into_iter().next() {
                return Err(Error::Internal(format!(
                    "induced game for {c} lacks perfect recall for side {side:?}: {}",
                    v.into_error(&game)
                )));
            }
        }
    }
    Ok(InducedGame { game, coalition: c, refined: opts.refine, source_info })
}

/// FNV-1a over the canonical serialization of a refinement key.
fn key_hash(g: &GameTree, source: &str, mut h: u32, interner: &HistoryInterner) -> u64 {
    let mut items = Vec::new();
    while h != 0 {
        let (p, info, slot) = interner.entry(h);
        items.push((info, slot));
        h = p;
    }
    let mut s = String::from(source);
    for (info, slot) in items.iter().rev() {
        let is = g.info_set(*info);
        s.push('|');
        s.push_str(&is.name);
        s.push(':');
        s.push_str(&is.actions[*slot]);
    }
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

impl InducedGame {
    pub fn source_info_set(&self, induced: InfoSetId) -> InfoSetId {
        self.source_info[induced.0]
    }

    /// The refinement key of an induced information set: the coalition
    /// history (w.r.t. its side) that all members share, in source terms.
    pub fn refinement_key(&self, source: &GameTree, induced: InfoSetId) -> Vec<HistoryItem> {
        let is = self.game.info_set(induced);
        let side = match is.owner {
            Owner::Player(1) => self.coalition,
            Owner::Player(_) => self.coalition.complement(source.players()),
            _ => return Vec::new(),
        };
        let mut h = coalition_history(source, is.nodes[0], &side);
        h.pop();
        h
    }

    pub fn side_of(&self, n: NodeId) -> Option<Side> {
        match self.game.owner(n) {
            Owner::Player(1) => Some(Side::Coalition),
            Owner::Player(_) => Some(Side::Opponent),
            _ => None,
        }
    }

    /// Origin map as `(induced info set, source info set)` names.
    pub fn origin(&self, source: &GameTree) -> BTreeMap<String, String> {
        self.game
            .info_sets()
            .iter()
            .enumerate()
            .map(|(k, is)| (is.name.to_string(), source.info_set(self.source_info[k]).name.to_string()))
            .collect()
    }
}

/// Every node in a subtree rooted at a member of `i` (members included),
/// ascending.
pub fn post_states(g: &GameTree, i: InfoSetId) -> Vec<NodeId> {
    let mut out = Vec::new();
    let mut stack: Vec<NodeId> = g.info_set(i).nodes.clone();
    while let Some(n) = stack.pop() {
        out.push(n);
        stack.extend(g.edges(n).iter().map(|e| e.child));
    }
    out.sort();
    out.dedup();
    out
}

/// Lifts a profile of the source game: every refined information set
/// inherits the distribution of the set it refines.
pub fn lift_profile(source: &GameTree, profile: &StrategyProfile, ig: &InducedGame) -> Result<StrategyProfile> {
    StrategyProfile::from_fn(&ig.game, |k, is| {
        let src = ig.source_info_set(k);
        let src_set = source.info_set(src);
        let d = profile.dist(src);
        is.actions
            .iter()
            .map(|a| d[src_set.actions.iter().position(|b| b == a).expect("same action set")].clone())
            .collect()
    })
}
