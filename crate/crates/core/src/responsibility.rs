//! Forward, strategic-backward and causal-backward responsibility of
//! coalitions for an event `E`.
//!
//! Each property asks whether the coalition, playing as one side of the
//! induced two-player game, can force `¬E` in a suitable variant of that
//! game. All three are decided exactly by [`crate::solver`] procedures.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::coalition::{induce_with, lift_profile, Coalition, InduceOptions, InducedGame, MAX_PLAYERS};
use crate::error::{Error, Result};
use crate::game::json::{RawAction, RawGame, RawInfoSet, RawNode};
use crate::game::{GameTree, InfoSetId, Label, NodeId, Owner, Play, StrategyProfile};
use crate::solver::{brute_force_from, pure_strategies, sure_win_unchecked, wins_with, DEFAULT_ORACLE_LIMIT};

/// Default upper bound on the number of players for subset enumeration.
pub const DEFAULT_SUBSET_CAP: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Forward: the coalition could have prevented `E` from the start.
    F,
    /// Strategic backward: along the observed play it had a state from
    /// which it could have prevented `E`.
    S,
    /// Causal backward: given everybody else's strategies and chance's
    /// actual moves, it could have prevented `E`.
    C,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::F => "f",
            Kind::S => "s",
            Kind::C => "c",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        match s.to_ascii_lowercase().as_str() {
            "f" => Ok(Kind::F),
            "s" => Ok(Kind::S),
            "c" => Ok(Kind::C),
            _ => Err(Error::Context(format!("unknown responsibility kind {s:?} (expected f, s or c)"))),
        }
    }
}

/// The observed play (and, for kind C, the strategy profile it was played
/// under).
#[derive(Debug, Clone)]
pub struct BackwardContext {
    pub play: Play,
    pub profile: Option<StrategyProfile>,
}

impl BackwardContext {
    pub fn new(play: Play) -> Self {
        BackwardContext { play, profile: None }
    }

    pub fn with_profile(play: Play, profile: StrategyProfile) -> Self {
        BackwardContext { play, profile: Some(profile) }
    }

    fn check(&self, g: &GameTree, kind: Kind) -> Result<()> {
        self.play.check(g)?;
        if g.label(self.play.leaf()) != Some(Label::E) {
            return Err(Error::Context(format!("play ending in {:?} is not an E-play", g.name(self.play.leaf()))));
        }
        if kind == Kind::C {
            let profile = self.profile()?;
            for (n, k) in self.play.steps(g) {
                if matches!(g.owner(n), Owner::Player(_)) && !profile.edge_prob(g, n, k).is_positive() {
                    return Err(Error::Context(format!(
                        "play takes {:?} at {:?}, which the profile never plays",
                        &*g.edges(n)[k].action,
                        g.name(n)
                    )));
                }
            }
        }
        Ok(())
    }

    fn profile(&self) -> Result<&StrategyProfile> {
        self.profile.as_ref().ok_or_else(|| Error::Context("kind c needs a strategy profile".into()))
    }
}

fn context(kind: Kind, ctx: Option<&BackwardContext>) -> Result<Option<&BackwardContext>> {
    match (kind, ctx) {
        (Kind::F, _) => Ok(None),
        (_, Some(c)) => Ok(Some(c)),
        (_, None) => Err(Error::Context(format!("kind {kind} needs a play"))),
    }
}

/// Decides "side 1 wins from `roots`" in an induced game, falling back to
/// the pure-strategy oracle when refinement was disabled and the side may
/// lack perfect recall.
fn coalition_wins(ig: &InducedGame, roots: &[NodeId], allowed: &dyn Fn(NodeId, usize) -> bool) -> Result<bool> {
    let g = &ig.game;
    if ig.refined || crate::game::player_recall_violations(g, 1).is_empty() {
        Ok(sure_win_unchecked(g, 1, Label::NotE, roots, allowed))
    } else {
        brute_force_from(g, 1, Label::NotE, roots, allowed, DEFAULT_ORACLE_LIMIT)
    }
}

fn all_edges(_: NodeId, _: usize) -> bool {
    true
}

/// Property (F): in `G_C`, the coalition can guarantee a `¬E` leaf.
pub fn property_f(g: &GameTree, c: Coalition) -> Result<bool> {
    property_f_with(g, c, InduceOptions::default())
}

pub fn property_f_with(g: &GameTree, c: Coalition, opts: InduceOptions) -> Result<bool> {
    let ig = induce_with(g, c, opts)?;
    coalition_wins(&ig, &[g.root()], &all_edges)
}

/// Property (S): some coalition-owned state `s` on the play is such that
/// the coalition can guarantee `¬E` from every state of its information set
/// `I_s`. Returns the first such state.
pub fn property_s(g: &GameTree, c: Coalition, ctx: &BackwardContext) -> Result<(bool, Option<NodeId>)> {
    property_s_with(g, c, ctx, InduceOptions::default())
}

pub fn property_s_with(
    g: &GameTree,
    c: Coalition,
    ctx: &BackwardContext,
    opts: InduceOptions,
) -> Result<(bool, Option<NodeId>)> {
    ctx.check(g, Kind::S)?;
    let ig = induce_with(g, c, opts)?;
    property_s_induced(&ig, &ctx.play)
}

fn property_s_induced(ig: &InducedGame, play: &Play) -> Result<(bool, Option<NodeId>)> {
    let g = &ig.game;
    let mut tried = BTreeSet::new();
    for &s in &play.nodes {
        if g.owner(s) != Owner::Player(1) {
            continue;
        }
        let i = g.info_of(s).unwrap();
        if !tried.insert(i) {
            continue;
        }
        if coalition_wins(ig, &g.info_set(i).nodes, &all_edges)? {
            return Ok((true, Some(s)));
        }
    }
    Ok((false, None))
}

/// Edge filter of `Ḡ_C`: opponent edges the profile never plays are gone,
/// and so are chance edges, at chance information sets met on the play,
/// that chance did not take there.
struct BarFilter {
    opponent_ok: Vec<Vec<bool>>,
    chance_kept: HashMap<InfoSetId, BTreeSet<Arc<str>>>,
}

impl BarFilter {
    fn new(ig: &InducedGame, lifted: &StrategyProfile, play: &Play) -> BarFilter {
        let g = &ig.game;
        let opponent_ok = g
            .nodes()
            .map(|n| match g.owner(n) {
                Owner::Player(2) => (0..g.edges(n).len()).map(|k| lifted.edge_prob(g, n, k).is_positive()).collect(),
                _ => Vec::new(),
            })
            .collect();
        let mut chance_kept: HashMap<InfoSetId, BTreeSet<Arc<str>>> = HashMap::new();
        for (n, k) in play.steps(g) {
            if g.owner(n) == Owner::Chance {
                chance_kept.entry(g.info_of(n).unwrap()).or_default().insert(g.edges(n)[k].action.clone());
            }
        }
        BarFilter { opponent_ok, chance_kept }
    }

    fn allowed(&self, g: &GameTree, n: NodeId, k: usize) -> bool {
        match g.owner(n) {
            Owner::Player(2) => self.opponent_ok[n.0][k],
            Owner::Chance => match self.chance_kept.get(&g.info_of(n).unwrap()) {
                Some(kept) => kept.contains(&g.edges(n)[k].action),
                None => true,
            },
            _ => true,
        }
    }
}

/// Property (C): against the profile's strategies for everybody outside the
/// coalition, and with chance fixed to its moves on the play, the coalition
/// can guarantee `¬E`.
pub fn property_c(g: &GameTree, c: Coalition, ctx: &BackwardContext) -> Result<bool> {
    property_c_with(g, c, ctx, InduceOptions::default())
}

pub fn property_c_with(g: &GameTree, c: Coalition, ctx: &BackwardContext, opts: InduceOptions) -> Result<bool> {
    ctx.check(g, Kind::C)?;
    let ig = induce_with(g, c, opts)?;
    let lifted = lift_profile(g, ctx.profile()?, &ig)?;
    let filter = BarFilter::new(&ig, &lifted, &ctx.play);
    let game = &ig.game;
    coalition_wins(&ig, &[game.root()], &|n, k| filter.allowed(game, n, k))
}

/// Decides the property of the given kind for one coalition.
pub fn property(g: &GameTree, c: Coalition, kind: Kind, ctx: Option<&BackwardContext>) -> Result<bool> {
    match (kind, context(kind, ctx)?) {
        (Kind::F, _) => property_f(g, c),
        (Kind::S, Some(ctx)) => Ok(property_s(g, c, ctx)?.0),
        (Kind::C, Some(ctx)) => property_c(g, c, ctx),
        _ => unreachable!(),
    }
}

/// Memoizing evaluator of one property on many coalitions of the same game.
/// The context is validated once, up front.
pub struct PropertyOracle<'a> {
    g: &'a GameTree,
    kind: Kind,
    ctx: Option<&'a BackwardContext>,
    opts: InduceOptions,
    lifted_source: Option<&'a StrategyProfile>,
    cache: RefCell<HashMap<Coalition, bool>>,
}

impl<'a> PropertyOracle<'a> {
    pub fn new(g: &'a GameTree, kind: Kind, ctx: Option<&'a BackwardContext>) -> Result<Self> {
        PropertyOracle::with_options(g, kind, ctx, InduceOptions::default())
    }

    pub fn with_options(
        g: &'a GameTree,
        kind: Kind,
        ctx: Option<&'a BackwardContext>,
        opts: InduceOptions,
    ) -> Result<Self> {
        let ctx = context(kind, ctx)?;
        let mut lifted_source = None;
        if let Some(c) = ctx {
            c.check(g, kind)?;
            if kind == Kind::C {
                lifted_source = Some(c.profile()?);
            }
        }
        Ok(PropertyOracle { g, kind, ctx, opts, lifted_source, cache: RefCell::new(HashMap::new()) })
    }

    pub fn game(&self) -> &GameTree {
        self.g
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn eval(&self, c: Coalition) -> Result<bool> {
        if let Some(&v) = self.cache.borrow().get(&c) {
            return Ok(v);
        }
        let ig = induce_with(self.g, c, self.opts)?;
        let v = match self.kind {
            Kind::F => coalition_wins(&ig, &[self.g.root()], &all_edges)?,
            Kind::S => property_s_induced(&ig, &self.ctx.unwrap().play)?.0,
            Kind::C => {
                let lifted = lift_profile(self.g, self.lifted_source.unwrap(), &ig)?;
                let filter = BarFilter::new(&ig, &lifted, &self.ctx.unwrap().play);
                let game = &ig.game;
                coalition_wins(&ig, &[game.root()], &|n, k| filter.allowed(game, n, k))?
            }
        };
        self.cache.borrow_mut().insert(c, v);
        Ok(v)
    }
}

/// Property plus minimality, checked by removing one player at a time.
pub fn is_responsible(g: &GameTree, c: Coalition, kind: Kind, ctx: Option<&BackwardContext>) -> Result<bool> {
    let oracle = PropertyOracle::new(g, kind, ctx)?;
    is_responsible_with(&oracle, c)
}

pub fn is_responsible_with(oracle: &PropertyOracle<'_>, c: Coalition) -> Result<bool> {
    if !oracle.eval(c)? {
        return Ok(false);
    }
    for i in c.members() {
        if oracle.eval(c.without(i))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Property plus minimality against every proper subset.
pub fn is_minimal_exhaustive(g: &GameTree, c: Coalition, kind: Kind, ctx: Option<&BackwardContext>) -> Result<bool> {
    let oracle = PropertyOracle::new(g, kind, ctx)?;
    is_minimal_exhaustive_with(&oracle, c)
}

pub fn is_minimal_exhaustive_with(oracle: &PropertyOracle<'_>, c: Coalition) -> Result<bool> {
    if !oracle.eval(c)? {
        return Ok(false);
    }
    let full = c.mask();
    let mut sub = full.wrapping_sub(1) & full;
    // Enumerates every proper submask, the empty set last.
    loop {
        if sub != full && oracle.eval(Coalition::from_mask(sub))? {
            return Ok(false);
        }
        if sub == 0 {
            return Ok(true);
        }
        sub = (sub - 1) & full;
    }
}

/// Every coalition of `players` in order of increasing size, then
/// lexicographically by member list.
pub fn coalitions_by_size(players: u32) -> impl Iterator<Item = Coalition> {
    (0..=players).flat_map(move |k| Combinations::new(players, k))
}

struct Combinations {
    n: u32,
    cur: Option<Vec<u32>>,
}

impl Combinations {
    fn new(n: u32, k: u32) -> Self {
        Combinations { n, cur: (k <= n).then(|| (1..=k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Coalition;

    fn next(&mut self) -> Option<Coalition> {
        let cur = self.cur.as_mut()?;
        let out = Coalition::from_mask(cur.iter().fold(0u64, |m, &i| m | 1 << (i - 1)));
        let k = cur.len();
        let mut j = k;
        loop {
            if j == 0 {
                self.cur = None;
                break;
            }
            j -= 1;
            if cur[j] < self.n - (k - 1 - j) as u32 {
                cur[j] += 1;
                for t in j + 1..k {
                    cur[t] = cur[t - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

fn check_cap(g: &GameTree, cap: u32) -> Result<()> {
    if g.players() > cap.min(MAX_PLAYERS) {
        return Err(Error::LimitExceeded(format!(
            "{} players exceed the subset-enumeration cap of {cap}",
            g.players()
        )));
    }
    Ok(())
}

/// All inclusion-minimal coalitions with the property, by increasing size
/// and then lexicographically. Supersets of coalitions already found are
/// skipped; every other candidate is evaluated, so the result is exact
/// whether or not the property is monotone.
pub fn minimal_responsible_coalitions(
    g: &GameTree,
    kind: Kind,
    ctx: Option<&BackwardContext>,
    cap: u32,
) -> Result<Vec<Coalition>> {
    check_cap(g, cap)?;
    let oracle = PropertyOracle::new(g, kind, ctx)?;
    minimal_with(&oracle)
}

pub fn minimal_with(oracle: &PropertyOracle<'_>) -> Result<Vec<Coalition>> {
    let mut found: Vec<Coalition> = Vec::new();
    for c in coalitions_by_size(oracle.game().players()) {
        if found.iter().any(|m| m.is_subset(c)) {
            continue;
        }
        if oracle.eval(c)? {
            found.push(c);
        }
    }
    Ok(found)
}

fn fresh_name(g: &GameTree, base: &str) -> String {
    let mut name = base.to_string();
    while g.node_id(&name).is_ok() || g.info_set_id(&name).is_ok() {
        name.push('\'');
    }
    name
}

fn owner_str(o: Owner) -> String {
    o.to_string()
}

/// Serializes the part of `g` reachable through `keep`, starting at
/// `roots`; chance distributions on kept edges are renormalized.
fn restricted_raw(
    g: &GameTree,
    roots: &[NodeId],
    keep: &dyn Fn(NodeId, usize) -> bool,
) -> (Vec<RawNode>, Vec<RawInfoSet>) {
    let mut nodes = Vec::new();
    let mut present = vec![false; g.node_count()];
    let mut stack: Vec<NodeId> = roots.iter().rev().copied().collect();
    while let Some(n) = stack.pop() {
        present[n.0] = true;
        let kept: Vec<usize> = (0..g.edges(n).len()).filter(|&k| keep(n, k)).collect();
        let probs = g.probs(n).map(|p| {
            let total: crate::rational::Rational = kept.iter().map(|&k| &p[k]).sum();
            kept.iter().map(|&k| (g.edges(n)[k].action.to_string(), (&p[k] / &total).to_string())).collect()
        });
        nodes.push(RawNode {
            id: g.name(n).to_string(),
            owner: owner_str(g.owner(n)),
            actions: kept
                .iter()
                .map(|&k| RawAction {
                    name: g.edges(n)[k].action.to_string(),
                    child: g.name(g.child(n, k)).to_string(),
                })
                .collect(),
            probs,
            label: g.label(n).map(|l| l.as_str().to_string()),
        });
        for &k in kept.iter().rev() {
            stack.push(g.child(n, k));
        }
    }
    let info_sets = g
        .info_sets()
        .iter()
        .filter_map(|is| {
            let members: Vec<String> =
                is.nodes.iter().filter(|n| present[n.0]).map(|&n| g.name(n).to_string()).collect();
            (!members.is_empty()).then(|| RawInfoSet {
                owner: owner_str(is.owner),
                id: is.name.to_string(),
                nodes: members,
            })
        })
        .collect();
    (nodes, info_sets)
}

/// `Ĝ_C^s`: a fresh opponent-owned root picks a member of `I_s` (the
/// induced information set of `s`); below it, the subtrees of `G_C` at those
/// members. Information sets are restricted to surviving nodes.
pub fn build_hat_game(ig: &InducedGame, s: NodeId) -> Result<GameTree> {
    let g = &ig.game;
    if s.0 >= g.node_count() {
        return Err(Error::UnknownNode(format!("#{}", s.0)));
    }
    let members: Vec<NodeId> = match g.info_of(s) {
        Some(i) => g.info_set(i).nodes.clone(),
        None => vec![s],
    };
    let root = fresh_name(g, "hat");
    let (mut nodes, mut info_sets) = restricted_raw(g, &members, &all_edges);
    nodes.insert(
        0,
        RawNode {
            id: root.clone(),
            owner: "p2".into(),
            actions: members
                .iter()
                .map(|&m| RawAction { name: g.name(m).to_string(), child: g.name(m).to_string() })
                .collect(),
            probs: None,
            label: None,
        },
    );
    info_sets.push(RawInfoSet { owner: "p2".into(), id: root.clone(), nodes: vec![root.clone()] });
    GameTree::from_raw(&RawGame { players: 2, nodes, root, info_sets })
}

/// `Ḡ_C`: `G_C` without the opponent edges `profile` never plays and the
/// chance edges the play rules out; surviving chance distributions are
/// renormalized and unreachable nodes dropped.
pub fn build_bar_game(ig: &InducedGame, profile: &StrategyProfile, play: &Play) -> Result<GameTree> {
    let g = &ig.game;
    play.check(g)?;
    for (n, k) in play.steps(g) {
        if matches!(g.owner(n), Owner::Player(_)) && !profile.edge_prob(g, n, k).is_positive() {
            return Err(Error::Context(format!("play is not consistent with the profile at {:?}", g.name(n))));
        }
    }
    let filter = BarFilter::new(ig, profile, play);
    let (nodes, info_sets) = restricted_raw(g, &[g.root()], &|n, k| filter.allowed(g, n, k));
    GameTree::from_raw(&RawGame { players: 2, nodes, root: g.name(g.root()).to_string(), info_sets })
}

/// Oracle for (F): enumerate the coalition's pure strategies in `G_C`.
pub fn brute_force_property_f(g: &GameTree, c: Coalition, opts: InduceOptions, limit: u128) -> Result<bool> {
    let ig = induce_with(g, c, opts)?;
    let game = &ig.game;
    brute_force_from(game, 1, Label::NotE, &[game.root()], &all_edges, limit)
}

/// Oracle for (S), checked literally: some coalition state `s` on the play
/// and pure coalition strategy that agrees with the play before `s` such
/// that every consistent play through `I_s` ends in `¬E`.
pub fn brute_force_property_s(
    g: &GameTree,
    c: Coalition,
    ctx: &BackwardContext,
    opts: InduceOptions,
    limit: u128,
) -> Result<(bool, Option<NodeId>)> {
    ctx.check(g, Kind::S)?;
    let ig = induce_with(g, c, opts)?;
    let game = &ig.game;
    let strategies: Vec<Vec<usize>> = pure_strategies(game, 1, limit)?.collect();
    for (pos, &s) in ctx.play.nodes.iter().enumerate() {
        if game.owner(s) != Owner::Player(1) {
            continue;
        }
        let target = game.info_of(s).unwrap();
        for choice in &strategies {
            let agrees = ctx.play.nodes[..pos].iter().enumerate().all(|(j, &n)| {
                game.owner(n) != Owner::Player(1) || {
                    let k = game.edge_index(n, &ctx.play.actions[j]).unwrap();
                    choice[game.info_of(n).unwrap().0] == game.slot(n, k)
                }
            });
            if agrees && plays_through_win(game, target, choice) {
                return Ok((true, Some(s)));
            }
        }
    }
    Ok((false, None))
}

/// Every play consistent with the pure side-1 strategy `choice` that visits
/// `target` ends in `¬E`.
fn plays_through_win(g: &GameTree, target: InfoSetId, choice: &[usize]) -> bool {
    let mut stack = vec![(g.root(), false)];
    while let Some((n, seen)) = stack.pop() {
        let seen = seen || g.info_of(n) == Some(target);
        match g.owner(n) {
            Owner::Terminal => {
                if seen && g.label(n) != Some(Label::NotE) {
                    return false;
                }
            }
            Owner::Player(1) => {
                let slot = choice[g.info_of(n).unwrap().0];
                let k = (0..g.edges(n).len()).find(|&k| g.slot(n, k) == slot).unwrap();
                stack.push((g.child(n, k), seen));
            }
            _ => stack.extend(g.edges(n).iter().map(|e| (e.child, seen))),
        }
    }
    true
}

/// Oracle for (C): enumerate pure coalition strategies against the
/// profile's opponent support and the play's chance moves.
pub fn brute_force_property_c(
    g: &GameTree,
    c: Coalition,
    ctx: &BackwardContext,
    opts: InduceOptions,
    limit: u128,
) -> Result<bool> {
    ctx.check(g, Kind::C)?;
    let ig = induce_with(g, c, opts)?;
    let lifted = lift_profile(g, ctx.profile()?, &ig)?;
    let game = &ig.game;
    let chance_on_play: Vec<(InfoSetId, Arc<str>)> = ctx
        .play
        .steps(game)
        .filter(|&(n, _)| game.owner(n) == Owner::Chance)
        .map(|(n, k)| (game.info_of(n).unwrap(), game.edges(n)[k].action.clone()))
        .collect();
    let allowed = |n: NodeId, k: usize| match game.owner(n) {
        Owner::Player(2) => lifted.edge_prob(game, n, k).is_positive(),
        Owner::Chance => {
            let i = game.info_of(n).unwrap();
            let on: Vec<&Arc<str>> = chance_on_play.iter().filter(|(j, _)| *j == i).map(|(_, a)| a).collect();
            on.is_empty() || on.iter().any(|a| **a == game.edges(n)[k].action)
        }
        _ => true,
    };
    Ok(pure_strategies(game, 1, limit)?
        .any(|choice| wins_with(game, 1, Label::NotE, &[game.root()], &allowed, &|i| choice[i.0])))
}
