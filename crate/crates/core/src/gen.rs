//! Seeded random generators for games, profiles and causal models, used by
//! the property suites and the `gen` command.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::causal::{CausalModel, EventFormula, RawCausalModel, RawEndogenous, RawExogenous, RawValue};
use crate::game::json::{RawAction, RawGame, RawInfoSet, RawNode};
use crate::game::{GameTree, Label, Owner, StrategyProfile};
use crate::rational::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// How player nodes are grouped into information sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grouping {
    /// Only nodes with equal own history (and arity) may share a set, which
    /// guarantees perfect recall.
    OwnHistory,
    /// Any nodes of one player with equal arity may share a set.
    Arbitrary,
}

#[derive(Debug, Clone)]
pub struct GameParams {
    pub max_nodes: usize,
    pub players: u32,
    /// Probability that a nonterminal node belongs to chance.
    pub chance_prob: f64,
    pub max_arity: usize,
    /// Probability that a node which may still expand stays a leaf.
    pub leaf_prob: f64,
    /// Probability that a leaf is labelled `E`.
    pub e_prob: f64,
    /// Probability that a candidate node joins an existing compatible
    /// information set rather than opening a new one.
    pub merge_prob: f64,
    pub grouping: Grouping,
}

impl GameParams {
    /// The small games of the property suites: ≤ 40 nodes, ≤ 4 players.
    pub fn small(players: u32) -> Self {
        GameParams {
            max_nodes: 40,
            players,
            chance_prob: 0.15,
            max_arity: 3,
            leaf_prob: 0.25,
            e_prob: 0.5,
            merge_prob: 0.6,
            grouping: Grouping::OwnHistory,
        }
    }
}

struct Shape {
    owner: Vec<Owner>,
    children: Vec<Vec<usize>>,
    parent: Vec<Option<(usize, usize)>>,
}

fn grow(rng: &mut ChaCha8Rng, p: &GameParams) -> Shape {
    let mut shape = Shape { owner: vec![Owner::Terminal], children: vec![Vec::new()], parent: vec![None] };
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(n) = queue.pop_front() {
        let remaining = p.max_nodes - shape.owner.len();
        let arity = rng.gen_range(2..=p.max_arity.max(2));
        // The root always expands so that games are never trivial.
        if remaining < arity || (n != 0 && rng.gen_bool(p.leaf_prob)) {
            continue;
        }
        shape.owner[n] =
            if rng.gen_bool(p.chance_prob) { Owner::Chance } else { Owner::Player(rng.gen_range(1..=p.players)) };
        for k in 0..arity {
            let c = shape.owner.len();
            shape.owner.push(Owner::Terminal);
            shape.children.push(Vec::new());
            shape.parent.push(Some((n, k)));
            shape.children[n].push(c);
            queue.push_back(c);
        }
    }
    shape
}

const ACTION_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn node_name(n: usize) -> String {
    format!("n{n}")
}

/// Owner, arity and own history: nodes may share an information set only
/// when these agree.
type GroupKey = (u32, usize, Vec<(usize, usize)>);

/// A random valid game.
pub fn random_game(rng: &mut ChaCha8Rng, p: &GameParams) -> GameTree {
    let shape = grow(rng, p);
    let total = shape.owner.len();

    // Information sets, built in waves of nodes whose ancestors are done.
    let mut info: Vec<Option<usize>> = vec![None; total];
    let mut sets: Vec<(u32, Vec<usize>)> = Vec::new();
    let mut own_hist: Vec<Vec<(usize, usize)>> = vec![Vec::new(); total];
    let mut depth_nodes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut depth = vec![0usize; total];
    for n in 0..total {
        if let Some((par, _)) = shape.parent[n] {
            depth[n] = depth[par] + 1;
        }
        depth_nodes.entry(depth[n]).or_default().push(n);
    }
    for (_, wave) in depth_nodes {
        let mut groups: HashMap<GroupKey, Vec<usize>> = HashMap::new();
        let mut order = Vec::new();
        for &n in &wave {
            if let Some((par, k)) = shape.parent[n] {
                let mut h = own_hist[par].clone();
                if let Owner::Player(_) = shape.owner[par] {
                    h.push((info[par].unwrap(), k));
                }
                own_hist[n] = h;
            }
            if let Owner::Player(i) = shape.owner[n] {
                let key_hist = match p.grouping {
                    Grouping::OwnHistory => own_hist[n].iter().filter(|(s, _)| sets[*s].0 == i).copied().collect(),
                    Grouping::Arbitrary => Vec::new(),
                };
                let key = (i, shape.children[n].len(), key_hist);
                if !groups.contains_key(&key) {
                    order.push(key.clone());
                }
                groups.entry(key).or_default().push(n);
            }
        }
        // `own_hist` above records every player's moves; the key keeps only
        // the owner's, so the grouping respects perfect recall.
        for key in order {
            let members = &groups[&key];
            let mut local: Vec<usize> = Vec::new();
            for &n in members {
                let join = !local.is_empty() && rng.gen_bool(p.merge_prob);
                let s = if join {
                    *local.choose(rng).unwrap()
                } else {
                    sets.push((key.0, Vec::new()));
                    local.push(sets.len() - 1);
                    sets.len() - 1
                };
                sets[s].1.push(n);
                info[n] = Some(s);
            }
        }
    }

    let mut nodes = Vec::with_capacity(total);
    for n in 0..total {
        let actions: Vec<RawAction> = shape.children[n]
            .iter()
            .enumerate()
            .map(|(k, &c)| RawAction { name: ACTION_NAMES[k].to_string(), child: node_name(c) })
            .collect();
        let (owner, probs, label) = match shape.owner[n] {
            Owner::Terminal => {
                let l = if rng.gen_bool(p.e_prob) { Label::E } else { Label::NotE };
                ("terminal".to_string(), None, Some(l.as_str().to_string()))
            }
            Owner::Chance => {
                let w: Vec<i64> = (0..actions.len()).map(|_| rng.gen_range(1..=3)).collect();
                let total: i64 = w.iter().sum();
                let probs = actions
                    .iter()
                    .zip(&w)
                    .map(|(a, &x)| (a.name.clone(), Rational::new(x, total).to_string()))
                    .collect();
                ("chance".to_string(), Some(probs), None)
            }
            Owner::Player(i) => (format!("p{i}"), None, None),
        };
        nodes.push(RawNode { id: node_name(n), owner, actions, probs, label });
    }
    let info_sets = sets
        .iter()
        .enumerate()
        .map(|(k, (i, members))| RawInfoSet {
            owner: format!("p{i}"),
            id: format!("I{k}"),
            nodes: members.iter().map(|&n| node_name(n)).collect(),
        })
        .collect();
    let raw = RawGame { players: p.players as i64, nodes, root: node_name(0), info_sets };
    GameTree::from_raw(&raw).expect("generated games are valid")
}

/// A random pure profile.
pub fn random_pure_profile(rng: &mut ChaCha8Rng, g: &GameTree) -> StrategyProfile {
    StrategyProfile::pure(g, |_, is| rng.gen_range(0..is.actions.len()))
}

/// A random profile whose distributions have random (possibly partial)
/// support.
pub fn random_mixed_profile(rng: &mut ChaCha8Rng, g: &GameTree) -> StrategyProfile {
    StrategyProfile::from_fn(g, |_, is| {
        let k = is.actions.len();
        let mut w: Vec<i64> = (0..k).map(|_| if rng.gen_bool(0.7) { rng.gen_range(1..=3) } else { 0 }).collect();
        if w.iter().all(|&x| x == 0) {
            w[rng.gen_range(0..k)] = 1;
        }
        let total: i64 = w.iter().sum();
        w.into_iter().map(|x| Rational::new(x, total)).collect()
    })
    .expect("normalized")
}

#[derive(Debug, Clone)]
pub struct CausalParams {
    pub max_exogenous: usize,
    pub max_endogenous: usize,
    pub max_range: usize,
    pub parent_prob: f64,
}

impl Default for CausalParams {
    fn default() -> Self {
        CausalParams { max_exogenous: 2, max_endogenous: 4, max_range: 3, parent_prob: 0.5 }
    }
}

/// A random recursive model with full lookup tables.
pub fn random_causal_model(rng: &mut ChaCha8Rng, p: &CausalParams) -> CausalModel {
    let range = |rng: &mut ChaCha8Rng| -> Vec<RawValue> {
        (0..rng.gen_range(2..=p.max_range.max(2))).map(|v| RawValue::Text(v.to_string())).collect()
    };
    let exogenous: Vec<RawExogenous> = (0..rng.gen_range(1..=p.max_exogenous.max(1)))
        .map(|k| RawExogenous { name: format!("U{k}"), range: range(rng) })
        .collect();
    let mut names: Vec<(String, usize)> = exogenous.iter().map(|u| (u.name.clone(), u.range.len())).collect();
    let mut endogenous = Vec::new();
    for k in 0..rng.gen_range(1..=p.max_endogenous.max(1)) {
        let name = format!("X{k}");
        let r = range(rng);
        let parents: Vec<(String, usize)> = names.iter().filter(|_| rng.gen_bool(p.parent_prob)).cloned().collect();
        let mut table = BTreeMap::new();
        let mut keys = vec![Vec::<String>::new()];
        for (_, len) in &parents {
            keys = keys
                .into_iter()
                .flat_map(|prefix| {
                    (0..*len).map(move |v| {
                        let mut q = prefix.clone();
                        q.push(v.to_string());
                        q
                    })
                })
                .collect();
        }
        for key in keys {
            table.insert(key.join(","), r[rng.gen_range(0..r.len())].clone());
        }
        names.push((name.clone(), r.len()));
        endogenous.push(RawEndogenous {
            name,
            range: r,
            parents: parents.into_iter().map(|(n, _)| n).collect(),
            table,
        });
    }
    CausalModel::from_raw(RawCausalModel { exogenous, endogenous, order: Vec::new() })
        .expect("generated models are valid")
}

/// A random event formula of bounded depth over the model's variables.
pub fn random_formula(rng: &mut ChaCha8Rng, m: &CausalModel, depth: u32) -> EventFormula {
    if depth == 0 || rng.gen_bool(0.4) {
        let x = rng.gen_range(0..m.endogenous.len());
        return EventFormula::Is(x, rng.gen_range(0..m.endogenous[x].range.len()));
    }
    match rng.gen_range(0..3) {
        0 => random_formula(rng, m, depth - 1).negate(),
        1 => {
            EventFormula::And(Box::new(random_formula(rng, m, depth - 1)), Box::new(random_formula(rng, m, depth - 1)))
        }
        _ => EventFormula::Or(Box::new(random_formula(rng, m, depth - 1)), Box::new(random_formula(rng, m, depth - 1))),
    }
}

/// A large perfect-recall game with heavily merged information sets, for
/// scaling checks.
pub fn layered_game(rng: &mut ChaCha8Rng, target_nodes: usize, players: u32) -> GameTree {
    let p = GameParams {
        max_nodes: target_nodes,
        players,
        chance_prob: 0.1,
        max_arity: 2,
        leaf_prob: 0.02,
        e_prob: 0.5,
        merge_prob: 0.9,
        grouping: Grouping::OwnHistory,
    };
    random_game(rng, &p)
}
