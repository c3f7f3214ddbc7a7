use super::{CausalModel, Context, EventFormula};
use crate::error::{Error, Result};
use crate::game::json::{RawAction, RawGame, RawNode};
use crate::game::{GameTree, Label, NodeId, Play, StrategyProfile};

/// The layered game of a causal model: player `k` is the `k`-th endogenous
/// variable in causal order and picks its value after seeing all earlier
/// ones. Every information set is a singleton.
#[derive(Debug, Clone)]
pub struct CompiledGame {
    /// Leaves carry placeholder `¬E` labels until [`label_event`] is applied.
    pub game: GameTree,
    /// The value prefix `(x_1, …, x_k)` each node stands for.
    pub tuples: Vec<Vec<usize>>,
}

fn tuple_name(m: &CausalModel, t: &[usize]) -> String {
    let parts: Vec<&str> = t.iter().enumerate().map(|(k, &v)| m.endogenous[k].range[v].as_str()).collect();
    format!("({})", parts.join(","))
}

pub fn compile_to_game(m: &CausalModel, node_cap: usize) -> Result<CompiledGame> {
    let n = m.endogenous.len();
    if n == 0 {
        return Err(Error::Causal("a model without endogenous variables has no players".into()));
    }
    let mut count: usize = 0;
    let mut layer: usize = 1;
    for k in 0..=n {
        count = count.saturating_add(layer);
        if count > node_cap {
            return Err(Error::LimitExceeded(format!("compiled game would exceed {node_cap} nodes")));
        }
        if k < n {
            layer = layer.saturating_mul(m.endogenous[k].range.len());
        }
    }

    let mut nodes = Vec::with_capacity(count);
    let mut tuples = Vec::with_capacity(count);
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(t) = stack.pop() {
        let name = tuple_name(m, &t);
        let k = t.len();
        if k == n {
            nodes.push(RawNode {
                id: name,
                owner: "terminal".into(),
                actions: Vec::new(),
                probs: None,
                label: Some(Label::NotE.as_str().into()),
            });
        } else {
            let var = &m.endogenous[k];
            let mut actions = Vec::new();
            for v in 0..var.range.len() {
                let mut child = t.clone();
                child.push(v);
                actions.push(RawAction { name: var.range[v].clone(), child: tuple_name(m, &child) });
            }
            for v in (0..var.range.len()).rev() {
                let mut child = t.clone();
                child.push(v);
                stack.push(child);
            }
            nodes.push(RawNode { id: name, owner: format!("p{}", k + 1), actions, probs: None, label: None });
        }
        tuples.push(t);
    }
    let root = nodes[0].id.clone();
    let game = GameTree::from_raw(&RawGame { players: n as i64, nodes, root, info_sets: Vec::new() })?;
    // Node ids follow insertion order, which is the order of `tuples`.
    debug_assert!(game.nodes().all(|id| game.name(id) == tuple_name(m, &tuples[id.0])));
    Ok(CompiledGame { game, tuples })
}

/// Labels a leaf `E` iff its value tuple satisfies `phi`.
pub fn label_event(cg: &CompiledGame, phi: &EventFormula) -> GameTree {
    cg.game.relabel(|n| if phi.eval(&cg.tuples[n.0]) { Label::E } else { Label::NotE })
}

/// The pure profile in which every variable follows its structural
/// equation under `ctx`, and the unique play it produces.
pub fn induced_profile_and_play(m: &CausalModel, cg: &CompiledGame, ctx: &Context) -> Result<(StrategyProfile, Play)> {
    m.check_context(ctx)?;
    let g = &cg.game;
    let profile = StrategyProfile::pure(g, |_, is| {
        let t = &cg.tuples[is.nodes[0].0];
        m.apply(t.len(), ctx, t)
    });
    let mut n: NodeId = g.root();
    let mut actions = Vec::new();
    while !g.is_terminal(n) {
        let t = &cg.tuples[n.0];
        let v = m.apply(t.len(), ctx, t);
        actions.push(g.edges(n)[v].action.clone());
        n = g.child(n, v);
    }
    Ok((profile, Play::from_actions(g, &actions)?))
}
