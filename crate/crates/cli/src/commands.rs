use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use respgames_core::causal::{
    actual_cause, but_for_direct, but_for_via_game, compile_to_game, induced_profile_and_play, label_event,
    CausalModel, CauseVerdict, EventFormula,
};
use respgames_core::cegs::{unroll, validate_cegs, Cegs, RawCegs};
use respgames_core::game::json::RawGame;
use respgames_core::game::{check_perfect_recall, enumerate_plays, validate_raw};
use respgames_core::gen::{random_causal_model, random_game, rng, CausalParams, GameParams};
use respgames_core::responsibility::{
    brute_force_property_c, brute_force_property_f, brute_force_property_s, is_minimal_exhaustive_with,
    is_responsible_with, minimal_with, property_s_with, PropertyOracle,
};
use respgames_core::shapley::{induced_coop_game_with, shapley, shapley_permutation, PERMUTATION_MAX_PLAYERS};
use respgames_core::solver::game_value;
use respgames_core::{
    induce_with, BackwardContext, Coalition, GameTree, InduceOptions, Kind, Label, Play, Rational, StrategyProfile,
};
use serde_json::{json, Value};

use crate::corpus::{self, Example, Expect};
use crate::report::{coalitions, rationals, CliError, Outcome};
use crate::{
    CausalCommand, CauseArgs, CegsCommand, Cli, Command, ContextArgs, ExamplesCommand, GenWhat, GlobalConfig, LabelArg,
    SideArg,
};

type Res<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> Res<Outcome> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Recall { file } => recall(file),
        Command::Induce { game, coalition, no_refine } => induce(game, coalition, *no_refine),
        Command::Value { game, side, win, coalition, plan } => value(game, *side, *win, coalition.as_deref(), *plan),
        Command::Decide { game, kind, coalition, ctx, all_e_plays, oracle } => {
            decide(cfg, game, (*kind).into(), coalition, ctx, *all_e_plays, *oracle)
        }
        Command::Minimal { game, kind, ctx } => minimal(cfg, game, (*kind).into(), ctx),
        Command::Shapley { game, kind, ctx, audit } => {
            let g = load_game(game)?;
            let kind: Kind = (*kind).into();
            let bctx = load_context(&g, kind, ctx)?;
            let report = analyze(cfg, &g, kind, bctx.as_ref(), options(ctx.no_refine), *audit)?;
            Ok(Outcome::ok(report))
        }
        Command::Causal(c) => causal(cfg, c),
        Command::Cegs(c) => cegs(cfg, c),
        Command::Examples(c) => examples(cfg, c),
        Command::Gen { seed, what, players, nodes } => generate(*seed, *what, *players, *nodes),
    }
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Attaches the file name to errors raised while parsing its content.
fn in_file<T>(path: &Path, r: respgames_core::Result<T>) -> Res<T> {
    r.map_err(|e| match CliError::from(e) {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        internal => internal,
    })
}

fn load_game(path: &Path) -> Res<GameTree> {
    in_file(path, GameTree::from_json(&read(path)?))
}

fn options(no_refine: bool) -> InduceOptions {
    InduceOptions { refine: !no_refine }
}

fn load_context(g: &GameTree, kind: Kind, args: &ContextArgs) -> Res<Option<BackwardContext>> {
    if kind == Kind::F {
        return Ok(None);
    }
    let Some(play_path) = &args.play else {
        return Err(CliError::Input(format!("kind {kind} needs --play")));
    };
    let play = in_file(play_path, Play::from_json(g, &read(play_path)?))?;
    match (kind, &args.profile) {
        (Kind::C, None) => Err(CliError::Input("kind c needs --profile".into())),
        (Kind::C, Some(p)) => {
            let profile = in_file(p, StrategyProfile::from_json(g, &read(p)?))?;
            Ok(Some(BackwardContext::with_profile(play, profile)))
        }
        _ => Ok(Some(BackwardContext::new(play))),
    }
}

fn check_subset_cap(cfg: &GlobalConfig, g: &GameTree) -> Res<()> {
    if g.players() > cfg.subset_cap {
        return Err(CliError::Input(format!("{} players exceed the subset cap of {}", g.players(), cfg.subset_cap)));
    }
    Ok(())
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e4).round() / 10.0
}

fn validate(file: &Path) -> Res<Outcome> {
    let text = read(file)?;
    let raw: RawGame = match serde_json::from_str(&text) {
        Ok(r) => r,
        Err(e) => {
            return Ok(Outcome::invalid(json!({
                "valid": false,
                "violations": [{ "clause": "json", "subject": file.display().to_string(), "detail": e.to_string() }],
            })))
        }
    };
    let violations = validate_raw(&raw);
    if !violations.is_empty() {
        return Ok(Outcome::invalid(json!({ "valid": false, "violations": violations })));
    }
    let g = in_file(file, GameTree::from_raw(&raw))?;
    Ok(Outcome::ok(json!({
        "valid": true,
        "violations": [],
        "players": g.players(),
        "nodes": g.node_count(),
        "perfect_recall": check_perfect_recall(&g).is_empty(),
    })))
}

fn recall(file: &Path) -> Res<Outcome> {
    let g = load_game(file)?;
    let violations: Vec<Value> = check_perfect_recall(&g)
        .into_iter()
        .map(|v| {
            json!({
                "player": v.player,
                "info_set": g.info_set(v.info_set).name.to_string(),
                "first": g.name(v.witness.0),
                "second": g.name(v.witness.1),
            })
        })
        .collect();
    Ok(Outcome::ok(json!({ "perfect_recall": violations.is_empty(), "violations": violations })))
}

fn induce(game: &Path, coalition: &str, no_refine: bool) -> Res<Outcome> {
    let g = load_game(game)?;
    let c = Coalition::parse(coalition, g.players())?;
    let ig = induce_with(&g, c, options(no_refine))?;
    let mut report = serde_json::to_value(ig.game.to_raw()).map_err(|e| CliError::Internal(e.to_string()))?;
    report["origin"] = json!(ig.origin(&g));
    report["coalition"] = json!(c.to_string());
    report["refined"] = json!(ig.refined);
    Ok(Outcome::ok(report))
}

fn value(game: &Path, side: SideArg, win: LabelArg, coalition: Option<&str>, plan: bool) -> Res<Outcome> {
    let mut g = load_game(game)?;
    if let Some(c) = coalition {
        let c = Coalition::parse(c, g.players())?;
        g = respgames_core::induce(&g, c)?.game;
    }
    if g.players() != 2 {
        return Err(CliError::Input(format!(
            "value needs a two-player game, this one has {} players; pass --coalition to induce one",
            g.players()
        )));
    }
    let player = match side {
        SideArg::Coalition => 1,
        SideArg::Opponent => 2,
    };
    let label = match win {
        LabelArg::E => Label::E,
        LabelArg::NotE => Label::NotE,
    };
    let gv = game_value(&g, player, label)?;
    let mut report = json!({ "value": gv.value.to_string(), "player": player, "win": label.as_str() });
    if plan {
        let side = &gv.form.maximizer;
        let weights: BTreeMap<String, String> = side
            .seqs
            .iter()
            .zip(&gv.plan.weights)
            .map(|(s, w)| {
                let name = match s.last {
                    None => "()".to_string(),
                    Some((i, k)) => format!("{}:{}", g.info_set(i).name, g.info_set(i).actions[k]),
                };
                (name, w.to_string())
            })
            .collect();
        let strategy: BTreeMap<String, BTreeMap<String, String>> = gv
            .behavioral(&g)
            .dists
            .iter()
            .map(|(i, d)| {
                let is = g.info_set(*i);
                (is.name.to_string(), is.actions.iter().zip(d).map(|(a, p)| (a.to_string(), p.to_string())).collect())
            })
            .collect();
        report["plan"] = json!(weights);
        report["strategy"] = json!(strategy);
    }
    Ok(Outcome::ok(report))
}

fn decide(
    cfg: &GlobalConfig,
    game: &Path,
    kind: Kind,
    coalition: &str,
    args: &ContextArgs,
    all_e_plays: bool,
    oracle: bool,
) -> Res<Outcome> {
    let t = Instant::now();
    let g = load_game(game)?;
    let c = Coalition::parse(coalition, g.players())?;
    let opts = options(args.no_refine);
    if all_e_plays {
        if kind != Kind::S {
            return Err(CliError::Input("--all-e-plays only applies to kind s".into()));
        }
        let mut rows = Vec::new();
        let mut all = true;
        for play in enumerate_plays(&g).into_iter().filter(|p| g.label(p.leaf()) == Some(Label::E)) {
            let leaf = g.name(play.leaf()).to_string();
            let (holds, witness) = property_s_with(&g, c, &BackwardContext::new(play), opts)?;
            all &= holds;
            rows.push(json!({ "leaf": leaf, "property": holds, "witness": witness.map(|s| g.name(s).to_string()) }));
        }
        return Ok(Outcome::ok(json!({
            "kind": kind.as_str(),
            "coalition": c.to_string(),
            "refined": opts.refine,
            "all": all,
            "plays": rows,
            "elapsed_ms": ms(t),
        })));
    }
    let ctx = load_context(&g, kind, args)?;
    let po = PropertyOracle::with_options(&g, kind, ctx.as_ref(), opts)?;
    let holds = po.eval(c)?;
    let responsible = is_responsible_with(&po, c)?;
    let exhaustive = if c.len() as u32 <= cfg.subset_cap { Some(is_minimal_exhaustive_with(&po, c)?) } else { None };
    let witness = match (kind, &ctx) {
        (Kind::S, Some(ctx)) => property_s_with(&g, c, ctx, opts)?.1.map(|s| g.name(s).to_string()),
        _ => None,
    };
    let mut report = json!({
        "kind": kind.as_str(),
        "coalition": c.to_string(),
        "refined": opts.refine,
        "property": holds,
        "responsible": responsible,
        "minimal_exhaustive": exhaustive,
        "witness": witness,
    });
    if oracle {
        let limit = cfg.oracle_cap as u128;
        let b = match (kind, &ctx) {
            (Kind::F, _) => brute_force_property_f(&g, c, opts, limit)?,
            (Kind::S, Some(ctx)) => brute_force_property_s(&g, c, ctx, opts, limit)?.0,
            (Kind::C, Some(ctx)) => brute_force_property_c(&g, c, ctx, opts, limit)?,
            _ => unreachable!("contexts were loaded for backward kinds"),
        };
        report["oracle"] = json!(b);
    }
    report["elapsed_ms"] = json!(ms(t));
    Ok(Outcome::ok(report))
}

fn minimal(cfg: &GlobalConfig, game: &Path, kind: Kind, args: &ContextArgs) -> Res<Outcome> {
    let t = Instant::now();
    let g = load_game(game)?;
    check_subset_cap(cfg, &g)?;
    let ctx = load_context(&g, kind, args)?;
    let po = PropertyOracle::with_options(&g, kind, ctx.as_ref(), options(args.no_refine))?;
    let found = minimal_with(&po)?;
    Ok(Outcome::ok(json!({ "kind": kind.as_str(), "minimal": coalitions(&found), "elapsed_ms": ms(t) })))
}

/// Responsibility values with everything needed to audit them: the
/// minimal coalitions, the permutation-formula cross-check and the
/// telescope identity.
fn analyze(
    cfg: &GlobalConfig,
    g: &GameTree,
    kind: Kind,
    ctx: Option<&BackwardContext>,
    opts: InduceOptions,
    audit: bool,
) -> Res<Value> {
    let t = Instant::now();
    check_subset_cap(cfg, g)?;
    let po = PropertyOracle::with_options(g, kind, ctx, opts)?;
    let (cg, findings) = induced_coop_game_with(&po, audit)?;
    let vector = shapley(&cg);
    let n = g.players();
    // A coalition is minimal iff it has value 1 and every one-smaller subset
    // has value 0 (the game is the upward closure of the property).
    let mut minimal: Vec<Coalition> = (0..1u64 << n)
        .map(Coalition::from_mask)
        .filter(|&c| cg.value(c).is_one() && c.members().all(|i| cg.value(c.without(i)).is_zero()))
        .collect();
    minimal.sort_by_key(|c| c.order_key());
    let elapsed = ms(t);
    let mut sum = Rational::zero();
    for x in &vector {
        sum += x;
    }
    let telescope = sum == cg.value(cg.full()) - cg.value(Coalition::empty());
    let permutation = if n <= PERMUTATION_MAX_PLAYERS { Some(rationals(&shapley_permutation(&cg)?)) } else { None };
    Ok(json!({
        "kind": kind.as_str(),
        "players": n,
        "vector": rationals(&vector),
        "minimal": coalitions(&minimal),
        "void": vector.iter().all(Rational::is_zero),
        "sum": sum.to_string(),
        "telescope": telescope,
        "permutation": permutation,
        "monotonicity_findings": findings,
        "elapsed_ms": elapsed,
    }))
}

/// Parses `a=1,b=2`.
fn pairs(text: &str) -> Res<Vec<(String, String)>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|kv| {
            let (k, v) =
                kv.split_once('=').ok_or_else(|| CliError::Input(format!("expected NAME=VALUE, got {kv:?}")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn verdict_json(m: &CausalModel, v: &CauseVerdict) -> Value {
    json!({
        "is_cause": v.is_cause,
        "failed": v.failed,
        "setting": v.setting.as_ref().map(|s| {
            s.0.iter()
                .map(|&(x, val)| (m.endogenous[x].name.clone(), m.endogenous[x].range[val].clone()))
                .collect::<BTreeMap<_, _>>()
        }),
        "contingency": v.contingency.iter().map(|&x| m.endogenous[x].name.clone()).collect::<Vec<_>>(),
    })
}

struct CauseInput {
    model: CausalModel,
    context: respgames_core::causal::Context,
    cause: respgames_core::causal::Intervention,
    formula: EventFormula,
}

fn cause_input(args: &CauseArgs) -> Res<CauseInput> {
    let model = in_file(&args.model, CausalModel::from_json(&read(&args.model)?))?;
    let context = model.context(&pairs(&args.context)?.into_iter().collect())?;
    let cause = model.assignment(&pairs(&args.cause)?)?;
    let formula = EventFormula::parse(&model, &args.formula)?;
    Ok(CauseInput { model, context, cause, formula })
}

fn causal(cfg: &GlobalConfig, c: &CausalCommand) -> Res<Outcome> {
    match c {
        CausalCommand::Compile { model, formula, context } => {
            let m = in_file(model, CausalModel::from_json(&read(model)?))?;
            let cg = compile_to_game(&m, cfg.node_cap())?;
            let g = match formula {
                Some(f) => label_event(&cg, &EventFormula::parse(&m, f)?),
                None => cg.game.clone(),
            };
            let mut report = json!({ "game": g.to_raw() });
            if let Some(ctx) = context {
                let ctx = m.context(&pairs(ctx)?.into_iter().collect())?;
                let (profile, play) = induced_profile_and_play(&m, &cg, &ctx)?;
                report["profile"] = json!(profile.to_raw(&g));
                report["play"] = json!(play.to_raw(&g));
            }
            Ok(Outcome::ok(report))
        }
        CausalCommand::Butfor { args } => {
            let x = cause_input(args)?;
            let direct = but_for_direct(&x.model, &x.context, &x.cause, &x.formula)?;
            let via = but_for_via_game(&x.model, &x.context, &x.cause, &x.formula, cfg.node_cap())?;
            Ok(Outcome::ok(json!({
                "but_for": direct.is_cause,
                "direct": verdict_json(&x.model, &direct),
                "via_game": verdict_json(&x.model, &via),
                "agree": direct.is_cause == via.is_cause,
            })))
        }
        CausalCommand::Ac { args } => {
            let x = cause_input(args)?;
            let v = actual_cause(&x.model, &x.context, &x.cause, &x.formula)?;
            Ok(Outcome::ok(json!({ "actual_cause": v.is_cause, "verdict": verdict_json(&x.model, &v) })))
        }
    }
}

fn cegs(cfg: &GlobalConfig, c: &CegsCommand) -> Res<Outcome> {
    match c {
        CegsCommand::Validate { file } => {
            let raw: RawCegs =
                serde_json::from_str(&read(file)?).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
            let violations = validate_cegs(&raw);
            let report = json!({ "valid": violations.is_empty(), "violations": violations });
            Ok(if violations.is_empty() { Outcome::ok(report) } else { Outcome::invalid(report) })
        }
        CegsCommand::Unroll { structure, init, horizon, bad } => {
            let m = in_file(structure, Cegs::from_json(&read(structure)?))?;
            let init = m.state_id(init)?;
            let bad = bad
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| m.state_id(s))
                .collect::<respgames_core::Result<Vec<_>>>()?;
            let g = unroll(&m, init, *horizon, &bad, cfg.node_cap())?;
            Ok(Outcome::ok(json!({ "nodes": g.node_count(), "game": g.to_raw() })))
        }
    }
}

fn find_example(name: &str) -> Res<Example> {
    corpus::example(name)?
        .ok_or_else(|| CliError::Input(format!("unknown example {name:?}; known: {}", corpus::NAMES.join(", "))))
}

fn examples(cfg: &GlobalConfig, c: &ExamplesCommand) -> Res<Outcome> {
    match c {
        ExamplesCommand::List => {
            let list: Vec<Value> = corpus::NAMES
                .iter()
                .map(|n| {
                    let e = find_example(n)?;
                    Ok(json!({
                        "name": e.name,
                        "description": e.description,
                        "players": e.game.players(),
                        "nodes": e.game.node_count(),
                        "scenarios": e.scenarios.iter().map(|s| json!({
                            "id": s.id, "kind": s.kind.as_str(), "source": s.source,
                        })).collect::<Vec<_>>(),
                        "causal": e.causal.is_some(),
                    }))
                })
                .collect::<Res<_>>()?;
            Ok(Outcome::ok(json!({ "examples": list })))
        }
        ExamplesCommand::Run { name, kind, scenario } => {
            let e = find_example(name)?;
            let kind: Option<Kind> = kind.map(Into::into);
            let chosen: Vec<_> = e
                .scenarios
                .iter()
                .filter(|s| kind.is_none_or(|k| k == s.kind))
                .filter(|s| scenario.as_deref().is_none_or(|id| id == s.id))
                .collect();
            if chosen.is_empty() {
                return Err(CliError::Input(format!("example {name:?} has no matching scenario")));
            }
            let mut pass = true;
            let mut results = Vec::new();
            for s in chosen {
                let ctx = s.play.clone().map(|p| match &s.profile {
                    Some(prof) => BackwardContext::with_profile(p, prof.clone()),
                    None => BackwardContext::new(p),
                });
                let mut r = analyze(cfg, &e.game, s.kind, ctx.as_ref(), InduceOptions::default(), false)?;
                let checks = expectations(&r, &s.expect);
                let ok = checks.iter().all(|c| c["pass"] == json!(true));
                pass &= ok;
                r["scenario"] = json!(s.id);
                r["source"] = json!(s.source);
                r["checks"] = json!(checks);
                r["pass"] = json!(ok);
                results.push(r);
            }
            let mut report = json!({ "example": e.name, "results": results });
            if let (Some(part), None) = (&e.causal, scenario) {
                let (queries, ok) = cause_queries(part)?;
                pass &= ok;
                report["causal"] = json!(queries);
            }
            report["pass"] = json!(pass);
            Ok(Outcome::ok(report))
        }
        ExamplesCommand::Export { name, out } => {
            let e = find_example(name)?;
            fs::create_dir_all(out).map_err(|err| CliError::Input(format!("{}: {err}", out.display())))?;
            let mut files = Vec::new();
            let mut write = |file: String, content: String| -> Res<()> {
                let path = out.join(&file);
                fs::write(&path, content).map_err(|err| CliError::Input(format!("{}: {err}", path.display())))?;
                files.push(path.display().to_string());
                Ok(())
            };
            write("game.json".into(), e.game.to_json())?;
            for s in &e.scenarios {
                if let Some(p) = &s.play {
                    write(format!("{}.play.json", s.id), pretty(&p.to_raw(&e.game))?)?;
                }
                if let Some(p) = &s.profile {
                    write(format!("{}.profile.json", s.id), pretty(&p.to_raw(&e.game))?)?;
                }
            }
            if let Some(part) = &e.causal {
                write("model.json".into(), part.model.to_json())?;
            }
            Ok(Outcome::ok(json!({ "example": e.name, "files": files })))
        }
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> Res<String> {
    serde_json::to_string_pretty(v).map_err(|e| CliError::Internal(e.to_string()))
}

fn expectations(result: &Value, expect: &[Expect]) -> Vec<Value> {
    expect
        .iter()
        .map(|x| match x {
            Expect::Value(i, v) => {
                let actual = result["vector"][*i as usize - 1].clone();
                json!({
                    "check": format!("resp({i})"),
                    "expected": v.to_string(),
                    "actual": actual,
                    "pass": actual == json!(v.to_string()),
                })
            }
            Expect::NoResponsibleSingleton => {
                let singles: Vec<Value> = result["minimal"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .filter(|c| c.as_str().is_some_and(|s| !s.contains(',') && s != "{}"))
                    .cloned()
                    .collect();
                json!({
                    "check": "no single responsible player",
                    "expected": [],
                    "actual": singles,
                    "pass": singles.is_empty(),
                })
            }
        })
        .collect()
}

fn cause_queries(part: &corpus::CausalPart) -> Res<(Vec<Value>, bool)> {
    let m = &part.model;
    let ctx = m.context(&part.context)?;
    let phi = EventFormula::parse(m, &part.formula)?;
    let mut all = true;
    let mut out = Vec::new();
    for q in &part.queries {
        let x = m.assignment(&q.candidate)?;
        let bf = but_for_direct(m, &ctx, &x, &phi)?.is_cause;
        let ac = actual_cause(m, &ctx, &x, &phi)?.is_cause;
        let ok = q.but_for.is_none_or(|b| b == bf) && q.actual.is_none_or(|a| a == ac);
        all &= ok;
        let cand: Vec<String> = q.candidate.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push(json!({
            "candidate": cand.join(","),
            "formula": part.formula,
            "but_for": bf,
            "actual_cause": ac,
            "expected_but_for": q.but_for,
            "expected_actual_cause": q.actual,
            "pass": ok,
        }));
    }
    Ok((out, all))
}

fn generate(seed: u64, what: GenWhat, players: u32, nodes: usize) -> Res<Outcome> {
    let mut r = rng(seed);
    match what {
        GenWhat::Game => {
            if !(1..=64).contains(&players) || nodes < 3 {
                return Err(CliError::Input("need 1..=64 players and at least 3 nodes".into()));
            }
            let p = GameParams { max_nodes: nodes, ..GameParams::small(players) };
            let g = random_game(&mut r, &p);
            Ok(Outcome::ok(json!(g.to_raw())))
        }
        GenWhat::Causal => {
            let m = random_causal_model(&mut r, &CausalParams::default());
            Ok(Outcome::ok(json!(m.to_raw())))
        }
    }
}
