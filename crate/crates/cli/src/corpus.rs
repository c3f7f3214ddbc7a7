//! The bundled example games with their plays, profiles and expected
//! responsibility values.
//!
//! The small games are written out node by node; bystanders, voting and
//! marksmen come from generators parameterized by the number of players.

use std::collections::BTreeMap;

use respgames_core::causal::{
    compile_to_game, induced_profile_and_play, label_event, CausalModel, Context, EventFormula, RawCausalModel,
    RawEndogenous, RawExogenous, RawValue,
};
use respgames_core::game::GameBuilder;
use respgames_core::{GameTree, Kind, Label, Play, Rational, Result, StrategyProfile};

/// One expectation attached to a scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expect {
    /// The responsibility value of a player (1-based).
    Value(u32, Rational),
    /// No single player satisfies the property on its own.
    NoResponsibleSingleton,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub id: &'static str,
    pub kind: Kind,
    pub play: Option<Play>,
    pub profile: Option<StrategyProfile>,
    pub expect: Vec<Expect>,
    /// Where the expectation comes from, in neutral words.
    pub source: &'static str,
}

/// A cause query on a causal model: is the assignment a but-for and/or an
/// actual cause of the formula?
#[derive(Debug, Clone)]
pub struct CauseQuery {
    pub candidate: Vec<(String, String)>,
    pub but_for: Option<bool>,
    pub actual: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct CausalPart {
    pub model: CausalModel,
    pub context: BTreeMap<String, String>,
    pub formula: String,
    pub queries: Vec<CauseQuery>,
}

#[derive(Debug, Clone)]
pub struct Example {
    pub name: &'static str,
    pub description: &'static str,
    pub game: GameTree,
    pub scenarios: Vec<Scenario>,
    pub causal: Option<CausalPart>,
}

impl Example {
    pub fn scenario(&self, id: &str) -> Option<&Scenario> {
        self.scenarios.iter().find(|s| s.id == id)
    }
}

pub const NAMES: [&str; 11] = [
    "matching-pennies",
    "running-example",
    "refinement-counterexample",
    "bystanders",
    "voting",
    "marksmen",
    "prisoners-death",
    "bogus-prevention",
    "bogus-prevention-friend",
    "rock-throwing",
    "bystanders-small",
];

/// Builds every example. Construction is cheap except for marksmen (about
/// twenty thousand nodes), so prefer [`example`] for a single one.
pub fn example_corpus() -> Result<Vec<Example>> {
    NAMES.iter().map(|n| example(n).map(|e| e.expect("listed name"))).collect()
}

pub fn example(name: &str) -> Result<Option<Example>> {
    Ok(Some(match name {
        "matching-pennies" => matching_pennies()?,
        "running-example" => running_example()?,
        "refinement-counterexample" => refinement_counterexample()?,
        "bystanders" => bystanders_example(4, 3)?,
        "bystanders-small" => bystanders_example(3, 2)?,
        "voting" => voting_example(11, 4)?,
        "marksmen" => marksmen_example(10, 3)?,
        "prisoners-death" => prisoners_death()?,
        "bogus-prevention" => bogus_prevention(false)?,
        "bogus-prevention-friend" => bogus_prevention(true)?,
        "rock-throwing" => rock_throwing()?,
        _ => return Ok(None),
    }))
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn values(v: &[Rational]) -> Vec<Expect> {
    v.iter().enumerate().map(|(k, x)| Expect::Value(k as u32 + 1, x.clone())).collect()
}

fn uniform_values(n: u32, v: Rational) -> Vec<Expect> {
    (1..=n).map(|i| Expect::Value(i, v.clone())).collect()
}

fn forward(expect: Vec<Expect>, source: &'static str) -> Scenario {
    Scenario { id: "forward", kind: Kind::F, play: None, profile: None, expect, source }
}

pub fn matching_pennies_game() -> Result<GameTree> {
    GameBuilder::new(2)
        .player("s0", 1, &[("h1", "s1"), ("t1", "s2")])
        .player("s1", 2, &[("h2", "s3"), ("t2", "s4")])
        .player("s2", 2, &[("h2", "s5"), ("t2", "s6")])
        .leaf("s3", Label::NotE)
        .leaf("s4", Label::E)
        .leaf("s5", Label::E)
        .leaf("s6", Label::NotE)
        .info_set("I2", 2, &["s1", "s2"])
        .build()
}

fn matching_pennies() -> Result<Example> {
    let game = matching_pennies_game()?;
    // Neither player can force the outcome alone; both together can.
    let scenarios = vec![forward(values(&[r(1, 2), r(1, 2)]), "matching pennies: symmetric roles")];
    Ok(Example {
        name: "matching-pennies",
        description: "Matching pennies: player 2 moves without seeing player 1's coin; E iff the coins differ.",
        game,
        scenarios,
        causal: None,
    })
}

pub fn running_example_game() -> Result<GameTree> {
    let half = r(1, 2);
    GameBuilder::new(3)
        .player("s0", 1, &[("A", "s1"), ("B", "s2")])
        .player("s1", 2, &[("h2", "s3"), ("t2", "s4")])
        .chance("s2", &[("h2'", "s5", half.clone()), ("t2'", "s6", half)])
        .player("s3", 3, &[("h3", "s7"), ("t3", "s8")])
        .player("s4", 3, &[("h3", "s9"), ("t3", "s10")])
        .player("s5", 3, &[("h3", "s11"), ("t3", "s12")])
        .player("s6", 3, &[("h3", "s13"), ("t3", "s14")])
        .leaf("s7", Label::NotE)
        .leaf("s8", Label::E)
        .leaf("s9", Label::E)
        .leaf("s10", Label::NotE)
        .leaf("s11", Label::NotE)
        .leaf("s12", Label::E)
        .leaf("s13", Label::E)
        .leaf("s14", Label::NotE)
        .info_set("I3", 3, &["s3", "s4"])
        .build()
}

fn running_example() -> Result<Example> {
    let g = running_example_game()?;
    let sigma1 =
        StrategyProfile::pure_by_name(&g, &[("s0", "B"), ("s1", "h2"), ("I3", "h3"), ("s5", "t3"), ("s6", "t3")])?;
    let sigma2 =
        StrategyProfile::pure_by_name(&g, &[("s0", "A"), ("s1", "h2"), ("I3", "t3"), ("s5", "h3"), ("s6", "t3")])?;
    let to_s8 = Play::from_actions(&g, &["A", "h2", "t3"])?;
    let to_s12 = Play::from_actions(&g, &["B", "h2'", "t3"])?;
    let scenarios = vec![
        forward(values(&[r(1, 6), r(1, 6), r(2, 3)]), "running example: forward responsibility"),
        Scenario {
            id: "s8",
            kind: Kind::S,
            play: Some(to_s8.clone()),
            profile: None,
            expect: values(&[r(1, 6), r(1, 6), r(2, 3)]),
            source: "running example: strategic backward responsibility, play ending in s8",
        },
        Scenario {
            id: "s12",
            kind: Kind::S,
            play: Some(to_s12.clone()),
            profile: None,
            expect: values(&[Rational::zero(), Rational::zero(), Rational::one()]),
            source: "running example: strategic backward responsibility, play ending in s12",
        },
        Scenario {
            id: "sigma1-s12",
            kind: Kind::C,
            play: Some(to_s12),
            profile: Some(sigma1),
            expect: Vec::new(),
            source: "running example: first profile, play ending in s12",
        },
        Scenario {
            id: "sigma2-s8",
            kind: Kind::C,
            play: Some(to_s8),
            profile: Some(sigma2),
            expect: values(&[r(1, 3), r(1, 3), r(1, 3)]),
            source: "running example: second profile, play ending in s8",
        },
    ];
    Ok(Example {
        name: "running-example",
        description: "Three players with one chance move; player 3 cannot tell s3 from s4.",
        game: g,
        scenarios,
        causal: None,
    })
}

pub fn refinement_counterexample_game() -> Result<GameTree> {
    GameBuilder::new(3)
        .player("s0", 1, &[("A", "s1"), ("B", "s2")])
        .player("s1", 2, &[("a", "s5"), ("b", "s3")])
        .player("s2", 2, &[("c", "s4"), ("d", "s10")])
        .player("s3", 3, &[("x", "s6"), ("y", "s7")])
        .player("s4", 3, &[("x", "s8"), ("y", "s9")])
        .leaf("s5", Label::E)
        .leaf("s6", Label::NotE)
        .leaf("s7", Label::E)
        .leaf("s8", Label::E)
        .leaf("s9", Label::NotE)
        .leaf("s10", Label::E)
        .info_set("I3", 3, &["s3", "s4"])
        .build()
}

fn refinement_counterexample() -> Result<Example> {
    let game = refinement_counterexample_game()?;
    Ok(Example {
        name: "refinement-counterexample",
        description: "Player 3 cannot tell s3 from s4, but in the coalition {2,3} player 2's move tells them apart; \
                      without refining information sets by coalition history, {2,3} loses its forward strategy.",
        game,
        scenarios: vec![forward(Vec::new(), "refinement counterexample")],
        causal: None,
    })
}

/// Bystanders arrive one after another at an accident with `victims`
/// victims; each either helps an unassisted victim or walks on. E (harm)
/// iff some victim is left unassisted. Perfect information: everyone sees
/// what earlier bystanders did. Nodes are named `r` followed by the moves
/// so far (`h` help, `n` pass).
pub fn bystanders_game(n: u32, victims: u32) -> Result<GameTree> {
    let mut b = GameBuilder::new(n);
    let mut layer = vec![String::new()];
    for k in 0..=n {
        let mut next = Vec::new();
        for path in &layer {
            let id = format!("r{path}");
            if k == n {
                let helpers = path.chars().filter(|&c| c == 'h').count() as u32;
                b.leaf(&id, if helpers < victims { Label::E } else { Label::NotE });
            } else {
                let h = format!("r{path}h");
                let p = format!("r{path}n");
                b.player(&id, k + 1, &[("help", &h), ("pass", &p)]);
                next.push(format!("{path}h"));
                next.push(format!("{path}n"));
            }
        }
        layer = next;
    }
    b.build()
}

/// Pure profile of the bystander game from a rule `help(player, path)`,
/// where `path` is the string of earlier moves.
fn bystander_profile(g: &GameTree, help: impl Fn(u32, &str) -> bool) -> StrategyProfile {
    StrategyProfile::pure(g, |_, is| {
        let name = is.name.to_string();
        let path = &name[1..];
        if help(path.len() as u32 + 1, path) {
            0
        } else {
            1
        }
    })
}

fn bystanders_example(n: u32, victims: u32) -> Result<Example> {
    let g = bystanders_game(n, victims)?;
    let full = n == 4 && victims == 3;
    let mut scenarios = vec![forward(
        if full { uniform_values(n, r(1, 4)) } else { Vec::new() },
        "bystanders: forward responsibility is shared equally",
    )];
    if full {
        // Players 1 and 3 help.
        let play = Play::from_actions(&g, &["help", "pass", "help", "pass"])?;
        scenarios.push(Scenario {
            id: "helpers-1-3",
            kind: Kind::S,
            play: Some(play),
            profile: None,
            expect: vec![Expect::Value(4, Rational::one())],
            source: "bystanders: the last bystander passes after players 1 and 3 helped",
        });
        let only_first = bystander_profile(&g, |i, _| i == 1);
        scenarios.push(Scenario {
            id: "only-first-helps",
            kind: Kind::C,
            play: Some(Play::from_actions(&g, &["help", "pass", "pass", "pass"])?),
            profile: Some(only_first),
            expect: values(&[Rational::zero(), r(1, 3), r(1, 3), r(1, 3)]),
            source: "bystanders: only the first bystander ever helps",
        });
        let reactive = bystander_profile(&g, |i, path| match i {
            1 => true,
            4 => path.as_bytes()[2] == b'h',
            _ => false,
        });
        scenarios.push(Scenario {
            id: "fourth-follows-third",
            kind: Kind::C,
            play: Some(Play::from_actions(&g, &["help", "pass", "pass", "pass"])?),
            profile: Some(reactive),
            expect: values(&[Rational::zero(), r(1, 6), r(2, 3), r(1, 6)]),
            source: "bystanders: the fourth bystander helps iff the third did",
        });
    }
    Ok(Example {
        name: if full { "bystanders" } else { "bystanders-small" },
        description: "Bystanders arrive in turn and each may help an unassisted victim; E iff a victim is left \
                      unassisted.",
        game: g,
        scenarios,
        causal: None,
    })
}

/// `n` voters cast secret votes for A or B one after another; nobody sees
/// earlier votes, so each level of the tree is one information set `V{k}`.
/// E iff A loses. Nodes are named `v` followed by the votes so far.
pub fn voting_game(n: u32) -> Result<GameTree> {
    let mut b = GameBuilder::new(n);
    let mut layer = vec![String::new()];
    for k in 0..=n {
        let mut next = Vec::new();
        for path in &layer {
            let id = format!("v{path}");
            if k == n {
                let a = path.chars().filter(|&c| c == 'A').count() as u32;
                b.leaf(&id, if 2 * a < n { Label::E } else { Label::NotE });
            } else {
                b.player(&id, k + 1, &[("A", &format!("v{path}A")), ("B", &format!("v{path}B"))]);
                next.push(format!("{path}A"));
                next.push(format!("{path}B"));
            }
        }
        if k < n {
            let members: Vec<String> = layer.iter().map(|p| format!("v{p}")).collect();
            let refs: Vec<&str> = members.iter().map(String::as_str).collect();
            b.info_set(&format!("V{}", k + 1), k + 1, &refs);
        }
        layer = next;
    }
    b.build()
}

fn voting_example(n: u32, for_a: u32) -> Result<Example> {
    let g = voting_game(n)?;
    let votes: Vec<&str> = (0..n).map(|k| if k < for_a { "A" } else { "B" }).collect();
    let play = Play::from_actions(&g, &votes)?;
    let profile = StrategyProfile::pure(&g, |_, is| if is.name[1..].parse::<u32>().unwrap() <= for_a { 0 } else { 1 });
    let third = r(1, n as i64);
    let mut c_expect: Vec<Expect> = (1..=for_a).map(|i| Expect::Value(i, Rational::zero())).collect();
    c_expect.extend((for_a + 1..=n).map(|i| Expect::Value(i, r(1, 4))));
    let scenarios = vec![
        forward(uniform_values(n, third.clone()), "voting: forward responsibility is shared equally"),
        Scenario {
            id: "outcome",
            kind: Kind::S,
            play: Some(play.clone()),
            profile: None,
            expect: uniform_values(n, third),
            source: "voting: strategic backward responsibility for the actual outcome",
        },
        Scenario {
            id: "outcome-profile",
            kind: Kind::C,
            play: Some(play),
            profile: Some(profile),
            expect: c_expect,
            source: "voting: causal responsibility shared by the B-voters",
        },
    ];
    Ok(Example {
        name: "voting",
        description: "Eleven secret votes for A or B; E iff A loses. The actual vote is 4 for A, 7 for B.",
        game: g,
        scenarios,
        causal: None,
    })
}

/// Chance hands the one live round to marksman `i*` (uniformly); then the
/// marksmen decide in turn to shoot or hold without seeing chance or each
/// other, so each level is one information set `M{k}`. E iff `i*` shoots.
pub fn marksmen_game(n: u32) -> Result<GameTree> {
    let mut b = GameBuilder::new(n);
    let live: Vec<(String, String)> = (1..=n).map(|i| (format!("live{i}"), format!("m{i}:"))).collect();
    let dist: Vec<(&str, &str, Rational)> =
        live.iter().map(|(a, c)| (a.as_str(), c.as_str(), r(1, n as i64))).collect();
    b.chance("c", &dist);
    let mut levels: Vec<Vec<String>> = vec![Vec::new(); n as usize];
    for i in 1..=n {
        let mut layer = vec![String::new()];
        for k in 0..=n {
            let mut next = Vec::new();
            for path in &layer {
                let id = format!("m{i}:{path}");
                if k == n {
                    let shot = path.as_bytes()[i as usize - 1] == b's';
                    b.leaf(&id, if shot { Label::E } else { Label::NotE });
                } else {
                    b.player(&id, k + 1, &[("shoot", &format!("{id}s")), ("hold", &format!("{id}h"))]);
                    levels[k as usize].push(id);
                    next.push(format!("{path}s"));
                    next.push(format!("{path}h"));
                }
            }
            layer = next;
        }
    }
    for (k, members) in levels.iter().enumerate() {
        let refs: Vec<&str> = members.iter().map(String::as_str).collect();
        b.info_set(&format!("M{}", k + 1), k as u32 + 1, &refs);
    }
    b.build()
}

fn marksmen_example(n: u32, live: u32) -> Result<Example> {
    let g = marksmen_game(n)?;
    let mut actions = vec![format!("live{live}")];
    actions.extend((0..n).map(|_| "shoot".to_string()));
    let play = Play::from_actions(&g, &actions)?;
    let all_shoot = StrategyProfile::pure(&g, |_, _| 0);
    let tenth = r(1, n as i64);
    let c_expect =
        (1..=n).map(|i| Expect::Value(i, if i == live { Rational::one() } else { Rational::zero() })).collect();
    let scenarios = vec![
        forward(uniform_values(n, tenth.clone()), "marksmen: forward responsibility is shared equally"),
        Scenario {
            id: "execution",
            kind: Kind::S,
            play: Some(play.clone()),
            profile: None,
            expect: uniform_values(n, tenth),
            source: "marksmen: strategic backward responsibility for the execution",
        },
        Scenario {
            id: "execution-profile",
            kind: Kind::C,
            play: Some(play),
            profile: Some(all_shoot),
            expect: c_expect,
            source: "marksmen: causal responsibility lies with the holder of the live round",
        },
    ];
    Ok(Example {
        name: "marksmen",
        description: "Ten marksmen, one live round handed out by chance; E iff its holder shoots. Nobody knows \
                      who holds it. The actual play: the third marksman holds it, and all shoot.",
        game: g,
        scenarios,
        causal: None,
    })
}

pub fn prisoners_death_game() -> Result<GameTree> {
    let mut b = GameBuilder::new(3);
    b.player("s0", 1, &[("load", "L"), ("empty", "N")]);
    for x in ["L", "N"] {
        b.player(x, 2, &[("shoot", &format!("{x}S")), ("hold", &format!("{x}H"))]);
    }
    for x in ["LS", "LH", "NS", "NH"] {
        b.player(x, 3, &[("shoot", &format!("{x}.s")), ("hold", &format!("{x}.h"))]);
    }
    for x in ["LS", "LH", "NS", "NH"] {
        let loaded_shot = x == "LS";
        b.leaf(&format!("{x}.s"), Label::E);
        b.leaf(&format!("{x}.h"), if loaded_shot { Label::E } else { Label::NotE });
    }
    b.info_set("G2", 2, &["L", "N"]);
    b.build()
}

fn prisoners_death() -> Result<Example> {
    let g = prisoners_death_game()?;
    let play = Play::from_actions(&g, &["load", "hold", "shoot"])?;
    let reactive = StrategyProfile::pure_by_name(
        &g,
        &[("s0", "load"), ("G2", "hold"), ("LS", "shoot"), ("LH", "shoot"), ("NS", "shoot"), ("NH", "hold")],
    )?;
    let scenarios = vec![
        forward(values(&[r(1, 6), r(1, 6), r(2, 3)]), "prisoner's death: forward responsibility"),
        Scenario {
            id: "third-shoots",
            kind: Kind::S,
            play: Some(play.clone()),
            profile: None,
            expect: vec![Expect::Value(3, Rational::one())],
            source: "prisoner's death: the third guard's shot",
        },
        Scenario {
            id: "reactive-guard",
            kind: Kind::C,
            play: Some(play),
            profile: Some(reactive),
            expect: values(&[r(1, 2), Rational::zero(), r(1, 2)]),
            source: "prisoner's death: the third guard shoots unless the gun is empty and the second guard held",
        },
    ];
    Ok(Example {
        name: "prisoners-death",
        description: "Guard 1 loads the second guard's gun or not, guard 2 shoots without knowing, guard 3 \
                      shoots with a loaded gun; E iff the prisoner dies.",
        game: g,
        scenarios,
        causal: None,
    })
}

fn text(v: &str) -> RawValue {
    RawValue::Text(v.into())
}

fn binary() -> Vec<RawValue> {
    vec![text("0"), text("1")]
}

fn exo(name: &str) -> RawExogenous {
    RawExogenous { name: name.into(), range: binary() }
}

/// A binary endogenous variable with a table over binary parents.
fn endo(name: &str, parents: &[&str], f: impl Fn(&[bool]) -> bool) -> RawEndogenous {
    let mut table = BTreeMap::new();
    for mask in 0..1u32 << parents.len() {
        let bits: Vec<bool> = (0..parents.len()).map(|k| mask >> (parents.len() - 1 - k) & 1 == 1).collect();
        let key: Vec<&str> = bits.iter().map(|&b| if b { "1" } else { "0" }).collect();
        table.insert(key.join(","), text(if f(&bits) { "1" } else { "0" }));
    }
    RawEndogenous {
        name: name.into(),
        range: binary(),
        parents: parents.iter().map(|p| p.to_string()).collect(),
        table,
    }
}

fn context(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn query(candidate: &[(&str, &str)], but_for: Option<bool>, actual: Option<bool>) -> CauseQuery {
    CauseQuery { candidate: candidate.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(), but_for, actual }
}

/// The compiled game with the context's profile and play.
fn compiled(part: &CausalPart) -> Result<(GameTree, StrategyProfile, Play)> {
    let cg = compile_to_game(&part.model, respgames_core::node_cap())?;
    let phi = EventFormula::parse(&part.model, &part.formula)?;
    let g = label_event(&cg, &phi);
    let ctx: Context = part.model.context(&part.context)?;
    let (profile, play) = induced_profile_and_play(&part.model, &cg, &ctx)?;
    Ok((g, profile, play))
}

/// Bodyguard B gives an antidote, assassin A poisons; the victim survives
/// iff no poison or antidote. In the friend variant the assassin poisons
/// exactly when the antidote is given. The event is survival.
fn bogus_prevention(friend: bool) -> Result<Example> {
    let endogenous = vec![
        endo("B", &["UB"], |p| p[0]),
        if friend { endo("A", &["B"], |p| p[0]) } else { endo("A", &["UA"], |p| p[0]) },
    ];
    let raw = RawCausalModel { exogenous: vec![exo("UB"), exo("UA")], endogenous, order: Vec::new() };
    let part = CausalPart {
        model: CausalModel::from_raw(raw)?,
        context: context(&[("UB", "1"), ("UA", "1")]),
        formula: "A=0 | B=1".into(),
        queries: if friend {
            vec![query(&[("B", "1")], Some(false), Some(true)), query(&[("A", "1")], Some(false), Some(false))]
        } else {
            vec![query(&[("B", "1")], Some(true), Some(true)), query(&[("A", "1")], Some(false), Some(false))]
        },
    };
    let (game, profile, play) = compiled(&part)?;
    let scenario = Scenario {
        id: "actual",
        kind: Kind::C,
        play: Some(play),
        profile: Some(profile),
        expect: if friend {
            vec![Expect::NoResponsibleSingleton]
        } else {
            values(&[Rational::one(), Rational::zero()])
        },
        source: if friend {
            "bogus prevention, friend variant: neither the bodyguard nor the assassin alone"
        } else {
            "bogus prevention: the bodyguard, not the assassin"
        },
    };
    Ok(Example {
        name: if friend { "bogus-prevention-friend" } else { "bogus-prevention" },
        description: if friend {
            "Bogus prevention where the assassin poisons iff the antidote was given; compiled to a game with \
             the bodyguard as player 1 and the assassin as player 2."
        } else {
            "Bogus prevention: the bodyguard gives an antidote and the assassin poisons; compiled to a game \
             with the bodyguard as player 1 and the assassin as player 2."
        },
        game,
        scenarios: vec![scenario],
        causal: Some(part),
    })
}

/// Suzy and Billy throw rocks at a bottle; Suzy's hits first.
fn rock_throwing() -> Result<Example> {
    let raw = RawCausalModel {
        exogenous: vec![exo("US"), exo("UB")],
        endogenous: vec![
            endo("ST", &["US"], |p| p[0]),
            endo("BT", &["UB"], |p| p[0]),
            endo("SH", &["ST"], |p| p[0]),
            endo("BH", &["BT", "SH"], |p| p[0] && !p[1]),
            endo("BS", &["SH", "BH"], |p| p[0] || p[1]),
        ],
        order: Vec::new(),
    };
    let part = CausalPart {
        model: CausalModel::from_raw(raw)?,
        context: context(&[("US", "1"), ("UB", "1")]),
        formula: "BS=1".into(),
        queries: vec![query(&[("ST", "1")], Some(false), Some(true)), query(&[("BT", "1")], Some(false), Some(false))],
    };
    let (game, profile, play) = compiled(&part)?;
    let scenario = Scenario {
        id: "actual",
        kind: Kind::C,
        play: Some(play),
        profile: Some(profile),
        expect: Vec::new(),
        source: "rock throwing: both throw",
    };
    Ok(Example {
        name: "rock-throwing",
        description: "Suzy and Billy both throw; Suzy's rock hits first and the bottle shatters.",
        game,
        scenarios: vec![scenario],
        causal: Some(part),
    })
}
