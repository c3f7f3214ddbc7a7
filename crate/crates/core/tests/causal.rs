use std::collections::BTreeMap;

use respgames_core::causal::{
    actual_cause, but_for_direct, but_for_via_game, compile_to_game, induced_profile_and_play, label_event,
    CausalModel, Context, EventFormula, Intervention,
};
use respgames_core::game::{check_perfect_recall, enumerate_plays, validate_raw};
use respgames_core::gen::{random_causal_model, random_formula, rng, CausalParams};
use respgames_core::{Error, Label};

const CAP: usize = 100_000;

/// Suzy and Billy throw; Billy's rock only hits if Suzy's did not.
fn rock_throwing() -> CausalModel {
    CausalModel::from_json(
        r#"{
        "exogenous": [{"name": "US", "range": [0, 1]}, {"name": "UB", "range": [0, 1]}],
        "endogenous": [
            {"name": "ST", "range": [0, 1], "parents": ["US"], "table": {"0": 0, "1": 1}},
            {"name": "BT", "range": [0, 1], "parents": ["UB"], "table": {"0": 0, "1": 1}},
            {"name": "SH", "range": [0, 1], "parents": ["ST"], "table": {"0": 0, "1": 1}},
            {"name": "BH", "range": [0, 1], "parents": ["BT", "SH"],
             "table": {"0,0": 0, "0,1": 0, "1,0": 1, "1,1": 0}},
            {"name": "BS", "range": [0, 1], "parents": ["SH", "BH"],
             "table": {"0,0": 0, "0,1": 1, "1,0": 1, "1,1": 1}}
        ]}"#,
    )
    .unwrap()
}

/// A poisons iff U says so; B gives the antidote; the victim survives iff
/// there is no poison or there is an antidote.
fn bogus_prevention() -> CausalModel {
    CausalModel::from_json(
        r#"{
        "exogenous": [{"name": "UB", "range": [0, 1]}, {"name": "UA", "range": [0, 1]}],
        "endogenous": [
            {"name": "B", "range": [0, 1], "parents": ["UB"], "table": {"0": 0, "1": 1}},
            {"name": "A", "range": [0, 1], "parents": ["UA"], "table": {"0": 0, "1": 1}}
        ]}"#,
    )
    .unwrap()
}

fn ctx(m: &CausalModel, pairs: &[(&str, &str)]) -> Context {
    let map: BTreeMap<String, String> = pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    m.context(&map).unwrap()
}

fn cause(m: &CausalModel, pairs: &[(&str, &str)]) -> Intervention {
    let v: Vec<(String, String)> = pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    m.assignment(&v).unwrap()
}

/// But-for causality checked straight from the definition: the candidate
/// holds, the event holds, some other setting of the candidate variables
/// falsifies it, and no proper non-empty subset of them can do the same.
fn but_for_oracle(m: &CausalModel, u: &Context, x: &Intervention, phi: &EventFormula) -> bool {
    let actual = m.evaluate(u, &Intervention::default()).unwrap();
    if !phi.eval(&actual) || x.0.iter().any(|&(v, val)| actual[v] != val) {
        return false;
    }
    let can_falsify = |vars: &[usize]| -> bool {
        let mut settings: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        for &v in vars {
            settings = settings
                .into_iter()
                .flat_map(|s| {
                    (0..m.endogenous[v].range.len()).map(move |val| {
                        let mut t = s.clone();
                        t.push((v, val));
                        t
                    })
                })
                .collect();
        }
        settings.into_iter().any(|s| !phi.eval(&m.evaluate(u, &Intervention(s)).unwrap()))
    };
    let vars: Vec<usize> = x.0.iter().map(|&(v, _)| v).collect();
    if !can_falsify(&vars) {
        return false;
    }
    let k = vars.len();
    (1..(1u32 << k) - 1).all(|mask| {
        let sub: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| vars[i]).collect();
        !can_falsify(&sub)
    })
}

#[test]
fn rock_throwing_singles_out_suzy() {
    let m = rock_throwing();
    let u = ctx(&m, &[("US", "1"), ("UB", "1")]);
    let phi = EventFormula::parse(&m, "BS=1").unwrap();
    let st = cause(&m, &[("ST", "1")]);
    let bt = cause(&m, &[("BT", "1")]);
    assert!(actual_cause(&m, &u, &st, &phi).unwrap().is_cause);
    assert!(!actual_cause(&m, &u, &bt, &phi).unwrap().is_cause);
    // Billy would have broken it anyway, so neither throw is a but-for cause.
    for x in [&st, &bt] {
        assert!(!but_for_direct(&m, &u, x, &phi).unwrap().is_cause);
        assert!(!but_for_via_game(&m, &u, x, &phi, CAP).unwrap().is_cause);
    }
    let both = cause(&m, &[("ST", "1"), ("BT", "1")]);
    assert!(but_for_direct(&m, &u, &both, &phi).unwrap().is_cause);
    assert!(but_for_via_game(&m, &u, &both, &phi, CAP).unwrap().is_cause);
}

#[test]
fn bogus_prevention_antidote_is_the_cause() {
    let m = bogus_prevention();
    let u = ctx(&m, &[("UB", "1"), ("UA", "1")]);
    let survive = EventFormula::parse(&m, "A=0 | B=1").unwrap();
    assert!(m.holds(&u, &Intervention::default(), &survive).unwrap());
    let b = cause(&m, &[("B", "1")]);
    let a = cause(&m, &[("A", "1")]);
    assert!(but_for_direct(&m, &u, &b, &survive).unwrap().is_cause);
    assert!(but_for_via_game(&m, &u, &b, &survive, CAP).unwrap().is_cause);
    let v = but_for_direct(&m, &u, &a, &survive).unwrap();
    assert!(!v.is_cause);
    assert!(!but_for_via_game(&m, &u, &a, &survive, CAP).unwrap().is_cause);

    let cg = compile_to_game(&m, CAP).unwrap();
    let g = label_event(&cg, &survive);
    assert_eq!(g.leaves().filter(|&n| g.label(n) == Some(Label::E)).count(), 3);
    let (_, play) = induced_profile_and_play(&m, &cg, &u).unwrap();
    assert_eq!(play.names(&g).join(" "), "() (1) (1,1)");
}

#[test]
fn trivial_events() {
    let m = bogus_prevention();
    let u = ctx(&m, &[("UB", "0"), ("UA", "0")]);
    let b = cause(&m, &[("B", "0")]);
    let never = EventFormula::False;
    let v = but_for_direct(&m, &u, &b, &never).unwrap();
    assert!(!v.is_cause);
    assert_eq!(v.failed, Some("AC1"));
    assert_eq!(but_for_via_game(&m, &u, &b, &never, CAP).unwrap().failed, Some("AC1"));
    let always = EventFormula::True;
    assert!(!but_for_direct(&m, &u, &b, &always).unwrap().is_cause);
    let phi = EventFormula::parse(&m, "B=0").unwrap();
    assert!(but_for_direct(&m, &u, &b, &phi).unwrap().is_cause);
    assert!(actual_cause(&m, &u, &b, &phi).unwrap().is_cause);
}

#[test]
fn compiled_game_layers() {
    let one = CausalModel::from_json(r#"{"endogenous": [{"name": "X", "range": [0, 1], "table": {"": 1}}]}"#).unwrap();
    assert_eq!(compile_to_game(&one, CAP).unwrap().game.node_count(), 3);
    let m = bogus_prevention();
    let cg = compile_to_game(&m, CAP).unwrap();
    assert_eq!(cg.game.node_count(), 7);
    assert_eq!(cg.game.nodes().filter(|&n| cg.game.owner(n) == respgames_core::Owner::Player(2)).count(), 2);
    assert!(check_perfect_recall(&cg.game).is_empty());
    assert!(validate_raw(&cg.game.to_raw()).is_empty());
    let rt = compile_to_game(&rock_throwing(), CAP).unwrap();
    assert_eq!(rt.game.players(), 5);
    assert_eq!(rt.game.node_count(), 63);
    assert!(matches!(compile_to_game(&rock_throwing(), 62), Err(Error::LimitExceeded(_))));
}

#[test]
fn formulas_parse_and_print() {
    let m = rock_throwing();
    let f = EventFormula::parse(&m, "!ST=1 & (BT=0 | BS=1)").unwrap();
    assert_eq!(f.display(&m).to_string(), "(!(ST=1) & (BT=0 | BS=1))");
    assert_eq!(EventFormula::parse(&m, &f.display(&m).to_string()).unwrap(), f);
    assert!(EventFormula::parse(&m, "ZZ=1").is_err());
    assert!(EventFormula::parse(&m, "ST=2").is_err());
    assert!(EventFormula::parse(&m, "ST=1 &").is_err());
    assert!(EventFormula::parse(&m, "(ST=1").is_err());
}

#[test]
fn models_are_validated() {
    let cyclic = r#"{"endogenous": [
        {"name": "X", "range": [0, 1], "parents": ["Y"], "table": {"0": 0, "1": 1}},
        {"name": "Y", "range": [0, 1], "parents": ["X"], "table": {"0": 0, "1": 1}}]}"#;
    assert!(CausalModel::from_json(cyclic).is_err());
    let missing_row = r#"{"exogenous": [{"name": "U", "range": [0, 1]}],
        "endogenous": [{"name": "X", "range": [0, 1], "parents": ["U"], "table": {"0": 0}}]}"#;
    assert!(CausalModel::from_json(missing_row).is_err());
    let bad_value = r#"{"endogenous": [{"name": "X", "range": [0, 1], "table": {"": 7}}]}"#;
    assert!(CausalModel::from_json(bad_value).is_err());
}

#[test]
fn json_round_trip() {
    for m in [rock_throwing(), bogus_prevention()] {
        let text = m.to_json();
        let again = CausalModel::from_json(&text).unwrap();
        assert_eq!(again, m);
        assert_eq!(again.to_json(), text);
    }
}

#[test]
fn interventions_override_equations() {
    let m = rock_throwing();
    let u = ctx(&m, &[("US", "1"), ("UB", "0")]);
    let actual = m.evaluate(&u, &Intervention::default()).unwrap();
    for x in 0..m.endogenous.len() {
        assert_eq!(m.apply(x, &u, &actual), actual[x]);
    }
    let full = Intervention((0..5).map(|x| (x, 0)).collect());
    assert_eq!(m.evaluate(&u, &full).unwrap(), vec![0; 5]);
}

#[test]
fn definitions_agree_on_random_models() {
    let mut rg = rng(51);
    let mut causes = 0;
    let mut narrowed = 0;
    for _ in 0..200 {
        let m = random_causal_model(&mut rg, &CausalParams::default());
        let phi = random_formula(&mut rg, &m, 2);
        let cg = compile_to_game(&m, CAP).unwrap();
        for u in m.contexts() {
            let actual = m.evaluate(&u, &Intervention::default()).unwrap();
            let (_, play) = induced_profile_and_play(&m, &cg, &u).unwrap();
            assert_eq!(cg.tuples[play.leaf().0], actual);
            for mask in 1u32..(1 << m.endogenous.len()).min(8) {
                let x = Intervention(
                    (0..m.endogenous.len()).filter(|&v| mask >> v & 1 == 1).map(|v| (v, actual[v])).collect(),
                );
                let direct = but_for_direct(&m, &u, &x, &phi).unwrap().is_cause;
                assert_eq!(direct, but_for_oracle(&m, &u, &x, &phi));
                assert_eq!(direct, but_for_via_game(&m, &u, &x, &phi, CAP).unwrap().is_cause);
                // With W empty every singleton but-for cause is an actual
                // cause. Larger candidates can fail AC3 because a proper
                // subset becomes an actual cause under some contingency.
                if direct {
                    let ac = actual_cause(&m, &u, &x, &phi).unwrap();
                    if x.0.len() == 1 {
                        assert!(ac.is_cause);
                    } else if !ac.is_cause {
                        assert_eq!(ac.failed, Some("AC3"));
                        narrowed += 1;
                    }
                }
                causes += usize::from(direct);
            }
        }
    }
    assert!(causes > 20, "{causes}");
    assert!(narrowed < causes);
    // The plays of a compiled game are exactly the value tuples.
    let m = rock_throwing();
    assert_eq!(enumerate_plays(&compile_to_game(&m, CAP).unwrap().game).len(), 32);
}
