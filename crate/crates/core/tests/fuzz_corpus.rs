use std::path::PathBuf;

use cvgeom::classv::{builtin_scenario, Family, Scenario};
use cvgeom::fieldexpr::{Point, ScalarField};
use cvgeom::verify::parse_params;

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(!files.is_empty(), "{}", dir.display());
    files.iter().map(|p| std::fs::read(p).unwrap()).collect()
}

#[test]
fn parse_expr_seeds_round_trip() {
    let mut parsed = 0;
    for bytes in seeds("parse_expr") {
        let text = String::from_utf8(bytes).unwrap();
        if let Ok(field) = ScalarField::parse(&text) {
            let again = ScalarField::parse(&field.pretty()).unwrap();
            assert_eq!(again.ast(), field.ast(), "{text}");
            parsed += 1;
        }
    }
    assert!(parsed >= 20);
}

#[test]
fn eval_jet_seeds_are_finite() {
    for bytes in seeds("eval_jet") {
        let (head, tail) = bytes.split_at(24);
        let c = |i: usize| f64::from_le_bytes(head[8 * i..8 * i + 8].try_into().unwrap());
        let p = Point::new(c(0), c(1), c(2));
        let field = ScalarField::parse(std::str::from_utf8(tail).unwrap()).unwrap();
        if let Ok(j) = field.eval_jet2(&p) {
            assert!(j.value.is_finite());
            assert!(field.eval(&p).unwrap().is_finite());
        }
    }
}

#[test]
fn scenario_seeds_load_and_reserialize() {
    for bytes in seeds("scenario_json") {
        let s = Scenario::from_json(std::str::from_utf8(&bytes).unwrap()).unwrap();
        assert_eq!(Scenario::from_json(&s.to_json()).unwrap().to_json(), s.to_json());
    }
}

#[test]
fn cli_param_seeds_build_scenarios() {
    for bytes in seeds("cli_params") {
        let text = String::from_utf8(bytes).unwrap();
        let (family, params) = text.split_once('|').unwrap();
        let family = Family::from_params(family, &parse_params(params).unwrap()).unwrap();
        builtin_scenario(&family).unwrap();
    }
}
