use std::fmt::Write as _;
use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

use super::SuiteResult;

/// Compact JSON with every float written to 17 significant digits.
struct Sci;

impl Formatter for Sci {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

/// JSON rendering; non-finite defects become `null`.
pub fn to_json(result: &SuiteResult) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, Sci);
    result.serialize(&mut ser).expect("suite result serializes");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

pub fn to_text(result: &SuiteResult) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "scenario {}  suite {}  seed {}  points {}",
        result.scenario, result.suite, result.seed, result.samples
    );
    for c in &result.checks {
        let _ = writeln!(
            out,
            "{} {:<42} defect {:>10.3e}  tol {:.0e}  at {}\n       {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.id,
            c.defect,
            c.tol,
            c.point,
            c.anchor
        );
    }
    for n in &result.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(
        out,
        "{}: {} passed, {} failed ({:.3} s)",
        if result.pass { "PASS" } else { "FAIL" },
        result.passed,
        result.failed,
        result.wall_time_s
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldexpr::Point;
    use crate::verify::CheckRecord;

    fn sample(defect: f64) -> SuiteResult {
        SuiteResult {
            scenario: "s".into(),
            suite: "structure".into(),
            seed: 7,
            samples: 1,
            checks: vec![CheckRecord {
                id: "structure.q_cubed".into(),
                anchor: "q^3 = E".into(),
                defect,
                tol: 1e-10,
                point: Point::new(0.1, 0.0, -1.0),
                pass: defect < 1e-10,
            }],
            pass: defect < 1e-10,
            passed: 1,
            failed: 0,
            notes: vec![],
            wall_time_s: 0.0,
        }
    }

    #[test]
    fn floats_carry_seventeen_digits() {
        let json = to_json(&sample(0.1));
        assert!(json.contains("\"defect\":1.0000000000000001e-1"), "{json}");
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["checks"][0]["defect"].as_f64(), Some(0.1));
        assert_eq!(v["seed"].as_u64(), Some(7));
    }

    #[test]
    fn nan_becomes_null() {
        let json = to_json(&sample(f64::NAN));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(v["checks"][0]["defect"].is_null());
        assert_eq!(v["checks"][0]["pass"], serde_json::Value::Bool(false));
    }

    #[test]
    fn text_lists_checks() {
        let text = to_text(&sample(0.0));
        assert!(text.contains("PASS structure.q_cubed"));
        assert!(text.ends_with("(0.000 s)\n"));
    }
}
