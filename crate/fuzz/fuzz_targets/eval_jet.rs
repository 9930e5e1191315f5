#![no_main]

use cvgeom::fieldexpr::{Point, ScalarField};
use libfuzzer_sys::fuzz_target;

// First 24 bytes: the point; the rest: expression text.
fuzz_target!(|data: &[u8]| {
    if data.len() < 24 {
        return;
    }
    let (head, tail) = data.split_at(24);
    let coord = |i: usize| f64::from_le_bytes(head[8 * i..8 * i + 8].try_into().unwrap());
    let p = Point::new(coord(0), coord(1), coord(2));
    let Ok(text) = std::str::from_utf8(tail) else {
        return;
    };
    let Ok(field) = ScalarField::parse(text) else {
        return;
    };
    if let Ok(j) = field.eval_jet2(&p) {
        assert!(j.value.is_finite() && j.grad.iter().all(|g| g.is_finite()));
        let v = field.eval(&p).expect("plain evaluation succeeds where the jet does");
        assert!(v.is_finite());
    }
});
