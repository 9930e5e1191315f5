#![no_main]

use cvgeom::classv::{metrics_at, Scenario};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(s) = Scenario::from_json(text) else {
        return;
    };
    let back = Scenario::from_json(&s.to_json()).expect("serialized scenario reloads");
    assert_eq!(back.to_json(), s.to_json());
    let centre = cvgeom::fieldexpr::Point([0, 1, 2].map(|i| 0.5 * (s.domain.min[i] + s.domain.max[i])));
    let _ = metrics_at(&s, &centre);
});
