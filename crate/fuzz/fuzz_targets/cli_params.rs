#![no_main]

use cvgeom::classv::{builtin_scenario, Family, Scenario};
use cvgeom::verify::parse_params;
use libfuzzer_sys::fuzz_target;

// `family|key=value,...`
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let (family, params) = text.split_once('|').unwrap_or((text, ""));
    let Ok(params) = parse_params(params) else {
        return;
    };
    let Ok(family) = Family::from_params(family, &params) else {
        return;
    };
    if let Ok(s) = builtin_scenario(&family) {
        Scenario::from_json(&s.to_json()).expect("generated scenario reloads");
    }
});
