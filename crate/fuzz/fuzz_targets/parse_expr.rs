#![no_main]

use cvgeom::fieldexpr::ScalarField;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(field) = ScalarField::parse(text) {
        let printed = field.pretty();
        let again = ScalarField::parse(&printed).expect("printed form reparses");
        assert_eq!(again.ast(), field.ast(), "{printed}");
    }
});
