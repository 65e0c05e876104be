#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(field) = poincare_hopf::fields::parse_field_csv(text) {
        // Evaluation of a parsed table is total.
        let _ = field.eval([0.25, -0.75]);
        let _ = field.eval([0.0, 0.0]);
    }
});
