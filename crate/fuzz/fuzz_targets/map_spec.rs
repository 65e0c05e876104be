#![no_main]

use libfuzzer_sys::fuzz_target;
use poincare_hopf::degree::CircleMap;
use poincare_hopf::parse::{CircleMapSpec, FieldSpec, SphereMapSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = text.parse::<SphereMapSpec>();
    let _ = text.parse::<FieldSpec>();
    if let Ok(spec) = text.parse::<CircleMapSpec>() {
        let map = match spec {
            CircleMapSpec::Identity => CircleMap::identity(64),
            CircleMapSpec::Mult(k) if k <= 1 << 16 => CircleMap::mult(k, 64),
            CircleMapSpec::Sine(a) => CircleMap::sine(a, 64),
            _ => return,
        };
        if let Ok(map) = map {
            // Any validated map has a well-defined winding degree.
            let _ = poincare_hopf::degree::circle_degree_winding(&map).unwrap();
        }
    }
});
