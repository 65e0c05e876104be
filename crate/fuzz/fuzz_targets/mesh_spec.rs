#![no_main]

use libfuzzer_sys::fuzz_target;
use poincare_hopf::parse::MeshSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = text.parse::<MeshSpec>() else { return };
    // Build only inputs small enough to stay cheap under the fuzzer.
    let small = match spec {
        MeshSpec::Torus(m, n) | MeshSpec::Klein(m, n) => m <= 32 && n <= 32,
        MeshSpec::RefinedIcosahedron(level) => level <= 3,
        _ => true,
    };
    if small {
        if let Ok(mesh) = spec.build() {
            assert!(mesh.vertex_count() >= 4);
            assert!(mesh.orient().is_orientable() || !matches!(spec, MeshSpec::Torus(..)));
        }
    }
});
