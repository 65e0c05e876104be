#![no_main]

use libfuzzer_sys::fuzz_target;

// Parsing arbitrary bytes must never panic; a successful parse must produce
// a complex whose derived tables are consistent.
fuzz_target!(|data: &[u8]| {
    if let Ok(mesh) = poincare_hopf::complex::off::parse_off(data) {
        assert_eq!(
            mesh.euler_characteristic(),
            mesh.vertex_count() as i64 - mesh.edge_count() as i64 + mesh.triangle_count() as i64
        );
        let text = poincare_hopf::complex::off::write_off(&mesh);
        let back = poincare_hopf::complex::off::parse_off(text.as_bytes())
            .expect("serialized mesh re-parses");
        assert_eq!(back.vertices(), mesh.vertices());
        assert_eq!(back.triangles(), mesh.triangles());
    }
});
