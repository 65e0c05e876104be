//! ASCII OFF reader and writer.
//!
//! Accepted input: an `OFF` header line, a `nV nF nE` counts line (`nE` may
//! be 0), `nV` vertex lines of three coordinates, and `nF` face lines of the
//! form `3 i j k`. Blank lines and `#` comments are skipped anywhere. The
//! reader returns a fully validated [`SurfaceComplex`].

use super::{ComplexError, SurfaceComplex};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OffError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("input is not valid utf-8")]
    NotUtf8,
    #[error("missing OFF header")]
    MissingHeader,
    #[error("line {line}: expected `nV nF nE` counts")]
    BadCounts { line: usize },
    #[error("line {line}: expected 3 vertex coordinates")]
    BadVertex { line: usize },
    #[error("line {line}: face has {n} vertices, only triangles are supported")]
    NonTriangleFace { line: usize, n: usize },
    #[error("line {line}: malformed face")]
    BadFace { line: usize },
    #[error("file ends before the declared {expected} {what} lines")]
    Truncated { what: &'static str, expected: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Parses OFF text and validates the resulting complex.
pub fn parse_off(bytes: &[u8]) -> Result<SurfaceComplex, OffError> {
    let text = std::str::from_utf8(bytes).map_err(|_| OffError::NotUtf8)?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (_, header) = lines.next().ok_or(OffError::MissingHeader)?;
    if header != "OFF" {
        return Err(OffError::MissingHeader);
    }
    let (line, counts) = lines.next().ok_or(OffError::BadCounts { line: 0 })?;
    let counts: Vec<usize> = counts
        .split_whitespace()
        .map(|w| w.parse().map_err(|_| OffError::BadCounts { line }))
        .collect::<Result<_, _>>()?;
    let [nv, nf, _ne] = counts[..] else {
        return Err(OffError::BadCounts { line });
    };

    let mut vertices = Vec::new();
    for _ in 0..nv {
        let (line, l) = lines
            .next()
            .ok_or(OffError::Truncated { what: "vertex", expected: nv })?;
        let coords: Vec<f64> = l
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| OffError::BadVertex { line }))
            .collect::<Result<_, _>>()?;
        let [x, y, z] = coords[..] else {
            return Err(OffError::BadVertex { line });
        };
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(OffError::BadVertex { line });
        }
        vertices.push([x, y, z]);
    }

    let mut triangles = Vec::new();
    for _ in 0..nf {
        let (line, l) = lines
            .next()
            .ok_or(OffError::Truncated { what: "face", expected: nf })?;
        let fields: Vec<usize> = l
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| OffError::BadFace { line }))
            .collect::<Result<_, _>>()?;
        let Some((&n, ids)) = fields.split_first() else {
            return Err(OffError::BadFace { line });
        };
        if n != 3 {
            return Err(OffError::NonTriangleFace { line, n });
        }
        let [i, j, k] = ids[..] else {
            return Err(OffError::BadFace { line });
        };
        triangles.push([i, j, k]);
    }

    Ok(SurfaceComplex::build(vertices, triangles)?)
}

/// Serializes a complex as OFF with exact counts and 17-significant-digit
/// coordinates, enough to round-trip every f64 bit-exactly.
pub fn write_off(k: &SurfaceComplex) -> String {
    let mut out = String::new();
    out.push_str("OFF\n");
    out.push_str(&format!(
        "{} {} {}\n",
        k.vertex_count(),
        k.triangle_count(),
        k.edge_count()
    ));
    for p in k.vertices() {
        out.push_str(&format!("{:.16e} {:.16e} {:.16e}\n", p[0], p[1], p[2]));
    }
    for t in k.triangles() {
        out.push_str(&format!("3 {} {} {}\n", t[0], t[1], t[2]));
    }
    out
}

pub fn load_off(path: impl AsRef<Path>) -> Result<SurfaceComplex, OffError> {
    parse_off(&std::fs::read(path)?)
}

pub fn save_off(path: impl AsRef<Path>, k: &SurfaceComplex) -> Result<(), OffError> {
    Ok(std::fs::write(path, write_off(k))?)
}
