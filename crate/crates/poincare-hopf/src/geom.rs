//! Small fixed-size vector helpers shared by the geometric kernels.

pub(crate) fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn add3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub(crate) fn scale3(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

pub(crate) fn normalize3(a: [f64; 3]) -> [f64; 3] {
    let n = norm3(a);
    scale3(a, 1.0 / n)
}

/// Scalar triple product a . (b x c).
pub(crate) fn triple3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    dot3(a, cross3(b, c))
}

pub(crate) fn dist3(a: [f64; 3], b: [f64; 3]) -> f64 {
    norm3(sub3(a, b))
}

/// Unsigned angle between two nonzero 3D vectors, in [0, pi].
pub(crate) fn angle3(a: [f64; 3], b: [f64; 3]) -> f64 {
    // atan2 of (|a x b|, a . b) is stable for near-parallel vectors,
    // unlike acos of the normalized dot product.
    norm3(cross3(a, b)).atan2(dot3(a, b))
}

pub(crate) fn dot2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub(crate) fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub(crate) fn norm2(a: [f64; 2]) -> f64 {
    dot2(a, a).sqrt()
}

/// Signed angle from a to b in (-pi, pi].
pub(crate) fn signed_angle2(a: [f64; 2], b: [f64; 2]) -> f64 {
    cross2(a, b).atan2(dot2(a, b))
}

/// Sum with a fixed pairwise reduction tree, independent of chunking.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => pairwise_sum(&values[..n / 2]) + pairwise_sum(&values[n / 2..]),
    }
}
