//! Textual names for built-in meshes, model fields, and test maps, so the
//! paper-scale examples reproduce without any input files.

use crate::complex::{
    cube_sphere, icosahedron, klein_grid, projective_plane_6, refined_icosahedron, tetrahedron,
    torus_grid, ComplexError, SurfaceComplex,
};
use crate::fields::ModelField;
use std::path::PathBuf;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("unknown mesh `{0}`; expected tetrahedron, cube_sphere, icosahedron, ico:L, torus:MxN, klein:MxN, or rp2")]
    UnknownMesh(String),
    #[error("unknown field `{0}`; expected power:K, conj:K, const, const:DX,DY, or csv:PATH")]
    UnknownField(String),
    #[error("unknown circle map `{0}`; expected identity, mult:K, or sine:A")]
    UnknownCircleMap(String),
    #[error("unknown sphere map `{0}`; expected identity, antipodal, gauss:power:K, or gauss:conj:K")]
    UnknownSphereMap(String),
    #[error("`{0}` must use a power K >= 1")]
    ZeroPower(String),
}

/// A built-in mesh name such as `torus:4x4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeshSpec {
    Tetrahedron,
    CubeSphere,
    Icosahedron,
    RefinedIcosahedron(u32),
    Torus(usize, usize),
    Klein(usize, usize),
    ProjectivePlane,
}

impl FromStr for MeshSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let unknown = || SpecError::UnknownMesh(s.to_string());
        match s {
            "tetrahedron" => Ok(MeshSpec::Tetrahedron),
            "cube_sphere" => Ok(MeshSpec::CubeSphere),
            "icosahedron" => Ok(MeshSpec::Icosahedron),
            "rp2" => Ok(MeshSpec::ProjectivePlane),
            _ => {
                if let Some(level) = s.strip_prefix("ico:") {
                    return level.parse().map(MeshSpec::RefinedIcosahedron).map_err(|_| unknown());
                }
                let grid = |body: &str| -> Option<(usize, usize)> {
                    let (m, n) = body.split_once('x')?;
                    Some((m.parse().ok()?, n.parse().ok()?))
                };
                if let Some(body) = s.strip_prefix("torus:") {
                    let (m, n) = grid(body).ok_or_else(unknown)?;
                    return Ok(MeshSpec::Torus(m, n));
                }
                if let Some(body) = s.strip_prefix("klein:") {
                    let (m, n) = grid(body).ok_or_else(unknown)?;
                    return Ok(MeshSpec::Klein(m, n));
                }
                Err(unknown())
            }
        }
    }
}

impl MeshSpec {
    pub fn build(&self) -> Result<SurfaceComplex, ComplexError> {
        match *self {
            MeshSpec::Tetrahedron => Ok(tetrahedron()),
            MeshSpec::CubeSphere => Ok(cube_sphere()),
            MeshSpec::Icosahedron => Ok(icosahedron()),
            MeshSpec::RefinedIcosahedron(level) => Ok(refined_icosahedron(level)),
            MeshSpec::Torus(m, n) => torus_grid(m, n),
            MeshSpec::Klein(m, n) => klein_grid(m, n),
            MeshSpec::ProjectivePlane => Ok(projective_plane_6()),
        }
    }
}

/// A model-field name such as `power:2` or `csv:field.csv`.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldSpec {
    Power(u32),
    Conj(u32),
    Constant([f64; 2]),
    Csv(PathBuf),
}

impl FromStr for FieldSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let unknown = || SpecError::UnknownField(s.to_string());
        if s == "const" {
            return Ok(FieldSpec::Constant([1.0, 0.0]));
        }
        if let Some(body) = s.strip_prefix("const:") {
            let (dx, dy) = body.split_once(',').ok_or_else(unknown)?;
            let d = [
                dx.trim().parse().map_err(|_| unknown())?,
                dy.trim().parse().map_err(|_| unknown())?,
            ];
            return Ok(FieldSpec::Constant(d));
        }
        if let Some(k) = s.strip_prefix("power:") {
            let k: u32 = k.parse().map_err(|_| unknown())?;
            if k == 0 {
                return Err(SpecError::ZeroPower(s.to_string()));
            }
            return Ok(FieldSpec::Power(k));
        }
        if let Some(k) = s.strip_prefix("conj:") {
            let k: u32 = k.parse().map_err(|_| unknown())?;
            if k == 0 {
                return Err(SpecError::ZeroPower(s.to_string()));
            }
            return Ok(FieldSpec::Conj(k));
        }
        if let Some(path) = s.strip_prefix("csv:") {
            return Ok(FieldSpec::Csv(PathBuf::from(path)));
        }
        Err(unknown())
    }
}

impl FieldSpec {
    /// Builds the field; `Csv` reads and parses the file.
    pub fn build(&self) -> Result<ModelField, Box<dyn std::error::Error>> {
        Ok(match self {
            FieldSpec::Power(k) => ModelField::Power(*k),
            FieldSpec::Conj(k) => ModelField::ConjPower(*k),
            FieldSpec::Constant(d) => ModelField::Constant(*d),
            FieldSpec::Csv(path) => {
                let text = std::fs::read_to_string(path)?;
                crate::fields::parse_field_csv(&text)?
            }
        })
    }
}

/// A circle-map name such as `mult:3` or `sine:1.5`.
#[derive(Debug, Clone, PartialEq)]
pub enum CircleMapSpec {
    Identity,
    Mult(u32),
    Sine(f64),
}

impl FromStr for CircleMapSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let unknown = || SpecError::UnknownCircleMap(s.to_string());
        match s {
            "identity" => Ok(CircleMapSpec::Identity),
            _ => {
                if let Some(k) = s.strip_prefix("mult:") {
                    return k.parse().map(CircleMapSpec::Mult).map_err(|_| unknown());
                }
                if let Some(a) = s.strip_prefix("sine:") {
                    let a: f64 = a.parse().map_err(|_| unknown())?;
                    if !a.is_finite() {
                        return Err(unknown());
                    }
                    return Ok(CircleMapSpec::Sine(a));
                }
                Err(unknown())
            }
        }
    }
}

/// A sphere-map name such as `antipodal` or `gauss:power:2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SphereMapSpec {
    Identity,
    Antipodal,
    GaussPower(u32),
    GaussConj(u32),
}

impl FromStr for SphereMapSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let unknown = || SpecError::UnknownSphereMap(s.to_string());
        match s {
            "identity" => Ok(SphereMapSpec::Identity),
            "antipodal" => Ok(SphereMapSpec::Antipodal),
            _ => {
                let power = |k: &str| -> Result<u32, SpecError> {
                    let k: u32 = k.parse().map_err(|_| unknown())?;
                    if k == 0 {
                        return Err(SpecError::ZeroPower(s.to_string()));
                    }
                    Ok(k)
                };
                if let Some(k) = s.strip_prefix("gauss:power:") {
                    return Ok(SphereMapSpec::GaussPower(power(k)?));
                }
                if let Some(k) = s.strip_prefix("gauss:conj:") {
                    return Ok(SphereMapSpec::GaussConj(power(k)?));
                }
                Err(unknown())
            }
        }
    }
}
