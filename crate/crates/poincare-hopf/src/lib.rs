//! Computational verification of the Poincare-Hopf theorem on closed
//! triangulated surfaces.
//!
//! The crate covers the full chain of the theorem at mesh scale:
//!
//! - [`complex`]: validated closed surface complexes, Euler characteristic,
//!   orientability, genus, built-in generators, and OFF files;
//! - [`subdivide`]: barycentric subdivision with labeled barycenters;
//! - [`chart`]: planar star charts and the winding-number kernel;
//! - [`fields`]: model planar fields, the Hopf field on a subdivision, and
//!   the combinatorial and gradient-winding index algorithms;
//! - [`degree`]: degrees of circle and sphere maps by two independent
//!   algorithms each, and the radial-extension index check;
//! - [`cover`]: the orientation double cover with projection and deck maps;
//! - [`parse`]: textual names for the built-in meshes, fields, and maps.
//!
//! The headline identity, sum of singularity indices = chi, is exercised by
//! [`fields::hopf_index_report`] for the Hopf field and by
//! [`fields::morse_sum`] for arbitrary generic piecewise-linear functions.

pub mod chart;
pub mod complex;
pub mod cover;
pub mod degree;
pub mod fields;
mod geom;
pub mod parse;
pub mod subdivide;

pub use chart::{Chart, ChartError, LoopSamples};
pub use complex::{ComplexError, GenusReport, OrientationResult, SurfaceComplex};
pub use cover::DoubleCover;
pub use degree::{CircleMap, DegreeError, LemmaReport, SphereMap};
pub use fields::{FieldError, IndexReport, ModelField, PLFunction};
pub use subdivide::{BarycenterKind, SubdividedComplex};
