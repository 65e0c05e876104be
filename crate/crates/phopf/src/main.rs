//! `phopf`: command-line verification of the Poincare-Hopf chain on
//! triangulated surfaces.
//!
//! Every subcommand prints one JSON report to stdout and exits with 0 when
//! the mathematical verdict passes, 2 when it fails, and 1 on input errors.

use clap::{Parser, Subcommand};
use poincare_hopf::complex::{off, ComplexError, SurfaceComplex};
use poincare_hopf::cover::orientation_double_cover;
use poincare_hopf::degree::{
    circle_crossings, circle_degree_regular_value, circle_degree_winding,
    radial_extension_gauss_map, sphere_degree_regular_value, sphere_degree_regular_value_seeded,
    sphere_degree_solid_angle, verify_extension_lemma, CircleMap, DegreeError, SphereMap,
};
use poincare_hopf::fields::{hopf_index_report, morse_sum, planar_index, random_pl_function};
use poincare_hopf::parse::{CircleMapSpec, FieldSpec, MeshSpec, SphereMapSpec};
use poincare_hopf::subdivide::BarycenterKind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "phopf", version, about = "Poincare-Hopf verification on triangulated surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a mesh and report chi, orientability, and genus.
    Audit { mesh: String },
    /// Index table of the Hopf field on the barycentric subdivision.
    Hopf { mesh: String },
    /// Index of a planar model field at the origin.
    Index {
        /// power:K, conj:K, const, const:DX,DY, or csv:PATH
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Degree of a circle map by winding and by regular-value crossings.
    #[command(name = "degree-s1")]
    DegreeS1 {
        /// identity, mult:K, or sine:A
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Regular value to count crossings at; seeded search when absent.
        #[arg(long)]
        value: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Degree of a sphere map by solid angle and by a regular value.
    #[command(name = "degree-s2")]
    DegreeS2 {
        /// identity, antipodal, gauss:power:K, or gauss:conj:K
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 2)]
        level: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Radial-extension check: planar index vs sphere degree, twice.
    Lemma {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 3)]
        level: u32,
    },
    /// Orientation double cover, with optional OFF and CSV exports.
    Cover {
        mesh: String,
        /// Write the cover mesh as OFF.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the projection and deck maps as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Hopf index table plus seeded random-function index sums.
    Verify {
        mesh: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct Report {
    schema: u32,
    command: String,
    input: Value,
    seed: u64,
    results: Value,
    pass: bool,
    wall_ms: u64,
}

/// Input problems: unreadable files, unparsable meshes, bad flag values.
struct InputError(String);

impl<E: std::error::Error> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli.command) {
        Ok((report, pass)) => {
            let report = Report { wall_ms: started.elapsed().as_millis() as u64, ..report };
            let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
            // A consumer that stops reading (e.g. `| head`) is not an error.
            if let Err(e) = writeln!(std::io::stdout(), "{rendered}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("phopf: writing report: {e}");
                    return ExitCode::from(1);
                }
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(InputError(message)) => {
            eprintln!("phopf: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(command: &Command) -> Result<(Report, bool), InputError> {
    match command {
        Command::Audit { mesh } => cmd_audit(mesh),
        Command::Hopf { mesh } => cmd_hopf(mesh),
        Command::Index { field, radius, samples } => cmd_index(field, *radius, *samples),
        Command::DegreeS1 { map, samples, value, seed } => {
            cmd_degree_s1(map, *samples, *value, *seed)
        }
        Command::DegreeS2 { map, level, seed } => cmd_degree_s2(map, *level, *seed),
        Command::Lemma { field, level } => cmd_lemma(field, *level),
        Command::Cover { mesh, output, csv } => cmd_cover(mesh, output.as_deref(), csv.as_deref()),
        Command::Verify { mesh, trials, seed } => cmd_verify(mesh, *trials, *seed),
    }
}

fn report(command: &str, input: Value, seed: u64, results: Value, pass: bool) -> (Report, bool) {
    (
        Report { schema: 1, command: command.into(), input, seed, results, pass, wall_ms: 0 },
        pass,
    )
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// A mesh argument that at least parsed: either a valid complex or a
/// well-formed OFF file that failed the closed-surface validation.
enum MeshLoad {
    Valid(SurfaceComplex, Value),
    Invalid { diagnostic: ComplexError, input: Value },
}

/// Resolves a mesh argument: a built-in name, otherwise an OFF file path.
/// The digest hashes the file bytes, or the canonical OFF serialization of
/// a built-in mesh.
fn resolve_mesh_lenient(arg: &str) -> Result<MeshLoad, InputError> {
    if let Ok(spec) = arg.parse::<MeshSpec>() {
        let mesh = spec.build()?;
        let echo = json!({ "source": arg, "digest": digest(off::write_off(&mesh).as_bytes()) });
        return Ok(MeshLoad::Valid(mesh, echo));
    }
    if !std::path::Path::new(arg).exists() {
        return Err(InputError(format!(
            "`{arg}` is neither a built-in mesh name nor an existing file"
        )));
    }
    let bytes = std::fs::read(arg).map_err(|e| InputError(format!("reading {arg}: {e}")))?;
    let input = json!({ "source": arg, "digest": digest(&bytes) });
    match off::parse_off(&bytes) {
        Ok(mesh) => Ok(MeshLoad::Valid(mesh, input)),
        Err(off::OffError::Complex(diagnostic)) => Ok(MeshLoad::Invalid { diagnostic, input }),
        Err(e) => Err(e.into()),
    }
}

fn resolve_mesh(arg: &str) -> Result<(SurfaceComplex, Value), InputError> {
    match resolve_mesh_lenient(arg)? {
        MeshLoad::Valid(mesh, input) => Ok((mesh, input)),
        MeshLoad::Invalid { diagnostic, .. } => Err(diagnostic.into()),
    }
}

fn cmd_audit(mesh_arg: &str) -> Result<(Report, bool), InputError> {
    // Unlike the other commands, audit treats an invalid-but-parsable mesh
    // as a negative verdict rather than an input error.
    let (mesh, input) = match resolve_mesh_lenient(mesh_arg)? {
        MeshLoad::Valid(mesh, input) => (mesh, input),
        MeshLoad::Invalid { diagnostic, input } => {
            let results = json!({ "valid": false, "diagnostic": diagnostic.to_string() });
            return Ok(report("audit", input, 0, results, false));
        }
    };
    let euler = mesh.euler_characteristic();
    let connected = mesh.is_connected();
    let orientation = mesh.orient();
    let genus = if connected {
        let g = mesh.genus().expect("connected mesh has a genus");
        json!(g.genus)
    } else {
        Value::Null
    };
    let results = json!({
        "valid": true,
        "vertices": mesh.vertex_count(),
        "edges": mesh.edge_count(),
        "triangles": mesh.triangle_count(),
        "euler": euler,
        "orientable": orientation.is_orientable(),
        "connected": connected,
        "components": mesh.component_count(),
        "genus": genus,
    });
    Ok(report("audit", input, 0, results, true))
}

fn kind_name(kind: Option<BarycenterKind>) -> &'static str {
    match kind {
        Some(BarycenterKind::Vertex) => "vertex",
        Some(BarycenterKind::Edge) => "edge",
        Some(BarycenterKind::Triangle) => "triangle",
        None => "none",
    }
}

fn cmd_hopf(mesh_arg: &str) -> Result<(Report, bool), InputError> {
    let (mesh, input) = resolve_mesh(mesh_arg)?;
    let euler = mesh.euler_characteristic();
    let table = hopf_index_report(&mesh)?;
    let entries: Vec<Value> = table
        .entries
        .iter()
        .map(|e| json!({ "vertex": e.vertex, "kind": kind_name(e.kind), "index": e.index }))
        .collect();
    let pass = table.total == euler;
    let results = json!({
        "euler": euler,
        "total": table.total,
        "entries": entries,
    });
    Ok(report("hopf", input, 0, results, pass))
}

/// Input echo for symbolic arguments: the digest hashes the name itself,
/// except CSV fields, whose file contents are hashed.
fn name_input(arg: &str) -> Value {
    json!({ "source": arg, "digest": digest(arg.as_bytes()) })
}

fn field_input(arg: &str, spec: &FieldSpec) -> Value {
    match spec {
        FieldSpec::Csv(path) => {
            let hashed = std::fs::read(path).map(|b| digest(&b)).unwrap_or_default();
            json!({ "source": arg, "digest": hashed })
        }
        _ => name_input(arg),
    }
}

fn cmd_index(field_arg: &str, radius: f64, samples: usize) -> Result<(Report, bool), InputError> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(InputError(format!("radius must be positive, got {radius}")));
    }
    let spec: FieldSpec = field_arg.parse()?;
    let field = spec.build().map_err(|e| InputError(e.to_string()))?;
    let input = field_input(field_arg, &spec);
    let index = planar_index(&field, radius, samples)?;
    let index_half = planar_index(&field, radius / 2.0, samples)?;
    let pass = index == index_half;
    let results = json!({
        "field": field_arg,
        "radius": radius,
        "samples": samples,
        "index": index,
        "index_at_half_radius": index_half,
    });
    Ok(report("index", input, 0, results, pass))
}

fn build_circle_map(spec: &CircleMapSpec, samples: usize) -> Result<CircleMap, DegreeError> {
    match spec {
        CircleMapSpec::Identity => CircleMap::identity(samples),
        CircleMapSpec::Mult(k) => CircleMap::mult(*k, samples),
        CircleMapSpec::Sine(a) => CircleMap::sine(*a, samples),
    }
}

fn cmd_degree_s1(
    map_arg: &str,
    samples: usize,
    value: Option<f64>,
    seed: u64,
) -> Result<(Report, bool), InputError> {
    let spec: CircleMapSpec = map_arg.parse()?;
    let map = build_circle_map(&spec, samples)?;
    let winding = circle_degree_winding(&map)?;
    let (used_value, crossings) = match value {
        Some(y) => (y, circle_crossings(&map, y)?),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut found = None;
            for _ in 0..64 {
                let y = rng.gen_range(0.0..std::f64::consts::TAU);
                match circle_crossings(&map, y) {
                    Ok(c) => {
                        found = Some((y, c));
                        break;
                    }
                    Err(DegreeError::NonRegularValue) => continue,
                    Err(e) => return Err(e.into()),
                }
            }
            found.ok_or_else(|| InputError("no regular value found in 64 draws".into()))?
        }
    };
    let regular = circle_degree_regular_value(&map, used_value)?;
    let crossing_rows: Vec<Value> =
        crossings.iter().map(|c| json!({ "arc": c.arc, "sign": c.sign })).collect();
    let pass = winding == regular;
    let results = json!({
        "map": map_arg,
        "samples": samples,
        "winding": winding,
        "regular_value": used_value,
        "crossings": crossing_rows,
        "crossing_degree": regular,
    });
    Ok(report("degree-s1", name_input(map_arg), seed, results, pass))
}

fn build_sphere_map(spec: &SphereMapSpec, level: u32) -> Result<SphereMap, DegreeError> {
    match spec {
        SphereMapSpec::Identity => Ok(SphereMap::identity(level)),
        SphereMapSpec::Antipodal => Ok(SphereMap::antipodal(level)),
        SphereMapSpec::GaussPower(k) => {
            radial_extension_gauss_map(&poincare_hopf::ModelField::Power(*k), level)
        }
        SphereMapSpec::GaussConj(k) => {
            radial_extension_gauss_map(&poincare_hopf::ModelField::ConjPower(*k), level)
        }
    }
}

fn cmd_degree_s2(map_arg: &str, level: u32, seed: u64) -> Result<(Report, bool), InputError> {
    let spec: SphereMapSpec = map_arg.parse()?;
    let map = build_sphere_map(&spec, level)?;
    let solid_angle = sphere_degree_solid_angle(&map)?;
    let (regular, y) = sphere_degree_regular_value_seeded(&map, seed)?;
    debug_assert_eq!(sphere_degree_regular_value(&map, y)?, regular);
    let pass = solid_angle == regular;
    let results = json!({
        "map": map_arg,
        "level": level,
        "solid_angle": solid_angle,
        "regular_value_degree": regular,
        "regular_value": y,
    });
    Ok(report("degree-s2", name_input(map_arg), seed, results, pass))
}

fn cmd_lemma(field_arg: &str, level: u32) -> Result<(Report, bool), InputError> {
    let spec: FieldSpec = field_arg.parse()?;
    let field = spec.build().map_err(|e| InputError(e.to_string()))?;
    let input = field_input(field_arg, &spec);
    let lemma = verify_extension_lemma(&field, level)?;
    let results = json!({
        "field": field_arg,
        "level": level,
        "planar_index": lemma.planar,
        "solid_angle_degree": lemma.solid_angle,
        "regular_value_degree": lemma.regular_value,
    });
    Ok(report("lemma", input, 0, results, lemma.pass))
}

fn cmd_cover(
    mesh_arg: &str,
    output: Option<&std::path::Path>,
    csv: Option<&std::path::Path>,
) -> Result<(Report, bool), InputError> {
    let (mesh, input) = resolve_mesh(mesh_arg)?;
    let dc = orientation_double_cover(&mesh)?;
    let cover = dc.cover();
    let base_euler = mesh.euler_characteristic();
    let doubling = cover.euler_characteristic() == 2 * base_euler;
    let orientable = cover.orient().is_orientable();
    let involution = (0..cover.vertex_count())
        .all(|v| dc.deck()[dc.deck()[v]] == v && dc.projection()[dc.deck()[v]] == dc.projection()[v]);
    let connectivity_matches = cover.is_connected() != mesh.orient().is_orientable();
    if let Some(path) = output {
        off::save_off(path, cover)?;
    }
    if let Some(path) = csv {
        std::fs::write(path, dc.maps_csv())?;
    }
    let pass = doubling && orientable && involution && connectivity_matches;
    let results = json!({
        "base": { "euler": base_euler, "orientable": mesh.orient().is_orientable() },
        "cover": {
            "vertices": cover.vertex_count(),
            "edges": cover.edge_count(),
            "triangles": cover.triangle_count(),
            "euler": cover.euler_characteristic(),
            "orientable": orientable,
            "components": cover.component_count(),
        },
        "euler_doubles": doubling,
        "deck_involution_ok": involution,
        "connected_iff_base_nonorientable": connectivity_matches,
        "off_written": output.map(|p| p.display().to_string()),
        "csv_written": csv.map(|p| p.display().to_string()),
    });
    Ok(report("cover", input, 0, results, pass))
}

fn cmd_verify(mesh_arg: &str, trials: usize, seed: u64) -> Result<(Report, bool), InputError> {
    let (mesh, input) = resolve_mesh(mesh_arg)?;
    let euler = mesh.euler_characteristic();
    let table = hopf_index_report(&mesh)?;
    let hopf_pass = table.total == euler;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trials_passed = 0usize;
    let mut first_failure = Value::Null;
    for trial in 0..trials {
        let f = random_pl_function(mesh.vertex_count(), &mut rng);
        let sum = morse_sum(&mesh, &f)?;
        if sum == euler {
            trials_passed += 1;
        } else if first_failure.is_null() {
            first_failure = json!({ "trial": trial, "sum": sum });
        }
    }
    let pass = hopf_pass && trials_passed == trials;
    let results = json!({
        "euler": euler,
        "hopf_total": table.total,
        "hopf_pass": hopf_pass,
        "trials": trials,
        "trials_passed": trials_passed,
        "first_failure": first_failure,
    });
    Ok(report("verify", input, seed, results, pass))
}
