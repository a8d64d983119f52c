//! `spinlab` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 parse/validation
//! failure, 3 size bound exceeded, 4 invariant constraint violated.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::gf::{GfVector, Prime};
use crate::io::{parse_matrix_file, parse_vectors, random_alternating, write_matrix_file, MatrixFile};
use crate::rep::{canonical_irreducible_rep, irreducible_rep, prop11_rep, verify_relations, Limits, RepKind, Representation, RepresentationJson};
use crate::report::{rank_growth, structure_report, RankGrowth, StructureReport};
use crate::symplectic::{clifford_matrix, matrix_from_basis, symplectic_basis, CommutationMatrix, SymplecticBasis};
use crate::words::{count_classes, enumerate_invariants, InvariantJson, StandardInvariant};

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_DIM_ENV: &str = "SPINLAB_MAX_DIM";

#[derive(Debug, Parser)]
#[command(name = "spinlab", version, about = "Structure, representations and invariants of spin systems over Z_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, center and structure descriptor of a commutation matrix.
    Analyze {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// Number of generators for a Toeplitz file (default: pattern length + 1).
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Symplectic basis `e_i, f_i` and kernel basis, as JSON.
    Basis {
        path: PathBuf,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Exact monomial representation, as JSON.
    Represent {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Prop11)]
        kind: Kind,
        /// Target standard invariant (JSON) for `--kind irr`.
        #[arg(long)]
        invariant: Option<PathBuf>,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// All standard invariants of irreducible systems (p = 2), as JSON.
    Classify {
        path: PathBuf,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Write a matrix file.
    Generate(GenerateArgs),
    /// Rank of each prefix of a Toeplitz system.
    Grow {
        path: PathBuf,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Prop11,
    Irr,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, short, default_value_t = 2)]
    pub p: u32,
    /// Generators taken from a Toeplitz reference.
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// n pairwise anticommuting generators.
    #[arg(long, value_name = "N")]
    pub clifford: Option<usize>,
    /// Uniformly random alternating N x N matrix; needs --seed.
    #[arg(long, value_name = "N", requires = "seed")]
    pub random: Option<usize>,
    /// `c_ij = omega_ref(v_i, v_j)` for the vectors listed in BASISFILE.
    #[arg(long, num_args = 2, value_names = ["REF", "BASISFILE"])]
    pub from_basis: Option<Vec<PathBuf>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError { code: 1, message: format!("{}: {e}", path.display()) }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::InvalidPrime(_)
        | Error::ValueOutOfRange { .. }
        | Error::ModulusMismatch { .. }
        | Error::LengthMismatch { .. }
        | Error::NotAlternating { .. }
        | Error::BasisMismatch => 2,
        Error::SizeBound { .. } | Error::KernelTooLarge { .. } => 3,
        Error::InvariantConstraint(_) | Error::Reducible { .. } => 4,
        _ => 1,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError { code: exit_code(&e), message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Default limits, with `max_dim` overridden by `SPINLAB_MAX_DIM`.
pub fn limits_from_env() -> CliResult<Limits> {
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var(MAX_DIM_ENV) {
        limits.max_dim = v
            .trim()
            .parse()
            .map_err(|_| CliError { code: 2, message: format!("{MAX_DIM_ENV}: not a non-negative integer: {v:?}") })?;
    }
    Ok(limits)
}

/// Envelope shared by every JSON document.
#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    schema: u32,
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    result: T,
}

fn to_json<T: Serialize>(command: &str, result: T) -> String {
    let doc = Document { schema: SCHEMA_VERSION, tool: "spinlab", version: env!("CARGO_PKG_VERSION"), command, result };
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
    s.push('\n');
    s
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn with_path(path: &Path, e: Error) -> CliError {
    let code = exit_code(&e);
    CliError { code, message: format!("{}: {e}", path.display()) }
}

fn load(path: &Path) -> CliResult<MatrixFile> {
    parse_matrix_file(&read(path)?).map_err(|e| with_path(path, e))
}

fn load_matrix(path: &Path, n_max: Option<usize>) -> CliResult<CommutationMatrix> {
    load(path)?.matrix(n_max).map_err(|e| with_path(path, e))
}

fn vec_text(v: &GfVector) -> String {
    let parts: Vec<String> = v.as_slice().iter().map(u8::to_string).collect();
    format!("({})", parts.join(", "))
}

fn count_text(v: Option<u128>, p: u32, e: usize) -> String {
    v.map_or_else(|| format!("{p}^{e}"), |v| v.to_string())
}

fn growth_text(g: &RankGrowth, out: &mut String) {
    writeln!(out, "{:>4} {:>6} {:>10}", "n", "rank", "kernel_dim").unwrap();
    for row in &g.rows {
        write!(out, "{:>4} {:>6} {:>10}", row.n, row.rank, row.kernel_dim).unwrap();
        if !row.rebuilt_pairs.is_empty() {
            write!(out, "  rebuilt {:?}", row.rebuilt_pairs).unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "infinite rank conjectured: {} ({})", g.infinite_rank_conjectured, g.note).unwrap();
}

fn analyze_text(r: &StructureReport) -> String {
    let mut out = String::new();
    writeln!(out, "p = {}, n = {}", r.p, r.n).unwrap();
    writeln!(out, "rank = {} (r = {})", r.rank, r.r).unwrap();
    writeln!(out, "kernel dimension = {}", r.kernel_dim).unwrap();
    if r.kernel_basis.is_empty() {
        writeln!(out, "kernel basis: none").unwrap();
    } else {
        writeln!(out, "kernel basis:").unwrap();
        for k in &r.kernel_basis {
            writeln!(out, "  {}", vec_text(k)).unwrap();
        }
    }
    writeln!(out, "center dimension = {}", count_text(r.center_dim, r.p, r.kernel_dim)).unwrap();
    writeln!(out, "descriptor = {}", r.descriptor).unwrap();
    writeln!(out, "simple = {}", r.simple).unwrap();
    match r.class_count {
        Some(c) => writeln!(out, "invariant classes = {c}").unwrap(),
        None => writeln!(out, "invariant classes = n/a (p odd)").unwrap(),
    }
    if let Some(g) = &r.rank_growth {
        out.push('\n');
        growth_text(g, &mut out);
    }
    out
}

#[derive(Serialize)]
struct RepresentDoc {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariant: Option<InvariantJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
    #[serde(flatten)]
    rep: RepresentationJson,
}

#[derive(Serialize)]
struct ClassifyDoc {
    p: u32,
    n: usize,
    kernel_dim: usize,
    class_count: u128,
    invariants: Vec<InvariantJson>,
}

#[derive(Serialize)]
struct GrowDoc<'a> {
    p: u32,
    pattern: &'a [u32],
    #[serde(flatten)]
    growth: RankGrowth,
}

fn load_invariant(c: &CommutationMatrix, path: &Path) -> CliResult<StandardInvariant> {
    let json: InvariantJson = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError { code: 2, message: format!("{}: {e}", path.display()) })?;
    StandardInvariant::from_json(c, &json).map_err(|e| with_path(path, e))
}

/// Reads the `result` of a `represent` document back into a representation of `c`.
pub fn load_representation(c: &CommutationMatrix, text: &str) -> CliResult<Representation> {
    let bad = |e: serde_json::Error| CliError { code: 2, message: e.to_string() };
    let mut doc: serde_json::Value = serde_json::from_str(text).map_err(bad)?;
    let result = doc.get_mut("result").map(serde_json::Value::take).unwrap_or(doc);
    let json: RepresentationJson = serde_json::from_value(result).map_err(bad)?;
    Ok(Representation::from_json(c, &json)?)
}

fn represent(c: &CommutationMatrix, kind: Kind, invariant: Option<&Path>, limits: &Limits) -> CliResult<String> {
    let rep = match (kind, invariant) {
        (Kind::Prop11, Some(_)) => {
            return Err(CliError { code: 2, message: "--invariant requires --kind irr".into() });
        }
        (Kind::Prop11, None) => prop11_rep(c, limits)?,
        (Kind::Irr, None) => canonical_irreducible_rep(c, limits)?,
        (Kind::Irr, Some(path)) => irreducible_rep(c, &load_invariant(c, path)?, limits)?,
    };
    // cheap for monomial generators, and it keeps a bad build from leaving the tool
    if !verify_relations(&rep).passed() {
        return Err(CliError { code: 1, message: "internal error: representation fails its relations".into() });
    }
    let (kind, invariant) = match rep.kind() {
        RepKind::Prop11 => ("prop11", None),
        RepKind::Irreducible(f) => ("irreducible", Some(f.to_json())),
    };
    let note = (kind == "irreducible" && c.modulus() != Prime::TWO)
        .then_some("odd p: the invariant is the one the canonical construction achieves; retargeting is not supported");
    Ok(to_json("represent", RepresentDoc { kind, invariant, note, rep: rep.to_json() }))
}

fn generate(args: &GenerateArgs) -> CliResult<String> {
    let c = if let Some(n) = args.source.clifford {
        clifford_matrix(Prime::new(args.p)?, n)?
    } else if let Some(n) = args.source.random {
        random_alternating(Prime::new(args.p)?, n, args.seed.expect("clap enforces --seed"))
    } else {
        let paths = args.source.from_basis.as_deref().expect("clap enforces one source");
        let reference = load_matrix(&paths[0], args.n_max)?;
        let vectors = parse_vectors(&read(&paths[1])?, reference.modulus(), reference.n()).map_err(|e| with_path(&paths[1], e))?;
        matrix_from_basis(&reference, &vectors)?
    };
    Ok(write_matrix_file(&c))
}

/// Runs one command and returns what it would print.
pub fn execute(command: &Command, limits: &Limits) -> CliResult<String> {
    match command {
        Command::Analyze { path, json, n_max } => {
            let report = structure_report(&load_matrix(path, *n_max)?)?;
            Ok(if *json { to_json("analyze", report) } else { analyze_text(&report) })
        }
        Command::Basis { path, n_max } => {
            let basis: SymplecticBasis = symplectic_basis(&load_matrix(path, *n_max)?);
            Ok(to_json("basis", basis))
        }
        Command::Represent { path, kind, invariant, n_max } => {
            represent(&load_matrix(path, *n_max)?, *kind, invariant.as_deref(), limits)
        }
        Command::Classify { path, n_max } => {
            let c = load_matrix(path, *n_max)?;
            let invariants = enumerate_invariants(&c, limits.max_kernel_dim)?;
            let kernel_dim = invariants.first().map_or(0, |f| f.kernel_basis().len());
            Ok(to_json(
                "classify",
                ClassifyDoc {
                    p: c.modulus().get(),
                    n: c.n(),
                    kernel_dim,
                    class_count: count_classes(kernel_dim)?,
                    invariants: invariants.iter().map(StandardInvariant::to_json).collect(),
                },
            ))
        }
        Command::Generate(args) => generate(args),
        Command::Grow { path, n_max, json } => {
            let MatrixFile::Toeplitz { p, pattern } = load(path)? else {
                return Err(CliError {
                    code: 2,
                    message: format!("{}: grow needs a \"p toeplitz m\" file", path.display()),
                });
            };
            let growth = rank_growth(p, &pattern, n_max.unwrap_or(pattern.len() + 1))?;
            Ok(if *json {
                to_json("grow", GrowDoc { p: p.get(), pattern: &pattern, growth })
            } else {
                let mut out = String::new();
                growth_text(&growth, &mut out);
                out
            })
        }
    }
}

/// Executes and writes the output to `--out` or stdout.
pub fn run(cli: &Cli) -> CliResult<()> {
    let limits = limits_from_env()?;
    let text = execute(&cli.command, &limits)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()).map_err(|e| CliError { code: 1, message: e.to_string() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_commands() {
        let cli = Cli::try_parse_from(["spinlab", "generate", "--random", "4", "--seed", "7", "-p", "3"]).unwrap();
        assert!(matches!(cli.command, Command::Generate(GenerateArgs { source: Source { random: Some(4), .. }, seed: Some(7), p: 3, .. })));
        assert!(Cli::try_parse_from(["spinlab", "generate", "--random", "4"]).is_err());
        assert!(Cli::try_parse_from(["spinlab", "generate", "--clifford", "3", "--random", "4", "--seed", "1"]).is_err());
        let cli = Cli::try_parse_from(["spinlab", "represent", "m.txt", "--kind", "irr", "--out", "o.json"]).unwrap();
        assert!(matches!(cli.command, Command::Represent { kind: Kind::Irr, .. }));
        assert_eq!(cli.out.as_deref(), Some(Path::new("o.json")));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Parse { line: 1, msg: String::new() }), 2);
        assert_eq!(exit_code(&Error::SizeBound { dim: 1, bound: 0 }), 3);
        assert_eq!(exit_code(&Error::InvariantConstraint(String::new())), 4);
    }

    #[test]
    fn generate_clifford() {
        let args = GenerateArgs { source: Source { clifford: Some(3), random: None, from_basis: None }, seed: None, p: 2, n_max: None };
        assert_eq!(generate(&args).unwrap(), "2 3\n0 1 1\n1 0 1\n1 1 0\n");
    }
}
