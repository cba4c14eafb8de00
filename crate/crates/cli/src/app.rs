//! Command dispatch. [`run`] never exits the process; it returns the exit code.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use nk_core::certify::{
    certify_nonkahler_with_width, compare_homotopy_types, default_refine_width, enumerate_family,
    jump_loci, NonkahlerCertificate, Verdict,
};
use nk_core::kummer::{eigen_profile, fixed_subspace, kummer_action, GaussianMatrix2};
use nk_core::topology::{
    build_mab_ring, formality_witness, hard_lefschetz, symplectic_class, wang_cohomology,
};
use nk_core::{BigRational, Error as CoreError, IsolatingInterval};
use num_traits::Zero;

use crate::parse::{parse_matrix, ParseError};
use crate::report::{
    pass_fail, to_json, AnalyzeReport, CertifyReport, CompareReport, EnumerateReport, MatrixEcho,
    SCHEMA_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_GATE: i32 = 2;

pub const REFINE_WIDTH_VAR: &str = "NK_REFINE_WIDTH";

#[derive(Debug, Parser)]
#[command(name = "nk", about = "Exact cohomology reports for S^1 x (Kummer mapping torus)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report: Betti numbers, hard Lefschetz, formality, certificate, jump loci.
    Analyze {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Nonkählerness certificate only.
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare spectral radii of two matrices.
    Compare {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List gated matrices of bounded entry height, grouped by spectral factor.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        height: u32,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Parse(String, ParseError),
    Core(CoreError),
    Io(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_gate() => EXIT_GATE,
            _ => EXIT_ERROR,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Parse(text, e) => format!("cannot parse matrix {text:?}: {e}"),
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
        }
    }
}

/// Parses `p/q` or an integer; must be positive.
pub fn parse_refine_width(s: &str) -> Result<BigRational, String> {
    let bad = || format!("{REFINE_WIDTH_VAR} must be a positive rational like 1/1000, got {s:?}");
    let t = s.trim();
    let value = match t.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d: nk_core::BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
    };
    if value <= BigRational::zero() {
        return Err(bad());
    }
    Ok(value)
}

/// Entry point with the refine width taken from the environment.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let width = match std::env::var(REFINE_WIDTH_VAR) {
        Ok(s) => match parse_refine_width(&s) {
            Ok(w) => w,
            Err(m) => {
                let _ = writeln!(err, "error: {m}");
                return EXIT_ERROR;
            }
        },
        Err(_) => default_refine_width(),
    };
    run_with_width(argv, &width, out, err)
}

pub fn run_with_width(argv: &[String], width: &BigRational, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_ERROR
                }
            };
        }
    };
    let result = match cli.command {
        Command::Analyze { matrix, format } => analyze(&matrix, format, width),
        Command::Certify { matrix, format } => certify(&matrix, format, width),
        Command::Compare { a, b, format } => compare(&a, &b, format),
        Command::Enumerate { height, out } => enumerate(height, out),
    };
    match result {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_ERROR;
            }
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn parse(text: &str) -> Result<GaussianMatrix2, Failure> {
    parse_matrix(text).map_err(|e| Failure::Parse(text.to_string(), e))
}

fn normalization_notes(d: Option<&BigRational>) -> Vec<String> {
    let mut notes = vec![
        "intersection form on H^2(K) is normalized as (-2)I on the 16 divisor classes and 2 x wedge pairing on the 6 torus classes; signature (3, 19)".to_string(),
    ];
    if let Some(d) = d {
        notes.push(format!(
            "theta^2 = d k with d = {}/{} depends on the intersection-form normalization; only d > 0 is intrinsic",
            d.numer(),
            d.denom()
        ));
    }
    notes
}

const MODEL_WARNINGS: [&str; 2] = [
    "products of fixed classes in H^*(N) are taken through the restriction to the fiber: v w = Q(v, w) k",
    "odd-degree classes of N are modeled as s2-multiples of fixed classes",
];

fn approx(r: &IsolatingInterval) -> String {
    format!("({}, {}) ≈ {:.6}", r.lo, r.hi, r.midpoint_f64())
}

fn certificate_text(c: &NonkahlerCertificate) -> String {
    format!(
        "trace gate: |tr(A)|^2 = {} > 4\nchar poly of H^2 action: {}\nnon-cyclotomic factor: {}\nwitness root r in {}, r > 1\nconclusion: {}\n",
        c.trace_norm_squared,
        c.char_poly_h2,
        c.non_cyclotomic_factor,
        approx(&c.witness_root),
        c.conclusion
    )
}

fn analyze(text: &str, format: Format, width: &BigRational) -> Result<String, Failure> {
    let a = parse(text)?;
    a.require_trace_gate()?;
    let g = kummer_action(&a);
    let v = fixed_subspace(&g);
    let spectrum = eigen_profile(&g, &a)?;
    let wang = wang_cohomology(&g);
    let ring = build_mab_ring(&a)?;
    let omega = symplectic_class(&ring)?;
    let lefschetz = hard_lefschetz(&ring, &omega);
    let formality = formality_witness(&a);
    let cert = certify_nonkahler_with_width(&a, width)?;
    cert.validate()?;
    let jumps = jump_loci(&a)?;
    let notes = normalization_notes(Some(&omega.d));
    match format {
        Format::Json => Ok(to_json(&AnalyzeReport {
            schema_version: SCHEMA_VERSION,
            command: "analyze",
            input: MatrixEcho::new(text, &a),
            permutation_cycle_type: g.permutation.cycle_type(),
            fixed_subspace_dim: v.dim,
            spectrum: (&spectrum).into(),
            wang: (&wang).into(),
            betti: ring.betti(),
            symplectic_class: (&omega).into(),
            lefschetz: (&lefschetz).into(),
            formality: (&formality).into(),
            certificate: (&cert).into(),
            jump_loci: (&jumps).into(),
            warnings: MODEL_WARNINGS.iter().map(|s| s.to_string()).collect(),
            normalization_notes: notes,
        })),
        Format::Text => {
            let mut s = String::new();
            s += &format!("matrix: {a}\n");
            s += &format!("two-torsion cycle type: {:?}\n", g.permutation.cycle_type());
            s += &format!("dim V (fixed subspace of H^2): {}\n", v.dim);
            s += &format!("Betti numbers of N: {:?}\n", wang.betti_n);
            s += &format!("Betti numbers of M(A): {:?}\n", ring.betti());
            s += &format!("symplectic class: s1 s2 + theta, theta^2 = {} k\n", omega.d);
            for l in &lefschetz.maps {
                s += &format!(
                    "hard Lefschetz j={}: {}x{} of rank {} ({})\n",
                    l.j,
                    l.matrix.rows(),
                    l.matrix.cols(),
                    l.rank,
                    pass_fail(l.isomorphism)
                );
            }
            s += &format!("hard Lefschetz verdict: {}\n", pass_fail(lefschetz.verdict));
            s += &format!("formality witness: {}\n", pass_fail(formality.verdict));
            for j in &formality.justification {
                s += &format!("  {j}\n");
            }
            s += &certificate_text(&cert);
            s += &format!(
                "jump loci: Char(M(A)) = C* x C*, all loci in {}; non-unitary points are the real roots of {}\n",
                jumps.component_description, jumps.split.rest
            );
            for p in &jumps.non_unitary_points {
                s += &format!("  {}\n", approx(p));
            }
            for w in MODEL_WARNINGS.iter().map(|w| w.to_string()).chain(notes) {
                s += &format!("note: {w}\n");
            }
            Ok(s)
        }
    }
}

fn certify(text: &str, format: Format, width: &BigRational) -> Result<String, Failure> {
    let a = parse(text)?;
    let cert = certify_nonkahler_with_width(&a, width)?;
    cert.validate()?;
    match format {
        Format::Json => Ok(to_json(&CertifyReport {
            schema_version: SCHEMA_VERSION,
            command: "certify",
            input: MatrixEcho::new(text, &a),
            certificate: (&cert).into(),
            normalization_notes: normalization_notes(None),
        })),
        Format::Text => Ok(format!("matrix: {a}\n{}", certificate_text(&cert))),
    }
}

fn compare(ta: &str, tb: &str, format: Format) -> Result<String, Failure> {
    let a = parse(ta)?;
    let b = parse(tb)?;
    let v = compare_homotopy_types(&a, &b)?;
    match format {
        Format::Json => Ok(to_json(&CompareReport::new(
            MatrixEcho::new(ta, &a),
            MatrixEcho::new(tb, &b),
            &v,
        ))),
        Format::Text => {
            let headline = match v.verdict {
                Verdict::Distinct => "Distinct homotopy types",
                Verdict::InconclusiveEqualRadii => "Inconclusive: equal spectral radii",
            };
            let mut s = format!("{headline}\nfactor A: {}\nfactor B: {}\n", v.factors.0, v.factors.1);
            for line in v.transcript.iter().chain(&v.notes) {
                s += &format!("  {line}\n");
            }
            Ok(s)
        }
    }
}

fn count(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn enumerate(height: u32, out: Option<PathBuf>) -> Result<String, Failure> {
    let fam = enumerate_family(height)?;
    let mut s = format!(
        "height <= {height}: {} up to sign, {}\n",
        count(fam.members.len(), "matrix", "matrices"),
        count(fam.groups.len(), "spectral factor", "spectral factors")
    );
    for g in &fam.groups {
        s += &format!("{}: {}\n", g.factor, count(g.members.len(), "matrix", "matrices"));
    }
    if let Some(path) = out {
        let json = to_json(&EnumerateReport::from(&fam));
        std::fs::write(&path, json)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
        s += &format!("wrote {}\n", path.display());
    }
    Ok(s)
}
