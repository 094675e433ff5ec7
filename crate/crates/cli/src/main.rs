//! `htm`: command-line analyses of Hurwitz-type matrix polynomials.
//!
//! Exit codes: 0 success (for `analyze`: Hurwitz proven), 1 error,
//! 2 not HTM, 3 HTM but the verdict routes disagree.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use htm_core::bezout::stability_certificate;
use htm_core::certify::{bezout_witness, hurwitz_verdict, reduction_is_unit, StabilityVerdict, VerdictOptions};
use htm_core::completion::complete;
use htm_core::htm::{classify, reconstruct};
use htm_core::io;
use htm_core::moments::markov_parameters;
use htm_core::scan::{conjecture_scan, Failure};
use htm_core::{Complex64, Error, ExactMoments, ExactPoly, MatrixPoly, MomentSequence, Scalar};
use serde_json::{json, Value};

const EXIT_ERROR: u8 = 1;
const EXIT_NOT_HTM: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Backend {
    /// Exact when n·q ≤ 24, float otherwise.
    Auto,
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "htm", version, about = "Analyze Hurwitz-type matrix polynomials")]
struct Cli {
    #[arg(long, value_enum, default_value = "auto", global = true)]
    backend: Backend,
    /// Backward residual bound for roots.
    #[arg(long, default_value_t = 1e-9, global = true, value_parser = positive)]
    tol_root: f64,
    /// Positivity tolerance on the float backend.
    #[arg(long, default_value_t = 1e-9, global = true, value_parser = positive)]
    tol_pd: f64,
    /// Roots with real part in [−margin, 0] are marginal.
    #[arg(long, default_value_t = 1e-6, global = true, value_parser = positive)]
    margin: f64,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[arg(long, default_value_t = 100, global = true)]
    trials: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classification, Condition C, continued fraction, certificate, witness and verdict.
    Analyze { file: PathBuf },
    /// Markov parameters of a polynomial.
    Markov {
        file: PathBuf,
        /// Number of parameters; defaults to the degree.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Monic HTM polynomial of the given degree from moments.
    Reconstruct {
        moments: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Bezoutian stability certificate.
    Bezout { file: PathBuf },
    /// Complete P into an HTM polynomial P(z²) + z·Q(z²).
    Complete {
        p: PathBuf,
        moments: PathBuf,
        /// Write the completed polynomial here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random scan for coefficients with non-positive determinant.
    Scan {
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Real symmetric moments instead of complex Hermitian ones.
        #[arg(long)]
        real: bool,
        #[arg(long)]
        sequential: bool,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

struct Outcome {
    json: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, code: 0 }
    }
}

struct Run<'a> {
    cli: &'a Cli,
    exact: bool,
}

impl Run<'_> {
    fn tol(&self) -> f64 {
        if self.exact { 0.0 } else { self.cli.tol_pd }
    }

    fn opts(&self) -> VerdictOptions {
        VerdictOptions { tol_root: self.cli.tol_root, tol_pd: self.tol(), margin: self.cli.margin }
    }

    fn backend_name(&self) -> &'static str {
        if self.exact { "exact" } else { "float" }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_poly(path: &Path) -> Result<ExactPoly, Error> {
    io::parse_poly(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_moments(path: &Path) -> Result<ExactMoments, Error> {
    io::parse_moments(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn use_exact(backend: Backend, n: usize, q: usize) -> bool {
    match backend {
        Backend::Exact => true,
        Backend::Float => false,
        Backend::Auto => n * q <= 24,
    }
}

fn require_analyzable(f: &ExactPoly) -> Result<(), Error> {
    if f.degree() < 2 {
        return Err(Error::Precondition("analysis needs degree at least 2".into()));
    }
    if f.leading().det().is_zero() {
        return Err(Error::Precondition("leading coefficient is singular".into()));
    }
    Ok(())
}

fn verdict_text(v: &StabilityVerdict, out: &mut String) {
    let i = v.inertia;
    let _ = writeln!(out, "verdict: {} (route {}), inertia ({}, {}, {})", v.status.as_str(), v.route.as_str(), i.plus, i.minus, i.zero);
    if let Some(note) = &v.certificate_note {
        let _ = writeln!(out, "  {note}");
    }
    for r in &v.roots {
        let _ = writeln!(out, "  root {:+.6} {:+.6}i  residual {:.1e}", r.z.re, r.z.im, r.residual);
    }
}

fn analyze<T: Scalar>(run: &Run, f: &MatrixPoly<T>) -> Result<Outcome, Error> {
    let tol = run.tol();
    let report = classify(f, tol)?;
    let mut json = io::htm_report_json(&report);
    let mut text = String::new();
    let _ = writeln!(text, "backend: {}", run.backend_name());
    let _ = writeln!(text, "HTM: {}", yes_no(report.is_htm));
    let _ = writeln!(text, "condition C: {}", yes_no(report.condition_c));
    if let Some(v) = &report.condition_c_violation {
        let _ = writeln!(text, "  A_{}* A_{} − A_{}* A_{} = {:?}", v.odd, v.even, v.even, v.odd, io::matrix_text(&v.residual));
    }
    if !report.is_htm {
        let verdict = hurwitz_verdict(f, &run.opts())?;
        verdict_text(&verdict, &mut text);
        json["verdict"] = io::verdict_json(&verdict);
        json["backend"] = json!(run.backend_name());
        return Ok(Outcome { json, text, code: EXIT_NOT_HTM });
    }
    let (certificate, cert_failed) = certificate_value(run, f);
    let _ = writeln!(text, "certificate: {}", certificate_line(&certificate));
    json["certificate"] = certificate;
    let witness = bezout_witness(f, tol)?;
    let unit = reduction_is_unit(f, tol)?;
    let exact_witness = witness.is_exact() || (!T::EXACT && witness.residual.approx_eq(&MatrixPoly::identity(f.q()), tol));
    let _ = writeln!(text, "coprimeness witness: {}, unimodular reduction: {}", pass(exact_witness), pass(unit));
    json["witness"] = json!({"identity": exact_witness, "reduction_unit": unit});
    let (verdict, code) = match hurwitz_verdict(f, &run.opts()) {
        Ok(v) => {
            let code = if v.hurwitz && exact_witness && unit && !cert_failed { 0 } else { EXIT_DISAGREE };
            (Some(v), code)
        }
        Err(Error::Internal(msg)) => {
            let _ = writeln!(text, "route disagreement: {msg}");
            json["disagreement"] = json!(msg);
            (None, EXIT_DISAGREE)
        }
        Err(e) => return Err(e),
    };
    if let Some(v) = &verdict {
        verdict_text(v, &mut text);
        json["verdict"] = io::verdict_json(v);
    }
    json["backend"] = json!(run.backend_name());
    Ok(Outcome { json, text, code })
}

fn yes_no(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

fn pass(b: bool) -> &'static str {
    if b { "ok" } else { "FAILED" }
}

fn certificate_line(v: &Value) -> String {
    match v["pd"].as_bool() {
        Some(pd) => format!("{} ({}×{} matrix)", if pd { "positive definite" } else { "not positive definite" }, v["matrix_size"], v["matrix_size"]),
        None => format!("unavailable: {}", v["note"].as_str().unwrap_or("")),
    }
}

/// Certificate document, plus whether an internal check failed.
fn certificate_value<T: Scalar>(run: &Run, f: &MatrixPoly<T>) -> (Value, bool) {
    if !run.exact {
        return (io::certificate_unavailable_json("the certificate needs the exact backend"), false);
    }
    match stability_certificate(&f.map(Scalar::to_gauss), 0.0) {
        Ok(c) => (io::certificate_json(&c), false),
        Err(e @ (Error::NotHtm(_) | Error::CertificateUnavailable(_))) => (io::certificate_unavailable_json(&e.to_string()), false),
        Err(e) => (io::certificate_unavailable_json(&e.to_string()), true),
    }
}

fn with_backend(run: &Run, f: &ExactPoly, exact: impl FnOnce(&ExactPoly) -> Result<Outcome, Error>, float: impl FnOnce(&MatrixPoly<Complex64>) -> Result<Outcome, Error>) -> Result<Outcome, Error> {
    if run.exact { exact(f) } else { float(&MatrixPoly::from_exact(f)) }
}

fn markov<T: Scalar>(f: &MatrixPoly<T>, count: usize) -> Result<Outcome, Error> {
    let f = htm_core::htm::normalize(f)?;
    let s = markov_parameters(&f.split(), count)?;
    let json = io::moments_json(&s);
    Ok(Outcome::ok(json.clone(), format!("{json:#}\n")))
}

fn reconstruct_cmd<T: Scalar>(run: &Run, s: &MomentSequence<T>, n: usize) -> Result<Outcome, Error> {
    let f = reconstruct(s, n, run.tol())?;
    let json = io::poly_json(&f);
    Ok(Outcome::ok(json.clone(), format!("{json:#}\n")))
}

fn bezout_cmd(run: &Run, f: &ExactPoly) -> Result<Outcome, Error> {
    if !run.exact {
        let json = io::certificate_unavailable_json("the certificate needs the exact backend");
        return Ok(Outcome::ok(json.clone(), format!("certificate: {}\n", certificate_line(&json))));
    }
    let (json, failed) = match stability_certificate(f, 0.0) {
        Ok(c) => (io::certificate_json(&c), false),
        Err(Error::CertificateUnavailable(msg)) => (io::certificate_unavailable_json(&msg), false),
        Err(Error::NotHtm(msg)) => {
            let json = io::certificate_unavailable_json(&format!("not HTM: {msg}"));
            return Ok(Outcome { text: format!("certificate: {}\n", certificate_line(&json)), json, code: EXIT_NOT_HTM });
        }
        Err(Error::Internal(msg)) => (io::certificate_unavailable_json(&msg), true),
        Err(e) => return Err(e),
    };
    let mut text = format!("certificate: {}\n", certificate_line(&json));
    if let Some(minors) = json["leading_minors"].as_array() {
        for (k, m) in minors.iter().enumerate() {
            let _ = writeln!(text, "  minor {}: {}", k + 1, m.as_str().unwrap_or(""));
        }
    }
    Ok(Outcome { json, text, code: if failed { EXIT_DISAGREE } else { 0 } })
}

fn complete_cmd<T: Scalar>(run: &Run, p: &MatrixPoly<T>, s: &MomentSequence<T>, out: Option<&Path>) -> Result<Outcome, Error> {
    let r = complete(p, s, run.tol())?;
    if let Some(path) = out {
        std::fs::write(path, format!("{:#}\n", io::poly_json(&r.f2n))).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    let mut json = io::completion_json(&r);
    json["backend"] = json!(run.backend_name());
    let mut text = String::new();
    let _ = writeln!(text, "completion succeeded ({} route)", if r.used_transpose { "transpose" } else { "direct" });
    let _ = writeln!(text, "f_{}: {:#}", r.f2n.degree(), io::poly_json(&r.f2n));
    Ok(Outcome::ok(json, text))
}

fn scan_cmd(cli: &Cli, q: usize, n: usize, real: bool, sequential: bool) -> Result<Outcome, Error> {
    if q == 0 || n == 0 {
        return Err(Error::Precondition("q and n must be positive".into()));
    }
    let r = conjecture_scan(cli.trials, q, n, cli.seed, !real, !sequential);
    let json = io::scan_json(&r);
    let nonreal = r.counterexamples.iter().filter(|c| c.failure == Failure::NonReal).count();
    let mut text = format!(
        "scan seed {} trials {} (q={}, n={}, {} moments): {} counterexamples ({} nonreal, {} nonpositive), min |det A_j| = {:.3e}\n",
        r.seed,
        r.trials,
        r.q,
        r.n,
        if r.complex { "complex" } else { "real" },
        r.counterexamples.len(),
        nonreal,
        r.counterexamples.len() - nonreal,
        r.min_abs_det
    );
    text.push_str("  evidence only: positivity of det A_j is a conjecture\n");
    for c in r.counterexamples.iter().take(3) {
        let _ = writeln!(text, "  trial {} ({}): det A_j = {}", c.trial, c.failure.as_str(), c.determinants.join(", "));
    }
    Ok(Outcome::ok(json, text))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Analyze { file } => {
            let f = load_poly(file)?;
            require_analyzable(&f)?;
            let run = Run { cli, exact: use_exact(cli.backend, f.degree(), f.q()) };
            with_backend(&run, &f, |f| analyze(&run, f), |f| analyze(&run, f))
        }
        Command::Markov { file, count } => {
            let f = load_poly(file)?;
            let run = Run { cli, exact: use_exact(cli.backend, f.degree(), f.q()) };
            let count = count.unwrap_or(f.degree());
            with_backend(&run, &f, |f| markov(f, count), |f| markov(f, count))
        }
        Command::Reconstruct { moments, degree } => {
            let s = load_moments(moments)?;
            let run = Run { cli, exact: use_exact(cli.backend, *degree, s.q()) };
            if run.exact { reconstruct_cmd(&run, &s, *degree) } else { reconstruct_cmd(&run, &MomentSequence::<Complex64>::from_exact(&s), *degree) }
        }
        Command::Bezout { file } => {
            let f = load_poly(file)?;
            require_analyzable(&f)?;
            let run = Run { cli, exact: use_exact(cli.backend, f.degree(), f.q()) };
            bezout_cmd(&run, &f)
        }
        Command::Complete { p, moments, out } => {
            let p = load_poly(p)?;
            let s = load_moments(moments)?;
            let run = Run { cli, exact: use_exact(cli.backend, 2 * p.degree(), p.q()) };
            let out = out.as_deref();
            if run.exact {
                complete_cmd(&run, &p, &s, out)
            } else {
                complete_cmd(&run, &MatrixPoly::<Complex64>::from_exact(&p), &MomentSequence::from_exact(&s), out)
            }
        }
        Command::Scan { q, n, real, sequential } => scan_cmd(cli, *q, *n, *real, *sequential),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            match cli.format {
                Format::Json => println!("{:#}", o.json),
                Format::Text => print!("{}", o.text),
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            if cli.format == Format::Json {
                println!("{:#}", json!({"error": e.to_string()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
