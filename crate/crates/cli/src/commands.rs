//! Subcommand bodies. Each one loads its inputs, makes the library call and
//! renders the result; no numerics live here.

use std::fmt;
use std::path::Path;

use serde_json::{json, Value};

use incoh_core::channels::{channel_panel, library_channel, KrausChannel};
use incoh_core::discord::{monogamy_gap, qdi as qdi_report};
use incoh_core::info::{mutual_information, von_neumann_entropy};
use incoh_core::linalg::io::{parse_channel, parse_matrix, parse_povm, MatrixDoc};
use incoh_core::measurement::{
    is_incoherent, noisy_projective, optimize_witness, Povm, WitnessReport, CERTIFICATION_THRESHOLD,
};
use incoh_core::repro::{all_pass, render_text, reproduce_with};
use incoh_core::states::named_state;
use incoh_core::{DensityMatrix, Dims, Error, OrthonormalBasis};

use crate::{BasisKind, ChannelArgs, Global, WitnessArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED_ROWS: u8 = 1;
pub const EXIT_COHERENT: u8 = 2;
pub const EXIT_PARSE: u8 = 64;
pub const EXIT_VALIDATION: u8 = 65;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Validation(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Validation(_) => EXIT_VALIDATION,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "{msg}"),
            CliError::Validation(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => CliError::Parse(msg),
            Error::UnknownName(name) => CliError::Parse(format!("unknown name `{name}`")),
            other => CliError::Validation(other),
        }
    }
}

pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            code: EXIT_OK,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Reads a state document; without a `dims` field the state is one system.
pub fn load_state(path: &Path, tol: f64) -> Result<DensityMatrix, CliError> {
    let doc = parse_matrix(&read(path)?)?;
    let m = doc.to_matrix()?;
    let dims = match doc.dims {
        Some(d) => Dims::new(d)?,
        None => Dims::single(m.rows())?,
    };
    Ok(DensityMatrix::with_tol(m, dims, tol)?)
}

pub fn load_povm(path: &Path, tol: f64) -> Result<Povm, CliError> {
    Ok(Povm::from_doc(&parse_povm(&read(path)?)?, tol)?)
}

pub fn load_channel(path: &Path, tol: f64) -> Result<KrausChannel, CliError> {
    Ok(KrausChannel::from_doc(&parse_channel(&read(path)?)?, tol)?)
}

/// At most 12 decimals, trailing zeros dropped.
fn short(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn check_povm(path: &Path, g: &Global) -> Result<Outcome, CliError> {
    let m = load_povm(path, g.tol)?;
    let (incoherent, worst) = is_incoherent(&m, g.tol);
    let verdict = if incoherent { "incoherent" } else { "NOT incoherent" };
    Ok(Outcome {
        text: format!("{verdict}, worst off-diagonal {}\n", short(worst)),
        json: json!({
            "incoherent": incoherent,
            "worst_offdiag": worst,
            "outcomes": m.len(),
            "dim": m.dim(),
        }),
        code: if incoherent { EXIT_OK } else { EXIT_COHERENT },
    })
}

fn witness_json(r: &WitnessReport) -> Value {
    json!({
        "lhs": r.lhs,
        "rhs": r.rhs,
        "violation": r.violation,
        "certified": r.certified(),
        "assignment": r.assignment,
        "outcomes": r.outcomes,
        "basis": MatrixDoc::from_matrix(r.basis.as_matrix()),
    })
}

pub fn witness(args: &WitnessArgs, g: &Global) -> Result<Outcome, CliError> {
    let m = match (&args.file, args.noise_lambda) {
        (Some(path), None) => load_povm(path, g.tol)?,
        (None, Some(lambda)) => {
            let basis = match args.basis {
                BasisKind::Fourier => OrthonormalBasis::fourier(args.dim),
                BasisKind::Incoherent => OrthonormalBasis::incoherent(args.dim),
            };
            noisy_projective(&basis, lambda)?
        }
        _ => return Err(CliError::Parse("give either a POVM file or --noise-lambda".into())),
    };
    let r = optimize_witness(&m, args.restarts, g.seed);
    let verdict = if r.certified() {
        "certified coherent (not incoherent)".to_string()
    } else {
        format!("no violation found above {CERTIFICATION_THRESHOLD:e}")
    };
    let text = format!(
        "violation {:.9}\nlhs {:.9}\nrhs {:.9}\nassignment {}\n{verdict}\n",
        r.violation,
        r.lhs,
        r.rhs,
        list(&r.assignment)
    );
    Ok(Outcome {
        text,
        json: witness_json(&r),
        code: if r.certified() { EXIT_COHERENT } else { EXIT_OK },
    })
}

pub fn qdi(path: &Path, cut: &[usize], g: &Global) -> Result<Outcome, CliError> {
    let rho = load_state(path, g.tol)?;
    let r = qdi_report(&rho, cut)?;
    let text = format!(
        "QDI {:.9}\n  projective form   {:.12}\n  mutual-info form  {:.12}\n  coherence form    {:.12}\n  \
         spread {:.3e}\nJ^I {:.9}\n",
        r.value(),
        r.qdi_projective,
        r.qdi_mutinf,
        r.qdi_coherence,
        r.max_discrepancy,
        r.j_incoherent
    );
    let mut json = serde_json::to_value(r).expect("serializable");
    json["qdi"] = json!(r.value());
    json["cut"] = json!(cut);
    Ok(Outcome::ok(text, json))
}

pub fn monogamy(path: &Path, a: &[usize], b: &[usize], b2: &[usize], g: &Global) -> Result<Outcome, CliError> {
    let rho = load_state(path, g.tol)?;
    let r = monogamy_gap(&rho, a, b, b2)?;
    let text = format!(
        "monogamy gap {:.9}\n  direct  {:.12}\n  via CMI {:.12}\n  spread {:.3e}\n",
        r.gap, r.gap, r.gap_via_cmi, r.discrepancy
    );
    Ok(Outcome::ok(text, serde_json::to_value(r).expect("serializable")))
}

pub fn channel_check(args: &ChannelArgs, g: &Global) -> Result<Outcome, CliError> {
    let ch = match (&args.file, &args.library) {
        (Some(path), None) => load_channel(path, g.tol)?,
        (None, Some(name)) => library_channel(name, &args.params)?,
        _ => return Err(CliError::Parse("give either a channel file or --library".into())),
    };
    let p = channel_panel(&ch, g.tol);
    let mark = |b: bool| if b { "yes" } else { "no" };
    let mut text = format!(
        "channel {} -> {}, {} Kraus operators\n\
         CPTP                          {} (error {:.3e})\n\
         coherence non-activating      {}\n\
         MIO                           {}\n\
         GIO                           {}\n\
         completely QDI non-generating {}\n",
        p.dim_in,
        p.dim_out,
        ch.kraus().len(),
        mark(p.cptp),
        p.trace_preservation_error,
        mark(p.coherence_non_activating),
        mark(p.mio),
        mark(p.gio),
        mark(p.completely_qdi_nongenerating),
    );
    if let Some(sigma) = &p.permutation {
        text.push_str(&format!("permutation                   {}\n", list(sigma)));
    }
    Ok(Outcome::ok(text, serde_json::to_value(&p).expect("serializable")))
}

pub fn entropy(path: &Path, g: &Global) -> Result<Outcome, CliError> {
    let rho = load_state(path, g.tol)?;
    let s = von_neumann_entropy(&rho)?;
    Ok(Outcome::ok(format!("S {s:.12}\n"), json!({ "entropy": s })))
}

pub fn mutinf(path: &Path, cut: &[usize], g: &Global) -> Result<Outcome, CliError> {
    let rho = load_state(path, g.tol)?;
    let i = mutual_information(&rho, cut)?;
    Ok(Outcome::ok(
        format!("I {i:.12}\n"),
        json!({ "mutual_information": i, "cut": cut }),
    ))
}

pub fn reproduce(g: &Global) -> Result<Outcome, CliError> {
    let rows = reproduce_with(g.seed)?;
    let pass = all_pass(&rows);
    Ok(Outcome {
        text: render_text(&rows),
        json: json!({ "all_pass": pass, "rows": rows }),
        code: if pass { EXIT_OK } else { EXIT_FAILED_ROWS },
    })
}

pub fn state(name: &str, vectors: Option<&Path>, _g: &Global) -> Result<Outcome, CliError> {
    let vecs = match vectors {
        Some(path) => Some(parse_matrix(&read(path)?)?.to_matrix()?),
        None => None,
    };
    let rho = named_state(name, vecs.as_ref())?;
    let doc = MatrixDoc::from_matrix(rho.matrix()).with_dims(rho.dims().as_slice().to_vec());
    let json = serde_json::to_value(&doc).expect("serializable");
    let text = format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"));
    Ok(Outcome::ok(text, json))
}
