//! Command-line front end for `dioforge`: construct, verify and search for
//! integer polynomials whose values on a set multiply pairwise to squares.
//!
//! [`run`] holds the whole program behind an argument list and a reader for
//! standard input, so it can be driven from tests without spawning a process.

pub mod document;
pub mod error;

use std::collections::BTreeSet;
use std::fs;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dioforge_core::forge::{DEFAULT_MAX_ATTEMPTS, DEFAULT_ORACLE_CEILING, DEFAULT_PARAMETER_BOUND};
use dioforge_core::{
    brute_force_search, construct_witnesses, verify_witness, witness_twist, BigInt, ConstructOptions, Error, Method,
    Polynomial, ProjPoint, VerifyReport,
};

use document::{parse_list, PairReport, SearchDocument, VerifyDocument, WitnessDocument};
use error::{CliError, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION};

/// Environment variable overriding the search-box ceiling.
pub const ORACLE_CEILING_VAR: &str = "DIOFORGE_ORACLE_CEILING";

#[derive(Debug, Parser)]
#[command(name = "dioforge", version, about = "Polynomials with square products on a set of integers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build witnesses for a set and print them as JSON lines.
    Construct(ConstructArgs),
    /// Check that f(a) f(b) is a square for every pair of the set.
    Verify(VerifyArgs),
    /// Enumerate all small primitive witnesses in a coefficient box.
    Search(SearchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Quadric,
    Plane,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Quadric => Method::Quadric,
            MethodArg::Plane => Method::Plane,
        }
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// Comma-separated distinct integers, e.g. 0,1,2.
    #[arg(long, allow_hyphen_values = true)]
    pub set: String,
    #[arg(long, value_enum, default_value = "quadric")]
    pub method: MethodArg,
    /// Explicit projective parameter, e.g. 3,1. Used as given, no resampling.
    #[arg(long, allow_hyphen_values = true)]
    pub param: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
    pub max_attempts: usize,
    /// Bound on the absolute value of sampled parameter coordinates.
    #[arg(long, default_value_t = DEFAULT_PARAMETER_BOUND)]
    pub bound: u64,
    /// Attach the points on the twist f(x_0) y^2 = f(x).
    #[arg(long)]
    pub emit_twist: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true, requires = "poly", conflicts_with = "from_json")]
    pub set: Option<String>,
    /// Ascending coefficients, e.g. 1,24 for 24x + 1.
    #[arg(long, allow_hyphen_values = true, requires = "set")]
    pub poly: Option<String>,
    /// Witness documents (JSON lines) from a file, or `-` for standard input.
    #[arg(long, value_name = "FILE")]
    pub from_json: Option<String>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub set: String,
    #[arg(long)]
    pub max_degree: usize,
    #[arg(long)]
    pub max_height: u64,
}

/// What a finished invocation would write and return.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failed(e: &CliError) -> Self {
        Self { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let result = match cli.command {
        Command::Construct(a) => construct(&a),
        Command::Verify(a) => verify(&a, stdin),
        Command::Search(a) => search(&a),
    };
    result.unwrap_or_else(|e| Outcome::failed(&e))
}

/// Parses a set and rejects repeated elements.
pub fn parse_set(s: &str) -> Result<Vec<BigInt>, CliError> {
    let set = parse_list(s)?;
    let mut seen = BTreeSet::new();
    for a in &set {
        if !seen.insert(a) {
            return Err(CliError::Usage(format!("duplicate element {a} in set")));
        }
    }
    Ok(set)
}

fn json_line<T: serde::Serialize>(out: &mut String, value: &T) -> Result<(), CliError> {
    out.push_str(&serde_json::to_string(value)?);
    out.push('\n');
    Ok(())
}

fn construct(a: &ConstructArgs) -> Result<Outcome, CliError> {
    let set = parse_set(&a.set)?;
    if a.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    if a.param.is_some() && a.count != 1 {
        return Err(CliError::Usage("--param yields one witness; drop --count".into()));
    }
    let parameter = a
        .param
        .as_deref()
        .map(|p| ProjPoint::new(parse_list(p)?).map_err(|e| CliError::Usage(e.to_string())))
        .transpose()?;
    let opts = ConstructOptions { parameter, seed: a.seed, max_attempts: a.max_attempts, bound: a.bound };
    let witnesses = construct_witnesses(&set, a.method.into(), &opts, a.count)?;
    let mut stdout = String::new();
    for w in &witnesses {
        let twist = if a.emit_twist { Some(witness_twist(w)?) } else { None };
        json_line(&mut stdout, &WitnessDocument::from_witness(w, twist.as_ref()))?;
    }
    Ok(Outcome { code: EXIT_OK, stdout, stderr: String::new() })
}

fn verify_document(set: &[BigInt], poly: &Polynomial, report: &VerifyReport) -> VerifyDocument {
    VerifyDocument {
        ok: report.ok,
        set: set.iter().map(ToString::to_string).collect(),
        poly: poly.coeffs().iter().map(ToString::to_string).collect(),
        pairs: report
            .pairs
            .iter()
            .map(|p| PairReport {
                a: set[p.i].to_string(),
                b: set[p.j].to_string(),
                product: p.product.to_string(),
                root: p.root.as_ref().map(ToString::to_string),
            })
            .collect(),
        zero_products: report.zero_products,
        certificate_matches: None,
    }
}

fn verify(a: &VerifyArgs, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    let mut stdout = String::new();
    let mut all_ok = true;
    match (&a.set, &a.poly, &a.from_json) {
        (Some(set), Some(poly), None) => {
            let set = parse_set(set)?;
            let poly = Polynomial::new(parse_list(poly)?).map_err(|e| CliError::Usage(e.to_string()))?;
            let report = verify_witness(&set, &poly);
            all_ok = report.ok;
            json_line(&mut stdout, &verify_document(&set, &poly, &report))?;
        }
        (None, None, Some(source)) => {
            let text = if source == "-" {
                let mut s = String::new();
                stdin.read_to_string(&mut s)?;
                s
            } else {
                fs::read_to_string(source)?
            };
            let mut any = false;
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                any = true;
                let doc: WitnessDocument = serde_json::from_str(line)?;
                let w = doc.to_witness()?;
                if w.set.iter().collect::<BTreeSet<_>>().len() != w.set.len() {
                    return Err(CliError::Usage("duplicate element in document set".into()));
                }
                let report = verify_witness(&w.set, &w.poly);
                let twist_ok = doc.twist.as_ref().map(|t| t.check()).transpose()?.unwrap_or(true);
                let matches = report.ok && report.roots() == w.pair_roots && twist_ok;
                all_ok &= report.ok && matches;
                let mut out = verify_document(&w.set, &w.poly, &report);
                out.certificate_matches = Some(matches);
                json_line(&mut stdout, &out)?;
            }
            if !any {
                return Err(CliError::Usage("no witness documents in input".into()));
            }
        }
        _ => return Err(CliError::Usage("verify needs either --set with --poly, or --from-json".into())),
    }
    let code = if all_ok { EXIT_OK } else { EXIT_VERIFICATION };
    let stderr = if all_ok { String::new() } else { format!("error: {}\n", CliError::Verification) };
    Ok(Outcome { code, stdout, stderr })
}

/// Ceiling from the environment, or the default.
pub fn oracle_ceiling() -> Result<u64, CliError> {
    match std::env::var(ORACLE_CEILING_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{ORACLE_CEILING_VAR}={v:?} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_ORACLE_CEILING),
    }
}

fn search(a: &SearchArgs) -> Result<Outcome, CliError> {
    let set = parse_set(&a.set)?;
    let report = match brute_force_search(&set, a.max_degree, a.max_height, oracle_ceiling()?) {
        Ok(r) => r,
        Err(Error::SearchTooLarge { estimate, ceiling }) => {
            return Err(CliError::Usage(format!(
                "search box holds about {estimate} candidates, above the ceiling of {ceiling} (set {ORACLE_CEILING_VAR} to raise it)"
            )))
        }
        Err(e) => return Err(e.into()),
    };
    let mut stdout = String::new();
    json_line(&mut stdout, &SearchDocument::from_report(&report))?;
    Ok(Outcome { code: EXIT_OK, stdout, stderr: String::new() })
}
