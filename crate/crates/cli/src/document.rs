//! JSON documents exchanged on standard input and output. Every integer and
//! rational value is a decimal string; indices and bounds are plain JSON
//! integers.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use dioforge_core::{BigInt, BigRational, Flag, Method, Polynomial, ProjPoint, TwistPointSet, Witness};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDocument {
    pub schema_version: String,
    pub set: Vec<String>,
    pub poly: Vec<String>,
    pub method: String,
    pub parameter: Vec<String>,
    pub padding: Vec<String>,
    pub pair_roots: Vec<PairRoot>,
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<TwistDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairRoot {
    pub i: usize,
    pub j: usize,
    pub root: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistDocument {
    pub twist_scalar: String,
    pub poly: Vec<String>,
    pub points: Vec<TwistPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus_note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistPoint {
    pub x: String,
    pub y: String,
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn parse_int(s: &str) -> Result<BigInt, CliError> {
    BigInt::from_str(s.trim()).map_err(|_| CliError::Usage(format!("{s:?} is not an integer")))
}

pub fn parse_ints(v: &[String]) -> Result<Vec<BigInt>, CliError> {
    v.iter().map(|s| parse_int(s)).collect()
}

/// Parses a comma-separated list such as `0,1,-2`.
pub fn parse_list(s: &str) -> Result<Vec<BigInt>, CliError> {
    if s.trim().is_empty() {
        return Err(CliError::Usage("empty list".into()));
    }
    s.split(',').map(parse_int).collect()
}

impl TwistDocument {
    pub fn from_points(t: &TwistPointSet) -> Self {
        Self {
            twist_scalar: t.curve.twist_scalar.to_string(),
            poly: strings(&t.curve.poly),
            points: t
                .points
                .iter()
                .map(|(x, y)| TwistPoint { x: x.to_string(), y: y.to_string() })
                .collect(),
            genus_note: t.genus_note.clone(),
        }
    }

    /// Checks `twist_scalar * y^2 = f(x)` for every listed point.
    pub fn check(&self) -> Result<bool, CliError> {
        let rat = |s: &str| {
            BigRational::from_str(s).map_err(|_| CliError::Usage(format!("{s:?} is not a rational number")))
        };
        let scalar = rat(&self.twist_scalar)?;
        let f: Vec<BigRational> = parse_ints(&self.poly)?.into_iter().map(BigRational::from_integer).collect();
        for p in &self.points {
            let (x, y) = (rat(&p.x)?, rat(&p.y)?);
            if &scalar * &y * &y != dioforge_core::variety::eval_poly(&f, &x) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl WitnessDocument {
    pub fn from_witness(w: &Witness, twist: Option<&TwistPointSet>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            set: strings(&w.set),
            poly: strings(w.poly.coeffs()),
            method: w.method.to_string(),
            parameter: strings(w.parameter.coords()),
            padding: strings(&w.padding),
            pair_roots: w
                .pair_roots
                .iter()
                .map(|(&(i, j), root)| PairRoot { i, j, root: root.to_string() })
                .collect(),
            flags: w.flags.iter().map(ToString::to_string).collect(),
            twist: twist.map(TwistDocument::from_points),
        }
    }

    pub fn to_witness(&self) -> Result<Witness, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Usage(format!("unsupported schema version {:?}", self.schema_version)));
        }
        let pair_roots: BTreeMap<(usize, usize), BigInt> = self
            .pair_roots
            .iter()
            .map(|p| Ok(((p.i, p.j), parse_int(&p.root)?)))
            .collect::<Result<_, CliError>>()?;
        let flags: BTreeSet<Flag> = self
            .flags
            .iter()
            .map(|f| Flag::from_str(f))
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(Witness {
            set: parse_ints(&self.set)?,
            poly: Polynomial::new(parse_ints(&self.poly)?).map_err(|e| CliError::Usage(e.to_string()))?,
            pair_roots,
            method: Method::from_str(&self.method).map_err(|e| CliError::Usage(e.to_string()))?,
            parameter: ProjPoint::new(parse_ints(&self.parameter)?).map_err(|e| CliError::Usage(e.to_string()))?,
            padding: parse_ints(&self.padding)?,
            flags,
        })
    }
}

/// One line of `verify` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyDocument {
    pub ok: bool,
    pub set: Vec<String>,
    pub poly: Vec<String>,
    pub pairs: Vec<PairReport>,
    pub zero_products: usize,
    /// Present when a witness document was checked: whether its recorded
    /// pair roots (and twist points, if any) match the recomputed ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate_matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairReport {
    pub a: String,
    pub b: String,
    pub product: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub root: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchDocument {
    pub set: Vec<String>,
    pub max_degree: usize,
    pub max_height: u64,
    pub found: Vec<Vec<String>>,
    pub exhausted: bool,
}

impl SearchDocument {
    pub fn from_report(r: &dioforge_core::SearchReport) -> Self {
        Self {
            set: strings(&r.set),
            max_degree: r.max_degree,
            max_height: r.max_height,
            found: r.found.iter().map(|p| strings(p.coeffs())).collect(),
            exhausted: r.exhausted,
        }
    }
}
