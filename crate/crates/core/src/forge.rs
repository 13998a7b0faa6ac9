//! Witness construction: from a set `S` of distinct integers to an integer
//! polynomial `f` with `f(a) f(b)` a perfect square for all distinct
//! `a, b` in `S`, together with the square roots that certify it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::integer_sqrt;
use crate::rationalmaps::{param_plane, param_quadric, psi_raw, WPoint};
use crate::variety::{clear_denominators, PointConfig, ProjPoint};

pub const DEFAULT_PARAMETER_BOUND: u64 = 50;
pub const DEFAULT_MAX_ATTEMPTS: usize = 20;
pub const DEFAULT_ORACLE_CEILING: u64 = 100_000_000;

/// Integer polynomial, ascending coefficients, trimmed, leading coefficient
/// positive. The content is kept as produced; see [`Polynomial::primitive_part`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    /// Trims trailing zeros and fixes the sign of the leading coefficient.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        match coeffs.last() {
            None => Err(Error::Input("the zero polynomial has no normal form".into())),
            Some(lead) if lead.is_negative() => Ok(Self { coeffs: coeffs.into_iter().map(|c| -c).collect() }),
            Some(_) => Ok(Self { coeffs }),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn primitive_part(&self) -> Polynomial {
        let g = self.content();
        Self { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    pub fn scaled(&self, lambda: &BigInt) -> Result<Polynomial> {
        Self::new(self.coeffs.iter().map(|c| c * lambda).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `g` with `g^2 = self`, if one exists over the integers.
    pub fn square_root(&self) -> Option<Polynomial> {
        let deg = self.degree();
        if deg % 2 == 1 {
            return None;
        }
        let m = deg / 2;
        let top = integer_sqrt(&self.coeffs[deg])?;
        let mut g = vec![BigRational::zero(); m + 1];
        g[m] = BigRational::from_integer(top);
        let twice_top = &g[m] + &g[m];
        for t in 1..=m {
            let e = deg - t;
            let mut c = BigRational::from_integer(self.coeffs[e].clone());
            for a in m - t + 1..=m {
                let b = e - a;
                if b > m - t && b <= m {
                    c -= &g[a] * &g[b];
                }
            }
            g[m - t] = c / &twice_top;
        }
        if g.iter().any(|c| !c.is_integer()) {
            return None;
        }
        let root = Polynomial::new(g.into_iter().map(|c| c.to_integer()).collect()).ok()?;
        (root.square() == *self).then_some(root)
    }

    fn square(&self) -> Polynomial {
        let mut out = vec![BigInt::zero(); 2 * self.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in self.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial { coeffs: out }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = e == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Line through `(1, ..., 1)` on the single quadric with `n = d + 1`.
    Quadric,
    /// Projection from the plane of power points, `d = 2k`, `n = 3k + 1`.
    Plane,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Quadric => "quadric",
            Method::Plane => "plane",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadric" => Ok(Method::Quadric),
            "plane" => Ok(Method::Plane),
            other => Err(Error::Input(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    DegreeDropped,
    TrivialFamily,
    ZeroValue,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::DegreeDropped => "degree-dropped",
            Flag::TrivialFamily => "trivial-family",
            Flag::ZeroValue => "zero-value",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Flag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degree-dropped" => Ok(Flag::DegreeDropped),
            "trivial-family" => Ok(Flag::TrivialFamily),
            "zero-value" => Ok(Flag::ZeroValue),
            other => Err(Error::Input(format!("unknown flag {other:?}"))),
        }
    }
}

/// Outcome counts over the sampled parameters of one construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlagStats {
    pub degenerate: usize,
    pub base_point: usize,
    pub in_plane: usize,
    pub degree_dropped: usize,
    pub trivial_family: usize,
    pub zero_value: usize,
}

impl FlagStats {
    fn record(&mut self, flags: &BTreeSet<Flag>) {
        for f in flags {
            match f {
                Flag::DegreeDropped => self.degree_dropped += 1,
                Flag::TrivialFamily => self.trivial_family += 1,
                Flag::ZeroValue => self.zero_value += 1,
            }
        }
    }
}

impl fmt::Display for FlagStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degenerate {}, base-point {}, in-plane {}, degree-dropped {}, trivial-family {}, zero-value {}",
            self.degenerate, self.base_point, self.in_plane, self.degree_dropped, self.trivial_family, self.zero_value
        )
    }
}

/// A polynomial together with its square certificate on a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Ascending.
    pub set: Vec<BigInt>,
    pub poly: Polynomial,
    /// `(i, j) -> s` with `s^2 = f(set[i]) f(set[j])`, `i < j`.
    pub pair_roots: BTreeMap<(usize, usize), BigInt>,
    pub method: Method,
    pub parameter: ProjPoint,
    /// Auxiliary nodes appended for the plane construction; not certified.
    pub padding: Vec<BigInt>,
    pub flags: BTreeSet<Flag>,
}

/// Result of checking every pair of a set against a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub pairs: Vec<PairCheck>,
    pub failures: Vec<(usize, usize)>,
    /// Pairs whose product is zero (accepted as the square of 0).
    pub zero_products: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub product: BigInt,
    pub root: Option<BigInt>,
}

impl VerifyReport {
    pub fn roots(&self) -> BTreeMap<(usize, usize), BigInt> {
        self.pairs
            .iter()
            .filter_map(|p| p.root.clone().map(|r| ((p.i, p.j), r)))
            .collect()
    }
}

pub fn verify_witness(set: &[BigInt], poly: &Polynomial) -> VerifyReport {
    let values: Vec<BigInt> = set.iter().map(|a| poly.eval(a)).collect();
    let mut pairs = Vec::new();
    let mut failures = Vec::new();
    let mut zero_products = 0;
    for j in 0..set.len() {
        for i in 0..j {
            let product = &values[i] * &values[j];
            if product.is_zero() {
                zero_products += 1;
            }
            let root = integer_sqrt(&product);
            if root.is_none() {
                failures.push((i, j));
            }
            pairs.push(PairCheck { i, j, product, root });
        }
    }
    pairs.sort_by_key(|p| (p.i, p.j));
    failures.sort();
    VerifyReport { ok: failures.is_empty(), pairs, failures, zero_products }
}

/// Labels witnesses of the shape `c * g(x)^2` (including constants) and
/// polynomials vanishing somewhere on the set.
pub fn classify_trivial(poly: &Polynomial, set: &[BigInt]) -> BTreeSet<Flag> {
    let mut flags = BTreeSet::new();
    if poly.degree() == 0 || poly.primitive_part().square_root().is_some() {
        flags.insert(Flag::TrivialFamily);
    }
    if set.iter().any(|a| poly.eval(a).is_zero()) {
        flags.insert(Flag::ZeroValue);
    }
    flags
}

fn validate_set(set: &[BigInt]) -> Result<Vec<BigInt>> {
    if set.len() < 3 {
        return Err(Error::Input(format!("need at least 3 elements, got {}", set.len())));
    }
    let mut sorted = set.to_vec();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Input(format!("duplicate element {}", w[0])));
    }
    Ok(sorted)
}

/// Smallest `k >= 1` with `3k + 2 >= len`.
pub fn plane_k_for(len: usize) -> usize {
    len.saturating_sub(2).div_ceil(3).max(1)
}

/// A prepared construction for one set and method.
#[derive(Debug, Clone)]
pub struct WitnessForge {
    set: Vec<BigInt>,
    padding: Vec<BigInt>,
    method: Method,
    config: PointConfig,
}

impl WitnessForge {
    pub fn new(set: &[BigInt], method: Method) -> Result<Self> {
        let set = validate_set(set)?;
        let (padding, degree) = match method {
            Method::Quadric => (Vec::new(), set.len() - 2),
            Method::Plane => {
                let k = plane_k_for(set.len());
                let mut padding = Vec::new();
                let mut candidate = BigInt::zero();
                while set.len() + padding.len() < 3 * k + 2 {
                    if set.binary_search(&candidate).is_err() {
                        padding.push(candidate.clone());
                    }
                    candidate += 1;
                }
                (padding, 2 * k)
            }
        };
        let nodes: Vec<BigInt> = set.iter().chain(&padding).cloned().collect();
        let config = PointConfig::from_integers(&nodes, degree)?;
        Ok(Self { set, padding, method, config })
    }

    pub fn set(&self) -> &[BigInt] {
        &self.set
    }

    pub fn padding(&self) -> &[BigInt] {
        &self.padding
    }

    pub fn config(&self) -> &PointConfig {
        &self.config
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Number of coordinates of a parameter.
    pub fn parameter_len(&self) -> usize {
        self.config.degree() + 1
    }

    /// The `W` point a parameter maps to, with the base-point / in-plane flag.
    pub fn w_point(&self, q: &ProjPoint) -> Result<(WPoint<'_>, bool)> {
        if q.len() != self.parameter_len() {
            return Err(Error::Input(format!(
                "{} method on {} elements takes {} parameter coordinates, got {}",
                self.method,
                self.set.len(),
                self.parameter_len(),
                q.len()
            )));
        }
        match self.method {
            Method::Quadric => param_quadric(&self.config, q).map(|img| (img.point, img.base_point)),
            Method::Plane => param_plane(&self.config, q).map(|img| (img.point, img.in_plane)),
        }
    }

    /// Runs the full pipeline for one parameter without resampling.
    pub fn from_parameter(&self, q: &ProjPoint) -> Result<Witness> {
        let (w, _) = self.w_point(q)?;
        self.finish(q, &w)
    }

    fn finish(&self, q: &ProjPoint, w: &WPoint<'_>) -> Result<Witness> {
        let raw = psi_raw(w);
        let poly = Polynomial::new(clear_denominators(&raw.coeffs))?;
        let mut flags = classify_trivial(&poly, &self.set);
        if poly.degree() < self.config.degree() {
            flags.insert(Flag::DegreeDropped);
        }
        let report = verify_witness(&self.set, &poly);
        if !report.ok {
            return Err(Error::NotOnVariety("V (certificate check failed)"));
        }
        Ok(Witness {
            set: self.set.clone(),
            poly,
            pair_roots: report.roots(),
            method: self.method,
            parameter: q.clone(),
            padding: self.padding.clone(),
            flags,
        })
    }

    /// Draws parameters from `[-bound, bound]` until one yields an unflagged
    /// witness. Falls back to the first witness nonvanishing on the set.
    pub fn sample<R: Rng>(&self, rng: &mut R, max_attempts: usize, bound: u64) -> Result<Witness> {
        let bound = i64::try_from(bound.max(1)).unwrap_or(i64::MAX);
        let mut stats = FlagStats::default();
        let mut fallback = None;
        for _ in 0..max_attempts {
            let q = loop {
                let coords: Vec<BigInt> =
                    (0..self.parameter_len()).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
                if let Ok(q) = ProjPoint::new(coords) {
                    break q;
                }
            };
            let (w, special) = match self.w_point(&q) {
                Ok(v) => v,
                Err(Error::DegenerateParameter(_)) => {
                    stats.degenerate += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            if special {
                match self.method {
                    Method::Quadric => stats.base_point += 1,
                    Method::Plane => stats.in_plane += 1,
                }
            }
            let witness = self.finish(&q, &w)?;
            if witness.flags.is_empty() && !special {
                return Ok(witness);
            }
            stats.record(&witness.flags);
            if fallback.is_none() && !witness.flags.contains(&Flag::ZeroValue) {
                fallback = Some(witness);
            }
        }
        fallback.ok_or(Error::ConstructionFailure { attempts: max_attempts, stats })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructOptions {
    pub parameter: Option<ProjPoint>,
    pub seed: u64,
    pub max_attempts: usize,
    pub bound: u64,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        Self { parameter: None, seed: 0, max_attempts: DEFAULT_MAX_ATTEMPTS, bound: DEFAULT_PARAMETER_BOUND }
    }
}

/// One-shot construction: an explicit parameter is used as given (flags
/// reported, no resampling); otherwise parameters are drawn from a ChaCha
/// stream seeded with `opts.seed`.
pub fn construct_witness(set: &[BigInt], method: Method, opts: &ConstructOptions) -> Result<Witness> {
    let mut all = construct_witnesses(set, method, opts, 1)?;
    Ok(all.remove(0))
}

/// `count` witnesses drawn in sequence from one seeded stream. With an
/// explicit parameter only `count = 1` is meaningful.
pub fn construct_witnesses(set: &[BigInt], method: Method, opts: &ConstructOptions, count: usize) -> Result<Vec<Witness>> {
    let forge = WitnessForge::new(set, method)?;
    match &opts.parameter {
        Some(q) => {
            if count != 1 {
                return Err(Error::Input("an explicit parameter yields exactly one witness".into()));
            }
            Ok(vec![forge.from_parameter(q)?])
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            (0..count).map(|_| forge.sample(&mut rng, opts.max_attempts, opts.bound)).collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub set: Vec<BigInt>,
    pub max_degree: usize,
    pub max_height: u64,
    pub found: Vec<Polynomial>,
    pub exhausted: bool,
}

/// Number of primitive-candidate coefficient vectors the search box holds
/// (before the gcd filter): `sum_e H (2H + 1)^e`.
pub fn search_space_size(max_degree: usize, max_height: u64) -> BigUint {
    let h = BigUint::from(max_height);
    let width = &h * 2u32 + 1u32;
    (0..=max_degree).map(|e| &h * num_traits::pow(width.clone(), e)).sum()
}

/// Exhaustive scan of all primitive polynomials with positive leading
/// coefficient, degree at most `max_degree` and coefficients bounded by
/// `max_height` in absolute value. Independent of the construction path.
pub fn brute_force_search(set: &[BigInt], max_degree: usize, max_height: u64, ceiling: u64) -> Result<SearchReport> {
    if set.len() < 2 {
        return Err(Error::Input("search needs at least 2 elements".into()));
    }
    if max_height < 1 {
        return Err(Error::Input("max height must be at least 1".into()));
    }
    let estimate = search_space_size(max_degree, max_height);
    if estimate > BigUint::from(ceiling) {
        return Err(Error::SearchTooLarge { estimate, ceiling });
    }
    let h = max_height as i64;
    let mut found = Vec::new();
    for degree in 0..=max_degree {
        // odometer over the lower coefficients, leading coefficient outermost
        for lead in 1..=h {
            let mut lower = vec![-h; degree];
            loop {
                let coeffs: Vec<BigInt> = lower.iter().map(|&c| BigInt::from(c)).chain([BigInt::from(lead)]).collect();
                let g = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
                if g.is_one() {
                    let poly = Polynomial { coeffs };
                    if verify_witness(set, &poly).ok {
                        found.push(poly);
                    }
                }
                let Some(pos) = lower.iter().position(|&c| c < h) else { break };
                lower[pos] += 1;
                lower[..pos].iter_mut().for_each(|c| *c = -h);
            }
        }
    }
    Ok(SearchReport { set: set.to_vec(), max_degree, max_height, found, exhausted: true })
}
