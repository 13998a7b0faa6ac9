//! Rational points on the quadratic twist `f(x_0) y^2 = f(x)` carried by a
//! point of `V`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forge::Witness;
use crate::rationalmaps::VPoint;
use crate::variety::eval_poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistCurve {
    /// `f(x_0)`.
    pub twist_scalar: BigRational,
    /// Coefficients of `f`, ascending, exactly as carried by the source point.
    pub poly: Vec<BigInt>,
}

impl TwistCurve {
    pub fn contains(&self, x: &BigRational, y: &BigRational) -> bool {
        let f: Vec<BigRational> = self.poly.iter().cloned().map(BigRational::from_integer).collect();
        &self.twist_scalar * y * y == eval_poly(&f, x)
    }

    fn degree(&self) -> usize {
        self.poly.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistPointSet {
    pub curve: TwistCurve,
    /// `(x_0, 1)` first, then `(x_i, z_i / f(x_0))` in node order.
    pub points: Vec<(BigRational, BigRational)>,
    /// Set when `deg f <= 2`, where the curve has genus 0.
    pub genus_note: Option<String>,
}

impl TwistPointSet {
    /// Builds the point set from nodes, coefficients and certificates
    /// `z_1, ..., z_n` with `z_i^2 = f(x_0) f(x_i)`. Every point is checked.
    pub fn from_parts(nodes: &[BigRational], coeffs: &[BigInt], certificates: &[BigRational]) -> Result<Self> {
        if nodes.is_empty() || certificates.len() + 1 != nodes.len() {
            return Err(Error::Dimension(format!(
                "{} certificates for {} nodes",
                certificates.len(),
                nodes.len()
            )));
        }
        let f: Vec<BigRational> = coeffs.iter().cloned().map(BigRational::from_integer).collect();
        let twist_scalar = eval_poly(&f, &nodes[0]);
        if twist_scalar.is_zero() {
            return Err(Error::DegenerateTwist);
        }
        let curve = TwistCurve { twist_scalar, poly: coeffs.to_vec() };
        let points: Vec<(BigRational, BigRational)> = std::iter::once((nodes[0].clone(), BigRational::one()))
            .chain(nodes[1..].iter().zip(certificates).map(|(x, z)| (x.clone(), z / &curve.twist_scalar)))
            .collect();
        if !points.iter().all(|(x, y)| curve.contains(x, y)) {
            return Err(Error::NotOnVariety("the twist curve"));
        }
        let deg = curve.degree();
        let genus_note = (deg <= 2).then(|| format!("deg f = {deg}: genus 0 curve, not hyperelliptic"));
        Ok(Self { curve, points, genus_note })
    }
}

/// Points `P_0 = (x_0, 1)` and `P_i = (x_i, z_i / f(x_0))` from the integer
/// data of `v`, with no renormalization of `f`.
pub fn twist_points(v: &VPoint<'_>) -> Result<TwistPointSet> {
    let certs: Vec<BigRational> = v.certificates().iter().cloned().map(BigRational::from_integer).collect();
    TwistPointSet::from_parts(v.config().nodes(), v.coeffs(), &certs)
}

/// Twist points over the certified set of a witness (padding excluded),
/// using the non-negative roots of `f(x_0) f(x_i)` as certificates.
pub fn witness_twist(w: &Witness) -> Result<TwistPointSet> {
    let nodes: Vec<BigRational> = w.set.iter().cloned().map(BigRational::from_integer).collect();
    let certs = (1..w.set.len())
        .map(|i| {
            w.pair_roots
                .get(&(0, i))
                .cloned()
                .map(BigRational::from_integer)
                .ok_or_else(|| Error::Input(format!("missing pair root (0, {i})")))
        })
        .collect::<Result<Vec<_>>>()?;
    TwistPointSet::from_parts(&nodes, w.poly.coeffs(), &certs)
}
