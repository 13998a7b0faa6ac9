//! Point configurations, projective points and the determinantal varieties
//! `V` (square conditions on a polynomial) and `W` (diagonal quadrics).

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{self, Matrix};

/// A point of projective space stored as its canonical integer
/// representative: primitive, first nonzero coordinate positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        let g = coords.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        let first_negative = coords.iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative);
        let g = if first_negative { -g } else { g };
        Ok(Self { coords: coords.into_iter().map(|c| c / &g).collect() })
    }

    /// Clears denominators, then canonicalizes.
    pub fn from_rationals(coords: &[BigRational]) -> Result<Self> {
        Self::new(clear_denominators(coords))
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        self.coords.iter().cloned().map(BigRational::from_integer).collect()
    }

    /// True when every coordinate is equal, i.e. the point `(1, ..., 1)`.
    pub fn is_all_ones(&self) -> bool {
        self.coords.iter().all(One::is_one)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Multiplies a rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Evaluates `c_0 + c_1 x + ...` exactly.
pub fn eval_poly(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// One defining equation of `W`: `sum_j coeffs[j] * Y[support[j]]^2 = 0`.
///
/// The support is the base columns `0..=d` followed by one extra index.
/// Coefficients are primitive integers with the extra-index coefficient
/// positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalQuadric {
    support: Vec<usize>,
    coeffs: Vec<BigInt>,
}

impl DiagonalQuadric {
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn extra_index(&self) -> usize {
        *self.support.last().expect("support is never empty")
    }

    /// `sum_j c_j * values[support_j]`, the linear form in the squares.
    pub fn eval_linear(&self, values: &[BigRational]) -> BigRational {
        self.support
            .iter()
            .zip(&self.coeffs)
            .map(|(&i, c)| &values[i] * c)
            .sum()
    }

    /// `sum_j c_j * y[support_j]^2`.
    pub fn eval_squares(&self, y: &[BigInt]) -> BigInt {
        self.support
            .iter()
            .zip(&self.coeffs)
            .map(|(&i, c)| c * &y[i] * &y[i])
            .sum()
    }
}

#[derive(Debug, Clone)]
struct Derived {
    vandermonde: BigRational,
    cofactors: Vec<Vec<BigRational>>,
    quadrics: Vec<DiagonalQuadric>,
}

/// Distinct evaluation nodes `x_0, ..., x_n` and the polynomial degree `d`.
#[derive(Debug, Clone)]
pub struct PointConfig {
    nodes: Vec<BigRational>,
    degree: usize,
    derived: OnceLock<Derived>,
}

impl PartialEq for PointConfig {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.degree == other.degree
    }
}

impl Eq for PointConfig {}

impl PointConfig {
    pub fn new(nodes: Vec<BigRational>, degree: usize) -> Result<Self> {
        if degree < 1 {
            return Err(Error::InvalidConfig("degree must be at least 1".into()));
        }
        if nodes.len() < degree + 2 {
            return Err(Error::InvalidConfig(format!(
                "{} nodes cannot carry degree {degree}; need at least {}",
                nodes.len(),
                degree + 2
            )));
        }
        for (i, a) in nodes.iter().enumerate() {
            if nodes[..i].contains(a) {
                return Err(Error::DuplicateNode(a.to_string()));
            }
        }
        Ok(Self { nodes, degree, derived: OnceLock::new() })
    }

    pub fn from_integers(nodes: &[BigInt], degree: usize) -> Result<Self> {
        Self::new(nodes.iter().cloned().map(BigRational::from_integer).collect(), degree)
    }

    pub fn from_i64(nodes: &[i64], degree: usize) -> Result<Self> {
        Self::new(nodes.iter().map(|&v| exactmath::rat(v)).collect(), degree)
    }

    pub fn nodes(&self) -> &[BigRational] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &BigRational {
        &self.nodes[i]
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Index of the last node; the varieties live in `P^n`.
    pub fn n(&self) -> usize {
        self.nodes.len() - 1
    }

    fn extra_indices(&self) -> std::ops::RangeInclusive<usize> {
        self.degree + 1..=self.n()
    }

    fn check_extra(&self, extra: usize) -> Result<()> {
        if self.extra_indices().contains(&extra) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: extra,
                range: format!("{}..={}", self.degree + 1, self.n()),
            })
        }
    }

    fn derived(&self) -> &Derived {
        self.derived.get_or_init(|| {
            let d = self.degree;
            let vandermonde =
                exactmath::det(&exactmath::vandermonde(&self.nodes[..=d]).expect("d >= 1"))
                    .expect("square");
            let cofactors: Vec<Vec<BigRational>> = self
                .extra_indices()
                .map(|m| {
                    let zeros = vec![BigRational::zero(); d + 2];
                    let bm = self.bracket_matrix(&zeros, m);
                    (0..d + 2)
                        .map(|j| {
                            let mnr = exactmath::minor(&bm, d + 1, j).expect("in range");
                            if (d + 1 + j).is_multiple_of(2) {
                                mnr
                            } else {
                                -mnr
                            }
                        })
                        .collect()
                })
                .collect();
            let quadrics = self
                .extra_indices()
                .zip(&cofactors)
                .map(|(m, raw)| {
                    let mut coeffs = clear_denominators(raw);
                    let g = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
                    let g = if coeffs[d + 1].is_negative() { -g } else { g };
                    coeffs.iter_mut().for_each(|c| *c /= &g);
                    DiagonalQuadric { support: (0..=d).chain([m]).collect(), coeffs }
                })
                .collect();
            Derived { vandermonde, cofactors, quadrics }
        })
    }

    /// Vandermonde determinant of `x_0, ..., x_d`.
    pub fn vandermonde(&self) -> &BigRational {
        &self.derived().vandermonde
    }

    /// Last-row cofactors of the bracket for `extra`, before any
    /// normalization, so `bracket(z, extra) = sum_j cofactors[j] * z[j]`.
    pub fn bracket_cofactors(&self, extra: usize) -> Result<&[BigRational]> {
        self.check_extra(extra)?;
        Ok(&self.derived().cofactors[extra - self.degree - 1])
    }

    fn bracket_matrix(&self, z: &[BigRational], extra: usize) -> Matrix {
        let d = self.degree;
        let cols: Vec<&BigRational> = self.nodes[..=d].iter().chain([&self.nodes[extra]]).collect();
        Matrix::from_fn(d + 2, d + 2, |r, c| {
            if r <= d {
                exactmath::pow(cols[c], r)
            } else {
                z[c].clone()
            }
        })
        .expect("non-empty")
    }

    /// The `(d+2) x (d+2)` determinant whose first `d+1` rows are the node
    /// powers over columns `x_0..x_d, x_extra` and whose last row is `z`.
    pub fn bracket(&self, z: &[BigRational], extra: usize) -> Result<BigRational> {
        self.check_extra(extra)?;
        if z.len() != self.degree + 2 {
            return Err(Error::Dimension(format!(
                "bracket row of length {} (expected {})",
                z.len(),
                self.degree + 2
            )));
        }
        exactmath::det(&self.bracket_matrix(z, extra))
    }

    pub fn quadric(&self, extra: usize) -> Result<&DiagonalQuadric> {
        self.check_extra(extra)?;
        Ok(&self.derived().quadrics[extra - self.degree - 1])
    }

    /// All `n - d` quadrics cutting out `W`.
    pub fn quadrics(&self) -> &[DiagonalQuadric] {
        &self.derived().quadrics
    }

    pub fn on_w(&self, y: &ProjPoint) -> Result<bool> {
        if y.len() != self.nodes.len() {
            return Err(Error::Dimension(format!(
                "W-point with {} coordinates (expected {})",
                y.len(),
                self.nodes.len()
            )));
        }
        Ok(self.quadrics().iter().all(|q| q.eval_squares(y.coords()).is_zero()))
    }

    /// Membership in `V`: coordinates `(f_0..f_d, z_1..z_n)` with
    /// `z_i^2 = f(x_0) f(x_i)` for every `i >= 1`.
    pub fn on_v(&self, p: &ProjPoint) -> Result<bool> {
        let d = self.degree;
        if p.len() != d + 1 + self.n() {
            return Err(Error::Dimension(format!(
                "V-point with {} coordinates (expected {})",
                p.len(),
                d + 1 + self.n()
            )));
        }
        let coords = p.to_rationals();
        let (f, z) = coords.split_at(d + 1);
        let f0 = eval_poly(f, &self.nodes[0]);
        Ok(z
            .iter()
            .zip(&self.nodes[1..])
            .all(|(zi, xi)| zi * zi == &f0 * eval_poly(f, xi)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rats(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn canonical_projective_points() {
        let p = ProjPoint::from_i64(&[0, -4, 6]).unwrap();
        assert_eq!(p.coords(), ints(&[0, 2, -3]).as_slice());
        let half = BigRational::new(1.into(), 2.into());
        let q = ProjPoint::from_rationals(&[half, rat(-3)]).unwrap();
        assert_eq!(q.coords(), ints(&[1, -6]).as_slice());
        assert_eq!(ProjPoint::from_i64(&[0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn config_validation() {
        assert!(matches!(PointConfig::from_i64(&[0, 1, 1], 1), Err(Error::DuplicateNode(_))));
        assert!(matches!(PointConfig::from_i64(&[0, 1, 2], 2), Err(Error::InvalidConfig(_))));
        assert!(matches!(PointConfig::from_i64(&[0, 1, 2], 0), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn bracket_examples() {
        let c = PointConfig::from_i64(&[0, 1, 2], 1).unwrap();
        assert_eq!(c.bracket(&rats(&[1, 1, 1]), 2).unwrap(), rat(0));
        assert_eq!(c.bracket(&rats(&[0, 1, 4]), 2).unwrap(), rat(2));
        assert_eq!(c.bracket(&rats(&[1, 25, 49]), 2).unwrap(), rat(0));
        assert!(matches!(c.bracket(&rats(&[1, 1, 1]), 1), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(c.bracket(&rats(&[1, 1]), 2), Err(Error::Dimension(_))));
    }

    #[test]
    fn quadric_examples() {
        let c = PointConfig::from_i64(&[0, 1, 2], 1).unwrap();
        let q = c.quadric(2).unwrap();
        assert_eq!(q.support(), &[0, 1, 2]);
        assert_eq!(q.coeffs(), ints(&[1, -2, 1]).as_slice());

        let c = PointConfig::from_i64(&[0, 1, 2, 3, 4], 2).unwrap();
        let q3 = c.quadric(3).unwrap();
        assert_eq!(q3.support(), &[0, 1, 2, 3]);
        assert_eq!(q3.coeffs(), ints(&[-1, 3, -3, 1]).as_slice());
        let q4 = c.quadric(4).unwrap();
        assert_eq!(q4.support(), &[0, 1, 2, 4]);
        assert_eq!(q4.coeffs(), ints(&[-3, 8, -6, 1]).as_slice());
        assert!(c.quadric(2).is_err());
        assert!(c.quadric(5).is_err());
    }

    #[test]
    fn w_membership() {
        let c = PointConfig::from_i64(&[0, 1, 2], 1).unwrap();
        assert!(c.on_w(&ProjPoint::from_i64(&[1, 1, 1]).unwrap()).unwrap());
        assert!(c.on_w(&ProjPoint::from_i64(&[1, 5, 7]).unwrap()).unwrap());
        assert!(!c.on_w(&ProjPoint::from_i64(&[1, 2, 3]).unwrap()).unwrap());
        assert!(c.on_w(&ProjPoint::from_i64(&[1, 2]).unwrap()).is_err());
    }

    #[test]
    fn v_membership() {
        let c = PointConfig::from_i64(&[0, 1, 2], 1).unwrap();
        assert!(c.on_v(&ProjPoint::from_i64(&[-1, -24, 5, 7]).unwrap()).unwrap());
        assert!(c.on_v(&ProjPoint::from_i64(&[1, 0, 1, 1]).unwrap()).unwrap());
        assert!(!c.on_v(&ProjPoint::from_i64(&[1, 1, 1, 1]).unwrap()).unwrap());
        assert!(c.on_v(&ProjPoint::from_i64(&[1, 1, 1]).unwrap()).is_err());
    }

    #[test]
    fn rational_nodes_are_accepted() {
        let nodes = vec![rat(0), BigRational::new(1.into(), 2.into()), rat(1), rat(3)];
        let c = PointConfig::new(nodes, 1).unwrap();
        assert_eq!(c.quadrics().len(), 2);
        assert!(c.on_w(&ProjPoint::from_i64(&[1, 1, 1, 1]).unwrap()).unwrap());
    }

    fn config_strategy() -> impl Strategy<Value = PointConfig> {
        (1usize..=5)
            .prop_flat_map(|d| {
                (Just(d), prop::collection::btree_set(-25i64..25, d + 2..=d + 5))
            })
            .prop_map(|(d, set)| {
                let nodes: Vec<i64> = set.into_iter().collect();
                PointConfig::from_i64(&nodes, d).unwrap()
            })
    }

    proptest! {
        #[test]
        fn quadrics_annihilate_power_rows(c in config_strategy()) {
            for q in c.quadrics() {
                for t in 0..=c.degree() {
                    let powers: Vec<BigRational> = c.nodes().iter().map(|x| exactmath::pow(x, t)).collect();
                    prop_assert!(q.eval_linear(&powers).is_zero());
                }
            }
        }

        #[test]
        fn extra_coefficient_tracks_vandermonde(c in config_strategy()) {
            let d = c.degree();
            for m in d + 1..=c.n() {
                let raw = c.bracket_cofactors(m).unwrap();
                prop_assert_eq!(&raw[d + 1], c.vandermonde());
                let q = c.quadric(m).unwrap();
                prop_assert!(q.coeffs()[d + 1].is_positive());
            }
        }

        #[test]
        fn bracket_is_cofactor_expansion(c in config_strategy(), z in prop::collection::vec(-40i64..40, 7)) {
            let d = c.degree();
            let z: Vec<BigRational> = z[..d + 2].iter().map(|&v| rat(v)).collect();
            for m in d + 1..=c.n() {
                let raw = c.bracket_cofactors(m).unwrap();
                let expanded: BigRational = raw.iter().zip(&z).map(|(a, b)| a * b).sum();
                prop_assert_eq!(c.bracket(&z, m).unwrap(), expanded);
            }
        }

        #[test]
        fn base_point_and_plane_on_w(c in config_strategy()) {
            let ones = ProjPoint::new(vec![BigInt::one(); c.nodes().len()]).unwrap();
            prop_assert!(c.on_w(&ones).unwrap());
            for t in 0..=c.degree() / 2 {
                let tt = ProjPoint::from_rationals(
                    &c.nodes().iter().map(|x| exactmath::pow(x, t)).collect::<Vec<_>>(),
                );
                if let Ok(tt) = tt {
                    prop_assert!(c.on_w(&tt).unwrap());
                }
            }
        }

        #[test]
        fn membership_is_scale_invariant(lambda in prop_oneof![-9i64..=-1, 1i64..=9]) {
            let c = PointConfig::from_i64(&[0, 1, 2], 1).unwrap();
            let scaled = |v: &[i64]| ProjPoint::from_i64(&v.iter().map(|x| x * lambda).collect::<Vec<_>>()).unwrap();
            prop_assert!(c.on_w(&scaled(&[1, 5, 7])).unwrap());
            prop_assert!(!c.on_w(&scaled(&[1, 2, 3])).unwrap());
            prop_assert!(c.on_v(&scaled(&[-1, -24, 5, 7])).unwrap());
            prop_assert!(!c.on_v(&scaled(&[1, 1, 1, 1])).unwrap());
        }
    }
}
