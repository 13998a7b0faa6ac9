//! The birational correspondence between `V` and `W`, and the two rational
//! parametrizations of `W`: projection from the base point `(1, ..., 1)` when
//! `n = d + 1`, and projection from the plane of power points when `d = 2k`,
//! `n = 3k + 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{self, Matrix};
use crate::variety::{eval_poly, PointConfig, ProjPoint};

/// A point of `W` together with the configuration it lives over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WPoint<'a> {
    config: &'a PointConfig,
    coords: ProjPoint,
}

impl<'a> WPoint<'a> {
    pub fn new(config: &'a PointConfig, coords: ProjPoint) -> Result<Self> {
        if !config.on_w(&coords)? {
            return Err(Error::NotOnVariety("W"));
        }
        Ok(Self { config, coords })
    }

    pub fn config(&self) -> &'a PointConfig {
        self.config
    }

    pub fn coords(&self) -> &ProjPoint {
        &self.coords
    }

    pub fn is_base_point(&self) -> bool {
        self.coords.is_all_ones()
    }
}

/// A point of `V` with coordinates `(f_0, ..., f_d, z_1, ..., z_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPoint<'a> {
    config: &'a PointConfig,
    coords: ProjPoint,
}

impl<'a> VPoint<'a> {
    pub fn new(config: &'a PointConfig, coords: ProjPoint) -> Result<Self> {
        if !config.on_v(&coords)? {
            return Err(Error::NotOnVariety("V"));
        }
        Ok(Self { config, coords })
    }

    pub fn config(&self) -> &'a PointConfig {
        self.config
    }

    pub fn coords(&self) -> &ProjPoint {
        &self.coords
    }

    /// Polynomial coefficients `f_0, ..., f_d`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coords.coords()[..=self.config.degree()]
    }

    /// Certificate values `z_1, ..., z_n`.
    pub fn certificates(&self) -> &[BigInt] {
        &self.coords.coords()[self.config.degree() + 1..]
    }

    pub fn value_at(&self, i: usize) -> BigRational {
        let f: Vec<BigRational> = self.coeffs().iter().cloned().map(BigRational::from_integer).collect();
        eval_poly(&f, self.config.node(i))
    }

    /// `f(x_0) = 0`: the point carries no square certificates.
    pub fn is_degenerate(&self) -> bool {
        self.value_at(0).is_zero()
    }
}

/// `(f, z) -> (f(x_0), z_1, ..., z_n)`.
pub fn phi_v_to_w<'a>(v: &VPoint<'a>) -> Result<WPoint<'a>> {
    let mut y = vec![v.value_at(0)];
    y.extend(v.certificates().iter().cloned().map(BigRational::from_integer));
    let coords = ProjPoint::from_rationals(&y).map_err(|_| Error::Indeterminate("f(x_0) and every z_i vanish"))?;
    WPoint::new(v.config, coords)
}

/// Output of the inverse map before projective normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiImage {
    pub coeffs: Vec<BigRational>,
    pub certificates: Vec<BigRational>,
}

/// The inverse map evaluated on the given integer representative of `w`.
///
/// `f_j` is `(-1)^j` times the minor of the squares bracket with its last
/// column and row `j` removed; then `f(x_i) = (-1)^d D Y_i^2` for every node.
/// The certificates are `z_i = (-1)^d D Y_0 Y_i`, which makes both
/// composites with [`phi_v_to_w`] the identity.
pub fn psi_raw(w: &WPoint<'_>) -> PsiImage {
    let config = w.config;
    let d = config.degree();
    let y = w.coords.coords();
    let squares = Matrix::from_fn(d + 2, d + 1, |r, c| {
        if r <= d {
            exactmath::pow(config.node(c), r)
        } else {
            BigRational::from_integer(&y[c] * &y[c])
        }
    })
    .expect("non-empty");
    let coeffs = (0..=d)
        .map(|j| {
            let m = exactmath::det(&squares.without(Some(j), None).expect("in range")).expect("square");
            if j % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect();
    let scale = if d.is_multiple_of(2) {
        config.vandermonde() * BigRational::from_integer(y[0].clone())
    } else {
        -config.vandermonde() * BigRational::from_integer(y[0].clone())
    };
    let certificates = y[1..]
        .iter()
        .map(|yi| &scale * BigRational::from_integer(yi.clone()))
        .collect();
    PsiImage { coeffs, certificates }
}

pub fn psi_w_to_v<'a>(w: &WPoint<'a>) -> Result<VPoint<'a>> {
    let raw = psi_raw(w);
    let all: Vec<BigRational> = raw.coeffs.into_iter().chain(raw.certificates).collect();
    VPoint::new(w.config, ProjPoint::from_rationals(&all)?)
}

/// Image of a parameter under the line construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricImage<'a> {
    pub point: WPoint<'a>,
    pub mu: BigRational,
    pub nu: BigRational,
    /// The image is `(1, ..., 1)`, the centre of projection.
    pub base_point: bool,
}

fn require_hypersurface(config: &PointConfig) -> Result<()> {
    if config.n() == config.degree() + 1 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "line construction needs n = d + 1, got n = {} and d = {}",
            config.n(),
            config.degree()
        )))
    }
}

/// Second intersection of `W` (a single quadric) with the line through
/// `(1, ..., 1)` and `(q_0, ..., q_d, 0)`: `Y = 2 mu Q - nu P`.
pub fn param_quadric<'a>(config: &'a PointConfig, q: &ProjPoint) -> Result<QuadricImage<'a>> {
    param_quadric_coords(config, &q.to_rationals())
}

/// [`param_quadric`] on an arbitrary (not necessarily canonical) rational
/// representative of the parameter.
pub fn param_quadric_coords<'a>(config: &'a PointConfig, qs: &[BigRational]) -> Result<QuadricImage<'a>> {
    require_hypersurface(config)?;
    let d = config.degree();
    if qs.len() != d + 1 {
        return Err(Error::Dimension(format!("parameter of length {} (expected {})", qs.len(), d + 1)));
    }
    let linear: Vec<BigRational> = qs.iter().cloned().chain([BigRational::zero()]).collect();
    let squares: Vec<BigRational> = linear.iter().map(|v| v * v).collect();
    let mu = config.bracket(&linear, d + 1)?;
    let nu = config.bracket(&squares, d + 1)?;
    let two_mu = &mu + &mu;
    let y: Vec<BigRational> = linear.iter().map(|qi| &two_mu * qi - &nu).collect();
    let coords = ProjPoint::from_rationals(&y).map_err(|_| Error::DegenerateParameter("mu and nu both vanish"))?;
    let base_point = coords.is_all_ones();
    Ok(QuadricImage { point: WPoint::new(config, coords)?, mu, nu, base_point })
}

/// `Y -> (Y_0 - Y_{d+1}, ..., Y_d - Y_{d+1})`.
pub fn param_quadric_inv(w: &WPoint<'_>) -> Result<ProjPoint> {
    require_hypersurface(w.config)?;
    let y = w.coords.coords();
    let last = &y[y.len() - 1];
    ProjPoint::new(y[..y.len() - 1].iter().map(|v| v - last).collect())
        .map_err(|_| Error::Indeterminate("the base point (1, ..., 1)"))
}

/// The power points `T_t = (x_0^t, ..., x_n^t)`, `t = 0..=k`, spanning a
/// linear space contained in `W` when `d = 2k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneBasis {
    points: Vec<ProjPoint>,
}

impl PlaneBasis {
    pub fn new(config: &PointConfig) -> Result<Self> {
        let k = plane_k(config)?;
        let points = (0..=k)
            .map(|t| {
                let row: Vec<BigRational> = config.nodes().iter().map(|x| exactmath::pow(x, t)).collect();
                ProjPoint::from_rationals(&row)
            })
            .collect::<Result<_>>()?;
        Ok(Self { points })
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }
}

/// `k` for a configuration with `d = 2k` and `n = 3k + 1`.
pub fn plane_k(config: &PointConfig) -> Result<usize> {
    let d = config.degree();
    let k = d / 2;
    if d.is_multiple_of(2) && config.n() == 3 * k + 1 {
        Ok(k)
    } else {
        Err(Error::InvalidConfig(format!(
            "plane construction needs d = 2k and n = 3k + 1, got d = {d} and n = {}",
            config.n()
        )))
    }
}

/// The `(k+1) x (k+2)` matrix whose kernel gives the plane-projection image.
///
/// Row `m - 2k - 1` holds `2 [q_i x_i^t | m]` for `t = 0..=k` followed by
/// `[q_i^2 | m]`, where `[z | m]` is the bracket with extra index `m`.
pub fn build_a(config: &PointConfig, q: &ProjPoint) -> Result<Matrix> {
    build_a_coords(config, &q.to_rationals())
}

pub fn build_a_coords(config: &PointConfig, qs: &[BigRational]) -> Result<Matrix> {
    let k = plane_k(config)?;
    let d = 2 * k;
    if qs.len() != d + 1 {
        return Err(Error::Dimension(format!("parameter of length {} (expected {})", qs.len(), d + 1)));
    }
    let two = exactmath::rat(2);
    let mut entries = Vec::with_capacity((k + 1) * (k + 2));
    for m in d + 1..=config.n() {
        for t in 0..=k {
            let row: Vec<BigRational> = qs
                .iter()
                .zip(config.nodes())
                .map(|(qi, xi)| qi * exactmath::pow(xi, t))
                .chain([BigRational::zero()])
                .collect();
            entries.push(&two * config.bracket(&row, m)?);
        }
        let row: Vec<BigRational> = qs.iter().map(|v| v * v).chain([BigRational::zero()]).collect();
        entries.push(config.bracket(&row, m)?);
    }
    Matrix::new(k + 1, k + 2, entries)
}

/// Image of a parameter under the plane projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneImage<'a> {
    pub point: WPoint<'a>,
    pub a: Matrix,
    /// `mu_j = (-1)^j det(A without column j)`.
    pub mu: Vec<BigRational>,
    /// `mu_{k+1} = 0`: the image lies in the plane itself.
    pub in_plane: bool,
}

/// Sends `(q_0 : ... : q_{2k})` to `sum_t mu_t T_t + mu_{k+1} Q`, the residual
/// intersection of `W` with the span of the plane and `Q = (q, 0, ..., 0)`.
pub fn param_plane<'a>(config: &'a PointConfig, q: &ProjPoint) -> Result<PlaneImage<'a>> {
    param_plane_coords(config, &q.to_rationals())
}

/// [`param_plane`] on an arbitrary rational representative of the parameter.
pub fn param_plane_coords<'a>(config: &'a PointConfig, qs: &[BigRational]) -> Result<PlaneImage<'a>> {
    let a = build_a_coords(config, qs)?;
    let k = a.rows() - 1;
    let mu: Vec<BigRational> = (0..=k + 1)
        .map(|j| {
            let m = exactmath::det(&a.without(None, Some(j))?)?;
            Ok(if j % 2 == 0 { m } else { -m })
        })
        .collect::<Result<_>>()?;
    if mu.iter().all(Zero::is_zero) {
        return Err(Error::DegenerateParameter("A is rank deficient"));
    }
    let y: Vec<BigRational> = config
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let mut v = eval_poly(&mu[..=k], x);
            if let Some(qi) = qs.get(i) {
                v += &mu[k + 1] * qi;
            }
            v
        })
        .collect();
    let coords = ProjPoint::from_rationals(&y).map_err(|_| Error::DegenerateParameter("zero image"))?;
    let in_plane = mu[k + 1].is_zero();
    Ok(PlaneImage { point: WPoint::new(config, coords)?, a, mu, in_plane })
}

/// Projection away from the plane: subtract the degree-`k` interpolant of
/// the last `k + 1` coordinates from the first `2k + 1`.
pub fn param_plane_inv(w: &WPoint<'_>) -> Result<ProjPoint> {
    let config = w.config;
    let k = plane_k(config)?;
    let d = 2 * k;
    let y = w.coords.to_rationals();
    let tail: Vec<(BigRational, BigRational)> =
        (d + 1..=config.n()).map(|m| (config.node(m).clone(), y[m].clone())).collect();
    let g = exactmath::interpolate(&tail, k)?;
    let diffs: Vec<BigRational> = (0..=d).map(|i| &y[i] - g.eval(config.node(i))).collect();
    ProjPoint::from_rationals(&diffs).map_err(|_| Error::Indeterminate("point lies in the plane"))
}

/// Whether two points agree up to scale and per-coordinate sign, i.e. their
/// coordinatewise squares are proportional.
pub fn equal_up_to_signs(a: &ProjPoint, b: &ProjPoint) -> bool {
    let sq = |p: &ProjPoint| -> Option<ProjPoint> {
        ProjPoint::new(p.coords().iter().map(|c| c * c).collect()).ok()
    };
    a.len() == b.len() && sq(a) == sq(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn p(v: &[i64]) -> ProjPoint {
        ProjPoint::from_i64(v).unwrap()
    }

    fn rats(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn small() -> PointConfig {
        PointConfig::from_i64(&[0, 1, 2], 1).unwrap()
    }

    fn five() -> PointConfig {
        PointConfig::from_i64(&[0, 1, 2, 3, 4], 2).unwrap()
    }

    #[test]
    fn phi_examples() {
        let c = small();
        let v = VPoint::new(&c, p(&[-1, -24, 5, 7])).unwrap();
        assert_eq!(phi_v_to_w(&v).unwrap().coords(), &p(&[1, -5, -7]));
        let v = VPoint::new(&c, p(&[1, 0, 1, 1])).unwrap();
        assert_eq!(phi_v_to_w(&v).unwrap().coords(), &p(&[1, 1, 1]));
        let v = VPoint::new(&c, p(&[-1, 0, -1, -1])).unwrap();
        assert_eq!(phi_v_to_w(&v).unwrap().coords(), &p(&[1, 1, 1]));
    }

    #[test]
    fn phi_of_zero_image_is_indeterminate() {
        // f = x vanishes at x_0 = 0; z_i = 0 is forced.
        let c = small();
        let v = VPoint::new(&c, p(&[0, 1, 0, 0])).unwrap();
        assert!(v.is_degenerate());
        assert!(matches!(phi_v_to_w(&v), Err(Error::Indeterminate(_))));
    }

    #[test]
    fn psi_examples() {
        let c = small();
        let w = WPoint::new(&c, p(&[1, -5, -7])).unwrap();
        let raw = psi_raw(&w);
        assert_eq!(raw.coeffs, rats(&[-1, -24]));
        // d odd: z_i = -D Y_0 Y_i
        assert_eq!(raw.certificates, rats(&[5, 7]));
        assert_eq!(psi_w_to_v(&w).unwrap().coords(), &p(&[1, 24, -5, -7]));

        let w = WPoint::new(&c, p(&[1, 1, 1])).unwrap();
        let raw = psi_raw(&w);
        assert_eq!(raw.coeffs, rats(&[-1, 0]));
        assert_eq!(raw.certificates, rats(&[-1, -1]));
        assert_eq!(psi_w_to_v(&w).unwrap().coords(), &p(&[1, 0, 1, 1]));

        let c = five();
        assert_eq!(c.vandermonde(), &rat(2));
        let w = WPoint::new(&c, p(&[1, 2, -3, -4, -5])).unwrap();
        let raw = psi_raw(&w);
        assert_eq!(raw.coeffs, rats(&[2, 4, 2]));
        assert_eq!(raw.certificates, rats(&[4, -6, -8, -10]));
    }

    #[test]
    fn psi_identity_on_all_nodes() {
        let c = five();
        let w = WPoint::new(&c, p(&[1, 2, -3, -4, -5])).unwrap();
        let raw = psi_raw(&w);
        for (i, x) in c.nodes().iter().enumerate() {
            let y = BigRational::from_integer(w.coords().coords()[i].clone());
            assert_eq!(eval_poly(&raw.coeffs, x), c.vandermonde() * &y * &y);
        }
    }

    #[test]
    fn psi_flags_degenerate_base_coordinate() {
        // nodes (0, 1, 4): 3Y_0^2 - 4Y_1^2 + Y_2^2 = 0 has the point (0, 1, 2)
        let c = PointConfig::from_i64(&[0, 1, 4], 1).unwrap();
        assert_eq!(c.quadric(2).unwrap().coeffs(), &[3.into(), (-4).into(), 1.into()]);
        let w = WPoint::new(&c, p(&[0, 1, 2])).unwrap();
        let v = psi_w_to_v(&w).unwrap();
        assert!(v.is_degenerate());
        assert!(v.certificates().iter().all(Zero::is_zero));
    }

    #[test]
    fn quadric_parametrization_examples() {
        let c = small();
        let img = param_quadric(&c, &p(&[3, 1])).unwrap();
        assert_eq!((img.mu.clone(), img.nu.clone()), (rat(1), rat(7)));
        assert_eq!(img.point.coords(), &p(&[1, 5, 7]));
        assert!(!img.base_point);

        let img = param_quadric(&c, &p(&[1, 0])).unwrap();
        assert_eq!(img.point.coords(), &p(&[1, -1, -1]));

        let img = param_quadric(&c, &p(&[2, 1])).unwrap();
        assert_eq!(img.mu, rat(0));
        assert!(img.base_point);
        assert_eq!(img.point.coords(), &p(&[1, 1, 1]));

        assert!(matches!(param_quadric(&c, &p(&[1, 2, 3])), Err(Error::Dimension(_))));
        assert!(matches!(param_quadric(&five(), &p(&[1, 2, 3])), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn quadric_inverse_examples() {
        let c = small();
        let w = WPoint::new(&c, p(&[-1, -5, -7])).unwrap();
        assert_eq!(param_quadric_inv(&w).unwrap(), p(&[3, 1]));
        let w = WPoint::new(&c, p(&[1, -1, -1])).unwrap();
        assert_eq!(param_quadric_inv(&w).unwrap(), p(&[1, 0]));
        let w = WPoint::new(&c, p(&[1, 1, 1])).unwrap();
        assert!(matches!(param_quadric_inv(&w), Err(Error::Indeterminate(_))));
    }

    #[test]
    fn build_a_examples() {
        let c = five();
        assert_eq!(build_a(&c, &p(&[1, 1, 0])).unwrap(), Matrix::from_i64(&[&[8, 12, 4], &[20, 32, 10]]).unwrap());
        assert_eq!(build_a(&c, &p(&[1, 2, 0])).unwrap(), Matrix::from_i64(&[&[20, 24, 22], &[52, 64, 58]]).unwrap());
        assert_eq!(
            build_a(&c, &p(&[1, 0, 0])).unwrap(),
            Matrix::from_i64(&[&[-4, 0, -2], &[-12, 0, -6]]).unwrap()
        );
    }

    #[test]
    fn plane_parametrization_examples() {
        let c = five();
        let img = param_plane(&c, &p(&[1, 2, 0])).unwrap();
        assert_eq!(img.mu, rats(&[-16, -16, 32]));
        assert_eq!(img.point.coords(), &p(&[1, 2, -3, -4, -5]));
        assert!(!img.in_plane);

        let img = param_plane(&c, &p(&[1, 1, 0])).unwrap();
        assert_eq!(img.mu, rats(&[-8, 0, 16]));
        assert_eq!(img.point.coords(), &p(&[1, 1, -1, -1, -1]));

        assert!(matches!(param_plane(&c, &p(&[1, 0, 0])), Err(Error::DegenerateParameter(_))));
    }

    #[test]
    fn plane_inverse_examples() {
        let c = five();
        let w = WPoint::new(&c, p(&[1, 2, -3, -4, -5])).unwrap();
        assert_eq!(param_plane_inv(&w).unwrap(), p(&[1, 2, 0]));
        let w = WPoint::new(&c, p(&[1, 1, -1, -1, -1])).unwrap();
        assert_eq!(param_plane_inv(&w).unwrap(), p(&[1, 1, 0]));
        let w = WPoint::new(&c, p(&[0, 1, 2, 3, 4])).unwrap();
        assert!(matches!(param_plane_inv(&w), Err(Error::Indeterminate(_))));
    }

    #[test]
    fn plane_basis_lies_on_w() {
        let c = PointConfig::from_i64(&[-3, -1, 0, 2, 5, 6, 9, 11], 4).unwrap();
        let basis = PlaneBasis::new(&c).unwrap();
        assert_eq!(basis.points().len(), 3);
        for t in basis.points() {
            assert!(c.on_w(t).unwrap());
        }
        assert!(PlaneBasis::new(&small()).is_err());
    }

    #[test]
    fn sign_flip_equivalence() {
        assert!(equal_up_to_signs(&p(&[1, -5, 7]), &p(&[2, 10, 14])));
        assert!(!equal_up_to_signs(&p(&[1, 5, 7]), &p(&[1, 5, 8])));
    }
}
