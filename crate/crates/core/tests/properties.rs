use dioforge_core::exactmath::rat;
use dioforge_core::rationalmaps::{equal_up_to_signs, param_plane_coords, param_quadric_coords, psi_raw};
use dioforge_core::variety::eval_poly;
use dioforge_core::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn nodes(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(-30i64..30, len).prop_map(|s| s.into_iter().collect())
}

fn nonzero_vec(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-40i64..40, len).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

/// (nodes, degree, parameter) for the line construction.
fn quadric_case() -> impl Strategy<Value = (Vec<i64>, usize, Vec<i64>)> {
    (1usize..=6).prop_flat_map(|d| (nodes(d + 2), Just(d), nonzero_vec(d + 1)))
}

fn plane_case() -> impl Strategy<Value = (Vec<i64>, usize, Vec<i64>)> {
    (1usize..=3).prop_flat_map(|k| (nodes(3 * k + 2), Just(2 * k), nonzero_vec(2 * k + 1)))
}

fn check_psi_identity(w: &WPoint<'_>) -> std::result::Result<(), TestCaseError> {
    let c = w.config();
    let raw = psi_raw(w);
    let sign = if c.degree() % 2 == 0 { rat(1) } else { rat(-1) };
    let y = w.coords().to_rationals();
    for (i, x) in c.nodes().iter().enumerate() {
        prop_assert_eq!(eval_poly(&raw.coeffs, x), &sign * c.vandermonde() * &y[i] * &y[i]);
    }
    let f0 = eval_poly(&raw.coeffs, c.node(0));
    for (i, z) in raw.certificates.iter().enumerate() {
        prop_assert_eq!(z * z, &f0 * eval_poly(&raw.coeffs, c.node(i + 1)));
    }
    Ok(())
}

fn check_round_trips(w: &WPoint<'_>) -> std::result::Result<(), TestCaseError> {
    let v = psi_w_to_v(w).unwrap();
    if v.is_degenerate() {
        return Ok(());
    }
    let back = phi_v_to_w(&v).unwrap();
    prop_assert!(equal_up_to_signs(back.coords(), w.coords()));
    prop_assert_eq!(back.coords(), w.coords());
    let again = psi_w_to_v(&back).unwrap();
    prop_assert_eq!(again.coords(), v.coords());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn line_construction((xs, d, q) in quadric_case()) {
        let c = PointConfig::from_i64(&xs, d).unwrap();
        let q = ProjPoint::from_i64(&q).unwrap();
        match param_quadric(&c, &q) {
            Ok(img) => {
                prop_assert!(c.on_w(img.point.coords()).unwrap());
                check_psi_identity(&img.point)?;
                check_round_trips(&img.point)?;
                if !img.base_point {
                    prop_assert_eq!(param_quadric_inv(&img.point).unwrap(), q.clone());
                }
            }
            Err(Error::DegenerateParameter(_)) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn plane_construction((xs, d, q) in plane_case()) {
        let c = PointConfig::from_i64(&xs, d).unwrap();
        let q = ProjPoint::from_i64(&q).unwrap();
        match param_plane(&c, &q) {
            Ok(img) => {
                prop_assert!(c.on_w(img.point.coords()).unwrap());
                prop_assert!(img.a.mul_vec(&img.mu).unwrap().iter().all(Zero::is_zero));
                check_psi_identity(&img.point)?;
                check_round_trips(&img.point)?;
                if !img.in_plane {
                    prop_assert_eq!(param_plane_inv(&img.point).unwrap(), q.clone());
                }
            }
            Err(Error::DegenerateParameter(_)) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn parametrizations_are_homogeneous(
        (xs, d, q) in plane_case(),
        lambda in prop_oneof![-7i64..=-1, 2i64..=7],
    ) {
        let c = PointConfig::from_i64(&xs, d).unwrap();
        let raw: Vec<BigRational> = q.iter().map(|&v| rat(v)).collect();
        let scaled: Vec<BigRational> = q.iter().map(|&v| rat(v * lambda)).collect();
        let img1 = param_plane_coords(&c, &raw).map(|i| i.point.coords().clone());
        let img2 = param_plane_coords(&c, &scaled).map(|i| i.point.coords().clone());
        prop_assert_eq!(img1, img2);

        let line = PointConfig::from_i64(&xs[..d + 2], d).unwrap();
        let l1 = param_quadric_coords(&line, &raw).map(|i| i.point.coords().clone());
        let l2 = param_quadric_coords(&line, &scaled).map(|i| i.point.coords().clone());
        prop_assert_eq!(l1, l2);
    }

    #[test]
    fn v_round_trip_from_integer_data((xs, d, q) in quadric_case()) {
        // start on V, go through W and back
        let c = PointConfig::from_i64(&xs, d).unwrap();
        let q = ProjPoint::from_i64(&q).unwrap();
        let Ok(img) = param_quadric(&c, &q) else { return Ok(()) };
        let v = psi_w_to_v(&img.point).unwrap();
        prop_assume!(!v.is_degenerate());
        let w = phi_v_to_w(&v).unwrap();
        let again = psi_w_to_v(&w).unwrap();
        prop_assert_eq!(again.coords(), v.coords());
    }
}

/// mu and nu scale by lambda and lambda^2.
#[test]
fn mu_nu_scale_with_parameter() {
    let c = PointConfig::from_i64(&[0, 1, 2], 1).unwrap();
    let one = param_quadric(&c, &ProjPoint::from_i64(&[3, 1]).unwrap()).unwrap();
    let q3 = vec![rat(9), rat(3), rat(0)];
    let q3sq: Vec<BigRational> = q3.iter().map(|v| v * v).collect();
    assert_eq!(c.bracket(&q3, 2).unwrap(), &one.mu * rat(3));
    assert_eq!(c.bracket(&q3sq, 2).unwrap(), &one.nu * rat(9));
}

#[test]
fn forge_soundness_and_scaling() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for round in 0..30 {
        let len = rng.gen_range(3..=8);
        let mut set = std::collections::BTreeSet::new();
        while set.len() < len {
            set.insert(rng.gen_range(-25i64..=25));
        }
        let set: Vec<BigInt> = set.into_iter().map(BigInt::from).collect();
        for method in [Method::Quadric, Method::Plane] {
            let opts = ConstructOptions { seed: round, ..Default::default() };
            let w = construct_witness(&set, method, &opts).unwrap();
            assert!(verify_witness(&set, &w.poly).ok);
            assert!(!w.flags.contains(&Flag::ZeroValue));
            for lambda in [-3i64, 2, 7] {
                let scaled = w.poly.scaled(&BigInt::from(lambda)).unwrap();
                assert!(verify_witness(&set, &scaled).ok);
            }
            let bound = match method {
                Method::Quadric => set.len() - 2,
                Method::Plane => 2 * forge::plane_k_for(set.len()),
            };
            assert!(w.poly.degree() <= bound);
            if !w.flags.contains(&Flag::DegreeDropped) {
                assert_eq!(w.poly.degree(), bound);
            }
            let t = witness_twist(&w).unwrap();
            assert_eq!(t.points.len(), set.len());
            assert!(t.curve.twist_scalar.is_positive() || t.curve.twist_scalar.is_negative());
        }
    }
}

#[test]
fn oracle_agrees_with_construction() {
    let set: Vec<BigInt> = [0, 1, 2].into_iter().map(BigInt::from).collect();
    let report = brute_force_search(&set, 1, 30, forge::DEFAULT_ORACLE_CEILING).unwrap();
    for f in &report.found {
        assert!(verify_witness(&set, f).ok);
    }
    let forge = WitnessForge::new(&set, Method::Quadric).unwrap();
    let mut hits = 0;
    for a in -12i64..=12 {
        for b in -12i64..=12 {
            let Ok(q) = ProjPoint::from_i64(&[a, b]) else { continue };
            let Ok(w) = forge.from_parameter(&q) else { continue };
            let p = w.poly.primitive_part();
            if p.coeffs().iter().all(|c| c.abs() <= BigInt::from(30)) {
                assert!(report.found.contains(&p), "{p} missing from the oracle list");
                hits += 1;
            }
        }
    }
    assert!(hits > 0);
}
