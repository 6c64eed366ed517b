use matgeg::connection::{commutes_with_j, f_matrix, g_matrix};
use matgeg::exact::{gamma_ratio_shift, int, pochhammer, rat};
use matgeg::mvop::hat_p;
use matgeg::scalar::{gegenbauer, linearise, value_at_one};
use matgeg::serial::{hat_p_json, parse_hat_p_json};
use matgeg::weight::{weight_poly, WeightSpec};
use matgeg::zeros::{entry_report, RootOptions, RESIDUAL_BOUND, TAU};
use matgeg::{GegSeries, MatPoly, MonoPoly, RatMatrix, Rational, SizeParam};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..13).prop_map(|(p, q)| rat(p, q))
}

fn grid_nu() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![rat(1, 2), int(1), rat(3, 2), int(3), rat(7, 3)])
}

fn lambda() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![rat(1, 2), int(1), rat(3, 2), rat(7, 3)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn geg_mono_roundtrip(c in prop::collection::vec(small_rat(), 0..13), l in lambda()) {
        let p = MonoPoly::new(c);
        let s = GegSeries::from_mono(&p, &l).unwrap();
        prop_assert_eq!(s.to_mono().unwrap(), p);
    }

    #[test]
    fn pochhammer_step(a in small_rat(), k in 0usize..20) {
        prop_assert_eq!(pochhammer(&a, k + 1), pochhammer(&a, k) * (&a + int(k as i64)));
    }

    #[test]
    fn gamma_ratio_inverse(b in small_rat(), s in -8i64..8) {
        if let (Ok(x), Ok(y)) = (gamma_ratio_shift(&b, s, 0), gamma_ratio_shift(&b, 0, s)) {
            prop_assert_eq!(x * y, int(1));
        }
    }

    #[test]
    fn gegenbauer_parity(n in 0usize..16, l in lambda()) {
        let c = gegenbauer(n, &l).unwrap();
        for (d, a) in c.coeffs().iter().enumerate() {
            if (d + n) % 2 == 1 {
                prop_assert_eq!(a, &int(0));
            }
        }
    }

    #[test]
    fn linearisation_at_one(k in 0usize..8, l in 0usize..8, lam in lambda()) {
        let s = linearise(k, l, &lam);
        let lhs: Rational = s.coeffs().iter().enumerate().map(|(p, c)| c * value_at_one(p, &lam)).sum();
        prop_assert_eq!(lhs, value_at_one(k, &lam) * value_at_one(l, &lam));
    }

    #[test]
    fn weight_symmetries(two_ell in 0usize..5, nu in grid_nu()) {
        let w = weight_poly(&WeightSpec::new(two_ell, nu).unwrap()).unwrap();
        for i in 0..=two_ell {
            for j in 0..=two_ell {
                let e = w.entry(i, j);
                prop_assert_eq!(&e, &w.entry(j, i));
                prop_assert_eq!(&e, &w.entry(two_ell - i, two_ell - j));
                if let Some(d) = e.degree() {
                    prop_assert!(d <= i + j);
                }
            }
        }
    }

    #[test]
    fn hat_p_symmetric_and_derivative_ladder(two_ell in 0usize..4, n in 1usize..9, nu in grid_nu()) {
        let spec = WeightSpec::new(two_ell, nu).unwrap();
        let p = hat_p(n, &spec);
        prop_assert!(p.is_symmetric());
        let lower = hat_p(n - 1, &spec.shifted(1).unwrap());
        prop_assert_eq!(p.derivative(), lower.scale(&int(n as i64)));
    }

    #[test]
    fn connection_term_counts_and_j(two_ell in 0usize..5, n in 0usize..9, nu in grid_nu()) {
        let size = SizeParam::new(two_ell);
        let nonzero_f = (0..=n).filter(|&k| !f_matrix(k, n, &nu, size).unwrap().is_zero()).count();
        let nonzero_g = (0..=n).filter(|&r| !g_matrix(r, n, &nu, size).unwrap().is_zero()).count();
        prop_assert!(nonzero_f <= n.min(two_ell) + 1);
        prop_assert!(nonzero_g <= n.min(two_ell) + 1);
        for r in 0..=n {
            prop_assert!(commutes_with_j(&g_matrix(r, n, &nu, size).unwrap()));
        }
    }

    #[test]
    fn hat_p_json_roundtrip(dim in 1usize..4, raw in prop::collection::vec(small_rat(), 0..27), nu in grid_nu()) {
        let per = dim * dim;
        let coeffs: Vec<RatMatrix> = raw
            .chunks(per)
            .filter(|c| c.len() == per)
            .map(|c| RatMatrix::from_fn(dim, |i, j| c[i * dim + j].clone()))
            .collect();
        let p = MatPoly::new(dim, coeffs);
        let n = p.degree().unwrap_or(0);
        let back = parse_hat_p_json(&hat_p_json(dim - 1, &nu, n, &p)).unwrap();
        prop_assert_eq!(back.poly, p);
        prop_assert_eq!(back.nu, nu);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn zero_reports_are_consistent(two_ell in 1usize..6, n in 1usize..21, i in 0usize..6, j in 0usize..6,
                                   nu in prop::sample::select(vec![int(1), int(3), int(6)])) {
        let (i, j) = (i % (two_ell + 1), j % (two_ell + 1));
        let size = SizeParam::new(two_ell);
        let r = entry_report(n, &nu, size, i, j, &RootOptions::default(), TAU).unwrap();
        prop_assert_eq!(r.roots.len(), r.degree.unwrap_or(0));
        for z in &r.roots {
            prop_assert!(z.residual < RESIDUAL_BOUND);
            prop_assert!(r.roots.iter().any(|w| (w.re - z.re).abs() < 1e-9 && (w.im + z.im).abs() < 1e-9));
            prop_assert!(r.roots.iter().any(|w| (w.re + z.re).abs() < TAU && (w.im + z.im).abs() < TAU));
        }
    }
}
