use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use trirays::asymptotics::{arc_bound_check, minimal_arc, polya_peaks, sector_search, GrowthSample, PeakKind, PolyaOptions, UnitTuple, DEFAULT_SCHEDULE};
use trirays::harmonic::{walk_on_spheres, PlanarDomain, WalkOptions};
use trirays::mero::{build_q, mobius_apply, schwarzian, Example1, ExpMap, IdentityMap, MeroMap, Mobius, RationalMap, RaySpec};
use trirays::odesolve::{projective_defect, transport_pair, wronskian, MonodromyMatrix, PathPlan, TransportState};
use trirays::rootscan::{locate_roots, winding_count, Region};
use trirays::specfun::{airy, omega};
use trirays::Error;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn point(r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r, -PI..PI).prop_map(|(m, t)| Complex64::from_polar(m, t))
}

fn cplx(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(x, y)| c(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn airy_conjugation(z in point(10.0)) {
        let a = airy(z).unwrap();
        let b = airy(z.conj()).unwrap();
        let s = a.ai.norm().max(1e-300);
        prop_assert!((b.ai - a.ai.conj()).norm() <= 1e-12 * s);
        prop_assert!((b.ai_prime - a.ai_prime.conj()).norm() <= 1e-12 * a.ai_prime.norm().max(1e-300));
    }

    #[test]
    fn airy_wronskian_constant(z in point(5.0)) {
        let w = omega();
        let wr = |z: Complex64| {
            let (a, b) = (airy(z).unwrap(), airy(w * z).unwrap());
            a.ai * w * b.ai_prime - a.ai_prime * b.ai
        };
        let w0 = wr(c(0.0, 0.0));
        let (a, b) = (airy(z).unwrap(), airy(w * z).unwrap());
        let scale = (a.ai * b.ai_prime).norm() + (a.ai_prime * b.ai).norm();
        prop_assert!((wr(z) - w0).norm() <= 1e-8 * scale.max(1.0));
    }

    #[test]
    fn jet_product_is_truncated_product(
        mut p in prop::collection::vec(-9i32..10, 1..5),
        mut q in prop::collection::vec(-9i32..10, 1..5),
        x in -3i32..4,
    ) {
        for v in [&mut p, &mut q] {
            if *v.last().unwrap() == 0 {
                *v.last_mut().unwrap() = 1;
            }
        }
        let cp = |v: &[i32]| v.iter().map(|&k| c(k as f64, 0.0)).collect::<Vec<_>>();
        let mut pq = vec![0i32; p.len() + q.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                pq[i + j] += a * b;
            }
        }
        let z = c(x as f64, 0.0);
        let lhs = RationalMap::polynomial(cp(&pq)).unwrap().jet(z);
        let rhs = RationalMap::polynomial(cp(&p)).unwrap().jet(z) * RationalMap::polynomial(cp(&q)).unwrap().jet(z);
        prop_assert_eq!(lhs.derivatives(), rhs.derivatives());
    }

    #[test]
    fn mobius_maps_have_zero_schwarzian(a in cplx(3.0), b in cplx(3.0), cc in cplx(3.0), d in cplx(3.0), z in cplx(4.0)) {
        let Ok(l) = Mobius::new(a, b, cc, d) else { return Ok(()) };
        prop_assume!((cc * z + d).norm() > 1e-3);
        match schwarzian(&mobius_apply(l, IdentityMap), z) {
            Ok(s) => prop_assert!(s.norm() <= 1e-12 * (1.0 + z.norm_sqr()), "{s}"),
            Err(Error::CriticalPoint { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn reciprocal_invariance(z in cplx(3.0), num in prop::collection::vec(cplx(2.0), 1..4), den in prop::collection::vec(cplx(2.0), 1..4)) {
        let r = RationalMap::new(num, den);
        prop_assume!(r.is_ok());
        let r = r.unwrap();
        let inv = Mobius::reciprocal();
        let mut checked = 0;
        for (s, t) in [
            (schwarzian(&ExpMap, z), schwarzian(&mobius_apply(inv, ExpMap), z)),
            (schwarzian(&Example1, z), schwarzian(&mobius_apply(inv, Example1), z)),
            (schwarzian(&r, z), schwarzian(&mobius_apply(inv, r.clone()), z)),
        ] {
            if let (Ok(s), Ok(t)) = (s, t) {
                prop_assert!((s - t).norm() <= 1e-8 * (1.0 + s.norm()), "{s} vs {t}");
                checked += 1;
            }
        }
        prop_assert!(checked >= 2);
    }

    #[test]
    fn example1_reflection(z in point(8.0)) {
        let (Ok(f), Ok(g)) = (Example1.value(z), Example1.value(z.conj())) else { return Ok(()) };
        prop_assume!(f.norm() > 1e-8 && f.norm() < 1e8);
        prop_assert!((f.inv() - g.conj()).norm() <= 1e-8 * (1.0 + f.inv().norm()));
    }

    #[test]
    fn build_q_equivariance(
        theta in -PI..PI,
        (num, den) in (1usize..4).prop_flat_map(|n| (prop::collection::vec(-3.0..3.0f64, n), prop::collection::vec(-3.0..3.0f64, n))),
        z in cplx(2.0),
    ) {
        let real = |v: &[f64], lead: f64| v.iter().map(|x| c(*x, 0.0)).chain([c(lead, 0.0)]).collect::<Vec<_>>();
        let r = RationalMap::new(real(&num, 2.0), real(&den, 1.0));
        prop_assume!(r.is_ok());
        let r = r.unwrap();
        let q = build_q(RaySpec::new(theta), &r).unwrap();
        let w = omega();
        prop_assume!(q.poles().iter().all(|p| (p - z).norm() > 1e-2 && (p - w * z).norm() > 1e-2));
        let lhs = q.eval_value(w * z) * Complex64::from_polar(1.0, 4.0 * PI / 3.0);
        let rhs = q.eval_value(z);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn projective_defect_scale_invariant(m in prop::collection::vec(cplx(2.0), 4), lam in cplx(5.0)) {
        prop_assume!(lam.norm() > 1e-3);
        let a = MonodromyMatrix::from_rows([[m[0], m[1]], [m[2], m[3]]]);
        let b = MonodromyMatrix::from_rows([[lam * m[0], lam * m[1]], [lam * m[2], lam * m[3]]]);
        let (Ok(da), Ok(db)) = (projective_defect(&a), projective_defect(&b)) else { return Ok(()) };
        prop_assert!((da - db).abs() <= 1e-12 * da.max(1.0));
    }

    #[test]
    fn minimal_arc_rotation(ts in prop::collection::vec(-PI..PI, 1..6), rot in -PI..PI) {
        let pts: Vec<_> = ts.iter().map(|t| Complex64::from_polar(1.0, *t)).collect();
        let turned: Vec<_> = pts.iter().map(|p| p * Complex64::from_polar(1.0, rot)).collect();
        let (a, b) = (minimal_arc(&pts).unwrap(), minimal_arc(&turned).unwrap());
        prop_assert!((a.length - b.length).abs() <= 1e-12);
        let shift = (b.start - a.start - rot).rem_euclid(2.0 * PI);
        prop_assert!(shift.min(2.0 * PI - shift) <= 1e-9 || a.length >= 2.0 * PI - 1e-9);
    }

    #[test]
    fn arc_within_sharp_bound(s in -PI..PI, t in -PI..PI) {
        let (a, b) = (Complex64::from_polar(1.0, s), Complex64::from_polar(1.0, t));
        prop_assume!((a + b).re > 1e-9);
        let r = arc_bound_check(a, b).unwrap();
        prop_assert!(r.arc_len <= r.sharp_bound + 1e-9);
    }

    #[test]
    fn power_law_peaks_everywhere(rho in 0.2..3.0f64) {
        let g = GrowthSample::from_fn(&GrowthSample::geometric_radii(1.0, 1e3, 31), |r| r.powf(rho)).unwrap();
        for kind in [PeakKind::First, PeakKind::Second] {
            let rep = polya_peaks(&g, rho, kind, &DEFAULT_SCHEDULE, PolyaOptions::default()).unwrap();
            for l in &rep.levels {
                prop_assert_eq!(l.qualifying.len(), l.eligible);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sector_search_monotone(t in (-PI..PI, -PI..PI, 0.1..3.0f64, -3.0..-0.1f64), n in 1u64..500) {
        let t = UnitTuple::new(t.0, t.1, t.2, t.3).unwrap();
        let (_, d1) = sector_search(&t, n).unwrap();
        let (_, d2) = sector_search(&t, 2 * n).unwrap();
        prop_assert!(d2 <= d1);
    }

    #[test]
    fn wronskian_conserved(a in prop::collection::vec(cplx(1.0), 1..4), v in prop::collection::vec(cplx(2.0), 2..5)) {
        let a = RationalMap::polynomial(a).unwrap();
        let path = PathPlan::polyline(&v);
        let init = [TransportState::real(1.0, 0.0), TransportState::real(0.0, 1.0)];
        let w0 = wronskian(&init[0], &init[1]);
        let out = transport_pair(&a, &path, init, 1e-10).unwrap();
        let acc = out[0].accumulated_error.max(out[1].accumulated_error);
        prop_assert!((wronskian(&out[0], &out[1]) - w0).norm() <= 10.0 * acc * w0.norm() + 1e-14);
    }

    #[test]
    fn winding_is_additive(roots in prop::collection::vec(cplx(1.8), 1..5), poles in prop::collection::vec(cplx(1.8), 0..3), frac in 0.3..0.7f64) {
        let poly = |rs: &[Complex64]| rs.iter().fold(vec![c(1.0, 0.0)], |p, r| {
            let mut q = vec![c(0.0, 0.0); p.len() + 1];
            for (i, a) in p.iter().enumerate() {
                q[i + 1] += a;
                q[i] -= a * r;
            }
            q
        });
        let f = RationalMap::new(poly(&roots), poly(&poles)).unwrap();
        let whole = Region::rectangle(-2.0, 2.0, -2.0, 2.0).unwrap();
        let (l, r) = whole.split(frac);
        let (Ok(n), Ok(nl), Ok(nr)) = (
            winding_count(&f, &whole, Some(c(0.0, 0.0))),
            winding_count(&f, &l, Some(c(0.0, 0.0))),
            winding_count(&f, &r, Some(c(0.0, 0.0))),
        ) else { return Ok(()) };
        prop_assert_eq!(n, nl + nr);
        let located = locate_roots(&f, &whole, Some(c(0.0, 0.0)), 1e-10).unwrap();
        prop_assert_eq!(located.iter().map(|r| r.multiplicity as u64).sum::<u64>(), n);
    }

    #[test]
    fn harmonic_additive_and_monotone(cuts in prop::collection::vec(0.3..2.0f64, 3), z in point(0.7), seed in any::<u64>()) {
        let mut t = 0.0;
        let mut angles = vec![];
        for c in cuts {
            angles.push(t);
            t += c;
        }
        let d = PlanarDomain::disk_arcs(&angles, &["a", "b", "c"]).unwrap();
        let opts = WalkOptions::default();
        let n = 4000;
        let ea = walk_on_spheres(&d, z, &["a"], n, seed, opts).unwrap();
        let eab = walk_on_spheres(&d, z, &["a", "b"], n, seed ^ 1, opts).unwrap();
        let ec = walk_on_spheres(&d, z, &["c"], n, seed ^ 2, opts).unwrap();
        let sab = (eab.stderr.powi(2) + ec.stderr.powi(2)).sqrt();
        prop_assert!((eab.mean + ec.mean - 1.0).abs() <= 3.0 * sab + 1e-3);
        prop_assert!(eab.mean >= ea.mean - 3.0 * (ea.stderr.powi(2) + eab.stderr.powi(2)).sqrt() - 1e-3);
    }
}
