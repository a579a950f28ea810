mod common;

use common::{rng, skew_couplings};
use cyclq::curve::{c0, z_point, Couplings, CurvePoint, Sign};
use cyclq::intertwiners::*;
use cyclq::reps::{intertwiner_residual, omega, phi, pi, rho, rhobar, Gen, Rep};
use cyclq::tensorcore::{c, frob, identity, is_diagonal, kron, singular_values, solve, C64};
use cyclq::weyl::WeylPair;

fn om(wp: &WeylPair, cc: &Couplings, r: &CurvePoint, s: &CurvePoint) -> Rep {
    omega(wp, r, s, cc, c0(wp.root(), r, s, Sign::Plus)).unwrap()
}

fn quad(n: usize, seed: u64) -> (WeylPair, Couplings, Vec<CurvePoint>) {
    let wp = common::weyl(n, 1);
    let (_, p) = common::points(&mut rng(seed), wp.root(), 4);
    (wp, skew_couplings(), p)
}

#[test]
fn t_map_conditions() {
    for seed in 0..5 {
        let (wp, cc, p) = quad(3, 100 + seed);
        let (r, s) = (&p[0], &p[1]);
        let t = t_rs(&wp, r, s).unwrap();
        assert!(is_diagonal(&t, 0.0));
        let z2 = wp.z_pow(2);
        let id = wp.identity();
        let mm = r.mu * s.mu;
        let lhs = &t * (&id * r.y - &z2 * (s.x * mm)) * wp.x();
        let rhs = (&id * s.y - &z2 * (r.x * mm)) * wp.x() * &t;
        assert!(frob(&(&lhs - &rhs)) <= 1e-9 * frob(&lhs));
        assert!(intertwiner_residual(&t, &om(&wp, &cc, r, s), &om(&wp, &cc, s, r), &Gen::ALL).unwrap() <= 1e-9);
    }
}

#[test]
fn s_map_conditions() {
    for seed in 0..5 {
        let (wp, cc, p) = quad(3, 110 + seed);
        let (r, rp, s, sp) = (&p[0], &p[1], &p[2], &p[3]);
        let sm = s_rs(&wp, r, s).unwrap();
        let chi = wp.chi();
        assert!(frob(&(&sm * &chi - &chi * &sm)) < 1e-12 * frob(&sm));
        let z2 = kron(&wp.z_pow(2), &wp.identity());
        let id = identity(9);
        let lhs = &sm * &z2 * (&id * r.x - &chi * s.y) * r.mu;
        let rhs = &z2 * (&id * s.x - &chi * r.y) * &sm * s.mu;
        assert!(frob(&(&lhs - &rhs)) <= 1e-9 * frob(&lhs));
        let src = Rep::tensor(&om(&wp, &cc, r, rp), &om(&wp, &cc, s, sp));
        let dst = Rep::tensor(&om(&wp, &cc, r, s), &om(&wp, &cc, rp, sp));
        assert!(intertwiner_residual(&s_rs(&wp, rp, s).unwrap(), &src, &dst, &Gen::ALL).unwrap() <= 1e-9);
    }
}

#[test]
fn r_check_intertwines_and_factorizes() {
    for (n, draws) in [(3usize, 20u64), (5, 5)] {
        for seed in 0..draws {
            let (wp, cc, p) = quad(n, 120 + seed);
            let (r, rp, s, sp) = (&p[0], &p[1], &p[2], &p[3]);
            let rr = r_check(&wp, r, rp, s, sp).unwrap();
            let src = Rep::tensor(&om(&wp, &cc, r, rp), &om(&wp, &cc, s, sp));
            let dst = Rep::tensor(&om(&wp, &cc, s, sp), &om(&wp, &cc, r, rp));
            assert!(intertwiner_residual(&rr, &src, &dst, &Gen::ALL).unwrap() <= 1e-9);
            let sv = singular_values(&rr);
            assert!(sv[sv.len() - 1] > 1e-8 * frob(&rr));
            let ab = a_check(&wp, r, s, sp).unwrap() * b_check(&wp, rp, s, sp).unwrap();
            assert!(frob(&(&ab - &rr)) <= 1e-12 * frob(&rr));
        }
    }
}

#[test]
fn b_check_intertwines() {
    let (wp, cc, p) = quad(3, 130);
    let (r, rp, s, sp) = (&p[0], &p[1], &p[2], &p[3]);
    let b = b_check(&wp, rp, s, sp).unwrap();
    let src = Rep::tensor(&om(&wp, &cc, r, rp), &om(&wp, &cc, s, sp));
    let dst = Rep::tensor(&om(&wp, &cc, r, s), &om(&wp, &cc, sp, rp));
    assert!(intertwiner_residual(&b, &src, &dst, &Gen::ALL).unwrap() <= 1e-9);
}

#[test]
fn o_poly_values() {
    for n in [3usize, 5, 7] {
        let wp = common::weyl(n, 1);
        let o = o_poly(&wp);
        let one = c(1.0, 0.0);
        let i = c(0.0, 1.0);
        let ls = (one + i.powu(n as u32)) / (one + i) * (n as f64).sqrt();
        assert!((o.eval_scalar(one) - ls).norm() < 1e-12, "N={n}");
        for j in 0..n as i64 {
            assert!(o.eval_scalar(wp.root().pow(j)).norm() > 0.5);
        }
        let q = wp.q();
        let lhs = o.eval_scaled(&wp, q) - wp.chi() * o.eval_scaled(&wp, 1.0 / q);
        assert!(frob(&lhs) < 1e-11);
    }
    let wp = common::weyl(3, 1);
    let direct: C64 = (0..3).map(|k: i32| wp.q().powi(-k * k)).sum();
    assert!((direct - c(0.0, -(3f64).sqrt())).norm() < 1e-12);
}

#[test]
fn o_inverse_two_routes() {
    for n in [3usize, 5] {
        let wp = common::weyl(n, 1);
        let o = o_poly(&wp);
        let om_ = o.eval(&wp);
        let oi = o_inverse(&wp, &o).unwrap().eval(&wp);
        assert!(frob(&(&om_ * &oi - identity(n * n))) <= 1e-10);
        let direct = solve(&om_, &identity(n * n)).unwrap();
        assert!(frob(&(direct - oi)) <= 1e-11);
    }
    let wp = common::weyl(3, 1);
    let zero = PolyOp { coeffs: vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], kind: PolyKind::Chi };
    assert!(o_inverse(&wp, &PolyOp { coeffs: vec![c(1.0, 0.0); 3], ..zero.clone() }).is_err());
    assert!(o_inverse(&wp, &zero).is_ok());
}

#[test]
fn p_poly_condition() {
    for n in [3usize, 5, 7] {
        let wp = common::weyl(n, 1);
        let p = p_poly(&wp).unwrap();
        assert_eq!(p.coeffs[0], c(1.0, 0.0));
        let q = wp.q();
        let pz = p.eval(&wp);
        let rhs = wp.z_pow(2) * p.eval_scaled(&wp, 1.0 / (q * q));
        assert!(frob(&(&pz - rhs)) < 1e-11);
        let pi_ = o_inverse(&wp, &p).unwrap().eval(&wp);
        assert!(frob(&(pz * pi_ - identity(n))) < 1e-10);
    }
}

#[test]
fn factorization_both_branches() {
    let wp = common::weyl(3, 1);
    let cc = skew_couplings();
    let o = o_poly(&wp).eval(&wp);
    let mut g = rng(140);
    for _ in 0..20 {
        let (_, p) = common::points(&mut g, wp.root(), 2);
        let (r, s) = (&p[0], &p[1]);
        for sign in [Sign::Plus, Sign::Minus] {
            let cv = c0(wp.root(), r, s, sign);
            let src = Rep::tensor(&omega(&wp, r, s, &cc, cv).unwrap(), &phi(&wp, cv).unwrap());
            let dst = Rep::tensor(&rho(&wp, r, &cc).unwrap(), &rhobar(&wp, s, &cc).unwrap());
            assert!(intertwiner_residual(&o, &src, &dst, &Gen::BOREL).unwrap() <= 1e-9);
        }
    }
}

#[test]
fn alternative_intertwiners() {
    for seed in 0..3 {
        let (wp, cc, p) = quad(3, 150 + seed);
        let (r, s) = (&p[0], &p[1]);
        let ft = frak_t(&wp, r, s).unwrap();
        let src = Rep::tensor(&rho(&wp, r, &cc).unwrap(), &rhobar(&wp, s, &cc).unwrap());
        let dst = Rep::tensor(&rho(&wp, s, &cc).unwrap(), &rhobar(&wp, r, &cc).unwrap());
        assert!(intertwiner_residual(&ft, &src, &dst, &Gen::BOREL).unwrap() <= 1e-9);
        let cs = cal_s(&wp, r, s).unwrap();
        let src = Rep::tensor(&rhobar(&wp, r, &cc).unwrap(), &rho(&wp, s, &cc).unwrap());
        let dst = Rep::tensor(&rhobar(&wp, s, &cc).unwrap(), &rho(&wp, r, &cc).unwrap());
        assert!(intertwiner_residual(&cs, &src, &dst, &Gen::BOREL).unwrap() <= 1e-9);
    }
}

#[test]
fn ses_maps_exact_and_intertwining() {
    for n in [3usize, 5] {
        let (wp, cc, p) = quad(n, 160 + n as u64);
        let (r, s) = (&p[0], &p[1]);
        let rt = *wp.root();
        for sign in [Sign::Plus, Sign::Minus] {
            let zs = z_point(s, &cc, sign);
            let m = ses_maps(&wp, s, &cc, zs).unwrap();
            let (sq, sqi) = (s.shift(&rt, 1), s.shift(&rt, -1));
            let pz = pi(&rt, zs).unwrap();
            let mid = Rep::tensor(&rho(&wp, s, &cc).unwrap(), &pz);
            assert!(intertwiner_residual(&m.iota, &rho(&wp, &sq, &cc).unwrap(), &mid, &Gen::BOREL).unwrap() <= 1e-9);
            assert!(intertwiner_residual(&m.tau, &mid, &rho(&wp, &sqi, &cc).unwrap(), &Gen::BOREL).unwrap() <= 1e-9);
            let mid = Rep::tensor(&rhobar(&wp, s, &cc).unwrap(), &pz);
            let (a, b) = (rhobar(&wp, &sq, &cc).unwrap(), rhobar(&wp, &sqi, &cc).unwrap());
            assert!(intertwiner_residual(&m.iota_bar, &a, &mid, &Gen::BOREL).unwrap() <= 1e-9);
            assert!(intertwiner_residual(&m.tau_bar, &mid, &b, &Gen::BOREL).unwrap() <= 1e-9);
            let mid = Rep::tensor(&om(&wp, &cc, r, s), &pz);
            let (a, b) = (om(&wp, &cc, r, &sq), om(&wp, &cc, r, &sqi));
            assert!(intertwiner_residual(&m.i_bar, &a, &mid, &Gen::BOREL).unwrap() <= 1e-9);
            assert!(intertwiner_residual(&m.t_bar, &mid, &b, &Gen::BOREL).unwrap() <= 1e-9);
            for (i, t) in [(&m.iota, &m.tau), (&m.iota_bar, &m.tau_bar), (&m.i_bar, &m.t_bar)] {
                assert!(frob(&(t * i)) <= 1e-12);
                for map in [i, t] {
                    let sv = singular_values(map);
                    assert_eq!(sv.len(), n);
                    assert!(sv[n - 1] >= 1e-6 * sv[0]);
                }
            }
        }
    }
}

#[test]
fn tau_iota_is_weyl_commutator() {
    let wp = common::weyl(5, 1);
    let q = wp.q();
    let lhs = wp.x() * (-q) + wp.z() * wp.x() * wp.z_inv();
    assert!(frob(&lhs) < 1e-14);
    let m = ses_maps(&wp, &quad(5, 170).2[0], &Couplings::default(), c(0.9, 0.4)).unwrap();
    assert_eq!((m.iota.nrows(), m.iota.ncols(), m.tau.nrows(), m.tau.ncols()), (10, 5, 5, 10));
}
