mod common;

use common::{rand_mat, rng};
use cyclq::tensorcore::*;
use cyclq::intertwiners::{o_inverse, o_poly};
use cyclq::Error;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn kron_identity_and_unit_factor() {
    assert_eq!(kron(&identity(2), &identity(3)), identity(6));
    let wp = common::weyl(3, 1);
    assert_eq!(kron(wp.x(), &identity(1)), *wp.x());
}

#[test]
fn kron_matches_loop_oracle() {
    let wp = common::weyl(3, 1);
    let k = kron(wp.z(), wp.x());
    let mut g = rng(11);
    for _ in 0..5 {
        let (i, j, a, b) = (g.random_range(0..3), g.random_range(0..3), g.random_range(0..3), g.random_range(0..3));
        assert_eq!(k[(i * 3 + a, j * 3 + b)], wp.z()[(i, j)] * wp.x()[(a, b)]);
    }
}

#[test]
fn kron_associative() {
    let mut g = rng(1);
    let mut int_mat = |r: usize, k: usize| {
        CMat::from_fn(r, k, |_, _| c(g.random_range(-9..10) as f64, g.random_range(-9..10) as f64))
    };
    let (a, b, cc) = (int_mat(2, 3), int_mat(3, 2), int_mat(2, 2));
    assert!(kron(&kron(&a, &b), &cc) == kron(&a, &kron(&b, &cc)));
}

#[test]
fn swap_basics() {
    assert_eq!(swap(1, 4), identity(4));
    let mut e01 = zeros(4, 1);
    e01[(1, 0)] = c(1.0, 0.0);
    let mut e10 = zeros(4, 1);
    e10[(2, 0)] = c(1.0, 0.0);
    assert_eq!(swap(2, 2) * e01, e10);
    for d in 1..5 {
        assert_eq!(swap(d, d) * swap(d, d), identity(d * d));
    }
}

#[test]
fn swap_conjugates_kron() {
    let mut g = rng(2);
    let (a, b) = (rand_mat(&mut g, 3, 3), rand_mat(&mut g, 3, 3));
    let p = swap(3, 3);
    assert!(rel_residual(&(&p * kron(&a, &b) * &p), &kron(&b, &a)).unwrap() < 1e-15);
    let (a, b) = (rand_mat(&mut g, 2, 2), rand_mat(&mut g, 3, 3));
    assert!(rel_residual(&(swap(2, 3) * kron(&a, &b) * swap(3, 2)), &kron(&b, &a)).unwrap() < 1e-15);
}

#[test]
fn cyclic_shift_examples() {
    assert_eq!(cyclic_shift(4, 1), identity(4));
    assert_eq!(cyclic_shift(2, 2), swap(2, 2));
    let p = cyclic_shift(3, 3);
    assert_eq!(&p * &p * &p, identity(27));
    assert_ne!(&p * &p, identity(27));
}

#[test]
fn cyclic_shift_moves_first_slot_last() {
    let mut g = rng(3);
    let (a, b1, b2) = (rand_mat(&mut g, 2, 1), rand_mat(&mut g, 2, 1), rand_mat(&mut g, 2, 1));
    let lhs = cyclic_shift(2, 3) * kron_all(&[&a, &b1, &b2]);
    assert!(rel_residual(&lhs, &kron_all(&[&b1, &b2, &a])).unwrap() < 1e-15);
}

#[test]
fn partial_trace_examples() {
    assert_eq!(partial_trace_first(&identity(6), 2, 3).unwrap(), identity(3) * c(2.0, 0.0));
    let mut g = rng(4);
    let (a, b) = (rand_mat(&mut g, 2, 2), rand_mat(&mut g, 3, 3));
    let tr = a[(0, 0)] + a[(1, 1)];
    assert!(rel_residual(&partial_trace_first(&kron(&a, &b), 2, 3).unwrap(), &(b * tr)).unwrap() < 1e-15);
    let m = rand_mat(&mut g, 6, 6);
    let pt = partial_trace_first(&m, 2, 3).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let want: C64 = (0..2).map(|k| m[(k * 3 + i, k * 3 + j)]).sum();
            assert!((pt[(i, j)] - want).norm() < 1e-15);
        }
    }
    assert!(matches!(partial_trace_first(&m, 4, 2), Err(Error::Dimension(_))));
}

#[test]
fn solve_and_inverse() {
    let mut g = rng(5);
    let b = rand_mat(&mut g, 3, 2);
    assert!(rel_residual(&solve(&identity(3), &b).unwrap(), &b).unwrap() < 1e-15);
    let d = diag(&[c(2.0, 0.0), c(4.0, 0.0)]);
    assert!(rel_residual(&inverse(&d).unwrap(), &diag(&[c(0.5, 0.0), c(0.25, 0.0)])).unwrap() < 1e-15);
    let wp = common::weyl(5, 1);
    let o = o_poly(&wp).eval(&wp);
    let oi = o_inverse(&wp, &o_poly(&wp)).unwrap().eval(&wp);
    assert!(frob(&(oi * o - identity(25))) < 1e-12);
}

#[test]
fn singular_matrix_reports_smallest_singular_value() {
    let a = diag(&[c(1.0, 0.0), c(0.0, 0.0)]);
    match inverse(&a) {
        Err(Error::Singular { smin }) => assert!(smin < 1e-13),
        other => panic!("expected singular error, got {other:?}"),
    }
}

#[test]
fn approx_eq_examples() {
    let mut g = rng(6);
    let a = rand_mat(&mut g, 3, 3);
    assert!(approx_eq(&a, &a, Tolerance::default()).unwrap().pass);
    let z = zeros(3, 3);
    assert!(approx_eq(&z, &(identity(3) * c(1e-20, 0.0)), Tolerance::abs(1e-12)).unwrap().pass);
    let bumped = identity(3) + identity(3) * c(1e-6, 0.0);
    let cmp = approx_eq(&identity(3), &bumped, Tolerance::rel(1e-9)).unwrap();
    assert!(!cmp.pass);
    assert!((cmp.residual - 3f64.sqrt() * 1e-6).abs() < 1e-12);
    assert!(approx_eq(&identity(2), &identity(3), Tolerance::default()).is_err());
}

#[test]
fn tolerance_rejects_degenerate_settings() {
    assert!(Tolerance::new(0.0, 0.0).is_err());
    assert!(Tolerance::new(f64::NAN, 1.0).is_err());
    assert!(Tolerance::new(-1.0, 1.0).is_err());
    let t = Tolerance::default();
    assert_eq!((t.rel, t.abs), (1e-10, 1e-12));
}

#[test]
fn rank_of_projector() {
    let p = diag(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    assert_eq!(rank(&p, 1e-10), 2);
    let sv = singular_values(&p);
    assert!(sv[0] >= sv[1] && sv[1] >= sv[2]);
}

#[test]
fn budget_guard() {
    assert!(check_budget(2000).is_ok());
    assert!(matches!(check_budget(2001), Err(Error::Budget(_))));
}

fn unit(m: CMat) -> CMat {
    let n = frob(&m);
    m / c(n, 0.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn mixed_product(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
        let mut g = rng(seed);
        let (a, cc) = (unit(rand_mat(&mut g, da, da)), unit(rand_mat(&mut g, da, da)));
        let (b, d) = (unit(rand_mat(&mut g, db, db)), unit(rand_mat(&mut g, db, db)));
        let lhs = kron(&a, &b) * kron(&cc, &d);
        let rhs = kron(&(&a * &cc), &(&b * &d));
        prop_assert!(frob(&(&lhs - &rhs)) <= 1e-12 * frob(&lhs).max(frob(&rhs)));
    }

    #[test]
    fn partial_trace_of_product(seed in any::<u64>(), da in 1usize..4, dr in 1usize..4) {
        let mut g = rng(seed);
        let (a, b) = (rand_mat(&mut g, da, da), rand_mat(&mut g, dr, dr));
        let tr: C64 = (0..da).map(|i| a[(i, i)]).sum();
        let pt = partial_trace_first(&kron(&a, &b), da, dr).unwrap();
        prop_assert!(frob(&(pt - b * tr)) < 1e-13);
    }
}
