mod common;

use common::{rng, skew_couplings};
use cyclq::curve::{c0, Sign};
use cyclq::reps::*;
use cyclq::tensorcore::{c, frob, identity, inverse, is_diagonal, kron, singular_values, swap, CMat, C64};
use cyclq::weyl::RootOfUnity;
use cyclq::Error;

fn unit_scalar(m: &CMat) -> Option<C64> {
    let v = m[(0, 0)];
    (frob(&(m - identity(m.nrows()) * v)) < 1e-12).then_some(v)
}

fn setup(n: usize, seed: u64) -> (cyclq::weyl::WeylPair, Rep, Rep, Rep, Rep) {
    let wp = common::weyl(n, 1);
    let (_, p) = common::points(&mut rng(seed), wp.root(), 2);
    let cc = skew_couplings();
    let om = omega_signed(&wp, &p[0], &p[1], &cc, Sign::Plus).unwrap();
    let rh = rho(&wp, &p[0], &cc).unwrap();
    let rb = rhobar(&wp, &p[1], &cc).unwrap();
    let ph = phi(&wp, c(1.3, -0.2)).unwrap();
    (wp, om, rh, rb, ph)
}

#[test]
fn omega_examples() {
    let (wp, om, ..) = setup(3, 31);
    let id = wp.identity();
    assert!(frob(&(om.act(Gen::T0).unwrap() * om.act(Gen::T1).unwrap() - &id)) < 1e-12);
    assert!(frob(&(om.act(Gen::Z0).unwrap() * om.act(Gen::Z1).unwrap() - &id)) < 1e-12);
    let Some(RepLabel { params: RepParams::Omega { r, s, couplings, .. }, .. }) = om.label.clone() else {
        panic!("omega label")
    };
    let q = wp.q();
    let e0 = om.act(Gen::E0).unwrap();
    for i in 0..3usize {
        for j in 0..3usize {
            let want = if j == (i + 1) % 3 {
                (s.y * q.powi(-2 * j as i32) / (r.x * r.mu * s.mu) - 1.0) * couplings.kappa0 * r.x / (q - 1.0 / q)
            } else {
                c(0.0, 0.0)
            };
            assert!((e0[(i, j)] - want).norm() < 1e-12, "entry ({i},{j})");
        }
    }
}

#[test]
fn omega_rejects_bad_c0() {
    let wp = common::weyl(3, 1);
    let (_, p) = common::points(&mut rng(32), wp.root(), 2);
    let good = c0(wp.root(), &p[0], &p[1], Sign::Plus);
    assert!(omega(&wp, &p[0], &p[1], &skew_couplings(), good * 1.1).is_err());
}

#[test]
fn rho_and_rhobar_examples() {
    let (wp, _, rh, rb, _) = setup(5, 33);
    let id = wp.identity();
    assert!(frob(&(rh.act(Gen::T0).unwrap() * rh.act(Gen::T1).unwrap() - &id)) < 1e-12);
    let Some(RepLabel { params: RepParams::RhoBar { r, couplings }, .. }) = rb.label.clone() else { panic!() };
    let q = wp.q();
    let want = wp.x() * (couplings.kappa1 * r.x * r.mu / (q - 1.0 / q));
    assert!(frob(&(rb.act(Gen::E1).unwrap() - want)) < 1e-12);
    for rep in [&rh, &rb] {
        assert_eq!(unit_scalar(rep.act(Gen::Z0).unwrap()), Some(c(1.0, 0.0)));
        assert_eq!(unit_scalar(rep.act(Gen::Z1).unwrap()), Some(c(1.0, 0.0)));
        assert!(matches!(rep.act(Gen::F0), Err(Error::NotBorel(_))));
        assert_eq!(rep.kind, Kind::Borel);
    }
}

/// Smallest relative singular value of `M ↦ (M a(g) − b(g) M)_g` over Borel generators.
fn best_match(a: &Rep, b: &Rep) -> f64 {
    let n = a.dim;
    let blocks: Vec<CMat> = Gen::BOREL
        .iter()
        .map(|g| kron(&a.act(*g).unwrap().transpose(), &identity(n)) - kron(&identity(n), b.act(*g).unwrap()))
        .collect();
    let mut k = CMat::zeros(n * n * blocks.len(), n * n);
    for (i, blk) in blocks.iter().enumerate() {
        k.view_mut((i * n * n, 0), (n * n, n * n)).copy_from(blk);
    }
    let sv = singular_values(&k);
    sv[sv.len() - 1] / sv[0]
}

#[test]
fn rho_is_not_a_restriction_of_omega() {
    let wp = common::weyl(3, 1);
    let cc = skew_couplings();
    let mut g = rng(34);
    for _ in 0..5 {
        let (_, p) = common::points(&mut g, wp.root(), 2);
        let om = omega_signed(&wp, &p[0], &p[1], &cc, Sign::Plus).unwrap();
        let rh = rho(&wp, &p[0], &cc).unwrap();
        assert!(best_match(&rh, &om) > 0.1, "{}", best_match(&rh, &om));
        assert!(best_match(&rh, &rh) < 1e-12);
    }
}

#[test]
fn phi_examples() {
    let (wp, _, _, _, ph) = setup(3, 35);
    assert_eq!(frob(ph.act(Gen::E0).unwrap()), 0.0);
    assert_eq!(frob(ph.act(Gen::E1).unwrap()), 0.0);
    assert!(frob(&(ph.act(Gen::T0).unwrap() * ph.act(Gen::T1).unwrap() - wp.identity())) < 1e-12);
    for g in Gen::BOREL {
        assert!(is_diagonal(ph.act(g).unwrap(), 0.0));
    }
    let cval = c(1.3, -0.2);
    let q = wp.q();
    assert!(frob(&(ph.act(Gen::T1).unwrap() - wp.z_pow(2) * (q / cval))) < 1e-12);
    assert!(phi(&wp, c(0.0, 0.0)).is_err());
}

#[test]
fn pi_examples() {
    let rt = RootOfUnity::new(3, 1).unwrap();
    let q = rt.q();
    let z = c(0.4, 1.1);
    let p = pi(&rt, z).unwrap();
    let o = c(0.0, 0.0);
    assert_eq!(*p.act(Gen::E1).unwrap(), CMat::from_row_slice(2, 2, &[o, z, o, o]));
    let t1 = p.act(Gen::T1).unwrap();
    assert!((t1[(0, 0)] - q).norm() < 1e-15 && (t1[(1, 1)] - 1.0 / q).norm() < 1e-15);
    let (e, f) = (p.act(Gen::E1).unwrap(), p.act(Gen::F1).unwrap());
    let comm = e * f - f * e;
    let cartan = (t1 - p.act(Gen::T1inv).unwrap()) / (q - 1.0 / q);
    let want = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), o, o, c(-1.0, 0.0)]);
    assert!(frob(&(&comm - &want)) < 1e-14 && frob(&(&comm - &cartan)) < 1e-14);
    assert!(pi(&rt, c(0.0, 0.0)).is_err());
}

#[test]
fn coproduct_examples() {
    let (_, om, _, _, ph) = setup(3, 36);
    let rt = RootOfUnity::new(3, 1).unwrap();
    let p = pi(&rt, c(0.8, 0.3)).unwrap();
    assert_eq!(coproduct(&om, &p, Gen::T1).unwrap(), kron(om.act(Gen::T1).unwrap(), p.act(Gen::T1).unwrap()));
    let want = kron(om.act(Gen::E0).unwrap(), &identity(3));
    assert!(frob(&(coproduct(&om, &ph, Gen::E0).unwrap() - want)) < 1e-14);
    assert!(matches!(coproduct(&om, &ph, Gen::F0), Err(Error::NotBorel(_))));
    assert_eq!(coproduct_op(&om, &p, Gen::T1).unwrap(), coproduct(&om, &p, Gen::T1).unwrap());
    for g in [Gen::E0, Gen::E1, Gen::F0, Gen::F1] {
        let via = swap(2, 3) * coproduct(&p, &om, g).unwrap() * swap(3, 2);
        assert!(frob(&(coproduct_op(&om, &p, g).unwrap() - via)) < 1e-13);
    }
}

#[test]
fn coassociativity() {
    let rt = RootOfUnity::new(3, 1).unwrap();
    let (a, b, cc) = (pi(&rt, c(0.7, 0.1)).unwrap(), pi(&rt, c(-0.3, 1.2)).unwrap(), pi(&rt, c(1.5, -0.6)).unwrap());
    let left = Rep::tensor(&Rep::tensor(&a, &b), &cc);
    let right = Rep::tensor(&a, &Rep::tensor(&b, &cc));
    for g in Gen::ALL {
        assert!(frob(&(left.act(g).unwrap() - right.act(g).unwrap())) < 1e-13, "{g}");
    }
}

#[test]
fn conjugation_weights_and_centrality() {
    let (wp, om, rh, rb, _) = setup(5, 37);
    let rt = *wp.root();
    let q = rt.q();
    let p = pi(&rt, c(0.6, -0.9)).unwrap();
    for rep in [&om, &rh, &rb, &p] {
        let t0 = rep.act(Gen::T0).unwrap();
        let t0i = rep.act(Gen::T0inv).unwrap();
        let t1 = rep.act(Gen::T1).unwrap();
        let t1i = rep.act(Gen::T1inv).unwrap();
        let (e0, e1) = (rep.act(Gen::E0).unwrap(), rep.act(Gen::E1).unwrap());
        let sc = frob(e0).max(frob(e1));
        assert!(frob(&(t0 * e0 * t0i - e0 * (q * q))) < 1e-12 * sc);
        assert!(frob(&(t0 * e1 * t0i - e1 / (q * q))) < 1e-12 * sc);
        assert!(frob(&(t1 * e1 * t1i - e1 * (q * q))) < 1e-12 * sc);
        assert!(frob(&(t1 * e0 * t1i - e0 / (q * q))) < 1e-12 * sc);
        for z in [Gen::Z0, Gen::Z1] {
            assert!(unit_scalar(rep.act(z).unwrap()).is_some());
        }
        assert!(frob(&(t1 * t1i - identity(rep.dim))) < 1e-12);
    }
    let d = coproduct(&om, &rh, Gen::T1).unwrap();
    let di = coproduct(&om, &rh, Gen::T1inv).unwrap();
    assert!(frob(&(inverse(&d).unwrap() - di)) < 1e-10);
}

#[test]
fn intertwiner_residual_examples() {
    let (_, om, ..) = setup(3, 38);
    assert_eq!(intertwiner_residual(&identity(3), &om, &om, &Gen::ALL).unwrap(), 0.0);
    assert!(matches!(intertwiner_residual(&identity(2), &om, &om, &Gen::ALL), Err(Error::Dimension(_))));
}

#[test]
fn label_json_round_trip() {
    let (_, om, rh, _, ph) = setup(3, 39);
    for rep in [&om, &rh, &ph] {
        let label = rep.label.clone().unwrap();
        let back = RepLabel::from_json(&label.to_json()).unwrap();
        assert_eq!(back, label);
        assert_eq!(back.build().unwrap().act(Gen::T1).unwrap(), rep.act(Gen::T1).unwrap());
    }
    assert!(RepLabel::from_json(r#"{"root":{"n":3,"m":1},"rep":"phi","c":[0,0]}"#).is_err());
    assert!(RepLabel::from_json(r#"{"root":{"n":3,"m":1},"rep":"pi","z":[1.5,0]}"#).is_ok());
}
