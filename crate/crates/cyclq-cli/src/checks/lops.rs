use cyclq::curve::{z_point, CurvePoint, Sign};
use cyclq::intertwiners::{b_check, o_poly, r_check, s_rs, ses_maps, t_rs};
use cyclq::lops::*;
use cyclq::reps::{omega_signed, phi, pi, rho, rhobar, Gen, Rep};
use cyclq::tensorcore::{identity, kron};
use cyclq::{CMat, C64};
use serde_json::json;

use super::{hom_residual, rel, Ctx, Recorder};
use crate::sampling::{c_json, points_json, Sampler};
use crate::HarnessError;

pub fn run(ctx: &Ctx, s: &mut Sampler, rec: &mut Recorder) -> Result<(), HarnessError> {
    let wp = &ctx.wp;
    let rt = *wp.root();
    let cc = &ctx.cc;
    let n = wp.n();
    let q = wp.q();
    let (i2, i_n) = (identity(2), identity(n));
    let csign = ctx.sign_c0();
    let o = o_poly(wp).eval(wp);
    for i in 0..ctx.cfg.draws {
        let p = s.points(&rt, 4)?;
        let (z, w) = (s.spectral(), s.spectral());
        let draw = json!({ "index": i, "points": points_json(&p), "z": c_json(z), "w": c_json(w) });
        let (r, rp, t, tp) = (&p[0], &p[1], &p[2], &p[3]);

        let pz = pi(&rt, z)?;
        let om = omega_signed(wp, r, t, cc, csign)?;
        let cases: [(&str, CMat, Rep, &[Gen]); 4] = [
            ("omega", l_omega(wp, cc, r, t, z).check(), om, &Gen::ALL),
            ("rho", l_rho(wp, cc, r, z).check(), rho(wp, r, cc)?, &Gen::BOREL),
            ("rhobar", l_rhobar(wp, cc, r, z).check(), rhobar(wp, r, cc)?, &Gen::BOREL),
            ("phi", l_phi(wp).check(), phi(wp, s.complex() + C64::new(1.5, 0.0))?, &Gen::BOREL),
        ];
        for (name, l, aux, gens) in cases {
            let res = hom_residual(&l, &aux, &pz, gens)?;
            rec.max(&format!("lops.homomorphism.{name}"), "L-operator intertwines aux (x) pi_z", 1e-9, res, &draw);
        }

        let rr = r6v(&rt, z / w);
        let src = Rep::tensor(&pi(&rt, z)?, &pi(&rt, w)?);
        let dst = Rep::tensor(&pi(&rt, w)?, &pi(&rt, z)?);
        let mut res: f64 = 0.0;
        for g in Gen::ALL {
            res = res.max(rel(&(&rr * src.act(g)?), &(dst.act(g)? * &rr)));
        }
        rec.max("lops.six_vertex", "six-vertex R-check intertwines pi_z (x) pi_w", 1e-9, res, &draw);

        let lb = l_bold(wp, cc, t, tp, z);
        let l = l_omega(wp, cc, t, tp, z).check();
        let scale = l_bold_scale(&rt, cc, t, tp, z);
        let id = identity(2 * n);
        let res = rel(&(&lb * &l), &(&id * scale)).max(rel(&(&l * &lb), &(&id * scale)));
        rec.max("lops.bold_l.normalization", "bold L inverts the Omega L-operator up to its scalar", 1e-9, res, &draw);
        let res = hom_residual(&lb, &pz, &omega_signed(wp, t, tp, cc, csign)?, &Gen::ALL)?;
        rec.max("lops.bold_l.homomorphism", "bold L intertwines pi_z (x) Omega", 1e-9, res, &draw);

        let lo = |a: &CurvePoint, b: &CurvePoint| l_omega(wp, cc, a, b, z).check();
        let tm = t_rs(wp, r, t)?;
        let res = rel(&(kron(&i2, &tm) * lo(r, t)), &(lo(t, r) * kron(&tm, &i2)));
        rec.max("lops.ll.i", "T_rs exchanges the Omega L-operator labels", 1e-9, res, &draw);
        let sm = s_rs(wp, rp, t)?;
        let lhs = kron(&i2, &sm) * chain2(&lo(r, rp), &lo(t, tp), n);
        let rhs = chain2(&lo(r, t), &lo(rp, tp), n) * kron(&sm, &i2);
        rec.max("lops.ll.ii", "S_rs exchanges labels across two L-operators", 1e-9, rel(&lhs, &rhs), &draw);
        let rc = r_check(wp, r, rp, t, tp)?;
        let lhs = kron(&i2, &rc) * chain2(&lo(r, rp), &lo(t, tp), n);
        let rhs = chain2(&lo(t, tp), &lo(r, rp), n) * kron(&rc, &i2);
        rec.max("lops.ll.iii", "R-check exchanges two Omega L-operators", 1e-9, rel(&lhs, &rhs), &draw);

        let rr = r6v(&rt, z / w);
        let rll = |lz: CMat, lw: CMat| {
            let lhs = kron(&rr, &i_n) * kron(&i2, &lw) * kron(&lz, &i2);
            let rhs = kron(&i2, &lz) * kron(&lw, &i2) * kron(&i_n, &rr);
            rel(&lhs, &rhs)
        };
        let res = rll(l_rho(wp, cc, r, z).check(), l_rho(wp, cc, r, w).check())
            .max(rll(l_rhobar(wp, cc, r, z).check(), l_rhobar(wp, cc, r, w).check()));
        rec.max("lops.rll.rho", "RLL relation for the rho and rho-bar L-operators", 1e-9, res, &draw);
        let res = rll(l_omega(wp, cc, r, t, z).check(), l_omega(wp, cc, r, t, w).check());
        rec.max("lops.rll.omega", "RLL relation for the Omega L-operator", 1e-9, res, &draw);

        let lhs = kron(&i2, &o) * chain2(&l_omega(wp, cc, r, t, z).check(), &l_phi(wp).check(), n);
        let rhs = chain2(&l_rho(wp, cc, r, z).check(), &l_rhobar(wp, cc, t, z).check(), n) * kron(&o, &i2);
        rec.max("lops.factorization", "O(chi) splits L_Omega L_phi into L_rho L_rho-bar", 1e-9, rel(&lhs, &rhs), &draw);
        let mut rm = || mat2(s.complex(), s.complex(), s.complex(), s.complex());
        let (a, b, cm) = (rm(), rm(), rm());
        let br = |x: &Mat2, y: &Mat2| bracket(x, y, wp).check();
        let lhs = kron(&i2, &o) * chain2(&br(&a, &b), &br(&eye2(), &cm), n);
        let rhs = chain2(&br(&a, &eye2()), &br(&b, &cm), n) * kron(&o, &i2);
        rec.max("lops.abc", "O(chi) moves B between brackets for random A, B, C", 1e-9, rel(&lhs, &rhs), &draw);

        let (tq, tqi) = (t.shift(&rt, 1), t.shift(&rt, -1));
        for sign in [Sign::Plus, Sign::Minus] {
            let zs = z_point(t, cc, sign);
            let r6 = R6v::new(&rt, zs / w);
            if r6.a.norm() < 1e-4 || r6.b.norm() < 1e-4 {
                continue;
            }
            let (c1, c2) = (r6.b / q, q * r6.a);
            let rr = r6.matrix();
            let m = ses_maps(wp, t, cc, zs)?;
            let fam: [(&str, &CMat, &CMat, Box<dyn Fn(&CurvePoint) -> CMat>); 3] = [
                ("rho", &m.iota, &m.tau, Box::new(|x| l_rho(wp, cc, x, w).check())),
                ("rhobar", &m.iota_bar, &m.tau_bar, Box::new(|x| l_rhobar(wp, cc, x, w).check())),
                ("omega", &m.i_bar, &m.t_bar, Box::new(|x| l_omega(wp, cc, r, x, w).check())),
            ];
            for (name, inj, sur, lf) in fam {
                let lhs = kron(&lf(t), &i2) * kron(&i_n, &rr) * kron(inj, &i2);
                let rhs = kron(&i2, inj) * lf(&tq) * c1;
                rec.max(&format!("lops.lfusion.{name}.injection"), "L-operator fusion through the injection", 1e-9, rel(&lhs, &rhs), &draw);
                let lhs = kron(&i2, sur) * kron(&lf(t), &i2) * kron(&i_n, &rr);
                let rhs = lf(&tqi) * kron(sur, &i2) * c2;
                rec.max(&format!("lops.lfusion.{name}.surjection"), "L-operator fusion through the surjection", 1e-9, rel(&lhs, &rhs), &draw);
            }

            let zr = z_point(rp, cc, sign);
            let m = ses_maps(wp, rp, cc, zr)?;
            let k = cc.kappa0 * cc.kappa1;
            let (zs2, zsp2, zr2) = (k * t.x * t.y, k * tp.x * tp.y, zr * zr);
            let e1 = t.mu * (q * q * zr2 - zs2) * (q * q * rp.x * rp.mu * tp.mu - tp.y) / (t.mu * t.x - rp.mu * rp.x * q * q);
            let e2 = tp.mu * q * q * (zr2 - zsp2) * (rp.x * rp.mu - t.x * t.mu) / (tp.y - rp.x * rp.mu * tp.mu);
            let lb = l_bold(wp, cc, t, tp, zr);
            let bc = |x: &CurvePoint| b_check(wp, x, t, tp);
            let lhs = kron(&bc(rp)?, &i2) * kron(&i_n, &lb) * kron(&m.i_bar, &i_n);
            let rhs = kron(&i_n, &m.i_bar) * bc(&rp.shift(&rt, 1))? * e1;
            rec.max("lops.vfusion.injection", "B-check fusion with bold L through the injection", 1e-9, rel(&lhs, &rhs), &draw);
            let lhs = kron(&i_n, &m.t_bar) * kron(&bc(rp)?, &i2) * kron(&i_n, &lb);
            let rhs = bc(&rp.shift(&rt, -1))? * kron(&m.t_bar, &i_n) * e2;
            rec.max("lops.vfusion.surjection", "B-check fusion with bold L through the surjection", 1e-9, rel(&lhs, &rhs), &draw);

            let want = l_rho(wp, cc, t, w).matrix();
            let got = gauge_conjugate(wp, &u_std(zs / w, t.mu), &gauge_aleph(t, cc, zs), w).matrix();
            let want_b = l_rhobar(wp, cc, t, w).matrix();
            let got_b = gauge_conjugate(wp, &v_std(&rt, zs / w, t.mu), &gauge_beth(t, cc, zs), w).matrix();
            let res = rel(&want, &got).max(rel(&want_b, &got_b));
            rec.max("lops.gauge", "gauge-fixed L-operators depend on z_s / w and mu_s only", 1e-9, res, &draw);
        }
    }
    Ok(())
}
