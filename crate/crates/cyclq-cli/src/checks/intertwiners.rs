use cyclq::curve::{c0, z_point, Sign};
use cyclq::intertwiners::{a_check, b_check, o_inverse, o_poly, r_check, ses_maps};
use cyclq::reps::{intertwiner_residual, omega, omega_signed, phi, pi, rho, rhobar, Gen, Rep};
use cyclq::tensorcore::{frob, identity, singular_values};
use cyclq::C64;
use serde_json::json;

use super::{Ctx, Recorder};
use crate::sampling::{points_json, Sampler};
use crate::HarnessError;

pub fn run(ctx: &Ctx, s: &mut Sampler, rec: &mut Recorder) -> Result<(), HarnessError> {
    rfact(ctx, s, rec)?;
    factor(ctx, s, rec)?;
    ses(ctx, s, rec)
}

/// `Ř = S(T ⊗ T)S` intertwines `Ω ⊗ Ω` on all ten generators.
pub fn rfact(ctx: &Ctx, s: &mut Sampler, rec: &mut Recorder) -> Result<(), HarnessError> {
    let wp = &ctx.wp;
    let cc = &ctx.cc;
    let sign = ctx.sign_c0();
    for i in 0..ctx.cfg.draws {
        let p = s.points(wp.root(), 4)?;
        let draw = json!({ "index": i, "points": points_json(&p) });
        let (r, rp, t, tp) = (&p[0], &p[1], &p[2], &p[3]);
        let rr = r_check(wp, r, rp, t, tp)?;
        let a = omega_signed(wp, r, rp, cc, sign)?;
        let b = omega_signed(wp, t, tp, cc, sign)?;
        let res = intertwiner_residual(&rr, &Rep::tensor(&a, &b), &Rep::tensor(&b, &a), &Gen::ALL)?;
        rec.max("intertwiners.rfact", "S (T (x) T) S intertwines Omega (x) Omega", 1e-9, res, &draw);
        let ab = a_check(wp, r, t, tp)? * b_check(wp, rp, t, tp)?;
        rec.max(
            "intertwiners.rfact.split",
            "R-check equals the product of its two halves",
            1e-9,
            frob(&(&ab - &rr)) / frob(&rr),
            &draw,
        );
    }
    Ok(())
}

/// `O(χ)` intertwines `Ω_rs ⊗ φ_{c0}` with `ρ_r ⊗ ρ̄_s` for both `c0` branches.
pub fn factor(ctx: &Ctx, s: &mut Sampler, rec: &mut Recorder) -> Result<(), HarnessError> {
    let wp = &ctx.wp;
    let cc = &ctx.cc;
    let n = wp.n();
    let o = o_poly(wp);
    let om = o.eval(wp);
    for i in 0..ctx.cfg.draws {
        let p = s.points(wp.root(), 2)?;
        let draw = json!({ "index": i, "points": points_json(&p) });
        let (r, t) = (&p[0], &p[1]);
        let dst = Rep::tensor(&rho(wp, r, cc)?, &rhobar(wp, t, cc)?);
        for (sign, id) in [(Sign::Plus, "intertwiners.factor.plus"), (Sign::Minus, "intertwiners.factor.minus")] {
            let cv = c0(wp.root(), r, t, sign);
            let src = Rep::tensor(&omega(wp, r, t, cc, cv)?, &phi(wp, cv)?);
            let res = intertwiner_residual(&om, &src, &dst, &Gen::BOREL)?;
            rec.max(id, "O(chi) maps Omega (x) phi to rho (x) rho-bar", 1e-9, res, &draw);
        }
    }
    let oi = o_inverse(wp, &o)?.eval(wp);
    let none = json!(null);
    rec.max("intertwiners.o_inverse", "O(chi) O^-1(chi) = I", 1e-10, frob(&(&om * &oi - identity(n * n))), &none);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let ls = (one + i.powu(n as u32)) / (one + i) * (n as f64).sqrt();
    let direct: C64 = (0..n as i64).map(|k| wp.root().pow(-k * k)).sum();
    let res = (o.eval_scalar(one) - ls).norm().max((direct - ls).norm());
    rec.max("intertwiners.gauss_sum", "O(1) equals the Landsberg-Schaar value", 1e-12, res, &none);
    Ok(())
}

/// The three fusion sequences, their exactness and ranks, and the f-generator check on `Ī`, `T̄`.
pub fn ses(ctx: &Ctx, s: &mut Sampler, rec: &mut Recorder) -> Result<(), HarnessError> {
    let wp = &ctx.wp;
    let rt = *wp.root();
    let cc = &ctx.cc;
    let n = wp.n();
    let csign = ctx.sign_c0();
    for i in 0..ctx.cfg.draws {
        let p = s.points(&rt, 2)?;
        let (r, t) = (&p[0], &p[1]);
        for sign in [Sign::Plus, Sign::Minus] {
            let draw = json!({ "index": i, "points": points_json(&p), "zs_sign": sign });
            let zs = z_point(t, cc, sign);
            let m = ses_maps(wp, t, cc, zs)?;
            let (tq, tqi) = (t.shift(&rt, 1), t.shift(&rt, -1));
            let pz = pi(&rt, zs)?;
            let triples = [
                ("rho", &m.iota, &m.tau, rho(wp, t, cc)?, rho(wp, &tq, cc)?, rho(wp, &tqi, cc)?),
                ("rhobar", &m.iota_bar, &m.tau_bar, rhobar(wp, t, cc)?, rhobar(wp, &tq, cc)?, rhobar(wp, &tqi, cc)?),
                (
                    "omega",
                    &m.i_bar,
                    &m.t_bar,
                    omega_signed(wp, r, t, cc, csign)?,
                    omega_signed(wp, r, &tq, cc, csign)?,
                    omega_signed(wp, r, &tqi, cc, csign)?,
                ),
            ];
            for (name, inj, sur, mid, up, down) in triples {
                let mid = Rep::tensor(&mid, &pz);
                let res = intertwiner_residual(inj, &up, &mid, &Gen::BOREL)?
                    .max(intertwiner_residual(sur, &mid, &down, &Gen::BOREL)?);
                rec.max(&format!("intertwiners.ses.{name}.intertwine"), "fusion maps intertwine", 1e-9, res, &draw);
                let exact = frob(&(sur * inj)) / (frob(sur) * frob(inj));
                rec.max(&format!("intertwiners.ses.{name}.exact"), "surjection after injection vanishes", 1e-12, exact, &draw);
                let gap = [inj, sur]
                    .into_iter()
                    .map(|x| {
                        let sv = singular_values(x);
                        if sv.len() < n { 0.0 } else { sv[n - 1] / sv[0] }
                    })
                    .fold(f64::INFINITY, f64::min);
                rec.min(&format!("intertwiners.ses.{name}.rank"), "both fusion maps have rank N", 1e-6, gap, &draw);
                if name == "omega" {
                    let f = [Gen::F0, Gen::F1];
                    let res = intertwiner_residual(inj, &up, &mid, &f)?.min(intertwiner_residual(sur, &mid, &down, &f)?);
                    rec.min(
                        "intertwiners.ses.omega.f_generators",
                        "the Omega fusion maps fail to intertwine the f generators",
                        0.1,
                        res,
                        &draw,
                    );
                }
            }
        }
    }
    Ok(())
}
