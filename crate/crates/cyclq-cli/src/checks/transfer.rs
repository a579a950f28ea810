use cyclq::curve::{c0, z_point, CurvePoint};
use cyclq::lops::{l_bar_std, l_omega, l_rho, l_rhobar, l_std, R6v};
use cyclq::reps::rho;
use cyclq::tensorcore::{frob, is_diagonal};
use cyclq::transfer::*;
use cyclq::{CMat, C64};
use serde_json::json;

use super::{comm_rel, rel, rel_floor, Ctx, Recorder};
use crate::sampling::{c_json, points_json, Sampler};
use crate::HarnessError;

pub fn run(ctx: &Ctx, s: &mut Sampler, rec: &mut Recorder) -> Result<(), HarnessError> {
    v_chain(ctx, s, rec)?;
    w_chain(ctx, s, rec)
}

fn chain_scale(l: &CMat, sites: usize) -> f64 {
    frob(l).powi(sites as i32)
}

type QFn = fn(&cyclq::weyl::WeylPair, &cyclq::curve::Couplings, &CurvePoint, C64, usize, Twist) -> cyclq::Result<CMat>;

/// TQ, factorization and commutation identities on `V^{⊗M}` at one twist.
fn tq_identities(
    ctx: &Ctx,
    rec: &mut Recorder,
    prefix: &str,
    twist: Twist,
    (r, t, w): (&CurvePoint, &CurvePoint, C64),
    draw: &serde_json::Value,
) -> Result<(), HarnessError> {
    let (wp, cc, m) = (&ctx.wp, &ctx.cc, ctx.cfg.sites);
    let rt = *wp.root();
    let q = wp.q();
    let zs = z_point(t, cc, ctx.sign_zs());
    let u = zs / w;
    let tm = t6v(&rt, u, m, twist)?;
    let r6 = R6v::new(&rt, u);
    let (c1, c2) = ((r6.b / q).powi(m as i32), (q * r6.a).powi(m as i32));
    let (tq, tqi) = (t.shift(&rt, 1), t.shift(&rt, -1));
    let dscale = frob(&twist_matrix(&rho(wp, t, cc)?, &rt, twist)?);
    let floor = frob(&tm) * dscale * chain_scale(&l_rho(wp, cc, t, w).matrix(), m);
    let qs: [(&str, QFn); 2] = [("rho", q_rho), ("rhobar", q_rhobar)];
    for (name, f) in qs {
        let qop = f(wp, cc, t, w, m, twist)?;
        let lhs = &qop * &tm;
        let rhs = f(wp, cc, &tq, w, m, twist)? * c1 + f(wp, cc, &tqi, w, m, twist)? * c2;
        let res = rel_floor(&lhs, &rhs, floor);
        rec.max(&format!("{prefix}.tq.{name}"), "TQ relation for the Q-operator", 1e-8, res, draw);
        let res = frob(&(&tm * &qop - &qop * &tm)) / (frob(&tm) * frob(&qop)).max(floor);
        rec.max(&format!("{prefix}.qt_commute.{name}"), "T(z_s / w) commutes with Q(w)", 1e-9, res, draw);
    }
    let cv = c0(&rt, r, t, ctx.sign_c0());
    let to = |x: &CurvePoint| t_omega(wp, cc, r, x, cv, w, m, twist);
    let floor = frob(&tm) * dscale * chain_scale(&l_omega(wp, cc, r, t, w).matrix(), m);
    let lhs = to(t)? * &tm;
    let rhs = to(&tq)? * c1 + to(&tqi)? * c2;
    rec.max(&format!("{prefix}.tq.omega"), "TQ relation for T_Omega", 1e-8, rel_floor(&lhs, &rhs, floor), draw);
    let prod = q_rho(wp, cc, r, w, m, twist)? * q_rhobar(wp, cc, t, w, m, twist)?;
    let tphi = t_phi(wp, cv, m, twist)?;
    let floor = dscale * dscale * chain_scale(&l_rho(wp, cc, r, w).matrix(), m) * chain_scale(&l_rhobar(wp, cc, t, w).matrix(), m);
    let res = match twist {
        Twist::Frac(alpha) => {
            let inv = t_phi_closed_inverse(&rt, cv, alpha, m)?;
            rel_floor(&to(t)?, &(&prod * inv), floor / frob(&tphi))
        }
        Twist::Power(_) => rel_floor(&(to(t)? * &tphi), &prod, floor),
    };
    rec.max(&format!("{prefix}.factorization"), "T_Omega = Q_rho Q_rho-bar T_phi^-1", 1e-8, res, draw);
    Ok(())
}

/// Six-vertex, Q-operator and T_φ checks on `V^{⊗M}`.
pub fn v_chain(ctx: &Ctx, s: &mut Sampler, rec: &mut Recorder) -> Result<(), HarnessError> {
    let (wp, cc, m) = (&ctx.wp, &ctx.cc, ctx.cfg.sites);
    let rt = *wp.root();
    let n = wp.n();
    let alpha = ctx.cfg.alpha;
    let twist = Twist::frac(alpha)?;
    for i in 0..ctx.cfg.chain_draws {
        let p = s.points(&rt, 2)?;
        let (w, z2) = (s.spectral(), s.spectral());
        let draw = json!({ "index": i, "points": points_json(&p), "w": c_json(w), "z2": c_json(z2) });
        let (r, t) = (&p[0], &p[1]);
        let zs = z_point(t, cc, ctx.sign_zs());
        let u = zs / w;

        let tm = t6v(&rt, u, m, twist)?;
        let sz = sz_operator(m);
        rec.max("transfer.t6v.sz", "six-vertex transfer matrix conserves S_z", 1e-12, comm_rel(&tm, &sz), &draw);
        let res = comm_rel(&tm, &t6v(&rt, z2, m, twist)?);
        rec.max("transfer.t6v.commuting", "six-vertex transfer matrices commute", 1e-9, res, &draw);

        let cv = c0(&rt, r, t, ctx.sign_c0());
        let ops = [
            q_rho(wp, cc, t, w, m, twist)?,
            q_rhobar(wp, cc, t, w, m, twist)?,
            t_omega(wp, cc, r, t, cv, w, m, twist)?,
        ];
        let leak = ops.iter().map(|o| charge_leak(o, m, n) / frob(o)).fold(0.0, f64::max);
        rec.max("transfer.charge", "Q-type operators conserve S_z / 2 modulo N", 1e-12, leak, &draw);

        tq_identities(ctx, rec, "transfer", twist, (r, t, w), &draw)?;

        let tphi = t_phi(wp, cv, m, twist)?;
        let closed = t_phi_closed(&rt, cv, alpha, m);
        let res = rel(&tphi, &closed).max(if is_diagonal(&tphi, 1e-14 * frob(&tphi)) { 0.0 } else { 1.0 });
        rec.max("transfer.t_phi.closed_form", "T_phi trace equals its closed form", 1e-10, res, &draw);
        let res = comm_rel(&tphi, &ops[0]).max(comm_rel(&tphi, &q_rhobar(wp, cc, r, w, m, twist)?));
        rec.max("transfer.t_phi.commutes", "T_phi commutes with Q_rho and Q_rho-bar", 1e-9, res, &draw);

        let mut worst: f64 = 0.0;
        for (gauge, bar) in [(zs / (cc.kappa0 * t.x), false), (zs / (cc.kappa0 * t.y), true)] {
            let (lhs, qq, l) = if bar {
                (q_bar_std(wp, u, t.mu, m)?, q_rhobar(wp, cc, t, w, m, Twist::Power(0))?, l_bar_std(wp, u, t.mu))
            } else {
                (q_std(wp, u, t.mu, m)?, q_rho(wp, cc, t, w, m, Twist::Power(0))?, l_std(wp, u, t.mu))
            };
            let rhs = conjugate_sz(&qq, gauge, m) * w.powi(-(m as i32));
            worst = worst.max(rel_floor(&lhs, &rhs, chain_scale(&l.matrix(), m)));
        }
        rec.max("transfer.q_std.gauge", "untwisted Q_rho(w) is a conjugate of Q(z_s / w, mu_s)", 1e-9, worst, &draw);

        let zs_fit: Vec<C64> = (0..m + 2).map(|k| C64::from_polar(0.6 + 0.1 * k as f64, 0.7 * k as f64 + 0.3)).collect();
        let vander = CMat::from_fn(zs_fit.len(), m + 1, |a, b| zs_fit[a].powu(b as u32));
        let pinv = vander.clone().pseudo_inverse(1e-14).map_err(|e| HarnessError::Numeric(e.into()))?;
        let mut worst: f64 = 0.0;
        for f in [q_std, q_bar_std] {
            let vals: Vec<CMat> = zs_fit.iter().map(|z| f(wp, *z, t.mu, m)).collect::<Result<_, _>>()?;
            let scale = vals.iter().map(frob).fold(0.0, f64::max);
            for a in 0..1usize << m {
                for b in 0..1usize << m {
                    let y = CMat::from_fn(zs_fit.len(), 1, |k, _| vals[k][(a, b)]);
                    worst = worst.max(frob(&(&vander * (&pinv * &y) - &y)) / scale);
                }
            }
        }
        rec.max("transfer.q_std.polynomial", "Q(z, mu) entries are polynomials of degree M in z", 1e-9, worst, &draw);

        for (tw, id) in [(twist, "transfer.tq_standard"), (Twist::Power(0), "transfer.integer_twist.tq_standard")] {
            let res = tq_standard(ctx, tw, u, t.mu)?;
            rec.max(id, "standard TQ relation for Q(z, mu)", 1e-8, res, &draw);
        }

        tq_identities(ctx, rec, "transfer.integer_twist", Twist::Power(1), (r, t, w), &draw)?;
    }
    Ok(())
}

type QStd = fn(&cyclq::weyl::WeylPair, C64, C64, usize) -> cyclq::Result<CMat>;

fn tq_standard(ctx: &Ctx, twist: Twist, u: C64, mu: C64) -> Result<f64, HarnessError> {
    let (wp, m) = (&ctx.wp, ctx.cfg.sites);
    let q = wp.q();
    let tm = t6v(wp.root(), u, m, twist)?;
    let r6 = R6v::new(wp.root(), u);
    let (c1, c2) = ((r6.b / q).powi(m as i32), (q * r6.a).powi(m as i32));
    let mut res: f64 = 0.0;
    for (f, l) in [(q_std as QStd, l_std(wp, u, mu)), (q_bar_std as QStd, l_bar_std(wp, u, mu))] {
        let lhs = f(wp, u, mu, m)? * &tm;
        let rhs = f(wp, q * u, q * mu, m)? * c1 + f(wp, u / q, mu / q, m)? * c2;
        res = res.max(rel_floor(&lhs, &rhs, frob(&tm) * chain_scale(&l.matrix(), m)));
    }
    Ok(res)
}

/// τ2, 𝒬 and chiral Potts transfer matrices on `W^{⊗M}`.
pub fn w_chain(ctx: &Ctx, s: &mut Sampler, rec: &mut Recorder) -> Result<(), HarnessError> {
    let (wp, cc, m) = (&ctx.wp, &ctx.cc, ctx.cfg.sites);
    let rt = *wp.root();
    let q = wp.q();
    let twist = Twist::frac(ctx.cfg.alpha)?;
    for i in 0..ctx.cfg.chain_draws {
        let p = s.points(&rt, 4)?;
        let (z1, z2) = (s.spectral(), s.spectral());
        let draw = json!({ "index": i, "points": points_json(&p), "z1": c_json(z1), "z2": c_json(z2) });
        let quad = Quad { r: p[0], rp: p[1], s: p[2], sp: p[3], sign: ctx.sign_c0() };
        let (rp, t, tp) = (&quad.rp, &quad.s, &quad.sp);

        let a = tau2_transfer(wp, cc, t, tp, z1, m, twist)?;
        let b = tau2_transfer(wp, cc, t, tp, z2, m, twist)?;
        rec.max("transfer.tau2.commuting", "tau2 transfer matrices commute", 1e-9, comm_rel(&a, &b), &draw);

        let zr = z_point(rp, cc, ctx.sign_zs());
        let k = cc.kappa0 * cc.kappa1;
        let (zs2, zsp2, zr2) = (k * t.x * t.y, k * tp.x * tp.y, zr * zr);
        let e1 = t.mu * (q * q * zr2 - zs2) * (q * q * rp.x * rp.mu * tp.mu - tp.y) / (t.mu * t.x - rp.mu * rp.x * q * q);
        let e2 = tp.mu * q * q * (zr2 - zsp2) * (rp.x * rp.mu - t.x * t.mu) / (tp.y - rp.x * rp.mu * tp.mu);
        for (tw, id) in [(twist, "transfer.tq_w"), (Twist::Power(1), "transfer.integer_twist.tq_w")] {
            let tm = tau2_transfer(wp, cc, t, tp, zr, m, tw)?;
            let qq = |x: CurvePoint| q_tau2(wp, cc, &quad.with_rp(x), m, tw);
            let lhs = qq(*rp)? * &tm;
            let rhs = qq(rp.shift(&rt, 1))? * e1.powi(m as i32) + qq(rp.shift(&rt, -1))? * e2.powi(m as i32);
            rec.max(id, "TQ relation for the tau2 model", 1e-8, rel(&lhs, &rhs), &draw);
        }

        let cp = cp_transfer(wp, cc, &quad, m, twist)?;
        let fac = cp_transfer_factorized(wp, cc, &quad, m, twist)?;
        rec.max("transfer.chiral_potts.two_routes", "chiral Potts transfer matrix from R equals its A P B form", 1e-8, rel(&cp, &fac), &draw);
        rec.report("transfer.chiral_potts.tau2_commutator", "commutator of the chiral Potts and tau2 transfer matrices", comm_rel(&cp, &a), &draw);
    }
    Ok(())
}
