use cyclq::curve::{c0, ses_constants, z_point, Sign};
use serde_json::json;

use super::{Ctx, Recorder};
use crate::sampling::{points_json, Sampler};
use crate::HarnessError;

pub fn run(ctx: &Ctx, s: &mut Sampler, rec: &mut Recorder) -> Result<(), HarnessError> {
    let root = *ctx.wp.root();
    let n = root.n();
    let q = root.q();
    let cc = &ctx.cc;
    for i in 0..ctx.cfg.draws {
        let p = s.points(&root, 2)?;
        let draw = json!({ "index": i, "points": points_json(&p) });
        let (r, t) = (&p[0], &p[1]);
        rec.max("curve.membership", "sampled points lie on the curve", 1e-10, r.validate(&root).max(), &draw);
        let mut sh = *r;
        let mut worst = r.shift(&root, 1).validate(&root).max();
        for _ in 0..n {
            sh = sh.shift(&root, 1);
        }
        worst = worst.max((sh.x - r.x).norm() / r.x.norm()).max((sh.mu - r.mu).norm() / r.mu.norm());
        let back = r.shift(&root, 1).shift(&root, -1);
        worst = worst.max((back.y - r.y).norm() / r.y.norm());
        rec.max("curve.shift", "q-shifts stay on the curve and have order N", 1e-12, worst, &draw);
        let mut worst: f64 = 0.0;
        for sign in [Sign::Plus, Sign::Minus] {
            let v = c0(&root, r, t, sign);
            let want = q * q * r.x * t.x / (r.y * t.y);
            worst = worst.max((v * v - want).norm() / want.norm());
            worst = worst.max((v - c0(&root, t, r, sign)).norm() / v.norm());
        }
        rec.max("curve.c0", "c0 squares to q^2 x_r x_s / (y_r y_s) and is symmetric", 1e-12, worst, &draw);
        let mut worst: f64 = 0.0;
        for sign in [Sign::Plus, Sign::Minus] {
            let zs = z_point(t, cc, sign);
            let want = cc.kappa0 * cc.kappa1 * t.x * t.y;
            worst = worst.max((zs * zs - want).norm() / want.norm());
            let k = ses_constants(&root, t, cc, zs);
            worst = worst.max((k.c_bar / k.d - q * q).norm());
            let direct = -cc.kappa0 * t.x * t.mu * q * q / zs;
            worst = worst.max((k.c - direct).norm() / direct.norm());
        }
        rec.max("curve.ses_constants", "z_s^2 = k0 k1 x_s y_s and the fusion constants", 1e-12, worst, &draw);
    }
    Ok(())
}
