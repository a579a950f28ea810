use cyclq::weights::{all_families, cyclic_closure, Family};
use cyclq::C64;
use serde_json::json;

use super::{Ctx, Recorder};
use crate::sampling::{points_json, Sampler};
use crate::HarnessError;

fn ratio_err(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

pub fn run(ctx: &Ctx, s: &mut Sampler, rec: &mut Recorder) -> Result<(), HarnessError> {
    let root = *ctx.wp.root();
    let n = root.n();
    let q = root.q();
    for i in 0..ctx.cfg.draws {
        let p = s.points(&root, 2)?;
        let draw = json!({ "index": i, "points": points_json(&p) });
        let (r, t) = (&p[0], &p[1]);
        let fams = all_families(&root, r, t)?;
        let (wh, wb, w, wc) = (&fams[0], &fams[1], &fams[2], &fams[3]);
        let (mut e_hat, mut e_bar, mut e_w, mut e_wc) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for k in 1..n {
            let q2 = q.powi(2 * k as i32);
            let mm = r.mu * t.mu;
            let hat = (t.mu * r.y - r.mu * t.y * q.powi(2 * k as i32 - 2)) / (t.mu * t.x - r.mu * r.x * q2);
            e_hat = e_hat.max(ratio_err(wh.values[k] / wh.values[k - 1], hat));
            let bar = mm * (r.x * q * q - t.x * q2) / (t.y - r.y * q2);
            e_bar = e_bar.max(ratio_err(wb.values[k] / wb.values[k - 1], bar));
            let want_w = (r.mu / t.mu) * (t.y - r.x * q2) / (r.y - t.x * q2);
            e_w = e_w.max(ratio_err(w.values[k] / w.values[k - 1], want_w));
            let want_wc = (t.y - r.x * q2 * mm) / (r.y - t.x * q2 * mm);
            e_wc = e_wc.max(ratio_err(wc.values[k] / wc.values[k - 1], want_wc));
        }
        rec.max("weights.recursion.w_hat", "recursion for W-hat", 1e-9, e_hat, &draw);
        rec.max("weights.recursion.w_bar", "recursion for W-bar", 1e-9, e_bar, &draw);
        rec.max("weights.fourier.w", "Fourier transform of W-hat obeys the W recursion", 1e-9, e_w, &draw);
        rec.max("weights.fourier.w_check", "Fourier transform of W-bar obeys the W-check recursion", 1e-9, e_wc, &draw);
        let closure = Family::ALL.iter().map(|f| cyclic_closure(&root, *f, r, t)).fold(0.0, f64::max);
        rec.max("weights.cyclic_closure", "product of the N step ratios is one for all four families", 1e-9, closure, &draw);
        let one = C64::new(1.0, 0.0);
        let sum: C64 = wb.values.iter().sum();
        let norm = (wh.values[0] - one).norm().max((sum - one).norm()).max((wc.values[0] - one).norm());
        rec.max("weights.normalization", "W-hat(0) = 1 and the W-bar weights sum to one", 1e-9, norm, &draw);
    }
    Ok(())
}
