use cyclq::tensorcore::{frob, identity, mat_pow};
use cyclq::C64;
use serde_json::json;

use super::{Ctx, Recorder};
use crate::HarnessError;

pub fn run(ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    let wp = &ctx.wp;
    let n = wp.n();
    let q = wp.q();
    let none = json!(null);
    rec.max(
        "weyl.commutation",
        "Weyl pair commutation ZX = qXZ",
        1e-11,
        frob(&(wp.z() * wp.x() - wp.x() * wp.z() * q)),
        &none,
    );
    let id = identity(n);
    rec.max("weyl.x_order", "shift order X^N = I", 1e-11, frob(&(mat_pow(wp.x(), n as i64)? - &id)), &none);
    rec.max("weyl.z_order", "clock order Z^N = I", 1e-11, frob(&(mat_pow(wp.z(), n as i64)? - &id)), &none);
    let mut worst: f64 = 0.0;
    for a in 0..n as i64 {
        for b in 0..n as i64 {
            let m = wp.x_pow(a) * wp.z_pow(b);
            let tr: C64 = (0..n).map(|i| m[(i, i)]).sum();
            let want = if a == 0 && b == 0 { n as f64 } else { 0.0 };
            worst = worst.max((tr - want).norm());
        }
    }
    rec.max("weyl.trace_orthogonality", "Tr(X^a Z^b) = N when a = b = 0 and zero otherwise", 1e-11, worst, &none);
    let chi = wp.chi();
    rec.max(
        "weyl.chi_order",
        "chi = X^-1 (x) X has order N",
        1e-11,
        frob(&(mat_pow(&chi, n as i64)? - identity(n * n))),
        &none,
    );
    let alpha = ctx.cfg.alpha;
    let mut worst: f64 = 0.0;
    for k in -(n as i64)..=n as i64 {
        let direct: C64 = (0..n).map(|p| wp.root().pow_real((2.0 * alpha + k as f64) * p as f64)).sum();
        let closed = wp.root().twisted_sum(alpha, k);
        worst = worst.max((direct - closed).norm() / direct.norm().max(1.0));
    }
    rec.max("weyl.twisted_sum", "twisted geometric sum over one period", 1e-10, worst, &json!({ "alpha": alpha }));
    Ok(())
}
