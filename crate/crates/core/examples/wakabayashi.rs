//! Comparison with the classical exponent for `x^3 + p x + q`.

use cubicf::constants::ConstOpts;
use cubicf::harness::wakabayashi_compare;

fn main() -> cubicf::Result<()> {
    let opts = ConstOpts::default();
    for (p, q) in [(-1_000_000, 1), (-200, 1), (-10_000, 3)] {
        let r = wakabayashi_compare(p, q, &opts)?;
        let show = |v: &Option<cubicf::Interval>| v.as_ref().map_or("-".into(), |i| format!("{i:.5}"));
        println!(
            "p={p}, q={q}: |p| > {:.4}|q|^(8/3): {}  lambda_w ~ {}  (t, a) = ({}, {})  lambda = {}  lambda + 1 = {}",
            r.coefficient,
            r.condition_holds,
            show(&r.lambda_w),
            r.cp.t,
            r.cp.a,
            show(&r.lambda),
            show(&r.lambda_plus_one)
        );
    }
    Ok(())
}
