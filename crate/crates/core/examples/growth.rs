//! Exact growth bounds on `q_{4k}` for both signs of `t1 t2`, plus the
//! polynomial step of the lower bound.

use cubicf::harness::{lemma7_polynomial_check, verify_growth};
use cubicf::CubicParams;

fn main() -> cubicf::Result<()> {
    for (t, a) in [(100, 1), (-9, 2)] {
        let r = verify_growth(&CubicParams::new(t, a)?.require_bounds()?, 50)?;
        let last = r.rows.last().unwrap();
        println!(
            "({t}, {a}) {}: exact failures {}, aggregate failures {}, undetermined {}; log10 q_204/q_200 = {:.2} -> {:?}",
            r.branch, r.exact_failures, r.aggregate_failures, r.aggregate_undetermined, last.log10_ratio, r.verdict
        );
    }
    let p = lemma7_polynomial_check(1000);
    println!(
        "polynomial check k <= 1000: expansion {}, dominance {} -> {:?}",
        p.expansion_ok, p.dominance_ok, p.verdict
    );
    Ok(())
}
