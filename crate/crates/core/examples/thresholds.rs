//! Worst-case thresholds for both divisibility classes of `a*`.

use cubicf::constants::{worst_case_thresholds, ConstOpts};

fn main() -> cubicf::Result<()> {
    let opts = ConstOpts::default();
    for use_c2 in [false, true] {
        for r in worst_case_thresholds(use_c2, &opts)? {
            println!(
                "c{} a*={} tau={:.6} | t>0: B={:.8} K={:.8} | t<0: B={:.8} K={:.8}",
                if use_c2 { 2 } else { 1 },
                r.a_star,
                r.threshold_tau,
                r.positive.b,
                r.positive.t_threshold_coeff,
                r.negative.b,
                r.negative.t_threshold_coeff,
            );
        }
    }
    Ok(())
}
