//! End-to-end lower bound on `||q x||` for `(t, a) = (100, 1)`.
//!
//! `cargo run --release --example theorem1 -- 100 1`

use cubicf::harness::{verify_theorem1, TheoremOpts};
use cubicf::CubicParams;

fn main() -> cubicf::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (t, a) = match args.as_slice() {
        [t, a, ..] => (*t, *a),
        _ => (100, 1),
    };
    let r = verify_theorem1(&CubicParams::new(t, a)?, &TheoremOpts::default())?;
    let b = &r.bundle;
    println!(
        "lambda in {:.6}, lambda + 1 in {:.6}",
        b.lambda.as_ref().unwrap(),
        b.mu_eff().unwrap()
    );
    println!(
        "q0 in {:.2}, ln bound_tau in {:.4}",
        b.q0,
        b.ln_bound_tau.as_ref().unwrap()
    );
    for row in &r.convergent_rows {
        let margin = row.margin.map_or("-".to_string(), |m| format!("{m:.2}"));
        println!(
            "k={:>2} q*={:<62} ln(LHS/RHS)={margin:>8} in hypothesis={}",
            row.k, row.q_star, row.in_hypothesis
        );
    }
    println!(
        "checked {} (passed {}, failed {}, undetermined {}), outside q >= q0: {} -> {:?}",
        r.checked, r.passed, r.failed, r.undetermined, r.outside_hypothesis, r.verdict
    );
    Ok(())
}
