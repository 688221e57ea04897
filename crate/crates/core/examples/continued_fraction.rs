//! Partial quotients and one block product checked against its closed form.
//!
//! `cargo run --example continued_fraction -- 6 2`

use cubicf::cf::{block_coeffs, block_product, partial_quotient};
use cubicf::CubicParams;

fn main() -> cubicf::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (t, a) = match args.as_slice() {
        [t, a, ..] => (*t, *a),
        _ => (6, 2),
    };
    let rp = CubicParams::new(t, a)?.require_cf()?;
    for i in 0..=12 {
        let q = partial_quotient(&rp, i);
        println!("i={i:>2}  a={:>8}  beta={:>8}", q.a, q.beta);
    }
    for k in [1, 10, 100] {
        let m = block_product(&rp, k);
        let b = block_coeffs(&rp, k);
        println!(
            "k={k:>3}  top row matches closed form: {}",
            m.m[0][0] == b.a_k11 && m.m[0][1] == b.a_k12
        );
    }
    Ok(())
}
