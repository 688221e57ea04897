//! Growth of `gcd(p_n, q_n)` against `c1` and `c2`, and the prime set `K`.

use cubicf::constants::ConstOpts;
use cubicf::harness::{gcd_growth_profile, k_set_product};
use cubicf::CubicParams;

fn main() -> cubicf::Result<()> {
    let opts = ConstOpts::default();
    let rp = CubicParams::new(100, 1)?.require_cf()?;
    let p = gcd_growth_profile(&rp, 200, &opts)?;
    println!("c1 = {:.6}, c2 = {:.6}", p.c1, p.c2);
    for row in p.rows.iter().filter(|r| r.n % 25 == 0) {
        println!(
            "n={:>3}  gcd^(1/n)/n = {:.5}  ln gcd/(n ln n) = {:.5}  lower bound: {:?}",
            row.n, row.ratio, row.normalized, row.lower_bound
        );
    }
    println!("ratio / c2 at n = 200: {:.4} -> {:?}", p.final_ratio_over_c2, p.verdict);
    for n in [100, 1000, 10_000] {
        let k = k_set_product(n, &opts)?;
        println!(
            "K-set n={n:>5}: first piece {:?}, routes agree {}, ln(prod)/n = {:.5} (tau = {:.5})",
            k.pieces[0], k.routes_agree, k.ln_product_over_n, k.tau
        );
    }
    Ok(())
}
