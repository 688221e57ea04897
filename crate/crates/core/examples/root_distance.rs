//! Certified dominant root, convergent errors and `||q x||`.

use cubicf::certreal::{approx_error_state, dist_nearest_int, largest_root};
use cubicf::convergents::Convergents;
use cubicf::CubicParams;
use num_bigint::BigInt;

fn main() -> cubicf::Result<()> {
    for (t, a) in [(100, 1), (-9, 2), (30, 8)] {
        let cp = CubicParams::new(t, a)?;
        let rp = cp.require_bounds()?;
        let mut root = largest_root(&cp, 128)?;
        println!("({t}, {a}): x in {:.20}", root.enclosure);
        for s in Convergents::new(&rp).step_by(4).skip(1).take(3) {
            let e = approx_error_state(&mut root, rp.g2, &s)?;
            println!(
                "  n={:>2}  |x/g2 - p/q| ~ {:.6e}  (root bits {})",
                s.n,
                e.to_f64(),
                root.precision_bits
            );
        }
        for q in [7u64, 1000, 123_456_789] {
            let d = dist_nearest_int(&BigInt::from(q), &mut root)?;
            println!("  ||{q} x|| = {:.10}", d);
        }
    }
    Ok(())
}
