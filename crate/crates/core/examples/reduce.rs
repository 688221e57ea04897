//! Reduced coordinates and domain status for a few parameter pairs.

use cubicf::CubicParams;

fn main() -> cubicf::Result<()> {
    for (t, a) in [(100, 1), (6, 2), (-9, 2), (30, 8), (3, 3), (5, -2)] {
        let cp = CubicParams::new(t, a)?;
        let rp = cp.reduce();
        let dom = cp.domain();
        println!(
            "({t:>4}, {a:>2}) -> (t, a) = ({:>4}, {}) g1={:<3} g2={:<2} t1={:<4} t2={:<6} a*={:<2} cf_valid={} bounds_valid={}",
            cp.t, cp.a, rp.g1, rp.g2, rp.t1, rp.t2, rp.a_star, dom.cf_valid, dom.bounds_valid
        );
    }
    Ok(())
}
