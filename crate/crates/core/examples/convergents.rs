//! Convergents `p_n / q_n`, their gcds and the reduced block convergents.

use cubicf::convergents::{reduced, Convergents};
use cubicf::CubicParams;

fn main() -> cubicf::Result<()> {
    let rp = CubicParams::new(100, 1)?.require_cf()?;
    for s in Convergents::new(&rp).take(17) {
        let line = format!("n={:>2}  gcd={:<12} q digits={}", s.n, s.gcd(), s.q.to_string().len());
        if s.n % 4 == 0 {
            let r = reduced(&s)?;
            println!("{line}  q*_{}={}", r.k, r.q_star);
        } else {
            println!("{line}");
        }
    }
    Ok(())
}
