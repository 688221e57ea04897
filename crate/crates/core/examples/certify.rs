//! Modular certificates and the divisibility they imply for `gcd(p_n, q_n)`.

use cubicf::modcert::{antidiagonal_holds, certify, prop1_check, CertKind};
use cubicf::CubicParams;

fn main() -> cubicf::Result<()> {
    let rp = CubicParams::new(6, 2)?.require_cf()?;
    for (k, d, kind) in [
        (5, 11, CertKind::Convenient),
        (4, 3, CertKind::Nice),
        (7, 2, CertKind::Convenient),
        (13, 3, CertKind::Perfect(1)),
    ] {
        let w = certify(&rp, k, d, kind)?;
        println!(
            "k={k:>2} d={d:>2} {kind:?}: ok={} c={:?} failures={:?}",
            w.ok, w.c_seq, w.failures
        );
    }
    println!("antidiagonal at k=5, d=11: {}", antidiagonal_holds(&rp, 5, 11)?);
    for n in [10, 50, 100] {
        let p = prop1_check(&rp, n)?;
        println!(
            "n={n:>3}: bound divides gcd: {}  per prime (claimed, actual): {:?}",
            p.ok, p.per_prime
        );
    }
    Ok(())
}
