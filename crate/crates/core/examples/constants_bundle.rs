//! Certified constants for one parameter pair, printed as JSON.
//!
//! `cargo run --example constants_bundle -- 100 1`

use std::time::Instant;

use cubicf::constants::{bundle, ConstOpts};
use cubicf::CubicParams;

fn main() -> cubicf::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (t, a) = match args.as_slice() {
        [t, a, ..] => (*t, *a),
        _ => (100, 1),
    };
    let rp = CubicParams::new(t, a)?.require_bounds()?;
    let start = Instant::now();
    let b = bundle(&rp, &ConstOpts::default())?;
    println!("{}", serde_json::to_string_pretty(&b)?);
    eprintln!("elapsed {:?}", start.elapsed());
    Ok(())
}
