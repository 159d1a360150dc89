//! Evaluates the gonality-style degree bounds, the covering-genus
//! inequality, and the arithmetic-genus window test on the classified
//! families.
//!
//! Run with: cargo run --example brill_noether_bounds

use symsq_deg2::{
    accola_max_completion_genus, castelnuovo_severi_ok, cxc_bn_check, degree_bound,
    fixture_tables, smooth_degree_bound, PairCase,
};

fn main() -> Result<(), symsq_deg2::Error> {
    println!("degree bounds for a smooth positive curve (Bsq = 1, no nodes):");
    for g in [4u32, 6, 9, 20, 100, 1000] {
        println!("  g = {:>4}: bound = {}", g, smooth_degree_bound(g)?);
    }
    println!();
    println!("the bound grows with the self-intersection and node count:");
    for (b_sq, delta) in [(1i64, 0u32), (2, 0), (4, 1), (4, 2)] {
        println!(
            "  g = 20, Bsq = {b_sq}, delta = {delta}: bound = {}",
            degree_bound(20, b_sq, delta)?
        );
    }

    println!();
    println!("covering-genus inequality and window test on the family tables:");
    for record in fixture_tables()? {
        if record.pair.case == PairCase::Reducible {
            continue;
        }
        let pair = &record.pair;
        let cs = castelnuovo_severi_ok(pair.h, pair.b, pair.g, 2)?;
        let accola = accola_max_completion_genus(pair.h, pair.b, pair.g, 2)?;
        let window = cxc_bn_check(pair)?;
        println!(
            "  {:<10} g(D) = {:>2}, g(B) = {}, g(C) = {}: inequality {}, \
             completion genus cap {}, window test {:?}",
            record.label,
            pair.h,
            pair.b,
            pair.g,
            if cs { "holds" } else { "FAILS" },
            accola,
            window
        );
    }
    Ok(())
}
