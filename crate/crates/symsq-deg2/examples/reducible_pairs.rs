//! Searches for reducible degree-two pairs built from cyclic actions, then
//! runs the low-order diagnostic scan over the automorphism orders the
//! classified regime leaves open.
//!
//! Run with: cargo run --example reducible_pairs

use symsq_deg2::{reducible_low_order_diagnostics, reducible_search};

fn main() -> Result<(), symsq_deg2::Error> {
    let search = reducible_search(20, 10)?;
    println!(
        "classified regime (automorphism order at least eight): {} family",
        search.families.len()
    );
    for record in &search.families {
        let alpha = record.alpha.expect("reducible records carry an automorphism");
        println!(
            "  {} over {}: signature {}, alpha = {}, nu(alpha) = {}, nu(alpha^2) = {}, \
             g = {}, Bsq = {}, pa(B~) = {}",
            record.label,
            record.group,
            record.vector.signature_of(),
            alpha,
            record.pair.s,
            record.pair.s + record.pair.k,
            record.pair.g,
            record.pair.b_sq,
            record.pair.pa_b
        );
    }

    println!();
    let scan = reducible_low_order_diagnostics(7, 10)?;
    println!(
        "diagnostic scan below that regime: {} further candidates{}",
        scan.candidates.len(),
        if scan.truncated { " (truncated)" } else { "" }
    );
    for candidate in &scan.candidates {
        println!(
            "  {} with signature {}: alpha = {}, nu(alpha) = {}, nu(alpha^2) = {}, \
             g = {}, Bsq = {}",
            candidate.group,
            candidate.signature,
            candidate.alpha,
            candidate.nu_alpha,
            candidate.nu_alpha_sq,
            candidate.g,
            candidate.b_sq
        );
    }
    Ok(())
}
