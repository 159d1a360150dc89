//! Enumerates generating-vector classes for a dihedral action and derives
//! the induced pair invariants from one representative.
//!
//! Run with: cargo run --example vector_search

use symsq_deg2::{
    invariants_irreducible, search_vectors, CurveAction, GroupDescriptor, GroupElement, Signature,
};

fn main() -> Result<(), symsq_deg2::Error> {
    let group = GroupDescriptor::dihedral(10)?;
    let sig = Signature::new(0, vec![10, 2, 2, 2])?;

    let search = search_vectors(group, &sig, 10_000)?;
    println!(
        "{} generating-vector classes for {} with signature {}{}",
        search.vectors.len(),
        group,
        sig,
        if search.truncated { " (truncated)" } else { "" }
    );
    for vector in &search.vectors {
        println!("  {vector}  covering genus {}", vector.genus()?);
    }

    let representative = search
        .vectors
        .first()
        .expect("the signature admits at least one class")
        .clone();
    let action = CurveAction::new(representative)?;
    let pair = invariants_irreducible(
        &action,
        GroupElement::reflection(1),
        GroupElement::reflection(0),
    )?;
    println!();
    println!("invariants of the first class:");
    println!("  profile (t, r, s, k, p) = ({}, {}, {}, {}, {})", pair.t, pair.r, pair.s, pair.k, pair.p);
    println!("  g(D) = {}, g(C) = {}, g(B) = {}", pair.h, pair.g, pair.b);
    println!("  pa(B~) = {}, pa(D~) = {}", pair.pa_b, pair.pa_d);
    println!("  B~^2 = {}, D~^2 = {}", pair.b_sq, pair.d_sq);
    println!("  nodes(B~) = {}, nodes(D~) = {}", pair.nodes_b, pair.nodes_d);
    Ok(())
}
