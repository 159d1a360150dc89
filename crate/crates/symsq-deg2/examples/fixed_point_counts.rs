//! Counts fixed points of every non-identity element of a dihedral action
//! by the character-sum formula and by the independent coset-counting
//! route, and shows the two agree.
//!
//! Run with: cargo run --example fixed_point_counts

use symsq_deg2::{nu_oracle, CurveAction, GeneratingVector, GroupDescriptor, GroupElement};

fn main() -> Result<(), symsq_deg2::Error> {
    let group = GroupDescriptor::dihedral(10)?;
    let vector = GeneratingVector::from_branch(
        group,
        vec![
            GroupElement::rotation(1),
            GroupElement::rotation(5),
            GroupElement::reflection(0),
            GroupElement::reflection(6),
        ],
    );
    vector.validate()?;
    println!(
        "action of {} on a genus-{} curve, vector {}",
        group,
        vector.genus()?,
        vector
    );
    println!();

    let action = CurveAction::new(vector)?;
    println!("{:>8}  {:>7}  {:>7}", "element", "formula", "oracle");
    for gamma in group.elements() {
        if gamma.is_identity() {
            continue;
        }
        let formula = action.nu(gamma)?;
        let oracle = nu_oracle(&action, gamma)?;
        assert_eq!(
            formula, oracle,
            "the two fixed-point counts must agree on {gamma}"
        );
        println!("{:>8}  {formula:>7}  {oracle:>7}", gamma.to_string());
    }
    println!();
    println!(
        "both routes agree on all {} non-identity elements",
        group.order() - 1
    );
    Ok(())
}
