//! Group actions on covering curves: fixed-point counts by two independent
//! routes, quotient genera, and the completion test for pairs of elements.
//!
//! A [`CurveAction`] seals a validated generating vector together with the
//! covering genus and a table of fixed-point counts for every non-identity
//! element. The counts come from the normalizer-weighted branch formula
//! ([`macbeath_nu`]); [`nu_oracle`] recomputes them by directly counting
//! stabilized cosets, sharing no code with the formula route, so the two
//! can be checked against each other.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genvec::GeneratingVector;
use crate::group::{GroupDescriptor, GroupElement, Subgroup};

/// A validated group action on a covering curve, with the fixed-point
/// table sealed at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveAction {
    group: GroupDescriptor,
    vector: GeneratingVector,
    covering_genus: u32,
    nu_table: Vec<u32>,
}

impl CurveAction {
    /// Validates the vector, computes the covering genus, and seals the
    /// fixed-point counts of all non-identity elements.
    pub fn new(vector: GeneratingVector) -> Result<Self> {
        vector.validate()?;
        let group = vector.group;
        let covering_genus = vector.genus()?;
        let mut nu_table = vec![0u32; group.order() as usize];
        for &gamma in group.elements().iter() {
            if gamma.is_identity() {
                continue;
            }
            nu_table[group.element_index(gamma)] = macbeath_count(group, &vector, gamma)?;
        }
        Ok(CurveAction {
            group,
            vector,
            covering_genus,
            nu_table,
        })
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn vector(&self) -> &GeneratingVector {
        &self.vector
    }

    /// Genus of the covering curve the action lives on.
    pub fn covering_genus(&self) -> u32 {
        self.covering_genus
    }

    /// Fixed-point count of a non-identity element, from the sealed table.
    pub fn nu(&self, gamma: GroupElement) -> Result<u32> {
        self.group.check_element(gamma)?;
        if gamma.is_identity() {
            return Err(Error::domain(
                "CurveAction::nu",
                "the identity fixes every point; nu is defined for non-identity elements only",
            ));
        }
        Ok(self.nu_table[self.group.element_index(gamma)])
    }

    /// Sum of fixed-point counts over the non-identity part of a subgroup.
    pub(crate) fn nu_sum_over(&self, subgroup: &Subgroup) -> Result<u32> {
        let mut sum = 0u32;
        for &delta in subgroup.elements() {
            if !delta.is_identity() {
                sum += self.nu(delta)?;
            }
        }
        Ok(sum)
    }
}

fn check_non_identity(op: &'static str, gamma: GroupElement) -> Result<()> {
    if gamma.is_identity() {
        return Err(Error::domain(
            op,
            "argument must be a non-identity element",
        ));
    }
    Ok(())
}

fn macbeath_count(
    group: GroupDescriptor,
    vector: &GeneratingVector,
    gamma: GroupElement,
) -> Result<u32> {
    let class = group.conjugacy_class(gamma);
    let normalizer = i64::from(group.normalizer_order(gamma)?);
    // Exact sum of 1/m_i over branch entries whose cyclic subgroup meets
    // the class of gamma, scaled by the normalizer order.
    let mut num: i64 = 0;
    let mut den: i64 = 1;
    for &c in &vector.branch_entries {
        let cyclic = group.generated_subgroup(&[c]);
        let meets = class.iter().any(|&x| cyclic.contains(x));
        if meets {
            let m = i64::from(group.element_order(c));
            num = num * m + den;
            den *= m;
            let d = gcd64(num.abs().max(1), den);
            num /= d;
            den /= d;
        }
    }
    let total = normalizer * num;
    if total % den != 0 {
        return Err(Error::invariant(format!(
            "fixed-point count of {gamma} is not an integer: {total}/{den}"
        )));
    }
    Ok((total / den) as u32)
}

fn gcd64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd64(b, a % b)
    }
}

/// Fixed-point count of `gamma` by the normalizer-weighted branch formula:
/// the order of the normalizer of the cyclic subgroup generated by `gamma`,
/// times the sum of `1/m_i` over branch entries some conjugate of `gamma`
/// powers into.
pub fn macbeath_nu(action: &CurveAction, gamma: GroupElement) -> Result<u32> {
    action.group().check_element(gamma)?;
    check_non_identity("macbeath_nu", gamma)?;
    macbeath_count(action.group(), action.vector(), gamma)
}

/// Independent fixed-point count of `gamma`: for each branch entry `c`,
/// the number of cosets of the cyclic subgroup generated by `c` that the
/// conjugation-translated copy of `gamma` stabilizes non-trivially, summed
/// over entries. Shares no code with the formula route.
pub fn nu_oracle(action: &CurveAction, gamma: GroupElement) -> Result<u32> {
    let group = action.group();
    group.check_element(gamma)?;
    check_non_identity("nu_oracle", gamma)?;
    let mut total = 0u32;
    for &c in &action.vector().branch_entries {
        let stabilizer = group.generated_subgroup(&[c]);
        let mut fixed_cosets: BTreeSet<GroupElement> = BTreeSet::new();
        for &g in group.elements().iter() {
            let moved = group.mul(group.mul(group.inverse(g), gamma), g);
            if !moved.is_identity() && stabilizer.contains(moved) {
                // Canonical coset label: the smallest element of g<c>.
                let label = stabilizer
                    .elements()
                    .iter()
                    .map(|&s| group.mul(g, s))
                    .min()
                    .expect("cyclic subgroups are non-empty");
                fixed_cosets.insert(label);
            }
        }
        total += fixed_cosets.len() as u32;
    }
    Ok(total)
}

/// Genus of the quotient of the covering curve by a subgroup, from the
/// sealed fixed-point table.
pub fn quotient_genus(action: &CurveAction, subgroup: &Subgroup) -> Result<u32> {
    let group = action.group();
    for &e in subgroup.elements() {
        group.check_element(e)?;
    }
    if !subgroup
        .elements()
        .iter()
        .any(|e| e.is_identity())
    {
        return Err(Error::domain(
            "quotient_genus",
            "subgroup does not contain the identity",
        ));
    }
    let h = i64::from(action.covering_genus());
    let sum = i64::from(action.nu_sum_over(subgroup)?);
    let order = i64::from(subgroup.order());
    // 2h - 2 = |H| (2g' - 2) + sum of fixed-point counts over H \ {1}.
    let rhs = 2 * h - 2 - sum;
    if rhs % order != 0 {
        return Err(Error::invariant(format!(
            "quotient genus equation does not close: 2h-2-sum = {rhs} is not divisible by |H| = {order}"
        )));
    }
    let twice = rhs / order + 2;
    if twice % 2 != 0 || twice < 0 {
        return Err(Error::invariant(format!(
            "quotient genus is not a non-negative integer: 2g = {twice}"
        )));
    }
    Ok((twice / 2) as u32)
}

/// Outcome of the completion test for a pair of elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompletionOutcome {
    /// The pair generates a subgroup of order exactly ord(a) * ord(b).
    Completes,
    /// The pair generates a strictly larger subgroup.
    DoesNotComplete,
    /// The pair generates a strictly smaller subgroup.
    Undetermined,
}

/// Compares the subgroup generated by `a` and `b` against the product of
/// their orders. Errors when either element is the identity.
pub fn completion_test(
    group: GroupDescriptor,
    a: GroupElement,
    b: GroupElement,
) -> Result<CompletionOutcome> {
    group.check_element(a)?;
    group.check_element(b)?;
    check_non_identity("completion_test", a)?;
    check_non_identity("completion_test", b)?;
    let generated = group.generated_subgroup(&[a, b]).order();
    let target = group.element_order(a) * group.element_order(b);
    Ok(match generated.cmp(&target) {
        std::cmp::Ordering::Equal => CompletionOutcome::Completes,
        std::cmp::Ordering::Greater => CompletionOutcome::DoesNotComplete,
        std::cmp::Ordering::Less => CompletionOutcome::Undetermined,
    })
}
