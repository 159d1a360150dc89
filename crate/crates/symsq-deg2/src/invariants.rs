//! Numerical invariants of the degree-two curve pair induced by a group
//! action: genera, arithmetic genera, self-intersections, node counts, and
//! diagonal intersections, all derived exactly from fixed-point counts.
//!
//! Two regimes are covered. In the irreducible regime the group is
//! dihedral of order a multiple of four, generated by two non-conjugate
//! involutions, and the pair consists of the two involution quotients. In
//! the reducible regime the group is cyclic and the curve of interest is
//! the graph-type image of the curve under an automorphism of order at
//! least three.

use serde::{Deserialize, Serialize};

use crate::action::{completion_test, quotient_genus, CompletionOutcome, CurveAction};
use crate::error::{Error, Result};
use crate::group::{GroupElement, Subgroup};

/// Which construction produced a pair record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairCase {
    /// Dihedral action; the degree-two curve is irreducible.
    Irreducible,
    /// Cyclic action; the degree-two curve splits off a graph component.
    Reducible,
}

/// Exact numerical invariants of a degree-two pair.
///
/// The profile `(t, r, s, k, p)` collects fixed-point data of the
/// distinguished elements; `h` is the covering genus, `g` and `b` the
/// genera of the two quotient curves, and the remaining fields are the
/// invariants of the degree-two curve `B` and its preimage `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub case: PairCase,
    pub t: u32,
    pub r: u32,
    pub s: u32,
    pub k: u32,
    pub p: u32,
    pub h: u32,
    pub g: u32,
    pub b: u32,
    #[serde(rename = "pa_B")]
    pub pa_b: u32,
    #[serde(rename = "pa_D")]
    pub pa_d: u32,
    #[serde(rename = "Bsq")]
    pub b_sq: i64,
    #[serde(rename = "Dsq")]
    pub d_sq: i64,
    #[serde(rename = "nodes_B")]
    pub nodes_b: u32,
    #[serde(rename = "nodes_D")]
    pub nodes_d: u32,
    #[serde(rename = "B_dot_Delta")]
    pub b_dot_delta: i64,
    pub tangencies: u32,
}

fn even_half(op: &'static str, name: &str, value: u32) -> Result<u32> {
    if value % 2 != 0 {
        return Err(Error::invariant(format!(
            "{op}: {name} = {value} must be even"
        )));
    }
    Ok(value / 2)
}

fn quarter(op: &'static str, name: &str, value: u32) -> Result<u32> {
    if value % 4 != 0 {
        return Err(Error::invariant(format!(
            "{op}: {name} = {value} must be divisible by four"
        )));
    }
    Ok(value / 4)
}

/// Invariants of the irreducible pair defined by two non-conjugate
/// involutions `i` and `j` generating the whole dihedral group.
///
/// `C` is the quotient by `j` (genus `g`), `B` the quotient by `i`
/// (genus `b`), and the degree-two curve lives in the symmetric square
/// of `C`. Rejects conjugate involutions, odd dihedral groups, pairs that
/// do not generate, and quotients of genus below two.
pub fn invariants_irreducible(
    action: &CurveAction,
    i: GroupElement,
    j: GroupElement,
) -> Result<PairRecord> {
    const OP: &str = "invariants_irreducible";
    let group = action.group();
    if !group.is_dihedral() {
        return Err(Error::rejected("the irreducible pair needs a dihedral action"));
    }
    let n = group.rotation_order();
    if n % 2 != 0 || n < 4 {
        return Err(Error::rejected(format!(
            "the irreducible pair needs a dihedral group of rotation order 2l with l >= 2, got {n}"
        )));
    }
    let l = n / 2;
    group.check_element(i)?;
    group.check_element(j)?;
    if group.element_order(i) != 2 || group.element_order(j) != 2 {
        return Err(Error::rejected("both distinguished elements must be involutions"));
    }
    if group.are_conjugate(i, j) {
        return Err(Error::rejected(
            "the two involutions are conjugate, so the degree-two curve degenerates",
        ));
    }
    if completion_test(group, i, j)? != CompletionOutcome::DoesNotComplete {
        return Err(Error::rejected(
            "the two involutions do not generate the whole dihedral group",
        ));
    }

    let rho = group.mul(i, j);
    let rho_sq = group.mul(rho, rho);
    let central = group.power(rho, i64::from(l));

    let h = action.covering_genus();
    let t = action.nu(i)?;
    let s = action.nu(j)?;
    let r = action.nu(rho)?;
    let nu_rho_sq = action.nu(rho_sq)?;
    if nu_rho_sq < r {
        return Err(Error::invariant(format!(
            "{OP}: nu(rho^2) = {nu_rho_sq} is below nu(rho) = {r}"
        )));
    }
    let k = nu_rho_sq - r;
    let p = if l >= 3 {
        let count = action
            .vector()
            .branch_entries
            .iter()
            .filter(|&&c| c == central)
            .count() as u32;
        2 * l * count
    } else {
        0
    };

    let g = quotient_genus(action, &Subgroup::cyclic(group, j))?;
    let b = quotient_genus(action, &Subgroup::cyclic(group, i))?;
    if g < 2 {
        return Err(Error::rejected(format!(
            "the base curve has genus {g}, below the required genus two"
        )));
    }

    let nodes_b = quarter(OP, "k", k)?;
    let nodes_d = even_half(OP, "r + k", r + k)?;
    let tangencies = even_half(OP, "r", r)?;
    let pa_b = b + nodes_b;
    let pa_d = h + nodes_d;
    let b_sq = i64::from(s) + i64::from(nodes_d) + 1 - i64::from(h);
    let d_sq = 2 * b_sq;
    let b_dot_delta = i64::from(t) + i64::from(r);

    // Adjunction on the two descriptions of the preimage must agree.
    if b_dot_delta != 2 * (i64::from(pa_d) - 2 * i64::from(pa_b) + 1) {
        return Err(Error::invariant(format!(
            "{OP}: diagonal intersection {b_dot_delta} disagrees with 2(pa_D - 2 pa_B + 1)"
        )));
    }
    if b_sq > 0 && b_sq > 4 {
        return Err(Error::invariant(format!(
            "{OP}: positive self-intersection {b_sq} exceeds the Hodge bound of four"
        )));
    }

    Ok(PairRecord {
        case: PairCase::Irreducible,
        t,
        r,
        s,
        k,
        p,
        h,
        g,
        b,
        pa_b,
        pa_d,
        b_sq,
        d_sq,
        nodes_b,
        nodes_d,
        b_dot_delta,
        tangencies,
    })
}

/// Invariants of the reducible pair defined by an automorphism of order at
/// least three on a curve of genus at least two with cyclic automorphism
/// action. The degree-two curve is the image of the graph of `alpha`.
pub fn invariants_reducible(action: &CurveAction, alpha: GroupElement) -> Result<PairRecord> {
    const OP: &str = "invariants_reducible";
    let group = action.group();
    if group.is_dihedral() {
        return Err(Error::rejected("the reducible pair needs a cyclic action"));
    }
    group.check_element(alpha)?;
    if group.element_order(alpha) <= 2 {
        return Err(Error::rejected(
            "the graph construction needs an automorphism of order at least three",
        ));
    }
    let g = action.covering_genus();
    if g < 2 {
        return Err(Error::rejected(format!(
            "the curve has genus {g}, below the required genus two"
        )));
    }
    let alpha_sq = group.mul(alpha, alpha);
    let nu_alpha = action.nu(alpha)?;
    let nu_alpha_sq = action.nu(alpha_sq)?;
    if nu_alpha_sq < nu_alpha {
        return Err(Error::invariant(format!(
            "{OP}: nu(alpha^2) = {nu_alpha_sq} is below nu(alpha) = {nu_alpha}"
        )));
    }
    let k = nu_alpha_sq - nu_alpha;
    let nodes_b = even_half(OP, "nu(alpha^2) - nu(alpha)", k)?;
    let pa_b = g + nodes_b;
    let pa_d = 2 * g + nu_alpha_sq - 1;
    let b_sq = 2 - 2 * i64::from(g) + i64::from(nu_alpha_sq);
    Ok(PairRecord {
        case: PairCase::Reducible,
        t: 0,
        r: 0,
        s: nu_alpha,
        k,
        p: 0,
        h: g,
        g,
        b: g,
        pa_b,
        pa_d,
        b_sq,
        d_sq: 2 * b_sq,
        nodes_b,
        nodes_d: nu_alpha_sq,
        b_dot_delta: 2 * i64::from(nu_alpha),
        tangencies: 0,
    })
}

/// Intersection number of the graphs of two distinct automorphisms: the
/// fixed-point count of `alpha^{-1} beta`. The identity is allowed as one
/// of the two arguments.
pub fn graph_intersection(
    action: &CurveAction,
    alpha: GroupElement,
    beta: GroupElement,
) -> Result<u32> {
    let group = action.group();
    group.check_element(alpha)?;
    group.check_element(beta)?;
    if alpha == beta {
        return Err(Error::domain(
            "graph_intersection",
            "the two automorphisms must be distinct; a graph has no self-intersection number here",
        ));
    }
    action.nu(group.mul(group.inverse(alpha), beta))
}

/// Which curve of the pair an induced involution acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InducedInvolution {
    /// The involution induced on the base curve `C`.
    OnC,
    /// The involution induced on the degree-two quotient curve `B`.
    OnB,
}

/// Fixed-point count of the involution the central element induces on `C`
/// or on `B`, for a dihedral action with the standard involution pair.
///
/// With `i = r*f` and `j = f`, the central rotation `z` induces an
/// involution on the quotient by `j` (curve `C`) with `(nu(z) + nu(z j))/2`
/// fixed points, and on the quotient by `i` (curve `B`) with
/// `(nu(z) + nu(z i))/2` fixed points. Errors when the group has no
/// central involution.
pub fn induced_involution_nu(action: &CurveAction, which: InducedInvolution) -> Result<u32> {
    const OP: &str = "induced_involution_nu";
    let group = action.group();
    if !group.is_dihedral() {
        return Err(Error::domain(
            OP,
            "induced involutions on the pair are defined for dihedral actions only",
        ));
    }
    let n = group.rotation_order();
    if n % 2 != 0 {
        return Err(Error::domain(
            OP,
            "an odd dihedral group has no central involution",
        ));
    }
    let central = GroupElement::rotation(n / 2);
    let companion = match which {
        InducedInvolution::OnC => group.reflection_generator()?,
        InducedInvolution::OnB => group.mul(
            GroupElement::rotation(1),
            group.reflection_generator()?,
        ),
    };
    let nu_central = action.nu(central)?;
    let nu_composite = action.nu(group.mul(central, companion))?;
    even_half(OP, "nu(z) + nu(z * companion)", nu_central + nu_composite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genvec::GeneratingVector;
    use crate::group::GroupDescriptor;

    fn d(n: u32) -> GroupDescriptor {
        GroupDescriptor::dihedral(n).unwrap()
    }

    fn z(m: u32) -> GroupDescriptor {
        GroupDescriptor::cyclic(m).unwrap()
    }

    fn rot(k: u32) -> GroupElement {
        GroupElement::rotation(k)
    }

    fn refl(k: u32) -> GroupElement {
        GroupElement::reflection(k)
    }

    fn action(group: GroupDescriptor, branch: Vec<GroupElement>) -> CurveAction {
        CurveAction::new(GeneratingVector::from_branch(group, branch)).unwrap()
    }

    fn standard_pair(a: &CurveAction) -> PairRecord {
        invariants_irreducible(a, refl(1), refl(0)).unwrap()
    }

    #[test]
    fn genus_four_pair_over_d10() {
        let a = action(d(10), vec![rot(2), rot(5), refl(3), refl(0)]);
        let rec = standard_pair(&a);
        assert_eq!((rec.t, rec.r, rec.s, rec.k, rec.p), (2, 0, 2, 4, 10));
        assert_eq!((rec.h, rec.g, rec.b), (4, 2, 2));
        assert_eq!((rec.pa_b, rec.pa_d), (3, 6));
        assert_eq!((rec.b_sq, rec.d_sq), (1, 2));
        assert_eq!((rec.nodes_b, rec.nodes_d), (1, 2));
        assert_eq!(rec.b_dot_delta, 2);
        assert_eq!(rec.tangencies, 0);
        assert_eq!(rec.case, PairCase::Irreducible);
    }

    #[test]
    fn genus_six_pair_over_d6() {
        let a = action(d(6), vec![refl(0), refl(1), rot(3), rot(2), rot(2)]);
        let rec = standard_pair(&a);
        assert_eq!((rec.t, rec.r, rec.s, rec.k, rec.p), (2, 0, 2, 8, 6));
        assert_eq!((rec.h, rec.g, rec.b), (6, 3, 3));
        assert_eq!((rec.pa_b, rec.nodes_b, rec.b_sq), (5, 2, 1));
        assert_eq!((rec.pa_d, rec.nodes_d), (10, 4));
    }

    #[test]
    fn klein_type_pair_over_d4() {
        let a = action(d(4), vec![rot(1), rot(3), refl(0), refl(2), rot(2)]);
        let rec = standard_pair(&a);
        assert_eq!((rec.t, rec.r, rec.s, rec.k, rec.p), (0, 4, 4, 4, 0));
        assert_eq!((rec.h, rec.g, rec.b), (5, 2, 3));
        assert_eq!((rec.pa_b, rec.nodes_b, rec.b_sq), (4, 1, 4));
        assert_eq!(rec.pa_d, 9);
    }

    #[test]
    fn conjugate_involutions_are_rejected() {
        let a = action(d(10), vec![rot(2), rot(5), refl(3), refl(0)]);
        let result = invariants_irreducible(&a, refl(1), refl(3));
        assert!(matches!(result, Err(Error::Rejected { .. })));
    }

    #[test]
    fn non_generating_involutions_are_rejected() {
        // Over D6 the reflections f and r^3*f differ by a central rotation
        // and only span a Klein four-group.
        let a = action(d(6), vec![refl(0), refl(1), rot(3), rot(2), rot(2)]);
        let result = invariants_irreducible(&a, refl(3), refl(0));
        assert!(matches!(result, Err(Error::Rejected { .. })));
    }

    #[test]
    fn reducible_invariants_of_the_order_ten_graph() {
        let a = action(z(10), vec![rot(1), rot(4), rot(5)]);
        let rec = invariants_reducible(&a, rot(1)).unwrap();
        assert_eq!(rec.case, PairCase::Reducible);
        assert_eq!((rec.h, rec.g, rec.b), (2, 2, 2));
        assert_eq!((rec.s, rec.k), (1, 2));
        assert_eq!((rec.pa_b, rec.nodes_b), (3, 1));
        assert_eq!(rec.b_dot_delta, 2);
        assert_eq!((rec.b_sq, rec.d_sq), (1, 2));
        assert_eq!((rec.pa_d, rec.nodes_d), (6, 3));
        assert_eq!(rec.tangencies, 0);
    }

    #[test]
    fn low_order_automorphisms_are_rejected() {
        let a = action(z(10), vec![rot(1), rot(4), rot(5)]);
        assert!(matches!(
            invariants_reducible(&a, rot(5)),
            Err(Error::Rejected { .. })
        ));
    }

    #[test]
    fn graph_intersections_count_fixed_points_of_the_ratio() {
        let a = action(z(10), vec![rot(1), rot(4), rot(5)]);
        assert_eq!(graph_intersection(&a, GroupElement::IDENTITY, rot(1)).unwrap(), 1);
        assert_eq!(graph_intersection(&a, rot(1), rot(3)).unwrap(), 3);
        assert!(graph_intersection(&a, rot(1), rot(1)).is_err());
    }

    #[test]
    fn induced_involutions_on_the_genus_four_pair() {
        let a = action(d(10), vec![rot(2), rot(5), refl(3), refl(0)]);
        assert_eq!(
            induced_involution_nu(&a, InducedInvolution::OnB).unwrap(),
            6
        );
        assert_eq!(
            induced_involution_nu(&a, InducedInvolution::OnC).unwrap(),
            6
        );
    }

    #[test]
    fn induced_involutions_on_the_genus_six_pair() {
        let a = action(d(6), vec![refl(0), refl(1), rot(3), rot(2), rot(2)]);
        assert_eq!(
            induced_involution_nu(&a, InducedInvolution::OnC).unwrap(),
            4
        );
    }

    #[test]
    fn induced_involutions_need_a_central_involution() {
        let a = action(z(10), vec![rot(1), rot(4), rot(5)]);
        assert!(induced_involution_nu(&a, InducedInvolution::OnC).is_err());
    }
}
