//! Enumeration of the positive self-intersection families.
//!
//! A family record couples the covering data (a generating vector), the
//! derived numeric invariants of the pair, curve flags certified by
//! exhibited involutions, and the dimensions of the corresponding loci.
//! Searches are exhaustive within their stated bounds and keep one
//! representative per fixed-point profile.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::action::{quotient_genus, CurveAction};
use crate::brill_noether::cxc_bn_check;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::genvec::{search_vectors, signature_candidates_from_base, GeneratingVector, Signature};
use crate::group::{GroupDescriptor, GroupElement, Subgroup};
use crate::invariants::{
    induced_involution_nu, invariants_irreducible, invariants_reducible, InducedInvolution,
    PairCase, PairRecord,
};

/// Cap on vector-search work used by the reducible scans.
const REDUCIBLE_VECTOR_CAP: usize = 10_000;

/// Label given to a family the searches certify but the reference tables do
/// not list. Such a record is sorted after all labelled families and makes
/// the verification gate fail, so table drift is loud rather than silent.
pub const UNEXPECTED_LABEL: &str = "UNEXPECTED";

/// A fixed-point profile `(t, r, s, k)` for the two involutions, the full
/// rotation and the half rotation of a dihedral action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CandidateTuple {
    pub t: u32,
    pub r: u32,
    pub s: u32,
    pub k: u32,
}

impl fmt::Display for CandidateTuple {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "(t={}, r={}, s={}, k={})",
            self.t, self.r, self.s, self.k
        )
    }
}

/// Profiles `(t, r, s, k)` compatible with a dihedral action of rotation
/// order at least eight on a covering curve with positive self-intersection
/// downstairs.
///
/// The constraints are: `t`, `r`, `s` even, `k` divisible by four, `t + s`
/// divisible by four, `t <= 4`, `t + r <= 6`, and
/// `s + r + k < 2 * (8 - (t + r))`. Exactly twenty-eight tuples satisfy
/// them; they are returned in ascending lexicographic order.
pub fn enumerate_candidates_l_ge4() -> Vec<CandidateTuple> {
    let mut out = Vec::new();
    for t in (0..=4u32).step_by(2) {
        for r in (0..=(6 - t)).step_by(2) {
            let budget = 2 * (8 - (t + r));
            for s in (0..budget).step_by(2) {
                if (t + s) % 4 != 0 {
                    continue;
                }
                for k in (0..).step_by(4) {
                    if s + r + k >= budget {
                        break;
                    }
                    out.push(CandidateTuple { t, r, s, k });
                }
            }
        }
    }
    out
}

/// A certified property of one of the three curves of a family, or
/// smoothness of the degree-two curve itself.
///
/// Hyperelliptic and bielliptic flags are only set when a witnessing
/// involution is exhibited by the group action; their absence is not a
/// proof of the contrary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CurveFlag {
    #[serde(rename = "C_hyperelliptic")]
    CHyperelliptic,
    #[serde(rename = "C_bielliptic")]
    CBielliptic,
    #[serde(rename = "B_hyperelliptic")]
    BHyperelliptic,
    #[serde(rename = "B_bielliptic")]
    BBielliptic,
    #[serde(rename = "D_hyperelliptic")]
    DHyperelliptic,
    #[serde(rename = "D_bielliptic")]
    DBielliptic,
    #[serde(rename = "Btilde_smooth")]
    BtildeSmooth,
}

impl CurveFlag {
    /// Stable text form, matching the serialized name.
    pub fn as_str(self) -> &'static str {
        match self {
            CurveFlag::CHyperelliptic => "C_hyperelliptic",
            CurveFlag::CBielliptic => "C_bielliptic",
            CurveFlag::BHyperelliptic => "B_hyperelliptic",
            CurveFlag::BBielliptic => "B_bielliptic",
            CurveFlag::DHyperelliptic => "D_hyperelliptic",
            CurveFlag::DBielliptic => "D_bielliptic",
            CurveFlag::BtildeSmooth => "Btilde_smooth",
        }
    }
}

impl fmt::Display for CurveFlag {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(self.as_str())
    }
}

/// Dimension of the locus of base curves `C` in a family: an exact count,
/// one of two values when the sheet leaves the choice open, or a
/// zero-dimensional (finite) locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuliDimC {
    Exact(u32),
    OneOf(u32, u32),
    Finite,
}

impl fmt::Display for ModuliDimC {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ModuliDimC::Exact(d) => write!(out, "{d}"),
            ModuliDimC::OneOf(a, b) => write!(out, "{a} or {b}"),
            ModuliDimC::Finite => out.write_str("finite"),
        }
    }
}

impl Serialize for ModuliDimC {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            ModuliDimC::Exact(d) => serializer.serialize_u32(d),
            other => serializer.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ModuliDimC {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        struct DimVisitor;

        impl Visitor<'_> for DimVisitor {
            type Value = ModuliDimC;

            fn expecting(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
                out.write_str("a dimension, \"<a> or <b>\", or \"finite\"")
            }

            fn visit_u64<E: de::Error>(self, value: u64) -> std::result::Result<ModuliDimC, E> {
                u32::try_from(value)
                    .map(ModuliDimC::Exact)
                    .map_err(|_| E::custom("dimension out of range"))
            }

            fn visit_i64<E: de::Error>(self, value: i64) -> std::result::Result<ModuliDimC, E> {
                u32::try_from(value)
                    .map(ModuliDimC::Exact)
                    .map_err(|_| E::custom("dimension out of range"))
            }

            fn visit_str<E: de::Error>(self, value: &str) -> std::result::Result<ModuliDimC, E> {
                if value == "finite" {
                    return Ok(ModuliDimC::Finite);
                }
                if let Some((a, b)) = value.split_once(" or ") {
                    let a = a.trim().parse().map_err(E::custom)?;
                    let b = b.trim().parse().map_err(E::custom)?;
                    return Ok(ModuliDimC::OneOf(a, b));
                }
                Err(E::custom(format!("unrecognized dimension text {value:?}")))
            }
        }

        deserializer.deserialize_any(DimVisitor)
    }
}

/// One classified family: covering data, pair invariants, certified flags
/// and locus dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    /// Table label, e.g. `"D10.2"`, `"D4.1"` or `"0"`.
    pub label: String,
    pub group: GroupDescriptor,
    /// Half the rotation order for dihedral families, `None` for cyclic.
    pub l: Option<u32>,
    /// Free profile parameters `(s, k)` of the parametric families.
    pub params: Option<(u32, u32)>,
    pub vector: GeneratingVector,
    /// Distinguished automorphism for cyclic families, `None` for dihedral
    /// ones (which use the standard involution pair).
    pub alpha: Option<GroupElement>,
    pub pair: PairRecord,
    #[serde(rename = "moduli_dim_D")]
    pub moduli_dim_d: u32,
    #[serde(rename = "moduli_dim_C")]
    pub moduli_dim_c: Option<ModuliDimC>,
    pub flags: BTreeSet<CurveFlag>,
    /// Whether the arithmetic genus of the reducible model downstairs in
    /// `C x C` sits strictly inside the Brill-Noether window.
    pub bn_cxc: bool,
}

/// Work limits for the family searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    /// Largest number of branch points considered per covering.
    pub max_branch_points: u32,
    /// Node budget for each realization search, and class cap for vector
    /// enumeration.
    pub vector_cap: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_branch_points: 24,
            vector_cap: 10_000,
        }
    }
}

/// Outcome of a family search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySearch {
    /// Families in table order, one per fixed-point profile.
    pub families: Vec<FamilyRecord>,
    /// True when a bound cut the search short of exhaustiveness.
    pub truncated: bool,
}

/// Quotient genus of an involution with `nu` fixed points on a curve of
/// the given genus.
fn involution_quotient_genus(genus: u32, nu: u32) -> Result<u32> {
    let total = 2 * genus + 2;
    if nu > total || (total - nu) % 4 != 0 {
        return Err(Error::invariant(format!(
            "an involution on a curve of genus {genus} cannot fix {nu} points"
        )));
    }
    Ok((total - nu) / 4)
}

fn insert_quotient_flags(
    flags: &mut BTreeSet<CurveFlag>,
    quotient: u32,
    hyperelliptic: CurveFlag,
    bielliptic: CurveFlag,
) {
    match quotient {
        0 => {
            flags.insert(hyperelliptic);
        }
        1 => {
            flags.insert(bielliptic);
        }
        _ => {}
    }
}

/// Flags of an irreducible-pair family, certified by involutions of the
/// acting dihedral group.
///
/// `C` and `B` are flagged through the involution induced by the central
/// rotation; `D` is flagged when any involution of the group has quotient
/// genus zero or one; the degree-two curve is flagged smooth when it has
/// no nodes.
pub fn irreducible_flags(action: &CurveAction, pair: &PairRecord) -> Result<BTreeSet<CurveFlag>> {
    if pair.case != PairCase::Irreducible {
        return Err(Error::domain(
            "irreducible_flags",
            "the record must describe an irreducible pair",
        ));
    }
    let group = action.group();
    let mut flags = BTreeSet::new();
    let on_c = induced_involution_nu(action, InducedInvolution::OnC)?;
    insert_quotient_flags(
        &mut flags,
        involution_quotient_genus(pair.g, on_c)?,
        CurveFlag::CHyperelliptic,
        CurveFlag::CBielliptic,
    );
    let on_b = induced_involution_nu(action, InducedInvolution::OnB)?;
    insert_quotient_flags(
        &mut flags,
        involution_quotient_genus(pair.b, on_b)?,
        CurveFlag::BHyperelliptic,
        CurveFlag::BBielliptic,
    );
    for delta in group.involutions() {
        let quotient = quotient_genus(action, &Subgroup::cyclic(group, delta))?;
        insert_quotient_flags(
            &mut flags,
            quotient,
            CurveFlag::DHyperelliptic,
            CurveFlag::DBielliptic,
        );
    }
    if pair.nodes_b == 0 {
        flags.insert(CurveFlag::BtildeSmooth);
    }
    Ok(flags)
}

/// Flags of a reducible-pair family. The normalization of the degree-two
/// curve is a copy of the base curve, so every involution of the acting
/// cyclic group flags `C` and `B` together; there is no connected curve
/// `D` to flag.
pub fn reducible_flags(
    action: &CurveAction,
    alpha: GroupElement,
    pair: &PairRecord,
) -> Result<BTreeSet<CurveFlag>> {
    if pair.case != PairCase::Reducible {
        return Err(Error::domain(
            "reducible_flags",
            "the record must describe a reducible pair",
        ));
    }
    let group = action.group();
    group.check_element(alpha)?;
    let mut flags = BTreeSet::new();
    for z in group.involutions() {
        let quotient = involution_quotient_genus(pair.g, action.nu(z)?)?;
        insert_quotient_flags(
            &mut flags,
            quotient,
            CurveFlag::CHyperelliptic,
            CurveFlag::CBielliptic,
        );
        insert_quotient_flags(
            &mut flags,
            quotient,
            CurveFlag::BHyperelliptic,
            CurveFlag::BBielliptic,
        );
    }
    if pair.nodes_b == 0 {
        flags.insert(CurveFlag::BtildeSmooth);
    }
    Ok(flags)
}

/// Sort key placing the cyclic family first, then dihedral families by
/// decreasing rotation order and increasing table index.
pub(crate) fn label_sort_key(label: &str) -> (u8, u32, u32) {
    if label == "0" {
        return (0, 0, 0);
    }
    if let Some(rest) = label.strip_prefix('D') {
        if let Some((order, index)) = rest.split_once('.') {
            if let (Ok(order), Ok(index)) = (order.parse::<u32>(), index.parse::<u32>()) {
                return (1, u32::MAX - order, index);
            }
        }
    }
    (2, 0, 0)
}

/// Sorts family records into table order: the cyclic family first, then
/// dihedral families by decreasing rotation order and table index, with
/// unmatched records last, tie-broken by fixed-point profile.
pub fn sort_families(families: &mut [FamilyRecord]) {
    families.sort_by(|a, b| {
        let key_a = (
            label_sort_key(&a.label),
            (a.pair.t, a.pair.r, a.pair.s, a.pair.k, a.pair.p),
        );
        let key_b = (
            label_sort_key(&b.label),
            (b.pair.t, b.pair.r, b.pair.s, b.pair.k, b.pair.p),
        );
        key_a.cmp(&key_b)
    });
}

/// One entry kind of a dihedral branch multiset, in fixed slot order.
struct EntryKind {
    /// Element order of entries of this kind.
    order: u32,
    /// Contribution of one entry to the self-intersection deficit.
    cost: u32,
    /// Elements available for a slot of this kind.
    elements: Vec<GroupElement>,
}

/// Exhaustive search for irreducible-pair families over the dihedral group
/// of rotation order `2l`, `l >= 3`.
///
/// Branch-entry multisets are enumerated by kind (full rotations, half
/// rotations, intermediate-order rotations, the central rotation, and the
/// two reflection classes) within the deficit budget that positive
/// self-intersection allows on a genus-zero base; a base of positive genus
/// never yields positive self-intersection. Conjugation preserves each
/// kind, so every realizable profile is realizable with entries grouped in
/// kind order and the slot search below is exhaustive. One family is
/// emitted per realizable kind multiset; for rotation orders `2l` with `l`
/// in `{3, 4, 5}` the multiset is determined by the fixed-point profile
/// `(t, r, s, k, p)`. Families matching a reference table row take its
/// label; anything else is labelled [`UNEXPECTED_LABEL`].
pub fn search_families(l: u32, bounds: &SearchBounds) -> Result<FamilySearch> {
    const OP: &str = "search_families";
    if l < 3 {
        return Err(Error::domain(
            OP,
            format!(
                "rotation order {} is out of range: the rotation-order-four families are \
                 parametric (see d4_families) and lower orders give no dihedral pair",
                2 * l
            ),
        ));
    }
    let group = GroupDescriptor::dihedral(2 * l)?;
    let inv_i = GroupElement::reflection(1);
    let inv_j = GroupElement::reflection(0);
    let budget = 4 * l - 1;

    let mut kinds = vec![
        EntryKind {
            order: 2 * l,
            cost: 2 * l - 2,
            elements: group.elements_of_order(2 * l),
        },
        EntryKind {
            order: l,
            cost: 2 * l - 4,
            elements: group.elements_of_order(l),
        },
    ];
    for order in (3..l).rev() {
        if (2 * l) % order == 0 {
            kinds.push(EntryKind {
                order,
                cost: 2 * l - 2 * l / order,
                elements: group.elements_of_order(order),
            });
        }
    }
    kinds.push(EntryKind {
        order: 2,
        cost: l,
        elements: vec![GroupElement::rotation(l)],
    });
    kinds.push(EntryKind {
        order: 2,
        cost: l,
        elements: (0..l).map(|a| GroupElement::reflection(2 * a + 1)).collect(),
    });
    kinds.push(EntryKind {
        order: 2,
        cost: l - 2,
        elements: (0..l).map(|a| GroupElement::reflection(2 * a)).collect(),
    });
    let central_index = kinds.len() - 3;
    let class_i_index = kinds.len() - 2;
    let class_j_index = kinds.len() - 1;

    let mut multisets: Vec<Vec<u32>> = Vec::new();
    let mut counts = vec![0u32; kinds.len()];
    collect_multisets(&kinds, 0, budget, &mut counts, &mut multisets);

    let mut truncated = false;
    let mut found: Vec<(Option<&'static str>, FamilyRecord)> = Vec::new();
    for counts in multisets {
        let entry_total: u32 = counts.iter().sum();
        if entry_total == 0 {
            continue;
        }
        if entry_total > bounds.max_branch_points {
            truncated = true;
            continue;
        }
        if (counts[class_i_index] + counts[class_j_index]) % 2 != 0 {
            continue;
        }
        let mut doubled = -8 * i64::from(l);
        for (kind, &count) in kinds.iter().zip(&counts) {
            doubled += i64::from(count) * i64::from(4 * l - 4 * l / kind.order);
        }
        if doubled + 2 < 4 {
            continue;
        }
        let h = u32::try_from((doubled + 2) / 2).expect("bounded by the cost budget");
        let t = 2 * counts[class_i_index];
        let r = 2 * counts[0];
        let s = 2 * counts[class_j_index];
        let k = 4 * counts[1];
        let p = 2 * l * counts[central_index];
        if (2 * h + 2).saturating_sub(s) % 4 != 0
            || (2 * h + 2).saturating_sub(t) % 4 != 0
            || 2 * h + 2 < s + 8
        {
            continue;
        }
        let pool: Vec<GroupElement> = kinds
            .iter()
            .zip(&counts)
            .filter(|(_, &count)| count > 0)
            .flat_map(|(kind, _)| kind.elements.iter().copied())
            .collect();
        if !group.generated_subgroup(&pool).is_full(group) {
            continue;
        }
        let Some(entries) = realize_multiset(group, &kinds, &counts, bounds.vector_cap, &mut truncated)
        else {
            continue;
        };
        let vector = GeneratingVector::from_branch(group, entries);
        let action = CurveAction::new(vector)?;
        let pair = match invariants_irreducible(&action, inv_i, inv_j) {
            Ok(pair) => pair,
            Err(Error::Rejected { .. }) => continue,
            Err(err) => return Err(err),
        };
        if (pair.t, pair.r, pair.s, pair.k, pair.p) != (t, r, s, k, p) || pair.h != h {
            return Err(Error::invariant(format!(
                "profile ({}, {}, {}, {}, {}) with covering genus {} was realized by a vector \
                 whose invariants disagree: {:?}",
                t, r, s, k, p, h, pair
            )));
        }
        if pair.b_sq < 1 {
            return Err(Error::invariant(format!(
                "the deficit budget admitted a family with self-intersection {}",
                pair.b_sq
            )));
        }
        let flags = irreducible_flags(&action, &pair)?;
        let label = fixtures::dihedral_label(l, (t, r, s, k, p));
        let bn_cxc = matches!(cxc_bn_check(&pair)?, Some(true));
        found.push((
            label,
            FamilyRecord {
                label: String::new(),
                group,
                l: Some(l),
                params: None,
                vector: action.vector().clone(),
                alpha: None,
                pair,
                moduli_dim_d: entry_total - 3,
                moduli_dim_c: None,
                flags,
                bn_cxc,
            },
        ));
    }

    found.sort_by_key(|(_, rec)| (rec.pair.t, rec.pair.r, rec.pair.s, rec.pair.k, rec.pair.p));
    let mut families: Vec<FamilyRecord> = found
        .into_iter()
        .map(|(label, mut rec)| {
            rec.label = label.unwrap_or(UNEXPECTED_LABEL).to_string();
            rec.moduli_dim_c = fixtures::reference_moduli_c(&rec.label);
            rec
        })
        .collect();
    sort_families(&mut families);
    Ok(FamilySearch {
        families,
        truncated,
    })
}

fn collect_multisets(
    kinds: &[EntryKind],
    index: usize,
    budget_left: u32,
    counts: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if index == kinds.len() {
        out.push(counts.clone());
        return;
    }
    let cost = kinds[index].cost.max(1);
    for count in 0..=(budget_left / cost) {
        counts[index] = count;
        collect_multisets(kinds, index + 1, budget_left - count * cost, counts, out);
    }
    counts[index] = 0;
}

/// Depth-first slot fill over a kind multiset. The final slot is forced by
/// the product-one constraint; generation is checked at the leaves. Returns
/// the first realization found, exploring elements in enumeration order.
fn realize_multiset(
    group: GroupDescriptor,
    kinds: &[EntryKind],
    counts: &[u32],
    node_budget: usize,
    truncated: &mut bool,
) -> Option<Vec<GroupElement>> {
    let mut slots: Vec<usize> = Vec::new();
    for (index, &count) in counts.iter().enumerate() {
        slots.extend(std::iter::repeat(index).take(count as usize));
    }
    if slots.is_empty() {
        return None;
    }
    let mut nodes = 0usize;
    let mut chosen: Vec<GroupElement> = Vec::with_capacity(slots.len());
    let result = fill_slot(
        group,
        kinds,
        &slots,
        0,
        group.identity(),
        &mut chosen,
        &mut nodes,
        node_budget,
    );
    match result {
        FillOutcome::Found => Some(chosen),
        FillOutcome::Exhausted => None,
        FillOutcome::OutOfBudget => {
            *truncated = true;
            None
        }
    }
}

enum FillOutcome {
    Found,
    Exhausted,
    OutOfBudget,
}

#[allow(clippy::too_many_arguments)]
fn fill_slot(
    group: GroupDescriptor,
    kinds: &[EntryKind],
    slots: &[usize],
    index: usize,
    prefix: GroupElement,
    chosen: &mut Vec<GroupElement>,
    nodes: &mut usize,
    node_budget: usize,
) -> FillOutcome {
    *nodes += 1;
    if *nodes > node_budget {
        return FillOutcome::OutOfBudget;
    }
    let kind = &kinds[slots[index]];
    if index == slots.len() - 1 {
        let needed = group.inverse(prefix);
        if kind.elements.contains(&needed) {
            chosen.push(needed);
            if group.generated_subgroup(chosen).is_full(group) {
                return FillOutcome::Found;
            }
            chosen.pop();
        }
        return FillOutcome::Exhausted;
    }
    for &element in &kind.elements {
        chosen.push(element);
        let outcome = fill_slot(
            group,
            kinds,
            slots,
            index + 1,
            group.mul(prefix, element),
            chosen,
            nodes,
            node_budget,
        );
        match outcome {
            FillOutcome::Exhausted => {
                chosen.pop();
            }
            other => return other,
        }
    }
    FillOutcome::Exhausted
}

/// The three parametric families over the dihedral group of rotation order
/// four, instantiated at profile parameters `(s, k)`.
///
/// Returns every family whose constraints admit `(s, k)`: the profile
/// `(0, 4, s, k)` needs `s > 0`, `s` divisible by four and `s + k >= 8`;
/// the profile `(2, 2, s, k)` needs `s = 2 (mod 4)` and `s + k >= 10`; the
/// profile `(4, 0, s, k)` needs `s > 0`, `s` divisible by four and
/// `s + k >= 12`. Off-lattice parameters yield an empty list.
pub fn d4_families(s: u32, k: u32) -> Result<Vec<FamilyRecord>> {
    if s % 2 != 0 || k % 4 != 0 {
        return Ok(Vec::new());
    }
    let group = GroupDescriptor::dihedral(4)?;
    let inv_i = GroupElement::reflection(1);
    let inv_j = GroupElement::reflection(0);
    let rho = GroupElement::rotation(1);
    let rho_inv = GroupElement::rotation(3);
    let rho_sq = GroupElement::rotation(2);
    let j_other = GroupElement::reflection(2);
    let quarter = k / 4;

    let mut families = Vec::new();
    let emit = |variant: u32, t: u32, r: u32, head: Vec<GroupElement>| -> Result<FamilyRecord> {
        let mut entries = head;
        let js = if quarter % 2 == 0 { s / 2 } else { s / 2 - 1 };
        entries.extend(std::iter::repeat(inv_j).take(js as usize));
        if quarter % 2 != 0 {
            entries.push(j_other);
        }
        entries.extend(std::iter::repeat(rho_sq).take(quarter as usize));
        let vector = GeneratingVector::from_branch(group, entries);
        let total = vector.branch_entries.len() as u32;
        let action = CurveAction::new(vector)?;
        let pair = invariants_irreducible(&action, inv_i, inv_j)?;
        let expected_h = s + k / 2 - variant;
        let expected_g = (s + k - 2 * (variant - 1)) / 4;
        let expected_b = (2 * s + k - 4 * (variant - 1)) / 4;
        let checks = [
            ("profile t", pair.t, t),
            ("profile r", pair.r, r),
            ("profile s", pair.s, s),
            ("profile k", pair.k, k),
            ("profile p", pair.p, 0),
            ("covering genus", pair.h, expected_h),
            ("base genus", pair.g, expected_g),
            ("quotient genus", pair.b, expected_b),
            ("arithmetic genus", pair.pa_b, 2 * expected_g),
            ("node count", pair.nodes_b, k / 4),
        ];
        for (name, got, want) in checks {
            if got != want {
                return Err(Error::invariant(format!(
                    "parametric family {variant} at (s, k) = ({s}, {k}): {name} is {got}, \
                     expected {want}"
                )));
            }
        }
        if pair.b_sq != 4 {
            return Err(Error::invariant(format!(
                "parametric family {variant} at (s, k) = ({s}, {k}): self-intersection is {}, \
                 expected 4",
                pair.b_sq
            )));
        }
        if total - 3 != (2 * s + k - 4) / 4 {
            return Err(Error::invariant(format!(
                "parametric family {variant} at (s, k) = ({s}, {k}): {} branch points do not \
                 match the expected locus dimension",
                total
            )));
        }
        let flags = irreducible_flags(&action, &pair)?;
        let bn_cxc = matches!(cxc_bn_check(&pair)?, Some(true));
        Ok(FamilyRecord {
            label: format!("D4.{variant}"),
            group,
            l: Some(2),
            params: Some((s, k)),
            vector: action.vector().clone(),
            alpha: None,
            pair,
            moduli_dim_d: total - 3,
            moduli_dim_c: None,
            flags,
            bn_cxc,
        })
    };

    if s > 0 && s % 4 == 0 && s + k >= 8 {
        families.push(emit(1, 0, 4, vec![rho, rho_inv])?);
    }
    if s % 4 == 2 && s + k >= 10 {
        families.push(emit(2, 2, 2, vec![inv_i, rho])?);
    }
    if s > 0 && s % 4 == 0 && s + k >= 12 {
        families.push(emit(3, 4, 0, vec![inv_i, inv_i])?);
    }
    Ok(families)
}

/// Exhaustive scan over cyclic actions: every group order up to `m_max`,
/// every base genus and signature with covering genus up to `g_max`, every
/// vector class, every automorphism with order in `[order_lo, order_hi]`.
/// Keeps the first hit with positive self-intersection per
/// (order, signature, fixed-point) key.
///
/// Positive base genus can never produce positive self-intersection for a
/// cyclic action; those signatures are scanned anyway so the claim is
/// checked rather than assumed.
fn reducible_scan(
    m_max: u32,
    g_max: u32,
    order_lo: u32,
    order_hi: u32,
) -> Result<(Vec<(GroupElement, PairRecord, CurveAction)>, bool)> {
    let mut truncated = false;
    let mut seen: BTreeSet<(u32, Signature, u32, u32)> = BTreeSet::new();
    let mut hits = Vec::new();
    for m in 3..=m_max {
        let group = GroupDescriptor::cyclic(m)?;
        let mut signatures = Vec::new();
        for base in 0.. {
            if base >= 1 && m * (base - 1) + 1 > g_max {
                break;
            }
            signatures.extend(signature_candidates_from_base(
                group,
                base,
                g_max,
                2 * g_max + 2,
            ));
        }
        for sig in signatures {
            let search = match search_vectors(group, &sig, REDUCIBLE_VECTOR_CAP) {
                Ok(search) => search,
                Err(Error::NotRealizable { .. }) => continue,
                Err(err) => return Err(err),
            };
            truncated |= search.truncated;
            for vector in search.vectors {
                let action = CurveAction::new(vector)?;
                if action.covering_genus() < 2 {
                    continue;
                }
                for alpha in group.elements() {
                    let order = group.element_order(alpha);
                    if order < order_lo || order > order_hi {
                        continue;
                    }
                    let record = invariants_reducible(&action, alpha)?;
                    if record.b_sq <= 0 {
                        continue;
                    }
                    let key = (
                        m,
                        action.vector().signature_of(),
                        record.s,
                        record.s + record.k,
                    );
                    if seen.insert(key) {
                        hits.push((alpha, record, action.clone()));
                    }
                }
            }
        }
    }
    Ok((hits, truncated))
}

/// Classification search for reducible pairs: cyclic actions whose
/// distinguished automorphism has order at least eight.
///
/// In this range positive self-intersection pins the base curve to genus
/// two, so the scan over group orders up to `m_max` and genera up to
/// `g_max >= 2` is exhaustive; with `m_max` below eight the classified
/// range is empty and so is the result. Automorphisms of order three to
/// seven are outside this range and are reported separately by
/// [`reducible_low_order_diagnostics`].
pub fn reducible_search(m_max: u32, g_max: u32) -> Result<FamilySearch> {
    const OP: &str = "reducible_search";
    if m_max < 4 {
        return Err(Error::domain(
            OP,
            format!("group order cap {m_max} is below the minimum order four"),
        ));
    }
    if g_max < 2 {
        return Err(Error::domain(
            OP,
            format!("genus cap {g_max} is below the minimum genus two"),
        ));
    }
    let (hits, truncated) = reducible_scan(m_max, g_max, 8, m_max)?;
    let reference_signature = Signature::new(0, vec![10, 5, 2])?;
    let mut families = Vec::new();
    for (alpha, pair, action) in hits {
        let group = action.group();
        let flags = reducible_flags(&action, alpha, &pair)?;
        let is_reference = group.order() == 10
            && action.vector().signature_of() == reference_signature
            && (pair.s, pair.s + pair.k) == (1, 3);
        let label = if is_reference {
            "0".to_string()
        } else {
            UNEXPECTED_LABEL.to_string()
        };
        let branch_points = action.vector().branch_entries.len() as u32;
        if branch_points < 3 {
            return Err(Error::invariant(format!(
                "a genus-two cyclic cover of the line was found with {branch_points} branch \
                 points"
            )));
        }
        let bn_cxc = matches!(cxc_bn_check(&pair)?, Some(true));
        families.push(FamilyRecord {
            label: label.clone(),
            group,
            l: None,
            params: None,
            vector: action.vector().clone(),
            alpha: Some(alpha),
            pair,
            moduli_dim_d: branch_points - 3,
            moduli_dim_c: fixtures::reference_moduli_c(&label),
            flags,
            bn_cxc,
        });
    }
    sort_families(&mut families);
    Ok(FamilySearch {
        families,
        truncated,
    })
}

/// A cyclic-action pair with positive self-intersection whose
/// distinguished automorphism has order three to seven.
///
/// These sit outside the range where the classification argument applies;
/// they are reported as raw data with no family claim attached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowOrderCandidate {
    pub group: GroupDescriptor,
    pub signature: Signature,
    pub vector: GeneratingVector,
    pub alpha: GroupElement,
    pub nu_alpha: u32,
    pub nu_alpha_sq: u32,
    pub g: u32,
    #[serde(rename = "Bsq")]
    pub b_sq: i64,
}

/// Outcome of the low-order diagnostic scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowOrderScan {
    pub candidates: Vec<LowOrderCandidate>,
    pub truncated: bool,
}

/// Diagnostic scan for cyclic-action pairs with positive self-intersection
/// and automorphism order three to seven, the range the classification
/// search leaves open. See [`reducible_search`] for the classified range.
pub fn reducible_low_order_diagnostics(m_max: u32, g_max: u32) -> Result<LowOrderScan> {
    const OP: &str = "reducible_low_order_diagnostics";
    if m_max < 3 {
        return Err(Error::domain(
            OP,
            format!("group order cap {m_max} leaves no room for an automorphism of order three"),
        ));
    }
    if g_max < 2 {
        return Err(Error::domain(
            OP,
            format!("genus cap {g_max} is below the minimum genus two"),
        ));
    }
    let (hits, truncated) = reducible_scan(m_max, g_max, 3, 7)?;
    let candidates = hits
        .into_iter()
        .map(|(alpha, pair, action)| LowOrderCandidate {
            group: action.group(),
            signature: action.vector().signature_of(),
            vector: action.vector().clone(),
            alpha,
            nu_alpha: pair.s,
            nu_alpha_sq: pair.s + pair.k,
            g: pair.g,
            b_sq: pair.b_sq,
        })
        .collect();
    Ok(LowOrderScan {
        candidates,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_eight_candidate_tuples() {
        let tuples = enumerate_candidates_l_ge4();
        assert_eq!(tuples.len(), 28);
        assert_eq!(tuples[0], CandidateTuple { t: 0, r: 0, s: 0, k: 0 });
        assert_eq!(
            tuples[27],
            CandidateTuple { t: 4, r: 2, s: 0, k: 0 }
        );
        let mut sorted = tuples.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, tuples);
        for tuple in &tuples {
            assert_eq!(tuple.t % 2, 0);
            assert_eq!(tuple.r % 2, 0);
            assert_eq!(tuple.s % 2, 0);
            assert_eq!(tuple.k % 4, 0);
            assert_eq!((tuple.t + tuple.s) % 4, 0);
            assert!(tuple.t <= 4);
            assert!(tuple.t + tuple.r <= 6);
            assert!(tuple.s + tuple.r + tuple.k < 2 * (8 - (tuple.t + tuple.r)));
        }
    }

    #[test]
    fn rotation_order_ten_search_finds_three_families() {
        let search = search_families(5, &SearchBounds::default()).unwrap();
        assert!(!search.truncated);
        let labels: Vec<&str> = search.families.iter().map(|f| f.label.as_str()).collect();
        assert_eq!(labels, ["D10.1", "D10.2", "D10.3"]);
        let rows: Vec<(u32, u32, u32, i64, u32, u32)> = search
            .families
            .iter()
            .map(|f| {
                (
                    f.pair.h,
                    f.pair.g,
                    f.pair.b,
                    f.pair.b_sq,
                    f.moduli_dim_d,
                    f.pair.nodes_b,
                )
            })
            .collect();
        assert_eq!(
            rows,
            [(5, 2, 3, 1, 1, 0), (4, 2, 2, 1, 1, 1), (6, 2, 3, 1, 2, 0)]
        );
    }

    #[test]
    fn rotation_order_eight_search_is_empty() {
        let search = search_families(4, &SearchBounds::default()).unwrap();
        assert!(!search.truncated);
        assert!(search.families.is_empty());
    }

    #[test]
    fn rotation_order_twelve_search_finds_twelve_families() {
        let search = search_families(3, &SearchBounds::default()).unwrap();
        assert!(!search.truncated);
        let labels: Vec<&str> = search.families.iter().map(|f| f.label.as_str()).collect();
        assert_eq!(
            labels,
            [
                "D6.1",
                "D6.2",
                "D6.3",
                "D6.4",
                "D6.5",
                "D6.6",
                "D6.7",
                "D6.8",
                "D6.9",
                "D6.10",
                UNEXPECTED_LABEL,
                UNEXPECTED_LABEL,
            ]
        );
        let profiles: Vec<(u32, u32, u32, u32, u32)> = search
            .families
            .iter()
            .map(|f| (f.pair.t, f.pair.r, f.pair.s, f.pair.k, f.pair.p))
            .collect();
        assert_eq!(
            profiles,
            [
                (0, 0, 4, 4, 12),
                (0, 2, 4, 4, 6),
                (0, 2, 8, 0, 6),
                (0, 4, 4, 0, 0),
                (2, 0, 2, 8, 6),
                (2, 0, 6, 4, 6),
                (2, 2, 2, 4, 0),
                (2, 2, 6, 0, 0),
                (4, 0, 4, 4, 0),
                (4, 0, 8, 0, 0),
                (0, 0, 8, 0, 12),
                (2, 0, 10, 0, 6),
            ]
        );
        let smooth_extra = &search.families[10];
        assert_eq!(
            (
                smooth_extra.pair.h,
                smooth_extra.pair.g,
                smooth_extra.pair.b,
                smooth_extra.pair.pa_b,
                smooth_extra.pair.pa_d,
                smooth_extra.pair.b_sq,
                smooth_extra.pair.nodes_b,
                smooth_extra.moduli_dim_d,
            ),
            (7, 2, 4, 4, 7, 2, 0, 3)
        );
        assert!(!smooth_extra.bn_cxc);
        assert_eq!(smooth_extra.moduli_dim_c, None);
        let flags: Vec<CurveFlag> = smooth_extra.flags.iter().copied().collect();
        assert_eq!(
            flags,
            [
                CurveFlag::CHyperelliptic,
                CurveFlag::BHyperelliptic,
                CurveFlag::DBielliptic,
                CurveFlag::BtildeSmooth
            ]
        );
        let genus_three_extra = &search.families[11];
        assert_eq!(
            (
                genus_three_extra.pair.h,
                genus_three_extra.pair.g,
                genus_three_extra.pair.b,
                genus_three_extra.pair.pa_b,
                genus_three_extra.pair.pa_d,
                genus_three_extra.pair.b_sq,
                genus_three_extra.pair.nodes_b,
                genus_three_extra.moduli_dim_d,
            ),
            (10, 3, 5, 5, 10, 1, 0, 4)
        );
        assert!(genus_three_extra.bn_cxc);
        let flags: Vec<CurveFlag> = genus_three_extra.flags.iter().copied().collect();
        assert_eq!(
            flags,
            [
                CurveFlag::CBielliptic,
                CurveFlag::BBielliptic,
                CurveFlag::BtildeSmooth
            ]
        );
        let cxc_labels: Vec<&str> = search
            .families
            .iter()
            .filter(|f| f.bn_cxc)
            .map(|f| f.label.as_str())
            .collect();
        assert_eq!(
            cxc_labels,
            ["D6.2", "D6.3", "D6.5", "D6.6", UNEXPECTED_LABEL]
        );
    }

    #[test]
    fn rotation_order_four_is_rejected_by_the_search() {
        let err = search_families(2, &SearchBounds::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn parametric_families_at_small_parameters() {
        let only = d4_families(4, 4).unwrap();
        assert_eq!(only.len(), 1);
        let rec = &only[0];
        assert_eq!(rec.label, "D4.1");
        assert_eq!(rec.params, Some((4, 4)));
        assert_eq!(
            (rec.pair.h, rec.pair.g, rec.pair.b, rec.pair.pa_b, rec.pair.b_sq),
            (5, 2, 3, 4, 4)
        );
        assert_eq!(rec.moduli_dim_d, 2);
        let flags: Vec<CurveFlag> = rec.flags.iter().copied().collect();
        assert_eq!(
            flags,
            [
                CurveFlag::CHyperelliptic,
                CurveFlag::BBielliptic,
                CurveFlag::DBielliptic
            ]
        );

        let second = d4_families(6, 4).unwrap();
        assert_eq!(second.len(), 1);
        assert_eq!(second[0].label, "D4.2");
        assert_eq!(second[0].pair.h, 6 + 2 - 2);

        assert!(d4_families(3, 4).unwrap().is_empty());
        assert!(d4_families(0, 12).unwrap().is_empty());

        let both = d4_families(4, 8).unwrap();
        let labels: Vec<&str> = both.iter().map(|f| f.label.as_str()).collect();
        assert_eq!(labels, ["D4.1", "D4.3"]);
    }

    #[test]
    fn parametric_family_profiles_match_their_variants() {
        for (s, k) in [(2, 8), (6, 4), (6, 12)] {
            for rec in d4_families(s, k).unwrap() {
                assert_eq!(rec.label, "D4.2");
                assert_eq!((rec.pair.t, rec.pair.r), (2, 2));
                assert_eq!((rec.pair.s, rec.pair.k), (s, k));
                assert_eq!(rec.pair.pa_d, 4 * rec.pair.g + 1);
            }
        }
        for rec in d4_families(8, 8).unwrap() {
            assert_eq!((rec.pair.s, rec.pair.k), (8, 8));
            assert_eq!(rec.pair.pa_d, 4 * rec.pair.g + 1);
        }
    }

    #[test]
    fn reducible_search_below_the_classified_range_is_empty() {
        let err = reducible_search(3, 6).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let search = reducible_search(6, 6).unwrap();
        assert!(!search.truncated);
        assert!(search.families.is_empty());
    }

    #[test]
    fn reducible_search_finds_the_single_family() {
        let search = reducible_search(12, 6).unwrap();
        assert!(!search.truncated);
        assert_eq!(search.families.len(), 1);
        let rec = &search.families[0];
        assert_eq!(rec.label, "0");
        assert_eq!(rec.group.order(), 10);
        assert_eq!(rec.alpha, Some(GroupElement::rotation(1)));
        assert_eq!((rec.pair.s, rec.pair.k), (1, 2));
        assert_eq!((rec.pair.g, rec.pair.pa_b, rec.pair.b_sq), (2, 3, 1));
        assert_eq!(rec.moduli_dim_d, 0);
        assert_eq!(rec.moduli_dim_c, Some(ModuliDimC::Finite));
        assert!(!rec.bn_cxc);
        let flags: Vec<CurveFlag> = rec.flags.iter().copied().collect();
        assert_eq!(
            flags,
            [CurveFlag::CHyperelliptic, CurveFlag::BHyperelliptic]
        );
    }

    #[test]
    fn low_order_diagnostics_report_out_of_range_hits() {
        let scan = reducible_low_order_diagnostics(6, 4).unwrap();
        assert!(!scan.truncated);
        assert!(!scan.candidates.is_empty());
        for hit in &scan.candidates {
            let order = hit.group.element_order(hit.alpha);
            assert!((3..=7).contains(&order));
            assert!(hit.b_sq > 0);
        }
        let sixes: Vec<&LowOrderCandidate> = scan
            .candidates
            .iter()
            .filter(|hit| hit.group.order() == 6 && hit.group.element_order(hit.alpha) == 6)
            .collect();
        assert!(sixes
            .iter()
            .any(|hit| (hit.nu_alpha, hit.nu_alpha_sq, hit.g, hit.b_sq) == (2, 4, 2, 2)));
    }

    #[test]
    fn moduli_dimension_text_round_trips() {
        for dim in [
            ModuliDimC::Exact(3),
            ModuliDimC::OneOf(1, 2),
            ModuliDimC::Finite,
        ] {
            let json = serde_json::to_string(&dim).unwrap();
            let back: ModuliDimC = serde_json::from_str(&json).unwrap();
            assert_eq!(back, dim);
        }
        assert_eq!(serde_json::to_string(&ModuliDimC::Exact(3)).unwrap(), "3");
        assert_eq!(
            serde_json::to_string(&ModuliDimC::OneOf(1, 2)).unwrap(),
            "\"1 or 2\""
        );
    }

    #[test]
    fn search_bounds_can_truncate_the_realization_work() {
        let bounds = SearchBounds {
            max_branch_points: 24,
            vector_cap: 2,
        };
        let search = search_families(5, &bounds).unwrap();
        assert!(search.truncated);
    }
}
