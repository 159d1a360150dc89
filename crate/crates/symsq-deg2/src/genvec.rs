//! Generating vectors for covering-curve actions: validation, branching
//! signatures, genus bookkeeping, branch tallies, and exhaustive search.
//!
//! A generating vector packages a base genus, hyperbolic generator pairs,
//! and branch entries. A vector is valid when the commutator-times-branch
//! product is the identity and all entries together generate the group;
//! those two facts are exactly what is needed for a curve with that group
//! action and branching data to exist.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElement};

/// Branching type of a quotient map: base genus plus branch orders.
///
/// Periods are kept sorted in descending order as the canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    base_genus: u32,
    periods: Vec<u32>,
}

impl Signature {
    /// Builds a signature; periods must all be at least 2.
    pub fn new(base_genus: u32, mut periods: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = periods.iter().find(|&&m| m < 2) {
            return Err(Error::domain(
                "Signature::new",
                format!("branch periods must be at least 2, got {bad}"),
            ));
        }
        periods.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Signature {
            base_genus,
            periods,
        })
    }

    pub fn base_genus(&self) -> u32 {
        self.base_genus
    }

    pub fn periods(&self) -> &[u32] {
        &self.periods
    }

    pub fn branch_point_count(&self) -> u32 {
        self.periods.len() as u32
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "({}; ", self.base_genus)?;
        if self.periods.is_empty() {
            write!(out, "-")?;
        } else {
            let list: Vec<String> = self.periods.iter().map(u32::to_string).collect();
            write!(out, "{}", list.join(","))?;
        }
        write!(out, ")")
    }
}

impl FromStr for Signature {
    type Err = Error;

    /// Parses `(g; m1,m2,...)`, with or without parentheses and spaces.
    /// `(g; -)` denotes an empty period list.
    fn from_str(text: &str) -> Result<Self> {
        let err = |detail: &str| Error::Parse {
            input: text.to_string(),
            detail: detail.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(&compact);
        let (genus_part, period_part) = inner
            .split_once(';')
            .ok_or_else(|| err("expected (g; m1,m2,...)"))?;
        let base_genus: u32 = genus_part
            .parse()
            .map_err(|_| err("base genus must be a non-negative integer"))?;
        let periods: Vec<u32> = if period_part.is_empty() || period_part == "-" {
            Vec::new()
        } else {
            period_part
                .split(',')
                .map(|p| {
                    p.parse::<u32>()
                        .map_err(|_| err("periods must be integers of size at least 2"))
                })
                .collect::<Result<_>>()?
        };
        Signature::new(base_genus, periods)
    }
}

/// A tuple of group elements presenting a group action on a curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingVector {
    pub group: GroupDescriptor,
    pub base_genus: u32,
    pub hyperbolic_pairs: Vec<(GroupElement, GroupElement)>,
    pub branch_entries: Vec<GroupElement>,
}

impl GeneratingVector {
    /// A vector with genus-zero base: branch entries only.
    pub fn from_branch(group: GroupDescriptor, branch_entries: Vec<GroupElement>) -> Self {
        GeneratingVector {
            group,
            base_genus: 0,
            hyperbolic_pairs: Vec::new(),
            branch_entries,
        }
    }

    /// Parses a comma-separated element list as a genus-zero vector.
    pub fn parse_branch(group: GroupDescriptor, text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|piece| {
                let e: GroupElement = piece.parse()?;
                group.check_element(e)?;
                Ok(e)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratingVector::from_branch(group, entries))
    }

    fn all_entries(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.hyperbolic_pairs
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(self.branch_entries.iter().copied())
    }

    /// The commutator-times-branch product of the whole tuple.
    pub fn total_product(&self) -> GroupElement {
        let g = self.group;
        let mut acc = g.identity();
        for &(a, b) in &self.hyperbolic_pairs {
            let comm = g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b)));
            acc = g.mul(acc, comm);
        }
        for &c in &self.branch_entries {
            acc = g.mul(acc, c);
        }
        acc
    }

    /// Whether the commutator-times-branch product is the identity.
    pub fn product_one(&self) -> bool {
        self.total_product().is_identity()
    }

    /// Whether the entries generate the whole group.
    pub fn generates(&self) -> bool {
        let entries: Vec<GroupElement> = self.all_entries().collect();
        self.group.generated_subgroup(&entries).is_full(self.group)
    }

    /// Base genus plus the branch entry orders, in canonical form.
    pub fn signature_of(&self) -> Signature {
        let periods = self
            .branch_entries
            .iter()
            .map(|&c| self.group.element_order(c))
            .collect();
        Signature::new(self.base_genus, periods)
            .expect("branch entries are checked non-identity before signatures are taken")
    }

    /// Genus of the covering curve presented by this vector.
    pub fn genus(&self) -> Result<u32> {
        rh_genus(self.group.order(), &self.signature_of())
    }

    /// Full validation: element membership, shape, identity-free branch
    /// entries, product one, and generation.
    pub fn validate(&self) -> Result<()> {
        for e in self.all_entries() {
            self.group.check_element(e)?;
        }
        if self.hyperbolic_pairs.len() != self.base_genus as usize {
            return Err(Error::rejected(format!(
                "base genus {} needs exactly {} hyperbolic pairs, found {}",
                self.base_genus,
                self.base_genus,
                self.hyperbolic_pairs.len()
            )));
        }
        if let Some(pos) = self.branch_entries.iter().position(|e| e.is_identity()) {
            return Err(Error::rejected(format!(
                "branch entry {pos} is the identity"
            )));
        }
        if !self.product_one() {
            return Err(Error::rejected(format!(
                "product of the tuple is {}, not the identity",
                self.total_product()
            )));
        }
        if !self.generates() {
            return Err(Error::rejected(format!(
                "entries generate a proper subgroup of order {}",
                self.group
                    .generated_subgroup(&self.all_entries().collect::<Vec<_>>())
                    .order()
            )));
        }
        Ok(())
    }

    /// Canonical key under simultaneous conjugation plus permutations of
    /// branch entries of equal order. Two vectors are equivalent exactly
    /// when their keys coincide.
    pub fn equivalence_key(&self) -> EquivalenceKey {
        let g = self.group;
        let orders: Vec<u32> = self
            .branch_entries
            .iter()
            .map(|&c| g.element_order(c))
            .collect();
        let mut best: Option<EquivalenceKey> = None;
        for &conj in g.elements().iter() {
            let pairs: Vec<(GroupElement, GroupElement)> = self
                .hyperbolic_pairs
                .iter()
                .map(|&(a, b)| (g.conjugate(conj, a), g.conjugate(conj, b)))
                .collect();
            let mut branch: Vec<GroupElement> = self
                .branch_entries
                .iter()
                .map(|&c| g.conjugate(conj, c))
                .collect();
            sort_equal_order_runs(&mut branch, &orders);
            let candidate = EquivalenceKey { pairs, branch };
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
        best.unwrap_or(EquivalenceKey {
            pairs: Vec::new(),
            branch: Vec::new(),
        })
    }
}

impl fmt::Display for GeneratingVector {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<String> = self
            .hyperbolic_pairs
            .iter()
            .map(|(a, b)| format!("[{a},{b}]"))
            .collect();
        pieces.extend(self.branch_entries.iter().map(|c| c.to_string()));
        write!(out, "({})", pieces.join(", "))
    }
}

/// Canonical equivalence-class label for a generating vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EquivalenceKey {
    pairs: Vec<(GroupElement, GroupElement)>,
    branch: Vec<GroupElement>,
}

fn sort_equal_order_runs(branch: &mut [GroupElement], orders: &[u32]) {
    let mut start = 0;
    while start < branch.len() {
        let mut end = start + 1;
        while end < branch.len() && orders[end] == orders[start] {
            end += 1;
        }
        branch[start..end].sort_unstable();
        start = end;
    }
}

/// Covering-curve genus from the group order and a branching signature.
///
/// Solves `2h - 2 = N(2g' - 2) + N * sum(1 - 1/m_i)` for `h` and returns
/// it only when the result is a non-negative integer; everything else is
/// reported as not realizable.
pub fn rh_genus(order: u32, sig: &Signature) -> Result<u32> {
    if order == 0 {
        return Err(Error::domain("rh_genus", "group order must be positive"));
    }
    let order = i128::from(order);
    // Running value of 2h - 2 as an exact fraction num/den.
    let mut num: i128 = order * (2 * i128::from(sig.base_genus()) - 2);
    let mut den: i128 = 1;
    for &m in sig.periods() {
        let m = i128::from(m);
        num = num * m + den * (order * (m - 1));
        den *= m;
        let d = gcd128(num.abs(), den);
        num /= d;
        den /= d;
    }
    if den != 1 || num % 2 != 0 {
        return Err(Error::NotRealizable {
            reason: format!("genus count for {sig} over a group of order {order} is not an integer"),
        });
    }
    let h2 = num + 2;
    if h2 < 0 {
        return Err(Error::NotRealizable {
            reason: format!(
                "genus count for {sig} over a group of order {order} is negative ({})",
                h2 / 2
            ),
        });
    }
    Ok((h2 / 2) as u32)
}

fn gcd128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.max(1)
    } else {
        gcd128(b, a % b)
    }
}

/// Branch points of a vector grouped by the conjugacy class of the cyclic
/// subgroup their entries generate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchTally {
    pub entries: Vec<BranchTallyEntry>,
}

/// One stabilizer class in a branch tally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchTallyEntry {
    /// Canonical generator of the canonical subgroup in its class.
    pub representative: GroupElement,
    /// Order of the stabilizer (the branch period).
    pub order: u32,
    /// Number of branch points with this stabilizer class.
    pub count: u32,
}

/// Canonical representative element for the conjugacy class of the cyclic
/// subgroup generated by `c`: the smallest generator of the smallest
/// conjugate subgroup.
pub fn subgroup_class_representative(group: GroupDescriptor, c: GroupElement) -> GroupElement {
    let order = group.element_order(c);
    let canonical = group
        .elements()
        .iter()
        .map(|&g| group.generated_subgroup(&[group.conjugate(g, c)]))
        .min()
        .expect("groups are non-empty");
    canonical
        .elements()
        .iter()
        .copied()
        .find(|&e| group.element_order(e) == order)
        .expect("a cyclic subgroup contains a generator of its own order")
}

/// Tallies the branch entries of a vector by stabilizer class.
pub fn branch_tally(v: &GeneratingVector) -> BranchTally {
    let mut counts: BTreeMap<(std::cmp::Reverse<u32>, GroupElement), u32> = BTreeMap::new();
    for &c in &v.branch_entries {
        let rep = subgroup_class_representative(v.group, c);
        let order = v.group.element_order(c);
        *counts.entry((std::cmp::Reverse(order), rep)).or_insert(0) += 1;
    }
    BranchTally {
        entries: counts
            .into_iter()
            .map(|((rev_order, representative), count)| BranchTallyEntry {
                representative,
                order: rev_order.0,
                count,
            })
            .collect(),
    }
}

/// Result of an exhaustive vector search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSearch {
    /// One representative per equivalence class, in canonical key order.
    pub vectors: Vec<GeneratingVector>,
    /// True when the search stopped at the cap before exhausting the space.
    pub truncated: bool,
}

/// Enumerates all valid generating vectors with the given signature, one
/// representative per equivalence class (simultaneous conjugation plus
/// permutation of equal-order branch entries), in deterministic order.
///
/// Entries are explored in element enumeration order and the final branch
/// slot is forced by the product-one constraint, so the representative kept
/// for each class is the first tuple found in that order. The search stops
/// with `truncated = true` once `cap` classes have been collected.
pub fn search_vectors(
    group: GroupDescriptor,
    sig: &Signature,
    cap: usize,
) -> Result<VectorSearch> {
    rh_genus(group.order(), sig)?;
    let slot_values: Vec<Vec<GroupElement>> = sig
        .periods()
        .iter()
        .map(|&m| group.elements_of_order(m))
        .collect();
    let mut found: BTreeMap<EquivalenceKey, GeneratingVector> = BTreeMap::new();
    let mut truncated = false;
    if slot_values.iter().any(|vals| vals.is_empty()) {
        return Ok(VectorSearch {
            vectors: Vec::new(),
            truncated,
        });
    }

    let all = group.elements();
    let pair_count = sig.base_genus() as usize;
    let mut hyp: Vec<(GroupElement, GroupElement)> = Vec::with_capacity(pair_count);
    let mut branch: Vec<GroupElement> = Vec::with_capacity(sig.periods().len());

    fn branch_dfs(
        group: GroupDescriptor,
        sig: &Signature,
        slot_values: &[Vec<GroupElement>],
        hyp: &[(GroupElement, GroupElement)],
        branch: &mut Vec<GroupElement>,
        prefix: GroupElement,
        cap: usize,
        found: &mut BTreeMap<EquivalenceKey, GeneratingVector>,
        truncated: &mut bool,
    ) {
        if *truncated {
            return;
        }
        let slot = branch.len();
        let total = slot_values.len();
        let accept = |entry: GroupElement,
                          branch: &mut Vec<GroupElement>,
                          found: &mut BTreeMap<EquivalenceKey, GeneratingVector>,
                          truncated: &mut bool| {
            branch.push(entry);
            let candidate = GeneratingVector {
                group,
                base_genus: sig.base_genus(),
                hyperbolic_pairs: hyp.to_vec(),
                branch_entries: branch.clone(),
            };
            if candidate.generates() {
                let key = candidate.equivalence_key();
                found.entry(key).or_insert(candidate);
                if found.len() >= cap {
                    *truncated = true;
                }
            }
            branch.pop();
        };
        if slot + 1 == total {
            // The last entry is forced by the product-one constraint.
            let required = group.inverse(prefix);
            if group.element_order(required) == sig.periods()[slot] {
                accept(required, branch, found, truncated);
            }
            return;
        }
        if total == 0 {
            if prefix.is_identity() {
                let candidate = GeneratingVector {
                    group,
                    base_genus: sig.base_genus(),
                    hyperbolic_pairs: hyp.to_vec(),
                    branch_entries: Vec::new(),
                };
                if candidate.generates() {
                    let key = candidate.equivalence_key();
                    found.entry(key).or_insert(candidate);
                    if found.len() >= cap {
                        *truncated = true;
                    }
                }
            }
            return;
        }
        for &entry in &slot_values[slot] {
            if *truncated {
                return;
            }
            branch.push(entry);
            branch_dfs(
                group,
                sig,
                slot_values,
                hyp,
                branch,
                group.mul(prefix, entry),
                cap,
                found,
                truncated,
            );
            branch.pop();
        }
    }

    fn hyp_dfs(
        group: GroupDescriptor,
        sig: &Signature,
        slot_values: &[Vec<GroupElement>],
        all: &[GroupElement],
        pair_count: usize,
        hyp: &mut Vec<(GroupElement, GroupElement)>,
        branch: &mut Vec<GroupElement>,
        cap: usize,
        found: &mut BTreeMap<EquivalenceKey, GeneratingVector>,
        truncated: &mut bool,
    ) {
        if *truncated {
            return;
        }
        if hyp.len() == pair_count {
            let mut prefix = group.identity();
            for &(a, b) in hyp.iter() {
                let comm = group.mul(group.mul(a, b), group.mul(group.inverse(a), group.inverse(b)));
                prefix = group.mul(prefix, comm);
            }
            branch_dfs(
                group, sig, slot_values, hyp, branch, prefix, cap, found, truncated,
            );
            return;
        }
        for &a in all {
            for &b in all {
                if *truncated {
                    return;
                }
                hyp.push((a, b));
                hyp_dfs(
                    group, sig, slot_values, all, pair_count, hyp, branch, cap, found, truncated,
                );
                hyp.pop();
            }
        }
    }

    hyp_dfs(
        group,
        sig,
        &slot_values,
        &all,
        pair_count,
        &mut hyp,
        &mut branch,
        cap.max(1),
        &mut found,
        &mut truncated,
    );

    Ok(VectorSearch {
        vectors: found.into_values().collect(),
        truncated,
    })
}

/// All branching signatures over `group` with the given base genus whose
/// covering genus is an integer between 0 and `h_max`, with at most
/// `points_max` branch points. Periods range over the element orders of
/// the group that are at least 2 (each of which divides the group order),
/// since a branch period is the order of a stabilizer generator.
pub fn signature_candidates_from_base(
    group: GroupDescriptor,
    base_genus: u32,
    h_max: u32,
    points_max: u32,
) -> Vec<Signature> {
    let order = i64::from(group.order());
    let divisors: Vec<u32> = {
        let orders: std::collections::BTreeSet<u32> = group
            .elements()
            .iter()
            .map(|&e| group.element_order(e))
            .filter(|&m| m >= 2)
            .collect();
        orders.into_iter().collect()
    };
    // Contributions to 2h - 2 are integers because each period divides
    // the group order.
    let base = order * (2 * i64::from(base_genus) - 2);
    let budget = 2 * i64::from(h_max) - 2;
    let mut picked: Vec<u32> = Vec::new();
    let mut out: Vec<Signature> = Vec::new();

    fn recurse(
        order: i64,
        divisors: &[u32],
        from: usize,
        left: u32,
        running: i64,
        budget: i64,
        base_genus: u32,
        picked: &mut Vec<u32>,
        out: &mut Vec<Signature>,
    ) {
        if !picked.is_empty() && running % 2 == 0 && running >= -2 && running <= budget {
            let mut periods = picked.clone();
            periods.sort_unstable_by(|a, b| b.cmp(a));
            out.push(Signature {
                base_genus,
                periods,
            });
        }
        if left == 0 {
            return;
        }
        for (offset, &m) in divisors[from..].iter().enumerate() {
            let next = running + (order - order / i64::from(m));
            if next > budget {
                continue;
            }
            picked.push(m);
            recurse(
                order,
                divisors,
                from + offset,
                left - 1,
                next,
                budget,
                base_genus,
                picked,
                out,
            );
            picked.pop();
        }
    }

    recurse(
        order,
        &divisors,
        0,
        points_max,
        base,
        budget,
        base_genus,
        &mut picked,
        &mut out,
    );
    out.sort_unstable_by(|a, b| {
        (a.periods.len(), &a.periods).cmp(&(b.periods.len(), &b.periods))
    });
    out.dedup();
    out
}

/// Genus-zero-base signature candidates; see
/// [`signature_candidates_from_base`].
pub fn signature_candidates(
    group: GroupDescriptor,
    h_max: u32,
    points_max: u32,
) -> Vec<Signature> {
    signature_candidates_from_base(group, 0, h_max, points_max)
}
