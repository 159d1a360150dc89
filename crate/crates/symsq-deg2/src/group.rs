//! Dihedral and cyclic groups in coordinate normal form.
//!
//! Elements are pairs `(rot, refl)`: `r^rot` for rotations and
//! `r^rot*f` for reflections, where `r` is the distinguished rotation of
//! maximal order and `f` the distinguished reflection. Cyclic groups use
//! the same shape with `refl` pinned to `false`. All group arithmetic
//! reduces `rot` modulo the rotation order, so every operation is total
//! on coordinates; membership checks happen at parse and validation
//! boundaries.
//!
//! Groups here are tiny (order at most a few dozen), so conjugacy classes,
//! normalizers, and generated subgroups are all computed by exhaustive
//! enumeration.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group supported by the engine: dihedral of order `2n` (with
/// rotation subgroup of order `n`) or cyclic of order `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum GroupDescriptor {
    /// Dihedral group with `n`-element rotation subgroup (order `2n`).
    Dihedral { n: u32 },
    /// Cyclic group of order `m`.
    Cyclic { m: u32 },
}

/// A group element in normal form.
///
/// `rot` is the exponent of the rotation generator `r`; `refl` marks the
/// presence of the reflection generator `f`. The identity is `(0, false)`.
/// Elements order reflections after rotations, then by exponent, which
/// fixes the deterministic enumeration order used everywhere in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct GroupElement {
    pub rot: u32,
    pub refl: bool,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        rot: 0,
        refl: false,
    };

    pub fn rotation(rot: u32) -> Self {
        GroupElement { rot, refl: false }
    }

    pub fn reflection(rot: u32) -> Self {
        GroupElement { rot, refl: true }
    }

    pub fn is_identity(&self) -> bool {
        self.rot == 0 && !self.refl
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.refl, self.rot).cmp(&(other.refl, other.rot))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rot, self.refl) {
            (0, false) => write!(out, "1"),
            (1, false) => write!(out, "r"),
            (k, false) => write!(out, "r^{k}"),
            (0, true) => write!(out, "f"),
            (1, true) => write!(out, "r*f"),
            (k, true) => write!(out, "r^{k}*f"),
        }
    }
}

impl From<GroupElement> for String {
    fn from(e: GroupElement) -> String {
        e.to_string()
    }
}

impl FromStr for GroupElement {
    type Err = Error;

    /// Parses `1`, `r`, `r^k`, `f`, `r*f`, and `r^k*f` (whitespace ignored).
    fn from_str(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |detail: &str| Error::Parse {
            input: text.to_string(),
            detail: detail.to_string(),
        };
        if compact == "1" {
            return Ok(GroupElement::IDENTITY);
        }
        let (rot_part, refl) = match compact.strip_suffix("*f") {
            Some(rest) => (rest, true),
            None if compact == "f" => ("", true),
            None => (compact.as_str(), false),
        };
        let rot = match rot_part {
            "" => 0,
            "r" => 1,
            _ => {
                let exp = rot_part
                    .strip_prefix("r^")
                    .ok_or_else(|| err("expected 1, r, r^k, f, r*f, or r^k*f"))?;
                exp.parse::<u32>()
                    .map_err(|_| err("rotation exponent must be a non-negative integer"))?
            }
        };
        Ok(GroupElement { rot, refl })
    }
}

impl TryFrom<String> for GroupElement {
    type Error = Error;

    fn try_from(text: String) -> Result<Self> {
        text.parse()
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Dihedral { n } => write!(out, "D{n}"),
            GroupDescriptor::Cyclic { m } => write!(out, "Z/{m}"),
        }
    }
}

impl From<GroupDescriptor> for String {
    fn from(g: GroupDescriptor) -> String {
        g.to_string()
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    /// Parses `D<n>` for dihedral groups and `Z/<m>` for cyclic groups.
    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let err = |detail: &str| Error::Parse {
            input: text.to_string(),
            detail: detail.to_string(),
        };
        if let Some(n) = trimmed.strip_prefix('D') {
            let n: u32 = n
                .parse()
                .map_err(|_| err("expected D<n> with a positive integer n"))?;
            return GroupDescriptor::dihedral(n);
        }
        if let Some(m) = trimmed.strip_prefix("Z/") {
            let m: u32 = m
                .parse()
                .map_err(|_| err("expected Z/<m> with a positive integer m"))?;
            return GroupDescriptor::cyclic(m);
        }
        Err(err("expected D<n> or Z/<m>"))
    }
}

impl TryFrom<String> for GroupDescriptor {
    type Error = Error;

    fn try_from(text: String) -> Result<Self> {
        text.parse()
    }
}

impl GroupDescriptor {
    /// Dihedral group of order `2n`.
    pub fn dihedral(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config {
                detail: "dihedral rotation order must be positive".into(),
            });
        }
        Ok(GroupDescriptor::Dihedral { n })
    }

    /// Cyclic group of order `m`.
    pub fn cyclic(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Config {
                detail: "cyclic order must be positive".into(),
            });
        }
        Ok(GroupDescriptor::Cyclic { m })
    }

    /// Group order: `2n` for dihedral, `m` for cyclic.
    pub fn order(&self) -> u32 {
        match self {
            GroupDescriptor::Dihedral { n } => 2 * n,
            GroupDescriptor::Cyclic { m } => *m,
        }
    }

    /// Order of the rotation generator `r`.
    pub fn rotation_order(&self) -> u32 {
        match self {
            GroupDescriptor::Dihedral { n } => *n,
            GroupDescriptor::Cyclic { m } => *m,
        }
    }

    pub fn is_dihedral(&self) -> bool {
        matches!(self, GroupDescriptor::Dihedral { .. })
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    /// The rotation generator `r`.
    pub fn rotation_generator(&self) -> GroupElement {
        GroupElement::rotation(1 % self.rotation_order())
    }

    /// The distinguished reflection `f` (dihedral groups only).
    pub fn reflection_generator(&self) -> Result<GroupElement> {
        match self {
            GroupDescriptor::Dihedral { .. } => Ok(GroupElement::reflection(0)),
            GroupDescriptor::Cyclic { .. } => Err(Error::domain(
                "reflection_generator",
                format!("{self} has no reflections"),
            )),
        }
    }

    /// All elements in enumeration order: rotations by exponent, then
    /// reflections by exponent.
    pub fn elements(&self) -> Vec<GroupElement> {
        let n = self.rotation_order();
        let mut all: Vec<GroupElement> = (0..n).map(GroupElement::rotation).collect();
        if self.is_dihedral() {
            all.extend((0..n).map(GroupElement::reflection));
        }
        all
    }

    /// Dense index of an element, for table lookups.
    pub(crate) fn element_index(&self, e: GroupElement) -> usize {
        let n = self.rotation_order();
        let e = self.normalize(e);
        e.rot as usize + if e.refl { n as usize } else { 0 }
    }

    /// Reduces the rotation exponent modulo the rotation order.
    pub fn normalize(&self, e: GroupElement) -> GroupElement {
        GroupElement {
            rot: e.rot % self.rotation_order(),
            refl: e.refl,
        }
    }

    /// Checks that an element's coordinates lie in this group.
    pub fn check_element(&self, e: GroupElement) -> Result<()> {
        if e.refl && !self.is_dihedral() {
            return Err(Error::InvalidElement {
                group: self.to_string(),
                element: e.to_string(),
                detail: "cyclic groups have no reflections".into(),
            });
        }
        if e.rot >= self.rotation_order() {
            return Err(Error::InvalidElement {
                group: self.to_string(),
                element: e.to_string(),
                detail: format!(
                    "rotation exponent must be below {}",
                    self.rotation_order()
                ),
            });
        }
        Ok(())
    }

    /// Group product in normal form.
    ///
    /// For dihedral groups, `(r^a f^x)(r^b f^y) = r^(a + (-1)^x b) f^(x+y)`.
    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let n = i64::from(self.rotation_order());
        let (a, b) = (self.normalize(a), self.normalize(b));
        let signed_b = if a.refl {
            -i64::from(b.rot)
        } else {
            i64::from(b.rot)
        };
        let rot = (i64::from(a.rot) + signed_b).rem_euclid(n) as u32;
        GroupElement {
            rot,
            refl: a.refl ^ b.refl,
        }
    }

    /// Inverse in normal form.
    pub fn inverse(&self, a: GroupElement) -> GroupElement {
        let n = self.rotation_order();
        let a = self.normalize(a);
        if a.refl {
            a
        } else {
            GroupElement::rotation((n - a.rot) % n)
        }
    }

    /// Integer power `a^k`, with negative exponents meaning inverse powers.
    pub fn power(&self, a: GroupElement, k: i64) -> GroupElement {
        let (base, mut k) = if k < 0 {
            (self.inverse(a), -k)
        } else {
            (a, k)
        };
        let mut acc = GroupElement::IDENTITY;
        let mut sq = self.normalize(base);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            k >>= 1;
        }
        acc
    }

    /// Conjugate `g a g^-1`.
    pub fn conjugate(&self, g: GroupElement, a: GroupElement) -> GroupElement {
        self.mul(self.mul(g, a), self.inverse(g))
    }

    /// Least `k >= 1` with `a^k = 1`.
    pub fn element_order(&self, a: GroupElement) -> u32 {
        let a = self.normalize(a);
        if a.refl {
            return 2;
        }
        if a.rot == 0 {
            return 1;
        }
        let n = self.rotation_order();
        n / gcd(n, a.rot)
    }

    /// Exact conjugation orbit of `a`, sorted.
    pub fn conjugacy_class(&self, a: GroupElement) -> Vec<GroupElement> {
        let a = self.normalize(a);
        let mut class: Vec<GroupElement> =
            self.elements().iter().map(|&g| self.conjugate(g, a)).collect();
        class.sort();
        class.dedup();
        class
    }

    /// Whether `a` and `b` are conjugate in this group.
    pub fn are_conjugate(&self, a: GroupElement, b: GroupElement) -> bool {
        let b = self.normalize(b);
        self.elements().iter().any(|&g| self.conjugate(g, a) == b)
    }

    /// Order of the normalizer of the cyclic subgroup generated by `a`.
    ///
    /// Fails on the identity: its normalizer is the whole group, and asking
    /// for it almost always signals a misused fixed-point formula.
    pub fn normalizer_order(&self, a: GroupElement) -> Result<u32> {
        let a = self.normalize(a);
        if a.is_identity() {
            return Err(Error::domain(
                "normalizer_order",
                "the identity's normalizer is the whole group".to_string(),
            ));
        }
        let sub = self.generated_subgroup(&[a]);
        let count = self
            .elements()
            .iter()
            .filter(|&&g| {
                sub.elements()
                    .iter()
                    .all(|&s| sub.contains(self.conjugate(g, s)))
            })
            .count();
        Ok(count as u32)
    }

    /// Closure of a generating set under product and inverse.
    pub fn generated_subgroup(&self, generators: &[GroupElement]) -> Subgroup {
        let mut members = vec![GroupElement::IDENTITY];
        let mut frontier: Vec<GroupElement> =
            generators.iter().map(|&g| self.normalize(g)).collect();
        while let Some(next) = frontier.pop() {
            if members.contains(&next) {
                continue;
            }
            members.push(next);
            for &m in members.clone().iter() {
                for candidate in [self.mul(m, next), self.mul(next, m)] {
                    if !members.contains(&candidate) {
                        frontier.push(candidate);
                    }
                }
            }
            frontier.push(self.inverse(next));
        }
        members.sort();
        Subgroup { elements: members }
    }

    /// All involutions (elements of order 2), sorted.
    pub fn involutions(&self) -> Vec<GroupElement> {
        self.elements()
            .into_iter()
            .filter(|&e| self.element_order(e) == 2)
            .collect()
    }

    /// Elements of a given order, sorted.
    pub fn elements_of_order(&self, order: u32) -> Vec<GroupElement> {
        self.elements()
            .into_iter()
            .filter(|&e| self.element_order(e) == order)
            .collect()
    }
}

/// A subgroup, stored as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    elements: Vec<GroupElement>,
}

impl Subgroup {
    /// The trivial subgroup.
    pub fn trivial() -> Self {
        Subgroup {
            elements: vec![GroupElement::IDENTITY],
        }
    }

    /// The whole group as a subgroup of itself.
    pub fn full(group: GroupDescriptor) -> Self {
        let mut elements = group.elements();
        elements.sort();
        Subgroup { elements }
    }

    /// The cyclic subgroup generated by one element.
    pub fn cyclic(group: GroupDescriptor, a: GroupElement) -> Self {
        group.generated_subgroup(&[a])
    }

    pub fn order(&self) -> u32 {
        self.elements.len() as u32
    }

    pub fn contains(&self, e: GroupElement) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn is_full(&self, group: GroupDescriptor) -> bool {
        self.order() == group.order()
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
