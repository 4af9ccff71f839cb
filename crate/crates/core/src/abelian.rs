//! Finite abelian groups presented as products of cyclic groups.
//!
//! Groups are written additively and used exactly as presented: no Smith
//! normal form is computed, so `Z/2 x Z/3` and `Z/6` are different values.
//! Elements are enumerated lexicographically over their residues, identity
//! first, and every dense table in the crate is indexed in that order.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qforms::QZValue;

/// A finite abelian group `Z/n_1 x ... x Z/n_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupSpec", into = "GroupSpec")]
pub struct FiniteAbelianGroup {
    cyclic_factors: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GroupSpec {
    cyclic_factors: Vec<u64>,
}

impl TryFrom<GroupSpec> for FiniteAbelianGroup {
    type Error = Error;

    fn try_from(spec: GroupSpec) -> Result<Self> {
        FiniteAbelianGroup::new(spec.cyclic_factors)
    }
}

impl From<FiniteAbelianGroup> for GroupSpec {
    fn from(g: FiniteAbelianGroup) -> Self {
        GroupSpec { cyclic_factors: g.cyclic_factors }
    }
}

/// An element of a [`FiniteAbelianGroup`], stored as reduced residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FiniteAbelianGroup {
    pub fn new(cyclic_factors: Vec<u64>) -> Result<Self> {
        if cyclic_factors.contains(&0) {
            return Err(Error::InvalidGroup(cyclic_factors));
        }
        Ok(Self { cyclic_factors })
    }

    /// `Z/n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    /// The trivial group presented as `Z/1`.
    pub fn trivial() -> Self {
        Self { cyclic_factors: vec![1] }
    }

    pub fn cyclic_factors(&self) -> &[u64] {
        &self.cyclic_factors
    }

    pub fn rank(&self) -> usize {
        self.cyclic_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.cyclic_factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.cyclic_factors.iter().fold(1, |acc, &n| acc.lcm(&n))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// True when the group is presented with at most one non-trivial factor.
    pub fn is_cyclic_presentation(&self) -> bool {
        self.cyclic_factors.iter().filter(|&&n| n > 1).count() <= 1
    }

    /// Direct product; element order is lexicographic with `self` first.
    pub fn product(&self, other: &Self) -> Self {
        let mut factors = self.cyclic_factors.clone();
        factors.extend_from_slice(&other.cyclic_factors);
        Self { cyclic_factors: factors }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// Builds an element, reducing each residue mod its factor.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.rank() {
            return Err(Error::ElementMismatch {
                element: residues.iter().map(|&r| r as u64).collect(),
                factors: self.cyclic_factors.clone(),
            });
        }
        Ok(GroupElement(
            residues.iter().zip(&self.cyclic_factors).map(|(&r, &n)| r.rem_euclid(n as i64) as u64).collect(),
        ))
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.0.len() == self.rank() && a.0.iter().zip(&self.cyclic_factors).all(|(&r, &n)| r < n)
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ElementMismatch { element: a.0.clone(), factors: self.cyclic_factors.clone() })
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&b.0).zip(&self.cyclic_factors).map(|((&x, &y), &n)| (x + y) % n).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.neg_unchecked(a))
    }

    pub(crate) fn neg_unchecked(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&self.cyclic_factors).map(|(&x, &n)| (n - x) % n).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub fn scalar_mul(&self, k: i64, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.scalar_mul_unchecked(k, a))
    }

    pub(crate) fn scalar_mul_unchecked(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.cyclic_factors)
                .map(|(&x, &n)| {
                    let n = n as i128;
                    ((k as i128 * x as i128).rem_euclid(n)) as u64
                })
                .collect(),
        )
    }

    /// Position of `a` in [`elements`](Self::elements).
    pub fn index_of(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        Ok(self.index_unchecked(a))
    }

    pub(crate) fn index_unchecked(&self, a: &GroupElement) -> usize {
        a.0.iter().zip(&self.cyclic_factors).fold(0u64, |acc, (&r, &n)| acc * n + r) as usize
    }

    /// Inverse of [`index_of`](Self::index_of).
    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut residues = vec![0; self.rank()];
        for (slot, &n) in residues.iter_mut().zip(&self.cyclic_factors).rev() {
            *slot = index as u64 % n;
            index /= n as usize;
        }
        GroupElement(residues)
    }

    /// All elements in lexicographic order, identity first.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order() as usize).map(|i| self.element_at(i)).collect()
    }

    /// `|{g : k g = h}|`, counted by brute force.
    pub fn power_count(&self, k: u64, h: &GroupElement) -> Result<u64> {
        self.check(h)?;
        let k = k as i64;
        Ok(self.elements().iter().filter(|g| &self.scalar_mul_unchecked(k, g) == h).count() as u64)
    }

    /// Number of `k`-th roots of the identity, `prod_i gcd(k, n_i)`.
    pub fn power_count_identity(&self, k: u64) -> u64 {
        self.cyclic_factors.iter().map(|&n| k.gcd(&n)).product()
    }

    /// Phase of the character `chi_h` at `g` under the standard pairing
    /// `sum_i h_i g_i / n_i`.
    pub fn character_value(&self, h: &GroupElement, g: &GroupElement) -> Result<QZValue> {
        self.check(h)?;
        self.check(g)?;
        Ok(self.character_unchecked(h, g))
    }

    pub(crate) fn character_unchecked(&self, h: &GroupElement, g: &GroupElement) -> QZValue {
        h.0.iter()
            .zip(&g.0)
            .zip(&self.cyclic_factors)
            .fold(QZValue::zero(), |acc, ((&a, &b), &n)| acc + QZValue::new(((a * b) % n) as i64, n))
    }

    /// Representative of `{a, -a}`: the lexicographically smaller one.
    pub fn canonical_pair_rep(&self, a: &GroupElement) -> GroupElement {
        let b = self.neg_unchecked(a);
        if b < *a {
            b
        } else {
            a.clone()
        }
    }

    /// Representatives of the unordered pairs `{a, -a}` with `a != 0`, in
    /// element order.
    pub fn nonzero_pair_reps(&self) -> Vec<GroupElement> {
        self.elements().into_iter().skip(1).filter(|a| self.canonical_pair_rep(a) == *a).collect()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cyclic_factors.is_empty() {
            return write!(f, "Z/1");
        }
        let parts: Vec<String> = self.cyclic_factors.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}
