//! Based rings with non-negative integer structure constants.
//!
//! `N[i][j][k]` is the multiplicity of `b_k` in `b_i b_j`. Labels are
//! canonical strings: `g:(1,2)` for a group element, `rho` for the
//! near-group object and `grho:(2)` for the Haagerup–Izumi object `g rho`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::abelian::{FiniteAbelianGroup, GroupElement};
use crate::error::{Error, Result};

const FP_TOLERANCE: f64 = 1e-9;
const FP_MAX_ITERATIONS: usize = 100_000;
const MAX_REPORTED_VIOLATIONS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RingSpec", into = "RingSpec")]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    n: Vec<u32>,
}

/// JSON shape: labels, unit index, dual permutation and the dense tensor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingSpec {
    pub labels: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    pub n: Vec<Vec<Vec<u32>>>,
}

impl TryFrom<RingSpec> for FusionRing {
    type Error = Error;

    fn try_from(spec: RingSpec) -> Result<Self> {
        let r = spec.labels.len();
        let shaped = spec.n.len() == r && spec.n.iter().all(|row| row.len() == r && row.iter().all(|v| v.len() == r));
        if !shaped {
            return Err(Error::InvalidRing(format!("tensor is not {r}x{r}x{r}")));
        }
        let flat = spec.n.into_iter().flatten().flatten().collect();
        FusionRing::from_parts(spec.labels, spec.unit, spec.dual, flat)
    }
}

impl From<FusionRing> for RingSpec {
    fn from(ring: FusionRing) -> Self {
        let r = ring.rank();
        let n = (0..r).map(|i| (0..r).map(|j| (0..r).map(|k| ring.n(i, j, k)).collect()).collect()).collect();
        RingSpec { labels: ring.labels, unit: ring.unit, dual: ring.dual, n }
    }
}

/// Which displayed reading of the Haagerup–Izumi product to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HiReading {
    /// `(g rho)(h rho) = (g - h) + sum_a a rho`.
    SumOverGroup,
    /// `(g rho)(h rho) = (g - h) + |G| g rho`, the summand taken literally.
    Literal,
}

/// One failed ring axiom.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    Unit { i: usize, j: usize },
    Associativity { i: usize, j: usize, k: usize, l: usize, left: u64, right: u64 },
    Duality { i: usize, j: usize },
    DualInvolution { i: usize },
    FrobeniusPerron { detail: String },
}

/// Result of [`verify_ring`]; empty means every axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RingReport {
    pub violations: Vec<Violation>,
    /// Violations found beyond the reported ones.
    pub suppressed: usize,
}

impl RingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_associativity_violation(&self) -> bool {
        self.violations.iter().any(|v| matches!(v, Violation::Associativity { .. }))
    }

    fn push(&mut self, v: Violation) {
        if self.violations.len() < MAX_REPORTED_VIOLATIONS {
            self.violations.push(v);
        } else {
            self.suppressed += 1;
        }
    }
}

impl FusionRing {
    /// Assembles a ring from raw data; only shapes and index ranges are checked.
    pub fn from_parts(labels: Vec<String>, unit: usize, dual: Vec<usize>, n: Vec<u32>) -> Result<Self> {
        let r = labels.len();
        if r == 0 {
            return Err(Error::InvalidRing("empty basis".into()));
        }
        if unit >= r {
            return Err(Error::InvalidRing(format!("unit index {unit} out of range")));
        }
        if dual.len() != r || dual.iter().any(|&d| d >= r) {
            return Err(Error::InvalidRing("dual is not a map on the basis".into()));
        }
        if n.len() != r * r * r {
            return Err(Error::InvalidRing(format!("tensor has {} entries, expected {}", n.len(), r * r * r)));
        }
        Ok(Self { labels, unit, dual, n })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.rank();
        self.n[(i * r + j) * r + k]
    }

    /// A copy with one structure constant replaced.
    pub fn with_entry(&self, i: usize, j: usize, k: usize, value: u32) -> Self {
        let r = self.rank();
        let mut out = self.clone();
        out.n[(i * r + j) * r + k] = value;
        out
    }

    /// Decomposition of `b_i b_j` as (label, multiplicity) pairs.
    pub fn product(&self, i: usize, j: usize) -> Vec<(&str, u32)> {
        (0..self.rank()).filter(|&k| self.n(i, j, k) > 0).map(|k| (self.label(k), self.n(i, j, k))).collect()
    }

    /// Frobenius–Perron dimensions in basis order, normalized so `d_unit = 1`.
    pub fn fp_dims(&self) -> Result<Vec<f64>> {
        let r = self.rank();
        // M[k][j] = sum_i N[i][j][k]; shifted by the identity so that the
        // dominant eigenvalue is strictly largest in modulus.
        let mut m = vec![0.0f64; r * r];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    m[k * r + j] += self.n(i, j, k) as f64;
                }
            }
        }
        for k in 0..r {
            m[k * r + k] += 1.0;
        }
        let mut v = vec![1.0f64; r];
        for _ in 0..FP_MAX_ITERATIONS {
            let mut w = vec![0.0f64; r];
            for k in 0..r {
                w[k] = (0..r).map(|j| m[k * r + j] * v[j]).sum();
            }
            let scale = w[self.unit];
            if !(scale.is_finite() && scale > 0.0) {
                return Err(Error::NoConvergence(FP_MAX_ITERATIONS));
            }
            w.iter_mut().for_each(|x| *x /= scale);
            let delta = v.iter().zip(&w).map(|(a, b)| (a - b).abs() / b.abs().max(1.0)).fold(0.0, f64::max);
            v = w;
            if delta < 1e-13 {
                return Ok(v);
            }
        }
        Err(Error::NoConvergence(FP_MAX_ITERATIONS))
    }

    /// `sum_i d_i^2`.
    pub fn global_fpdim(&self) -> Result<f64> {
        Ok(self.fp_dims()?.iter().map(|d| d * d).sum())
    }

    /// Frobenius–Perron dimensions keyed by label.
    pub fn fp_dim_map(&self) -> Result<BTreeMap<String, f64>> {
        let dims = self.fp_dims()?;
        Ok(self.labels.iter().cloned().zip(dims).collect())
    }
}

pub fn group_label(g: &GroupElement) -> String {
    format!("g:{g}")
}

pub fn rho_label() -> String {
    "rho".to_string()
}

pub fn group_rho_label(g: &GroupElement) -> String {
    format!("grho:{g}")
}

/// `NG(G, m)`: basis `G ∪ {rho}`, `rho g = g rho = rho`, `rho^2 = m rho + sum_h h`.
pub fn make_near_group_ring(group: &FiniteAbelianGroup, m: u32) -> FusionRing {
    let elems = group.elements();
    let size = elems.len();
    let r = size + 1;
    let rho = size;
    let mut n = vec![0u32; r * r * r];
    let idx = |i: usize, j: usize, k: usize| (i * r + j) * r + k;
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            n[idx(i, j, group.index_unchecked(&group.add_unchecked(a, b)))] = 1;
        }
        n[idx(i, rho, rho)] = 1;
        n[idx(rho, i, rho)] = 1;
        n[idx(rho, rho, i)] = 1;
    }
    n[idx(rho, rho, rho)] = m;
    let mut labels: Vec<String> = elems.iter().map(group_label).collect();
    labels.push(rho_label());
    let mut dual: Vec<usize> = elems.iter().map(|g| group.index_unchecked(&group.neg_unchecked(g))).collect();
    dual.push(rho);
    FusionRing { labels, unit: 0, dual, n }
}

/// `HI(G)`: basis `{g} ∪ {g rho}` with `g (h rho) = (g + h) rho`,
/// `(h rho) g = (h - g) rho` and `(g rho)(h rho) = (g - h) + sum_a a rho`.
pub fn make_hi_ring(group: &FiniteAbelianGroup) -> FusionRing {
    make_hi_ring_with(group, HiReading::SumOverGroup)
}

/// The Haagerup–Izumi product with the `rho rho` summand taken as `|G| g rho`.
pub fn make_hi_ring_literal(group: &FiniteAbelianGroup) -> FusionRing {
    make_hi_ring_with(group, HiReading::Literal)
}

pub fn make_hi_ring_with(group: &FiniteAbelianGroup, reading: HiReading) -> FusionRing {
    let elems = group.elements();
    let size = elems.len();
    let r = 2 * size;
    let mut n = vec![0u32; r * r * r];
    let idx = |i: usize, j: usize, k: usize| (i * r + j) * r + k;
    let at = |g: &GroupElement| group.index_unchecked(g);
    for a in &elems {
        for b in &elems {
            let (ia, ib) = (at(a), at(b));
            n[idx(ia, ib, at(&group.add_unchecked(a, b)))] = 1;
            n[idx(ia, size + ib, size + at(&group.add_unchecked(a, b)))] = 1;
            let diff = group.add_unchecked(b, &group.neg_unchecked(a));
            n[idx(size + ib, ia, size + at(&diff))] = 1;
            let g_minus_h = group.add_unchecked(a, &group.neg_unchecked(b));
            n[idx(size + ia, size + ib, at(&g_minus_h))] = 1;
            match reading {
                HiReading::SumOverGroup => {
                    for c in 0..size {
                        n[idx(size + ia, size + ib, size + c)] += 1;
                    }
                }
                HiReading::Literal => {
                    n[idx(size + ia, size + ib, size + ia)] += size as u32;
                }
            }
        }
    }
    let mut labels: Vec<String> = elems.iter().map(group_label).collect();
    labels.extend(elems.iter().map(group_rho_label));
    let mut dual: Vec<usize> = elems.iter().map(|g| at(&group.neg_unchecked(g))).collect();
    dual.extend(size..r);
    FusionRing { labels, unit: 0, dual, n }
}

/// Exhaustive check of the unit, associativity, duality and
/// Frobenius–Perron axioms. Violations are capped; the overflow is counted.
pub fn verify_ring(ring: &FusionRing) -> RingReport {
    let r = ring.rank();
    let u = ring.unit;
    let mut report = RingReport::default();

    for j in 0..r {
        for k in 0..r {
            let want = u32::from(j == k);
            if ring.n(u, j, k) != want || ring.n(j, u, k) != want {
                report.push(Violation::Unit { i: j, j: k });
            }
        }
    }

    // (b_i b_j) b_k against b_i (b_j b_k), coefficient of b_l.
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    let mut left = 0u64;
                    let mut right = 0u64;
                    for m in 0..r {
                        left += ring.n(i, j, m) as u64 * ring.n(m, k, l) as u64;
                        right += ring.n(j, k, m) as u64 * ring.n(i, m, l) as u64;
                    }
                    if left != right {
                        report.push(Violation::Associativity { i, j, k, l, left, right });
                    }
                }
            }
        }
    }

    for i in 0..r {
        if ring.dual[ring.dual[i]] != i {
            report.push(Violation::DualInvolution { i });
        }
        for j in 0..r {
            if ring.n(i, j, u) != u32::from(j == ring.dual[i]) {
                report.push(Violation::Duality { i, j });
            }
        }
    }
    if ring.dual[u] != u {
        report.push(Violation::DualInvolution { i: u });
    }

    match ring.fp_dims() {
        Err(e) => report.push(Violation::FrobeniusPerron { detail: e.to_string() }),
        Ok(d) => {
            if let Some(i) = (0..r).find(|&i| d[i] < 1.0 - FP_TOLERANCE) {
                report.push(Violation::FrobeniusPerron { detail: format!("d[{}] = {} < 1", ring.label(i), d[i]) });
            }
            'outer: for i in 0..r {
                for j in 0..r {
                    let rhs: f64 = (0..r).map(|k| ring.n(i, j, k) as f64 * d[k]).sum();
                    let lhs = d[i] * d[j];
                    if (lhs - rhs).abs() > FP_TOLERANCE * lhs.max(1.0) {
                        report.push(Violation::FrobeniusPerron {
                            detail: format!(
                                "d[{}] d[{}] = {lhs} but the product has dimension {rhs}",
                                ring.label(i),
                                ring.label(j)
                            ),
                        });
                        break 'outer;
                    }
                }
            }
        }
    }
    report
}

pub fn fp_dims(ring: &FusionRing) -> Result<Vec<f64>> {
    ring.fp_dims()
}

pub fn global_fpdim(ring: &FusionRing) -> Result<f64> {
    ring.global_fpdim()
}
