//! Modular-data summaries of Drinfeld centers: for each simple object `X`
//! of `Z(C)` its twist, quantum dimension and the decomposition of its image
//! `F(X)` in the base category.
//!
//! Quantum dimensions are not tabulated independently; they are read off
//! from `F(X)` and the Frobenius–Perron dimensions of the base ring.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::abelian::FiniteAbelianGroup;
use crate::error::{Error, Result};
use crate::fusion::{group_label, group_rho_label, make_hi_ring, make_near_group_ring, rho_label, FusionRing};
use crate::qforms::{prime_power, QZValue, QuadraticForm, TOLERANCE};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CenterObject {
    pub label: String,
    pub twist: QZValue,
    pub qdim: f64,
    pub mult: BTreeMap<String, u32>,
}

/// Outcome of checking `nu_1(rho) = 0` for a spec's quadratic-form data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// The constraint holds for the forms as supplied.
    AsGiven,
    /// The constraint failed as supplied and holds after negating the
    /// auxiliary form (`q'` or `q''`).
    Flipped,
    /// The constraint fails for both orientations; the forms are kept as supplied.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CenterPresentation {
    pub base_ring: FusionRing,
    pub objects: Vec<CenterObject>,
    pub global_qdim: f64,
    pub provenance: Orientation,
}

/// `(label, twist, [(base label, multiplicity)])` before dimensions are filled in.
type RawObject = (String, QZValue, Vec<(String, u32)>);

impl CenterPresentation {
    fn assemble(base_ring: FusionRing, raw: Vec<RawObject>) -> Result<Self> {
        let dims = base_ring.fp_dim_map()?;
        let global_qdim = base_ring.global_fpdim()?;
        let mut objects = Vec::with_capacity(raw.len());
        for (label, twist, parts) in raw {
            let mut mult = BTreeMap::new();
            for (s, c) in parts {
                if !dims.contains_key(&s) {
                    return Err(Error::UnknownLabel(s));
                }
                *mult.entry(s).or_insert(0) += c;
            }
            let qdim = mult.iter().map(|(s, &c)| c as f64 * dims[s]).sum();
            objects.push(CenterObject { label, twist, qdim, mult });
        }
        Ok(Self { base_ring, objects, global_qdim, provenance: Orientation::AsGiven })
    }

    /// `(1/qdim C) sum_V theta_V^k qdim(V) [F(V) : target]`.
    pub fn nu(&self, target: &str, k: i64) -> Result<Complex64> {
        self.base_ring.index_of(target)?;
        let sum: Complex64 = self
            .objects
            .iter()
            .filter_map(|x| {
                let m = *x.mult.get(target)?;
                Some(x.twist.scale(k).to_unit() * (x.qdim * m as f64))
            })
            .sum();
        Ok(sum / self.global_qdim)
    }

    /// lcm of the twist denominators, i.e. the order of the T-matrix.
    pub fn twist_order(&self) -> u64 {
        self.objects.iter().fold(1u64, |acc, x| num_integer::lcm(acc, x.twist.denominator()))
    }

    pub fn object(&self, label: &str) -> Option<&CenterObject> {
        self.objects.iter().find(|x| x.label == label)
    }
}

/// A categorification to be evaluated. The optional `label`, `sign` and
/// `omega` fields name equivalence classes and never enter any formula.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum CategorySpec {
    /// Near-group `NG(G, |G| - 1)` with `|G| + 1 = p^l`.
    NG1 {
        group: FiniteAbelianGroup,
        p: u64,
        zeta1: QZValue,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    /// The exceptional `NG(Z/7, 6)` categorification with `s = -1`.
    NG1X {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    /// Near-group `NG(G, |G|)` with center data `(G, q)` and `(G', q')`.
    NG2 {
        q: QuadraticForm,
        qp: QuadraticForm,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    /// Haagerup–Izumi `HI(G)` with center data `(H, q'')`.
    HI {
        group: FiniteAbelianGroup,
        qpp: QuadraticForm,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sign: Option<i8>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        omega: Option<QZValue>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
}

impl CategorySpec {
    pub fn family(&self) -> &'static str {
        match self {
            CategorySpec::NG1 { .. } => "NG1",
            CategorySpec::NG1X { .. } => "NG1X",
            CategorySpec::NG2 { .. } => "NG2",
            CategorySpec::HI { .. } => "HI",
        }
    }

    pub fn group(&self) -> FiniteAbelianGroup {
        match self {
            CategorySpec::NG1 { group, .. } | CategorySpec::HI { group, .. } => group.clone(),
            CategorySpec::NG1X { .. } => FiniteAbelianGroup::cyclic(7).expect("7 > 0"),
            CategorySpec::NG2 { q, .. } => q.group().clone(),
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            CategorySpec::NG1 { label, .. }
            | CategorySpec::NG1X { label }
            | CategorySpec::NG2 { label, .. }
            | CategorySpec::HI { label, .. } => label.as_deref(),
        }
    }

    /// Basis label of the non-invertible simple `rho` (`e rho` for HI).
    pub fn rho_label(&self) -> String {
        match self {
            CategorySpec::HI { group, .. } => group_rho_label(&group.identity()),
            _ => rho_label(),
        }
    }

    /// Checks the family's size and form constraints.
    pub fn validate(&self) -> Result<()> {
        match self {
            CategorySpec::NG1 { group, p, .. } => {
                if !group.is_cyclic_presentation() {
                    return Err(Error::Inadmissible(format!("NG1 needs a cyclic group, got {group}")));
                }
                match prime_power(group.order() + 1) {
                    Some((prime, _)) if prime == *p => Ok(()),
                    _ => Err(Error::Inadmissible(format!(
                        "NG1 needs |G| + 1 to be a power of p = {p}, got |G| = {}",
                        group.order()
                    ))),
                }
            }
            CategorySpec::NG1X { .. } => Ok(()),
            CategorySpec::NG2 { q, qp, .. } => {
                let n = q.group().order();
                if n % 2 == 0 {
                    return Err(Error::Inadmissible(format!("NG2 needs |G| odd, got {n}")));
                }
                if qp.group().order() != n + 4 {
                    return Err(Error::Inadmissible(format!(
                        "NG2 needs |G'| = |G| + 4 = {}, got {}",
                        n + 4,
                        qp.group().order()
                    )));
                }
                if !q.is_nondegenerate() || !qp.is_nondegenerate() {
                    return Err(Error::DegenerateForm);
                }
                Ok(())
            }
            CategorySpec::HI { group, qpp, .. } => {
                let n = group.order();
                if n % 2 == 0 {
                    return Err(Error::Inadmissible(format!("HI needs |G| odd, got {n}")));
                }
                if qpp.group().order() != n * n + 4 {
                    return Err(Error::Inadmissible(format!(
                        "HI needs |H| = |G|^2 + 4 = {}, got {}",
                        n * n + 4,
                        qpp.group().order()
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn base_ring(&self) -> FusionRing {
        let g = self.group();
        match self {
            CategorySpec::NG1 { .. } | CategorySpec::NG1X { .. } => make_near_group_ring(&g, g.order() as u32 - 1),
            CategorySpec::NG2 { .. } => make_near_group_ring(&g, g.order() as u32),
            CategorySpec::HI { .. } => make_hi_ring(&g),
        }
    }

    /// Center presentation for the data exactly as supplied.
    pub fn raw_center(&self) -> Result<CenterPresentation> {
        self.validate()?;
        match self {
            CategorySpec::NG1 { group, p, zeta1, .. } => center_ng1(group, *p, *zeta1),
            CategorySpec::NG1X { .. } => center_ng1_exceptional7(),
            CategorySpec::NG2 { q, qp, .. } => center_ng2(q, qp),
            CategorySpec::HI { group, qpp, .. } => center_hi(group, qpp),
        }
    }

    /// The same spec with the auxiliary form negated.
    fn flipped(&self) -> Option<Self> {
        match self {
            CategorySpec::NG2 { q, qp, label } => {
                Some(CategorySpec::NG2 { q: q.clone(), qp: qp.negate(), label: label.clone() })
            }
            CategorySpec::HI { group, qpp, sign, omega, label } => Some(CategorySpec::HI {
                group: group.clone(),
                qpp: qpp.negate(),
                sign: *sign,
                omega: *omega,
                label: label.clone(),
            }),
            _ => None,
        }
    }

    /// Enforces `nu_1(rho) = 0`, negating `q'` (NG2) or `q''` (HI) when that
    /// is what makes it hold.
    pub fn calibrate(&self) -> Result<(CategorySpec, Orientation)> {
        let rho = self.rho_label();
        let holds = |p: &CenterPresentation| -> Result<bool> { Ok(p.nu(&rho, 1)?.norm() < TOLERANCE) };
        let center = self.raw_center()?;
        if holds(&center)? {
            return Ok((self.clone(), Orientation::AsGiven));
        }
        match self.flipped() {
            Some(other) if holds(&other.raw_center()?)? => Ok((other, Orientation::Flipped)),
            _ => Ok((self.clone(), Orientation::Unresolved)),
        }
    }

    /// Calibrated center presentation with the orientation recorded.
    pub fn center(&self) -> Result<CenterPresentation> {
        let (spec, orientation) = self.calibrate()?;
        let mut center = spec.raw_center()?;
        center.provenance = orientation;
        Ok(center)
    }

    /// The complex-conjugate categorification: all forms and `zeta_1` negated.
    pub fn conjugate(&self) -> Self {
        match self {
            CategorySpec::NG1 { group, p, zeta1, label } => {
                CategorySpec::NG1 { group: group.clone(), p: *p, zeta1: -*zeta1, label: label.clone() }
            }
            CategorySpec::NG1X { label } => CategorySpec::NG1X { label: label.clone() },
            CategorySpec::NG2 { q, qp, label } => {
                CategorySpec::NG2 { q: q.negate(), qp: qp.negate(), label: label.clone() }
            }
            CategorySpec::HI { group, qpp, sign, omega, label } => CategorySpec::HI {
                group: group.clone(),
                qpp: qpp.negate(),
                sign: *sign,
                omega: omega.map(|w| -w),
                label: label.clone(),
            },
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CategorySpec::NG1 { group, p, zeta1, .. } => format!("NG1({group}, p={p}, zeta1={zeta1})"),
            CategorySpec::NG1X { .. } => "NG1X(Z/7, s=-1)".into(),
            CategorySpec::NG2 { q, qp, .. } => {
                format!("NG2({}, {}; {}, {})", q.group(), q.describe(), qp.group(), qp.describe())
            }
            CategorySpec::HI { group, qpp, .. } => {
                format!("HI({group}; {}, {})", qpp.group(), qpp.describe())
            }
        }
    }
}

/// A_g, Sigma and B_g^w, shared by the two `NG(G, |G| - 1)` presentations.
fn ng1_common(group: &FiniteAbelianGroup) -> Vec<RawObject> {
    let elems = group.elements();
    let mut raw: Vec<RawObject> =
        elems.iter().map(|g| (format!("A:{g}"), QZValue::zero(), vec![(group_label(g), 1)])).collect();
    raw.push(("Sigma".into(), QZValue::zero(), elems.iter().map(|g| (group_label(g), 1)).collect()));
    for g in &elems {
        for w in elems.iter().skip(1) {
            raw.push((
                format!("B:{g}:{w}"),
                -group.character_unchecked(w, g),
                vec![(rho_label(), 1), (group_label(g), 1)],
            ));
        }
    }
    raw
}

/// Center of an `NG(G, |G| - 1)` category with `|G| + 1 = p^l`.
pub fn center_ng1(group: &FiniteAbelianGroup, p: u64, zeta1: QZValue) -> Result<CenterPresentation> {
    let spec = CategorySpec::NG1 { group: group.clone(), p, zeta1, label: None };
    spec.validate()?;
    let (_, l) = prime_power(group.order() + 1).expect("validated");
    let mut raw = ng1_common(group);
    let additive = FiniteAbelianGroup::new(vec![p; l as usize])?;
    for c in additive.elements() {
        // psi_c(1) = exp(2 pi i c_0 / p) with 1 = (1, 0, ..., 0).
        let psi_one = QZValue::new(c.residues()[0] as i64, p);
        raw.push((format!("C:{c}"), -(zeta1 + psi_one), vec![(rho_label(), 1)]));
    }
    CenterPresentation::assemble(spec.base_ring(), raw)
}

/// Center of the exceptional `NG(Z/7, 6)` category.
pub fn center_ng1_exceptional7() -> Result<CenterPresentation> {
    let group = FiniteAbelianGroup::cyclic(7)?;
    let mut raw = ng1_common(&group);
    raw.push(("E1".into(), QZValue::new(1, 4), vec![(rho_label(), 2)]));
    raw.push(("E2".into(), QZValue::new(3, 4), vec![(rho_label(), 2)]));
    CenterPresentation::assemble(make_near_group_ring(&group, 6), raw)
}

/// Center of an `NG(G, |G|)` category with data `(G, q)`, `(G', q')`.
pub fn center_ng2(q: &QuadraticForm, qp: &QuadraticForm) -> Result<CenterPresentation> {
    let spec = CategorySpec::NG2 { q: q.clone(), qp: qp.clone(), label: None };
    spec.validate()?;
    let group = q.group();
    let elems = group.elements();
    let rho = rho_label();
    let mut raw: Vec<RawObject> = Vec::new();
    for g in &elems {
        raw.push((format!("A:{g}"), q.at(g).scale(2), vec![(group_label(g), 1)]));
    }
    for g in &elems {
        raw.push((format!("B:{g}"), q.at(g).scale(2), vec![(rho.clone(), 1), (group_label(g), 1)]));
    }
    for (i, g) in elems.iter().enumerate() {
        for h in elems.iter().skip(i + 1) {
            raw.push((
                format!("C:{g}|{h}"),
                q.boundary_unchecked(g, h),
                vec![(rho.clone(), 1), (group_label(g), 1), (group_label(h), 1)],
            ));
        }
    }
    let pairs = qp.group().nonzero_pair_reps();
    for g in &elems {
        for x in &pairs {
            raw.push((format!("E:{g}|{x}"), q.at(g).scale(2) + qp.at(x).scale(2), vec![(rho.clone(), 1)]));
        }
    }
    CenterPresentation::assemble(spec.base_ring(), raw)
}

/// Center of `HI(G)` with data `(H, q'')`; `D` twists are `m q''(x)` with `|H| = 2m + 1`.
pub fn center_hi(group: &FiniteAbelianGroup, qpp: &QuadraticForm) -> Result<CenterPresentation> {
    let spec = CategorySpec::HI { group: group.clone(), qpp: qpp.clone(), sign: None, omega: None, label: None };
    spec.validate()?;
    let m = ((qpp.group().order() - 1) / 2) as i64;
    let elems = group.elements();
    let all_rho: Vec<(String, u32)> = elems.iter().map(|g| (group_rho_label(g), 1)).collect();
    let unit = group_label(&group.identity());
    let with = |extra: Vec<(String, u32)>| -> Vec<(String, u32)> {
        extra.into_iter().chain(all_rho.iter().cloned()).collect()
    };

    let mut raw: Vec<RawObject> = vec![
        ("1".into(), QZValue::zero(), vec![(unit.clone(), 1)]),
        ("B".into(), QZValue::zero(), with(vec![(unit.clone(), 1)])),
    ];
    let pair_reps = group.nonzero_pair_reps();
    for psi in &pair_reps {
        raw.push((format!("A:{psi}"), QZValue::zero(), with(vec![(unit.clone(), 2)])));
    }
    for h in &pair_reps {
        let minus_h = group.neg_unchecked(h);
        for phi in &elems {
            raw.push((
                format!("C:{h}:{phi}"),
                group.character_unchecked(phi, h),
                with(vec![(group_label(h), 1), (group_label(&minus_h), 1)]),
            ));
        }
    }
    for x in qpp.group().nonzero_pair_reps() {
        raw.push((format!("D:{x}"), qpp.at(&x).scale(m), all_rho.clone()));
    }
    CenterPresentation::assemble(spec.base_ring(), raw)
}

pub type ComplexMatrix = Vec<Vec<Complex64>>;

/// `S = |G|^{-1/2} (conj <g, h>)` and `T = diag(exp(2 pi i q(g)))` in element order.
pub fn weil_modular_data(q: &QuadraticForm) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !q.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    let group = q.group();
    let elems = group.elements();
    let norm = (group.order() as f64).sqrt();
    let s =
        elems.iter().map(|g| elems.iter().map(|h| (-q.boundary_unchecked(g, h)).to_unit() / norm).collect()).collect();
    let t = elems
        .iter()
        .enumerate()
        .map(|(i, _)| {
            (0..elems.len()).map(|j| if i == j { q.values()[i].to_unit() } else { Complex64::new(0.0, 0.0) }).collect()
        })
        .collect();
    Ok((s, t))
}
