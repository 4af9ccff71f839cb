//! Exact `Q/Z` arithmetic, quadratic forms on finite abelian groups, Gauss
//! sums and Jacobi symbols.
//!
//! Every form value and every twist is an exact [`QZValue`]; floating point
//! only appears when a phase is exponentiated or when exponentials are summed.
//!
//! The boundary form is `dq(g, h) = q(g + h) - q(g) - q(h)`, so that the
//! bicharacter satisfies `<g, g> = exp(2 pi i * 2 q(g))`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::{FiniteAbelianGroup, GroupElement};
use crate::error::{Error, Result};

/// Absolute tolerance for comparing complex values.
pub const TOLERANCE: f64 = 1e-9;

/// An element of `Q/Z`, kept reduced with `0 <= numerator < denominator`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QZValue {
    num: u64,
    den: u64,
}

impl QZValue {
    /// `num / den mod 1`. Panics if `den == 0`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "QZValue denominator must be positive");
        let n = (num as i128).rem_euclid(den as i128) as u64;
        let g = n.gcd(&den);
        Self { num: n / g, den: den / g }
    }

    pub fn zero() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `k * self mod 1`.
    pub fn scale(&self, k: i64) -> Self {
        let n = (k as i128 * self.num as i128).rem_euclid(self.den as i128);
        Self::new(n as i64, self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `exp(2 pi i * self)`.
    pub fn to_unit(&self) -> Complex64 {
        Complex64::from_polar(1.0, TAU * self.to_f64())
    }
}

impl Add for QZValue {
    type Output = QZValue;

    fn add(self, rhs: QZValue) -> QZValue {
        let den = self.den.lcm(&rhs.den);
        let a = self.num as i128 * (den / self.den) as i128;
        let b = rhs.num as i128 * (den / rhs.den) as i128;
        QZValue::new(((a + b) % den as i128) as i64, den)
    }
}

impl Neg for QZValue {
    type Output = QZValue;

    fn neg(self) -> QZValue {
        QZValue::new(-(self.num as i64), self.den)
    }
}

impl Sub for QZValue {
    type Output = QZValue;

    fn sub(self, rhs: QZValue) -> QZValue {
        self + (-rhs)
    }
}

impl fmt::Display for QZValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for QZValue {
    type Err = Error;

    /// Accepts `"a/b"` or a bare integer, with `a` possibly negative.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPhase(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: u64 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(QZValue::new(n, d))
    }
}

impl Serialize for QZValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QZValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(QZValue::new(n, 1)),
        }
    }
}

/// A formal integer combination of roots of unity `sum c_j exp(2 pi i x_j)`.
///
/// Terms with equal phase are merged; no cyclotomic relations are applied,
/// so equality of two sums is only meaningful through [`to_complex`](Self::to_complex)
/// unless both are integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSum {
    terms: BTreeMap<QZValue, i64>,
}

impl RootSum {
    pub fn integer(n: i64) -> Self {
        let mut s = Self::default();
        s.add_term(n, QZValue::zero());
        s
    }

    pub fn add_term(&mut self, coeff: i64, phase: QZValue) {
        let c = self.terms.entry(phase).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&phase);
        }
    }

    pub fn with_term(mut self, coeff: i64, phase: QZValue) -> Self {
        self.add_term(coeff, phase);
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (QZValue, i64)> + '_ {
        self.terms.iter().map(|(&p, &c)| (p, c))
    }

    /// The value when every surviving term has phase 0.
    pub fn as_integer(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&QZValue::zero()).copied(),
            _ => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.terms.iter().map(|(p, &c)| p.to_unit() * c as f64).sum()
    }
}

/// One summand `coeff * g_factor^2 / n_factor` of a diagonal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialTerm {
    pub factor: usize,
    pub coeff: i64,
}

/// A quadratic form `q: G -> Q/Z`, stored as a dense table in element order.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "FormSpec", into = "FormSpec")]
pub struct QuadraticForm {
    group: FiniteAbelianGroup,
    values: Vec<QZValue>,
    monomial: Option<Vec<MonomialTerm>>,
}

impl PartialEq for QuadraticForm {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.values == other.values
    }
}

impl Eq for QuadraticForm {}

/// JSON shape of a form: monomial terms, or a dense table that overrides them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormSpec {
    pub group: FiniteAbelianGroup,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monomial: Option<Vec<MonomialTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<QZValue>>,
}

impl TryFrom<FormSpec> for QuadraticForm {
    type Error = Error;

    fn try_from(spec: FormSpec) -> Result<Self> {
        match (spec.table, spec.monomial) {
            (Some(table), _) => QuadraticForm::from_table(spec.group, table),
            (None, Some(terms)) => QuadraticForm::monomial(spec.group, &terms),
            (None, None) => Err(Error::InvalidForm("form needs a \"monomial\" list or a \"table\"".into())),
        }
    }
}

impl From<QuadraticForm> for FormSpec {
    fn from(q: QuadraticForm) -> Self {
        match q.monomial {
            Some(terms) => FormSpec { group: q.group, monomial: Some(terms), table: None },
            None => FormSpec { group: q.group, monomial: None, table: Some(q.values) },
        }
    }
}

impl QuadraticForm {
    /// `q(g) = sum_t coeff_t * g_{factor_t}^2 / n_{factor_t}`.
    pub fn monomial(group: FiniteAbelianGroup, terms: &[MonomialTerm]) -> Result<Self> {
        for t in terms {
            if t.factor >= group.rank() {
                return Err(Error::InvalidForm(format!(
                    "term refers to factor {} but the group has rank {}",
                    t.factor,
                    group.rank()
                )));
            }
        }
        let factors = group.cyclic_factors().to_vec();
        let values = group
            .elements()
            .iter()
            .map(|g| {
                terms.iter().fold(QZValue::zero(), |acc, t| {
                    let n = factors[t.factor];
                    let x = g.residues()[t.factor] as i128;
                    let num = (t.coeff as i128 * x * x).rem_euclid(n as i128);
                    acc + QZValue::new(num as i64, n)
                })
            })
            .collect();
        Ok(Self { group, values, monomial: Some(terms.to_vec()) })
    }

    /// `coeff * g^2 / n` on `Z/n`.
    pub fn cyclic(n: u64, coeff: i64) -> Result<Self> {
        Self::monomial(FiniteAbelianGroup::cyclic(n)?, &[MonomialTerm { factor: 0, coeff }])
    }

    pub fn zero(group: FiniteAbelianGroup) -> Self {
        let values = vec![QZValue::zero(); group.order() as usize];
        Self { group, values, monomial: Some(Vec::new()) }
    }

    /// A form given by its full value table; checks `q(0) = 0`, `q(-g) = q(g)`
    /// and bi-additivity of the boundary.
    pub fn from_table(group: FiniteAbelianGroup, values: Vec<QZValue>) -> Result<Self> {
        if values.len() as u64 != group.order() {
            return Err(Error::InvalidForm(format!(
                "table has {} entries, group order is {}",
                values.len(),
                group.order()
            )));
        }
        let q = Self { group, values, monomial: None };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<()> {
        if !self.values[0].is_zero() {
            return Err(Error::InvalidForm("q(0) != 0".into()));
        }
        let elems = self.group.elements();
        for g in &elems {
            if self.at(&self.group.neg_unchecked(g)) != self.at(g) {
                return Err(Error::InvalidForm(format!("q(-g) != q(g) at g = {g}")));
            }
        }
        for a in &elems {
            for b in &elems {
                let ab = self.group.add_unchecked(a, b);
                for h in &elems {
                    if self.boundary_unchecked(&ab, h) != self.boundary_unchecked(a, h) + self.boundary_unchecked(b, h)
                    {
                        return Err(Error::InvalidForm(format!("boundary is not additive at ({a}, {b}; {h})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[QZValue] {
        &self.values
    }

    pub fn monomial_terms(&self) -> Option<&[MonomialTerm]> {
        self.monomial.as_deref()
    }

    pub fn value(&self, g: &GroupElement) -> Result<QZValue> {
        Ok(self.values[self.group.index_of(g)?])
    }

    pub(crate) fn at(&self, g: &GroupElement) -> QZValue {
        self.values[self.group.index_unchecked(g)]
    }

    /// `dq(g, h) = q(g + h) - q(g) - q(h)`.
    pub fn boundary(&self, g: &GroupElement, h: &GroupElement) -> Result<QZValue> {
        let gh = self.group.add(g, h)?;
        Ok(self.at(&gh) - self.at(g) - self.at(h))
    }

    pub(crate) fn boundary_unchecked(&self, g: &GroupElement, h: &GroupElement) -> QZValue {
        let gh = self.group.add_unchecked(g, h);
        self.at(&gh) - self.at(g) - self.at(h)
    }

    /// `<g, h> = exp(2 pi i dq(g, h))`.
    pub fn bicharacter(&self, g: &GroupElement, h: &GroupElement) -> Result<Complex64> {
        Ok(self.boundary(g, h)?.to_unit())
    }

    /// Pointwise `k q`; the result may be degenerate.
    pub fn scale(&self, k: i64) -> Self {
        let monomial = self.monomial.as_ref().map(|terms| {
            terms
                .iter()
                .map(|t| {
                    let n = self.group.cyclic_factors()[t.factor] as i64;
                    MonomialTerm { factor: t.factor, coeff: symmetric_residue(t.coeff as i128 * k as i128, n) }
                })
                .collect()
        });
        Self { group: self.group.clone(), values: self.values.iter().map(|v| v.scale(k)).collect(), monomial }
    }

    pub fn negate(&self) -> Self {
        self.scale(-1)
    }

    /// The unique form `h` with `2 h = q`; needs a group of odd order.
    pub fn halve(&self) -> Result<Self> {
        let e = self.group.exponent();
        if e.is_multiple_of(2) {
            return Err(Error::InvalidForm("halving a form needs a group of odd order".into()));
        }
        if let Some(v) = self.values.iter().find(|v| !e.is_multiple_of(v.denominator())) {
            return Err(Error::InvalidForm(format!("value {v} has denominator not dividing the exponent {e}")));
        }
        Ok(self.scale(e.div_ceil(2) as i64))
    }

    /// True when `h -> dq(., h)` has trivial kernel.
    pub fn is_nondegenerate(&self) -> bool {
        let elems = self.group.elements();
        elems.iter().skip(1).all(|h| elems.iter().any(|g| !self.boundary_unchecked(g, h).is_zero()))
    }

    /// `Theta(G, q) = |G|^{-1/2} sum_g exp(2 pi i q(g))`, by direct summation.
    pub fn gauss_sum(&self) -> Complex64 {
        let s: Complex64 = self.values.iter().map(|v| v.to_unit()).sum();
        s / (self.group.order() as f64).sqrt()
    }

    /// Form on `G1 x G2` given by `q1(g1) + q2(g2)`.
    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        let group = self.group.product(&other.group);
        let values = self.values.iter().flat_map(|&a| other.values.iter().map(move |&b| a + b)).collect();
        let monomial = match (&self.monomial, &other.monomial) {
            (Some(a), Some(b)) => {
                let shift = self.group.rank();
                let mut terms = a.clone();
                terms.extend(b.iter().map(|t| MonomialTerm { factor: t.factor + shift, coeff: t.coeff }));
                Some(terms)
            }
            _ => None,
        };
        Self { group, values, monomial }
    }

    /// Parses shorthand such as `g^2/3`, `-2g^2/13`, `g²/7` or
    /// `(g^2 - h^2)/3`. Variables are `g, h, i, j, ...` or `g0, g1, ...`
    /// naming factors in order. A denominator `d` must divide the order
    /// of its factor.
    pub fn parse(group: FiniteAbelianGroup, text: &str) -> Result<Self> {
        let terms = parse_monomial(&group, text)?;
        Self::monomial(group, &terms)
    }

    /// Human-readable shorthand, e.g. `2g^2/5` or `g0^2/3 + 2g1^2/3`.
    pub fn describe(&self) -> String {
        let Some(terms) = &self.monomial else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            return format!("table[{}]", parts.join(","));
        };
        let live: Vec<&MonomialTerm> = terms.iter().filter(|t| t.coeff != 0).collect();
        if live.is_empty() {
            return "0".into();
        }
        let single = self.group.rank() == 1;
        let mut out = String::new();
        for (i, t) in live.iter().enumerate() {
            let n = self.group.cyclic_factors()[t.factor];
            let var = if single { "g".to_string() } else { format!("g{}", t.factor) };
            let mag = t.coeff.unsigned_abs();
            let coeff = if mag == 1 { String::new() } else { mag.to_string() };
            let sign = match (i, t.coeff < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            out.push_str(&format!("{sign}{coeff}{var}^2/{n}"));
        }
        out
    }
}

fn symmetric_residue(x: i128, n: i64) -> i64 {
    let n = n as i128;
    let r = x.rem_euclid(n);
    (if 2 * r > n { r - n } else { r }) as i64
}

fn parse_monomial(group: &FiniteAbelianGroup, text: &str) -> Result<Vec<MonomialTerm>> {
    let bad = |why: &str| Error::InvalidForm(format!("cannot parse {text:?}: {why}"));
    let mut s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    s = s.replace('²', "^2").replace('−', "-");
    let mut outer_den: Option<u64> = None;
    let mut outer_sign = 1i64;
    let body = if let Some(rest) = s.strip_prefix("-(").or_else(|| s.strip_prefix('(')) {
        if s.starts_with('-') {
            outer_sign = -1;
        }
        let (inner, den) = rest.rsplit_once(")/").ok_or_else(|| bad("unbalanced parentheses"))?;
        outer_den = Some(den.parse().map_err(|_| bad("bad denominator"))?);
        inner.to_string()
    } else {
        s.clone()
    };
    if body.is_empty() || body == "0" {
        return Ok(Vec::new());
    }

    let mut pieces = Vec::new();
    let mut current = String::new();
    for c in body.chars() {
        if (c == '+' || c == '-') && !current.is_empty() {
            pieces.push(std::mem::take(&mut current));
        }
        current.push(c);
    }
    pieces.push(current);

    let mut terms = Vec::new();
    for piece in pieces {
        let (sign, rest) = match piece.strip_prefix('-') {
            Some(r) => (-1i64, r),
            None => (1i64, piece.strip_prefix('+').unwrap_or(&piece)),
        };
        let var_pos = rest.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(|| bad("missing variable"))?;
        let coeff: i64 = if var_pos == 0 {
            1
        } else {
            rest[..var_pos].trim_end_matches('*').parse().map_err(|_| bad("bad coefficient"))?
        };
        let after = &rest[var_pos..];
        let caret = after.find("^2").ok_or_else(|| bad("expected ^2"))?;
        let var = &after[..caret];
        let factor = variable_index(var).ok_or_else(|| bad("unknown variable"))?;
        if factor >= group.rank() {
            return Err(bad("variable index exceeds group rank"));
        }
        let tail = &after[caret + 2..];
        let den: u64 = match (tail.strip_prefix('/'), outer_den) {
            (Some(d), None) => d.parse().map_err(|_| bad("bad denominator"))?,
            (None, Some(d)) if tail.is_empty() => d,
            _ => return Err(bad("expected exactly one denominator")),
        };
        let n = group.cyclic_factors()[factor];
        if den == 0 || !n.is_multiple_of(den) {
            return Err(bad("denominator must divide the factor order"));
        }
        terms.push(MonomialTerm { factor, coeff: outer_sign * sign * coeff * (n / den) as i64 });
    }
    Ok(terms)
}

fn variable_index(var: &str) -> Option<usize> {
    if let Some(idx) = var.strip_prefix('g').filter(|d| !d.is_empty()) {
        return idx.parse().ok();
    }
    let mut chars = var.chars();
    let c = chars.next()?;
    if chars.next().is_some() || !('g'..='z').contains(&c) {
        return None;
    }
    Some(c as usize - 'g' as usize)
}

/// `Theta(G, q)`.
pub fn gauss_sum(q: &QuadraticForm) -> Complex64 {
    q.gauss_sum()
}

/// `k q`.
pub fn scale_form(k: i64, q: &QuadraticForm) -> QuadraticForm {
    q.scale(k)
}

/// A pre-metric group `(G, q)`; metric when the boundary is non-degenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreMetricGroup {
    form: QuadraticForm,
    nondegenerate: bool,
}

impl PreMetricGroup {
    pub fn new(form: QuadraticForm) -> Self {
        let nondegenerate = form.is_nondegenerate();
        Self { form, nondegenerate }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.form.group()
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn is_metric(&self) -> bool {
        self.nondegenerate
    }

    pub fn gauss_sum(&self) -> Complex64 {
        self.form.gauss_sum()
    }
}

/// `(G1, q1) ⊥ (G2, q2)`.
pub fn orthogonal_sum(a: &PreMetricGroup, b: &PreMetricGroup) -> PreMetricGroup {
    PreMetricGroup::new(a.form.orthogonal_sum(&b.form))
}

/// Jacobi symbol `(a / n)` for odd `n >= 1`, via quadratic reciprocity.
pub fn jacobi_symbol(a: i64, n: i64) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::EvenModulus(n));
    }
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut result = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    Ok(if n == 1 { result } else { 0 })
}

/// `(p, l)` with `n = p^l`, `p` prime and `l >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut rest = n;
    let mut l = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        l += 1;
    }
    (rest == 1).then_some((p, l))
}
