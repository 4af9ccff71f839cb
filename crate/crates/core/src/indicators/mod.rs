//! Frobenius–Schur indicators `nu_k(rho)`, evaluated three independent ways:
//! the center sum over modular data, closed Gauss-sum formulas, and (for the
//! group-theoretical near-groups) a brute-force class sum over `AGL_1(F_q)`.

mod agl;
mod rigidity;

pub use agl::{agl_degeneracy_note, build_agl, nu_agl_bruteforce, nu_agl_bruteforce_with, AglGroup, FiniteField};
pub use rigidity::{rigidity_report, rigidity_report_upto, RigidityReport, Separation};

use num_complex::Complex64;
use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::abelian::FiniteAbelianGroup;
use crate::center::{CategorySpec, CenterPresentation, Orientation};
use crate::error::{Error, Result};
use crate::qforms::{jacobi_symbol, QZValue, QuadraticForm, RootSum};

/// `nu_k(rho)` for `k = 1..=period`, evaluated on the calibrated spec.
#[derive(Clone, Debug, PartialEq)]
pub struct IndicatorVector {
    pub category: CategorySpec,
    pub orientation: Orientation,
    pub period: u64,
    pub values: Vec<Complex64>,
}

impl IndicatorVector {
    /// `nu_k` for any `k >= 1`, using periodicity.
    pub fn at(&self, k: u64) -> Complex64 {
        assert!(k >= 1, "indicators are indexed from k = 1");
        self.values[((k - 1) % self.period) as usize]
    }
}

/// Rounds values within `1e-12` of zero to exactly zero, so that printed
/// output does not show `-0` or floating-point dust.
pub fn clean(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else {
        x
    }
}

#[derive(Serialize)]
struct Entry {
    k: u64,
    re: f64,
    im: f64,
}

impl Serialize for IndicatorVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let values: Vec<Entry> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, z)| Entry { k: i as u64 + 1, re: clean(z.re), im: clean(z.im) })
            .collect();
        let mut st = s.serialize_struct("IndicatorVector", 4)?;
        st.serialize_field("category", &self.category)?;
        st.serialize_field("orientation", &self.orientation)?;
        st.serialize_field("period", &self.period)?;
        st.serialize_field("values", &values)?;
        st.end()
    }
}

/// Center-sum evaluation of `nu_k(target)`.
pub fn nu_from_center(p: &CenterPresentation, target: &str, k: i64) -> Result<Complex64> {
    p.nu(target, k)
}

/// lcm of the twist denominators of the center, with the exponent of `G`
/// folded in so that `theta_k^G(e)` is periodic as well.
pub fn indicator_period(spec: &CategorySpec, center: &CenterPresentation) -> u64 {
    center.twist_order().lcm(&spec.group().exponent())
}

/// Full-period indicator vector from the center sum.
pub fn indicator_vector(spec: &CategorySpec) -> Result<IndicatorVector> {
    let (calibrated, orientation) = spec.calibrate()?;
    let center = calibrated.raw_center()?;
    let period = indicator_period(&calibrated, &center);
    let rho = calibrated.rho_label();
    let values = (1..=period as i64).map(|k| center.nu(&rho, k)).collect::<Result<Vec<_>>>()?;
    Ok(IndicatorVector { category: calibrated, orientation, period, values })
}

/// Full-period indicator vector from the family's closed formula.
pub fn indicator_vector_closed(spec: &CategorySpec) -> Result<IndicatorVector> {
    let (calibrated, orientation) = spec.calibrate()?;
    let center = calibrated.raw_center()?;
    let period = indicator_period(&calibrated, &center);
    let values = (1..=period).map(|k| nu_closed(&calibrated, k)).collect::<Result<Vec<_>>>()?;
    Ok(IndicatorVector { category: calibrated, orientation, period, values })
}

/// The closed formula matching the spec's family, with the spec's forms as given.
pub fn nu_closed(spec: &CategorySpec, k: u64) -> Result<Complex64> {
    spec.validate()?;
    match spec {
        CategorySpec::NG1 { group, p, zeta1, .. } => nu_ng1_closed(group, *p, *zeta1, k),
        CategorySpec::NG1X { .. } => Ok(Complex64::new(nu_ng1x_closed(k), 0.0)),
        CategorySpec::NG2 { q, qp, .. } => nu_ng2_closed(q, qp, k),
        CategorySpec::HI { group, qpp, .. } => nu_hi_closed(group, qpp, k),
    }
}

/// `theta_k^G(e)`, the number of `g` with `k g = 0`.
fn theta(group: &FiniteAbelianGroup, k: u64) -> f64 {
    group.power_count_identity(k) as f64
}

/// `(theta_k^G(e) - 1) + conj(zeta_1)^k [p | k]` as an exact sum of roots of unity.
pub fn nu_ng1_exact(group: &FiniteAbelianGroup, p: u64, zeta1: QZValue, k: u64) -> Result<RootSum> {
    CategorySpec::NG1 { group: group.clone(), p, zeta1, label: None }.validate()?;
    let mut out = RootSum::integer(group.power_count_identity(k) as i64 - 1);
    if k.is_multiple_of(p) {
        out.add_term(1, (-zeta1).scale(k as i64));
    }
    Ok(out)
}

pub fn nu_ng1_closed(group: &FiniteAbelianGroup, p: u64, zeta1: QZValue, k: u64) -> Result<Complex64> {
    Ok(nu_ng1_exact(group, p, zeta1, k)?.to_complex())
}

/// `(theta_k(e) - 1) + (-1)^{k/2} [2 | k]` on `G = Z/7`.
pub fn nu_ng1x_closed(k: u64) -> f64 {
    let base = k.gcd(&7) as f64 - 1.0;
    match k % 4 {
        0 => base + 1.0,
        2 => base - 1.0,
        _ => base,
    }
}

/// `1/2 theta_k(e) + (d/D)(sqrt|G|/2 Theta(G, 2kq) + sum_j omega_j^k)`, with
/// `d = FPdim(rho)` and `D = FPdim(C)` of `NG(G, |G|)`.
pub fn nu_ng2_omega(q: &QuadraticForm, omegas: &[QZValue], k: u64) -> Result<Complex64> {
    let group = q.group();
    let n = group.order();
    let want = (n * (n + 3) / 2) as usize;
    if omegas.len() != want {
        return Err(Error::Inadmissible(format!("expected |G|(|G|+3)/2 = {want} omegas, got {}", omegas.len())));
    }
    let ring = crate::fusion::make_near_group_ring(group, n as u32);
    let dims = ring.fp_dims()?;
    let d = dims[ring.index_of("rho")?];
    let big_d = ring.global_fpdim()?;
    let gauss = q.scale(2 * k as i64).gauss_sum();
    let omega_sum: Complex64 = omegas.iter().map(|w| w.scale(k as i64).to_unit()).sum();
    Ok(0.5 * theta(group, k) + (d / big_d) * ((n as f64).sqrt() / 2.0 * gauss + omega_sum))
}

/// `1/2 theta_k^G(e) + 1/2 Theta(G, 2kq) Theta(G', 2kq')`.
pub fn nu_ng2_closed(q: &QuadraticForm, qp: &QuadraticForm, k: u64) -> Result<Complex64> {
    CategorySpec::NG2 { q: q.clone(), qp: qp.clone(), label: None }.validate()?;
    let a = q.scale(2 * k as i64).gauss_sum();
    let b = qp.scale(2 * k as i64).gauss_sum();
    Ok(0.5 * theta(q.group(), k) + 0.5 * a * b)
}

/// `1/2 (1 - (k / |G||G'|))` for `gcd(k, |G||G'|) = 1`.
pub fn nu_ng2_jacobi(order_g: u64, order_gp: u64, k: u64) -> Result<f64> {
    let n = order_g * order_gp;
    if k.gcd(&n) != 1 {
        return Err(Error::Inadmissible(format!("gcd({k}, {n}) != 1")));
    }
    let j = jacobi_symbol(k as i64, n as i64)?;
    Ok(0.5 * (1.0 - j as f64))
}

/// `1/2 theta_k^G(e) + 1/2 Theta(H, k m q'')` with `|H| = 2m + 1`.
pub fn nu_hi_closed(group: &FiniteAbelianGroup, qpp: &QuadraticForm, k: u64) -> Result<Complex64> {
    CategorySpec::HI { group: group.clone(), qpp: qpp.clone(), sign: None, omega: None, label: None }.validate()?;
    let m = (qpp.group().order() - 1) / 2;
    let g = qpp.scale((k * m) as i64).gauss_sum();
    Ok(0.5 * theta(group, k) + 0.5 * g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::center::center_ng2;

    const TOL: f64 = 1e-9;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn cyc(n: u64, c: i64) -> QuadraticForm {
        QuadraticForm::cyclic(n, c).unwrap()
    }

    #[test]
    fn ng1_examples() {
        let one = QZValue::zero();
        assert!((nu_ng1_closed(&z(2), 3, one, 2).unwrap() - 1.0).norm() < TOL);
        assert!((nu_ng1_closed(&z(3), 2, one, 3).unwrap() - 2.0).norm() < TOL);
        for (n, p) in [(1, 2), (2, 3), (3, 2), (4, 5), (6, 7), (7, 2), (8, 3)] {
            assert!(nu_ng1_closed(&z(n), p, one, 1).unwrap().norm() < TOL);
        }
        assert!(nu_ng1_closed(&z(5), 2, one, 1).is_err());
    }

    #[test]
    fn ng1x_examples() {
        assert_eq!(nu_ng1x_closed(2), -1.0);
        assert_eq!(nu_ng1x_closed(7), 6.0);
        assert_eq!(nu_ng1x_closed(1), 0.0);
        assert_eq!(nu_ng1x_closed(4), 1.0);
    }

    #[test]
    fn ng2_jacobi_examples() {
        assert_eq!(nu_ng2_jacobi(3, 7, 2).unwrap(), 1.0);
        assert_eq!(nu_ng2_jacobi(3, 7, 22).unwrap(), 0.0);
        let j = nu_ng2_jacobi(5, 9, 2).unwrap();
        assert_eq!(j, 0.5 * (1.0 - jacobi_symbol(2, 45).unwrap() as f64));
        assert!(nu_ng2_jacobi(3, 7, 3).is_err());
    }

    #[test]
    fn omega_form_matches_center() {
        let q = cyc(3, 1);
        let qp = cyc(7, -1);
        let center = center_ng2(&q, &qp).unwrap();
        let omegas: Vec<QZValue> =
            center.objects.iter().filter(|x| x.label.starts_with("E:")).map(|x| x.twist).collect();
        for k in 1..=21 {
            let a = nu_ng2_omega(&q, &omegas, k).unwrap();
            let b = center.nu("rho", k as i64).unwrap();
            assert!((a - b).norm() < TOL, "k = {k}: {a} vs {b}");
        }
        assert!(nu_ng2_omega(&q, &omegas[1..], 1).is_err());
    }

    #[test]
    fn vector_periodicity() {
        let spec = CategorySpec::NG2 { q: cyc(3, 1), qp: cyc(7, -1), label: None };
        let v = indicator_vector(&spec).unwrap();
        assert_eq!(v.period, 21);
        assert!((v.at(1)).norm() < TOL);
        assert_eq!(v.at(5), v.at(26));
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["values"][0]["k"], 1);
        assert_eq!(json["values"][0]["re"], 0.0);
    }
}
