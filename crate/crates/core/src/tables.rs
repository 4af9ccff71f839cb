//! The published indicator tables as data, and their verification.
//!
//! Near-group rows list `(G, q)` and `(G', q')` as twist forms, i.e. the
//! forms `2q` and `2q'` whose exponentials are the twists of the `A_g` and
//! pointed-`E` objects; the spec built from a row carries their halves.
//! Haagerup–Izumi rows use `q''` as listed.

use std::fmt::Write as _;

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::FiniteAbelianGroup;
use crate::center::{CategorySpec, Orientation};
use crate::error::{Error, Result};
use crate::indicators::{clean, indicator_period, nu_closed};
use crate::qforms::{jacobi_symbol, QZValue, QuadraticForm, RootSum, TOLERANCE};

pub const TABLE_IDS: [&str; 8] = ["ng3", "ng5", "ng7", "ng9", "ng11", "ng13", "hi3", "hi5"];

/// An exact table entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    /// `(a + b sqrt(d)) / 2`, with `sqrt(d) = i sqrt(-d)` for `d < 0`.
    Radical { a: i64, b: i64, d: i64 },
    /// A sum of roots of unity, e.g. `1 + conj(zeta_3)`.
    Roots(RootSum),
}

impl Expected {
    pub fn integer(n: i64) -> Self {
        Expected::Radical { a: 2 * n, b: 0, d: 1 }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Expected::Radical { a, b, d } => {
                let root = if *d >= 0 {
                    Complex64::new((*d as f64).sqrt(), 0.0)
                } else {
                    Complex64::new(0.0, (-*d as f64).sqrt())
                };
                (Complex64::new(*a as f64, 0.0) + root * *b as f64) / 2.0
            }
            Expected::Roots(r) => r.to_complex(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// `nu_k(rho)` equals `expected`.
    At { k: u64, expected: Expected },
    /// `nu_k(rho) = (1 + sign (k / modulus)) / 2` whenever `k` is coprime
    /// to `|G| |H|`; checked at every such `k` in one period.
    JacobiLaw { sign: i8, modulus: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub table_id: String,
    pub row_id: usize,
    pub spec: CategorySpec,
    /// The forms as listed in the table.
    pub printed: String,
    pub claims: Vec<Claim>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub k: u64,
    /// `"column"` for a tabulated entry, `"law"` for an instance of a Jacobi law.
    pub source: String,
    pub expected: Complex64,
    pub center: Complex64,
    pub closed: Complex64,
    pub deviation: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowReport {
    pub table_id: String,
    pub row_id: usize,
    pub family: String,
    pub group: String,
    pub form: String,
    pub orientation: Orientation,
    pub period: u64,
    pub claims: Vec<ClaimReport>,
    pub pass: bool,
}

fn group(factors: &[u64]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(factors.to_vec()).expect("builtin groups are valid")
}

fn form(factors: &[u64], text: &str) -> QuadraticForm {
    QuadraticForm::parse(group(factors), text).expect("builtin forms parse")
}

fn rad(a: i64, b: i64, d: i64) -> Expected {
    Expected::Radical { a, b, d }
}

fn int(n: i64) -> Expected {
    Expected::integer(n)
}

/// `1 + c zeta_3^e`.
fn one_plus(c: i64, e: i64) -> Expected {
    Expected::Roots(RootSum::integer(1).with_term(c, QZValue::new(e, 3)))
}

fn at(ks: &[u64], values: Vec<Expected>) -> Vec<Claim> {
    ks.iter().zip(values).map(|(&k, expected)| Claim::At { k, expected }).collect()
}

#[allow(clippy::too_many_arguments)]
fn ng2_row(
    table: &str,
    row: usize,
    g: &[u64],
    q: &str,
    gp: &[u64],
    qp: &str,
    label: &str,
    claims: Vec<Claim>,
    note: &str,
) -> TableRow {
    let printed_q = form(g, q);
    let printed_qp = form(gp, qp);
    TableRow {
        table_id: table.into(),
        row_id: row,
        spec: CategorySpec::NG2 {
            q: printed_q.halve().expect("odd order"),
            qp: printed_qp.halve().expect("odd order"),
            label: Some(label.into()),
        },
        printed: format!("{}, {}; {}, {}", group(g), q, group(gp), qp),
        claims,
        note: note.into(),
    }
}

#[allow(clippy::too_many_arguments)]
fn hi_row(
    table: &str,
    row: usize,
    g: u64,
    h: u64,
    qpp: &str,
    sign: i8,
    label: &str,
    claims: Vec<Claim>,
    note: &str,
) -> TableRow {
    TableRow {
        table_id: table.into(),
        row_id: row,
        spec: CategorySpec::HI {
            group: group(&[g]),
            qpp: form(&[h], qpp),
            sign: Some(sign),
            omega: Some(QZValue::zero()),
            label: Some(label.into()),
        },
        printed: format!("{}; {}, {}", group(&[g]), group(&[h]), qpp),
        claims,
        note: note.into(),
    }
}

/// All 26 tabulated categorifications with every listed indicator.
pub fn builtin_rows() -> Vec<TableRow> {
    let k3_7 = [3, 7];
    let k3_5_9 = [3, 5, 9];
    let k7_11 = [7, 11];
    let k3_9_13 = [3, 9, 13];
    let k11 = [3, 5, 11, 15];
    let k13 = [13, 17];
    let hi5_note =
        "H listed as Z/13 with forms over 29 and law (k/13); stored as Z/29 with law (k/29), forced by |H| = |G|^2 + 4";
    let law = |sign, modulus| Claim::JacobiLaw { sign, modulus };
    let with_law = |l: Claim, mut rest: Vec<Claim>| {
        rest.insert(0, l);
        rest
    };
    vec![
        ng2_row("ng3", 1, &[3], "g^2/3", &[7], "g^2/7", "b=-, c=-", at(&k3_7, vec![rad(3, 1, -3), rad(1, 1, -7)]), ""),
        ng2_row(
            "ng3",
            2,
            &[3],
            "-g^2/3",
            &[7],
            "-g^2/7",
            "b=-, c=-",
            at(&k3_7, vec![rad(3, -1, -3), rad(1, -1, -7)]),
            "",
        ),
        ng2_row(
            "ng5",
            1,
            &[5],
            "2g^2/5",
            &[9],
            "2g^2/9",
            "b=-, c=zeta3",
            at(&k3_5_9, vec![one_plus(1, 2), rad(5, 1, 5), int(-1)]),
            "",
        ),
        ng2_row(
            "ng5",
            2,
            &[5],
            "2g^2/5",
            &[9],
            "-2g^2/9",
            "b=-, c=conj(zeta3)",
            at(&k3_5_9, vec![one_plus(1, 1), rad(5, 1, 5), int(-1)]),
            "",
        ),
        ng2_row(
            "ng5",
            3,
            &[5],
            "g^2/5",
            &[3, 3],
            "(g^2+h^2)/3",
            "b=-, c=1",
            at(&k3_5_9, vec![int(-1), rad(5, -1, 5), int(2)]),
            "",
        ),
        ng2_row(
            "ng7",
            1,
            &[7],
            "g^2/7",
            &[11],
            "-2g^2/11",
            "b=-, c=-",
            at(&k7_11, vec![rad(7, -1, -7), rad(1, 1, -11)]),
            "",
        ),
        ng2_row(
            "ng7",
            2,
            &[7],
            "-g^2/7",
            &[11],
            "2g^2/11",
            "b=-, c=-",
            at(&k7_11, vec![rad(7, 1, -7), rad(1, -1, -11)]),
            "",
        ),
        ng2_row(
            "ng9",
            1,
            &[9],
            "g^2/9",
            &[13],
            "-2g^2/13",
            "b=-, c=-",
            at(&k3_9_13, vec![one_plus(-1, 1), int(3), rad(1, 1, 13)]),
            "",
        ),
        ng2_row(
            "ng9",
            2,
            &[9],
            "-g^2/9",
            &[13],
            "2g^2/13",
            "b=-, c=-",
            at(&k3_9_13, vec![one_plus(-1, 2), int(3), rad(1, 1, 13)]),
            "",
        ),
        ng2_row(
            "ng9",
            3,
            &[3, 3],
            "(g^2-h^2)/3",
            &[13],
            "2g^2/13",
            "b=-, c=-",
            at(&k3_9_13, vec![int(3), int(3), rad(1, 1, 13)]),
            "",
        ),
        ng2_row(
            "ng11",
            1,
            &[11],
            "g^2/11",
            &[15],
            "2g^2/15",
            "b=-, c=zeta12^7",
            at(&k11, vec![rad(1, -1, -3), rad(1, 1, 5), rad(11, -1, -11), rad(1, 1, -15)]),
            "",
        ),
        ng2_row(
            "ng11",
            2,
            &[11],
            "g^2/11",
            &[15],
            "g^2/15",
            "b=-, c=conj(zeta12)",
            at(&k11, vec![rad(1, 1, -3), rad(1, -1, 5), rad(11, -1, -11), rad(1, 1, -15)]),
            "",
        ),
        ng2_row(
            "ng11",
            3,
            &[11],
            "-g^2/11",
            &[15],
            "-g^2/15",
            "b=-, c=zeta12",
            at(&k11, vec![rad(1, -1, -3), rad(1, -1, 5), rad(11, 1, -11), rad(1, -1, -15)]),
            "",
        ),
        ng2_row(
            "ng11",
            4,
            &[11],
            "-g^2/11",
            &[15],
            "-2g^2/15",
            "b=-, c=zeta12^5",
            at(&k11, vec![rad(1, 1, -3), rad(1, 1, 5), rad(11, 1, -11), rad(1, -1, -15)]),
            "",
        ),
        ng2_row(
            "ng13",
            1,
            &[13],
            "g^2/13",
            &[17],
            "3g^2/17",
            "b=b1, c=-1",
            at(&k13, vec![rad(13, -1, 13), rad(1, 1, 17)]),
            "",
        ),
        ng2_row(
            "ng13",
            2,
            &[13],
            "g^2/13",
            &[17],
            "3g^2/17",
            "b=b2, c=-1",
            at(&k13, vec![rad(13, -1, 13), rad(1, 1, 17)]),
            "",
        ),
        ng2_row(
            "ng13",
            3,
            &[13],
            "2g^2/13",
            &[17],
            "g^2/17",
            "b=b3, c=1",
            at(&k13, vec![rad(13, 1, 13), rad(1, -1, 17)]),
            "",
        ),
        ng2_row(
            "ng13",
            4,
            &[13],
            "2g^2/13",
            &[17],
            "g^2/17",
            "b=b4, c=1",
            at(&k13, vec![rad(13, 1, 13), rad(1, -1, 17)]),
            "q' listed as g^2/15 on Z/17; stored as g^2/17",
        ),
        hi_row(
            "hi3",
            1,
            3,
            13,
            "g^2/13",
            1,
            "A1",
            with_law(law(-1, 13), at(&[3, 13], vec![int(1), rad(1, 1, 13)])),
            "",
        ),
        hi_row(
            "hi3",
            2,
            3,
            13,
            "g^2/13",
            1,
            "A2",
            with_law(law(-1, 13), at(&[3, 13], vec![int(1), rad(1, 1, 13)])),
            "",
        ),
        hi_row(
            "hi3",
            3,
            3,
            13,
            "2g^2/13",
            -1,
            "A3",
            with_law(law(1, 13), at(&[3, 13], vec![int(2), rad(1, 1, 13)])),
            "",
        ),
        hi_row(
            "hi3",
            4,
            3,
            13,
            "2g^2/13",
            -1,
            "A4",
            with_law(law(1, 13), at(&[3, 13], vec![int(2), rad(1, 1, 13)])),
            "",
        ),
        hi_row(
            "hi5",
            1,
            5,
            29,
            "g^2/29",
            1,
            "A6",
            with_law(law(-1, 29), at(&[5, 29], vec![int(2), rad(1, 1, 29)])),
            hi5_note,
        ),
        hi_row(
            "hi5",
            2,
            5,
            29,
            "g^2/29",
            1,
            "A7",
            with_law(law(-1, 29), at(&[5, 29], vec![int(2), rad(1, 1, 29)])),
            hi5_note,
        ),
        hi_row(
            "hi5",
            3,
            5,
            29,
            "2g^2/29",
            -1,
            "A8",
            with_law(law(1, 29), at(&[5, 29], vec![int(3), rad(1, 1, 29)])),
            hi5_note,
        ),
        hi_row(
            "hi5",
            4,
            5,
            29,
            "2g^2/29",
            -1,
            "A9",
            with_law(law(1, 29), at(&[5, 29], vec![int(3), rad(1, 1, 29)])),
            hi5_note,
        ),
    ]
}

/// Rows of one table, or all rows for `None`.
pub fn select_rows(table: Option<&str>) -> Result<Vec<TableRow>> {
    let rows = builtin_rows();
    match table {
        None => Ok(rows),
        Some(id) if TABLE_IDS.contains(&id) => Ok(rows.into_iter().filter(|r| r.table_id == id).collect()),
        Some(id) => Err(Error::UnknownTable(id.to_string())),
    }
}

/// Evaluates every claim of a row by the center sum and by the closed formula,
/// both on the calibrated spec.
pub fn verify_row(row: &TableRow) -> Result<RowReport> {
    verify_row_with(row, TOLERANCE)
}

pub fn verify_row_with(row: &TableRow, tolerance: f64) -> Result<RowReport> {
    let (spec, orientation) = row.spec.calibrate()?;
    let center = spec.raw_center()?;
    let period = indicator_period(&spec, &center);
    let rho = spec.rho_label();

    let mut instances: Vec<(u64, &'static str, Complex64)> = Vec::new();
    for claim in &row.claims {
        match claim {
            Claim::At { k, expected } => instances.push((*k, "column", expected.to_complex())),
            Claim::JacobiLaw { sign, modulus } => {
                let coprime_to = spec.group().order() * law_partner_order(&spec);
                for k in (1..=period).filter(|k| k.gcd(&coprime_to) == 1) {
                    let j = jacobi_symbol(k as i64, *modulus as i64)?;
                    let value = 0.5 * (1.0 + (*sign as f64) * j as f64);
                    instances.push((k, "law", Complex64::new(value, 0.0)));
                }
            }
        }
    }

    let mut claims = Vec::with_capacity(instances.len());
    for (k, source, expected) in instances {
        let c = center.nu(&rho, k as i64)?;
        let f = nu_closed(&spec, k)?;
        let deviation = (c - expected).norm().max((f - expected).norm());
        claims.push(ClaimReport {
            k,
            source: source.into(),
            expected,
            center: c,
            closed: f,
            deviation,
            pass: deviation < tolerance,
        });
    }
    let pass = claims.iter().all(|c| c.pass);
    let form = match &row.spec {
        CategorySpec::NG2 { .. } | CategorySpec::HI { .. } => row.printed.clone(),
        _ => spec.describe(),
    };
    Ok(RowReport {
        table_id: row.table_id.clone(),
        row_id: row.row_id,
        family: spec.family().into(),
        group: spec.group().to_string(),
        form,
        orientation,
        period,
        claims,
        pass,
    })
}

fn law_partner_order(spec: &CategorySpec) -> u64 {
    match spec {
        CategorySpec::NG2 { qp, .. } => qp.group().order(),
        CategorySpec::HI { qpp, .. } => qpp.group().order(),
        _ => 1,
    }
}

/// Verifies rows in parallel; the output order is the input order.
pub fn verify_all(rows: &[TableRow], tolerance: f64) -> Result<Vec<RowReport>> {
    rows.par_iter().map(|r| verify_row_with(r, tolerance)).collect()
}

/// One line of the flat report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub table_id: String,
    pub row_id: usize,
    pub family: String,
    pub group: String,
    pub form: String,
    pub k: u64,
    pub expected_re: f64,
    pub expected_im: f64,
    pub computed_re: f64,
    pub computed_im: f64,
    pub deviation: f64,
    pub calibrated: Orientation,
    pub pass: bool,
}

/// Flat records, one per claim instance; `computed` is the center-sum value.
pub fn records(reports: &[RowReport]) -> Vec<ReportRecord> {
    reports
        .iter()
        .flat_map(|r| {
            r.claims.iter().map(move |c| ReportRecord {
                table_id: r.table_id.clone(),
                row_id: r.row_id,
                family: r.family.clone(),
                group: r.group.clone(),
                form: r.form.clone(),
                k: c.k,
                expected_re: clean(c.expected.re),
                expected_im: clean(c.expected.im),
                computed_re: clean(c.center.re),
                computed_im: clean(c.center.im),
                deviation: c.deviation,
                calibrated: r.orientation,
                pass: c.pass,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
    Markdown,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

pub fn emit_report(reports: &[RowReport], format: ReportFormat) -> Result<String> {
    let ser = |e: &dyn std::fmt::Display| Error::Serialization(e.to_string());
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for rec in records(reports) {
                w.serialize(rec).map_err(|e| ser(&e))?;
            }
            let bytes = w.into_inner().map_err(|e| ser(&e))?;
            String::from_utf8(bytes).map_err(|e| ser(&e))
        }
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&records(reports)).map_err(|e| ser(&e))?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Markdown => Ok(markdown(reports)),
    }
}

pub fn parse_csv(text: &str) -> Result<Vec<ReportRecord>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Serialization(e.to_string()))
}

fn format_complex(z: Complex64) -> String {
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else if im < 0.0 {
        format!("{re:.6} - {:.6}i", -im)
    } else {
        format!("{re:.6} + {im:.6}i")
    }
}

fn markdown(reports: &[RowReport]) -> String {
    let mut out = String::new();
    let mut ids: Vec<&str> = Vec::new();
    for r in reports {
        if !ids.contains(&r.table_id.as_str()) {
            ids.push(&r.table_id);
        }
    }
    for id in ids {
        let rows: Vec<&RowReport> = reports.iter().filter(|r| r.table_id == id).collect();
        let mut ks: Vec<u64> =
            rows.iter().flat_map(|r| r.claims.iter().filter(|c| c.source == "column").map(|c| c.k)).collect();
        ks.sort_unstable();
        ks.dedup();
        let has_law = rows.iter().any(|r| r.claims.iter().any(|c| c.source == "law"));

        let _ = writeln!(out, "### {id}\n");
        let mut header = String::from("| row | forms | orientation |");
        let mut rule = String::from("|---|---|---|");
        if has_law {
            header.push_str(" nu_k law |");
            rule.push_str("---|");
        }
        for k in &ks {
            let _ = write!(header, " nu_{k} |");
            rule.push_str("---|");
        }
        let _ = writeln!(out, "{header}\n{rule}");
        for r in rows {
            let orientation = match r.orientation {
                Orientation::AsGiven => "as given",
                Orientation::Flipped => "flipped",
                Orientation::Unresolved => "unresolved",
            };
            let _ = write!(out, "| {} | {} | {} |", r.row_id, r.form, orientation);
            if has_law {
                let law: Vec<&ClaimReport> = r.claims.iter().filter(|c| c.source == "law").collect();
                let ok = law.iter().filter(|c| c.pass).count();
                let _ = write!(out, " {ok}/{} |", law.len());
            }
            for k in &ks {
                match r.claims.iter().find(|c| c.source == "column" && c.k == *k) {
                    Some(c) => {
                        let mark = if c.pass { "ok" } else { "FAIL" };
                        let _ = write!(out, " {} ({mark}) |", format_complex(c.center));
                    }
                    None => out.push_str(" |"),
                }
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}
