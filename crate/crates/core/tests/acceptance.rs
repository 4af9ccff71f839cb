//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Tolerances and time budgets are fixed below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::Ratio;

use fsind_core::fusion::make_hi_ring;
use fsind_core::indicators::{
    agl_degeneracy_note, indicator_vector, indicator_vector_closed, nu_agl_bruteforce, nu_ng1_closed, nu_ng1_exact,
    rigidity_report,
};
use fsind_core::qforms::{jacobi_symbol, prime_power, MonomialTerm};
use fsind_core::tables::{builtin_rows, verify_row_with, TableRow};
use fsind_core::{
    make_near_group_ring, verify_ring, CategorySpec, FiniteAbelianGroup, Orientation, QZValue, QuadraticForm,
};

/// Absolute tolerance for every floating-point comparison.
const TOL: f64 = 1e-9;
const BUDGET_TABLES: Duration = Duration::from_secs(5);
const BUDGET_TRIANGLE: Duration = Duration::from_secs(30);
const BUDGET_CLASSICAL: Duration = Duration::from_secs(10);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn z(n: u64) -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(n).unwrap()
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < TOL
}

fn row_id(r: &TableRow) -> String {
    format!("{}:{}", r.table_id, r.row_id)
}

/// Nondecreasing factor lists with every factor >= 2 and product <= max.
fn groups_up_to(max: u64) -> Vec<FiniteAbelianGroup> {
    fn extend(prefix: &mut Vec<u64>, min: u64, prod: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        out.push(prefix.clone());
        for f in min..=max / prod {
            prefix.push(f);
            extend(prefix, f, prod * f, max, out);
            prefix.pop();
        }
    }
    let mut lists = Vec::new();
    extend(&mut Vec::new(), 2, 1, max, &mut lists);
    lists
        .into_iter()
        .map(|f| if f.is_empty() { FiniteAbelianGroup::trivial() } else { FiniteAbelianGroup::new(f).unwrap() })
        .collect()
}

/// Every diagonal form `sum c_i g_i^2 / n_i` on the group.
fn diagonal_forms(g: &FiniteAbelianGroup) -> Vec<QuadraticForm> {
    let factors = g.cyclic_factors();
    let mut coeffs: Vec<Vec<i64>> = vec![vec![]];
    for &n in factors {
        coeffs = coeffs
            .into_iter()
            .flat_map(|c| {
                (0..n as i64).map(move |x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    coeffs
        .into_iter()
        .map(|c| {
            let terms: Vec<MonomialTerm> =
                c.iter().enumerate().map(|(factor, &coeff)| MonomialTerm { factor, coeff }).collect();
            QuadraticForm::monomial(g.clone(), &terms).unwrap()
        })
        .collect()
}

fn extra_specs() -> Vec<CategorySpec> {
    let ng1 = |n: u64, p: u64, z1: &str| CategorySpec::NG1 { group: z(n), p, zeta1: z1.parse().unwrap(), label: None };
    vec![
        ng1(1, 2, "0"),
        ng1(1, 2, "1/4"),
        ng1(2, 3, "0"),
        ng1(2, 3, "-1/9"),
        ng1(2, 3, "1/9"),
        ng1(3, 2, "0"),
        ng1(3, 2, "1/4"),
        ng1(7, 2, "0"),
        CategorySpec::NG1X { label: None },
        CategorySpec::NG2 {
            q: QuadraticForm::zero(FiniteAbelianGroup::trivial()),
            qp: QuadraticForm::cyclic(5, 1).unwrap(),
            label: None,
        },
    ]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let rows = builtin_rows();
    let (ng, hi) = rows.iter().partition::<Vec<_>, _>(|r| r.table_id.starts_with("ng"));
    let mut failures = Vec::new();
    let mut flips = 0;
    for row in &rows {
        let report = verify_row_with(row, TOL).unwrap();
        if report.orientation == Orientation::Flipped {
            flips += 1;
        }
        if !report.pass {
            let worst = report
                .claims
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("k={} got {:.6}{:+.6}i", c.k, c.center.re, c.center.im))
                .collect::<Vec<_>>()
                .join(", ");
            failures.push(format!("{} [{worst}]", row_id(row)));
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && ng.len() == 18 && hi.len() == 8 && elapsed < BUDGET_TABLES;
    outcome(
        pass,
        format!(
            "{}/{} rows pass ({} near-group, {} HI), {flips} flipped, {:.2?}{}",
            rows.len() - failures.len(),
            rows.len(),
            ng.len(),
            hi.len(),
            elapsed,
            if failures.is_empty() { String::new() } else { format!("; failing: {}", failures.join("; ")) }
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let specs: Vec<(String, CategorySpec)> = builtin_rows()
        .iter()
        .map(|r| (row_id(r), r.spec.clone()))
        .chain(extra_specs().into_iter().map(|s| (s.describe(), s)))
        .collect();
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    let mut checked = 0;
    for (name, spec) in &specs {
        let a = indicator_vector(spec).unwrap();
        let b = indicator_vector_closed(spec).unwrap();
        for k in 1..=a.period {
            let d = (a.at(k) - b.at(k)).norm();
            worst = worst.max(d);
            checked += 1;
            if d >= TOL {
                bad.push(format!("{name} k={k}"));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < BUDGET_TRIANGLE,
        format!(
            "{} specs, {checked} (spec, k) pairs, max |closed - center| = {worst:.1e}, {elapsed:.2?}{}",
            specs.len(),
            if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(", ")) }
        ),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for q in [3u64, 4, 5, 8, 9, 16, 27] {
        let (p, _) = prime_power(q).unwrap();
        let group = z(q - 1);
        let spec = CategorySpec::NG1 { group: group.clone(), p, zeta1: QZValue::zero(), label: None };
        let center = spec.center().unwrap();
        for k in 1..=30u64 {
            let brute = nu_agl_bruteforce(q, k).unwrap();
            let exact = nu_ng1_exact(&group, p, QZValue::zero(), k).unwrap().as_integer();
            if exact.map(Ratio::from_integer) != Some(brute) {
                bad.push(format!("q={q} k={k} exact"));
            }
            let b = *brute.numer() as f64 / *brute.denom() as f64;
            let c = center.nu("rho", k as i64).unwrap();
            let f = nu_ng1_closed(&group, p, QZValue::zero(), k).unwrap();
            worst = worst.max((c - b).norm()).max((f - b).norm());
            if !close(c, Complex64::new(b, 0.0)) {
                bad.push(format!("q={q} k={k} center"));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < BUDGET_CLASSICAL,
        format!(
            "7 fields x 30 k, exact agreement, max float deviation {worst:.1e}, {elapsed:.2?}{}",
            if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(", ")) }
        ),
    )
}

fn criterion_4a() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    let sign_families: [(u64, Vec<CategorySpec>); 3] =
        [(1, extra_specs()[0..2].to_vec()), (3, extra_specs()[5..7].to_vec()), (7, extra_specs()[7..9].to_vec())];
    for (n, specs) in sign_families {
        let r = rigidity_report(&specs, None).unwrap();
        let ok = r.classes.len() == 2
            && r.separator(0, 1) == Some(2)
            && close(r.vectors[0].at(2), Complex64::new(1.0, 0.0))
            && close(r.vectors[1].at(2), Complex64::new(-1.0, 0.0));
        pass &= ok;
        notes.push(format!("|G|={n} at k={}", r.separator(0, 1).unwrap_or(0)));
    }
    let specs = extra_specs()[2..5].to_vec();
    let r = rigidity_report(&specs, None).unwrap();
    let mu = [QZValue::new(1, 3), QZValue::new(-1, 3)];
    let ok = r.classes.len() == 3
        && (1..3).all(|i| r.separator(0, i) == Some(3) && close(r.vectors[i].at(3), mu[i - 1].to_unit()))
        && r.separator(1, 2) == Some(3);
    pass &= ok;
    notes.push(format!("|G|=2: {} classes at k={} with nu_3 = mu", r.classes.len(), r.separator(1, 2).unwrap_or(0)));
    outcome(pass, notes.join("; "))
}

fn criterion_4b() -> Outcome {
    let rows = builtin_rows();
    let spec = |t: &str, i: usize| rows.iter().find(|r| r.table_id == t && r.row_id == i).unwrap().spec.clone();
    let mut notes = Vec::new();
    let mut pass = true;
    for (t, a, b) in [("ng13", 1, 2), ("ng13", 3, 4), ("hi3", 1, 2), ("hi3", 3, 4), ("hi5", 1, 2), ("hi5", 3, 4)] {
        let r = rigidity_report(&[spec(t, a), spec(t, b)], None).unwrap();
        let together = r.classes.len() == 1;
        pass &= together;
        notes.push(format!("{t} {a}~{b}{}", if together { "" } else { " SEPARATED" }));
    }
    outcome(pass, format!("not separated within a full period: {}", notes.join(", ")))
}

fn criterion_5_gauss() -> Outcome {
    let groups = groups_up_to(32);
    let mut forms = 0;
    let mut nondeg = 0;
    let mut bad = Vec::new();
    for g in &groups {
        for q in diagonal_forms(g) {
            forms += 1;
            if q.is_nondegenerate() {
                nondeg += 1;
                if (q.gauss_sum().norm() - 1.0).abs() >= TOL {
                    bad.push(format!("|Theta| {}", q.describe()));
                }
            }
        }
    }
    let cyclic: Vec<QuadraticForm> = (1..=16u64).flat_map(|n| diagonal_forms(&z(n))).collect();
    let mut pairs = 0;
    for a in &cyclic {
        for b in &cyclic {
            if a.group().order() * b.group().order() > 32 {
                continue;
            }
            pairs += 1;
            if !close(a.orthogonal_sum(b).gauss_sum(), a.gauss_sum() * b.gauss_sum()) {
                bad.push(format!("product {} + {}", a.describe(), b.describe()));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} groups, {forms} diagonal forms ({nondeg} nondegenerate) have |Theta| = 1; {pairs} products multiplicative{}",
            groups.len(),
            if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(", ")) }),
    )
}

fn criterion_5_scaling() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for g in groups_up_to(13).iter().filter(|g| g.order() % 2 == 1) {
        let n = g.order() as i64;
        for q in diagonal_forms(g).into_iter().filter(|q| q.is_nondegenerate()) {
            for k in (-2 * n..=4 * n).filter(|&k| num_integer::gcd(k, n) == 1) {
                checked += 1;
                let j = jacobi_symbol(k, n).unwrap() as f64;
                if !close(q.scale(k).gauss_sum(), j * q.gauss_sum()) {
                    bad.push(format!("{} k={k}", q.describe()));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{checked} (form, k) instances{}",
            if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(", ")) }
        ),
    )
}

fn criterion_5_product() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for row in builtin_rows() {
        let (spec, _) = row.spec.calibrate().unwrap();
        if let CategorySpec::NG2 { q, qp, .. } = spec {
            n += 1;
            let p = q.scale(2).gauss_sum() * qp.scale(2).gauss_sum();
            if !close(p, Complex64::new(-1.0, 0.0)) {
                bad.push(format!("{} = {p:.6}", row_id(&row)));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "Theta(G,2q) Theta(G',2q') = -1 on {}/{n} calibrated near-group rows{}",
            n - bad.len(),
            if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(", ")) }
        ),
    )
}

fn criterion_5_nu1() -> Outcome {
    let rows = builtin_rows();
    let mut bad = Vec::new();
    for row in &rows {
        let v = indicator_vector(&row.spec).unwrap();
        if !close(v.at(1), Complex64::new(0.0, 0.0)) {
            bad.push(format!("{} nu_1 = {:.6} ({:?})", row_id(row), v.at(1).re, v.orientation));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "nu_1(rho) = 0 on {}/{} specs{}",
            rows.len() - bad.len(),
            rows.len(),
            if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(", ")) }
        ),
    )
}

fn criterion_5_conjugates() -> Outcome {
    let rows = builtin_rows();
    let spec = |t: &str, i: usize| rows.iter().find(|r| r.table_id == t && r.row_id == i).unwrap().spec.clone();
    let mut bad = Vec::new();
    let pairs = [("ng3", 1, 2), ("ng7", 1, 2), ("ng9", 1, 2), ("ng11", 1, 4), ("ng11", 2, 3)];
    for (t, a, b) in pairs {
        let va = indicator_vector(&spec(t, a)).unwrap();
        let vb = indicator_vector(&spec(t, b)).unwrap();
        if !(1..=va.period).all(|k| close(va.at(k).conj(), vb.at(k))) {
            bad.push(format!("{t} {a}/{b}"));
        }
    }
    for row in &rows {
        let va = indicator_vector(&row.spec).unwrap();
        let vb = indicator_vector(&row.spec.conjugate()).unwrap();
        if !(1..=va.period).all(|k| close(va.at(k).conj(), vb.at(k))) {
            bad.push(format!("{} vs its conjugate", row_id(row)));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} printed conjugate pairs and {} spec conjugations{}",
            pairs.len(),
            rows.len(),
            if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(", ")) }
        ),
    )
}

fn criterion_5_rings() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for g in groups_up_to(13) {
        let order = g.order() as u32;
        for m in [order.saturating_sub(1), order] {
            n += 1;
            if !verify_ring(&make_near_group_ring(&g, m)).is_valid() {
                bad.push(format!("NG({g}, {m})"));
            }
        }
    }
    for k in 1..=13 {
        n += 1;
        if !verify_ring(&make_hi_ring(&z(k))).is_valid() {
            bad.push(format!("HI(Z/{k})"));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{n} rings associative with unit, duality and FP checks{}",
            if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(", ")) }
        ),
    )
}

fn criterion_5_weil() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for row in builtin_rows() {
        let forms = match &row.spec {
            CategorySpec::NG2 { q, qp, .. } => vec![q.clone(), qp.clone()],
            CategorySpec::HI { qpp, .. } => vec![qpp.clone()],
            _ => vec![],
        };
        for q in forms {
            n += 1;
            let (s, _) = fsind_core::center::weil_modular_data(&q).unwrap();
            let size = s.len();
            let unitary = (0..size).all(|i| {
                (0..size).all(|j| {
                    let dot: Complex64 = (0..size).map(|l| s[i][l] * s[j][l].conj()).sum();
                    close(dot, Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                })
            });
            if !unitary {
                bad.push(row_id(&row));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{n} table forms give unitary S{}",
            if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(", ")) }
        ),
    )
}

fn criterion_6() -> Outcome {
    let trivial = FiniteAbelianGroup::trivial();
    let five = QuadraticForm::cyclic(5, 1).unwrap();
    let hi = CategorySpec::HI { group: trivial.clone(), qpp: five.clone(), sign: None, omega: None, label: None };
    let yang_lee = hi.center().map(|c| c.objects.len()).unwrap_or(0);
    let hi_paths = match (indicator_vector(&hi), indicator_vector_closed(&hi)) {
        (Ok(a), Ok(b)) => (1..=a.period).all(|k| close(a.at(k), b.at(k))),
        _ => false,
    };

    let ng = CategorySpec::NG2 { q: QuadraticForm::zero(trivial), qp: five, label: None };
    let ng_ok = match (indicator_vector(&ng), indicator_vector_closed(&ng)) {
        (Ok(a), Ok(b)) => (1..=a.period).all(|k| close(a.at(k), b.at(k))) && close(a.at(1), Complex64::new(0.0, 0.0)),
        _ => false,
    };
    let ring_ok = verify_ring(&ng.base_ring()).is_valid();

    let agl_ok = (1..=6).all(|k| {
        let b = nu_agl_bruteforce(2, k).unwrap();
        nu_ng1_exact(&FiniteAbelianGroup::trivial(), 2, QZValue::zero(), k).unwrap().as_integer()
            == Some(*b.numer() / *b.denom())
            && *b.denom() == 1
    });
    let warned = agl_degeneracy_note(2).is_some();

    outcome(
        yang_lee == 4 && hi_paths && ng_ok && ring_ok && agl_ok && warned,
        format!(
            "HI(Z/1) center has {yang_lee} objects, paths agree: {hi_paths}; NG(Z/1,1) ring valid: {ring_ok}, paths agree with nu_1 = 0: {ng_ok}; AGL q=2 agrees: {agl_ok}, warned: {warned}"
        ),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 13] = [
        ("1  table reproduction", criterion_1),
        ("2  oracle triangle", criterion_2),
        ("3  classical cross-check", criterion_3),
        ("4a rigidity NG(G,|G|-1)", criterion_4a),
        ("4b non-separated pairs", criterion_4b),
        ("5a Gauss multiplicativity, modulus 1", criterion_5_gauss),
        ("5b Jacobi scaling law", criterion_5_scaling),
        ("5c calibrated product = -1", criterion_5_product),
        ("5d nu_1(rho) = 0", criterion_5_nu1),
        ("5e conjugate symmetry", criterion_5_conjugates),
        ("5f fusion ring axioms", criterion_5_rings),
        ("5g Weil S unitarity", criterion_5_weil),
        ("6  degenerate coverage", criterion_6),
    ];
    let mut failed = 0;
    println!("acceptance (tolerance {TOL:e})");
    for (name, run) in criteria {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{failed} of {} criteria failed", criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
