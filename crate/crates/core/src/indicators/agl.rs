use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::qforms::prime_power;

const MAX_Q: u64 = 64;

/// `F_q = F_p[x]/(f)`; element `i` has base-`p` digits as its coefficients,
/// lowest degree first.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    degree: u32,
    modulus: Vec<u64>,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, degree) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(Error::Inadmissible(format!("q = {q} exceeds {MAX_Q}")));
        }
        let l = degree as usize;
        let size = q as usize;
        let digits = |mut i: usize| -> Vec<u64> {
            (0..l)
                .map(|_| {
                    let d = (i as u64) % p;
                    i /= p as usize;
                    d
                })
                .collect()
        };
        let index = |v: &[u64]| -> usize { v.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize) };

        let mut add = vec![0usize; size * size];
        for a in 0..size {
            for b in 0..size {
                let s: Vec<u64> = digits(a).iter().zip(digits(b)).map(|(x, y)| (x + y) % p).collect();
                add[a * size + b] = index(&s);
            }
        }

        // Monic f = x^l + c_{l-1} x^{l-1} + ... + c_0, tried in index order of
        // (c_0, ..., c_{l-1}); the first one giving a zero-divisor-free
        // multiplication is irreducible.
        for tail in 0..size {
            let modulus = digits(tail);
            let mul = Self::mul_table(p, l, &modulus, &digits, &index);
            let domain = (1..size).all(|a| (1..size).all(|b| mul[a * size + b] != 0));
            if domain {
                return Ok(Self { p, degree, modulus, add, mul });
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    fn mul_table(
        p: u64,
        l: usize,
        modulus: &[u64],
        digits: &dyn Fn(usize) -> Vec<u64>,
        index: &dyn Fn(&[u64]) -> usize,
    ) -> Vec<usize> {
        let size = p.pow(l as u32) as usize;
        let mut mul = vec![0usize; size * size];
        for a in 0..size {
            for b in 0..size {
                let (da, db) = (digits(a), digits(b));
                let mut prod = vec![0u64; 2 * l];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // x^l = -(c_0 + ... + c_{l-1} x^{l-1})
                for deg in (l..2 * l).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, m) in modulus.iter().enumerate() {
                        let shift = deg - l + i;
                        prod[shift] = (prod[shift] + (p - c) * m) % p;
                    }
                }
                mul[a * size + b] = index(&prod[..l]);
            }
        }
        mul
    }

    pub fn order(&self) -> usize {
        self.p.pow(self.degree) as usize
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficients `c_0, ..., c_{l-1}` of the monic defining polynomial.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order() + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn one(&self) -> usize {
        1
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (1..self.order()).find(|&b| self.mul(a, b) == 1)
    }

    /// Base-`p` coordinate vector of an element.
    pub fn coordinates(&self, mut a: usize) -> Vec<u64> {
        (0..self.degree)
            .map(|_| {
                let d = a as u64 % self.p;
                a /= self.p as usize;
                d
            })
            .collect()
    }
}

/// `AGL_1(F_q) = F_q ⋊ F_q^x` with `(a, b)(a', b') = (a + b a', b b')`.
#[derive(Clone, Debug)]
pub struct AglGroup {
    pub field: FiniteField,
    pub elements: Vec<(usize, usize)>,
}

impl AglGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, x: (usize, usize), y: (usize, usize)) -> (usize, usize) {
        let f = &self.field;
        (f.add(x.0, f.mul(x.1, y.0)), f.mul(x.1, y.1))
    }

    pub fn pow(&self, x: (usize, usize), k: u64) -> (usize, usize) {
        let mut acc = (0, self.field.one());
        let mut base = x;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: (usize, usize)) -> u64 {
        let id = (0, self.field.one());
        let mut y = x;
        let mut n = 1;
        while y != id {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        self.elements.iter().all(|&x| self.elements.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }
}

/// Warning text for parameters where the comparison is degenerate, if any.
pub fn agl_degeneracy_note(q: u64) -> Option<&'static str> {
    (q == 2).then_some("q = 2 is degenerate: G is trivial, AGL_1(F_2) = Z/2 and rho is its sign character")
}

pub fn build_agl(q: u64) -> Result<AglGroup> {
    let field = FiniteField::new(q)?;
    let size = field.order();
    let elements = (1..size).flat_map(|b| (0..size).map(move |a| (a, b))).collect();
    Ok(AglGroup { field, elements })
}

/// Exact `(1/|AGL|) sum_x chi(x^k)` for the `(q-1)`-dimensional irreducible
/// character `chi(a, 1) = sum_{y != 0} eta(y a)`, `chi(a, b != 1) = 0`, with
/// `eta(x) = exp(2 pi i x_0 / p)`.
pub fn nu_agl_bruteforce(q: u64, k: u64) -> Result<Ratio<i64>> {
    let (_, l) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let mut eta = vec![0u64; l as usize];
    eta[0] = 1;
    nu_agl_bruteforce_with(q, k, &eta)
}

/// As [`nu_agl_bruteforce`] with `eta(x) = exp(2 pi i <c, x> / p)` for the
/// nonzero coordinate vector `c`.
pub fn nu_agl_bruteforce_with(q: u64, k: u64, eta: &[u64]) -> Result<Ratio<i64>> {
    let group = build_agl(q)?;
    let f = &group.field;
    let p = f.characteristic();
    if eta.len() != f.degree() as usize || eta.iter().all(|&c| c % p == 0) {
        return Err(Error::Inadmissible("eta must be a nontrivial additive character".into()));
    }
    let eta_exp = |x: usize| -> usize {
        let s: u64 = f.coordinates(x).iter().zip(eta).map(|(a, c)| a * c).sum();
        (s % p) as usize
    };

    // Accumulate sum_x chi(x^k) in Z[zeta_p] as coefficients of zeta_p^j.
    let mut coeffs = vec![0i64; p as usize];
    for &x in &group.elements {
        let (a, b) = group.pow(x, k);
        if b != f.one() {
            continue;
        }
        for y in 1..f.order() {
            coeffs[eta_exp(f.mul(y, a))] += 1;
        }
    }
    // 1 + zeta + ... + zeta^{p-1} = 0, so the sum is rational iff all
    // non-constant coefficients agree.
    if coeffs[1..].iter().any(|&c| c != coeffs[1]) {
        return Err(Error::Inadmissible("class sum is not rational".into()));
    }
    let value = coeffs[0] - coeffs[1];
    Ok(Ratio::new(value, group.order() as i64))
}
