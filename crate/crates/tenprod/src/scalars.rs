//! Exact arithmetic in cyclotomic fields `ℚ(ζ_N)`.
//!
//! A [`CycScalar`] is kept in a canonical form that makes structural equality
//! coincide with field equality: coefficients over the power basis
//! `{ζ_N^k : k < φ(N)}` (reduction modulo the `N`-th cyclotomic polynomial),
//! at the smallest cyclotomic order containing the value.  Sums and products
//! of values of order `N` and `M` land in order `lcm(N, M)` before being
//! reduced back down.
//!
//! Roots of unity are the computable fragment of the unit circle used by the
//! rest of the crate; `is_unit_modulus` is decided exactly via `z·conj(z) = 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::{Error, Result};

pub type Rational = BigRational;

/// Hard cap on cyclotomic orders.  Geometric-phase coordinates at index `i`
/// live in orders growing like `m^i`; past this bound we refuse to
/// materialize the value instead of grinding through huge dense reductions.
pub const MAX_ORDER: u32 = 4096;

/// Orders whose degree is at most this get the full Galois-descent treatment,
/// guaranteeing minimality of the stored order.  Larger orders (only reachable
/// through deep geometric-phase coordinates) rely on the exponent-gcd and
/// `2 mod 4` folds, which cover every value those coordinates produce.
const SOLVE_PHI_CAP: usize = 32;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials, cached sparsely.

static CYCLO_CACHE: Lazy<Mutex<HashMap<u32, Vec<(u32, BigInt)>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Sparse coefficients of the `n`-th cyclotomic polynomial, ascending degree.
fn cyclotomic(n: u32) -> Vec<(u32, BigInt)> {
    if let Some(hit) = CYCLO_CACHE.lock().unwrap().get(&n) {
        return hit.clone();
    }
    // Build ascending over divisors so each division is exact and cached.
    let mut divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    divisors.sort_unstable();
    for d in divisors {
        if CYCLO_CACHE.lock().unwrap().contains_key(&d) {
            continue;
        }
        // x^d - 1 divided by all Φ_e with e | d, e < d.
        let mut num: Vec<BigInt> = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        for e in 1..d {
            if d % e != 0 {
                continue;
            }
            let phi_e = CYCLO_CACHE.lock().unwrap().get(&e).unwrap().clone();
            num = int_poly_div_exact(num, &phi_e);
        }
        let sparse: Vec<(u32, BigInt)> = num
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u32, c))
            .collect();
        CYCLO_CACHE.lock().unwrap().insert(d, sparse);
    }
    CYCLO_CACHE.lock().unwrap().get(&n).unwrap().clone()
}

/// Exact division of an integer polynomial by a monic sparse divisor.
fn int_poly_div_exact(mut num: Vec<BigInt>, den: &[(u32, BigInt)]) -> Vec<BigInt> {
    let dm = den.last().unwrap().0 as usize;
    debug_assert!(den.last().unwrap().1.is_one());
    let mut quot = vec![BigInt::zero(); num.len().saturating_sub(dm)];
    for k in (dm..num.len()).rev() {
        let c = std::mem::replace(&mut num[k], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for (e, d) in den.iter().take(den.len() - 1) {
            let idx = k - dm + *e as usize;
            let sub = &c * d;
            num[idx] -= sub;
        }
        quot[k - dm] = c;
    }
    debug_assert!(num.iter().all(|c| c.is_zero()));
    quot
}

// ---------------------------------------------------------------------------
// Subfield basis columns for Galois descent.

static SUBFIELD_CACHE: Lazy<Mutex<HashMap<(u32, u32), Vec<Vec<Rational>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Columns expressing the power basis of `ℚ(ζ_d)` inside `ℚ(ζ_n)` (as dense
/// coefficient vectors of length `φ(n)`), for `d | n`.
fn subfield_columns(n: u32, d: u32) -> Vec<Vec<Rational>> {
    if let Some(hit) = SUBFIELD_CACHE.lock().unwrap().get(&(n, d)) {
        return hit.clone();
    }
    let phi_n = euler_phi(n) as usize;
    let phi_d = euler_phi(d) as usize;
    let step = (n / d) as usize;
    let mut cols = Vec::with_capacity(phi_d);
    for j in 0..phi_d {
        let mut dense = vec![Rational::zero(); step * j + 1];
        dense[step * j] = Rational::one();
        reduce_mod_cyclotomic(&mut dense, n);
        dense.resize(phi_n, Rational::zero());
        cols.push(dense);
    }
    SUBFIELD_CACHE
        .lock()
        .unwrap()
        .insert((n, d), cols.clone());
    cols
}

/// Solve `Σ_j c_j · cols[j] = v` exactly; `None` when `v` is outside the span.
fn solve_in_span(cols: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let rows = v.len();
    let ncols = cols.len();
    let mut aug: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut r0 = 0usize;
    for c in 0..ncols {
        let Some(pr) = (r0..rows).find(|&r| !aug[r][c].is_zero()) else {
            pivot_rows.push(None);
            continue;
        };
        aug.swap(r0, pr);
        let inv = aug[r0][c].clone();
        for x in aug[r0][c..].iter_mut() {
            *x = &*x / &inv;
        }
        for r in 0..rows {
            if r != r0 && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                for cc in c..=ncols {
                    let sub = &f * &aug[r0][cc];
                    aug[r][cc] = &aug[r][cc] - sub;
                }
            }
        }
        pivot_rows.push(Some(r0));
        r0 += 1;
    }
    // Any nonzero residue row means inconsistency.
    for r in r0..rows {
        if !aug[r][ncols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rational::zero(); ncols];
    for (c, pr) in pivot_rows.iter().enumerate() {
        if let Some(r) = pr {
            sol[c] = aug[*r][ncols].clone();
        }
    }
    Some(sol)
}

/// Reduce a dense polynomial in place modulo `Φ_n`, leaving degree `< φ(n)`.
/// Exponents are first folded with `x^n = 1`.
fn reduce_mod_cyclotomic(dense: &mut Vec<Rational>, n: u32) {
    let n_us = n as usize;
    if dense.len() > n_us {
        for k in (n_us..dense.len()).rev() {
            let c = std::mem::replace(&mut dense[k], Rational::zero());
            if !c.is_zero() {
                dense[k % n_us] = &dense[k % n_us] + c;
            }
        }
        dense.truncate(n_us);
    }
    let phi = euler_phi(n) as usize;
    if dense.len() <= phi {
        return;
    }
    let divisor = cyclotomic(n);
    let dm = divisor.last().unwrap().0 as usize;
    debug_assert_eq!(dm, phi);
    for k in (phi..dense.len()).rev() {
        let c = std::mem::replace(&mut dense[k], Rational::zero());
        if c.is_zero() {
            continue;
        }
        for (e, d) in divisor.iter().take(divisor.len() - 1) {
            let idx = k - dm + *e as usize;
            let sub = &c * &Rational::from(d.clone());
            dense[idx] = &dense[idx] - sub;
        }
    }
    dense.truncate(phi);
}

// ---------------------------------------------------------------------------

/// An exact element of a cyclotomic field `ℚ(ζ_N)` in canonical form.
///
/// The derived `Ord` is the structural order on `(order, coefficients)`; it is
/// the fixed total order used for canonical tie-breaking, not a numeric order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycScalar {
    order: u32,
    coeffs: BTreeMap<u32, Rational>,
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar {
            order: 1,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(rational(num, den))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !q.is_zero() {
            coeffs.insert(0, q);
        }
        CycScalar { order: 1, coeffs }
    }

    /// `ζ_order^exp`, canonicalized.
    pub fn root_of_unity(order: u32, exp: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::Other("root of unity needs positive order".into()));
        }
        let e = exp.rem_euclid(order as i64) as u32;
        let g = e.gcd(&order);
        let (order, e) = (order / g, e / g);
        if order > MAX_ORDER {
            return Err(Error::CapExceeded(format!(
                "cyclotomic order {order} exceeds {MAX_ORDER}"
            )));
        }
        let mut dense = vec![Rational::zero(); e as usize + 1];
        dense[e as usize] = Rational::one();
        Ok(Self::canonical_from_dense(order, dense))
    }

    /// `exp(2πi·r)` as an exact root of unity.
    pub fn from_phase(r: &Rational) -> Result<Self> {
        let den = r.denom().clone();
        let num = r.numer().mod_floor(r.denom());
        let den_u = den
            .to_u32()
            .ok_or_else(|| Error::CapExceeded("phase denominator too large".into()))?;
        let num_u = num.to_i64().ok_or_else(|| {
            Error::CapExceeded("phase numerator too large".into())
        })?;
        Self::root_of_unity(den_u, num_u)
    }

    pub fn i() -> Self {
        Self::root_of_unity(4, 1).unwrap()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    fn canonical_from_dense(order: u32, mut dense: Vec<Rational>) -> Self {
        let mut n = order;
        loop {
            reduce_mod_cyclotomic(&mut dense, n);
            while let Some(last) = dense.last() {
                if last.is_zero() {
                    dense.pop();
                } else {
                    break;
                }
            }
            if dense.is_empty() {
                return CycScalar::zero();
            }
            if dense.len() == 1 {
                n = 1;
                break;
            }
            // ℚ(ζ_{2m}) = ℚ(ζ_m) for odd m: substitute ζ_{2m} = -ζ_m^{(m+1)/2}.
            if n % 2 == 0 && (n / 2) % 2 == 1 && n > 2 {
                let m = n / 2;
                let half = (m + 1) / 2;
                let mut next = vec![Rational::zero(); m as usize];
                for (k, c) in dense.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let idx = ((k as u32 * half) % m) as usize;
                    let signed = if k % 2 == 1 { -c.clone() } else { c.clone() };
                    next[idx] = &next[idx] + signed;
                }
                dense = next;
                n = m;
                continue;
            }
            // All exponents share a factor with n: the value lives at order n/g.
            let mut g = n;
            for (k, c) in dense.iter().enumerate() {
                if k > 0 && !c.is_zero() {
                    g = g.gcd(&(k as u32));
                }
            }
            if g > 1 {
                let mut next = vec![Rational::zero(); (dense.len() - 1) / g as usize + 1];
                for (k, c) in dense.iter().enumerate() {
                    if !c.is_zero() {
                        next[k / g as usize] = c.clone();
                    }
                }
                dense = next;
                n /= g;
                continue;
            }
            if (euler_phi(n) as usize) <= SOLVE_PHI_CAP {
                let phi_n = euler_phi(n) as usize;
                dense.resize(phi_n, Rational::zero());
                let mut descended = false;
                for p in prime_factors(n) {
                    let d = n / p;
                    let cols = subfield_columns(n, d);
                    if let Some(sol) = solve_in_span(&cols, &dense) {
                        dense = sol;
                        n = d;
                        descended = true;
                        break;
                    }
                }
                if descended {
                    continue;
                }
            }
            break;
        }
        let coeffs = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u32, c))
            .collect();
        CycScalar { order: n, coeffs }
    }

    fn dense_at(&self, target: u32) -> Vec<Rational> {
        debug_assert_eq!(target % self.order, 0);
        let step = (target / self.order) as usize;
        let max = self.coeffs.keys().next_back().copied().unwrap_or(0) as usize;
        let mut dense = vec![Rational::zero(); max * step + 1];
        for (k, c) in &self.coeffs {
            dense[*k as usize * step] = c.clone();
        }
        dense
    }

    fn merged_order(&self, other: &Self) -> Result<u32> {
        let l = (self.order as u64).lcm(&(other.order as u64));
        if l > MAX_ORDER as u64 {
            return Err(Error::CapExceeded(format!(
                "cyclotomic order {l} exceeds {MAX_ORDER}"
            )));
        }
        Ok(l as u32)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let l = self.merged_order(other)?;
        let mut a = self.dense_at(l);
        let b = other.dense_at(l);
        if b.len() > a.len() {
            a.resize(b.len(), Rational::zero());
        }
        for (k, c) in b.into_iter().enumerate() {
            if !c.is_zero() {
                a[k] = &a[k] + c;
            }
        }
        Ok(Self::canonical_from_dense(l, a))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let l = self.merged_order(other)?;
        let a = self.dense_at(l);
        let b = other.dense_at(l);
        let mut prod = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let term = ca * cb;
                prod[i + j] = &prod[i + j] + term;
            }
        }
        Ok(Self::canonical_from_dense(l, prod))
    }

    /// Complex conjugate: `ζ_N ↦ ζ_N^{N-1}` with rational coefficients fixed.
    pub fn conj(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        let n = self.order as usize;
        let mut dense = vec![Rational::zero(); n];
        for (k, c) in &self.coeffs {
            dense[(n - *k as usize) % n] = c.clone();
        }
        Self::canonical_from_dense(self.order, dense)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.order == 1 {
            let q = self.coeffs.get(&0).unwrap();
            return Ok(Self::from_rational(Rational::one() / q));
        }
        // Extended Euclid in ℚ[x] against Φ_N; the gcd must be a nonzero
        // constant since Φ_N is irreducible.
        let phi: Vec<Rational> = {
            let sparse = cyclotomic(self.order);
            let deg = sparse.last().unwrap().0 as usize;
            let mut v = vec![Rational::zero(); deg + 1];
            for (e, c) in sparse {
                v[e as usize] = Rational::from(c);
            }
            v
        };
        let a = self.dense_at(self.order);
        let (g, s) = poly_ext_gcd(&a, &phi);
        debug_assert_eq!(g.len(), 1);
        let ginv = Rational::one() / &g[0];
        let dense: Vec<Rational> = s.iter().map(|c| c * &ginv).collect();
        Ok(Self::canonical_from_dense(self.order, dense))
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs.len() == 1 && self.coeffs.get(&0).unwrap().is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.order == 1 {
            Some(
                self.coeffs
                    .get(&0)
                    .cloned()
                    .unwrap_or_else(Rational::zero),
            )
        } else {
            None
        }
    }

    /// `z·conj(z)`, always a real cyclotomic value.
    pub fn norm_sqr(&self) -> Self {
        self.mul(&self.conj()).expect("norm stays within order cap")
    }

    /// Exact test for `|z| = 1`.
    pub fn is_unit_modulus(&self) -> bool {
        self.norm_sqr().is_one()
    }

    /// Read-only floating export for reports.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in &self.coeffs {
            let q = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * (*k as f64) / n;
            re += q * t.cos();
            im += q * t.sin();
        }
        (re, im)
    }
}

/// Extended gcd over `ℚ[x]`: returns `(g, s)` with `s·a ≡ g (mod b)` and `g`
/// the (non-normalized) gcd; callers divide by the constant `g`.
fn poly_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let trim = |mut v: Vec<Rational>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = vec![Rational::one()];
    let mut s1: Vec<Rational> = vec![];
    while !r1.is_empty() {
        // r0 = q·r1 + r, deg r < deg r1
        let mut rem = r0.clone();
        let mut q = vec![Rational::zero(); rem.len().saturating_sub(r1.len()) + 1];
        let lead = r1.last().unwrap().clone();
        while rem.len() >= r1.len() && !rem.is_empty() {
            let k = rem.len() - r1.len();
            let f = rem.last().unwrap() / &lead;
            q[k] = f.clone();
            for (i, c) in r1.iter().enumerate() {
                let sub = &f * c;
                rem[k + i] = &rem[k + i] - sub;
            }
            rem = trim(rem);
        }
        // s = s0 - q·s1
        let mut s = s0.clone();
        let qs1_len = q.len() + s1.len();
        if qs1_len > 0 {
            s.resize(s.len().max(qs1_len.saturating_sub(1)), Rational::zero());
        }
        for (i, qc) in q.iter().enumerate() {
            if qc.is_zero() {
                continue;
            }
            for (j, sc) in s1.iter().enumerate() {
                if i + j >= s.len() {
                    s.resize(i + j + 1, Rational::zero());
                }
                let sub = qc * sc;
                s[i + j] = &s[i + j] - sub;
            }
        }
        r0 = r1;
        r1 = trim(rem);
        s0 = s1;
        s1 = trim(s);
    }
    (r0, s0)
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *k == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", fmt_rational(&mag))?;
                }
                if *k == 1 {
                    write!(f, "zeta({})", self.order)?;
                } else {
                    write!(f, "zeta({})^{}", self.order, k)?;
                }
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.add(rhs).expect("order cap exceeded in +")
    }
}

impl std::ops::Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.sub(rhs).expect("order cap exceeded in -")
    }
}

impl std::ops::Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.mul(rhs).expect("order cap exceeded in *")
    }
}

impl std::ops::Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(n: u32, k: i64) -> CycScalar {
        CycScalar::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycScalar::i();
        assert_eq!(i.mul(&i).unwrap(), CycScalar::from_int(-1));
    }

    #[test]
    fn cyclotomic_relation_order_three() {
        let z = zeta(3, 1);
        let sum = CycScalar::one()
            .add(&z)
            .unwrap()
            .add(&z.mul(&z).unwrap())
            .unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn pythagorean_unit_modulus() {
        // Independent check of the oracle first: (3/5)^2 + (4/5)^2 = 1.
        let lhs = rational(3, 5) * rational(3, 5) + rational(4, 5) * rational(4, 5);
        assert!(lhs.is_one());
        let s = CycScalar::from_ratio(3, 5)
            .add(&CycScalar::from_ratio(4, 5).mul(&CycScalar::i()).unwrap())
            .unwrap();
        assert!(s.is_unit_modulus());
        assert!(!CycScalar::from_ratio(1, 2).is_unit_modulus());
    }

    #[test]
    fn minimal_order_is_canonical() {
        // ζ_6 lives in ℚ(ζ_3) as 1 + ζ_3.
        let z6 = zeta(6, 1);
        assert_eq!(z6.order(), 3);
        assert_eq!(z6, CycScalar::one().add(&zeta(3, 1)).unwrap());
        // ζ_8^2 = i.
        assert_eq!(zeta(8, 2), CycScalar::i());
        // ζ_4^2 folds to the rational -1.
        assert_eq!(zeta(4, 2).order(), 1);
    }

    #[test]
    fn inverse_and_conjugate() {
        let z = zeta(8, 3);
        assert!(z.mul(&z.inv().unwrap()).unwrap().is_one());
        assert_eq!(z.conj(), z.inv().unwrap()); // unit modulus: conj = inverse
        let q = CycScalar::from_ratio(-7, 3);
        assert!(q.mul(&q.inv().unwrap()).unwrap().is_one());
        assert_eq!(CycScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_order_arithmetic_lands_in_lcm() {
        let a = zeta(3, 1);
        let b = zeta(4, 1);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.order(), 12);
        assert_eq!(p, zeta(12, 7));
        let s = a.add(&b).unwrap();
        assert!(s.order() == 12);
        assert_eq!(s.sub(&b).unwrap(), a);
    }

    #[test]
    fn phase_constructor() {
        assert_eq!(CycScalar::from_phase(&rational(1, 2)).unwrap(), CycScalar::from_int(-1));
        assert_eq!(CycScalar::from_phase(&rational(5, 4)).unwrap(), CycScalar::i());
        assert_eq!(CycScalar::from_phase(&rational(2, 1)).unwrap(), CycScalar::one());
        assert_eq!(
            CycScalar::from_phase(&rational(-1, 3)).unwrap(),
            zeta(3, 2)
        );
    }

    #[test]
    fn approx_export() {
        let (re, im) = zeta(8, 1).approx();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((re - s).abs() < 1e-12 && (im - s).abs() < 1e-12);
    }

    #[test]
    fn display_round_trip_form() {
        assert_eq!(CycScalar::zero().to_string(), "0");
        assert_eq!(CycScalar::from_ratio(-1, 2).to_string(), "-1/2");
        let v = CycScalar::from_ratio(1, 2).add(&zeta(3, 1).neg()).unwrap();
        assert_eq!(v.to_string(), "1/2 - zeta(3)");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_scalar() -> impl Strategy<Value = CycScalar> {
            let orders = prop::sample::select(vec![1u32, 2, 3, 4, 6, 8, 12]);
            (orders, -3i64..4, -3i64..4, 1i64..4).prop_map(|(n, k, num, den)| {
                let root = CycScalar::root_of_unity(n, k).unwrap();
                let q = CycScalar::from_ratio(num, den);
                root.mul(&q).unwrap().add(&CycScalar::from_int(k)).unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn field_laws(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
                let ab_c = a.add(&b).unwrap().add(&c).unwrap();
                let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
                prop_assert_eq!(ab_c, a_bc);
                let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
                let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
                let m_ab = a.mul(&b).unwrap();
                prop_assert_eq!(m_ab.clone(), b.mul(&a).unwrap());
                prop_assert_eq!(m_ab.conj(), a.conj().mul(&b.conj()).unwrap());
                prop_assert_eq!(a.conj().conj(), a.clone());
                if !a.is_zero() {
                    prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
                }
            }

            #[test]
            fn embedding_commutes_with_arithmetic(k in -5i64..6, num in -3i64..4, den in 1i64..4) {
                // ℚ(ζ_3) → ℚ(ζ_12) through multiplying by order-4 values.
                let a = CycScalar::root_of_unity(3, k).unwrap()
                    .mul(&CycScalar::from_ratio(num, den)).unwrap();
                let b = CycScalar::root_of_unity(4, k + 1).unwrap();
                let sum = a.add(&b).unwrap();
                let prod = a.mul(&b).unwrap();
                prop_assert_eq!(sum.sub(&b).unwrap(), a.clone());
                if !a.is_zero() {
                    prop_assert_eq!(prod.mul(&a.inv().unwrap()).unwrap(), b);
                }
            }
        }
    }
}
