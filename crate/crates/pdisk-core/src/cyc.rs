//! Exact arithmetic in the cyclotomic field Q(zeta_m).
//!
//! Elements are stored in the canonical power basis `1, z, ..., z^(phi(m)-1)`
//! of `Q[T]/Phi_m(T)`, with `z` a primitive m-th root of unity.  Equality is
//! coefficient-wise on this reduced representation.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Cached reduction data for one cyclotomic order.
struct CycTable {
    phi: usize,
    /// Monic coefficients of Phi_m, ascending, length phi+1.
    modulus: Vec<Rat>,
    /// Row `j` is the canonical expansion of z^(phi+j), for j in 0..phi-1.
    reduction: Vec<Vec<Rat>>,
}

fn tables() -> &'static Mutex<HashMap<u32, Arc<CycTable>>> {
    static TABLES: OnceLock<Mutex<HashMap<u32, Arc<CycTable>>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

fn table(m: u32) -> Arc<CycTable> {
    assert!(m >= 1, "cyclotomic order must be positive");
    let mut guard = tables().lock().unwrap();
    if let Some(t) = guard.get(&m) {
        return t.clone();
    }
    let modulus = cyclotomic_poly(m);
    let phi = modulus.len() - 1;
    // Reduce z^(phi+j) by long division against the monic modulus.
    let mut reduction: Vec<Vec<Rat>> = Vec::with_capacity(phi.saturating_sub(1));
    // z^phi = -(lower part of modulus)
    let mut cur: Vec<Rat> = modulus[..phi].iter().map(|c| -c.clone()).collect();
    for _ in 0..phi.saturating_sub(1) {
        reduction.push(cur.clone());
        // multiply by z and reduce once
        let top = cur[phi - 1].clone();
        let mut next = vec![Rat::zero(); phi];
        for i in 1..phi {
            next[i] = cur[i - 1].clone();
        }
        if !top.is_zero() {
            for i in 0..phi {
                next[i] -= top.clone() * modulus[i].clone();
            }
        }
        cur = next;
    }
    reduction.push(cur);
    let t = Arc::new(CycTable { phi, modulus, reduction });
    guard.insert(m, t.clone());
    t
}

/// Coefficients of the m-th cyclotomic polynomial, ascending, exact.
///
/// Computed as (T^m - 1) divided by the product of the Phi_d for proper
/// divisors d of m.
fn cyclotomic_poly(m: u32) -> Vec<Rat> {
    fn int_poly_div(num: &mut Vec<BigInt>, den: &[BigInt]) {
        // exact division of monic-leading integer polynomials
        let dn = den.len() - 1;
        let mut quot = vec![BigInt::zero(); num.len() - dn];
        for k in (0..quot.len()).rev() {
            let c = num[k + dn].clone();
            if c.is_zero() {
                continue;
            }
            quot[k] = c.clone();
            for (i, d) in den.iter().enumerate() {
                num[k + i] -= &c * d;
            }
        }
        *num = quot;
    }
    fn phi_int(m: u32, memo: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
        if let Some(p) = memo.get(&m) {
            return p.clone();
        }
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = BigInt::from(-1);
        num[m as usize] = BigInt::one();
        for d in 1..m {
            if m % d == 0 {
                let pd = phi_int(d, memo);
                int_poly_div(&mut num, &pd);
            }
        }
        memo.insert(m, num.clone());
        num
    }
    let mut memo = HashMap::new();
    phi_int(m, &mut memo)
        .into_iter()
        .map(Rat::from)
        .collect()
}

/// Euler phi via the degree of the cached cyclotomic polynomial.
pub fn euler_phi(m: u32) -> usize {
    table(m).phi
}

/// An element of Q(zeta_m) in the canonical reduced basis.
#[derive(Clone, PartialEq, Eq)]
pub struct CycNum {
    m: u32,
    coeffs: Vec<Rat>,
}

impl CycNum {
    pub fn zero(m: u32) -> Self {
        let phi = euler_phi(m);
        CycNum { m, coeffs: vec![Rat::zero(); phi] }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rat(m, Rat::one())
    }

    pub fn from_rat(m: u32, r: Rat) -> Self {
        let mut c = Self::zero(m);
        c.coeffs[0] = r;
        c
    }

    pub fn from_i64(m: u32, n: i64) -> Self {
        Self::from_rat(m, rat_int(n))
    }

    /// The primitive m-th root of unity itself.
    pub fn zeta(m: u32) -> Self {
        Self::zeta_pow(m, 1)
    }

    /// zeta_m^e, with e taken mod m.
    pub fn zeta_pow(m: u32, e: i64) -> Self {
        let e = e.rem_euclid(m as i64) as u32;
        let t = table(m);
        if (e as usize) < t.phi {
            let mut c = Self::zero(m);
            c.coeffs[e as usize] = Rat::one();
            return c;
        }
        // walk up from z^(phi-1) by repeated multiplication by z
        let mut cur = Self::zero(m);
        cur.coeffs[t.phi - 1] = Rat::one();
        for _ in 0..(e as usize - (t.phi - 1)) {
            cur = cur.mul_by_z();
        }
        cur
    }

    fn mul_by_z(&self) -> Self {
        let t = table(self.m);
        let phi = t.phi;
        let top = self.coeffs[phi - 1].clone();
        let mut next = vec![Rat::zero(); phi];
        for i in 1..phi {
            next[i] = self.coeffs[i - 1].clone();
        }
        if !top.is_zero() {
            for i in 0..phi {
                next[i] -= top.clone() * t.modulus[i].clone();
            }
        }
        CycNum { m: self.m, coeffs: next }
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The coefficient of zeta^0 in the canonical basis.
    pub fn rational_part(&self) -> Rat {
        self.coeffs[0].clone()
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.coeffs[0].is_integer()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.m, other.m, "cyclotomic orders differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycNum { m: self.m, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycNum { m: self.m, coeffs }
    }

    pub fn neg(&self) -> Self {
        CycNum { m: self.m, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let t = table(self.m);
        let phi = t.phi;
        let mut raw = vec![Rat::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        let mut out = vec![Rat::zero(); phi];
        for (i, c) in raw.iter().take(phi).enumerate() {
            out[i] = c.clone();
        }
        for j in 0..phi.saturating_sub(1) {
            let c = &raw[phi + j];
            if c.is_zero() {
                continue;
            }
            for (i, r) in t.reduction[j].iter().enumerate() {
                out[i] += c * r;
            }
        }
        CycNum { m: self.m, coeffs: out }
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        CycNum { m: self.m, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Field inverse via the extended Euclidean algorithm mod Phi_m.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        if self.is_rational() {
            return Ok(Self::from_rat(self.m, Rat::one() / self.coeffs[0].clone()));
        }
        let t = table(self.m);
        // ext_gcd(a, Phi_m) over Q[T]: find u with u*a + v*Phi = gcd (a unit)
        let a: Vec<Rat> = trim(self.coeffs.clone());
        let b: Vec<Rat> = t.modulus.clone();
        let (g, u, _v) = ext_gcd(&a, &b);
        // g is a nonzero constant since Phi_m is irreducible and a != 0
        debug_assert_eq!(g.len(), 1);
        let ginv = Rat::one() / g[0].clone();
        let mut coeffs = vec![Rat::zero(); t.phi];
        for (i, c) in u.iter().enumerate() {
            // deg u < deg Phi, so this fits the basis
            coeffs[i] = c * &ginv;
        }
        let out = CycNum { m: self.m, coeffs };
        debug_assert!(out.mul(self).is_one());
        Ok(out)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// tau-normalization of the rational coordinate: returns `(c', n)` with
    /// `c = c' + n`, `n` integer, and the rational coordinate of `c'` in [0,1).
    pub fn tau_normalize(&self) -> (Self, BigInt) {
        let n = self.coeffs[0].floor().to_integer();
        let mut out = self.clone();
        out.coeffs[0] -= Rat::from(n.clone());
        (out, n)
    }

    /// Whether the element lies in the fixed transversal tau of C/Z.
    pub fn in_tau(&self) -> bool {
        let r = &self.coeffs[0];
        !r.is_negative() && r < &Rat::one()
    }

    /// Deterministic ordering for canonical block sorting.
    pub fn cmp_key(&self, other: &Self) -> std::cmp::Ordering {
        self.check(other);
        self.coeffs.cmp(&other.coeffs)
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn poly_deg(p: &[Rat]) -> usize {
    p.len() - 1
}

fn poly_divrem(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = num.to_vec();
    let dd = poly_deg(den);
    let lead = den[dd].clone();
    if poly_deg(&rem) < dd {
        return (vec![Rat::zero()], trim(rem));
    }
    let mut quot = vec![Rat::zero(); poly_deg(&rem) - dd + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone() / lead.clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
    }
    (trim(quot), trim(rem))
}

/// Extended gcd over Q[T]: returns (g, u, v) with u*a + v*b = g.
fn ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut u0 = vec![Rat::one()];
    let mut u1 = vec![Rat::zero()];
    let mut v0 = vec![Rat::zero()];
    let mut v1 = vec![Rat::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let u2 = poly_sub(&u0, &poly_mul(&q, &u1));
        let v2 = poly_sub(&v0, &poly_mul(&q, &v1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    (r0, u0, v0)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "z".to_string(),
                k => format!("z^{k}"),
            };
            if var.is_empty() {
                parts.push(format!("{c}"));
            } else if c.is_one() {
                parts.push(var);
            } else {
                parts.push(format!("{c}*{var}"));
            }
        }
        write!(f, "({})", parts.join(" + "))
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        // Phi_1 = T - 1, Phi_2 = T + 1, Phi_3 = T^2 + T + 1, Phi_4 = T^2 + 1,
        // Phi_6 = T^2 - T + 1
        assert_eq!(cyclotomic_poly(1), vec![rat_int(-1), rat_int(1)]);
        assert_eq!(cyclotomic_poly(2), vec![rat_int(1), rat_int(1)]);
        assert_eq!(cyclotomic_poly(3), vec![rat_int(1), rat_int(1), rat_int(1)]);
        assert_eq!(cyclotomic_poly(4), vec![rat_int(1), rat_int(0), rat_int(1)]);
        assert_eq!(cyclotomic_poly(6), vec![rat_int(1), rat_int(-1), rat_int(1)]);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn inverse_of_zeta_m4() {
        // zeta^(-1) = -zeta since zeta^2 = -1
        let z = CycNum::zeta(4);
        let inv = z.inverse().unwrap();
        assert_eq!(inv, z.neg());
        assert!(z.mul(&inv).is_one());
    }

    #[test]
    fn inverse_of_two_m1() {
        let two = CycNum::from_i64(1, 2);
        assert_eq!(two.inverse().unwrap(), CycNum::from_rat(1, rat(1, 2)));
    }

    #[test]
    fn inverse_one_plus_zeta_m3() {
        // (1+z)(-z) = -z - z^2 = 1 mod z^2+z+1
        let a = CycNum::one(3).add(&CycNum::zeta(3));
        let inv = a.inverse().unwrap();
        assert_eq!(inv, CycNum::zeta(3).neg());
        assert!(a.mul(&inv).is_one());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(CycNum::zero(5).inverse(), Err(Error::ZeroDivision));
    }

    #[test]
    fn zeta_power_wraps() {
        let m = 6;
        let z = CycNum::zeta(m);
        let mut p = CycNum::one(m);
        for e in 0..2 * m as i64 {
            assert_eq!(CycNum::zeta_pow(m, e), p, "zeta^{e}");
            p = p.mul(&z);
        }
        assert!(CycNum::zeta_pow(m, m as i64).is_one());
    }

    #[test]
    fn tau_normalization() {
        let (c, n) = CycNum::from_rat(1, rat(7, 2)).tau_normalize();
        assert_eq!(c, CycNum::from_rat(1, rat(1, 2)));
        assert_eq!(n, BigInt::from(3));
        let (c, n) = CycNum::from_rat(1, rat(-1, 2)).tau_normalize();
        assert_eq!(c, CycNum::from_rat(1, rat(1, 2)));
        assert_eq!(n, BigInt::from(-1));
        assert!(c.in_tau());
        // tau meets the integers only in 0
        assert!(CycNum::zero(1).in_tau());
        assert!(!CycNum::from_i64(1, 1).in_tau());
        assert!(!CycNum::from_i64(1, -1).in_tau());
    }

    #[test]
    fn random_field_identities() {
        // (a*b)*a^{-1} = b for a few fixed elements in Q(zeta_12)
        let m = 12;
        let samples = [
            CycNum::zeta(m).add(&CycNum::from_i64(m, 2)),
            CycNum::zeta_pow(m, 5).sub(&CycNum::from_rat(m, rat(1, 3))),
            CycNum::zeta_pow(m, 7).mul_rat(&rat(3, 5)).add(&CycNum::zeta_pow(m, 2)),
        ];
        for a in &samples {
            for b in &samples {
                let ab = a.mul(b);
                assert_eq!(ab.mul(&a.inverse().unwrap()), *b);
            }
        }
    }
}
