//! Truncated Laurent/Puiseux series in `x_s` over `C[t]/t^(L+1)`, with the
//! scalar field C fixed to Q(zeta_m).
//!
//! A [`Series`] stores finitely many monomials `c * t^j * x_s^k` and a pair
//! of precision windows: every coefficient with x-exponent below `prec` (and
//! t-exponent below `t_prec`) is exactly known; everything at or above the
//! window is unknown, not zero.  Operations compute the largest window on
//! which the result is certified and record it.
//!
//! The derivation is `theta = s^(-1) x_s d/dx_s`, so `theta(x_s^k) = (k/s) x_s^k`
//! and t-only elements are constants.
//!
//! When `t_unit` is set on the parameters, t is treated as invertible:
//! negative t-exponents are admitted and the t-window is tracked just like
//! the x-window.  In the default mode the coefficient ring is the honest
//! quotient `C[t]/t^(L+1)` and the t-window is constantly `L+1`.

use std::collections::BTreeMap;
use std::fmt;

use num::BigInt;

use crate::cyc::{rat_int, CycNum, Rat};
use crate::error::{Error, Result};

/// Exclusive upper bound of the certified x-window.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum XPrec {
    Finite(i64),
    Exact,
}

impl XPrec {
    pub fn min(self, other: XPrec) -> XPrec {
        std::cmp::min(self, other)
    }

    pub fn contains(self, k: i64) -> bool {
        match self {
            XPrec::Finite(p) => k < p,
            XPrec::Exact => true,
        }
    }

    pub fn shift(self, d: i64) -> XPrec {
        match self {
            XPrec::Finite(p) => XPrec::Finite(p + d),
            XPrec::Exact => XPrec::Exact,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            XPrec::Finite(p) => Some(p),
            XPrec::Exact => None,
        }
    }
}

impl fmt::Display for XPrec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XPrec::Finite(p) => write!(f, "{p}"),
            XPrec::Exact => write!(f, "exact"),
        }
    }
}

/// Shared parameters of a computation: cyclotomic order, ramification index,
/// t-truncation order, and whether t is treated as a unit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SeriesParams {
    pub m: u32,
    pub s: u32,
    pub l: u32,
    pub t_unit: bool,
}

impl SeriesParams {
    pub fn new(m: u32, s: u32, l: u32) -> Self {
        assert!(s >= 1, "ramification index must be >= 1");
        SeriesParams { m, s, l, t_unit: false }
    }

    pub fn with_t_unit(mut self) -> Self {
        self.t_unit = true;
        self
    }

    pub fn t_window(&self) -> i64 {
        self.l as i64 + 1
    }
}

/// A truncated Laurent/Puiseux series.  Keys are `(x_s-exponent, t-exponent)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    params: SeriesParams,
    prec: XPrec,
    t_prec: i64,
    terms: BTreeMap<(i64, i64), CycNum>,
}

impl Series {
    pub fn zero(params: SeriesParams, prec: XPrec) -> Self {
        Series { params, prec, t_prec: params.t_window(), terms: BTreeMap::new() }
    }

    /// The exactly-known zero series.
    pub fn zero_exact(params: SeriesParams) -> Self {
        Self::zero(params, XPrec::Exact)
    }

    pub fn one(params: SeriesParams) -> Self {
        Self::constant(params, CycNum::one(params.m))
    }

    /// An exact constant (x-free, t-free).
    pub fn constant(params: SeriesParams, c: CycNum) -> Self {
        let mut s = Self::zero(params, XPrec::Exact);
        s.set_coeff(0, 0, c);
        s
    }

    pub fn from_rat(params: SeriesParams, r: Rat) -> Self {
        Self::constant(params, CycNum::from_rat(params.m, r))
    }

    pub fn from_i64(params: SeriesParams, n: i64) -> Self {
        Self::constant(params, CycNum::from_i64(params.m, n))
    }

    /// `c * t^j * x_s^k`, exactly known.
    pub fn monomial(params: SeriesParams, k: i64, j: i64, c: CycNum) -> Self {
        let mut s = Self::zero(params, XPrec::Exact);
        s.set_coeff(k, j, c);
        s
    }

    /// Build from a list of `(k, j, coeff)` monomials, exactly known.
    pub fn from_terms(params: SeriesParams, terms: &[(i64, i64, CycNum)]) -> Self {
        let mut s = Self::zero(params, XPrec::Exact);
        for (k, j, c) in terms {
            let cur = s.coeff(*k, *j).add(c);
            s.set_coeff(*k, *j, cur);
        }
        s
    }

    pub fn params(&self) -> SeriesParams {
        self.params
    }

    pub fn prec(&self) -> XPrec {
        self.prec
    }

    pub fn t_prec(&self) -> i64 {
        self.t_prec
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &CycNum)> {
        self.terms.iter().map(|(&(k, j), c)| (k, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Stored coefficient (zero when absent; validity per the window is the
    /// caller's concern).
    pub fn coeff(&self, k: i64, j: i64) -> CycNum {
        self.terms
            .get(&(k, j))
            .cloned()
            .unwrap_or_else(|| CycNum::zero(self.params.m))
    }

    fn set_coeff(&mut self, k: i64, j: i64, c: CycNum) {
        if !self.params.t_unit {
            debug_assert!(j >= 0, "negative t-exponent outside t-unit mode");
        }
        let in_window = self.prec.contains(k) && j < self.t_prec && (self.params.t_unit || j >= 0);
        if c.is_zero() || !in_window {
            self.terms.remove(&(k, j));
        } else {
            self.terms.insert((k, j), c);
        }
    }

    /// Lowest x-exponent with a stored term.
    pub fn x_order(&self) -> Option<i64> {
        self.terms.keys().map(|&(k, _)| k).min()
    }

    /// Lowest t-exponent with a stored term.
    pub fn t_order(&self) -> Option<i64> {
        self.terms.keys().map(|&(_, j)| j).min()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the stored data is zero and certified on a nonempty window.
    pub fn is_zero_to_window(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_x_free(&self) -> bool {
        self.terms.keys().all(|&(k, _)| k == 0)
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|&(_, j)| j == 0)
    }

    pub fn has_negative_x(&self) -> bool {
        self.terms.keys().any(|&(k, _)| k < 0)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.params, other.params, "series parameters differ");
    }

    pub fn truncated(&self, prec: XPrec) -> Self {
        let prec = self.prec.min(prec);
        let mut out = Series { params: self.params, prec, t_prec: self.t_prec, terms: BTreeMap::new() };
        for (&(k, j), c) in &self.terms {
            if prec.contains(k) {
                out.terms.insert((k, j), c.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let prec = self.prec.min(other.prec);
        let t_prec = self.t_prec.min(other.t_prec);
        let mut out = Series { params: self.params, prec, t_prec, terms: BTreeMap::new() };
        for (&(k, j), c) in self.terms.iter().chain(other.terms.iter()) {
            if !prec.contains(k) || j >= t_prec {
                continue;
            }
            let cur = out.coeff(k, j).add(c);
            out.set_coeff(k, j, cur);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn mul_cyc(&self, c: &CycNum) -> Self {
        if c.is_zero() {
            return Series::zero(self.params, self.prec);
        }
        let mut out = Series { params: self.params, prec: self.prec, t_prec: self.t_prec, terms: BTreeMap::new() };
        for (&(k, j), a) in &self.terms {
            out.set_coeff(k, j, a.mul(c));
        }
        out
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        self.mul_cyc(&CycNum::from_rat(self.params.m, r.clone()))
    }

    /// Multiply by the exact monomial `t^j x_s^k` (shifts windows with it).
    pub fn mul_monomial(&self, k: i64, j: i64, c: &CycNum) -> Self {
        let mut out = Series {
            params: self.params,
            prec: self.prec.shift(k),
            t_prec: if self.params.t_unit { self.t_prec + j } else { self.params.t_window() },
            terms: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for (&(k0, j0), a) in &self.terms {
            out.set_coeff(k0 + k, j0 + j, a.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let prec = mul_window(self.prec, self.x_order(), other.prec, other.x_order());
        let t_prec = if self.params.t_unit {
            mul_t_window(self.t_prec, self.t_order(), other.t_prec, other.t_order())
        } else {
            self.params.t_window().min(self.t_prec).min(other.t_prec)
        };
        let mut out = Series { params: self.params, prec, t_prec, terms: BTreeMap::new() };
        for (&(k1, j1), a) in &self.terms {
            for (&(k2, j2), b) in &other.terms {
                let (k, j) = (k1 + k2, j1 + j2);
                if !prec.contains(k) || j >= t_prec {
                    continue;
                }
                let p = a.mul(b);
                if p.is_zero() {
                    continue;
                }
                let cur = out.coeff(k, j).add(&p);
                out.set_coeff(k, j, cur);
            }
        }
        out
    }

    /// The derivation `theta = s^(-1) x_s d/dx_s`: coefficient of `x_s^k t^j`
    /// is scaled by `k/s`.  The window is preserved.
    pub fn theta(&self) -> Self {
        let s = self.params.s as i64;
        let mut out = Series { params: self.params, prec: self.prec, t_prec: self.t_prec, terms: BTreeMap::new() };
        for (&(k, j), c) in &self.terms {
            if k == 0 {
                continue;
            }
            out.set_coeff(k, j, c.mul_rat(&Rat::new(BigInt::from(k), BigInt::from(s))));
        }
        out
    }

    /// The principal part `p(f)`: terms with strictly negative x-exponent.
    /// When the window covers all negative exponents the result is an exact
    /// Laurent polynomial.
    pub fn principal_part(&self) -> Self {
        let prec = match self.prec {
            XPrec::Exact => XPrec::Exact,
            XPrec::Finite(p) if p >= 0 => XPrec::Exact,
            XPrec::Finite(p) => XPrec::Finite(p),
        };
        let mut out = Series { params: self.params, prec, t_prec: self.t_prec, terms: BTreeMap::new() };
        for (&(k, j), c) in &self.terms {
            if k < 0 {
                out.terms.insert((k, j), c.clone());
            }
        }
        out
    }

    /// The x-free part minus the principal part: terms with x-exponent zero.
    pub fn constant_part(&self) -> Self {
        let mut out = Series { params: self.params, prec: XPrec::Exact, t_prec: self.t_prec, terms: BTreeMap::new() };
        if let XPrec::Finite(p) = self.prec {
            if p <= 0 {
                out.prec = self.prec;
                return out;
            }
        }
        for (&(k, j), c) in &self.terms {
            if k == 0 {
                out.terms.insert((k, j), c.clone());
            }
        }
        out
    }

    /// Terms with strictly positive x-exponent, window preserved.
    pub fn positive_part(&self) -> Self {
        let mut out = Series { params: self.params, prec: self.prec, t_prec: self.t_prec, terms: BTreeMap::new() };
        for (&(k, j), c) in &self.terms {
            if k > 0 {
                out.terms.insert((k, j), c.clone());
            }
        }
        out
    }

    /// The coefficient of `x_s^k` as an x-free series (a t-polynomial).
    pub fn x_coefficient(&self, k: i64) -> Series {
        let mut out = Series { params: self.params, prec: XPrec::Exact, t_prec: self.t_prec, terms: BTreeMap::new() };
        for (&(k0, j), c) in &self.terms {
            if k0 == k {
                out.terms.insert((0, j), c.clone());
            }
        }
        out
    }

    /// Whether the series is a unit of the (truncated) Laurent ring: its
    /// lowest x-coefficient must be invertible in the t-coefficient ring.
    pub fn is_unit(&self) -> bool {
        match self.x_order() {
            None => false,
            Some(d) => {
                let lead = self.x_coefficient(d);
                if self.params.t_unit {
                    !lead.is_zero()
                } else {
                    !lead.coeff(0, 0).is_zero()
                }
            }
        }
    }

    /// Inverse in `R_L((x_s))`, certified on the shifted window: a series of
    /// x-order `d` known below `p` yields an inverse known below `p - 2d`.
    pub fn invert(&self) -> Result<Series> {
        let d = self.x_order().ok_or_else(|| Error::NotAUnit {
            detail: "cannot invert the zero series".to_string(),
        })?;
        let lead = self.x_coefficient(d);
        let lead_inv = invert_tcoef(&lead)?;
        // fast path: a single monomial inverts exactly
        if self.terms.keys().all(|&(k, _)| k == d) {
            let mut out = lead_inv.shift_x(-d);
            out.prec = match self.prec {
                XPrec::Exact => XPrec::Exact,
                XPrec::Finite(p) => XPrec::Finite(p - 2 * d),
            };
            return Ok(out);
        }
        let p = match self.prec {
            XPrec::Exact => {
                return Err(Error::InsufficientPrecision {
                    detail: "inverse of an exact non-monomial series is infinite; cap the window with truncated() first".to_string(),
                })
            }
            XPrec::Finite(p) => p,
        };
        let width = p - d; // number of certified x-coefficients of the unit part
        if width <= 0 {
            return Err(Error::InsufficientPrecision {
                detail: format!("window {p} does not reach past the x-order {d}"),
            });
        }
        // u = x^-d * self, a unit power series; v = u^{-1} by recursion
        let mut v: Vec<Series> = Vec::with_capacity(width as usize);
        v.push(lead_inv.clone());
        for n in 1..width {
            // v_n = -u_0^{-1} * sum_{i=1..n} u_i v_{n-i}
            let mut acc = Series::zero(self.params, XPrec::Exact);
            for i in 1..=n {
                let ui = self.x_coefficient(d + i);
                if ui.is_zero() {
                    continue;
                }
                acc = acc.add(&ui.mul(&v[(n - i) as usize]));
            }
            v.push(acc.neg().mul(&lead_inv));
        }
        let mut out = Series {
            params: self.params,
            prec: XPrec::Finite(p - 2 * d),
            t_prec: v.iter().map(|c| c.t_prec).min().unwrap_or(self.params.t_window()),
            terms: BTreeMap::new(),
        };
        for (n, vn) in v.iter().enumerate() {
            for (_, j, c) in vn.terms() {
                let k = -d + n as i64;
                if out.prec.contains(k) && j < out.t_prec {
                    out.terms.insert((k, j), c.clone());
                }
            }
        }
        Ok(out)
    }

    /// Multiply every exponent by `d` and pass to ramification index `s*d`.
    pub fn ramify(&self, d: u32) -> Series {
        assert!(d >= 1);
        if d == 1 {
            return self.clone();
        }
        let mut params = self.params;
        params.s *= d;
        let prec = match self.prec {
            XPrec::Exact => XPrec::Exact,
            XPrec::Finite(p) => XPrec::Finite(p * d as i64),
        };
        let mut out = Series { params, prec, t_prec: self.t_prec, terms: BTreeMap::new() };
        for (&(k, j), c) in &self.terms {
            out.terms.insert((k * d as i64, j), c.clone());
        }
        out
    }

    /// The Galois substitution `x_s -> zeta_s^power * x_s`; requires `s | m`.
    pub fn galois_sigma(&self, power: i64) -> Result<Series> {
        let (m, s) = (self.params.m, self.params.s);
        if m % s != 0 {
            return Err(Error::IncompatibleCyclotomy { s, m });
        }
        let mut out = Series { params: self.params, prec: self.prec, t_prec: self.t_prec, terms: BTreeMap::new() };
        for (&(k, j), c) in &self.terms {
            let e = (m as i64 / s as i64) * (k * power).rem_euclid(s as i64);
            out.set_coeff(k, j, c.mul(&CycNum::zeta_pow(m, e)));
        }
        Ok(out)
    }

    /// Reduction modulo t^(l+1): drops t-exponents above `l` and lowers the
    /// truncation parameter.
    pub fn reduce_t(&self, l: u32) -> Series {
        assert!(l <= self.params.l, "reduce_t target above current truncation");
        assert!(!self.params.t_unit, "reduce_t is for the polynomial mode");
        let mut params = self.params;
        params.l = l;
        let mut out = Series { params, prec: self.prec, t_prec: params.t_window(), terms: BTreeMap::new() };
        for (&(k, j), c) in &self.terms {
            if j <= l as i64 {
                out.terms.insert((k, j), c.clone());
            }
        }
        out
    }

    /// Solve `theta(u) = g * u` with `u = 1 mod x_s`, for `g` supported in
    /// strictly positive x-exponents.  The recursion is
    /// `(n/s) u_n = sum_{k=1..n} g_k u_{n-k}`.
    pub fn solve_homogeneous_gauge(g: &Series) -> Result<Series> {
        if g.terms.keys().any(|&(k, _)| k <= 0) {
            return Err(Error::BadSupport {
                detail: "homogeneous gauge solver needs strictly positive x-support".to_string(),
            });
        }
        let params = g.params;
        let p = match g.prec {
            XPrec::Exact => XPrec::Exact,
            XPrec::Finite(p) => XPrec::Finite(p),
        };
        // With exact polynomial input the solution is still an infinite
        // series; certify it on the requested window only if finite,
        // otherwise fall back to a window covering the stored support plus
        // nothing (u = 1 for zero g).
        let width = match p {
            XPrec::Exact => {
                if g.is_zero() {
                    return Ok(Series::one(params));
                }
                return Err(Error::InsufficientPrecision {
                    detail: "homogeneous gauge of an exact series is infinite; cap the window with truncated() first".to_string(),
                });
            }
            XPrec::Finite(p) => p,
        };
        let mut u: Vec<Series> = vec![Series::one(params)];
        for n in 1..width.max(1) {
            let mut acc = Series::zero(params, XPrec::Exact);
            for k in 1..=n {
                let gk = g.x_coefficient(k);
                if gk.is_zero() {
                    continue;
                }
                acc = acc.add(&gk.mul(&u[(n - k) as usize]));
            }
            u.push(acc.mul_rat(&Rat::new(BigInt::from(params.s), BigInt::from(n))));
        }
        let mut out = Series {
            params,
            prec: XPrec::Finite(width.max(1)),
            t_prec: u.iter().map(|c| c.t_prec).min().unwrap_or(params.t_window()),
            terms: BTreeMap::new(),
        };
        for (n, un) in u.iter().enumerate() {
            for (_, j, c) in un.terms() {
                out.terms.insert((n as i64, j), c.clone());
            }
        }
        Ok(out)
    }

    /// Solve `theta(b') = -b` for `b` supported in strictly negative
    /// x-exponents: `b'_k = -(s/k) b_k`.
    pub fn solve_antiderivative(b: &Series) -> Result<Series> {
        if b.terms.keys().any(|&(k, _)| k >= 0) {
            return Err(Error::BadSupport {
                detail: "antiderivative solver needs strictly negative x-support".to_string(),
            });
        }
        let s = b.params.s as i64;
        let prec = match b.prec {
            XPrec::Exact => XPrec::Exact,
            XPrec::Finite(p) if p >= 0 => XPrec::Exact,
            XPrec::Finite(p) => XPrec::Finite(p),
        };
        let mut out = Series { params: b.params, prec, t_prec: b.t_prec, terms: BTreeMap::new() };
        for (&(k, j), c) in &b.terms {
            out.terms.insert((k, j), c.mul_rat(&Rat::new(BigInt::from(-s), BigInt::from(k))));
        }
        Ok(out)
    }

    /// Compare on the common certified window.
    pub fn eq_to_window(&self, other: &Self) -> bool {
        self.check(other);
        let prec = self.prec.min(other.prec);
        let t_prec = self.t_prec.min(other.t_prec);
        let keys: std::collections::BTreeSet<_> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|&&(k, j)| prec.contains(k) && j < t_prec)
            .collect();
        keys.into_iter()
            .all(|&(k, j)| self.coeff(k, j) == other.coeff(k, j))
    }

    fn shift_x(&self, d: i64) -> Series {
        let mut out = Series { params: self.params, prec: self.prec.shift(d), t_prec: self.t_prec, terms: BTreeMap::new() };
        for (&(k, j), c) in &self.terms {
            out.terms.insert((k + d, j), c.clone());
        }
        out
    }

    /// Canonical rendering: terms ordered t-degree major, x-exponent minor.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<(i64, i64)> = self.terms.keys().cloned().collect();
        keys.sort_by_key(|&(k, j)| (j, k));
        let mut out = String::new();
        for (i, &(k, j)) in keys.iter().enumerate() {
            let c = &self.terms[&(k, j)];
            let mut parts: Vec<String> = Vec::new();
            let coeff_str = render_coeff(c);
            let has_var = j != 0 || k != 0;
            if !(has_var && coeff_str == "1") {
                if has_var && coeff_str == "-1" {
                    parts.push("-1".to_string());
                } else {
                    parts.push(coeff_str);
                }
            }
            if j != 0 {
                parts.push(if j == 1 { "t".to_string() } else { format!("t^{j}") });
            }
            if k != 0 {
                parts.push(render_x_exp(k, self.params.s));
            }
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&parts.join(" * "));
        }
        out
    }
}

fn render_coeff(c: &CycNum) -> String {
    format!("{c}")
}

fn render_x_exp(k: i64, s: u32) -> String {
    let g = gcd_i64(k.unsigned_abs() as i64, s as i64);
    let (num, den) = (k / g, s as i64 / g);
    if den == 1 {
        format!("x^{num}")
    } else {
        format!("x^({num}/{den})")
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs().max(1), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn mul_window(p1: XPrec, o1: Option<i64>, p2: XPrec, o2: Option<i64>) -> XPrec {
    // unknown(f)*known(g) enters at p1 + ord(g); symmetrical; plus p1+p2
    let mut bounds: Vec<XPrec> = Vec::new();
    match (p1, o2) {
        (XPrec::Finite(p), Some(o)) => bounds.push(XPrec::Finite(p + o)),
        (XPrec::Finite(_), None) => {} // g has no known terms: nothing enters
        (XPrec::Exact, _) => {}
    }
    match (p2, o1) {
        (XPrec::Finite(p), Some(o)) => bounds.push(XPrec::Finite(p + o)),
        (XPrec::Finite(_), None) => {}
        (XPrec::Exact, _) => {}
    }
    if let (XPrec::Finite(a), XPrec::Finite(b)) = (p1, p2) {
        bounds.push(XPrec::Finite(a + b));
    }
    bounds.into_iter().fold(XPrec::Exact, XPrec::min)
}

fn mul_t_window(p1: i64, o1: Option<i64>, p2: i64, o2: Option<i64>) -> i64 {
    let mut out = p1 + p2;
    if let Some(o) = o2 {
        out = out.min(p1 + o);
    }
    if let Some(o) = o1 {
        out = out.min(p2 + o);
    }
    out
}

/// Inverse of an x-free coefficient (a t-polynomial, or t-Laurent datum in
/// t-unit mode).
fn invert_tcoef(lead: &Series) -> Result<Series> {
    let params = lead.params();
    if lead.is_zero() {
        return Err(Error::NotAUnit { detail: "x-leading coefficient is zero".to_string() });
    }
    let v = lead.t_order().unwrap();
    if !params.t_unit && lead.coeff(0, 0).is_zero() {
        return Err(Error::NotAUnit {
            detail: format!(
                "lowest-order t^0 coefficient vanishes (leading t-valuation {v}); the element is a zero divisor mod t^{}",
                params.l + 1
            ),
        });
    }
    // factor t^v (v = 0 unless t_unit), invert the unit part by recursion
    let c0 = lead.coeff(0, v);
    let c0_inv = c0.inverse().map_err(|_| Error::NotAUnit {
        detail: "leading t-coefficient is not invertible".to_string(),
    })?;
    let width = lead.t_prec() - v;
    let mut h: Vec<CycNum> = vec![c0_inv.clone()];
    for n in 1..width.max(1) {
        let mut acc = CycNum::zero(params.m);
        for i in 1..=n {
            let ci = lead.coeff(0, v + i);
            if ci.is_zero() {
                continue;
            }
            acc = acc.add(&ci.mul(&h[(n - i) as usize]));
        }
        h.push(acc.neg().mul(&c0_inv));
    }
    let t_prec = if params.t_unit { lead.t_prec() - 2 * v } else { params.t_window() };
    let mut out = Series { params, prec: XPrec::Exact, t_prec, terms: BTreeMap::new() };
    for (n, hn) in h.iter().enumerate() {
        let j = -v + n as i64;
        if hn.is_zero() || j >= t_prec {
            continue;
        }
        out.terms.insert((0, j), hn.clone());
    }
    Ok(out)
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (x<{}, t<{})", self.render(), self.prec, self.t_prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyc::rat;

    fn p(m: u32, s: u32, l: u32) -> SeriesParams {
        SeriesParams::new(m, s, l)
    }

    fn x_pow(params: SeriesParams, k: i64) -> Series {
        Series::monomial(params, k, 0, CycNum::one(params.m))
    }

    #[test]
    fn theta_examples() {
        let params = p(1, 1, 0);
        // theta(x^2) = 2 x^2
        assert_eq!(x_pow(params, 2).theta(), x_pow(params, 2).mul_rat(&rat_int(2)));
        // theta(5 + x^-1) = -x^-1
        let f = Series::from_i64(params, 5).add(&x_pow(params, -1));
        assert_eq!(f.theta(), x_pow(params, -1).neg());
        // s=3: theta(x_3^2) = (2/3) x_3^2
        let params3 = p(1, 3, 0);
        assert_eq!(x_pow(params3, 2).theta(), x_pow(params3, 2).mul_rat(&rat(2, 3)));
    }

    #[test]
    fn principal_part_examples() {
        let params = p(1, 1, 2);
        let f = x_pow(params, -1).add(&Series::from_i64(params, 2)).add(&x_pow(params, 1));
        assert_eq!(f.principal_part(), x_pow(params, -1));
        assert_eq!(Series::from_i64(params, 5).principal_part(), Series::zero_exact(params));
        // t x^-2 + t^2 -> t x^-2
        let g = Series::monomial(params, -2, 1, CycNum::one(1)).add(&Series::monomial(params, 0, 2, CycNum::one(1)));
        assert_eq!(g.principal_part(), Series::monomial(params, -2, 1, CycNum::one(1)));
    }

    #[test]
    fn invert_geometric() {
        let params = p(1, 1, 0);
        let f = Series::one(params).sub(&x_pow(params, 1)).truncated(XPrec::Finite(6));
        let g = f.invert().unwrap();
        for k in 0..6 {
            assert!(g.coeff(k, 0).is_one(), "coefficient of x^{k}");
        }
        assert!(f.mul(&g).eq_to_window(&Series::one(params)));
    }

    #[test]
    fn invert_monomial() {
        let params = p(1, 1, 0);
        assert_eq!(x_pow(params, 2).invert().unwrap(), x_pow(params, -2));
    }

    #[test]
    fn invert_two_plus_t() {
        // (2 + t)^{-1} = 1/2 - t/4 + t^2/8 - ...
        let params = p(1, 1, 3);
        let f = Series::from_i64(params, 2).add(&Series::monomial(params, 0, 1, CycNum::one(1)));
        let g = f.truncated(XPrec::Finite(4)).invert().unwrap();
        assert_eq!(g.coeff(0, 0), CycNum::from_rat(1, rat(1, 2)));
        assert_eq!(g.coeff(0, 1), CycNum::from_rat(1, rat(-1, 4)));
        assert_eq!(g.coeff(0, 2), CycNum::from_rat(1, rat(1, 8)));
        assert_eq!(g.coeff(0, 3), CycNum::from_rat(1, rat(-1, 16)));
        assert!(f.mul(&g).eq_to_window(&Series::one(params)));
    }

    #[test]
    fn invert_rejects_non_unit() {
        let params = p(1, 1, 2);
        let f = Series::monomial(params, 0, 1, CycNum::one(1)); // t
        assert!(matches!(f.invert(), Err(Error::NotAUnit { .. })));
        // but t is invertible once declared a unit
        let pu = p(1, 1, 2).with_t_unit();
        let t = Series::monomial(pu, 0, 1, CycNum::one(1));
        let ti = t.invert().unwrap();
        assert_eq!(ti.coeff(0, -1), CycNum::one(1));
        assert!(t.mul(&ti).eq_to_window(&Series::one(pu)));
    }

    #[test]
    fn homogeneous_gauge_examples() {
        let params = p(1, 1, 0);
        // g = 0 -> u = 1
        assert_eq!(Series::solve_homogeneous_gauge(&Series::zero_exact(params)).unwrap(), Series::one(params));
        // g = x -> u = sum x^n / n!
        let g = x_pow(params, 1).truncated(XPrec::Finite(7));
        let u = Series::solve_homogeneous_gauge(&g).unwrap();
        let mut fact = rat_int(1);
        for n in 0..7 {
            if n > 0 {
                fact = fact * rat_int(n);
            }
            assert_eq!(u.coeff(n, 0), CycNum::from_rat(1, rat_int(1) / fact.clone()), "x^{n}");
        }
        assert!(u.theta().eq_to_window(&g.mul(&u)));
        // g = 2x^2 -> u_{2n} = 1/n!, odd zero
        let g2 = x_pow(params, 2).mul_rat(&rat_int(2)).truncated(XPrec::Finite(9));
        let u2 = Series::solve_homogeneous_gauge(&g2).unwrap();
        let mut fact = rat_int(1);
        for n in 0..4i64 {
            if n > 0 {
                fact = fact * rat_int(n);
            }
            assert_eq!(u2.coeff(2 * n, 0), CycNum::from_rat(1, rat_int(1) / fact.clone()));
            assert!(u2.coeff(2 * n + 1, 0).is_zero());
        }
        assert!(u2.theta().eq_to_window(&g2.mul(&u2)));
    }

    #[test]
    fn homogeneous_gauge_rejects_bad_support() {
        let params = p(1, 1, 0);
        let g = Series::one(params).add(&x_pow(params, 1));
        assert!(matches!(Series::solve_homogeneous_gauge(&g), Err(Error::BadSupport { .. })));
    }

    #[test]
    fn antiderivative_examples() {
        let params = p(1, 1, 0);
        // theta(x^-1) = -x^-1, so b = x^-1 -> b' = x^-1
        let b = x_pow(params, -1);
        assert_eq!(Series::solve_antiderivative(&b).unwrap(), b);
        // b = 2x^-2 -> b' = x^-2
        let b2 = x_pow(params, -2).mul_rat(&rat_int(2));
        assert_eq!(Series::solve_antiderivative(&b2).unwrap(), x_pow(params, -2));
        // zero
        assert_eq!(
            Series::solve_antiderivative(&Series::zero_exact(params)).unwrap(),
            Series::zero_exact(params)
        );
        // theta(b') = -b holds for a mixed example
        let b3 = x_pow(params, -3).mul_rat(&rat(5, 2)).add(&x_pow(params, -1).neg());
        let bp = Series::solve_antiderivative(&b3).unwrap();
        assert_eq!(bp.theta(), b3.neg());
        // constants are not integrable
        assert!(matches!(
            Series::solve_antiderivative(&Series::one(params)),
            Err(Error::BadSupport { .. })
        ));
    }

    #[test]
    fn ramify_examples() {
        let params = p(1, 1, 0);
        let f = x_pow(params, -1);
        let r = f.ramify(2);
        assert_eq!(r.params().s, 2);
        assert_eq!(r.coeff(-2, 0), CycNum::one(1));
        assert_eq!(f.ramify(1), f);
        let g = Series::one(params).add(&x_pow(params, 1));
        let g3 = g.ramify(3);
        assert_eq!(g3.coeff(0, 0), CycNum::one(1));
        assert_eq!(g3.coeff(3, 0), CycNum::one(1));
        assert_eq!(g3.num_terms(), 2);
    }

    #[test]
    fn galois_examples() {
        // s=2, m=2: sigma(x_2^-1) = -x_2^-1
        let params = p(2, 2, 0);
        let f = x_pow(params, -1);
        assert_eq!(f.galois_sigma(1).unwrap(), f.neg());
        assert_eq!(f.galois_sigma(0).unwrap(), f);
        // unramified elements are fixed: x = x_2^2
        let g = x_pow(params, 2);
        assert_eq!(g.galois_sigma(1).unwrap(), g);
        // s does not divide m
        let bad = x_pow(p(3, 2, 0), 1);
        assert!(matches!(bad.galois_sigma(1), Err(Error::IncompatibleCyclotomy { .. })));
    }

    #[test]
    fn reduce_t_examples() {
        let params = p(1, 1, 2);
        let f = Series::from_terms(
            params,
            &[(0, 0, CycNum::one(1)), (0, 1, CycNum::one(1)), (0, 2, CycNum::one(1))],
        );
        let r = f.reduce_t(1);
        assert_eq!(r.params().l, 1);
        assert_eq!(r.num_terms(), 2);
        assert_eq!(f.reduce_t(2), f);
        // t * x^-1 dies at level 0
        let g = Series::monomial(params, -1, 1, CycNum::one(1));
        assert!(g.reduce_t(0).is_zero());
    }

    #[test]
    fn mul_window_shrinks_honestly() {
        let params = p(1, 1, 0);
        // f = x^-1 + O(x^3), g = x^2 + O(x^4): product certified below min(3+2, 4-1) = 3
        let f = x_pow(params, -1).truncated(XPrec::Finite(3));
        let g = x_pow(params, 2).truncated(XPrec::Finite(4));
        let fg = f.mul(&g);
        assert_eq!(fg.prec(), XPrec::Finite(3));
        assert_eq!(fg.coeff(1, 0), CycNum::one(1));
    }

    #[test]
    fn render_is_canonical() {
        let params = p(1, 2, 2);
        let f = Series::from_terms(
            params,
            &[(-1, 1, CycNum::one(1)), (2, 0, CycNum::from_i64(1, -3)), (1, 0, CycNum::one(1))],
        );
        assert_eq!(f.render(), "x^(1/2) + -3 * x^1 + t * x^(-1/2)");
    }
}
