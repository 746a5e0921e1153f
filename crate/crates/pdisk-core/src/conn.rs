//! Connections as matrices over the truncated series ring.
//!
//! The matrix convention is by columns: `nabla(e_j) = sum_i mat[i][j] e_i`,
//! so a gauge transformation acts by `A -> Q^(-1) A Q + Q^(-1) theta(Q)`.

use num::{BigInt, One, Signed, Zero};

use crate::cyc::{CycNum, Rat};
use crate::error::{Error, Result};
use crate::linalg::{graded_kernel, FMat, SMat};
use crate::series::{Series, SeriesParams, XPrec};

/// A rank-n module with connection, presented by the matrix of `nabla` in a
/// named basis.
#[derive(Clone)]
pub struct Connection {
    pub params: SeriesParams,
    pub rank: usize,
    pub mat: SMat,
    pub basis_label: String,
}

impl Connection {
    pub fn new(mat: SMat, basis_label: impl Into<String>) -> Self {
        assert!(mat.is_square(), "connection matrix must be square");
        Connection { params: mat.params(), rank: mat.rows(), mat, basis_label: basis_label.into() }
    }

    /// Cap every entry's window at `p` (used to pin a working precision).
    pub fn with_prec_cap(&self, p: i64) -> Self {
        Connection {
            params: self.params,
            rank: self.rank,
            mat: self.mat.truncated(XPrec::Finite(p)),
            basis_label: self.basis_label.clone(),
        }
    }

    /// `apply(v)_i = theta(v_i) + sum_j mat[i][j] v_j`.
    pub fn apply(&self, v: &[Series]) -> Result<Vec<Series>> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch {
                detail: format!("vector length {} vs rank {}", v.len(), self.rank),
            });
        }
        let mv = self.mat.mul_vec(v);
        Ok(v.iter().zip(mv).map(|(vi, mi)| vi.theta().add(&mi)).collect())
    }

    /// Basis change by `Q`: the new matrix is `Q^(-1) mat Q + Q^(-1) theta(Q)`.
    pub fn gauge(&self, q: &SMat) -> Result<Connection> {
        if q.rows() != self.rank || q.cols() != self.rank {
            return Err(Error::DimensionMismatch {
                detail: format!("gauge is {}x{}, rank is {}", q.rows(), q.cols(), self.rank),
            });
        }
        let q_inv = q.inverse()?;
        let mat = q_inv.mul(&self.mat).mul(q).add(&q_inv.mul(&q.theta()));
        Ok(Connection {
            params: self.params,
            rank: self.rank,
            mat,
            basis_label: format!("{}*", self.basis_label),
        })
    }
}

/// A connection whose matrix has no negative x-exponents; the witness of
/// the logarithmic condition.
#[derive(Clone)]
pub struct LogWitness {
    conn: Connection,
}

impl LogWitness {
    pub fn new(conn: Connection) -> Result<Self> {
        for i in 0..conn.rank {
            for j in 0..conn.rank {
                if conn.mat.get(i, j).has_negative_x() {
                    return Err(Error::BadSupport {
                        detail: format!(
                            "entry ({i},{j}) has a negative x-exponent; not logarithmic"
                        ),
                    });
                }
            }
        }
        Ok(LogWitness { conn })
    }

    pub fn conn(&self) -> &Connection {
        &self.conn
    }

    pub fn into_conn(self) -> Connection {
        self.conn
    }
}

/// The Euler connection of an x-constant matrix: `D_A(f v) = theta(f) v + f A v`.
pub fn euler(a: &SMat) -> Result<LogWitness> {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if !a.get(i, j).is_x_free() {
                return Err(Error::BadSupport {
                    detail: format!("entry ({i},{j}) is not constant in x"),
                });
            }
        }
    }
    LogWitness::new(Connection::new(a.clone(), "euler"))
}

/// The residue of a logarithmic connection: its x^0 coefficient matrix.
pub fn residue(w: &LogWitness) -> SMat {
    w.conn.mat.x_coeff_mat(0)
}

/// Eigenvalues of the reduced residue (the residue mod t and mod x), i.e.
/// the exponents.  Requires the characteristic polynomial to split into
/// linear factors over Q(zeta_m); refuses (with the unresolved factor)
/// otherwise -- the field is never extended silently.
pub fn exponents(w: &LogWitness) -> Result<Vec<CycNum>> {
    let res = residue(w);
    let m = w.conn.params.m;
    let n = res.rows();
    let mut fm = FMat::zero(m, n, n);
    for i in 0..n {
        for j in 0..n {
            fm.set(i, j, res.get(i, j).coeff(0, 0));
        }
    }
    let diag: Vec<CycNum> = (0..n).map(|i| fm.get(i, i).clone()).collect();
    let mut roots = eigenvalues_splitting(&fm, &diag)?;
    roots.sort_by(|a, b| a.cmp_key(b));
    Ok(roots)
}

/// Find all eigenvalues assuming the characteristic polynomial splits over
/// Q(zeta_m).  `hints` are cheap candidate roots (e.g. diagonal entries).
pub fn eigenvalues_splitting(fm: &FMat, hints: &[CycNum]) -> Result<Vec<CycNum>> {
    let m = fm.m;
    let mut p = fm.charpoly();
    let mut roots = Vec::new();
    'outer: while p.len() > 1 {
        if p.len() == 2 {
            // T + c  =>  root -c / 1 (monic by construction)
            let root = p[0].neg().div(&p[1])?;
            roots.push(root);
            break;
        }
        for cand in hints {
            if poly_eval(&p, cand).is_zero() {
                roots.push(cand.clone());
                p = poly_deflate(&p, cand);
                continue 'outer;
            }
        }
        if let Some(r) = rational_root(&p, m) {
            roots.push(r.clone());
            p = poly_deflate(&p, &r);
            continue;
        }
        if p.len() == 3 {
            if let Some((r1, r2)) = quadratic_roots(&p, m) {
                roots.push(r1);
                roots.push(r2);
                break;
            }
        }
        return Err(Error::DoesNotSplit { factor: poly_render(&p) });
    }
    Ok(roots)
}

fn poly_eval(p: &[CycNum], x: &CycNum) -> CycNum {
    let mut acc = CycNum::zero(x.order());
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Divide a monic-leading polynomial by `(T - r)`; assumes `r` is a root.
fn poly_deflate(p: &[CycNum], r: &CycNum) -> Vec<CycNum> {
    let n = p.len() - 1;
    let mut q = vec![CycNum::zero(r.order()); n];
    let mut carry = CycNum::zero(r.order());
    for i in (0..n).rev() {
        carry = p[i + 1].add(&carry.mul(r));
        q[i] = carry.clone();
    }
    q
}

/// Rational roots of a polynomial with all-rational coefficients.
fn rational_root(p: &[CycNum], m: u32) -> Option<CycNum> {
    let rats: Option<Vec<Rat>> = p.iter().map(|c| c.as_rational()).collect();
    let rats = rats?;
    // scale to integers
    let mut lcm = BigInt::one();
    for r in &rats {
        lcm = num::integer::lcm(lcm, r.denom().clone());
    }
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * Rat::from(lcm.clone())).to_integer()).collect();
    let lead = ints.last()?.clone();
    let mut low = ints.iter().find(|c| !c.is_zero())?.clone();
    // zero constant coefficient means 0 is a root of the shifted poly; treat 0 first
    if ints[0].is_zero() {
        let zero = CycNum::zero(m);
        if poly_eval(p, &zero).is_zero() {
            return Some(zero);
        }
    }
    low = low.abs();
    let leada = lead.abs();
    let dn = small_divisors(&low, 4000)?;
    let dd = small_divisors(&leada, 4000)?;
    for num_d in &dn {
        for den_d in &dd {
            for sign in [1i64, -1] {
                let cand = Rat::new(num_d * BigInt::from(sign), den_d.clone());
                let c = CycNum::from_rat(m, cand);
                if poly_eval(p, &c).is_zero() {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Positive divisors by trial division, bailing out on large inputs.
fn small_divisors(n: &BigInt, cap: usize) -> Option<Vec<BigInt>> {
    if n.is_zero() {
        return Some(vec![BigInt::one()]);
    }
    if n > &BigInt::from(1_000_000_000_000i64) {
        return None;
    }
    let n64: i64 = n.to_string().parse().ok()?;
    let mut out = Vec::new();
    let mut d = 1i64;
    while d * d <= n64 {
        if n64 % d == 0 {
            out.push(BigInt::from(d));
            if d != n64 / d {
                out.push(BigInt::from(n64 / d));
            }
            if out.len() > cap {
                return None;
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}

/// Roots of a monic-leading quadratic when the discriminant has an exact
/// square root in the field (rational squares, or i times a rational square
/// when 4 | m).
fn quadratic_roots(p: &[CycNum], m: u32) -> Option<(CycNum, CycNum)> {
    let a = p[2].clone();
    let b = p[1].div(&a).ok()?;
    let c = p[0].div(&a).ok()?;
    // disc = b^2 - 4c
    let disc = b.mul(&b).sub(&c.mul_rat(&crate::cyc::rat_int(4)));
    let droot = sqrt_in_field(&disc, m)?;
    let half = crate::cyc::rat(1, 2);
    let r1 = b.neg().add(&droot).mul_rat(&half);
    let r2 = b.neg().sub(&droot).mul_rat(&half);
    Some((r1, r2))
}

fn sqrt_in_field(d: &CycNum, m: u32) -> Option<CycNum> {
    let r = d.as_rational()?;
    if r.is_zero() {
        return Some(CycNum::zero(m));
    }
    let (abs, neg) = (r.abs(), r.is_negative());
    let num_s = exact_sqrt(&abs.numer().clone())?;
    let den_s = exact_sqrt(&abs.denom().clone())?;
    let root = CycNum::from_rat(m, Rat::new(num_s, den_s));
    if !neg {
        return Some(root);
    }
    if m % 4 == 0 {
        // i = zeta_m^(m/4)
        let i = CycNum::zeta_pow(m, m as i64 / 4);
        return Some(root.mul(&i));
    }
    None
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

fn poly_render(p: &[CycNum]) -> String {
    let mut parts = Vec::new();
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t = match i {
            0 => format!("{c}"),
            1 => format!("{c}*T"),
            _ => format!("{c}*T^{i}"),
        };
        parts.push(t);
    }
    parts.join(" + ")
}

/// Block-Toeplitz expansion of a matrix over `R_L` into the `(e, te, ...,
/// t^l e)` basis over `C`: block `(r, c)` is the t^(r-c) slice.
pub fn toeplitz_expand(mat: &SMat, ell: u32) -> SMat {
    let n = mat.rows();
    let mut params0 = mat.params();
    params0.l = 0;
    let blocks = ell as usize + 1;
    let mut out = SMat::zero(params0, n * blocks, n * blocks);
    for r in 0..blocks {
        for c in 0..=r {
            let j = (r - c) as i64;
            for bi in 0..n {
                for bj in 0..n {
                    let slice = t_slice(mat.get(bi, bj), j, params0);
                    out.set(r * n + bi, c * n + bj, slice);
                }
            }
        }
    }
    out
}

/// The t^j x-series slice of an entry, re-typed at truncation level 0.
fn t_slice(s: &Series, j: i64, params0: SeriesParams) -> Series {
    let mut out = Series::zero(params0, s.prec());
    for (k, jj, c) in s.terms() {
        if jj == j {
            out = out.add(&Series::monomial(params0, k, 0, c.clone()).truncated(s.prec()));
        }
    }
    out
}

/// The nilpotent shift realizing multiplication by t on the `(t^i e)` basis.
pub fn shift_matrix(params0: SeriesParams, n: usize, ell: u32) -> SMat {
    let blocks = ell as usize + 1;
    let mut out = SMat::zero(params0, n * blocks, n * blocks);
    for r in 1..blocks {
        for i in 0..n {
            out.set(r * n + i, (r - 1) * n + i, Series::one(params0));
        }
    }
    out
}

/// Reduction mod t^(l+1) as a connection over `C((x_s))` of rank `n*(l+1)`,
/// together with the shift matrix giving the `R_l`-action.
pub fn reduce_conn(conn: &Connection, ell: u32) -> (Connection, SMat) {
    assert!(ell <= conn.params.l, "reduction level above the truncation order");
    let mat = toeplitz_expand(&conn.mat, ell);
    let mut params0 = conn.params;
    params0.l = 0;
    let shift = shift_matrix(params0, conn.rank, ell);
    let reduced = Connection {
        params: params0,
        rank: conn.rank * (ell as usize + 1),
        mat,
        basis_label: format!("{}|t^i", conn.basis_label),
    };
    (reduced, shift)
}

/// Options for the windowed kernel solver.
#[derive(Clone, Copy, Debug)]
pub struct KernelOpts {
    /// Lowest admitted x-exponent in solutions (default: derived from the
    /// matrix pole order and the power).
    pub k_lo: Option<i64>,
    /// Exclusive upper end of the solution window (default: entry windows).
    pub k_hi: Option<i64>,
}

impl Default for KernelOpts {
    fn default() -> Self {
        KernelOpts { k_lo: None, k_hi: None }
    }
}

/// A maximal set of window-certified solutions of `(nabla - f)^q v = 0`,
/// solved coefficient-recursively as one t-graded linear system on the
/// window.  Solutions are reported with the window they are certified on;
/// this is a semi-decision: nothing is claimed beyond the window.
pub fn kernel_power(
    conn: &Connection,
    f: &Series,
    q: usize,
    opts: KernelOpts,
) -> Result<Vec<Vec<Series>>> {
    assert!(q >= 1);
    let params = conn.params;
    let n = conn.rank;
    // M' = mat - f I
    let mut mp = conn.mat.clone();
    for i in 0..n {
        mp.set(i, i, mp.get(i, i).sub(f));
    }
    let d0 = mp.x_order().unwrap_or(0).min(0);
    let k_hi = match opts.k_hi {
        Some(k) => k,
        None => match mp.prec() {
            XPrec::Finite(p) => p,
            XPrec::Exact => 16,
        },
    };
    let k_lo = opts.k_lo.unwrap_or_else(|| -(d0.abs() * q as i64 + 2).max(2));
    let guard = d0.abs() * q as i64 + 1;
    if k_hi - k_lo < guard + 2 {
        return Err(Error::InsufficientPrecision {
            detail: format!("window [{k_lo},{k_hi}) too small for guard {guard}"),
        });
    }
    let levels = params.t_window() as usize;
    // one application maps window [a,b) to rows [a+d0, b+d0)
    let build = |a: i64, b: i64| -> Vec<FMat> {
        let dom = (b - a) as usize * n;
        let (ra, rb) = (a + d0, b + d0);
        let cod = (rb - ra) as usize * n;
        let mut ops = vec![FMat::zero(params.m, cod, dom); levels];
        // theta part
        for k in a..b {
            if k < ra || k >= rb {
                continue;
            }
            let scale = Rat::new(BigInt::from(k), BigInt::from(params.s));
            for i in 0..n {
                let row = ((k - ra) as usize) * n + i;
                let col = ((k - a) as usize) * n + i;
                let v = ops[0].get(row, col).add(&CycNum::from_rat(params.m, scale.clone()));
                ops[0].set(row, col, v);
            }
        }
        // matrix part
        for i in 0..n {
            for j in 0..n {
                for (d, jt, c) in mp.get(i, j).terms() {
                    if jt < 0 || jt as usize >= levels {
                        continue;
                    }
                    for k in a..b {
                        let h = k + d;
                        if h < ra || h >= rb {
                            continue;
                        }
                        let row = ((h - ra) as usize) * n + i;
                        let col = ((k - a) as usize) * n + j;
                        let v = ops[jt as usize].get(row, col).add(c);
                        ops[jt as usize].set(row, col, v);
                    }
                }
            }
        }
        ops
    };
    // compose q applications gradedly
    let mut cur = build(k_lo, k_hi);
    let (mut a, mut b) = (k_lo + d0, k_hi + d0);
    for _ in 1..q {
        let next = build(a, b);
        let mut composed = vec![
            FMat::zero(params.m, next[0].rows, cur[0].cols);
            levels
        ];
        for (lv, slot) in composed.iter_mut().enumerate() {
            for j in 0..=lv {
                let prod = next[j].mul(&cur[lv - j]);
                *slot = slot.add(&prod);
            }
        }
        cur = composed;
        a += d0;
        b += d0;
    }
    let sols = graded_kernel(&cur, levels);
    // keep solutions supported away from the top of the window
    let keep_hi = k_hi - guard;
    let mut out = Vec::new();
    for col in sols {
        let mut vec_out = vec![Series::zero(params, XPrec::Finite(k_hi)); n];
        let mut ok = true;
        let mut nonzero = false;
        for (lev, fv) in col.iter().enumerate() {
            for (idx, c) in fv.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                nonzero = true;
                let k = k_lo + (idx / n) as i64;
                let i = idx % n;
                if k >= keep_hi {
                    ok = false;
                }
                vec_out[i] = vec_out[i]
                    .add(&Series::monomial(params, k, lev as i64, c.clone()).truncated(XPrec::Finite(k_hi)));
            }
        }
        if ok && nonzero {
            out.push(vec_out);
        }
    }
    Ok(out)
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
    fn apply_examples() {
        let params = p(1, 1, 1);
        // zero matrix: pure theta
        let c = Connection::new(SMat::zero(params, 1, 1), "e");
        let out = c.apply(&[x_pow(params, 1)]).unwrap();
        assert_eq!(out[0], x_pow(params, 1));
        // rank 1, mat = (c): apply to 1 gives c
        let cmat = SMat::from_rows(params, vec![vec![Series::from_rat(params, rat(1, 2))]]);
        let c2 = Connection::new(cmat, "e");
        assert_eq!(c2.apply(&[Series::one(params)]).unwrap()[0], Series::from_rat(params, rat(1, 2)));
        // mat = (t/x) applied to (x): theta(x) + t = x + t
        let tx = Series::monomial(params, -1, 1, CycNum::one(1));
        let c3 = Connection::new(SMat::from_rows(params, vec![vec![tx]]), "e");
        let got = c3.apply(&[x_pow(params, 1)]).unwrap();
        assert_eq!(got[0], x_pow(params, 1).add(&Series::monomial(params, 0, 1, CycNum::one(1))));
    }

    #[test]
    fn gauge_identity_and_power() {
        let params = p(1, 1, 0);
        let cmat = SMat::from_rows(params, vec![vec![Series::from_rat(params, rat(1, 2))]]);
        let c = Connection::new(cmat.clone(), "e");
        // identity gauge
        let g = c.gauge(&SMat::identity(params, 1)).unwrap();
        assert!(g.mat.eq_to_window(&cmat));
        // Q = x^3: adds theta(x^3)/x^3 = 3
        let q = SMat::from_rows(params, vec![vec![x_pow(params, 3)]]);
        let g2 = c.gauge(&q).unwrap();
        let expect = Series::from_rat(params, rat(7, 2));
        assert!(g2.mat.get(0, 0).eq_to_window(&expect));
    }

    #[test]
    fn euler_residue_exponents() {
        let params = p(1, 1, 1);
        let t = Series::monomial(params, 0, 1, CycNum::one(1));
        let a = SMat::from_rows(
            params,
            vec![
                vec![Series::from_rat(params, rat(1, 2)), Series::one(params)],
                vec![Series::zero_exact(params), Series::from_rat(params, rat(1, 2))],
            ],
        );
        let w = euler(&a).unwrap();
        assert!(residue(&w).eq_to_window(&a));
        assert_eq!(
            exponents(&w).unwrap(),
            vec![CycNum::from_rat(1, rat(1, 2)), CycNum::from_rat(1, rat(1, 2))]
        );
        // reduction kills t: euler(diag(0, t)) has exponents {0, 0}
        let d = SMat::from_rows(
            params,
            vec![
                vec![Series::zero_exact(params), Series::zero_exact(params)],
                vec![Series::zero_exact(params), t],
            ],
        );
        let w2 = euler(&d).unwrap();
        assert_eq!(exponents(&w2).unwrap(), vec![CycNum::zero(1), CycNum::zero(1)]);
    }

    #[test]
    fn exponents_from_quadratic() {
        // residue [[0,1],[1,0]]: exponents {1, -1} via T^2 - 1
        let params = p(1, 1, 0);
        let a = SMat::from_rows(
            params,
            vec![
                vec![Series::zero_exact(params), Series::one(params)],
                vec![Series::one(params), Series::zero_exact(params)],
            ],
        );
        let w = euler(&a).unwrap();
        let mut e = exponents(&w).unwrap();
        e.sort_by(|x, y| x.cmp_key(y));
        assert_eq!(e, vec![CycNum::from_i64(1, -1), CycNum::from_i64(1, 1)]);
    }

    #[test]
    fn exponents_refuse_nonsplit() {
        // residue [[0,1],[2,0]]: T^2 - 2 has no root in Q(zeta_1)
        let params = p(1, 1, 0);
        let a = SMat::from_rows(
            params,
            vec![
                vec![Series::zero_exact(params), Series::one(params)],
                vec![Series::from_i64(params, 2), Series::zero_exact(params)],
            ],
        );
        let w = euler(&a).unwrap();
        assert!(matches!(exponents(&w), Err(Error::DoesNotSplit { .. })));
    }

    #[test]
    fn reduce_conn_toeplitz() {
        let params = p(1, 1, 2);
        let tx = Series::monomial(params, -1, 1, CycNum::one(1));
        let c = Connection::new(SMat::from_rows(params, vec![vec![tx]]), "e");
        let (r1, shift) = reduce_conn(&c, 1);
        assert_eq!(r1.rank, 2);
        let p0 = r1.params;
        assert!(r1.mat.get(0, 0).is_zero() && r1.mat.get(0, 1).is_zero() && r1.mat.get(1, 1).is_zero());
        assert_eq!(*r1.mat.get(1, 0), Series::monomial(p0, -1, 0, CycNum::one(1)));
        // the shift commutes with the Toeplitz matrix
        assert!(shift.mul(&r1.mat).eq_to_window(&r1.mat.mul(&shift)));
        // level 0: mat mod t, same rank
        let (r0, _) = reduce_conn(&c, 0);
        assert_eq!(r0.rank, 1);
        assert!(r0.mat.get(0, 0).is_zero());
        // t-free matrix: block diagonal copies
        let cf = Connection::new(
            SMat::from_rows(params, vec![vec![x_pow(params, -1)]]),
            "e",
        );
        let (r2, _) = reduce_conn(&cf, 2);
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert_eq!(*r2.mat.get(i, j), Series::monomial(r2.params, -1, 0, CycNum::one(1)));
                } else {
                    assert!(r2.mat.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn kernel_diag_simple() {
        // mat = diag(1/x, -1/x), f = 1/x, q = 1: kernel spanned by (1, 0)
        let params = p(1, 1, 0);
        let xinv = x_pow(params, -1);
        let mat = SMat::from_rows(
            params,
            vec![
                vec![xinv.clone(), Series::zero_exact(params)],
                vec![Series::zero_exact(params), xinv.neg()],
            ],
        );
        let c = Connection::new(mat, "e").with_prec_cap(10);
        let sols = kernel_power(&c, &xinv.truncated(XPrec::Finite(10)), 1, KernelOpts::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(sols[0][0].is_x_free());
        assert!(sols[0][1].is_zero());
    }

    #[test]
    fn kernel_nilpotent_block() {
        // J-flat_2(0) with subdiagonal 1: full rank-2 kernel of nabla^2
        let params = p(1, 1, 0);
        let mat = SMat::from_rows(
            params,
            vec![
                vec![Series::zero_exact(params), Series::zero_exact(params)],
                vec![Series::one(params), Series::zero_exact(params)],
            ],
        );
        let c = Connection::new(mat, "e").with_prec_cap(10);
        let z = Series::zero_exact(params).truncated(XPrec::Finite(10));
        let k1 = kernel_power(&c, &z, 1, KernelOpts::default()).unwrap();
        assert_eq!(k1.len(), 1);
        let k2 = kernel_power(&c, &z, 2, KernelOpts::default()).unwrap();
        assert_eq!(k2.len(), 2);
    }

    #[test]
    fn kernel_obstructed_character_empty() {
        // f = 1/2 does not match diag(1/x, -1/x): empty kernel
        let params = p(1, 1, 0);
        let xinv = x_pow(params, -1);
        let mat = SMat::from_rows(
            params,
            vec![
                vec![xinv.clone(), Series::zero_exact(params)],
                vec![Series::zero_exact(params), xinv.neg()],
            ],
        );
        let c = Connection::new(mat, "e").with_prec_cap(10);
        let f = Series::from_rat(params, rat(1, 2)).truncated(XPrec::Finite(10));
        let sols = kernel_power(&c, &f, 1, KernelOpts::default()).unwrap();
        assert!(sols.is_empty());
    }
}
