//! Matrix arithmetic over [`Series`] and exact linear algebra over the
//! scalar field Q(zeta_m).
//!
//! [`SMat`] is a dense matrix of series with the same window bookkeeping as
//! the scalars: inversion is Gaussian elimination on unit pivots, so every
//! division records its precision cost.  [`FMat`] is a plain matrix over the
//! coefficient field, used for per-order leading systems, characteristic
//! polynomials and t-graded kernel lifting.

use std::fmt;

use crate::cyc::CycNum;
use crate::error::{Error, Result};
use crate::series::{Series, SeriesParams, XPrec};

/// Dense matrix over the truncated series ring.
#[derive(Clone, PartialEq, Eq)]
pub struct SMat {
    params: SeriesParams,
    rows: usize,
    cols: usize,
    data: Vec<Series>,
}

impl SMat {
    pub fn zero(params: SeriesParams, rows: usize, cols: usize) -> Self {
        let data = vec![Series::zero_exact(params); rows * cols];
        SMat { params, rows, cols, data }
    }

    pub fn identity(params: SeriesParams, n: usize) -> Self {
        let mut out = Self::zero(params, n, n);
        for i in 0..n {
            out.set(i, i, Series::one(params));
        }
        out
    }

    pub fn from_rows(params: SeriesParams, rows: Vec<Vec<Series>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        SMat { params, rows: r, cols: c, data }
    }

    pub fn from_fn(params: SeriesParams, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Series) -> Self {
        let mut out = Self::zero(params, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, f(i, j));
            }
        }
        out
    }

    pub fn params(&self) -> SeriesParams {
        self.params
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Series {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Series) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn map(&self, f: impl Fn(&Series) -> Series) -> Self {
        SMat {
            params: self.params,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        SMat { params: self.params, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|s| s.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zero(self.params, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Series::zero_exact(self.params);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() && matches!(a.prec(), XPrec::Exact) {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_series(&self, s: &Series) -> Self {
        self.map(|e| e.mul(s))
    }

    pub fn mul_vec(&self, v: &[Series]) -> Vec<Series> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Series::zero_exact(self.params);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    /// Entrywise derivation.
    pub fn theta(&self) -> Self {
        self.map(|s| s.theta())
    }

    pub fn truncated(&self, prec: XPrec) -> Self {
        self.map(|s| s.truncated(prec))
    }

    pub fn reduce_t(&self, l: u32) -> Self {
        let mut out = self.map(|s| s.reduce_t(l));
        out.params.l = l;
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn eq_to_window(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.eq_to_window(b))
    }

    /// Minimal x-order over all entries (None when the matrix is zero).
    pub fn x_order(&self) -> Option<i64> {
        self.data.iter().filter_map(|s| s.x_order()).min()
    }

    /// Minimal certified x-window over all entries.
    pub fn prec(&self) -> XPrec {
        self.data.iter().map(|s| s.prec()).fold(XPrec::Exact, XPrec::min)
    }

    /// The x-free matrix of `x_s^k` coefficients.
    pub fn x_coeff_mat(&self, k: i64) -> SMat {
        self.map(|s| s.x_coefficient(k))
    }

    /// Principal part, entrywise.
    pub fn principal_part(&self) -> SMat {
        self.map(|s| s.principal_part())
    }

    pub fn block(&self, i0: usize, j0: usize, r: usize, c: usize) -> SMat {
        SMat::from_fn(self.params, r, c, |i, j| self.get(i0 + i, j0 + j).clone())
    }

    pub fn set_block(&mut self, i0: usize, j0: usize, b: &SMat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(i0 + i, j0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block_diag(params: SeriesParams, blocks: &[SMat]) -> SMat {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = SMat::zero(params, n, n);
        let mut ofs = 0;
        for b in blocks {
            out.set_block(ofs, ofs, b);
            ofs += b.rows;
        }
        out
    }

    /// Inverse by Gaussian elimination with unit pivots; windows shrink with
    /// each division as usual.
    pub fn inverse(&self) -> Result<SMat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = SMat::identity(self.params, n);
        for col in 0..n {
            // pivot: unit entry of minimal x-order in this column
            let mut pick: Option<(usize, i64)> = None;
            for r in col..n {
                let e = a.get(r, col);
                if e.is_unit() {
                    let o = e.x_order().unwrap();
                    if pick.map(|(_, po)| o < po).unwrap_or(true) {
                        pick = Some((r, o));
                    }
                }
            }
            let (prow, _) = pick.ok_or_else(|| Error::NotInvertible {
                detail: format!("no unit pivot in column {col}"),
            })?;
            if prow != col {
                for j in 0..n {
                    self.swap_entries(&mut a, prow, col, j);
                    self.swap_entries(&mut inv, prow, col, j);
                }
            }
            let piv_inv = a.get(col, col).invert()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&piv_inv));
                inv.set(col, j, inv.get(col, j).mul(&piv_inv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let na = a.get(r, j).sub(&factor.mul(a.get(col, j)));
                    a.set(r, j, na);
                    let ni = inv.get(r, j).sub(&factor.mul(inv.get(col, j)));
                    inv.set(r, j, ni);
                }
            }
        }
        Ok(inv)
    }

    fn swap_entries(&self, m: &mut SMat, r1: usize, r2: usize, j: usize) {
        let a = m.get(r1, j).clone();
        let b = m.get(r2, j).clone();
        m.set(r1, j, b);
        m.set(r2, j, a);
    }

    /// Characteristic polynomial by Faddeev-LeVerrier, ascending
    /// coefficients `c_0 + c_1 T + ... + T^n`.  Valid over the commutative
    /// coefficient ring (divisions are by integers only).
    pub fn charpoly(&self) -> Vec<Series> {
        assert!(self.is_square());
        let n = self.rows;
        let params = self.params;
        let mut coeffs = vec![Series::zero_exact(params); n + 1];
        coeffs[n] = Series::one(params);
        let mut nmat = SMat::identity(params, n); // A_0 aux = I
        for k in 1..=n {
            nmat = self.mul(&nmat);
            let tr = (0..n).fold(Series::zero_exact(params), |acc, i| acc.add(nmat.get(i, i)));
            let ck = tr.mul_rat(&crate::cyc::rat(-1, k as i64));
            coeffs[n - k] = ck.clone();
            for i in 0..n {
                let d = nmat.get(i, i).add(&ck);
                nmat.set(i, i, d);
            }
        }
        coeffs
    }

    pub fn trace(&self) -> Series {
        (0..self.rows).fold(Series::zero_exact(self.params), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).render()).collect();
            out.push_str(&format!("[{}]", row.join(", ")));
            if i + 1 < self.rows {
                out.push('\n');
            }
        }
        out
    }
}

impl fmt::Debug for SMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Dense matrix over the scalar field Q(zeta_m).
#[derive(Clone, PartialEq, Eq)]
pub struct FMat {
    pub m: u32,
    pub rows: usize,
    pub cols: usize,
    data: Vec<CycNum>,
}

impl FMat {
    pub fn zero(m: u32, rows: usize, cols: usize) -> Self {
        FMat { m, rows, cols, data: vec![CycNum::zero(m); rows * cols] }
    }

    pub fn identity(m: u32, n: usize) -> Self {
        let mut out = Self::zero(m, n, n);
        for i in 0..n {
            out.set(i, i, CycNum::one(m));
        }
        out
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &FMat) -> FMat {
        assert_eq!(self.cols, other.rows);
        let mut out = FMat::zero(self.m, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = CycNum::zero(self.m);
                for k in 0..self.cols {
                    if self.get(i, k).is_zero() || v[k].is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.get(i, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &FMat) -> FMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        FMat { m: self.m, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &FMat) -> FMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        FMat { m: self.m, rows: self.rows, cols: self.cols, data }
    }

    /// Row-reduce in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(prow) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if prow != row {
                for j in 0..self.cols {
                    let a = self.get(row, j).clone();
                    let b = self.get(prow, j).clone();
                    self.set(row, j, b);
                    self.set(prow, j, a);
                }
            }
            let inv = self.get(row, col).inverse().expect("nonzero pivot");
            for j in 0..self.cols {
                let v = self.get(row, j).mul(&inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let f = self.get(r, col).clone();
                for j in 0..self.cols {
                    let v = self.get(r, j).sub(&f.mul(self.get(row, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut c = self.clone();
        c.rref().len()
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<CycNum>> {
        let mut r = self.clone();
        let pivots = r.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().cloned().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![CycNum::zero(self.m); self.cols];
            v[free] = CycNum::one(self.m);
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = r.get(prow, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Characteristic polynomial over the field, ascending coefficients.
    pub fn charpoly(&self) -> Vec<CycNum> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![CycNum::zero(self.m); n + 1];
        coeffs[n] = CycNum::one(self.m);
        let mut nmat = FMat::identity(self.m, n);
        for k in 1..=n {
            nmat = self.mul(&nmat);
            let mut tr = CycNum::zero(self.m);
            for i in 0..n {
                tr = tr.add(nmat.get(i, i));
            }
            let ck = tr.mul_rat(&crate::cyc::rat(-1, k as i64));
            coeffs[n - k] = ck.clone();
            for i in 0..n {
                let d = nmat.get(i, i).add(&ck);
                nmat.set(i, i, d);
            }
        }
        coeffs
    }

    /// Is the matrix nilpotent?  (Checked by powering up to the dimension.)
    pub fn is_nilpotent(&self) -> bool {
        let mut p = self.clone();
        for _ in 0..self.rows {
            if p.is_zero() {
                return true;
            }
            p = p.mul(self);
        }
        p.is_zero()
    }
}

impl fmt::Debug for FMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A solver for `T0 x = b` built once from the row reduction of `T0`,
/// reporting inconsistency residuals against non-pivot rows.
pub struct RowSolver {
    m: u32,
    n_unknowns: usize,
    rref: FMat,
    pivots: Vec<usize>,
    /// row-operations matrix E with E * T0 = rref (augmented computation)
    ops: FMat,
}

impl RowSolver {
    pub fn new(t0: &FMat) -> Self {
        // augment with the identity to track row operations
        let mut aug = FMat::zero(t0.m, t0.rows, t0.cols + t0.rows);
        for i in 0..t0.rows {
            for j in 0..t0.cols {
                aug.set(i, j, t0.get(i, j).clone());
            }
            aug.set(i, t0.cols + i, CycNum::one(t0.m));
        }
        // reduce only on the first t0.cols columns
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..t0.cols {
            if row >= t0.rows {
                break;
            }
            let Some(prow) = (row..t0.rows).find(|&r| !aug.get(r, col).is_zero()) else {
                continue;
            };
            if prow != row {
                for j in 0..aug.cols {
                    let a = aug.get(row, j).clone();
                    let b = aug.get(prow, j).clone();
                    aug.set(row, j, b);
                    aug.set(prow, j, a);
                }
            }
            let inv = aug.get(row, col).inverse().expect("nonzero pivot");
            for j in 0..aug.cols {
                let v = aug.get(row, j).mul(&inv);
                aug.set(row, j, v);
            }
            for r in 0..t0.rows {
                if r == row || aug.get(r, col).is_zero() {
                    continue;
                }
                let f = aug.get(r, col).clone();
                for j in 0..aug.cols {
                    let v = aug.get(r, j).sub(&f.mul(aug.get(row, j)));
                    aug.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let mut rref = FMat::zero(t0.m, t0.rows, t0.cols);
        let mut ops = FMat::zero(t0.m, t0.rows, t0.rows);
        for i in 0..t0.rows {
            for j in 0..t0.cols {
                rref.set(i, j, aug.get(i, j).clone());
            }
            for j in 0..t0.rows {
                ops.set(i, j, aug.get(i, t0.cols + j).clone());
            }
        }
        RowSolver { m: t0.m, n_unknowns: t0.cols, rref, pivots, ops }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Solve `T0 x = b`.  Returns `(particular, residual)` where `residual`
    /// collects the transformed entries of `b` in non-pivot rows; the system
    /// is consistent iff the residual vanishes.
    pub fn solve(&self, b: &[CycNum]) -> (Vec<CycNum>, Vec<CycNum>) {
        let eb = self.ops.mul_vec(b);
        let mut x = vec![CycNum::zero(self.m); self.n_unknowns];
        for (prow, &pcol) in self.pivots.iter().enumerate() {
            x[pcol] = eb[prow].clone();
        }
        let residual = eb[self.pivots.len()..].to_vec();
        (x, residual)
    }

    pub fn kernel_basis(&self) -> Vec<Vec<CycNum>> {
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = self.pivots.iter().cloned().collect();
        for free in 0..self.n_unknowns {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![CycNum::zero(self.m); self.n_unknowns];
            v[free] = CycNum::one(self.m);
            for (prow, &pcol) in self.pivots.iter().enumerate() {
                v[pcol] = self.rref.get(prow, free).neg();
            }
            basis.push(v);
        }
        basis
    }
}

/// A t-graded solution vector: one field vector per t-level.
pub type GradedVec = Vec<Vec<CycNum>>;

/// Kernel of the t-graded operator `T = sum_j t^j T_j` acting on vectors
/// over `C[t]/t^(levels)`: all `v = sum_i t^i v_i` with
/// `sum_{j<=i} T_j v_{i-j} = 0` for `i = 0..levels-1`.
///
/// Solutions whose lowest level is positive are honest torsion solutions of
/// the truncated ring.
pub fn graded_kernel(ops: &[FMat], levels: usize) -> Vec<GradedVec> {
    assert!(!ops.is_empty());
    let m = ops[0].m;
    let dom = ops[0].cols;
    let solver = RowSolver::new(&ops[0]);
    let k0 = solver.kernel_basis();
    // columns: partial solutions through the current level
    let mut cols: Vec<GradedVec> = k0.iter().map(|v| vec![v.clone()]).collect();
    for level in 1..levels {
        // b_a = - sum_{j=1..level} T_j * col_a[level-j]
        let mut particulars: Vec<Vec<CycNum>> = Vec::with_capacity(cols.len());
        let mut residuals: Vec<Vec<CycNum>> = Vec::with_capacity(cols.len());
        for col in &cols {
            let mut b = vec![CycNum::zero(m); ops[0].rows];
            for j in 1..=level.min(ops.len() - 1) {
                let w = &col[level - j];
                let tw = ops[j].mul_vec(w);
                for (bi, ti) in b.iter_mut().zip(tw) {
                    *bi = bi.sub(&ti);
                }
            }
            let (x, r) = solver.solve(&b);
            particulars.push(x);
            residuals.push(r);
        }
        // consistency: combinations c with sum_a c_a residual_a = 0
        let rrows = residuals.first().map(|r| r.len()).unwrap_or(0);
        let mut cmat = FMat::zero(m, rrows, cols.len());
        for (a, r) in residuals.iter().enumerate() {
            for (i, v) in r.iter().enumerate() {
                cmat.set(i, a, v.clone());
            }
        }
        let combos = if cols.is_empty() { Vec::new() } else { cmat.kernel() };
        let mut next: Vec<GradedVec> = Vec::new();
        for c in combos {
            let mut col = vec![vec![CycNum::zero(m); dom]; level + 1];
            for (a, ca) in c.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (lv, part) in cols[a].iter().enumerate() {
                    for (i, v) in part.iter().enumerate() {
                        col[lv][i] = col[lv][i].add(&v.mul(ca));
                    }
                }
                for (i, v) in particulars[a].iter().enumerate() {
                    col[level][i] = col[level][i].add(&v.mul(ca));
                }
            }
            next.push(col);
        }
        // fresh torsion solutions starting at this level
        for k in &k0 {
            let mut col = vec![vec![CycNum::zero(m); dom]; level + 1];
            col[level] = k.clone();
            next.push(col);
        }
        cols = next;
    }
    cols
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyc::{rat, rat_int};

    fn params() -> SeriesParams {
        SeriesParams::new(1, 1, 0)
    }

    fn s_int(n: i64) -> Series {
        Series::from_i64(params(), n)
    }

    #[test]
    fn smat_inverse_constant() {
        let p = params();
        let a = SMat::from_rows(p, vec![vec![s_int(2), s_int(1)], vec![s_int(1), s_int(1)]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).eq_to_window(&SMat::identity(p, 2)));
    }

    #[test]
    fn smat_inverse_with_pole_pivot() {
        let p = params();
        let x = Series::monomial(p, 1, 0, CycNum::one(1));
        let xinv = Series::monomial(p, -1, 0, CycNum::one(1));
        // [[x, 0],[1, x^-1]] has unit pivots of different orders
        let a = SMat::from_rows(p, vec![vec![x.clone(), Series::zero_exact(p)], vec![s_int(1), xinv]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).eq_to_window(&SMat::identity(p, 2)));
    }

    #[test]
    fn smat_singular_detected() {
        let p = params();
        let a = SMat::from_rows(p, vec![vec![s_int(1), s_int(2)], vec![s_int(2), s_int(4)]]);
        assert!(matches!(a.inverse(), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn fmat_charpoly_and_kernel() {
        let mut a = FMat::zero(1, 2, 2);
        a.set(0, 1, CycNum::one(1));
        a.set(1, 0, CycNum::one(1));
        // charpoly of [[0,1],[1,0]] is T^2 - 1
        let cp = a.charpoly();
        assert_eq!(cp[0], CycNum::from_i64(1, -1));
        assert!(cp[1].is_zero());
        assert!(cp[2].is_one());
        // kernel of (A - I)
        let shifted = a.sub(&FMat::identity(1, 2));
        let k = shifted.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], k[0][1]);
    }

    #[test]
    fn graded_kernel_finds_torsion() {
        // T = t * Id on a 1-dim space over C[t]/t^2: kernel = { t*c }
        let m = 1;
        let t0 = FMat::zero(m, 1, 1);
        let mut t1 = FMat::zero(m, 1, 1);
        t1.set(0, 0, CycNum::one(m));
        // T0 = 0 has full kernel; solutions: v0 free at level0 must satisfy
        // level-1 equation T1 v0 = 0 => v0 = 0; so only t*c survives.
        let sols = graded_kernel(&[t0, t1], 2);
        // expect exactly one solution family: v = (0, c)
        assert_eq!(sols.len(), 1);
        assert!(sols[0][0].iter().all(|c| c.is_zero()));
        assert!(!sols[0][1].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn row_solver_residuals() {
        // T0 = [[1,0],[0,0]]: solving (a, b) requires b = 0
        let mut t0 = FMat::zero(1, 2, 2);
        t0.set(0, 0, CycNum::one(1));
        let solver = RowSolver::new(&t0);
        let (x, r) = solver.solve(&[CycNum::from_rat(1, rat(3, 2)), CycNum::zero(1)]);
        assert_eq!(x[0], CycNum::from_rat(1, rat(3, 2)));
        assert!(r.iter().all(|c| c.is_zero()));
        let (_, r) = solver.solve(&[CycNum::zero(1), CycNum::from_i64(1, 1)]);
        assert!(!r.iter().all(|c| c.is_zero()));
        let _ = rat_int(0);
    }
}
