//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision. The central routine is a sparse
//! Smith normal form that keeps track of both transforms and their inverses,
//! from which the solvers and the homology presentations are derived.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{RelError, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

/// One sparse row: column index to nonzero entry.
pub type SparseRow = BTreeMap<usize, Int>;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn to_rat(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(to_rat).collect()
}

pub fn is_integral_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Integer vector from an integral rational vector. Panics on fractions,
/// callers check first.
pub fn to_int_vec(v: &[Rat]) -> Vec<Int> {
    v.iter()
        .map(|x| {
            assert!(x.is_integer(), "non-integral entry {x}");
            x.to_integer()
        })
        .collect()
}

/// Representative of `x mod 1` in `[0, 1)`.
pub fn frac(x: &Rat) -> Rat {
    x - x.floor()
}

pub fn zero_int_vec(n: usize) -> Vec<Int> {
    vec![Int::zero(); n]
}

pub fn zero_rat_vec(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn add_assign_scaled<T>(acc: &mut [T], x: &[T], a: &T)
where
    T: Clone + std::ops::AddAssign + for<'a> std::ops::Mul<&'a T, Output = T> + Zero,
{
    debug_assert_eq!(acc.len(), x.len());
    if a.is_zero() {
        return;
    }
    for (s, v) in acc.iter_mut().zip(x) {
        if !v.is_zero() {
            *s += v.clone() * a;
        }
    }
}

pub fn vec_add<T: Clone + std::ops::Add<Output = T>>(a: &[T], b: &[T]) -> Vec<T> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_sub<T: Clone + std::ops::Sub<Output = T>>(a: &[T], b: &[T]) -> Vec<T> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_neg<T: Clone + std::ops::Neg<Output = T>>(a: &[T]) -> Vec<T> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn vec_scale<T: Clone + std::ops::Mul<Output = T>>(a: &[T], s: &T) -> Vec<T> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn dot<T>(a: &[T], b: &[T]) -> T
where
    T: Clone + Zero + std::ops::Mul<Output = T>,
{
    assert_eq!(a.len(), b.len());
    let mut s = T::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s = s + x.clone() * y.clone();
        }
    }
    s
}

/// Sparse integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl IntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix { nrows, ncols, rows: vec![SparseRow::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].insert(i, Int::one());
        }
        m
    }

    pub fn from_rows(nrows: usize, ncols: usize, rows: Vec<SparseRow>) -> Self {
        assert_eq!(rows.len(), nrows);
        debug_assert!(rows.iter().all(|r| r.keys().all(|&c| c < ncols)));
        IntMatrix { nrows, ncols, rows }
    }

    pub fn from_dense(data: &[Vec<i64>]) -> Self {
        let nrows = data.len();
        let ncols = data.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, Int::from(v));
            }
        }
        m
    }

    pub fn from_triplets(nrows: usize, ncols: usize, entries: impl IntoIterator<Item = (usize, usize, Int)>) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for (i, j, v) in entries {
            let cur = m.get(i, j);
            m.set(i, j, cur + v);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, cols: &[Vec<Int>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    m.rows[i].insert(j, v.clone());
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        self.rows[i].get(&j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Nonzero entries in lexicographic (row, col) order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Int)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(&j, v)| (i, j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (i, j, v) in self.triplets() {
            t.rows[j].insert(i, v.clone());
        }
        t
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        self.rows.iter().map(|r| r.get(&j).cloned().unwrap_or_default()).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        (0..self.nrows).map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.ncols != other.nrows {
            return Err(RelError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut out = Self::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            let mut acc = SparseRow::new();
            for (k, a) in &self.rows[i] {
                for (j, b) in &other.rows[*k] {
                    *acc.entry(*j).or_default() += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[i] = acc;
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.ncols, "matrix-vector dimension mismatch");
        self.rows.iter().map(|r| sparse_dot(r, x)).collect()
    }

    pub fn mul_vec_rat(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.ncols, "matrix-vector dimension mismatch");
        self.rows.iter().map(|r| sparse_dot_rat(r, x)).collect()
    }

    /// `self^T * x` without materializing the transpose.
    pub fn tmul_vec(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.nrows, "matrix-vector dimension mismatch");
        let mut out = zero_int_vec(self.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            for (j, v) in r {
                out[*j] += v * &x[i];
            }
        }
        out
    }

    pub fn tmul_vec_rat(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.nrows, "matrix-vector dimension mismatch");
        let mut out = zero_rat_vec(self.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            for (j, v) in r {
                out[*j] += &x[i] * v;
            }
        }
        out
    }

    /// Rows `lo..hi` as a new matrix.
    pub fn row_slice(&self, lo: usize, hi: usize) -> IntMatrix {
        IntMatrix { nrows: hi - lo, ncols: self.ncols, rows: self.rows[lo..hi].to_vec() }
    }

    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.nrows, other.nrows);
        let mut out = self.clone();
        out.ncols += other.ncols;
        for (i, r) in other.rows.iter().enumerate() {
            for (j, v) in r {
                out.rows[i].insert(j + self.ncols, v.clone());
            }
        }
        out
    }

    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.ncols);
        let mut out = self.clone();
        out.nrows += other.nrows;
        out.rows.extend(other.rows.iter().cloned());
        out
    }

    pub fn neg(&self) -> IntMatrix {
        let mut out = self.clone();
        for r in &mut out.rows {
            for v in r.values_mut() {
                *v = -v.clone();
            }
        }
        out
    }
}

pub fn sparse_dot(r: &SparseRow, x: &[Int]) -> Int {
    let mut s = Int::zero();
    for (j, v) in r {
        if !x[*j].is_zero() {
            s += v * &x[*j];
        }
    }
    s
}

pub fn sparse_dot_rat(r: &SparseRow, x: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (j, v) in r {
        if !x[*j].is_zero() {
            s += &x[*j] * v;
        }
    }
    s
}

/// `dst += a * src` on sparse rows.
fn row_axpy(dst: &mut SparseRow, src: &SparseRow, a: &Int) {
    for (j, v) in src {
        let e = dst.entry(*j).or_default();
        *e += a * v;
        if e.is_zero() {
            dst.remove(j);
        }
    }
}

fn scaled(r: &SparseRow, a: &Int) -> SparseRow {
    if a.is_zero() {
        return SparseRow::new();
    }
    r.iter().map(|(j, v)| (*j, v * a)).collect()
}

/// Replace rows `i`, `j` by `t00*ri + t01*rj` and `t10*ri + t11*rj`.
fn mix_rows(m: &mut [SparseRow], i: usize, j: usize, t: [[&Int; 2]; 2]) {
    let ri = std::mem::take(&mut m[i]);
    let rj = std::mem::take(&mut m[j]);
    let mut ni = scaled(&ri, t[0][0]);
    row_axpy(&mut ni, &rj, t[0][1]);
    let mut nj = scaled(&ri, t[1][0]);
    row_axpy(&mut nj, &rj, t[1][1]);
    m[i] = ni;
    m[j] = nj;
}

/// Smith normal form `U * M * V = D` together with both inverses.
///
/// `v_t` holds the columns of `V` as rows and `u_inv_t` the columns of
/// `U^-1`, since those are the vectors callers usually want.
#[derive(Clone, Debug)]
pub struct Snf {
    pub nrows: usize,
    pub ncols: usize,
    pub u: IntMatrix,
    pub u_inv_t: IntMatrix,
    pub v_t: IntMatrix,
    pub v_inv: IntMatrix,
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub diag: Vec<Int>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    pub fn u_inv(&self) -> IntMatrix {
        self.u_inv_t.transpose()
    }

    pub fn v(&self) -> IntMatrix {
        self.v_t.transpose()
    }

    pub fn d(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.nrows, self.ncols);
        for (i, v) in self.diag.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }

    /// The decomposition of the transposed matrix, obtained for free.
    pub fn transposed(&self) -> Snf {
        Snf {
            nrows: self.ncols,
            ncols: self.nrows,
            u: self.v_t.clone(),
            u_inv_t: self.v_inv.clone(),
            v_t: self.u.clone(),
            v_inv: self.u_inv_t.clone(),
            diag: self.diag.clone(),
        }
    }

    /// Z-basis of the kernel: the trailing columns of `V`.
    pub fn kernel_basis(&self) -> Vec<Vec<Int>> {
        (self.rank()..self.ncols).map(|i| dense_row(self.v_t.row(i), self.ncols)).collect()
    }

    /// Z-basis of the kernel of the transposed matrix (trailing rows of `U`).
    pub fn kernel_basis_t(&self) -> Vec<Vec<Int>> {
        (self.rank()..self.nrows).map(|i| dense_row(self.u.row(i), self.nrows)).collect()
    }

    /// Coordinates of a kernel vector in [`Snf::kernel_basis`].
    pub fn kernel_coords(&self, x: &[Int]) -> Vec<Int> {
        (self.rank()..self.ncols).map(|i| sparse_dot(self.v_inv.row(i), x)).collect()
    }

    fn left_int(&self, t: bool, y: &[Int]) -> Vec<Int> {
        if t { self.v_t.mul_vec(y) } else { self.u.mul_vec(y) }
    }

    fn left_rat(&self, t: bool, y: &[Rat]) -> Vec<Rat> {
        if t { self.v_t.mul_vec_rat(y) } else { self.u.mul_vec_rat(y) }
    }

    fn right_int(&self, t: bool, w: &[Int]) -> Vec<Int> {
        if t { self.u.tmul_vec(w) } else { self.v_t.tmul_vec(w) }
    }

    fn right_rat(&self, t: bool, w: &[Rat]) -> Vec<Rat> {
        if t { self.u.tmul_vec_rat(w) } else { self.v_t.tmul_vec_rat(w) }
    }

    fn dims(&self, t: bool) -> (usize, usize) {
        if t { (self.ncols, self.nrows) } else { (self.nrows, self.ncols) }
    }

    fn solve_int_side(&self, t: bool, b: &[Int]) -> Option<Vec<Int>> {
        let (nr, nc) = self.dims(t);
        assert_eq!(b.len(), nr);
        let ub = self.left_int(t, b);
        let r = self.rank();
        if ub[r..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut w = zero_int_vec(nc);
        for i in 0..r {
            let (q, rem) = ub[i].div_rem(&self.diag[i]);
            if !rem.is_zero() {
                return None;
            }
            w[i] = q;
        }
        Some(self.right_int(t, &w))
    }

    fn solve_rat_side(&self, t: bool, b: &[Rat], mod_lattice: bool) -> Option<Vec<Rat>> {
        let (nr, nc) = self.dims(t);
        assert_eq!(b.len(), nr);
        let ub = self.left_rat(t, b);
        let r = self.rank();
        let obstructed = if mod_lattice {
            ub[r..].iter().any(|v| !v.is_integer())
        } else {
            ub[r..].iter().any(|v| !v.is_zero())
        };
        if obstructed {
            return None;
        }
        let mut w = zero_rat_vec(nc);
        for i in 0..r {
            w[i] = &ub[i] / to_rat(&self.diag[i]);
        }
        Some(self.right_rat(t, &w))
    }

    /// Integer `x` with `M x = b`, or `None` when no integer solution exists.
    pub fn solve_int(&self, b: &[Int]) -> Option<Vec<Int>> {
        self.solve_int_side(false, b)
    }

    /// Integer `x` with `M^T x = b`.
    pub fn solve_int_t(&self, b: &[Int]) -> Option<Vec<Int>> {
        self.solve_int_side(true, b)
    }

    /// Rational `x` with `M x = b`.
    pub fn solve_rat(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        self.solve_rat_side(false, b, false)
    }

    pub fn solve_rat_t(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        self.solve_rat_side(true, b, false)
    }

    /// Rational `x` with `M x - y` integral. Solvable exactly when the
    /// trailing rows of `U y` are integral; those rows of `U` span the
    /// functionals that vanish on the image.
    pub fn solve_mod_lattice(&self, y: &[Rat]) -> Option<Vec<Rat>> {
        self.solve_rat_side(false, y, true)
    }

    pub fn solve_mod_lattice_t(&self, y: &[Rat]) -> Option<Vec<Rat>> {
        self.solve_rat_side(true, y, true)
    }
}

fn dense_row(r: &SparseRow, n: usize) -> Vec<Int> {
    let mut v = zero_int_vec(n);
    for (j, x) in r {
        v[*j] = x.clone();
    }
    v
}

struct SnfWork {
    rows: Vec<SparseRow>,
    cols: Vec<SparseRow>,
    u: Vec<SparseRow>,
    u_inv_t: Vec<SparseRow>,
    v_t: Vec<SparseRow>,
    v_inv: Vec<SparseRow>,
}

impl SnfWork {
    /// row_i += a * row_j
    fn row_add(&mut self, i: usize, j: usize, a: &Int) {
        let src = self.rows[j].clone();
        for (c, v) in &src {
            let delta = a * v;
            let e = self.rows[i].entry(*c).or_default();
            *e += &delta;
            let now_zero = e.is_zero();
            if now_zero {
                self.rows[i].remove(c);
                self.cols[*c].remove(&i);
            } else {
                self.cols[*c].insert(i, self.rows[i][c].clone());
            }
        }
        let uj = self.u[j].clone();
        row_axpy(&mut self.u[i], &uj, a);
        let ui = self.u_inv_t[i].clone();
        row_axpy(&mut self.u_inv_t[j], &ui, &-a);
    }

    /// col_i += a * col_j
    fn col_add(&mut self, i: usize, j: usize, a: &Int) {
        let src = self.cols[j].clone();
        for (r, v) in &src {
            let delta = a * v;
            let e = self.cols[i].entry(*r).or_default();
            *e += &delta;
            let now_zero = e.is_zero();
            if now_zero {
                self.cols[i].remove(r);
                self.rows[*r].remove(&i);
            } else {
                self.rows[*r].insert(i, self.cols[i][r].clone());
            }
        }
        let vj = self.v_t[j].clone();
        row_axpy(&mut self.v_t[i], &vj, a);
        let vi = self.v_inv[i].clone();
        row_axpy(&mut self.v_inv[j], &vi, &-a);
    }

    fn row_negate(&mut self, i: usize) {
        for (c, v) in self.rows[i].iter_mut() {
            *v = -v.clone();
            self.cols[*c].insert(i, v.clone());
        }
        for v in self.u[i].values_mut() {
            *v = -v.clone();
        }
        for v in self.u_inv_t[i].values_mut() {
            *v = -v.clone();
        }
    }
}

/// Smallest nonzero absolute value, ties broken by lowest (row, col).
fn find_pivot(rows: &[SparseRow], done_row: &[bool]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for (i, r) in rows.iter().enumerate() {
        if done_row[i] {
            continue;
        }
        for (j, v) in r {
            let a = v.abs();
            if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                let unit = a.is_one();
                best = Some((i, *j, a));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (nr, nc) = (m.nrows, m.ncols);
    let mut w = SnfWork {
        rows: m.rows.clone(),
        cols: m.transpose().rows,
        u: IntMatrix::identity(nr).rows,
        u_inv_t: IntMatrix::identity(nr).rows,
        v_t: IntMatrix::identity(nc).rows,
        v_inv: IntMatrix::identity(nc).rows,
    };
    let mut done_row = vec![false; nr];
    let mut done_col = vec![false; nc];
    let mut pivots: Vec<(usize, usize)> = Vec::new();

    while let Some((p, q)) = find_pivot(&w.rows, &done_row) {
        let pv = w.rows[p][&q].clone();
        let mut clean = true;
        let col_entries: Vec<(usize, Int)> =
            w.cols[q].iter().filter(|(i, _)| **i != p).map(|(i, v)| (*i, v.clone())).collect();
        for (i, v) in col_entries {
            let quot = v.div_floor(&pv);
            if !quot.is_zero() {
                w.row_add(i, p, &-quot);
            }
            if w.rows[i].contains_key(&q) {
                clean = false;
            }
        }
        let row_entries: Vec<(usize, Int)> =
            w.rows[p].iter().filter(|(j, _)| **j != q).map(|(j, v)| (*j, v.clone())).collect();
        for (j, v) in row_entries {
            let quot = v.div_floor(&pv);
            if !quot.is_zero() {
                w.col_add(j, q, &-quot);
            }
            if w.rows[p].contains_key(&j) {
                clean = false;
            }
        }
        if clean {
            if pv.is_negative() {
                w.row_negate(p);
            }
            done_row[p] = true;
            done_col[q] = true;
            pivots.push((p, q));
        }
    }

    // Permute pivots onto the diagonal, in the order they were found.
    let r = pivots.len();
    let mut row_order: Vec<usize> = pivots.iter().map(|&(p, _)| p).collect();
    row_order.extend((0..nr).filter(|&i| !done_row[i]));
    let mut col_order: Vec<usize> = pivots.iter().map(|&(_, q)| q).collect();
    col_order.extend((0..nc).filter(|&j| !done_col[j]));

    let take = |src: &mut Vec<SparseRow>, order: &[usize]| -> Vec<SparseRow> {
        order.iter().map(|&i| std::mem::take(&mut src[i])).collect()
    };
    let mut diag: Vec<Int> = pivots.iter().map(|&(p, q)| w.rows[p][&q].clone()).collect();
    let mut u = take(&mut w.u, &row_order);
    let mut u_inv_t = take(&mut w.u_inv_t, &row_order);
    // Column permutation Q: U^-1 columns follow rows of U; V columns follow col_order.
    let mut v_t = take(&mut w.v_t, &col_order);
    let mut v_inv = take(&mut w.v_inv, &col_order);

    // Enforce the divisibility chain with gcd/lcm moves on pairs.
    for i in 0..r {
        for j in (i + 1)..r {
            let (a, b) = (diag[i].clone(), diag[j].clone());
            if b.is_multiple_of(&a) {
                continue;
            }
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let ag = &a / &g;
            let bg = &b / &g;
            let one = Int::one();
            let neg_one = -Int::one();
            let neg_bg = -bg.clone();
            let neg_t = -t.clone();
            let tbg = &t * &bg;
            let sag = &s * &ag;
            let neg_tbg = -tbg.clone();
            mix_rows(&mut u, i, j, [[&s, &t], [&neg_bg, &ag]]);
            // U^-1 <- U^-1 T^-1 with T^-1 = [[a/g, -t], [b/g, s]]
            mix_rows(&mut u_inv_t, i, j, [[&ag, &bg], [&neg_t, &s]]);
            // V <- V S with S = [[1, -tb/g], [1, sa/g]]
            mix_rows(&mut v_t, i, j, [[&one, &one], [&neg_tbg, &sag]]);
            // V^-1 <- S^-1 V^-1 with S^-1 = [[sa/g, tb/g], [-1, 1]]
            mix_rows(&mut v_inv, i, j, [[&sag, &tbg], [&neg_one, &one]]);
            diag[i] = g.clone();
            diag[j] = &a * &bg;
        }
    }

    Snf {
        nrows: nr,
        ncols: nc,
        u: IntMatrix::from_rows(nr, nr, u),
        u_inv_t: IntMatrix::from_rows(nr, nr, u_inv_t),
        v_t: IntMatrix::from_rows(nc, nc, v_t),
        v_inv: IntMatrix::from_rows(nc, nc, v_inv),
        diag,
    }
}

pub fn solve_diophantine(a: &IntMatrix, b: &[Int]) -> Result<Option<Vec<Int>>> {
    if b.len() != a.nrows() {
        return Err(RelError::DimensionMismatch(format!("rhs has {} entries, matrix has {} rows", b.len(), a.nrows())));
    }
    Ok(smith_normal_form(a).solve_int(b))
}

pub fn solve_rational(a: &IntMatrix, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
    if b.len() != a.nrows() {
        return Err(RelError::DimensionMismatch(format!("rhs has {} entries, matrix has {} rows", b.len(), a.nrows())));
    }
    Ok(smith_normal_form(a).solve_rat(b))
}

/// Rational `x` with `E x = e` exactly and `M x ≡ y` modulo integers.
pub fn solve_mixed(e_mat: &IntMatrix, e: &[Rat], m: &IntMatrix, y: &[Rat]) -> Result<Option<Vec<Rat>>> {
    if e_mat.ncols() != m.ncols() || e.len() != e_mat.nrows() || y.len() != m.nrows() {
        return Err(RelError::DimensionMismatch("mixed system".into()));
    }
    let snf_e = smith_normal_form(e_mat);
    let Some(x0) = snf_e.solve_rat(e) else { return Ok(None) };
    let kernel = snf_e.kernel_basis();
    let n = IntMatrix::from_columns(m.ncols(), &kernel);
    let mn = m.mul(&n)?;
    let rhs = vec_sub(y, &m.mul_vec_rat(&x0));
    let Some(t) = smith_normal_form(&mn).solve_mod_lattice(&rhs) else { return Ok(None) };
    let mut x = x0;
    for (ti, k) in t.iter().zip(&kernel) {
        for (xi, ki) in x.iter_mut().zip(k) {
            if !ki.is_zero() {
                *xi += ti * to_rat(ki);
            }
        }
    }
    Ok(Some(x))
}

/// Independent integer solver by column-style Hermite elimination, used to
/// cross-check the SNF path.
pub fn solve_diophantine_echelon(a: &IntMatrix, b: &[Int]) -> Result<Option<Vec<Int>>> {
    if b.len() != a.nrows() {
        return Err(RelError::DimensionMismatch("rhs length".into()));
    }
    let (m, n) = (a.nrows(), a.ncols());
    // Work on columns of A together with the unimodular column transform.
    let mut cols: Vec<Vec<Int>> = (0..n).map(|j| a.column(j)).collect();
    let mut tr: Vec<Vec<Int>> = (0..n).map(|j| {
        let mut e = zero_int_vec(n);
        e[j] = Int::one();
        e
    }).collect();
    let mut lead = 0usize;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for row in 0..m {
        if lead >= n {
            break;
        }
        loop {
            // Gather the nonzero entries of this row among the remaining columns.
            let nz: Vec<usize> = (lead..n).filter(|&j| !cols[j][row].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let jmin = *nz.iter().min_by_key(|&&j| cols[j][row].abs()).unwrap();
            cols.swap(lead, jmin);
            tr.swap(lead, jmin);
            let mut finished = true;
            for j in (lead + 1)..n {
                if cols[j][row].is_zero() {
                    continue;
                }
                let q = cols[j][row].div_floor(&cols[lead][row]);
                let (pc, pt) = (cols[lead].clone(), tr[lead].clone());
                for (x, y) in cols[j].iter_mut().zip(&pc) {
                    *x -= &q * y;
                }
                for (x, y) in tr[j].iter_mut().zip(&pt) {
                    *x -= &q * y;
                }
                if !cols[j][row].is_zero() {
                    finished = false;
                }
            }
            if finished {
                pivots.push((row, lead));
                lead += 1;
                break;
            }
        }
    }
    // Forward substitution along the echelon pivots.
    let mut resid = b.to_vec();
    let mut coef = zero_int_vec(n);
    let mut pi = 0;
    for row in 0..m {
        if pi < pivots.len() && pivots[pi].0 == row {
            let j = pivots[pi].1;
            let (q, r) = resid[row].div_rem(&cols[j][row]);
            if !r.is_zero() {
                return Ok(None);
            }
            for (x, y) in resid.iter_mut().zip(&cols[j]) {
                *x -= &q * y;
            }
            coef[j] = q;
            pi += 1;
        } else if !resid[row].is_zero() {
            return Ok(None);
        }
    }
    let mut x = zero_int_vec(n);
    for (j, c) in coef.iter().enumerate() {
        if !c.is_zero() {
            add_assign_scaled(&mut x, &tr[j], c);
        }
    }
    Ok(Some(x))
}

/// Integer coefficients expressing `target` in the span of `generators`.
pub fn membership_with_witness(generators: &[Vec<Int>], target: &[Int]) -> Result<Option<Vec<Int>>> {
    if generators.iter().any(|g| g.len() != target.len()) {
        return Err(RelError::DimensionMismatch("generator and target lengths differ".into()));
    }
    let a = IntMatrix::from_columns(target.len(), generators);
    solve_diophantine(&a, target)
}

/// Presentation of a finitely generated abelian group `ker / im`.
///
/// Generators are ordered torsion first (ascending orders), then free.
#[derive(Clone, Debug)]
pub struct FgAbPresentation {
    pub free_rank: usize,
    pub torsion_orders: Vec<Int>,
    pub generators: Vec<Vec<Int>>,
    /// `(N, a)` with `d_next(a) = N * generator`, one per torsion generator.
    pub torsion_witnesses: Vec<(Int, Vec<Int>)>,
    /// Rows map an ambient cycle to its generator coordinates.
    coord_rows: IntMatrix,
}

impl FgAbPresentation {
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Order of generator `i`; zero for free generators.
    pub fn order(&self, i: usize) -> Int {
        self.torsion_orders.get(i).cloned().unwrap_or_default()
    }

    /// Coordinates of a cycle, torsion entries reduced into `0..N`.
    pub fn coordinates(&self, z: &[Int]) -> Vec<Int> {
        let mut c = self.coord_rows.mul_vec(z);
        for (i, n) in self.torsion_orders.iter().enumerate() {
            c[i] = c[i].mod_floor(n);
        }
        c
    }

    /// Cycle representing the given coordinates.
    pub fn element(&self, coords: &[Int]) -> Vec<Int> {
        assert_eq!(coords.len(), self.generators.len());
        let n = self.coord_rows.ncols();
        let mut z = zero_int_vec(n);
        for (c, g) in coords.iter().zip(&self.generators) {
            add_assign_scaled(&mut z, g, c);
        }
        z
    }

    /// Human readable group, e.g. `Z^2 + Z/2`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion_orders {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Presentation from precomputed SNF data: `snf_this` of the outgoing map and
/// the incoming map `d_next`.
pub fn presentation_from_snf(snf_this: &Snf, d_next: &IntMatrix) -> FgAbPresentation {
    let n = snf_this.ncols;
    let r = snf_this.rank();
    let kdim = n - r;
    // Coordinates of the image vectors in the kernel basis.
    let coords_map = snf_this.v_inv.row_slice(r, n);
    let m = coords_map.mul(d_next).expect("composable");
    let snf_m = smith_normal_form(&m);
    let rm = snf_m.rank();
    let kernel_rows: Vec<&SparseRow> = (r..n).map(|i| snf_this.v_t.row(i)).collect();

    let mut torsion_orders = Vec::new();
    let mut generators = Vec::new();
    let mut witnesses = Vec::new();
    let mut selected = Vec::new();
    let in_kernel = |coeffs: &SparseRow| -> Vec<Int> {
        let mut g = zero_int_vec(n);
        for (k, c) in coeffs {
            for (j, v) in kernel_rows[*k] {
                g[*j] += c * v;
            }
        }
        g
    };
    for i in 0..rm {
        let d = &snf_m.diag[i];
        if d.is_one() {
            continue;
        }
        torsion_orders.push(d.clone());
        generators.push(in_kernel(snf_m.u_inv_t.row(i)));
        witnesses.push((d.clone(), dense_row(snf_m.v_t.row(i), d_next.ncols())));
        selected.push(i);
    }
    for i in rm..kdim {
        generators.push(in_kernel(snf_m.u_inv_t.row(i)));
        selected.push(i);
    }
    let u_sel = IntMatrix::from_rows(
        selected.len(),
        kdim,
        selected.iter().map(|&i| snf_m.u.row(i).clone()).collect(),
    );
    let coord_rows = u_sel.mul(&coords_map).expect("composable");
    FgAbPresentation {
        free_rank: kdim - rm,
        torsion_orders,
        generators,
        torsion_witnesses: witnesses,
        coord_rows,
    }
}

/// Presents `ker(d_this) / im(d_next)`.
pub fn homology_presentation(d_next: &IntMatrix, d_this: &IntMatrix) -> Result<FgAbPresentation> {
    if d_this.ncols() != d_next.nrows() {
        return Err(RelError::DimensionMismatch("d_this and d_next are not composable".into()));
    }
    if !d_this.mul(d_next)?.is_zero() {
        return Err(RelError::MalformedComplex("d_this * d_next is nonzero".into()));
    }
    Ok(presentation_from_snf(&smith_normal_form(d_this), d_next))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn check_snf(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        let umv = s.u.mul(m).unwrap().mul(&s.v()).unwrap();
        assert_eq!(umv, s.d());
        assert_eq!(s.u.mul(&s.u_inv()).unwrap(), IntMatrix::identity(m.nrows()));
        assert_eq!(s.v().mul(&s.v_inv).unwrap(), IntMatrix::identity(m.ncols()));
        for w in s.diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(s.diag.iter().all(|d| d.is_positive()));
        s
    }

    #[test]
    fn snf_examples() {
        let s = check_snf(&IntMatrix::from_dense(&[vec![2]]));
        assert_eq!(s.diag, ints(&[2]));
        assert_eq!(s.u, IntMatrix::identity(1));
        let s = check_snf(&IntMatrix::zeros(2, 3));
        assert!(s.diag.is_empty());
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v(), IntMatrix::identity(3));
        let s = check_snf(&IntMatrix::from_dense(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.diag, ints(&[2, 4]));
    }

    #[test]
    fn snf_needs_gcd_fix() {
        let s = check_snf(&IntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diag, ints(&[1, 6]));
        let s = check_snf(&IntMatrix::from_dense(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]));
        assert_eq!(s.diag, ints(&[2, 2, 60]));
    }

    #[test]
    fn diophantine_examples() {
        let a = IntMatrix::from_dense(&[vec![2]]);
        assert_eq!(solve_diophantine(&a, &ints(&[4])).unwrap(), Some(ints(&[2])));
        assert_eq!(solve_diophantine(&a, &ints(&[3])).unwrap(), None);
        let a = IntMatrix::from_dense(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(solve_diophantine(&a, &ints(&[5, 11])).unwrap(), Some(ints(&[1, 2])));
        assert!(solve_diophantine(&a, &ints(&[1])).is_err());
    }

    #[test]
    fn rational_examples() {
        let a = IntMatrix::from_dense(&[vec![2]]);
        assert_eq!(solve_rational(&a, &[rat(3, 1)]).unwrap(), Some(vec![rat(3, 2)]));
        let z = IntMatrix::from_dense(&[vec![0]]);
        assert_eq!(solve_rational(&z, &[rat(1, 1)]).unwrap(), None);
        let a = IntMatrix::from_dense(&[vec![1, 1], vec![1, 1]]);
        let x = solve_rational(&a, &[rat(2, 1), rat(2, 1)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], rat(2, 1));
    }

    #[test]
    fn mod_lattice_and_mixed() {
        // 2x ≡ 1/2 mod 1 has x = 1/4.
        let a = IntMatrix::from_dense(&[vec![2]]);
        let x = smith_normal_form(&a).solve_mod_lattice(&[rat(1, 2)]).unwrap();
        assert!((&x[0] * rat(2, 1) - rat(1, 2)).is_integer());
        // A zero map can only absorb integral targets.
        let z = IntMatrix::from_dense(&[vec![0]]);
        assert!(smith_normal_form(&z).solve_mod_lattice(&[rat(1, 3)]).is_none());
        assert!(smith_normal_form(&z).solve_mod_lattice(&[rat(7, 1)]).is_some());
        // x + y = 1 exactly, 3x ≡ 1/2.
        let e = IntMatrix::from_dense(&[vec![1, 1]]);
        let m = IntMatrix::from_dense(&[vec![3, 0]]);
        let x = solve_mixed(&e, &[rat(1, 1)], &m, &[rat(1, 2)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], rat(1, 1));
        assert!((&x[0] * rat(3, 1) - rat(1, 2)).is_integer());
    }

    #[test]
    fn membership_examples() {
        let gens = vec![ints(&[2, 0]), ints(&[0, 1])];
        assert_eq!(membership_with_witness(&gens, &ints(&[4, 3])).unwrap(), Some(ints(&[2, 3])));
        assert_eq!(membership_with_witness(&[ints(&[2, 0])], &ints(&[1, 0])).unwrap(), None);
    }

    #[test]
    fn circle_presentation() {
        // Vertices v0 v1 v2, edges e01 e02 e12.
        let d1 = IntMatrix::from_dense(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        let d2 = IntMatrix::zeros(3, 0);
        let h1 = homology_presentation(&d2, &d1).unwrap();
        assert_eq!(h1.free_rank, 1);
        assert!(h1.torsion_orders.is_empty());
        assert!(d1.mul_vec(&h1.generators[0]).iter().all(|v| v.is_zero()));
        let h0 = homology_presentation(&d1, &IntMatrix::zeros(0, 3)).unwrap();
        assert_eq!(h0.free_rank, 1);
    }

    #[test]
    fn torsion_presentation_and_witness() {
        // Z --2--> Z: cokernel Z/2.
        let d_next = IntMatrix::from_dense(&[vec![2]]);
        let h = homology_presentation(&d_next, &IntMatrix::zeros(0, 1)).unwrap();
        assert_eq!(h.free_rank, 0);
        assert_eq!(h.torsion_orders, ints(&[2]));
        let (n, a) = &h.torsion_witnesses[0];
        assert_eq!(d_next.mul_vec(a), vec_scale(&h.generators[0], n));
        assert_eq!(h.coordinates(&ints(&[3])), ints(&[1]));
        assert_eq!(h.describe(), "Z/2");
    }

    #[test]
    fn malformed_complex_rejected() {
        let d = IntMatrix::from_dense(&[vec![1]]);
        assert!(matches!(homology_presentation(&d, &d), Err(RelError::MalformedComplex(_))));
    }

    #[test]
    fn transposed_snf_is_consistent() {
        let m = IntMatrix::from_dense(&[vec![1, 2, 3], vec![4, 5, 6]]);
        let t = smith_normal_form(&m).transposed();
        let mt = m.transpose();
        assert_eq!(t.u.mul(&mt).unwrap().mul(&t.v()).unwrap(), t.d());
    }
}
