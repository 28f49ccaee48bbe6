//! Exact linear algebra over a [`FieldSpec`].
//!
//! Subspaces are kept in fully reduced row echelon form, so two subspaces
//! of the same ambient space are equal exactly when their bases agree entry
//! by entry. Quotients use the non-pivot coordinates of the killed subspace
//! as coset coordinates.

mod gf2;

use std::cell::Cell;

use thiserror::Error;

use crate::fields::{FieldSpec, Scalar};
use gf2::{BitRow, PackedSpan};

pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
}

fn check_dim(expected: usize, found: usize) -> Result<(), LinalgError> {
    if expected != found {
        return Err(LinalgError::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn check_field(a: FieldSpec, b: FieldSpec) -> Result<(), LinalgError> {
    if a != b {
        return Err(LinalgError::FieldMismatch(a, b));
    }
    Ok(())
}

thread_local! {
    static GF2_PACKING: Cell<bool> = const { Cell::new(true) };
}

/// Runs `f` with the bit-packed GF(2) kernels switched on or off on the
/// current thread. Results are identical either way.
pub fn with_gf2_packing<R>(enabled: bool, f: impl FnOnce() -> R) -> R {
    let previous = GF2_PACKING.with(|c| c.replace(enabled));
    let out = f();
    GF2_PACKING.with(|c| c.set(previous));
    out
}

pub fn gf2_packing_enabled() -> bool {
    GF2_PACKING.with(|c| c.get())
}

fn use_packed(field: FieldSpec) -> bool {
    field.is_gf2() && gf2_packing_enabled()
}

pub fn zeros(field: FieldSpec, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit(field: FieldSpec, n: usize, i: usize) -> Vector {
    let mut v = zeros(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `y += a * x`.
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    assert_eq!(y.len(), x.len());
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            yi.add_mul(a, xi);
        }
    }
}

pub fn add(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale(a: &Scalar, x: &[Scalar]) -> Vector {
    x.iter().map(|b| a * b).collect()
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vector>) -> Result<Self, LinalgError> {
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for row in rows {
            check_dim(cols, row.len())?;
            for x in &row {
                check_field(field, x.field())?;
            }
            entries.extend(row);
        }
        Ok(Matrix {
            field,
            rows: n_rows,
            cols,
            entries,
        })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vector]) -> Result<Self, LinalgError> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            check_dim(rows, col.len())?;
            for (i, x) in col.iter().enumerate() {
                check_field(field, x.field())?;
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    /// Builds an integer matrix; handy for tests and catalog data.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| field.from_i64(x)).collect()
            })
            .collect();
        Matrix::from_rows(field, cols, data).expect("consistent rows")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        assert_eq!(x.field(), self.field, "field mismatch");
        self.entries[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// `self · v`.
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        let mut out = zeros(self.field, self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let m = self.get(r, c);
                if !m.is_zero() {
                    o.add_mul(m, x);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for c in 0..other.cols {
            let col = self.apply(&other.column(c));
            for (r, x) in col.into_iter().enumerate() {
                out.set(r, c, x);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.entries)
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field, self.rows)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }
}

/// Index of the pivot row among `candidates` for column `col`: the first
/// nonzero over GF(p), the entry of smallest bit size over the rationals.
fn choose_pivot(rows: &[Vector], from: usize, col: usize, field: FieldSpec) -> Option<usize> {
    let nonzero = (from..rows.len()).filter(|&i| !rows[i][col].is_zero());
    match field {
        FieldSpec::Prime(_) => nonzero.into_iter().next(),
        FieldSpec::Rationals => nonzero.min_by_key(|&i| rows[i][col].bit_size()),
    }
}

fn rref_generic(m: &Matrix) -> (Vec<Vector>, Vec<usize>) {
    let mut rows: Vec<Vector> = m.row_vectors().map(<[Scalar]>::to_vec).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = choose_pivot(&rows, r, col, m.field) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        let pivot_row: Vector = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].neg();
                axpy(row, &f, &pivot_row);
            }
        }
        rows[r] = pivot_row;
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Reduced row echelon form and pivot columns. Zero rows are dropped.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (rows, pivots) = if use_packed(m.field) {
        let packed = m.row_vectors().map(BitRow::from_scalars).collect();
        let (rows, pivots) = gf2::rref_rows(packed, m.cols);
        (rows.iter().map(|r| r.to_scalars(m.cols)).collect(), pivots)
    } else {
        rref_generic(m)
    };
    let out = Matrix::from_rows(m.field, m.cols, rows).expect("rows have matrix width");
    (out, pivots)
}

/// Null space `{v : m·v = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let (r, pivots) = rref(m);
    let field = m.field;
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut gens = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = unit(field, m.cols, free);
        for (k, &p) in pivots.iter().enumerate() {
            v[p] = r.get(k, free).neg();
        }
        gens.push(v);
    }
    let k = Subspace::span(field, m.cols, gens).expect("kernel vectors have ambient width");
    debug_assert_eq!(pivots.len() + k.dim(), m.cols, "rank-nullity");
    debug_assert!(k.basis_vectors().all(|v| is_zero(&m.apply(v))));
    k
}

/// Solutions `x_k` of `m · x_k = e_k` for every row index `k`, with free
/// variables set to zero after visiting columns in `column_order`. Returns
/// `None` when `m` is not surjective.
pub fn right_inverse(m: &Matrix, column_order: Option<&[usize]>) -> Option<Matrix> {
    let field = m.field;
    let order: Vec<usize> = match column_order {
        Some(o) => {
            assert_eq!(o.len(), m.cols, "column order must be a permutation");
            o.to_vec()
        }
        None => (0..m.cols).collect(),
    };
    // Augmented [m·P | I]: its RREF is [E·m·P | E] with E invertible.
    let mut aug = Matrix::zeros(field, m.rows, m.cols + m.rows);
    for r in 0..m.rows {
        for (j, &c) in order.iter().enumerate() {
            aug.set(r, j, m.get(r, c).clone());
        }
        aug.set(r, m.cols + r, field.one());
    }
    let (red, pivots) = rref(&aug);
    if pivots.len() != m.rows || pivots.iter().any(|&p| p >= m.cols) {
        return None;
    }
    let mut inv = Matrix::zeros(field, m.cols, m.rows);
    for k in 0..m.rows {
        for (i, &p) in pivots.iter().enumerate() {
            inv.set(order[p], k, red.get(i, m.cols + k).clone());
        }
    }
    debug_assert!(m.mul(&inv).is_identity());
    Some(inv)
}

/// Solves `m · x = b`, free variables zero.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vector> {
    assert_eq!(b.len(), m.rows);
    let mut aug = Matrix::zeros(m.field, m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, m.cols, b[r].clone());
    }
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = zeros(m.field, m.cols);
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = red.get(i, m.cols).clone();
    }
    Some(x)
}

type SparseRow = Vec<(usize, Scalar)>;

/// Fully reduced sparse-row accumulator for fields other than packed GF(2).
#[derive(Debug, Clone)]
struct SparseSpan {
    field: FieldSpec,
    rows: Vec<SparseRow>,
    pivot_of: Vec<Option<usize>>,
    work: Vec<Scalar>,
    touched: Vec<usize>,
    marked: Vec<bool>,
}

fn entry_at(row: &SparseRow, col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|i| &row[i].1)
}

/// `row - f * other` for sorted sparse rows.
fn sparse_sub_mul(row: &SparseRow, f: &Scalar, other: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let next_row = row.get(i).map(|e| e.0);
        let next_other = other.get(j).map(|e| e.0);
        match (next_row, next_other) {
            (Some(a), Some(b)) if a == b => {
                let mut x = row[i].1.clone();
                x.sub_mul(f, &other[j].1);
                if !x.is_zero() {
                    out.push((a, x));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push(row[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(row[i].clone());
                i += 1;
            }
            (_, Some(b)) => {
                let x = (&other[j].1 * f).neg();
                out.push((b, x));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

impl SparseSpan {
    fn new(field: FieldSpec, len: usize) -> Self {
        SparseSpan {
            field,
            rows: Vec::new(),
            pivot_of: vec![None; len],
            work: vec![field.zero(); len],
            touched: Vec::new(),
            marked: vec![false; len],
        }
    }

    fn touch(&mut self, i: usize) {
        if !self.marked[i] {
            self.marked[i] = true;
            self.touched.push(i);
        }
    }

    fn push(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>) -> bool {
        for (i, x) in entries {
            if x.is_zero() {
                continue;
            }
            self.touch(i);
            self.work[i] += &x;
        }
        // Rows vanish on every other pivot column, so the multiplier of each
        // row is the original entry of the input at that row's pivot.
        let hits: Vec<(usize, Scalar)> = self
            .touched
            .iter()
            .filter_map(|&i| self.pivot_of[i].map(|r| (r, self.work[i].clone())))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        for (r, c) in hits {
            for k in 0..self.rows[r].len() {
                let (col, val) = self.rows[r][k].clone();
                self.touch(col);
                self.work[col].sub_mul(&c, &val);
            }
        }
        let mut touched = std::mem::take(&mut self.touched);
        touched.sort_unstable();
        let mut new_row: SparseRow = Vec::new();
        for &i in &touched {
            let x = std::mem::replace(&mut self.work[i], self.field.zero());
            self.marked[i] = false;
            if !x.is_zero() {
                new_row.push((i, x));
            }
        }
        touched.clear();
        self.touched = touched;
        let Some((q, lead)) = new_row.first().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("leading entry is nonzero");
        for e in new_row.iter_mut() {
            e.1 = &e.1 * &inv;
        }
        for row in self.rows.iter_mut() {
            if let Some(f) = entry_at(row, q).cloned() {
                *row = sparse_sub_mul(row, &f, &new_row);
            }
        }
        self.pivot_of[q] = Some(self.rows.len());
        self.rows.push(new_row);
        true
    }

    fn into_sorted(self) -> (Vec<Vector>, Vec<usize>) {
        let len = self.pivot_of.len();
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        let pivots = rows.iter().map(|r| r[0].0).collect();
        let dense = rows
            .into_iter()
            .map(|r| {
                let mut v = zeros(self.field, len);
                for (i, x) in r {
                    v[i] = x;
                }
                v
            })
            .collect();
        (dense, pivots)
    }
}

#[derive(Debug, Clone)]
enum Backend {
    Sparse(SparseSpan),
    Packed(PackedSpan),
}

/// Folds a stream of generators into the RREF basis of their span, one
/// generator at a time. Memory stays proportional to `dim · n`.
#[derive(Debug, Clone)]
pub struct SpanAccumulator {
    field: FieldSpec,
    ambient_dim: usize,
    backend: Backend,
}

impl SpanAccumulator {
    pub fn new(field: FieldSpec, ambient_dim: usize) -> Self {
        let backend = if use_packed(field) {
            Backend::Packed(PackedSpan::new(ambient_dim))
        } else {
            Backend::Sparse(SparseSpan::new(field, ambient_dim))
        };
        SpanAccumulator {
            field,
            ambient_dim,
            backend,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.backend {
            Backend::Sparse(s) => s.rows.len(),
            Backend::Packed(p) => p.dim(),
        }
    }

    /// Adds a dense generator; returns whether the span grew.
    pub fn push(&mut self, v: &[Scalar]) -> Result<bool, LinalgError> {
        check_dim(self.ambient_dim, v.len())?;
        if let Some(x) = v.iter().find(|x| x.field() != self.field) {
            return Err(LinalgError::FieldMismatch(self.field, x.field()));
        }
        Ok(match &mut self.backend {
            Backend::Sparse(s) => s.push(v.iter().cloned().enumerate()),
            Backend::Packed(p) => p.push(BitRow::from_scalars(v)),
        })
    }

    /// Adds a generator given as `(index, coefficient)` pairs; repeated
    /// indices are summed.
    pub fn push_sparse(&mut self, entries: &[(usize, Scalar)]) -> Result<bool, LinalgError> {
        for (i, x) in entries {
            if *i >= self.ambient_dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: self.ambient_dim,
                    found: *i + 1,
                });
            }
            if x.field() != self.field {
                return Err(LinalgError::FieldMismatch(self.field, x.field()));
            }
        }
        Ok(match &mut self.backend {
            Backend::Sparse(s) => s.push(entries.iter().cloned()),
            Backend::Packed(p) => {
                let mut row = BitRow::zero(self.ambient_dim);
                for (i, x) in entries {
                    if !x.is_zero() {
                        row.flip(*i);
                    }
                }
                p.push(row)
            }
        })
    }

    pub fn finish(self) -> Subspace {
        let (rows, pivots) = match self.backend {
            Backend::Sparse(s) => s.into_sorted(),
            Backend::Packed(p) => p.into_sorted(),
        };
        let basis = Matrix::from_rows(self.field, self.ambient_dim, rows).expect("ambient width");
        Subspace {
            field: self.field,
            ambient_dim: self.ambient_dim,
            basis,
            pivots,
        }
    }
}

/// Span of a stream of generators of length `n`.
pub fn span_incremental<I, V>(field: FieldSpec, n: usize, generators: I) -> Result<Subspace, LinalgError>
where
    I: IntoIterator<Item = V>,
    V: AsRef<[Scalar]>,
{
    let mut acc = SpanAccumulator::new(field, n);
    for g in generators {
        acc.push(g.as_ref())?;
    }
    Ok(acc.finish())
}

/// A subspace of `F^n` in canonical (RREF) form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Subspace {
            field,
            ambient_dim: n,
            basis: Matrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, n: usize) -> Self {
        Subspace {
            field,
            ambient_dim: n,
            basis: Matrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn span<I, V>(field: FieldSpec, n: usize, generators: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Scalar]>,
    {
        span_incremental(field, n, generators)
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix) -> Self {
        let (basis, pivots) = rref(m);
        Subspace {
            field: m.field(),
            ambient_dim: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        self.basis.row_vectors()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Canonical representative of `v` modulo this subspace: the result
    /// vanishes on every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ambient_dim, "vector length");
        let mut out = v.to_vec();
        for (row, &p) in self.basis.row_vectors().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].neg();
                axpy(&mut out, &c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        check_dim(self.ambient_dim, v.len())?;
        Ok(is_zero(&self.reduce(v)))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinalgError> {
        check_field(self.field, other.field)?;
        check_dim(self.ambient_dim, other.ambient_dim)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_compatible(other)?;
        Ok(self.basis_vectors().all(|v| is_zero(&other.reduce(v))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        span_incremental(
            self.field,
            self.ambient_dim,
            self.basis_vectors().chain(other.basis_vectors()),
        )
    }

    /// Intersection through the kernel of `[U^T | -W^T]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        let (a, b) = (self.dim(), other.dim());
        let n = self.ambient_dim;
        let mut m = Matrix::zeros(self.field, n, a + b);
        for (j, u) in self.basis_vectors().enumerate() {
            for i in 0..n {
                m.set(i, j, u[i].clone());
            }
        }
        for (j, w) in other.basis_vectors().enumerate() {
            for i in 0..n {
                m.set(i, a + j, w[i].neg());
            }
        }
        let k = kernel(&m);
        let gens = k.basis_vectors().map(|coeffs| {
            let mut v = zeros(self.field, n);
            for (c, u) in coeffs[..a].iter().zip(self.basis_vectors()) {
                axpy(&mut v, c, u);
            }
            v
        });
        let gens: Vec<Vector> = gens.collect();
        span_incremental(self.field, n, gens)
    }

    /// `{c·u : u ∈ U}`.
    pub fn scale(&self, c: &Scalar) -> Result<Subspace, LinalgError> {
        check_field(self.field, c.field())?;
        if c.is_zero() {
            Ok(Subspace::zero(self.field, self.ambient_dim))
        } else {
            Ok(self.clone())
        }
    }

    /// Span of `m·u` over the basis of `U`.
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace, LinalgError> {
        check_field(self.field, m.field())?;
        check_dim(m.cols(), self.ambient_dim)?;
        let images: Vec<Vector> = self.basis_vectors().map(|u| m.apply(u)).collect();
        span_incremental(self.field, m.rows(), images)
    }
}

/// `F^n / U` with coset coordinates on the non-pivot columns of `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSpace {
    killed: Subspace,
    coset_basis: Vec<usize>,
}

impl QuotientSpace {
    pub fn new(n: usize, killed: Subspace) -> Result<Self, LinalgError> {
        check_dim(n, killed.ambient_dim)?;
        let mut is_pivot = vec![false; n];
        for &p in killed.pivots() {
            is_pivot[p] = true;
        }
        let coset_basis = (0..n).filter(|&i| !is_pivot[i]).collect();
        Ok(QuotientSpace {
            killed,
            coset_basis,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.killed.field
    }

    pub fn dim(&self) -> usize {
        self.coset_basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.killed.ambient_dim
    }

    pub fn killed(&self) -> &Subspace {
        &self.killed
    }

    pub fn coset_basis(&self) -> &[usize] {
        &self.coset_basis
    }

    pub fn project(&self, v: &[Scalar]) -> Vector {
        let r = self.killed.reduce(v);
        self.coset_basis.iter().map(|&i| r[i].clone()).collect()
    }

    /// The representative supported on the coset coordinates.
    pub fn section(&self, x: &[Scalar]) -> Vector {
        assert_eq!(x.len(), self.dim(), "coset vector length");
        let mut v = zeros(self.field(), self.ambient_dim());
        for (&i, c) in self.coset_basis.iter().zip(x) {
            v[i] = c.clone();
        }
        v
    }

    /// Matrix of `project`, `dim × n`.
    pub fn projection_matrix(&self) -> Matrix {
        let n = self.ambient_dim();
        let cols: Vec<Vector> = (0..n)
            .map(|j| self.project(&unit(self.field(), n, j)))
            .collect();
        Matrix::from_columns(self.field(), self.dim(), &cols).expect("consistent widths")
    }

    /// Matrix of `section`, `n × dim`.
    pub fn section_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.ambient_dim(), self.dim());
        for (j, &i) in self.coset_basis.iter().enumerate() {
            m.set(i, j, self.field().one());
        }
        m
    }
}

/// Convenience constructor matching the other subspace operations.
pub fn quotient(n: usize, killed: Subspace) -> Result<QuotientSpace, LinalgError> {
    QuotientSpace::new(n, killed)
}
