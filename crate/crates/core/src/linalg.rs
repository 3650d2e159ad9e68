//! Dense exact linear algebra over a [`Field`].
//!
//! Vectors are rows; a matrix acts on the right of a row vector
//! (`v ↦ v·A`), which matches the right-module convention used elsewhere.

use crate::field::{Field, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vec(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += c·v`.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

pub fn scale(v: &mut [Scalar], c: &Scalar) {
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = &*x * c;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Scalar] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = zero_vec(self.field, self.cols);
        for (r, c) in v.iter().enumerate() {
            axpy(&mut out, c, self.row(r));
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            let row = other.apply(self.row(r));
            out.row_mut(r).clone_from_slice(&row);
        }
        out
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

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field, self.cols);
        for r in 0..self.rows {
            e.insert(self.row(r).to_vec());
        }
        e.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Basis of `{c : c·A = 0}`, in reduced echelon form.
    pub fn left_kernel(&self) -> Vec<Vector> {
        // Row-reduce [A | I]; rows whose A-part vanishes give the kernel.
        let n = self.rows;
        let width = self.cols + n;
        let mut aug: Vec<Vector> = (0..n)
            .map(|r| {
                let mut v = self.row(r).to_vec();
                v.extend((0..n).map(|c| if c == r { self.field.one() } else { self.field.zero() }));
                v
            })
            .collect();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(p) = (pivot_row..n).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(pivot_row, p);
            let inv = aug[pivot_row][col].inv();
            scale(&mut aug[pivot_row], &inv);
            let prow = aug[pivot_row].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r != pivot_row && !row[col].is_zero() {
                    let c = -&row[col];
                    axpy(row, &c, &prow);
                }
            }
            pivot_row += 1;
            if pivot_row == n {
                break;
            }
        }
        let mut e = Echelon::new(self.field, n);
        for row in aug.into_iter().skip(pivot_row) {
            debug_assert!(is_zero_vec(&row[..self.cols]));
            e.insert(row[self.cols..width].to_vec());
        }
        e.into_rows()
    }

    /// Some `x` with `x·A = b`, if one exists.
    pub fn solve_left(&self, b: &[Scalar]) -> Option<Vector> {
        let mut e = Echelon::with_tags(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            e.insert_tagged(self.row(r).to_vec(), r);
        }
        e.express(b)
    }
}

/// A subspace held as rows in reduced row echelon form.
///
/// Optionally each row tracks which combination of inserted vectors produced
/// it, so that membership queries can also return a preimage.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    width: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
    tags: Option<(usize, Vec<Vector>)>,
}

impl Echelon {
    pub fn new(field: Field, width: usize) -> Self {
        Echelon {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            tags: None,
        }
    }

    /// An echelon form that remembers each row as a combination of
    /// `ntags` tagged inputs.
    pub fn with_tags(field: Field, width: usize, ntags: usize) -> Self {
        let mut e = Self::new(field, width);
        e.tags = Some((ntags, Vec::new()));
        e
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vector> {
        self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the rows; returns the remainder and the
    /// multipliers used.
    fn reduce_with(&self, v: &mut Vector) -> Vec<Scalar> {
        let mut used = vec![self.field.zero(); self.rows.len()];
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if !v[p].is_zero() {
                let c = v[p].clone();
                axpy(v, &-&c, row);
                used[k] = c;
            }
        }
        used
    }

    pub fn reduce(&self, mut v: Vector) -> Vector {
        self.reduce_with(&mut v);
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v.to_vec()))
    }

    /// Coordinates of `v` with respect to the rows, if `v` lies in the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        let mut r = v.to_vec();
        let used = self.reduce_with(&mut r);
        is_zero_vec(&r).then_some(used)
    }

    /// Coordinates of a vector already known to lie in the span: read the
    /// entries at pivot columns.
    pub fn coords_at_pivots(&self, v: &[Scalar]) -> Vector {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn insert(&mut self, v: Vector) -> bool {
        assert!(self.tags.is_none(), "use insert_tagged");
        self.insert_inner(v, None)
    }

    pub fn insert_tagged(&mut self, v: Vector, tag: usize) -> bool {
        let n = self.tags.as_ref().expect("untagged echelon").0;
        let mut t = zero_vec(self.field, n);
        t[tag] = self.field.one();
        self.insert_inner(v, Some(t))
    }

    fn insert_inner(&mut self, mut v: Vector, tag: Option<Vector>) -> bool {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        let used = self.reduce_with(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let mut tag = tag;
        if let (Some(t), Some((_, trows))) = (tag.as_mut(), self.tags.as_ref()) {
            for (c, tr) in used.iter().zip(trows) {
                axpy(t, &-c, tr);
            }
        }
        let inv = v[p].inv();
        scale(&mut v, &inv);
        if let Some(t) = tag.as_mut() {
            scale(t, &inv);
        }
        for k in 0..self.rows.len() {
            if !self.rows[k][p].is_zero() {
                let c = -&self.rows[k][p];
                let (row, newrow) = (&mut self.rows[k], &v);
                axpy(row, &c, newrow);
                if let (Some(t), Some((_, trows))) = (tag.as_ref(), self.tags.as_mut()) {
                    axpy(&mut trows[k], &c, t);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        if let (Some(t), Some((_, trows))) = (tag, self.tags.as_mut()) {
            trows.insert(at, t);
        }
        true
    }

    /// For a tagged echelon: a combination of the tagged inputs equal to `b`.
    pub fn express(&self, b: &[Scalar]) -> Option<Vector> {
        let (n, trows) = self.tags.as_ref().expect("untagged echelon");
        let c = self.coords(b)?;
        let mut out = zero_vec(self.field, *n);
        for (ci, tr) in c.iter().zip(trows) {
            axpy(&mut out, ci, tr);
        }
        Some(out)
    }

    /// Column indices not used as pivots, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut k = 0;
        for c in 0..self.width {
            if k < self.pivots.len() && self.pivots[k] == c {
                k += 1;
            } else {
                out.push(c);
            }
        }
        out
    }
}
