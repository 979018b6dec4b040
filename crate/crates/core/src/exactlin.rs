//! Exact linear algebra over ℚ and ℤ.
//!
//! Everything here is arbitrary precision. Subspaces are kept in a canonical
//! form (their basis columns are the rows of a reduced row echelon form of
//! any spanning set) so that two equal subspaces compare equal structurally.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_vec(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x)).collect()
}

/// Dense matrix with exact rational entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dim("matrix entries", rows * cols, data.len()));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`;
    /// `cols` is needed so that zero-row matrices keep their shape.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::dim("matrix row", cols, row.len()));
            }
            data.extend(row.iter().cloned());
        }
        Ok(RatMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::dim("matrix column", rows, col.len()));
            }
            for (r, x) in col.iter().enumerate() {
                m.data[r * cols + c] = x.clone();
            }
        }
        Ok(m)
    }

    /// Integer convenience constructor, mostly for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| rat_vec(r)).collect();
        Self::from_rows(cols, &rows).expect("ragged integer matrix literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rational) {
        self.data[r * self.cols + c] = x;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, r: usize) -> Vec<Rational> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::dim("matrix product", self.cols, other.rows));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::dim("matrix-vector product", self.cols, v.len()));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.get(r, c) * x;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &RatMatrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<RatMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim(
                "matrix shape",
                self.rows * self.cols,
                other.rows * other.cols,
            ));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, k: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Kronecker product; block `(i, j)` of the result is `self[i][j] * other`.
    pub fn kron(&self, other: &RatMatrix) -> RatMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * cols + j * other.cols + l] =
                            a * other.get(k, l);
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows {
            return Err(Error::dim("hstack", self.rows, other.rows));
        }
        let mut cols = self.column_vectors();
        cols.extend(other.column_vectors());
        RatMatrix::from_columns(self.rows, &cols)
    }

    pub fn rank(&self) -> usize {
        let (_, pivots) = rref(self.row_vectors(), self.cols);
        pivots.len()
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::dim("determinant", self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.row_vectors();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &pivot;
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                let mut row = self.row(r);
                row.extend((0..n).map(|c| {
                    if c == r {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        let (red, pivots) = rref(aug, 2 * n);
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        let rows: Vec<Vec<Rational>> = red.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(RatMatrix::from_rows(n, &rows).expect("square inverse"))
    }

    /// Solves `self * x = b`, returning one solution if any exists.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::dim("linear solve", self.rows, b.len()));
        }
        let aug: Vec<Vec<Rational>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r);
                row.push(b[r].clone());
                row
            })
            .collect();
        let (red, pivots) = rref(aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in red.iter().zip(&pivots) {
            x[p] = row[self.cols].clone();
        }
        Ok(Some(x))
    }
}

/// Reduced row echelon form of `rows` (each of length `cols`).
/// Returns the reduced rows (zero rows dropped) and the pivot columns.
pub fn rref(mut rows: Vec<Vec<Rational>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..cols {
        let Some(p) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(lead, p);
        let inv = rows[lead][col].recip();
        for x in rows[lead].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r == lead || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in col..cols {
                let t = &f * &rows[lead][c];
                rows[r][c] -= t;
            }
        }
        pivots.push(col);
        lead += 1;
        if lead == rows.len() {
            break;
        }
    }
    rows.truncate(lead);
    (rows, pivots)
}

/// A linear subspace of ℚⁿ held in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    /// Columns form the canonical basis.
    basis: RatMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RatMatrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RatMatrix::identity(ambient),
        }
    }

    /// Span of the given vectors, each of length `ambient`.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::dim("spanning vector", ambient, v.len()));
            }
        }
        let (red, _) = rref(vectors.to_vec(), ambient);
        Ok(Subspace {
            ambient,
            basis: RatMatrix::from_columns(ambient, &red)?,
        })
    }

    pub fn span_i64(ambient: usize, vectors: &[&[i64]]) -> Result<Self> {
        let vs: Vec<Vec<Rational>> = vectors.iter().map(|v| rat_vec(v)).collect();
        Self::span(ambient, &vs)
    }

    /// Column space of `m`.
    pub fn column_space(m: &RatMatrix) -> Self {
        Self::span(m.rows(), &m.column_vectors()).expect("columns have matrix height")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Basis matrix (ambient × dim), columns in canonical order.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.column_vectors()
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::dim("membership test", self.ambient, v.len()));
        }
        if v.iter().all(Zero::is_zero) {
            return Ok(true);
        }
        Ok(self.basis.solve(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::dim("subspace inclusion", self.ambient, other.ambient));
        }
        for v in self.basis_vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        sum(self, other)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        intersect(self, other)
    }

    /// Orthogonal complement for the standard dot product.
    pub fn orthogonal(&self) -> Subspace {
        kernel(&self.basis.transpose())
    }

    /// Image of the subspace under `m` (an `out × ambient` matrix).
    pub fn image(&self, m: &RatMatrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::dim("subspace image", self.ambient, m.cols()));
        }
        Ok(Subspace::column_space(&m.mul(&self.basis)?))
    }

    /// Preimage `{x : m·x ∈ self}` for an `ambient × n` matrix `m`.
    pub fn preimage(&self, m: &RatMatrix) -> Result<Subspace> {
        if m.rows() != self.ambient {
            return Err(Error::dim("subspace preimage", self.ambient, m.rows()));
        }
        // m·x ∈ S  ⇔  every functional vanishing on S kills m·x.
        let ann = self.orthogonal();
        Ok(kernel(&ann.basis.transpose().mul(m)?))
    }
}

/// `{v : m·v = 0}`.
pub fn kernel(m: &RatMatrix) -> Subspace {
    let n = m.cols();
    let (red, pivots) = rref(m.row_vectors(), n);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (row, &p) in red.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    Subspace::span(n, &basis).expect("kernel vectors have ambient length")
}

/// `{w : wᵀ·P·v = 0 for all v ∈ s}`; the standard dot product when `pairing` is `None`.
pub fn annihilator(s: &Subspace, pairing: Option<&RatMatrix>) -> Result<Subspace> {
    match pairing {
        None => Ok(s.orthogonal()),
        Some(p) => {
            if !p.is_square() {
                return Err(Error::dim("pairing", p.rows(), p.cols()));
            }
            if p.rows() != s.ambient() {
                return Err(Error::dim("pairing", s.ambient(), p.rows()));
            }
            if p.determinant()?.is_zero() {
                return Err(Error::DegeneratePairing);
            }
            Ok(kernel(&p.mul(s.basis())?.transpose()))
        }
    }
}

pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.ambient() != b.ambient() {
        return Err(Error::dim("subspace sum", a.ambient(), b.ambient()));
    }
    let mut vs = a.basis_vectors();
    vs.extend(b.basis_vectors());
    Subspace::span(a.ambient(), &vs)
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.ambient() != b.ambient() {
        return Err(Error::dim("subspace intersection", a.ambient(), b.ambient()));
    }
    Ok(sum(&a.orthogonal(), &b.orthogonal())?.orthogonal())
}

/// A finitely generated sublattice of ℤⁿ.
///
/// Generators are stored in Hermite normal form, so equal lattices compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntLattice {
    ambient: usize,
    generators: Vec<Vec<BigInt>>,
}

impl IntLattice {
    pub fn new(ambient: usize, generators: Vec<Vec<BigInt>>) -> Result<Self> {
        for g in &generators {
            if g.len() != ambient {
                return Err(Error::dim("lattice generator", ambient, g.len()));
            }
        }
        Ok(IntLattice {
            ambient,
            generators: hermite_normal_form(generators, ambient),
        })
    }

    pub fn from_i64(ambient: usize, generators: &[&[i64]]) -> Result<Self> {
        Self::new(
            ambient,
            generators
                .iter()
                .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn rational_span(&self) -> Subspace {
        let vs: Vec<Vec<Rational>> = self
            .generators
            .iter()
            .map(|g| g.iter().cloned().map(Rational::from_integer).collect())
            .collect();
        Subspace::span(self.ambient, &vs).expect("generators have ambient length")
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut gens = self.generators.clone();
        gens.push(v.to_vec());
        hermite_normal_form(gens, self.ambient) == self.generators
    }
}

/// Saturation `(ℚ-span of l) ∩ ℤⁿ`, read off from the Smith normal form.
pub fn saturate(l: &IntLattice) -> IntLattice {
    let n = l.ambient_rank();
    let snf = smith_normal_form(l.generators(), n);
    // Generators as columns M = U⁻¹·D·V⁻¹, so the saturated span is
    // spanned by the first `rank` columns of U⁻¹.
    let gens = (0..snf.rank)
        .map(|c| (0..n).map(|r| snf.left_inverse[r][c].clone()).collect())
        .collect();
    IntLattice::new(n, gens).expect("columns of U⁻¹ have ambient length")
}

/// Result of a Smith normal form computation on an integer matrix whose
/// columns are the lattice generators: `left · M · right = diag(invariants)`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub invariants: Vec<BigInt>,
    pub rank: usize,
    pub left: Vec<Vec<BigInt>>,
    pub left_inverse: Vec<Vec<BigInt>>,
}

/// Smith normal form of the `n × k` matrix whose columns are `columns`.
/// Only the left transform (and its inverse) is tracked.
pub fn smith_normal_form(columns: &[Vec<BigInt>], n: usize) -> SmithForm {
    let k = columns.len();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|r| (0..k).map(|c| columns[c][r].clone()).collect())
        .collect();
    let ident = |m: usize| -> Vec<Vec<BigInt>> {
        (0..m)
            .map(|r| {
                (0..m)
                    .map(|c| if r == c { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect()
    };
    let mut left = ident(n);
    let mut left_inv = ident(n);

    // row op: row_i -= q * row_j ; inverse: col_j += q * col_i on left_inv
    fn row_sub(a: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
        let rj = a[j].clone();
        for (x, y) in a[i].iter_mut().zip(rj) {
            *x -= q * y;
        }
    }
    fn col_add(a: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
        for row in a.iter_mut() {
            let t = q * &row[i];
            row[j] += t;
        }
    }
    fn col_sub(a: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
        for row in a.iter_mut() {
            let t = q * &row[j];
            row[i] -= t;
        }
    }

    let mut t = 0;
    while t < n.min(k) {
        // choose the smallest nonzero entry in the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for r in t..n {
            for c in t..k {
                if !a[r][c].is_zero()
                    && best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(t, pr);
        left.swap(t, pr);
        for row in left_inv.iter_mut() {
            row.swap(t, pr);
        }
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        let mut clean = true;
        for r in t + 1..n {
            if a[r][t].is_zero() {
                continue;
            }
            let q = a[r][t].div_floor(&a[t][t]);
            row_sub(&mut a, r, t, &q);
            row_sub(&mut left, r, t, &q);
            col_add(&mut left_inv, r, t, &q);
            if !a[r][t].is_zero() {
                clean = false;
            }
        }
        for c in t + 1..k {
            if a[t][c].is_zero() {
                continue;
            }
            let q = a[t][c].div_floor(&a[t][t]);
            col_sub(&mut a, c, t, &q);
            if !a[t][c].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility condition d_t | remaining entries
        let mut fixed = true;
        'outer: for r in t + 1..n {
            for c in t + 1..k {
                if !a[r][c].is_multiple_of(&a[t][t]) {
                    let one = BigInt::one();
                    // add row r to row t and retry
                    let rr = a[r].clone();
                    for (x, y) in a[t].iter_mut().zip(rr) {
                        *x += y;
                    }
                    let lr = left[r].clone();
                    for (x, y) in left[t].iter_mut().zip(lr) {
                        *x += y;
                    }
                    col_sub(&mut left_inv, r, t, &one);
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if fixed {
            if a[t][t].is_negative() {
                for x in a[t].iter_mut() {
                    *x = -x.clone();
                }
                for x in left[t].iter_mut() {
                    *x = -x.clone();
                }
                for row in left_inv.iter_mut() {
                    row[t] = -row[t].clone();
                }
            }
            t += 1;
        }
    }
    let invariants = (0..t).map(|i| a[i][i].clone()).collect();
    SmithForm {
        invariants,
        rank: t,
        left,
        left_inverse: left_inv,
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`;
/// zero rows are dropped.
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>, n: usize) -> Vec<Vec<BigInt>> {
    let mut lead = 0;
    for col in 0..n {
        loop {
            let nz: Vec<usize> = (lead..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz
                .iter()
                .min_by(|&&a, &&b| rows[a][col].abs().cmp(&rows[b][col].abs()))
                .unwrap();
            for &r in &nz {
                if r == p {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[p][col]);
                let rp = rows[p].clone();
                for (x, y) in rows[r].iter_mut().zip(rp) {
                    *x -= &q * y;
                }
            }
        }
        let Some(p) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(lead, p);
        if rows[lead][col].is_negative() {
            for x in rows[lead].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot = rows[lead][col].clone();
        for r in 0..lead {
            let q = rows[r][col].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            let rl = rows[lead].clone();
            for (x, y) in rows[r].iter_mut().zip(rl) {
                *x -= &q * y;
            }
        }
        lead += 1;
    }
    rows.truncate(lead);
    rows
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = RatMatrix> {
        (0..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c)
                .prop_map(move |xs| RatMatrix::from_vec(r, c, xs.into_iter().map(rat).collect()).unwrap())
        })
    }

    /// Rank as the size of the largest nonvanishing minor.
    fn brute_rank(m: &RatMatrix) -> usize {
        let n = m.cols();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let cols: Vec<Vec<Rational>> = (0..n)
                .filter(|c| mask & (1 << c) != 0)
                .map(|c| m.column(c))
                .collect();
            let k = cols.len();
            if k <= best {
                continue;
            }
            // independent iff some k×k minor is nonzero
            let sub = RatMatrix::from_columns(m.rows(), &cols).unwrap();
            let rows = m.rows();
            if rows < k {
                continue;
            }
            let mut found = false;
            for rmask in 0u32..(1 << rows) {
                if rmask.count_ones() as usize != k {
                    continue;
                }
                let picked: Vec<Vec<Rational>> = (0..rows)
                    .filter(|r| rmask & (1 << r) != 0)
                    .map(|r| sub.row(r))
                    .collect();
                let minor = RatMatrix::from_rows(k, &picked).unwrap();
                if !minor.determinant().unwrap().is_zero() {
                    found = true;
                    break;
                }
            }
            if found {
                best = k;
            }
        }
        best
    }

    proptest! {
        #[test]
        fn rank_nullity_against_minors(m in small_matrix(4, 5)) {
            let k = kernel(&m);
            prop_assert_eq!(brute_rank(&m) + k.dim(), m.cols());
            for v in k.basis_vectors() {
                prop_assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn annihilator_is_involution(m in small_matrix(4, 5)) {
            let s = Subspace::column_space(&m.transpose());
            let ann = annihilator(&s, None).unwrap();
            prop_assert_eq!(ann.dim() + s.dim(), s.ambient());
            prop_assert_eq!(annihilator(&ann, None).unwrap(), s);
        }

        #[test]
        fn sum_and_intersection_dimensions(a in small_matrix(3, 4), b in small_matrix(3, 4)) {
            prop_assume!(a.cols() == b.cols());
            let sa = Subspace::column_space(&a.transpose());
            let sb = Subspace::column_space(&b.transpose());
            let s = sum(&sa, &sb).unwrap();
            let i = intersect(&sa, &sb).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), sa.dim() + sb.dim());
            prop_assert!(i.is_subspace_of(&sa).unwrap() && sa.is_subspace_of(&s).unwrap());
        }

        #[test]
        fn saturate_is_idempotent(gens in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 3), 0..4)) {
            let refs: Vec<&[i64]> = gens.iter().map(|g| g.as_slice()).collect();
            let l = IntLattice::from_i64(3, &refs).unwrap();
            let s = saturate(&l);
            prop_assert_eq!(saturate(&s), s.clone());
            prop_assert_eq!(s.rank(), l.rank());
            prop_assert_eq!(s.rational_span(), l.rational_span());
            for g in l.generators() {
                prop_assert!(s.contains(g));
            }
        }
    }
}
