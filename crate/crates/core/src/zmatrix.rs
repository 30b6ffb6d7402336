//! Exact integer matrices and Smith normal form.
//!
//! Every cokernel, kernel and presented-group map in the crate goes through
//! [`snf`]. The convention is fixed once: `u * a * v = s`, with `u`, `v`
//! unimodular and the diagonal of `s` non-negative and divisibility-chained.
//!
//! A finitely presented abelian group is the cokernel of a relation matrix
//! `R` (columns are relations in `Z^rows`). A homomorphism between two such
//! groups is an integer matrix on the ambient free groups; see
//! [`PresentedHom`].

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fgab::FgAbGroup;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row-major entries.
    ///
    /// Panics if `entries.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "{rows}x{cols} matrix needs {} entries",
            rows * cols
        );
        IntMatrix {
            rows,
            cols,
            data: entries,
        }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Row-major literal; all rows must have the same length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row in matrix literal");
            data.extend(row.iter().cloned().map(Into::into));
        }
        Self::new(rows.len(), cols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    /// A single column vector.
    pub fn column_vector(entries: Vec<BigInt>) -> Self {
        let n = entries.len();
        Self::new(n, 1, entries)
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.rows, self.cols, self.data.iter().map(|x| x * k).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self::new(self.rows + other.rows, self.cols, data)
    }

    pub fn block_diag(blocks: &[IntMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &IntMatrix) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self.get(i / other.rows, j / other.cols) * other.get(i % other.rows, j % other.cols)
        })
    }

    /// Columns `range` of `self`.
    pub fn select_columns(&self, range: std::ops::Range<usize>) -> Self {
        let width = range.len();
        Self::from_fn(self.rows, width, |i, j| self.get(i, range.start + j).clone())
    }

    /// Rows `range` of `self`.
    pub fn select_rows(&self, range: std::ops::Range<usize>) -> Self {
        let height = range.len();
        Self::from_fn(height, self.cols, |i, j| self.get(range.start + i, j).clone())
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    pub fn rank(&self) -> usize {
        snf(self).rank()
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        IntMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(BigInt::zero(), |acc, k| acc + self.get(i, k) * rhs.get(k, j))
        })
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}{}", self.rows, self.cols, self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Smith decomposition `u * a * v = s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    /// Inverse of `u`, maintained alongside it.
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// `min(rows, cols)` non-negative entries with `d1 | d2 | ...`.
    pub diagonal: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Working state for the reduction; rows of `u`/`u_inv` and columns of `v`
/// follow every elementary operation applied to `s`.
struct Reducer {
    s: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    m: usize,
    n: usize,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.s.swap(a, b);
        self.u.swap(a, b);
        for row in &mut self.u_inv {
            row.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in &mut self.s {
            row.swap(a, b);
        }
        for row in &mut self.v {
            row.swap(a, b);
        }
    }

    /// row[target] += k * row[source]
    fn add_row(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.n {
            let delta = k * &self.s[source][j];
            self.s[target][j] += delta;
        }
        for j in 0..self.m {
            let delta = k * &self.u[source][j];
            self.u[target][j] += delta;
        }
        // u_inv <- u_inv * E^{-1}: col[source] -= k * col[target]
        for row in &mut self.u_inv {
            let delta = k * &row[target];
            row[source] -= delta;
        }
    }

    /// col[target] += k * col[source]
    fn add_col(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for row in &mut self.s {
            let delta = k * &row[source];
            row[target] += delta;
        }
        for row in &mut self.v {
            let delta = k * &row[source];
            row[target] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.s[i] {
            *x = -&*x;
        }
        for x in &mut self.u[i] {
            *x = -&*x;
        }
        for row in &mut self.u_inv {
            row[i] = -&row[i];
        }
    }

    /// Position of a nonzero entry of minimal absolute value in the
    /// trailing submatrix starting at `(t, t)`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.s[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.s[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn reduce(&mut self) {
        let steps = self.m.min(self.n);
        for t in 0..steps {
            let Some((pi, pj)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.m {
                    if self.s[i][t].is_zero() {
                        continue;
                    }
                    let q = self.s[i][t].div_floor(&self.s[t][t]);
                    self.add_row(i, t, &-q);
                    if !self.s[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.n {
                    if self.s[t][j].is_zero() {
                        continue;
                    }
                    let q = self.s[t][j].div_floor(&self.s[t][t]);
                    self.add_col(j, t, &-q);
                    if !self.s[t][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // A remainder smaller than the pivot survives in row or
                    // column t; bring the smallest one to (t, t) and repeat.
                    let mut best = (t, t);
                    for i in t + 1..self.m {
                        if !self.s[i][t].is_zero()
                            && self.s[i][t].abs() < self.s[best.0][best.1].abs()
                        {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.n {
                        if !self.s[t][j].is_zero()
                            && self.s[t][j].abs() < self.s[best.0][best.1].abs()
                        {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // Row and column cleared; enforce divisibility of the rest.
                let pivot = self.s[t][t].clone();
                let offender = (t + 1..self.m).find(|&i| {
                    (t + 1..self.n).any(|j| !self.s[i][j].is_multiple_of(&pivot))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.s[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

fn to_rows(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..a.rows).map(|i| a.row(i).to_vec()).collect()
}

fn from_rows_vec(rows: Vec<Vec<BigInt>>, cols: usize) -> IntMatrix {
    let r = rows.len();
    IntMatrix::new(r, cols, rows.into_iter().flatten().collect())
}

/// Smith normal form with unimodular transforms.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut r = Reducer {
        s: to_rows(a),
        u: to_rows(&IntMatrix::identity(m)),
        u_inv: to_rows(&IntMatrix::identity(m)),
        v: to_rows(&IntMatrix::identity(n)),
        m,
        n,
    };
    r.reduce();
    let diagonal = (0..m.min(n)).map(|i| r.s[i][i].clone()).collect();
    SnfResult {
        u: from_rows_vec(r.u, m),
        u_inv: from_rows_vec(r.u_inv, m),
        s: from_rows_vec(r.s, n),
        v: from_rows_vec(r.v, n),
        diagonal,
    }
}

/// Columns form a Z-basis of `{x : a x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let d = snf(a);
    let rank = d.rank();
    d.v.select_columns(rank..a.cols)
}

/// `Z^rows / (column span of a)` in invariant-factor normal form.
pub fn cokernel(a: &IntMatrix) -> FgAbGroup {
    let d = snf(a);
    let rank = d.rank();
    let free = a.rows - rank;
    FgAbGroup::from_diagonal(
        d.diagonal[..rank]
            .iter()
            .cloned()
            .chain(std::iter::repeat_n(BigInt::zero(), free)),
    )
}

/// The column span of a generating matrix, kept in Smith coordinates so
/// membership and coordinates are cheap to compute.
#[derive(Clone, Debug)]
pub struct Lattice {
    ambient: usize,
    snf: SnfResult,
    rank: usize,
}

impl Lattice {
    pub fn spanned_by(generators: &IntMatrix) -> Self {
        let snf = snf(generators);
        let rank = snf.rank();
        Lattice {
            ambient: generators.rows,
            snf,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Basis columns `d_i * u_inv[:, i]` for the nonzero Smith entries.
    pub fn basis(&self) -> IntMatrix {
        IntMatrix::from_fn(self.ambient, self.rank, |i, j| {
            self.snf.u_inv.get(i, j) * &self.snf.diagonal[j]
        })
    }

    /// Coordinates of `x` in [`Lattice::basis`], or `None` if `x` is not in the lattice.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let ux = self.snf.u.mul_vec(x);
        let mut coords = Vec::with_capacity(self.rank);
        for (i, value) in ux.iter().enumerate() {
            if i < self.rank {
                let (q, r) = value.div_rem(&self.snf.diagonal[i]);
                if !r.is_zero() {
                    return None;
                }
                coords.push(q);
            } else if !value.is_zero() {
                return None;
            }
        }
        Some(coords)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).is_some()
    }
}

/// A homomorphism `Z^m / span(src_relations) -> Z^k / span(dst_relations)`
/// given by `map` (k x m) on the ambient free groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedHom {
    pub src_relations: IntMatrix,
    pub dst_relations: IntMatrix,
    pub map: IntMatrix,
}

impl PresentedHom {
    /// Checks dimensions and that relations go to relations.
    pub fn new(src_relations: IntMatrix, dst_relations: IntMatrix, map: IntMatrix) -> Result<Self> {
        if map.cols != src_relations.rows || map.rows != dst_relations.rows {
            return Err(Error::IncompatibleMap(format!(
                "map is {}x{} but source ambient rank is {} and target ambient rank is {}",
                map.rows, map.cols, src_relations.rows, dst_relations.rows
            )));
        }
        let target = Lattice::spanned_by(&dst_relations);
        let images = &map * &src_relations;
        for j in 0..images.cols {
            if !target.contains(&images.column(j)) {
                return Err(Error::IncompatibleMap(format!(
                    "source relation {j} maps to {:?}, outside the target relations",
                    images.column(j)
                )));
            }
        }
        Ok(PresentedHom {
            src_relations,
            dst_relations,
            map,
        })
    }

    pub fn source(&self) -> FgAbGroup {
        cokernel(&self.src_relations)
    }

    pub fn target(&self) -> FgAbGroup {
        cokernel(&self.dst_relations)
    }

    pub fn cokernel(&self) -> FgAbGroup {
        cokernel(&self.map.hstack(&self.dst_relations))
    }

    pub fn kernel(&self) -> FgAbGroup {
        let m = self.map.cols;
        // x is in the preimage of the target relations iff (x, y) solves
        // map*x + dst*y = 0 for some y.
        let stacked = self.map.hstack(&self.dst_relations);
        let solutions = kernel_basis(&stacked);
        let preimage = Lattice::spanned_by(&solutions.select_rows(0..m));
        let coords: Vec<Vec<BigInt>> = (0..self.src_relations.cols)
            .map(|j| {
                preimage
                    .coordinates(&self.src_relations.column(j))
                    .expect("source relations lie in the preimage of target relations")
            })
            .collect();
        let rel = IntMatrix::from_fn(preimage.rank(), coords.len(), |i, j| coords[j][i].clone());
        cokernel(&rel)
    }

    pub fn kernel_cokernel(&self) -> (FgAbGroup, FgAbGroup) {
        (self.kernel(), self.cokernel())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }
}

/// Kernel and cokernel of the map induced by `map` between presented groups.
pub fn presented_hom_kernel_cokernel(
    src_relations: &IntMatrix,
    dst_relations: &IntMatrix,
    map: &IntMatrix,
) -> Result<(FgAbGroup, FgAbGroup)> {
    let hom = PresentedHom::new(src_relations.clone(), dst_relations.clone(), map.clone())?;
    Ok(hom.kernel_cokernel())
}
