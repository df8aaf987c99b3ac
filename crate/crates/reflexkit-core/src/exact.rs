//! Exact integer and rational linear algebra.
//!
//! Everything downstream (hulls, duals, curve classes) reduces to the
//! primitives in this module: pairings, determinants, Hermite and Smith
//! normal forms, dual bases, kernels and lattice saturations. All
//! arithmetic is arbitrary precision; there is no floating point anywhere
//! in this crate.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Which of the two mutually dual lattices a point lives in.
///
/// Vertices of a polytope live in `N`; facet normals live in `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ambient {
    N,
    M,
}

impl Ambient {
    pub fn opposite(self) -> Ambient {
        match self {
            Ambient::N => Ambient::M,
            Ambient::M => Ambient::N,
        }
    }
}

/// A point of the lattice `N ≅ ℤⁿ` or of its dual `M`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    coords: Vec<BigInt>,
    ambient: Ambient,
}

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>, ambient: Ambient) -> Self {
        assert!(!coords.is_empty(), "lattice points need dimension >= 1");
        Self { coords, ambient }
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(coords: &[i64], ambient: Ambient) -> Self {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect(), ambient)
    }

    pub fn zero(dim: usize, ambient: Ambient) -> Self {
        Self::new(vec![BigInt::zero(); dim], ambient)
    }

    /// The standard basis vector `e_i` (0-indexed).
    pub fn basis_vector(i: usize, dim: usize, ambient: Ambient) -> Self {
        let mut coords = vec![BigInt::zero(); dim];
        coords[i] = BigInt::one();
        Self::new(coords, ambient)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|c| -c).collect(), self.ambient)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        assert_eq!(self.ambient, other.ambient);
        Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
            self.ambient,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coords.iter().map(|c| c * k).collect(), self.ambient)
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint::new(
            self.coords
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
            self.ambient,
        )
    }
}

impl std::fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A point of `N_ℚ` or `M_ℚ`. Coordinates are kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: Vec<BigRational>,
    ambient: Ambient,
}

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>, ambient: Ambient) -> Self {
        assert!(!coords.is_empty(), "rational points need dimension >= 1");
        Self { coords, ambient }
    }

    pub fn from_ints(coords: &[i64], ambient: Ambient) -> Self {
        Self::new(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
            ambient,
        )
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Exact conversion back to a lattice point, if all coordinates are integral.
    pub fn to_lattice(&self) -> Option<LatticePoint> {
        let mut coords = Vec::with_capacity(self.dim());
        for c in &self.coords {
            if !c.is_integer() {
                return None;
            }
            coords.push(c.to_integer());
        }
        Some(LatticePoint::new(coords, self.ambient))
    }
}

/// The standard pairing `⟨x, y⟩ = Σᵢ xᵢyᵢ` between `N_ℚ` and `M_ℚ`.
///
/// Rejects mismatched dimensions and two points of the same lattice; the
/// pairing is only defined between a lattice and its dual.
pub fn pairing(x: &RationalPoint, y: &RationalPoint) -> Result<BigRational> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    if x.ambient() == y.ambient() {
        return Err(Error::SameAmbient);
    }
    Ok(x.coords
        .iter()
        .zip(&y.coords)
        .map(|(a, b)| a * b)
        .sum())
}

/// Integer pairing between a lattice point and a dual lattice point.
pub fn lattice_pairing(x: &LatticePoint, y: &LatticePoint) -> Result<BigInt> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    if x.ambient() == y.ambient() {
        return Err(Error::SameAmbient);
    }
    Ok(x.coords
        .iter()
        .zip(&y.coords)
        .map(|(a, b)| a * b)
        .sum())
}

/// Divides a nonzero lattice vector by the gcd of its coordinates.
///
/// The result is the unique primitive positive multiple of the input.
pub fn primitive(v: &LatticePoint) -> Result<LatticePoint> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut g = BigInt::zero();
    for c in v.coords() {
        g = g.gcd(c);
    }
    Ok(LatticePoint::new(
        v.coords().iter().map(|c| c / &g).collect(),
        v.ambient(),
    ))
}

/// A dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must match shape");
        Self { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the coordinate vectors of the given points.
    pub fn from_columns(points: &[LatticePoint]) -> Self {
        let cols = points.len();
        let rows = points.first().map_or(0, LatticePoint::dim);
        let mut m = Self::zero(rows, cols);
        for (j, p) in points.iter().enumerate() {
            assert_eq!(p.dim(), rows);
            for i in 0..rows {
                m[(i, j)] = p.coords()[i].clone();
            }
        }
        m
    }

    pub fn from_point_rows(points: &[LatticePoint]) -> Self {
        Self::from_columns(points).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// Applies the matrix to a point: `self · p` (point as a column vector).
    pub fn apply(&self, p: &LatticePoint) -> LatticePoint {
        assert_eq!(self.cols, p.dim());
        let coords = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(p.coords())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        LatticePoint::new(coords, p.ambient())
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && determinant(self).map(|d| d.abs().is_one()).unwrap_or(false)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    /// row_i += k * row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, k: &BigInt) {
        assert_ne!(i, j);
        for col in 0..self.cols {
            let add = &self[(j, col)] * k;
            self[(i, col)] += add;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    /// col_i += k * col_j
    fn add_col_multiple(&mut self, i: usize, j: usize, k: &BigInt) {
        assert_ne!(i, j);
        for row in 0..self.rows {
            let add = &self[(row, j)] * k;
            self[(row, i)] += add;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Exact determinant via fraction-free Bareiss elimination.
pub fn determinant(a: &IntMatrix) -> Result<BigInt> {
    if a.rows != a.cols {
        return Err(Error::NonSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[(i, j)] = q;
            }
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    Ok(sign * m[(n - 1, n - 1)].clone())
}

/// Exact determinant of a rational matrix (Gaussian elimination over ℚ).
pub fn determinant_rational(rows: &[Vec<BigRational>]) -> Result<BigRational> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::NonSquare {
            rows: n,
            cols: rows.first().map_or(0, Vec::len),
        });
    }
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(BigRational::zero());
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= m[k][k].clone();
        let source = m[k].clone();
        for row in m.iter_mut().skip(k + 1) {
            if row[k].is_zero() {
                continue;
            }
            let factor = &row[k] / &source[k];
            for (x, s) in row.iter_mut().zip(&source).skip(k) {
                *x -= &factor * s;
            }
        }
    }
    Ok(det)
}

/// In-place Gauss-Jordan elimination over ℚ restricted to the first
/// `cols` columns of an augmented matrix. Returns one `(row, col)` pair
/// per pivot; pivot rows end up at the top in column order with unit
/// pivots and zeros elsewhere in the reduced columns.
pub(crate) fn gauss_jordan(m: &mut [Vec<BigRational>], cols: usize) -> Vec<(usize, usize)> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..cols {
        let Some(p) = (next_row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(p, next_row);
        let pivot = m[next_row][col].clone();
        for x in m[next_row].iter_mut() {
            *x /= &pivot;
        }
        let source = m[next_row].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == next_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, s) in row.iter_mut().zip(&source) {
                *x -= &factor * s;
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
    }
    pivots
}

/// Result of a Smith normal form computation: `u * a * v = d` with
/// `u`, `v` unimodular and `d` diagonal with each entry dividing the next.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithNormalForm {
    /// Diagonal entries d₁ | d₂ | …, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form by elementary integer operations with explicit
/// transform tracking, so callers can reason about lattice quotients.
pub fn smith_normal_form(a: &IntMatrix) -> SmithNormalForm {
    let (r, c) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut u_inv = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);

    // d' = E·d  =>  u' = E·u, u_inv' = u_inv·E⁻¹
    macro_rules! row_swap {
        ($i:expr, $j:expr) => {{
            d.swap_rows($i, $j);
            u.swap_rows($i, $j);
            u_inv.swap_cols($i, $j);
        }};
    }
    macro_rules! row_add {
        ($i:expr, $j:expr, $k:expr) => {{
            let k = $k;
            d.add_row_multiple($i, $j, &k);
            u.add_row_multiple($i, $j, &k);
            u_inv.add_col_multiple($j, $i, &-k);
        }};
    }
    macro_rules! row_neg {
        ($i:expr) => {{
            d.negate_row($i);
            u.negate_row($i);
            u_inv.negate_col($i);
        }};
    }
    // d' = d·F  =>  v' = v·F, v_inv' = F⁻¹·v_inv
    macro_rules! col_swap {
        ($i:expr, $j:expr) => {{
            d.swap_cols($i, $j);
            v.swap_cols($i, $j);
            v_inv.swap_rows($i, $j);
        }};
    }
    macro_rules! col_add {
        ($i:expr, $j:expr, $k:expr) => {{
            let k = $k;
            d.add_col_multiple($i, $j, &k);
            v.add_col_multiple($i, $j, &k);
            v_inv.add_row_multiple($j, $i, &-k);
        }};
    }

    let steps = r.min(c);
    for t in 0..steps {
        // Pivot: smallest nonzero absolute value in the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if d[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if d[(i, j)].abs() < d[(pi, pj)].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break; // trailing submatrix is zero
        };
        row_swap!(t, pi);
        col_swap!(t, pj);

        // Clear row t and column t by Euclidean steps.
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if !d[(i, t)].is_zero() {
                    let q = div_round(&d[(i, t)], &d[(t, t)]);
                    row_add!(i, t, -q);
                    if !d[(i, t)].is_zero() {
                        row_swap!(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..c {
                if !d[(t, j)].is_zero() {
                    let q = div_round(&d[(t, j)], &d[(t, t)]);
                    col_add!(j, t, -q);
                    if !d[(t, j)].is_zero() {
                        col_swap!(t, j);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        if d[(t, t)].is_negative() {
            row_neg!(t);
        }
    }

    // Enforce the divisibility chain d₁ | d₂ | …
    loop {
        let mut fixed = true;
        for t in 0..steps.saturating_sub(1) {
            let a = d[(t, t)].clone();
            let b = d[(t + 1, t + 1)].clone();
            if a.is_zero() && !b.is_zero() {
                row_swap!(t, t + 1);
                col_swap!(t, t + 1);
                fixed = false;
                continue;
            }
            if a.is_zero() || b.is_zero() || (&b % &a).is_zero() {
                continue;
            }
            // Put gcd(a, b) at position t by one column move and a Euclid pass.
            col_add!(t, t + 1, BigInt::one());
            loop {
                let q = div_round(&d[(t + 1, t)], &d[(t, t)]);
                row_add!(t + 1, t, -q);
                if d[(t + 1, t)].is_zero() {
                    break;
                }
                row_swap!(t, t + 1);
            }
            // Clear the fill-in at (t, t+1).
            let q = {
                let (q, r2) = d[(t, t + 1)].div_rem(&d[(t, t)]);
                debug_assert!(r2.is_zero());
                q
            };
            col_add!(t + 1, t, -q);
            if d[(t, t)].is_negative() {
                row_neg!(t);
            }
            if d[(t + 1, t + 1)].is_negative() {
                row_neg!(t + 1);
            }
            fixed = false;
        }
        if fixed {
            break;
        }
    }

    debug_assert_eq!(u.mul(a).mul(&v), d);
    SmithNormalForm { d, u, u_inv, v, v_inv }
}

/// Rounded division: quotient `q` minimizing `|a - q b|`.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Row-style Hermite normal form: returns `(h, u)` with `h = u·a`,
/// `u` unimodular, `h` in row echelon form with positive pivots and
/// entries above each pivot reduced to `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (r, c) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(r);

    let mut pivot_row = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..c {
        if pivot_row == r {
            break;
        }
        // Euclid on the entries of this column below pivot_row.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..r {
                if h[(i, col)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if h[(i, col)].abs() < h[(b, col)].abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(b) = best else {
                break;
            };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..r {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = div_round(&h[(i, col)], &h[(pivot_row, col)]);
                h.add_row_multiple(i, pivot_row, &-&q);
                u.add_row_multiple(i, pivot_row, &-&q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // Reduce entries above the pivot into [0, pivot).
        for i in 0..pivot_row {
            let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
            if !q.is_zero() {
                h.add_row_multiple(i, pivot_row, &-&q);
                u.add_row_multiple(i, pivot_row, &-&q);
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    (h, u)
}

/// Rank of an integer matrix (exact).
pub fn rank(a: &IntMatrix) -> usize {
    let (h, _) = hermite_normal_form(a);
    (0..h.rows())
        .filter(|&i| h.row(i).iter().any(|x| !x.is_zero()))
        .count()
}

/// A basis of the integer kernel `{x ∈ ℤᶜ : a·x = 0}`, returned as columns.
/// The basis spans the full (saturated) kernel lattice.
pub fn kernel(a: &IntMatrix) -> Vec<LatticePoint> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let c = a.cols();
    (rank..c)
        .map(|j| LatticePoint::new(snf.v.column(j), Ambient::N))
        .collect()
}

/// A lattice basis of `span_ℚ(rows of a) ∩ ℤⁿ`, the saturation of the
/// row lattice. Returned as row vectors.
pub fn saturation_basis(a: &IntMatrix) -> Vec<LatticePoint> {
    let n = a.cols();
    let ker = kernel(a);
    if ker.is_empty() {
        return (0..n)
            .map(|i| LatticePoint::basis_vector(i, n, Ambient::N))
            .collect();
    }
    let ker_rows = IntMatrix::from_point_rows(&ker);
    kernel(&ker_rows)
}

/// Given a basis `e₁,…,eₙ` of `N_ℚ` (rows), returns the dual basis
/// `e₁*,…,eₙ*` of `M_ℚ` with `⟨eᵢ, eⱼ*⟩ = δᵢⱼ`.
pub fn dual_basis(basis: &[RationalPoint]) -> Result<Vec<RationalPoint>> {
    let n = basis.len();
    if n == 0 || basis.iter().any(|b| b.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: basis.iter().map(RationalPoint::dim).max().unwrap_or(0),
        });
    }
    let ambient = basis[0].ambient();
    // Solve E·X = I; the dual basis vectors are the columns of X = E⁻¹.
    let mut m: Vec<Vec<BigRational>> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut row = b.coords().to_vec();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    if gauss_jordan(&mut m, n).len() < n {
        return Err(Error::SingularInput);
    }
    Ok((0..n)
        .map(|j| {
            RationalPoint::new(
                (0..n).map(|i| m[i][n + j].clone()).collect(),
                ambient.opposite(),
            )
        })
        .collect())
}

/// Solves the square rational system `columns(basis) · x = target` exactly.
pub fn solve_in_basis(basis: &[LatticePoint], target: &LatticePoint) -> Result<Vec<BigRational>> {
    let n = basis.len();
    if n == 0 || basis.iter().any(|b| b.dim() != n) || target.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: target.dim(),
        });
    }
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| BigRational::from_integer(b.coords()[i].clone()))
                .collect();
            row.push(BigRational::from_integer(target.coords()[i].clone()));
            row
        })
        .collect();
    if gauss_jordan(&mut m, n).len() < n {
        return Err(Error::SingularInput);
    }
    Ok((0..n).map(|i| m[i][n].clone()).collect())
}

/// Expresses `v` as an integer combination of the given independent
/// lattice vectors; `None` if `v` is outside the spanned lattice.
pub fn coords_in_lattice_basis(
    basis: &[LatticePoint],
    v: &LatticePoint,
) -> Option<Vec<BigInt>> {
    let d = basis.len();
    let n = v.dim();
    // Solve the overdetermined system columns(basis)·x = v over ℚ.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| BigRational::from_integer(b.coords()[i].clone()))
                .collect();
            row.push(BigRational::from_integer(v.coords()[i].clone()));
            row
        })
        .collect();
    let pivots = gauss_jordan(&mut m, d);
    if pivots.len() < d {
        return None; // dependent basis vectors
    }
    // Consistency: the eliminated rows must have vanished entirely.
    for row in m.iter().skip(d) {
        if !row[d].is_zero() {
            return None;
        }
    }
    let mut coords = Vec::with_capacity(d);
    for (row, _) in pivots {
        let val = &m[row][d];
        if !val.is_integer() {
            return None;
        }
        coords.push(val.to_integer());
    }
    Some(coords)
}

/// Index of the sublattice spanned by the generators inside its saturation:
/// the product of the nonzero Smith diagonal entries. Equals `|det|` for a
/// full set of `n` generators.
pub fn cone_multiplicity(generators: &[LatticePoint]) -> Result<BigInt> {
    if generators.is_empty() {
        return Err(Error::InvalidInput("no generators".into()));
    }
    let m = IntMatrix::from_point_rows(generators);
    let snf = smith_normal_form(&m);
    if snf.rank() != generators.len() {
        return Err(Error::SingularInput);
    }
    Ok(snf
        .diagonal()
        .iter()
        .filter(|d| !d.is_zero())
        .product())
}

/// A random element of `GL(n, ℤ)` built from bounded elementary row
/// operations, for seeded invariance tests.
pub fn random_unimodular<R: Rng>(n: usize, rng: &mut R) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n == 1 {
        if rng.gen_bool(0.5) {
            m.negate_row(0);
        }
        return m;
    }
    for _ in 0..4 * n + 4 {
        match rng.gen_range(0..6) {
            0 => {
                let i = rng.gen_range(0..n);
                m.negate_row(i);
            }
            1 => {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                m.swap_rows(i, j);
            }
            _ => {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                let k = BigInt::from([-2i64, -1, 1, 2][rng.gen_range(0..4)]);
                m.add_row_multiple(i, j, &k);
            }
        }
    }
    debug_assert!(m.is_unimodular());
    m
}
