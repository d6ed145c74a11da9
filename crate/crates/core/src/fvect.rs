//! Finite-dimensional real vector spaces with labelled bases.
//!
//! Every vectorization functor lands here. A [`VectorSpace`] is identified by
//! its ordered basis labels (and the pseudo-metric it carries); vectors and
//! linear maps remember the spaces they live in so that mismatches are
//! reported instead of silently producing garbage.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Pseudo-metric carried by a vector space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Metric {
    /// Euclidean norm of the coordinate difference.
    #[default]
    Euclidean,
    /// Sum of absolute coordinate differences.
    Manhattan,
    /// Largest absolute coordinate difference.
    Chebyshev,
}

impl Metric {
    pub fn distance<T: Scalar>(self, a: &[T], b: &[T]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| (x.clone() - y.clone()).abs());
        match self {
            Metric::Euclidean => diffs
                .map(|d| {
                    let d = d.to_f64();
                    d * d
                })
                .sum::<f64>()
                .sqrt(),
            Metric::Manhattan => diffs.fold(T::zero(), |acc, d| acc + d).to_f64(),
            Metric::Chebyshev => diffs
                .fold(T::zero(), |acc, d| if d > acc { d } else { acc })
                .to_f64(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorSpace {
    labels: Arc<[String]>,
    metric: Metric,
}

impl VectorSpace {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::Invalid(format!("duplicate basis label {label:?}")));
            }
        }
        Ok(VectorSpace {
            labels: labels.into(),
            metric: Metric::default(),
        })
    }

    /// `ℝⁿ` with labels `e0 … e(n-1)`.
    pub fn standard(dim: usize) -> Self {
        Self::new((0..dim).map(|i| format!("e{i}"))).expect("labels are distinct")
    }

    pub fn with_metric(mut self, metric: Metric) -> Self {
        self.metric = metric;
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn zero<T: Scalar>(&self) -> Vector<T> {
        Vector {
            space: self.clone(),
            coords: vec![T::zero(); self.dim()],
        }
    }

    pub fn basis_vector<T: Scalar>(&self, index: usize) -> Vector<T> {
        let mut v = self.zero();
        v.coords[index] = T::one();
        v
    }

    pub fn basis_vector_for<T: Scalar>(&self, label: &str) -> Result<Vector<T>> {
        let index = self
            .index_of(label)
            .ok_or_else(|| Error::Space(format!("no basis element {label:?}")))?;
        Ok(self.basis_vector(index))
    }

    pub fn vector<T: Scalar>(&self, coords: Vec<T>) -> Result<Vector<T>> {
        Vector::new(self.clone(), coords)
    }
}

impl fmt::Display for VectorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ℝ[{}]", self.labels.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vector<T: Scalar = Rational> {
    space: VectorSpace,
    coords: Vec<T>,
}

impl<T: Scalar> Vector<T> {
    pub fn new(space: VectorSpace, coords: Vec<T>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(Error::Space(format!(
                "{} coordinates for a space of dimension {}",
                coords.len(),
                space.dim()
            )));
        }
        Ok(Vector { space, coords })
    }

    pub fn space(&self) -> &VectorSpace {
        &self.space
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Space(format!(
                "vectors live in {} and {}",
                self.space, other.space
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Vector {
            space: self.space.clone(),
            coords,
        })
    }

    pub fn scale(&self, factor: &T) -> Self {
        Vector {
            space: self.space.clone(),
            coords: self.coords.iter().map(|c| c.clone() * factor.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }
}

impl<T: Scalar> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Distance between two vectors of the same space under that space's metric.
pub fn pseudo_distance<T: Scalar>(v: &Vector<T>, w: &Vector<T>) -> Result<f64> {
    v.same_space(w)?;
    Ok(v.space.metric.distance(&v.coords, &w.coords))
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T: Scalar = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`Matrix::from_rows`] but fixes the column count, which matters
    /// for matrices with no rows.
    pub fn from_rows_with_cols(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Space(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Composition(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    // 0/1 matrices dominate (kernels, graph maps), so skip
                    // the big-number product where an entry is one
                    let product = if a.is_one() {
                        b.clone()
                    } else if b.is_one() {
                        a.clone()
                    } else {
                        a.clone() * b.clone()
                    };
                    let slot = &mut out.data[i * rhs.cols + j];
                    *slot = if slot.is_zero() { product } else { std::mem::replace(slot, T::zero()) + product };
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Space(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Entrywise comparison at the scalar field's tolerance.
    pub fn near(&self, other: &Self) -> bool {
        self.shape() == other.shape() && self.data.iter().zip(&other.data).all(|(a, b)| a.near(b))
    }

    pub fn rank(&self) -> usize {
        let mut echelon = Echelon::new(self.cols);
        (0..self.rows)
            .filter(|&r| echelon.insert(self.row(r).to_vec()))
            .count()
    }

    /// Gauss-Jordan inverse; `None` for singular or non-square matrices.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !negligible(&a[r][col]))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let lead = a[col][col].clone();
            for c in 0..n {
                a[col][c] = a[col][c].clone() / lead.clone();
                inv[col][c] = inv[col][c].clone() / lead.clone();
            }
            for r in (0..n).filter(|&r| r != col) {
                let factor = a[r][col].clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    a[r][c] = a[r][c].clone() - factor.clone() * a[col][c].clone();
                    inv[r][c] = inv[r][c].clone() - factor.clone() * inv[col][c].clone();
                }
            }
        }
        Some(Matrix::from_rows_with_cols(inv, n).expect("square"))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

fn negligible<T: Scalar>(x: &T) -> bool {
    if T::is_exact() {
        x.is_zero()
    } else {
        x.to_f64().abs() <= crate::scalar::FLOAT_TOLERANCE
    }
}

/// Incremental fraction-free row echelon form.
///
/// Rows are reduced in insertion order against earlier rows using
/// `v ← row[p]·v − v[p]·row` (no division), and the pivot of a new row is its
/// first nonzero entry. Row `k` is zero at the pivots of every earlier row.
#[derive(Debug, Clone)]
struct Echelon<T: Scalar> {
    width: usize,
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Scalar> Echelon<T> {
    fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
        }
    }

    fn reduce(&self, mut v: Vec<T>) -> Vec<T> {
        for (pivot, row) in &self.rows {
            let coeff = v[*pivot].clone();
            if coeff.is_zero() {
                continue;
            }
            let lead = row[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = lead.clone() * x.clone() - coeff.clone() * r.clone();
            }
            v[*pivot] = T::zero();
        }
        v
    }

    /// Returns whether `v` was independent of the rows already present.
    fn insert(&mut self, v: Vec<T>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let v = self.reduce(v);
        match v.iter().position(|x| !negligible(x)) {
            Some(pivot) => {
                self.rows.push((pivot, v));
                true
            }
            None => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap<T: Scalar = Rational> {
    domain: VectorSpace,
    codomain: VectorSpace,
    matrix: Matrix<T>,
}

impl<T: Scalar> LinearMap<T> {
    pub fn new(domain: VectorSpace, codomain: VectorSpace, matrix: Matrix<T>) -> Result<Self> {
        if matrix.shape() != (codomain.dim(), domain.dim()) {
            return Err(Error::Space(format!(
                "matrix is {}x{} but the map goes from dimension {} to {}",
                matrix.rows(),
                matrix.cols(),
                domain.dim(),
                codomain.dim()
            )));
        }
        Ok(LinearMap {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(space: &VectorSpace) -> Self {
        LinearMap {
            domain: space.clone(),
            codomain: space.clone(),
            matrix: Matrix::identity(space.dim()),
        }
    }

    pub fn zero(domain: &VectorSpace, codomain: &VectorSpace) -> Self {
        LinearMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: Matrix::zeros(codomain.dim(), domain.dim()),
        }
    }

    pub fn domain(&self) -> &VectorSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &VectorSpace {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && self.matrix.is_identity()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// `g ∘ f`.
pub fn compose<T: Scalar>(g: &LinearMap<T>, f: &LinearMap<T>) -> Result<LinearMap<T>> {
    if f.codomain != g.domain {
        return Err(Error::Composition(format!(
            "codomain {} does not match domain {}",
            f.codomain, g.domain
        )));
    }
    Ok(LinearMap {
        domain: f.domain.clone(),
        codomain: g.codomain.clone(),
        matrix: g.matrix.mul(&f.matrix)?,
    })
}

pub fn apply<T: Scalar>(f: &LinearMap<T>, v: &Vector<T>) -> Result<Vector<T>> {
    if v.space != f.domain {
        return Err(Error::Space(format!(
            "vector in {} given to a map on {}",
            v.space, f.domain
        )));
    }
    Ok(Vector {
        space: f.codomain.clone(),
        coords: f.matrix.mul_vec(&v.coords)?,
    })
}

/// The span of a list of generators inside an ambient space.
#[derive(Debug, Clone)]
pub struct Subspace<T: Scalar = Rational> {
    ambient: VectorSpace,
    generators: Vec<Vector<T>>,
    /// Indices into `generators` of an independent spanning subset, chosen
    /// greedily in generator order.
    basis_indices: Vec<usize>,
    echelon: Echelon<T>,
}

pub fn span<T: Scalar>(ambient: &VectorSpace, generators: Vec<Vector<T>>) -> Result<Subspace<T>> {
    let mut echelon = Echelon::new(ambient.dim());
    let mut basis_indices = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        if g.space() != ambient {
            return Err(Error::Space(format!(
                "generator {i} lives in {}, not {ambient}",
                g.space()
            )));
        }
        if echelon.insert(g.coords().to_vec()) {
            basis_indices.push(i);
        }
    }
    Ok(Subspace {
        ambient: ambient.clone(),
        generators,
        basis_indices,
        echelon,
    })
}

impl<T: Scalar> Subspace<T> {
    pub fn ambient(&self) -> &VectorSpace {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vector<T>] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.basis_indices.len()
    }

    pub fn reduced_basis(&self) -> Vec<&Vector<T>> {
        self.basis_indices.iter().map(|&i| &self.generators[i]).collect()
    }

    pub fn basis_indices(&self) -> &[usize] {
        &self.basis_indices
    }

    pub fn contains(&self, v: &Vector<T>) -> bool {
        v.space() == &self.ambient
            && self
                .echelon
                .reduce(v.coords().to_vec())
                .iter()
                .all(negligible)
    }

    /// Coordinates of `v` with respect to [`Subspace::reduced_basis`], or
    /// `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &Vector<T>) -> Option<Vec<T>> {
        if !self.contains(v) {
            return None;
        }
        let basis = self.reduced_basis();
        let n = basis.len();
        let dim = self.ambient.dim();
        // Augmented system [B | v] reduced by Gauss-Jordan; B has full column rank.
        let mut rows: Vec<Vec<T>> = (0..dim)
            .map(|r| {
                let mut row: Vec<T> = basis.iter().map(|b| b.coords()[r].clone()).collect();
                row.push(v.coords()[r].clone());
                row
            })
            .collect();
        let mut pivot_row = 0;
        for col in 0..n {
            let found = (pivot_row..dim).find(|&r| !negligible(&rows[r][col]))?;
            rows.swap(pivot_row, found);
            let lead = rows[pivot_row][col].clone();
            for x in rows[pivot_row].iter_mut() {
                *x = x.clone() / lead.clone();
            }
            for r in 0..dim {
                if r != pivot_row && !rows[r][col].is_zero() {
                    let factor = rows[r][col].clone();
                    let pivot = rows[pivot_row].clone();
                    for (x, p) in rows[r].iter_mut().zip(pivot) {
                        *x = x.clone() - factor.clone() * p;
                    }
                }
            }
            pivot_row += 1;
        }
        Some((0..n).map(|i| rows[i][n].clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn q(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    fn plane() -> VectorSpace {
        VectorSpace::new(["x", "y"]).unwrap()
    }

    #[test]
    fn compose_hand_example() {
        let v = plane();
        let g = LinearMap::new(v.clone(), v.clone(), q(&[&[1, 1], &[0, 1]])).unwrap();
        let f = LinearMap::new(v.clone(), v.clone(), q(&[&[1, 0], &[1, 1]])).unwrap();
        assert_eq!(compose(&g, &f).unwrap().matrix(), &q(&[&[2, 1], &[1, 1]]));
    }

    #[test]
    fn compose_identity_and_zero() {
        let v = plane();
        let f = LinearMap::new(v.clone(), v.clone(), q(&[&[3, -1], &[2, 5]])).unwrap();
        assert_eq!(compose(&LinearMap::identity(&v), &f).unwrap(), f);
        let zero = LinearMap::zero(&v, &v);
        assert_eq!(compose(&f, &zero).unwrap(), zero);
    }

    #[test]
    fn compose_rejects_mismatch() {
        let f = LinearMap::<Rational>::identity(&plane());
        let g = LinearMap::identity(&VectorSpace::standard(3));
        assert!(matches!(compose(&g, &f), Err(Error::Composition(_))));
    }

    #[test]
    fn apply_hand_example() {
        let v = plane();
        let f = LinearMap::new(v.clone(), v.clone(), q(&[&[1, 1], &[0, 1]])).unwrap();
        let x = v.vector(vec![int(1), int(2)]).unwrap();
        assert_eq!(apply(&f, &x).unwrap().coords(), &[int(3), int(2)]);
        assert!(apply(&f, &v.zero()).unwrap().is_zero());
        assert_eq!(apply(&LinearMap::identity(&v), &x).unwrap(), x);
    }

    #[test]
    fn apply_rejects_wrong_space() {
        let f = LinearMap::<Rational>::identity(&plane());
        let x = VectorSpace::standard(2).zero();
        assert!(matches!(apply(&f, &x), Err(Error::Space(_))));
    }

    #[test]
    fn span_ranks() {
        let r3 = VectorSpace::standard(3);
        assert_eq!(span::<Rational>(&r3, vec![]).unwrap().rank(), 0);
        let basis = (0..3).map(|i| r3.basis_vector(i)).collect();
        assert_eq!(span::<Rational>(&r3, basis).unwrap().rank(), 3);

        let a = r3.vector(vec![int(1), int(2), int(3)]).unwrap();
        let b = a.scale(&int(-2));
        let c = r3.vector(vec![int(0), int(1), int(0)]).unwrap();
        let s = span(&r3, vec![a.clone(), b, c.clone()]).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.basis_indices(), &[0, 2]);
        let combo = a.scale(&int(2)).add(&c.scale(&int(-3))).unwrap();
        assert!(s.contains(&combo));
        assert_eq!(s.coordinates(&combo).unwrap(), vec![int(2), int(-3)]);
        assert!(!s.contains(&r3.basis_vector(2)));
    }

    #[test]
    fn span_rejects_foreign_generator() {
        let r3 = VectorSpace::standard(3);
        let stray = plane().basis_vector::<Rational>(0);
        assert!(matches!(span(&r3, vec![stray]), Err(Error::Space(_))));
    }

    #[test]
    fn distances() {
        let v = plane();
        let o = v.zero::<Rational>();
        let p = v.vector(vec![int(3), int(4)]).unwrap();
        assert_eq!(pseudo_distance(&o, &p).unwrap(), 5.0);
        assert_eq!(pseudo_distance(&p, &p).unwrap(), 0.0);
        let manhattan = v.clone().with_metric(Metric::Manhattan);
        let p1 = manhattan.vector(vec![int(3), int(-4)]).unwrap();
        assert_eq!(pseudo_distance(&manhattan.zero(), &p1).unwrap(), 7.0);
        let cheb = v.with_metric(Metric::Chebyshev);
        let p2 = cheb.vector(vec![int(3), int(-4)]).unwrap();
        assert_eq!(pseudo_distance(&cheb.zero(), &p2).unwrap(), 4.0);
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(VectorSpace::new(["a", "a"]).is_err());
        assert_eq!(VectorSpace::new(Vec::<String>::new()).unwrap().dim(), 0);
    }

    #[test]
    fn float_rank_ignores_roundoff() {
        let m = Matrix::from_rows(vec![vec![0.1, 0.2], vec![0.3, 0.6000000000000001]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(vec![vec![int(2), int(1)], vec![int(1), int(1)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let singular = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        assert!(singular.inverse().is_none());
    }
}
