//! Dense vectors and even linear maps over exact rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Scalar};

/// Sparse coefficient list, sorted by basis index, no stored zeros.
pub type Sparse = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn zeros(dim: usize) -> Vector {
        Vector(vec![Scalar::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Vector {
        let mut v = Vector::zeros(dim);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_sparse(dim: usize, s: &[(usize, Scalar)]) -> Vector {
        let mut v = Vector::zeros(dim);
        for (i, c) in s {
            v.0[*i] += c;
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_sparse(&self) -> Sparse {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Vector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    /// `self += c * s` for a sparse `s`.
    pub fn add_sparse(&mut self, s: &[(usize, Scalar)], c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, b) in s {
            self.0[*i] += b * c;
        }
    }

    pub fn scaled(mut self, c: &Scalar) -> Vector {
        for a in &mut self.0 {
            *a *= c;
        }
        self
    }
}

impl std::ops::AddAssign<&Vector> for Vector {
    fn add_assign(&mut self, rhs: &Vector) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl std::ops::SubAssign<&Vector> for Vector {
    fn sub_assign(&mut self, rhs: &Vector) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

/// Even linear map, stored as the sparse images of the domain basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    domain: GradedSpace,
    codomain: GradedSpace,
    cols: Vec<Sparse>,
}

impl LinearMap {
    /// Checks dimensions and evenness (`coeff[i][j] = 0` unless parities match).
    pub fn new(domain: GradedSpace, codomain: GradedSpace, cols: Vec<Sparse>) -> Result<Self> {
        if cols.len() != domain.dim() {
            return Err(Error::shape(format!(
                "linear map has {} columns, domain dimension is {}",
                cols.len(),
                domain.dim()
            )));
        }
        let mut clean = Vec::with_capacity(cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            let mut v = Vector::zeros(codomain.dim());
            for (i, c) in &col {
                codomain.check_index(*i)?;
                v.0[*i] += c;
            }
            let col = v.to_sparse();
            for (i, _) in &col {
                if codomain.parity(*i) != domain.parity(j) {
                    return Err(Error::Parity {
                        context: format!("linear map column {}", j + 1),
                        detail: format!("nonzero coefficient at row {} mixes parities", i + 1),
                    });
                }
            }
            clean.push(col);
        }
        Ok(LinearMap {
            domain,
            codomain,
            cols: clean,
        })
    }

    pub fn from_fn(
        domain: GradedSpace,
        codomain: GradedSpace,
        f: impl Fn(usize) -> Vector,
    ) -> Result<Self> {
        let cols = (0..domain.dim()).map(|j| f(j).to_sparse()).collect();
        LinearMap::new(domain, codomain, cols)
    }

    /// Row-major dense matrix, `rows[i][j]` = coefficient of `e_i` in the image of `e_j`.
    pub fn from_rows(
        domain: GradedSpace,
        codomain: GradedSpace,
        rows: &[Vec<Scalar>],
    ) -> Result<Self> {
        if rows.len() != codomain.dim() || rows.iter().any(|r| r.len() != domain.dim()) {
            return Err(Error::shape("matrix does not match the declared dimensions"));
        }
        LinearMap::from_fn(domain, codomain.clone(), |j| {
            Vector(rows.iter().map(|r| r[j].clone()).collect())
        })
    }

    pub fn identity(space: &GradedSpace) -> Self {
        LinearMap {
            domain: space.clone(),
            codomain: space.clone(),
            cols: (0..space.dim()).map(|j| vec![(j, Scalar::one())]).collect(),
        }
    }

    pub fn zero(domain: &GradedSpace, codomain: &GradedSpace) -> Self {
        LinearMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            cols: vec![Vec::new(); domain.dim()],
        }
    }

    pub fn domain(&self) -> &GradedSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &GradedSpace {
        &self.codomain
    }

    pub fn is_square(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn col(&self, j: usize) -> &Sparse {
        &self.cols[j]
    }

    pub fn cols(&self) -> &[Sparse] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.cols[j]
            .iter()
            .find(|(k, _)| *k == i)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zeros(self.codomain.dim());
        for (j, c) in v.0.iter().enumerate() {
            out.add_sparse(&self.cols[j], c);
        }
        out
    }

    pub fn apply_sparse(&self, v: &[(usize, Scalar)]) -> Vector {
        let mut out = Vector::zeros(self.codomain.dim());
        for (j, c) in v {
            out.add_sparse(&self.cols[*j], c);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if other.codomain != self.domain {
            return Err(Error::shape("composition of maps with mismatched spaces"));
        }
        let cols = other
            .cols
            .iter()
            .map(|c| self.apply_sparse(c).to_sparse())
            .collect();
        Ok(LinearMap {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            cols,
        })
    }

    pub fn pow(&self, k: u32) -> Result<LinearMap> {
        if !self.is_square() {
            return Err(Error::shape("power of a non-square map"));
        }
        let mut acc = LinearMap::identity(&self.domain);
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    fn dense_rows(&self) -> Vec<Vec<Scalar>> {
        let mut rows = vec![vec![Scalar::zero(); self.domain.dim()]; self.codomain.dim()];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                rows[*i][j] = c.clone();
            }
        }
        rows
    }

    pub fn rank(&self) -> usize {
        let mut m = self.dense_rows();
        let (rows, cols) = (m.len(), self.domain.dim());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][c].clone();
            for r in 0..rows {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] / &pivot;
                    for k in c..cols {
                        let d = &m[rank][k] * &f;
                        m[r][k] -= d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Exact Gauss-Jordan inverse. `name` labels the error.
    pub fn inverse(&self, name: &str) -> Result<LinearMap> {
        let singular = || Error::Singular {
            name: name.to_string(),
        };
        if !self.is_square() {
            return Err(singular());
        }
        let n = self.domain.dim();
        let mut a = self.dense_rows();
        let mut inv: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                    .collect()
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or_else(singular)?;
            a.swap(c, p);
            inv.swap(c, p);
            let pivot = a[c][c].clone();
            for k in 0..n {
                a[c][k] /= &pivot;
                inv[c][k] /= &pivot;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in 0..n {
                        let d = &a[c][k] * &f;
                        a[r][k] -= d;
                        let e = &inv[c][k] * &f;
                        inv[r][k] -= e;
                    }
                }
            }
        }
        LinearMap::from_rows(self.codomain.clone(), self.domain.clone(), &inv)
    }

    /// Matrix transpose, read as a map between dual spaces on the dual bases.
    /// Dual spaces carry the same parities.
    pub fn transpose(&self) -> LinearMap {
        let mut cols = vec![Vec::new(); self.codomain.dim()];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                cols[*i].push((j, c.clone()));
            }
        }
        LinearMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            cols,
        }
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &LinearMap) -> LinearMap {
        let (dd, cd) = (self.domain.dim(), self.codomain.dim());
        let mut cols = self.cols.clone();
        cols.extend(
            other
                .cols
                .iter()
                .map(|c| c.iter().map(|(i, x)| (i + cd, x.clone())).collect()),
        );
        debug_assert_eq!(cols.len(), dd + other.domain.dim());
        LinearMap {
            domain: self.domain.direct_sum(&other.domain),
            codomain: self.codomain.direct_sum(&other.codomain),
            cols,
        }
    }

    /// Kronecker product on the basis `(a, b) ↦ a * dim + b`. Both maps are
    /// even, so no Koszul sign arises.
    pub fn tensor(&self, other: &LinearMap) -> LinearMap {
        let od = other.codomain.dim();
        let mut cols = Vec::with_capacity(self.domain.dim() * other.domain.dim());
        for ca in &self.cols {
            for cb in &other.cols {
                let mut col: Sparse = Vec::new();
                for (i, x) in ca {
                    for (k, y) in cb {
                        col.push((i * od + k, x * y));
                    }
                }
                col.sort_by_key(|(i, _)| *i);
                cols.push(col);
            }
        }
        LinearMap {
            domain: self.domain.tensor(&other.domain),
            codomain: self.codomain.tensor(&other.codomain),
            cols,
        }
    }

    pub fn linear_combination(&self, a: &Scalar, other: &LinearMap, b: &Scalar) -> Result<LinearMap> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::shape("sum of maps with mismatched spaces"));
        }
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(x, y)| {
                let mut v = Vector::zeros(self.codomain.dim());
                v.add_sparse(x, a);
                v.add_sparse(y, b);
                v.to_sparse()
            })
            .collect();
        Ok(LinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            cols,
        })
    }

    /// True iff `self ∘ other = other ∘ self`.
    pub fn commutes_with(&self, other: &LinearMap) -> Result<bool> {
        Ok(self.compose(other)? == other.compose(self)?)
    }
}
