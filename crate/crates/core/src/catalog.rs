//! Small named structures used as fixtures by tests, the CLI and docs.

use crate::algebra::{HomPreLieSuper, NHomLieSuper};
use crate::error::Result;
use crate::graded::{scalar, sign_of, GradedSpace, Scalar};
use crate::linear::{LinearMap, Vector};
use crate::multilinear::MultiLinearMap;

/// `n` even basis vectors followed by one odd one, with
/// `[e_1, …, ê_i, …, e_n, e_{n+1}] = c_i e_{n+1}`. `alternating` selects
/// `c_i = (-1)^{i+1}` and `α(e_{n+1}) = 0`; otherwise `c_i = 1` and `α = id`.
pub fn omitted_index_example(n: usize, alternating: bool) -> Result<NHomLieSuper> {
    let mut bits = vec![0u8; n];
    bits.push(1);
    let s = GradedSpace::from_bits(&bits)?;
    let entries = (0..n).map(|i| {
        let mut t: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        t.push(n);
        let c = if alternating && i % 2 == 1 { scalar(-1) } else { scalar(1) };
        (t, vec![(n, c)])
    });
    let bracket = MultiLinearMap::from_entries(vec![s.clone(); n], s.clone(), n, entries)?;
    let alpha = if alternating {
        LinearMap::from_fn(s.clone(), s.clone(), |j| {
            if j < n {
                Vector::basis(n + 1, j)
            } else {
                Vector::zeros(n + 1)
            }
        })?
    } else {
        LinearMap::identity(&s)
    };
    NHomLieSuper::new(bracket, alpha)
}

/// Two-dimensional `(e_1 even, e_2 odd)` with `e_2∘e_2 = e_1`,
/// `α(e_1) = 0`, `α(e_2) = e_2`.
pub fn odd_square_example() -> Result<HomPreLieSuper> {
    let s = GradedSpace::from_bits(&[0, 1])?;
    let circ = MultiLinearMap::from_entries(vec![s.clone(); 2], s.clone(), 0, vec![(vec![1, 1], vec![(0, scalar(1))])])?;
    let alpha = LinearMap::new(s.clone(), s.clone(), vec![vec![], vec![(1, scalar(1))]])?;
    HomPreLieSuper::new(circ, alpha)
}

/// Matrix units of `gl(1|1)` in the order `E11, E22, E12, E21`.
fn gl11() -> Result<GradedSpace> {
    GradedSpace::from_bits(&[0, 0, 1, 1])
}

const UNITS: [(usize, usize); 4] = [(0, 0), (1, 1), (0, 1), (1, 0)];

fn unit_product(a: usize, b: usize) -> Option<usize> {
    let ((i, j), (k, l)) = (UNITS[a], UNITS[b]);
    (j == k).then(|| UNITS.iter().position(|&u| u == (i, l)).expect("unit"))
}

/// `M(1|1)` with the matrix product twisted by conjugation with
/// `diag(1, d)`: `x∘y = α(xy)`, `α(E_ij) = d_i/d_j E_ij`. Hom-associative and
/// multiplicative, hence Hom-pre-Lie; `d = 1` is the plain matrix algebra.
pub fn matrix_superalgebra(d: i64) -> Result<HomPreLieSuper> {
    let s = gl11()?;
    let diag = [Scalar::from_integer(1.into()), Scalar::from_integer(d.into())];
    let alpha = LinearMap::from_fn(s.clone(), s.clone(), |j| {
        let (a, b) = UNITS[j];
        Vector::basis(4, j).scaled(&(&diag[a] / &diag[b]))
    })?;
    let circ = MultiLinearMap::from_fn(vec![s.clone(); 2], s.clone(), 0, |t| match unit_product(t[0], t[1]) {
        Some(k) => alpha.apply(&Vector::basis(4, k)),
        None => Vector::zeros(4),
    })?;
    HomPreLieSuper::new(circ, alpha)
}

/// The 3-Lie superalgebra on `gl(1|1)` built from the supercommutator and
/// the supertrace `τ`: `[x,y,z] = τ(x)[y,z] − (-1)^{|x||y|} τ(y)[x,z]
/// + (-1)^{|z|(|x|+|y|)} τ(z)[x,y]`, with `α = id`.
pub fn supertrace_3_lie() -> Result<NHomLieSuper> {
    let s = gl11()?;
    let tau = [scalar(1), scalar(-1), scalar(0), scalar(0)];
    let p = |i: usize| s.parity(i);
    let comm = |a: usize, b: usize| {
        let mut v = Vector::zeros(4);
        if let Some(k) = unit_product(a, b) {
            v.0[k] += scalar(1);
        }
        if let Some(k) = unit_product(b, a) {
            v.0[k] -= sign_of(p(a) * p(b));
        }
        v
    };
    let bracket = MultiLinearMap::from_fn(vec![s.clone(); 3], s.clone(), 3, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let mut v = comm(y, z).scaled(&tau[x]);
        v.add_scaled(&comm(x, z), &-(&tau[y] * sign_of(p(x) * p(y))));
        v.add_scaled(&comm(x, y), &(&tau[z] * sign_of(p(z) * (p(x) + p(y)))));
        v
    })?;
    NHomLieSuper::new(bracket, LinearMap::identity(&s))
}
