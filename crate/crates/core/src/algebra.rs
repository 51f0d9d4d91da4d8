//! n-Hom-Lie, n-Hom-pre-Lie and binary Hom-pre-Lie superalgebras held as
//! structure constants, with residual checkers for their axioms.
//!
//! All sign exponents below are written with zero-based slot indices; a
//! one-based `(-1)^{n-i}` becomes `(-1)^{n-1-i}`.

use crate::error::{Error, Result};
use crate::graded::{signed, GradedSpace, Parity};
use crate::linear::{LinearMap, Sparse, Vector};
use crate::multilinear::{enumerate_tuples, MultiLinearMap, Segment};
use crate::report::{scan, ResidualReport};

/// Loop strategy for identities that are super-skew-equivariant in a block
/// of arguments.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum LoopMode {
    /// Restrict skew blocks to canonical (sorted) representatives.
    #[default]
    Canonical,
    /// Enumerate every tuple.
    Full,
}

/// Anything with a product on a single space and a twist map.
pub trait Twisted {
    fn product(&self) -> &MultiLinearMap;
    fn alpha(&self) -> &LinearMap;
    fn space(&self) -> &GradedSpace {
        self.product().output()
    }
    fn arity(&self) -> usize {
        self.product().arity()
    }
}

fn check_bundle(product: &MultiLinearMap, alpha: &LinearMap, min_arity: usize) -> Result<()> {
    let space = product.output();
    if product.arity() < min_arity {
        return Err(Error::shape(format!(
            "arity {} is below the minimum {min_arity}",
            product.arity()
        )));
    }
    if product.inputs().iter().any(|s| s != space) {
        return Err(Error::shape("product inputs and output must be the same space"));
    }
    if alpha.domain() != space || alpha.codomain() != space {
        return Err(Error::shape("twist map must be an endomorphism of the algebra"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NHomLieSuper {
    bracket: MultiLinearMap,
    alpha: LinearMap,
}

impl NHomLieSuper {
    /// The bracket must be declared super-skew in all slots.
    pub fn new(bracket: MultiLinearMap, alpha: LinearMap) -> Result<Self> {
        check_bundle(&bracket, &alpha, 2)?;
        if bracket.skew() != bracket.arity() {
            return Err(Error::shape("an n-Hom-Lie bracket is super-skew in every slot"));
        }
        Ok(NHomLieSuper { bracket, alpha })
    }

    pub fn bracket(&self) -> &MultiLinearMap {
        &self.bracket
    }

    pub fn n(&self) -> usize {
        self.bracket.arity()
    }

    pub fn with_alpha(&self, alpha: LinearMap) -> Result<Self> {
        NHomLieSuper::new(self.bracket.clone(), alpha)
    }
}

impl Twisted for NHomLieSuper {
    fn product(&self) -> &MultiLinearMap {
        &self.bracket
    }
    fn alpha(&self) -> &LinearMap {
        &self.alpha
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NHomPreLieSuper {
    brace: MultiLinearMap,
    alpha: LinearMap,
}

impl NHomPreLieSuper {
    /// The brace must be declared super-skew in its first `n - 1` slots.
    pub fn new(brace: MultiLinearMap, alpha: LinearMap) -> Result<Self> {
        check_bundle(&brace, &alpha, 2)?;
        if brace.skew() != brace.arity() - 1 {
            return Err(Error::shape(
                "an n-Hom-pre-Lie product is super-skew in exactly its first n-1 slots",
            ));
        }
        Ok(NHomPreLieSuper { brace, alpha })
    }

    pub fn brace(&self) -> &MultiLinearMap {
        &self.brace
    }

    pub fn n(&self) -> usize {
        self.brace.arity()
    }
}

impl Twisted for NHomPreLieSuper {
    fn product(&self) -> &MultiLinearMap {
        &self.brace
    }
    fn alpha(&self) -> &LinearMap {
        &self.alpha
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPreLieSuper {
    circ: MultiLinearMap,
    alpha: LinearMap,
}

impl HomPreLieSuper {
    pub fn new(circ: MultiLinearMap, alpha: LinearMap) -> Result<Self> {
        check_bundle(&circ, &alpha, 2)?;
        if circ.arity() != 2 {
            return Err(Error::shape("a Hom-pre-Lie product is binary"));
        }
        let circ = if circ.skew() == 0 { circ } else { circ.with_skew(0)? };
        Ok(HomPreLieSuper { circ, alpha })
    }

    pub fn circ(&self) -> &MultiLinearMap {
        &self.circ
    }

    /// The same data read as a 2-Hom-pre-Lie superalgebra.
    pub fn to_n_ary(&self) -> NHomPreLieSuper {
        let brace = self.circ.with_skew(1).expect("one-slot skew block is vacuous");
        NHomPreLieSuper {
            brace,
            alpha: self.alpha.clone(),
        }
    }
}

impl Twisted for HomPreLieSuper {
    fn product(&self) -> &MultiLinearMap {
        &self.circ
    }
    fn alpha(&self) -> &LinearMap {
        &self.alpha
    }
}

pub(crate) fn parity_of(space: &GradedSpace, t: &[usize]) -> Parity {
    Parity::sum(t.iter().map(|&i| space.parity(i)))
}

/// `Segment` for a skew block, falling back to all tuples for raw tables.
pub(crate) fn block<'a>(space: &'a GradedSpace, len: usize, mode: LoopMode, raw: bool) -> Segment<'a> {
    if mode == LoopMode::Canonical && !raw {
        Segment::Canonical { space, len }
    } else {
        Segment::All {
            dim: space.dim(),
            len,
        }
    }
}

pub(crate) fn all(space: &GradedSpace, len: usize) -> Segment<'_> {
    Segment::All {
        dim: space.dim(),
        len,
    }
}

/// `value(t) + (-1)^{|t_a||t_{a+1}|} value(swap)` over adjacent pairs in the
/// declared skew block. Canonically stored products pass by construction.
pub fn check_super_skew(product: &MultiLinearMap) -> ResidualReport {
    let violations = product
        .symmetry_residuals()
        .into_iter()
        .map(|(tuple, r)| crate::report::Violation {
            identity: "super_skew".into(),
            tuple,
            residual: r.to_sparse(),
        })
        .collect();
    ResidualReport::from_violations("super_skew", violations)
}

/// `α(prod(t)) − prod(α t_1, …, α t_n)` over basis tuples.
pub fn check_multiplicativity<T: Twisted + ?Sized>(alg: &T) -> ResidualReport {
    let p = alg.product();
    let a = alg.alpha();
    let sp = alg.space();
    let tuples = enumerate_tuples(&[
        block(sp, p.skew(), LoopMode::Canonical, p.is_raw()),
        all(sp, p.arity() - p.skew()),
    ]);
    scan("multiplicativity", tuples, |t| {
        let mut r = a.apply_sparse(p.value(t));
        let args: Vec<&[(usize, _)]> = t.iter().map(|&i| a.col(i).as_slice()).collect();
        r -= &p.eval(&args);
        r
    })
}

/// Hom-Nambu identity with `α` in every twisted slot.
pub fn check_hom_nambu(alg: &NHomLieSuper, mode: LoopMode) -> ResidualReport {
    let family = vec![alg.alpha.clone(); alg.n() - 1];
    check_hom_nambu_with(alg, &family, mode).expect("default family has the right length")
}

/// Hom-Nambu identity for a family `(α_1, …, α_{n-1})`.
///
/// `[α_1 x_1, …, α_{n-1} x_{n-1}, [y_1, …, y_n]]
///   = Σ_i (-1)^{|X||y_1 … y_{i-1}|} [α y_1, …, [x, y_i], …, α y_n]`
/// where the twisted slots on the right receive `α_1, …, α_{n-1}` in order.
pub fn check_hom_nambu_with(alg: &NHomLieSuper, family: &[LinearMap], mode: LoopMode) -> Result<ResidualReport> {
    let n = alg.n();
    let sp = alg.space();
    if family.len() != n - 1 || family.iter().any(|m| m.domain() != sp || m.codomain() != sp) {
        return Err(Error::shape(format!("expected {} twist maps on the algebra", n - 1)));
    }
    let b = &alg.bracket;
    let raw = b.is_raw();
    let tuples = enumerate_tuples(&[block(sp, n - 1, mode, raw), block(sp, n, LoopMode::Full, raw)]);
    Ok(scan("hom_nambu", tuples, |t| {
        let (x, y) = t.split_at(n - 1);
        let px = parity_of(sp, x);
        let mut args: Vec<&[(usize, _)]> = x.iter().zip(family).map(|(&i, m)| m.col(i).as_slice()).collect();
        args.push(b.value(y));
        let mut r = b.eval(&args);
        let mut xy = x.to_vec();
        xy.push(0);
        for i in 0..n {
            xy[n - 1] = y[i];
            let inner: &Sparse = b.value(&xy);
            if inner.is_empty() {
                continue;
            }
            let mut args: Vec<&[(usize, _)]> = Vec::with_capacity(n);
            let mut twist = family.iter();
            for (j, &yj) in y.iter().enumerate() {
                if j == i {
                    args.push(inner);
                } else {
                    args.push(twist.next().expect("n-1 twisted slots").col(yj));
                }
            }
            let sign = px * parity_of(sp, &y[..i]);
            r.add_scaled(&b.eval(&args), &signed(num_traits::One::one(), Parity::ODD + sign));
        }
        r
    }))
}

/// Value of the subadjacent bracket on a basis tuple:
/// `Σ_i (-1)^{n-1-i} (-1)^{|x_i| Σ_{j>i} |x_j|} {x_1, …, x̂_i, …, x_n, x_i}`.
fn subadjacent_value(brace: &MultiLinearMap, t: &[usize]) -> Vector {
    let sp = brace.output();
    let n = t.len();
    let mut out = Vector::zeros(sp.dim());
    let mut moved = Vec::with_capacity(n);
    for i in 0..n {
        moved.clear();
        moved.extend(t.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
        moved.push(t[i]);
        let e = Parity::from(n - 1 - i) + sp.parity(t[i]) * parity_of(sp, &t[i + 1..]);
        out.add_sparse(brace.value(&moved), &signed(num_traits::One::one(), e));
    }
    out
}

/// The subadjacent n-Hom-Lie superalgebra. Fails if the resulting bracket is
/// not super-skew, which signals an inconsistent input product.
pub fn subadjacent_bracket(alg: &NHomPreLieSuper) -> Result<NHomLieSuper> {
    let sp = alg.space().clone();
    let n = alg.n();
    let bracket = MultiLinearMap::from_fn(vec![sp.clone(); n], sp, n, |t| subadjacent_value(&alg.brace, t))?;
    NHomLieSuper::new(bracket, alg.alpha.clone())
}

/// Subadjacent table without the symmetry check, for use inside checkers.
pub(crate) fn subadjacent_table(brace: &MultiLinearMap) -> MultiLinearMap {
    let sp = brace.output().clone();
    crate::multilinear::tabulate(vec![sp.clone(); brace.arity()], sp, |t| subadjacent_value(brace, t))
}

/// Both n-Hom-pre-Lie identities, under ids `preLie1` and `preLie2`.
pub fn check_n_hom_pre_lie(alg: &NHomPreLieSuper, mode: LoopMode) -> ResidualReport {
    let n = alg.n();
    let sp = alg.space();
    let b = &alg.brace;
    let a = &alg.alpha;
    let c = subadjacent_table(b);
    let raw = b.is_raw();
    let one: crate::graded::Scalar = num_traits::One::one();

    // {αx_1..αx_{n-1}, {y}} = Σ_{i<n-1} (-1)^{|y_<i||X|} {αy.., [x, y_i]^C, ..αy}
    //                         + (-1)^{|y_<n-1||X|} {αy_1..αy_{n-1}, {x, y_n}}
    let t1 = enumerate_tuples(&[block(sp, n - 1, mode, raw), all(sp, n)]);
    let r1 = scan("preLie1", t1, |t| {
        let (x, y) = t.split_at(n - 1);
        let px = parity_of(sp, x);
        let mut args: Vec<&[(usize, _)]> = x.iter().map(|&i| a.col(i).as_slice()).collect();
        args.push(b.value(y));
        let mut r = b.eval(&args);
        let mut xy = x.to_vec();
        xy.push(0);
        for i in 0..n {
            xy[n - 1] = y[i];
            let inner = if i < n - 1 { c.value(&xy) } else { b.value(&xy) };
            if inner.is_empty() {
                continue;
            }
            let args: Vec<&[(usize, _)]> = y
                .iter()
                .enumerate()
                .map(|(j, &yj)| if j == i { inner.as_slice() } else { a.col(yj).as_slice() })
                .collect();
            let sign = px * parity_of(sp, &y[..i]);
            r.add_scaled(&b.eval(&args), &signed(one.clone(), Parity::ODD + sign));
        }
        r
    });

    // {[x]^C, αy_1..αy_{n-1}} = Σ_i (-1)^{n-1-i}(-1)^{|x_i||x_>i|} {αx_1..x̂_i..αx_n, {x_i, y}}
    let t2 = enumerate_tuples(&[all(sp, n), all(sp, n - 1)]);
    let r2 = scan("preLie2", t2, |t| {
        let (x, y) = t.split_at(n);
        let mut args: Vec<&[(usize, _)]> = vec![c.value(x)];
        args.extend(y.iter().map(|&i| a.col(i).as_slice()));
        let mut r = b.eval(&args);
        let mut xiy = vec![0; n];
        xiy[1..].copy_from_slice(y);
        for i in 0..n {
            xiy[0] = x[i];
            let inner = b.value(&xiy);
            if inner.is_empty() {
                continue;
            }
            let mut args: Vec<&[(usize, _)]> = x
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &xj)| a.col(xj).as_slice())
                .collect();
            args.push(inner);
            let e = Parity::from(n - 1 - i) + sp.parity(x[i]) * parity_of(sp, &x[i + 1..]);
            r.add_scaled(&b.eval(&args), &signed(one.clone(), Parity::ODD + e));
        }
        r
    });
    r1.merged(r2)
}

/// `ass(x,y,z) − (-1)^{|x||y|} ass(y,x,z)` with
/// `ass(x,y,z) = α(x)∘(y∘z) − (x∘y)∘α(z)`.
pub fn check_hom_pre_lie(alg: &HomPreLieSuper) -> ResidualReport {
    let sp = alg.space();
    let m = &alg.circ;
    let a = &alg.alpha;
    let ass = |x: usize, y: usize, z: usize| {
        let mut v = m.eval(&[a.col(x), m.value(&[y, z])]);
        v -= &m.eval(&[m.value(&[x, y]), a.col(z)]);
        v
    };
    scan("hom_pre_lie", enumerate_tuples(&[all(sp, 3)]), |t| {
        let mut r = ass(t[0], t[1], t[2]);
        let s = sp.parity(t[0]) * sp.parity(t[1]);
        r.add_scaled(&ass(t[1], t[0], t[2]), &signed(num_traits::One::one(), Parity::ODD + s));
        r
    })
}

/// Left multiplication `L(x_1..x_{n-1}) x_n = {x_1, …, x_n}` as an action
/// tensor with the algebra as module.
pub fn left_mult(alg: &NHomPreLieSuper) -> MultiLinearMap {
    alg.brace.clone()
}

/// Right multiplication `R(x_1..x_{n-1}) y = (-1)^{|y||X|} {y, x_1, …, x_{n-1}}`.
///
/// The Koszul factor accounts for `y` crossing `x_1 … x_{n-1}`. It is what
/// makes `ρ̃(L, R)` the adjoint action of the subadjacent bracket and the
/// adjoint semidirect product the diagonal copy of the brace.
pub fn right_mult(alg: &NHomPreLieSuper) -> Result<MultiLinearMap> {
    let sp = alg.space().clone();
    let n = alg.n();
    let b = &alg.brace;
    MultiLinearMap::from_fn(vec![sp.clone(); n], sp.clone(), n.saturating_sub(2), |t| {
        let (x, y) = t.split_at(n - 1);
        let mut moved = vec![y[0]];
        moved.extend_from_slice(x);
        let e = sp.parity(y[0]) * parity_of(&sp, x);
        Vector::from_sparse(sp.dim(), b.value(&moved)).scaled(&signed(num_traits::One::one(), e))
    })
}
