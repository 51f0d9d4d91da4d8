//! n-ary pre-Lie structures induced from a binary Hom-pre-Lie superalgebra
//! by an even super-skew `(n-2)`-linear form `Φ`.

use num_traits::{One, Zero};

use crate::algebra::{all, parity_of, HomPreLieSuper, NHomPreLieSuper, Twisted};
use crate::error::{Error, Result};
use crate::graded::{sign_of, GradedSpace, Parity, Scalar};
use crate::linear::Vector;
use crate::multilinear::{enumerate_tuples, MultiLinearMap};
use crate::report::{scan, ResidualReport};
use crate::representations::{check_hom_pre_lie_representation, HomPreLieRep, PreLieRep, Transcription};

/// Scalar-valued form stored as a map into the one-dimensional even space,
/// super-skew in all slots. Evenness of the storage makes `Φ` vanish on odd
/// tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiForm {
    form: MultiLinearMap,
}

impl PhiForm {
    pub fn new(form: MultiLinearMap) -> Result<Self> {
        if form.output() != &GradedSpace::ground() {
            return Err(Error::shape("a form takes values in the ground field"));
        }
        if form.inputs().windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::shape("all arguments of a form live in the same space"));
        }
        let k = form.arity();
        let form = if form.skew() == k {
            form
        } else if k == 1 {
            form.with_skew(1)?
        } else {
            return Err(Error::shape("a form must be super-skew in all arguments"));
        };
        Ok(PhiForm { form })
    }

    pub fn from_entries(space: &GradedSpace, arity: usize, entries: Vec<(Vec<usize>, Scalar)>) -> Result<Self> {
        let form = MultiLinearMap::from_entries(
            vec![space.clone(); arity],
            GradedSpace::ground(),
            arity,
            entries.into_iter().map(|(t, c)| (t, vec![(0, c)])),
        )?;
        PhiForm::new(form)
    }

    pub fn form(&self) -> &MultiLinearMap {
        &self.form
    }

    pub fn arity(&self) -> usize {
        self.form.arity()
    }

    /// Arity of the induced product.
    pub fn n(&self) -> usize {
        self.arity() + 2
    }

    pub fn space(&self) -> &GradedSpace {
        self.form.input(0)
    }

    pub fn value(&self, t: &[usize]) -> Scalar {
        self.form.value(t).first().map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
    }

    fn eval(&self, args: &[&[(usize, Scalar)]]) -> Scalar {
        self.form.eval(args).0[0].clone()
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        PhiForm {
            form: self.form.scaled(c),
        }
    }

    /// `Φ` on `A ⊕ V`, vanishing as soon as one argument lies in `V`.
    pub fn extended_by_zero(&self, module: &GradedSpace) -> Result<Self> {
        let s = self.space().direct_sum(module);
        let d = self.space().dim();
        let k = self.arity();
        let form = MultiLinearMap::from_fn(vec![s; k], GradedSpace::ground(), k, |t| {
            if t.iter().all(|&i| i < d) {
                self.form.value_vector(t)
            } else {
                Vector::zeros(1)
            }
        })?;
        PhiForm::new(form)
    }
}

fn check_space(phi: &PhiForm, space: &GradedSpace) -> Result<()> {
    if phi.space() != space {
        return Err(Error::shape("form and algebra live on different spaces"));
    }
    Ok(())
}

/// `Σ_k (-1)^{k+1} (-1)^{|x_k||x_>k|} Φ(x_1..x̂_k..x_{n-1}) f(x_k)` over the
/// first `n-1` entries of `x` (one-based `k`).
fn trace_sum(phi: &PhiForm, space: &GradedSpace, x: &[usize], dim: usize, f: impl Fn(usize) -> Vector) -> Vector {
    let mut out = Vector::zeros(dim);
    let mut rest = Vec::with_capacity(x.len());
    for k in 0..x.len() {
        rest.clear();
        rest.extend(x.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v));
        let c = phi.value(&rest);
        if c.is_zero() {
            continue;
        }
        let e = Parity::from(k) + space.parity(x[k]) * parity_of(space, &x[k + 1..]);
        out.add_scaled(&f(x[k]), &(c * sign_of(e)));
    }
    out
}

/// Ids `phi_closure` (`Φ(y∘z, x_1, …, x_{n-3}) = 0`; other insertion
/// positions differ by a sign under super-skew storage), `phi_alpha`
/// (`Φ(αx_1, x_2, …) = Φ(x)`), `phi_wedge` (the `Φ∧δΦ_X(Y)` sum, with `X`
/// of length `n-3` and `Y` of length `n-1`).
pub fn check_phi_conditions(phi: &PhiForm, alg: &HomPreLieSuper) -> Result<ResidualReport> {
    let a = alg.space();
    check_space(phi, a)?;
    let m = phi.arity();
    let circ = alg.circ();
    let alpha = alg.alpha();
    let closure = scan("phi_closure", enumerate_tuples(&[all(a, 2), all(a, m - 1)]), |t| {
        let mut args: Vec<&[(usize, Scalar)]> = vec![circ.value(&t[..2])];
        let units: Vec<Vec<(usize, Scalar)>> = t[2..].iter().map(|&i| vec![(i, Scalar::one())]).collect();
        args.extend(units.iter().map(|u| u.as_slice()));
        Vector(vec![phi.eval(&args)])
    });
    let alpha_rep = scan("phi_alpha", enumerate_tuples(&[all(a, m)]), |t| {
        let mut args: Vec<&[(usize, Scalar)]> = vec![alpha.col(t[0])];
        let units: Vec<Vec<(usize, Scalar)>> = t[1..].iter().map(|&i| vec![(i, Scalar::one())]).collect();
        args.extend(units.iter().map(|u| u.as_slice()));
        Vector(vec![phi.eval(&args) - phi.value(t)])
    });
    let wedge = scan("phi_wedge", enumerate_tuples(&[all(a, m - 1), all(a, m + 1)]), |t| {
        let (x, y) = t.split_at(m - 1);
        trace_sum(phi, a, y, 1, |yk| {
            let mut xy = x.to_vec();
            xy.push(yk);
            Vector(vec![phi.value(&xy)])
        })
    });
    Ok(closure.merged(alpha_rep).merged(wedge))
}

/// A construction together with the report of the hypotheses it was given.
#[derive(Clone, Debug)]
pub struct Induced<T> {
    pub value: T,
    pub conditions: ResidualReport,
}

/// `{x_1, …, x_n}_Φ = Σ_k (-1)^{k+1} (-1)^{|x_k||x_>k|} Φ(x_1..x̂_k..x_{n-1}) (x_k∘x_n)`,
/// sum over `k < n`. Built whether or not the conditions hold.
pub fn induce_nary_product(phi: &PhiForm, alg: &HomPreLieSuper) -> Result<Induced<NHomPreLieSuper>> {
    let conditions = check_phi_conditions(phi, alg)?;
    let a = alg.space().clone();
    let n = phi.n();
    let circ = alg.circ();
    let brace = MultiLinearMap::from_fn(vec![a.clone(); n], a.clone(), n - 1, |t| {
        trace_sum(phi, &a, &t[..n - 1], a.dim(), |xk| circ.value_vector(&[xk, t[n - 1]]))
    })?;
    Ok(Induced {
        value: NHomPreLieSuper::new(brace, alg.alpha().clone())?,
        conditions,
    })
}

/// `l_Φ(x̄) = Σ_k (-1)^{k+1} (-1)^{|x_k||x_>k|} Φ(x̂_k) l(x_k)` and
/// `r_Φ(x_1, …, x_{n-1}) = Φ(x_1, …, x_{n-2}) r(x_{n-1})`. The report covers
/// the binary representation axioms (prefixed `binary.`) and the form's
/// conditions.
pub fn induce_representation(phi: &PhiForm, rep: &HomPreLieRep) -> Result<Induced<PreLieRep>> {
    let axioms = check_hom_pre_lie_representation(rep, Transcription::Corrected).prefixed("binary");
    let induced = induce_nary_product(phi, rep.algebra())?;
    let a = rep.algebra().space().clone();
    let v = rep.module().clone();
    let n = phi.n();
    let mut inputs = vec![a.clone(); n - 1];
    inputs.push(v.clone());
    let (l, r) = (rep.l(), rep.r());
    let l_phi = MultiLinearMap::from_fn(inputs.clone(), v.clone(), n - 1, |t| {
        let u = t[n - 1];
        trace_sum(phi, &a, &t[..n - 1], v.dim(), |xk| l.value_vector(&[xk, u]))
    })?;
    let r_phi = MultiLinearMap::from_fn(inputs, v.clone(), n - 2, |t| {
        let c = phi.value(&t[..n - 2]);
        if c.is_zero() {
            Vector::zeros(v.dim())
        } else {
            r.value_vector(&t[n - 2..]).scaled(&c)
        }
    })?;
    Ok(Induced {
        value: PreLieRep::new(induced.value, l_phi, r_phi, rep.alpha_v().clone())?,
        conditions: axioms.merged(induced.conditions),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graded::scalar;

    #[test]
    fn odd_square_pipeline_coefficient() {
        let alg = catalog::odd_square_example().unwrap();
        let phi = PhiForm::from_entries(alg.space(), 2, vec![(vec![1, 1], scalar(1))]).unwrap();
        let ind = induce_nary_product(&phi, &alg).unwrap();
        assert_eq!(ind.value.brace().value(&[1, 1, 1, 1]), &vec![(0, scalar(3))]);
        assert!(ind.conditions.holds_for("phi_closure"));
        assert!(ind.conditions.holds_for("phi_alpha"));
        let w: Vec<_> = ind.conditions.violations_for("phi_wedge").collect();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].tuple, vec![1, 1, 1, 1]);
        assert_eq!(w[0].residual, vec![(0, scalar(3))]);
    }

    #[test]
    fn odd_tuples_are_rejected() {
        let s = GradedSpace::from_bits(&[0, 1]).unwrap();
        assert!(PhiForm::from_entries(&s, 2, vec![(vec![0, 1], scalar(1))]).is_err());
    }
}
