//! Rota–Baxter, O- and Nijenhuis operators, and the algebras they induce.

use num_traits::{One, Zero};

use crate::algebra::{all, block, parity_of, HomPreLieSuper, LoopMode, NHomLieSuper, NHomPreLieSuper, Twisted};
use crate::error::{Error, Result};
use crate::graded::{sign_of, Parity, Scalar};
use crate::linear::{LinearMap, Vector};
use crate::multilinear::{enumerate_tuples, MultiLinearMap};
use crate::report::{scan, ResidualReport};
use crate::representations::{adjoint_pre_lie, semidirect_lie, LieRep, PreLieRep};

/// `Σ_{∅≠I⊆[n]} c_I · f_I([x̂_1, …, x̂_n])` where `x̂_i = x_i` for `i ∈ I` and
/// `hat(x_i)` otherwise; `weight(|I|, v)` applies the prefactor.
fn subset_sum(
    bracket: &MultiLinearMap,
    t: &[usize],
    hat: &LinearMap,
    weight: impl Fn(usize, Vector) -> Vector,
) -> Vector {
    let n = t.len();
    let dim = bracket.output().dim();
    let plain: Vec<Vec<(usize, Scalar)>> = t.iter().map(|&i| vec![(i, Scalar::one())]).collect();
    let mut out = Vector::zeros(dim);
    for mask in 1u32..(1 << n) {
        let args: Vec<&[(usize, Scalar)]> = (0..n)
            .map(|i| if mask & (1 << i) != 0 { plain[i].as_slice() } else { hat.col(t[i]).as_slice() })
            .collect();
        let v = bracket.eval(&args);
        if !v.is_zero() {
            out += &weight(mask.count_ones() as usize, v);
        }
    }
    out
}

fn check_endo(op: &LinearMap, alg_dim: usize, name: &str) -> Result<()> {
    if !op.is_square() || op.domain().dim() != alg_dim {
        return Err(Error::shape(format!("{name} must be an endomorphism of the algebra")));
    }
    Ok(())
}

fn commutation(id: &str, a: &LinearMap, b: &LinearMap) -> ResidualReport {
    // (a∘b − b∘a) on each basis vector
    scan(id, (0..a.domain().dim()).map(|i| vec![i]).collect(), |t| {
        let mut r = a.apply_sparse(b.col(t[0]));
        r -= &b.apply_sparse(a.col(t[0]));
        r
    })
}

/// `[Rx_1, …, Rx_n] − R(Σ_I λ^{|I|-1} [R̂x_1, …, R̂x_n])` with `R̂ = α^s R`
/// off `I` (id `rota_baxter`), and `Rα − αR` (id `commutes_alpha`).
pub fn check_rota_baxter_lie(op: &LinearMap, alg: &NHomLieSuper, weight: &Scalar, s: u32, mode: LoopMode) -> Result<ResidualReport> {
    let a = alg.space();
    check_endo(op, a.dim(), "Rota–Baxter operator")?;
    if op.domain() != a {
        return Err(Error::shape("operator parities differ from the algebra's"));
    }
    let n = alg.n();
    let b = alg.bracket();
    let hat = alg.alpha().pow(s)?.compose(op)?;
    let tuples = enumerate_tuples(&[block(a, n, mode, b.is_raw())]);
    let main = scan("rota_baxter", tuples, |t| {
        let args: Vec<&[(usize, Scalar)]> = t.iter().map(|&i| op.col(i).as_slice()).collect();
        let mut r = b.eval(&args);
        let sum = subset_sum(b, t, &hat, |k, v| {
            if k == 1 {
                v
            } else {
                v.scaled(&num_traits::pow(weight.clone(), k - 1))
            }
        });
        r -= &op.apply(&sum);
        r
    });
    Ok(main.merged(commutation("commutes_alpha", op, alg.alpha())))
}

/// `[N x_1, …, N x_n] − N(Σ_I N^{|I|-1} [N̂x_1, …, N̂x_n])` (id `nijenhuis`)
/// and `Nα − αN` (id `commutes_alpha`). Without the second id the lift
/// `N_T` of a map that satisfies the bracket part of the O-operator identity
/// but not `αT = Tα_V` would still count as Nijenhuis.
pub fn check_nijenhuis(op: &LinearMap, alg: &NHomLieSuper, mode: LoopMode) -> Result<ResidualReport> {
    let a = alg.space();
    check_endo(op, a.dim(), "Nijenhuis operator")?;
    let n = alg.n();
    let b = alg.bracket();
    let powers: Vec<LinearMap> = (0..n as u32).map(|k| op.pow(k)).collect::<Result<_>>()?;
    let tuples = enumerate_tuples(&[block(a, n, mode, b.is_raw())]);
    let main = scan("nijenhuis", tuples, |t| {
        let args: Vec<&[(usize, Scalar)]> = t.iter().map(|&i| op.col(i).as_slice()).collect();
        let mut r = b.eval(&args);
        let sum = subset_sum(b, t, op, |k, v| powers[k - 1].apply(&v));
        r -= &op.apply(&sum);
        r
    });
    Ok(main.merged(commutation("commutes_alpha", op, alg.alpha())))
}

fn check_o_shape(op: &LinearMap, a: &crate::graded::GradedSpace, v: &crate::graded::GradedSpace) -> Result<()> {
    if op.domain() != v || op.codomain() != a {
        return Err(Error::shape("O-operator must map the module into the algebra"));
    }
    Ok(())
}

/// `α∘T − T∘α_V` on each module basis vector.
fn o_alpha(op: &LinearMap, alpha: &LinearMap, alpha_v: &LinearMap) -> ResidualReport {
    scan("o_alpha", (0..op.domain().dim()).map(|i| vec![i]).collect(), |t| {
        let mut r = alpha.apply_sparse(op.col(t[0]));
        r -= &op.apply_sparse(alpha_v.col(t[0]));
        r
    })
}

/// The module part `Σ_i (-1)^{n-i} (-1)^{|u_i||u_>i|} ρ(Tu_1..T̂u_i..Tu_n) u_i`.
fn lie_o_sum(op: &LinearMap, rep: &LieRep, t: &[usize]) -> Vector {
    let n = t.len();
    let v = rep.module();
    let rho = rep.rho();
    let mut out = Vector::zeros(v.dim());
    for i in 0..n {
        let mut args: Vec<&[(usize, Scalar)]> = (0..n).filter(|&j| j != i).map(|j| op.col(t[j]).as_slice()).collect();
        let e = vec![(t[i], Scalar::one())];
        args.push(&e);
        let sign = Parity::from(n - 1 - i) + v.parity(t[i]) * parity_of(v, &t[i + 1..]);
        out.add_scaled(&rho.eval(&args), &sign_of(sign));
    }
    out
}

/// `[Tu_1, …, Tu_n] − T(Σ_i (-1)^{n-i} (-1)^{|u_i||u_>i|} ρ(Tu_1..T̂u_i..Tu_n) u_i)`
/// (id `o_operator`) and `αT − Tα_V` (id `o_alpha`).
pub fn check_o_operator_lie(op: &LinearMap, rep: &LieRep, mode: LoopMode) -> Result<ResidualReport> {
    let alg = rep.algebra();
    check_o_shape(op, alg.space(), rep.module())?;
    let n = alg.n();
    let b = alg.bracket();
    let tuples = enumerate_tuples(&[block(rep.module(), n, mode, rep.rho().is_raw())]);
    let main = scan("o_operator", tuples, |t| {
        let args: Vec<&[(usize, Scalar)]> = t.iter().map(|&i| op.col(i).as_slice()).collect();
        let mut r = b.eval(&args);
        r -= &op.apply(&lie_o_sum(op, rep, t));
        r
    });
    Ok(main.merged(o_alpha(op, alg.alpha(), rep.alpha_v())))
}

/// Outcome of testing whether `Gr(T) = {(Tu, u)}` is a subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVerdict {
    pub closed: bool,
    /// Module basis tuple whose bracket leaves the graph; a single index
    /// means the twist `α + α_V` does.
    pub witness: Option<Vec<usize>>,
}

/// Closure of the graph of `T` under the semidirect bracket and under
/// `α + α_V`, tested on the spanning vectors `(Te_k, e_k)`.
pub fn graph_subalgebra_check(op: &LinearMap, rep: &LieRep) -> Result<GraphVerdict> {
    let alg = rep.algebra();
    check_o_shape(op, alg.space(), rep.module())?;
    let sd = semidirect_lie(rep)?;
    let da = alg.space().dim();
    let dv = rep.module().dim();
    let n = alg.n();
    let gens: Vec<Vec<(usize, Scalar)>> = (0..dv)
        .map(|k| {
            let mut g = op.col(k).clone();
            g.push((da + k, Scalar::one()));
            g
        })
        .collect();
    let outside = |w: &Vector| -> bool {
        let vpart: Vec<(usize, Scalar)> = (0..dv)
            .filter(|&k| !w.0[da + k].is_zero())
            .map(|k| (k, w.0[da + k].clone()))
            .collect();
        let image = op.apply_sparse(&vpart);
        (0..da).any(|i| image.0[i] != w.0[i])
    };
    let tw = sd.alpha();
    for k in 0..dv {
        if outside(&tw.apply_sparse(&gens[k])) {
            return Ok(GraphVerdict {
                closed: false,
                witness: Some(vec![k]),
            });
        }
    }
    let tuples = enumerate_tuples(&[block(rep.module(), n, LoopMode::Canonical, rep.rho().is_raw())]);
    let witness = tuples.into_iter().find(|t| {
        let args: Vec<&[(usize, Scalar)]> = t.iter().map(|&k| gens[k].as_slice()).collect();
        outside(&sd.bracket().eval(&args))
    });
    Ok(GraphVerdict {
        closed: witness.is_none(),
        witness,
    })
}

/// `N_T(x + u) = Tu` on `A ⊕ V`; nilpotent of order two.
pub fn lift_nt(op: &LinearMap, rep: &LieRep) -> Result<LinearMap> {
    let a = rep.algebra().space();
    check_o_shape(op, a, rep.module())?;
    let s = a.direct_sum(rep.module());
    let da = a.dim();
    let n = LinearMap::from_fn(s.clone(), s.clone(), |j| {
        if j < da {
            Vector::zeros(s.dim())
        } else {
            Vector::from_sparse(s.dim(), op.col(j - da))
        }
    })?;
    debug_assert!(n.compose(&n).map(|m| m.is_zero()).unwrap_or(false));
    Ok(n)
}

/// `{u_1, …, u_n}_T = ρ(Tu_1, …, Tu_{n-1}) u_n` with twist `α_V`.
pub fn induced_pre_lie_from_o_operator(op: &LinearMap, rep: &LieRep) -> Result<NHomPreLieSuper> {
    let report = check_o_operator_lie(op, rep, LoopMode::Canonical)?;
    if !report.holds() {
        return Err(Error::precondition("o_operator", report));
    }
    let v = rep.module().clone();
    let n = rep.algebra().n();
    let rho = rep.rho();
    let brace = MultiLinearMap::from_fn(vec![v.clone(); n], v.clone(), n - 1, |t| {
        let mut args: Vec<&[(usize, Scalar)]> = t[..n - 1].iter().map(|&i| op.col(i).as_slice()).collect();
        let e = vec![(t[n - 1], Scalar::one())];
        args.push(&e);
        rho.eval(&args)
    })?;
    NHomPreLieSuper::new(brace, rep.alpha_v().clone())
}

/// `{x_1, …, x_n} = T ρ(x_1, …, x_{n-1}) T^{-1} x_n` on the algebra.
pub fn compatible_from_invertible_t(op: &LinearMap, rep: &LieRep) -> Result<NHomPreLieSuper> {
    let inv = op.inverse("O-operator")?;
    let report = check_o_operator_lie(op, rep, LoopMode::Canonical)?;
    if !report.holds() {
        return Err(Error::precondition("o_operator", report));
    }
    let alg = rep.algebra();
    let a = alg.space().clone();
    let n = alg.n();
    let rho = rep.rho();
    let brace = MultiLinearMap::from_fn(vec![a.clone(); n], a.clone(), n - 1, |t| {
        let mut args: Vec<Vec<(usize, Scalar)>> = t[..n - 1].iter().map(|&i| vec![(i, Scalar::one())]).collect();
        args.push(inv.col(t[n - 1]).clone());
        let refs: Vec<&[(usize, Scalar)]> = args.iter().map(|v| v.as_slice()).collect();
        op.apply(&rho.eval(&refs))
    })?;
    NHomPreLieSuper::new(brace, alg.alpha().clone())
}

/// `{Tu_1, …, Tu_n} − T(l(Tu_1..Tu_{n-1})u_n + Σ_{i<n} (-1)^{i+1}
/// (-1)^{|u_i||u_>i|} r(Tu_1..T̂u_i..Tu_n) u_i)` (id `o_operator_pre_lie`) and
/// `αT − Tα_V` (id `o_alpha`).
pub fn check_o_operator_pre_lie(op: &LinearMap, rep: &PreLieRep, mode: LoopMode) -> Result<ResidualReport> {
    let alg = rep.algebra();
    let v = rep.module();
    check_o_shape(op, alg.space(), v)?;
    let n = alg.n();
    let b = alg.brace();
    let (l, r) = (rep.l(), rep.r());
    let tuples = enumerate_tuples(&[block(v, n - 1, mode, l.is_raw() || r.is_raw()), all(v, 1)]);
    let main = scan("o_operator_pre_lie", tuples, |t| {
        let tcols: Vec<&[(usize, Scalar)]> = t.iter().map(|&i| op.col(i).as_slice()).collect();
        let mut res = b.eval(&tcols);
        let mut args = tcols[..n - 1].to_vec();
        let e = vec![(t[n - 1], Scalar::one())];
        args.push(&e);
        let mut inner = l.eval(&args);
        for i in 0..n - 1 {
            let mut args: Vec<&[(usize, Scalar)]> = (0..n).filter(|&j| j != i).map(|j| tcols[j]).collect();
            let e = vec![(t[i], Scalar::one())];
            args.push(&e);
            let sign = Parity::from(i) + v.parity(t[i]) * parity_of(v, &t[i + 1..]);
            inner.add_scaled(&r.eval(&args), &sign_of(sign));
        }
        res -= &op.apply(&inner);
        res
    });
    Ok(main.merged(o_alpha(op, alg.alpha(), rep.alpha_v())))
}

/// Weight-zero Rota–Baxter on a pre-Lie algebra: O-operator for `(A, L, R, α)`.
pub fn check_rota_baxter_pre_lie(op: &LinearMap, alg: &NHomPreLieSuper, mode: LoopMode) -> Result<ResidualReport> {
    check_o_operator_pre_lie(op, &adjoint_pre_lie(alg)?, mode)
}

/// `{x_1, …, x_n}_P = Σ_i {Px_1, …, x_i, …, Px_n}`.
pub fn rb_deformed_brace(op: &LinearMap, alg: &NHomPreLieSuper) -> Result<NHomPreLieSuper> {
    let report = check_rota_baxter_pre_lie(op, alg, LoopMode::Canonical)?;
    if !report.holds() {
        return Err(Error::precondition("rota_baxter_pre_lie", report));
    }
    let a = alg.space().clone();
    let n = alg.n();
    let b = alg.brace();
    let brace = MultiLinearMap::from_fn(vec![a.clone(); n], a.clone(), n - 1, |t| {
        let plain: Vec<Vec<(usize, Scalar)>> = t.iter().map(|&i| vec![(i, Scalar::one())]).collect();
        let mut out = Vector::zeros(a.dim());
        for i in 0..n {
            let args: Vec<&[(usize, Scalar)]> = (0..n)
                .map(|j| if j == i { plain[j].as_slice() } else { op.col(t[j]).as_slice() })
                .collect();
            out += &b.eval(&args);
        }
        out
    })?;
    NHomPreLieSuper::new(brace, alg.alpha().clone())
}

/// `P({x̄}_P) − {Px̄}` over all basis tuples, id `rb_morphism`.
pub fn check_rb_morphism(op: &LinearMap, alg: &NHomPreLieSuper, deformed: &NHomPreLieSuper) -> ResidualReport {
    let a = alg.space();
    let n = alg.n();
    let tuples = enumerate_tuples(&[all(a, n)]);
    scan("rb_morphism", tuples, |t| {
        let mut r = op.apply_sparse(deformed.brace().value(t));
        let args: Vec<&[(usize, Scalar)]> = t.iter().map(|&i| op.col(i).as_slice()).collect();
        r -= &alg.brace().eval(&args);
        r
    })
}

/// From commuting weight-zero Rota–Baxter operators `P_1, P_2`: the brace
/// `{x̄, x_n} = [P_1x_1, …, P_1x_{n-1}, x_n]` and the report of `P_2` as a
/// Rota–Baxter operator on it.
pub fn pre_lie_from_commuting_rb_pair(
    p1: &LinearMap,
    p2: &LinearMap,
    alg: &NHomLieSuper,
) -> Result<(NHomPreLieSuper, ResidualReport)> {
    if !p1.commutes_with(p2)? {
        return Err(Error::NonCommuting("the two operators do not commute".into()));
    }
    let zero = Scalar::zero();
    for (name, p) in [("first operator", p1), ("second operator", p2)] {
        let r = check_rota_baxter_lie(p, alg, &zero, 0, LoopMode::Canonical)?;
        if !r.holds() {
            return Err(Error::precondition(format!("rota_baxter ({name})"), r));
        }
    }
    let a = alg.space().clone();
    let n = alg.n();
    let b = alg.bracket();
    let brace = MultiLinearMap::from_fn(vec![a.clone(); n], a.clone(), n - 1, |t| {
        let mut args: Vec<&[(usize, Scalar)]> = t[..n - 1].iter().map(|&i| p1.col(i).as_slice()).collect();
        let e = vec![(t[n - 1], Scalar::one())];
        args.push(&e);
        b.eval(&args)
    })?;
    let pre = NHomPreLieSuper::new(brace, alg.alpha().clone())?;
    let report = check_rota_baxter_pre_lie(p2, &pre, LoopMode::Canonical)?;
    Ok((pre, report))
}

/// For an endomorphism `(φ_A, φ_V)` of `T`, the composed algebra
/// `(A, φ_A∘[·], φ_A)` and representation `(V, φ_V∘ρ, φ_V)`. Fails if
/// `Tφ_V = φ_A T` or `ρ(φ_A x̄)φ_V = φ_V ρ(x̄)` does not hold.
pub fn transport_by_endomorphism(
    op: &LinearMap,
    rep: &LieRep,
    phi_a: &LinearMap,
    phi_v: &LinearMap,
) -> Result<(NHomLieSuper, LieRep)> {
    let alg = rep.algebra();
    let a = alg.space();
    let v = rep.module();
    check_o_shape(op, a, v)?;
    let mut report = scan("endo_t", (0..v.dim()).map(|i| vec![i]).collect(), |t| {
        let mut r = op.apply_sparse(phi_v.col(t[0]));
        r -= &phi_a.apply_sparse(op.col(t[0]));
        r
    });
    let n = alg.n();
    let rho = rep.rho();
    report.merge(scan("endo_rho", enumerate_tuples(&[all(a, n - 1), all(v, 1)]), |t| {
        let mut args: Vec<&[(usize, Scalar)]> = t[..n - 1].iter().map(|&i| phi_a.col(i).as_slice()).collect();
        args.push(phi_v.col(t[n - 1]));
        let mut r = rho.eval(&args);
        r -= &phi_v.apply_sparse(rho.value(t));
        r
    }));
    if !report.holds() {
        return Err(Error::precondition("endomorphism", report));
    }
    let composed = NHomLieSuper::new(alg.bracket().map_output(phi_a)?, phi_a.clone())?;
    let composed_rep = LieRep::new(composed.clone(), rho.map_output(phi_v)?, phi_v.clone())?;
    Ok((composed, composed_rep))
}

/// Adjoint pairs for binary algebras reuse the n-ary checkers.
pub fn check_rota_baxter_hom_pre_lie(op: &LinearMap, alg: &HomPreLieSuper) -> Result<ResidualReport> {
    check_rota_baxter_pre_lie(op, &alg.to_n_ary(), LoopMode::Full)
}
