//! Acceptance run: one PASS/FAIL line per criterion. Every check is exact.
//!
//! Three criteria cannot pass as stated because the underlying claims are
//! false on the named fixtures. Those print FAIL together with the reason,
//! and the run asserts the precise discrepancy so that any change in it is
//! caught. The process exits nonzero only when something other than a
//! documented discrepancy goes wrong.

mod common;

use std::time::{Duration, Instant};

use nhom_core::algebra::*;
use nhom_core::catalog;
use nhom_core::graded::{scalar, sign_of};
use nhom_core::induction::{induce_nary_product, PhiForm};
use nhom_core::io::{self, Bundle, Limits};
use nhom_core::operators::*;
use nhom_core::representations::*;
use nhom_core::search::Grid;
use nhom_core::{
    GradedSpace, HomPreLieSuper, LinearMap, LoopMode, MultiLinearMap, NHomLieSuper, NHomPreLieSuper, Parity,
    Scalar, Twisted, Vector,
};
use num_traits::{One, Zero};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use rayon::prelude::*;

use common::{code, fixture, nhom};

const FULL: LoopMode = LoopMode::Full;
const CANON: LoopMode = LoopMode::Canonical;

const EXAMPLE_BUDGET: Duration = Duration::from_secs(5);
const PIPELINE_BUDGET: Duration = Duration::from_secs(10);
const MIN_GRID_CANDIDATES: usize = 200;
const MIN_SUBADJACENT_FIXTURES: usize = 3;
const ROUND_TRIP_CASES: usize = 100;

enum Outcome {
    Pass(String),
    /// The criterion fails and the discrepancy matches the recorded one.
    Documented(String),
}

type Check = Result<Outcome, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn load(name: &str) -> Bundle {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    io::parse(&text, &Limits::default()).unwrap()
}

// Independent oracles.

fn p(space: &GradedSpace, i: usize) -> Parity {
    space.parity(i)
}

/// Sparse column of `α` at basis index `i`.
fn col(alpha: &LinearMap, i: usize) -> Vec<(usize, Scalar)> {
    alpha.col(i).clone()
}

/// Brute-force residual count of super-skew symmetry: every adjacent swap
/// must multiply the value by `-(-1)^{|a||b|}`.
fn oracle_skew_failures(b: &MultiLinearMap) -> usize {
    let s = b.output().clone();
    let mut bad = 0;
    for flat in 0..b.tuple_count() {
        let t = b.tuple_at(flat);
        for k in 0..t.len() - 1 {
            let mut u = t.clone();
            u.swap(k, k + 1);
            let c = -sign_of(p(&s, t[k]) * p(&s, t[k + 1]));
            if b.value_vector(&u) != b.value_vector(&t).scaled(&c) {
                bad += 1;
            }
        }
    }
    bad
}

/// Brute-force Hom-Nambu identity
/// `[αx_1..αx_{n-1}, [y_1..y_n]] = Σ_i (-1)^{|X|(|y_1|+…+|y_{i-1}|)} [αy_1.., [x̄, y_i], ..αy_n]`
/// over every basis tuple, returning the number of failing tuples.
fn oracle_nambu_failures(alg: &NHomLieSuper) -> usize {
    let s = alg.space().clone();
    let n = alg.n();
    let d = s.dim();
    let b = alg.bracket();
    let a = alg.alpha();
    let tuples = |k: usize| -> Vec<Vec<usize>> {
        (0..d.pow(k as u32))
            .map(|mut f| {
                let mut t = vec![0; k];
                for slot in (0..k).rev() {
                    t[slot] = f % d;
                    f /= d;
                }
                t
            })
            .collect()
    };
    let xs = tuples(n - 1);
    let ys = tuples(n);
    xs.par_iter()
        .map(|x| {
            let px = Parity::sum(x.iter().map(|&i| p(&s, i)));
            let ax: Vec<Vec<(usize, Scalar)>> = x.iter().map(|&i| col(a, i)).collect();
            let mut bad = 0;
            for y in &ys {
                let inner = b.value_vector(y).to_sparse();
                let mut args: Vec<&[(usize, Scalar)]> = ax.iter().map(Vec::as_slice).collect();
                args.push(&inner);
                let lhs = b.eval(&args);
                let mut rhs = Vector::zeros(d);
                let mut before = Parity::EVEN;
                for i in 0..n {
                    let mut xt = x.clone();
                    xt.push(y[i]);
                    let xy = b.value_vector(&xt).to_sparse();
                    let ay: Vec<Vec<(usize, Scalar)>> = y.iter().map(|&j| col(a, j)).collect();
                    let mut args: Vec<&[(usize, Scalar)]> = ay.iter().map(Vec::as_slice).collect();
                    args[i] = &xy;
                    rhs.add_scaled(&b.eval(&args), &sign_of(px * before));
                    before += p(&s, y[i]);
                }
                if lhs != rhs {
                    bad += 1;
                }
            }
            bad
        })
        .sum()
}

/// Brute-force expansion of the induced brace
/// `{x_1..x_n} = Σ_{k<n} (-1)^{k+1} (-1)^{|x_k|(|x_{k+1}|+…+|x_{n-1}|)} Φ(x̂_k) x_k∘x_n`
/// (one-based `k`), evaluated on every basis tuple.
fn oracle_induced_brace(phi: &PhiForm, alg: &HomPreLieSuper) -> Vec<(Vec<usize>, Vector)> {
    let s = alg.space().clone();
    let n = phi.n();
    let d = s.dim();
    let mut out = Vec::new();
    for flat in 0..d.pow(n as u32) {
        let mut t = vec![0; n];
        let mut f = flat;
        for slot in (0..n).rev() {
            t[slot] = f % d;
            f /= d;
        }
        let mut v = Vector::zeros(d);
        for k in 1..n {
            let xk = t[k - 1];
            let later = Parity::sum(t[k..n - 1].iter().map(|&j| p(&s, j)));
            let sign = if (k + 1) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            let sign = sign * sign_of(p(&s, xk) * later);
            let rest: Vec<usize> = t[..n - 1].iter().enumerate().filter(|&(j, _)| j != k - 1).map(|(_, &i)| i).collect();
            let c = phi.value(&rest);
            if c.is_zero() {
                continue;
            }
            v.add_scaled(&alg.circ().value_vector(&[xk, t[n - 1]]), &(sign * c));
        }
        out.push((t, v));
    }
    out
}

// Fixtures.

fn identity_twisted(alg: &HomPreLieSuper) -> HomPreLieSuper {
    HomPreLieSuper::new(alg.circ().clone(), LinearMap::identity(alg.space())).unwrap()
}

fn lambda_form(alg: &HomPreLieSuper) -> PhiForm {
    PhiForm::from_entries(alg.space(), 2, vec![(vec![1, 1], scalar(1))]).unwrap()
}

fn bump(m: &MultiLinearMap) -> MultiLinearMap {
    let mut e = m.canonical_entries();
    e[0].1[0].1 += scalar(1);
    MultiLinearMap::from_entries(m.inputs().to_vec(), m.output().clone(), m.skew(), e).unwrap()
}

fn trivial(alg: &NHomPreLieSuper) -> PreLieRep {
    let k = GradedSpace::from_bits(&[0]).unwrap();
    let mut inputs = vec![alg.space().clone(); alg.n() - 1];
    inputs.push(k.clone());
    let l = MultiLinearMap::zero(inputs.clone(), k.clone(), alg.n() - 1).unwrap();
    let r = MultiLinearMap::zero(inputs, k.clone(), alg.n() - 2).unwrap();
    PreLieRep::new(alg.clone(), l, r, LinearMap::identity(&k)).unwrap()
}

/// The left multiplication `L` of a pre-Lie algebra as a representation of
/// its subadjacent algebra.
fn left_representation(alg: &NHomPreLieSuper) -> LieRep {
    LieRep::new(subadjacent_bracket(alg).unwrap(), left_mult(alg), alg.alpha().clone()).unwrap()
}

// Criteria.

fn criterion_1() -> Check {
    let mut slowest = Duration::ZERO;
    for n in [3, 4] {
        for multiplicative in [false, true] {
            let start = Instant::now();
            let alg = catalog::omitted_index_example(n, multiplicative).map_err(|e| e.to_string())?;
            ensure(alg.space().dim() == n + 1, "dimension")?;
            ensure(check_super_skew(alg.bracket()).holds(), format!("n={n}: super-skew"))?;
            ensure(check_hom_nambu(&alg, FULL).holds(), format!("n={n}: Nambu"))?;
            if multiplicative {
                ensure(check_multiplicativity(&alg).holds(), format!("n={n}: multiplicativity"))?;
                ensure(alg.alpha().col(n).is_empty(), "α(e_{n+1}) = 0")?;
            }
            let elapsed = start.elapsed();
            slowest = slowest.max(elapsed);
            ensure(oracle_skew_failures(alg.bracket()) == 0, format!("n={n}: skew oracle"))?;
            ensure(oracle_nambu_failures(&alg) == 0, format!("n={n}: Nambu oracle"))?;
            ensure(elapsed < EXAMPLE_BUDGET, format!("n={n}: {elapsed:?} over budget"))?;
        }
    }
    // The oracle is not vacuous: a perturbed bracket fails it.
    let alg = catalog::omitted_index_example(3, false).unwrap();
    let mut e = alg.bracket().canonical_entries();
    e.push((vec![0, 1, 2], vec![(0, scalar(1))]));
    let broken = NHomLieSuper::new(
        MultiLinearMap::from_entries(alg.bracket().inputs().to_vec(), alg.space().clone(), 3, e).unwrap(),
        alg.alpha().clone(),
    )
    .unwrap();
    ensure(oracle_nambu_failures(&broken) > 0, "Nambu oracle accepts a broken bracket")?;
    ensure(!check_hom_nambu(&broken, FULL).holds(), "checker accepts a broken bracket")?;
    Ok(Outcome::Pass(format!(
        "n=3 (dim 4) and n=4 (dim 5), plain and multiplicative; slowest check {slowest:?}"
    )))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let Bundle::HomPreLie(alg) = load("hompre.json") else {
        return Err("hompre.json is not a binary pre-Lie bundle".into());
    };
    let Bundle::PhiForm(phi) = load("phi_lambda1.json") else {
        return Err("phi_lambda1.json is not a form".into());
    };
    ensure(alg == catalog::odd_square_example().unwrap(), "fixture differs from the catalog")?;
    ensure(check_hom_pre_lie(&alg).holds(), "binary Hom-pre-Lie")?;
    let ind = induce_nary_product(&phi, &alg).map_err(|e| e.to_string())?;
    let brace = ind.value.brace();
    ensure(check_super_skew(brace).holds(), "induced brace super-skew")?;
    ensure(check_n_hom_pre_lie(&ind.value, FULL).holds(), "induced brace 4-pre-Lie")?;
    for (t, v) in oracle_induced_brace(&phi, &alg) {
        ensure(brace.value_vector(&t) == v, format!("brace differs from the oracle at {t:?}"))?;
    }
    let top = brace.value(&[1, 1, 1, 1]).clone();
    ensure(top == vec![(0, scalar(3))], format!("top coefficient {top:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < PIPELINE_BUDGET, format!("{elapsed:?} over budget"))?;
    let c = &ind.conditions;
    ensure(c.holds_for("phi_closure") && c.holds_for("phi_alpha"), "first two form conditions")?;
    let w: Vec<_> = c.violations_for("phi_wedge").collect();
    if w.len() == 1 && w[0].tuple == vec![1, 1, 1, 1] && w[0].residual == vec![(0, scalar(3))] {
        Ok(Outcome::Documented(
            "Φ(e2,e2)=1 fails the wedge condition: residual 3λ² = 3 at X=(e2), Y=(e2,e2,e2); \
             {e2,e2,e2,e2} = 3e1 matches the brute-force expansion (stated value: λe1); \
             brace passes super-skew and 4-pre-Lie"
                .into(),
        ))
    } else {
        Err(format!("unexpected wedge residuals {w:?}"))
    }
}

fn criterion_3() -> Check {
    let s = GradedSpace::from_bits(&[0, 1]).unwrap();
    let zero = NHomPreLieSuper::new(
        MultiLinearMap::zero(vec![s.clone(); 3], s.clone(), 2).unwrap(),
        LinearMap::identity(&s),
    )
    .unwrap();
    let odd = catalog::odd_square_example().unwrap();
    let induced = induce_nary_product(&lambda_form(&odd), &odd).unwrap().value;
    let induced_id = induce_nary_product(&lambda_form(&odd), &identity_twisted(&odd)).unwrap().value;
    let m = catalog::matrix_superalgebra(2).unwrap().to_n_ary();
    let semidirect = semidirect_pre_lie(&adjoint_pre_lie(&m).unwrap()).unwrap();
    let fixtures = [
        ("zero brace", zero),
        ("induced 4-ary", induced),
        ("induced 4-ary, α = id", induced_id),
        ("semidirect M(1|1)", semidirect),
    ];
    ensure(fixtures.len() > MIN_SUBADJACENT_FIXTURES, "fixture count")?;
    let mut failing = Vec::new();
    for (name, alg) in &fixtures {
        ensure(check_n_hom_pre_lie(alg, FULL).holds(), format!("{name}: not pre-Lie"))?;
        let sub = subadjacent_bracket(alg).unwrap();
        ensure(check_hom_nambu(&sub, FULL).holds(), format!("{name}: subadjacent Nambu"))?;
        let r = check_lie_representation(&left_representation(alg), FULL);
        if !r.holds() {
            failing.push((*name, r));
        }
    }
    match failing.as_slice() {
        [] => Ok(Outcome::Pass(format!("{} fixtures", fixtures.len()))),
        [(name, r)] if *name == "induced 4-ary" && r.violation_count() == 1 && r.count_for("rho_alpha") == 1 => {
            Ok(Outcome::Documented(
                "subadjacent passes Nambu on all 4 fixtures; (A, L, α) fails on the twisted induced 4-ary \
                 brace (1 violation of rho_alpha): α(e1) = 0 while {e2,e2,e2,e2} = 3e1, so α is not \
                 multiplicative; passes with α = id and on the other fixtures"
                    .into(),
            ))
        }
        other => Err(format!(
            "unexpected failures: {:?}",
            other.iter().map(|(n, r)| (n, r.violations().to_vec())).collect::<Vec<_>>()
        )),
    }
}

fn criterion_4() -> Check {
    let alg = catalog::supertrace_3_lie().unwrap();
    let rep = adjoint_lie(&alg, 0).unwrap();
    let sd = semidirect_lie(&rep).unwrap();
    let g = Grid::new(rep.module(), alg.space(), vec![scalar(-1), scalar(0), scalar(1)]).unwrap();
    let n = g.len().unwrap() as usize;
    ensure(n >= MIN_GRID_CANDIDATES, "grid too small")?;
    let verdicts: Vec<(bool, bool, bool, bool)> = (0..n as u64)
        .into_par_iter()
        .map(|k| {
            let t = g.candidate(k);
            let o = check_o_operator_lie(&t, &rep, CANON).unwrap().holds();
            let graph = graph_subalgebra_check(&t, &rep).unwrap().closed;
            let nt = check_nijenhuis(&lift_nt(&t, &rep).unwrap(), &sd, CANON).unwrap().holds();
            (o, graph, nt, t.is_zero())
        })
        .collect();
    let disagree = verdicts.iter().filter(|(o, g, nt, _)| o != g || o != nt).count();
    let passing = verdicts.iter().filter(|v| v.0).count();
    let nonzero = verdicts.iter().filter(|v| v.0 && !v.3).count();
    ensure(disagree == 0, format!("{disagree} disagreements"))?;
    ensure(nonzero > 0, "no nonzero O-operator")?;
    Ok(Outcome::Pass(format!(
        "{n} candidates on the supertrace 3-Lie adjoint, 0 disagreements, {passing} pass ({nonzero} nonzero)"
    )))
}

fn criterion_5() -> Check {
    let lie = |rep: &LieRep| {
        let sd = semidirect_lie(rep).unwrap();
        (
            check_lie_representation(rep, FULL).holds(),
            check_hom_nambu(&sd, FULL).holds() && check_multiplicativity(&sd).holds(),
        )
    };
    let pre = |rep: &PreLieRep| {
        let sd = semidirect_pre_lie(rep).unwrap();
        (
            check_pre_lie_representation(rep, FULL).holds(),
            check_n_hom_pre_lie(&sd, FULL).holds() && check_multiplicativity(&sd).holds(),
        )
    };
    let ad = adjoint_lie(&catalog::supertrace_3_lie().unwrap(), 0).unwrap();
    let bad = LieRep::new(ad.algebra().clone(), bump(ad.rho()), ad.alpha_v().clone()).unwrap();
    ensure(lie(&ad) == (true, true), "Lie adjoint")?;
    ensure(lie(&bad) == (false, false), format!("mutated ρ: {:?}", lie(&bad)))?;
    let pad = adjoint_pre_lie(&catalog::matrix_superalgebra(2).unwrap().to_n_ary()).unwrap();
    let pbad = PreLieRep::new(pad.algebra().clone(), bump(pad.l()), pad.r().clone(), pad.alpha_v().clone()).unwrap();
    ensure(pre(&pad) == (true, true), "pre-Lie adjoint")?;
    ensure(pre(&pbad) == (false, false), format!("mutated l: {:?}", pre(&pbad)))?;
    Ok(Outcome::Pass(
        "supertrace 3-Lie adjoint and twisted M(1|1) adjoint agree; both mutations fail on both sides".into(),
    ))
}

fn criterion_6() -> Check {
    let odd = catalog::odd_square_example().unwrap();
    let a4 = induce_nary_product(&lambda_form(&odd), &odd).unwrap().value;
    let ad = adjoint_pre_lie(&a4).unwrap();
    let sub = subadjacent_bracket(&a4).unwrap();
    let rt = rho_tilde(&ad).unwrap();
    ensure(rt.rho() == adjoint_lie(&sub, 0).unwrap().rho(), "ρ̃ ≠ ad")?;
    ensure(rt.alpha_v() == sub.alpha(), "twist of ρ̃")?;
    let lhs = subadjacent_bracket(&semidirect_pre_lie(&ad).unwrap()).unwrap();
    ensure(lhs == semidirect_lie(&rt).unwrap(), "sub(sd) ≠ sd(ρ̃)")?;
    ensure(!rt.rho().is_zero(), "vacuous")?;
    Ok(Outcome::Pass("induced 4-ary fixture: ρ̃ = ad and sub(A ⋉ A) = A ⋉_ρ̃ A coefficientwise".into()))
}

fn criterion_7() -> Check {
    let trio = |rep: &PreLieRep| {
        (
            check_pre_lie_representation(&tilde_minus_r(rep).unwrap(), FULL).holds(),
            check_pre_lie_representation(&dual_tilde_plus_r(rep).unwrap(), FULL).holds(),
            check_r_anticommutation(rep).holds(),
        )
    };
    let instances = [
        ("M(1|1)", catalog::matrix_superalgebra(1).unwrap(), (false, false, false)),
        ("e2∘e2 = e1, α = id", identity_twisted(&catalog::odd_square_example().unwrap()), (true, true, true)),
    ];
    for (name, alg, expected) in &instances {
        ensure(alg.alpha() == &LinearMap::identity(alg.space()), "twist must be the identity")?;
        let rep = adjoint_pre_lie(&alg.to_n_ary()).unwrap();
        let rt = rho_tilde(&rep).unwrap();
        let twice = dual_lie_representation(&dual_lie_representation(&rt).unwrap()).unwrap();
        ensure(twice.rho() == rt.rho(), format!("{name}: (ρ̃⋆)⋆ ≠ ρ̃"))?;
        let (al, av) = (rep.algebra().alpha(), rep.alpha_v());
        let r1 = star_action(rep.r(), al, av, Pairing::Primal).unwrap();
        ensure(&star_action(&r1, al, av, Pairing::Dual).unwrap() == rep.r(), format!("{name}: (r⋆)⋆ ≠ r"))?;
        ensure(trio(&rep) == *expected, format!("{name}: trio {:?}", trio(&rep)))?;
    }
    Ok(Outcome::Pass(
        "double duals exact on M(1|1) and e2∘e2 = e1; the three conditions all fail on M(1|1), all hold on the other"
            .into(),
    ))
}

fn criterion_8() -> Check {
    let alg = catalog::supertrace_3_lie().unwrap();
    let rep = adjoint_lie(&alg, 0).unwrap();
    let t = LinearMap::from_rows(
        alg.space().clone(),
        alg.space().clone(),
        &[
            vec![scalar(1), scalar(-1), scalar(0), scalar(0)],
            vec![scalar(1), scalar(-1), scalar(0), scalar(0)],
            vec![scalar(0), scalar(0), scalar(-1), scalar(-1)],
            vec![scalar(0), scalar(0), scalar(-1), scalar(-1)],
        ],
    )
    .unwrap();
    ensure(check_o_operator_lie(&t, &rep, CANON).unwrap().holds(), "T is not an O-operator")?;
    let pre = induced_pre_lie_from_o_operator(&t, &rep).unwrap();
    ensure(!pre.brace().is_zero() && check_n_hom_pre_lie(&pre, FULL).holds(), "induced brace")?;
    let sub = subadjacent_bracket(&pre).unwrap();
    let g = Grid::new(pre.space(), pre.space(), vec![scalar(-1), scalar(0), scalar(1)]).unwrap();
    let ps = g
        .search(None, |p| !p.is_zero() && check_rota_baxter_pre_lie(p, &pre, CANON).unwrap().holds())
        .unwrap();
    ensure(!ps.is_empty(), "no nonzero Rota-Baxter operator on the grid")?;
    for p in &ps {
        let d = rb_deformed_brace(p, &pre).unwrap();
        ensure(check_n_hom_pre_lie(&d, FULL).holds(), format!("{p:?}: deformed brace"))?;
        ensure(check_rb_morphism(p, &pre, &d).holds(), format!("{p:?}: P{{x}}_P ≠ {{Px}}"))?;
        let lemma = check_rota_baxter_lie(p, &sub, &Scalar::zero(), 0, FULL).unwrap();
        ensure(lemma.holds(), format!("{p:?}: not Rota-Baxter on the subadjacent bracket"))?;
    }
    Ok(Outcome::Pass(format!(
        "{} nonzero grid Rota-Baxter operators on an O-operator-induced 3-pre-Lie brace, all deform correctly",
        ps.len()
    )))
}

fn criterion_9() -> Check {
    let odd = catalog::odd_square_example().unwrap();
    let ad = adjoint_hom_pre_lie(&odd).unwrap().to_n_ary();
    let ad_id = adjoint_hom_pre_lie(&identity_twisted(&odd)).unwrap().to_n_ary();
    for rep in [&ad, &ad_id] {
        let t = tensor_representation(rep, &trivial(rep.algebra())).unwrap();
        ensure(t.l() == rep.l() && t.r() == rep.r() && t.alpha_v() == rep.alpha_v(), "trivial factor")?;
    }
    let fixed = check_pre_lie_representation(&tensor_representation(&ad_id, &ad_id).unwrap(), FULL);
    ensure(fixed.holds(), "α = id tensor square")?;
    let r = check_pre_lie_representation(&tensor_representation(&ad, &ad).unwrap(), FULL);
    if r.holds() {
        return Ok(Outcome::Pass("adjoint ⊗ adjoint and the trivial factor".into()));
    }
    let factor = check_pre_lie_representation(&ad, FULL);
    if r.violation_count() == 2
        && r.count_for("l.rho_alpha") == 1
        && r.count_for("repR1") == 1
        && factor.violation_count() == 2
    {
        Ok(Outcome::Documented(
            "adjoint ⊗ adjoint of the e2∘e2 = e1 fixture fails l.rho_alpha and repR1 once each; the \
             adjoint itself already fails them because α(e1) = 0 breaks multiplicativity; passes with \
             α = id; trivial-factor reduction exact"
                .into(),
        ))
    } else {
        Err(format!("unexpected violations {:?}", r.violations()))
    }
}

fn criterion_10() -> Check {
    let mut runner = TestRunner::deterministic();
    let strategy = common::bundle();
    let mut kinds = std::collections::BTreeSet::new();
    for case in 0..ROUND_TRIP_CASES {
        let b = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let text = io::serialize(&b);
        let back = io::parse(&text, &Limits::default()).map_err(|e| format!("case {case}: {e}"))?;
        ensure(back == b, format!("case {case}: parse∘serialize"))?;
        ensure(io::serialize(&back) == text, format!("case {case}: serialize∘parse"))?;
        kinds.insert(b.kind().name());
    }
    let f = |n: &str| fixture(n).to_string_lossy().into_owned();
    let ok = nhom(&["verify", &f("example_n3.json")], b"");
    ensure(code(&ok) == 0, "verify example_n3 should exit 0")?;
    let bad = nhom(&["verify", &f("mutated.json")], b"");
    ensure(code(&bad) == 1, "verify mutated should exit 1")?;
    let report: serde_json::Value = serde_json::from_slice(&bad.stdout).map_err(|e| e.to_string())?;
    let witness = report["identities"]
        .as_array()
        .and_then(|ids| ids.iter().find(|i| i["id"] == "hom_nambu" && i["status"] == "fail"))
        .and_then(|i| i["violations"][0]["tuple"].as_array().cloned());
    ensure(witness.is_some_and(|t| !t.is_empty()), "no hom_nambu witness")?;
    let induced = nhom(&["induce", "nary", &f("phi_lambda1.json"), &f("hompre.json")], b"");
    ensure(code(&induced) == 0, "induce should exit 0")?;
    let piped = nhom(&["verify", "-"], &induced.stdout);
    ensure(code(&piped) == 0, "induce | verify - should exit 0")?;
    for args in [
        vec!["verify", "--full-loops", &f("mutated.json")],
        vec!["verify", "-"],
        vec!["check-operator", "rota-baxter", &f("mutated.json"), &f("hompre.json")],
    ] {
        let stdin = if args[1] == "-" { induced.stdout.clone() } else { Vec::new() };
        let a = nhom(&args, &stdin);
        let b = nhom(&args, &stdin);
        ensure(a.stdout == b.stdout && a.status == b.status, format!("{args:?} not reproducible"))?;
    }
    let one = nhom(&["--threads", "1", "verify", &f("mutated.json")], b"");
    let four = nhom(&["--threads", "4", "verify", &f("mutated.json")], b"");
    ensure(one.stdout == four.stdout, "report depends on the thread count")?;
    Ok(Outcome::Pass(format!(
        "{ROUND_TRIP_CASES} random bundles over {} kinds round-trip; exit codes 0/1/0; reports byte-identical",
        kinds.len()
    )))
}

/// Criteria whose failure is documented, with the reason kept next to the
/// assertion in the corresponding function.
const DOCUMENTED: [usize; 3] = [2, 3, 9];

fn main() {
    let criteria: [(usize, fn() -> Check); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (k, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(Outcome::Pass(msg)) => {
                println!("criterion {k:>2}: PASS  [{secs:.2}s] {msg}");
                if DOCUMENTED.contains(&k) {
                    unexpected.push(format!("criterion {k} was expected to fail"));
                }
            }
            Ok(Outcome::Documented(msg)) => {
                println!("criterion {k:>2}: FAIL  [{secs:.2}s] documented: {msg}");
                if !DOCUMENTED.contains(&k) {
                    unexpected.push(format!("criterion {k} fails"));
                }
            }
            Err(msg) => {
                println!("criterion {k:>2}: FAIL  [{secs:.2}s] unexpected: {msg}");
                unexpected.push(format!("criterion {k}: {msg}"));
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("acceptance: {}", unexpected.join("; "));
        std::process::exit(1);
    }
}
