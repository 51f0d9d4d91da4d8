//! Weight-zero Rota-Baxter operators on pre-Lie fixtures and the brace they
//! deform to.

use nhom_core::algebra::*;
use nhom_core::catalog;
use nhom_core::graded::scalar;
use nhom_core::induction::{induce_nary_product, PhiForm};
use nhom_core::operators::*;
use nhom_core::representations::*;
use nhom_core::search::Grid;
use nhom_core::{LinearMap, LoopMode, NHomPreLieSuper, Scalar, Twisted};
use num_traits::Zero;

fn grid_rb(pre: &NHomPreLieSuper) -> Vec<LinearMap> {
    let a = pre.space();
    let g = Grid::new(a, a, vec![scalar(-1), scalar(0), scalar(1)]).unwrap();
    g.search(None, |p| {
        !p.is_zero() && check_rota_baxter_pre_lie(p, pre, LoopMode::Canonical).unwrap().holds()
    })
    .unwrap()
}

/// Counts of (deformed brace fails pre-Lie, morphism fails, not RB on the subadjacent).
fn deformation_failures(pre: &NHomPreLieSuper, ps: &[LinearMap]) -> (usize, usize, usize) {
    let sub = subadjacent_bracket(pre).unwrap();
    let mut out = (0, 0, 0);
    for p in ps {
        let d = rb_deformed_brace(p, pre).unwrap();
        out.0 += usize::from(!check_n_hom_pre_lie(&d, LoopMode::Canonical).holds());
        out.1 += usize::from(!check_rb_morphism(p, pre, &d).holds());
        out.2 += usize::from(!check_rota_baxter_lie(p, &sub, &Scalar::zero(), 0, LoopMode::Canonical).unwrap().holds());
    }
    out
}

fn o_operator_fixture() -> NHomPreLieSuper {
    let alg = catalog::supertrace_3_lie().unwrap();
    let rep = adjoint_lie(&alg, 0).unwrap();
    // E11 ↦ E11 + E22, E22 ↦ -(E11 + E22), both odd units ↦ -(E12 + E21).
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
    assert!(check_o_operator_lie(&t, &rep, LoopMode::Canonical).unwrap().holds());
    induced_pre_lie_from_o_operator(&t, &rep).unwrap()
}

#[test]
fn deformation_on_o_operator_induced_brace() {
    let pre = o_operator_fixture();
    assert!(!pre.brace().is_zero());
    let ps = grid_rb(&pre);
    assert!(!ps.is_empty());
    assert_eq!(deformation_failures(&pre, &ps), (0, 0, 0));
}

#[test]
fn deformation_on_the_induced_four_ary_fixture() {
    let alg = catalog::odd_square_example().unwrap();
    let phi = PhiForm::from_entries(alg.space(), 2, vec![(vec![1, 1], scalar(1))]).unwrap();
    let pre = induce_nary_product(&phi, &alg).unwrap().value;
    let ps = grid_rb(&pre);
    assert_eq!(ps.len(), 2);
    assert_eq!(deformation_failures(&pre, &ps), (0, 0, 0));
}

#[test]
fn deformation_requires_a_rota_baxter_operator() {
    let pre = o_operator_fixture();
    let id = LinearMap::identity(pre.space());
    assert!(!check_rota_baxter_pre_lie(&id, &pre, LoopMode::Canonical).unwrap().holds());
    assert!(matches!(
        rb_deformed_brace(&id, &pre),
        Err(nhom_core::Error::Precondition { .. })
    ));
}
