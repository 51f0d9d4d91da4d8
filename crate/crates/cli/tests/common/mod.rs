//! Helpers shared by the binary's integration tests.
#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use nhom_core::graded::{scalar, tuple_parity};
use nhom_core::induction::PhiForm;
use nhom_core::io::Bundle;
use nhom_core::representations::{adjoint_lie, adjoint_pre_lie};
use nhom_core::{GradedSpace, HomPreLieSuper, LinearMap, MultiLinearMap, NHomLieSuper, NHomPreLieSuper, Scalar};
use proptest::prelude::*;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

/// Runs the binary with `stdin` piped in.
pub fn nhom(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nhom"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn nhom");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// Tuples whose first `prefix` slots are nondecreasing and repeat only odd
/// indices, i.e. canonical keys.
fn canonical_tuples(sp: &GradedSpace, k: usize, prefix: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for slot in 0..k {
        let mut next = Vec::new();
        for t in &out {
            for i in 0..sp.dim() {
                if slot > 0 && slot < prefix {
                    let prev: usize = t[slot - 1];
                    if i < prev || (i == prev && !sp.parity(i).is_odd()) {
                        continue;
                    }
                }
                let mut u: Vec<usize> = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

fn even_map(inputs: Vec<GradedSpace>, output: GradedSpace, skew: usize, coeffs: &[i64]) -> MultiLinearMap {
    let base = inputs[0].clone();
    let mut c = coeffs.iter().cycle();
    let entries: Vec<_> = canonical_tuples(&base, inputs.len(), skew)
        .into_iter()
        .map(|t| {
            let p = tuple_parity(&t, &base).unwrap();
            let v: Vec<(usize, Scalar)> = (0..output.dim())
                .filter_map(|i| {
                    let x = *c.next().unwrap();
                    (x != 0 && output.parity(i) == p).then(|| (i, scalar(x)))
                })
                .collect();
            (t, v)
        })
        .collect();
    MultiLinearMap::from_entries(inputs, output, skew, entries).unwrap()
}

fn even_endo(sp: &GradedSpace, coeffs: &[i64]) -> LinearMap {
    let mut c = coeffs.iter().cycle();
    let cols = (0..sp.dim())
        .map(|j| {
            (0..sp.dim())
                .filter_map(|i| {
                    let x = *c.next().unwrap();
                    (x != 0 && sp.parity(i) == sp.parity(j)).then(|| (i, scalar(x)))
                })
                .collect()
        })
        .collect();
    LinearMap::new(sp.clone(), sp.clone(), cols).unwrap()
}

/// Sparse small-integer coefficients, mostly zero so that the documents stay
/// short.
fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![4 => Just(0i64), 1 => -3i64..=3], 16..96)
}

/// A valid bundle of any of the seven kinds with `dim ≤ 4` and `n ≤ 4`.
pub fn bundle() -> impl Strategy<Value = Bundle> {
    (
        prop::collection::vec(0u8..2, 1..=4),
        2usize..=4,
        0usize..7,
        coeffs(),
        coeffs(),
        any::<bool>(),
    )
        .prop_map(|(bits, n, kind, c, a, id_twist)| {
            let sp = GradedSpace::from_bits(&bits).unwrap();
            let alpha = if id_twist {
                LinearMap::identity(&sp)
            } else {
                even_endo(&sp, &a)
            };
            let lie = || NHomLieSuper::new(even_map(vec![sp.clone(); n], sp.clone(), n, &c), alpha.clone()).unwrap();
            let pre = || {
                NHomPreLieSuper::new(even_map(vec![sp.clone(); n], sp.clone(), n - 1, &c), alpha.clone()).unwrap()
            };
            match kind {
                0 => Bundle::NHomLie(lie()),
                1 => Bundle::NHomPreLie(pre()),
                2 => Bundle::HomPreLie(
                    HomPreLieSuper::new(even_map(vec![sp.clone(); 2], sp.clone(), 0, &c), alpha).unwrap(),
                ),
                3 => Bundle::LieRep(adjoint_lie(&lie(), 0).unwrap()),
                4 => Bundle::PreLieRep(adjoint_pre_lie(&pre()).unwrap()),
                5 => Bundle::Operator(alpha),
                _ => Bundle::PhiForm(
                    PhiForm::new(even_map(vec![sp.clone(); n], GradedSpace::ground(), n, &c)).unwrap(),
                ),
            }
        })
}
