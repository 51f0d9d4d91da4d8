use std::io::Read;

use nhom_core::algebra::{check_hom_nambu, check_hom_pre_lie, check_multiplicativity, check_n_hom_pre_lie, check_super_skew, subadjacent_bracket};
use nhom_core::graded::parse_scalar;
use nhom_core::induction::{induce_nary_product, induce_representation};
use nhom_core::io::{self, identity_docs, Bundle, BundleDocument, Limits, ReportDocument};
use nhom_core::operators::{
    check_nijenhuis, check_o_operator_lie, check_o_operator_pre_lie, check_rota_baxter_lie, check_rota_baxter_pre_lie,
    lift_nt,
};
use nhom_core::representations::{
    adjoint_lie, adjoint_pre_lie, check_hom_pre_lie_representation, check_lie_representation,
    check_pre_lie_representation, dual_lie_representation, dual_pre_lie_representation, rho_tilde, semidirect_lie,
    semidirect_pre_lie, tensor_representation, twist_representation, Transcription,
};
use nhom_core::search::Grid;
use nhom_core::{Error, LinearMap, LoopMode, ResidualReport, Scalar, Twisted};

use crate::{Cli, Command, Construction, Induction, OperatorKind};

pub struct Output {
    pub stdout: String,
    pub pass: bool,
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Precondition { .. } => 1,
            _ => 2,
        };
        let mut message = e.to_string();
        if let Error::Precondition { report, .. } = &e {
            for v in report.violations().iter().take(5) {
                message.push_str(&format!("\n  {} at {:?}", v.identity, v.tuple));
            }
        }
        Failure { code, message }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: msg.into(),
    }
}

type Run<T> = std::result::Result<T, Failure>;

struct Input {
    bytes: Vec<u8>,
    bundle: Bundle,
}

fn load(path: &str, limits: &Limits) -> Run<Input> {
    let bytes = if path == "-" {
        let mut b = Vec::new();
        std::io::stdin()
            .read_to_end(&mut b)
            .map_err(|e| usage(format!("standard input: {e}")))?;
        b
    } else {
        std::fs::read(path).map_err(|e| usage(format!("{path}: {e}")))?
    };
    let text = String::from_utf8(bytes.clone()).map_err(|_| usage(format!("{path}: not UTF-8")))?;
    let bundle = io::parse(&text, limits).map_err(|e| usage(format!("{path}: {e}")))?;
    Ok(Input { bytes, bundle })
}

fn load_all(paths: &[&str], limits: &Limits) -> Run<Vec<Input>> {
    if paths.iter().filter(|p| **p == "-").count() > 1 {
        return Err(usage("standard input can be read only once"));
    }
    paths.iter().map(|p| load(p, limits)).collect()
}

fn digest_of(inputs: &[Input]) -> String {
    let parts: Vec<&[u8]> = inputs.iter().map(|i| i.bytes.as_slice()).collect();
    io::digest(&parts)
}

fn mode(full: bool) -> LoopMode {
    if full {
        LoopMode::Full
    } else {
        LoopMode::Canonical
    }
}

fn wrong_kind(what: &str, b: &Bundle) -> Failure {
    usage(format!("{what} does not accept a `{}` bundle", b.kind().name()))
}

fn report_output(report: &ResidualReport, inputs: &[Input]) -> Output {
    Output {
        stdout: io::to_text(&ReportDocument::new(report, digest_of(inputs))),
        pass: report.holds(),
    }
}

fn bundle_output(b: &Bundle) -> Output {
    Output {
        stdout: io::serialize(b),
        pass: true,
    }
}

pub fn run(cli: &Cli) -> Run<Output> {
    let limits = Limits {
        max_n: cli.global.max_n,
        max_dim: cli.global.max_dim,
    };
    match &cli.command {
        Command::Verify {
            file,
            identity,
            full_loops,
        } => verify(file, identity.as_deref(), mode(*full_loops), &limits),
        Command::Construct { what, files } => construct(*what, files, &limits),
        Command::CheckOperator {
            what,
            op,
            bundle,
            weight,
            power,
            full_loops,
        } => {
            let inputs = load_all(&[op, bundle], &limits)?;
            let Bundle::Operator(t) = &inputs[0].bundle else {
                return Err(wrong_kind("the operator argument", &inputs[0].bundle));
            };
            let w = parse_scalar(weight).map_err(|e| usage(format!("--weight: {e}")))?;
            let report = check_operator(*what, t, &inputs[1].bundle, &w, *power, mode(*full_loops))?;
            Ok(report_output(&report, &inputs))
        }
        Command::Induce { what, phi, bundle } => induce(*what, phi, bundle, &limits),
        Command::Search {
            bundle,
            grid,
            limit,
            kind,
            weight,
            power,
            max_candidates,
            ..
        } => {
            let input = load(bundle, &limits)?;
            let w = parse_scalar(weight).map_err(|e| usage(format!("--weight: {e}")))?;
            let values = grid
                .split(',')
                .map(|v| parse_scalar(v).map_err(|e| usage(format!("--grid: {e}"))))
                .collect::<Run<Vec<Scalar>>>()?;
            search(&input.bundle, values, *limit, *kind, &w, *power, *max_candidates)
        }
    }
}

fn defining_report(b: &Bundle, mode: LoopMode) -> Run<ResidualReport> {
    Ok(match b {
        Bundle::NHomLie(a) => check_super_skew(a.bracket()).merged(check_hom_nambu(a, mode)),
        Bundle::NHomPreLie(a) => check_super_skew(a.brace()).merged(check_n_hom_pre_lie(a, mode)),
        Bundle::HomPreLie(a) => check_hom_pre_lie(a),
        Bundle::LieRep(r) => check_lie_representation(r, mode),
        Bundle::PreLieRep(r) if r.algebra().n() == 2 => {
            check_hom_pre_lie_representation(&io::binary_rep(r)?, Transcription::Corrected)
        }
        Bundle::PreLieRep(r) => check_pre_lie_representation(r, mode),
        Bundle::Operator(_) => return Err(usage("an operator is checked with `check-operator`")),
        Bundle::PhiForm(_) => return Err(usage("a form is checked by `induce`, which reports its conditions")),
    })
}

fn verify(file: &str, identity: Option<&str>, mode: LoopMode, limits: &Limits) -> Run<Output> {
    let input = load(file, limits)?;
    let report = match identity {
        Some("multiplicativity") => match &input.bundle {
            Bundle::NHomLie(a) => check_multiplicativity(a),
            Bundle::NHomPreLie(a) => check_multiplicativity(a),
            Bundle::HomPreLie(a) => check_multiplicativity(a),
            b => return Err(wrong_kind("multiplicativity", b)),
        },
        Some(id) => {
            let full = defining_report(&input.bundle, mode)?;
            if !full.identities().iter().any(|i| i == id) {
                return Err(usage(format!(
                    "unknown identity `{id}`; available: {}",
                    full.identities().join(", ")
                )));
            }
            full.restricted(&[id])
        }
        None => defining_report(&input.bundle, mode)?,
    };
    Ok(report_output(&report, std::slice::from_ref(&input)))
}

fn construct(what: Construction, files: &[String], limits: &Limits) -> Run<Output> {
    let want = match what {
        Construction::Tensor | Construction::NtLift => 2,
        _ => 1,
    };
    if files.len() != want {
        return Err(usage(format!("this construction takes {want} file(s), got {}", files.len())));
    }
    let paths: Vec<&str> = files.iter().map(String::as_str).collect();
    let inputs = load_all(&paths, limits)?;
    let b = &inputs[0].bundle;
    let out = match (what, b) {
        (Construction::Subadjacent, Bundle::NHomPreLie(a)) => Bundle::NHomLie(subadjacent_bracket(a)?),
        (Construction::Subadjacent, Bundle::HomPreLie(a)) => Bundle::NHomLie(subadjacent_bracket(&a.to_n_ary())?),
        (Construction::Semidirect, Bundle::LieRep(r)) => Bundle::NHomLie(semidirect_lie(r)?),
        (Construction::Semidirect, Bundle::PreLieRep(r)) => Bundle::NHomPreLie(semidirect_pre_lie(r)?),
        (Construction::Adjoint, Bundle::NHomLie(a)) => Bundle::LieRep(adjoint_lie(a, 0)?),
        (Construction::Adjoint, Bundle::NHomPreLie(a)) => Bundle::PreLieRep(adjoint_pre_lie(a)?),
        (Construction::Adjoint, Bundle::HomPreLie(a)) => Bundle::PreLieRep(adjoint_pre_lie(&a.to_n_ary())?),
        (Construction::RhoTilde, Bundle::PreLieRep(r)) => Bundle::LieRep(rho_tilde(r)?),
        (Construction::Dual, Bundle::LieRep(r)) => Bundle::LieRep(dual_lie_representation(r)?),
        (Construction::Dual, Bundle::PreLieRep(r)) => Bundle::PreLieRep(dual_pre_lie_representation(r)?),
        (Construction::Twist, Bundle::PreLieRep(r)) => Bundle::PreLieRep(twist_representation(r)?.1),
        (Construction::Tensor, Bundle::PreLieRep(r1)) => match &inputs[1].bundle {
            Bundle::PreLieRep(r2) => Bundle::PreLieRep(tensor_representation(r1, r2)?),
            other => return Err(wrong_kind("the second tensor factor", other)),
        },
        (Construction::NtLift, Bundle::Operator(t)) => match &inputs[1].bundle {
            Bundle::LieRep(r) => Bundle::Operator(lift_nt(t, r)?),
            other => return Err(wrong_kind("nt-lift", other)),
        },
        (_, b) => return Err(wrong_kind("this construction", b)),
    };
    Ok(bundle_output(&out))
}

fn check_operator(
    what: OperatorKind,
    t: &LinearMap,
    b: &Bundle,
    weight: &Scalar,
    power: u32,
    mode: LoopMode,
) -> Run<ResidualReport> {
    let plain = num_traits::Zero::is_zero(weight) && power == 0;
    Ok(match (what, b) {
        (OperatorKind::RotaBaxter, Bundle::NHomLie(a)) => check_rota_baxter_lie(t, a, weight, power, mode)?,
        (OperatorKind::RotaBaxter, Bundle::NHomPreLie(a)) if plain => check_rota_baxter_pre_lie(t, a, mode)?,
        (OperatorKind::RotaBaxter, Bundle::HomPreLie(a)) if plain => check_rota_baxter_pre_lie(t, &a.to_n_ary(), mode)?,
        (OperatorKind::RotaBaxter, Bundle::NHomPreLie(_) | Bundle::HomPreLie(_)) => {
            return Err(usage("pre-Lie Rota-Baxter operators are checked at weight 0 and power 0 only"))
        }
        (OperatorKind::OOperator, Bundle::LieRep(r)) => check_o_operator_lie(t, r, mode)?,
        (OperatorKind::OOperator, Bundle::PreLieRep(r)) => check_o_operator_pre_lie(t, r, mode)?,
        (OperatorKind::Nijenhuis, Bundle::NHomLie(a)) => check_nijenhuis(t, a, mode)?,
        (_, b) => return Err(wrong_kind("this operator check", b)),
    })
}

fn induce(what: Induction, phi: &str, bundle: &str, limits: &Limits) -> Run<Output> {
    let inputs = load_all(&[phi, bundle], limits)?;
    let Bundle::PhiForm(form) = &inputs[0].bundle else {
        return Err(wrong_kind("the form argument", &inputs[0].bundle));
    };
    let (out, conditions) = match (what, &inputs[1].bundle) {
        (Induction::Nary, Bundle::HomPreLie(a)) => {
            let ind = induce_nary_product(form, a)?;
            (Bundle::NHomPreLie(ind.value), ind.conditions)
        }
        (Induction::Representation, Bundle::PreLieRep(r)) => {
            let ind = induce_representation(form, &io::binary_rep(r)?)?;
            (Bundle::PreLieRep(ind.value), ind.conditions)
        }
        (_, b) => return Err(wrong_kind("this induction", b)),
    };
    for v in conditions.violations() {
        eprintln!("nhom: warning: hypothesis {} fails at {:?}", v.identity, v.tuple);
    }
    let mut doc = BundleDocument::from_bundle(&out);
    doc.conditions = Some(identity_docs(&conditions));
    Ok(Output {
        stdout: io::to_text(&doc),
        pass: true,
    })
}

fn search(
    b: &Bundle,
    values: Vec<Scalar>,
    limit: Option<usize>,
    kind: Option<OperatorKind>,
    weight: &Scalar,
    power: u32,
    max_candidates: u64,
) -> Run<Output> {
    let kind = kind.unwrap_or(match b {
        Bundle::LieRep(_) | Bundle::PreLieRep(_) => OperatorKind::OOperator,
        _ => OperatorKind::RotaBaxter,
    });
    let (domain, codomain) = match b {
        Bundle::NHomLie(a) => (a.space().clone(), a.space().clone()),
        Bundle::NHomPreLie(a) => (a.space().clone(), a.space().clone()),
        Bundle::HomPreLie(a) => (a.space().clone(), a.space().clone()),
        Bundle::LieRep(r) => (r.module().clone(), r.algebra().space().clone()),
        Bundle::PreLieRep(r) => (r.module().clone(), r.algebra().space().clone()),
        other => return Err(wrong_kind("search", other)),
    };
    // Probe once so that a kind/bundle mismatch is a usage error, not an empty result.
    check_operator(kind, &LinearMap::zero(&domain, &codomain), b, weight, power, LoopMode::Canonical)?;
    let grid = Grid::new(&domain, &codomain, values)?;
    match grid.len() {
        Some(n) if n <= max_candidates => {}
        _ => {
            return Err(usage(format!(
                "grid has more than {max_candidates} candidates; raise --max-candidates"
            )))
        }
    }
    let found = grid.search(limit, |t| {
        check_operator(kind, t, b, weight, power, LoopMode::Canonical)
            .map(|r| r.holds())
            .unwrap_or(false)
    })?;
    let mut stdout = String::new();
    for t in &found {
        let doc = BundleDocument::from_bundle(&Bundle::Operator(t.clone()));
        stdout.push_str(&serde_json::to_string(&doc).expect("documents serialize"));
        stdout.push('\n');
    }
    Ok(Output {
        pass: !found.is_empty(),
        stdout,
    })
}
