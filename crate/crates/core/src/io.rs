//! JSON bundle and report documents.
//!
//! A bundle document is a flat object whose `kind` decides which of the
//! optional fields are required and which are forbidden. Coefficients are
//! always strings (`"3"`, `"-1/2"`). Tables are lists of
//! `{"tuple": [...], "value": {"basis index": "rational"}}` entries; skew
//! products may list any representative of a symmetry class and are
//! serialized back on canonical (sorted) tuples only.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{HomPreLieSuper, NHomLieSuper, NHomPreLieSuper, Twisted};
use crate::error::{Error, Result};
use crate::graded::{format_scalar, parse_scalar, GradedSpace};
use crate::induction::PhiForm;
use crate::linear::{LinearMap, Sparse};
use crate::multilinear::MultiLinearMap;
use crate::report::ResidualReport;
use crate::representations::{HomPreLieRep, LieRep, Pairing, PreLieRep};

pub const SCHEMA_VERSION: &str = "1";
pub const TOOL: &str = "nhom";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub tuple: Vec<usize>,
    pub value: BTreeMap<usize, String>,
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    NHomLie,
    NHomPreLie,
    HomPreLie,
    LieRep,
    PreLieRep,
    Operator,
    PhiForm,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::NHomLie => "n_hom_lie",
            Kind::NHomPreLie => "n_hom_pre_lie",
            Kind::HomPreLie => "hom_pre_lie",
            Kind::LieRep => "lie_rep",
            Kind::PreLieRep => "pre_lie_rep",
            Kind::Operator => "operator",
            Kind::PhiForm => "phi_form",
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum PairingDoc {
    Primal,
    Dual,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BundleDocument {
    pub schema_version: String,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Parities of the algebra basis, or of the operator domain.
    pub parities: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_parities: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_v: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<PairingDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codomain_parities: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Entry>>,
    /// Hypotheses report attached by constructions; ignored when loading.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditions: Option<Vec<IdentityDoc>>,
}

/// A loaded bundle. Binary pre-Lie representations stay in the `n`-ary
/// form; see [`binary_rep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bundle {
    NHomLie(NHomLieSuper),
    NHomPreLie(NHomPreLieSuper),
    HomPreLie(HomPreLieSuper),
    LieRep(LieRep),
    PreLieRep(PreLieRep),
    Operator(LinearMap),
    PhiForm(PhiForm),
}

impl Bundle {
    pub fn kind(&self) -> Kind {
        match self {
            Bundle::NHomLie(_) => Kind::NHomLie,
            Bundle::NHomPreLie(_) => Kind::NHomPreLie,
            Bundle::HomPreLie(_) => Kind::HomPreLie,
            Bundle::LieRep(_) => Kind::LieRep,
            Bundle::PreLieRep(_) => Kind::PreLieRep,
            Bundle::Operator(_) => Kind::Operator,
            Bundle::PhiForm(_) => Kind::PhiForm,
        }
    }
}

/// Size guards applied while loading; exact loops grow like `dim^(2n)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
    pub max_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_n: 6, max_dim: 8 }
    }
}

fn located(field: &str, e: Error) -> Error {
    Error::Malformed(format!("{field}: {e}"))
}

fn space_of(field: &str, bits: &[u8], limits: &Limits) -> Result<GradedSpace> {
    if bits.len() > limits.max_dim {
        return Err(Error::Limit(format!(
            "{field} has dimension {} above the limit {}",
            bits.len(),
            limits.max_dim
        )));
    }
    GradedSpace::from_bits(bits).map_err(|e| located(field, e))
}

fn entries(field: &str, table: &[Entry]) -> Result<Vec<(Vec<usize>, Sparse)>> {
    table
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let value = e
                .value
                .iter()
                .map(|(&i, c)| Ok((i, parse_scalar(c)?)))
                .collect::<Result<Sparse>>()
                .map_err(|err| located(&format!("{field}[{k}]"), err))?;
            Ok((e.tuple.clone(), value))
        })
        .collect()
}

fn table(
    field: &str,
    data: &[Entry],
    inputs: Vec<GradedSpace>,
    output: GradedSpace,
    skew: usize,
) -> Result<MultiLinearMap> {
    if let Some((k, e)) = data.iter().enumerate().find(|(_, e)| e.tuple.len() != inputs.len()) {
        return Err(Error::Malformed(format!(
            "{field}[{k}]: tuple {:?} has length {}, expected {}",
            e.tuple,
            e.tuple.len(),
            inputs.len()
        )));
    }
    MultiLinearMap::from_entries(inputs, output, skew, entries(field, data)?).map_err(|e| located(field, e))
}

fn linear(field: &str, data: Option<&Vec<Entry>>, domain: &GradedSpace, codomain: &GradedSpace) -> Result<LinearMap> {
    let Some(data) = data else {
        return if domain == codomain {
            Ok(LinearMap::identity(domain))
        } else {
            Err(Error::Malformed(format!("missing field `{field}`")))
        };
    };
    let m = table(field, data, vec![domain.clone()], codomain.clone(), 0)?;
    let cols = (0..domain.dim()).map(|j| m.value(&[j]).clone()).collect();
    LinearMap::new(domain.clone(), codomain.clone(), cols).map_err(|e| located(field, e))
}

fn required<'a, T>(field: &str, v: &'a Option<T>) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::Malformed(format!("missing field `{field}`")))
}

impl BundleDocument {
    fn present(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut add = |name, set: bool| {
            if set {
                out.push(name)
            }
        };
        add("n", self.n.is_some());
        add("alpha", self.alpha.is_some());
        add("product", self.product.is_some());
        add("module_parities", self.module_parities.is_some());
        add("alpha_v", self.alpha_v.is_some());
        add("rho", self.rho.is_some());
        add("l", self.l.is_some());
        add("r", self.r.is_some());
        add("pairing", self.pairing.is_some());
        add("codomain_parities", self.codomain_parities.is_some());
        add("map", self.map.is_some());
        add("form", self.form.is_some());
        out
    }

    fn allow_only(&self, allowed: &[&str]) -> Result<()> {
        match self.present().into_iter().find(|f| !allowed.contains(f)) {
            Some(f) => Err(Error::Malformed(format!(
                "field `{f}` does not belong to a `{}` document",
                self.kind.name()
            ))),
            None => Ok(()),
        }
    }

    fn arity(&self, limits: &Limits) -> Result<usize> {
        let n = *required("n", &self.n)?;
        if n < 2 {
            return Err(Error::Malformed(format!("arity n = {n} must be at least 2")));
        }
        if n > limits.max_n {
            return Err(Error::Limit(format!("arity {n} above the limit {}", limits.max_n)));
        }
        Ok(n)
    }

    fn algebra_parts(&self, limits: &Limits, n: usize, skew: usize) -> Result<(GradedSpace, MultiLinearMap, LinearMap)> {
        let a = space_of("parities", &self.parities, limits)?;
        let empty = Vec::new();
        let product = table(
            "product",
            self.product.as_ref().unwrap_or(&empty),
            vec![a.clone(); n],
            a.clone(),
            skew,
        )?;
        let alpha = linear("alpha", self.alpha.as_ref(), &a, &a)?;
        Ok((a, product, alpha))
    }

    fn module_parts(&self, limits: &Limits) -> Result<(GradedSpace, LinearMap, Pairing)> {
        let v = space_of("module_parities", required("module_parities", &self.module_parities)?, limits)?;
        let alpha_v = linear("alpha_v", self.alpha_v.as_ref(), &v, &v)?;
        let pairing = match self.pairing {
            Some(PairingDoc::Dual) => Pairing::Dual,
            _ => Pairing::Primal,
        };
        Ok((v, alpha_v, pairing))
    }

    /// Typed bundle with every invariant enforced.
    pub fn to_bundle(&self, limits: &Limits) -> Result<Bundle> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Malformed(format!(
                "unsupported schema_version `{}` (expected `{SCHEMA_VERSION}`)",
                self.schema_version
            )));
        }
        let action_inputs = |a: &GradedSpace, v: &GradedSpace, n: usize| {
            let mut i = vec![a.clone(); n - 1];
            i.push(v.clone());
            i
        };
        match self.kind {
            Kind::NHomLie => {
                self.allow_only(&["n", "alpha", "product"])?;
                let n = self.arity(limits)?;
                let (_, p, al) = self.algebra_parts(limits, n, n)?;
                Ok(Bundle::NHomLie(NHomLieSuper::new(p, al)?))
            }
            Kind::NHomPreLie => {
                self.allow_only(&["n", "alpha", "product"])?;
                let n = self.arity(limits)?;
                let (_, p, al) = self.algebra_parts(limits, n, n - 1)?;
                Ok(Bundle::NHomPreLie(NHomPreLieSuper::new(p, al)?))
            }
            Kind::HomPreLie => {
                self.allow_only(&["n", "alpha", "product"])?;
                if self.n.is_some_and(|n| n != 2) {
                    return Err(Error::Malformed("a `hom_pre_lie` document has n = 2".into()));
                }
                let (_, p, al) = self.algebra_parts(limits, 2, 0)?;
                Ok(Bundle::HomPreLie(HomPreLieSuper::new(p, al)?))
            }
            Kind::LieRep => {
                self.allow_only(&["n", "alpha", "product", "module_parities", "alpha_v", "rho", "pairing"])?;
                let n = self.arity(limits)?;
                let (a, p, al) = self.algebra_parts(limits, n, n)?;
                let (v, av, pairing) = self.module_parts(limits)?;
                let rho = table("rho", required("rho", &self.rho)?, action_inputs(&a, &v, n), v.clone(), n - 1)?;
                let alg = NHomLieSuper::new(p, al)?;
                Ok(Bundle::LieRep(LieRep::with_pairing(alg, rho, av, pairing)?))
            }
            Kind::PreLieRep => {
                self.allow_only(&[
                    "n",
                    "alpha",
                    "product",
                    "module_parities",
                    "alpha_v",
                    "l",
                    "r",
                    "pairing",
                ])?;
                let n = self.arity(limits)?;
                let (a, p, al) = self.algebra_parts(limits, n, n - 1)?;
                let (v, av, pairing) = self.module_parts(limits)?;
                let l = table("l", required("l", &self.l)?, action_inputs(&a, &v, n), v.clone(), n - 1)?;
                let r = table("r", required("r", &self.r)?, action_inputs(&a, &v, n), v.clone(), n - 2)?;
                let alg = NHomPreLieSuper::new(p, al)?;
                Ok(Bundle::PreLieRep(PreLieRep::with_pairing(alg, l, r, av, pairing)?))
            }
            Kind::Operator => {
                self.allow_only(&["codomain_parities", "map"])?;
                let d = space_of("parities", &self.parities, limits)?;
                let c = match &self.codomain_parities {
                    Some(bits) => space_of("codomain_parities", bits, limits)?,
                    None => d.clone(),
                };
                let empty = Vec::new();
                let m = linear("map", Some(self.map.as_ref().unwrap_or(&empty)), &d, &c)?;
                Ok(Bundle::Operator(m))
            }
            Kind::PhiForm => {
                self.allow_only(&["n", "form"])?;
                let n = self.arity(limits)?;
                if n < 3 {
                    return Err(Error::Malformed("a form induces arity n >= 3".into()));
                }
                let a = space_of("parities", &self.parities, limits)?;
                let empty = Vec::new();
                let f = table(
                    "form",
                    self.form.as_ref().unwrap_or(&empty),
                    vec![a; n - 2],
                    GradedSpace::ground(),
                    n - 2,
                )?;
                Ok(Bundle::PhiForm(PhiForm::new(f)?))
            }
        }
    }

    fn blank(kind: Kind, parities: &GradedSpace) -> Self {
        BundleDocument {
            schema_version: SCHEMA_VERSION.into(),
            kind,
            n: None,
            parities: bits(parities),
            alpha: None,
            product: None,
            module_parities: None,
            alpha_v: None,
            rho: None,
            l: None,
            r: None,
            pairing: None,
            codomain_parities: None,
            map: None,
            form: None,
            conditions: None,
        }
    }

    fn with_algebra<T: Twisted>(kind: Kind, alg: &T) -> Self {
        let mut d = Self::blank(kind, alg.space());
        d.n = Some(alg.arity());
        d.product = Some(dump(alg.product()));
        d.alpha = Some(dump_linear(alg.alpha()));
        d
    }

    fn with_module(mut self, v: &GradedSpace, alpha_v: &LinearMap, pairing: Pairing) -> Self {
        self.module_parities = Some(bits(v));
        self.alpha_v = Some(dump_linear(alpha_v));
        if pairing == Pairing::Dual {
            self.pairing = Some(PairingDoc::Dual);
        }
        self
    }

    /// Canonical document for a bundle.
    pub fn from_bundle(b: &Bundle) -> Self {
        match b {
            Bundle::NHomLie(a) => Self::with_algebra(Kind::NHomLie, a),
            Bundle::NHomPreLie(a) => Self::with_algebra(Kind::NHomPreLie, a),
            Bundle::HomPreLie(a) => {
                let mut d = Self::with_algebra(Kind::HomPreLie, a);
                d.n = None;
                d
            }
            Bundle::LieRep(rep) => {
                let mut d = Self::with_algebra(Kind::LieRep, rep.algebra()).with_module(
                    rep.module(),
                    rep.alpha_v(),
                    rep.pairing(),
                );
                d.rho = Some(dump(rep.rho()));
                d
            }
            Bundle::PreLieRep(rep) => {
                let mut d = Self::with_algebra(Kind::PreLieRep, rep.algebra()).with_module(
                    rep.module(),
                    rep.alpha_v(),
                    rep.pairing(),
                );
                d.l = Some(dump(rep.l()));
                d.r = Some(dump(rep.r()));
                d
            }
            Bundle::Operator(m) => {
                let mut d = Self::blank(Kind::Operator, m.domain());
                if m.codomain() != m.domain() {
                    d.codomain_parities = Some(bits(m.codomain()));
                }
                d.map = Some(dump_linear(m));
                d
            }
            Bundle::PhiForm(phi) => {
                let mut d = Self::blank(Kind::PhiForm, phi.space());
                d.n = Some(phi.n());
                d.form = Some(dump(phi.form()));
                d
            }
        }
    }
}

fn bits(s: &GradedSpace) -> Vec<u8> {
    s.parities().iter().map(|p| p.value()).collect()
}

fn sparse_doc(s: &Sparse) -> BTreeMap<usize, String> {
    s.iter().map(|(i, c)| (*i, format_scalar(c))).collect()
}

fn dump(m: &MultiLinearMap) -> Vec<Entry> {
    m.canonical_entries()
        .into_iter()
        .map(|(tuple, v)| Entry {
            tuple,
            value: sparse_doc(&v),
        })
        .collect()
}

fn dump_linear(m: &LinearMap) -> Vec<Entry> {
    m.cols()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(j, c)| Entry {
            tuple: vec![j],
            value: sparse_doc(c),
        })
        .collect()
}

/// Reads a document without interpreting it.
pub fn parse_document(text: &str) -> Result<BundleDocument> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(format!("line {} column {}: {e}", e.line(), e.column())))
}

pub fn parse(text: &str, limits: &Limits) -> Result<Bundle> {
    parse_document(text)?.to_bundle(limits)
}

/// Pretty-printed with a trailing newline.
pub fn to_text<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn serialize(b: &Bundle) -> String {
    to_text(&BundleDocument::from_bundle(b))
}

/// The binary form of a 2-ary pre-Lie representation.
pub fn binary_rep(rep: &PreLieRep) -> Result<HomPreLieRep> {
    if rep.algebra().n() != 2 {
        return Err(Error::shape("a binary representation has n = 2"));
    }
    let alg = HomPreLieSuper::new(rep.algebra().brace().clone(), rep.algebra().alpha().clone())?;
    HomPreLieRep::new(alg, rep.l().clone(), rep.r().clone(), rep.alpha_v().clone())
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ViolationDoc {
    pub tuple: Vec<usize>,
    pub residual: BTreeMap<usize, String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct IdentityDoc {
    pub id: String,
    pub status: Status,
    pub violation_count: usize,
    pub violations: Vec<ViolationDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub input_digest: String,
    pub status: Status,
    pub identities: Vec<IdentityDoc>,
}

/// One entry per identity in report order; violations sorted by tuple.
pub fn identity_docs(report: &ResidualReport) -> Vec<IdentityDoc> {
    report
        .identities()
        .iter()
        .map(|id| {
            let mut violations: Vec<ViolationDoc> = report
                .violations_for(id)
                .map(|v| ViolationDoc {
                    tuple: v.tuple.clone(),
                    residual: sparse_doc(&v.residual),
                })
                .collect();
            violations.sort_by(|a, b| a.tuple.cmp(&b.tuple));
            IdentityDoc {
                id: id.clone(),
                status: Status::of(violations.is_empty()),
                violation_count: violations.len(),
                violations,
            }
        })
        .collect()
}

impl ReportDocument {
    pub fn new(report: &ResidualReport, input_digest: String) -> Self {
        ReportDocument {
            tool: TOOL.into(),
            version: VERSION.into(),
            input_digest,
            status: Status::of(report.holds()),
            identities: identity_docs(report),
        }
    }
}

/// `sha256:` over the length-prefixed inputs, in order.
pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for i in inputs {
        h.update((i.len() as u64).to_le_bytes());
        h.update(i);
    }
    let hex: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}
