//! Residual reports: every basis tuple where an identity fails, with the
//! exact nonzero residual.

use rayon::prelude::*;

use crate::linear::{Sparse, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    /// Zero-based basis indices of all arguments, in the order the identity
    /// lists them.
    pub tuple: Vec<usize>,
    pub residual: Sparse,
}

/// Empty violation list for an identity means it holds on the whole basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResidualReport {
    identities: Vec<String>,
    violations: Vec<Violation>,
}

impl ResidualReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// A report for one identity that was checked and holds.
    pub fn passing(identity: &str) -> Self {
        ResidualReport {
            identities: vec![identity.to_string()],
            violations: Vec::new(),
        }
    }

    pub fn from_violations(identity: &str, violations: Vec<Violation>) -> Self {
        ResidualReport {
            identities: vec![identity.to_string()],
            violations,
        }
    }

    pub fn identities(&self) -> &[String] {
        &self.identities
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn holds_for(&self, identity: &str) -> bool {
        self.violations_for(identity).next().is_none()
    }

    pub fn violations_for<'a>(&'a self, identity: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.identity == identity)
    }

    pub fn violation_count(&self) -> usize {
        self.violations.len()
    }

    pub fn count_for(&self, identity: &str) -> usize {
        self.violations_for(identity).count()
    }

    pub fn merge(&mut self, other: ResidualReport) {
        for id in other.identities {
            if !self.identities.contains(&id) {
                self.identities.push(id);
            }
        }
        self.violations.extend(other.violations);
    }

    pub fn merged(mut self, other: ResidualReport) -> Self {
        self.merge(other);
        self
    }

    /// Renames every identity to `prefix.id`.
    pub fn prefixed(self, prefix: &str) -> Self {
        let rename = |id: &str| format!("{prefix}.{id}");
        ResidualReport {
            identities: self.identities.iter().map(|i| rename(i)).collect(),
            violations: self
                .violations
                .into_iter()
                .map(|mut v| {
                    v.identity = rename(&v.identity);
                    v
                })
                .collect(),
        }
    }

    /// Keeps only the named identities.
    pub fn restricted(&self, ids: &[&str]) -> Self {
        ResidualReport {
            identities: self
                .identities
                .iter()
                .filter(|i| ids.contains(&i.as_str()))
                .cloned()
                .collect(),
            violations: self
                .violations
                .iter()
                .filter(|v| ids.contains(&v.identity.as_str()))
                .cloned()
                .collect(),
        }
    }
}

/// Evaluates `residual` on every tuple in parallel; order of the result
/// follows the order of `tuples`.
pub(crate) fn scan<F>(identity: &str, tuples: Vec<Vec<usize>>, residual: F) -> ResidualReport
where
    F: Fn(&[usize]) -> Vector + Sync,
{
    let violations = tuples
        .into_par_iter()
        .filter_map(|t| {
            let r = residual(&t);
            (!r.is_zero()).then(|| Violation {
                identity: identity.to_string(),
                tuple: t,
                residual: r.to_sparse(),
            })
        })
        .collect();
    ResidualReport::from_violations(identity, violations)
}
