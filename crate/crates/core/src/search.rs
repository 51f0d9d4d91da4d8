//! Exhaustive search over even linear maps with entries from a finite grid.
//!
//! Candidates are numbered in mixed radix over the parity-compatible
//! matrix positions (column-major, first position least significant), so a
//! search with the same inputs always returns the same operators in the same
//! order regardless of thread count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Scalar};
use crate::linear::LinearMap;

const CHUNK: u64 = 4096;

#[derive(Clone, Debug)]
pub struct Grid {
    domain: GradedSpace,
    codomain: GradedSpace,
    values: Vec<Scalar>,
    slots: Vec<(usize, usize)>,
}

impl Grid {
    pub fn new(domain: &GradedSpace, codomain: &GradedSpace, values: Vec<Scalar>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::malformed("grid needs at least one value"));
        }
        let mut values = values;
        let mut seen = Vec::new();
        values.retain(|v| {
            let fresh = !seen.contains(v);
            seen.push(v.clone());
            fresh
        });
        let slots = (0..domain.dim())
            .flat_map(|j| (0..codomain.dim()).map(move |i| (i, j)))
            .filter(|&(i, j)| codomain.parity(i) == domain.parity(j))
            .collect();
        Ok(Grid {
            domain: domain.clone(),
            codomain: codomain.clone(),
            values,
            slots,
        })
    }

    /// Number of candidates, or `None` if it does not fit in 64 bits.
    pub fn len(&self) -> Option<u64> {
        let b = self.values.len() as u64;
        self.slots.iter().try_fold(1u64, |acc, _| acc.checked_mul(b))
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn candidate(&self, mut k: u64) -> LinearMap {
        let b = self.values.len() as u64;
        let mut cols = vec![Vec::new(); self.domain.dim()];
        for &(i, j) in &self.slots {
            let v = &self.values[(k % b) as usize];
            k /= b;
            if !num_traits::Zero::is_zero(v) {
                cols[j].push((i, v.clone()));
            }
        }
        LinearMap::new(self.domain.clone(), self.codomain.clone(), cols).expect("grid slots respect parity")
    }

    /// Candidates satisfying `accept`, in enumeration order, at most `limit`.
    pub fn search<F>(&self, limit: Option<usize>, accept: F) -> Result<Vec<LinearMap>>
    where
        F: Fn(&LinearMap) -> bool + Sync,
    {
        let total = self
            .len()
            .ok_or_else(|| Error::Limit("grid has more than 2^64 candidates".into()))?;
        let mut found = Vec::new();
        let mut start = 0;
        while start < total {
            let end = (start + CHUNK).min(total);
            let hits: Vec<LinearMap> = (start..end)
                .into_par_iter()
                .filter_map(|k| {
                    let m = self.candidate(k);
                    accept(&m).then_some(m)
                })
                .collect();
            found.extend(hits);
            if let Some(l) = limit {
                if found.len() >= l {
                    found.truncate(l);
                    break;
                }
            }
            start = end;
        }
        Ok(found)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::scalar;

    #[test]
    fn counts_even_slots_only() {
        let s = GradedSpace::from_bits(&[0, 0, 1]).unwrap();
        let g = Grid::new(&s, &s, vec![scalar(-1), scalar(0), scalar(1)]).unwrap();
        assert_eq!(g.len(), Some(3u64.pow(5)));
        let zero = g.candidate(0);
        assert_eq!(zero.entry(0, 0), scalar(-1));
        let all: Vec<_> = g.search(None, |_| true).unwrap();
        assert_eq!(all.len(), 243);
        let some = g.search(Some(7), |m| m.entry(2, 2) == scalar(1)).unwrap();
        assert_eq!(some.len(), 7);
        assert!(some.windows(2).all(|w| w[0] != w[1]));
    }
}
