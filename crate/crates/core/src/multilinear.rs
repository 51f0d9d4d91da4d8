//! Structure-constant tables for even multilinear maps that are
//! super-skew-symmetric in a leading block of slots.
//!
//! The table is dense over all input tuples (mixed radix) and sparse in the
//! output. Every constructor except [`MultiLinearMap::raw`] guarantees that
//! the stored table is consistent with the declared symmetry.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graded::{canonicalize_prefix, GradedSpace, Parity, Scalar};
use crate::linear::{LinearMap, Sparse, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiLinearMap {
    inputs: Vec<GradedSpace>,
    output: GradedSpace,
    skew: usize,
    raw: bool,
    strides: Vec<usize>,
    table: Vec<Sparse>,
}

fn strides_of(inputs: &[GradedSpace]) -> (Vec<usize>, usize) {
    let mut strides = vec![0; inputs.len()];
    let mut acc = 1usize;
    for s in (0..inputs.len()).rev() {
        strides[s] = acc;
        acc *= inputs[s].dim();
    }
    (strides, acc)
}

fn check_shape(inputs: &[GradedSpace], skew: usize) -> Result<()> {
    if inputs.is_empty() {
        return Err(Error::shape("a multilinear map needs at least one input"));
    }
    if skew > inputs.len() {
        return Err(Error::shape(format!(
            "skew block of {skew} slots exceeds arity {}",
            inputs.len()
        )));
    }
    if inputs[..skew].iter().any(|s| *s != inputs[0]) {
        return Err(Error::shape("skew slots must share one space"));
    }
    Ok(())
}

fn negate_sparse(s: &Sparse) -> Sparse {
    s.iter().map(|(i, c)| (*i, -c.clone())).collect()
}

fn normalize(dim: usize, s: &[(usize, Scalar)]) -> Sparse {
    Vector::from_sparse(dim, s).to_sparse()
}

impl MultiLinearMap {
    fn blank(inputs: Vec<GradedSpace>, output: GradedSpace, skew: usize) -> Result<Self> {
        check_shape(&inputs, skew)?;
        let (strides, count) = strides_of(&inputs);
        Ok(MultiLinearMap {
            inputs,
            output,
            skew,
            raw: false,
            strides,
            table: vec![Vec::new(); count],
        })
    }

    pub fn zero(inputs: Vec<GradedSpace>, output: GradedSpace, skew: usize) -> Result<Self> {
        Self::blank(inputs, output, skew)
    }

    /// Evaluates `f` on every basis tuple and verifies evenness and the
    /// declared super-skew symmetry, failing with the first offending tuple.
    pub fn from_fn<F>(inputs: Vec<GradedSpace>, output: GradedSpace, skew: usize, f: F) -> Result<Self>
    where
        F: Fn(&[usize]) -> Vector + Sync,
    {
        let mut m = Self::blank(inputs, output, skew)?;
        let table: Vec<Sparse> = (0..m.table.len())
            .into_par_iter()
            .map(|flat| f(&m.tuple_at(flat)).to_sparse())
            .collect();
        m.table = table;
        m.validate()?;
        Ok(m)
    }

    /// Builds from explicit entries. Keys are canonicalized; an entry and its
    /// permuted duplicates must agree, a repeated even index in the skew block
    /// must carry zero, and every output coefficient must respect parity.
    pub fn from_entries<I>(inputs: Vec<GradedSpace>, output: GradedSpace, skew: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Sparse)>,
    {
        let mut m = Self::blank(inputs, output, skew)?;
        let mut canon: BTreeMap<Vec<usize>, Sparse> = BTreeMap::new();
        for (tuple, value) in entries {
            m.check_tuple(&tuple)?;
            let value = normalize(m.output.dim(), &value);
            m.check_parity(&tuple, &value)?;
            let (key, sign, zero) = m.canonical(&tuple);
            if zero {
                if !value.is_empty() {
                    return Err(Error::Inconsistent {
                        tuple,
                        detail: "a repeated even argument in the skew slots forces zero".into(),
                    });
                }
                continue;
            }
            let value = if sign < 0 { negate_sparse(&value) } else { value };
            match canon.get(&key) {
                Some(prev) if *prev != value => {
                    return Err(Error::Inconsistent {
                        tuple,
                        detail: "disagrees with another entry related by super-skew symmetry".into(),
                    })
                }
                _ => {
                    canon.insert(key, value);
                }
            }
        }
        for flat in 0..m.table.len() {
            let t = m.tuple_at(flat);
            let (key, sign, zero) = m.canonical(&t);
            if zero {
                continue;
            }
            if let Some(v) = canon.get(&key) {
                m.table[flat] = if sign < 0 { negate_sparse(v) } else { v.clone() };
            }
        }
        Ok(m)
    }

    /// Places entries exactly where given, with no symmetry fill. Evenness is
    /// still enforced. Used for externally supplied data that is checked
    /// afterwards for super-skew symmetry.
    pub fn raw<I>(inputs: Vec<GradedSpace>, output: GradedSpace, skew: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Sparse)>,
    {
        let mut m = Self::blank(inputs, output, skew)?;
        m.raw = true;
        for (tuple, value) in entries {
            m.check_tuple(&tuple)?;
            let value = normalize(m.output.dim(), &value);
            m.check_parity(&tuple, &value)?;
            let flat = m.flat(&tuple);
            if !m.table[flat].is_empty() {
                return Err(Error::Inconsistent {
                    tuple,
                    detail: "listed twice".into(),
                });
            }
            m.table[flat] = value;
        }
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let bad = (0..self.table.len()).into_par_iter().find_map_first(|flat| {
            let t = self.tuple_at(flat);
            if let Err(e) = self.check_parity(&t, &self.table[flat]) {
                return Some(e);
            }
            let (key, sign, zero) = self.canonical(&t);
            let expected = if zero {
                Vec::new()
            } else if sign < 0 {
                negate_sparse(&self.table[self.flat(&key)])
            } else {
                self.table[self.flat(&key)].clone()
            };
            (expected != self.table[flat]).then(|| Error::Inconsistent {
                tuple: t,
                detail: "value violates the declared super-skew symmetry".into(),
            })
        });
        bad.map_or(Ok(()), Err)
    }

    fn check_tuple(&self, t: &[usize]) -> Result<()> {
        if t.len() != self.arity() {
            return Err(Error::shape(format!(
                "tuple {t:?} has length {}, expected {}",
                t.len(),
                self.arity()
            )));
        }
        for (s, &i) in t.iter().enumerate() {
            self.inputs[s].check_index(i)?;
        }
        Ok(())
    }

    fn check_parity(&self, t: &[usize], value: &[(usize, Scalar)]) -> Result<()> {
        let p = self.tuple_parity(t);
        for (k, _) in value {
            self.output.check_index(*k)?;
            if self.output.parity(*k) != p {
                return Err(Error::Parity {
                    context: format!("entry {:?}", t.iter().map(|i| i + 1).collect::<Vec<_>>()),
                    detail: format!(
                        "output basis vector {} has parity {}, arguments have total parity {}",
                        k + 1,
                        self.output.parity(*k),
                        p
                    ),
                });
            }
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    pub fn inputs(&self) -> &[GradedSpace] {
        &self.inputs
    }

    pub fn input(&self, slot: usize) -> &GradedSpace {
        &self.inputs[slot]
    }

    pub fn output(&self) -> &GradedSpace {
        &self.output
    }

    pub fn skew(&self) -> usize {
        self.skew
    }

    pub fn is_raw(&self) -> bool {
        self.raw
    }

    pub fn tuple_count(&self) -> usize {
        self.table.len()
    }

    pub fn flat(&self, t: &[usize]) -> usize {
        t.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }

    pub fn tuple_at(&self, mut flat: usize) -> Vec<usize> {
        let mut t = vec![0; self.arity()];
        for s in 0..self.arity() {
            t[s] = flat / self.strides[s];
            flat %= self.strides[s];
        }
        t
    }

    pub fn tuple_parity(&self, t: &[usize]) -> Parity {
        Parity::sum(t.iter().enumerate().map(|(s, &i)| self.inputs[s].parity(i)))
    }

    /// `(canonical tuple, sign, forced zero)` for the skew block.
    pub fn canonical(&self, t: &[usize]) -> (Vec<usize>, i64, bool) {
        if self.skew == 0 {
            return (t.to_vec(), 1, false);
        }
        let sp = &self.inputs[0];
        canonicalize_prefix(t, self.skew, |i| sp.parity(i))
    }

    pub fn value(&self, t: &[usize]) -> &Sparse {
        &self.table[self.flat(t)]
    }

    pub fn value_vector(&self, t: &[usize]) -> Vector {
        Vector::from_sparse(self.output.dim(), self.value(t))
    }

    /// Multilinear evaluation on sparse arguments.
    pub fn eval(&self, args: &[&[(usize, Scalar)]]) -> Vector {
        let n = self.arity();
        assert_eq!(args.len(), n, "argument count must match arity");
        let mut out = Vector::zeros(self.output.dim());
        if args.iter().any(|a| a.is_empty()) {
            return out;
        }
        let mut pos = vec![0usize; n];
        loop {
            let flat: usize = (0..n).map(|s| args[s][pos[s]].0 * self.strides[s]).sum();
            let entry = &self.table[flat];
            if !entry.is_empty() {
                let mut coeff = Scalar::one();
                for s in 0..n {
                    coeff *= &args[s][pos[s]].1;
                }
                out.add_sparse(entry, &coeff);
            }
            let mut s = n;
            loop {
                if s == 0 {
                    return out;
                }
                s -= 1;
                pos[s] += 1;
                if pos[s] < args[s].len() {
                    break;
                }
                pos[s] = 0;
            }
        }
    }

    pub fn eval_vectors(&self, args: &[&Vector]) -> Vector {
        let sparse: Vec<Sparse> = args.iter().map(|v| v.to_sparse()).collect();
        let refs: Vec<&[(usize, Scalar)]> = sparse.iter().map(Vec::as_slice).collect();
        self.eval(&refs)
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    /// Nonzero entries on canonical tuples (all nonzero tuples for raw
    /// tables), in lexicographic order.
    pub fn canonical_entries(&self) -> Vec<(Vec<usize>, Sparse)> {
        (0..self.table.len())
            .filter(|&f| !self.table[f].is_empty())
            .map(|f| self.tuple_at(f))
            .filter(|t| self.raw || self.canonical(t).0 == *t)
            .map(|t| {
                let v = self.value(&t).clone();
                (t, v)
            })
            .collect()
    }

    /// Post-composes every value with an even map on the output space.
    pub fn map_output(&self, map: &LinearMap) -> Result<Self> {
        if *map.domain() != self.output {
            return Err(Error::shape("output map does not start at the output space"));
        }
        let mut m = self.clone();
        m.output = map.codomain().clone();
        m.table = self
            .table
            .par_iter()
            .map(|v| map.apply_sparse(v).to_sparse())
            .collect();
        Ok(m)
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut m = self.clone();
        for v in &mut m.table {
            *v = if c.is_zero() {
                Vec::new()
            } else {
                v.iter().map(|(i, x)| (*i, x * c)).collect()
            };
        }
        m
    }

    /// Same table with a different (weaker or equal) skew declaration,
    /// validated.
    pub fn with_skew(&self, skew: usize) -> Result<Self> {
        check_shape(&self.inputs, skew)?;
        let mut m = self.clone();
        m.skew = skew;
        m.raw = false;
        m.validate()?;
        Ok(m)
    }

    /// Residuals of every adjacent transposition inside the skew block:
    /// `value(t) + (-1)^{|t_a||t_{a+1}|} value(t with a, a+1 swapped)`.
    /// Reports the first failing transposition per tuple.
    pub fn symmetry_residuals(&self) -> Vec<(Vec<usize>, Vector)> {
        if self.skew < 2 {
            return Vec::new();
        }
        let sp = &self.inputs[0];
        (0..self.table.len())
            .into_par_iter()
            .filter_map(|flat| {
                let t = self.tuple_at(flat);
                for a in 0..self.skew - 1 {
                    if t[a] > t[a + 1] {
                        continue;
                    }
                    let mut s = t.clone();
                    s.swap(a, a + 1);
                    let mut r = self.value_vector(&t);
                    let c = if (sp.parity(t[a]) * sp.parity(t[a + 1])).is_odd() {
                        -Scalar::one()
                    } else {
                        Scalar::one()
                    };
                    r.add_sparse(self.value(&s), &c);
                    if !r.is_zero() {
                        return Some((t, r));
                    }
                }
                None
            })
            .collect()
    }
}

/// Dense table with no symmetry declared and no validation. Used for
/// intermediate tables inside checkers, where inputs may be inconsistent.
pub(crate) fn tabulate<F>(inputs: Vec<GradedSpace>, output: GradedSpace, f: F) -> MultiLinearMap
where
    F: Fn(&[usize]) -> Vector + Sync,
{
    let mut m = MultiLinearMap::blank(inputs, output, 0).expect("non-empty inputs");
    let table: Vec<Sparse> = (0..m.table.len())
        .into_par_iter()
        .map(|flat| f(&m.tuple_at(flat)).to_sparse())
        .collect();
    m.table = table;
    m
}

/// One block of an index-tuple enumeration.
#[derive(Clone, Debug)]
pub enum Segment<'a> {
    /// Every tuple of `len` indices below `dim`.
    All { dim: usize, len: usize },
    /// Non-decreasing tuples without repeated even indices.
    Canonical { space: &'a GradedSpace, len: usize },
}

fn push_segment(seg: &Segment<'_>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, rest: &[Segment<'_>]) {
    fn go(
        seg: &Segment<'_>,
        k: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        rest: &[Segment<'_>],
    ) {
        let (len, dim) = match seg {
            Segment::All { dim, len } => (*len, *dim),
            Segment::Canonical { space, len } => (*len, space.dim()),
        };
        if k == len {
            match rest.split_first() {
                Some((next, tail)) => push_segment(next, prefix, out, tail),
                None => out.push(prefix.clone()),
            }
            return;
        }
        let start = match seg {
            Segment::All { .. } => 0,
            Segment::Canonical { space, .. } => match (k > 0).then(|| prefix[prefix.len() - 1]) {
                Some(last) if space.parity(last).is_odd() => last,
                Some(last) => last + 1,
                None => 0,
            },
        };
        for i in start..dim {
            prefix.push(i);
            go(seg, k + 1, prefix, out, rest);
            prefix.pop();
        }
    }
    go(seg, 0, prefix, out, rest);
}

/// Concatenated enumeration of the given segments in lexicographic order.
pub fn enumerate_tuples(segments: &[Segment<'_>]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    match segments.split_first() {
        Some((first, rest)) => push_segment(first, &mut Vec::new(), &mut out, rest),
        None => out.push(Vec::new()),
    }
    out
}
