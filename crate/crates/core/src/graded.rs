//! Exact scalars, ℤ₂-parity bookkeeping and Koszul signs.
//!
//! Sign conventions: a reordering of homogeneous elements contributes the
//! graded commutation factor `(-1)^{|a||b|}` for every pair that crosses
//! ([`koszul_sign`]); the plain permutation sign is kept separate
//! ([`permutation_sign`]) and multiplied in by the callers that implement
//! skew-symmetry rules.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always kept in lowest terms with a positive
/// denominator by `num-rational`.
pub type Scalar = BigRational;

pub fn scalar(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::malformed(format!("malformed rational `{text}`"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::malformed(format!("zero denominator in `{text}`")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(t).map_err(|_| bad())?,
        )),
    }
}

/// Integers print bare, everything else as `p/q`.
pub fn format_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Multiplies by `(-1)^parity`.
pub(crate) fn signed(s: Scalar, negate: Parity) -> Scalar {
    if negate.is_odd() {
        -s
    } else {
        s
    }
}

/// `(-1)^parity` as a scalar.
pub fn sign_of(p: Parity) -> Scalar {
    signed(Scalar::one(), p)
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Parity(u8);

impl Parity {
    pub const EVEN: Parity = Parity(0);
    pub const ODD: Parity = Parity(1);

    pub fn new(v: u8) -> Result<Parity> {
        match v {
            0 | 1 => Ok(Parity(v)),
            _ => Err(Error::malformed(format!("parity must be 0 or 1, got {v}"))),
        }
    }

    pub fn from_bool(odd: bool) -> Parity {
        Parity(odd as u8)
    }

    pub fn is_odd(self) -> bool {
        self.0 == 1
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// `(-1)^self` as a machine integer.
    pub fn sign(self) -> i64 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }

    pub fn sum<I: IntoIterator<Item = Parity>>(it: I) -> Parity {
        it.into_iter().fold(Parity::EVEN, |a, b| a + b)
    }
}

// Arithmetic in Z/2: addition is xor, multiplication is and.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Parity {
    fn add_assign(&mut self, rhs: Parity) {
        self.0 ^= rhs.0;
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for Parity {
    type Output = Parity;
    fn mul(self, rhs: Parity) -> Parity {
        Parity(self.0 & rhs.0)
    }
}

/// Integer exponent `k` reduced mod 2, for plain signs like `(-1)^{n-i}`.
impl From<usize> for Parity {
    fn from(k: usize) -> Parity {
        Parity((k % 2) as u8)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite homogeneous basis: one parity per basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    parities: Vec<Parity>,
}

impl GradedSpace {
    pub fn new(parities: Vec<Parity>) -> Result<Self> {
        if parities.is_empty() {
            return Err(Error::malformed("a graded space needs dimension >= 1"));
        }
        Ok(GradedSpace { parities })
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let parities = bits.iter().map(|&b| Parity::new(b)).collect::<Result<_>>()?;
        GradedSpace::new(parities)
    }

    /// The one-dimensional even space (ground field).
    pub fn ground() -> Self {
        GradedSpace {
            parities: vec![Parity::EVEN],
        }
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            })
        }
    }

    /// `self ⊕ other`, basis of `self` first.
    pub fn direct_sum(&self, other: &GradedSpace) -> GradedSpace {
        let mut parities = self.parities.clone();
        parities.extend_from_slice(&other.parities);
        GradedSpace { parities }
    }

    /// `self ⊗ other` with basis `(a, b) ↦ a * dim(other) + b`.
    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        let mut parities = Vec::with_capacity(self.dim() * other.dim());
        for &p in &self.parities {
            for &q in &other.parities {
                parities.push(p + q);
            }
        }
        GradedSpace { parities }
    }
}

/// Mod-2 sum of the parities of the indexed basis vectors.
pub fn tuple_parity(indices: &[usize], space: &GradedSpace) -> Result<Parity> {
    let mut p = Parity::EVEN;
    for &i in indices {
        space.check_index(i)?;
        p += space.parity(i);
    }
    Ok(p)
}

fn check_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::malformed(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Graded commutation factor of a reordering.
///
/// `perm[k]` is the original position of the element that ends up at
/// position `k`; `parities[j]` is the parity of the element originally at
/// position `j`. Every pair that changes relative order contributes
/// `(-1)^{p_i p_j}`.
pub fn koszul_sign(perm: &[usize], parities: &[Parity]) -> Result<i64> {
    if perm.len() != parities.len() {
        return Err(Error::malformed(
            "permutation and parity list differ in length",
        ));
    }
    check_permutation(perm)?;
    let mut e = Parity::EVEN;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                e += parities[perm[a]] * parities[perm[b]];
            }
        }
    }
    Ok(e.sign())
}

/// `(-1)^{inversions}`.
pub fn permutation_sign(perm: &[usize]) -> Result<i64> {
    check_permutation(perm)?;
    let mut inv = 0usize;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inv += 1;
            }
        }
    }
    Ok(Parity::from(inv).sign())
}

/// Canonical storage key for a tuple that is super-skew-symmetric in its
/// first `prefix` slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexTupleKey {
    pub indices: Vec<usize>,
    /// `+1` or `-1`: `value(original) = sign * value(indices)`.
    pub sign: i64,
    /// A repeated even index inside the skew prefix forces the value to zero.
    pub zero: bool,
}

/// Stable-sorts the skew prefix ascending. Each adjacent transposition of
/// `a, b` contributes `-(-1)^{|a||b|}`; equal neighbours are never swapped.
pub fn canonical_skew_key(
    indices: &[usize],
    space: &GradedSpace,
    prefix: usize,
) -> Result<IndexTupleKey> {
    if prefix > indices.len() {
        return Err(Error::malformed(format!(
            "skew prefix {prefix} longer than tuple of length {}",
            indices.len()
        )));
    }
    for &i in indices {
        space.check_index(i)?;
    }
    let (sorted, sign, zero) = canonicalize_prefix(indices, prefix, |i| space.parity(i));
    Ok(IndexTupleKey {
        indices: sorted,
        sign,
        zero,
    })
}

/// Insertion sort on the prefix with sign tracking. Works for any parity
/// lookup so mixed-space tuples can share it.
pub(crate) fn canonicalize_prefix(
    indices: &[usize],
    prefix: usize,
    parity: impl Fn(usize) -> Parity,
) -> (Vec<usize>, i64, bool) {
    let mut v = indices.to_vec();
    let mut e = Parity::EVEN;
    for a in 1..prefix {
        let mut b = a;
        while b > 0 && v[b - 1] > v[b] {
            e += Parity::ODD + parity(v[b - 1]) * parity(v[b]);
            v.swap(b - 1, b);
            b -= 1;
        }
    }
    let zero = (1..prefix).any(|a| v[a - 1] == v[a] && !parity(v[a]).is_odd());
    (v, e.sign(), zero)
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let even = self.parities.iter().filter(|p| !p.is_odd()).count();
        write!(f, "({}|{})", even, self.dim() - even)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(bits: &[u8]) -> Vec<Parity> {
        bits.iter().map(|&b| Parity::new(b).unwrap()).collect()
    }

    fn space(bits: &[u8]) -> GradedSpace {
        GradedSpace::from_bits(bits).unwrap()
    }

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_sign(&[0, 1, 2], &ps(&[1, 1, 0])).unwrap(), 1);
        assert_eq!(koszul_sign(&[1, 0], &ps(&[1, 1])).unwrap(), -1);
        // odd element at position 0 moved past two even ones
        assert_eq!(koszul_sign(&[1, 2, 0], &ps(&[1, 0, 0])).unwrap(), 1);
    }

    #[test]
    fn koszul_rejects_non_permutation() {
        assert!(koszul_sign(&[0, 0], &ps(&[0, 0])).is_err());
        assert!(koszul_sign(&[0, 2], &ps(&[0, 0])).is_err());
        assert!(permutation_sign(&[1, 1]).is_err());
    }

    #[test]
    fn tuple_parity_examples() {
        let s = space(&[0, 1]);
        assert_eq!(tuple_parity(&[0, 1], &s).unwrap(), Parity::ODD);
        assert_eq!(tuple_parity(&[], &s).unwrap(), Parity::EVEN);
        assert_eq!(tuple_parity(&[1, 1], &s).unwrap(), Parity::EVEN);
        assert!(tuple_parity(&[2], &s).is_err());
    }

    #[test]
    fn canonical_key_examples() {
        let s = space(&[0, 0]);
        let k = canonical_skew_key(&[1, 0], &s, 2).unwrap();
        assert_eq!((k.indices, k.sign, k.zero), (vec![0, 1], -1, false));
        assert!(canonical_skew_key(&[0, 0], &s, 2).unwrap().zero);

        let s = space(&[0, 1]);
        let k = canonical_skew_key(&[1, 1], &s, 2).unwrap();
        assert_eq!((k.indices, k.sign, k.zero), (vec![1, 1], 1, false));
    }

    #[test]
    fn canonical_key_respects_prefix() {
        let s = space(&[0, 0, 0]);
        let k = canonical_skew_key(&[2, 1, 0], &s, 2).unwrap();
        assert_eq!((k.indices, k.sign), (vec![1, 2, 0], -1));
        assert!(canonical_skew_key(&[0, 1], &s, 3).is_err());
    }

    #[test]
    fn scalar_text_round_trip() {
        for t in ["0", "-3", "5/7", "-12/8"] {
            let s = parse_scalar(t).unwrap();
            assert_eq!(parse_scalar(&format_scalar(&s)).unwrap(), s);
        }
        assert_eq!(format_scalar(&parse_scalar("-12/8").unwrap()), "-3/2");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1.5").is_err());
    }
}
