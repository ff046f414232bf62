//! Exponent-vector monomials over a fixed variable set `x_1 > x_2 > ... > x_n`
//! and the pure lexicographic order used everywhere downstream.
//!
//! Variable indices are 1-based in the public API, matching the usual
//! subscript conventions; internally exponents live in a dense vector.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A strictly increasing list of 1-based variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::InvalidInstance(
                "variable indices are 1-based".into(),
            ));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInstance(format!(
                "indices {indices:?} are not strictly increasing"
            )));
        }
        Ok(IndexSet(indices))
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// Collects an arbitrary set of indices, sorting and deduplicating.
    pub fn from_unsorted(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        Self::new(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn min_index(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// `[n] \ self`.
    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet((1..=n).filter(|&i| !self.contains(i)).collect())
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        IndexSet::new(v).map_err(D::Error::custom)
    }
}

/// A monomial in `K[x_1, ..., x_n]`, stored as its exponent vector.
///
/// The ambient `n` is the length of the vector; operations combining two
/// monomials require equal ambients and panic otherwise, since a mismatch
/// is a programming error (the CLI validates its inputs up front).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// `x_i` in ambient `n` (`i` 1-based).
    pub fn variable(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "variable index {i} out of range 1..={n}");
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    /// The squarefree monomial with the given support.
    pub fn squarefree(n: usize, support: &IndexSet) -> Self {
        let mut exps = vec![0; n];
        for i in support.iter() {
            assert!(i >= 1 && i <= n, "support index {i} out of range 1..={n}");
            exps[i - 1] = 1;
        }
        Monomial { exps }
    }

    pub fn ambient(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    /// Exponent of `x_i` (`i` 1-based).
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> IndexSet {
        IndexSet(
            self.exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, _)| k + 1)
                .collect(),
        )
    }

    /// The support listed with multiplicity, weakly increasing.
    pub fn indices_with_multiplicity(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        for (k, &e) in self.exps.iter().enumerate() {
            for _ in 0..e {
                out.push(k + 1);
            }
        }
        out
    }

    fn check_ambient(&self, other: &Self) {
        assert_eq!(
            self.exps.len(),
            other.exps.len(),
            "ambient mismatch: {} vs {}",
            self.exps.len(),
            other.exps.len()
        );
    }

    pub fn product(&self, other: &Self) -> Self {
        self.check_ambient(other);
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.check_ambient(other);
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.check_ambient(other);
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.check_ambient(other);
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// `self / gcd(self, other)`: exponentwise `max(a - b, 0)`.
    pub fn colon(&self, other: &Self) -> Self {
        self.check_ambient(other);
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        }
    }

    /// Exact division, `None` unless `other` divides `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.divides(self) {
            Some(Monomial {
                exps: self
                    .exps
                    .iter()
                    .zip(&other.exps)
                    .map(|(a, b)| a - b)
                    .collect(),
            })
        } else {
            None
        }
    }

    pub fn times_var(&self, i: usize) -> Self {
        let mut exps = self.exps.clone();
        exps[i - 1] += 1;
        Monomial { exps }
    }

    pub fn div_var(&self, i: usize) -> Option<Self> {
        if self.exps[i - 1] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i - 1] -= 1;
        Some(Monomial { exps })
    }

    /// Pure lexicographic comparison with `x_1 > x_2 > ... > x_n`: at the
    /// smallest index where the exponents differ, the larger exponent wins.
    /// Degrees are ignored, so it totally orders monomials of any degrees.
    pub fn cmp_purelex(&self, other: &Self) -> Ordering {
        self.check_ambient(other);
        for (a, b) in self.exps.iter().zip(&other.exps) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Reads either the text form `"x2*x4*x9"` (with optional `^e` powers
    /// and an optional literal `"1"`) or a JSON exponent list
    /// `[0,1,0,1,...]`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let s = text.trim();
        if s.starts_with('[') {
            let exps: Vec<u32> = serde_json::from_str(s)
                .map_err(|e| Error::Parse(format!("exponent list {s:?}: {e}")))?;
            if exps.len() != n {
                return Err(Error::Parse(format!(
                    "exponent list has {} entries, ambient is {n}",
                    exps.len()
                )));
            }
            return Ok(Monomial { exps });
        }
        let mut exps = vec![0u32; n];
        if s == "1" {
            return Ok(Monomial { exps });
        }
        for factor in s.split('*') {
            let f = factor.trim();
            let rest = f
                .strip_prefix('x')
                .ok_or_else(|| Error::Parse(format!("factor {f:?} (expected x<i> or x<i>^<e>)")))?;
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e),
                None => (rest, "1"),
            };
            let i: usize = idx
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("variable index in {f:?}")))?;
            let e: u32 = exp
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("exponent in {f:?}")))?;
            if i == 0 || i > n {
                return Err(Error::Parse(format!("x{i} out of range 1..={n}")));
            }
            exps[i - 1] += e;
        }
        Ok(Monomial { exps })
    }

    /// Largest variable index mentioned in the text form, for inferring an
    /// ambient when none is given.
    pub fn max_index_in_text(text: &str) -> Result<usize> {
        let s = text.trim();
        if s == "1" {
            return Ok(1);
        }
        let mut max = 0usize;
        for factor in s.split('*') {
            let f = factor.trim();
            let rest = f
                .strip_prefix('x')
                .ok_or_else(|| Error::Parse(format!("factor {f:?}")))?;
            let idx = rest.split_once('^').map(|(i, _)| i).unwrap_or(rest);
            let i: usize = idx
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("variable index in {f:?}")))?;
            max = max.max(i);
        }
        if max == 0 {
            return Err(Error::Parse(format!("no variables in {s:?}")));
        }
        Ok(max)
    }
}

/// Sorts a list into decreasing pure lexicographic order.
pub fn sort_purelex_descending(monomials: &mut [Monomial]) {
    monomials.sort_by(|a, b| b.cmp_purelex(a));
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", k + 1)?;
            } else {
                write!(f, "x{}^{}", k + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `Ord` is the canonical ordering used for deterministic containers:
/// *increasing* pure lex. Use [`sort_purelex_descending`] or
/// [`Monomial::cmp_purelex`] directly when the direction matters.
impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_purelex(other)
    }
}
