//! Combinatorial indices: n-strings, fixed-length composition vectors,
//! their statistics, n-permutation matrices and the row-pair classification
//! that drives the symmetrization formula.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::Model;
use crate::scalar::{powi, Field};

/// A vector over `{0..n}` with trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NString {
    n: usize,
    entries: Vec<usize>,
}

impl NString {
    pub fn new(n: usize, mut entries: Vec<usize>) -> Result<Self> {
        if let Some(&e) = entries.iter().find(|&&e| e > n) {
            return Err(Error::StateOutOfRange { state: e, max: n });
        }
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Ok(NString { n, entries })
    }

    pub fn empty(n: usize) -> Self {
        NString {
            n,
            entries: Vec::new(),
        }
    }

    /// Parses the comma-separated form `"1,2,0,1"`; the empty text is the
    /// empty string.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Ok(Self::empty(n));
        }
        let entries = t
            .split(',')
            .map(|p| {
                usize::from_str(p.trim())
                    .map_err(|_| Error::Precondition(format!("bad string entry {p:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Length of the support, i.e. position of the last nonzero entry.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.entries.iter().sum()
    }

    /// Entry `k` (0-based); zero past the support.
    pub fn get(&self, k: usize) -> usize {
        self.entries.get(k).copied().unwrap_or(0)
    }

    /// The first `width` entries, zero-padded.
    pub fn padded(&self, width: usize) -> Result<Vec<usize>> {
        if width < self.len() {
            return Err(Error::Precondition(format!(
                "width {width} is shorter than the support of {self}"
            )));
        }
        Ok((0..width).map(|k| self.get(k)).collect())
    }

    /// Number of entries equal to `value` within the support.
    pub fn count(&self, value: usize) -> usize {
        self.entries.iter().filter(|&&e| e == value).count()
    }
}

impl fmt::Display for NString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Fixed-length vector over `{0..n}`; nothing is stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CompositionVector {
    n: usize,
    entries: Vec<usize>,
}

impl CompositionVector {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        if let Some(&e) = entries.iter().find(|&&e| e > n) {
            return Err(Error::StateOutOfRange { state: e, max: n });
        }
        Ok(CompositionVector { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.entries.iter().sum()
    }

    pub fn count(&self, value: usize) -> usize {
        self.entries.iter().filter(|&&e| e == value).count()
    }

    /// All vectors of this length and weight, lexicographic.
    pub fn all_with_weight(n: usize, len: usize, weight: usize) -> Vec<CompositionVector> {
        vectors_with_sum(n, len, weight, &vec![n; len])
            .into_iter()
            .map(|entries| CompositionVector { n, entries })
            .collect()
    }
}

impl fmt::Display for CompositionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Lexicographic list of vectors of length `len` with entry `k` bounded by
/// `caps[k]` and total `sum`.
fn vectors_with_sum(n: usize, len: usize, sum: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    fn go(
        n: usize,
        k: usize,
        left: usize,
        caps: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == caps.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let room: usize = caps[k + 1..].iter().map(|&c| c.min(n)).sum();
        for e in 0..=caps[k].min(n).min(left) {
            if left - e <= room {
                cur.push(e);
                go(n, k + 1, left - e, caps, cur, out);
                cur.pop();
            }
        }
    }
    debug_assert_eq!(caps.len(), len);
    let mut out = Vec::new();
    go(n, 0, sum, caps, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Every n-string of the given weight supported in the first `max_width`
/// positions, ordered lexicographically as padded vectors.
pub fn enumerate_nstrings(n: usize, weight: usize, max_width: usize) -> Result<Vec<NString>> {
    if !(1..=2).contains(&n) {
        return Err(Error::Precondition(format!("n must be 1 or 2, got {n}")));
    }
    if weight > n * max_width {
        return Err(Error::Precondition(format!(
            "weight {weight} does not fit in {max_width} positions of capacity {n}"
        )));
    }
    vectors_with_sum(n, max_width, weight, &vec![n; max_width])
        .into_iter()
        .map(|v| NString::new(n, v))
        .collect()
}

/// Weight, the counting functions `c_1`, `c_2` and the constant `c_S(q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StringStats<T> {
    pub weight: usize,
    pub c1: usize,
    pub c2: usize,
    pub c_s: T,
}

/// Statistics of `s`; the model is fixed by `s.n()`.
///
/// IK: `c_S = (-1)^{c1/2} (1-q)^{-c1} q^{-c2} prod_k q^{2 k S_k}`. For odd
/// `c1` the sign is `(-1)^{floor(c1/2)}`, which drops a factor `i`; every
/// bilinear sum using it pairs that factor with matching ones elsewhere.
/// 6V: `c_S = prod_k q^{k S_k}`.
pub fn string_stats<T: Field>(s: &NString, q: &T) -> Result<StringStats<T>> {
    let weight = s.weight();
    let c1 = s.count(1);
    let c2 = s.count(2);
    let moment: i64 = s
        .entries()
        .iter()
        .enumerate()
        .map(|(k, &e)| ((k + 1) * e) as i64)
        .sum();
    let c_s = match s.n() {
        1 => powi(q, moment)?,
        2 => {
            let sign = if (c1 / 2) % 2 == 1 {
                -T::one()
            } else {
                T::one()
            };
            let base = T::one() - q;
            let inv = powi(&base, -(c1 as i64))
                .map_err(|_| Error::Singular(format!("(1-q)^-{c1} at q = {q}")))?;
            sign * inv * powi(q, 2 * moment - c2 as i64)?
        }
        n => return Err(Error::Precondition(format!("no model with n = {n}"))),
    };
    Ok(StringStats {
        weight,
        c1,
        c2,
        c_s,
    })
}

/// `inv(I) = sum_{i<j} I_i (n - I_j)`.
pub fn inversion_number(v: &CompositionVector) -> usize {
    let n = v.n();
    let e = v.entries();
    let mut inv = 0;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            inv += e[i] * (n - e[j]);
        }
    }
    inv
}

/// An `N x W` matrix over `{0..n}` with every row summing to `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoPermMatrix {
    pub n: usize,
    pub rows: Vec<CompositionVector>,
}

impl TwoPermMatrix {
    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, CompositionVector::len)
    }

    /// Column sums, as a fixed-length vector.
    pub fn profile(&self) -> Vec<usize> {
        (0..self.width())
            .map(|c| self.rows.iter().map(|r| r.entries()[c]).sum())
            .collect()
    }
}

impl fmt::Display for TwoPermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", rows.join(" "))
    }
}

/// The n-permutation matrices of size `big_n` with column sums `s`, of width
/// `len(s)` (or `width` when larger), lexicographic in the flattened rows.
pub fn enumerate_two_perm(
    n: usize,
    big_n: usize,
    s: &NString,
    width: Option<usize>,
) -> Result<Vec<TwoPermMatrix>> {
    if s.n() != n {
        return Err(Error::Precondition(format!("{s} is not a {n}-string")));
    }
    if s.weight() != n * big_n {
        return Err(Error::Precondition(format!(
            "|S| = {} but n N = {}",
            s.weight(),
            n * big_n
        )));
    }
    let width = width.unwrap_or(s.len()).max(s.len());
    let profile = s.padded(width)?;
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(big_n);
    fill_rows(n, big_n, &profile, &mut rows, &mut out);
    Ok(out)
}

fn fill_rows(
    n: usize,
    left: usize,
    caps: &[usize],
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<TwoPermMatrix>,
) {
    if left == 0 {
        if caps.iter().all(|&c| c == 0) {
            out.push(TwoPermMatrix {
                n,
                rows: rows
                    .iter()
                    .map(|r| CompositionVector {
                        n,
                        entries: r.clone(),
                    })
                    .collect(),
            });
        }
        return;
    }
    for row in vectors_with_sum(n, caps.len(), n, caps) {
        let rest: Vec<usize> = caps.iter().zip(&row).map(|(c, e)| c - e).collect();
        rows.push(row);
        fill_rows(n, left - 1, &rest, rows, out);
        rows.pop();
    }
}

/// The explicit row-pair patterns of the symmetrization formula. Every other
/// valid pair is the mirror image (rows swapped) of one of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DeltaPattern {
    /// n = 1: the 1 of U sits left of the 1 of V.
    OneBeforeOne,
    /// U = 2 at a, V = 2 at b, a < b.
    TwoBeforeTwo,
    /// U = 2 at a, V = 1,1 at b < c, a < b.
    TwoBeforePair,
    /// U = 1,1 at a < b, V = 2 at c, b < c.
    PairBeforeTwo,
    /// U = 1,1 at a < c, V = 2 at b, a < b < c.
    PairAroundTwo,
    /// Disjoint pairs, U entirely left of V.
    PairBeforePair,
    /// U at a, d and V at b, c with a < b < c < d.
    PairAroundPair,
    /// U at a, c and V at b, d with a < b < c < d.
    Interleaved,
    /// Shared column k is the first column of both rows, U's other 1 comes first.
    SharedFirst,
    /// Shared column k is U's second and V's first column.
    SharedMiddle,
    /// Shared column k is the last column of both rows, U's other 1 comes first.
    SharedLast,
    /// U = V = 1,1 at the same columns k < l.
    SharedBoth,
}

/// Classification of an ordered row pair. Coordinates are 1-based column
/// numbers; `mirrored` means the pattern describes `(V, U)` rather than `(U, V)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DeltaCase {
    pub pattern: DeltaPattern,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub mirrored: bool,
}

/// Occupied columns of a row of weight `n`, 0-based, with multiplicity.
fn support(v: &CompositionVector) -> Vec<usize> {
    v.entries()
        .iter()
        .enumerate()
        .flat_map(|(c, &e)| std::iter::repeat_n(c, e))
        .collect()
}

/// Classifies `(U, V)` into an explicit pattern or the mirror of one.
pub fn classify_row_pair(u: &CompositionVector, v: &CompositionVector) -> Result<DeltaCase> {
    let bad = |why: &str| Error::Precondition(format!("row pair {u} / {v}: {why}"));
    if u.n() != v.n() || u.len() != v.len() {
        return Err(bad("rows differ in arity or width"));
    }
    let n = u.n();
    if u.weight() != n || v.weight() != n {
        return Err(bad("each row must have weight n"));
    }
    if u.entries().iter().zip(v.entries()).any(|(a, b)| a + b > n) {
        return Err(bad("a column exceeds capacity n"));
    }
    if let Some(case) = classify_forward(u, v) {
        return Ok(case);
    }
    classify_forward(v, u)
        .map(|c| DeltaCase {
            mirrored: true,
            ..c
        })
        .ok_or_else(|| bad("no pattern applies"))
}

fn classify_forward(u: &CompositionVector, v: &CompositionVector) -> Option<DeltaCase> {
    use DeltaPattern::*;
    let plain = |pattern| DeltaCase {
        pattern,
        k: None,
        l: None,
        mirrored: false,
    };
    let at = |pattern, k: usize, l: Option<usize>| DeltaCase {
        pattern,
        k: Some(k + 1),
        l: l.map(|l| l + 1),
        mirrored: false,
    };
    let su = support(u);
    let sv = support(v);
    if u.n() == 1 {
        return (su[0] < sv[0]).then(|| plain(OneBeforeOne));
    }
    let u_two = su[0] == su[1];
    let v_two = sv[0] == sv[1];
    let (a, b) = (su[0], su[1]);
    let (c, d) = (sv[0], sv[1]);
    match (u_two, v_two) {
        (true, true) => (a < c).then(|| plain(TwoBeforeTwo)),
        (true, false) => (a < c).then(|| plain(TwoBeforePair)),
        (false, true) => {
            if b < c {
                Some(plain(PairBeforeTwo))
            } else if a < c && c < b {
                Some(plain(PairAroundTwo))
            } else {
                None
            }
        }
        (false, false) => {
            if a == c && b == d {
                Some(at(SharedBoth, a, Some(b)))
            } else if a == c {
                (b < d).then(|| at(SharedFirst, a, None))
            } else if b == c {
                Some(at(SharedMiddle, b, None))
            } else if b == d {
                (a < c).then(|| at(SharedLast, b, None))
            } else if a == d {
                None
            } else if b < c {
                Some(plain(PairBeforePair))
            } else if a < c && d < b {
                Some(plain(PairAroundPair))
            } else if a < c && c < b && b < d {
                Some(plain(Interleaved))
            } else {
                None
            }
        }
    }
}

/// Which model an arity belongs to; convenience for callers holding strings.
pub fn model_of(s: &NString) -> Result<Model> {
    Model::from_n(s.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_parse, Rational};

    fn cv(n: usize, e: &[usize]) -> CompositionVector {
        CompositionVector::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn canonical_form() {
        let s = NString::new(2, vec![0, 2, 0, 0]).unwrap();
        assert_eq!(s.entries(), &[0, 2]);
        assert_eq!(s.to_string(), "(0,2)");
        assert_eq!(NString::parse(2, "1,2,0,1").unwrap().weight(), 4);
        assert!(NString::parse(1, "2").is_err());
    }

    #[test]
    fn nstring_enumeration() {
        let one = enumerate_nstrings(1, 2, 2).unwrap();
        assert_eq!(one, vec![NString::new(1, vec![1, 1]).unwrap()]);
        let two = enumerate_nstrings(2, 2, 2).unwrap();
        let shown: Vec<String> = two.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["(0,2)", "(1,1)", "(2)"]);
        assert_eq!(enumerate_nstrings(2, 4, 3).unwrap().len(), 6);
        assert!(enumerate_nstrings(1, 3, 2).is_err());
    }

    #[test]
    fn stats_examples() {
        let q = rat_parse("1/3").unwrap();
        let st = string_stats(&NString::new(2, vec![2]).unwrap(), &q).unwrap();
        assert_eq!((st.weight, st.c1, st.c2), (2, 0, 1));
        assert_eq!(st.c_s, q.clone() * &q * &q);
        let st = string_stats(&NString::new(1, vec![1, 1]).unwrap(), &q).unwrap();
        assert_eq!(st.c_s, q.clone() * &q * &q);
        let st = string_stats(&NString::empty(2), &q).unwrap();
        assert_eq!(
            (st.weight, st.c1, st.c2, st.c_s),
            (0, 0, 0, Rational::int(1))
        );
        // (1,1): -(1-q)^{-2} q^{2(1+2)}
        let st = string_stats(&NString::new(2, vec![1, 1]).unwrap(), &q).unwrap();
        let one_q = Rational::int(1) - &q;
        assert_eq!(st.c_s, -powi(&q, 6).unwrap() / (one_q.clone() * &one_q));
        let one = Rational::int(1);
        assert!(string_stats(&NString::new(2, vec![1, 1]).unwrap(), &one).is_err());
        // odd c1 keeps only the floor part of the sign
        let st = string_stats(&NString::new(2, vec![1]).unwrap(), &q).unwrap();
        assert_eq!(st.c_s, q.clone() * &q / one_q);
    }

    #[test]
    fn inversions() {
        assert_eq!(inversion_number(&cv(2, &[2, 0])), 4);
        assert_eq!(inversion_number(&cv(1, &[1, 0])), 1);
        assert_eq!(inversion_number(&cv(2, &[0, 0, 0])), 0);
        assert_eq!(inversion_number(&cv(2, &[1, 1])), 1);
    }

    #[test]
    fn two_perm_examples() {
        let s = NString::parse(2, "1,0,2,1").unwrap();
        assert_eq!(enumerate_two_perm(2, 2, &s, None).unwrap().len(), 4);
        let s = NString::parse(2, "2,2").unwrap();
        let m = enumerate_two_perm(2, 2, &s, None).unwrap();
        let shown: Vec<String> = m.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["[(0,2) (2,0)]", "[(1,1) (1,1)]", "[(2,0) (0,2)]"]);
        let s = NString::parse(1, "1,1").unwrap();
        assert_eq!(enumerate_two_perm(1, 2, &s, None).unwrap().len(), 2);
        assert_eq!(
            enumerate_two_perm(2, 2, &NString::parse(2, "1,1,1,1").unwrap(), None)
                .unwrap()
                .len(),
            6
        );
        assert!(enumerate_two_perm(2, 1, &s, None).is_err());
    }

    #[test]
    fn classification_examples() {
        use DeltaPattern::*;
        let c = classify_row_pair(&cv(2, &[2, 0]), &cv(2, &[0, 2])).unwrap();
        assert_eq!((c.pattern, c.mirrored), (TwoBeforeTwo, false));
        let c = classify_row_pair(&cv(2, &[1, 1, 0]), &cv(2, &[0, 1, 1])).unwrap();
        assert_eq!((c.pattern, c.k, c.mirrored), (SharedMiddle, Some(2), false));
        let c = classify_row_pair(&cv(2, &[1, 1]), &cv(2, &[1, 1])).unwrap();
        assert_eq!((c.pattern, c.k, c.l), (SharedBoth, Some(1), Some(2)));
        let c = classify_row_pair(&cv(2, &[0, 1, 1]), &cv(2, &[1, 1, 0])).unwrap();
        assert_eq!((c.pattern, c.k, c.mirrored), (SharedMiddle, Some(2), true));
        let c = classify_row_pair(&cv(2, &[1, 0, 1]), &cv(2, &[1, 1, 0])).unwrap();
        assert_eq!((c.pattern, c.k, c.mirrored), (SharedFirst, Some(1), true));
        assert!(classify_row_pair(&cv(2, &[2, 0]), &cv(2, &[1, 1])).is_err());
    }
}
