//! Weyl group elements, reduced words and the Bruhat order.
//!
//! An element is stored as its integer matrix on `E` in the simple-root
//! basis: column `j` holds the coordinates of `w(α_j)`. Matrices give a
//! canonical representative, so equality and hashing are entrywise.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::exact_linalg::{QMatrix, Rational};
use crate::root_system::{RootSystem, RootVector};

/// A word in the simple reflections; letters are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, rank: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l == 0 || l > rank) {
            Some(&bad) => Err(Error::IndexOutOfRange { index: bad, bound: rank }),
            None => Ok(()),
        }
    }

    /// The subword made of the letters at the (1-based) positions of `d`.
    pub fn restrict(&self, d: &Diagram) -> Word {
        Word(d.members().iter().map(|&k| self.0[k - 1]).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{l}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    matrix: Vec<i64>,
    length: usize,
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded order: by length, ties broken by matrix entries. This is a total
/// order used for deterministic output, not the Bruhat order.
impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length
            .cmp(&other.length)
            .then_with(|| self.rank.cmp(&other.rank))
            .then_with(|| self.matrix.cmp(&other.matrix))
    }
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        let n = rs.rank();
        let mut matrix = vec![0; n * n];
        for i in 0..n {
            matrix[i * n + i] = 1;
        }
        WeylElement { rank: n, matrix, length: 0 }
    }

    /// Builds an element from a raw matrix, counting inversions for the length.
    /// The caller guarantees the matrix comes from the Weyl group of `rs`.
    pub fn from_matrix(rs: &RootSystem, matrix: Vec<i64>) -> Result<Self> {
        let n = rs.rank();
        if matrix.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: matrix.len() });
        }
        let mut e = WeylElement { rank: n, matrix, length: 0 };
        e.length = e.count_inversions(rs);
        Ok(e)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Row-major integer matrix.
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        let entries = self.matrix.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect();
        QMatrix::new(self.rank, self.rank, entries).expect("square")
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn apply(&self, v: &RootVector) -> RootVector {
        let n = self.rank;
        RootVector((0..n).map(|r| (0..n).map(|c| self.matrix[r * n + c] * v.0[c]).sum()).collect())
    }

    /// Image of the simple root `α_{i+1}`, read straight off column `i`.
    fn column(&self, i: usize) -> impl Iterator<Item = i64> + '_ {
        let n = self.rank;
        (0..n).map(move |r| self.matrix[r * n + i])
    }

    /// `ℓ(w·s_{i+1}) < ℓ(w)`, i.e. `w(α_{i+1})` is a negative root.
    pub(crate) fn has_right_descent(&self, i: usize) -> bool {
        self.column(i).all(|c| c <= 0)
    }

    /// `w·s_{i+1}`. Only the columns change: `col_j -= a_ij·col_i`.
    pub(crate) fn mul_simple_right(&self, rs: &RootSystem, i: usize) -> Self {
        let n = self.rank;
        let descent = self.has_right_descent(i);
        let mut matrix = self.matrix.clone();
        for j in 0..n {
            let a = rs.cartan_entry(i, j);
            if a == 0 {
                continue;
            }
            for r in 0..n {
                matrix[r * n + j] -= a * self.matrix[r * n + i];
            }
        }
        let length = if descent { self.length - 1 } else { self.length + 1 };
        WeylElement { rank: n, matrix, length }
    }

    pub fn mul(&self, rs: &RootSystem, other: &WeylElement) -> Self {
        let n = self.rank;
        let mut matrix = vec![0; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.matrix[r * n + k];
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    matrix[r * n + c] += a * other.matrix[k * n + c];
                }
            }
        }
        let mut e = WeylElement { rank: n, matrix, length: 0 };
        e.length = e.count_inversions(rs);
        e
    }

    fn count_inversions(&self, rs: &RootSystem) -> usize {
        rs.positive_roots().iter().filter(|b| self.apply(b).is_negative()).count()
    }

    /// One reduced word, obtained by peeling off right descents.
    pub fn reduced_word(&self, rs: &RootSystem) -> Word {
        let mut letters = Vec::with_capacity(self.length);
        let mut v = self.clone();
        while !v.is_identity() {
            let i = (0..self.rank).find(|&i| v.has_right_descent(i)).expect("nontrivial element");
            letters.push(i + 1);
            v = v.mul_simple_right(rs, i);
        }
        letters.reverse();
        Word(letters)
    }
}

pub fn from_word(rs: &RootSystem, word: &Word) -> Result<WeylElement> {
    word.validate(rs.rank())?;
    Ok(word
        .letters()
        .iter()
        .fold(WeylElement::identity(rs), |acc, &l| acc.mul_simple_right(rs, l - 1)))
}

pub fn length(e: &WeylElement) -> usize {
    e.length()
}

/// Out-of-range letters make a word non-reduced rather than an error.
pub fn is_reduced(rs: &RootSystem, word: &Word) -> bool {
    from_word(rs, word).is_ok_and(|e| e.length() == word.len())
}

/// Bruhat order test by descent recursion.
///
/// Uses the right-handed form of the lifting property: if `v·s < v` then
/// `u ≤ v` iff `u·s ≤ v·s` (when `u·s < u`) or `u ≤ v·s` (otherwise). The
/// recursion never branches, so it runs in `ℓ(v)` steps without a cache.
pub fn bruhat_leq(rs: &RootSystem, u: &WeylElement, v: &WeylElement) -> bool {
    let mut u = u.clone();
    let mut v = v.clone();
    loop {
        if u.length() > v.length() {
            return false;
        }
        if v.is_identity() {
            return u.is_identity();
        }
        if u == v {
            return true;
        }
        let i = (0..v.rank()).find(|&i| v.has_right_descent(i)).expect("nontrivial element");
        if u.has_right_descent(i) {
            u = u.mul_simple_right(rs, i);
        }
        v = v.mul_simple_right(rs, i);
    }
}

/// `w^Δ`: the product of the letters of `ambient_word` at the positions of `d`.
pub fn subexpression_element(
    rs: &RootSystem,
    ambient_word: &Word,
    d: &Diagram,
) -> Result<WeylElement> {
    ambient_word.validate(rs.rank())?;
    if let Some(m) = d.max_member().filter(|&m| m > ambient_word.len()) {
        return Err(Error::IndexOutOfRange { index: m, bound: ambient_word.len() });
    }
    from_word(rs, &ambient_word.restrict(d))
}

/// All elements `w^Δ` for `Δ ⊆ {1..N}`, i.e. the Bruhat interval `[e, w]`.
///
/// Expands subwords letter by letter, deduplicating after each letter, so
/// the cost is governed by the interval size rather than `2^N`. Sorted by
/// length, then matrix.
pub fn bruhat_interval(rs: &RootSystem, w: &WeylElement, ambient_word: &Word) -> Result<Vec<WeylElement>> {
    bruhat_interval_bounded(rs, w, ambient_word, usize::MAX)
}

/// [`bruhat_interval`] that gives up once more than `limit` elements are found.
pub fn bruhat_interval_bounded(
    rs: &RootSystem,
    w: &WeylElement,
    ambient_word: &Word,
    limit: usize,
) -> Result<Vec<WeylElement>> {
    let built = from_word(rs, ambient_word)?;
    if built.length() != ambient_word.len() {
        return Err(Error::NotReduced(ambient_word.0.clone()));
    }
    if &built != w {
        return Err(Error::WordMismatch);
    }
    let mut seen: HashSet<WeylElement> = HashSet::new();
    seen.insert(WeylElement::identity(rs));
    for &l in ambient_word.letters() {
        let extended: Vec<WeylElement> =
            seen.iter().map(|e| e.mul_simple_right(rs, l - 1)).collect();
        seen.extend(extended);
        if seen.len() > limit {
            return Err(Error::IntervalTooLarge { limit });
        }
    }
    let mut out: Vec<WeylElement> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The rightmost reduced subexpression for `u` inside `ambient_word`.
///
/// Scans positions from `N` down to `1`, keeping position `k` whenever the
/// current remainder has `s_{i_k}` as a right descent. The scan empties the
/// remainder exactly when `u ≤ w`.
pub fn positive_subexpression(
    rs: &RootSystem,
    ambient_word: &Word,
    u: &WeylElement,
) -> Result<Diagram> {
    ambient_word.validate(rs.rank())?;
    let mut v = u.clone();
    let mut kept = Vec::with_capacity(u.length());
    for (k, &l) in ambient_word.letters().iter().enumerate().rev() {
        if v.is_identity() {
            break;
        }
        if v.has_right_descent(l - 1) {
            kept.push(k + 1);
            v = v.mul_simple_right(rs, l - 1);
        }
    }
    if !v.is_identity() {
        return Err(Error::NotBelow);
    }
    Diagram::new(ambient_word.len(), kept)
}

/// Every reduced word of `w`, in lexicographic order.
pub fn reduced_words(rs: &RootSystem, w: &WeylElement) -> Vec<Word> {
    fn go(rs: &RootSystem, v: &WeylElement, suffix: &mut Vec<usize>, out: &mut Vec<Word>) {
        if v.is_identity() {
            out.push(Word(suffix.iter().rev().copied().collect()));
            return;
        }
        for i in 0..v.rank() {
            if v.has_right_descent(i) {
                suffix.push(i + 1);
                go(rs, &v.mul_simple_right(rs, i), suffix, out);
                suffix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(rs, w, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The longest element, built by left-multiplying while a length increase is possible.
pub fn longest_element(rs: &RootSystem) -> WeylElement {
    let mut w = WeylElement::identity(rs);
    loop {
        let Some(i) = (0..rs.rank()).find(|&i| !w.has_right_descent(i)) else {
            return w;
        };
        w = w.mul_simple_right(rs, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::CartanType;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse::<CartanType>().unwrap())
    }

    fn el(rs: &RootSystem, w: &[usize]) -> WeylElement {
        from_word(rs, &Word(w.to_vec())).unwrap()
    }

    #[test]
    fn words_to_elements() {
        let a2 = rs("A2");
        let e = el(&a2, &[]);
        assert!(e.is_identity());
        assert_eq!(e.length(), 0);
        let w0 = el(&a2, &[1, 2, 1]);
        assert_eq!(w0.length(), 3);
        assert_eq!(w0, longest_element(&a2));
        assert_eq!(el(&a2, &[1, 1]), e);
        assert!(from_word(&a2, &Word(vec![3])).is_err());
    }

    #[test]
    fn lengths() {
        let b2 = rs("B2");
        assert_eq!(longest_element(&b2).length(), 4);
        assert_eq!(el(&b2, &[1, 2, 1, 2]), el(&b2, &[2, 1, 2, 1]));
        assert_eq!(longest_element(&rs("E6")).length(), 36);
    }

    #[test]
    fn reducedness() {
        let a2 = rs("A2");
        assert!(is_reduced(&a2, &Word(vec![1, 2, 1])));
        assert!(!is_reduced(&a2, &Word(vec![1, 1])));
        assert!(is_reduced(&a2, &Word(vec![])));
        assert!(!is_reduced(&a2, &Word(vec![1, 2, 1, 2])));
        assert!(!is_reduced(&a2, &Word(vec![4])));
    }

    #[test]
    fn simple_multiplication_matches_general_product() {
        let b3 = rs("B3");
        let w = el(&b3, &[1, 2, 3, 2]);
        for i in 0..3 {
            let s = el(&b3, &[i + 1]);
            assert_eq!(w.mul_simple_right(&b3, i), w.mul(&b3, &s));
            assert_eq!(s.mul(&b3, &w), el(&b3, &[i + 1, 1, 2, 3, 2]));
        }
    }

    #[test]
    fn bruhat_examples() {
        let a2 = rs("A2");
        let e = el(&a2, &[]);
        let s1 = el(&a2, &[1]);
        let s2 = el(&a2, &[2]);
        let s1s2 = el(&a2, &[1, 2]);
        for v in [&e, &s1, &s2, &s1s2] {
            assert!(bruhat_leq(&a2, &e, v));
        }
        assert!(bruhat_leq(&a2, &s1, &s1s2));
        assert!(!bruhat_leq(&a2, &s1, &s2));
        assert!(!bruhat_leq(&a2, &s1s2, &s1));
    }

    #[test]
    fn interval_examples() {
        let a2 = rs("A2");
        let w0 = el(&a2, &[1, 2, 1]);
        assert_eq!(bruhat_interval(&a2, &w0, &Word(vec![1, 2, 1])).unwrap().len(), 6);
        let e = el(&a2, &[]);
        assert_eq!(bruhat_interval(&a2, &e, &Word(vec![])).unwrap(), vec![e.clone()]);
        let w = el(&a2, &[1, 2]);
        let iv = bruhat_interval(&a2, &w, &Word(vec![1, 2])).unwrap();
        let mut expected = vec![e, el(&a2, &[1]), el(&a2, &[2]), w];
        expected.sort();
        assert_eq!(iv, expected);
        assert_eq!(
            bruhat_interval(&a2, &w0, &Word(vec![1, 1])),
            Err(Error::NotReduced(vec![1, 1]))
        );
        assert_eq!(bruhat_interval(&a2, &w0, &Word(vec![1, 2])), Err(Error::WordMismatch));
        assert_eq!(
            bruhat_interval_bounded(&a2, &w0, &Word(vec![1, 2, 1]), 5),
            Err(Error::IntervalTooLarge { limit: 5 })
        );
    }

    #[test]
    fn subexpression_examples() {
        let a2 = rs("A2");
        let word = Word(vec![1, 2, 1]);
        let full = Diagram::full(3);
        assert_eq!(subexpression_element(&a2, &word, &full).unwrap(), el(&a2, &[1, 2, 1]));
        assert!(subexpression_element(&a2, &word, &Diagram::empty()).unwrap().is_identity());
        let d = Diagram::new(3, [1, 3]).unwrap();
        assert!(subexpression_element(&a2, &word, &d).unwrap().is_identity());
        let bad = Diagram::new(4, [4]).unwrap();
        assert!(subexpression_element(&a2, &word, &bad).is_err());
    }

    #[test]
    fn positive_subexpression_examples() {
        let a2 = rs("A2");
        let word = Word(vec![1, 2, 1]);
        let e = el(&a2, &[]);
        assert_eq!(positive_subexpression(&a2, &word, &e).unwrap(), Diagram::empty());
        let w0 = el(&a2, &[1, 2, 1]);
        assert_eq!(positive_subexpression(&a2, &word, &w0).unwrap(), Diagram::full(3));
        let s1 = el(&a2, &[1]);
        assert_eq!(positive_subexpression(&a2, &word, &s1).unwrap(), Diagram::new(3, [3]).unwrap());
        // s2·s1 is not below s1·s2
        let s2s1 = el(&a2, &[2, 1]);
        assert_eq!(positive_subexpression(&a2, &Word(vec![1, 2]), &s2s1), Err(Error::NotBelow));
    }

    #[test]
    fn reduced_words_of_longest() {
        let a2 = rs("A2");
        assert_eq!(
            reduced_words(&a2, &longest_element(&a2)),
            vec![Word(vec![1, 2, 1]), Word(vec![2, 1, 2])]
        );
        assert_eq!(reduced_words(&rs("A3"), &longest_element(&rs("A3"))).len(), 16);
        assert_eq!(reduced_words(&rs("B2"), &longest_element(&rs("B2"))).len(), 2);
    }

    #[test]
    fn reduced_word_reconstructs() {
        let g2 = rs("G2");
        let w = el(&g2, &[2, 1, 2, 1]);
        let r = w.reduced_word(&g2);
        assert_eq!(r.len(), 4);
        assert_eq!(from_word(&g2, &r).unwrap(), w);
    }

    #[test]
    fn word_display() {
        assert_eq!(Word(vec![]).to_string(), "e");
        assert_eq!(Word(vec![1, 2]).to_string(), "s1 s2");
    }
}
