//! Root systems of the simple types A through G.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * Bourbaki numbering of the Dynkin diagram.
//! * Cartan entries `a_ij = 2(α_i, α_j) / (α_i, α_i)`, so that
//!   `s_i(α_j) = α_j - a_ij·α_i`.
//! * Short roots have squared length 2 (long roots 4, or 6 in G2), hence
//!   the Gram matrix `(α_i, α_j) = d_i·a_ij` with `d_i = (α_i, α_i)/2` is
//!   integral.
//! * Roots are integer coordinate vectors in the simple-root basis; indices
//!   of simple roots are 1-based in the public API.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{QMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

/// A simple Cartan type such as `A2` or `E8`. Construction checks the rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidRank { family: family.letter(), rank })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Number of positive roots, from the classification.
    pub fn positive_root_count(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => [36, 63, 120][n - 6],
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Squared lengths of the simple roots and the Dynkin edges (0-based).
    fn dynkin(self) -> (Vec<i64>, Vec<(usize, usize)>) {
        let n = self.rank;
        let chain = |len: usize| (1..len).map(|i| (i - 1, i)).collect::<Vec<_>>();
        match self.family {
            Family::A => (vec![2; n], chain(n)),
            Family::B => {
                let mut l = vec![4; n];
                l[n - 1] = 2;
                (l, chain(n))
            }
            Family::C => {
                let mut l = vec![2; n];
                l[n - 1] = 4;
                (l, chain(n))
            }
            Family::D => {
                let mut edges = chain(n - 1);
                edges.push((n - 3, n - 1));
                (vec![2; n], edges)
            }
            Family::E => {
                // 1-3-4-5-6(-7-8) with 2 hanging off 4
                let mut edges = vec![(0, 2), (1, 3)];
                edges.extend((3..n).map(|i| (i - 1, i)));
                (vec![2; n], edges)
            }
            Family::F => (vec![4, 4, 2, 2], chain(4)),
            Family::G => (vec![2, 6], chain(2)),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Parses strings like `"A2"`, `"e8"` or `"B 3"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family: Family = chars
            .next()
            .ok_or_else(|| Error::InvalidInput("empty Cartan type".into()))?
            .to_string()
            .parse()?;
        let rank = chars
            .as_str()
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidInput(format!("bad Cartan type '{s}'")))?;
        CartanType::new(family, rank)
    }
}

/// Coefficients of a vector of `E` in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    /// The simple root `α_i` (1-based) of a rank `n` system.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i - 1] = 1;
        RootVector(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    pub fn neg(&self) -> Self {
        RootVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan_matrix: Vec<Vec<i64>>,
    gram: QMatrix,
    gram_int: Vec<Vec<i64>>,
    positive_roots: Vec<RootVector>,
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Self {
        let n = cartan_type.rank();
        let (lengths, edges) = cartan_type.dynkin();
        let mut gram_int = vec![vec![0i64; n]; n];
        for i in 0..n {
            gram_int[i][i] = lengths[i];
        }
        for &(i, j) in &edges {
            let v = -lengths[i].max(lengths[j]) / 2;
            gram_int[i][j] = v;
            gram_int[j][i] = v;
        }
        let cartan_matrix: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram_int[i][j] / gram_int[i][i]).collect())
            .collect();
        let gram = QMatrix::from_rows(&gram_int).expect("square gram matrix");
        let mut rs = RootSystem {
            cartan_type,
            cartan_matrix,
            gram,
            gram_int,
            positive_roots: Vec::new(),
        };
        rs.positive_roots = rs.close_positive_roots();
        rs
    }

    /// Closure of the simple roots under simple reflections, keeping only
    /// positive results. Sorted by height, then coordinates.
    fn close_positive_roots(&self) -> Vec<RootVector> {
        let n = self.rank();
        let mut seen: HashSet<RootVector> = HashSet::new();
        let mut frontier: Vec<RootVector> = (1..=n).map(|i| RootVector::simple(n, i)).collect();
        while let Some(root) = frontier.pop() {
            if !seen.insert(root.clone()) {
                continue;
            }
            for i in 0..n {
                let image = self.reflect(i, &root);
                if image.is_positive() && !seen.contains(&image) {
                    frontier.push(image);
                }
            }
        }
        let mut roots: Vec<RootVector> = seen.into_iter().collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
        roots
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan_matrix
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots.
    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    pub(crate) fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan_matrix[i][j]
    }

    fn check_dim(&self, v: &RootVector) -> Result<()> {
        if v.dim() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: v.dim() });
        }
        Ok(())
    }

    pub(crate) fn inner_int(&self, v: &RootVector, w: &RootVector) -> i64 {
        let n = self.rank();
        let mut acc = 0;
        for i in 0..n {
            if v.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += v.0[i] * self.gram_int[i][j] * w.0[j];
            }
        }
        acc
    }

    /// The inner product `vᵀ·G·w`.
    pub fn inner(&self, v: &RootVector, w: &RootVector) -> Result<Rational> {
        self.check_dim(v)?;
        self.check_dim(w)?;
        Ok(Rational::from_integer(BigInt::from(self.inner_int(v, w))))
    }

    // 0-based; `v - <v, α_i^∨> α_i`.
    pub(crate) fn reflect(&self, i: usize, v: &RootVector) -> RootVector {
        let pairing = 2 * self.inner_int(v, &RootVector::simple(self.rank(), i + 1))
            / self.gram_int[i][i];
        let mut out = v.clone();
        out.0[i] -= pairing;
        out
    }

    /// `s_i(v)` for a 1-based index `i`.
    pub fn simple_reflection(&self, i: usize, v: &RootVector) -> Result<RootVector> {
        if i == 0 || i > self.rank() {
            return Err(Error::IndexOutOfRange { index: i, bound: self.rank() });
        }
        self.check_dim(v)?;
        Ok(self.reflect(i - 1, v))
    }
}

pub fn build_root_system(t: CartanType) -> RootSystem {
    RootSystem::new(t)
}
