//! Robinson–Schensted insertion.
//!
//! Row insertion bumps the leftmost entry strictly greater than the inserted
//! letter into the next row. Column insertion bumps the topmost entry strictly
//! greater than the letter into the next column. Letters are always inserted
//! in word order, left to right.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::numeric::factorial;
use crate::tableaux::StandardTableau;

/// A permutation of `[n]` in one-line notation: `word[i-1]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{word:?} is not a rearrangement of 1..={n}"
                )));
            }
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { word: inv }
    }

    pub fn is_involution(&self) -> bool {
        self.word
            .iter()
            .enumerate()
            .all(|(i, &v)| self.word[v - 1] == i + 1)
    }

    pub fn fixed_points(&self) -> usize {
        self.word
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v == i + 1)
            .count()
    }

    /// `c ∘ self ∘ c⁻¹`.
    pub fn conjugate_by(&self, c: &Permutation) -> Permutation {
        assert_eq!(c.len(), self.len());
        let mut word = vec![0; self.len()];
        for i in 1..=self.len() {
            word[c.apply(i) - 1] = c.apply(self.apply(i));
        }
        Permutation { word }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word.iter().join(" "))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Space-separated one-line notation, e.g. `3 1 2`.
    fn from_str(s: &str) -> Result<Self> {
        let word = s
            .split_whitespace()
            .map(|x| {
                x.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad permutation letter {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(word)
    }
}

fn row_insert(rows: &mut Vec<Vec<usize>>, mut x: usize) -> usize {
    for (r, row) in rows.iter_mut().enumerate() {
        match row.iter().position(|&y| y > x) {
            Some(j) => x = std::mem::replace(&mut row[j], x),
            None => {
                row.push(x);
                return r;
            }
        }
    }
    rows.push(vec![x]);
    rows.len() - 1
}

/// RS insertion of `σ`: `(P, Q)` = (insertion tableau, recording tableau).
pub fn rs_pair(sigma: &Permutation) -> (StandardTableau, StandardTableau) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, &x) in sigma.word.iter().enumerate() {
        let r = row_insert(&mut p, x);
        if r == q.len() {
            q.push(Vec::new());
        }
        q[r].push(step + 1);
    }
    (
        StandardTableau::from_rows_unchecked(p),
        StandardTableau::from_rows_unchecked(q),
    )
}

/// Insertion tableau alone.
pub fn insertion_tableau(sigma: &Permutation) -> StandardTableau {
    let mut p: Vec<Vec<usize>> = Vec::new();
    for &x in &sigma.word {
        row_insert(&mut p, x);
    }
    StandardTableau::from_rows_unchecked(p)
}

/// The common tableau `P = Q` of an involution.
pub fn tableau_of_involution(phi: &Permutation) -> Result<StandardTableau> {
    if !phi.is_involution() {
        return Err(Error::NotAnInvolution(phi.to_string()));
    }
    Ok(insertion_tableau(phi))
}

/// Insertion tableau under column insertion of the letters of `σ` in word order.
///
/// Equals the transpose of the row-insertion tableau of `σ`.
pub fn column_insert_tableau(sigma: &Permutation) -> StandardTableau {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for &letter in &sigma.word {
        let mut x = letter;
        let mut col = 0;
        loop {
            let height = rows.iter().take_while(|row| row.len() > col).count();
            match (0..height).find(|&r| rows[r][col] > x) {
                Some(r) => {
                    x = std::mem::replace(&mut rows[r][col], x);
                    col += 1;
                }
                None => {
                    if height == rows.len() {
                        rows.push(vec![x]);
                    } else {
                        rows[height].push(x);
                    }
                    break;
                }
            }
        }
    }
    StandardTableau::from_rows_unchecked(rows)
}

/// All permutations of `[|T|]` with insertion tableau `T`, in lexicographic order.
///
/// Enumerates all `|T|!` permutations; its size equals `f^{λ(T)}`.
pub fn z_set(t: &StandardTableau, limits: &Limits) -> Result<Vec<Permutation>> {
    let k = t.size();
    if k > limits.max_k {
        return Err(Error::CapExceeded {
            what: "permutation enumeration",
            requested: k,
            cap: limits.max_k,
            estimate: factorial(k).to_string(),
        });
    }
    Ok((1..=k)
        .permutations(k)
        .map(Permutation::from_word_unchecked)
        .filter(|s| &insertion_tableau(s) == t)
        .collect())
}
