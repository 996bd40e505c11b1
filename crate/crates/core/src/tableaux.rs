//! Standard Young tableaux.
//!
//! Tableaux are enumerated through growth words: the word `w` with `w[e-1]`
//! equal to the (0-based) row receiving entry `e`. Entries of each row are
//! placed left to right, so the word determines the tableau, and the prefix of
//! length `k` determines the subtableau on `1..=k`.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::involutions::count_involutions;
use crate::limits::Limits;
use crate::shapes::{count_syt, partitions_of, Cell, Partition};

/// The first violated tableau invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("row {row} is empty")]
    EmptyRow { row: usize },
    #[error("row lengths are not weakly decreasing: row {row} is longer than row {}", row - 1)]
    ShapeNotPartition { row: usize },
    #[error("entries are not exactly 1..={n}: {detail}")]
    NotAPermutationOfEntries { n: usize, detail: String },
    #[error("row {row} is not strictly increasing at column {col}")]
    RowNotIncreasing { row: usize, col: usize },
    #[error("column {col} is not strictly increasing at row {row}")]
    ColumnNotIncreasing { row: usize, col: usize },
}

/// Checks the shape, entry set, row and column invariants in that order.
pub fn check_rows(rows: &[Vec<usize>]) -> std::result::Result<(), TableauError> {
    for (i, row) in rows.iter().enumerate() {
        if row.is_empty() {
            return Err(TableauError::EmptyRow { row: i + 1 });
        }
        if i > 0 && row.len() > rows[i - 1].len() {
            return Err(TableauError::ShapeNotPartition { row: i + 1 });
        }
    }
    let n: usize = rows.iter().map(Vec::len).sum();
    let mut seen = vec![false; n + 1];
    for &v in rows.iter().flatten() {
        if v == 0 || v > n {
            return Err(TableauError::NotAPermutationOfEntries {
                n,
                detail: format!("entry {v} out of range"),
            });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(TableauError::NotAPermutationOfEntries {
                n,
                detail: format!("entry {v} repeated"),
            });
        }
    }
    for (i, row) in rows.iter().enumerate() {
        if let Some(j) = row.windows(2).position(|w| w[0] >= w[1]) {
            return Err(TableauError::RowNotIncreasing {
                row: i + 1,
                col: j + 2,
            });
        }
    }
    for i in 1..rows.len() {
        if let Some(j) = (0..rows[i].len()).find(|&j| rows[i - 1][j] >= rows[i][j]) {
            return Err(TableauError::ColumnNotIncreasing {
                row: i + 1,
                col: j + 1,
            });
        }
    }
    Ok(())
}

/// True iff `rows` is a standard Young tableau.
pub fn validate(rows: &[Vec<usize>]) -> bool {
    check_rows(rows).is_ok()
}

#[derive(Deserialize)]
struct RawTableau {
    rows: Vec<Vec<usize>>,
}

impl TryFrom<RawTableau> for StandardTableau {
    type Error = TableauError;
    fn try_from(raw: RawTableau) -> std::result::Result<Self, TableauError> {
        StandardTableau::new(raw.rows)
    }
}

/// A standard Young tableau; always valid once constructed.
///
/// Serialises as `{"rows": [[1,2,5],[3,4]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTableau")]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> std::result::Result<Self, TableauError> {
        check_rows(&rows)?;
        Ok(StandardTableau { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        debug_assert!(validate(&rows), "{rows:?}");
        StandardTableau { rows }
    }

    pub fn empty() -> Self {
        StandardTableau { rows: Vec::new() }
    }

    /// Single row `1..=n`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            return Self::empty();
        }
        StandardTableau {
            rows: vec![(1..=n).collect()],
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tableau serialises")
    }

    /// Builds the tableau of a growth word; `None` if the word is not a lattice word.
    pub fn from_growth_word(word: &[usize]) -> Option<Self> {
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for (i, &r) in word.iter().enumerate() {
            if r > rows.len() || (r > 0 && rows[r - 1].len() <= rows.get(r).map_or(0, Vec::len)) {
                return None;
            }
            if r == rows.len() {
                rows.push(Vec::new());
            }
            rows[r].push(i + 1);
        }
        Some(StandardTableau { rows })
    }

    /// Row (0-based) of each entry `1..=n`.
    pub fn growth_word(&self) -> Vec<usize> {
        let mut word = vec![0; self.size()];
        for (r, row) in self.rows.iter().enumerate() {
            for &v in row {
                word[v - 1] = r;
            }
        }
        word
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition::from_parts_unchecked(self.rows.iter().map(Vec::len).collect())
    }

    pub fn entry(&self, c: Cell) -> Option<usize> {
        if c.row == 0 || c.col == 0 {
            return None;
        }
        self.rows.get(c.row - 1)?.get(c.col - 1).copied()
    }

    pub fn cell_of(&self, value: usize) -> Option<Cell> {
        self.rows.iter().enumerate().find_map(|(i, row)| {
            row.iter()
                .position(|&v| v == value)
                .map(|j| Cell::new(i + 1, j + 1))
        })
    }

    /// The tableau formed by the entries `1..=k`.
    pub fn subtableau(&self, k: usize) -> Result<Self> {
        if k > self.size() {
            return Err(Error::OutOfRange(format!(
                "subtableau size {k} exceeds tableau size {}",
                self.size()
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .copied()
                    .take_while(|&v| v <= k)
                    .collect::<Vec<_>>()
            })
            .take_while(|row| !row.is_empty())
            .collect();
        Ok(StandardTableau { rows })
    }

    /// True iff the entries `1..=|s|` of `self` form `s`.
    pub fn contains_subtableau(&self, s: &StandardTableau) -> bool {
        s.size() <= self.size() && self.subtableau(s.size()).is_ok_and(|p| &p == s)
    }

    pub fn transpose(&self) -> Self {
        let cols = self.rows.first().map_or(0, Vec::len);
        let rows = (0..cols)
            .map(|j| {
                self.rows
                    .iter()
                    .take_while(|row| row.len() > j)
                    .map(|row| row[j])
                    .collect()
            })
            .collect();
        StandardTableau { rows }
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let items: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", items.join(","))?;
        }
        write!(f, "]")
    }
}

pub fn shape_of(t: &StandardTableau) -> Partition {
    t.shape()
}

pub fn subtableau(t: &StandardTableau, k: usize) -> Result<StandardTableau> {
    t.subtableau(k)
}

pub fn contains_subtableau(t: &StandardTableau, s: &StandardTableau) -> bool {
    t.contains_subtableau(s)
}

/// Depth-first generator of growth words of length `n`, optionally confined
/// to a bounding shape. At every step the addable rows are tried top to
/// bottom, so words come out in lexicographic order.
#[derive(Debug, Clone)]
pub struct GrowthWords {
    n: usize,
    bound: Option<Vec<usize>>,
    shape: Vec<usize>,
    word: Vec<usize>,
    started: bool,
    done: bool,
}

impl GrowthWords {
    fn new(n: usize, bound: Option<Vec<usize>>) -> Self {
        GrowthWords {
            n,
            bound,
            shape: Vec::with_capacity(n),
            word: Vec::with_capacity(n),
            started: false,
            done: false,
        }
    }

    fn addable(&self, r: usize) -> bool {
        if r > self.shape.len() {
            return false;
        }
        let cur = self.shape.get(r).copied().unwrap_or(0);
        (r == 0 || self.shape[r - 1] > cur)
            && self
                .bound
                .as_ref()
                .is_none_or(|b| cur < b.get(r).copied().unwrap_or(0))
    }

    fn place(&mut self, r: usize) {
        if r == self.shape.len() {
            self.shape.push(1);
        } else {
            self.shape[r] += 1;
        }
        self.word.push(r);
    }

    fn unplace(&mut self) -> Option<usize> {
        let r = self.word.pop()?;
        self.shape[r] -= 1;
        if self.shape[r] == 0 {
            self.shape.pop();
        }
        Some(r)
    }

    fn next_addable(&self, from: usize) -> Option<usize> {
        (from..=self.shape.len()).find(|&r| self.addable(r))
    }

    // Inside a bounding shape of size n every proper subshape has an addable
    // cell, so filling never dead-ends.
    fn fill(&mut self) {
        while self.word.len() < self.n {
            let r = self.next_addable(0).expect("growth never dead-ends");
            self.place(r);
        }
    }

    /// The next word, or `None` when exhausted.
    pub fn next_word(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
            return Some(&self.word);
        }
        loop {
            let Some(r) = self.unplace() else {
                self.done = true;
                return None;
            };
            if let Some(next) = self.next_addable(r + 1) {
                self.place(next);
                self.fill();
                return Some(&self.word);
            }
        }
    }
}

fn check_cap(n: usize, limits: &Limits, estimate: impl FnOnce() -> BigUint) -> Result<()> {
    if n > limits.max_n {
        return Err(Error::CapExceeded {
            what: "tableau enumeration",
            requested: n,
            cap: limits.max_n,
            estimate: estimate().to_string(),
        });
    }
    Ok(())
}

/// Stream of all standard tableaux of one shape, lexicographic by growth word.
#[derive(Debug, Clone)]
pub struct SytOfShape {
    words: GrowthWords,
}

impl SytOfShape {
    pub fn next_word(&mut self) -> Option<&[usize]> {
        self.words.next_word()
    }
}

impl Iterator for SytOfShape {
    type Item = StandardTableau;
    fn next(&mut self) -> Option<StandardTableau> {
        let word = self.words.next_word()?;
        Some(tableau_of_word(word))
    }
}

fn tableau_of_word(word: &[usize]) -> StandardTableau {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for (i, &r) in word.iter().enumerate() {
        if r == rows.len() {
            rows.push(Vec::new());
        }
        rows[r].push(i + 1);
    }
    StandardTableau::from_rows_unchecked(rows)
}

/// Every standard tableau of shape `shape`.
pub fn enumerate_syt(shape: &Partition, limits: &Limits) -> Result<SytOfShape> {
    check_cap(shape.size(), limits, || count_syt(shape))?;
    Ok(SytOfShape {
        words: GrowthWords::new(shape.size(), Some(shape.parts().to_vec())),
    })
}

/// Stream of all `n`-cell tableaux, grouped by shape in [`partitions_of`] order.
#[derive(Debug, Clone)]
pub struct SytOfSize {
    shapes: std::vec::IntoIter<Partition>,
    current: Option<GrowthWords>,
}

impl SytOfSize {
    pub fn next_word(&mut self) -> Option<&[usize]> {
        loop {
            if self.current.is_none() {
                let shape = self.shapes.next()?;
                self.current = Some(GrowthWords::new(shape.size(), Some(shape.parts().to_vec())));
            }
            // two-step borrow: test exhaustion first, then hand out the word
            if self.current.as_mut().unwrap().next_word().is_some() {
                return Some(&self.current.as_ref().unwrap().word);
            }
            self.current = None;
        }
    }
}

impl Iterator for SytOfSize {
    type Item = StandardTableau;
    fn next(&mut self) -> Option<StandardTableau> {
        self.next_word().map(tableau_of_word)
    }
}

/// Every tableau with `n` cells (`t_n` of them).
pub fn enumerate_syt_n(n: usize, limits: &Limits) -> Result<SytOfSize> {
    check_cap(n, limits, || count_involutions(n))?;
    Ok(SytOfSize {
        shapes: partitions_of(n).into_iter(),
        current: None,
    })
}

/// `N(n; s)`: the number of `n`-cell tableaux whose entries `1..=|s|` form `s`,
/// by exhaustive enumeration.
pub fn count_containing(n: usize, s: &StandardTableau, limits: &Limits) -> Result<BigUint> {
    let mut all = enumerate_syt_n(n, limits)?;
    let prefix = s.growth_word();
    if prefix.len() > n {
        return Ok(BigUint::default());
    }
    let mut count = 0u64;
    while let Some(word) = all.next_word() {
        if word[..prefix.len()] == prefix[..] {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}
