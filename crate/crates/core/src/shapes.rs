//! Partitions, Ferrers diagrams, hook lengths and `f^λ`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::factorial;

/// A weakly decreasing sequence of positive parts; the shape of a Ferrers diagram.
///
/// Trailing zeros are stripped on construction, so equality is equality of
/// canonical forms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A 1-based `(row, col)` position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl FromStr for Cell {
    type Err = Error;

    /// Parses `(i,j)`; the parentheses are optional.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad cell {s:?}, expected (row,col)"));
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(inner);
        let (r, c) = inner.split_once(',').ok_or_else(bad)?;
        let row: usize = r.trim().parse().map_err(|_| bad())?;
        let col: usize = c.trim().parse().map_err(|_| bad())?;
        if row == 0 || col == 0 {
            return Err(bad());
        }
        Ok(Cell { row, col })
    }
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if let Some(i) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing and positive, got {parts:?} (position {})",
                i + 2
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of the 1-based `row`; zero beyond the last row.
    pub fn row_len(&self, row: usize) -> usize {
        if row == 0 {
            return 0;
        }
        self.parts.get(row - 1).copied().unwrap_or(0)
    }

    /// Number of columns of the Ferrers diagram, i.e. the first part.
    pub fn column_count(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.row >= 1 && c.col >= 1 && c.col <= self.row_len(c.row)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.column_count();
        let parts = (1..=cols)
            .map(|c| self.parts.iter().take_while(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    /// All cells, row by row.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| Cell::new(i + 1, j)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. `3,2,1`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `k` in descending lexicographic order.
pub fn partitions_of(k: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_parts_unchecked(cur.clone()));
            return;
        }
        for p in (1..=max.min(remaining)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// `arm + leg + 1` for a cell inside `shape`.
pub fn hook_length(shape: &Partition, c: Cell) -> Result<usize> {
    if !shape.contains_cell(c) {
        return Err(Error::CellOutsideShape {
            cell: c.to_string(),
            shape: shape.to_string(),
        });
    }
    Ok(hook_unchecked(shape, c))
}

fn hook_unchecked(shape: &Partition, c: Cell) -> usize {
    let arm = shape.row_len(c.row) - c.col;
    let leg = shape.parts[c.row..]
        .iter()
        .take_while(|&&p| p >= c.col)
        .count();
    arm + leg + 1
}

fn syt_memo() -> &'static RwLock<HashMap<Partition, BigUint>> {
    static MEMO: OnceLock<RwLock<HashMap<Partition, BigUint>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `f^λ`, the number of standard tableaux of shape `λ`, by the hook-length formula.
pub fn count_syt(shape: &Partition) -> BigUint {
    if let Some(v) = syt_memo().read().expect("memo lock").get(shape) {
        return v.clone();
    }
    let hooks = shape
        .cells()
        .fold(BigUint::one(), |acc, c| acc * hook_unchecked(shape, c));
    let (value, rem) = factorial(shape.size()).div_rem(&hooks);
    assert!(
        rem.is_zero(),
        "hook product does not divide |λ|! for {shape}"
    );
    syt_memo()
        .write()
        .expect("memo lock")
        .insert(shape.clone(), value.clone());
    value
}

/// Cells whose removal leaves a partition, top to bottom.
pub fn corners(shape: &Partition) -> Vec<Cell> {
    let p = &shape.parts;
    (0..p.len())
        .filter(|&i| i + 1 == p.len() || p[i] > p[i + 1])
        .map(|i| Cell::new(i + 1, p[i]))
        .collect()
}

/// Cells that can be added to `shape` leaving a partition, top to bottom.
pub fn addable_cells(shape: &Partition) -> Vec<Cell> {
    let p = &shape.parts;
    (0..=p.len())
        .filter(|&i| i == 0 || p[i - 1] > p.get(i).copied().unwrap_or(0))
        .map(|i| Cell::new(i + 1, p.get(i).copied().unwrap_or(0) + 1))
        .collect()
}

/// `λ − c` for a corner `c`.
pub fn remove_corner(shape: &Partition, c: Cell) -> Result<Partition> {
    if !corners(shape).contains(&c) {
        return Err(Error::NotACorner {
            cell: c.to_string(),
            shape: shape.to_string(),
        });
    }
    let mut parts = shape.parts.clone();
    parts[c.row - 1] -= 1;
    if parts[c.row - 1] == 0 {
        parts.pop();
    }
    Ok(Partition { parts })
}

/// `μ ⊆ λ` as Ferrers diagrams.
pub fn is_subshape(mu: &Partition, lambda: &Partition) -> bool {
    mu.len() <= lambda.len() && mu.parts.iter().zip(&lambda.parts).all(|(a, b)| a <= b)
}
