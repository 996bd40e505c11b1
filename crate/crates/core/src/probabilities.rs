//! Limiting probabilities for large uniform random tableaux, as exact rationals.
//!
//! A tableau `T` with `k` cells occurs as the subtableau on `1..=k` of a
//! uniform `n`-cell tableau with limiting probability `f^{λ(T)} / k!`. Every
//! other quantity here is a sum of such terms over an antichain of tableaux.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::format::RationalMatrix;
use crate::involutions::count_involutions;
use crate::limits::Limits;
use crate::numeric::{binomial, factorial, ratio, Rational};
use crate::shapes::{
    corners, count_syt, is_subshape, partitions_of, remove_corner, Cell, Partition,
};
use crate::tableaux::{count_containing, enumerate_syt_n, StandardTableau};

/// Prescribed entries in prescribed cells. Cells are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellAssignment {
    entries: BTreeMap<Cell, usize>,
}

impl CellAssignment {
    /// Rejects an empty assignment, zero values and repeated cells.
    ///
    /// Repeated values are accepted; such an assignment has probability zero.
    pub fn new(pairs: impl IntoIterator<Item = (Cell, usize)>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (cell, value) in pairs {
            if value == 0 {
                return Err(Error::InvalidAssignment(format!("cell {cell} assigned 0")));
            }
            if entries.insert(cell, value).is_some() {
                return Err(Error::InvalidAssignment(format!(
                    "cell {cell} assigned twice"
                )));
            }
        }
        if entries.is_empty() {
            return Err(Error::InvalidAssignment("empty assignment".into()));
        }
        Ok(CellAssignment { entries })
    }

    pub fn entries(&self) -> impl Iterator<Item = (Cell, usize)> + '_ {
        self.entries.iter().map(|(&c, &v)| (c, v))
    }

    /// `K`, the largest prescribed entry.
    pub fn max_value(&self) -> usize {
        *self.entries.values().max().expect("non-empty")
    }

    fn has_repeated_values(&self) -> bool {
        let mut values: Vec<usize> = self.entries.values().copied().collect();
        values.sort_unstable();
        values.windows(2).any(|w| w[0] == w[1])
    }
}

impl FromStr for CellAssignment {
    type Err = Error;

    /// `"(1,2)=2;(1,3)=3"`.
    fn from_str(s: &str) -> Result<Self> {
        let pairs = s
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                let (cell, value) = p
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected (i,j)=k, got {p:?}")))?;
                let value = value
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad entry in {p:?}")))?;
                Ok((cell.parse::<Cell>()?, value))
            })
            .collect::<Result<Vec<_>>>()?;
        CellAssignment::new(pairs)
    }
}

impl fmt::Display for CellAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().map(|(c, v)| format!("{c}={v}")).collect();
        f.write_str(&parts.join(";"))
    }
}

fn over_factorial(count: BigUint, k: usize) -> Rational {
    ratio(&count, &factorial(k))
}

/// `f^{λ(T)} / |T|!`.
pub fn limit_prob_subtableau(t: &StandardTableau) -> Rational {
    over_factorial(count_syt(&t.shape()), t.size())
}

/// Sum of [`limit_prob_subtableau`] over a collection in which no tableau is a
/// subtableau of another.
pub fn limit_prob_collection(collection: &[StandardTableau]) -> Result<Rational> {
    for (i, a) in collection.iter().enumerate() {
        for (j, b) in collection.iter().enumerate() {
            if i != j && a.size() <= b.size() && b.contains_subtableau(a) {
                return Err(Error::NotAnAntichain {
                    smaller: a.to_string(),
                    larger: b.to_string(),
                });
            }
        }
    }
    Ok(collection.iter().map(limit_prob_subtableau).sum())
}

/// `Σ (f^λ)² / |λ|!` over shapes none of which is a subshape of another.
pub fn limit_prob_shapes(shapes: &[Partition]) -> Result<Rational> {
    for (i, a) in shapes.iter().enumerate() {
        for (j, b) in shapes.iter().enumerate() {
            if i != j && is_subshape(a, b) {
                return Err(Error::NotAnAntichain {
                    smaller: format!("({a})"),
                    larger: format!("({b})"),
                });
            }
        }
    }
    Ok(shapes
        .iter()
        .map(|l| over_factorial(count_syt(l).pow(2), l.size()))
        .sum())
}

/// Limiting probability that cell `(i,j)` holds `k`:
/// `(1/k!) Σ f^λ f^{λ−(i,j)}` over `λ ⊢ k` with `(i,j)` a corner.
pub fn prob_cell_equals(i: usize, j: usize, k: usize) -> Rational {
    let cell = Cell::new(i, j);
    let total: BigUint = partitions_of(k)
        .iter()
        .filter(|l| corners(l).contains(&cell))
        .map(|l| count_syt(l) * count_syt(&remove_corner(l, cell).expect("corner")))
        .sum();
    over_factorial(total, k)
}

/// Limiting probability of a cell assignment: `(1/K!) Σ f^{λ(T)}` over all
/// `K`-cell tableaux `T` consistent with it, by enumerating every `K`-cell tableau.
pub fn prob_cells_assignment(a: &CellAssignment, limits: &Limits) -> Result<Rational> {
    let big_k = a.max_value();
    if big_k > limits.max_assignment {
        return Err(Error::CapExceeded {
            what: "cell-assignment enumeration",
            requested: big_k,
            cap: limits.max_assignment,
            estimate: count_involutions(big_k).to_string(),
        });
    }
    if a.has_repeated_values() {
        return Ok(Rational::zero());
    }
    let wide = Limits {
        max_n: limits.max_n.max(limits.max_assignment),
        ..*limits
    };
    let mut all = enumerate_syt_n(big_k, &wide)?;
    let wanted: Vec<(usize, usize, usize)> = a
        .entries()
        .map(|(c, v)| (v - 1, c.row - 1, c.col))
        .collect();
    let mut shape_hits: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    let mut row_len = vec![0usize; big_k + 1];
    let mut cols = vec![0usize; big_k];
    while let Some(word) = all.next_word() {
        // column of each entry is its rank within its row
        row_len.iter_mut().for_each(|x| *x = 0);
        for (e, &r) in word.iter().enumerate() {
            row_len[r] += 1;
            cols[e] = row_len[r];
        }
        if wanted.iter().all(|&(e, r, c)| word[e] == r && cols[e] == c) {
            let shape: Vec<usize> = row_len.iter().copied().take_while(|&x| x > 0).collect();
            *shape_hits.entry(shape).or_default() += 1;
        }
    }
    let total: BigUint = shape_hits
        .into_iter()
        .map(|(shape, hits)| count_syt(&Partition::from_parts_unchecked(shape)) * hits)
        .sum();
    Ok(over_factorial(total, big_k))
}

/// Limiting probability that `1..=k` lie in at most two columns: `C(2k,k)/(k+1)!`.
pub fn prob_two_columns(k: usize) -> Rational {
    ratio(&binomial(2 * k as i64, k as i64), &factorial(k + 1))
}

/// Shapes of size `k` with at most two columns (first part at most 2).
pub fn two_column_shapes(k: usize) -> Vec<Partition> {
    partitions_of(k)
        .into_iter()
        .filter(|l| l.column_count() <= 2)
        .collect()
}

/// `N(n;T) / t_n` exactly, by enumeration.
pub fn empirical_prob_subtableau(
    n: usize,
    t: &StandardTableau,
    limits: &Limits,
) -> Result<Rational> {
    let hits = count_containing(n, t, limits)?;
    Ok(ratio(&hits, &count_involutions(n)))
}

/// Rows `k = 2..=k_max`, one column per cell.
pub fn occupancy_table(k_max: usize, cells: &[Cell]) -> Result<RationalMatrix> {
    if k_max < 2 {
        return Err(Error::OutOfRange(format!(
            "k_max must be >= 2, got {k_max}"
        )));
    }
    let values = (2..=k_max)
        .map(|k| {
            cells
                .iter()
                .map(|c| prob_cell_equals(c.row, c.col, k))
                .collect()
        })
        .collect();
    Ok(RationalMatrix {
        corner: "k".into(),
        row_labels: (2..=k_max).map(|k| k.to_string()).collect(),
        col_labels: cells.iter().map(ToString::to_string).collect(),
        values,
    })
}

/// Cells `(1,2) … (1,6), (2,2), (2,3)`.
pub fn default_occupancy_cells() -> Vec<Cell> {
    vec![
        Cell::new(1, 2),
        Cell::new(1, 3),
        Cell::new(1, 4),
        Cell::new(1, 5),
        Cell::new(1, 6),
        Cell::new(2, 2),
        Cell::new(2, 3),
    ]
}

/// Joint law of the entries in (1,2) and (1,3): rows `r = 2..=r_max`,
/// columns `s = 3..=s_max`.
pub fn joint_table_12_13(r_max: usize, s_max: usize, limits: &Limits) -> Result<RationalMatrix> {
    if r_max < 2 || s_max < 3 {
        return Err(Error::OutOfRange(format!(
            "need r_max >= 2 and s_max >= 3, got {r_max}, {s_max}"
        )));
    }
    let values = (2..=r_max)
        .map(|r| {
            (3..=s_max)
                .map(|s| {
                    // entries along a row increase, so s <= r is impossible
                    if s <= r {
                        return Ok(Rational::zero());
                    }
                    let a = CellAssignment::new([(Cell::new(1, 2), r), (Cell::new(1, 3), s)])?;
                    prob_cells_assignment(&a, limits)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix {
        corner: "r".into(),
        row_labels: (2..=r_max).map(|r| r.to_string()).collect(),
        col_labels: (3..=s_max).map(|s| s.to_string()).collect(),
        values,
    })
}

/// `(2k-2)! / ((k-3)! k! (k+1)!)` for `k >= 3`.
pub fn cell13_closed_form(k: usize) -> Rational {
    assert!(k >= 3);
    let den = factorial(k - 3) * factorial(k) * factorial(k + 1);
    Rational::new(BigInt::from(factorial(2 * k - 2)), BigInt::from(den))
}
