//! Cross-module consistency suites: closed forms checked against brute force.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::format::plain;
use crate::involutions::{avg_fixed_points, cell12_count, count_involutions};
use crate::limits::Limits;
use crate::numeric::{factorial, ratio, Rational};
use crate::probabilities::limit_prob_subtableau;
use crate::quasirandom::{q_bound, q_probability, sandwich_check, Involutions};
use crate::rsk::z_set;
use crate::shapes::{count_syt, partitions_of};
use crate::tableaux::{enumerate_syt, enumerate_syt_n, StandardTableau};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Parseval,
    FForm,
    Convergence,
    Sandwich,
    ZSet,
}

impl Suite {
    pub fn all() -> [Suite; 5] {
        [
            Suite::Parseval,
            Suite::FForm,
            Suite::Convergence,
            Suite::Sandwich,
            Suite::ZSet,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Parseval => "parseval",
            Suite::FForm => "fform",
            Suite::Convergence => "theorem1",
            Suite::Sandwich => "sandwich",
            Suite::ZSet => "zset",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::all()
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown suite {s:?} (expected parseval, fform, theorem1, sandwich or zset)"
                ))
            })
    }
}

/// One checked identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Both sides on failure.
    pub counterexample: Option<String>,
}

impl Check {
    fn compare<T: PartialEq + fmt::Display>(name: String, left: T, right: T) -> Self {
        let passed = left == right;
        Check {
            name,
            passed,
            counterexample: (!passed).then(|| format!("{left} != {right}")),
        }
    }

    fn holds(name: String, passed: bool, detail: impl FnOnce() -> String) -> Self {
        Check {
            name,
            passed,
            counterexample: (!passed).then(detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Size parameter per suite. `None` picks the suite's default.
pub fn run(suite: Suite, size: Option<usize>, limits: &Limits) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Parseval => parseval(size.unwrap_or(10), limits)?,
        Suite::FForm => fform(size.unwrap_or(10), limits)?,
        Suite::Convergence => convergence(size.unwrap_or(3), &[8, 10, 12, 14], limits)?,
        Suite::Sandwich => sandwich(size.unwrap_or(8), &[2, 3], limits)?,
        Suite::ZSet => zset(size.unwrap_or(6), limits)?,
    };
    Ok(SuiteReport { suite, checks })
}

/// `Σ (f^λ)² = k!` and `Σ f^λ = t_k`, plus `f^λ` against enumeration for `k ≤ max_n`.
pub fn parseval(k_max: usize, limits: &Limits) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for k in 0..=k_max {
        let shapes = partitions_of(k);
        let squares: BigUint = shapes.iter().map(|l| count_syt(l).pow(2)).sum();
        let plain_sum: BigUint = shapes.iter().map(count_syt).sum();
        out.push(Check::compare(
            format!("sum of squares, k={k}"),
            squares,
            factorial(k),
        ));
        out.push(Check::compare(
            format!("sum of counts, k={k}"),
            plain_sum,
            count_involutions(k),
        ));
        if k <= limits.max_n {
            for l in &shapes {
                let mut it = enumerate_syt(l, limits)?;
                let mut n = 0u64;
                while it.next_word().is_some() {
                    n += 1;
                }
                out.push(Check::compare(
                    format!("hook formula, shape {l}"),
                    BigUint::from(n),
                    count_syt(l),
                ));
            }
        }
    }
    Ok(out)
}

/// The exact formula for tableaux with `k` at `(1,2)` against enumeration.
pub fn fform(n_max: usize, limits: &Limits) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        let counts = cell12_enumerated(n, limits)?;
        for (k, &count) in counts.iter().enumerate().skip(1) {
            let formula = cell12_count(n, k as i64)?;
            out.push(Check::compare(
                format!("f({n},{k})"),
                formula,
                BigUint::from(count),
            ));
        }
        // only the single-column tableau has no (1,2) cell
        let total: BigUint = (1..=n).map(|k| cell12_count(n, k as i64).unwrap()).sum();
        out.push(Check::compare(
            format!("row sum, n={n}"),
            total + 1u32,
            count_involutions(n),
        ));
    }
    Ok(out)
}

/// `counts[k]` = number of n-cell tableaux with entry `k` at `(1,2)`.
pub fn cell12_enumerated(n: usize, limits: &Limits) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; n + 1];
    let mut it = enumerate_syt_n(n, limits)?;
    while let Some(w) = it.next_word() {
        // (1,2) holds the second entry to land in row 0
        if let Some((e, _)) = w.iter().enumerate().filter(|&(_, &r)| r == 0).nth(1) {
            counts[e + 1] += 1;
        }
    }
    Ok(counts)
}

/// Counts of each k-prefix (by growth word) over all n-cell tableaux, in one pass.
pub fn prefix_counts(n: usize, k: usize, limits: &Limits) -> Result<HashMap<Vec<usize>, u64>> {
    let mut counts = HashMap::new();
    let mut it = enumerate_syt_n(n, limits)?;
    while let Some(w) = it.next_word() {
        *counts.entry(w[..k.min(n)].to_vec()).or_insert(0) += 1;
    }
    Ok(counts)
}

/// All k-cell tableaux in enumeration order.
pub fn tableaux_of_size(k: usize, limits: &Limits) -> Result<Vec<StandardTableau>> {
    let mut it = enumerate_syt_n(k, limits)?;
    let mut out = Vec::new();
    while let Some(w) = it.next_word() {
        out.push(StandardTableau::from_growth_word(w).expect("enumerated word"));
    }
    Ok(out)
}

/// `|N(n;T)/t_n − f^λ/|T|!|` for every `T` with `cells` cells, one entry per `n`.
pub fn convergence_deviations(
    cells: usize,
    ns: &[usize],
    limits: &Limits,
) -> Result<Vec<(StandardTableau, Vec<Rational>)>> {
    let small = tableaux_of_size(cells, limits)?;
    let mut devs = vec![Vec::new(); small.len()];
    for &n in ns {
        let counts = prefix_counts(n, cells, limits)?;
        let t = count_involutions(n);
        for (s, d) in small.iter().zip(devs.iter_mut()) {
            let hits = counts.get(&s.growth_word()).copied().unwrap_or(0);
            let diff = ratio(&BigUint::from(hits), &t) - limit_prob_subtableau(s);
            d.push(if diff < Rational::zero() { -diff } else { diff });
        }
    }
    Ok(small.into_iter().zip(devs).collect())
}

/// Deviations from the limit decrease strictly along `ns` for every tableau with `cells` cells.
///
/// Tableaux with at most two cells sit exactly at their limit for every `n`
/// (transposition symmetry); an identically zero sequence counts as a pass.
pub fn convergence(cells: usize, ns: &[usize], limits: &Limits) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (s, devs) in convergence_deviations(cells, ns, limits)? {
        let decreasing = devs.iter().all(Zero::is_zero) || devs.windows(2).all(|w| w[1] < w[0]);
        out.push(Check::holds(
            format!("deviation decreasing for {s}"),
            decreasing,
            || {
                format!(
                    "deviations at n={:?}: {}",
                    ns,
                    devs.iter()
                        .map(|d| format!("{:.6}", crate::format::approx(d)))
                        .join(", ")
                )
            },
        ));
    }
    Ok(out)
}

/// Sandwich bounds and the union bound on `q(I)` for involutions of size `n`.
pub fn sandwich(n: usize, sizes: &[usize], limits: &Limits) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let fixed = avg_fixed_points(n);
    for &k in sizes {
        let bound = q_bound(n, k, &fixed)?;
        for subset in (1..=n).combinations(k) {
            let r = sandwich_check(&Involutions, n, &subset, limits)?;
            out.push(Check::holds(
                format!("bounds, n={n}, I={subset:?}"),
                r.all_within_bounds,
                || {
                    let bad = r
                        .orderings
                        .iter()
                        .find(|(_, p)| p < &r.report.lower_bound || p > &r.report.upper_bound)
                        .map(|(t, p)| format!("p({t}) = {}", plain(p)))
                        .unwrap_or_default();
                    format!(
                        "{bad} outside [{}, {}]",
                        plain(&r.report.lower_bound),
                        plain(&r.report.upper_bound)
                    )
                },
            ));
            out.push(Check::holds(
                format!("equal B sizes, n={n}, I={subset:?}"),
                r.equal_b_sizes(),
                || format!("{:?}", r.b_sizes),
            ));
            let q = q_probability(&Involutions, n, &subset, limits)?;
            out.push(Check::holds(
                format!("q bound, n={n}, I={subset:?}"),
                q <= bound,
                || format!("q = {} > {}", plain(&q), plain(&bound)),
            ));
        }
    }
    Ok(out)
}

/// `|Z(T)| = f^λ` and every member of `Z(T)` inserts to `T`, for `|T| ≤ k_max`.
pub fn zset(k_max: usize, limits: &Limits) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for k in 0..=k_max {
        for t in tableaux_of_size(k, limits)? {
            let z = z_set(&t, limits)?;
            out.push(Check::compare(
                format!("|Z({t})|"),
                BigUint::from(z.len()),
                count_syt(&t.shape()),
            ));
        }
    }
    Ok(out)
}
