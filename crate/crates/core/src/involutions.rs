//! Involutions of `[n]`: counts, enumeration, uniform sampling, subsequence
//! containment, and the exact number of tableaux with a given entry in cell (1,2).
//!
//! Conventions used throughout: `C(a, b) = 0` for `b < 0` or `b > a`, and
//! `t_m = 0` for `m < 0`.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::numeric::{binomial, factorial, ratio, rational_from_int, Rational};
use crate::real::Real;
use crate::rsk::Permutation;

/// `t_lo ..= t_hi` from `t_0 = t_1 = 1`, `t_n = t_{n-1} + (n-1) t_{n-2}`.
///
/// A window starting above zero still runs the recurrence from the start but
/// only retains the requested range.
#[derive(Debug, Clone)]
pub struct InvolutionCountTable {
    offset: usize,
    values: Vec<BigUint>,
    zero: BigUint,
}

impl InvolutionCountTable {
    pub fn up_to(n: usize) -> Self {
        Self::window(0, n)
    }

    pub fn window(lo: usize, hi: usize) -> Self {
        assert!(lo <= hi, "empty window {lo}..={hi}");
        let mut values = Vec::with_capacity(hi - lo + 1);
        let (mut prev, mut cur) = (BigUint::one(), BigUint::one()); // t_{m-1}, t_m at m = 0
        for m in 0..=hi {
            if m >= 2 {
                let next = &cur + &prev * (m as u64 - 1);
                prev = std::mem::replace(&mut cur, next);
            }
            if m >= lo {
                values.push(cur.clone());
            }
        }
        InvolutionCountTable {
            offset: lo,
            values,
            zero: BigUint::zero(),
        }
    }

    pub fn lowest(&self) -> usize {
        self.offset
    }

    pub fn highest(&self) -> usize {
        self.offset + self.values.len() - 1
    }

    pub fn covers(&self, lo: i64, hi: i64) -> bool {
        let lo = lo.max(0);
        hi < 0 || (lo >= self.offset as i64 && hi <= self.highest() as i64)
    }

    /// `t_m`, zero for negative `m`, `None` outside the window.
    pub fn get(&self, m: i64) -> Option<&BigUint> {
        if m < 0 {
            return Some(&self.zero);
        }
        let m = m as usize;
        m.checked_sub(self.offset).and_then(|i| self.values.get(i))
    }

    /// Like [`get`](Self::get) but panics outside the window.
    pub fn t(&self, m: i64) -> &BigUint {
        self.get(m).unwrap_or_else(|| {
            panic!(
                "t_{m} outside table window {}..={}",
                self.offset,
                self.highest()
            )
        })
    }
}

/// `t_n`, the number of involutions of `[n]` (equivalently of `n`-cell tableaux).
pub fn count_involutions(n: usize) -> BigUint {
    InvolutionCountTable::window(n, n).t(n as i64).clone()
}

/// Leading-order approximation `n^{n/2} exp(-n/2 + √n - 1/4) / √2` of `t_n`.
///
/// Accurate only up to a `1 + o(1)` factor; the ratio to `t_n` tends to 1
/// slowly.
pub fn involution_count_asymptotic(n: usize) -> Real {
    assert!(n >= 1);
    let nr = Real::from_u64(n as u64);
    let root_n = nr.sqrt();
    let mut power = Real::from_u64(n as u64).powi(n / 2);
    if n % 2 == 1 {
        power = &power * &root_n;
    }
    // -n/2 + √n - 1/4
    let quarter = Real::from_rational(&Rational::new(1.into(), 4.into()));
    let half_n = Real::from_rational(&Rational::new((n as i64).into(), 2.into()));
    let exponent = &(&root_n - &half_n) - &quarter;
    let value = &power * &exponent.exp();
    &value / &Real::from_u64(2).sqrt()
}

/// Enumerator of involutions in lexicographic order of one-line words.
///
/// The smallest unplaced point is either fixed or paired with a larger
/// unplaced point, trying partners in increasing order.
#[derive(Debug, Clone)]
pub struct Involutions {
    word: Vec<usize>, // 0 marks an unplaced point
    choices: Vec<(usize, usize)>,
    allow_fixed: bool,
    started: bool,
    done: bool,
}

impl Involutions {
    fn new(n: usize, allow_fixed: bool) -> Self {
        Involutions {
            word: vec![0; n],
            choices: Vec::with_capacity(n),
            allow_fixed,
            started: false,
            done: false,
        }
    }

    fn candidate(&self, i: usize, from: usize) -> Option<usize> {
        let from = if self.allow_fixed {
            from
        } else {
            from.max(i + 1)
        };
        (from..self.word.len()).find(|&j| self.word[j] == 0)
    }

    fn place(&mut self, i: usize, j: usize) {
        self.word[i] = j + 1;
        self.word[j] = i + 1;
        self.choices.push((i, j));
    }

    /// Extends to a full involution, backtracking first when `resume` is set.
    fn advance(&mut self, mut resume: bool) -> bool {
        loop {
            if resume {
                let Some((i, j)) = self.choices.pop() else {
                    return false;
                };
                self.word[i] = 0;
                self.word[j] = 0;
                if let Some(next) = self.candidate(i, j + 1) {
                    self.place(i, next);
                    resume = false;
                }
            } else {
                let Some(i) = self.word.iter().position(|&v| v == 0) else {
                    return true;
                };
                match self.candidate(i, i) {
                    Some(j) => self.place(i, j),
                    None => resume = true,
                }
            }
        }
    }

    /// The next one-line word, or `None` when exhausted.
    pub fn next_word(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        let resume = std::mem::replace(&mut self.started, true);
        if self.advance(resume) {
            Some(&self.word)
        } else {
            self.done = true;
            None
        }
    }
}

impl Iterator for Involutions {
    type Item = Permutation;
    fn next(&mut self) -> Option<Permutation> {
        self.next_word()
            .map(|w| Permutation::from_word_unchecked(w.to_vec()))
    }
}

fn check_cap(n: usize, limits: &Limits) -> Result<()> {
    if n > limits.max_n {
        return Err(Error::CapExceeded {
            what: "involution enumeration",
            requested: n,
            cap: limits.max_n,
            estimate: count_involutions(n).to_string(),
        });
    }
    Ok(())
}

/// Every involution of `[n]` exactly once, lexicographically.
pub fn enumerate_involutions(n: usize, limits: &Limits) -> Result<Involutions> {
    check_cap(n, limits)?;
    Ok(Involutions::new(n, true))
}

/// Every fixed-point-free involution of `[n]`; empty for odd `n`.
pub fn enumerate_fixed_point_free(n: usize, limits: &Limits) -> Result<Involutions> {
    check_cap(n, limits)?;
    Ok(Involutions::new(n, false))
}

/// Exactly uniform sampler of involutions of `[n]`.
///
/// Points are processed largest first. With `m` points left, the largest is
/// fixed with probability `t_{m-1}/t_m`, otherwise paired with a uniformly
/// chosen other remaining point.
#[derive(Debug, Clone)]
pub struct InvolutionSampler {
    n: usize,
    table: InvolutionCountTable,
}

impl InvolutionSampler {
    pub fn new(n: usize) -> Self {
        InvolutionSampler {
            n,
            table: InvolutionCountTable::up_to(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut word = vec![0; self.n];
        let mut free: Vec<usize> = (1..=self.n).collect();
        while let Some(x) = free.pop() {
            let m = free.len() as i64 + 1;
            let draw = rng.gen_biguint_below(self.table.t(m));
            if &draw < self.table.t(m - 1) {
                word[x - 1] = x;
            } else {
                let y = free.remove(rng.gen_range(0..free.len()));
                word[x - 1] = y;
                word[y - 1] = x;
            }
        }
        Permutation::from_word_unchecked(word)
    }
}

/// Uniform fixed-point-free involution of `[n]` (`n` even): the largest free
/// point is matched with a uniformly chosen other free point.
pub fn sample_fixed_point_free<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Option<Permutation> {
    if n % 2 == 1 {
        return None;
    }
    let mut word = vec![0; n];
    let mut free: Vec<usize> = (1..=n).collect();
    while let Some(x) = free.pop() {
        let y = free.remove(rng.gen_range(0..free.len()));
        word[x - 1] = y;
        word[y - 1] = x;
    }
    Some(Permutation::from_word_unchecked(word))
}

/// The RNG behind every seeded entry point.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One uniform involution of `[n]` from a fixed seed.
pub fn sample_involution(n: usize, seed: u64) -> Permutation {
    InvolutionSampler::new(n).sample(&mut seeded_rng(seed))
}

/// Average number of fixed points, `n t_{n-1} / t_n`.
pub fn avg_fixed_points(n: usize) -> Rational {
    assert!(n >= 1);
    let table = InvolutionCountTable::window(n - 1, n);
    ratio(&(table.t(n as i64 - 1) * n as u64), table.t(n as i64))
}

/// A sequence of distinct positive values, matched as a subsequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsequencePattern {
    values: Vec<usize>,
}

impl SubsequencePattern {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let mut sorted = values.clone();
        sorted.sort_unstable();
        if sorted.first() == Some(&0) || sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPattern(format!(
                "{values:?} must be distinct positive values"
            )));
        }
        Ok(SubsequencePattern { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<usize>) -> Self {
        SubsequencePattern { values }
    }

    /// `1 2 … k`.
    pub fn increasing(k: usize) -> Self {
        SubsequencePattern {
            values: (1..=k).collect(),
        }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl std::fmt::Display for SubsequencePattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let items: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "({})", items.join(","))
    }
}

/// True iff the values of `pattern` occur in `phi`'s word in pattern order.
/// Values larger than `n` never occur.
pub fn contains_subsequence(phi: &Permutation, pattern: &SubsequencePattern) -> bool {
    let n = phi.len();
    if pattern.values.iter().any(|&v| v > n) {
        return false;
    }
    let pos = phi.inverse();
    pattern
        .values
        .windows(2)
        .all(|w| pos.apply(w[0]) < pos.apply(w[1]))
}

// positions of values 1..=k increase, where pos(v) = word[v-1] for an involution
fn has_increasing_prefix(word: &[usize], k: usize) -> bool {
    (1..k).all(|v| word[v - 1] < word[v])
}

/// Involutions of `[n]` containing `1 2 … k`, by the closed form
/// `Σ_{j=0}^{k} C(n-k, k-j) t_{n-2k+j}`.
pub fn increasing_prefix_count(n: usize, k: usize) -> BigUint {
    let table = InvolutionCountTable::up_to(n);
    increasing_prefix_count_with(&table, n, k)
}

pub fn increasing_prefix_count_with(table: &InvolutionCountTable, n: usize, k: usize) -> BigUint {
    let (n, k) = (n as i64, k as i64);
    (0..=k)
        .map(|j| binomial(n - k, k - j) * table.t(n - 2 * k + j))
        .sum()
}

/// Same count as [`increasing_prefix_count`], by filtering all involutions.
pub fn increasing_prefix_count_bruteforce(n: usize, k: usize, limits: &Limits) -> Result<BigUint> {
    let mut all = enumerate_involutions(n, limits)?;
    if k > n {
        return Ok(BigUint::zero());
    }
    let mut count = 0u64;
    while let Some(w) = all.next_word() {
        if has_increasing_prefix(w, k) {
            count += 1;
        }
    }
    Ok(count.into())
}

/// Involutions of `[n]` that contain `1 2 … k` and have `k+1` before `k`,
/// for `1 <= k <= n-1`, by enumeration.
pub fn prefix_descent_count_bruteforce(n: usize, k: usize, limits: &Limits) -> Result<BigUint> {
    if k == 0 || k + 1 > n {
        return Err(Error::OutOfRange(format!(
            "need 1 <= k <= n-1, got n={n}, k={k}"
        )));
    }
    let mut all = enumerate_involutions(n, limits)?;
    let mut count = 0u64;
    while let Some(w) = all.next_word() {
        if has_increasing_prefix(w, k) && w[k] < w[k - 1] {
            count += 1;
        }
    }
    Ok(count.into())
}

/// Number of `n`-cell tableaux with entry `k` in cell (1,2).
///
/// `Σ_{j=0}^{k-1} C(n-k, k-j-1) t_{n-2k+j+2} − C(n-k, k-1) t_{n-2k+1} − C(n-k, k) t_{n-2k}`.
/// Zero for `k = 1` and `k > n`; `k <= 0` is rejected. In particular the value
/// 1 that the `k = 0` case would produce under the involution-count
/// identity is not returned here.
pub fn cell12_count(n: usize, k: i64) -> Result<BigUint> {
    let table = InvolutionCountTable::up_to(n);
    cell12_count_with(&table, n, k)
}

/// [`cell12_count`] against a precomputed table covering `t_{n-2k} ..= t_{n-k+1}`.
pub fn cell12_count_with(table: &InvolutionCountTable, n: usize, k: i64) -> Result<BigUint> {
    if k <= 0 {
        return Err(Error::OutOfRange(format!(
            "cell (1,2) entry must be positive, got k={k}"
        )));
    }
    let n_i = n as i64;
    if k == 1 || k > n_i {
        return Ok(BigUint::zero());
    }
    let (lo, hi) = (n_i - 2 * k, n_i - k + 1);
    if !table.covers(lo, hi) {
        return Err(Error::OutOfRange(format!(
            "table {}..={} does not cover t_{lo}..=t_{hi}",
            table.lowest(),
            table.highest()
        )));
    }
    let term = |a: i64, b: i64, m: i64| BigInt::from(binomial(a, b) * table.t(m));
    let positive: BigInt = (0..k)
        .map(|j| term(n_i - k, k - j - 1, n_i - 2 * k + j + 2))
        .sum();
    let value = positive - term(n_i - k, k - 1, n_i - 2 * k + 1) - term(n_i - k, k, n_i - 2 * k);
    Ok(value
        .to_biguint()
        .expect("cell (1,2) count is non-negative"))
}

/// `f(n, 1..=n)` as one row.
pub fn cell12_row(n: usize) -> Vec<BigUint> {
    let table = InvolutionCountTable::up_to(n);
    (1..=n as i64)
        .map(|k| cell12_count_with(&table, n, k).expect("k in range"))
        .collect()
}

/// `(k-1)/k!`, the limiting probability that cell (1,2) holds `k`.
pub fn cell12_limit(k: usize) -> Rational {
    if k < 2 {
        return Rational::zero();
    }
    Rational::new(BigInt::from(k - 1), BigInt::from(factorial(k)))
}

/// `(k-4) / (3 (k-3)!)`, the coefficient of `n^{-3/2}` in the expansion of
/// `f(n,k)/t_n`, for `k >= 3`.
pub fn second_order_coefficient(k: usize) -> Result<Rational> {
    if k < 3 {
        return Err(Error::OutOfRange(format!(
            "second-order term is defined for k >= 3, got {k}"
        )));
    }
    Ok(Rational::new(
        BigInt::from(k as i64 - 4),
        BigInt::from(factorial(k - 3) * 3u32),
    ))
}

/// Two-term approximation `(k-1)/k! + c_k n^{-3/2}` of `f(n,k)/t_n`.
pub fn cell12_probability_asymptotic(n: usize, k: usize) -> Result<Real> {
    let coefficient = Real::from_rational(&second_order_coefficient(k)?);
    let n3 = Real::from_u64(n as u64).powi(3).sqrt();
    let limit = Real::from_rational(&cell12_limit(k));
    Ok(&limit + &(&coefficient / &n3))
}

/// `(f(n,k)/t_n − (k-1)/k!) · n^{3/2}`, evaluated exactly until the final
/// conversion to `f64`.
pub fn second_order_residual(table: &InvolutionCountTable, n: usize, k: usize) -> Result<f64> {
    let f = cell12_count_with(table, n, k as i64)?;
    let tn = table
        .get(n as i64)
        .ok_or_else(|| Error::OutOfRange(format!("table does not contain t_{n}")))?;
    let kf = factorial(k);
    // (f k! − (k−1) t_n) / (t_n k!)
    let num = BigInt::from(&f * &kf) - BigInt::from(tn * (k as u64 - 1));
    let den = BigInt::from(tn * &kf);
    let scaled = crate::numeric::quotient_to_f64(&num, &den);
    Ok(scaled * (n as f64).powf(1.5))
}

/// Exact probability that a uniform involution of `[n]` fixes a given point.
pub fn fixed_point_probability(n: usize) -> Rational {
    avg_fixed_points(n) / rational_from_int(n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational_u;
    use itertools::Itertools;
    use std::collections::HashMap;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    // self-inverse words among all n! permutations
    fn involutions_brute(n: usize) -> Vec<Permutation> {
        (1..=n)
            .permutations(n)
            .map(|w| Permutation::new(w).unwrap())
            .filter(Permutation::is_involution)
            .collect()
    }

    #[test]
    fn counts() {
        assert_eq!(count_involutions(0), BigUint::from(1u32));
        assert_eq!(count_involutions(1), BigUint::from(1u32));
        assert_eq!(count_involutions(4), BigUint::from(10u32));
        assert_eq!(count_involutions(10), BigUint::from(9496u32));
        for n in 0..=8 {
            assert_eq!(
                count_involutions(n),
                BigUint::from(involutions_brute(n).len()),
                "n={n}"
            );
        }
    }

    #[test]
    fn table_windows() {
        let full = InvolutionCountTable::up_to(30);
        let win = InvolutionCountTable::window(20, 30);
        for m in 20..=30 {
            assert_eq!(full.t(m), win.t(m));
        }
        assert_eq!(win.get(19), None);
        assert_eq!(win.get(-1), Some(&BigUint::zero()));
        assert!(win.covers(20, 25));
        assert!(!win.covers(-3, 25));
        assert!(!win.covers(5, 25));
        assert!(win.covers(-3, -1));
    }

    #[test]
    fn enumeration_matches_definition() {
        let l = Limits::default();
        for n in 0..=7 {
            let fast: Vec<Permutation> = enumerate_involutions(n, &l).unwrap().collect();
            assert_eq!(fast, involutions_brute(n), "n={n}");
        }
        let three: Vec<String> = enumerate_involutions(3, &l)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(three, ["1 2 3", "1 3 2", "2 1 3", "3 2 1"]);
        let zero: Vec<Permutation> = enumerate_involutions(0, &l).unwrap().collect();
        assert_eq!(zero, vec![Permutation::identity(0)]);
        assert!(enumerate_involutions(15, &l).unwrap_err().is_cap());
    }

    #[test]
    fn fixed_point_free_enumeration() {
        let l = Limits::default();
        for n in 0..=8 {
            let fpf: Vec<Permutation> = enumerate_fixed_point_free(n, &l).unwrap().collect();
            let brute: Vec<Permutation> = involutions_brute(n)
                .into_iter()
                .filter(|p| p.fixed_points() == 0)
                .collect();
            assert_eq!(fpf, brute, "n={n}");
        }
    }

    #[test]
    fn asymptotic_count() {
        let one = involution_count_asymptotic(1).to_f64();
        assert!((one - 0.25f64.exp() / 2f64.sqrt()).abs() < 1e-14);

        let err = |n: usize| involution_count_asymptotic(n).relative_error(&count_involutions(n));
        assert!(err(100) < err(20));
        assert!(err(100) < err(50));
        assert!(err(200) < err(100));
        assert!(err(200).to_f64() < 0.02);
    }

    #[test]
    fn sampler_is_deterministic() {
        assert_eq!(sample_involution(1, 7), Permutation::identity(1));
        for seed in 0..20 {
            let a = sample_involution(12, seed);
            assert!(a.is_involution());
            assert_eq!(a, sample_involution(12, seed));
        }
    }

    #[test]
    fn sampler_frequencies_small_n() {
        // χ² over all involutions, 10^5 draws; threshold is far in the tail of χ²_{t_n - 1}
        for n in 2..=5 {
            let sampler = InvolutionSampler::new(n);
            let mut rng = seeded_rng(1000 + n as u64);
            let mut counts: HashMap<Permutation, u64> = HashMap::new();
            let draws = 100_000u64;
            for _ in 0..draws {
                *counts.entry(sampler.sample(&mut rng)).or_default() += 1;
            }
            let cells = involutions_brute(n);
            assert_eq!(counts.len(), cells.len());
            let expected = draws as f64 / cells.len() as f64;
            let chi2: f64 = cells
                .iter()
                .map(|p| {
                    let o = counts[p] as f64;
                    (o - expected).powi(2) / expected
                })
                .sum();
            let dof = (cells.len() - 1) as f64;
            assert!(
                chi2 < dof + 6.0 * (2.0 * dof).sqrt() + 10.0,
                "n={n}: χ²={chi2}"
            );
        }
    }

    #[test]
    fn fixed_point_free_sampler() {
        let mut rng = seeded_rng(3);
        assert!(sample_fixed_point_free(5, &mut rng).is_none());
        for _ in 0..50 {
            let p = sample_fixed_point_free(10, &mut rng).unwrap();
            assert!(p.is_involution());
            assert_eq!(p.fixed_points(), 0);
        }
    }

    #[test]
    fn fixed_point_averages() {
        assert_eq!(avg_fixed_points(4), rational_u(8, 5));
        assert_eq!(avg_fixed_points(1), rational_u(1, 1));
        let l = Limits::default();
        for n in 1..=10 {
            let all: Vec<Permutation> = enumerate_involutions(n, &l).unwrap().collect();
            let total: usize = all.iter().map(Permutation::fixed_points).sum();
            assert_eq!(
                avg_fixed_points(n),
                rational_u(total as u64, all.len() as u64)
            );
        }
        // roughly √n − 1/2
        let v = crate::format::approx(&avg_fixed_points(100));
        assert!((v / 10.0 - 1.0).abs() < 0.05, "{v}");
        assert!((v - 9.5).abs() < 0.1, "{v}");
    }

    #[test]
    fn subsequences() {
        let pat = |v: &[usize]| SubsequencePattern::new(v.to_vec()).unwrap();
        assert!(contains_subsequence(&perm("1 3 2 4"), &pat(&[1, 2])));
        assert!(!contains_subsequence(&perm("2 1 3"), &pat(&[1, 2])));
        assert!(contains_subsequence(&perm("2 1 3"), &pat(&[2])));
        assert!(contains_subsequence(&perm("4 1 3 2"), &pat(&[4, 3, 2])));
        assert!(!contains_subsequence(&perm("2 1 3"), &pat(&[4])));
        assert!(SubsequencePattern::new(vec![1, 1]).is_err());
        assert!(SubsequencePattern::new(vec![0, 1]).is_err());
    }

    #[test]
    fn prefix_descent_counts() {
        let l = Limits::default();
        assert_eq!(
            prefix_descent_count_bruteforce(5, 1, &l).unwrap(),
            BigUint::from(13u32)
        );
        assert_eq!(
            prefix_descent_count_bruteforce(7, 3, &l).unwrap(),
            BigUint::from(28u32)
        );
        for n in 2..=9 {
            assert_eq!(
                prefix_descent_count_bruteforce(n, n - 1, &l).unwrap(),
                BigUint::one()
            );
        }
        assert!(prefix_descent_count_bruteforce(5, 0, &l).is_err());
        assert!(prefix_descent_count_bruteforce(5, 5, &l).is_err());
    }

    #[test]
    fn increasing_prefix_counts() {
        let l = Limits::default();
        for n in 0..=10 {
            let tn = count_involutions(n);
            assert_eq!(increasing_prefix_count(n, 0), tn);
            if n >= 1 {
                assert_eq!(increasing_prefix_count(n, 1), tn);
            }
            for k in 0..=n {
                let closed = increasing_prefix_count(n, k);
                assert_eq!(
                    closed,
                    increasing_prefix_count_bruteforce(n, k, &l).unwrap(),
                    "n={n} k={k}"
                );
                if n >= 1 && k >= 1 {
                    let rec = increasing_prefix_count(n - 1, k - 1)
                        + binomial(n as i64 - k as i64, k as i64)
                            * InvolutionCountTable::up_to(n).t(n as i64 - 2 * k as i64);
                    assert_eq!(closed, rec, "recurrence n={n} k={k}");
                }
            }
        }
        assert_eq!(increasing_prefix_count(5, 2), BigUint::from(13u32));
    }

    #[test]
    fn cell12_examples() {
        assert_eq!(cell12_count(7, 2).unwrap(), BigUint::from(116u32));
        assert_eq!(cell12_count(9, 4).unwrap(), BigUint::from(321u32));
        for n in 1..=12 {
            assert_eq!(cell12_count(n, 1).unwrap(), BigUint::zero());
            assert_eq!(cell12_count(n, n as i64 + 1).unwrap(), BigUint::zero());
        }
        assert!(cell12_count(5, 0).is_err());
        assert!(cell12_count(5, -2).is_err());
    }

    #[test]
    fn cell12_matches_both_brute_forces() {
        use crate::shapes::Cell;
        use crate::tableaux::enumerate_syt_n;
        let l = Limits::default();
        for n in 2..=10 {
            let mut by_entry = vec![0u64; n + 1];
            for t in enumerate_syt_n(n, &l).unwrap() {
                if let Some(v) = t.entry(Cell::new(1, 2)) {
                    by_entry[v] += 1;
                }
            }
            for (k, &count) in by_entry.iter().enumerate().skip(2) {
                let exact = cell12_count(n, k as i64).unwrap();
                assert_eq!(exact, BigUint::from(count), "tableaux n={n} k={k}");
                assert_eq!(
                    exact,
                    prefix_descent_count_bruteforce(n, k - 1, &l).unwrap(),
                    "F n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn telescoping_and_row_sums() {
        for n in 2..=10 {
            let row = cell12_row(n);
            for k in 1..n {
                let tail: BigUint = row[k..].iter().sum(); // f(n, k+1 ..= n)
                assert_eq!(increasing_prefix_count(n, k), tail + 1u32, "n={n} k={k}");
            }
            let total: BigUint = row.iter().sum();
            assert_eq!(total + 1u32, count_involutions(n));
        }
        // boundary term: G(5,2) = 13 while f(5,3)+f(5,4)+f(5,5) = 12
        let row = cell12_row(5);
        assert_eq!(row[2..].iter().sum::<BigUint>(), BigUint::from(12u32));
    }

    #[test]
    fn second_order_coefficients() {
        assert_eq!(second_order_coefficient(4).unwrap(), Rational::zero());
        assert_eq!(second_order_coefficient(3).unwrap(), -rational_u(1, 3));
        assert_eq!(second_order_coefficient(5).unwrap(), rational_u(1, 6));
        assert!(second_order_coefficient(2).is_err());
        let approx = cell12_probability_asymptotic(10_000, 3).unwrap().to_f64();
        assert!((approx - (1.0 / 3.0 - 1e-6 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn residual_shrinks_toward_coefficient() {
        let table = InvolutionCountTable::window(200, 1024);
        let c3_512 = second_order_residual(&table, 512, 3).unwrap();
        let c3_1024 = second_order_residual(&table, 1024, 3).unwrap();
        assert!((c3_1024 + 1.0 / 3.0).abs() < (c3_512 + 1.0 / 3.0).abs());
        assert!(second_order_residual(&table, 100, 3).is_err());
    }
}
