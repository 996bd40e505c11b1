//! Subsequence statistics of permutation families closed under conjugation.
//!
//! For a family `P_n` and a sequence `τ` of `k` distinct values, `p̃(n,τ)` is
//! the fraction of members containing `τ` as a subsequence. A family is
//! quasirandom when `max_τ |p̃(n,τ) − 1/k!| → 0` for every `k`. For an index
//! set `I` with `|I| = k`, `q(I)` is the fraction of members mapping some
//! element of `I` into `I`; every ordering `τ` of `I` then satisfies
//! `(1−q)/k! ≤ p̃(n,τ) ≤ (1−q)/k! + q`.

use std::str::FromStr;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::format::with_denominator;
use crate::involutions::{
    count_involutions, enumerate_fixed_point_free, enumerate_involutions, sample_fixed_point_free,
    seeded_rng, InvolutionSampler, SubsequencePattern,
};
use crate::limits::Limits;
use crate::numeric::{
    factorial, falling_factorial, ratio, rational_from_int, rational_u, Rational,
};
use crate::rsk::Permutation;

/// Samples drawn per seeded block in Monte-Carlo mode. Block `b` uses seed
/// `seed + b`, so results do not depend on the number of workers.
pub const SAMPLE_BLOCK: u64 = 4096;

pub type Sampler = Box<dyn Fn(&mut ChaCha8Rng) -> Permutation + Send + Sync>;

/// A family of permutations, one finite set `P_n` per size.
pub trait PermutationFamily: Sync {
    fn name(&self) -> &str;

    fn contains(&self, p: &Permutation) -> bool;

    /// Whether each `P_n` is a union of conjugacy classes of `S_n`.
    fn is_conjugation_closed(&self) -> bool;

    fn member_count(&self, n: usize) -> BigUint;

    /// Visits every member of size `n` in a fixed order.
    fn for_each_member(&self, n: usize, limits: &Limits, f: &mut dyn FnMut(&[usize]))
        -> Result<()>;

    /// A uniform sampler for `P_n`, when one exists.
    fn sampler(&self, _n: usize) -> Option<Sampler> {
        None
    }
}

pub struct AllPermutations;
pub struct Involutions;
pub struct FixedPointFreeInvolutions;

impl PermutationFamily for AllPermutations {
    fn name(&self) -> &str {
        "all"
    }

    fn contains(&self, _p: &Permutation) -> bool {
        true
    }

    fn is_conjugation_closed(&self) -> bool {
        true
    }

    fn member_count(&self, n: usize) -> BigUint {
        factorial(n)
    }

    fn for_each_member(
        &self,
        n: usize,
        limits: &Limits,
        f: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        if n > limits.max_k {
            return Err(Error::CapExceeded {
                what: "permutation enumeration",
                requested: n,
                cap: limits.max_k,
                estimate: factorial(n).to_string(),
            });
        }
        for w in (1..=n).permutations(n) {
            f(&w);
        }
        Ok(())
    }

    fn sampler(&self, n: usize) -> Option<Sampler> {
        Some(Box::new(move |rng: &mut ChaCha8Rng| {
            use rand::seq::SliceRandom;
            let mut w: Vec<usize> = (1..=n).collect();
            w.shuffle(rng);
            Permutation::new(w).expect("shuffle of 1..=n")
        }))
    }
}

impl PermutationFamily for Involutions {
    fn name(&self) -> &str {
        "involutions"
    }

    fn contains(&self, p: &Permutation) -> bool {
        p.is_involution()
    }

    fn is_conjugation_closed(&self) -> bool {
        true
    }

    fn member_count(&self, n: usize) -> BigUint {
        count_involutions(n)
    }

    fn for_each_member(
        &self,
        n: usize,
        limits: &Limits,
        f: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        let mut all = enumerate_involutions(n, limits)?;
        while let Some(w) = all.next_word() {
            f(w);
        }
        Ok(())
    }

    fn sampler(&self, n: usize) -> Option<Sampler> {
        let s = InvolutionSampler::new(n);
        Some(Box::new(move |rng: &mut ChaCha8Rng| s.sample(rng)))
    }
}

impl PermutationFamily for FixedPointFreeInvolutions {
    fn name(&self) -> &str {
        "fixed-point-free"
    }

    fn contains(&self, p: &Permutation) -> bool {
        p.is_involution() && p.fixed_points() == 0
    }

    fn is_conjugation_closed(&self) -> bool {
        true
    }

    fn member_count(&self, n: usize) -> BigUint {
        if n % 2 == 1 {
            return BigUint::zero();
        }
        // (n-1)!! perfect matchings
        (1..n as u64)
            .step_by(2)
            .fold(BigUint::one(), |acc, i| acc * i)
    }

    fn for_each_member(
        &self,
        n: usize,
        limits: &Limits,
        f: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        let mut all = enumerate_fixed_point_free(n, limits)?;
        while let Some(w) = all.next_word() {
            f(w);
        }
        Ok(())
    }

    fn sampler(&self, n: usize) -> Option<Sampler> {
        if n % 2 == 1 {
            return None;
        }
        Some(Box::new(move |rng: &mut ChaCha8Rng| {
            sample_fixed_point_free(n, rng).expect("even n")
        }))
    }
}

/// Names accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinFamily {
    All,
    Involutions,
    FixedPointFree,
}

impl BuiltinFamily {
    pub fn family(self) -> &'static dyn PermutationFamily {
        match self {
            BuiltinFamily::All => &AllPermutations,
            BuiltinFamily::Involutions => &Involutions,
            BuiltinFamily::FixedPointFree => &FixedPointFreeInvolutions,
        }
    }

    pub fn all() -> [BuiltinFamily; 3] {
        [
            BuiltinFamily::All,
            BuiltinFamily::Involutions,
            BuiltinFamily::FixedPointFree,
        ]
    }
}

impl FromStr for BuiltinFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" | "permutations" => Ok(BuiltinFamily::All),
            "involutions" => Ok(BuiltinFamily::Involutions),
            "fpf" | "fixed-point-free" => Ok(BuiltinFamily::FixedPointFree),
            _ => Err(Error::Parse(format!(
                "unknown family {s:?} (expected all, involutions or fixed-point-free)"
            ))),
        }
    }
}

fn require_members(family: &dyn PermutationFamily, n: usize) -> Result<BigUint> {
    let m = family.member_count(n);
    if m.is_zero() {
        return Err(Error::EmptyFamily {
            family: family.name().to_string(),
            n,
        });
    }
    Ok(m)
}

fn positions(word: &[usize], pos: &mut [usize]) {
    for (i, &v) in word.iter().enumerate() {
        pos[v - 1] = i;
    }
}

fn word_contains(pos: &[usize], pattern: &[usize]) -> bool {
    pattern.iter().all(|&v| v <= pos.len())
        && pattern.windows(2).all(|w| pos[w[0] - 1] < pos[w[1] - 1])
}

/// `p̃(n,τ) = h(n,τ) / |P_n|`, exactly.
pub fn ptilde_exact(
    family: &dyn PermutationFamily,
    n: usize,
    pattern: &SubsequencePattern,
    limits: &Limits,
) -> Result<Rational> {
    let members = require_members(family, n)?;
    let mut hits = 0u64;
    let mut pos = vec![0; n];
    family.for_each_member(n, limits, &mut |w| {
        positions(w, &mut pos);
        if word_contains(&pos, pattern.values()) {
            hits += 1;
        }
    })?;
    Ok(ratio(&BigUint::from(hits), &members))
}

/// Monte-Carlo estimate of `p̃(n,τ)` with its plug-in binomial standard error.
pub fn ptilde_mc(
    family: &dyn PermutationFamily,
    n: usize,
    pattern: &SubsequencePattern,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    if samples == 0 {
        return Err(Error::OutOfRange("at least one sample is required".into()));
    }
    let sampler = family
        .sampler(n)
        .ok_or_else(|| Error::NoSampler(family.name().to_string()))?;
    let mut hits = 0u64;
    let mut pos = vec![0; n];
    for_each_sample(&sampler, samples, seed, &mut |w| {
        positions(w, &mut pos);
        if word_contains(&pos, pattern.values()) {
            hits += 1;
        }
    });
    let p = hits as f64 / samples as f64;
    Ok((p, (p * (1.0 - p) / samples as f64).sqrt()))
}

fn for_each_sample(sampler: &Sampler, samples: u64, seed: u64, f: &mut dyn FnMut(&[usize])) {
    let blocks = samples.div_ceil(SAMPLE_BLOCK);
    for b in 0..blocks {
        run_block(sampler, samples, seed, b, f);
    }
}

fn run_block(sampler: &Sampler, samples: u64, seed: u64, block: u64, f: &mut dyn FnMut(&[usize])) {
    let mut rng = seeded_rng(seed.wrapping_add(block));
    let start = block * SAMPLE_BLOCK;
    for _ in start..(start + SAMPLE_BLOCK).min(samples) {
        f(sampler(&mut rng).word());
    }
}

fn maps_into(word: &[usize], set: &[bool]) -> bool {
    word.iter().enumerate().any(|(i, &v)| set[i] && set[v - 1])
}

fn index_set(n: usize, subset: &[usize]) -> Result<Vec<bool>> {
    let mut set = vec![false; n];
    for &i in subset {
        if i == 0 || i > n || std::mem::replace(&mut set[i - 1], true) {
            return Err(Error::OutOfRange(format!(
                "index set {subset:?} must hold distinct elements of 1..={n}"
            )));
        }
    }
    Ok(set)
}

/// `q(I) = |A(I)| / |P_n|` with `A(I) = {φ : φ(I) ∩ I ≠ ∅}`.
pub fn q_probability(
    family: &dyn PermutationFamily,
    n: usize,
    subset: &[usize],
    limits: &Limits,
) -> Result<Rational> {
    let members = require_members(family, n)?;
    let set = index_set(n, subset)?;
    let mut hits = 0u64;
    family.for_each_member(n, limits, &mut |w| {
        if maps_into(w, &set) {
            hits += 1;
        }
    })?;
    Ok(ratio(&BigUint::from(hits), &members))
}

/// Union bound `k (n(k−1) + f_n (n−k)) / (n (n−1))` on `q(I)` for `|I| = k`,
/// where `f_n` is the average number of fixed points.
pub fn q_bound(n: usize, k: usize, avg_fixed: &Rational) -> Result<Rational> {
    if n < 2 || k == 0 || k > n {
        return Err(Error::OutOfRange(format!(
            "need n >= 2 and 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let (nr, kr) = (rational_from_int(n as u64), rational_from_int(k as u64));
    let one = Rational::one();
    let inner = &nr * (&kr - &one) + avg_fixed * (&nr - &kr);
    Ok(kr * inner / (&nr * (nr.clone() - one)))
}

/// Average number of fixed points over the enumerated `P_n`.
pub fn average_fixed_points(
    family: &dyn PermutationFamily,
    n: usize,
    limits: &Limits,
) -> Result<Rational> {
    let members = require_members(family, n)?;
    let mut total = 0u64;
    family.for_each_member(n, limits, &mut |w| {
        total += w.iter().enumerate().filter(|&(i, &v)| v == i + 1).count() as u64;
    })?;
    Ok(ratio(&BigUint::from(total), &members))
}

/// True iff conjugating every member of `P_n` by every adjacent
/// transposition lands back in the family.
pub fn closed_under_adjacent_conjugation(
    family: &dyn PermutationFamily,
    n: usize,
    limits: &Limits,
) -> Result<bool> {
    let swaps: Vec<Permutation> = (1..n)
        .map(|i| {
            let mut w: Vec<usize> = (1..=n).collect();
            w.swap(i - 1, i);
            Permutation::new(w).expect("transposition")
        })
        .collect();
    let mut closed = true;
    family.for_each_member(n, limits, &mut |w| {
        let p = Permutation::new(w.to_vec()).expect("member is a permutation");
        closed &= swaps.iter().all(|s| family.contains(&p.conjugate_by(s)));
    })?;
    Ok(closed)
}

/// Extremal deviation of `p̃` from `1/k!` together with the sandwich bounds
/// for the value set of the witnessing pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationReport {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub max_deviation: Rational,
    pub argmax_pattern: SubsequencePattern,
    /// `p̃(n, argmax_pattern)`.
    pub ptilde: Rational,
    /// `q(I)` for `I` the values of `argmax_pattern`.
    pub q: Rational,
    pub lower_bound: Rational,
    pub upper_bound: Rational,
    pub sampling: Option<SamplingInfo>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingInfo {
    pub samples: u64,
    pub seed: u64,
}

impl DeviationReport {
    fn new(
        family: &dyn PermutationFamily,
        n: usize,
        k: usize,
        argmax_pattern: SubsequencePattern,
        ptilde: Rational,
        q: Rational,
        sampling: Option<SamplingInfo>,
    ) -> Self {
        let inv_kf = ratio(&BigUint::one(), &factorial(k));
        let max_deviation = abs(&ptilde - &inv_kf);
        let lower_bound = (Rational::one() - &q) * &inv_kf;
        let upper_bound = &lower_bound + &q;
        DeviationReport {
            family: family.name().to_string(),
            n,
            k,
            max_deviation,
            argmax_pattern,
            ptilde,
            q,
            lower_bound,
            upper_bound,
            sampling,
        }
    }

    /// `lower_bound ≤ p̃(n, argmax_pattern) ≤ upper_bound`.
    pub fn within_bounds(&self) -> bool {
        self.lower_bound <= self.ptilde && self.ptilde <= self.upper_bound
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "family": self.family,
            "n": self.n,
            "k": self.k,
            "mode": if self.sampling.is_some() { "sample" } else { "exact" },
            "max_deviation": with_denominator(&self.max_deviation),
            "argmax_pattern": self.argmax_pattern.values(),
            "ptilde": with_denominator(&self.ptilde),
            "q": with_denominator(&self.q),
            "lower_bound": with_denominator(&self.lower_bound),
            "upper_bound": with_denominator(&self.upper_bound),
            "within_bounds": self.within_bounds(),
        });
        if let Some(s) = self.sampling {
            v["samples"] = json!(s.samples);
            v["seed"] = json!(s.seed);
        }
        v
    }
}

fn abs(r: Rational) -> Rational {
    if r < Rational::zero() {
        -r
    } else {
        r
    }
}

/// Counts, for every k-tuple of distinct values of `[n]`, how many visited
/// words contain it. Tuples are ranked lexicographically.
struct PatternCounter {
    n: usize,
    k: usize,
    weights: Vec<usize>,
    counts: Vec<u64>,
    visited: u64,
}

impl PatternCounter {
    fn new(n: usize, k: usize) -> Self {
        let weights = (0..k)
            .map(|d| {
                falling_factorial(n - d - 1, k - d - 1)
                    .to_usize()
                    .expect("pattern count checked against cap")
            })
            .collect();
        let total = falling_factorial(n, k).to_usize().expect("checked");
        PatternCounter {
            n,
            k,
            weights,
            counts: vec![0; total],
            visited: 0,
        }
    }

    fn visit(&mut self, word: &[usize]) {
        self.visited += 1;
        self.descend(word, 0, 0, 0, 0);
    }

    fn descend(&mut self, word: &[usize], start: usize, depth: usize, used: u128, rank: usize) {
        if depth == self.k {
            self.counts[rank] += 1;
            return;
        }
        for i in start..=self.n - (self.k - depth) {
            let v = word[i] - 1;
            let smaller_used = (used & ((1u128 << v) - 1)).count_ones() as usize;
            let r = v - smaller_used;
            self.descend(
                word,
                i + 1,
                depth + 1,
                used | 1u128 << v,
                rank + r * self.weights[depth],
            );
        }
    }

    fn merge(&mut self, other: PatternCounter) {
        self.visited += other.visited;
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
    }

    fn unrank(&self, mut rank: usize) -> Vec<usize> {
        let mut free: Vec<usize> = (1..=self.n).collect();
        self.weights
            .iter()
            .map(|&w| {
                let r = rank / w;
                rank %= w;
                free.remove(r)
            })
            .collect()
    }

    /// First-found maximiser of `|count/visited − 1/k!|`.
    fn argmax(&self) -> (Vec<usize>, u64) {
        let kf = factorial(self.k).to_u64().expect("k small") as i128;
        let m = self.visited as i128;
        // |c/m − 1/k!| compares as |c k! − m|
        let (best, _) =
            self.counts
                .iter()
                .enumerate()
                .fold((0usize, -1i128), |(bi, bd), (i, &c)| {
                    let d = (c as i128 * kf - m).abs();
                    if d > bd {
                        (i, d)
                    } else {
                        (bi, bd)
                    }
                });
        (self.unrank(best), self.counts[best])
    }
}

fn check_pattern_caps(n: usize, k: usize, limits: &Limits) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    if n > 128 {
        return Err(Error::OutOfRange(format!(
            "pattern statistics support n <= 128, got {n}"
        )));
    }
    let patterns = falling_factorial(n, k);
    if patterns > BigUint::from(limits.max_patterns) {
        return Err(Error::CapExceeded {
            what: "pattern count",
            requested: n,
            cap: limits.max_patterns,
            estimate: patterns.to_string(),
        });
    }
    if k > 20 {
        return Err(Error::OutOfRange(format!("k={k} too large")));
    }
    Ok(())
}

fn sharded_counts(
    family: &dyn PermutationFamily,
    n: usize,
    k: usize,
    limits: &Limits,
    jobs: usize,
) -> Result<PatternCounter> {
    let jobs = jobs.max(1);
    if jobs == 1 {
        let mut counter = PatternCounter::new(n, k);
        family.for_each_member(n, limits, &mut |w| counter.visit(w))?;
        return Ok(counter);
    }
    // worker j takes members with index ≡ j (mod jobs)
    let parts: Vec<Result<PatternCounter>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                s.spawn(move || {
                    let mut counter = PatternCounter::new(n, k);
                    let mut idx = 0usize;
                    family.for_each_member(n, limits, &mut |w| {
                        if idx % jobs == j {
                            counter.visit(w);
                        }
                        idx += 1;
                    })?;
                    Ok(counter)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut parts = parts.into_iter();
    let mut total = parts.next().expect("at least one worker")?;
    for p in parts {
        total.merge(p?);
    }
    Ok(total)
}

/// `max_τ |p̃(n,τ) − 1/k!|` over all k-tuples of distinct values, exactly.
///
/// `jobs > 1` shards the member stream; the result does not depend on it.
pub fn deviation(
    family: &dyn PermutationFamily,
    n: usize,
    k: usize,
    limits: &Limits,
    jobs: usize,
) -> Result<DeviationReport> {
    check_pattern_caps(n, k, limits)?;
    let members = require_members(family, n)?;
    let counter = sharded_counts(family, n, k, limits, jobs)?;
    debug_assert_eq!(BigUint::from(counter.visited), members);
    let (witness, hits) = counter.argmax();
    let ptilde = ratio(&BigUint::from(hits), &members);
    let q = q_probability(family, n, &witness, limits)?;
    Ok(DeviationReport::new(
        family,
        n,
        k,
        SubsequencePattern::from_values_unchecked(witness),
        ptilde,
        q,
        None,
    ))
}

/// Monte-Carlo version of [`deviation`]: `p̃` and `q` are replaced by sample
/// frequencies over `samples` seeded draws.
pub fn deviation_sampled(
    family: &dyn PermutationFamily,
    n: usize,
    k: usize,
    samples: u64,
    seed: u64,
    limits: &Limits,
    jobs: usize,
) -> Result<DeviationReport> {
    check_pattern_caps(n, k, limits)?;
    if samples == 0 {
        return Err(Error::OutOfRange("at least one sample is required".into()));
    }
    let sampler = family
        .sampler(n)
        .ok_or_else(|| Error::NoSampler(family.name().to_string()))?;
    let blocks = samples.div_ceil(SAMPLE_BLOCK);
    let jobs = (jobs.max(1) as u64).min(blocks);
    let sampler = &sampler;
    let mut parts = std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                s.spawn(move || {
                    let mut counter = PatternCounter::new(n, k);
                    for b in (j..blocks).step_by(jobs as usize) {
                        run_block(sampler, samples, seed, b, &mut |w| counter.visit(w));
                    }
                    counter
                })
            })
            .collect::<Vec<_>>();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect::<Vec<_>>()
            .into_iter()
    });
    let mut counter = parts.next().expect("at least one worker");
    for p in parts {
        counter.merge(p);
    }
    let (witness, hits) = counter.argmax();
    let set = index_set(n, &witness)?;
    let mut overlap = 0u64;
    for_each_sample(sampler, samples, seed, &mut |w| {
        if maps_into(w, &set) {
            overlap += 1;
        }
    });
    Ok(DeviationReport::new(
        family,
        n,
        k,
        SubsequencePattern::from_values_unchecked(witness),
        rational_u(hits, samples),
        rational_u(overlap, samples),
        Some(SamplingInfo { samples, seed }),
    ))
}

/// Result of checking the sandwich bounds for every ordering of one index set.
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    /// Extremal ordering and the bounds.
    pub report: DeviationReport,
    /// Orderings of `I` in lexicographic order with `p̃(n,τ)`.
    pub orderings: Vec<(SubsequencePattern, Rational)>,
    /// `|B(τ)|` per ordering: members outside `A(I)` containing `τ`.
    pub b_sizes: Vec<u64>,
    pub all_within_bounds: bool,
}

impl SandwichReport {
    pub fn equal_b_sizes(&self) -> bool {
        self.b_sizes.windows(2).all(|w| w[0] == w[1])
    }

    pub fn passes(&self) -> bool {
        self.all_within_bounds && self.equal_b_sizes()
    }
}

/// Checks `(1−q(I))/k! ≤ p̃(n,τ) ≤ (1−q(I))/k! + q(I)` for all `k!` orderings `τ` of `I`.
pub fn sandwich_check(
    family: &dyn PermutationFamily,
    n: usize,
    subset: &[usize],
    limits: &Limits,
) -> Result<SandwichReport> {
    if !family.is_conjugation_closed() {
        return Err(Error::Precondition(format!(
            "family {} is not closed under conjugation",
            family.name()
        )));
    }
    let k = subset.len();
    if k == 0 {
        return Err(Error::OutOfRange("index set must be non-empty".into()));
    }
    if k > limits.max_k {
        return Err(Error::CapExceeded {
            what: "orderings of the index set",
            requested: k,
            cap: limits.max_k,
            estimate: factorial(k).to_string(),
        });
    }
    let set = index_set(n, subset)?;
    let members = require_members(family, n)?;
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    let orderings: Vec<Vec<usize>> = sorted.iter().copied().permutations(k).collect();
    let mut h = vec![0u64; orderings.len()];
    let mut b = vec![0u64; orderings.len()];
    let mut in_a = 0u64;
    let mut pos = vec![0; n];
    family.for_each_member(n, limits, &mut |w| {
        positions(w, &mut pos);
        // each member contains exactly one ordering of I: its values sorted by position
        let mut order = sorted.clone();
        order.sort_by_key(|&v| pos[v - 1]);
        let idx = orderings.binary_search(&order).expect("ordering of I");
        h[idx] += 1;
        if maps_into(w, &set) {
            in_a += 1;
        } else {
            b[idx] += 1;
        }
    })?;
    let q = ratio(&BigUint::from(in_a), &members);
    let ptildes: Vec<Rational> = h
        .iter()
        .map(|&c| ratio(&BigUint::from(c), &members))
        .collect();
    let kf = BigInt::from(factorial(k));
    let inv_kf = Rational::new(BigInt::one(), kf);
    let (best, _) = ptildes
        .iter()
        .enumerate()
        .map(|(i, p)| (i, abs(p - &inv_kf)))
        .fold((0, None::<Rational>), |(bi, bd), (i, d)| match &bd {
            Some(x) if &d <= x => (bi, bd),
            _ => (i, Some(d)),
        });
    let report = DeviationReport::new(
        family,
        n,
        k,
        SubsequencePattern::from_values_unchecked(orderings[best].clone()),
        ptildes[best].clone(),
        q,
        None,
    );
    let all_within_bounds = ptildes
        .iter()
        .all(|p| &report.lower_bound <= p && p <= &report.upper_bound);
    Ok(SandwichReport {
        orderings: orderings
            .into_iter()
            .map(SubsequencePattern::from_values_unchecked)
            .zip(ptildes)
            .collect(),
        b_sizes: b,
        all_within_bounds,
        report,
    })
}
