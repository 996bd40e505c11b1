/// Enumeration caps shared by every brute-force routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for enumerating tableaux or involutions with `n` cells/letters.
    pub max_n: usize,
    /// Largest `k` for enumerating all `k!` permutations.
    pub max_k: usize,
    /// Largest `K` for cell-assignment probabilities (enumerates all K-cell tableaux).
    pub max_assignment: usize,
    /// Largest number of distinct subsequence patterns tracked at once.
    pub max_patterns: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 14,
            max_k: 9,
            max_assignment: 12,
            max_patterns: 1 << 22,
        }
    }
}
