/// Resource guards shared by the expensive constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of terms produced while distributing intersections.
    pub max_clauses: usize,
    /// Maximum number of DFA states in a product construction.
    pub max_states: usize,
    /// Maximum number of terms in any intermediate union.
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_clauses: 10_000,
            max_states: 250_000,
            max_terms: 200_000,
        }
    }
}
