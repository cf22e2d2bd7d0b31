/// Caps that keep enumeration desk-sized. Every cap fails loudly when hit;
/// nothing is ever silently truncated.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest order allowed for any constructed table (products, quotient
    /// towers, endomorphism monoids viewed as semigroups).
    pub max_order: usize,
    /// Largest congruence family `all_congruences` will produce, and the
    /// largest candidate count index-filtered searches will scan.
    pub congruence_cap: usize,
    /// Largest endomorphism monoid enumeration will produce.
    pub end_cap: usize,
    /// Largest candidate count for brute-force map oracles (`n^n` filters).
    pub oracle_bound: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 4096,
            congruence_cap: 100_000,
            end_cap: 100_000,
            oracle_bound: 10_000_000,
        }
    }
}
