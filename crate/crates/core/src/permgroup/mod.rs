//! Combinatorics and representation theory of the symmetric group `S_N`:
//! partitions, Young tableaux, permutations, Young's orthogonal irreducible
//! representations and their characters.

mod irrep;
mod partition;
mod permutation;
mod tableau;

pub use irrep::{character, character_values, irrep, s3_doublet, IrrepMatrices};
pub use partition::Partition;
pub use permutation::Permutation;
pub use tableau::{row_col_groups, standard_tableaux, Tableau};

/// All partitions of `n`, `(n)` first. See [`Partition::enumerate`].
pub fn enumerate_partitions(n: usize) -> crate::Result<Vec<Partition>> {
    Partition::enumerate(n)
}

/// `N_λ` by the hook-length formula.
pub fn hook_dimension(shape: &Partition) -> u64 {
    shape.hook_dimension()
}

/// `N!`.
pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}
