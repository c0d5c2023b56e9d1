//! Symmetric-group side: permutations, Young–Yamanouchi irreps, the dense Fourier
//! transform over `S_n`, cosets of Young subgroups and group-algebra arithmetic.

mod algebra;
mod irrep;
mod permutation;

pub use algebra::{
    coset_vector, left_regular, qft_matrix, qft_with_table, right_regular, string_index, string_of_index,
    tensor_perm_action, transversal, young_projector, young_subgroup, young_subgroup_of_weight,
    GroupAlgebraElement, QFT_CAP,
};
pub use irrep::{irrep_matrix, yy_generator, Irrep, IrrepTable};
pub use permutation::{all_permutations, Permutation};
