//! Conjugates of the `e_k`, the sum matrix `S(n)`, its determinant and
//! kernel, and the tabulated action of the conjugates on basis vectors.

mod conjugates;
mod det;
mod nullspace;
pub mod action;

pub use conjugates::{all_conjugates, all_specs, c_matrix, g_path, sum_matrix, sum_of, ConjugateSpec};
pub use det::{
    det_s7_closed_form, det_sum_at, det_sum_probabilistic, det_sum_symbolic, symbolic_det, DetSample,
    MAX_SYMBOLIC_RANK,
};
pub use nullspace::{
    kernel_at, kernel_at_direct, kernel_at_seeded, kernel_dim_at_point, translates_stay_in_kernel, normalize_vector, verify_kernel_translates,
    KernelReport,
};
