//! Exact integer and rational linear algebra and polyhedral primitives.

pub mod linsys;
pub mod matrix;

pub use linsys::{
    affine_dimension, implied_equalities, integer_points, is_recession_trivial,
    linear_functional_interval, polytope_facets, relative_interior_point, strict_feasible,
    Constraint, LinearSystem, RationalPoint, Relation, ShiftEnumerator,
};
pub use matrix::{
    column_hermite, coords_in_basis, det_sign_of_columns, hermite_coset_reduce, nullspace_basis,
    rank_over_rationals, rational_rref, smith_normal_form, unimodular_inverse, IntMatrix,
    SnfDecomposition,
};
