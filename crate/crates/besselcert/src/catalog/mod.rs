//! Catalog of uniform inequalities, their evaluators and the margin and
//! supremum machinery used by the certification sweep.

mod aux;
mod expr;
mod records;

pub use aux::{eval_aux, AuxFamily, AuxFunctionSpec};
pub use expr::{
    expr_deriv_tail_product, expr_k_normalized_gap, expr_repeated_deriv_product,
    expr_singular_difference, zero_order_constants, SERIES_SWITCH_X,
};
pub use records::{
    catalog, eval_margin, slice_supremum, slices, supremum_search, x_points, BoundRecord, Domain3,
    Interval, MarginEval, NuClass, Point, Sense, Side, SliceSup, MARGIN_TOL,
};
