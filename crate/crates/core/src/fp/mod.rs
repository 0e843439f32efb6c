//! Evaluation of the closed-walk fractions F_p: neighborhood extraction,
//! the float kernel, the exact polynomial mode, and length sweeps.

mod exact;
mod neighborhood;
mod numeric;
mod sweep;

pub use exact::{fp_exact, FpExact};
pub use neighborhood::{build_neighborhood, NeighborhoodGraph};
pub use numeric::{extract_cp, fp_numeric, fp_numeric_with, FloatCTable};
pub use sweep::{
    extrema, fit_rows, square_fit_rows, write_fit_csv, write_sweep_csv, Accumulator, Extrema,
    FitRow, SquareFitRow, SweepAccumulator, SweepResult,
};
