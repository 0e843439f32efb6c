//! Lattice Green's-function machinery: the exact square-lattice C matrix
//! and the triangular-lattice diagonal resistances.

mod oracle;
mod square;
pub mod triangular;

pub use oracle::quadrature_oracle;
pub use square::CTable;
