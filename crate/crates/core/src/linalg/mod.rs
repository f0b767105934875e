//! Exact vectors, matrices and polynomials over `Q`, plus the tools used to
//! locate eigenvalues inside `Q_p`.

mod hensel;
mod matrix;
mod newton;
mod poly;
mod roots;

pub use hensel::{hensel_roots, HenselOutcome, PadicRoot, DEFAULT_HENSEL_PRECISION, RESIDUE_SEARCH_LIMIT};
pub use matrix::{frame_operator, gram_matrix, inner_product, sup_norm, trace, trace_of_square, Matrix, Vector};
pub use newton::{newton_polygon, NewtonPolygon, Segment};
pub use poly::{char_poly, char_poly_capped, is_squarefree, Polynomial, DEFAULT_CHAR_POLY_CAP};
pub use roots::rational_roots;
