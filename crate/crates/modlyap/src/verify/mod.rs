//! Checks of the inequalities behind the main theorems, and exact checks of the polynomial
//! identities used in their proofs.

mod fixed;
mod poly;
mod scans;

pub use fixed::{triangle_margin_fixed, CertifiedMargin, FixedPoint};
pub use poly::{check_poly_identities, poly_identities, DivisionIdentity, RationalPoly};
pub use scans::{
    check_convexity, check_golden_silver_bounds, check_triangle, convexity_reports, neighbor_pairs,
    recheck_triangle_fixed, scan_decreasing, scan_f_lemmas, t_grid, triangle_cells, LevelData, ScanReport,
    TriangleCell, TriangleRecheck, NONSTRICT_TOLERANCE, STRICT_MARGIN,
};
