//! Rational-point computations over F_p and Q: singular loci, orders, and
//! the checkers for the resolution criteria.

mod checks;
mod order;
mod points;
mod report;

pub use checks::{check_aq, check_order_drop, check_res, check_res2, check_theorem_a, verify_resolution, OrderMode};
pub use order::{ideal_order_at_point, order_at_point, support_at_least};
pub use points::{jacobian_singular_points, Budget, FpPoint, MAX_ENUMERATION_VARS};
pub use report::{render_witness, CheckReport, Condition, Verdict, Witness, PROXY_NOTE};
