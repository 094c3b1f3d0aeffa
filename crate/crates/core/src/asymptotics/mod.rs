//! High-precision evaluation of the asymptotic formulas.

pub mod c1;
pub mod dominant;
pub mod fixed;
pub mod hp;
pub mod saddle;
pub mod sqdk;
pub mod truncation;

pub use c1::{estimate_c1, richardson, C1Estimate};
pub use dominant::{cmg_dominant_log, cmg_unsimplified_log, csg_dominant_log, csg_theta_log};
pub use fixed::{fixed_excess_asympt, fixed_excess_error, fixed_excess_exact, FixedExcessAsympt};
pub use hp::{HpFloat, DEFAULT_PRECISION};
pub use saddle::{saddle_identities, solve_saddle, SaddleIdentities, SaddlePoint};
pub use sqdk::{sqdk, sqdk_table, SqdkTable};
pub use truncation::{truncation_report, TruncationReport};
