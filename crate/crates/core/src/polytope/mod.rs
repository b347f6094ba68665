//! Linear systems, extended formulations and their exact certification.

mod balas;
mod dd;
mod ef;
mod linsys;
mod lp;
mod verify;
mod vrep;

pub use balas::balas_union;
pub use dd::{check_hull, dd_hull, hull, Hull, MAX_HULL_DIM, MAX_HULL_POINTS};
pub use ef::{AffineMap, ExtendedFormulation};
pub use linsys::{LinearSystem, Relation, Row};
pub use lp::{implied_lower_bounds, lp_max, LpOutcome, LpSolver, LpStatus};
pub use verify::{format_row, verify_ef, verify_empty, EfReport, FacetViolation};
pub use vrep::{vrep_to_ef, VRep};
