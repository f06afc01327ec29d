//! Real algebraic curves as branched coverings of the projective line and
//! the anisotropic conic: admissibility, constructive realization plans,
//! and piecewise-linear models of the real locus.

pub mod bn;
pub mod cli;
pub mod constructions;
pub mod covering4;
pub mod pl;
pub mod planner;
pub mod topology;

pub use constructions::{execute, BaseSeed, ConstructionStep, Kind, Label, Variant};
pub use covering4::{build_covnum, covering_number, CoveringNumberTarget};
pub use pl::{min_circle_cover, realize, Arc, PlCover, PlMap};
pub use planner::{plan, verify_plan, Plan, PlanError, Provenance};
pub use topology::{target_admissible, CoverSpec, CoverTarget, DegreeVector, TopType};
