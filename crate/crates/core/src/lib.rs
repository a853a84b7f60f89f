//! Cyclic orbit flag codes over finite fields.
//!
//! A flag in `F_{q^n}` viewed as an `F_q`-vector space is a strictly nested
//! sequence of proper nonzero subspaces. The multiplicative group of the
//! field acts on flags by scaling, and the orbit of one flag is a cyclic
//! orbit flag code. The best friend vector of a flag lists, for every
//! subspace, the largest subfield over which that subspace is a vector
//! space; it controls the orbit size and brackets the minimum distance.
//!
//! ```
//! use orbitflag::{FieldParams, BestFriendVector, construct_general};
//!
//! let ctx = FieldParams::for_q(2, 16).unwrap().build().unwrap();
//! let bfv = BestFriendVector::new(vec![2, 4, 8]).unwrap();
//! let flag = construct_general(&ctx, &bfv).unwrap();
//! assert_eq!(flag.best_friend_vector(), bfv);
//! assert_eq!(flag.orbit_summary().cardinality, 21845);
//! ```

pub mod error;
pub mod field;
pub mod linalg;
pub mod numth;
pub mod subspace;
pub mod vectors;
pub mod bounds;
pub mod flag;
pub mod construct;
pub mod io;
pub mod oracle;
pub mod verify;

pub use bounds::{
    bounds_report, dvec_feasible, lower_bound_min_distance, max_distance_with_zeros, max_flag_distance,
    type_constraints_check, upper_bound_min_distance, BoundsReport, UpperBound, Violation,
};
pub use construct::{
    construct_general, construction_plan, galois_flag, realizability_verdict, ConstructionPlan, Recipe,
    RealizabilityVerdict,
};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldDescriptor, FieldElem, FieldParams, SubfieldId};
pub use flag::{check_optimum_distance, Flag, FlagOrbitSummary, OptimumCheck};
pub use io::FlagFile;
pub use oracle::{EnumBudget, Oracle};
pub use subspace::{OrbitSummary, Subspace};
pub use vectors::{BestFriendVector, DistanceVector, TypeVector};
