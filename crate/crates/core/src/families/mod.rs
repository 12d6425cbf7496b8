//! Deformation families and the strata of their parameter planes.

pub mod fit;
pub mod genericity;
pub mod li_subset;
pub mod model;
pub mod resultant;
pub mod sweep;
pub mod trace;

pub use fit::{fit_power_law, FitConfig, PowerFit};
pub use genericity::{check_genericity, GenericityReport};
pub use li_subset::{check_li_order, verify_li_subset_v, LiOrderCheck};
pub use model::{model_family, FamilyError, MultiPoly, ParamFamily, MODEL_NAMES, SWEEP_MODELS};
pub use resultant::{compare_v2_routes, ResultantConfig, RouteComparison};
pub use sweep::{census_sweep, region_consistency, swallowtail_census, RegionReport, SweepCell, SweepConfig};
pub use trace::{trace_all, trace_strata, trace_stratum, StratumTrace, TraceConfig, TracedBranch};
