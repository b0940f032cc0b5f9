//! Finite quandles of cyclic type: verification, structure, isomorphism,
//! constructions and exhaustive enumeration.
//!
//! A quandle of order `n` is stored as its permutations `μ_1..μ_n`, with
//! `a ∗ b = μ_b(a)`. Points are labeled `1..n` throughout the public API.

pub mod claims;
pub mod constructors;
pub mod io;
pub mod iso;
pub mod perm;
pub mod quandle;
pub mod search;
pub mod structure;

pub use constructors::{
    adjoin_chain, adjoin_common_fixed_point, dihedral, divisible_family, extract_common_fixed_point,
    extract_unchecked, iterate_adjoin, q62, trivial, two_f_canonical, ConstructError, FamilySpec,
};
pub use io::{parse_quandle, Format, LoadError, ParseError};
pub use iso::{dedup_up_to_iso, find_isomorphism, is_isomorphism, IsoClass, IsoClasses, IsoWitness};
pub use perm::{Pattern, PermError, Permutation};
pub use quandle::{verify, AxiomViolation, Profile, Quandle, QuandleError, ViolationKind};
pub use structure::{
    association_classes, check_structure_conditions, common_fixed_points, fixed_point_data,
    is_congruence, is_connected, quotient, ConditionReport, PartitionClasses, StructureError,
};
