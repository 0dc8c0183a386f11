//! Finite order theory at desk scale: posets and linear extensions, exact
//! Dushnik–Miller dimension with an independent oracle, realizer-extension
//! bounds under chain and point removal, linear-order separation with exact
//! rational choice reductions, generator families with their companion
//! realizers, and a finite stage-by-stage adversary against candidate
//! separator programs.

pub mod bounds;
pub mod diagonal;
pub mod dimension;
pub mod generators;
pub mod poset;
pub mod separators;

pub use bounds::{
    anchor_linearization, db_point, dbc, dbi, lift_extension, AnchoredRequest, BoundsError,
};
pub use diagonal::{
    check_requirements, run_diagonalization, ActionKind, CandidateProgram, DiagonalError,
    DiagonalTranscript, RequirementVerdict,
};
pub use dimension::{
    dimension_exact, dimension_oracle, standard_realization, verify_realizer, DimensionError,
    DimensionResult, Realizer, RealizerVerdict,
};
pub use generators::{
    leveled_poset, point_removal_scenario, reversal_scenario, separating_levels, sharpness_fixture,
    standard_example, GeneratorError, InjectionPair, LevelMeta, LeveledPoset, PointRemovalScenario,
    ReversalScenario, ReversalVariant, SharpnessCase, SharpnessFixture,
};
pub use poset::{online_linearize, ChainSet, LinearExtension, Poset, PosetError};
pub use separators::{
    is_valid_separator, ls, ls_star, ls_to_point, point_to_separator, separator_elements,
    xc1_via_ls, RationalInterval, SeparatorError, SeparatorInstance, SeparatorMode,
};
