//! Exact computations with piecewise-linear homeomorphism groups of the line:
//! Thompson's group F and Bieri–Strebel groups, left-invariant preorders on
//! them, wreath-product (Plante) orders, self-similar Cantor-type invariant
//! sets, and finite-scale dynamical realizations of the resulting actions.

pub mod checks;
pub mod exactnum;
pub mod plgroup;
pub mod preorders;
pub mod plante;
pub mod realize;
pub mod symsets;

pub use exactnum::{
    lattice_sign, module_index, parse_rational, slope_decompose, Dyadic, ExactRational, LatticePreorder,
    NumError, Sign, SlopeGroup,
};
pub use plgroup::{
    ball, compose, cross_free, evaluate, f0, fixed_structure, invert, jump_cocycle, linked_pair,
    standard_generators, two_chain_witness, verify_relators, Affine, Bound, End, Family, FixedStructure,
    GroupElement, GroupPresentationContext, Model, PLMap, PlError, Side,
};
pub use preorders::{
    axioms_report, combined_prime_sign, escaping_compare, jump_sign, prime_jump_sign, restriction_sign, xg,
    AxiomBudget, AxiomReport, CombinedPrimeEngine, DiscreteInvariantSet, EscapingContext, EscapingEngine,
    JumpEngine, PointEngine, PreorderError, PrimeEngine, RestrictionEngine, SignEngine, Xg,
};
pub use plante::{
    cset_cross_free, delta_kernel, plante_sign, wreath_generators, BaseEmbedding, CSet, Config, Kernel,
    PlanteEngine, PlanteError, PlanteOrder, WreathElement,
};
pub use symsets::{
    cancellation_check, glue, line_f_generators, Alpha, OkEngine, SetPoint, SymContext, SymError, TailSet,
    WordPair,
};
pub use realize::{
    build_frame, cf_cover_check, classify_empirical, classify_predicted, homothety_witness, induced_map,
    interval_orbit, refinement_check, CfVerdict, Direction, DynType, Horograding, Location, OrbitFrame,
    RealizeError,
};
