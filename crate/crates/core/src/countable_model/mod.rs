//! Concrete functions on the natural numbers with finitely presented
//! structure: exact composition, exact kernel profiles, conjugacy witnesses
//! and the surgery constructions.

mod conjugacy;
mod epset;
mod fibers;
mod function;
mod oracle;
mod random;
mod realize;
mod surgery;

pub use conjugacy::{conjugacy_witness, ConjugacyWitness, LazyBijection};
pub use epset::{extend_to_permutation, matching, piecewise, EpSet};
pub use fibers::{Fiber, FiberTable, INFINITE};
pub use oracle::{audit, check_closure, check_pair, query_sizes, run_oracle, OracleSummary};
pub use function::{compose, interpolate, ConcreteFunction, Presentation, Rule, RuleEntry, RuleKind, SIZE_LIMIT};
pub use random::{
    random_function, random_realizable_profile, random_realization, random_structured_permutation, FunctionParams,
    PermutationParams,
};
pub use realize::{realize, unrealizable_reason};
pub use surgery::{
    surgery_collapse_to_constant, surgery_drop_finite_class, surgery_raise_min, surgery_square_min, Surgery,
    SurgeryOutcome,
};

/// `f(n)`.
pub fn apply(f: &ConcreteFunction, n: u64) -> u64 {
    f.apply(n)
}

/// The certified kernel profile of `f`.
pub fn kernel_profile(f: &ConcreteFunction) -> crate::kernel_sequence::KernelProfile {
    f.profile().clone()
}
