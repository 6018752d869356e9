//! Monads on finite convergence spaces and vector spaces: the distribution
//! monad, the double-dualization monad, commutativity of the former, and a
//! generic calculus of adjunctions and monad morphisms tying them together.

pub mod cat;
pub mod commute;
pub mod ddual;
pub mod dist;
pub mod instances;
pub mod enrich;

pub use cat::{
    adjunction_iso, compose_adjunctions, enumerate_morphisms,
    monad_morphism_from_factorization, transported_monad, AdjunctionInstance, Component,
    Functor, MonadInstance, MonadMorphism, Mor, Obj,
};
pub use commute::{
    check_commutative, fubini_instance, FubiniInstance, FubiniVerdict, FubiniWitness,
    ReflexivityVerdicts,
};
pub use ddual::{
    check_h_monad_laws, check_partial_naturality, gamma, h_map, is_reflexive, partial_map,
    HObject, ReflexivityOutcome,
};
pub use dist::{check_d_monad_laws, d_map, kappa, DObject};
pub use instances::{
    composite_vs_distribution, distribution_monad, double_dualization_monad,
    dualization_adjunction, free_forgetful_adjunction,
};
pub use enrich::enrichment_roundtrip_check;
