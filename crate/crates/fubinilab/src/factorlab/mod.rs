//! Enriched orthogonality, the (surjection, initial-injection)
//! factorization system, the inverted-morphism class of double dualization,
//! functional completion, and the reflected tensor on complete objects.

pub mod complete;
pub mod ortho;

pub use complete::{
    completion, completion_monad, completion_monad_morphism, reflected_tensor,
    reflected_symmetry_iso, reflected_unit_iso, is_complete, lift_along,
    reflexivity_retraction_check, sigma_inverted,
};
pub use ortho::{
    epi_strongmono_factorize, is_orthogonal, is_pointwise_epi, is_pointwise_mono,
    is_strong_mono, is_v_epi, is_v_mono, ordinary_orthogonal, FactorizationPair,
    OrthoWitness, OrthogonalityCertificate,
};
