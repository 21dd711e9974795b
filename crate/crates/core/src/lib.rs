pub mod bound;
pub mod error;
pub mod linalg;
pub mod norms;
pub mod pinching;
pub mod special;
pub mod state_gen;
pub mod summation;
pub mod tolerance;
pub mod verify;

pub use bound::{
    certify_exact, closed_form_tail, corollary2_bound, n_epsilon, optimal_certificate, tail_sum,
    theorem1_bound, Certificate, DecayModel, ExactCertification,
};
pub use error::{Error, Result};
pub use linalg::{
    hermitian_eig, is_normal, modulus, normal_eig, projection_from_vectors, singular_spectrum,
    ComplexMatrix, Projection, SingularSpectrum, Spectrum,
};
pub use norms::{schatten_norm, trace, PExponent};
pub use num_complex::Complex64;
pub use state_gen::GeneratedState;
pub use verify::{SweepRow, SweepTable, VerificationReport};
