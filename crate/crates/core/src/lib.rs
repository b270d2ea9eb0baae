//! Fractional Fourier transform toolkit.
//!
//! * [`transform`]: the continuous transform and its inverse by direct quadrature.
//! * [`summability`]: Abel and Gauss means of the inverse transform.
//! * [`crypto`]: weight lift, encryption and summability-mean decryption.
//! * [`multipliers`]: the fractional Hilbert multiplier and triple encryption.
//! * [`fast`]: a chirp-convolution fast discrete transform used as a baseline.
//! * [`io`]: text formats for signals and keys.

// `!(x > 0.0)` style checks deliberately reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod crypto;
pub mod error;
pub mod fast;
pub mod io;
pub mod multipliers;
pub mod order;
pub mod quadrature;
pub mod signal;
pub mod summability;
pub mod transform;

pub use error::{FrftError, Result};
pub use order::{make_order, FrftOrder, OrderKind};
pub use quadrature::{QuadratureSpec, Rule};
pub use signal::{EvaluationGrid, SampledSignal};
pub use transform::{frft, frft_reciprocal, inverse_frft, kernel};
pub use summability::{gauss_kernel, phi_mean, poisson_kernel, weight_eval, Phi, PhiWeight, SummabilitySpec};
pub use crypto::{
    compute_offset, decrypt, encrypt, key_from_text, key_to_text, omega_eval, p_omega, q_omega, CipherSignal,
    EncryptionKey, WeightSpec,
};
pub use multipliers::{apply_multiplier, multiplier_eval, triple_decrypt, triple_encrypt, MultiplierSpec};
pub use fast::{fast_decrypt_attempt, fast_frft, FastDfrftPlan};
pub use io::{read_signal, write_signal};
