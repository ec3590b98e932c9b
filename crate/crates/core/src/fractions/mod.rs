//! Function-field elements and diagonal quadratic forms over them.

mod forms;
mod ratfunc;

pub use forms::{
    pfister_expand, self_certificate, verify_representation, verify_subform_certificate, EntryMatch, PfisterForm,
    QuadForm, Representation, Sign, SubformCertificate,
};
pub use ratfunc::RatFunc;
pub(crate) use ratfunc::{divide_monomial, monomial_content};

use crate::ring::RingError;

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum FracError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("Pfister slot {0} is zero")]
    ZeroSlot(usize),
    #[error("form entry {0} is zero")]
    ZeroEntry(usize),
    #[error("witness pair (a, b) is (0, 0)")]
    ZeroWitness,
    #[error("certificate does not cover entry {0}")]
    IncompleteCertificate(usize),
    #[error("identity fails for entry {0}")]
    IdentityFails(usize),
    #[error("Pfister index {0} out of range")]
    IndexOutOfRange(usize),
}
