//! Stable-set polytope STAB(G), its clique relaxation QSTAB(G), fractional
//! colourings and the state-independent contextuality test.

pub mod certificate;
mod fractional;
mod sic;
mod stab;

pub use certificate::{verify_certificate, Certificate, CertificateBody};
pub use fractional::{
    fractional_chromatic_number, tighten_fractional_coloring, verify_fractional_clique, FractionalChromatic,
    FractionalColoring,
};
pub use sic::{sic_test, SicVerdict};
pub use stab::{
    qstab_membership, stab_membership, uniform_point, verify_decomposition, ConvexDecomposition, SeparatingHyperplane,
    StabMembership,
};

/// Outcome of a certificate check: valid, or the first violated condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check(Option<String>);

impl Check {
    pub fn valid() -> Self {
        Check(None)
    }

    pub fn fail(reason: impl Into<String>) -> Self {
        Check(Some(reason.into()))
    }

    pub fn is_valid(&self) -> bool {
        self.0.is_none()
    }

    pub fn failure(&self) -> Option<&str> {
        self.0.as_deref()
    }

    /// Keeps the first failure.
    pub fn and_then(self, next: impl FnOnce() -> Check) -> Check {
        if self.is_valid() {
            next()
        } else {
            self
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return $crate::polytope::Check::fail(format!($($fmt)+));
        }
    };
}
pub(crate) use ensure;
