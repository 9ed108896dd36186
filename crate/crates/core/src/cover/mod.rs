//! Cyclic covers of the genus 2 surface and certificates for lifted
//! mapping classes.

pub mod certificate;
pub mod complex;
pub mod homology;
pub mod lift;

pub use certificate::{
    build_certificate, build_certificate_with, non_torelli_witness, spreading_bound,
    CertificateMode, CertificateOptions, CoverCertificate, DistanceCase, Fact, FactStatus,
    SpreadingBound,
};
pub use complex::{build_cover, CoverComplex};
pub use homology::{homology_basis, CoverHomology};
pub use lift::{lift_curve, lifted_multitwist_matrix, BaseCurve, LiftedCurve};
