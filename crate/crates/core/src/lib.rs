//! Exact linear algebra for the higher reduced Kodaira–Spencer–Mather maps of
//! plane multicusps.
//!
//! A multicusp is a finite collection of rotated cusps `x ↦ R_θ(x², x³)` whose
//! rotation angles are pairwise distinct modulo π. For each level `i` the map
//! `ᵢω̄f` sends homogeneous degree-`i` vector fields on the plane to a finite
//! quotient of vector fields along `f`. This crate builds that map as an exact
//! rational matrix, computes kernels, and checks the decomposition and
//! bijectivity statements about it instance by instance.
//!
//! The numeric layers ([`linalg`], [`jet`], [`multigerm`], [`ksm`]) are generic
//! over an exact [`Field`]. The verifiers, reports and text encodings work with
//! arbitrary-precision rationals; the aliases below name those instantiations.

pub mod error;
pub mod jet;
pub mod ksm;
pub mod linalg;
pub mod multigerm;
pub mod report;
pub mod scalar;
pub mod sweep;
pub mod theorems;

pub use error::{Error, Result};
pub use scalar::{Field, HalfTangent};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub type QCirclePoint = scalar::CirclePoint<Rational>;
pub type QMatrix = linalg::Matrix<Rational>;
pub type QSubspace = linalg::Subspace<Rational>;
pub type QSeriesJet = jet::SeriesJet<Rational>;
pub type QMulticusp = multigerm::Multicusp<Rational>;
pub type QHomogeneousField = multigerm::HomogeneousField<Rational>;
pub type QPolynomialField = multigerm::PolynomialField<Rational>;
pub type QAlongFieldJet = multigerm::AlongFieldJet<Rational>;
pub type QLevelSpace = ksm::LevelSpace<Rational>;
