//! Lattice computations for fake weighted projective spaces.
//!
//! Given the rays of a toric fan, this crate computes the fundamental group in
//! codimension 1 as the quotient of the lattice by the ray span, builds the
//! universal cover in codimension 1 (a weighted projective space together with
//! its deck group), decides whether the input is a genuine weighted projective
//! space, and classifies two-dimensional cases covered by the projective plane
//! as explicit cyclic quotients.
//!
//! ```
//! use fwps::{pi11, toric};
//!
//! let fan = toric::validate_fwps(&[vec![1, -1], vec![1, 2], vec![-2, -1]]).unwrap();
//! let cover = pi11::universal_cover(&fan).unwrap();
//! assert_eq!(cover.cover_weights.as_slice(), &[1, 1, 1]);
//! assert_eq!(cover.deck_group.to_string(), "Z/3");
//! ```

pub mod cli;
pub mod error;
pub mod intlat;
pub mod oracle;
pub mod par;
pub mod pi11;
pub mod quotients;
pub mod toric;

pub use error::{Error, Result};
