//! Real algebraic numbers enumerated by Cantor height.
//!
//! Every real algebraic number is a root of exactly one canonical irreducible
//! integer polynomial. Listing those polynomials by height, then listing their
//! real roots, gives an enumeration of the real algebraic numbers. This crate
//! builds that list exactly (big integers, rational isolating intervals) and
//! in a fixed, reproducible order.
//!
//! ```
//! use algebraic_heights::catalog::{build_catalog, phi_table};
//!
//! let catalog = build_catalog(4).unwrap();
//! assert_eq!(catalog.len(), 19);
//! assert_eq!(catalog[15].decimal, "-1.6180339887");
//! assert_eq!(phi_table(&catalog).totals(), vec![1, 2, 4, 12]);
//! ```

pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod intpoly;
pub mod irreducibility;
pub mod ordering;
pub mod par;
pub mod realroots;

pub use catalog::{build_catalog, build_catalog_with, CatalogEntry, CatalogOptions, PhiTable};
pub use error::{Error, Result};
pub use intpoly::{Polynomial, Rational, Sign};
pub use par::Exec;
pub use realroots::AlgebraicReal;
