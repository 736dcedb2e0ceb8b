//! Exact word-growth data for Artin monoids and their right-angled
//! companions, with Sturm-certified bounds on every growth rate.

pub mod census;
pub mod charpoly;
pub mod coxeter;
pub mod error;
pub mod hilbert;
pub mod poly;
pub mod rewrite;
pub mod spectra;
pub mod verify;

pub use census::{count_bruteforce, count_graph, CountTable, CountVector, Method, DEFAULT_GUARD};
pub use coxeter::{build_family, presentation, CoxeterGraph, EOrder, Family, Label, Presentation};
pub use error::{Error, Result};
pub use hilbert::{mobius_denominator, series_from_charpoly, RationalSeries};
pub use poly::IntPolynomial;
pub use rewrite::{CanonicalForms, CompletenessReport, RewriteSystem, Rule, Word};
pub use spectra::{growth_bound, isolate, isolate_all, GrowthBound, Interval, RootCertificate};
