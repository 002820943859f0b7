//! Exact homotopy invariants of finite topological spaces.
//!
//! A finite T0 space is a finite poset whose open sets are the down-sets. This
//! crate computes, for such spaces:
//!
//! * beat-point cores, contractibility and homotopy of maps ([`homotopy`]);
//! * the LS-category `cat(P)` and the combinatorial complexity `CC_m(P)`,
//!   `CC(P)` (which equals the topological complexity `TC(P)`), each with an
//!   independently checkable certificate ([`complexity`]);
//! * the order complex `K(P)` ([`order_complex`]) and its mod-2 cohomology ring
//!   with the zero-divisor cup-length lower bound ([`cohomology`]).

pub mod cohomology;
pub mod complexity;
pub mod corpus;
pub mod error;
pub mod homotopy;
pub mod order_complex;
pub mod poset;

pub use error::{Error, Result};
pub use poset::{fence, parse_poset, Elem, FinitePoset, OpenSet};

/// Ceiling on enumerated mapping-space elements, chains, and search states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 2_000_000,
        }
    }
}

impl Limits {
    pub fn new(max_elements: usize) -> Self {
        Limits { max_elements }
    }

    pub(crate) fn check(&self, what: &'static str, needed: usize) -> Result<()> {
        if needed > self.max_elements {
            Err(Error::SizeLimit {
                what,
                needed,
                limit: self.max_elements,
            })
        } else {
            Ok(())
        }
    }
}
