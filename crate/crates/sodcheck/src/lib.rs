//! Exact verification of semi-orthogonal decompositions for
//! mu_d-equivariant sum-of-potentials hypersurfaces.
//!
//! The hypersurface is X = V(f + g) in P^{m+n-1}, where f and g are
//! degree-d forms in disjoint variable sets and the cyclic group mu_d
//! scales the g-variables.  The equivariant derived category decomposes
//! into copies of the two fixed-locus categories, a join-line category,
//! and a block of mn exceptional line bundles; everything this crate
//! computes (sheaf cohomology, local Koszul Ext, Hilbert series) is exact
//! integer arithmetic, so the verification is a finite decision procedure
//! for each (m, n, d).
//!
//! Modules:
//! * [`chars`] / [`config`]: characters of mu_d and the (m, n, d) triple;
//! * [`cohomology`]: line-bundle cohomology by monomial counting;
//! * [`localext`]: Ext between cyclic modules over power-series rings;
//! * [`geometry`]: Ext tables between spanning objects;
//! * [`hilbert`]: truncated equivariant Hilbert-series identities;
//! * [`checker`]: decomposition assembly and the verification battery;
//! * [`cli`]: the `sodcheck` command-line front end.

pub mod chars;
pub mod checker;
pub mod cli;
pub mod cohomology;
pub mod config;
pub mod geometry;
pub mod hilbert;
pub mod localext;
pub mod util;
