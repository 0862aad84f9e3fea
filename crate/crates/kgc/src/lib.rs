//! Exact-arithmetic workbench for the Kontsevich graph complex: graphs and
//! canonical forms, the (directed) complex, exact homology, tree posets and
//! Lie-hedra, graded signs and the dimension calculus.

pub mod complex;
pub mod dimcalc;
pub mod formats;
pub mod graphs;
pub mod homology;
pub mod signs;
pub mod trees;
