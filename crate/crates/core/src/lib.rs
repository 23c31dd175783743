//! Graph-theoretic and stabilizer machinery for studying which families of
//! graph states are classically simulable.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: simple undirected graphs stored as symmetric bit matrices,
//!   the lattice/chain/tree generators, and the edge-list text format.
//! * [`gf2`]: bit-packed binary matrices, rank over GF(2), and the cut-rank
//!   of a vertex bipartition.
//! * [`rankwidth`]: subcubic trees, rank decompositions, exhaustive
//!   rank-width and a greedy linear upper bound.
//! * [`logic`]: parser and model checker for monadic second-order logic with
//!   the parity predicate `Even(X)`, evaluated by enumeration on finite graphs
//!   and finite graph families.
//! * [`graphstate`]: graph-state stabilizer tableaux with Pauli measurements,
//!   and a dense state-vector oracle used to cross-check them.

pub mod error;
pub mod gf2;
pub mod graph;
pub mod graphstate;
pub mod logic;
pub mod rankwidth;

pub use error::{Error, Result};
pub use gf2::{cut_rank, cut_submatrix, rank2, Gf2Matrix};
pub use graph::{generate, parse_edge_list, serialize, Graph, GraphFamily, GraphKind};
pub use graphstate::{
    dense_measure, dense_state_vector, graph_state_tableau, simulate_pattern, Basis, DenseState,
    Measurement, Outcome, PauliOperator, StabilizerTableau, TranscriptEntry,
};
pub use logic::{
    evaluate, free_variables, named_formula, parse_formula, theory_member, Formula, TheoryVerdict,
};
pub use rankwidth::{
    decomposition_width, enumerate_subcubic_trees, exact_rankwidth, greedy_decomposition,
    tree_edge_bipartition, ExactSearch, RankDecomposition, SubcubicTree,
};
