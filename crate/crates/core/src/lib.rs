//! Maximum-length hybrid 90/150 cellular automata.
//!
//! - [`gf2poly`]: polynomial arithmetic over GF(2).
//! - [`charpoly`]: rule vectors and their characteristic polynomials.
//! - [`primitivity`]: irreducibility and primitivity tests.
//! - [`enumerator`]: exhaustive search for maximum-length rule vectors.
//! - [`ca`]: the automaton as a state machine and bit generator.
//! - [`tables`]: the published rule-vector tables and their verification.
//! - [`cli`]: the `maxlen-ca` command line.

pub mod ca;
pub mod charpoly;
pub mod cli;
pub mod enumerator;
pub mod error;
pub mod gf2poly;
pub mod primitivity;
pub mod tables;

pub use ca::{cycle_length_from, is_max_length, next_state, stream_bits, Automaton, CaState};
pub use charpoly::{characteristic_polynomial, RuleVector};
pub use enumerator::{enumerate_maxlen, filter_stats, rule_vectors_for, FilterStats, MaxLenEntry};
pub use error::{Error, Result};
pub use gf2poly::{format_poly, parse_poly, Gf2Poly};
pub use primitivity::{
    enumerate_primitive, factorize_mersenne, is_irreducible, is_primitive, MersenneFactorization,
};
pub use tables::{load_rows, verify_all, verify_row, TableRow, VerificationReport};
