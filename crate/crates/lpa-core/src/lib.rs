//! Exact computational algebra over Leavitt path algebras of finite graphs.
//!
//! The crate provides, for any finite directed graph and exact coefficient
//! field (rationals or GF(p)):
//!
//! - canonical normal forms for algebra elements, with the full ring
//!   structure and the star involution ([`algebra`]);
//! - the closed-path taxonomy and cycle analysis on graphs ([`graph`]);
//! - the simple module carried by a periodic infinite path ([`chen`]);
//! - a division algorithm by `c - 1` with exact quotient/remainder pairs
//!   and iterated expansions ([`division`]);
//! - the direct-limit module built from the quotients by powers of `c - 1`,
//!   with its level filtration, endomorphism ring, divisibility solver and
//!   injectivity classifier ([`prufer`]);
//! - source elimination and source-cycle collapse with explicit generator
//!   maps ([`morita`]).

pub mod algebra;
pub mod chen;
pub mod division;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod graph;
pub mod morita;
pub mod parse;
pub mod prufer;

pub use algebra::{Algebra, Element, Monomial};
pub use chen::{ChenModule, ChenVector, SigmaPrefix};
pub use division::{Division, DivisionResult, GElement};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use graph::{
    classify_closed_path, cycles_connecting_to, cyclic_shifts, enumerate_ac, is_cyclic_shift,
    ClosedPathClass, EdgeId, Graph, Path, VertexId,
};
pub use morita::{
    collapse_source_cycle, reduce_to_source_loop, source_eliminate, GeneratorMap, ReduceResult,
};
pub use parse::{parse_element, parse_path};
pub use prufer::{
    classify_injectivity, shift_iso, InjectivityVerdict, MnElement, PruferElement, PruferModule,
    ShiftDirection, TruncatedSeries,
};
