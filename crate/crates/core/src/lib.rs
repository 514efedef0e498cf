//! Finite effect algebras.
//!
//! An effect algebra is a set with two distinguished elements `0` and `1`
//! and a partial binary sum `⊕` that is commutative and associative where
//! defined, gives every element a unique complement, and admits `1` as a
//! summand only of `0`. This crate works with *finite* effect algebras
//! exclusively, where every nonzero element decomposes into atoms and the
//! whole structure is captured by an integer matrix whose rows are the
//! atomic decompositions of `1`.
//!
//! The crate is organised around that matrix view:
//!
//! - [`algebra`] — explicit algebras: sum tables, an exhaustive axiom
//!   checker, the derived order, complements, atoms and decompositions.
//! - [`matrix`] — matrix representations: validation, reconstruction of
//!   the explicit algebra, canonical forms and isomorphism testing.
//! - [`observables`] — observables, the measures relation, compatibility,
//!   simultaneity and the classicality tests.
//! - [`states`] — exact rational states, vertex enumeration of the state
//!   polytope, order-determining sets and the quantum test.
//! - [`composite`] — cartesian-product composites and product/mixed
//!   observables.
//! - [`enumeration`] — classification of classical algebras by unordered
//!   factorizations, exhaustive enumeration at small sizes, and real
//!   models built from rational value sets.
//!
//! Everything is exact: state computations use arbitrary-precision
//! rationals and no floating point appears anywhere. The crate is
//! `no_std`-compatible (it requires `alloc`).

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod composite;
pub mod enumeration;
pub mod matrix;
pub mod observables;
pub mod states;

pub use algebra::{AxiomReport, AxiomViolation, DecompVector, EffectAlgebra, ElementId, SumTable};
pub use composite::Composite;
pub use enumeration::{Factorization, RealModel, RealModelMode};
pub use matrix::{MatrixRep, ValidationReport};
pub use observables::Observable;
pub use states::{Classification, Rational, StateVector};
