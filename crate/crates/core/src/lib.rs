//! Nilpotent finite dynamical systems over signed digraphs.
//!
//! A finite dynamical system (FDS) is a map `f : A^n -> A^n` over a finite
//! alphabet `A = {0, ..., s}`, iterated synchronously.  It is *nilpotent* when
//! some iterate `f^k` is constant, i.e. every trajectory reaches one global
//! fixed point after at most `k` steps; the smallest such `k` is the *class*.
//!
//! Each system has a *signed interaction graph*: an arc `(j, i)` whenever
//! `f_i` really depends on `x_j`, signed `+` / `-` / `0` according to whether
//! the dependence is monotone increasing, decreasing, or neither.  This crate
//! goes the other way: given a signed digraph, it builds systems with that
//! exact interaction graph that are nilpotent of provably small class.
//!
//! The main entry points:
//!
//! * [`digraph`]: signed digraphs, strong components, loop number and
//!   primitivity, wheels, good arcs, cycle contraction.
//! * [`dynamics`]: FDS representation, exhaustive iteration, interaction
//!   graphs, nilpotency analysis.
//! * [`constructions`]: the constructive results, from alphabet-4 class-2
//!   systems down to boolean and-nets on strong digraphs.
//! * [`oracle`]: brute-force search over all systems with a given interaction
//!   graph, used to certify optimality of the constructions.

pub mod constructions;
pub mod digraph;
pub mod dynamics;
pub mod oracle;

pub mod cli;
