//! Quasi-exactly solvable Schrödinger spectra.
//!
//! The crate builds the recurrence polynomials whose roots quantize the solvable part of
//! the spectrum for the Eckart, Hultén, Rosen-Morse, perturbed-Coulomb and sextic
//! anharmonic-oscillator families, assembles the closed-form eigenfunctions, maps the
//! families into one another, and checks every stated energy against two independent
//! numerical oracles (a gauge identity and a finite-difference eigensolver).
//!
//! The crate is `no_std` and only needs an allocator.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

pub mod bd_recurrence;
pub mod families;
pub mod numkit;
pub mod oracle;
pub mod pipeline;
pub mod transforms;
