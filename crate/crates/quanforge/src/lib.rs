//! quanforge compiles four families of quantum evolution operators into
//! exact elementary-gate circuits:
//!
//! * **fourier** — the discrete Fourier transform on `2^nb` states,
//! * **shift** — the cyclic permutation `|x⟩ → |(x + t) mod 2^nb⟩`,
//! * **glue** — `exp(ig(|r1⟩⟨r2| + h.c.))`, coupling two basis states,
//! * **oracle** — `exp(iH)` for a banded oracle Hamiltonian that couples
//!   each leaf state `k` to `k + 2^(nb-1)` where a Boolean band input is set.
//!
//! All four compilations are exact to numerical precision: no Trotter or
//! Suzuki approximants, and no global-phase slack. Every circuit can be
//! checked against an analytically constructed target unitary by dense
//! matrix reconstruction ([`verify`]), and serialized as Log, English and
//! Picture files ([`emit`]). The [`cli`] module exposes the whole pipeline
//! as one command per operator family.

pub mod circuit;
pub mod cli;
pub mod compile;
pub mod emit;
pub mod verify;

pub use circuit::{
    gate_counts, invert_circuit, validate_circuit, Circuit, CircuitError, Control, Gate,
    GateCounts, GateKind,
};
pub use compile::{
    alignment_ladder, compile_fourier, compile_glue, compile_oracle, compile_shift, dyadic_cover,
    validate_bands, Alignment, BandError, BandList, DyadicBlock, FourierSpec, GlueSpec, OracleSpec,
    ShiftSpec, SpecError,
};
pub use emit::{
    emit_english, emit_log, emit_picture, parse_english, Application, LogSummary, ParseError,
    VerifyOutcome,
};
pub use verify::{
    circuit_unitary, gate_unitary, max_abs_diff, target_fourier, target_glue, target_oracle,
    target_shift, UnitaryMatrix, VerifyError, DEFAULT_QUBIT_CEILING,
};
