//! Information leakage of Pauli-encrypted dual-rail qubits as seen by a
//! uniformly accelerated observer.
//!
//! A logical qubit is encrypted with a one-time Pauli pad (two key bits for
//! full, one for partial encryption), mapped into the observer's two Rindler
//! modes, and scored by the Holevo quantity, Helstrom guessing probability
//! and trace-moment gaps.

pub mod error;
pub mod metrics;
pub mod pqc;
pub mod qubit;
pub mod records;
pub mod rindler;
pub mod spectral;
pub mod state;
pub mod sweep;
pub mod tridiag;

pub use error::{Error, Result};
pub use metrics::{
    helstrom_guess, holevo, inequality_chain, moment_gap, ChainReport, RindlerEnsemble,
};
pub use pqc::{apply_key, decrypt, encrypt_full, encrypt_partial, EncryptionScheme, PartialPair, PauliKey};
pub use qubit::{LogicalOperator, LogicalQubit};
pub use records::{read_csv, write_csv, SweepRecord};
pub use rindler::{
    accel_to_r, choose_cutoff, rindler_coefficients, transform_dual_rail, transform_operator,
    AccelerationParam, Cutoff, RindlerCoefficients,
};
pub use spectral::{eig_block, trace_distance, trace_moment, von_neumann_entropy};
pub use state::{RindlerState, SectorBlock};
pub use sweep::{
    convergence_report, evaluate_point, run_sweep, ConvergenceReport, LogicalEnsemble, RGrid,
    Spacing, SweepConfig,
};
