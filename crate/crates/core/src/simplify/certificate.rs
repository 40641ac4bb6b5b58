use thiserror::Error;

use crate::grid::GridDiagram;
use crate::moves::{apply, MoveError, MoveSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("initial diagram has key {actual}, certificate starts at {expected}")]
    InitialKey { expected: String, actual: String },
    #[error("step {step}: {reason}")]
    Step { step: usize, reason: MoveError },
    #[error("replay of {steps} moves ends at key {actual}, certificate claims {expected}")]
    FinalKey {
        steps: usize,
        expected: String,
        actual: String,
    },
}

impl CertificateError {
    /// Index of the first failing move; the move count for a final-key
    /// mismatch.
    pub fn step(&self) -> Option<usize> {
        match self {
            CertificateError::InitialKey { .. } => None,
            CertificateError::Step { step, .. } => Some(*step),
            CertificateError::FinalKey { steps, .. } => Some(*steps),
        }
    }
}

/// Replays `seq` from the canonical representative of `initial`'s class
/// and returns the diagram it ends at.
pub fn verify_certificate(
    initial: &GridDiagram,
    seq: &MoveSequence,
) -> Result<GridDiagram, CertificateError> {
    let key = initial.canonical_key();
    if key != seq.initial {
        return Err(CertificateError::InitialKey {
            expected: seq.initial.to_hex(),
            actual: key.to_hex(),
        });
    }
    let mut d = key.to_diagram();
    for (step, &m) in seq.moves.iter().enumerate() {
        d = apply(&d, m).map_err(|reason| CertificateError::Step { step, reason })?;
    }
    let end = d.canonical_key();
    if end != seq.final_key {
        return Err(CertificateError::FinalKey {
            steps: seq.moves.len(),
            expected: seq.final_key.to_hex(),
            actual: end.to_hex(),
        });
    }
    Ok(d)
}

pub fn check_certificate(initial: &GridDiagram, seq: &MoveSequence) -> bool {
    verify_certificate(initial, seq).is_ok()
}
