use std::sync::OnceLock;

use crate::{Error, Result};

/// Environment variable overriding the dense-simulation qubit cap.
pub const MAX_QUBITS_ENV: &str = "GAUSS_QEC_MAX_QUBITS";

const DEFAULT_MAX_QUBITS: usize = 14;

/// Largest register the dense engines accept, read once from
/// [`MAX_QUBITS_ENV`] (default 14).
pub fn max_qubits() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_QUBITS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&v: &usize| v > 0 && v < 31)
            .unwrap_or(DEFAULT_MAX_QUBITS)
    })
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapacityExceeded { n, cap })
    } else {
        Ok(())
    }
}
