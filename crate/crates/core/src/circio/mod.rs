//! Circuit serialization and statistics.

mod qasm;
mod stats;
mod text;

pub use qasm::{export_qasm, zyz_decompose, ZyzAngles};
pub use stats::{stats, CircuitStats, StatsRow, STATS_CSV_HEADER};
pub use text::{read_text, write_text};

/// 17 significant digits, enough to round-trip any `f64` exactly.
pub(crate) fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}
