//! Report structures shared by the subcommands.
//!
//! Each report carries the effective configuration next to the measured
//! results and serializes to JSON as-is. The text renderer produces an
//! aligned table for the terminal.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CompressConfig {
    pub target_prdn: f64,
    pub fs: f64,
    pub format: String,
    pub dictionary: String,
    pub level: u8,
    pub max_atoms: Option<usize>,
    pub channel: usize,
    pub jobs: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct StreamBytes {
    pub magnitudes: usize,
    pub signs: usize,
    pub positions: usize,
    pub beat_lengths: usize,
    pub peak_offsets: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecordReport {
    pub record: String,
    pub samples: usize,
    pub beats: usize,
    pub atoms: usize,
    pub target_prdn: f64,
    pub achieved_prdn: f64,
    pub compression_ratio: f64,
    pub container_bytes: usize,
    pub stream_bytes: StreamBytes,
    pub encode_ms: f64,
    pub decode_ms: f64,
    pub output: String,
}

#[derive(Debug, Serialize)]
pub struct CompressReport {
    pub config: CompressConfig,
    pub records: Vec<RecordReport>,
}

#[derive(Debug, Serialize)]
pub struct DecompressConfig {
    pub input: String,
    pub output: String,
    pub reference: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct DecompressReport {
    pub config: DecompressConfig,
    pub samples: usize,
    pub beats: usize,
    pub atoms: usize,
    pub sample_rate: f64,
    pub prdn_vs_reference: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AudioConfig {
    pub input: String,
    pub frame_len: usize,
    pub snr0_db: Vec<f64>,
    pub repeats: usize,
    pub seed: u64,
    pub samples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AudioRow {
    pub snr0_db: f64,
    pub method: String,
    pub sparsity_ratio: f64,
    pub snr_db: f64,
    pub total_atoms: usize,
    pub time_mean_s: f64,
    pub time_std_s: f64,
}

#[derive(Debug, Serialize)]
pub struct AudioGroup {
    pub snr0_db: f64,
    pub soomp: AudioRow,
    pub somp: AudioRow,
    pub gain_percent: f64,
}

#[derive(Debug, Serialize)]
pub struct AudioReport {
    pub config: AudioConfig,
    pub groups: Vec<AudioGroup>,
}

/// Renders rows as an aligned table. The first column is left-aligned,
/// the rest are right-aligned; a dash rule separates the header.
pub fn aligned_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate().take(cols) {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |cells: &[String]| {
        let mut parts = Vec::with_capacity(cols);
        for (i, cell) in cells.iter().enumerate().take(cols) {
            if i == 0 {
                parts.push(format!("{:<width$}", cell, width = widths[i]));
            } else {
                parts.push(format!("{:>width$}", cell, width = widths[i]));
            }
        }
        let mut joined = parts.join("  ");
        while joined.ends_with(' ') {
            joined.pop();
        }
        joined
    };
    let header_cells: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    out.push_str(&line(&header_cells));
    out.push('\n');
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&line(&rule));
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let text = aligned_table(
            &["record", "prdn"],
            &[
                vec!["100".into(), "9.10".into()],
                vec!["longer-name".into(), "15.00".into()],
            ],
        );
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("record"));
        assert!(lines[1].starts_with("-----------"));
        assert!(lines[2].starts_with("100  "));
        assert!(lines[3].starts_with("longer-name"));
        assert!(lines[2].ends_with(" 9.10"));
    }
}
