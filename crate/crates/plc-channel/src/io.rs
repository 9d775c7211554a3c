//! File formats: realization JSON, response CSV.
//!
//! Realization files are a JSON array of realization objects, each carrying
//! its provenance and a `paths` array of `{delay_s, magnitude, distance_m,
//! j}` records. Response files are CSV with a fixed header and every float
//! printed with 17 significant digits so values round-trip exactly.

use std::path::Path;

use crate::error::{Error, Result};
use crate::spectrum::FrequencyResponse;
use crate::synth::ChannelRealization;

pub const RESPONSE_CSV_HEADER: &str = "freq_hz,re,im,abs,phase_rad";

/// Pretty-printed JSON for a batch of realizations (trailing newline
/// included so files end with one).
pub fn realizations_to_json(batch: &[ChannelRealization]) -> String {
    let mut s = serde_json::to_string_pretty(batch).expect("realizations serialize");
    s.push('\n');
    s
}

pub fn write_realizations(path: &Path, batch: &[ChannelRealization]) -> Result<()> {
    std::fs::write(path, realizations_to_json(batch))?;
    Ok(())
}

/// Parse a realization file and check the structural invariants every
/// consumer relies on (nonempty paths, strictly increasing delays, positive
/// magnitudes). Distance-domain checks are left to the loss model so they
/// surface as model errors, not parse errors.
pub fn read_realizations(path: &Path) -> Result<Vec<ChannelRealization>> {
    let text = std::fs::read_to_string(path)?;
    parse_realizations(&text)
}

pub fn parse_realizations(text: &str) -> Result<Vec<ChannelRealization>> {
    let batch: Vec<ChannelRealization> =
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    for (idx, r) in batch.iter().enumerate() {
        if r.paths.is_empty() {
            return Err(Error::MalformedInput(format!(
                "realization {idx} has no paths"
            )));
        }
        let mut prev = f64::NEG_INFINITY;
        for (p_idx, p) in r.paths.iter().enumerate() {
            if p.delay_s.is_nan() || p.delay_s <= prev {
                return Err(Error::MalformedInput(format!(
                    "realization {idx}: delays are not strictly increasing at path {p_idx}"
                )));
            }
            if p.magnitude.is_nan() || p.magnitude <= 0.0 {
                return Err(Error::MalformedInput(format!(
                    "realization {idx}: nonpositive magnitude at path {p_idx}"
                )));
            }
            prev = p.delay_s;
        }
    }
    Ok(batch)
}

/// Render one response as CSV: `freq_hz,re,im,abs,phase_rad`, one row per
/// grid point, 17 significant digits.
pub fn response_csv(fr: &FrequencyResponse) -> String {
    use std::fmt::Write;
    let mut out = String::with_capacity(fr.h.len() * 120 + 32);
    out.push_str(RESPONSE_CSV_HEADER);
    out.push('\n');
    for (&f, v) in fr.freq_hz.iter().zip(&fr.h) {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            f,
            v.re,
            v.im,
            v.norm(),
            v.arg()
        )
        .expect("writing to a String cannot fail");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{ClassId, ClusterIndex};
    use crate::synth::{generate_batch, GeneratorConfig};

    fn batch() -> Vec<ChannelRealization> {
        let cfg = GeneratorConfig {
            seed: 5,
            ..GeneratorConfig::default()
        };
        generate_batch(
            ClassId::new(4).unwrap(),
            ClusterIndex::new(1).unwrap(),
            &cfg,
            3,
        )
        .unwrap()
    }

    #[test]
    fn realization_files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("batch.json");
        let original = batch();
        write_realizations(&path, &original).unwrap();
        let restored = read_realizations(&path).unwrap();
        assert_eq!(original, restored);
        // Writing the restored batch reproduces the bytes.
        let again = realizations_to_json(&restored);
        assert_eq!(std::fs::read_to_string(&path).unwrap(), again);
    }

    #[test]
    fn malformed_json_is_reported_as_malformed_input() {
        assert!(matches!(
            parse_realizations("{not json"),
            Err(Error::MalformedInput(_))
        ));
        assert!(matches!(
            parse_realizations("[{\"class\": 1}]"),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn structural_violations_rejected() {
        let mut bad = batch();
        bad[0].paths[0].magnitude = -1.0;
        let text = realizations_to_json(&bad);
        assert!(matches!(
            parse_realizations(&text),
            Err(Error::MalformedInput(_))
        ));

        let mut bad = batch();
        let first = bad[1].paths[0];
        bad[1].paths.push(first); // duplicate delay breaks monotonicity
        let text = realizations_to_json(&bad);
        assert!(matches!(
            parse_realizations(&text),
            Err(Error::MalformedInput(_))
        ));

        let mut bad = batch();
        bad[2].paths.clear();
        let text = realizations_to_json(&bad);
        assert!(matches!(
            parse_realizations(&text),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn csv_header_and_shape() {
        use crate::spectrum::{transfer_function, uniform_grid};
        let cfg = GeneratorConfig::default();
        let grid = uniform_grid(0.0, 30e6, 8).unwrap();
        let fr = transfer_function(&batch()[0], &grid, &cfg).unwrap();
        let csv = response_csv(&fr);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), RESPONSE_CSV_HEADER);
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 8);
        for row in rows {
            assert_eq!(row.split(',').count(), 5);
        }
        // 17 significant digits means every value round-trips exactly.
        let first_row = csv.lines().nth(1).unwrap();
        let re: f64 = first_row.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(re, fr.h[0].re);
    }
}
