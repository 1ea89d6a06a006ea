//! Run manifest: config echo, code version and artifact checksums.
//!
//! Every results.csv row is reproducible from the manifest alone: the
//! config echo is complete (defaults resolved), the code version pins the
//! implementation and the checksums pin the bytes.

use crate::config::ScenarioConfig;
use crate::error::Result;
use crate::sha256::sha256_hex;
use serde::Serialize;
use std::fs;
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct Manifest<'a> {
    schema_version: u32,
    code_version: &'static str,
    eos: &'static str,
    config: &'a ScenarioConfig,
    checksums: Checksums,
}

#[derive(Serialize)]
struct Checksums {
    #[serde(rename = "results.csv")]
    results_csv: String,
    #[serde(rename = "report.json")]
    report_json: String,
}

/// Write results.csv, report.json and manifest.json into the output dir.
pub fn write_artifacts(cfg: &ScenarioConfig, csv: &str, report_json: &str) -> Result<()> {
    fs::create_dir_all(&cfg.output_dir)?;
    let csv_path = cfg.output_dir.join("results.csv");
    let report_path = cfg.output_dir.join("report.json");
    fs::write(&csv_path, csv)?;
    fs::write(&report_path, report_json)?;

    let manifest = Manifest {
        schema_version: SCHEMA_VERSION,
        code_version: env!("CARGO_PKG_VERSION"),
        eos: "isothermal",
        config: cfg,
        checksums: Checksums {
            results_csv: format!("sha256:{}", sha256_hex(csv.as_bytes())),
            report_json: format!("sha256:{}", sha256_hex(report_json.as_bytes())),
        },
    };
    let text = serde_json::to_string_pretty(&manifest)
        .map_err(|e| crate::error::CliError::Runtime(format!("manifest encode: {e}")))?;
    fs::write(cfg.output_dir.join("manifest.json"), text + "\n")?;
    Ok(())
}

/// Verify the checksums recorded in a manifest against the files on disk.
pub fn verify_checksums(dir: &Path) -> Result<bool> {
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("manifest.json"))?)
            .map_err(|e| crate::error::CliError::Runtime(format!("manifest parse: {e}")))?;
    let sums = &manifest["checksums"];
    for (file, key) in [
        ("results.csv", "results.csv"),
        ("report.json", "report.json"),
    ] {
        let want = sums[key].as_str().unwrap_or("");
        let got = format!("sha256:{}", sha256_hex(&fs::read(dir.join(file))?));
        if want != got {
            return Ok(false);
        }
    }
    Ok(true)
}
