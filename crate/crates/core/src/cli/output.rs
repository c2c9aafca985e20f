use std::io::Write;

use serde::Serialize;

use super::{CliError, CommonArgs, Format, RunManifest};

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    manifest: &'a RunManifest,
    #[serde(flatten)]
    body: &'a T,
}

fn io(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("cannot write output: {e}"))
}

/// Writes `body` as JSON, or `rows` as CSV, with the manifest embedded.
pub fn emit<T: Serialize, R: Serialize>(
    common: &CommonArgs,
    manifest: &RunManifest,
    body: &T,
    rows: &[R],
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let text = match common.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Document { manifest, body }).map_err(io)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(io)?;
            }
            let data = w.into_inner().map_err(io)?;
            manifest.csv_header() + &String::from_utf8(data).map_err(io)?
        }
    };
    match &common.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Validation(format!("{}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(io),
    }
}
