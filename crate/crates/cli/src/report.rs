use std::io::{self, Write};

use serde::Serialize;

/// The single document written per invocation in JSON mode.
#[derive(Serialize)]
pub struct ReportDocument<'a, P: Serialize, R: Serialize> {
    pub command: &'a [String],
    pub parameters: P,
    pub results: R,
    pub version: &'static str,
    pub wall_time_ms: u64,
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn write_json<P: Serialize, R: Serialize>(out: &mut dyn Write, doc: &ReportDocument<'_, P, R>) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)
}

/// Left-aligned columns separated by two spaces.
pub fn write_table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_owned()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}
