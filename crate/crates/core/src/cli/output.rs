use std::io::Write;

use crate::schubert::MultiplicityRecord;

pub const CSV_HEADER: [&str; 6] = ["n", "d", "i", "j", "route", "value"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// CSV with the fixed header `n,d,i,j,route,value`, LF line endings and
/// indices rendered hyphen-joined.
pub fn write_csv<W: Write>(records: &[MultiplicityRecord], out: W) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.n.to_string(),
            r.d.to_string(),
            r.i.hyphenated(),
            r.j.hyphenated(),
            r.route.name().to_string(),
            r.value.to_string(),
        ])?;
    }
    w.flush()
}

/// A JSON array of records, one per line, with decimal-string values.
pub fn write_json<W: Write>(records: &[MultiplicityRecord], mut out: W) -> std::io::Result<()> {
    writeln!(out, "[")?;
    for (k, r) in records.iter().enumerate() {
        let sep = if k + 1 < records.len() { "," } else { "" };
        writeln!(out, "  {}{sep}", serde_json::to_string(r)?)?;
    }
    writeln!(out, "]")?;
    out.flush()
}
