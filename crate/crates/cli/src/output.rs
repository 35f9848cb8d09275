use std::io::{self, Write};

use serde::Serialize;

use crate::Format;
use bicircular::{SampleOutcome, SampleReport};

fn join(ids: &[usize]) -> String {
    ids.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn sample_header(out: &mut impl Write, format: Format, gibbs: bool) -> io::Result<()> {
    if format == Format::Tsv {
        let what = if gibbs { "arrows" } else { "basis" };
        writeln!(out, "seed\tresampled\tsteps\t{what}")?;
    }
    Ok(())
}

pub fn sample_record(out: &mut impl Write, format: Format, r: &SampleReport) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(r).expect("serializable")),
        Format::Tsv => {
            let ids = match &r.outcome {
                SampleOutcome::Basis(b) => join(b.edge_ids()),
                SampleOutcome::Arrows(a) => join(a.heads()),
            };
            writeln!(out, "{}\t{}\t{}\t{ids}", r.seed, r.resampled, r.steps)
        }
    }
}

/// Writes a flat record: one JSON object, or a TSV header plus one row.
pub fn record<T: Serialize>(out: &mut impl Write, format: Format, value: &T, header: bool) -> io::Result<()> {
    let json = serde_json::to_value(value).expect("serializable");
    match format {
        Format::Json => writeln!(out, "{json}"),
        Format::Tsv => {
            let obj = json.as_object().expect("records are objects");
            if header {
                writeln!(out, "{}", obj.keys().cloned().collect::<Vec<_>>().join("\t"))?;
            }
            let cells: Vec<String> = obj
                .values()
                .map(|v| match v {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            writeln!(out, "{}", cells.join("\t"))
        }
    }
}
