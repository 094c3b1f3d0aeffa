use clap::ValueEnum;
use conngraph::connected::CountRecord;
use serde::Serialize;
use std::io::{self, Write};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

pub fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

pub fn write_records(records: &[CountRecord], format: Format, single: bool) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        Format::Plain if single => writeln!(out, "{}", records[0].count),
        Format::Plain => {
            for r in records {
                writeln!(out, "{} n={} k={} {}", r.family.name(), r.n, r.k, r.count)?;
            }
            Ok(())
        }
        Format::Json if single => writeln!(out, "{}", json(&records[0])),
        Format::Json => writeln!(out, "{}", json(records)),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in records {
                w.serialize(r).map_err(io::Error::other)?;
            }
            w.flush()
        }
    }
}
