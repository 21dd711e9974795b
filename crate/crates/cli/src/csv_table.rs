//! CSV serialization of sweep tables.
//!
//! Columns, in order: `swept_variable,n,truncation_term,tail_term,bound,true_error`.
//! Floats use Rust's shortest round-trip scientific notation; `true_error` is
//! blank when the sweep has no exact reference. UTF-8, LF line endings.

use std::io::Write;

use schatten_core::SweepTable;

use crate::error::CliError;

pub const HEADER: [&str; 6] = [
    "swept_variable",
    "n",
    "truncation_term",
    "tail_term",
    "bound",
    "true_error",
];

pub fn write<W: Write>(table: &SweepTable, out: W) -> Result<(), CliError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let io = |e: csv::Error| CliError::Io(e.to_string());
    writer.write_record(HEADER).map_err(io)?;
    for row in &table.rows {
        writer
            .write_record([
                format!("{:e}", row.swept),
                row.n.to_string(),
                format!("{:e}", row.truncation_term),
                format!("{:e}", row.tail_term),
                format!("{:e}", row.bound),
                row.true_error.map(|x| format!("{x:e}")).unwrap_or_default(),
            ])
            .map_err(io)?;
    }
    writer.flush().map_err(|e| CliError::Io(e.to_string()))
}

pub fn to_string(table: &SweepTable) -> Result<String, CliError> {
    let mut buf = Vec::new();
    write(table, &mut buf)?;
    String::from_utf8(buf).map_err(|e| CliError::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use schatten_core::SweepRow;

    #[test]
    fn layout() {
        let table = SweepTable {
            variable: "epsilon".into(),
            rows: vec![SweepRow {
                swept: 0.1,
                n: 3,
                truncation_term: 0.5196152422706632,
                tail_term: 0.2,
                bound: 0.7196152422706632,
                p_error: 0.1,
                true_error: None,
            }],
        };
        let text = to_string(&table).unwrap();
        assert_eq!(
            text,
            "swept_variable,n,truncation_term,tail_term,bound,true_error\n\
             1e-1,3,5.196152422706632e-1,2e-1,7.196152422706632e-1,\n"
        );
    }
}
