//! Text formats: experiment CSV tables, coupling files and path dumps.

use std::io::{Read, Write};

use crate::noise::{ExperimentRecord, Protocol};
use crate::sim::IsingSpec;
use crate::{Error, Result};

pub const CSV_HEADER: [&str; 9] = [
    "protocol",
    "n_qubits",
    "beta",
    "shots",
    "seed",
    "mean_fidelity",
    "std_fidelity",
    "delta_t",
    "error_scale",
];

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Writes records with every float at nine decimals, in the given order.
pub fn write_records<W: Write>(out: W, records: &[ExperimentRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in records {
        w.write_record([
            r.protocol.to_string(),
            r.n_qubits.to_string(),
            format!("{:.9}", r.beta),
            r.shots.to_string(),
            r.seed.to_string(),
            format!("{:.9}", r.mean_fidelity),
            format!("{:.9}", r.std_fidelity),
            format!("{:.9}", r.delta_t),
            format!("{:.9}", r.error_scale),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

pub fn records_to_csv(records: &[ExperimentRecord]) -> String {
    let mut buf = Vec::new();
    write_records(&mut buf, records).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is ascii")
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<ExperimentRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers().map_err(csv_err)?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Parse(format!("unexpected CSV header '{}'", header.iter().collect::<Vec<_>>().join(","))));
    }
    let mut out = Vec::new();
    for (line, row) in rdr.records().enumerate() {
        let row = row.map_err(csv_err)?;
        let field = |i: usize| row.get(i).unwrap_or("");
        let bad = |i: usize| Error::Parse(format!("row {}: bad {} '{}'", line + 1, CSV_HEADER[i], field(i)));
        let float = |i: usize| field(i).parse::<f64>().map_err(|_| bad(i));
        let protocol: Protocol = field(0).parse().map_err(|_| bad(0))?;
        out.push(ExperimentRecord {
            protocol,
            n_qubits: field(1).parse().map_err(|_| bad(1))?,
            beta: float(2)?,
            shots: field(3).parse().map_err(|_| bad(3))?,
            seed: field(4).parse().map_err(|_| bad(4))?,
            mean_fidelity: float(5)?,
            std_fidelity: float(6)?,
            delta_t: float(7)?,
            error_scale: float(8)?,
        });
    }
    Ok(out)
}

/// Parses `j k g_jk` lines (1-based, `j < k`) into an `n`-qubit target.
/// Blank lines and `#` comments are skipped; unlisted pairs are zero.
pub fn parse_coupling_file(text: &str, n_qubits: usize) -> Result<IsingSpec> {
    let mut spec = IsingSpec::zeros(n_qubits)?;
    let mut seen = std::collections::HashSet::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("line {}: expected 'j k g_jk', got '{line}'", no + 1));
        if f.len() != 3 {
            return Err(bad());
        }
        let j: usize = f[0].parse().map_err(|_| bad())?;
        let k: usize = f[1].parse().map_err(|_| bad())?;
        let g: f64 = f[2].parse().map_err(|_| bad())?;
        if !seen.insert((j, k)) {
            return Err(Error::Parse(format!("line {}: pair ({j},{k}) listed twice", no + 1)));
        }
        spec.set_coupling(j, k, g)?;
    }
    Ok(spec)
}

/// One path per line, vertices separated by spaces.
pub fn dump_paths<'a>(paths: impl IntoIterator<Item = &'a [usize]>) -> String {
    paths
        .into_iter()
        .map(|p| {
            let line: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            line.join(" ") + "\n"
        })
        .collect()
}
