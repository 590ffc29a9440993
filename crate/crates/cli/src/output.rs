//! Rendering results as JSON or CSV.

use std::io::Write;

use logcv::{Certificate, CertificateKind, DepthResult, ProbeEntry, ProbeOutcome, Sequence, SweepRow};
use serde::Serialize;
use serde_json::Value;

use crate::Format;

/// A command's result in both renderings. `found = false` maps to exit 1.
pub struct Report {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub found: bool,
}

impl Report {
    pub fn new(json: impl Serialize, header: &[&str], rows: Vec<Vec<String>>) -> Report {
        Report {
            json: serde_json::to_value(json).expect("results serialize"),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            found: true,
        }
    }

    pub fn not_found(mut self) -> Report {
        self.found = false;
        self
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
                if !self.header.is_empty() {
                    w.write_record(&self.header)?;
                }
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
        }
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn sequence(seq: &Sequence) -> Report {
    let rows = seq.entries().iter().enumerate().map(|(n, x)| vec![n.to_string(), x.to_string()]).collect();
    Report::new(seq, &["n", "value"], rows)
}

pub fn depth(d: &DepthResult) -> Report {
    let row = vec![
        opt(d.depth),
        d.saturated.to_string(),
        opt(d.witness.map(|w| w.level)),
        opt(d.witness.map(|w| w.index)),
    ];
    Report::new(d, &["depth", "saturated", "witness_level", "witness_index"], vec![row])
}

pub const CERTIFICATE_HEADER: [&str; 8] = ["kind", "m", "lambda", "r", "witness", "cycle_start", "period", "reason"];

pub fn certificate_row(c: &Certificate) -> Vec<String> {
    let mut row = vec![String::new(); CERTIFICATE_HEADER.len()];
    match &c.kind {
        CertificateKind::NotMLogConcave { m, witness } => {
            row[0] = "not-m-log-concave".into();
            row[1] = m.to_string();
            row[4] = witness.to_string();
        }
        CertificateKind::FixedPoint { m, lambda, cycle_start, period } => {
            row[0] = "fixed-point".into();
            row[1] = m.to_string();
            row[2] = lambda.to_string();
            row[5] = cycle_start.to_string();
            row[6] = period.to_string();
        }
        CertificateKind::RFactor { m, r } => {
            row[0] = "r-factor".into();
            row[1] = m.to_string();
            row[3] = r.to_string();
        }
        CertificateKind::Unknown { iterations, reason } => {
            row[0] = "unknown".into();
            row[1] = iterations.to_string();
            row[7] = reason.clone();
        }
    }
    row
}

pub fn certificate(c: &Certificate) -> Report {
    Report::new(c, &CERTIFICATE_HEADER, vec![certificate_row(c)])
}

pub fn table(rows: &[SweepRow], m_max: usize) -> Report {
    let mut header = vec!["poly".to_string()];
    header.extend((1..=m_max).map(|m| format!("m={m}")));
    header.push("inf".into());
    let body = rows
        .iter()
        .map(|r| {
            let poly = r.poly.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            std::iter::once(poly)
                .chain(r.min_lambda.iter().map(|x| opt(*x)))
                .chain([opt(r.min_lambda_infinity)])
                .collect()
        })
        .collect();
    let mut report = Report::new(rows, &[], body);
    report.header = header;
    report
}

pub fn probe(entries: &[ProbeEntry]) -> Report {
    let rows = entries
        .iter()
        .map(|e| match &e.outcome {
            ProbeOutcome::Certified(c) => {
                let row = certificate_row(c);
                vec![e.n.to_string(), row[0].clone(), row[1].clone(), String::new(), String::new()]
            }
            ProbeOutcome::Depth(d) => {
                vec![e.n.to_string(), "depth".into(), String::new(), opt(d.depth), d.saturated.to_string()]
            }
        })
        .collect();
    Report::new(entries, &["n", "kind", "m", "depth", "saturated"], rows)
}
