use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};

const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// A labelled square correlation matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl CorrelationMatrix {
    pub fn new(labels: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if values.len() != n {
            return Err(Error::Data(format!("{n} labels but {} matrix rows", values.len())));
        }
        for (i, row) in values.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Data(format!("row {} has {} entries, expected {n}", labels[i], row.len())));
            }
            for (j, &c) in row.iter().enumerate() {
                if !c.is_finite() || !(-1.0 - SYMMETRY_TOLERANCE..=1.0 + SYMMETRY_TOLERANCE).contains(&c) {
                    return Err(Error::Data(format!("correlation ({}, {}) = {c} is outside [-1, 1]", labels[i], labels[j])));
                }
                if (c - values[j][i]).abs() > SYMMETRY_TOLERANCE {
                    return Err(Error::Data(format!("matrix is not symmetric at ({}, {})", labels[i], labels[j])));
                }
            }
            if (row[i] - 1.0).abs() > SYMMETRY_TOLERANCE {
                return Err(Error::Data(format!("diagonal entry for {} is {}, expected 1", labels[i], row[i])));
            }
        }
        Ok(CorrelationMatrix { labels, values })
    }
}

/// Reads a CSV whose header row and first column hold the security labels.
/// Empty or non-numeric cells are rejected.
pub fn parse_correlation_csv(text: &str) -> Result<CorrelationMatrix> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Data(e.to_string()))?
        .iter()
        .skip(1)
        .map(str::to_string)
        .collect();
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Data(e.to_string()))?;
        let mut cells = record.iter();
        let label = cells.next().unwrap_or_default().to_string();
        let parsed = cells
            .enumerate()
            .map(|(col, cell)| {
                cell.parse::<f64>().map_err(|_| {
                    Error::Data(format!("row {}, column {}: `{cell}` is not a number", row + 2, col + 2))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        labels.push(label);
        values.push(parsed);
    }
    if labels != header {
        return Err(Error::Data("row labels do not match the header".into()));
    }
    CorrelationMatrix::new(labels, values)
}

/// Signed edge `(i, j)` with the sign of `c_ij` whenever `|c_ij| > threshold`.
pub fn portfolio_graph(matrix: &CorrelationMatrix, threshold: f64) -> Result<SignedGraph> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::Contract(format!("threshold {threshold} is outside (0, 1)")));
    }
    let n = matrix.labels.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = matrix.values[i][j];
            if c.abs() > threshold {
                edges.push((i, j, if c > 0.0 { Sign::Positive } else { Sign::Negative }));
            }
        }
    }
    SignedGraph::with_labels(matrix.labels.clone(), edges)
}
