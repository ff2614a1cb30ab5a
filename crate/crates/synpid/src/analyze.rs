//! Information dynamics of integer-valued multivariate time series.
//!
//! Input is CSV with a header row naming one column per variable and one
//! row per time step. Each column's symbols are mapped to a dense alphabet
//! `0, 1, ...` in first-seen order; the mapping is kept in the report.

use std::collections::BTreeMap;
use std::io::Read;

use serde::{Deserialize, Serialize};
use synpid_core::distributions::{count_samples, embed_history, Role, Symbol, VariableSpec};
use synpid_core::dynamics::{
    active_info_storage, complete_transfer_entropy, separable_information, transfer_entropy,
    DynamicsConfig,
};
use synpid_core::pid::{modified_information, PidDecomposition, MAX_SOURCES};

use crate::{Error, Result};

/// Integer columns read from CSV, densely re-coded.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolTable {
    pub names: Vec<String>,
    /// `columns[c][t]` is the dense symbol of column `c` at step `t`.
    pub columns: Vec<Vec<Symbol>>,
    /// `alphabets[c][s]` is the original value encoded as symbol `s`.
    pub alphabets: Vec<Vec<i64>>,
}

impl SymbolTable {
    pub fn read_csv(input: impl Read) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(input);
        let names: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        if names.is_empty() {
            return Err(Error::Input("CSV has no columns".into()));
        }
        let mut columns = vec![Vec::new(); names.len()];
        let mut alphabets: Vec<Vec<i64>> = vec![Vec::new(); names.len()];
        let mut lookup: Vec<BTreeMap<i64, Symbol>> = vec![BTreeMap::new(); names.len()];
        for (row, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Input(format!("row {}: {e}", row + 2)))?;
            for (c, cell) in record.iter().enumerate() {
                let value: i64 = cell.parse().map_err(|_| {
                    Error::Input(format!(
                        "row {}, column `{}`: `{cell}` is not an integer",
                        row + 2,
                        names[c]
                    ))
                })?;
                let next = lookup[c].len() as Symbol;
                let symbol = *lookup[c].entry(value).or_insert_with(|| {
                    alphabets[c].push(value);
                    next
                });
                columns[c].push(symbol);
            }
        }
        Ok(Self {
            names,
            columns,
            alphabets,
        })
    }

    pub fn column(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Input(format!("unknown column `{name}`")))
    }

    pub fn len(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn arity(&self, column: usize) -> u64 {
        (self.alphabets[column].len() as u64).max(2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub destination: String,
    pub sources: Vec<String>,
    pub k: usize,
    pub samples: u64,
    /// Original values per column, indexed by dense symbol.
    pub alphabets: BTreeMap<String, Vec<i64>>,
    pub active_info_storage: f64,
    pub apparent_transfer_entropy: BTreeMap<String, f64>,
    pub complete_transfer_entropy: BTreeMap<String, f64>,
    pub separable_information: f64,
    pub total_mi: f64,
    pub modified_information: f64,
    /// `hierarchy[o - 1]` is the order-`o` PI sum.
    pub hierarchy: Vec<f64>,
    /// Approximate upper bound on the plug-in estimate of `total_mi` when the
    /// destination is independent of all sources: `(d + 4 sqrt(2 d)) /
    /// (2 N ln 2)` with `d = (|X| - 1)(|S| - 1)` degrees of freedom, i.e. the
    /// chi-square mean plus four standard deviations.
    pub noise_bound_bits: f64,
    pub decomposition: PidDecomposition,
}

/// Computes AIS, apparent and complete TE per source, separable information
/// and the full PID of `X'` over `{X^(k), sources...}`.
pub fn analyze(
    table: &SymbolTable,
    destination: &str,
    sources: &[String],
    k: usize,
) -> Result<AnalyzeReport> {
    if k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    if sources.is_empty() {
        return Err(Error::Config("at least one source is required".into()));
    }
    if sources.len() + 1 > MAX_SOURCES {
        return Err(Error::Config(format!(
            "at most {} sources are supported alongside the destination history",
            MAX_SOURCES - 1
        )));
    }
    let dest = table.column(destination)?;
    let src_cols = sources
        .iter()
        .map(|s| table.column(s))
        .collect::<Result<Vec<_>>>()?;
    if src_cols.contains(&dest) {
        return Err(Error::Config(
            "the destination cannot also be a source".into(),
        ));
    }
    let n = table.len();
    if n < k + 1 {
        return Err(Error::Input(format!("{n} rows are too few for k = {k}")));
    }

    let history_name = format!("{destination}_history");
    let mut variables = vec![
        VariableSpec::new(destination, table.arity(dest), Role::DestinationNext)?,
        VariableSpec::history(history_name, table.arity(dest), k)?,
    ];
    for (&c, name) in src_cols.iter().zip(sources) {
        variables.push(VariableSpec::new(
            name.as_str(),
            table.arity(c),
            Role::Source,
        )?);
    }
    let series = &table.columns[dest];
    let samples = (k - 1..n - 1)
        .map(|t| {
            let mut tuple = vec![
                series[t + 1],
                embed_history(series, table.arity(dest), k, t)?,
            ];
            tuple.extend(src_cols.iter().map(|&c| table.columns[c][t]));
            Ok(tuple)
        })
        .collect::<Result<Vec<_>>>()?;
    let sample_count = samples.len() as u64;
    let dist = count_samples(variables, samples)?;

    let names: Vec<&str> = sources.iter().map(String::as_str).collect();
    let config = DynamicsConfig::new(k, destination, &names);
    let mut apparent = BTreeMap::new();
    let mut complete = BTreeMap::new();
    for name in &names {
        apparent.insert(
            name.to_string(),
            transfer_entropy(&dist, &config, name, &[])?,
        );
        complete.insert(
            name.to_string(),
            complete_transfer_entropy(&dist, &config, name)?,
        );
    }
    let decomposition = modified_information(&dist, &config)?;

    let dof = (table.arity(dest) as f64 - 1.0)
        * (dist.variables()[1..]
            .iter()
            .map(|v| v.arity as f64)
            .product::<f64>()
            - 1.0);
    let noise_bound_bits =
        (dof + 4.0 * (2.0 * dof).sqrt()) / (2.0 * sample_count as f64 * std::f64::consts::LN_2);

    Ok(AnalyzeReport {
        destination: destination.to_string(),
        sources: sources.to_vec(),
        k,
        samples: sample_count,
        alphabets: table
            .names
            .iter()
            .cloned()
            .zip(table.alphabets.iter().cloned())
            .collect(),
        active_info_storage: active_info_storage(&dist, &config)?,
        apparent_transfer_entropy: apparent,
        complete_transfer_entropy: complete,
        separable_information: separable_information(&dist, &config)?,
        total_mi: decomposition.total,
        modified_information: decomposition.modified,
        hierarchy: decomposition.hierarchy.clone(),
        noise_bound_bits,
        decomposition,
    })
}
