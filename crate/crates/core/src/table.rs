//! The invariants table: `chi`, `chi_cr`, `hcf_chi`, `hcf_c` and whether
//! `hcf(H) = 1`, for a handful of reference graphs or any graph expression.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use crate::arith::{ratio_json, Hcf};
use crate::error::{GraphError, InvariantError};
use crate::graph::{Graph, GraphExpr};
use crate::invariants::profile;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub label: String,
    pub chi: usize,
    #[serde(with = "ratio_json")]
    pub chi_cr: Ratio<i64>,
    pub hcf_chi: Hcf,
    /// Only meaningful (and only shown) for bipartite graphs.
    pub hcf_c: Option<u64>,
    pub hcf_is_one: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

impl TableRow {
    pub fn compute(label: impl Into<String>, h: &Graph) -> Result<Self, InvariantError> {
        let p = profile(h)?;
        Ok(TableRow {
            label: label.into(),
            chi: p.ell,
            chi_cr: p.chi_cr,
            hcf_chi: p.hcf_chi,
            hcf_c: (p.ell == 2).then_some(p.hcf_c),
            hcf_is_one: p.hcf_is_one,
        })
    }

    pub fn cells(&self) -> [String; 6] {
        [
            self.label.clone(),
            self.chi.to_string(),
            self.chi_cr.to_string(),
            self.hcf_chi.to_string(),
            self.hcf_c.map_or("-".into(), |c| c.to_string()),
            if self.hcf_is_one { "1" } else { "!=1" }.into(),
        ]
    }
}

/// Row for any graph expression such as `C_7` or `K_{1,2}uK_{1,4}`.
pub fn row(expr: &str) -> Result<TableRow, TableError> {
    let parsed: GraphExpr = expr.parse()?;
    Ok(TableRow::compute(expr.trim(), &parsed.build()?)?)
}

/// The five reference rows; the cycle rows use `C_{2k+1}` and `C_{2k}`.
/// `k = None` gives `C_5` and `C_6`.
pub fn reference_rows(k: Option<usize>) -> Result<Vec<TableRow>, TableError> {
    let (odd, even) = match k {
        Some(k) => (2 * k + 1, 2 * k),
        None => (5, 6),
    };
    [
        format!("C_{odd}"),
        format!("C_{even}"),
        "K_{1,2}uC_6".into(),
        "K_{1,4}uC_4".into(),
        "K_{1,2}uK_{1,4}".into(),
    ]
    .iter()
    .map(|e| row(e))
    .collect()
}

pub fn render(rows: &[TableRow]) -> String {
    let header = ["H", "chi", "chi_cr", "hcf_chi", "hcf_c", "hcf"].map(String::from);
    let body: Vec<[String; 6]> = rows.iter().map(TableRow::cells).collect();
    let mut widths = header.clone().map(|h| h.len());
    for cells in &body {
        for (w, c) in widths.iter_mut().zip(cells) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    for cells in std::iter::once(&header).chain(&body) {
        let line: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}
