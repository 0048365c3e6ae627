use num_rational::BigRational;
use serde::Serialize;

use crate::error::ScalarError;
use crate::scalar::ScalarExpr;
use crate::statistics::StatisticsFlag;

use super::Increment;

/// A square table of increment products; `entries[i][j]` is `<row_i col_j>`.
#[derive(Clone, Debug, PartialEq)]
pub struct ItoTable {
    statistics: StatisticsFlag,
    nbar: String,
    labels: Vec<Increment>,
    entries: Vec<Vec<ScalarExpr>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ItoEntry {
    pub row: String,
    pub col: String,
    pub coeff_string: String,
    pub coeff_latex: String,
}

#[derive(Serialize)]
struct TableJson<'a> {
    statistics: StatisticsFlag,
    nbar: &'a str,
    rows: Vec<&'static str>,
    cols: Vec<&'static str>,
    entries: Vec<ItoEntry>,
}

impl ItoTable {
    pub fn new(
        statistics: StatisticsFlag,
        nbar: String,
        labels: Vec<Increment>,
        entries: Vec<Vec<ScalarExpr>>,
    ) -> Self {
        assert_eq!(entries.len(), labels.len());
        assert!(entries.iter().all(|r| r.len() == labels.len()));
        ItoTable {
            statistics,
            nbar,
            labels,
            entries,
        }
    }

    pub fn statistics(&self) -> StatisticsFlag {
        self.statistics
    }

    pub fn nbar(&self) -> &str {
        &self.nbar
    }

    pub fn rows(&self) -> &[Increment] {
        &self.labels
    }

    pub fn get(&self, row: Increment, col: Increment) -> Option<&ScalarExpr> {
        let i = self.labels.iter().position(|&l| l == row)?;
        let j = self.labels.iter().position(|&l| l == col)?;
        Some(&self.entries[i][j])
    }

    pub fn entries(&self) -> &[Vec<ScalarExpr>] {
        &self.entries
    }

    pub fn substitute_nbar(&self, value: &BigRational) -> Result<ItoTable, ScalarError> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.substitute_nbar(value)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Ok(ItoTable {
            statistics: self.statistics,
            nbar: value.to_string(),
            labels: self.labels.clone(),
            entries,
        })
    }

    /// The sub-table on the given labels, in that order.
    pub fn restrict(&self, labels: &[Increment]) -> Option<ItoTable> {
        let mut entries = Vec::new();
        for &r in labels {
            let mut row = Vec::new();
            for &c in labels {
                row.push(self.get(r, c)?.clone());
            }
            entries.push(row);
        }
        Some(ItoTable {
            statistics: self.statistics,
            nbar: self.nbar.clone(),
            labels: labels.to_vec(),
            entries,
        })
    }

    pub fn cells(&self) -> Vec<ItoEntry> {
        let mut out = Vec::new();
        for (i, r) in self.labels.iter().enumerate() {
            for (j, c) in self.labels.iter().enumerate() {
                let e = &self.entries[i][j];
                out.push(ItoEntry {
                    row: r.label().into(),
                    col: c.label().into(),
                    coeff_string: e.to_text(),
                    coeff_latex: e.to_latex(),
                });
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let labels: Vec<&'static str> = self.labels.iter().map(|l| l.label()).collect();
        let doc = TableJson {
            statistics: self.statistics,
            nbar: &self.nbar,
            rows: labels.clone(),
            cols: labels,
            entries: self.cells(),
        };
        serde_json::to_string_pretty(&doc).expect("table serializes")
    }

    fn text_cells(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let header = self.labels.iter().map(|l| l.label().to_string()).collect();
        let body = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.to_text()).collect())
            .collect();
        (header, body)
    }

    /// Aligned plain-text grid, rows labelled on the left.
    pub fn to_text(&self) -> String {
        let (header, body) = self.text_cells();
        let label_w = header.iter().map(|h| h.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..header.len())
            .map(|j| {
                body.iter()
                    .map(|r| r[j].len())
                    .chain([header[j].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = format!("{} table (nbar = {})\n", self.statistics, self.nbar);
        let mut line = format!("{:label_w$} |", "");
        for (h, w) in header.iter().zip(&widths) {
            line.push_str(&format!(" {h:<w$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
        out.push_str(&"-".repeat(label_w + 1));
        out.push('+');
        out.push_str(&"-".repeat(widths.iter().map(|w| w + 1).sum()));
        out.push('\n');
        for (label, row) in header.iter().zip(&body) {
            let mut line = format!("{label:label_w$} |");
            for (cell, w) in row.iter().zip(&widths) {
                line.push_str(&format!(" {cell:<w$}"));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let (header, body) = self.text_cells();
        let mut out = format!(
            "| {} (nbar = {}) | {} |\n",
            self.statistics,
            self.nbar,
            header.join(" | ")
        );
        out.push_str(&format!("|---|{}\n", "---|".repeat(header.len())));
        for (label, row) in header.iter().zip(&body) {
            let cells: Vec<String> = row.iter().map(|c| format!("`{c}`")).collect();
            out.push_str(&format!("| **{label}** | {} |\n", cells.join(" | ")));
        }
        out
    }
}
