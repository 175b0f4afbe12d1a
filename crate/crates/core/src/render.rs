//! Plain-text, CSV and JSON renderings of matrices and trait reports.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frequency::CellChange;
use crate::mstn::{Grid, MentalState};
use crate::traits::{top_contributions, TraitMapping, TraitScores};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableOrder {
    /// happy, quiet, sad, surprise, angry, fear, disgust
    Paper1,
    /// Surprise, Happy, Sad, Angry, Disgust, Fear, Normal
    #[default]
    Paper3,
}

impl TableOrder {
    pub fn states(self) -> [MentalState; 7] {
        use MentalState::*;
        match self {
            TableOrder::Paper1 => MentalState::ALL,
            TableOrder::Paper3 => [Surprise, Happy, Sad, Angry, Disgust, Fear, Quiet],
        }
    }

    pub fn label(self, s: MentalState) -> &'static str {
        match self {
            TableOrder::Paper1 => s.name(),
            TableOrder::Paper3 => s.table_label(),
        }
    }
}

impl FromStr for TableOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper1" => Ok(TableOrder::Paper1),
            "paper3" => Ok(TableOrder::Paper3),
            other => Err(Error::Config(format!("unknown table order `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    #[default]
    Text,
    Structured,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            "structured" | "json" => Ok(OutputFormat::Structured),
            other => Err(Error::Config(format!("unknown output format `{other}`"))),
        }
    }
}

#[derive(Serialize)]
struct StructuredMatrix<'a> {
    order: TableOrder,
    states: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
    emphasized: &'a [CellChange],
}

/// Renders a 7x7 matrix with 4-decimal fixed point. In text form emphasized
/// cells carry a trailing `*`.
pub fn render_matrix(m: &Grid, order: TableOrder, format: OutputFormat, emphasized: &[CellChange]) -> String {
    let states = order.states();
    let is_emph = |from: MentalState, to: MentalState| emphasized.iter().any(|c| c.from == from && c.to == to);
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str("current");
            for s in states {
                write!(out, ",{}", order.label(s)).unwrap();
            }
            out.push('\n');
            for from in states {
                out.push_str(order.label(from));
                for to in states {
                    write!(out, ",{:.4}", m[from.index()][to.index()]).unwrap();
                }
                out.push('\n');
            }
        }
        OutputFormat::Text => {
            write!(out, "{:<10}", "current").unwrap();
            for s in states {
                write!(out, " {:>9}", order.label(s)).unwrap();
            }
            out.push('\n');
            for from in states {
                write!(out, "{:<10}", order.label(from)).unwrap();
                for to in states {
                    let v = format!("{:.4}", m[from.index()][to.index()]);
                    let mark = if is_emph(from, to) { "*" } else { " " };
                    write!(out, " {v:>8}{mark}").unwrap();
                }
                out.push('\n');
            }
        }
        OutputFormat::Structured => {
            let doc = StructuredMatrix {
                order,
                states: states.iter().map(|&s| order.label(s)).collect(),
                rows: states
                    .iter()
                    .map(|from| states.iter().map(|to| m[from.index()][to.index()]).collect())
                    .collect(),
                emphasized,
            };
            out = serde_json::to_string_pretty(&doc).expect("matrix serializes");
            out.push('\n');
        }
    }
    out
}

/// Five-row trait report with the top contributing cells per trait.
pub fn render_traits(scores: &TraitScores, matrix: &Grid, mapping: &TraitMapping, format: OutputFormat, top: usize) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str("trait,score,support\n");
            for s in &scores.scores {
                writeln!(out, "{},{:.4},{}", s.trait_, s.score, s.support).unwrap();
            }
        }
        OutputFormat::Text => {
            writeln!(out, "{:<18} {:>8} {:>8}  top cells", "trait", "score", "support").unwrap();
            for s in &scores.scores {
                let cells: Vec<String> = top_contributions(matrix, mapping, s.trait_, top)
                    .iter()
                    .map(|c| format!("{}->{} {:+.4}", c.from, c.to, c.value))
                    .collect();
                writeln!(out, "{:<18} {:>8.4} {:>8}  {}", s.trait_.to_string(), s.score, s.support, cells.join(", ")).unwrap();
            }
        }
        OutputFormat::Structured => {
            #[derive(Serialize)]
            struct Row<'a> {
                #[serde(flatten)]
                score: &'a crate::traits::TraitScore,
                top: Vec<crate::traits::Contribution>,
            }
            let rows: Vec<Row> = scores
                .scores
                .iter()
                .map(|s| Row {
                    score: s,
                    top: top_contributions(matrix, mapping, s.trait_, top),
                })
                .collect();
            out = serde_json::to_string_pretty(&rows).expect("traits serialize");
            out.push('\n');
        }
    }
    out
}
