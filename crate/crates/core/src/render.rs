//! Text and JSON views of matrices, tables and spans.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{mdeg_of_operator, weight_of, CartanError};
use crate::exterior::{BasisMask, DIM};
use crate::linalg::DenseMatrix;
use crate::operator::Operator;
use crate::registry::{Algebra, AlgebraError};
use crate::reptheory::{isotypical_table, RepError};
use crate::verify::weight_table;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("unknown table `{0}` (expected isotypical, weights, mdeg or diagonals)")]
    UnknownTable(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

/// A matrix with entries in the canonical scalar grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixView {
    pub name: String,
    pub dim: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixView {
    pub fn from_dense(name: &str, m: &DenseMatrix) -> Self {
        Self {
            name: name.to_string(),
            dim: m.nrows(),
            entries: (0..m.nrows()).map(|r| m.row(r).iter().map(ToString::to_string).collect()).collect(),
        }
    }

    /// Full 64×64 matrix in the monomial basis.
    pub fn from_operator(name: &str, op: &Operator) -> Self {
        let mut m = DenseMatrix::zeros(DIM, DIM);
        for (r, c, x) in op.entries() {
            m[(r.index(), c.index())] = x.clone();
        }
        Self::from_dense(name, &m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix serializes")
    }
}

impl fmt::Display for MatrixView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({}x{})", self.name, self.dim, self.dim)?;
        let width = self.entries.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{}", cells.join("  "))?;
        }
        Ok(())
    }
}

/// Renders `name` from the registry, optionally restricted to `V`.
pub fn matrix(alg: &Algebra, name: &str, restrict_v: bool) -> Result<MatrixView, RenderError> {
    let op = alg.get(name)?;
    if restrict_v {
        Ok(MatrixView::from_dense(name, &alg.v()?.restrict(op)?))
    } else {
        Ok(MatrixView::from_operator(name, op))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Isotypical,
    Weights,
    Mdeg,
    Diagonals,
}

impl TableKind {
    pub const ALL: [TableKind; 4] = [TableKind::Isotypical, TableKind::Weights, TableKind::Mdeg, TableKind::Diagonals];

    pub fn name(self) -> &'static str {
        match self {
            TableKind::Isotypical => "isotypical",
            TableKind::Weights => "weights",
            TableKind::Mdeg => "mdeg",
            TableKind::Diagonals => "diagonals",
        }
    }
}

impl FromStr for TableKind {
    type Err = RenderError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| RenderError::UnknownTable(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub table: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn value(&self, label: &str, column: &str) -> Option<&str> {
        let c = self.columns.iter().position(|x| x == column)?;
        self.rows.iter().find(|r| r.label == label).map(|r| r.values[c].as_str())
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label_w = self.rows.iter().map(|r| r.label.chars().count()).max().unwrap_or(0).max(self.table.len());
        let cell_w = self
            .rows
            .iter()
            .flat_map(|r| &r.values)
            .chain(&self.columns)
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1);
        let pad = |s: &str, w: usize| format!("{}{s}", " ".repeat(w.saturating_sub(s.chars().count())));
        let header: Vec<String> = self.columns.iter().map(|c| pad(c, cell_w)).collect();
        writeln!(f, "{}  {}", pad(&self.table, label_w), header.join("  "))?;
        for row in &self.rows {
            let cells: Vec<String> = row.values.iter().map(|v| pad(v, cell_w)).collect();
            writeln!(f, "{}  {}", pad(&row.label, label_w), cells.join("  "))?;
        }
        Ok(())
    }
}

/// Builds the named table from fresh computations.
pub fn table(alg: &Algebra, kind: TableKind) -> Result<Table, RenderError> {
    let (columns, rows) = match kind {
        TableKind::Isotypical => {
            let t = isotypical_table(alg.j()?);
            let columns: Vec<String> = (-3..=3).map(|w: i64| w.to_string()).collect();
            let rows = (0..=6)
                .map(|k| TableRow {
                    label: format!("degree {k}"),
                    values: (-3..=3).map(|w| t.multiplicity(k, w).to_string()).collect(),
                })
                .collect();
            (columns, rows)
        }
        TableKind::Weights => {
            let torus = [alg.get("H0")?.clone(), alg.get("H1")?.clone(), alg.get("H2")?.clone()];
            let rows = weight_table()
                .into_iter()
                .map(|(name, _)| {
                    let w = weight_of(alg.get(&name)?, &torus)?;
                    Ok(TableRow {
                        label: name,
                        values: w.iter().map(ToString::to_string).collect(),
                    })
                })
                .collect::<Result<_, RenderError>>()?;
            (vec!["H0".into(), "H1".into(), "H2".into()], rows)
        }
        TableKind::Mdeg => {
            let rows = ["L", "Lam", "V", "A", "H", "S"]
                .iter()
                .map(|p| {
                    let values = (0..3)
                        .map(|j| Ok(mdeg_of_operator(alg.get(&format!("{p}{j}"))?)?.to_string()))
                        .collect::<Result<_, RenderError>>()?;
                    Ok(TableRow { label: p.to_string(), values })
                })
                .collect::<Result<_, RenderError>>()?;
            (vec!["j=0".into(), "j=1".into(), "j=2".into()], rows)
        }
        TableKind::Diagonals => {
            let v = alg.v()?;
            let rows = ["H0", "H1", "H2", "S0", "S1", "S2"]
                .iter()
                .map(|n| {
                    let m = v.restrict(alg.get(n)?)?;
                    Ok(TableRow {
                        label: n.to_string(),
                        values: m.diag().iter().map(ToString::to_string).collect(),
                    })
                })
                .collect::<Result<_, RenderError>>()?;
            ((1..=6).map(|k| k.to_string()).collect(), rows)
        }
    };
    Ok(Table {
        table: kind.name().to_string(),
        columns,
        rows,
    })
}

/// Summary of a computed span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanView {
    pub generators: Vec<String>,
    pub dim: usize,
    /// Echelon pivot coordinates as `[row monomial, column monomial]`, sorted.
    pub pivots: Vec<[String; 2]>,
    pub basis: Vec<String>,
}

impl SpanView {
    pub fn new(generators: Vec<String>, span: &crate::lie::OperatorSpan) -> Self {
        let mono = |k: usize| BasisMask::new(k as u8).to_string();
        Self {
            generators,
            dim: span.dim(),
            pivots: span.pivots().into_iter().map(|p| [mono(p / DIM), mono(p % DIM)]).collect(),
            basis: span.labels().to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("span serializes")
    }
}

impl fmt::Display for SpanView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.generators.join(", "))?;
        writeln!(f, "dimension: {}", self.dim)?;
        writeln!(f, "basis:")?;
        for label in &self.basis {
            writeln!(f, "  {label}")?;
        }
        let pivots: Vec<String> = self.pivots.iter().map(|[r, c]| format!("({r}, {c})")).collect();
        writeln!(f, "pivots (row, col): {}", pivots.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restricted_matrix_view() {
        let m = matrix(Algebra::global(), "L0", true).unwrap();
        assert_eq!(m.dim, 6);
        assert_eq!(m.entries[4][0], "-1/2");
        let back: MatrixView = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(back.to_json(), m.to_json());
        let full = matrix(Algebra::global(), "Id", false).unwrap();
        assert_eq!(full.dim, 64);
        assert_eq!(full.entries[63][63], "1");
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(matrix(Algebra::global(), "X9", false), Err(RenderError::Algebra(_))));
        assert!(matches!("spin".parse::<TableKind>(), Err(RenderError::UnknownTable(_))));
        assert!(matches!(matrix(Algebra::global(), "E10", true), Err(RenderError::Rep(_))));
    }

    #[test]
    fn tables() {
        let alg = Algebra::global();
        let iso = table(alg, TableKind::Isotypical).unwrap();
        assert_eq!(iso.value("degree 3", "-1"), Some("9"));
        let mdeg = table(alg, TableKind::Mdeg).unwrap();
        assert_eq!(mdeg.value("L", "j=0"), Some("(0,1,1)"));
        let w = table(alg, TableKind::Weights).unwrap();
        assert_eq!(w.rows.len(), 12);
        assert_eq!(w.value("V1", "H1"), Some("0"));
        let d = table(alg, TableKind::Diagonals).unwrap();
        assert_eq!(d.value("S0", "6"), Some("-1"));
    }
}
