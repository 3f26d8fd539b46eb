//! Hand-transcribed reference matrices for the restriction to `V`, loaded
//! from `data/golden.txt`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::linalg::DenseMatrix;
use crate::scalars::Q;

const SOURCE: &str = include_str!("../data/golden.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("golden data line {line}: {msg}")]
pub struct GoldenError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Default)]
pub struct Golden {
    pub matrices: BTreeMap<String, DenseMatrix>,
    pub diagonals: BTreeMap<String, Vec<Q>>,
    /// `name → (coefficient, row, col)`, zero-based.
    pub units: BTreeMap<String, (Q, usize, usize)>,
}

impl Golden {
    pub fn parse(src: &str) -> Result<Self, GoldenError> {
        let mut out = Golden::default();
        let lines: Vec<(usize, &str)> = src
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let err = |line: usize, msg: &str| GoldenError { line, msg: msg.to_string() };
        let scalar = |line: usize, s: &str| s.parse::<Q>().map_err(|e| err(line, &e.to_string()));
        let index = |line: usize, s: &str| match s.parse::<usize>() {
            Ok(k @ 1..=6) => Ok(k - 1),
            _ => Err(err(line, "index must be 1..6")),
        };

        let mut k = 0;
        while k < lines.len() {
            let (line, text) = lines[k];
            let words: Vec<&str> = text.split_whitespace().collect();
            match words.as_slice() {
                ["matrix", name] => {
                    let rows = lines.get(k + 1..k + 7).ok_or_else(|| err(line, "truncated matrix"))?;
                    let mut m = Vec::with_capacity(6);
                    for &(rl, rt) in rows {
                        let row = rt.split_whitespace().map(|s| scalar(rl, s)).collect::<Result<Vec<_>, _>>()?;
                        if row.len() != 6 {
                            return Err(err(rl, "matrix row needs 6 entries"));
                        }
                        m.push(row);
                    }
                    out.matrices.insert(name.to_string(), DenseMatrix::from_rows(m));
                    k += 7;
                    continue;
                }
                ["diagonal", name, rest @ ..] => {
                    let d = rest.iter().map(|s| scalar(line, s)).collect::<Result<Vec<_>, _>>()?;
                    if d.len() != 6 {
                        return Err(err(line, "diagonal needs 6 entries"));
                    }
                    out.diagonals.insert(name.to_string(), d);
                }
                ["unit", name, c, r, col] => {
                    out.units.insert(name.to_string(), (scalar(line, c)?, index(line, r)?, index(line, col)?));
                }
                _ => return Err(err(line, "unrecognized directive")),
            }
            k += 1;
        }
        Ok(out)
    }

    /// The bundled reference data.
    pub fn bundled() -> &'static Golden {
        static CELL: OnceLock<Golden> = OnceLock::new();
        CELL.get_or_init(|| Golden::parse(SOURCE).expect("bundled golden data parses"))
    }

    pub fn unit_matrix(&self, name: &str) -> Option<DenseMatrix> {
        let (c, r, col) = self.units.get(name)?;
        Some(DenseMatrix::unit(6, *r, *col).scale(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_data_is_complete() {
        let g = Golden::bundled();
        assert_eq!(g.matrices.len(), 12);
        assert_eq!(g.diagonals.len(), 6);
        assert_eq!(g.units.len(), 12);
        assert_eq!(g.matrices["L0"][(4, 0)], Q::frac(-1, 2));
        assert_eq!(g.matrices["A1"][(1, 4)], Q::imag_frac(2, 1));
        assert_eq!(g.matrices["V2"][(5, 0)], Q::imag_frac(1, 2));
        assert_eq!(g.matrices["Lam2"][(1, 3)], Q::from(2));
        assert_eq!(g.matrices["Lam2"][(2, 4)], Q::from(2));
        assert_eq!(g.unit_matrix("L10").unwrap()[(5, 1)], Q::from(2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Golden::parse("matrix X\n0 0 0\n").is_err());
        assert!(Golden::parse("unit X 1 7 1").is_err());
        assert!(Golden::parse("frobnicate").is_err());
    }
}
