//! The `J`-weight decomposition of `Λ*T*_C`, the six-dimensional weight −2
//! subrepresentation `V`, and restriction of operators to it.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::canon_ops::{w, wbar};
use crate::exterior::{BasisMask, Multivector, DIM};
use crate::golden::Golden;
use crate::lie::OperatorSpan;
use crate::linalg::{DenseMatrix, Echelon, Membership, SparseVec};
use crate::operator::Operator;
use crate::scalars::Q;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("image of basis vector {index} leaves V (residual {residual})")]
    NotInvariant { index: usize, residual: Multivector },
    #[error("basis vector {index} is not a J-eigenvector of weight -2")]
    NotEigenvector { index: usize },
    #[error("basis vectors of V are linearly dependent")]
    Dependent,
}

fn to_sparse(phi: &Multivector) -> SparseVec {
    phi.terms().map(|(m, c)| (m.index(), c.clone())).collect()
}

fn from_sparse(v: &SparseVec) -> Multivector {
    Multivector::from_terms(v.iter().map(|(&k, c)| (BasisMask::new(k as u8), c.clone())))
}

/// Matrix of `t` restricted to the monomials of degree `k` (which it must
/// preserve for the result to be meaningful).
fn degree_block(t: &Operator, k: u32) -> DenseMatrix {
    let monos: Vec<BasisMask> = BasisMask::of_degree(k).collect();
    let mut m = DenseMatrix::zeros(monos.len(), monos.len());
    for (c, &col) in monos.iter().enumerate() {
        for (r, &row) in monos.iter().enumerate() {
            m[(r, c)] = t.entry(row, col);
        }
    }
    m
}

/// `J`-eigenspace dimensions per form degree: `rows[k][n]` is the dimension
/// of the eigenspace with eigenvalue `n·i` inside `Λ^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotypicalTable {
    pub rows: Vec<BTreeMap<i64, usize>>,
}

impl IsotypicalTable {
    pub fn multiplicity(&self, degree: usize, weight: i64) -> usize {
        self.rows.get(degree).and_then(|r| r.get(&weight)).copied().unwrap_or(0)
    }
}

/// Computes the table by exact eigenspace dimensions of `J` on each `Λ^k`.
pub fn isotypical_table(j: &Operator) -> IsotypicalTable {
    let rows = (0..=6u32)
        .map(|k| {
            let block = degree_block(j, k);
            let n = block.nrows();
            (-(k as i64)..=k as i64)
                .filter_map(|weight| {
                    let shifted = &block - &DenseMatrix::identity(n).scale(&Q::imag_frac(weight, 1));
                    let dim = n - shifted.rank();
                    (dim > 0).then_some((weight, dim))
                })
                .collect()
        })
        .collect();
    IsotypicalTable { rows }
}

/// Bases of the `J`-eigenspaces of the whole 64-dimensional space, keyed by
/// weight.
pub fn weight_spaces(j: &Operator) -> BTreeMap<i64, Vec<Multivector>> {
    let mut full = DenseMatrix::zeros(DIM, DIM);
    for (r, c, x) in j.entries() {
        full[(r.index(), c.index())] = x.clone();
    }
    (-3..=3i64)
        .map(|weight| {
            let shifted = &full - &DenseMatrix::identity(DIM).scale(&Q::imag_frac(weight, 1));
            let vecs = shifted
                .nullspace()
                .into_iter()
                .map(|x| Multivector::from_terms(x.into_iter().enumerate().map(|(k, c)| (BasisMask::new(k as u8), c))))
                .collect();
            (weight, vecs)
        })
        .collect()
}

/// Whether `t` maps each `J`-eigenspace (summed over degrees) into itself.
pub fn preserves_weight_spaces(t: &Operator, spaces: &BTreeMap<i64, Vec<Multivector>>) -> bool {
    spaces.values().all(|basis| {
        let mut e = Echelon::new();
        for b in basis {
            e.insert(&to_sparse(b));
        }
        basis.iter().all(|b| e.contains(&to_sparse(&t.apply(b))))
    })
}

/// The subrepresentation `V` with its ordered basis `β`.
#[derive(Debug, Clone)]
pub struct SubrepV {
    basis: Vec<Multivector>,
    echelon: Echelon,
}

impl SubrepV {
    pub fn basis(&self) -> &[Multivector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `phi` in `β`, or the residual outside `V`.
    pub fn coordinates(&self, phi: &Multivector) -> Result<Vec<Q>, Multivector> {
        match self.echelon.coordinates(&to_sparse(phi)) {
            Membership::Member(c) => Ok(c),
            Membership::NotMember(r) => Err(from_sparse(&r)),
        }
    }

    /// Matrix of `t|_V` in `β`: column `h` holds the coordinates of `t(β_h)`.
    pub fn restrict(&self, t: &Operator) -> Result<DenseMatrix, RepError> {
        let mut m = DenseMatrix::zeros(6, 6);
        for (h, b) in self.basis.iter().enumerate() {
            let coords = self
                .coordinates(&t.apply(b))
                .map_err(|residual| RepError::NotInvariant { index: h, residual })?;
            for (k, c) in coords.into_iter().enumerate() {
                m[(k, h)] = c;
            }
        }
        Ok(m)
    }
}

/// The ordered basis `w0∧w1, w0∧w2, w1∧w2, w0∧w1∧w2∧w̄j (j = 0,1,2)`.
pub fn v_basis() -> Vec<Multivector> {
    let top = w(0).wedge(&w(1)).wedge(&w(2));
    vec![
        w(0).wedge(&w(1)),
        w(0).wedge(&w(2)),
        w(1).wedge(&w(2)),
        top.wedge(&wbar(0)),
        top.wedge(&wbar(1)),
        top.wedge(&wbar(2)),
    ]
}

/// Builds `V`, checking each basis vector satisfies `J v = −2i v` and that
/// they are independent.
pub fn v_subspace(j: &Operator) -> Result<SubrepV, RepError> {
    let basis = v_basis();
    let minus_two_i = Q::imag_frac(-2, 1);
    let mut echelon = Echelon::new();
    for (index, b) in basis.iter().enumerate() {
        if j.apply(b) != b.scale(&minus_two_i) {
            return Err(RepError::NotEigenvector { index });
        }
        if !echelon.insert(&to_sparse(b)) {
            return Err(RepError::Dependent);
        }
    }
    Ok(SubrepV { basis, echelon })
}

/// Result of comparing one computed restriction against the reference.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixComparison {
    pub name: String,
    pub pass: bool,
    /// First differing entry `(row, col, expected, computed)`, one-based.
    pub first_diff: Option<(usize, usize, Q, Q)>,
    pub error: Option<String>,
}

pub fn compare_matrices(name: &str, expected: &DenseMatrix, computed: &DenseMatrix) -> MatrixComparison {
    let first_diff = (0..6)
        .flat_map(|r| (0..6).map(move |c| (r, c)))
        .find(|&(r, c)| expected[(r, c)] != computed[(r, c)])
        .map(|(r, c)| (r + 1, c + 1, expected[(r, c)].clone(), computed[(r, c)].clone()));
    MatrixComparison {
        name: name.to_string(),
        pass: first_diff.is_none(),
        first_diff,
        error: None,
    }
}

/// Restricts each named generator and compares with the bundled reference.
pub fn verify_generator_matrices(v: &SubrepV, generators: &[(String, Operator)]) -> Vec<MatrixComparison> {
    let golden = Golden::bundled();
    generators
        .iter()
        .map(|(name, op)| {
            let Some(expected) = golden.matrices.get(name) else {
                return MatrixComparison {
                    name: name.clone(),
                    pass: false,
                    first_diff: None,
                    error: Some("no reference matrix".into()),
                };
            };
            match v.restrict(op) {
                Ok(m) => compare_matrices(name, expected, &m),
                Err(e) => MatrixComparison {
                    name: name.clone(),
                    pass: false,
                    first_diff: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

/// Rank data of the restriction map `L → gl(V)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionSummary {
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub image_traceless: bool,
}

pub fn restriction_kernel(span: &OperatorSpan, v: &SubrepV) -> Result<RestrictionSummary, RepError> {
    let restricted = span.elements().iter().map(|t| v.restrict(t)).collect::<Result<Vec<_>, _>>()?;
    let image_traceless = restricted.iter().all(|m| m.trace().is_zero());
    let rows: Vec<Vec<Q>> = restricted.iter().map(|m| m.as_slice().to_vec()).collect();
    let image_dim = if rows.is_empty() { 0 } else { DenseMatrix::from_rows(rows).rank() };
    Ok(RestrictionSummary {
        kernel_dim: span.dim() - image_dim,
        image_dim,
        image_traceless,
    })
}

/// Multiplicity predicted from the `(p,q)`-type count `C(3,p)·C(3,q)`.
pub fn type_count_multiplicity(degree: usize, weight: i64) -> usize {
    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
    }
    (0..=3usize)
        .filter_map(|p| {
            let q = degree.checked_sub(p)?;
            (q <= 3 && q as i64 - p as i64 == weight).then(|| binom(3, p) * binom(3, q))
        })
        .sum()
}

/// `−2i·Id₆`, the restriction of `J`.
pub fn minus_two_i_identity() -> DenseMatrix {
    DenseMatrix::identity(6).scale(&Q::imag_frac(-2, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon_ops::{build_j, build_l, generators};

    #[test]
    fn isotypical_examples() {
        let t = isotypical_table(&build_j().unwrap());
        assert_eq!(t.rows[3], BTreeMap::from([(-3, 1), (-1, 9), (1, 9), (3, 1)]));
        assert_eq!(t.rows[0], BTreeMap::from([(0, 1)]));
        assert_eq!(t.rows[2], BTreeMap::from([(-2, 3), (0, 9), (2, 3)]));
        for k in 0..=6usize {
            let total: usize = t.rows[k].values().sum();
            let binom = (0..k).fold(1, |acc, s| acc * (6 - s) / (s + 1));
            assert_eq!(total, binom);
            for (&n, &m) in &t.rows[k] {
                assert_eq!(t.multiplicity(k, -n), m);
                assert_eq!(type_count_multiplicity(k, n), m);
            }
        }
    }

    #[test]
    fn v_examples() {
        let j = build_j().unwrap();
        let v = v_subspace(&j).unwrap();
        assert_eq!(v.dim(), 6);
        assert_eq!(j.apply(&v.basis()[0]), v.basis()[0].scale(&Q::imag_frac(-2, 1)));
        let rj = v.restrict(&j).unwrap();
        assert_eq!(rj, minus_two_i_identity());
        assert_eq!(rj.trace(), Q::imag_frac(-12, 1));
    }

    #[test]
    fn restrict_l0() {
        let v = v_subspace(&build_j().unwrap()).unwrap();
        let m = v.restrict(&build_l(0).unwrap()).unwrap();
        assert_eq!(m[(4, 0)], Q::frac(-1, 2));
        assert_eq!(m[(5, 1)], Q::frac(-1, 2));
        assert_eq!(m.as_slice().iter().filter(|x| !x.is_zero()).count(), 2);
    }

    #[test]
    fn generator_matrices_match_reference() {
        let v = v_subspace(&build_j().unwrap()).unwrap();
        for cmp in verify_generator_matrices(&v, &generators()) {
            assert!(cmp.pass, "{cmp:?}");
        }
    }

    #[test]
    fn non_invariant_operator_is_rejected() {
        let v = v_subspace(&build_j().unwrap()).unwrap();
        let e = crate::canon_ops::e_op(1, 0);
        assert!(matches!(v.restrict(&e), Err(RepError::NotInvariant { index: 0, .. })));
    }

    #[test]
    fn zero_span_has_zero_kernel() {
        let v = v_subspace(&build_j().unwrap()).unwrap();
        let s = restriction_kernel(&OperatorSpan::new(), &v).unwrap();
        assert_eq!(s.kernel_dim, 0);
        assert_eq!(s.image_dim, 0);
    }
}
