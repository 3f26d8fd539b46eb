//! The toral layer: `H_j`, `S_j`, the Cartan subalgebra, pure-weight
//! operators `L_ij`/`Λ_ij`, Serre generators, and multidegrees of operators.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::canon_ops::{adjoint_ops, build_l, build_v, build_w_ops, CanonError, PermutationS3};
use crate::exterior::{mdeg_of_monomial, BasisMask, MDeg};
use crate::lie::OperatorSpan;
use crate::operator::Operator;
use crate::report::Check;
use crate::scalars::Q;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CartanError {
    #[error("operator is not an eigenvector of torus element {index} ({residual_nnz} residual entries)")]
    NotAnEigenvector { index: usize, residual_nnz: usize },
    #[error("eigenvalue {value} of torus element {index} is not an integer")]
    NotIntegral { index: usize, value: Box<Q> },
    #[error("operator is zero")]
    ZeroOperator,
    #[error("not mdeg-homogeneous: entry {first:?} shifts by {first_shift}, entry {second:?} by {second_shift}")]
    NotHomogeneous {
        first: (BasisMask, BasisMask),
        first_shift: MDeg,
        second: (BasisMask, BasisMask),
        second_shift: MDeg,
    },
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error("index out of range: {0}")]
    BadIndex(usize),
}

/// `H_j = [L_j, Λ_j]`.
pub fn build_h(j: usize) -> Result<Operator, CartanError> {
    let l = build_l(j)?;
    Ok(l.bracket(&l.adjoint()))
}

/// The three `H_j`.
pub fn torus() -> Vec<Operator> {
    (0..3).map(|j| build_h(j).expect("index in range")).collect()
}

/// Integer eigenvalues of `ad(h)` on `t` for each `h` in `torus`.
pub fn weight_of(t: &Operator, torus: &[Operator]) -> Result<Vec<i64>, CartanError> {
    if t.is_zero() {
        return Err(CartanError::ZeroOperator);
    }
    torus
        .iter()
        .enumerate()
        .map(|(index, h)| {
            let image = h.bracket(t);
            let (r, c, x) = t.entries().next().expect("nonzero");
            let lambda = image.entry(r, c).checked_div(x).expect("nonzero pivot");
            let residual = &image - &t.scale(&lambda);
            if !residual.is_zero() {
                return Err(CartanError::NotAnEigenvector {
                    index,
                    residual_nnz: residual.nnz(),
                });
            }
            lambda.to_integer().ok_or_else(|| CartanError::NotIntegral { index, value: Box::new(lambda.clone()) })
        })
        .collect()
}

/// `S_j = i[[[V_j, Λ_{j+1}], Λ_{j+2}], L_j]` (indices mod 3).
pub fn build_s(j: usize) -> Result<Operator, CartanError> {
    if j > 2 {
        return Err(CartanError::BadIndex(j));
    }
    let (k, l) = ((j + 1) % 3, (j + 2) % 3);
    let inner = build_v(j)?.bracket(&adjoint_ops(k)?.0).bracket(&adjoint_ops(l)?.0).bracket(&build_l(j)?);
    Ok(inner.scale(&Q::i()))
}

/// `L_1j = −2L_j + [S_j, L_j]`, `L_2j = 2L_j + [S_j, L_j]`.
pub fn build_lij(i: usize, j: usize) -> Result<Operator, CartanError> {
    let l = build_l(j)?;
    let sl = build_s(j)?.bracket(&l);
    let c = match i {
        1 => Q::from(-2),
        2 => Q::from(2),
        _ => return Err(CartanError::BadIndex(i)),
    };
    Ok(Operator::linear_combination([(c, &l), (Q::one(), &sl)]))
}

/// `Λ_1j = −2Λ_j − [S_j, Λ_j]`, `Λ_2j = 2Λ_j − [S_j, Λ_j]`.
pub fn build_lambdaij(i: usize, j: usize) -> Result<Operator, CartanError> {
    let lam = adjoint_ops(j)?.0;
    let sl = build_s(j)?.bracket(&lam);
    let c = match i {
        1 => Q::from(-2),
        2 => Q::from(2),
        _ => return Err(CartanError::BadIndex(i)),
    };
    Ok(Operator::linear_combination([(c, &lam), (-Q::one(), &sl)]))
}

/// Span of `H_0, H_1, H_2, S_0, S_1, S_2` (dimension 5).
pub fn cartan_subalgebra() -> OperatorSpan {
    let items = (0..3)
        .map(|j| (format!("H{j}"), build_h(j).expect("index in range")))
        .chain((0..3).map(|j| (format!("S{j}"), build_s(j).expect("index in range"))));
    OperatorSpan::from_elements(items)
}

/// Type `A_5` Cartan matrix.
pub fn cartan_matrix_a5() -> [[i64; 5]; 5] {
    let mut a = [[0i64; 5]; 5];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
        if i > 0 {
            row[i - 1] = -1;
        }
        if i < 4 {
            row[i + 1] = -1;
        }
    }
    a
}

/// Serre generators `e_i`, `f_i`, `h_i = [e_i, f_i]`, `i = 1..5` (stored
/// zero-based).
#[derive(Debug, Clone)]
pub struct SerreSystem {
    pub e: Vec<Operator>,
    pub f: Vec<Operator>,
    pub h: Vec<Operator>,
    pub cartan_matrix: [[i64; 5]; 5],
}

pub fn build_serre() -> Result<SerreSystem, CartanError> {
    let quarter = Q::frac(1, 4);
    let (_, a0) = adjoint_ops(0)?;
    let (_, a1) = adjoint_ops(1)?;
    let (v0, v1) = (build_v(0)?, build_v(1)?);
    let e = vec![
        build_lij(2, 0)?.bracket(&a1).scale(&quarter),
        build_lij(2, 2)?.bracket(&a0).scale(&quarter),
        v0.clone(),
        build_lij(1, 2)?.bracket(&a0).scale(&quarter),
        build_lij(1, 0)?.bracket(&a1).scale(&quarter),
    ];
    let f = vec![
        v1.bracket(&build_lambdaij(2, 0)?).scale(&quarter),
        v0.bracket(&build_lambdaij(2, 2)?).scale(&quarter),
        a0.clone(),
        v0.bracket(&build_lambdaij(1, 2)?).scale(&quarter),
        v1.bracket(&build_lambdaij(1, 0)?).scale(&quarter),
    ];
    let h = e.iter().zip(&f).map(|(x, y)| x.bracket(y)).collect();
    Ok(SerreSystem {
        e,
        f,
        h,
        cartan_matrix: cartan_matrix_a5(),
    })
}

/// The `h_i` written in terms of `H_j`, `S_j`.
pub fn h_formulas() -> Vec<Operator> {
    let h = torus();
    let s: Vec<Operator> = (0..3).map(|j| build_s(j).expect("index in range")).collect();
    let half = Q::frac(1, 2);
    let combo = |terms: &[(i64, &Operator)]| {
        Operator::linear_combination(terms.iter().map(|&(c, op)| (&half * &Q::from(c), op)))
    };
    vec![
        combo(&[(1, &h[1]), (-1, &h[2]), (-1, &s[1]), (-1, &s[2])]),
        combo(&[(1, &h[0]), (-1, &h[1]), (1, &s[2])]),
        combo(&[(-1, &h[0]), (1, &h[1]), (1, &h[2])]),
        combo(&[(1, &h[0]), (-1, &h[1]), (-1, &s[2])]),
        combo(&[(1, &h[1]), (-1, &h[2]), (1, &s[1]), (1, &s[2])]),
    ]
}

fn ad_power(x: &Operator, y: &Operator, n: i64) -> Operator {
    (0..n).fold(y.clone(), |acc, _| x.bracket(&acc))
}

/// The full Serre relation suite for the given Cartan matrix.
pub fn verify_serre_relations(s: &SerreSystem) -> Vec<Check> {
    let a = &s.cartan_matrix;
    let n = s.e.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let label = |i: usize, j: usize| format!("({},{})", i + 1, j + 1);

    let hh = pairs.iter().filter(|&&(i, j)| i < j && !s.h[i].bracket(&s.h[j]).is_zero()).map(|&(i, j)| label(i, j)).collect();
    let ef = pairs
        .iter()
        .filter(|&&(i, j)| {
            let b = s.e[i].bracket(&s.f[j]);
            if i == j {
                b != s.h[i]
            } else {
                !b.is_zero()
            }
        })
        .map(|&(i, j)| label(i, j))
        .collect();
    let he = pairs
        .iter()
        .filter(|&&(i, j)| s.h[i].bracket(&s.e[j]) != s.e[j].scale(&Q::from(a[i][j])))
        .map(|&(i, j)| label(i, j))
        .collect();
    let hf = pairs
        .iter()
        .filter(|&&(i, j)| s.h[i].bracket(&s.f[j]) != s.f[j].scale(&Q::from(-a[i][j])))
        .map(|&(i, j)| label(i, j))
        .collect();
    let serre_e = pairs
        .iter()
        .filter(|&&(i, j)| i != j && !ad_power(&s.e[i], &s.e[j], 1 - a[i][j]).is_zero())
        .map(|&(i, j)| label(i, j))
        .collect();
    let serre_f = pairs
        .iter()
        .filter(|&&(i, j)| i != j && !ad_power(&s.f[i], &s.f[j], 1 - a[i][j]).is_zero())
        .map(|&(i, j)| label(i, j))
        .collect();
    vec![
        Check::from_failures("serre/h-commute", "[h_i, h_j] = 0", hh),
        Check::from_failures("serre/e-f", "[e_i, f_j] = δ_ij h_i", ef),
        Check::from_failures("serre/h-e", "[h_i, e_j] = a_ij e_j", he),
        Check::from_failures("serre/h-f", "[h_i, f_j] = -a_ij f_j", hf),
        Check::from_failures("serre/ad-e", "ad(e_i)^(1-a_ij) e_j = 0 for i != j", serre_e),
        Check::from_failures("serre/ad-f", "ad(f_i)^(1-a_ij) f_j = 0 for i != j", serre_f),
    ]
}

/// The constant multidegree shift of a homogeneous operator.
pub fn mdeg_of_operator(t: &Operator) -> Result<MDeg, CartanError> {
    let mut entries = t.entries();
    let (r0, c0, _) = entries.next().ok_or(CartanError::ZeroOperator)?;
    let shift = mdeg_of_monomial(r0) - mdeg_of_monomial(c0);
    for (r, c, _) in entries {
        let s = mdeg_of_monomial(r) - mdeg_of_monomial(c);
        if s != shift {
            return Err(CartanError::NotHomogeneous {
                first: (r0, c0),
                first_shift: shift,
                second: (r, c),
                second_shift: s,
            });
        }
    }
    Ok(shift)
}

fn span_of(items: Vec<(String, Operator)>) -> OperatorSpan {
    OperatorSpan::from_elements(items)
}

fn span_check(id: String, anchor: String, lhs: &OperatorSpan, rhs: &OperatorSpan) -> Check {
    let forward = lhs.is_subspace_of(rhs);
    let backward = rhs.is_subspace_of(lhs);
    Check::new(id, anchor, forward && backward && lhs.dim() > 0).with_witness(format!(
        "dims {} vs {}, lhs ⊆ rhs: {forward}, rhs ⊆ lhs: {backward}",
        lhs.dim(),
        rhs.dim()
    ))
}

/// Identifies the pure-weight operators, `V_j`, `A_j`, and `H ⊕ ⟨J⟩` with
/// spans of quadratic monomials in the `w`-basis operators.
pub fn match_quadratic_spans(j_op: &Operator) -> Vec<Check> {
    let w: Vec<_> = (0..3).map(|j| build_w_ops(j).expect("index in range")).collect();
    let mut checks = Vec::new();
    for sigma in PermutationS3::all() {
        let (j, k, l) = (sigma.apply(0), sigma.apply(1), sigma.apply(2));
        let lhs = span_of(vec![
            (format!("L1{j}"), build_lij(1, j).expect("valid")),
            (format!("L2{j}"), build_lij(2, j).expect("valid")),
        ]);
        let rhs = span_of(vec![
            (format!("[Ew{k},Ewbar{l}]"), w[k].e_w.bracket(&w[l].e_wbar)),
            (format!("[Ew{l},Ewbar{k}]"), w[l].e_w.bracket(&w[k].e_wbar)),
        ]);
        checks.push(span_check(
            format!("spans/L{j}-via-{k}{l}"),
            format!("Span(L1{j}, L2{j}) = Span([Ew{k},Ewbar{l}], [Ew{l},Ewbar{k}])"),
            &lhs,
            &rhs,
        ));
        let lhs = span_of(vec![
            (format!("Lam1{j}"), build_lambdaij(1, j).expect("valid")),
            (format!("Lam2{j}"), build_lambdaij(2, j).expect("valid")),
        ]);
        let rhs = span_of(vec![
            (format!("[Iw{k},Iwbar{l}]"), w[k].i_w.bracket(&w[l].i_wbar)),
            (format!("[Iw{l},Iwbar{k}]"), w[l].i_w.bracket(&w[k].i_wbar)),
        ]);
        checks.push(span_check(
            format!("spans/Lam{j}-via-{k}{l}"),
            format!("Span(Lam1{j}, Lam2{j}) = Span([Iw{k},Iwbar{l}], [Iw{l},Iwbar{k}])"),
            &lhs,
            &rhs,
        ));
    }
    for j in 0..3 {
        let v = span_of(vec![(format!("V{j}"), build_v(j).expect("valid"))]);
        let rhs = span_of(vec![(format!("[Ew{j},Ewbar{j}]"), w[j].e_w.bracket(&w[j].e_wbar))]);
        checks.push(span_check(format!("spans/V{j}"), format!("Span(V{j}) = Span([Ew{j},Ewbar{j}])"), &v, &rhs));
        let a = span_of(vec![(format!("A{j}"), build_v(j).expect("valid").adjoint())]);
        let rhs = span_of(vec![(format!("[Iw{j},Iwbar{j}]"), w[j].i_w.bracket(&w[j].i_wbar))]);
        checks.push(span_check(format!("spans/A{j}"), format!("Span(A{j}) = Span([Iw{j},Iwbar{j}])"), &a, &rhs));
    }
    let mut lhs = cartan_subalgebra();
    let cartan_dim = lhs.dim();
    let j_added = lhs.insert("J", j_op.clone());
    let rhs = span_of(
        (0..3)
            .flat_map(|m| {
                [
                    (format!("[Ew{m},Iw{m}]"), w[m].e_w.bracket(&w[m].i_w)),
                    (format!("[Ewbar{m},Iwbar{m}]"), w[m].e_wbar.bracket(&w[m].i_wbar)),
                ]
            })
            .collect(),
    );
    let mut c = span_check(
        "spans/cartan-plus-J".into(),
        "H ⊕ Span(J) = ⊕_m Span([Ew_m,Iw_m], [Ewbar_m,Iwbar_m])".into(),
        &lhs,
        &rhs,
    );
    c.pass &= j_added && cartan_dim == 5 && rhs.dim() == 6;
    checks.push(c.with_note(format!("dim H = {cartan_dim}, dim(H ⊕ J) = {}, rhs rank = {}", lhs.dim(), rhs.dim())));
    checks
}

/// `Some(u)` when `m` is `u ≠ 0` times the matrix unit at `(row, col)`.
pub fn adjacent_unit_multiple(m: &crate::linalg::DenseMatrix, row: usize, col: usize) -> Option<Q> {
    let x = m[(row, col)].clone();
    let only = m
        .as_slice()
        .iter()
        .enumerate()
        .all(|(k, v)| k == row * m.ncols() + col || v.is_zero());
    (only && !x.is_zero()).then_some(x)
}

/// Zero-based `(row, col)` of the matrix unit `e_i` should restrict to.
pub fn serre_position(i: usize) -> (usize, usize) {
    (i + 1, i)
}
