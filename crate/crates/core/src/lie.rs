//! Lie-theoretic linear algebra on operators: spans with exact membership,
//! closure under the commutator bracket, and the quadratic part `C²` of the
//! Clifford algebra generated by the `E_ij`, `I_ij`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::canon_ops::{build_w_ops, e_op, i_op, WOps};
use crate::exterior::Generator;
use crate::linalg::{dense_to_sparse, DenseMatrix, Echelon, Membership, SparseVec};
pub use crate::operator::Operator;
use crate::scalars::Q;

/// Default cap on closure rounds.
pub const DEFAULT_MAX_ROUNDS: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error("closure still growing after {rounds} rounds (dimension {dim})")]
    ClosureNotReached { rounds: usize, dim: usize },
    #[error("closure needs at least one generator")]
    NoGenerators,
    #[error("max_rounds must be at least 1")]
    ZeroRounds,
    #[error("element {index} ({label}) depends on the preceding ones")]
    DependentSet { index: usize, label: String },
    #[error("operator {0} is not in the quadratic space")]
    NotQuadratic(String),
}

/// Anything with a fixed coordinate vectorization.
pub trait Vectorize {
    fn to_sparse(&self) -> SparseVec;
}

impl Vectorize for Operator {
    fn to_sparse(&self) -> SparseVec {
        Operator::to_sparse(self)
    }
}

/// Coordinates with respect to a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordVec(pub Vec<Q>);

impl Vectorize for CoordVec {
    fn to_sparse(&self) -> SparseVec {
        dense_to_sparse(&self.0)
    }
}

/// A linear span kept in reduced echelon form, remembering the independent
/// elements (with labels) it was built from.
#[derive(Debug, Clone)]
pub struct Span<T> {
    echelon: Echelon,
    elements: Vec<T>,
    labels: Vec<String>,
}

pub type OperatorSpan = Span<Operator>;

impl<T> Default for Span<T> {
    fn default() -> Self {
        Self {
            echelon: Echelon::new(),
            elements: Vec::new(),
            labels: Vec::new(),
        }
    }
}

impl<T: Vectorize> Span<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Span of the given elements; dependent ones are skipped.
    pub fn from_elements(items: impl IntoIterator<Item = (String, T)>) -> Self {
        let mut s = Self::new();
        for (label, t) in items {
            s.insert(label, t);
        }
        s
    }

    /// Like [`Span::from_elements`] but fails on the first dependent element.
    pub fn independent(items: impl IntoIterator<Item = (String, T)>) -> Result<Self, LieError> {
        let mut s = Self::new();
        for (index, (label, t)) in items.into_iter().enumerate() {
            if !s.echelon.insert(&t.to_sparse()) {
                return Err(LieError::DependentSet { index, label });
            }
            s.elements.push(t);
            s.labels.push(label);
        }
        Ok(s)
    }

    /// Returns true when `t` was independent and got added.
    pub fn insert(&mut self, label: impl Into<String>, t: T) -> bool {
        if !self.echelon.insert(&t.to_sparse()) {
            return false;
        }
        self.elements.push(t);
        self.labels.push(label.into());
        true
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.echelon.pivots()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    /// Exact coefficients with respect to [`Span::elements`], or the residual.
    pub fn in_span(&self, t: &T) -> Membership {
        self.echelon.coordinates(&t.to_sparse())
    }

    pub fn contains(&self, t: &T) -> bool {
        self.echelon.contains(&t.to_sparse())
    }

    pub fn is_subspace_of<U: Vectorize>(&self, other: &Span<U>) -> bool {
        self.echelon.rows().iter().all(|r| other.echelon.contains(r))
    }

    pub fn same_span<U: Vectorize>(&self, other: &Span<U>) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other) && other.is_subspace_of(self)
    }
}

impl OperatorSpan {
    /// Lie closure of `generators`: see [`closure_with`].
    pub fn closure(generators: &[(String, Operator)], max_rounds: usize) -> Result<Self, LieError> {
        closure_with(generators, |a, b| a.bracket(b), max_rounds)
    }
}

/// Lie closure by rounds: every element added in the previous round is
/// bracketed against each generator, and independent results are added in a
/// fixed order. Stops when a round adds nothing.
pub fn closure_with<T, F>(generators: &[(String, T)], bracket: F, max_rounds: usize) -> Result<Span<T>, LieError>
where
    T: Vectorize + Clone + Send + Sync,
    F: Fn(&T, &T) -> T + Sync,
{
    if generators.is_empty() {
        return Err(LieError::NoGenerators);
    }
    if max_rounds == 0 {
        return Err(LieError::ZeroRounds);
    }
    let mut span = Span::new();
    let mut gens: Vec<usize> = Vec::new();
    for (label, g) in generators {
        if span.insert(label.clone(), g.clone()) {
            gens.push(span.dim() - 1);
        }
    }
    let mut frontier = gens.clone();
    let mut rounds = 0;
    while !frontier.is_empty() {
        if rounds == max_rounds {
            return Err(LieError::ClosureNotReached { rounds, dim: span.dim() });
        }
        rounds += 1;
        let pairs: Vec<(usize, usize)> = frontier.iter().flat_map(|&x| gens.iter().map(move |&g| (x, g))).collect();
        let products: Vec<T> = pairs
            .par_iter()
            .map(|&(x, g)| bracket(&span.elements[x], &span.elements[g]))
            .collect();
        let mut next = Vec::new();
        for ((x, g), p) in pairs.into_iter().zip(products) {
            let label = format!("[{},{}]", span.labels[x], span.labels[g]);
            if span.insert(label, p) {
                next.push(span.dim() - 1);
            }
        }
        frontier = next;
    }
    Ok(span)
}

/// The twelve Clifford generators `ρ(v_ij) = E_ij`, `ρ(∂/∂v_ij) = I_ij`, in
/// generator order, `E` first.
pub fn clifford_generators() -> Vec<(String, Operator)> {
    let mut out: Vec<(String, Operator)> = Generator::all()
        .map(|g| (format!("E{}{}", g.i(), g.j()), e_op(g.i(), g.j() as usize)))
        .collect();
    out.extend(Generator::all().map(|g| (format!("I{}{}", g.i(), g.j()), i_op(g.i(), g.j() as usize))));
    out
}

/// `C²`: the span of `½[ρ(x), ρ(y)]` over pairs of Clifford generators, with
/// its structure constants in that basis.
#[derive(Debug, Clone)]
pub struct QuadraticSpace {
    basis: OperatorSpan,
    structure: Vec<Vec<Q>>,
}

impl QuadraticSpace {
    pub fn new() -> Result<Self, LieError> {
        let gens = clifford_generators();
        let half = Q::frac(1, 2);
        let mut items = Vec::new();
        for a in 0..gens.len() {
            for b in a + 1..gens.len() {
                let label = format!("[{},{}]/2", gens[a].0, gens[b].0);
                items.push((label, gens[a].1.bracket(&gens[b].1).scale(&half)));
            }
        }
        let basis = OperatorSpan::independent(items)?;
        let n = basis.dim();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let computed: Vec<Result<Vec<Q>, LieError>> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let p = basis.elements()[a].bracket(&basis.elements()[b]);
                coords_in(&basis, &p, || format!("[{},{}]", basis.labels()[a], basis.labels()[b]))
            })
            .collect();
        let mut structure = vec![vec![Q::zero(); n]; n * n];
        for ((a, b), c) in pairs.into_iter().zip(computed) {
            let c = c?;
            structure[b * n + a] = c.iter().map(|x| -x.clone()).collect();
            structure[a * n + b] = c;
        }
        Ok(Self { basis, structure })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn span(&self) -> &OperatorSpan {
        &self.basis
    }

    pub fn contains(&self, t: &Operator) -> bool {
        self.basis.contains(t)
    }

    pub fn coords(&self, t: &Operator) -> Result<CoordVec, LieError> {
        coords_in(&self.basis, t, || "operator".to_string()).map(CoordVec)
    }

    pub fn to_operator(&self, x: &CoordVec) -> Operator {
        Operator::linear_combination(x.0.iter().cloned().zip(self.basis.elements()))
    }

    /// Bracket computed from the structure constants alone.
    pub fn bracket_coords(&self, x: &CoordVec, y: &CoordVec) -> CoordVec {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (a, xa) in x.0.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.0.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let xy = xa * yb;
                for (o, c) in out.iter_mut().zip(&self.structure[a * n + b]) {
                    if !c.is_zero() {
                        *o += &(&xy * c);
                    }
                }
            }
        }
        CoordVec(out)
    }

    /// Matrix of `ad(x)` in the quadratic basis.
    pub fn ad_matrix(&self, x: &CoordVec) -> DenseMatrix {
        let n = self.dim();
        let mut m = DenseMatrix::zeros(n, n);
        for b in 0..n {
            let mut e = vec![Q::zero(); n];
            e[b] = Q::one();
            let col = self.bracket_coords(x, &CoordVec(e));
            for (a, v) in col.0.into_iter().enumerate() {
                m[(a, b)] = v;
            }
        }
        m
    }

    /// Splits `C²` into `ad(J)`-eigenspaces: weight `k` is the eigenvalue
    /// `k·i`. Only nonzero eigenspaces are returned.
    pub fn j_weight_split(&self, j: &Operator) -> Result<BTreeMap<i64, OperatorSpan>, LieError> {
        let ad = self.ad_matrix(&self.coords(j)?);
        let n = self.dim();
        let mut out = BTreeMap::new();
        for k in -2..=2i64 {
            let shifted = &ad - &DenseMatrix::identity(n).scale(&Q::imag_frac(k, 1));
            let kernel = shifted.nullspace();
            if kernel.is_empty() {
                continue;
            }
            let span = OperatorSpan::from_elements(
                kernel.into_iter().enumerate().map(|(t, x)| (format!("w{k}#{t}"), self.to_operator(&CoordVec(x)))),
            );
            out.insert(k, span);
        }
        Ok(out)
    }

    /// Closure computed entirely in quadratic coordinates, mapped back to
    /// operators.
    pub fn closure_in_coords(
        &self,
        generators: &[(String, Operator)],
        max_rounds: usize,
    ) -> Result<Span<CoordVec>, LieError> {
        let coords = generators
            .iter()
            .map(|(name, g)| {
                coords_in(&self.basis, g, || name.clone()).map(|c| (name.clone(), CoordVec(c)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        closure_with(&coords, |a, b| self.bracket_coords(a, b), max_rounds)
    }
}

fn coords_in(span: &OperatorSpan, t: &Operator, name: impl FnOnce() -> String) -> Result<Vec<Q>, LieError> {
    match span.in_span(t) {
        Membership::Member(c) => Ok(c),
        Membership::NotMember(_) => Err(LieError::NotQuadratic(name())),
    }
}

/// The 36 bracket monomials in the `w`-basis operators that span the
/// weight-zero part of `C²`, in a fixed order grouped as: `[E_w,E_w̄]`
/// off-diagonal, `[I_w,I_w̄]` off-diagonal, the diagonal versions of both,
/// `[E_w,I_w]` off-diagonal, `[E_w̄,I_w̄]` off-diagonal, and the six diagonal
/// `[E,I]` terms.
pub fn j_invariant_monomials() -> Vec<(String, Operator)> {
    let w: Vec<WOps> = (0..3).map(|j| build_w_ops(j).expect("index in range")).collect();
    let mut out = Vec::with_capacity(36);
    let offdiag = [(0, 1), (0, 2), (1, 2), (1, 0), (2, 0), (2, 1)];
    let mut push = |label: String, a: &Operator, b: &Operator| out.push((label, a.bracket(b)));
    for &(a, b) in &offdiag {
        push(format!("[Ew{a},Ewbar{b}]"), &w[a].e_w, &w[b].e_wbar);
    }
    for &(a, b) in &offdiag {
        push(format!("[Iw{a},Iwbar{b}]"), &w[a].i_w, &w[b].i_wbar);
    }
    for a in 0..3 {
        push(format!("[Ew{a},Ewbar{a}]"), &w[a].e_w, &w[a].e_wbar);
    }
    for a in 0..3 {
        push(format!("[Iw{a},Iwbar{a}]"), &w[a].i_w, &w[a].i_wbar);
    }
    for &(a, b) in &offdiag {
        push(format!("[Ew{a},Iw{b}]"), &w[a].e_w, &w[b].i_w);
    }
    for &(a, b) in &offdiag {
        push(format!("[Ewbar{a},Iwbar{b}]"), &w[a].e_wbar, &w[b].i_wbar);
    }
    for a in 0..3 {
        push(format!("[Ew{a},Iw{a}]"), &w[a].e_w, &w[a].i_w);
    }
    for a in 0..3 {
        push(format!("[Ewbar{a},Iwbar{a}]"), &w[a].e_wbar, &w[a].i_wbar);
    }
    out
}

/// The 36 monomials as an independent span; fails with `DependentSet` on a
/// linear dependency.
pub fn j_invariant_quadratics() -> Result<OperatorSpan, LieError> {
    OperatorSpan::independent(j_invariant_monomials())
}
