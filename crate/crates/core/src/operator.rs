//! Exact linear endomorphisms of the 64-dimensional exterior algebra.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exterior::{apply_e, apply_i, BasisMask, Generator, Multivector, DIM};
use crate::linalg::SparseVec;
use crate::scalars::Q;

/// A 64×64 matrix over `Q(i)`, stored column by column: column `c` is the
/// image of the basis monomial with mask `c`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Operator {
    cols: Vec<Multivector>,
}

impl Operator {
    pub fn zero() -> Self {
        Self {
            cols: vec![Multivector::zero(); DIM],
        }
    }

    pub fn identity() -> Self {
        Self::from_fn(|m| Multivector::monomial(m, Q::one()))
    }

    /// Builds the operator whose value on each basis monomial is `f(m)`.
    pub fn from_fn(f: impl Fn(BasisMask) -> Multivector) -> Self {
        Self {
            cols: BasisMask::all().map(f).collect(),
        }
    }

    /// Wedge multiplication by `form` on the left.
    pub fn wedge_by(form: &Multivector) -> Self {
        Self::from_fn(|m| form.wedge(&Multivector::monomial(m, Q::one())))
    }

    /// `E_g`.
    pub fn wedge_generator(g: Generator) -> Self {
        Self::from_fn(|m| apply_e(g, &Multivector::monomial(m, Q::one())))
    }

    /// `I_g`.
    pub fn contract_generator(g: Generator) -> Self {
        Self::from_fn(|m| apply_i(g, &Multivector::monomial(m, Q::one())))
    }

    pub fn column(&self, m: BasisMask) -> &Multivector {
        &self.cols[m.index()]
    }

    pub fn entry(&self, row: BasisMask, col: BasisMask) -> Q {
        self.cols[col.index()].coeff(row)
    }

    /// Nonzero entries as `(row, col, value)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (BasisMask, BasisMask, &Q)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.terms().map(move |(r, x)| (r, BasisMask::new(c as u8), x)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Multivector::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Multivector::is_zero)
    }

    pub fn apply(&self, phi: &Multivector) -> Multivector {
        let mut out = Multivector::zero();
        for (m, c) in phi.terms() {
            for (r, x) in self.cols[m.index()].terms() {
                out.add_term(r, x * c);
            }
        }
        out
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Operator) -> Operator {
        Operator {
            cols: rhs.cols.iter().map(|col| self.apply(col)).collect(),
        }
    }

    /// `[self, rhs] = self∘rhs − rhs∘self`.
    pub fn bracket(&self, rhs: &Operator) -> Operator {
        &self.compose(rhs) - &rhs.compose(self)
    }

    /// `self∘rhs + rhs∘self`.
    pub fn anticommutator(&self, rhs: &Operator) -> Operator {
        &self.compose(rhs) + &rhs.compose(self)
    }

    /// Conjugate transpose; the Hermitian adjoint since monomials are
    /// orthonormal.
    pub fn adjoint(&self) -> Operator {
        let mut out = Operator::zero();
        for (r, c, x) in self.entries() {
            out.cols[r.index()].add_term(c, x.conjugate());
        }
        out
    }

    pub fn trace(&self) -> Q {
        BasisMask::all().map(|m| self.cols[m.index()].coeff(m)).sum()
    }

    pub fn scale(&self, c: &Q) -> Operator {
        Operator {
            cols: self.cols.iter().map(|col| col.scale(c)).collect(),
        }
    }

    /// `Σ c_k · ops_k`.
    pub fn linear_combination<'a>(terms: impl IntoIterator<Item = (Q, &'a Operator)>) -> Operator {
        let mut out = Operator::zero();
        for (c, op) in terms {
            if c.is_zero() {
                continue;
            }
            for (col, src) in out.cols.iter_mut().zip(&op.cols) {
                for (r, x) in src.terms() {
                    col.add_term(r, x * &c);
                }
            }
        }
        out
    }

    /// Row-major vectorization: coordinate `row * 64 + col`.
    pub fn to_sparse(&self) -> SparseVec {
        self.entries().map(|(r, c, x)| (r.index() * DIM + c.index(), x.clone())).collect()
    }

    pub fn from_sparse(v: &SparseVec) -> Operator {
        let mut out = Operator::zero();
        for (&k, x) in v {
            out.cols[k % DIM].add_term(BasisMask::new((k / DIM) as u8), x.clone());
        }
        out
    }

    /// Returns `λ` when `self = λ·other` exactly (`other` nonzero).
    pub fn ratio_to(&self, other: &Operator) -> Option<Q> {
        let (r, c, x) = other.entries().next()?;
        let lambda = self.entry(r, c).checked_div(x).ok()?;
        (&other.scale(&lambda) == self).then_some(lambda)
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        Operator::linear_combination([(Q::one(), self), (Q::one(), rhs)])
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        Operator::linear_combination([(Q::one(), self), (-Q::one(), rhs)])
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale(&-Q::one())
    }
}

impl Mul<&Operator> for &Q {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        rhs.scale(self)
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (r, c, x) in self.entries() {
            m.entry(&format_args!("({r}, {c})"), x);
        }
        m.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Operator {
        Operator::wedge_generator(s.parse().unwrap())
    }

    fn i(s: &str) -> Operator {
        Operator::contract_generator(s.parse().unwrap())
    }

    #[test]
    fn identity_trace() {
        assert_eq!(Operator::identity().trace(), Q::from(64));
        assert_eq!(Operator::zero().trace(), Q::zero());
    }

    #[test]
    fn bracket_self_vanishes() {
        let a = &e("v10") + &i("v21");
        assert!(a.bracket(&a).is_zero());
    }

    #[test]
    fn clifford_pair() {
        assert_eq!(e("v10").anticommutator(&i("v10")), Operator::identity());
        assert_eq!(e("v10").adjoint(), i("v10"));
    }

    #[test]
    fn adjoint_reverses_order() {
        let a = &e("v10").compose(&i("v21")) + &e("v12").scale(&Q::i());
        let b = &i("v11").compose(&e("v22")) - &e("v20").scale(&Q::imag_frac(1, 3));
        assert_eq!(a.compose(&b).adjoint(), b.adjoint().compose(&a.adjoint()));
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn sparse_round_trip() {
        let a = &e("v10").compose(&i("v21")) + &e("v12").scale(&Q::i());
        assert_eq!(Operator::from_sparse(&a.to_sparse()), a);
    }

    #[test]
    fn ratio() {
        let a = e("v11");
        assert_eq!(a.scale(&Q::imag_frac(-3, 2)).ratio_to(&a), Some(Q::imag_frac(-3, 2)));
        assert_eq!(i("v11").ratio_to(&a), None);
    }
}
