//! The canonical forms and operators of the rank-2 structure: `ω_1, ω_2, ω_D`,
//! the Lefschetz-type operators `L_j`, the volume operators `V_j`, their
//! adjoints `Λ_j`, `A_j`, the rotation generator `J`, the complexified
//! wedge/contraction operators in the `w`-basis, and the `S_3` action.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use thiserror::Error;

use crate::exterior::{BasisMask, Generator, Multivector};
use crate::operator::Operator;
use crate::scalars::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("J built as a derivation differs from the E/I formula at {0} entries")]
    ConstructionMismatch(usize),
    #[error("index {0} out of range (expected 0, 1 or 2)")]
    BadIndex(usize),
    #[error("not a permutation of {{0,1,2}}: {0:?}")]
    BadPermutation([u8; 3]),
}

fn gen(i: u8, j: usize) -> Generator {
    Generator::new(i, j as u8).expect("valid generator")
}

fn v(i: u8, j: usize) -> Multivector {
    Multivector::generator(gen(i, j))
}

fn check_index(j: usize) -> Result<(), CanonError> {
    if j > 2 {
        return Err(CanonError::BadIndex(j));
    }
    Ok(())
}

/// Named canonical forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalForm {
    Omega1,
    Omega2,
    OmegaD,
    W(usize),
    WBar(usize),
    Vol(usize),
}

impl CanonicalForm {
    pub fn value(self) -> Multivector {
        let pair = |a: usize, b: usize| &v(1, a).wedge(&v(1, b)) + &v(2, a).wedge(&v(2, b));
        match self {
            CanonicalForm::Omega1 => pair(0, 1),
            CanonicalForm::Omega2 => pair(0, 2),
            CanonicalForm::OmegaD => pair(1, 2),
            CanonicalForm::W(j) => &v(1, j) + &v(2, j).scale(&Q::i()),
            CanonicalForm::WBar(j) => &v(1, j) - &v(2, j).scale(&Q::i()),
            CanonicalForm::Vol(j) => v(1, j).wedge(&v(2, j)),
        }
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalForm::Omega1 => f.write_str("omega1"),
            CanonicalForm::Omega2 => f.write_str("omega2"),
            CanonicalForm::OmegaD => f.write_str("omegaD"),
            CanonicalForm::W(j) => write!(f, "w{j}"),
            CanonicalForm::WBar(j) => write!(f, "wbar{j}"),
            CanonicalForm::Vol(j) => write!(f, "vol{j}"),
        }
    }
}

pub fn w(j: usize) -> Multivector {
    CanonicalForm::W(j).value()
}

pub fn wbar(j: usize) -> Multivector {
    CanonicalForm::WBar(j).value()
}

/// `E_ij`.
pub fn e_op(i: u8, j: usize) -> Operator {
    Operator::wedge_generator(gen(i, j))
}

/// `I_ij`.
pub fn i_op(i: u8, j: usize) -> Operator {
    Operator::contract_generator(gen(i, j))
}

/// `L_0 = ω_D∧`, `L_1 = −ω_2∧`, `L_2 = ω_1∧`.
pub fn build_l(j: usize) -> Result<Operator, CanonError> {
    check_index(j)?;
    let form = match j {
        0 => CanonicalForm::OmegaD.value(),
        1 => -&CanonicalForm::Omega2.value(),
        _ => CanonicalForm::Omega1.value(),
    };
    Ok(Operator::wedge_by(&form))
}

/// `V_j = E_1j ∘ E_2j`, wedge with the volume form of `W_j`.
pub fn build_v(j: usize) -> Result<Operator, CanonError> {
    check_index(j)?;
    Ok(e_op(1, j).compose(&e_op(2, j)))
}

/// `(Λ_j, A_j) = (L_j*, V_j*)`.
pub fn adjoint_ops(j: usize) -> Result<(Operator, Operator), CanonError> {
    Ok((build_l(j)?.adjoint(), build_v(j)?.adjoint()))
}

fn rotate(g: Generator) -> Multivector {
    match g.i() {
        1 => Multivector::generator(gen(2, g.j() as usize)),
        _ => -&Multivector::generator(gen(1, g.j() as usize)),
    }
}

/// `J` extended from `J(v_1j) = v_2j`, `J(v_2j) = −v_1j` as a derivation.
pub fn j_by_derivation() -> Operator {
    Operator::from_fn(|m: BasisMask| {
        let gens: Vec<Generator> = m.generators().collect();
        let mut out = Multivector::zero();
        for t in 0..gens.len() {
            let term = gens.iter().enumerate().fold(Multivector::one(), |acc, (k, &g)| {
                let factor = if k == t { rotate(g) } else { Multivector::generator(g) };
                acc.wedge(&factor)
            });
            out = &out + &term;
        }
        out
    })
}

/// `J = Σ_j (E_2j I_1j − E_1j I_2j)`.
pub fn j_by_clifford() -> Operator {
    let terms: Vec<Operator> = (0..3)
        .map(|j| &e_op(2, j).compose(&i_op(1, j)) - &e_op(1, j).compose(&i_op(2, j)))
        .collect();
    Operator::linear_combination(terms.iter().map(|t| (Q::one(), t)))
}

/// Builds `J` both ways and insists they agree.
pub fn build_j() -> Result<Operator, CanonError> {
    let a = j_by_derivation();
    let b = j_by_clifford();
    if a != b {
        return Err(CanonError::ConstructionMismatch((&a - &b).nnz()));
    }
    Ok(a)
}

/// The complexified wedge/contraction operators attached to `w_j`, `w̄_j`.
#[derive(Debug, Clone)]
pub struct WOps {
    pub e_w: Operator,
    pub e_wbar: Operator,
    pub i_w: Operator,
    pub i_wbar: Operator,
}

/// `E_{w_j} = E_1j + iE_2j`, `E_{w̄_j} = E_1j − iE_2j`,
/// `I_{w_j} = I_1j − iI_2j`, `I_{w̄_j} = I_1j + iI_2j`.
pub fn build_w_ops(j: usize) -> Result<WOps, CanonError> {
    check_index(j)?;
    let i = Q::i();
    let combo = |a: &Operator, b: &Operator, c: &Q| Operator::linear_combination([(Q::one(), a), (c.clone(), b)]);
    let (e1, e2, i1, i2) = (e_op(1, j), e_op(2, j), i_op(1, j), i_op(2, j));
    Ok(WOps {
        e_w: combo(&e1, &e2, &i),
        e_wbar: combo(&e1, &e2, &-i.clone()),
        i_w: combo(&i1, &i2, &-i.clone()),
        i_wbar: combo(&i1, &i2, &i),
    })
}

/// A permutation of the column indices `{0,1,2}`, acting on generators by
/// `σ(v_ij) = v_{iσ(j)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PermutationS3([u8; 3]);

impl PermutationS3 {
    pub fn new(images: [u8; 3]) -> Result<Self, CanonError> {
        let mut seen = [false; 3];
        for &x in &images {
            if x > 2 || seen[x as usize] {
                return Err(CanonError::BadPermutation(images));
            }
            seen[x as usize] = true;
        }
        Ok(Self(images))
    }

    pub fn identity() -> Self {
        Self([0, 1, 2])
    }

    /// All six elements, identity first.
    pub fn all() -> Vec<Self> {
        [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]].into_iter().map(Self).collect()
    }

    pub fn apply(self, j: usize) -> usize {
        self.0[j] as usize
    }

    pub fn sign(self) -> i64 {
        let inversions = (0..3).flat_map(|a| (a + 1..3).map(move |b| (a, b))).filter(|&(a, b)| self.0[a] > self.0[b]).count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `(self ∘ other)(j) = self(other(j))`.
    pub fn compose(self, other: Self) -> Self {
        Self([self.0[other.0[0] as usize], self.0[other.0[1] as usize], self.0[other.0[2] as usize]])
    }

    pub fn inverse(self) -> Self {
        let mut inv = [0u8; 3];
        for (j, &x) in self.0.iter().enumerate() {
            inv[x as usize] = j as u8;
        }
        Self(inv)
    }

    /// The induced (signed permutation) operator on `Λ*`.
    pub fn operator(self) -> Operator {
        Operator::from_fn(|m| {
            m.generators().fold(Multivector::one(), |acc, g| {
                acc.wedge(&Multivector::generator(gen(g.i(), self.apply(g.j() as usize))))
            })
        })
    }
}

impl fmt::Display for PermutationS3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} {}]", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for PermutationS3 {
    type Err = CanonError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits: Vec<u8> = s.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
        let images: [u8; 3] = digits.try_into().map_err(|_| CanonError::BadPermutation([9, 9, 9]))?;
        Self::new(images)
    }
}

/// `σ(T) = σ ∘ T ∘ σ⁻¹`.
pub fn s3_conjugate(sigma: PermutationS3, t: &Operator) -> Operator {
    sigma.operator().compose(t).compose(&sigma.inverse().operator())
}

/// The twelve generators `L_j, Λ_j, V_j, A_j` in registry order, with names.
pub fn generators() -> Vec<(String, Operator)> {
    let mut out = Vec::with_capacity(12);
    for j in 0..3 {
        out.push((format!("L{j}"), build_l(j).expect("index in range")));
    }
    for j in 0..3 {
        out.push((format!("Lam{j}"), build_l(j).expect("index in range").adjoint()));
    }
    for j in 0..3 {
        out.push((format!("V{j}"), build_v(j).expect("index in range")));
    }
    for j in 0..3 {
        out.push((format!("A{j}"), build_v(j).expect("index in range").adjoint()));
    }
    out
}

/// Whether `T` restricted to 1-forms squares to `−Id` there.
pub fn squares_to_minus_one_on_covectors(t: &Operator) -> bool {
    Generator::all().all(|g| {
        let x = Multivector::generator(g);
        t.apply(&t.apply(&x)) == -&x
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::MDeg;

    fn one() -> Multivector {
        Multivector::one()
    }

    #[test]
    fn forms() {
        assert_eq!(CanonicalForm::Omega1.value().to_string(), "(1)*v10^v11 + (1)*v20^v21");
        assert_eq!(CanonicalForm::OmegaD.value().len(), 2);
        let expected = &v(1, 1).wedge(&v(1, 2)) + &v(2, 1).wedge(&v(2, 2));
        assert_eq!(CanonicalForm::OmegaD.value(), expected);
        // ω_D = ½(w1∧w̄2 − w2∧w̄1)
        let alt = (&w(1).wedge(&wbar(2)) - &w(2).wedge(&wbar(1))).scale(&Q::frac(1, 2));
        assert_eq!(alt, expected);
    }

    #[test]
    fn l_examples() {
        assert_eq!(build_l(0).unwrap().apply(&one()), CanonicalForm::OmegaD.value());
        assert_eq!(build_l(1).unwrap().apply(&one()), -&CanonicalForm::Omega2.value());
        assert!(build_l(3).is_err());
    }

    #[test]
    fn v_examples() {
        let v0 = build_v(0).unwrap();
        assert_eq!(v0.apply(&one()), v(1, 0).wedge(&v(2, 0)));
        let alt = Operator::wedge_by(&w(0).wedge(&wbar(0))).scale(&Q::imag_frac(1, 2));
        assert_eq!(v0, alt);
        assert!(build_v(1).unwrap().apply(&v(1, 1)).is_zero());
        let mdeg = crate::exterior::mdeg_of_monomial(Generator::new(1, 2).unwrap().mask());
        assert_eq!(mdeg, MDeg::new(0, 0, 1));
    }

    #[test]
    fn adjoint_examples() {
        let (lam0, a0) = adjoint_ops(0).unwrap();
        let omega_d = CanonicalForm::OmegaD.value();
        // oracle: ⟨Λ0 ω_D, 1⟩ = ⟨ω_D, L0 1⟩ = ⟨ω_D, ω_D⟩
        let expected = omega_d.inner(&omega_d);
        assert_eq!(expected, Q::from(2));
        assert_eq!(lam0.apply(&omega_d), Multivector::monomial(BasisMask::ONE, expected));
        assert_eq!(a0.apply(&v(1, 0).wedge(&v(2, 0))), one());
        for j in 0..3 {
            let (lam, _) = adjoint_ops(j).unwrap();
            for m in BasisMask::all().filter(|m| m.degree() <= 1) {
                assert!(lam.apply(&Multivector::monomial(m, Q::one())).is_zero());
            }
        }
    }

    #[test]
    fn j_examples() {
        let j = build_j().unwrap();
        assert_eq!(j.apply(&v(1, 0)), v(2, 0));
        assert_eq!(j.apply(&w(0)), w(0).scale(&-Q::i()));
        assert!(j.apply(&CanonicalForm::OmegaD.value()).is_zero());
        assert_eq!(j.adjoint(), -&j);
        assert!(squares_to_minus_one_on_covectors(&j));
    }

    #[test]
    fn w_ops() {
        let j = build_j().unwrap();
        let ops = build_w_ops(0).unwrap();
        assert_eq!(j.bracket(&ops.e_w), ops.e_w.scale(&-Q::i()));
        assert_eq!(j.bracket(&ops.i_wbar), ops.i_wbar.scale(&-Q::i()));
        assert_eq!(ops.e_w.apply(&one()), w(0));
        assert_eq!(ops.e_w.adjoint(), ops.i_w);
    }

    #[test]
    fn s3_examples() {
        let swap = PermutationS3::new([1, 0, 2]).unwrap();
        assert_eq!(swap.sign(), -1);
        assert_eq!(s3_conjugate(swap, &build_v(0).unwrap()), build_v(1).unwrap());
        assert_eq!(s3_conjugate(swap, &build_l(0).unwrap()), -&build_l(1).unwrap());
        let j = build_j().unwrap();
        for sigma in PermutationS3::all() {
            assert_eq!(s3_conjugate(sigma, &j), j);
            assert_eq!(sigma.compose(sigma.inverse()), PermutationS3::identity());
        }
        assert!(PermutationS3::new([0, 0, 1]).is_err());
        assert_eq!("[1 2 0]".parse::<PermutationS3>().unwrap(), PermutationS3::new([1, 2, 0]).unwrap());
    }

    #[test]
    fn s3_commutes_with_adjoint() {
        let t = &build_l(1).unwrap().compose(&build_v(2).unwrap().adjoint()) + &e_op(2, 0).scale(&Q::i());
        for sigma in PermutationS3::all() {
            assert_eq!(s3_conjugate(sigma, &t.adjoint()), s3_conjugate(sigma, &t).adjoint());
        }
    }

    #[test]
    fn j_commutes_with_generators() {
        let j = build_j().unwrap();
        for (name, g) in generators() {
            assert!(j.bracket(&g).is_zero(), "{name}");
        }
    }
}
