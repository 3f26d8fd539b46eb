//! The exterior algebra on the six coframe generators `v_ij`, `i ∈ {1,2}`,
//! `j ∈ {0,1,2}`.
//!
//! Generators are totally ordered `v10 < v20 < v11 < v21 < v12 < v22`
//! (column-major), and a basis monomial is the bit mask of the generators it
//! contains. Signs of products are obtained by inversion counting.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::Q;

/// Dimension of the full exterior algebra.
pub const DIM: usize = 64;
/// Number of coframe generators.
pub const RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("generator index out of range: v{0}{1}")]
    BadGenerator(u8, u8),
    #[error("cannot parse monomial {0:?}")]
    ParseMonomial(String),
    #[error("repeated generator in monomial {0:?}")]
    RepeatedGenerator(String),
}

/// The coframe element `v_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    i: u8,
    j: u8,
}

impl Generator {
    pub fn new(i: u8, j: u8) -> Result<Self, ExteriorError> {
        if !(1..=2).contains(&i) || j > 2 {
            return Err(ExteriorError::BadGenerator(i, j));
        }
        Ok(Self { i, j })
    }

    /// Generator at position `bit` of the global order.
    pub fn from_bit(bit: u8) -> Self {
        assert!((bit as usize) < RANK);
        Self { i: bit % 2 + 1, j: bit / 2 }
    }

    /// All six generators in the global order.
    pub fn all() -> impl Iterator<Item = Generator> {
        (0..RANK as u8).map(Self::from_bit)
    }

    pub fn i(self) -> u8 {
        self.i
    }

    pub fn j(self) -> u8 {
        self.j
    }

    pub fn bit(self) -> u8 {
        2 * self.j + (self.i - 1)
    }

    pub fn mask(self) -> BasisMask {
        BasisMask(1 << self.bit())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}{}", self.i, self.j)
    }
}

impl FromStr for Generator {
    type Err = ExteriorError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let b = s.as_bytes();
        if b.len() != 3 || b[0] != b'v' || !b[1].is_ascii_digit() || !b[2].is_ascii_digit() {
            return Err(ExteriorError::ParseMonomial(s.to_string()));
        }
        Generator::new(b[1] - b'0', b[2] - b'0')
    }
}

/// A basis monomial of `Λ*`, as the set of generators it contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct BasisMask(u8);

impl BasisMask {
    pub const ONE: BasisMask = BasisMask(0);

    pub fn new(mask: u8) -> Self {
        assert!((mask as usize) < DIM, "mask out of range");
        Self(mask)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, g: Generator) -> bool {
        self.0 & (1 << g.bit()) != 0
    }

    pub fn generators(self) -> impl Iterator<Item = Generator> {
        let m = self.0;
        (0..RANK as u8).filter(move |b| m & (1 << b) != 0).map(Generator::from_bit)
    }

    pub fn all() -> impl Iterator<Item = BasisMask> {
        (0..DIM as u8).map(BasisMask)
    }

    pub fn of_degree(k: u32) -> impl Iterator<Item = BasisMask> {
        Self::all().filter(move |m| m.degree() == k)
    }
}

impl fmt::Display for BasisMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.generators().map(|g| g.to_string()).collect();
        f.write_str(&parts.join("^"))
    }
}

impl FromStr for BasisMask {
    type Err = ExteriorError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(BasisMask::ONE);
        }
        let mut mask = 0u8;
        let mut last: Option<u8> = None;
        for part in s.split('^') {
            let g: Generator = part.parse()?;
            if mask & (1 << g.bit()) != 0 {
                return Err(ExteriorError::RepeatedGenerator(s.to_string()));
            }
            if last.is_some_and(|b| b > g.bit()) {
                return Err(ExteriorError::ParseMonomial(s.to_string()));
            }
            last = Some(g.bit());
            mask |= 1 << g.bit();
        }
        Ok(BasisMask(mask))
    }
}

/// Product of two basis monomials: `(sign, a ∪ b)`, with sign 0 when they
/// share a generator.
pub fn wedge_monomials(a: BasisMask, b: BasisMask) -> (i8, BasisMask) {
    if a.0 & b.0 != 0 {
        return (0, BasisMask(0));
    }
    // Each generator y of b must move past every generator of a above it.
    let mut inversions = 0;
    let mut rest = b.0;
    while rest != 0 {
        let y = rest.trailing_zeros();
        inversions += (a.0 >> (y + 1)).count_ones();
        rest &= rest - 1;
    }
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    (sign, BasisMask(a.0 | b.0))
}

/// Interior product of `∂/∂g` with a basis monomial.
pub fn contract_monomial(g: Generator, a: BasisMask) -> (i8, BasisMask) {
    let bit = g.bit();
    if a.0 & (1 << bit) == 0 {
        return (0, BasisMask(0));
    }
    let below = (a.0 & ((1 << bit) - 1)).count_ones();
    let sign = if below % 2 == 0 { 1 } else { -1 };
    (sign, BasisMask(a.0 & !(1 << bit)))
}

/// Multidegree: per-column generator counts `(d0, d1, d2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct MDeg(pub [i32; 3]);

impl MDeg {
    pub fn new(d0: i32, d1: i32, d2: i32) -> Self {
        Self([d0, d1, d2])
    }
}

impl Add for MDeg {
    type Output = MDeg;
    fn add(self, o: MDeg) -> MDeg {
        MDeg([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for MDeg {
    type Output = MDeg;
    fn sub(self, o: MDeg) -> MDeg {
        self + (-o)
    }
}

impl Neg for MDeg {
    type Output = MDeg;
    fn neg(self) -> MDeg {
        MDeg([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl fmt::Display for MDeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

pub fn mdeg_of_monomial(a: BasisMask) -> MDeg {
    let col = |j: u8| ((a.0 >> (2 * j)) & 0b11).count_ones() as i32;
    MDeg([col(0), col(1), col(2)])
}

/// An element of `Λ*T*_C` as a sparse map from monomials to coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Multivector {
    coeffs: BTreeMap<BasisMask, Q>,
}

impl Multivector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BasisMask::ONE, Q::one())
    }

    pub fn monomial(m: BasisMask, c: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(g.mask(), Q::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisMask, Q)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: BasisMask, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: BasisMask) -> Q {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisMask, &Q)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let (s, m) = wedge_monomials(*a, *b);
                if s != 0 {
                    let p = x * y;
                    out.add_term(m, if s > 0 { p } else { -p });
                }
            }
        }
        out
    }

    /// Interior product `∂/∂g ⇀ self`.
    pub fn contract(&self, g: Generator) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.coeffs {
            let (s, m) = contract_monomial(g, *a);
            if s != 0 {
                out.add_term(m, if s > 0 { x.clone() } else { -x.clone() });
            }
        }
        out
    }

    /// Hermitian inner product, linear in the first slot, with the monomial
    /// basis orthonormal.
    pub fn inner(&self, other: &Self) -> Q {
        self.coeffs
            .iter()
            .filter_map(|(m, x)| other.coeffs.get(m).map(|y| x * &y.conjugate()))
            .sum()
    }

    /// Degree when homogeneous; `None` for zero or mixed degree.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.coeffs.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }
}

/// `E_g(φ) = v_g ∧ φ`.
pub fn apply_e(g: Generator, phi: &Multivector) -> Multivector {
    Multivector::generator(g).wedge(phi)
}

/// `I_g(φ) = ∂/∂v_g ⇀ φ`.
pub fn apply_i(g: Generator, phi: &Multivector) -> Multivector {
    phi.contract(g)
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        for (m, c) in &rhs.coeffs {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        for (m, c) in &rhs.coeffs {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
