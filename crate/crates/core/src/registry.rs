//! Named operators and lazily computed shared structures.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::canon_ops::{self, build_j, build_w_ops, CanonError};
use crate::cartan::{self, CartanError, SerreSystem};
use crate::lie::{clifford_generators, LieError, OperatorSpan, QuadraticSpace, DEFAULT_MAX_ROUNDS};
use crate::operator::Operator;
use crate::reptheory::{v_subspace, RepError, SubrepV};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Debug)]
struct Registry {
    order: Vec<String>,
    ops: BTreeMap<String, Operator>,
}

impl Registry {
    fn build() -> Result<Self, AlgebraError> {
        let mut items: Vec<(String, Operator)> = vec![("Id".into(), Operator::identity())];
        items.extend(clifford_generators());
        items.extend(canon_ops::generators());
        items.push(("J".into(), build_j()?));
        for j in 0..3 {
            let w = build_w_ops(j)?;
            items.push((format!("Ew{j}"), w.e_w));
            items.push((format!("Ewbar{j}"), w.e_wbar));
            items.push((format!("Iw{j}"), w.i_w));
            items.push((format!("Iwbar{j}"), w.i_wbar));
        }
        for j in 0..3 {
            items.push((format!("H{j}"), cartan::build_h(j)?));
        }
        for j in 0..3 {
            items.push((format!("S{j}"), cartan::build_s(j)?));
        }
        for i in 1..=2 {
            for j in 0..3 {
                items.push((format!("L{i}{j}"), cartan::build_lij(i, j)?));
            }
        }
        for i in 1..=2 {
            for j in 0..3 {
                items.push((format!("Lam{i}{j}"), cartan::build_lambdaij(i, j)?));
            }
        }
        let serre = cartan::build_serre()?;
        for (prefix, ops) in [("e", serre.e), ("f", serre.f), ("h", serre.h)] {
            for (k, op) in ops.into_iter().enumerate() {
                items.push((format!("{prefix}{}", k + 1), op));
            }
        }
        let order = items.iter().map(|(n, _)| n.clone()).collect();
        Ok(Self {
            order,
            ops: items.into_iter().collect(),
        })
    }
}

/// Shared computation context: the operator registry plus cached closure,
/// quadratic space and `V`. Everything is built on first use.
#[derive(Debug)]
pub struct Algebra {
    max_rounds: usize,
    registry: OnceLock<Result<Registry, AlgebraError>>,
    closure: OnceLock<Result<OperatorSpan, AlgebraError>>,
    quadratic: OnceLock<Result<QuadraticSpace, AlgebraError>>,
    v: OnceLock<Result<SubrepV, AlgebraError>>,
}

impl Default for Algebra {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_ROUNDS)
    }
}

impl Algebra {
    pub fn new(max_rounds: usize) -> Self {
        Self {
            max_rounds,
            registry: OnceLock::new(),
            closure: OnceLock::new(),
            quadratic: OnceLock::new(),
            v: OnceLock::new(),
        }
    }

    /// Process-wide instance with the default round cap.
    pub fn global() -> &'static Algebra {
        static CELL: OnceLock<Algebra> = OnceLock::new();
        CELL.get_or_init(Algebra::default)
    }

    pub fn max_rounds(&self) -> usize {
        self.max_rounds
    }

    fn registry(&self) -> Result<&Registry, AlgebraError> {
        self.registry.get_or_init(Registry::build).as_ref().map_err(Clone::clone)
    }

    /// Registry names in their canonical order.
    pub fn names(&self) -> Result<&[String], AlgebraError> {
        Ok(&self.registry()?.order)
    }

    pub fn get(&self, name: &str) -> Result<&Operator, AlgebraError> {
        self.registry()?
            .ops
            .get(name)
            .ok_or_else(|| AlgebraError::UnknownOperator(name.to_string()))
    }

    /// Named copies of the given registry entries.
    pub fn named(&self, names: &[&str]) -> Result<Vec<(String, Operator)>, AlgebraError> {
        names.iter().map(|n| Ok((n.to_string(), self.get(n)?.clone()))).collect()
    }

    pub fn j(&self) -> Result<&Operator, AlgebraError> {
        self.get("J")
    }

    /// `L_j, Λ_j, V_j, A_j` with names.
    pub fn generators(&self) -> Result<Vec<(String, Operator)>, AlgebraError> {
        self.named(&["L0", "L1", "L2", "Lam0", "Lam1", "Lam2", "V0", "V1", "V2", "A0", "A1", "A2"])
    }

    /// Lie closure of the twelve generators.
    pub fn closure(&self) -> Result<&OperatorSpan, AlgebraError> {
        self.closure
            .get_or_init(|| Ok(OperatorSpan::closure(&self.generators()?, self.max_rounds)?))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn quadratic(&self) -> Result<&QuadraticSpace, AlgebraError> {
        self.quadratic
            .get_or_init(|| Ok(QuadraticSpace::new()?))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn v(&self) -> Result<&SubrepV, AlgebraError> {
        self.v
            .get_or_init(|| Ok(v_subspace(self.j()?)?))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn serre(&self) -> Result<SerreSystem, AlgebraError> {
        let pick = |p: &str| (1..=5).map(|k| self.get(&format!("{p}{k}")).cloned()).collect::<Result<Vec<_>, _>>();
        Ok(SerreSystem {
            e: pick("e")?,
            f: pick("f")?,
            h: pick("h")?,
            cartan_matrix: cartan::cartan_matrix_a5(),
        })
    }
}
