//! Contractibility certificates for compact connected 2-complexes.
//!
//! A complex is reported contractible only when its reduced homology
//! vanishes and π₁ is certified trivial, either by collapsing to a point or
//! by a Tietze sequence emptying its presentation.

use std::sync::Arc;

use serde::Serialize;

use crate::collapse::{collapse_maximally, CollapseStep};
use crate::complex::{euler_characteristic, TwoComplex};
use crate::homology::{homology, HomologyProfile};
use crate::presentation::{presentation, simplify, TietzeMove};

/// Default number of Tietze moves before giving up.
pub const DEFAULT_BUDGET: usize = 10_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "COMPLEXFORGE_BUDGET";

pub fn budget_from_env() -> usize {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "steps", rename_all = "snake_case")]
pub enum Certificate {
    Collapse(Vec<CollapseStep>),
    Tietze(Vec<TietzeMove>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    EulerCharacteristic { chi: i64 },
    Homology { profile: HomologyProfile },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ContractibilityStatus {
    Contractible { certificate: Certificate },
    NotContractible { obstruction: Obstruction },
    Unknown { reason: String },
}

impl ContractibilityStatus {
    pub fn label(&self) -> &'static str {
        match self {
            ContractibilityStatus::Contractible { .. } => "CONTRACTIBLE",
            ContractibilityStatus::NotContractible { .. } => "NOT_CONTRACTIBLE",
            ContractibilityStatus::Unknown { .. } => "UNKNOWN",
        }
    }

    pub fn is_contractible(&self) -> bool {
        matches!(self, ContractibilityStatus::Contractible { .. })
    }

    pub fn is_not_contractible(&self) -> bool {
        matches!(self, ContractibilityStatus::NotContractible { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, ContractibilityStatus::Unknown { .. })
    }
}

pub fn contractibility_status(x: &Arc<TwoComplex>, budget: usize) -> ContractibilityStatus {
    let h = homology(x);
    contractibility_with_homology(x, &h, budget)
}

/// Same as [`contractibility_status`] with homology already computed.
pub fn contractibility_with_homology(
    x: &Arc<TwoComplex>,
    h: &HomologyProfile,
    budget: usize,
) -> ContractibilityStatus {
    let chi = euler_characteristic(x);
    if chi != 1 {
        return ContractibilityStatus::NotContractible { obstruction: Obstruction::EulerCharacteristic { chi } };
    }
    if !h.is_trivial() {
        return ContractibilityStatus::NotContractible {
            obstruction: Obstruction::Homology { profile: h.clone() },
        };
    }
    let collapsed = collapse_maximally(x);
    if collapsed.complex.num_cells() == 1 {
        return ContractibilityStatus::Contractible { certificate: Certificate::Collapse(collapsed.log) };
    }
    let p = presentation(x).expect("trivial H0 means connected and nonempty");
    let outcome = simplify(&p, budget);
    if outcome.is_trivial() {
        return ContractibilityStatus::Contractible { certificate: Certificate::Tietze(outcome.moves) };
    }
    let reason = if outcome.exhausted {
        format!("Tietze budget of {budget} moves exhausted")
    } else {
        format!(
            "presentation stuck with {} generators and {} relators",
            outcome.remaining.len(),
            outcome.relators.len()
        )
    };
    ContractibilityStatus::Unknown { reason }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexBuilder;

    fn one_vertex(words: &[&[(usize, i64)]], gens: usize) -> Arc<TwoComplex> {
        let mut b = ComplexBuilder::new();
        let v = b.vertex("v");
        for g in 0..gens {
            b.edge(format!("g{g}"), v, v);
        }
        for (i, w) in words.iter().enumerate() {
            b.disc(format!("D{i}"), w);
        }
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn rp2_is_not_contractible() {
        let x = one_vertex(&[&[(0, 1), (0, 1)]], 1);
        let s = contractibility_status(&x, 100);
        assert!(matches!(
            s,
            ContractibilityStatus::NotContractible { obstruction: Obstruction::Homology { .. } }
        ));
    }

    #[test]
    fn torus_fails_on_euler_characteristic() {
        let x = one_vertex(&[&[(0, 1), (1, 1), (0, -1), (1, -1)]], 2);
        assert_eq!(
            contractibility_status(&x, 100),
            ContractibilityStatus::NotContractible { obstruction: Obstruction::EulerCharacteristic { chi: 0 } }
        );
    }

    #[test]
    fn dunce_hat_needs_tietze() {
        let x = one_vertex(&[&[(0, 1), (0, 1), (0, -1)]], 1);
        let s = contractibility_status(&x, 100);
        assert!(matches!(s, ContractibilityStatus::Contractible { certificate: Certificate::Tietze(_) }));
    }

    #[test]
    fn cone_collapses() {
        let x = one_vertex(&[&[(0, 1)]], 1);
        let s = contractibility_status(&x, 100);
        assert!(matches!(s, ContractibilityStatus::Contractible { certificate: Certificate::Collapse(_) }));
    }

    #[test]
    fn zero_budget_is_unknown() {
        let x = one_vertex(&[&[(0, 1), (0, 1), (0, -1)]], 1);
        assert!(contractibility_status(&x, 0).is_unknown());
    }
}
