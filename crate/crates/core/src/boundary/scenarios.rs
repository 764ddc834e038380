//! Registered `(n, p₁, p₂)` scenarios with their conventions and closed forms.

use super::{phi_total, BSide, BoundaryReport, EvalConfig, TracePath, Weighting};
use crate::clifford::{AlgebraSignature, TraceDim};
use crate::error::{Result, WresError};
use crate::symbolic::{q, GaussianRational, Quantity, Symbol, Unit};
use crate::symbols::BoundaryModel;

/// Closed forms a scenario is checked against.
#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub cases: Vec<(String, Quantity)>,
    pub total: Quantity,
}

/// A registered boundary computation.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub n: usize,
    pub powers: (usize, usize),
    pub model: BoundaryModel,
    pub config: EvalConfig,
    pub expected: Expected,
    /// Short description of the setting.
    pub source: &'static str,
}

/// Outcome of running a scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioCheck {
    pub name: String,
    pub computed: Quantity,
    pub expected: Quantity,
}

impl ScenarioCheck {
    pub fn pass(&self) -> bool {
        self.computed == self.expected
    }
}

impl Scenario {
    pub fn run(&self) -> Result<BoundaryReport> {
        phi_total(&self.model, self.powers, &self.config)
    }

    /// Runs the scenario and pairs every expected value with the computed one.
    pub fn check(&self) -> Result<(BoundaryReport, Vec<ScenarioCheck>)> {
        let report = self.run()?;
        let mut checks = Vec::new();
        for (name, want) in &self.expected.cases {
            let got = report.case(name).cloned().unwrap_or_else(Quantity::zero);
            checks.push(ScenarioCheck { name: name.clone(), computed: got, expected: want.clone() });
        }
        checks.push(ScenarioCheck { name: "total".into(), computed: report.total.clone(), expected: self.expected.total.clone() });
        Ok((report, checks))
    }

    pub fn with_trace_path(mut self, p: TracePath) -> Self {
        self.config.trace_path = p;
        self
    }
}

/// Tuples accepted by [`scenario`].
pub fn registered() -> [(usize, usize, usize); 6] {
    [(3, 1, 1), (4, 1, 1), (4, 2, 1), (5, 2, 1), (5, 2, 2), (6, 2, 2)]
}

fn local_unit(omega: u8, with_dim: bool) -> Quantity {
    let mut base = &(&(&Quantity::pi() * &Quantity::unit(Unit::Sym(Symbol::HPrime))) * &Quantity::omega(omega)) * &Quantity::unit(Unit::Dx);
    if with_dim {
        base = &base * &Quantity::unit(Unit::Sym(Symbol::TotalDim));
    }
    base
}

fn cases(unit: &Quantity, vals: &[(&str, i64, i64)]) -> Vec<(String, Quantity)> {
    vals.iter().map(|(n, a, b)| (n.to_string(), unit.scale_q(&q(*a, *b)))).collect()
}

/// Looks up a registered scenario; `sig` overrides the default signature
/// where the scenario allows it (only `n = 6`).
pub fn scenario(n: usize, p1: usize, p2: usize, sig: Option<AlgebraSignature>) -> Result<Scenario> {
    let unregistered = || WresError::UnregisteredScenario { dim: n, p1, p2 };
    let model_for = |default: AlgebraSignature| -> Result<BoundaryModel> {
        match sig {
            Some(s) if s != default => Err(WresError::InvalidInput(format!(
                "scenario ({n},{p1},{p2}) has fixed signature p={}, q={}",
                default.p, default.q
            ))),
            _ => BoundaryModel::new(default),
        }
    };
    let base = |m: &BoundaryModel| EvalConfig::for_model(m);
    let s = match (n, p1, p2) {
        (4, 1, 1) => {
            let model = model_for(AlgebraSignature::new(2, 2))?;
            let config = EvalConfig { cosphere: 3, ..base(&model) };
            let u = local_unit(3, false);
            Scenario {
                n,
                powers: (1, 1),
                config,
                expected: Expected {
                    cases: cases(&u, &[("aI", 0, 1), ("aII", -3, 4), ("aIII", 3, 4), ("b", 3, 4), ("c", -3, 4)]),
                    total: Quantity::zero(),
                },
                model,
                source: "four-dimensional foliation with two-dimensional leaves, D_F^-1 paired with D_F^-1",
            }
        }
        (6, 2, 2) => {
            let s = sig.unwrap_or(AlgebraSignature::new(2, 4));
            if s.n() != 6 {
                return Err(WresError::InvalidInput(format!("signature p={}, q={} does not have dimension 6", s.p, s.q)));
            }
            let model = BoundaryModel::new(s)?.with_trace_dim(TraceDim::Symbolic);
            let config = EvalConfig { b_side: BSide::Right, ..base(&model) };
            let u = local_unit(4, true);
            Scenario {
                n,
                powers: (2, 2),
                config,
                expected: Expected {
                    cases: cases(&u, &[("aI", 0, 1), ("aII", -5, 64), ("aIII", 5, 64), ("b", -15, 64), ("c", 15, 64)]),
                    total: Quantity::zero(),
                },
                model,
                source: "six-dimensional foliation, D_F^-2 paired with D_F^-2",
            }
        }
        (3, 1, 1) => {
            let model = model_for(AlgebraSignature::new(1, 2))?;
            let config = EvalConfig { weighting: Weighting::Unweighted, cosphere: 1, integrate_boundary: true, ..base(&model) };
            let total = (&(&Quantity::pi() * &Quantity::pi()) * &Quantity::unit(Unit::VolBoundary)).scale(&GaussianRational::new(q(0, 1), q(2, 1)));
            Scenario {
                n,
                powers: (1, 1),
                config,
                expected: Expected { cases: vec![], total },
                model,
                source: "three-dimensional foliation with one-dimensional leaves, bare trace integral",
            }
        }
        (5, 2, 2) => {
            let model = model_for(AlgebraSignature::new(2, 3))?.with_trace_dim(TraceDim::Symbolic);
            let config = EvalConfig { weighting: Weighting::Unweighted, cosphere: 3, integrate_boundary: true, ..base(&model) };
            let total = (&(&(&Quantity::pi() * &Quantity::unit(Unit::Sym(Symbol::TotalDim))) * &Quantity::omega(3)) * &Quantity::unit(Unit::VolBoundary))
                .scale(&GaussianRational::new(q(0, 1), q(1, 8)));
            Scenario {
                n,
                powers: (2, 2),
                config,
                expected: Expected { cases: vec![], total },
                model,
                source: "five-dimensional foliation, D_F^-2 paired with D_F^-2, bare trace integral",
            }
        }
        (5, 2, 1) => {
            let model = model_for(AlgebraSignature::new(5, 0))?;
            let config = EvalConfig { b_side: BSide::Right, ..base(&model) };
            let u = local_unit(3, false);
            Scenario {
                n,
                powers: (2, 1),
                config,
                expected: Expected { cases: cases(&u, &[("aII", 0, 1), ("b", 0, 1)]), total: Quantity::zero() },
                model,
                source: "five-dimensional spin manifold, D^-2 paired with D^-1",
            }
        }
        (4, 2, 1) => {
            let model = model_for(AlgebraSignature::new(4, 0))?;
            let config = base(&model);
            Scenario {
                n,
                powers: (2, 1),
                config,
                expected: Expected { cases: vec![], total: Quantity::zero() },
                model,
                source: "four-dimensional spin manifold, D^-2 paired with D^-1",
            }
        }
        _ => return Err(unregistered()),
    };
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unregistered_tuple() {
        assert!(matches!(scenario(7, 1, 1, None), Err(WresError::UnregisteredScenario { dim: 7, .. })));
    }

    #[test]
    fn fixed_signature_rejects_override() {
        assert!(scenario(4, 1, 1, Some(AlgebraSignature::new(1, 3))).is_err());
        assert!(scenario(6, 2, 2, Some(AlgebraSignature::new(3, 3))).is_ok());
        assert!(scenario(6, 2, 2, Some(AlgebraSignature::new(3, 2))).is_err());
    }
}
