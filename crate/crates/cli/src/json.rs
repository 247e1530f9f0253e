use rearrange_core::cost::{CostScheme, Model, ModelName};
use rearrange_core::ops::Rearrangement;
use rearrange_core::perm::Permutation;
use rearrange_core::rational::RationalJson;
use rearrange_core::reductions::WsrInstance;
use rearrange_core::solver::SortingCertificate;
use rearrange_core::{lower_bound, Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct StepJson {
    pub op: String,
    pub cost: RationalJson,
    pub delta_b: i64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub permutation: String,
    pub model: String,
    pub scheme: String,
    pub cost: RationalJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<RationalJson>,
    pub steps: Vec<StepJson>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub outside_proven: bool,
}

impl CertificateJson {
    pub fn from_certificate(cert: &SortingCertificate) -> Result<Self> {
        let model = Model::new(cert.model, cert.scheme.clone())?;
        Ok(CertificateJson {
            permutation: cert.start.to_string(),
            model: cert.model.to_string(),
            scheme: cert.scheme.to_string(),
            cost: cert.total_cost.into(),
            lower_bound: Some(lower_bound(&cert.start, &model)?.into()),
            steps: cert
                .steps
                .iter()
                .map(|s| StepJson {
                    op: s.op.to_string(),
                    cost: s.cost.into(),
                    delta_b: s.delta_b,
                })
                .collect(),
            outside_proven: !cert.scheme.is_within_proven_range(),
        })
    }

    /// Rebuilds the certificate from its permutation, model, scheme and
    /// operations, then compares every claimed number with the replay.
    pub fn check(&self) -> Result<SortingCertificate> {
        let name: ModelName = self.model.parse()?;
        let scheme = if self.outside_proven {
            CostScheme::parse_unchecked(&self.scheme)?
        } else {
            self.scheme.parse()?
        };
        let model = Model::new(name, scheme)?;
        let start = Permutation::parse_as(name.signedness(), &self.permutation)?;
        let ops = self
            .steps
            .iter()
            .map(|s| s.op.parse::<Rearrangement>())
            .collect::<Result<Vec<_>>>()?;
        let cert = SortingCertificate::build(&start, &model, ops)?;
        let claimed = rearrange_core::Rational::try_from(self.cost)?;
        if claimed != cert.total_cost {
            return Err(Error::Certificate(format!(
                "claimed cost {} but the sequence costs {}",
                rearrange_core::rational::render(&claimed),
                rearrange_core::rational::render(&cert.total_cost)
            )));
        }
        for (i, (step, real)) in self.steps.iter().zip(&cert.steps).enumerate() {
            let cost = rearrange_core::Rational::try_from(step.cost)?;
            if cost != real.cost || step.delta_b != real.delta_b {
                return Err(Error::Certificate(format!(
                    "step {} ({}) claims cost {} and Δb {}, replay gives {} and {}",
                    i + 1,
                    step.op,
                    rearrange_core::rational::render(&cost),
                    step.delta_b,
                    rearrange_core::rational::render(&real.cost),
                    real.delta_b
                )));
            }
        }
        Ok(cert)
    }
}

#[derive(Debug, Serialize)]
pub struct InstanceJson {
    pub model: String,
    pub scheme: String,
    pub permutation: String,
    pub k: RationalJson,
}

impl From<&WsrInstance> for InstanceJson {
    fn from(i: &WsrInstance) -> Self {
        InstanceJson {
            model: i.model.name().to_string(),
            scheme: i.model.scheme().to_string(),
            permutation: i.permutation.to_string(),
            k: i.k.into(),
        }
    }
}
