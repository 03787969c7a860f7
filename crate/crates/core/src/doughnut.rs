//! The doughnut scoreboard: social foundations and ecological ceilings.
//!
//! Social outcomes are normalised so a score of one means the
//! foundation is met.  Three are simulated each year — job
//! availability, income fairness and income adequacy — and the rest are
//! exogenous constants supplied by the calibration.  Ecological
//! outcomes restate the planetary-boundary ratios; a ratio at or below
//! one is within the ceiling.

use serde::{Deserialize, Serialize};

use crate::config::SocialParams;
use crate::environment::BoundaryStatus;
use crate::{Money, Scalar};

/// Score at or above which a social foundation counts as met.
pub const SOCIAL_MET_THRESHOLD: Scalar = 1.0;

/// One social foundation for one year.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SocialOutcome {
    pub name: String,
    /// Normalised score; one or more means the foundation is met.
    pub score: Scalar,
    pub met: bool,
    /// True when the score is computed from simulated state rather than
    /// held constant by the calibration.
    pub simulated: bool,
}

/// One ecological ceiling for one year.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EcologicalOutcome {
    pub name: String,
    /// Pressure per capita over the boundary; above one is overshoot.
    pub ratio: Scalar,
    pub within: bool,
}

/// The full scoreboard of one year.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoughnutReport {
    pub social: Vec<SocialOutcome>,
    pub ecological: Vec<EcologicalOutcome>,
}

impl DoughnutReport {
    pub fn social_met(&self) -> usize {
        self.social.iter().filter(|o| o.met).count()
    }

    pub fn ecological_within(&self) -> usize {
        self.ecological.iter().filter(|o| o.within).count()
    }

    pub fn social_outcome(&self, name: &str) -> Option<&SocialOutcome> {
        self.social.iter().find(|o| o.name == name)
    }
}

/// Job availability: full marks only when nobody is unemployed.
pub fn job_availability_score(unemployment_rate: Scalar, target: Scalar) -> Scalar {
    1.0 - unemployment_rate / target
}

/// Income fairness: full marks only at zero measured inequality.
pub fn income_fairness_score(atkinson: Scalar, threshold: Scalar) -> Scalar {
    1.0 - atkinson / threshold
}

/// Income adequacy: the poorest decile's disposable income against the
/// adequacy line.
pub fn income_adequacy_score(d1_disposable_per_capita: Money, adequacy_line: Money) -> Scalar {
    d1_disposable_per_capita / adequacy_line
}

/// Builds the scoreboard for one year.
pub fn doughnut_report(
    social: &SocialParams,
    unemployment_rate: Scalar,
    atkinson: Scalar,
    d1_disposable_per_capita: Money,
    boundaries: &[BoundaryStatus],
) -> DoughnutReport {
    let mut outcomes = Vec::with_capacity(3 + social.exogenous_outcomes.len());
    let mut push = |name: &str, score: Scalar, simulated: bool| {
        outcomes.push(SocialOutcome {
            name: name.to_owned(),
            score,
            met: score >= SOCIAL_MET_THRESHOLD,
            simulated,
        });
    };
    push(
        "job_availability",
        job_availability_score(unemployment_rate, social.unemployment_target),
        true,
    );
    push(
        "income_fairness",
        income_fairness_score(atkinson, social.fairness_threshold),
        true,
    );
    push(
        "income_adequacy",
        income_adequacy_score(d1_disposable_per_capita, social.adequacy_line),
        true,
    );
    for (name, score) in &social.exogenous_outcomes {
        push(name, *score, false);
    }
    let ecological = boundaries
        .iter()
        .map(|status| EcologicalOutcome {
            name: status.pressure.as_str().to_owned(),
            ratio: status.ratio,
            within: !status.overshoot,
        })
        .collect();
    DoughnutReport {
        social: outcomes,
        ecological,
    }
}
