//! Policy levers: the carbon-tax controller, the phased tax/benefit
//! schedule, and the working-time factor.
//!
//! All three levers share the same phase-in convention: a linear ramp
//! from the baseline value at the start of the phase window to the
//! final value at its end, constant afterwards.  A scenario with no
//! lever blocks reproduces the baseline exactly.

use crate::config::{
    CarbonTargetParams, CarbonTaxParams, FiscalParams, PhaseWindow, RedistributionParams,
    WtrParams,
};
use crate::error::{ModelError, Result};
use crate::num::{linear_ramp, marginal_tax};
use crate::{Money, Scalar};

/// Carbon-tax controller state carried across years.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CarbonState {
    /// Current tax level, euros per tonne.
    pub tau: Money,
    /// Current relative emission reduction in `[0, r_max]`.
    pub reduction: Scalar,
}

/// Emission target for one year: the reference level declining at the
/// configured rate once the policy window opens, floored at a fraction
/// of the reference.
pub fn carbon_target(params: &CarbonTargetParams, year: i32, phase_start: i32) -> Scalar {
    let floor = params.floor_fraction * params.reference_level;
    if year <= phase_start {
        return params.reference_level;
    }
    let steps = (year - phase_start) as Scalar;
    (params.reference_level * (1.0 - params.annual_decline).powf(steps)).max(floor)
}

/// One step of the integral controller that adjusts the carbon tax.
///
/// The tax moves proportionally to the relative gap between last year's
/// emissions and this year's target, clamped to `[0, tau_max]`; the
/// induced emission reduction is proportional to the tax level.
/// Returns an error when the target is non-positive, since the relative
/// gap is then undefined.
pub fn carbon_controller_step(
    prev_tau: Money,
    policy: &CarbonTaxParams,
    last_emissions: Scalar,
    target: Scalar,
    year: i32,
) -> Result<CarbonState> {
    if target <= 0.0 {
        return Err(ModelError::ZeroTarget {
            year,
            value: target,
        });
    }
    let tau_max = policy.tau_max_eur_per_tonne;
    if tau_max <= 0.0 {
        // A zero ceiling is the policy-neutral parameterisation.
        return Ok(CarbonState {
            tau: 0.0,
            reduction: 0.0,
        });
    }
    let gap = (last_emissions - target) / target;
    let tau = (prev_tau + policy.adjustment_speed * tau_max * gap).clamp(0.0, tau_max);
    Ok(CarbonState {
        tau,
        reduction: policy.r_max * tau / tau_max,
    })
}

/// The tax/transfer schedule in force for one year.
#[derive(Debug, Clone, PartialEq)]
pub struct FiscalSchedule {
    /// `(lower_bound, marginal_rate)` pairs applied to taxable income.
    pub brackets: Vec<(Money, Scalar)>,
    /// Transfer to working-age adults out of the labour force, as a
    /// fraction of the average full-time gross annual wage.
    pub benefit_rate_olf: Scalar,
    /// Transfer to unemployed adults, same wage base.
    pub benefit_rate_unemployed: Scalar,
}

impl FiscalSchedule {
    /// Income tax due on one person's annual taxable income.
    pub fn tax(&self, income: Money) -> Money {
        marginal_tax(income, &self.brackets)
    }
}

/// Builds the schedule for `year`: baseline brackets and benefit rates,
/// reshaped by the redistribution lever over the phase window.
///
/// The lowest bracket ramps to `final_low_rate` and the highest to
/// `final_high_rate`; interior brackets move in proportion to their
/// baseline position between the two end rates, which keeps the
/// schedule monotone throughout the ramp.  Benefit rates are multiplied
/// by the phased-in multipliers.
pub fn fiscal_schedule(
    base: &FiscalParams,
    lever: Option<&RedistributionParams>,
    window: PhaseWindow,
    year: i32,
) -> FiscalSchedule {
    let baseline = FiscalSchedule {
        brackets: base.brackets.clone(),
        benefit_rate_olf: base.benefit_share,
        benefit_rate_unemployed: base.benefit_share,
    };
    let Some(lever) = lever else {
        return baseline;
    };

    let low0 = base.brackets.first().expect("validated: non-empty").1;
    let high0 = base.brackets.last().expect("validated: non-empty").1;
    let span = high0 - low0;
    let brackets = base
        .brackets
        .iter()
        .map(|&(lower, rate)| {
            // Rank of this bracket between the baseline end rates.
            let position = if span.abs() < 1e-12 {
                0.0
            } else {
                (rate - low0) / span
            };
            let final_rate = lever.final_low_rate
                + position * (lever.final_high_rate - lever.final_low_rate);
            (
                lower,
                linear_ramp(year, window.start, window.end, rate, final_rate),
            )
        })
        .collect();
    FiscalSchedule {
        brackets,
        benefit_rate_olf: base.benefit_share
            * linear_ramp(year, window.start, window.end, 1.0, lever.benefit_multiplier_olf),
        benefit_rate_unemployed: base.benefit_share
            * linear_ramp(
                year,
                window.start,
                window.end,
                1.0,
                lever.benefit_multiplier_unemployed,
            ),
    }
}

/// Multiplier on standard weekly paid hours for `year`: ramps from one
/// down to `1 - hours_reduction` over the phase window.
pub fn wtr_hours_factor(lever: Option<&WtrParams>, window: PhaseWindow, year: i32) -> Scalar {
    match lever {
        None => 1.0,
        Some(w) => linear_ramp(year, window.start, window.end, 1.0, 1.0 - w.hours_reduction),
    }
}
