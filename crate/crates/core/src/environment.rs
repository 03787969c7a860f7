//! Environmental pressure accounting.
//!
//! Each pressure is tracked on two bases.  The *territorial* level is
//! what domestic production emits: sector intensities times gross
//! output, with intensities declining on their configured trend.  The
//! *footprint* level re-attributes pressures to domestic consumption:
//! territorial minus the part embodied in exports plus the part
//! embodied in imports.  Policy-driven CO₂ abatement scales both bases
//! of the carbon row; other pressures are unaffected by it.

use serde::{Deserialize, Serialize};

use crate::config::{Basis, EnvironmentParams, Pressure, PRESSURE_COUNT, SECTOR_COUNT};
use crate::{Money, Persons, Scalar};

/// One pressure's level on both bases, in its native physical unit.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PressureLevels {
    pub territorial: Scalar,
    pub footprint: Scalar,
}

impl PressureLevels {
    pub fn on(&self, basis: Basis) -> Scalar {
        match basis {
            Basis::Territorial => self.territorial,
            Basis::Footprint => self.footprint,
        }
    }
}

/// All pressures of one year, plus the derived energy splits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentAccounts {
    /// Levels in [`Pressure::ALL`] order.
    pub levels: [PressureLevels; PRESSURE_COUNT],
    /// Non-renewable share of primary energy, both bases.
    pub nonrenewable_energy: PressureLevels,
    /// Nuclear share of primary energy, both bases.
    pub nuclear_energy: PressureLevels,
}

impl EnvironmentAccounts {
    pub fn level(&self, pressure: Pressure) -> PressureLevels {
        self.levels[pressure.index()]
    }
}

/// Computes all pressure levels for one year.
///
/// * `output` — gross output by sector, euros.
/// * `export_output` — the share of gross output attributable to export
///   demand (a separate Leontief solve on the export column), euros.
/// * `imports` — total imports, euros.
/// * `co2_reduction` — policy-driven abatement fraction applied to the
///   carbon row on both bases.
pub fn compute_pressures(
    env: &EnvironmentParams,
    output: &[Money; SECTOR_COUNT],
    export_output: &[Money; SECTOR_COUNT],
    imports: Money,
    years_elapsed: Scalar,
    co2_reduction: Scalar,
) -> EnvironmentAccounts {
    let mut levels = [PressureLevels::default(); PRESSURE_COUNT];
    for pressure in Pressure::ALL {
        let intensity = env.intensity(pressure);
        let factor = (1.0 - intensity.annual_decline).powf(years_elapsed);
        let mut territorial = 0.0;
        let mut exported = 0.0;
        for s in 0..SECTOR_COUNT {
            territorial += intensity.per_sector[s] * output[s];
            exported += intensity.per_sector[s] * export_output[s];
        }
        territorial *= factor;
        exported *= factor;
        let imported = imports * intensity.import_intensity * factor;
        let mut result = PressureLevels {
            territorial,
            footprint: territorial - exported + imported,
        };
        if pressure == Pressure::Co2 {
            result.territorial *= 1.0 - co2_reduction;
            result.footprint *= 1.0 - co2_reduction;
        }
        levels[pressure.index()] = result;
    }
    let energy = levels[Pressure::PrimaryEnergy.index()];
    let scale = |levels: PressureLevels, share: Scalar| PressureLevels {
        territorial: levels.territorial * share,
        footprint: levels.footprint * share,
    };
    EnvironmentAccounts {
        levels,
        nonrenewable_energy: scale(energy, env.nonrenewable_energy_share),
        nuclear_energy: scale(energy, env.nuclear_energy_share),
    }
}

/// One pressure's position against its per-capita boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryStatus {
    pub pressure: Pressure,
    /// Basis the boundary is assessed on.
    pub basis: Basis,
    /// Level per person on that basis.
    pub per_capita: Scalar,
    /// The boundary, per person per year.
    pub limit_per_capita: Scalar,
    /// `per_capita / limit_per_capita`; above one is overshoot.
    pub ratio: Scalar,
    pub overshoot: bool,
}

/// Assesses every pressure against its configured boundary.
pub fn boundary_status(
    env: &EnvironmentParams,
    accounts: &EnvironmentAccounts,
    population: Persons,
) -> Vec<BoundaryStatus> {
    Pressure::ALL
        .into_iter()
        .map(|pressure| {
            let boundary = env.boundary(pressure);
            let level = accounts.level(pressure).on(boundary.basis);
            let per_capita = if population > 0.0 { level / population } else { 0.0 };
            let ratio = if boundary.limit_per_capita > 0.0 {
                per_capita / boundary.limit_per_capita
            } else {
                0.0
            };
            BoundaryStatus {
                pressure,
                basis: boundary.basis,
                per_capita,
                limit_per_capita: boundary.limit_per_capita,
                ratio,
                overshoot: ratio > 1.0,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{BoundaryParams, PressureIntensity};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn toy_env(declines: [Scalar; PRESSURE_COUNT]) -> EnvironmentParams {
        let mut boundaries = BTreeMap::new();
        for pressure in Pressure::ALL {
            boundaries.insert(
                pressure.as_str().to_owned(),
                BoundaryParams {
                    limit_per_capita: 2.0,
                    basis: if pressure == Pressure::Co2 {
                        Basis::Footprint
                    } else {
                        Basis::Territorial
                    },
                },
            );
        }
        EnvironmentParams {
            intensities: Pressure::ALL
                .into_iter()
                .enumerate()
                .map(|(k, pressure)| PressureIntensity {
                    pressure,
                    // First sector carries everything; intensity 2/€ for
                    // CO₂ and 1/€ for the rest.
                    per_sector: [
                        if pressure == Pressure::Co2 { 2.0 } else { 1.0 },
                        0.0,
                        0.0,
                        0.0,
                        0.0,
                        0.0,
                    ],
                    import_intensity: 1.5,
                    annual_decline: declines[k],
                })
                .collect(),
            boundaries,
            nonrenewable_energy_share: 0.75,
            nuclear_energy_share: 0.20,
        }
    }

    const X: [Money; SECTOR_COUNT] = [100.0, 50.0, 0.0, 0.0, 0.0, 0.0];
    const X_EXPORT: [Money; SECTOR_COUNT] = [30.0, 10.0, 0.0, 0.0, 0.0, 0.0];

    #[test]
    fn territorial_and_footprint_follow_the_attribution_identity() {
        let env = toy_env([0.0; PRESSURE_COUNT]);
        let accounts = compute_pressures(&env, &X, &X_EXPORT, 50.0, 0.0, 0.0);
        let co2 = accounts.level(Pressure::Co2);
        // Territorial: 2 × 100.  Exported: 2 × 30.  Imported: 50 × 1.5.
        assert_relative_eq!(co2.territorial, 200.0);
        assert_relative_eq!(co2.footprint, 200.0 - 60.0 + 75.0);
        let nitrogen = accounts.level(Pressure::Nitrogen);
        assert_relative_eq!(nitrogen.territorial, 100.0);
        assert_relative_eq!(nitrogen.footprint, 100.0 - 30.0 + 75.0);
    }

    #[test]
    fn intensities_decline_on_their_trend() {
        let mut declines = [0.0; PRESSURE_COUNT];
        declines[Pressure::Co2.index()] = 0.1;
        let env = toy_env(declines);
        let accounts = compute_pressures(&env, &X, &X_EXPORT, 50.0, 2.0, 0.0);
        let co2 = accounts.level(Pressure::Co2);
        assert_relative_eq!(co2.territorial, 200.0 * 0.81, epsilon = 1e-9);
        assert_relative_eq!(co2.footprint, 215.0 * 0.81, epsilon = 1e-9);
        // Undeclined rows are untouched.
        let nitrogen = accounts.level(Pressure::Nitrogen);
        assert_relative_eq!(nitrogen.territorial, 100.0);
    }

    #[test]
    fn abatement_scales_only_the_carbon_row() {
        let env = toy_env([0.0; PRESSURE_COUNT]);
        let base = compute_pressures(&env, &X, &X_EXPORT, 50.0, 0.0, 0.0);
        let abated = compute_pressures(&env, &X, &X_EXPORT, 50.0, 0.0, 0.25);
        let co2 = abated.level(Pressure::Co2);
        assert_relative_eq!(co2.territorial, base.level(Pressure::Co2).territorial * 0.75);
        assert_relative_eq!(co2.footprint, base.level(Pressure::Co2).footprint * 0.75);
        for pressure in [
            Pressure::Nitrogen,
            Pressure::AirPollutants,
            Pressure::PrimaryEnergy,
            Pressure::LandSystem,
        ] {
            assert_eq!(abated.level(pressure), base.level(pressure));
        }
        // The energy splits follow the energy row.
        assert_relative_eq!(abated.nonrenewable_energy.territorial, 100.0 * 0.75);
        assert_relative_eq!(abated.nuclear_energy.territorial, 100.0 * 0.20);
    }

    #[test]
    fn boundaries_report_per_capita_overshoot_on_the_configured_basis() {
        let env = toy_env([0.0; PRESSURE_COUNT]);
        let accounts = compute_pressures(&env, &X, &X_EXPORT, 50.0, 0.0, 0.0);
        let statuses = boundary_status(&env, &accounts, 100.0);
        assert_eq!(statuses.len(), PRESSURE_COUNT);
        // CO₂ is assessed on the footprint: 215 / 100 people = 2.15 per
        // person against a limit of 2.
        let co2 = &statuses[Pressure::Co2.index()];
        assert_eq!(co2.basis, Basis::Footprint);
        assert_relative_eq!(co2.per_capita, 2.15);
        assert_relative_eq!(co2.ratio, 1.075);
        assert!(co2.overshoot);
        // Nitrogen on the territorial basis: 1 per person, within.
        let nitrogen = &statuses[Pressure::Nitrogen.index()];
        assert_relative_eq!(nitrogen.ratio, 0.5);
        assert!(!nitrogen.overshoot);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn pressures_are_linear_in_output_and_imports(
            scale in 0.1..10.0_f64,
            imports in 0.0..1e3_f64,
        ) {
            let env = toy_env([0.0; PRESSURE_COUNT]);
            let base = compute_pressures(&env, &X, &X_EXPORT, imports, 0.0, 0.0);
            let scaled_x = X.map(|v| v * scale);
            let scaled_exp = X_EXPORT.map(|v| v * scale);
            let scaled = compute_pressures(&env, &scaled_x, &scaled_exp, imports * scale, 0.0, 0.0);
            for pressure in Pressure::ALL {
                let a = base.level(pressure);
                let b = scaled.level(pressure);
                prop_assert!((b.territorial - a.territorial * scale).abs() <= 1e-9 * a.territorial.abs().max(1.0) * scale);
                prop_assert!((b.footprint - a.footprint * scale).abs() <= 1e-9 * a.footprint.abs().max(1.0) * scale);
            }
        }
    }
}
