//! The reference calibration and the five standard scenarios.
//!
//! The calibration describes a mid-sized European economy in 2020 and
//! is built programmatically so that its internal identities hold by
//! construction: the residual import share closes the trade account,
//! the net-investment share reproduces base-year investment, the
//! labour coefficient of the residual sector reproduces base-year
//! employment, and the pressure intensities reproduce the base-year
//! environmental accounts on both bases.

use std::collections::BTreeMap;

use crate::config::{
    Basis, BoundaryParams, Calibration, CarbonTargetParams, CarbonTaxParams, CohortCell,
    Demography, DividendWeights, EconomyParams, EnvironmentParams, FinalDemand, FiscalParams,
    Gender, IoTable, PhaseWindow, Pressure, PressureIntensity, RedistributionParams, ScenarioSpec,
    Skill, SocialParams, Status, TimeUseProfile, WelfareParams, WtrParams, AGE_BANDS,
    SECTOR_COUNT, WEEKS_PER_YEAR,
};
use crate::num;
use crate::{Money, Persons, Scalar};

// --- Base-year anchors (euros, persons, physical units) -------------------

const CONSUMPTION_2020: Money = 600.0e9;
const GOVERNMENT_2020: Money = 220.0e9;
const INVESTMENT_2020: Money = 171.7e9;
const EXPORTS_2020: Money = 400.0e9;
const IMPORTS_2020: Money = 271.7e9;

const CAPITAL_2020: Money = 500.0e9;
const DEPRECIATION: Scalar = 0.002;

const EMPLOYED_2020: Persons = 19.52e6;
const BASE_WEEKLY_HOURS: Scalar = 36.0;

/// Territorial totals of the five pressures in 2020.
const CO2_TERRITORIAL_2020: Scalar = 2.40e8; // tonnes
const NITROGEN_TERRITORIAL_2020: Scalar = 1.00e9; // kilograms
const AIR_TERRITORIAL_2020: Scalar = 3.00e9; // kilograms
const ENERGY_TERRITORIAL_2020: Scalar = 5.00e9; // gigajoules
const LAND_TERRITORIAL_2020: Scalar = 2.50e7; // hectares

/// Footprint totals of the five pressures in 2020.
const CO2_FOOTPRINT_2020: Scalar = 2.688e8;
const NITROGEN_FOOTPRINT_2020: Scalar = 1.15e9;
const AIR_FOOTPRINT_2020: Scalar = 3.60e9;
const ENERGY_FOOTPRINT_2020: Scalar = 5.50e9;
const LAND_FOOTPRINT_2020: Scalar = 3.50e7;

/// Technical coefficients, row-major: entry `(i, j)` is the input from
/// sector `i` per euro of sector `j` output.
#[rustfmt::skip]
const COEFFICIENTS: [Scalar; SECTOR_COUNT * SECTOR_COUNT] = [
    // agri  educ  ener  heal  mobi  others    (using sector)
    0.16, 0.00, 0.01, 0.02, 0.01, 0.03, // agriculture
    0.00, 0.01, 0.00, 0.00, 0.00, 0.01, // education
    0.08, 0.03, 0.20, 0.03, 0.10, 0.05, // energy supply
    0.00, 0.00, 0.00, 0.02, 0.00, 0.01, // health care
    0.06, 0.02, 0.05, 0.03, 0.12, 0.08, // mobility
    0.24, 0.16, 0.27, 0.28, 0.35, 0.36, // others
];

const CONSUMPTION_BASKET: [Scalar; SECTOR_COUNT] = [0.13, 0.05, 0.06, 0.07, 0.13, 0.56];
const GOVERNMENT_BASKET: [Scalar; SECTOR_COUNT] = [0.01, 0.30, 0.01, 0.35, 0.05, 0.28];
const INVESTMENT_BASKET: [Scalar; SECTOR_COUNT] = [0.02, 0.01, 0.05, 0.01, 0.12, 0.79];
const EXPORTS_BASKET: [Scalar; SECTOR_COUNT] = [0.10, 0.02, 0.05, 0.02, 0.20, 0.61];

/// Import shares of the first five sectors; the residual sector's share
/// is solved so total imports hit [`IMPORTS_2020`].
const IMPORT_SHARES_HEAD: [Scalar; 5] = [0.20, 0.02, 0.45, 0.03, 0.28];

/// Labour coefficients (hours per euro of output) of the first five
/// sectors; the residual sector's coefficient is solved so base-year
/// labour demand employs [`EMPLOYED_2020`] at standard hours.
const LABOUR_HEAD: [Scalar; 5] = [0.020, 0.030, 0.004, 0.028, 0.011];

/// Sector shares of each pressure's territorial total.
const CO2_SHARES: [Scalar; SECTOR_COUNT] = [0.12, 0.01, 0.38, 0.02, 0.30, 0.17];
const NITROGEN_SHARES: [Scalar; SECTOR_COUNT] = [0.55, 0.01, 0.08, 0.02, 0.10, 0.24];
const AIR_SHARES: [Scalar; SECTOR_COUNT] = [0.15, 0.01, 0.25, 0.01, 0.38, 0.20];
const ENERGY_SHARES: [Scalar; SECTOR_COUNT] = [0.06, 0.01, 0.42, 0.02, 0.28, 0.21];
const LAND_SHARES: [Scalar; SECTOR_COUNT] = [0.60, 0.01, 0.05, 0.01, 0.08, 0.25];

// --- Demography ------------------------------------------------------------

/// Population by ten-year age band, persons.
const BAND_POPULATION: [Persons; AGE_BANDS] = [
    4.60e6, 4.20e6, 5.40e6, 6.10e6, 6.30e6, 7.00e6, 5.25e6, 5.00e6, 2.80e6, 0.70e6,
];

/// Labour-force participation by band (equal across genders).
const PARTICIPATION: [Scalar; AGE_BANDS] = [0.0, 0.0, 0.78, 0.93, 0.94, 0.77, 0.35, 0.0, 0.0, 0.0];

/// Female share of each band (women outlive men in the oldest bands).
const FEMALE_SHARE: [Scalar; AGE_BANDS] = [
    0.488, 0.488, 0.488, 0.488, 0.488, 0.50, 0.50, 0.54, 0.54, 0.54,
];

const SURVIVAL: [Scalar; AGE_BANDS] = [
    0.9997, 0.9999, 0.9997, 0.9994, 0.9987, 0.997, 0.993, 0.980, 0.940, 0.84,
];

/// Skill mix (low, mid, high) by band: younger cohorts are better
/// qualified; retirees reflect the education of older generations.
fn skill_mix(band: usize) -> [Scalar; 3] {
    match band {
        0..=4 => [0.25, 0.45, 0.30],
        5..=6 => [0.32, 0.46, 0.22],
        _ => [0.45, 0.40, 0.15],
    }
}

/// Matching weight by skill: employers absorb high-skill labour first.
const SKILL_MATCH_WEIGHT: [Scalar; 3] = [0.85, 1.0, 1.1];

// ---------------------------------------------------------------------------

fn solve(io_coefficients: &[Scalar], demand: &[Money; SECTOR_COUNT]) -> [Money; SECTOR_COUNT] {
    let x = num::solve_fixed_point(io_coefficients, demand, SECTOR_COUNT, 1e-12, 10_000)
        .expect("the reference matrix is productive");
    let mut out = [0.0; SECTOR_COUNT];
    out.copy_from_slice(&x);
    out
}

fn intensity(
    pressure: Pressure,
    shares: &[Scalar; SECTOR_COUNT],
    territorial_total: Scalar,
    footprint_total: Scalar,
    annual_decline: Scalar,
    output: &[Money; SECTOR_COUNT],
    export_output: &[Money; SECTOR_COUNT],
) -> PressureIntensity {
    let mut per_sector = [0.0; SECTOR_COUNT];
    let mut exported = 0.0;
    for s in 0..SECTOR_COUNT {
        per_sector[s] = territorial_total * shares[s] / output[s];
        exported += per_sector[s] * export_output[s];
    }
    // footprint = territorial − exported + imports × import_intensity.
    let import_intensity = (footprint_total - territorial_total + exported) / IMPORTS_2020;
    PressureIntensity {
        pressure,
        per_sector,
        import_intensity,
        annual_decline,
    }
}

/// Builds the reference calibration.
pub fn calibration() -> Calibration {
    // --- Final demand: close the import account -------------------------
    let mut gross = [0.0; SECTOR_COUNT];
    for s in 0..SECTOR_COUNT {
        gross[s] = CONSUMPTION_2020 * CONSUMPTION_BASKET[s]
            + GOVERNMENT_2020 * GOVERNMENT_BASKET[s]
            + INVESTMENT_2020 * INVESTMENT_BASKET[s]
            + EXPORTS_2020 * EXPORTS_BASKET[s];
    }
    let mut import_shares = [0.0; SECTOR_COUNT];
    let mut partial_imports = 0.0;
    for s in 0..5 {
        import_shares[s] = IMPORT_SHARES_HEAD[s];
        partial_imports += gross[s] * import_shares[s];
    }
    import_shares[5] = (IMPORTS_2020 - partial_imports) / gross[5];
    let mut base_by_sector = [0.0; SECTOR_COUNT];
    for s in 0..SECTOR_COUNT {
        base_by_sector[s] = gross[s] * (1.0 - import_shares[s]);
    }
    let base_gdp: Money = base_by_sector.iter().sum();
    let net_investment_share = (INVESTMENT_2020 - DEPRECIATION * CAPITAL_2020) / base_gdp;

    // --- Labour: close the base-year employment account ------------------
    let output = solve(&COEFFICIENTS, &base_by_sector);
    let hours_target = EMPLOYED_2020 * BASE_WEEKLY_HOURS * WEEKS_PER_YEAR;
    let mut labour_hours_per_euro = [0.0; SECTOR_COUNT];
    let mut head_hours = 0.0;
    for s in 0..5 {
        labour_hours_per_euro[s] = LABOUR_HEAD[s];
        head_hours += LABOUR_HEAD[s] * output[s];
    }
    labour_hours_per_euro[5] = (hours_target - head_hours) / output[5];

    let io = IoTable {
        coefficients: COEFFICIENTS.to_vec(),
        labour_hours_per_euro,
    };
    let final_demand = FinalDemand {
        base_by_sector,
        import_shares,
        consumption_basket: CONSUMPTION_BASKET,
        government_basket: GOVERNMENT_BASKET,
        investment_basket: INVESTMENT_BASKET,
        exports_basket: EXPORTS_BASKET,
    };

    // --- Environment: close both pressure accounts -----------------------
    let mut export_demand = [0.0; SECTOR_COUNT];
    for s in 0..SECTOR_COUNT {
        export_demand[s] = EXPORTS_2020 * EXPORTS_BASKET[s] * (1.0 - import_shares[s]);
    }
    let export_output = solve(&COEFFICIENTS, &export_demand);
    let intensities = vec![
        intensity(
            Pressure::Co2,
            &CO2_SHARES,
            CO2_TERRITORIAL_2020,
            CO2_FOOTPRINT_2020,
            0.002,
            &output,
            &export_output,
        ),
        intensity(
            Pressure::Nitrogen,
            &NITROGEN_SHARES,
            NITROGEN_TERRITORIAL_2020,
            NITROGEN_FOOTPRINT_2020,
            0.002,
            &output,
            &export_output,
        ),
        intensity(
            Pressure::AirPollutants,
            &AIR_SHARES,
            AIR_TERRITORIAL_2020,
            AIR_FOOTPRINT_2020,
            0.0,
            &output,
            &export_output,
        ),
        intensity(
            Pressure::PrimaryEnergy,
            &ENERGY_SHARES,
            ENERGY_TERRITORIAL_2020,
            ENERGY_FOOTPRINT_2020,
            0.0,
            &output,
            &export_output,
        ),
        intensity(
            Pressure::LandSystem,
            &LAND_SHARES,
            LAND_TERRITORIAL_2020,
            LAND_FOOTPRINT_2020,
            0.001,
            &output,
            &export_output,
        ),
    ];
    let boundaries = BTreeMap::from([
        (
            "co2".to_owned(),
            BoundaryParams {
                limit_per_capita: 3.154,
                basis: Basis::Footprint,
            },
        ),
        (
            "nitrogen".to_owned(),
            BoundaryParams {
                limit_per_capita: 18.7,
                basis: Basis::Footprint,
            },
        ),
        (
            "air_pollutants".to_owned(),
            BoundaryParams {
                limit_per_capita: 84.5,
                basis: Basis::Footprint,
            },
        ),
        (
            "primary_energy".to_owned(),
            BoundaryParams {
                limit_per_capita: 126.3,
                basis: Basis::Footprint,
            },
        ),
        (
            "land_system".to_owned(),
            BoundaryParams {
                limit_per_capita: 0.670,
                basis: Basis::Footprint,
            },
        ),
    ]);
    let environment = EnvironmentParams {
        intensities,
        boundaries,
        nonrenewable_energy_share: 0.75,
        nuclear_energy_share: 0.20,
    };

    // --- Demography --------------------------------------------------------
    let mut cells = Vec::with_capacity(2 * AGE_BANDS * 3);
    for gender in Gender::ALL {
        for band in 0..AGE_BANDS {
            let gender_share = match gender {
                Gender::Female => FEMALE_SHARE[band],
                Gender::Male => 1.0 - FEMALE_SHARE[band],
            };
            let mix = skill_mix(band);
            for skill in Skill::ALL {
                cells.push(CohortCell {
                    gender,
                    band,
                    skill,
                    population: BAND_POPULATION[band] * gender_share * mix[skill.index()],
                    participation: PARTICIPATION[band],
                    base_employment_share: 0.0, // filled below
                });
            }
        }
    }
    // Matching weights: labour force weighted by skill attractiveness.
    let mut weight_total = 0.0;
    let weights: Vec<Scalar> = cells
        .iter()
        .map(|cell| {
            let w = cell.population * cell.participation * SKILL_MATCH_WEIGHT[cell.skill.index()];
            weight_total += w;
            w
        })
        .collect();
    for (cell, w) in cells.iter_mut().zip(weights) {
        cell.base_employment_share = w / weight_total;
    }
    let demography = Demography {
        cells,
        survival: SURVIVAL,
        band_promotion_rate: 0.10,
        births_base: 430_000.0,
        births_annual_decline: 0.006,
        female_birth_share: 0.485,
        birth_skill_shares: [0.25, 0.45, 0.30],
        adult_band: 2,
        elderly_band: 7,
    };

    // --- Time use ------------------------------------------------------------
    // (paid, unpaid, sleep, physical care, leisure, residual), h/week.
    let profile = |status, gender, hours| TimeUseProfile { status, gender, hours };
    let time_use = vec![
        profile(Status::Employed, Gender::Female, [36.0, 26.0, 56.0, 10.0, 25.0, 15.0]),
        profile(Status::Employed, Gender::Male, [36.0, 19.6, 56.0, 9.0, 32.0, 15.4]),
        profile(Status::Unemployed, Gender::Female, [0.0, 44.0, 58.0, 11.0, 34.0, 21.0]),
        profile(Status::Unemployed, Gender::Male, [0.0, 35.5, 58.0, 10.0, 39.5, 25.0]),
        profile(Status::Olf, Gender::Female, [0.0, 27.5, 58.0, 12.0, 42.0, 28.5]),
        profile(Status::Olf, Gender::Male, [0.0, 22.0, 58.0, 11.0, 46.0, 31.0]),
    ];

    // --- Remaining scalar blocks ----------------------------------------------
    let economy = EconomyParams {
        productivity_growth: 0.0060,
        wage_growth: 0.0045,
        base_weekly_hours: BASE_WEEKLY_HOURS,
        hourly_wages: [6.15, 14.40, 26.48],
        skill_wage_convergence: 0.004,
        consumption_base: CONSUMPTION_2020,
        government_base: GOVERNMENT_2020,
        government_growth: 0.0005,
        exports_base: EXPORTS_2020,
        exports_growth: 0.0005,
        depreciation_rate: DEPRECIATION,
        capital_base: CAPITAL_2020,
        net_investment_share,
        production_tax_rate: 0.10,
        dividend_payout: 0.30,
        dividend_weights: DividendWeights {
            pensioners: 0.05,
            olf: 0.0,
            unemployed: 0.0,
            employed_low: 0.0,
            employed_mid: 0.10,
            employed_high: 0.85,
        },
        capital_income_tax_rate: 0.28,
        propensities: [1.02, 1.015, 1.01, 1.005, 1.0, 1.0, 0.995, 0.995, 0.99, 0.99],
        interest_rate: 0.0,
    };
    let fiscal = FiscalParams {
        brackets: vec![
            (0.0, 0.19),
            (6_000.0, 0.24),
            (20_200.0, 0.30),
            (28_000.0, 0.37),
            (54_000.0, 0.47),
        ],
        benefit_share: 0.1330,
        pension_share: 0.18,
    };
    let welfare = WelfareParams {
        defensive_share_narrow: 0.1336,
        defensive_share_broad: 0.30587,
        defensive_drift: -0.025,
        shadow_share: 0.13447,
        shadow_drift: 0.0,
        government_nondefensive_share: 0.40793,
        government_nondefensive_drift: 0.003,
        unpaid_wage: 9.04,
        unpaid_wage_growth: 0.0045,
        atkinson_epsilon: 0.8,
        inequality_floor: 0.042,
        weather_base: 45.0e9,
        weather_trend: -0.03,
    };
    let social = SocialParams {
        unemployment_target: 0.05,
        fairness_threshold: 0.28,
        adequacy_line: 4_950.0,
        exogenous_outcomes: BTreeMap::from([
            ("access_to_energy".to_owned(), 1.12),
            ("clean_water".to_owned(), 1.25),
            ("education_attainment".to_owned(), 1.08),
            ("social_support".to_owned(), 1.05),
            ("health_coverage".to_owned(), 1.30),
            ("political_voice".to_owned(), 1.02),
            ("peace_and_justice".to_owned(), 1.04),
            ("democratic_quality".to_owned(), 0.86),
            ("gender_equality".to_owned(), 0.81),
        ]),
    };
    let carbon_target = CarbonTargetParams {
        series_name: "co2_territorial_pathway".to_owned(),
        reference_level: CO2_TERRITORIAL_2020,
        annual_decline: 0.045,
        floor_fraction: 0.10,
    };
    let unit_costs = BTreeMap::from([
        ("air_pollution".to_owned(), 25.0e9 / AIR_TERRITORIAL_2020),
        ("nitrogen_pollution".to_owned(), 20.0e9 / NITROGEN_TERRITORIAL_2020),
        ("climate_breakdown".to_owned(), 744.0),
        (
            "energy_depletion".to_owned(),
            45.0e9 / (0.75 * ENERGY_FOOTPRINT_2020),
        ),
        (
            "nuclear_power".to_owned(),
            12.0e9 / (0.20 * ENERGY_TERRITORIAL_2020),
        ),
    ]);

    Calibration {
        io,
        final_demand,
        demography,
        time_use,
        economy,
        fiscal,
        environment,
        welfare,
        social,
        carbon_target,
        unit_costs,
    }
}

// --- Scenarios ---------------------------------------------------------------

fn base_scenario(name: &str, description: &str) -> ScenarioSpec {
    ScenarioSpec {
        name: name.to_owned(),
        description: description.to_owned(),
        horizon: Default::default(),
        phase_window: PhaseWindow { start: 2030, end: 2035 },
        carbon_tax: None,
        redistribution: None,
        wtr: None,
    }
}

fn carbon_lever() -> CarbonTaxParams {
    CarbonTaxParams {
        tau_max_eur_per_tonne: 150.0,
        adjustment_speed: 0.25,
        target_series_ref: "co2_territorial_pathway".to_owned(),
        r_max: 0.65,
    }
}

fn redistribution_lever() -> RedistributionParams {
    RedistributionParams {
        final_low_rate: 0.13,
        final_high_rate: 0.75,
        benefit_multiplier_olf: 2.0,
        benefit_multiplier_unemployed: 1.3,
    }
}

fn wtr_lever() -> WtrParams {
    WtrParams { hours_reduction: 0.15 }
}

/// Business as usual: no levers.
pub fn scenario_bau() -> ScenarioSpec {
    base_scenario("bau", "Business as usual: no policy levers active.")
}

/// Carbon taxation only.
pub fn scenario_carbon_tax() -> ScenarioSpec {
    let mut s = base_scenario(
        "carbon_tax",
        "A carbon tax phased in from 2030, steered by an emission pathway.",
    );
    s.carbon_tax = Some(carbon_lever());
    s
}

/// Redistribution only.
pub fn scenario_redistribution() -> ScenarioSpec {
    let mut s = base_scenario(
        "redistribution",
        "Progressive tax reform with doubled out-of-work benefits, phased in from 2030.",
    );
    s.redistribution = Some(redistribution_lever());
    s
}

/// Working-time reduction only.
pub fn scenario_wtr() -> ScenarioSpec {
    let mut s = base_scenario(
        "wtr",
        "A 15% reduction of standard working hours, phased in from 2030.",
    );
    s.wtr = Some(wtr_lever());
    s
}

/// All three levers combined.
pub fn scenario_all_three() -> ScenarioSpec {
    let mut s = base_scenario(
        "all_three",
        "Carbon tax, redistribution and working-time reduction combined.",
    );
    s.carbon_tax = Some(carbon_lever());
    s.redistribution = Some(redistribution_lever());
    s.wtr = Some(wtr_lever());
    s
}

/// All five standard scenarios in canonical order.
pub fn scenarios() -> Vec<ScenarioSpec> {
    vec![
        scenario_bau(),
        scenario_carbon_tax(),
        scenario_redistribution(),
        scenario_wtr(),
        scenario_all_three(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reference_calibration_validates() {
        calibration().validate().unwrap();
    }

    #[test]
    fn reference_scenarios_validate() {
        for scenario in scenarios() {
            scenario.validate().unwrap();
        }
    }

    #[test]
    fn built_in_identities_close() {
        let c = calibration();
        // Trade account: imports close exactly.
        let total_gross: Money = CONSUMPTION_2020 + GOVERNMENT_2020 + INVESTMENT_2020 + EXPORTS_2020;
        assert_relative_eq!(c.base_gdp(), total_gross - IMPORTS_2020, max_relative = 1e-9);
        // Investment account: the base-investment rule reproduces the anchor.
        assert_relative_eq!(c.base_investment(), INVESTMENT_2020, max_relative = 1e-9);
        // Labour account: base output employs the base-year workforce.
        let output = solve(&c.io.coefficients, &c.final_demand.base_by_sector);
        let hours: Scalar = (0..SECTOR_COUNT)
            .map(|s| output[s] * c.io.labour_hours_per_euro[s])
            .sum();
        assert_relative_eq!(
            hours,
            EMPLOYED_2020 * BASE_WEEKLY_HOURS * WEEKS_PER_YEAR,
            max_relative = 1e-9
        );
        for l in c.io.labour_hours_per_euro {
            assert!(l > 0.0);
        }
    }

    #[test]
    fn pressure_accounts_reproduce_their_anchors() {
        let c = calibration();
        let output = solve(&c.io.coefficients, &c.final_demand.base_by_sector);
        let mut export_demand = [0.0; SECTOR_COUNT];
        for s in 0..SECTOR_COUNT {
            export_demand[s] =
                EXPORTS_2020 * EXPORTS_BASKET[s] * (1.0 - c.final_demand.import_shares[s]);
        }
        let export_output = solve(&c.io.coefficients, &export_demand);
        let accounts = crate::environment::compute_pressures(
            &c.environment,
            &output,
            &export_output,
            IMPORTS_2020,
            0.0,
            0.0,
        );
        let anchors = [
            (Pressure::Co2, CO2_TERRITORIAL_2020, CO2_FOOTPRINT_2020),
            (Pressure::Nitrogen, NITROGEN_TERRITORIAL_2020, NITROGEN_FOOTPRINT_2020),
            (Pressure::AirPollutants, AIR_TERRITORIAL_2020, AIR_FOOTPRINT_2020),
            (Pressure::PrimaryEnergy, ENERGY_TERRITORIAL_2020, ENERGY_FOOTPRINT_2020),
            (Pressure::LandSystem, LAND_TERRITORIAL_2020, LAND_FOOTPRINT_2020),
        ];
        for (pressure, territorial, footprint) in anchors {
            let level = accounts.level(pressure);
            assert_relative_eq!(level.territorial, territorial, max_relative = 1e-9);
            assert_relative_eq!(level.footprint, footprint, max_relative = 1e-9);
        }
        // Import intensities must be physically meaningful (positive).
        for intensity in &c.environment.intensities {
            assert!(intensity.import_intensity > 0.0, "{:?}", intensity.pressure);
        }
    }

    #[test]
    fn base_year_population_and_labour_force_match_the_design() {
        let c = calibration();
        let grid = crate::demographics::CohortGrid::new(&c.demography);
        assert_relative_eq!(grid.total_population(), 47.35e6, max_relative = 1e-9);
        assert_relative_eq!(grid.labour_force(), 23.0345e6, max_relative = 1e-6);
        let share_total: Scalar = c.demography.cells.iter().map(|c| c.base_employment_share).sum();
        assert_relative_eq!(share_total, 1.0, epsilon = 1e-12);
    }
}
