//! Calibration bundles and scenario specifications.
//!
//! A *calibration bundle* is a directory of CSV files plus one
//! `params.json` holding every number the model needs: the input–output
//! table, sector final demand, labour coefficients, the cohort grid,
//! time-use profiles, environmental intensities, unit costs and scalar
//! parameters.  A *scenario specification* is a single JSON file naming
//! the policy levers to activate and the simulation horizon.
//!
//! Parsing is strict: unknown fields, missing columns, wrong row counts
//! and out-of-range values are all rejected with dedicated errors, so a
//! bundle that loads is a bundle the engine can run.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{ModelError, Result};
use crate::num;
use crate::{Money, Scalar, BASE_YEAR};

/// Number of production sectors.
pub const SECTOR_COUNT: usize = 6;

/// Canonical sector order used by every per-sector array.
pub const SECTOR_NAMES: [&str; SECTOR_COUNT] = [
    "agriculture",
    "education",
    "energy_supply",
    "health_care",
    "mobility",
    "others",
];

/// Number of ten-year age bands (0–9, 10–19, …, 90+).
pub const AGE_BANDS: usize = 10;

/// Number of tracked environmental pressures.
pub const PRESSURE_COUNT: usize = 5;

/// Time-use categories; weekly hours over these sum to [`WEEK_HOURS`].
pub const TIME_USE_CATEGORIES: [&str; 6] = [
    "paid_work",
    "unpaid_work",
    "sleep",
    "physical_care",
    "leisure",
    "residual",
];

/// Hours in a week; every time-use profile must sum to this.
pub const WEEK_HOURS: Scalar = 168.0;

/// Weeks per modelled year.
pub const WEEKS_PER_YEAR: Scalar = 52.0;

/// Absolute tolerance on unit-sum checks (baskets, shares, profile
/// totals).
pub const UNIT_SUM_TOL: Scalar = 1e-9;

/// Relative tolerance when cross-checking the stored base final demand
/// against the one reconstructed from expenditure components.
pub const FINAL_DEMAND_CONSISTENCY_TOL: Scalar = 1e-6;

/// Convergence tolerance used when bounding the spectral radius.
pub const SPECTRAL_TOL: Scalar = 1e-10;

/// Iteration cap for the spectral-radius bound.
pub const SPECTRAL_MAX_ITER: usize = 10_000;

/// Baseline marginal rate of the lowest tax bracket (validated).
pub const BASELINE_LOW_RATE: Scalar = 0.19;

/// Baseline marginal rate of the highest tax bracket (validated).
pub const BASELINE_HIGH_RATE: Scalar = 0.47;

// ---------------------------------------------------------------------------
// Elementary enums
// ---------------------------------------------------------------------------

/// Gender dimension of the cohort grid and time-use table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gender {
    Female,
    Male,
}

impl Gender {
    pub const ALL: [Gender; 2] = [Gender::Female, Gender::Male];

    pub fn as_str(self) -> &'static str {
        match self {
            Gender::Female => "female",
            Gender::Male => "male",
        }
    }

    pub fn index(self) -> usize {
        match self {
            Gender::Female => 0,
            Gender::Male => 1,
        }
    }
}

/// Skill level dimension of the cohort grid.  Skill is fixed at birth
/// and used only for matching labour demand to workers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Skill {
    Low,
    Mid,
    High,
}

impl Skill {
    pub const ALL: [Skill; 3] = [Skill::Low, Skill::Mid, Skill::High];

    pub fn as_str(self) -> &'static str {
        match self {
            Skill::Low => "low",
            Skill::Mid => "mid",
            Skill::High => "high",
        }
    }

    pub fn index(self) -> usize {
        match self {
            Skill::Low => 0,
            Skill::Mid => 1,
            Skill::High => 2,
        }
    }
}

/// Labour-market status dimension of the time-use table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Employed,
    Unemployed,
    /// Out of the labour force (includes people past working age).
    Olf,
}

impl Status {
    pub const ALL: [Status; 3] = [Status::Employed, Status::Unemployed, Status::Olf];

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Employed => "employed",
            Status::Unemployed => "unemployed",
            Status::Olf => "olf",
        }
    }
}

/// Environmental pressures tracked by the pressure accounts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pressure {
    /// Carbon dioxide emissions, tonnes per year.
    Co2,
    /// Reactive nitrogen releases, kilograms per year.
    Nitrogen,
    /// Aggregate air pollutants, kilograms per year.
    AirPollutants,
    /// Primary energy use, gigajoules per year.
    PrimaryEnergy,
    /// Land-system pressure, hectare-equivalents per year.
    LandSystem,
}

impl Pressure {
    pub const ALL: [Pressure; 5] = [
        Pressure::Co2,
        Pressure::Nitrogen,
        Pressure::AirPollutants,
        Pressure::PrimaryEnergy,
        Pressure::LandSystem,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Pressure::Co2 => "co2",
            Pressure::Nitrogen => "nitrogen",
            Pressure::AirPollutants => "air_pollutants",
            Pressure::PrimaryEnergy => "primary_energy",
            Pressure::LandSystem => "land_system",
        }
    }

    pub fn index(self) -> usize {
        Pressure::ALL.iter().position(|p| *p == self).unwrap()
    }

    fn parse(s: &str) -> Option<Pressure> {
        Pressure::ALL.iter().copied().find(|p| p.as_str() == s)
    }
}

/// Accounting basis for a pressure: emitted on the territory, or embodied
/// in what residents finally consume (territorial − exported + imported).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Territorial,
    Footprint,
}

// ---------------------------------------------------------------------------
// Calibration sections
// ---------------------------------------------------------------------------

/// Input–output technology: intermediate coefficients and labour content.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IoTable {
    /// Row-major 6×6 matrix; entry `(i, j)` is euros of sector `i` input
    /// per euro of sector `j` gross output.
    pub coefficients: Vec<Scalar>,
    /// Hours of labour per euro of gross output, by sector, at base-year
    /// productivity.
    pub labour_hours_per_euro: [Scalar; SECTOR_COUNT],
}

impl IoTable {
    pub fn coefficient(&self, input: usize, output: usize) -> Scalar {
        self.coefficients[input * SECTOR_COUNT + output]
    }
}

/// Base-year final demand and the sector composition of each final use.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalDemand {
    /// Domestic final demand by sector in the base year, euros.
    pub base_by_sector: [Money; SECTOR_COUNT],
    /// Share of each sector's final use satisfied by imports.
    pub import_shares: [Scalar; SECTOR_COUNT],
    /// Sector composition of household consumption (sums to one).
    pub consumption_basket: [Scalar; SECTOR_COUNT],
    /// Sector composition of government consumption (sums to one).
    pub government_basket: [Scalar; SECTOR_COUNT],
    /// Sector composition of investment (sums to one).
    pub investment_basket: [Scalar; SECTOR_COUNT],
    /// Sector composition of exports (sums to one).
    pub exports_basket: [Scalar; SECTOR_COUNT],
}

/// One cell of the cohort grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CohortCell {
    pub gender: Gender,
    /// Ten-year age band index, 0 = ages 0–9 … 9 = ages 90 and over.
    pub band: usize,
    pub skill: Skill,
    /// Persons in the cell.
    pub population: Scalar,
    /// Labour-force participation rate of the cell.
    pub participation: Scalar,
    /// The cell's share of base-year employment; the matching weights
    /// used when allocating labour demand to workers.  Sums to one over
    /// the grid.
    pub base_employment_share: Scalar,
}

/// Demographic structure and dynamics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Demography {
    /// All 60 cohort cells in canonical (gender, band, skill) order.
    pub cells: Vec<CohortCell>,
    /// Annual survival probability by age band.
    pub survival: [Scalar; AGE_BANDS],
    /// Fraction of each band promoted to the next band every year (the
    /// ageing flow between ten-year bands; 0.1 means a tenth moves up).
    pub band_promotion_rate: Scalar,
    /// Births in the base year, persons per year.
    pub births_base: Scalar,
    /// Annual relative decline of the birth flow.
    pub births_annual_decline: Scalar,
    /// Share of births that are female.
    pub female_birth_share: Scalar,
    /// Skill mix assigned at birth (low, mid, high), sums to one.
    pub birth_skill_shares: [Scalar; 3],
    /// First band counted as adult (working age starts here).
    pub adult_band: usize,
    /// First band counted as past working age.
    pub elderly_band: usize,
}

/// One weekly time-use profile (hours over the six categories).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeUseProfile {
    pub status: Status,
    pub gender: Gender,
    /// Hours per week in [`TIME_USE_CATEGORIES`] order; sums to 168.
    pub hours: [Scalar; 6],
}

impl TimeUseProfile {
    pub fn paid(&self) -> Scalar {
        self.hours[0]
    }

    pub fn unpaid(&self) -> Scalar {
        self.hours[1]
    }
}

/// Aggregate economic parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EconomyParams {
    /// Annual labour-productivity growth (hours per euro shrink by this).
    pub productivity_growth: Scalar,
    /// Annual growth of the economy-wide average hourly gross wage.
    pub wage_growth: Scalar,
    /// Standard full-time paid hours per week before any reduction.
    pub base_weekly_hours: Scalar,
    /// Base-year gross hourly wages by skill (low, mid, high), euros.
    pub hourly_wages: [Money; 3],
    /// Annual relative convergence of skill wages towards the mean: the
    /// low-skill relative wage rises and the high-skill one falls at this
    /// rate before renormalisation against the employment mix.
    pub skill_wage_convergence: Scalar,
    /// Household consumption in the base year, euros.
    pub consumption_base: Money,
    /// Government consumption in the base year, euros.
    pub government_base: Money,
    /// Annual growth of government consumption.
    pub government_growth: Scalar,
    /// Exports in the base year, euros.
    pub exports_base: Money,
    /// Annual growth of exports.
    pub exports_growth: Scalar,
    /// Annual depreciation rate of the produced capital stock.
    pub depreciation_rate: Scalar,
    /// Produced capital stock at the start of the base year, euros.
    pub capital_base: Money,
    /// Net investment as a share of previous-year output (investment is
    /// replacement of depreciation plus this share of output).
    pub net_investment_share: Scalar,
    /// Production taxes as a share of output.
    pub production_tax_rate: Scalar,
    /// Share of gross operating surplus distributed to households.
    pub dividend_payout: Scalar,
    /// How distributed profits split across household groups; sums to one.
    pub dividend_weights: DividendWeights,
    /// Flat tax rate on distributed capital income (dividends and
    /// interest), levied separately from the progressive wage schedule
    /// in the manner of a dual income tax.
    pub capital_income_tax_rate: Scalar,
    /// Marginal propensity to consume out of disposable income, by
    /// income decile from poorest to richest; non-increasing.
    pub propensities: [Scalar; 10],
    /// Annual interest rate the passive banking ledger applies to
    /// household deposits and firm loans.
    pub interest_rate: Scalar,
}

/// Split of distributed profits across household groups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DividendWeights {
    pub pensioners: Scalar,
    pub olf: Scalar,
    pub unemployed: Scalar,
    pub employed_low: Scalar,
    pub employed_mid: Scalar,
    pub employed_high: Scalar,
}

impl DividendWeights {
    pub fn sum(&self) -> Scalar {
        self.pensioners
            + self.olf
            + self.unemployed
            + self.employed_low
            + self.employed_mid
            + self.employed_high
    }
}

/// Tax brackets and transfer generosity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiscalParams {
    /// `(lower_bound, marginal_rate)` pairs, sorted, first bound zero.
    pub brackets: Vec<(Money, Scalar)>,
    /// Transfer to unemployed and working-age out-of-labour-force
    /// adults, as a share of the average full-time gross annual wage.
    pub benefit_share: Scalar,
    /// Pension per person past working age, same wage base; pensions are
    /// not touched by policy levers.
    pub pension_share: Scalar,
}

/// Environmental intensity of one pressure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PressureIntensity {
    pub pressure: Pressure,
    /// Pressure units per euro of gross output, by sector, base year.
    pub per_sector: [Scalar; SECTOR_COUNT],
    /// Pressure units embodied per euro of imports, base year.
    pub import_intensity: Scalar,
    /// Annual relative decline of all intensities of this pressure.
    pub annual_decline: Scalar,
}

/// A per-capita ecological boundary for one pressure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryParams {
    /// Sustainable annual level per person, in the pressure's unit.
    pub limit_per_capita: Scalar,
    /// Which account the boundary is evaluated against.
    pub basis: Basis,
}

/// Environmental block of the calibration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentParams {
    /// One intensity record per pressure.
    pub intensities: Vec<PressureIntensity>,
    /// Per-capita boundaries keyed by pressure name.
    pub boundaries: BTreeMap<String, BoundaryParams>,
    /// Share of primary energy from non-renewable sources.
    pub nonrenewable_energy_share: Scalar,
    /// Share of primary energy from nuclear sources.
    pub nuclear_energy_share: Scalar,
}

impl EnvironmentParams {
    pub fn intensity(&self, pressure: Pressure) -> &PressureIntensity {
        self.intensities
            .iter()
            .find(|i| i.pressure == pressure)
            .expect("validated: one intensity per pressure")
    }

    pub fn boundary(&self, pressure: Pressure) -> &BoundaryParams {
        self.boundaries
            .get(pressure.as_str())
            .expect("validated: one boundary per pressure")
    }
}

/// Welfare-accounting parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WelfareParams {
    /// Defensive/intermediate/rehabilitative private expenditure under
    /// the narrow accounting convention, as a base-year share of
    /// household consumption.
    pub defensive_share_narrow: Scalar,
    /// Defensive expenditure under the broad convention, same base.
    pub defensive_share_broad: Scalar,
    /// Annual drift of both defensive shares.
    pub defensive_drift: Scalar,
    /// Shadow-economy value added as a base-year share of output.
    pub shadow_share: Scalar,
    /// Annual drift of the shadow share.
    pub shadow_drift: Scalar,
    /// Non-defensive share of government consumption, base year.
    pub government_nondefensive_share: Scalar,
    /// Annual drift of the non-defensive government share.
    pub government_nondefensive_drift: Scalar,
    /// Shadow wage applied to unpaid work hours, euros per hour.
    pub unpaid_wage: Money,
    /// Annual growth of the shadow wage, tracking the replacement cost
    /// of household labour as market wages rise.
    pub unpaid_wage_growth: Scalar,
    /// Inequality-aversion parameter of the Atkinson index.
    pub atkinson_epsilon: Scalar,
    /// Atkinson level below which no welfare loss is charged.
    pub inequality_floor: Scalar,
    /// Extreme-weather damages in the base year, euros.
    pub weather_base: Money,
    /// Annual relative trend of extreme-weather damages.
    pub weather_trend: Scalar,
}

/// Social-threshold parameters for the doughnut report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SocialParams {
    /// Unemployment rate entering the job-availability score.
    pub unemployment_target: Scalar,
    /// Atkinson index entering the income-fairness score.
    pub fairness_threshold: Scalar,
    /// Annual disposable income per person of the poorest decile that
    /// counts as adequate, euros (held fixed in real terms).
    pub adequacy_line: Money,
    /// Normalised scores of outcomes the model does not simulate;
    /// a score of one is exactly at the threshold.
    pub exogenous_outcomes: BTreeMap<String, Scalar>,
}

/// Emission-target pathway the carbon-tax controller steers towards.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarbonTargetParams {
    /// Name scenarios use to reference this pathway.
    pub series_name: String,
    /// Territorial CO₂ the pathway starts from, tonnes per year.
    pub reference_level: Scalar,
    /// Annual relative decline of the target once the policy is active.
    pub annual_decline: Scalar,
    /// Floor of the pathway as a fraction of the reference level.
    pub floor_fraction: Scalar,
}

/// The complete calibration bundle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Calibration {
    pub io: IoTable,
    pub final_demand: FinalDemand,
    pub demography: Demography,
    pub time_use: Vec<TimeUseProfile>,
    pub economy: EconomyParams,
    pub fiscal: FiscalParams,
    pub environment: EnvironmentParams,
    pub welfare: WelfareParams,
    pub social: SocialParams,
    pub carbon_target: CarbonTargetParams,
    /// Unit costs of environmental harms, keyed by component name.
    pub unit_costs: BTreeMap<String, Money>,
}

/// Scalar sections of the bundle, stored together in `params.json`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsFile {
    demography: DemographyParamsFile,
    economy: EconomyParams,
    fiscal: FiscalParams,
    environment: EnvironmentScalarsFile,
    welfare: WelfareParams,
    social: SocialParams,
    carbon_target: CarbonTargetParams,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DemographyParamsFile {
    survival: [Scalar; AGE_BANDS],
    band_promotion_rate: Scalar,
    births_base: Scalar,
    births_annual_decline: Scalar,
    female_birth_share: Scalar,
    birth_skill_shares: [Scalar; 3],
    adult_band: usize,
    elderly_band: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvironmentScalarsFile {
    boundaries: BTreeMap<String, BoundaryParams>,
    nonrenewable_energy_share: Scalar,
    nuclear_energy_share: Scalar,
}

// ---------------------------------------------------------------------------
// Scenario specification
// ---------------------------------------------------------------------------

/// Simulated year range, inclusive on both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Horizon {
    pub start_year: i32,
    pub end_year: i32,
}

impl Default for Horizon {
    fn default() -> Self {
        Horizon {
            start_year: BASE_YEAR,
            end_year: crate::DEFAULT_END_YEAR,
        }
    }
}

/// Window over which active policies phase in linearly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseWindow {
    pub start: i32,
    pub end: i32,
}

impl Default for PhaseWindow {
    fn default() -> Self {
        PhaseWindow {
            start: 2030,
            end: 2035,
        }
    }
}

/// Carbon-tax lever.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarbonTaxParams {
    /// Tax ceiling, euros per tonne of CO₂.
    pub tau_max_eur_per_tonne: Money,
    /// Integral-controller gain per year, in (0, 1].
    pub adjustment_speed: Scalar,
    /// Name of the calibration's emission-target pathway to steer by.
    pub target_series_ref: String,
    /// Emission reduction reached when the tax saturates at its ceiling.
    pub r_max: Scalar,
}

/// Redistribution lever: reshaped marginal rates and benefit top-ups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RedistributionParams {
    /// Marginal rate of the lowest bracket once fully phased in.
    pub final_low_rate: Scalar,
    /// Marginal rate of the highest bracket once fully phased in.
    pub final_high_rate: Scalar,
    /// Benefit multiplier for working-age adults out of the labour force.
    pub benefit_multiplier_olf: Scalar,
    /// Benefit multiplier for the unemployed.
    pub benefit_multiplier_unemployed: Scalar,
}

/// Working-time-reduction lever.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WtrParams {
    /// Fraction by which standard weekly paid hours fall when fully
    /// phased in.
    pub hours_reduction: Scalar,
}

/// A scenario: which levers are active, over what horizon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub horizon: Horizon,
    #[serde(default)]
    pub phase_window: PhaseWindow,
    #[serde(default)]
    pub carbon_tax: Option<CarbonTaxParams>,
    #[serde(default)]
    pub redistribution: Option<RedistributionParams>,
    #[serde(default)]
    pub wtr: Option<WtrParams>,
}

// ---------------------------------------------------------------------------
// Loading
// ---------------------------------------------------------------------------

fn read_to_string(path: &Path) -> Result<String> {
    let mut buf = String::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut buf))
        .map_err(|e| ModelError::io(path.display().to_string(), e))?;
    Ok(buf)
}

fn csv_reader(path: &Path) -> Result<csv::Reader<std::fs::File>> {
    let file =
        std::fs::File::open(path).map_err(|e| ModelError::io(path.display().to_string(), e))?;
    Ok(csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file))
}

fn csv_syntax_error(path: &Path, err: &csv::Error) -> ModelError {
    let line = err
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or_default();
    ModelError::Syntax {
        file: path.display().to_string(),
        line,
        message: err.to_string(),
    }
}

fn schema(location: impl Into<String>, message: impl Into<String>) -> ModelError {
    ModelError::Schema {
        location: location.into(),
        message: message.into(),
    }
}

fn parse_number(path: &Path, line: usize, field: &str, raw: &str) -> Result<Scalar> {
    raw.parse::<Scalar>().map_err(|_| ModelError::Syntax {
        file: path.display().to_string(),
        line,
        message: format!("field `{field}`: `{raw}` is not a number"),
    })
}

fn sector_index(path: &Path, name: &str) -> Result<usize> {
    SECTOR_NAMES
        .iter()
        .position(|s| *s == name)
        .ok_or_else(|| schema(path.display().to_string(), format!("unknown sector `{name}`")))
}

/// Parses `io_matrix.csv`: a header row of sector names and one row per
/// input sector.
fn load_io_matrix(path: &Path) -> Result<Vec<Scalar>> {
    let mut reader = csv_reader(path)?;
    let headers = reader
        .headers()
        .map_err(|e| csv_syntax_error(path, &e))?
        .clone();
    if headers.len() != SECTOR_COUNT + 1 {
        return Err(schema(
            path.display().to_string(),
            format!("expected {} columns, found {}", SECTOR_COUNT + 1, headers.len()),
        ));
    }
    for (k, expected) in SECTOR_NAMES.iter().enumerate() {
        if &headers[k + 1] != *expected {
            return Err(schema(
                path.display().to_string(),
                format!("column {} must be `{expected}`, found `{}`", k + 2, &headers[k + 1]),
            ));
        }
    }
    let mut coefficients = vec![Scalar::NAN; SECTOR_COUNT * SECTOR_COUNT];
    let mut seen = BTreeSet::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_syntax_error(path, &e))?;
        let line = row_idx + 2;
        let i = sector_index(path, &record[0])?;
        if !seen.insert(i) {
            return Err(schema(
                path.display().to_string(),
                format!("duplicate row for sector `{}`", &record[0]),
            ));
        }
        for j in 0..SECTOR_COUNT {
            coefficients[i * SECTOR_COUNT + j] =
                parse_number(path, line, SECTOR_NAMES[j], &record[j + 1])?;
        }
    }
    if seen.len() != SECTOR_COUNT {
        return Err(schema(
            path.display().to_string(),
            format!("expected {} rows, found {}", SECTOR_COUNT, seen.len()),
        ));
    }
    Ok(coefficients)
}

/// Parses a per-sector CSV with named value columns into column arrays.
fn load_sector_columns(path: &Path, columns: &[&str]) -> Result<Vec<[Scalar; SECTOR_COUNT]>> {
    let mut reader = csv_reader(path)?;
    let headers = reader
        .headers()
        .map_err(|e| csv_syntax_error(path, &e))?
        .clone();
    let mut positions = Vec::with_capacity(columns.len());
    for col in columns {
        let pos = headers.iter().position(|h| h == *col).ok_or_else(|| {
            schema(path.display().to_string(), format!("missing column `{col}`"))
        })?;
        positions.push(pos);
    }
    let mut out = vec![[Scalar::NAN; SECTOR_COUNT]; columns.len()];
    let mut seen = BTreeSet::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_syntax_error(path, &e))?;
        let line = row_idx + 2;
        let s = sector_index(path, &record[0])?;
        if !seen.insert(s) {
            return Err(schema(
                path.display().to_string(),
                format!("duplicate row for sector `{}`", &record[0]),
            ));
        }
        for (c, &pos) in positions.iter().enumerate() {
            out[c][s] = parse_number(path, line, columns[c], &record[pos])?;
        }
    }
    if seen.len() != SECTOR_COUNT {
        return Err(schema(
            path.display().to_string(),
            format!("expected {} sector rows, found {}", SECTOR_COUNT, seen.len()),
        ));
    }
    Ok(out)
}

fn parse_gender(path: &Path, raw: &str) -> Result<Gender> {
    match raw {
        "female" => Ok(Gender::Female),
        "male" => Ok(Gender::Male),
        other => Err(schema(
            path.display().to_string(),
            format!("unknown gender `{other}`"),
        )),
    }
}

fn parse_skill(path: &Path, raw: &str) -> Result<Skill> {
    match raw {
        "low" => Ok(Skill::Low),
        "mid" => Ok(Skill::Mid),
        "high" => Ok(Skill::High),
        other => Err(schema(
            path.display().to_string(),
            format!("unknown skill `{other}`"),
        )),
    }
}

fn parse_status(path: &Path, raw: &str) -> Result<Status> {
    match raw {
        "employed" => Ok(Status::Employed),
        "unemployed" => Ok(Status::Unemployed),
        "olf" => Ok(Status::Olf),
        other => Err(schema(
            path.display().to_string(),
            format!("unknown status `{other}`"),
        )),
    }
}

/// Parses `cohorts.csv` into the 60-cell grid in canonical order.
fn load_cohorts(path: &Path) -> Result<Vec<CohortCell>> {
    let mut reader = csv_reader(path)?;
    let headers = reader
        .headers()
        .map_err(|e| csv_syntax_error(path, &e))?
        .clone();
    let expected = [
        "gender",
        "age_band",
        "skill",
        "population",
        "participation",
        "base_employment_share",
    ];
    let found: Vec<&str> = headers.iter().collect();
    if found != expected {
        return Err(schema(
            path.display().to_string(),
            format!("header must be `{}`", expected.join(",")),
        ));
    }
    let mut cells: BTreeMap<(Gender, usize, Skill), CohortCell> = BTreeMap::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_syntax_error(path, &e))?;
        let line = row_idx + 2;
        let gender = parse_gender(path, &record[0])?;
        let band = record[1].parse::<usize>().map_err(|_| ModelError::Syntax {
            file: path.display().to_string(),
            line,
            message: format!("age band `{}` is not an integer", &record[1]),
        })?;
        if band >= AGE_BANDS {
            return Err(ModelError::Range {
                field: "age_band".into(),
                value: band as f64,
                constraint: format!("0 <= band < {AGE_BANDS}"),
            });
        }
        let skill = parse_skill(path, &record[2])?;
        let population = parse_number(path, line, "population", &record[3])?;
        let participation = parse_number(path, line, "participation", &record[4])?;
        let base_employment_share =
            parse_number(path, line, "base_employment_share", &record[5])?;
        let key = (gender, band, skill);
        if cells
            .insert(
                key,
                CohortCell {
                    gender,
                    band,
                    skill,
                    population,
                    participation,
                    base_employment_share,
                },
            )
            .is_some()
        {
            return Err(schema(
                path.display().to_string(),
                format!("duplicate cohort cell at line {line}"),
            ));
        }
    }
    let expected_cells = 2 * AGE_BANDS * Skill::ALL.len();
    if cells.len() != expected_cells {
        return Err(schema(
            path.display().to_string(),
            format!("expected {expected_cells} cohort cells, found {}", cells.len()),
        ));
    }
    Ok(cells.into_values().collect())
}

/// Parses `time_use.csv` into six profiles in canonical order.
fn load_time_use(path: &Path) -> Result<Vec<TimeUseProfile>> {
    let mut reader = csv_reader(path)?;
    let headers = reader
        .headers()
        .map_err(|e| csv_syntax_error(path, &e))?
        .clone();
    let expected_headers: Vec<&str> = ["status", "gender"]
        .into_iter()
        .chain(TIME_USE_CATEGORIES)
        .collect();
    let found: Vec<&str> = headers.iter().collect();
    if found != expected_headers {
        return Err(schema(
            path.display().to_string(),
            format!("header must be `{}`", expected_headers.join(",")),
        ));
    }
    let mut profiles: BTreeMap<(Status, Gender), TimeUseProfile> = BTreeMap::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_syntax_error(path, &e))?;
        let line = row_idx + 2;
        let status = parse_status(path, &record[0])?;
        let gender = parse_gender(path, &record[1])?;
        let mut hours = [Scalar::NAN; 6];
        for (k, name) in TIME_USE_CATEGORIES.iter().enumerate() {
            hours[k] = parse_number(path, line, name, &record[k + 2])?;
        }
        if profiles
            .insert(
                (status, gender),
                TimeUseProfile {
                    status,
                    gender,
                    hours,
                },
            )
            .is_some()
        {
            return Err(schema(
                path.display().to_string(),
                format!("duplicate profile at line {line}"),
            ));
        }
    }
    if profiles.len() != 6 {
        return Err(schema(
            path.display().to_string(),
            format!("expected 6 profiles, found {}", profiles.len()),
        ));
    }
    Ok(profiles.into_values().collect())
}

/// Parses `intensities.csv` (one row per pressure).
fn load_intensities(path: &Path) -> Result<Vec<PressureIntensity>> {
    let mut reader = csv_reader(path)?;
    let headers = reader
        .headers()
        .map_err(|e| csv_syntax_error(path, &e))?
        .clone();
    let expected_headers: Vec<&str> = ["pressure"]
        .into_iter()
        .chain(SECTOR_NAMES)
        .chain(["import_intensity", "annual_decline"])
        .collect();
    let found: Vec<&str> = headers.iter().collect();
    if found != expected_headers {
        return Err(schema(
            path.display().to_string(),
            format!("header must be `{}`", expected_headers.join(",")),
        ));
    }
    let mut rows: BTreeMap<Pressure, PressureIntensity> = BTreeMap::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_syntax_error(path, &e))?;
        let line = row_idx + 2;
        let pressure = Pressure::parse(&record[0]).ok_or_else(|| {
            schema(
                path.display().to_string(),
                format!("unknown pressure `{}`", &record[0]),
            )
        })?;
        let mut per_sector = [Scalar::NAN; SECTOR_COUNT];
        for s in 0..SECTOR_COUNT {
            per_sector[s] = parse_number(path, line, SECTOR_NAMES[s], &record[s + 1])?;
        }
        let import_intensity =
            parse_number(path, line, "import_intensity", &record[SECTOR_COUNT + 1])?;
        let annual_decline =
            parse_number(path, line, "annual_decline", &record[SECTOR_COUNT + 2])?;
        if rows
            .insert(
                pressure,
                PressureIntensity {
                    pressure,
                    per_sector,
                    import_intensity,
                    annual_decline,
                },
            )
            .is_some()
        {
            return Err(schema(
                path.display().to_string(),
                format!("duplicate pressure at line {line}"),
            ));
        }
    }
    if rows.len() != Pressure::ALL.len() {
        return Err(schema(
            path.display().to_string(),
            format!("expected {} pressures, found {}", Pressure::ALL.len(), rows.len()),
        ));
    }
    Ok(rows.into_values().collect())
}

/// Parses `unit_costs.csv` into a name → cost map.
fn load_unit_costs(path: &Path) -> Result<BTreeMap<String, Money>> {
    let mut reader = csv_reader(path)?;
    let mut costs = BTreeMap::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_syntax_error(path, &e))?;
        let line = row_idx + 2;
        if record.len() != 2 {
            return Err(schema(
                path.display().to_string(),
                format!("line {line}: expected 2 fields"),
            ));
        }
        let cost = parse_number(path, line, "unit_cost", &record[1])?;
        if costs.insert(record[0].to_string(), cost).is_some() {
            return Err(schema(
                path.display().to_string(),
                format!("duplicate unit cost `{}`", &record[0]),
            ));
        }
    }
    Ok(costs)
}

impl Calibration {
    /// Loads and validates a calibration bundle from a directory.
    pub fn load(dir: &Path) -> Result<Calibration> {
        let io_coefficients = load_io_matrix(&dir.join("io_matrix.csv"))?;
        let finals = load_sector_columns(
            &dir.join("final_demand.csv"),
            &[
                "base_final_demand",
                "import_share",
                "consumption_basket",
                "government_basket",
                "investment_basket",
                "exports_basket",
            ],
        )?;
        let labour = load_sector_columns(&dir.join("labour.csv"), &["hours_per_euro"])?;
        let cells = load_cohorts(&dir.join("cohorts.csv"))?;
        let time_use = load_time_use(&dir.join("time_use.csv"))?;
        let intensities = load_intensities(&dir.join("intensities.csv"))?;
        let unit_costs = load_unit_costs(&dir.join("unit_costs.csv"))?;

        let params_path = dir.join("params.json");
        let params_raw = read_to_string(&params_path)?;
        let params: ParamsFile =
            serde_json::from_str(&params_raw).map_err(|e| ModelError::Syntax {
                file: params_path.display().to_string(),
                line: e.line(),
                message: e.to_string(),
            })?;

        let calibration = Calibration {
            io: IoTable {
                coefficients: io_coefficients,
                labour_hours_per_euro: labour[0],
            },
            final_demand: FinalDemand {
                base_by_sector: finals[0],
                import_shares: finals[1],
                consumption_basket: finals[2],
                government_basket: finals[3],
                investment_basket: finals[4],
                exports_basket: finals[5],
            },
            demography: Demography {
                cells,
                survival: params.demography.survival,
                band_promotion_rate: params.demography.band_promotion_rate,
                births_base: params.demography.births_base,
                births_annual_decline: params.demography.births_annual_decline,
                female_birth_share: params.demography.female_birth_share,
                birth_skill_shares: params.demography.birth_skill_shares,
                adult_band: params.demography.adult_band,
                elderly_band: params.demography.elderly_band,
            },
            time_use,
            economy: params.economy,
            fiscal: params.fiscal,
            environment: EnvironmentParams {
                intensities,
                boundaries: params.environment.boundaries,
                nonrenewable_energy_share: params.environment.nonrenewable_energy_share,
                nuclear_energy_share: params.environment.nuclear_energy_share,
            },
            welfare: params.welfare,
            social: params.social,
            carbon_target: params.carbon_target,
            unit_costs,
        };
        calibration.validate()?;
        Ok(calibration)
    }

    /// Writes this calibration out as a bundle directory.
    pub fn write_bundle(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| ModelError::io(dir.display().to_string(), e))?;
        let write = |name: &str, content: String| -> Result<()> {
            let path = dir.join(name);
            std::fs::write(&path, content)
                .map_err(|e| ModelError::io(path.display().to_string(), e))
        };

        let mut io_csv = String::from("sector");
        for s in SECTOR_NAMES {
            io_csv.push(',');
            io_csv.push_str(s);
        }
        io_csv.push('\n');
        for i in 0..SECTOR_COUNT {
            io_csv.push_str(SECTOR_NAMES[i]);
            for j in 0..SECTOR_COUNT {
                io_csv.push_str(&format!(",{}", self.io.coefficient(i, j)));
            }
            io_csv.push('\n');
        }
        write("io_matrix.csv", io_csv)?;

        let mut fd_csv = String::from(
            "sector,base_final_demand,import_share,consumption_basket,government_basket,investment_basket,exports_basket\n",
        );
        for s in 0..SECTOR_COUNT {
            fd_csv.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                SECTOR_NAMES[s],
                self.final_demand.base_by_sector[s],
                self.final_demand.import_shares[s],
                self.final_demand.consumption_basket[s],
                self.final_demand.government_basket[s],
                self.final_demand.investment_basket[s],
                self.final_demand.exports_basket[s],
            ));
        }
        write("final_demand.csv", fd_csv)?;

        let mut labour_csv = String::from("sector,hours_per_euro\n");
        for s in 0..SECTOR_COUNT {
            labour_csv.push_str(&format!(
                "{},{}\n",
                SECTOR_NAMES[s], self.io.labour_hours_per_euro[s]
            ));
        }
        write("labour.csv", labour_csv)?;

        let mut cohorts_csv =
            String::from("gender,age_band,skill,population,participation,base_employment_share\n");
        for cell in &self.demography.cells {
            cohorts_csv.push_str(&format!(
                "{},{},{},{},{},{}\n",
                cell.gender.as_str(),
                cell.band,
                cell.skill.as_str(),
                cell.population,
                cell.participation,
                cell.base_employment_share,
            ));
        }
        write("cohorts.csv", cohorts_csv)?;

        let mut tu_csv = String::from("status,gender");
        for c in TIME_USE_CATEGORIES {
            tu_csv.push(',');
            tu_csv.push_str(c);
        }
        tu_csv.push('\n');
        for p in &self.time_use {
            tu_csv.push_str(&format!("{},{}", p.status.as_str(), p.gender.as_str()));
            for h in p.hours {
                tu_csv.push_str(&format!(",{h}"));
            }
            tu_csv.push('\n');
        }
        write("time_use.csv", tu_csv)?;

        let mut int_csv = String::from("pressure");
        for s in SECTOR_NAMES {
            int_csv.push(',');
            int_csv.push_str(s);
        }
        int_csv.push_str(",import_intensity,annual_decline\n");
        for row in &self.environment.intensities {
            int_csv.push_str(row.pressure.as_str());
            for v in row.per_sector {
                int_csv.push_str(&format!(",{v}"));
            }
            int_csv.push_str(&format!(",{},{}\n", row.import_intensity, row.annual_decline));
        }
        write("intensities.csv", int_csv)?;

        let mut uc_csv = String::from("component,unit_cost\n");
        for (name, cost) in &self.unit_costs {
            uc_csv.push_str(&format!("{name},{cost}\n"));
        }
        write("unit_costs.csv", uc_csv)?;

        let params = ParamsFile {
            demography: DemographyParamsFile {
                survival: self.demography.survival,
                band_promotion_rate: self.demography.band_promotion_rate,
                births_base: self.demography.births_base,
                births_annual_decline: self.demography.births_annual_decline,
                female_birth_share: self.demography.female_birth_share,
                birth_skill_shares: self.demography.birth_skill_shares,
                adult_band: self.demography.adult_band,
                elderly_band: self.demography.elderly_band,
            },
            economy: self.economy.clone(),
            fiscal: self.fiscal.clone(),
            environment: EnvironmentScalarsFile {
                boundaries: self.environment.boundaries.clone(),
                nonrenewable_energy_share: self.environment.nonrenewable_energy_share,
                nuclear_energy_share: self.environment.nuclear_energy_share,
            },
            welfare: self.welfare.clone(),
            social: self.social.clone(),
            carbon_target: self.carbon_target.clone(),
        };
        let params_json = serde_json::to_string_pretty(&params).expect("params serialize");
        write("params.json", params_json)?;
        Ok(())
    }

    /// SHA-256 of the canonical JSON serialisation; identifies the
    /// calibration in trajectory files.
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_string(self).expect("calibration serialize");
        let mut hasher = Sha256::new();
        hasher.update(json.as_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Base-year gross domestic product implied by the stored final
    /// demand (sum over sectors).
    pub fn base_gdp(&self) -> Money {
        self.final_demand.base_by_sector.iter().sum()
    }

    /// Base-year investment implied by replacement plus the net
    /// investment share of base output.
    pub fn base_investment(&self) -> Money {
        self.economy.depreciation_rate * self.economy.capital_base
            + self.economy.net_investment_share * self.base_gdp()
    }

    /// Checks every documented range and consistency rule.
    pub fn validate(&self) -> Result<()> {
        let range = |field: &str, value: Scalar, ok: bool, constraint: &str| -> Result<()> {
            if ok && value.is_finite() {
                Ok(())
            } else {
                Err(ModelError::Range {
                    field: field.into(),
                    value,
                    constraint: constraint.into(),
                })
            }
        };

        // Input–output block.
        if self.io.coefficients.len() != SECTOR_COUNT * SECTOR_COUNT {
            return Err(schema("io_matrix", "matrix must be 6x6"));
        }
        for (k, &a) in self.io.coefficients.iter().enumerate() {
            range(&format!("io_matrix[{k}]"), a, a >= 0.0, ">= 0")?;
        }
        let rho = num::spectral_radius(
            &self.io.coefficients,
            SECTOR_COUNT,
            SPECTRAL_TOL,
            SPECTRAL_MAX_ITER,
        );
        if !(rho < 1.0) {
            return Err(ModelError::SingularEconomy { rho });
        }
        for (s, &l) in self.io.labour_hours_per_euro.iter().enumerate() {
            range(&format!("labour[{}]", SECTOR_NAMES[s]), l, l > 0.0, "> 0")?;
        }

        // Final demand block.
        for s in 0..SECTOR_COUNT {
            let f = self.final_demand.base_by_sector[s];
            range(&format!("base_final_demand[{}]", SECTOR_NAMES[s]), f, f >= 0.0, ">= 0")?;
            let m = self.final_demand.import_shares[s];
            range(
                &format!("import_share[{}]", SECTOR_NAMES[s]),
                m,
                (0.0..=0.95).contains(&m),
                "in [0, 0.95]",
            )?;
        }
        for (name, basket) in [
            ("consumption_basket", &self.final_demand.consumption_basket),
            ("government_basket", &self.final_demand.government_basket),
            ("investment_basket", &self.final_demand.investment_basket),
            ("exports_basket", &self.final_demand.exports_basket),
        ] {
            let mut sum = 0.0;
            for (s, &b) in basket.iter().enumerate() {
                range(&format!("{name}[{}]", SECTOR_NAMES[s]), b, b >= 0.0, ">= 0")?;
                sum += b;
            }
            range(name, sum, (sum - 1.0).abs() <= UNIT_SUM_TOL, "sums to 1")?;
        }

        // Demography block.
        let d = &self.demography;
        let expected_cells = 2 * AGE_BANDS * Skill::ALL.len();
        if d.cells.len() != expected_cells {
            return Err(schema("cohorts", format!("expected {expected_cells} cells")));
        }
        let mut employment_share_sum = 0.0;
        for cell in &d.cells {
            let tag = format!("{},{},{}", cell.gender.as_str(), cell.band, cell.skill.as_str());
            range(&format!("population[{tag}]"), cell.population, cell.population >= 0.0, ">= 0")?;
            range(
                &format!("participation[{tag}]"),
                cell.participation,
                (0.0..=1.0).contains(&cell.participation),
                "in [0, 1]",
            )?;
            range(
                &format!("base_employment_share[{tag}]"),
                cell.base_employment_share,
                cell.base_employment_share >= 0.0,
                ">= 0",
            )?;
            employment_share_sum += cell.base_employment_share;
            if cell.band < d.adult_band && cell.participation != 0.0 {
                return Err(ModelError::Range {
                    field: format!("participation[band {}]", cell.band),
                    value: cell.participation,
                    constraint: "zero below the adult band".into(),
                });
            }
        }
        range(
            "base_employment_share",
            employment_share_sum,
            (employment_share_sum - 1.0).abs() <= UNIT_SUM_TOL,
            "sums to 1",
        )?;
        for (b, &s) in d.survival.iter().enumerate() {
            range(&format!("survival[{b}]"), s, s > 0.0 && s <= 1.0, "in (0, 1]")?;
        }
        range(
            "band_promotion_rate",
            d.band_promotion_rate,
            (0.0..1.0).contains(&d.band_promotion_rate),
            "in [0, 1)",
        )?;
        range("births_base", d.births_base, d.births_base >= 0.0, ">= 0")?;
        range(
            "births_annual_decline",
            d.births_annual_decline,
            (0.0..=0.05).contains(&d.births_annual_decline),
            "in [0, 0.05]",
        )?;
        range(
            "female_birth_share",
            d.female_birth_share,
            (0.4..=0.6).contains(&d.female_birth_share),
            "in [0.4, 0.6]",
        )?;
        let birth_mix: Scalar = d.birth_skill_shares.iter().sum();
        range(
            "birth_skill_shares",
            birth_mix,
            (birth_mix - 1.0).abs() <= UNIT_SUM_TOL
                && d.birth_skill_shares.iter().all(|&s| s >= 0.0),
            "non-negative, sums to 1",
        )?;
        if !(d.adult_band >= 1 && d.adult_band < d.elderly_band && d.elderly_band < AGE_BANDS) {
            return Err(schema("demography", "need 1 <= adult_band < elderly_band < 10"));
        }

        // Time use block.
        if self.time_use.len() != 6 {
            return Err(schema("time_use", "expected 6 profiles"));
        }
        for p in &self.time_use {
            let label = format!("{}/{}", p.status.as_str(), p.gender.as_str());
            let mut sum = 0.0;
            for (k, &h) in p.hours.iter().enumerate() {
                if !(h >= 0.0 && h.is_finite()) {
                    return Err(ModelError::DegenerateProfile(
                        label,
                        format!("negative hours in `{}`", TIME_USE_CATEGORIES[k]),
                    ));
                }
                sum += h;
            }
            if (sum - WEEK_HOURS).abs() > UNIT_SUM_TOL {
                return Err(ModelError::DegenerateProfile(
                    label,
                    format!("weekly hours sum to {sum}, expected {WEEK_HOURS}"),
                ));
            }
            match p.status {
                Status::Employed => {
                    if p.paid() <= 0.0 {
                        return Err(ModelError::DegenerateProfile(
                            label,
                            "employed profile needs positive paid hours".into(),
                        ));
                    }
                }
                Status::Unemployed | Status::Olf => {
                    if p.paid() != 0.0 {
                        return Err(ModelError::DegenerateProfile(
                            label,
                            "only the employed profile may contain paid hours".into(),
                        ));
                    }
                }
            }
        }

        // Economy block.
        let e = &self.economy;
        range(
            "productivity_growth",
            e.productivity_growth,
            e.productivity_growth.abs() < 0.05,
            "|g| < 0.05",
        )?;
        range("wage_growth", e.wage_growth, e.wage_growth.abs() < 0.05, "|g| < 0.05")?;
        range(
            "base_weekly_hours",
            e.base_weekly_hours,
            e.base_weekly_hours > 1.0 && e.base_weekly_hours < 80.0,
            "in (1, 80)",
        )?;
        for (k, &w) in e.hourly_wages.iter().enumerate() {
            range(&format!("hourly_wages[{k}]"), w, w > 0.0, "> 0")?;
        }
        if !(e.hourly_wages[0] <= e.hourly_wages[1] && e.hourly_wages[1] <= e.hourly_wages[2]) {
            return Err(schema("hourly_wages", "must be non-decreasing in skill"));
        }
        range(
            "skill_wage_convergence",
            e.skill_wage_convergence,
            e.skill_wage_convergence.abs() < 0.05,
            "|g| < 0.05",
        )?;
        range("consumption_base", e.consumption_base, e.consumption_base > 0.0, "> 0")?;
        range("government_base", e.government_base, e.government_base >= 0.0, ">= 0")?;
        range(
            "government_growth",
            e.government_growth,
            e.government_growth.abs() < 0.05,
            "|g| < 0.05",
        )?;
        range("exports_base", e.exports_base, e.exports_base >= 0.0, ">= 0")?;
        range("exports_growth", e.exports_growth, e.exports_growth.abs() < 0.05, "|g| < 0.05")?;
        range(
            "depreciation_rate",
            e.depreciation_rate,
            e.depreciation_rate > 0.0 && e.depreciation_rate < 1.0,
            "in (0, 1)",
        )?;
        range("capital_base", e.capital_base, e.capital_base > 0.0, "> 0")?;
        range(
            "net_investment_share",
            e.net_investment_share,
            (0.0..0.9).contains(&e.net_investment_share),
            "in [0, 0.9)",
        )?;
        range(
            "production_tax_rate",
            e.production_tax_rate,
            (0.0..0.9).contains(&e.production_tax_rate),
            "in [0, 0.9)",
        )?;
        range(
            "dividend_payout",
            e.dividend_payout,
            (0.0..=1.0).contains(&e.dividend_payout),
            "in [0, 1]",
        )?;
        let dw_sum = e.dividend_weights.sum();
        range("dividend_weights", dw_sum, (dw_sum - 1.0).abs() <= UNIT_SUM_TOL, "sums to 1")?;
        range(
            "capital_income_tax_rate",
            e.capital_income_tax_rate,
            (0.0..=0.6).contains(&e.capital_income_tax_rate),
            "in [0, 0.6]",
        )?;
        for (d, &p) in e.propensities.iter().enumerate() {
            range(&format!("propensities[{d}]"), p, p > 0.0 && p <= 1.5, "in (0, 1.5]")?;
        }
        for pair in e.propensities.windows(2) {
            if pair[1] > pair[0] + UNIT_SUM_TOL {
                return Err(schema("propensities", "must be non-increasing across deciles"));
            }
        }
        range(
            "interest_rate",
            e.interest_rate,
            (0.0..0.2).contains(&e.interest_rate),
            "in [0, 0.2)",
        )?;

        // Fiscal block.
        let f = &self.fiscal;
        if f.brackets.is_empty() || f.brackets[0].0 != 0.0 {
            return Err(schema("brackets", "first bracket must start at zero"));
        }
        for w in f.brackets.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(schema("brackets", "lower bounds must be strictly increasing"));
            }
            if w[1].1 < w[0].1 {
                return Err(schema("brackets", "marginal rates must be non-decreasing"));
            }
        }
        for &(lower, rate) in &f.brackets {
            range(&format!("bracket_rate[{lower}]"), rate, rate > 0.0 && rate < 1.0, "in (0, 1)")?;
        }
        let low = f.brackets.first().expect("non-empty").1;
        let high = f.brackets.last().expect("non-empty").1;
        range(
            "brackets.lowest_rate",
            low,
            (low - BASELINE_LOW_RATE).abs() <= 1e-12,
            "baseline lowest marginal rate is 0.19",
        )?;
        range(
            "brackets.highest_rate",
            high,
            (high - BASELINE_HIGH_RATE).abs() <= 1e-12,
            "baseline highest marginal rate is 0.47",
        )?;
        range("benefit_share", f.benefit_share, (0.0..1.0).contains(&f.benefit_share), "in [0, 1)")?;
        range("pension_share", f.pension_share, (0.0..1.0).contains(&f.pension_share), "in [0, 1)")?;

        // Environment block.
        let env = &self.environment;
        if env.intensities.len() != Pressure::ALL.len() {
            return Err(schema("intensities", "expected one row per pressure"));
        }
        for row in &env.intensities {
            for (s, &v) in row.per_sector.iter().enumerate() {
                range(
                    &format!("intensity[{},{}]", row.pressure.as_str(), SECTOR_NAMES[s]),
                    v,
                    v >= 0.0,
                    ">= 0",
                )?;
            }
            range(
                &format!("import_intensity[{}]", row.pressure.as_str()),
                row.import_intensity,
                row.import_intensity >= 0.0,
                ">= 0",
            )?;
            range(
                &format!("annual_decline[{}]", row.pressure.as_str()),
                row.annual_decline,
                (0.0..=0.05).contains(&row.annual_decline),
                "in [0, 0.05]",
            )?;
        }
        for p in Pressure::ALL {
            let b = env
                .boundaries
                .get(p.as_str())
                .ok_or_else(|| schema("boundaries", format!("missing boundary for `{}`", p.as_str())))?;
            range(
                &format!("boundary[{}]", p.as_str()),
                b.limit_per_capita,
                b.limit_per_capita > 0.0,
                "> 0",
            )?;
        }
        if env.boundaries.len() != Pressure::ALL.len() {
            return Err(schema("boundaries", "unknown extra boundary entries"));
        }
        range(
            "nonrenewable_energy_share",
            env.nonrenewable_energy_share,
            (0.0..=1.0).contains(&env.nonrenewable_energy_share),
            "in [0, 1]",
        )?;
        range(
            "nuclear_energy_share",
            env.nuclear_energy_share,
            (0.0..=1.0).contains(&env.nuclear_energy_share),
            "in [0, 1]",
        )?;
        range(
            "energy_shares",
            env.nonrenewable_energy_share + env.nuclear_energy_share,
            env.nonrenewable_energy_share + env.nuclear_energy_share <= 1.0,
            "nonrenewable + nuclear <= 1",
        )?;

        // Welfare block.
        let w = &self.welfare;
        for (name, v) in [
            ("defensive_share_narrow", w.defensive_share_narrow),
            ("defensive_share_broad", w.defensive_share_broad),
            ("shadow_share", w.shadow_share),
            ("government_nondefensive_share", w.government_nondefensive_share),
        ] {
            range(name, v, (0.0..1.0).contains(&v), "in [0, 1)")?;
        }
        for (name, v) in [
            ("defensive_drift", w.defensive_drift),
            ("shadow_drift", w.shadow_drift),
            ("government_nondefensive_drift", w.government_nondefensive_drift),
            ("weather_trend", w.weather_trend),
        ] {
            range(name, v, v.abs() < 0.05, "|drift| < 0.05")?;
        }
        range("unpaid_wage", w.unpaid_wage, w.unpaid_wage > 0.0, "> 0")?;
        range(
            "unpaid_wage_growth",
            w.unpaid_wage_growth,
            (0.0..=0.02).contains(&w.unpaid_wage_growth),
            "in [0, 0.02]",
        )?;
        range("atkinson_epsilon", w.atkinson_epsilon, w.atkinson_epsilon > 0.0, "> 0")?;
        range(
            "inequality_floor",
            w.inequality_floor,
            (0.0..1.0).contains(&w.inequality_floor),
            "in [0, 1)",
        )?;
        range("weather_base", w.weather_base, w.weather_base >= 0.0, ">= 0")?;

        // Social block.
        let s = &self.social;
        range(
            "unemployment_target",
            s.unemployment_target,
            s.unemployment_target > 0.0 && s.unemployment_target < 0.2,
            "in (0, 0.2)",
        )?;
        range("fairness_threshold", s.fairness_threshold, s.fairness_threshold > 0.0, "> 0")?;
        range("adequacy_line", s.adequacy_line, s.adequacy_line > 0.0, "> 0")?;
        for (name, &v) in &s.exogenous_outcomes {
            range(&format!("exogenous_outcomes[{name}]"), v, v >= 0.0, ">= 0")?;
        }

        // Carbon target block.
        let ct = &self.carbon_target;
        if ct.series_name.is_empty() {
            return Err(schema("carbon_target.series_name", "must be non-empty"));
        }
        range("carbon_reference_level", ct.reference_level, ct.reference_level > 0.0, "> 0")?;
        range(
            "carbon_annual_decline",
            ct.annual_decline,
            (0.0..=0.2).contains(&ct.annual_decline),
            "in [0, 0.2]",
        )?;
        range(
            "carbon_floor_fraction",
            ct.floor_fraction,
            ct.floor_fraction > 0.0 && ct.floor_fraction <= 1.0,
            "in (0, 1]",
        )?;

        // Unit costs required by the environmental components.
        for required in [
            "air_pollution",
            "nitrogen_pollution",
            "climate_breakdown",
            "energy_depletion",
            "nuclear_power",
        ] {
            let cost = self
                .unit_costs
                .get(required)
                .ok_or_else(|| ModelError::MissingUnitCost(required.into()))?;
            range(&format!("unit_cost[{required}]"), *cost, *cost >= 0.0, ">= 0")?;
        }

        // Cross-checks, after every field has passed its own bounds.
        // The stored base final demand must equal the one implied by the
        // expenditure components, so the base year is internally closed.
        let investment_base = self.base_investment();
        for s in 0..SECTOR_COUNT {
            let gross = e.consumption_base * self.final_demand.consumption_basket[s]
                + e.government_base * self.final_demand.government_basket[s]
                + investment_base * self.final_demand.investment_basket[s]
                + e.exports_base * self.final_demand.exports_basket[s];
            let implied = gross * (1.0 - self.final_demand.import_shares[s]);
            let stored = self.final_demand.base_by_sector[s];
            let scale = stored.abs().max(1.0);
            if ((implied - stored) / scale).abs() > FINAL_DEMAND_CONSISTENCY_TOL {
                return Err(ModelError::Range {
                    field: format!("base_final_demand[{}]", SECTOR_NAMES[s]),
                    value: stored,
                    constraint: format!("consistent with expenditure components (implied {implied})"),
                });
            }
        }
        Ok(())
    }
}

impl ScenarioSpec {
    /// Loads and validates a scenario specification from a JSON file.
    pub fn load(path: &Path) -> Result<ScenarioSpec> {
        let raw = read_to_string(path)?;
        let spec: ScenarioSpec = serde_json::from_str(&raw).map_err(|e| ModelError::Syntax {
            file: path.display().to_string(),
            line: e.line(),
            message: e.to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }

    /// Checks lever parameters, the horizon, and the phase window.
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
        {
            return Err(schema("scenario.name", "must be non-empty lowercase [a-z0-9_]"));
        }
        let h = &self.horizon;
        if h.start_year < BASE_YEAR || h.end_year <= h.start_year || h.end_year > 2100 {
            return Err(ModelError::BadHorizon {
                start: h.start_year,
                end: h.end_year,
                message: format!("need {BASE_YEAR} <= start < end <= 2100"),
            });
        }
        if self.phase_window.start >= self.phase_window.end {
            return Err(schema("scenario.phase_window", "need start < end"));
        }
        if self.phase_window.start < h.start_year || self.phase_window.end > h.end_year {
            return Err(ModelError::BadHorizon {
                start: h.start_year,
                end: h.end_year,
                message: format!(
                    "phase window {}:{} must lie inside the horizon",
                    self.phase_window.start, self.phase_window.end
                ),
            });
        }
        let range = |field: &str, value: Scalar, ok: bool, constraint: &str| -> Result<()> {
            if ok && value.is_finite() {
                Ok(())
            } else {
                Err(ModelError::Range {
                    field: field.into(),
                    value,
                    constraint: constraint.into(),
                })
            }
        };
        if let Some(ct) = &self.carbon_tax {
            range(
                "carbon_tax.tau_max_eur_per_tonne",
                ct.tau_max_eur_per_tonne,
                ct.tau_max_eur_per_tonne >= 0.0,
                ">= 0",
            )?;
            range(
                "carbon_tax.adjustment_speed",
                ct.adjustment_speed,
                ct.adjustment_speed > 0.0 && ct.adjustment_speed <= 1.0,
                "in (0, 1]",
            )?;
            range(
                "carbon_tax.r_max",
                ct.r_max,
                (0.0..=1.0).contains(&ct.r_max),
                "in [0, 1]",
            )?;
            if ct.target_series_ref.is_empty() {
                return Err(schema("carbon_tax.target_series_ref", "must be non-empty"));
            }
        }
        if let Some(rd) = &self.redistribution {
            range(
                "redistribution.final_low_rate",
                rd.final_low_rate,
                rd.final_low_rate > 0.0 && rd.final_low_rate < 1.0,
                "in (0, 1)",
            )?;
            range(
                "redistribution.final_high_rate",
                rd.final_high_rate,
                rd.final_high_rate > 0.0 && rd.final_high_rate < 1.0,
                "in (0, 1)",
            )?;
            if rd.final_high_rate < rd.final_low_rate {
                return Err(schema("redistribution", "final_high_rate must be >= final_low_rate"));
            }
            range(
                "redistribution.benefit_multiplier_olf",
                rd.benefit_multiplier_olf,
                rd.benefit_multiplier_olf >= 1.0,
                ">= 1",
            )?;
            range(
                "redistribution.benefit_multiplier_unemployed",
                rd.benefit_multiplier_unemployed,
                rd.benefit_multiplier_unemployed >= 1.0,
                ">= 1",
            )?;
        }
        if let Some(wtr) = &self.wtr {
            range(
                "wtr.hours_reduction",
                wtr.hours_reduction,
                (0.0..=0.5).contains(&wtr.hours_reduction),
                "in [0, 0.5]",
            )?;
        }
        Ok(())
    }
}
