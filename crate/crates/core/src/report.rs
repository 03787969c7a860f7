//! Tabular emission of trajectories.
//!
//! Every run produces four row-oriented tables — levels, base-year-100
//! indices, the doughnut scoreboard, and the welfare-component
//! decomposition — in CSV or JSON, plus a `.traj` file holding the full
//! trajectory for later comparison. Comparisons add a per-year delta
//! table and an end-of-horizon ranking. All emission is deterministic:
//! fixed row order, fixed column order, shortest round-trip float
//! formatting (re-parsing a file reproduces the in-memory values bit
//! for bit, with more than 12 significant digits of fidelity).

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::{Pressure, SECTOR_NAMES};
use crate::engine::{check_comparable, Trajectory, YearRecord};
use crate::error::{ModelError, Result};
use crate::isew::{Contribution, Measure};
use crate::Scalar;

/// Output encoding for the tabular files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// One cell of the time-series tables: a named, unit-tagged value.
/// `(scenario, year, variable)` is unique within an emission.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRow {
    pub scenario: String,
    pub year: i32,
    pub variable: String,
    pub value: Scalar,
    pub unit: &'static str,
}

/// One row of the doughnut scoreboard table.
#[derive(Debug, Clone, Serialize)]
pub struct DoughnutRow {
    pub scenario: String,
    pub year: i32,
    pub dimension: &'static str,
    pub name: String,
    pub value: Scalar,
    pub met: bool,
    pub simulated: bool,
}

/// One row of the welfare-component decomposition table. `value` is the
/// component magnitude; `contribution` is the signed value it adds to
/// the measure total.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentRow {
    pub scenario: String,
    pub year: i32,
    pub measure: &'static str,
    pub component: &'static str,
    pub side: &'static str,
    pub value: Scalar,
    pub contribution: Scalar,
}

/// One row of the cross-scenario comparison table.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub year: i32,
    pub variable: String,
    pub scenario: String,
    pub value: Scalar,
    pub baseline: Scalar,
    pub delta: Scalar,
}

/// One row of the end-of-horizon ranking (rank 1 = highest value).
#[derive(Debug, Clone, Serialize)]
pub struct RankingRow {
    pub variable: String,
    pub rank: usize,
    pub scenario: String,
    pub year: i32,
    pub value: Scalar,
}

const EUR_YR: &str = "eur/yr";
const PERSONS: &str = "persons";
const HOURS_YR: &str = "hours/yr";
const FRACTION: &str = "fraction";
const INDEX: &str = "index_2020_100";

fn pressure_unit(pressure: Pressure) -> &'static str {
    match pressure {
        Pressure::Co2 => "tonnes/yr",
        Pressure::Nitrogen => "kg/yr",
        Pressure::AirPollutants => "kg/yr",
        Pressure::PrimaryEnergy => "GJ/yr",
        Pressure::LandSystem => "ha/yr",
    }
}

/// The per-year variables of the levels table, in emission order
/// (rows are re-sorted by `(year, variable)` before writing).
fn level_variables(r: &YearRecord) -> Vec<(String, Scalar, &'static str)> {
    let mut vars: Vec<(String, Scalar, &'static str)> = vec![
        ("gdp".into(), r.gdp, EUR_YR),
        ("consumption".into(), r.consumption, EUR_YR),
        ("government".into(), r.government, EUR_YR),
        ("investment".into(), r.investment, EUR_YR),
        ("exports".into(), r.exports, EUR_YR),
        ("imports".into(), r.imports, EUR_YR),
        ("capital_stock".into(), r.capital_stock, "eur"),
        ("capital_net_change".into(), r.capital_net_change, EUR_YR),
        ("population".into(), r.population, PERSONS),
        ("adults".into(), r.adults, PERSONS),
        ("labour_force".into(), r.labour_force, PERSONS),
        ("employed".into(), r.employed, PERSONS),
        ("unemployed".into(), r.unemployed, PERSONS),
        ("working_age_olf".into(), r.working_age_olf, PERSONS),
        ("pensioners".into(), r.pensioners, PERSONS),
        ("unemployment_rate".into(), r.unemployment_rate, FRACTION),
        ("hours_worked".into(), r.hours_worked, HOURS_YR),
        ("unpaid_hours".into(), r.unpaid_hours, HOURS_YR),
        ("hours_factor".into(), r.hours_factor, FRACTION),
        ("average_hourly_wage".into(), r.average_hourly_wage, "eur/hour"),
        ("average_fulltime_wage".into(), r.average_fulltime_wage, EUR_YR),
        ("wage_bill".into(), r.wage_bill, EUR_YR),
        ("income_tax".into(), r.income_tax, EUR_YR),
        ("production_tax".into(), r.production_tax, EUR_YR),
        ("benefits".into(), r.benefits, EUR_YR),
        ("pensions".into(), r.pensions, EUR_YR),
        ("dividends".into(), r.dividends, EUR_YR),
        ("carbon_tax_rate".into(), r.carbon_tax_rate, "eur/tonne"),
        ("carbon_revenue".into(), r.carbon_revenue, EUR_YR),
        ("co2_reduction".into(), r.co2_reduction, FRACTION),
        ("carbon_target".into(), r.carbon_target, "tonnes/yr"),
        ("atkinson".into(), r.atkinson, "index"),
        (
            "d1_disposable_per_capita".into(),
            r.d1_disposable_per_capita,
            EUR_YR,
        ),
        ("isew_bce".into(), r.welfare.bce, EUR_YR),
        ("isew_bcpa".into(), r.welfare.bcpa, EUR_YR),
        ("iaew".into(), r.welfare.iaew, EUR_YR),
        ("gdp_per_capita".into(), r.gdp / r.population, EUR_YR),
        ("isew_bce_per_capita".into(), r.welfare.bce / r.population, EUR_YR),
        (
            "isew_bcpa_per_capita".into(),
            r.welfare.bcpa / r.population,
            EUR_YR,
        ),
        ("iaew_per_capita".into(), r.welfare.iaew / r.population, EUR_YR),
        (
            "nonrenewable_energy_footprint".into(),
            r.environment.nonrenewable_energy.footprint,
            "GJ/yr",
        ),
        (
            "nuclear_energy_territorial".into(),
            r.environment.nuclear_energy.territorial,
            "GJ/yr",
        ),
    ];
    for (s, name) in SECTOR_NAMES.iter().enumerate() {
        vars.push((format!("output_{name}"), r.output_by_sector[s], EUR_YR));
    }
    for pressure in Pressure::ALL {
        let level = r.environment.level(pressure);
        let unit = pressure_unit(pressure);
        vars.push((format!("{}_territorial", pressure.as_str()), level.territorial, unit));
        vars.push((format!("{}_footprint", pressure.as_str()), level.footprint, unit));
    }
    for boundary in &r.boundaries {
        vars.push((
            format!("{}_overshoot_ratio", boundary.pressure.as_str()),
            boundary.ratio,
            "ratio",
        ));
    }
    vars
}

/// The variables carried into the indexed table and comparisons.
const INDEXED_VARIABLES: [&str; 8] = [
    "gdp",
    "gdp_per_capita",
    "isew_bce",
    "isew_bce_per_capita",
    "isew_bcpa",
    "isew_bcpa_per_capita",
    "iaew",
    "iaew_per_capita",
];

fn indexed_value(r: &YearRecord, variable: &str) -> Scalar {
    match variable {
        "gdp" => r.gdp,
        "gdp_per_capita" => r.gdp / r.population,
        "isew_bce" => r.welfare.bce,
        "isew_bce_per_capita" => r.welfare.bce / r.population,
        "isew_bcpa" => r.welfare.bcpa,
        "isew_bcpa_per_capita" => r.welfare.bcpa / r.population,
        "iaew" => r.welfare.iaew,
        "iaew_per_capita" => r.welfare.iaew / r.population,
        _ => unreachable!("not an indexed variable: {variable}"),
    }
}

fn sort_rows(rows: &mut [OutputRow]) {
    rows.sort_by(|a, b| (a.year, &a.variable).cmp(&(b.year, &b.variable)));
}

/// The levels table, sorted by `(year, variable)`.
pub fn timeseries_rows(trajectory: &Trajectory) -> Vec<OutputRow> {
    let mut rows = Vec::new();
    for record in &trajectory.years {
        for (variable, value, unit) in level_variables(record) {
            rows.push(OutputRow {
                scenario: trajectory.scenario.clone(),
                year: record.year,
                variable,
                value,
                unit,
            });
        }
    }
    sort_rows(&mut rows);
    rows
}

/// The indexed table: base year = 100. Variables whose base-year value
/// is not positive are omitted (an index against them is meaningless).
pub fn indexed_rows(trajectory: &Trajectory) -> Vec<OutputRow> {
    let mut rows = Vec::new();
    let Some(base) = trajectory.years.first() else {
        return rows;
    };
    for variable in INDEXED_VARIABLES {
        let base_value = indexed_value(base, variable);
        if base_value <= 0.0 {
            continue;
        }
        for record in &trajectory.years {
            rows.push(OutputRow {
                scenario: trajectory.scenario.clone(),
                year: record.year,
                variable: format!("{variable}_indexed"),
                value: 100.0 * indexed_value(record, variable) / base_value,
                unit: INDEX,
            });
        }
    }
    sort_rows(&mut rows);
    rows
}

/// The doughnut scoreboard table: social rows first (scores against a
/// threshold of 1), then ecological rows (boundary ratios; `met` means
/// within the boundary).
pub fn doughnut_rows(trajectory: &Trajectory) -> Vec<DoughnutRow> {
    let mut rows = Vec::new();
    for record in &trajectory.years {
        for outcome in &record.doughnut.social {
            rows.push(DoughnutRow {
                scenario: trajectory.scenario.clone(),
                year: record.year,
                dimension: "social",
                name: outcome.name.clone(),
                value: outcome.score,
                met: outcome.met,
                simulated: outcome.simulated,
            });
        }
        for outcome in &record.doughnut.ecological {
            rows.push(DoughnutRow {
                scenario: trajectory.scenario.clone(),
                year: record.year,
                dimension: "ecological",
                name: outcome.name.clone(),
                value: outcome.ratio,
                met: outcome.within,
                simulated: true,
            });
        }
    }
    rows
}

/// The welfare-component decomposition table, one row per (measure,
/// member component, year), in registry order.
pub fn component_rows(trajectory: &Trajectory) -> Vec<ComponentRow> {
    let mut rows = Vec::new();
    for record in &trajectory.years {
        for (measure, components) in [
            (Measure::Bce, &record.welfare.bce_components),
            (Measure::Bcpa, &record.welfare.bcpa_components),
            (Measure::Iaew, &record.welfare.iaew_components),
        ] {
            for (id, contribution) in measure.members() {
                let Some(component) = components.iter().find(|c| c.id == *id) else {
                    continue;
                };
                let (side, signed) = match contribution {
                    Contribution::Benefit => ("benefit", component.value),
                    Contribution::Cost => ("cost", -component.value),
                };
                rows.push(ComponentRow {
                    scenario: trajectory.scenario.clone(),
                    year: record.year,
                    measure: measure.as_str(),
                    component: id.as_str(),
                    side,
                    value: component.value,
                    contribution: signed,
                });
            }
        }
    }
    rows
}

/// Per-year deltas of the headline variables against the first
/// trajectory (the baseline).
pub fn comparison_rows(trajectories: &[Trajectory]) -> Result<Vec<ComparisonRow>> {
    check_comparable(trajectories)?;
    let baseline = &trajectories[0];
    let mut rows = Vec::new();
    for (y, base_record) in baseline.years.iter().enumerate() {
        for variable in INDEXED_VARIABLES {
            let base_value = indexed_value(base_record, variable);
            for trajectory in trajectories {
                let value = indexed_value(&trajectory.years[y], variable);
                rows.push(ComparisonRow {
                    year: base_record.year,
                    variable: variable.to_owned(),
                    scenario: trajectory.scenario.clone(),
                    value,
                    baseline: base_value,
                    delta: value - base_value,
                });
            }
        }
    }
    Ok(rows)
}

/// End-of-horizon ranking of the per-capita welfare measures and GDP.
pub fn ranking_rows(trajectories: &[Trajectory]) -> Result<Vec<RankingRow>> {
    check_comparable(trajectories)?;
    let mut rows = Vec::new();
    for variable in ["isew_bce_per_capita", "isew_bcpa_per_capita", "gdp_per_capita"] {
        let mut entries: Vec<(String, i32, Scalar)> = trajectories
            .iter()
            .map(|t| {
                let last = t.years.last().expect("validated horizon is non-empty");
                (t.scenario.clone(), last.year, indexed_value(last, variable))
            })
            .collect();
        entries.sort_by(|a, b| b.2.total_cmp(&a.2).then_with(|| a.0.cmp(&b.0)));
        for (rank, (scenario, year, value)) in entries.into_iter().enumerate() {
            rows.push(RankingRow {
                variable: variable.to_owned(),
                rank: rank + 1,
                scenario,
                year,
                value,
            });
        }
    }
    Ok(rows)
}

fn write_table<T: Serialize>(path: &Path, rows: &[T], format: OutputFormat) -> Result<()> {
    let as_io = |e: std::io::Error| ModelError::io(path.display().to_string(), e);
    let file = File::create(path).map_err(as_io)?;
    let mut writer = BufWriter::new(file);
    match format {
        OutputFormat::Csv => {
            let mut csv = csv::Writer::from_writer(writer);
            for row in rows {
                csv.serialize(row).map_err(|e| ModelError::Schema {
                    location: path.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            csv.flush().map_err(as_io)?;
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut writer, rows).map_err(|e| ModelError::Schema {
                location: path.display().to_string(),
                message: e.to_string(),
            })?;
            writer.write_all(b"\n").map_err(as_io)?;
            writer.flush().map_err(as_io)?;
        }
    }
    Ok(())
}

/// Writes a trajectory to `<dir>/<scenario>.traj` (JSON).
pub fn write_trajectory(dir: &Path, trajectory: &Trajectory) -> Result<PathBuf> {
    let path = dir.join(format!("{}.traj", trajectory.scenario));
    let as_io = |e: std::io::Error| ModelError::io(path.display().to_string(), e);
    let file = File::create(&path).map_err(as_io)?;
    let mut writer = BufWriter::new(file);
    serde_json::to_writer(&mut writer, trajectory).map_err(|e| ModelError::Schema {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    writer.write_all(b"\n").map_err(as_io)?;
    writer.flush().map_err(as_io)?;
    Ok(path)
}

/// Reads a trajectory back from a `.traj` file.
pub fn load_trajectory(path: &Path) -> Result<Trajectory> {
    let file = File::open(path).map_err(|e| ModelError::io(path.display().to_string(), e))?;
    serde_json::from_reader(BufReader::new(file)).map_err(|e| ModelError::Schema {
        location: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Writes the four tables and the `.traj` file for one trajectory.
/// Returns the paths written.
pub fn write_outputs(
    dir: &Path,
    trajectory: &Trajectory,
    format: OutputFormat,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| ModelError::io(dir.display().to_string(), e))?;
    let ext = format.extension();
    let name = &trajectory.scenario;
    let mut written = Vec::new();

    let path = dir.join(format!("{name}_timeseries.{ext}"));
    write_table(&path, &timeseries_rows(trajectory), format)?;
    written.push(path);

    let path = dir.join(format!("{name}_timeseries_indexed.{ext}"));
    write_table(&path, &indexed_rows(trajectory), format)?;
    written.push(path);

    let path = dir.join(format!("{name}_doughnut.{ext}"));
    write_table(&path, &doughnut_rows(trajectory), format)?;
    written.push(path);

    let path = dir.join(format!("{name}_isew_components.{ext}"));
    write_table(&path, &component_rows(trajectory), format)?;
    written.push(path);

    written.push(write_trajectory(dir, trajectory)?);
    Ok(written)
}

/// Writes the comparison and ranking tables for two or more
/// trajectories (the first is the baseline). Returns the paths written.
pub fn write_comparison(
    dir: &Path,
    trajectories: &[Trajectory],
    format: OutputFormat,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| ModelError::io(dir.display().to_string(), e))?;
    let ext = format.extension();
    let mut written = Vec::new();

    let path = dir.join(format!("comparison.{ext}"));
    write_table(&path, &comparison_rows(trajectories)?, format)?;
    written.push(path);

    let path = dir.join(format!("ranking.{ext}"));
    write_table(&path, &ranking_rows(trajectories)?, format)?;
    written.push(path);

    Ok(written)
}
