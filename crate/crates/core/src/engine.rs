//! The annual simulation loop.
//!
//! Each simulated year runs through a fixed order:
//!
//! 1. **Policy** — the year's tax/transfer schedule, working-time
//!    factor and carbon-tax state.
//! 2. **Demographics** — cohort ageing, births and the labour supply.
//! 3. **Economy** — final demand (consumption was planned from last
//!    year's incomes), the output solve, employment matching, wages,
//!    taxes, transfers and the consumption plan for next year.
//! 4. **Environment** — pressures on both bases, abatement, boundaries.
//! 5. **Welfare accounting** — the component registry and the three
//!    aggregate measures.
//! 6. **Doughnut** — social foundations and ecological ceilings.
//! 7. **Audit** — the stock-flow closure; a residual aborts the run.
//!
//! The model is deterministic: no randomness enters anywhere, so two
//! runs of the same calibration and scenario produce identical output.

use serde::{Deserialize, Serialize};

use crate::config::{Calibration, Pressure, ScenarioSpec, SECTOR_COUNT, WEEKS_PER_YEAR};
use crate::demographics::{
    self, allocate_employment, births_for_year, step_cohorts, CohortGrid,
};
use crate::doughnut::{doughnut_report, DoughnutReport};
use crate::economy::{
    self, capital_step, check_gdp_identity, final_demand_vector, household_accounts,
    sector_accounts, skill_wages, solve_output, stock_flow_audit, Agent, ExpenditureComponents,
    FlowKind, FlowMatrix, IncomeInputs,
};
use crate::environment::{boundary_status, compute_pressures, BoundaryStatus, EnvironmentAccounts};
use crate::error::{ModelError, Result};
use crate::isew::{compute_welfare, WelfareInputs, WelfareOutputs};
use crate::policy::{carbon_controller_step, carbon_target, fiscal_schedule, wtr_hours_factor, CarbonState};
use crate::{Money, Persons, Scalar};

/// Everything recorded about one simulated year.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YearRecord {
    pub year: i32,

    // Expenditure and production.
    pub gdp: Money,
    pub consumption: Money,
    pub government: Money,
    pub investment: Money,
    pub exports: Money,
    pub imports: Money,
    pub output_by_sector: [Money; SECTOR_COUNT],

    // Capital.
    pub capital_stock: Money,
    pub capital_net_change: Money,
    pub capital_depleted: bool,

    // People.
    pub population: Persons,
    pub adults: Persons,
    pub labour_force: Persons,
    pub employed: Persons,
    pub unemployed: Persons,
    pub working_age_olf: Persons,
    pub pensioners: Persons,
    pub unemployment_rate: Scalar,

    // Work and pay.
    pub hours_worked: Scalar,
    pub unpaid_hours: Scalar,
    pub hours_factor: Scalar,
    pub average_hourly_wage: Money,
    pub average_fulltime_wage: Money,
    pub wage_bill: Money,

    // Fiscal flows.
    pub income_tax: Money,
    pub production_tax: Money,
    pub benefits: Money,
    pub pensions: Money,
    pub dividends: Money,

    // Carbon policy.
    pub carbon_tax_rate: Money,
    pub carbon_revenue: Money,
    pub co2_reduction: Scalar,
    pub carbon_target: Scalar,

    // Distribution.
    pub atkinson: Scalar,
    pub d1_disposable_per_capita: Money,
    pub decile_disposable_per_capita: [Money; 10],
    pub decile_consumption_per_capita: [Money; 10],

    // Welfare accounting, pressures, scoreboard, ledger.
    pub welfare: WelfareOutputs,
    pub environment: EnvironmentAccounts,
    pub boundaries: Vec<BoundaryStatus>,
    pub doughnut: DoughnutReport,
    pub net_lending: [Money; 5],
}

/// A complete scenario run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub scenario: String,
    pub description: String,
    /// Fingerprint of the calibration the run used.
    pub fingerprint: String,
    pub start_year: i32,
    pub end_year: i32,
    pub years: Vec<YearRecord>,
}

impl Trajectory {
    pub fn year(&self, year: i32) -> Option<&YearRecord> {
        self.years.iter().find(|r| r.year == year)
    }

    pub fn last(&self) -> &YearRecord {
        self.years.last().expect("a trajectory has at least one year")
    }
}

/// State carried from one year to the next.
struct WorldState {
    grid: CohortGrid,
    capital: Money,
    /// Consumption planned out of last year's incomes, spent this year.
    consumption_plan: Money,
    last_gdp: Money,
    carbon: CarbonState,
    last_territorial_co2: Scalar,
    /// Cumulative net lending by agent: the deposit (+) or debt (−)
    /// position the banking ledger pays interest on.
    positions: [Money; 5],
}

/// Runs one scenario against a calibration.
///
/// The calibration is trusted as given — loading one from a bundle
/// already validates it — so degenerate values placed there by hand
/// surface as simulation errors, not schema errors. The scenario is
/// validated here because specs are cheap to build programmatically.
pub fn run_scenario(calibration: &Calibration, scenario: &ScenarioSpec) -> Result<Trajectory> {
    scenario.validate()?;
    if let Some(carbon) = &scenario.carbon_tax {
        if carbon.target_series_ref != calibration.carbon_target.series_name {
            return Err(ModelError::Schema {
                location: format!("scenario `{}`: carbon_tax.target_series_ref", scenario.name),
                message: format!(
                    "references emission pathway `{}` but the calibration provides `{}`",
                    carbon.target_series_ref, calibration.carbon_target.series_name
                ),
            });
        }
    }

    let start = scenario.horizon.start_year;
    let end = scenario.horizon.end_year;
    let mut state = WorldState {
        grid: CohortGrid::new(&calibration.demography),
        capital: calibration.economy.capital_base,
        consumption_plan: calibration.economy.consumption_base,
        last_gdp: calibration.base_gdp(),
        carbon: CarbonState::default(),
        last_territorial_co2: 0.0,
        positions: [0.0; 5],
    };

    let mut years = Vec::with_capacity((end - start + 1) as usize);
    for year in start..=end {
        let record = step_year(calibration, scenario, &mut state, year, start)?;
        years.push(record);
    }

    Ok(Trajectory {
        scenario: scenario.name.clone(),
        description: scenario.description.clone(),
        fingerprint: calibration.fingerprint(),
        start_year: start,
        end_year: end,
        years,
    })
}

fn step_year(
    calibration: &Calibration,
    scenario: &ScenarioSpec,
    state: &mut WorldState,
    year: i32,
    start_year: i32,
) -> Result<YearRecord> {
    let econ = &calibration.economy;
    let years_elapsed = (year - start_year) as Scalar;
    let first_year = year == start_year;

    // ---- 1. Policy ------------------------------------------------------
    let schedule = fiscal_schedule(
        &calibration.fiscal,
        scenario.redistribution.as_ref(),
        scenario.phase_window,
        year,
    );
    let hours_factor = wtr_hours_factor(scenario.wtr.as_ref(), scenario.phase_window, year);
    let target = carbon_target(&calibration.carbon_target, year, scenario.phase_window.start);
    state.carbon = match &scenario.carbon_tax {
        // The controller engages once the phase window has opened; before
        // that there is no tax history (or no lever at all) to respond to.
        Some(lever) if !first_year && year > scenario.phase_window.start => carbon_controller_step(
            state.carbon.tau,
            lever,
            state.last_territorial_co2,
            target,
            year,
        )?,
        _ => CarbonState::default(),
    };

    // ---- 2. Demographics -------------------------------------------------
    if !first_year {
        let births = births_for_year(&calibration.demography, year, start_year);
        state.grid = step_cohorts(&state.grid, &calibration.demography, births);
    }
    let grid = &state.grid;

    // ---- 3. Economy -------------------------------------------------------
    let components = ExpenditureComponents {
        consumption: state.consumption_plan,
        government: econ.government_base * (1.0 + econ.government_growth).powf(years_elapsed),
        investment: if first_year {
            calibration.base_investment()
        } else {
            econ.depreciation_rate * state.capital + econ.net_investment_share * state.last_gdp
        },
        exports: econ.exports_base * (1.0 + econ.exports_growth).powf(years_elapsed),
    };
    let final_demand = final_demand_vector(&calibration.final_demand, &components);
    let output = solve_output(&calibration.io, &final_demand.domestic)?;
    let accounts = sector_accounts(&calibration.io, output, &final_demand.domestic);
    check_gdp_identity(&accounts, year)?;
    let gdp = accounts.gdp;

    let productivity_factor = (1.0 + econ.productivity_growth).powf(years_elapsed);
    let hours_worked = economy::labour_hours(&calibration.io, &output, productivity_factor);
    let standard_annual_hours = econ.base_weekly_hours * hours_factor * WEEKS_PER_YEAR;
    let labour_demand = if standard_annual_hours > 0.0 {
        hours_worked / standard_annual_hours
    } else {
        0.0
    };
    let allocation = allocate_employment(grid, labour_demand);
    let employed = allocation.market.employed;
    let employed_by_skill = [
        allocation.employed_by_skill(grid, crate::config::Skill::Low),
        allocation.employed_by_skill(grid, crate::config::Skill::Mid),
        allocation.employed_by_skill(grid, crate::config::Skill::High),
    ];
    let wages = skill_wages(econ, employed_by_skill, years_elapsed);
    // Transfers are indexed to the full-time average wage, not to the
    // (possibly reduced) actual working time.
    let average_fulltime_wage = wages.average_hourly * econ.base_weekly_hours * WEEKS_PER_YEAR;
    let annual_hours_per_worker = if employed > 0.0 { hours_worked / employed } else { 0.0 };

    let wage_bill = hours_worked * wages.average_hourly;
    let production_tax = econ.production_tax_rate * gdp;
    // Distributed profits are computed before the carbon tax, so carbon
    // policy shifts the firm/government balance without touching
    // household incomes.
    let operating_surplus = gdp - wage_bill - production_tax;
    let dividends = econ.dividend_payout * operating_surplus;
    let household_interest = econ.interest_rate * state.positions[Agent::Households.index()];

    let pension_per_person = calibration.fiscal.pension_share * average_fulltime_wage;
    let households = household_accounts(&IncomeInputs {
        grid,
        allocation: &allocation,
        wages,
        annual_hours_per_worker,
        schedule: &schedule,
        average_fulltime_wage,
        pension_per_person,
        distributed_income: dividends + household_interest,
        dividend_weights: &econ.dividend_weights,
        capital_income_tax_rate: econ.capital_income_tax_rate,
        propensities: &econ.propensities,
        atkinson_epsilon: calibration.welfare.atkinson_epsilon,
    });

    // ---- 4. Environment ---------------------------------------------------
    let mut export_demand = [0.0; SECTOR_COUNT];
    for s in 0..SECTOR_COUNT {
        export_demand[s] = components.exports
            * calibration.final_demand.exports_basket[s]
            * (1.0 - calibration.final_demand.import_shares[s]);
    }
    let export_output = solve_output(&calibration.io, &export_demand)?;
    let environment = compute_pressures(
        &calibration.environment,
        &output,
        &export_output,
        final_demand.imports,
        years_elapsed,
        state.carbon.reduction,
    );
    let boundaries = boundary_status(&calibration.environment, &environment, grid.total_population());
    let territorial_co2 = environment.level(Pressure::Co2).territorial;
    let carbon_revenue = state.carbon.tau * territorial_co2;

    // ---- 5. Welfare accounting ---------------------------------------------
    let profiles = demographics::effective_profiles(&calibration.time_use, hours_factor)?;
    let counts = demographics::status_gender_counts(grid, &allocation);
    let unpaid_hours = demographics::aggregate_unpaid_hours(&counts, &profiles);
    let capital = capital_step(state.capital, components.investment, econ.depreciation_rate);
    let welfare = compute_welfare(&WelfareInputs {
        years_elapsed,
        consumption: components.consumption,
        government: components.government,
        gdp,
        unpaid_hours,
        capital_net_change: capital.net_change,
        atkinson: households.atkinson,
        air_territorial: environment.level(Pressure::AirPollutants).territorial,
        air_footprint: environment.level(Pressure::AirPollutants).footprint,
        nitrogen_territorial: environment.level(Pressure::Nitrogen).territorial,
        nitrogen_footprint: environment.level(Pressure::Nitrogen).footprint,
        co2_footprint: environment.level(Pressure::Co2).footprint,
        nonrenewable_energy_footprint: environment.nonrenewable_energy.footprint,
        nuclear_energy_territorial: environment.nuclear_energy.territorial,
        params: &calibration.welfare,
        unit_costs: &calibration.unit_costs,
    })?;

    // ---- 6. Doughnut --------------------------------------------------------
    let doughnut = doughnut_report(
        &calibration.social,
        allocation.unemployment_rate(),
        households.atkinson,
        households.d1_disposable_per_capita,
        &boundaries,
    );

    // ---- 7. Ledger and audit -------------------------------------------------
    let mut matrix = FlowMatrix::default();
    matrix.push(FlowKind::Wages, Agent::Firms, Agent::Households, wage_bill);
    matrix.push(FlowKind::Dividends, Agent::Firms, Agent::Households, dividends);
    matrix.push(
        FlowKind::Benefits,
        Agent::Government,
        Agent::Households,
        households.total_benefits,
    );
    matrix.push(
        FlowKind::Pensions,
        Agent::Government,
        Agent::Households,
        households.total_pensions,
    );
    matrix.push(
        FlowKind::IncomeTax,
        Agent::Households,
        Agent::Government,
        households.total_tax,
    );
    matrix.push(FlowKind::ProductionTax, Agent::Firms, Agent::Government, production_tax);
    matrix.push(FlowKind::CarbonTax, Agent::Firms, Agent::Government, carbon_revenue);
    matrix.push(
        FlowKind::Consumption,
        Agent::Households,
        Agent::Firms,
        components.consumption,
    );
    matrix.push(
        FlowKind::GovernmentConsumption,
        Agent::Government,
        Agent::Firms,
        components.government,
    );
    matrix.push(FlowKind::Investment, Agent::Firms, Agent::Firms, components.investment);
    matrix.push(FlowKind::Exports, Agent::RestOfWorld, Agent::Firms, components.exports);
    matrix.push(FlowKind::Imports, Agent::Firms, Agent::RestOfWorld, final_demand.imports);
    // Interest on accumulated positions, routed through the banks.
    for agent in [Agent::Households, Agent::Firms, Agent::Government, Agent::RestOfWorld] {
        let position = state.positions[agent.index()];
        let interest = econ.interest_rate * position;
        if interest > 0.0 {
            matrix.push(FlowKind::Interest, Agent::Banks, agent, interest);
        } else if interest < 0.0 {
            matrix.push(FlowKind::Interest, agent, Agent::Banks, -interest);
        }
    }
    // Each agent's budget identity, derived from the behavioural
    // aggregates rather than from the flow matrix, so the audit can
    // catch a flow that was booked wrongly on either side.
    let interest_on = |agent: Agent| econ.interest_rate * state.positions[agent.index()];
    let budgets = [
        // Households save what they do not consume.
        households.total_disposable - components.consumption,
        // Firms retain sales net of factor payments, taxes and imports
        // (own-account investment cancels against its own revenue).
        components.consumption + components.government + components.exports - wage_bill
            - dividends
            - production_tax
            - carbon_revenue
            - final_demand.imports
            + interest_on(Agent::Firms),
        // Government: receipts minus transfers and purchases.
        households.total_tax + production_tax + carbon_revenue
            - households.total_benefits
            - households.total_pensions
            - components.government
            + interest_on(Agent::Government),
        // Banks earn the margin on their own net position.
        interest_on(Agent::Banks),
        // Rest of world: our imports are its receipts.
        final_demand.imports - components.exports + interest_on(Agent::RestOfWorld),
    ];
    let net_lending = stock_flow_audit(&matrix, &budgets, gdp, year)?;

    // ---- Advance the stored state ------------------------------------------
    for (position, nl) in state.positions.iter_mut().zip(net_lending) {
        *position += nl;
    }
    state.capital = capital.stock;
    state.consumption_plan = households.planned_consumption;
    state.last_gdp = gdp;
    state.last_territorial_co2 = territorial_co2;

    Ok(YearRecord {
        year,
        gdp,
        consumption: components.consumption,
        government: components.government,
        investment: components.investment,
        exports: components.exports,
        imports: final_demand.imports,
        output_by_sector: output,
        capital_stock: capital.stock,
        capital_net_change: capital.net_change,
        capital_depleted: capital.depleted,
        population: grid.total_population(),
        adults: grid.adults(),
        labour_force: allocation.market.labour_force,
        employed,
        unemployed: allocation.market.unemployed,
        working_age_olf: grid.working_age_olf(),
        pensioners: grid.pensioners(),
        unemployment_rate: allocation.unemployment_rate(),
        hours_worked,
        unpaid_hours,
        hours_factor,
        average_hourly_wage: wages.average_hourly,
        average_fulltime_wage,
        wage_bill,
        income_tax: households.total_tax,
        production_tax,
        benefits: households.total_benefits,
        pensions: households.total_pensions,
        dividends: households.total_dividends,
        carbon_tax_rate: state.carbon.tau,
        carbon_revenue,
        co2_reduction: state.carbon.reduction,
        carbon_target: target,
        atkinson: households.atkinson,
        d1_disposable_per_capita: households.d1_disposable_per_capita,
        decile_disposable_per_capita: households.deciles.disposable_per_capita,
        decile_consumption_per_capita: households.deciles.consumption_per_capita,
        welfare,
        environment,
        boundaries,
        doughnut,
        net_lending,
    })
}

/// Guards scenario comparison: all trajectories must come from the same
/// calibration and cover the same horizon.
pub fn check_comparable(trajectories: &[Trajectory]) -> Result<()> {
    let Some(first) = trajectories.first() else {
        return Ok(());
    };
    for other in &trajectories[1..] {
        if other.fingerprint != first.fingerprint {
            return Err(ModelError::FingerprintMismatch {
                left: first.fingerprint.clone(),
                right: other.fingerprint.clone(),
            });
        }
        if (other.start_year, other.end_year) != (first.start_year, first.end_year) {
            return Err(ModelError::BadHorizon {
                start: other.start_year,
                end: other.end_year,
                message: format!(
                    "scenario `{}` covers a different horizon than `{}` ({}:{})",
                    other.scenario, first.scenario, first.start_year, first.end_year
                ),
            });
        }
    }
    Ok(())
}
