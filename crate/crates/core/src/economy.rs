//! The demand-driven input–output economy and its financial ledger.
//!
//! Each year the expenditure components (consumption, government,
//! investment, exports) are spread over sectors, netted of imports and
//! fed to a Leontief solve.  Gross output determines labour demand,
//! labour demand determines employment and wages, and wages plus
//! transfers minus taxes determine the disposable incomes that close
//! next year's consumption.  Every euro is also recorded in a
//! five-agent flow matrix whose net-lending positions must sum to zero;
//! a violation aborts the run.

use crate::config::{DividendWeights, EconomyParams, FinalDemand, IoTable, Skill, SECTOR_COUNT};
use crate::demographics::{CohortGrid, EmploymentAllocation};
use crate::error::{ModelError, Result};
use crate::num;
use crate::policy::FiscalSchedule;
use crate::{Money, Persons, Scalar};

/// Relative residual at which the Leontief fixed point is converged.
pub const LEONTIEF_TOL: Scalar = 1e-10;

/// Iteration cap for the Leontief fixed point.
pub const LEONTIEF_MAX_ITER: usize = 10_000;

/// Net-lending closure tolerance, relative to GDP.
pub const SFC_TOL: Scalar = 1e-9;

/// Tolerance on the GDP ≡ Σ value added ≡ Σ final demand identity.
pub const GDP_IDENTITY_TOL: Scalar = 1e-9;

// ---------------------------------------------------------------------------
// Production
// ---------------------------------------------------------------------------

/// Expenditure components for one year, euros.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpenditureComponents {
    pub consumption: Money,
    pub government: Money,
    pub investment: Money,
    pub exports: Money,
}

/// Final demand by sector after spreading the expenditure components
/// over their baskets and netting out imports.
#[derive(Debug, Clone, PartialEq)]
pub struct FinalDemandVector {
    /// Domestic final demand by sector (what domestic production meets).
    pub domestic: [Money; SECTOR_COUNT],
    /// Gross final use by sector before the import split.
    pub gross: [Money; SECTOR_COUNT],
    /// Total imports, euros.
    pub imports: Money,
}

/// Spreads expenditure components over sectors and splits off imports.
pub fn final_demand_vector(
    spec: &FinalDemand,
    components: &ExpenditureComponents,
) -> FinalDemandVector {
    let mut domestic = [0.0; SECTOR_COUNT];
    let mut gross = [0.0; SECTOR_COUNT];
    let mut imports = 0.0;
    for s in 0..SECTOR_COUNT {
        let g = components.consumption * spec.consumption_basket[s]
            + components.government * spec.government_basket[s]
            + components.investment * spec.investment_basket[s]
            + components.exports * spec.exports_basket[s];
        gross[s] = g;
        imports += g * spec.import_shares[s];
        domestic[s] = g * (1.0 - spec.import_shares[s]);
    }
    FinalDemandVector {
        domestic,
        gross,
        imports,
    }
}

/// Sectoral outcome of one Leontief solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorAccounts {
    /// Gross output by sector, euros.
    pub output: [Money; SECTOR_COUNT],
    /// Value added by sector, euros.
    pub value_added: [Money; SECTOR_COUNT],
    /// GDP: the sum of final demand (equals the sum of value added).
    pub gdp: Money,
}

/// Solves `x = A·x + f` for gross output.
pub fn solve_output(io: &IoTable, final_demand: &[Money; SECTOR_COUNT]) -> Result<[Money; SECTOR_COUNT]> {
    let x = num::solve_fixed_point(
        &io.coefficients,
        final_demand,
        SECTOR_COUNT,
        LEONTIEF_TOL,
        LEONTIEF_MAX_ITER,
    )?;
    let mut out = [0.0; SECTOR_COUNT];
    out.copy_from_slice(&x);
    Ok(out)
}

/// Derives value added and GDP from a solved output vector.
pub fn sector_accounts(io: &IoTable, output: [Money; SECTOR_COUNT], final_demand: &[Money; SECTOR_COUNT]) -> SectorAccounts {
    let mut value_added = [0.0; SECTOR_COUNT];
    for s in 0..SECTOR_COUNT {
        let mut column_sum = 0.0;
        for i in 0..SECTOR_COUNT {
            column_sum += io.coefficient(i, s);
        }
        value_added[s] = output[s] * (1.0 - column_sum);
    }
    SectorAccounts {
        output,
        value_added,
        gdp: final_demand.iter().sum(),
    }
}

/// Checks GDP ≡ Σ value added within [`GDP_IDENTITY_TOL`].
pub fn check_gdp_identity(accounts: &SectorAccounts, year: i32) -> Result<()> {
    let va: Money = accounts.value_added.iter().sum();
    let scale = accounts.gdp.abs().max(1.0);
    let residual = (va - accounts.gdp) / scale;
    if residual.abs() > GDP_IDENTITY_TOL {
        return Err(ModelError::Inconsistency {
            year,
            residual,
            tolerance: GDP_IDENTITY_TOL,
        });
    }
    Ok(())
}

/// Labour required by a solved output vector, hours per year.
pub fn labour_hours(io: &IoTable, output: &[Money; SECTOR_COUNT], productivity_factor: Scalar) -> Scalar {
    let mut hours = 0.0;
    for s in 0..SECTOR_COUNT {
        hours += output[s] * io.labour_hours_per_euro[s];
    }
    hours / productivity_factor
}

// ---------------------------------------------------------------------------
// Wages
// ---------------------------------------------------------------------------

/// Hourly wages by skill for one year, plus their employment-weighted
/// average.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WageStructure {
    pub hourly_by_skill: [Money; 3],
    /// Employment-weighted average hourly wage.
    pub average_hourly: Money,
}

/// Hourly wages for a year.
///
/// Skill wages start from their base-year levels, converge towards the
/// middle at the configured rate (low rises, high falls), and the whole
/// structure is rescaled so the employment-weighted average equals the
/// base-mix average grown at the wage-growth rate.  The wage bill is
/// therefore exactly total hours times the average hourly wage.
pub fn skill_wages(
    economy: &EconomyParams,
    employed_by_skill: [Persons; 3],
    years_elapsed: Scalar,
) -> WageStructure {
    let growth = (1.0 + economy.wage_growth).powf(years_elapsed);
    let conv = economy.skill_wage_convergence;
    let raw = [
        economy.hourly_wages[0] * (1.0 + conv).powf(years_elapsed),
        economy.hourly_wages[1],
        economy.hourly_wages[2] * (1.0 - conv).powf(years_elapsed),
    ];
    let total: Persons = employed_by_skill.iter().sum();
    let shares = if total > 0.0 {
        [
            employed_by_skill[0] / total,
            employed_by_skill[1] / total,
            employed_by_skill[2] / total,
        ]
    } else {
        [1.0 / 3.0; 3]
    };
    let target_average: Money = (0..3).map(|k| shares[k] * economy.hourly_wages[k]).sum::<Money>() * growth;
    let raw_average: Money = (0..3).map(|k| shares[k] * raw[k]).sum();
    let scale = if raw_average > 0.0 {
        target_average / raw_average
    } else {
        1.0
    };
    WageStructure {
        hourly_by_skill: [raw[0] * scale, raw[1] * scale, raw[2] * scale],
        average_hourly: target_average,
    }
}

// ---------------------------------------------------------------------------
// Households
// ---------------------------------------------------------------------------

/// Identifies one of the six household income groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupId {
    WorkingAgeOlf,
    Unemployed,
    Pensioners,
    EmployedLow,
    EmployedMid,
    EmployedHigh,
}

impl GroupId {
    pub const ALL: [GroupId; 6] = [
        GroupId::WorkingAgeOlf,
        GroupId::Unemployed,
        GroupId::Pensioners,
        GroupId::EmployedLow,
        GroupId::EmployedMid,
        GroupId::EmployedHigh,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GroupId::WorkingAgeOlf => "working_age_olf",
            GroupId::Unemployed => "unemployed",
            GroupId::Pensioners => "pensioners",
            GroupId::EmployedLow => "employed_low",
            GroupId::EmployedMid => "employed_mid",
            GroupId::EmployedHigh => "employed_high",
        }
    }
}

/// One household group's per-capita account.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HouseholdGroup {
    pub id: GroupId,
    pub population: Persons,
    /// Taxable income per person (wages plus distributed profits).
    pub taxable_income: Money,
    /// Untaxed transfers per person (benefits or pensions).
    pub transfers: Money,
    /// Income tax per person.
    pub tax: Money,
    /// Disposable income per person.
    pub disposable: Money,
}

/// Equal-population decile table derived from the groups.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecileTable {
    /// Persons per decile (one tenth of adults).
    pub persons_per_decile: Persons,
    pub disposable_per_capita: [Money; 10],
    pub consumption_per_capita: [Money; 10],
}

/// The complete household block of one year.
#[derive(Debug, Clone, PartialEq)]
pub struct HouseholdAccounts {
    pub groups: Vec<HouseholdGroup>,
    pub deciles: DecileTable,
    pub wage_bill: Money,
    pub total_tax: Money,
    pub total_benefits: Money,
    pub total_pensions: Money,
    pub total_dividends: Money,
    pub total_disposable: Money,
    /// Consumption the propensities plan out of this year's incomes
    /// (spent next year).
    pub planned_consumption: Money,
    /// Atkinson index of decile consumption.
    pub atkinson: Scalar,
    /// Poorest decile's disposable income per person.
    pub d1_disposable_per_capita: Money,
}

/// Everything needed to build the household accounts for one year.
pub struct IncomeInputs<'a> {
    pub grid: &'a CohortGrid,
    pub allocation: &'a EmploymentAllocation,
    pub wages: WageStructure,
    /// Hours actually worked per employed person over the year.
    pub annual_hours_per_worker: Scalar,
    pub schedule: &'a FiscalSchedule,
    /// Average full-time gross annual wage (the transfer base).
    pub average_fulltime_wage: Money,
    /// Pension per pensioner, euros per year.
    pub pension_per_person: Money,
    /// Distributed profits plus deposit interest, euros.
    pub distributed_income: Money,
    pub dividend_weights: &'a DividendWeights,
    /// Flat rate applied to distributed capital income, outside the
    /// progressive wage schedule.
    pub capital_income_tax_rate: Scalar,
    pub propensities: &'a [Scalar; 10],
    pub atkinson_epsilon: Scalar,
}

fn dividend_weight(weights: &DividendWeights, id: GroupId) -> Scalar {
    match id {
        GroupId::WorkingAgeOlf => weights.olf,
        GroupId::Unemployed => weights.unemployed,
        GroupId::Pensioners => weights.pensioners,
        GroupId::EmployedLow => weights.employed_low,
        GroupId::EmployedMid => weights.employed_mid,
        GroupId::EmployedHigh => weights.employed_high,
    }
}

/// Builds group accounts, the decile table, and the consumption plan.
pub fn household_accounts(inputs: &IncomeInputs) -> HouseholdAccounts {
    let grid = inputs.grid;
    let alloc = inputs.allocation;

    let populations = [
        grid.working_age_olf(),
        alloc.market.unemployed,
        grid.pensioners(),
        alloc.employed_by_skill(grid, Skill::Low),
        alloc.employed_by_skill(grid, Skill::Mid),
        alloc.employed_by_skill(grid, Skill::High),
    ];

    // Distributed profits flow only to populated groups; the weights of
    // empty groups are re-spread so no euro is lost.
    let weight_total: Scalar = GroupId::ALL
        .iter()
        .enumerate()
        .filter(|(k, _)| populations[*k] > 0.0)
        .map(|(_, &id)| dividend_weight(inputs.dividend_weights, id))
        .sum();

    let benefit_olf = inputs.schedule.benefit_rate_olf * inputs.average_fulltime_wage;
    let benefit_unemployed = inputs.schedule.benefit_rate_unemployed * inputs.average_fulltime_wage;

    let mut groups = Vec::with_capacity(6);
    let mut wage_bill = 0.0;
    let mut total_tax = 0.0;
    let mut total_benefits = 0.0;
    let mut total_pensions = 0.0;
    let mut total_dividends = 0.0;
    let mut total_disposable = 0.0;
    for (k, id) in GroupId::ALL.into_iter().enumerate() {
        let population = populations[k];
        let dividends_pp = if population > 0.0 && weight_total > 0.0 {
            inputs.distributed_income * dividend_weight(inputs.dividend_weights, id) / weight_total
                / population
        } else {
            0.0
        };
        let wage_pp = match id {
            GroupId::EmployedLow => inputs.wages.hourly_by_skill[0] * inputs.annual_hours_per_worker,
            GroupId::EmployedMid => inputs.wages.hourly_by_skill[1] * inputs.annual_hours_per_worker,
            GroupId::EmployedHigh => inputs.wages.hourly_by_skill[2] * inputs.annual_hours_per_worker,
            _ => 0.0,
        };
        let transfers = match id {
            GroupId::WorkingAgeOlf => benefit_olf,
            GroupId::Unemployed => benefit_unemployed,
            GroupId::Pensioners => inputs.pension_per_person,
            _ => 0.0,
        };
        let taxable_income = wage_pp + dividends_pp;
        let tax =
            inputs.schedule.tax(wage_pp) + inputs.capital_income_tax_rate * dividends_pp;
        let disposable = taxable_income + transfers - tax;
        wage_bill += wage_pp * population;
        total_tax += tax * population;
        total_dividends += dividends_pp * population;
        total_disposable += disposable * population;
        match id {
            GroupId::Pensioners => total_pensions += transfers * population,
            _ => total_benefits += transfers * population,
        }
        groups.push(HouseholdGroup {
            id,
            population,
            taxable_income,
            transfers,
            tax,
            disposable,
        });
    }

    let deciles = decile_table(&groups, inputs.propensities);
    let planned_consumption = (0..10)
        .map(|d| inputs.propensities[d] * deciles.disposable_per_capita[d] * deciles.persons_per_decile)
        .sum();
    // The index treats (pathological) negative consumption as zero.
    let consumption_floored = deciles.consumption_per_capita.map(|c| c.max(0.0));
    let atkinson = num::atkinson(&consumption_floored, &[1.0; 10], inputs.atkinson_epsilon)
        .expect("epsilon is validated positive and the values are non-negative");

    HouseholdAccounts {
        wage_bill,
        total_tax,
        total_benefits,
        total_pensions,
        total_dividends,
        total_disposable,
        planned_consumption,
        atkinson,
        d1_disposable_per_capita: deciles.disposable_per_capita[0],
        deciles,
        groups,
    }
}

/// Sorts the groups by per-capita disposable income and cuts the adult
/// population into ten equal-population deciles; groups straddling a
/// boundary contribute proportionally to both sides.
fn decile_table(groups: &[HouseholdGroup], propensities: &[Scalar; 10]) -> DecileTable {
    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by(|&a, &b| {
        groups[a]
            .disposable
            .partial_cmp(&groups[b].disposable)
            .expect("finite incomes")
            .then(a.cmp(&b))
    });
    let adults: Persons = groups.iter().map(|g| g.population).sum();
    let per_decile = adults / 10.0;
    let mut disposable = [0.0; 10];
    let mut consumption = [0.0; 10];
    if per_decile <= 0.0 {
        return DecileTable {
            persons_per_decile: 0.0,
            disposable_per_capita: disposable,
            consumption_per_capita: consumption,
        };
    }
    let mut group_iter = order.iter();
    let mut current = group_iter.next().copied();
    let mut remaining_in_group = current.map(|g| groups[g].population).unwrap_or(0.0);
    for (d, slot) in disposable.iter_mut().enumerate() {
        let mut need = per_decile;
        let mut income_total = 0.0;
        while need > 1e-12 * per_decile {
            let Some(g) = current else { break };
            if remaining_in_group <= 0.0 {
                current = group_iter.next().copied();
                remaining_in_group = current.map(|g| groups[g].population).unwrap_or(0.0);
                continue;
            }
            let take = need.min(remaining_in_group);
            income_total += take * groups[g].disposable;
            remaining_in_group -= take;
            need -= take;
        }
        *slot = income_total / per_decile;
        consumption[d] = propensities[d] * *slot;
    }
    DecileTable {
        persons_per_decile: per_decile,
        disposable_per_capita: disposable,
        consumption_per_capita: consumption,
    }
}

// ---------------------------------------------------------------------------
// Capital
// ---------------------------------------------------------------------------

/// Produced capital after one year of investment and depreciation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapitalAccount {
    /// End-of-year stock, euros (never negative).
    pub stock: Money,
    /// Net change over the year: investment minus depreciation, after
    /// any clamp at zero.
    pub net_change: Money,
    /// True when the stock was written off completely this year.  A
    /// depleted stock is an event the reports surface, not an error.
    pub depleted: bool,
}

/// Advances the capital stock by one year.
pub fn capital_step(stock: Money, investment: Money, depreciation_rate: Scalar) -> CapitalAccount {
    let next = stock * (1.0 - depreciation_rate) + investment;
    if next <= 0.0 {
        CapitalAccount {
            stock: 0.0,
            net_change: -stock,
            depleted: true,
        }
    } else {
        CapitalAccount {
            stock: next,
            net_change: next - stock,
            depleted: false,
        }
    }
}

// ---------------------------------------------------------------------------
// Stock-flow ledger
// ---------------------------------------------------------------------------

/// The five institutional agents of the flow matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agent {
    Households,
    Firms,
    Government,
    Banks,
    RestOfWorld,
}

impl Agent {
    pub const ALL: [Agent; 5] = [
        Agent::Households,
        Agent::Firms,
        Agent::Government,
        Agent::Banks,
        Agent::RestOfWorld,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Agent::Households => "households",
            Agent::Firms => "firms",
            Agent::Government => "government",
            Agent::Banks => "banks",
            Agent::RestOfWorld => "rest_of_world",
        }
    }

    pub fn index(self) -> usize {
        Agent::ALL.iter().position(|a| *a == self).unwrap()
    }
}

/// Kinds of recorded flows.  `Financing` entries are the balancing
/// counter-movements (deposits and loans) and are excluded from the
/// net-lending computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowKind {
    Wages,
    Dividends,
    IncomeTax,
    ProductionTax,
    CarbonTax,
    Benefits,
    Pensions,
    Consumption,
    GovernmentConsumption,
    Investment,
    Interest,
    Exports,
    Imports,
    Financing,
}

impl FlowKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FlowKind::Wages => "wages",
            FlowKind::Dividends => "dividends",
            FlowKind::IncomeTax => "income_tax",
            FlowKind::ProductionTax => "production_tax",
            FlowKind::CarbonTax => "carbon_tax",
            FlowKind::Benefits => "benefits",
            FlowKind::Pensions => "pensions",
            FlowKind::Consumption => "consumption",
            FlowKind::GovernmentConsumption => "government_consumption",
            FlowKind::Investment => "investment",
            FlowKind::Interest => "interest",
            FlowKind::Exports => "exports",
            FlowKind::Imports => "imports",
            FlowKind::Financing => "financing",
        }
    }

    pub fn is_financing(self) -> bool {
        self == FlowKind::Financing
    }
}

/// One directed flow of euros between agents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flow {
    pub kind: FlowKind,
    pub payer: Agent,
    pub payee: Agent,
    pub amount: Money,
}

/// All flows of one year.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FlowMatrix {
    pub flows: Vec<Flow>,
}

impl FlowMatrix {
    pub fn push(&mut self, kind: FlowKind, payer: Agent, payee: Agent, amount: Money) {
        self.flows.push(Flow {
            kind,
            payer,
            payee,
            amount,
        });
    }

    /// Net lending by agent over the non-financing flows: inflows minus
    /// outflows, in [`Agent::ALL`] order.
    pub fn net_lending(&self) -> [Money; 5] {
        let mut nl = [0.0; 5];
        for flow in &self.flows {
            if flow.kind.is_financing() {
                continue;
            }
            nl[flow.payee.index()] += flow.amount;
            nl[flow.payer.index()] -= flow.amount;
        }
        nl
    }

    /// Adds the financing counter-flows that route every agent's net
    /// lending through the banking ledger, leaving each agent's total
    /// balance (real plus financing) at zero.
    pub fn close_financing(&mut self) {
        let nl = self.net_lending();
        for agent in Agent::ALL {
            if agent == Agent::Banks {
                continue;
            }
            let position = nl[agent.index()];
            if position > 0.0 {
                self.push(FlowKind::Financing, agent, Agent::Banks, position);
            } else if position < 0.0 {
                self.push(FlowKind::Financing, Agent::Banks, agent, -position);
            }
        }
    }
}

/// Verifies the economy-wide net-lending closure.
///
/// Every non-financing euro paid is a euro received, so the positions
/// must sum to zero up to floating-point noise; a larger residual means
/// a flow was dropped or double-counted and the year is unsound.
pub fn stock_flow_audit(
    matrix: &FlowMatrix,
    expected: &[Money; 5],
    gdp: Money,
    year: i32,
) -> Result<[Money; 5]> {
    let nl = matrix.net_lending();
    let tolerance = SFC_TOL * gdp.abs().max(1.0);
    // Each agent's balance from the flow matrix must match its budget
    // identity. Double-entry flows sum to zero mechanically, so only a
    // per-agent cross-check against independently derived budgets can
    // catch a mis-booked or missing flow.
    for agent in Agent::ALL {
        let residual = nl[agent.index()] - expected[agent.index()];
        if residual.abs() > tolerance {
            return Err(ModelError::Inconsistency {
                year,
                residual,
                tolerance,
            });
        }
    }
    // The budget identities themselves must close: one sector's outlay
    // is another's receipt, so the five balances cancel.
    let residual: Money = expected.iter().sum();
    if residual.abs() > tolerance {
        return Err(ModelError::Inconsistency {
            year,
            residual,
            tolerance,
        });
    }
    Ok(nl)
}
