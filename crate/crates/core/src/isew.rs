//! Welfare accounting: the component registry and the three aggregate
//! measures built from it.
//!
//! Two sustainable-welfare variants and one adjusted-expenditure ledger
//! are assembled from a shared registry of components:
//!
//! * **BCE** — the territorial welfare measure: consumption-anchored
//!   benefits minus domestic pollution, inequality and extreme-weather
//!   costs.
//! * **BCPA** — the consumption-footprint variant: the same benefit
//!   core plus the change in produced capital, minus footprint-based
//!   pollution, climate, resource-depletion and nuclear costs.
//! * **IAEW** — a benefits-only expenditure ledger used as a
//!   cross-check; defensive spending is restored rather than deducted.
//!
//! Component values are stored as magnitudes with the sign supplied by
//! the measure's membership table, so the same component can be a cost
//! in one measure and a (restored) benefit in another.

use std::collections::BTreeMap;

use crate::config::WelfareParams;
use crate::error::{ModelError, Result};
use crate::{Money, Scalar};

use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

/// Every welfare component the model knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentId {
    UnpaidWork,
    IndividualConsumption,
    ShadowEconomy,
    GovernmentNondefensive,
    DefensiveExpenditure,
    InequalityLosses,
    AirPollution,
    NitrogenPollution,
    ExtremeWeather,
    ClimateBreakdown,
    EnergyDepletion,
    NuclearPower,
    CapitalStockChange,
}

impl ComponentId {
    pub const ALL: [ComponentId; 13] = [
        ComponentId::UnpaidWork,
        ComponentId::IndividualConsumption,
        ComponentId::ShadowEconomy,
        ComponentId::GovernmentNondefensive,
        ComponentId::DefensiveExpenditure,
        ComponentId::InequalityLosses,
        ComponentId::AirPollution,
        ComponentId::NitrogenPollution,
        ComponentId::ExtremeWeather,
        ComponentId::ClimateBreakdown,
        ComponentId::EnergyDepletion,
        ComponentId::NuclearPower,
        ComponentId::CapitalStockChange,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ComponentId::UnpaidWork => "unpaid_work",
            ComponentId::IndividualConsumption => "individual_consumption",
            ComponentId::ShadowEconomy => "shadow_economy",
            ComponentId::GovernmentNondefensive => "government_nondefensive",
            ComponentId::DefensiveExpenditure => "defensive_expenditure",
            ComponentId::InequalityLosses => "inequality_losses",
            ComponentId::AirPollution => "air_pollution",
            ComponentId::NitrogenPollution => "nitrogen_pollution",
            ComponentId::ExtremeWeather => "extreme_weather",
            ComponentId::ClimateBreakdown => "climate_breakdown",
            ComponentId::EnergyDepletion => "energy_depletion",
            ComponentId::NuclearPower => "nuclear_power",
            ComponentId::CapitalStockChange => "capital_stock_change",
        }
    }

    pub fn parse(name: &str) -> Option<ComponentId> {
        ComponentId::ALL.into_iter().find(|id| id.as_str() == name)
    }

    /// How the component's value is produced.
    pub fn mode(self) -> ComponentMode {
        match self {
            ComponentId::DefensiveExpenditure => ComponentMode::ShareOfEndogenous {
                base: ShareBase::Consumption,
            },
            ComponentId::ShadowEconomy => ComponentMode::ShareOfEndogenous {
                base: ShareBase::Gdp,
            },
            _ => ComponentMode::Endogenous,
        }
    }
}

/// The endogenous aggregate a share-mode component is pegged to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShareBase {
    Consumption,
    Gdp,
}

/// Whether a component's value is derived from simulated aggregates or
/// pegged to one of them by a (drifting) share.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentMode {
    Endogenous,
    ShareOfEndogenous { base: ShareBase },
}

/// Sign a component carries inside a measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Contribution {
    Benefit,
    Cost,
}

/// The three aggregate measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Bce,
    Bcpa,
    Iaew,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Bce, Measure::Bcpa, Measure::Iaew];

    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Bce => "isew_bce",
            Measure::Bcpa => "isew_bcpa",
            Measure::Iaew => "iaew",
        }
    }

    /// Membership table: which components the measure contains and with
    /// what sign.
    pub fn members(self) -> &'static [(ComponentId, Contribution)] {
        use ComponentId::*;
        use Contribution::*;
        match self {
            Measure::Bce => &[
                (UnpaidWork, Benefit),
                (IndividualConsumption, Benefit),
                (ShadowEconomy, Benefit),
                (GovernmentNondefensive, Benefit),
                (DefensiveExpenditure, Cost),
                (InequalityLosses, Cost),
                (AirPollution, Cost),
                (NitrogenPollution, Cost),
                (ExtremeWeather, Cost),
            ],
            Measure::Bcpa => &[
                (UnpaidWork, Benefit),
                (IndividualConsumption, Benefit),
                (ShadowEconomy, Benefit),
                (GovernmentNondefensive, Benefit),
                (CapitalStockChange, Benefit),
                (DefensiveExpenditure, Cost),
                (InequalityLosses, Cost),
                (AirPollution, Cost),
                (NitrogenPollution, Cost),
                (ClimateBreakdown, Cost),
                (EnergyDepletion, Cost),
                (NuclearPower, Cost),
            ],
            Measure::Iaew => &[
                (IndividualConsumption, Benefit),
                (DefensiveExpenditure, Benefit),
                (CapitalStockChange, Benefit),
                (GovernmentNondefensive, Benefit),
                (ShadowEconomy, Benefit),
                (UnpaidWork, Benefit),
            ],
        }
    }

    fn contribution(self, id: ComponentId) -> Option<Contribution> {
        self.members()
            .iter()
            .find(|(member, _)| *member == id)
            .map(|(_, c)| *c)
    }
}

/// One component's value within a measure, euros (a magnitude; the
/// membership table supplies the sign — except the capital-stock change,
/// which keeps its own sign so a shrinking stock subtracts).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComponentValue {
    pub id: ComponentId,
    pub value: Money,
}

/// Validates a component set against a measure's membership table and
/// returns the signed total.
pub fn measure_total(measure: Measure, components: &[ComponentValue]) -> Result<Money> {
    let mut seen: Vec<ComponentId> = Vec::with_capacity(components.len());
    let mut total = 0.0;
    for component in components {
        if seen.contains(&component.id) {
            return Err(ModelError::DuplicateComponent {
                component: component.id.as_str().to_owned(),
                index: measure.as_str().to_owned(),
            });
        }
        seen.push(component.id);
        let Some(contribution) = measure.contribution(component.id) else {
            return Err(ModelError::UnknownComponent(format!(
                "{} (not a member of {})",
                component.id.as_str(),
                measure.as_str()
            )));
        };
        total += match contribution {
            Contribution::Benefit => component.value,
            Contribution::Cost => -component.value,
        };
    }
    for (member, _) in measure.members() {
        if !seen.contains(member) {
            return Err(ModelError::MissingComponent {
                component: member.as_str().to_owned(),
                index: measure.as_str().to_owned(),
            });
        }
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Component arithmetic
// ---------------------------------------------------------------------------

/// Value of a share-pegged component: `share × (1+drift)^t × base`.
pub fn share_component(share: Scalar, drift: Scalar, years_elapsed: Scalar, base: Money) -> Money {
    share * (1.0 + drift).powf(years_elapsed) * base
}

/// Unpaid household and care work valued at the replacement wage.
pub fn unpaid_work_value(annual_hours: Scalar, hourly_wage: Money) -> Money {
    annual_hours * hourly_wage
}

/// Welfare lost to inequality: consumption scaled by the Atkinson index
/// in excess of the tolerated floor.
pub fn inequality_loss(consumption: Money, atkinson: Scalar, floor: Scalar) -> Money {
    consumption * (atkinson - floor).max(0.0)
}

/// Extreme-weather damage: a base level on a constant relative trend.
pub fn extreme_weather_cost(base: Money, trend: Scalar, years_elapsed: Scalar) -> Money {
    base * (1.0 + trend).powf(years_elapsed)
}

fn unit_cost(costs: &BTreeMap<String, Scalar>, id: ComponentId) -> Result<Scalar> {
    costs
        .get(id.as_str())
        .copied()
        .ok_or_else(|| ModelError::MissingUnitCost(id.as_str().to_owned()))
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

/// Everything one year's welfare accounting needs.
#[derive(Debug, Clone)]
pub struct WelfareInputs<'a> {
    pub years_elapsed: Scalar,
    /// Household consumption expenditure, euros.
    pub consumption: Money,
    /// Government consumption expenditure, euros.
    pub government: Money,
    pub gdp: Money,
    /// Unpaid household and care work, hours over the year.
    pub unpaid_hours: Scalar,
    /// Net change of the produced capital stock, euros (signed).
    pub capital_net_change: Money,
    /// Atkinson index of decile consumption.
    pub atkinson: Scalar,
    /// Air pollutants, territorial and footprint, tonnes.
    pub air_territorial: Scalar,
    pub air_footprint: Scalar,
    /// Reactive nitrogen, territorial and footprint, tonnes.
    pub nitrogen_territorial: Scalar,
    pub nitrogen_footprint: Scalar,
    /// Carbon-dioxide footprint, tonnes.
    pub co2_footprint: Scalar,
    /// Non-renewable share of the primary-energy footprint, joules.
    pub nonrenewable_energy_footprint: Scalar,
    /// Nuclear share of territorial primary energy, joules.
    pub nuclear_energy_territorial: Scalar,
    pub params: &'a WelfareParams,
    pub unit_costs: &'a BTreeMap<String, Scalar>,
}

/// The assembled measures of one year.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WelfareOutputs {
    pub bce_components: Vec<ComponentValue>,
    pub bcpa_components: Vec<ComponentValue>,
    pub iaew_components: Vec<ComponentValue>,
    pub bce: Money,
    pub bcpa: Money,
    pub iaew: Money,
}

/// Computes all components and assembles the three measures.
pub fn compute_welfare(inputs: &WelfareInputs) -> Result<WelfareOutputs> {
    let p = inputs.params;
    let t = inputs.years_elapsed;

    let unpaid = ComponentValue {
        id: ComponentId::UnpaidWork,
        value: unpaid_work_value(
            inputs.unpaid_hours,
            p.unpaid_wage * (1.0 + p.unpaid_wage_growth).powf(t),
        ),
    };
    let consumption = ComponentValue {
        id: ComponentId::IndividualConsumption,
        value: inputs.consumption,
    };
    let shadow = ComponentValue {
        id: ComponentId::ShadowEconomy,
        value: share_component(p.shadow_share, p.shadow_drift, t, inputs.gdp),
    };
    let government_nd = ComponentValue {
        id: ComponentId::GovernmentNondefensive,
        value: share_component(
            p.government_nondefensive_share,
            p.government_nondefensive_drift,
            t,
            inputs.government,
        ),
    };
    let defensive_narrow = ComponentValue {
        id: ComponentId::DefensiveExpenditure,
        value: share_component(p.defensive_share_narrow, p.defensive_drift, t, inputs.consumption),
    };
    let defensive_broad = ComponentValue {
        id: ComponentId::DefensiveExpenditure,
        value: share_component(p.defensive_share_broad, p.defensive_drift, t, inputs.consumption),
    };
    let inequality = ComponentValue {
        id: ComponentId::InequalityLosses,
        value: inequality_loss(inputs.consumption, inputs.atkinson, p.inequality_floor),
    };
    let weather = ComponentValue {
        id: ComponentId::ExtremeWeather,
        value: extreme_weather_cost(p.weather_base, p.weather_trend, t),
    };
    let capital = ComponentValue {
        id: ComponentId::CapitalStockChange,
        value: inputs.capital_net_change,
    };

    let air_cost = unit_cost(inputs.unit_costs, ComponentId::AirPollution)?;
    let nitrogen_cost = unit_cost(inputs.unit_costs, ComponentId::NitrogenPollution)?;
    let climate_cost = unit_cost(inputs.unit_costs, ComponentId::ClimateBreakdown)?;
    let depletion_cost = unit_cost(inputs.unit_costs, ComponentId::EnergyDepletion)?;
    let nuclear_cost = unit_cost(inputs.unit_costs, ComponentId::NuclearPower)?;

    let air_territorial = ComponentValue {
        id: ComponentId::AirPollution,
        value: air_cost * inputs.air_territorial,
    };
    let air_footprint = ComponentValue {
        id: ComponentId::AirPollution,
        value: air_cost * inputs.air_footprint,
    };
    let nitrogen_territorial = ComponentValue {
        id: ComponentId::NitrogenPollution,
        value: nitrogen_cost * inputs.nitrogen_territorial,
    };
    let nitrogen_footprint = ComponentValue {
        id: ComponentId::NitrogenPollution,
        value: nitrogen_cost * inputs.nitrogen_footprint,
    };
    let climate = ComponentValue {
        id: ComponentId::ClimateBreakdown,
        value: climate_cost * inputs.co2_footprint,
    };
    let depletion = ComponentValue {
        id: ComponentId::EnergyDepletion,
        value: depletion_cost * inputs.nonrenewable_energy_footprint,
    };
    let nuclear = ComponentValue {
        id: ComponentId::NuclearPower,
        value: nuclear_cost * inputs.nuclear_energy_territorial,
    };

    let bce_components = vec![
        unpaid,
        consumption,
        shadow,
        government_nd,
        defensive_narrow,
        inequality,
        air_territorial,
        nitrogen_territorial,
        weather,
    ];
    let bcpa_components = vec![
        unpaid,
        consumption,
        shadow,
        government_nd,
        capital,
        defensive_broad,
        inequality,
        air_footprint,
        nitrogen_footprint,
        climate,
        depletion,
        nuclear,
    ];
    let iaew_components = vec![
        consumption,
        defensive_narrow,
        capital,
        government_nd,
        shadow,
        unpaid,
    ];

    let bce = measure_total(Measure::Bce, &bce_components)?;
    let bcpa = measure_total(Measure::Bcpa, &bcpa_components)?;
    let iaew = measure_total(Measure::Iaew, &iaew_components)?;

    Ok(WelfareOutputs {
        bce_components,
        bcpa_components,
        iaew_components,
        bce,
        bcpa,
        iaew,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn membership_tables_have_the_expected_shape() {
        assert_eq!(Measure::Bce.members().len(), 9);
        assert_eq!(Measure::Bcpa.members().len(), 12);
        assert_eq!(Measure::Iaew.members().len(), 6);

        // The territorial measure carries extreme weather but none of
        // the footprint-era costs or the capital adjustment.
        let bce: Vec<ComponentId> = Measure::Bce.members().iter().map(|(id, _)| *id).collect();
        assert!(bce.contains(&ComponentId::ExtremeWeather));
        assert!(!bce.contains(&ComponentId::ClimateBreakdown));
        assert!(!bce.contains(&ComponentId::EnergyDepletion));
        assert!(!bce.contains(&ComponentId::NuclearPower));
        assert!(!bce.contains(&ComponentId::CapitalStockChange));

        // The footprint measure swaps extreme weather for the climate,
        // depletion and nuclear costs and adds the capital change.
        let bcpa: Vec<ComponentId> = Measure::Bcpa.members().iter().map(|(id, _)| *id).collect();
        assert!(!bcpa.contains(&ComponentId::ExtremeWeather));
        assert!(bcpa.contains(&ComponentId::ClimateBreakdown));
        assert!(bcpa.contains(&ComponentId::CapitalStockChange));

        // The expenditure ledger is benefits-only.
        assert!(Measure::Iaew
            .members()
            .iter()
            .all(|(_, c)| *c == Contribution::Benefit));

        // Share-mode components are exactly the defensive and shadow
        // entries; nothing is exogenous.
        for id in ComponentId::ALL {
            match id {
                ComponentId::DefensiveExpenditure => assert_eq!(
                    id.mode(),
                    ComponentMode::ShareOfEndogenous {
                        base: ShareBase::Consumption
                    }
                ),
                ComponentId::ShadowEconomy => assert_eq!(
                    id.mode(),
                    ComponentMode::ShareOfEndogenous {
                        base: ShareBase::Gdp
                    }
                ),
                _ => assert_eq!(id.mode(), ComponentMode::Endogenous),
            }
        }
    }

    #[test]
    fn component_names_round_trip() {
        for id in ComponentId::ALL {
            assert_eq!(ComponentId::parse(id.as_str()), Some(id));
        }
        assert_eq!(ComponentId::parse("not_a_component"), None);
    }

    #[test]
    fn totals_validate_membership() {
        let mut components: Vec<ComponentValue> = Measure::Bce
            .members()
            .iter()
            .map(|(id, _)| ComponentValue { id: *id, value: 1.0 })
            .collect();
        // 4 benefits - 5 costs = -1.
        assert_relative_eq!(measure_total(Measure::Bce, &components).unwrap(), -1.0);

        // An extra foreign component is rejected.
        components.push(ComponentValue {
            id: ComponentId::CapitalStockChange,
            value: 1.0,
        });
        assert!(matches!(
            measure_total(Measure::Bce, &components),
            Err(ModelError::UnknownComponent(_))
        ));
        components.pop();

        // A duplicate is rejected.
        components.push(ComponentValue {
            id: ComponentId::UnpaidWork,
            value: 1.0,
        });
        assert!(matches!(
            measure_total(Measure::Bce, &components),
            Err(ModelError::DuplicateComponent { .. })
        ));
        components.pop();

        // A missing member is rejected.
        components.retain(|c| c.id != ComponentId::ExtremeWeather);
        assert!(matches!(
            measure_total(Measure::Bce, &components),
            Err(ModelError::MissingComponent { .. })
        ));
    }

    fn toy_params() -> WelfareParams {
        WelfareParams {
            defensive_share_narrow: 0.10,
            defensive_share_broad: 0.25,
            defensive_drift: -0.02,
            shadow_share: 0.12,
            shadow_drift: 0.0,
            government_nondefensive_share: 0.40,
            government_nondefensive_drift: 0.003,
            unpaid_wage: 9.0,
            unpaid_wage_growth: 0.0,
            atkinson_epsilon: 0.8,
            inequality_floor: 0.04,
            weather_base: 15.0,
            weather_trend: -0.03,
        }
    }

    fn toy_costs() -> BTreeMap<String, Scalar> {
        [
            ("air_pollution", 2.0),
            ("nitrogen_pollution", 3.0),
            ("climate_breakdown", 0.5),
            ("energy_depletion", 0.1),
            ("nuclear_power", 0.2),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_owned(), v))
        .collect()
    }

    fn toy_inputs<'a>(
        params: &'a WelfareParams,
        costs: &'a BTreeMap<String, Scalar>,
    ) -> WelfareInputs<'a> {
        WelfareInputs {
            years_elapsed: 0.0,
            consumption: 600.0,
            government: 220.0,
            gdp: 1_120.0,
            unpaid_hours: 50.0,
            capital_net_change: 140.0,
            atkinson: 0.30,
            air_territorial: 10.0,
            air_footprint: 12.0,
            nitrogen_territorial: 4.0,
            nitrogen_footprint: 5.0,
            co2_footprint: 260.0,
            nonrenewable_energy_footprint: 400.0,
            nuclear_energy_territorial: 50.0,
            params,
            unit_costs: costs,
        }
    }

    #[test]
    fn base_year_totals_match_hand_arithmetic() {
        let params = toy_params();
        let costs = toy_costs();
        let outputs = compute_welfare(&toy_inputs(&params, &costs)).unwrap();

        // Benefits: unpaid 450, consumption 600, shadow 134.4, gov 88.
        // BCE costs: defensive 60, inequality 156, air 20, nitrogen 12,
        // weather 15.
        let bce_benefits = 450.0 + 600.0 + 0.12 * 1_120.0 + 0.40 * 220.0;
        let bce_costs = 60.0 + 600.0 * 0.26 + 20.0 + 12.0 + 15.0;
        assert_relative_eq!(outputs.bce, bce_benefits - bce_costs, epsilon = 1e-9);

        // BCPA swaps in the broad defensive share, footprint pollution,
        // climate, depletion, nuclear, and the capital change.
        let bcpa_benefits = bce_benefits + 140.0;
        let bcpa_costs = 150.0 + 156.0 + 24.0 + 15.0 + 130.0 + 40.0 + 10.0;
        assert_relative_eq!(outputs.bcpa, bcpa_benefits - bcpa_costs, epsilon = 1e-9);

        // The expenditure ledger restores narrow defensive spending.
        let iaew = 600.0 + 60.0 + 140.0 + 88.0 + 134.4 + 450.0;
        assert_relative_eq!(outputs.iaew, iaew, epsilon = 1e-9);

        assert_eq!(outputs.bce_components.len(), 9);
        assert_eq!(outputs.bcpa_components.len(), 12);
        assert_eq!(outputs.iaew_components.len(), 6);
    }

    #[test]
    fn drifts_and_trends_compound_over_time() {
        let params = toy_params();
        let costs = toy_costs();
        let mut inputs = toy_inputs(&params, &costs);
        inputs.years_elapsed = 10.0;
        let outputs = compute_welfare(&inputs).unwrap();

        let defensive = outputs
            .bce_components
            .iter()
            .find(|c| c.id == ComponentId::DefensiveExpenditure)
            .unwrap();
        assert_relative_eq!(
            defensive.value,
            0.10 * 0.98_f64.powi(10) * 600.0,
            epsilon = 1e-9
        );
        let weather = outputs
            .bce_components
            .iter()
            .find(|c| c.id == ComponentId::ExtremeWeather)
            .unwrap();
        assert_relative_eq!(weather.value, 15.0 * 0.97_f64.powi(10), epsilon = 1e-9);
        let government = outputs
            .bce_components
            .iter()
            .find(|c| c.id == ComponentId::GovernmentNondefensive)
            .unwrap();
        assert_relative_eq!(
            government.value,
            0.40 * 1.003_f64.powi(10) * 220.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn atkinson_below_the_floor_costs_nothing() {
        assert_relative_eq!(inequality_loss(600.0, 0.03, 0.04), 0.0);
        assert_relative_eq!(inequality_loss(600.0, 0.04, 0.04), 0.0);
        assert_relative_eq!(inequality_loss(600.0, 0.05, 0.04), 6.0, epsilon = 1e-12);
    }

    #[test]
    fn shrinking_capital_subtracts_from_bcpa_and_iaew() {
        let params = toy_params();
        let costs = toy_costs();
        let mut inputs = toy_inputs(&params, &costs);
        let base = compute_welfare(&inputs).unwrap();
        inputs.capital_net_change = -60.0;
        let shrunk = compute_welfare(&inputs).unwrap();
        assert_relative_eq!(base.bcpa - shrunk.bcpa, 200.0, epsilon = 1e-9);
        assert_relative_eq!(base.iaew - shrunk.iaew, 200.0, epsilon = 1e-9);
        // The territorial measure does not carry the capital term.
        assert_relative_eq!(base.bce, shrunk.bce, epsilon = 1e-12);
    }

    #[test]
    fn missing_unit_cost_is_an_error() {
        let params = toy_params();
        let mut costs = toy_costs();
        costs.remove("climate_breakdown");
        let inputs = toy_inputs(&params, &costs);
        match compute_welfare(&inputs) {
            Err(ModelError::MissingUnitCost(component)) => {
                assert_eq!(component, "climate_breakdown");
            }
            other => panic!("expected missing unit cost, got {other:?}"),
        }
    }
}
