//! Cohort demographics, labour-market matching and time use.
//!
//! The population lives on a fixed grid of gender × ten-year age band ×
//! skill cells.  Each year every band loses a survival-weighted share to
//! mortality, promotes a fixed fraction to the next band (the ageing
//! flow), and the youngest band receives a declining birth inflow.
//! Skill is assigned at birth and never changes.
//!
//! Labour demand is matched to the grid with capped proportional
//! weights: each cell attracts employment in proportion to its
//! base-year employment share until its labour force is exhausted, and
//! the overflow is re-spread over the cells that still have slack.
//! Time-use profiles convert the resulting status populations into paid
//! and unpaid hours.

use crate::config::{
    CohortCell, Demography, Gender, Skill, Status, TimeUseProfile, AGE_BANDS, WEEKS_PER_YEAR,
};
use crate::error::{ModelError, Result};
use crate::num::proportional_split;
use crate::{Persons, Scalar};

/// The population state: one cell per (gender, band, skill) combination,
/// in canonical order, plus the band thresholds of the calibration.
#[derive(Debug, Clone, PartialEq)]
pub struct CohortGrid {
    pub cells: Vec<CohortCell>,
    adult_band: usize,
    elderly_band: usize,
}

impl CohortGrid {
    /// Builds the base-year grid from the calibration.
    pub fn new(demography: &Demography) -> CohortGrid {
        CohortGrid {
            cells: demography.cells.clone(),
            adult_band: demography.adult_band,
            elderly_band: demography.elderly_band,
        }
    }

    pub fn total_population(&self) -> Persons {
        self.cells.iter().map(|c| c.population).sum()
    }

    /// Persons at or above the adult band.
    pub fn adults(&self) -> Persons {
        self.cells
            .iter()
            .filter(|c| c.band >= self.adult_band)
            .map(|c| c.population)
            .sum()
    }

    pub fn adults_by_gender(&self, gender: Gender) -> Persons {
        self.cells
            .iter()
            .filter(|c| c.band >= self.adult_band && c.gender == gender)
            .map(|c| c.population)
            .sum()
    }

    /// Persons at or above the elderly band (pension recipients).
    pub fn pensioners(&self) -> Persons {
        self.cells
            .iter()
            .filter(|c| c.band >= self.elderly_band)
            .map(|c| c.population)
            .sum()
    }

    /// Adults below the elderly band who do not participate in the
    /// labour market (the benefit-receiving out-of-labour-force group).
    pub fn working_age_olf(&self) -> Persons {
        self.cells
            .iter()
            .filter(|c| c.band >= self.adult_band && c.band < self.elderly_band)
            .map(|c| c.population * (1.0 - c.participation))
            .sum()
    }

    /// Labour force of one cell.
    pub fn cell_labour_force(&self, index: usize) -> Persons {
        let c = &self.cells[index];
        c.population * c.participation
    }

    pub fn labour_force(&self) -> Persons {
        (0..self.cells.len()).map(|i| self.cell_labour_force(i)).sum()
    }

    pub fn labour_force_by_gender(&self, gender: Gender) -> Persons {
        self.cells
            .iter()
            .filter(|c| c.gender == gender)
            .map(|c| c.population * c.participation)
            .sum()
    }

    pub fn labour_force_by_skill(&self, skill: Skill) -> Persons {
        self.cells
            .iter()
            .filter(|c| c.skill == skill)
            .map(|c| c.population * c.participation)
            .sum()
    }
}

/// Advances the grid by one year.
///
/// Within each (gender, skill) lane the band populations move through
/// survival and promotion: a band keeps the non-promoted share of its
/// survivors, receives the promoted survivors of the band below, the
/// top band accumulates, and the youngest band receives the year's
/// births split by the configured gender and skill shares.  `births`
/// is the absolute birth inflow for the year being entered.
pub fn step_cohorts(grid: &CohortGrid, demography: &Demography, births: Persons) -> CohortGrid {
    let mut next = grid.clone();
    for gender in Gender::ALL {
        for skill in Skill::ALL {
            // Collect this lane's band populations in order.
            let lane: Vec<usize> = (0..grid.cells.len())
                .filter(|&i| grid.cells[i].gender == gender && grid.cells[i].skill == skill)
                .collect();
            debug_assert_eq!(lane.len(), AGE_BANDS);
            let survived: Vec<Scalar> = lane
                .iter()
                .map(|&i| grid.cells[i].population * demography.survival[grid.cells[i].band])
                .collect();
            let rate = demography.band_promotion_rate;
            let gender_share = match gender {
                Gender::Female => demography.female_birth_share,
                Gender::Male => 1.0 - demography.female_birth_share,
            };
            let birth_inflow = births * gender_share * demography.birth_skill_shares[skill.index()];
            for (b, &cell_index) in lane.iter().enumerate() {
                let kept = if b + 1 == AGE_BANDS {
                    survived[b]
                } else {
                    survived[b] * (1.0 - rate)
                };
                let inflow = if b == 0 {
                    birth_inflow
                } else {
                    survived[b - 1] * rate
                };
                next.cells[cell_index].population = kept + inflow;
            }
        }
    }
    next
}

/// Birth inflow for a given year: the base flow declining geometrically.
pub fn births_for_year(demography: &Demography, year: i32, base_year: i32) -> Persons {
    let steps = (year - base_year).max(0) as Scalar;
    demography.births_base * (1.0 - demography.births_annual_decline).powf(steps)
}

/// Aggregate labour-market outcome of one year.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabourMarketState {
    pub employed: Persons,
    pub unemployed: Persons,
    pub out_of_labour_force: Persons,
    pub labour_force: Persons,
}

/// Employment by cohort cell plus the aggregate partition.
#[derive(Debug, Clone, PartialEq)]
pub struct EmploymentAllocation {
    /// Employed persons per grid cell, parallel to `grid.cells`.
    pub by_cell: Vec<Persons>,
    pub market: LabourMarketState,
}

impl EmploymentAllocation {
    pub fn employed_by_skill(&self, grid: &CohortGrid, skill: Skill) -> Persons {
        self.by_cell
            .iter()
            .zip(&grid.cells)
            .filter(|(_, c)| c.skill == skill)
            .map(|(&e, _)| e)
            .sum()
    }

    pub fn employed_by_gender(&self, grid: &CohortGrid, gender: Gender) -> Persons {
        self.by_cell
            .iter()
            .zip(&grid.cells)
            .filter(|(_, c)| c.gender == gender)
            .map(|(&e, _)| e)
            .sum()
    }

    pub fn unemployed_by_gender(&self, grid: &CohortGrid, gender: Gender) -> Persons {
        grid.labour_force_by_gender(gender) - self.employed_by_gender(grid, gender)
    }

    pub fn unemployment_rate(&self) -> Scalar {
        if self.market.labour_force <= 0.0 {
            0.0
        } else {
            self.market.unemployed / self.market.labour_force
        }
    }
}

/// Matches labour demand (persons) to the grid.
///
/// Demand is spread over cells in proportion to their base employment
/// shares; cells saturate at their labour force and the surplus demand
/// is re-spread over the remaining slack cells (falling back to slack
/// capacity itself once every weighted cell is full).  Total employment
/// is exactly `min(demand, labour force)`, unemployment is the rest of
/// the labour force, and adults outside the labour force complete the
/// partition.
pub fn allocate_employment(grid: &CohortGrid, demand_persons: Persons) -> EmploymentAllocation {
    let n = grid.cells.len();
    let capacity: Vec<Persons> = (0..n).map(|i| grid.cell_labour_force(i)).collect();
    let labour_force: Persons = capacity.iter().sum();
    let total_employed = demand_persons.max(0.0).min(labour_force);

    let mut employed = vec![0.0; n];
    let mut remaining = total_employed;
    // Capped proportional fill: at least one cell saturates per round,
    // so the loop is bounded by the cell count.
    for _ in 0..=n {
        if remaining <= 0.0 {
            break;
        }
        let slack: Vec<Scalar> = (0..n).map(|i| capacity[i] - employed[i]).collect();
        let weighted: Vec<Scalar> = (0..n)
            .map(|i| {
                if slack[i] > 0.0 {
                    grid.cells[i].base_employment_share
                } else {
                    0.0
                }
            })
            .collect();
        let weight_total: Scalar = weighted.iter().sum();
        // When every cell with slack has zero matching weight, spread by
        // the slack itself so the fill can still complete.
        let weights = if weight_total > 0.0 { weighted } else { slack.clone() };
        let shares = proportional_split(remaining, &weights);
        let mut placed = 0.0;
        for i in 0..n {
            let add = shares[i].min(slack[i].max(0.0));
            employed[i] += add;
            placed += add;
        }
        remaining -= placed;
        if placed <= 0.0 {
            break;
        }
    }
    // Remove fill noise so the partition identity holds exactly.
    let fill: Persons = employed.iter().sum();
    if fill > 0.0 && (fill - total_employed).abs() > 0.0 {
        let correction = total_employed / fill;
        for e in employed.iter_mut() {
            *e *= correction;
        }
    }

    let adults = grid.adults();
    let market = LabourMarketState {
        employed: total_employed,
        unemployed: labour_force - total_employed,
        out_of_labour_force: adults - labour_force,
        labour_force,
    };
    EmploymentAllocation {
        by_cell: employed,
        market,
    }
}

// ---------------------------------------------------------------------------
// Time use
// ---------------------------------------------------------------------------

/// Applies a working-time factor to one profile: paid hours scale by
/// `factor` and the freed hours are split across the other categories
/// in proportion to their current sizes.  The weekly total is
/// preserved.  Fails when hours are freed but every other category is
/// zero, since the reallocation is then undefined.
pub fn apply_hours_factor(profile: &TimeUseProfile, factor: Scalar) -> Result<TimeUseProfile> {
    let freed = profile.hours[0] * (1.0 - factor);
    let mut hours = profile.hours;
    hours[0] *= factor;
    if freed == 0.0 {
        return Ok(TimeUseProfile {
            status: profile.status,
            gender: profile.gender,
            hours,
        });
    }
    let others: Scalar = hours[1..].iter().sum();
    if others <= 0.0 {
        return Err(ModelError::DegenerateProfile(
            format!("{}/{}", profile.status.as_str(), profile.gender.as_str()),
            "freed paid hours cannot be reallocated: all other categories are zero".into(),
        ));
    }
    let split = proportional_split(freed, &hours[1..]);
    for (k, add) in split.iter().enumerate() {
        hours[k + 1] += add;
    }
    Ok(TimeUseProfile {
        status: profile.status,
        gender: profile.gender,
        hours,
    })
}

/// The six profiles in force for a year: employed profiles carry the
/// working-time factor, the others are untouched.
pub fn effective_profiles(
    base: &[TimeUseProfile],
    hours_factor: Scalar,
) -> Result<Vec<TimeUseProfile>> {
    base.iter()
        .map(|p| {
            if p.status == Status::Employed {
                apply_hours_factor(p, hours_factor)
            } else {
                Ok(p.clone())
            }
        })
        .collect()
}

/// Adult persons per (status, gender), the weighting the time-use
/// aggregation runs over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatusGenderCounts {
    /// Indexed `[status][gender]` in enum order.
    pub persons: [[Persons; 2]; 3],
}

/// Builds the status × gender population matrix from the grid and an
/// employment allocation.  Adults outside the labour force (including
/// pensioners) form the OLF column.
pub fn status_gender_counts(
    grid: &CohortGrid,
    allocation: &EmploymentAllocation,
) -> StatusGenderCounts {
    let mut persons = [[0.0; 2]; 3];
    for gender in Gender::ALL {
        let g = gender.index();
        let employed = allocation.employed_by_gender(grid, gender);
        let labour_force = grid.labour_force_by_gender(gender);
        let adults = grid.adults_by_gender(gender);
        persons[0][g] = employed;
        persons[1][g] = labour_force - employed;
        persons[2][g] = adults - labour_force;
    }
    StatusGenderCounts { persons }
}

fn profile_for(profiles: &[TimeUseProfile], status: Status, gender: Gender) -> &TimeUseProfile {
    profiles
        .iter()
        .find(|p| p.status == status && p.gender == gender)
        .expect("validated: all six profiles present")
}

/// Total unpaid work, hours per year.
pub fn aggregate_unpaid_hours(counts: &StatusGenderCounts, profiles: &[TimeUseProfile]) -> Scalar {
    let mut hours = 0.0;
    for (s, status) in Status::ALL.into_iter().enumerate() {
        for gender in Gender::ALL {
            let profile = profile_for(profiles, status, gender);
            hours += counts.persons[s][gender.index()] * profile.unpaid() * WEEKS_PER_YEAR;
        }
    }
    hours
}

/// Total paid work implied by the time-use side, hours per year.
pub fn aggregate_paid_hours(counts: &StatusGenderCounts, profiles: &[TimeUseProfile]) -> Scalar {
    let mut hours = 0.0;
    for gender in Gender::ALL {
        let profile = profile_for(profiles, Status::Employed, gender);
        hours += counts.persons[0][gender.index()] * profile.paid() * WEEKS_PER_YEAR;
    }
    hours
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Demography;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// A two-band, single-skill-column test demography: band 0 children,
    /// bands 1.. adults with chosen participation.
    fn toy_demography(participation: [Scalar; AGE_BANDS]) -> Demography {
        let mut cells = Vec::new();
        for gender in Gender::ALL {
            for band in 0..AGE_BANDS {
                for skill in Skill::ALL {
                    cells.push(CohortCell {
                        gender,
                        band,
                        skill,
                        population: 0.0,
                        participation: if band >= 1 { participation[band] } else { 0.0 },
                        base_employment_share: 0.0,
                    });
                }
            }
        }
        Demography {
            cells,
            survival: [1.0; AGE_BANDS],
            band_promotion_rate: 0.0,
            births_base: 0.0,
            births_annual_decline: 0.0,
            female_birth_share: 0.5,
            birth_skill_shares: [1.0, 0.0, 0.0],
            adult_band: 1,
            elderly_band: 8,
        }
    }

    fn cell_index(grid: &CohortGrid, gender: Gender, band: usize, skill: Skill) -> usize {
        grid.cells
            .iter()
            .position(|c| c.gender == gender && c.band == band && c.skill == skill)
            .unwrap()
    }

    #[test]
    fn identity_schedule_leaves_the_grid_unchanged() {
        let mut demo = toy_demography([0.0, 0.8, 0.9, 0.9, 0.8, 0.7, 0.4, 0.1, 0.0, 0.0]);
        for (k, cell) in demo.cells.iter_mut().enumerate() {
            cell.population = 100.0 + k as Scalar;
        }
        let grid = CohortGrid::new(&demo);
        let next = step_cohorts(&grid, &demo, 0.0);
        assert_eq!(grid, next);
    }

    #[test]
    fn promotion_into_a_non_participating_band_shrinks_the_labour_force() {
        // A single cohort of 100 persons with participation 0.8; ten
        // percent promote into a band with zero participation, so the
        // labour force falls by exactly the promoted participants.
        let mut demo = toy_demography([0.0; AGE_BANDS]);
        demo.band_promotion_rate = 0.1;
        let grid0 = {
            let mut g = CohortGrid::new(&demo);
            let i = cell_index(&g, Gender::Female, 3, Skill::Mid);
            g.cells[i].population = 100.0;
            g.cells[i].participation = 0.8;
            g
        };
        let before = grid0.labour_force();
        assert_relative_eq!(before, 80.0);
        let demo_step = Demography {
            cells: grid0.cells.clone(),
            ..demo
        };
        let next = step_cohorts(&grid0, &demo_step, 0.0);
        let i3 = cell_index(&next, Gender::Female, 3, Skill::Mid);
        let i4 = cell_index(&next, Gender::Female, 4, Skill::Mid);
        assert_relative_eq!(next.cells[i3].population, 90.0);
        assert_relative_eq!(next.cells[i4].population, 10.0);
        // Ten promoted persons carried participation 0.8 before the move.
        assert_relative_eq!(next.labour_force(), before - 10.0 * 0.8);
    }

    #[test]
    fn top_band_accumulates_and_births_enter_the_bottom() {
        let mut demo = toy_demography([0.0; AGE_BANDS]);
        demo.band_promotion_rate = 0.2;
        demo.female_birth_share = 0.6;
        demo.birth_skill_shares = [0.5, 0.3, 0.2];
        let mut grid = CohortGrid::new(&demo);
        let i8 = cell_index(&grid, Gender::Male, 8, Skill::Low);
        let i9 = cell_index(&grid, Gender::Male, 9, Skill::Low);
        grid.cells[i8].population = 50.0;
        grid.cells[i9].population = 30.0;
        let demo_step = Demography {
            cells: grid.cells.clone(),
            ..demo
        };
        let next = step_cohorts(&grid, &demo_step, 1000.0);
        assert_relative_eq!(next.cells[i8].population, 40.0);
        assert_relative_eq!(next.cells[i9].population, 40.0);
        let f0_low = cell_index(&next, Gender::Female, 0, Skill::Low);
        let m0_mid = cell_index(&next, Gender::Male, 0, Skill::Mid);
        assert_relative_eq!(next.cells[f0_low].population, 1000.0 * 0.6 * 0.5);
        assert_relative_eq!(next.cells[m0_mid].population, 1000.0 * 0.4 * 0.3);
    }

    #[test]
    fn births_decline_geometrically() {
        let mut demo = toy_demography([0.0; AGE_BANDS]);
        demo.births_base = 360_000.0;
        demo.births_annual_decline = 0.004;
        assert_relative_eq!(births_for_year(&demo, 2020, 2020), 360_000.0);
        assert_relative_eq!(births_for_year(&demo, 2021, 2020), 360_000.0 * 0.996);
        assert_relative_eq!(
            births_for_year(&demo, 2030, 2020),
            360_000.0 * 0.996_f64.powi(10)
        );
    }

    /// Grid with two working cells for the matching tests.
    fn matching_grid() -> CohortGrid {
        let mut demo = toy_demography([0.0; AGE_BANDS]);
        demo.adult_band = 1;
        let mut grid = CohortGrid::new(&demo);
        let a = cell_index(&grid, Gender::Female, 3, Skill::Low);
        let b = cell_index(&grid, Gender::Male, 4, Skill::High);
        grid.cells[a].population = 100.0;
        grid.cells[a].participation = 0.5; // labour force 50
        grid.cells[a].base_employment_share = 0.75;
        grid.cells[b].population = 100.0;
        grid.cells[b].participation = 0.9; // labour force 90
        grid.cells[b].base_employment_share = 0.25;
        grid
    }

    #[test]
    fn matching_follows_weights_until_a_cell_saturates() {
        let grid = matching_grid();
        let a = cell_index(&grid, Gender::Female, 3, Skill::Low);
        let b = cell_index(&grid, Gender::Male, 4, Skill::High);

        // Light demand: pure proportional split.
        let alloc = allocate_employment(&grid, 40.0);
        assert_relative_eq!(alloc.by_cell[a], 30.0);
        assert_relative_eq!(alloc.by_cell[b], 10.0);
        assert_relative_eq!(alloc.market.employed, 40.0);
        assert_relative_eq!(alloc.market.unemployed, 100.0);

        // Heavy demand: the weighted cell caps at 50 and the rest spills
        // into the other cell.
        let alloc = allocate_employment(&grid, 100.0);
        assert_relative_eq!(alloc.by_cell[a], 50.0);
        assert_relative_eq!(alloc.by_cell[b], 50.0, epsilon = 1e-9);
        assert_relative_eq!(alloc.market.employed, 100.0);

        // Demand beyond the labour force caps at the labour force.
        let alloc = allocate_employment(&grid, 1000.0);
        assert_relative_eq!(alloc.market.employed, 140.0);
        assert_relative_eq!(alloc.market.unemployed, 0.0);
    }

    #[test]
    fn partition_identity_holds() {
        let grid = matching_grid();
        for demand in [0.0, 17.3, 40.0, 100.0, 139.99, 500.0] {
            let alloc = allocate_employment(&grid, demand);
            let m = alloc.market;
            assert_relative_eq!(
                m.employed + m.unemployed + m.out_of_labour_force,
                grid.adults(),
                epsilon = 1e-9
            );
            assert_relative_eq!(m.employed + m.unemployed, m.labour_force, epsilon = 1e-9);
            let cell_total: Scalar = alloc.by_cell.iter().sum();
            assert_relative_eq!(cell_total, m.employed, epsilon = 1e-9);
        }
    }

    fn example_profile() -> TimeUseProfile {
        TimeUseProfile {
            status: Status::Employed,
            gender: Gender::Female,
            hours: [40.0, 20.0, 56.0, 8.0, 30.0, 14.0],
        }
    }

    #[test]
    fn hours_factor_reallocates_freed_time_proportionally() {
        let profile = example_profile();
        let reduced = apply_hours_factor(&profile, 0.85).unwrap();
        // Six freed hours split over 128 non-paid hours.
        assert_relative_eq!(reduced.hours[0], 34.0);
        assert_relative_eq!(reduced.hours[1], 20.0 + 6.0 * 20.0 / 128.0);
        assert_relative_eq!(reduced.hours[2], 56.0 + 6.0 * 56.0 / 128.0);
        assert_relative_eq!(reduced.hours[3], 8.0 + 6.0 * 8.0 / 128.0);
        assert_relative_eq!(reduced.hours[4], 30.0 + 6.0 * 30.0 / 128.0);
        assert_relative_eq!(reduced.hours[5], 14.0 + 6.0 * 14.0 / 128.0);
        assert_relative_eq!(reduced.hours.iter().sum::<Scalar>(), 168.0, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_profile_cannot_absorb_freed_hours() {
        let profile = TimeUseProfile {
            status: Status::Employed,
            gender: Gender::Male,
            hours: [168.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        };
        let err = apply_hours_factor(&profile, 0.9).unwrap_err();
        assert!(matches!(err, ModelError::DegenerateProfile(..)));
        // With no reduction the degenerate profile is untouched and fine.
        let same = apply_hours_factor(&profile, 1.0).unwrap();
        assert_eq!(same.hours, profile.hours);
    }

    fn six_profiles(employed_unpaid: Scalar, unemployed_unpaid: Scalar) -> Vec<TimeUseProfile> {
        let mut profiles = Vec::new();
        for status in Status::ALL {
            for gender in Gender::ALL {
                let (paid, unpaid) = match status {
                    Status::Employed => (36.0, employed_unpaid),
                    Status::Unemployed => (0.0, unemployed_unpaid),
                    Status::Olf => (0.0, unemployed_unpaid),
                };
                let sleep = 168.0 - paid - unpaid;
                profiles.push(TimeUseProfile {
                    status,
                    gender,
                    hours: [paid, unpaid, sleep, 0.0, 0.0, 0.0],
                });
            }
        }
        profiles
    }

    #[test]
    fn one_person_ten_hours_makes_520_hours_per_year() {
        let mut counts = StatusGenderCounts {
            persons: [[0.0; 2]; 3],
        };
        counts.persons[2][0] = 1.0; // one OLF woman
        let profiles = six_profiles(10.0, 10.0);
        assert_relative_eq!(aggregate_unpaid_hours(&counts, &profiles), 520.0);
    }

    #[test]
    fn moving_a_person_into_employment_lowers_unpaid_hours() {
        let profiles = six_profiles(14.0, 37.0);
        let base = StatusGenderCounts {
            persons: [[10.0, 10.0], [3.0, 3.0], [8.0, 8.0]],
        };
        let mut shifted = base;
        shifted.persons[1][0] -= 1.0;
        shifted.persons[0][0] += 1.0;
        let before = aggregate_unpaid_hours(&base, &profiles);
        let after = aggregate_unpaid_hours(&shifted, &profiles);
        assert_relative_eq!(before - after, (37.0 - 14.0) * WEEKS_PER_YEAR);
        assert!(after < before);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn step_conserves_population_without_births_or_deaths(
            pops in proptest::collection::vec(0.0..1e6_f64, 60)
        ) {
            let mut demo = toy_demography([0.5; AGE_BANDS]);
            demo.band_promotion_rate = 0.1;
            for (cell, p) in demo.cells.iter_mut().zip(&pops) {
                cell.population = *p;
            }
            let grid = CohortGrid::new(&demo);
            let next = step_cohorts(&grid, &demo, 0.0);
            let before = grid.total_population();
            let after = next.total_population();
            prop_assert!((before - after).abs() <= 1e-6 * before.max(1.0));
        }

        #[test]
        fn matching_total_is_the_capped_demand(
            demand in 0.0..300.0_f64,
            part_a in 0.1..1.0_f64,
            part_b in 0.1..1.0_f64,
            weight_a in 0.0..1.0_f64,
        ) {
            let mut grid = matching_grid();
            let a = cell_index(&grid, Gender::Female, 3, Skill::Low);
            let b = cell_index(&grid, Gender::Male, 4, Skill::High);
            grid.cells[a].participation = part_a;
            grid.cells[b].participation = part_b;
            grid.cells[a].base_employment_share = weight_a;
            grid.cells[b].base_employment_share = 1.0 - weight_a;
            let alloc = allocate_employment(&grid, demand);
            let expected = demand.min(grid.labour_force());
            prop_assert!((alloc.market.employed - expected).abs() <= 1e-9 * expected.max(1.0));
            for (i, &e) in alloc.by_cell.iter().enumerate() {
                prop_assert!(e >= -1e-12);
                prop_assert!(e <= grid.cell_labour_force(i) + 1e-9);
            }
        }
    }
}
