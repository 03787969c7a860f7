//! Calibration diagnostics: prints the base-year component structure and
//! the scenario trajectories against every target band. Run with
//! `cargo test -p isewsim --test diag -- --ignored --nocapture`.

use isewsim::engine::{run_scenario, Trajectory};
use isewsim::isew::{ComponentId, Contribution, Measure};
use isewsim::reference;

fn component(t: &Trajectory, year: i32, measure: Measure, id: ComponentId) -> f64 {
    let record = t.year(year).unwrap();
    let components = match measure {
        Measure::Bce => &record.welfare.bce_components,
        Measure::Bcpa => &record.welfare.bcpa_components,
        Measure::Iaew => &record.welfare.iaew_components,
    };
    components
        .iter()
        .find(|c| c.id == id)
        .map(|c| c.value)
        .unwrap_or(f64::NAN)
}

fn benefit_sum(t: &Trajectory, year: i32, measure: Measure) -> f64 {
    let record = t.year(year).unwrap();
    let components = match measure {
        Measure::Bce => &record.welfare.bce_components,
        Measure::Bcpa => &record.welfare.bcpa_components,
        Measure::Iaew => &record.welfare.iaew_components,
    };
    measure
        .members()
        .iter()
        .zip(components)
        .filter(|((_, contribution), _)| *contribution == Contribution::Benefit)
        .map(|(_, c)| c.value)
        .sum()
}

#[test]
#[ignore = "diagnostic printout for calibration work"]
fn print_pins() {
    let calibration = reference::calibration();
    let runs: Vec<Trajectory> = reference::scenarios()
        .iter()
        .map(|s| run_scenario(&calibration, s).unwrap())
        .collect();
    let by_name = |name: &str| runs.iter().find(|t| t.scenario == name).unwrap();
    let bau = by_name("bau");
    let ct = by_name("carbon_tax");
    let rd = by_name("redistribution");
    let wtr = by_name("wtr");
    let all3 = by_name("all_three");

    let r0 = bau.year(2020).unwrap();
    let b_bce = benefit_sum(bau, 2020, Measure::Bce);
    let b_bcpa = benefit_sum(bau, 2020, Measure::Bcpa);
    println!("==== 2020 pins ====");
    println!("GDP            {:.4e}   pc {:.1}", r0.gdp, r0.gdp / r0.population);
    println!("population     {:.4e}", r0.population);
    println!(
        "BCE {:.4e} (pc {:.1})  BCPA {:.4e} (pc {:.1})  IAEW {:.4e}",
        r0.welfare.bce,
        r0.welfare.bce / r0.population,
        r0.welfare.bcpa,
        r0.welfare.bcpa / r0.population,
        r0.welfare.iaew
    );
    println!("benefit sums   B_bce {b_bce:.4e}   B_bcpa {b_bcpa:.4e}");
    let share = |id, m, b: f64| 100.0 * component(bau, 2020, m, id) / b;
    println!(
        "consumption    {:.2}% of BCE benefits (target 48±2)   {:.2}% of BCPA (target 40±2)",
        share(ComponentId::IndividualConsumption, Measure::Bce, b_bce),
        share(ComponentId::IndividualConsumption, Measure::Bcpa, b_bcpa)
    );
    println!(
        "unpaid work    {:.2}% of BCE benefits (target 34±2)",
        share(ComponentId::UnpaidWork, Measure::Bce, b_bce)
    );
    println!(
        "inequality     {:.2}% of BCE benefits (target 12±2)",
        share(ComponentId::InequalityLosses, Measure::Bce, b_bce)
    );
    println!(
        "government     {:.2}% of BCE benefits (target 7±2)",
        share(ComponentId::GovernmentNondefensive, Measure::Bce, b_bce)
    );
    let linked_bce = component(bau, 2020, Measure::Bce, ComponentId::ShadowEconomy)
        + component(bau, 2020, Measure::Bce, ComponentId::DefensiveExpenditure);
    let linked_bcpa = component(bau, 2020, Measure::Bcpa, ComponentId::ShadowEconomy)
        + component(bau, 2020, Measure::Bcpa, ComponentId::DefensiveExpenditure);
    println!(
        "share-linked   {:.2}% of BCE benefits (target 18±2)  {:.2}% of BCPA (target 23±2)",
        100.0 * linked_bce / b_bce,
        100.0 * linked_bcpa / b_bcpa
    );
    println!(
        "unpaid hours   {:.4e}   atkinson {:.4}   u {:.4}   d1pc {:.1}",
        r0.unpaid_hours, r0.atkinson, r0.unemployment_rate, r0.d1_disposable_per_capita
    );
    println!("2020 boundary ratios (3 must overshoot):");
    for b in &r0.boundaries {
        println!(
            "  {:<15} ratio {:.3} overshoot {}",
            format!("{:?}", b.pressure),
            b.ratio,
            b.overshoot
        );
    }
    println!(
        "2020 social met {}/12 (job {:.3} fair {:.3} adequacy {:.3})",
        r0.doughnut.social_met(),
        r0.doughnut.social_outcome("job_availability").unwrap().score,
        r0.doughnut.social_outcome("income_fairness").unwrap().score,
        r0.doughnut.social_outcome("income_adequacy").unwrap().score
    );

    println!("\n==== BAU trajectory ====");
    for year in [2020, 2030, 2040, 2050, 2060, 2070] {
        let r = bau.year(year).unwrap();
        println!(
            "{year}: gdp {:.3e} u {:.4} lf {:.3e} emp {:.3e} pop {:.3e} atkinson {:.4} bce_pc {:.1} bcpa_pc {:.1} d1 {:.0}",
            r.gdp,
            r.unemployment_rate,
            r.labour_force,
            r.employed,
            r.population,
            r.atkinson,
            r.welfare.bce / r.population,
            r.welfare.bcpa / r.population,
            r.d1_disposable_per_capita
        );
    }
    let r70 = bau.year(2070).unwrap();
    let idx = |t: &Trajectory, f: fn(&isewsim::engine::YearRecord) -> f64| {
        100.0 * f(t.year(2070).unwrap()) / f(t.year(2020).unwrap())
    };
    println!(
        "indexed 2070 (BAU): gdp {:.1} bce {:.1} bcpa {:.1} gdp_pc {:.1} bce_pc {:.1} bcpa_pc {:.1}",
        idx(bau, |r| r.gdp),
        idx(bau, |r| r.welfare.bce),
        idx(bau, |r| r.welfare.bcpa),
        idx(bau, |r| r.gdp / r.population),
        idx(bau, |r| r.welfare.bce / r.population),
        idx(bau, |r| r.welfare.bcpa / r.population)
    );
    println!("BAU 2070 boundaries (5 must overshoot):");
    for b in &r70.boundaries {
        println!(
            "  {:<15} ratio {:.3} overshoot {}",
            format!("{:?}", b.pressure),
            b.ratio,
            b.overshoot
        );
    }

    println!("\n==== criterion 3: 2070 per-capita ordering ====");
    let pc = |t: &Trajectory, m: Measure| {
        let r = t.year(2070).unwrap();
        (match m {
            Measure::Bce => r.welfare.bce,
            Measure::Bcpa => r.welfare.bcpa,
            Measure::Iaew => r.welfare.iaew,
        }) / r.population
    };
    for m in [Measure::Bce, Measure::Bcpa] {
        println!(
            "{:?}: all3 {:.1} ct {:.1} rd {:.1} wtr {:.1} bau {:.1}  gain_over_bau {:.2}%",
            m,
            pc(all3, m),
            pc(ct, m),
            pc(rd, m),
            pc(wtr, m),
            pc(bau, m),
            100.0 * (pc(all3, m) / pc(bau, m) - 1.0)
        );
    }

    println!("\n==== criterion 4: carbon tax ====");
    let mut max_dev: f64 = 0.0;
    let mut bcpa_ok_from_2031 = true;
    for (rb, rc) in bau.years.iter().zip(&ct.years) {
        max_dev = max_dev.max(((rc.welfare.bce - rb.welfare.bce) / rb.welfare.bce).abs());
        if rb.year >= 2031 && rc.welfare.bcpa <= rb.welfare.bcpa {
            bcpa_ok_from_2031 = false;
        }
    }
    println!("max |BCE dev| {:.2e} (need <=0.01)   BCPA(ct)>BCPA(bau) from 2031: {bcpa_ok_from_2031}", max_dev);
    for year in [2030, 2031, 2035, 2050, 2070] {
        let rc = ct.year(year).unwrap();
        let rb = bau.year(year).unwrap();
        println!(
            "  {year}: tau {:.1} reduction {:.3} co2 {:.3e} target {:.3e} (bau co2 {:.3e}) dBCPA {:+.2}%",
            rc.carbon_tax_rate,
            rc.co2_reduction,
            rc.environment.level(isewsim::config::Pressure::Co2).territorial,
            rc.carbon_target,
            rb.environment.level(isewsim::config::Pressure::Co2).territorial,
            100.0 * (rc.welfare.bcpa / rb.welfare.bcpa - 1.0)
        );
    }

    println!("\n==== criterion 5: redistribution ====");
    let ineq = |t: &Trajectory, y| component(t, y, Measure::Bce, ComponentId::InequalityLosses);
    println!(
        "ineq loss 2029 {:.4e} -> 2036 {:.4e}  drop {:.1}% (need 25±10)",
        ineq(rd, 2029),
        ineq(rd, 2036),
        100.0 * (1.0 - ineq(rd, 2036) / ineq(rd, 2029))
    );
    let mut max_cons_dev: f64 = 0.0;
    let mut max_dev_year = 0;
    let mut max_dev_signed = 0.0;
    for (rb, rr) in bau.years.iter().zip(&rd.years) {
        let dev = (rr.consumption - rb.consumption) / rb.consumption;
        if dev.abs() > max_cons_dev {
            max_cons_dev = dev.abs();
            max_dev_year = rb.year;
            max_dev_signed = dev;
        }
    }
    println!(
        "max |consumption dev| {:.3}% (need <=2%)  signed {:+.3}% at {max_dev_year}",
        100.0 * max_cons_dev,
        100.0 * max_dev_signed
    );
    println!("\n---- RD flow decomposition ----");
    for year in [2032, 2036, max_dev_year, 2070] {
        let rr = rd.year(year).unwrap();
        let rb = bau.year(year).unwrap();
        println!(
            "  {year}: dC {:+.2e}  dWB {:+.2e}  dTax {:+.2e}  dBen {:+.2e}  dDiv {:+.2e}  dEmp {:+.3e}  u {:.4} (bau {:.4})",
            rr.consumption - rb.consumption,
            rr.wage_bill - rb.wage_bill,
            rr.income_tax - rb.income_tax,
            rr.benefits - rb.benefits,
            rr.dividends - rb.dividends,
            rr.employed - rb.employed,
            rr.unemployment_rate,
            rb.unemployment_rate,
        );
    }
    for year in [2029, 2032, 2036, 2070] {
        let r = rd.year(year).unwrap();
        println!("  {year}: atkinson {:.4} (bau {:.4})", r.atkinson, bau.year(year).unwrap().atkinson);
    }

    println!("\n---- 2020 household table ----");
    println!(
        "  C {:.4e}  wage_bill {:.4e}  income_tax {:.4e}  benefits {:.4e}  pensions {:.4e}  dividends {:.4e}",
        r0.consumption, r0.wage_bill, r0.income_tax, r0.benefits, r0.pensions, r0.dividends
    );
    println!(
        "  employed {:.3e}  unemployed {:.3e}  olf {:.3e}  pensioners {:.3e}  avgfw {:.0}",
        r0.employed, r0.unemployed, r0.working_age_olf, r0.pensioners, r0.average_fulltime_wage
    );
    println!("  decile disp pc: {:?}", r0.decile_disposable_per_capita.map(|v| v.round()));
    let r36 = rd.year(2036).unwrap();
    println!(
        "  2036 rd decile disp pc: {:?}",
        r36.decile_disposable_per_capita.map(|v| v.round())
    );

    println!("\n==== criterion 6: WTR ====");
    let mut u_below_from_2035 = true;
    for (rb, rw) in bau.years.iter().zip(&wtr.years) {
        if rb.year >= 2035 && rw.unemployment_rate >= rb.unemployment_rate {
            u_below_from_2035 = false;
        }
    }
    println!("u(wtr) < u(bau) from 2035: {u_below_from_2035}");
    for year in [2030, 2031, 2033, 2035, 2036, 2040, 2070] {
        let rw = wtr.year(year).unwrap();
        let rb = bau.year(year).unwrap();
        println!(
            "  {year}: u {:.4} (bau {:.4})  unpaid {:.4e} (bau {:.4e}) d_unpaid {:+.2}%  bce {:.4e} (bau {:.4e}) dBCE {:+.3}%",
            rw.unemployment_rate,
            rb.unemployment_rate,
            rw.unpaid_hours,
            rb.unpaid_hours,
            100.0 * (rw.unpaid_hours / rb.unpaid_hours - 1.0),
            rw.welfare.bce,
            rb.welfare.bce,
            100.0 * (rw.welfare.bce / rb.welfare.bce - 1.0)
        );
    }

    println!("\n==== WTR 2036 flow decomposition ====");
    for year in [2035, 2036, 2040] {
        let rw = wtr.year(year).unwrap();
        let rb = bau.year(year).unwrap();
        println!(
            "  {year}: dC {:+.2e}  dWB {:+.2e}  dTax {:+.2e}  dBen {:+.2e}  dPen {:+.2e}  dDiv {:+.2e}  dAvgFW {:+.1}  dEmp {:+.3e}  dUnpaidVal {:+.2e}",
            rw.consumption - rb.consumption,
            rw.wage_bill - rb.wage_bill,
            rw.income_tax - rb.income_tax,
            rw.benefits - rb.benefits,
            rw.pensions - rb.pensions,
            rw.dividends - rb.dividends,
            rw.average_fulltime_wage - rb.average_fulltime_wage,
            rw.employed - rb.employed,
            9.04 * (rw.unpaid_hours - rb.unpaid_hours),
        );
    }

    println!("\n==== criterion 7: doughnut ====");
    let overshoot_2020 = r0.boundaries.iter().filter(|b| b.overshoot).count();
    let overshoot_bau70 = r70.boundaries.iter().filter(|b| b.overshoot).count();
    let co2_ratio = |t: &Trajectory| {
        t.year(2070)
            .unwrap()
            .boundaries
            .iter()
            .find(|b| b.pressure == isewsim::config::Pressure::Co2)
            .unwrap()
            .ratio
    };
    println!(
        "overshoot 2020 {overshoot_2020}/5 (need 3)   bau 2070 {overshoot_bau70}/5 (need 5)   co2 ratio all3/bau {:.3} (need <0.6)",
        co2_ratio(all3) / co2_ratio(bau)
    );
    let ja = |t: &Trajectory| {
        t.year(2070)
            .unwrap()
            .doughnut
            .social_outcome("job_availability")
            .unwrap()
            .met
    };
    println!(
        "job_availability met 2070: all3 {} (need true)  bau {} (need false)  u(all3,2070) {:.5}",
        ja(all3),
        ja(bau),
        all3.year(2070).unwrap().unemployment_rate
    );
    println!(
        "income_adequacy 2020 {:.3} (<1)  bau 2070 {:.3} (>=1)",
        r0.doughnut.social_outcome("income_adequacy").unwrap().score,
        r70.doughnut.social_outcome("income_adequacy").unwrap().score
    );

    println!("\n==== criterion 8: start ordering + indexed ====");
    println!(
        "2020 pc: bcpa {:.1} < bce {:.1} < gdp {:.1}",
        r0.welfare.bcpa / r0.population,
        r0.welfare.bce / r0.population,
        r0.gdp / r0.population
    );
    println!(
        "2070 BAU index: bce {:.2} bcpa {:.2} gdp {:.2} (both ISEW must beat gdp)",
        idx(bau, |r| r.welfare.bce),
        idx(bau, |r| r.welfare.bcpa),
        idx(bau, |r| r.gdp)
    );
}
