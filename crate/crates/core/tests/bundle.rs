//! Round-trip tests for the calibration bundle and scenario files shipped
//! under `data/`. The bundle on disk must stay byte-equivalent (up to float
//! round-tripping, which our emitters make exact) to the built-in reference
//! calibration, so that CLI runs against `data/` and library runs against
//! `reference::calibration()` produce identical trajectories.

use std::fs;
use std::path::PathBuf;

use isewsim::config::{Calibration, ScenarioSpec};
use isewsim::reference;

/// Repository-relative path to a `data/` subdirectory.
fn data_dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join("data")
        .join(sub)
}

/// Regenerates `data/calibration/` and `data/scenarios/` from the built-in
/// reference configuration. Run explicitly after changing `reference.rs`:
///
/// ```text
/// cargo test -p isewsim --test bundle -- --ignored
/// ```
#[test]
#[ignore = "golden-file regeneration; run with --ignored after editing reference.rs"]
fn regenerate_reference_bundle() {
    let calib_dir = data_dir("calibration");
    fs::create_dir_all(&calib_dir).expect("create data/calibration");
    reference::calibration()
        .write_bundle(&calib_dir)
        .expect("write calibration bundle");

    let scen_dir = data_dir("scenarios");
    fs::create_dir_all(&scen_dir).expect("create data/scenarios");
    for scenario in reference::scenarios() {
        let path = scen_dir.join(format!("{}.json", scenario.name));
        let mut body =
            serde_json::to_string_pretty(&scenario).expect("serialize scenario");
        body.push('\n');
        fs::write(&path, body).expect("write scenario file");
    }
}

#[test]
fn data_bundle_reproduces_the_reference_calibration() {
    let loaded = Calibration::load(&data_dir("calibration"))
        .expect("load data/calibration");
    let built_in = reference::calibration();
    assert_eq!(
        loaded.fingerprint(),
        built_in.fingerprint(),
        "data/calibration drifted from the built-in reference; \
         regenerate it with `cargo test -p isewsim --test bundle -- --ignored`"
    );
}

#[test]
fn scenario_files_match_the_reference_scenarios() {
    for built_in in reference::scenarios() {
        let path = data_dir("scenarios").join(format!("{}.json", built_in.name));
        let loaded = ScenarioSpec::load(&path)
            .unwrap_or_else(|e| panic!("load {}: {e}", path.display()));
        assert_eq!(
            loaded, built_in,
            "data/scenarios/{}.json drifted from the built-in reference",
            built_in.name
        );
    }
}

#[test]
fn scenario_files_pin_the_policy_levers() {
    let rd = ScenarioSpec::load(&data_dir("scenarios").join("redistribution.json"))
        .expect("load redistribution scenario");
    let lever = rd.redistribution.expect("redistribution lever present");
    assert_eq!(lever.final_low_rate, 0.13);
    assert_eq!(lever.final_high_rate, 0.75);
    assert_eq!(lever.benefit_multiplier_olf, 2.0);
    assert_eq!(lever.benefit_multiplier_unemployed, 1.3);

    let ct = ScenarioSpec::load(&data_dir("scenarios").join("carbon_tax.json"))
        .expect("load carbon tax scenario");
    let lever = ct.carbon_tax.expect("carbon tax lever present");
    assert_eq!(lever.tau_max_eur_per_tonne, 150.0);
    assert_eq!(lever.r_max, 0.65);

    let wtr = ScenarioSpec::load(&data_dir("scenarios").join("wtr.json"))
        .expect("load wtr scenario");
    let lever = wtr.wtr.expect("wtr lever present");
    assert_eq!(lever.hours_reduction, 0.15);

    let bau = ScenarioSpec::load(&data_dir("scenarios").join("bau.json"))
        .expect("load bau scenario");
    assert!(bau.carbon_tax.is_none() && bau.redistribution.is_none() && bau.wtr.is_none());

    let all3 = ScenarioSpec::load(&data_dir("scenarios").join("all_three.json"))
        .expect("load all_three scenario");
    assert!(
        all3.carbon_tax.is_some() && all3.redistribution.is_some() && all3.wtr.is_some(),
        "all_three must activate every lever"
    );
}
