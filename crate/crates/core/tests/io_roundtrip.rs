use std::fs;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tduno::datagen::{sim2_spec, CensoringSpec, DISCRETE_CENSORING_TABLE};
use tduno::io::{
    read_cohort, read_predictions, read_results, read_step_survival, write_cohort,
    write_predictions, write_results, write_step_survival,
};
use tduno::sim::{run_scenario, ScenarioConfig};
use tduno::{
    antolini_ctd, reverse_km, td_uno, uno_fixed_t, EstimatorOptions, OracleModel, SurvivalMatrix,
    SurvivalModel,
};

#[test]
fn oracle_export_gives_the_same_metrics() {
    let spec = sim2_spec();
    let censoring = CensoringSpec::DiscreteHazard {
        p: DISCRETE_CENSORING_TABLE[3].1.to_vec(),
    };
    let cohort = spec
        .generate(500, &censoring, &mut ChaCha8Rng::seed_from_u64(31))
        .unwrap();
    let model = OracleModel::new(spec.event.clone());
    let direct = model.bind(&cohort);
    let ids: Vec<String> = cohort.subjects().iter().map(|s| s.id.clone()).collect();
    let times: Vec<f64> = (1..15).map(|k| k as f64).collect();
    let matrix = SurvivalMatrix::sample(direct.as_ref(), ids, times).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let (cpath, ppath) = (dir.path().join("c.csv"), dir.path().join("p.csv"));
    write_cohort(&cohort, fs::File::create(&cpath).unwrap()).unwrap();
    write_predictions(&matrix, fs::File::create(&ppath).unwrap()).unwrap();

    let read = read_cohort(&cpath, Some(cohort.horizon()), None).unwrap();
    let (preds, clipped) = read_predictions(&ppath, &read, false).unwrap();
    assert_eq!(clipped, 0);
    assert_eq!(preds, matrix);

    let opts = EstimatorOptions::default();
    let g = reverse_km(&cohort).unwrap().clamp(0.02).unwrap();
    let g_read = reverse_km(&read).unwrap().clamp(0.02).unwrap();
    assert_eq!(g, g_read);
    let pairs = [
        (
            antolini_ctd(&cohort, direct.as_ref(), opts).unwrap(),
            antolini_ctd(&read, &preds, opts).unwrap(),
        ),
        (
            td_uno(&cohort, direct.as_ref(), &g, opts).unwrap(),
            td_uno(&read, &preds, &g_read, opts).unwrap(),
        ),
        (
            uno_fixed_t(&cohort, direct.as_ref(), 3.0, &g, opts).unwrap(),
            uno_fixed_t(&read, &preds, 3.0, &g_read, opts).unwrap(),
        ),
    ];
    for (a, b) in pairs {
        let (a, b) = (a.value.unwrap(), b.value.unwrap());
        assert!((a - b).abs() <= 1e-12 * a.abs(), "{a} vs {b}");
    }
}

#[test]
fn cohort_file_round_trip() {
    let spec = tduno::datagen::sim1_spec();
    let cohort = spec.generate_uncensored(200, 3).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    write_cohort(&cohort, fs::File::create(&path).unwrap()).unwrap();
    let read = read_cohort(&path, Some(cohort.horizon()), None).unwrap();
    assert_eq!(read.len(), cohort.len());
    for (a, b) in cohort.subjects().iter().zip(read.subjects()) {
        assert_eq!(a.id, b.id);
        assert_eq!(a.observed_time, b.observed_time);
        assert_eq!(a.event, b.event);
        assert_eq!(a.covariates, b.covariates);
    }
}

#[test]
fn results_and_step_functions_round_trip() {
    let mut config = ScenarioConfig::sim2();
    config.replications = 3;
    config.n_test = 150;
    config.reference_n = 0;
    let result = run_scenario(&config).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    write_results(&result.records, fs::File::create(&path).unwrap()).unwrap();
    assert_eq!(read_results(&path).unwrap(), result.records);

    let g = tduno::true_g_discrete(&DISCRETE_CENSORING_TABLE[2].1).unwrap();
    let gpath = dir.path().join("g.csv");
    write_step_survival(&g, fs::File::create(&gpath).unwrap()).unwrap();
    assert_eq!(read_step_survival(&gpath).unwrap(), g);

    let empty = dir.path().join("e.csv");
    write_results(&[], fs::File::create(&empty).unwrap()).unwrap();
    assert_eq!(fs::read_to_string(&empty).unwrap().lines().count(), 1);
}

#[test]
fn bad_rows_are_reported_with_their_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    fs::write(&path, "id,time,event,z_1\na,1.5,1,0\nb,2.0,2,1\n").unwrap();
    let err = read_cohort(&path, None, None).unwrap_err().to_string();
    assert!(err.contains(":3:") && err.contains("event"), "{err}");
}

#[test]
fn grid_discretises_a_follow_up_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hf.csv");
    let mut text = String::from("id,time,event,age\n");
    for (i, t) in [4.0, 30.0, 150.0, 250.0].iter().enumerate() {
        text.push_str(&format!("{i},{t},1,{}\n", 50 + i));
    }
    fs::write(&path, text).unwrap();
    let grid = tduno::TimeGrid::d4();
    let c = read_cohort(&path, None, Some(&grid)).unwrap();
    let periods: Vec<f64> = c.subjects().iter().map(|s| s.observed_time).collect();
    assert_eq!(periods, vec![1.0, 3.0, 11.0, 15.0]);
    assert_eq!(c.horizon(), 15.0);
    assert!(!c.subjects()[3].event);
}
