use approx::assert_relative_eq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tduno::datagen::{
    gen_covariates, gen_event_time, gen_event_time_sim2, sim1_spec, sim2_spec, sim3_spec,
    tune_weibull_to_rate, CensoringSpec, WeibullParams, DISCRETE_CENSORING_TABLE,
};
use tduno::{reverse_km, true_g_discrete, Cohort, OracleModel, Subject};

#[test]
fn gompertz_inversion_identity() {
    for spec in [sim1_spec(), sim3_spec()] {
        let model = OracleModel::new(spec.event.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10_000 {
            let z = gen_covariates(&spec.covariates, &mut rng);
            let v = 1.0 - rng.random::<f64>();
            let t = gen_event_time(&spec.event, &z, v).unwrap();
            let residual = (model.survival(t, &z) - v).abs() / v;
            assert!(residual < 1e-9, "v = {v}, residual {residual}");
        }
    }
}

#[test]
fn gompertz_hand_example() {
    let spec = tduno::datagen::GompertzSpec {
        alpha: tduno::datagen::AlphaRule::constant(0.001),
        lambda: 0.1,
        intercept: 0.0,
        beta: vec![1.0],
    };
    let t = gen_event_time(&spec, &[0.0], (-0.1f64).exp()).unwrap();
    assert_relative_eq!(t, 1000.0 * 1.001f64.ln(), max_relative = 1e-12);
    assert_relative_eq!(t, 0.99950, epsilon = 1e-5);
}

#[test]
fn sim2_preset_and_literal_predictor() {
    let spec = sim2_spec();
    let model = OracleModel::new(spec.event.clone());
    for z in [0.0, 1.0] {
        assert_eq!(model.linear_predictor(&[z]), -5.0 + 4.0 * z);
        let literal = tduno::datagen::GompertzSpec {
            intercept: 5.0,
            beta: vec![-4.0],
            ..spec.event.clone()
        };
        for v in [0.9, 0.5, 0.1] {
            let a = gen_event_time(&literal, &[z], v).unwrap();
            let b = gen_event_time_sim2(0.0005, 0.3, z, v).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn reverse_km_hand_example() {
    let subjects = [(1.0, true), (2.0, false), (3.0, true), (4.0, false)]
        .iter()
        .enumerate()
        .map(|(i, &(x, e))| Subject::observed(i.to_string(), x, e, vec![], 10.0))
        .collect();
    let g = reverse_km(&Cohort::new(subjects, 10.0)).unwrap();
    assert_eq!(g.value(0.0), 1.0);
    assert_eq!(g.value(1.999), 1.0);
    assert_eq!(g.value(2.0), 2.0 / 3.0);
    assert_eq!(g.value(3.999), 2.0 / 3.0);
    assert_eq!(g.value(4.0), 0.0);
    assert_eq!(g.clamp(0.02).unwrap().value(7.0), 0.02);
}

#[test]
fn true_g_discrete_matches_table_products() {
    let zero = true_g_discrete(&DISCRETE_CENSORING_TABLE[0].1).unwrap();
    for t in 1..=14 {
        assert_eq!(zero.value(t as f64), 1.0);
    }
    let (label, p) = DISCRETE_CENSORING_TABLE[5];
    assert_eq!(label, 0.73);
    let g = true_g_discrete(&p).unwrap();
    assert_eq!(g.value(1.0), 0.6);
    assert_relative_eq!(g.value(2.0), 0.48, max_relative = 1e-15);
    let mut hand = 1.0;
    for (t, q) in p.iter().enumerate().take(14) {
        hand *= 1.0 - q;
        assert_eq!(g.value((t + 1) as f64), hand);
    }
    assert_eq!(true_g_discrete(&[0.5, 0.5, 0.0]).unwrap().value(2.0), 0.25);
}

#[test]
fn discrete_hazard_censoring_follows_its_survival() {
    let (_, p) = DISCRETE_CENSORING_TABLE[4];
    let spec = CensoringSpec::DiscreteHazard { p: p.to_vec() };
    let g = spec.true_g(None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let n = 200_000;
    let d = tduno::datagen::gen_censoring(&spec, &mut rng, n).unwrap();
    for k in [1.0, 3.0, 8.0] {
        let share = d.iter().filter(|&&x| x > k).count() as f64 / n as f64;
        assert!((share - g.value(k)).abs() < 0.005, "period {k}: {share}");
    }
}

#[test]
fn tuned_weibull_reaches_target_rate() {
    let spec = sim1_spec();
    let template = WeibullParams {
        shape: 1.0,
        scale: 1.0,
        location: 0.0,
    };
    for target in [0.25, 0.62] {
        let tuned = tune_weibull_to_rate(template, target, &spec, 20_000, 3).unwrap();
        assert!((tuned.achieved_rate - target).abs() <= 0.01);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let c = spec
            .generate(20_000, &CensoringSpec::Weibull(tuned.params), &mut rng)
            .unwrap();
        assert!((c.censoring_rate() - target).abs() < 0.02);
    }
}

#[test]
fn same_seed_same_cohort() {
    let spec = sim2_spec();
    let a = spec.generate_uncensored(300, 5).unwrap();
    let b = spec.generate_uncensored(300, 5).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, spec.generate_uncensored(300, 6).unwrap());
}
