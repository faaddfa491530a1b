use vertex_rsf::identities::{
    cauchy_report, chi, run_suite, CauchyConfig, CauchyKind, Perturbation, SuiteConfig, SUITES,
};
use vertex_rsf::scalar::rat_parse;
use vertex_rsf::{CompositionVector, Error, Model, Rational, WeightTable};

fn quick() -> SuiteConfig {
    SuiteConfig {
        points: Some(1),
        max_width: 12,
        tolerance: Rational::new(1.into(), 1000.into()),
        ..SuiteConfig::default()
    }
}

#[test]
fn every_suite_passes_at_one_point() {
    let cfg = quick();
    for name in SUITES {
        let rep = run_suite(name, &cfg).unwrap();
        assert!(rep.pass, "{name}: {:?}", rep.defects.first());
        assert!(rep.checks > 0, "{name} performed no checks");
    }
}

#[test]
fn reports_are_reproducible() {
    let cfg = quick();
    let a = serde_json::to_string(&run_suite("symmetrization", &cfg).unwrap()).unwrap();
    let b = serde_json::to_string(&run_suite("symmetrization", &cfg).unwrap()).unwrap();
    assert_eq!(a, b);
    let other = SuiteConfig { seed: 8, ..quick() };
    let c = serde_json::to_string(&run_suite("symmetrization", &other).unwrap()).unwrap();
    assert_ne!(a, c);
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(matches!(
        run_suite("nope", &quick()),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn perturbed_entry_is_caught() {
    let cfg = SuiteConfig {
        perturbation: Some(Perturbation {
            model: Model::IzerginKorepin,
            vertex: [1, 1, 1, 1],
            delta: Rational::new(1.into(), 97.into()),
        }),
        ..quick()
    };
    let rep = run_suite("local", &cfg).unwrap();
    assert!(!rep.pass);
    assert!(rep.params.contains_key("perturbation"));
    // the six-vertex half is untouched
    assert!(rep.defects.iter().all(|d| !d.location.contains("6v")));
}

#[test]
fn cauchy_rejects_large_ratio() {
    let q = rat_parse("1/2").unwrap();
    let config = CauchyConfig {
        model: Model::SixVertex,
        kind: CauchyKind::Skew,
        max_width: 5,
        q: q.clone(),
        xs: vec![rat_parse("1/3").unwrap()],
        ys: vec![rat_parse("-1/4").unwrap()],
        z: rat_parse("1").unwrap(),
        epsilon: rat_parse("1/2").unwrap(),
    };
    let table = WeightTable::plain(Model::SixVertex, q);
    let err = cauchy_report(&config, &table, &rat_parse("1/1000000").unwrap()).unwrap_err();
    assert!(err.to_string().contains("(i=1, j=1)"), "{err}");
}

#[test]
fn cauchy_trace_is_exact_and_monotone() {
    let config = CauchyConfig::search(Model::SixVertex, CauchyKind::Stable, 20).unwrap();
    let table = WeightTable::plain(Model::SixVertex, config.q.clone());
    let rep = cauchy_report(&config, &table, &rat_parse("1/1000000").unwrap()).unwrap();
    assert!(rep.pass);
    assert_eq!(rep.trace.len(), 20);
    let gaps: Vec<Rational> = rep
        .trace
        .iter()
        .map(|t| rat_parse(&t.gap).unwrap())
        .collect();
    assert!(gaps.windows(2).skip(2).all(|w| w[1] <= w[0]));
}

#[test]
fn chi_is_constant_on_small_cases() {
    let q = rat_parse("2/5").unwrap();
    let table = WeightTable::plain(Model::IzerginKorepin, q);
    let all = CompositionVector::all_with_weight(2, 3, 2);
    let first = chi(&table, &all[0]).unwrap();
    for v in &all[1..] {
        assert_eq!(chi(&table, v).unwrap(), first, "{v}");
    }
}
