//! Acceptance gate: the eight release criteria, each reported on one
//! pass/fail line. The test fails if any criterion fails.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qracah_core::fixture::{load_fixture, verification_report, Fixture};
use qracah_core::params::random_valid_params;
use qracah_core::suite::{catalog, run_suite, SuiteOptions};
use qracah_core::tdsystem::{construct_split_form, find_phi, TdSystem};
use qracah_core::{
    module_one, module_two, w_polynomial_forms, Matrix, OperatorSet, QRacahParams, Scalar, Status,
};

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture_paths() -> Vec<PathBuf> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .expect("fixtures directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    assert!(paths.len() >= 6, "expected the six shipped fixtures");
    paths
}

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

fn mat(rows: &[&[&str]]) -> Matrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|x| s(x)).collect())
            .collect(),
    )
    .unwrap()
}

fn base_params(d: usize) -> QRacahParams {
    QRacahParams::new(
        Scalar::from_int(2),
        Scalar::from_int(3),
        Scalar::from_int(5),
        d,
    )
    .unwrap()
}

fn criterion_1() -> Result<(), String> {
    for d in 1..=3usize {
        let params = base_params(d);
        let phi = if d == 1 {
            vec![Scalar::one()]
        } else {
            find_phi(&params, &Scalar::from_int(2)).map_err(|e| format!("d={d}: {e}"))?
        };
        let (a, astar, report) =
            construct_split_form(&params, &phi).map_err(|e| format!("d={d}: {e}"))?;
        if !report.all_pass() {
            return Err(format!("d={d} axioms:\n{}", report.to_text()));
        }
        if d == 1 {
            let a_expected = mat(&[&["37/6", "0"], &["1", "13/6"]]);
            let astar_expected = mat(&[&["101/10", "1"], &["0", "29/10"]]);
            if a != a_expected || astar != astar_expected {
                return Err("d=1 matrices differ from hand-derived values".into());
            }
        }
    }
    Ok(())
}

fn criterion_2(systems: &[(String, TdSystem, OperatorSet)]) -> Result<(), String> {
    for (name, _, ops) in systems {
        // OperatorSet::new already enforces the four psi, four Lambda, eight
        // M^{-1}/N^{-1}, and two Q coincidences as postconditions; re-derive
        // the two Q expressions here as an independent spot check.
        let q1 = &(&ops.winv * &ops.m) * &ops.w;
        let q2 = &(&ops.w * &ops.n) * &ops.winv;
        if q1 != ops.q || q2 != ops.q {
            return Err(format!("{name}: Q cross-expressions disagree"));
        }
    }
    Ok(())
}

fn criterion_3(systems: &[(String, TdSystem, OperatorSet)]) -> Result<(), String> {
    let n = catalog().len();
    if n < 35 {
        return Err(format!("catalog has only {n} entries"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(314159);
    let mut targets: Vec<(String, TdSystem)> = systems
        .iter()
        .map(|(name, tds, _)| (name.clone(), tds.clone()))
        .collect();
    // Three freshly drawn valid d=1 parameter tuples, gated as usual.
    for i in 1..=3 {
        let (params, phi) = loop {
            let params = random_valid_params(&mut rng, 1);
            match find_phi(&params, &Scalar::from_int(2)) {
                Ok(phi) => break (params, phi),
                Err(_) => continue,
            }
        };
        let (a, astar, _) = construct_split_form(&params, &phi).map_err(|e| e.to_string())?;
        let tds = TdSystem::new(params, a, astar).map_err(|e| e.to_string())?;
        targets.push((format!("draw-{i}"), tds));
    }
    for (name, tds) in &targets {
        for seed in [1u64, 2, 3] {
            let options = SuiteOptions {
                seed,
                filter: None,
                exhaustive: false,
            };
            let report = run_suite(tds, &options).map_err(|e| format!("{name}: {e}"))?;
            let non_pass = report
                .entries
                .iter()
                .filter(|e| e.status != Status::Pass && e.status != Status::Probe)
                .count();
            if non_pass != 0 {
                return Err(format!("{name} seed {seed}:\n{}", report.to_text()));
            }
            if report.elapsed >= 10_000 {
                return Err(format!("{name} seed {seed}: took {} ms", report.elapsed));
            }
        }
    }
    Ok(())
}

fn criterion_4(systems: &[(String, TdSystem, OperatorSet)]) -> Result<(), String> {
    for (name, tds, ops) in systems {
        let report = w_polynomial_forms(tds, ops);
        if !report.all_pass() {
            return Err(format!("{name}:\n{}", report.to_text()));
        }
    }
    Ok(())
}

fn criterion_5(systems: &[(String, TdSystem, OperatorSet)]) -> Result<(), String> {
    for (name, tds, ops) in systems {
        // module_one / module_two internally gate all 18 box_q relations, the
        // ten segregated equations, the Upsilon coincidences, the
        // Askey-Wilson relations, and Upsilon = Lambda.
        let one = module_one(tds, ops).map_err(|e| format!("{name} module one: {e}"))?;
        let two = module_two(tds, ops).map_err(|e| format!("{name} module two: {e}"))?;
        if one.upsilon != ops.lambda || two.upsilon != ops.lambda {
            return Err(format!("{name}: Upsilon differs from Lambda"));
        }
    }
    Ok(())
}

fn criterion_6() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(271828);
    for path in fixture_paths() {
        let fixture = Fixture::read(&path).map_err(|e| e.to_string())?;
        let n = fixture.d + 1;
        for _trial in 0..10 {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let mut mutated = fixture.clone();
            mutated.astar_matrix[(i, j)] = &mutated.astar_matrix[(i, j)] + &Scalar::one();
            let report = verification_report(&mutated).map_err(|e| e.to_string())?;
            let caught = report.entries.iter().any(|e| {
                e.status == Status::Fail && e.witness.as_ref().is_some_and(|w| !w.is_zero())
            });
            if !caught {
                return Err(format!(
                    "{}: mutation at ({i},{j}) slipped through",
                    path.display()
                ));
            }
        }
    }
    Ok(())
}

fn criterion_7(systems: &[(String, TdSystem, OperatorSet)]) -> Result<(), String> {
    let (_, _, ops) = systems
        .iter()
        .find(|(name, tds, _)| name == "d1.json" && tds.d() == 1)
        .ok_or("d1 fixture missing")?;
    // Column-vector spot values for the d=1 fixture.
    let expect = [
        ("K", &ops.k, mat(&[&["2", "0"], &["0", "1/2"]])),
        ("B", &ops.b, mat(&[&["2", "-6"], &["0", "1/2"]])),
        ("Q", &ops.q, mat(&[&["11/4", "-9/4"], &["3/4", "-1/4"]])),
    ];
    for (name, got, want) in expect {
        if *got != want {
            return Err(format!("{name} spot value mismatch: got {got:?}"));
        }
    }
    let det = &(&ops.q[(0, 0)] * &ops.q[(1, 1)]) - &(&ops.q[(0, 1)] * &ops.q[(1, 0)]);
    let tr = &ops.q[(0, 0)] + &ops.q[(1, 1)];
    if !det.is_one() {
        return Err(format!("det Q = {det}, expected 1"));
    }
    if tr != s("5/2") {
        return Err(format!("trace Q = {tr}, expected 5/2"));
    }
    Ok(())
}

fn criterion_8(systems: &[(String, TdSystem, OperatorSet)]) -> Result<(), String> {
    for (name, tds, _) in systems {
        let options = SuiteOptions {
            seed: 0,
            filter: Some("C41".into()),
            exhaustive: false,
        };
        let report = run_suite(tds, &options).map_err(|e| e.to_string())?;
        let ids: Vec<&str> = report.entries.iter().map(|e| e.id.as_str()).collect();
        if ids != ["C41.1", "C41.2", "C41.3", "C41.4", "C41.5"] {
            return Err(format!("{name}: probe ids were {ids:?}"));
        }
        if report.entries.iter().any(|e| e.status != Status::Probe) {
            return Err(format!("{name}: probe entries must have PROBE status"));
        }
        // PROBE entries never count as failures, so they cannot affect the
        // exit status derived from fail_count.
        if report.fail_count() != 0 {
            return Err(format!("{name}: probes contributed to fail_count"));
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    // Load every shipped fixture once; all later criteria reuse these.
    let systems: Vec<(String, TdSystem, OperatorSet)> = fixture_paths()
        .iter()
        .map(|path| {
            let (tds, _) = load_fixture(path).expect("shipped fixture loads");
            let ops = OperatorSet::new(&tds).expect("operator postconditions");
            (
                path.file_name().unwrap().to_string_lossy().into_owned(),
                tds,
                ops,
            )
        })
        .collect();

    let results: Vec<(u32, &str, Result<(), String>)> = vec![
        (
            1,
            "fixture gate at (2,3,5), d in {1,2,3}, with d=1 hand values",
            criterion_1(),
        ),
        (
            2,
            "operator cross-expression coincidences on every fixture",
            criterion_2(&systems),
        ),
        (
            3,
            "full identity suite on all fixtures and 3 fresh d=1 draws, 3 seeds, <10 s",
            criterion_3(&systems),
        ),
        (
            4,
            "W-expansion equalities and scalar sums for all r, s",
            criterion_4(&systems),
        ),
        (
            5,
            "main theorem modules pass with Upsilon = Lambda on every fixture",
            criterion_5(&systems),
        ),
        (
            6,
            "mutation sensitivity: 10 random A* perturbations per fixture all caught",
            criterion_6(),
        ),
        (
            7,
            "d=1 spot values for K, B, Q with det Q = 1 and trace Q = 5/2",
            criterion_7(&systems),
        ),
        (
            8,
            "probe reporting: five 19.2 relations individually reported, never gating",
            criterion_8(&systems),
        ),
    ];

    let mut failed = false;
    for (n, desc, result) in &results {
        match result {
            Ok(()) => println!("criterion {n}: PASS — {desc}"),
            Err(why) => {
                failed = true;
                println!("criterion {n}: FAIL — {desc}\n  {why}");
            }
        }
    }
    assert!(!failed, "one or more acceptance criteria failed");
}
