//! Regenerates the committed `fixtures/` directory: the three desk-scale
//! instances at (q, a, b) = (2, 3, 5) for d = 1, 2, 3 and three
//! pseudorandomly drawn valid d = 1 instances (seeded, reproducible).
//!
//! Run from the workspace root: `cargo run -p qracah-cli --example gen_fixtures`

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qracah_core::fixture::{verification_report, Fixture};
use qracah_core::params::random_valid_params;
use qracah_core::tdsystem::{construct_split_form, find_phi};
use qracah_core::{QRacahParams, Scalar, DEFAULT_SEED};

fn write_fixture(dir: &Path, name: &str, params: &QRacahParams, phi: &[Scalar]) {
    let (a, astar, report) = construct_split_form(params, phi).expect("split form");
    assert!(report.all_pass(), "{name}: {}", report.to_text());
    let fixture = Fixture::from_parts(params, phi, &a, &astar);
    let gate = verification_report(&fixture).expect("verification");
    assert!(gate.all_pass(), "{name}: {}", gate.to_text());
    let path = dir.join(name);
    fixture.save(&path).expect("write fixture");
    println!("wrote {}", path.display());
}

fn main() {
    let dir = Path::new("fixtures");
    std::fs::create_dir_all(dir).expect("create fixtures dir");

    let base = |d| {
        QRacahParams::new(
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from_int(5),
            d,
        )
        .expect("base params")
    };
    write_fixture(dir, "d1.json", &base(1), &[Scalar::one()]);
    for d in 2..=3 {
        let params = base(d);
        let phi = find_phi(&params, &Scalar::from_int(2)).expect("phi solver");
        write_fixture(dir, &format!("d{d}.json"), &params, &phi);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for i in 1..=3 {
        // Re-draw until the phi solver also accepts the tuple.
        let (params, phi) = loop {
            let params = random_valid_params(&mut rng, 1);
            if let Ok(phi) = find_phi(&params, &Scalar::from_int(2)) {
                break (params, phi);
            }
        };
        write_fixture(dir, &format!("d1-rand{i}.json"), &params, &phi);
    }
}
