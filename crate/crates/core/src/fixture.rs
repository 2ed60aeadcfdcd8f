//! Fixture files: verifier-gated JSON artifacts holding a parameter tuple,
//! the split-form pair (A, A*), and the phi sequence that produced it.
//! Fixtures are data; every loader re-verifies, no file is trusted.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::Matrix;
use crate::params::QRacahParams;
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::tdsystem::{construct_split_form, verify_td_axioms, TdSystem};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub q: Scalar,
    pub a: Scalar,
    pub b: Scalar,
    pub d: usize,
    pub phi: Vec<Scalar>,
    #[serde(rename = "A")]
    pub a_matrix: Matrix,
    #[serde(rename = "Astar")]
    pub astar_matrix: Matrix,
}

impl Fixture {
    pub fn from_parts(params: &QRacahParams, phi: &[Scalar], a: &Matrix, astar: &Matrix) -> Self {
        Fixture {
            q: params.q().clone(),
            a: params.a().clone(),
            b: params.b().clone(),
            d: params.d(),
            phi: phi.to_vec(),
            a_matrix: a.clone(),
            astar_matrix: astar.clone(),
        }
    }

    pub fn params(&self) -> Result<QRacahParams, Error> {
        QRacahParams::new(self.q.clone(), self.a.clone(), self.b.clone(), self.d)
    }

    pub fn save(&self, path: &Path) -> Result<(), Error> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Full re-verification of a fixture: the four TD axioms on the stored pair,
/// plus consistency of the stored matrices with the split form derived from
/// (params, phi). Returns Err only when the parameters are malformed.
pub fn verification_report(fixture: &Fixture) -> Result<CheckReport, Error> {
    let params = fixture.params()?;
    let mut report = verify_td_axioms(&fixture.a_matrix, &fixture.astar_matrix, &params);
    match construct_split_form(&params, &fixture.phi) {
        Ok((a, astar, _)) => {
            report.push_zero(
                "fixture-A",
                "stored A matches the split form derived from (params, phi)",
                &(&a - &fixture.a_matrix),
            );
            report.push_zero(
                "fixture-Astar",
                "stored Astar matches the split form derived from (params, phi)",
                &(&astar - &fixture.astar_matrix),
            );
        }
        Err(_) => {
            report.push_zero(
                "fixture-phi",
                "phi produces a valid split form",
                &Matrix::identity(1),
            );
        }
    }
    Ok(report)
}

/// Loads and re-verifies a fixture; the verifier is law. Returns the gated
/// TD system together with the parsed fixture.
pub fn load_fixture(path: &Path) -> Result<(TdSystem, Fixture), Error> {
    let fixture = Fixture::read(path)?;
    let report = verification_report(&fixture)?;
    if !report.all_pass() {
        return Err(Error::Fixture(format!(
            "fixture fails re-verification:\n{}",
            report.to_text()
        )));
    }
    let params = fixture.params()?;
    let tds = TdSystem::new(
        params,
        fixture.a_matrix.clone(),
        fixture.astar_matrix.clone(),
    )?;
    Ok((tds, fixture))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tdsystem::find_phi;

    fn d1_fixture() -> Fixture {
        let params = QRacahParams::new(
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from_int(5),
            1,
        )
        .unwrap();
        let phi = vec![Scalar::one()];
        let (a, astar, _) = construct_split_form(&params, &phi).unwrap();
        Fixture::from_parts(&params, &phi, &a, &astar)
    }

    #[test]
    fn roundtrip_and_load() {
        let fixture = d1_fixture();
        let dir = std::env::temp_dir().join("qracah-fixture-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("d1.json");
        fixture.save(&path).unwrap();
        let (tds, loaded) = load_fixture(&path).unwrap();
        assert_eq!(tds.d(), 1);
        assert_eq!(loaded.phi, fixture.phi);
        assert_eq!(loaded.a_matrix, fixture.a_matrix);
    }

    #[test]
    fn json_schema_shape() {
        let fixture = d1_fixture();
        let value = serde_json::to_value(&fixture).unwrap();
        assert_eq!(value["q"], "2");
        assert_eq!(value["d"], 1);
        assert_eq!(value["phi"][0], "1");
        assert_eq!(value["A"][0][0], "37/6");
        assert_eq!(value["Astar"][0][1], "1");
    }

    #[test]
    fn perturbed_astar_fails_verification_with_witness() {
        let mut fixture = d1_fixture();
        fixture.astar_matrix[(0, 1)] = &fixture.astar_matrix[(0, 1)] + &Scalar::one();
        let report = verification_report(&fixture).unwrap();
        assert!(!report.all_pass());
        let bad = report
            .entries
            .iter()
            .find(|e| e.status == crate::report::Status::Fail)
            .expect("a FAIL entry");
        assert!(bad.witness.as_ref().is_some_and(|w| !w.is_zero()));
    }

    #[test]
    fn d2_solver_fixture_verifies() {
        let params = QRacahParams::new(
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from_int(5),
            2,
        )
        .unwrap();
        let phi = find_phi(&params, &Scalar::from_int(2)).unwrap();
        let (a, astar, _) = construct_split_form(&params, &phi).unwrap();
        let fixture = Fixture::from_parts(&params, &phi, &a, &astar);
        let report = verification_report(&fixture).unwrap();
        assert!(report.all_pass(), "{}", report.to_text());
    }
}
