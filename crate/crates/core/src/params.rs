//! q-Racah parameter tuples (q, a, b, d) with the nondegeneracy conditions of
//! Definition 2.5 and Lemma 2.1, plus the eigenvalue and t-scalar formulas.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalar::Scalar;

/// The data (q, a, b, d) of a q-Racah eigenvalue family. Constructible only
/// through [`QRacahParams::new`], which enforces the nondegeneracy conditions.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QRacahParams {
    q: Scalar,
    a: Scalar,
    b: Scalar,
    d: usize,
}

impl QRacahParams {
    /// Validates: q, a, b nonzero; d >= 1; q^4 != 1; q^{2i} != 1 for
    /// 1 <= i <= d; neither a^2 nor b^2 among q^{2d-2}, q^{2d-4}, ..., q^{2-2d}.
    pub fn new(q: Scalar, a: Scalar, b: Scalar, d: usize) -> Result<Self, Error> {
        if d == 0 {
            return Err(Error::InvalidParams("diameter d must be >= 1".into()));
        }
        for (name, v) in [("q", &q), ("a", &a), ("b", &b)] {
            if v.is_zero() {
                return Err(Error::InvalidParams(format!("{name} must be nonzero")));
            }
        }
        if q.pow(4)?.is_one() {
            return Err(Error::InvalidParams("q^4 = 1".into()));
        }
        for i in 1..=d {
            if q.pow(2 * i as i64)?.is_one() {
                return Err(Error::InvalidParams(format!("q^{} = 1", 2 * i)));
            }
        }
        let a2 = a.pow(2)?;
        let b2 = b.pow(2)?;
        let mut e = 2 * d as i64 - 2;
        while e >= 2 - 2 * d as i64 {
            let qe = q.pow(e)?;
            if a2 == qe {
                return Err(Error::InvalidParams(format!("a^2 = q^{e}")));
            }
            if b2 == qe {
                return Err(Error::InvalidParams(format!("b^2 = q^{e}")));
            }
            e -= 2;
        }
        Ok(QRacahParams { q, a, b, d })
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `q^e` for a trusted integer exponent (q is nonzero by construction).
    pub fn q_pow(&self, e: i64) -> Scalar {
        self.q.pow(e).expect("q nonzero")
    }

    /// theta_i = a q^{d-2i} + a^{-1} q^{2i-d} (Eq. eigform).
    pub fn theta(&self, i: usize) -> Scalar {
        eigenvalue(&self.a, &self.q, self.d, i)
    }

    /// theta*_i = b q^{d-2i} + b^{-1} q^{2i-d} (Eq. eigform).
    pub fn theta_star(&self, i: usize) -> Scalar {
        eigenvalue(&self.b, &self.q, self.d, i)
    }

    /// Both eigenvalue sequences; errors if either has a repeat (unreachable
    /// for parameters accepted by [`QRacahParams::new`]).
    pub fn eigenvalues(&self) -> Result<(Vec<Scalar>, Vec<Scalar>), Error> {
        let theta: Vec<Scalar> = (0..=self.d).map(|i| self.theta(i)).collect();
        let thetastar: Vec<Scalar> = (0..=self.d).map(|i| self.theta_star(i)).collect();
        for seq in [&theta, &thetastar] {
            for i in 0..seq.len() {
                for j in i + 1..seq.len() {
                    if seq[i] == seq[j] {
                        return Err(Error::RepeatedEigenvalue);
                    }
                }
            }
        }
        Ok((theta, thetastar))
    }

    /// t_i = (-1)^i a^i q^{i(d-i)} (Def. 5.1).
    pub fn t_scalars(&self) -> Vec<Scalar> {
        (0..=self.d)
            .map(|i| {
                let sign = if i % 2 == 0 {
                    Scalar::one()
                } else {
                    -Scalar::one()
                };
                let i = i as i64;
                let d = self.d as i64;
                sign * self.a.pow(i).expect("a nonzero") * self.q_pow(i * (d - i))
            })
            .collect()
    }

    /// Parameters of the downarrow system Phi^dn: a is replaced by a^{-1} so
    /// that Eq. eigform holds for the reversed eigenvalue sequence.
    pub fn downarrow(&self) -> QRacahParams {
        QRacahParams {
            q: self.q.clone(),
            a: self.a.inv().expect("a nonzero"),
            b: self.b.clone(),
            d: self.d,
        }
    }
}

/// Draws a valid parameter tuple by rejection-sampling small rationals until
/// the gated constructor accepts. Deterministic for a fixed RNG state.
pub fn random_valid_params(rng: &mut impl rand::Rng, d: usize) -> QRacahParams {
    loop {
        let mut draw = |lo: i64| {
            Scalar::ratio(rng.gen_range(lo..=9), rng.gen_range(1..=4)).expect("nonzero denom")
        };
        // q is kept away from small roots of unity by drawing |q| >= 2 raw
        // numerators; a and b range over small signed rationals.
        let q = draw(2);
        let a = draw(-9);
        let b = draw(-9);
        if let Ok(params) = QRacahParams::new(q, a, b, d) {
            return params;
        }
    }
}

fn eigenvalue(a: &Scalar, q: &Scalar, d: usize, i: usize) -> Scalar {
    let e = d as i64 - 2 * i as i64;
    let ainv = a.inv().expect("nonzero");
    a * &q.pow(e).expect("q nonzero") + &ainv * &q.pow(-e).expect("q nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params_2351() -> QRacahParams {
        QRacahParams::new(
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from_int(5),
            1,
        )
        .unwrap()
    }

    #[test]
    fn d1_eigenvalues() {
        let p = params_2351();
        let (theta, thetastar) = p.eigenvalues().unwrap();
        assert_eq!(
            theta,
            vec![Scalar::ratio(37, 6).unwrap(), Scalar::ratio(13, 6).unwrap()]
        );
        assert_eq!(
            thetastar,
            vec![
                Scalar::ratio(101, 10).unwrap(),
                Scalar::ratio(29, 10).unwrap()
            ]
        );
    }

    #[test]
    fn middle_eigenvalue_at_even_d() {
        let p = QRacahParams::new(
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from_int(5),
            2,
        )
        .unwrap();
        // exponent d-2i vanishes at i = d/2
        assert_eq!(p.theta(1), Scalar::ratio(10, 3).unwrap());
    }

    #[test]
    fn t_scalars_d1() {
        let p = params_2351();
        assert_eq!(p.t_scalars(), vec![Scalar::one(), Scalar::from_int(-3)]);
    }

    #[test]
    fn t_scalar_endpoints() {
        let p = QRacahParams::new(
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from_int(5),
            3,
        )
        .unwrap();
        let t = p.t_scalars();
        assert_eq!(t[0], Scalar::one());
        // t_d = (-1)^d a^d
        assert_eq!(t[3], Scalar::from_int(-27));
    }

    #[test]
    fn degenerate_params_rejected() {
        let one = Scalar::one;
        // q^4 = 1
        assert!(QRacahParams::new(-one(), Scalar::from_int(3), Scalar::from_int(5), 1).is_err());
        // a^2 = q^0 at d = 1
        assert!(QRacahParams::new(Scalar::from_int(2), one(), Scalar::from_int(5), 1).is_err());
        // zero entries and d = 0
        assert!(QRacahParams::new(Scalar::zero(), one(), one(), 1).is_err());
        assert!(QRacahParams::new(
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from_int(5),
            0
        )
        .is_err());
    }

    #[test]
    fn downarrow_reverses_eigenvalues() {
        let p = params_2351();
        let (theta, _) = p.eigenvalues().unwrap();
        let (theta_dn, _) = p.downarrow().eigenvalues().unwrap();
        let reversed: Vec<Scalar> = theta.iter().rev().cloned().collect();
        assert_eq!(theta_dn, reversed);
        assert_eq!(p.downarrow().downarrow(), p);
    }
}
