//! q-series helpers: the q-Pochhammer symbol (c;z)_n.

use crate::scalar::Scalar;

/// `(c;z)_n = (1-c)(1-cz)...(1-cz^{n-1})`; the empty product for `n = 0`.
pub fn qpochhammer(c: &Scalar, z: &Scalar, n: usize) -> Scalar {
    let one = Scalar::one();
    let mut acc = Scalar::one();
    let mut czk = c.clone();
    for _ in 0..n {
        acc = acc * (&one - &czk);
        czk = &czk * z;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_product() {
        let c = Scalar::from_int(7);
        let z = Scalar::from_int(5);
        assert_eq!(qpochhammer(&c, &z, 0), Scalar::one());
    }

    #[test]
    fn single_factor() {
        let c = Scalar::ratio(2, 3).unwrap();
        let z = Scalar::from_int(9);
        assert_eq!(qpochhammer(&c, &z, 1), Scalar::ratio(1, 3).unwrap());
    }

    #[test]
    fn two_factors() {
        // (3;2)_2 = (1-3)(1-6) = 10
        let c = Scalar::from_int(3);
        let z = Scalar::from_int(2);
        assert_eq!(qpochhammer(&c, &z, 2), Scalar::from_int(10));
    }

    #[test]
    fn recurrence_up_to_twelve() {
        let c = Scalar::ratio(3, 7).unwrap();
        let z = Scalar::ratio(-2, 5).unwrap();
        let one = Scalar::one();
        for n in 0..=12usize {
            let step = &one - &(&c * &z.pow(n as i64).unwrap());
            assert_eq!(qpochhammer(&c, &z, n + 1), qpochhammer(&c, &z, n) * step);
        }
    }
}
