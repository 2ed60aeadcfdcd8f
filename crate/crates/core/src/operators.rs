//! The derived operator family of sections 4-13 and 19: W, K, B, M, N, Q,
//! psi, Lambda, R, R+-, and the script-L probe element. Every operator with
//! several defining expressions is computed from all of them, and pairwise
//! agreement is a construction postcondition.

use crate::error::Error;
use crate::matrix::Matrix;
use crate::qseries::qpochhammer;
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use crate::tdsystem::{Flavor, SplitDecomposition, TdSystem};

#[derive(Clone, Debug)]
pub struct OperatorSet {
    pub t: Vec<Scalar>,
    pub w: Matrix,
    pub winv: Matrix,
    pub k: Matrix,
    pub kinv: Matrix,
    pub b: Matrix,
    pub binv: Matrix,
    pub m: Matrix,
    pub minv: Matrix,
    pub n: Matrix,
    pub ninv: Matrix,
    pub q: Matrix,
    pub qinv: Matrix,
    pub psi: Matrix,
    pub lambda: Matrix,
    pub r: Matrix,
    pub rminus: Matrix,
    pub rplus: Matrix,
    pub lscript: Matrix,
    pub first: SplitDecomposition,
    pub second: SplitDecomposition,
}

fn post(diff: &Matrix, what: &str) -> Result<(), Error> {
    if diff.is_zero() {
        Ok(())
    } else {
        Err(Error::OperatorPostcondition(what.to_string()))
    }
}

/// The map X -> X^vee = sum E_i X E_i (Def. 4.1).
pub fn vee(tds: &TdSystem, x: &Matrix) -> Matrix {
    let mut acc = Matrix::zero(tds.dim());
    for e in tds.e() {
        acc = &acc + &(&(e * x) * e);
    }
    acc
}

/// Eigenspace projector built from a split decomposition by change of basis:
/// the map acting as q^{d-2i} on the i-th part.
fn from_split(tds: &TdSystem, split: &SplitDecomposition) -> Result<Matrix, Error> {
    let n = tds.dim();
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut eig = Vec::with_capacity(n);
    for (i, part) in split.parts.iter().enumerate() {
        for v in part.basis() {
            cols.push(v.clone());
            eig.push(tds.params().q_pow(tds.d() as i64 - 2 * i as i64));
        }
    }
    let mut p = Matrix::zero(n);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            p[(i, j)] = col[i].clone();
        }
    }
    let diag = Matrix::diagonal(&eig);
    Ok(&(&p * &diag) * &p.inverse()?)
}

/// `(X - q^{d-2i} I)` minimal-polynomial product over 0 <= i <= d.
pub(crate) fn minpoly_spectrum(tds: &TdSystem, x: &Matrix) -> Matrix {
    let n = x.dim();
    let d = tds.d() as i64;
    let mut acc = Matrix::identity(n);
    for i in 0..=tds.d() {
        let ev = tds.params().q_pow(d - 2 * i as i64);
        acc = &acc * &(x - &Matrix::identity(n).scale(&ev));
    }
    acc
}

pub(crate) fn check_lowering(
    parts: &[Subspace],
    map: &Matrix,
    shift_up: bool,
    what: &str,
) -> Result<(), Error> {
    let d = parts.len() - 1;
    for i in 0..=d {
        let image = parts[i].image_under(map).expect("ambient match");
        let target: Option<&Subspace> = if shift_up {
            if i == d {
                None
            } else {
                Some(&parts[i + 1])
            }
        } else if i == 0 {
            None
        } else {
            Some(&parts[i - 1])
        };
        let ok = match target {
            Some(t) => t.contains_subspace(&image),
            None => image.is_zero(),
        };
        if !ok {
            return Err(Error::OperatorPostcondition(format!(
                "{what} containment fails at part {i}"
            )));
        }
    }
    Ok(())
}

impl OperatorSet {
    pub fn new(tds: &TdSystem) -> Result<Self, Error> {
        let n = tds.dim();
        let d = tds.d();
        let identity = Matrix::identity(n);
        let p = tds.params();
        let (q, a) = (p.q().clone(), p.a().clone());
        let qi = q.inv()?;
        let ai = a.inv()?;
        let b_param = p.b().clone();

        // W = sum t_i E_i (Def. 5.4); W^{-1} = sum t_i^{-1} E_i (Lemma 5.5).
        let t = p.t_scalars();
        let mut w = Matrix::zero(n);
        let mut winv = Matrix::zero(n);
        for (i, e) in tds.e().iter().enumerate() {
            w = &w + &e.scale(&t[i]);
            winv = &winv + &e.scale(&t[i].inv()?);
        }
        post(&(&(&w * &winv) - &identity), "W Winv = I")?;
        post(&w.commutator(tds.a()), "[W, A] = 0")?;
        for e in tds.e() {
            post(&w.commutator(e), "[W, E_i] = 0 (Lemma 5.7)")?;
        }

        // K, B by change of basis from the two split decompositions (Def. 7.1).
        let first = tds.split_decomposition(Flavor::First)?;
        let second = tds.split_decomposition(Flavor::Second)?;
        let k = from_split(tds, &first)?;
        let b = from_split(tds, &second)?;
        let kinv = k.inverse()?;
        let binv = b.inverse()?;
        post(&minpoly_spectrum(tds, &k), "minimal polynomial of K")?;
        post(&minpoly_spectrum(tds, &b), "minimal polynomial of B")?;

        // Eq. (kA) and the inverse form (kAa), both twins.
        let a_mat = tds.a();
        let qq = &q - &qi;
        let qqinv = qq.inv()?;
        let lhs = |x: &Matrix, y: &Matrix| x.q_commutator(y, &q).scale(&qqinv);
        post(
            &(&lhs(&k, a_mat) - &(&(&k * &k).scale(&a) + &identity.scale(&ai))),
            "Eq. (kA), K side",
        )?;
        post(
            &(&lhs(&b, a_mat) - &(&(&b * &b).scale(&ai) + &identity.scale(&a))),
            "Eq. (kA), B side",
        )?;
        post(
            &(&lhs(a_mat, &kinv) - &(&(&kinv * &kinv).scale(&ai) + &identity.scale(&a))),
            "Eq. (kAa), K side",
        )?;
        post(
            &(&lhs(a_mat, &binv) - &(&(&binv * &binv).scale(&a) + &identity.scale(&ai))),
            "Eq. (kAa), B side",
        )?;

        // Eq. (kb) and (kba): the two-sided K,B quadratics.
        let c1 = (&(&ai * &q) - &(&a * &qi)).checked_div(&qq)?;
        let c2 = (&(&a * &q) - &(&ai * &qi)).checked_div(&qq)?;
        post(
            &(&(&(&k * &k).scale(&a) - &(&k * &b).scale(&c1))
                - &(&(&b * &k).scale(&c2) - &(&b * &b).scale(&ai))),
            "Eq. (kb)",
        )?;
        post(
            &(&(&(&kinv * &kinv).scale(&ai) - &(&kinv * &binv).scale(&c1))
                - &(&(&binv * &kinv).scale(&c2) - &(&binv * &binv).scale(&a))),
            "Eq. (kba)",
        )?;

        // Lemma 7.2 and Proposition 7.4.
        let w2 = &w * &w;
        let w2inv = &winv * &winv;
        post(
            &(&(&(&w2inv * &k) * &w2) - &(&a_mat.scale(&ai) - &kinv.scale(&ai.pow(2)?))),
            "Lemma 7.2: W^-2 K W^2",
        )?;
        post(
            &(&(&(&w2inv * &b) * &w2) - &(&a_mat.scale(&a) - &binv.scale(&a.pow(2)?))),
            "Lemma 7.2: W^-2 B W^2",
        )?;
        post(
            &(&(&(&w2 * &kinv) * &w2inv) - &(&a_mat.scale(&a) - &k.scale(&a.pow(2)?))),
            "Lemma 7.2: W^2 K^-1 W^-2",
        )?;
        post(
            &(&(&(&w2 * &binv) * &w2inv) - &(&a_mat.scale(&ai) - &b.scale(&ai.pow(2)?))),
            "Lemma 7.2: W^2 B^-1 W^-2",
        )?;
        post(
            &(a_mat - &(&(&(&winv * &k) * &w).scale(&a) + &(&(&w * &kinv) * &winv).scale(&ai))),
            "Prop. 7.4: A = a W^-1 K W + a^-1 W K^-1 W^-1",
        )?;
        post(
            &(a_mat - &(&(&(&winv * &b) * &w).scale(&ai) + &(&(&w * &binv) * &winv).scale(&a))),
            "Prop. 7.4: A = a^-1 W^-1 B W + a W B^-1 W^-1",
        )?;

        // M, N (Eq. MNdef) and Q (Def. 8.2).
        let am = (&a - &ai).inv()?;
        let m = (&k.scale(&a) - &b.scale(&ai)).scale(&am);
        let n_op = (&kinv.scale(&ai) - &binv.scale(&a)).scale(&(&ai - &a).inv()?);
        let minv = m.inverse()?;
        let ninv = n_op.inverse()?;
        let q_op = &(&winv * &m) * &w;
        post(
            &(&q_op - &(&(&w * &n_op) * &winv)),
            "Def. 8.2: W^-1 M W = W N W^-1",
        )?;
        let qinv = q_op.inverse()?;
        post(&(&(&(&k * &n_op) * &b) - &m), "Eq. (KNB): K N B = M")?;
        post(&(&(&(&b * &n_op) * &k) - &m), "Eq. (KNB): B N K = M")?;
        for (x, name) in [(&m, "M"), (&n_op, "N"), (&q_op, "Q")] {
            post(
                &minpoly_spectrum(tds, x),
                &format!("minimal polynomial of {name}"),
            )?;
        }

        // psi (Lemma 10.1): preconditions, the four expressions, and the
        // commutation/lowering laws of Lemmas 10.3 and 10.5.
        let bk = &b * &kinv;
        let kb = &k * &binv;
        let kib = &kinv * &b;
        let bik = &binv * &k;
        let pre = [
            (&identity.scale(&a) - &bk.scale(&ai), "a I - a^-1 B K^-1"),
            (&identity.scale(&ai) - &kb.scale(&a), "a^-1 I - a K B^-1"),
            (&identity.scale(&a) - &kib.scale(&ai), "a I - a^-1 K^-1 B"),
            (&identity.scale(&ai) - &bik.scale(&a), "a^-1 I - a B^-1 K"),
        ];
        let mut pre_inv = Vec::with_capacity(4);
        for (mat, name) in &pre {
            pre_inv.push(
                mat.inverse().map_err(|_| {
                    Error::NotInvertible(format!("section 10 precondition: {name}"))
                })?,
            );
        }
        let psi_exprs = [
            (&pre_inv[0] * &(&identity - &bk)).scale(&qi),
            (&pre_inv[1] * &(&identity - &kb)).scale(&qi),
            (&pre_inv[2] * &(&identity - &kib)).scale(&q),
            (&pre_inv[3] * &(&identity - &bik)).scale(&q),
        ];
        let psi = psi_exprs[0].clone();
        for expr in &psi_exprs[1..] {
            post(
                &(&psi - expr),
                "Lemma 10.1: the four psi expressions coincide",
            )?;
        }
        let q2 = q.pow(2)?;
        post(
            &(&(&k * &psi) - &(&psi * &k).scale(&q2)),
            "Lemma 10.3: K psi = q^2 psi K",
        )?;
        post(
            &(&(&b * &psi) - &(&psi * &b).scale(&q2)),
            "Lemma 10.3: B psi = q^2 psi B",
        )?;
        post(&psi.pow(d as u32 + 1), "psi^{d+1} = 0")?;
        check_lowering(&first.parts, &psi, false, "Lemma 10.5: psi U_i in U_{i-1}")?;
        check_lowering(
            &second.parts,
            &psi,
            false,
            "Lemma 10.5: psi U^dn_i in U^dn_{i-1}",
        )?;

        // The eight product expressions for M^-1, N^-1 (Lemmas 10.6/10.7).
        let eight = [
            (
                &kinv * &(&identity - &psi.scale(&(&ai * &q))),
                &minv,
                "M^-1 = K^-1(I - a^-1 q psi)",
            ),
            (
                &(&identity - &psi.scale(&(&ai * &qi))) * &kinv,
                &minv,
                "M^-1 = (I - a^-1 q^-1 psi)K^-1",
            ),
            (
                &binv * &(&identity - &psi.scale(&(&a * &q))),
                &minv,
                "M^-1 = B^-1(I - a q psi)",
            ),
            (
                &(&identity - &psi.scale(&(&a * &qi))) * &binv,
                &minv,
                "M^-1 = (I - a q^-1 psi)B^-1",
            ),
            (
                &k * &(&identity - &psi.scale(&(&a * &qi))),
                &ninv,
                "N^-1 = K(I - a q^-1 psi)",
            ),
            (
                &(&identity - &psi.scale(&(&a * &q))) * &k,
                &ninv,
                "N^-1 = (I - a q psi)K",
            ),
            (
                &b * &(&identity - &psi.scale(&(&ai * &qi))),
                &ninv,
                "N^-1 = B(I - a^-1 q^-1 psi)",
            ),
            (
                &(&identity - &psi.scale(&(&ai * &q))) * &b,
                &ninv,
                "N^-1 = (I - a^-1 q psi)B",
            ),
        ];
        for (expr, target, what) in &eight {
            post(&(expr - *target), what)?;
        }

        // Casimir element Lambda (Lemma 11.1), with its commutation laws.
        let rk = &(a_mat - &k.scale(&a)) - &kinv.scale(&ai);
        let rb = &(a_mat - &b.scale(&ai)) - &binv.scale(&a);
        let lam_exprs = [
            &(&psi * &rk) + &(&k.scale(&qi) + &kinv.scale(&q)),
            &(&rk * &psi) + &(&k.scale(&q) + &kinv.scale(&qi)),
            &(&psi * &rb) + &(&b.scale(&qi) + &binv.scale(&q)),
            &(&rb * &psi) + &(&b.scale(&q) + &binv.scale(&qi)),
        ];
        let lambda = lam_exprs[0].clone();
        for expr in &lam_exprs[1..] {
            post(
                &(&lambda - expr),
                "Lemma 11.1: the four Lambda expressions coincide",
            )?;
        }
        for (x, name) in [
            (a_mat, "A"),
            (&w, "W"),
            (&k, "K"),
            (&b, "B"),
            (&m, "M"),
            (&n_op, "N"),
            (&q_op, "Q"),
            (&psi, "psi"),
        ] {
            post(
                &lambda.commutator(x),
                &format!("Lemma 11.3: [Lambda, {name}] = 0"),
            )?;
        }

        // R and R+- (Eq. R, section 19) with the theorem-backed relations.
        let r = rk.clone();
        let rminus = &(&(&w * &kinv) * &winv) - &kinv;
        let rplus = &(&(&winv * &k) * &w) - &k;
        post(
            &(&rplus + &(&k * &rminus).scale(&(&ai * &q))),
            "Eq. (RPRM): R+ = -a^-1 q K R-",
        )?;
        post(
            &(&rplus + &(&rminus * &k).scale(&(&ai * &qi))),
            "Eq. (RPRM): R+ = -a^-1 q^-1 R- K",
        )?;
        post(
            &(&rminus + &(&kinv * &rplus).scale(&(&a * &qi))),
            "Eq. (RPRM2): R- = -a q^-1 K^-1 R+",
        )?;
        for (x, name) in [(&rminus, "R-"), (&rplus, "R+")] {
            post(
                &(&(x * &k) - &(&k * x).scale(&q2)),
                &format!("{name} K = q^2 K {name}"),
            )?;
            check_lowering(&first.parts, x, true, &format!("{name} U_i in U_{{i+1}}"))?;
        }
        post(
            &(&r - &(&rplus.scale(&a) + &rminus.scale(&ai))),
            "Eq. (RRR): R = a R+ + a^-1 R-",
        )?;
        post(
            &(&(&rminus * &rplus) - &(&rplus * &rminus).scale(&q2)),
            "R- R+ = q^2 R+ R-",
        )?;

        // Script-L probe element of Problem 19.2 (computed, never asserted).
        let bi = b_param.inv()?;
        let lscript = &(tds.astar() - &(&minv + &psi).scale(&bi)) - &(&ninv + &psi).scale(&b_param);

        Ok(OperatorSet {
            t,
            w,
            winv,
            k,
            kinv,
            b,
            binv,
            m,
            minv,
            n: n_op,
            ninv,
            q: q_op,
            qinv,
            psi,
            lambda,
            r,
            rminus,
            rplus,
            lscript,
            first,
            second,
        })
    }
}

/// Verifies the section 6 material: the scalar Chu/Vandermonde sums of Lemmas
/// 6.1/6.4 for all 0 <= r <= s <= d, and the polynomial expansions of W^{+-1}
/// from Props. 6.2/6.3 (on E_rV + ... + E_dV) and Props. 6.5/6.6 (on
/// E_0V + ... + E_sV).
pub fn w_polynomial_forms(tds: &TdSystem, ops: &OperatorSet) -> CheckReport {
    let mut report = CheckReport::new("w-forms", 0);
    let p = tds.params();
    let d = tds.d();
    let di = d as i64;
    let q2 = p.q_pow(2);
    let q2i = p.q_pow(-2);
    let a = p.a();
    let ai = a.inv().expect("a nonzero");
    let theta = tds.theta();
    let t = &ops.t;
    let scalar_witness = |diff: &Scalar| {
        let mut m = Matrix::zero(1);
        m[(0, 0)] = diff.clone();
        m
    };

    // Lemma 6.1 (Eqs. cv, cvinv).
    let mut worst = Scalar::zero();
    for r in 0..=d {
        for s in r..=d {
            let mut sum1 = Scalar::zero();
            let mut sum2 = Scalar::zero();
            for i in 0..=(s - r) {
                let ii = i as i64;
                let mut prod = Scalar::one();
                for k in r..r + i {
                    prod = prod * (&theta[s] - &theta[k]);
                }
                let sign = if i % 2 == 0 {
                    Scalar::one()
                } else {
                    -Scalar::one()
                };
                let d1 = qpochhammer(&q2, &q2, i)
                    * qpochhammer(&(&ai * &p.q_pow(2 * r as i64 + 1 - di)), &q2, i);
                sum1 = sum1 + &sign * &p.q_pow(ii * ii) * &prod.checked_div(&d1).expect("nonzero");
                let d2 = qpochhammer(&q2i, &q2i, i)
                    * qpochhammer(&(a * &p.q_pow(di - 2 * r as i64 - 1)), &q2i, i);
                sum2 = sum2 + sign * &p.q_pow(-ii * ii) * &prod.checked_div(&d2).expect("nonzero");
            }
            let diff1 = &t[s].checked_div(&t[r]).expect("t nonzero") - &sum1;
            let diff2 = &t[r].checked_div(&t[s]).expect("t nonzero") - &sum2;
            if !diff1.is_zero() {
                worst = diff1;
            }
            if !diff2.is_zero() {
                worst = diff2;
            }
        }
    }
    report.push_zero(
        "cv-sums",
        "Lemma 6.1: Chu/Vandermonde sums (Eqs. cv, cvinv)",
        &scalar_witness(&worst),
    );

    // Lemma 6.4 (Eqs. cvVar, cvinvVar).
    let mut worst = Scalar::zero();
    for r in 0..=d {
        for s in r..=d {
            let mut sum1 = Scalar::zero();
            let mut sum2 = Scalar::zero();
            for i in 0..=(s - r) {
                let ii = i as i64;
                let mut prod = Scalar::one();
                for k in 0..i {
                    prod = prod * (&theta[r] - &theta[s - k]);
                }
                let sign = if i % 2 == 0 {
                    Scalar::one()
                } else {
                    -Scalar::one()
                };
                let d1 = qpochhammer(&q2, &q2, i)
                    * qpochhammer(&(a * &p.q_pow(di - 2 * s as i64 + 1)), &q2, i);
                sum1 = sum1 + &sign * &p.q_pow(ii * ii) * &prod.checked_div(&d1).expect("nonzero");
                let d2 = qpochhammer(&q2i, &q2i, i)
                    * qpochhammer(&(&ai * &p.q_pow(2 * s as i64 - di - 1)), &q2i, i);
                sum2 = sum2 + sign * &p.q_pow(-ii * ii) * &prod.checked_div(&d2).expect("nonzero");
            }
            let diff1 = &t[r].checked_div(&t[s]).expect("t nonzero") - &sum1;
            let diff2 = &t[s].checked_div(&t[r]).expect("t nonzero") - &sum2;
            if !diff1.is_zero() {
                worst = diff1;
            }
            if !diff2.is_zero() {
                worst = diff2;
            }
        }
    }
    report.push_zero(
        "cv-sums-var",
        "Lemma 6.4: Chu/Vandermonde sum variants (Eqs. cvVar, cvinvVar)",
        &scalar_witness(&worst),
    );

    let n = tds.dim();
    let identity = Matrix::identity(n);
    let ev: Vec<Subspace> = tds.e().iter().map(Subspace::column_space).collect();
    let restricted_diff = |poly: &Matrix, target: &Matrix, lo: usize, hi: usize| -> Matrix {
        let mut space = Subspace::zero(n);
        for e in &ev[lo..=hi] {
            space = space.sum(e).expect("same ambient");
        }
        let delta = poly - target;
        let mut witness = Matrix::zero(n);
        for (r, v) in space.basis().iter().enumerate() {
            let image = delta.apply(v);
            for (c, val) in image.into_iter().enumerate() {
                witness[(r, c)] = val;
            }
        }
        witness
    };

    // Props. 6.2/6.3: expansions on E_rV + ... + E_dV (r = 0 is Prop. 6.3).
    let mut worst_w = Matrix::zero(n);
    let mut worst_wi = Matrix::zero(n);
    for r in 0..=d {
        let mut poly_w = Matrix::zero(n);
        let mut poly_wi = Matrix::zero(n);
        let mut prod = Matrix::identity(n);
        for i in 0..=(d - r) {
            let ii = i as i64;
            if i > 0 {
                prod = &prod * &(tds.a() - &identity.scale(&theta[r + i - 1]));
            }
            let sign = if i % 2 == 0 {
                Scalar::one()
            } else {
                -Scalar::one()
            };
            let d1 = qpochhammer(&q2, &q2, i)
                * qpochhammer(&(&ai * &p.q_pow(2 * r as i64 + 1 - di)), &q2, i);
            let c1 = (&sign * &p.q_pow(ii * ii))
                .checked_div(&d1)
                .expect("nonzero");
            poly_w = &poly_w + &prod.scale(&c1);
            let d2 = qpochhammer(&q2i, &q2i, i)
                * qpochhammer(&(a * &p.q_pow(di - 2 * r as i64 - 1)), &q2i, i);
            let c2 = (&sign * &p.q_pow(-ii * ii))
                .checked_div(&d2)
                .expect("nonzero");
            poly_wi = &poly_wi + &prod.scale(&c2);
        }
        let dw = restricted_diff(&poly_w.scale(&t[r]), &ops.w, r, d);
        let dwi = restricted_diff(
            &poly_wi.scale(&t[r].inv().expect("t nonzero")),
            &ops.winv,
            r,
            d,
        );
        if !dw.is_zero() {
            worst_w = dw;
        }
        if !dwi.is_zero() {
            worst_wi = dwi;
        }
    }
    report.push_zero(
        "w-expand",
        "Props. 6.2/6.3: W expansion on E_rV + ... + E_dV",
        &worst_w,
    );
    report.push_zero(
        "winv-expand",
        "Props. 6.2/6.3: W^-1 expansion on E_rV + ... + E_dV",
        &worst_wi,
    );

    // Props. 6.5/6.6: variant expansions on E_0V + ... + E_sV (s = d is 6.6).
    let mut worst_w = Matrix::zero(n);
    let mut worst_wi = Matrix::zero(n);
    for s in 0..=d {
        let mut poly_w = Matrix::zero(n);
        let mut poly_wi = Matrix::zero(n);
        let mut prod = Matrix::identity(n);
        for i in 0..=s {
            let ii = i as i64;
            if i > 0 {
                prod = &prod * &(tds.a() - &identity.scale(&theta[s - i + 1]));
            }
            let sign = if i % 2 == 0 {
                Scalar::one()
            } else {
                -Scalar::one()
            };
            let d1 = qpochhammer(&q2, &q2, i)
                * qpochhammer(&(a * &p.q_pow(di - 2 * s as i64 + 1)), &q2, i);
            let c1 = (&sign * &p.q_pow(ii * ii))
                .checked_div(&d1)
                .expect("nonzero");
            poly_w = &poly_w + &prod.scale(&c1);
            let d2 = qpochhammer(&q2i, &q2i, i)
                * qpochhammer(&(&ai * &p.q_pow(2 * s as i64 - di - 1)), &q2i, i);
            let c2 = (&sign * &p.q_pow(-ii * ii))
                .checked_div(&d2)
                .expect("nonzero");
            poly_wi = &poly_wi + &prod.scale(&c2);
        }
        let dw = restricted_diff(&poly_w.scale(&t[s]), &ops.w, 0, s);
        let dwi = restricted_diff(
            &poly_wi.scale(&t[s].inv().expect("t nonzero")),
            &ops.winv,
            0,
            s,
        );
        if !dw.is_zero() {
            worst_w = dw;
        }
        if !dwi.is_zero() {
            worst_wi = dwi;
        }
    }
    report.push_zero(
        "w-expand-var",
        "Props. 6.5/6.6: W variant expansion on E_0V + ... + E_sV",
        &worst_w,
    );
    report.push_zero(
        "winv-expand-var",
        "Props. 6.5/6.6: W^-1 variant expansion on E_0V + ... + E_sV",
        &worst_wi,
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::QRacahParams;
    use crate::tdsystem::construct_split_form;

    fn fixture(d: usize) -> TdSystem {
        let p = QRacahParams::new(
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from_int(5),
            d,
        )
        .unwrap();
        let phi = if d == 1 {
            vec![Scalar::one()]
        } else {
            crate::tdsystem::find_phi(&p, &Scalar::from_int(2)).unwrap()
        };
        let (a, astar, _) = construct_split_form(&p, &phi).unwrap();
        TdSystem::new(p, a, astar).unwrap()
    }

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d).unwrap()
    }

    #[test]
    fn d1_spot_values() {
        let tds = fixture(1);
        let ops = OperatorSet::new(&tds).unwrap();
        assert_eq!(ops.w, Matrix::from_int_rows(&[&[1, 0], &[1, -3]]));
        assert_eq!(
            ops.winv,
            Matrix::from_rows(vec![vec![s(1, 1), s(0, 1)], vec![s(1, 3), s(-1, 3)]]).unwrap()
        );
        assert_eq!(
            ops.k,
            Matrix::from_rows(vec![vec![s(2, 1), s(0, 1)], vec![s(0, 1), s(1, 2)]]).unwrap()
        );
        assert_eq!(
            ops.b,
            Matrix::from_rows(vec![vec![s(2, 1), s(-6, 1)], vec![s(0, 1), s(1, 2)]]).unwrap()
        );
        assert_eq!(
            ops.m,
            Matrix::from_rows(vec![vec![s(2, 1), s(3, 4)], vec![s(0, 1), s(1, 2)]]).unwrap()
        );
        assert_eq!(
            ops.q,
            Matrix::from_rows(vec![vec![s(11, 4), s(-9, 4)], vec![s(3, 4), s(-1, 4)]]).unwrap()
        );
        assert_eq!(
            ops.psi,
            Matrix::from_rows(vec![vec![s(0, 1), s(9, 4)], vec![s(0, 1), s(0, 1)]]).unwrap()
        );
        assert_eq!(ops.lambda, Matrix::identity(2).scale(&s(17, 4)));
    }

    #[test]
    fn d1_q_det_and_trace() {
        let tds = fixture(1);
        let ops = OperatorSet::new(&tds).unwrap();
        // det Q = 1 and trace Q = 5/2, matching the spectrum {2, 1/2}.
        let det = &(&ops.q[(0, 0)] * &ops.q[(1, 1)]) - &(&ops.q[(0, 1)] * &ops.q[(1, 0)]);
        assert_eq!(det, Scalar::one());
        assert_eq!(ops.q.trace(), s(5, 2));
    }

    #[test]
    fn vee_laws() {
        let tds = fixture(2);
        assert_eq!(vee(&tds, &Matrix::identity(3)), Matrix::identity(3));
        assert_eq!(vee(&tds, tds.a()), tds.a().clone());
        // vee kills commutators with A (Lemma 4.3(iii)).
        let x = tds.astar();
        assert!(vee(&tds, &tds.a().commutator(x)).is_zero());
    }

    #[test]
    fn operator_sets_construct_at_all_diameters() {
        for d in [1, 2, 3] {
            let tds = fixture(d);
            let ops = OperatorSet::new(&tds).unwrap();
            assert_eq!(ops.t.len(), d + 1);
        }
    }

    #[test]
    fn w_forms_pass() {
        for d in [1, 2, 3] {
            let tds = fixture(d);
            let ops = OperatorSet::new(&tds).unwrap();
            let report = w_polynomial_forms(&tds, &ops);
            assert!(report.all_pass(), "d = {d}: {}", report.to_text());
        }
    }
}
