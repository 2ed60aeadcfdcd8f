//! Relation checkers for the equitable presentation of U_q(sl2) (section 14),
//! equitable triples (section 9), the q-tetrahedron algebra (section 15),
//! t-segregated modules (section 16), the Assumption 17.1 assembly, and the
//! two module structures of Theorems 18.1/18.2.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::matrix::Matrix;
use crate::operators::OperatorSet;
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::tdsystem::TdSystem;

pub const LABELS: [&str; 8] = ["01", "12", "23", "30", "02", "13", "20", "31"];

/// A concrete t-segregated module for the q-tetrahedron algebra: the scalar
/// t, the action of the eight standard generators, and the common Casimir
/// action Upsilon.
#[derive(Clone, Debug)]
pub struct BoxqModule {
    pub t: Scalar,
    pub gens: BTreeMap<String, Matrix>,
    pub upsilon: Matrix,
}

impl BoxqModule {
    pub fn gen(&self, label: &str) -> Result<&Matrix, Error> {
        self.gens
            .get(label)
            .ok_or_else(|| Error::MissingLabel(label.to_string()))
    }

    /// JSON dump: label -> matrix of "p/q" strings, plus "t" and "upsilon".
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert(
            "t".to_string(),
            serde_json::Value::String(self.t.to_string()),
        );
        for (label, mat) in &self.gens {
            map.insert(label.clone(), serde_json::to_value(mat).expect("matrix"));
        }
        map.insert(
            "upsilon".to_string(),
            serde_json::to_value(&self.upsilon).expect("matrix"),
        );
        serde_json::Value::Object(map)
    }
}

fn qweyl_diff(x: &Matrix, y: &Matrix, q: &Scalar) -> Matrix {
    let n = x.dim();
    let denom = (q - &q.inv().expect("q nonzero")).inv().expect("q^2 != 1");
    &x.q_commutator(y, q).scale(&denom) - &Matrix::identity(n)
}

/// Def. 9.1: the three cyclic q-Weyl relations for an equitable triple.
pub fn check_equitable_triple(x: &Matrix, y: &Matrix, z: &Matrix, q: &Scalar) -> bool {
    equitable_triple_diff(x, y, z, q).is_zero()
}

pub(crate) fn equitable_triple_diff(x: &Matrix, y: &Matrix, z: &Matrix, q: &Scalar) -> Matrix {
    let mut worst = Matrix::zero(x.dim());
    for diff in [
        qweyl_diff(x, y, q),
        qweyl_diff(y, z, q),
        qweyl_diff(z, x, q),
    ] {
        if !diff.is_zero() {
            worst = diff;
        }
    }
    worst
}

/// Verifies the section 14 relation corpus on a concrete quadruple
/// (x, y, y^-1, z) and returns the report together with the common Casimir
/// value (Lemma 14.2 / Def. 14.3).
pub fn check_uqsl2(
    x: &Matrix,
    y: &Matrix,
    yinv: &Matrix,
    z: &Matrix,
    q: &Scalar,
) -> (CheckReport, Matrix) {
    let mut report = CheckReport::new("uqsl2", 0);
    let n = x.dim();
    let identity = Matrix::identity(n);
    let qi = q.inv().expect("q nonzero");
    let qq = q - &qi;
    let qqinv = qq.inv().expect("q^2 != 1");

    report.push_zero(
        "Q1.1",
        "Def. 14.1: y y^-1 = 1 = y^-1 y",
        &(&(y * yinv) - &identity),
    );
    let mut worst = Matrix::zero(n);
    for diff in [
        qweyl_diff(x, y, q),
        qweyl_diff(y, z, q),
        qweyl_diff(z, x, q),
    ] {
        if !diff.is_zero() {
            worst = diff;
        }
    }
    report.push_zero(
        "Q1.2",
        "Def. 14.1: the three Eq. (defREL) relations",
        &worst,
    );

    // Lemma 14.2: the six Casimir expressions coincide.
    let cas = |u: &Matrix, v: &Matrix, s: &Matrix, c: &Scalar| {
        &(&(&u.scale(c) + &v.scale(&c.inv().expect("nonzero"))) + &s.scale(c))
            - &(&(u * v) * s).scale(c)
    };
    let casimir = cas(x, y, z, q);
    let others = [
        cas(y, z, x, q),
        cas(z, x, y, q),
        // The q^-1 partners reverse the product: q^-1 x + q y + q^-1 z - q^-1 zyx.
        &(&(&x.scale(&qi) + &y.scale(q)) + &z.scale(&qi)) - &(&(z * y) * x).scale(&qi),
        &(&(&y.scale(&qi) + &z.scale(q)) + &x.scale(&qi)) - &(&(x * z) * y).scale(&qi),
        &(&(&z.scale(&qi) + &x.scale(q)) + &y.scale(&qi)) - &(&(y * x) * z).scale(&qi),
    ];
    let mut worst = Matrix::zero(n);
    for other in &others {
        let diff = &casimir - other;
        if !diff.is_zero() {
            worst = diff;
        }
    }
    report.push_zero(
        "Q1.3",
        "Lemma 14.2: six Casimir expressions coincide",
        &worst,
    );

    // Def. 14.4: both defining forms of each nu.
    let nu_x = (&identity - &(y * z)).scale(q);
    let nu_y = (&identity - &(z * x)).scale(q);
    let nu_z = (&identity - &(x * y)).scale(q);
    let mut worst = Matrix::zero(n);
    for (nu, left, right) in [(&nu_x, z, y), (&nu_y, x, z), (&nu_z, y, x)] {
        let diff = nu - &(&identity - &(left * right)).scale(&qi);
        if !diff.is_zero() {
            worst = diff;
        }
    }
    report.push_zero("Q1.4", "Def. 14.4: both forms of each nu agree", &worst);

    // [x,y]/(q-q^-1) = nu_z and cyclic.
    let mut worst = Matrix::zero(n);
    for (u, v, nu) in [(x, y, &nu_z), (y, z, &nu_x), (z, x, &nu_y)] {
        let diff = &u.commutator(v).scale(&qqinv) - nu;
        if !diff.is_zero() {
            worst = diff;
        }
    }
    report.push_zero(
        "Q1.5",
        "Section 14: [x,y]/(q-q^-1) = nu_z and cyclic",
        &worst,
    );

    // q^2-twisting laws: x nu_y = q^2 nu_y x etc., both orientations.
    let q2 = q.pow(2).expect("q nonzero");
    let mut worst = Matrix::zero(n);
    for (u, nu) in [(x, &nu_y), (y, &nu_z), (z, &nu_x)] {
        let diff = &(u * nu) - &(nu * u).scale(&q2);
        if !diff.is_zero() {
            worst = diff;
        }
    }
    for (nu, u) in [(&nu_z, x), (&nu_x, y), (&nu_y, z)] {
        let diff = &(nu * u) - &(u * nu).scale(&q2);
        if !diff.is_zero() {
            worst = diff;
        }
    }
    report.push_zero(
        "Q1.6",
        "Section 14: x nu_y = q^2 nu_y x and companions",
        &worst,
    );

    // [x, nu_x]/(q-q^-1) = y - z and cyclic.
    let mut worst = Matrix::zero(n);
    for (u, nu, p1, p2) in [(x, &nu_x, y, z), (y, &nu_y, z, x), (z, &nu_z, x, y)] {
        let diff = &u.commutator(nu).scale(&qqinv) - &(p1 - p2);
        if !diff.is_zero() {
            worst = diff;
        }
    }
    report.push_zero(
        "Q1.7",
        "Section 14: [x,nu_x]/(q-q^-1) = y-z and cyclic",
        &worst,
    );

    // [nu_x, nu_y]_q/(q-q^-1) = 1 - z^2 and cyclic.
    let mut worst = Matrix::zero(n);
    for (nu1, nu2, u) in [(&nu_x, &nu_y, z), (&nu_y, &nu_z, x), (&nu_z, &nu_x, y)] {
        let diff = &nu1.q_commutator(nu2, q).scale(&qqinv) - &(&identity - &(u * u));
        if !diff.is_zero() {
            worst = diff;
        }
    }
    report.push_zero(
        "Q1.8",
        "Section 14: [nu_x,nu_y]_q/(q-q^-1) = 1-z^2 and cyclic",
        &worst,
    );
    (report, casimir)
}

fn label_of(i: usize, j: usize) -> String {
    format!("{}{}", i % 4, j % 4)
}

fn get(gens: &BTreeMap<String, Matrix>, i: usize, j: usize) -> Result<&Matrix, Error> {
    let label = label_of(i, j);
    gens.get(&label).ok_or(Error::MissingLabel(label))
}

/// Def. 15.1: all 18 defining relation instances of the q-tetrahedron
/// algebra, verified on a concrete generator family.
pub fn check_boxq(gens: &BTreeMap<String, Matrix>, q: &Scalar) -> Result<CheckReport, Error> {
    let mut report = CheckReport::new("boxq", 0);
    let n = get(gens, 0, 1)?.dim();
    let identity = Matrix::identity(n);
    let qi = q.inv().expect("q nonzero");
    let three = (&q.pow(3).expect("nonzero") - &qi.pow(3).expect("nonzero"))
        .checked_div(&(q - &qi))
        .expect("q^2 != 1");

    // (tet1): x_{ij} x_{ji} = 1 for j - i = 2.
    for i in [0usize, 1] {
        let diff = &(get(gens, i, i + 2)? * get(gens, i + 2, i)?) - &identity;
        report.push_zero(
            format!("tet1-{}{}", i, (i + 2) % 4),
            "Def. 15.1(i): x_ij x_ji = 1",
            &diff,
        );
    }
    // (tet2): twelve q-Weyl instances.
    for i in 0..4usize {
        for (dj, dk) in [(1usize, 1usize), (1, 2), (2, 1)] {
            let j = i + dj;
            let k = j + dk;
            let diff = qweyl_diff(get(gens, i, j)?, get(gens, j, k)?, q);
            report.push_zero(
                format!("tet2-{}{}{}", i, j % 4, k % 4),
                "Def. 15.1(ii): (q x_ij x_jk - q^-1 x_jk x_ij)/(q-q^-1) = 1",
                &diff,
            );
        }
    }
    // (tet3): four q-Serre instances on parallel arcs.
    for i in 0..4usize {
        let u = get(gens, i, i + 1)?;
        let v = get(gens, i + 2, i + 3)?;
        let u2 = u * u;
        let u3 = &u2 * u;
        let diff = &(&(&u3 * v) - &(&(&u2 * v) * u).scale(&three))
            + &(&(&(u * v) * &u2).scale(&three) - &(v * &u3));
        report.push_zero(
            format!("tet3-{}{}", i, (i + 1) % 4),
            "Def. 15.1(iii): q-Serre relation",
            &diff,
        );
    }
    Ok(report)
}

/// Def. 16.1 / Lemmas 16.2-16.4: the ten segregated equations, the Upsilon
/// coincidences, the Askey-Wilson relations, and centrality of Upsilon.
/// Requires check_boxq to pass first; returns the report and the common
/// Upsilon.
pub fn check_segregated(
    gens: &BTreeMap<String, Matrix>,
    t: &Scalar,
    q: &Scalar,
) -> Result<(CheckReport, Matrix), Error> {
    let boxq = check_boxq(gens, q)?;
    if !boxq.all_ok() {
        return Err(Error::ModuleCheck(
            "check_segregated precondition: check_boxq has failures".to_string(),
        ));
    }
    let mut report = CheckReport::new("segregated", 0);
    let x01 = get(gens, 0, 1)?;
    let x12 = get(gens, 1, 2)?;
    let x23 = get(gens, 2, 3)?;
    let x30 = get(gens, 3, 0)?;
    let x02 = get(gens, 0, 2)?;
    let x13 = get(gens, 1, 3)?;
    let x20 = get(gens, 2, 0)?;
    let x31 = get(gens, 3, 1)?;
    let n = x01.dim();
    let identity = Matrix::identity(n);
    let qi = q.inv().expect("q nonzero");
    let qq = q - &qi;
    let qqinv = qq.inv().expect("q^2 != 1");
    let ti = t.inv().expect("t nonzero");

    // The ten equations of Def. 16.1 (Eqs. 0123, four1-four4).
    let seg: [(&str, &Scalar, &Matrix, &Matrix, &Matrix, &Matrix); 10] = [
        ("seg-0123a", t, x01, x23, x30, x12),
        ("seg-0123b", &ti, x12, x30, x01, x23),
        ("seg-four1a", t, x01, x02, x30, x02),
        ("seg-four1b", &ti, x12, x13, x01, x13),
        ("seg-four2a", t, x23, x20, x12, x20),
        ("seg-four2b", &ti, x30, x31, x23, x31),
        ("seg-four3a", &ti, x30, x20, x20, x01),
        ("seg-four3b", t, x01, x31, x31, x12),
        ("seg-four4a", &ti, x12, x02, x02, x23),
        ("seg-four4b", t, x23, x13, x13, x30),
    ];
    for (id, coeff, u, v, c1, c2) in seg {
        let diff = &(u - v).scale(coeff) - &c1.commutator(c2).scale(&qqinv);
        report.push_zero(id, "Def. 16.1: t-segregated equation", &diff);
    }

    // Lemma 16.2: the four Upsilon expressions coincide.
    let ups_quad = |coeff: &Scalar, u: &Matrix, v: &Matrix, p1: &Matrix, p2: &Matrix| {
        &(&(u * v) - &identity).scale(coeff) + &(&p1.scale(q) + &p2.scale(&qi))
    };
    let upsilon = ups_quad(t, x01, x23, x30, x12);
    let mut worst = Matrix::zero(n);
    for other in [
        ups_quad(&ti, x12, x30, x01, x23),
        ups_quad(t, x23, x01, x12, x30),
        ups_quad(&ti, x30, x12, x23, x01),
    ] {
        let diff = &upsilon - &other;
        if !diff.is_zero() {
            worst = diff;
        }
    }
    report.push_zero(
        "ups-16.2",
        "Lemma 16.2: four Upsilon expressions agree",
        &worst,
    );

    // Lemma 16.3: four more expressions for Upsilon.
    let ups_weyl = |lead: &Matrix, coeff: &Scalar, u: &Matrix, v: &Matrix| {
        &lead.scale(&(q + &qi)) + &(&u.q_commutator(v, q).scale(&qqinv) - &identity).scale(coeff)
    };
    let mut worst = Matrix::zero(n);
    for other in [
        ups_weyl(x30, t, x01, x23),
        ups_weyl(x01, &ti, x12, x30),
        ups_weyl(x12, t, x23, x01),
        ups_weyl(x23, &ti, x30, x12),
    ] {
        let diff = &upsilon - &other;
        if !diff.is_zero() {
            worst = diff;
        }
    }
    report.push_zero(
        "ups-16.3",
        "Lemma 16.3: q-Weyl Upsilon expressions agree",
        &worst,
    );

    // Lemma 16.4: the four Askey-Wilson relations.
    let aw = |u: &Matrix, v: &Matrix, coeff: &Scalar| {
        let u2 = u * u;
        let lhs = &(&(&u2 * v)
            - &(&(u * v) * u).scale(&(&q.pow(2).expect("nonzero") + &qi.pow(2).expect("nonzero"))))
            + &(v * &u2);
        let rhs = &(&(&identity + &upsilon.scale(coeff)) * u).scale(&-(&qq * &qq))
            + &identity.scale(
                &(&(&qq * &(&q.pow(2).expect("nonzero") - &qi.pow(2).expect("nonzero"))) * coeff),
            );
        &lhs - &rhs
    };
    let mut worst = Matrix::zero(n);
    for diff in [
        aw(x01, x23, &ti),
        aw(x23, x01, &ti),
        aw(x12, x30, t),
        aw(x30, x12, t),
    ] {
        if !diff.is_zero() {
            worst = diff;
        }
    }
    report.push_zero("ups-aw", "Lemma 16.4: Askey-Wilson relations", &worst);

    // Lemma 15.5 / Lemma 16.2 corollary: Upsilon commutes with all eight
    // generators.
    let mut worst = Matrix::zero(n);
    for g in [x01, x12, x23, x30, x02, x13, x20, x31] {
        let diff = upsilon.commutator(g);
        if !diff.is_zero() {
            worst = diff;
        }
    }
    report.push_zero(
        "ups-central",
        "Upsilon commutes with all generators",
        &worst,
    );
    report.extend(boxq.entries);
    Ok((report, upsilon))
}

/// Prop. 17.4: builds a t-segregated module from equitable U_q(sl2) data
/// (x, y, y^-1, z) and an invertible w satisfying Eq. (twocond) of
/// Assumption 17.1. Lemmas 17.2/17.3 and the full segregated check are
/// enforced as postconditions, including Upsilon = Casimir.
#[allow(clippy::too_many_arguments)]
pub fn assemble_from_assumption(
    x: &Matrix,
    y: &Matrix,
    yinv: &Matrix,
    z: &Matrix,
    w: &Matrix,
    t: &Scalar,
    q: &Scalar,
) -> Result<BoxqModule, Error> {
    let (uq_report, casimir) = check_uqsl2(x, y, yinv, z, q);
    if !uq_report.all_pass() {
        return Err(Error::ModuleCheck(format!(
            "assembly input is not an equitable U_q(sl2) action:\n{}",
            uq_report.to_text()
        )));
    }
    let winv = w
        .inverse()
        .map_err(|_| Error::NotInvertible("Assumption 17.1: w".to_string()))?;
    let n = x.dim();
    let identity = Matrix::identity(n);
    let qi = q.inv().expect("q nonzero");
    let ti = t.inv().expect("t nonzero");

    // Eq. (twocond): tz - q = w(t - qx) and tz - q^-1 = (t - q^-1 x)w.
    let lhs1 = &z.scale(t) - &identity.scale(q);
    let rhs1 = w * &(&identity.scale(t) - &x.scale(q));
    let lhs2 = &z.scale(t) - &identity.scale(&qi);
    let rhs2 = &(&identity.scale(t) - &x.scale(&qi)) * w;
    if !(&lhs1 - &rhs1).is_zero() || !(&lhs2 - &rhs2).is_zero() {
        return Err(Error::ModuleCheck(
            "Assumption 17.1: Eq. (twocond) violated".to_string(),
        ));
    }

    // Lemma 17.2 product laws.
    let post = |diff: Matrix, what: &str| -> Result<(), Error> {
        if diff.is_zero() {
            Ok(())
        } else {
            Err(Error::ModuleCheck(what.to_string()))
        }
    };
    post(
        &(x * w) - &(&(&identity - &z.scale(&(q * t))) + &w.scale(&(q * t))),
        "Lemma 17.2: xw = 1 - qtz + qtw",
    )?;
    post(
        &(w * x) - &(&(&identity - &z.scale(&(&qi * t))) + &w.scale(&(&qi * t))),
        "Lemma 17.2: wx = 1 - q^-1 t z + q^-1 t w",
    )?;
    post(
        &(&winv * z) - &(&(&identity - &x.scale(&(q * &ti))) + &winv.scale(&(q * &ti))),
        "Lemma 17.2: w^-1 z = 1 - q t^-1 x + q t^-1 w^-1",
    )?;
    post(
        &(z * &winv) - &(&(&identity - &x.scale(&(&qi * &ti))) + &winv.scale(&(&qi * &ti))),
        "Lemma 17.2: z w^-1 = 1 - q^-1 t^-1 x + q^-1 t^-1 w^-1",
    )?;

    // Lemma 17.3 nu laws.
    let nu_x = (&identity - &(y * z)).scale(q);
    let nu_z = (&identity - &(x * y)).scale(q);
    post(
        &(w * &nu_z) - &(&(&w.scale(q) - &y.scale(q)) + &(&(z * y) - &(w * y)).scale(t)),
        "Lemma 17.3: w nu_z = qw - qy + tzy - twy",
    )?;
    post(
        &(&nu_z * w) - &(&(&w.scale(&qi) - &y.scale(&qi)) + &(&(y * z) - &(y * w)).scale(t)),
        "Lemma 17.3: nu_z w = q^-1 w - q^-1 y + tyz - tyw",
    )?;
    post(
        &(&nu_x * &winv)
            - &(&(&winv.scale(q) - &y.scale(q)) + &(&(y * x) - &(y * &winv)).scale(&ti)),
        "Lemma 17.3: nu_x w^-1 = q w^-1 - qy + t^-1 yx - t^-1 y w^-1",
    )?;
    post(
        &(&winv * &nu_x)
            - &(&(&winv.scale(&qi) - &y.scale(&qi)) + &(&(x * y) - &(&winv * y)).scale(&ti)),
        "Lemma 17.3: w^-1 nu_x = q^-1 w^-1 - q^-1 y + t^-1 xy - t^-1 w^-1 y",
    )?;

    // The Prop. 17.4 generator table.
    let mut gens = BTreeMap::new();
    gens.insert("01".to_string(), z.clone());
    gens.insert("12".to_string(), x.clone());
    gens.insert("23".to_string(), y + &nu_z.scale(&ti));
    gens.insert("30".to_string(), y + &nu_x.scale(t));
    gens.insert("02".to_string(), yinv.clone());
    gens.insert("13".to_string(), winv);
    gens.insert("20".to_string(), y.clone());
    gens.insert("31".to_string(), w.clone());

    let (seg_report, upsilon) = check_segregated(&gens, t, q)?;
    if !seg_report.all_ok() {
        return Err(Error::ModuleCheck(format!(
            "assembled module fails segregated checks:\n{}",
            seg_report.to_text()
        )));
    }
    if !(&upsilon - &casimir).is_zero() {
        return Err(Error::ModuleCheck(
            "Prop. 17.4: Upsilon differs from the U_q(sl2) Casimir".to_string(),
        ));
    }
    Ok(BoxqModule {
        t: t.clone(),
        gens,
        upsilon,
    })
}

fn theorem_module(
    tds: &TdSystem,
    ops: &OperatorSet,
    k: &Matrix,
    kinv: &Matrix,
    t: &Scalar,
    which: &str,
) -> Result<BoxqModule, Error> {
    let q = tds.params().q();
    let wpsiw = &(&ops.w * &ops.psi) * &ops.winv;
    let wipsiw = &(&ops.winv * &ops.psi) * &ops.w;
    let mut gens = BTreeMap::new();
    gens.insert("01".to_string(), &(&ops.winv * k) * &ops.w);
    gens.insert("12".to_string(), &(&ops.w * kinv) * &ops.winv);
    gens.insert("23".to_string(), &ops.qinv + &wpsiw);
    gens.insert("30".to_string(), &ops.qinv + &wipsiw);
    gens.insert("02".to_string(), ops.q.clone());
    gens.insert("13".to_string(), kinv.clone());
    gens.insert("20".to_string(), ops.qinv.clone());
    gens.insert("31".to_string(), k.clone());

    let (seg_report, upsilon) = check_segregated(&gens, t, q)?;
    if !seg_report.all_ok() {
        return Err(Error::ModuleCheck(format!(
            "{which}: segregated checks fail:\n{}",
            seg_report.to_text()
        )));
    }
    if !(&upsilon - &ops.lambda).is_zero() {
        return Err(Error::ModuleCheck(format!(
            "{which}: Upsilon differs from Lambda"
        )));
    }
    // Prop. 12.2 alternative description of x_23, x_30.
    if !(&gens["23"] - &(&ops.psi + &ops.minv)).is_zero()
        || !(&gens["30"] - &(&ops.psi + &ops.ninv)).is_zero()
    {
        return Err(Error::ModuleCheck(format!(
            "{which}: Prop. 12.2 description of x_23/x_30 fails"
        )));
    }
    // Cross-assembly: the Assumption 17.1 route must reproduce the table.
    let x = &gens["12"];
    let z = &gens["01"];
    let assembled = assemble_from_assumption(x, &ops.qinv, &ops.q, z, k, t, q)?;
    for label in LABELS {
        if !(&gens[label] - assembled.gen(label)?).is_zero() {
            return Err(Error::ModuleCheck(format!(
                "{which}: cross-assembly disagrees at x_{label}"
            )));
        }
    }
    Ok(BoxqModule {
        t: t.clone(),
        gens,
        upsilon,
    })
}

/// Theorem 18.1: the a-segregated module built from K.
pub fn module_one(tds: &TdSystem, ops: &OperatorSet) -> Result<BoxqModule, Error> {
    let t = tds.params().a().clone();
    let module = theorem_module(tds, ops, &ops.k, &ops.kinv, &t, "Theorem 18.1")?;
    // A = a x_01 + a^-1 x_12 (Prop. 7.4 restated on the module).
    let a = tds.params().a();
    let recomposed = &module.gens["01"].scale(a) + &module.gens["12"].scale(&a.inv()?);
    if !(tds.a() - &recomposed).is_zero() {
        return Err(Error::ModuleCheck(
            "Theorem 18.1: A != a x_01 + a^-1 x_12".to_string(),
        ));
    }
    Ok(module)
}

/// Theorem 18.2: the a^-1-segregated module built from B.
pub fn module_two(tds: &TdSystem, ops: &OperatorSet) -> Result<BoxqModule, Error> {
    let a = tds.params().a();
    let t = a.inv()?;
    let module = theorem_module(tds, ops, &ops.b, &ops.binv, &t, "Theorem 18.2")?;
    // A = a^-1 x_01 + a x_12 on this module.
    let recomposed = &module.gens["01"].scale(&a.inv()?) + &module.gens["12"].scale(a);
    if !(tds.a() - &recomposed).is_zero() {
        return Err(Error::ModuleCheck(
            "Theorem 18.2: A != a^-1 x_01 + a x_12".to_string(),
        ));
    }
    Ok(module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::QRacahParams;
    use crate::tdsystem::construct_split_form;

    fn fixture(d: usize) -> (TdSystem, OperatorSet) {
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
        let tds = TdSystem::new(p, a, astar).unwrap();
        let ops = OperatorSet::new(&tds).unwrap();
        (tds, ops)
    }

    #[test]
    fn identity_generators_pass_uqsl2() {
        let q = Scalar::from_int(2);
        let i = Matrix::identity(2);
        let (report, casimir) = check_uqsl2(&i, &i, &i, &i, &q);
        assert!(report.all_pass(), "{}", report.to_text());
        // q + q^-1 + q - q = q + q^-1.
        assert_eq!(casimir, i.scale(&Scalar::ratio(5, 2).unwrap()));
    }

    #[test]
    fn scaled_generator_fails_defrel() {
        let q = Scalar::from_int(2);
        let i = Matrix::identity(2);
        let x = i.scale(&Scalar::from_int(2));
        let (report, _) = check_uqsl2(&x, &i, &i, &i, &q);
        assert!(!report.all_pass());
    }

    #[test]
    fn identity_triple_is_equitable() {
        let i = Matrix::identity(3);
        assert!(check_equitable_triple(&i, &i, &i, &Scalar::from_int(2)));
    }

    #[test]
    fn lemma_9_2_and_prop_9_3_triples() {
        for d in [1, 2, 3] {
            let (tds, ops) = fixture(d);
            let p = tds.params();
            let (q, a) = (p.q(), p.a());
            let ai = a.inv().unwrap();
            let a2 = a.pow(2).unwrap();
            let ai2 = ai.pow(2).unwrap();
            let am = tds.a();
            let triples = [
                (
                    &am.scale(a) - &ops.k.scale(&a2),
                    ops.minv.clone(),
                    ops.k.clone(),
                ),
                (
                    &am.scale(&ai) - &ops.b.scale(&ai2),
                    ops.minv.clone(),
                    ops.b.clone(),
                ),
                (
                    ops.kinv.clone(),
                    ops.ninv.clone(),
                    &am.scale(&ai) - &ops.kinv.scale(&ai2),
                ),
                (
                    ops.binv.clone(),
                    ops.ninv.clone(),
                    &am.scale(a) - &ops.binv.scale(&a2),
                ),
                (
                    &(&ops.w * &ops.kinv) * &ops.winv,
                    ops.qinv.clone(),
                    &(&ops.winv * &ops.k) * &ops.w,
                ),
                (
                    &(&ops.w * &ops.binv) * &ops.winv,
                    ops.qinv.clone(),
                    &(&ops.winv * &ops.b) * &ops.w,
                ),
            ];
            for (x, y, z) in &triples {
                assert!(check_equitable_triple(x, y, z, q), "d = {d}");
            }
        }
    }

    #[test]
    fn modules_pass_at_all_diameters() {
        for d in [1, 2, 3] {
            let (tds, ops) = fixture(d);
            let one = module_one(&tds, &ops).unwrap();
            let two = module_two(&tds, &ops).unwrap();
            assert_eq!(one.t, tds.params().a().clone());
            assert_eq!(two.t, tds.params().a().inv().unwrap());
            assert_eq!(one.upsilon, ops.lambda);
            assert_eq!(two.upsilon, ops.lambda);
            // The two tables share x_23, x_30 (both are Q^-1 + W^{+-1} psi W^{-+1}).
            assert_eq!(one.gens["23"], two.gens["23"]);
            assert_eq!(one.gens["30"], two.gens["30"]);
        }
    }

    #[test]
    fn shift_symmetry_of_boxq_relations() {
        let (tds, ops) = fixture(1);
        let one = module_one(&tds, &ops).unwrap();
        // Relabel (i,j) -> (i+1,j+1); by Lemma 15.2 this is NOT a module map,
        // so just verify the relation set is shift-stable when it passes: the
        // shifted family of an arbitrary family passes iff a consistent
        // reindexing does. Here we check the positive direction on a family
        // where all generators commute: the identity family.
        let q = tds.params().q().clone();
        let mut idgens = BTreeMap::new();
        for label in LABELS {
            idgens.insert(label.to_string(), Matrix::identity(2));
        }
        let report = check_boxq(&idgens, &q).unwrap();
        assert!(report.all_pass());
        let mut shifted = BTreeMap::new();
        for i in 0..4usize {
            shifted.insert(label_of(i + 1, i + 2), idgens[&label_of(i, i + 1)].clone());
            shifted.insert(label_of(i + 1, i + 3), idgens[&label_of(i, i + 2)].clone());
        }
        let report = check_boxq(&shifted, &q).unwrap();
        assert!(report.all_pass());
        drop(one);
    }

    #[test]
    fn kappa_extraction_from_module_one() {
        let (tds, ops) = fixture(2);
        let one = module_one(&tds, &ops).unwrap();
        let q = tds.params().q();
        for i in 0..4usize {
            let x = &one.gens[&label_of(i + 2, i + 3)];
            let y = &one.gens[&label_of(i + 3, i + 1)];
            let yinv = &one.gens[&label_of(i + 1, i + 3)];
            let z = &one.gens[&label_of(i + 1, i + 2)];
            let (report, casimir) = check_uqsl2(x, y, yinv, z, q);
            assert!(report.all_pass(), "kappa_{i}:\n{}", report.to_text());
            assert_eq!(casimir, one.upsilon, "Upsilon_{i} mismatch");
        }
    }

    #[test]
    fn perturbed_generator_breaks_segregation() {
        let (tds, ops) = fixture(1);
        let one = module_one(&tds, &ops).unwrap();
        let mut gens = one.gens.clone();
        let x23 = &gens["23"] + &Matrix::identity(2);
        gens.insert("23".to_string(), x23);
        // A broken boxq precondition (Err) is also an acceptable outcome.
        if let Ok((report, _)) = check_segregated(&gens, &one.t, tds.params().q()) {
            assert!(report.fail_count() > 0);
        }
    }

    #[test]
    fn missing_label_is_an_error() {
        let q = Scalar::from_int(2);
        let gens: BTreeMap<String, Matrix> = BTreeMap::new();
        assert!(matches!(check_boxq(&gens, &q), Err(Error::MissingLabel(_))));
    }

    #[test]
    fn twocond_violation_is_an_error() {
        let q = Scalar::from_int(2);
        let i = Matrix::identity(2);
        // (x,y,z) = (I,I,I) is a valid equitable action, but w = 2I violates
        // Eq. (twocond) for t = 3.
        let w = i.scale(&Scalar::from_int(2));
        let t = Scalar::from_int(3);
        let err = assemble_from_assumption(&i, &i, &i, &i, &w, &t, &q);
        assert!(matches!(err, Err(Error::ModuleCheck(_))));
    }

    #[test]
    fn json_dump_shape() {
        let (tds, ops) = fixture(1);
        let one = module_one(&tds, &ops).unwrap();
        let value = one.to_json();
        let obj = value.as_object().unwrap();
        assert!(obj.contains_key("t"));
        assert!(obj.contains_key("upsilon"));
        for label in LABELS {
            assert!(obj.contains_key(label), "missing {label}");
        }
        assert_eq!(obj["t"], serde_json::json!("3"));
    }
}
