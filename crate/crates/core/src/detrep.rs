//! Symmetric determinantal representations of plane quintics and quartics.
//!
//! A 3x3 symmetric matrix of forms
//!
//! ```text
//! [ L11 L12 Q1 ]
//! [ L12 L22 Q2 ]
//! [ Q1  Q2  H  ]
//! ```
//!
//! with linear `L`, quadratic `Q` and cubic `H` has a quintic determinant.
//! The conic `L11 L22 - L12^2` meets it with even contact everywhere.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{determinant, rat, resultant, MultiPoly, UniPoly};

/// Plane coordinates.
pub const PLANE: [&str; 3] = ["x0", "x1", "x2"];
/// Coordinates of `P^4` containing the line `x0 = x1 = x2 = 0`.
pub const SPACE: [&str; 5] = ["u1", "u2", "x0", "x1", "x2"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymThetaData {
    pub l11: MultiPoly,
    pub l12: MultiPoly,
    pub l22: MultiPoly,
    pub q1: MultiPoly,
    pub q2: MultiPoly,
    pub h: MultiPoly,
}

const DATA_KEYS: [(&str, u32); 6] = [("L11", 1), ("L12", 1), ("L22", 1), ("Q1", 2), ("Q2", 2), ("H", 3)];

fn check_form(name: &str, p: &MultiPoly, d: u32) -> Result<()> {
    if p.vars() != PLANE {
        return Err(Error::VariableMismatch(
            PLANE.iter().map(|s| s.to_string()).collect(),
            p.vars().iter().map(|s| s.to_string()).collect(),
        ));
    }
    if !p.is_form_of_degree(d) {
        return Err(Error::Degree(format!("{name} must be a form of degree {d}, got {p}")));
    }
    Ok(())
}

impl SymThetaData {
    pub fn new(l11: MultiPoly, l12: MultiPoly, l22: MultiPoly, q1: MultiPoly, q2: MultiPoly, h: MultiPoly) -> Result<Self> {
        let data = SymThetaData { l11, l12, l22, q1, q2, h };
        for ((name, d), p) in DATA_KEYS.iter().zip(data.entries()) {
            check_form(name, p, *d)?;
        }
        Ok(data)
    }

    fn entries(&self) -> [&MultiPoly; 6] {
        [&self.l11, &self.l12, &self.l22, &self.q1, &self.q2, &self.h]
    }

    pub fn matrix(&self) -> [[MultiPoly; 3]; 3] {
        [
            [self.l11.clone(), self.l12.clone(), self.q1.clone()],
            [self.l12.clone(), self.l22.clone(), self.q2.clone()],
            [self.q1.clone(), self.q2.clone(), self.h.clone()],
        ]
    }

    /// Random data with integer coefficients in `-bound..=bound`.
    pub fn random<R: Rng>(rng: &mut R, bound: i64) -> Self {
        let f = |rng: &mut R, d| random_form(rng, d, bound);
        SymThetaData {
            l11: f(rng, 1),
            l12: f(rng, 1),
            l22: f(rng, 1),
            q1: f(rng, 2),
            q2: f(rng, 2),
            h: f(rng, 3),
        }
    }

    pub fn from_block(text: &str) -> Result<Self> {
        let block = parse_block(text, &DATA_KEYS.map(|(k, _)| k))?;
        let get = |k: &str| -> Result<MultiPoly> {
            block
                .get(k)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("missing key {k}")))
        };
        SymThetaData::new(get("L11")?, get("L12")?, get("L22")?, get("Q1")?, get("Q2")?, get("H")?)
    }
}

impl fmt::Display for SymThetaData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((name, _), p) in DATA_KEYS.iter().zip(self.entries()) {
            writeln!(f, "{name} = {p}")?;
        }
        Ok(())
    }
}

/// Reads `KEY = expression` lines over the plane coordinates. Keys outside
/// `allowed` and repeated keys are rejected; `#` starts a comment.
pub fn parse_block(text: &str, allowed: &[&str]) -> Result<BTreeMap<String, MultiPoly>> {
    let mut out = BTreeMap::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, expr) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected `KEY = expression`: {raw:?}")))?;
        let key = key.trim();
        if !allowed.contains(&key) {
            return Err(Error::Parse(format!("unknown key {key:?} (allowed: {})", allowed.join(", "))));
        }
        let p = MultiPoly::parse(expr, &PLANE)?;
        if out.insert(key.to_string(), p).is_some() {
            return Err(Error::Parse(format!("duplicate key {key}")));
        }
    }
    Ok(out)
}

pub fn random_form<R: Rng>(rng: &mut R, degree: u32, bound: i64) -> MultiPoly {
    let mut terms = Vec::new();
    for a in 0..=degree {
        for b in 0..=degree - a {
            terms.push((vec![a, b, degree - a - b], rat(rng.gen_range(-bound..=bound))));
        }
    }
    MultiPoly::from_terms(&PLANE, terms).expect("three exponents")
}

/// `det` of the symmetric matrix; a quintic form.
pub fn discriminant_quintic(data: &SymThetaData) -> Result<MultiPoly> {
    let m: Vec<Vec<MultiPoly>> = data.matrix().into_iter().map(|r| r.to_vec()).collect();
    let det = determinant(&m, &PLANE)?;
    if det.is_zero() {
        return Err(Error::Degenerate("determinant vanishes identically".into()));
    }
    debug_assert!(det.is_form_of_degree(5));
    Ok(det)
}

/// `sum u_i u_j L_ij + 2 sum u_i Q_i + H` in `u1, u2, x0, x1, x2`.
pub fn cubic_threefold(data: &SymThetaData) -> Result<MultiPoly> {
    let u1 = MultiPoly::var(&SPACE, "u1")?;
    let u2 = MultiPoly::var(&SPACE, "u2")?;
    let two = rat(2);
    let e = |p: &MultiPoly| p.embed(&SPACE);
    let out = u1
        .pow(2)
        .mul(&e(&data.l11)?)?
        .add(&u1.mul(&u2)?.mul(&e(&data.l12)?)?.scale(&two))?
        .add(&u2.pow(2).mul(&e(&data.l22)?)?)?
        .add(&u1.mul(&e(&data.q1)?)?.scale(&two))?
        .add(&u2.mul(&e(&data.q2)?)?.scale(&two))?
        .add(&e(&data.h)?)?;
    Ok(out)
}

/// Inverse of [`cubic_threefold`] on cubics containing the line.
pub fn extract_matrix(cubic: &MultiPoly) -> Result<SymThetaData> {
    if cubic.vars() != SPACE {
        return Err(Error::VariableMismatch(
            SPACE.iter().map(|s| s.to_string()).collect(),
            cubic.vars().iter().map(|s| s.to_string()).collect(),
        ));
    }
    if !cubic.is_form_of_degree(3) {
        return Err(Error::Degree(format!("expected a cubic form, got {cubic}")));
    }
    let mut parts: BTreeMap<(u32, u32), MultiPoly> = BTreeMap::new();
    for (e, c) in cubic.terms() {
        let key = (e[0], e[1]);
        if e[0] + e[1] == 3 {
            return Err(Error::Degree(format!(
                "cubic does not contain the line x0 = x1 = x2 = 0 (u-only monomial u1^{}*u2^{})",
                e[0], e[1]
            )));
        }
        let entry = parts.entry(key).or_insert_with(|| MultiPoly::zero(&PLANE));
        let mono = MultiPoly::from_terms(&PLANE, [(e[2..].to_vec(), c.clone())])?;
        *entry = entry.add(&mono)?;
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let get = |k: (u32, u32)| parts.get(&k).cloned().unwrap_or_else(|| MultiPoly::zero(&PLANE));
    SymThetaData::new(
        get((2, 0)),
        get((1, 1)).scale(&half),
        get((0, 2)),
        get((1, 0)).scale(&half),
        get((0, 1)).scale(&half),
        get((0, 0)),
    )
}

/// The conic `L11 L22 - L12^2`.
pub fn contact_conic(data: &SymThetaData) -> Result<MultiPoly> {
    let t = data.l11.mul(&data.l22)?.sub(&data.l12.pow(2))?;
    if t.is_zero() {
        return Err(Error::Degenerate("contact conic L11*L22 - L12^2 vanishes identically".into()));
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    TotallyTangent,
    Not,
    CommonComponent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::TotallyTangent => "TotallyTangent",
            Verdict::Not => "Not",
            Verdict::CommonComponent => "CommonComponent",
        })
    }
}

#[derive(Clone, Debug)]
pub struct TangencyReport {
    pub verdict: Verdict,
    /// Shear `x0 -> x0 + s0*x2`, `x1 -> x1 + s1*x2` applied before
    /// eliminating `x2`.
    pub shear: [i64; 2],
    /// `Res_x2` of the sheared forms, a binary form in `x0, x1`.
    pub resultant: MultiPoly,
    /// `(multiplicity, degree)` of the square-free parts of the resultant,
    /// the point `x0 = 0` counted as a degree-one part.
    pub multiplicities: Vec<(usize, usize)>,
}

const SHEAR_ATTEMPTS: usize = 1000;

/// Decides whether the conic `t` meets the curve `f` with even contact at
/// every point. The shear is drawn from `seed`.
pub fn total_tangency_check(f: &MultiPoly, t: &MultiPoly, seed: u64) -> Result<TangencyReport> {
    check_form("F", f, 5)?;
    check_form("T", t, 2)?;
    if f.is_zero() || t.is_zero() {
        return Err(Error::Degenerate("zero polynomial in tangency check".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shear = (0..SHEAR_ATTEMPTS)
        .map(|i| if i == 0 { [0, 0] } else { [rng.gen_range(-5..=5), rng.gen_range(-5..=5)] })
        .find(|&[a, b]| {
            let at = [rat(a), rat(b), rat(1)];
            !f.eval(&at).unwrap().is_zero() && !t.eval(&at).unwrap().is_zero()
        })
        .ok_or_else(|| Error::Degenerate("no admissible shear found".into()))?;
    let images = shear_images(shear)?;
    let fs = f.substitute(&images)?;
    let ts = t.substitute(&images)?;
    let r = resultant(&fs, &ts, "x2")?;
    if r.is_zero() {
        return Ok(TangencyReport {
            verdict: Verdict::CommonComponent,
            shear,
            resultant: r,
            multiplicities: Vec::new(),
        });
    }
    let total = r.degree().unwrap_or(0) as usize;
    let dehom = dehomogenize(&r);
    let mut multiplicities: Vec<(usize, usize)> = dehom
        .squarefree_decomposition()
        .iter()
        .map(|(m, a)| (*m, a.degree().unwrap_or(0)))
        .collect();
    let at_infinity = total - dehom.degree().unwrap_or(0);
    if at_infinity > 0 {
        multiplicities.push((at_infinity, 1));
        multiplicities.sort();
    }
    let verdict = if multiplicities.iter().all(|(m, _)| m % 2 == 0) {
        Verdict::TotallyTangent
    } else {
        Verdict::Not
    };
    Ok(TangencyReport {
        verdict,
        shear,
        resultant: r,
        multiplicities,
    })
}

fn shear_images(shear: [i64; 2]) -> Result<[MultiPoly; 3]> {
    let x = |n| MultiPoly::var(&PLANE, n);
    Ok([
        x("x0")?.add(&x("x2")?.scale(&rat(shear[0])))?,
        x("x1")?.add(&x("x2")?.scale(&rat(shear[1])))?,
        x("x2")?,
    ])
}

/// `R(1, t)` for a binary form `R(x0, x1)`.
fn dehomogenize(r: &MultiPoly) -> UniPoly {
    let deg = r.degree().unwrap_or(0) as usize;
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (e, c) in r.terms() {
        coeffs[e[1] as usize] += c;
    }
    UniPoly::new(coeffs)
}

/// Plane quartic `Lf*H - Q^2` together with its bitangent `Lf`.
#[derive(Clone, Debug)]
pub struct QuarticWithBitangent {
    pub quartic: MultiPoly,
    pub bitangent: MultiPoly,
    /// `(F + Q^2) / Lf`, which exists exactly when `Lf` meets `F` evenly.
    pub cofactor: MultiPoly,
}

pub fn quartic_from_odd_theta(lf: &MultiPoly, q: &MultiPoly, h: &MultiPoly) -> Result<QuarticWithBitangent> {
    check_form("L", lf, 1)?;
    check_form("Q", q, 2)?;
    check_form("H", h, 3)?;
    if lf.is_zero() {
        return Err(Error::Degenerate("linear form is zero".into()));
    }
    let quartic = lf.mul(h)?.sub(&q.pow(2))?;
    if quartic.is_zero() {
        return Err(Error::Degenerate("quartic L*H - Q^2 vanishes identically".into()));
    }
    let cofactor = quartic.add(&q.pow(2))?.div_exact(lf)?;
    Ok(QuarticWithBitangent {
        quartic,
        bitangent: lf.clone(),
        cofactor,
    })
}
