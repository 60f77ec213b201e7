//! ADE degenerations of Del Pezzo surfaces.
//!
//! A configuration of effective `-2` classes spans a negative definite
//! sublattice `N`. Lines, blow-down systems, bitangents, double sixes and
//! even theta characteristics of the degenerate surface are the classes of
//! the smooth surface taken modulo `N`; the multiplicity of a point is the
//! number of smooth classes that collapse onto it.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{ClassKind, DivisorClass, PicardLattice};
use crate::theta_f2::{even_theta_of_blowdown, EvenSubsetClass};

#[derive(Clone, Debug)]
pub struct NodalConfig {
    lattice: PicardLattice,
    roots: Vec<DivisorClass>,
    dynkin: String,
    solver: SpanSolver,
}

impl NodalConfig {
    /// Validates the configuration: every member is a root, distinct members
    /// meet in 0 or 1, and the span is negative definite.
    pub fn new(lattice: PicardLattice, mut roots: Vec<DivisorClass>) -> Result<Self> {
        for r in &roots {
            lattice.check(r)?;
            if lattice.kind_of(r) != Some(ClassKind::Root) {
                return Err(Error::InvalidConfig(format!("{r} is not a root")));
            }
        }
        roots.sort();
        for (i, a) in roots.iter().enumerate() {
            for b in &roots[i + 1..] {
                let p = lattice.pair_unchecked(a, b);
                if p != 0 && p != 1 {
                    return Err(Error::InvalidConfig(format!(
                        "{a} . {b} = {p}, expected 0 or 1"
                    )));
                }
            }
        }
        let gram: Vec<Vec<i64>> = roots
            .iter()
            .map(|a| roots.iter().map(|b| lattice.pair_unchecked(a, b)).collect())
            .collect();
        if !negative_definite(&gram) {
            return Err(Error::InvalidConfig("span of the roots is not negative definite".into()));
        }
        let dynkin = dynkin_type(&gram)?;
        let solver = SpanSolver::new(&gram);
        Ok(NodalConfig {
            lattice,
            roots,
            dynkin,
            solver,
        })
    }

    pub fn lattice(&self) -> &PicardLattice {
        &self.lattice
    }

    pub fn roots(&self) -> &[DivisorClass] {
        &self.roots
    }

    /// Dynkin type such as `A1`, `A1+A2`, `E7`, or `trivial`.
    pub fn dynkin(&self) -> &str {
        &self.dynkin
    }

    /// Whether `x - y` lies in the integer span of the roots.
    pub fn congruent(&self, x: &DivisorClass, y: &DivisorClass) -> bool {
        let v = x.sub(y);
        if v.is_zero() {
            return true;
        }
        if self.roots.is_empty() {
            return false;
        }
        let rhs: Vec<i64> = self
            .roots
            .iter()
            .map(|a| self.lattice.pair_unchecked(a, &v))
            .collect();
        let Some(coeffs) = self.solver.solve_integral(&rhs) else {
            return false;
        };
        let mut span = DivisorClass::new(vec![0; self.lattice.rank()]);
        for (c, a) in coeffs.iter().zip(&self.roots) {
            if *c != 0 {
                span = span.add(&a.scale(*c));
            }
        }
        span == v
    }
}

/// Validates a configuration and returns its Dynkin type.
pub fn validate_config(lattice: PicardLattice, roots: Vec<DivisorClass>) -> Result<String> {
    Ok(NodalConfig::new(lattice, roots)?.dynkin)
}

/// Exact solver for `G c = b` with `G` the Gram matrix of the roots.
#[derive(Clone, Debug)]
struct SpanSolver {
    inverse: Vec<Vec<Rational64>>,
}

impl SpanSolver {
    fn new(gram: &[Vec<i64>]) -> Self {
        let n = gram.len();
        let mut a: Vec<Vec<Rational64>> = gram
            .iter()
            .map(|row| row.iter().map(|&x| Rational64::from_integer(x)).collect())
            .collect();
        let mut inv: Vec<Vec<Rational64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational64::one() } else { Rational64::zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .expect("definite Gram matrix is invertible");
            a.swap(col, p);
            inv.swap(col, p);
            let f = a[col][col].recip();
            for j in 0..n {
                a[col][j] *= f;
                inv[col][j] *= f;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let g = a[r][col];
                    for j in 0..n {
                        let (x, y) = (a[col][j] * g, inv[col][j] * g);
                        a[r][j] -= x;
                        inv[r][j] -= y;
                    }
                }
            }
        }
        SpanSolver { inverse: inv }
    }

    fn solve_integral(&self, rhs: &[i64]) -> Option<Vec<i64>> {
        self.inverse
            .iter()
            .map(|row| {
                let v: Rational64 = row
                    .iter()
                    .zip(rhs)
                    .map(|(a, &b)| a * Rational64::from_integer(b))
                    .sum();
                v.is_integer().then(|| v.to_integer())
            })
            .collect()
    }
}

fn negative_definite(gram: &[Vec<i64>]) -> bool {
    // Sylvester: leading principal minors of -G are positive.
    (1..=gram.len()).all(|k| {
        let minor: Vec<Vec<Rational64>> = gram[..k]
            .iter()
            .map(|row| row[..k].iter().map(|&x| Rational64::from_integer(-x)).collect())
            .collect();
        determinant(minor) > Rational64::zero()
    })
}

fn determinant(mut a: Vec<Vec<Rational64>>) -> Rational64 {
    let n = a.len();
    let mut det = Rational64::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational64::zero();
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        det *= a[col][col];
        for r in (col + 1)..n {
            let f = a[r][col] / a[col][col];
            for j in col..n {
                let v = a[col][j] * f;
                a[r][j] -= v;
            }
        }
    }
    det
}

fn dynkin_type(gram: &[Vec<i64>]) -> Result<String> {
    let n = gram.len();
    if n == 0 {
        return Ok("trivial".to_string());
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && gram[i][j] == 1).collect())
        .collect();
    let mut seen = vec![false; n];
    let mut parts: Vec<(char, usize)> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            for &j in &adj[comp[k]] {
                if !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        parts.push(classify_component(&comp, &adj)?);
    }
    parts.sort();
    Ok(parts
        .iter()
        .map(|(c, r)| format!("{c}{r}"))
        .collect::<Vec<_>>()
        .join("+"))
}

fn classify_component(comp: &[usize], adj: &[Vec<usize>]) -> Result<(char, usize)> {
    let size = comp.len();
    let edges: usize = comp.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    let non_ade = || Error::InvalidConfig("root configuration is not of type A, D or E".into());
    if edges + 1 != size {
        return Err(non_ade());
    }
    let branch: Vec<usize> = comp.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Ok(('A', size)),
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b].iter().map(|&s| arm_length(*b, s, adj)).collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, k] => Ok(('D', k + 3)),
                [1, 2, 2] => Ok(('E', 6)),
                [1, 2, 3] => Ok(('E', 7)),
                [1, 2, 4] => Ok(('E', 8)),
                _ => Err(non_ade()),
            }
        }
        _ => Err(non_ade()),
    }
}

fn arm_length(from: usize, start: usize, adj: &[Vec<usize>]) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    while let Some(&next) = adj[cur].iter().find(|&&n| n != prev) {
        prev = cur;
        cur = next;
        len += 1;
    }
    len
}

/// A congruence class modulo `N`; `representative` is its lexicographic minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruencePart {
    pub representative: DivisorClass,
    pub members: Vec<DivisorClass>,
}

/// Partitions classes of one kind into congruence classes modulo `N`,
/// sorted by representative.
pub fn congruence_classes(cfg: &NodalConfig, classes: &[DivisorClass]) -> Result<Vec<CongruencePart>> {
    let lat = cfg.lattice();
    let mut kind = None;
    for c in classes {
        lat.check(c)?;
        let k = lat.kind_of(c);
        if kind.is_some() && kind != Some(k) {
            return Err(Error::MixedKinds);
        }
        kind = Some(k);
    }
    let mut sorted = classes.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut parent: Vec<usize> = (0..sorted.len()).collect();
    for i in 0..sorted.len() {
        for j in (i + 1)..sorted.len() {
            if find(&mut parent, i) != find(&mut parent, j) && cfg.congruent(&sorted[i], &sorted[j]) {
                union(&mut parent, i, j);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<DivisorClass>> = BTreeMap::new();
    for (i, c) in sorted.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(c.clone());
    }
    let mut parts: Vec<CongruencePart> = groups
        .into_values()
        .map(|members| CongruencePart {
            representative: members[0].clone(),
            members,
        })
        .collect();
    parts.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(parts)
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// What a point of a multiplicity scheme stands for.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Representative {
    Class(DivisorClass),
    /// Two congruence classes exchanged by an involution.
    Pair(DivisorClass, DivisorClass),
    /// Even theta characteristics collapsed together.
    Thetas(Vec<EvenSubsetClass>),
}

impl fmt::Display for Representative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Representative::Class(c) => write!(f, "{c}"),
            Representative::Pair(a, b) => write!(f, "{a} | {b}"),
            Representative::Thetas(ts) => {
                let parts: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemePoint {
    pub representative: Representative,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityScheme {
    pub points: Vec<SchemePoint>,
}

impl MultiplicityScheme {
    fn from_points(mut points: Vec<SchemePoint>) -> Self {
        points.sort_by(|a, b| a.representative.cmp(&b.representative));
        MultiplicityScheme { points }
    }

    pub fn total(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    /// `multiplicity -> number of points`.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for p in &self.points {
            *h.entry(p.multiplicity).or_insert(0) += 1;
        }
        h
    }
}

fn partition_scheme(parts: &[CongruencePart]) -> MultiplicityScheme {
    MultiplicityScheme::from_points(
        parts
            .iter()
            .map(|p| SchemePoint {
                representative: Representative::Class(p.representative.clone()),
                multiplicity: p.members.len(),
            })
            .collect(),
    )
}

/// Quotient of a congruence partition by an involution of the lattice that
/// maps `N`-cosets to `N`-cosets. An orbit `{P, P'}` counts `(|P| + |P'|)/2`.
fn quotient_scheme<F>(parts: &[CongruencePart], involution: F) -> Result<MultiplicityScheme>
where
    F: Fn(&DivisorClass) -> Result<DivisorClass>,
{
    let index_of = |c: &DivisorClass| parts.iter().position(|p| p.members.contains(c));
    let mut done = vec![false; parts.len()];
    let mut points = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        if done[i] {
            continue;
        }
        let image = involution(&part.representative)?;
        let j = index_of(&image)
            .ok_or_else(|| Error::InvalidConfig(format!("involution image {image} left the class list")))?;
        for m in &part.members {
            let mj = involution(m)?;
            if !parts[j].members.contains(&mj) {
                return Err(Error::InvalidConfig(
                    "involution does not preserve congruence classes".into(),
                ));
            }
        }
        done[i] = true;
        done[j] = true;
        let representative = if i == j {
            Representative::Class(part.representative.clone())
        } else {
            let (a, b) = (&part.representative, &parts[j].representative);
            Representative::Pair(a.min(b).clone(), a.max(b).clone())
        };
        let size = part.members.len() + if i == j { 0 } else { parts[j].members.len() };
        points.push(SchemePoint {
            representative,
            multiplicity: size / 2,
        });
    }
    Ok(MultiplicityScheme::from_points(points))
}

fn require_degree(cfg: &NodalConfig, degree: u32) -> Result<()> {
    if cfg.lattice().degree() != degree {
        return Err(Error::WrongDegree {
            expected: degree,
            got: cfg.lattice().degree(),
        });
    }
    Ok(())
}

pub fn line_scheme(cfg: &NodalConfig) -> Result<MultiplicityScheme> {
    let lines = cfg.lattice().enumerate_classes(ClassKind::Exceptional);
    Ok(partition_scheme(&congruence_classes(cfg, &lines)?))
}

pub fn blowdown_scheme(cfg: &NodalConfig) -> Result<MultiplicityScheme> {
    let bds = cfg.lattice().enumerate_classes(ClassKind::BlowDown);
    Ok(partition_scheme(&congruence_classes(cfg, &bds)?))
}

/// Lines modulo the Geiser involution (degree 2).
pub fn bitangent_scheme(cfg: &NodalConfig) -> Result<MultiplicityScheme> {
    require_degree(cfg, 2)?;
    let lat = *cfg.lattice();
    let parts = congruence_classes(cfg, &lat.enumerate_classes(ClassKind::Exceptional))?;
    quotient_scheme(&parts, |x| lat.geiser(x))
}

/// Blow-down systems modulo the Geiser involution (degree 2): Aronhold sets.
pub fn aronhold_scheme(cfg: &NodalConfig) -> Result<MultiplicityScheme> {
    require_degree(cfg, 2)?;
    let lat = *cfg.lattice();
    let parts = congruence_classes(cfg, &lat.enumerate_classes(ClassKind::BlowDown))?;
    quotient_scheme(&parts, |x| lat.geiser(x))
}

/// Blow-down systems modulo the double-six involution (degree 3).
pub fn double_six_scheme(cfg: &NodalConfig) -> Result<MultiplicityScheme> {
    require_degree(cfg, 3)?;
    let lat = *cfg.lattice();
    let parts = congruence_classes(cfg, &lat.enumerate_classes(ClassKind::BlowDown))?;
    quotient_scheme(&parts, |x| lat.double_six_partner(x))
}

/// Even theta characteristics (degree 2): two characteristics merge when some
/// blow-down class labelled by one is congruent to a class labelled by the other.
pub fn even_theta_scheme(cfg: &NodalConfig) -> Result<MultiplicityScheme> {
    require_degree(cfg, 2)?;
    let lat = cfg.lattice();
    let bds = lat.enumerate_classes(ClassKind::BlowDown);
    let labels: Vec<EvenSubsetClass> = EvenSubsetClass::even();
    let label_index = |t: EvenSubsetClass| labels.iter().position(|&l| l == t).expect("even class");
    let mut label_of = BTreeMap::new();
    for b in &bds {
        label_of.insert(b.clone(), label_index(even_theta_of_blowdown(lat, b)?));
    }
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    for part in congruence_classes(cfg, &bds)? {
        let first = label_of[&part.members[0]];
        for m in &part.members[1..] {
            union(&mut parent, first, label_of[m]);
        }
    }
    let mut merged: BTreeMap<usize, Vec<EvenSubsetClass>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        merged.entry(find(&mut parent, i)).or_default().push(l);
    }
    Ok(MultiplicityScheme::from_points(
        merged
            .into_values()
            .map(|mut ts| {
                ts.sort();
                SchemePoint {
                    multiplicity: ts.len(),
                    representative: Representative::Thetas(ts),
                }
            })
            .collect(),
    ))
}

/// The ten families of degree 2 blow-down classes, keyed by
/// `(L-coefficient, sorted E-coefficients)`.
pub const BLOWDOWN_FAMILIES: [(&str, i64, [i64; 7]); 10] = [
    ("L", 1, [0, 0, 0, 0, 0, 0, 0]),
    ("2L-Em-En-Ep", 2, [-1, -1, -1, 0, 0, 0, 0]),
    ("3L-sum(E)+Ei+Ej-Ek", 3, [-2, -1, -1, -1, -1, 0, 0]),
    ("4L-sum(E)+Ei-Em-En-Ep", 4, [-2, -2, -2, -1, -1, -1, 0]),
    ("5L-2sum(E)+2Ei", 5, [-2, -2, -2, -2, -2, -2, 0]),
    ("8L-3sum(E)", 8, [-3, -3, -3, -3, -3, -3, -3]),
    ("7L-3sum(E)+Em+En+Ep", 7, [-3, -3, -3, -3, -2, -2, -2]),
    ("6L-2sum(E)-Ei-Ej+Ek", 6, [-3, -3, -2, -2, -2, -2, -1]),
    ("5L-sum(E)-2Ei-Ej-Ek-El", 5, [-3, -2, -2, -2, -1, -1, -1]),
    ("4L-sum(E)-2Ei", 4, [-3, -1, -1, -1, -1, -1, -1]),
];

/// Index into [`BLOWDOWN_FAMILIES`] of a degree 2 blow-down class.
pub fn blowdown_family(class: &DivisorClass) -> Option<usize> {
    let mut sig = class.coeffs().get(1..)?.to_vec();
    sig.sort();
    BLOWDOWN_FAMILIES
        .iter()
        .position(|(_, a, s)| *a == class.degree() && s.as_slice() == sig.as_slice())
}

/// Frequencies of `D.F` for `D.F = 2, 1, 0, -1, -2`, per family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionProfile {
    pub rows: Vec<(&'static str, [usize; 5])>,
}

impl IntersectionProfile {
    pub fn totals(&self) -> [usize; 5] {
        let mut t = [0; 5];
        for (_, row) in &self.rows {
            for (acc, v) in t.iter_mut().zip(row) {
                *acc += v;
            }
        }
        t
    }
}

pub fn intersection_profile(cfg: &NodalConfig) -> Result<IntersectionProfile> {
    require_degree(cfg, 2)?;
    let [root] = cfg.roots() else {
        return Err(Error::InvalidConfig(
            "intersection profile needs exactly one root".into(),
        ));
    };
    let lat = cfg.lattice();
    let mut rows: Vec<(&'static str, [usize; 5])> =
        BLOWDOWN_FAMILIES.iter().map(|(name, _, _)| (*name, [0; 5])).collect();
    for b in lat.enumerate_classes(ClassKind::BlowDown) {
        let fam = blowdown_family(&b).expect("every blow-down class lies in a family");
        let m = lat.pair_unchecked(&b, root);
        if !(-2..=2).contains(&m) {
            return Err(Error::InvalidConfig(format!("{b} . {root} = {m} out of range")));
        }
        rows[fam].1[(2 - m) as usize] += 1;
    }
    Ok(IntersectionProfile { rows })
}
