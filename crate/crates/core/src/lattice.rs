//! Picard lattices of Del Pezzo surfaces of degree 2 and 3.
//!
//! Classes are written in the basis `(L, E_1, ..., E_n)` with `n = 9 - d`,
//! where `L` is the pull-back of a line and `E_i` are the exceptional curves
//! of the blown-up points. The intersection form is `diag(1, -1, ..., -1)`
//! and the canonical class is `K = -3L + sum E_i`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Integer coefficient vector `[a, b_1, ..., b_n]` standing for `aL + sum b_i E_i`.
///
/// The derived ordering is lexicographic on the coefficient vector, which is
/// the canonical order of every class list in this crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass(Vec<i64>);

impl DivisorClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        DivisorClass(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Coefficient of `L`.
    pub fn degree(&self) -> i64 {
        self.0[0]
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> DivisorClass {
        self.scale(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for DivisorClass {
    type Err = Error;

    /// Accepts `[1, -1, 0]` as well as bare whitespace/comma separated integers.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coeffs = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad class coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse(format!("empty divisor class {s:?}")));
        }
        Ok(DivisorClass(coeffs))
    }
}

/// The three families of classes singled out by their numerical invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    /// `D.D = -1`, `D.K = -1`: lines.
    Exceptional,
    /// `D.D = -2`, `D.K = 0`.
    Root,
    /// `D.D = 1`, `D.K = -3`: linear systems contracting the surface to the plane.
    BlowDown,
}

impl ClassKind {
    /// `(self-intersection, intersection with K)`.
    pub fn invariants(self) -> (i64, i64) {
        match self {
            ClassKind::Exceptional => (-1, -1),
            ClassKind::Root => (-2, 0),
            ClassKind::BlowDown => (1, -3),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassKind::Exceptional => "exceptional",
            ClassKind::Root => "root",
            ClassKind::BlowDown => "blowdown",
        }
    }
}

impl FromStr for ClassKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exceptional" | "lines" | "line" => Ok(ClassKind::Exceptional),
            "root" | "roots" => Ok(ClassKind::Root),
            "blowdown" | "blowdowns" | "blow-down" => Ok(ClassKind::BlowDown),
            other => Err(Error::Parse(format!("unknown class kind {other:?}"))),
        }
    }
}

/// Picard lattice of a Del Pezzo surface of degree 2 or 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PicardLattice {
    degree: u32,
}

impl PicardLattice {
    pub fn new(degree: u32) -> Result<Self> {
        match degree {
            2 | 3 => Ok(PicardLattice { degree }),
            d => Err(Error::UnsupportedDegree(d)),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of blown-up points, `9 - d`.
    pub fn points(&self) -> usize {
        9 - self.degree as usize
    }

    pub fn rank(&self) -> usize {
        10 - self.degree as usize
    }

    /// Diagonal of the Gram matrix.
    pub fn gram_diagonal(&self) -> Vec<i64> {
        let mut g = vec![-1; self.rank()];
        g[0] = 1;
        g
    }

    pub fn canonical(&self) -> DivisorClass {
        let mut k = vec![1; self.rank()];
        k[0] = -3;
        DivisorClass(k)
    }

    pub fn check(&self, x: &DivisorClass) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: x.rank(),
            });
        }
        Ok(())
    }

    /// Intersection pairing `a.b`.
    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.pair_unchecked(a, b))
    }

    pub(crate) fn pair_unchecked(&self, a: &DivisorClass, b: &DivisorClass) -> i64 {
        let (a, b) = (&a.0, &b.0);
        a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<i64>()
    }

    pub fn self_intersection(&self, a: &DivisorClass) -> i64 {
        self.pair_unchecked(a, a)
    }

    pub fn canonical_degree(&self, a: &DivisorClass) -> i64 {
        self.pair_unchecked(a, &self.canonical())
    }

    pub fn kind_of(&self, x: &DivisorClass) -> Option<ClassKind> {
        if x.rank() != self.rank() {
            return None;
        }
        let inv = (self.self_intersection(x), self.canonical_degree(x));
        [ClassKind::Exceptional, ClassKind::Root, ClassKind::BlowDown]
            .into_iter()
            .find(|k| k.invariants() == inv)
    }

    fn basis(&self, idx: usize) -> DivisorClass {
        let mut v = vec![0; self.rank()];
        v[idx] = 1;
        DivisorClass(v)
    }

    /// The class `L`.
    pub fn line(&self) -> DivisorClass {
        self.basis(0)
    }

    /// `E_i`, 1-based.
    pub fn exceptional(&self, i: usize) -> DivisorClass {
        assert!((1..=self.points()).contains(&i), "point index out of range");
        self.basis(i)
    }

    fn sum_e(&self) -> DivisorClass {
        let mut v = vec![1; self.rank()];
        v[0] = 0;
        DivisorClass(v)
    }

    /// `L_{i,j} = L - E_i - E_j`, the line through two of the points.
    pub fn line_through(&self, i: usize, j: usize) -> DivisorClass {
        assert_ne!(i, j);
        self.line()
            .sub(&self.exceptional(i))
            .sub(&self.exceptional(j))
    }

    /// Degree 3: `C_i = 2L - sum E_t + E_i`.
    pub fn conic_missing(&self, i: usize) -> DivisorClass {
        assert_eq!(self.degree, 3);
        self.line()
            .scale(2)
            .sub(&self.sum_e())
            .add(&self.exceptional(i))
    }

    /// Degree 2: `C_{i,j} = 2L - sum E_t + E_i + E_j`.
    pub fn conic_missing_pair(&self, i: usize, j: usize) -> DivisorClass {
        assert_eq!(self.degree, 2);
        assert_ne!(i, j);
        self.line()
            .scale(2)
            .sub(&self.sum_e())
            .add(&self.exceptional(i))
            .add(&self.exceptional(j))
    }

    /// Degree 2: `D_i = 3L - sum_{t != i} E_t - 2E_i`, the cubic singular at `P_i`.
    pub fn cubic_double_at(&self, i: usize) -> DivisorClass {
        assert_eq!(self.degree, 2);
        self.line()
            .scale(3)
            .sub(&self.sum_e())
            .sub(&self.exceptional(i))
    }

    /// All classes of the given kind, sorted lexicographically.
    ///
    /// The orthogonal complement of `K` is negative definite, so with `D.K`
    /// fixed Cauchy-Schwarz bounds the `L`-coefficient:
    /// `(3a + k)^2 <= n (a^2 - s)`, i.e. `d a^2 + 6ka + k^2 + ns <= 0`.
    pub fn enumerate_classes(&self, kind: ClassKind) -> Vec<DivisorClass> {
        let (s, k) = kind.invariants();
        let n = self.points() as i64;
        let d = self.degree as i64;
        let feasible = |a: i64| d * a * a + 6 * k * a + k * k + n * s <= 0;
        let disc = (36 * k * k - 4 * d * (k * k + n * s)) as f64;
        let mut out = Vec::new();
        if disc < 0.0 {
            return out;
        }
        let lo = ((-6 * k) as f64 - disc.sqrt()) / (2 * d) as f64;
        let hi = ((-6 * k) as f64 + disc.sqrt()) / (2 * d) as f64;
        for a in (lo.floor() as i64 - 1)..=(hi.ceil() as i64 + 1) {
            if !feasible(a) {
                continue;
            }
            let sum_sq = a * a - s;
            if sum_sq < 0 {
                continue;
            }
            // D.K = -3a - sum b  =>  sum b = -3a - k
            let sum = -3 * a - k;
            let mut coeffs = vec![0; self.rank()];
            coeffs[0] = a;
            fill_coefficients(&mut coeffs, 1, sum, sum_sq, &mut out);
        }
        out.sort();
        out
    }

    /// Simple roots `L - E_1 - E_2 - E_3, E_1 - E_2, ..., E_{n-1} - E_n`.
    pub fn simple_roots(&self) -> Vec<DivisorClass> {
        let mut roots = vec![self
            .line()
            .sub(&self.exceptional(1))
            .sub(&self.exceptional(2))
            .sub(&self.exceptional(3))];
        for i in 1..self.points() {
            roots.push(self.exceptional(i).sub(&self.exceptional(i + 1)));
        }
        roots
    }

    /// Reflection in a root: `x + (x.r) r`.
    pub fn reflect(&self, root: &DivisorClass, x: &DivisorClass) -> Result<DivisorClass> {
        self.check(root)?;
        self.check(x)?;
        if self.kind_of(root) != Some(ClassKind::Root) {
            return Err(Error::NotARoot(root.to_string()));
        }
        Ok(self.reflect_unchecked(root, x))
    }

    pub(crate) fn reflect_unchecked(&self, root: &DivisorClass, x: &DivisorClass) -> DivisorClass {
        let c = self.pair_unchecked(x, root);
        if c == 0 {
            x.clone()
        } else {
            x.add(&root.scale(c))
        }
    }

    /// Orbit of `seed` under the Weyl group generated by the simple reflections.
    pub fn weyl_orbit(&self, seed: &DivisorClass) -> Result<BTreeSet<DivisorClass>> {
        self.check(seed)?;
        Ok(orbit_under(self, &self.simple_roots(), seed))
    }

    /// Order of the Weyl group, by orbit-stabilizer along a parabolic chain.
    pub fn weyl_order(&self) -> u64 {
        parabolic_order(self, &self.simple_roots())
    }

    /// Geiser involution `x -> -x + (x.K) K` (degree 2 only).
    pub fn geiser(&self, x: &DivisorClass) -> Result<DivisorClass> {
        if self.degree != 2 {
            return Err(Error::WrongDegree {
                expected: 2,
                got: self.degree,
            });
        }
        self.check(x)?;
        let k = self.canonical();
        Ok(x.neg().add(&k.scale(self.pair_unchecked(x, &k))))
    }

    /// Partner of a blow-down class in its double six: `-2K - x` (degree 3 only).
    pub fn double_six_partner(&self, x: &DivisorClass) -> Result<DivisorClass> {
        if self.degree != 3 {
            return Err(Error::WrongDegree {
                expected: 3,
                got: self.degree,
            });
        }
        self.check(x)?;
        if self.kind_of(x) != Some(ClassKind::BlowDown) {
            return Err(Error::NotABlowDown(x.to_string()));
        }
        Ok(self.canonical().scale(-2).sub(x))
    }

    /// Exceptional classes orthogonal to `x`; for a blow-down class these are
    /// the curves it contracts.
    pub fn contracted_lines(&self, x: &DivisorClass) -> Vec<DivisorClass> {
        self.enumerate_classes(ClassKind::Exceptional)
            .into_iter()
            .filter(|e| self.pair_unchecked(e, x) == 0)
            .collect()
    }
}

fn fill_coefficients(
    coeffs: &mut Vec<i64>,
    idx: usize,
    sum: i64,
    sum_sq: i64,
    out: &mut Vec<DivisorClass>,
) {
    let remaining = (coeffs.len() - idx) as i64;
    if remaining == 0 {
        if sum == 0 && sum_sq == 0 {
            out.push(DivisorClass(coeffs.clone()));
        }
        return;
    }
    if sum_sq < 0 || sum * sum > remaining * sum_sq {
        return;
    }
    let bound = (sum_sq as f64).sqrt().floor() as i64;
    for b in -bound..=bound {
        coeffs[idx] = b;
        fill_coefficients(coeffs, idx + 1, sum - b, sum_sq - b * b, out);
    }
    coeffs[idx] = 0;
}

fn orbit_under(
    lat: &PicardLattice,
    gens: &[DivisorClass],
    seed: &DivisorClass,
) -> BTreeSet<DivisorClass> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(seed.clone());
    queue.push_back(seed.clone());
    while let Some(x) = queue.pop_front() {
        for r in gens {
            let y = lat.reflect_unchecked(r, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// `|W(S)| = |W(S) . w| * |W(S \ {a})|` where `w` pairs to zero with every
/// root of `S` except the last one `a`; such a vector lies on the closure of a
/// chamber, so its stabilizer is the parabolic subgroup `W(S \ {a})`.
fn parabolic_order(lat: &PicardLattice, roots: &[DivisorClass]) -> u64 {
    let Some((last, rest)) = roots.split_last() else {
        return 1;
    };
    let weight = dual_vector(lat, rest, last);
    let orbit = orbit_under(lat, roots, &weight);
    orbit.len() as u64 * parabolic_order(lat, rest)
}

/// Integral vector `w` with `w.b = 0` for `b` in `zero` and `w.target != 0`.
fn dual_vector(lat: &PicardLattice, zero: &[DivisorClass], target: &DivisorClass) -> DivisorClass {
    let n = lat.rank();
    let gram = lat.gram_diagonal();
    // rows: G b, so that row . w = b . w
    let mut rows: Vec<Vec<Rational64>> = zero
        .iter()
        .chain(std::iter::once(target))
        .map(|b| {
            b.0.iter()
                .zip(&gram)
                .map(|(c, g)| Rational64::from_integer(c * g))
                .collect()
        })
        .collect();
    let mut rhs: Vec<Rational64> = vec![Rational64::zero(); zero.len()];
    rhs.push(Rational64::one());

    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = rows[r][col].recip();
        for c in 0..n {
            rows[r][c] *= inv;
        }
        rhs[r] *= inv;
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col];
                for c in 0..n {
                    let v = rows[r][c] * f;
                    rows[i][c] -= v;
                }
                let v = rhs[r] * f;
                rhs[i] -= v;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let mut w = vec![Rational64::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        w[col] = rhs[i];
    }
    let denom = w.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    DivisorClass(
        w.iter()
            .map(|x| (x * Rational64::from_integer(denom)).to_integer())
            .collect(),
    )
}
