//! Theta characteristics over `F_2`.
//!
//! Two-torsion of a genus 3 Jacobian is modelled by even subsets of
//! `{1, ..., 8}` modulo complement. The odd theta characteristics of a plane
//! quartic are the 28 two-element subsets `{i, j}` (its bitangents), the even
//! ones are the 35 four-element classes plus the empty set. A general engine
//! for quadratic forms on symplectic `F_2`-spaces covers the other genera.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{ClassKind, DivisorClass, PicardLattice};

const FULL: u8 = 0xff;

/// An even subset of `{1..8}` up to complement.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct EvenSubsetClass(u8);

impl EvenSubsetClass {
    /// Builds the class of an even subset given by 1-based indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        for &i in indices {
            if !(1..=8).contains(&i) {
                return Err(Error::InvalidTheta(format!("index {i} outside 1..8")));
            }
            mask ^= 1 << (i - 1);
        }
        if mask.count_ones() % 2 == 1 {
            return Err(Error::InvalidTheta(format!("odd subset {indices:?}")));
        }
        Ok(Self::normalize(mask))
    }

    fn normalize(mask: u8) -> Self {
        let n = mask.count_ones();
        if n > 4 || (n == 4 && mask & 1 == 0) {
            EvenSubsetClass(!mask & FULL)
        } else {
            EvenSubsetClass(mask)
        }
    }

    pub fn identity() -> Self {
        EvenSubsetClass(0)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    /// Group law: symmetric difference.
    pub fn add(self, other: Self) -> Self {
        Self::normalize(self.0 ^ other.0)
    }

    /// 1 for the 28 two-element classes, 0 otherwise.
    pub fn parity(self) -> u8 {
        u8::from(self.0.count_ones() == 2)
    }

    pub fn is_odd(self) -> bool {
        self.parity() == 1
    }

    pub fn indices(self) -> Vec<usize> {
        (0..8).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    /// All 64 classes, in canonical order.
    pub fn all() -> Vec<Self> {
        let mut v: Vec<_> = (0..=FULL)
            .filter(|m: &u8| m.count_ones() % 2 == 0)
            .map(Self::normalize)
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn odd() -> Vec<Self> {
        Self::all().into_iter().filter(|c| c.is_odd()).collect()
    }

    pub fn even() -> Vec<Self> {
        Self::all().into_iter().filter(|c| !c.is_odd()).collect()
    }
}

impl Ord for EvenSubsetClass {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.count_ones(), self.indices()).cmp(&(other.0.count_ones(), other.indices()))
    }
}

impl PartialOrd for EvenSubsetClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EvenSubsetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for EvenSubsetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Weil pairing: `|A ∩ B| mod 2`.
pub fn weil_pair(a: EvenSubsetClass, b: EvenSubsetClass) -> u8 {
    ((a.0 & b.0).count_ones() % 2) as u8
}

/// `q_θ(η) = h^0(θ + η) + h^0(θ) mod 2`, with `h^0` read off as parity.
pub fn q_theta(theta: EvenSubsetClass, eta: EvenSubsetClass) -> u8 {
    theta.add(eta).parity() ^ theta.parity()
}

/// Three distinct odd characteristics are syzygetic iff `q_{θ1}(θ2 + θ3) = 0`.
pub fn syzygetic(t1: EvenSubsetClass, t2: EvenSubsetClass, t3: EvenSubsetClass) -> Result<bool> {
    if t1 == t2 || t2 == t3 || t1 == t3 {
        return Err(Error::InvalidTheta("repeated characteristic".into()));
    }
    if let Some(t) = [t1, t2, t3].into_iter().find(|t| !t.is_odd()) {
        return Err(Error::InvalidTheta(format!("{t} is not odd")));
    }
    Ok(q_theta(t1, t2.add(t3)) == 0)
}

fn asyzygetic_unchecked(a: EvenSubsetClass, b: EvenSubsetClass, c: EvenSubsetClass) -> bool {
    q_theta(a, b.add(c)) == 1
}

pub type AronholdSet = [EvenSubsetClass; 7];

/// Seven distinct odd characteristics, every triple asyzygetic.
pub fn is_aronhold(set: &[EvenSubsetClass]) -> bool {
    if set.len() != 7 || set.iter().any(|t| !t.is_odd()) {
        return false;
    }
    for i in 0..7 {
        for j in (i + 1)..7 {
            if set[i] == set[j] {
                return false;
            }
            for k in (j + 1)..7 {
                if !asyzygetic_unchecked(set[i], set[j], set[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// All Aronhold sets, each sorted, listed in lexicographic order.
pub fn enumerate_aronhold() -> Vec<AronholdSet> {
    let odd = EvenSubsetClass::odd();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(7);
    extend_aronhold(&odd, 0, &mut chosen, &mut out);
    out
}

fn extend_aronhold(
    odd: &[EvenSubsetClass],
    start: usize,
    chosen: &mut Vec<EvenSubsetClass>,
    out: &mut Vec<AronholdSet>,
) {
    if chosen.len() == 7 {
        out.push(chosen.clone().try_into().expect("seven elements"));
        return;
    }
    for idx in start..odd.len() {
        let t = odd[idx];
        let ok = (0..chosen.len()).all(|i| {
            (i + 1..chosen.len()).all(|j| asyzygetic_unchecked(chosen[i], chosen[j], t))
        });
        if ok {
            chosen.push(t);
            extend_aronhold(odd, idx + 1, chosen, out);
            chosen.pop();
        }
    }
}

/// The even characteristic attached to an Aronhold set:
/// `θ_0 + Σ_{i≥1} (θ_i + θ_0)`.
pub fn even_theta_of_aronhold(set: &[EvenSubsetClass]) -> Result<EvenSubsetClass> {
    if !is_aronhold(set) {
        return Err(Error::InvalidTheta("not an Aronhold set".into()));
    }
    let base = set[0];
    let shift = set[1..]
        .iter()
        .fold(EvenSubsetClass::identity(), |acc, &t| acc.add(t.add(base)));
    let out = base.add(shift);
    debug_assert_eq!(out.parity(), 0);
    Ok(out)
}

/// Odd characteristic of the bitangent under a line of a degree 2 Del Pezzo
/// surface: `E_i, D_i -> {i,8}` and `L_{i,j}, C_{i,j} -> {i,j}`.
pub fn bitangent_label(lat: &PicardLattice, line: &DivisorClass) -> Result<EvenSubsetClass> {
    if lat.degree() != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            got: lat.degree(),
        });
    }
    lat.check(line)?;
    for i in 1..=7 {
        if *line == lat.exceptional(i) || *line == lat.cubic_double_at(i) {
            return EvenSubsetClass::from_indices(&[i, 8]);
        }
        for j in (i + 1)..=7 {
            if *line == lat.line_through(i, j) || *line == lat.conic_missing_pair(i, j) {
                return EvenSubsetClass::from_indices(&[i, j]);
            }
        }
    }
    Err(Error::InvalidTheta(format!("{line} is not a line")))
}

/// Aronhold set of labels of the seven lines contracted by a degree 2 blow-down class.
pub fn aronhold_of_blowdown(lat: &PicardLattice, blowdown: &DivisorClass) -> Result<AronholdSet> {
    if lat.degree() != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            got: lat.degree(),
        });
    }
    lat.check(blowdown)?;
    if lat.kind_of(blowdown) != Some(ClassKind::BlowDown) {
        return Err(Error::NotABlowDown(blowdown.to_string()));
    }
    let mut labels = lat
        .contracted_lines(blowdown)
        .iter()
        .map(|d| bitangent_label(lat, d))
        .collect::<Result<Vec<_>>>()?;
    labels.sort();
    if !is_aronhold(&labels) {
        return Err(Error::InvalidTheta(format!(
            "labels of {blowdown} do not form an Aronhold set"
        )));
    }
    Ok(labels.try_into().expect("seven contracted lines"))
}

pub fn even_theta_of_blowdown(lat: &PicardLattice, blowdown: &DivisorClass) -> Result<EvenSubsetClass> {
    even_theta_of_aronhold(&aronhold_of_blowdown(lat, blowdown)?)
}

/// A quadratic form on `F_2^{2g}`, stored as the strictly upper triangular
/// part of its polar form plus a linear part. Vectors are bit masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSpace {
    dim: usize,
    upper: Vec<u64>,
    linear: u64,
}

impl QuadraticSpace {
    /// Standard symplectic space of genus `g` (pairs `e_{2i}, e_{2i+1}`)
    /// carrying the form with zero linear part, which has Arf invariant 0.
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 || genus > 31 {
            return Err(Error::InvalidTheta(format!("genus {genus} out of range 1..=31")));
        }
        let dim = 2 * genus;
        let mut upper = vec![0u64; dim];
        for i in 0..genus {
            upper[2 * i] = 1 << (2 * i + 1);
        }
        Ok(QuadraticSpace { dim, upper, linear: 0 })
    }

    /// Standard space of genus `g` with a form of the requested Arf invariant.
    pub fn with_arf(genus: usize, arf: u8) -> Result<Self> {
        let mut s = Self::new(genus)?;
        if arf & 1 == 1 {
            s.linear = 0b11;
        }
        Ok(s)
    }

    /// General form; `upper[i]` may only have bits above `i`.
    pub fn from_parts(dim: usize, upper: Vec<u64>, linear: u64) -> Result<Self> {
        if dim == 0 || dim > 62 || upper.len() != dim {
            return Err(Error::InvalidTheta("bad quadratic space dimensions".into()));
        }
        let mask = Self::full_mask(dim);
        for (i, row) in upper.iter().enumerate() {
            if row & !mask != 0 || row & ((2u64 << i) - 1) != 0 {
                return Err(Error::InvalidTheta(format!("row {i} is not strictly upper triangular")));
            }
        }
        Ok(QuadraticSpace { dim, upper, linear: linear & mask })
    }

    fn full_mask(dim: usize) -> u64 {
        (1u64 << dim) - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn linear(&self) -> u64 {
        self.linear
    }

    pub fn set_linear(&mut self, linear: u64) {
        self.linear = linear & Self::full_mask(self.dim);
    }

    pub fn eval(&self, x: u64) -> u8 {
        let mut acc = (self.linear & x).count_ones();
        for (i, row) in self.upper.iter().enumerate() {
            if x >> i & 1 == 1 {
                acc += (row & x).count_ones();
            }
        }
        (acc & 1) as u8
    }

    /// Polar (symplectic) form `⟨x, y⟩`.
    pub fn pairing(&self, x: u64, y: u64) -> u8 {
        let mut acc = 0u32;
        for (i, row) in self.upper.iter().enumerate() {
            if x >> i & 1 == 1 {
                acc += (row & y).count_ones();
            }
            if y >> i & 1 == 1 {
                acc += (row & x).count_ones();
            }
        }
        (acc & 1) as u8
    }

    /// `q + ⟨·, α⟩`.
    pub fn twist(&self, alpha: u64) -> QuadraticSpace {
        let mut shift = 0u64;
        for i in 0..self.dim {
            if self.pairing(1 << i, alpha) == 1 {
                shift |= 1 << i;
            }
        }
        QuadraticSpace {
            dim: self.dim,
            upper: self.upper.clone(),
            linear: self.linear ^ shift,
        }
    }

    /// Arf invariant via a symplectic basis; `None` when the polar form is degenerate.
    pub fn arf(&self) -> Option<u8> {
        let mut pool: Vec<u64> = (0..self.dim).map(|i| 1u64 << i).collect();
        let mut arf = 0u8;
        while let Some(a) = pool.pop() {
            let pos = pool.iter().position(|&b| self.pairing(a, b) == 1)?;
            let b = pool.swap_remove(pos);
            arf ^= self.eval(a) & self.eval(b);
            for c in pool.iter_mut() {
                let mut v = *c;
                if self.pairing(*c, b) == 1 {
                    v ^= a;
                }
                if self.pairing(*c, a) == 1 {
                    v ^= b;
                }
                *c = v;
            }
        }
        Some(arf)
    }

    /// Number of zeros of the form, by exhaustive evaluation.
    pub fn count_zeros(&self) -> u64 {
        (0..=Self::full_mask(self.dim))
            .filter(|&x| self.eval(x) == 0)
            .count() as u64
    }
}

/// Counts behind the pairs of conics totally tangent to a plane quintic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConicPairCount {
    /// Zeros of the induced odd form on `η^⊥ / ⟨η⟩`.
    pub quotient_zeros: u64,
    /// `|Z|` with `Z = q1^{-1}(0) ∩ q2^{-1}(0) \ {0, η}`.
    pub z: u64,
    pub pairs: u64,
}

/// Counts for a given odd form `q1` and a nonzero `η` with `q1(η) = 0`,
/// with `q2 = q1 + ⟨·, η⟩`.
pub fn count_conic_pairs_with(q1: &QuadraticSpace, eta: u64) -> Result<ConicPairCount> {
    if q1.arf() != Some(1) {
        return Err(Error::InvalidTheta("q1 must be an odd form".into()));
    }
    if eta == 0 || q1.eval(eta) != 0 {
        return Err(Error::InvalidTheta("eta must be a nonzero zero of q1".into()));
    }
    let q2 = q1.twist(eta);
    debug_assert_eq!(q2.arf(), Some(1));
    let mut z = 0u64;
    let mut perp_zeros = 0u64;
    for x in 0..=QuadraticSpace::full_mask(q1.dim()) {
        let on_first = q1.eval(x) == 0;
        if on_first && q1.pairing(x, eta) == 0 {
            perp_zeros += 1;
        }
        if on_first && q2.eval(x) == 0 && x != 0 && x != eta {
            z += 1;
        }
    }
    Ok(ConicPairCount {
        quotient_zeros: perp_zeros / 2,
        z,
        pairs: z / 2,
    })
}

/// Genus 6 count with a seeded random admissible choice of `(q1, η)`.
pub fn count_conic_pairs(seed: u64) -> ConicPairCount {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (q1, eta) = random_admissible(6, &mut rng);
    count_conic_pairs_with(&q1, eta).expect("admissible choice")
}

/// Random odd form on the standard genus `g` space and a random nonzero zero of it.
pub fn random_admissible<R: Rng>(genus: usize, rng: &mut R) -> (QuadraticSpace, u64) {
    let mut q = QuadraticSpace::new(genus).expect("genus in range");
    let mask = QuadraticSpace::full_mask(q.dim());
    loop {
        q.set_linear(rng.gen::<u64>() & mask);
        if q.arf() == Some(1) {
            break;
        }
    }
    loop {
        let eta = rng.gen::<u64>() & mask;
        if eta != 0 && q.eval(eta) == 0 {
            return (q, eta);
        }
    }
}
