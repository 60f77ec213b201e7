//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial over `Q` in a fixed, named list of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    fn zero_like(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: BigRational) -> Self {
        let mut p = MultiPoly::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = MultiPoly::zero(vars);
        p.add_term(e, BigRational::one());
        Ok(p)
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Result<Self> {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::DimensionMismatch {
                    expected: vars.len(),
                    got: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Zero, or homogeneous of degree `d`.
    pub fn is_form_of_degree(&self, d: u32) -> bool {
        self.is_homogeneous() && self.degree().map_or(true, |x| x == d)
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.degree() {
            None => Some(BigRational::zero()),
            Some(0) => self.terms.values().next().cloned(),
            _ => None,
        }
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.vars.clone(), other.vars.clone()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.zero_like();
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = self.zero_like();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = MultiPoly::constant(&self.vars(), BigRational::one());
        for _ in 0..k {
            out = out.mul(self).expect("same variables");
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.vars.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t *= num_traits::pow(x.clone(), k as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Replaces the `i`-th variable by `images[i]`; the images share a common
    /// variable list, which becomes the variable list of the result.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<Self> {
        if images.len() != self.vars.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vars.len(),
                got: images.len(),
            });
        }
        let target: Vec<&str> = match images.first() {
            Some(p) => p.vars(),
            None => Vec::new(),
        };
        for p in images {
            if p.vars() != target {
                return Err(Error::VariableMismatch(target.iter().map(|s| s.to_string()).collect(), p.vars.clone()));
            }
        }
        // cache powers of each image
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::constant(&target, BigRational::one()), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][k as usize])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in a larger variable list containing all
    /// current variables by name.
    pub fn embed(&self, vars: &[&str]) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::VariableMismatch(self.vars.clone(), vars.iter().map(|s| s.to_string()).collect()))
            })
            .collect::<Result<_>>()?;
        let mut out = MultiPoly::zero(vars);
        for (e, c) in &self.terms {
            let mut f = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                f[map[i]] = k;
            }
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    /// Drops variables that do not occur; errors if a listed variable is
    /// missing from `vars` but occurs in the polynomial.
    pub fn restrict(&self, vars: &[&str]) -> Result<Self> {
        let mut out = MultiPoly::zero(vars);
        for (e, c) in &self.terms {
            let mut f = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let j = vars
                    .iter()
                    .position(|w| *w == self.vars[i])
                    .ok_or_else(|| Error::Degree(format!("variable {} occurs but is not allowed", self.vars[i])))?;
                f[j] = k;
            }
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    /// Coefficient of `var^k`, as a polynomial in the same variables.
    pub fn coeff_in(&self, var: usize, k: u32) -> Self {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            if e[var] == k {
                let mut f = e.clone();
                f[var] = 0;
                out.add_term(f, c.clone());
            }
        }
        out
    }

    pub fn leading_term(&self) -> Option<(&Vec<u32>, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d` (lexicographic division); errors if `d`
    /// does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        self.same_vars(d)?;
        let (de, dc) = d
            .leading_term()
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or_else(|| Error::Degenerate("division by zero polynomial".into()))?;
        let mut rem = self.clone();
        let mut q = self.zero_like();
        while let Some((re, rc)) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return Err(Error::Degenerate("inexact polynomial division".into()));
            }
            let e: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let c = rc / &dc;
            let mut t = self.zero_like();
            t.add_term(e, c);
            rem = rem.sub(&t.mul(d)?)?;
            q = q.add(&t)?;
        }
        Ok(q)
    }

    /// Parses expressions such as `3*x0^2*x1 - 1/2*x2^3` over the given
    /// variables.
    pub fn parse(s: &str, vars: &[&str]) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut p = Parser { tokens, pos: 0, vars };
        let out = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("unexpected trailing input in {s:?}")));
        }
        Ok(out)
    }

    /// One line per monomial: exponents, numerator, denominator.
    pub fn to_records(&self) -> String {
        let mut s = String::new();
        for (e, c) in &self.terms {
            for k in e {
                s.push_str(&format!("{k} "));
            }
            s.push_str(&format!("{} {}\n", c.numer(), c.denom()));
        }
        s
    }

    pub fn from_records(text: &str, vars: &[&str]) -> Result<Self> {
        let mut p = MultiPoly::zero(vars);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != vars.len() + 2 {
                return Err(Error::Parse(format!("record {line:?} needs {} fields", vars.len() + 2)));
            }
            let e = fields[..vars.len()]
                .iter()
                .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let num: BigInt = fields[vars.len()].parse().map_err(|_| Error::Parse(format!("bad numerator in {line:?}")))?;
            let den: BigInt = fields[vars.len() + 1].parse().map_err(|_| Error::Parse(format!("bad denominator in {line:?}")))?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {line:?}")));
            }
            p.add_term(e, BigRational::new(num, den));
        }
        Ok(p)
    }
}

/// Display order: higher total degree first, then lexicographically larger
/// exponent vectors first.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Vec<u32>, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let monomial: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if monomial.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Int(text.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek_sym(&self, c: char) -> bool {
        self.tokens.get(self.pos) == Some(&Token::Sym(c))
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.vars);
        let mut first = true;
        loop {
            let sign = if self.peek_sym('+') {
                self.pos += 1;
                1
            } else if self.peek_sym('-') {
                self.pos += 1;
                -1
            } else if first {
                1
            } else {
                return Ok(acc);
            };
            first = false;
            let t = self.term()?;
            acc = if sign > 0 { acc.add(&t)? } else { acc.sub(&t)? };
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.peek_sym('*') {
                self.pos += 1;
                acc = acc.mul(&self.factor()?)?;
            } else if self.peek_sym('/') {
                self.pos += 1;
                let d = self.factor()?;
                let c = d
                    .constant_value()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::Parse("division only by nonzero constants".into()))?;
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.primary()?;
        if self.peek_sym('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Int(k)) => {
                    let k = k.to_u32().ok_or_else(|| Error::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    Ok(base.pow(k))
                }
                _ => Err(Error::Parse("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<MultiPoly> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Token::Int(n)) => Ok(MultiPoly::constant(self.vars, BigRational::from_integer(n))),
            Some(Token::Ident(name)) => MultiPoly::var(self.vars, &name),
            Some(Token::Sym('(')) => {
                let e = self.expr()?;
                if !self.peek_sym(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Token::Sym('-')) => Ok(self.factor()?.neg()),
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Determinant of a square matrix of polynomials by fraction-free
/// (Bareiss) elimination.
pub fn determinant(matrix: &[Vec<MultiPoly>], vars: &[&str]) -> Result<MultiPoly> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: matrix.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n),
        });
    }
    if n == 0 {
        return Ok(MultiPoly::constant(vars, BigRational::one()));
    }
    let mut m: Vec<Vec<MultiPoly>> = matrix.to_vec();
    let mut prev = MultiPoly::constant(vars, BigRational::one());
    let mut sign = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(MultiPoly::zero(vars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j])?.sub(&m[i][k].mul(&m[k][j])?)?;
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if sign { d.neg() } else { d })
}

/// Resultant with respect to the variable `var`: determinant of the
/// Sylvester matrix.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly> {
    f.same_vars(g)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::Degenerate("resultant of a zero polynomial".into()));
    }
    let v = f.var_index(var)?;
    let m = f.degree_in(v).unwrap_or(0);
    let n = g.degree_in(v).unwrap_or(0);
    if m == 0 && n == 0 {
        return Err(Error::Degree(format!("{var} occurs in neither polynomial")));
    }
    let vars = f.vars();
    let size = (m + n) as usize;
    let fc: Vec<MultiPoly> = (0..=m).rev().map(|k| f.coeff_in(v, k)).collect();
    let gc: Vec<MultiPoly> = (0..=n).rev().map(|k| g.coeff_in(v, k)).collect();
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n as usize {
        let mut row = vec![MultiPoly::zero(&vars); size];
        for (j, c) in fc.iter().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m as usize {
        let mut row = vec![MultiPoly::zero(&vars); size];
        for (j, c) in gc.iter().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    determinant(&rows, &vars)
}

/// Dense univariate polynomial, coefficients from degree 0 upwards, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<BigRational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    fn monic(&self) -> Self {
        match self.0.last() {
            Some(lc) => UniPoly(self.0.iter().map(|c| c / lc).collect()),
            None => self.clone(),
        }
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.0[dd].clone();
        let mut rem = self.0.clone();
        let mut q = vec![BigRational::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lc;
            for (i, dc) in d.0.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            q[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(rem))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `(multiplicity, factor)` pairs with
    /// non-constant monic factors; the product of `factor^multiplicity` is
    /// the monic associate of `self`.
    pub fn squarefree_decomposition(&self) -> Vec<(usize, UniPoly)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = sub_uni(&c, &b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = sub_uni(&c, &b.derivative());
            if a.degree().unwrap_or(0) > 0 {
                out.push((i, a));
            }
            i += 1;
        }
        out
    }
}

fn sub_uni(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.0.len().max(b.0.len());
    UniPoly::new(
        (0..n)
            .map(|i| {
                a.0.get(i).cloned().unwrap_or_else(BigRational::zero) - b.0.get(i).cloned().unwrap_or_else(BigRational::zero)
            })
            .collect(),
    )
}
