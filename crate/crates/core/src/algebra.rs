//! The tri-graded super-commutative algebra
//! `A = k[x1,x2,y1,y2] ⊗ Λ[ν1,ν2] ⊗ Λ[ξ1,ξ2]`.
//!
//! Monomials are stored with generators in the fixed order
//! `x1 < x2 < y1 < y2 < ν1 < ν2 < ξ1 < ξ2`; the Koszul sign of any reordering
//! is absorbed into the coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{FmkError, Result};
use crate::scalar::{Field, Scalar};

/// Cohomological, Soergel and Hochschild degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TriDegree {
    pub i: i64,
    pub j: i64,
    pub k: i64,
}

impl TriDegree {
    pub const ZERO: TriDegree = TriDegree { i: 0, j: 0, k: 0 };

    pub const fn new(i: i64, j: i64, k: i64) -> Self {
        TriDegree { i, j, k }
    }

    /// The parity form `ii' + kk' mod 2`; `true` means odd.
    pub fn parity(&self, other: &TriDegree) -> bool {
        (self.i * other.i + self.k * other.k).rem_euclid(2) == 1
    }

    pub fn is_odd(&self) -> bool {
        self.parity(self)
    }
}

impl Add for TriDegree {
    type Output = TriDegree;
    fn add(self, o: TriDegree) -> TriDegree {
        TriDegree::new(self.i + o.i, self.j + o.j, self.k + o.k)
    }
}

impl Sub for TriDegree {
    type Output = TriDegree;
    fn sub(self, o: TriDegree) -> TriDegree {
        TriDegree::new(self.i - o.i, self.j - o.j, self.k - o.k)
    }
}

impl Neg for TriDegree {
    type Output = TriDegree;
    fn neg(self) -> TriDegree {
        TriDegree::new(-self.i, -self.j, -self.k)
    }
}

impl fmt::Display for TriDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

impl std::str::FromStr for TriDegree {
    type Err = FmkError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        let bad = || FmkError::Parse { offset: 0, message: format!("expected i,j,k, got `{s}`") };
        if parts.len() != 3 {
            return Err(bad());
        }
        let n: Vec<i64> = parts.iter().map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?;
        Ok(TriDegree::new(n[0], n[1], n[2]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    X1,
    X2,
    Y1,
    Y2,
    Nu1,
    Nu2,
    Xi1,
    Xi2,
}

impl Generator {
    pub const ALL: [Generator; 8] = [
        Generator::X1,
        Generator::X2,
        Generator::Y1,
        Generator::Y2,
        Generator::Nu1,
        Generator::Nu2,
        Generator::Xi1,
        Generator::Xi2,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["x1", "x2", "y1", "y2", "nu1", "nu2", "xi1", "xi2"][self.index()]
    }

    pub fn from_name(s: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.name() == s)
    }

    pub fn degree(self) -> TriDegree {
        match self {
            Generator::X1 | Generator::X2 => TriDegree::new(0, 2, 0),
            Generator::Y1 | Generator::Y2 => TriDegree::new(2, -2, 0),
            Generator::Nu1 | Generator::Nu2 => TriDegree::new(-1, 2, 0),
            Generator::Xi1 | Generator::Xi2 => TriDegree::new(0, 0, 1),
        }
    }

    pub fn is_odd(self) -> bool {
        self.degree().is_odd()
    }

    /// The reflection `s`, swapping the indices 1 and 2.
    pub fn s(self) -> Generator {
        Generator::ALL[self.index() ^ 1]
    }
}

/// Exponent vector in the canonical generator order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: [u16; 8],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn gen(g: Generator) -> Self {
        let mut m = Monomial::default();
        m.exps[g.index()] = 1;
        m
    }

    /// Builds a monomial from exponents; `None` if an exterior exponent exceeds 1.
    pub fn from_exponents(exps: [u16; 8]) -> Option<Self> {
        let m = Monomial { exps };
        Generator::ALL.iter().all(|g| !g.is_odd() || exps[g.index()] <= 1).then_some(m)
    }

    pub fn exponents(&self) -> [u16; 8] {
        self.exps
    }

    pub fn exp(&self, g: Generator) -> u16 {
        self.exps[g.index()]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.exp(g) > 0
    }

    pub fn degree(&self) -> TriDegree {
        Generator::ALL.iter().fold(TriDegree::ZERO, |acc, g| {
            let e = self.exp(*g) as i64;
            let d = g.degree();
            acc + TriDegree::new(e * d.i, e * d.j, e * d.k)
        })
    }

    pub fn uses_only(&self, allowed: &[Generator]) -> bool {
        Generator::ALL.iter().all(|g| self.exp(*g) == 0 || allowed.contains(g))
    }

    /// Generators with multiplicity, in canonical order.
    pub fn factors(&self) -> Vec<Generator> {
        let mut v = Vec::new();
        for g in Generator::ALL {
            for _ in 0..self.exp(g) {
                v.push(g);
            }
        }
        v
    }

    /// Product with its Koszul sign; `None` when an exterior square appears.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        let mut negative = false;
        let mut exps = [0u16; 8];
        for g in Generator::ALL {
            let (a, b) = (self.exp(g), other.exp(g));
            if g.is_odd() && a + b > 1 {
                return None;
            }
            exps[g.index()] = a + b;
        }
        // Move each generator of `other` left past the larger generators of `self`.
        for a in Generator::ALL {
            if self.exp(a) == 0 {
                continue;
            }
            for b in Generator::ALL {
                if b >= a || other.exp(b) == 0 {
                    continue;
                }
                let count = self.exp(a) as i64 * other.exp(b) as i64;
                if count % 2 == 1 && a.degree().parity(&b.degree()) {
                    negative = !negative;
                }
            }
        }
        Some((negative, Monomial { exps }))
    }

}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for g in Generator::ALL {
            let e = self.exp(g);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", g.name())?;
            } else {
                write!(f, "{}^{}", g.name(), e)?;
            }
        }
        Ok(())
    }
}

/// All monomials of the given degree using only `allowed` generators.
///
/// The degree equations `i = 2b - c`, `j = 2a - 2b + 2c`, `k = e` (with `a`,
/// `b`, `c`, `e` the total x-, y-, ν- and ξ-exponents) determine `a` and `b`
/// once `c ∈ {0,1,2}` is chosen, so the list is always finite.
pub fn enumerate_monomials(degree: TriDegree, allowed: &[Generator]) -> Vec<Monomial> {
    let mut out = Vec::new();
    let e = degree.k;
    if !(0..=2).contains(&e) {
        return out;
    }
    for c in 0..=2i64 {
        if (degree.i + c).rem_euclid(2) != 0 {
            continue;
        }
        let b = (degree.i + c) / 2;
        if b < 0 {
            continue;
        }
        let a2 = degree.j + 2 * b - 2 * c;
        if a2 < 0 || a2 % 2 != 0 {
            continue;
        }
        let a = a2 / 2;
        for a1 in 0..=a {
            for b1 in 0..=b {
                for nus in exterior_choices(c) {
                    for xis in exterior_choices(e) {
                        let exps = [
                            a1 as u16,
                            (a - a1) as u16,
                            b1 as u16,
                            (b - b1) as u16,
                            nus.0,
                            nus.1,
                            xis.0,
                            xis.1,
                        ];
                        let m = Monomial { exps };
                        if m.uses_only(allowed) {
                            out.push(m);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn exterior_choices(n: i64) -> Vec<(u16, u16)> {
    match n {
        0 => vec![(0, 0)],
        1 => vec![(1, 0), (0, 1)],
        2 => vec![(1, 1)],
        _ => vec![],
    }
}

/// A finite linear combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn one() -> Self {
        AlgebraElement::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        AlgebraElement::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        AlgebraElement::scalar(Scalar::from_i64(n))
    }

    pub fn gen(g: Generator) -> Self {
        AlgebraElement::term(Monomial::gen(g), Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut a = AlgebraElement::zero();
        a.add_term(m, c);
        a
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old += &c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, a) in &self.terms {
            out.add_term(*m, a * c);
        }
        out
    }

    pub fn in_field(&self, field: Field) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, a) in &self.terms {
            out.add_term(*m, a.in_field(field));
        }
        out
    }

    /// Homogeneous components keyed by degree.
    pub fn components(&self) -> BTreeMap<TriDegree, AlgebraElement> {
        let mut out: BTreeMap<TriDegree, AlgebraElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().add_term(*m, c.clone());
        }
        out
    }

    pub fn component(&self, d: TriDegree) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    /// Degree if homogeneous and nonzero.
    pub fn degree(&self) -> Option<TriDegree> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn uses_only(&self, allowed: &[Generator]) -> bool {
        self.terms.keys().all(|m| m.uses_only(allowed))
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                if let Some((neg, p)) = m.mul(n) {
                    let c = a * b;
                    out.add_term(p, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> AlgebraElement {
        (0..n).fold(AlgebraElement::one(), |acc, _| acc.mul(self))
    }

    /// Product of generators in the given order.
    pub fn product_of(gens: &[Generator]) -> AlgebraElement {
        gens.iter().fold(AlgebraElement::one(), |acc, g| acc.mul(&AlgebraElement::gen(*g)))
    }

    /// The differential `κ(ν_i) = x_i`, extended as a derivation of
    /// cohomological degree 1.
    pub fn kappa(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, c) in &self.terms {
            let factors = m.factors();
            let mut prefix_i = 0i64;
            for (pos, g) in factors.iter().enumerate() {
                let image = match g {
                    Generator::Nu1 => Some(Generator::X1),
                    Generator::Nu2 => Some(Generator::X2),
                    _ => None,
                };
                if let Some(x) = image {
                    let mut gens = factors.clone();
                    gens[pos] = x;
                    let term = AlgebraElement::product_of(&gens);
                    let sign = if prefix_i.rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
                    out = out.add(&term.scale(&sign));
                }
                prefix_i += g.degree().i;
            }
        }
        out
    }

    /// The algebra involution induced by `s`.
    pub fn s_action(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, c) in &self.terms {
            let gens: Vec<Generator> = m.factors().into_iter().map(Generator::s).collect();
            out = out.add(&AlgebraElement::product_of(&gens).scale(c));
        }
        out
    }

    /// `(f - s f) / α_s` for `f` in the x-subalgebra.
    pub fn demazure(&self) -> Result<AlgebraElement> {
        if !self.uses_only(&[Generator::X1, Generator::X2]) {
            return Err(FmkError::Domain(format!("demazure needs a polynomial in x1, x2, got {self}")));
        }
        let mut out = AlgebraElement::zero();
        for (m, c) in &self.terms {
            let (a, b) = (m.exp(Generator::X1), m.exp(Generator::X2));
            if a == b {
                continue;
            }
            let (hi, lo, sign) = if a > b { (a, b, c.clone()) } else { (b, a, -c) };
            let d = hi - lo;
            for t in 0..d {
                let mut exps = [0u16; 8];
                exps[0] = lo + t;
                exps[1] = lo + d - 1 - t;
                out.add_term(Monomial { exps }, sign.clone());
            }
        }
        Ok(out)
    }

    /// The pairing of `α_s` with the vector underlying a linear ξ.
    pub fn alpha_pairing(&self) -> Result<Scalar> {
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            if *m == Monomial::gen(Generator::Xi1) {
                total += c;
            } else if *m == Monomial::gen(Generator::Xi2) {
                total -= c;
            } else {
                return Err(FmkError::Domain(format!("alpha_pairing needs a linear combination of xi1, xi2, got {self}")));
            }
        }
        Ok(total)
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&Scalar::from_i64(-1))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                monomial: Generator::ALL
                    .iter()
                    .filter(|g| m.exp(**g) > 0)
                    .map(|g| (g.name().to_string(), m.exp(*g) as u32))
                    .collect(),
            })
            .collect();
        serde_json::to_value(terms).expect("plain data serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<AlgebraElement> {
        let terms: Vec<TermJson> = serde_json::from_value(v.clone()).map_err(|e| FmkError::Serde(e.to_string()))?;
        let mut out = AlgebraElement::zero();
        for t in terms {
            let mut exps = [0u16; 8];
            for (name, e) in &t.monomial {
                let g = Generator::from_name(name).ok_or_else(|| FmkError::Serde(format!("unknown generator `{name}`")))?;
                exps[g.index()] = u16::try_from(*e).map_err(|_| FmkError::Serde("exponent too large".into()))?;
            }
            let m = Monomial::from_exponents(exps).ok_or_else(|| FmkError::Serde("exterior exponent above 1".into()))?;
            let c: Scalar = t.coeff.parse()?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    monomial: BTreeMap<String, u32>,
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::add(self, o)
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::sub(self, o)
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, o: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::mul(self, o)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement::neg(self)
    }
}

/// Named elements.
pub mod consts {
    use super::{AlgebraElement, Generator::*};

    fn g(x: super::Generator) -> AlgebraElement {
        AlgebraElement::gen(x)
    }

    pub fn alpha_s() -> AlgebraElement {
        &g(X1) - &g(X2)
    }

    pub fn alpha_s_vee() -> AlgebraElement {
        &g(Y1) - &g(Y2)
    }

    pub fn nu_s() -> AlgebraElement {
        &g(Nu1) - &g(Nu2)
    }

    pub fn xi_s() -> AlgebraElement {
        &g(Xi1) - &g(Xi2)
    }

    /// `θ = ν1 y1 + ν2 y2`.
    pub fn theta() -> AlgebraElement {
        &(&g(Nu1) * &g(Y1)) + &(&g(Nu2) * &g(Y2))
    }

    /// `θ_s = ν2 y1 + ν1 y2`.
    pub fn theta_s() -> AlgebraElement {
        &(&g(Nu2) * &g(Y1)) + &(&g(Nu1) * &g(Y2))
    }

    pub fn by_name(name: &str) -> Option<AlgebraElement> {
        Some(match name {
            "alpha_s" => alpha_s(),
            "alpha_s_v" => alpha_s_vee(),
            "nu_s" => nu_s(),
            "xi_s" => xi_s(),
            "theta" => theta(),
            "theta_s" => theta_s(),
            _ => return None,
        })
    }
}
