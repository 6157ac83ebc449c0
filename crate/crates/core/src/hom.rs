//! Morphisms between `B_∅` and `B_s` with coefficients in the algebra.
//!
//! Every hom space is free over `A₀ = k[x,y] ⊗ Λ[ν] ⊗ Λ[ξ2]` on the basis
//! diagrams between the two words, except `End(B_∅)` which is all of `A`.
//! A [`HomElement`] is always stored in that normal form: coefficients of
//! non-identity diagrams never contain `ξ1`.
//!
//! Coefficients are left boxes. Composition of bare diagrams goes through
//! the generator words `u: E→S`, `d: S→E`, `h: S→S` with the rewriting rules
//!
//! ```text
//! h h   = 0
//! d h u = ξ_s      (sign from the h's the box passes on its way out)
//! d u   = α_s
//! u d h = h u d
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{consts, enumerate_monomials, AlgebraElement, Generator, Monomial, TriDegree};
use crate::error::{FmkError, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Word {
    E,
    S,
}

impl Word {
    /// Monoidal product; `S ⋆ S` has no representative here.
    pub fn star(self, other: Word) -> Option<Word> {
        match (self, other) {
            (Word::E, w) | (w, Word::E) => Some(w),
            (Word::S, Word::S) => None,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", match self { Word::E => "E", Word::S => "S" })
    }
}

/// `B(m)⟦n⟧` for `B` one of `B_∅`, `B_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjectLabel {
    pub word: Word,
    pub soergel_shift: i64,
    pub hochschild_shift: i64,
}

impl ObjectLabel {
    pub fn new(word: Word, soergel_shift: i64, hochschild_shift: i64) -> Self {
        ObjectLabel { word, soergel_shift, hochschild_shift }
    }

    pub fn plain(word: Word) -> Self {
        ObjectLabel::new(word, 0, 0)
    }

    pub fn shifted(&self, m: i64, n: i64) -> Self {
        ObjectLabel::new(self.word, self.soergel_shift + m, self.hochschild_shift + n)
    }

    /// Degree in `gHom(B, B')` corresponding to `Hom^{j,k}(self, target)`.
    pub fn raw_degree(&self, target: &ObjectLabel, d: TriDegree) -> TriDegree {
        TriDegree::new(
            d.i,
            d.j + target.soergel_shift - self.soergel_shift,
            d.k + target.hochschild_shift - self.hochschild_shift,
        )
    }
}

impl fmt::Display for ObjectLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})[[{}]]", self.word, self.soergel_shift, self.hochschild_shift)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Letter {
    U,
    D,
    H,
}

/// The nine basis diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Diagram {
    One,
    U,
    D,
    L,
    H,
    Uh,
    Hd,
    Beta,
    Hbeta,
}

impl Diagram {
    pub const ALL: [Diagram; 9] = [
        Diagram::One,
        Diagram::U,
        Diagram::D,
        Diagram::L,
        Diagram::H,
        Diagram::Uh,
        Diagram::Hd,
        Diagram::Beta,
        Diagram::Hbeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Diagram::One => "one",
            Diagram::U => "u",
            Diagram::D => "d",
            Diagram::L => "l",
            Diagram::H => "h",
            Diagram::Uh => "uh",
            Diagram::Hd => "hd",
            Diagram::Beta => "beta",
            Diagram::Hbeta => "hbeta",
        }
    }

    pub fn from_name(s: &str) -> Option<Diagram> {
        Diagram::ALL.into_iter().find(|d| d.name() == s)
    }

    pub fn source(self) -> Word {
        match self {
            Diagram::One | Diagram::U | Diagram::Uh => Word::E,
            _ => Word::S,
        }
    }

    pub fn target(self) -> Word {
        match self {
            Diagram::One | Diagram::D | Diagram::Hd => Word::E,
            _ => Word::S,
        }
    }

    pub fn degree(self) -> TriDegree {
        let (j, k) = match self {
            Diagram::One | Diagram::L => (0, 0),
            Diagram::U | Diagram::D => (1, 0),
            Diagram::H => (-2, 1),
            Diagram::Uh | Diagram::Hd => (-1, 1),
            Diagram::Beta => (2, 0),
            Diagram::Hbeta => (0, 1),
        };
        TriDegree::new(0, j, k)
    }

    /// Basis diagrams from `source` to `target`.
    pub fn between(source: Word, target: Word) -> &'static [Diagram] {
        match (source, target) {
            (Word::E, Word::E) => &[Diagram::One],
            (Word::E, Word::S) => &[Diagram::U, Diagram::Uh],
            (Word::S, Word::E) => &[Diagram::D, Diagram::Hd],
            (Word::S, Word::S) => &[Diagram::L, Diagram::H, Diagram::Beta, Diagram::Hbeta],
        }
    }

    fn letters(self) -> &'static [Letter] {
        use Letter::*;
        match self {
            Diagram::One | Diagram::L => &[],
            Diagram::U => &[U],
            Diagram::D => &[D],
            Diagram::H => &[H],
            Diagram::Uh => &[H, U],
            Diagram::Hd => &[D, H],
            Diagram::Beta => &[U, D],
            Diagram::Hbeta => &[H, U, D],
        }
    }

    fn from_letters(letters: &[Letter], source: Word) -> Diagram {
        use Letter::*;
        match letters {
            [] if source == Word::E => Diagram::One,
            [] => Diagram::L,
            [U] => Diagram::U,
            [D] => Diagram::D,
            [H] => Diagram::H,
            [H, U] => Diagram::Uh,
            [D, H] => Diagram::Hd,
            [U, D] => Diagram::Beta,
            [H, U, D] => Diagram::Hbeta,
            other => unreachable!("irreducible word {other:?}"),
        }
    }

    /// `ξ_s · self` in normal form: `Some(D')` for `α_s · D'`, `None` for zero.
    /// Not defined for `one`, where `ξ_s` is an ordinary coefficient.
    fn xi_s_rewrite(self) -> Option<Diagram> {
        match self {
            Diagram::U => Some(Diagram::Uh),
            Diagram::D => Some(Diagram::Hd),
            Diagram::L => Some(Diagram::H),
            Diagram::Beta => Some(Diagram::Hbeta),
            Diagram::Uh | Diagram::Hd | Diagram::H | Diagram::Hbeta => None,
            Diagram::One => unreachable!("xi_s is a plain coefficient on one"),
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// `x ∘ y` for basis diagrams, as `coefficient · diagram`.
pub fn compose_diagrams(x: Diagram, y: Diagram) -> Result<Option<(AlgebraElement, Diagram)>> {
    if x.source() != y.target() {
        return Err(FmkError::ObjectMismatch(format!("{x} after {y}")));
    }
    let mut w: Vec<Letter> = x.letters().iter().chain(y.letters()).copied().collect();
    let mut coeff = AlgebraElement::one();
    loop {
        if w.windows(2).any(|p| p == [Letter::H, Letter::H]) {
            return Ok(None);
        }
        if let Some(p) = w.windows(3).position(|p| p == [Letter::D, Letter::H, Letter::U]) {
            let hs = w[..p].iter().filter(|l| **l == Letter::H).count();
            let xi = if hs % 2 == 1 { consts::xi_s().neg() } else { consts::xi_s() };
            coeff = coeff.mul(&xi);
            w.drain(p..p + 3);
            continue;
        }
        if let Some(p) = w.windows(2).position(|p| p == [Letter::D, Letter::U]) {
            coeff = coeff.mul(&consts::alpha_s());
            w.drain(p..p + 2);
            continue;
        }
        if let Some(p) = w.windows(3).position(|p| p == [Letter::U, Letter::D, Letter::H]) {
            w.splice(p..p + 3, [Letter::H, Letter::U, Letter::D]);
            continue;
        }
        break;
    }
    if coeff.is_zero() {
        return Ok(None);
    }
    Ok(Some((coeff, Diagram::from_letters(&w, y.source()))))
}

/// Splits a monomial times `diagram` into normal form.
fn canonical_terms(diagram: Diagram, m: Monomial, c: Scalar, out: &mut BTreeMap<(Diagram, Monomial), Scalar>) {
    let mut push = |d: Diagram, m: Monomial, c: Scalar| {
        if c.is_zero() {
            return;
        }
        let e = out.entry((d, m)).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            out.remove(&(d, m));
        }
    };
    if diagram == Diagram::One || !m.contains(Generator::Xi1) {
        push(diagram, m, c);
        return;
    }
    // m = q·ξ1·r with r ∈ {1, ξ2}; substitute ξ1 = ξ_s + ξ2.
    let mut exps = m.exponents();
    exps[Generator::Xi1.index()] = 0;
    let has_xi2 = exps[Generator::Xi2.index()] == 1;
    if !has_xi2 {
        let mut e2 = exps;
        e2[Generator::Xi2.index()] = 1;
        push(diagram, Monomial::from_exponents(e2).expect("valid"), c.clone());
    }
    // q ξ_s r = (-1)^{|r|} (q r) ξ_s, and ξ_s next to the diagram is rewritten.
    let Some(target) = diagram.xi_s_rewrite() else { return };
    let sign = if has_xi2 { -c } else { c };
    let qr = Monomial::from_exponents(exps).expect("valid");
    for (x, s) in [(Generator::X1, sign.clone()), (Generator::X2, -sign)] {
        let (neg, p) = qr.mul(&Monomial::gen(x)).expect("x is even");
        push(target, p, if neg { -s } else { s });
    }
}

/// A morphism between two words, in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    source: Word,
    target: Word,
    terms: BTreeMap<(Diagram, Monomial), Scalar>,
}

impl HomElement {
    pub fn zero(source: Word, target: Word) -> Self {
        HomElement { source, target, terms: BTreeMap::new() }
    }

    pub fn identity(w: Word) -> Self {
        HomElement::diagram(if w == Word::E { Diagram::One } else { Diagram::L })
    }

    pub fn diagram(d: Diagram) -> Self {
        HomElement::with_coeff(&AlgebraElement::one(), d)
    }

    /// `coeff · d`, normalized.
    pub fn with_coeff(coeff: &AlgebraElement, d: Diagram) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in coeff.terms() {
            canonical_terms(d, *m, c.clone(), &mut terms);
        }
        HomElement { source: d.source(), target: d.target(), terms }
    }

    pub fn source(&self) -> Word {
        self.source
    }

    pub fn target(&self) -> Word {
        self.target
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Diagram, Monomial), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a diagram, as an algebra element.
    pub fn coefficient(&self, d: Diagram) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for ((e, m), c) in &self.terms {
            if *e == d {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    /// Re-runs normalization; a no-op on values built through this API.
    pub fn canonicalize(&self) -> HomElement {
        let mut terms = BTreeMap::new();
        for ((d, m), c) in &self.terms {
            canonical_terms(*d, *m, c.clone(), &mut terms);
        }
        HomElement { source: self.source, target: self.target, terms }
    }

    /// Builds from raw (possibly non-normal) terms.
    pub fn from_raw_terms(source: Word, target: Word, raw: impl IntoIterator<Item = (Diagram, Monomial, Scalar)>) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (d, m, c) in raw {
            if d.source() != source || d.target() != target {
                return Err(FmkError::ObjectMismatch(format!("{d} is not a morphism {source} -> {target}")));
            }
            canonical_terms(d, m, c, &mut terms);
        }
        Ok(HomElement { source, target, terms })
    }

    fn check_same_type(&self, other: &HomElement) {
        assert!(
            self.source == other.source && self.target == other.target,
            "adding morphisms {}->{} and {}->{}",
            self.source,
            self.target,
            other.source,
            other.target
        );
    }

    pub fn add(&self, other: &HomElement) -> HomElement {
        self.check_same_type(other);
        let mut out = self.clone();
        for ((d, m), c) in &other.terms {
            canonical_terms(*d, *m, c.clone(), &mut out.terms);
        }
        out
    }

    pub fn sub(&self, other: &HomElement) -> HomElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomElement {
        self.scale(&Scalar::from_i64(-1))
    }

    pub fn scale(&self, c: &Scalar) -> HomElement {
        let mut out = HomElement::zero(self.source, self.target);
        for ((d, m), a) in &self.terms {
            let v = a * c;
            if !v.is_zero() {
                out.terms.insert((*d, *m), v);
            }
        }
        out
    }

    pub fn in_field(&self, field: Field) -> HomElement {
        let mut out = HomElement::zero(self.source, self.target);
        for ((d, m), a) in &self.terms {
            canonical_terms(*d, *m, a.in_field(field), &mut out.terms);
        }
        out
    }

    /// Multiplies every coefficient on the left by `f`.
    pub fn left_box(&self, f: &AlgebraElement) -> HomElement {
        let mut out = HomElement::zero(self.source, self.target);
        for ((d, m), a) in &self.terms {
            for (n, b) in f.terms() {
                if let Some((neg, p)) = n.mul(m) {
                    let c = b * a;
                    canonical_terms(*d, p, if neg { -c } else { c }, &mut out.terms);
                }
            }
        }
        out
    }

    /// `self ∘ other` with the Koszul sign of passing coefficients of `other`
    /// over diagrams of `self`, whose cohomological degree is `self_shift`.
    pub fn compose_shifted(&self, other: &HomElement, self_shift: i64) -> Result<HomElement> {
        if self.source != other.target {
            return Err(FmkError::ObjectMismatch(format!(
                "composing {}->{} after {}->{}",
                self.source, self.target, other.source, other.target
            )));
        }
        let mut out = HomElement::zero(other.source, self.target);
        for ((x, m), a) in &self.terms {
            let xdeg = x.degree();
            let xdeg = TriDegree::new(self_shift, xdeg.j, xdeg.k);
            for ((y, n), b) in &other.terms {
                let Some((c, z)) = compose_diagrams(*x, *y)? else { continue };
                let Some((neg1, mn)) = m.mul(n) else { continue };
                let mut scalar = a * b;
                if neg1 ^ xdeg.parity(&n.degree()) {
                    scalar = -scalar;
                }
                for (p, e) in c.terms() {
                    if let Some((neg2, q)) = mn.mul(p) {
                        let v = &scalar * e;
                        canonical_terms(z, q, if neg2 { -v } else { v }, &mut out.terms);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HomElement) -> Result<HomElement> {
        self.compose_shifted(other, 0)
    }

    /// `self ⋆ f`: a box placed in the region right of the diagram, slid left.
    ///
    /// Across an `S` strand only `x` and `ξ` boxes can move; `y` and `ν`
    /// are coefficients of the ambient algebra and have no right action.
    pub fn right_box(&self, f: &AlgebraElement) -> Result<HomElement> {
        let id = identity_star(self.source, f)?;
        self.compose(&id)
    }

    pub fn kappa(&self) -> HomElement {
        let mut out = HomElement::zero(self.source, self.target);
        for ((d, m), a) in &self.terms {
            let k = AlgebraElement::term(*m, a.clone()).kappa();
            for (n, b) in k.terms() {
                canonical_terms(*d, *n, b.clone(), &mut out.terms);
            }
        }
        out
    }

    /// Homogeneous components, keyed by hom-level degree.
    pub fn components(&self) -> BTreeMap<TriDegree, HomElement> {
        let mut out: BTreeMap<TriDegree, HomElement> = BTreeMap::new();
        for ((d, m), a) in &self.terms {
            out.entry(m.degree() + d.degree())
                .or_insert_with(|| HomElement::zero(self.source, self.target))
                .terms
                .insert((*d, *m), a.clone());
        }
        out
    }

    pub fn degree(&self) -> Option<TriDegree> {
        let comps = self.components();
        (comps.len() == 1).then(|| *comps.keys().next().expect("one component"))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut by_diagram: BTreeMap<Diagram, AlgebraElement> = BTreeMap::new();
        for ((d, m), a) in &self.terms {
            by_diagram.entry(*d).or_default().add_term(*m, a.clone());
        }
        let terms: Vec<serde_json::Value> = by_diagram
            .iter()
            .map(|(d, c)| serde_json::json!({ "coeff": c.to_json(), "diagram": d.name() }))
            .collect();
        serde_json::json!({ "source": self.source, "target": self.target, "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<HomElement> {
        let word = |key: &str| -> Result<Word> {
            serde_json::from_value(v.get(key).cloned().unwrap_or_default()).map_err(|e| FmkError::Serde(format!("{key}: {e}")))
        };
        let (source, target) = (word("source")?, word("target")?);
        let mut out = HomElement::zero(source, target);
        let terms = v.get("terms").and_then(|t| t.as_array()).ok_or_else(|| FmkError::Serde("missing terms".into()))?;
        for t in terms {
            let name = t.get("diagram").and_then(|d| d.as_str()).ok_or_else(|| FmkError::Serde("missing diagram".into()))?;
            let d = Diagram::from_name(name).ok_or_else(|| FmkError::Serde(format!("unknown diagram `{name}`")))?;
            let c = AlgebraElement::from_json(t.get("coeff").unwrap_or(&serde_json::Value::Null))?;
            let piece = HomElement::with_coeff(&c, d);
            if piece.source != source || piece.target != target {
                return Err(FmkError::ObjectMismatch(format!("{d} in {source}->{target}")));
            }
            out = out.add(&piece);
        }
        Ok(out)
    }
}

impl fmt::Display for HomElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut by_diagram: BTreeMap<Diagram, AlgebraElement> = BTreeMap::new();
        for ((d, m), a) in &self.terms {
            by_diagram.entry(*d).or_default().add_term(*m, a.clone());
        }
        for (n, (d, c)) in by_diagram.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{d}")?;
        }
        Ok(())
    }
}

/// `id_w ⋆ f`.
pub fn identity_star(w: Word, f: &AlgebraElement) -> Result<HomElement> {
    if w == Word::E {
        return Ok(HomElement::with_coeff(f, Diagram::One));
    }
    let allowed = [Generator::X1, Generator::X2, Generator::Xi1, Generator::Xi2];
    if !f.uses_only(&allowed) {
        return Err(FmkError::Unsupported(format!("no right action of {f} across an S strand")));
    }
    let mut out = HomElement::zero(Word::S, Word::S);
    for (m, c) in f.terms() {
        let mut acc = HomElement::diagram(Diagram::L);
        for g in m.factors() {
            acc = acc.compose(&strand_force(g))?;
        }
        out = out.add(&acc.scale(c));
    }
    Ok(out)
}

/// `id_S ⋆ g` for a single generator: `s(g)·l + ∂_s(g)·beta` for `x`,
/// `s(ξ)·l + α_s(ξ)·hbeta` for `ξ`.
fn strand_force(g: Generator) -> HomElement {
    let gen = AlgebraElement::gen(g);
    let reflected = HomElement::with_coeff(&gen.s_action(), Diagram::L);
    let correction = match g {
        Generator::X1 | Generator::X2 => {
            HomElement::with_coeff(&gen.demazure().expect("x is polynomial"), Diagram::Beta)
        }
        Generator::Xi1 | Generator::Xi2 => HomElement::with_coeff(
            &AlgebraElement::scalar(gen.alpha_pairing().expect("ξ is linear")),
            Diagram::Hbeta,
        ),
        _ => unreachable!("filtered by caller"),
    };
    reflected.add(&correction)
}

/// Monoidal product of two morphisms, at least one of them between copies of `B_∅`.
pub fn star_hom(x: &HomElement, y: &HomElement) -> Result<HomElement> {
    if x.source == Word::E && x.target == Word::E {
        return Ok(y.left_box(&x.coefficient(Diagram::One)));
    }
    if y.source == Word::E && y.target == Word::E {
        return x.right_box(&y.coefficient(Diagram::One));
    }
    Err(FmkError::Unsupported("monoidal product of two morphisms involving B_s".into()))
}

/// Coefficient ring of a hom space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Coefficients {
    /// `R_Ext = k[x1,x2] ⊗ Λ[ξ1,ξ2]`: the hom spaces of the diagrammatic category.
    #[default]
    Ext,
    /// The full algebra, as after base change to the Koszul algebra.
    Full,
}

impl Coefficients {
    pub fn generators(self) -> &'static [Generator] {
        match self {
            Coefficients::Ext => &[Generator::X1, Generator::X2, Generator::Xi1, Generator::Xi2],
            Coefficients::Full => &Generator::ALL,
        }
    }

    /// Generators allowed next to a diagram other than `one` in normal form.
    fn normal_form_generators(self) -> Vec<Generator> {
        self.generators().iter().copied().filter(|g| *g != Generator::Xi1).collect()
    }
}

/// Normal-form basis of `gHom(source, target)` in a hom-level degree.
pub fn canonical_basis(source: Word, target: Word, degree: TriDegree, coeffs: Coefficients) -> Vec<(Diagram, Monomial)> {
    let mut out = Vec::new();
    let restricted = coeffs.normal_form_generators();
    for &d in Diagram::between(source, target) {
        let allowed: &[Generator] = if d == Diagram::One { coeffs.generators() } else { &restricted };
        for m in enumerate_monomials(degree - d.degree(), allowed) {
            out.push((d, m));
        }
    }
    out
}

/// `dim Hom^{i,j,k}(source, target)` with `R_Ext` coefficients, shifts included.
pub fn dim_in_degree(source: &ObjectLabel, target: &ObjectLabel, degree: TriDegree) -> usize {
    dim_in_degree_with(source, target, degree, Coefficients::Ext)
}

pub fn dim_in_degree_with(source: &ObjectLabel, target: &ObjectLabel, degree: TriDegree, coeffs: Coefficients) -> usize {
    canonical_basis(source.word, target.word, source.raw_degree(target, degree), coeffs).len()
}

/// Which relation set to use for the presentation of the hom spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// Only the quotient relations printed with the hom spaces.
    Printed,
    /// Those plus the relations forced by composition with the hollow dot.
    Complete,
}

/// Relations `Σ coeff · diagram = 0` presenting `gHom(source, target)` as a
/// quotient of the free module on the basis diagrams.
pub fn presentation_relations(source: Word, target: Word, which: Presentation) -> Vec<Vec<(AlgebraElement, Diagram)>> {
    let xi = consts::xi_s();
    let alpha = consts::alpha_s();
    let swap = |a: Diagram, b: Diagram| vec![(xi.clone(), a), (alpha.neg(), b)];
    let kill = |a: Diagram| vec![(xi.clone(), a)];
    let mut rels = match (source, target) {
        (Word::E, Word::E) => vec![],
        (Word::E, Word::S) => vec![swap(Diagram::U, Diagram::Uh)],
        (Word::S, Word::E) => vec![swap(Diagram::D, Diagram::Hd)],
        (Word::S, Word::S) => vec![kill(Diagram::H), swap(Diagram::Beta, Diagram::Hbeta)],
    };
    if which == Presentation::Complete {
        match (source, target) {
            (Word::E, Word::S) => rels.push(kill(Diagram::Uh)),
            (Word::S, Word::E) => rels.push(kill(Diagram::Hd)),
            (Word::S, Word::S) => {
                rels.push(kill(Diagram::Hbeta));
                rels.push(swap(Diagram::L, Diagram::H));
            }
            (Word::E, Word::E) => {}
        }
    }
    rels
}

/// Dimension of a graded piece of the presented module, by rank: the free
/// module on (monomial, diagram) minus the span of all monomial multiples of
/// the relations. Independent of the normal-form code.
pub fn presentation_dim(source: Word, target: Word, degree: TriDegree, which: Presentation, coeffs: Coefficients) -> usize {
    let mut index: BTreeMap<(Diagram, Monomial), usize> = BTreeMap::new();
    for &d in Diagram::between(source, target) {
        for m in enumerate_monomials(degree - d.degree(), coeffs.generators()) {
            let n = index.len();
            index.insert((d, m), n);
        }
    }
    let free = index.len();
    if free == 0 {
        return 0;
    }
    let mut columns = Vec::new();
    for rel in presentation_relations(source, target, which) {
        let (c0, d0) = &rel[0];
        let rdeg = c0.degree().expect("homogeneous relation") + d0.degree();
        for n in enumerate_monomials(degree - rdeg, coeffs.generators()) {
            let mut col = vec![Scalar::zero(); free];
            let nel = AlgebraElement::term(n, Scalar::one());
            for (c, d) in &rel {
                for (p, v) in nel.mul(c).terms() {
                    col[index[&(*d, *p)]] += v;
                }
            }
            columns.push(col);
        }
    }
    if columns.is_empty() {
        return free;
    }
    free - Matrix::from_columns(free, &columns).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::consts::*;
    use Diagram::*;

    fn g(x: Generator) -> AlgebraElement {
        AlgebraElement::gen(x)
    }

    fn dia(d: Diagram) -> HomElement {
        HomElement::diagram(d)
    }

    #[test]
    fn composition_examples() {
        assert_eq!(dia(D).compose(&dia(U)).unwrap(), HomElement::with_coeff(&alpha_s(), One));
        assert_eq!(dia(Hd).compose(&dia(U)).unwrap(), HomElement::with_coeff(&xi_s(), One));
        assert_eq!(dia(D).compose(&dia(Uh)).unwrap(), HomElement::with_coeff(&xi_s(), One));
        assert!(dia(H).compose(&dia(H)).unwrap().is_zero());
        assert_eq!(dia(H).compose(&dia(Beta)).unwrap(), dia(Hbeta));
        assert_eq!(dia(Beta).compose(&dia(H)).unwrap(), dia(Hbeta));
        assert_eq!(dia(U).compose(&dia(Hd)).unwrap(), dia(Uh).compose(&dia(D)).unwrap());
        assert!(dia(U).compose(&dia(U)).is_err());
    }

    #[test]
    fn left_box_examples() {
        assert_eq!(dia(U).left_box(&xi_s()), HomElement::with_coeff(&alpha_s(), Uh));
        assert!(dia(H).left_box(&xi_s()).is_zero());
        assert_eq!(dia(Hd).left_box(&AlgebraElement::one()), dia(Hd));
    }

    #[test]
    fn torsion_examples() {
        assert!(dia(Uh).left_box(&(&alpha_s() * &xi_s())).is_zero());
        let c = &(&alpha_s() * &g(Generator::X2)) * &xi_s();
        assert!(dia(Hd).left_box(&c).is_zero());
    }

    #[test]
    fn right_box_examples() {
        let r = dia(L).right_box(&g(Generator::Xi1)).unwrap();
        assert_eq!(r, HomElement::with_coeff(&g(Generator::Xi2), L).add(&dia(Hbeta)));
        let r = dia(L).right_box(&g(Generator::X1)).unwrap();
        assert_eq!(r, HomElement::with_coeff(&g(Generator::X2), L).add(&dia(Beta)));
        let f = &theta() + &g(Generator::X1);
        assert_eq!(dia(One).right_box(&f).unwrap(), HomElement::with_coeff(&f, One));
        assert!(dia(L).right_box(&g(Generator::Y1)).is_err());
        assert!(dia(H).right_box(&xi_s()).unwrap().is_zero());
    }

    #[test]
    fn derived_relations_hold() {
        assert_eq!(dia(U).compose(&dia(Hd)).unwrap(), dia(Uh).compose(&dia(D)).unwrap());
        assert_eq!(dia(D).left_box(&xi_s()), dia(Hd).left_box(&alpha_s()));
        assert_eq!(dia(U).left_box(&xi_s()), dia(Uh).left_box(&alpha_s()));
        assert!(dia(H).left_box(&xi_s()).is_zero());
        assert!(dia(H).right_box(&xi_s()).unwrap().is_zero());
    }

    fn sample_elements(source: Word, target: Word) -> Vec<HomElement> {
        let coeffs = [
            AlgebraElement::one(),
            g(Generator::Xi1),
            g(Generator::Xi2),
            &g(Generator::Nu1) * &g(Generator::Xi1),
            &g(Generator::X1) + &g(Generator::Y2),
            &g(Generator::Xi1) * &g(Generator::Xi2),
        ];
        let mut out = Vec::new();
        for &d in Diagram::between(source, target) {
            for c in &coeffs {
                out.push(HomElement::with_coeff(c, d));
            }
        }
        out
    }

    #[test]
    fn composition_is_associative_on_basis_products() {
        let words = [Word::E, Word::S];
        for &a in &words {
            for &b in &words {
                for &c in &words {
                    for &d in &words {
                        for f in sample_elements(a, b) {
                            for gg in sample_elements(b, c) {
                                for hh in sample_elements(c, d) {
                                    let l = hh.compose(&gg).unwrap().compose(&f).unwrap();
                                    let r = hh.compose(&gg.compose(&f).unwrap()).unwrap();
                                    assert_eq!(l, r, "({hh}) ({gg}) ({f})");
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn right_box_is_an_action() {
        let gens = [Generator::X1, Generator::X2, Generator::Xi1, Generator::Xi2];
        for &d in &Diagram::ALL {
            for &a in &gens {
                for &b in &gens {
                    let x = dia(d);
                    let ab = &g(a) * &g(b);
                    let lhs = x.right_box(&ab).unwrap();
                    let rhs = x.right_box(&g(a)).unwrap().right_box(&g(b)).unwrap();
                    assert_eq!(lhs, rhs, "{d} {a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn hom_dim_examples() {
        let e = ObjectLabel::plain(Word::E);
        let s = ObjectLabel::plain(Word::S);
        assert_eq!(dim_in_degree(&e, &s, TriDegree::new(0, 1, 0)), 1);
        assert_eq!(dim_in_degree(&e, &s, TriDegree::new(0, 1, 1)), 3);
        assert_eq!(dim_in_degree(&e, &e, TriDegree::ZERO), 1);
        for which in [Presentation::Printed, Presentation::Complete] {
            assert_eq!(presentation_dim(Word::E, Word::S, TriDegree::new(0, 1, 1), which, Coefficients::Ext), 3);
        }
        // y·ν1ν2 has the degree of x, so base change adds two more.
        assert_eq!(dim_in_degree_with(&e, &s, TriDegree::new(0, 1, 1), Coefficients::Full), 5);
    }

    #[test]
    fn json_round_trip() {
        let x = HomElement::with_coeff(&theta(), Beta).add(&HomElement::with_coeff(&nu_s(), Hbeta));
        assert_eq!(HomElement::from_json(&x.to_json()).unwrap(), x);
    }
}
