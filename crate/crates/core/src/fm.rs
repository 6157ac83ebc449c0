//! Diagram sequences, their morphisms, and free-monodromic complexes.
//!
//! A morphism is a matrix of [`HomElement`]s; block `(r, c)` maps source
//! summand `c` to target summand `r`. A term `a·D` in that block has degree
//!
//! ```text
//! ( i(a) + pos_r - pos_c,  j(a) + j(D) - (m_r - m_c),  k(a) + k(D) - (n_r - n_c) )
//! ```
//!
//! and, when composing, its diagram carries cohomological degree
//! `pos_r - pos_c` for the purpose of Koszul signs.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Generator, Monomial, TriDegree};
use crate::error::{FmkError, Result};
use crate::hom::{canonical_basis, identity_star, star_hom, Coefficients, Diagram, HomElement, ObjectLabel, Word};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Summand {
    pub position: i64,
    pub label: ObjectLabel,
}

impl Summand {
    pub fn new(position: i64, word: Word, soergel_shift: i64, hochschild_shift: i64) -> Self {
        Summand { position, label: ObjectLabel::new(word, soergel_shift, hochschild_shift) }
    }

    pub fn word(&self) -> Word {
        self.label.word
    }
}

/// An ordered list of summands, each sitting at a cohomological position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagramSequence {
    pub summands: Vec<Summand>,
}

impl DiagramSequence {
    pub fn new(summands: Vec<Summand>) -> Self {
        DiagramSequence { summands }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn get(&self, i: usize) -> &Summand {
        &self.summands[i]
    }

    /// `F⋆G`: summands ordered by position, then by the index in `F`, then `G`.
    /// Also returns, for each new summand, the pair of indices it came from.
    pub fn star(&self, other: &DiagramSequence) -> Result<(DiagramSequence, Vec<(usize, usize)>)> {
        let mut pairs = Vec::new();
        for (a, x) in self.summands.iter().enumerate() {
            for (b, y) in other.summands.iter().enumerate() {
                let word = x.word().star(y.word()).ok_or_else(|| {
                    FmkError::Unsupported("product of two sequences both containing B_s".into())
                })?;
                let s = Summand {
                    position: x.position + y.position,
                    label: ObjectLabel::new(
                        word,
                        x.label.soergel_shift + y.label.soergel_shift,
                        x.label.hochschild_shift + y.label.hochschild_shift,
                    ),
                };
                pairs.push(((s.position, a, b), s));
            }
        }
        pairs.sort_by_key(|(k, _)| *k);
        let index = pairs.iter().map(|((_, a, b), _)| (*a, *b)).collect();
        Ok((DiagramSequence::new(pairs.into_iter().map(|(_, s)| s).collect()), index))
    }

    /// `F[l](m)⟦n⟧`.
    pub fn shift(&self, t: ShiftTriple) -> DiagramSequence {
        DiagramSequence::new(
            self.summands
                .iter()
                .map(|s| Summand { position: s.position - t.l, label: s.label.shifted(t.m, t.n) })
                .collect(),
        )
    }
}

impl fmt::Display for DiagramSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|s| format!("{}@{}", s.label, s.position)).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `[l](m)⟦n⟧`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftTriple {
    pub l: i64,
    pub m: i64,
    pub n: i64,
}

impl ShiftTriple {
    pub fn new(l: i64, m: i64, n: i64) -> Self {
        ShiftTriple { l, m, n }
    }

    /// `⟨1⟩ = [1](-1)`.
    pub fn tate() -> Self {
        ShiftTriple::new(1, -1, 0)
    }

    pub fn then(self, other: ShiftTriple) -> ShiftTriple {
        ShiftTriple::new(self.l + other.l, self.m + other.m, self.n + other.n)
    }
}

/// Coordinates of a morphism: `(row, col, diagram, monomial) → coefficient`.
pub type Coordinates = BTreeMap<(usize, usize, Diagram, Monomial), Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqMorphism {
    source: DiagramSequence,
    target: DiagramSequence,
    blocks: BTreeMap<(usize, usize), HomElement>,
}

impl SeqMorphism {
    pub fn zero(source: &DiagramSequence, target: &DiagramSequence) -> Self {
        SeqMorphism { source: source.clone(), target: target.clone(), blocks: BTreeMap::new() }
    }

    pub fn identity(seq: &DiagramSequence) -> Self {
        let mut f = SeqMorphism::zero(seq, seq);
        for (i, s) in seq.summands.iter().enumerate() {
            f.blocks.insert((i, i), HomElement::identity(s.word()));
        }
        f
    }

    /// Builds from 0-based `(row, col, entry)` triples; repeated blocks add.
    pub fn from_blocks(
        source: &DiagramSequence,
        target: &DiagramSequence,
        entries: impl IntoIterator<Item = (usize, usize, HomElement)>,
    ) -> Result<Self> {
        let mut f = SeqMorphism::zero(source, target);
        for (r, c, e) in entries {
            f.add_block(r, c, &e)?;
        }
        Ok(f)
    }

    pub fn source(&self) -> &DiagramSequence {
        &self.source
    }

    pub fn target(&self) -> &DiagramSequence {
        &self.target
    }

    /// Block `(r, c)`, 0-based; zero if absent.
    pub fn block(&self, r: usize, c: usize) -> HomElement {
        self.blocks.get(&(r, c)).cloned().unwrap_or_else(|| {
            HomElement::zero(self.source.get(c).word(), self.target.get(r).word())
        })
    }

    /// Nonzero blocks.
    pub fn blocks(&self) -> impl Iterator<Item = (&(usize, usize), &HomElement)> {
        self.blocks.iter()
    }

    pub fn add_block(&mut self, r: usize, c: usize, e: &HomElement) -> Result<()> {
        if r >= self.target.len() || c >= self.source.len() {
            return Err(FmkError::ObjectMismatch(format!("block ({r},{c}) out of range")));
        }
        let (sw, tw) = (self.source.get(c).word(), self.target.get(r).word());
        if e.source() != sw || e.target() != tw {
            return Err(FmkError::ObjectMismatch(format!(
                "block ({r},{c}) needs {sw}->{tw}, got {}->{}",
                e.source(),
                e.target()
            )));
        }
        let sum = self.block(r, c).add(e);
        if sum.is_zero() {
            self.blocks.remove(&(r, c));
        } else {
            self.blocks.insert((r, c), sum);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    fn check_parallel(&self, other: &SeqMorphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(FmkError::ObjectMismatch("adding morphisms between different sequences".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &SeqMorphism) -> Result<SeqMorphism> {
        self.check_parallel(other)?;
        let mut out = self.clone();
        for ((r, c), e) in &other.blocks {
            out.add_block(*r, *c, e)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SeqMorphism) -> Result<SeqMorphism> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SeqMorphism {
        self.scale(&Scalar::from_i64(-1))
    }

    pub fn scale(&self, c: &Scalar) -> SeqMorphism {
        self.map_blocks(|e| e.scale(c))
    }

    pub fn left_box(&self, a: &AlgebraElement) -> SeqMorphism {
        self.map_blocks(|e| e.left_box(a))
    }

    pub fn in_field(&self, field: Field) -> SeqMorphism {
        self.map_blocks(|e| e.in_field(field))
    }

    fn map_blocks(&self, f: impl Fn(&HomElement) -> HomElement) -> SeqMorphism {
        let mut out = SeqMorphism::zero(&self.source, &self.target);
        for (k, e) in &self.blocks {
            let v = f(e);
            if !v.is_zero() {
                out.blocks.insert(*k, v);
            }
        }
        out
    }

    fn position_shift(&self, r: usize, c: usize) -> i64 {
        self.target.get(r).position - self.source.get(c).position
    }

    /// Degree of a term `a·D` placed in block `(r, c)`.
    pub fn term_degree(&self, r: usize, c: usize, d: Diagram, m: &Monomial) -> TriDegree {
        let (s, t) = (self.source.get(c), self.target.get(r));
        let hom = m.degree() + d.degree();
        TriDegree::new(
            hom.i + t.position - s.position,
            hom.j - (t.label.soergel_shift - s.label.soergel_shift),
            hom.k - (t.label.hochschild_shift - s.label.hochschild_shift),
        )
    }

    /// Homogeneous components keyed by degree.
    pub fn components(&self) -> BTreeMap<TriDegree, SeqMorphism> {
        let mut out: BTreeMap<TriDegree, SeqMorphism> = BTreeMap::new();
        for ((r, c), e) in &self.blocks {
            for ((d, m), a) in e.terms() {
                let deg = self.term_degree(*r, *c, *d, m);
                let piece = HomElement::from_raw_terms(e.source(), e.target(), [(*d, *m, a.clone())]).expect("same type");
                out.entry(deg)
                    .or_insert_with(|| SeqMorphism::zero(&self.source, &self.target))
                    .add_block(*r, *c, &piece)
                    .expect("same shape");
            }
        }
        out
    }

    /// Degree if homogeneous and nonzero.
    pub fn degree(&self) -> Option<TriDegree> {
        let comps = self.components();
        (comps.len() == 1).then(|| *comps.keys().next().expect("one component"))
    }

    /// True if every term has degree `d` (the zero morphism has every degree).
    pub fn has_degree(&self, d: TriDegree) -> bool {
        self.components().keys().all(|k| *k == d)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SeqMorphism) -> Result<SeqMorphism> {
        if self.source != other.target {
            return Err(FmkError::ObjectMismatch(format!(
                "composing through {} and {}",
                self.source, other.target
            )));
        }
        let mut out = SeqMorphism::zero(&other.source, &self.target);
        for ((r, mid), g) in &self.blocks {
            let shift = self.position_shift(*r, *mid);
            for ((mid2, c), f) in &other.blocks {
                if mid2 != mid {
                    continue;
                }
                let p = g.compose_shifted(f, shift)?;
                if !p.is_zero() {
                    out.add_block(*r, *c, &p)?;
                }
            }
        }
        Ok(out)
    }

    pub fn kappa(&self) -> SeqMorphism {
        self.map_blocks(HomElement::kappa)
    }

    /// `f[l](m)⟦n⟧`, with the sign `(-1)^{l·i}` on the degree-`i` part.
    pub fn shift(&self, t: ShiftTriple) -> SeqMorphism {
        let src = self.source.shift(t);
        let tgt = self.target.shift(t);
        let mut out = SeqMorphism::zero(&src, &tgt);
        for (deg, comp) in self.components() {
            let sign = if (t.l * deg.i).rem_euclid(2) == 1 { Scalar::from_i64(-1) } else { Scalar::one() };
            for ((r, c), e) in comp.blocks {
                out.add_block(r, c, &e.scale(&sign)).expect("same shape");
            }
        }
        out
    }

    /// Flattened coordinates in normal form.
    pub fn coordinates(&self) -> Coordinates {
        let mut out = Coordinates::new();
        for ((r, c), e) in &self.blocks {
            for ((d, m), a) in e.terms() {
                out.insert((*r, *c, *d, *m), a.clone());
            }
        }
        out
    }

    /// Builds a morphism with a single term `a·D` in block `(r, c)`.
    pub fn single(source: &DiagramSequence, target: &DiagramSequence, r: usize, c: usize, d: Diagram, m: Monomial) -> Self {
        let e = HomElement::with_coeff(&AlgebraElement::term(m, Scalar::one()), d);
        SeqMorphism::from_blocks(source, target, [(r, c, e)]).expect("valid block")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "source": self.source,
            "target": self.target,
            "matrix": self.matrix_json(),
        })
    }

    fn matrix_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.target.len())
            .map(|r| {
                let row: Vec<serde_json::Value> = (0..self.source.len())
                    .map(|c| match self.blocks.get(&(r, c)) {
                        Some(e) => e.to_json(),
                        None => serde_json::Value::Null,
                    })
                    .collect();
                serde_json::Value::Array(row)
            })
            .collect();
        serde_json::Value::Array(rows)
    }

    fn from_matrix_json(source: &DiagramSequence, target: &DiagramSequence, m: &serde_json::Value) -> Result<Self> {
        let rows = m.as_array().ok_or_else(|| FmkError::Serde("matrix must be an array".into()))?;
        let mut out = SeqMorphism::zero(source, target);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| FmkError::Serde("row must be an array".into()))?;
            for (c, v) in row.iter().enumerate() {
                if !v.is_null() {
                    out.add_block(r, c, &HomElement::from_json(v)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let seq = |key: &str| -> Result<DiagramSequence> {
            serde_json::from_value(v.get(key).cloned().unwrap_or_default()).map_err(|e| FmkError::Serde(format!("{key}: {e}")))
        };
        SeqMorphism::from_matrix_json(&seq("source")?, &seq("target")?, v.get("matrix").unwrap_or(&serde_json::Value::Null))
    }
}

impl fmt::Display for SeqMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "0");
        }
        for (n, ((r, c), e)) in self.blocks.iter().enumerate() {
            if n > 0 {
                write!(f, "; ")?;
            }
            write!(f, "({},{}): {e}", r + 1, c + 1)?;
        }
        Ok(())
    }
}

/// `Θ_F = Σ_i y_i ⊗ (id_F ⋆ x_i)`.
pub fn theta_big(seq: &DiagramSequence) -> SeqMorphism {
    let mut out = SeqMorphism::zero(seq, seq);
    for (i, s) in seq.summands.iter().enumerate() {
        for (y, x) in [(Generator::Y1, Generator::X1), (Generator::Y2, Generator::X2)] {
            let forced = identity_star(s.word(), &AlgebraElement::gen(x)).expect("x always slides");
            out.add_block(i, i, &forced.left_box(&AlgebraElement::gen(y))).expect("diagonal");
        }
    }
    out
}

/// One offending block of a failed identity, with both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDiff {
    /// 1-based `(row, column)`.
    pub block: (usize, usize),
    pub expected: String,
    pub actual: String,
}

/// Blocks where `actual` and `expected` differ.
pub fn diff_blocks(actual: &SeqMorphism, expected: &SeqMorphism) -> Vec<BlockDiff> {
    let mut keys: Vec<(usize, usize)> = actual.blocks.keys().chain(expected.blocks.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|(r, c)| {
            let (a, e) = (actual.block(r, c), expected.block(r, c));
            (a != e).then(|| BlockDiff { block: (r + 1, c + 1), expected: e.to_string(), actual: a.to_string() })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureFailure {
    pub reason: String,
    pub blocks: Vec<BlockDiff>,
}

impl fmt::Display for CurvatureFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reason)?;
        for b in &self.blocks {
            write!(f, "\n  block {:?}: expected {}, got {}", b.block, b.expected, b.actual)?;
        }
        Ok(())
    }
}

/// A sequence with a differential satisfying `κ(δ) + δ∘δ = Θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMObject {
    seq: DiagramSequence,
    delta: SeqMorphism,
}

impl FMObject {
    pub fn seq(&self) -> &DiagramSequence {
        &self.seq
    }

    pub fn delta(&self) -> &SeqMorphism {
        &self.delta
    }

    pub fn in_field(&self, field: Field) -> FMObject {
        FMObject { seq: self.seq.clone(), delta: self.delta.in_field(field) }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "sequence": self.seq, "delta": self.delta.matrix_json() })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FMObject> {
        let seq: DiagramSequence = serde_json::from_value(v.get("sequence").cloned().unwrap_or_default())
            .map_err(|e| FmkError::Serde(format!("sequence: {e}")))?;
        let delta = SeqMorphism::from_matrix_json(&seq, &seq, v.get("delta").unwrap_or(&serde_json::Value::Null))?;
        check_curved(&seq, &delta).map_err(|e| FmkError::Domain(e.to_string()))
    }
}

/// Validates `κ(δ) + δ∘δ = Θ_F`.
pub fn check_curved(seq: &DiagramSequence, delta: &SeqMorphism) -> std::result::Result<FMObject, CurvatureFailure> {
    if delta.source() != seq || delta.target() != seq {
        return Err(CurvatureFailure { reason: "differential is not an endomorphism of the sequence".into(), blocks: vec![] });
    }
    if !delta.has_degree(TriDegree::new(1, 0, 0)) {
        let degs: Vec<String> = delta.components().keys().map(|d| d.to_string()).collect();
        return Err(CurvatureFailure { reason: format!("differential has degrees {} instead of (1,0,0)", degs.join(", ")), blocks: vec![] });
    }
    let square = delta.compose(delta).expect("endomorphism");
    let lhs = delta.kappa().add(&square).expect("parallel");
    let theta = theta_big(seq);
    let blocks = diff_blocks(&lhs, &theta);
    if blocks.is_empty() {
        Ok(FMObject { seq: seq.clone(), delta: delta.clone() })
    } else {
        Err(CurvatureFailure { reason: "κ(δ) + δ∘δ differs from Θ".into(), blocks })
    }
}

/// `f ↦ κ(f) + δ'∘f - (-1)^{|f|} f∘δ`, applied degree by degree.
pub fn hom_differential(f: &SeqMorphism, source: &FMObject, target: &FMObject) -> Result<SeqMorphism> {
    if f.source() != source.seq() || f.target() != target.seq() {
        return Err(FmkError::ObjectMismatch("morphism does not match the given complexes".into()));
    }
    let mut out = SeqMorphism::zero(source.seq(), target.seq());
    for (deg, comp) in f.components() {
        let mut part = comp.kappa().add(&target.delta.compose(&comp)?)?;
        let right = comp.compose(&source.delta)?;
        part = if deg.i.rem_euclid(2) == 0 { part.sub(&right)? } else { part.add(&right)? };
        out = out.add(&part)?;
    }
    Ok(out)
}

pub fn is_closed(f: &SeqMorphism, source: &FMObject, target: &FMObject) -> Result<bool> {
    Ok(hom_differential(f, source, target)?.is_zero())
}

/// True if `f = κ(h) + δ'∘h + (-1)^{|f|} h∘δ`.
pub fn verify_homotopy(f: &SeqMorphism, h: &SeqMorphism, source: &FMObject, target: &FMObject) -> Result<bool> {
    Ok(hom_differential(h, source, target)? == *f)
}

/// One basis vector of a candidate space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Candidate {
    pub row: usize,
    pub col: usize,
    pub diagram: Diagram,
    pub monomial: Monomial,
}

impl Candidate {
    pub fn morphism(&self, source: &DiagramSequence, target: &DiagramSequence) -> SeqMorphism {
        SeqMorphism::single(source, target, self.row, self.col, self.diagram, self.monomial)
    }
}

/// Normal-form basis of all morphisms `source → target` of the given degree.
pub fn candidate_basis(source: &DiagramSequence, target: &DiagramSequence, degree: TriDegree, coeffs: Coefficients) -> Vec<Candidate> {
    let mut out = Vec::new();
    for (r, t) in target.summands.iter().enumerate() {
        for (c, s) in source.summands.iter().enumerate() {
            let hom = s.label.raw_degree(&t.label, TriDegree::new(degree.i - (t.position - s.position), degree.j, degree.k));
            for (d, m) in canonical_basis(s.word(), t.word(), hom, coeffs) {
                out.push(Candidate { row: r, col: c, diagram: d, monomial: m });
            }
        }
    }
    out
}

/// Columns of a linear map on candidates, as coordinate vectors over a shared index.
pub(crate) fn coordinate_matrix(images: &[Coordinates], extra: Option<&Coordinates>) -> (Matrix, Vec<Scalar>) {
    let mut index: BTreeMap<(usize, usize, Diagram, Monomial), usize> = BTreeMap::new();
    for img in images.iter().chain(extra) {
        for k in img.keys() {
            let n = index.len();
            index.entry(*k).or_insert(n);
        }
    }
    let rows = index.len();
    let columns: Vec<Vec<Scalar>> = images
        .iter()
        .map(|img| {
            let mut col = vec![Scalar::zero(); rows];
            for (k, v) in img {
                col[index[k]] = v.clone();
            }
            col
        })
        .collect();
    let mut rhs = vec![Scalar::zero(); rows];
    if let Some(e) = extra {
        for (k, v) in e {
            rhs[index[k]] = v.clone();
        }
    }
    (Matrix::from_columns(rows, &columns), rhs)
}

/// Searches for `h` with `f = κ(h) + δ'∘h + (-1)^{|f|} h∘δ`.
///
/// Returns `Ok(None)` if the exact linear system over all candidates of
/// degree `|f| - (1,0,0)` has no solution.
pub fn is_exact(f: &SeqMorphism, source: &FMObject, target: &FMObject, field: Field) -> Result<Option<SeqMorphism>> {
    if f.is_zero() {
        return Ok(Some(SeqMorphism::zero(source.seq(), target.seq())));
    }
    let deg = f.degree().ok_or_else(|| FmkError::DegreeMismatch("is_exact needs a homogeneous morphism".into()))?;
    let src = source.in_field(field);
    let tgt = target.in_field(field);
    let f = f.in_field(field);
    let hdeg = deg - TriDegree::new(1, 0, 0);
    let basis = candidate_basis(src.seq(), tgt.seq(), hdeg, Coefficients::Full);
    let images: Vec<Coordinates> = basis
        .iter()
        .map(|c| hom_differential(&c.morphism(src.seq(), tgt.seq()), &src, &tgt).map(|m| m.coordinates()))
        .collect::<Result<_>>()?;
    let target_coords = f.coordinates();
    let (mat, rhs) = coordinate_matrix(&images, Some(&target_coords));
    let rhs: Vec<Scalar> = rhs.into_iter().map(|s| s.in_field(field)).collect();
    let Some(sol) = mat.solve(&rhs) else { return Ok(None) };
    let mut h = SeqMorphism::zero(src.seq(), tgt.seq());
    for (cand, coef) in basis.iter().zip(&sol.particular) {
        if !coef.is_zero() {
            h = h.add(&cand.morphism(src.seq(), tgt.seq()).scale(coef))?;
        }
    }
    Ok(Some(h))
}

/// `f ⋆ g`, blockwise the monoidal product of entries times `(-1)^ε` with
/// `ε = p·i' + n·k' + k_f·n'`: `p` and `n` are the position and Hochschild
/// shift of the source summand of `f`, `i'` and `k'` the degree of the `g`
/// term, `k_f` the unshifted Hochschild degree of the `f` entry and `n'` the
/// Hochschild shift of the target summand of `g`.
pub fn star_mor(f: &SeqMorphism, g: &SeqMorphism) -> Result<SeqMorphism> {
    let (src, src_idx) = f.source().star(g.source())?;
    let (tgt, tgt_idx) = f.target().star(g.target())?;
    let find = |idx: &[(usize, usize)], a: usize, b: usize| idx.iter().position(|p| *p == (a, b)).expect("index pair");
    let mut out = SeqMorphism::zero(&src, &tgt);
    for (fdeg, fcomp) in f.components() {
        for (gdeg, gcomp) in g.components() {
            for ((ra, ca), fe) in &fcomp.blocks {
                let (fs, ft) = (f.source().get(*ca), f.target().get(*ra));
                let raw_fk = fdeg.k - (ft.label.hochschild_shift - fs.label.hochschild_shift);
                for ((rb, cb), ge) in &gcomp.blocks {
                    let n_tgt = g.target().get(*rb).label.hochschild_shift;
                    let eps = fs.position * gdeg.i + fs.label.hochschild_shift * gdeg.k + raw_fk * n_tgt;
                    let sign = if eps.rem_euclid(2) == 1 { Scalar::from_i64(-1) } else { Scalar::one() };
                    let e = star_hom(fe, ge)?.scale(&sign);
                    if !e.is_zero() {
                        out.add_block(find(&tgt_idx, *ra, *rb), find(&src_idx, *ca, *cb), &e)?;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The built-in complexes and morphisms.
pub mod builtins {
    use super::*;
    use crate::algebra::consts::*;

    fn e(c: &AlgebraElement, d: Diagram) -> HomElement {
        HomElement::with_coeff(c, d)
    }

    fn one() -> AlgebraElement {
        AlgebraElement::one()
    }

    pub fn t_empty_seq() -> DiagramSequence {
        DiagramSequence::new(vec![Summand::new(0, Word::E, 0, 0)])
    }

    /// `B_∅(-1)` at -1, `B_s` at 0, `B_∅(1)` at 1.
    pub fn t_s_seq() -> DiagramSequence {
        DiagramSequence::new(vec![
            Summand::new(-1, Word::E, -1, 0),
            Summand::new(0, Word::S, 0, 0),
            Summand::new(1, Word::E, 1, 0),
        ])
    }

    pub fn t_empty_delta() -> SeqMorphism {
        let s = t_empty_seq();
        SeqMorphism::from_blocks(&s, &s, [(0, 0, e(&theta(), Diagram::One))]).expect("valid")
    }

    /// The differential entries of `T̃_s`, 0-based.
    pub fn t_s_delta_entries() -> Vec<(usize, usize, HomElement)> {
        vec![
            (0, 0, e(&theta(), Diagram::One)),
            (1, 0, e(&one(), Diagram::U)),
            (1, 1, e(&theta_s(), Diagram::L)),
            (1, 2, e(&alpha_s_vee(), Diagram::U)),
            (2, 0, e(&nu_s().neg(), Diagram::One)),
            (2, 1, e(&one(), Diagram::D)),
            (2, 2, e(&theta_s(), Diagram::One)),
        ]
    }

    pub fn t_s_delta() -> SeqMorphism {
        let s = t_s_seq();
        SeqMorphism::from_blocks(&s, &s, t_s_delta_entries()).expect("valid")
    }

    pub fn t_empty() -> FMObject {
        check_curved(&t_empty_seq(), &t_empty_delta()).expect("T_empty is curved")
    }

    pub fn t_s() -> FMObject {
        check_curved(&t_s_seq(), &t_s_delta()).expect("T_s is curved")
    }

    /// Degree (-2,2,1) endomorphism of `T̃_s`.
    pub fn phi_s() -> SeqMorphism {
        let s = t_s_seq();
        SeqMorphism::from_blocks(
            &s,
            &s,
            [
                (0, 1, e(&nu_s().neg(), Diagram::Hd)),
                (0, 2, e(&xi_s().neg(), Diagram::One)),
                (1, 2, e(&nu_s(), Diagram::Uh)),
            ],
        )
        .expect("valid")
    }

    /// `T̃_∅ → T̃_s`, degree (1,-1,0).
    pub fn eta_s() -> SeqMorphism {
        SeqMorphism::from_blocks(
            &t_empty_seq(),
            &t_s_seq(),
            [(0, 0, e(&alpha_s_vee().neg(), Diagram::One)), (2, 0, e(&one(), Diagram::One))],
        )
        .expect("valid")
    }

    /// `T̃_s → T̃_∅`, degree (1,-1,0).
    pub fn eps_s() -> SeqMorphism {
        SeqMorphism::from_blocks(&t_s_seq(), &t_empty_seq(), [(0, 0, e(&one().neg(), Diagram::One))]).expect("valid")
    }

    /// The printed column `(-ξ_s, ν_s·uh, 0)`.
    pub fn eta_h_s() -> SeqMorphism {
        SeqMorphism::from_blocks(
            &t_empty_seq(),
            &t_s_seq(),
            [(0, 0, e(&xi_s().neg(), Diagram::One)), (1, 0, e(&nu_s(), Diagram::Uh))],
        )
        .expect("valid")
    }

    /// `ε̂_s ∘ φ̂_s`, equal to the row `(0, -ν_s·hd, ξ_s)`.
    pub fn eps_h_s() -> SeqMorphism {
        eps_s().compose(&phi_s()).expect("composable")
    }

    /// The row `(0, ν_s·hd, ξ_s)` exactly as printed, which is not closed.
    pub fn eps_h_s_as_printed() -> SeqMorphism {
        SeqMorphism::from_blocks(
            &t_s_seq(),
            &t_empty_seq(),
            [(0, 1, e(&nu_s(), Diagram::Hd)), (0, 2, e(&xi_s(), Diagram::One))],
        )
        .expect("valid")
    }

    /// The ξ-box endomorphism `ξ ⊗ id` of `T̃_∅`.
    pub fn xi_box(xi: &AlgebraElement) -> SeqMorphism {
        let s = t_empty_seq();
        SeqMorphism::from_blocks(&s, &s, [(0, 0, e(xi, Diagram::One))]).expect("valid")
    }

    /// `id ⋆ ξ - s(ξ) ⋆ id - α_s(ξ)·η̂ᴴ∘ε̂` on `T̃_s`.
    pub fn forcing_difference(xi: &AlgebraElement) -> Result<SeqMorphism> {
        let pairing = xi.alpha_pairing()?;
        let right = star_mor(&SeqMorphism::identity(&t_s_seq()), &xi_box(xi))?;
        let left = star_mor(&xi_box(&xi.s_action()), &SeqMorphism::identity(&t_s_seq()))?;
        let s = t_s_seq();
        if right.source() != &s || left.source() != &s {
            return Err(FmkError::ObjectMismatch("products with T_empty should reproduce T_s".into()));
        }
        let corr = eta_h_s().compose(&eps_s())?.scale(&pairing);
        right.sub(&left)?.sub(&corr)
    }

    /// `α_s(ξ)·uh` from `B_∅(1)` to `B_s`.
    pub fn forcing_witness(xi: &AlgebraElement) -> Result<SeqMorphism> {
        let pairing = xi.alpha_pairing()?;
        let s = t_s_seq();
        SeqMorphism::from_blocks(&s, &s, [(1, 2, e(&AlgebraElement::scalar(pairing), Diagram::Uh))])
    }

    pub fn object(name: &str) -> Option<FMObject> {
        match name {
            "T_empty" => Some(t_empty()),
            "T_s" => Some(t_s()),
            _ => None,
        }
    }

    /// Named morphisms with their source and target complexes.
    pub fn morphism(name: &str) -> Option<(SeqMorphism, FMObject, FMObject)> {
        Some(match name {
            "phi_s" => (phi_s(), t_s(), t_s()),
            "eta_s" => (eta_s(), t_empty(), t_s()),
            "eps_s" => (eps_s(), t_s(), t_empty()),
            "eta_h_s" => (eta_h_s(), t_empty(), t_s()),
            "eps_h_s" => (eps_h_s(), t_s(), t_empty()),
            _ => return None,
        })
    }

    pub const MORPHISM_NAMES: [&str; 5] = ["phi_s", "eta_s", "eps_s", "eta_h_s", "eps_h_s"];
}

#[cfg(test)]
mod tests {
    use super::builtins::*;
    use super::*;
    use crate::algebra::consts::*;

    fn e(c: &AlgebraElement, d: Diagram) -> HomElement {
        HomElement::with_coeff(c, d)
    }

    #[test]
    fn builtins_are_curved() {
        t_empty();
        t_s();
    }

    #[test]
    fn sign_mutation_is_rejected() {
        let s = t_s_seq();
        let mut entries = t_s_delta_entries();
        entries[4].2 = e(&nu_s(), Diagram::One);
        let delta = SeqMorphism::from_blocks(&s, &s, entries).unwrap();
        let err = check_curved(&s, &delta).unwrap_err();
        assert!(!err.blocks.is_empty());
    }

    #[test]
    fn theta_on_single_s() {
        let s = DiagramSequence::new(vec![Summand::new(0, Word::S, 0, 0)]);
        let y1 = AlgebraElement::gen(Generator::Y1);
        let y2 = AlgebraElement::gen(Generator::Y2);
        let x1 = AlgebraElement::gen(Generator::X1);
        let x2 = AlgebraElement::gen(Generator::X2);
        let expected = e(&(&y1 * &x2), Diagram::L)
            .add(&e(&y1, Diagram::Beta))
            .add(&e(&(&y2 * &x1), Diagram::L))
            .add(&e(&y2.neg(), Diagram::Beta));
        assert_eq!(theta_big(&s).block(0, 0), expected);
        assert!(theta_big(&DiagramSequence::default()).is_zero());
    }

    #[test]
    fn builtin_degrees() {
        assert_eq!(phi_s().degree(), Some(TriDegree::new(-2, 2, 1)));
        assert_eq!(eta_s().degree(), Some(TriDegree::new(1, -1, 0)));
        assert_eq!(eps_s().degree(), Some(TriDegree::new(1, -1, 0)));
        assert_eq!(eta_h_s().degree(), Some(TriDegree::new(-1, 1, 1)));
        assert_eq!(t_s_delta().degree(), Some(TriDegree::new(1, 0, 0)));
    }

    #[test]
    fn phi_is_closed() {
        assert!(is_closed(&phi_s(), &t_s(), &t_s()).unwrap());
    }

    #[test]
    fn identity_differential_vanishes() {
        let t = t_empty();
        assert!(hom_differential(&SeqMorphism::identity(t.seq()), &t, &t).unwrap().is_zero());
    }

    #[test]
    fn explicit_witness() {
        for xi in [AlgebraElement::gen(Generator::Xi1), AlgebraElement::gen(Generator::Xi2), xi_s()] {
            let f = forcing_difference(&xi).unwrap();
            let h = forcing_witness(&xi).unwrap();
            assert!(verify_homotopy(&f, &h, &t_s(), &t_s()).unwrap(), "ξ = {xi}");
        }
    }

    #[test]
    fn shifts() {
        let f = phi_s();
        let once = f.shift(ShiftTriple::new(1, 0, 0));
        assert_eq!(once.block(0, 1), f.block(0, 1));
        let g = eta_h_s();
        assert_eq!(g.shift(ShiftTriple::new(1, 0, 0)).block(0, 0), g.block(0, 0).neg());
        let t = ShiftTriple::tate();
        assert_eq!(t, ShiftTriple::new(1, 0, 0).then(ShiftTriple::new(0, -1, 0)));
    }

    #[test]
    fn json_round_trip() {
        let f = phi_s();
        assert_eq!(SeqMorphism::from_json(&f.to_json()).unwrap(), f);
        let t = t_s();
        assert_eq!(FMObject::from_json(&t.to_json()).unwrap(), t);
    }
}
