//! Seeded random elements for the property checks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{enumerate_monomials, AlgebraElement, Generator, Monomial, TriDegree};
use crate::fm::{candidate_basis, DiagramSequence, SeqMorphism, Summand};
use crate::hom::{Coefficients, Diagram, HomElement, Word};
use crate::scalar::{Field, Scalar};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// A small nonzero scalar.
pub fn scalar(rng: &mut SampleRng, field: Field) -> Scalar {
    loop {
        let c = Scalar::from_i64(rng.gen_range(-4i64..=4)).in_field(field);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random monomial with small exponents, using only `allowed`.
pub fn monomial(rng: &mut SampleRng, allowed: &[Generator]) -> Monomial {
    let mut exps = [0u16; 8];
    for g in allowed {
        let cap = if g.is_odd() { 1 } else { 2 };
        exps[g.index()] = rng.gen_range(0..=cap);
    }
    Monomial::from_exponents(exps).expect("exterior exponents capped")
}

/// Random combination of at most `terms` monomials of degree `d`.
pub fn algebra_in_degree(rng: &mut SampleRng, d: TriDegree, allowed: &[Generator], terms: usize, field: Field) -> AlgebraElement {
    let mut mons = enumerate_monomials(d, allowed);
    mons.shuffle(rng);
    let mut out = AlgebraElement::zero();
    for m in mons.into_iter().take(terms) {
        out.add_term(m, scalar(rng, field));
    }
    out
}

/// A random nonzero homogeneous element.
pub fn homogeneous(rng: &mut SampleRng, allowed: &[Generator], field: Field) -> AlgebraElement {
    let d = monomial(rng, allowed).degree();
    let a = algebra_in_degree(rng, d, allowed, 3, field);
    if a.is_zero() {
        AlgebraElement::scalar(scalar(rng, field))
    } else {
        a
    }
}

/// A random homogeneous morphism between two words.
pub fn hom(rng: &mut SampleRng, source: Word, target: Word, coeffs: Coefficients, field: Field) -> HomElement {
    let d: Diagram = *Diagram::between(source, target).choose(rng).expect("nonempty");
    HomElement::with_coeff(&homogeneous(rng, coeffs.generators(), field), d)
}

/// A random short sequence of summands with small shifts.
pub fn sequence(rng: &mut SampleRng, words: &[Word]) -> DiagramSequence {
    sequence_with(rng, words, 1)
}

/// As [`sequence`], with Hochschild shifts in `0..=max_hochschild`.
pub fn sequence_with(rng: &mut SampleRng, words: &[Word], max_hochschild: i64) -> DiagramSequence {
    let n = rng.gen_range(1..=2);
    let mut summands: Vec<Summand> = (0..n)
        .map(|_| {
            let w = *words.choose(rng).expect("nonempty");
            Summand::new(rng.gen_range(-1..=1), w, rng.gen_range(-1..=1), rng.gen_range(0..=max_hochschild))
        })
        .collect();
    summands.sort();
    DiagramSequence::new(summands)
}

/// A random homogeneous morphism `source → target`, nonzero unless the
/// canonical form of the seed term vanishes.
pub fn seq_morphism(
    rng: &mut SampleRng,
    source: &DiagramSequence,
    target: &DiagramSequence,
    coeffs: Coefficients,
    field: Field,
) -> (TriDegree, SeqMorphism) {
    let r = rng.gen_range(0..target.len());
    let c = rng.gen_range(0..source.len());
    let d: Diagram = *Diagram::between(source.get(c).word(), target.get(r).word()).choose(rng).expect("nonempty");
    let allowed: Vec<Generator> =
        coeffs.generators().iter().copied().filter(|g| d == Diagram::One || *g != Generator::Xi1).collect();
    let m = monomial(rng, &allowed);
    let seed = SeqMorphism::single(source, target, r, c, d, m);
    let deg = seed.term_degree(r, c, d, &m);
    let mut cands = candidate_basis(source, target, deg, coeffs);
    cands.shuffle(rng);
    let mut f = seed.scale(&scalar(rng, field));
    for cand in cands.into_iter().take(2) {
        f = f.add(&cand.morphism(source, target).scale(&scalar(rng, field))).expect("parallel");
    }
    (deg, f)
}
