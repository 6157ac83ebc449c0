//! Degree-wise searches for closed morphisms and their cohomology.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::TriDegree;
use crate::error::Result;
use crate::fm::{candidate_basis, coordinate_matrix, hom_differential, Candidate, Coordinates, FMObject, SeqMorphism};
use crate::hom::Coefficients;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    pub quotient_by_exact: bool,
    pub report_shape: bool,
    pub want_basis: bool,
    /// Enumerate candidates in reverse order; dimensions must not change.
    pub reverse_order: bool,
}

#[derive(Clone, Debug)]
pub struct DegreeSearchProblem {
    pub source: FMObject,
    pub target: FMObject,
    pub degree: TriDegree,
    pub options: SearchOptions,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SearchReport {
    pub dim_candidates: usize,
    pub dim_closed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_cohomology: Option<usize>,
    /// Nonzero candidate counts per 1-based block `"r,c"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<BTreeMap<String, usize>>,
    /// Cohomology representatives when quotienting, otherwise closed basis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<serde_json::Value>>,
}

impl DegreeSearchProblem {
    pub fn new(source: FMObject, target: FMObject, degree: TriDegree) -> Self {
        DegreeSearchProblem { source, target, degree, options: SearchOptions::default() }
    }

    pub fn with_options(mut self, options: SearchOptions) -> Self {
        self.options = options;
        self
    }

    fn candidates_in(&self, degree: TriDegree) -> Vec<Candidate> {
        let mut c = candidate_basis(self.source.seq(), self.target.seq(), degree, Coefficients::Full);
        if self.options.reverse_order {
            c.reverse();
        }
        c
    }

    pub fn candidate_space(&self) -> Vec<Candidate> {
        self.candidates_in(self.degree)
    }

    /// Candidate counts per 0-based block.
    pub fn shape(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for c in self.candidate_space() {
            *out.entry((c.row, c.col)).or_insert(0) += 1;
        }
        out
    }

    fn morphism(&self, c: &Candidate) -> SeqMorphism {
        c.morphism(self.source.seq(), self.target.seq())
    }

    fn images(&self, cands: &[Candidate], field: Field) -> Result<Vec<Coordinates>> {
        let (src, tgt) = (self.source.in_field(field), self.target.in_field(field));
        cands
            .iter()
            .map(|c| Ok(hom_differential(&self.morphism(c), &src, &tgt)?.in_field(field).coordinates()))
            .collect()
    }

    fn combine(&self, cands: &[Candidate], coeffs: &[Scalar]) -> SeqMorphism {
        let mut out = SeqMorphism::zero(self.source.seq(), self.target.seq());
        for (c, a) in cands.iter().zip(coeffs) {
            if !a.is_zero() {
                out = out.add(&self.morphism(c).scale(a)).expect("parallel");
            }
        }
        out
    }

    /// Nullspace of the differential restricted to the listed 0-based blocks
    /// of the output (all blocks if `None`), in candidate coordinates.
    pub fn kernel_on_blocks(&self, blocks: Option<&[(usize, usize)]>, field: Field) -> Result<Vec<Vec<Scalar>>> {
        let cands = self.candidate_space();
        if cands.is_empty() {
            return Ok(vec![]);
        }
        let mut images = self.images(&cands, field)?;
        if let Some(keep) = blocks {
            for img in &mut images {
                img.retain(|(r, c, _, _), _| keep.contains(&(*r, *c)));
            }
        }
        let (mat, _) = coordinate_matrix(&images, None);
        if mat.rows() == 0 {
            return Ok(standard_basis(cands.len()));
        }
        Ok(mat.nullspace())
    }

    /// Basis of the closed morphisms of the problem's degree.
    pub fn closed_subspace(&self, field: Field) -> Result<Vec<SeqMorphism>> {
        let cands = self.candidate_space();
        Ok(self.kernel_on_blocks(None, field)?.iter().map(|v| self.combine(&cands, v)).collect())
    }

    /// Rank of the differential from one cohomological degree lower.
    fn boundary_images(&self, field: Field) -> Result<Vec<Coordinates>> {
        let lower = self.candidates_in(self.degree - TriDegree::new(1, 0, 0));
        self.images(&lower, field)
    }

    /// `dim closed - dim exact` in the problem's degree.
    pub fn cohomology_dim(&self, field: Field) -> Result<usize> {
        let closed = self.kernel_on_blocks(None, field)?.len();
        let bounds = self.boundary_images(field)?;
        let rank = if bounds.is_empty() { 0 } else { coordinate_matrix(&bounds, None).0.rank() };
        Ok(closed - rank)
    }

    /// Closed morphisms spanning a complement of the exact ones.
    pub fn cohomology_representatives(&self, field: Field) -> Result<Vec<SeqMorphism>> {
        let closed = self.closed_subspace(field)?;
        let mut span: Vec<Coordinates> = self.boundary_images(field)?;
        let mut rank = if span.is_empty() { 0 } else { coordinate_matrix(&span, None).0.rank() };
        let mut reps = Vec::new();
        for z in closed {
            span.push(z.in_field(field).coordinates());
            let r = coordinate_matrix(&span, None).0.rank();
            if r > rank {
                rank = r;
                reps.push(z);
            } else {
                span.pop();
            }
        }
        Ok(reps)
    }

    pub fn run(&self, field: Field) -> Result<SearchReport> {
        let dim_candidates = self.candidate_space().len();
        let closed = self.closed_subspace(field)?;
        let dim_cohomology = if self.options.quotient_by_exact { Some(self.cohomology_dim(field)?) } else { None };
        let shape = self.options.report_shape.then(|| {
            self.shape().into_iter().map(|((r, c), n)| (format!("{},{}", r + 1, c + 1), n)).collect()
        });
        let basis = if self.options.want_basis {
            let mors = if self.options.quotient_by_exact { self.cohomology_representatives(field)? } else { closed.clone() };
            Some(mors.iter().map(SeqMorphism::to_json).collect())
        } else {
            None
        };
        Ok(SearchReport { dim_candidates, dim_closed: closed.len(), dim_cohomology, shape, basis })
    }
}

fn standard_basis(n: usize) -> Vec<Vec<Scalar>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

/// True if `a` is a nonzero scalar multiple of `b`.
pub fn proportional(a: &SeqMorphism, b: &SeqMorphism) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    let (ca, cb) = (a.coordinates(), b.coordinates());
    if ca.keys().ne(cb.keys()) {
        return false;
    }
    let (k0, a0) = ca.iter().next().expect("nonzero");
    let ratio = a0.div(&cb[k0]).expect("nonzero entry");
    ca.iter().all(|(k, v)| *v == &ratio * &cb[k])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fm::builtins::*;

    fn problem(deg: TriDegree) -> DegreeSearchProblem {
        DegreeSearchProblem::new(t_s(), t_s(), deg)
    }

    #[test]
    fn phi_degree_shape() {
        let p = problem(TriDegree::new(-2, 2, 1));
        let shape = p.shape();
        assert_eq!(shape.get(&(2, 0)), None);
        let keys: Vec<_> = shape.keys().copied().collect();
        assert_eq!(keys, vec![(0, 1), (0, 2), (1, 1), (1, 2)]);
        assert_eq!(p.candidate_space().len(), 7);
    }

    #[test]
    fn phi_is_unique_up_to_scalar() {
        let p = problem(TriDegree::new(-2, 2, 1));
        let closed = p.closed_subspace(Field::Rational).unwrap();
        assert_eq!(closed.len(), 1);
        assert!(proportional(&closed[0], &phi_s()));
        assert_eq!(p.cohomology_dim(Field::Rational).unwrap(), 1);
    }

    #[test]
    fn lower_degree_is_empty() {
        assert!(problem(TriDegree::new(-3, 2, 1)).candidate_space().is_empty());
    }

    #[test]
    fn negative_hochschild_is_empty() {
        for (s, t) in [(t_s(), t_s()), (t_empty(), t_s()), (t_s(), t_empty()), (t_empty(), t_empty())] {
            assert!(DegreeSearchProblem::new(s, t, TriDegree::new(0, 0, -1)).candidate_space().is_empty());
        }
    }

    #[test]
    fn identity_survives() {
        let p = DegreeSearchProblem::new(t_empty(), t_empty(), TriDegree::ZERO);
        assert!(p.cohomology_dim(Field::Rational).unwrap() >= 1);
        let reps = p.cohomology_representatives(Field::Rational).unwrap();
        assert!(!reps.is_empty());
    }
}
