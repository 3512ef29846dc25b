//! F2 cochain cohomology with the induced involution, group cohomology of
//! the two-element group, and equivariant section solving.
//!
//! All routines run on `ChainData`, so they serve both the raw normalized
//! chains of a small object and the equivariantly reduced chains of a large
//! one. Bases are echelon coset representatives from the deterministic
//! elimination, so induced matrices are reproducible run to run.

use crate::chain::ChainData;
use crate::errors::{Error, Result};
use crate::f2::{F2Matrix, F2Vector};
use crate::reduce::reduced_chain_data;
use crate::sset::C2SimplicialSet;

/// Cohomology of a graded cochain complex, with machinery to express
/// arbitrary cocycles in the chosen bases.
pub struct CochainAnalysis {
    /// Cochain dimensions per degree.
    pub dims: Vec<usize>,
    /// Betti numbers per degree.
    pub betti: Vec<usize>,
    deltas: Vec<F2Matrix>,
    reps: Vec<Vec<F2Vector>>,
    express: Vec<F2Matrix>,
    image_cols: Vec<usize>,
}

impl CochainAnalysis {
    /// Analyses degrees `0..=through` of the cochain complex dual to the
    /// given chains.
    pub fn from_chain(chain: &ChainData, through: usize) -> CochainAnalysis {
        let dims: Vec<usize> = (0..=through).map(|q| chain.dim_at(q)).collect();
        let deltas: Vec<F2Matrix> = (0..=through).map(|q| chain.coboundary(q)).collect();
        Self::from_cochain(dims, deltas)
    }

    /// Analyses a cochain complex given directly by its differentials;
    /// `deltas[q]` maps degree q to degree q+1 (the last one may map into a
    /// zero space).
    pub fn from_cochain(dims: Vec<usize>, deltas: Vec<F2Matrix>) -> CochainAnalysis {
        let through = dims.len() - 1;
        let mut reps = Vec::with_capacity(through + 1);
        let mut express = Vec::with_capacity(through + 1);
        let mut image_cols = Vec::with_capacity(through + 1);
        let mut betti = Vec::with_capacity(through + 1);
        for q in 0..=through {
            let kernel = deltas[q].kernel_basis();
            let image_gens = if q == 0 {
                F2Matrix::zeros(dims[0], 0)
            } else {
                deltas[q - 1].clone()
            };
            // Coset representatives: kernel vectors that grow the rank of
            // [image | kernel], read off one elimination.
            let kernel_mat = F2Matrix::from_columns(dims[q], &kernel);
            let mut aug = image_gens.augment(&kernel_mat);
            let pivots = aug.reduced_row_echelon();
            let chosen: Vec<F2Vector> = pivots
                .iter()
                .filter(|&&c| c >= image_gens.cols())
                .map(|&c| kernel[c - image_gens.cols()].clone())
                .collect();
            let rep_mat = F2Matrix::from_columns(dims[q], &chosen);
            betti.push(chosen.len());
            image_cols.push(image_gens.cols());
            express.push(image_gens.augment(&rep_mat));
            reps.push(chosen);
        }
        CochainAnalysis {
            dims,
            betti,
            deltas,
            reps,
            express,
            image_cols,
        }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn representatives(&self, q: usize) -> &[F2Vector] {
        &self.reps[q]
    }

    /// Coordinates of a cocycle's class in the degree-q basis.
    pub fn class_of(&self, q: usize, cocycle: &F2Vector) -> F2Vector {
        debug_assert!(self.deltas[q].apply(cocycle).is_zero(), "not a cocycle");
        let x = self.express[q]
            .solve_vec(cocycle)
            .expect("cocycle must lie in image + representatives");
        let h = self.betti[q];
        let mut out = F2Vector::zeros(h);
        for j in 0..h {
            if x.get(self.image_cols[q] + j) {
                out.set(j, true);
            }
        }
        out
    }

    /// Matrix of a cochain-level map on cohomology. `op` sends degree-q
    /// cochains of this complex to degree-q cochains of `target`; both
    /// arguments see the classes in their own bases.
    pub fn push_classes(&self, q: usize, target: &CochainAnalysis, op: &F2Matrix) -> F2Matrix {
        self.map_classes(q, target, q, op)
    }

    /// Like `push_classes` but for operators that shift degree, such as
    /// multiplication by z on a total complex.
    pub fn map_classes(
        &self,
        q_src: usize,
        target: &CochainAnalysis,
        q_tgt: usize,
        op: &F2Matrix,
    ) -> F2Matrix {
        let cols: Vec<F2Vector> = self.reps[q_src]
            .iter()
            .map(|z| target.class_of(q_tgt, &op.apply(z)))
            .collect();
        F2Matrix::from_columns(target.betti[q_tgt], &cols)
    }
}

/// F2 cohomology in each degree with the matrix of the induced involution.
#[derive(Clone, Debug)]
pub struct GradedC2Module {
    pub degrees: Vec<DegreeModule>,
}

#[derive(Clone, Debug)]
pub struct DegreeModule {
    pub dim: usize,
    pub sigma: F2Matrix,
}

impl GradedC2Module {
    pub fn total_dim(&self) -> usize {
        self.degrees.iter().map(|d| d.dim).sum()
    }

    /// True when the involution acts trivially in every degree.
    pub fn action_is_trivial(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.sigma == F2Matrix::identity(d.dim))
    }
}

fn faithful_range(set: &C2SimplicialSet) -> Result<usize> {
    if set.is_complete() {
        Ok(set.dim())
    } else if set.stored_top() >= 1 {
        Ok(set.stored_top() - 1)
    } else {
        Err(Error::Truncated(
            "model truncated below degree 1; no cohomology is trustworthy".into(),
        ))
    }
}

/// Betti numbers through the faithful range (all degrees for complete
/// models, stored top minus one for truncations).
pub fn betti(set: &C2SimplicialSet) -> Result<Vec<usize>> {
    let through = faithful_range(set)?;
    let chain = reduced_chain_data(set);
    Ok(betti_of_chain(&chain, through))
}

pub fn betti_of_chain(chain: &ChainData, through: usize) -> Vec<usize> {
    CochainAnalysis::from_chain(chain, through).betti
}

/// Cohomology with the induced involution, in deterministic echelon bases.
pub fn cohomology_with_action(set: &C2SimplicialSet) -> Result<GradedC2Module> {
    let through = faithful_range(set)?;
    let chain = reduced_chain_data(set);
    Ok(cohomology_with_action_of_chain(&chain, through))
}

pub fn cohomology_with_action_of_chain(chain: &ChainData, through: usize) -> GradedC2Module {
    let analysis = CochainAnalysis::from_chain(chain, through);
    let degrees = (0..=through)
        .map(|q| {
            let op = chain.sigma_cochain(q);
            let sigma = analysis.push_classes(q, &analysis, &op);
            debug_assert_eq!(
                sigma.mul(&sigma),
                F2Matrix::identity(analysis.betti[q]),
                "sigma* must square to the identity"
            );
            DegreeModule {
                dim: analysis.betti[q],
                sigma,
            }
        })
        .collect();
    GradedC2Module { degrees }
}

/// Dimension of H^p(C2, A) for an F2 space with involution `sigma`.
///
/// For p = 0 this is the invariants; for p >= 1 the quotient of the
/// invariants by the image of 1 + sigma, independent of p.
pub fn group_cohomology_dim(sigma: &F2Matrix, p: usize) -> usize {
    assert_eq!(sigma.rows(), sigma.cols());
    let dim = sigma.rows();
    let norm = sigma.add(&F2Matrix::identity(dim));
    let r = norm.rank();
    if p == 0 {
        dim - r
    } else {
        dim - 2 * r
    }
}

/// Splits an involution module as F2^a + F2[C2]^b: b is the rank of
/// 1 + sigma and a the complement.
pub fn equivariant_decomposition(sigma: &F2Matrix) -> (usize, usize) {
    assert_eq!(sigma.rows(), sigma.cols());
    let dim = sigma.rows();
    let b = sigma.add(&F2Matrix::identity(dim)).rank();
    (dim - 2 * b, b)
}

/// A degreewise map of graded C2-modules.
pub struct GradedMap {
    pub source: GradedC2Module,
    pub target: GradedC2Module,
    /// mats[q]: source_q -> target_q, shape (target dim x source dim).
    pub mats: Vec<F2Matrix>,
}

impl GradedMap {
    pub fn check_equivariant(&self) -> Result<()> {
        if self.mats.len() != self.source.degrees.len()
            || self.mats.len() != self.target.degrees.len()
        {
            return Err(Error::Contract(
                "graded map must cover the same degrees as its modules".into(),
            ));
        }
        for (q, f) in self.mats.iter().enumerate() {
            let s = &self.source.degrees[q];
            let t = &self.target.degrees[q];
            if f.rows() != t.dim || f.cols() != s.dim {
                return Err(Error::Contract(format!(
                    "degree {q}: map shape {}x{} does not match modules",
                    f.rows(),
                    f.cols()
                )));
            }
            if f.mul(&s.sigma) != t.sigma.mul(f) {
                return Err(Error::Contract(format!(
                    "degree {q}: map does not commute with the involutions"
                )));
            }
        }
        Ok(())
    }
}

/// Decides whether a degreewise equivariant section exists: a linear s with
/// f.s = id commuting with the involutions, found by one joint linear solve
/// per degree over the entries of s.
pub fn equivariant_section_exists(f: &GradedMap) -> Result<bool> {
    f.check_equivariant()?;
    for (q, mat) in f.mats.iter().enumerate() {
        let s_src = &f.source.degrees[q].sigma;
        let s_tgt = &f.target.degrees[q].sigma;
        let (ds, dt) = (f.source.degrees[q].dim, f.target.degrees[q].dim);
        if dt == 0 {
            continue;
        }
        // Unknown X: ds x dt, vec stacks columns. Conditions:
        //   F X = I      -> (I_dt (x) F) vec = vec(I)
        //   X S_t = S_s X -> (S_t^T (x) I + I (x) S_s) vec = 0
        let eq1 = kron(&F2Matrix::identity(dt), mat);
        let rhs1 = vec_of(&F2Matrix::identity(dt));
        let eq2 = kron(&s_tgt.transpose(), &F2Matrix::identity(ds))
            .add(&kron(&F2Matrix::identity(dt), s_src));
        let rhs2 = F2Vector::zeros(eq2.rows());
        let system = eq1.stack(&eq2);
        let mut rhs = F2Vector::zeros(rhs1.len() + rhs2.len());
        for i in rhs1.support() {
            rhs.set(i, true);
        }
        if system.solve_vec(&rhs).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn kron(a: &F2Matrix, b: &F2Matrix) -> F2Matrix {
    let mut out = F2Matrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a.get(i, j) {
                for k in 0..b.rows() {
                    for l in 0..b.cols() {
                        if b.get(k, l) {
                            out.set(i * b.rows() + k, j * b.cols() + l, true);
                        }
                    }
                }
            }
        }
    }
    out
}

fn vec_of(m: &F2Matrix) -> F2Vector {
    let mut v = F2Vector::zeros(m.rows() * m.cols());
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            if m.get(i, j) {
                v.set(j * m.rows() + i, true);
            }
        }
    }
    v
}
