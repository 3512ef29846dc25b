//! Borel cohomology via the truncated double complex, its F2[z]-module
//! structure, barcode decomposition, E2 page and explicit spectral pages.
//!
//! The double complex has one copy of the normalized cochains in each
//! column p = 0..=P, vertical differential the simplicial coboundary and
//! horizontal differential 1 + sigma*. Columns vanish above the dimension
//! of the space, so with P = N + 1 the total cohomology is exact in degrees
//! up to N. Multiplication by the polynomial generator z is the column
//! shift; its induced maps are verified to be isomorphisms in the window
//! [dim + 1, N) rather than assumed, and the module is rejected as
//! under-truncated if they are not.

use serde::Serialize;

use crate::chain::ChainData;
use crate::cohomology::{cohomology_with_action_of_chain, CochainAnalysis, GradedC2Module};
use crate::errors::{Error, Result};
use crate::f2::F2Matrix;
use crate::reduce::reduced_chain_data;
use crate::sset::C2SimplicialSet;

/// Borel cohomology dimensions per degree with the z-multiplication maps.
#[derive(Clone, Debug)]
pub struct GradedF2zModule {
    /// h[n] = dim of the degree-n Borel cohomology, n = 0..=truncation.
    pub h: Vec<usize>,
    /// z_maps[n]: degree n -> degree n+1, for n < truncation.
    pub z_maps: Vec<F2Matrix>,
    /// First degree from which every z-map in the window is an isomorphism.
    pub stab_degree: usize,
    pub truncation: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BarLength {
    Finite(usize),
    Infinite,
}

impl Serialize for BarLength {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BarLength::Finite(n) => s.serialize_u64(*n as u64),
            BarLength::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Bar {
    pub birth: usize,
    pub length: BarLength,
}

/// Interval decomposition of a graded F2[z]-module: an infinite bar born at
/// b is a shifted polynomial ring, a length-r bar a shifted F2[z]/(z^r).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Barcode {
    pub bars: Vec<Bar>,
}

impl Barcode {
    pub fn all_infinite(&self) -> bool {
        self.bars.iter().all(|b| b.length == BarLength::Infinite)
    }

    pub fn infinite_or_unit(&self) -> bool {
        self.bars
            .iter()
            .all(|b| matches!(b.length, BarLength::Infinite | BarLength::Finite(1)))
    }

    pub fn infinite_count(&self) -> usize {
        self.bars
            .iter()
            .filter(|b| b.length == BarLength::Infinite)
            .count()
    }

    /// Number of bars alive in degree n.
    pub fn alive_at(&self, n: usize) -> usize {
        self.bars
            .iter()
            .filter(|b| {
                b.birth <= n
                    && match b.length {
                        BarLength::Infinite => true,
                        BarLength::Finite(l) => n < b.birth + l,
                    }
            })
            .count()
    }
}

/// The truncated double complex of a chain complex with involution.
pub struct BorelComplex {
    chain: ChainData,
    /// Columns 0..=columns.
    pub columns: usize,
    qmax: usize,
}

impl BorelComplex {
    pub fn new(chain: ChainData, columns: usize) -> BorelComplex {
        let qmax = chain.top();
        BorelComplex {
            chain,
            columns,
            qmax,
        }
    }

    /// Components (p, q, offset) of the total degree n, ordered by q
    /// ascending so that the column filtration is a coordinate prefix.
    fn components(&self, n: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        let mut offset = 0;
        let qlo = n.saturating_sub(self.columns);
        for q in qlo..=n.min(self.qmax) {
            let p = n - q;
            out.push((p, q, offset));
            offset += self.chain.dim_at(q);
        }
        out
    }

    pub fn total_dim(&self, n: usize) -> usize {
        self.components(n)
            .iter()
            .map(|&(_, q, _)| self.chain.dim_at(q))
            .sum()
    }

    pub fn max_total_degree(&self) -> usize {
        self.columns + self.qmax
    }

    /// Total differential T^n -> T^{n+1}.
    pub fn d_matrix(&self, n: usize) -> F2Matrix {
        let src = self.components(n);
        let tgt = self.components(n + 1);
        let find = |q: usize| tgt.iter().find(|&&(_, tq, _)| tq == q).map(|&(_, _, o)| o);
        let mut d = F2Matrix::zeros(self.total_dim(n + 1), self.total_dim(n));
        for &(p, q, off) in &src {
            let dq = self.chain.dim_at(q);
            if dq == 0 {
                continue;
            }
            // Vertical: simplicial coboundary.
            if q < self.qmax {
                if let Some(toff) = find(q + 1) {
                    let delta = self.chain.coboundary(q);
                    for j in 0..dq {
                        for i in 0..delta.rows() {
                            if delta.get(i, j) {
                                d.set(toff + i, off + j, true);
                            }
                        }
                    }
                }
            }
            // Horizontal: 1 + sigma*, column shift by one.
            if p < self.columns {
                if let Some(toff) = find(q) {
                    let sig = &self.chain.sigma[q];
                    for j in 0..dq {
                        // identity part
                        d.set(toff + j, off + j, !d.get(toff + j, off + j));
                        // sigma* part: column j hits row sigma(j), since
                        // sigma is its own inverse.
                        let i = sig[j] as usize;
                        d.set(toff + i, off + j, !d.get(toff + i, off + j));
                    }
                }
            }
        }
        d
    }

    /// Multiplication by z: the column shift T^n -> T^{n+1}, dropping the
    /// top column.
    pub fn z_matrix(&self, n: usize) -> F2Matrix {
        let src = self.components(n);
        let tgt = self.components(n + 1);
        let find = |q: usize| tgt.iter().find(|&&(_, tq, _)| tq == q).map(|&(_, _, o)| o);
        let mut z = F2Matrix::zeros(self.total_dim(n + 1), self.total_dim(n));
        for &(p, q, off) in &src {
            if p < self.columns {
                if let Some(toff) = find(q) {
                    for j in 0..self.chain.dim_at(q) {
                        z.set(toff + j, off + j, true);
                    }
                }
            }
        }
        z
    }
}

/// Borel cohomology of a complete object through degree `n_max`, with
/// verified z-stabilization. `n_max` must be at least dim + 2.
pub fn borel_module(set: &C2SimplicialSet, n_max: usize) -> Result<GradedF2zModule> {
    require_complete(set)?;
    let chain = reduced_chain_data(set);
    borel_module_from_chain(&chain, set.dim(), n_max)
}

pub(crate) fn require_complete(set: &C2SimplicialSet) -> Result<()> {
    if !set.is_complete() {
        return Err(Error::Truncated(
            "Borel computations need a complete model (truncations have no trustworthy top)".into(),
        ));
    }
    Ok(())
}

pub fn borel_module_from_chain(
    chain: &ChainData,
    dim_k: usize,
    n_max: usize,
) -> Result<GradedF2zModule> {
    if n_max < dim_k + 2 {
        return Err(Error::Contract(format!(
            "truncation {n_max} too small: need at least dim + 2 = {}",
            dim_k + 2
        )));
    }
    let bc = BorelComplex::new(chain.clone(), n_max + 1);
    let analysis = total_analysis(&bc, n_max);
    let h = analysis.betti.clone();
    let mut z_maps = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let z = bc.z_matrix(n);
        z_maps.push(analysis.map_classes(n, &analysis, n + 1, &z));
    }
    let stab_degree = dim_k + 1;
    for n in stab_degree..n_max {
        let iso = h[n] == h[n + 1] && z_maps[n].rank() == h[n];
        if !iso {
            return Err(Error::StabilizationFailure { degree: n });
        }
    }
    Ok(GradedF2zModule {
        h,
        z_maps,
        stab_degree,
        truncation: n_max,
    })
}

fn total_analysis(bc: &BorelComplex, n_max: usize) -> CochainAnalysis {
    let dims: Vec<usize> = (0..=n_max).map(|n| bc.total_dim(n)).collect();
    let deltas: Vec<F2Matrix> = (0..=n_max).map(|n| bc.d_matrix(n)).collect();
    CochainAnalysis::from_cochain(dims, deltas)
}

/// Interval decomposition by the rank function of the composite z-maps.
pub fn barcode(m: &GradedF2zModule) -> Barcode {
    let n_max = m.truncation;
    // r[i][j] = rank of the composite H^i -> H^j.
    let mut r = vec![vec![0usize; n_max + 1]; n_max + 1];
    for i in 0..=n_max {
        r[i][i] = m.h[i];
        let mut acc = F2Matrix::identity(m.h[i]);
        for j in i + 1..=n_max {
            acc = m.z_maps[j - 1].mul(&acc);
            r[i][j] = acc.rank();
        }
    }
    let at = |i: isize, j: usize| -> usize {
        if i < 0 {
            0
        } else {
            r[i as usize][j]
        }
    };
    let mut bars = Vec::new();
    for b in 0..=n_max {
        for d in b + 1..=n_max {
            let count = at(b as isize, d - 1) + at(b as isize - 1, d)
                - at(b as isize, d)
                - at(b as isize - 1, d - 1);
            for _ in 0..count {
                bars.push(Bar {
                    birth: b,
                    length: BarLength::Finite(d - b),
                });
            }
        }
        let inf = at(b as isize, n_max) - at(b as isize - 1, n_max);
        for _ in 0..inf {
            bars.push(Bar {
                birth: b,
                length: BarLength::Infinite,
            });
        }
    }
    bars.sort();
    let code = Barcode { bars };
    for (n, &hn) in m.h.iter().enumerate() {
        debug_assert_eq!(code.alive_at(n), hn, "barcode counting identity at {n}");
    }
    code
}

/// Maximum finite bar length, 0 when the module is free.
pub fn torsion_order(m: &GradedF2zModule) -> usize {
    barcode(m)
        .bars
        .iter()
        .filter_map(|b| match b.length {
            BarLength::Finite(l) => Some(l),
            BarLength::Infinite => None,
        })
        .max()
        .unwrap_or(0)
}

/// One row of the E2 page: H^p(C2, H^q) as (p = 0 value, p >= 1 value).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E2Row {
    pub q: usize,
    pub invariants: usize,
    pub positive: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E2Page {
    pub rows: Vec<E2Row>,
}

impl E2Page {
    pub fn from_module(cwa: &GradedC2Module) -> E2Page {
        let rows = cwa
            .degrees
            .iter()
            .enumerate()
            .map(|(q, d)| E2Row {
                q,
                invariants: crate::cohomology::group_cohomology_dim(&d.sigma, 0),
                positive: crate::cohomology::group_cohomology_dim(&d.sigma, 1),
            })
            .collect();
        E2Page { rows }
    }

    pub fn entry(&self, p: usize, q: usize) -> usize {
        self.rows
            .get(q)
            .map_or(0, |r| if p == 0 { r.invariants } else { r.positive })
    }

    /// Sum over the antidiagonal p + q = n.
    pub fn antidiagonal_sum(&self, n: usize) -> usize {
        (0..=n).map(|q| self.entry(n - q, q)).sum()
    }
}

/// Dimensions of E2^{p,q} = H^p(C2, H^q(X)) for q <= q_max.
pub fn e2_page(set: &C2SimplicialSet, q_max: usize) -> Result<E2Page> {
    let chain = reduced_chain_data(set);
    let faithful = if set.is_complete() {
        set.dim()
    } else {
        set.stored_top().saturating_sub(1)
    };
    if q_max > faithful && !set.is_complete() {
        return Err(Error::Truncated(format!(
            "E2 rows requested through {q_max}, faithful through {faithful}"
        )));
    }
    let through = q_max.min(chain.top());
    let cwa = cohomology_with_action_of_chain(&chain, through);
    let mut page = E2Page::from_module(&cwa);
    // Rows above the chain top are zero rows; pad so entry() sees them.
    for q in page.rows.len()..=q_max {
        page.rows.push(E2Row {
            q,
            invariants: 0,
            positive: 0,
        });
    }
    Ok(page)
}

/// The E2-degeneration test: dimension equality between the E2
/// antidiagonals and Borel cohomology through total degree dim + 1.
///
/// That window suffices: a nonzero differential would first show up as a
/// dimension drop on an antidiagonal n <= dim + 1, because every class is a
/// z-power times a column-zero class and the column-zero sources live in
/// q <= dim.
pub fn degenerates_at_e2(set: &C2SimplicialSet) -> Result<(bool, Option<usize>)> {
    require_complete(set)?;
    let dim = set.dim();
    let chain = reduced_chain_data(set);
    let module = borel_module_from_chain(&chain, dim, dim + 2)?;
    let cwa = cohomology_with_action_of_chain(&chain, dim);
    let page = E2Page::from_module(&cwa);
    for n in 0..=dim + 1 {
        let e2 = page.antidiagonal_sum(n);
        let hn = module.h[n];
        debug_assert!(e2 >= hn, "E-infinity must be a subquotient of E2");
        if e2 != hn {
            return Ok((false, Some(n)));
        }
    }
    Ok((true, None))
}

/// Page tables of the column-filtration spectral sequence.
#[derive(Clone, Debug, Serialize)]
pub struct PageTable {
    pub r: usize,
    /// dims[p][q]
    pub dims: Vec<Vec<usize>>,
    /// d_ranks[p][q] = rank of d_r out of (p, q)
    pub d_ranks: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralPages {
    /// Entries with p + q <= trusted_degree are unaffected by truncation.
    pub trusted_degree: usize,
    pub pages: Vec<PageTable>,
}

impl SpectralPages {
    pub fn first_nonzero_differential(&self) -> Option<usize> {
        self.pages
            .iter()
            .find(|p| p.d_ranks.iter().flatten().any(|&r| r > 0))
            .map(|p| p.r)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,p,q,dim,d_rank\n");
        for page in &self.pages {
            for (p, row) in page.dims.iter().enumerate() {
                for (q, &dim) in row.iter().enumerate() {
                    out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        page.r, p, q, dim, page.d_ranks[p][q]
                    ));
                }
            }
        }
        out
    }
}

/// Computes pages E_r for 2 <= r <= r_max by subquotient linear algebra on
/// the truncated double complex.
pub fn spectral_pages(set: &C2SimplicialSet, r_max: usize) -> Result<SpectralPages> {
    require_complete(set)?;
    let dim = set.dim();
    let n_max = dim + 2;
    let chain = reduced_chain_data(set);
    let bc = BorelComplex::new(chain, n_max + 1);
    Ok(spectral_pages_of(&bc, n_max, r_max))
}

fn spectral_pages_of(bc: &BorelComplex, n_max: usize, r_max: usize) -> SpectralPages {
    let pmax = bc.columns;
    let qmax = bc.chain.top();
    let d: Vec<F2Matrix> = (0..=bc.max_total_degree())
        .map(|n| bc.d_matrix(n))
        .collect();

    // Generators of Z_r^{p,q} = { x in F^p T^n : D x in F^{p+r} }, as columns
    // in T^n coordinates. Negative p means the whole total degree.
    // Z_r is determined by the filtration level p (clamped) and the total
    // degree alone; the (p, q) label may leave the displayed range, e.g. as
    // a denominator source, and the space is still nonzero.
    let z_gens = |p: isize, q: isize, r: usize| -> F2Matrix {
        let n = p + q;
        if n < 0 || n as usize > bc.max_total_degree() {
            return F2Matrix::zeros(0, 0);
        }
        let n = n as usize;
        let total = bc.total_dim(n);
        let p_eff = p.max(0) as usize;
        // F^p: components with column >= p_eff, i.e. q' <= n - p_eff: prefix.
        let src_len: usize = bc
            .components(n)
            .iter()
            .filter(|&&(pc, _, _)| pc >= p_eff)
            .map(|&(_, qc, _)| bc.chain.dim_at(qc))
            .sum();
        if src_len == 0 {
            return F2Matrix::zeros(total, 0);
        }
        // Condition rows: target components with column < p + r.
        let cut = p + r as isize;
        let dn = &d[n];
        let tgt = bc.components(n + 1);
        let mut rows: Vec<usize> = Vec::new();
        for &(pc, qc, off) in &tgt {
            if (pc as isize) < cut {
                for i in 0..bc.chain.dim_at(qc) {
                    rows.push(off + i);
                }
            }
        }
        let mut sub = F2Matrix::zeros(rows.len(), src_len);
        for (ri, &row) in rows.iter().enumerate() {
            for c in 0..src_len {
                if dn.get(row, c) {
                    sub.set(ri, c, true);
                }
            }
        }
        let kernel = sub.kernel_basis();
        let mut out = F2Matrix::zeros(total, kernel.len());
        for (j, v) in kernel.iter().enumerate() {
            for i in v.support() {
                out.set(i, j, true);
            }
        }
        out
    };

    let apply_d = |gens: &F2Matrix, n: usize| -> F2Matrix {
        if gens.cols() == 0 || n > bc.max_total_degree() {
            return F2Matrix::zeros(bc.total_dim(n + 1), 0);
        }
        d[n].mul(gens)
    };

    // Denominator generators of E_r^{p,q}.
    let denom = |p: isize, q: isize, r: usize| -> F2Matrix {
        let n = (p + q).max(0) as usize;
        let a = z_gens(p + 1, q - 1, r - 1);
        let src = z_gens(p - r as isize + 1, q + r as isize - 2, r - 1);
        let b = if p + q >= 1 {
            apply_d(&src, (p + q - 1) as usize)
        } else {
            F2Matrix::zeros(bc.total_dim(n), 0)
        };
        a.augment(&b)
    };

    let mut pages = Vec::new();
    for r in 2..=r_max {
        let mut dims = vec![vec![0usize; qmax + 1]; pmax + 1];
        let mut d_ranks = vec![vec![0usize; qmax + 1]; pmax + 1];
        for p in 0..=pmax {
            for q in 0..=qmax {
                let zg = z_gens(p as isize, q as isize, r);
                let den = denom(p as isize, q as isize, r);
                let dim_e = zg.rank() - den.rank();
                dims[p][q] = dim_e;
                if dim_e > 0 {
                    // rank of d_r into (p + r, q - r + 1)
                    let image = apply_d(&zg, p + q);
                    let tden = denom(p as isize + r as isize, q as isize - r as isize + 1, r);
                    let stacked = image.augment(&tden);
                    d_ranks[p][q] = stacked.rank() - tden.rank();
                }
            }
        }
        pages.push(PageTable { r, dims, d_ranks });
    }
    SpectralPages {
        trusted_degree: n_max,
        pages,
    }
}
