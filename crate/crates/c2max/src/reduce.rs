//! Equivariant elimination of sparse chain complexes over F2.
//!
//! This shrinks a chain complex with involution to a homotopy-equivalent
//! one small enough for dense linear algebra, while keeping the involution
//! action on the nose. One elimination step is the Gaussian reduction of a
//! unit pivot (u, v) with u in the boundary of v: every other column
//! containing u gets the pivot column XORed in, then u and v are removed;
//! one degree up only the v-row is dropped, which is exactly the
//! chain-level Gaussian lemma.
//!
//! Equivariance restricts the admissible pivots. Cells are either fixed by
//! the involution or come in swapped pairs, so the boundary matrix is a
//! matrix over F2[C2] in disguise: a pivot must be invertible there. That
//! means fixed-fixed entries with coefficient 1, or free-free entries whose
//! orbit coefficient is a unit (1 or sigma, never 1 + sigma), and a free
//! pivot is always eliminated jointly with its mirror pair. Mixed
//! fixed-free entries are maps between non-isomorphic F2[C2]-modules and
//! are never pivots. The surviving complex therefore still has a cell
//! involution, and the reduction is an equivariant homotopy equivalence, so
//! every derived invariant (Borel module, spectral pages, sigma-action on
//! cohomology) is unchanged.
//!
//! Pivot order is Markowitz-style min-fill with deterministic ties, which
//! keeps fill-in negligible on simplicial boundary matrices; coreduction
//! and collapse pairs have fill zero and are drained first automatically.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::chain::ChainData;
use crate::f2::F2Matrix;
use crate::sset::C2SimplicialSet;

pub struct SparseComplex {
    offsets: Vec<u32>,
    degree_of: Vec<u8>,
    alive: Vec<bool>,
    bnd: Vec<Vec<u32>>,
    cob: Vec<Vec<u32>>,
    sigma: Vec<u32>,
    alive_count: usize,
}

impl SparseComplex {
    pub fn from_sset(set: &C2SimplicialSet) -> SparseComplex {
        let top = set.stored_top();
        let mut offsets = Vec::with_capacity(top + 2);
        let mut total = 0u32;
        for m in 0..=top {
            offsets.push(total);
            total += set.count(m) as u32;
        }
        offsets.push(total);
        let n = total as usize;
        let mut degree_of = vec![0u8; n];
        let mut sigma = vec![0u32; n];
        let mut bnd: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut cob: Vec<Vec<u32>> = vec![Vec::new(); n];
        for m in 0..=top {
            let d = set.degree(m);
            for s in 0..d.len() {
                let id = offsets[m] as usize + s;
                degree_of[id] = m as u8;
                sigma[id] = offsets[m] + d.sigma[s];
                if m > 0 {
                    let mut rows: Vec<u32> = d.faces[s]
                        .iter()
                        .filter(|f| f.is_nondeg())
                        .map(|f| offsets[m - 1] + f.core)
                        .collect();
                    rows.sort_unstable();
                    let mut col = Vec::new();
                    let mut i = 0;
                    while i < rows.len() {
                        let mut j = i;
                        while j < rows.len() && rows[j] == rows[i] {
                            j += 1;
                        }
                        if (j - i) % 2 == 1 {
                            col.push(rows[i]);
                        }
                        i = j;
                    }
                    bnd[id] = col;
                }
            }
        }
        for v in 0..n {
            for &u in &bnd[v] {
                cob[u as usize].push(v as u32);
            }
        }
        for c in cob.iter_mut() {
            c.sort_unstable();
        }
        SparseComplex {
            offsets,
            degree_of,
            alive: vec![true; n],
            bnd,
            cob,
            sigma,
            alive_count: n,
        }
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    fn is_fixed(&self, c: u32) -> bool {
        self.sigma[c as usize] == c
    }

    fn admissible(&self, u: u32, v: u32) -> bool {
        let fu = self.is_fixed(u);
        if fu != self.is_fixed(v) {
            return false;
        }
        if fu {
            return true;
        }
        // Free pivots must have unit orbit coefficient: sigma(u) absent.
        self.bnd[v as usize]
            .binary_search(&self.sigma[u as usize])
            .is_err()
    }

    fn fill_of(&self, u: u32, v: u32) -> u64 {
        let a = self.bnd[v as usize].len() as u64 - 1;
        let b = self.cob[u as usize].len() as u64 - 1;
        a * b
    }

    /// Runs the elimination to exhaustion.
    pub fn reduce(&mut self) {
        let mut heap: BinaryHeap<Reverse<(u64, u32, u32)>> = BinaryHeap::new();
        for v in 0..self.bnd.len() as u32 {
            for &u in &self.bnd[v as usize] {
                heap.push(Reverse((self.fill_of(u, v), v, u)));
            }
        }
        while let Some(Reverse((fill, v, u))) = heap.pop() {
            if !self.alive[v as usize] || !self.alive[u as usize] {
                continue;
            }
            if self.bnd[v as usize].binary_search(&u).is_err() {
                continue;
            }
            if !self.admissible(u, v) {
                continue;
            }
            let now = self.fill_of(u, v);
            if now > fill {
                heap.push(Reverse((now, v, u)));
                continue;
            }
            if self.is_fixed(u) {
                self.eliminate_pair(u, v, &mut heap);
            } else {
                let (su, sv) = (self.sigma[u as usize], self.sigma[v as usize]);
                self.eliminate_pair(u, v, &mut heap);
                assert!(
                    self.alive[su as usize]
                        && self.alive[sv as usize]
                        && self.bnd[sv as usize].binary_search(&su).is_ok()
                        && self.admissible(su, sv),
                    "mirror pivot must stay admissible"
                );
                self.eliminate_pair(su, sv, &mut heap);
            }
        }
        debug_assert!(self.no_admissible_pivots());
    }

    fn eliminate_pair(&mut self, u: u32, v: u32, heap: &mut BinaryHeap<Reverse<(u64, u32, u32)>>) {
        debug_assert!(self.bnd[v as usize].binary_search(&u).is_ok());
        let pat = self.bnd[v as usize].clone();
        let holders = self.cob[u as usize].clone();
        for z in holders {
            if z == v || !self.alive[z as usize] {
                continue;
            }
            self.xor_into(z, &pat);
            self.push_pairs(z, heap);
        }
        self.kill(v, heap);
        self.kill(u, heap);
    }

    /// bnd[z] ^= pat, with coboundary maintenance.
    fn xor_into(&mut self, z: u32, pat: &[u32]) {
        let old = std::mem::take(&mut self.bnd[z as usize]);
        let mut merged = Vec::with_capacity(old.len() + pat.len());
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < pat.len() {
            let take_old = j == pat.len() || (i < old.len() && old[i] < pat[j]);
            let take_pat = i == old.len() || (j < pat.len() && pat[j] < old[i]);
            if take_old {
                merged.push(old[i]);
                i += 1;
            } else if take_pat {
                let w = pat[j];
                // appears only in pat: added entry
                let cw = &mut self.cob[w as usize];
                let pos = cw.binary_search(&z).unwrap_err();
                cw.insert(pos, z);
                merged.push(w);
                j += 1;
            } else {
                // equal: cancels
                let w = old[i];
                let cw = &mut self.cob[w as usize];
                if let Ok(pos) = cw.binary_search(&z) {
                    cw.remove(pos);
                }
                i += 1;
                j += 1;
            }
        }
        self.bnd[z as usize] = merged;
    }

    fn push_pairs(&self, z: u32, heap: &mut BinaryHeap<Reverse<(u64, u32, u32)>>) {
        for &u in &self.bnd[z as usize] {
            heap.push(Reverse((self.fill_of(u, z), z, u)));
        }
    }

    fn kill(&mut self, c: u32, heap: &mut BinaryHeap<Reverse<(u64, u32, u32)>>) {
        self.alive[c as usize] = false;
        self.alive_count -= 1;
        let below = std::mem::take(&mut self.bnd[c as usize]);
        for w in below {
            if self.alive[w as usize] {
                if let Ok(pos) = self.cob[w as usize].binary_search(&c) {
                    self.cob[w as usize].remove(pos);
                }
            }
        }
        let above = std::mem::take(&mut self.cob[c as usize]);
        for z in above {
            if self.alive[z as usize] {
                if let Ok(pos) = self.bnd[z as usize].binary_search(&c) {
                    self.bnd[z as usize].remove(pos);
                }
                self.push_pairs(z, heap);
            }
        }
    }

    fn no_admissible_pivots(&self) -> bool {
        for v in 0..self.bnd.len() as u32 {
            if !self.alive[v as usize] {
                continue;
            }
            for &u in &self.bnd[v as usize] {
                if self.admissible(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Packs the surviving cells into dense chain data. The second return
    /// value lists the surviving global cell ids per degree.
    pub fn to_chain_data(&self) -> (ChainData, Vec<Vec<u32>>) {
        let top = self.offsets.len() - 2;
        let mut survivors: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
        for c in 0..self.alive.len() as u32 {
            if self.alive[c as usize] {
                survivors[self.degree_of[c as usize] as usize].push(c);
            }
        }
        let mut local = vec![u32::MAX; self.alive.len()];
        for list in &survivors {
            for (i, &c) in list.iter().enumerate() {
                local[c as usize] = i as u32;
            }
        }
        let dims: Vec<usize> = survivors.iter().map(|l| l.len()).collect();
        let mut boundaries = Vec::with_capacity(top + 1);
        boundaries.push(F2Matrix::zeros(0, dims[0]));
        for m in 1..=top {
            let mut mat = F2Matrix::zeros(dims[m - 1], dims[m]);
            for (s, &c) in survivors[m].iter().enumerate() {
                for &w in &self.bnd[c as usize] {
                    mat.set(local[w as usize] as usize, s, true);
                }
            }
            boundaries.push(mat);
        }
        let sigma: Vec<Vec<u32>> = survivors
            .iter()
            .map(|list| {
                list.iter()
                    .map(|&c| local[self.sigma[c as usize] as usize])
                    .collect()
            })
            .collect();
        (
            ChainData {
                dims,
                boundaries,
                sigma,
            },
            survivors,
        )
    }
}

/// Reduces a simplicial set to equivariantly homotopy-equivalent dense
/// chain data.
pub fn reduced_chain_data(set: &C2SimplicialSet) -> ChainData {
    let mut sc = SparseComplex::from_sset(set);
    sc.reduce();
    let (data, _) = sc.to_chain_data();
    debug_assert!(data.check_consistency());
    data
}
