//! Normalized chain data extracted from a simplicial set: per-degree
//! dimensions, boundary matrices over F2, and the involution as a simplex
//! permutation. Both the unreduced extraction and the output of the
//! equivariant reduction use this shape, so every cohomological routine
//! downstream is agnostic about which one it received.

use crate::f2::F2Matrix;
use crate::par;
use crate::sset::C2SimplicialSet;

#[derive(Clone, Debug)]
pub struct ChainData {
    /// dims[m] = number of basis cells in degree m.
    pub dims: Vec<usize>,
    /// boundaries[m]: C_m -> C_{m-1}, shape dims[m-1] x dims[m]; index 0 is
    /// the empty map.
    pub boundaries: Vec<F2Matrix>,
    /// sigma[m][i] = image cell of the involution.
    pub sigma: Vec<Vec<u32>>,
}

impl ChainData {
    /// Extracts normalized chains from the stored degrees of a simplicial
    /// set. Only faces with an empty degeneracy word survive normalization;
    /// multiplicities are counted mod 2.
    pub fn from_sset(set: &C2SimplicialSet) -> ChainData {
        let top = set.stored_top();
        let dims: Vec<usize> = (0..=top).map(|m| set.count(m)).collect();
        let mut boundaries = Vec::with_capacity(top + 1);
        boundaries.push(F2Matrix::zeros(0, dims[0]));
        for m in 1..=top {
            let d = set.degree(m);
            let cols: Vec<Vec<usize>> = par::map_range(d.len(), |s| {
                let mut rows = Vec::new();
                for f in &d.faces[s] {
                    if f.is_nondeg() {
                        rows.push(f.core as usize);
                    }
                }
                rows.sort_unstable();
                // mod 2: drop paired repeats
                let mut out = Vec::new();
                let mut i = 0;
                while i < rows.len() {
                    let mut j = i;
                    while j < rows.len() && rows[j] == rows[i] {
                        j += 1;
                    }
                    if (j - i) % 2 == 1 {
                        out.push(rows[i]);
                    }
                    i = j;
                }
                out
            });
            let mut mat = F2Matrix::zeros(dims[m - 1], dims[m]);
            for (s, rows) in cols.iter().enumerate() {
                for &r in rows {
                    mat.set(r, s, true);
                }
            }
            boundaries.push(mat);
        }
        let sigma: Vec<Vec<u32>> = (0..=top).map(|m| set.degree(m).sigma.clone()).collect();
        ChainData {
            dims,
            boundaries,
            sigma,
        }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// Highest degree with cells.
    pub fn dim(&self) -> usize {
        (0..self.dims.len())
            .rev()
            .find(|&m| self.dims[m] > 0)
            .unwrap_or(0)
    }

    /// Coboundary C^q -> C^{q+1} as a dense matrix (zero above the top).
    pub fn coboundary(&self, q: usize) -> F2Matrix {
        if q < self.top() {
            self.boundaries[q + 1].transpose()
        } else {
            F2Matrix::zeros(0, self.dim_at(q))
        }
    }

    pub fn dim_at(&self, q: usize) -> usize {
        self.dims.get(q).copied().unwrap_or(0)
    }

    /// The involution on q-cochains (a symmetric permutation matrix).
    pub fn sigma_cochain(&self, q: usize) -> F2Matrix {
        let n = self.dim_at(q);
        let mut m = F2Matrix::zeros(n, n);
        if n > 0 {
            for (i, &j) in self.sigma[q].iter().enumerate() {
                m.set(i, j as usize, true);
            }
        }
        m
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(m, &c)| if m % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Checks d.d = 0 and the equivariance of the boundary.
    pub fn check_consistency(&self) -> bool {
        for m in 2..=self.top() {
            if !self.boundaries[m - 1].mul(&self.boundaries[m]).is_zero() {
                return false;
            }
        }
        for m in 1..=self.top() {
            let s_up = self.sigma_cochain(m).transpose();
            let s_down = self.sigma_cochain(m - 1).transpose();
            let a = self.boundaries[m].mul(&s_up);
            let b = s_down.mul(&self.boundaries[m]);
            if a != b {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::C2Complex;
    use crate::sset::build::to_simplicial_set;

    #[test]
    fn boundary_squares_to_zero_on_spheres() {
        for (p, q) in [(1, 1), (2, 1), (2, 2)] {
            let s = to_simplicial_set(&C2Complex::rep_sphere(p, q).unwrap()).unwrap();
            let c = ChainData::from_sset(&s);
            assert!(c.check_consistency(), "sphere({p},{q})");
        }
    }

    #[test]
    fn boundary_squares_to_zero_on_sp2_circle() {
        let c = to_simplicial_set(&C2Complex::circle()).unwrap();
        let sp = crate::sset::sp::symmetric_product(&c, 2, None).unwrap();
        let ch = ChainData::from_sset(&sp);
        assert!(ch.check_consistency());
        assert_eq!(ch.euler_characteristic(), 0);
    }
}
