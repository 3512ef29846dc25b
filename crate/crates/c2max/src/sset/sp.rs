//! Symmetric products of based simplicial sets and the basepoint-padding
//! inclusions between consecutive levels.
//!
//! Degree-m simplices of the n-fold symmetric product are size-n multisets
//! of (possibly degenerate) m-simplices of the input. A multiset is
//! degenerate exactly when all members are degenerate along one common
//! index, so nondegenerate simplices are the multisets whose collapse masks
//! intersect trivially; the top nondegenerate degree is n times the input
//! dimension by a pigeonhole argument. Faces act member-wise followed by
//! renormalization, the involution acts member-wise.
//!
//! Outputs are never fixed-faithful: a point like {x, sigma x} is fixed in
//! the realization without lying in any degreewise fixed simplex. Borel
//! cohomology does not need the fixed set, which is why the classifier runs
//! the Borel route on these objects.

use std::collections::HashMap;

use crate::errors::{Error, Result};
use crate::par;
use crate::sset::{C2SimplicialSet, DegreeData, El};
use crate::words::{word_len, word_strip_all};

/// A symmetric product together with its multiset bookkeeping, aligned with
/// the canonical simplex order of `set`.
pub struct SpData {
    pub set: C2SimplicialSet,
    /// Per degree, per nondegenerate simplex: the sorted member list.
    pub members: Vec<Vec<Vec<El>>>,
    /// Per degree: member list -> simplex index.
    pub index: Vec<HashMap<Vec<El>, u32>>,
    /// Degree-0 basepoint of the input, for provenance queries.
    pub input_basepoint: u32,
}

impl SpData {
    /// Number of members of a simplex that are not basepoint degeneracies.
    pub fn non_basepoint_members(&self, m: usize, s: u32) -> usize {
        self.members[m][s as usize]
            .iter()
            .filter(|el| !(word_len(el.mask) == m && el.core == self.input_basepoint))
            .count()
    }
}

/// `sp(K, n)`: the n-fold symmetric product of a based object with fixed
/// basepoint.
///
/// `max_degree = None` builds the complete model (input must be complete);
/// `Some(t)` acknowledges an honest truncation at degree t when t is below
/// the natural top degree.
pub fn symmetric_product(
    k: &C2SimplicialSet,
    n: usize,
    max_degree: Option<usize>,
) -> Result<C2SimplicialSet> {
    sp_data(k, n, max_degree).map(|d| d.set)
}

pub fn sp_data(k: &C2SimplicialSet, n: usize, max_degree: Option<usize>) -> Result<SpData> {
    let bp = k.fixed_basepoint().ok_or_else(|| {
        Error::MissingBasepoint("symmetric products need a fixed basepoint".into())
    })?;

    let natural_top = n * k.dim();
    let (top, complete) = match (k.is_complete(), max_degree) {
        (true, None) => (natural_top, true),
        (true, Some(t)) => (t.min(natural_top), t >= natural_top),
        (false, None) => {
            return Err(Error::Truncated(
                "input is truncated; pass an explicit max_degree acknowledging the truncation"
                    .into(),
            ))
        }
        (false, Some(t)) => {
            if t > k.faithful_top() {
                return Err(Error::Truncated(format!(
                    "requested degree {t} exceeds the faithful range {} of the input",
                    k.faithful_top()
                )));
            }
            (t, false)
        }
    };

    // Enumerate nondegenerate multisets per degree, label-sorted so that the
    // final canonical order matches our bookkeeping.
    let mut members: Vec<Vec<Vec<El>>> = Vec::with_capacity(top + 1);
    let mut labels_per_degree: Vec<Vec<String>> = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let elements = k.elements(m);
        let mut list: Vec<Vec<El>> = if n == 0 {
            if m == 0 {
                vec![Vec::new()]
            } else {
                Vec::new()
            }
        } else {
            par::flat_map_range(elements.len(), |first| {
                let mut out = Vec::new();
                let mut stack: Vec<(usize, u64, Vec<El>)> =
                    vec![(first, elements[first].mask, vec![elements[first]])];
                while let Some((last, acc_mask, chosen)) = stack.pop() {
                    if chosen.len() == n {
                        if acc_mask == 0 {
                            out.push(chosen);
                        }
                        continue;
                    }
                    for next in last..elements.len() {
                        stack.push((next, acc_mask & elements[next].mask, {
                            let mut c = chosen.clone();
                            c.push(elements[next]);
                            c
                        }));
                    }
                }
                out
            })
        };
        let mut labeled: Vec<(String, Vec<El>)> = list
            .drain(..)
            .map(|ms| (multiset_label(k, m, &ms), ms))
            .collect();
        labeled.sort();
        labels_per_degree.push(labeled.iter().map(|(l, _)| l.clone()).collect());
        members.push(labeled.into_iter().map(|(_, ms)| ms).collect());
    }

    let index: Vec<HashMap<Vec<El>, u32>> = members
        .iter()
        .map(|list| {
            list.iter()
                .enumerate()
                .map(|(i, ms)| (ms.clone(), i as u32))
                .collect()
        })
        .collect();

    let mut degrees = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let list = &members[m];
        let faces: Vec<Vec<El>> = if m == 0 {
            vec![Vec::new(); list.len()]
        } else {
            par::map_range(list.len(), |s| {
                (0..=m)
                    .map(|i| {
                        let imgs: Vec<El> = list[s].iter().map(|&el| k.face_el(m, el, i)).collect();
                        normalize_multiset(imgs, m - 1, &index)
                    })
                    .collect()
            })
        };
        let sigma: Vec<u32> = par::map_range(list.len(), |s| {
            let mut imgs: Vec<El> = list[s].iter().map(|&el| k.sigma_el(m, el)).collect();
            imgs.sort();
            index[m][&imgs]
        });
        degrees.push(DegreeData {
            labels: labels_per_degree[m].clone(),
            faces,
            sigma,
        });
    }

    let base_members: Vec<El> = vec![El::nondeg(bp); n];
    let basepoint = Some(index[0][&base_members]);
    let set = C2SimplicialSet::assemble(degrees, complete, basepoint, false);
    debug_assert!(set.validate(Some(128)).is_ok());
    Ok(SpData {
        set,
        members,
        index,
        input_basepoint: bp,
    })
}

fn multiset_label(k: &C2SimplicialSet, m: usize, ms: &[El]) -> String {
    let parts: Vec<String> = ms.iter().map(|&el| k.element_label(m, el)).collect();
    format!("{{{}}}", parts.join(","))
}

/// Normal form of a member list as a simplex of the symmetric product:
/// strip the common collapse indices, then look the stripped multiset up.
fn normalize_multiset(mut ms: Vec<El>, m: usize, index: &[HashMap<Vec<El>, u32>]) -> El {
    let full = (1u64 << m) - 1;
    // Intersection over an empty family is everything: SP_0 is fully
    // degenerate above degree 0.
    let common = ms.iter().fold(full, |acc, el| acc & el.mask);
    for el in ms.iter_mut() {
        el.mask = word_strip_all(el.mask, common, m);
    }
    ms.sort();
    let td = m - word_len(common);
    El {
        mask: common,
        core: index[td][&ms],
    }
}

/// The equivariant inclusion `sp(K, n) -> sp(K, n+1)` adjoining a basepoint
/// coordinate, as an index map on nondegenerate simplices.
pub struct SpInclusion {
    pub source: SpData,
    pub target: SpData,
    /// Per degree: source simplex index -> target simplex index.
    pub map: Vec<Vec<u32>>,
}

pub fn sp_inclusion(
    k: &C2SimplicialSet,
    n: usize,
    max_degree: Option<usize>,
) -> Result<SpInclusion> {
    let source = sp_data(k, n, max_degree)?;
    let target = sp_data(k, n + 1, max_degree)?;
    let top = source.set.stored_top().min(target.set.stored_top());
    let mut map = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let pad = k.basepoint_el(m)?;
        let level: Vec<u32> = (0..source.set.count(m))
            .map(|s| {
                let mut ms = source.members[m][s].clone();
                ms.push(pad);
                ms.sort();
                target.index[m][&ms]
            })
            .collect();
        map.push(level);
    }
    Ok(SpInclusion {
        source,
        target,
        map,
    })
}
