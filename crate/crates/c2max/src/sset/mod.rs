//! Finite-in-each-degree simplicial sets with involution.
//!
//! Only nondegenerate simplices are stored. Every face of a nondegenerate
//! simplex is recorded in Eilenberg-Zilber normal form: a degeneracy word
//! (collapse mask) plus a nondegenerate target one or more degrees down.
//! Arbitrary (possibly degenerate) simplices of degree m are handled as
//! `El { mask, core }` values, and the face/degeneracy calculus pushes
//! operators through the mask with the simplicial identities.
//!
//! A model is either `complete` (no nondegenerate simplices above the stored
//! top degree, ever) or an honest truncation; cohomology requests above the
//! faithful range of a truncation are rejected by the callers that care.

pub mod build;
pub mod sp;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::errors::{Error, Result};
use crate::words::{word_compose, word_face, word_indices, word_len, FaceThrough};

/// A possibly degenerate simplex: a degeneracy word over a nondegenerate
/// core. The degree is contextual; the core lives `word_len(mask)` degrees
/// below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct El {
    pub mask: u64,
    pub core: u32,
}

impl El {
    pub fn nondeg(core: u32) -> El {
        El { mask: 0, core }
    }

    pub fn is_nondeg(&self) -> bool {
        self.mask == 0
    }
}

/// Per-degree data: labels, face tables, involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeData {
    pub labels: Vec<String>,
    /// For degree m >= 1: faces[s][i] = normal form of the i-th face, i in 0..=m.
    pub faces: Vec<Vec<El>>,
    pub sigma: Vec<u32>,
}

impl DegreeData {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C2SimplicialSet {
    degrees: Vec<DegreeData>,
    complete: bool,
    basepoint: Option<u32>,
    fixed_faithful: bool,
}

impl C2SimplicialSet {
    /// Assembles a simplicial set and brings it to canonical order.
    /// Face tables must already be in normal form.
    pub fn assemble(
        mut degrees: Vec<DegreeData>,
        complete: bool,
        basepoint: Option<u32>,
        fixed_faithful: bool,
    ) -> C2SimplicialSet {
        // Drop empty top degrees of complete models.
        while degrees.len() > 1 && complete && degrees.last().is_some_and(|d| d.is_empty()) {
            degrees.pop();
        }
        let mut set = C2SimplicialSet {
            degrees,
            complete,
            basepoint,
            fixed_faithful,
        };
        set.canonicalize();
        set
    }

    /// Sorts every degree by label and remaps face tables, the involution
    /// and the basepoint accordingly. Labels must be unique per degree.
    fn canonicalize(&mut self) {
        let mut remaps: Vec<Vec<u32>> = Vec::with_capacity(self.degrees.len());
        for m in 0..self.degrees.len() {
            let n = self.degrees[m].len();
            let mut order: Vec<u32> = (0..n as u32).collect();
            order.sort_by(|&a, &b| {
                self.degrees[m].labels[a as usize].cmp(&self.degrees[m].labels[b as usize])
            });
            let mut remap = vec![0u32; n];
            for (new, &old) in order.iter().enumerate() {
                remap[old as usize] = new as u32;
            }
            for w in self.degrees[m].labels.windows(2) {
                debug_assert_ne!(w[0], w[1], "duplicate labels in degree {m}");
            }
            let d = &mut self.degrees[m];
            let mut labels = vec![String::new(); n];
            let mut sigma = vec![0u32; n];
            let mut faces = vec![Vec::new(); n];
            for old in 0..n {
                let new = remap[old] as usize;
                labels[new] = std::mem::take(&mut d.labels[old]);
                sigma[new] = d.sigma[old];
                faces[new] = std::mem::take(&mut d.faces[old]);
            }
            // sigma values still point at old indices of the same degree.
            for s in sigma.iter_mut() {
                *s = remap[*s as usize];
            }
            // Face targets point at lower degrees, already remapped.
            for fs in faces.iter_mut() {
                for f in fs.iter_mut() {
                    let target_degree = m - 1 - word_len(f.mask);
                    f.core = remaps[target_degree][f.core as usize];
                }
            }
            d.labels = labels;
            d.sigma = sigma;
            d.faces = faces;
            remaps.push(remap);
        }
        if let Some(bp) = self.basepoint.as_mut() {
            *bp = remaps[0][*bp as usize];
        }
    }

    pub fn stored_top(&self) -> usize {
        self.degrees.len() - 1
    }

    /// Highest stored degree with a nondegenerate simplex.
    pub fn dim(&self) -> usize {
        (0..self.degrees.len())
            .rev()
            .find(|&m| !self.degrees[m].is_empty())
            .unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Degrees `0..=faithful_top()` have complete nondegenerate data.
    pub fn faithful_top(&self) -> usize {
        if self.complete {
            usize::MAX
        } else {
            self.stored_top()
        }
    }

    /// Count of nondegenerate m-simplices (0 above the stored range of a
    /// complete model).
    pub fn count(&self, m: usize) -> usize {
        self.degrees.get(m).map_or(0, |d| d.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.len()).collect()
    }

    pub fn degree(&self, m: usize) -> &DegreeData {
        &self.degrees[m]
    }

    pub fn basepoint(&self) -> Option<u32> {
        self.basepoint
    }

    /// The basepoint when it exists and is fixed by the involution.
    pub fn fixed_basepoint(&self) -> Option<u32> {
        self.basepoint
            .filter(|&b| self.degrees[0].sigma[b as usize] == b)
    }

    pub fn is_fixed_faithful(&self) -> bool {
        self.fixed_faithful
    }

    pub fn label(&self, m: usize, s: u32) -> &str {
        &self.degrees[m].labels[s as usize]
    }

    pub fn element_label(&self, m: usize, el: El) -> String {
        let k = m - word_len(el.mask);
        let core = self.label(k, el.core);
        if el.mask == 0 {
            core.to_string()
        } else {
            let idx: Vec<String> = word_indices(el.mask)
                .iter()
                .map(|i| i.to_string())
                .collect();
            format!("s[{}]{}", idx.join(","), core)
        }
    }

    /// Euler characteristic from nondegenerate counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(m, &c)| if m % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Applies the involution to an element of degree m.
    pub fn sigma_el(&self, m: usize, el: El) -> El {
        let k = m - word_len(el.mask);
        El {
            mask: el.mask,
            core: self.degrees[k].sigma[el.core as usize],
        }
    }

    /// The i-th face of an element of degree m, in normal form.
    pub fn face_el(&self, m: usize, el: El, i: usize) -> El {
        debug_assert!(m >= 1 && i <= m);
        match word_face(el.mask, m, i) {
            FaceThrough::Degenerate(mask) => El {
                mask,
                core: el.core,
            },
            FaceThrough::Core { t, outer_mask } => {
                let k = m - word_len(el.mask);
                let stored = self.degrees[k].faces[el.core as usize][t];
                El {
                    mask: word_compose(stored.mask, outer_mask, m - 1),
                    core: stored.core,
                }
            }
        }
    }

    /// All elements (degenerate included) of degree m, in canonical
    /// (mask, core) order. Requires the degree to be inside the faithful
    /// range.
    pub fn elements(&self, m: usize) -> Vec<El> {
        let mut out = Vec::new();
        let top = 1u64 << m;
        for mask in 0..top {
            let k = m - word_len(mask);
            if k < self.degrees.len() {
                for core in 0..self.degrees[k].len() as u32 {
                    out.push(El { mask, core });
                }
            }
        }
        out
    }

    /// The m-fold degenerate basepoint.
    pub fn basepoint_el(&self, m: usize) -> Result<El> {
        let bp = self
            .basepoint
            .ok_or_else(|| Error::MissingBasepoint("object is not based".into()))?;
        let mask = if m == 0 { 0 } else { (1u64 << m) - 1 };
        Ok(El { mask, core: bp })
    }

    /// Structural validation: face-table shape, involution properties,
    /// simplicial identities on composite faces.
    ///
    /// `identity_samples` bounds how many nondegenerate simplices per degree
    /// get the full quadratic identity check; `None` checks all of them.
    pub fn validate(&self, identity_samples: Option<usize>) -> Result<()> {
        for (m, d) in self.degrees.iter().enumerate() {
            if d.sigma.len() != d.len() || d.faces.len() != d.len() {
                return Err(Error::Invalid(format!("degree {m}: ragged tables")));
            }
            for s in 0..d.len() {
                let t = d.sigma[s] as usize;
                if t >= d.len() || d.sigma[t] != s as u32 {
                    return Err(Error::Invalid(format!(
                        "degree {m}: involution is not an involution at {s}"
                    )));
                }
                if m == 0 {
                    if !d.faces[s].is_empty() {
                        return Err(Error::Invalid("vertices must not have faces".into()));
                    }
                    continue;
                }
                if d.faces[s].len() != m + 1 {
                    return Err(Error::Invalid(format!(
                        "degree {m}: simplex {s} has {} faces, expected {}",
                        d.faces[s].len(),
                        m + 1
                    )));
                }
                for f in &d.faces[s] {
                    let w = word_len(f.mask);
                    if w > m - 1 || word_indices(f.mask).last().is_some_and(|&i| i >= m - 1) {
                        return Err(Error::Invalid(format!("degree {m}: bad face word")));
                    }
                    let td = m - 1 - w;
                    if f.core as usize >= self.degrees[td].len() {
                        return Err(Error::Invalid(format!("degree {m}: bad face target")));
                    }
                }
            }
        }
        // sigma commutes with faces.
        for m in 1..self.degrees.len() {
            let d = &self.degrees[m];
            for s in 0..d.len() {
                for i in 0..=m {
                    let a = self.sigma_el(m - 1, d.faces[s][i]);
                    let b = self.degrees[m].faces[d.sigma[s] as usize][i];
                    if a != b {
                        return Err(Error::Invalid(format!(
                            "degree {m}: involution does not commute with face {i} at {s}"
                        )));
                    }
                }
            }
        }
        // d_i d_j = d_{j-1} d_i for i < j, on nondegenerate simplices.
        for m in 2..self.degrees.len() {
            let n = self.degrees[m].len();
            let stride = match identity_samples {
                Some(k) if k > 0 && n > k => n / k,
                _ => 1,
            };
            for s in (0..n).step_by(stride.max(1)) {
                let x = El::nondeg(s as u32);
                for j in 1..=m {
                    for i in 0..j {
                        let a = self.face_el(m - 1, self.face_el(m, x, j), i);
                        let b = self.face_el(m - 1, self.face_el(m, x, i), j - 1);
                        if a != b {
                            return Err(Error::Invalid(format!(
                                "simplicial identity fails at degree {m}, simplex {s}, (i,j)=({i},{j})"
                            )));
                        }
                    }
                }
            }
        }
        if let Some(bp) = self.basepoint {
            if bp as usize >= self.degrees[0].len() {
                return Err(Error::Invalid("basepoint out of range".into()));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let doc = SetJson {
            complete: self.complete,
            fixed_faithful: self.fixed_faithful,
            basepoint: self.basepoint.map(|b| b as usize),
            degrees: self
                .degrees
                .iter()
                .enumerate()
                .map(|(m, d)| DegreeJson {
                    simplices: d.labels.clone(),
                    involution: d.sigma.iter().map(|&s| s as usize).collect(),
                    faces: if m == 0 {
                        Vec::new()
                    } else {
                        d.faces
                            .iter()
                            .map(|fs| {
                                fs.iter()
                                    .map(|f| FaceJson {
                                        word: word_indices(f.mask),
                                        target: f.core as usize,
                                    })
                                    .collect()
                            })
                            .collect()
                    },
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("simplicial set serialization")
    }

    pub fn from_json(text: &str) -> Result<C2SimplicialSet> {
        let doc: SetJson = serde_json::from_str(text)?;
        let mut degrees = Vec::new();
        for (m, d) in doc.degrees.iter().enumerate() {
            let n = d.simplices.len();
            if d.involution.len() != n {
                return Err(Error::Invalid(format!("degree {m}: involution length")));
            }
            let faces: Vec<Vec<El>> = if m == 0 {
                vec![Vec::new(); n]
            } else {
                if d.faces.len() != n {
                    return Err(Error::Invalid(format!("degree {m}: faces length")));
                }
                d.faces
                    .iter()
                    .map(|fs| {
                        fs.iter()
                            .map(|f| El {
                                mask: crate::words::word_from_indices(&f.word),
                                core: f.target as u32,
                            })
                            .collect()
                    })
                    .collect()
            };
            degrees.push(DegreeData {
                labels: d.simplices.clone(),
                faces,
                sigma: d.involution.iter().map(|&s| s as u32).collect(),
            });
        }
        let set = C2SimplicialSet::assemble(
            degrees,
            doc.complete,
            doc.basepoint.map(|b| b as u32),
            doc.fixed_faithful,
        );
        set.validate(Some(64))?;
        Ok(set)
    }

    /// The sub-simplicial set on the nondegenerate simplices selected by the
    /// predicate. Fails if the selection is not closed under faces.
    pub fn subobject(
        &self,
        keep: impl Fn(usize, u32) -> bool,
        fixed_faithful: bool,
    ) -> Result<C2SimplicialSet> {
        let mut remap: Vec<BTreeMap<u32, u32>> = Vec::new();
        let mut degrees = Vec::new();
        for (m, d) in self.degrees.iter().enumerate() {
            let kept: Vec<u32> = (0..d.len() as u32).filter(|&s| keep(m, s)).collect();
            let map: BTreeMap<u32, u32> = kept
                .iter()
                .enumerate()
                .map(|(new, &old)| (old, new as u32))
                .collect();
            let mut labels = Vec::new();
            let mut sigma = Vec::new();
            let mut faces = Vec::new();
            for &old in &kept {
                labels.push(d.labels[old as usize].clone());
                let s_img = d.sigma[old as usize];
                let s_new = map.get(&s_img).ok_or_else(|| {
                    Error::Invalid("subobject not closed under the involution".into())
                })?;
                sigma.push(*s_new);
                if m > 0 {
                    let fs: Result<Vec<El>> = d.faces[old as usize]
                        .iter()
                        .map(|f| {
                            let td = m - 1 - word_len(f.mask);
                            remap[td]
                                .get(&f.core)
                                .map(|&c| El {
                                    mask: f.mask,
                                    core: c,
                                })
                                .ok_or_else(|| {
                                    Error::Invalid("subobject not closed under faces".into())
                                })
                        })
                        .collect();
                    faces.push(fs?);
                } else {
                    faces.push(Vec::new());
                }
            }
            degrees.push(DegreeData {
                labels,
                faces,
                sigma,
            });
            remap.push(map);
        }
        let basepoint = self.basepoint.and_then(|b| remap[0].get(&b).copied());
        Ok(C2SimplicialSet::assemble(
            degrees,
            self.complete,
            basepoint,
            fixed_faithful,
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct SetJson {
    complete: bool,
    fixed_faithful: bool,
    basepoint: Option<usize>,
    degrees: Vec<DegreeJson>,
}

#[derive(Serialize, Deserialize)]
struct DegreeJson {
    simplices: Vec<String>,
    involution: Vec<usize>,
    #[serde(default)]
    faces: Vec<Vec<FaceJson>>,
}

#[derive(Serialize, Deserialize)]
struct FaceJson {
    word: Vec<usize>,
    target: usize,
}
