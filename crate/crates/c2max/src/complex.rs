//! Finite abstract simplicial complexes with a vertex involution.
//!
//! This is the input layer: representation spheres, antipodal spheres, and
//! user-supplied complexes all live here, together with barycentric
//! subdivision, the fixed subcomplex, and regularity validation. Regularity
//! ("every invariant simplex is fixed vertex-wise") is what licenses both
//! the fixed-subcomplex computation and the direct conversion to a
//! simplicial set.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::errors::{Error, Result};

/// A finite simplicial complex with an involution on vertices.
///
/// Simplices are stored as sorted vertex-id lists, the simplex set sorted by
/// (dimension, lexicographic). Vertices are sorted by label. Everything is
/// immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C2Complex {
    vertices: Vec<String>,
    simplices: Vec<Vec<u32>>,
    involution: Vec<u32>,
    basepoint: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub face_closure_ok: bool,
    pub involution_simplicial: bool,
    pub regular: bool,
    pub basepoint_fixed: bool,
    /// Invariant simplices that are not vertex-wise fixed (labels), when any.
    pub irregular_witness: Option<Vec<String>>,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.face_closure_ok && self.involution_simplicial && self.regular && self.basepoint_fixed
    }
}

impl C2Complex {
    /// Builds a complex from arbitrary simplices, closing downward under
    /// faces. The involution is given as label pairs; unmentioned vertices
    /// are fixed.
    pub fn build(
        vertices: &[&str],
        simplices: &[&[&str]],
        swaps: &[(&str, &str)],
        basepoint: Option<&str>,
    ) -> Result<C2Complex> {
        let mut labels: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        labels.sort();
        labels.dedup();
        let id = |l: &str| -> Result<u32> {
            labels
                .binary_search_by(|x| x.as_str().cmp(l))
                .map(|i| i as u32)
                .map_err(|_| Error::Invalid(format!("unknown vertex label {l:?}")))
        };
        let mut invol: Vec<u32> = (0..labels.len() as u32).collect();
        for &(a, b) in swaps {
            let (ia, ib) = (id(a)?, id(b)?);
            invol[ia as usize] = ib;
            invol[ib as usize] = ia;
        }
        for (i, &j) in invol.iter().enumerate() {
            if invol[j as usize] != i as u32 {
                return Err(Error::Invalid("involution is not of order two".into()));
            }
        }
        let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
        for s in simplices {
            let mut ids: Vec<u32> = s.iter().map(|l| id(l)).collect::<Result<_>>()?;
            ids.sort();
            ids.dedup();
            if ids.is_empty() {
                return Err(Error::Invalid("empty simplex".into()));
            }
            insert_closed(&mut set, &ids);
        }
        let bp = basepoint.map(id).transpose()?;
        Ok(C2Complex {
            vertices: labels,
            simplices: sorted_simplices(set),
            involution: invol,
            basepoint: bp,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_label(&self, v: u32) -> &str {
        &self.vertices[v as usize]
    }

    pub fn simplices(&self) -> &[Vec<u32>] {
        &self.simplices
    }

    pub fn involution(&self) -> &[u32] {
        &self.involution
    }

    pub fn basepoint(&self) -> Option<u32> {
        self.basepoint
    }

    pub fn dim(&self) -> usize {
        self.simplices
            .iter()
            .map(|s| s.len() - 1)
            .max()
            .unwrap_or(0)
    }

    /// Simplex counts per dimension.
    pub fn counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim() + 1];
        for s in &self.simplices {
            out[s.len() - 1] += 1;
        }
        out
    }

    pub fn simplex_label(&self, s: &[u32]) -> String {
        s.iter()
            .map(|&v| self.vertices[v as usize].as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    fn image_simplex(&self, s: &[u32]) -> Vec<u32> {
        let mut t: Vec<u32> = s.iter().map(|&v| self.involution[v as usize]).collect();
        t.sort();
        t
    }

    fn has_simplex(&self, s: &[u32]) -> bool {
        self.simplices
            .binary_search_by(|x| cmp_simplex(x, s))
            .is_ok()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut face_closure_ok = true;
        for s in &self.simplices {
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    if !self.has_simplex(&f) {
                        face_closure_ok = false;
                    }
                }
            }
        }
        let involution_simplicial = self
            .simplices
            .iter()
            .all(|s| self.has_simplex(&self.image_simplex(s)));
        let mut witnesses = Vec::new();
        for s in &self.simplices {
            let img = self.image_simplex(s);
            if &img == s && s.iter().any(|&v| self.involution[v as usize] != v) {
                witnesses.push(self.simplex_label(s));
            }
        }
        let regular = witnesses.is_empty();
        let basepoint_fixed = match self.basepoint {
            None => true,
            Some(b) => self.involution[b as usize] == b,
        };
        ValidationReport {
            face_closure_ok,
            involution_simplicial,
            regular,
            basepoint_fixed,
            irregular_witness: if regular { None } else { Some(witnesses) },
        }
    }

    pub fn is_regular(&self) -> bool {
        self.validate().regular
    }

    /// Vertices fixed by the involution.
    pub fn fixed_vertices(&self) -> Vec<u32> {
        (0..self.vertices.len() as u32)
            .filter(|&v| self.involution[v as usize] == v)
            .collect()
    }

    /// The full subcomplex on fixed vertices, forgetting the involution.
    ///
    /// Only meaningful as the fixed-point set when the complex is regular.
    pub fn fixed_subcomplex(&self) -> Result<C2Complex> {
        let report = self.validate();
        if !report.regular {
            return Err(Error::NotFixedFaithful(format!(
                "complex is irregular; invariant simplices {:?} are not vertex-wise fixed",
                report.irregular_witness.unwrap_or_default()
            )));
        }
        let fixed: BTreeSet<u32> = self.fixed_vertices().into_iter().collect();
        let mut labels: Vec<String> = fixed
            .iter()
            .map(|&v| self.vertices[v as usize].clone())
            .collect();
        labels.sort();
        let remap: BTreeMap<u32, u32> = fixed
            .iter()
            .map(|&v| {
                let l = &self.vertices[v as usize];
                let idx = labels.binary_search(l).unwrap() as u32;
                (v, idx)
            })
            .collect();
        let mut set = BTreeSet::new();
        for s in &self.simplices {
            if s.iter().all(|v| fixed.contains(v)) {
                let mut t: Vec<u32> = s.iter().map(|v| remap[v]).collect();
                t.sort();
                set.insert(t);
            }
        }
        let invol: Vec<u32> = (0..labels.len() as u32).collect();
        let bp = self.basepoint.and_then(|b| remap.get(&b).copied());
        Ok(C2Complex {
            vertices: labels,
            simplices: sorted_simplices(set),
            involution: invol,
            basepoint: bp,
        })
    }

    /// Barycentric subdivision with the induced involution.
    ///
    /// Vertices of the output are the simplices of the input; simplices are
    /// flags. The result is always regular: an invariant flag has its members
    /// fixed degree-wise because the involution preserves dimension.
    pub fn barycentric_subdivision(&self) -> C2Complex {
        let mut labels: Vec<String> = self
            .simplices
            .iter()
            .map(|s| format!("{{{}}}", self.simplex_label(s)))
            .collect();
        labels.sort();
        let idx_of = |s: &[u32]| -> u32 {
            let l = format!("{{{}}}", self.simplex_label(s));
            labels.binary_search(&l).unwrap() as u32
        };
        let mut invol = vec![0u32; labels.len()];
        for s in &self.simplices {
            invol[idx_of(s) as usize] = idx_of(&self.image_simplex(s));
        }
        // Flags: chains of strict inclusions.
        let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut stack: Vec<(Vec<u32>, Vec<u32>)> = self
            .simplices
            .iter()
            .map(|s| (vec![idx_of(s)], s.clone()))
            .collect();
        while let Some((flag, top)) = stack.pop() {
            let mut sorted = flag.clone();
            sorted.sort();
            // Faces of a flag are its subchains, including ones that skip
            // dimensions, so close downward.
            insert_closed(&mut set, &sorted);
            if top.len() > 1 {
                for sub in proper_subsets(&top) {
                    let mut next = flag.clone();
                    next.push(idx_of(&sub));
                    stack.push((next, sub));
                }
            }
        }
        let bp = self.basepoint.map(|b| idx_of(&[b]));
        C2Complex {
            vertices: labels,
            simplices: sorted_simplices(set),
            involution: invol,
            basepoint: bp,
        }
    }

    /// Boundary of the (p+1)-dimensional cross-polytope with the involution
    /// negating coordinates 1..=q. Models the representation sphere with
    /// fixed subcomplex a (p-q)-sphere; based at the fixed vertex +e_{p+1}.
    pub fn rep_sphere(p: usize, q: usize) -> Result<C2Complex> {
        if q > p {
            return Err(Error::Contract(format!(
                "rep_sphere requires p >= q, got p={p}, q={q}"
            )));
        }
        Self::cross_polytope(p + 1, q, Some(p + 1))
    }

    /// Cross-polytope boundary with all coordinates negated: the free sphere.
    pub fn antipodal_sphere(n: usize) -> C2Complex {
        Self::cross_polytope(n + 1, n + 1, None).expect("antipodal sphere construction")
    }

    fn cross_polytope(
        coords: usize,
        negated: usize,
        basepoint_coord: Option<usize>,
    ) -> Result<C2Complex> {
        assert!(coords >= 1);
        let label = |c: usize, sign: bool| format!("{}{c}", if sign { "+" } else { "-" });
        let mut vertices = Vec::new();
        for c in 1..=coords {
            vertices.push(label(c, true));
            vertices.push(label(c, false));
        }
        // Simplices: nonempty subsets choosing at most one sign per coordinate.
        let mut simplices: Vec<Vec<String>> = vec![vec![]];
        for c in 1..=coords {
            let mut next = Vec::new();
            for s in &simplices {
                next.push(s.clone());
                for sign in [true, false] {
                    let mut t = s.clone();
                    t.push(label(c, sign));
                    next.push(t);
                }
            }
            simplices = next;
        }
        let simplices: Vec<Vec<&str>> = simplices
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| s.iter().map(|x| x.as_str()).collect())
            .collect();
        let swaps: Vec<(String, String)> = (1..=negated)
            .map(|c| (label(c, true), label(c, false)))
            .collect();
        let swaps_ref: Vec<(&str, &str)> = swaps
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let bp_label = basepoint_coord.map(|c| label(c, true));
        let vertices_ref: Vec<&str> = vertices.iter().map(|x| x.as_str()).collect();
        let simplices_ref: Vec<&[&str]> = simplices.iter().map(|s| s.as_slice()).collect();
        C2Complex::build(
            &vertices_ref,
            &simplices_ref,
            &swaps_ref,
            bp_label.as_deref(),
        )
    }

    /// A single based vertex with the trivial involution.
    pub fn point() -> C2Complex {
        C2Complex::build(&["pt"], &[&["pt"]], &[], Some("pt")).unwrap()
    }

    /// Minimal triangulation of the circle (triangle boundary), trivial
    /// involution, based.
    pub fn circle() -> C2Complex {
        C2Complex::build(
            &["a", "b", "c"],
            &[&["a", "b"], &["b", "c"], &["a", "c"]],
            &[],
            Some("a"),
        )
        .unwrap()
    }

    /// Minimal triangulation of the 2-sphere (tetrahedron boundary), trivial
    /// involution, based.
    pub fn s2() -> C2Complex {
        C2Complex::build(
            &["a", "b", "c", "d"],
            &[
                &["a", "b", "c"],
                &["a", "b", "d"],
                &["a", "c", "d"],
                &["b", "c", "d"],
            ],
            &[],
            Some("a"),
        )
        .unwrap()
    }

    pub fn to_json(&self) -> String {
        let mut invol = BTreeMap::new();
        for (i, &j) in self.involution.iter().enumerate() {
            if i as u32 != j {
                invol.insert(self.vertices[i].clone(), self.vertices[j as usize].clone());
            }
        }
        let doc = ComplexJson {
            vertices: self.vertices.clone(),
            simplices: self
                .simplices
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|&v| self.vertices[v as usize].clone())
                        .collect()
                })
                .collect(),
            involution: invol,
            basepoint: self.basepoint.map(|b| self.vertices[b as usize].clone()),
        };
        serde_json::to_string(&doc).expect("complex serialization")
    }

    pub fn from_json(text: &str) -> Result<C2Complex> {
        let doc: ComplexJson = serde_json::from_str(text)?;
        let vertices: Vec<&str> = doc.vertices.iter().map(|s| s.as_str()).collect();
        let simplices_owned: Vec<Vec<&str>> = doc
            .simplices
            .iter()
            .map(|s| s.iter().map(|x| x.as_str()).collect())
            .collect();
        let simplices: Vec<&[&str]> = simplices_owned.iter().map(|s| s.as_slice()).collect();
        // Accept one-sided involution entries; build symmetrizes and checks.
        let swaps: Vec<(&str, &str)> = doc
            .involution
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        C2Complex::build(&vertices, &simplices, &swaps, doc.basepoint.as_deref())
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<String>,
    simplices: Vec<Vec<String>>,
    #[serde(default)]
    involution: BTreeMap<String, String>,
    #[serde(default)]
    basepoint: Option<String>,
}

fn cmp_simplex(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn sorted_simplices(set: BTreeSet<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut v: Vec<Vec<u32>> = set.into_iter().collect();
    v.sort_by(|a, b| cmp_simplex(a, b));
    v
}

fn insert_closed(set: &mut BTreeSet<Vec<u32>>, s: &[u32]) {
    if set.contains(s) {
        return;
    }
    set.insert(s.to_vec());
    if s.len() > 1 {
        for i in 0..s.len() {
            let mut f = s.to_vec();
            f.remove(i);
            insert_closed(set, &f);
        }
    }
}

fn proper_subsets(s: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..s.len() {
        let mut f = s.to_vec();
        f.remove(i);
        out.push(f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_with_swap_is_regular() {
        // rep_sphere(1,1): square with opposite vertices +1/-1 swapped.
        let k = C2Complex::rep_sphere(1, 1).unwrap();
        assert_eq!(k.counts(), vec![4, 4]);
        let r = k.validate();
        assert!(r.all_ok());
        // Enumerate invariant simplices by hand: no edge is invariant because
        // the swapped pair is antipodal and never spans an edge.
        for s in k.simplices() {
            let img = {
                let mut t: Vec<u32> = s.iter().map(|&v| k.involution()[v as usize]).collect();
                t.sort();
                t
            };
            if &img == s {
                assert!(s.iter().all(|&v| k.involution()[v as usize] == v));
            }
        }
    }

    #[test]
    fn swapped_edge_is_irregular() {
        let k = C2Complex::build(&["a", "b"], &[&["a", "b"]], &[("a", "b")], None).unwrap();
        let r = k.validate();
        assert!(!r.regular);
        assert_eq!(r.irregular_witness.unwrap(), vec!["a.b".to_string()]);
        assert!(k.fixed_subcomplex().is_err());
    }

    #[test]
    fn identity_involution_is_regular() {
        let k = C2Complex::s2();
        assert!(k.validate().all_ok());
        assert_eq!(k.fixed_subcomplex().unwrap(), k);
    }

    #[test]
    fn rep_sphere_shapes() {
        let s00 = C2Complex::rep_sphere(0, 0).unwrap();
        assert_eq!(s00.counts(), vec![2]);
        assert!(s00.validate().all_ok());

        let s21 = C2Complex::rep_sphere(2, 1).unwrap();
        assert_eq!(s21.counts(), vec![6, 12, 8]);
        let fixed = s21.fixed_subcomplex().unwrap();
        // Fixed set: the square spanned by +-2, +-3.
        assert_eq!(fixed.counts(), vec![4, 4]);

        assert!(C2Complex::rep_sphere(1, 2).is_err());
    }

    #[test]
    fn rep_sphere_fixed_is_lower_sphere() {
        let s11 = C2Complex::rep_sphere(1, 1).unwrap();
        let fixed = s11.fixed_subcomplex().unwrap();
        assert_eq!(fixed.counts(), vec![2]);
        assert_eq!(fixed.dim(), 0);
    }

    #[test]
    fn antipodal_sphere_has_no_fixed_vertices() {
        let a0 = C2Complex::antipodal_sphere(0);
        assert_eq!(a0.counts(), vec![2]);
        assert!(a0.fixed_vertices().is_empty());
        assert!(a0.validate().all_ok());

        let a1 = C2Complex::antipodal_sphere(1);
        assert_eq!(a1.counts(), vec![4, 4]);
        assert!(a1.fixed_vertices().is_empty());
        assert!(a1.validate().all_ok());

        let a2 = C2Complex::antipodal_sphere(2);
        assert_eq!(a2.counts(), vec![6, 12, 8]);
        assert!(a2.fixed_vertices().is_empty());
    }

    #[test]
    fn subdivision_of_swapped_edge_is_regular() {
        let k = C2Complex::build(&["a", "b"], &[&["a", "b"]], &[("a", "b")], None).unwrap();
        let sd = k.barycentric_subdivision();
        assert_eq!(sd.counts(), vec![3, 2]);
        assert!(sd.validate().all_ok());
        // The barycenter of the invariant edge is fixed.
        let fixed = sd.fixed_subcomplex().unwrap();
        assert_eq!(fixed.counts(), vec![1]);
    }

    #[test]
    fn subdivision_always_regular_on_spheres() {
        for (p, q) in [(1, 1), (2, 1), (2, 2)] {
            let sd = C2Complex::rep_sphere(p, q)
                .unwrap()
                .barycentric_subdivision();
            assert!(sd.validate().all_ok(), "sd of sphere({p},{q})");
        }
        let sd = C2Complex::antipodal_sphere(1).barycentric_subdivision();
        assert!(sd.validate().all_ok());
    }

    #[test]
    fn sd_square_fixed_matches_unsubdivided_fixed() {
        let k = C2Complex::rep_sphere(1, 1).unwrap();
        let sd = k.barycentric_subdivision();
        let fixed = sd.fixed_subcomplex().unwrap();
        // Same two isolated points as before subdivision.
        assert_eq!(fixed.counts(), vec![2]);
    }

    #[test]
    fn json_round_trip_byte_identical() {
        let k = C2Complex::rep_sphere(1, 1).unwrap();
        let s = k.to_json();
        let k2 = C2Complex::from_json(&s).unwrap();
        assert_eq!(k, k2);
        assert_eq!(k2.to_json(), s);
    }

    #[test]
    fn json_unmentioned_vertices_fixed() {
        let text = r#"{"vertices":["a","b","c"],"simplices":[["a"],["b"],["c"],["a","b"]],"involution":{},"basepoint":"c"}"#;
        let k = C2Complex::from_json(text).unwrap();
        assert_eq!(k.fixed_vertices().len(), 3);
        assert!(k.validate().all_ok());
    }

    #[test]
    fn euler_characteristic_of_spheres() {
        let chi = |k: &C2Complex| -> i64 {
            k.counts()
                .iter()
                .enumerate()
                .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
                .sum()
        };
        assert_eq!(chi(&C2Complex::rep_sphere(1, 1).unwrap()), 0);
        assert_eq!(chi(&C2Complex::rep_sphere(2, 1).unwrap()), 2);
        assert_eq!(chi(&C2Complex::s2()), 2);
    }
}
