//! Constructors: complex-to-simplicial-set conversion and the combinators
//! (wedge, product, additive and multiplicative induction), plus fixed
//! subobjects and quotients.
//!
//! Conversion uses the orbit-paired vertex order: vertices sorted by
//! (orbit representative label, own label). On a regular complex no simplex
//! contains both members of a swapped orbit, so this order makes the
//! involution monotone on every simplex, which is exactly what a simplicial
//! map of ordered simplicial sets requires. Irregular complexes are
//! subdivided once; the subdivision is always regular.

use std::collections::HashMap;

use crate::complex::C2Complex;
use crate::errors::{Error, Result};
use crate::sset::{C2SimplicialSet, DegreeData, El};
use crate::words::{word_len, word_strip_all};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineKind {
    Wedge,
    Product,
    AdditiveInduction,
    MultiplicativeInduction,
}

/// The spec-level combinator front end.
pub fn combine(
    kind: CombineKind,
    a: &C2SimplicialSet,
    b: Option<&C2SimplicialSet>,
) -> Result<C2SimplicialSet> {
    match kind {
        CombineKind::Wedge => {
            let b = b.ok_or_else(|| Error::Contract("wedge needs two operands".into()))?;
            wedge(a, b)
        }
        CombineKind::Product => {
            let b = b.ok_or_else(|| Error::Contract("product needs two operands".into()))?;
            product(a, b)
        }
        CombineKind::AdditiveInduction => {
            if b.is_some() {
                return Err(Error::Contract(
                    "additive induction takes a single operand".into(),
                ));
            }
            additive_induction(a)
        }
        CombineKind::MultiplicativeInduction => {
            if b.is_some() {
                return Err(Error::Contract(
                    "multiplicative induction takes a single operand".into(),
                ));
            }
            multiplicative_induction(a)
        }
    }
}

/// Converts a complex to a simplicial set.
///
/// Regular complexes convert directly under the orbit-paired order;
/// irregular ones are barycentrically subdivided once first. The output is
/// always fixed-faithful.
pub fn to_simplicial_set(k: &C2Complex) -> Result<C2SimplicialSet> {
    let owned;
    let k = if k.is_regular() {
        k
    } else {
        owned = k.barycentric_subdivision();
        debug_assert!(owned.validate().regular);
        &owned
    };
    let n = k.vertex_count();
    let invol = k.involution();
    // Orbit-paired total order on vertices.
    let mut order: Vec<u32> = (0..n as u32).collect();
    let key = |v: u32| -> (String, String) {
        let a = k.vertex_label(v).to_string();
        let b = k.vertex_label(invol[v as usize]).to_string();
        (a.clone().min(b), a)
    };
    order.sort_by_key(|&v| key(v));
    let mut pos = vec![0u32; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v as usize] = p as u32;
    }

    let dim = k.dim();
    let mut tuples: Vec<Vec<Vec<u32>>> = vec![Vec::new(); dim + 1];
    for s in k.simplices() {
        let mut t: Vec<u32> = s.iter().map(|&v| pos[v as usize]).collect();
        t.sort();
        tuples[s.len() - 1].push(t);
    }
    for t in tuples.iter_mut() {
        t.sort();
    }
    let index: Vec<HashMap<Vec<u32>, u32>> = tuples
        .iter()
        .map(|ts| {
            ts.iter()
                .enumerate()
                .map(|(i, t)| (t.clone(), i as u32))
                .collect()
        })
        .collect();

    let mut degrees = Vec::with_capacity(dim + 1);
    for (m, ts) in tuples.iter().enumerate() {
        let mut labels = Vec::with_capacity(ts.len());
        let mut faces = Vec::with_capacity(ts.len());
        let mut sigma = Vec::with_capacity(ts.len());
        for t in ts {
            labels.push(
                t.iter()
                    .map(|&p| k.vertex_label(order[p as usize]))
                    .collect::<Vec<_>>()
                    .join("."),
            );
            if m > 0 {
                let fs: Vec<El> = (0..=m)
                    .map(|i| {
                        let mut f = t.clone();
                        f.remove(i);
                        El::nondeg(index[m - 1][&f])
                    })
                    .collect();
                faces.push(fs);
            } else {
                faces.push(Vec::new());
            }
            let mut img: Vec<u32> = t
                .iter()
                .map(|&p| pos[invol[order[p as usize] as usize] as usize])
                .collect();
            let sorted_ok = img.windows(2).all(|w| w[0] < w[1]);
            if !sorted_ok {
                img.sort();
                return Err(Error::Invalid(
                    "involution not monotone under the orbit-paired order; complex must be regular"
                        .into(),
                ));
            }
            sigma.push(index[m][&img]);
        }
        degrees.push(DegreeData {
            labels,
            faces,
            sigma,
        });
    }
    let basepoint = k.basepoint().map(|b| {
        let t = vec![pos[b as usize]];
        index[0][&t]
    });
    let set = C2SimplicialSet::assemble(degrees, true, basepoint, true);
    debug_assert!(set.validate(None).is_ok());
    Ok(set)
}

/// Wedge along fixed basepoints, involution acting within each summand.
pub fn wedge(a: &C2SimplicialSet, b: &C2SimplicialSet) -> Result<C2SimplicialSet> {
    let bpa = a.fixed_basepoint().ok_or_else(|| {
        Error::MissingBasepoint("wedge: left operand needs a fixed basepoint".into())
    })?;
    let bpb = b.fixed_basepoint().ok_or_else(|| {
        Error::MissingBasepoint("wedge: right operand needs a fixed basepoint".into())
    })?;
    glue(a, b, bpa, bpb, "L", "R", false)
}

/// Additive induction: two swapped copies of a based object glued at the
/// basepoint. The input's own involution is forgotten; the glue vertex is
/// the fixed point of the result.
pub fn additive_induction(a: &C2SimplicialSet) -> Result<C2SimplicialSet> {
    let bp = a
        .basepoint()
        .ok_or_else(|| Error::MissingBasepoint("additive induction needs a based input".into()))?;
    glue(a, a, bp, bp, "1", "2", true)
}

/// Shared wedge builder. When `swap` is set, the involution exchanges the
/// two copies; otherwise it acts within each copy.
fn glue(
    a: &C2SimplicialSet,
    b: &C2SimplicialSet,
    bpa: u32,
    bpb: u32,
    la: &str,
    lb: &str,
    swap: bool,
) -> Result<C2SimplicialSet> {
    let complete = a.is_complete() && b.is_complete();
    let top = if complete {
        a.dim().max(b.dim())
    } else {
        a.faithful_top().min(b.faithful_top())
    };
    // Degree-0 index layout: all of a's vertices, then b's minus basepoint.
    let a0 = a.count(0);
    let remap_b0 = |s: u32| -> u32 {
        use std::cmp::Ordering::*;
        match s.cmp(&bpb) {
            Equal => bpa,
            Less => a0 as u32 + s,
            Greater => a0 as u32 + s - 1,
        }
    };
    let mut degrees = Vec::new();
    for m in 0..=top {
        let (ca, cb) = (a.count(m), b.count(m));

        let map_a = |s: u32| -> u32 { s };
        let map_b = |s: u32| -> u32 {
            if m == 0 {
                remap_b0(s)
            } else {
                ca as u32 + s
            }
        };
        let map_el_a = |f: El| f;
        let map_el_b = |f: El, fm: usize| -> El {
            let td = fm - word_len(f.mask);
            El {
                mask: f.mask,
                core: if td == 0 {
                    remap_b0(f.core)
                } else {
                    b_offset_at(a, td) + f.core
                },
            }
        };

        let total = if m == 0 { ca + cb - 1 } else { ca + cb };
        let mut labels = vec![String::new(); total];
        let mut faces = vec![Vec::new(); total];
        let mut sigma = vec![0u32; total];

        for s in 0..ca as u32 {
            let i = map_a(s) as usize;
            labels[i] = if m == 0 && s == bpa {
                format!("*{}", a.label(0, s))
            } else {
                format!("{la}.{}", a.label(m, s))
            };
            if m > 0 {
                faces[i] = a.degree(m).faces[s as usize]
                    .iter()
                    .map(|&f| map_el_a(f))
                    .collect();
            }
            sigma[i] = if swap {
                // Copy 1 maps to the same simplex in copy 2.
                if m == 0 && s == bpa {
                    i as u32
                } else {
                    map_b(s)
                }
            } else {
                map_a(a.degree(m).sigma[s as usize])
            };
        }
        for s in 0..cb as u32 {
            if m == 0 && s == bpb {
                continue;
            }
            let i = map_b(s) as usize;
            labels[i] = format!("{lb}.{}", b.label(m, s));
            if m > 0 {
                faces[i] = b.degree(m).faces[s as usize]
                    .iter()
                    .map(|&f| map_el_b(f, m - 1))
                    .collect();
            }
            sigma[i] = if swap {
                map_a(s)
            } else {
                map_b(b.degree(m).sigma[s as usize])
            };
        }
        degrees.push(DegreeData {
            labels,
            faces,
            sigma,
        });
    }
    let fixed_faithful = a.is_fixed_faithful() && b.is_fixed_faithful();
    let set = C2SimplicialSet::assemble(degrees, complete, Some(bpa), fixed_faithful);
    debug_assert!(set.validate(Some(64)).is_ok());
    Ok(set)
}

fn b_offset_at(a: &C2SimplicialSet, degree: usize) -> u32 {
    a.count(degree) as u32
}

/// Cartesian product with the diagonal involution.
pub fn product(a: &C2SimplicialSet, b: &C2SimplicialSet) -> Result<C2SimplicialSet> {
    product_with(a, b, false)
}

/// Multiplicative induction: the square of a based object with the
/// coordinate-swap involution; its degreewise fixed subobject is the
/// diagonal copy of the input.
pub fn multiplicative_induction(a: &C2SimplicialSet) -> Result<C2SimplicialSet> {
    if a.basepoint().is_none() {
        return Err(Error::MissingBasepoint(
            "multiplicative induction needs a based input".into(),
        ));
    }
    product_with(a, a, true)
}

/// A product together with its pair bookkeeping, aligned with the canonical
/// simplex order of `set`.
pub struct ProductData {
    pub set: C2SimplicialSet,
    /// Per degree, per nondegenerate simplex: the component elements.
    pub pairs: Vec<Vec<(El, El)>>,
}

fn product_with(a: &C2SimplicialSet, b: &C2SimplicialSet, swap: bool) -> Result<C2SimplicialSet> {
    product_with_data(a, b, swap).map(|d| d.set)
}

/// Product builder exposing the component pairs; `swap` selects the
/// coordinate-exchange involution (multiplicative induction) instead of the
/// diagonal one.
pub fn product_with_data(
    a: &C2SimplicialSet,
    b: &C2SimplicialSet,
    swap: bool,
) -> Result<ProductData> {
    let complete = a.is_complete() && b.is_complete();
    let top = if complete {
        a.dim() + b.dim()
    } else {
        a.faithful_top().min(b.faithful_top())
    };
    // Nondegenerate m-simplices of the product: pairs of elements with
    // disjoint degeneracy masks (Eilenberg-Zilber). Enumerate label-sorted
    // so the bookkeeping matches the canonical order.
    let mut pairs: Vec<Vec<(El, El)>> = Vec::with_capacity(top + 1);
    let mut labels_per_degree: Vec<Vec<String>> = Vec::with_capacity(top + 1);
    let mut index: Vec<HashMap<(El, El), u32>> = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let ea = a.elements(m);
        let eb = b.elements(m);
        let mut labeled = Vec::new();
        for &x in &ea {
            for &y in &eb {
                if x.mask & y.mask == 0 {
                    labeled.push((
                        format!("({}|{})", a.element_label(m, x), b.element_label(m, y)),
                        (x, y),
                    ));
                }
            }
        }
        labeled.sort();
        let list: Vec<(El, El)> = labeled.iter().map(|&(_, p)| p).collect();
        let map: HashMap<(El, El), u32> = list
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i as u32))
            .collect();
        labels_per_degree.push(labeled.into_iter().map(|(l, _)| l).collect());
        pairs.push(list);
        index.push(map);
    }

    let mut degrees = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let list = &pairs[m];
        let mut faces = Vec::with_capacity(list.len());
        let mut sigma = Vec::with_capacity(list.len());
        for &(x, y) in list {
            if m > 0 {
                let fs: Vec<El> = (0..=m)
                    .map(|i| {
                        let fx = a.face_el(m, x, i);
                        let fy = b.face_el(m, y, i);
                        normalize_pair(fx, fy, m - 1, &index)
                    })
                    .collect();
                faces.push(fs);
            } else {
                faces.push(Vec::new());
            }
            let img = if swap {
                (y, x)
            } else {
                (a.sigma_el(m, x), b.sigma_el(m, y))
            };
            sigma.push(index[m][&img]);
        }
        degrees.push(DegreeData {
            labels: labels_per_degree[m].clone(),
            faces,
            sigma,
        });
    }
    let basepoint = match (a.basepoint(), b.basepoint()) {
        (Some(pa), Some(pb)) => {
            let key = if swap {
                (El::nondeg(pa), El::nondeg(pa))
            } else {
                (El::nondeg(pa), El::nondeg(pb))
            };
            Some(index[0][&key])
        }
        _ => None,
    };
    let fixed_faithful = if swap {
        a.is_fixed_faithful()
    } else {
        a.is_fixed_faithful() && b.is_fixed_faithful()
    };
    let set = C2SimplicialSet::assemble(degrees, complete, basepoint, fixed_faithful);
    debug_assert!(set.validate(Some(64)).is_ok());
    Ok(ProductData { set, pairs })
}

/// Normal form of a pair of elements as a product simplex: the pair is
/// degenerate exactly along the common collapse indices.
fn normalize_pair(x: El, y: El, m: usize, index: &[HashMap<(El, El), u32>]) -> El {
    let common = x.mask & y.mask;
    let x0 = El {
        mask: word_strip_all(x.mask, common, m),
        core: x.core,
    };
    let y0 = El {
        mask: word_strip_all(y.mask, common, m),
        core: y.core,
    };
    let td = m - word_len(common);
    El {
        mask: common,
        core: index[td][&(x0, y0)],
    }
}

/// The subobject of degreewise fixed simplices, with the trivial involution.
///
/// Only trusted on fixed-faithful objects; anything else is refused.
pub fn fixed_subobject(a: &C2SimplicialSet) -> Result<C2SimplicialSet> {
    if !a.is_fixed_faithful() {
        return Err(Error::NotFixedFaithful(
            "degreewise fixed simplices do not model the fixed-point set of this object".into(),
        ));
    }
    a.subobject(|m, s| a.degree(m).sigma[s as usize] == s, true)
}

/// Degreewise quotient by the involution. Its realization is the orbit
/// space; for free actions this computes the base of the double cover.
pub fn quotient(a: &C2SimplicialSet) -> C2SimplicialSet {
    let mut reps: Vec<Vec<u32>> = Vec::new();
    let mut orbit_of: Vec<Vec<u32>> = Vec::new();
    for m in 0..=a.stored_top() {
        let d = a.degree(m);
        let mut rep_list = Vec::new();
        let mut orbit = vec![u32::MAX; d.len()];
        for s in 0..d.len() as u32 {
            let t = d.sigma[s as usize];
            if s <= t {
                orbit[s as usize] = rep_list.len() as u32;
                orbit[t as usize] = rep_list.len() as u32;
                rep_list.push(s);
            }
        }
        reps.push(rep_list);
        orbit_of.push(orbit);
    }
    let mut degrees = Vec::new();
    for m in 0..=a.stored_top() {
        let d = a.degree(m);
        let mut labels = Vec::new();
        let mut faces = Vec::new();
        for &s in &reps[m] {
            labels.push(format!("[{}]", d.labels[s as usize]));
            if m > 0 {
                faces.push(
                    d.faces[s as usize]
                        .iter()
                        .map(|f| {
                            let td = m - 1 - word_len(f.mask);
                            El {
                                mask: f.mask,
                                core: orbit_of[td][f.core as usize],
                            }
                        })
                        .collect(),
                );
            } else {
                faces.push(Vec::new());
            }
        }
        let sigma = (0..labels.len() as u32).collect();
        degrees.push(DegreeData {
            labels,
            faces,
            sigma,
        });
    }
    let basepoint = a.basepoint().map(|b| orbit_of[0][b as usize]);
    C2SimplicialSet::assemble(degrees, a.is_complete(), basepoint, true)
}
