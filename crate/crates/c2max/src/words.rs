//! Degeneracy words in Eilenberg-Zilber normal form.
//!
//! A (possibly degenerate) m-simplex of a simplicial set factors uniquely as
//! a nondegenerate simplex precomposed with a monotone surjection. We encode
//! the surjection `f: [m] ->> [k]` by its collapse set
//! `{ i in 0..m : f(i) = f(i+1) }`, stored as a u64 bitmask. The mask for
//! the elementary degeneracy s_j is the singleton `{j}`, and an element is
//! degenerate along index j exactly when j lies in its mask. Degrees stay
//! far below 64 in practice.

/// Collapse mask of a monotone surjection out of degree `m`; `|mask| = m - k`.
pub type DegWord = u64;

/// Evaluates the surjection at a point of `[m]`.
#[inline]
pub fn word_apply(mask: DegWord, i: usize) -> usize {
    i - (mask & ((1u64 << i) - 1)).count_ones() as usize
}

/// Number of collapse indices, i.e. `m - k`.
#[inline]
pub fn word_len(mask: DegWord) -> usize {
    mask.count_ones() as usize
}

/// Collapse indices in ascending order (the sorted normal-form word).
pub fn word_indices(mask: DegWord) -> Vec<usize> {
    let mut out = Vec::with_capacity(word_len(mask));
    let mut bits = mask;
    while bits != 0 {
        out.push(bits.trailing_zeros() as usize);
        bits &= bits - 1;
    }
    out
}

pub fn word_from_indices(indices: &[usize]) -> DegWord {
    let mut mask = 0u64;
    for &i in indices {
        assert!(i < 64, "degeneracy index out of range");
        mask |= 1 << i;
    }
    mask
}

/// Composite `outer . inner` of surjections `inner: [m] ->> [k]`,
/// `outer: [k] ->> [l]`, as a mask on `[m]`.
///
/// Position i collapses in the composite when inner collapses it, or when
/// outer collapses the image point.
pub fn word_compose(outer: DegWord, inner: DegWord, m: usize) -> DegWord {
    let mut mask = inner;
    for i in 0..m {
        if mask >> i & 1 == 0 && outer >> word_apply(inner, i) & 1 == 1 {
            mask |= 1 << i;
        }
    }
    mask
}

/// Removes a collapse index from a mask, shifting higher indices down.
///
/// If `x = s_j y` with mask W containing j, the mask of y is this.
#[inline]
pub fn word_strip(mask: DegWord, j: usize) -> DegWord {
    debug_assert!(mask >> j & 1 == 1);
    let low = (1u64 << j) - 1;
    (mask & low) | ((mask >> 1) & !low)
}

/// Removes all positions of `common` from `mask`, compacting the rest.
///
/// Joint normal form for tuples/multisets: if every component of a tuple is
/// degenerate along the positions of `common`, the tuple factors as the
/// degeneracy word `common` applied to the tuple of stripped components.
pub fn word_strip_all(mask: DegWord, common: DegWord, m: usize) -> DegWord {
    debug_assert_eq!(mask & common, common, "common must lie inside mask");
    let mut out = 0u64;
    let mut pos = 0;
    for i in 0..m {
        if common >> i & 1 == 1 {
            continue;
        }
        if mask >> i & 1 == 1 {
            out |= 1 << pos;
        }
        pos += 1;
    }
    out
}

/// Result of pushing a face operator through a degeneracy word.
pub enum FaceThrough {
    /// The composite `f . d_i` is still surjective: the face stays over the
    /// same nondegenerate core, with the returned mask.
    Degenerate(DegWord),
    /// The composite misses one value `t`: the face factors as
    /// `(face_t of the core) . g`, where g has the returned mask.
    Core { t: usize, outer_mask: DegWord },
}

/// Pushes the i-th face operator of degree `m` through the surjection `mask`.
pub fn word_face(mask: DegWord, m: usize, i: usize) -> FaceThrough {
    debug_assert!(i <= m);
    // g(j) = f(d_i(j)) for j in [m-1].
    let eval = |j: usize| word_apply(mask, if j < i { j } else { j + 1 });
    // f(d_i) misses a value iff f^{-1}(f(i)) = {i}, i.e. i is collapsed with
    // neither neighbour.
    let isolated = (mask >> i & 1 == 0) && (i == 0 || mask >> (i - 1) & 1 == 0);
    if !isolated {
        let mut out = 0u64;
        for j in 0..m.saturating_sub(1) {
            if eval(j) == eval(j + 1) {
                out |= 1 << j;
            }
        }
        FaceThrough::Degenerate(out)
    } else {
        let t = word_apply(mask, i);
        let mut out = 0u64;
        let shift = |v: usize| if v < t { v } else { v - 1 };
        for j in 0..m.saturating_sub(1) {
            if shift(eval(j)) == shift(eval(j + 1)) {
                out |= 1 << j;
            }
        }
        FaceThrough::Core { t, outer_mask: out }
    }
}
