//! Reduced simplicial homology over a field via exact ranks of the
//! augmented boundary matrices.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU32, Ordering};

use dashmap::DashMap;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{rank, Matrix};
use crate::simplicial::SimplicialComplex;

/// Reduced Betti numbers of a complex, indexed from degree -1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyProfile {
    dims: Vec<u64>,
}

impl HomologyProfile {
    /// `dim H̃_i`, zero outside the stored range.
    pub fn get(&self, i: i32) -> u64 {
        if i < -1 {
            return 0;
        }
        self.dims.get((i + 1) as usize).copied().unwrap_or(0)
    }

    /// Dimensions for degrees `-1, 0, 1, ..`; empty for the void complex.
    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    /// `(degree, dim)` pairs with nonzero dimension.
    pub fn nonzero(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(k, &d)| (k as i32 - 1, d))
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

/// Augmented boundary matrices `∂_k : C_k -> C_{k-1}` for
/// `k = 0..=dim`, with `C_{-1}` spanned by the empty face. Bases are faces
/// sorted by `(cardinality, mask)`; the column of a face `v_0 < .. < v_k`
/// carries `(-1)^i` in the row of the face missing `v_i`.
pub fn boundary_matrices(c: &SimplicialComplex) -> Result<Vec<Matrix>> {
    if c.is_void() {
        return Err(Error::VoidComplex);
    }
    Ok(boundaries_of(&c.faces_by_size()))
}

fn boundaries_of(layers: &[Vec<u32>]) -> Vec<Matrix> {
    (1..layers.len())
        .map(|s| {
            let (rows, cols) = (&layers[s - 1], &layers[s]);
            let mut m = Matrix::zeros(rows.len(), cols.len());
            for (j, &f) in cols.iter().enumerate() {
                let mut rest = f;
                let mut i = 0;
                while rest != 0 {
                    let v = rest & rest.wrapping_neg();
                    rest &= !v;
                    let r = rows.binary_search(&(f & !v)).expect("faces are closed downward");
                    m.set(r, j, if i % 2 == 0 { 1 } else { -1 });
                    i += 1;
                }
            }
            m
        })
        .collect()
}

/// Reduced homology dimensions: `dim C_k - rank ∂_k - rank ∂_{k+1}`.
pub fn reduced_homology(c: &SimplicialComplex, field: FieldSpec) -> HomologyProfile {
    if c.is_void() {
        return HomologyProfile::default();
    }
    let layers = collapse(c.faces_by_size());
    let ranks: Vec<usize> = boundaries_of(&layers)
        .iter()
        .map(|m| rank(m, field))
        .collect();
    // ranks[s-1] is the rank of the map out of faces of size s
    let rank_out = |s: usize| if s == 0 { 0 } else { ranks[s - 1] };
    let rank_in = |s: usize| ranks.get(s).copied().unwrap_or(0);
    let dims = (0..layers.len())
        .map(|s| (layers[s].len() - rank_out(s) - rank_in(s)) as u64)
        .collect();
    HomologyProfile { dims }
}

/// Remove free pairs `σ ⊂ τ` (τ the only coface of σ) until none remain.
/// Each removal is an elementary collapse, so homology is unchanged. The
/// empty face is never removed.
fn collapse(layers: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut alive: HashSet<u32> = layers.iter().flatten().copied().collect();
    let vertices = alive.iter().fold(0u32, |acc, &f| acc | f);
    let only_coface = |alive: &HashSet<u32>, f: u32| {
        let mut found = None;
        let mut rest = vertices & !f;
        while rest != 0 {
            let v = rest & rest.wrapping_neg();
            rest &= !v;
            if alive.contains(&(f | v)) {
                if found.is_some() {
                    return None;
                }
                found = Some(f | v);
            }
        }
        found
    };
    let mut stack: Vec<u32> = layers.iter().flatten().copied().filter(|&f| f != 0).collect();
    stack.reverse();
    while let Some(f) = stack.pop() {
        if !alive.contains(&f) {
            continue;
        }
        let Some(top) = only_coface(&alive, f) else {
            continue;
        };
        alive.remove(&f);
        alive.remove(&top);
        for g in [f, top] {
            let mut rest = g;
            while rest != 0 {
                let v = rest & rest.wrapping_neg();
                rest &= !v;
                if g & !v != 0 {
                    stack.push(g & !v);
                }
            }
        }
    }
    let mut out: Vec<Vec<u32>> = Vec::new();
    for layer in layers {
        let kept: Vec<u32> = layer.into_iter().filter(|f| alive.contains(f)).collect();
        if kept.is_empty() {
            break;
        }
        out.push(kept);
    }
    out
}

/// Memo of reduced homology of induced subcomplexes keyed by
/// `(complex, W, field)`.
///
/// Complexes are interned to small ids so keys stay cheap. Concurrent
/// insert-if-absent is safe and every value is a pure function of its key,
/// so results do not depend on interleaving.
#[derive(Debug, Default)]
pub struct HomologyMemo {
    ids: DashMap<SimplicialComplex, u32>,
    next_id: AtomicU32,
    table: DashMap<(u32, u32, FieldSpec), HomologyProfile>,
}

impl HomologyMemo {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&self, c: &SimplicialComplex) -> u32 {
        if let Some(id) = self.ids.get(c) {
            return *id;
        }
        *self
            .ids
            .entry(c.clone())
            .or_insert_with(|| self.next_id.fetch_add(1, Ordering::Relaxed))
    }

    /// `H̃_*(Δ[W]; K)`, computed at most once per key.
    pub fn induced(&self, c: &SimplicialComplex, w: u32, field: FieldSpec) -> HomologyProfile {
        let key = (self.intern(c), w, field);
        if let Some(hit) = self.table.get(&key) {
            return hit.clone();
        }
        let value = reduced_homology(&c.induced(w), field);
        self.table.entry(key).or_insert(value).clone()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}
