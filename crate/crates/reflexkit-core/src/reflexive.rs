//! Reflexivity, dual polytopes, the vertex-facet correspondence, and
//! canonical forms under `GL(n, ℤ)` combined with vertex relabeling.

use crate::error::{Error, Result};
use crate::exact::{hermite_normal_form, IntMatrix, LatticePoint};
use crate::polytope::{FacetData, Polytope};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;

/// Outcome of a reflexivity test. `offending` lists the facets whose
/// lattice distance from the origin is not 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflexivityDiagnostic {
    pub reflexive: bool,
    pub offending: Vec<usize>,
}

/// A polytope is reflexive when the origin is strictly interior and every
/// facet lies at lattice distance 1, i.e. every facet offset equals 1.
pub fn is_reflexive(p: &Polytope) -> Result<ReflexivityDiagnostic> {
    if !p.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    let offending: Vec<usize> = p
        .facets()
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.offset.is_one())
        .map(|(i, _)| i)
        .collect();
    Ok(ReflexivityDiagnostic {
        reflexive: offending.is_empty(),
        offending,
    })
}

fn require_reflexive(p: &Polytope) -> Result<()> {
    let diag = is_reflexive(p)?;
    if !diag.reflexive {
        return Err(Error::NotReflexive {
            offending: diag.offending,
        });
    }
    Ok(())
}

/// The dual of a reflexive polytope.
///
/// Its vertices are the facet normals of `p`, and its facets correspond to
/// the vertices of `p` (normal = vertex, offset 1); the construction is
/// validated inequality by inequality.
pub fn dual(p: &Polytope) -> Result<Polytope> {
    require_reflexive(p)?;
    let vertices: Vec<LatticePoint> = p.facets().iter().map(|f| f.normal.clone()).collect();
    let facets: Vec<FacetData> = p
        .vertices()
        .iter()
        .map(|v| FacetData {
            normal: v.clone(),
            offset: BigInt::one(),
            incident: Vec::new(),
        })
        .collect();
    Polytope::from_parts(vertices, facets, p.dim(), p.ambient().opposite())
}

/// The facet `F_u` of a reflexive polytope corresponding to the dual
/// vertex `u`, returned as its index into `p.facets()`.
pub fn facet_of(p: &Polytope, u: &LatticePoint) -> Result<usize> {
    require_reflexive(p)?;
    p.facets()
        .iter()
        .position(|f| &f.normal == u)
        .ok_or_else(|| Error::NotDualVertex(u.to_string()))
}

/// Inverse of [`facet_of`]: the dual vertex corresponding to a facet.
pub fn dual_vertex_of(p: &Polytope, facet: usize) -> Result<LatticePoint> {
    require_reflexive(p)?;
    p.facets()
        .get(facet)
        .map(|f| f.normal.clone())
        .ok_or_else(|| Error::InvalidInput(format!("no facet {facet}")))
}

/// The full pairing table `⟨v, u⟩` with one row per facet normal `u` and
/// one column per vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexFacetTable {
    pub entries: Vec<Vec<BigInt>>,
}

pub fn vertex_facet_table(p: &Polytope) -> VertexFacetTable {
    let entries = (0..p.facet_count())
        .map(|i| {
            (0..p.vertex_count())
                .map(|j| p.vertex_facet_pairing(i, j))
                .collect()
        })
        .collect();
    VertexFacetTable { entries }
}

/// A deterministic representative of the orbit of a polytope under
/// `GL(n, ℤ)` and vertex relabeling, together with the witness that maps
/// the input onto it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Canonical vertex matrix; column `j` is the `j`-th canonical vertex.
    pub matrix: IntMatrix,
    /// Unimodular witness `t`.
    pub transform: IntMatrix,
    /// Vertex permutation witness: canonical column `j` is the image of
    /// input vertex `permutation[j]`.
    pub permutation: Vec<usize>,
}

impl CanonicalForm {
    /// Flat key usable for hashing and ordered dedup.
    pub fn key(&self) -> Vec<BigInt> {
        let mut key = vec![
            BigInt::from(self.matrix.rows()),
            BigInt::from(self.matrix.cols()),
        ];
        for i in 0..self.matrix.rows() {
            key.extend(self.matrix.row(i).iter().cloned());
        }
        key
    }
}

/// State of the pairing-table maximization: the set of rows already
/// placed and the ordered column partition they force.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct SearchState {
    used: u128,
    blocks: Vec<Vec<usize>>,
    /// Once the partition is discrete the column order is fixed and the
    /// remaining rows are consumed from this pre-sorted list.
    tail: Option<Vec<usize>>,
}

impl SearchState {
    fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    fn column_order(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().collect()
    }
}

/// Computes the canonical form of a full-dimensional lattice polytope.
///
/// The vertex-facet pairing table is maximized lexicographically over all
/// row and column permutations (exploring every tie), the winning column
/// orders are applied to the vertex matrix, and the smallest Hermite
/// normal form over those orders is the canonical matrix.
pub fn canonical_form(p: &Polytope) -> Result<CanonicalForm> {
    let n_rows = p.facet_count();
    let n_cols = p.vertex_count();
    if n_rows > 128 {
        return Err(Error::InvalidInput(format!(
            "canonical form supports at most 128 facets, got {n_rows}"
        )));
    }
    let table = vertex_facet_table(p);
    let row = |i: usize| -> &Vec<BigInt> { &table.entries[i] };

    let mut states = vec![SearchState {
        used: 0,
        blocks: vec![(0..n_cols).collect()],
        tail: None,
    }];

    for _step in 0..n_rows {
        // Candidate = (state index, row, refined blocks); rows compete on
        // the lexicographic value they achieve.
        let mut best_value: Option<Vec<BigInt>> = None;
        let mut winners: Vec<(usize, usize, Vec<Vec<usize>>)> = Vec::new();
        for (si, state) in states.iter().enumerate() {
            let placed = state.used.count_ones() as usize;
            if let Some(tail) = &state.tail {
                let r = tail[placed - (n_rows - tail.len())];
                let order = state.column_order();
                let value: Vec<BigInt> = order.iter().map(|&c| row(r)[c].clone()).collect();
                consider(
                    &mut best_value,
                    &mut winners,
                    value,
                    (si, r, state.blocks.clone()),
                );
            } else {
                for r in 0..n_rows {
                    if state.used & (1u128 << r) != 0 {
                        continue;
                    }
                    let (value, refined) = refine(&state.blocks, row(r));
                    consider(&mut best_value, &mut winners, value, (si, r, refined));
                }
            }
        }

        // Build the next generation, deduplicating by (used set, partition).
        let mut next: BTreeMap<(u128, Vec<Vec<usize>>), SearchState> = BTreeMap::new();
        for (si, r, blocks) in winners {
            let prev = &states[si];
            let used = prev.used | (1u128 << r);
            let mut state = SearchState {
                used,
                blocks,
                tail: prev.tail.clone(),
            };
            if state.tail.is_none() && state.is_discrete() {
                let order = state.column_order();
                let mut remaining: Vec<usize> =
                    (0..n_rows).filter(|&i| used & (1u128 << i) == 0).collect();
                remaining.sort_by(|&a, &b| {
                    let va: Vec<&BigInt> = order.iter().map(|&c| &row(a)[c]).collect();
                    let vb: Vec<&BigInt> = order.iter().map(|&c| &row(b)[c]).collect();
                    vb.cmp(&va).then(a.cmp(&b))
                });
                // The tail list holds the rows still to be placed, in the
                // order they will be consumed.
                let mut full = Vec::with_capacity(n_rows);
                full.extend(remaining);
                state.tail = Some(full);
            }
            next.entry((state.used, state.blocks.clone())).or_insert(state);
        }
        states = next.into_values().collect();
        debug_assert!(!states.is_empty());
    }

    // Collect the distinct winning column orders.
    let mut orders: Vec<Vec<usize>> = states.iter().map(SearchState::column_order).collect();
    orders.sort();
    orders.dedup();

    let vmat = IntMatrix::from_columns(p.vertices());
    let mut best: Option<(IntMatrix, IntMatrix, Vec<usize>)> = None;
    for order in orders {
        let permuted = permute_columns(&vmat, &order);
        let (h, u) = hermite_normal_form(&permuted);
        let better = match &best {
            None => true,
            Some((bh, _, _)) => matrix_lex_cmp(&h, bh) == std::cmp::Ordering::Less,
        };
        if better {
            best = Some((h, u, order));
        }
    }
    let (matrix, transform, permutation) = best.expect("at least one column order");
    debug_assert_eq!(
        transform.mul(&permute_columns(&vmat, &permutation)),
        matrix
    );
    Ok(CanonicalForm {
        matrix,
        transform,
        permutation,
    })
}

fn consider(
    best: &mut Option<Vec<BigInt>>,
    winners: &mut Vec<(usize, usize, Vec<Vec<usize>>)>,
    value: Vec<BigInt>,
    entry: (usize, usize, Vec<Vec<usize>>),
) {
    match best {
        None => {
            *best = Some(value);
            winners.push(entry);
        }
        Some(b) => match value.cmp(b) {
            std::cmp::Ordering::Greater => {
                *best = Some(value);
                winners.clear();
                winners.push(entry);
            }
            std::cmp::Ordering::Equal => winners.push(entry),
            std::cmp::Ordering::Less => {}
        },
    }
}

/// Sorts a row's entries descending within each block; returns the row
/// value this achieves and the refined partition.
fn refine(blocks: &[Vec<usize>], row: &[BigInt]) -> (Vec<BigInt>, Vec<Vec<usize>>) {
    let mut value = Vec::with_capacity(row.len());
    let mut refined = Vec::new();
    for block in blocks {
        let mut entries: Vec<(usize, &BigInt)> = block.iter().map(|&c| (c, &row[c])).collect();
        entries.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(&b.0)));
        let mut current: Vec<usize> = Vec::new();
        let mut current_val: Option<&BigInt> = None;
        for (c, v) in entries {
            value.push(v.clone());
            if Some(v) == current_val {
                current.push(c);
            } else {
                if !current.is_empty() {
                    refined.push(std::mem::take(&mut current));
                }
                current.push(c);
                current_val = Some(v);
            }
        }
        if !current.is_empty() {
            refined.push(current);
        }
    }
    (value, refined)
}

fn permute_columns(m: &IntMatrix, order: &[usize]) -> IntMatrix {
    let mut out = IntMatrix::zero(m.rows(), order.len());
    for (j, &src) in order.iter().enumerate() {
        for i in 0..m.rows() {
            out[(i, j)] = m[(i, src)].clone();
        }
    }
    out
}

fn matrix_lex_cmp(a: &IntMatrix, b: &IntMatrix) -> std::cmp::Ordering {
    debug_assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            match a[(i, j)].cmp(&b[(i, j)]) {
                std::cmp::Ordering::Equal => {}
                other => return other,
            }
        }
    }
    std::cmp::Ordering::Equal
}

/// Two polytopes are lattice-isomorphic exactly when their canonical
/// forms coincide.
pub fn are_isomorphic(p: &Polytope, q: &Polytope) -> bool {
    if p.dim() != q.dim() || p.vertex_count() != q.vertex_count() {
        return false;
    }
    match (canonical_form(p), canonical_form(q)) {
        (Ok(a), Ok(b)) => a.matrix == b.matrix,
        _ => false,
    }
}
