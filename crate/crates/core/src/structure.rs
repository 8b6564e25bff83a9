//! Structural invariants of a built quotient algebra: radical and socle
//! series, Cartan data, Nakayama permutation, self-injectivity, weak
//! symmetry, the commutator subspace and the symmetry decision with
//! checkable certificates.
//!
//! The ideals here are admissible (the builder rejects anything with a
//! component of degree < 2), so the radical is the span of the
//! positive-length basis monomials and the filtration by path length
//! refines the radical filtration.

use crate::field::Scalar;
use crate::linalg::{self, Row, Rref};
use crate::quiver::VertexId;
use crate::quotient::{Presentation, QuotientAlgebra};
use std::collections::HashMap;

/// Left and right socle of the algebra, blockwise.
#[derive(Debug, Clone)]
pub struct Socle<K: Scalar> {
    /// dim e_i soc e_j for the two-sided socle (left == right when the
    /// algebra is self-injective)
    pub dims: Vec<Vec<usize>>,
    /// basis of the left socle, per (i, j) block
    pub blocks: HashMap<(VertexId, VertexId), Vec<Row<K>>>,
    pub left_equals_right: bool,
}

/// The full invariant record a single `info` call reports.
#[derive(Debug, Clone, serde::Serialize)]
pub struct InvariantReport {
    pub label: String,
    pub field: String,
    pub dimension: usize,
    pub cartan: Vec<Vec<usize>>,
    pub loewy_length: usize,
    pub radical_series: Vec<usize>,
    pub socle_dims: Vec<Vec<usize>>,
    pub socle_left_equals_right: bool,
    pub nakayama: Option<Vec<u32>>,
    pub self_injective: bool,
    pub weakly_symmetric: bool,
    pub symmetry: String,
    pub center_dim: usize,
    pub cap_used: usize,
    pub presentation_hash: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SymmetryVerdict<K: Scalar> {
    /// A symmetrizing form, as functional coordinates on the basis.
    Symmetric { witness: Row<K> },
    NotSymmetric { reason: NotSymmetricReason<K> },
    /// Search budget exhausted without a decision (only reachable for large
    /// prime fields on large vertex sets).
    Unknown { budget: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum NotSymmetricReason<K: Scalar> {
    NotSelfInjective,
    NotWeaklySymmetric,
    /// A nonzero diagonal socle element inside the commutator subspace:
    /// any trace form kills it, but a symmetrizing form must not.
    SocleInCommutators { vertex: VertexId, certificate: Row<K> },
    /// Exhaustively, no trace form is nonzero on every socle block.
    NoNondegenerateTraceForm,
}

impl<K: Scalar> SymmetryVerdict<K> {
    pub fn kind(&self) -> &'static str {
        match self {
            SymmetryVerdict::Symmetric { .. } => "symmetric",
            SymmetryVerdict::NotSymmetric { .. } => "not_symmetric",
            SymmetryVerdict::Unknown { .. } => "unknown",
        }
    }
    pub fn is_symmetric(&self) -> bool {
        matches!(self, SymmetryVerdict::Symmetric { .. })
    }
}

impl<K: Scalar> QuotientAlgebra<K> {
    fn vertex_order(&self) -> Vec<VertexId> {
        self.quiver().vertices.clone()
    }

    /// Dimensions of rad^k for k = 1, 2, ..., down to zero.
    pub fn radical_series(&self) -> Vec<usize> {
        let mut spans: Vec<Vec<Row<K>>> = Vec::new();
        let mut w: Vec<Row<K>> = (0..self.dim())
            .filter(|&i| self.basis_len(i) > 0)
            .map(|i| linalg::row_unit(i as u32, K::from_spec_int(&self.spec(), 1)))
            .collect();
        while !w.is_empty() {
            spans.push(w.clone());
            let mut rref = Rref::new();
            let mut next = Vec::new();
            for v in &w {
                for a in &self.quiver().arrows.clone() {
                    let p = self.vec_times_arrow(v, a.id);
                    if !p.is_empty() && rref.insert(p.clone()).is_some() {
                        next.push(p);
                    }
                }
            }
            w = next;
        }
        // rad^k = W_k + W_{k+1} + ..., accumulate from the top
        let mut dims = vec![0usize; spans.len()];
        let mut rref = Rref::new();
        for k in (0..spans.len()).rev() {
            for v in &spans[k] {
                rref.insert(v.clone());
            }
            dims[k] = rref.rank();
        }
        dims
    }

    /// Left and right socle, blockwise, with the equality report.
    pub fn socle(&self) -> Socle<K> {
        let verts = self.vertex_order();
        let vpos: HashMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut blocks_by_pair: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
        for i in 0..self.dim() {
            blocks_by_pair.entry(self.basis_pair(i)).or_default().push(i);
        }
        let mut dims = vec![vec![0usize; verts.len()]; verts.len()];
        let mut blocks = HashMap::new();
        let mut left_rows_all: Vec<Row<K>> = Vec::new();
        let mut right_rows_all: Vec<Row<K>> = Vec::new();
        for (&(s, t), idxs) in &blocks_by_pair {
            // left socle in this block: rad * s = 0, i.e. a * s = 0 for all
            // arrows a ending here; right socle dually
            let left = self.block_annihilator(idxs, true);
            let right = self.block_annihilator(idxs, false);
            let inter: Vec<Row<K>> = intersect(&left, &right);
            dims[vpos[&s]][vpos[&t]] = inter.len();
            left_rows_all.extend(left.iter().cloned());
            right_rows_all.extend(right.iter().cloned());
            blocks.insert((s, t), inter);
        }
        let left_equals_right = same_span(&left_rows_all, &right_rows_all);
        Socle { dims, blocks, left_equals_right }
    }

    /// Solutions of (arrows * s = 0) within a block when `left`, else
    /// (s * arrows = 0).
    fn block_annihilator(&self, idxs: &[usize], left: bool) -> Vec<Row<K>> {
        let n = idxs.len() as u32;
        let mut eq_rows: Vec<Row<K>> = Vec::new();
        // constraint rows: for each arrow, transpose of the multiplication map
        let arrows: Vec<_> = self.quiver().arrows.clone();
        let mut transposed: HashMap<(u32, u32), Row<K>> = HashMap::new(); // (arrow, out-coord) -> row
        for (col, &bi) in idxs.iter().enumerate() {
            let unit = linalg::row_unit(bi as u32, K::from_spec_int(&self.spec(), 1));
            for a in &arrows {
                let img = if left {
                    self.arrow_times_vec(a.id, &unit)
                } else {
                    self.vec_times_arrow(&unit, a.id)
                };
                for (out, c) in img {
                    transposed.entry((a.id, out)).or_default().push((col as u32, c));
                }
            }
        }
        for (_, mut row) in transposed {
            row.sort_by_key(|e| e.0);
            eq_rows.push(row);
        }
        linalg::nullspace(&eq_rows, n)
            .into_iter()
            .map(|v| {
                let mut g: Row<K> =
                    v.into_iter().map(|(c, k)| (idxs[c as usize] as u32, k)).collect();
                g.sort_by_key(|e| e.0);
                g
            })
            .collect()
    }

    /// The Nakayama permutation ν with soc(e_i A) ≅ S_{ν(i)}, as a vector
    /// over the vertex order; `None` when some projective has a non-simple
    /// socle or ν is not a bijection.
    pub fn nakayama_permutation(&self) -> Option<Vec<VertexId>> {
        let verts = self.vertex_order();
        let vpos: HashMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        // soc(e_i A) uses the right-module structure: right annihilator of rad
        let mut dims = vec![vec![0usize; verts.len()]; verts.len()];
        let mut by_pair: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
        for i in 0..self.dim() {
            by_pair.entry(self.basis_pair(i)).or_default().push(i);
        }
        for (&(s, t), idxs) in &by_pair {
            dims[vpos[&s]][vpos[&t]] = self.block_annihilator(idxs, false).len();
        }
        let mut nu = Vec::with_capacity(verts.len());
        for row in &dims {
            let nonzero: Vec<usize> =
                (0..verts.len()).filter(|&j| row[j] != 0).collect();
            if nonzero.len() != 1 || row[nonzero[0]] != 1 {
                return None;
            }
            nu.push(verts[nonzero[0]]);
        }
        let mut seen: Vec<VertexId> = nu.clone();
        seen.sort();
        let mut all = verts.clone();
        all.sort();
        if seen != all {
            return None;
        }
        Some(nu)
    }

    pub fn is_self_injective(&self) -> bool {
        self.nakayama_permutation().is_some()
    }

    pub fn is_weakly_symmetric(&self) -> bool {
        match self.nakayama_permutation() {
            Some(nu) => nu == self.vertex_order(),
            None => false,
        }
    }

    /// Span of all commutators [b_i, b_j], as a reduced row space.
    pub fn commutator_subspace(&self) -> Rref<K> {
        let mut rref = Rref::new();
        let mut by_target: HashMap<VertexId, Vec<usize>> = HashMap::new();
        for i in 0..self.dim() {
            by_target.entry(self.basis_pair(i).1).or_default().push(i);
        }
        for i in 0..self.dim() {
            let (s, t) = self.basis_pair(i);
            // partners j with source(j) = t (for ij) or target(j) = s (ji)
            let mut partners: Vec<usize> = Vec::new();
            for j in 0..self.dim() {
                let (u, v) = self.basis_pair(j);
                if u == t || v == s {
                    partners.push(j);
                }
            }
            for j in partners {
                if j < i {
                    continue; // [a,b] = -[b,a]
                }
                let ij = self.basis_product(i, j);
                let ji = self.basis_product(j, i);
                let c = linalg::row_sub(&ij, &ji);
                if !c.is_empty() {
                    rref.insert(c);
                }
            }
        }
        rref
    }

    /// Center dimension: solutions of z a = a z for all arrows a.
    pub fn center_dim(&self) -> usize {
        let mut eq: HashMap<(u32, u32), Row<K>> = HashMap::new();
        for i in 0..self.dim() {
            let unit = linalg::row_unit(i as u32, K::from_spec_int(&self.spec(), 1));
            for a in &self.quiver().arrows.clone() {
                let d = linalg::row_sub(
                    &self.vec_times_arrow(&unit, a.id),
                    &self.arrow_times_vec(a.id, &unit),
                );
                for (out, c) in d {
                    eq.entry((a.id, out)).or_default().push((i as u32, c));
                }
            }
        }
        let mut rows: Vec<Row<K>> = eq.into_values().collect();
        for r in &mut rows {
            r.sort_by_key(|e| e.0);
        }
        linalg::nullspace(&rows, self.dim() as u32).len()
    }

    /// Decides symmetry exactly. A basic self-injective algebra is symmetric
    /// iff some linear form vanishing on all commutators is nonzero on every
    /// socle block; the blocks are one-dimensional here, so the decision is
    /// linear algebra over the #vertices socle coordinates.
    pub fn symmetry_decide(&self, budget: u64, seed: u64) -> SymmetryVerdict<K> {
        if !self.is_self_injective() {
            return SymmetryVerdict::NotSymmetric { reason: NotSymmetricReason::NotSelfInjective };
        }
        if !self.is_weakly_symmetric() {
            return SymmetryVerdict::NotSymmetric {
                reason: NotSymmetricReason::NotWeaklySymmetric,
            };
        }
        let socle = self.socle();
        let verts = self.vertex_order();
        // ν = id: one socle generator per diagonal block
        let gens: Vec<Row<K>> = verts
            .iter()
            .map(|&v| socle.blocks[&(v, v)][0].clone())
            .collect();
        let comm = self.commutator_subspace();
        for (i, s) in gens.iter().enumerate() {
            if comm.contains(s) {
                return SymmetryVerdict::NotSymmetric {
                    reason: NotSymmetricReason::SocleInCommutators {
                        vertex: verts[i],
                        certificate: s.clone(),
                    },
                };
            }
        }
        // trace forms = functionals vanishing on the commutator span
        let comm_rows: Vec<Row<K>> = comm.rows().cloned().collect();
        let forms = linalg::nullspace(&comm_rows, self.dim() as u32);
        // project onto socle coordinates, tracking the originating form
        let mut tracked: Vec<(Row<K>, Row<K>)> = Vec::new(); // (socle values, form)
        let mut rref = Rref::new();
        for f in &forms {
            let mut u: Row<K> = Vec::new();
            for (i, s) in gens.iter().enumerate() {
                let val = dot(s, f);
                if !val.is_zero() {
                    u.push((i as u32, val));
                }
            }
            if u.is_empty() {
                continue;
            }
            if rref.insert(u.clone()).is_some() {
                tracked.push((u, f.clone()));
            }
        }
        match nowhere_zero_combination(&tracked, verts.len(), &self.spec(), budget, seed) {
            Some(witness) => {
                debug_assert!(gens.iter().all(|s| !dot(s, &witness).is_zero()));
                SymmetryVerdict::Symmetric { witness }
            }
            None => {
                let q = self.spec().characteristic();
                let exhaustive =
                    q > 0 && (tracked.len() as u32) < 63 && q.pow(tracked.len() as u32) <= budget;
                if q == 0 || exhaustive || tracked.is_empty() {
                    SymmetryVerdict::NotSymmetric {
                        reason: NotSymmetricReason::NoNondegenerateTraceForm,
                    }
                } else {
                    SymmetryVerdict::Unknown { budget }
                }
            }
        }
    }

    /// Re-checks a Symmetric witness from scratch: trace property on every
    /// composable basis pair and a nonsingular Gram matrix.
    pub fn verify_symmetric_witness(&self, psi: &Row<K>) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let (si, ti) = self.basis_pair(i);
                let (sj, tj) = self.basis_pair(j);
                if ti != sj && tj != si {
                    continue;
                }
                let d = linalg::row_sub(&self.basis_product(i, j), &self.basis_product(j, i));
                if !dot(&d, psi).is_zero() {
                    return false;
                }
            }
        }
        // Gram matrix rows: G_i = (psi(b_i b_j))_j
        let mut rows: Vec<Row<K>> = Vec::new();
        for i in 0..n {
            let mut row: Row<K> = Vec::new();
            for j in 0..n {
                let v = dot(&self.basis_product(i, j), psi);
                if !v.is_zero() {
                    row.push((j as u32, v));
                }
            }
            rows.push(row);
        }
        linalg::rank(&rows) == n
    }

    /// Re-checks a NotSymmetric socle certificate from scratch.
    pub fn verify_not_symmetric_certificate(&self, s: &Row<K>, vertex: VertexId) -> bool {
        if s.is_empty() {
            return false;
        }
        // homogeneous e_v s e_v
        if !s.iter().all(|(i, _)| self.basis_pair(*i as usize) == (vertex, vertex)) {
            return false;
        }
        // inside the socle: all arrow products vanish
        for a in &self.quiver().arrows.clone() {
            if !self.vec_times_arrow(s, a.id).is_empty() {
                return false;
            }
            if !self.arrow_times_vec(a.id, s).is_empty() {
                return false;
            }
        }
        // inside the commutator span
        self.commutator_subspace().contains(s)
    }

    /// A/soc(A) as a new presentation: the socle basis vectors join the
    /// relation list.
    pub fn socle_quotient_presentation(&self) -> Presentation<K> {
        let socle = self.socle();
        let mut rels = self.pres.relations.clone();
        let mut blocks: Vec<_> = socle.blocks.iter().collect();
        blocks.sort_by_key(|(k, _)| **k);
        for (_, vecs) in blocks {
            for v in vecs {
                rels.push(self.row_to_elem(v));
            }
        }
        let mut pres = Presentation::new(self.quiver().clone(), self.spec(), rels, "");
        pres.label = format!("{}/soc", self.pres.label);
        pres.cap = self.pres.cap;
        pres
    }

    /// The InvariantReport for CLI `info`.
    pub fn invariant_report(&self, budget: u64, seed: u64) -> InvariantReport {
        let socle = self.socle();
        let nak = self.nakayama_permutation();
        InvariantReport {
            label: self.pres.label.clone(),
            field: self.spec().to_string(),
            dimension: self.dim(),
            cartan: self.dims_by_pair(),
            loewy_length: self.loewy_length(),
            radical_series: self.radical_series(),
            socle_dims: socle.dims.clone(),
            socle_left_equals_right: socle.left_equals_right,
            self_injective: nak.is_some(),
            weakly_symmetric: self.is_weakly_symmetric(),
            nakayama: nak,
            symmetry: self.symmetry_decide(budget, seed).kind().to_string(),
            center_dim: self.center_dim(),
            cap_used: self.cap_used(),
            presentation_hash: self.pres.hash(),
        }
    }

    /// Canonical isomorphism-invariant record for separating algebras.
    pub fn fingerprint(&self, budget: u64, seed: u64) -> Fingerprint {
        Fingerprint {
            dimension: self.dim(),
            radical_series: self.radical_series(),
            cartan_canonical: canonical_matrix(&self.dims_by_pair()),
            nakayama_cycle_type: self.nakayama_permutation().map(|nu| cycle_type(&nu, &self.vertex_order())),
            symmetry_kind: self.symmetry_decide(budget, seed).kind().to_string(),
            center_dim: self.center_dim(),
        }
    }
}

/// Isomorphism-invariant fingerprint. The grading of the normal-form basis
/// is presentation data, not an invariant (the deformed ideals are
/// inhomogeneous), so the degreewise entry is the radical series.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Fingerprint {
    pub dimension: usize,
    pub radical_series: Vec<usize>,
    pub cartan_canonical: Vec<Vec<usize>>,
    pub nakayama_cycle_type: Option<Vec<usize>>,
    pub symmetry_kind: String,
    pub center_dim: usize,
}

fn dot<K: Scalar>(a: &[(u32, K)], b: &[(u32, K)]) -> K {
    let mut acc = K::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc = acc + a[i].1.clone() * b[j].1.clone();
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

fn same_span<K: Scalar>(a: &[Row<K>], b: &[Row<K>]) -> bool {
    let mut ra = Rref::new();
    for r in a {
        ra.insert(r.clone());
    }
    let mut rb = Rref::new();
    for r in b {
        rb.insert(r.clone());
    }
    if ra.rank() != rb.rank() {
        return false;
    }
    a.iter().all(|r| rb.contains(r)) && b.iter().all(|r| ra.contains(r))
}

fn intersect<K: Scalar>(a: &[Row<K>], b: &[Row<K>]) -> Vec<Row<K>> {
    // Zassenhaus: eliminate in the doubled space spanned by (v, v) for v in
    // a and (w, 0) for w in b; the reduced rows supported entirely on the
    // second copy are (0, z) with z running over a basis of a ∩ b
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let shift = 1u32 << 24;
    let mut rref = Rref::new();
    for r in a {
        let mut d: Row<K> = r.clone();
        let mut tail: Row<K> = r.iter().map(|(c, k)| (c + shift, k.clone())).collect();
        d.append(&mut tail);
        rref.insert(d);
    }
    for r in b {
        rref.insert(r.clone());
    }
    rref.rows()
        .filter(|row| !row.is_empty() && row[0].0 >= shift)
        .map(|row| row.iter().map(|(c, k)| (c - shift, k.clone())).collect())
        .collect()
}

/// Lexicographically minimal row-major matrix over simultaneous row/column
/// permutations.
fn canonical_matrix(m: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<Vec<usize>>> = None;
    permute(&mut perm, 0, &mut |p| {
        let cand: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).map(|j| m[p[i]][p[j]]).collect()).collect();
        match &best {
            Some(b) if *b <= cand => {}
            _ => best = Some(cand),
        }
    });
    best.unwrap_or_default()
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn cycle_type(nu: &[VertexId], verts: &[VertexId]) -> Vec<usize> {
    let pos: HashMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut seen = vec![false; verts.len()];
    let mut cycles = Vec::new();
    for start in 0..verts.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            len += 1;
            at = pos[&nu[at]];
        }
        cycles.push(len);
    }
    cycles.sort();
    cycles
}

/// Searches `tracked` (socle-value vector, functional) pairs for a linear
/// combination whose socle values are all nonzero; returns the functional.
fn nowhere_zero_combination<K: Scalar>(
    tracked: &[(Row<K>, Row<K>)],
    nverts: usize,
    spec: &crate::field::FieldSpec,
    budget: u64,
    seed: u64,
) -> Option<Row<K>> {
    if tracked.is_empty() {
        return None;
    }
    let q = spec.characteristic();
    let all_nonzero = |u: &Row<K>| u.len() == nverts;
    // greedy first: the plain sum of the tracked functionals
    {
        let mut u: Row<K> = Vec::new();
        let mut f: Row<K> = Vec::new();
        for (ui, fi) in tracked {
            linalg::row_axpy(&mut u, &K::from_spec_int(spec, 1), ui);
            linalg::row_axpy(&mut f, &K::from_spec_int(spec, 1), fi);
        }
        if all_nonzero(&u) {
            return Some(f);
        }
    }
    if q > 0 && (tracked.len() as u32) < 40 && q.checked_pow(tracked.len() as u32).is_some_and(|t| t <= budget.max(1 << 20)) {
        // exhaustive over the projected space
        let total = q.pow(tracked.len() as u32);
        for code in 1..total {
            let mut c = code;
            let mut u: Row<K> = Vec::new();
            let mut f: Row<K> = Vec::new();
            for (ui, fi) in tracked {
                let coef = K::from_spec_int(spec, (c % q) as i64);
                c /= q;
                if !coef.is_zero() {
                    linalg::row_axpy(&mut u, &coef, ui);
                    linalg::row_axpy(&mut f, &coef, fi);
                }
            }
            if all_nonzero(&u) {
                return Some(f);
            }
        }
        return None;
    }
    // large or infinite field: grow the support greedily; a fresh coefficient
    // avoiding finitely many bad values always exists when |K| > #vertices
    let (mut u, mut f) = tracked[0].clone();
    for (ui, fi) in tracked.iter().skip(1) {
        if all_nonzero(&u) {
            break;
        }
        if ui.iter().all(|(c, _)| linalg::row_get(&u, *c).is_some()) {
            continue;
        }
        // pick c in {1, 2, ...} with u + c*ui still nonzero where u was
        let mut chosen = None;
        for t in 1..=(nverts as i64 + 1) {
            let c = K::from_spec_int(spec, t);
            let mut cand = u.clone();
            linalg::row_axpy(&mut cand, &c, ui);
            let keeps: bool = u.iter().all(|(col, _)| linalg::row_get(&cand, *col).is_some());
            if keeps {
                chosen = Some(c);
                break;
            }
        }
        if let Some(c) = chosen {
            linalg::row_axpy(&mut u, &c, ui);
            linalg::row_axpy(&mut f, &c, fi);
        }
    }
    if all_nonzero(&u) {
        return Some(f);
    }
    // last resort: seeded random sampling within the budget
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for _ in 0..budget {
        let mut u: Row<K> = Vec::new();
        let mut f: Row<K> = Vec::new();
        for (ui, fi) in tracked {
            let r = next();
            let coef = if q > 0 {
                K::from_spec_int(spec, (r % q) as i64)
            } else {
                K::from_spec_int(spec, (r % 19) as i64 - 9)
            };
            if !coef.is_zero() {
                linalg::row_axpy(&mut u, &coef, ui);
                linalg::row_axpy(&mut f, &coef, fi);
            }
        }
        if all_nonzero(&u) {
            return Some(f);
        }
    }
    None
}

/// Structure-constant equality of A/soc(A) and B/soc(B) under the identity
/// correspondence of normal-form bases (sufficient, not necessary).
pub fn same_presentation_mod_socle<K: Scalar>(
    a: &QuotientAlgebra<K>,
    b: &QuotientAlgebra<K>,
) -> Result<bool, crate::quotient::BuildError> {
    if !a.quiver().same_shape(b.quiver()) {
        return Err(crate::quotient::BuildError::QuiverMismatch);
    }
    let qa = a.socle_quotient_presentation().build()?;
    let qb = b.socle_quotient_presentation().build()?;
    if qa.dim() != qb.dim() || qa.basis_signature() != qb.basis_signature() {
        return Ok(false);
    }
    for i in 0..qa.dim() {
        for j in 0..qa.dim() {
            if qa.basis_product(i, j) != qb.basis_product(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
