//! Finite-dimensional bound quiver algebras: degree-filtered two-sided ideal
//! closure producing a monomial basis, a normal-form map and multiplication
//! tables.
//!
//! The builder works on the quotient side: at filtration level d the only
//! unknowns are the products (basis monomial of length d-1) * (arrow), so the
//! path explosion of the free algebra never materializes. Relations may mix
//! path lengths (the deformed presentations do); a relation discovered late
//! whose support lies entirely in the current basis demotes its leading
//! monomial and the closure re-stabilizes.

use crate::field::{FieldSpec, Scalar};
use crate::freealg::{FreeElem, PathId};
use crate::linalg::{self, Row, Rref};
use crate::quiver::{ArrowId, Quiver, VertexId};
use sha2::Digest;
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("cap {0} exceeded before the ideal closed (quotient may be infinite-dimensional)")]
    CapExceeded(usize),
    #[error("ideal is not admissible: {0}")]
    NotAdmissible(String),
    #[error("relation #{0} mixes (source,target) pairs")]
    MixedRelation(usize),
    #[error("relation over a different quiver or field than the presentation")]
    PresentationMismatch,
    #[error("element over a different quiver")]
    QuiverMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum CapPolicy {
    /// Start from the given seed, double on failure.
    Auto(usize),
    Fixed(usize),
}

impl CapPolicy {
    pub fn default_for(nv: usize) -> CapPolicy {
        CapPolicy::Auto((4 * nv + 8).max(12))
    }
}

/// A quiver, a coefficient field and a list of pair-homogeneous relation
/// generators.
#[derive(Debug, Clone)]
pub struct Presentation<K: Scalar> {
    pub quiver: Arc<Quiver>,
    pub spec: FieldSpec,
    pub relations: Vec<FreeElem<K>>,
    pub cap: CapPolicy,
    pub label: String,
}

impl<K: Scalar> Presentation<K> {
    pub fn new(
        quiver: Arc<Quiver>,
        spec: FieldSpec,
        relations: Vec<FreeElem<K>>,
        label: impl Into<String>,
    ) -> Self {
        let cap = CapPolicy::default_for(quiver.vertices.len());
        Presentation { quiver, spec, relations, cap, label: label.into() }
    }

    pub fn with_cap(mut self, cap: CapPolicy) -> Self {
        self.cap = cap;
        self
    }

    /// Canonical text of the presentation; relation order is significant.
    pub fn canonical_text(&self) -> String {
        let mut s = format!("field {}\nquiver {}\n", self.spec, self.quiver);
        for r in &self.relations {
            s.push_str(&crate::dsl::format_element(r));
            s.push('\n');
        }
        s
    }

    pub fn hash(&self) -> String {
        let mut h = sha2::Sha256::new();
        h.update(self.canonical_text().as_bytes());
        let out = h.finalize();
        out.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub fn build(&self) -> Result<QuotientAlgebra<K>, BuildError> {
        build_quotient(self)
    }
}

/// The computed quotient: basis of normal monomials (sorted by degree, then
/// by the monomial order within a degree), right-multiplication tables and
/// derived data.
#[derive(Debug)]
pub struct QuotientAlgebra<K: Scalar> {
    pub pres: Presentation<K>,
    basis: Vec<PathId>,
    lens: Vec<u32>,
    pairs: Vec<(VertexId, VertexId)>,
    pos_of_path: HashMap<PathId, usize>,
    trivial_pos: HashMap<VertexId, usize>,
    rmul: HashMap<(u32, ArrowId), Row<K>>,
    cap_used: usize,
    loewy: usize,
}

pub fn build_quotient<K: Scalar>(pres: &Presentation<K>) -> Result<QuotientAlgebra<K>, BuildError> {
    for (i, r) in pres.relations.iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        if !r.quiver.same_shape(&pres.quiver) || r.spec != pres.spec {
            return Err(BuildError::PresentationMismatch);
        }
        if r.homogeneous_pair().is_none() {
            return Err(BuildError::MixedRelation(i));
        }
        if r.min_degree().unwrap_or(2) < 2 {
            return Err(BuildError::NotAdmissible(format!(
                "relation #{i} has a component of degree < 2"
            )));
        }
    }
    let (mut cap, auto) = match pres.cap {
        CapPolicy::Auto(seed) => (seed.max(2), true),
        CapPolicy::Fixed(n) => (n, false),
    };
    loop {
        match Builder::new(pres, cap).run() {
            Ok(alg) => return Ok(alg),
            Err(BuildError::CapExceeded(_)) if auto && cap < 4096 => cap *= 2,
            Err(e) => return Err(e),
        }
    }
}

struct Builder<'a, K: Scalar> {
    pres: &'a Presentation<K>,
    quiver: Arc<Quiver>,
    cap: usize,
    basis: Vec<PathId>,
    lens: Vec<u32>,
    alive: Vec<bool>,
    rmul: HashMap<(u32, ArrowId), Row<K>>,
    /// rules created in the current step, left-closed in the next
    rules_next: Vec<(PathId, Row<K>)>,
    fold_cache: HashMap<PathId, (Row<K>, Row<K>)>,
}

/// Step-local column layout: candidate columns first (largest monomials),
/// then the alive basis, both in descending monomial order, so RREF pivots
/// land on the order-largest monomial of each row.
struct StepCols {
    cand_paths: Vec<PathId>,
    cand_src: Vec<(u32, ArrowId)>,
    cand_by_key: HashMap<(u32, ArrowId), usize>,
    col_of_basis: HashMap<u32, u32>,
    basis_of_col: HashMap<u32, u32>,
    ncand: u32,
}

impl<'a, K: Scalar> Builder<'a, K> {
    fn new(pres: &'a Presentation<K>, cap: usize) -> Self {
        let quiver = pres.quiver.clone();
        let basis: Vec<PathId> = quiver.vertices.iter().map(|&v| quiver.trivial_path(v)).collect();
        let n = basis.len();
        Builder {
            pres,
            quiver,
            cap,
            basis,
            lens: vec![0; n],
            alive: vec![true; n],
            rmul: HashMap::new(),
            rules_next: Vec::new(),
            fold_cache: HashMap::new(),
        }
    }

    fn basis_target(&self, idx: u32) -> VertexId {
        self.quiver.paths.endpoints(self.basis[idx as usize]).1
    }

    /// Normal form of a path, split into (settled basis part, frontier
    /// candidate part). Candidate coordinates can only arise on the last
    /// arrow of the fold.
    fn fold_path(&mut self, cols: &StepCols, p: PathId) -> (Row<K>, Row<K>) {
        if let Some(hit) = self.fold_cache.get(&p) {
            return hit.clone();
        }
        let data = self.quiver.path(p);
        let start = self
            .quiver
            .vertices
            .iter()
            .position(|&v| v == data.source)
            .expect("path source in quiver") as u32;
        let mut cur: Row<K> = linalg::row_unit(start, K::from_spec_int(&self.pres.spec, 1));
        let mut cand: Row<K> = Vec::new();
        for (step, &a) in data.arrows.iter().enumerate() {
            let mut next: Row<K> = Vec::new();
            for (idx, c) in &cur {
                match self.rmul.get(&(*idx, a)) {
                    Some(r) => linalg::row_axpy(&mut next, c, r),
                    None => {
                        let j = *cols
                            .cand_by_key
                            .get(&(*idx, a))
                            .unwrap_or_else(|| panic!("missing rmul off the frontier"));
                        debug_assert_eq!(step + 1, data.arrows.len());
                        linalg::row_axpy(&mut cand, c, &linalg::row_unit(j as u32, K::from_spec_int(&self.pres.spec, 1)));
                    }
                }
            }
            cur = next;
        }
        let out = (cur, cand);
        self.fold_cache.insert(p, out.clone());
        out
    }

    /// Fold of basis-vector * path-of-one-arrow-appended products:
    /// normal form of `x . path(b)` for an arrow x and basis entry b.
    fn fold_left(&mut self, cols: &StepCols, x: ArrowId, b: u32) -> (Row<K>, Row<K>) {
        let data = self.quiver.path(self.basis[b as usize]);
        let mut arrows = Vec::with_capacity(data.arrows.len() + 1);
        arrows.push(x);
        arrows.extend_from_slice(&data.arrows);
        match self.quiver.intern_arrows(&arrows) {
            Some(p) => self.fold_path(cols, p),
            None => (Vec::new(), Vec::new()),
        }
    }

    /// Normal form of `row * arrow` where row is over global basis indices.
    fn fold_row_times_arrow(&mut self, cols: &StepCols, row: &Row<K>, a: ArrowId) -> (Row<K>, Row<K>) {
        let mut basis_part: Row<K> = Vec::new();
        let mut cand_part: Row<K> = Vec::new();
        for (idx, c) in row {
            if self.basis_target(*idx) != self.quiver.arrow(a).source {
                continue;
            }
            match self.rmul.get(&(*idx, a)) {
                Some(r) => linalg::row_axpy(&mut basis_part, c, r),
                None => {
                    let j = cols.cand_by_key[&(*idx, a)];
                    linalg::row_axpy(&mut cand_part, c, &linalg::row_unit(j as u32, K::from_spec_int(&self.pres.spec, 1)));
                }
            }
        }
        (basis_part, cand_part)
    }

    fn to_cols(&self, cols: &StepCols, basis_part: &Row<K>, cand_part: &Row<K>) -> Row<K> {
        let mut out: Row<K> = cand_part.clone();
        for (idx, c) in basis_part {
            out.push((cols.col_of_basis[idx], c.clone()));
        }
        out.sort_by_key(|e| e.0);
        out
    }

    fn run(mut self) -> Result<QuotientAlgebra<K>, BuildError> {
        let gens: Vec<&FreeElem<K>> =
            self.pres.relations.iter().filter(|r| !r.is_zero()).collect();
        let max_gen_deg = gens.iter().map(|g| g.max_degree()).max().unwrap_or(0);
        if max_gen_deg > self.cap {
            return Err(BuildError::CapExceeded(self.cap));
        }
        let mut d = 1usize;
        loop {
            let rules = std::mem::take(&mut self.rules_next);
            let frontier: Vec<u32> = (0..self.basis.len() as u32)
                .filter(|&i| self.alive[i as usize] && self.lens[i as usize] as usize == d - 1)
                .collect();
            if frontier.is_empty() && rules.is_empty() && d > max_gen_deg {
                return self.finish(d - 1);
            }
            if d > self.cap {
                return Err(BuildError::CapExceeded(self.cap));
            }
            self.step(d, &gens, rules, frontier)?;
            d += 1;
        }
    }

    fn step(
        &mut self,
        d: usize,
        gens: &[&FreeElem<K>],
        rules: Vec<(PathId, Row<K>)>,
        frontier: Vec<u32>,
    ) -> Result<(), BuildError> {
        self.fold_cache.clear();
        // enumerate frontier candidates
        let mut cand_src: Vec<(u32, ArrowId)> = Vec::new();
        for &b in &frontier {
            let tv = self.basis_target(b);
            for a in self.quiver.arrows_from(tv) {
                cand_src.push((b, a.id));
            }
        }
        let mut cand_paths: Vec<PathId> = cand_src
            .iter()
            .map(|&(b, a)| {
                let data = self.quiver.path(self.basis[b as usize]);
                let mut arrows = data.arrows.to_vec();
                arrows.push(a);
                self.quiver.intern_arrows(&arrows).expect("frontier product composes")
            })
            .collect();
        // sort candidates descending by monomial order
        let mut order: Vec<usize> = (0..cand_src.len()).collect();
        order.sort_by(|&i, &j| self.quiver.paths.cmp(cand_paths[j], cand_paths[i]));
        cand_src = order.iter().map(|&i| cand_src[i]).collect();
        cand_paths = order.iter().map(|&i| cand_paths[i]).collect();
        let cand_by_key: HashMap<(u32, ArrowId), usize> =
            cand_src.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        // alive basis columns, descending
        let mut alive_idx: Vec<u32> =
            (0..self.basis.len() as u32).filter(|&i| self.alive[i as usize]).collect();
        alive_idx.sort_by(|&i, &j| {
            self.quiver.paths.cmp(self.basis[j as usize], self.basis[i as usize])
        });
        let ncand = cand_src.len() as u32;
        let mut col_of_basis = HashMap::new();
        let mut basis_of_col = HashMap::new();
        for (k, &idx) in alive_idx.iter().enumerate() {
            col_of_basis.insert(idx, ncand + k as u32);
            basis_of_col.insert(ncand + k as u32, idx);
        }
        let cols = StepCols { cand_paths, cand_src, cand_by_key, col_of_basis, basis_of_col, ncand };

        // initial rows: generators of this top degree, then left closures of
        // the previous step's rules
        let mut queue: VecDeque<Row<K>> = VecDeque::new();
        for g in gens.iter().filter(|g| g.max_degree() == d) {
            let mut basis_acc: Row<K> = Vec::new();
            let mut cand_acc: Row<K> = Vec::new();
            for (p, c) in g.terms() {
                let (bp, cp) = self.fold_path(&cols, *p);
                linalg::row_axpy(&mut basis_acc, c, &bp);
                linalg::row_axpy(&mut cand_acc, c, &cp);
            }
            queue.push_back(self.to_cols(&cols, &basis_acc, &cand_acc));
        }
        for (lhs, rhs) in &rules {
            let src = self.quiver.paths.endpoints(*lhs).0;
            let incoming: Vec<ArrowId> =
                self.quiver.arrows_into(src).map(|a| a.id).collect();
            for x in incoming {
                let lhs_data = self.quiver.path(*lhs);
                let mut arrows = Vec::with_capacity(lhs_data.arrows.len() + 1);
                arrows.push(x);
                arrows.extend_from_slice(&lhs_data.arrows);
                let (mut bp, mut cp) = match self.quiver.intern_arrows(&arrows) {
                    Some(p) => self.fold_path(&cols, p),
                    None => (Vec::new(), Vec::new()),
                };
                for (bidx, c) in rhs {
                    let (wb, wc) = self.fold_left(&cols, x, *bidx);
                    linalg::row_axpy(&mut bp, &(-c.clone()), &wb);
                    linalg::row_axpy(&mut cp, &(-c.clone()), &wc);
                }
                queue.push_back(self.to_cols(&cols, &bp, &cp));
            }
        }

        // eliminate; pivots on candidate columns are rewrite rules, pivots on
        // basis columns demote a basis monomial discovered to be reducible
        let mut rref: Rref<K> = Rref::new();
        while let Some(row) = queue.pop_front() {
            let Some(piv) = rref.insert(row) else { continue };
            if piv < cols.ncand {
                continue;
            }
            // demotion
            let b_star = cols.basis_of_col[&piv];
            let rhs_cols = {
                let r = rref.pivot_row(piv).unwrap().clone();
                let mut rest: Row<K> = r.into_iter().filter(|e| e.0 != piv).collect();
                linalg::row_neg(&mut rest);
                rest
            };
            debug_assert!(rhs_cols.iter().all(|e| e.0 >= cols.ncand));
            let rhs_global: Row<K> = {
                let mut v: Row<K> =
                    rhs_cols.iter().map(|(c, k)| (cols.basis_of_col[c], k.clone())).collect();
                v.sort_by_key(|e| e.0);
                v
            };
            if self.lens[b_star as usize] <= 1 {
                return Err(BuildError::NotAdmissible(format!(
                    "ideal forces the degree-{} monomial `{}` to reduce",
                    self.lens[b_star as usize],
                    self.quiver.format_path(self.basis[b_star as usize])
                )));
            }
            self.alive[b_star as usize] = false;
            self.fold_cache.clear();
            // substitute b* away in the persistent tables
            for r in self.rmul.values_mut() {
                if let Some(c) = linalg::row_get(r, b_star).cloned() {
                    r.retain(|e| e.0 != b_star);
                    linalg::row_axpy(r, &c, &rhs_global);
                }
            }
            let b_len = self.lens[b_star as usize] as usize;
            let b_path = self.basis[b_star as usize];
            // right closure: products b* . a must agree with rhs . a
            let tgt = self.quiver.paths.endpoints(b_path).1;
            let out_arrows: Vec<ArrowId> = self.quiver.arrows_from(tgt).map(|a| a.id).collect();
            for a in out_arrows {
                let old = self.rmul.remove(&(b_star, a));
                let (bp, cp) = self.fold_row_times_arrow(&cols, &rhs_global, a);
                let mut row = self.to_cols(&cols, &bp, &cp);
                match old {
                    Some(old_row) => {
                        // old_row was already substituted above
                        let old_cols = self.to_cols(&cols, &old_row, &Vec::new());
                        row = linalg::row_sub(&old_cols, &row);
                    }
                    None => {
                        // frontier candidate (b*, a): pin it to rhs . a
                        debug_assert_eq!(b_len, d - 1);
                        let j = cols.cand_by_key[&(b_star, a)] as u32;
                        let unit = linalg::row_unit(j, K::from_spec_int(&self.pres.spec, 1));
                        row = linalg::row_sub(&unit, &row);
                    }
                }
                queue.push_back(row);
            }
            // left closure: x . b* must agree with x . rhs
            let src = self.quiver.paths.endpoints(b_path).0;
            let in_arrows: Vec<ArrowId> = self.quiver.arrows_into(src).map(|a| a.id).collect();
            for x in in_arrows {
                let b_data = self.quiver.path(b_path);
                let mut arrows = Vec::with_capacity(b_data.arrows.len() + 1);
                arrows.push(x);
                arrows.extend_from_slice(&b_data.arrows);
                let (mut bp, mut cp) = match self.quiver.intern_arrows(&arrows) {
                    Some(p) => self.fold_path(&cols, p),
                    None => (Vec::new(), Vec::new()),
                };
                for (bidx, c) in &rhs_global {
                    let (wb, wc) = self.fold_left(&cols, x, *bidx);
                    linalg::row_axpy(&mut bp, &(-c.clone()), &wb);
                    linalg::row_axpy(&mut cp, &(-c.clone()), &wc);
                }
                queue.push_back(self.to_cols(&cols, &bp, &cp));
            }
        }

        // promote non-pivot candidates to basis monomials, ascending order
        let pivot_cols: std::collections::BTreeSet<u32> = rref.pivot_cols().collect();
        let mut global_of_cand: HashMap<u32, u32> = HashMap::new();
        for j in (0..cols.ncand).rev() {
            if pivot_cols.contains(&j) {
                continue;
            }
            let gi = self.basis.len() as u32;
            self.basis.push(cols.cand_paths[j as usize]);
            self.lens.push(d as u32);
            self.alive.push(true);
            global_of_cand.insert(j, gi);
            let key = cols.cand_src[j as usize];
            self.rmul.insert(key, linalg::row_unit(gi, K::from_spec_int(&self.pres.spec, 1)));
        }
        // pivot candidates become rewrite rules
        for piv in pivot_cols {
            if piv >= cols.ncand {
                continue; // demotion pivots already handled
            }
            let row = rref.pivot_row(piv).unwrap();
            let mut rhs: Row<K> = Vec::new();
            for (c, k) in row.iter().filter(|e| e.0 != piv) {
                let g = if *c < cols.ncand {
                    *global_of_cand.get(c).expect("non-pivot candidate was promoted")
                } else {
                    cols.basis_of_col[c]
                };
                rhs.push((g, -k.clone()));
            }
            rhs.sort_by_key(|e| e.0);
            let key = cols.cand_src[piv as usize];
            self.rmul.insert(key, rhs.clone());
            self.rules_next.push((cols.cand_paths[piv as usize], rhs));
        }
        Ok(())
    }

    fn finish(self, cap_used: usize) -> Result<QuotientAlgebra<K>, BuildError> {
        // compact out demoted monomials
        let mut remap: HashMap<u32, u32> = HashMap::new();
        let mut basis = Vec::new();
        let mut lens = Vec::new();
        for (i, &p) in self.basis.iter().enumerate() {
            if self.alive[i] {
                remap.insert(i as u32, basis.len() as u32);
                basis.push(p);
                lens.push(self.lens[i]);
            }
        }
        let mut rmul: HashMap<(u32, ArrowId), Row<K>> = HashMap::new();
        for ((b, a), r) in self.rmul {
            let Some(&nb) = remap.get(&b) else { continue };
            rmul.insert((nb, a), linalg::row_remap(&r, |c| remap[&c]));
        }
        let quiver = self.quiver;
        let pairs: Vec<(VertexId, VertexId)> =
            basis.iter().map(|&p| quiver.paths.endpoints(p)).collect();
        let pos_of_path: HashMap<PathId, usize> =
            basis.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let trivial_pos: HashMap<VertexId, usize> = quiver
            .vertices
            .iter()
            .map(|&v| (v, pos_of_path[&quiver.trivial_path(v)]))
            .collect();
        let mut alg = QuotientAlgebra {
            pres: self.pres.clone(),
            basis,
            lens,
            pairs,
            pos_of_path,
            trivial_pos,
            rmul,
            cap_used,
            loewy: 0,
        };
        alg.loewy = alg.compute_loewy();
        // soundness: every relation normal-forms to zero
        for r in &alg.pres.relations {
            if !alg.nf_elem(r).is_empty() {
                return Err(BuildError::NotAdmissible(
                    "internal error: relation does not reduce to zero".into(),
                ));
            }
        }
        Ok(alg)
    }
}

impl<K: Scalar> QuotientAlgebra<K> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.pres.quiver
    }

    pub fn spec(&self) -> FieldSpec {
        self.pres.spec
    }

    pub fn cap_used(&self) -> usize {
        self.cap_used
    }

    pub fn loewy_length(&self) -> usize {
        self.loewy
    }

    pub fn basis_paths(&self) -> &[PathId] {
        &self.basis
    }

    pub fn basis_len(&self, i: usize) -> usize {
        self.lens[i] as usize
    }

    pub fn basis_pair(&self, i: usize) -> (VertexId, VertexId) {
        self.pairs[i]
    }

    pub fn basis_index_of(&self, p: PathId) -> Option<usize> {
        self.pos_of_path.get(&p).copied()
    }

    /// Quiver-independent form of the basis, comparable across algebras
    /// built on structurally equal quivers.
    pub fn basis_signature(&self) -> Vec<(VertexId, Vec<ArrowId>)> {
        self.basis
            .iter()
            .map(|&p| {
                let d = self.pres.quiver.path(p);
                (d.source, d.arrows.to_vec())
            })
            .collect()
    }

    pub fn trivial_index(&self, v: VertexId) -> usize {
        self.trivial_pos[&v]
    }

    /// Count of basis monomials per (source, target) pair, in vertex order.
    pub fn dims_by_pair(&self) -> Vec<Vec<usize>> {
        let vs = &self.pres.quiver.vertices;
        let vpos: HashMap<VertexId, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut m = vec![vec![0usize; vs.len()]; vs.len()];
        for &(s, t) in &self.pairs {
            m[vpos[&s]][vpos[&t]] += 1;
        }
        m
    }

    /// Count of basis monomials per path length.
    pub fn hilbert_by_degree(&self) -> Vec<usize> {
        let maxd = self.lens.iter().copied().max().unwrap_or(0) as usize;
        let mut h = vec![0usize; maxd + 1];
        for &l in &self.lens {
            h[l as usize] += 1;
        }
        h
    }

    /// Normal form of a path given by source vertex and arrow sequence.
    pub fn nf_path(&self, source: VertexId, arrows: &[ArrowId]) -> Row<K> {
        let mut cur: Row<K> = linalg::row_unit(self.trivial_pos[&source] as u32, K::from_spec_int(&self.pres.spec, 1));
        for &a in arrows {
            let mut next: Row<K> = Vec::new();
            for (idx, c) in &cur {
                if let Some(r) = self.rmul.get(&(*idx, a)) {
                    linalg::row_axpy(&mut next, c, r);
                }
            }
            cur = next;
        }
        cur
    }

    /// Normal form of a free element as coordinates over the basis.
    pub fn nf_elem(&self, x: &FreeElem<K>) -> Row<K> {
        let mut acc: Row<K> = Vec::new();
        for (p, c) in x.terms() {
            let d = x.quiver.path(*p);
            let part = self.nf_path(d.source, &d.arrows);
            linalg::row_axpy(&mut acc, c, &part);
        }
        acc
    }

    pub fn normal_form(&self, x: &FreeElem<K>) -> Result<Row<K>, BuildError> {
        if !x.quiver.same_shape(&self.pres.quiver) {
            return Err(BuildError::QuiverMismatch);
        }
        Ok(self.nf_elem(x))
    }

    /// Product of two basis monomials, as coordinates.
    pub fn basis_product(&self, i: usize, j: usize) -> Row<K> {
        if self.pairs[i].1 != self.pairs[j].0 {
            return Vec::new();
        }
        let d = self.pres.quiver.path(self.basis[j]);
        let mut cur: Row<K> = linalg::row_unit(i as u32, K::from_spec_int(&self.pres.spec, 1));
        for &a in d.arrows.iter() {
            let mut next: Row<K> = Vec::new();
            for (idx, c) in &cur {
                if let Some(r) = self.rmul.get(&(*idx, a)) {
                    linalg::row_axpy(&mut next, c, r);
                }
            }
            cur = next;
        }
        cur
    }

    /// Product of two coordinate vectors.
    pub fn vec_product(&self, x: &Row<K>, y: &Row<K>) -> Row<K> {
        let mut out: Row<K> = Vec::new();
        for (i, ci) in x {
            for (j, cj) in y {
                let p = self.basis_product(*i as usize, *j as usize);
                let c = ci.clone() * cj.clone();
                linalg::row_axpy(&mut out, &c, &p);
            }
        }
        out
    }

    /// Right multiplication of a coordinate vector by one arrow.
    pub fn vec_times_arrow(&self, x: &Row<K>, a: ArrowId) -> Row<K> {
        let mut out: Row<K> = Vec::new();
        for (idx, c) in x {
            if let Some(r) = self.rmul.get(&(*idx, a)) {
                linalg::row_axpy(&mut out, c, r);
            }
        }
        out
    }

    /// Left multiplication of a coordinate vector by one arrow.
    pub fn arrow_times_vec(&self, a: ArrowId, x: &Row<K>) -> Row<K> {
        let arr = self.pres.quiver.arrow(a);
        let mut out: Row<K> = Vec::new();
        for (idx, c) in x {
            let (s, _) = self.pairs[*idx as usize];
            if s != arr.target {
                continue;
            }
            let d = self.pres.quiver.path(self.basis[*idx as usize]);
            let mut arrows = Vec::with_capacity(d.arrows.len() + 1);
            arrows.push(a);
            arrows.extend_from_slice(&d.arrows);
            let part = self.nf_path(arr.source, &arrows);
            linalg::row_axpy(&mut out, c, &part);
        }
        out
    }

    /// Lifts coordinates back to a path-algebra element supported on basis
    /// monomials.
    pub fn row_to_elem(&self, row: &Row<K>) -> FreeElem<K> {
        let mut e = FreeElem::zero(&self.pres.quiver, self.pres.spec);
        for (i, c) in row {
            e.add_term(self.basis[*i as usize], c.clone());
        }
        e
    }

    fn compute_loewy(&self) -> usize {
        // rad^k spans via repeated arrow multiplication:
        // W_1 = positive-length basis, W_{k+1} = span{ w * arrow }
        let one = K::from_spec_int(&self.pres.spec, 1);
        let mut w: Vec<Row<K>> = (0..self.dim())
            .filter(|&i| self.lens[i] > 0)
            .map(|i| linalg::row_unit(i as u32, one.clone()))
            .collect();
        if w.is_empty() {
            return if self.dim() > 0 { 1 } else { 0 };
        }
        let arrows: Vec<ArrowId> = self.pres.quiver.arrows.iter().map(|a| a.id).collect();
        let mut k = 1usize;
        loop {
            let mut rref = Rref::new();
            let mut next = Vec::new();
            for v in &w {
                for &a in &arrows {
                    let prod = self.vec_times_arrow(v, a);
                    if !prod.is_empty() && rref.insert(prod.clone()).is_some() {
                        next.push(prod);
                    }
                }
            }
            if next.is_empty() {
                return k + 1; // rad^{k+1} = 0, rad^k != 0
            }
            w = next;
            k += 1;
            assert!(k <= self.cap_used + 2, "radical fails to nilpotate below the cap");
        }
    }

    /// Formats a coordinate vector as a combination of basis monomials.
    pub fn format_row(&self, row: &Row<K>) -> String {
        if row.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = row
            .iter()
            .map(|(i, c)| {
                let m = self.pres.quiver.format_path(self.basis[*i as usize]);
                if c.is_one() {
                    m
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::quiver::{build_dynkin_quiver, DynkinType, Family};

    fn mesh_a2(spec: FieldSpec) -> Presentation<Fp> {
        let q = build_dynkin_quiver(DynkinType::new(Family::A, 2).unwrap());
        let w = |names: &[&str]| {
            let ids: Vec<_> = names.iter().map(|n| q.arrow_by_name(n).unwrap().id).collect();
            FreeElem::<Fp>::word(&q, spec, &ids)
        };
        let rels = vec![w(&["a0", "abar0"]), w(&["abar0", "a0"])];
        Presentation::new(q, spec, rels, "P(A2)")
    }

    #[test]
    fn preprojective_a2_has_dimension_four() {
        let alg = mesh_a2(FieldSpec::PrimeField(2)).build().unwrap();
        assert_eq!(alg.dim(), 4);
        let names: Vec<String> =
            alg.basis_paths().iter().map(|&p| alg.quiver().format_path(p)).collect();
        assert_eq!(names, vec!["e0", "e1", "a0", "abar0"]);
        assert_eq!(alg.dims_by_pair(), vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(alg.hilbert_by_degree(), vec![2, 2]);
        assert_eq!(alg.loewy_length(), 2);
    }

    #[test]
    fn relations_normal_form_to_zero() {
        let pres = mesh_a2(FieldSpec::PrimeField(3));
        let alg = pres.build().unwrap();
        for r in &pres.relations {
            assert!(alg.nf_elem(r).is_empty());
        }
        // a0 * abar0 -> 0
        let q = alg.quiver().clone();
        let x = FreeElem::<Fp>::word(&q, alg.spec(), &[0, 1]);
        assert!(alg.normal_form(&x).unwrap().is_empty());
    }

    #[test]
    fn trivial_paths_are_unit_coordinates() {
        let alg = mesh_a2(FieldSpec::PrimeField(2)).build().unwrap();
        let q = alg.quiver().clone();
        let e1 = FreeElem::<Fp>::trivial(&q, alg.spec(), 1);
        let nf = alg.normal_form(&e1).unwrap();
        assert_eq!(nf.len(), 1);
        assert_eq!(nf[0].0 as usize, alg.trivial_index(1));
    }

    #[test]
    fn degree_one_relation_is_rejected() {
        let q = build_dynkin_quiver(DynkinType::new(Family::A, 2).unwrap());
        let spec = FieldSpec::PrimeField(2);
        let a0 = FreeElem::<Fp>::arrow(&q, spec, 0);
        let pres = Presentation::new(q, spec, vec![a0], "bad");
        assert!(matches!(pres.build(), Err(BuildError::NotAdmissible(_))));
    }

    #[test]
    fn mixed_pair_relation_is_rejected() {
        let q = build_dynkin_quiver(DynkinType::new(Family::A, 3).unwrap());
        let spec = FieldSpec::PrimeField(2);
        let r = FreeElem::<Fp>::word(&q, spec, &[0, 1]) // loop at 0
            .add(&FreeElem::<Fp>::word(&q, spec, &[1, 0])) // loop at 1
            .unwrap();
        let pres = Presentation::new(q, spec, vec![r], "bad");
        assert!(matches!(pres.build(), Err(BuildError::MixedRelation(0))));
    }

    #[test]
    fn unbounded_quotient_exceeds_cap() {
        // A_2 double quiver with no relations: infinite-dimensional
        let q = build_dynkin_quiver(DynkinType::new(Family::A, 2).unwrap());
        let pres = Presentation::<Fp>::new(q, FieldSpec::PrimeField(2), vec![], "KQ")
            .with_cap(CapPolicy::Fixed(10));
        assert_eq!(pres.build().unwrap_err(), BuildError::CapExceeded(10));
    }

    #[test]
    fn local_truncated_polynomial_ring() {
        // R(L_2) = K[x]/(x^4): one vertex, one loop, relation x^4
        let q = build_dynkin_quiver(DynkinType::new(Family::L, 1).unwrap());
        let spec = FieldSpec::PrimeField(3);
        let x4 = FreeElem::<Fp>::word(&q, spec, &[0, 0, 0, 0]);
        let alg = Presentation::new(q, spec, vec![x4], "K[x]/(x^4)").build().unwrap();
        assert_eq!(alg.dim(), 4);
        assert_eq!(alg.hilbert_by_degree(), vec![1, 1, 1, 1]);
        assert_eq!(alg.loewy_length(), 4);
    }

    #[test]
    fn inhomogeneous_relation_reduces_longer_to_shorter() {
        // K[x]/(x^2 + x^3, x^4): x^2 = -x^3 = x^4 = 0 is wrong: from
        // x^2(1+x) = 0 and x^4 = 0 one gets x^2 = x^4 ... = 0 eventually:
        // x^2 = -x^3, x^3 = x^2*x = -x^4 = 0, so x^2 = 0; basis 1, x.
        let q = build_dynkin_quiver(DynkinType::new(Family::L, 1).unwrap());
        let spec = FieldSpec::Rationals;
        let x2 = crate::freealg::FreeElem::<crate::field::Rat>::word(&q, spec, &[0, 0]);
        let x3 = crate::freealg::FreeElem::<crate::field::Rat>::word(&q, spec, &[0, 0, 0]);
        let x4 = crate::freealg::FreeElem::<crate::field::Rat>::word(&q, spec, &[0, 0, 0, 0]);
        let rel = x2.add(&x3).unwrap();
        let alg = Presentation::new(q, spec, vec![rel, x4], "test").build().unwrap();
        assert_eq!(alg.dim(), 2);
    }

    #[test]
    fn cap_independence() {
        let spec = FieldSpec::PrimeField(2);
        let a = mesh_a2(spec).with_cap(CapPolicy::Fixed(6)).build().unwrap();
        let b = mesh_a2(spec).with_cap(CapPolicy::Fixed(8)).build().unwrap();
        assert_eq!(a.dim(), b.dim());
        assert_eq!(a.basis_paths(), b.basis_paths());
        assert_eq!(a.hilbert_by_degree(), b.hilbert_by_degree());
    }

    #[test]
    fn determinism() {
        let a = mesh_a2(FieldSpec::PrimeField(2)).build().unwrap();
        let b = mesh_a2(FieldSpec::PrimeField(2)).build().unwrap();
        let fa: Vec<String> = a.basis_paths().iter().map(|&p| a.quiver().format_path(p)).collect();
        let fb: Vec<String> = b.basis_paths().iter().map(|&p| b.quiver().format_path(p)).collect();
        assert_eq!(fa, fb);
    }
}

#[cfg(test)]
mod concurrency_assertions {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn completed_algebras_are_shareable() {
        assert_send_sync::<super::QuotientAlgebra<crate::field::Fp>>();
        assert_send_sync::<super::QuotientAlgebra<crate::field::Rat>>();
        assert_send_sync::<super::Presentation<crate::field::Rat>>();
    }
}
