//! The path algebra KQ: interned paths, sparse linear combinations of paths,
//! and noncommutative polynomials for deformation terms.
//!
//! Multiplication reads left to right: in a product `p*q` the target of `p`
//! must equal the source of `q`. Non-composable products vanish.

use crate::field::{FieldSpec, Scalar};
use crate::quiver::{ArrowId, Quiver, VertexId};
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::Arc;
use std::sync::RwLock;

pub type PathId = u32;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ElemError {
    #[error("elements live over different quivers")]
    QuiverMismatch,
    #[error("substitution target is not a loop at a single common vertex")]
    IncompatibleEndpoints,
    #[error("unbound name `{0}`")]
    UnboundName(String),
}

/// Interned path: trivial (length 0) at a vertex, or a composable arrow
/// sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathData {
    pub source: VertexId,
    pub target: VertexId,
    pub arrows: Box<[ArrowId]>,
}

impl PathData {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Debug, Default)]
struct TableInner {
    by_key: HashMap<(VertexId, Box<[ArrowId]>), PathId>,
    data: Vec<PathData>,
}

/// Per-quiver path interner. Concurrent reads, exclusive writes.
#[derive(Debug, Default)]
pub struct PathTable {
    inner: RwLock<TableInner>,
}

impl PathTable {
    pub fn new() -> Self {
        PathTable::default()
    }

    /// Registers the trivial paths; called once by the quiver constructor.
    pub(crate) fn seed(&self, vertices: &[VertexId]) {
        let mut g = self.inner.write().unwrap();
        for &v in vertices {
            let id = g.data.len() as PathId;
            g.by_key.insert((v, Box::from([])), id);
            g.data.push(PathData { source: v, target: v, arrows: Box::from([]) });
        }
    }

    fn intern(&self, source: VertexId, target: VertexId, arrows: &[ArrowId]) -> PathId {
        {
            let g = self.inner.read().unwrap();
            if let Some(&id) = g.by_key.get(&(source, Box::from(arrows))) {
                return id;
            }
        }
        let mut g = self.inner.write().unwrap();
        if let Some(&id) = g.by_key.get(&(source, Box::from(arrows))) {
            return id;
        }
        let id = g.data.len() as PathId;
        g.by_key.insert((source, Box::from(arrows)), id);
        g.data.push(PathData { source, target, arrows: Box::from(arrows) });
        id
    }

    pub fn get(&self, id: PathId) -> PathData {
        self.inner.read().unwrap().data[id as usize].clone()
    }

    pub fn len_of(&self, id: PathId) -> usize {
        self.inner.read().unwrap().data[id as usize].arrows.len()
    }

    pub fn endpoints(&self, id: PathId) -> (VertexId, VertexId) {
        let g = self.inner.read().unwrap();
        let d = &g.data[id as usize];
        (d.source, d.target)
    }

    /// Degree-first, then lexicographic on the arrow sequence in the fixed
    /// arrow order of the quiver builder.
    pub fn cmp(&self, a: PathId, b: PathId) -> std::cmp::Ordering {
        let g = self.inner.read().unwrap();
        let (da, db) = (&g.data[a as usize], &g.data[b as usize]);
        da.arrows
            .len()
            .cmp(&db.arrows.len())
            .then_with(|| da.arrows.cmp(&db.arrows))
            .then_with(|| da.source.cmp(&db.source))
    }
}

impl Quiver {
    pub fn trivial_path(&self, v: VertexId) -> PathId {
        self.paths.intern(v, v, &[])
    }

    /// Interns the composable arrow sequence; `None` if consecutive arrows do
    /// not compose.
    pub fn intern_arrows(&self, arrows: &[ArrowId]) -> Option<PathId> {
        if arrows.is_empty() {
            return None;
        }
        let mut at = self.arrow(arrows[0]).source;
        for &a in arrows {
            let arr = self.arrow(a);
            if arr.source != at {
                return None;
            }
            at = arr.target;
        }
        Some(self.paths.intern(self.arrow(arrows[0]).source, at, arrows))
    }

    pub fn path(&self, id: PathId) -> PathData {
        self.paths.get(id)
    }

    /// Concatenation `p*q`; `None` when target(p) != source(q).
    pub fn compose_paths(&self, p: PathId, q: PathId) -> Option<PathId> {
        let (dp, dq) = (self.paths.get(p), self.paths.get(q));
        if dp.target != dq.source {
            return None;
        }
        if dp.is_trivial() {
            return Some(q);
        }
        if dq.is_trivial() {
            return Some(p);
        }
        let mut arrows = Vec::with_capacity(dp.len() + dq.len());
        arrows.extend_from_slice(&dp.arrows);
        arrows.extend_from_slice(&dq.arrows);
        Some(self.paths.intern(dp.source, dq.target, &arrows))
    }

    pub fn format_path(&self, id: PathId) -> String {
        let d = self.paths.get(id);
        if d.is_trivial() {
            format!("e{}", d.source)
        } else {
            d.arrows
                .iter()
                .map(|&a| self.arrow(a).name.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// Finite linear combination of paths in KQ with nonzero coefficients.
#[derive(Debug, Clone)]
pub struct FreeElem<K: Scalar> {
    pub quiver: Arc<Quiver>,
    pub spec: FieldSpec,
    terms: BTreeMap<PathId, K>,
}

impl<K: Scalar> FreeElem<K> {
    pub fn zero(quiver: &Arc<Quiver>, spec: FieldSpec) -> Self {
        FreeElem { quiver: quiver.clone(), spec, terms: BTreeMap::new() }
    }

    pub fn trivial(quiver: &Arc<Quiver>, spec: FieldSpec, v: VertexId) -> Self {
        Self::from_path(quiver, spec, quiver.trivial_path(v))
    }

    pub fn arrow(quiver: &Arc<Quiver>, spec: FieldSpec, a: ArrowId) -> Self {
        let p = quiver.intern_arrows(&[a]).expect("single arrow is a path");
        Self::from_path(quiver, spec, p)
    }

    pub fn from_path(quiver: &Arc<Quiver>, spec: FieldSpec, p: PathId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p, K::from_spec_int(&spec, 1));
        FreeElem { quiver: quiver.clone(), spec, terms }
    }

    /// The word given by a sequence of arrow ids, with coefficient 1; zero if
    /// non-composable.
    pub fn word(quiver: &Arc<Quiver>, spec: FieldSpec, arrows: &[ArrowId]) -> Self {
        match quiver.intern_arrows(arrows) {
            Some(p) => Self::from_path(quiver, spec, p),
            None => Self::zero(quiver, spec),
        }
    }

    /// Sum of all trivial paths: the identity of KQ.
    pub fn one(quiver: &Arc<Quiver>, spec: FieldSpec) -> Self {
        let mut out = Self::zero(quiver, spec);
        for &v in quiver.vertices.clone().iter() {
            out.add_term(quiver.trivial_path(v), K::from_spec_int(&spec, 1));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PathId, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, p: PathId) -> Option<&K> {
        self.terms.get(&p)
    }

    pub fn add_term(&mut self, p: PathId, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), ElemError> {
        if self.quiver.same_shape(&other.quiver) {
            Ok(())
        } else {
            Err(ElemError::QuiverMismatch)
        }
    }

    /// Re-expresses `other`'s terms in this element's path table. Requires
    /// structurally equal quivers, where arrow ids coincide.
    fn import_terms(&self, other: &Self) -> Vec<(PathId, K)> {
        if Arc::ptr_eq(&self.quiver, &other.quiver) {
            return other.terms.iter().map(|(p, c)| (*p, c.clone())).collect();
        }
        other
            .terms
            .iter()
            .map(|(p, c)| {
                let d = other.quiver.path(*p);
                let id = if d.is_trivial() {
                    self.quiver.trivial_path(d.source)
                } else {
                    self.quiver.intern_arrows(&d.arrows).expect("same-shape quiver")
                };
                (id, c.clone())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self, ElemError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (p, c) in self.import_terms(other) {
            out.add_term(p, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ElemError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -(c.clone());
        }
        out
    }

    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return Self::zero(&self.quiver, self.spec);
        }
        let mut out = Self::zero(&self.quiver, self.spec);
        for (p, c) in &self.terms {
            out.add_term(*p, c.clone() * k.clone());
        }
        out
    }

    /// Bilinear extension of path concatenation.
    pub fn mul(&self, other: &Self) -> Result<Self, ElemError> {
        self.check_compatible(other)?;
        let rhs = self.import_terms(other);
        let mut out = Self::zero(&self.quiver, self.spec);
        for (p, cp) in &self.terms {
            for (q, cq) in &rhs {
                if let Some(r) = self.quiver.compose_paths(*p, *q) {
                    out.add_term(r, cp.clone() * cq.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self, ElemError> {
        let mut out = Self::one(&self.quiver, self.spec);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// ab - ba.
    pub fn commutator(&self, other: &Self) -> Result<Self, ElemError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `Some((i, j))` when nonzero and every path runs i -> j; `None` when
    /// mixed. The zero element is homogeneous for every pair.
    pub fn homogeneous_pair(&self) -> Option<(VertexId, VertexId)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let pair = self.quiver.paths.endpoints(*first);
        for p in it {
            if self.quiver.paths.endpoints(*p) != pair {
                return None;
            }
        }
        Some(pair)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|p| self.quiver.paths.len_of(*p)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|p| self.quiver.paths.len_of(*p)).min()
    }

    /// Support sorted by the monomial order, largest first.
    pub fn sorted_terms(&self) -> Vec<(PathId, K)> {
        let mut v: Vec<_> = self.terms.iter().map(|(p, c)| (*p, c.clone())).collect();
        v.sort_by(|a, b| self.quiver.paths.cmp(b.0, a.0));
        v
    }
}

impl<K: Scalar> PartialEq for FreeElem<K> {
    fn eq(&self, other: &Self) -> bool {
        if !self.quiver.same_shape(&other.quiver) {
            return false;
        }
        match self.sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

/// Noncommutative polynomial in named indeterminates, for the admissible
/// element f of the local algebra R(Δ).
#[derive(Debug, Clone, PartialEq)]
pub struct NcPoly<K: Scalar> {
    pub vars: Vec<String>,
    /// (word over var indices, coefficient); normalized: no zero coefficients,
    /// no repeated words.
    terms: Vec<(Vec<u8>, K)>,
}

impl<K: Scalar> NcPoly<K> {
    pub fn zero(vars: &[&str]) -> Self {
        NcPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: vec![] }
    }

    pub fn var(vars: &[&str], i: usize, spec: &FieldSpec) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![i as u8], K::from_spec_int(spec, 1));
        p
    }

    pub fn add_term(&mut self, word: Vec<u8>, c: K) {
        if c.is_zero() {
            return;
        }
        if let Some(t) = self.terms.iter_mut().find(|(w, _)| *w == word) {
            t.1 = t.1.clone() + c;
            if t.1.is_zero() {
                self.terms.retain(|(_, k)| !k.is_zero());
            }
            return;
        }
        self.terms.push((word, c));
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &K)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32, spec: &FieldSpec) -> Self {
        let mut out = Self::zero(&self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        out.add_term(vec![], K::from_spec_int(spec, 1));
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Every monomial has word length >= `d`.
    pub fn min_word_len_at_least(&self, d: usize) -> bool {
        self.terms.iter().all(|(w, _)| w.len() >= d)
    }

    /// Ring-homomorphic evaluation: variable i goes to `assignment[i]`, the
    /// empty word to the trivial path at the common vertex. Each assigned
    /// element must be a loop at one shared vertex.
    pub fn substitute(&self, assignment: &[FreeElem<K>]) -> Result<FreeElem<K>, ElemError> {
        assert_eq!(assignment.len(), self.vars.len(), "assignment arity");
        let mut vertex: Option<VertexId> = None;
        for e in assignment {
            if let Some((s, t)) = e.homogeneous_pair() {
                if s != t {
                    return Err(ElemError::IncompatibleEndpoints);
                }
                match vertex {
                    None => vertex = Some(s),
                    Some(v) if v == s => {}
                    Some(_) => return Err(ElemError::IncompatibleEndpoints),
                }
            } else if !e.is_zero() {
                return Err(ElemError::IncompatibleEndpoints);
            }
        }
        let (quiver, spec) = match assignment.first() {
            Some(e) => (e.quiver.clone(), e.spec),
            None => return Err(ElemError::IncompatibleEndpoints),
        };
        let unit = match vertex {
            Some(v) => FreeElem::trivial(&quiver, spec, v),
            // all assigned elements are zero: any monomial with a variable
            // evaluates to zero, so only a constant term could survive, and
            // it has nowhere to live.
            None => FreeElem::zero(&quiver, spec),
        };
        let mut out = FreeElem::zero(&quiver, spec);
        for (word, c) in &self.terms {
            let mut prod = unit.clone();
            for &i in word {
                prod = prod.mul(&assignment[i as usize])?;
            }
            out = out.add(&prod.scale(c))?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::quiver::{build_dynkin_quiver, DynkinType, Family};

    fn a2() -> Arc<Quiver> {
        build_dynkin_quiver(DynkinType::new(Family::A, 2).unwrap())
    }

    const GF5: FieldSpec = FieldSpec::PrimeField(5);

    #[test]
    fn identity_absorbs_on_the_correct_side() {
        let q = a2();
        let a0 = FreeElem::<Fp>::arrow(&q, GF5, q.arrow_by_name("a0").unwrap().id);
        let e0 = FreeElem::<Fp>::trivial(&q, GF5, 0);
        // e_0 * a_0 = a_0 (a_0 starts at 0), a_0 * e_0 = 0
        assert_eq!(e0.mul(&a0).unwrap(), a0);
        assert!(a0.mul(&e0).unwrap().is_zero());
    }

    #[test]
    fn non_composable_products_vanish() {
        let q = a2();
        let a0 = FreeElem::<Fp>::arrow(&q, GF5, q.arrow_by_name("a0").unwrap().id);
        // a_0: 0 -> 1 cannot follow itself
        assert!(a0.mul(&a0).unwrap().is_zero());
    }

    #[test]
    fn cross_terms_drop_in_squares() {
        let q = a2();
        let a0 = FreeElem::<Fp>::arrow(&q, GF5, q.arrow_by_name("a0").unwrap().id);
        let ab0 = FreeElem::<Fp>::arrow(&q, GF5, q.arrow_by_name("abar0").unwrap().id);
        let s = a0.add(&ab0).unwrap();
        let sq = s.mul(&s).unwrap();
        // (a0 + abar0)^2 = a0*abar0 + abar0*a0
        let expected = a0.mul(&ab0).unwrap().add(&ab0.mul(&a0).unwrap()).unwrap();
        assert_eq!(sq, expected);
        assert_eq!(sq.num_terms(), 2);
    }

    #[test]
    fn commutator_bookkeeping() {
        let q = a2();
        let a0 = FreeElem::<Fp>::arrow(&q, GF5, q.arrow_by_name("a0").unwrap().id);
        let ab0 = FreeElem::<Fp>::arrow(&q, GF5, q.arrow_by_name("abar0").unwrap().id);
        let e0 = FreeElem::<Fp>::trivial(&q, GF5, 0);
        // [e_0, a_0] = e_0 a_0 - a_0 e_0 = a_0
        assert_eq!(e0.commutator(&a0).unwrap(), a0);
        // [a, a] = 0
        assert!(a0.commutator(&a0).unwrap().is_zero());
        // [a_0, abar_0] = a_0 abar_0 - abar_0 a_0
        let c = a0.commutator(&ab0).unwrap();
        assert_eq!(c, a0.mul(&ab0).unwrap().sub(&ab0.mul(&a0).unwrap()).unwrap());
        assert_eq!(c.num_terms(), 2);
    }

    #[test]
    fn global_identity_is_two_sided() {
        let q = a2();
        let one = FreeElem::<Fp>::one(&q, GF5);
        let a0 = FreeElem::<Fp>::arrow(&q, GF5, q.arrow_by_name("a0").unwrap().id);
        let x = a0.add(&FreeElem::trivial(&q, GF5, 1).scale(&Fp::new(3, 5))).unwrap();
        assert_eq!(one.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&one).unwrap(), x);
    }

    #[test]
    fn substitute_product_of_loops() {
        // D_4: f = x*y with x -> abar0*a0, y -> abar1*a1, both loops at 2
        let q = build_dynkin_quiver(DynkinType::new(Family::D, 4).unwrap());
        let spec = FieldSpec::PrimeField(2);
        let w = |names: &[&str]| {
            let ids: Vec<_> =
                names.iter().map(|n| q.arrow_by_name(n).unwrap().id).collect();
            FreeElem::<Fp>::word(&q, spec, &ids)
        };
        let x = w(&["abar0", "a0"]);
        let y = w(&["abar1", "a1"]);
        let f = NcPoly::var(&["x", "y"], 0, &spec).mul(&NcPoly::var(&["x", "y"], 1, &spec));
        let out = f.substitute(&[x.clone(), y.clone()]).unwrap();
        assert_eq!(out, x.mul(&y).unwrap());
        assert_eq!(out, w(&["abar0", "a0", "abar1", "a1"]));
    }

    #[test]
    fn substitute_zero_poly() {
        let q = build_dynkin_quiver(DynkinType::new(Family::L, 2).unwrap());
        let spec = FieldSpec::PrimeField(2);
        let eps = FreeElem::<Fp>::arrow(&q, spec, q.arrow_by_name("eps").unwrap().id);
        let f = NcPoly::<Fp>::zero(&["x"]);
        assert!(f.substitute(&[eps]).unwrap().is_zero());
    }

    #[test]
    fn substitute_power_expands() {
        let q = build_dynkin_quiver(DynkinType::new(Family::L, 2).unwrap());
        let spec = FieldSpec::PrimeField(2);
        let eps = FreeElem::<Fp>::arrow(&q, spec, q.arrow_by_name("eps").unwrap().id);
        let f = NcPoly::var(&["x"], 0, &spec).pow(2, &spec);
        assert_eq!(f.substitute(&[eps.clone()]).unwrap(), eps.mul(&eps).unwrap());
    }

    #[test]
    fn substitute_rejects_non_loops() {
        let q = a2();
        let a0 = FreeElem::<Fp>::arrow(&q, GF5, q.arrow_by_name("a0").unwrap().id);
        let f = NcPoly::var(&["x"], 0, &GF5);
        assert_eq!(f.substitute(&[a0]), Err(ElemError::IncompatibleEndpoints));
    }

    #[test]
    fn substitution_is_multiplicative() {
        let q = build_dynkin_quiver(DynkinType::new(Family::D, 4).unwrap());
        let spec = FieldSpec::PrimeField(3);
        let w = |names: &[&str]| {
            let ids: Vec<_> =
                names.iter().map(|n| q.arrow_by_name(n).unwrap().id).collect();
            FreeElem::<Fp>::word(&q, spec, &ids)
        };
        let x = w(&["abar0", "a0"]);
        let y = w(&["abar1", "a1"]);
        let vars = ["x", "y"];
        let fx = NcPoly::var(&vars, 0, &spec);
        let fy = NcPoly::var(&vars, 1, &spec);
        let f = fx.add(&fy);
        let g = fx.mul(&fy).add(&fy);
        let assign = [x, y];
        let lhs = f.mul(&g).substitute(&assign).unwrap();
        let rhs = f.substitute(&assign).unwrap().mul(&g.substitute(&assign).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
