//! Finite quivers with a bar involution on arrows, and the double quivers
//! of the generalized Dynkin graphs A_n, D_n, E_6/E_7/E_8, L_n.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

pub type VertexId = u32;
pub type ArrowId = u32;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("rank {1} is not admissible for type {0}")]
    InvalidRank(char, u32),
    #[error("arrow `{0}` is declared twice")]
    DuplicateArrow(String),
    #[error("vertex {0} is not declared")]
    UnknownVertex(u32),
    #[error("bar involution is incomplete or inconsistent at arrow `{0}`")]
    BadBar(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: ArrowId,
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver with a total involution `bar` on arrows. `bar(a)` swaps
/// source and target unless `a` is a loop fixed by the involution.
#[derive(Debug)]
pub struct Quiver {
    uid: u64,
    pub vertices: Vec<VertexId>,
    pub arrows: Vec<Arrow>,
    bar: Vec<ArrowId>,
    pub(crate) paths: crate::freealg::PathTable,
}

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

impl Quiver {
    /// Builds a quiver from arrow descriptions `(name, source, target)` and
    /// bar pairs given as index pairs into that list (a pair `(i, i)` marks a
    /// bar-fixed loop).
    pub fn new(
        vertices: Vec<VertexId>,
        arrow_desc: Vec<(String, VertexId, VertexId)>,
        bar_pairs: Vec<(usize, usize)>,
    ) -> Result<Arc<Quiver>, QuiverError> {
        let mut arrows = Vec::with_capacity(arrow_desc.len());
        for (i, (name, s, t)) in arrow_desc.into_iter().enumerate() {
            if arrows.iter().any(|a: &Arrow| a.name == name) {
                return Err(QuiverError::DuplicateArrow(name));
            }
            if !vertices.contains(&s) {
                return Err(QuiverError::UnknownVertex(s));
            }
            if !vertices.contains(&t) {
                return Err(QuiverError::UnknownVertex(t));
            }
            arrows.push(Arrow { id: i as ArrowId, name, source: s, target: t });
        }
        let mut bar = vec![u32::MAX; arrows.len()];
        for (i, j) in bar_pairs {
            bar[i] = j as ArrowId;
            bar[j] = i as ArrowId;
        }
        for (i, &b) in bar.iter().enumerate() {
            if b == u32::MAX {
                return Err(QuiverError::BadBar(arrows[i].name.clone()));
            }
            let (a, ab) = (&arrows[i], &arrows[b as usize]);
            let ok = if i == b as usize {
                a.source == a.target
            } else {
                a.source == ab.target && a.target == ab.source
            };
            if !ok {
                return Err(QuiverError::BadBar(a.name.clone()));
            }
        }
        let q = Quiver {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            vertices,
            arrows,
            bar,
            paths: crate::freealg::PathTable::new(),
        };
        q.paths.seed(&q.vertices);
        Ok(Arc::new(q))
    }

    pub fn uid(&self) -> u64 {
        self.uid
    }

    pub fn bar(&self, a: ArrowId) -> ArrowId {
        self.bar[a as usize]
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a as usize]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.name == name)
    }

    pub fn vertex_index(&self, v: VertexId) -> usize {
        self.vertices.iter().position(|&w| w == v).expect("vertex not in quiver")
    }

    /// Arrows starting at `v`, in declaration order.
    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.source == v)
    }

    /// Arrows ending at `v`, in declaration order.
    pub fn arrows_into(&self, v: VertexId) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.target == v)
    }

    /// Structural equality: same vertices, arrows (names, endpoints, order)
    /// and bar involution. Two quivers built by identical calls compare equal
    /// even though they hold distinct path tables.
    pub fn same_shape(&self, other: &Quiver) -> bool {
        self.uid == other.uid
            || (self.vertices == other.vertices
                && self.arrows == other.arrows
                && self.bar == other.bar)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quiver({} vertices; ", self.vertices.len())?;
        let names: Vec<_> = self
            .arrows
            .iter()
            .map(|a| format!("{}: {}->{}", a.name, a.source, a.target))
            .collect();
        write!(f, "{})", names.join(", "))
    }
}

/// One of the generalized Dynkin families with its rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct DynkinType {
    pub family: Family,
    pub rank: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    A,
    D,
    E,
    L,
}

impl DynkinType {
    pub fn new(family: Family, rank: u32) -> Result<Self, QuiverError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::L => rank >= 1,
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(QuiverError::InvalidRank(family.letter(), rank))
        }
    }

    pub fn parse(family: &str, rank: u32) -> Result<Self, QuiverError> {
        let fam = match family.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "D" => Family::D,
            "E" => Family::E,
            "L" => Family::L,
            _ => return Err(QuiverError::InvalidRank('?', rank)),
        };
        DynkinType::new(fam, rank)
    }
}

impl Family {
    pub fn letter(&self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
            Family::L => 'L',
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// The double quiver Q_Δ with the numbering used throughout:
/// A_n is the line 0 — 1 — … — n−1; D_n attaches 0 and 1 to 2 and continues
/// 2 — 3 — … — n−1; E_n attaches 0 to 3 on the line 1 — 2 — … — n−1; L_n is
/// the A_n line with a bar-fixed loop `eps` at 0. Each edge i — j contributes
/// the pair a_k: i→j, abar_k: j→i, with a_k oriented away from the branch
/// vertex end of the paper's displays.
pub fn build_dynkin_quiver(t: DynkinType) -> Arc<Quiver> {
    let n = t.rank;
    let vertices: Vec<VertexId> = (0..n).collect();
    let mut arrows: Vec<(String, VertexId, VertexId)> = Vec::new();
    let mut bars: Vec<(usize, usize)> = Vec::new();
    let pair = |arrows: &mut Vec<(String, VertexId, VertexId)>,
                    bars: &mut Vec<(usize, usize)>,
                    k: u32,
                    s: VertexId,
                    tgt: VertexId| {
        let i = arrows.len();
        arrows.push((format!("a{k}"), s, tgt));
        arrows.push((format!("abar{k}"), tgt, s));
        bars.push((i, i + 1));
    };
    match t.family {
        Family::A => {
            for i in 0..n.saturating_sub(1) {
                pair(&mut arrows, &mut bars, i, i, i + 1);
            }
        }
        Family::D => {
            pair(&mut arrows, &mut bars, 0, 0, 2);
            pair(&mut arrows, &mut bars, 1, 1, 2);
            for i in 2..n - 1 {
                pair(&mut arrows, &mut bars, i, i, i + 1);
            }
        }
        Family::E => {
            pair(&mut arrows, &mut bars, 0, 0, 3);
            for i in 1..n - 1 {
                pair(&mut arrows, &mut bars, i, i, i + 1);
            }
        }
        Family::L => {
            let i = arrows.len();
            arrows.push(("eps".to_string(), 0, 0));
            bars.push((i, i));
            for i in 0..n.saturating_sub(1) {
                pair(&mut arrows, &mut bars, i, i, i + 1);
            }
        }
    }
    Quiver::new(vertices, arrows, bars).expect("Dynkin quiver construction is internally consistent")
}

/// The exceptional vertex of Q_Δ: 0, 2, 3, 3, 3 and 0 for A_n, D_n, E_6,
/// E_7, E_8 and L_n respectively.
pub fn exceptional_vertex(t: DynkinType) -> VertexId {
    match t.family {
        Family::A | Family::L => 0,
        Family::D => 2,
        Family::E => 3,
    }
}
