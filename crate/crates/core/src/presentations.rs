//! Builders for the algebra families: the local algebras R(Δ), the
//! preprojective algebras P(Δ), their deformations P^f(Δ), the canonical
//! socle deformations P*(Δ), the L_n^(r) family, and the θ-parameterized
//! presentations A'/A'' that appear in the classification proofs.

use crate::field::{FieldSpec, Scalar};
use crate::freealg::{FreeElem, NcPoly};
use crate::quiver::{build_dynkin_quiver, ArrowId, DynkinType, Family, Quiver, QuiverError};
use crate::quotient::{BuildError, CapPolicy, Presentation};
use std::sync::Arc;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum PresError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("deformation parameter is not admissible: {0}")]
    NotAdmissible(String),
    #[error("no canonical socle deformation P*({0})")]
    NoCanonicalStar(String),
    #[error("index r={0} out of range 1..={1}")]
    RangeError(u32, u32),
    #[error("θ vector has {0} entries, case needs {1}")]
    CaseMismatch(usize, usize),
    #[error("case {0:?} has no collapsed presentation")]
    NoCollapsedForm(ProofCase),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// Default cap seed per family: a generous multiple of the Loewy length.
pub fn cap_seed(t: DynkinType) -> usize {
    let n = t.rank as usize;
    match t.family {
        Family::A => 2 * (n + 1),
        Family::D => 4 * n - 4,
        Family::E => match n {
            6 => 24,
            7 => 36,
            _ => 60,
        },
        Family::L => 4 * n + 2,
    }
}

fn a(k: u32) -> String {
    format!("a{k}")
}
fn ab(k: u32) -> String {
    format!("abar{k}")
}

fn ids(q: &Arc<Quiver>, names: &[String]) -> Vec<ArrowId> {
    names
        .iter()
        .map(|n| q.arrow_by_name(n).unwrap_or_else(|| panic!("no arrow `{n}`")).id)
        .collect()
}

fn word<K: Scalar>(q: &Arc<Quiver>, spec: FieldSpec, names: &[String]) -> FreeElem<K> {
    FreeElem::word(q, spec, &ids(q, names))
}

fn cat(parts: &[&[String]]) -> Vec<String> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// The deformation parameter f of P^f(Δ): a noncommutative polynomial in
/// x, y (types D, E) or x (type L); always zero for type A. Every monomial
/// must have degree at least 2.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformParam<K: Scalar>(pub NcPoly<K>);

impl<K: Scalar> DeformParam<K> {
    pub fn zero_xy() -> Self {
        DeformParam(NcPoly::zero(&["x", "y"]))
    }
    pub fn zero_x() -> Self {
        DeformParam(NcPoly::zero(&["x"]))
    }

    /// (xy)^k over x, y.
    pub fn xy_power(k: u32, spec: &FieldSpec) -> Self {
        let x = NcPoly::var(&["x", "y"], 0, spec);
        let y = NcPoly::var(&["x", "y"], 1, spec);
        DeformParam(x.mul(&y).pow(k, spec))
    }

    /// (xy)^k x over x, y.
    pub fn xy_power_x(k: u32, spec: &FieldSpec) -> Self {
        let x = NcPoly::var(&["x", "y"], 0, spec);
        let y = NcPoly::var(&["x", "y"], 1, spec);
        DeformParam(x.mul(&y).pow(k, spec).mul(&x))
    }

    /// (yx)^2 y over x, y — the P*(E_6) choice.
    pub fn yx2y(spec: &FieldSpec) -> Self {
        let x = NcPoly::var(&["x", "y"], 0, spec);
        let y = NcPoly::var(&["x", "y"], 1, spec);
        DeformParam(y.mul(&x).pow(2, spec).mul(&y))
    }

    /// x^k in the single variable x (type L).
    pub fn x_power(k: u32, spec: &FieldSpec) -> Self {
        let x = NcPoly::var(&["x"], 0, spec);
        DeformParam(x.pow(k, spec))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn check_degree(&self) -> Result<(), PresError> {
        if self.0.min_word_len_at_least(2) {
            Ok(())
        } else {
            Err(PresError::NotAdmissible("f has a monomial of degree < 2".into()))
        }
    }
}

/// Parses a deformation parameter from the element grammar over the loop
/// alphabet of R(Δ): `x`, `y` for types D and E, `x` for type L.
pub fn parse_deform<K: Scalar>(
    t: DynkinType,
    src: &str,
    spec: FieldSpec,
) -> Result<DeformParam<K>, crate::dsl::ParseError> {
    let r = local_algebra::<K>(t, spec);
    let elem =
        crate::dsl::parse_element::<K>(src, &r.quiver, spec, &crate::dsl::Params::new())?;
    let vars: Vec<&str> =
        if t.family == Family::L { vec!["x"] } else { vec!["x", "y"] };
    let mut poly = NcPoly::zero(&vars);
    for (p, c) in elem.terms() {
        let d = r.quiver.path(*p);
        let word: Vec<u8> = d.arrows.iter().map(|&a| a as u8).collect();
        poly.add_term(word, c.clone());
    }
    Ok(DeformParam(poly))
}

/// The local algebra R(Δ) as a one-vertex presentation:
/// R(A_n) = K, R(D_n) = K<x,y>/(x², y², (x+y)^{n-2}),
/// R(E_n) = K<x,y>/(x², y³, (x+y)^{n-3}), R(L_n) = K[x]/(x^{2n}).
pub fn local_algebra<K: Scalar>(t: DynkinType, spec: FieldSpec) -> Presentation<K> {
    let n = t.rank;
    let (quiver, relations): (Arc<Quiver>, Vec<FreeElem<K>>) = match t.family {
        Family::A => {
            let q = Quiver::new(vec![0], vec![], vec![]).unwrap();
            (q, vec![])
        }
        Family::D | Family::E => {
            let q = Quiver::new(
                vec![0],
                vec![("x".into(), 0, 0), ("y".into(), 0, 0)],
                vec![(0, 0), (1, 1)],
            )
            .unwrap();
            let x = word::<K>(&q, spec, &["x".into()]);
            let y = word::<K>(&q, spec, &["y".into()]);
            let (py, psum) = if t.family == Family::D { (2, n - 2) } else { (3, n - 3) };
            let rels = vec![
                x.pow(2).unwrap(),
                y.pow(py).unwrap(),
                x.add(&y).unwrap().pow(psum).unwrap(),
            ];
            (q, rels)
        }
        Family::L => {
            let q = Quiver::new(vec![0], vec![("x".into(), 0, 0)], vec![(0, 0)]).unwrap();
            let x = word::<K>(&q, spec, &["x".into()]);
            (q, vec![x.pow(2 * n).unwrap()])
        }
    };
    Presentation::new(quiver, spec, relations, format!("R({t})"))
        .with_cap(CapPolicy::Auto(cap_seed(t)))
}

/// Checks admissibility of f: for types A, D, L every f in the square of the
/// radical qualifies; for E_n the extra condition (x+y+f(x,y))^{n-3} = 0 must
/// hold in R(E_n).
pub fn is_admissible<K: Scalar>(
    t: DynkinType,
    f: &DeformParam<K>,
    spec: FieldSpec,
) -> Result<bool, PresError> {
    f.check_degree()?;
    if t.family != Family::E {
        return Ok(true);
    }
    let r = local_algebra::<K>(t, spec).build()?;
    let q = r.quiver().clone();
    let x = word::<K>(&q, spec, &["x".into()]);
    let y = word::<K>(&q, spec, &["y".into()]);
    let f_eval = f.0.substitute(&[x.clone(), y.clone()]).expect("loops at the single vertex");
    let total = x.add(&y).unwrap().add(&f_eval).unwrap().pow(t.rank - 3).unwrap();
    Ok(r.normal_form(&total)?.is_empty())
}

/// Mesh relation at one vertex: sum of a·ā over arrows a starting there.
fn mesh_at<K: Scalar>(q: &Arc<Quiver>, spec: FieldSpec, v: u32) -> FreeElem<K> {
    let mut rel = FreeElem::zero(q, spec);
    for arr in q.arrows_from(v) {
        rel = rel.add(&FreeElem::word(q, spec, &[arr.id, q.bar(arr.id)])).unwrap();
    }
    rel
}

/// The preprojective algebra P(Δ): mesh relations at every vertex.
pub fn preprojective<K: Scalar>(t: DynkinType, spec: FieldSpec) -> Presentation<K> {
    let q = build_dynkin_quiver(t);
    let rels: Vec<FreeElem<K>> =
        q.vertices.clone().iter().map(|&v| mesh_at(&q, spec, v)).filter(|r| !r.is_zero()).collect();
    Presentation::new(q, spec, rels, format!("P({t})")).with_cap(CapPolicy::Auto(cap_seed(t)))
}

/// The deformed preprojective algebra P^f(Δ): ordinary mesh relations away
/// from the exceptional vertex, the perturbed relation there, and the extra
/// nilpotency relation of the family.
pub fn deformed<K: Scalar>(
    t: DynkinType,
    f: &DeformParam<K>,
    spec: FieldSpec,
) -> Result<Presentation<K>, PresError> {
    if !is_admissible(t, f, spec)? {
        return Err(PresError::NotAdmissible(format!("(x+y+f)^{} != 0 in R({t})", t.rank - 3)));
    }
    let n = t.rank;
    let q = build_dynkin_quiver(t);
    let label = if f.is_zero() { format!("P({t})") } else { format!("P^f({t})") };
    let mut rels: Vec<FreeElem<K>> = Vec::new();
    match t.family {
        Family::A => {
            return Ok(preprojective(t, spec));
        }
        Family::D => {
            let x = word::<K>(&q, spec, &[ab(0), a(0)]);
            let y = word::<K>(&q, spec, &[ab(1), a(1)]);
            let f_eval = f.0.substitute(&[x.clone(), y.clone()]).expect("loops at vertex 2");
            rels.push(mesh_at::<K>(&q, spec, 2).add(&f_eval).unwrap());
            rels.push(x.add(&y).unwrap().pow(n - 2).unwrap());
            for v in q.vertices.clone() {
                if v != 2 {
                    rels.push(mesh_at(&q, spec, v));
                }
            }
        }
        Family::E => {
            let x = word::<K>(&q, spec, &[ab(0), a(0)]);
            let y = word::<K>(&q, spec, &[ab(2), a(2)]);
            let f_eval = f.0.substitute(&[x.clone(), y.clone()]).expect("loops at vertex 3");
            rels.push(mesh_at::<K>(&q, spec, 3).add(&f_eval).unwrap());
            rels.push(x.add(&y).unwrap().pow(n - 3).unwrap());
            for v in q.vertices.clone() {
                if v != 3 {
                    rels.push(mesh_at(&q, spec, v));
                }
            }
        }
        Family::L => {
            let eps = word::<K>(&q, spec, &["eps".into()]);
            let f_eval = f.0.substitute(std::slice::from_ref(&eps)).expect("loop at vertex 0");
            // mesh at 0 is eps^2 (+ a0 abar0 when n >= 2); deformation adds eps*f(eps)
            rels.push(mesh_at::<K>(&q, spec, 0).add(&eps.mul(&f_eval).unwrap()).unwrap());
            rels.push(eps.pow(2 * n).unwrap());
            for v in q.vertices.clone() {
                if v != 0 {
                    rels.push(mesh_at(&q, spec, v));
                }
            }
        }
    }
    Ok(Presentation::new(q, spec, rels, label).with_cap(CapPolicy::Auto(cap_seed(t))))
}

/// The deformation parameter of P*(Δ):
/// f = (xy)^{m-1} for D_{2m}, (xy)^{m-1}x for D_{2m+1}, (yx)²y for E_6,
/// (xy)^{3n-17} for E_7/E_8, x^{2n-2} for L_n (n ≥ 2).
pub fn star_deform_param<K: Scalar>(
    t: DynkinType,
    spec: FieldSpec,
) -> Result<DeformParam<K>, PresError> {
    let n = t.rank;
    Ok(match t.family {
        Family::A => return Err(PresError::NoCanonicalStar(t.to_string())),
        Family::D => {
            let m = n / 2;
            if n.is_multiple_of(2) {
                DeformParam::xy_power(m - 1, &spec)
            } else {
                DeformParam::xy_power_x(m - 1, &spec)
            }
        }
        Family::E => {
            if n == 6 {
                DeformParam::yx2y(&spec)
            } else {
                DeformParam::xy_power(3 * n - 17, &spec)
            }
        }
        Family::L => {
            if n < 2 {
                return Err(PresError::NoCanonicalStar(t.to_string()));
            }
            DeformParam::x_power(2 * n - 2, &spec)
        }
    })
}

/// The canonical socle deformation P*(Δ), presented with the socle-killing
/// relations made explicit (the form the non-symmetry arguments use). These
/// are consequences of the minimal deformed presentation — the deformation
/// term is a socle element — and keep the degreewise closure small; the
/// equivalence of the two presentations is checked by tests at small rank
/// and by the dimension identity dim P*(Δ) = dim P(Δ) everywhere.
pub fn canonical_star<K: Scalar>(
    t: DynkinType,
    spec: FieldSpec,
) -> Result<Presentation<K>, PresError> {
    let f = star_deform_param::<K>(t, spec)?;
    let mut pres = deformed(t, &f, spec)?;
    let n = t.rank;
    let q = pres.quiver.clone();
    let w = |names: &[String]| word::<K>(&q, spec, names);
    match t.family {
        Family::D => {
            let xe = w(&[ab(0), a(0)]);
            let ye = w(&[ab(1), a(1)]);
            let we = w(&[a(2), ab(2)]);
            let yw = ye.add(&we).unwrap();
            let xw = xe.add(&we).unwrap();
            let xyw = xe.add(&yw).unwrap();
            pres.relations.push(w(&[a(0)]).mul(&yw).unwrap());
            pres.relations.push(w(&[a(1)]).mul(&xw).unwrap());
            pres.relations.push(w(&[ab(2)]).mul(&xyw).unwrap());
            pres.relations.push(yw.mul(&w(&[ab(0)])).unwrap());
            pres.relations.push(xw.mul(&w(&[ab(1)])).unwrap());
            pres.relations.push(xyw.mul(&w(&[a(2)])).unwrap());
        }
        Family::E => {
            let xe = w(&[ab(0), a(0)]);
            let ye = w(&[ab(2), a(2)]);
            let ze = w(&[a(3), ab(3)]);
            let yz = ye.add(&ze).unwrap();
            let xyz = xe.add(&yz).unwrap();
            pres.relations.push(w(&[a(0)]).mul(&yz).unwrap());
            pres.relations.push(yz.mul(&w(&[ab(0)])).unwrap());
            pres.relations.push(w(&[a(2)]).mul(&xyz).unwrap());
            pres.relations.push(xyz.mul(&w(&[ab(2)])).unwrap());
            pres.relations.push(w(&[ab(3)]).mul(&xyz).unwrap());
            pres.relations.push(xyz.mul(&w(&[a(3)])).unwrap());
        }
        // the L_n closure has no high-degree bulge; keep the minimal form
        Family::L => {}
        Family::A => unreachable!(),
    }
    let _ = n;
    pres.label = format!("P*({t})");
    Ok(pres)
}

/// L_n^(r) = P^{f_r}(L_n) with f_r the coset of x^{2r}; r = n gives P(L_n),
/// r = n-1 gives P*(L_n).
pub fn l_algebra<K: Scalar>(
    n: u32,
    r: u32,
    spec: FieldSpec,
) -> Result<Presentation<K>, PresError> {
    if !(1..=n).contains(&r) {
        return Err(PresError::RangeError(r, n));
    }
    let t = DynkinType::new(Family::L, n)?;
    // the coset of x^{2n} is zero in R(L_n)
    let f =
        if r == n { DeformParam::zero_x() } else { DeformParam::<K>::x_power(2 * r, &spec) };
    let mut pres = deformed(t, &f, spec)?;
    pres.label = format!("L{n}^({r})");
    Ok(pres)
}

// ---------------------------------------------------------------------------
// θ-parameterized presentations from the classification proofs

/// One proof case: which family of socle-equivalent presentations A'(θ)
/// (and, where defined, the single-parameter collapsed form A''(θ)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ProofCase {
    AOdd,
    DOdd,
    DEven,
    E6,
    E7,
    E8,
    L,
}

impl ProofCase {
    pub fn dynkin(&self, n: u32) -> Result<DynkinType, PresError> {
        let t = match self {
            ProofCase::AOdd => DynkinType::new(Family::A, n)?,
            ProofCase::DOdd | ProofCase::DEven => DynkinType::new(Family::D, n)?,
            ProofCase::E6 => DynkinType::new(Family::E, 6)?,
            ProofCase::E7 => DynkinType::new(Family::E, 7)?,
            ProofCase::E8 => DynkinType::new(Family::E, 8)?,
            ProofCase::L => DynkinType::new(Family::L, n)?,
        };
        let rank_ok = match self {
            ProofCase::AOdd => n % 2 == 1 && n >= 3,
            ProofCase::DOdd => n % 2 == 1 && n >= 5,
            ProofCase::DEven => n.is_multiple_of(2) && n >= 4,
            ProofCase::L => n >= 2,
            _ => true,
        };
        if rank_ok {
            Ok(t)
        } else {
            Err(PresError::Quiver(QuiverError::InvalidRank('p', n)))
        }
    }

    /// Number of θ coefficients of the A' presentation.
    pub fn theta_len(&self, n: u32) -> usize {
        match self {
            ProofCase::AOdd => 1,
            ProofCase::E6 => 2,
            ProofCase::DOdd => (n - 2) as usize, // θ_2 .. θ_{n-1}
            ProofCase::DEven | ProofCase::L => n as usize,
            ProofCase::E7 => 7,
            ProofCase::E8 => 8,
        }
    }

    pub fn parse(s: &str) -> Option<ProofCase> {
        match s.to_ascii_lowercase().as_str() {
            "aodd" => Some(ProofCase::AOdd),
            "dodd" => Some(ProofCase::DOdd),
            "deven" => Some(ProofCase::DEven),
            "e6" => Some(ProofCase::E6),
            "e7" => Some(ProofCase::E7),
            "e8" => Some(ProofCase::E8),
            "l" => Some(ProofCase::L),
            _ => None,
        }
    }
}

/// Long-path loop at vertex k of Q_{D_n}:
/// ā_{k-1} … ā_1 a_1 a_2 … a_{n-2} ā_{n-2} … ā_k (k in 2..=n-1).
fn d_long_path(n: u32, k: u32) -> Vec<String> {
    let mut w: Vec<String> = (1..k).rev().map(ab).collect();
    w.push(a(1));
    w.extend((2..=n - 2).map(a));
    w.extend((k..=n - 2).rev().map(ab));
    w
}

/// Long-path loop at vertex k of Q_{L_n}:
/// ā_{k-1} … ā_0 ε a_0 … a_{n-2} ā_{n-2} … ā_k (k in 1..=n-1).
fn l_long_path(n: u32, k: u32) -> Vec<String> {
    let mut w: Vec<String> = (0..k).rev().map(ab).collect();
    w.push("eps".into());
    w.extend((0..=n - 2).map(a));
    w.extend((k..=n - 2).rev().map(ab));
    w
}

struct Ctx<K: Scalar> {
    q: Arc<Quiver>,
    spec: FieldSpec,
    _marker: std::marker::PhantomData<K>,
}

impl<K: Scalar> Ctx<K> {
    fn w(&self, names: &[String]) -> FreeElem<K> {
        word(&self.q, self.spec, names)
    }
    fn mesh0(&self, v: u32) -> FreeElem<K> {
        mesh_at(&self.q, self.spec, v)
    }
    /// u * v for two name lists.
    fn prod(&self, u: &[String], v: &[String]) -> FreeElem<K> {
        self.w(&cat(&[u, v]))
    }
}

/// The presentation A'(θ) transcribed from the corresponding proof,
/// including the auxiliary socle-killing relations.
pub fn a_prime<K: Scalar>(
    case: ProofCase,
    n: u32,
    theta: &[K],
    spec: FieldSpec,
) -> Result<Presentation<K>, PresError> {
    let t = case.dynkin(n)?;
    if theta.len() != case.theta_len(n) {
        return Err(PresError::CaseMismatch(theta.len(), case.theta_len(n)));
    }
    let q = build_dynkin_quiver(t);
    let cx = Ctx::<K> { q: q.clone(), spec, _marker: std::marker::PhantomData };
    let mut rels: Vec<FreeElem<K>> = Vec::new();
    match case {
        ProofCase::AOdd => {
            let m = (n - 1) / 2;
            // a_0 ā_0 ; ā_{n-2} a_{n-2}
            rels.push(cx.w(&[a(0), ab(0)]));
            rels.push(cx.w(&[ab(n - 2), a(n - 2)]));
            // middle vertex m: mesh + θ ā_{m-1}…ā_0 a_0…a_{m-1}
            let mid: Vec<String> =
                (0..m).rev().map(ab).chain((0..m).map(a)).collect();
            rels.push(cx.mesh0(m).add(&cx.w(&mid).scale(&theta[0])).unwrap());
            for l in 1..=n - 2 {
                if l != m {
                    rels.push(cx.mesh0(l));
                }
            }
            // socle killers: (mid path) a_m and ā_m (mid path)
            rels.push(cx.prod(&mid, &[a(m)]));
            rels.push(cx.prod(&[ab(m)], &mid));
        }
        ProofCase::E6 => {
            let x = [ab(0), a(0)];
            let y = [ab(2), a(2)];
            let y2 = cat(&[&y, &y]);
            // vertex 0: a0 ā0 + θ0 a0 y x y² ā0
            let w0 = cat(&[&[a(0)], &y, &x, &y2, &[ab(0)]]);
            rels.push(cx.w(&[a(0), ab(0)]).add(&cx.w(&w0).scale(&theta[0])).unwrap());
            rels.push(cx.w(&[a(1), ab(1)]));
            rels.push(cx.mesh0(2));
            // vertex 3: x + y + a3 ā3 + θ3 y² x y²
            let w3 = cat(&[&y2, &x, &y2]);
            rels.push(cx.mesh0(3).add(&cx.w(&w3).scale(&theta[1])).unwrap());
            rels.push(cx.mesh0(4));
            rels.push(cx.mesh0(5));
            // socle killers
            let xe = cx.w(x.as_ref());
            let ye = cx.w(y.as_ref());
            let z = cx.w(&[a(3), ab(3)]);
            let yz = ye.add(&z).unwrap();
            let xyz = xe.add(&yz).unwrap();
            rels.push(cx.w(&[a(0), ab(0), a(0)]));
            rels.push(cx.w(&[ab(0), a(0), ab(0)]));
            rels.push(cx.w(&[a(0)]).mul(&yz).unwrap());
            rels.push(yz.mul(&cx.w(&[ab(0)])).unwrap());
            rels.push(cx.w(&[a(2)]).mul(&xyz).unwrap());
            rels.push(xyz.mul(&cx.w(&[ab(2)])).unwrap());
            rels.push(cx.w(&[ab(3)]).mul(&xyz).unwrap());
            rels.push(xyz.mul(&cx.w(&[a(3)])).unwrap());
        }
        ProofCase::DOdd | ProofCase::DEven => {
            let even = case == ProofCase::DEven;
            // θ index layout: DOdd stores θ_2..θ_{n-1}, DEven θ_0..θ_{n-1}
            let th = |i: u32| -> &K {
                if even {
                    &theta[i as usize]
                } else {
                    &theta[(i - 2) as usize]
                }
            };
            if even {
                let tail: Vec<String> =
                    (2..=n - 2).map(a).chain((2..=n - 2).rev().map(ab)).collect();
                let w0 = cat(&[&[a(0)], &tail, &[ab(0)]]);
                let w1 = cat(&[&[a(1)], &tail, &[ab(1)]]);
                rels.push(cx.w(&[a(0), ab(0)]).add(&cx.w(&w0).scale(th(0))).unwrap());
                rels.push(cx.w(&[a(1), ab(1)]).add(&cx.w(&w1).scale(th(1))).unwrap());
                rels.push(cx.w(&[a(0), ab(0), a(0)]));
                rels.push(cx.w(&[ab(0), a(0), ab(0)]));
                rels.push(cx.w(&[a(1), ab(1), a(1)]));
                rels.push(cx.w(&[ab(1), a(1), ab(1)]));
            } else {
                rels.push(cx.w(&[a(0), ab(0)]));
                rels.push(cx.w(&[a(1), ab(1)]));
            }
            for k in 2..=n - 1 {
                rels.push(cx.mesh0(k).add(&cx.w(&d_long_path(n, k)).scale(th(k))).unwrap());
            }
            // socle killers around the branch vertex
            let xe = cx.w(&[ab(0), a(0)]);
            let ye = cx.w(&[ab(1), a(1)]);
            let we = cx.w(&[a(2), ab(2)]);
            let yw = ye.add(&we).unwrap();
            let xw = xe.add(&we).unwrap();
            let xyw = xe.add(&yw).unwrap();
            rels.push(cx.w(&[a(0)]).mul(&yw).unwrap());
            rels.push(cx.w(&[a(1)]).mul(&xw).unwrap());
            rels.push(cx.w(&[ab(2)]).mul(&xyw).unwrap());
            rels.push(yw.mul(&cx.w(&[ab(0)])).unwrap());
            rels.push(xw.mul(&cx.w(&[ab(1)])).unwrap());
            rels.push(xyw.mul(&cx.w(&[a(2)])).unwrap());
            // socle killers along the tail
            for k in 3..=n - 2 {
                let mesh = cx.mesh0(k);
                rels.push(cx.w(&[a(k - 1)]).mul(&mesh).unwrap());
                rels.push(mesh.mul(&cx.w(&[ab(k - 1)])).unwrap());
                rels.push(cx.w(&[ab(k)]).mul(&mesh).unwrap());
                rels.push(mesh.mul(&cx.w(&[a(k)])).unwrap());
            }
            rels.push(cx.w(&[ab(n - 2), a(n - 2), ab(n - 2)]));
            rels.push(cx.w(&[a(n - 2), ab(n - 2), a(n - 2)]));
        }
        ProofCase::L => {
            let eps = cx.w(&["eps".into()]);
            let e2n1 = eps.pow(2 * n - 1).unwrap();
            rels.push(
                cx.mesh0(0).add(&e2n1.scale(&theta[0])).unwrap(),
            );
            rels.push(eps.pow(2 * n).unwrap());
            for k in 1..=n - 1 {
                rels.push(
                    cx.mesh0(k)
                        .add(&cx.w(&l_long_path(n, k)).scale(&theta[k as usize]))
                        .unwrap(),
                );
            }
            for k in 1..=n.saturating_sub(2) {
                let mesh = cx.mesh0(k);
                rels.push(cx.w(&[a(k - 1)]).mul(&mesh).unwrap());
                rels.push(mesh.mul(&cx.w(&[ab(k - 1)])).unwrap());
                rels.push(cx.w(&[ab(k)]).mul(&mesh).unwrap());
                rels.push(mesh.mul(&cx.w(&[a(k)])).unwrap());
            }
            rels.push(cx.w(&[ab(n - 2), a(n - 2), ab(n - 2)]));
            rels.push(cx.w(&[a(n - 2), ab(n - 2), a(n - 2)]));
        }
        ProofCase::E7 => {
            let x: Vec<String> = vec![ab(0), a(0)];
            let y: Vec<String> = vec![ab(2), a(2)];
            let y2 = cat(&[&y, &y]);
            let core = cat(&[&y2, &x, &y, &x]); // y² x y x
            let w0 = cat(&[&[a(0)], &y2, &x, &y, &x, &y2, &[ab(0)]]);
            let w1 = cat(&[&[a(1), a(2)], &x, &y, &x, &y2, &x, &[ab(2), ab(1)]]);
            let w2 = cat(&[&[ab(1), a(1), a(2)], &x, &y, &x, &y2, &x, &[ab(2)]]);
            let w3 = cat(&[&y2, &x, &y, &x, &y2, &x]);
            let tail_up: Vec<String> = vec![a(3), a(4), a(5)];
            let tail_down: Vec<String> = vec![ab(5), ab(4)];
            let w4 = cat(&[&[ab(3)], &core, &tail_up, &tail_down]);
            let w5 = cat(&[&[ab(4), ab(3)], &core, &tail_up, &[ab(5)]]);
            let w6 = cat(&[&[ab(5), ab(4), ab(3)], &core, &tail_up]);
            rels.push(cx.w(&[a(0), ab(0)]).add(&cx.w(&w0).scale(&theta[0])).unwrap());
            rels.push(cx.w(&[a(1), ab(1)]).add(&cx.w(&w1).scale(&theta[1])).unwrap());
            rels.push(cx.w(&[a(0), ab(0), a(0)]));
            rels.push(cx.w(&[ab(0), a(0), ab(0)]));
            rels.push(cx.w(&[a(1), ab(1), a(1)]));
            rels.push(cx.w(&[ab(1), a(1), ab(1)]));
            rels.push(cx.mesh0(2).add(&cx.w(&w2).scale(&theta[2])).unwrap());
            rels.push(cx.mesh0(3).add(&cx.w(&w3).scale(&theta[3])).unwrap());
            rels.push(cx.mesh0(4).add(&cx.w(&w4).scale(&theta[4])).unwrap());
            rels.push(cx.mesh0(5).add(&cx.w(&w5).scale(&theta[5])).unwrap());
            rels.push(cx.mesh0(6).add(&cx.w(&w6).scale(&theta[6])).unwrap());
            push_e_killers(&cx, n, &mut rels);
        }
        ProofCase::E8 => {
            let x: Vec<String> = vec![ab(0), a(0)];
            let y: Vec<String> = vec![ab(2), a(2)];
            let y2 = cat(&[&y, &y]);
            let y2x = cat(&[&y2, &x]);
            let y2x2 = cat(&[&y2x, &y2x]); // (y²x)²
            let yx = cat(&[&y, &x]);
            let yx2 = cat(&[&yx, &yx]); // (yx)²
            let xy2 = cat(&[&x, &y2]);
            let xy2_2 = cat(&[&xy2, &xy2]); // (xy²)²
            let core = cat(&[&y2x2, &y, &x, &y2]); // (y²x)² y x y²
            let w0 = cat(&[&[a(0)], &y2x2, &y, &xy2_2, &[ab(0)]]);
            let w1 = cat(&[&[a(1), a(2)], &x, &y, &yx2, &y2x2, &[ab(2), ab(1)]]);
            // the display writes the θ_2 path with the ā_1 a_1 factor at the
            // end; the well-definedness computation uses it in front, which
            // is the form consistent with the maps
            let w2 = cat(&[&[ab(1), a(1), a(2)], &x, &y, &yx2, &y2x2, &[ab(2)]]);
            let w3 = cat(&[&y2x2, &y, &x, &y2x2]);
            let tail_up: Vec<String> = vec![a(3), a(4), a(5), a(6)];
            let w4 = cat(&[&[ab(3)], &core, &tail_up, &[ab(6), ab(5), ab(4)]]);
            let w5 = cat(&[&[ab(4), ab(3)], &core, &tail_up, &[ab(6), ab(5)]]);
            let w6 = cat(&[&[ab(5), ab(4), ab(3)], &core, &tail_up, &[ab(6)]]);
            let w7 = cat(&[&[ab(6), ab(5), ab(4), ab(3)], &core, &tail_up]);
            rels.push(cx.w(&[a(0), ab(0)]).add(&cx.w(&w0).scale(&theta[0])).unwrap());
            rels.push(cx.w(&[a(1), ab(1)]).add(&cx.w(&w1).scale(&theta[1])).unwrap());
            rels.push(cx.w(&[a(0), ab(0), a(0)]));
            rels.push(cx.w(&[ab(0), a(0), ab(0)]));
            rels.push(cx.w(&[a(1), ab(1), a(1)]));
            rels.push(cx.w(&[ab(1), a(1), ab(1)]));
            rels.push(cx.mesh0(2).add(&cx.w(&w2).scale(&theta[2])).unwrap());
            rels.push(cx.mesh0(3).add(&cx.w(&w3).scale(&theta[3])).unwrap());
            rels.push(cx.mesh0(4).add(&cx.w(&w4).scale(&theta[4])).unwrap());
            rels.push(cx.mesh0(5).add(&cx.w(&w5).scale(&theta[5])).unwrap());
            rels.push(cx.mesh0(6).add(&cx.w(&w6).scale(&theta[6])).unwrap());
            rels.push(cx.mesh0(7).add(&cx.w(&w7).scale(&theta[7])).unwrap());
            push_e_killers(&cx, n, &mut rels);
        }
    }
    let label = format!("A'({t};θ)");
    Ok(Presentation::new(q, spec, rels, label).with_cap(CapPolicy::Auto(cap_seed(t))))
}

/// Socle killers shared by the E_7/E_8 presentations: around the branch
/// vertex 3, along the tail meshes, and at the end vertex.
fn push_e_killers<K: Scalar>(cx: &Ctx<K>, n: u32, rels: &mut Vec<FreeElem<K>>) {
    let xe = cx.w(&[ab(0), a(0)]);
    let ye = cx.w(&[ab(2), a(2)]);
    let ze = cx.w(&[a(3), ab(3)]);
    let yz = ye.add(&ze).unwrap();
    let xyz = xe.add(&yz).unwrap();
    rels.push(cx.w(&[a(0)]).mul(&yz).unwrap());
    rels.push(yz.mul(&cx.w(&[ab(0)])).unwrap());
    rels.push(cx.w(&[a(2)]).mul(&xyz).unwrap());
    rels.push(xyz.mul(&cx.w(&[ab(2)])).unwrap());
    rels.push(cx.w(&[ab(3)]).mul(&xyz).unwrap());
    rels.push(xyz.mul(&cx.w(&[a(3)])).unwrap());
    // tail meshes k in {2} and {4..n-2}
    let mut ks: Vec<u32> = vec![2];
    ks.extend(4..=n - 2);
    for k in ks {
        let mesh = cx.mesh0(k);
        rels.push(cx.w(&[a(k - 1)]).mul(&mesh).unwrap());
        rels.push(mesh.mul(&cx.w(&[ab(k - 1)])).unwrap());
        rels.push(cx.w(&[ab(k)]).mul(&mesh).unwrap());
        rels.push(mesh.mul(&cx.w(&[a(k)])).unwrap());
    }
    rels.push(cx.w(&[ab(n - 2), a(n - 2), ab(n - 2)]));
    rels.push(cx.w(&[a(n - 2), ab(n - 2), a(n - 2)]));
}

/// The collapsed presentation A''(θ) (cases D_even, L, E_7, E_8).
pub fn a_second<K: Scalar>(
    case: ProofCase,
    n: u32,
    theta: &K,
    spec: FieldSpec,
) -> Result<Presentation<K>, PresError> {
    let t = case.dynkin(n)?;
    let q = build_dynkin_quiver(t);
    let cx = Ctx::<K> { q: q.clone(), spec, _marker: std::marker::PhantomData };
    let mut rels: Vec<FreeElem<K>> = Vec::new();
    match case {
        ProofCase::DEven => {
            rels.push(cx.w(&[a(0), ab(0)]));
            rels.push(cx.w(&[a(1), ab(1)]));
            rels.push(cx.mesh0(2).add(&cx.w(&d_long_path(n, 2)).scale(theta)).unwrap());
            let xe = cx.w(&[ab(0), a(0)]);
            let ye = cx.w(&[ab(1), a(1)]);
            let we = cx.w(&[a(2), ab(2)]);
            let yw = ye.add(&we).unwrap();
            let xw = xe.add(&we).unwrap();
            let xyw = xe.add(&yw).unwrap();
            rels.push(cx.w(&[a(0)]).mul(&yw).unwrap());
            rels.push(cx.w(&[a(1)]).mul(&xw).unwrap());
            rels.push(cx.w(&[ab(2)]).mul(&xyw).unwrap());
            rels.push(yw.mul(&cx.w(&[ab(0)])).unwrap());
            rels.push(xw.mul(&cx.w(&[ab(1)])).unwrap());
            rels.push(xyw.mul(&cx.w(&[a(2)])).unwrap());
            for k in 3..=n - 2 {
                rels.push(cx.mesh0(k));
            }
            rels.push(cx.w(&[ab(n - 2), a(n - 2)]));
        }
        ProofCase::L => {
            let eps = cx.w(&["eps".into()]);
            rels.push(cx.mesh0(0).add(&eps.pow(2 * n - 1).unwrap().scale(theta)).unwrap());
            rels.push(eps.pow(2 * n).unwrap());
            rels.push(cx.w(&[ab(n - 2), a(n - 2)]));
            for i in 0..=n.saturating_sub(3) {
                rels.push(cx.mesh0(i + 1));
            }
        }
        ProofCase::E7 => {
            let x: Vec<String> = vec![ab(0), a(0)];
            let y: Vec<String> = vec![ab(2), a(2)];
            let y2 = cat(&[&y, &y]);
            let tpath = cat(&[&y, &x, &y2, &x, &y2, &x]); // y x y²x y²x
            rels.push(cx.w(&[a(0), ab(0)]));
            rels.push(cx.w(&[a(1), ab(1)]));
            for k in [2u32, 4, 5] {
                rels.push(cx.mesh0(k));
            }
            rels.push(cx.w(&[ab(5), a(5)]));
            rels.push(cx.mesh0(3).add(&cx.w(&tpath).scale(theta)).unwrap());
            push_e_branch_killers(&cx, &mut rels);
        }
        ProofCase::E8 => {
            let x: Vec<String> = vec![ab(0), a(0)];
            let y: Vec<String> = vec![ab(2), a(2)];
            let y2x = cat(&[&y, &y, &x]);
            let y2x2 = cat(&[&y2x, &y2x]);
            // the collapsed relation display swaps this to x y, which is
            // zero in the quotient; the y x order matches the A'(θ_3) term
            // and is the form the verification computations need
            let tpath = cat(&[&y2x2, &y, &x, &y2x2]); // (y²x)² y x (y²x)²
            rels.push(cx.w(&[a(0), ab(0)]));
            rels.push(cx.w(&[a(1), ab(1)]));
            for k in [2u32, 4, 5, 6] {
                rels.push(cx.mesh0(k));
            }
            rels.push(cx.w(&[ab(6), a(6)]));
            rels.push(cx.mesh0(3).add(&cx.w(&tpath).scale(theta)).unwrap());
            push_e_branch_killers(&cx, &mut rels);
        }
        _ => return Err(PresError::NoCollapsedForm(case)),
    }
    let label = format!("A''({t};θ)");
    Ok(Presentation::new(q, spec, rels, label).with_cap(CapPolicy::Auto(cap_seed(t))))
}

fn push_e_branch_killers<K: Scalar>(cx: &Ctx<K>, rels: &mut Vec<FreeElem<K>>) {
    let xe = cx.w(&[ab(0), a(0)]);
    let ye = cx.w(&[ab(2), a(2)]);
    let ze = cx.w(&[a(3), ab(3)]);
    let yz = ye.add(&ze).unwrap();
    let xyz = xe.add(&yz).unwrap();
    rels.push(cx.w(&[a(0)]).mul(&yz).unwrap());
    rels.push(yz.mul(&cx.w(&[ab(0)])).unwrap());
    rels.push(cx.w(&[a(2)]).mul(&xyz).unwrap());
    rels.push(xyz.mul(&cx.w(&[ab(2)])).unwrap());
    rels.push(cx.w(&[ab(3)]).mul(&xyz).unwrap());
    rels.push(xyz.mul(&cx.w(&[a(3)])).unwrap());
}

/// Collapses the θ vector of A'(θ) to the single θ of A''(θ).
///
/// The E_7 and E_8 formulas are the paper's. For D_even the printed formula
/// stops at i = n-2 but the well-definedness of the catalog map forces the
/// θ_{n-1} term; for L the printed sign exponent (n-2)(n-1)/2 breaks at even
/// n and the telescoping gives n(n-1)/2. Both corrections are verified
/// computationally by the θ-consistency checks (the catalog maps are only
/// well defined for the value produced here).
pub fn theta_collapse<K: Scalar>(
    case: ProofCase,
    n: u32,
    theta: &[K],
    spec: FieldSpec,
) -> Result<K, PresError> {
    if theta.len() != case.theta_len(n) {
        return Err(PresError::CaseMismatch(theta.len(), case.theta_len(n)));
    }
    let sign = |e: u32| -> K { K::from_spec_int(&spec, if e.is_multiple_of(2) { 1 } else { -1 }) };
    match case {
        ProofCase::DEven => {
            // θ = Σ_{i=0}^{n-1} (-1)^i θ_i
            let mut acc = K::zero();
            for i in 0..n {
                acc = acc + sign(i) * theta[i as usize].clone();
            }
            Ok(acc)
        }
        ProofCase::L => {
            // θ = θ_0 + Σ_{i=1}^{n-1} (-1)^{i + n(n-1)/2} θ_i
            let base = (n * (n - 1)) / 2;
            let mut acc = theta[0].clone();
            for i in 1..n {
                acc = acc + sign(i + base) * theta[i as usize].clone();
            }
            Ok(acc)
        }
        ProofCase::E7 => {
            // θ = θ_0 + θ_1 - θ_2 - θ_3 + θ_4 - θ_5 + θ_6
            let signs = [1i64, 1, -1, -1, 1, -1, 1];
            let mut acc = K::zero();
            for (i, s) in signs.iter().enumerate() {
                acc = acc + K::from_spec_int(&spec, *s) * theta[i].clone();
            }
            Ok(acc)
        }
        ProofCase::E8 => {
            // θ = -θ_0 - θ_1 + θ_2 + θ_3 - θ_4 + θ_5 - θ_6 + θ_7
            let signs = [-1i64, -1, 1, 1, -1, 1, -1, 1];
            let mut acc = K::zero();
            for (i, s) in signs.iter().enumerate() {
                acc = acc + K::from_spec_int(&spec, *s) * theta[i].clone();
            }
            Ok(acc)
        }
        _ => Err(PresError::NoCollapsedForm(case)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rat};
    use num_traits::{One, Zero};

    const GF2: FieldSpec = FieldSpec::PrimeField(2);
    const GF3: FieldSpec = FieldSpec::PrimeField(3);

    #[test]
    fn local_algebras_match_the_table() {
        // R(A_n) = K
        let r = local_algebra::<Fp>(DynkinType::new(Family::A, 4).unwrap(), GF2).build().unwrap();
        assert_eq!(r.dim(), 1);
        // R(D_4): dim 4
        let r = local_algebra::<Fp>(DynkinType::new(Family::D, 4).unwrap(), GF2).build().unwrap();
        assert_eq!(r.dim(), 4);
        // R(L_2) = K[x]/(x^4)
        let r = local_algebra::<Rat>(DynkinType::new(Family::L, 2).unwrap(), FieldSpec::Rationals)
            .build()
            .unwrap();
        assert_eq!(r.dim(), 4);
        assert_eq!(r.hilbert_by_degree(), vec![1, 1, 1, 1]);
        // R(E_6) relations x², y³, (x+y)³
        let p = local_algebra::<Fp>(DynkinType::new(Family::E, 6).unwrap(), GF3);
        assert_eq!(p.relations.len(), 3);
        assert_eq!(p.relations[1].max_degree(), 3);
    }

    #[test]
    fn admissibility() {
        // f = 0 is admissible for every type
        for (fam, n) in [(Family::A, 3), (Family::D, 5), (Family::E, 7), (Family::L, 2)] {
            let t = DynkinType::new(fam, n).unwrap();
            let f = if fam == Family::L { DeformParam::<Fp>::zero_x() } else { DeformParam::zero_xy() };
            assert!(is_admissible(t, &f, GF2).unwrap(), "{t}");
        }
        // E_7 with f = (xy)^4 (the P* choice, 3n-17 = 4)
        let t = DynkinType::new(Family::E, 7).unwrap();
        assert!(is_admissible(t, &DeformParam::<Fp>::xy_power(4, &GF2), GF2).unwrap());
        // E_6 with f = (yx)²y
        let t6 = DynkinType::new(Family::E, 6).unwrap();
        assert!(is_admissible(t6, &DeformParam::<Fp>::yx2y(&GF2), GF2).unwrap());
        // degree-1 f is rejected outright
        let mut bad = NcPoly::<Fp>::zero(&["x", "y"]);
        bad.add_term(vec![0], Fp::from_spec_int(&GF2, 1));
        assert!(is_admissible(t, &DeformParam(bad), GF2).is_err());
    }

    #[test]
    fn inadmissible_e6_deformation_detected() {
        // f = x y is NOT admissible for E_6: (x+y+xy)^3 != 0 in R(E_6)
        let t = DynkinType::new(Family::E, 6).unwrap();
        let f = DeformParam::<Fp>::xy_power(1, &GF2);
        assert!(!is_admissible(t, &f, GF2).unwrap());
    }

    #[test]
    fn deformed_a_is_preprojective() {
        let t = DynkinType::new(Family::A, 3).unwrap();
        let p = deformed::<Fp>(t, &DeformParam::zero_xy(), GF2).unwrap();
        let q = preprojective::<Fp>(t, GF2);
        assert_eq!(p.canonical_text(), q.canonical_text());
    }

    #[test]
    fn deformed_d4_with_f_xy_matches_spec_example() {
        let t = DynkinType::new(Family::D, 4).unwrap();
        let p = canonical_star::<Fp>(t, GF2).unwrap();
        // the vertex-2 relation carries the extra monomial abar0*a0*abar1*a1
        let r = &p.relations[0];
        assert_eq!(r.num_terms(), 4);
        assert_eq!(r.max_degree(), 4);
        assert_eq!(r.homogeneous_pair(), Some((2, 2)));
    }

    #[test]
    fn star_choices() {
        // P*(E_8): f = (xy)^7, so the deformed relation has degree 28
        let p = canonical_star::<Fp>(DynkinType::new(Family::E, 8).unwrap(), GF2).unwrap();
        assert_eq!(p.relations[0].max_degree(), 28);
        // P*(D_5): f = xyx, degree 6
        let p = canonical_star::<Fp>(DynkinType::new(Family::D, 5).unwrap(), GF2).unwrap();
        assert_eq!(p.relations[0].max_degree(), 6);
        // P*(L_2): eps² + a0 abar0 + eps³
        let p = canonical_star::<Fp>(DynkinType::new(Family::L, 2).unwrap(), GF2).unwrap();
        assert_eq!(p.relations[0].max_degree(), 3);
        // no P* for A_n or L_1
        assert!(canonical_star::<Fp>(DynkinType::new(Family::A, 3).unwrap(), GF2).is_err());
        assert!(canonical_star::<Fp>(DynkinType::new(Family::L, 1).unwrap(), GF2).is_err());
    }

    #[test]
    fn l_family_boundaries() {
        // L_n^(n) is the ordinary preprojective algebra
        let l22 = l_algebra::<Fp>(2, 2, GF2).unwrap();
        let p = preprojective::<Fp>(DynkinType::new(Family::L, 2).unwrap(), GF2);
        assert_eq!(l22.relations.len(), p.relations.len() + 1); // plus eps^4
        let l22_alg = l22.build().unwrap();
        let p_alg = p.build().unwrap();
        assert_eq!(l22_alg.dim(), p_alg.dim());
        assert_eq!(l22_alg.basis_signature(), p_alg.basis_signature());
        // L_n^(n-1) = P*(L_n)
        let l21 = l_algebra::<Fp>(2, 1, GF2).unwrap();
        let star = canonical_star::<Fp>(DynkinType::new(Family::L, 2).unwrap(), GF2).unwrap();
        assert_eq!(l21.canonical_text(), star.canonical_text());
        // out-of-range r
        assert!(matches!(l_algebra::<Fp>(2, 0, GF2), Err(PresError::RangeError(0, 2))));
        assert!(matches!(l_algebra::<Fp>(2, 3, GF2), Err(PresError::RangeError(3, 2))));
    }

    #[test]
    fn theta_collapse_values() {
        // D_even with θ = (1,1,0,...): 1 - 1 = 0
        let mut th = vec![Fp::zero(); 4];
        th[0] = Fp::from_spec_int(&GF3, 1);
        th[1] = Fp::from_spec_int(&GF3, 1);
        assert!(theta_collapse(ProofCase::DEven, 4, &th, GF3).unwrap().is_zero());
        // E_7 with all θ_i = 1 over GF(2): seven ones sum to 1
        let th = vec![Fp::from_spec_int(&GF2, 1); 7];
        assert!(theta_collapse(ProofCase::E7, 7, &th, GF2).unwrap().is_one());
        // L with all θ_i = 0
        let th = vec![Fp::zero(); 3];
        assert!(theta_collapse(ProofCase::L, 3, &th, GF2).unwrap().is_zero());
        // arity mismatch
        assert!(matches!(
            theta_collapse(ProofCase::E7, 7, &[Fp::zero()], GF2),
            Err(PresError::CaseMismatch(1, 7))
        ));
    }

    #[test]
    fn a_prime_reduces_to_p_at_theta_zero() {
        // θ = 0 leaves the mesh relations plus redundant socle killers, so
        // the quotient must coincide with P(Δ)
        for (case, n) in
            [(ProofCase::AOdd, 3), (ProofCase::AOdd, 5), (ProofCase::DEven, 4), (ProofCase::L, 2)]
        {
            let th = vec![Fp::zero(); case.theta_len(n)];
            let ap = a_prime(case, n, &th, GF3).unwrap().build().unwrap();
            let t = case.dynkin(n).unwrap();
            let p = preprojective::<Fp>(t, GF3).build().unwrap();
            assert_eq!(ap.dim(), p.dim(), "{case:?} n={n}");
            assert_eq!(ap.basis_signature(), p.basis_signature());
        }
    }

    #[test]
    fn a_second_at_theta_zero_is_p() {
        for (case, n) in [(ProofCase::DEven, 4), (ProofCase::L, 3), (ProofCase::E7, 7)] {
            let az = a_second(case, n, &Fp::zero(), GF2).unwrap().build().unwrap();
            let t = case.dynkin(n).unwrap();
            let p = preprojective::<Fp>(t, GF2).build().unwrap();
            assert_eq!(az.dim(), p.dim(), "{case:?}");
        }
    }

    #[test]
    fn deformed_zero_equals_preprojective_structure() {
        // P^0(Δ) builds an algebra with identical basis and dimension to P(Δ)
        for (fam, n) in [(Family::D, 4), (Family::D, 5), (Family::L, 2), (Family::E, 6)] {
            let t = DynkinType::new(fam, n).unwrap();
            let f =
                if fam == Family::L { DeformParam::<Fp>::zero_x() } else { DeformParam::zero_xy() };
            let d = deformed(t, &f, GF2).unwrap().build().unwrap();
            let p = preprojective::<Fp>(t, GF2).build().unwrap();
            assert_eq!(d.dim(), p.dim(), "{t}");
            assert_eq!(d.basis_signature(), p.basis_signature(), "{t}");
        }
    }

    #[test]
    fn corner_of_p_is_r() {
        // e_Δ P(Δ) e_Δ has the dimensions of R(Δ)
        for (fam, n) in [(Family::A, 3), (Family::D, 4), (Family::D, 5), (Family::L, 2)] {
            let t = DynkinType::new(fam, n).unwrap();
            let p = preprojective::<Fp>(t, GF3).build().unwrap();
            let r = local_algebra::<Fp>(t, GF3).build().unwrap();
            let e = crate::quiver::exceptional_vertex(t);
            let corner: usize = (0..p.dim())
                .filter(|&i| p.basis_pair(i) == (e, e))
                .count();
            assert_eq!(corner, r.dim(), "{t}");
            // degreewise: corner degree d counts = R degree d/2 counts? No —
            // R generators x, y have path degree 2 in P, so compare total
            // dimension only here; degreewise matching is checked in the
            // acceptance suite via the grading map.
        }
    }
}
