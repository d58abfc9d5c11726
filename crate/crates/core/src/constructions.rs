//! Constructors for every dgla the kernel works with: cones of Lie algebras,
//! dual-cone modules, one- and two-dimensional central extensions of cones,
//! (ω,δ)-deformed semidirect products, differential deformations by a module
//! element, the tower built from a cubic invariant, and the sigma-model dgla.
//!
//! Every constructor validates its cocycle data eagerly and returns a
//! rejection instead of silently patching anything; the emitted dglas pass
//! the exhaustive validators.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::certificate::Certificate;
use crate::dgla::{reindex_map, Dgla, GDiffSpace, LieAlgebra, PairTable};
use crate::error::CoreError;
use crate::graded::{GradedMap, GradedSpace, Vector};
use crate::scalar::{sign, Scalar};

/// A bilinear form on 𝔤, doubling as a linear map 𝔤 → 𝔤* via
/// `α(x)(y) = α(x, y)`. No symmetry is implied by the type.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BilinearForm {
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl BilinearForm {
    pub fn from_entries(
        g: &LieAlgebra,
        entries: &[(&str, &str, Scalar)],
    ) -> Result<Self, CoreError> {
        let mut out = BilinearForm::default();
        for (x, y, c) in entries {
            let i = g.space.require(x, "bilinear form")?;
            let j = g.space.require(y, "bilinear form")?;
            out.add(i, j, c.clone());
        }
        Ok(out)
    }

    /// Symmetric form given by its upper triangle.
    pub fn symmetric(g: &LieAlgebra, entries: &[(&str, &str, Scalar)]) -> Result<Self, CoreError> {
        let mut out = BilinearForm::default();
        for (x, y, c) in entries {
            let i = g.space.require(x, "symmetric form")?;
            let j = g.space.require(y, "symmetric form")?;
            out.add(i, j, c.clone());
            if i != j {
                out.add(j, i, c.clone());
            }
        }
        Ok(out)
    }

    /// Skew form given by its upper triangle `γ(x, y)` entries.
    pub fn skew(g: &LieAlgebra, entries: &[(&str, &str, Scalar)]) -> Result<Self, CoreError> {
        let mut out = BilinearForm::default();
        for (x, y, c) in entries {
            let i = g.space.require(x, "skew form")?;
            let j = g.space.require(y, "skew form")?;
            if i == j {
                return Err(CoreError::Rejected(format!("skew form has diagonal entry at {x}")));
            }
            out.add(i, j, c.clone());
            out.add(j, i, -c.clone());
        }
        Ok(out)
    }

    pub fn add(&mut self, i: usize, j: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry((i, j)).or_insert_with(Scalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn eval(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval_vec(&self, x: &Vector, y: &Vector) -> Scalar {
        let mut out = Scalar::zero();
        for (i, c) in x.iter() {
            for (j, e) in y.iter() {
                out += &(&self.eval(i, j) * &(c * e));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        BilinearForm {
            entries: self.entries.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    pub fn symmetric_part(&self) -> Self {
        let mut out = BilinearForm::default();
        let half = Scalar::ratio(1, 2);
        for (&(i, j), c) in &self.entries {
            out.add(i, j, &half * c);
            out.add(j, i, &half * c);
        }
        out
    }

    pub fn skew_part(&self) -> Self {
        let mut out = BilinearForm::default();
        let half = Scalar::ratio(1, 2);
        for (&(i, j), c) in &self.entries {
            out.add(i, j, &half * c);
            out.add(j, i, -(&half * c));
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.skew_part().is_zero()
    }

    pub fn is_skew(&self) -> bool {
        self.symmetric_part().is_zero()
    }

    /// First failing triple of the Chevalley–Eilenberg closedness of a skew
    /// 2-form with trivial coefficients:
    /// `(dγ)(x,y,z) = −γ([x,y],z) + γ([x,z],y) − γ([y,z],x)`.
    pub fn closedness_witness(&self, g: &LieAlgebra) -> Option<String> {
        let n = g.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let mut defect = Scalar::zero();
                    defect -= &self.eval_vec(&g.bracket.value(i, j), &Vector::unit(k));
                    defect += &self.eval_vec(&g.bracket.value(i, k), &Vector::unit(j));
                    defect -= &self.eval_vec(&g.bracket.value(j, k), &Vector::unit(i));
                    if !defect.is_zero() {
                        return Some(format!(
                            "(dγ)({}, {}, {}) = {}",
                            g.space.label(i),
                            g.space.label(j),
                            g.space.label(k),
                            defect
                        ));
                    }
                }
            }
        }
        None
    }

    /// First failing triple of invariance `p([x,a],b) + p(a,[x,b]) = 0`.
    pub fn invariance_witness(&self, g: &LieAlgebra) -> Option<String> {
        let n = g.dim();
        for x in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let mut defect = self.eval_vec(&g.bracket.value(x, a), &Vector::unit(b));
                    defect += &self.eval_vec(&Vector::unit(a), &g.bracket.value(x, b));
                    if !defect.is_zero() {
                        return Some(format!(
                            "p([{x_l},{a_l}],{b_l}) + p({a_l},[{x_l},{b_l}]) = {defect}",
                            x_l = g.space.label(x),
                            a_l = g.space.label(a),
                            b_l = g.space.label(b),
                        ));
                    }
                }
            }
        }
        None
    }

    /// The ad*-valued 1-cocycle condition for `α: 𝔤 → 𝔤*`:
    /// `α(x,[y,z]) − α(y,[x,z]) − α([x,y],z) = 0`.
    pub fn coboundary_witness(&self, g: &LieAlgebra) -> Option<String> {
        let n = g.dim();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut defect = self.eval_vec(&Vector::unit(x), &g.bracket.value(y, z));
                    defect -= &self.eval_vec(&Vector::unit(y), &g.bracket.value(x, z));
                    defect -= &self.eval_vec(&g.bracket.value(x, y), &Vector::unit(z));
                    if !defect.is_zero() {
                        return Some(format!(
                            "(d𝔤α)({}, {})({}) = {}",
                            g.space.label(x),
                            g.space.label(y),
                            g.space.label(z),
                            defect
                        ));
                    }
                }
            }
        }
        None
    }
}

/// A symmetric trilinear form, stored on sorted index triples.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CubicForm {
    entries: BTreeMap<(usize, usize, usize), Scalar>,
}

impl CubicForm {
    pub fn set(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        let mut idx = [i, j, k];
        idx.sort_unstable();
        if c.is_zero() {
            self.entries.remove(&(idx[0], idx[1], idx[2]));
        } else {
            self.entries.insert((idx[0], idx[1], idx[2]), c);
        }
    }

    pub fn eval(&self, i: usize, j: usize, k: usize) -> Scalar {
        let mut idx = [i, j, k];
        idx.sort_unstable();
        self.entries.get(&(idx[0], idx[1], idx[2])).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval_first(&self, x: &Vector, j: usize, k: usize) -> Scalar {
        let mut out = Scalar::zero();
        for (i, c) in x.iter() {
            out += &(&self.eval(i, j, k) * c);
        }
        out
    }

    pub fn eval_vecs(&self, x: &Vector, y: &Vector, z: &Vector) -> Scalar {
        let mut out = Scalar::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                for (k, c) in z.iter() {
                    out += &(&self.eval(i, j, k) * &(&(a * b) * c));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// First failing tuple of
    /// `p([x,a],b,c) + p(a,[x,b],c) + p(a,b,[x,c]) = 0`.
    pub fn invariance_witness(&self, g: &LieAlgebra) -> Option<String> {
        let n = g.dim();
        for x in 0..n {
            for a in 0..n {
                for b in a..n {
                    for c in b..n {
                        let mut defect = self.eval_first(&g.bracket.value(x, a), b, c);
                        defect += &self.eval_first(&g.bracket.value(x, b), a, c);
                        defect += &self.eval_first(&g.bracket.value(x, c), a, b);
                        if !defect.is_zero() {
                            return Some(format!(
                                "x={}, ({}, {}, {}): defect {}",
                                g.space.label(x),
                                g.space.label(a),
                                g.space.label(b),
                                g.space.label(c),
                                defect
                            ));
                        }
                    }
                }
            }
        }
        None
    }
}

/// The cone C𝔤: generators L(x) in degree 0 and I(x) in degree −1 with
/// `[L,L] = L[,]`, `[L,I] = I[,]`, `[I,I] = 0` and `dI(x) = L(x)`.
#[derive(Debug, Clone)]
pub struct Cone {
    pub dgla: Dgla,
    pub g: LieAlgebra,
    /// Cone position of I(x_a) per 𝔤 basis index.
    pub i_pos: Vec<usize>,
    /// Cone position of L(x_a).
    pub l_pos: Vec<usize>,
}

impl Cone {
    /// Embeds a 𝔤 vector into the I-part (degree −1).
    pub fn i_embed(&self, v: &Vector) -> Vector {
        Vector::from_terms(v.iter().map(|(a, c)| (self.i_pos[a], c.clone())))
    }

    /// Embeds a 𝔤 vector into the L-part (degree 0).
    pub fn l_embed(&self, v: &Vector) -> Vector {
        Vector::from_terms(v.iter().map(|(a, c)| (self.l_pos[a], c.clone())))
    }

    /// The 𝔤 basis index of a cone position, with the generator kind.
    pub fn generator_of(&self, pos: usize) -> Option<(ConeGenerator, usize)> {
        if let Some(a) = self.i_pos.iter().position(|&p| p == pos) {
            return Some((ConeGenerator::I, a));
        }
        self.l_pos.iter().position(|&p| p == pos).map(|a| (ConeGenerator::L, a))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeGenerator {
    I,
    L,
}

pub fn cone(g: &LieAlgebra) -> Cone {
    let n = g.dim();
    let mut basis = Vec::with_capacity(2 * n);
    for a in 0..n {
        basis.push((format!("I({})", g.space.label(a)), -1));
        basis.push((format!("L({})", g.space.label(a)), 0));
    }
    let space = GradedSpace::new(basis).expect("cone labels are distinct");
    let i_pos: Vec<usize> =
        (0..n).map(|a| space.index_of(&format!("I({})", g.space.label(a))).unwrap()).collect();
    let l_pos: Vec<usize> =
        (0..n).map(|a| space.index_of(&format!("L({})", g.space.label(a))).unwrap()).collect();

    let embed = |v: &Vector, pos: &[usize]| -> Vector {
        Vector::from_terms(v.iter().map(|(a, c)| (pos[a], c.clone())))
    };

    let mut bracket = PairTable::new();
    for a in 0..n {
        for b in 0..n {
            let v = g.bracket.value(a, b);
            if v.is_zero() {
                continue;
            }
            bracket.set(l_pos[a], l_pos[b], embed(&v, &l_pos));
            bracket.set(l_pos[a], i_pos[b], embed(&v, &i_pos));
            // [I(x), L(y)] = I([x,y]) by graded antisymmetry.
            bracket.set(i_pos[a], l_pos[b], embed(&v, &i_pos));
        }
    }
    let d_cols: BTreeMap<usize, Vector> =
        (0..n).map(|a| (i_pos[a], Vector::unit(l_pos[a]))).collect();
    let differential = GradedMap::from_columns(space.clone(), space.clone(), 1, d_cols)
        .expect("dI(x) = L(x) has degree +1");
    Cone {
        dgla: Dgla::new(format!("C({})", g.name), space, bracket, differential),
        g: g.clone(),
        i_pos,
        l_pos,
    }
}

/// The dual cone C𝔤* as a 𝔤-differential space: elements ι(ξ) and ℓ(ξ) with
/// `L(x)·ℓ(ξ) = ℓ(ad*_x ξ)`, `I(x)·ℓ(ξ) = ι(ad*_x ξ)`, `I(x)·ι(ξ) = 0` and
/// `dι(ξ) = ℓ(ξ)`.
pub fn dual_cone_module(g: &LieAlgebra) -> GDiffSpace {
    let n = g.dim();
    let mut basis = Vec::with_capacity(2 * n);
    for a in 0..n {
        basis.push((format!("ι({}*)", g.space.label(a)), -1));
        basis.push((format!("ℓ({}*)", g.space.label(a)), 0));
    }
    let space = GradedSpace::new(basis).expect("dual cone labels are distinct");
    let iota: Vec<usize> =
        (0..n).map(|a| space.index_of(&format!("ι({}*)", g.space.label(a))).unwrap()).collect();
    let ell: Vec<usize> =
        (0..n).map(|a| space.index_of(&format!("ℓ({}*)", g.space.label(a))).unwrap()).collect();

    // (ad*_x x_b*)(x_c) = −x_b*([x, x_c]).
    let coadjoint = |x: usize, b: usize| -> Vector {
        let mut out = Vector::zero();
        for c in 0..n {
            let coeff = g.bracket.value(x, c).coeff(b);
            out.add_term(c, -coeff);
        }
        out
    };

    let mut l_ops = Vec::with_capacity(n);
    let mut i_ops = Vec::with_capacity(n);
    for x in 0..n {
        let mut l_cols: BTreeMap<usize, Vector> = BTreeMap::new();
        let mut i_cols: BTreeMap<usize, Vector> = BTreeMap::new();
        for b in 0..n {
            let ad = coadjoint(x, b);
            let to_ell = Vector::from_terms(ad.iter().map(|(c, v)| (ell[c], v.clone())));
            let to_iota = Vector::from_terms(ad.iter().map(|(c, v)| (iota[c], v.clone())));
            if !to_ell.is_zero() {
                l_cols.insert(ell[b], to_ell);
                i_cols.insert(ell[b], to_iota.clone());
            }
            if !to_iota.is_zero() {
                l_cols.insert(iota[b], to_iota);
            }
        }
        l_ops.push(
            GradedMap::from_columns(space.clone(), space.clone(), 0, l_cols)
                .expect("coadjoint action preserves degree"),
        );
        i_ops.push(
            GradedMap::from_columns(space.clone(), space.clone(), -1, i_cols)
                .expect("I drops degree by one"),
        );
    }
    let d_cols: BTreeMap<usize, Vector> =
        (0..n).map(|a| (iota[a], Vector::unit(ell[a]))).collect();
    let differential = GradedMap::from_columns(space.clone(), space.clone(), 1, d_cols)
        .expect("dι(ξ) = ℓ(ξ) has degree +1");
    GDiffSpace {
        name: format!("C({})*", g.name),
        g: g.clone(),
        space,
        differential,
        l_ops,
        i_ops,
    }
}

/// One-dimensional central extension data for the cone, classified by the
/// shift k of the added line.
#[derive(Debug, Clone)]
pub enum CocycleSpec {
    /// k = 0: `(L(x)+I(y), L(x')+I(y')) ↦ ρ(x, x')`, ρ a closed skew 2-form.
    Rho(BilinearForm),
    /// k = 1: `↦ λ(x)y' − λ(x')y` where γ(x,y) = λ(x)y must be skew and closed.
    Gamma(BilinearForm),
    /// k = 2: `↦ p(y, y')` with p symmetric invariant.
    P(BilinearForm),
}

/// A cone with one added central line.
#[derive(Debug, Clone)]
pub struct ConeExtension {
    pub dgla: Dgla,
    pub cone: Cone,
    pub k: i64,
    pub center_label: String,
}

impl ConeExtension {
    pub fn center_pos(&self) -> usize {
        self.dgla.space.index_of(&self.center_label).unwrap()
    }
}

/// Generic central extension of a dgla by a scalar line in degree −k, with a
/// scalar-valued 2-cocycle given on ordered basis pairs and `dc = 0`.
pub fn central_extension_dgla(
    base: &Dgla,
    name: &str,
    center_label: &str,
    k: i64,
    cocycle: &BTreeMap<(usize, usize), Scalar>,
) -> Result<Dgla, CoreError> {
    let mut basis: Vec<(String, i64)> =
        base.space.basis().iter().map(|(l, d)| (l.clone(), *d)).collect();
    basis.push((center_label.to_string(), -k));
    let space = GradedSpace::new(basis)?;
    let center = space.index_of(center_label).unwrap();
    let pos: Vec<usize> = (0..base.dim())
        .map(|i| space.index_of(base.space.label(i)).expect("base labels persist"))
        .collect();

    let mut bracket = PairTable::new();
    for ((i, j), v) in base.bracket.iter() {
        let lifted = Vector::from_terms(v.iter().map(|(t, c)| (pos[t], c.clone())));
        bracket.set(pos[i], pos[j], lifted);
    }
    for (&(i, j), c) in cocycle {
        let mut v = bracket.value(pos[i], pos[j]);
        v.add_term(center, c.clone());
        bracket.set(pos[i], pos[j], v);
    }
    let mut d_cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for (j, v) in base.differential.columns() {
        d_cols.insert(pos[j], Vector::from_terms(v.iter().map(|(t, c)| (pos[t], c.clone()))));
    }
    let differential = GradedMap::from_columns(space.clone(), space.clone(), 1, d_cols)
        .expect("lifting the differential preserves degrees");
    Ok(Dgla::new(name, space, bracket, differential))
}

/// Central extension of the cone C𝔤 by ℝ[k] for the three classified cocycle
/// kinds. Inadmissible data is rejected with a witness.
pub fn central_extension_cone(
    g: &LieAlgebra,
    spec: &CocycleSpec,
) -> Result<ConeExtension, CoreError> {
    let c = cone(g);
    let n = g.dim();
    match spec {
        CocycleSpec::Rho(rho) => {
            if !rho.is_skew() {
                return Err(CoreError::Rejected("ρ must be skew-symmetric".into()));
            }
            if let Some(w) = rho.closedness_witness(g) {
                return Err(CoreError::Rejected(format!("ρ is not a 2-cocycle: {w}")));
            }
            if !rho.is_zero() {
                // With dI = L and dc = 0, Leibniz on (L(x), I(y)) forces the
                // ρ-term to vanish: a nonzero ρ yields a graded Lie algebra
                // extension that is not a dgla extension.
                return Err(CoreError::Rejected(
                    "k=0: nonzero ρ gives a graded Lie algebra extension that is not a dgla \
                     (Leibniz fails on (L(x), I(y)) pairs)"
                        .into(),
                ));
            }
            let dgla = central_extension_dgla(
                &c.dgla,
                &format!("C_ρ({})", g.name),
                "c0",
                0,
                &BTreeMap::new(),
            )?;
            Ok(ConeExtension { dgla, cone: c, k: 0, center_label: "c0".into() })
        }
        CocycleSpec::Gamma(gamma) => {
            let symmetric = gamma.symmetric_part();
            if !symmetric.is_zero() {
                let ((i, j), v) = symmetric.entries.iter().next().unwrap();
                return Err(CoreError::Rejected(format!(
                    "k=1: (x,y) ↦ λ(x)y is not skew-symmetric, symmetric part has \
                     ({}, {}) = {}",
                    g.space.label(*i),
                    g.space.label(*j),
                    v
                )));
            }
            if let Some(w) = gamma.closedness_witness(g) {
                return Err(CoreError::Rejected(format!("k=1: λ is not an ad*-cocycle: {w}")));
            }
            let mut cocycle = BTreeMap::new();
            for a in 0..n {
                for b in 0..n {
                    let v = gamma.eval(a, b);
                    if !v.is_zero() {
                        cocycle.insert((c.l_pos[a], c.i_pos[b]), v.clone());
                        cocycle.insert((c.i_pos[b], c.l_pos[a]), -v);
                    }
                }
            }
            let dgla = central_extension_dgla(
                &c.dgla,
                &format!("C_γ({})", g.name),
                "c1",
                1,
                &cocycle,
            )?;
            Ok(ConeExtension { dgla, cone: c, k: 1, center_label: "c1".into() })
        }
        CocycleSpec::P(p) => {
            if !p.is_symmetric() {
                return Err(CoreError::Rejected("k=2: p must be symmetric".into()));
            }
            if let Some(w) = p.invariance_witness(g) {
                return Err(CoreError::Rejected(format!("k=2: p is not invariant: {w}")));
            }
            let mut cocycle = BTreeMap::new();
            for a in 0..n {
                for b in 0..n {
                    let v = p.eval(a, b);
                    if !v.is_zero() {
                        cocycle.insert((c.i_pos[a], c.i_pos[b]), v);
                    }
                }
            }
            let dgla = central_extension_dgla(
                &c.dgla,
                &format!("C_p({})", g.name),
                "c2",
                2,
                &cocycle,
            )?;
            Ok(ConeExtension { dgla, cone: c, k: 2, center_label: "c2".into() })
        }
    }
}

/// The symmetric/skew decomposition of a 𝔤*-valued 1-cochain α, with the two
/// conditions the paper relates: d𝔤α = 0 and invariance of the symmetric
/// part.
#[derive(Debug, Clone)]
pub struct AlphaDatum {
    pub alpha: BilinearForm,
    pub p: BilinearForm,
    pub omega: BilinearForm,
    pub alpha_closed: bool,
    pub p_invariant: bool,
}

pub fn decompose_alpha(g: &LieAlgebra, alpha: &BilinearForm) -> AlphaDatum {
    AlphaDatum {
        alpha: alpha.clone(),
        p: alpha.symmetric_part(),
        omega: alpha.skew_part(),
        alpha_closed: alpha.coboundary_witness(g).is_none(),
        p_invariant: alpha.symmetric_part().invariance_witness(g).is_none(),
    }
}

/// The two-dimensional central extension C_α𝔤 by ℝ[1] ⊕ ℝ[2]: cocycle
/// `(L(x)+I(y), L(x')+I(y')) ↦ (α(x)y' − α(x')y, α(y)y' + α(y')y)` and the
/// differential taking c2 to c1.
#[derive(Debug, Clone)]
pub struct AlphaExtension {
    pub dgla: Dgla,
    pub cone: Cone,
    pub c1: usize,
    pub c2: usize,
    pub datum: AlphaDatum,
}

pub fn cone_alpha_extension(
    g: &LieAlgebra,
    alpha: &BilinearForm,
) -> Result<AlphaExtension, CoreError> {
    if let Some(w) = alpha.coboundary_witness(g) {
        return Err(CoreError::Rejected(format!("α is not a 1-cocycle for ad*: {w}")));
    }
    let c = cone(g);
    let n = g.dim();
    let mut basis: Vec<(String, i64)> =
        c.dgla.space.basis().iter().map(|(l, d)| (l.clone(), *d)).collect();
    basis.push(("c1".to_string(), -1));
    basis.push(("c2".to_string(), -2));
    let space = GradedSpace::new(basis)?;
    let c1 = space.index_of("c1").unwrap();
    let c2 = space.index_of("c2").unwrap();
    let pos: Vec<usize> =
        (0..c.dgla.dim()).map(|i| space.index_of(c.dgla.space.label(i)).unwrap()).collect();

    let mut bracket = PairTable::new();
    for ((i, j), v) in c.dgla.bracket.iter() {
        bracket.set(pos[i], pos[j], Vector::from_terms(v.iter().map(|(t, x)| (pos[t], x.clone()))));
    }
    for a in 0..n {
        for b in 0..n {
            // c1 sector on (L(x_a), I(y_b)) pairs.
            let v = alpha.eval(a, b);
            if !v.is_zero() {
                let mut lb = bracket.value(pos[c.l_pos[a]], pos[c.i_pos[b]]);
                lb.add_term(c1, v.clone());
                bracket.set(pos[c.l_pos[a]], pos[c.i_pos[b]], lb);
                let mut il = bracket.value(pos[c.i_pos[b]], pos[c.l_pos[a]]);
                il.add_term(c1, -v);
                bracket.set(pos[c.i_pos[b]], pos[c.l_pos[a]], il);
            }
            // c2 sector on (I(y_a), I(y_b)): α(y)y' + α(y')y.
            let w = &alpha.eval(a, b) + &alpha.eval(b, a);
            if !w.is_zero() {
                let mut ii = bracket.value(pos[c.i_pos[a]], pos[c.i_pos[b]]);
                ii.add_term(c2, w);
                bracket.set(pos[c.i_pos[a]], pos[c.i_pos[b]], ii);
            }
        }
    }
    let mut d_cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for (j, v) in c.dgla.differential.columns() {
        d_cols.insert(pos[j], Vector::from_terms(v.iter().map(|(t, x)| (pos[t], x.clone()))));
    }
    d_cols.insert(c2, Vector::unit(c1));
    let differential = GradedMap::from_columns(space.clone(), space.clone(), 1, d_cols)
        .expect("dc2 = c1 has degree +1");
    let dgla = Dgla::new(format!("C_α({})", g.name), space, bracket, differential);
    Ok(AlphaExtension { dgla, cone: c, c1, c2, datum: decompose_alpha(g, alpha) })
}

/// The (ω, δ) data of an abelian extension of C𝔤 by a 𝔤-differential space:
/// ω deforms the bracket, δ deforms the differential.
#[derive(Debug, Clone)]
pub struct ExtensionDatum {
    /// Cone basis pair → module vector; must be stored graded-skew.
    pub omega: PairTable,
    /// Degree +1 map from the cone space to the module space.
    pub delta: GradedMap,
}

impl ExtensionDatum {
    pub fn zero(c: &Cone, v: &GDiffSpace) -> Self {
        ExtensionDatum {
            omega: PairTable::new(),
            delta: GradedMap::zero(c.dgla.space.clone(), v.space.clone(), 1),
        }
    }
}

/// Operator of the cone basis element at `pos` on the module.
fn cone_action<'a>(c: &Cone, v: &'a GDiffSpace, pos: usize) -> &'a GradedMap {
    match c.generator_of(pos).expect("cone position") {
        (ConeGenerator::I, a) => &v.i_ops[a],
        (ConeGenerator::L, a) => &v.l_ops[a],
    }
}

fn cone_action_vec(c: &Cone, v: &GDiffSpace, x: &Vector, w: &Vector) -> Vector {
    let mut out = Vector::zero();
    for (pos, coeff) in x.iter() {
        out.add_scaled(&cone_action(c, v, pos).apply(w), coeff);
    }
    out
}

fn omega_left(omega: &PairTable, x: &Vector, b: usize) -> Vector {
    let mut out = Vector::zero();
    for (pos, coeff) in x.iter() {
        if let Some(val) = omega.get(pos, b) {
            out.add_scaled(val, coeff);
        }
    }
    out
}

fn omega_right(omega: &PairTable, a: usize, y: &Vector) -> Vector {
    let mut out = Vector::zero();
    for (pos, coeff) in y.iter() {
        if let Some(val) = omega.get(a, pos) {
            out.add_scaled(val, coeff);
        }
    }
    out
}

/// The closedness triple for (ω, δ): each equation is checked exhaustively
/// and reported separately, so a rejection names the failing equation.
pub fn closedness_certificate(c: &Cone, v: &GDiffSpace, datum: &ExtensionDatum) -> Certificate {
    let mut cert = Certificate::new(format!("(ω,δ) data on C({})⋉{}", c.g.name, v.name));
    let space = &c.dgla.space;
    let n = space.dim();
    let deg = |p: usize| space.degree(p);

    // d_C𝔤 ω = 0: the ω-part of graded Jacobi for the deformed bracket.
    let mut omega_failures = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for k in 0..n {
                let mut defect = cone_action_vec(c, v, &Vector::unit(a), &datum.omega.value(b, k));
                defect.add_scaled(&omega_right(&datum.omega, a, &c.dgla.bracket.value(b, k)), &Scalar::one());
                let s_ck = sign((deg(a) + deg(b)) * deg(k));
                defect.add_scaled(
                    &cone_action_vec(c, v, &Vector::unit(k), &datum.omega.value(a, b)),
                    &s_ck,
                );
                defect.add_scaled(&omega_left(&datum.omega, &c.dgla.bracket.value(a, b), k), &-Scalar::one());
                let s_ab = -sign(deg(a) * deg(b));
                defect.add_scaled(
                    &cone_action_vec(c, v, &Vector::unit(b), &datum.omega.value(a, k)),
                    &s_ab,
                );
                defect.add_scaled(&omega_right(&datum.omega, b, &c.dgla.bracket.value(a, k)), &s_ab);
                if !defect.is_zero() {
                    omega_failures.push(format!(
                        "({}, {}, {})",
                        space.label(a),
                        space.label(b),
                        space.label(k)
                    ));
                }
            }
        }
    }
    cert.record_law("d_Cg(omega) = 0", omega_failures);

    // d_C𝔤 δ + d̄ω = 0: Leibniz for the deformed differential on cone pairs.
    let mut mixed_failures = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut defect = datum.delta.apply(&c.dgla.bracket.value(a, b));
            defect.add_scaled(&v.differential.apply(&datum.omega.value(a, b)), &Scalar::one());
            let s_b = sign((deg(a) + 1) * deg(b));
            defect.add_scaled(
                &cone_action_vec(c, v, &Vector::unit(b), &datum.delta.column(a)),
                &s_b,
            );
            defect.add_scaled(&omega_left(&datum.omega, &c.dgla.differential.column(a), b), &-Scalar::one());
            let s_a = -sign(deg(a));
            defect.add_scaled(
                &cone_action_vec(c, v, &Vector::unit(a), &datum.delta.column(b)),
                &s_a,
            );
            defect.add_scaled(&omega_right(&datum.omega, a, &c.dgla.differential.column(b)), &s_a);
            if !defect.is_zero() {
                mixed_failures.push(format!("({}, {})", space.label(a), space.label(b)));
            }
        }
    }
    cert.record_law("d_Cg(delta) + dbar(omega) = 0", mixed_failures);

    // d̄δ = 0: the deformed differential squares to zero.
    let mut delta_failures = Vec::new();
    for a in 0..n {
        let mut defect = datum.delta.apply(&c.dgla.differential.column(a));
        defect.add_scaled(&v.differential.apply(&datum.delta.column(a)), &Scalar::one());
        if !defect.is_zero() {
            delta_failures.push(space.label(a).to_string());
        }
    }
    cert.record_law("dbar(delta) = 0", delta_failures);
    cert
}

/// A deformed semidirect product (C𝔤 ⋉_ω V)_(δ) with its summand layout.
#[derive(Debug, Clone)]
pub struct SemidirectDgla {
    pub dgla: Dgla,
    pub cone: Cone,
    pub module: GDiffSpace,
    pub datum: ExtensionDatum,
    /// Total-space position of each cone basis element.
    pub cone_to_total: Vec<usize>,
    /// Total-space position of each module basis element.
    pub module_to_total: Vec<usize>,
}

impl SemidirectDgla {
    pub fn module_labels(&self) -> Vec<String> {
        self.module.space.basis().iter().map(|(l, _)| l.clone()).collect()
    }

    pub fn module_embed(&self, w: &Vector) -> Vector {
        Vector::from_terms(w.iter().map(|(m, c)| (self.module_to_total[m], c.clone())))
    }

    pub fn cone_embed(&self, x: &Vector) -> Vector {
        Vector::from_terms(x.iter().map(|(p, c)| (self.cone_to_total[p], c.clone())))
    }
}

/// Builds (C𝔤 ⋉_ω V)_(δ): bracket
/// `[(a,v),(b,w)] = ([a,b], a·w − (−1)^{|a||b|} b·v + ω(a,b))` and
/// differential `d̃(a,v) = (da, δa + dv)`. The closedness triple is validated
/// first; a failure rejects the construction naming the failing equation.
pub fn semidirect(
    g: &LieAlgebra,
    v: &GDiffSpace,
    datum: ExtensionDatum,
) -> Result<SemidirectDgla, CoreError> {
    if v.g.space.basis() != g.space.basis() || !(v.g.bracket == g.bracket) {
        return Err(CoreError::Rejected(format!(
            "module {} is not an action of {}",
            v.name, g.name
        )));
    }
    let c = cone(g);
    closedness_certificate(&c, v, &datum).into_result()?;

    let mut basis: Vec<(String, i64)> =
        c.dgla.space.basis().iter().map(|(l, d)| (l.clone(), *d)).collect();
    basis.extend(v.space.basis().iter().map(|(l, d)| (l.clone(), *d)));
    let space = GradedSpace::new(basis)?;
    let cone_to_total: Vec<usize> =
        (0..c.dgla.dim()).map(|i| space.index_of(c.dgla.space.label(i)).unwrap()).collect();
    let module_to_total: Vec<usize> =
        (0..v.space.dim()).map(|m| space.index_of(v.space.label(m)).unwrap()).collect();

    let lift_cone = |x: &Vector| -> Vector {
        Vector::from_terms(x.iter().map(|(p, cf)| (cone_to_total[p], cf.clone())))
    };
    let lift_module = |w: &Vector| -> Vector {
        Vector::from_terms(w.iter().map(|(m, cf)| (module_to_total[m], cf.clone())))
    };

    let mut bracket = PairTable::new();
    for a in 0..c.dgla.dim() {
        for b in 0..c.dgla.dim() {
            let mut val = lift_cone(&c.dgla.bracket.value(a, b));
            val.add_scaled(&lift_module(&datum.omega.value(a, b)), &Scalar::one());
            bracket.set(cone_to_total[a], cone_to_total[b], val);
        }
        let op = cone_action(&c, v, a);
        for m in 0..v.space.dim() {
            let acted = lift_module(&op.apply(&Vector::unit(m)));
            if acted.is_zero() {
                continue;
            }
            bracket.set(cone_to_total[a], module_to_total[m], acted.clone());
            let s = -sign(v.space.degree(m) * c.dgla.space.degree(a));
            bracket.set(module_to_total[m], cone_to_total[a], acted.scaled(&s));
        }
    }

    let mut d_cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for a in 0..c.dgla.dim() {
        let mut col = lift_cone(&c.dgla.differential.column(a));
        col.add_scaled(&lift_module(&datum.delta.column(a)), &Scalar::one());
        if !col.is_zero() {
            d_cols.insert(cone_to_total[a], col);
        }
    }
    for m in 0..v.space.dim() {
        let col = lift_module(&v.differential.column(m));
        if !col.is_zero() {
            d_cols.insert(module_to_total[m], col);
        }
    }
    let differential = GradedMap::from_columns(space.clone(), space.clone(), 1, d_cols)
        .expect("deformed differential has degree +1");

    let name = if datum.omega.is_empty() && datum.delta.is_zero() {
        format!("C({})⋉{}", g.name, v.name)
    } else {
        format!("(C({})⋉{})(ω,δ)", g.name, v.name)
    };
    Ok(SemidirectDgla {
        dgla: Dgla::new(name, space, bracket, differential),
        cone: c,
        module: v.clone(),
        datum,
        cone_to_total,
        module_to_total,
    })
}

/// Deforms the differential of C𝔤 ⋉ V by an element e ∈ V¹ with basic de:
/// `d̃I(x) = L(x) − I(x)e`, `d̃L(x) = L(x)e`. Rejects non-basic de naming the
/// failing generator.
pub fn deform_by_e(
    g: &LieAlgebra,
    v: &GDiffSpace,
    e: &Vector,
) -> Result<SemidirectDgla, CoreError> {
    match e.homogeneous_degree(&v.space)? {
        None => {}
        Some(1) => {}
        Some(d) => {
            return Err(CoreError::DegreeMismatch(format!(
                "deformation element must have degree 1, got {d}"
            )))
        }
    }
    let de = v.differential.apply(e);
    for a in 0..g.dim() {
        if !v.i_ops[a].apply(&de).is_zero() {
            return Err(CoreError::Rejected(format!(
                "de is not basic: I({})·de ≠ 0",
                g.space.label(a)
            )));
        }
        if !v.l_ops[a].apply(&de).is_zero() {
            return Err(CoreError::Rejected(format!(
                "de is not basic: L({})·de ≠ 0",
                g.space.label(a)
            )));
        }
    }
    let c = cone(g);
    let mut delta_cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for a in 0..g.dim() {
        let i_col = v.i_ops[a].apply(e).negated();
        if !i_col.is_zero() {
            delta_cols.insert(c.i_pos[a], i_col);
        }
        let l_col = v.l_ops[a].apply(e);
        if !l_col.is_zero() {
            delta_cols.insert(c.l_pos[a], l_col);
        }
    }
    let delta = GradedMap::from_columns(c.dgla.space.clone(), v.space.clone(), 1, delta_cols)
        .map_err(|_| {
            CoreError::DegreeMismatch("deformation element must be homogeneous of degree 1".into())
        })?;
    semidirect(g, v, ExtensionDatum { omega: PairTable::new(), delta })
}

/// B = C𝔤 ⋉_ω C𝔤*[2] for the cocycle `ω(I(x), I(y)) = ℓ(p(x, y, ·))`, and its
/// central extension B_FMS by ℝ[4] with cocycle `(I(x), ι(ξ)) ↦ ξ(x)`.
#[derive(Debug)]
pub struct FmsTower {
    pub b: SemidirectDgla,
    pub b_fms: Dgla,
    pub c4_label: String,
}

pub fn fms_tower(g: &LieAlgebra, p3: &CubicForm) -> Result<FmsTower, CoreError> {
    if let Some(w) = p3.invariance_witness(g) {
        return Err(CoreError::Rejected(format!("p₃ is not invariant: {w}")));
    }
    let dual = dual_cone_module(g).shifted(2);
    let c = cone(g);
    let n = g.dim();
    let ell_pos: Vec<usize> = (0..n)
        .map(|b| dual.space.index_of(&format!("ℓ({}*)", g.space.label(b))).unwrap())
        .collect();
    let iota_pos: Vec<usize> = (0..n)
        .map(|b| dual.space.index_of(&format!("ι({}*)", g.space.label(b))).unwrap())
        .collect();
    let mut omega = PairTable::new();
    for a in 0..n {
        for b in 0..n {
            let mut val = Vector::zero();
            for k in 0..n {
                val.add_term(ell_pos[k], p3.eval(a, b, k));
            }
            omega.set(c.i_pos[a], c.i_pos[b], val);
        }
    }
    let delta = GradedMap::zero(c.dgla.space.clone(), dual.space.clone(), 1);
    let b = semidirect(g, &dual, ExtensionDatum { omega, delta })?;

    let mut tau = BTreeMap::new();
    for a in 0..n {
        let i_total = b.cone_to_total[c.i_pos[a]];
        let iota_total = b.module_to_total[iota_pos[a]];
        tau.insert((i_total, iota_total), Scalar::one());
        tau.insert((iota_total, i_total), Scalar::one());
    }
    let b_fms = central_extension_dgla(&b.dgla, &format!("B_FMS({})", g.name), "c4", 4, &tau)?;
    Ok(FmsTower { b, b_fms, c4_label: "c4".into() })
}

/// The sigma-model dgla (C𝔤 ⋉ Ω(M)[k+1])_(H) for a closed H of form degree
/// k+2 in an Ω(M) model carrying a 𝔤 action.
pub fn sigma_dgla(
    action: &GDiffSpace,
    h: &Vector,
    k: i64,
) -> Result<SemidirectDgla, CoreError> {
    match h.homogeneous_degree(&action.space)? {
        Some(d) if d == k + 2 => {}
        None => {}
        Some(d) => {
            return Err(CoreError::DegreeMismatch(format!(
                "H has degree {d}, expected k+2 = {}",
                k + 2
            )))
        }
    }
    if !action.differential.apply(h).is_zero() {
        return Err(CoreError::Rejected("H is not closed: dH ≠ 0".into()));
    }
    let shifted = action.shifted(k + 1);
    let mut h_shifted = Vector::zero();
    for (i, cf) in h.iter() {
        let ni = shifted.space.index_of(action.space.label(i)).expect("labels persist");
        h_shifted.add_term(ni, cf.clone());
    }
    deform_by_e(&action.g, &shifted, &h_shifted)
}

/// Re-express a vector of one space in another space with identical labels.
pub fn transport_by_label(
    v: &Vector,
    from: &GradedSpace,
    to: &GradedSpace,
) -> Result<Vector, CoreError> {
    let mut out = Vector::zero();
    for (i, c) in v.iter() {
        out.add_term(to.require(from.label(i), "transport")?, c.clone());
    }
    Ok(out)
}

/// Inclusion/projection pair for the short exact sequence
/// `0 → ℝ[2] → C_p𝔤 → C𝔤 → 0`.
pub fn cp_sequence(
    ext: &ConeExtension,
) -> Result<(Dgla, crate::dgla::DglaMorphism, crate::dgla::DglaMorphism), CoreError> {
    let (line_space, line_d) = crate::dgla::line_complex(&ext.center_label, ext.k);
    let line = Dgla::new(format!("R[{}]", ext.k), line_space.clone(), PairTable::new(), line_d);
    let incl = GradedMap::from_columns(
        line_space,
        ext.dgla.space.clone(),
        0,
        BTreeMap::from([(0usize, Vector::unit(ext.center_pos()))]),
    )?;
    let mut proj_cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for i in 0..ext.dgla.dim() {
        let label = ext.dgla.space.label(i);
        if let Some(t) = ext.cone.dgla.space.index_of(label) {
            proj_cols.insert(i, Vector::unit(t));
        }
    }
    let proj =
        GradedMap::from_columns(ext.dgla.space.clone(), ext.cone.dgla.space.clone(), 0, proj_cols)?;
    Ok((
        line,
        crate::dgla::DglaMorphism { map: incl },
        crate::dgla::DglaMorphism { map: proj },
    ))
}

pub use crate::dgla::line_complex;

/// Shift of a bare complex: `(V[k])^n = V^{n+k}` with the same differential
/// entries.
pub fn shift_complex(
    space: &Arc<GradedSpace>,
    d: &GradedMap,
    k: i64,
) -> (Arc<GradedSpace>, GradedMap) {
    let shifted = space.shifted(k);
    (shifted.clone(), reindex_map(d, shifted.clone(), shifted))
}
