//! Chevalley–Eilenberg machinery, extraction of characteristic 2-cocycles
//! from computed current-algebra extensions, closed-form cocycle evaluators,
//! and comparison of cocycles (exact or up to coboundary).
//!
//! All cocycle values are normalized through the deterministic subquotient
//! representative maps, so "equal mod exact" is decided by coefficient
//! comparison.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::certificate::Certificate;
use crate::constructions::{BilinearForm, Cone, ConeGenerator, CubicForm, SemidirectDgla};
use crate::error::CoreError;
use crate::functors::{CurrentAlgebra, FunctorKind};
use crate::graded::{split_tensor_label, GradedMap, GradedSpace, Vector};
use crate::dgla::{LieAlgebra, PairTable};
use crate::linalg::{self, rref, SparseMatrix, Subquotient};
use crate::scalar::Scalar;

/// A module over an ordinary Lie algebra: one degree-0 operator per basis
/// element of the algebra.
#[derive(Debug, Clone)]
pub struct ModuleAction {
    pub name: String,
    pub space: Arc<GradedSpace>,
    pub ops: Vec<GradedMap>,
}

impl ModuleAction {
    pub fn trivial(name: &str, g: &LieAlgebra) -> Self {
        let space = GradedSpace::ungraded(&["1"]);
        let ops =
            (0..g.dim()).map(|_| GradedMap::zero(space.clone(), space.clone(), 0)).collect();
        ModuleAction { name: name.to_string(), space, ops }
    }

    /// The coadjoint module 𝔤* with `(ad*_x ξ)(y) = −ξ([x, y])`.
    pub fn coadjoint(g: &LieAlgebra) -> Self {
        let n = g.dim();
        let space = GradedSpace::new(
            (0..n).map(|b| (format!("{}*", g.space.label(b)), 0)).collect(),
        )
        .expect("dual labels are distinct");
        let dual: Vec<usize> = (0..n)
            .map(|b| space.index_of(&format!("{}*", g.space.label(b))).unwrap())
            .collect();
        let mut ops = Vec::with_capacity(n);
        for a in 0..n {
            let mut cols: BTreeMap<usize, Vector> = BTreeMap::new();
            for b in 0..n {
                let mut col = Vector::zero();
                for c in 0..n {
                    col.add_term(dual[c], -g.bracket.value(a, c).coeff(b));
                }
                if !col.is_zero() {
                    cols.insert(dual[b], col);
                }
            }
            ops.push(
                GradedMap::from_columns(space.clone(), space.clone(), 0, cols)
                    .expect("coadjoint action is degree 0"),
            );
        }
        ModuleAction { name: format!("{}*", g.name), space, ops }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn act(&self, x: &Vector, w: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (a, c) in x.iter() {
            out.add_scaled(&self.ops[a].apply(w), c);
        }
        out
    }

    pub fn validate(&self, g: &LieAlgebra) -> Certificate {
        let mut cert = Certificate::new(format!("module {} over {}", self.name, g.name));
        let mut failures = Vec::new();
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                let lhs = self.ops[a].commutator(&self.ops[b]);
                let rhs = Self::op_for(&self.ops, &g.bracket.value(a, b), &self.space);
                if lhs != rhs {
                    failures.push(format!("({}, {})", g.space.label(a), g.space.label(b)));
                }
            }
        }
        cert.record_law("ρ[x,y] = [ρx, ρy]", failures);
        cert
    }

    fn op_for(ops: &[GradedMap], x: &Vector, space: &Arc<GradedSpace>) -> GradedMap {
        let mut out = GradedMap::zero(space.clone(), space.clone(), 0);
        for (a, c) in x.iter() {
            out = out.add(&ops[a].scaled(c));
        }
        out
    }
}

/// Basis of strictly increasing q-tuples in lex order.
fn tuples(n: usize, q: usize) -> Vec<Vec<usize>> {
    if q == 0 {
        return vec![vec![]];
    }
    if q > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..q).collect();
    loop {
        out.push(idx.clone());
        let mut i = q;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - q {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..q {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The Chevalley–Eilenberg complex of 𝔤 with coefficients in a module,
/// materialized up to a chosen top degree.
pub struct CeComplex {
    pub g: LieAlgebra,
    pub module: ModuleAction,
    pub top: usize,
    /// Tuple bases per cochain degree 0..=top.
    pub bases: Vec<Vec<Vec<usize>>>,
}

/// A q-cochain stored on sorted tuples, valued in module coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeCochain {
    pub degree: usize,
    pub values: BTreeMap<Vec<usize>, Vector>,
}

impl CeCochain {
    /// Antisymmetric evaluation on an arbitrary index list.
    pub fn eval(&self, indices: &[usize]) -> Vector {
        let mut sorted: Vec<usize> = indices.to_vec();
        // Bubble sort, tracking the permutation sign; repeated indices kill
        // the value.
        let mut sign_flip = false;
        for i in 0..sorted.len() {
            for j in (i + 1..sorted.len()).rev() {
                if sorted[j] < sorted[j - 1] {
                    sorted.swap(j, j - 1);
                    sign_flip = !sign_flip;
                }
            }
        }
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Vector::zero();
            }
        }
        let v = self.values.get(&sorted).cloned().unwrap_or_default();
        if sign_flip {
            v.negated()
        } else {
            v
        }
    }
}

impl CeComplex {
    pub fn new(g: &LieAlgebra, module: &ModuleAction, top: usize) -> Self {
        let bases = (0..=top).map(|q| tuples(g.dim(), q)).collect();
        CeComplex { g: g.clone(), module: module.clone(), top, bases }
    }

    pub fn cochain_dim(&self, q: usize) -> usize {
        self.bases[q].len() * self.module.dim()
    }

    fn coord(&self, _q: usize, tuple_idx: usize, m: usize) -> usize {
        tuple_idx * self.module.dim() + m
    }

    fn cochain_from_coords(&self, q: usize, coords: &Vector) -> CeCochain {
        let m = self.module.dim();
        let mut values: BTreeMap<Vec<usize>, Vector> = BTreeMap::new();
        for (c, x) in coords.iter() {
            let tuple = self.bases[q][c / m].clone();
            values.entry(tuple).or_default().add_term(c % m, x.clone());
        }
        CeCochain { degree: q, values }
    }

    /// The standard CE differential:
    /// `(dσ)(x₀..x_q) = Σᵢ (−1)ⁱ xᵢ·σ(..x̂ᵢ..) + Σ_{i<j} (−1)^{i+j} σ([xᵢ,xⱼ], ..x̂ᵢ..x̂ⱼ..)`.
    pub fn d_cochain(&self, sigma: &CeCochain) -> CeCochain {
        let q = sigma.degree;
        let mut values: BTreeMap<Vec<usize>, Vector> = BTreeMap::new();
        for tuple in &self.bases[q + 1] {
            let mut out = Vector::zero();
            for i in 0..tuple.len() {
                let mut rest = tuple.clone();
                let xi = rest.remove(i);
                let term = self.module.act(&Vector::unit(xi), &sigma.eval(&rest));
                out.add_scaled(&term, &crate::scalar::sign(i as i64));
            }
            for i in 0..tuple.len() {
                for j in (i + 1)..tuple.len() {
                    let mut rest = tuple.clone();
                    rest.remove(j);
                    rest.remove(i);
                    let bracket = self.g.bracket.value(tuple[i], tuple[j]);
                    let mut term = Vector::zero();
                    for (k, c) in bracket.iter() {
                        let mut args = Vec::with_capacity(q + 1);
                        args.push(k);
                        args.extend_from_slice(&rest);
                        term.add_scaled(&sigma.eval(&args), c);
                    }
                    out.add_scaled(&term, &crate::scalar::sign((i + j) as i64));
                }
            }
            if !out.is_zero() {
                values.insert(tuple.clone(), out);
            }
        }
        CeCochain { degree: q + 1, values }
    }

    /// The differential C^q → C^{q+1} as a map of coordinate spaces.
    pub fn d_matrix(&self, q: usize) -> GradedMap {
        let source = coordinate_space(self.cochain_dim(q));
        let target = coordinate_space(self.cochain_dim(q + 1));
        let m = self.module.dim();
        let mut cols: BTreeMap<usize, Vector> = BTreeMap::new();
        for (t_idx, tuple) in self.bases[q].iter().enumerate() {
            for mu in 0..m {
                let basis_cochain = CeCochain {
                    degree: q,
                    values: BTreeMap::from([(tuple.clone(), Vector::unit(mu))]),
                };
                let image = self.d_cochain(&basis_cochain);
                let mut col = Vector::zero();
                for (s_tuple, val) in &image.values {
                    let s_idx =
                        self.bases[q + 1].iter().position(|t| t == s_tuple).expect("tuple basis");
                    for (nu, c) in val.iter() {
                        col.add_term(self.coord(q + 1, s_idx, nu), c.clone());
                    }
                }
                if !col.is_zero() {
                    cols.insert(self.coord(q, t_idx, mu), col);
                }
            }
        }
        GradedMap::from_columns(source, target, 0, cols).expect("coordinate spaces are ungraded")
    }
}

fn coordinate_space(dim: usize) -> Arc<GradedSpace> {
    GradedSpace::new((0..dim).map(|k| (format!("e{k}"), 0)).collect()).expect("coordinate labels")
}

/// Lie algebra cohomology H^q(𝔤, module) for q ≤ 3, with deterministic
/// cochain representatives.
pub struct CeCohomologyReport {
    pub degree: usize,
    pub dimension: usize,
    pub representatives: Vec<CeCochain>,
}

pub fn ce_cohomology(
    g: &LieAlgebra,
    module: &ModuleAction,
    q: usize,
) -> Result<CeCohomologyReport, CoreError> {
    if q > 3 {
        return Err(CoreError::Rejected("CE cohomology supported for q ≤ 3".into()));
    }
    module.validate(g).into_result()?;
    let complex = CeComplex::new(g, module, q + 1);
    let d_q = complex.d_matrix(q);
    let cycles: Vec<Vector> = linalg::kernel(&d_q).representatives.clone();
    let boundaries: Vec<Vector> = if q == 0 {
        Vec::new()
    } else {
        let complex_below = CeComplex::new(g, module, q);
        let d_prev = complex_below.d_matrix(q - 1);
        (0..d_prev.source.dim()).map(|j| d_prev.column(j)).filter(|v| !v.is_zero()).collect()
    };
    let ambient = coordinate_space(complex.cochain_dim(q));
    let sub = Subquotient::new(ambient, &cycles, &boundaries)?;
    let representatives =
        sub.representatives.iter().map(|v| complex.cochain_from_coords(q, v)).collect();
    Ok(CeCohomologyReport { degree: q, dimension: sub.dim(), representatives })
}

/// Deterministic basis of invariant symmetric bilinear forms (S²𝔤*)^𝔤, as
/// the kernel of the invariance operator.
pub fn invariant_bilinear_forms(g: &LieAlgebra) -> Vec<BilinearForm> {
    let n = g.dim();
    let mut coords = Vec::new();
    for i in 0..n {
        for j in i..n {
            coords.push((i, j));
        }
    }
    let coord_of = |i: usize, j: usize| -> usize {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        coords.iter().position(|&c| c == (a, b)).unwrap()
    };
    // Rows: the coefficient vectors of p([x,a],b) + p(a,[x,b]) per (x, a≤b).
    let mut rows = Vec::new();
    for x in 0..n {
        for a in 0..n {
            for b in a..n {
                let mut row = Vector::zero();
                for (k, c) in g.bracket.value(x, a).iter() {
                    row.add_term(coord_of(k, b), c.clone());
                }
                for (k, c) in g.bracket.value(x, b).iter() {
                    row.add_term(coord_of(a, k), c.clone());
                }
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
    }
    let source = coordinate_space(coords.len());
    let mut cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter() {
            cols.entry(c).or_default().add_term(r, v.clone());
        }
    }
    let target = coordinate_space(rows.len().max(1));
    let op = GradedMap::from_columns(source, target, 0, cols).expect("ungraded operator");
    linalg::kernel(&op)
        .representatives
        .iter()
        .map(|v| {
            let mut form = BilinearForm::default();
            for (c, x) in v.iter() {
                let (i, j) = coords[c];
                form.add(i, j, x.clone());
                if i != j {
                    form.add(j, i, x.clone());
                }
            }
            form
        })
        .collect()
}

/// Deterministic basis of invariant symmetric cubic forms (S³𝔤*)^𝔤.
pub fn invariant_cubic_forms(g: &LieAlgebra) -> Vec<CubicForm> {
    let n = g.dim();
    let mut coords = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                coords.push((i, j, k));
            }
        }
    }
    let coord_of = |i: usize, j: usize, k: usize| -> usize {
        let mut t = [i, j, k];
        t.sort_unstable();
        coords.iter().position(|&c| c == (t[0], t[1], t[2])).unwrap()
    };
    let mut rows = Vec::new();
    for x in 0..n {
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let mut row = Vector::zero();
                    for (k, v) in g.bracket.value(x, a).iter() {
                        row.add_term(coord_of(k, b, c), v.clone());
                    }
                    for (k, v) in g.bracket.value(x, b).iter() {
                        row.add_term(coord_of(a, k, c), v.clone());
                    }
                    for (k, v) in g.bracket.value(x, c).iter() {
                        row.add_term(coord_of(a, b, k), v.clone());
                    }
                    if !row.is_zero() {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let source = coordinate_space(coords.len());
    let mut cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter() {
            cols.entry(c).or_default().add_term(r, v.clone());
        }
    }
    let target = coordinate_space(rows.len().max(1));
    let op = GradedMap::from_columns(source, target, 0, cols).expect("ungraded operator");
    linalg::kernel(&op)
        .representatives
        .iter()
        .map(|v| {
            let mut form = CubicForm::default();
            for (c, x) in v.iter() {
                let (i, j, k) = coords[c];
                form.set(i, j, k, x.clone());
            }
            form
        })
        .collect()
}

/// A module-valued 2-cocycle on an ordinary Lie algebra, with validator.
#[derive(Debug, Clone)]
pub struct Cocycle2 {
    pub base: LieAlgebra,
    pub module: ModuleAction,
    pub values: PairTable,
}

impl Cocycle2 {
    pub fn value(&self, i: usize, j: usize) -> Vector {
        self.values.value(i, j)
    }

    /// Sets σ(i,j) and σ(j,i) = −σ(i,j).
    pub fn set_pair(&mut self, i: usize, j: usize, v: Vector) {
        self.values.set(j, i, v.negated());
        self.values.set(i, j, v);
    }

    pub fn validate(&self) -> Certificate {
        let mut cert = Certificate::new(format!(
            "2-cocycle on {} valued in {}",
            self.base.name, self.module.name
        ));
        let n = self.base.dim();
        let mut antisym = Vec::new();
        for i in 0..n {
            for j in i..n {
                if self.value(i, j).add(&self.value(j, i)) != Vector::zero() {
                    antisym.push(format!(
                        "({}, {})",
                        self.base.space.label(i),
                        self.base.space.label(j)
                    ));
                }
            }
        }
        cert.record_law("antisymmetry", antisym);

        let mut cocycle = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let mut defect = self.module.act(&Vector::unit(i), &self.value(j, k));
                    defect.add_scaled(
                        &self.module.act(&Vector::unit(j), &self.value(i, k)),
                        &-Scalar::one(),
                    );
                    defect.add_scaled(
                        &self.module.act(&Vector::unit(k), &self.value(i, j)),
                        &Scalar::one(),
                    );
                    defect.add_scaled(&self.values.eval(&self.base.bracket.value(i, j), &Vector::unit(k)), &-Scalar::one());
                    defect.add_scaled(&self.values.eval(&self.base.bracket.value(i, k), &Vector::unit(j)), &Scalar::one());
                    defect.add_scaled(&self.values.eval(&self.base.bracket.value(j, k), &Vector::unit(i)), &-Scalar::one());
                    if !defect.is_zero() {
                        cocycle.push(format!(
                            "({}, {}, {})",
                            self.base.space.label(i),
                            self.base.space.label(j),
                            self.base.space.label(k)
                        ));
                    }
                }
            }
        }
        cert.record_law("cocycle identity", cocycle);
        cert
    }
}

/// A computed current algebra split into a base and an abelian-ideal fiber,
/// with the characteristic 2-cocycle of the extension.
pub struct Extraction {
    pub base_positions: Vec<usize>,
    pub fiber_positions: Vec<usize>,
    pub cocycle: Cocycle2,
}

impl Extraction {
    /// Module coordinates of a class vector that must be supported on the
    /// fiber.
    pub fn fiber_coords(&self, class: &Vector) -> Result<Vector, CoreError> {
        let mut out = Vector::zero();
        for (t, c) in class.iter() {
            match self.fiber_positions.iter().position(|&p| p == t) {
                Some(m) => out.add_term(m, c.clone()),
                None => {
                    return Err(CoreError::Rejected(
                        "value has a component outside the fiber".into(),
                    ))
                }
            }
        }
        Ok(out)
    }
}

/// Splits a computed current algebra along the given label partition and
/// extracts `σ(u,v) = fiber component of [s(u), s(v)]`. The fiber must span
/// an abelian ideal; violations are rejected with the witness bracket.
pub fn extract_cocycle(
    current: &CurrentAlgebra,
    base_labels: &[String],
    fiber_labels: &[String],
) -> Result<Extraction, CoreError> {
    let space = &current.basis.space;
    if base_labels.len() + fiber_labels.len() != space.dim() {
        return Err(CoreError::DimensionMismatch(format!(
            "label split covers {} of {} classes",
            base_labels.len() + fiber_labels.len(),
            space.dim()
        )));
    }
    let base_positions: Vec<usize> = base_labels
        .iter()
        .map(|l| space.require(l, "extraction base"))
        .collect::<Result<_, _>>()?;
    let fiber_positions: Vec<usize> = fiber_labels
        .iter()
        .map(|l| space.require(l, "extraction fiber"))
        .collect::<Result<_, _>>()?;

    let fiber_part = |v: &Vector| -> Vector {
        Vector::from_terms(v.iter().filter_map(|(t, c)| {
            fiber_positions.iter().position(|&p| p == t).map(|m| (m, c.clone()))
        }))
    };
    let base_part = |v: &Vector| -> Vector {
        Vector::from_terms(v.iter().filter_map(|(t, c)| {
            base_positions.iter().position(|&p| p == t).map(|b| (b, c.clone()))
        }))
    };

    // The fiber spans an abelian ideal.
    for (mi, &fi) in fiber_positions.iter().enumerate() {
        for (mj, &fj) in fiber_positions.iter().enumerate() {
            let v = current.bracket.value(fi, fj);
            if !v.is_zero() {
                return Err(CoreError::Rejected(format!(
                    "fiber is not abelian: [{}, {}] = {}",
                    fiber_labels[mi],
                    fiber_labels[mj],
                    v.display(space)
                )));
            }
        }
    }
    for (bi, &b) in base_positions.iter().enumerate() {
        for (mi, &f) in fiber_positions.iter().enumerate() {
            let v = current.bracket.value(b, f);
            if !base_part(&v).is_zero() {
                return Err(CoreError::Rejected(format!(
                    "fiber is not an ideal: [{}, {}] = {}",
                    base_labels[bi],
                    fiber_labels[mi],
                    v.display(space)
                )));
            }
        }
    }

    let base_space = GradedSpace::new(base_labels.iter().map(|l| (l.clone(), 0)).collect())?;
    let base_order: Vec<usize> = base_positions.clone();
    let to_base_coords = |v: &Vector| -> Vector {
        Vector::from_terms(v.iter().filter_map(|(t, c)| {
            base_order
                .iter()
                .position(|&p| p == t)
                .map(|b| (base_space.index_of(base_labels[b].as_str()).unwrap(), c.clone()))
        }))
    };
    let mut base_bracket = PairTable::new();
    for (bi, &pi) in base_positions.iter().enumerate() {
        for (bj, &pj) in base_positions.iter().enumerate() {
            let v = current.bracket.value(pi, pj);
            base_bracket.set(
                base_space.index_of(base_labels[bi].as_str()).unwrap(),
                base_space.index_of(base_labels[bj].as_str()).unwrap(),
                to_base_coords(&v),
            );
        }
    }
    let base = LieAlgebra {
        name: format!("base of {}", space.label(0)),
        space: base_space.clone(),
        bracket: base_bracket,
    };

    let module_space = GradedSpace::new(fiber_labels.iter().map(|l| (l.clone(), 0)).collect())?;
    let reorder_fiber = {
        let module_space = module_space.clone();
        move |v: &Vector| -> Vector {
            Vector::from_terms(v.iter().map(|(m, c)| {
                (module_space.index_of(fiber_labels[m].as_str()).unwrap(), c.clone())
            }))
        }
    };
    let mut ops = Vec::with_capacity(base.dim());
    for bl in base_labels {
        let p = space.index_of(bl).unwrap();
        let mut cols: BTreeMap<usize, Vector> = BTreeMap::new();
        for (m, &f) in fiber_positions.iter().enumerate() {
            let acted = fiber_part(&current.bracket.value(p, f));
            if !acted.is_zero() {
                cols.insert(
                    module_space.index_of(fiber_labels[m].as_str()).unwrap(),
                    reorder_fiber(&acted),
                );
            }
        }
        ops.push(
            GradedMap::from_columns(module_space.clone(), module_space.clone(), 0, cols)
                .expect("fiber action is degree 0"),
        );
    }
    let module = ModuleAction {
        name: format!("fiber({})", fiber_labels.len()),
        space: module_space,
        ops,
    };

    let mut cocycle = Cocycle2 { base: base.clone(), module, values: PairTable::new() };
    for (bi, &pi) in base_positions.iter().enumerate() {
        for (bj, &pj) in base_positions.iter().enumerate() {
            if bi >= bj {
                continue;
            }
            let sigma = reorder_fiber(&fiber_part(&current.bracket.value(pi, pj)));
            let i = base.space.index_of(base_labels[bi].as_str()).unwrap();
            let j = base.space.index_of(base_labels[bj].as_str()).unwrap();
            cocycle.set_pair(i, j, sigma);
        }
    }
    cocycle.validate().into_result()?;
    // Remap position bookkeeping to the sorted base/module order.
    let base_positions_sorted: Vec<usize> = (0..base.dim())
        .map(|i| space.index_of(base.space.label(i)).unwrap())
        .collect();
    let fiber_positions_sorted: Vec<usize> = (0..cocycle.module.dim())
        .map(|m| space.index_of(cocycle.module.space.label(m)).unwrap())
        .collect();
    Ok(Extraction {
        base_positions: base_positions_sorted,
        fiber_positions: fiber_positions_sorted,
        cocycle,
    })
}

/// Partition of a current algebra's classes by whether the dgla factor of the
/// class label belongs to a given fiber label set.
pub fn split_labels_by_fiber(
    current: &CurrentAlgebra,
    fiber_algebra_labels: &[String],
) -> (Vec<String>, Vec<String>) {
    let mut base = Vec::new();
    let mut fiber = Vec::new();
    for (label, _) in current.basis.space.basis() {
        let a_label = split_tensor_label(label).map(|(_, a)| a).unwrap_or(label.as_str());
        if fiber_algebra_labels.iter().any(|f| f == a_label) {
            fiber.push(label.clone());
        } else {
            base.push(label.clone());
        }
    }
    (base, fiber)
}

/// A current generator φ⊗x addressed by model and 𝔤 basis indices.
#[derive(Debug, Clone, Copy)]
pub struct CurrentGenerator {
    pub f: usize,
    pub x: usize,
}

/// Resolves the base classes of an extraction as current generators: CA base
/// labels read `φ⊗I(x)`, SA base labels read `φ⊗L(x)`.
pub fn base_generators(
    current: &CurrentAlgebra,
    extraction: &Extraction,
    cone: &Cone,
) -> Result<Vec<CurrentGenerator>, CoreError> {
    let expected = match current.kind {
        FunctorKind::Ca => ConeGenerator::I,
        FunctorKind::Sa => ConeGenerator::L,
    };
    let mut out = Vec::new();
    for &p in &extraction.base_positions {
        let label = current.basis.space.label(p);
        let (f_label, a_label) = split_tensor_label(label).ok_or_else(|| {
            CoreError::Rejected(format!("base class {label} is not a tensor label"))
        })?;
        let f = current.model.space.require(f_label, "current generator")?;
        if current.model.space.degree(f) != 0 {
            return Err(CoreError::Rejected(format!(
                "base class {label} does not have a degree-0 model factor"
            )));
        }
        let cone_pos = cone.dgla.space.require(a_label, "current generator")?;
        match cone.generator_of(cone_pos) {
            Some((kind, x)) if kind == expected => out.push(CurrentGenerator { f, x }),
            _ => {
                return Err(CoreError::Rejected(format!(
                    "base class {label} is not a {} generator",
                    match expected {
                        ConeGenerator::I => "I",
                        ConeGenerator::L => "L",
                    }
                )))
            }
        }
    }
    Ok(out)
}

/// The canonical tensor representative of an extraction value given in module
/// coordinates.
pub fn fiber_value_tensor(
    current: &CurrentAlgebra,
    extraction: &Extraction,
    value: &Vector,
) -> Vector {
    let class = Vector::from_terms(
        value.iter().map(|(m, c)| (extraction.fiber_positions[m], c.clone())),
    );
    current.representative(&class)
}

/// Splits a tensor vector by its dgla-factor label, returning the model-space
/// component paired with that label.
pub fn component_by_algebra_label(
    current: &CurrentAlgebra,
    tensor_vec: &Vector,
    a_label: &str,
) -> Vector {
    let mut out = Vector::zero();
    for (p, c) in tensor_vec.iter() {
        let (s_i, a_j) = current.tensor.layout.pairs[p];
        if current.algebra.space.label(a_j) == a_label {
            out.add_term(s_i, c.clone());
        }
    }
    out
}

/// Builds an evaluator result as a full cocycle on the extraction's base.
fn table_from_values(
    extraction: &Extraction,
    mut value: impl FnMut(usize, usize) -> Result<Vector, CoreError>,
) -> Result<Cocycle2, CoreError> {
    let mut out = Cocycle2 {
        base: extraction.cocycle.base.clone(),
        module: extraction.cocycle.module.clone(),
        values: PairTable::new(),
    };
    let n = out.base.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = value(i, j)?;
            out.set_pair(i, j, v);
        }
    }
    Ok(out)
}

/// σ_γ(u,v) = γ(u,v): `σ(φ⊗x, ψ⊗y) = φψ·γ(x,y)` valued in A⁰, normalized
/// through the fiber classes of CA(S, C_γ𝔤).
pub fn sigma_gamma(
    current: &CurrentAlgebra,
    extraction: &Extraction,
    cone: &Cone,
    gamma: &BilinearForm,
    center_label: &str,
) -> Result<Cocycle2, CoreError> {
    let gens = base_generators(current, extraction, cone)?;
    let center = current.algebra.space.require(center_label, "σ_γ center")?;
    table_from_values(extraction, |i, j| {
        let (u, v) = (gens[i], gens[j]);
        let product = current.model.products.value(u.f, v.f);
        let value = current
            .tensor
            .pure(&product.scaled(&gamma.eval(u.x, v.x)), &Vector::unit(center));
        extraction.fiber_coords(&current.class_of_tensor(&value)?)
    })
}

/// σ_p(u,v) = p(u, dv) mod dA⁰: `σ(φ⊗x, ψ⊗y) = p(x,y)·φdψ` as a class in
/// A¹/dA⁰, realized on the fiber of CA(S, C_p𝔤).
pub fn sigma_p(
    current: &CurrentAlgebra,
    extraction: &Extraction,
    cone: &Cone,
    p: &BilinearForm,
    center_label: &str,
) -> Result<Cocycle2, CoreError> {
    let gens = base_generators(current, extraction, cone)?;
    let center = current.algebra.space.require(center_label, "σ_p center")?;
    table_from_values(extraction, |i, j| {
        let (u, v) = (gens[i], gens[j]);
        let f_dg = current.model.mul(
            &Vector::unit(u.f),
            &current.model.d(&Vector::unit(v.f)),
        );
        let value = current.tensor.pure(&f_dg.scaled(&p.eval(u.x, v.x)), &Vector::unit(center));
        extraction.fiber_coords(&current.class_of_tensor(&value)?)
    })
}

/// σ_N(u,v) = p(u,dv) − p(du,v) + d(ω(u,v)) as a raw A¹-valued element (no
/// quotient): `p(x,y)(φdψ − ψdφ) + ω(x,y)·d(φψ)`.
pub fn sigma_n_value(
    model: &crate::dgla::Cdga,
    p: &BilinearForm,
    omega: &BilinearForm,
    u: (usize, usize),
    v: (usize, usize),
) -> Vector {
    let (f, x) = u;
    let (g, y) = v;
    let f_dg = model.mul(&Vector::unit(f), &model.d(&Vector::unit(g)));
    let g_df = model.mul(&Vector::unit(g), &model.d(&Vector::unit(f)));
    let mut out = f_dg.sub(&g_df).scaled(&p.eval(x, y));
    let d_fg = model.d(&model.products.value(f, g));
    out.add_scaled(&d_fg, &omega.eval(x, y));
    out
}

/// The (ω,δ) cocycle of a deformed semidirect product, evaluated verbatim:
/// `σ(u,v) = ½(I(u)·δI(v) − I(v)·δI(u) + ω(I(du),I(v)) − ω(I(dv),I(u))
///          + ω(I(u),L(v)) − ω(I(v),L(u)))`,
/// normalized through the CA(S,V) fiber classes.
pub fn sigma_omega_delta(
    current: &CurrentAlgebra,
    extraction: &Extraction,
    sd: &SemidirectDgla,
    u: CurrentGenerator,
    v: CurrentGenerator,
) -> Result<Vector, CoreError> {
    let cone = &sd.cone;
    let model = &current.model;
    let half = Scalar::ratio(1, 2);
    let fg = model.products.value(u.f, v.f);
    let f_dg = model.mul(&Vector::unit(u.f), &model.d(&Vector::unit(v.f)));
    let g_df = model.mul(&Vector::unit(v.f), &model.d(&Vector::unit(u.f)));

    let i_u = cone.i_pos[u.x];
    let i_v = cone.i_pos[v.x];
    let l_u = cone.l_pos[u.x];
    let l_v = cone.l_pos[v.x];

    let act = |a: usize, w: &Vector| -> Vector {
        match cone.generator_of(a).expect("cone position") {
            (ConeGenerator::I, k) => sd.module.i_ops[k].apply(w),
            (ConeGenerator::L, k) => sd.module.l_ops[k].apply(w),
        }
    };

    // Module-valued pieces, each paired with its S-coefficient.
    let mut total = Vector::zero();
    let mut add = |s_part: &Vector, m_part: &Vector, sgn: i64| {
        if m_part.is_zero() || s_part.is_zero() {
            return;
        }
        let embedded = embed_module(current, sd, s_part, m_part);
        total.add_scaled(&embedded, &crate::scalar::sign(sgn));
    };

    add(&fg, &act(i_u, &sd.datum.delta.column(i_v)), 0);
    add(&fg, &act(i_v, &sd.datum.delta.column(i_u)), 1);
    add(&g_df, &sd.datum.omega.value(i_u, i_v), 0);
    add(&f_dg, &sd.datum.omega.value(i_v, i_u), 1);
    add(&fg, &sd.datum.omega.value(i_u, l_v), 0);
    add(&fg, &sd.datum.omega.value(i_v, l_u), 1);

    let value = total.scaled(&half);
    extraction.fiber_coords(&current.class_of_tensor(&value)?)
}

/// Embeds an S-part ⊗ module-part pure tensor into the tensor space of a
/// current algebra over a semidirect product.
fn embed_module(
    current: &CurrentAlgebra,
    sd: &SemidirectDgla,
    s_part: &Vector,
    m_part: &Vector,
) -> Vector {
    let lifted = sd.module_embed(m_part);
    current.tensor.pure(s_part, &lifted)
}

/// The CA cocycle of C_e𝔤: `(u,v) ↦ −I(u)I(v)e`.
pub fn sigma_e(
    current: &CurrentAlgebra,
    extraction: &Extraction,
    sd: &SemidirectDgla,
    e: &Vector,
    u: CurrentGenerator,
    v: CurrentGenerator,
) -> Result<Vector, CoreError> {
    let fg = current.model.products.value(u.f, v.f);
    let m = sd.module.i_ops[u.x].apply(&sd.module.i_ops[v.x].apply(e));
    let value = embed_module(current, sd, &fg, &m.negated());
    extraction.fiber_coords(&current.class_of_tensor(&value)?)
}

/// The SA cocycle of C_e𝔤: `(u,v) ↦ −dI(u)I(v)e`, computed as the tensor
/// differential of the CA value.
pub fn sigma_e_sa(
    current: &CurrentAlgebra,
    extraction: &Extraction,
    sd: &SemidirectDgla,
    e: &Vector,
    u: CurrentGenerator,
    v: CurrentGenerator,
) -> Result<Vector, CoreError> {
    let fg = current.model.products.value(u.f, v.f);
    let m = sd.module.i_ops[u.x].apply(&sd.module.i_ops[v.x].apply(e));
    let ca_value = embed_module(current, sd, &fg, &m.negated());
    let value = current.tensor.dgla.d(&ca_value);
    extraction.fiber_coords(&current.class_of_tensor(&value)?)
}

/// σ_H(u,v) = i_{v_M} i_{u_M} H: `σ(φ⊗x, ψ⊗y) = φψ · i_y i_x H` as a class in
/// the CA module of the sigma-model dgla.
pub fn sigma_h(
    current: &CurrentAlgebra,
    extraction: &Extraction,
    sd: &SemidirectDgla,
    h: &Vector,
    u: CurrentGenerator,
    v: CurrentGenerator,
) -> Result<Vector, CoreError> {
    let fg = current.model.products.value(u.f, v.f);
    let m = sd.module.i_ops[v.x].apply(&sd.module.i_ops[u.x].apply(h));
    let value = embed_module(current, sd, &fg, &m);
    extraction.fiber_coords(&current.class_of_tensor(&value)?)
}

/// The bracket table of the sigma-model current algebra: current-current
/// brackets carry the σ_H anomaly, current-module brackets follow the derived
/// action, module-module brackets vanish, and exact module elements are zero
/// in the quotient.
pub fn verify_sigma_brackets(
    current: &CurrentAlgebra,
    extraction: &Extraction,
    sd: &SemidirectDgla,
    h: &Vector,
) -> Result<Certificate, CoreError> {
    let mut cert = Certificate::new(format!("sigma-model bracket table for {}", sd.dgla.name));
    let cone = &sd.cone;
    let gens = base_generators(current, extraction, cone)?;

    // [φ⊗I(x), ψ⊗I(y)] = φψ⊗I([x,y]) + φψ⊗(i_y i_x H).
    let mut anomaly = Vec::new();
    for (bi, &pu) in extraction.base_positions.iter().enumerate() {
        for (bj, &pv) in extraction.base_positions.iter().enumerate() {
            let got = current.bracket.value(pu, pv);
            let (u, v) = (gens[bi], gens[bj]);
            let fg = current.model.products.value(u.f, v.f);
            let g_bracket = cone.g.bracket.value(u.x, v.x);
            let mut expect_tensor =
                current.tensor.pure(&fg, &sd.cone_embed(&cone.i_embed(&g_bracket)));
            let contraction = sd.module.i_ops[v.x].apply(&sd.module.i_ops[u.x].apply(h));
            expect_tensor.add_scaled(&embed_module(current, sd, &fg, &contraction), &Scalar::one());
            if got != current.class_of_tensor(&expect_tensor)? {
                anomaly.push(format!(
                    "({}, {})",
                    current.basis.space.label(pu),
                    current.basis.space.label(pv)
                ));
            }
        }
    }
    cert.record_law("[φ⊗I(x), ψ⊗I(y)] = φψ⊗I([x,y]) + φψ⊗i_y i_x H", anomaly);

    // [φ⊗I(x), η⊗α] = φη⊗L_x α + (−1)^{|η|} dφ∧η ⊗ i_x α.
    let mut action = Vec::new();
    for (bi, &pu) in extraction.base_positions.iter().enumerate() {
        let u = gens[bi];
        for &pm in &extraction.fiber_positions {
            let got = current.bracket.value(pu, pm);
            let label = current.basis.space.label(pm);
            let (s_label, m_label) = split_tensor_label(label)
                .ok_or_else(|| CoreError::Rejected(format!("fiber label {label}")))?;
            let eta = current.model.space.require(s_label, "module class")?;
            let alpha = sd.module.space.require(m_label, "module class")?;
            let phi_eta = current.model.products.value(u.f, eta);
            let mut expect_tensor =
                embed_module(current, sd, &phi_eta, &sd.module.l_ops[u.x].column(alpha));
            let dphi_eta = current
                .model
                .mul(&current.model.d(&Vector::unit(u.f)), &Vector::unit(eta));
            let s = crate::scalar::sign(current.model.space.degree(eta));
            expect_tensor.add_scaled(
                &embed_module(current, sd, &dphi_eta, &sd.module.i_ops[u.x].column(alpha)),
                &s,
            );
            if got != current.class_of_tensor(&expect_tensor)? {
                action.push(format!("({}, {})", current.basis.space.label(pu), label));
            }
        }
    }
    cert.record_law("[φ⊗I(x), η⊗α] = φη⊗L_xα + (−1)^{|η|}dφ∧η⊗i_xα", action);

    let mut module_module = Vec::new();
    for &pm in &extraction.fiber_positions {
        for &pn in &extraction.fiber_positions {
            if !current.bracket.value(pm, pn).is_zero() {
                module_module.push(format!(
                    "({}, {})",
                    current.basis.space.label(pm),
                    current.basis.space.label(pn)
                ));
            }
        }
    }
    cert.record_law("[η⊗α, η'⊗α'] = 0", module_module);

    // d(η⊗β) = dη⊗β + η⊗dβ is zero in the quotient.
    let mut relation = Vec::new();
    let t = &current.tensor.dgla;
    for p in 0..t.dim() {
        if t.space.degree(p) != current.slice_degree - 1 {
            continue;
        }
        let class = current.class_of_tensor(&t.d(&Vector::unit(p)))?;
        if !class.is_zero() {
            relation.push(t.space.label(p).to_string());
        }
    }
    cert.record_law("d(η⊗β) = 0 in the quotient", relation);
    Ok(cert)
}

/// Result of comparing two cocycles on the same base and module.
#[derive(Debug, Clone)]
pub enum Comparison {
    ExactEqual,
    /// Equal up to coboundary, with a cobounding 1-cochain τ: base → module.
    Cohomologous(Vec<Vector>),
    Distinct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareMode {
    Exact,
    Cohomologous,
}

pub fn compare_cocycles(
    a: &Cocycle2,
    b: &Cocycle2,
    mode: CompareMode,
) -> Result<Comparison, CoreError> {
    if a.base.space.basis() != b.base.space.basis()
        || a.module.space.basis() != b.module.space.basis()
    {
        return Err(CoreError::DimensionMismatch(
            "cocycles live on different bases or modules".into(),
        ));
    }
    let n = a.base.dim();
    let m = a.module.dim();
    let exact_equal = (0..n).all(|i| ((i + 1)..n).all(|j| a.value(i, j) == b.value(i, j)));
    match mode {
        CompareMode::Exact => Ok(if exact_equal { Comparison::ExactEqual } else { Comparison::Distinct }),
        CompareMode::Cohomologous => {
            if exact_equal {
                return Ok(Comparison::ExactEqual);
            }
            // Solve σ_a − σ_b = d_CE τ for τ: base → module. Unknown grid:
            // τ(u_j) coordinate μ lives at column j·m + μ.
            let unknowns = n * m;
            let mut rows = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    let diff = a.value(i, j).sub(&b.value(i, j));
                    for nu in 0..m {
                        let mut row = Vector::zero();
                        // u_i · τ(u_j) component ν.
                        for mu in 0..m {
                            row.add_term(j * m + mu, a.module.ops[i].column(mu).coeff(nu));
                            row.add_term(i * m + mu, -b.module.ops[j].column(mu).coeff(nu));
                        }
                        // −τ([u_i, u_j]) component ν.
                        for (k, c) in a.base.bracket.value(i, j).iter() {
                            row.add_term(k * m + nu, -c.clone());
                        }
                        row.add_term(unknowns, diff.coeff(nu));
                        rows.push(row);
                    }
                }
            }
            let ech = rref(&SparseMatrix::new(rows, unknowns + 1));
            if ech.pivots.contains(&unknowns) {
                return Ok(Comparison::Distinct);
            }
            let mut tau = vec![Vector::zero(); n];
            for (r, &p) in ech.pivots.iter().enumerate() {
                let c = ech.matrix.rows[r].coeff(unknowns);
                tau[p / m].add_term(p % m, c);
            }
            Ok(Comparison::Cohomologous(tau))
        }
    }
}

/// Applies `σ + d_CE τ` for a 1-cochain τ: base → module.
pub fn add_coboundary(sigma: &Cocycle2, tau: &[Vector]) -> Cocycle2 {
    let mut out = sigma.clone();
    let n = sigma.base.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut v = sigma.value(i, j);
            v.add_scaled(&sigma.module.act(&Vector::unit(i), &tau[j]), &Scalar::one());
            v.add_scaled(&sigma.module.act(&Vector::unit(j), &tau[i]), &-Scalar::one());
            for (k, c) in sigma.base.bracket.value(i, j).iter() {
                v.add_scaled(&tau[k], &-c.clone());
            }
            out.set_pair(i, j, v);
        }
    }
    out
}

/// The pairing behind the top central cocycle of the tower over a cubic
/// invariant: `((φ⊗x)-current, (γ⊗ι(ξ))-module) ↦ ξ(x)·[φ·dγ]` in top degree
/// mod exact.
pub fn fms_central_pairing(
    current: &CurrentAlgebra,
    extraction: &Extraction,
    sd_cone: &Cone,
    c4_label: &str,
    f: usize,
    x: usize,
    gamma_s: usize,
    xi: usize,
) -> Result<Vector, CoreError> {
    let _ = sd_cone;
    let c4 = current.algebra.space.require(c4_label, "central pairing")?;
    let xi_of_x = if xi == x { Scalar::one() } else { Scalar::zero() };
    let f_dgamma = current
        .model
        .mul(&Vector::unit(f), &current.model.d(&Vector::unit(gamma_s)));
    let value = current.tensor.pure(&f_dgamma.scaled(&xi_of_x), &Vector::unit(c4));
    extraction.fiber_coords(&current.class_of_tensor(&value)?)
}
