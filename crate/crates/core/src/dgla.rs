//! Differential graded Lie algebras, CDGAs and 𝔤-differential spaces, with
//! exhaustive validators over basis tuples.
//!
//! Sign conventions are Koszul throughout:
//!
//! * graded antisymmetry `[a,b] = −(−1)^{|a||b|}[b,a]`,
//! * graded Jacobi `[a,[b,c]] = [[a,b],c] + (−1)^{|a||b|}[b,[a,c]]`,
//! * Leibniz `d[a,b] = [da,b] + (−1)^{|a|}[a,db]`,
//! * tensor bracket `[φ⊗a, ψ⊗b] = (−1)^{|a||ψ|} φψ ⊗ [a,b]`,
//! * tensor differential `d(φ⊗a) = dφ⊗a + (−1)^{|φ|} φ⊗da`.
//!
//! Differentials have degree +1 (so the cone maps degree −1 onto degree 0).
//! Validators are exhaustive — O(n³) basis triples — which is the point of the
//! artifact: at desk scale every axiom is certified, not sampled.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::certificate::Certificate;
use crate::error::CoreError;
use crate::graded::{GradedMap, GradedSpace, TensorSpace, Vector};
use crate::linalg::{self, Subquotient};
use crate::scalar::{sign, Scalar};

/// Sparse bilinear structure constants: ordered basis pair → value vector.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairTable {
    entries: BTreeMap<(usize, usize), Vector>,
}

impl PairTable {
    pub fn new() -> Self {
        PairTable::default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Vector) {
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add(&mut self, i: usize, j: usize, v: &Vector) {
        let mut cur = self.value(i, j);
        cur.add_scaled(v, &Scalar::one());
        self.set(i, j, cur);
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Vector> {
        self.entries.get(&(i, j))
    }

    pub fn value(&self, i: usize, j: usize) -> Vector {
        self.get(i, j).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Vector)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Bilinear evaluation.
    pub fn eval(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, c) in x.iter() {
            for (j, e) in y.iter() {
                if let Some(v) = self.get(i, j) {
                    out.add_scaled(v, &(c * e));
                }
            }
        }
        out
    }
}

/// A differential graded Lie algebra on an explicit basis.
#[derive(Debug, Clone)]
pub struct Dgla {
    pub name: String,
    pub space: Arc<GradedSpace>,
    pub bracket: PairTable,
    pub differential: GradedMap,
}

impl Dgla {
    pub fn new(
        name: impl Into<String>,
        space: Arc<GradedSpace>,
        bracket: PairTable,
        differential: GradedMap,
    ) -> Self {
        Dgla { name: name.into(), space, bracket, differential }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn bracket_vec(&self, x: &Vector, y: &Vector) -> Vector {
        self.bracket.eval(x, y)
    }

    pub fn d(&self, v: &Vector) -> Vector {
        self.differential.apply(v)
    }

    fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> Option<Vector> {
        let b_jk = self.bracket.get(j, k);
        let b_ij = self.bracket.get(i, j);
        let b_ik = self.bracket.get(i, k);
        if b_jk.is_none() && b_ij.is_none() && b_ik.is_none() {
            return None;
        }
        let mut defect = Vector::zero();
        if let Some(v) = b_jk {
            for (t, c) in v.iter() {
                if let Some(w) = self.bracket.get(i, t) {
                    defect.add_scaled(w, c);
                }
            }
        }
        if let Some(v) = b_ij {
            for (t, c) in v.iter() {
                if let Some(w) = self.bracket.get(t, k) {
                    defect.add_scaled(w, &-c.clone());
                }
            }
        }
        if let Some(v) = b_ik {
            let s = -sign(self.space.degree(i) * self.space.degree(j));
            for (t, c) in v.iter() {
                if let Some(w) = self.bracket.get(j, t) {
                    defect.add_scaled(w, &(&s * c));
                }
            }
        }
        if defect.is_zero() {
            None
        } else {
            Some(defect)
        }
    }

    /// Exhaustive validation of all dgla axioms; failures carry the offending
    /// basis tuple.
    pub fn validate(&self) -> Certificate {
        let mut cert = Certificate::new(format!("dgla {}", self.name));
        let space = &self.space;
        let n = space.dim();

        let mut degree_failures = Vec::new();
        for ((i, j), v) in self.bracket.iter() {
            let expect = space.degree(i) + space.degree(j);
            for (t, _) in v.iter() {
                if space.degree(t) != expect {
                    degree_failures.push(format!(
                        "[{}, {}] has a degree-{} term, expected {}",
                        space.label(i),
                        space.label(j),
                        space.degree(t),
                        expect
                    ));
                }
            }
        }
        cert.record_law("degree-homogeneity", degree_failures);

        let mut antisym_failures = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut defect = self.bracket.value(i, j);
                let s = sign(space.degree(i) * space.degree(j));
                defect.add_scaled(&self.bracket.value(j, i), &s);
                if !defect.is_zero() {
                    antisym_failures.push(format!(
                        "({}, {}) defect {}",
                        space.label(i),
                        space.label(j),
                        defect.display(space)
                    ));
                }
            }
        }
        cert.record_law("graded-antisymmetry", antisym_failures);

        let jacobi_failures: Vec<String> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut local = Vec::new();
                for j in 0..n {
                    for k in 0..n {
                        if let Some(defect) = self.jacobi_defect(i, j, k) {
                            local.push(format!(
                                "({}, {}, {}) defect {}",
                                self.space.label(i),
                                self.space.label(j),
                                self.space.label(k),
                                defect.display(&self.space)
                            ));
                        }
                    }
                }
                local
            })
            .collect();
        cert.record_law("graded-jacobi", jacobi_failures);

        let mut leibniz_failures = Vec::new();
        for i in 0..n {
            let d_ei = self.differential.column(i);
            for j in 0..n {
                let mut defect = self.d(&self.bracket.value(i, j));
                defect.add_scaled(&self.bracket_vec(&d_ei, &Vector::unit(j)), &-Scalar::one());
                let s = -sign(space.degree(i));
                defect.add_scaled(
                    &self.bracket_vec(&Vector::unit(i), &self.differential.column(j)),
                    &s,
                );
                if !defect.is_zero() {
                    leibniz_failures.push(format!(
                        "({}, {}) defect {}",
                        space.label(i),
                        space.label(j),
                        defect.display(space)
                    ));
                }
            }
        }
        cert.record_law("leibniz", leibniz_failures);

        cert.record_law("d-squared", d_squared_failures(&self.differential));
        cert
    }

    /// `H^n = 0` for every degree; returns the first nonzero degree otherwise.
    pub fn acyclicity_witness(&self) -> Option<(i64, usize)> {
        complex_acyclicity_witness(&self.space, &self.differential)
    }
}

fn d_squared_failures(d: &GradedMap) -> Vec<String> {
    let dd = d.compose(d);
    let mut failures = Vec::new();
    for (j, v) in dd.columns() {
        failures.push(format!(
            "d²({}) = {}",
            d.source.label(j),
            v.display(&d.target)
        ));
    }
    failures
}

/// An ordinary Lie algebra: degree-0 space, bracket, no differential.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    pub name: String,
    pub space: Arc<GradedSpace>,
    pub bracket: PairTable,
}

impl LieAlgebra {
    /// Builds from `[x, y] = Σ c·z` entries; the transposed pairs are filled
    /// in by antisymmetry and the diagonal is zero.
    pub fn new(
        name: &str,
        basis: &[&str],
        brackets: &[(&str, &str, Vec<(&str, Scalar)>)],
    ) -> Result<Self, CoreError> {
        let space = GradedSpace::ungraded(basis);
        let mut table = PairTable::new();
        for (x, y, terms) in brackets {
            let i = space.require(x, name)?;
            let j = space.require(y, name)?;
            let mut v = Vector::zero();
            for (z, c) in terms {
                v.add_term(space.require(z, name)?, c.clone());
            }
            table.set(i, j, v.clone());
            table.set(j, i, v.negated());
        }
        Ok(LieAlgebra { name: name.to_string(), space, bracket: table })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn bracket_vec(&self, x: &Vector, y: &Vector) -> Vector {
        self.bracket.eval(x, y)
    }

    /// The same algebra as a dgla concentrated in degree 0 with d = 0.
    pub fn as_dgla(&self) -> Dgla {
        Dgla::new(
            self.name.clone(),
            self.space.clone(),
            self.bracket.clone(),
            GradedMap::zero(self.space.clone(), self.space.clone(), 1),
        )
    }

    pub fn validate(&self) -> Certificate {
        let mut cert = self.as_dgla().validate();
        cert.subject = format!("lie algebra {}", self.name);
        cert
    }
}

/// A commutative differential graded algebra on an explicit basis: the finite
/// stand-in for a form algebra Ω(S) or Ω(M).
#[derive(Debug, Clone)]
pub struct Cdga {
    pub name: String,
    pub space: Arc<GradedSpace>,
    pub products: PairTable,
    pub unit: usize,
    pub differential: GradedMap,
}

impl Cdga {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn unit_vector(&self) -> Vector {
        Vector::unit(self.unit)
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.products.eval(x, y)
    }

    pub fn d(&self, v: &Vector) -> Vector {
        self.differential.apply(v)
    }

    /// Positions of the degree-0 part A⁰ (always closed under products).
    pub fn functions(&self) -> &[usize] {
        self.space.degree_positions(0)
    }

    /// The point model: ℚ concentrated in degree 0.
    pub fn point() -> Self {
        let space = GradedSpace::from_labels(&[("1", 0)]);
        let mut products = PairTable::new();
        products.set(0, 0, Vector::unit(0));
        Cdga {
            name: "Pt".into(),
            space: space.clone(),
            products,
            unit: 0,
            differential: GradedMap::zero(space.clone(), space, 1),
        }
    }

    /// The three-dimensional interval model {1, ε, η} with dε = η and the
    /// truncation ε² = 0, which by Leibniz forces εη = 0.
    pub fn interval() -> Self {
        let space = GradedSpace::from_labels(&[("1", 0), ("ε", 0), ("η", 1)]);
        let one = space.index_of("1").unwrap();
        let eps = space.index_of("ε").unwrap();
        let eta = space.index_of("η").unwrap();
        let mut products = PairTable::new();
        for i in 0..3 {
            products.set(one, i, Vector::unit(i));
            products.set(i, one, Vector::unit(i));
        }
        let differential = GradedMap::from_columns(
            space.clone(),
            space.clone(),
            1,
            BTreeMap::from([(eps, Vector::unit(eta))]),
        )
        .expect("dε = η is degree +1");
        Cdga { name: "Intv".into(), space, products, unit: one, differential }
    }

    /// Exterior algebra on degree-1 generators with zero differential.
    pub fn exterior(name: &str, generators: &[&str]) -> Self {
        let n = generators.len();
        assert!(n < 16, "exterior generator count");
        let label = |mask: u32| -> String {
            if mask == 0 {
                return "1".to_string();
            }
            (0..n)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| generators[b])
                .collect::<Vec<_>>()
                .join("∧")
        };
        let mut basis = Vec::new();
        for mask in 0..(1u32 << n) {
            basis.push((label(mask), mask.count_ones() as i64));
        }
        let space = GradedSpace::new(basis).expect("subset labels are distinct");
        let index = |mask: u32| space.index_of(&label(mask)).unwrap();
        let mut products = PairTable::new();
        for a in 0..(1u32 << n) {
            for b in 0..(1u32 << n) {
                if a & b != 0 {
                    continue;
                }
                // Shuffle sign: one transposition per pair (i ∈ a, j ∈ b) with i > j.
                let mut swaps = 0i64;
                for i in 0..n {
                    if a & (1 << i) != 0 {
                        swaps += ((b & ((1 << i) - 1)) as u32).count_ones() as i64;
                    }
                }
                products.set(index(a), index(b), Vector::term(index(a | b), sign(swaps)));
            }
        }
        let unit = index(0);
        Cdga {
            name: name.to_string(),
            space: space.clone(),
            products,
            unit,
            differential: GradedMap::zero(space.clone(), space, 1),
        }
    }

    pub fn validate(&self) -> Certificate {
        let mut cert = Certificate::new(format!("cdga {}", self.name));
        let space = &self.space;
        let n = space.dim();

        let mut degree_failures = Vec::new();
        for ((i, j), v) in self.products.iter() {
            let expect = space.degree(i) + space.degree(j);
            for (t, _) in v.iter() {
                if space.degree(t) != expect {
                    degree_failures.push(format!(
                        "{}·{} has a degree-{} term, expected {}",
                        space.label(i),
                        space.label(j),
                        space.degree(t),
                        expect
                    ));
                }
            }
        }
        cert.record_law("degree-homogeneity", degree_failures);

        let mut unit_failures = Vec::new();
        if space.degree(self.unit) != 0 {
            unit_failures.push("unit is not in degree 0".to_string());
        }
        for i in 0..n {
            if self.products.value(self.unit, i) != Vector::unit(i)
                || self.products.value(i, self.unit) != Vector::unit(i)
            {
                unit_failures.push(format!("unit law fails on {}", space.label(i)));
            }
        }
        cert.record_law("unit", unit_failures);

        let mut comm_failures = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut defect = self.products.value(i, j);
                let s = -sign(space.degree(i) * space.degree(j));
                defect.add_scaled(&self.products.value(j, i), &s);
                if !defect.is_zero() {
                    comm_failures.push(format!(
                        "({}, {}) defect {}",
                        space.label(i),
                        space.label(j),
                        defect.display(space)
                    ));
                }
            }
        }
        cert.record_law("graded-commutativity", comm_failures);

        let assoc_failures: Vec<String> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut local = Vec::new();
                for j in 0..n {
                    let Some(ij) = self.products.get(i, j).cloned() else {
                        // (e_i e_j) = 0; associativity needs e_i (e_j e_k) = 0 too.
                        for k in 0..n {
                            if let Some(jk) = self.products.get(j, k) {
                                let mut defect = Vector::zero();
                                for (t, c) in jk.iter() {
                                    if let Some(w) = self.products.get(i, t) {
                                        defect.add_scaled(w, c);
                                    }
                                }
                                if !defect.is_zero() {
                                    local.push(format!(
                                        "({}, {}, {})",
                                        self.space.label(i),
                                        self.space.label(j),
                                        self.space.label(k)
                                    ));
                                }
                            }
                        }
                        continue;
                    };
                    for k in 0..n {
                        let mut defect = Vector::zero();
                        if let Some(jk) = self.products.get(j, k) {
                            for (t, c) in jk.iter() {
                                if let Some(w) = self.products.get(i, t) {
                                    defect.add_scaled(w, c);
                                }
                            }
                        }
                        for (t, c) in ij.iter() {
                            if let Some(w) = self.products.get(t, k) {
                                defect.add_scaled(w, &-c.clone());
                            }
                        }
                        if !defect.is_zero() {
                            local.push(format!(
                                "({}, {}, {})",
                                self.space.label(i),
                                self.space.label(j),
                                self.space.label(k)
                            ));
                        }
                    }
                }
                local
            })
            .collect();
        cert.record_law("associativity", assoc_failures);

        let mut leibniz_failures = Vec::new();
        for i in 0..n {
            let d_ei = self.differential.column(i);
            for j in 0..n {
                let mut defect = self.d(&self.products.value(i, j));
                defect.add_scaled(&self.mul(&d_ei, &Vector::unit(j)), &-Scalar::one());
                let s = -sign(space.degree(i));
                defect.add_scaled(&self.mul(&Vector::unit(i), &self.differential.column(j)), &s);
                if !defect.is_zero() {
                    leibniz_failures.push(format!(
                        "({}, {}) defect {}",
                        space.label(i),
                        space.label(j),
                        defect.display(space)
                    ));
                }
            }
        }
        cert.record_law("leibniz", leibniz_failures);

        cert.record_law("d-squared", d_squared_failures(&self.differential));
        cert
    }
}

/// Tensor product of two CDGAs, with the Koszul sign on crossing factors.
pub fn tensor_cdga(name: &str, left: &Cdga, right: &Cdga) -> Cdga {
    let layout = TensorSpace::new(&left.space, &right.space);
    let dim = layout.space.dim();
    let mut products = PairTable::new();
    for p in 0..dim {
        let (a1, b1) = layout.pairs[p];
        for q in 0..dim {
            let (a2, b2) = layout.pairs[q];
            let Some(aa) = left.products.get(a1, a2) else { continue };
            let Some(bb) = right.products.get(b1, b2) else { continue };
            let s = sign(right.space.degree(b1) * left.space.degree(a2));
            let mut value = Vector::zero();
            for (i, c) in aa.iter() {
                for (j, e) in bb.iter() {
                    value.add_term(layout.index_of_pair(i, j), &(&s * c) * e);
                }
            }
            products.set(p, q, value);
        }
    }
    let mut d_cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for p in 0..dim {
        let (a, b) = layout.pairs[p];
        let mut v = Vector::zero();
        for (i, c) in left.differential.column(a).iter() {
            v.add_term(layout.index_of_pair(i, b), c.clone());
        }
        let s = sign(left.space.degree(a));
        for (j, c) in right.differential.column(b).iter() {
            v.add_term(layout.index_of_pair(a, j), &s * c);
        }
        if !v.is_zero() {
            d_cols.insert(p, v);
        }
    }
    let differential = GradedMap::from_columns(layout.space.clone(), layout.space.clone(), 1, d_cols)
        .expect("tensor differential is degree +1");
    let unit = layout.index_of_pair(left.unit, right.unit);
    Cdga { name: name.to_string(), space: layout.space, products, unit, differential }
}

/// A dgla tensored with a CDGA model, keeping the factor layout so functors
/// can address pure tensors `φ⊗a`.
pub struct TensorDgla {
    pub dgla: Dgla,
    pub layout: TensorSpace,
}

impl TensorDgla {
    /// Embeds `φ⊗a` for sparse `φ` and `a`.
    pub fn pure(&self, phi: &Vector, a: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, c) in phi.iter() {
            for (j, e) in a.iter() {
                out.add_term(self.layout.index_of_pair(i, j), c * e);
            }
        }
        out
    }
}

/// `Ω(S)⊗A` with bracket `[φ⊗a, ψ⊗b] = (−1)^{|a||ψ|} φψ ⊗ [a,b]` and the
/// Leibniz differential. The sign convention is pinned by dedicated tests
/// against the displayed brackets it must reproduce.
pub fn tensor_dgla(model: &Cdga, algebra: &Dgla) -> TensorDgla {
    let layout = TensorSpace::new(&model.space, &algebra.space);
    let dim = layout.space.dim();
    let mut bracket = PairTable::new();
    for p in 0..dim {
        let (s1, a1) = layout.pairs[p];
        for q in 0..dim {
            let (s2, a2) = layout.pairs[q];
            let Some(ss) = model.products.get(s1, s2) else { continue };
            let Some(aa) = algebra.bracket.get(a1, a2) else { continue };
            let s = sign(algebra.space.degree(a1) * model.space.degree(s2));
            let mut value = Vector::zero();
            for (i, c) in ss.iter() {
                for (j, e) in aa.iter() {
                    value.add_term(layout.index_of_pair(i, j), &(&s * c) * e);
                }
            }
            bracket.set(p, q, value);
        }
    }
    let mut d_cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for p in 0..dim {
        let (s_i, a_j) = layout.pairs[p];
        let mut v = Vector::zero();
        for (i, c) in model.differential.column(s_i).iter() {
            v.add_term(layout.index_of_pair(i, a_j), c.clone());
        }
        let s = sign(model.space.degree(s_i));
        for (j, c) in algebra.differential.column(a_j).iter() {
            v.add_term(layout.index_of_pair(s_i, j), &s * c);
        }
        if !v.is_zero() {
            d_cols.insert(p, v);
        }
    }
    let differential = GradedMap::from_columns(layout.space.clone(), layout.space.clone(), 1, d_cols)
        .expect("tensor differential is degree +1");
    let dgla = Dgla::new(
        format!("{}⊗{}", model.name, algebra.name),
        layout.space.clone(),
        bracket,
        differential,
    );
    TensorDgla { dgla, layout }
}

/// A graded complex with operators L(x) (degree 0) and I(x) (degree −1) for x
/// in a Lie algebra 𝔤, satisfying the Cartan relations.
#[derive(Debug, Clone)]
pub struct GDiffSpace {
    pub name: String,
    pub g: LieAlgebra,
    pub space: Arc<GradedSpace>,
    pub differential: GradedMap,
    /// Degree-0 operator per 𝔤 basis element.
    pub l_ops: Vec<GradedMap>,
    /// Degree −1 operator per 𝔤 basis element.
    pub i_ops: Vec<GradedMap>,
}

impl GDiffSpace {
    /// Extends `x ↦ op(x)` linearly over a 𝔤 vector.
    fn op_for(ops: &[GradedMap], x: &Vector) -> GradedMap {
        let mut it = x.iter();
        let Some((first, c0)) = it.next() else {
            let probe = &ops[0];
            return GradedMap::zero(probe.source.clone(), probe.target.clone(), probe.degree);
        };
        let mut out = ops[first].scaled(c0);
        for (i, c) in it {
            out = out.add(&ops[i].scaled(c));
        }
        out
    }

    pub fn l_of(&self, x: &Vector) -> GradedMap {
        Self::op_for(&self.l_ops, x)
    }

    pub fn i_of(&self, x: &Vector) -> GradedMap {
        Self::op_for(&self.i_ops, x)
    }

    /// Degree shift: `(V[k])^n = V^{n+k}` with the same operator entries.
    pub fn shifted(&self, k: i64) -> GDiffSpace {
        let space = self.space.shifted(k);
        let remap = |m: &GradedMap| reindex_map(m, space.clone(), space.clone());
        GDiffSpace {
            name: format!("{}[{}]", self.name, k),
            g: self.g.clone(),
            space: space.clone(),
            differential: remap(&self.differential),
            l_ops: self.l_ops.iter().map(&remap).collect(),
            i_ops: self.i_ops.iter().map(&remap).collect(),
        }
    }

    /// All four relation families checked on every (x, y) basis pair of 𝔤,
    /// as operator identities on the whole module.
    pub fn validate(&self) -> Certificate {
        let mut cert = Certificate::new(format!("g-differential space {}", self.name));
        let g = &self.g;
        let n = g.dim();
        cert.record_law("d-squared", d_squared_failures(&self.differential));

        let mut ll = Vec::new();
        let mut li = Vec::new();
        let mut ii = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let bracket = g.bracket.value(a, b);
                let l_bracket = Self::op_for(&self.l_ops, &bracket);
                let i_bracket = Self::op_for(&self.i_ops, &bracket);
                if self.l_ops[a].commutator(&self.l_ops[b]) != l_bracket {
                    ll.push(format!("({}, {})", g.space.label(a), g.space.label(b)));
                }
                if self.l_ops[a].commutator(&self.i_ops[b]) != i_bracket {
                    li.push(format!("({}, {})", g.space.label(a), g.space.label(b)));
                }
                if !self.i_ops[a].graded_commutator(&self.i_ops[b]).is_zero() {
                    ii.push(format!("({}, {})", g.space.label(a), g.space.label(b)));
                }
            }
        }
        cert.record_law("[L,L] = L[,]", ll);
        cert.record_law("[L,I] = I[,]", li);
        cert.record_law("[I,I] = 0", ii);

        let mut cartan = Vec::new();
        for a in 0..n {
            let homotopy = self
                .differential
                .compose(&self.i_ops[a])
                .add(&self.i_ops[a].compose(&self.differential));
            if homotopy != self.l_ops[a] {
                cartan.push(g.space.label(a).to_string());
            }
        }
        cert.record_law("cartan: L = dI + Id", cartan);
        cert
    }
}

/// Rebuilds a map over re-sorted copies of its spaces, matching basis
/// positions by label.
pub fn reindex_map(
    map: &GradedMap,
    new_source: Arc<GradedSpace>,
    new_target: Arc<GradedSpace>,
) -> GradedMap {
    let mut columns: BTreeMap<usize, Vector> = BTreeMap::new();
    for (j, v) in map.columns() {
        let nj = new_source
            .index_of(map.source.label(j))
            .expect("reindex: source labels must match");
        let mut nv = Vector::zero();
        for (i, c) in v.iter() {
            let ni = new_target
                .index_of(map.target.label(i))
                .expect("reindex: target labels must match");
            nv.add_term(ni, c.clone());
        }
        columns.insert(nj, nv);
    }
    GradedMap::from_columns(new_source, new_target, map.degree, columns)
        .expect("reindexing preserves degrees up to the uniform shift")
}

/// The shifted line ℝ[k]: one generator in degree −k, zero differential.
pub fn line_complex(label: &str, k: i64) -> (Arc<GradedSpace>, GradedMap) {
    let space = GradedSpace::new(vec![(label.to_string(), -k)]).expect("single label");
    let d = GradedMap::zero(space.clone(), space.clone(), 1);
    (space, d)
}

/// Cohomology of a complex in one degree, with deterministic representatives.
#[derive(Debug)]
pub struct CohomologyReport {
    pub degree: i64,
    pub dimension: usize,
    /// Closed representatives, linearly independent modulo exact.
    pub representatives: Vec<Vector>,
    pub subquotient: Subquotient,
}

/// `H^degree` of `(space, d)`. Errors when `d² ≠ 0`.
pub fn cohomology(
    space: &Arc<GradedSpace>,
    d: &GradedMap,
    degree: i64,
) -> Result<CohomologyReport, CoreError> {
    if !d.compose(d).is_zero() {
        return Err(CoreError::Rejected("cohomology of a non-complex: d² ≠ 0".into()));
    }
    let cycles = kernel_in_degree(d, degree);
    let boundaries = image_in_degree(d, degree);
    let subquotient = Subquotient::new(space.clone(), &cycles, &boundaries)?;
    Ok(CohomologyReport {
        degree,
        dimension: subquotient.dim(),
        representatives: subquotient.representatives.clone(),
        subquotient,
    })
}

/// Spanning cycles of degree `n`: the kernel of the degree-`n` block of `d`.
pub fn kernel_in_degree(d: &GradedMap, n: i64) -> Vec<Vector> {
    let full = linalg::kernel(d);
    full.representatives
        .iter()
        .filter(|v| v.leading().map(|(i, _)| d.source.degree(i)) == Some(n))
        .cloned()
        .collect()
}

/// Spanning boundaries in degree `n`: images of the degree `n − deg d` block.
pub fn image_in_degree(d: &GradedMap, n: i64) -> Vec<Vector> {
    d.source
        .degree_positions(n - d.degree)
        .iter()
        .map(|&j| d.column(j))
        .filter(|v| !v.is_zero())
        .collect()
}

/// Rank bookkeeping across all degrees; `None` means the complex is acyclic,
/// otherwise the first degree with nonzero cohomology and its dimension.
pub fn complex_acyclicity_witness(
    space: &Arc<GradedSpace>,
    d: &GradedMap,
) -> Option<(i64, usize)> {
    let mut degrees: Vec<i64> = space.degrees().collect();
    degrees.sort_unstable();
    for n in degrees {
        let cycles = kernel_in_degree(d, n);
        let boundaries =
            linalg::SubquotientBasis::subspace(space.clone(), &image_in_degree(d, n));
        let h = cycles.len() - boundaries.dim();
        if h != 0 {
            return Some((n, h));
        }
    }
    None
}

/// A morphism of CDGAs: unital, multiplicative, commutes with d.
#[derive(Debug, Clone)]
pub struct CdgaMorphism {
    pub map: GradedMap,
}

impl CdgaMorphism {
    pub fn validate(&self, source: &Cdga, target: &Cdga) -> Certificate {
        let mut cert = Certificate::new(format!(
            "cdga morphism {} → {}",
            source.name, target.name
        ));
        let mut unital = Vec::new();
        if self.map.apply(&source.unit_vector()) != target.unit_vector() {
            unital.push("unit is not preserved".to_string());
        }
        cert.record_law("unital", unital);

        let mut mult = Vec::new();
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = self.map.apply(&source.products.value(i, j));
                let rhs = target.mul(&self.map.column(i), &self.map.column(j));
                if lhs != rhs {
                    mult.push(format!("({}, {})", source.space.label(i), source.space.label(j)));
                }
            }
        }
        cert.record_law("multiplicative", mult);

        let mut chain = Vec::new();
        let lhs = self.map.compose(&source.differential);
        let rhs = target.differential.compose(&self.map);
        if lhs != rhs {
            chain.push("f∘d ≠ d∘f".to_string());
        }
        cert.record_law("chain-map", chain);
        cert
    }
}

/// A morphism of dglas: linear degree 0, bracket-compatible, commutes with d.
#[derive(Debug, Clone)]
pub struct DglaMorphism {
    pub map: GradedMap,
}

impl DglaMorphism {
    pub fn validate(&self, source: &Dgla, target: &Dgla) -> Certificate {
        let mut cert =
            Certificate::new(format!("dgla morphism {} → {}", source.name, target.name));
        let mut brackets = Vec::new();
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = self.map.apply(&source.bracket.value(i, j));
                let rhs = target.bracket_vec(&self.map.column(i), &self.map.column(j));
                if lhs != rhs {
                    brackets
                        .push(format!("({}, {})", source.space.label(i), source.space.label(j)));
                }
            }
        }
        cert.record_law("bracket-compatible", brackets);

        let mut chain = Vec::new();
        if self.map.compose(&source.differential) != target.differential.compose(&self.map) {
            chain.push("f∘d ≠ d∘f".to_string());
        }
        cert.record_law("chain-map", chain);
        cert
    }
}
