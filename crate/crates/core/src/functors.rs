//! The two current-algebra functors.
//!
//! For a CDGA model S and a dgla A:
//!
//! * `CA(S,A)` is the degree −1 part of S⊗A modulo exact elements, with the
//!   derived bracket `[x, y]_d = [x, dy]`;
//! * `SA(S,A)` is the closed degree 0 part of S⊗A with the plain tensor
//!   bracket.
//!
//! Both are materialized as honest Lie algebras on deterministic subquotient
//! bases, validated exhaustively. They fit into the four-term exact sequence
//! `0 → H⁻¹(S⊗A) → CA(S,A) → SA(S,A) → H⁰(S⊗A) → 0`, which is certified by
//! rank bookkeeping rather than assumed.

use std::collections::BTreeMap;

use crate::certificate::{Certificate, Check};
use crate::constructions::Cone;
use crate::dgla::{
    cohomology, image_in_degree, kernel_in_degree, tensor_dgla, Cdga, CdgaMorphism,
    CohomologyReport, Dgla, DglaMorphism, LieAlgebra, PairTable, TensorDgla,
};
use crate::error::CoreError;
use crate::graded::{GradedMap, GradedSpace, Vector};
use crate::linalg::{image, kernel, SubquotientBasis};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctorKind {
    Ca,
    Sa,
}

impl FunctorKind {
    pub fn name(self) -> &'static str {
        match self {
            FunctorKind::Ca => "CA",
            FunctorKind::Sa => "SA",
        }
    }
}

/// A computed current algebra: an explicit Lie algebra on a subquotient basis
/// of the tensor dgla, with projection and section maps.
pub struct CurrentAlgebra {
    pub kind: FunctorKind,
    pub model: Cdga,
    pub algebra: Dgla,
    pub tensor: TensorDgla,
    pub slice_degree: i64,
    /// Positions of the slice basis inside the tensor space.
    pub slice_positions: Vec<usize>,
    /// CA: quotient of the slice by exact elements. SA: closed subspace.
    pub basis: SubquotientBasis,
    /// Structure constants on `basis.space`.
    pub bracket: PairTable,
}

impl CurrentAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn class_label(&self, i: usize) -> &str {
        self.basis.space.label(i)
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis.space.basis().iter().map(|(l, _)| l.clone()).collect()
    }

    fn tensor_to_slice(&self, v: &Vector) -> Result<Vector, CoreError> {
        let mut out = Vector::zero();
        for (t, c) in v.iter() {
            let label = self.tensor.dgla.space.label(t);
            let s = self.basis.ambient.require(label, "tensor element outside the slice")?;
            out.add_term(s, c.clone());
        }
        Ok(out)
    }

    pub fn slice_to_tensor(&self, v: &Vector) -> Vector {
        Vector::from_terms(v.iter().map(|(s, c)| (self.slice_positions[s], c.clone())))
    }

    /// Class coordinates of a tensor element of the right degree. For SA the
    /// element must be closed, otherwise this errors.
    pub fn class_of_tensor(&self, v: &Vector) -> Result<Vector, CoreError> {
        let sliced = self.tensor_to_slice(v)?;
        match self.kind {
            FunctorKind::Ca => Ok(self.basis.project(&sliced)),
            FunctorKind::Sa => self.basis.coords_of(&sliced, "SA element must be closed"),
        }
    }

    /// The canonical tensor representative of a class vector.
    pub fn representative(&self, class: &Vector) -> Vector {
        self.slice_to_tensor(&self.basis.section.apply(class))
    }

    pub fn bracket_classes(&self, x: &Vector, y: &Vector) -> Vector {
        self.bracket.eval(x, y)
    }

    /// The current algebra as a plain Lie algebra (degrees flattened to 0),
    /// for the Chevalley–Eilenberg machinery.
    pub fn lie_algebra(&self) -> LieAlgebra {
        let space = self.basis.space.flattened();
        let mut bracket = PairTable::new();
        for ((i, j), v) in self.bracket.iter() {
            let reindex = |w: &Vector| -> Vector {
                Vector::from_terms(w.iter().map(|(t, c)| {
                    (space.index_of(self.basis.space.label(t)).unwrap(), c.clone())
                }))
            };
            let ni = space.index_of(self.basis.space.label(i)).unwrap();
            let nj = space.index_of(self.basis.space.label(j)).unwrap();
            bracket.set(ni, nj, reindex(v));
        }
        LieAlgebra {
            name: format!("{}({}, {})", self.kind.name(), self.model.name, self.algebra.name),
            space,
            bracket,
        }
    }

    /// Antisymmetry and Jacobi on the subquotient basis; for CA additionally
    /// that the derived bracket descends: brackets against exact elements
    /// project to zero.
    pub fn validate(&self) -> Certificate {
        let mut cert = Certificate::new(format!(
            "{}({}, {})",
            self.kind.name(),
            self.model.name,
            self.algebra.name
        ));
        let n = self.dim();
        let mut antisym = Vec::new();
        for i in 0..n {
            for j in i..n {
                let defect = self.bracket.value(i, j).add(&self.bracket.value(j, i));
                if !defect.is_zero() {
                    antisym.push(format!("({}, {})", self.class_label(i), self.class_label(j)));
                }
            }
        }
        cert.record_law("antisymmetry", antisym);

        let mut jacobi = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut defect =
                        self.bracket.eval(&Vector::unit(i), &self.bracket.value(j, k));
                    defect.add_scaled(
                        &self.bracket.eval(&self.bracket.value(i, j), &Vector::unit(k)),
                        &-Scalar::one(),
                    );
                    defect.add_scaled(
                        &self.bracket.eval(&Vector::unit(j), &self.bracket.value(i, k)),
                        &-Scalar::one(),
                    );
                    if !defect.is_zero() {
                        jacobi.push(format!(
                            "({}, {}, {})",
                            self.class_label(i),
                            self.class_label(j),
                            self.class_label(k)
                        ));
                    }
                }
            }
        }
        cert.record_law("jacobi", jacobi);

        if self.kind == FunctorKind::Ca {
            let mut descent = Vec::new();
            let t = &self.tensor.dgla;
            for z in image_in_degree(&t.differential, self.slice_degree) {
                for s in 0..self.basis.ambient.dim() {
                    let e = self.slice_to_tensor(&Vector::unit(s));
                    let val = t.bracket_vec(&z, &t.d(&e));
                    let class = self
                        .class_of_tensor(&val)
                        .expect("derived bracket of slice elements stays in the slice");
                    if !class.is_zero() {
                        descent.push(format!(
                            "[exact, d {}] has nonzero class",
                            self.basis.ambient.label(s)
                        ));
                    }
                }
            }
            cert.record_law("derived-bracket-descends", descent);
        }
        cert
    }
}

/// The derived bracket `[x, dy]` in a dgla.
pub fn derived_bracket(t: &Dgla, x: &Vector, y: &Vector) -> Vector {
    t.bracket_vec(x, &t.d(y))
}

/// `CA(S,A) = (S⊗A)⁻¹ / (S⊗A)⁻¹_exact` with the derived bracket, computed on
/// the deterministic quotient basis. The Lie axioms and well-definedness of
/// the bracket are validated eagerly; a failure is an internal-consistency
/// error, not a certificate.
pub fn ca(model: &Cdga, algebra: &Dgla) -> Result<CurrentAlgebra, CoreError> {
    build_current(FunctorKind::Ca, model, algebra)
}

/// `SA(S,A) = (S⊗A)⁰_closed` with the plain tensor bracket.
pub fn sa(model: &Cdga, algebra: &Dgla) -> Result<CurrentAlgebra, CoreError> {
    build_current(FunctorKind::Sa, model, algebra)
}

fn build_current(
    kind: FunctorKind,
    model: &Cdga,
    algebra: &Dgla,
) -> Result<CurrentAlgebra, CoreError> {
    let tensor = tensor_dgla(model, algebra);
    let t = &tensor.dgla;
    let slice_degree = match kind {
        FunctorKind::Ca => -1,
        FunctorKind::Sa => 0,
    };
    let (slice, slice_positions) = t.space.degree_slice(slice_degree);
    let to_slice = |v: &Vector| -> Vector {
        Vector::from_terms(v.iter().map(|(i, c)| {
            (slice.index_of(t.space.label(i)).expect("slice vector"), c.clone())
        }))
    };
    let basis = match kind {
        FunctorKind::Ca => {
            let exact: Vec<Vector> =
                image_in_degree(&t.differential, -1).iter().map(&to_slice).collect();
            SubquotientBasis::quotient(slice.clone(), &exact)
        }
        FunctorKind::Sa => {
            let closed: Vec<Vector> =
                kernel_in_degree(&t.differential, 0).iter().map(&to_slice).collect();
            SubquotientBasis::subspace(slice.clone(), &closed)
        }
    };

    let mut current = CurrentAlgebra {
        kind,
        model: model.clone(),
        algebra: algebra.clone(),
        tensor,
        slice_degree,
        slice_positions,
        basis,
        bracket: PairTable::new(),
    };

    let n = current.dim();
    let mut bracket = PairTable::new();
    for i in 0..n {
        let rep_i = current.representative(&Vector::unit(i));
        for j in 0..n {
            let rep_j = current.representative(&Vector::unit(j));
            let t = &current.tensor.dgla;
            let val = match kind {
                FunctorKind::Ca => derived_bracket(t, &rep_i, &rep_j),
                FunctorKind::Sa => t.bracket_vec(&rep_i, &rep_j),
            };
            bracket.set(i, j, current.class_of_tensor(&val)?);
        }
    }
    current.bracket = bracket;
    current.validate().into_result()?;
    Ok(current)
}

/// The four-term sequence data with every exactness fact checked by rank
/// bookkeeping.
pub struct ExactnessCertificate {
    pub h_minus1: CohomologyReport,
    pub h_zero: CohomologyReport,
    pub ca: CurrentAlgebra,
    pub sa: CurrentAlgebra,
    /// The middle arrow, as a map of class coordinate spaces.
    pub d_map: GradedMap,
    pub rank_d: usize,
    pub certificate: Certificate,
}

impl ExactnessCertificate {
    pub fn passed(&self) -> bool {
        self.certificate.passed()
    }

    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (self.h_minus1.dimension, self.ca.dim(), self.sa.dim(), self.h_zero.dimension)
    }
}

fn subspaces_equal(a: &SubquotientBasis, b: &SubquotientBasis) -> bool {
    a.dim() == b.dim() && a.representatives == b.representatives
}

pub fn four_term_sequence(model: &Cdga, algebra: &Dgla) -> Result<ExactnessCertificate, CoreError> {
    let ca = ca(model, algebra)?;
    let sa = sa(model, algebra)?;
    let t = &ca.tensor.dgla;
    let h_minus1 = cohomology(&t.space, &t.differential, -1)?;
    let h_zero = cohomology(&sa.tensor.dgla.space, &sa.tensor.dgla.differential, 0)?;

    let mut cert = Certificate::new(format!(
        "four-term sequence ({}, {})",
        model.name, algebra.name
    ));

    // H⁻¹ → CA: a cohomology class maps to the CA class of its representative.
    let mut incl_cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for (k, rep) in h_minus1.representatives.iter().enumerate() {
        incl_cols.insert(k, ca.class_of_tensor(rep)?);
    }
    let incl = GradedMap::from_columns(
        h_minus1.subquotient.classes.space.clone(),
        ca.basis.space.clone(),
        0,
        incl_cols,
    )?;

    // d: CA → SA on class representatives.
    let mut d_cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for i in 0..ca.dim() {
        let image = t.d(&ca.representative(&Vector::unit(i)));
        d_cols.insert(i, sa.class_of_tensor(&image)?);
    }
    let d_map = GradedMap::from_columns(ca.basis.space.clone(), sa.basis.space.clone(), 1, d_cols)?;

    // SA → H⁰: a closed element maps to its cohomology class.
    let mut proj_cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for j in 0..sa.dim() {
        let rep = sa.representative(&Vector::unit(j));
        proj_cols.insert(j, h_zero.subquotient.class_of(&rep, "SA representative is closed")?);
    }
    let proj = GradedMap::from_columns(
        sa.basis.space.clone(),
        h_zero.subquotient.classes.space.clone(),
        0,
        proj_cols,
    )?;

    let incl_image = image(&incl);
    let d_kernel = kernel(&d_map);
    let d_image = image(&d_map);
    let proj_kernel = kernel(&proj);
    let rank_d = d_image.dim();

    cert.record(if incl_image.dim() == h_minus1.dimension {
        Check::pass("H⁻¹ → CA injective")
    } else {
        Check::fail(
            "H⁻¹ → CA injective",
            format!("rank {} ≠ dim H⁻¹ {}", incl_image.dim(), h_minus1.dimension),
        )
    });
    cert.record(if subspaces_equal(&incl_image, &d_kernel) {
        Check::pass("exactness at CA: im(H⁻¹) = ker(d)")
    } else {
        Check::fail(
            "exactness at CA: im(H⁻¹) = ker(d)",
            format!("im dim {} vs ker dim {}", incl_image.dim(), d_kernel.dim()),
        )
    });
    cert.record(if subspaces_equal(&d_image, &proj_kernel) {
        Check::pass("exactness at SA: im(d) = ker(SA → H⁰)")
    } else {
        Check::fail(
            "exactness at SA: im(d) = ker(SA → H⁰)",
            format!("im dim {} vs ker dim {}", d_image.dim(), proj_kernel.dim()),
        )
    });
    cert.record(if image(&proj).dim() == h_zero.dimension {
        Check::pass("SA → H⁰ surjective")
    } else {
        Check::fail(
            "SA → H⁰ surjective",
            format!("rank {} ≠ dim H⁰ {}", image(&proj).dim(), h_zero.dimension),
        )
    });
    cert.record(if ca.dim() == h_minus1.dimension + rank_d {
        Check::pass("dim CA = dim H⁻¹ + rank d")
    } else {
        Check::fail(
            "dim CA = dim H⁻¹ + rank d",
            format!("{} ≠ {} + {}", ca.dim(), h_minus1.dimension, rank_d),
        )
    });
    cert.record(if sa.dim() == rank_d + h_zero.dimension {
        Check::pass("dim SA = rank d + dim H⁰")
    } else {
        Check::fail(
            "dim SA = rank d + dim H⁰",
            format!("{} ≠ {} + {}", sa.dim(), rank_d, h_zero.dimension),
        )
    });

    // The middle arrow is a morphism of Lie algebras.
    let mut morphism_failures = Vec::new();
    for i in 0..ca.dim() {
        for j in 0..ca.dim() {
            let lhs = d_map.apply(&ca.bracket.value(i, j));
            let rhs = sa.bracket.eval(&d_map.column(i), &d_map.column(j));
            if lhs != rhs {
                morphism_failures.push(format!("({}, {})", ca.class_label(i), ca.class_label(j)));
            }
        }
    }
    cert.record_law("d: CA → SA is a Lie algebra morphism", morphism_failures);

    Ok(ExactnessCertificate { h_minus1, h_zero, ca, sa, d_map, rank_d, certificate: cert })
}

/// An induced map of current algebras, with its functoriality certificate.
pub struct InducedMap {
    /// Class coordinates map, source classes → target classes.
    pub map: GradedMap,
    pub certificate: Certificate,
}

/// The map `F(S,A) → F(S',A')` induced by a CDGA morphism `f_s: S → S'` and a
/// dgla morphism `f_a: A → A'` (both validated). The tensor-level map is
/// checked to be a chain map and the class-level map to commute with
/// brackets.
pub fn induced_map(
    f_s: &CdgaMorphism,
    f_a: &DglaMorphism,
    source: &CurrentAlgebra,
    target: &CurrentAlgebra,
) -> Result<InducedMap, CoreError> {
    if source.kind != target.kind {
        return Err(CoreError::Rejected("induced map between different functors".into()));
    }
    f_s.validate(&source.model, &target.model).into_result()?;
    f_a.validate(&source.algebra, &target.algebra).into_result()?;

    // Tensor-level f_s ⊗ f_a (both degree 0, no Koszul sign).
    let src_t = &source.tensor;
    let tgt_t = &target.tensor;
    let mut tensor_cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for p in 0..src_t.dgla.dim() {
        let (si, aj) = src_t.layout.pairs[p];
        let mut out = Vector::zero();
        for (i2, c) in f_s.map.column(si).iter() {
            for (j2, e) in f_a.map.column(aj).iter() {
                out.add_term(tgt_t.layout.index_of_pair(i2, j2), c * e);
            }
        }
        if !out.is_zero() {
            tensor_cols.insert(p, out);
        }
    }
    let tensor_map = GradedMap::from_columns(
        src_t.dgla.space.clone(),
        tgt_t.dgla.space.clone(),
        0,
        tensor_cols,
    )?;

    let mut cert = Certificate::new(format!(
        "induced {}({}, {}) → {}({}, {})",
        source.kind.name(),
        source.model.name,
        source.algebra.name,
        target.kind.name(),
        target.model.name,
        target.algebra.name
    ));
    let mut chain = Vec::new();
    if tensor_map.compose(&src_t.dgla.differential)
        != tgt_t.dgla.differential.compose(&tensor_map)
    {
        chain.push("tensor map is not a chain map".to_string());
    }
    cert.record_law("chain-map", chain);

    let mut cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for i in 0..source.dim() {
        let rep = source.representative(&Vector::unit(i));
        cols.insert(i, target.class_of_tensor(&tensor_map.apply(&rep))?);
    }
    let map =
        GradedMap::from_columns(source.basis.space.clone(), target.basis.space.clone(), 0, cols)?;

    let mut bracket_failures = Vec::new();
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            let lhs = map.apply(&source.bracket.value(i, j));
            let rhs = target.bracket.eval(&map.column(i), &map.column(j));
            if lhs != rhs {
                bracket_failures
                    .push(format!("({}, {})", source.class_label(i), source.class_label(j)));
            }
        }
    }
    cert.record_law("commutes with brackets", bracket_failures);

    let cert = cert.into_result()?;
    Ok(InducedMap { map, certificate: cert })
}

/// Preservation of a short exact sequence `0 → A → B → C → 0` (C acyclic)
/// under one functor: the three current algebras with exactness checks.
pub struct SesReport {
    pub certificate: Certificate,
}

/// Checks the input really is a degreewise SES of dglas with acyclic C, then
/// certifies that both induced sequences of current algebras are short exact.
/// A non-acyclic quotient C is refused with its cohomology witness.
pub fn ses_image(
    model: &Cdga,
    a: &Dgla,
    b: &Dgla,
    c: &Dgla,
    i: &DglaMorphism,
    p: &DglaMorphism,
) -> Result<(SesReport, SesReport), CoreError> {
    i.validate(a, b).into_result()?;
    p.validate(b, c).into_result()?;
    if image(&i.map).dim() != a.dim() {
        return Err(CoreError::Rejected("A → B is not injective".into()));
    }
    if image(&p.map).dim() != c.dim() {
        return Err(CoreError::Rejected("B → C is not surjective".into()));
    }
    if !subspaces_equal(&image(&i.map), &kernel(&p.map)) {
        return Err(CoreError::Rejected("im(A → B) ≠ ker(B → C)".into()));
    }
    if let Some((degree, dim)) = crate::dgla::complex_acyclicity_witness(&c.space, &c.differential)
    {
        return Err(CoreError::Rejected(format!(
            "quotient {} is not acyclic: H^{degree} has dimension {dim}",
            c.name
        )));
    }

    let id_s = CdgaMorphism { map: GradedMap::identity(model.space.clone()) };
    let mut reports = Vec::new();
    for kind in [FunctorKind::Ca, FunctorKind::Sa] {
        let build = |x: &Dgla| match kind {
            FunctorKind::Ca => ca(model, x),
            FunctorKind::Sa => sa(model, x),
        };
        let fa_cur = build(a)?;
        let fb_cur = build(b)?;
        let fc_cur = build(c)?;
        let fi = induced_map(&id_s, i, &fa_cur, &fb_cur)?;
        let fp = induced_map(&id_s, p, &fb_cur, &fc_cur)?;
        let mut cert = Certificate::new(format!(
            "{}-image of 0 → {} → {} → {} → 0 over {}",
            kind.name(),
            a.name,
            b.name,
            c.name,
            model.name
        ));
        cert.record(if image(&fi.map).dim() == fa_cur.dim() {
            Check::pass("left map injective")
        } else {
            Check::fail("left map injective", format!("rank {}", image(&fi.map).dim()))
        });
        cert.record(if image(&fp.map).dim() == fc_cur.dim() {
            Check::pass("right map surjective")
        } else {
            Check::fail("right map surjective", format!("rank {}", image(&fp.map).dim()))
        });
        cert.record(if subspaces_equal(&image(&fi.map), &kernel(&fp.map)) {
            Check::pass("exact in the middle")
        } else {
            Check::fail(
                "exact in the middle",
                format!(
                    "im dim {} vs ker dim {}",
                    image(&fi.map).dim(),
                    kernel(&fp.map).dim()
                ),
            )
        });
        reports.push(SesReport { certificate: cert });
    }
    let sa_report = reports.pop().unwrap();
    let ca_report = reports.pop().unwrap();
    Ok((ca_report, sa_report))
}

/// The canonical identification of both current algebras of a cone with the
/// pointwise current algebra A⁰(S)⊗𝔤: explicit mutually inverse maps and
/// exact structure-constant equality, plus `d: CA ≅ SA`.
pub struct CurrentIso {
    pub ca: CurrentAlgebra,
    pub sa: CurrentAlgebra,
    /// Pointwise basis: one entry per (function, 𝔤 basis) pair.
    pub pointwise: Vec<(usize, usize)>,
    pub certificate: Certificate,
}

pub fn current_iso(model: &Cdga, g: &LieAlgebra, cone: &Cone) -> Result<CurrentIso, CoreError> {
    let ca_cur = ca(model, &cone.dgla)?;
    let sa_cur = sa(model, &cone.dgla)?;
    let functions = model.functions().to_vec();
    let mut pointwise = Vec::new();
    for &f in &functions {
        for x in 0..g.dim() {
            pointwise.push((f, x));
        }
    }
    let mut cert = Certificate::new(format!(
        "current identification ({}, {})",
        model.name, g.name
    ));

    // φ⊗x ↦ class of φ⊗I(x) in CA, and of φ⊗L(x) + dφ⊗I(x) in SA.
    let mut to_ca: Vec<Vector> = Vec::new();
    let mut to_sa: Vec<Vector> = Vec::new();
    for &(f, x) in &pointwise {
        let phi = Vector::unit(f);
        let ca_elt = ca_cur.tensor.pure(&phi, &Vector::unit(cone.i_pos[x]));
        to_ca.push(ca_cur.class_of_tensor(&ca_elt)?);
        let sa_elt = sa_cur
            .tensor
            .pure(&phi, &Vector::unit(cone.l_pos[x]))
            .add(&sa_cur.tensor.pure(&model.d(&phi), &Vector::unit(cone.i_pos[x])));
        to_sa.push(sa_cur.class_of_tensor(&sa_elt)?);
    }

    let dims_match = to_ca.len() == ca_cur.dim() && to_sa.len() == sa_cur.dim();
    cert.record(if dims_match {
        Check::pass("dimensions match A⁰⊗𝔤")
    } else {
        Check::fail(
            "dimensions match A⁰⊗𝔤",
            format!("A⁰⊗𝔤 {} vs CA {} vs SA {}", to_ca.len(), ca_cur.dim(), sa_cur.dim()),
        )
    });

    let iso_rank = |cols: &[Vector], dim: usize| {
        let space = GradedSpace::new(
            (0..cols.len()).map(|k| (format!("u{k}"), 0)).collect(),
        )
        .unwrap();
        let map = GradedMap::from_columns(
            space,
            GradedSpace::new((0..dim).map(|k| (format!("v{k}"), 0)).collect()).unwrap(),
            0,
            cols.iter()
                .enumerate()
                .map(|(k, v)| {
                    (k, Vector::from_terms(v.iter().map(|(i, c)| (i, c.clone()))))
                })
                .collect(),
        )
        .unwrap();
        image(&map).dim()
    };
    cert.record(if iso_rank(&to_ca, ca_cur.dim()) == ca_cur.dim() {
        Check::pass("A⁰⊗𝔤 → CA bijective")
    } else {
        Check::fail("A⁰⊗𝔤 → CA bijective", "rank deficient".into())
    });
    cert.record(if iso_rank(&to_sa, sa_cur.dim()) == sa_cur.dim() {
        Check::pass("A⁰⊗𝔤 → SA bijective")
    } else {
        Check::fail("A⁰⊗𝔤 → SA bijective", "rank deficient".into())
    });

    // Pointwise bracket [(f,x), (g,y)] = (fg, [x,y]) pushed through the maps
    // must reproduce the computed structure constants exactly.
    let mut ca_mismatch = Vec::new();
    let mut sa_mismatch = Vec::new();
    for (u, &(f, x)) in pointwise.iter().enumerate() {
        for (v, &(g_idx, y)) in pointwise.iter().enumerate() {
            let product = model.products.value(f, g_idx);
            let gbr = g.bracket.value(x, y);
            let mut expect_ca = Vector::zero();
            let mut expect_sa = Vector::zero();
            for (h, hc) in product.iter() {
                for (z, zc) in gbr.iter() {
                    let k = pointwise
                        .iter()
                        .position(|&(pf, px)| pf == h && px == z)
                        .expect("A⁰ is closed under products");
                    expect_ca.add_scaled(&to_ca[k], &(hc * zc));
                    expect_sa.add_scaled(&to_sa[k], &(hc * zc));
                }
            }
            let got_ca = ca_cur.bracket.eval(&to_ca[u], &to_ca[v]);
            if got_ca != expect_ca {
                ca_mismatch.push(format!(
                    "({}⊗{}, {}⊗{})",
                    model.space.label(f),
                    g.space.label(x),
                    model.space.label(g_idx),
                    g.space.label(y)
                ));
            }
            let got_sa = sa_cur.bracket.eval(&to_sa[u], &to_sa[v]);
            if got_sa != expect_sa {
                sa_mismatch.push(format!(
                    "({}⊗{}, {}⊗{})",
                    model.space.label(f),
                    g.space.label(x),
                    model.space.label(g_idx),
                    g.space.label(y)
                ));
            }
        }
    }
    cert.record_law("CA structure constants are pointwise", ca_mismatch);
    cert.record_law("SA structure constants are pointwise", sa_mismatch);

    // d: CA → SA sends the CA picture of (f,x) to the SA picture of (f,x).
    let mut d_mismatch = Vec::new();
    for (u, &(f, x)) in pointwise.iter().enumerate() {
        let rep = ca_cur.representative(&to_ca[u]);
        let image = ca_cur.tensor.dgla.d(&rep);
        if sa_cur.class_of_tensor(&image)? != to_sa[u] {
            d_mismatch.push(format!("{}⊗{}", model.space.label(f), g.space.label(x)));
        }
    }
    cert.record_law("d: CA → SA matches the identification", d_mismatch);

    Ok(CurrentIso { ca: ca_cur, sa: sa_cur, pointwise, certificate: cert })
}
