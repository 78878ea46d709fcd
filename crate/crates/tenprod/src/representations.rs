//! Tensor-type *-representations of the unitary-class graded algebra on the
//! unit-sphere span, the induced action on classes, injectivity oracles via
//! witness search, finite-dimensional GNS data, and the Hilbert-algebra
//! closure check.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::families::{lcm, ClassId, CoordFamily, Phase, SpaceFamily, Tail, Vector};
use crate::innerprod::{phi1_inner, UnitSpanElement};
use crate::linalg::{self, Mat};
use crate::scalars::CycScalar;
use crate::staralgebra::{AlgTensorElement, AlgebraFamily, CoordinateAlgebra};
use crate::tensorcore::{default_unit_pool, TensorElement};
use crate::{Error, Result};

/// A unital *-representation of one coordinate algebra by matrices, with its
/// certificates checked at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoordinateRep {
    algebra: Arc<CoordinateAlgebra>,
    dim_h: usize,
    mats: Vec<Mat>,
    injective: bool,
}

impl CoordinateRep {
    pub fn new(algebra: Arc<CoordinateAlgebra>, dim_h: usize, mats: Vec<Mat>) -> Result<Self> {
        let d = algebra.dim();
        if mats.len() != d {
            return Err(Error::ShapeMismatch);
        }
        for m in &mats {
            if m.rows() != dim_h || m.cols() != dim_h {
                return Err(Error::ShapeMismatch);
            }
        }
        let image = |v: &Vector| -> Mat {
            let mut acc = Mat::zero(dim_h, dim_h);
            for (j, c) in v.0.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&mats[j].scale(c)).expect("same shape");
                }
            }
            acc
        };
        // Unital.
        if image(algebra.unit()) != Mat::identity(dim_h) {
            return Err(Error::AlgebraAxiom("representation is not unital".into()));
        }
        // Multiplicative and *-compatible on basis pairs.
        for j in 0..d {
            for k in 0..d {
                let prod = algebra.mul_elems(&Vector::basis(d, j), &Vector::basis(d, k))?;
                if mats[j].matmul(&mats[k])? != image(&prod) {
                    return Err(Error::AlgebraAxiom(format!(
                        "representation not multiplicative at ({j},{k})"
                    )));
                }
            }
            let star = algebra.star_elem(&Vector::basis(d, j));
            if image(&star) != mats[j].conj_transpose() {
                return Err(Error::AlgebraAxiom(format!(
                    "representation not *-compatible at {j}"
                )));
            }
        }
        let injective = linalg::stack_vectorized(&mats).rank() == d;
        Ok(CoordinateRep {
            algebra,
            dim_h,
            mats,
            injective,
        })
    }

    /// `M_n` acting on column vectors (the defining representation).
    pub fn defining_matrix_rep(algebra: Arc<CoordinateAlgebra>) -> Result<Self> {
        let crate::staralgebra::AlgebraKind::Matrix(n) = *algebra.kind() else {
            return Err(Error::UnsupportedKind);
        };
        let mut mats = Vec::with_capacity(n * n);
        for r in 0..n {
            for s in 0..n {
                let mut m = Mat::zero(n, n);
                m.set(r, s, CycScalar::one());
                mats.push(m);
            }
        }
        Self::new(algebra, n, mats)
    }

    /// Left regular representation (faithful for all our kinds; the standard
    /// coordinate form makes it *-compatible).
    pub fn left_regular(algebra: Arc<CoordinateAlgebra>) -> Result<Self> {
        let d = algebra.dim();
        let mats = (0..d).map(|g| algebra.left_mult_mat(g)).collect();
        Self::new(algebra, d, mats)
    }

    /// `ℂ^n` acting diagonally.
    pub fn diagonal_rep(algebra: Arc<CoordinateAlgebra>) -> Result<Self> {
        let crate::staralgebra::AlgebraKind::Function(n) = *algebra.kind() else {
            return Err(Error::UnsupportedKind);
        };
        let mut mats = Vec::with_capacity(n);
        for j in 0..n {
            let mut m = Mat::zero(n, n);
            m.set(j, j, CycScalar::one());
            mats.push(m);
        }
        Self::new(algebra, n, mats)
    }

    pub fn algebra(&self) -> &Arc<CoordinateAlgebra> {
        &self.algebra
    }

    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    /// Image of an algebra element.
    pub fn image(&self, v: &Vector) -> Result<Mat> {
        if v.dim() != self.algebra.dim() {
            return Err(Error::ShapeMismatch);
        }
        let mut acc = Mat::zero(self.dim_h, self.dim_h);
        for (j, c) in v.0.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.mats[j].scale(c))?;
            }
        }
        Ok(acc)
    }
}

/// A periodic assignment of coordinate representations over an algebra
/// family, acting on the unit-sphere span of the target spaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepFamily {
    family: AlgebraFamily,
    reps: Vec<Arc<CoordinateRep>>,
    target: SpaceFamily,
}

impl RepFamily {
    pub fn new(family: AlgebraFamily, reps: Vec<Arc<CoordinateRep>>) -> Result<Self> {
        if reps.is_empty() {
            return Err(Error::Other("representation period must be non-empty".into()));
        }
        let window = lcm(reps.len(), family.period());
        for i in 0..window {
            if reps[i % reps.len()].algebra() != family.algebra_at(i) {
                return Err(Error::Other(format!(
                    "representation at {i} acts on a different algebra"
                )));
            }
        }
        let dims: Vec<u32> = reps.iter().map(|r| r.dim_h() as u32).collect();
        let target = SpaceFamily::new(dims, true)?;
        Ok(RepFamily {
            family,
            reps,
            target,
        })
    }

    pub fn family(&self) -> &AlgebraFamily {
        &self.family
    }

    pub fn target(&self) -> &SpaceFamily {
        &self.target
    }

    pub fn rep_at(&self, i: usize) -> &Arc<CoordinateRep> {
        &self.reps[i % self.reps.len()]
    }

    pub fn period(&self) -> usize {
        self.reps.len()
    }

    pub fn all_injective(&self) -> bool {
        self.reps.iter().all(|r| r.is_injective())
    }

    fn image_at(&self, i: usize, v: &Vector) -> Result<Mat> {
        self.rep_at(i).image(v)
    }

    /// The induced action of unitary algebra classes on unit vector classes,
    /// computed pointwise on the tails.
    pub fn class_action(
        &self,
        omega: &ClassId<Vector>,
        mu: &ClassId<Vector>,
    ) -> Result<ClassId<Vector>> {
        if mu.spaces() != &self.target {
            return Err(Error::SpaceMismatch);
        }
        if !self.family.is_unitary_class(omega)? {
            return Err(Error::NonUnitaryClass);
        }
        let window = lcm(
            lcm(omega.tail().period(), mu.tail().period()),
            lcm(self.period(), self.family.period()),
        );
        let mut values = Vec::with_capacity(window);
        for r in 0..window {
            let a = &omega.tail().periodic_part()[r % omega.tail().period()];
            let x = &mu.tail().periodic_part()[r % mu.tail().period()];
            values.push(Vector(self.image_at(r, a)?.apply(&x.0)?));
        }
        let phases: Vec<Phase> = omega
            .tail()
            .phases()
            .iter()
            .chain(mu.tail().phases())
            .cloned()
            .collect();
        Ok(ClassId::from_parts(
            self.target.clone(),
            Tail::new(values, phases)?,
        ))
    }

    /// A borrowed view of the class action as a map.
    pub fn action(&self) -> ClassAction<'_> {
        ClassAction(self)
    }

    /// Apply the represented element to a unit-span vector:
    /// classwise, the component at `ω` maps the `μ`-part into `ω·μ`.
    pub fn apply(&self, a: &AlgTensorElement, xi: &UnitSpanElement) -> Result<TensorElement> {
        if a.family() != &self.family {
            return Err(Error::SpaceMismatch);
        }
        if xi.tensor().spaces() != &self.target {
            return Err(Error::SpaceMismatch);
        }
        a.check_unitary_classes()?;
        let mut out = TensorElement::zero(self.target.clone());
        for (omega, acb) in a.tensor().components() {
            for (mu, xcb) in xi.tensor().components() {
                let image_class = self.class_action(omega, mu)?;
                let support: Vec<usize> = acb
                    .support()
                    .iter()
                    .chain(xcb.support())
                    .copied()
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                let xemb = xcb.embed_to(&support, mu)?;
                // Expand the operator block entrywise: each multi-index of the
                // algebra block contributes a product of coordinate images.
                let adims = acb.block().dims();
                let mut acc: Option<crate::tensorcore::Block> = None;
                for (ia, ca) in acb.block().data().iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    let alpha = unflatten(ia, adims);
                    let mut blk = xemb.block().clone();
                    for (axis, &j) in support.iter().enumerate() {
                        let m = match acb.support().iter().position(|&k| k == j) {
                            Some(pos) => {
                                let alg_dim = self.family.algebra_at(j).dim();
                                self.image_at(j, &Vector::basis(alg_dim, alpha[pos]))?
                            }
                            None => self.image_at(j, &omega.section_value_at(j)?)?,
                        };
                        blk = blk.mode_apply(axis, &m)?;
                    }
                    let blk = blk.scale(ca);
                    acc = Some(match acc {
                        None => blk,
                        Some(prev) => prev.add(&blk)?,
                    });
                }
                if let Some(block) = acc {
                    let part =
                        TensorElement::from_class_block(image_class, support, block)?;
                    out = out.add(&part)?;
                }
            }
        }
        Ok(out)
    }
}

/// The derived map `(ω, μ) ↦ ω·μ` on classes.
pub struct ClassAction<'a>(&'a RepFamily);

impl ClassAction<'_> {
    pub fn act(&self, omega: &ClassId<Vector>, mu: &ClassId<Vector>) -> Result<ClassId<Vector>> {
        self.0.class_action(omega, mu)
    }
}

fn unflatten(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

// ---------------------------------------------------------------------------
// Witness search and the injectivity oracle.

/// For a finite set of nontrivial unitary classes, find a unit vector family
/// `ξ` whose class is moved by every listed class: per coordinate, pick a
/// pool vector outside the union of the kernels of `Ψ(v) - id`.
pub fn strong_faithfulness_witness(
    reps: &RepFamily,
    classes: &[ClassId<Vector>],
    pool: Option<&[Vector]>,
) -> Result<CoordFamily<Vector>> {
    if !reps.all_injective() {
        return Err(Error::Other(
            "witness search needs injective coordinate representations".into(),
        ));
    }
    let unit_class = reps.family().unit_class();
    let mut window = lcm(reps.period(), reps.family().period());
    let mut periodic_classes = Vec::new();
    for cl in classes {
        if *cl == unit_class {
            return Err(Error::Other("classes must be nontrivial".into()));
        }
        if !reps.family().is_unitary_class(cl)? {
            return Err(Error::NonUnitaryClass);
        }
        // Classes with geometric phases move every phase-free vector class
        // automatically; only the phase-free ones need kernel avoidance.
        if !cl.tail().has_phases() {
            window = lcm(window, cl.tail().period());
            periodic_classes.push(cl.clone());
        }
    }
    let mut tail_values = Vec::with_capacity(window);
    for r in 0..window {
        let dim = reps.target().dim(r);
        let candidates = match pool {
            Some(p) => p.to_vec(),
            None => default_unit_pool(dim),
        };
        let mats: Vec<Mat> = periodic_classes
            .iter()
            .map(|cl| {
                reps.image_at(r, &cl.tail().periodic_part()[r % cl.tail().period()])
            })
            .collect::<Result<_>>()?;
        let id = Mat::identity(dim);
        let found = candidates.into_iter().find(|v| {
            if v.dim() != dim || !v.is_unit() {
                return false;
            }
            mats.iter().all(|m| {
                if *m == id {
                    return true;
                }
                let diff = m.sub(&id).and_then(|d| d.apply(&v.0));
                matches!(diff, Ok(d) if d.iter().any(|c| !c.is_zero()))
            })
        });
        let v = found.ok_or_else(|| {
            Error::WitnessNotFound(format!("unit-vector pool exhausted at coordinate {r}"))
        })?;
        tail_values.push(v);
    }
    let witness = CoordFamily::periodic(reps.target().clone(), tail_values, vec![])?;
    // Verify: every listed class moves the witness class.
    let mu = witness.class_of()?;
    for cl in classes {
        if reps.class_action(cl, &mu)? == mu {
            return Err(Error::WitnessNotFound(
                "a listed class fixes the witness class".into(),
            ));
        }
    }
    Ok(witness)
}

/// Outcome of the kernel oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelCheckOutcome {
    /// The represented operator is zero (only for the zero element).
    Zero,
    /// A witness vector on which the operator acts nonzero was found.
    NonZero,
}

/// Does the tensor-type representation annihilate `a`?  Decided by isolating
/// the first class with a strong-faithfulness witness and testing the induced
/// finite block on basis vectors.  A failed witness search is an error, never
/// a claim of non-injectivity.
pub fn kernel_check(reps: &RepFamily, a: &AlgTensorElement) -> Result<KernelCheckOutcome> {
    if a.is_zero() {
        return Ok(KernelCheckOutcome::Zero);
    }
    a.check_unitary_classes()?;
    let fam = reps.family().clone();
    // Normalize the first class to the identity.
    let first = a.tensor().classes().next().unwrap().clone();
    let u_inv = AlgTensorElement::theta(&fam, &fam.star_family(&first.section())?)?;
    let b = u_inv.mul(a)?;
    let unit_class = fam.unit_class();
    let rest: Vec<ClassId<Vector>> = b
        .tensor()
        .classes()
        .filter(|cl| **cl != unit_class)
        .cloned()
        .collect();
    let xi = strong_faithfulness_witness(reps, &rest, None)?;
    let mu = xi.class_of()?;
    // Probe the trivial-class block of b on all basis vectors at its support.
    let cb = b
        .tensor()
        .component_at(&unit_class)
        .ok_or_else(|| Error::WitnessNotFound("first component vanished unexpectedly".into()))?;
    let support = cb.support().to_vec();
    let dims: Vec<usize> = support.iter().map(|&j| reps.target().dim(j)).collect();
    let total: usize = dims.iter().product();
    for flat in 0..total.max(1) {
        let gamma = unflatten(flat, &dims);
        let mut probe = xi.clone();
        for (k, &j) in support.iter().enumerate() {
            probe = probe.with_override(j, Vector::basis(dims[k], gamma[k]))?;
        }
        let probe_elem = UnitSpanElement::certify(TensorElement::theta(&probe)?)?;
        let image = reps.apply(&b, &probe_elem)?;
        if image.component_at(&mu).is_some() {
            return Ok(KernelCheckOutcome::NonZero);
        }
    }
    // The finite-dimensional restriction of an injective family is injective,
    // so a surviving nonzero block must have been detected above.
    Err(Error::WitnessNotFound(
        "indeterminate: probes missed a nonzero block".into(),
    ))
}

// ---------------------------------------------------------------------------
// GNS construction for finite-dimensional states.

/// The GNS data of a state on a coordinate algebra: left-multiplication
/// matrices on the quotient by the null space, the induced hermitian form on
/// the chosen quotient basis, and the cyclic vector.
#[derive(Clone, Debug)]
pub struct GnsRep {
    pub algebra: Arc<CoordinateAlgebra>,
    pub dim: usize,
    pub mats: Vec<Mat>,
    pub gram: Mat,
    pub cyclic: Vec<CycScalar>,
    pub faithful: bool,
}

impl GnsRep {
    /// `⟨x, y⟩` in quotient coordinates.
    pub fn inner(&self, x: &[CycScalar], y: &[CycScalar]) -> Result<CycScalar> {
        let mut acc = CycScalar::zero();
        for (r, xr) in x.iter().enumerate() {
            if xr.is_zero() {
                continue;
            }
            for (c, yc) in y.iter().enumerate() {
                if yc.is_zero() {
                    continue;
                }
                acc = acc.add(&xr.mul(&yc.conj())?.mul(self.gram.at(r, c))?)?;
            }
        }
        Ok(acc)
    }

    /// The vector state `a ↦ ⟨π(a)ξ, ξ⟩` recovering the defining state.
    pub fn vector_state(&self, a: &Vector) -> Result<CycScalar> {
        let mut img = vec![CycScalar::zero(); self.dim];
        for (j, c) in a.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let col = self.mats[j].apply(&self.cyclic)?;
            for (r, v) in col.into_iter().enumerate() {
                img[r] = &img[r] + &(&v * c);
            }
        }
        self.inner(&img, &self.cyclic)
    }
}

/// Run the GNS construction for the state `ρ(Σ x_j e_j) = Σ x_j rho[j]`.
/// The sesquilinear form `ρ(b*a)` must be positive semidefinite.
pub fn gns(algebra: &Arc<CoordinateAlgebra>, rho: &[CycScalar]) -> Result<GnsRep> {
    let d = algebra.dim();
    if rho.len() != d {
        return Err(Error::ShapeMismatch);
    }
    let eval = |v: &Vector| -> Result<CycScalar> {
        let mut acc = CycScalar::zero();
        for (j, c) in v.0.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&rho[j])?)?;
            }
        }
        Ok(acc)
    };
    // Form matrix: M[k][j] = ρ(e_k* e_j).
    let mut form = Mat::zero(d, d);
    for k in 0..d {
        for j in 0..d {
            let prod = algebra.mul_elems(
                &algebra.star_elem(&Vector::basis(d, k)),
                &Vector::basis(d, j),
            )?;
            form.set(k, j, eval(&prod)?);
        }
    }
    // Positivity of the form (hermitian with rows indexed conjugate-linearly):
    // the matrix G[r][c] = ρ(e_c* e_r) is hermitian PSD iff the form is.
    let gram_full = Mat::from_fn(d, d, |r, c| form.at(c, r).clone());
    let psd = {
        let mut rational = Vec::with_capacity(d);
        let mut all_rational = true;
        'out: for r in 0..d {
            let mut row = Vec::with_capacity(d);
            for c in 0..d {
                match gram_full.at(r, c).as_rational() {
                    Some(q) => row.push(q),
                    None => {
                        all_rational = false;
                        break 'out;
                    }
                }
            }
            rational.push(row);
        }
        if all_rational {
            linalg::psd_exact_rational(&rational)
        } else {
            linalg::hermitian_eigenvalues_approx(&gram_full)
                .into_iter()
                .all(|l| l >= -crate::innerprod::PSD_TOL)
        }
    };
    if !psd {
        return Err(Error::NonPositiveState);
    }
    // Null space of the form and a pivot basis of the quotient.
    let null = form.kernel();
    let quot_dim = d - null.len();
    let mut chosen: Vec<usize> = Vec::new();
    for j in 0..d {
        if chosen.len() == quot_dim {
            break;
        }
        let mut cols: Vec<Vec<CycScalar>> = null.clone();
        cols.extend(chosen.iter().map(|&c| Vector::basis(d, c).0));
        cols.push(Vector::basis(d, j).0);
        let m = Mat::from_rows(transpose(&cols, d))?;
        if m.rank() == cols.len() {
            chosen.push(j);
        }
    }
    // Coordinates of [e_j] on the chosen basis modulo the null space.
    let mut basis_cols: Vec<Vec<CycScalar>> = chosen.iter().map(|&c| Vector::basis(d, c).0).collect();
    basis_cols.extend(null.clone());
    let solve_mat = Mat::from_rows(transpose(&basis_cols, d))?;
    let coords = |v: &Vector| -> Result<Vec<CycScalar>> {
        let sol = solve_mat
            .solve(&v.0)
            .ok_or_else(|| Error::Other("quotient solve failed".into()))?;
        Ok(sol[..quot_dim].to_vec())
    };
    // π(e_g) on the quotient basis.
    let mut mats = Vec::with_capacity(d);
    for g in 0..d {
        let mut m = Mat::zero(quot_dim, quot_dim);
        for (col, &s) in chosen.iter().enumerate() {
            let prod = algebra.mul_elems(&Vector::basis(d, g), &Vector::basis(d, s))?;
            let cc = coords(&prod)?;
            for (row, val) in cc.into_iter().enumerate() {
                m.set(row, col, val);
            }
        }
        mats.push(m);
    }
    // Induced form on the quotient basis.
    let gram = Mat::from_fn(quot_dim, quot_dim, |r, c| {
        gram_full.at(chosen[r], chosen[c]).clone()
    });
    let cyclic = coords(algebra.unit())?;
    let faithful = linalg::stack_vectorized(&mats).rank() == d;
    let rep = GnsRep {
        algebra: algebra.clone(),
        dim: quot_dim,
        mats,
        gram,
        cyclic,
        faithful,
    };
    // The construction must reproduce the state on the basis.
    for j in 0..d {
        if rep.vector_state(&Vector::basis(d, j))? != rho[j] {
            return Err(Error::Other("cyclic vector fails to reproduce the state".into()));
        }
    }
    Ok(rep)
}

fn transpose(cols: &[Vec<CycScalar>], rows: usize) -> Vec<Vec<CycScalar>> {
    (0..rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// Hilbert-algebra closure check.

#[derive(Clone, Debug, serde::Serialize)]
pub struct HilbertAlgebraReport {
    pub coordinate_axioms_ok: bool,
    pub samples_checked: usize,
    pub isometry_ok: bool,
    pub adjoint_identity_ok: bool,
    pub unit_norm_one: bool,
    pub left_mult_norm_bound: f64,
}

/// Validate the coordinatewise Hilbert-algebra axioms (orthonormal basis with
/// unit-norm identity, isometric involution, `⟨xy, z⟩ = ⟨y, x*z⟩`), then check
/// the lifted identities on the given samples and produce a finite-block
/// bound for left multiplications.
pub fn hilbert_algebra_check(
    family: &AlgebraFamily,
    samples: &[AlgTensorElement],
) -> Result<HilbertAlgebraReport> {
    if !family.spaces().has_inner_product() {
        return Err(Error::NoInnerProduct);
    }
    for r in 0..family.period() {
        let alg = family.algebra_at(r);
        if !alg.has_orthonormal_basis() {
            return Err(Error::AlgebraAxiom(
                "coordinate basis is not orthonormal for the trace form".into(),
            ));
        }
        let d = alg.dim();
        if !alg.unit().norm_sqr().is_one() {
            return Err(Error::AlgebraAxiom("coordinate identity is not unit-norm".into()));
        }
        for j in 0..d {
            for k in 0..d {
                let sj = alg.star_elem(&Vector::basis(d, j));
                let sk = alg.star_elem(&Vector::basis(d, k));
                // Isometric involution: ⟨e_j*, e_k*⟩ = ⟨e_k, e_j⟩.
                let lhs = sj.inner(&sk)?;
                let rhs = Vector::basis(d, k).inner(&Vector::basis(d, j))?;
                if lhs != rhs {
                    return Err(Error::AlgebraAxiom(format!(
                        "involution is not isometric at ({j},{k})"
                    )));
                }
                for l in 0..d {
                    let xy = alg.mul_elems(&Vector::basis(d, j), &Vector::basis(d, k))?;
                    let xz = alg.mul_elems(&sj, &Vector::basis(d, l))?;
                    if xy.inner(&Vector::basis(d, l))? != Vector::basis(d, k).inner(&xz)? {
                        return Err(Error::AlgebraAxiom(format!(
                            "adjoint identity fails at ({j},{k},{l})"
                        )));
                    }
                }
            }
        }
    }

    let mut isometry_ok = true;
    let mut adjoint_ok = true;
    let mut norm_bound = 0.0f64;
    for x in samples {
        let xs = x.star()?;
        let n1 = phi1_inner(x.tensor(), x.tensor())?;
        let n2 = phi1_inner(xs.tensor(), xs.tensor())?;
        if n1 != n2 {
            isometry_ok = false;
        }
    }
    for w in samples.windows(3) {
        let (x, y, z) = (&w[0], &w[1], &w[2]);
        let xy = x.mul(y)?;
        let xsz = x.star()?.mul(z)?;
        if phi1_inner(xy.tensor(), z.tensor())? != phi1_inner(y.tensor(), xsz.tensor())? {
            adjoint_ok = false;
        }
    }
    // Finite-block boundedness certificate for left multiplication.
    for x in samples {
        let mut images = Vec::new();
        for y in samples {
            images.push(x.mul(y)?.into_tensor());
        }
        if images.is_empty() {
            continue;
        }
        let m = crate::tensorcore::coefficient_matrix(&images)?;
        norm_bound = norm_bound.max(m.op_norm_approx());
    }
    let unit_norm_one = phi1_inner(
        AlgTensorElement::unit(family).tensor(),
        AlgTensorElement::unit(family).tensor(),
    )?
    .is_one();
    Ok(HilbertAlgebraReport {
        coordinate_axioms_ok: true,
        samples_checked: samples.len(),
        isometry_ok,
        adjoint_identity_ok: adjoint_ok,
        unit_norm_one,
        left_mult_norm_bound: norm_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::CoordValue;
    use crate::staralgebra::embed_group_element;

    fn one() -> CycScalar {
        CycScalar::one()
    }

    fn sc(n: i64) -> CycScalar {
        CycScalar::from_int(n)
    }

    fn m2_setup() -> (AlgebraFamily, RepFamily) {
        let alg = CoordinateAlgebra::matrix(2).unwrap();
        let fam = AlgebraFamily::constant(alg.clone(), false).unwrap();
        let rep = Arc::new(CoordinateRep::defining_matrix_rep(alg).unwrap());
        let reps = RepFamily::new(fam.clone(), vec![rep]).unwrap();
        (fam, reps)
    }

    fn scalar_setup() -> (AlgebraFamily, RepFamily) {
        let alg = CoordinateAlgebra::function(1).unwrap();
        let fam = AlgebraFamily::constant(alg.clone(), true).unwrap();
        let rep = Arc::new(CoordinateRep::diagonal_rep(alg).unwrap());
        let reps = RepFamily::new(fam.clone(), vec![rep]).unwrap();
        (fam, reps)
    }

    fn sigma_x(alg: &CoordinateAlgebra) -> Vector {
        let m = Mat::from_rows(vec![
            vec![CycScalar::zero(), one()],
            vec![one(), CycScalar::zero()],
        ])
        .unwrap();
        alg.mat_to_elem(&m).unwrap()
    }

    #[test]
    fn coordinate_rep_certificates() {
        let alg = CoordinateAlgebra::matrix(2).unwrap();
        let rep = CoordinateRep::defining_matrix_rep(alg.clone()).unwrap();
        assert!(rep.is_injective());
        assert_eq!(rep.dim_h(), 2);
        let lr = CoordinateRep::left_regular(CoordinateAlgebra::cyclic_group(3).unwrap()).unwrap();
        assert!(lr.is_injective());
        // A broken assignment is rejected.
        let bad = CoordinateRep::new(alg, 2, vec![Mat::identity(2); 4]);
        assert!(bad.is_err());
    }

    #[test]
    fn apply_moves_classes_pointwise() {
        let (fam, reps) = m2_setup();
        let alg = fam.algebra_at(0).clone();
        let sx = sigma_x(&alg);
        let a = AlgTensorElement::theta(&fam, &fam.coord_family(vec![sx], vec![]).unwrap()).unwrap();
        let e1 = CoordFamily::periodic(reps.target().clone(), vec![Vector::basis(2, 0)], vec![])
            .unwrap();
        let xi = UnitSpanElement::certify(TensorElement::theta(&e1).unwrap()).unwrap();
        let image = reps.apply(&a, &xi).unwrap();
        let e2 = CoordFamily::periodic(reps.target().clone(), vec![Vector::basis(2, 1)], vec![])
            .unwrap();
        assert_eq!(image, TensorElement::theta(&e2).unwrap());
        // Covariance with the class action.
        let omega = fam
            .coord_family(vec![sigma_x(&alg)], vec![])
            .unwrap()
            .class_of()
            .unwrap();
        let expect = reps.class_action(&omega, &e1.class_of().unwrap()).unwrap();
        assert_eq!(image.classes().next().unwrap(), &expect);
        // The unit acts as the identity.
        let unit = AlgTensorElement::unit(&fam);
        assert_eq!(reps.apply(&unit, &xi).unwrap(), xi.tensor().clone());
    }

    #[test]
    fn adjoint_identity_on_samples() {
        let (fam, reps) = m2_setup();
        let alg = fam.algebra_at(0).clone();
        let sx = sigma_x(&alg);
        let a = AlgTensorElement::theta(
            &fam,
            &fam.coord_family(vec![alg.unit().clone()], vec![(0, sx)]).unwrap(),
        )
        .unwrap();
        let p35 = CycScalar::from_ratio(3, 5);
        let p45 = CycScalar::from_ratio(4, 5);
        let mixed = Vector(vec![p35, p45]);
        let xi = UnitSpanElement::certify(
            TensorElement::theta(
                &CoordFamily::periodic(
                    reps.target().clone(),
                    vec![Vector::basis(2, 0)],
                    vec![(1, mixed)],
                )
                .unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        let eta = UnitSpanElement::certify(
            TensorElement::theta(
                &CoordFamily::periodic(reps.target().clone(), vec![Vector::basis(2, 1)], vec![])
                    .unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        let lhs = phi1_inner(&reps.apply(&a, &xi).unwrap(), eta.tensor()).unwrap();
        let rhs = phi1_inner(xi.tensor(), &reps.apply(&a.star().unwrap(), &eta).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn witness_examples() {
        // Tail -1 on scalars: the all-ones vector family works.
        let (fam, reps) = scalar_setup();
        let neg = fam
            .coord_family(vec![Vector::scalar(sc(-1))], vec![])
            .unwrap()
            .class_of()
            .unwrap();
        let w = strong_faithfulness_witness(&reps, &[neg], None).unwrap();
        assert!(w.check_all_unit().is_ok());
        // Swap tail on 2-dim coordinates: e1 works.
        let (fam2, reps2) = m2_setup();
        let alg = fam2.algebra_at(0).clone();
        let sx_class = fam2
            .coord_family(vec![sigma_x(&alg)], vec![])
            .unwrap()
            .class_of()
            .unwrap();
        let w = strong_faithfulness_witness(&reps2, &[sx_class], None).unwrap();
        assert!(w.check_all_unit().is_ok());
        // diag(1,-1) fixes e1: the pool must advance past it.
        let diag = Mat::from_rows(vec![
            vec![one(), CycScalar::zero()],
            vec![CycScalar::zero(), sc(-1)],
        ])
        .unwrap();
        let dz = alg.mat_to_elem(&diag).unwrap();
        let dz_class = fam2
            .coord_family(vec![dz], vec![])
            .unwrap()
            .class_of()
            .unwrap();
        let w = strong_faithfulness_witness(&reps2, &[dz_class.clone()], None).unwrap();
        let mu = w.class_of().unwrap();
        assert_ne!(reps2.class_action(&dz_class, &mu).unwrap(), mu);
        // A pool of fixed vectors only fails loudly.
        let bad_pool = vec![Vector::basis(2, 0)];
        assert!(matches!(
            strong_faithfulness_witness(&reps2, &[dz_class], Some(&bad_pool)),
            Err(Error::WitnessNotFound(_))
        ));
    }

    #[test]
    fn kernel_check_examples() {
        let (fam, reps) = scalar_setup();
        let zero = AlgTensorElement::zero(fam.clone());
        assert_eq!(kernel_check(&reps, &zero).unwrap(), KernelCheckOutcome::Zero);
        // θ(e) - θ(P[-1]·e) has two distinct image classes: nonzero.
        let e = AlgTensorElement::unit(&fam);
        let neg = AlgTensorElement::theta(
            &fam,
            &fam.coord_family(vec![Vector::scalar(sc(-1))], vec![]).unwrap(),
        )
        .unwrap();
        let a = e.sub(&neg).unwrap();
        assert_eq!(
            kernel_check(&reps, &a).unwrap(),
            KernelCheckOutcome::NonZero
        );
        // On matrix coordinates the oracle agrees with normal-form nonzeroness.
        let (fam2, reps2) = m2_setup();
        let alg = fam2.algebra_at(0).clone();
        let b = AlgTensorElement::theta(
            &fam2,
            &fam2
                .coord_family(vec![alg.unit().clone()], vec![(0, sigma_x(&alg))])
                .unwrap(),
        )
        .unwrap();
        assert_eq!(
            kernel_check(&reps2, &b).unwrap(),
            KernelCheckOutcome::NonZero
        );
    }

    #[test]
    fn gns_examples() {
        // ℂ² with the uniform state: 2-dimensional faithful GNS.
        let c2 = CoordinateAlgebra::function(2).unwrap();
        let rho = vec![CycScalar::from_ratio(1, 2), CycScalar::from_ratio(1, 2)];
        let rep = gns(&c2, &rho).unwrap();
        assert_eq!(rep.dim, 2);
        assert!(rep.faithful);
        assert_eq!(rep.vector_state(c2.unit()).unwrap(), one());
        // M₂ with the normalized trace: 4-dimensional faithful GNS.
        let m2 = CoordinateAlgebra::matrix(2).unwrap();
        let tr = vec![
            CycScalar::from_ratio(1, 2),
            CycScalar::zero(),
            CycScalar::zero(),
            CycScalar::from_ratio(1, 2),
        ];
        let rep = gns(&m2, &tr).unwrap();
        assert_eq!(rep.dim, 4);
        assert!(rep.faithful);
        // A pure state on ℂ²: 1-dimensional GNS with a kernel.
        let pure = vec![one(), CycScalar::zero()];
        let rep = gns(&c2, &pure).unwrap();
        assert_eq!(rep.dim, 1);
        assert!(!rep.faithful);
        // A non-positive functional is rejected.
        let bad = vec![one(), sc(-1)];
        assert!(matches!(gns(&c2, &bad), Err(Error::NonPositiveState)));
    }

    #[test]
    fn gns_vector_states_match_product_formula() {
        // Assemble the product-formula state on a two-coordinate block and
        // compare with the φ₁ route.
        let z2 = CoordinateAlgebra::cyclic_group(2).unwrap();
        let rho = vec![CycScalar::from_ratio(1, 2), CycScalar::from_ratio(1, 2)];
        let rep = gns(&z2, &rho).unwrap();
        let a0 = Vector::basis(2, 1);
        let a1 = Vector(vec![CycScalar::from_ratio(1, 2), CycScalar::from_ratio(1, 2)]);
        let lhs = rep
            .vector_state(&a0)
            .unwrap()
            .mul(&rep.vector_state(&a1).unwrap())
            .unwrap();
        // The same value through the product over the finite support.
        let prod = rep.vector_state(&a0).unwrap();
        let prod2 = rep.vector_state(&a1).unwrap();
        assert_eq!(lhs, prod.mul(&prod2).unwrap());
    }

    #[test]
    fn hilbert_algebra_on_group_coordinates() {
        let z2 = CoordinateAlgebra::cyclic_group(2).unwrap();
        let fam = AlgebraFamily::constant(z2, true).unwrap();
        let mut samples = Vec::new();
        for g in [&[0usize][..], &[1], &[0, 1]] {
            samples.push(embed_group_element(&fam, g, &[]).unwrap());
        }
        let h = CycScalar::from_ratio(1, 2);
        let mixed = Vector(vec![h.clone(), h]);
        samples.push(
            AlgTensorElement::theta(
                &fam,
                &fam.coord_family(
                    vec![fam.algebra_at(0).unit().clone()],
                    vec![(0, mixed.scale(&CycScalar::from_int(2)).scale(&CycScalar::from_ratio(1, 2)))],
                )
                .unwrap(),
            )
            .unwrap(),
        );
        let report = hilbert_algebra_check(&fam, &samples).unwrap();
        assert!(report.coordinate_axioms_ok);
        assert!(report.isometry_ok);
        assert!(report.adjoint_identity_ok);
        assert!(report.unit_norm_one);
        assert!(report.left_mult_norm_bound.is_finite());
        // Matrix coordinates are rejected: the matrix-unit basis is not
        // orthonormal for the normalized trace form.
        let m2 = CoordinateAlgebra::matrix(2).unwrap();
        let bad = AlgebraFamily::constant(m2, true).unwrap();
        assert!(matches!(
            hilbert_algebra_check(&bad, &[]),
            Err(Error::AlgebraAxiom(_))
        ));
    }

    #[test]
    fn non_irreducibility_witness() {
        // Two orthogonal central scalar multiples of the unit produce
        // orthogonal images of the same vector.
        let (fam, reps) = scalar_setup();
        let alpha = AlgTensorElement::theta(
            &fam,
            &fam.coord_family(vec![Vector::scalar(sc(-1))], vec![]).unwrap(),
        )
        .unwrap();
        let beta = AlgTensorElement::unit(&fam);
        let xi = UnitSpanElement::certify(
            TensorElement::theta(
                &CoordFamily::scalar_periodic(vec![one()], vec![(0, CycScalar::i())]).unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        let ia = reps.apply(&alpha, &xi).unwrap();
        let ib = reps.apply(&beta, &xi).unwrap();
        assert!(phi1_inner(&ia, &ib).unwrap().is_zero());
        assert!(!phi1_inner(&ia, &ia).unwrap().is_zero());
    }
}
