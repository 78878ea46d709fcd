//! The product functionals `φ₁`/`φ₀` on scalar tensors, the scalar-tensor
//! valued hermitian form on inner-product families, the induced inner product
//! on the unit-sphere span with exact Gram certificates, and the group-algebra
//! valued module form with its truncations.

use std::collections::BTreeSet;

use num::{One, Zero};

use crate::families::{lcm, ClassId, CoordFamily, Phase, SpaceFamily, Tail, Vector};
use crate::linalg::{self, Mat};
use crate::scalars::{CycScalar, Rational};
use crate::staralgebra::{group_algebra_iso, GroupAlgebraElement};
use crate::tensorcore::{Block, TensorElement};
use crate::{Error, Result};

/// Numeric tolerance for the floating positivity fallback.
pub const PSD_TOL: f64 = 1e-9;

// ---------------------------------------------------------------------------
// The product functionals.

fn require_scalar(s: &TensorElement) -> Result<()> {
    if !s.spaces().is_scalar() {
        return Err(Error::NotOneDimensional);
    }
    Ok(())
}

/// `φ₁`: the trivial-class component contributes its coefficient (the finite
/// product of the overridden coordinates); every other class contributes zero.
pub fn phi1(s: &TensorElement) -> Result<CycScalar> {
    require_scalar(s)?;
    let trivial = ClassId::scalar_one();
    match s.component_at(&trivial) {
        None => Ok(CycScalar::zero()),
        Some(cb) => Ok(cb.block().data()[0].clone()),
    }
}

/// `φ₀`: classes with summable deviation from one (all-ones periodic part,
/// any geometric phases) contribute the exact infinite product
/// `Π_i exp(2πi·c·qⁱ) = exp(2πi·c/(1-q))` per phase, corrected by the section
/// values absorbed into the support; all other classes contribute zero.
pub fn phi0(s: &TensorElement) -> Result<CycScalar> {
    require_scalar(s)?;
    let one = Vector::scalar(CycScalar::one());
    let mut acc = CycScalar::zero();
    for (cl, cb) in s.components() {
        if cl.tail().periodic_part().iter().any(|v| *v != one) {
            continue;
        }
        // Full product of the tail = product of the phase closed forms.
        let mut total = Rational::zero();
        for p in cl.tail().phases() {
            total = total + p.total_exponent();
        }
        let mut term = cb.block().data()[0].mul(&CycScalar::from_phase(&total)?)?;
        // The support positions replaced tail values by block coordinates;
        // divide the tail contribution back out there.
        for &i in cb.support() {
            let s_val = cl.section_value_at(i)?;
            term = term.mul(&s_val.as_scalar().unwrap().inv()?)?;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Hermitian form valued in scalar tensors.

/// Conjugation of a scalar tensor element (classwise conjugate tails and
/// conjugated coefficients).
pub fn scalar_star(s: &TensorElement) -> Result<TensorElement> {
    require_scalar(s)?;
    let mut out = TensorElement::zero(s.spaces().clone());
    for (cl, cb) in s.components() {
        let conj_class = cl.scalar_class_conj()?;
        let data: Vec<CycScalar> = cb.block().data().iter().map(|c| c.conj()).collect();
        let block = Block::from_data(cb.block().dims().to_vec(), data)?;
        let part = TensorElement::from_class_block(conj_class, cb.support().to_vec(), block)?;
        out = out.add(&part)?;
    }
    Ok(out)
}

/// The scalar-tensor valued hermitian form `⟨⊗x_i, ⊗y_i⟩ = ⊗⟨x_i, y_i⟩`,
/// extended sesquilinearly (linear in the first argument).  A zero coordinate
/// pairing collapses the term.
pub fn herm_form(xi: &TensorElement, eta: &TensorElement) -> Result<TensorElement> {
    if xi.spaces() != eta.spaces() {
        return Err(Error::SpaceMismatch);
    }
    if !xi.spaces().has_inner_product() {
        return Err(Error::NoInnerProduct);
    }
    let scalar_spaces = SpaceFamily::scalar();
    let mut out = TensorElement::zero(scalar_spaces.clone());
    for (ca, ba) in xi.components() {
        for (cb, bb) in eta.components() {
            // Pointwise inner products of the two section tails.
            let window = lcm(ca.tail().period(), cb.tail().period());
            let mut values = Vec::with_capacity(window);
            let mut zero_tail = false;
            for r in 0..window {
                let u = &ca.tail().periodic_part()[r % ca.tail().period()];
                let v = &cb.tail().periodic_part()[r % cb.tail().period()];
                let p = u.inner(v)?;
                if p.is_zero() {
                    zero_tail = true;
                    break;
                }
                values.push(Vector::scalar(p));
            }
            if zero_tail {
                continue;
            }
            let mut phases: Vec<Phase> = ca.tail().phases().to_vec();
            for p in cb.tail().phases() {
                phases.push(Phase::new(-p.c().clone(), p.m())?);
            }
            let tail = Tail::new(values, phases)?;
            let class = ClassId::from_parts(scalar_spaces.clone(), tail);

            let support: Vec<usize> = ba
                .support()
                .iter()
                .chain(bb.support())
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let ea = ba.embed_to(&support, ca)?;
            let eb = bb.embed_to(&support, cb)?;
            // Orthonormal coordinate bases: only matching multi-indices pair.
            let mut coeff = CycScalar::zero();
            for (a, b) in ea.block().data().iter().zip(eb.block().data()) {
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                coeff = coeff.add(&a.mul(&b.conj())?)?;
            }
            let block = Block::from_data(vec![1; support.len()], vec![coeff])?;
            let part = TensorElement::from_class_block(class, support, block)?;
            out = out.add(&part)?;
        }
    }
    Ok(out)
}

/// The induced scalar form `⟨ξ, η⟩_{φ₁} = φ₁(⟨ξ, η⟩)`.
///
/// Total on all elements of an inner-product family (it is genuinely
/// indefinite outside the norm-at-most-one span); the positivity contracts
/// live on the certified wrappers below.
pub fn phi1_inner(xi: &TensorElement, eta: &TensorElement) -> Result<CycScalar> {
    phi1(&herm_form(xi, eta)?)
}

// ---------------------------------------------------------------------------
// Certified spans.

/// An element of the unit-sphere span: every component class has unit-norm
/// tail values (equivalently, a combination of tensors of eventually-unit
/// families).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnitSpanElement(TensorElement);

impl UnitSpanElement {
    /// Certify membership from the normal form.
    pub fn certify(elem: TensorElement) -> Result<Self> {
        if !elem.spaces().has_inner_product() {
            return Err(Error::NoInnerProduct);
        }
        for cl in elem.classes() {
            cl.check_unit()?;
        }
        Ok(UnitSpanElement(elem))
    }

    /// Build from strictly unit generators (every coordinate exactly norm 1).
    pub fn from_unit_generators(gens: &[(CycScalar, CoordFamily<Vector>)]) -> Result<Self> {
        let spaces = gens
            .first()
            .map(|(_, x)| x.spaces().clone())
            .ok_or_else(|| Error::Other("need at least one generator".into()))?;
        let mut acc = TensorElement::zero(spaces);
        for (c, x) in gens {
            x.check_all_unit()?;
            acc = acc.add(&TensorElement::theta(x)?.scalar_mul(c))?;
        }
        Self::certify(acc)
    }

    pub fn tensor(&self) -> &TensorElement {
        &self.0
    }

    pub fn into_tensor(self) -> TensorElement {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn norm_sqr(&self) -> Result<CycScalar> {
        phi1_inner(&self.0, &self.0)
    }
}

/// How a positivity certificate was decided.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub enum PsdMethod {
    ExactRational,
    NumericEigen { min_eigenvalue: f64 },
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PsdReport {
    pub psd: bool,
    pub definite: bool,
    pub method: PsdMethod,
}

/// Hermitian Gram matrix of pairwise `φ₁`-inner products.
pub fn gram_matrix(elems: &[TensorElement]) -> Result<Mat> {
    let n = elems.len();
    let mut g = Mat::zero(n, n);
    for r in 0..n {
        for c in 0..n {
            g.set(r, c, phi1_inner(&elems[r], &elems[c])?);
        }
    }
    Ok(g)
}

/// Positive-semidefiniteness certificate: exact pivoted elimination when all
/// entries are rational, floating eigenvalue bound (tolerance `PSD_TOL`)
/// otherwise.  The report names the path taken.
pub fn gram_psd(g: &Mat) -> Result<PsdReport> {
    if !g.is_square() {
        return Err(Error::ShapeMismatch);
    }
    let n = g.rows();
    let mut rational = Vec::with_capacity(n);
    let mut all_rational = true;
    'outer: for r in 0..n {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            match g.at(r, c).as_rational() {
                Some(q) => row.push(q),
                None => {
                    all_rational = false;
                    break 'outer;
                }
            }
        }
        rational.push(row);
    }
    if all_rational {
        Ok(PsdReport {
            psd: linalg::psd_exact_rational(&rational),
            definite: linalg::pd_exact_rational(&rational),
            method: PsdMethod::ExactRational,
        })
    } else {
        let eig = linalg::hermitian_eigenvalues_approx(g);
        let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(PsdReport {
            psd: min >= -PSD_TOL,
            definite: min > PSD_TOL,
            method: PsdMethod::NumericEigen {
                min_eigenvalue: min,
            },
        })
    }
}

// ---------------------------------------------------------------------------
// The norm-at-most-one span and its split.

fn rational_norm_sqr(v: &Vector) -> Result<Rational> {
    v.norm_sqr().as_rational().ok_or_else(|| {
        Error::NotRepresentable("norm certificate needs a rational squared norm".into())
    })
}

/// Split a combination of norm-at-most-one generators into the part that the
/// `φ₁`-form annihilates (tails with infinitely many strict-norm coordinates)
/// and the unit-span part.
///
/// Generators with a unit tail but sub-unit overrides are rejected: they lie
/// in the unit span only after rescaling, which callers must do explicitly.
pub fn decomp_ct(
    gens: &[(CycScalar, CoordFamily<Vector>)],
) -> Result<(TensorElement, TensorElement)> {
    let spaces = gens
        .first()
        .map(|(_, x)| x.spaces().clone())
        .ok_or_else(|| Error::Other("need at least one generator".into()))?;
    if !spaces.has_inner_product() {
        return Err(Error::NoInnerProduct);
    }
    let mut k_part = TensorElement::zero(spaces.clone());
    let mut un_part = TensorElement::zero(spaces);
    let one = Rational::one();
    for (c, x) in gens {
        let mut tail_strict = false;
        for v in x.tail().periodic_part() {
            let n = rational_norm_sqr(v)?;
            if n > one {
                return Err(Error::NonUnitCoordinate(0));
            }
            if n < one {
                tail_strict = true;
            }
        }
        let mut override_strict = None;
        for (i, v) in x.overrides() {
            let n = rational_norm_sqr(v)?;
            if n > one {
                return Err(Error::NonUnitCoordinate(*i));
            }
            if n < one {
                override_strict = Some(*i);
            }
        }
        let part = TensorElement::theta(x)?.scalar_mul(c);
        if tail_strict {
            k_part = k_part.add(&part)?;
        } else if let Some(i) = override_strict {
            return Err(Error::NotInSubspace(format!(
                "generator has a unit tail but a sub-unit override at {i}; rescale it first"
            )));
        } else {
            un_part = un_part.add(&part)?;
        }
    }
    Ok((k_part, un_part))
}

// ---------------------------------------------------------------------------
// Group-algebra valued module form.

/// Truncation `E`: keep only the components whose class is unit-modulus.
pub fn truncate_unit_classes(s: &TensorElement) -> Result<TensorElement> {
    require_scalar(s)?;
    let mut out = TensorElement::zero(s.spaces().clone());
    for (cl, cb) in s.components() {
        if cl.check_unit().is_ok() {
            let part = TensorElement::from_class_block(
                cl.clone(),
                cb.support().to_vec(),
                cb.block().clone(),
            )?;
            out = out.add(&part)?;
        }
    }
    Ok(out)
}

/// The group-algebra valued inner product `Φ∘E∘⟨·,·⟩`.
pub fn module_inner(xi: &UnitSpanElement, eta: &UnitSpanElement) -> Result<GroupAlgebraElement> {
    let h = herm_form(xi.tensor(), eta.tensor())?;
    group_algebra_iso(&truncate_unit_classes(&h)?)
}

/// Validate that a finite set of unit scalar classes is a subgroup.
pub fn check_class_subgroup(g: &[ClassId<Vector>]) -> Result<()> {
    if g.is_empty() {
        return Err(Error::NotASubgroup);
    }
    let set: BTreeSet<&ClassId<Vector>> = g.iter().collect();
    for a in g {
        a.check_unit().map_err(|_| Error::NotASubgroup)?;
        if !set.contains(&a.scalar_class_inv()?) {
            return Err(Error::NotASubgroup);
        }
        for b in g {
            if !set.contains(&a.scalar_class_mul(b)?) {
                return Err(Error::NotASubgroup);
            }
        }
    }
    Ok(())
}

/// Truncation onto an explicit finite subgroup of unit classes, landing in
/// its group algebra.
pub fn truncate_eg(s: &TensorElement, g: &[ClassId<Vector>]) -> Result<GroupAlgebraElement> {
    require_scalar(s)?;
    check_class_subgroup(g)?;
    let keep: BTreeSet<&ClassId<Vector>> = g.iter().collect();
    let mut out = TensorElement::zero(s.spaces().clone());
    for (cl, cb) in s.components() {
        if keep.contains(cl) {
            let part = TensorElement::from_class_block(
                cl.clone(),
                cb.support().to_vec(),
                cb.block().clone(),
            )?;
            out = out.add(&part)?;
        }
    }
    group_algebra_iso(&out)
}

// ---------------------------------------------------------------------------
// The delta-basis picture.

/// Send a unit-class scalar tensor to its weighted delta coordinates
/// `⊗β ↦ φ(β)·δ_{[β]}`.  On our data this is the same map as the
/// group-algebra bridge; the codomain is read with the `ℓ²`-style pairing
/// below instead of the convolution product.
pub fn delta_iso(s: &TensorElement) -> Result<GroupAlgebraElement> {
    group_algebra_iso(s)
}

/// Exact `ℓ²`-style pairing of delta coordinates.
pub fn delta_inner(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> Result<CycScalar> {
    let mut acc = CycScalar::zero();
    for (cl, ca) in a.terms() {
        let cb = b.coefficient(cl);
        if !cb.is_zero() {
            acc = acc.add(&ca.mul(&cb.conj())?)?;
        }
    }
    Ok(acc)
}

/// Canonical coset representative of `ω` modulo the finite subgroup `g`: the
/// structurally smallest element of `{ω·h : h ∈ g}`.
pub fn coset_of(omega: &ClassId<Vector>, g: &[ClassId<Vector>]) -> Result<ClassId<Vector>> {
    check_class_subgroup(g)?;
    let mut best: Option<ClassId<Vector>> = None;
    for h in g {
        let cand = omega.scalar_class_mul(h)?;
        best = Some(match best {
            None => cand,
            Some(b) if cand < b => cand,
            Some(b) => b,
        });
    }
    Ok(best.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational;

    fn one() -> CycScalar {
        CycScalar::one()
    }

    fn sc(n: i64) -> CycScalar {
        CycScalar::from_int(n)
    }

    fn q(n: i64, d: i64) -> CycScalar {
        CycScalar::from_ratio(n, d)
    }

    fn fam(values: Vec<CycScalar>, ovr: Vec<(usize, CycScalar)>) -> CoordFamily<Vector> {
        CoordFamily::scalar_periodic(values, ovr).unwrap()
    }

    fn th(x: &CoordFamily<Vector>) -> TensorElement {
        TensorElement::theta(x).unwrap()
    }

    #[test]
    fn phi1_examples() {
        let x = fam(vec![one()], vec![(0, q(1, 2)), (1, sc(2))]);
        assert!(phi1(&th(&x)).unwrap().is_one());
        let y = fam(vec![sc(-1)], vec![]);
        assert!(phi1(&th(&y)).unwrap().is_zero());
    }

    #[test]
    fn phi0_closed_form() {
        // Π_i exp(2πi/2^i) = exp(2πi·2) = 1.
        let g = CoordFamily::geom_phase(rational(1, 1), 2, vec![]).unwrap();
        assert!(phi0(&th(&g)).unwrap().is_one());
        // c = 1/3, q = 1/2: the product is exp(4πi/3) = ζ₃².
        let g = CoordFamily::geom_phase(rational(1, 3), 2, vec![]).unwrap();
        let expect = CycScalar::root_of_unity(3, 2).unwrap();
        assert_eq!(phi0(&th(&g)).unwrap(), expect);
        // Cross-check the closed form against floating partial products.
        let mut prod = (1.0f64, 0.0f64);
        for i in 0..40 {
            let e = g.tail().phase_exponent_at(i);
            let t = 2.0 * std::f64::consts::PI * crate::linalg::rational_to_f64(&e);
            let f = (t.cos(), t.sin());
            prod = (prod.0 * f.0 - prod.1 * f.1, prod.0 * f.1 + prod.1 * f.0);
        }
        let (re, im) = expect.approx();
        assert!((prod.0 - re).abs() < 1e-6 && (prod.1 - im).abs() < 1e-6);
        // Periodic non-trivial classes vanish; φ₀ extends φ₁ on periodic tails.
        let y = fam(vec![sc(-1)], vec![]);
        assert!(phi0(&th(&y)).unwrap().is_zero());
        let x = fam(vec![one()], vec![(0, q(1, 2))]);
        assert_eq!(phi0(&th(&x)).unwrap(), phi1(&th(&x)).unwrap());
        // Support correction: an override on a phase class divides out the
        // tail value at that index.
        let g = CoordFamily::geom_phase(rational(1, 3), 2, vec![(1, one())]).unwrap();
        let tail_at_1 = g.tail().phase_value_at(1).unwrap();
        let expect2 = expect.mul(&tail_at_1.inv().unwrap()).unwrap();
        assert_eq!(phi0(&th(&g)).unwrap(), expect2);
    }

    #[test]
    fn herm_form_examples() {
        // Unit family pairs to the unit element.
        let pyth = q(3, 5).add(&q(4, 5).mul(&CycScalar::i()).unwrap()).unwrap();
        let u = fam(vec![CycScalar::i()], vec![(0, pyth)]);
        let h = herm_form(&th(&u), &th(&u)).unwrap();
        assert_eq!(h, th(&fam(vec![one()], vec![])));
        // Orthogonal coordinate tails collapse to zero.
        let sp = SpaceFamily::constant(2, true).unwrap();
        let e1 = CoordFamily::periodic(sp.clone(), vec![Vector::basis(2, 0)], vec![]).unwrap();
        let e2 = CoordFamily::periodic(sp, vec![Vector::basis(2, 1)], vec![]).unwrap();
        let h = herm_form(&th(&e1), &th(&e2)).unwrap();
        assert!(h.is_zero());
        // Hermitian symmetry.
        let a = th(&fam(vec![CycScalar::i()], vec![(1, sc(2))]));
        let b = th(&fam(vec![one(), sc(-1)], vec![]));
        let ab = herm_form(&a, &b).unwrap();
        let ba = herm_form(&b, &a).unwrap();
        assert_eq!(scalar_star(&ab).unwrap(), ba);
    }

    #[test]
    fn indefinite_value_on_the_whole_space() {
        // ⟨⊗½ - ⊗2, ⊗½ - ⊗2⟩ = -2 exactly.
        let half = th(&fam(vec![q(1, 2)], vec![]));
        let two = th(&fam(vec![sc(2)], vec![]));
        let xi = half.sub(&two).unwrap();
        assert_eq!(phi1_inner(&xi, &xi).unwrap(), sc(-2));
    }

    #[test]
    fn unit_span_certification() {
        let g = vec![
            (one(), fam(vec![one()], vec![(0, CycScalar::i())])),
            (sc(2), fam(vec![sc(-1)], vec![])),
        ];
        let u = UnitSpanElement::from_unit_generators(&g).unwrap();
        assert!(!u.is_zero());
        // A non-unit generator is rejected.
        let bad = vec![(one(), fam(vec![q(1, 2)], vec![]))];
        assert!(UnitSpanElement::from_unit_generators(&bad).is_err());
        // Certification from normal form: scaled blocks are fine, non-unit
        // classes are not.
        assert!(UnitSpanElement::certify(th(&fam(vec![one()], vec![(0, sc(7))]))).is_ok());
        assert!(UnitSpanElement::certify(th(&fam(vec![q(1, 2)], vec![]))).is_err());
    }

    #[test]
    fn gram_certificates() {
        // Distinct unit classes give the identity Gram matrix.
        let elems = vec![
            th(&fam(vec![one()], vec![])),
            th(&fam(vec![sc(-1)], vec![])),
            th(&fam(vec![CycScalar::i()], vec![])),
        ];
        let g = gram_matrix(&elems).unwrap();
        assert_eq!(g, Mat::identity(3));
        let report = gram_psd(&g).unwrap();
        assert!(report.psd && report.definite);
        assert_eq!(report.method, PsdMethod::ExactRational);
        // A semidefinite example: v and 2v.
        let v = th(&fam(vec![one()], vec![]));
        let g = gram_matrix(&[v.clone(), v.scalar_mul(&sc(2))]).unwrap();
        let report = gram_psd(&g).unwrap();
        assert!(report.psd && !report.definite);
        // Non-rational entries use the numeric path.
        let z8 = CycScalar::root_of_unity(8, 1).unwrap();
        let w = th(&fam(vec![one()], vec![(0, z8)]));
        let g = gram_matrix(&[v.clone(), v.add(&w).unwrap()]).unwrap();
        let report = gram_psd(&g).unwrap();
        assert!(matches!(report.method, PsdMethod::NumericEigen { .. }));
        assert!(report.psd);
    }

    #[test]
    fn decomp_ct_examples() {
        // A strict-norm tail lands in the annihilated part.
        let k_gen = fam(vec![q(1, 2)], vec![]);
        let (k, un) = decomp_ct(&[(one(), k_gen.clone())]).unwrap();
        assert!(!k.is_zero() && un.is_zero());
        // A pure unit generator lands in the unit span.
        let u_gen = fam(vec![CycScalar::i()], vec![]);
        let (k, un) = decomp_ct(&[(one(), u_gen.clone())]).unwrap();
        assert!(k.is_zero() && !un.is_zero());
        // Unit tail with a sub-unit override is rejected.
        let mixed = fam(vec![one()], vec![(0, q(1, 2))]);
        assert!(matches!(
            decomp_ct(&[(one(), mixed)]),
            Err(Error::NotInSubspace(_))
        ));
        // Norm above one violates the certificate.
        let big = fam(vec![sc(2)], vec![]);
        assert!(decomp_ct(&[(one(), big)]).is_err());
        // The annihilated part is orthogonal to everything in the span.
        let (k, _) = decomp_ct(&[(sc(3), k_gen)]).unwrap();
        let probe = th(&fam(vec![one()], vec![(2, CycScalar::i())]));
        assert!(phi1_inner(&probe, &k).unwrap().is_zero());
        assert!(phi1_inner(&k, &k).unwrap().is_zero());
    }

    #[test]
    fn module_inner_examples() {
        let xi = UnitSpanElement::certify(th(&fam(vec![sc(-1)], vec![]))).unwrap();
        let eta = UnitSpanElement::certify(th(&fam(vec![one()], vec![]))).unwrap();
        let m = module_inner(&xi, &eta).unwrap();
        let neg_class = fam(vec![sc(-1)], vec![]).class_of().unwrap();
        assert_eq!(m, GroupAlgebraElement::lambda(neg_class).unwrap());
        // χ of the module form recovers the scalar inner product.
        assert_eq!(m.chi(), phi1_inner(xi.tensor(), eta.tensor()).unwrap());
        let same = module_inner(&xi, &xi).unwrap();
        assert_eq!(same.chi(), phi1_inner(xi.tensor(), xi.tensor()).unwrap());
    }

    #[test]
    fn truncate_to_subgroup() {
        let one_cl = ClassId::scalar_one();
        let neg_cl = fam(vec![sc(-1)], vec![]).class_of().unwrap();
        let g = vec![one_cl.clone(), neg_cl.clone()];
        check_class_subgroup(&g).unwrap();
        // {[1], [i]} is not closed.
        let i_cl = fam(vec![CycScalar::i()], vec![]).class_of().unwrap();
        assert!(check_class_subgroup(&[one_cl.clone(), i_cl]).is_err());
        // A geometric-phase class is killed by the truncation onto g.
        let s = th(&fam(vec![sc(-1)], vec![]))
            .add(&th(
                &CoordFamily::geom_phase(rational(1, 1), 2, vec![]).unwrap()
            ))
            .unwrap();
        let t = truncate_eg(&s, &g).unwrap();
        assert_eq!(t, GroupAlgebraElement::lambda(neg_cl).unwrap());
    }

    #[test]
    fn delta_iso_examples() {
        // ⊗1 ↦ δ_{[1]}.
        let unit = th(&fam(vec![one()], vec![]));
        let d = delta_iso(&unit).unwrap();
        assert_eq!(
            d,
            GroupAlgebraElement::lambda(ClassId::scalar_one()).unwrap()
        );
        // Orthonormality of distinct class images matches the Gram identity.
        let a = delta_iso(&th(&fam(vec![sc(-1)], vec![]))).unwrap();
        assert!(delta_inner(&a, &d).unwrap().is_zero());
        assert!(delta_inner(&a, &a).unwrap().is_one());
        // The pairing matches the φ₁ inner product.
        let x = th(&fam(vec![one()], vec![(0, CycScalar::i())]));
        let y = th(&fam(vec![one()], vec![(1, sc(-1))]));
        assert_eq!(
            delta_inner(&delta_iso(&x).unwrap(), &delta_iso(&y).unwrap()).unwrap(),
            phi1_inner(&x, &y).unwrap()
        );
    }

    #[test]
    fn coset_blocks_partition() {
        let one_cl = ClassId::scalar_one();
        let neg_cl = fam(vec![sc(-1)], vec![]).class_of().unwrap();
        let g = vec![one_cl.clone(), neg_cl.clone()];
        let i_cl = fam(vec![CycScalar::i()], vec![]).class_of().unwrap();
        let minus_i_cl = fam(vec![CycScalar::i().neg()], vec![]).class_of().unwrap();
        // [1] and [-1] share a coset; [i] and [-i] share another.
        assert_eq!(
            coset_of(&one_cl, &g).unwrap(),
            coset_of(&neg_cl, &g).unwrap()
        );
        assert_eq!(
            coset_of(&i_cl, &g).unwrap(),
            coset_of(&minus_i_cl, &g).unwrap()
        );
        assert_ne!(coset_of(&one_cl, &g).unwrap(), coset_of(&i_cl, &g).unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_elem() -> impl Strategy<Value = TensorElement> {
            let unit_scalar = (prop::sample::select(vec![1u32, 2, 4]), 0i64..4)
                .prop_map(|(n, k)| CycScalar::root_of_unity(n, k).unwrap());
            prop::collection::vec(
                (
                    prop::collection::vec(unit_scalar, 1..3),
                    prop::collection::btree_map(0usize..4, -2i64..3, 0..3),
                ),
                1..4,
            )
            .prop_map(|gens| {
                let mut acc = TensorElement::zero(SpaceFamily::scalar());
                for (tail, ovr) in gens {
                    let overrides: Vec<(usize, CycScalar)> = ovr
                        .into_iter()
                        .map(|(i, n)| (i, CycScalar::from_int(n)))
                        .collect();
                    let fam = CoordFamily::scalar_periodic(tail, overrides).unwrap();
                    acc = acc.add(&TensorElement::theta(&fam).unwrap()).unwrap();
                }
                acc
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn sesquilinear_and_hermitian(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
                let s = CycScalar::i();
                // Linear in the first argument.
                let lhs = herm_form(&a.scalar_mul(&s).add(&b).unwrap(), &c).unwrap();
                let rhs = herm_form(&a, &c).unwrap().scalar_mul(&s)
                    .add(&herm_form(&b, &c).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
                // Conjugate symmetry through the star.
                let hf = herm_form(&a, &b).unwrap();
                prop_assert_eq!(scalar_star(&hf).unwrap(), herm_form(&b, &a).unwrap());
                // φ₁ pairing is hermitian.
                let x = phi1_inner(&a, &b).unwrap();
                let y = phi1_inner(&b, &a).unwrap();
                prop_assert_eq!(x.conj(), y);
            }
        }
    }
}
