//! The unitary-class graded *-algebra of an infinite family of coordinate
//! algebras.
//!
//! Coordinate algebras are finite-dimensional unital *-algebras given by
//! structure constants (matrix algebras, function algebras, group algebras of
//! finite groups), validated eagerly at construction.  On top of the tensor
//! normal form this module provides the graded product and involution, inner
//! actions by unitary families, the cocycle twisted action of the unitary
//! class group on the trivial-class part (with canonical or deliberately
//! perturbed sections), the bridge from scalar tensors to the group algebra
//! of unit-modulus classes, and the center machinery.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::families::{lcm, ClassId, CoordFamily, Phase, SpaceFamily, Tail, Vector};
use crate::linalg::Mat;
use crate::scalars::CycScalar;
use crate::tensorcore::{Block, TensorElement};
use crate::{Error, Result};

/// What kind of coordinate algebra this is; used to pick unitary pools and to
/// gate the operations that need the algebra spanned by its unitaries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgebraKind {
    /// Full matrix algebra `M_n` in the matrix-unit basis (row-major).
    Matrix(usize),
    /// `ℂ^n` with pointwise product, standard basis.
    Function(usize),
    /// Group algebra of a finite group given by its multiplication table.
    GroupAlgebra {
        name: String,
        table: Vec<Vec<usize>>,
        inverse: Vec<usize>,
        identity: usize,
    },
}

/// A finite-dimensional unital *-algebra with a fixed basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoordinateAlgebra {
    kind: AlgebraKind,
    dim: usize,
    /// Sparse structure constants: `e_j·e_k = Σ (l, c) c·e_l`.
    mult: Vec<Vec<Vec<(usize, CycScalar)>>>,
    unit: Vector,
    /// `e_j* = Σ_r invol[j][r]·e_r`.
    invol: Vec<Vec<CycScalar>>,
    /// Whether the basis is orthonormal for the canonical trace-style inner
    /// product with `‖e‖ = 1` (true for group algebras, false for `M_n`).
    orthonormal_basis: bool,
}

impl CoordinateAlgebra {
    /// `M_n` with matrix units `e_{rs}` (basis index `r·n + s`).
    pub fn matrix(n: usize) -> Result<Arc<Self>> {
        let dim = n * n;
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    for u in 0..n {
                        if s == t {
                            mult[r * n + s][t * n + u].push((r * n + u, CycScalar::one()));
                        }
                    }
                }
            }
        }
        let mut unit = vec![CycScalar::zero(); dim];
        for r in 0..n {
            unit[r * n + r] = CycScalar::one();
        }
        let mut invol = vec![vec![CycScalar::zero(); dim]; dim];
        for r in 0..n {
            for s in 0..n {
                invol[r * n + s][s * n + r] = CycScalar::one();
            }
        }
        let alg = CoordinateAlgebra {
            kind: AlgebraKind::Matrix(n),
            dim,
            mult,
            unit: Vector(unit),
            invol,
            orthonormal_basis: false,
        };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    /// `ℂ^n` with the pointwise product.
    pub fn function(n: usize) -> Result<Arc<Self>> {
        let mut mult = vec![vec![Vec::new(); n]; n];
        for j in 0..n {
            mult[j][j].push((j, CycScalar::one()));
        }
        let unit = Vector(vec![CycScalar::one(); n]);
        let mut invol = vec![vec![CycScalar::zero(); n]; n];
        for (j, row) in invol.iter_mut().enumerate() {
            row[j] = CycScalar::one();
        }
        let alg = CoordinateAlgebra {
            kind: AlgebraKind::Function(n),
            dim: n,
            mult,
            unit,
            invol,
            orthonormal_basis: true,
        };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    /// Group algebra from a multiplication table `table[g][h] = gh`.
    pub fn group_algebra(name: &str, table: Vec<Vec<usize>>) -> Result<Arc<Self>> {
        let n = table.len();
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::AlgebraAxiom("multiplication table not square".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::AlgebraAxiom("group table has no identity".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::AlgebraAxiom(format!("element {g} has no inverse")))?;
        }
        let mut mult = vec![vec![Vec::new(); n]; n];
        for g in 0..n {
            for h in 0..n {
                if table[g][h] >= n {
                    return Err(Error::AlgebraAxiom("table entry out of range".into()));
                }
                mult[g][h].push((table[g][h], CycScalar::one()));
            }
        }
        let mut unit = vec![CycScalar::zero(); n];
        unit[identity] = CycScalar::one();
        let mut invol = vec![vec![CycScalar::zero(); n]; n];
        for g in 0..n {
            invol[g][inverse[g]] = CycScalar::one();
        }
        let alg = CoordinateAlgebra {
            kind: AlgebraKind::GroupAlgebra {
                name: name.to_string(),
                table,
                inverse,
                identity,
            },
            dim: n,
            mult,
            unit: Vector(unit),
            invol,
            orthonormal_basis: true,
        };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    /// Cyclic group `ℤ/n`.
    pub fn cyclic_group(n: usize) -> Result<Arc<Self>> {
        let table: Vec<Vec<usize>> =
            (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
        Self::group_algebra(&format!("Z{n}"), table)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        let basis = |j: usize| Vector::basis(d, j);
        for j in 0..d {
            let ej = basis(j);
            if self.mul_elems(&self.unit, &ej)? != ej || self.mul_elems(&ej, &self.unit)? != ej {
                return Err(Error::AlgebraAxiom(format!("unit law fails at basis {j}")));
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left = self.mul_elems(&self.mul_elems(&basis(i), &basis(j))?, &basis(k))?;
                    let right = self.mul_elems(&basis(i), &self.mul_elems(&basis(j), &basis(k))?)?;
                    if left != right {
                        return Err(Error::AlgebraAxiom(format!(
                            "associativity fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        for j in 0..d {
            let ej = basis(j);
            if self.star_elem(&self.star_elem(&ej)) != ej {
                return Err(Error::AlgebraAxiom(format!(
                    "involution not involutive at {j}"
                )));
            }
            for k in 0..d {
                let lhs = self.star_elem(&self.mul_elems(&ej, &basis(k))?);
                let rhs = self.mul_elems(&self.star_elem(&basis(k)), &self.star_elem(&ej))?;
                if lhs != rhs {
                    return Err(Error::AlgebraAxiom(format!(
                        "involution is not an anti-homomorphism at ({j},{k})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn has_orthonormal_basis(&self) -> bool {
        self.orthonormal_basis
    }

    pub fn mul_elems(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        if a.dim() != self.dim || b.dim() != self.dim {
            return Err(Error::ShapeMismatch);
        }
        let mut out = vec![CycScalar::zero(); self.dim];
        for (j, ca) in a.0.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (k, cb) in b.0.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let cab = ca * cb;
                for (l, c) in &self.mult[j][k] {
                    out[*l] = &out[*l] + &(&cab * c);
                }
            }
        }
        Ok(Vector(out))
    }

    pub fn star_elem(&self, a: &Vector) -> Vector {
        let mut out = vec![CycScalar::zero(); self.dim];
        for (j, c) in a.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cc = c.conj();
            for (r, w) in self.invol[j].iter().enumerate() {
                if !w.is_zero() {
                    out[r] = &out[r] + &(&cc * w);
                }
            }
        }
        Vector(out)
    }

    pub fn is_unitary(&self, u: &Vector) -> Result<bool> {
        let us = self.star_elem(u);
        Ok(self.mul_elems(&us, u)? == self.unit && self.mul_elems(u, &us)? == self.unit)
    }

    pub fn is_central(&self, a: &Vector) -> Result<bool> {
        for j in 0..self.dim {
            let ej = Vector::basis(self.dim, j);
            if self.mul_elems(a, &ej)? != self.mul_elems(&ej, a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Matrix of left multiplication by `e_g` on basis coordinates.
    pub fn left_mult_mat(&self, g: usize) -> Mat {
        let mut m = Mat::zero(self.dim, self.dim);
        for s in 0..self.dim {
            for (l, c) in &self.mult[g][s] {
                m.set(*l, s, c.clone());
            }
        }
        m
    }

    /// Matrix of right multiplication by `e_g`.
    pub fn right_mult_mat(&self, g: usize) -> Mat {
        let mut m = Mat::zero(self.dim, self.dim);
        for s in 0..self.dim {
            for (l, c) in &self.mult[s][g] {
                m.set(*l, s, c.clone());
            }
        }
        m
    }

    /// Basis of the center, solved from the commutator system.
    pub fn center_basis(&self) -> Vec<Vector> {
        let d = self.dim;
        let mut rows = Vec::with_capacity(d * d);
        for g in 0..d {
            let l = self.left_mult_mat(g);
            let r = self.right_mult_mat(g);
            let diff = l.sub(&r).expect("same shape");
            for row in 0..d {
                rows.push((0..d).map(|col| diff.at(row, col).clone()).collect());
            }
        }
        let m = Mat::from_rows(rows).expect("uniform");
        m.kernel().into_iter().map(Vector).collect()
    }

    /// For matrix kinds, view an algebra element as its matrix.
    pub fn elem_to_mat(&self, a: &Vector) -> Result<Mat> {
        match self.kind {
            AlgebraKind::Matrix(n) => {
                let mut m = Mat::zero(n, n);
                for r in 0..n {
                    for s in 0..n {
                        m.set(r, s, a.0[r * n + s].clone());
                    }
                }
                Ok(m)
            }
            _ => Err(Error::UnsupportedKind),
        }
    }

    pub fn mat_to_elem(&self, m: &Mat) -> Result<Vector> {
        match self.kind {
            AlgebraKind::Matrix(n) => {
                if m.rows() != n || m.cols() != n {
                    return Err(Error::ShapeMismatch);
                }
                let mut v = Vec::with_capacity(n * n);
                for r in 0..n {
                    for s in 0..n {
                        v.push(m.at(r, s).clone());
                    }
                }
                Ok(Vector(v))
            }
            _ => Err(Error::UnsupportedKind),
        }
    }

    /// A finite pool of unitaries spanning enough directions for conjugation
    /// searches.
    pub fn unitary_pool(&self) -> Vec<Vector> {
        match &self.kind {
            AlgebraKind::Matrix(n) => {
                let n = *n;
                let phases = [
                    CycScalar::one(),
                    CycScalar::i(),
                    CycScalar::from_int(-1),
                    CycScalar::i().neg(),
                ];
                let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
                if n == 2 {
                    perms.push(vec![1, 0]);
                }
                let mut pool = Vec::new();
                for perm in &perms {
                    // Diagonal phases over the first two slots keep the pool
                    // small but non-commutative enough.
                    for p0 in &phases {
                        for p1 in &phases {
                            let mut v = vec![CycScalar::zero(); n * n];
                            for (r, &pr) in perm.iter().enumerate() {
                                let ph = match r {
                                    0 => p0.clone(),
                                    1 => p1.clone(),
                                    _ => CycScalar::one(),
                                };
                                v[r * n + pr] = ph;
                            }
                            pool.push(Vector(v));
                        }
                    }
                }
                pool
            }
            AlgebraKind::Function(n) => {
                let mut pool = vec![self.unit.clone()];
                for k in 0..*n {
                    let mut v = vec![CycScalar::one(); *n];
                    v[k] = CycScalar::from_int(-1);
                    pool.push(Vector(v));
                }
                pool
            }
            AlgebraKind::GroupAlgebra { .. } => {
                (0..self.dim).map(|g| Vector::basis(self.dim, g)).collect()
            }
        }
    }

    pub fn group_identity(&self) -> Result<usize> {
        match &self.kind {
            AlgebraKind::GroupAlgebra { identity, .. } => Ok(*identity),
            _ => Err(Error::UnsupportedKind),
        }
    }

    pub fn group_inverse(&self, g: usize) -> Result<usize> {
        match &self.kind {
            AlgebraKind::GroupAlgebra { inverse, .. } => inverse
                .get(g)
                .copied()
                .ok_or_else(|| Error::Other(format!("group element {g} out of range"))),
            _ => Err(Error::UnsupportedKind),
        }
    }
}

// ---------------------------------------------------------------------------

/// A periodic assignment of coordinate algebras, with the derived space data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraFamily {
    algebras: Vec<Arc<CoordinateAlgebra>>,
    spaces: SpaceFamily,
}

impl AlgebraFamily {
    pub fn new(algebras: Vec<Arc<CoordinateAlgebra>>, inner: bool) -> Result<Self> {
        if algebras.is_empty() {
            return Err(Error::Other("algebra period must be non-empty".into()));
        }
        let dims: Vec<u32> = algebras.iter().map(|a| a.dim() as u32).collect();
        let spaces = SpaceFamily::new(dims, inner)?;
        Ok(AlgebraFamily { algebras, spaces })
    }

    pub fn constant(alg: Arc<CoordinateAlgebra>, inner: bool) -> Result<Self> {
        Self::new(vec![alg], inner)
    }

    pub fn algebra_at(&self, i: usize) -> &Arc<CoordinateAlgebra> {
        &self.algebras[i % self.algebras.len()]
    }

    pub fn period(&self) -> usize {
        self.algebras.len()
    }

    pub fn spaces(&self) -> &SpaceFamily {
        &self.spaces
    }

    /// The all-units family (the canonical section of the trivial class).
    pub fn unit_family(&self) -> CoordFamily<Vector> {
        let values: Vec<Vector> = self.algebras.iter().map(|a| a.unit().clone()).collect();
        CoordFamily::periodic(self.spaces.clone(), values, vec![]).expect("units conform")
    }

    pub fn unit_class(&self) -> ClassId<Vector> {
        self.unit_family().class_of().expect("units are nonzero")
    }

    /// Build a coordinate family of algebra elements over this family.
    pub fn coord_family(
        &self,
        tail: Vec<Vector>,
        overrides: Vec<(usize, Vector)>,
    ) -> Result<CoordFamily<Vector>> {
        CoordFamily::periodic(self.spaces.clone(), tail, overrides)
    }

    /// Like `coord_family` but requiring every coordinate unitary.
    pub fn unitary_family(
        &self,
        tail: Vec<Vector>,
        overrides: Vec<(usize, Vector)>,
    ) -> Result<CoordFamily<Vector>> {
        let fam = self.coord_family(tail, overrides)?;
        self.check_unitary_family(&fam)?;
        Ok(fam)
    }

    pub fn check_unitary_family(&self, fam: &CoordFamily<Vector>) -> Result<()> {
        let window = lcm(fam.tail().period(), self.period());
        for r in 0..window {
            let v = fam.tail().value_at(r)?;
            if !self.algebra_at(r).is_unitary(&v)? {
                return Err(Error::NonUnitaryCoordinate(r));
            }
        }
        for (i, v) in fam.overrides() {
            if !self.algebra_at(*i).is_unitary(v)? {
                return Err(Error::NonUnitaryCoordinate(*i));
            }
        }
        Ok(())
    }

    /// Pointwise involution of a family of algebra elements.
    pub fn star_family(&self, fam: &CoordFamily<Vector>) -> Result<CoordFamily<Vector>> {
        let window = lcm(fam.tail().period(), self.period());
        let values: Vec<Vector> = (0..window)
            .map(|r| {
                self.algebra_at(r)
                    .star_elem(&fam.tail().periodic_part()[r % fam.tail().period()])
            })
            .collect();
        let phases: Vec<Phase> = fam
            .tail()
            .phases()
            .iter()
            .map(|p| Phase::new(-p.c().clone(), p.m()))
            .collect::<Result<_>>()?;
        let tail = Tail::new(values, phases)?;
        let overrides = fam
            .overrides()
            .iter()
            .map(|(i, v)| (*i, self.algebra_at(*i).star_elem(v)))
            .collect();
        CoordFamily::new(self.spaces.clone(), tail, overrides)
    }

    /// Pointwise product of two families of algebra elements.
    pub fn mul_families(
        &self,
        x: &CoordFamily<Vector>,
        y: &CoordFamily<Vector>,
    ) -> Result<CoordFamily<Vector>> {
        let tail = self.mul_tails(x.tail(), y.tail())?;
        let keys: BTreeSet<usize> = x
            .overrides()
            .keys()
            .chain(y.overrides().keys())
            .copied()
            .collect();
        let mut overrides = BTreeMap::new();
        for i in keys {
            overrides.insert(
                i,
                self.algebra_at(i).mul_elems(&x.value_at(i)?, &y.value_at(i)?)?,
            );
        }
        CoordFamily::new(self.spaces.clone(), tail, overrides)
    }

    fn mul_tails(&self, a: &Tail<Vector>, b: &Tail<Vector>) -> Result<Tail<Vector>> {
        let window = lcm(lcm(a.period(), b.period()), self.period());
        let values: Vec<Vector> = (0..window)
            .map(|r| {
                self.algebra_at(r).mul_elems(
                    &a.periodic_part()[r % a.period()],
                    &b.periodic_part()[r % b.period()],
                )
            })
            .collect::<Result<_>>()?;
        let phases: Vec<Phase> = a.phases().iter().chain(b.phases()).cloned().collect();
        Tail::new(values, phases)
    }

    /// Product of classes in the grading semigroup (total on unitary classes).
    pub fn class_mul(&self, a: &ClassId<Vector>, b: &ClassId<Vector>) -> Result<ClassId<Vector>> {
        let tail = self.mul_tails(a.tail(), b.tail())?;
        Ok(ClassId::from_parts(self.spaces.clone(), tail))
    }

    pub fn class_star(&self, a: &ClassId<Vector>) -> Result<ClassId<Vector>> {
        let starred = self.star_family(&a.section())?;
        starred.class_of()
    }

    /// Inverse of a unitary class (= its star).
    pub fn class_inv(&self, a: &ClassId<Vector>) -> Result<ClassId<Vector>> {
        if !self.is_unitary_class(a)? {
            return Err(Error::NonUnitaryClass);
        }
        self.class_star(a)
    }

    pub fn is_unitary_class(&self, a: &ClassId<Vector>) -> Result<bool> {
        let window = lcm(a.tail().period(), self.period());
        for r in 0..window {
            let v = &a.tail().periodic_part()[r % a.tail().period()];
            // Geometric phases are unit scalars and do not affect unitarity.
            if !self.algebra_at(r).is_unitary(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

// ---------------------------------------------------------------------------

/// An element of the tensor algebra of an algebra family, in normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgTensorElement {
    family: AlgebraFamily,
    elem: TensorElement,
}

impl AlgTensorElement {
    pub fn zero(family: AlgebraFamily) -> Self {
        let elem = TensorElement::zero(family.spaces().clone());
        AlgTensorElement { family, elem }
    }

    pub fn theta(family: &AlgebraFamily, x: &CoordFamily<Vector>) -> Result<Self> {
        if x.spaces() != family.spaces() {
            return Err(Error::SpaceMismatch);
        }
        Ok(AlgTensorElement {
            family: family.clone(),
            elem: TensorElement::theta(x)?,
        })
    }

    pub fn from_tensor(family: &AlgebraFamily, elem: TensorElement) -> Result<Self> {
        if elem.spaces() != family.spaces() {
            return Err(Error::SpaceMismatch);
        }
        Ok(AlgTensorElement {
            family: family.clone(),
            elem,
        })
    }

    /// The multiplicative unit `⊗e`.
    pub fn unit(family: &AlgebraFamily) -> Self {
        Self::theta(family, &family.unit_family()).expect("unit family conforms")
    }

    pub fn family(&self) -> &AlgebraFamily {
        &self.family
    }

    pub fn tensor(&self) -> &TensorElement {
        &self.elem
    }

    pub fn into_tensor(self) -> TensorElement {
        self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.family != other.family {
            return Err(Error::SpaceMismatch);
        }
        Ok(AlgTensorElement {
            family: self.family.clone(),
            elem: self.elem.add(&other.elem)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scalar_mul(&CycScalar::from_int(-1)))
    }

    pub fn scalar_mul(&self, s: &CycScalar) -> Self {
        AlgTensorElement {
            family: self.family.clone(),
            elem: self.elem.scalar_mul(s),
        }
    }

    /// Every component class consists of unitary tail values (membership in
    /// the unitary-graded part).
    pub fn check_unitary_classes(&self) -> Result<()> {
        for cl in self.elem.classes() {
            if !self.family.is_unitary_class(cl)? {
                return Err(Error::NonUnitaryClass);
            }
        }
        Ok(())
    }

    /// Membership in the trivial-class part (the inductive-limit subalgebra).
    pub fn check_trivial_class(&self) -> Result<()> {
        let unit = self.family.unit_class();
        for cl in self.elem.classes() {
            if *cl != unit {
                return Err(Error::NotInSubspace(
                    "element has a component outside the trivial class".into(),
                ));
            }
        }
        Ok(())
    }

    /// Graded product: the component at `ω` times the component at `ω'` lands
    /// in the class `ω·ω'`; blocks multiply coordinatewise through the
    /// structure constants after support alignment.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.family != other.family {
            return Err(Error::SpaceMismatch);
        }
        let fam = &self.family;
        let mut out = TensorElement::zero(fam.spaces().clone());
        for (ca, ba) in self.elem.components() {
            for (cb, bb) in other.elem.components() {
                let product_class = fam.class_mul(ca, cb).map_err(|e| match e {
                    Error::ZeroCoordinate(i) => Error::NotRepresentable(format!(
                        "class product has a zero coordinate at residue {i}"
                    )),
                    other => other,
                })?;
                let support: Vec<usize> = ba
                    .support()
                    .iter()
                    .chain(bb.support())
                    .copied()
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                if support.len() > crate::tensorcore::MAX_SUPPORT {
                    return Err(Error::CapExceeded(format!(
                        "product support of size {} exceeds {}",
                        support.len(),
                        crate::tensorcore::MAX_SUPPORT
                    )));
                }
                let ea = ba.embed_to(&support, ca)?;
                let eb = bb.embed_to(&support, cb)?;
                let block = block_mul(fam, &support, ea.block(), eb.block())?;
                let part = TensorElement::from_class_block(product_class, support, block)?;
                out = out.add(&part)?;
            }
        }
        Ok(AlgTensorElement {
            family: self.family.clone(),
            elem: out,
        })
    }

    /// Involution: classwise star of tails, conjugated coefficients pushed
    /// through the coordinate involutions.
    pub fn star(&self) -> Result<Self> {
        let fam = &self.family;
        let mut out = TensorElement::zero(fam.spaces().clone());
        for (cl, cb) in self.elem.components() {
            let star_class = fam.class_star(cl)?;
            // Conjugate the coefficients, then expand e_j ↦ e_j* per axis.
            let conj_data: Vec<CycScalar> = cb.block().data().iter().map(|c| c.conj()).collect();
            let mut block = Block::from_data(cb.block().dims().to_vec(), conj_data)?;
            for (axis, &j) in cb.support().iter().enumerate() {
                let alg = fam.algebra_at(j);
                let v = Mat::from_fn(alg.dim(), alg.dim(), |r, c| alg.invol[c][r].clone());
                block = block.mode_apply(axis, &v)?;
            }
            let part = TensorElement::from_class_block(star_class, cb.support().to_vec(), block)?;
            out = out.add(&part)?;
        }
        Ok(AlgTensorElement {
            family: self.family.clone(),
            elem: out,
        })
    }

    /// Inner action `Ξ_u(a) = θ(u)·a·θ(u*)` of a unitary family.
    pub fn inner_action(&self, u: &CoordFamily<Vector>) -> Result<Self> {
        self.family.check_unitary_family(u)?;
        let tu = Self::theta(&self.family, u)?;
        let tus = Self::theta(&self.family, &self.family.star_family(u)?)?;
        tu.mul(self)?.mul(&tus)
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

/// Coordinatewise product of two coefficient blocks over a shared support.
fn block_mul(fam: &AlgebraFamily, support: &[usize], a: &Block, b: &Block) -> Result<Block> {
    let dims = a.dims().to_vec();
    if b.dims() != dims {
        return Err(Error::ShapeMismatch);
    }
    let total: usize = dims.iter().product();
    let mut out = vec![CycScalar::zero(); total];
    let algs: Vec<&Arc<CoordinateAlgebra>> = support.iter().map(|&j| fam.algebra_at(j)).collect();
    for (ia, ca) in a.data().iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        let alpha = unflatten(ia, &dims);
        for (ib, cb) in b.data().iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            let beta = unflatten(ib, &dims);
            let coeff = ca * cb;
            // Expand the product of basis pairs through the sparse structure
            // constants, one axis at a time.
            let mut acc: Vec<(usize, CycScalar)> = vec![(0, coeff)];
            for (k, alg) in algs.iter().enumerate() {
                let choices = &alg.mult[alpha[k]][beta[k]];
                if choices.is_empty() {
                    acc.clear();
                    break;
                }
                let mut next = Vec::with_capacity(acc.len() * choices.len());
                for (idx, c) in &acc {
                    for (l, cc) in choices {
                        next.push((idx * dims[k] + l, c * cc));
                    }
                }
                acc = next;
            }
            for (idx, c) in acc {
                out[idx] = &out[idx] + &c;
            }
        }
    }
    Block::from_data(dims, out)
}

// ---------------------------------------------------------------------------
// Twisted crossed product.

/// A cocycle twisted action of the unitary class group on the trivial-class
/// part.  The canonical section is multiplicative (the unique tail per
/// class), making the cocycle trivial; perturbed sections replace finitely
/// many coordinates of chosen section values by other unitaries and exercise
/// the general identities.
#[derive(Clone, Debug)]
pub struct TwistedAction {
    family: AlgebraFamily,
    perturb: BTreeMap<ClassId<Vector>, BTreeMap<usize, Vector>>,
}

/// A finitely supported function from unitary classes to the trivial-class
/// part; the crossed-product side of the correspondence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrossedElem {
    family: AlgebraFamily,
    terms: BTreeMap<ClassId<Vector>, AlgTensorElement>,
}

impl CrossedElem {
    pub fn zero(family: AlgebraFamily) -> Self {
        CrossedElem {
            family,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        family: &AlgebraFamily,
        terms: Vec<(ClassId<Vector>, AlgTensorElement)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<ClassId<Vector>, AlgTensorElement> = BTreeMap::new();
        for (cl, val) in terms {
            if !family.is_unitary_class(&cl)? {
                return Err(Error::NonUnitaryClass);
            }
            val.check_trivial_class()?;
            if val.is_zero() {
                continue;
            }
            match map.remove(&cl) {
                None => {
                    map.insert(cl, val);
                }
                Some(prev) => {
                    map.insert(cl, prev.add(&val)?);
                }
            }
        }
        map.retain(|_, v| !v.is_zero());
        Ok(CrossedElem {
            family: family.clone(),
            terms: map,
        })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClassId<Vector>, &AlgTensorElement)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl TwistedAction {
    /// The canonical (multiplicative) section.
    pub fn canonical(family: AlgebraFamily) -> Self {
        TwistedAction {
            family,
            perturb: BTreeMap::new(),
        }
    }

    /// Perturb the section of one class by finitely many unitary overrides.
    /// The identity class keeps its canonical section (normalization).
    pub fn with_perturbation(
        mut self,
        class: ClassId<Vector>,
        overrides: Vec<(usize, Vector)>,
    ) -> Result<Self> {
        if class == self.family.unit_class() {
            return Err(Error::Other(
                "the identity class section must stay canonical".into(),
            ));
        }
        for (i, v) in &overrides {
            if !self.family.algebra_at(*i).is_unitary(v)? {
                return Err(Error::NonUnitaryCoordinate(*i));
            }
        }
        self.perturb.entry(class).or_default().extend(overrides);
        Ok(self)
    }

    pub fn family(&self) -> &AlgebraFamily {
        &self.family
    }

    /// The section representative `c'(ω)` in use.
    pub fn section_rep(&self, omega: &ClassId<Vector>) -> Result<CoordFamily<Vector>> {
        let base = omega.section();
        match self.perturb.get(omega) {
            None => Ok(base),
            Some(ovr) => {
                let mut fam = base;
                for (i, v) in ovr {
                    fam = fam.with_override(*i, v.clone())?;
                }
                Ok(fam)
            }
        }
    }

    /// The action `Ξ̌_μ = Ad θ(c'(μ))` on the trivial-class part.
    pub fn act(&self, mu: &ClassId<Vector>, b: &AlgTensorElement) -> Result<AlgTensorElement> {
        b.check_trivial_class()?;
        b.inner_action(&self.section_rep(mu)?)
    }

    /// The 2-cocycle `m(μ,ν) = θ(c'(μ)·c'(ν)·c'(μν)⁻¹)`, a unitary of the
    /// trivial-class part.
    pub fn cocycle(&self, mu: &ClassId<Vector>, nu: &ClassId<Vector>) -> Result<AlgTensorElement> {
        let fam = &self.family;
        let cmu = self.section_rep(mu)?;
        let cnu = self.section_rep(nu)?;
        let munu = fam.class_mul(mu, nu)?;
        let cmunu_inv = fam.star_family(&self.section_rep(&munu)?)?;
        let w = fam.mul_families(&fam.mul_families(&cmu, &cnu)?, &cmunu_inv)?;
        let m = AlgTensorElement::theta(fam, &w)?;
        m.check_trivial_class()?;
        Ok(m)
    }

    /// `Ψ(f) = Σ_ω f(ω)·θ(c'(ω))`, the graded *-isomorphism onto the
    /// unitary-class part.
    pub fn psi(&self, f: &CrossedElem) -> Result<AlgTensorElement> {
        if f.family != self.family {
            return Err(Error::SpaceMismatch);
        }
        let mut out = AlgTensorElement::zero(self.family.clone());
        for (omega, val) in &f.terms {
            let u = AlgTensorElement::theta(&self.family, &self.section_rep(omega)?)?;
            out = out.add(&val.mul(&u)?)?;
        }
        Ok(out)
    }

    /// Inverse of `Ψ` on the unitary-class part: classwise divide out the
    /// section unitary.
    pub fn psi_inv(&self, a: &AlgTensorElement) -> Result<CrossedElem> {
        if *a.family() != self.family {
            return Err(Error::SpaceMismatch);
        }
        a.check_unitary_classes()?;
        let mut terms = Vec::new();
        for (omega, cb) in a.tensor().components() {
            let part = AlgTensorElement::from_tensor(
                &self.family,
                TensorElement::from_class_block(
                    omega.clone(),
                    cb.support().to_vec(),
                    cb.block().clone(),
                )?,
            )?;
            let u_inv = AlgTensorElement::theta(
                &self.family,
                &self.family.star_family(&self.section_rep(omega)?)?,
            )?;
            let val = part.mul(&u_inv)?;
            terms.push((omega.clone(), val));
        }
        CrossedElem::from_terms(&self.family, terms)
    }

    /// Twisted convolution `(f ⋆ g)(ω) = Σ_{μν=ω} f(μ)·Ξ̌_μ(g(ν))·m(μ,ν)`.
    pub fn convolve(&self, f: &CrossedElem, g: &CrossedElem) -> Result<CrossedElem> {
        if f.family != self.family || g.family != self.family {
            return Err(Error::SpaceMismatch);
        }
        let mut terms = Vec::new();
        for (mu, fv) in &f.terms {
            for (nu, gv) in &g.terms {
                let omega = self.family.class_mul(mu, nu)?;
                let val = fv.mul(&self.act(mu, gv)?)?.mul(&self.cocycle(mu, nu)?)?;
                terms.push((omega, val));
            }
        }
        CrossedElem::from_terms(&self.family, terms)
    }

    /// Twisted involution `f*(ν) = Ξ̌_ν(m(ν⁻¹,ν)⁻¹ · f(ν⁻¹)*)`.
    pub fn star(&self, f: &CrossedElem) -> Result<CrossedElem> {
        if f.family != self.family {
            return Err(Error::SpaceMismatch);
        }
        let mut terms = Vec::new();
        for (mu, fv) in &f.terms {
            let nu = self.family.class_inv(mu)?;
            // m(ν⁻¹,ν) is a unitary of the trivial-class part; its inverse is
            // its star.
            let m_inv = self.cocycle(mu, &nu)?.star()?;
            let val = self.act(&nu, &m_inv.mul(&fv.star()?)?)?;
            terms.push((nu, val));
        }
        CrossedElem::from_terms(&self.family, terms)
    }
}

// ---------------------------------------------------------------------------
// Scalar group-algebra bridge.

/// An element of the group algebra of unit-modulus scalar classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAlgebraElement {
    terms: BTreeMap<ClassId<Vector>, CycScalar>,
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        GroupAlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    /// The basis element `λ_ω`.
    pub fn lambda(omega: ClassId<Vector>) -> Result<Self> {
        omega.check_unit()?;
        let mut terms = BTreeMap::new();
        terms.insert(omega, CycScalar::one());
        Ok(GroupAlgebraElement { terms })
    }

    pub fn from_terms(terms: Vec<(ClassId<Vector>, CycScalar)>) -> Result<Self> {
        let mut map: BTreeMap<ClassId<Vector>, CycScalar> = BTreeMap::new();
        for (cl, c) in terms {
            cl.check_unit()?;
            let entry = map.entry(cl).or_insert_with(CycScalar::zero);
            *entry = &*entry + &c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(GroupAlgebraElement { terms: map })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClassId<Vector>, &CycScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, omega: &ClassId<Vector>) -> CycScalar {
        self.terms
            .get(omega)
            .cloned()
            .unwrap_or_else(CycScalar::zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut terms: Vec<(ClassId<Vector>, CycScalar)> = self
            .terms
            .iter()
            .map(|(c, v)| (c.clone(), v.clone()))
            .collect();
        terms.extend(other.terms.iter().map(|(c, v)| (c.clone(), v.clone())));
        Self::from_terms(terms)
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        GroupAlgebraElement {
            terms: self.terms.iter().map(|(c, v)| (c.clone(), v * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut terms = Vec::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                terms.push((a.scalar_class_mul(b)?, ca * cb));
            }
        }
        Self::from_terms(terms)
    }

    pub fn star(&self) -> Result<Self> {
        let mut terms = Vec::new();
        for (a, ca) in &self.terms {
            terms.push((a.scalar_class_inv()?, ca.conj()));
        }
        Self::from_terms(terms)
    }

    /// The canonical tracial functional: the coefficient of the trivial class.
    pub fn chi(&self) -> CycScalar {
        self.coefficient(&ClassId::scalar_one())
    }
}

/// The finite-part character `φ(α) = Π_i α_i / c([α])_i` of a unit scalar
/// family (a constructive extension of the eventually-one product functional
/// to representable families).
pub fn phi_char(alpha: &CoordFamily<Vector>) -> Result<CycScalar> {
    if !alpha.spaces().is_scalar() {
        return Err(Error::NotOneDimensional);
    }
    alpha.check_all_unit()?;
    let mut acc = CycScalar::one();
    for (i, v) in alpha.overrides() {
        let tail_val = alpha.tail().value_at(*i)?;
        let ratio = v
            .as_scalar()
            .unwrap()
            .mul(&tail_val.as_scalar().unwrap().inv()?)?;
        acc = acc.mul(&ratio)?;
    }
    Ok(acc)
}

/// The *-isomorphism from the unitary-class part of the scalar tensor algebra
/// onto the group algebra of unit-modulus classes: `θ(α) ↦ φ(α)·λ_{[α]}`.
pub fn group_algebra_iso(a: &TensorElement) -> Result<GroupAlgebraElement> {
    if !a.spaces().is_scalar() {
        return Err(Error::NotOneDimensional);
    }
    let mut terms = Vec::new();
    for (cl, cb) in a.components() {
        cl.check_unit().map_err(|_| Error::NonUnitaryClass)?;
        // The block over scalar coordinates is a single coefficient relative
        // to basis ones at the support; divide out the section values there.
        let mut coeff = cb.block().data()[0].clone();
        for &i in cb.support() {
            let s = cl.section_value_at(i)?;
            coeff = coeff.mul(&s.as_scalar().unwrap().inv()?)?;
        }
        terms.push((cl.clone(), coeff));
    }
    GroupAlgebraElement::from_terms(terms)
}

/// Inverse of [`group_algebra_iso`]: `λ_ω ↦ φ(c(ω))⁻¹·θ(section(ω))`.
pub fn group_algebra_iso_inv(g: &GroupAlgebraElement) -> Result<TensorElement> {
    let mut out = TensorElement::zero(SpaceFamily::scalar());
    for (omega, c) in g.terms() {
        let section = omega.section();
        let phi = phi_char(&section)?; // 1 on canonical sections
        let part = TensorElement::theta(&section)?.scalar_mul(&c.mul(&phi.inv()?)?);
        out = out.add(&part)?;
    }
    Ok(out)
}

/// Embedding of a group-element family into the tensor algebra of group
/// algebras: the family of basis unitaries `λ_{t_i}`.
pub fn embed_group_element(
    family: &AlgebraFamily,
    tail: &[usize],
    overrides: &[(usize, usize)],
) -> Result<AlgTensorElement> {
    let to_vec = |i: usize, g: usize| -> Result<Vector> {
        let alg = family.algebra_at(i);
        match alg.kind() {
            AlgebraKind::GroupAlgebra { .. } => {
                if g >= alg.dim() {
                    return Err(Error::Other(format!(
                        "group element index {g} out of range at coordinate {i}"
                    )));
                }
                Ok(Vector::basis(alg.dim(), g))
            }
            _ => Err(Error::UnsupportedKind),
        }
    };
    if tail.is_empty() {
        return Err(Error::Other("tail must be non-empty".into()));
    }
    let tail_vals: Vec<Vector> = tail
        .iter()
        .enumerate()
        .map(|(i, &g)| to_vec(i, g))
        .collect::<Result<_>>()?;
    let ovr: Vec<(usize, Vector)> = overrides
        .iter()
        .map(|&(i, g)| to_vec(i, g).map(|v| (i, v)))
        .collect::<Result<_>>()?;
    let fam = family.coord_family(tail_vals, ovr)?;
    AlgTensorElement::theta(family, &fam)
}

// ---------------------------------------------------------------------------
// Centers.

/// Basis of the center of one coordinate algebra.
pub fn coordinate_center(alg: &CoordinateAlgebra) -> Vec<Vector> {
    alg.center_basis()
}

/// Exact center membership in the unitary-class graded algebra: every
/// component class must have centrally-valued tails and every block must
/// commute with the coordinate generators at its support.
pub fn center_membership(a: &AlgTensorElement) -> Result<bool> {
    let fam = a.family();
    for (cl, cb) in a.tensor().components() {
        let window = lcm(cl.tail().period(), fam.period());
        for r in 0..window {
            let v = &cl.tail().periodic_part()[r % cl.tail().period()];
            if !fam.algebra_at(r).is_central(v)? {
                return Ok(false);
            }
        }
        for (axis, &j) in cb.support().iter().enumerate() {
            let alg = fam.algebra_at(j);
            for g in 0..alg.dim() {
                let left = cb.block().mode_apply(axis, &alg.left_mult_mat(g))?;
                let right = cb.block().mode_apply(axis, &alg.right_mult_mat(g))?;
                if left != right {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Produce `k` distinct conjugates of a non-central unitary class, using
/// conjugating families supported on prime-indexed subsequences of the
/// non-central coordinates.
pub fn conjugacy_witnesses(
    family: &AlgebraFamily,
    omega: &ClassId<Vector>,
    k: usize,
) -> Result<Vec<ClassId<Vector>>> {
    if !family.is_unitary_class(omega)? {
        return Err(Error::NonUnitaryClass);
    }
    let window = lcm(omega.tail().period(), family.period());
    // Non-central residues and a unitary that moves the value there.
    let mut movers: BTreeMap<usize, Vector> = BTreeMap::new();
    for r in 0..window {
        let u = &omega.tail().periodic_part()[r % omega.tail().period()];
        let alg = family.algebra_at(r);
        if alg.is_central(u)? {
            continue;
        }
        let v = alg
            .unitary_pool()
            .into_iter()
            .find(|v| {
                alg.is_unitary(v).unwrap_or(false)
                    && alg
                        .mul_elems(&alg.mul_elems(v, u).unwrap(), &alg.star_elem(v))
                        .unwrap()
                        != *u
            })
            .ok_or_else(|| {
                Error::WitnessNotFound(format!("no conjugating unitary at residue {r}"))
            })?;
        movers.insert(r, v);
    }
    if movers.is_empty() {
        return Err(Error::WitnessNotFound(
            "class is central; conjugacy class is trivial".into(),
        ));
    }
    let noncentral: Vec<usize> = movers.keys().copied().collect();
    let s = noncentral.len();
    let primes = [2usize, 3, 5, 7, 11, 13, 17, 19, 23, 29];
    let mut out = Vec::new();
    for &p in &primes {
        if out.len() >= k {
            break;
        }
        // w has period p·window: at the n-th non-central position, conjugate
        // by the mover iff p divides n.
        let mut values = Vec::with_capacity(p * window);
        for i in 0..p * window {
            let r = i % window;
            let u = omega.tail().value_at(i)?;
            match movers.get(&r) {
                None => values.push(u),
                Some(v) => {
                    let t = noncentral.iter().position(|&x| x == r).unwrap();
                    let rank = (i / window) * s + t;
                    if rank % p == 0 {
                        let alg = family.algebra_at(i);
                        values.push(alg.mul_elems(&alg.mul_elems(v, &u)?, &alg.star_elem(v))?);
                    } else {
                        values.push(u);
                    }
                }
            }
        }
        let tail = Tail::new(values, omega.tail().phases().to_vec())?;
        let conj = ClassId::from_parts(family.spaces().clone(), tail);
        if !out.contains(&conj) && conj != *omega {
            out.push(conj);
        }
    }
    if out.len() < k {
        return Err(Error::WitnessNotFound(format!(
            "only {} distinct conjugates found, {k} requested",
            out.len()
        )));
    }
    out.truncate(k);
    Ok(out)
}
