//! Finitely-describable infinite coordinate families over the index set `ℕ`.
//!
//! A family is a tail generator (a purely periodic list of coordinate values,
//! optionally times finitely many geometric phase factors
//! `i ↦ exp(2πi·c/mⁱ)`) together with finitely many overrides.  Two families
//! are `~`-equivalent when they agree at all but finitely many indices; since
//! tails in this closure that agree eventually agree everywhere, each class
//! contains exactly one tail, which doubles as the canonical section value.
//!
//! The closure of tails under pointwise products is what makes the group of
//! unit-modulus scalar classes total: products of periodic tails stay
//! periodic, and geometric phases merge by adding their `c`-parameters.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, Integer, Zero};

use crate::linalg::Mat;
use crate::scalars::{CycScalar, Rational};
use crate::{Error, Result};

/// Desk-scale cap on coordinate dimensions.
pub const MAX_DIM: u32 = 4;

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / a.gcd(&b) * b
}

/// The shape data of a family `{X_i}`: a purely periodic dimension sequence
/// and a flag enabling the standard hermitian form on coordinate columns.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SpaceFamily {
    dims: Vec<u32>,
    inner: bool,
}

impl SpaceFamily {
    pub fn new(dims: Vec<u32>, inner: bool) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Other("dimension period must be non-empty".into()));
        }
        for &d in &dims {
            if d == 0 {
                return Err(Error::Other("coordinate dimension must be >= 1".into()));
            }
            if d > MAX_DIM {
                return Err(Error::CapExceeded(format!(
                    "coordinate dimension {d} exceeds {MAX_DIM}"
                )));
            }
        }
        Ok(SpaceFamily {
            dims: minimal_period(dims),
            inner,
        })
    }

    /// One-dimensional scalar coordinates with the standard form.
    pub fn scalar() -> Self {
        SpaceFamily {
            dims: vec![1],
            inner: true,
        }
    }

    pub fn constant(dim: u32, inner: bool) -> Result<Self> {
        Self::new(vec![dim], inner)
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i % self.dims.len()] as usize
    }

    pub fn period(&self) -> usize {
        self.dims.len()
    }

    pub fn has_inner_product(&self) -> bool {
        self.inner
    }

    pub fn is_scalar(&self) -> bool {
        self.dims.iter().all(|&d| d == 1)
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }
}

fn minimal_period<V: PartialEq + Clone>(values: Vec<V>) -> Vec<V> {
    let n = values.len();
    for p in 1..n {
        if n % p == 0 && (p..n).all(|i| values[i] == values[i % p]) {
            return values[..p].to_vec();
        }
    }
    values
}

/// A coordinate value of a family: a column vector over `ℚ(ζ)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vector(pub Vec<CycScalar>);

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl Vector {
    pub fn scalar(s: CycScalar) -> Self {
        Vector(vec![s])
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = vec![CycScalar::zero(); dim];
        v[k] = CycScalar::one();
        Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_scalar(&self) -> Option<&CycScalar> {
        if self.0.len() == 1 {
            Some(&self.0[0])
        } else {
            None
        }
    }

    /// Standard hermitian form, linear in the first argument.
    pub fn inner(&self, other: &Vector) -> Result<CycScalar> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch);
        }
        let mut acc = CycScalar::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            acc = &acc + &(a * &b.conj());
        }
        Ok(acc)
    }

    pub fn norm_sqr(&self) -> CycScalar {
        self.inner(self).expect("same dimension")
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sqr().is_one()
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch);
        }
        Ok(Vector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }
}

/// Common interface of coordinate value types (vectors and matrices).
pub trait CoordValue: Clone + Eq + Ord + std::hash::Hash + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn scale(&self, s: &CycScalar) -> Self;
    /// Dimension conformance against the source space at one index.
    fn conforms(&self, dim: usize) -> bool;
}

impl CoordValue for Vector {
    fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    fn scale(&self, s: &CycScalar) -> Self {
        Vector(self.0.iter().map(|x| x * s).collect())
    }

    fn conforms(&self, dim: usize) -> bool {
        self.dim() == dim
    }
}

impl CoordValue for Mat {
    fn is_zero(&self) -> bool {
        Mat::is_zero(self)
    }

    fn scale(&self, s: &CycScalar) -> Self {
        Mat::scale(self, s)
    }

    fn conforms(&self, dim: usize) -> bool {
        self.cols() == dim
    }
}

/// One geometric phase factor `i ↦ exp(2πi·c/mⁱ)` with `c ≠ 0`, `m ≥ 2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Phase {
    c: Rational,
    m: u32,
}

impl Phase {
    pub fn new(c: Rational, m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::Other(
                "geometric phase needs 1/q an integer >= 2".into(),
            ));
        }
        if c.is_zero() {
            return Err(Error::Other("trivial phase".into()));
        }
        Ok(Phase { c, m })
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The exact exponent `c/mⁱ` of the phase at index `i`.
    pub fn exponent_at(&self, i: usize) -> Rational {
        let denom = BigInt::from(self.m).pow(i as u32);
        &self.c / Rational::from(denom)
    }

    /// Closed form of the summed exponents: `Σ_{i≥0} c/mⁱ = c·m/(m-1)`.
    pub fn total_exponent(&self) -> Rational {
        &self.c * Rational::new(BigInt::from(self.m), BigInt::from(self.m - 1))
    }
}

/// Tail generator: periodic values, optionally scaled by geometric phases.
/// Stored canonically (minimal period; phases merged by base, nonzero, sorted).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Tail<V> {
    periodic: Vec<V>,
    phases: Vec<Phase>,
}

impl<V: CoordValue> Tail<V> {
    pub fn new(periodic: Vec<V>, phases: Vec<Phase>) -> Result<Self> {
        if periodic.is_empty() {
            return Err(Error::Other("tail period must be non-empty".into()));
        }
        if let Some(k) = periodic.iter().position(|v| v.is_zero()) {
            return Err(Error::ZeroCoordinate(k));
        }
        let mut by_base: BTreeMap<u32, Rational> = BTreeMap::new();
        for p in phases {
            let e = by_base.entry(p.m).or_insert_with(Rational::zero);
            *e = &*e + &p.c;
        }
        let phases: Vec<Phase> = by_base
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| Phase { c, m })
            .collect();
        Ok(Tail {
            periodic: minimal_period(periodic),
            phases,
        })
    }

    pub fn periodic_part(&self) -> &[V] {
        &self.periodic
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    pub fn period(&self) -> usize {
        self.periodic.len()
    }

    pub fn has_phases(&self) -> bool {
        !self.phases.is_empty()
    }

    /// Exact phase exponent `Σ_k c_k/m_kⁱ` at index `i`.
    pub fn phase_exponent_at(&self, i: usize) -> Rational {
        let mut e = Rational::zero();
        for p in &self.phases {
            e = e + p.exponent_at(i);
        }
        e
    }

    pub fn phase_value_at(&self, i: usize) -> Result<CycScalar> {
        CycScalar::from_phase(&self.phase_exponent_at(i))
    }

    /// The concrete coordinate value at index `i`.  May refuse deep indices of
    /// phase tails when the cyclotomic order cap would be exceeded.
    pub fn value_at(&self, i: usize) -> Result<V> {
        let base = self.periodic[i % self.periodic.len()].clone();
        if self.phases.is_empty() {
            return Ok(base);
        }
        Ok(base.scale(&self.phase_value_at(i)?))
    }
}

/// An infinite coordinate family: tail generator plus finite overrides.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CoordFamily<V> {
    spaces: SpaceFamily,
    tail: Tail<V>,
    overrides: BTreeMap<usize, V>,
}

/// Canonical representative of a `~`-class: the (unique) tail in the class.
/// Its override-free family is the section value `c(ω)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ClassId<V> {
    spaces: SpaceFamily,
    tail: Tail<V>,
}

impl<V: CoordValue> CoordFamily<V> {
    pub fn new(spaces: SpaceFamily, tail: Tail<V>, overrides: BTreeMap<usize, V>) -> Result<Self> {
        // Dimension conformance over one combined window plus overrides.
        let window = lcm(spaces.period(), tail.period());
        for i in 0..window {
            let v = &tail.periodic_part()[i % tail.period()];
            if !v.conforms(spaces.dim(i)) {
                return Err(Error::DimMismatch {
                    index: i,
                    expected: spaces.dim(i),
                    got: 0,
                });
            }
        }
        let mut canon = BTreeMap::new();
        for (i, v) in overrides {
            if !v.conforms(spaces.dim(i)) {
                return Err(Error::DimMismatch {
                    index: i,
                    expected: spaces.dim(i),
                    got: 0,
                });
            }
            // Overrides equal to the tail value are dropped (canonical form).
            if tail.value_at(i)? != v {
                canon.insert(i, v);
            }
        }
        Ok(CoordFamily {
            spaces,
            tail,
            overrides: canon,
        })
    }

    pub fn spaces(&self) -> &SpaceFamily {
        &self.spaces
    }

    pub fn tail(&self) -> &Tail<V> {
        &self.tail
    }

    pub fn overrides(&self) -> &BTreeMap<usize, V> {
        &self.overrides
    }

    pub fn value_at(&self, i: usize) -> Result<V> {
        if let Some(v) = self.overrides.get(&i) {
            return Ok(v.clone());
        }
        self.tail.value_at(i)
    }

    pub fn has_zero_coordinate(&self) -> bool {
        self.overrides.values().any(|v| v.is_zero())
    }

    pub fn zero_coordinate(&self) -> Option<usize> {
        self.overrides
            .iter()
            .find(|(_, v)| v.is_zero())
            .map(|(i, _)| *i)
    }

    /// `x ~ y`: equality at all but finitely many coordinates.  Tails in the
    /// representable closure agree eventually iff they agree everywhere, so
    /// this is exactly equality of canonical tails; overrides are finite and
    /// ignored.
    pub fn sim(&self, other: &Self) -> Result<bool> {
        if self.spaces != other.spaces {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.tail == other.tail)
    }

    pub fn class_of(&self) -> Result<ClassId<V>> {
        if let Some(i) = self.zero_coordinate() {
            return Err(Error::ZeroCoordinate(i));
        }
        Ok(ClassId {
            spaces: self.spaces.clone(),
            tail: self.tail.clone(),
        })
    }

    /// Replace the override at `i` (or insert one).
    pub fn with_override(&self, i: usize, v: V) -> Result<Self> {
        let mut overrides = self.overrides.clone();
        overrides.insert(i, v);
        Self::new(self.spaces.clone(), self.tail.clone(), overrides)
    }
}

impl<V: CoordValue> ClassId<V> {
    pub fn spaces(&self) -> &SpaceFamily {
        &self.spaces
    }

    pub fn tail(&self) -> &Tail<V> {
        &self.tail
    }

    pub(crate) fn from_parts(spaces: SpaceFamily, tail: Tail<V>) -> Self {
        ClassId { spaces, tail }
    }

    /// The canonical section `c(ω)`: the override-free family on the tail.
    pub fn section(&self) -> CoordFamily<V> {
        CoordFamily {
            spaces: self.spaces.clone(),
            tail: self.tail.clone(),
            overrides: BTreeMap::new(),
        }
    }

    pub fn section_value_at(&self, i: usize) -> Result<V> {
        self.tail.value_at(i)
    }
}

// --- vector-specific constructors -----------------------------------------

impl CoordFamily<Vector> {
    pub fn periodic(
        spaces: SpaceFamily,
        values: Vec<Vector>,
        overrides: Vec<(usize, Vector)>,
    ) -> Result<Self> {
        let tail = Tail::new(values, Vec::new())?;
        Self::new(spaces, tail, overrides.into_iter().collect())
    }

    /// Scalar family with a periodic tail.
    pub fn scalar_periodic(
        values: Vec<CycScalar>,
        overrides: Vec<(usize, CycScalar)>,
    ) -> Result<Self> {
        Self::periodic(
            SpaceFamily::scalar(),
            values.into_iter().map(Vector::scalar).collect(),
            overrides
                .into_iter()
                .map(|(i, s)| (i, Vector::scalar(s)))
                .collect(),
        )
    }

    /// `value(i) = exp(2πi·c·qⁱ)` with `q = 1/m`; restricted to scalar
    /// coordinates.  `c = 0` degenerates to the all-ones periodic tail.
    pub fn geom_phase(c: Rational, m: u32, overrides: Vec<(usize, CycScalar)>) -> Result<Self> {
        if m < 2 {
            return Err(Error::Other(
                "geometric phase needs 1/q an integer >= 2".into(),
            ));
        }
        let phases = if c.is_zero() {
            Vec::new()
        } else {
            vec![Phase::new(c, m)?]
        };
        let tail = Tail::new(vec![Vector::scalar(CycScalar::one())], phases)?;
        Self::new(
            SpaceFamily::scalar(),
            tail,
            overrides
                .into_iter()
                .map(|(i, s)| (i, Vector::scalar(s)))
                .collect(),
        )
    }

    /// Exact unit-norm check on every coordinate.
    pub fn check_all_unit(&self) -> Result<()> {
        for (r, v) in self.tail.periodic_part().iter().enumerate() {
            if !v.is_unit() {
                return Err(Error::NonUnitCoordinate(r));
            }
        }
        for (i, v) in &self.overrides {
            if !v.is_unit() {
                return Err(Error::NonUnitCoordinate(*i));
            }
        }
        Ok(())
    }

    /// Pointwise product of scalar families.
    pub fn scalar_mul(&self, other: &Self) -> Result<Self> {
        if !self.spaces.is_scalar() || !other.spaces.is_scalar() {
            return Err(Error::NotOneDimensional);
        }
        let tail = mul_scalar_tails(&self.tail, &other.tail)?;
        let mut overrides = BTreeMap::new();
        let keys: std::collections::BTreeSet<usize> = self
            .overrides
            .keys()
            .chain(other.overrides.keys())
            .copied()
            .collect();
        for i in keys {
            let a = self.value_at(i)?;
            let b = other.value_at(i)?;
            let prod = a.as_scalar().unwrap().mul(b.as_scalar().unwrap())?;
            overrides.insert(i, Vector::scalar(prod));
        }
        Self::new(SpaceFamily::scalar(), tail, overrides)
    }

    /// Pointwise conjugate of a scalar family (inverse on unit families).
    pub fn scalar_conj(&self) -> Result<Self> {
        if !self.spaces.is_scalar() {
            return Err(Error::NotOneDimensional);
        }
        let tail = conj_scalar_tail(&self.tail)?;
        let overrides = self
            .overrides
            .iter()
            .map(|(i, v)| (*i, Vector::scalar(v.as_scalar().unwrap().conj())))
            .collect();
        Self::new(SpaceFamily::scalar(), tail, overrides)
    }
}

fn mul_scalar_tails(a: &Tail<Vector>, b: &Tail<Vector>) -> Result<Tail<Vector>> {
    let window = lcm(a.period(), b.period());
    let mut values = Vec::with_capacity(window);
    for i in 0..window {
        let x = &a.periodic_part()[i % a.period()];
        let y = &b.periodic_part()[i % b.period()];
        values.push(Vector::scalar(
            x.as_scalar().unwrap().mul(y.as_scalar().unwrap())?,
        ));
    }
    let phases = a.phases().iter().chain(b.phases()).cloned().collect();
    Tail::new(values, phases)
}

fn conj_scalar_tail(a: &Tail<Vector>) -> Result<Tail<Vector>> {
    let values = a
        .periodic_part()
        .iter()
        .map(|v| Vector::scalar(v.as_scalar().unwrap().conj()))
        .collect();
    let phases = a
        .phases()
        .iter()
        .map(|p| Phase::new(-p.c.clone(), p.m))
        .collect::<Result<Vec<_>>>()?;
    Tail::new(values, phases)
}

fn inv_scalar_tail(a: &Tail<Vector>) -> Result<Tail<Vector>> {
    let values = a
        .periodic_part()
        .iter()
        .map(|v| v.as_scalar().unwrap().inv().map(Vector::scalar))
        .collect::<Result<Vec<_>>>()?;
    let phases = a
        .phases()
        .iter()
        .map(|p| Phase::new(-p.c.clone(), p.m))
        .collect::<Result<Vec<_>>>()?;
    Tail::new(values, phases)
}

impl ClassId<Vector> {
    /// The class of the all-ones scalar family.
    pub fn scalar_one() -> Self {
        CoordFamily::scalar_periodic(vec![CycScalar::one()], vec![])
            .unwrap()
            .class_of()
            .unwrap()
    }

    pub fn is_scalar_one(&self) -> bool {
        *self == Self::scalar_one()
    }

    /// Group product of scalar classes (pointwise product of sections).
    pub fn scalar_class_mul(&self, other: &Self) -> Result<Self> {
        if !self.spaces.is_scalar() || !other.spaces.is_scalar() {
            return Err(Error::NotOneDimensional);
        }
        Ok(ClassId {
            spaces: self.spaces.clone(),
            tail: mul_scalar_tails(&self.tail, &other.tail)?,
        })
    }

    pub fn scalar_class_inv(&self) -> Result<Self> {
        if !self.spaces.is_scalar() {
            return Err(Error::NotOneDimensional);
        }
        Ok(ClassId {
            spaces: self.spaces.clone(),
            tail: inv_scalar_tail(&self.tail)?,
        })
    }

    pub fn scalar_class_conj(&self) -> Result<Self> {
        if !self.spaces.is_scalar() {
            return Err(Error::NotOneDimensional);
        }
        Ok(ClassId {
            spaces: self.spaces.clone(),
            tail: conj_scalar_tail(&self.tail)?,
        })
    }

    /// Free action of nonzero scalar classes on vector classes.
    pub fn scale_by(&self, beta: &ClassId<Vector>) -> Result<Self> {
        if !beta.spaces.is_scalar() {
            return Err(Error::NotOneDimensional);
        }
        let window = lcm(self.tail.period(), beta.tail.period());
        let mut values = Vec::with_capacity(window);
        for i in 0..window {
            let v = &self.tail.periodic_part()[i % self.tail.period()];
            let s = beta.tail.periodic_part()[i % beta.tail.period()]
                .as_scalar()
                .unwrap();
            values.push(v.scale(s));
        }
        let phases = self
            .tail
            .phases()
            .iter()
            .chain(beta.tail.phases())
            .cloned()
            .collect();
        Ok(ClassId {
            spaces: self.spaces.clone(),
            tail: Tail::new(values, phases)?,
        })
    }

    pub fn check_unit(&self) -> Result<()> {
        self.section().check_all_unit()
    }
}

// --- the summable-deviation relation and its signature ----------------------

/// Decides `Σ_i |⟨x_i, y_i⟩ - 1| < ∞` for unit-norm families.
///
/// Geometric phases never affect summability (their deviation from one is
/// dominated by a geometric series), so the decision reduces to the periodic
/// parts pairing to exactly one on a common window.
pub fn approx(x: &CoordFamily<Vector>, y: &CoordFamily<Vector>) -> Result<bool> {
    if x.spaces != y.spaces {
        return Err(Error::SpaceMismatch);
    }
    if !x.spaces.has_inner_product() {
        return Err(Error::NoInnerProduct);
    }
    x.check_all_unit()?;
    y.check_all_unit()?;
    periodic_parts_pair_to_one(x.tail(), y.tail())
}

fn periodic_parts_pair_to_one(a: &Tail<Vector>, b: &Tail<Vector>) -> Result<bool> {
    let window = lcm(a.period(), b.period());
    for i in 0..window {
        let u = &a.periodic_part()[i % a.period()];
        let v = &b.periodic_part()[i % b.period()];
        if !u.inner(v)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x ≈_𝕋 y`: the ratio family `α_i = x_i/y_i` satisfies `α ≈ 1` up to
/// finitely many exceptions.  Only defined on unit scalar coordinates.
pub fn approx_t(x: &CoordFamily<Vector>, y: &CoordFamily<Vector>) -> Result<bool> {
    if x.spaces != y.spaces {
        return Err(Error::SpaceMismatch);
    }
    if !x.spaces.is_scalar() {
        return Err(Error::NotOneDimensional);
    }
    x.check_all_unit()?;
    y.check_all_unit()?;
    // The ratio of the tails (overrides are the finite exceptions).
    let ratio = mul_scalar_tails(&x.tail, &inv_scalar_tail(&y.tail)?)?;
    let ones = Tail::new(vec![Vector::scalar(CycScalar::one())], Vec::new())?;
    periodic_parts_pair_to_one(&ratio, &ones)
}

/// Signature of the `≈`-class of a unit class: the periodic part with the
/// geometric phase factor stripped.  `kappa(ω) = kappa(ω')` iff
/// `approx(section(ω), section(ω'))`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ApproxClassSignature {
    spaces: SpaceFamily,
    periodic: Vec<Vector>,
}

pub fn kappa(omega: &ClassId<Vector>) -> Result<ApproxClassSignature> {
    omega.check_unit()?;
    Ok(ApproxClassSignature {
        spaces: omega.spaces.clone(),
        periodic: omega.tail.periodic_part().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational;

    fn one() -> CycScalar {
        CycScalar::one()
    }

    fn minus_one() -> CycScalar {
        CycScalar::from_int(-1)
    }

    fn fam_p(values: Vec<CycScalar>, ovr: Vec<(usize, CycScalar)>) -> CoordFamily<Vector> {
        CoordFamily::scalar_periodic(values, ovr).unwrap()
    }

    #[test]
    fn sim_examples() {
        // One-coordinate difference keeps the class.
        let x = fam_p(vec![one()], vec![(0, minus_one())]);
        let y = fam_p(vec![one()], vec![]);
        assert!(x.sim(&y).unwrap());
        // Infinitely many -1 entries leave the class.
        let x = fam_p(vec![one(), minus_one()], vec![]);
        assert!(!x.sim(&y).unwrap());
        // A nontrivial geometric phase is never eventually periodic.
        let g = CoordFamily::geom_phase(rational(1, 1), 2, vec![]).unwrap();
        assert!(!g.sim(&y).unwrap());
        // Oracle for the last case: value(i) = exp(2πi/2^i) != 1 for i >= 1,
        // checked on the exponents of the first 20 coordinates.
        for i in 1..=20 {
            let e = g.tail().phase_exponent_at(i);
            assert!(!(&e - e.trunc()).is_zero());
        }
    }

    #[test]
    fn class_and_section_examples() {
        let i = CycScalar::i();
        let x = fam_p(vec![i.clone(), i.conj(), i.clone(), i.conj()], vec![]);
        let omega = x.class_of().unwrap();
        assert_eq!(omega.tail().period(), 2); // minimal period
        let y = fam_p(vec![one()], vec![(3, CycScalar::from_int(5))]);
        let sec = y.class_of().unwrap().section();
        assert_eq!(sec, fam_p(vec![one()], vec![]));
        assert!(y.sim(&sec).unwrap());
        let g = CoordFamily::geom_phase(rational(1, 1), 2, vec![(0, minus_one())]).unwrap();
        let gc = g.class_of().unwrap();
        assert!(gc.section().overrides().is_empty());
        assert_eq!(g.class_of().unwrap(), gc.section().class_of().unwrap());
        // class_of(section(ω)) = ω and sim(x, section(class_of(x))).
        assert!(g.sim(&gc.section()).unwrap());
    }

    #[test]
    fn zero_coordinate_rejected_by_class() {
        let x = fam_p(vec![one()], vec![(2, CycScalar::zero())]);
        assert!(x.has_zero_coordinate());
        assert_eq!(x.class_of(), Err(Error::ZeroCoordinate(2)));
    }

    #[test]
    fn approx_examples() {
        let g = CoordFamily::geom_phase(rational(1, 1), 2, vec![]).unwrap();
        let ones = fam_p(vec![one()], vec![]);
        // ~ and ≈ genuinely differ on the geometric phase witness.
        assert!(approx(&g, &ones).unwrap());
        assert!(!g.sim(&ones).unwrap());
        let alt = fam_p(vec![one(), minus_one()], vec![]);
        assert!(!approx(&alt, &ones).unwrap());
        // Reflexivity on an arbitrary unit family.
        let z = fam_p(vec![CycScalar::i()], vec![(1, minus_one())]);
        assert!(approx(&z, &z).unwrap());
        // Non-unit coordinates are rejected.
        let bad = fam_p(vec![CycScalar::from_int(2)], vec![]);
        assert!(matches!(
            approx(&bad, &ones),
            Err(Error::NonUnitCoordinate(_))
        ));
    }

    #[test]
    fn approx_t_examples() {
        let g = CoordFamily::geom_phase(rational(1, 1), 2, vec![]).unwrap();
        let ones = fam_p(vec![one()], vec![]);
        assert!(approx_t(&g, &ones).unwrap());
        let neg = fam_p(vec![minus_one()], vec![]);
        assert!(!approx_t(&neg, &ones).unwrap());
        // ~ implies ≈_𝕋.
        let a = fam_p(vec![CycScalar::i()], vec![(5, one())]);
        let b = fam_p(vec![CycScalar::i()], vec![]);
        assert!(a.sim(&b).unwrap() && approx_t(&a, &b).unwrap());
    }

    #[test]
    fn kappa_identifies_approx_classes() {
        let g = CoordFamily::geom_phase(rational(1, 1), 2, vec![])
            .unwrap()
            .class_of()
            .unwrap();
        let ones = fam_p(vec![one()], vec![]).class_of().unwrap();
        let alt = fam_p(vec![one(), minus_one()], vec![]).class_of().unwrap();
        assert_eq!(kappa(&g).unwrap(), kappa(&ones).unwrap());
        assert_ne!(g, ones); // distinct classes, same signature
        assert_ne!(kappa(&alt).unwrap(), kappa(&ones).unwrap());
        assert_eq!(kappa(&alt).unwrap(), kappa(&alt).unwrap());
    }

    #[test]
    fn scalar_class_group() {
        let a = fam_p(vec![minus_one()], vec![]).class_of().unwrap();
        let b = CoordFamily::geom_phase(rational(1, 3), 2, vec![])
            .unwrap()
            .class_of()
            .unwrap();
        let ab = a.scalar_class_mul(&b).unwrap();
        let back = ab.scalar_class_mul(&b.scalar_class_inv().unwrap()).unwrap();
        assert_eq!(back, a);
        assert!(a
            .scalar_class_mul(&a.scalar_class_inv().unwrap())
            .unwrap()
            .is_scalar_one());
        // Section multiplicativity: section(ω·ω') = section(ω)·section(ω').
        let lhs = ab.section();
        let rhs = a.section().scalar_mul(&b.section()).unwrap();
        assert_eq!(lhs, rhs);
        // Free action: β·ω = ω forces β = [1].
        let omega = fam_p(vec![CycScalar::i(), one()], vec![]).class_of().unwrap();
        assert_ne!(omega.scale_by(&a).unwrap(), omega);
        let one_class = ClassId::scalar_one();
        assert_eq!(omega.scale_by(&one_class).unwrap(), omega);
    }

    #[test]
    fn phases_with_same_base_merge() {
        let a = CoordFamily::geom_phase(rational(1, 3), 2, vec![]).unwrap();
        let b = CoordFamily::geom_phase(rational(2, 3), 2, vec![]).unwrap();
        let prod = a.scalar_mul(&b).unwrap();
        let expect = CoordFamily::geom_phase(rational(1, 1), 2, vec![]).unwrap();
        assert_eq!(prod, expect);
        // Inverse phases cancel to the trivial tail.
        let inv = a.scalar_conj().unwrap();
        let unit = a.scalar_mul(&inv).unwrap();
        assert!(!unit.tail().has_phases());
    }

    #[test]
    fn override_equal_to_tail_is_dropped() {
        let x = fam_p(vec![one(), minus_one()], vec![(2, one())]);
        assert!(x.overrides().is_empty());
        let g = CoordFamily::geom_phase(rational(1, 1), 2, vec![(1, minus_one())]).unwrap();
        // value(1) = exp(πi) = -1 equals the override, so it is dropped.
        assert!(g.overrides().is_empty());
    }

    #[test]
    fn dims_validation() {
        let sp = SpaceFamily::new(vec![2], true).unwrap();
        let bad = CoordFamily::periodic(sp.clone(), vec![Vector::scalar(one())], vec![]);
        assert!(matches!(bad, Err(Error::DimMismatch { .. })));
        assert!(SpaceFamily::new(vec![9], true).is_err());
        let ok = CoordFamily::periodic(sp, vec![Vector::basis(2, 0)], vec![]);
        assert!(ok.is_ok());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_unit_scalar() -> impl Strategy<Value = CycScalar> {
            (prop::sample::select(vec![1u32, 2, 3, 4, 8]), 0i64..8)
                .prop_map(|(n, k)| CycScalar::root_of_unity(n, k).unwrap())
        }

        fn arb_unit_family() -> impl Strategy<Value = CoordFamily<Vector>> {
            (
                prop::collection::vec(arb_unit_scalar(), 1..4),
                prop::collection::btree_map(0usize..6, arb_unit_scalar(), 0..3),
                prop::option::of((1i64..4, prop::sample::select(vec![2u32, 3]))),
            )
                .prop_map(|(tail, ovr, phase)| {
                    let base = match phase {
                        Some((c, m)) => {
                            CoordFamily::geom_phase(rational(c, 1 + c % 2), m, vec![]).unwrap()
                        }
                        None => fam_p(vec![one()], vec![]),
                    };
                    let periodic = fam_p(tail, ovr.into_iter().collect());
                    periodic.scalar_mul(&base).unwrap()
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn equivalences_are_equivalences(
                x in arb_unit_family(),
                y in arb_unit_family(),
                z in arb_unit_family()
            ) {
                // Reflexive.
                prop_assert!(x.sim(&x).unwrap());
                prop_assert!(approx(&x, &x).unwrap());
                prop_assert!(approx_t(&x, &x).unwrap());
                // Symmetric.
                prop_assert_eq!(x.sim(&y).unwrap(), y.sim(&x).unwrap());
                prop_assert_eq!(approx(&x, &y).unwrap(), approx(&y, &x).unwrap());
                prop_assert_eq!(approx_t(&x, &y).unwrap(), approx_t(&y, &x).unwrap());
                // Transitive on this sampled triple.
                if x.sim(&y).unwrap() && y.sim(&z).unwrap() {
                    prop_assert!(x.sim(&z).unwrap());
                }
                if approx(&x, &y).unwrap() && approx(&y, &z).unwrap() {
                    prop_assert!(approx(&x, &z).unwrap());
                }
                // ~ ⟹ ≈_𝕋 ⟹ ≈ on unit scalar families.
                if x.sim(&y).unwrap() {
                    prop_assert!(approx_t(&x, &y).unwrap());
                }
                if approx_t(&x, &y).unwrap() {
                    prop_assert!(approx(&x, &y).unwrap());
                }
                // kappa matches ≈ on sections.
                let kx = kappa(&x.class_of().unwrap()).unwrap();
                let ky = kappa(&y.class_of().unwrap()).unwrap();
                let sx = x.class_of().unwrap().section();
                let sy = y.class_of().unwrap().section();
                prop_assert_eq!(kx == ky, approx(&sx, &sy).unwrap());
            }

            #[test]
            fn class_group_laws(
                x in arb_unit_family(),
                y in arb_unit_family(),
                z in arb_unit_family()
            ) {
                let (a, b, c) = (
                    x.class_of().unwrap(),
                    y.class_of().unwrap(),
                    z.class_of().unwrap(),
                );
                let ab = a.scalar_class_mul(&b).unwrap();
                prop_assert_eq!(ab.clone(), b.scalar_class_mul(&a).unwrap());
                prop_assert_eq!(
                    ab.scalar_class_mul(&c).unwrap(),
                    a.scalar_class_mul(&b.scalar_class_mul(&c).unwrap()).unwrap()
                );
                prop_assert!(a.scalar_class_mul(&a.scalar_class_inv().unwrap()).unwrap().is_scalar_one());
                // Section multiplicativity.
                prop_assert_eq!(
                    ab.section(),
                    a.section().scalar_mul(&b.section()).unwrap()
                );
                // Free action of the nontrivial class.
                if !a.is_scalar_one() {
                    prop_assert_ne!(b.scale_by(&a).unwrap(), b);
                }
            }
        }
    }
}
