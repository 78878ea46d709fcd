//! Normal form for elements of the tensor product of an infinite family.
//!
//! An element is a finite sum of class components.  The component at class
//! `ω` is a dense coefficient block over a finite support `F`, read as "this
//! block tensored with the canonical section `c(ω)` at every index off `F`".
//! Enlarging `F` by tensoring in section coordinates never changes the
//! element, and components of distinct classes are linearly independent, so
//! equality is decidable classwise after embedding blocks to a common
//! support.

use std::collections::{BTreeMap, BTreeSet};

use crate::families::{ClassId, CoordFamily, Phase, SpaceFamily, Tail, Vector};
use crate::linalg::Mat;
use crate::scalars::CycScalar;
use crate::{Error, Result};

/// Desk-scale cap on the size of a finite support.
pub const MAX_SUPPORT: usize = 8;

/// Dense coefficient block of shape `Π_{i∈F} dims(i)`, row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Block {
    dims: Vec<usize>,
    data: Vec<CycScalar>,
}

impl Block {
    /// Rank-zero block holding a single coefficient.
    pub fn scalar(c: CycScalar) -> Self {
        Block {
            dims: Vec::new(),
            data: vec![c],
        }
    }

    /// Outer product of coordinate vectors.
    pub fn outer(vectors: &[Vector]) -> Self {
        let mut block = Self::scalar(CycScalar::one());
        for (k, v) in vectors.iter().enumerate() {
            block = block.embed_axis(k, v);
        }
        block
    }

    pub fn from_data(dims: Vec<usize>, data: Vec<CycScalar>) -> Result<Self> {
        let expect: usize = dims.iter().product();
        if data.len() != expect {
            return Err(Error::ShapeMismatch);
        }
        Ok(Block { dims, data })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn data(&self) -> &[CycScalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        Block {
            dims: self.dims.clone(),
            data: self.data.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::ShapeMismatch);
        }
        Ok(Block {
            dims: self.dims.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Insert a new tensor factor `v` as axis `pos`.
    pub fn embed_axis(&self, pos: usize, v: &Vector) -> Self {
        let d = v.dim();
        let inner: usize = self.dims[pos..].iter().product();
        let outer: usize = self.dims[..pos].iter().product();
        let mut dims = self.dims.clone();
        dims.insert(pos, d);
        let mut data = Vec::with_capacity(self.data.len() * d);
        for o in 0..outer {
            for coef in &v.0 {
                for i in 0..inner {
                    data.push(&self.data[o * inner + i] * coef);
                }
            }
        }
        Block { dims, data }
    }

    /// Apply a matrix along one tensor factor.
    pub fn mode_apply(&self, pos: usize, m: &Mat) -> Result<Self> {
        let c = self.dims[pos];
        if m.cols() != c {
            return Err(Error::ShapeMismatch);
        }
        let r = m.rows();
        let inner: usize = self.dims[pos + 1..].iter().product();
        let outer: usize = self.dims[..pos].iter().product();
        let mut dims = self.dims.clone();
        dims[pos] = r;
        let mut data = vec![CycScalar::zero(); outer * r * inner];
        for o in 0..outer {
            for i in 0..r {
                for j in 0..c {
                    let coef = m.at(i, j);
                    if coef.is_zero() {
                        continue;
                    }
                    for k in 0..inner {
                        let src = &self.data[(o * c + j) * inner + k];
                        if src.is_zero() {
                            continue;
                        }
                        let dst = &mut data[(o * r + i) * inner + k];
                        *dst = &*dst + &(coef * src);
                    }
                }
            }
        }
        Ok(Block { dims, data })
    }
}

/// A class component: coefficients over a sorted finite support.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ClassBlock {
    support: Vec<usize>,
    block: Block,
}

impl ClassBlock {
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn block(&self) -> &Block {
        &self.block
    }

    /// Embed to a larger support by tensoring in section coordinates of `ω`.
    pub(crate) fn embed_to(&self, target: &[usize], class: &ClassId<Vector>) -> Result<ClassBlock> {
        let mut block = self.block.clone();
        let mut support = self.support.clone();
        for &j in target {
            if support.contains(&j) {
                continue;
            }
            let pos = support.partition_point(|&k| k < j);
            let v = class.section_value_at(j)?;
            block = block.embed_axis(pos, &v);
            support.insert(pos, j);
        }
        debug_assert_eq!(support, target);
        Ok(ClassBlock { support, block })
    }
}

/// Normal form of an element of `⊗_i X_i`: a finite association from classes
/// to support blocks, with all-zero blocks pruned.
#[derive(Clone, Debug)]
pub struct TensorElement {
    spaces: SpaceFamily,
    components: BTreeMap<ClassId<Vector>, ClassBlock>,
}

fn support_union(a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
    let set: BTreeSet<usize> = a.iter().chain(b.iter()).copied().collect();
    if set.len() > MAX_SUPPORT {
        return Err(Error::CapExceeded(format!(
            "support of size {} exceeds {MAX_SUPPORT}",
            set.len()
        )));
    }
    Ok(set.into_iter().collect())
}

impl TensorElement {
    pub fn zero(spaces: SpaceFamily) -> Self {
        TensorElement {
            spaces,
            components: BTreeMap::new(),
        }
    }

    /// The universal multilinear map on a representable family: a single-class
    /// element whose block collects the override coordinates.
    ///
    /// A family with a zero coordinate maps to the zero element (callers that
    /// need to warn can test `has_zero_coordinate` first); class formation is
    /// what requires nonzero coordinates, not the map itself.
    pub fn theta(x: &CoordFamily<Vector>) -> Result<Self> {
        if x.has_zero_coordinate() {
            return Ok(Self::zero(x.spaces().clone()));
        }
        let class = x.class_of()?;
        let support: Vec<usize> = x.overrides().keys().copied().collect();
        if support.len() > MAX_SUPPORT {
            return Err(Error::CapExceeded(format!(
                "family has {} overrides; support cap is {MAX_SUPPORT}",
                support.len()
            )));
        }
        let vectors: Vec<Vector> = x.overrides().values().cloned().collect();
        let block = Block::outer(&vectors);
        Self::from_class_block(class, support, block)
    }

    /// Materialize one class component (the embedding of a finite tensor into
    /// the class part along the canonical section).
    pub fn from_class_block(
        class: ClassId<Vector>,
        support: Vec<usize>,
        block: Block,
    ) -> Result<Self> {
        if support.len() > MAX_SUPPORT {
            return Err(Error::CapExceeded(format!(
                "support of size {} exceeds {MAX_SUPPORT}",
                support.len()
            )));
        }
        if !support.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Other("support must be strictly increasing".into()));
        }
        if block.dims().len() != support.len() {
            return Err(Error::ShapeMismatch);
        }
        let spaces = class.spaces().clone();
        for (k, &j) in support.iter().enumerate() {
            if block.dims()[k] != spaces.dim(j) {
                return Err(Error::DimMismatch {
                    index: j,
                    expected: spaces.dim(j),
                    got: block.dims()[k],
                });
            }
        }
        let mut components = BTreeMap::new();
        if !block.is_zero() {
            components.insert(class, ClassBlock { support, block });
        }
        Ok(TensorElement { spaces, components })
    }

    pub fn spaces(&self) -> &SpaceFamily {
        &self.spaces
    }

    pub fn components(&self) -> impl Iterator<Item = (&ClassId<Vector>, &ClassBlock)> {
        self.components.iter()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_at(&self, class: &ClassId<Vector>) -> Option<&ClassBlock> {
        self.components.get(class)
    }

    pub fn classes(&self) -> impl Iterator<Item = &ClassId<Vector>> {
        self.components.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.spaces != other.spaces {
            return Err(Error::SpaceMismatch);
        }
        let mut components = self.components.clone();
        for (class, cb) in &other.components {
            match components.remove(class) {
                None => {
                    components.insert(class.clone(), cb.clone());
                }
                Some(mine) => {
                    let target = support_union(&mine.support, &cb.support)?;
                    let a = mine.embed_to(&target, class)?;
                    let b = cb.embed_to(&target, class)?;
                    let sum = a.block.add(&b.block)?;
                    if !sum.is_zero() {
                        components.insert(
                            class.clone(),
                            ClassBlock {
                                support: target,
                                block: sum,
                            },
                        );
                    }
                }
            }
        }
        Ok(TensorElement {
            spaces: self.spaces.clone(),
            components,
        })
    }

    pub fn scalar_mul(&self, s: &CycScalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.spaces.clone());
        }
        TensorElement {
            spaces: self.spaces.clone(),
            components: self
                .components
                .iter()
                .map(|(cl, cb)| {
                    (
                        cl.clone(),
                        ClassBlock {
                            support: cb.support.clone(),
                            block: cb.block.scale(s),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scalar_mul(&CycScalar::from_int(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Classwise split; parts sum back to the element.
    pub fn decompose(&self) -> Vec<(ClassId<Vector>, TensorElement)> {
        self.components
            .iter()
            .map(|(cl, cb)| {
                let mut components = BTreeMap::new();
                components.insert(cl.clone(), cb.clone());
                (
                    cl.clone(),
                    TensorElement {
                        spaces: self.spaces.clone(),
                        components,
                    },
                )
            })
            .collect()
    }

    /// JSON export of the normal form with exact scalar strings.
    pub fn to_json(&self) -> serde_json::Value {
        let comps: Vec<serde_json::Value> = self
            .components
            .iter()
            .map(|(cl, cb)| {
                serde_json::json!({
                    "class": class_json(cl),
                    "support": cb.support,
                    "block_dims": cb.block.dims(),
                    "block": cb.block.data().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "dims_period": self.spaces.dims(),
            "components": comps,
        })
    }
}

pub(crate) fn class_json(cl: &ClassId<Vector>) -> serde_json::Value {
    serde_json::json!({
        "periodic": cl
            .tail()
            .periodic_part()
            .iter()
            .map(|v| v.0.iter().map(|c| c.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "phases": cl
            .tail()
            .phases()
            .iter()
            .map(|p| serde_json::json!({"c": p.c().to_string(), "m": p.m()}))
            .collect::<Vec<_>>(),
    })
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.spaces == other.spaces && self.equals(other).unwrap_or(false)
    }
}

impl Eq for TensorElement {}

// ---------------------------------------------------------------------------
// Operator families.

/// A coordinate family of linear maps `T_i : X_i → Y_i` (periodic matrix tail
/// plus finite overrides), acting classwise on tensor elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorFamily {
    target: SpaceFamily,
    fam: CoordFamily<Mat>,
}

impl OperatorFamily {
    pub fn new(
        source: SpaceFamily,
        target: SpaceFamily,
        tail: Vec<Mat>,
        overrides: Vec<(usize, Mat)>,
    ) -> Result<Self> {
        let tail = Tail::new(tail, Vec::new())?;
        Self::from_tail(source, target, tail, overrides.into_iter().collect())
    }

    fn from_tail(
        source: SpaceFamily,
        target: SpaceFamily,
        tail: Tail<Mat>,
        overrides: BTreeMap<usize, Mat>,
    ) -> Result<Self> {
        let window =
            crate::families::lcm(crate::families::lcm(source.period(), target.period()), tail.period());
        for i in 0..window {
            let m = &tail.periodic_part()[i % tail.period()];
            if m.rows() != target.dim(i) {
                return Err(Error::DimMismatch {
                    index: i,
                    expected: target.dim(i),
                    got: m.rows(),
                });
            }
        }
        for (i, m) in &overrides {
            if m.rows() != target.dim(*i) {
                return Err(Error::DimMismatch {
                    index: *i,
                    expected: target.dim(*i),
                    got: m.rows(),
                });
            }
        }
        // Column conformance against the source runs through the family.
        let fam = CoordFamily::new(source, tail, overrides)?;
        Ok(OperatorFamily { target, fam })
    }

    pub fn identity(spaces: SpaceFamily) -> Self {
        let tail: Vec<Mat> = (0..spaces.period())
            .map(|r| Mat::identity(spaces.dim(r)))
            .collect();
        Self::new(spaces.clone(), spaces, tail, Vec::new()).expect("identity conforms")
    }

    /// A scalar family acting by scalar multiples of the identity; this is the
    /// module action of the scalar tensor algebra.
    pub fn from_scalar_family(scalars: &CoordFamily<Vector>, spaces: &SpaceFamily) -> Result<Self> {
        if !scalars.spaces().is_scalar() {
            return Err(Error::NotOneDimensional);
        }
        let window = crate::families::lcm(scalars.tail().period(), spaces.period());
        let tail_mats: Vec<Mat> = (0..window)
            .map(|r| {
                let s = scalars.tail().periodic_part()[r % scalars.tail().period()]
                    .as_scalar()
                    .unwrap();
                Mat::identity(spaces.dim(r)).scale(s)
            })
            .collect();
        let tail = Tail::new(tail_mats, scalars.tail().phases().to_vec())?;
        let overrides = scalars
            .overrides()
            .iter()
            .map(|(i, v)| {
                (
                    *i,
                    Mat::identity(spaces.dim(*i)).scale(v.as_scalar().unwrap()),
                )
            })
            .collect();
        Self::from_tail(spaces.clone(), spaces.clone(), tail, overrides)
    }

    pub fn source(&self) -> &SpaceFamily {
        self.fam.spaces()
    }

    pub fn target(&self) -> &SpaceFamily {
        &self.target
    }

    pub fn tail(&self) -> &Tail<Mat> {
        self.fam.tail()
    }

    pub fn overrides(&self) -> &BTreeMap<usize, Mat> {
        self.fam.overrides()
    }

    pub fn value_at(&self, i: usize) -> Result<Mat> {
        self.fam.value_at(i)
    }

    /// `~` on operator families (equal tails).
    pub fn sim(&self, other: &Self) -> Result<bool> {
        if self.target != other.target {
            return Err(Error::SpaceMismatch);
        }
        self.fam.sim(&other.fam)
    }

    /// Pointwise composition `self_i ∘ other_i`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.target != *self.source() {
            return Err(Error::SpaceMismatch);
        }
        let window = crate::families::lcm(self.tail().period(), other.tail().period());
        let tail_mats: Vec<Mat> = (0..window)
            .map(|r| {
                self.tail().periodic_part()[r % self.tail().period()]
                    .matmul(&other.tail().periodic_part()[r % other.tail().period()])
            })
            .collect::<Result<_>>()?;
        let phases: Vec<Phase> = self
            .tail()
            .phases()
            .iter()
            .chain(other.tail().phases())
            .cloned()
            .collect();
        let tail = Tail::new(tail_mats, phases)?;
        let mut overrides = BTreeMap::new();
        let keys: BTreeSet<usize> = self
            .overrides()
            .keys()
            .chain(other.overrides().keys())
            .copied()
            .collect();
        for i in keys {
            overrides.insert(i, self.value_at(i)?.matmul(&other.value_at(i)?)?);
        }
        Self::from_tail(other.source().clone(), self.target.clone(), tail, overrides)
    }

    /// Classwise application: the component at `ω` maps into the class of the
    /// pointwise image family `[T_i·c(ω)_i]`, and the block passes through
    /// `⊗_{i∈F} T_i` after the support has been enlarged to cover the
    /// operator's overrides.
    pub fn apply(&self, a: &TensorElement) -> Result<TensorElement> {
        if a.spaces() != self.source() {
            return Err(Error::SpaceMismatch);
        }
        let mut out = TensorElement::zero(self.target.clone());
        for (class, cb) in a.components() {
            // Image tail from the operator tail acting on the section tail.
            let window = crate::families::lcm(self.tail().period(), class.tail().period());
            let mut image_values = Vec::with_capacity(window);
            for r in 0..window {
                let m = &self.tail().periodic_part()[r % self.tail().period()];
                let v = &class.tail().periodic_part()[r % class.tail().period()];
                let image = Vector(m.apply(&v.0)?);
                if image.0.iter().all(|c| c.is_zero()) {
                    return Err(Error::NotRepresentable(format!(
                        "operator tail maps the section to zero at residue {r}"
                    )));
                }
                image_values.push(image);
            }
            let phases: Vec<Phase> = self
                .tail()
                .phases()
                .iter()
                .chain(class.tail().phases())
                .cloned()
                .collect();
            let image_tail = Tail::new(image_values, phases)?;
            let image_class = ClassId::from_parts(self.target.clone(), image_tail);

            // Support must cover the operator's overrides.
            let op_keys: Vec<usize> = self.overrides().keys().copied().collect();
            let target_support = support_union(&cb.support, &op_keys)?;
            let embedded = cb.embed_to(&target_support, class)?;
            let mut block = embedded.block;
            for (axis, &j) in target_support.iter().enumerate() {
                block = block.mode_apply(axis, &self.value_at(j)?)?;
            }
            let part = TensorElement::from_class_block(image_class, target_support, block)?;
            out = out.add(&part)?;
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Witness search and independence helpers.

/// Default pool of exact unit vectors: standard basis, Pythagorean mixes, and
/// quarter-phase mixes.
pub fn default_unit_pool(dim: usize) -> Vec<Vector> {
    let mut pool: Vec<Vector> = (0..dim).map(|k| Vector::basis(dim, k)).collect();
    let c35 = CycScalar::from_ratio(3, 5);
    let c45 = CycScalar::from_ratio(4, 5);
    for j in 0..dim {
        for k in 0..dim {
            if j == k {
                continue;
            }
            let mut v = vec![CycScalar::zero(); dim];
            v[j] = c35.clone();
            v[k] = c45.clone();
            pool.push(Vector(v));
            let mut w = vec![CycScalar::zero(); dim];
            w[j] = c35.clone();
            w[k] = &c45 * &CycScalar::i();
            pool.push(Vector(w));
        }
    }
    pool
}

/// Per-coordinate avoidance of the finite union of kernels: returns `x` with
/// `T⁽¹⁾_i x_i ≠ 0` everywhere and `[T⁽ᵏ⁾_i x_i] ≁ [T⁽¹⁾_i x_i]` for `k ≥ 2`.
/// A failed search is reported, never treated as a non-injectivity result.
pub fn operator_faithfulness_witness(
    ops: &[OperatorFamily],
    pool: Option<&[Vec<Vector>]>,
) -> Result<CoordFamily<Vector>> {
    let first = ops
        .first()
        .ok_or_else(|| Error::Other("need at least one operator family".into()))?;
    for t in ops {
        if t.source() != first.source() || t.target() != first.target() {
            return Err(Error::SpaceMismatch);
        }
        if t.tail().has_phases() {
            return Err(Error::NotRepresentable(
                "witness search needs phase-free operator tails".into(),
            ));
        }
    }
    let source = first.source().clone();
    let mut window = source.period();
    for t in ops {
        window = crate::families::lcm(window, t.tail().period());
    }

    let pool_for = |dim: usize, idx: usize| -> Vec<Vector> {
        match pool {
            Some(p) => p[idx % p.len()].clone(),
            None => default_unit_pool(dim),
        }
    };

    // A candidate works at index i when T⁽¹⁾_i v ≠ 0 and (T⁽ᵏ⁾_i - T⁽¹⁾_i) v ≠ 0
    // for every k whose operator differs from the first at i.
    let try_index = |mats: &[Mat], candidates: &[Vector]| -> Option<Vector> {
        let t1 = &mats[0];
        candidates.iter().find_map(|v| {
            let img = t1.apply(&v.0).ok()?;
            if img.iter().all(|c| c.is_zero()) {
                return None;
            }
            for tk in &mats[1..] {
                if tk == t1 {
                    continue;
                }
                let diff = tk.sub(t1).ok()?.apply(&v.0).ok()?;
                if diff.iter().all(|c| c.is_zero()) {
                    return None;
                }
            }
            Some(v.clone())
        })
    };

    let mut tail_values = Vec::with_capacity(window);
    for r in 0..window {
        let mats: Vec<Mat> = ops
            .iter()
            .map(|t| t.tail().periodic_part()[r % t.tail().period()].clone())
            .collect();
        let v = try_index(&mats, &pool_for(source.dim(r), r))
            .ok_or_else(|| Error::WitnessNotFound(format!("pool exhausted at tail residue {r}")))?;
        tail_values.push(v);
    }
    let override_keys: BTreeSet<usize> = ops
        .iter()
        .flat_map(|t| t.overrides().keys().copied())
        .collect();
    let mut overrides = Vec::new();
    for i in override_keys {
        let mats: Vec<Mat> = ops.iter().map(|t| t.value_at(i)).collect::<Result<_>>()?;
        let v = try_index(&mats, &pool_for(source.dim(i), i))
            .ok_or_else(|| Error::WitnessNotFound(format!("pool exhausted at coordinate {i}")))?;
        overrides.push((i, v));
    }
    let witness = CoordFamily::periodic(source, tail_values, overrides)?;

    // Verify that the image tails are pairwise inequivalent to the first.
    let first_image = image_tail(&ops[0], &witness)?;
    for t in &ops[1..] {
        if image_tail(t, &witness)? == first_image && !t.sim(&ops[0])? {
            return Err(Error::WitnessNotFound(
                "image classes collide despite distinct operators".into(),
            ));
        }
    }
    Ok(witness)
}

fn image_tail(op: &OperatorFamily, x: &CoordFamily<Vector>) -> Result<Tail<Vector>> {
    let window = crate::families::lcm(op.tail().period(), x.tail().period());
    let mut values = Vec::with_capacity(window);
    for r in 0..window {
        let m = &op.tail().periodic_part()[r % op.tail().period()];
        let v = &x.tail().periodic_part()[r % x.tail().period()];
        values.push(Vector(m.apply(&v.0)?));
    }
    Tail::new(values, Vec::new())
}

/// Stack elements as coefficient rows over the per-class union supports, for
/// exact rank computations.
pub fn coefficient_matrix(elems: &[TensorElement]) -> Result<Mat> {
    let mut layouts: BTreeMap<ClassId<Vector>, Vec<usize>> = BTreeMap::new();
    for e in elems {
        for (cl, cb) in e.components() {
            let entry = layouts.entry(cl.clone()).or_default();
            let merged = support_union(entry, cb.support())?;
            *entry = merged;
        }
    }
    let mut widths = Vec::new();
    for (cl, support) in &layouts {
        let w: usize = support.iter().map(|&j| cl.spaces().dim(j)).product();
        widths.push(w);
    }
    let total: usize = widths.iter().sum();
    let mut rows = Vec::with_capacity(elems.len());
    for e in elems {
        let mut row = Vec::with_capacity(total);
        for ((cl, support), w) in layouts.iter().zip(&widths) {
            match e.component_at(cl) {
                Some(cb) => {
                    let emb = cb.embed_to(support, cl)?;
                    row.extend(emb.block.data().iter().cloned());
                }
                None => row.extend(std::iter::repeat_n(CycScalar::zero(), *w)),
            }
        }
        rows.push(row);
    }
    Mat::from_rows(rows)
}

pub fn linearly_independent(elems: &[TensorElement]) -> Result<bool> {
    Ok(coefficient_matrix(elems)?.rank() == elems.len())
}
