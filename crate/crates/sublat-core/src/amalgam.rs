//! Spans of injections and their amalgams.
//!
//! A span is a pair of injections ν: M ↪ V, ω: M ↪ W out of a shared finite
//! dimensional source. Spans differing by an automorphism of M are
//! identified; the classes form the finite index set B(V, W). Each class
//! carries a pushout V ⊕_{ν,ω} W, the quotient of V ⊕ W gluing ν(m) to ω(m),
//! into which both V and W still inject. This module computes the classes,
//! their pushouts, functoriality along injections of V and W, the
//! reassociation isomorphism between the two ways of amalgamating three
//! spaces, and the comparison isomorphism identifying an abstract amalgam
//! with a sum of two images inside a common target.

use std::collections::BTreeMap;
use std::sync::Mutex;

use once_cell::sync::Lazy;

use crate::fp::{enumerate_injections, quotient, Fp, LinMap, Matrix, Subspace};
use crate::{Error, Result};

/// A span of injections (M, ν, ω) with ν: M ↪ V and ω: M ↪ W.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Span {
    nu: LinMap,
    omega: LinMap,
}

impl Span {
    pub fn new(nu: LinMap, omega: LinMap) -> Result<Span> {
        if nu.field() != omega.field() {
            return Err(Error::FieldMismatch(nu.field().p(), omega.field().p()));
        }
        if nu.domain_dim() != omega.domain_dim() {
            return Err(Error::DimensionMismatch(nu.domain_dim(), omega.domain_dim()));
        }
        if !nu.is_injective() || !omega.is_injective() {
            return Err(Error::NotInjective);
        }
        Ok(Span { nu, omega })
    }

    /// The trivial span with M = 0.
    pub fn empty(field: Fp, v_dim: usize, w_dim: usize) -> Span {
        Span {
            nu: LinMap::new(Matrix::zero(field, v_dim, 0)),
            omega: LinMap::new(Matrix::zero(field, w_dim, 0)),
        }
    }

    pub fn field(&self) -> Fp {
        self.nu.field()
    }

    pub fn m_dim(&self) -> usize {
        self.nu.domain_dim()
    }

    pub fn v_dim(&self) -> usize {
        self.nu.codomain_dim()
    }

    pub fn w_dim(&self) -> usize {
        self.omega.codomain_dim()
    }

    pub fn nu(&self) -> &LinMap {
        &self.nu
    }

    pub fn omega(&self) -> &LinMap {
        &self.omega
    }

    /// The (v_dim + w_dim) × m_dim matrix [ν; ω]. Reparametrizing M acts on
    /// it by column operations, so its column-equivalence class determines
    /// the span class.
    pub fn stacked(&self) -> Matrix {
        self.nu.matrix().vstack(self.omega.matrix())
    }

    /// Canonical representative of the class: the unique reparametrization
    /// whose stacked matrix is in reduced column echelon form. Two spans are
    /// equivalent iff their canonical forms are identical.
    pub fn canonicalize(&self) -> Span {
        let rcef = self.stacked().transpose().rref().transpose();
        Span::from_stacked(self.field(), self.v_dim(), self.w_dim(), &rcef)
    }

    fn from_stacked(field: Fp, v_dim: usize, w_dim: usize, stacked: &Matrix) -> Span {
        let m = stacked.cols();
        let mut nu = Matrix::zero(field, v_dim, m);
        let mut omega = Matrix::zero(field, w_dim, m);
        for j in 0..m {
            for i in 0..v_dim {
                nu.set(i, j, stacked.get(i, j));
            }
            for i in 0..w_dim {
                omega.set(i, j, stacked.get(v_dim + i, j));
            }
        }
        Span { nu: LinMap::new(nu), omega: LinMap::new(omega) }
    }
}

/// Block injections of V and W into V ⊕ W with coordinates (v, w).
pub fn block_injections(field: Fp, v_dim: usize, w_dim: usize) -> (LinMap, LinMap) {
    let top = Matrix::identity(field, v_dim).vstack(&Matrix::zero(field, w_dim, v_dim));
    let bottom = Matrix::zero(field, v_dim, w_dim).vstack(&Matrix::identity(field, w_dim));
    (LinMap::new(top), LinMap::new(bottom))
}

/// A class in B(V, W) together with its pushout P = V ⊕_{ν,ω} W, realised as
/// the pivot-complement quotient of V ⊕ W by the relation subspace
/// K = span{(ν(m), −ω(m))}. Stores the quotient projection, a section of it,
/// and the two canonical injections ι_V, ι_W into P.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AmalgamClass {
    span: Span,
    relation: Subspace,
    projection: LinMap,
    section: LinMap,
    iota_v: LinMap,
    iota_w: LinMap,
}

impl AmalgamClass {
    /// Canonicalize a span and attach its pushout data. The relation
    /// subspace, hence all the attached maps, depend only on the class.
    pub fn from_span(s: &Span) -> AmalgamClass {
        let span = s.canonicalize();
        let f = span.field();
        let (v, w, m) = (span.v_dim(), span.w_dim(), span.m_dim());
        let rows: Vec<Vec<u32>> = (0..m)
            .map(|j| {
                let mut r = span.nu.matrix().col(j);
                r.extend(span.omega.matrix().col(j).into_iter().map(|x| f.neg(x)));
                r
            })
            .collect();
        let relation = Subspace::from_spanning(f, v + w, &rows);
        let q = quotient(&relation);
        let (block_v, block_w) = block_injections(f, v, w);
        let iota_v = q.projection.compose(&block_v);
        let iota_w = q.projection.compose(&block_w);
        AmalgamClass { span, relation, projection: q.projection, section: q.section, iota_v, iota_w }
    }

    /// The M = 0 class; its pushout is the direct sum.
    pub fn trivial(field: Fp, v_dim: usize, w_dim: usize) -> AmalgamClass {
        AmalgamClass::from_span(&Span::empty(field, v_dim, w_dim))
    }

    pub fn field(&self) -> Fp {
        self.span.field()
    }

    pub fn span(&self) -> &Span {
        &self.span
    }

    pub fn m_dim(&self) -> usize {
        self.span.m_dim()
    }

    pub fn v_dim(&self) -> usize {
        self.span.v_dim()
    }

    pub fn w_dim(&self) -> usize {
        self.span.w_dim()
    }

    pub fn pushout_dim(&self) -> usize {
        self.projection.codomain_dim()
    }

    /// K = span{(ν(m), −ω(m))} ⊆ V ⊕ W, the kernel of the projection.
    pub fn relation(&self) -> &Subspace {
        &self.relation
    }

    /// π: V ⊕ W → P.
    pub fn projection(&self) -> &LinMap {
        &self.projection
    }

    /// A fixed section of π (hits the non-pivot coordinates of K).
    pub fn section(&self) -> &LinMap {
        &self.section
    }

    /// ι_V: V → P, injective.
    pub fn iota_v(&self) -> &LinMap {
        &self.iota_v
    }

    /// ι_W: W → P, injective.
    pub fn iota_w(&self) -> &LinMap {
        &self.iota_w
    }
}

type BCache = BTreeMap<(u32, usize, usize), Vec<AmalgamClass>>;
static B_SETS: Lazy<Mutex<BCache>> = Lazy::new(|| Mutex::new(BTreeMap::new()));

/// All classes of B(V, W) for V = F_p^v_dim, W = F_p^w_dim, ordered by
/// (m_dim, canonical stacked matrix). Complete and duplicate-free; memoized
/// per (p, v_dim, w_dim).
pub fn b_set(field: Fp, v_dim: usize, w_dim: usize) -> Result<Vec<AmalgamClass>> {
    let key = (field.p(), v_dim, w_dim);
    if let Some(hit) = B_SETS.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let mut seen: BTreeMap<(usize, Matrix), Span> = BTreeMap::new();
    for m in 0..=v_dim.min(w_dim) {
        let nus = enumerate_injections(field, m, v_dim)?;
        let omegas = enumerate_injections(field, m, w_dim)?;
        for nu in &nus {
            for omega in &omegas {
                let s = Span { nu: nu.clone(), omega: omega.clone() }.canonicalize();
                seen.entry((m, s.stacked())).or_insert(s);
            }
        }
    }
    let out: Vec<AmalgamClass> = seen.values().map(AmalgamClass::from_span).collect();
    B_SETS.lock().unwrap().insert(key, out.clone());
    Ok(out)
}

/// Contravariant functoriality of B: pull a class over (V, W) back along
/// α: V' ↪ V and β: W' ↪ W. Returns the pullback class over (V', W') — its
/// span is the kernel of (v', w') ↦ ι_V(αv') − ι_W(βw') with the component
/// projections as legs — together with the induced injection of pushouts
/// α ⊕ β: P' ↪ P, which satisfies (α⊕β)∘ι_{V'} = ι_V∘α and
/// (α⊕β)∘ι_{W'} = ι_W∘β.
pub fn b_functorial(
    alpha: &LinMap,
    beta: &LinMap,
    c: &AmalgamClass,
) -> Result<(AmalgamClass, LinMap)> {
    if alpha.field() != c.field() || beta.field() != c.field() {
        return Err(Error::FieldMismatch(alpha.field().p(), c.field().p()));
    }
    if alpha.codomain_dim() != c.v_dim() {
        return Err(Error::DimensionMismatch(alpha.codomain_dim(), c.v_dim()));
    }
    if beta.codomain_dim() != c.w_dim() {
        return Err(Error::DimensionMismatch(beta.codomain_dim(), c.w_dim()));
    }
    if !alpha.is_injective() || !beta.is_injective() {
        return Err(Error::NotInjective);
    }
    let f = c.field();
    let (v1, w1) = (alpha.domain_dim(), beta.domain_dim());
    let left = c.iota_v.compose(alpha);
    let right = c.iota_w.compose(beta);
    let m_prime = left.matrix().hstack(&right.matrix().neg()).null_space();
    let nu_images: Vec<Vec<u32>> =
        m_prime.basis().row_vecs().iter().map(|r| r[..v1].to_vec()).collect();
    let om_images: Vec<Vec<u32>> =
        m_prime.basis().row_vecs().iter().map(|r| r[v1..].to_vec()).collect();
    let span = Span::new(
        LinMap::from_images(f, v1, &nu_images),
        LinMap::from_images(f, w1, &om_images),
    )?;
    let c_prime = AmalgamClass::from_span(&span);
    // The sum map kills the relation subspace of c', so lifting along the
    // section gives a well defined map of pushouts.
    let sum = left.matrix().hstack(right.matrix());
    let induced = LinMap::new(sum.mul(c_prime.section.matrix()));
    debug_assert!(induced.is_injective());
    Ok((c_prime, induced))
}

/// Output of [`reassociate`].
#[derive(Clone, Debug)]
pub struct Reassociation {
    /// Class over (W, T) whose pushout is W ⊕_{ω',τ'} T.
    pub wt_class: AmalgamClass,
    /// Class over (V, W ⊕_{ω',τ'} T) whose pushout is the right-nested
    /// amalgam V ⊕_{ν',g'} (W ⊕_{ω',τ'} T).
    pub outer_class: AmalgamClass,
    /// ζ: (V ⊕_{ν,ω} W) ⊕_{g,τ} T → V ⊕_{ν',g'} (W ⊕_{ω',τ'} T), an
    /// isomorphism through which the three canonical injections factor.
    pub zeta: LinMap,
}

/// Reassociate a left-nested amalgam: `inner` is a class over (V, W) with
/// pushout P₁, `outer` a class over (P₁, T) with pushout P. Constructs the
/// right-nested amalgam receiving the canonical injections of V, W, T and
/// the comparison isomorphism ζ from P onto it. The spans of the two
/// returned classes are the four induced legs (ω', τ') and (ν', g').
pub fn reassociate(inner: &AmalgamClass, outer: &AmalgamClass) -> Result<Reassociation> {
    if inner.field() != outer.field() {
        return Err(Error::FieldMismatch(inner.field().p(), outer.field().p()));
    }
    if outer.v_dim() != inner.pushout_dim() {
        return Err(Error::DimensionMismatch(outer.v_dim(), inner.pushout_dim()));
    }
    // Injections of the three factors into the iterated pushout P.
    let iv = outer.iota_v.compose(&inner.iota_v);
    let iw = outer.iota_v.compose(&inner.iota_w);
    let it = outer.iota_w.clone();
    // W and T glue inside P along the kernel of their difference map.
    let wt_class = kernel_span_class(&iw, &it);
    let h = LinMap::new(
        iw.matrix().hstack(it.matrix()).mul(wt_class.section.matrix()),
    );
    // Then V glues to the W⊕T amalgam the same way.
    let outer_class = kernel_span_class(&iv, &h);
    let theta = LinMap::new(
        iv.matrix().hstack(h.matrix()).mul(outer_class.section.matrix()),
    );
    // θ is injective with image all of P, hence invertible.
    let zeta = theta.inverse().ok_or(Error::NotInvertible)?;
    Ok(Reassociation { wt_class, outer_class, zeta })
}

/// Output of [`arrow_up`].
#[derive(Clone, Debug)]
pub struct ArrowUp {
    /// The class of the span along which δ(V) and ε(U) overlap in X.
    pub class: AmalgamClass,
    /// The injection pushout → X induced by δ + ε; it satisfies
    /// map∘ι_V = δ and map∘ι_U = ε, and its image is δ(V) + ε(U).
    pub map: LinMap,
    /// δ(V) + ε(U) as a subspace of X.
    pub image: Subspace,
}

/// Compare two injections δ: V ↪ X and ε: U ↪ X with a common target: their
/// images overlap along a span of (V, U), and the pushout of that span maps
/// isomorphically onto δ(V) + ε(U).
pub fn arrow_up(delta: &LinMap, epsilon: &LinMap) -> Result<ArrowUp> {
    if delta.field() != epsilon.field() {
        return Err(Error::FieldMismatch(delta.field().p(), epsilon.field().p()));
    }
    if delta.codomain_dim() != epsilon.codomain_dim() {
        return Err(Error::AmbientMismatch(delta.codomain_dim(), epsilon.codomain_dim()));
    }
    if !delta.is_injective() || !epsilon.is_injective() {
        return Err(Error::NotInjective);
    }
    let class = kernel_span_class(delta, epsilon);
    let map = LinMap::new(
        delta.matrix().hstack(epsilon.matrix()).mul(class.section.matrix()),
    );
    let image = delta.image().sum(&epsilon.image())?;
    debug_assert!(map.is_injective());
    Ok(ArrowUp { class, map, image })
}

/// The class whose span is ker((v, u) ↦ a(v) − b(u)) with component
/// projections as legs, for two injections a, b into a common target. Its
/// relation subspace equals that kernel verbatim, so the sum map a + b
/// descends to the pushout.
fn kernel_span_class(a: &LinMap, b: &LinMap) -> AmalgamClass {
    let f = a.field();
    let (v1, w1) = (a.domain_dim(), b.domain_dim());
    let kernel = a.matrix().hstack(&b.matrix().neg()).null_space();
    let nu_images: Vec<Vec<u32>> =
        kernel.basis().row_vecs().iter().map(|r| r[..v1].to_vec()).collect();
    let om_images: Vec<Vec<u32>> =
        kernel.basis().row_vecs().iter().map(|r| r[v1..].to_vec()).collect();
    let span = Span::new(
        LinMap::from_images(f, v1, &nu_images),
        LinMap::from_images(f, w1, &om_images),
    )
    .expect("component projections of a difference kernel are injective");
    AmalgamClass::from_span(&span)
}
