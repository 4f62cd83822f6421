//! Descent of a groupoid along the quotient by a central line (or any
//! central subspace), and the independent pushout oracle.
//!
//! Fix a closed groupoid on a single ambient `W` and a central injection
//! `δ: V ↪ W`. Two independent constructions live here. The direct one
//! builds a groupoid on `W/Im(δ)`: an isomorphism `α` belongs to it exactly
//! when it lifts through the projection, i.e. there are subspaces `N, N'`
//! of `W` mapping isomorphically onto the source and target of `α` and a
//! groupoid morphism `β: N → N'` with `α = π|_{N'} ∘ β ∘ (π|_N)⁻¹`. The
//! indirect one computes, per dimension, the set-level pushout of all
//! linear maps into `W` under two relations: equal class in the extended
//! table, and equal composite with the projection. The regular part of the
//! pushout table must coincide with the quotient table of the descended
//! groupoid; that cross-check is this module's main oracle. A byproduct of
//! the pushout is its kernel law: the kernel of the class of `ζ` is
//! `ker(π∘ζ)`.

use std::collections::BTreeMap;

use crate::centre::is_central_definition;
use crate::error::{Error, Result};
use crate::fp::{
    all_subspaces, enumerate_isos, quotient, Fp, LinMap, Matrix, QuotientData, Subspace,
};
use crate::functor::{all_maps, quotient_functor, FullFunctorTable, FunctorTable, Label};
use crate::groupoid::{AmbientFamily, Groupoid, Object};

/// A closed groupoid on one ambient together with a central injection and
/// the quotient data of its image. Centrality of the injection's class is
/// checked at construction; everything downstream depends on it.
#[derive(Clone, Debug)]
pub struct PrimitiveSetup {
    groupoid: Groupoid,
    table: FunctorTable,
    delta: LinMap,
    image: Subspace,
    quotient: QuotientData,
}

impl PrimitiveSetup {
    pub fn new(groupoid: Groupoid, delta: LinMap) -> Result<PrimitiveSetup> {
        if groupoid.family().len() != 1 {
            return Err(Error::SingleAmbientRequired);
        }
        let field = groupoid.family().field();
        if delta.field() != field {
            return Err(Error::FieldMismatch(delta.field().p(), field.p()));
        }
        if delta.codomain_dim() != groupoid.family().dim(0) {
            return Err(Error::AmbientMismatch(delta.codomain_dim(), groupoid.family().dim(0)));
        }
        if !delta.is_injective() {
            return Err(Error::NotInjective);
        }
        let table = quotient_functor(&groupoid)?;
        let x = table
            .gen()
            .expect("quotient tables carry labels")
            .q_class(0, delta.matrix())?;
        if !is_central_definition(&table, delta.domain_dim(), x)? {
            return Err(Error::NotCentral);
        }
        let image = delta.image();
        let quotient = quotient(&image);
        Ok(PrimitiveSetup { groupoid, table, delta, image, quotient })
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn table(&self) -> &FunctorTable {
        &self.table
    }

    pub fn delta(&self) -> &LinMap {
        &self.delta
    }

    pub fn image(&self) -> &Subspace {
        &self.image
    }

    /// Dimension of `W/Im(δ)`.
    pub fn q_dim(&self) -> usize {
        self.quotient.q_dim
    }

    /// `π: W → W/Im(δ)` in pivot-complement coordinates.
    pub fn projection(&self) -> &LinMap {
        &self.quotient.projection
    }

    /// A section of `π` hitting the non-pivot standard coordinates.
    pub fn section(&self) -> &LinMap {
        &self.quotient.section
    }

    fn field(&self) -> Fp {
        self.groupoid.family().field()
    }

    fn w_dim(&self) -> usize {
        self.groupoid.family().dim(0)
    }

    // All subspaces of W that π maps isomorphically onto u.
    fn complements_over(&self, u: &Subspace) -> Result<Vec<Subspace>> {
        let mut out = Vec::new();
        for n in all_subspaces(self.field(), self.w_dim())? {
            if n.dim() == u.dim()
                && n.intersect(&self.image)?.dim() == 0
                && n.map_through(&self.quotient.projection) == *u
            {
                out.push(n);
            }
        }
        Ok(out)
    }

    // Matrix of π restricted to n and corestricted to u = π(n), in the
    // canonical bases of n and u.
    fn projection_onto(&self, n: &Subspace, u: &Subspace) -> Matrix {
        let coords: Vec<Vec<u32>> = n
            .basis()
            .row_vecs()
            .iter()
            .map(|r| {
                u.coords(&self.quotient.projection.apply(r))
                    .expect("projection of a complement lands in its image")
            })
            .collect();
        LinMap::from_images(self.field(), u.dim(), &coords).matrix().clone()
    }
}

/// Search for a lift of `alpha: u → u2` (an isomorphism between subspaces of
/// `W/Im(δ)`, as a matrix in their canonical bases): a witness `(N, N', β)`
/// with `β` a groupoid morphism and `alpha = π|_{N'} ∘ β ∘ (π|_N)⁻¹`. For
/// each complement pair the required `β` is unique, so the search is a
/// membership test over all pairs.
pub fn lift_witness(
    s: &PrimitiveSetup,
    u: &Subspace,
    u2: &Subspace,
    alpha: &Matrix,
) -> Result<Option<(Subspace, Subspace, Matrix)>> {
    if u.ambient_dim() != s.q_dim() || u2.ambient_dim() != s.q_dim() {
        return Err(Error::AmbientMismatch(u.ambient_dim(), s.q_dim()));
    }
    if u.dim() != u2.dim() {
        return Err(Error::DimensionMismatch(u.dim(), u2.dim()));
    }
    if alpha.rows() != u2.dim() || alpha.cols() != u.dim() {
        return Err(Error::DimensionMismatch(alpha.rows(), u2.dim()));
    }
    if alpha.inverse().is_none() {
        return Err(Error::NotInvertible);
    }
    for n in s.complements_over(u)? {
        let p_n = s.projection_onto(&n, u);
        for n2 in s.complements_over(u2)? {
            let p_n2 = s.projection_onto(&n2, u2);
            let beta = p_n2
                .inverse()
                .expect("projection restricted to a complement is invertible")
                .mul(alpha)
                .mul(&p_n);
            if s.groupoid.contains(&(0, n.clone()), &(0, n2.clone()), &beta) {
                return Ok(Some((n, n2, beta)));
            }
        }
    }
    Ok(None)
}

/// The descended groupoid on `W/Im(δ)`: exactly the isomorphisms of
/// subspaces admitting a lift witness. The result must pass validation;
/// a failure would contradict centrality and is reported as an invariant
/// error.
pub fn primitive_groupoid(s: &PrimitiveSetup) -> Result<Groupoid> {
    let field = s.field();
    let family = AmbientFamily::single(field, s.q_dim());
    let mut morphisms: Vec<(Object, Object, Matrix)> = Vec::new();
    let subspaces = all_subspaces(field, s.q_dim())?;
    for u in &subspaces {
        for u2 in &subspaces {
            if u.dim() != u2.dim() {
                continue;
            }
            for alpha in enumerate_isos(u, u2)? {
                if lift_witness(s, u, u2, &alpha)?.is_some() {
                    morphisms.push(((0, u.clone()), (0, u2.clone()), alpha));
                }
            }
        }
    }
    let g = Groupoid::from_parts(family, &morphisms)?;
    g.assert_valid()?;
    Ok(g)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

struct PushoutDim {
    index: BTreeMap<Matrix, usize>,
    class_of: Vec<usize>,
    reps: Vec<Matrix>,
    labels: Vec<Label>,
}

// One dimension of the pushout: union-find over all maps U → W under the
// two generating relations, then canonical labels. Each class is tagged by
// the common kernel of π∘ζ over its members (their equality is the kernel
// law and is verified here) and by the least matrix induced on the kernel
// quotient.
fn pushout_dim(s: &PrimitiveSetup, u: usize) -> Result<PushoutDim> {
    let field = s.field();
    let gen = s.table.gen().ok_or(Error::MissingQLabels)?;
    let maps = all_maps(field, u, s.w_dim());
    let mut dsu = Dsu::new(maps.len());
    let mut by_class: BTreeMap<(Subspace, usize), usize> = BTreeMap::new();
    let mut by_projection: BTreeMap<Matrix, usize> = BTreeMap::new();
    for (i, m) in maps.iter().enumerate() {
        let eps = LinMap::new(m.clone());
        let kernel = eps.kernel();
        let corestricted = eps.compose(&quotient(&kernel).section);
        let label = gen.q_class(0, corestricted.matrix())?;
        match by_class.get(&(kernel.clone(), label)) {
            Some(&j) => dsu.union(i, j),
            None => {
                by_class.insert((kernel, label), i);
            }
        }
        let projected = s.quotient.projection.compose(&eps).matrix().clone();
        match by_projection.get(&projected) {
            Some(&j) => dsu.union(i, j),
            None => {
                by_projection.insert(projected, i);
            }
        }
    }

    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..maps.len() {
        members.entry(dsu.find(i)).or_default().push(i);
    }
    let mut rows: Vec<(Label, usize)> = Vec::with_capacity(members.len());
    for (&root, mem) in &members {
        let rep = LinMap::new(maps[mem[0]].clone());
        let kernel = s.quotient.projection.compose(&rep).kernel();
        let section = quotient(&kernel).section;
        let mut least: Option<Matrix> = None;
        for &i in mem {
            let projected = s.quotient.projection.compose(&LinMap::new(maps[i].clone()));
            if projected.kernel() != kernel {
                return Err(Error::Invariant("pushout class mixes projection kernels".into()));
            }
            let induced = projected.compose(&section).matrix().clone();
            if least.as_ref().map_or(true, |l| induced < *l) {
                least = Some(induced);
            }
        }
        let label = Label::Tagged {
            kernel,
            inner: Box::new(Label::Class {
                ambient: 0,
                matrix: least.expect("class is nonempty"),
            }),
        };
        rows.push((label, root));
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0));

    let mut class_of = vec![0usize; maps.len()];
    let mut reps = Vec::with_capacity(rows.len());
    let mut labels = Vec::with_capacity(rows.len());
    for (ci, (label, root)) in rows.into_iter().enumerate() {
        for &i in &members[&root] {
            class_of[i] = ci;
        }
        reps.push(maps[members[&root][0]].clone());
        labels.push(label);
    }
    let index = maps.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    Ok(PushoutDim { index, class_of, reps, labels })
}

/// The pushout table together with the per-dimension class assignment:
/// entry `u` of the second component maps each map `U → W` (indexed in the
/// fixed all-maps order) to its class index in the table's value at `u`.
pub fn pushout_assignment(
    s: &PrimitiveSetup,
) -> Result<(FullFunctorTable, Vec<Vec<usize>>)> {
    let field = s.field();
    let depth = s.q_dim();
    let mut dims = Vec::with_capacity(depth + 1);
    for u in 0..=depth {
        dims.push(pushout_dim(s, u)?);
    }
    let mut elements = Vec::with_capacity(depth + 1);
    for d in &dims {
        elements.push(d.labels.clone());
    }
    let mut transport = BTreeMap::new();
    for j in 0..=depth {
        for k in 0..=depth {
            for m in all_maps(field, j, k) {
                let vec: Vec<usize> = dims[k]
                    .reps
                    .iter()
                    .map(|rep| {
                        let composed = rep.mul(&m);
                        dims[j].class_of[dims[j].index[&composed]]
                    })
                    .collect();
                transport.insert((j, k, m), vec);
            }
        }
    }
    let table = FullFunctorTable::from_parts(field, depth, elements, transport)?;
    Ok((table, dims.into_iter().map(|d| d.class_of).collect()))
}

/// The set-level pushout of the extended table against the projection,
/// truncated at the quotient dimension. Its regular part coincides with the
/// quotient table of [`primitive_groupoid`].
pub fn pushout_functor(s: &PrimitiveSetup) -> Result<FullFunctorTable> {
    Ok(pushout_assignment(s)?.0)
}
