//! Finite presheaves on vector-space injections, tabulated up to a dimension
//! bound.
//!
//! A [`FunctorTable`] stores, for every dimension `k` up to a bound, a finite
//! value set together with the contravariant transport map of every injection
//! between small coordinate spaces. Tables arise by quotienting the disjoint
//! union of the injection sets `F_p^k ↪ W_i` of an ambient family by the
//! similarity relation of a groupoid ([`quotient_functor`]); such generated
//! tables carry the class label of every injection and support the inverse
//! construction [`groupoid_of`], and the two constructions are mutually
//! inverse.
//!
//! [`kan_extend`] extends a table from injections to all linear maps by
//! tagging elements with a kernel subspace; on the extended tables
//! ([`FullFunctorTable`]) every element has a well-defined kernel
//! ([`element_kernel`]), the kernel-zero part recovers the original table
//! ([`regular_part`]), and the kernel law `ker(F(α)s) = α⁻¹(ker s)` is
//! decidable ([`is_noetherian`]).

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::fp::{
    all_subspaces, all_vectors, enumerate_injections, enumerate_isos, quotient, Fp, LinMap,
    Matrix, Subspace,
};
use crate::groupoid::{AmbientFamily, Groupoid, Object};

/// Identifier of a single element of a table value.
///
/// Labels are ordered, and every value set is kept sorted, so tables compare
/// and export deterministically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Label {
    /// A similarity class of injections into an ambient family, named by its
    /// least representative.
    Class { ambient: usize, matrix: Matrix },
    /// An element of an extended table: an inner element pushed forward along
    /// the projection with the given kernel.
    Tagged { kernel: Subspace, inner: Box<Label> },
    /// An element of a pushout-derived table: a glueing matrix together with
    /// an inner element.
    Pair { span: Matrix, inner: Box<Label> },
}

/// Generator labels of a table presented as a quotient of the injections
/// into an ambient family: the class of every injection, and for each
/// ambient the class of its identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenLabels {
    family: AmbientFamily,
    /// (ambient i, matrix of ε: F_p^k ↪ W_i) → index into the value at k.
    q: BTreeMap<(usize, Matrix), usize>,
    /// phi[i] = index of the class of id_{W_i} in the value at dim W_i.
    phi: Vec<usize>,
}

impl GenLabels {
    pub fn family(&self) -> &AmbientFamily {
        &self.family
    }

    /// Class index of the injection into ambient `i` with the given matrix.
    pub fn q_class(&self, i: usize, matrix: &Matrix) -> Result<usize> {
        self.q.get(&(i, matrix.clone())).copied().ok_or(Error::ElementAbsent)
    }

    /// Class indices of the ambient identities.
    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    /// The full label map, keyed by (ambient, injection matrix).
    pub fn q(&self) -> &BTreeMap<(usize, Matrix), usize> {
        &self.q
    }
}

/// A finite presheaf on injections between coordinate spaces of dimension at
/// most `max_dim`. Values are sorted label lists; transports are index maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FunctorTable {
    field: Fp,
    max_dim: usize,
    /// elements[k] = sorted value set at F_p^k.
    elements: Vec<Vec<Label>>,
    /// (j, k, matrix of α: F_p^j ↪ F_p^k) → index map, value at k → value at j.
    transport: BTreeMap<(usize, usize, Matrix), Vec<usize>>,
    gen: Option<GenLabels>,
}

impl FunctorTable {
    /// Build a table from raw parts, checking shape: one sorted duplicate-free
    /// value per dimension, and a transport of the right length and range for
    /// every injection between dimensions ≤ `max_dim`.
    pub fn from_parts(
        field: Fp,
        max_dim: usize,
        elements: Vec<Vec<Label>>,
        transport: BTreeMap<(usize, usize, Matrix), Vec<usize>>,
        gen: Option<GenLabels>,
    ) -> Result<FunctorTable> {
        if elements.len() != max_dim + 1 {
            return Err(Error::DimensionMismatch(elements.len(), max_dim + 1));
        }
        for labs in &elements {
            if labs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Invariant("value set not sorted".into()));
            }
        }
        let t = FunctorTable { field, max_dim, elements, transport, gen };
        for j in 0..=max_dim {
            for k in j..=max_dim {
                for alpha in enumerate_injections(field, j, k)? {
                    t.check_transport(j, k, alpha.matrix())?;
                }
            }
        }
        Ok(t)
    }

    fn check_transport(&self, j: usize, k: usize, m: &Matrix) -> Result<()> {
        let vec = self
            .transport
            .get(&(j, k, m.clone()))
            .ok_or_else(|| Error::Invariant(format!("missing transport at ({j}, {k})")))?;
        if vec.len() != self.elements[k].len() {
            return Err(Error::DimensionMismatch(vec.len(), self.elements[k].len()));
        }
        if vec.iter().any(|&t| t >= self.elements[j].len()) {
            return Err(Error::ElementAbsent);
        }
        Ok(())
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// The value set at dimension `k`; empty above `max_dim`.
    pub fn value(&self, k: usize) -> &[Label] {
        self.elements.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, k: usize, label: &Label) -> Option<usize> {
        self.elements.get(k)?.binary_search(label).ok()
    }

    /// The index map of an injection, keyed by (domain, codomain, matrix).
    pub fn transport_of(&self, j: usize, k: usize, m: &Matrix) -> Option<&[usize]> {
        self.transport.get(&(j, k, m.clone())).map(Vec::as_slice)
    }

    /// Transport one element backwards along an injection.
    pub fn apply(&self, alpha: &LinMap, idx: usize) -> Result<usize> {
        let key = (alpha.domain_dim(), alpha.codomain_dim(), alpha.matrix().clone());
        let vec = self.transport.get(&key).ok_or(Error::ElementAbsent)?;
        vec.get(idx).copied().ok_or(Error::ElementAbsent)
    }

    pub fn gen(&self) -> Option<&GenLabels> {
        self.gen.as_ref()
    }

    /// Equality of the underlying presheaf data, ignoring generator labels.
    /// Tables vanish beyond their bound, so bounds that differ only by
    /// trailing empty dimensions compare equal.
    pub fn same_presheaf(&self, other: &FunctorTable) -> bool {
        if self.field != other.field {
            return false;
        }
        let top = self.max_dim.max(other.max_dim);
        for k in 0..=top {
            let a = self.elements.get(k).map_or(&[][..], Vec::as_slice);
            let b = other.elements.get(k).map_or(&[][..], Vec::as_slice);
            if a != b {
                return false;
            }
        }
        // empty transport rows carry no data; they exist exactly where a
        // value set is empty, which the element comparison already covers
        let live = |t: &BTreeMap<(usize, usize, Matrix), Vec<usize>>| {
            t.iter()
                .filter(|(_, v)| !v.is_empty())
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect::<BTreeMap<_, _>>()
        };
        live(&self.transport) == live(&other.transport)
    }
}

/// A finite presheaf on **all** linear maps between coordinate spaces of
/// dimension at most `depth`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FullFunctorTable {
    field: Fp,
    depth: usize,
    elements: Vec<Vec<Label>>,
    /// (j, k, matrix of any α: F_p^j → F_p^k) → index map, value at k → value at j.
    transport: BTreeMap<(usize, usize, Matrix), Vec<usize>>,
}

impl FullFunctorTable {
    /// Build from raw parts, checking shape: sorted values and a transport of
    /// the right length and range for every matrix between dimensions ≤ depth.
    pub fn from_parts(
        field: Fp,
        depth: usize,
        elements: Vec<Vec<Label>>,
        transport: BTreeMap<(usize, usize, Matrix), Vec<usize>>,
    ) -> Result<FullFunctorTable> {
        if elements.len() != depth + 1 {
            return Err(Error::DimensionMismatch(elements.len(), depth + 1));
        }
        for labs in &elements {
            if labs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Invariant("value set not sorted".into()));
            }
        }
        let t = FullFunctorTable { field, depth, elements, transport };
        for j in 0..=depth {
            for k in 0..=depth {
                for m in all_maps(field, j, k) {
                    let vec = t
                        .transport
                        .get(&(j, k, m))
                        .ok_or_else(|| Error::Invariant(format!("missing transport at ({j}, {k})")))?;
                    if vec.len() != t.elements[k].len() {
                        return Err(Error::DimensionMismatch(vec.len(), t.elements[k].len()));
                    }
                    if vec.iter().any(|&s| s >= t.elements[j].len()) {
                        return Err(Error::ElementAbsent);
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn value(&self, k: usize) -> &[Label] {
        self.elements.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, k: usize, label: &Label) -> Option<usize> {
        self.elements.get(k)?.binary_search(label).ok()
    }

    pub fn transport_of(&self, j: usize, k: usize, m: &Matrix) -> Option<&[usize]> {
        self.transport.get(&(j, k, m.clone())).map(Vec::as_slice)
    }

    /// Transport one element backwards along any linear map.
    pub fn apply(&self, alpha: &LinMap, idx: usize) -> Result<usize> {
        let key = (alpha.domain_dim(), alpha.codomain_dim(), alpha.matrix().clone());
        let vec = self.transport.get(&key).ok_or(Error::ElementAbsent)?;
        vec.get(idx).copied().ok_or(Error::ElementAbsent)
    }
}

/// All matrices of a map F_p^j → F_p^k, in a fixed order.
/// Every linear map `F_p^j → F_p^k`, as `k × j` matrices in the row-major
/// order of their entry vectors. Extended tables and pushout assignments
/// index their per-dimension data in this order.
pub fn all_maps(field: Fp, j: usize, k: usize) -> Vec<Matrix> {
    all_vectors(field, j * k)
        .into_iter()
        .map(|entries| Matrix::new(field, k, j, entries))
        .collect()
}

/// Quotient the injections into the family of a groupoid by its similarity
/// relation. The value at k lists the classes of injections F_p^k ↪ ⊔ W_i,
/// named by least representative; the transport of α sends [ε] to [ε ∘ α].
/// The result carries generator labels.
pub fn quotient_functor(g: &Groupoid) -> Result<FunctorTable> {
    quotient_functor_with(Mode::default(), g)
}

pub fn quotient_functor_with(mode: Mode, g: &Groupoid) -> Result<FunctorTable> {
    let report = g.validate_with(mode);
    if let Some(v) = report.violations.into_iter().next() {
        return Err(Error::InvalidGroupoid(v));
    }
    let family = g.family().clone();
    let field = family.field();
    let d = family.max_dim();

    let mut elements: Vec<Vec<Label>> = Vec::with_capacity(d + 1);
    let mut q: BTreeMap<(usize, Matrix), usize> = BTreeMap::new();
    for k in 0..=d {
        let classes = g.sim_classes_with(mode, k)?;
        let mut labels = Vec::with_capacity(classes.len());
        for (c, class) in classes.iter().enumerate() {
            let (ambient, rep) = &class[0];
            labels.push(Label::Class { ambient: *ambient, matrix: rep.matrix().clone() });
            for (i, eps) in class {
                q.insert((*i, eps.matrix().clone()), c);
            }
        }
        // classes come sorted by least representative, which is the label order
        elements.push(labels);
    }

    let mut phi = Vec::with_capacity(family.len());
    for i in 0..family.len() {
        let id = Matrix::identity(field, family.dim(i));
        phi.push(*q.get(&(i, id)).ok_or(Error::ElementAbsent)?);
    }

    let mut transport: BTreeMap<(usize, usize, Matrix), Vec<usize>> = BTreeMap::new();
    for j in 0..=d {
        for k in j..=d {
            let reps: Vec<(usize, LinMap)> = elements[k]
                .iter()
                .map(|lab| match lab {
                    Label::Class { ambient, matrix } => (*ambient, LinMap::new(matrix.clone())),
                    _ => unreachable!("quotient tables use class labels"),
                })
                .collect();
            let alphas = enumerate_injections(field, j, k)?;
            let entries: Vec<Result<(Matrix, Vec<usize>)>> =
                exec::map_vec(mode, alphas, |alpha| {
                    let mut vec = Vec::with_capacity(reps.len());
                    for (i, eps) in &reps {
                        let composite = eps.compose(&alpha);
                        let idx = q
                            .get(&(*i, composite.matrix().clone()))
                            .ok_or(Error::ElementAbsent)?;
                        vec.push(*idx);
                    }
                    Ok((alpha.matrix().clone(), vec))
                });
            for entry in entries {
                let (m, vec) = entry?;
                transport.insert((j, k, m), vec);
            }
        }
    }

    Ok(FunctorTable {
        field,
        max_dim: d,
        elements,
        transport,
        gen: Some(GenLabels { family, q, phi }),
    })
}

/// Recover a groupoid from a generated table: the morphisms U → U' between
/// subspaces of the ambients are the isomorphisms α whose composite with the
/// inclusion of U' carries the same class label as the inclusion of U.
pub fn groupoid_of(f: &FunctorTable) -> Result<Groupoid> {
    let gen = f.gen.as_ref().ok_or(Error::MissingQLabels)?;
    let family = gen.family.clone();
    let objects = family.objects()?;
    let mut morphisms: Vec<(Object, Object, Matrix)> = Vec::new();
    for (i, u) in &objects {
        let src_class = gen.q_class(*i, u.inclusion().matrix())?;
        for (j, w) in &objects {
            if w.dim() != u.dim() {
                continue;
            }
            let inc_w = w.inclusion();
            for alpha in enumerate_isos(u, w)? {
                let composite = inc_w.compose(&LinMap::new(alpha.clone()));
                if gen.q_class(*j, composite.matrix())? == src_class {
                    morphisms.push(((*i, u.clone()), (*j, w.clone()), alpha));
                }
            }
        }
    }
    Groupoid::from_parts(family, &morphisms)
}

/// Extend a table from injections to all linear maps, tabulated up to
/// `depth` (which may exceed the source bound). The value at V is the
/// disjoint union over subspaces U ⊆ V of the source value at V/U, each
/// element tagged by its kernel U. The transport of α: V' → V at a tag
/// (U, s) factors the composite of α with the projection mod U through the
/// projection mod its own kernel U', leaving an injection α̃ between the
/// quotients: the result is the tag (U', s transported along α̃).
pub fn kan_extend(f: &FunctorTable, depth: usize) -> Result<FullFunctorTable> {
    kan_extend_with(Mode::default(), f, depth)
}

pub fn kan_extend_with(mode: Mode, f: &FunctorTable, depth: usize) -> Result<FullFunctorTable> {
    let field = f.field;

    // element lists plus, per element, the projection data of its tag
    let mut elements: Vec<Vec<Label>> = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        let mut labs = Vec::new();
        for u in all_subspaces(field, k)? {
            let inner_dim = k - u.dim();
            if inner_dim <= f.max_dim {
                for lab in &f.elements[inner_dim] {
                    labs.push(Label::Tagged { kernel: u.clone(), inner: Box::new(lab.clone()) });
                }
            }
        }
        labs.sort();
        elements.push(labs);
    }
    let index: Vec<BTreeMap<&Label, usize>> = elements
        .iter()
        .map(|labs| labs.iter().enumerate().map(|(i, l)| (l, i)).collect())
        .collect();
    let inner_index: Vec<BTreeMap<&Label, usize>> = f
        .elements
        .iter()
        .map(|labs| labs.iter().enumerate().map(|(i, l)| (l, i)).collect())
        .collect();

    // per element at k: kernel tag, projection mod the tag, inner index
    let mut tags: Vec<Vec<(Subspace, LinMap, usize)>> = Vec::with_capacity(depth + 1);
    for (k, labs) in elements.iter().enumerate() {
        let mut row = Vec::with_capacity(labs.len());
        for lab in labs {
            let Label::Tagged { kernel, inner } = lab else {
                unreachable!("extension produces tagged labels");
            };
            let qd = quotient(kernel);
            let inner_idx = inner_index[k - kernel.dim()][inner.as_ref()];
            row.push((kernel.clone(), qd.projection, inner_idx));
        }
        tags.push(row);
    }

    let mut transport: BTreeMap<(usize, usize, Matrix), Vec<usize>> = BTreeMap::new();
    for j in 0..=depth {
        for k in 0..=depth {
            let maps = all_maps(field, j, k);
            let entries: Vec<Result<(Matrix, Vec<usize>)>> = exec::map_vec(mode, maps, |m| {
                let alpha = LinMap::new(m.clone());
                let mut vec = Vec::with_capacity(elements[k].len());
                for (_, proj, inner_idx) in &tags[k] {
                    let composite = proj.compose(&alpha);
                    let kernel = composite.kernel();
                    let qd = quotient(&kernel);
                    let alpha_tilde = composite.compose(&qd.section);
                    let key = (
                        alpha_tilde.domain_dim(),
                        alpha_tilde.codomain_dim(),
                        alpha_tilde.matrix().clone(),
                    );
                    let inner_vec =
                        f.transport.get(&key).ok_or(Error::ElementAbsent)?;
                    let new_inner = &f.elements[alpha_tilde.domain_dim()][inner_vec[*inner_idx]];
                    let label =
                        Label::Tagged { kernel, inner: Box::new(new_inner.clone()) };
                    vec.push(*index[j].get(&label).ok_or(Error::ElementAbsent)?);
                }
                Ok((m, vec))
            });
            for entry in entries {
                let (m, vec) = entry?;
                transport.insert((j, k, m), vec);
            }
        }
    }

    Ok(FullFunctorTable { field, depth, elements, transport })
}

/// The kernel of an element: the unique maximal subspace U such that the
/// element is a transport along the projection mod U. Tag labels answer
/// directly; otherwise the maximal U is found by searching every projection,
/// which fails with [`Error::AmbiguousKernel`] when no unique maximum exists.
pub fn element_kernel(ft: &FullFunctorTable, k: usize, idx: usize) -> Result<Subspace> {
    let labs = ft.elements.get(k).ok_or(Error::ElementAbsent)?;
    let lab = labs.get(idx).ok_or(Error::ElementAbsent)?;
    if let Label::Tagged { kernel, .. } = lab {
        return Ok(kernel.clone());
    }
    brute_force_kernel(ft, k, idx)
}

fn brute_force_kernel(ft: &FullFunctorTable, k: usize, idx: usize) -> Result<Subspace> {
    let mut hits: Vec<Subspace> = Vec::new();
    for u in all_subspaces(ft.field, k)? {
        let qd = quotient(&u);
        let key = (k, qd.q_dim, qd.projection.matrix().clone());
        let vec = ft.transport.get(&key).ok_or(Error::ElementAbsent)?;
        if vec.contains(&idx) {
            hits.push(u);
        }
    }
    let max_dim = hits.iter().map(Subspace::dim).max().ok_or(Error::AmbiguousKernel)?;
    let maximal: Vec<&Subspace> = hits.iter().filter(|u| u.dim() == max_dim).collect();
    if maximal.len() != 1 {
        return Err(Error::AmbiguousKernel);
    }
    let top = maximal[0];
    if hits.iter().all(|u| top.contains(u)) {
        Ok(top.clone())
    } else {
        Err(Error::AmbiguousKernel)
    }
}

/// Restrict an extended table to its kernel-zero elements and to injections.
/// Tag labels with zero kernel unwrap to their inner label, so extending a
/// table and taking the regular part returns it unchanged. Fails with
/// [`Error::Invariant`] if an injection maps a kernel-zero element onto one
/// with a nonzero kernel.
pub fn regular_part(ft: &FullFunctorTable) -> Result<FunctorTable> {
    let mut elements: Vec<Vec<Label>> = Vec::with_capacity(ft.depth + 1);
    // old index → new index at each dimension
    let mut keep: Vec<Vec<Option<usize>>> = Vec::with_capacity(ft.depth + 1);
    for k in 0..=ft.depth {
        let mut labs = Vec::new();
        let mut map = vec![None; ft.elements[k].len()];
        for (idx, lab) in ft.elements[k].iter().enumerate() {
            if element_kernel(ft, k, idx)?.dim() == 0 {
                map[idx] = Some(labs.len());
                labs.push(match lab {
                    Label::Tagged { inner, .. } => inner.as_ref().clone(),
                    other => other.clone(),
                });
            }
        }
        if labs.windows(2).any(|w| w[0] >= w[1]) {
            labs.sort();
        }
        elements.push(labs);
        keep.push(map);
    }

    let mut transport: BTreeMap<(usize, usize, Matrix), Vec<usize>> = BTreeMap::new();
    for ((j, k, m), vec) in &ft.transport {
        if *j > *k || !LinMap::new(m.clone()).is_injective() {
            continue;
        }
        let mut new_vec = Vec::with_capacity(elements[*k].len());
        for (old_idx, slot) in keep[*k].iter().enumerate() {
            if slot.is_none() {
                continue;
            }
            let target = keep[*j][vec[old_idx]].ok_or_else(|| {
                Error::Invariant(format!(
                    "injection at ({j}, {k}) leaves the kernel-zero part"
                ))
            })?;
            new_vec.push(target);
        }
        transport.insert((*j, *k, m.clone()), new_vec);
    }

    Ok(FunctorTable { field: ft.field, max_dim: ft.depth, elements, transport, gen: None })
}

/// Decide the kernel law `ker(F(α)s) = α⁻¹(ker s)` over every tabulated map.
/// Finiteness and the dimension bound hold for any table by construction, so
/// the law is the only clause left to check; a table with an ill-defined
/// kernel fails as well.
pub fn is_noetherian(ft: &FullFunctorTable) -> Result<bool> {
    is_noetherian_with(Mode::default(), ft)
}

pub fn is_noetherian_with(mode: Mode, ft: &FullFunctorTable) -> Result<bool> {
    let mut kernels: Vec<Vec<Subspace>> = Vec::with_capacity(ft.depth + 1);
    for k in 0..=ft.depth {
        let mut row = Vec::with_capacity(ft.elements[k].len());
        for idx in 0..ft.elements[k].len() {
            match element_kernel(ft, k, idx) {
                Ok(u) => row.push(u),
                Err(Error::AmbiguousKernel) => return Ok(false),
                Err(e) => return Err(e),
            }
        }
        kernels.push(row);
    }
    let checks: Vec<(&(usize, usize, Matrix), &Vec<usize>)> = ft.transport.iter().collect();
    let results: Vec<Result<bool>> = exec::map_vec(mode, checks, |((j, k, m), vec)| {
        let alpha = LinMap::new(m.clone());
        for (s_idx, &t_idx) in vec.iter().enumerate() {
            let expected = alpha.preimage(&kernels[*k][s_idx])?;
            if kernels[*j][t_idx] != expected {
                return Ok(false);
            }
        }
        Ok(true)
    });
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A table is connected when its value at dimension zero is a single point.
pub fn is_connected(f: &FunctorTable) -> bool {
    f.elements[0].len() == 1
}

/// Per ambient and dimension, the set of classes hit by the injections into
/// that ambient.
pub(crate) fn images_by_ambient(f: &FunctorTable) -> Result<Vec<Vec<BTreeSet<usize>>>> {
    let gen = f.gen.as_ref().ok_or(Error::MissingQLabels)?;
    let mut images = vec![vec![BTreeSet::new(); f.max_dim + 1]; gen.family.len()];
    for ((i, m), class) in &gen.q {
        images[*i][m.cols()].insert(*class);
    }
    Ok(images)
}

/// A generated table is minimal when no ambient's image sub-presheaf is
/// contained in another's.
pub fn is_minimal(f: &FunctorTable) -> Result<bool> {
    let images = images_by_ambient(f)?;
    for (i, fi) in images.iter().enumerate() {
        for (j, fj) in images.iter().enumerate() {
            if i != j && fi.iter().zip(fj).all(|(a, b)| a.is_subset(b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
