//! Groupoids of isomorphisms between subspaces of a family of ambient
//! spaces.
//!
//! Objects are pairs (ambient index, subspace); morphisms between two
//! objects of equal dimension are invertible matrices written in the
//! canonical bases of source and target. A groupoid is valid when it
//! contains all identities, is closed under inverse and composition, and has
//! the restriction property: every morphism restricts, on every subspace of
//! its source, to another morphism of the groupoid. The module provides
//! validation, least closure of a generating set, the embedding of a matrix
//! group as a groupoid, the conjugation action of GL(W), and the similarity
//! relation it induces on injections.

use std::collections::{BTreeMap, BTreeSet};

use crate::exec::{self, Mode};
use crate::fp::{all_subspaces, restrict_iso, subspaces_of, Fp, LinMap, Matrix, Subspace};
use crate::{Error, Result};

/// An object of the groupoid: (ambient index, subspace of that ambient).
pub type Object = (usize, Subspace);

/// The family of ambient spaces (W_i), each carrying a display name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AmbientFamily {
    field: Fp,
    ambients: Vec<(String, usize)>,
}

impl AmbientFamily {
    pub fn new(field: Fp, ambients: Vec<(String, usize)>) -> Result<AmbientFamily> {
        if ambients.is_empty() {
            return Err(Error::InvalidGroupoid("ambient family is empty".into()));
        }
        Ok(AmbientFamily { field, ambients })
    }

    /// A single ambient space named "W".
    pub fn single(field: Fp, dim: usize) -> AmbientFamily {
        AmbientFamily { field, ambients: vec![("W".into(), dim)] }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn len(&self) -> usize {
        self.ambients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ambients.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.ambients[i].0
    }

    pub fn dim(&self, i: usize) -> usize {
        self.ambients[i].1
    }

    pub fn max_dim(&self) -> usize {
        self.ambients.iter().map(|a| a.1).max().unwrap_or(0)
    }

    /// Every object (i, U ⊆ W_i), ordered by ambient then canonical basis.
    pub fn objects(&self) -> Result<Vec<Object>> {
        let mut out = Vec::new();
        for (i, &(_, d)) in self.ambients.iter().enumerate() {
            for s in all_subspaces(self.field, d)? {
                out.push((i, s));
            }
        }
        Ok(out)
    }

    /// Every injection F_p^{v_dim} ↪ W_i across the family, ordered by
    /// (ambient, matrix).
    pub fn injections(&self, v_dim: usize) -> Result<Vec<(usize, LinMap)>> {
        let mut out = Vec::new();
        for (i, &(_, d)) in self.ambients.iter().enumerate() {
            for inj in crate::fp::enumerate_injections(self.field, v_dim, d)? {
                out.push((i, inj));
            }
        }
        Ok(out)
    }
}

/// Result of [`Groupoid::validate`]: an empty violation list means valid.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A groupoid on the subspace lattices of an ambient family.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Groupoid {
    family: AmbientFamily,
    hom: BTreeMap<(Object, Object), BTreeSet<Matrix>>,
}

impl Groupoid {
    /// The identities-only groupoid.
    pub fn identities(family: AmbientFamily) -> Result<Groupoid> {
        let mut hom = BTreeMap::new();
        for o in family.objects()? {
            let id = Matrix::identity(family.field(), o.1.dim());
            hom.insert((o.clone(), o), BTreeSet::from([id]));
        }
        Ok(Groupoid { family, hom })
    }

    /// Build from an explicit morphism list. Each morphism is shape-checked
    /// (objects exist, dimensions equal, matrix invertible); no closure
    /// properties are imposed, so the result may fail validation.
    pub fn from_parts(
        family: AmbientFamily,
        morphisms: &[(Object, Object, Matrix)],
    ) -> Result<Groupoid> {
        let mut g = Groupoid { family, hom: BTreeMap::new() };
        for (s, d, m) in morphisms {
            check_morphism(&g.family, s, d, m)?;
            g.insert(s.clone(), d.clone(), m.clone());
        }
        Ok(g)
    }

    fn insert(&mut self, src: Object, dst: Object, m: Matrix) -> bool {
        self.hom.entry((src, dst)).or_default().insert(m)
    }

    pub fn family(&self) -> &AmbientFamily {
        &self.family
    }

    pub fn hom_set(&self, src: &Object, dst: &Object) -> Option<&BTreeSet<Matrix>> {
        self.hom.get(&(src.clone(), dst.clone()))
    }

    pub fn contains(&self, src: &Object, dst: &Object, m: &Matrix) -> bool {
        self.hom_set(src, dst).is_some_and(|set| set.contains(m))
    }

    /// All morphisms as (source, target, matrix) triples, in map order.
    pub fn morphisms(&self) -> impl Iterator<Item = (&Object, &Object, &Matrix)> {
        self.hom
            .iter()
            .flat_map(|((s, d), set)| set.iter().map(move |m| (s, d, m)))
    }

    pub fn morphism_count(&self) -> usize {
        self.hom.values().map(BTreeSet::len).sum()
    }

    /// Check every clause of the validity predicate and report violations.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(Mode::default())
    }

    pub fn validate_with(&self, mode: Mode) -> ValidationReport {
        let mut violations = Vec::new();

        for ((s, d), set) in &self.hom {
            for m in set {
                if let Err(e) = check_morphism(&self.family, s, d, m) {
                    violations.push(format!("morphism {:?}: {} ({:?} → {:?})", m, e, s, d));
                }
            }
        }

        match self.family.objects() {
            Ok(objects) => {
                for o in objects {
                    let id = Matrix::identity(self.family.field(), o.1.dim());
                    if !self.contains(&o, &o, &id) {
                        violations.push(format!("missing identity at {:?}", o));
                    }
                }
            }
            Err(e) => violations.push(format!("cannot enumerate objects: {}", e)),
        }

        let items: Vec<(Object, Object, Matrix)> = self
            .morphisms()
            .map(|(s, d, m)| (s.clone(), d.clone(), m.clone()))
            .collect();
        let per_morphism: Vec<Vec<String>> = exec::map_vec(mode, items, |(s, d, m)| {
            let mut v = Vec::new();
            match m.inverse() {
                Some(inv) => {
                    if !self.contains(&d, &s, &inv) {
                        v.push(format!("inverse of {:?} ({:?} → {:?}) missing", m, s, d));
                    }
                }
                None => return v, // already reported by the shape pass
            }
            for ((a, b), set) in &self.hom {
                if *a == d {
                    for n in set {
                        if !self.contains(&s, b, &n.mul(&m)) {
                            v.push(format!(
                                "composite of {:?} ({:?} → {:?}) with {:?} (→ {:?}) missing",
                                m, s, d, n, b
                            ));
                        }
                    }
                }
            }
            match subspaces_of(&s.1) {
                Ok(subs) => {
                    for sub in subs {
                        match restrict_iso(&s.1, &d.1, &m, &sub) {
                            Ok((img, mat)) => {
                                if !self.contains(&(s.0, sub.clone()), &(d.0, img), &mat) {
                                    v.push(format!(
                                        "restriction of {:?} ({:?} → {:?}) to {:?} missing",
                                        m, s, d, sub
                                    ));
                                }
                            }
                            Err(e) => v.push(format!("restriction failure: {}", e)),
                        }
                    }
                }
                Err(e) => v.push(format!("cannot enumerate subspaces: {}", e)),
            }
            v
        });
        violations.extend(per_morphism.into_iter().flatten());
        ValidationReport { violations }
    }

    /// Err with the first violation when invalid.
    pub fn assert_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidGroupoid(v)),
        }
    }

    /// Partition the injections F_p^{v_dim} ↪ ⊔ W_i by similarity: ζ ∼ ε iff
    /// the groupoid contains a morphism α between their images with
    /// ε̃ = α ∘ ζ̃ (the corestrictions to the images). Since ζ̃ is invertible,
    /// the only candidate is α = ε̃ ∘ ζ̃⁻¹, so the test is a set lookup.
    /// Classes are sorted internally and by least element.
    pub fn sim_classes(&self, v_dim: usize) -> Result<Vec<Vec<(usize, LinMap)>>> {
        self.sim_classes_with(Mode::default(), v_dim)
    }

    pub fn sim_classes_with(
        &self,
        mode: Mode,
        v_dim: usize,
    ) -> Result<Vec<Vec<(usize, LinMap)>>> {
        let items = self.family.injections(v_dim)?;
        let tilde: Vec<(Subspace, Matrix)> =
            items.iter().map(|(_, inj)| corestrict(inj)).collect();
        let mut pairs = Vec::new();
        for i in 0..items.len() {
            for j in i + 1..items.len() {
                pairs.push((i, j));
            }
        }
        let edges: Vec<Option<(usize, usize)>> = exec::map_vec(mode, pairs, |(i, j)| {
            let (im_i, mat_i) = &tilde[i];
            let (im_j, mat_j) = &tilde[j];
            let candidate = mat_j.mul(&mat_i.inverse().expect("corestriction is invertible"));
            self.contains(&(items[i].0, im_i.clone()), &(items[j].0, im_j.clone()), &candidate)
                .then_some((i, j))
        });
        let mut uf = UnionFind::new(items.len());
        for (i, j) in edges.into_iter().flatten() {
            uf.union(i, j);
        }
        let mut classes: BTreeMap<usize, Vec<(usize, LinMap)>> = BTreeMap::new();
        for (idx, item) in items.into_iter().enumerate() {
            classes.entry(uf.find(idx)).or_default().push(item);
        }
        let mut out: Vec<Vec<(usize, LinMap)>> = classes.into_values().collect();
        for class in &mut out {
            class.sort();
        }
        out.sort();
        Ok(out)
    }
}

fn check_morphism(family: &AmbientFamily, src: &Object, dst: &Object, m: &Matrix) -> Result<()> {
    if src.0 >= family.len() || dst.0 >= family.len() {
        return Err(Error::InvalidGroupoid("ambient index out of range".into()));
    }
    if src.1.ambient_dim() != family.dim(src.0) {
        return Err(Error::AmbientMismatch(src.1.ambient_dim(), family.dim(src.0)));
    }
    if dst.1.ambient_dim() != family.dim(dst.0) {
        return Err(Error::AmbientMismatch(dst.1.ambient_dim(), family.dim(dst.0)));
    }
    if src.1.dim() != dst.1.dim() {
        return Err(Error::DimensionMismatch(src.1.dim(), dst.1.dim()));
    }
    if m.field() != family.field() {
        return Err(Error::FieldMismatch(m.field().p(), family.field().p()));
    }
    if m.rows() != src.1.dim() || m.cols() != src.1.dim() {
        return Err(Error::DimensionMismatch(m.rows(), src.1.dim()));
    }
    if m.inverse().is_none() {
        return Err(Error::NotInvertible);
    }
    Ok(())
}

/// Corestriction of an injection to its image: (image, invertible matrix
/// from the domain basis to the image's canonical basis).
fn corestrict(inj: &LinMap) -> (Subspace, Matrix) {
    let img = inj.image();
    let cols: Vec<Vec<u32>> = (0..inj.domain_dim())
        .map(|k| {
            let mut e = vec![0u32; inj.domain_dim()];
            e[k] = 1;
            img.coords(&inj.apply(&e)).expect("image vector lies in the image")
        })
        .collect();
    let mut m = Matrix::zero(inj.field(), img.dim(), inj.domain_dim());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..img.dim() {
            m.set(i, j, c[i]);
        }
    }
    (img, m)
}

/// Least valid groupoid containing the generators: identities plus the
/// closure under inverse, composition, and restriction.
pub fn close(
    family: &AmbientFamily,
    generators: &[(Object, Object, Matrix)],
) -> Result<Groupoid> {
    close_with(Mode::default(), family, generators)
}

pub fn close_with(
    mode: Mode,
    family: &AmbientFamily,
    generators: &[(Object, Object, Matrix)],
) -> Result<Groupoid> {
    let mut g = Groupoid::identities(family.clone())?;
    let mut frontier = Vec::new();
    for (s, d, m) in generators {
        check_morphism(family, s, d, m)?;
        if g.insert(s.clone(), d.clone(), m.clone()) {
            frontier.push((s.clone(), d.clone(), m.clone()));
        }
    }
    saturate(mode, g, frontier)
}

/// Extend an already closed groupoid by extra morphisms and re-close. The
/// worklist starts from the extras only, so this is an incremental closure.
pub fn extend_closed(
    base: &Groupoid,
    extras: &[(Object, Object, Matrix)],
) -> Result<Groupoid> {
    let mut g = base.clone();
    let mut frontier = Vec::new();
    for (s, d, m) in extras {
        check_morphism(g.family(), s, d, m)?;
        if g.insert(s.clone(), d.clone(), m.clone()) {
            frontier.push((s.clone(), d.clone(), m.clone()));
        }
    }
    saturate(Mode::default(), g, frontier)
}

fn saturate(
    mode: Mode,
    mut g: Groupoid,
    mut frontier: Vec<(Object, Object, Matrix)>,
) -> Result<Groupoid> {
    while !frontier.is_empty() {
        let gref = &g;
        let batches: Vec<Result<Vec<(Object, Object, Matrix)>>> =
            exec::map_vec(mode, frontier, |(s, d, m)| {
                let mut out = Vec::new();
                let inv = m.inverse().ok_or(Error::NotInvertible)?;
                out.push((d.clone(), s.clone(), inv));
                for ((a, b), set) in &gref.hom {
                    if *b == s {
                        for n in set {
                            out.push((a.clone(), d.clone(), m.mul(n)));
                        }
                    }
                    if *a == d {
                        for n in set {
                            out.push((s.clone(), b.clone(), n.mul(&m)));
                        }
                    }
                }
                for sub in subspaces_of(&s.1)? {
                    let (img, mat) = restrict_iso(&s.1, &d.1, &m, &sub)?;
                    out.push(((s.0, sub), (d.0, img), mat));
                }
                Ok(out)
            });
        let mut next = Vec::new();
        for batch in batches {
            for (s, d, m) in batch? {
                if g.insert(s.clone(), d.clone(), m.clone()) {
                    next.push((s, d, m));
                }
            }
        }
        frontier = next;
    }
    Ok(g)
}

/// The groupoid 𝔤(G) of a matrix group G ≤ GL(W): morphisms U → U' are the
/// restrictions g|_U of group elements with g(U) = U'. The input must be the
/// full subgroup; this is checked.
pub fn from_group(field: Fp, w_dim: usize, group: &[Matrix]) -> Result<Groupoid> {
    check_subgroup(field, w_dim, group)?;
    let family = AmbientFamily::single(field, w_dim);
    let full = Subspace::full(field, w_dim);
    let mut g = Groupoid { family, hom: BTreeMap::new() };
    for elt in group {
        for u in all_subspaces(field, w_dim)? {
            let (img, mat) = restrict_iso(&full, &full, elt, &u)?;
            g.insert((0, u), (0, img), mat);
        }
    }
    Ok(g)
}

fn check_subgroup(field: Fp, w_dim: usize, group: &[Matrix]) -> Result<()> {
    if group.is_empty() {
        return Err(Error::NotSubgroup("empty set".into()));
    }
    let set: BTreeSet<&Matrix> = group.iter().collect();
    let id = Matrix::identity(field, w_dim);
    if !set.contains(&id) {
        return Err(Error::NotSubgroup("identity missing".into()));
    }
    for m in group {
        if m.field() != field || m.rows() != w_dim || m.cols() != w_dim {
            return Err(Error::NotSubgroup(format!("element {:?} has the wrong shape", m)));
        }
        match m.inverse() {
            None => return Err(Error::NotSubgroup(format!("{:?} is singular", m))),
            Some(inv) => {
                if !set.contains(&inv) {
                    return Err(Error::NotSubgroup(format!("inverse of {:?} missing", m)));
                }
            }
        }
        for n in group {
            if !set.contains(&m.mul(n)) {
                return Err(Error::NotSubgroup(format!(
                    "product of {:?} and {:?} missing",
                    m, n
                )));
            }
        }
    }
    Ok(())
}

/// Subgroup generated by a set of invertible matrices (worklist closure
/// under products; finiteness of GL makes it terminate).
pub fn group_closure(field: Fp, n: usize, generators: &[Matrix]) -> Result<Vec<Matrix>> {
    let id = Matrix::identity(field, n);
    let mut set: BTreeSet<Matrix> = BTreeSet::from([id]);
    let mut frontier: Vec<Matrix> = Vec::new();
    for m in generators {
        if m.rows() != n || m.cols() != n || m.field() != field {
            return Err(Error::DimensionMismatch(m.rows(), n));
        }
        if m.inverse().is_none() {
            return Err(Error::NotInvertible);
        }
        if set.insert(m.clone()) {
            frontier.push(m.clone());
        }
    }
    while let Some(m) = frontier.pop() {
        let present: Vec<Matrix> = set.iter().cloned().collect();
        for n2 in present {
            for prod in [m.mul(&n2), n2.mul(&m)] {
                if set.insert(prod.clone()) {
                    frontier.push(prod);
                }
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// The conjugation action of GL(W) on groupoids over a single ambient W:
/// morphisms of g·𝒢 from R to R' are g|_{U'} ∘ α ∘ (g|_U)⁻¹ for α ∈ 𝒢(U, U')
/// with U = g⁻¹(R), U' = g⁻¹(R').
pub fn gl_action(g: &Matrix, gpd: &Groupoid) -> Result<Groupoid> {
    if gpd.family.len() != 1 {
        return Err(Error::SingleAmbientRequired);
    }
    let field = gpd.family.field();
    let n = gpd.family.dim(0);
    if g.rows() != n || g.cols() != n {
        return Err(Error::DimensionMismatch(g.rows(), n));
    }
    if g.field() != field {
        return Err(Error::FieldMismatch(g.field().p(), field.p()));
    }
    if g.inverse().is_none() {
        return Err(Error::NotInvertible);
    }
    let full = Subspace::full(field, n);
    let mut out = Groupoid { family: gpd.family.clone(), hom: BTreeMap::new() };
    for ((s, d), set) in &gpd.hom {
        let (r, g_src) = restrict_iso(&full, &full, g, &s.1)?;
        let (r2, g_dst) = restrict_iso(&full, &full, g, &d.1)?;
        let g_src_inv = g_src.inverse().ok_or(Error::NotInvertible)?;
        for a in set {
            out.insert((0, r.clone()), (0, r2.clone()), g_dst.mul(a).mul(&g_src_inv));
        }
    }
    Ok(out)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::enumerate_injections;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    fn gy() -> Matrix {
        // e1 ↦ e1, e2 ↦ e1 + e2
        Matrix::from_rows(f2(), 2, &[vec![1, 1], vec![0, 1]])
    }

    fn line(ambient: usize, v: Vec<u32>) -> Subspace {
        Subspace::from_spanning(f2(), ambient, &[v])
    }

    fn w_obj(dim: usize) -> Object {
        (0, Subspace::full(f2(), dim))
    }

    fn gl(n: usize) -> Vec<Matrix> {
        enumerate_injections(f2(), n, n)
            .unwrap()
            .into_iter()
            .map(|f| f.matrix().clone())
            .collect()
    }

    #[test]
    fn identities_only_is_valid() {
        let g = Groupoid::identities(AmbientFamily::single(f2(), 3)).unwrap();
        assert!(g.validate().is_ok());
        // one identity per subspace of F_2^3
        assert_eq!(g.morphism_count(), 16);
    }

    #[test]
    fn missing_restriction_is_reported() {
        let fam = AmbientFamily::single(f2(), 2);
        let mut morphisms: Vec<(Object, Object, Matrix)> = Vec::new();
        for o in fam.objects().unwrap() {
            morphisms.push((o.clone(), o.clone(), Matrix::identity(f2(), o.1.dim())));
        }
        morphisms.push((w_obj(2), w_obj(2), gy()));
        let g = Groupoid::from_parts(fam, &morphisms).unwrap();
        let report = g.validate();
        assert!(!report.is_ok());
        assert!(report.violations.iter().any(|v| v.contains("restriction")));
    }

    #[test]
    fn close_adds_restrictions_and_inverses() {
        let fam = AmbientFamily::single(f2(), 2);
        let g = close(&fam, &[(w_obj(2), w_obj(2), gy())]).unwrap();
        assert!(g.validate().is_ok());
        // g_y swaps the e2-axis and the diagonal line
        let e2 = (0, line(2, vec![0, 1]));
        let diag = (0, line(2, vec![1, 1]));
        let one = Matrix::identity(f2(), 1);
        assert!(g.contains(&e2, &diag, &one));
        assert!(g.contains(&diag, &e2, &one));
        // matches the group embedding of ⟨g_y⟩
        let grp = from_group(f2(), 2, &[Matrix::identity(f2(), 2), gy()]).unwrap();
        assert_eq!(g, grp);
        // idempotent
        let morphs: Vec<_> =
            g.morphisms().map(|(s, d, m)| (s.clone(), d.clone(), m.clone())).collect();
        assert_eq!(close(&fam, &morphs).unwrap(), g);
        // empty generators give identities only
        assert_eq!(close(&fam, &[]).unwrap(), Groupoid::identities(fam).unwrap());
    }

    #[test]
    fn extend_closed_matches_closure_from_scratch() {
        let fam = AmbientFamily::single(f2(), 2);
        let base = Groupoid::identities(fam.clone()).unwrap();
        let extra = (w_obj(2), w_obj(2), gy());
        let a = extend_closed(&base, std::slice::from_ref(&extra)).unwrap();
        let b = close(&fam, &[extra]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn from_group_examples() {
        let trivial = from_group(f2(), 2, &[Matrix::identity(f2(), 2)]).unwrap();
        assert_eq!(trivial, Groupoid::identities(AmbientFamily::single(f2(), 2)).unwrap());

        let g = from_group(f2(), 2, &group_closure(f2(), 2, &[gy()]).unwrap()).unwrap();
        assert!(g.validate().is_ok());
        assert!(g.hom_set(&(0, line(2, vec![0, 1])), &(0, line(2, vec![1, 1]))).is_some());

        // the full GL_2(F_2) connects every pair of lines
        let full = from_group(f2(), 2, &gl(2)).unwrap();
        let lines = [line(2, vec![1, 0]), line(2, vec![0, 1]), line(2, vec![1, 1])];
        for a in &lines {
            for b in &lines {
                assert!(full.hom_set(&(0, a.clone()), &(0, b.clone())).is_some());
            }
        }
    }

    #[test]
    fn from_group_rejects_non_subgroups() {
        // missing identity
        assert!(matches!(from_group(f2(), 2, &[gy()]), Err(Error::NotSubgroup(_))));
        // missing a product: an order-3 element with only the identity
        let rot = Matrix::from_rows(f2(), 2, &[vec![0, 1], vec![1, 1]]);
        let bad = [Matrix::identity(f2(), 2), rot];
        assert!(matches!(from_group(f2(), 2, &bad), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn every_subgroup_of_gl2_embeds_validly() {
        // GL_2(F_2) ≅ S_3 has six subgroups; generate them all from single
        // elements plus the full group.
        let mut subgroups: BTreeSet<Vec<Matrix>> = BTreeSet::new();
        for m in gl(2) {
            subgroups.insert(group_closure(f2(), 2, &[m]).unwrap());
        }
        subgroups.insert(group_closure(f2(), 2, &gl(2)).unwrap());
        assert_eq!(subgroups.len(), 6);
        for grp in subgroups {
            assert!(from_group(f2(), 2, &grp).unwrap().validate().is_ok());
        }
    }

    #[test]
    fn gl_action_identity_and_conjugation() {
        let h = group_closure(f2(), 2, &[gy()]).unwrap();
        let g_h = from_group(f2(), 2, &h).unwrap();
        assert_eq!(gl_action(&Matrix::identity(f2(), 2), &g_h).unwrap(), g_h);
        for g in gl(2) {
            let conj: Vec<Matrix> = h
                .iter()
                .map(|m| g.mul(m).mul(&g.inverse().unwrap()))
                .collect();
            assert_eq!(
                gl_action(&g, &g_h).unwrap(),
                from_group(f2(), 2, &conj).unwrap()
            );
        }
    }

    #[test]
    fn gl_action_composition_law() {
        let base = close(
            &AmbientFamily::single(f2(), 2),
            &[(w_obj(2), w_obj(2), gy())],
        )
        .unwrap();
        let a = Matrix::from_rows(f2(), 2, &[vec![0, 1], vec![1, 0]]);
        let b = Matrix::from_rows(f2(), 2, &[vec![1, 0], vec![1, 1]]);
        let lhs = gl_action(&a.mul(&b), &base).unwrap();
        let rhs = gl_action(&a, &gl_action(&b, &base).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sim_classes_oracles() {
        let fam = AmbientFamily::single(f2(), 2);
        // identities only: every injection is its own class
        let discrete = Groupoid::identities(fam.clone()).unwrap();
        assert_eq!(discrete.sim_classes(1).unwrap().len(), 3);
        assert_eq!(discrete.sim_classes(2).unwrap().len(), 6);

        // the full group glues all lines together
        let full = from_group(f2(), 2, &gl(2)).unwrap();
        let classes = full.sim_classes(1).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].len(), 3);

        // ⟨g_y⟩: the e1-axis is alone; e2-axis and diagonal merge
        let g = from_group(f2(), 2, &group_closure(f2(), 2, &[gy()]).unwrap()).unwrap();
        let classes = g.sim_classes(1).unwrap();
        assert_eq!(classes.len(), 2);
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2]);
        // the singleton is the e1-axis injection
        let singleton = classes.iter().find(|c| c.len() == 1).unwrap();
        assert_eq!(singleton[0].1.matrix(), &Matrix::from_rows(f2(), 1, &[vec![1], vec![0]]));
    }

    #[test]
    fn sim_classes_is_an_equivalence_refining_dimension() {
        let g = from_group(f2(), 2, &group_closure(f2(), 2, &[gy()]).unwrap()).unwrap();
        for v in 0..=2 {
            let classes = g.sim_classes(v).unwrap();
            let total: usize = classes.iter().map(Vec::len).sum();
            assert_eq!(total, g.family().injections(v).unwrap().len());
            for class in &classes {
                // image dimension constant on classes (injective: = v)
                assert!(class.iter().all(|(_, inj)| inj.image().dim() == v));
            }
        }
    }

    #[test]
    fn multi_ambient_family_objects_and_injections() {
        let fam = AmbientFamily::new(
            f2(),
            vec![("A".into(), 1), ("B".into(), 2)],
        )
        .unwrap();
        assert_eq!(fam.objects().unwrap().len(), 2 + 5);
        assert_eq!(fam.injections(1).unwrap().len(), 1 + 3);
        let g = Groupoid::identities(fam).unwrap();
        assert!(g.validate().is_ok());
        // without cross-ambient zero morphisms the functor is disconnected:
        // the two empty injections stay in distinct classes
        assert_eq!(g.sim_classes(0).unwrap().len(), 2);
        // gl_action requires a single ambient
        assert!(matches!(
            gl_action(&Matrix::identity(f2(), 1), &g),
            Err(Error::SingleAmbientRequired)
        ));
    }
}
