//! Constrained search for closed groupoids on the subspaces of one ambient
//! space: those making a marked injection central and inducing a prescribed
//! groupoid on the quotient by its image.
//!
//! The search space is the lattice of closed groupoids generated by
//! isomorphisms compatible with the marked injection (each must fix its
//! image pointwise where defined). Starting from the identities-only
//! groupoid, states grow one generator at a time, are closed, completed
//! under the forced extensions that centrality demands, and deduplicated by
//! canonical form. Exact filters then keep precisely the states whose
//! marked class is central (by both the evaluation definition and the
//! witness criterion) and whose descended groupoid equals the target (by
//! both the direct descent and the pushout presheaf).

use std::collections::BTreeSet;

use crate::centre::{
    compatible, extend_over_witness, is_central_criterion_in, is_central_definition,
    CentralElement,
};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::fp::{enumerate_isos, subspaces_of, LinMap, Matrix, Subspace};
use crate::functor::{quotient_functor, regular_part, FunctorTable};
use crate::groupoid::{close, extend_closed, AmbientFamily, Groupoid, Object};
use crate::primitive::{primitive_groupoid, pushout_functor, PrimitiveSetup};

/// Which object pairs feed the generator pool.
///
/// `Maximal` restricts generators to the ambient space and the hyperplanes
/// containing the marked image; every cell at or below those is forced, by
/// restriction and by the extension rule, whenever the ambient dimension
/// exceeds the marked one by at most two. `AllObjects` draws generators
/// from every pair of subspaces and is exhaustive in all dimensions, at a
/// much larger search cost; it is kept as the correctness oracle for the
/// restricted scope.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PoolScope {
    Maximal,
    AllObjects,
}

fn pool_objects(delta: &LinMap, scope: PoolScope) -> Result<Vec<Subspace>> {
    let field = delta.field();
    let w = delta.codomain_dim();
    let full = Subspace::full(field, w);
    let image = delta.image();
    match scope {
        PoolScope::Maximal => {
            let mut out: Vec<Subspace> = subspaces_of(&full)?
                .into_iter()
                .filter(|u| u.dim() + 1 == w && u.contains(&image))
                .collect();
            out.push(full);
            Ok(out)
        }
        PoolScope::AllObjects => subspaces_of(&full),
    }
}

// All non-identity isomorphisms between pool objects that transfer the
// marked image correctly; closure can never produce a morphism outside this
// condition, so these generate every admissible state.
fn condition_pool(delta: &LinMap, scope: PoolScope) -> Result<Vec<(Object, Object, Matrix)>> {
    let objects = pool_objects(delta, scope)?;
    let mut pool = Vec::new();
    for u in &objects {
        for u2 in &objects {
            if u.dim() != u2.dim() {
                continue;
            }
            for alpha in enumerate_isos(u, u2)? {
                if u == u2 && alpha.is_identity() {
                    continue;
                }
                if compatible(delta, delta, u, u2, &alpha) {
                    pool.push(((0, u.clone()), (0, u2.clone()), alpha));
                }
            }
        }
    }
    Ok(pool)
}

// Complete a closed state under the extension rule: a compatible morphism
// forces its extension over the marked image. A state owning a compatible
// morphism with no isomorphic extension can never become admissible, nor
// can any larger state; those branches die here.
fn complete(delta: &LinMap, mut g: Groupoid) -> Result<Option<Groupoid>> {
    loop {
        let mut extras = Vec::new();
        for (src, dst, alpha) in g.morphisms() {
            if !compatible(delta, delta, &src.1, &dst.1, alpha) {
                return Ok(None);
            }
            match extend_over_witness(delta, delta, &src.1, &dst.1, alpha)? {
                None => return Ok(None),
                Some((s, s2, bar)) => {
                    if !g.contains(&(src.0, s.clone()), &(dst.0, s2.clone()), &bar) {
                        extras.push(((src.0, s), (dst.0, s2), bar));
                    }
                }
            }
        }
        if extras.is_empty() {
            return Ok(Some(g));
        }
        g = extend_closed(&g, &extras)?;
    }
}

// The exact admission test: the marked class must be central by both
// algorithms and must descend to the target by both constructions.
fn admits(
    delta: &LinMap,
    target: &Groupoid,
    target_table: &FunctorTable,
    g: &Groupoid,
) -> Result<bool> {
    let f = quotient_functor(g)?;
    let x = f.gen().expect("quotient tables carry labels").q_class(0, delta.matrix())?;
    let element = CentralElement::new(&f, delta.domain_dim(), x, vec![Some(delta.clone())])?;
    if !is_central_criterion_in(&f, g, &element)? {
        return Ok(false);
    }
    if !is_central_definition(&f, delta.domain_dim(), x)? {
        return Ok(false);
    }
    let setup = PrimitiveSetup::new(g.clone(), delta.clone())?;
    if primitive_groupoid(&setup)? != *target {
        return Ok(false);
    }
    let descended = regular_part(&pushout_functor(&setup)?)?;
    Ok(descended.same_presheaf(target_table))
}

/// All closed groupoids on the subspaces of the injection's codomain for
/// which the class of `delta` is central and the groupoid descended to the
/// quotient by its image equals `target`, in ascending canonical order.
/// The target must live on a single ambient of the complementary dimension.
pub fn enumerate_constrained(delta: &LinMap, target: &Groupoid) -> Result<Vec<Groupoid>> {
    enumerate_constrained_with(Mode::default(), PoolScope::Maximal, delta, target)
}

/// [`enumerate_constrained`] with an explicit execution mode and pool scope.
/// Successor states of one generation are explored in parallel and merged
/// into a sorted set, so the output order is independent of the mode.
pub fn enumerate_constrained_with(
    mode: Mode,
    scope: PoolScope,
    delta: &LinMap,
    target: &Groupoid,
) -> Result<Vec<Groupoid>> {
    if !delta.is_injective() {
        return Err(Error::NotInjective);
    }
    let field = delta.field();
    if target.family().field() != field {
        return Err(Error::FieldMismatch(target.family().field().p(), field.p()));
    }
    if target.family().len() != 1 {
        return Err(Error::SingleAmbientRequired);
    }
    let q_dim = delta.codomain_dim() - delta.domain_dim();
    if target.family().dim(0) != q_dim {
        return Err(Error::DimensionMismatch(target.family().dim(0), q_dim));
    }

    let family = AmbientFamily::single(field, delta.codomain_dim());
    let pool = condition_pool(delta, scope)?;
    let start = complete(delta, close(&family, &[])?)?
        .expect("the identities-only state is always admissible to explore");

    let mut visited = BTreeSet::from([start.clone()]);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let jobs: Vec<(Groupoid, (Object, Object, Matrix))> = frontier
            .iter()
            .flat_map(|state| {
                pool.iter()
                    .filter(|(s, d, m)| !state.contains(s, d, m))
                    .map(|g| (state.clone(), g.clone()))
            })
            .collect();
        let grown = exec::map_vec(mode, jobs, |(state, (s, d, m))| {
            complete(delta, extend_closed(&state, &[(s, d, m)])?)
        });
        frontier = Vec::new();
        for next in grown {
            if let Some(g) = next? {
                if visited.insert(g.clone()) {
                    frontier.push(g);
                }
            }
        }
    }

    let target_table = quotient_functor(target)?;
    let states: Vec<Groupoid> = visited.into_iter().collect();
    let verdicts = exec::map_vec(mode, states.clone(), |g| {
        admits(delta, target, &target_table, &g)
    });
    let mut out = Vec::new();
    for (g, keep) in states.into_iter().zip(verdicts) {
        if keep? {
            out.push(g);
        }
    }
    Ok(out)
}

/// Partition a list of groupoids on one ambient space by simultaneous
/// change of coordinates: two entries are identified when some invertible
/// matrix carries one onto the other. Returns the least member of each
/// class, in input order of first appearance, and the map from input index
/// to class index.
pub fn conjugacy_reduce(list: &[Groupoid]) -> Result<(Vec<Groupoid>, Vec<usize>)> {
    let Some(first) = list.first() else {
        return Ok((Vec::new(), Vec::new()));
    };
    let family = first.family();
    if family.len() != 1 {
        return Err(Error::SingleAmbientRequired);
    }
    for g in list {
        if g.family() != family {
            return Err(Error::AmbientMismatch(g.family().len(), family.len()));
        }
    }
    let full = Subspace::full(family.field(), family.dim(0));
    let changes = enumerate_isos(&full, &full)?;

    let mut class_of = vec![usize::MAX; list.len()];
    let mut reps = Vec::new();
    for i in 0..list.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let class = reps.len();
        // the input is scanned in order, so the first unassigned entry is
        // the least of its class whenever the input is sorted
        reps.push(list[i].clone());
        let orbit: BTreeSet<Groupoid> = changes
            .iter()
            .map(|m| crate::groupoid::gl_action(m, &list[i]))
            .collect::<Result<_>>()?;
        for (j, candidate) in list.iter().enumerate().skip(i) {
            if class_of[j] == usize::MAX && orbit.contains(candidate) {
                class_of[j] = class;
            }
        }
    }
    Ok((reps, class_of))
}
