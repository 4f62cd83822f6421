//! Shifts of a table by a fixed space, central elements, joins, and centres.
//!
//! Shifting a table `F` by a space `V` produces the table whose value at `W`
//! collects, over every gluing class `c` of `(V, W)`, the elements of the
//! pushout value `F(V ⊕_c W)`. The two pushout legs induce pullbacks: the
//! `ι_V` leg cuts out the subtable over a chosen element `x ∈ F(V)`, and the
//! `ι_W` leg evaluates back into `F`. The pair `(V, x)` is central when that
//! evaluation is a bijection in every dimension; central elements are closed
//! under restriction and admit unique joins, and in a connected table a
//! central element of maximal dimension is a centre: every central element
//! factors through it along some injection.
//!
//! Centrality has a second, purely combinatorial characterisation for tables
//! presented by `q`-labels: a labelled element is central exactly when every
//! groupoid morphism agrees with the witness transfer on overlaps, and
//! membership in the groupoid is invariant under extending a compatible
//! isomorphism over the witness image. Both algorithms are implemented
//! independently; they must agree.

use std::collections::BTreeMap;

use crate::amalgam::{b_functorial, b_set, AmalgamClass};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::fp::{enumerate_injections, enumerate_isos, LinMap, Matrix, Subspace};
use crate::functor::{groupoid_of, is_connected, is_minimal, FunctorTable, Label};
use crate::groupoid::Groupoid;

/// A pointed space `(V, x)` in a table: a dimension, an element index into
/// `F(V)`, and one optional presenting injection per ambient. The witness for
/// ambient `i`, when present, is an injection `δ_i: V ↪ W_i` whose `q`-label
/// is `x`; ambients whose value sets miss the class carry `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralElement {
    v_dim: usize,
    x: usize,
    witnesses: Vec<Option<LinMap>>,
}

impl CentralElement {
    /// Validate and assemble a pointed element. For a labelled table the
    /// witness list must carry one slot per ambient and every present witness
    /// must be an injection into its ambient with `q`-label `x`; for an
    /// unlabelled table the list must be empty.
    pub fn new(
        f: &FunctorTable,
        v_dim: usize,
        x: usize,
        witnesses: Vec<Option<LinMap>>,
    ) -> Result<CentralElement> {
        if v_dim > f.max_dim() || x >= f.value(v_dim).len() {
            return Err(Error::ElementAbsent);
        }
        match f.gen() {
            Some(gen) => {
                if witnesses.len() != gen.family().len() {
                    return Err(Error::DimensionMismatch(witnesses.len(), gen.family().len()));
                }
                for (i, slot) in witnesses.iter().enumerate() {
                    let Some(delta) = slot else { continue };
                    if delta.domain_dim() != v_dim {
                        return Err(Error::DimensionMismatch(delta.domain_dim(), v_dim));
                    }
                    if delta.codomain_dim() != gen.family().dim(i) {
                        return Err(Error::AmbientMismatch(
                            delta.codomain_dim(),
                            gen.family().dim(i),
                        ));
                    }
                    if !delta.is_injective() {
                        return Err(Error::NotInjective);
                    }
                    if gen.q_class(i, delta.matrix())? != x {
                        return Err(Error::Invariant(
                            "witness injection carries the wrong class".into(),
                        ));
                    }
                }
            }
            None => {
                if !witnesses.is_empty() {
                    return Err(Error::DimensionMismatch(witnesses.len(), 0));
                }
            }
        }
        Ok(CentralElement { v_dim, x, witnesses })
    }

    /// Assemble `(V, x)` with the least witness per ambient, `None` where the
    /// class does not occur. Unlabelled tables get an empty witness list.
    pub fn with_default_witnesses(
        f: &FunctorTable,
        v_dim: usize,
        x: usize,
    ) -> Result<CentralElement> {
        let witnesses = if f.gen().is_some() {
            witness_candidates(f, v_dim, x)?
                .into_iter()
                .map(|w| w.into_iter().next())
                .collect()
        } else {
            if v_dim > f.max_dim() || x >= f.value(v_dim).len() {
                return Err(Error::ElementAbsent);
            }
            Vec::new()
        };
        CentralElement::new(f, v_dim, x, witnesses)
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn witnesses(&self) -> &[Option<LinMap>] {
        &self.witnesses
    }
}

/// All presenting injections of `x ∈ F(V)`, grouped per ambient: entry `i`
/// lists every injection `δ: V ↪ W_i` whose `q`-label is `x`.
pub fn witness_candidates(
    f: &FunctorTable,
    v_dim: usize,
    x: usize,
) -> Result<Vec<Vec<LinMap>>> {
    let gen = f.gen().ok_or(Error::MissingQLabels)?;
    if v_dim > f.max_dim() || x >= f.value(v_dim).len() {
        return Err(Error::ElementAbsent);
    }
    let mut out = Vec::with_capacity(gen.family().len());
    for i in 0..gen.family().len() {
        let mut list = Vec::new();
        for delta in enumerate_injections(f.field(), v_dim, gen.family().dim(i))? {
            if gen.q_class(i, delta.matrix())? == x {
                list.push(delta);
            }
        }
        out.push(list);
    }
    Ok(out)
}

fn transport_or_invariant<'a>(
    f: &'a FunctorTable,
    j: usize,
    k: usize,
    m: &Matrix,
) -> Result<&'a [usize]> {
    f.transport_of(j, k, m)
        .ok_or_else(|| Error::Invariant(format!("missing transport at ({j}, {k})")))
}

/// Shared builder for the shift tables. With a basepoint the value sets are
/// cut down to the fibre of the `ι_V` pullback over it. Returns the table and
/// the `ι_W`-pullback evaluation, index-aligned with each value set.
fn build_shift(
    f: &FunctorTable,
    v_dim: usize,
    basepoint: Option<usize>,
) -> Result<(FunctorTable, Vec<Vec<usize>>)> {
    let field = f.field();
    let d = f.max_dim();
    if let Some(x) = basepoint {
        if v_dim > d || x >= f.value(v_dim).len() {
            return Err(Error::ElementAbsent);
        }
    }

    let mut classes_by_span: Vec<BTreeMap<Matrix, AmalgamClass>> = Vec::with_capacity(d + 1);
    for w in 0..=d {
        let mut by_span = BTreeMap::new();
        for c in b_set(field, v_dim, w)? {
            by_span.insert(c.span().stacked(), c);
        }
        classes_by_span.push(by_span);
    }

    let mut elements: Vec<Vec<Label>> = Vec::with_capacity(d + 1);
    let mut evaluation: Vec<Vec<usize>> = Vec::with_capacity(d + 1);
    // per element: the class span, the pushout dimension, the inner index
    let mut tags: Vec<Vec<(Matrix, usize, usize)>> = Vec::with_capacity(d + 1);
    for w in 0..=d {
        let mut rows: Vec<(Label, usize, Matrix, usize, usize)> = Vec::new();
        for c in classes_by_span[w].values() {
            let pd = c.pushout_dim();
            if pd > d {
                continue;
            }
            let iv = transport_or_invariant(f, v_dim, pd, c.iota_v().matrix())?;
            let iw = transport_or_invariant(f, w, pd, c.iota_w().matrix())?;
            let span = c.span().stacked();
            for b in 0..f.value(pd).len() {
                if let Some(x) = basepoint {
                    if iv[b] != x {
                        continue;
                    }
                }
                let label = Label::Pair {
                    span: span.clone(),
                    inner: Box::new(f.value(pd)[b].clone()),
                };
                rows.push((label, iw[b], span.clone(), pd, b));
            }
        }
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        let mut labs = Vec::with_capacity(rows.len());
        let mut eval = Vec::with_capacity(rows.len());
        let mut tag = Vec::with_capacity(rows.len());
        for (label, y, span, pd, b) in rows {
            labs.push(label);
            eval.push(y);
            tag.push((span, pd, b));
        }
        elements.push(labs);
        evaluation.push(eval);
        tags.push(tag);
    }

    let mut positions: Vec<BTreeMap<(Matrix, usize), usize>> = Vec::with_capacity(d + 1);
    for tag in &tags {
        positions.push(
            tag.iter().enumerate().map(|(i, (s, _, b))| ((s.clone(), *b), i)).collect(),
        );
    }

    let id_v = LinMap::identity(field, v_dim);
    let mut transport = BTreeMap::new();
    for u in 0..=d {
        for w in u..=d {
            for alpha in enumerate_injections(field, u, w)? {
                let mut vec = Vec::with_capacity(tags[w].len());
                for (span, pd, b) in &tags[w] {
                    let c = &classes_by_span[w][span];
                    let (c2, h) = b_functorial(&id_v, &alpha, c)?;
                    let pd2 = c2.pushout_dim();
                    let b2 = transport_or_invariant(f, pd2, *pd, h.matrix())?[*b];
                    let idx = positions[u]
                        .get(&(c2.span().stacked(), b2))
                        .copied()
                        .ok_or_else(|| {
                            Error::Invariant("shift fibre is not closed under transport".into())
                        })?;
                    vec.push(idx);
                }
                transport.insert((u, w, alpha.matrix().clone()), vec);
            }
        }
    }

    let table = FunctorTable::from_parts(field, d, elements, transport, None)?;
    Ok((table, evaluation))
}

/// The shift of `f` by a `v_dim`-dimensional space: value sets are pairs of a
/// gluing-class span and an element of the pushout value, transported by
/// pulling the class back and moving the element along the induced injection
/// of pushouts. Classes whose pushout exceeds the table bound contribute
/// nothing.
pub fn sigma(f: &FunctorTable, v_dim: usize) -> Result<FunctorTable> {
    Ok(build_shift(f, v_dim, None)?.0)
}

/// The shift of `f` by `(V, x)`: the subtable of [`sigma`] whose pairs pull
/// back to `x` along the `ι_V` leg. Its value at dimension zero is the single
/// pair over `x`.
pub fn sigma_at(f: &FunctorTable, v_dim: usize, x: usize) -> Result<FunctorTable> {
    Ok(build_shift(f, v_dim, Some(x))?.0)
}

/// The shift at `(V, x)` together with its evaluation into `f`: entry `w` of
/// the second component maps each index of the shift value at `w` to the
/// index in `f`'s value obtained by pulling back along the `ι_W` leg. The
/// evaluation is natural in `w`.
pub fn rho(
    f: &FunctorTable,
    v_dim: usize,
    x: usize,
) -> Result<(FunctorTable, Vec<Vec<usize>>)> {
    build_shift(f, v_dim, Some(x))
}

/// Decide centrality of `(V, x)` straight from the definition: at every
/// dimension `w` up to the table bound, the `ι_W` evaluation must map the
/// fibre of the `ι_V` pullback over `x` bijectively onto the value at `w`.
/// Beyond the bound both sides are empty, so the bound suffices.
pub fn is_central_definition(f: &FunctorTable, v_dim: usize, x: usize) -> Result<bool> {
    is_central_definition_with(Mode::default(), f, v_dim, x)
}

/// [`is_central_definition`] with an explicit execution mode; the per-class
/// fibres at each dimension are scanned in parallel.
pub fn is_central_definition_with(
    mode: Mode,
    f: &FunctorTable,
    v_dim: usize,
    x: usize,
) -> Result<bool> {
    let field = f.field();
    let d = f.max_dim();
    if v_dim > d || x >= f.value(v_dim).len() {
        return Err(Error::ElementAbsent);
    }
    for w in 0..=d {
        let classes: Vec<AmalgamClass> =
            b_set(field, v_dim, w)?.into_iter().filter(|c| c.pushout_dim() <= d).collect();
        let fibres: Vec<Result<Vec<usize>>> = exec::map_vec(mode, classes, |c| {
            let pd = c.pushout_dim();
            let iv = transport_or_invariant(f, v_dim, pd, c.iota_v().matrix())?;
            let iw = transport_or_invariant(f, w, pd, c.iota_w().matrix())?;
            Ok((0..f.value(pd).len()).filter(|&b| iv[b] == x).map(|b| iw[b]).collect())
        });
        let mut seen = vec![false; f.value(w).len()];
        let mut count = 0usize;
        for fibre in fibres {
            for y in fibre? {
                if seen[y] {
                    return Ok(false);
                }
                seen[y] = true;
                count += 1;
            }
        }
        if count != f.value(w).len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All central `(dimension, index)` pairs of the table, by the definition,
/// in ascending order.
pub fn central_elements(f: &FunctorTable) -> Result<Vec<(usize, usize)>> {
    central_elements_with(Mode::default(), f)
}

/// [`central_elements`] with an explicit execution mode.
pub fn central_elements_with(mode: Mode, f: &FunctorTable) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for v in 0..=f.max_dim() {
        for x in 0..f.value(v).len() {
            if is_central_definition_with(mode, f, v, x)? {
                out.push((v, x));
            }
        }
    }
    Ok(out)
}

// Pointwise compatibility of a coordinate isomorphism α: U → U' with the
// witness transfer δ_j ∘ δ_i⁻¹, phrased as kernels: α agrees with the
// transfer on U ∩ δ_i(V) exactly when ker[δ_i | −ι_U] ⊆ ker[δ_j | −ι_U'∘α]
// inside V ⊕ U.
pub(crate) fn compatible(
    delta_i: &LinMap,
    delta_j: &LinMap,
    u: &Subspace,
    u2: &Subspace,
    alpha: &Matrix,
) -> bool {
    let left = delta_i.matrix().hstack(&u.inclusion().matrix().neg()).null_space();
    let right = delta_j
        .matrix()
        .hstack(&u2.inclusion().compose(&LinMap::new(alpha.clone())).matrix().neg())
        .null_space();
    right.contains(&left)
}

// Extend a compatible α: U → U' over the witness images: the unique map on
// U + δ_i(V) restricting to α on U and to the witness transfer on δ_i(V),
// in coordinates of the sum subspaces. `None` when the extension fails to be
// an isomorphism. Compatibility of α must be checked by the caller; it makes
// the value independent of the chosen decomposition of a sum vector.
pub(crate) fn extend_over_witness(
    delta_i: &LinMap,
    delta_j: &LinMap,
    u: &Subspace,
    u2: &Subspace,
    alpha: &Matrix,
) -> Result<Option<(Subspace, Subspace, Matrix)>> {
    let field = delta_i.field();
    let vi = delta_i.image();
    let vj = delta_j.image();
    let s = u.sum(&vi)?;
    let s2 = u2.sum(&vj)?;
    if s.dim() != s2.dim() {
        return Ok(None);
    }
    let alpha = LinMap::new(alpha.clone());
    let decomp = u.basis().transpose().hstack(&vi.basis().transpose());
    let mut images = Vec::with_capacity(s.dim());
    for sv in s.basis().row_vecs() {
        let c = decomp.solve(&sv).expect("sum basis vector decomposes over the summands");
        let (cu, cv) = c.split_at(u.dim());
        let u_part = u2.vec_from_coords(&alpha.apply(cu));
        let v_ambient = vi.vec_from_coords(cv);
        let lift = delta_i.matrix().solve(&v_ambient).expect("witness image vector lifts");
        let v_part = delta_j.apply(&lift);
        let image: Vec<u32> =
            u_part.iter().zip(&v_part).map(|(&a, &b)| field.add(a, b)).collect();
        images.push(s2.coords(&image).expect("extension lands in the witness sum"));
    }
    let bar = LinMap::from_images(field, s2.dim(), &images);
    if bar.matrix().inverse().is_none() {
        return Ok(None);
    }
    Ok(Some((s, s2, bar.matrix().clone())))
}

/// Decide centrality of a labelled element through its witnesses, against
/// the groupoid recovered from the table's `q`-labels. Requires a minimal
/// generating family and a witness in every ambient.
pub fn is_central_criterion(f: &FunctorTable, ce: &CentralElement) -> Result<bool> {
    let g = groupoid_of(f)?;
    is_central_criterion_in(f, &g, ce)
}

/// [`is_central_criterion`] against a caller-supplied groupoid, assumed to be
/// the one presented by the table's `q`-labels. Two conditions are checked:
/// every groupoid morphism must be compatible with the witness transfer, and
/// a compatible isomorphism must lie in the groupoid exactly when its
/// extension over the witness images does.
pub fn is_central_criterion_in(
    f: &FunctorTable,
    g: &Groupoid,
    ce: &CentralElement,
) -> Result<bool> {
    let gen = f.gen().ok_or(Error::MissingQLabels)?;
    if !is_minimal(f)? {
        return Err(Error::Invariant("generating family is not minimal".into()));
    }
    if ce.v_dim > f.max_dim() || ce.x >= f.value(ce.v_dim).len() {
        return Err(Error::ElementAbsent);
    }
    if ce.witnesses.len() != gen.family().len() {
        return Err(Error::DimensionMismatch(ce.witnesses.len(), gen.family().len()));
    }
    let mut deltas = Vec::with_capacity(ce.witnesses.len());
    for (i, slot) in ce.witnesses.iter().enumerate() {
        deltas.push(slot.as_ref().ok_or(Error::NoWitness(i))?);
    }

    for (src, dst, alpha) in g.morphisms() {
        if !compatible(deltas[src.0], deltas[dst.0], &src.1, &dst.1, alpha) {
            return Ok(false);
        }
    }

    let objects = gen.family().objects()?;
    for (i, u) in &objects {
        for (j, u2) in &objects {
            if u.dim() != u2.dim() {
                continue;
            }
            for alpha in enumerate_isos(u, u2)? {
                if !compatible(deltas[*i], deltas[*j], u, u2, &alpha) {
                    continue;
                }
                let in_g = g.contains(&(*i, u.clone()), &(*j, u2.clone()), &alpha);
                let extended = extend_over_witness(deltas[*i], deltas[*j], u, u2, &alpha)?;
                let in_g_bar = match extended {
                    Some((s, s2, bar)) => g.contains(&(*i, s), &(*j, s2), &bar),
                    None => false,
                };
                if in_g != in_g_bar {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The join of two central elements: the unique pair of a gluing class of
/// `(V, T)` and an element of its pushout value pulling back to `a` along
/// `ι_V` and to `b` along `ι_T`. The joined element is again central.
pub fn central_join(
    f: &FunctorTable,
    a: &CentralElement,
    b: &CentralElement,
) -> Result<CentralElement> {
    if !is_central_definition(f, a.v_dim, a.x)? || !is_central_definition(f, b.v_dim, b.x)? {
        return Err(Error::NotCentral);
    }
    let d = f.max_dim();
    let mut hit: Option<(usize, usize)> = None;
    for c in b_set(f.field(), a.v_dim, b.v_dim)? {
        let pd = c.pushout_dim();
        if pd > d {
            continue;
        }
        let iv = transport_or_invariant(f, a.v_dim, pd, c.iota_v().matrix())?;
        let it = transport_or_invariant(f, b.v_dim, pd, c.iota_w().matrix())?;
        for z in 0..f.value(pd).len() {
            if iv[z] == a.x && it[z] == b.x {
                if hit.is_some() {
                    return Err(Error::Invariant("join of central elements is not unique".into()));
                }
                hit = Some((pd, z));
            }
        }
    }
    let (pd, z) =
        hit.ok_or_else(|| Error::Invariant("central elements admit no join".into()))?;
    if !is_central_definition(f, pd, z)? {
        return Err(Error::Invariant("join of central elements is not central".into()));
    }
    CentralElement::with_default_witnesses(f, pd, z)
}

/// The centre of a connected table: a central element of maximal dimension,
/// with the least index at that dimension. Every central element must factor
/// through it along some injection; a violation is reported as an invariant
/// error rather than a wrong answer.
pub fn centre(f: &FunctorTable) -> Result<CentralElement> {
    if !is_connected(f) {
        return Err(Error::Invariant("table is not connected".into()));
    }
    let centrals = central_elements(f)?;
    let c_dim = centrals.last().expect("basepoint of a connected table is central").0;
    let c_idx = centrals.iter().find(|e| e.0 == c_dim).expect("dimension came from the list").1;
    for &(v, x) in &centrals {
        let mut factors = false;
        for alpha in enumerate_injections(f.field(), v, c_dim)? {
            if f.transport_of(v, c_dim, alpha.matrix()).map(|t| t[c_idx]) == Some(x) {
                factors = true;
                break;
            }
        }
        if !factors {
            return Err(Error::Invariant(
                "a central element fails to factor through the centre".into(),
            ));
        }
    }
    CentralElement::with_default_witnesses(f, c_dim, c_idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{arrow_up, block_injections};
    use crate::fp::Fp;
    use crate::functor::{kan_extend, quotient_functor};
    use crate::groupoid::{close, from_group, group_closure, AmbientFamily, Groupoid};

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    fn identities_table(dim: usize) -> FunctorTable {
        let g = Groupoid::identities(AmbientFamily::single(f2(), dim)).unwrap();
        quotient_functor(&g).unwrap()
    }

    fn group_table(dim: usize, generators: &[Matrix]) -> FunctorTable {
        let group = group_closure(f2(), dim, generators).unwrap();
        quotient_functor(&from_group(f2(), dim, &group).unwrap()).unwrap()
    }

    fn shear2() -> Matrix {
        Matrix::from_rows(f2(), 2, &[vec![1, 1], vec![0, 1]])
    }

    fn swap2() -> Matrix {
        Matrix::from_rows(f2(), 2, &[vec![0, 1], vec![1, 0]])
    }

    fn inj(cod: usize, cols: &[Vec<u32>]) -> LinMap {
        LinMap::from_images(f2(), cod, cols)
    }

    fn q_of(f: &FunctorTable, delta: &LinMap) -> usize {
        f.gen().unwrap().q_class(0, delta.matrix()).unwrap()
    }

    // Two plane ambients glued along their first coordinate lines: connected,
    // minimal, and the glued line class has a witness in both ambients.
    fn glued_planes() -> FunctorTable {
        let f = f2();
        let family =
            AmbientFamily::new(f, vec![("A".into(), 2), ("B".into(), 2)]).unwrap();
        let line = Subspace::from_spanning(f, 2, &[vec![1, 0]]);
        let g = close(
            &family,
            &[((0, line.clone()), (1, line), Matrix::identity(f, 1))],
        )
        .unwrap();
        quotient_functor(&g).unwrap()
    }

    #[test]
    fn shift_by_zero_and_value_at_zero_mirror_the_table() {
        let f = group_table(2, &[shear2()]);
        let s0 = sigma(&f, 0).unwrap();
        for w in 0..=2 {
            assert_eq!(s0.value(w).len(), f.value(w).len());
        }
        let (t0, r0) = rho(&f, 0, 0).unwrap();
        for w in 0..=2 {
            assert_eq!(t0.value(w).len(), f.value(w).len());
            assert_eq!(r0[w], (0..f.value(w).len()).collect::<Vec<_>>());
        }
        // at dimension zero the shift recovers the value at the shifting space
        let s1 = sigma(&f, 1).unwrap();
        assert_eq!(s1.value(0).len(), f.value(1).len());
        for x in 0..f.value(1).len() {
            assert_eq!(sigma_at(&f, 1, x).unwrap().value(0).len(), 1);
        }
    }

    #[test]
    fn shift_counts_follow_the_class_sum() {
        let f = identities_table(2);
        let d = f.max_dim();
        for v in 0..=3 {
            let s = sigma(&f, v).unwrap();
            for w in 0..=d {
                let expected: usize = b_set(f2(), v, w)
                    .unwrap()
                    .iter()
                    .filter(|c| c.pushout_dim() <= d)
                    .map(|c| f.value(c.pushout_dim()).len())
                    .sum();
                assert_eq!(s.value(w).len(), expected);
            }
        }
        // frozen spot values: 6 isos through the trivial class plus 3 lines
        // through the full-overlap class
        let s = sigma(&f, 1).unwrap();
        assert_eq!(s.value(1).len(), 9);
        let e1 = inj(2, &[vec![1, 0]]);
        let fib = sigma_at(&f, 1, q_of(&f, &e1)).unwrap();
        assert_eq!(fib.value(1).len(), 3);
        assert!(sigma(&f, 3).unwrap().value(0).is_empty());
    }

    #[test]
    fn extension_of_a_shift_fibre_counts_direct_sum_fibres() {
        let f = group_table(2, &[shear2()]);
        let extended = kan_extend(&f, 3).unwrap();
        for x in 0..f.value(1).len() {
            let fibre = sigma_at(&f, 1, x).unwrap();
            let fibre_extended = kan_extend(&fibre, 2).unwrap();
            let tag = Label::Tagged {
                kernel: Subspace::zero(f2(), 1),
                inner: Box::new(f.value(1)[x].clone()),
            };
            let x_tag = extended.index_of(1, &tag).unwrap();
            for w in 0..=2 {
                let (iota_v, _) = block_injections(f2(), 1, w);
                let pullback = extended.transport_of(1, 1 + w, iota_v.matrix()).unwrap();
                let direct = pullback.iter().filter(|&&g| g == x_tag).count();
                assert_eq!(fibre_extended.value(w).len(), direct);
            }
        }
    }

    #[test]
    fn evaluation_is_surjective_and_fibre_contains_the_overlap_pairs() {
        for f in [identities_table(2), group_table(2, &[shear2()])] {
            let gen = f.gen().unwrap();
            for delta in [inj(2, &[vec![1, 0]]), inj(2, &[vec![0, 1]])] {
                let x = q_of(&f, &delta);
                let (shift, eval) = rho(&f, 1, x).unwrap();
                for u in 0..=2 {
                    let mut hit = vec![false; f.value(u).len()];
                    for s in &eval[u] {
                        hit[*s] = true;
                    }
                    assert!(hit.iter().all(|&h| h), "evaluation must be onto");
                    for eps in enumerate_injections(f2(), u, 2).unwrap() {
                        let up = arrow_up(&delta, &eps).unwrap();
                        let pd = up.class.pushout_dim();
                        let b = gen.q_class(0, up.map.matrix()).unwrap();
                        let label = Label::Pair {
                            span: up.class.span().stacked(),
                            inner: Box::new(f.value(pd)[b].clone()),
                        };
                        let idx = shift
                            .index_of(u, &label)
                            .expect("overlap pair lies in the shift fibre");
                        assert_eq!(eval[u][idx], gen.q_class(0, eps.matrix()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn bijective_evaluation_matches_fixed_spaces() {
        let id2 = identities_table(2);
        let mut everything = Vec::new();
        for v in 0..=2 {
            for x in 0..id2.value(v).len() {
                everything.push((v, x));
            }
        }
        assert_eq!(central_elements(&id2).unwrap(), everything);

        let sheared = group_table(2, &[shear2()]);
        let e1 = q_of(&sheared, &inj(2, &[vec![1, 0]]));
        assert_eq!(central_elements(&sheared).unwrap(), vec![(0, 0), (1, e1)]);

        let gl2 = group_table(2, &[shear2(), swap2()]);
        assert_eq!(central_elements(&gl2).unwrap(), vec![(0, 0)]);

        let f = f2();
        let family =
            AmbientFamily::new(f, vec![("A".into(), 1), ("B".into(), 1)]).unwrap();
        let discrete =
            quotient_functor(&Groupoid::identities(family).unwrap()).unwrap();
        assert!(!is_central_definition(&discrete, 0, 0).unwrap());
        assert!(!is_central_definition(&discrete, 0, 1).unwrap());
    }

    #[test]
    fn criterion_agrees_with_the_evaluation_definition() {
        let tables = vec![
            identities_table(2),
            group_table(2, &[shear2()]),
            group_table(2, &[swap2()]),
            group_table(2, &[shear2(), swap2()]),
            glued_planes(),
        ];
        for f in tables {
            let g = groupoid_of(&f).unwrap();
            for v in 0..=f.max_dim() {
                for x in 0..f.value(v).len() {
                    let by_definition = is_central_definition(&f, v, x).unwrap();
                    let candidates = witness_candidates(&f, v, x).unwrap();
                    if candidates.iter().any(|c| c.is_empty()) {
                        continue;
                    }
                    // every witness family must give the same verdict; vary
                    // one ambient at a time around the default choice
                    let default: Vec<Option<LinMap>> =
                        candidates.iter().map(|c| Some(c[0].clone())).collect();
                    for (i, list) in candidates.iter().enumerate() {
                        for delta in list {
                            let mut witnesses = default.clone();
                            witnesses[i] = Some(delta.clone());
                            let ce = CentralElement::new(&f, v, x, witnesses).unwrap();
                            assert_eq!(
                                is_central_criterion_in(&f, &g, &ce).unwrap(),
                                by_definition,
                                "dim {v} index {x}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn criterion_requires_minimal_families_and_witnesses() {
        let f = f2();
        // nested ambients: the line's classes all come from the plane's
        let family =
            AmbientFamily::new(f, vec![("A".into(), 2), ("B".into(), 1)]).unwrap();
        let full_a = (0, Subspace::full(f, 2));
        let nested = close(
            &family,
            &[(
                (1, Subspace::full(f, 1)),
                (0, Subspace::from_spanning(f, 2, &[vec![1, 0]])),
                Matrix::identity(f, 1),
            )],
        )
        .unwrap();
        let table = quotient_functor(&nested).unwrap();
        let ce = CentralElement::with_default_witnesses(&table, 0, 0).unwrap();
        assert!(matches!(is_central_criterion(&table, &ce), Err(Error::Invariant(_))));

        // a plane class has no witness in a line ambient
        let discrete = quotient_functor(
            &Groupoid::identities(
                AmbientFamily::new(f, vec![("A".into(), 2), ("B".into(), 1)]).unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        let gen = discrete.gen().unwrap();
        let plane_class = gen.q_class(0, &Matrix::identity(f, 2)).unwrap();
        let ce = CentralElement::with_default_witnesses(&discrete, 2, plane_class).unwrap();
        assert_eq!(ce.witnesses()[1], None);
        assert!(matches!(
            is_central_criterion(&discrete, &ce),
            Err(Error::NoWitness(1))
        ));

        // witness carrying a different class is rejected outright
        let sheared = group_table(2, &[shear2()]);
        let e1 = q_of(&sheared, &inj(2, &[vec![1, 0]]));
        let e2 = inj(2, &[vec![0, 1]]);
        assert!(matches!(
            CentralElement::new(&sheared, 1, e1, vec![Some(e2)]),
            Err(Error::Invariant(_))
        ));
        assert!(matches!(
            CentralElement::with_default_witnesses(&sheared, 1, 99),
            Err(Error::ElementAbsent)
        ));
        let _ = full_a;
    }

    #[test]
    fn joins_compose_central_elements() {
        let id2 = identities_table(2);
        let e1 = CentralElement::with_default_witnesses(&id2, 1, q_of(&id2, &inj(2, &[vec![1, 0]])))
            .unwrap();
        let e2 = CentralElement::with_default_witnesses(&id2, 1, q_of(&id2, &inj(2, &[vec![0, 1]])))
            .unwrap();
        let base = CentralElement::with_default_witnesses(&id2, 0, 0).unwrap();

        let with_base = central_join(&id2, &e1, &base).unwrap();
        assert_eq!((with_base.v_dim(), with_base.x()), (e1.v_dim(), e1.x()));
        let with_self = central_join(&id2, &e1, &e1).unwrap();
        assert_eq!((with_self.v_dim(), with_self.x()), (e1.v_dim(), e1.x()));

        let plane = central_join(&id2, &e1, &e2).unwrap();
        let id_class = q_of(&id2, &LinMap::identity(f2(), 2));
        assert_eq!((plane.v_dim(), plane.x()), (2, id_class));

        // a plane of fixed points inside three dimensions
        let shear3 = Matrix::from_rows(
            f2(),
            3,
            &[vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]],
        );
        let f3 = group_table(3, &[shear3]);
        let l1 = q_of(&f3, &inj(3, &[vec![1, 0, 0]]));
        let l2 = q_of(&f3, &inj(3, &[vec![0, 1, 0]]));
        let l3 = q_of(&f3, &inj(3, &[vec![0, 0, 1]]));
        assert!(is_central_definition(&f3, 1, l1).unwrap());
        assert!(is_central_definition(&f3, 1, l2).unwrap());
        assert!(!is_central_definition(&f3, 1, l3).unwrap());
        let a = CentralElement::with_default_witnesses(&f3, 1, l1).unwrap();
        let b = CentralElement::with_default_witnesses(&f3, 1, l2).unwrap();
        let joined = central_join(&f3, &a, &b).unwrap();
        let fixed_plane = q_of(&f3, &inj(3, &[vec![1, 0, 0], vec![0, 1, 0]]));
        assert_eq!((joined.v_dim(), joined.x()), (2, fixed_plane));

        let off = CentralElement::with_default_witnesses(&f3, 1, l3).unwrap();
        assert!(matches!(central_join(&f3, &off, &a), Err(Error::NotCentral)));
    }

    #[test]
    fn central_elements_restrict_along_injections() {
        for f in [identities_table(2), group_table(2, &[shear2()])] {
            for (v, x) in central_elements(&f).unwrap() {
                for v2 in 0..v {
                    for alpha in enumerate_injections(f2(), v2, v).unwrap() {
                        let x2 = f.apply(&alpha, x).unwrap();
                        assert!(is_central_definition(&f, v2, x2).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn centres_are_maximal_central_elements() {
        // every top class of the free table is central; the least one wins
        let id2 = identities_table(2);
        let c = centre(&id2).unwrap();
        assert_eq!((c.v_dim(), c.x()), (2, 0));
        assert!(c.witnesses()[0].as_ref().unwrap().matrix().inverse().is_some());

        let sheared = group_table(2, &[shear2()]);
        let c = centre(&sheared).unwrap();
        assert_eq!((c.v_dim(), c.x()), (1, q_of(&sheared, &inj(2, &[vec![1, 0]]))));

        let gl2 = group_table(2, &[shear2(), swap2()]);
        let c = centre(&gl2).unwrap();
        assert_eq!((c.v_dim(), c.x()), (0, 0));

        let family =
            AmbientFamily::new(f2(), vec![("A".into(), 1), ("B".into(), 1)]).unwrap();
        let discrete =
            quotient_functor(&Groupoid::identities(family).unwrap()).unwrap();
        assert!(matches!(centre(&discrete), Err(Error::Invariant(_))));
    }

    #[test]
    fn evaluation_is_natural_in_the_target() {
        let f = group_table(2, &[shear2()]);
        for x in 0..f.value(1).len() {
            let (shift, eval) = rho(&f, 1, x).unwrap();
            for u in 0..=2 {
                for w in u..=2 {
                    for alpha in enumerate_injections(f2(), u, w).unwrap() {
                        for s in 0..shift.value(w).len() {
                            let moved = shift.apply(&alpha, s).unwrap();
                            assert_eq!(eval[u][moved], f.apply(&alpha, eval[w][s]).unwrap());
                        }
                    }
                }
            }
        }
    }
}
