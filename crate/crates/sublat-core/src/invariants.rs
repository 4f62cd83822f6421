//! Graded realization over F_2: per-degree bases of the subalgebra of
//! F_2[x_1..x_n] cut out by a groupoid, evaluation of algebra presentations,
//! and Hilbert-series utilities.
//!
//! A groupoid morphism α: U → U' imposes the linear condition
//! `α∗ι_{U'}∗(f) = ι_U∗(f)` on a polynomial f, where pullbacks substitute
//! each degree-one variable by the matching row of the map's matrix. The
//! subalgebra in degree d is the null space of the stacked conditions over
//! all morphisms, expressed in monomial coordinates. For a groupoid of
//! global group symmetries this coincides with the classical invariant ring,
//! which is kept as an independently computed oracle. Presentations (sums of
//! free polynomial algebras times a module generator) are evaluated degree
//! by degree and compared by canonical spans, never by generator sets.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::fp::{Fp, LinMap, Matrix};
use crate::groupoid::Groupoid;

/// A polynomial over F_2: a set of monomials, each an exponent vector of
/// fixed length. No zero coefficients are stored, so equality is set
/// equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Poly2 {
    n_vars: usize,
    terms: BTreeSet<Vec<u32>>,
}

impl Poly2 {
    pub fn zero(n_vars: usize) -> Poly2 {
        Poly2 { n_vars, terms: BTreeSet::new() }
    }

    pub fn one(n_vars: usize) -> Poly2 {
        Poly2 { n_vars, terms: BTreeSet::from([vec![0; n_vars]]) }
    }

    pub fn var(n_vars: usize, i: usize) -> Poly2 {
        assert!(i < n_vars, "variable index out of range");
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Poly2 { n_vars, terms: BTreeSet::from([e]) }
    }

    pub fn from_terms(n_vars: usize, monomials: &[Vec<u32>]) -> Result<Poly2> {
        let mut terms = BTreeSet::new();
        for m in monomials {
            if m.len() != n_vars {
                return Err(Error::DimensionMismatch(m.len(), n_vars));
            }
            // adding a monomial twice cancels it over F_2
            if !terms.insert(m.clone()) {
                terms.remove(m);
            }
        }
        Ok(Poly2 { n_vars, terms })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.terms.iter()
    }

    /// Total degree of the largest monomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.iter().map(|m| m.iter().sum::<u32>() as usize).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.iter().map(|m| m.iter().sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn add(&self, other: &Poly2) -> Result<Poly2> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch(self.n_vars, other.n_vars));
        }
        // symmetric difference: coefficients live in F_2
        let terms = self.terms.symmetric_difference(&other.terms).cloned().collect();
        Ok(Poly2 { n_vars: self.n_vars, terms })
    }

    pub fn mul(&self, other: &Poly2) -> Result<Poly2> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch(self.n_vars, other.n_vars));
        }
        let mut terms: BTreeSet<Vec<u32>> = BTreeSet::new();
        for a in &self.terms {
            for b in &other.terms {
                let m: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if !terms.insert(m.clone()) {
                    terms.remove(&m);
                }
            }
        }
        Ok(Poly2 { n_vars: self.n_vars, terms })
    }

    pub fn square(&self) -> Poly2 {
        // the Frobenius is additive over F_2: square each monomial
        let terms = self.terms.iter().map(|m| m.iter().map(|e| 2 * e).collect()).collect();
        Poly2 { n_vars: self.n_vars, terms }
    }

    fn pow(&self, e: u32) -> Poly2 {
        let mut acc = Poly2::one(self.n_vars);
        for _ in 0..e {
            acc = acc.mul(self).expect("same variable count");
        }
        acc
    }

    /// Pull back along a linear map `g: U → W`: each variable of the ambient
    /// `W` is replaced by the linear form given by its row of the matrix,
    /// in the variables of `U`. A ring homomorphism preserving degree and
    /// commuting with squaring.
    pub fn substitute(&self, g: &LinMap) -> Result<Poly2> {
        if g.field().p() != 2 {
            return Err(Error::RequiresP2(g.field().p()));
        }
        if self.n_vars != g.codomain_dim() {
            return Err(Error::DimensionMismatch(self.n_vars, g.codomain_dim()));
        }
        let target = g.domain_dim();
        let rows: Vec<Poly2> = (0..self.n_vars)
            .map(|i| {
                let monos: Vec<Vec<u32>> = (0..target)
                    .filter(|&j| g.matrix().get(i, j) != 0)
                    .map(|j| {
                        let mut e = vec![0; target];
                        e[j] = 1;
                        e
                    })
                    .collect();
                Poly2::from_terms(target, &monos).expect("unit monomials are well formed")
            })
            .collect();
        let mut out = Poly2::zero(target);
        for m in &self.terms {
            let mut prod = Poly2::one(target);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&rows[i].pow(e)).expect("same variable count");
                }
            }
            out = out.add(&prod).expect("same variable count");
        }
        Ok(out)
    }

    /// Parse `x1*(x1+x2)` style expressions: variables `x1..xn`, constants
    /// `0` and `1`, operators `+` and `*`, exponents `^`, parentheses.
    pub fn parse(n_vars: usize, input: &str) -> Result<Poly2> {
        let mut p = Parser { n_vars, chars: input.as_bytes(), pos: 0 };
        let poly = p.expression()?;
        p.skip_space();
        if p.pos != p.chars.len() {
            return Err(Error::PolyParse(format!("unexpected input at byte {}", p.pos)));
        }
        Ok(poly)
    }
}

impl std::fmt::Display for Poly2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // largest monomial first
        let mut firstterm = true;
        for m in self.terms.iter().rev() {
            if !firstterm {
                write!(f, " + ")?;
            }
            firstterm = false;
            if m.iter().all(|&e| e == 0) {
                write!(f, "1")?;
                continue;
            }
            let mut firstfactor = true;
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !firstfactor {
                    write!(f, "*")?;
                }
                firstfactor = false;
                write!(f, "x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    n_vars: usize,
    chars: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_space(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_space();
        self.chars.get(self.pos).copied()
    }

    fn expression(&mut self) -> Result<Poly2> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc = acc.add(&self.term()?)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly2> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly2> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.number()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly2> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expression()?;
                if self.peek() != Some(b')') {
                    return Err(Error::PolyParse("missing closing parenthesis".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(Poly2::zero(self.n_vars))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Poly2::one(self.n_vars))
            }
            Some(b'x') => {
                self.pos += 1;
                let i = self.number()? as usize;
                if i == 0 || i > self.n_vars {
                    return Err(Error::PolyParse(format!(
                        "variable x{i} outside x1..x{}",
                        self.n_vars
                    )));
                }
                Ok(Poly2::var(self.n_vars, i - 1))
            }
            other => Err(Error::PolyParse(format!("unexpected token {other:?}"))),
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::PolyParse("expected a number".into()));
        }
        std::str::from_utf8(&self.chars[start..self.pos])
            .expect("digits are ascii")
            .parse()
            .map_err(|_| Error::PolyParse("number out of range".into()))
    }
}

/// All exponent vectors of total degree `degree` in `n_vars` variables, in
/// descending lexicographic order (so `x1^d` comes first). This fixes the
/// monomial coordinates used by every basis in this module.
pub fn monomials(n_vars: usize, degree: usize) -> Vec<Vec<u32>> {
    if n_vars == 0 {
        return if degree == 0 { vec![vec![]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for lead in (0..=degree).rev() {
        for mut tail in monomials(n_vars - 1, degree - lead) {
            let mut m = Vec::with_capacity(n_vars);
            m.push(lead as u32);
            m.append(&mut tail);
            out.push(m);
        }
    }
    out
}

/// A canonical basis of one homogeneous degree slice: independent
/// homogeneous polynomials, in reduced row echelon form over the descending
/// monomial coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedBasis {
    degree: usize,
    polys: Vec<Poly2>,
}

impl GradedBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[Poly2] {
        &self.polys
    }

    /// Membership in the spanned subspace.
    pub fn contains(&self, p: &Poly2) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        if !p.is_homogeneous() || p.degree() != Some(self.degree) {
            return Ok(false);
        }
        let n_vars = match self.polys.first() {
            Some(q) => q.n_vars(),
            None => return Ok(false),
        };
        if p.n_vars() != n_vars {
            return Err(Error::DimensionMismatch(p.n_vars(), n_vars));
        }
        let monos = monomials(n_vars, self.degree);
        let mut rows: Vec<Vec<u32>> =
            self.polys.iter().map(|q| poly_row(q, &monos)).collect();
        let rank = Matrix::from_rows(two(), monos.len(), &rows).rank();
        rows.push(poly_row(p, &monos));
        Ok(Matrix::from_rows(two(), monos.len(), &rows).rank() == rank)
    }
}

fn two() -> Fp {
    Fp::new(2).expect("2 is prime")
}

fn poly_row(p: &Poly2, monos: &[Vec<u32>]) -> Vec<u32> {
    let mut row = vec![0u32; monos.len()];
    for m in p.terms() {
        let i = monos.iter().position(|q| q == m).expect("monomial of the right degree");
        row[i] = 1;
    }
    row
}

fn basis_from_rows(n_vars: usize, degree: usize, rows: &[Vec<u32>]) -> GradedBasis {
    let monos = monomials(n_vars, degree);
    let reduced = Matrix::from_rows(two(), monos.len(), rows).rref();
    let mut polys = Vec::new();
    for r in 0..reduced.rows() {
        let monosr: Vec<Vec<u32>> = (0..reduced.cols())
            .filter(|&c| reduced.get(r, c) != 0)
            .map(|c| monos[c].clone())
            .collect();
        if monosr.is_empty() {
            continue;
        }
        polys.push(Poly2::from_terms(n_vars, &monosr).expect("rows match the variable count"));
    }
    GradedBasis { degree, polys }
}

/// The degree-`degree` slice of the subalgebra of F_2[x_1..x_n] fixed by
/// the groupoid: the null space of the conditions `α∗ι_{U'}∗(f) = ι_U∗(f)`
/// over all morphisms, in descending monomial coordinates.
pub fn invariant_basis(g: &Groupoid, degree: usize) -> Result<GradedBasis> {
    invariant_basis_with(Mode::default(), g, degree)
}

/// [`invariant_basis`] with an explicit execution mode; condition blocks are
/// built per morphism in parallel.
pub fn invariant_basis_with(mode: Mode, g: &Groupoid, degree: usize) -> Result<GradedBasis> {
    if g.family().field().p() != 2 {
        return Err(Error::RequiresP2(g.family().field().p()));
    }
    if g.family().len() != 1 {
        return Err(Error::SingleAmbientRequired);
    }
    let n = g.family().dim(0);
    let monos = monomials(n, degree);
    let jobs: Vec<(LinMap, LinMap)> = g
        .morphisms()
        .filter(|(src, dst, alpha)| !(src == dst && alpha.is_identity()))
        .map(|(src, dst, alpha)| {
            let through = dst.1.inclusion().compose(&LinMap::new(alpha.clone()));
            let direct = src.1.inclusion();
            (through, direct)
        })
        .collect();
    let blocks: Vec<Result<Vec<Vec<u32>>>> = exec::map_vec(mode, jobs, |(through, direct)| {
        let u = direct.domain_dim();
        let target_monos = monomials(u, degree);
        let mut block = vec![vec![0u32; monos.len()]; target_monos.len()];
        for (col, m) in monos.iter().enumerate() {
            let source = Poly2::from_terms(n, std::slice::from_ref(m))?;
            let diff = source.substitute(&through)?.add(&source.substitute(&direct)?)?;
            for t in diff.terms() {
                let row = target_monos
                    .iter()
                    .position(|q| q == t)
                    .expect("substitution preserves degree");
                block[row][col] = 1;
            }
        }
        Ok(block)
    });
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for b in blocks {
        rows.extend(b?);
    }
    let kernel = Matrix::from_rows(two(), monos.len(), &rows).null_space();
    let rows: Vec<Vec<u32>> = kernel.basis().row_vecs();
    Ok(basis_from_rows(n, degree, &rows))
}

/// Classical invariants of a matrix group in one degree: the simultaneous
/// null space of `g∗ − id` over the given group elements. An independent
/// path kept as an oracle for [`invariant_basis`] on groupoids of global
/// group symmetries.
pub fn group_invariant_basis(
    field: Fp,
    n: usize,
    group: &[Matrix],
    degree: usize,
) -> Result<GradedBasis> {
    if field.p() != 2 {
        return Err(Error::RequiresP2(field.p()));
    }
    let monos = monomials(n, degree);
    let mut rows = Vec::new();
    for m in group {
        if m.inverse().is_none() {
            return Err(Error::NotInvertible);
        }
        let map = LinMap::new(m.clone());
        let mut block = vec![vec![0u32; monos.len()]; monos.len()];
        for (col, mono) in monos.iter().enumerate() {
            let source = Poly2::from_terms(n, std::slice::from_ref(mono))?;
            let diff = source.substitute(&map)?.add(&source)?;
            for t in diff.terms() {
                let row = monos.iter().position(|q| q == t).expect("degree preserved");
                block[row][col] = 1;
            }
        }
        rows.extend(block);
    }
    let kernel = Matrix::from_rows(field, monos.len(), &rows).null_space();
    let rows: Vec<Vec<u32>> = kernel.basis().row_vecs();
    Ok(basis_from_rows(n, degree, &rows))
}

/// One summand of a presentation: a free polynomial algebra on homogeneous
/// generators, multiplied by one homogeneous module generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PresentationTerm {
    pub generators: Vec<Poly2>,
    pub module: Poly2,
}

/// A sum of free-times-module terms presenting a graded subspace of
/// F_2[x_1..x_n] degree by degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraPresentation {
    n_vars: usize,
    terms: Vec<PresentationTerm>,
}

impl AlgebraPresentation {
    pub fn new(n_vars: usize, terms: Vec<PresentationTerm>) -> Result<AlgebraPresentation> {
        for t in &terms {
            for p in t.generators.iter().chain([&t.module]) {
                if p.n_vars() != n_vars {
                    return Err(Error::DimensionMismatch(p.n_vars(), n_vars));
                }
                if !p.is_homogeneous() {
                    return Err(Error::Invariant(format!("inhomogeneous presentation entry {p}")));
                }
            }
            if t.generators.iter().any(|p| p.is_zero() || p.degree() == Some(0)) {
                return Err(Error::Invariant("free generator of degree zero".into()));
            }
        }
        Ok(AlgebraPresentation { n_vars, terms })
    }

    /// Parse a presentation given as `(generator strings, module string)`
    /// pairs in the [`Poly2::parse`] grammar.
    pub fn from_strings(
        n_vars: usize,
        terms: &[(Vec<&str>, &str)],
    ) -> Result<AlgebraPresentation> {
        let mut parsed = Vec::with_capacity(terms.len());
        for (gens, module) in terms {
            parsed.push(PresentationTerm {
                generators: gens
                    .iter()
                    .map(|s| Poly2::parse(n_vars, s))
                    .collect::<Result<Vec<_>>>()?,
                module: Poly2::parse(n_vars, module)?,
            });
        }
        AlgebraPresentation::new(n_vars, parsed)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &[PresentationTerm] {
        &self.terms
    }
}

fn weighted_exponents(weights: &[usize], total: usize) -> Vec<Vec<u32>> {
    if weights.is_empty() {
        return if total == 0 { vec![vec![]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let w = weights[0];
    let mut e = 0;
    while e * w <= total {
        for mut tail in weighted_exponents(&weights[1..], total - e * w) {
            let mut v = Vec::with_capacity(weights.len());
            v.push(e as u32);
            v.append(&mut tail);
            out.push(v);
        }
        e += 1;
    }
    out
}

/// The degree-`degree` slice spanned by a presentation: all products of
/// monomials in the free generators with the module generator, reduced to a
/// canonical basis.
pub fn presentation_basis(pres: &AlgebraPresentation, degree: usize) -> Result<GradedBasis> {
    let monos = monomials(pres.n_vars, degree);
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for term in &pres.terms {
        let m_deg = match term.module.degree() {
            Some(d) => d,
            None => continue,
        };
        if m_deg > degree {
            continue;
        }
        let weights: Vec<usize> = term
            .generators
            .iter()
            .map(|g| g.degree().expect("generators are nonzero"))
            .collect();
        for exps in weighted_exponents(&weights, degree - m_deg) {
            let mut prod = term.module.clone();
            for (g, &e) in term.generators.iter().zip(&exps) {
                if e > 0 {
                    prod = prod.mul(&g.pow(e))?;
                }
            }
            if !prod.is_zero() {
                rows.push(poly_row(&prod, &monos));
            }
        }
    }
    Ok(basis_from_rows(pres.n_vars, degree, &rows))
}

/// Coefficient of `t^degree` in `∏ 1/(1 − t^w)` over the generator degrees:
/// the dimension a free presentation should have in that degree.
pub fn hilbert_dims(weights: &[usize], degree: usize) -> u64 {
    assert!(weights.iter().all(|&w| w >= 1), "generator degrees must be positive");
    let mut coeff = vec![0u64; degree + 1];
    coeff[0] = 1;
    for &w in weights {
        for d in w..=degree {
            coeff[d] += coeff[d - w];
        }
    }
    coeff[degree]
}

/// Degree-by-degree span equality of a presentation against the groupoid's
/// subalgebra, up to and including `max_degree`. Both sides reduce to the
/// same canonical form, so spans are compared exactly.
pub fn verify_presentation(
    g: &Groupoid,
    pres: &AlgebraPresentation,
    max_degree: usize,
) -> Result<bool> {
    for d in 0..=max_degree {
        if presentation_basis(pres, d)? != invariant_basis(g, d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Transport a presentation along an invertible change of coordinates: every
/// entry is pulled back along the inverse, matching the relabelled groupoid
/// obtained from the same matrix.
pub fn conjugate_presentation(
    g: &Matrix,
    pres: &AlgebraPresentation,
) -> Result<AlgebraPresentation> {
    let inverse = LinMap::new(g.inverse().ok_or(Error::NotInvertible)?);
    let mut terms = Vec::with_capacity(pres.terms.len());
    for t in &pres.terms {
        terms.push(PresentationTerm {
            generators: t
                .generators
                .iter()
                .map(|p| p.substitute(&inverse))
                .collect::<Result<Vec<_>>>()?,
            module: t.module.substitute(&inverse)?,
        });
    }
    AlgebraPresentation::new(pres.n_vars, terms)
}
