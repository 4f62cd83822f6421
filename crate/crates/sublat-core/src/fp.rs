//! Exact linear algebra over a prime field F_p.
//!
//! Everything downstream rests on two canonical forms fixed here: matrices in
//! reduced row echelon form, and subspaces represented by the RREF of any
//! spanning set (rows = basis). Two subspaces are equal iff their canonical
//! forms are identical, which makes ordering and hashing structural.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use once_cell::sync::Lazy;

use crate::{Error, Result};

/// Enumeration guard: refuse to enumerate when p^n exceeds this.
const ENUM_GUARD: u64 = 1 << 20;

/// A prime field F_p of small characteristic.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Fp> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.p - a % self.p) % self.p
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.p as u64) as u32
    }

    /// Multiplicative inverse by Fermat; a must be nonzero mod p.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero");
        let mut result = 1u64;
        let mut base = (a % self.p) as u64;
        let mut e = self.p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        result as u32
    }

    /// All field elements, 0..p.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

/// Dense matrix over F_p, row-major. Shapes with zero rows or columns are
/// legal and show up constantly (maps to and from the zero space).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}/{}[", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn new(field: Fp, rows: usize, cols: usize, entries: Vec<u32>) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let entries = entries.into_iter().map(|e| e % field.p()).collect();
        Matrix { p: field.p(), rows, cols, entries }
    }

    pub fn from_rows(field: Fp, cols: usize, rows: &[Vec<u32>]) -> Matrix {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            entries.extend(r.iter().map(|e| e % field.p()));
        }
        Matrix { p: field.p(), rows: rows.len(), cols, entries }
    }

    pub fn zero(field: Fp, rows: usize, cols: usize) -> Matrix {
        Matrix { p: field.p(), rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn field(&self) -> Fp {
        Fp { p: self.p }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Matrix product self · rhs; shapes must agree.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.p, rhs.p, "characteristic mismatch");
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        let f = self.field();
        let mut out = Matrix::zero(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = f.add(out.get(i, j), f.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        let f = self.field();
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field();
        let entries = self.entries.iter().map(|&a| f.neg(a)).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = self.field();
        (0..self.rows)
            .map(|i| {
                let mut acc = 0;
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, j), v[j]));
                }
                acc
            })
            .collect()
    }

    /// Stack vertically: self on top of other.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        assert_eq!(self.p, other.p, "characteristic mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Matrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, entries }
    }

    /// Stack horizontally: self left of other.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        assert_eq!(self.p, other.p, "characteristic mismatch");
        let mut out = Matrix::zero(self.field(), self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form. Idempotent, preserves the row space.
    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let f = self.field();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            // swap rows r and pr
            if pr != r {
                for j in 0..m.cols {
                    let (a, b) = (m.get(r, j), m.get(pr, j));
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            // scale pivot row to 1
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            // eliminate column c from every other row
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let factor = m.get(i, c);
                    for j in 0..m.cols {
                        let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field(), self.rows)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field(), n));
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = Matrix::zero(self.field(), n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, j + n));
            }
        }
        Some(inv)
    }

    /// Null space {x : M x = 0} as a subspace of F_p^cols.
    pub fn null_space(&self) -> Subspace {
        let f = self.field();
        let (red, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![0u32; self.cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(red.get(r, fc));
            }
            basis.push(v);
        }
        Subspace::from_spanning(f, self.cols, &basis)
    }

    /// Solve M x = b; any solution, or None when inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let f = self.field();
        let rhs = Matrix::from_rows(f, self.rows, &[b.to_vec()]).transpose();
        let aug = self.hstack(&rhs);
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(r, self.cols);
        }
        Some(x)
    }
}

/// Linear map F_p^domain → F_p^codomain; columns are images of the standard
/// basis of the domain.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinMap {
    matrix: Matrix,
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinMap{}→{} {:?}", self.domain_dim(), self.codomain_dim(), self.matrix)
    }
}

impl LinMap {
    pub fn new(matrix: Matrix) -> LinMap {
        LinMap { matrix }
    }

    /// Build from images of the domain standard basis.
    pub fn from_images(field: Fp, codomain_dim: usize, images: &[Vec<u32>]) -> LinMap {
        let mut m = Matrix::zero(field, codomain_dim, images.len());
        for (j, img) in images.iter().enumerate() {
            assert_eq!(img.len(), codomain_dim, "image length mismatch");
            for i in 0..codomain_dim {
                m.set(i, j, img[i]);
            }
        }
        LinMap { matrix: m }
    }

    pub fn identity(field: Fp, n: usize) -> LinMap {
        LinMap { matrix: Matrix::identity(field, n) }
    }

    pub fn field(&self) -> Fp {
        self.matrix.field()
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// self ∘ inner.
    pub fn compose(&self, inner: &LinMap) -> LinMap {
        LinMap { matrix: self.matrix.mul(&inner.matrix) }
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.apply(v)
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.domain_dim()
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.null_space()
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_spanning(
            self.field(),
            self.codomain_dim(),
            &self.matrix.transpose().row_vecs(),
        )
    }

    pub fn inverse(&self) -> Option<LinMap> {
        self.matrix.inverse().map(LinMap::new)
    }

    /// Preimage of a subspace of the codomain.
    pub fn preimage(&self, s: &Subspace) -> Result<Subspace> {
        if s.ambient_dim() != self.codomain_dim() {
            return Err(Error::AmbientMismatch(s.ambient_dim(), self.codomain_dim()));
        }
        // x ∈ preimage iff (π_{⊥s} ∘ self)(x) = 0 where ⊥s are the linear
        // conditions cutting out s.
        let conditions = s.perp().basis().clone(); // rows annihilate s
        Ok(conditions.mul(self.matrix()).null_space())
    }
}

/// Subspace of F_p^n in canonical form: basis rows in RREF.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace{}⊆{} {:?}", self.dim(), self.ambient_dim(), self.basis)
    }
}

impl Subspace {
    pub fn from_spanning(field: Fp, ambient_dim: usize, rows: &[Vec<u32>]) -> Subspace {
        let m = Matrix::from_rows(field, ambient_dim, rows);
        let (red, pivots) = m.rref_with_pivots();
        let rows: Vec<Vec<u32>> = (0..pivots.len()).map(|i| red.row(i).to_vec()).collect();
        Subspace { basis: Matrix::from_rows(field, ambient_dim, &rows) }
    }

    pub fn zero(field: Fp, ambient_dim: usize) -> Subspace {
        Subspace { basis: Matrix::zero(field, 0, ambient_dim) }
    }

    pub fn full(field: Fp, ambient_dim: usize) -> Subspace {
        Subspace { basis: Matrix::identity(field, ambient_dim) }
    }

    pub fn field(&self) -> Fp {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis, rows in RREF.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| (0..self.ambient_dim()).find(|&j| self.basis.get(i, j) != 0).unwrap())
            .collect()
    }

    /// Coordinates of v in the canonical basis, or None if v ∉ self.
    /// Because the basis is in RREF, coordinates are read off pivot columns.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.ambient_dim(), "vector length mismatch");
        let f = self.field();
        let coords: Vec<u32> = self.pivots().iter().map(|&c| v[c] % f.p()).collect();
        // verify reconstruction
        let mut rec = vec![0u32; self.ambient_dim()];
        for (i, &c) in coords.iter().enumerate() {
            for j in 0..self.ambient_dim() {
                rec[j] = f.add(rec[j], f.mul(c, self.basis.get(i, j)));
            }
        }
        if rec.iter().zip(v).all(|(&a, &b)| a == b % f.p()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn vec_from_coords(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let f = self.field();
        let mut v = vec![0u32; self.ambient_dim()];
        for (i, &c) in coords.iter().enumerate() {
            for j in 0..self.ambient_dim() {
                v[j] = f.add(v[j], f.mul(c, self.basis.get(i, j)));
            }
        }
        v
    }

    pub fn contains_vec(&self, v: &[u32]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && other.basis.row_vecs().iter().all(|r| self.contains_vec(r))
    }

    /// All vectors of the subspace, p^dim of them, in coordinate order.
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        let f = self.field();
        all_coord_tuples(f, self.dim())
            .into_iter()
            .map(|c| self.vec_from_coords(&c))
            .collect()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch(self.ambient_dim(), other.ambient_dim()));
        }
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Ok(Subspace::from_spanning(self.field(), self.ambient_dim(), &rows))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch(self.ambient_dim(), other.ambient_dim()));
        }
        // (A ∩ B) = (A⊥ + B⊥)⊥ for the standard (nondegenerate) bilinear form.
        Ok(self.perp().sum(&other.perp())?.perp())
    }

    /// Orthogonal complement for the standard bilinear form.
    pub fn perp(&self) -> Subspace {
        self.basis.null_space()
    }

    /// Inclusion map F_p^dim → F_p^ambient sending e_i to the i-th basis row.
    pub fn inclusion(&self) -> LinMap {
        LinMap::from_images(self.field(), self.ambient_dim(), &self.basis.row_vecs())
    }

    /// Image under an ambient linear map (not necessarily injective).
    pub fn map_through(&self, f: &LinMap) -> Subspace {
        let rows: Vec<Vec<u32>> = self.basis.row_vecs().iter().map(|r| f.apply(r)).collect();
        Subspace::from_spanning(self.field(), f.codomain_dim(), &rows)
    }
}

fn all_coord_tuples(field: Fp, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * field.p() as usize);
        for t in &out {
            for e in field.elements() {
                let mut t2 = t.clone();
                t2.push(e);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// All vectors of F_p^n in lexicographic coordinate order.
pub fn all_vectors(field: Fp, n: usize) -> Vec<Vec<u32>> {
    all_coord_tuples(field, n)
}

type SubspaceCache = BTreeMap<(u32, usize), Vec<Subspace>>;
static ALL_SUBSPACES: Lazy<Mutex<SubspaceCache>> = Lazy::new(|| Mutex::new(BTreeMap::new()));

/// Every subspace of F_p^n exactly once, sorted by (dimension, canonical
/// basis). Enumerates RREF shapes directly: choose pivot columns, then fill
/// the free cells.
pub fn all_subspaces(field: Fp, n: usize) -> Result<Vec<Subspace>> {
    let p = field.p();
    if (p as u64).checked_pow(n as u32).is_none_or(|v| v > ENUM_GUARD) {
        return Err(Error::SizeGuard(p, n));
    }
    if let Some(hit) = ALL_SUBSPACES.lock().unwrap().get(&(p, n)) {
        return Ok(hit.clone());
    }
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free cells: (row i, col j) with j > pivots[i] and j not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let pivots = &pivots;
                    (0..n).filter_map(move |j| {
                        (j > pivots[i] && !pivots.contains(&j)).then_some((i, j))
                    })
                })
                .collect();
            for fill in all_coord_tuples(field, free.len()) {
                let mut m = Matrix::zero(field, k, n);
                for (i, &c) in pivots.iter().enumerate() {
                    m.set(i, c, 1);
                }
                for (&(i, j), &v) in free.iter().zip(&fill) {
                    m.set(i, j, v);
                }
                out.push(Subspace { basis: m });
            }
        }
    }
    out.sort_by_key(|s| (s.dim(), s.basis.clone()));
    ALL_SUBSPACES
        .lock()
        .unwrap()
        .insert((p, n), out.clone());
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] + 1 <= n - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All injective linear maps F_p^k → F_p^n, deterministic order
/// (lexicographic in the column tuples). Empty when k > n.
pub fn enumerate_injections(field: Fp, k: usize, n: usize) -> Result<Vec<LinMap>> {
    let p = field.p();
    if (p as u64).checked_pow(n as u32).is_none_or(|v| v > ENUM_GUARD) {
        return Err(Error::SizeGuard(p, n));
    }
    if k > n {
        return Ok(vec![]);
    }
    let vectors = all_vectors(field, n);
    let mut out = Vec::new();
    let mut cols: Vec<Vec<u32>> = Vec::new();
    fn rec(
        field: Fp,
        k: usize,
        n: usize,
        vectors: &[Vec<u32>],
        cols: &mut Vec<Vec<u32>>,
        out: &mut Vec<LinMap>,
    ) {
        if cols.len() == k {
            out.push(LinMap::from_images(field, n, cols));
            return;
        }
        for v in vectors {
            cols.push(v.clone());
            let m = Matrix::from_rows(field, n, cols).transpose();
            if m.rank() == cols.len() {
                rec(field, k, n, vectors, cols, out);
            }
            cols.pop();
        }
    }
    rec(field, k, n, &vectors, &mut cols, &mut out);
    Ok(out)
}

/// All isomorphisms a → b as dim×dim matrices in the canonical bases of a
/// and b. Requires equal dimensions.
pub fn enumerate_isos(a: &Subspace, b: &Subspace) -> Result<Vec<Matrix>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let k = a.dim();
    Ok(enumerate_injections(a.field(), k, k)?
        .into_iter()
        .map(|f| f.matrix().clone())
        .collect())
}

/// Projection and section data for F_p^n / u.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub q_dim: usize,
    /// π: F_p^n → F_p^{q_dim}, kernel u.
    pub projection: LinMap,
    /// s: F_p^{q_dim} → F_p^n with π∘s = id; image spans the non-pivot
    /// standard coordinates of u.
    pub section: LinMap,
}

/// Quotient by a subspace with the deterministic pivot-complement section:
/// the section hits the standard coordinates not used as pivots of u.
pub fn quotient(u: &Subspace) -> QuotientData {
    let f = u.field();
    let n = u.ambient_dim();
    let pivots = u.pivots();
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let q_dim = free.len();
    // section: e_i ↦ e_{free[i]}
    let sec_images: Vec<Vec<u32>> = free
        .iter()
        .map(|&j| {
            let mut v = vec![0u32; n];
            v[j] = 1;
            v
        })
        .collect();
    let section = LinMap::from_images(f, n, &sec_images);
    // projection: subtract the u-component (coefficients read at pivot
    // columns), then keep the free coordinates.
    let proj_images: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let mut v = vec![0u32; n];
            v[j] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                let c = v[pc];
                if c != 0 {
                    for t in 0..n {
                        v[t] = f.sub(v[t], f.mul(c, u.basis().get(r, t)));
                    }
                }
            }
            free.iter().map(|&t| v[t]).collect()
        })
        .collect();
    let projection = LinMap::from_images(f, q_dim, &proj_images);
    QuotientData { q_dim, projection, section }
}

/// Restrict an iso alpha: src → dst (matrix in canonical bases) to a
/// subspace m ⊆ src, corestricted to its image. Returns (alpha(m), matrix of
/// the restriction in the canonical bases of m and alpha(m)).
pub fn restrict_iso(
    src: &Subspace,
    dst: &Subspace,
    alpha: &Matrix,
    m: &Subspace,
) -> Result<(Subspace, Matrix)> {
    if !src.contains(m) {
        return Err(Error::NotSubspaceOfSource);
    }
    let f = src.field();
    // ambient images of m's basis under alpha
    let images: Vec<Vec<u32>> = m
        .basis()
        .row_vecs()
        .iter()
        .map(|v| {
            let c = src.coords(v).expect("m ⊆ src");
            dst.vec_from_coords(&alpha.apply(&c))
        })
        .collect();
    let target = Subspace::from_spanning(f, dst.ambient_dim(), &images);
    let cols: Vec<Vec<u32>> = images
        .iter()
        .map(|v| target.coords(v).expect("image lies in target"))
        .collect();
    let mut mat = Matrix::zero(f, target.dim(), m.dim());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..target.dim() {
            mat.set(i, j, c[i]);
        }
    }
    Ok((target, mat))
}

/// All subspaces of u, returned as subspaces of u's ambient space.
pub fn subspaces_of(u: &Subspace) -> Result<Vec<Subspace>> {
    let inc = u.inclusion();
    Ok(all_subspaces(u.field(), u.dim())?
        .iter()
        .map(|s| s.map_through(&inc))
        .collect())
}

/// Gaussian binomial [n choose k]_p: the number of k-dimensional subspaces
/// of F_p^n.
pub fn gaussian_binomial(p: u64, n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    // ∏_{i=0}^{k-1} (p^{n-i} − 1)/(p^{i+1} − 1), computed exactly
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= p.pow((n - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}
