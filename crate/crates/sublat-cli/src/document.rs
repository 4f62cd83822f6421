//! On-disk document formats and their conversion to core objects.
//!
//! A groupoid document lists ambient spaces by name and morphisms as triples
//! of a source basis, a destination basis, and a matrix whose columns are the
//! destination coordinates of the source basis images. All basis vectors are
//! written over the standard basis of the named ambient space. Serialization
//! canonicalizes: morphisms are emitted in sorted order over the canonical
//! (reduced row echelon) bases of their subspaces, and identities are left
//! implicit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sublat_core::fp::{Fp, LinMap, Matrix, Subspace};
use sublat_core::groupoid::{close, AmbientFamily, Groupoid, Object};
use sublat_core::invariants::AlgebraPresentation;
use sublat_core::Error;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidDocument {
    /// Field characteristic; must be prime.
    pub p: u32,
    /// Ambient spaces, name to dimension. Order of names fixes the ambient
    /// indices used everywhere else.
    pub ambients: BTreeMap<String, usize>,
    /// When set, the morphism list is treated as generators and closed under
    /// composition, inverse and restriction.
    #[serde(default)]
    pub close: bool,
    /// Non-identity morphisms; identities are always present implicitly.
    #[serde(default)]
    pub morphisms: Vec<MorphismDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDocument {
    pub src_ambient: String,
    /// Independent row vectors spanning the source subspace.
    pub src_basis: Vec<Vec<u32>>,
    pub dst_ambient: String,
    pub dst_basis: Vec<Vec<u32>>,
    /// Square matrix over F_p; column j holds the `dst_basis` coordinates of
    /// the image of the j-th `src_basis` vector.
    pub matrix: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDocument {
    pub n_vars: usize,
    pub terms: Vec<TermDocument>,
}

/// One summand `F_2[generators] * module_generator` in the polynomial
/// grammar: variables `x1..xn`, operators `+` and `*`, parentheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDocument {
    pub generators: Vec<String>,
    pub module_generator: String,
}

/// Check row lengths and entry reduction, then pack rows into a matrix.
fn checked_rows(
    field: Fp,
    width: usize,
    rows: &[Vec<u32>],
    ctx: &str,
) -> Result<Matrix, CliError> {
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(CliError::parse(format!(
                "{ctx}[{i}]: row has {} entries, expected {width}",
                row.len()
            )));
        }
        if let Some(e) = row.iter().find(|&&e| e >= field.p()) {
            return Err(CliError::parse(format!(
                "{ctx}[{i}]: entry {e} is not reduced modulo {}",
                field.p()
            )));
        }
    }
    Ok(Matrix::from_rows(field, width, rows))
}

/// A document basis together with the subspace it spans.
fn checked_basis(
    field: Fp,
    ambient_dim: usize,
    rows: &[Vec<u32>],
    ctx: &str,
) -> Result<(Matrix, Subspace), CliError> {
    let mat = checked_rows(field, ambient_dim, rows, ctx)?;
    let span = Subspace::from_spanning(field, ambient_dim, rows);
    if span.dim() != rows.len() {
        return Err(CliError::parse(format!("{ctx}: rows are linearly dependent")));
    }
    Ok((mat, span))
}

/// Rewrite a morphism given in document bases as a matrix in the canonical
/// bases of the two subspaces.
fn canonical_matrix(
    src_doc: &Matrix,
    src: &Subspace,
    dst_doc: &Matrix,
    dst: &Subspace,
    entries: &Matrix,
) -> Matrix {
    let field = src.field();
    let k = src.dim();
    // Columns of the transposes express ambient vectors over document bases.
    let t_src = src_doc.transpose();
    let t_dst = dst_doc.transpose();
    let mut cols = Vec::with_capacity(k);
    for u in src.basis().row_vecs() {
        let a = t_src.solve(&u).expect("canonical basis lies in the document span");
        let img = t_dst.apply(&entries.apply(&a));
        cols.push(dst.coords(&img).expect("images lie in the destination span"));
    }
    let rows: Vec<Vec<u32>> =
        (0..k).map(|r| (0..k).map(|c| cols[c][r]).collect()).collect();
    Matrix::from_rows(field, k, &rows)
}

impl GroupoidDocument {
    /// Resolve names and bases into an ambient family plus morphism triples
    /// in canonical subspace bases. Identities are not included.
    pub fn to_parts(&self) -> Result<(AmbientFamily, Vec<(Object, Object, Matrix)>), CliError> {
        let field = Fp::new(self.p).map_err(|e| CliError::parse(format!("p: {e}")))?;
        if self.ambients.is_empty() {
            return Err(CliError::parse("ambients: at least one ambient space is required"));
        }
        let named: Vec<(String, usize)> =
            self.ambients.iter().map(|(n, d)| (n.clone(), *d)).collect();
        let family = AmbientFamily::new(field, named)
            .map_err(|e| CliError::parse(format!("ambients: {e}")))?;
        let index: BTreeMap<&String, usize> =
            self.ambients.keys().enumerate().map(|(i, n)| (n, i)).collect();

        let mut triples = Vec::with_capacity(self.morphisms.len());
        for (k, m) in self.morphisms.iter().enumerate() {
            let ctx = format!("morphisms[{k}]");
            let &si = index.get(&m.src_ambient).ok_or_else(|| {
                CliError::parse(format!("{ctx}.src_ambient: unknown ambient `{}`", m.src_ambient))
            })?;
            let &di = index.get(&m.dst_ambient).ok_or_else(|| {
                CliError::parse(format!("{ctx}.dst_ambient: unknown ambient `{}`", m.dst_ambient))
            })?;
            let (src_doc, src) =
                checked_basis(field, family.dim(si), &m.src_basis, &format!("{ctx}.src_basis"))?;
            let (dst_doc, dst) =
                checked_basis(field, family.dim(di), &m.dst_basis, &format!("{ctx}.dst_basis"))?;
            if src.dim() != dst.dim() {
                return Err(CliError::parse(format!(
                    "{ctx}: source basis has {} rows but destination basis has {}",
                    src.dim(),
                    dst.dim()
                )));
            }
            if m.matrix.len() != src.dim() {
                return Err(CliError::parse(format!(
                    "{ctx}.matrix: {} rows for a {}-dimensional source",
                    m.matrix.len(),
                    src.dim()
                )));
            }
            let entries =
                checked_rows(field, src.dim(), &m.matrix, &format!("{ctx}.matrix"))?;
            let canon = canonical_matrix(&src_doc, &src, &dst_doc, &dst, &entries);
            triples.push(((si, src), (di, dst), canon));
        }
        Ok((family, triples))
    }

    /// Build the groupoid the document describes: its morphisms plus all
    /// identities, closed first when the `close` flag is set.
    pub fn to_groupoid(&self) -> Result<Groupoid, CliError> {
        let (family, triples) = self.to_parts()?;
        let built = if self.close {
            close(&family, &triples)
        } else {
            let mut all: Vec<(Object, Object, Matrix)> = family
                .objects()
                .map_err(|e| CliError::domain(e.to_string()))?
                .into_iter()
                .map(|o| {
                    let id = Matrix::identity(family.field(), o.1.dim());
                    (o.clone(), o, id)
                })
                .collect();
            all.extend(triples);
            Groupoid::from_parts(family, &all)
        };
        built.map_err(|e| match e {
            Error::SizeGuard(..) => CliError::domain(e.to_string()),
            _ => CliError::parse(format!("document does not define a groupoid: {e}")),
        })
    }

    /// Canonical document for a groupoid: sorted morphisms over canonical
    /// subspace bases, identities dropped, `close` unset.
    pub fn from_groupoid(g: &Groupoid) -> GroupoidDocument {
        let family = g.family();
        let field = family.field();
        let ambients: BTreeMap<String, usize> =
            (0..family.len()).map(|i| (family.name(i).to_string(), family.dim(i))).collect();
        let mut morphisms = Vec::new();
        for (src, dst, m) in g.morphisms() {
            if src == dst && *m == Matrix::identity(field, src.1.dim()) {
                continue;
            }
            morphisms.push(MorphismDocument {
                src_ambient: family.name(src.0).to_string(),
                src_basis: src.1.basis().row_vecs(),
                dst_ambient: family.name(dst.0).to_string(),
                dst_basis: dst.1.basis().row_vecs(),
                matrix: m.row_vecs(),
            });
        }
        GroupoidDocument { p: field.p(), ambients, close: false, morphisms }
    }
}

impl PresentationDocument {
    pub fn to_presentation(&self) -> Result<AlgebraPresentation, CliError> {
        let terms: Vec<(Vec<&str>, &str)> = self
            .terms
            .iter()
            .map(|t| {
                (t.generators.iter().map(String::as_str).collect(), t.module_generator.as_str())
            })
            .collect();
        AlgebraPresentation::from_strings(self.n_vars, &terms)
            .map_err(|e| CliError::parse(format!("presentation: {e}")))
    }
}

/// Parse semicolon-separated rows of comma-separated entries, as accepted by
/// vector-valued command-line flags.
pub fn parse_rows(input: &str, width: usize, p: u32, ctx: &str) -> Result<Vec<Vec<u32>>, CliError> {
    let mut rows = Vec::new();
    for (i, part) in input.split(';').enumerate() {
        let mut row = Vec::new();
        for piece in part.split(',') {
            let e: u32 = piece.trim().parse().map_err(|_| {
                CliError::parse(format!("{ctx}: row {i}: `{}` is not a number", piece.trim()))
            })?;
            if e >= p {
                return Err(CliError::parse(format!(
                    "{ctx}: row {i}: entry {e} is not reduced modulo {p}"
                )));
            }
            row.push(e);
        }
        if row.len() != width {
            return Err(CliError::parse(format!(
                "{ctx}: row {i} has {} entries, expected {width}",
                row.len()
            )));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Independent rows interpreted as the images of a standard basis: the
/// injection they present.
pub fn injection_from_rows(
    field: Fp,
    ambient_dim: usize,
    rows: &[Vec<u32>],
    ctx: &str,
) -> Result<LinMap, CliError> {
    let span = Subspace::from_spanning(field, ambient_dim, rows);
    if span.dim() != rows.len() {
        return Err(CliError::parse(format!("{ctx}: rows are linearly dependent")));
    }
    Ok(LinMap::from_images(field, ambient_dim, rows))
}
