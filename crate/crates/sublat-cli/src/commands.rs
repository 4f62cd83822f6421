//! One function per subcommand; each returns the report tree that `main`
//! prints in the requested format.

use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sublat_core::centre::{
    centre, is_central_criterion, is_central_definition, witness_candidates, CentralElement,
};
use sublat_core::enumeration::{conjugacy_reduce, enumerate_constrained};
use sublat_core::fp::{LinMap, Matrix, Subspace};
use sublat_core::functor::{kan_extend, quotient_functor, Label};
use sublat_core::groupoid::{AmbientFamily, Groupoid};
use sublat_core::invariants::{invariant_basis, presentation_basis};
use sublat_core::primitive::{lift_witness, primitive_groupoid, PrimitiveSetup};
use sublat_core::Error;

use crate::document::{injection_from_rows, parse_rows, GroupoidDocument, PresentationDocument};
use crate::error::CliError;
use crate::report::{basis_value, rows_value};

fn read_to_string(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn read_groupoid_document(path: &Path) -> Result<GroupoidDocument, CliError> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn read_presentation_document(path: &Path) -> Result<PresentationDocument, CliError> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

/// Parse a groupoid document and require the result to satisfy the groupoid
/// axioms; every computation except `validate` starts here.
fn closed_groupoid(path: &Path) -> Result<Groupoid, CliError> {
    let doc = read_groupoid_document(path)?;
    let g = doc.to_groupoid()?;
    let report = g.validate();
    if !report.is_ok() {
        return Err(CliError::domain(format!(
            "{}: groupoid fails validation ({}); run `sublat close` first",
            path.display(),
            report.violations.join("; ")
        )));
    }
    Ok(g)
}

fn ambient_index(family: &AmbientFamily, name: Option<&str>, flag: &str) -> Result<usize, CliError> {
    match name {
        Some(n) => (0..family.len()).find(|&i| family.name(i) == n).ok_or_else(|| {
            CliError::parse(format!("{flag}: unknown ambient `{n}`"))
        }),
        None if family.len() == 1 => Ok(0),
        None => Err(CliError::parse(format!(
            "{flag} is required when the document has several ambient spaces"
        ))),
    }
}

fn ambients_value(family: &AmbientFamily) -> Value {
    Value::Array(
        (0..family.len())
            .map(|i| json!({"name": family.name(i), "dim": family.dim(i)}))
            .collect(),
    )
}

fn label_value(family: &AmbientFamily, label: &Label) -> Value {
    match label {
        Label::Class { ambient, matrix } => {
            json!({"kind": "class", "ambient": family.name(*ambient), "injection": rows_value(matrix)})
        }
        Label::Tagged { kernel, inner } => {
            json!({"kind": "tagged", "kernel_basis": basis_value(kernel), "inner": label_value(family, inner)})
        }
        Label::Pair { span, inner } => {
            json!({"kind": "pair", "span": rows_value(span), "inner": label_value(family, inner)})
        }
    }
}

fn write_pretty(path: &Path, v: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).expect("reports serialize");
    fs::write(path, text + "\n")
        .map_err(|e| CliError::domain(format!("{}: {e}", path.display())))
}

pub fn validate(file: &Path) -> Result<Value, CliError> {
    let doc = read_groupoid_document(file)?;
    let g = doc.to_groupoid()?;
    let report = g.validate();
    Ok(json!({
        "file": file.display().to_string(),
        "ok": report.is_ok(),
        "ambients": ambients_value(g.family()),
        "objects": g.family().objects()?.len(),
        "morphisms": g.morphism_count(),
        "violations": report.violations,
    }))
}

pub fn close(file: &Path, output: Option<&Path>) -> Result<Value, CliError> {
    let doc = read_groupoid_document(file)?;
    let (family, triples) = doc.to_parts()?;
    let g = sublat_core::groupoid::close(&family, &triples)
        .map_err(|e| CliError::domain(e.to_string()))?;
    let out_doc = GroupoidDocument::from_groupoid(&g);
    let doc_value = serde_json::to_value(&out_doc).expect("documents serialize");
    match output {
        Some(path) => {
            write_pretty(path, &doc_value)?;
            Ok(json!({
                "written": path.display().to_string(),
                "morphisms": g.morphism_count(),
                "listed": out_doc.morphisms.len(),
            }))
        }
        None => Ok(doc_value),
    }
}

pub fn functor(file: &Path, max_dim: Option<usize>) -> Result<Value, CliError> {
    let g = closed_groupoid(file)?;
    let f = quotient_functor(&g)?;
    let family = g.family().clone();
    let top = max_dim.unwrap_or(f.max_dim());

    let mut values = Vec::new();
    let classes = |labels: &[Label]| -> Value {
        Value::Array(labels.iter().map(|l| label_value(&family, l)).collect())
    };
    for k in 0..=top.min(f.max_dim()) {
        values.push(json!({"dim": k, "count": f.value(k).len(), "classes": classes(f.value(k))}));
    }
    if top > f.max_dim() {
        let ext = kan_extend(&f, top)?;
        for k in f.max_dim() + 1..=top {
            values.push(json!({
                "dim": k,
                "count": ext.value(k).len(),
                "classes": classes(ext.value(k)),
            }));
        }
    }
    Ok(json!({
        "file": file.display().to_string(),
        "p": family.field().p(),
        "ambients": ambients_value(&family),
        "max_dim": top,
        "values": values,
    }))
}

fn witnesses_value(family: &AmbientFamily, ws: &[Option<LinMap>]) -> Value {
    Value::Array(
        ws.iter()
            .enumerate()
            .map(|(i, w)| match w {
                Some(delta) => json!({
                    "ambient": family.name(i),
                    "injection": rows_value(delta.matrix()),
                    "image_basis": basis_value(&delta.image()),
                }),
                None => Value::Null,
            })
            .collect(),
    )
}

pub fn centre_of(file: &Path) -> Result<Value, CliError> {
    let g = closed_groupoid(file)?;
    let f = quotient_functor(&g)?;
    let ce = centre(&f)?;
    let by_def = is_central_definition(&f, ce.v_dim(), ce.x())?;
    let by_crit = is_central_criterion(&f, &ce)?;
    Ok(json!({
        "file": file.display().to_string(),
        "v_dim": ce.v_dim(),
        "class": ce.x(),
        "witnesses": witnesses_value(g.family(), ce.witnesses()),
        "central_by_definition": by_def,
        "central_by_criterion": by_crit,
        "agree": by_def == by_crit,
    }))
}

pub fn is_central(
    file: &Path,
    ambient: Option<&str>,
    v_basis: &str,
    seed: u64,
) -> Result<Value, CliError> {
    let g = closed_groupoid(file)?;
    let family = g.family().clone();
    let ai = ambient_index(&family, ambient, "--ambient")?;
    let rows = parse_rows(v_basis, family.dim(ai), family.field().p(), "--v-basis")?;
    let inj = injection_from_rows(family.field(), family.dim(ai), &rows, "--v-basis")?;
    let v_dim = inj.domain_dim();

    let f = quotient_functor(&g)?;
    let x = f.gen().expect("quotient tables carry labels").q_class(ai, inj.matrix())?;
    let by_def = is_central_definition(&f, v_dim, x)?;

    // The witness criterion is evaluated once on the default witness family,
    // then on further families: all of them when few, otherwise a seeded
    // sample. Every evaluation must agree with the definition.
    let (by_crit, families, disagreements) =
        match CentralElement::with_default_witnesses(&f, v_dim, x) {
            Ok(ce) => {
                let first = is_central_criterion(&f, &ce)?;
                let cands = witness_candidates(&f, v_dim, x)?;
                let lens: Vec<usize> = cands.iter().map(Vec::len).collect();
                let total: u128 = lens.iter().map(|&l| l as u128).product();
                let cap: u128 = 8;
                let picks: Vec<Vec<usize>> = if total <= cap {
                    index_product(&lens)
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (0..cap)
                        .map(|_| lens.iter().map(|&l| rng.random_range(0..l)).collect())
                        .collect()
                };
                let mut checked = 1usize;
                let mut off = usize::from(first != by_def);
                for pick in picks {
                    let witnesses: Vec<Option<LinMap>> = pick
                        .iter()
                        .zip(&cands)
                        .map(|(&j, list)| Some(list[j].clone()))
                        .collect();
                    let ce = CentralElement::new(&f, v_dim, x, witnesses)?;
                    checked += 1;
                    if is_central_criterion(&f, &ce)? != by_def {
                        off += 1;
                    }
                }
                (Value::Bool(first), checked, off)
            }
            Err(Error::NoWitness(_)) => {
                // No presenting injection into some ambient: the criterion
                // route is inapplicable, the definition still decides.
                (Value::Null, 0, 0)
            }
            Err(e) => return Err(e.into()),
        };

    Ok(json!({
        "file": file.display().to_string(),
        "ambient": family.name(ai),
        "image_basis": rows,
        "v_dim": v_dim,
        "class": x,
        "central": by_def,
        "central_by_definition": by_def,
        "central_by_criterion": by_crit,
        "witness_families_checked": families,
        "routes_agree": disagreements == 0,
    }))
}

/// All index tuples below the given bounds, in odometer order.
fn index_product(lens: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &l in lens {
        let mut next = Vec::with_capacity(out.len() * l);
        for prefix in &out {
            for j in 0..l {
                let mut row = prefix.clone();
                row.push(j);
                next.push(row);
            }
        }
        out = next;
    }
    out
}

pub fn primitive(file: &Path, delta: &str, output: Option<&Path>) -> Result<Value, CliError> {
    let g = closed_groupoid(file)?;
    let family = g.family().clone();
    if family.len() != 1 {
        return Err(CliError::domain(Error::SingleAmbientRequired.to_string()));
    }
    let n = family.dim(0);
    let rows = parse_rows(delta, n, family.field().p(), "--delta")?;
    let inj = injection_from_rows(family.field(), n, &rows, "--delta")?;

    let setup = PrimitiveSetup::new(g, inj)?;
    let quotient = primitive_groupoid(&setup)?;
    let out_doc = GroupoidDocument::from_groupoid(&quotient);
    let doc_value = serde_json::to_value(&out_doc).expect("documents serialize");

    // Each morphism of the quotient is certified by one witness upstairs: a
    // pair of complements to the marker image and the morphism between them
    // that projects onto it.
    let field = family.field();
    let mut log = Vec::new();
    for (src, dst, alpha) in quotient.morphisms() {
        if src == dst && *alpha == Matrix::identity(field, src.1.dim()) {
            continue;
        }
        let lifted = lift_witness(&setup, &src.1, &dst.1, alpha)?.ok_or_else(|| {
            CliError::domain("quotient morphism admits no witness; input is inconsistent")
        })?;
        let (n_src, n_dst, beta) = lifted;
        log.push(json!({
            "src_basis": basis_value(&src.1),
            "dst_basis": basis_value(&dst.1),
            "matrix": rows_value(alpha),
            "witness": {
                "src_lift_basis": basis_value(&n_src),
                "dst_lift_basis": basis_value(&n_dst),
                "matrix": rows_value(&beta),
            },
        }));
    }

    if let Some(path) = output {
        write_pretty(path, &doc_value)?;
    }
    Ok(json!({
        "file": file.display().to_string(),
        "marker_image_basis": basis_value(setup.image()),
        "quotient_dim": setup.q_dim(),
        "groupoid": doc_value,
        "witness_log": log,
        "written": output.map(|p| p.display().to_string()),
    }))
}

pub fn invariants(
    file: &Path,
    degree: usize,
    presentation: Option<&Path>,
) -> Result<Value, CliError> {
    let g = closed_groupoid(file)?;
    let mut degrees = Vec::new();
    let mut bases = Vec::new();
    for d in 0..=degree {
        let basis = invariant_basis(&g, d)?;
        degrees.push(json!({
            "degree": d,
            "dim": basis.dim(),
            "basis": basis.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        }));
        bases.push(basis);
    }

    let presentation_report = match presentation {
        Some(path) => {
            let pdoc = read_presentation_document(path)?;
            let pres = pdoc.to_presentation()?;
            let n = g.family().dim(0);
            if pres.n_vars() != n {
                return Err(CliError::domain(format!(
                    "presentation has {} variables but the ambient has dimension {n}",
                    pres.n_vars()
                )));
            }
            let mut rows = Vec::new();
            let mut verified = true;
            for (d, basis) in bases.iter().enumerate() {
                let pb = presentation_basis(&pres, d)?;
                let equal = pb == *basis;
                verified &= equal;
                rows.push(json!({"degree": d, "dim": pb.dim(), "spans_equal": equal}));
            }
            json!({
                "file": path.display().to_string(),
                "degrees": rows,
                "verified": verified,
            })
        }
        None => Value::Null,
    };

    Ok(json!({
        "file": file.display().to_string(),
        "ambient_dim": g.family().dim(0),
        "max_degree": degree,
        "degrees": degrees,
        "presentation": presentation_report,
    }))
}

pub fn enumerate(
    ambient: usize,
    delta: &str,
    target_path: &Path,
    out_dir: &Path,
) -> Result<Value, CliError> {
    let target_doc = read_groupoid_document(target_path)?;
    let target = target_doc.to_groupoid()?;
    let report = target.validate();
    if !report.is_ok() {
        return Err(CliError::domain(format!(
            "{}: target fails validation ({})",
            target_path.display(),
            report.violations.join("; ")
        )));
    }
    let field = target.family().field();
    let rows = parse_rows(delta, ambient, field.p(), "--delta")?;
    let inj = injection_from_rows(field, ambient, &rows, "--delta")?;

    let results = enumerate_constrained(&inj, &target)?;
    let (reps, class_of) = conjugacy_reduce(&results)?;

    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::domain(format!("{}: {e}", out_dir.display())))?;

    let top = (0usize, Subspace::full(field, ambient));
    let mut entries = Vec::new();
    for (i, g) in results.iter().enumerate() {
        let name = format!("groupoid-{i:03}.json");
        let doc = GroupoidDocument::from_groupoid(g);
        write_pretty(&out_dir.join(&name), &serde_json::to_value(&doc).expect("documents serialize"))?;

        let f = quotient_functor(g)?;
        let ce = centre(&f)?;
        let setup = PrimitiveSetup::new(g.clone(), inj.clone())?;
        let matches = primitive_groupoid(&setup)? == target;
        let top_order = g.hom_set(&top, &top).map_or(0, |s| s.len());
        entries.push(json!({
            "file": name,
            "morphisms": g.morphism_count(),
            "top_order": top_order,
            "centre": {"v_dim": ce.v_dim(), "class": ce.x()},
            "primitive_matches_target": matches,
            "conjugacy_class": class_of[i],
        }));
    }

    let manifest = json!({
        "p": field.p(),
        "ambient_dim": ambient,
        "delta": rows,
        "target": target_path.display().to_string(),
        "count": results.len(),
        "conjugacy_classes": reps.len(),
        "entries": entries,
    });
    write_pretty(&out_dir.join("manifest.json"), &manifest)?;
    Ok(manifest)
}
