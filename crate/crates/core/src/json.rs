//! JSON documents, schema `compalg/1`.
//!
//! Every document carries `"schema"`, `"kind"` and `"field"`. Scalars are
//! strings in the header's field; sparse tensors are lists `[i, j, …, "x"]`
//! with 1-based indices in storage order, zero entries omitted.

use serde_json::{json, Map, Value};

use crate::algebra::{Pencil, StructureConstants};
use crate::dynkin::MultiplicityMatrix;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::matrix_ops::{MTensors, RPresentation};
use crate::mstructure::MPresentation;
use crate::pmstructure::{CRelations, PMPresentation, PMRepresentation};
use crate::poisson::LinearPoissonBracket;
use crate::residual::Report;
use crate::scalar::{spec_of, Field, FieldSpec};

pub const SCHEMA: &str = "compalg/1";

fn fmt_err(at: &str, msg: impl std::fmt::Display) -> Error {
    Error::Format(format!("{at}: {msg}"))
}

pub fn field_to_json(spec: &FieldSpec) -> Value {
    match spec {
        FieldSpec::Cyclotomic { order } => json!({"kind": "cyclotomic", "order": order}),
        FieldSpec::Float { tol } => json!({"kind": "float", "tol": tol}),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    match v.get("kind").and_then(Value::as_str) {
        Some("cyclotomic") => {
            let order = v.get("order").and_then(Value::as_u64).unwrap_or(1);
            if order == 0 || order > u64::from(u32::MAX) {
                return Err(fmt_err("field.order", "must be a positive integer"));
            }
            Ok(FieldSpec::Cyclotomic { order: order as u32 })
        }
        Some("float") => {
            let tol = v.get("tol").and_then(Value::as_f64).ok_or_else(|| fmt_err("field.tol", "missing"))?;
            Ok(FieldSpec::Float { tol })
        }
        _ => Err(fmt_err("field.kind", "expected \"cyclotomic\" or \"float\"")),
    }
}

fn header(kind: &str, spec: &FieldSpec) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("kind".into(), json!(kind));
    m.insert("field".into(), field_to_json(spec));
    m
}

/// Kind of a document, after checking its schema tag when present.
pub fn document_kind(doc: &Value) -> Result<&str> {
    if let Some(s) = doc.get("schema") {
        if s.as_str() != Some(SCHEMA) {
            return Err(fmt_err("schema", format!("expected {SCHEMA:?}, found {s}")));
        }
    }
    doc.get("kind").and_then(Value::as_str).ok_or_else(|| fmt_err("kind", "missing"))
}

/// Field of a document; rational when absent.
pub fn document_field(doc: &Value) -> Result<FieldSpec> {
    doc.get("field").map_or(Ok(FieldSpec::rational()), field_from_json)
}

fn expect_kind(doc: &Value, kind: &str) -> Result<FieldSpec> {
    if let Some(k) = doc.get("kind") {
        if document_kind(doc)? != kind {
            return Err(fmt_err("kind", format!("expected {kind:?}, found {k}")));
        }
    }
    document_field(doc)
}

fn start_spec<F: Field>() -> FieldSpec {
    F::zero().join_spec(FieldSpec::rational())
}

fn scalar<F: Field>(x: &F, spec: &FieldSpec) -> Value {
    Value::String(x.format_in(spec))
}

fn parse_scalar<F: Field>(v: &Value, spec: &FieldSpec, at: &str) -> Result<F> {
    match v {
        Value::String(s) => F::parse_in(s, spec).map_err(|e| fmt_err(at, e)),
        Value::Number(n) => F::parse_in(&n.to_string(), spec).map_err(|e| fmt_err(at, e)),
        _ => Err(fmt_err(at, "scalar must be a string")),
    }
}

fn get<'a>(doc: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    doc.get(key).ok_or_else(|| fmt_err(at, format!("missing {key:?}")))
}

fn get_usize(doc: &Value, key: &str, at: &str) -> Result<usize> {
    get(doc, key, at)?.as_u64().map(|x| x as usize).ok_or_else(|| fmt_err(&format!("{at}.{key}"), "expected a count"))
}

fn get_array<'a>(doc: &'a Value, key: &str, at: &str) -> Result<&'a Vec<Value>> {
    get(doc, key, at)?.as_array().ok_or_else(|| fmt_err(&format!("{at}.{key}"), "expected an array"))
}

/// Sparse entries `[i, …, "x"]` of a tensor with the given shape.
fn sparse<F: Field>(shape: &[usize], value: impl Fn(&[usize]) -> F, spec: &FieldSpec) -> Value {
    let total: usize = shape.iter().product();
    let mut out = Vec::new();
    let mut idx = vec![0; shape.len()];
    for flat in 0..total {
        let mut rem = flat;
        for (d, &n) in shape.iter().enumerate().rev() {
            idx[d] = rem % n;
            rem /= n;
        }
        let x = value(&idx);
        if !x.is_zero() {
            let mut entry: Vec<Value> = idx.iter().map(|&i| json!(i + 1)).collect();
            entry.push(scalar(&x, spec));
            out.push(Value::Array(entry));
        }
    }
    Value::Array(out)
}

/// Reads sparse entries, calling `set` with 0-based indices.
fn parse_sparse<F: Field>(
    v: &Value,
    shape: &[usize],
    spec: &FieldSpec,
    at: &str,
    mut set: impl FnMut(&[usize], F),
) -> Result<()> {
    let arr = v.as_array().ok_or_else(|| fmt_err(at, "expected an array of entries"))?;
    for (e, entry) in arr.iter().enumerate() {
        let loc = format!("{at}[{e}]");
        let items = entry.as_array().ok_or_else(|| fmt_err(&loc, "expected [indices…, scalar]"))?;
        if items.len() != shape.len() + 1 {
            return Err(fmt_err(&loc, format!("expected {} indices and a scalar", shape.len())));
        }
        let mut idx = Vec::with_capacity(shape.len());
        for (d, &n) in shape.iter().enumerate() {
            let i = items[d].as_u64().ok_or_else(|| fmt_err(&loc, "indices must be positive integers"))? as usize;
            if i == 0 || i > n {
                return Err(fmt_err(&loc, format!("index {i} outside 1..={n}")));
            }
            idx.push(i - 1);
        }
        set(&idx, parse_scalar(&items[shape.len()], spec, &loc)?);
    }
    Ok(())
}

pub fn matrix_to_json<F: Field>(m: &Matrix<F>, spec: &FieldSpec) -> Value {
    Value::Array(m.to_rows().iter().map(|row| Value::Array(row.iter().map(|x| scalar(x, spec)).collect())).collect())
}

pub fn matrix_from_json<F: Field>(v: &Value, spec: &FieldSpec, at: &str) -> Result<Matrix<F>> {
    let rows = v.as_array().ok_or_else(|| fmt_err(at, "expected a matrix as an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let loc = format!("{at}[{i}]");
        let row = row.as_array().ok_or_else(|| fmt_err(&loc, "expected a row"))?;
        out.push(
            row.iter()
                .enumerate()
                .map(|(j, x)| parse_scalar(x, spec, &format!("{loc}[{j}]")))
                .collect::<Result<Vec<F>>>()?,
        );
    }
    Matrix::from_rows(out).map_err(|e| fmt_err(at, e))
}

fn sc_body<F: Field>(sc: &StructureConstants<F>, spec: &FieldSpec) -> Map<String, Value> {
    let d = sc.dim();
    let mut m = Map::new();
    m.insert("dim".into(), json!(d));
    if let Some(l) = &sc.label {
        m.insert("label".into(), json!(l));
    }
    m.insert("c".into(), sparse(&[d, d, d], |x| sc.get(x[0], x[1], x[2]).clone(), spec));
    m
}

fn sc_values<F: Field>(sc: &StructureConstants<F>) -> Vec<F> {
    let d = sc.dim();
    (0..d).flat_map(|i| (0..d).flat_map(move |j| sc.product(i, j).to_vec())).collect()
}

pub fn sc_to_json<F: Field>(sc: &StructureConstants<F>) -> Value {
    let spec = spec_of(&sc_values(sc), start_spec::<F>());
    let mut m = header("structure-constants", &spec);
    m.extend(sc_body(sc, &spec));
    Value::Object(m)
}

fn sc_from_body<F: Field>(doc: &Value, spec: &FieldSpec, at: &str) -> Result<StructureConstants<F>> {
    let d = get_usize(doc, "dim", at)?;
    let mut sc = StructureConstants::zero(d);
    parse_sparse(get(doc, "c", at)?, &[d, d, d], spec, &format!("{at}.c"), |x, v| sc.set(x[0], x[1], x[2], v))?;
    if let Some(l) = doc.get("label").and_then(Value::as_str) {
        sc = sc.with_label(l);
    }
    Ok(sc)
}

pub fn sc_from_json<F: Field>(doc: &Value) -> Result<StructureConstants<F>> {
    let spec = expect_kind(doc, "structure-constants")?;
    sc_from_body(doc, &spec, "$")
}

pub fn pencil_to_json<F: Field>(p: &Pencil<F>) -> Value {
    let mut vals = sc_values(&p.star);
    vals.extend(sc_values(&p.circle));
    let spec = spec_of(&vals, start_spec::<F>());
    let mut m = header("pencil", &spec);
    m.insert("star".into(), Value::Object(sc_body(&p.star, &spec)));
    m.insert("circle".into(), Value::Object(sc_body(&p.circle, &spec)));
    Value::Object(m)
}

pub fn pencil_from_json<F: Field>(doc: &Value) -> Result<Pencil<F>> {
    let spec = expect_kind(doc, "pencil")?;
    let star = sc_from_body(get(doc, "star", "$")?, &spec, "$.star")?;
    let circle = sc_from_body(get(doc, "circle", "$")?, &spec, "$.circle")?;
    Pencil::new(star, circle)
}

pub fn r_presentation_to_json<F: Field>(r: &RPresentation<F>) -> Value {
    let vals: Vec<F> = r.a.iter().chain(&r.b).chain(std::iter::once(&r.c)).flat_map(Matrix::vec).collect();
    let spec = spec_of(&vals, start_spec::<F>());
    let mut m = header("r-presentation", &spec);
    m.insert("n".into(), json!(r.n));
    m.insert("a".into(), Value::Array(r.a.iter().map(|x| matrix_to_json(x, &spec)).collect()));
    m.insert("b".into(), Value::Array(r.b.iter().map(|x| matrix_to_json(x, &spec)).collect()));
    m.insert("c".into(), matrix_to_json(&r.c, &spec));
    Value::Object(m)
}

pub fn r_presentation_from_json<F: Field>(doc: &Value) -> Result<RPresentation<F>> {
    let spec = expect_kind(doc, "r-presentation")?;
    let n = get_usize(doc, "n", "$")?;
    let mats = |key: &str| -> Result<Vec<Matrix<F>>> {
        get_array(doc, key, "$")?
            .iter()
            .enumerate()
            .map(|(i, x)| matrix_from_json(x, &spec, &format!("$.{key}[{i}]")))
            .collect()
    };
    let (a, b) = (mats("a")?, mats("b")?);
    let c = matrix_from_json(get(doc, "c", "$")?, &spec, "$.c")?;
    if a.len() != b.len() {
        return Err(fmt_err("$", "a and b must have the same length"));
    }
    for (i, x) in a.iter().chain(&b).chain(std::iter::once(&c)).enumerate() {
        if x.rows() != n || x.cols() != n {
            return Err(fmt_err("$", format!("matrix {i} is not {n}x{n}")));
        }
    }
    Ok(RPresentation { n, a, b, c })
}

fn tensor_values<F: Field>(t: &MTensors<F>, c: &CRelations<F>) -> Vec<F> {
    let mut v: Vec<F> = Vec::new();
    for x in [&t.phi, &t.psi] {
        v.extend(x.iter().flatten().flatten().cloned());
    }
    for x in [&t.mu, &t.lambda, &t.t, &c.u] {
        v.extend(x.iter().flatten().cloned());
    }
    v.extend(c.p.iter().chain(&c.q).cloned());
    v
}

fn tensors_body<F: Field>(t: &MTensors<F>, c: &CRelations<F>, spec: &FieldSpec) -> Map<String, Value> {
    let p = t.p;
    let mut m = Map::new();
    m.insert("phi".into(), sparse(&[p, p, p], |x| t.phi[x[0]][x[1]][x[2]].clone(), spec));
    m.insert("mu".into(), sparse(&[p, p], |x| t.mu[x[0]][x[1]].clone(), spec));
    m.insert("psi".into(), sparse(&[p, p, p], |x| t.psi[x[0]][x[1]][x[2]].clone(), spec));
    m.insert("lambda".into(), sparse(&[p, p], |x| t.lambda[x[0]][x[1]].clone(), spec));
    m.insert("t".into(), sparse(&[p, p], |x| t.t[x[0]][x[1]].clone(), spec));
    m.insert("u".into(), sparse(&[p, p], |x| c.u[x[0]][x[1]].clone(), spec));
    m.insert("cp".into(), sparse(&[p], |x| c.p[x[0]].clone(), spec));
    m.insert("cq".into(), sparse(&[p], |x| c.q[x[0]].clone(), spec));
    m
}

/// Tensors and, when `u`, `cp` and `cq` are all absent, `None` for the `C` relations.
fn tensors_from_body<F: Field>(
    doc: &Value,
    p: usize,
    spec: &FieldSpec,
    at: &str,
) -> Result<(MTensors<F>, Option<CRelations<F>>)> {
    let mut t = MTensors::zero(p);
    let loc = |k: &str| format!("{at}.{k}");
    let opt = |k: &str| doc.get(k).cloned().unwrap_or(Value::Array(Vec::new()));
    parse_sparse(&opt("phi"), &[p, p, p], spec, &loc("phi"), |x, v| t.phi[x[0]][x[1]][x[2]] = v)?;
    parse_sparse(&opt("mu"), &[p, p], spec, &loc("mu"), |x, v| t.mu[x[0]][x[1]] = v)?;
    parse_sparse(&opt("psi"), &[p, p, p], spec, &loc("psi"), |x, v| t.psi[x[0]][x[1]][x[2]] = v)?;
    parse_sparse(&opt("lambda"), &[p, p], spec, &loc("lambda"), |x, v| t.lambda[x[0]][x[1]] = v)?;
    parse_sparse(&opt("t"), &[p, p], spec, &loc("t"), |x, v| t.t[x[0]][x[1]] = v)?;
    if ["u", "cp", "cq"].iter().all(|k| doc.get(*k).is_none()) {
        return Ok((t, None));
    }
    let mut c = CRelations { u: vec![vec![F::zero(); p]; p], p: vec![F::zero(); p], q: vec![F::zero(); p] };
    parse_sparse(&opt("u"), &[p, p], spec, &loc("u"), |x, v| c.u[x[0]][x[1]] = v)?;
    parse_sparse(&opt("cp"), &[p], spec, &loc("cp"), |x, v| c.p[x[0]] = v)?;
    parse_sparse(&opt("cq"), &[p], spec, &loc("cq"), |x, v| c.q[x[0]] = v)?;
    Ok((t, Some(c)))
}

pub fn m_presentation_to_json<F: Field>(mp: &MPresentation<F>) -> Value {
    let spec = spec_of(&tensor_values(mp.tensors(), mp.c_relations()), start_spec::<F>());
    let mut m = header("m-presentation", &spec);
    m.insert("p".into(), json!(mp.p()));
    m.extend(tensors_body(mp.tensors(), mp.c_relations(), &spec));
    Value::Object(m)
}

pub fn m_presentation_from_json<F: Field>(doc: &Value) -> Result<MPresentation<F>> {
    let spec = expect_kind(doc, "m-presentation")?;
    let p = get_usize(doc, "p", "$")?;
    let (t, c) = tensors_from_body(doc, p, &spec, "$")?;
    MPresentation::with_c_relations(t, c)
}

pub fn pm_presentation_to_json<F: Field>(pm: &PMPresentation<F>) -> Value {
    let spec = spec_of(&tensor_values(pm.tensors(), pm.c_relations()), start_spec::<F>());
    let mut m = header("pm-presentation", &spec);
    m.insert("m".into(), json!(pm.m()));
    m.insert("p".into(), json!(pm.blocks().iter().map(|&(s, t)| [s + 1, t + 1]).collect::<Vec<_>>()));
    m.insert("tensors".into(), Value::Object(tensors_body(pm.tensors(), pm.c_relations(), &spec)));
    Value::Object(m)
}

fn parse_blocks(v: &Value, m: usize, at: &str) -> Result<Vec<(usize, usize)>> {
    let arr = v.as_array().ok_or_else(|| fmt_err(at, "expected a list of [s, t] blocks"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| {
            let loc = format!("{at}[{i}]");
            let pair: Vec<u64> = x.as_array().map(|a| a.iter().filter_map(Value::as_u64).collect()).unwrap_or_default();
            match pair[..] {
                [s, t] if (1..=m as u64).contains(&s) && (1..=m as u64).contains(&t) => {
                    Ok((s as usize - 1, t as usize - 1))
                }
                _ => Err(fmt_err(&loc, format!("expected [s, t] with 1 ≤ s, t ≤ {m}"))),
            }
        })
        .collect()
}

pub fn pm_presentation_from_json<F: Field>(doc: &Value) -> Result<PMPresentation<F>> {
    let spec = expect_kind(doc, "pm-presentation")?;
    let m = get_usize(doc, "m", "$")?;
    let blocks = parse_blocks(get(doc, "p", "$")?, m, "$.p")?;
    let empty = Value::Object(Map::new());
    let (t, c) = tensors_from_body(doc.get("tensors").unwrap_or(&empty), blocks.len(), &spec, "$.tensors")?;
    if m == 0 && blocks.is_empty() {
        return Ok(PMPresentation::empty());
    }
    PMPresentation::new(m, blocks, t, c)
}

pub fn pm_representation_to_json<F: Field>(rep: &PMRepresentation<F>) -> Value {
    let vals: Vec<F> = rep.a.iter().chain(&rep.b).chain(&rep.c).flat_map(Matrix::vec).collect();
    let spec = spec_of(&vals, start_spec::<F>());
    let mut m = header("pm-representation", &spec);
    m.insert("dims".into(), json!(rep.dims));
    m.insert("p".into(), json!(rep.blocks.iter().map(|&(s, t)| [s + 1, t + 1]).collect::<Vec<_>>()));
    let mut mats = Map::new();
    for (i, &(s, t)) in rep.blocks.iter().enumerate() {
        mats.insert(format!("a/{}/{}/{}", i + 1, s + 1, t + 1), matrix_to_json(&rep.a[i], &spec));
        mats.insert(format!("b/{}/{}/{}", i + 1, t + 1, s + 1), matrix_to_json(&rep.b[i], &spec));
    }
    for (x, c) in rep.c.iter().enumerate() {
        mats.insert(format!("c/{}", x + 1), matrix_to_json(c, &spec));
    }
    m.insert("matrices".into(), Value::Object(mats));
    Value::Object(m)
}

pub fn pm_representation_from_json<F: Field>(doc: &Value) -> Result<PMRepresentation<F>> {
    let spec = expect_kind(doc, "pm-representation")?;
    let dims: Vec<usize> = get_array(doc, "dims", "$")?
        .iter()
        .map(|x| x.as_u64().map(|d| d as usize).ok_or_else(|| fmt_err("$.dims", "expected sizes")))
        .collect::<Result<_>>()?;
    let blocks = parse_blocks(get(doc, "p", "$")?, dims.len(), "$.p")?;
    let mats = get(doc, "matrices", "$")?;
    let mat = |key: String| -> Result<Matrix<F>> {
        let at = format!("$.matrices[{key:?}]");
        matrix_from_json(mats.get(&key).ok_or_else(|| fmt_err(&at, "missing"))?, &spec, &at)
    };
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, &(s, t)) in blocks.iter().enumerate() {
        a.push(mat(format!("a/{}/{}/{}", i + 1, s + 1, t + 1))?);
        b.push(mat(format!("b/{}/{}/{}", i + 1, t + 1, s + 1))?);
    }
    let c = (0..dims.len()).map(|x| mat(format!("c/{}", x + 1))).collect::<Result<_>>()?;
    PMRepresentation::new(dims, blocks, a, b, c)
}

/// Entries `[c, a, b, "x"]` with `a < b`; the rest follows from antisymmetry.
pub fn bracket_to_json<F: Field>(br: &LinearPoissonBracket<F>) -> Value {
    let d = br.dim();
    let vals: Vec<F> = (0..d).flat_map(|a| (0..d).flat_map(move |b| br.bracket(a, b).to_vec())).collect();
    let spec = spec_of(&vals, start_spec::<F>());
    let mut m = header("poisson-bracket", &spec);
    m.insert("dim".into(), json!(d));
    let mut out = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            for (c, x) in br.bracket(a, b).iter().enumerate() {
                if !x.is_zero() {
                    out.push(json!([c + 1, a + 1, b + 1, scalar(x, &spec)]));
                }
            }
        }
    }
    out.sort_by_key(|e| (e[0].as_u64(), e[1].as_u64(), e[2].as_u64()));
    m.insert("c".into(), Value::Array(out));
    Value::Object(m)
}

pub fn multiplicity_from_json(v: &Value) -> Result<MultiplicityMatrix> {
    let rows = v
        .get("matrix")
        .unwrap_or(v)
        .as_array()
        .ok_or_else(|| fmt_err("$", "expected a matrix [[…], …] of nonnegative integers"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| fmt_err(&format!("$[{i}]"), "expected a row"))?;
        out.push(
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    x.as_u64()
                        .and_then(|n| u32::try_from(n).ok())
                        .ok_or_else(|| fmt_err(&format!("$[{i}][{j}]"), "expected a nonnegative integer"))
                })
                .collect::<Result<Vec<u32>>>()?,
        );
    }
    MultiplicityMatrix::new(out).map_err(|e| fmt_err("$", e))
}

pub fn report_to_json(report: &Report, extra: Option<Map<String, Value>>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("kind".into(), json!("report"));
    if let Value::Object(body) = report.to_json() {
        m.extend(body);
    }
    if let Some(extra) = extra {
        m.extend(extra);
    }
    Value::Object(m)
}
