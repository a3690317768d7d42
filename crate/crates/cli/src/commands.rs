use compalg::algebra::{Pencil, StructureConstants};
use compalg::dynkin::{catalog, classify, is_decomposable, solve_adm, Family};
use compalg::json::*;
use compalg::matrix_ops::{extract_m_tensors, verify_theorem21};
use compalg::mstructure::{
    check_consistency, check_k_central, classify_comma, comma_build, comma_conditions, comma_identities,
    cyclic_representation, example_cyclic, validate_representation, CommAClass, MPresentation,
};
use compalg::pencil::{
    check_compatibility, extend_polynomial, extension_decompose_report, extension_family_report, poly_from_roots,
    verified_deform,
};
use compalg::pmstructure::{
    pm_check_consistency, pm_check_k_central, pm_u_multiply, pm_validate_representation, random_element, A2k1,
    PMPresentation, RelationLabels,
};
use compalg::poisson::poisson_report;
use compalg::random::Rng;
use compalg::{Field, FieldSpec, Matrix, Report, Residual};
use serde_json::{json, Map, Value};

use crate::{read_json, Cli, CliError, Command, Outcome};

type Res<T> = Result<T, CliError>;

fn summary(report: &Report) -> String {
    let mut s = report.to_string();
    match report.first_failure() {
        None => s.push_str("passed\n"),
        Some(r) => s.push_str(&format!("FAILED: {}\n", r.label)),
    }
    s
}

fn checked(doc: Value, report: Report) -> Outcome {
    let mut doc = doc;
    doc["report"] = report.to_json();
    Outcome { passed: report.passed(), summary: summary(&report), doc }
}

fn report_only(report: Report, extra: Option<Map<String, Value>>) -> Outcome {
    Outcome { doc: report_to_json(&report, extra), passed: report.passed(), summary: summary(&report) }
}

fn merge(into: &mut Report, from: Report) {
    into.items.extend(from.items);
}

fn scalar<F: Field>(s: &str, spec: &FieldSpec, what: &str) -> Res<F> {
    F::parse_in(s, spec).map_err(|e| CliError::Usage(format!("--{what}: {e}")))
}

fn scalar_list<F: Field>(arg: &str, spec: &FieldSpec, what: &str) -> Res<Vec<F>> {
    let v = read_json(Some(arg))?;
    let arr = v.as_array().ok_or_else(|| CliError::Usage(format!("--{what}: expected a JSON list")))?;
    arr.iter()
        .map(|x| match x {
            Value::String(s) => scalar(s, spec, what),
            Value::Number(n) => scalar(&n.to_string(), spec, what),
            _ => Err(CliError::Usage(format!("--{what}: entries must be scalars"))),
        })
        .collect()
}

fn scalar_matrix<F: Field>(arg: &str, spec: &FieldSpec, what: &str) -> Res<Matrix<F>> {
    Ok(matrix_from_json(&read_json(Some(arg))?, spec, &format!("--{what}"))?)
}

fn format_scalar<F: Field>(x: &F, spec: &FieldSpec) -> Value {
    Value::String(x.format_in(spec))
}

/// `(xy)z = x(yz)` on seeded random elements of `U(L)`.
fn random_associativity<F: Field>(pm: &PMPresentation<F>, seed: u64, trials: usize) -> Res<Residual> {
    let mut rng = Rng::seeded(seed);
    let mut r = Residual::new("U(L) associativity (seeded)");
    for trial in 0..trials {
        let x = random_element(pm, &mut rng, 3, 1);
        let y = random_element(pm, &mut rng, 3, 1);
        let z = random_element(pm, &mut rng, 3, 1);
        let left = pm_u_multiply(&pm_u_multiply(&x, &y, pm)?, &z, pm)?;
        let right = pm_u_multiply(&x, &pm_u_multiply(&y, &z, pm)?, pm)?;
        r.record(&[trial], 0, &if left.sub(&right).is_zero() { F::zero() } else { F::one() });
    }
    Ok(r)
}

fn verify_pm_report<F: Field>(pm: &PMPresentation<F>, mut report: Report, seed: u64) -> Res<Report> {
    report.push(pm_check_k_central(pm));
    if report.passed() {
        report.push(random_associativity(pm, seed, 10)?);
    }
    Ok(report)
}

fn comma_data<F: Field>(u: &str, v: &str, q: &str, spec: &FieldSpec) -> Res<(Vec<F>, Vec<F>, Vec<Vec<F>>)> {
    Ok((scalar_list(u, spec, "u")?, scalar_list(v, spec, "v")?, scalar_matrix(q, spec, "q")?.to_rows()))
}

fn class_json<F: Field>(c: &CommAClass<F>, spec: &FieldSpec) -> Value {
    let classes = |cl: &Vec<Vec<usize>>| json!(cl.iter().map(|k| k.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>());
    let mut m = Map::new();
    m.insert("class".into(), json!(c.tag()));
    match c {
        CommAClass::Regular { tau } => {
            m.insert("tau".into(), tau.as_ref().map_or(Value::Null, |t| format_scalar(t, spec)));
        }
        CommAClass::M1Family { u, tau, classes: cl, .. } => {
            m.insert("u".into(), format_scalar(u, spec));
            m.insert("tau".into(), format_scalar(tau, spec));
            m.insert("classes".into(), classes(cl));
        }
        CommAClass::M2Family { tau, classes: cl } => {
            m.insert("tau".into(), format_scalar(tau, spec));
            m.insert("classes".into(), classes(cl));
        }
        _ => {}
    }
    Value::Object(m)
}

fn catalog_json(family: Family, k: Option<usize>) -> Res<Outcome> {
    let e = catalog(family, k)?;
    let doc = json!({
        "schema": SCHEMA,
        "kind": "catalog-entry",
        "family": family.tag(),
        "name": e.id.name(),
        "k": e.id.k,
        "matrix": e.matrix.rows(),
        "m": e.m,
        "n": e.n,
    });
    let summary = format!("{}: matrix {:?}, m = {:?}, n = {:?}\n", e.id.name(), e.matrix.rows(), e.m, e.n);
    Ok(Outcome { doc, passed: true, summary })
}

fn need(doc: &Option<Value>) -> &Value {
    doc.as_ref().expect("input read for this command")
}

pub fn run<F: Field>(cli: &Cli, cmd: &Command, spec: FieldSpec, doc: Option<Value>) -> Res<Outcome> {
    match cmd {
        Command::VerifyPencil { .. } => {
            let p: Pencil<F> = pencil_from_json(need(&doc))?;
            Ok(report_only(check_compatibility(&p), None))
        }
        Command::Deform { r, .. } => {
            let star: StructureConstants<F> = sc_from_json(need(&doc))?;
            let r = scalar_matrix::<F>(r, &spec, "r")?;
            let (circle, report) = verified_deform(&star, &r)?;
            Ok(checked(pencil_to_json(&Pencil::new(star, circle)?), report))
        }
        Command::ExtractTensors { .. } => {
            let pres = r_presentation_from_json::<F>(need(&doc))?;
            let ex = extract_m_tensors(&pres)?;
            let mut report = ex.report.clone();
            merge(&mut report, verify_theorem21(&ex.tensors));
            let m = MPresentation::from_tensors(ex.tensors)?;
            let mut out = m_presentation_to_json(&m);
            if ex.pres != pres {
                out["minimized"] = r_presentation_to_json(&ex.pres);
            }
            Ok(checked(out, report))
        }
        Command::VerifyMstructure { representation, .. } => {
            let m = m_presentation_from_json::<F>(need(&doc))?;
            let mut report = check_consistency(&m);
            report.push(check_k_central(&m));
            if report.passed() {
                report.push(random_associativity(m.as_pm(), cli.seed, 10)?);
            }
            if let Some(path) = representation {
                let rep = r_presentation_from_json::<F>(&read_json(Some(path))?)?;
                merge(&mut report, validate_representation(&m, &rep)?);
            }
            Ok(report_only(report, None))
        }
        Command::BuildCyclic { p, s } => match s {
            Some(s) => {
                let rep = cyclic_representation::<F>(*p, &scalar(s, &spec, "s")?)?;
                Ok(Outcome { doc: r_presentation_to_json(&rep), passed: true, summary: format!("cyclic representation, p = {p}\n") })
            }
            None => {
                let m = example_cyclic::<F>(*p)?;
                let report = check_consistency(&m);
                Ok(checked(m_presentation_to_json(&m), report))
            }
        },
        Command::BuildComma { u, v, q } => {
            let (u, v, q) = comma_data::<F>(u, v, q, &spec)?;
            let conditions = comma_conditions(&u, &v, &q)?;
            if !conditions.passed() {
                return Ok(report_only(conditions, None));
            }
            let c = comma_build(&u, &v, &q)?;
            let mut out = m_presentation_to_json(&c.presentation);
            out["b_algebra"] = sc_to_json(&c.b_algebra);
            let mut report = conditions;
            merge(&mut report, check_consistency(&c.presentation));
            Ok(checked(out, report))
        }
        Command::ClassifyComma { u, v, q } => {
            let (u, v, q) = comma_data::<F>(u, v, q, &spec)?;
            let mut report = comma_conditions(&u, &v, &q)?;
            if !report.passed() {
                return Ok(report_only(report, None));
            }
            merge(&mut report, comma_identities(&u, &v, &q)?);
            let class = classify_comma(&u, &v, &q)?;
            let extra = class_json(&class, &spec).as_object().cloned();
            let mut out = report_only(report, extra);
            out.summary.push_str(&format!("class: {}\n", class.tag()));
            Ok(out)
        }
        Command::BuildA2k1 { k, m, lambda, t, s } => {
            let lambda = match lambda {
                Some(l) => scalar_list::<F>(l, &spec, "lambda")?,
                None => (1..=*m as i64).map(F::from_i64).collect(),
            };
            let t = match t {
                Some(t) => scalar_list::<F>(t, &spec, "t")?,
                None => vec![F::one(); *m],
            };
            if lambda.len() != *m || t.len() != *m {
                return Err(CliError::Usage(format!("--lambda and --t need {m} entries")));
            }
            let a = A2k1::new(*k, lambda, t)?;
            match s {
                Some(s) => {
                    let rep = a.representation(&scalar(s, &spec, "s")?)?;
                    let summary = format!("Ã_{} representation, m = {m}\n", 2 * k - 1);
                    Ok(Outcome { doc: pm_representation_to_json(&rep), passed: true, summary })
                }
                None => {
                    let pm = a.build()?;
                    let report = pm_check_consistency(&pm);
                    Ok(checked(pm_presentation_to_json(&pm), report))
                }
            }
        }
        Command::VerifyPmstructure { representation, .. } => {
            let pm = pm_presentation_from_json::<F>(need(&doc))?;
            let mut report = verify_pm_report(&pm, pm_check_consistency(&pm), cli.seed)?;
            if let Some(path) = representation {
                let rep = pm_representation_from_json::<F>(&read_json(Some(path))?)?;
                merge(&mut report, pm_validate_representation(&pm, &rep, &RelationLabels::pm())?);
            }
            Ok(report_only(report, None))
        }
        Command::ClassifyMatrix { .. } => {
            let a = multiplicity_from_json(need(&doc))?;
            let (doc, summary) = match classify(&a) {
                Some(id) => {
                    let (m, n) = solve_adm(&a).expect("admissible");
                    let doc = json!({
                        "schema": SCHEMA,
                        "kind": "diagram",
                        "admissible": true,
                        "family": id.family.tag(),
                        "name": id.name(),
                        "k": id.k,
                        "transposed": id.transposed,
                        "m": m,
                        "n": n,
                    });
                    (doc, format!("{id}: m = {m:?}, n = {n:?}\n"))
                }
                None => {
                    let witness = is_decomposable(&a).map(|w| {
                        json!({"rows": w.rows.iter().map(|i| i + 1).collect::<Vec<_>>(),
                               "cols": w.cols.iter().map(|j| j + 1).collect::<Vec<_>>()})
                    });
                    let doc = json!({
                        "schema": SCHEMA,
                        "kind": "diagram",
                        "admissible": false,
                        "result": "not admissible",
                        "decomposable": witness,
                    });
                    (doc, "not admissible\n".to_string())
                }
            };
            Ok(Outcome { doc, passed: true, summary })
        }
        Command::Catalog { family, k } => catalog_json(family.parse()?, *k),
        Command::PoissonCheck { n, .. } => {
            let p: Pencil<F> = pencil_from_json(need(&doc))?;
            let mut extra = Map::new();
            extra.insert("coordinates".into(), json!(p.dim() * n * n));
            Ok(report_only(poisson_report(&p.star, &p.circle, *n)?, Some(extra)))
        }
        Command::ExtendPoly { q, roots, .. } => {
            let p: Pencil<F> = pencil_from_json(need(&doc))?;
            let roots = roots.as_deref().map(|r| scalar_list::<F>(r, &spec, "roots")).transpose()?;
            let qc = match (q, &roots) {
                (Some(q), _) => scalar_list::<F>(q, &spec, "q")?,
                (None, Some(r)) => poly_from_roots(r),
                (None, None) => return Err(CliError::Usage("give --q or --roots".into())),
            };
            let sc = extend_polynomial(&p, &qc)?;
            let mut report = Report::default();
            let mut assoc = sc.associator_residual();
            assoc.label = "extended product associativity".into();
            report.push(assoc);
            merge(&mut report, extension_family_report(&p, qc.len() - 1)?);
            if let Some(r) = &roots {
                merge(&mut report, extension_decompose_report(&p, r)?);
            }
            Ok(checked(sc_to_json(&sc), report))
        }
    }
}
