//! Verification pipeline and report rendering.
//!
//! Reports are built as JSON values; the text rendering is derived from the
//! same value, so both carry identical data.

use abhol_core::bismut::{
    bismut_forms, bismut_torsion, curvature_forms, holonomy_algebra, riemannian_scalar_curvature,
};
use abhol_core::hermitian::{adapt_basis, is_abelian, is_balanced, nijenhuis_report, Adaptation};
use abhol_core::{Hermitian, HermitianError, Q};
use serde_json::{json, Map, Value};

/// Sign conventions stated in every report.
pub fn conventions() -> Value {
    json!({
        "differential": "de^k = sum_{i<j} c_ij^k e^{ij}",
        "bracket": "[e_i, e_j] = -sum_k c_ij^k e_k, so de(X,Y) = -e([X,Y])",
        "complex_structure": "column convention J e_j = sum_i J_ij e_i; adapted means J e_{2k-1} = -e_{2k}",
        "fundamental_form": "F(X,Y) = g(X,JY), equal to sum_k e^{2k-1,2k} in an adapted frame",
        "connection": "sigma^i_j(e_k) = g(nabla_{e_k} e_j, e_i); Bismut = Levi-Civita - 1/2 g^{-1}T with T = JdF",
        "curvature": "Omega^i_j = d sigma^i_j + sum_k sigma^i_k ^ sigma^k_j; R^{rs} = -sum_{i<j} Omega^i_j(e_r,e_s) e^{ij}",
        "scalar_curvature": "Levi-Civita, s = sum_{r!=s} Omega^r_s(e_r,e_s); negative on non-abelian nilpotent algebras",
    })
}

fn q(v: &Q) -> Value {
    Value::String(v.to_string())
}

fn qs(v: &[Q]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn skipped(why: &str) -> Value {
    json!({ "ok": null, "skipped": why })
}

/// Pipeline outcome: the report and whether every hypothesis and result holds.
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
    /// The structure in an exact adapted frame, when one exists.
    pub adapted: Option<Hermitian>,
}

/// Jacobi, unimodularity, integrability, adapted frame, abelian and balanced tests.
pub fn run_checks(h: &Hermitian, lax: bool, tol: f64) -> Outcome {
    let alg = h.algebra();
    let mut checks = Map::new();
    let mut ok = true;

    let defects = alg.jacobi_defect();
    let jacobi = defects.is_empty();
    ok &= jacobi;
    checks.insert(
        "jacobi".into(),
        json!({
            "ok": jacobi,
            "defects": defects.iter().map(|(k, f)| json!({ "k": k, "d2e": f.to_string() })).collect::<Vec<_>>(),
        }),
    );
    let unimodular = alg.is_unimodular();
    ok &= unimodular;
    let traces: Vec<Q> = (1..=alg.dim()).map(|i| alg.trace_ad_basis(i)).collect();
    checks.insert("unimodular".into(), json!({ "ok": unimodular, "trace_ad": qs(&traces) }));

    let finish = |checks: Map<String, Value>, ok: bool, adapted: Option<Hermitian>| {
        let report = json!({
            "conventions": conventions(),
            "dim": alg.dim(),
            "fingerprint": fingerprint(h),
            "checks": Value::Object(checks),
        });
        Outcome { report, ok, adapted }
    };

    if !jacobi && !lax {
        let why = "Jacobi identity fails; rerun with --lax to continue";
        for key in ["complex", "frame", "abelian", "balanced"] {
            checks.insert(key.into(), skipped(why));
        }
        return finish(checks, false, None);
    }

    let j = h.complex_structure();
    let nij = nijenhuis_report(alg, j).expect("dimensions validated on load");
    let complex = nij.is_integrable();
    ok &= complex;
    checks.insert(
        "complex".into(),
        json!({
            "ok": complex,
            "defects": nij.defects.iter().map(|((a, b), v)| json!({ "pair": [a, b], "N": qs(v) })).collect::<Vec<_>>(),
        }),
    );

    let adapted = if h.is_adapted() {
        checks.insert("frame".into(), json!({ "ok": true, "adapted": true }));
        Some(h.clone())
    } else {
        match adapt_basis(j, h.metric(), tol) {
            Ok(Adaptation::Exact(p)) => {
                let rows: Vec<Value> = p.rows().iter().map(|r| qs(r)).collect();
                match alg.change_basis(&p).map_err(HermitianError::from).and_then(Hermitian::adapted) {
                    Ok(h2) => {
                        checks.insert("frame".into(), json!({ "ok": true, "adapted": false, "change_of_basis": rows }));
                        Some(h2)
                    }
                    Err(e) => {
                        checks.insert("frame".into(), json!({ "ok": false, "error": e.to_string() }));
                        None
                    }
                }
            }
            Ok(Adaptation::Approximate { residual, tolerance, .. }) => {
                checks.insert(
                    "frame".into(),
                    json!({
                        "ok": false,
                        "approximate": true,
                        "residual": residual,
                        "tolerance": tolerance,
                        "error": "no exact rational adapted frame; exact checks refuse approximate frames",
                    }),
                );
                None
            }
            Err(e) => {
                checks.insert("frame".into(), json!({ "ok": false, "error": e.to_string() }));
                None
            }
        }
    };
    ok &= adapted.is_some();

    if complex {
        let abelian = is_abelian(alg, j);
        let v = match &abelian {
            Ok(b) => json!({ "ok": b }),
            Err(e) => json!({ "ok": false, "error": e.to_string() }),
        };
        ok &= matches!(abelian, Ok(true));
        checks.insert("abelian".into(), v);
    } else {
        ok = false;
        checks.insert("abelian".into(), skipped("J is not integrable"));
    }

    match &adapted {
        None => {
            checks.insert("balanced".into(), skipped("no exact adapted frame"));
        }
        Some(_) if !unimodular => {
            checks
                .insert("balanced".into(), skipped("the balanced criteria are equivalent only on unimodular algebras"));
        }
        Some(a) => {
            let v = match is_balanced(a) {
                Ok(c) => {
                    ok &= c.balanced;
                    json!({
                        "ok": c.balanced,
                        "bracket_sum": qs(&c.bracket_sum),
                        "structure_sums": qs(&c.structure_sums),
                        "wedge_test": c.wedge_test,
                        "codifferential": c.codifferential.to_string(),
                        "closed_power": c.closed_power,
                        "witness": c.witness.as_ref().map(|(k, s)| json!({ "k": k, "sum": q(s) })),
                    })
                }
                Err(e) => {
                    ok = false;
                    json!({ "ok": false, "error": e.to_string() })
                }
            };
            checks.insert("balanced".into(), v);
        }
    }
    finish(checks, ok, adapted)
}

fn fingerprint(h: &Hermitian) -> Value {
    let f = h.algebra().fingerprint();
    let s = h.algebra().series();
    json!({
        "dim": f.dim,
        "betti_1": f.betti_1,
        "center_dim": f.center_dim,
        "derived_dim": f.derived_dim,
        "nilpotency_step": f.nilpotency_step,
        "solvability_step": s.solvability_step,
        "lower_central_dims": s.lower_central_dims,
        "d_ranks": f.d_ranks,
    })
}

/// Checks followed by the Bismut connection and its holonomy.
pub fn run_full(h: &Hermitian, lax: bool, tol: f64) -> Outcome {
    let mut out = run_checks(h, lax, tol);
    let obj = out.report.as_object_mut().expect("report is an object");
    let integrable = obj["checks"]["complex"]["ok"] == Value::Bool(true);
    let Some(a) = out.adapted.as_ref().filter(|_| integrable) else {
        let why = if integrable { "no exact adapted frame" } else { "needs an integrable J satisfying Jacobi" };
        obj.insert("bismut".into(), skipped(why));
        obj.insert("holonomy".into(), skipped(why));
        out.ok = false;
        return out;
    };
    match bismut_block(a) {
        Ok(v) => {
            obj.insert("bismut".into(), v);
        }
        Err(e) => {
            obj.insert("bismut".into(), json!({ "ok": false, "error": e }));
            out.ok = false;
        }
    }
    match holonomy_algebra(a) {
        Ok(r) => {
            out.ok &= r.theorem.holds != Some(false);
            obj.insert(
                "holonomy".into(),
                json!({
                    "dim": r.dim,
                    "basis": r.basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "iterations": r.iterations,
                    "curvature_dim": r.curvature_dim,
                    "center_dim": r.center_dim,
                    "minimal_q": r.minimal_q,
                    "idempotent": r.idempotent,
                    "commutator_closed": r.commutator_closed,
                    "theorem": {
                        "statement": "hol contained in su(n - k) when dim z = 2k",
                        "applicable": r.theorem.is_applicable(),
                        "unmet": r.theorem.unmet,
                        "bound": r.theorem.bound,
                        "holds": r.theorem.holds,
                    },
                }),
            );
        }
        Err(e) => {
            out.ok = false;
            obj.insert("holonomy".into(), json!({ "ok": false, "error": e.to_string() }));
        }
    }
    out
}

fn bismut_block(h: &Hermitian) -> Result<Value, String> {
    let alg = h.algebra();
    let m = alg.dim();
    let torsion = bismut_torsion(h).map_err(|e| e.to_string())?;
    let sigma = bismut_forms(h).map_err(|e| e.to_string())?;
    let omega = curvature_forms(&sigma, alg).map_err(|e| e.to_string())?;
    let scal = riemannian_scalar_curvature(h).map_err(|e| e.to_string())?;
    let mut connection = Vec::new();
    let mut curvature = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            if !sigma.get(i, j).is_zero() {
                connection.push(json!({ "i": i, "j": j, "form": sigma.get(i, j).to_string() }));
            }
            if !omega.get(i, j).is_zero() {
                curvature.push(json!({ "i": i, "j": j, "form": omega.get(i, j).to_string() }));
            }
        }
    }
    Ok(json!({
        "torsion": torsion.to_string(),
        "connection_forms": connection,
        "curvature": { "flat": curvature.is_empty(), "nonzero": curvature.len(), "forms": curvature },
        "scalar_curvature": q(&scal),
    }))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.is_empty(),
        Value::Object(o) => o.is_empty(),
        _ => true,
    }
}

/// Arrays of short tokens print on one line as `[a, b, c]`.
fn inline(v: &Value) -> Option<String> {
    let items = v.as_array().filter(|a| !a.is_empty())?;
    let token = |x: &Value| {
        let t = is_leaf(x).then(|| leaf_text(x))?;
        (!t.is_empty() && !t.contains([' ', ',', '[', ']'])).then_some(t)
    };
    let parts: Option<Vec<String>> = items.iter().map(token).collect();
    parts.map(|p| format!("[{}]", p.join(", ")))
}

fn leaf_text(v: &Value) -> String {
    match v {
        Value::Array(_) => "[]".into(),
        Value::Object(_) => "{}".into(),
        other => scalar_text(other),
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                if let Some(t) = inline(x) {
                    out.push_str(&format!("{pad}{k}: {t}\n"));
                } else if is_leaf(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", leaf_text(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, depth + 1, out);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if let Some(t) = inline(x) {
                    out.push_str(&format!("{pad}- {t}\n"));
                } else if is_leaf(x) {
                    out.push_str(&format!("{pad}- {}\n", leaf_text(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, depth + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}

/// Indented text form of a report: one line per key or list item.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

/// `(path, text)` for every leaf, in document order.
pub fn leaves(v: &Value) -> Vec<(String, String)> {
    fn go(v: &Value, path: String, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(o) if !o.is_empty() => {
                for (k, x) in o {
                    go(x, if path.is_empty() { k.clone() } else { format!("{path}.{k}") }, out);
                }
            }
            Value::Array(a) if !a.is_empty() => {
                for (i, x) in a.iter().enumerate() {
                    go(x, format!("{path}[{i}]"), out);
                }
            }
            other => out.push((path, leaf_text(other))),
        }
    }
    let mut out = Vec::new();
    go(v, String::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_lists_every_leaf() {
        let v = json!({ "a": { "b": [1, "x"], "c": [] }, "d": [{ "e": null }] });
        assert_eq!(render_text(&v), "a:\n  b: [1, x]\n  c: []\nd:\n  -\n    e: null\n");
        let long = json!({ "f": ["e^{12} + e^{34}", "0"] });
        assert_eq!(render_text(&long), "f:\n  - e^{12} + e^{34}\n  - 0\n");
        let paths: Vec<String> = leaves(&v).into_iter().map(|(p, _)| p).collect();
        assert_eq!(paths, ["a.b[0]", "a.b[1]", "a.c", "d[0].e"]);
    }
}
