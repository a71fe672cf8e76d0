//! JSON and text rendering of results, plus oracle cross-checks.
//!
//! Every JSON report is wrapped in an envelope carrying the tool version,
//! field, variables and degree cap. Infinite values are the string
//! `"infinity"`; unavailable values are `null` with a reason under `notes`.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::coefficients::Field;
use crate::equivalence::{Check, EquivalenceVerdict, Mode, Verdict};
use crate::localalg::{colength, ColengthResult};
use crate::oracle::{
    oracle_colength, oracle_hilbert, oracle_min_m_power, OracleColength, TruncatedSpace,
};
use crate::parser::print_polynomial;
use crate::poly::{Order, PolyRing, Polynomial};
use crate::singularity::{
    jacobian_ideal, k_ideal, tjurina_ideal, Computed, KIdealKind, SingularityReport,
};
use crate::stdbasis::Ideal;
use crate::TOOL_VERSION;

/// How far the oracle looks for stabilization of an infinite quotient.
const ORACLE_INFINITE_PROBE: u32 = 12;

pub const FIELD_CAVEAT: &str =
    "equivalence is meant over the algebraic closure of the coefficient field";

#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub tool_version: &'static str,
    pub field: String,
    pub vars: Vec<String>,
    pub cap: u32,
    pub result: Value,
}

impl Envelope {
    pub fn new<F: Field>(ring: &PolyRing<F>, result: Value) -> Self {
        Envelope {
            tool_version: TOOL_VERSION,
            field: ring.field().spec().to_string(),
            vars: ring.var_names().to_vec(),
            cap: ring.cap(),
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

fn computed<T: Serialize>(name: &str, c: &Computed<T>, notes: &mut Map<String, Value>) -> Value {
    match c {
        Computed::Known(v) => to_value(v),
        Computed::Unknown { reason, .. } => {
            notes.insert(name.into(), json!(reason));
            Value::Null
        }
    }
}

pub fn singularity_json<F: Field>(ring: &PolyRing<F>, r: &SingularityReport<F::Elem>) -> Value {
    let mut notes = Map::new();
    let mut out = Map::new();
    out.insert("f".into(), json!(print_polynomial(&r.f, ring)));
    out.insert("s".into(), to_value(&r.s));
    out.insert("s_prime".into(), to_value(&r.s_prime));
    out.insert("mu".into(), computed("mu", &r.mu, &mut notes));
    out.insert("tau".into(), computed("tau", &r.tau, &mut notes));
    let right = r.right_det.clone();
    let contact = r.contact_det.clone();
    out.insert(
        "right_det".into(),
        computed("right_det", &right.clone().map(|b| b.bound), &mut notes),
    );
    out.insert(
        "right_det_k_star".into(),
        to_value(&right.known().map(|b| b.k_star)),
    );
    out.insert(
        "contact_det".into(),
        computed("contact_det", &contact.clone().map(|b| b.bound), &mut notes),
    );
    out.insert(
        "contact_det_k_star".into(),
        to_value(&contact.known().map(|b| b.k_star)),
    );
    out.insert("n_prime".into(), to_value(&r.n_prime.known()));
    out.insert("n_star".into(), to_value(&r.n_star.known()));
    out.insert(
        "min_k_right".into(),
        computed("min_k_right", &r.min_k_right, &mut notes),
    );
    out.insert(
        "min_k_contact".into(),
        computed("min_k_contact", &r.min_k_contact, &mut notes),
    );
    out.insert(
        "cor_bound_right".into(),
        computed("cor_bound_right", &r.cor_bound_right, &mut notes),
    );
    out.insert(
        "cor_bound_contact".into(),
        computed("cor_bound_contact", &r.cor_bound_contact, &mut notes),
    );
    out.insert("hf_tjurina".into(), to_value(&r.hf_tjurina));
    out.insert("notes".into(), Value::Object(notes));
    Value::Object(out)
}

pub fn verdict_json<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    g: &Polynomial<F::Elem>,
    v: &EquivalenceVerdict,
) -> Value {
    let mut out = Map::new();
    out.insert("f".into(), json!(print_polynomial(f, ring)));
    out.insert("g".into(), json!(print_polynomial(g, ring)));
    out.insert("mode".into(), to_value(&v.mode));
    let (status, body) = match &v.verdict {
        Verdict::Equivalent { certificate } => {
            ("equivalent", json!({ "certificate": certificate }))
        }
        Verdict::NotEquivalent { witness } => ("not_equivalent", json!({ "witness": witness })),
        Verdict::Inconclusive => ("inconclusive", json!({})),
    };
    out.insert("verdict".into(), json!(status));
    if let Value::Object(m) = body {
        out.extend(m);
    }
    out.insert("evidence".into(), to_value(&v.evidence));
    out.insert("invariants".into(), to_value(&v.invariants));
    out.insert("notes".into(), json!({ "field": FIELD_CAVEAT, "k": "min_k is a sufficient index, not necessarily the least possible" }));
    Value::Object(out)
}

/// Attaches oracle checks and the overall agreement flag to a result.
pub fn attach_oracle(result: &mut Value, checks: &[Check]) {
    if let Value::Object(m) = result {
        m.insert("oracle_checks".into(), to_value(&checks));
        m.insert(
            "oracle_agreement".into(),
            json!(checks.iter().all(|c| c.holds == Some(true))),
        );
    }
}

fn oracle_depth(claimed: &ColengthResult, cap: u32) -> u32 {
    match claimed {
        // m^mu ⊆ I, so the truncations settle by degree mu
        ColengthResult::Finite(d) => (*d as u32).saturating_add(2).min(cap),
        ColengthResult::Infinite => ORACLE_INFINITE_PROBE.min(cap),
    }
}

/// Compares a colength with the oracle's.
pub fn oracle_colength_check<F: Field>(
    ring: &PolyRing<F>,
    name: &str,
    ideal: &Ideal<F::Elem>,
    claimed: ColengthResult,
) -> Check {
    let depth = oracle_depth(&claimed, ring.cap());
    let got = oracle_colength(ring, ideal, depth);
    let holds = match (&claimed, &got) {
        (ColengthResult::Finite(a), OracleColength::Stable(b)) => a == b,
        (ColengthResult::Infinite, OracleColength::Unstable { .. }) => true,
        _ => false,
    };
    let shown = match &got {
        OracleColength::Stable(b) => b.to_string(),
        OracleColength::Unstable { .. } => format!("not stable up to degree {depth}"),
    };
    Check {
        name: format!("oracle_{name}"),
        holds: Some(holds),
        detail: format!("engine {claimed}, oracle {shown}"),
    }
}

/// Oracle checks for every dimension in a singularity report.
pub fn oracle_singularity<F: Field>(
    ring: &PolyRing<F>,
    r: &SingularityReport<F::Elem>,
) -> Vec<Check> {
    let mut checks = Vec::new();
    let f = &r.f;
    if let Computed::Known(mu) = r.mu {
        checks.push(oracle_colength_check(
            ring,
            "mu",
            &jacobian_ideal(ring, f),
            mu,
        ));
    }
    if let Computed::Known(tau) = r.tau {
        let tj = tjurina_ideal(ring, f);
        checks.push(oracle_colength_check(ring, "tau", &tj, tau));
        if let (ColengthResult::Finite(t), Some(hf)) = (tau, &r.hf_tjurina) {
            let got = oracle_hilbert(ring, &tj, (t as u32 + 2).min(ring.cap()));
            checks.push(Check {
                name: "oracle_hf_tjurina".into(),
                holds: Some(got.as_ref() == Some(hf)),
                detail: format!(
                    "engine {hf}, oracle {}",
                    got.map_or("none".into(), |h| h.to_string())
                ),
            });
        }
    }
    // N' and N*: the containing powers, by monomial scan
    let mut scan = |name: &str, n: &Computed<u32>, ideal: crate::Result<Ideal<F::Elem>>| {
        let (Computed::Known(n), Ok(ideal)) = (n, ideal) else {
            return;
        };
        let depth = (*n + 1).min(ring.cap());
        let got = oracle_min_m_power(ring, &ideal, depth);
        checks.push(Check {
            name: format!("oracle_{name}"),
            holds: Some(got == Some(*n)),
            detail: format!("engine {n}, oracle {got:?}"),
        });
    };
    if r.s.finite().is_some_and(|s| s >= 2) {
        let m = |k| crate::localalg::m_power_times(ring, k, &jacobian_ideal(ring, f));
        scan("n_prime", &r.n_prime, m(2));
        let contact = m(2).and_then(|mj| {
            let mf = crate::localalg::m_power_times(ring, 1, &Ideal::new([f.clone()]))?;
            Ok(crate::localalg::ideal_sum(&mf, &mj))
        });
        scan("n_star", &r.n_star, contact);
    }
    checks
}

fn k_from_suffix(name: &str, prefix: &str) -> Option<u32> {
    name.strip_prefix(prefix)?.parse().ok()
}

/// Oracle checks for the ideal equalities and dimensions behind a verdict.
pub fn oracle_verdict<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    g: &Polynomial<F::Elem>,
    v: &EquivalenceVerdict,
) -> Vec<Check> {
    let kind = |k| match v.mode {
        Mode::Contact => KIdealKind::TjurinaK(k),
        Mode::Right => KIdealKind::MilnorK(k),
    };
    let mut checks = Vec::new();
    for c in &v.evidence {
        let Some(k) = k_from_suffix(&c.name, "ideal_equality_k") else {
            continue;
        };
        let (Ok(a), Ok(b)) = (k_ideal(ring, f, kind(k)), k_ideal(ring, g, kind(k))) else {
            continue;
        };
        let (Ok(ca), Ok(cb)) = (colength(ring, &a), colength(ring, &b)) else {
            continue;
        };
        let (ColengthResult::Finite(da), ColengthResult::Finite(db)) = (ca, cb) else {
            continue;
        };
        let depth = (da.max(db) as u32 + 2).min(ring.cap());
        let sa = TruncatedSpace::new(ring, &a, depth);
        let sb = TruncatedSpace::new(ring, &b, depth);
        let equal = b.generators().iter().all(|h| sa.contains(h))
            && a.generators().iter().all(|h| sb.contains(h));
        checks.push(Check {
            name: format!("oracle_{}", c.name),
            holds: Some(c.holds == Some(equal)),
            detail: format!("engine {:?}, oracle {equal}", c.holds),
        });
    }
    for p in &v.invariants {
        let (prefix, number) = match v.mode {
            Mode::Contact => ("hf_tjurina_k", "tau"),
            Mode::Right => ("hf_milnor_k", "mu"),
        };
        if p.invariant == number {
            let ideal = |h| match v.mode {
                Mode::Contact => tjurina_ideal(ring, h),
                Mode::Right => jacobian_ideal(ring, h),
            };
            for (which, h, val) in [("f", f, &p.f_value), ("g", g, &p.g_value)] {
                let claimed = match val.as_u64() {
                    Some(d) => ColengthResult::Finite(d as usize),
                    None => ColengthResult::Infinite,
                };
                checks.push(oracle_colength_check(
                    ring,
                    &format!("{number}_{which}"),
                    &ideal(h),
                    claimed,
                ));
            }
        } else if let Some(k) = k_from_suffix(&p.invariant, prefix) {
            for (which, h, val) in [("f", f, &p.f_value), ("g", g, &p.g_value)] {
                let Ok(ideal) = k_ideal(ring, h, kind(k)) else {
                    continue;
                };
                let total: u64 = val
                    .as_array()
                    .map_or(0, |a| a.iter().filter_map(Value::as_u64).sum());
                let got = oracle_hilbert(ring, &ideal, (total as u32 + 2).min(ring.cap()));
                let got_value = got.as_ref().map(to_value).unwrap_or(Value::Null);
                checks.push(Check {
                    name: format!("oracle_{}_{which}", p.invariant),
                    holds: Some(&got_value == val),
                    detail: format!("engine {val}, oracle {got_value}"),
                });
            }
        }
    }
    checks
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Null => "unknown".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) => format!(
            "({})",
            a.iter().map(text_value).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

/// Two-column table of the scalar fields of a JSON result.
pub fn text_table(envelope: &Envelope) -> String {
    let mut lines = vec![
        format!("field        {}", envelope.field),
        format!("vars         {}", envelope.vars.join(",")),
        format!("cap          {}", envelope.cap),
    ];
    if let Value::Object(m) = &envelope.result {
        for (k, v) in m {
            match (k.as_str(), v) {
                ("notes", Value::Object(notes)) => {
                    for (nk, nv) in notes {
                        lines.push(format!("note         {nk}: {}", text_value(nv)));
                    }
                }
                ("evidence" | "oracle_checks", Value::Array(items)) => {
                    for item in items {
                        let holds = match item.get("holds") {
                            Some(Value::Bool(true)) => "yes",
                            Some(Value::Bool(false)) => "no",
                            _ => "n/a",
                        };
                        lines.push(format!(
                            "check        {} [{holds}] {}",
                            text_value(&item["name"]),
                            text_value(&item["detail"])
                        ));
                    }
                }
                ("invariants", Value::Array(items)) => {
                    for item in items {
                        lines.push(format!(
                            "invariant    {}: f {}, g {}",
                            text_value(&item["invariant"]),
                            text_value(&item["f_value"]),
                            text_value(&item["g_value"])
                        ));
                    }
                }
                (_, Value::Object(inner)) => {
                    let body: Vec<String> = inner
                        .iter()
                        .map(|(a, b)| format!("{a}={}", text_value(b)))
                        .collect();
                    lines.push(format!("{k:<12} {}", body.join(" ")));
                }
                _ => lines.push(format!("{k:<12} {}", text_value(v))),
            }
        }
    }
    lines.join("\n") + "\n"
}

pub fn order_value(o: Order) -> Value {
    to_value(&o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{PrimeField, Rationals};
    use crate::equivalence::compare;
    use crate::parser::parse_polynomial;
    use crate::singularity::analyze;

    #[test]
    fn cusp_json_fields() {
        let r = PolyRing::new(Rationals, &["x", "y"], 64).unwrap();
        let f = parse_polynomial("x^2+y^3", &r).unwrap();
        let v = singularity_json(&r, &analyze(&r, &f));
        for (k, want) in [
            ("mu", 2),
            ("tau", 2),
            ("s", 2),
            ("s_prime", 1),
            ("right_det", 4),
            ("contact_det", 4),
            ("min_k_right", 4),
            ("min_k_contact", 4),
            ("cor_bound_right", 4),
            ("cor_bound_contact", 4),
        ] {
            assert_eq!(v[k], json!(want), "{k}");
        }
        let env = Envelope::new(&r, v);
        assert_eq!(env.field, "QQ");
        assert!(text_table(&env).contains("mu           2"));
    }

    #[test]
    fn infinity_and_notes() {
        let r = PolyRing::new(PrimeField::new(2).unwrap(), &["x", "y"], 64).unwrap();
        let f = parse_polynomial("y^2+x^3*y", &r).unwrap();
        let rep = analyze(&r, &f);
        let v = singularity_json(&r, &rep);
        assert_eq!(v["mu"], json!("infinity"));
        assert_eq!(v["tau"], json!(5));
        assert_eq!(v["right_det"], Value::Null);
        assert!(v["notes"]["right_det"].is_string());
        assert_eq!(v["hf_tjurina"], json!([1, 2, 2]));
        let checks = oracle_singularity(&r, &rep);
        assert!(checks.iter().all(|c| c.holds == Some(true)), "{checks:?}");
    }

    #[test]
    fn verdict_oracle() {
        let r = PolyRing::new(PrimeField::new(2).unwrap(), &["x", "y"], 64).unwrap();
        let f = parse_polynomial("y^2+x^3*y", &r).unwrap();
        let g = parse_polynomial("y^2+x^3*y+x^5", &r).unwrap();
        let v = compare(&r, &f, &g, Mode::Contact).unwrap();
        let checks = oracle_verdict(&r, &f, &g, &v);
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|c| c.holds == Some(true)), "{checks:?}");
        let mut j = verdict_json(&r, &f, &g, &v);
        attach_oracle(&mut j, &checks);
        assert_eq!(j["oracle_agreement"], json!(true));
    }
}
