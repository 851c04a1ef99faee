//! JSON document formats.
//!
//! * Graph document: `{"vertices":[{"id","group"}], "edges":[{"id","from",
//!   "to","group","alpha","omega"}]}` where a group is `{"free_rank",
//!   "torsion"}` and `alpha`/`omega` are matrices (arrays of rows) whose
//!   columns are images of the edge-group generators in vertex-group
//!   coordinates, free coordinates first, then torsion residues. The
//!   inverse edge is implicit.
//! * Word document: a list of `{"v": id, "coeffs": [int]}` and
//!   `{"t": edge id, "exp": ±1}` items; tree letters are rejected.
//! * Witness document: `{"n", "q_generators", "vertex_images": {vid:
//!   [{"vec_num", "vec_den", "q"}]}, "letter_images": {eid: {...}}}`.
//! * Verdicts serialize as `{"status", "certificate", "notes"}` with
//!   self-describing tagged certificates.
//!
//! Machine output is deterministic: maps are emitted in sorted key order
//! and no timestamps appear anywhere.

use crate::britton::{Syllable, Word};
use crate::deciders::{BalanceEvidence, Certificate, Family, FamilyFacts, Verdict};
use crate::fgab::FgAbGroup;
use crate::graph::{EdgeSpec, GraphOfGroups, SpanningTree};
use crate::linalg::IntegerMatrix;
use crate::matgrp::{FinitenessResult, InfiniteWitness};
use crate::witness::{EuclideanWitness, IsometryImage, VerificationReport};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Deserialize;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("{pointer}: {message}")]
    Invalid { pointer: String, message: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Fgab(#[from] crate::fgab::FgabError),
    #[error(transparent)]
    Word(#[from] crate::britton::WordError),
}

fn invalid(pointer: &str, message: impl Into<String>) -> DocError {
    DocError::Invalid {
        pointer: pointer.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Deserialize)]
struct GroupDoc {
    free_rank: usize,
    #[serde(default)]
    torsion: Vec<i64>,
}

#[derive(Debug, Deserialize)]
struct VertexDoc {
    id: String,
    group: GroupDoc,
}

#[derive(Debug, Deserialize)]
struct EdgeDoc {
    id: String,
    from: String,
    to: String,
    group: GroupDoc,
    alpha: Vec<Vec<i64>>,
    omega: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
struct GraphDoc {
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
}

fn group_from_doc(doc: &GroupDoc, pointer: &str) -> Result<FgAbGroup, DocError> {
    let torsion = doc.torsion.iter().map(|&d| BigInt::from(d)).collect();
    FgAbGroup::new(doc.free_rank, torsion)
        .map_err(|e| invalid(pointer, format!("bad group: {e}")))
}

fn matrix_from_doc(rows: &[Vec<i64>], pointer: &str) -> Result<IntegerMatrix, DocError> {
    if !rows.is_empty() {
        let w = rows[0].len();
        if rows.iter().any(|r| r.len() != w) {
            return Err(invalid(pointer, "ragged matrix rows"));
        }
    }
    Ok(IntegerMatrix::from_rows_i64(rows))
}

/// Parses a graph-of-groups document.
pub fn parse_graph(text: &str) -> Result<GraphOfGroups, DocError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    let mut vertices = Vec::new();
    for (i, v) in doc.vertices.iter().enumerate() {
        let pointer = format!("vertices[{i}].group");
        vertices.push((v.id.clone(), group_from_doc(&v.group, &pointer)?));
    }
    let mut edges = Vec::new();
    for (i, e) in doc.edges.iter().enumerate() {
        let group = group_from_doc(&e.group, &format!("edges[{i}].group"))?;
        let alpha = matrix_from_doc(&e.alpha, &format!("edges[{i}].alpha"))?;
        let omega = matrix_from_doc(&e.omega, &format!("edges[{i}].omega"))?;
        edges.push(EdgeSpec {
            id: e.id.clone(),
            from: e.from.clone(),
            to: e.to.clone(),
            group,
            alpha,
            omega,
        });
    }
    Ok(GraphOfGroups::build(vertices, edges)?)
}

fn bigint_to_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn group_to_value(g: &FgAbGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "torsion": g.torsion().iter().map(bigint_to_value).collect::<Vec<_>>(),
    })
}

fn matrix_to_value(m: &IntegerMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|r| Value::Array((0..m.cols()).map(|c| bigint_to_value(m.at(r, c))).collect()))
        .collect();
    Value::Array(rows)
}

/// Serializes a graph of groups back to the document format.
pub fn graph_to_value(g: &GraphOfGroups) -> Value {
    let graph = g.graph();
    let vertices: Vec<Value> = (0..graph.vertex_count())
        .map(|v| {
            json!({
                "id": graph.vertex_id(v),
                "group": group_to_value(g.vertex_group(v)),
            })
        })
        .collect();
    let edges: Vec<Value> = (0..graph.pair_count())
        .map(|p| {
            let e = 2 * p;
            json!({
                "id": graph.pair_ids()[p],
                "from": graph.vertex_id(graph.origin(e)),
                "to": graph.vertex_id(graph.terminus(e)),
                "group": group_to_value(g.edge_group(e)),
                "alpha": matrix_to_value(&g.alpha(e).matrix()),
                "omega": matrix_to_value(&g.omega(e).matrix()),
            })
        })
        .collect();
    json!({ "vertices": vertices, "edges": edges })
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum WordItemDoc {
    Vertex { v: String, coeffs: Vec<i64> },
    Stable { t: String, exp: i64 },
}

/// Parses a word document against a context.
pub fn parse_word(
    g: &GraphOfGroups,
    tree: &SpanningTree,
    text: &str,
) -> Result<Word, DocError> {
    let items: Vec<WordItemDoc> = serde_json::from_str(text)?;
    let graph = g.graph();
    let mut syllables = Vec::new();
    for (i, item) in items.iter().enumerate() {
        match item {
            WordItemDoc::Vertex { v, coeffs } => {
                let vix = graph
                    .vertex_index(v)
                    .ok_or_else(|| invalid(&format!("[{i}].v"), format!("unknown vertex `{v}`")))?;
                let elem = g
                    .vertex_group(vix)
                    .element_i64(coeffs)
                    .map_err(|e| invalid(&format!("[{i}].coeffs"), e.to_string()))?;
                syllables.push(Syllable::Vertex { vertex: vix, elem });
            }
            WordItemDoc::Stable { t, exp } => {
                let e = graph
                    .edge_index_of_pair(t)
                    .ok_or_else(|| invalid(&format!("[{i}].t"), format!("unknown edge `{t}`")))?;
                if *exp != 1 && *exp != -1 {
                    return Err(invalid(&format!("[{i}].exp"), "exponent must be +1 or -1"));
                }
                syllables.push(Syllable::Stable {
                    edge: e,
                    exponent: *exp as i8,
                });
            }
        }
    }
    let britton = crate::britton::Britton::new(g, tree);
    Ok(britton.word(syllables)?)
}

/// Serializes a word back to the document format.
pub fn word_to_value(g: &GraphOfGroups, w: &Word) -> Value {
    let graph = g.graph();
    let items: Vec<Value> = w
        .syllables
        .iter()
        .map(|s| match s {
            Syllable::Vertex { vertex, elem } => json!({
                "v": graph.vertex_id(*vertex),
                "coeffs": elem.lift().iter().map(bigint_to_value).collect::<Vec<_>>(),
            }),
            Syllable::Stable { edge, exponent } => json!({
                "t": graph.pair_id_of(*edge),
                "exp": *exponent,
            }),
        })
        .collect();
    Value::Array(items)
}

#[derive(Debug, Deserialize)]
struct IsometryDoc {
    vec_num: Vec<i64>,
    #[serde(default = "one")]
    vec_den: i64,
    q: Vec<Vec<i64>>,
}

fn one() -> i64 {
    1
}

#[derive(Debug, Deserialize)]
struct WitnessDoc {
    n: usize,
    q_generators: Vec<Vec<Vec<i64>>>,
    vertex_images: BTreeMap<String, Vec<IsometryDoc>>,
    letter_images: BTreeMap<String, IsometryDoc>,
}

fn isometry_from_doc(doc: &IsometryDoc, pointer: &str) -> Result<IsometryImage, DocError> {
    if doc.vec_den == 0 {
        return Err(invalid(pointer, "vec_den must be nonzero"));
    }
    let den = BigInt::from(doc.vec_den);
    let translation = doc
        .vec_num
        .iter()
        .map(|&x| BigRational::new(BigInt::from(x), den.clone()))
        .collect();
    Ok(IsometryImage {
        translation,
        q_part: matrix_from_doc(&doc.q, pointer)?,
    })
}

/// Parses a witness document.
pub fn parse_witness(text: &str) -> Result<EuclideanWitness, DocError> {
    let doc: WitnessDoc = serde_json::from_str(text)?;
    let q_generators = doc
        .q_generators
        .iter()
        .enumerate()
        .map(|(i, m)| matrix_from_doc(m, &format!("q_generators[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut vertex_images = BTreeMap::new();
    for (vid, imgs) in &doc.vertex_images {
        let converted = imgs
            .iter()
            .enumerate()
            .map(|(i, d)| isometry_from_doc(d, &format!("vertex_images.{vid}[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        vertex_images.insert(vid.clone(), converted);
    }
    let mut letter_images = BTreeMap::new();
    for (eid, d) in &doc.letter_images {
        letter_images.insert(eid.clone(), isometry_from_doc(d, &format!("letter_images.{eid}"))?);
    }
    Ok(EuclideanWitness {
        n: doc.n,
        q_generators,
        vertex_images,
        letter_images,
    })
}

fn isometry_to_value(img: &IsometryImage) -> Value {
    let mut den = BigInt::one();
    for t in &img.translation {
        den = den.lcm(t.denom());
    }
    let nums: Vec<Value> = img
        .translation
        .iter()
        .map(|t| bigint_to_value(&(t.numer() * (&den / t.denom()))))
        .collect();
    json!({
        "vec_num": nums,
        "vec_den": bigint_to_value(&den),
        "q": matrix_to_value(&img.q_part),
    })
}

/// Serializes a witness to the document format.
pub fn witness_to_value(w: &EuclideanWitness) -> Value {
    let mut vertex_images = Map::new();
    for (vid, imgs) in &w.vertex_images {
        vertex_images.insert(
            vid.clone(),
            Value::Array(imgs.iter().map(isometry_to_value).collect()),
        );
    }
    let mut letter_images = Map::new();
    for (eid, img) in &w.letter_images {
        letter_images.insert(eid.clone(), isometry_to_value(img));
    }
    json!({
        "n": w.n,
        "q_generators": w.q_generators.iter().map(matrix_to_value).collect::<Vec<_>>(),
        "vertex_images": Value::Object(vertex_images),
        "letter_images": Value::Object(letter_images),
    })
}

fn evidence_to_value(e: &BalanceEvidence) -> Value {
    match e {
        BalanceEvidence::BothFiniteOrder { order } => json!({
            "kind": "both_finite_order",
            "order": bigint_to_value(order),
        }),
        BalanceEvidence::TrivialIntersection => json!({ "kind": "trivial_intersection" }),
        BalanceEvidence::PowerConjugate { m, eps } => json!({
            "kind": "power_conjugate",
            "m": bigint_to_value(m),
            "eps": *eps,
        }),
    }
}

fn finiteness_to_value(r: &FinitenessResult) -> Value {
    match r {
        FinitenessResult::Finite { order, elements } => json!({
            "finite": true,
            "order": order,
            "elements": elements.iter().map(matrix_to_value).collect::<Vec<_>>(),
        }),
        FinitenessResult::Infinite { witness } => {
            let w = match witness {
                InfiniteWitness::InfiniteOrderElement { word } => json!({
                    "kind": "infinite_order_element",
                    "word": word,
                }),
                InfiniteWitness::ClosureExceededCap { cap } => json!({
                    "kind": "closure_exceeded_cap",
                    "cap": cap,
                }),
            };
            json!({ "finite": false, "witness": w })
        }
    }
}

fn family_to_value(f: &Family) -> Value {
    let (k, l) = f.parameters();
    match l {
        Some(l) => json!({ "name": f.name(), "k": k, "l": l }),
        None => json!({ "name": f.name(), "k": k }),
    }
}

/// Serializes a certificate as a self-describing tagged union.
pub fn certificate_to_value(c: &Certificate) -> Value {
    match c {
        Certificate::TreeCriterion { free_rank, torsion } => json!({
            "type": "tree_criterion",
            "abelianization": {
                "free_rank": free_rank,
                "torsion": torsion.iter().map(bigint_to_value).collect::<Vec<_>>(),
            },
        }),
        Certificate::BalancedCycle { tree, edge, a, b, evidence } => json!({
            "type": "balanced_cycle",
            "tree": tree,
            "edge": edge,
            "a": a.iter().map(bigint_to_value).collect::<Vec<_>>(),
            "b": b.iter().map(bigint_to_value).collect::<Vec<_>>(),
            "evidence": evidence_to_value(evidence),
        }),
        Certificate::NotBalanced { tree, edge, a, b } => json!({
            "type": "not_balanced",
            "tree": tree,
            "edge": edge,
            "a": a.iter().map(bigint_to_value).collect::<Vec<_>>(),
            "b": b.iter().map(bigint_to_value).collect::<Vec<_>>(),
        }),
        Certificate::Nli { tree, j, extended_rank } => json!({
            "type": "nli",
            "tree": tree,
            "j": j.iter().map(|r| json!({ "edge": r.pair, "inverted": r.inverted }))
                .collect::<Vec<_>>(),
            "extended_rank": extended_rank,
        }),
        Certificate::GramInfeasible { free_rank, reason } => json!({
            "type": "gram_infeasible",
            "free_rank": free_rank,
            "reason": reason,
        }),
        Certificate::WitnessVerified { tree, witness, source } => json!({
            "type": "witness_verified",
            "tree": tree,
            "source": source,
            "witness": witness_to_value(witness),
        }),
        Certificate::FamilyClosedForm { family, vrc, lr, virtually_free_by_cyclic } => json!({
            "type": "family_closed_form",
            "family": family_to_value(family),
            "vrc": vrc,
            "lr": lr,
            "virtually_free_by_cyclic": virtually_free_by_cyclic,
        }),
        Certificate::MatrixGroupFiniteness { result } => json!({
            "type": "matrix_group_finiteness",
            "result": finiteness_to_value(result),
        }),
    }
}

fn bigint_from_value(v: &Value, pointer: &str) -> Result<BigInt, DocError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| invalid(pointer, "number out of range")),
        Value::String(s) => s.parse().map_err(|_| invalid(pointer, "bad integer string")),
        _ => Err(invalid(pointer, "expected an integer")),
    }
}

fn bigints_from_value(v: &Value, pointer: &str) -> Result<Vec<BigInt>, DocError> {
    v.as_array()
        .ok_or_else(|| invalid(pointer, "expected an array"))?
        .iter()
        .map(|x| bigint_from_value(x, pointer))
        .collect()
}

fn strings_from_value(v: &Value, pointer: &str) -> Result<Vec<String>, DocError> {
    v.as_array()
        .ok_or_else(|| invalid(pointer, "expected an array"))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| invalid(pointer, "expected a string"))
        })
        .collect()
}

fn matrix_from_value(v: &Value, pointer: &str) -> Result<IntegerMatrix, DocError> {
    let rows = v.as_array().ok_or_else(|| invalid(pointer, "expected matrix rows"))?;
    let parsed: Result<Vec<Vec<BigInt>>, DocError> =
        rows.iter().map(|r| bigints_from_value(r, pointer)).collect();
    let parsed = parsed?;
    if !parsed.is_empty() {
        let w = parsed[0].len();
        if parsed.iter().any(|r| r.len() != w) {
            return Err(invalid(pointer, "ragged matrix rows"));
        }
    }
    let r = parsed.len();
    let c = parsed.first().map_or(0, |row| row.len());
    Ok(IntegerMatrix::from_fn(r, c, |i, j| parsed[i][j].clone()))
}

fn evidence_from_value(v: &Value) -> Result<BalanceEvidence, DocError> {
    match v["kind"].as_str() {
        Some("both_finite_order") => Ok(BalanceEvidence::BothFiniteOrder {
            order: bigint_from_value(&v["order"], "evidence.order")?,
        }),
        Some("trivial_intersection") => Ok(BalanceEvidence::TrivialIntersection),
        Some("power_conjugate") => Ok(BalanceEvidence::PowerConjugate {
            m: bigint_from_value(&v["m"], "evidence.m")?,
            eps: v["eps"].as_i64().ok_or_else(|| invalid("evidence.eps", "expected ±1"))? as i8,
        }),
        _ => Err(invalid("evidence.kind", "unknown evidence kind")),
    }
}

fn family_from_value(v: &Value) -> Result<Family, DocError> {
    let k = v["k"].as_i64().ok_or_else(|| invalid("family.k", "expected an integer"))?;
    let l = v["l"].as_i64();
    match (v["name"].as_str(), l) {
        (Some("bs"), Some(l)) => Ok(Family::Bs { k, l }),
        (Some("gk"), _) => Ok(Family::Gk { k }),
        (Some("gkl"), Some(l)) => Ok(Family::Gkl { k, l }),
        (Some("hk"), _) => Ok(Family::Hk { k }),
        _ => Err(invalid("family", "unknown family record")),
    }
}

fn finiteness_from_value(v: &Value) -> Result<FinitenessResult, DocError> {
    match v["finite"].as_bool() {
        Some(true) => {
            let order = v["order"]
                .as_u64()
                .ok_or_else(|| invalid("result.order", "expected a count"))? as usize;
            let elements = v["elements"]
                .as_array()
                .ok_or_else(|| invalid("result.elements", "expected matrices"))?
                .iter()
                .map(|m| matrix_from_value(m, "result.elements"))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FinitenessResult::Finite { order, elements })
        }
        Some(false) => {
            let w = &v["witness"];
            match w["kind"].as_str() {
                Some("infinite_order_element") => {
                    let word = w["word"]
                        .as_array()
                        .ok_or_else(|| invalid("witness.word", "expected indices"))?
                        .iter()
                        .map(|x| {
                            x.as_u64()
                                .map(|n| n as usize)
                                .ok_or_else(|| invalid("witness.word", "expected indices"))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(FinitenessResult::Infinite {
                        witness: InfiniteWitness::InfiniteOrderElement { word },
                    })
                }
                Some("closure_exceeded_cap") => Ok(FinitenessResult::Infinite {
                    witness: InfiniteWitness::ClosureExceededCap {
                        cap: w["cap"]
                            .as_u64()
                            .ok_or_else(|| invalid("witness.cap", "expected a count"))?,
                    },
                }),
                _ => Err(invalid("witness.kind", "unknown witness kind")),
            }
        }
        None => Err(invalid("result.finite", "expected a boolean")),
    }
}

/// Parses a certificate (the inverse of [`certificate_to_value`]).
pub fn parse_certificate(v: &Value) -> Result<Certificate, DocError> {
    match v["type"].as_str() {
        Some("tree_criterion") => Ok(Certificate::TreeCriterion {
            free_rank: v["abelianization"]["free_rank"]
                .as_u64()
                .ok_or_else(|| invalid("abelianization.free_rank", "expected a count"))?
                as usize,
            torsion: bigints_from_value(&v["abelianization"]["torsion"], "abelianization.torsion")?,
        }),
        Some("balanced_cycle") => Ok(Certificate::BalancedCycle {
            tree: strings_from_value(&v["tree"], "tree")?,
            edge: v["edge"].as_str().unwrap_or_default().to_string(),
            a: bigints_from_value(&v["a"], "a")?,
            b: bigints_from_value(&v["b"], "b")?,
            evidence: evidence_from_value(&v["evidence"])?,
        }),
        Some("not_balanced") => Ok(Certificate::NotBalanced {
            tree: strings_from_value(&v["tree"], "tree")?,
            edge: v["edge"].as_str().unwrap_or_default().to_string(),
            a: bigints_from_value(&v["a"], "a")?,
            b: bigints_from_value(&v["b"], "b")?,
        }),
        Some("nli") => {
            let j = v["j"]
                .as_array()
                .ok_or_else(|| invalid("j", "expected an array"))?
                .iter()
                .map(|r| {
                    Ok(crate::deciders::OfftreeRef {
                        pair: r["edge"]
                            .as_str()
                            .ok_or_else(|| invalid("j.edge", "expected an id"))?
                            .to_string(),
                        inverted: r["inverted"].as_bool().unwrap_or(false),
                    })
                })
                .collect::<Result<Vec<_>, DocError>>()?;
            Ok(Certificate::Nli {
                tree: strings_from_value(&v["tree"], "tree")?,
                j,
                extended_rank: v["extended_rank"]
                    .as_u64()
                    .ok_or_else(|| invalid("extended_rank", "expected a count"))?
                    as usize,
            })
        }
        Some("gram_infeasible") => Ok(Certificate::GramInfeasible {
            free_rank: v["free_rank"]
                .as_u64()
                .ok_or_else(|| invalid("free_rank", "expected a count"))? as usize,
            reason: v["reason"].as_str().unwrap_or_default().to_string(),
        }),
        Some("witness_verified") => Ok(Certificate::WitnessVerified {
            tree: strings_from_value(&v["tree"], "tree")?,
            witness: parse_witness(&v["witness"].to_string())?,
            source: v["source"].as_str().unwrap_or_default().to_string(),
        }),
        Some("family_closed_form") => Ok(Certificate::FamilyClosedForm {
            family: family_from_value(&v["family"])?,
            vrc: v["vrc"].as_bool().ok_or_else(|| invalid("vrc", "expected a boolean"))?,
            lr: v["lr"].as_bool(),
            virtually_free_by_cyclic: v["virtually_free_by_cyclic"].as_bool(),
        }),
        Some("matrix_group_finiteness") => Ok(Certificate::MatrixGroupFiniteness {
            result: finiteness_from_value(&v["result"])?,
        }),
        _ => Err(invalid("type", "unknown certificate type")),
    }
}

/// Parses a verdict document (the inverse of [`verdict_to_value`]).
pub fn parse_verdict(text: &str) -> Result<Verdict, DocError> {
    let v: Value = serde_json::from_str(text)?;
    let status = match v["status"].as_str() {
        Some("VRC") => crate::deciders::VerdictStatus::Vrc,
        Some("NOT_VRC") => crate::deciders::VerdictStatus::NotVrc,
        Some("LR") => crate::deciders::VerdictStatus::Lr,
        Some("NOT_LR") => crate::deciders::VerdictStatus::NotLr,
        Some("UNKNOWN") => crate::deciders::VerdictStatus::Unknown,
        _ => return Err(invalid("status", "unknown status")),
    };
    let certificate = if v["certificate"].is_null() {
        None
    } else {
        Some(parse_certificate(&v["certificate"])?)
    };
    let notes = if v["notes"].is_null() {
        Vec::new()
    } else {
        strings_from_value(&v["notes"], "notes")?
    };
    Ok(Verdict {
        status,
        certificate,
        notes,
    })
}

/// Serializes a verdict: `{"status", "certificate", "notes"}`.
pub fn verdict_to_value(v: &Verdict, quiet: bool) -> Value {
    json!({
        "status": v.status.as_str(),
        "certificate": v.certificate.as_ref().map(certificate_to_value),
        "notes": if quiet { Vec::new() } else { v.notes.clone() },
    })
}

/// Serializes the closed-form family facts.
pub fn family_facts_to_value(f: &FamilyFacts) -> Value {
    json!({
        "family": family_to_value(&f.family),
        "vrc": f.vrc,
        "lr": f.lr,
        "virtually_free_by_cyclic": f.virtually_free_by_cyclic,
        "has_encoding": f.encoding.is_some(),
    })
}

/// Serializes a verification report.
pub fn report_to_value(r: &VerificationReport) -> Value {
    let injectivity: Vec<Value> = r
        .vertex_injectivity
        .iter()
        .map(|(vid, s)| {
            json!({
                "vertex": vid,
                "injective": s.injective,
                "injective_on_free_part": s.injective_on_free_part,
                "kernel_generators": s.kernel_generators.iter()
                    .map(|k| k.iter().map(bigint_to_value).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "passes": r.passes(),
        "relations_ok": r.relations_ok(),
        "relation_failures": r.relation_failures,
        "q_finite": r.q_finite,
        "q_parts_in_group": r.q_parts_in_group,
        "vertex_injectivity": injectivity,
    })
}

/// Serialization of an element order (`"infinity"` or the number).
pub fn order_to_value(o: &crate::fgab::ElementOrder) -> Value {
    match o {
        crate::fgab::ElementOrder::Finite(n) => bigint_to_value(n),
        crate::fgab::ElementOrder::Infinite => json!("infinity"),
    }
}
