//! Command-line front end for the graph-of-abelian-groups deciders.
//!
//! Every command reads JSON documents, dispatches to the library and emits
//! either a human-readable trace (default) or deterministic machine JSON
//! (`--format json`). Exit code 0 means a result was produced (UNKNOWN is
//! a result); exit code 2 means the input was invalid.

use agog_core::britton::{Britton, Classification};
use agog_core::deciders::{
    self, decide_vrc, family_certificate, family_verdicts, Family, VrcOptions,
};
use agog_core::docs;
use agog_core::graph::{
    euler_characteristic, spanning_tree_canonical, spanning_tree_explicit, tree_abelianization,
    GraphOfGroups, SpanningTree,
};
use agog_core::linalg::IntegerMatrix;
use agog_core::witness;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "agog",
    version,
    about = "Deciders for virtual retraction properties of fundamental groups of finite graphs of finitely generated abelian groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Suppress the human-readable trace notes.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct TreeArgs {
    /// Spanning tree: `canonical` or a path to a JSON array of edge ids.
    #[arg(long, default_value = "canonical")]
    tree: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph-of-groups document against all structural axioms.
    Validate {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Decide property (VRC) for the fundamental group.
    Vrc {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        tree: TreeArgs,
        /// Cap on the spanning-tree enumeration.
        #[arg(long, default_value_t = 256)]
        tree_cap: usize,
        /// Witness document to feed the verification step.
        #[arg(long)]
        witness: Option<String>,
        /// Report the near-linear-independence outcome for every
        /// enumerated tree in the notes.
        #[arg(long)]
        all_trees: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Decide (LR) for an amalgam of Z^n-by-finite groups over Z^n.
    LrAmalgam {
        /// JSON document {"n": int, "x": [[int]], "y": [[int]]}.
        #[arg(long)]
        input: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Decide (LR) for an HNN-extension of an abelian group.
    LrHnn {
        /// JSON document {"base", "subgroup", "embedding", "xi"} with
        /// groups as {"free_rank", "torsion"} and matrices as arrays of
        /// rows (columns = generator images).
        #[arg(long)]
        input: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Balancedness test for a graph with Euler characteristic 0.
    Balanced {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        tree: TreeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Britton-reduce a word.
    Reduce {
        #[arg(long)]
        input: String,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        tree: TreeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Order of the element represented by a word.
    Order {
        #[arg(long)]
        input: String,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        tree: TreeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Elliptic/hyperbolic classification of a word.
    Classify {
        #[arg(long)]
        input: String,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        tree: TreeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Build a witness homomorphism from near linear independence.
    WitnessBuild {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        tree: TreeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Verify a witness document against a graph of groups.
    WitnessVerify {
        #[arg(long)]
        input: String,
        #[arg(long)]
        witness: String,
        #[command(flatten)]
        tree: TreeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Closed-form facts for the benchmark families.
    Family {
        /// Family name: bs, gk, gkl or hk.
        #[arg(long)]
        name: String,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, allow_negative_numbers = true)]
        l: Option<i64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tree abelianization: canonical form and vertex maps.
    Abelianize {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        tree: TreeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

/// Invalid input: message to stderr, exit 2.
fn fail(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    2
}

fn read_file(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))
}

fn load_graph(path: &str) -> Result<GraphOfGroups, String> {
    let text = read_file(path)?;
    docs::parse_graph(&text).map_err(|e| format!("{path}: {e}"))
}

fn load_tree(g: &GraphOfGroups, spec: &str) -> Result<SpanningTree, String> {
    if spec == "canonical" {
        return spanning_tree_canonical(g.graph()).map_err(|e| e.to_string());
    }
    let text = read_file(spec)?;
    let ids: Vec<String> =
        serde_json::from_str(&text).map_err(|e| format!("{spec}: expected a JSON array of edge ids: {e}"))?;
    spanning_tree_explicit(g.graph(), &ids).map_err(|e| format!("{spec}: {e}"))
}

fn validated(g: GraphOfGroups) -> Result<GraphOfGroups, String> {
    let violations = g.validate();
    if violations.is_empty() {
        Ok(g)
    } else {
        Err(format!(
            "invalid graph: {}",
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
        ))
    }
}

fn matrix_from_rows(rows: &[Vec<i64>], what: &str) -> Result<IntegerMatrix, String> {
    if !rows.is_empty() {
        let w = rows[0].len();
        if rows.iter().any(|r| r.len() != w) {
            return Err(format!("{what}: ragged matrix rows"));
        }
    }
    Ok(IntegerMatrix::from_rows_i64(rows))
}

fn emit(out: &OutputArgs, value: Value, text: impl FnOnce() -> String) -> i32 {
    match out.format {
        Format::Json => println!("{value}"),
        Format::Text => println!("{}", text()),
    }
    0
}

fn verdict_text(v: &deciders::Verdict, quiet: bool) -> String {
    let mut lines = vec![format!("status: {}", v.status.as_str())];
    if let Some(cert) = &v.certificate {
        lines.push(format!("certificate: {}", cert.kind()));
    }
    if !quiet {
        for n in &v.notes {
            lines.push(format!("  - {n}"));
        }
    }
    lines.join("\n")
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Validate { input, out } => {
            let g = match load_graph(&input) {
                Ok(g) => g,
                Err(e) => return fail(e),
            };
            let violations = g.validate();
            let value = json!({
                "valid": violations.is_empty(),
                "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            });
            emit(&out, value, || {
                if violations.is_empty() {
                    "valid".to_string()
                } else {
                    violations
                        .iter()
                        .map(|v| format!("violation: {v}"))
                        .collect::<Vec<_>>()
                        .join("\n")
                }
            })
        }
        Command::Vrc { input, tree, tree_cap, witness, all_trees, out } => {
            let g = match load_graph(&input) {
                Ok(g) => g,
                Err(e) => return fail(e),
            };
            let mut options = VrcOptions {
                tree_cap,
                ..Default::default()
            };
            if tree.tree != "canonical" {
                match load_tree(&g, &tree.tree) {
                    Ok(t) => options.tree = Some(t),
                    Err(e) => return fail(e),
                }
            }
            if let Some(path) = witness {
                let text = match read_file(&path) {
                    Ok(t) => t,
                    Err(e) => return fail(e),
                };
                match docs::parse_witness(&text) {
                    Ok(w) => options.witnesses.push(w),
                    Err(e) => return fail(format!("{path}: {e}")),
                }
            }
            let mut verdict = match decide_vrc(&g, &options) {
                Ok(v) => v,
                Err(e) => return fail(e),
            };
            if all_trees {
                let (trees, _) = agog_core::graph::enumerate_spanning_trees(g.graph(), tree_cap.max(1));
                for t in &trees {
                    let ab = tree_abelianization(&g, t);
                    let nli = witness::offtree_free_vectors(&ab)
                        .and_then(|vs| {
                            let qv: Vec<_> = vs.into_iter().map(|(_, v)| v).collect();
                            deciders::near_lin_indep(&qv)
                        })
                        .is_some();
                    verdict.notes.push(format!(
                        "tree {:?}: near linear independence {}",
                        t.tree_pair_ids(g.graph()),
                        if nli { "holds" } else { "fails" }
                    ));
                }
            }
            let value = docs::verdict_to_value(&verdict, out.quiet);
            emit(&out, value, || verdict_text(&verdict, out.quiet))
        }
        Command::LrAmalgam { input, out } => {
            let text = match read_file(&input) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            #[derive(serde::Deserialize)]
            struct AmalgamDoc {
                n: usize,
                x: Vec<Vec<i64>>,
                y: Vec<Vec<i64>>,
            }
            let doc: AmalgamDoc = match serde_json::from_str(&text) {
                Ok(d) => d,
                Err(e) => return fail(format!("{input}: {e}")),
            };
            let (x, y) = match (matrix_from_rows(&doc.x, "x"), matrix_from_rows(&doc.y, "y")) {
                (Ok(x), Ok(y)) => (x, y),
                (Err(e), _) | (_, Err(e)) => return fail(format!("{input}: {e}")),
            };
            let verdict = match deciders::decide_lr_amalgam_virt_zn(doc.n, &x, &y) {
                Ok(v) => v,
                Err(e) => return fail(e),
            };
            let value = docs::verdict_to_value(&verdict, out.quiet);
            emit(&out, value, || verdict_text(&verdict, out.quiet))
        }
        Command::LrHnn { input, out } => {
            let text = match read_file(&input) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            #[derive(serde::Deserialize)]
            struct GroupDoc {
                free_rank: usize,
                #[serde(default)]
                torsion: Vec<i64>,
            }
            #[derive(serde::Deserialize)]
            struct HnnDoc {
                base: GroupDoc,
                subgroup: GroupDoc,
                embedding: Vec<Vec<i64>>,
                xi: Vec<Vec<i64>>,
            }
            let doc: HnnDoc = match serde_json::from_str(&text) {
                Ok(d) => d,
                Err(e) => return fail(format!("{input}: {e}")),
            };
            let to_group = |g: &GroupDoc| {
                agog_core::FgAbGroup::new(
                    g.free_rank,
                    g.torsion.iter().map(|&d| d.into()).collect(),
                )
            };
            let (base, subgroup) = match (to_group(&doc.base), to_group(&doc.subgroup)) {
                (Ok(b), Ok(s)) => (b, s),
                (Err(e), _) | (_, Err(e)) => return fail(format!("{input}: {e}")),
            };
            let emb_matrix = match matrix_from_rows(&doc.embedding, "embedding") {
                Ok(m) => m,
                Err(e) => return fail(format!("{input}: {e}")),
            };
            let xi_matrix = match matrix_from_rows(&doc.xi, "xi") {
                Ok(m) => m,
                Err(e) => return fail(format!("{input}: {e}")),
            };
            let embedding =
                match agog_core::AbHom::from_matrix(subgroup.clone(), base.clone(), &emb_matrix) {
                    Ok(h) => h,
                    Err(e) => return fail(format!("{input}: embedding: {e}")),
                };
            let xi = match agog_core::AbHom::from_matrix(
                subgroup.clone(),
                subgroup.clone(),
                &xi_matrix,
            ) {
                Ok(h) => h,
                Err(e) => return fail(format!("{input}: xi: {e}")),
            };
            let data = match deciders::HnnAbelianData::new(base, subgroup, embedding, xi) {
                Ok(d) => d,
                Err(e) => return fail(e),
            };
            let verdict = match deciders::decide_lr_hnn_abelian(&data) {
                Ok(v) => v,
                Err(e) => return fail(e),
            };
            let value = docs::verdict_to_value(&verdict, out.quiet);
            emit(&out, value, || verdict_text(&verdict, out.quiet))
        }
        Command::Balanced { input, tree, out } => {
            let g = match load_graph(&input).and_then(validated) {
                Ok(g) => g,
                Err(e) => return fail(e),
            };
            let t = match load_tree(&g, &tree.tree) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let off = t.offtree_positive(g.graph());
            if off.len() != 1 {
                return fail("balancedness test needs exactly one off-tree edge pair");
            }
            let outcome = match deciders::balanced_offtree_cycle(&g, &t, off[0]) {
                Ok(o) => o,
                Err(e) => return fail(e),
            };
            let value = json!({
                "balanced": outcome.balanced,
                "certificate": docs::certificate_to_value(&outcome.certificate),
            });
            emit(&out, value, || {
                format!("balanced: {}", outcome.balanced)
            })
        }
        Command::Reduce { input, word, tree, out } => {
            with_word(&input, &word, &tree, |g, t, br, w| {
                let reduced = br.reduce(&w);
                let value = json!({
                    "reduced": docs::word_to_value(g, &reduced),
                    "length": reduced.len(),
                    "trivial": reduced.is_empty(),
                });
                emit(&out, value, || {
                    format!(
                        "reduced length {}: {}",
                        reduced.len(),
                        docs::word_to_value(g, &reduced)
                    )
                });
                let _ = t;
                0
            })
        }
        Command::Order { input, word, tree, out } => {
            with_word(&input, &word, &tree, |_, _, br, w| {
                let order = br.word_order(&w);
                let value = json!({ "order": docs::order_to_value(&order) });
                emit(&out, value, || format!("order: {order}"))
            })
        }
        Command::Classify { input, word, tree, out } => {
            with_word(&input, &word, &tree, |g, _, br, w| {
                let value = match br.classify(&w) {
                    Classification::Elliptic { vertex, elem } => json!({
                        "class": "elliptic",
                        "vertex": g.graph().vertex_id(vertex),
                        "representative": elem.lift().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    }),
                    Classification::Hyperbolic => json!({ "class": "hyperbolic" }),
                };
                let text = value["class"].as_str().unwrap_or_default().to_string();
                emit(&out, value, || text)
            })
        }
        Command::WitnessBuild { input, tree, out } => {
            let g = match load_graph(&input).and_then(validated) {
                Ok(g) => g,
                Err(e) => return fail(e),
            };
            let t = match load_tree(&g, &tree.tree) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let ab = tree_abelianization(&g, &t);
            let vectors = witness::offtree_free_vectors(&ab);
            let j = vectors.as_ref().and_then(|vs| {
                let qv: Vec<_> = vs.iter().map(|(_, v)| v.clone()).collect();
                deciders::near_lin_indep(&qv)
            });
            match j {
                Some(j) => match witness::build_nli_witness(&g, &ab, &j) {
                    Ok(w) => {
                        let value = json!({
                            "built": true,
                            "witness": docs::witness_to_value(&w),
                        });
                        emit(&out, value, || docs::witness_to_value(&w).to_string())
                    }
                    Err(e) => fail(e),
                },
                None => {
                    let value = json!({
                        "built": false,
                        "reason": "off-tree images are not nearly linearly independent for this tree",
                    });
                    emit(&out, value, || {
                        "not built: off-tree images are not nearly linearly independent".into()
                    })
                }
            }
        }
        Command::WitnessVerify { input, witness: wpath, tree, out } => {
            let g = match load_graph(&input).and_then(validated) {
                Ok(g) => g,
                Err(e) => return fail(e),
            };
            let t = match load_tree(&g, &tree.tree) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let text = match read_file(&wpath) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let w = match docs::parse_witness(&text) {
                Ok(w) => w,
                Err(e) => return fail(format!("{wpath}: {e}")),
            };
            let report = match witness::verify_witness(&g, &t, &w) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            let value = docs::report_to_value(&report);
            emit(&out, value, || format!("passes: {}", report.passes()))
        }
        Command::Family { name, k, l, out } => {
            let family = match (name.as_str(), l) {
                ("bs", Some(l)) => Family::Bs { k, l },
                ("bs", None) => return fail("family bs needs --l"),
                ("gk", _) => Family::Gk { k },
                ("gkl", Some(l)) => Family::Gkl { k, l },
                ("gkl", None) => return fail("family gkl needs --l"),
                ("hk", _) => Family::Hk { k },
                (other, _) => return fail(format!("unknown family `{other}`")),
            };
            let facts = match family_verdicts(&family) {
                Ok(f) => f,
                Err(e) => return fail(e),
            };
            let mut value = docs::family_facts_to_value(&facts);
            value["certificate"] = docs::certificate_to_value(&family_certificate(&facts));
            emit(&out, value, || {
                let mut s = format!("vrc: {}", facts.vrc);
                if let Some(lr) = facts.lr {
                    s.push_str(&format!("\nlr: {lr}"));
                }
                if let Some(v) = facts.virtually_free_by_cyclic {
                    s.push_str(&format!("\nvirtually_free_by_cyclic: {v}"));
                }
                s
            })
        }
        Command::Abelianize { input, tree, out } => {
            let g = match load_graph(&input) {
                Ok(g) => g,
                Err(e) => return fail(e),
            };
            let t = match load_tree(&g, &tree.tree) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let violations = g.validate();
            if !violations.is_empty() {
                return fail(format!(
                    "invalid graph: {}",
                    violations
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join("; ")
                ));
            }
            let ab = tree_abelianization(&g, &t);
            let graph = g.graph();
            let maps: Vec<Value> = (0..graph.vertex_count())
                .map(|v| {
                    json!({
                        "vertex": graph.vertex_id(v),
                        "images": ab.vertex_map(v).images().iter()
                            .map(|img| img.lift().iter().map(|x| x.to_string()).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            let value = json!({
                "tree": t.tree_pair_ids(graph),
                "euler_characteristic": euler_characteristic(graph).to_string(),
                "abelianization": {
                    "free_rank": ab.group().free_rank(),
                    "torsion": ab.group().torsion().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                },
                "vertex_maps": maps,
            });
            emit(&out, value, || {
                format!(
                    "A = Z^{} x {:?}",
                    ab.group().free_rank(),
                    ab.group().torsion().iter().map(|x| x.to_string()).collect::<Vec<_>>()
                )
            })
        }
    }
}

/// Loads graph, tree and word, validates the graph, and hands off.
fn with_word(
    input: &str,
    word_path: &str,
    tree: &TreeArgs,
    f: impl FnOnce(&GraphOfGroups, &SpanningTree, &Britton, agog_core::britton::Word) -> i32,
) -> i32 {
    let g = match load_graph(input) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let violations = g.validate();
    if !violations.is_empty() {
        return fail(format!(
            "invalid graph: {}",
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
        ));
    }
    let t = match load_tree(&g, &tree.tree) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let text = match read_file(word_path) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let w = match docs::parse_word(&g, &t, &text) {
        Ok(w) => w,
        Err(e) => return fail(format!("{word_path}: {e}")),
    };
    let br = Britton::new(&g, &t);
    f(&g, &t, &br, w)
}
