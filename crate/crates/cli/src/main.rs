//! Command line front end.
//!
//! Every verb is a thin pipeline over the core library: parse inputs, run
//! one operation, print text or JSON (`--json`, schema 1). Output bytes are
//! deterministic for fixed inputs. Exit codes: 0 success, 2 domain error
//! (bad inputs, malformed files), 3 resource-cap error.

mod dot;
mod formats;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use homkit_core::bounds;
use homkit_core::exponential::{cartesian_exponential, categorical_exponential};
use homkit_core::graph::{
    cartesian_product, categorical_product, coproduct, enumerate_homomorphisms,
};
use homkit_core::hom::enumerate_hom;
use homkit_core::homotopy::{
    apply_fold, are_a_homotopic, are_x_homotopic, find_folds, homotopy_classes, is_dismantlable,
    is_x_homotopy_equivalence, stiff_reduce, FoldTrace, HomotopyWitness,
};
use homkit_core::topology::{
    betti_gf2, connectivity_from_betti, order_complex, path_components, Connectivity,
    SimplicialComplex,
};
use homkit_core::{Caps, Graph, GraphMap};

#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Resource(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(msg) | CliError::Resource(msg) => write!(f, "{msg}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "homkit",
    version,
    about = "Products, exponentials, multihomomorphism posets, homotopy decisions and chromatic bounds for finite graphs",
    long_about = "Products, exponentials, multihomomorphism posets, homotopy decisions and \
chromatic bounds for finite graphs.\n\nGraph files (.grf) use 0-based dense vertex ids: when \
transcribing an edge list labeled 1..n, shift every label down by one. Connectivity values \
are homological estimates over GF(2).\n\nResource caps: override with repeated --cap NAME=VALUE \
or the HOMKIT_CAP environment variable (comma-separated NAME=VALUE pairs). Cap names: \
search_nodes, exp_vertices, hom_elements, faces, iso_vertices, chi_vertices, odd_cycle_vertices."
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Emit JSON (schema 1) instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Override a resource cap, e.g. --cap search_nodes=20000000. Repeatable.
    #[arg(long, global = true, value_name = "NAME=VALUE")]
    cap: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Categorical product of two graphs (cartesian with --cartesian).
    Product {
        g: PathBuf,
        h: PathBuf,
        #[arg(long)]
        cartesian: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print DOT instead of .grf.
        #[arg(long)]
        dot: bool,
    },
    /// Disjoint union of two graphs.
    Coproduct {
        g: PathBuf,
        h: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        dot: bool,
    },
    /// Exponential graph H^G: vertices are maps from G to H (all vertex
    /// maps; homomorphisms only with --cartesian).
    Exp {
        g: PathBuf,
        h: PathBuf,
        #[arg(long)]
        cartesian: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the vertex decode table (defaults to the output
        /// path with extension .dec when --output is given).
        #[arg(long)]
        dec: Option<PathBuf>,
        #[arg(long)]
        dot: bool,
    },
    /// Enumerate the multihomomorphism poset Hom(G, H) as a .pos dump.
    Hom {
        g: PathBuf,
        h: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count homotopy classes of maps G -> H.
    Classes { g: PathBuf, h: PathBuf },
    /// Decide whether two maps are homotopic; prints a witness path.
    /// Default is the categorical structure; --cartesian uses pointwise
    /// adjacency (reflexive graphs), optionally based via --base X Y.
    Homotopic {
        g: PathBuf,
        h: PathBuf,
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        cartesian: bool,
        /// Basepoint pair: domain vertex and its required image.
        #[arg(long, num_args = 2, value_names = ["X", "Y"], requires = "cartesian")]
        base: Option<Vec<usize>>,
    },
    /// List fold candidates, or apply one with --apply V U.
    Fold {
        g: PathBuf,
        #[arg(long, num_args = 2, value_names = ["V", "U"])]
        apply: Option<Vec<usize>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        dot: bool,
    },
    /// Greedily fold down to a stiff core; prints the trace and the core.
    Stiff {
        g: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide dismantlability; prints the fold trace on success.
    Dismantlable { g: PathBuf },
    /// Search for a homotopy equivalence G -> H and its inverse.
    Equiv { g: PathBuf, h: PathBuf },
    /// Topological lower bounds on the chromatic number.
    Bound {
        g: PathBuf,
        #[arg(long)]
        lovasz: bool,
        /// Odd-cycle bound with cycle length 2r+1. Repeatable.
        #[arg(long, value_name = "R")]
        bk: Vec<usize>,
        #[arg(long)]
        chi: bool,
    },
    /// Exact chromatic number.
    Chi { g: PathBuf },
    /// Invariants (components, GF(2) Betti numbers, Euler characteristic,
    /// connectivity estimate) of the order complex of Hom(G, H), given two
    /// .grf files, or of a complex given one .smp file.
    Invariants {
        #[arg(num_args = 1..=2)]
        inputs: Vec<PathBuf>,
        /// Also dump the complex (maximal faces) to this .smp file.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        dot: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match build_caps(&cli.cap) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(cli, &caps) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn build_caps(overrides: &[String]) -> Result<Caps, CliError> {
    let mut caps = Caps::default();
    let mut apply = |spec: &str| -> Result<(), CliError> {
        let Some((name, value)) = spec.split_once('=') else {
            return Err(CliError::Domain(format!(
                "cap override '{spec}' is not NAME=VALUE"
            )));
        };
        let value: u64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Domain(format!("cap value in '{spec}' is not a number")))?;
        if !caps.set_by_name(name.trim(), value) {
            return Err(CliError::Domain(format!(
                "unknown cap '{}'; valid caps: {}",
                name.trim(),
                Caps::NAMES.join(", ")
            )));
        }
        Ok(())
    };
    if let Ok(env) = std::env::var("HOMKIT_CAP") {
        for part in env.split(',').filter(|p| !p.trim().is_empty()) {
            apply(part.trim())?;
        }
    }
    for spec in overrides {
        apply(spec)?;
    }
    Ok(caps)
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Domain(format!("{}: {}", path.display(), e))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn graph_json(g: &Graph) -> serde_json::Value {
    json!({
        "n": g.vertex_count(),
        "edges": g.edges(),
    })
}

fn emit_graph(
    g: &Graph,
    output: Option<&Path>,
    dot: bool,
    json_mode: bool,
) -> Result<(), CliError> {
    let text = if dot {
        dot::graph_to_dot(g)
    } else if json_mode {
        let mut v = graph_json(g);
        v["schema"] = json!(1);
        format!("{v}\n")
    } else {
        formats::graph_to_string(g)
    };
    emit(&text, output)
}

fn witness_text(w: &HomotopyWitness) -> String {
    let mut out = String::new();
    for (i, step) in w.path.iter().enumerate() {
        out.push_str(&format!("# step {i}\n"));
        out.push_str(&formats::map_to_string(step));
    }
    out
}

fn witness_json(w: &HomotopyWitness) -> serde_json::Value {
    json!(w
        .path
        .iter()
        .map(|m| m.image().to_vec())
        .collect::<Vec<_>>())
}

fn trace_text(trace: &FoldTrace) -> String {
    let mut out = String::new();
    for step in &trace.steps {
        out.push_str(&format!("fold {} {}\n", step.removed, step.target));
    }
    out
}

fn connectivity_json(conn: Connectivity) -> (serde_json::Value, serde_json::Value) {
    match conn {
        Connectivity::AtLeast(d) => (serde_json::Value::Null, json!(d)),
        other => (json!(other.lower_bound()), serde_json::Value::Null),
    }
}

fn connectivity_text(conn: Connectivity) -> String {
    match conn {
        Connectivity::AtLeast(d) => format!(">={d} (all computed Betti numbers vanish)"),
        other => format!("{}", other.lower_bound()),
    }
}

fn bound_value_text(entry: &bounds::BoundEntry) -> String {
    if entry.open_ended {
        format!(">={}", entry.bound)
    } else {
        format!("{}", entry.bound)
    }
}

fn run(cli: Cli, caps: &Caps) -> Result<(), CliError> {
    let json_mode = cli.json;
    match cli.command {
        Cmd::Product {
            g,
            h,
            cartesian,
            output,
            dot,
        } => {
            let g = formats::parse_graph(&g)?;
            let h = formats::parse_graph(&h)?;
            let product = if cartesian {
                cartesian_product(&g, &h)
            } else {
                categorical_product(&g, &h).0
            };
            emit_graph(&product, output.as_deref(), dot, json_mode)
        }
        Cmd::Coproduct { g, h, output, dot } => {
            let g = formats::parse_graph(&g)?;
            let h = formats::parse_graph(&h)?;
            let (sum, _, _) = coproduct(&g, &h);
            emit_graph(&sum, output.as_deref(), dot, json_mode)
        }
        Cmd::Exp {
            g,
            h,
            cartesian,
            output,
            dec,
            dot,
        } => {
            let g = formats::parse_graph(&g)?;
            let h = formats::parse_graph(&h)?;
            let exp = if cartesian {
                cartesian_exponential(&g, &h, caps)?
            } else {
                categorical_exponential(&g, &h, caps)?
            };
            let dec_path = dec.or_else(|| output.as_deref().map(|p| p.with_extension("dec")));
            emit_graph(exp.graph(), output.as_deref(), dot, json_mode)?;
            if let Some(path) = dec_path {
                emit(&formats::decode_table_to_string(&exp), Some(&path))?;
            }
            Ok(())
        }
        Cmd::Hom { g, h, output } => {
            let g = formats::parse_graph(&g)?;
            let h = formats::parse_graph(&h)?;
            let poset = enumerate_hom(&g, &h, caps)?;
            let text = if json_mode {
                let elements: Vec<Vec<Vec<usize>>> = poset
                    .elements()
                    .iter()
                    .map(|e| e.sets().iter().map(|s| s.to_vec()).collect())
                    .collect();
                format!(
                    "{}\n",
                    json!({
                        "schema": 1,
                        "count": poset.len(),
                        "atoms": poset.atoms(),
                        "elements": elements,
                    })
                )
            } else {
                formats::poset_to_string(&poset)
            };
            emit(&text, output.as_deref())
        }
        Cmd::Classes { g, h } => {
            let g = formats::parse_graph(&g)?;
            let h = formats::parse_graph(&h)?;
            let classes = homotopy_classes(&g, &h, caps)?;
            if json_mode {
                println!(
                    "{}",
                    json!({
                        "schema": 1,
                        "classes": classes.count,
                        "sizes": classes.class_sizes(),
                    })
                );
            } else {
                println!(
                    "classes: {} (sizes: {:?})",
                    classes.count,
                    classes.class_sizes()
                );
            }
            Ok(())
        }
        Cmd::Homotopic {
            g,
            h,
            first,
            second,
            cartesian,
            base,
        } => {
            let g = formats::parse_graph(&g)?;
            let h = formats::parse_graph(&h)?;
            let f1 = formats::parse_map(&first, &g, &h)?;
            let f2 = formats::parse_map(&second, &g, &h)?;
            let witness = if cartesian {
                let base = base.map(|b| (b[0], b[1]));
                are_a_homotopic(&g, &h, &f1, &f2, base, caps)?
            } else {
                are_x_homotopic(&g, &h, &f1, &f2, caps)?
            };
            if json_mode {
                println!(
                    "{}",
                    json!({
                        "schema": 1,
                        "homotopic": witness.is_some(),
                        "witness": witness.as_ref().map(witness_json),
                    })
                );
            } else {
                match &witness {
                    Some(w) => {
                        println!("homotopic: true");
                        print!("{}", witness_text(w));
                    }
                    None => println!("homotopic: false"),
                }
            }
            Ok(())
        }
        Cmd::Fold {
            g,
            apply,
            output,
            dot,
        } => {
            let g = formats::parse_graph(&g)?;
            match apply {
                Some(pair) => {
                    let result = apply_fold(&g, pair[0], pair[1])?;
                    emit_graph(&result.folded, output.as_deref(), dot, json_mode)
                }
                None => {
                    let folds = find_folds(&g);
                    if json_mode {
                        println!("{}", json!({ "schema": 1, "folds": folds }));
                    } else {
                        for (v, u) in folds {
                            println!("fold {v} {u}");
                        }
                    }
                    Ok(())
                }
            }
        }
        Cmd::Stiff { g, output } => {
            let g = formats::parse_graph(&g)?;
            let (core, trace) = stiff_reduce(&g);
            if json_mode {
                let steps: Vec<(usize, usize)> =
                    trace.steps.iter().map(|s| (s.removed, s.target)).collect();
                let mut v = json!({ "schema": 1, "steps": steps });
                v["core"] = graph_json(&core);
                println!("{v}");
                Ok(())
            } else {
                let mut text = trace_text(&trace);
                text.push_str("# stiff core\n");
                text.push_str(&formats::graph_to_string(&core));
                emit(&text, output.as_deref())
            }
        }
        Cmd::Dismantlable { g } => {
            let g = formats::parse_graph(&g)?;
            match is_dismantlable(&g) {
                Some(trace) => {
                    if json_mode {
                        let steps: Vec<(usize, usize)> =
                            trace.steps.iter().map(|s| (s.removed, s.target)).collect();
                        println!(
                            "{}",
                            json!({ "schema": 1, "dismantlable": true, "steps": steps })
                        );
                    } else {
                        println!("true");
                        print!("{}", trace_text(&trace));
                    }
                }
                None => {
                    if json_mode {
                        println!("{}", json!({ "schema": 1, "dismantlable": false }));
                    } else {
                        println!("false");
                    }
                }
            }
            Ok(())
        }
        Cmd::Equiv { g, h } => {
            let g = formats::parse_graph(&g)?;
            let h = formats::parse_graph(&h)?;
            let mut found: Option<(GraphMap, GraphMap)> = None;
            for f in enumerate_homomorphisms(&g, &h, caps)? {
                if let Some(inverse) = is_x_homotopy_equivalence(&g, &h, &f, caps)? {
                    found = Some((f, inverse));
                    break;
                }
            }
            if json_mode {
                println!(
                    "{}",
                    json!({
                        "schema": 1,
                        "equivalent": found.is_some(),
                        "forward": found.as_ref().map(|(f, _)| f.image().to_vec()),
                        "inverse": found.as_ref().map(|(_, r)| r.image().to_vec()),
                    })
                );
            } else {
                match &found {
                    Some((f, r)) => {
                        println!("equivalent: true");
                        println!("# forward");
                        print!("{}", formats::map_to_string(f));
                        println!("# inverse");
                        print!("{}", formats::map_to_string(r));
                    }
                    None => println!("equivalent: false"),
                }
            }
            Ok(())
        }
        Cmd::Bound {
            g,
            lovasz,
            bk,
            chi,
        } => {
            let g = formats::parse_graph(&g)?;
            // With no selection, report the edge bound and the chromatic number.
            let (lovasz, chi) = if !lovasz && bk.is_empty() && !chi {
                (true, true)
            } else {
                (lovasz, chi)
            };
            let report = bounds::bound_report(&g, chi, lovasz, &bk, caps)?;
            if json_mode {
                let lov = report.lovasz.as_ref().map(|entry| {
                    let (conn, at_least) = connectivity_json(entry.connectivity);
                    json!({
                        "bound": entry.bound,
                        "open_ended": entry.open_ended,
                        "conn_est": conn,
                        "conn_est_at_least": at_least,
                    })
                });
                let odd: Vec<_> = report
                    .odd_cycle
                    .iter()
                    .map(|(r, entry)| {
                        json!({ "r": r, "bound": entry.bound, "open_ended": entry.open_ended })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({
                        "schema": 1,
                        "graph": report.name,
                        "chi": report.chi,
                        "lovasz": lov,
                        "odd_cycle": odd,
                        "tight": report.lovasz_tight(),
                        "estimate": "homological-gf2",
                    })
                );
            } else {
                let mut parts = Vec::new();
                if let Some(entry) = &report.lovasz {
                    parts.push(format!("lovasz: {}", bound_value_text(entry)));
                }
                for (r, entry) in &report.odd_cycle {
                    parts.push(format!("bk[{r}]: {}", bound_value_text(entry)));
                }
                if let Some(chi) = report.chi {
                    parts.push(format!("chi: {chi}"));
                }
                if report.lovasz_tight() == Some(true) {
                    parts.push("tight".to_string());
                }
                println!("{}", parts.join(", "));
            }
            Ok(())
        }
        Cmd::Chi { g } => {
            let g = formats::parse_graph(&g)?;
            let chi = bounds::chromatic_number(&g, caps)?;
            if json_mode {
                println!("{}", json!({ "schema": 1, "chi": chi }));
            } else {
                println!("{chi}");
            }
            Ok(())
        }
        Cmd::Invariants {
            inputs,
            output,
            dot,
        } => {
            let complex: SimplicialComplex = match inputs.len() {
                1 => formats::parse_complex(&inputs[0], caps)?,
                2 => {
                    let g = formats::parse_graph(&inputs[0])?;
                    let h = formats::parse_graph(&inputs[1])?;
                    let poset = enumerate_hom(&g, &h, caps)?;
                    order_complex(&poset, caps)?
                }
                _ => {
                    return Err(CliError::Domain(
                        "invariants takes one .smp file or two .grf files".to_string(),
                    ))
                }
            };
            if let Some(path) = &output {
                emit(&formats::complex_to_string(&complex), Some(path))?;
            }
            if dot {
                print!("{}", dot::skeleton_to_dot(&complex));
                return Ok(());
            }
            let components = path_components(&complex).count;
            let betti = betti_gf2(&complex);
            let conn = match complex.dim() {
                None => Connectivity::Empty,
                Some(dim) => connectivity_from_betti(&betti, dim),
            };
            if json_mode {
                let (conn_value, conn_at_least) = connectivity_json(conn);
                println!(
                    "{}",
                    json!({
                        "schema": 1,
                        "components": components,
                        "betti": betti.reduced,
                        "euler": betti.euler,
                        "conn_est": conn_value,
                        "conn_est_at_least": conn_at_least,
                        "estimate": "homological-gf2",
                    })
                );
            } else {
                println!(
                    "components: {}, betti: {:?}, euler: {}, conn_est (homological, GF(2)): {}",
                    components,
                    betti.reduced,
                    betti.euler,
                    connectivity_text(conn)
                );
            }
            Ok(())
        }
    }
}
