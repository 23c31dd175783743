use std::path::Path;

use rwlogic_core::graphstate::parse_pattern;
use rwlogic_core::logic::Evaluator;
use rwlogic_core::rankwidth::count_subcubic_trees;
use rwlogic_core::{
    cut_rank, generate, greedy_decomposition, named_formula, parse_formula, serialize,
    simulate_pattern, Error, ExactSearch, Graph, GraphKind,
};
use serde_json::json;

use crate::{source, Format, RunConfig};

/// A failed command: message for the error stream plus the exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn data(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeLimit { .. } | Error::Resource { .. } => 3,
            Error::Argument(_)
            | Error::Syntax { .. }
            | Error::UnboundVariable { .. }
            | Error::UnknownFormula(_) => 2,
            Error::Parse { .. } | Error::Contract(_) => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn emit_json(value: serde_json::Value) {
    println!("{value}");
}

pub fn gen(cfg: &RunConfig, kind: &str, size: usize, out: Option<&Path>) -> Outcome {
    let kind: GraphKind = kind.parse()?;
    let g = generate(kind, size)?;
    let text = serialize(&g);
    match out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
            if cfg.format == Format::Json {
                emit_json(
                    json!({ "path": path.display().to_string(), "n": g.n(), "m": g.edge_count() }),
                );
            }
        }
        None if cfg.format == Format::Json => emit_json(json!({
            "kind": kind.as_str(),
            "size": size,
            "n": g.n(),
            "m": g.edge_count(),
            "edges": g.edges(),
        })),
        None => print!("{text}"),
    }
    Ok(())
}

pub fn rankwidth(cfg: &RunConfig, graph: &str, exact: bool) -> Outcome {
    let g = source::load(graph)?;
    let (method, width, decomposition, examined) = if exact {
        let search = ExactSearch::with_cap(cfg.exact_cap).run(&g)?;
        let dec = search.decomposition.map(|d| d.tree.to_json());
        ("exact", search.width, dec, Some(search.trees_examined))
    } else if g.n() < 2 {
        ("greedy", 0, None, None)
    } else {
        let d = greedy_decomposition(&g)?;
        ("greedy", d.width, Some(d.tree.to_json()), None)
    };
    match cfg.format {
        Format::Json => emit_json(json!({
            "method": method,
            "n": g.n(),
            "width": width,
            "trees_examined": examined,
            "decomposition": decomposition,
        })),
        Format::Text => {
            println!(
                "{method} rank-width of {} ({} vertices): {width}",
                graph,
                g.n()
            );
            if let Some(d) = decomposition {
                println!("decomposition: {d}");
            }
        }
    }
    Ok(())
}

fn parse_set(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Failure::usage(format!("bad vertex `{s}` in --set")))
        })
        .collect()
}

pub fn cutrank(cfg: &RunConfig, graph: &str, set: &str) -> Outcome {
    let g = source::load(graph)?;
    let mut a = parse_set(set)?;
    let r = cut_rank(&g, &a)?;
    a.sort_unstable();
    a.dedup();
    let b: Vec<usize> = (0..g.n()).filter(|v| a.binary_search(v).is_err()).collect();
    match cfg.format {
        Format::Json => emit_json(json!({ "set": a, "complement": b, "cut_rank": r })),
        Format::Text => println!("cut-rank of {a:?} | {b:?}: {r}"),
    }
    Ok(())
}

pub fn check(
    cfg: &RunConfig,
    graphs: &[String],
    formula: Option<&str>,
    named: Option<&str>,
) -> Outcome {
    let f = match (formula, named) {
        (_, Some(name)) => named_formula(name)?,
        (Some(text), None) => parse_formula(text)?,
        (None, None) => return Err(Failure::usage("give a formula or --named NAME")),
    };
    let family: Vec<Graph> = graphs
        .iter()
        .map(|s| source::load(s))
        .collect::<Result<_, _>>()?;
    let compiled = Evaluator::default().compile(&f)?;
    let mut verdicts = Vec::with_capacity(family.len());
    for g in &family {
        verdicts.push(compiled.check(g)?);
    }
    let witness = verdicts.iter().position(|&v| !v);
    match cfg.format {
        Format::Json => emit_json(json!({
            "formula": f.to_string(),
            "graphs": graphs.iter().zip(&family).zip(&verdicts).enumerate().map(|(i, ((src, g), holds))| json!({
                "index": i,
                "source": src,
                "n": g.n(),
                "holds": holds,
            })).collect::<Vec<_>>(),
            "holds": witness.is_none(),
            "witness": witness,
        })),
        Format::Text => {
            println!("formula: {f}");
            for (i, (src, holds)) in graphs.iter().zip(&verdicts).enumerate() {
                println!("  [{i}] {src}: {holds}");
            }
            match witness {
                None => println!("family: true"),
                Some(i) => println!("family: false (first failure at index {i}, {})", graphs[i]),
            }
        }
    }
    Ok(())
}

pub fn simulate(cfg: &RunConfig, graph: &str, pattern: &str) -> Outcome {
    let g = source::load(graph)?;
    let pattern = parse_pattern(pattern)?;
    let transcript = simulate_pattern(&g, &pattern, cfg.seed)?;
    match cfg.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&transcript).expect("transcript serializes")
        ),
        Format::Text => {
            for e in &transcript {
                println!(
                    "qubit {} {:?} -> {:+} (p = {})",
                    e.qubit, e.basis, e.outcome, e.probability
                );
            }
        }
    }
    Ok(())
}

pub fn trees_count(cfg: &RunConfig, leaves: usize) -> Outcome {
    if leaves > cfg.exact_cap {
        return Err(Error::SizeLimit {
            what: "subcubic tree enumeration",
            size: leaves,
            limit: cfg.exact_cap,
        }
        .into());
    }
    let count = count_subcubic_trees(leaves)?;
    match cfg.format {
        Format::Json => emit_json(json!({ "leaves": leaves, "count": count })),
        Format::Text => println!("{count}"),
    }
    Ok(())
}
