//! Graph sources: `KIND:SIZE` for a generated graph (e.g. `grid:3`), `-` for
//! standard input, anything else is a path to an edge-list file.

use std::io::Read;

use rwlogic_core::{generate, parse_edge_list, Graph, GraphKind};

use crate::commands::Failure;

pub fn load(spec: &str) -> Result<Graph, Failure> {
    if let Some((kind, size)) = spec.split_once(':') {
        if let Ok(kind) = kind.parse::<GraphKind>() {
            let size = size.parse().map_err(|_| {
                Failure::usage(format!("bad size `{size}` in graph source `{spec}`"))
            })?;
            return Ok(generate(kind, size)?);
        }
    }
    let text = if spec == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::data(format!("reading standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(spec).map_err(|e| Failure::data(format!("{spec}: {e}")))?
    };
    parse_edge_list(&text)
        .map(|g| g.with_name(spec))
        .map_err(|e| Failure::data(format!("{spec}: {e}")))
}
