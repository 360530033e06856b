//! DIMACS edge format.
//!
//! ```text
//! c optional comment
//! p edge <n> <m>
//! e <u> <v>        (1 ≤ u, v ≤ n, one line per edge)
//! ```
//!
//! Serialization writes the header followed by every edge with `u < v` in
//! lexicographic order, 1-based, each line terminated by `\n`.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<Graph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut builder: Option<GraphBuilder> = None;
    let mut edge_lines = 0usize;
    let mut last_line = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line?;
        let mut fields = line.split_ascii_whitespace();
        let Some(tag) = fields.next() else {
            continue;
        };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(Error::malformed_at(lineno, "duplicate problem line"));
                }
                if fields.next() != Some("edge") {
                    return Err(Error::malformed_at(lineno, "expected 'p edge <n> <m>'"));
                }
                let n = parse_count(fields.next(), lineno, "vertex count")?;
                let m = parse_count(fields.next(), lineno, "edge count")?;
                if fields.next().is_some() {
                    return Err(Error::malformed_at(lineno, "trailing fields on problem line"));
                }
                header = Some((n, m, lineno));
                builder = Some(GraphBuilder::new(n));
            }
            "e" => {
                let (Some((n, _, _)), Some(b)) = (header, builder.as_mut()) else {
                    return Err(Error::malformed_at(lineno, "edge line before problem line"));
                };
                let u = parse_count(fields.next(), lineno, "edge endpoint")?;
                let v = parse_count(fields.next(), lineno, "edge endpoint")?;
                if fields.next().is_some() {
                    return Err(Error::malformed_at(lineno, "trailing fields on edge line"));
                }
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(Error::malformed_at(
                            lineno,
                            format!("vertex {w} out of range 1..={n}"),
                        ));
                    }
                }
                if u == v {
                    return Err(Error::malformed_at(lineno, format!("self-loop at vertex {u}")));
                }
                b.add_edge(u - 1, v - 1);
                edge_lines += 1;
            }
            other => {
                return Err(Error::malformed_at(
                    lineno,
                    format!("unknown line type '{other}'"),
                ));
            }
        }
    }

    let (Some((_, m, header_line)), Some(b)) = (header, builder) else {
        return Err(Error::malformed_at(last_line.max(1), "missing problem line"));
    };
    if edge_lines != m {
        return Err(Error::malformed_at(
            header_line,
            format!("header declares {m} edges but {edge_lines} edge lines follow"),
        ));
    }
    Ok(b.build())
}

pub fn parse_dimacs_str(text: &str) -> Result<Graph> {
    parse_dimacs(text.as_bytes())
}

fn parse_count(field: Option<&str>, lineno: usize, what: &str) -> Result<usize> {
    let field = field.ok_or_else(|| Error::malformed_at(lineno, format!("missing {what}")))?;
    field
        .parse()
        .map_err(|_| Error::malformed_at(lineno, format!("invalid {what} '{field}'")))
}

pub fn write_dimacs<W: Write>(g: &Graph, mut w: W) -> std::io::Result<()> {
    writeln!(w, "p edge {} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(w, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

pub fn serialize_dimacs(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_dimacs(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("DIMACS output is ASCII")
}
