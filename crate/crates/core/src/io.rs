//! Text formats: semigroup files, congruence literals, endomorphism
//! rendering, and tower files.
//!
//! Semigroup files are UTF-8 with LF line endings:
//!
//! ```text
//! semigroup 2
//! 0 0
//! 1 1
//! ```
//!
//! followed by an optional `labels l0 l1 ...` line. Lines whose first
//! non-blank character is `#` are comments and may appear anywhere; blank
//! lines are ignored.

use std::sync::Arc;

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::morphism::check_morphism;
use crate::semigroup::FiniteSemigroup;
use crate::tower::InverseSystem;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Content lines with their 1-based numbers; comments and blanks skipped.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

/// Parses the semigroup file format and validates the table.
pub fn parse_semigroup(text: &str) -> Result<FiniteSemigroup> {
    let lines = content_lines(text);
    let mut it = lines.into_iter();
    let (line, header) = it.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("semigroup") {
        return Err(parse_err(line, "expected `semigroup <n>` header"));
    }
    let order: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| parse_err(line, "order must be a positive integer"))?;
    if tokens.next().is_some() {
        return Err(parse_err(line, "unexpected tokens after the order"));
    }
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(order);
    for _ in 0..order {
        let (line, row) = it
            .next()
            .ok_or_else(|| parse_err(0, format!("expected {order} table rows")))?;
        let entries: std::result::Result<Vec<usize>, _> =
            row.split_whitespace().map(|t| t.parse::<usize>()).collect();
        let entries = entries.map_err(|_| parse_err(line, "table rows must be decimal indices"))?;
        if entries.len() != order {
            return Err(parse_err(
                line,
                format!("expected {order} entries, got {}", entries.len()),
            ));
        }
        rows.push(entries);
    }
    let mut labels: Option<(usize, Vec<String>)> = None;
    if let Some((line, rest)) = it.next() {
        let mut tokens = rest.split_whitespace();
        if tokens.next() != Some("labels") {
            return Err(parse_err(line, "expected `labels ...` or end of file"));
        }
        labels = Some((line, tokens.map(str::to_owned).collect()));
    }
    if let Some((line, _)) = it.next() {
        return Err(parse_err(line, "unexpected content after the table"));
    }
    let s = FiniteSemigroup::validate_table(order, &rows)?;
    match labels {
        Some((line, l)) => s.with_labels(l).map_err(|e| parse_err(line, e.to_string())),
        None => Ok(s),
    }
}

/// Renders a semigroup in the file format, bit-exact: header, row-major
/// table, optional labels line, LF endings.
pub fn render_semigroup(s: &FiniteSemigroup) -> String {
    let mut out = format!("semigroup {}\n", s.order());
    for a in 0..s.order() {
        let row: Vec<String> = s.table_row(a).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(labels) = s.labels() {
        out.push_str("labels ");
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

/// Renders a congruence as blocks in least-member order: `{0 2}{1 3}`.
pub fn render_congruence(c: &Congruence) -> String {
    let mut out = String::new();
    for block in c.blocks() {
        let items: Vec<String> = block.iter().map(|e| e.to_string()).collect();
        out.push('{');
        out.push_str(&items.join(" "));
        out.push('}');
    }
    out
}

/// Parses a congruence literal such as `{0 2}{1 3}` against a carrier and
/// validates it.
pub fn parse_congruence(s: &Arc<FiniteSemigroup>, text: &str) -> Result<Congruence> {
    let text = text.trim();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let rest2 = rest.trim_start();
        if !rest2.starts_with('{') {
            return Err(Error::InvalidPartition {
                reason: format!("expected `{{` at {rest2:?}"),
            });
        }
        let close = rest2.find('}').ok_or_else(|| Error::InvalidPartition {
            reason: "unclosed block".into(),
        })?;
        let inner = &rest2[1..close];
        let entries: std::result::Result<Vec<usize>, _> =
            inner.split_whitespace().map(|t| t.parse::<usize>()).collect();
        let entries = entries.map_err(|_| Error::InvalidPartition {
            reason: format!("block {inner:?} is not a list of indices"),
        })?;
        if entries.is_empty() {
            return Err(Error::InvalidPartition {
                reason: "empty block".into(),
            });
        }
        blocks.push(entries);
        rest = &rest2[close + 1..];
    }
    if blocks.is_empty() {
        return Err(Error::InvalidPartition {
            reason: "no blocks".into(),
        });
    }
    Congruence::from_blocks(s, &blocks)
}

/// Renders an endomorphism as its image sequence: `[0 1 2]`.
pub fn render_map(map: &[usize]) -> String {
    let items: Vec<String> = map.iter().map(|v| v.to_string()).collect();
    format!("[{}]", items.join(" "))
}

/// Renders a set of element indices: `{0 1 3}`.
pub fn render_element_set(set: &[usize]) -> String {
    let items: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(" "))
}

/// Parses the tower file format. The header line is `tower`; after the
/// bottom `level` entry, each further level is followed by the `map` line
/// carrying the connecting morphism down to the previous level. A level is
/// either `level <path>` (resolved through `load`) or inline,
/// `level <n> <n*n row-major entries>`.
pub fn parse_tower(
    text: &str,
    load: &mut dyn FnMut(&str) -> std::result::Result<String, String>,
) -> Result<InverseSystem> {
    let lines = content_lines(text);
    let mut it = lines.into_iter().peekable();
    let (line, header) = it.next().ok_or_else(|| parse_err(0, "empty input"))?;
    if header != "tower" {
        return Err(parse_err(line, "expected `tower` header"));
    }
    let mut levels: Vec<Arc<FiniteSemigroup>> = Vec::new();
    let mut connecting = Vec::new();
    while let Some((line, entry)) = it.next() {
        let mut tokens = entry.split_whitespace();
        if tokens.next() != Some("level") {
            return Err(parse_err(line, "expected `level ...`"));
        }
        let descriptor: Vec<&str> = tokens.collect();
        let level = parse_level(line, &descriptor, load)?;
        levels.push(Arc::new(level));
        if levels.len() == 1 {
            continue;
        }
        let (map_line, map_entry) = it
            .next()
            .ok_or_else(|| parse_err(line, "expected a `map` line after this level"))?;
        let mut tokens = map_entry.split_whitespace();
        if tokens.next() != Some("map") {
            return Err(parse_err(map_line, "expected `map ...`"));
        }
        let entries: std::result::Result<Vec<usize>, _> =
            tokens.map(|t| t.parse::<usize>()).collect();
        let map =
            entries.map_err(|_| parse_err(map_line, "map entries must be decimal indices"))?;
        let from = &levels[levels.len() - 1];
        let to = &levels[levels.len() - 2];
        if map.len() != from.order() {
            return Err(parse_err(
                map_line,
                format!("expected {} entries, got {}", from.order(), map.len()),
            ));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= to.order()) {
            return Err(parse_err(
                map_line,
                format!("entry {bad} out of range for order {}", to.order()),
            ));
        }
        connecting.push(check_morphism(map, from, to)?);
    }
    if levels.is_empty() {
        return Err(parse_err(0, "tower has no levels"));
    }
    InverseSystem::new(levels, connecting)
}

fn parse_level(
    line: usize,
    descriptor: &[&str],
    load: &mut dyn FnMut(&str) -> std::result::Result<String, String>,
) -> Result<FiniteSemigroup> {
    if descriptor.is_empty() {
        return Err(parse_err(line, "level needs a path or an inline table"));
    }
    if let Ok(order) = descriptor[0].parse::<usize>() {
        if order == 0 {
            return Err(parse_err(line, "order must be positive"));
        }
        let entries: std::result::Result<Vec<usize>, _> =
            descriptor[1..].iter().map(|t| t.parse::<usize>()).collect();
        let flat = entries.map_err(|_| parse_err(line, "inline table must be decimal indices"))?;
        if flat.len() != order * order {
            return Err(parse_err(
                line,
                format!("inline table needs {} entries, got {}", order * order, flat.len()),
            ));
        }
        let rows: Vec<Vec<usize>> = flat.chunks(order).map(|c| c.to_vec()).collect();
        return FiniteSemigroup::validate_table(order, &rows);
    }
    if descriptor.len() != 1 {
        return Err(parse_err(line, "level path must be a single token"));
    }
    let text = load(descriptor[0]).map_err(|e| parse_err(line, e))?;
    parse_semigroup(&text)
}

/// Renders a tower with inline levels; the inverse of `parse_tower` for
/// towers without file references.
pub fn render_tower(sys: &InverseSystem) -> String {
    let mut out = String::from("tower\n");
    for (i, level) in sys.levels().iter().enumerate() {
        let mut flat: Vec<String> = vec![level.order().to_string()];
        for a in 0..level.order() {
            flat.extend(level.table_row(a).iter().map(|v| v.to_string()));
        }
        out.push_str(&format!("level {}\n", flat.join(" ")));
        if i > 0 {
            let map: Vec<String> = sys.connecting()[i - 1]
                .map()
                .iter()
                .map(|v| v.to_string())
                .collect();
            out.push_str(&format!("map {}\n", map.join(" ")));
        }
    }
    out
}
