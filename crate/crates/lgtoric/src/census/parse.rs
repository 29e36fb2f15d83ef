//! Readers for the two supported polytope formats.
//!
//! The matrix format is the census convention: a header `rows cols` with an
//! optional trailing comment, followed by the integer matrix. When the
//! matrix is wider than tall the rows are coordinates (so there must be 3 of
//! them) and the columns are vertices; when it is taller than wide the rows
//! are the vertices. The simple format is JSON: one object per polytope
//! with a `vertices` array of integer triples.

use serde::Deserialize;

use super::CensusEntry;
use crate::error::ParseError;
use crate::lattice::{LatticePoint, LatticePolytope};

/// Formats accepted by the readers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    /// Whitespace matrix blocks with `rows cols [comment]` headers.
    Palp,
    /// JSON objects with a `vertices` array.
    Simple,
}

/// Guess the format from the first non-whitespace byte.
pub fn detect_format(input: &str) -> InputFormat {
    match input.trim_start().bytes().next() {
        Some(b'{') | Some(b'[') => InputFormat::Simple,
        _ => InputFormat::Palp,
    }
}

/// Parse either format, dispatching on [`detect_format`].
pub fn parse_any(input: &str) -> Result<Vec<CensusEntry>, ParseError> {
    match detect_format(input) {
        InputFormat::Palp => parse_palp(input),
        InputFormat::Simple => parse_simple(input),
    }
}

/// Parse concatenated matrix blocks.
pub fn parse_palp(input: &str) -> Result<Vec<CensusEntry>, ParseError> {
    let lines: Vec<(usize, &str)> = input.lines().enumerate().collect();
    let mut entries = Vec::new();
    let mut pos = 0usize;

    while pos < lines.len() {
        let (lineno, line) = lines[pos];
        if line.trim().is_empty() {
            pos += 1;
            continue;
        }
        let mut tokens = line.split_whitespace();
        let rows_tok = tokens.next();
        let cols_tok = tokens.next();
        let (rows, cols) = match (rows_tok, cols_tok) {
            (Some(r), Some(c)) => match (r.parse::<usize>(), c.parse::<usize>()) {
                (Ok(r), Ok(c)) if r > 0 && c > 0 => (r, c),
                _ => {
                    return Err(ParseError::MalformedHeader {
                        line: lineno + 1,
                        text: line.trim().to_string(),
                    })
                }
            },
            _ => {
                return Err(ParseError::MalformedHeader {
                    line: lineno + 1,
                    text: line.trim().to_string(),
                })
            }
        };
        let comment = {
            let rest = tokens.collect::<Vec<_>>().join(" ");
            (!rest.is_empty()).then_some(rest)
        };
        pos += 1;

        let mut matrix: Vec<Vec<i64>> = Vec::with_capacity(rows);
        for _ in 0..rows {
            let Some(&(row_lineno, row_line)) = lines.get(pos) else {
                return Err(ParseError::MatrixShapeMismatch {
                    line: lineno + 1,
                    detail: format!("expected {rows} rows, file ended after {}", matrix.len()),
                });
            };
            let mut row = Vec::with_capacity(cols);
            for tok in row_line.split_whitespace() {
                let value = tok.parse::<i64>().map_err(|_| ParseError::NonInteger {
                    line: row_lineno + 1,
                    text: tok.to_string(),
                })?;
                row.push(value);
            }
            if row.len() != cols {
                return Err(ParseError::MatrixShapeMismatch {
                    line: row_lineno + 1,
                    detail: format!("expected {cols} entries per row, found {}", row.len()),
                });
            }
            matrix.push(row);
            pos += 1;
        }

        let vertices: Vec<LatticePoint> = if rows <= cols {
            if rows != 3 {
                return Err(ParseError::WrongDimension {
                    line: lineno + 1,
                    rows,
                    cols,
                });
            }
            (0..cols)
                .map(|j| LatticePoint::new(matrix[0][j], matrix[1][j], matrix[2][j]))
                .collect()
        } else {
            if cols != 3 {
                return Err(ParseError::WrongDimension {
                    line: lineno + 1,
                    rows,
                    cols,
                });
            }
            matrix
                .iter()
                .map(|r| LatticePoint::new(r[0], r[1], r[2]))
                .collect()
        };

        entries.push(CensusEntry {
            id: entries.len() + 1,
            vertices,
            comment,
        });
    }
    Ok(entries)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SimplePolytope {
    #[serde(default)]
    name: Option<String>,
    vertices: Vec<[i64; 3]>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SimpleFile {
    One(SimplePolytope),
    Many(Vec<SimplePolytope>),
}

/// Parse the simple JSON format.
pub fn parse_simple(input: &str) -> Result<Vec<CensusEntry>, ParseError> {
    let parsed: SimpleFile =
        serde_json::from_str(input).map_err(|e| ParseError::SchemaError(e.to_string()))?;
    let raw = match parsed {
        SimpleFile::One(p) => vec![p],
        SimpleFile::Many(ps) => ps,
    };
    let mut entries = Vec::with_capacity(raw.len());
    for (i, p) in raw.into_iter().enumerate() {
        if p.vertices.is_empty() {
            return Err(ParseError::SchemaError(format!(
                "polytope {} has an empty vertices array",
                i + 1
            )));
        }
        entries.push(CensusEntry {
            id: i + 1,
            vertices: p.vertices.into_iter().map(LatticePoint::from).collect(),
            comment: p.name,
        });
    }
    Ok(entries)
}

/// Write polytopes in the simple format; inverse of [`parse_simple`] up to
/// vertex order.
pub fn emit_simple(polytopes: &[&LatticePolytope]) -> String {
    let mut out = String::from("[\n");
    for (i, p) in polytopes.iter().enumerate() {
        let verts: Vec<String> = p
            .vertices()
            .iter()
            .map(|v| {
                let c = v.coords();
                format!("[{}, {}, {}]", c[0], c[1], c[2])
            })
            .collect();
        out.push_str(&format!("  {{ \"vertices\": [{}] }}", verts.join(", ")));
        out.push_str(if i + 1 < polytopes.len() { ",\n" } else { "\n" });
    }
    out.push_str("]\n");
    out
}
