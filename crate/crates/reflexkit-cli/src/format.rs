//! The polytope text format: a `v n` header (vertex count, dimension)
//! followed by `v` rows of `n` space-separated integers, `#` comments,
//! and blank lines between polytopes.
//!
//! Files in the wild also come with vertices as columns under an `n v`
//! header. Since a full-dimensional polytope always has more vertices
//! than dimensions, a header with `a < b` provably means columns and the
//! lenient reader transposes; `a = b` is ambiguous either way and is
//! rejected rather than guessed.

use num_bigint::BigInt;
use reflexkit_core::{Ambient, LatticePoint, Polytope};
use std::fmt::Write as _;

/// A parse failure with the 1-based line it happened on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Require `v n` headers with vertices as rows.
    Strict,
    /// Transpose when the header can only mean `n v`.
    Lenient,
}

struct Block {
    rows: Vec<(usize, Vec<BigInt>)>,
}

fn tokenize(text: &str) -> Vec<(usize, Vec<String>)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            let data = line.split('#').next().unwrap_or("");
            (
                i + 1,
                data.split_whitespace().map(str::to_string).collect(),
            )
        })
        .collect()
}

fn split_blocks(text: &str) -> Result<Vec<Block>, ParseError> {
    let lines = tokenize(text);
    let mut blocks = Vec::new();
    let mut current: Option<Block> = None;
    for (lineno, tokens) in lines {
        if tokens.is_empty() {
            if let Some(b) = current.take() {
                blocks.push(b);
            }
            continue;
        }
        let numbers: Vec<BigInt> = tokens
            .iter()
            .map(|t| {
                t.parse::<BigInt>().map_err(|_| ParseError {
                    line: lineno,
                    message: format!("expected an integer, got {t:?}"),
                })
            })
            .collect::<Result<_, _>>()?;
        match current.as_mut() {
            None => {
                current = Some(Block {
                    rows: vec![(lineno, numbers)],
                })
            }
            Some(b) => b.rows.push((lineno, numbers)),
        }
    }
    if let Some(b) = current.take() {
        blocks.push(b);
    }
    Ok(blocks)
}

/// Parses every polytope in the text. Each block's first row must be the
/// two-number header; the matrix shape must match it exactly.
pub fn parse_polytopes(text: &str, orientation: Orientation) -> Result<Vec<Polytope>, ParseError> {
    let blocks = split_blocks(text)?;
    if blocks.is_empty() {
        return Err(ParseError {
            line: 1,
            message: "no polytope data found".to_string(),
        });
    }
    let mut polytopes = Vec::with_capacity(blocks.len());
    for block in blocks {
        polytopes.push(parse_block(&block, orientation)?);
    }
    Ok(polytopes)
}

fn parse_block(block: &Block, orientation: Orientation) -> Result<Polytope, ParseError> {
    let (header_line, header) = (&block.rows[0].0, &block.rows[0].1);
    if header.len() != 2 {
        return Err(ParseError {
            line: *header_line,
            message: format!("expected a 'v n' header with two numbers, got {}", header.len()),
        });
    }
    let a = usize::try_from(&header[0]).map_err(|_| ParseError {
        line: *header_line,
        message: "header values must be positive".to_string(),
    })?;
    let b = usize::try_from(&header[1]).map_err(|_| ParseError {
        line: *header_line,
        message: "header values must be positive".to_string(),
    })?;
    if a == 0 || b == 0 {
        return Err(ParseError {
            line: *header_line,
            message: "header values must be positive".to_string(),
        });
    }
    let body = &block.rows[1..];
    if body.len() != a {
        let line = body.last().map(|(l, _)| *l).unwrap_or(*header_line);
        return Err(ParseError {
            line,
            message: format!("header declares {a} rows, found {}", body.len()),
        });
    }
    for (lineno, row) in body {
        if row.len() != b {
            return Err(ParseError {
                line: *lineno,
                message: format!("header declares {b} columns, found {}", row.len()),
            });
        }
    }
    // Orient: a full-dimensional polytope has strictly more vertices
    // than dimensions, so the larger header number counts vertices.
    let transpose = match (orientation, a.cmp(&b)) {
        (_, std::cmp::Ordering::Greater) => false,
        (Orientation::Lenient, std::cmp::Ordering::Less) => true,
        (Orientation::Strict, std::cmp::Ordering::Less) => {
            return Err(ParseError {
                line: *header_line,
                message: format!(
                    "strict format requires a 'v n' header with v > n, got {a} {b}"
                ),
            })
        }
        (_, std::cmp::Ordering::Equal) => {
            return Err(ParseError {
                line: *header_line,
                message: format!(
                    "ambiguous {a}x{b} header: cannot tell vertices from coordinates"
                ),
            })
        }
    };
    let points: Vec<LatticePoint> = if transpose {
        (0..b)
            .map(|j| {
                LatticePoint::new(
                    body.iter().map(|(_, row)| row[j].clone()).collect(),
                    Ambient::N,
                )
            })
            .collect()
    } else {
        body.iter()
            .map(|(_, row)| LatticePoint::new(row.clone(), Ambient::N))
            .collect()
    };
    Polytope::hull(&points).map_err(|e| ParseError {
        line: *header_line,
        message: format!("invalid polytope: {e}"),
    })
}

/// Writes polytopes in the canonical `v n` rows-as-vertices form;
/// `parse(emit(p)) == p` exactly.
pub fn emit_polytopes(polytopes: &[Polytope]) -> String {
    let mut out = String::new();
    for (i, p) in polytopes.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "{} {}", p.vertex_count(), p.dim());
        for v in p.vertices() {
            let row: Vec<String> = v.coords().iter().map(BigInt::to_string).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use reflexkit_core::{cross_polytope, hexagon, p2_triangle};

    #[test]
    fn parse_rows_as_vertices() {
        let text = "# the plane triangle\n3 2\n1 0\n0 1\n-1 -1\n";
        let ps = parse_polytopes(text, Orientation::Strict).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0], p2_triangle());
    }

    #[test]
    fn lenient_parse_transposes_columns() {
        let text = "2 3\n1 0 -1\n0 1 -1\n";
        let ps = parse_polytopes(text, Orientation::Lenient).unwrap();
        assert_eq!(ps[0], p2_triangle());
        assert!(parse_polytopes(text, Orientation::Strict).is_err());
    }

    #[test]
    fn square_header_is_ambiguous() {
        let text = "2 2\n1 0\n0 1\n";
        let err = parse_polytopes(text, Orientation::Lenient).unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("ambiguous"));
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = parse_polytopes("3 2\n1 0\n0 x\n-1 -1\n", Orientation::Lenient).unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_polytopes("3 2\n1 0\n0 1\n", Orientation::Lenient).unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_polytopes("3 2\n1 0\n0 1 5\n-1 -1\n", Orientation::Lenient).unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn multiple_blocks_and_roundtrip() {
        let polys = vec![p2_triangle(), hexagon(), cross_polytope(2)];
        let text = emit_polytopes(&polys);
        let back = parse_polytopes(&text, Orientation::Strict).unwrap();
        assert_eq!(back, polys);
    }
}
