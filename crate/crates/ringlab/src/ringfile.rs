//! RINGFILE v1: a plain-text table interchange format.
//!
//! ```text
//! RINGFILE v1
//! name <string>          (optional)
//! order <n>
//! zero <i>
//! one <j>
//! add
//! <n rows of n whitespace-separated 0-based indices>
//! mul
//! <n rows of n indices>
//! end
//! ```
//!
//! Lines end with LF and the content is ASCII. Export materializes the
//! tables of structured rings and refuses orders above
//! [`EXPORT_ORDER_LIMIT`]; import validates the ring axioms before the ring
//! is handed to anything else.

use std::fmt::Write as _;

use crate::error::RingError;
use crate::ring::{FiniteRing, UnvalidatedRing};

pub const EXPORT_ORDER_LIMIT: usize = 4096;

#[derive(Debug, thiserror::Error)]
pub enum RingfileError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("ringfile line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Serializes a ring, materializing its tables.
pub fn write_ringfile(ring: &FiniteRing) -> Result<String, RingError> {
    let n = ring.order();
    if n > EXPORT_ORDER_LIMIT {
        return Err(RingError::ExportTooLarge {
            order: n,
            limit: EXPORT_ORDER_LIMIT,
        });
    }
    let mut out = String::new();
    out.push_str("RINGFILE v1\n");
    if !ring.name().is_empty() {
        let _ = writeln!(out, "name {}", ring.name());
    }
    let _ = writeln!(out, "order {n}");
    let _ = writeln!(out, "zero {}", ring.zero());
    let _ = writeln!(out, "one {}", ring.one());
    let ops: [(&str, fn(&FiniteRing, usize, usize) -> usize); 2] = [
        ("add", |r, i, j| r.add(i, j)),
        ("mul", |r, i, j| r.mul(i, j)),
    ];
    for (header, op) in ops {
        out.push_str(header);
        out.push('\n');
        for i in 0..n {
            for j in 0..n {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{}", op(ring, i, j));
            }
            out.push('\n');
        }
    }
    out.push_str("end\n");
    Ok(out)
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<(usize, &'a str), RingfileError> {
        match self.iter.next() {
            Some((idx, line)) => Ok((idx + 1, line)),
            None => Err(RingfileError::Format {
                line: 0,
                message: "unexpected end of file".into(),
            }),
        }
    }
}

fn field<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' '))
}

fn parse_index(token: &str, line: usize) -> Result<usize, RingfileError> {
    token.parse::<usize>().map_err(|_| RingfileError::Format {
        line,
        message: format!("expected an index, found '{token}'"),
    })
}

/// Parses and validates a RINGFILE document.
pub fn parse_ringfile(text: &str) -> Result<FiniteRing, RingfileError> {
    let mut lines = Lines {
        iter: text.lines().enumerate(),
    };
    let (ln, header) = lines.next()?;
    if header.trim_end() != "RINGFILE v1" {
        return Err(RingfileError::Format {
            line: ln,
            message: "missing 'RINGFILE v1' header".into(),
        });
    }
    let (ln, mut line) = lines.next()?;
    let mut name = String::new();
    if let Some(value) = field(line, "name") {
        name = value.to_string();
        let (_, next) = lines.next()?;
        line = next;
    }
    let order = match field(line, "order") {
        Some(v) => parse_index(v.trim(), ln)?,
        None => {
            return Err(RingfileError::Format {
                line: ln,
                message: "expected 'order <n>'".into(),
            })
        }
    };
    let (ln, line) = lines.next()?;
    let zero = match field(line, "zero") {
        Some(v) => parse_index(v.trim(), ln)?,
        None => {
            return Err(RingfileError::Format {
                line: ln,
                message: "expected 'zero <i>'".into(),
            })
        }
    };
    let (ln, line) = lines.next()?;
    let one = match field(line, "one") {
        Some(v) => parse_index(v.trim(), ln)?,
        None => {
            return Err(RingfileError::Format {
                line: ln,
                message: "expected 'one <j>'".into(),
            })
        }
    };

    let mut read_table = |keyword: &str| -> Result<Vec<u32>, RingfileError> {
        let (ln, line) = lines.next()?;
        if line.trim_end() != keyword {
            return Err(RingfileError::Format {
                line: ln,
                message: format!("expected '{keyword}'"),
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for _ in 0..order {
            let (ln, line) = lines.next()?;
            let mut count = 0;
            for token in line.split_whitespace() {
                let v = parse_index(token, ln)?;
                if v >= order {
                    return Err(RingfileError::Format {
                        line: ln,
                        message: format!("index {v} out of range for order {order}"),
                    });
                }
                table.push(v as u32);
                count += 1;
            }
            if count != order {
                return Err(RingfileError::Format {
                    line: ln,
                    message: format!("expected {order} indices per row, found {count}"),
                });
            }
        }
        Ok(table)
    };

    let add = read_table("add")?;
    let mul = read_table("mul")?;
    let (ln, line) = lines.next()?;
    if line.trim_end() != "end" {
        return Err(RingfileError::Format {
            line: ln,
            message: "expected 'end'".into(),
        });
    }
    let display = if name.is_empty() {
        format!("imported(order {order})")
    } else {
        name
    };
    let ring = UnvalidatedRing::from_tables(display, order, zero, one, add, mul, None)?;
    Ok(ring.validate()?)
}
