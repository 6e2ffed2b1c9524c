//! The context input format: a line-based key-value file with nested arrays,
//! validated into a deformation matrix with line-precise diagnostics.
//!
//! ```text
//! # generic 2-torus
//! n = 2
//! d = 1
//! s = 1
//! C = [[0, 0], [0, 0]]
//! M1 = [[0, 1], [-1, 0]]
//! tau_hat = [0.6180339887498949]
//! radial = [[1, 1], [1, 1]]
//! ```
//!
//! `C` entries are integers or fraction strings `p/q`; `M1..Ms` are integer
//! matrices; `tau_hat` (optional) supplies numeric stand-ins for the formal
//! irrationals; `radial` (optional) carries radial parts `|q_ij|` for the
//! unimodularity guard.

use crate::phase_arith::{Ctx, Rat, ThetaMatrix};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: key `{key}`: {message}")]
    Value { line: usize, key: String, message: String },
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("context validation failed: {0}")]
    Context(#[from] crate::phase_arith::ContextError),
}

/// One parsed value: a scalar token or a nested array.
#[derive(Clone, Debug)]
enum Value {
    Scalar(String),
    Array(Vec<Value>),
}

/// Parsed and validated context file.
#[derive(Clone, Debug)]
pub struct ContextFile {
    pub n: usize,
    pub d: u32,
    pub s: usize,
    pub c: Vec<Vec<Rat>>,
    pub m: Vec<Vec<Vec<i64>>>,
    pub tau_hat: Option<Vec<f64>>,
    pub radial: Option<Vec<Vec<f64>>>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_value(text: &str, line: usize) -> Result<(Value, usize), ParseError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() && bytes[i].is_ascii_whitespace() {
        i += 1;
    }
    if i >= bytes.len() {
        return Err(ParseError::Syntax { line, message: "expected a value".to_string() });
    }
    if bytes[i] == b'[' {
        let mut items = Vec::new();
        i += 1;
        loop {
            while i < bytes.len() && (bytes[i].is_ascii_whitespace() || bytes[i] == b',') {
                i += 1;
            }
            if i >= bytes.len() {
                return Err(ParseError::Syntax { line, message: "unterminated array".to_string() });
            }
            if bytes[i] == b']' {
                i += 1;
                break;
            }
            let (item, used) = parse_value(&text[i..], line)?;
            items.push(item);
            i += used;
        }
        Ok((Value::Array(items), i))
    } else {
        let start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b',' && bytes[i] != b']' {
            i += 1;
        }
        Ok((Value::Scalar(text[start..i].to_string()), i))
    }
}

fn scalar_as_usize(v: &Value, key: &str, line: usize) -> Result<usize, ParseError> {
    match v {
        Value::Scalar(s) => s.parse().map_err(|_| ParseError::Value {
            line,
            key: key.to_string(),
            message: format!("expected a nonnegative integer, got `{s}`"),
        }),
        Value::Array(_) => Err(ParseError::Value {
            line,
            key: key.to_string(),
            message: "expected a scalar, got an array".to_string(),
        }),
    }
}

fn scalar_as_rat(s: &str, key: &str, line: usize) -> Result<Rat, ParseError> {
    let bad = |msg: String| ParseError::Value { line, key: key.to_string(), message: msg };
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.parse().map_err(|_| bad(format!("bad fraction numerator `{p}`")))?;
        let q: i64 = q.parse().map_err(|_| bad(format!("bad fraction denominator `{q}`")))?;
        if q == 0 {
            return Err(bad("fraction denominator is zero".to_string()));
        }
        Ok(Rat::new(BigInt::from(p), BigInt::from(q)))
    } else {
        let p: i64 = s.parse().map_err(|_| bad(format!("expected an integer or `p/q`, got `{s}`")))?;
        Ok(Rat::from_integer(BigInt::from(p)))
    }
}

fn matrix_of<T>(
    v: &Value,
    key: &str,
    line: usize,
    n: usize,
    cell: &impl Fn(&str) -> Result<T, String>,
) -> Result<Vec<Vec<T>>, ParseError> {
    let bad = |msg: String| ParseError::Value { line, key: key.to_string(), message: msg };
    let Value::Array(rows) = v else {
        return Err(bad(format!("expected an {n} x {n} array")));
    };
    if rows.len() != n {
        return Err(bad(format!("expected {n} rows, got {}", rows.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let Value::Array(cells) = row else {
            return Err(bad(format!("row {} is not an array", i + 1)));
        };
        if cells.len() != n {
            return Err(bad(format!("row {} has {} entries, expected {n}", i + 1, cells.len())));
        }
        let mut r = Vec::with_capacity(n);
        for (j, c) in cells.iter().enumerate() {
            let Value::Scalar(s) = c else {
                return Err(bad(format!("entry ({},{}) is not a scalar", i + 1, j + 1)));
            };
            r.push(cell(s).map_err(|m| bad(format!("entry ({},{}): {m}", i + 1, j + 1)))?);
        }
        out.push(r);
    }
    Ok(out)
}

impl ContextFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        // Assemble logical lines: accumulate until brackets balance.
        let mut entries: BTreeMap<String, (Value, usize)> = BTreeMap::new();
        let mut pending: Option<(String, String, usize)> = None; // key, text, start line
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = strip_comment(raw).trim_end();
            if let Some((key, mut acc, start)) = pending.take() {
                acc.push(' ');
                acc.push_str(line.trim());
                if balanced(&acc) {
                    let (value, _) = parse_value(&acc, start)?;
                    insert_entry(&mut entries, key, value, start)?;
                } else {
                    pending = Some((key, acc, start));
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let Some((key, rest)) = line.split_once('=') else {
                return Err(ParseError::Syntax {
                    line: lineno,
                    message: format!("expected `key = value`, got `{}`", line.trim()),
                });
            };
            let key = key.trim().to_string();
            let rest = rest.trim().to_string();
            if balanced(&rest) {
                let (value, _) = parse_value(&rest, lineno)?;
                insert_entry(&mut entries, key, value, lineno)?;
            } else {
                pending = Some((key, rest, lineno));
            }
        }
        if let Some((key, _, start)) = pending {
            return Err(ParseError::Syntax {
                line: start,
                message: format!("unterminated array in value of `{key}`"),
            });
        }

        let get = |key: &str| -> Result<&(Value, usize), ParseError> {
            entries.get(key).ok_or_else(|| ParseError::MissingKey(key.to_string()))
        };
        let (nv, nline) = get("n")?;
        let n = scalar_as_usize(nv, "n", *nline)?;
        let (dv, dline) = get("d")?;
        let d = scalar_as_usize(dv, "d", *dline)? as u32;
        let (sv, sline) = get("s")?;
        let s = scalar_as_usize(sv, "s", *sline)?;

        let (cv, cline) = get("C")?;
        let c = matrix_of(cv, "C", *cline, n, &|t| {
            scalar_as_rat(t, "C", *cline).map_err(|e| e.to_string())
        })?;

        let mut m = Vec::with_capacity(s);
        for t in 1..=s {
            let key = format!("M{t}");
            let (mv, mline) = get(&key)?;
            m.push(matrix_of(mv, &key, *mline, n, &|txt| {
                txt.parse::<i64>().map_err(|_| format!("expected an integer, got `{txt}`"))
            })?);
        }

        let tau_hat = match entries.get("tau_hat") {
            None => None,
            Some((Value::Array(items), line)) => {
                let mut out = Vec::new();
                for item in items {
                    let Value::Scalar(txt) = item else {
                        return Err(ParseError::Value {
                            line: *line,
                            key: "tau_hat".to_string(),
                            message: "expected a flat array of reals".to_string(),
                        });
                    };
                    out.push(txt.parse::<f64>().map_err(|_| ParseError::Value {
                        line: *line,
                        key: "tau_hat".to_string(),
                        message: format!("bad real `{txt}`"),
                    })?);
                }
                if out.len() != s {
                    return Err(ParseError::Value {
                        line: *line,
                        key: "tau_hat".to_string(),
                        message: format!("expected {s} entries (one per formal irrational), got {}", out.len()),
                    });
                }
                Some(out)
            }
            Some((_, line)) => {
                return Err(ParseError::Value {
                    line: *line,
                    key: "tau_hat".to_string(),
                    message: "expected an array".to_string(),
                })
            }
        };

        let radial = match entries.get("radial") {
            None => None,
            Some((v, line)) => Some(matrix_of(v, "radial", *line, n, &|txt| {
                let r = txt.parse::<f64>().map_err(|_| format!("bad real `{txt}`"))?;
                if r > 0.0 {
                    Ok(r)
                } else {
                    Err(format!("radial part must be positive, got {r}"))
                }
            })?),
        };

        // Validation of the theta-matrix invariants happens in build(); run
        // it now so parse-time diagnostics cover them too.
        let file = ContextFile { n, d, s, c, m, tau_hat, radial };
        file.build()?;
        Ok(file)
    }

    /// The validated deformation context.
    pub fn build(&self) -> Result<Ctx, ParseError> {
        Ok(ThetaMatrix::new(self.d, self.c.clone(), self.m.clone())?)
    }
}

fn insert_entry(
    entries: &mut BTreeMap<String, (Value, usize)>,
    key: String,
    value: Value,
    line: usize,
) -> Result<(), ParseError> {
    if entries.contains_key(&key) {
        return Err(ParseError::Syntax { line, message: format!("duplicate key `{key}`") });
    }
    entries.insert(key, (value, line));
    Ok(())
}

fn balanced(text: &str) -> bool {
    let mut depth = 0i64;
    for b in text.bytes() {
        match b {
            b'[' => depth += 1,
            b']' => depth -= 1,
            _ => {}
        }
    }
    depth <= 0
}
