//! GTMAT v1 matrix files and the signal line format.
//!
//! ```text
//! GTMAT v1 m=<rows> n=<cols> kind=<kind> seed=<u64|none>
//! <m lines of n characters in {0,1}, top row first>
//! ```
//!
//! `kind` is `raw` for plain matrices, `bernoulli(alpha,delta,q)` (with a
//! numeric seed) or `ks(nprime,kprime,delta)` (seed `none`) for designed
//! ones; a load reconstructs the design metadata bit-exactly. Signals are
//! written as `supp=<comma-separated 1-based indices>`.

use pooltest::{BitMatrix, ContactMatrix, DesignMeta, SparseSignal};
use std::fs;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GtmatError {
    #[error("missing GTMAT header line")]
    MissingHeader,
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("line {line}: row has {got} characters, expected {expected}")]
    RaggedRow {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: invalid character {ch:?}; only '0' and '1' are allowed")]
    InvalidChar { line: usize, ch: char },
    #[error("expected {expected} matrix rows, found only {got}")]
    MissingRows { expected: usize, got: usize },
    #[error("line {line}: trailing content after the matrix body")]
    TrailingContent { line: usize },
    #[error("bad signal: {0}")]
    BadSignal(String),
}

fn meta_fields(meta: Option<&DesignMeta>) -> (String, String) {
    match meta {
        None => ("raw".into(), "none".into()),
        Some(DesignMeta::Bernoulli {
            alpha,
            delta,
            q,
            seed,
        }) => (format!("bernoulli({alpha},{delta},{q})"), seed.to_string()),
        Some(DesignMeta::KautzSingleton {
            nprime,
            kprime,
            delta,
        }) => (format!("ks({nprime},{kprime},{delta})"), "none".into()),
    }
}

/// Serializes a contact matrix to the GTMAT text form.
pub fn format_matrix(mc: &ContactMatrix) -> String {
    let (kind, seed) = meta_fields(mc.design_meta());
    let mut out = format!(
        "GTMAT v1 m={} n={} kind={} seed={}\n",
        mc.m(),
        mc.n(),
        kind,
        seed
    );
    for r in 0..mc.m() {
        out.push_str(&mc.bits().row_string(r));
        out.push('\n');
    }
    out
}

pub fn save_matrix(mc: &ContactMatrix, path: &Path) -> anyhow::Result<()> {
    fs::write(path, format_matrix(mc))?;
    Ok(())
}

pub fn load_matrix(path: &Path) -> anyhow::Result<ContactMatrix> {
    let text = fs::read_to_string(path)?;
    Ok(parse_matrix(&text)?)
}

fn header_value<'a>(token: Option<&'a str>, key: &str) -> Result<&'a str, GtmatError> {
    let token = token.ok_or_else(|| GtmatError::BadHeader(format!("missing {key}= field")))?;
    token
        .strip_prefix(&format!("{key}="))
        .ok_or_else(|| GtmatError::BadHeader(format!("expected {key}=..., got {token:?}")))
}

fn parse_dim(text: &str, key: &str) -> Result<usize, GtmatError> {
    let value: usize = text
        .parse()
        .map_err(|_| GtmatError::BadHeader(format!("{key}={text:?} is not a number")))?;
    if value == 0 {
        return Err(GtmatError::BadHeader(format!("{key} must be positive")));
    }
    Ok(value)
}

fn parse_kind(kind: &str, seed: &str) -> Result<Option<DesignMeta>, GtmatError> {
    let bad = |msg: &str| GtmatError::BadHeader(msg.to_string());
    let args_of = |prefix: &str| -> Option<Vec<String>> {
        kind.strip_prefix(prefix)
            .and_then(|rest| rest.strip_suffix(')'))
            .map(|inner| inner.split(',').map(str::to_string).collect())
    };
    if kind == "raw" {
        if seed != "none" {
            return Err(bad("raw matrices carry seed=none"));
        }
        return Ok(None);
    }
    if let Some(args) = args_of("bernoulli(") {
        if args.len() != 3 {
            return Err(bad("bernoulli(...) takes alpha,delta,q"));
        }
        let nums: Result<Vec<f64>, _> = args.iter().map(|a| a.parse()).collect();
        let nums = nums.map_err(|_| bad("bernoulli(...) arguments must be numbers"))?;
        let seed: u64 = seed
            .parse()
            .map_err(|_| bad("bernoulli matrices carry a numeric seed"))?;
        return Ok(Some(DesignMeta::Bernoulli {
            alpha: nums[0],
            delta: nums[1],
            q: nums[2],
            seed,
        }));
    }
    if let Some(args) = args_of("ks(") {
        if args.len() != 3 {
            return Err(bad("ks(...) takes nprime,kprime,delta"));
        }
        if seed != "none" {
            return Err(bad("ks matrices carry seed=none"));
        }
        let nprime: usize = args[0].parse().map_err(|_| bad("bad ks nprime"))?;
        let kprime: usize = args[1].parse().map_err(|_| bad("bad ks kprime"))?;
        let delta: f64 = args[2].parse().map_err(|_| bad("bad ks delta"))?;
        return Ok(Some(DesignMeta::KautzSingleton {
            nprime,
            kprime,
            delta,
        }));
    }
    Err(GtmatError::BadHeader(format!("unknown kind {kind:?}")))
}

/// Parses GTMAT text. Diagnostics carry 1-based file line numbers (the
/// header is line 1).
pub fn parse_matrix(text: &str) -> Result<ContactMatrix, GtmatError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(GtmatError::MissingHeader)?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("GTMAT") {
        return Err(GtmatError::BadHeader(
            "first token must be GTMAT".to_string(),
        ));
    }
    if tokens.next() != Some("v1") {
        return Err(GtmatError::BadHeader("unsupported version".to_string()));
    }
    let m = parse_dim(header_value(tokens.next(), "m")?, "m")?;
    let n = parse_dim(header_value(tokens.next(), "n")?, "n")?;
    let kind = header_value(tokens.next(), "kind")?.to_string();
    let seed = header_value(tokens.next(), "seed")?.to_string();
    if let Some(extra) = tokens.next() {
        return Err(GtmatError::BadHeader(format!(
            "unexpected trailing token {extra:?}"
        )));
    }
    let meta = parse_kind(&kind, &seed)?;

    let mut bits = BitMatrix::zeros(m, n);
    let mut body_rows = 0;
    for (i, line) in lines.enumerate() {
        let file_line = i + 2;
        if body_rows == m {
            if !line.trim().is_empty() {
                return Err(GtmatError::TrailingContent { line: file_line });
            }
            continue;
        }
        let got = line.chars().count();
        if got != n {
            return Err(GtmatError::RaggedRow {
                line: file_line,
                expected: n,
                got,
            });
        }
        for (c, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits.set(body_rows, c, true),
                other => {
                    return Err(GtmatError::InvalidChar {
                        line: file_line,
                        ch: other,
                    })
                }
            }
        }
        body_rows += 1;
    }
    if body_rows != m {
        return Err(GtmatError::MissingRows {
            expected: m,
            got: body_rows,
        });
    }
    Ok(match meta {
        Some(meta) => ContactMatrix::with_meta(bits, meta),
        None => ContactMatrix::new(bits),
    })
}

/// `supp=<comma-separated 1-based indices>`
pub fn format_signal(x: &SparseSignal) -> String {
    let indices: Vec<String> = x.one_based().iter().map(|j| j.to_string()).collect();
    format!("supp={}", indices.join(","))
}

pub fn parse_signal(text: &str, n: usize) -> Result<SparseSignal, GtmatError> {
    let rest = text
        .trim()
        .strip_prefix("supp=")
        .ok_or_else(|| GtmatError::BadSignal("expected supp=<indices>".to_string()))?;
    if rest.is_empty() {
        return Ok(SparseSignal::empty(n));
    }
    let mut indices = Vec::new();
    for piece in rest.split(',') {
        let idx: usize = piece
            .parse()
            .map_err(|_| GtmatError::BadSignal(format!("{piece:?} is not an index")))?;
        indices.push(idx);
    }
    SparseSignal::from_one_based(n, &indices)
        .map_err(|e| GtmatError::BadSignal(e.to_string()))
}
