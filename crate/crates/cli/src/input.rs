//! Reading sequences and polynomial lists from flags, files and stdin.

use std::io::Read;

use logcv::{Scalar, SeqKind, Sequence};

use crate::CliError;

/// Splits on `,`, `;` and newlines outside parentheses, so entries such as
/// `cos2pi(1,7)` or `poly(t; 1,2)@7` stay whole. Surrounding quotes from CSV
/// output are dropped.
pub fn split_entries(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut field = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' | ';' | '\n' | '\r' if depth == 0 => {
                push_field(&mut out, &field);
                field.clear();
                continue;
            }
            _ => {}
        }
        field.push(c);
    }
    push_field(&mut out, &field);
    out
}

fn push_field(out: &mut Vec<String>, field: &str) {
    let f = field.trim().trim_matches('"').trim();
    if !f.is_empty() {
        out.push(f.to_string());
    }
}

fn read_stdin(flag: &str) -> Result<String, CliError> {
    let mut text = String::new();
    std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::usage(flag, format!("reading stdin: {e}")))?;
    Ok(text)
}

/// Entries from a flag value, or from stdin when the value is `-`. Stdin may
/// hold a JSON array (as printed by `fixpoint`) or comma-separated text.
pub fn entries(flag: &str, value: &str) -> Result<Vec<Scalar>, CliError> {
    let text = if value == "-" { read_stdin(flag)? } else { value.to_string() };
    let fields = if text.trim_start().starts_with('[') {
        let items: Vec<serde_json::Value> =
            serde_json::from_str(&text).map_err(|e| CliError::usage(flag, format!("invalid JSON array: {e}")))?;
        items
            .into_iter()
            .map(|v| match v {
                serde_json::Value::String(s) => Ok(s),
                serde_json::Value::Number(n) => Ok(n.to_string()),
                other => Err(CliError::usage(flag, format!("expected a string or number, got {other}"))),
            })
            .collect::<Result<Vec<_>, _>>()?
    } else {
        split_entries(&text)
    };
    if fields.is_empty() {
        return Err(CliError::usage(flag, "no entries given"));
    }
    fields
        .iter()
        .map(|f| f.parse::<Scalar>().map_err(|e| CliError::usage(flag, format!("entry {f:?}: {e}"))))
        .collect()
}

pub fn sequence(flag: &str, value: &str, kind: SeqKind) -> Result<Sequence, CliError> {
    Sequence::new(entries(flag, value)?, kind).map_err(|e| CliError::usage(flag, e.to_string()))
}

pub fn scalar(flag: &str, value: &str) -> Result<Scalar, CliError> {
    value.parse::<Scalar>().map_err(|e| CliError::usage(flag, e.to_string()))
}

/// One polynomial per line; blank lines and lines starting with `#` are
/// skipped. `-` reads stdin.
pub fn polynomial_list(flag: &str, path: &str) -> Result<Vec<Sequence>, CliError> {
    let text = if path == "-" {
        read_stdin(flag)?
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::usage(flag, format!("{path}: {e}")))?
    };
    let polys: Vec<Sequence> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| sequence(flag, line, SeqKind::Polynomial))
        .collect::<Result<_, _>>()?;
    if polys.is_empty() {
        return Err(CliError::usage(flag, format!("{path} holds no polynomials")));
    }
    Ok(polys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_respects_parentheses() {
        assert_eq!(split_entries("1, cos2pi(1,7) ,2/3,"), vec!["1", "cos2pi(1,7)", "2/3"]);
        assert_eq!(split_entries("\"poly(t; 1,2)@7\"\n4"), vec!["poly(t; 1,2)@7", "4"]);
        assert_eq!(split_entries("1+sqrt(2); 3"), vec!["1+sqrt(2)", "3"]);
    }

    #[test]
    fn json_and_text_agree() {
        let a = entries("--seq", r#"["1", "1+sqrt(2)", 3]"#).unwrap();
        assert_eq!(a, entries("--seq", "1,1+sqrt(2),3").unwrap());
    }
}
