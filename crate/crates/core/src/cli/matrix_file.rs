//! Plain-text matrix files and complex literals.
//!
//! ```text
//! dim 2
//! 0+0i 2+0i
//! 0+0i 0+0i
//! ```
//!
//! Complex literals are `re+imi` or `re-imi`, with an optional sign on the real
//! part; a bare real (`-2`) or bare imaginary (`3i`) is accepted as well.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::CMatrix;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self { line, column, message: message.into() }
    }
}

/// Parses one complex literal; the error string describes what is wrong.
pub fn parse_complex(token: &str) -> Result<Complex64, String> {
    let token = token.trim();
    if token.is_empty() {
        return Err("empty complex literal".into());
    }
    let value = match token.strip_suffix('i') {
        None => Complex64::new(parse_real(token)?, 0.0),
        Some(body) => {
            let split = body
                .char_indices()
                .filter(|&(idx, ch)| {
                    idx > 0 && (ch == '+' || ch == '-') && !matches!(body.as_bytes()[idx - 1], b'e' | b'E')
                })
                .map(|(idx, _)| idx)
                .last();
            match split {
                Some(idx) => Complex64::new(parse_real(&body[..idx])?, parse_imag(&body[idx..])?),
                None => Complex64::new(0.0, parse_imag(body)?),
            }
        }
    };
    if !value.is_finite() {
        return Err(format!("non-finite literal `{token}`"));
    }
    Ok(value)
}

fn parse_real(text: &str) -> Result<f64, String> {
    text.parse::<f64>().map_err(|_| format!("invalid number `{text}`"))
}

fn parse_imag(text: &str) -> Result<f64, String> {
    match text {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(text),
    }
}

/// `re+imi` using the shortest representation that parses back to the same bits.
pub fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{:?}{:?}i", z.re, z.im)
    } else {
        format!("{:?}+{:?}i", z.re, z.im)
    }
}

pub fn parse_matrix(text: &str) -> Result<CMatrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (header_line, header) = lines.next().ok_or_else(|| ParseError::new(1, 1, "empty matrix file"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("dim") {
        return Err(ParseError::new(header_line, column_of(header, 0), "expected `dim n` header"));
    }
    let dim_token = words
        .next()
        .ok_or_else(|| ParseError::new(header_line, header.len() + 1, "missing dimension"))?;
    let dim: usize = dim_token
        .parse()
        .ok()
        .filter(|&d| d > 0)
        .ok_or_else(|| ParseError::new(header_line, column_of(header, 1), format!("invalid dimension `{dim_token}`")))?;
    if words.next().is_some() {
        return Err(ParseError::new(header_line, column_of(header, 2), "trailing text after dimension"));
    }

    let mut rows = Vec::with_capacity(dim);
    for (line_no, line) in lines {
        if rows.len() == dim {
            return Err(ParseError::new(line_no, 1, format!("more than {dim} rows")));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != dim {
            return Err(ParseError::new(
                line_no,
                column_of(line, tokens.len().min(dim)),
                format!("expected {dim} entries, found {}", tokens.len()),
            ));
        }
        let row = tokens
            .iter()
            .enumerate()
            .map(|(k, tok)| parse_complex(tok).map_err(|m| ParseError::new(line_no, column_of(line, k), m)))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.len() != dim {
        let last = text.lines().count().max(1);
        return Err(ParseError::new(last, 1, format!("expected {dim} rows, found {}", rows.len())));
    }
    CMatrix::from_rows(&rows).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

/// 1-based column of the `k`-th whitespace-separated token (or end of line).
fn column_of(line: &str, k: usize) -> usize {
    let mut count = 0;
    let mut in_token = false;
    for (idx, ch) in line.char_indices() {
        if ch.is_whitespace() {
            in_token = false;
        } else if !in_token {
            if count == k {
                return line[..idx].chars().count() + 1;
            }
            count += 1;
            in_token = true;
        }
    }
    line.chars().count() + 1
}

pub fn format_matrix(m: &CMatrix) -> String {
    let mut out = format!("dim {}\n", m.dim());
    for i in 0..m.dim() {
        let row: Vec<String> = m.row(i).iter().map(|&z| format_complex(z)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Single-line form used inside reports: the file lines joined by ` ; `.
pub fn format_matrix_inline(m: &CMatrix) -> String {
    format_matrix(m).trim_end().lines().collect::<Vec<_>>().join(" ; ")
}

pub fn parse_matrix_inline(text: &str) -> Result<CMatrix, ParseError> {
    parse_matrix(&text.split(';').collect::<Vec<_>>().join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0+0i").unwrap(), c(0.0, 0.0));
        assert_eq!(parse_complex("2+0i").unwrap(), c(2.0, 0.0));
        assert_eq!(parse_complex("-1.5-2i").unwrap(), c(-1.5, -2.0));
        assert_eq!(parse_complex("+3-i").unwrap(), c(3.0, -1.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-2.5i").unwrap(), c(0.0, -2.5));
        assert_eq!(parse_complex("-2").unwrap(), c(-2.0, 0.0));
        assert_eq!(parse_complex("1e-20+3E+5i").unwrap(), c(1e-20, 3e5));
        assert_eq!(parse_complex("-1e-3-1e-3i").unwrap(), c(-1e-3, -1e-3));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+2j").is_err());
        assert!(parse_complex("inf").is_err());
    }

    #[test]
    fn complex_format_is_exact() {
        for z in [c(0.1, -0.2), c(-0.0, 0.0), c(1e-300, 5e300), c(1.0 / 3.0, -2.0 / 7.0)] {
            let back = parse_complex(&format_complex(z)).unwrap();
            assert_eq!(back.re.to_bits(), z.re.to_bits());
            assert_eq!(back.im.to_bits(), z.im.to_bits());
        }
    }

    #[test]
    fn parses_jordan_block() {
        let m = parse_matrix("dim 2\n0+0i 2+0i\n0+0i 0+0i\n").unwrap();
        assert_eq!(m, CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap());
    }

    #[test]
    fn reports_line_and_column() {
        let err = parse_matrix("dim 2\n0+0i 2+0i\n0+0i zz\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 6));

        let err = parse_matrix("dim 2\n0+0i\n").unwrap_err();
        assert_eq!(err.line, 2);

        let err = parse_matrix("size 2\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));

        let err = parse_matrix("dim x\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 5));

        assert!(parse_matrix("dim 2\n1 0\n").is_err());
        assert!(parse_matrix("dim 1\n1\n2\n").is_err());
    }

    #[test]
    fn inline_form() {
        let m = CMatrix::from_fn(3, |i, j| c(i as f64 * 0.1, -(j as f64) / 3.0));
        let line = format_matrix_inline(&m);
        assert!(!line.contains('\n'));
        assert_eq!(parse_matrix_inline(&line).unwrap(), m);
    }
}
