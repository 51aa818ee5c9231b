//! Signal files: one sample per line, plain decimal, `#` starts a comment.

use anyhow::{bail, Context, Result};

use crate::numfmt::sig12;

pub fn parse_signal(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line
            .parse()
            .with_context(|| format!("line {}: not a number: {line:?}", lineno + 1))?;
        out.push(v);
    }
    if out.is_empty() {
        bail!("no samples found");
    }
    Ok(out)
}

pub fn format_signal(values: &[f64]) -> String {
    let mut s = String::new();
    for v in values {
        s.push_str(&sig12(*v));
        s.push('\n');
    }
    s
}

/// 8×8 table: eight lines of eight comma-separated values; `#` comments.
pub fn parse_table8(text: &str) -> Result<[[f64; 8]; 8]> {
    let mut rows = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .with_context(|| format!("line {}: bad value {t:?}", lineno + 1))
            })
            .collect::<Result<_>>()?;
        if row.len() != 8 {
            bail!("line {}: expected 8 values, got {}", lineno + 1, row.len());
        }
        rows.push(row);
    }
    if rows.len() != 8 {
        bail!("expected 8 rows, got {}", rows.len());
    }
    let mut out = [[0.0; 8]; 8];
    for (i, row) in rows.iter().enumerate() {
        out[i].copy_from_slice(row);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_samples_with_comments() {
        let text = "# header\n1.5\n-2 # trailing\n\n3e0\n";
        assert_eq!(parse_signal(text).unwrap(), vec![1.5, -2.0, 3.0]);
        assert!(parse_signal("# only comments\n").is_err());
        assert!(parse_signal("abc\n").is_err());
    }

    #[test]
    fn round_trips_through_format() {
        let x = vec![1.0, -0.5, 0.0];
        let parsed = parse_signal(&format_signal(&x)).unwrap();
        assert_eq!(parsed, x);
    }

    #[test]
    fn parses_8x8_table() {
        let mut text = String::from("# q\n");
        for _ in 0..8 {
            text.push_str("1, 2, 3, 4, 5, 6, 7, 8\n");
        }
        let t = parse_table8(&text).unwrap();
        assert_eq!(t[7][7], 8.0);
        assert!(parse_table8("1,2,3\n").is_err());
    }
}
