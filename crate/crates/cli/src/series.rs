use abelmax_core::numtheory::{asymptotic_ratio, AsymptoticSample};

use crate::{significant, Failure, Format};

/// `n`, or `start..end` (inclusive) with an optional `:step`.
pub(crate) fn expand(items: &[String]) -> Result<Vec<u64>, Failure> {
    let mut out = Vec::new();
    for item in items {
        let bad = || {
            Failure::Usage(format!(
                "bad series item {item:?}; expected n or start..end[:step]"
            ))
        };
        match item.split_once("..") {
            None => out.push(item.trim().parse().map_err(|_| bad())?),
            Some((start, rest)) => {
                let (end, step) = match rest.split_once(':') {
                    Some((end, step)) => (end, step.trim().parse::<u64>().map_err(|_| bad())?),
                    None => (rest, 1),
                };
                let start: u64 = start.trim().parse().map_err(|_| bad())?;
                let end: u64 = end.trim().parse().map_err(|_| bad())?;
                if step == 0 {
                    return Err(bad());
                }
                let mut n = start;
                while n <= end {
                    out.push(n);
                    n = match n.checked_add(step) {
                        Some(next) => next,
                        None => break,
                    };
                }
            }
        }
    }
    Ok(out)
}

pub(crate) fn render(items: &[String], format: Format) -> Result<String, Failure> {
    let samples = expand(items)?
        .into_iter()
        .map(asymptotic_ratio)
        .collect::<Result<Vec<AsymptoticSample>, _>>()?;
    let rows = samples
        .iter()
        .map(|s| (s.n, significant(s.log_f, 12), significant(s.ratio, 12)));
    Ok(match format {
        Format::Json => {
            let values: Vec<serde_json::Value> = rows
                .map(|(n, log_f, ratio)| serde_json::json!({ "n": n, "log_f": log_f, "ratio": ratio }))
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&values).expect("json"))
        }
        Format::Csv | Format::Text => {
            let mut s = String::from("n,log_f,ratio\n");
            for (n, log_f, ratio) in rows {
                s.push_str(&format!("{n},{log_f},{ratio}\n"));
            }
            s
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_expand_inclusively() {
        let items = [
            "10".to_string(),
            "20..40:10".to_string(),
            "5..3".to_string(),
        ];
        assert_eq!(expand(&items).unwrap(), vec![10, 20, 30, 40]);
        assert!(expand(&["1..x".to_string()]).is_err());
        assert!(expand(&["1..5:0".to_string()]).is_err());
    }

    #[test]
    fn empty_series_is_header_only() {
        assert_eq!(render(&[], Format::Csv).unwrap(), "n,log_f,ratio\n");
    }

    #[test]
    fn significant_digits() {
        assert_eq!(significant(1.0038024, 3), "1.00");
        assert_eq!(significant(123.456, 4), "123.5");
        assert_eq!(significant(0.012345, 2), "0.012");
    }
}
