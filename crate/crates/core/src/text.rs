//! Small text utilities shared by query matching and preprocessing.

/// Splits raw text into word tokens: whitespace-separated chunks with leading
/// and trailing punctuation stripped. Internal hyphens, underscores, and
/// apostrophes are kept so tokens like `New-York` or `a_lot` survive intact.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .filter_map(|chunk| {
            let token = chunk.trim_matches(|c: char| !c.is_alphanumeric());
            if token.is_empty() {
                None
            } else {
                Some(token.to_string())
            }
        })
        .collect()
}

/// Lowercased tokens, for case-insensitive whole-token matching.
pub fn tokenize_lower(text: &str) -> Vec<String> {
    tokenize(text)
        .into_iter()
        .map(|t| t.to_lowercase())
        .collect()
}

/// Compensated (Neumaier) summation. Keeps presence-indicator weight sums
/// stable enough that decimal weight files add up to their decimal totals.
pub fn stable_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut compensation = 0.0f64;
    for value in values {
        let t = sum + value;
        if sum.abs() >= value.abs() {
            compensation += (sum - t) + value;
        } else {
            compensation += (value - t) + sum;
        }
        sum = t;
    }
    sum + compensation
}

/// Formats `value` truncated toward zero at `decimals` places. Reports quote
/// values this way (0.14594... prints as "0.14", 0.0575 as "0.057").
pub fn format_truncated(value: f64, decimals: usize) -> String {
    let factor = 10f64.powi(decimals as i32);
    let truncated = (value * factor).trunc() / factor;
    format!("{truncated:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenize_strips_edge_punctuation() {
        assert_eq!(
            tokenize("Road closed, due to accident!"),
            vec!["Road", "closed", "due", "to", "accident"]
        );
    }

    #[test]
    fn tokenize_keeps_internal_joiners() {
        assert_eq!(
            tokenize("New-York a_lot don't"),
            vec!["New-York", "a_lot", "don't"]
        );
    }

    #[test]
    fn tokenize_drops_pure_punctuation() {
        assert_eq!(tokenize("-- ... !!"), Vec::<String>::new());
    }

    #[test]
    fn stable_sum_recovers_decimal_totals() {
        assert_eq!(stable_sum([0.5, 0.6, 0.1, -0.3]), 0.9);
        assert_eq!(stable_sum([0.1, -0.3, 0.6, 0.5]), 0.9);
        assert_eq!(stable_sum(std::iter::empty()), 0.0);
    }

    #[test]
    fn format_truncates_toward_zero() {
        assert_eq!(format_truncated(0.14594086, 2), "0.14");
        assert_eq!(format_truncated(0.0575, 3), "0.057");
        assert_eq!(format_truncated(0.175, 3), "0.175");
        assert_eq!(format_truncated(86.596373, 2), "86.59");
    }
}
