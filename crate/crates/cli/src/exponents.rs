//! Exact parsing of exponent lists.  Fractions and integers go straight to
//! rationals; a decimal becomes the rational it denotes (2.5 → 5/2), so no
//! exponent is ever rounded through a float.

use std::str::FromStr;

use newton_osc_core::decay::PExp;
use newton_osc_core::Rat;

/// Parses a comma-separated list like `8/3,3,2.5,inf`.  The error message
/// names the offending entry.
pub fn parse_list(text: &str) -> Result<Vec<PExp<Rat>>, String> {
    text.split(',')
        .enumerate()
        .map(|(i, raw)| {
            let s = raw.trim();
            parse_entry(s).map_err(|why| format!("exponent entry {} {s:?}: {why}", i + 1))
        })
        .collect()
}

fn parse_entry(s: &str) -> Result<PExp<Rat>, String> {
    if s.eq_ignore_ascii_case("inf") {
        return Ok(PExp::Infinite);
    }
    let rational = if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err("expected p/q, a decimal, or \"inf\"".into());
        }
        // 12.34 → 1234 / 10^2, parsed in full precision.
        let mut denom = String::with_capacity(frac.len() + 1);
        denom.push('1');
        denom.extend(std::iter::repeat('0').take(frac.len()));
        Rat::from_str(&format!("{whole}{frac}/{denom}"))
    } else {
        Rat::from_str(s)
    };
    rational.map(PExp::Finite).map_err(|_| "expected p/q, a decimal, or \"inf\"".into())
}

/// Canonical rendering, the inverse of [`parse_list`]: reduced fractions
/// joined by commas, `inf` for ∞.
pub fn render_list(entries: &[PExp<Rat>]) -> String {
    entries
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
