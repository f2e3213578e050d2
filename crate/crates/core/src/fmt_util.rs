use std::fmt;

use crate::scalar::Scalar;

/// Writes `sum coeff*basis` using ` + ` / ` - ` separators. Coefficients
/// whose text contains a space (multi-term polynomials) are parenthesized.
/// `basis == "1"` prints the bare coefficient.
pub(crate) fn write_combination<'a, R, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    R: Scalar,
    I: IntoIterator<Item = (&'a R, String)>,
{
    let mut first = true;
    for (coeff, basis) in terms {
        let text = coeff.to_string();
        let (negative, mag) = match text.strip_prefix('-') {
            Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
            _ => (false, text),
        };
        match (first, negative) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        let mag = if mag.contains(' ') {
            format!("({mag})")
        } else {
            mag
        };
        if basis == "1" {
            f.write_str(&mag)?;
        } else if mag == "1" {
            f.write_str(&basis)?;
        } else {
            write!(f, "{mag}*{basis}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
