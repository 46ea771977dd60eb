//! Number grammar for command-line arguments.
//!
//! `[sign] term [/ term]`, where a term is a decimal literal, `pi` or `e`,
//! or a decimal coefficient followed by `pi` or `e`: `2pi/3`, `-pi`, `1/e`,
//! `0.25`, `3/7`.

use tetra::{MpError, PrecisionCtx, Real};

fn term(s: &str, whole: &str, ctx: &PrecisionCtx) -> Result<Real, MpError> {
    let bad = || MpError::Parse(whole.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    let (coeff, atom) = if let Some(c) = s.strip_suffix("pi") {
        (c, Some(ctx.pi()))
    } else if let Some(c) = s.strip_suffix('e').filter(|c| c.is_empty() || c.ends_with(|ch: char| ch.is_ascii_digit() || ch == '.')) {
        (c, Some(ctx.one().exp()))
    } else {
        (s, None)
    };
    match atom {
        None => Real::parse(s, ctx).map_err(|_| bad()),
        Some(atom) if coeff.is_empty() => Ok(atom),
        Some(atom) => {
            if coeff.starts_with(['+', '-']) {
                return Err(bad());
            }
            Ok(Real::parse(coeff, ctx).map_err(|_| bad())? * atom)
        }
    }
}

/// Parses a number argument at the context's working precision.
pub fn parse_number(s: &str, ctx: &PrecisionCtx) -> Result<Real, MpError> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    if body.starts_with(['+', '-']) || body.contains(char::is_whitespace) {
        return Err(MpError::Parse(s.to_string()));
    }
    let mut parts = body.split('/');
    let num = term(parts.next().unwrap_or_default(), s, ctx)?;
    let v = match (parts.next(), parts.next()) {
        (None, _) => num,
        (Some(den), None) => {
            let den = term(den, s, ctx)?;
            if den.is_zero() {
                return Err(MpError::Parse(s.to_string()));
            }
            num / den
        }
        _ => return Err(MpError::Parse(s.to_string())),
    };
    Ok(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::default()
    }

    fn close(a: &Real, b: &Real) -> bool {
        (a - b).abs() < ctx().pow10(-55)
    }

    #[test]
    fn accepted_forms() {
        let c = ctx();
        let pi = c.pi();
        assert!(close(&parse_number("pi", &c).unwrap(), &pi));
        assert!(close(&parse_number("2pi/3", &c).unwrap(), &(&pi * 2 / 3)));
        assert!(close(&parse_number("-pi/2", &c).unwrap(), &(-pi.clone() / 2)));
        assert!(close(&parse_number("1/pi", &c).unwrap(), &pi.recip().unwrap()));
        assert!(close(&parse_number("1/e", &c).unwrap(), &c.one().exp().recip().unwrap()));
        assert!(close(&parse_number("3/7", &c).unwrap(), &c.ratio(3, 7)));
        assert!(close(&parse_number("0.25", &c).unwrap(), &c.ratio(1, 4)));
        assert!(close(&parse_number("1e-3", &c).unwrap(), &c.pow10(-3)));
        assert!(close(&parse_number("0.5pi", &c).unwrap(), &(&pi / 2)));
    }

    #[test]
    fn rejected_forms() {
        let c = ctx();
        for s in ["", "pie", "2 pi", "1/2/3", "--1", "x", "1/0", "pi-1", "sqrt(2)", "2*pi", "1/-pi", "e1"] {
            assert!(parse_number(s, &c).is_err(), "{s}");
        }
    }

    #[test]
    fn decimal_is_exact_at_working_precision() {
        let c = ctx();
        let x = parse_number("0.1", &c).unwrap();
        assert!(close(&(x * 10), &c.one()));
    }
}
