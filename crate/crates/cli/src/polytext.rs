//! Parsers for the textual polynomial and candidate formats used on the
//! command line. The polynomial syntax is the renderer's own output
//! (`1/2*m^2 + 5/2*m + 2`), accepted with flexible whitespace and optional
//! `*` between coefficient and variable.

use cohsys::qpoly::{Rat, RationalPoly};
use cohsys::stability::SubsystemCandidate;

use crate::config::CliError;

pub fn parse_rational(text: &str) -> Result<Rat, CliError> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: i64 = numer
        .parse()
        .map_err(|_| CliError::Config(format!("invalid rational `{text}`")))?;
    let d: i64 = denom
        .parse()
        .map_err(|_| CliError::Config(format!("invalid rational `{text}`")))?;
    if d == 0 {
        return Err(CliError::Config(format!("zero denominator in `{text}`")));
    }
    Ok(Rat::new(n.into(), d.into()))
}

/// Parses `a2*m^2 + a1*m + a0` style polynomials; terms may appear in any
/// order and coefficients may be rationals.
pub fn parse_poly(text: &str) -> Result<RationalPoly, CliError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(CliError::Config("empty polynomial".into()));
    }

    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut chars = compact.chars().peekable();
    if let Some(&c) = chars.peek() {
        if c == '+' || c == '-' {
            negative = c == '-';
            chars.next();
        }
    }
    for c in chars {
        if c == '+' || c == '-' {
            terms.push((negative, std::mem::take(&mut current)));
            negative = c == '-';
        } else {
            current.push(c);
        }
    }
    terms.push((negative, current));

    let mut coeffs: Vec<Rat> = Vec::new();
    for (negative, term) in terms {
        if term.is_empty() {
            return Err(CliError::Config(format!("dangling sign in `{text}`")));
        }
        let (coeff_text, degree) = match term.split_once('m') {
            None => (term.as_str(), 0usize),
            Some((coeff, rest)) => {
                let degree = if rest.is_empty() {
                    1
                } else {
                    let exp = rest.strip_prefix('^').ok_or_else(|| {
                        CliError::Config(format!("invalid term in `{text}`"))
                    })?;
                    exp.parse::<usize>()
                        .map_err(|_| CliError::Config(format!("invalid exponent in `{text}`")))?
                };
                (coeff.trim_end_matches('*'), degree)
            }
        };
        let coeff = if coeff_text.is_empty() {
            Rat::new(1.into(), 1.into())
        } else {
            parse_rational(coeff_text)?
        };
        let coeff = if negative { -coeff } else { coeff };
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, Rat::new(0.into(), 1.into()));
        }
        coeffs[degree] += coeff;
    }
    Ok(RationalPoly::new(coeffs))
}

/// Parses a candidate as `n,c1h,chi,k` (chi may be a rational `p/q`).
pub fn parse_candidate(text: &str) -> Result<SubsystemCandidate, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(CliError::Config(format!(
            "candidate must be `n,c1h,chi,k`, got `{text}`"
        )));
    }
    let rank: u32 = parts[0]
        .parse()
        .map_err(|_| CliError::Config(format!("invalid candidate rank `{}`", parts[0])))?;
    let c1h: i64 = parts[1]
        .parse()
        .map_err(|_| CliError::Config(format!("invalid candidate c1.H `{}`", parts[1])))?;
    let chi = parse_rational(parts[2])?;
    let k: u32 = parts[3]
        .parse()
        .map_err(|_| CliError::Config(format!("invalid candidate k `{}`", parts[3])))?;
    SubsystemCandidate::new(rank, c1h, chi, k).map_err(|e| CliError::Config(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cohsys::qpoly::{rat, rint};

    #[test]
    fn parses_rendered_polynomials() {
        assert_eq!(
            parse_poly("1/2*m^2 + 5/2*m + 2").unwrap(),
            RationalPoly::quadratic(rat(1, 2), rat(5, 2), rint(2))
        );
        assert_eq!(parse_poly("2*m - 4").unwrap(), RationalPoly::linear(rint(2), rint(-4)));
        assert_eq!(parse_poly("-m + 1/2").unwrap(), RationalPoly::linear(rint(-1), rat(1, 2)));
        assert_eq!(parse_poly("0").unwrap(), RationalPoly::zero());
        assert_eq!(parse_poly("m^2").unwrap(), RationalPoly::quadratic(rint(1), rint(0), rint(0)));
    }

    #[test]
    fn round_trips_the_renderer() {
        let p = RationalPoly::quadratic(rat(-3, 7), rint(0), rat(5, 2));
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("2x + 1").is_err());
        assert!(parse_poly("+").is_err());
        assert!(parse_poly("m^two").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn parses_candidates() {
        let cand = parse_candidate("1, 0, 1, 1").unwrap();
        assert_eq!((cand.rank(), cand.c1h(), cand.k()), (1, 0, 1));
        assert_eq!(cand.chi(), &rint(1));
        let cand = parse_candidate("2,-1,3/2,0").unwrap();
        assert_eq!(cand.chi(), &rat(3, 2));
        assert!(parse_candidate("1,2,3").is_err());
        assert!(parse_candidate("0,0,0,0").is_err());
    }
}
