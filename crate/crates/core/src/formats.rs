//! Text formats: point sets as binary rows under an `n=` header, inequality
//! systems as `ge`/`eq` rows of rationals. `#` starts a comment anywhere on a
//! line; blank lines are ignored; parse errors carry 1-based line numbers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::geom::{LinIneq, PointSet};
use crate::polytope::{HPolytope, LinEq};
use crate::rat::Rat;

fn stripped_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let body = body.trim();
        if body.is_empty() {
            None
        } else {
            Some((i + 1, body))
        }
    })
}

fn parse_header(line: usize, body: &str) -> Result<usize> {
    let rest = body
        .strip_prefix("n=")
        .ok_or_else(|| Error::Parse { line, msg: format!("expected n=<dim>, got '{body}'") })?;
    let n: usize = rest
        .trim()
        .parse()
        .map_err(|_| Error::Parse { line, msg: format!("bad dimension '{rest}'") })?;
    if n == 0 || n > crate::geom::MAX_DIM {
        return Err(Error::Parse {
            line,
            msg: format!("dimension must be in 1..={}, got {n}", crate::geom::MAX_DIM),
        });
    }
    Ok(n)
}

/// Parses a point set: `n=<dim>` followed by one binary word per member,
/// character i giving coordinate i. Duplicate rows are rejected.
pub fn parse_pointset(text: &str) -> Result<PointSet> {
    let mut lines = stripped_lines(text);
    let (hline, hbody) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 0, msg: "empty input".into() })?;
    let n = parse_header(hline, hbody)?;
    let mut s = PointSet::empty(n);
    for (line, body) in lines {
        if body.len() != n {
            return Err(Error::Parse {
                line,
                msg: format!("expected {n} binary digits, got '{body}'"),
            });
        }
        let mut mask = 0u64;
        for (i, ch) in body.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => mask |= 1 << i,
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("invalid character '{ch}' in point row"),
                    })
                }
            }
        }
        if s.contains(mask) {
            return Err(Error::Parse { line, msg: format!("duplicate point '{body}'") });
        }
        s.insert(mask);
    }
    Ok(s)
}

/// Emits a point set in the same format, members in ascending mask order.
pub fn emit_pointset(s: &PointSet) -> String {
    let mut out = format!("n={}\n", s.n());
    for p in s.points() {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

fn parse_rat(line: usize, tok: &str) -> Result<Rat> {
    let bad = || Error::Parse { line, msg: format!("bad rational '{tok}'") };
    match tok.split_once('/') {
        Some((p, q)) => {
            let num: BigInt = p.parse().map_err(|_| bad())?;
            let den: BigInt = q.parse().map_err(|_| bad())?;
            if den == BigInt::from(0) {
                return Err(Error::Parse { line, msg: format!("zero denominator in '{tok}'") });
            }
            Ok(Rat::new(num, den))
        }
        None => {
            let num: BigInt = tok.parse().map_err(|_| bad())?;
            Ok(Rat::from(num))
        }
    }
}

/// Parses an inequality system: `n=<dim>` followed by rows
/// `ge c_1 ... c_n rhs` (meaning c.x >= rhs) or `eq c_1 ... c_n rhs`.
/// Entries may be rationals `p/q`; each row is cleared to integers by its
/// common denominator, which leaves the constraint unchanged.
pub fn parse_hpolytope(text: &str) -> Result<HPolytope> {
    let mut lines = stripped_lines(text);
    let (hline, hbody) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 0, msg: "empty input".into() })?;
    let n = parse_header(hline, hbody)?;
    let mut p = HPolytope { n, ineqs: Vec::new(), eqs: Vec::new() };
    for (line, body) in lines {
        let mut toks = body.split_whitespace();
        let kind = toks.next().expect("nonempty body");
        if kind != "ge" && kind != "eq" {
            return Err(Error::Parse {
                line,
                msg: format!("row must start with 'ge' or 'eq', got '{kind}'"),
            });
        }
        let vals: Vec<Rat> = toks
            .map(|t| parse_rat(line, t))
            .collect::<Result<_>>()?;
        if vals.len() != n + 1 {
            return Err(Error::Parse {
                line,
                msg: format!("expected {} entries after '{kind}', got {}", n + 1, vals.len()),
            });
        }
        // clear denominators: scaling a row by a positive integer is exact
        let mut scale = BigInt::one();
        for v in &vals {
            scale = scale.lcm(v.denom());
        }
        let ints: Vec<BigInt> = vals
            .iter()
            .map(|v| (v * Rat::from(scale.clone())).to_integer())
            .collect();
        let (coeffs, rhs) = (ints[..n].to_vec(), ints[n].clone());
        if kind == "ge" {
            p.ineqs.push(LinIneq::new(coeffs, rhs));
        } else {
            p.eqs.push(LinEq::new(coeffs, rhs));
        }
    }
    Ok(p)
}

/// Emits an inequality system, equations first. All stored entries are
/// integers, so output re-parses to an identical structure.
pub fn emit_hpolytope(p: &HPolytope) -> String {
    let mut out = format!("n={}\n", p.n);
    for e in &p.eqs {
        out.push_str("eq");
        for c in &e.coeffs {
            out.push_str(&format!(" {c}"));
        }
        out.push_str(&format!(" {}\n", e.rhs));
    }
    for q in &p.ineqs {
        out.push_str("ge");
        for c in &q.coeffs {
            out.push_str(&format!(" {c}"));
        }
        out.push_str(&format!(" {}\n", q.rhs));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::support_at_least;

    #[test]
    fn pointset_round_trip() {
        let s = support_at_least(4, 2).unwrap();
        let text = emit_pointset(&s);
        assert_eq!(parse_pointset(&text).unwrap(), s);
    }

    #[test]
    fn pointset_bit_order() {
        let s = parse_pointset("n=3\n100\n").unwrap();
        assert!(s.contains(0b001)); // first character is coordinate 0
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn pointset_comments_and_blanks() {
        let text = "# header comment\nn=2\n\n01 # inline\n# trailing\n10\n";
        let s = parse_pointset(text).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn pointset_errors_carry_line_numbers() {
        match parse_pointset("n=2\n01\n01\n") {
            Err(Error::Parse { line: 3, msg }) => assert!(msg.contains("duplicate")),
            other => panic!("expected duplicate error, got {other:?}"),
        }
        match parse_pointset("n=2\n012\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected length error, got {other:?}"),
        }
        match parse_pointset("points\n") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("expected header error, got {other:?}"),
        }
    }

    #[test]
    fn hpolytope_round_trip_and_clearing() {
        let p = parse_hpolytope("n=2\nge 1 1/2 1\neq 1 -1 0\n").unwrap();
        assert_eq!(p.ineqs.len(), 1);
        assert_eq!(p.ineqs[0].coeffs, vec![BigInt::from(2), BigInt::from(1)]);
        assert_eq!(p.ineqs[0].rhs, BigInt::from(2));
        assert_eq!(p.eqs.len(), 1);
        let text = emit_hpolytope(&p);
        let back = parse_hpolytope(&text).unwrap();
        assert_eq!(back.ineqs, p.ineqs);
        assert_eq!(back.eqs, p.eqs);
    }

    #[test]
    fn hpolytope_rejects_malformed_rows() {
        assert!(matches!(
            parse_hpolytope("n=2\nle 1 1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_hpolytope("n=2\nge 1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_hpolytope("n=2\nge 1 1/0 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
