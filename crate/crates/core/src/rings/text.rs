//! Element text syntax: `-12`, `3/4`, `2+3i`, `1-2w`, `4+1r`, `zeta(5/12)`,
//! `1+2*zeta(1/5)` and `[e0,e1,...]` for series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Cyclo, Elem, Ring};
use crate::error::{Error, Result};

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() || den.is_negative() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Coefficient in front of a generator: empty means 1, `-` means -1.
fn parse_coefficient(s: &str) -> Option<BigRational> {
    let s = s.strip_suffix('*').unwrap_or(s);
    match s {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        _ => parse_rational(s.strip_prefix('+').unwrap_or(s)),
    }
}

/// Splits at top-level commas.
pub(crate) fn split_list(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Splits a sum into signed terms, ignoring signs inside parentheses.
fn split_terms(s: &str) -> Vec<&str> {
    let mut terms = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > start => {
                terms.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    terms.push(&s[start..]);
    terms
}

fn fmt_coeff_then(c: &BigRational, suffix: &str, first: bool) -> String {
    let sign = if c.is_negative() {
        "-"
    } else if first {
        ""
    } else {
        "+"
    };
    let mag = c.abs();
    if mag.is_one() && !suffix.is_empty() {
        format!("{sign}{}", suffix.trim_start_matches('*'))
    } else {
        format!("{sign}{mag}{suffix}")
    }
}

impl Ring {
    /// Parses an element written in the text syntax of this ring.
    pub fn parse(&self, input: &str) -> Result<Elem> {
        let bad = || Error::Parse {
            what: "ring element",
            input: input.to_string(),
        };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        if let Some((base, order)) = self.series_parts() {
            let body = s
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(bad)?;
            let items = split_list(body);
            if items.len() != order + 1 {
                return Err(bad());
            }
            let coeffs = items
                .iter()
                .map(|t| base.parse(t))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Elem::Series(coeffs));
        }
        let letter = self.quad_gen().map(|g| g.letter);
        let cyclo = self.roots_order().is_some();
        let mut acc = self.zero();
        for term in split_terms(&s) {
            let value = if let Some(pos) = term.find("zeta(") {
                if !cyclo {
                    return Err(bad());
                }
                let coeff = parse_coefficient(&term[..pos]).ok_or_else(bad)?;
                let arg = term[pos + 5..].strip_suffix(')').ok_or_else(bad)?;
                let q = parse_rational(arg).ok_or_else(bad)?;
                let num: i64 = q.numer().try_into().map_err(|_| bad())?;
                let den: u64 = q.denom().try_into().map_err(|_| bad())?;
                Elem::Cyclo(Cyclo::root(num, den).scale(&coeff))
            } else if letter.is_some_and(|l| term.ends_with(l)) {
                let coeff = parse_coefficient(&term[..term.len() - 1]).ok_or_else(bad)?;
                Elem::Quad(BigRational::zero(), coeff)
            } else {
                let body = term.strip_prefix('+').unwrap_or(term);
                self.rational_unchecked(parse_rational(body).ok_or_else(bad)?)
            };
            acc = self.add(&acc, &value);
        }
        if self.contains(&acc) {
            Ok(acc)
        } else {
            Err(bad())
        }
    }

    /// Canonical text form; `parse(render(x)) == x`.
    pub fn render(&self, x: &Elem) -> String {
        match x {
            Elem::Rat(a) => a.to_string(),
            Elem::Quad(a, b) => {
                let letter = self.quad_gen().map(|g| g.letter).unwrap_or('?');
                if b.is_zero() {
                    a.to_string()
                } else if a.is_zero() {
                    format!("{b}{letter}")
                } else if b.is_negative() {
                    format!("{a}-{}{letter}", -b)
                } else {
                    format!("{a}+{b}{letter}")
                }
            }
            Elem::Cyclo(c) => render_cyclo(c),
            Elem::Series(coeffs) => {
                let base = self
                    .series_parts()
                    .map(|(b, _)| b.clone())
                    .unwrap_or_else(|| self.clone());
                let items: Vec<String> = coeffs.iter().map(|c| base.render(c)).collect();
                format!("[{}]", items.join(","))
            }
        }
    }
}

fn render_cyclo(c: &Cyclo) -> String {
    let c = c.normalized();
    if let Some(q) = c.as_rational() {
        return q.to_string();
    }
    if let Some((j, m)) = c.as_root_of_unity() {
        return format!("zeta({j}/{m})");
    }
    let n = c.conductor();
    let mut out = String::new();
    for (j, coeff) in c.coeffs().iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let first = out.is_empty();
        if j == 0 {
            out.push_str(&fmt_coeff_then(coeff, "", first));
        } else {
            let g = num_integer::gcd(j as u64, n);
            let zeta = format!("*zeta({}/{})", j as u64 / g, n / g);
            out.push_str(&fmt_coeff_then(coeff, &zeta, first));
        }
    }
    out
}
