use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Order of the root-of-unity ring: a fixed `m`, or every root of unity (complex mode).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootsOrder {
    Finite(u64),
    All,
}

/// Description of one of the supported integral domains (or a tower built on them).
///
/// Text form, as accepted by [`FromStr`] and produced by [`Display`](fmt::Display):
///
/// | spec | text |
/// |------|------|
/// | integers | `z` |
/// | rationals | `q` |
/// | Gaussian integers | `gauss` |
/// | Eisenstein integers | `eisen` |
/// | real quadratic ring of `d` | `quad:d` |
/// | cyclotomic ring of the `m`-th roots of unity | `roots:m` |
/// | every root of unity (complex mode) | `roots:all` |
/// | fraction field | `frac(<spec>)` |
/// | truncated Hurwitz series of order `N` | `series(<spec>,N)` |
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    Rationals,
    Gaussian,
    Eisenstein,
    QuadReal(i64),
    RootsOfUnity(RootsOrder),
    FractionOf(Box<RingSpec>),
    SeriesOver(Box<RingSpec>, usize),
}

impl RingSpec {
    pub fn fraction_of(inner: RingSpec) -> RingSpec {
        RingSpec::FractionOf(Box::new(inner))
    }

    pub fn series_over(inner: RingSpec, order: usize) -> RingSpec {
        RingSpec::SeriesOver(Box::new(inner), order)
    }

    /// Rewrites the spec into its canonical form and validates it.
    ///
    /// `frac(z)` becomes `q`, the fraction field of a field is the field itself, and
    /// fraction fields of series rings are rejected (truncated series rings have zero
    /// divisors).
    pub fn canonical(&self) -> Result<RingSpec> {
        Ok(match self {
            RingSpec::QuadReal(d) => {
                if *d <= 1 || !is_square_free(*d) {
                    return Err(Error::InvalidSpec(format!(
                        "quad:{d} needs a square-free d > 1"
                    )));
                }
                self.clone()
            }
            RingSpec::RootsOfUnity(RootsOrder::Finite(0)) => {
                return Err(Error::InvalidSpec("roots:0 needs a positive order".into()))
            }
            RingSpec::FractionOf(inner) => match inner.canonical()? {
                RingSpec::Integers | RingSpec::Rationals => RingSpec::Rationals,
                f @ RingSpec::FractionOf(_) => f,
                RingSpec::SeriesOver(..) => {
                    return Err(Error::InvalidSpec(
                        "fraction field of a truncated series ring".into(),
                    ))
                }
                other => RingSpec::FractionOf(Box::new(other)),
            },
            RingSpec::SeriesOver(inner, n) => {
                RingSpec::SeriesOver(Box::new(inner.canonical()?), *n)
            }
            _ => self.clone(),
        })
    }
}

pub(crate) fn is_square_free(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "z"),
            RingSpec::Rationals => write!(f, "q"),
            RingSpec::Gaussian => write!(f, "gauss"),
            RingSpec::Eisenstein => write!(f, "eisen"),
            RingSpec::QuadReal(d) => write!(f, "quad:{d}"),
            RingSpec::RootsOfUnity(RootsOrder::Finite(m)) => write!(f, "roots:{m}"),
            RingSpec::RootsOfUnity(RootsOrder::All) => write!(f, "roots:all"),
            RingSpec::FractionOf(inner) => write!(f, "frac({inner})"),
            RingSpec::SeriesOver(inner, n) => write!(f, "series({inner},{n})"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "ring spec",
            input: s.to_string(),
        };
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        let simple = match lower.as_str() {
            "z" | "int" | "integers" => Some(RingSpec::Integers),
            "q" | "rat" | "rationals" => Some(RingSpec::Rationals),
            "gauss" | "gaussian" | "zi" | "z[i]" => Some(RingSpec::Gaussian),
            "eisen" | "eisenstein" | "zw" | "z[w]" => Some(RingSpec::Eisenstein),
            "c" | "complex" => Some(RingSpec::RootsOfUnity(RootsOrder::All)),
            _ => None,
        };
        if let Some(spec) = simple {
            return Ok(spec);
        }
        if let Some(rest) = lower.strip_prefix("quad:") {
            return rest
                .trim()
                .parse::<i64>()
                .map(RingSpec::QuadReal)
                .map_err(|_| bad());
        }
        if let Some(rest) = lower.strip_prefix("roots:") {
            let rest = rest.trim();
            if rest == "all" {
                return Ok(RingSpec::RootsOfUnity(RootsOrder::All));
            }
            return rest
                .parse::<u64>()
                .map(|m| RingSpec::RootsOfUnity(RootsOrder::Finite(m)))
                .map_err(|_| bad());
        }
        if let Some(inner) = strip_call(&lower, "frac") {
            return Ok(RingSpec::FractionOf(Box::new(inner.parse()?)));
        }
        if let Some(args) = strip_call(&lower, "series") {
            let comma = args.rfind(',').ok_or_else(bad)?;
            let inner: RingSpec = args[..comma].parse()?;
            let order = args[comma + 1..]
                .trim()
                .parse::<usize>()
                .map_err(|_| bad())?;
            return Ok(RingSpec::SeriesOver(Box::new(inner), order));
        }
        Err(bad())
    }
}

fn strip_call<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?
        .trim_start()
        .strip_prefix('(')?
        .strip_suffix(')')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for s in [
            "z",
            "q",
            "gauss",
            "eisen",
            "quad:2",
            "roots:12",
            "roots:all",
            "frac(gauss)",
            "series(frac(eisen),4)",
        ] {
            let spec: RingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn canonical_forms() {
        let frac_z = RingSpec::fraction_of(RingSpec::Integers);
        assert_eq!(frac_z.canonical().unwrap(), RingSpec::Rationals);
        let nested = RingSpec::fraction_of(RingSpec::fraction_of(RingSpec::Gaussian));
        assert_eq!(
            nested.canonical().unwrap(),
            RingSpec::fraction_of(RingSpec::Gaussian)
        );
        assert!(RingSpec::QuadReal(4).canonical().is_err());
        assert!(RingSpec::QuadReal(1).canonical().is_err());
        assert!(RingSpec::QuadReal(6).canonical().is_ok());
        assert!(RingSpec::RootsOfUnity(RootsOrder::Finite(0))
            .canonical()
            .is_err());
        assert!(
            RingSpec::fraction_of(RingSpec::series_over(RingSpec::Rationals, 3))
                .canonical()
                .is_err()
        );
    }

    #[test]
    fn aliases() {
        assert_eq!(
            "C".parse::<RingSpec>().unwrap(),
            RingSpec::RootsOfUnity(RootsOrder::All)
        );
        assert_eq!("Z[i]".parse::<RingSpec>().unwrap(), RingSpec::Gaussian);
        assert!("quad:x".parse::<RingSpec>().is_err());
        assert!("nonsense".parse::<RingSpec>().is_err());
    }
}
