//! Text form of root data.
//!
//! ```text
//! datum   := type ':' isogeny [ ';p=' prime ]
//! type    := comp ( 'x' comp )*           e.g. A3, A1xA1, D4xT1
//! isogeny := 'sc' | 'ad' | 'iso(' k ')' | 'lattice(' row ( ',' row )* ')'
//! row     := '[' rational ( ',' rational )* ']'
//! ```
//!
//! `iso(k)` selects the `k`-th entry of [`RootDatum::standard_isogenies`]
//! (0 = sc). Lattice rows are generators of `Y` in simple-coroot plus central
//! coordinates.

use std::str::FromStr;

use super::{CartanType, RootDatum};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, RationalVector};

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn parse_rows(body: &str, base: usize) -> Result<Vec<RationalVector>> {
    let mut rows = Vec::new();
    let mut rest = body;
    let mut pos = base;
    loop {
        let trimmed = rest.trim_start();
        pos += rest.len() - trimmed.len();
        rest = trimmed;
        if !rest.starts_with('[') {
            return Err(perr(pos, "expected '['"));
        }
        let close = rest
            .find(']')
            .ok_or_else(|| perr(pos, "unterminated row"))?;
        let row: RationalVector = rest[1..close].parse().map_err(|e| match e {
            Error::Parse { pos: p, msg } => perr(pos + 1 + p, msg),
            other => other,
        })?;
        rows.push(row);
        pos += close + 1;
        rest = &rest[close + 1..];
        let trimmed = rest.trim_start();
        pos += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            return Ok(rows);
        }
        if !rest.starts_with(',') {
            return Err(perr(pos, "expected ',' between rows"));
        }
        rest = &rest[1..];
        pos += 1;
    }
}

impl FromStr for RootDatum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (main, p) = match s.find(';') {
            Some(i) => {
                let tail = s[i + 1..].trim();
                let num = tail
                    .strip_prefix("p=")
                    .ok_or_else(|| perr(i + 1, "expected 'p=<prime>'"))?;
                let p: u64 = num
                    .trim()
                    .parse()
                    .map_err(|_| perr(i + 3, format!("invalid characteristic {num:?}")))?;
                if p != 0 && !super::is_prime(p) {
                    return Err(perr(i + 3, format!("{p} is not prime")));
                }
                (&s[..i], p)
            }
            None => (s, 0),
        };
        let colon = main
            .find(':')
            .ok_or_else(|| perr(main.len(), "expected ':' after the Cartan type"))?;
        let cartan_type: CartanType = main[..colon].parse()?;
        let iso = main[colon + 1..].trim();
        let iso_pos = colon + 1 + (main[colon + 1..].len() - main[colon + 1..].trim_start().len());
        let datum = if iso == "sc" {
            RootDatum::simply_connected(cartan_type)?
        } else if iso == "ad" {
            RootDatum::adjoint(cartan_type)?
        } else if let Some(body) = iso.strip_prefix("iso(").and_then(|b| b.strip_suffix(')')) {
            let k: usize = body
                .trim()
                .parse()
                .map_err(|_| perr(iso_pos + 4, format!("invalid isogeny index {body:?}")))?;
            let all = RootDatum::standard_isogenies(&cartan_type)?.all();
            let count = all.len();
            let mut d = all.into_iter().nth(k).ok_or_else(|| {
                perr(iso_pos + 4, format!("isogeny index {k} out of range (0..{count})"))
            })?;
            d.set_name(format!("{cartan_type}:iso({k})"));
            d
        } else if let Some(body) = iso.strip_prefix("lattice(").and_then(|b| b.strip_suffix(')'))
        {
            let rows = parse_rows(body, iso_pos + 8)?;
            let dim = cartan_type.semisimple_rank() + cartan_type.central_rank;
            let y = Lattice::from_generators(dim, &rows)?;
            RootDatum::new(cartan_type, y, 0)?
        } else {
            return Err(perr(iso_pos, format!("unknown isogeny {iso:?}")));
        };
        datum.with_p(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_standard_forms() {
        let d: RootDatum = "D4:sc".parse().unwrap();
        assert!(d.is_simply_connected());
        let d: RootDatum = "A3:ad;p=3".parse().unwrap();
        assert_eq!(d.p(), 3);
        assert_eq!(d.isogeny_index(), 4);
        assert_eq!(d.name(), "A3:ad;p=3");
        let d: RootDatum = "A1xA1:sc".parse().unwrap();
        assert_eq!(d.rank(), 2);
    }

    #[test]
    fn parses_lattices() {
        let d: RootDatum = "A1:lattice([1/2])".parse().unwrap();
        assert_eq!(d, "A1:ad".parse().unwrap());
        let d: RootDatum = "A1xT1:lattice([1/2,1/2],[-1/2,1/2])".parse().unwrap();
        assert_eq!(d.dim(), 2);
        let named: RootDatum = d.name().parse().unwrap();
        assert_eq!(named, d);
    }

    #[test]
    fn intermediate_isogenies_round_trip() {
        for d in RootDatum::standard_isogenies(&"D4".parse().unwrap())
            .unwrap()
            .all()
        {
            let again: RootDatum = d.name().parse().unwrap();
            assert_eq!(again, d);
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!("D4".parse::<RootDatum>(), Err(Error::Parse { .. })));
        assert!(matches!("D4:xx".parse::<RootDatum>(), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!("D4:sc;p=4".parse::<RootDatum>(), Err(Error::Parse { .. })));
        assert!(matches!(
            "A1:lattice([1/2],[x])".parse::<RootDatum>(),
            Err(Error::Parse { .. })
        ));
        assert!("A1:lattice([1/3])".parse::<RootDatum>().is_err());
    }
}
