//! Cartan types and Cartan matrices.
//!
//! Node labels follow the diagrams used throughout this crate:
//!
//! ```text
//! A_n   1 - 2 - ... - n
//! B_n   1 < 2 - 3 - ... - n        (α_1 short)
//! C_n   1 > 2 - 3 - ... - n        (α_1 long)
//! D_n   1 - 3 - 4 - ... - n, 2 - 3 (nodes 1 and 2 are the spin nodes)
//! E_n   1 - 3 - 4 - 5 - ... - n, 2 - 4
//! F_4   1 - 2 > 3 - 4              (α_1, α_2 long)
//! G_2   1 < 2                      (α_1 short)
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// One irreducible component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
}

impl Component {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidType(format!("{}{rank}", family.letter())));
        }
        Ok(Component { family, rank })
    }

    /// Squared lengths of the simple roots (short = 1, long = 2; G_2 uses 1 and 3).
    fn squared_lengths(&self) -> Vec<i64> {
        let n = self.rank;
        match self.family {
            Family::A | Family::D | Family::E => vec![2; n],
            Family::B => (0..n).map(|i| if i == 0 { 1 } else { 2 }).collect(),
            Family::C => (0..n).map(|i| if i == 0 { 2 } else { 1 }).collect(),
            Family::F => vec![2, 2, 1, 1],
            Family::G => vec![1, 3],
        }
    }

    /// Dynkin edges as 0-based node pairs.
    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A | Family::B | Family::C | Family::F | Family::G => {
                (0..n - 1).map(|i| (i, i + 1)).collect()
            }
            Family::D => {
                let mut e = vec![(0, 2), (1, 2)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
            Family::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// Cartan matrix with `C[i][j] = <α_j, α_i^∨>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let len = self.squared_lengths();
        // Gram matrix scaled by 2 so that all entries are integers.
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            gram[i][i] = 2 * len[i];
        }
        for (i, j) in self.edges() {
            let g = -len[i].max(len[j]);
            gram[i][j] = g;
            gram[j][i] = g;
        }
        (0..n)
            .map(|i| (0..n).map(|j| 2 * gram[j][i] / gram[i][i]).collect())
            .collect()
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Order of the connection index group `P^∨ / Q^∨`.
    pub fn connection_index(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B | Family::C => 2,
            Family::D => 4,
            Family::E => 9 - self.rank,
            Family::F | Family::G => 1,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A reductive Cartan type: irreducible components plus a central torus rank.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub components: Vec<Component>,
    pub central_rank: usize,
}

impl CartanType {
    pub fn new(components: Vec<Component>, central_rank: usize) -> Self {
        CartanType {
            components,
            central_rank,
        }
    }

    pub fn simple(family: Family, rank: usize) -> Result<Self> {
        Ok(CartanType::new(vec![Component::new(family, rank)?], 0))
    }

    /// The trivial (rank 0) type.
    pub fn trivial() -> Self {
        CartanType::default()
    }

    pub fn semisimple_rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    /// First node of each component.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.components.len());
        let mut acc = 0;
        for c in &self.components {
            out.push(acc);
            acc += c.rank;
        }
        out
    }

    /// Block-diagonal Cartan matrix of the semisimple part.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.semisimple_rank();
        let mut m = vec![vec![0; n]; n];
        for (c, off) in self.components.iter().zip(self.offsets()) {
            let block = c.cartan_matrix();
            for i in 0..c.rank {
                for j in 0..c.rank {
                    m[off + i][off + j] = block[i][j];
                }
            }
        }
        m
    }

    pub fn weyl_order(&self) -> u128 {
        self.components.iter().map(|c| c.weyl_order()).product()
    }

    pub fn positive_root_count(&self) -> usize {
        self.components.iter().map(|c| c.positive_root_count()).sum()
    }

    pub fn connection_index(&self) -> usize {
        self.components.iter().map(|c| c.connection_index()).product()
    }

    /// Sorted components, for comparing types up to relabeling.
    pub fn canonical(&self) -> CartanType {
        let mut c = self.components.clone();
        c.sort();
        CartanType::new(c, self.central_rank)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        if self.central_rank > 0 {
            parts.push(format!("T{}", self.central_rank));
        }
        if parts.is_empty() {
            write!(f, "trivial")
        } else {
            write!(f, "{}", parts.join("x"))
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Parses `A3`, `A1xB2`, `D4xT1`, `trivial`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("trivial") {
            return Ok(CartanType::trivial());
        }
        let mut components = Vec::new();
        let mut central = 0;
        let mut pos = 0;
        for part in s.split(['x', '×']) {
            let err = |msg: String| Error::Parse { pos, msg };
            let mut chars = part.chars();
            let head = chars.next().ok_or_else(|| err("empty component".into()))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| err(format!("invalid rank in {part:?}")))?;
            if head.eq_ignore_ascii_case(&'T') {
                central += rank;
            } else {
                let family = Family::from_letter(head)
                    .ok_or_else(|| err(format!("unknown family {head:?}")))?;
                components.push(Component::new(family, rank)?);
            }
            pos += part.len() + 1;
        }
        Ok(CartanType::new(components, central))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let t: CartanType = "A1xB2xT1".parse().unwrap();
        assert_eq!(t.to_string(), "A1xB2xT1");
        assert_eq!(t.semisimple_rank(), 3);
        assert!("E9".parse::<CartanType>().is_err());
        assert!("B1".parse::<CartanType>().is_err());
        assert!("Q3".parse::<CartanType>().is_err());
    }

    #[test]
    fn cartan_conventions() {
        let a2 = Component::new(Family::A, 2).unwrap().cartan_matrix();
        assert_eq!(a2, vec![vec![2, -1], vec![-1, 2]]);
        // B2 with α_1 short: <α_2, α_1^∨> = -2 and <α_1, α_2^∨> = -1.
        let b2 = Component::new(Family::B, 2).unwrap().cartan_matrix();
        assert_eq!(b2[0][1], -2);
        assert_eq!(b2[1][0], -1);
        let g2 = Component::new(Family::G, 2).unwrap().cartan_matrix();
        assert_eq!(g2[0][1], -3);
        assert_eq!(g2[1][0], -1);
    }
}
