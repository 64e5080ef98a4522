//! Exact rational vectors and full-rank lattices in `Q^n`.
//!
//! A [`Lattice`] is stored in a canonical form: the smallest positive integer
//! `d` with `d·L ⊆ Z^n`, together with the row-style Hermite normal form of
//! `d·L`. Two lattices are equal iff their canonical forms are equal, and the
//! triangular shape of the normal form gives linear-time membership and
//! reduction.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A vector of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&x| int(x)).collect())
    }

    /// Vector `v / d` for an integer vector `v`.
    pub fn from_fraction(v: &[i64], d: i64) -> Self {
        RationalVector(v.iter().map(|&x| rat(x, d)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RationalVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&int(k))
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(other)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Dot product against an integer vector.
    pub fn dot_int(&self, other: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for (a, &b) in self.0.iter().zip(other) {
            if b != 0 && !a.is_zero() {
                acc += a * int(b);
            }
        }
        acc
    }

    /// Adds `k·v` for an integer vector `v`.
    pub fn add_scaled_int(&mut self, k: &Rational, v: &[i64]) {
        if k.is_zero() {
            return;
        }
        for (a, &b) in self.0.iter_mut().zip(v) {
            if b != 0 {
                *a += k * int(b);
            }
        }
    }

    /// Zero-pads (or truncates) to the given dimension.
    pub fn resized(&self, dim: usize) -> Self {
        let mut c = self.0.clone();
        c.resize(dim, Rational::zero());
        RationalVector(c)
    }

    /// Integer numerators over the common denominator, when they fit in `i64`.
    pub fn to_scaled_i64(&self) -> Option<(Vec<i64>, i64)> {
        let d = self.denominator();
        let v = self
            .0
            .iter()
            .map(|x| (x.numer() * (&d / x.denom())).to_i64())
            .collect::<Option<Vec<_>>>()?;
        Some((v, d.to_i64()?))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|x| x.to_string()).collect()
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for RationalVector {
    type Err = Error;

    /// Parses comma-separated rationals such as `1/2, -3, 0`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let t = part.trim();
            let q = parse_rational(t).ok_or_else(|| Error::Parse {
                pos: offset,
                msg: format!("invalid rational {t:?}"),
            })?;
            out.push(q);
            offset += part.len() + 1;
        }
        Ok(RationalVector(out))
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let q = Rational::from_str(s).ok()?;
    Some(q)
}

impl<'a> Add<&'a RationalVector> for &'a RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a RationalVector> for &'a RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl AddAssign<&RationalVector> for RationalVector {
    fn add_assign(&mut self, rhs: &RationalVector) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&RationalVector> for RationalVector {
    fn sub_assign(&mut self, rhs: &RationalVector) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&RationalVector> for &Rational {
    type Output = RationalVector;
    fn mul(self, rhs: &RationalVector) -> RationalVector {
        rhs.scale(self)
    }
}

/// A full-rank lattice in `Q^dim`, kept in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    /// Smallest positive `d` with `d·L ⊆ Z^dim`.
    denom: BigInt,
    /// Row-style Hermite normal form of `d·L`: upper triangular, positive
    /// pivots, entries above each pivot reduced into `[0, pivot)`.
    hnf: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// The standard lattice `Z^dim`.
    pub fn standard(dim: usize) -> Self {
        let hnf = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        Lattice {
            dim,
            denom: BigInt::one(),
            hnf,
        }
    }

    /// Lattice spanned by linearly independent basis rows.
    pub fn from_basis(rows: &[RationalVector]) -> Result<Self> {
        let dim = rows.first().map(|r| r.dim()).unwrap_or(0);
        if rows.len() != dim {
            return Err(Error::InvalidLattice(format!(
                "expected {dim} basis rows, got {}",
                rows.len()
            )));
        }
        Self::from_generators(dim, rows)
    }

    /// Lattice generated by any finite set of vectors; they must span `Q^dim`.
    pub fn from_generators(dim: usize, gens: &[RationalVector]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.dim(),
            });
        }
        let d = gens
            .iter()
            .fold(BigInt::one(), |acc, g| acc.lcm(&g.denominator()));
        let rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| {
                g.coords()
                    .iter()
                    .map(|x| x.numer() * (&d / x.denom()))
                    .collect()
            })
            .collect();
        let h = hermite_normal_form(rows, dim);
        if h.len() != dim || (0..dim).any(|i| h[i][i].is_zero()) {
            return Err(Error::InvalidLattice("generators are not of full rank".into()));
        }
        let content = h
            .iter()
            .flatten()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let k = d.gcd(&content);
        let denom = &d / &k;
        let hnf = h
            .into_iter()
            .map(|r| r.into_iter().map(|x| x / &k).collect())
            .collect();
        Ok(Lattice { dim, denom, hnf })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> Vec<RationalVector> {
        self.hnf
            .iter()
            .map(|r| {
                RationalVector(
                    r.iter()
                        .map(|x| Rational::new(x.clone(), self.denom.clone()))
                        .collect(),
                )
            })
            .collect()
    }

    fn check_dim(&self, v: &RationalVector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// Coordinates of `v` against the canonical basis (rational in general).
    pub fn coordinates(&self, v: &RationalVector) -> Result<Vec<Rational>> {
        self.check_dim(v)?;
        let d = Rational::from_integer(self.denom.clone());
        let mut w: Vec<Rational> = v.coords().iter().map(|x| x * &d).collect();
        let mut x = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let c = &w[i] / Rational::from_integer(self.hnf[i][i].clone());
            if !c.is_zero() {
                for j in i..self.dim {
                    w[j] -= &c * Rational::from_integer(self.hnf[i][j].clone());
                }
            }
            x.push(c);
        }
        Ok(x)
    }

    /// True iff `v` is an integral combination of the basis rows.
    pub fn contains(&self, v: &RationalVector) -> Result<bool> {
        Ok(self.coordinates(v)?.iter().all(|c| c.is_integer()))
    }

    /// Canonical representative of `v + L`: coefficients in `[0, 1)` against
    /// the triangular canonical basis.
    pub fn reduce(&self, v: &RationalVector) -> Result<RationalVector> {
        self.check_dim(v)?;
        let d = Rational::from_integer(self.denom.clone());
        let mut w: Vec<Rational> = v.coords().iter().map(|x| x * &d).collect();
        for i in 0..self.dim {
            let p = Rational::from_integer(self.hnf[i][i].clone());
            let c = (&w[i] / p).floor();
            if !c.is_zero() {
                for j in i..self.dim {
                    w[j] -= &c * Rational::from_integer(self.hnf[i][j].clone());
                }
            }
        }
        Ok(RationalVector(w.into_iter().map(|x| x / &d).collect()))
    }

    /// Smallest `k ≥ 1` with `k·v ∈ L`.
    pub fn class_order(&self, v: &RationalVector) -> Result<BigInt> {
        Ok(self
            .coordinates(v)?
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom())))
    }

    /// The `p'`-part of the class of `v` in `Q^n / L` (identity when `p = 0`).
    pub fn p_prime_part(&self, v: &RationalVector, p: u64) -> Result<RationalVector> {
        if p == 0 {
            return self.reduce(v);
        }
        let m = self.class_order(v)?;
        let pb = BigInt::from(p);
        let mut mp = BigInt::one();
        let mut rest = m.clone();
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            mp *= &pb;
        }
        let e = if mp.is_one() {
            BigInt::one()
        } else if rest.is_one() {
            BigInt::zero()
        } else {
            // e ≡ 0 (mod mp), e ≡ 1 (mod rest)
            let inv = mod_inverse(&(&mp % &rest), &rest);
            &mp * inv
        };
        self.reduce(&v.scale(&Rational::from_integer(e)))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        for b in other.basis() {
            if !self.contains(&b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Covolume `|det|` of the lattice.
    pub fn covolume(&self) -> Rational {
        let prod = self.hnf.iter().enumerate().fold(BigInt::one(), |acc, (i, r)| acc * &r[i]);
        Rational::new(prod, num_traits::pow(self.denom.clone(), self.dim))
    }

    /// The sublattice of vectors whose coordinates outside `keep` vanish,
    /// expressed in the `keep` coordinates.
    pub fn restrict_to_coordinates(&self, keep: &[usize]) -> Result<Lattice> {
        let dropped: Vec<usize> = (0..self.dim).filter(|i| !keep.contains(i)).collect();
        let order: Vec<usize> = dropped.iter().chain(keep).copied().collect();
        let rows: Vec<Vec<BigInt>> = self
            .hnf
            .iter()
            .map(|r| order.iter().map(|&j| r[j].clone()).collect())
            .collect();
        let h = hermite_normal_form(rows, self.dim);
        let k = dropped.len();
        let sub: Vec<RationalVector> = h[k..]
            .iter()
            .map(|r| {
                RationalVector(
                    r[k..]
                        .iter()
                        .map(|x| Rational::new(x.clone(), self.denom.clone()))
                        .collect(),
                )
            })
            .collect();
        Lattice::from_generators(keep.len(), &sub)
    }
}

/// Inverse of a square rational matrix, or `None` if singular.
pub(crate) fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..2 * n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

/// Row-style Hermite normal form of an integer matrix; zero rows are dropped.
pub(crate) fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    let mut pos = 0;
    for col in 0..dim {
        if pos >= m {
            break;
        }
        for i in pos + 1..m {
            if rows[i][col].is_zero() {
                continue;
            }
            if rows[pos][col].is_zero() {
                rows.swap(pos, i);
                continue;
            }
            let a = rows[pos][col].clone();
            let b = rows[i][col].clone();
            let e = a.extended_gcd(&b);
            let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
            let (rp, ri) = (rows[pos].clone(), rows[i].clone());
            for j in 0..dim {
                rows[pos][j] = &e.x * &rp[j] + &e.y * &ri[j];
                rows[i][j] = &ag * &ri[j] - &bg * &rp[j];
            }
        }
        if rows[pos][col].is_zero() {
            continue;
        }
        if rows[pos][col].is_negative() {
            for x in rows[pos].iter_mut() {
                *x = -x.clone();
            }
        }
        let piv = rows[pos][col].clone();
        for k in 0..pos {
            let q = rows[k][col].div_floor(&piv);
            if !q.is_zero() {
                for j in col..dim {
                    let t = &q * &rows[pos][j];
                    rows[k][j] -= t;
                }
            }
        }
        pos += 1;
    }
    rows.truncate(pos);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> RationalVector {
        s.parse().unwrap()
    }

    fn half_lattice() -> Lattice {
        Lattice::from_basis(&[v("1/2,1/2"), v("0,1")]).unwrap()
    }

    #[test]
    fn membership() {
        let z2 = Lattice::standard(2);
        assert!(z2.contains(&v("1,-3")).unwrap());
        assert!(!z2.contains(&v("1/2,0")).unwrap());
        // (1/2, 3/2) = 1·(1/2,1/2) + 1·(0,1)
        assert!(half_lattice().contains(&v("1/2,3/2")).unwrap());
        assert!(!half_lattice().contains(&v("1/2,0")).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let z2 = Lattice::standard(2);
        assert!(matches!(
            z2.contains(&v("1,2,3")),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        assert!(z2.reduce(&v("1")).is_err());
    }

    #[test]
    fn quotient_representatives() {
        let z2 = Lattice::standard(2);
        assert_eq!(z2.reduce(&v("5/4,-3/4")).unwrap(), v("1/4,1/4"));
        assert_eq!(z2.reduce(&v("0,0")).unwrap(), v("0,0"));
        let l = half_lattice();
        let a = v("3/4,0");
        let b = &a + &v("1/2,1/2");
        assert_eq!(l.reduce(&a).unwrap(), l.reduce(&b).unwrap());
        assert_ne!(l.reduce(&a).unwrap(), l.reduce(&v("1/4,0")).unwrap());
    }

    #[test]
    fn orders() {
        assert_eq!(Lattice::standard(1).class_order(&v("2/3")).unwrap(), BigInt::from(3));
        assert_eq!(Lattice::standard(2).class_order(&v("1/2,1/3")).unwrap(), BigInt::from(6));
        assert_eq!(half_lattice().class_order(&v("1/4,1/4")).unwrap(), BigInt::from(2));
    }

    #[test]
    fn p_prime_parts() {
        let z = Lattice::standard(1);
        assert_eq!(z.p_prime_part(&v("1/6"), 0).unwrap(), v("1/6"));
        assert_eq!(z.p_prime_part(&v("1/2"), 2).unwrap(), v("0"));
        let w = z.p_prime_part(&v("1/6"), 2).unwrap();
        // 3·w ∈ Z and v − w has order 2
        assert!(z.contains(&w.scale_int(3)).unwrap());
        assert_eq!(z.class_order(&(&v("1/6") - &w)).unwrap(), BigInt::from(2));
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = Lattice::from_basis(&[v("1/2,1/2"), v("0,1")]).unwrap();
        let b = Lattice::from_basis(&[v("1/2,3/2"), v("1/2,1/2")]).unwrap();
        assert_eq!(a, b);
        let c = Lattice::from_generators(2, &[v("1,0"), v("0,1"), v("1/2,1/2")]).unwrap();
        assert_eq!(a, c);
        assert!(a.contains_lattice(&Lattice::standard(2)).unwrap());
        assert_eq!(a.covolume(), rat(1, 2));
    }

    #[test]
    fn rank_deficient_generators_rejected() {
        assert!(Lattice::from_generators(2, &[v("1,1"), v("2,2")]).is_err());
    }

    #[test]
    fn restriction_to_coordinates() {
        // span{(1/2, 1/2), (0, 1)} ∩ {y = 0} = span{(1, 0)}
        let l = half_lattice().restrict_to_coordinates(&[0]).unwrap();
        assert_eq!(l, Lattice::standard(1));
    }
}
