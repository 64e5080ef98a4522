//! The Tits extended Weyl group.
//!
//! Elements are pairs `(t, w)` standing for `t·σ(w)`, where `t` is a
//! `p'`-torsion class in `Y ⊗ Q / Y` and `σ` is the section of `W` obtained
//! from reduced words, subject to `σ(s)² = α_s^∨/2` and
//! `σ(s) t σ(s)^{-1} = s(t)`.

use std::fmt;

use num_traits::Zero;

use crate::braid::{reverse, BraidWord};
use crate::error::{Error, Result};
use crate::lattice::{rat, Rational, RationalVector};
use crate::rootdata::RootDatum;
use crate::weyl::{longest_element, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TitsElement {
    /// Canonical torus class.
    pub t: RationalVector,
    pub w: WeylElement,
}

impl TitsElement {
    pub fn is_torus(&self) -> bool {
        self.w.is_identity()
    }
}

/// Arithmetic in the Tits group of a fixed root datum.
#[derive(Clone, Debug)]
pub struct TitsGroup {
    datum: RootDatum,
}

impl fmt::Display for TitsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·σ(len {})", self.t, self.w.length())
    }
}

impl TitsGroup {
    pub fn new(datum: &RootDatum) -> Self {
        TitsGroup {
            datum: datum.clone(),
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    /// Canonical `p'`-part of a torus class.
    pub fn reduce(&self, t: &RationalVector) -> RationalVector {
        self.datum
            .y()
            .p_prime_part(t, self.datum.p())
            .expect("dimension checked by caller")
    }

    fn check(&self, x: &TitsElement) -> Result<()> {
        if x.t.dim() != self.datum.dim() || x.w.perm().len() != self.datum.num_roots() {
            return Err(Error::DatumMismatch(format!(
                "element does not belong to the Tits group of {}",
                self.datum
            )));
        }
        Ok(())
    }

    pub fn identity(&self) -> TitsElement {
        TitsElement {
            t: RationalVector::zeros(self.datum.dim()),
            w: WeylElement::identity(&self.datum),
        }
    }

    /// The torus element `t`.
    pub fn torus(&self, t: &RationalVector) -> Result<TitsElement> {
        self.datum.check_dim(t)?;
        Ok(TitsElement {
            t: self.reduce(t),
            w: WeylElement::identity(&self.datum),
        })
    }

    /// `σ(w)`, which has torus part 0 by construction.
    pub fn sigma(&self, w: &WeylElement) -> TitsElement {
        TitsElement {
            t: RationalVector::zeros(self.datum.dim()),
            w: w.clone(),
        }
    }

    /// Integer vector `c` with `σ(u)σ(v) = (c/2)·σ(uv)`.
    fn section_defect(&self, u: &WeylElement, v: &WeylElement) -> (Vec<i64>, WeylElement) {
        let r = &self.datum;
        let mut acc = vec![0i64; r.rank()];
        let mut cur = u.clone();
        for s in v.reduced_word(r) {
            let down = cur.is_right_descent(s);
            cur = cur.mul_simple(r, s);
            if down {
                let co = &r.root(cur.apply_root(s)).coroot.coords;
                for (a, c) in acc.iter_mut().zip(co) {
                    *a += c;
                }
            }
        }
        (acc, cur)
    }

    pub fn mul(&self, x: &TitsElement, y: &TitsElement) -> Result<TitsElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &TitsElement, y: &TitsElement) -> TitsElement {
        let r = &self.datum;
        let (defect, w) = self.section_defect(&x.w, &y.w);
        let mut t = &x.t + &x.w.act(r, &y.t);
        if defect.iter().any(|&c| c != 0) {
            t.add_scaled_int(&rat(1, 2), &defect);
        }
        TitsElement {
            t: self.reduce(&t),
            w,
        }
    }

    pub fn inverse(&self, x: &TitsElement) -> TitsElement {
        let r = &self.datum;
        let winv = x.w.inverse();
        let (defect, _) = self.section_defect(&x.w, &winv);
        let mut c = x.t.clone();
        c.add_scaled_int(&rat(1, 2), &defect);
        TitsElement {
            t: self.reduce(&-&winv.act(r, &c)),
            w: winv,
        }
    }

    pub fn pow(&self, x: &TitsElement, k: i64) -> TitsElement {
        let mut base = if k < 0 { self.inverse(x) } else { x.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_unchecked(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_unchecked(&base, &base);
            }
        }
        acc
    }

    /// Order of an element (the Tits group is finite-order torsion here).
    pub fn order(&self, x: &TitsElement) -> u64 {
        let id = self.identity();
        let mut cur = x.clone();
        let mut k = 1;
        while cur != id {
            cur = self.mul_unchecked(&cur, x);
            k += 1;
        }
        k
    }

    /// `x y x^{-1}`.
    pub fn conjugate(&self, x: &TitsElement, y: &TitsElement) -> TitsElement {
        let xy = self.mul_unchecked(x, y);
        self.mul_unchecked(&xy, &self.inverse(x))
    }

    /// `σ(s)^{±1}`; the inverse is `(α_s^∨/2)·σ(s)`.
    pub fn generator(&self, s: usize, exponent: i8) -> TitsElement {
        let r = &self.datum;
        let t = if exponent > 0 {
            RationalVector::zeros(r.dim())
        } else {
            self.reduce(&r.coroot_vector(s).scale(&rat(1, 2)))
        };
        TitsElement {
            t,
            w: WeylElement::simple(r, s),
        }
    }

    /// The morphism `ts : B(W) → N` with `ts(𝐬) = σ(s)`.
    pub fn ts(&self, b: &BraidWord) -> Result<TitsElement> {
        let mut acc = self.identity();
        for &(s, e) in &b.letters {
            if s >= self.datum.rank() {
                return Err(Error::DatumMismatch(format!(
                    "generator s{} out of range",
                    s + 1
                )));
            }
            acc = self.mul_unchecked(&acc, &self.generator(s, e));
        }
        Ok(acc)
    }

    /// `ts(𝐛)·ts(reverse(𝐛))`, checked against `(ρ^∨ − w(ρ^∨))/2`.
    pub fn adams_vogan(&self, b: &BraidWord) -> Result<RationalVector> {
        let r = &self.datum;
        let x = self.ts(b)?;
        let y = self.ts(&reverse(b))?;
        let prod = self.mul_unchecked(&x, &y);
        if !prod.is_torus() {
            return Err(Error::verification(
                "adams-vogan",
                format!("ts(b)ts(rev b) is not a torus element for b = {b}"),
            ));
        }
        let rho = r.rho_check();
        let expect = self.reduce(&(&rho - &x.w.act(r, &rho)).scale(&rat(1, 2)));
        if prod.t != expect {
            return Err(Error::verification(
                "adams-vogan",
                format!("b = {b}: got {}, expected {}", prod.t, expect),
            ));
        }
        Ok(prod.t)
    }

    /// `σ(w_I w_0)σ(w_0 w_I)`, checked against `ρ^∨ − ρ_I^∨`.
    pub fn involution_torus(&self, nodes: &[usize]) -> Result<RationalVector> {
        let r = &self.datum;
        let all: Vec<usize> = (0..r.rank()).collect();
        let w0 = longest_element(r, &all);
        let wi = longest_element(r, nodes);
        let x = self.mul_unchecked(&self.sigma(&wi.mul(&w0)), &self.sigma(&w0.mul(&wi)));
        let expect = self.reduce(&(&r.rho_check() - &r.rho_check_parabolic(nodes)));
        if !x.is_torus() || x.t != expect {
            return Err(Error::verification(
                "sigma-involution",
                format!("I = {nodes:?}: got {}, expected {}", x.t, expect),
            ));
        }
        Ok(x.t)
    }

    /// Image of `x` in the Tits group of `target`, which must share the
    /// Cartan type and have a coarser lattice (`Y ⊆ Y'`).
    pub fn project(&self, x: &TitsElement, target: &TitsGroup) -> Result<TitsElement> {
        if self.datum.cartan_type() != target.datum.cartan_type()
            || !target.datum.y().contains_lattice(self.datum.y())?
        {
            return Err(Error::DatumMismatch(format!(
                "no projection from {} to {}",
                self.datum, target.datum
            )));
        }
        Ok(TitsElement {
            t: target.reduce(&x.t),
            w: x.w.clone(),
        })
    }

    /// Order of the torus class of `x`.
    pub fn torus_order(&self, x: &TitsElement) -> u64 {
        self.datum.class_order(&x.t).unwrap_or(u64::MAX)
    }

    /// Whether the torus class is trivial.
    pub fn is_trivial_class(&self, t: &RationalVector) -> bool {
        self.reduce(t).coords().iter().all(Rational::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::lift_weyl;
    use crate::weyl::enumerate_weyl;

    fn datum(s: &str) -> RootDatum {
        s.parse().unwrap()
    }

    #[test]
    fn sigma_s_squared() {
        for name in ["A2:sc", "B3:sc", "G2:sc"] {
            let d = datum(name);
            let g = TitsGroup::new(&d);
            for s in 0..d.rank() {
                let x = g.generator(s, 1);
                let sq = g.mul(&x, &x).unwrap();
                assert!(sq.is_torus());
                assert_eq!(sq.t, g.reduce(&d.coroot_vector(s).scale(&rat(1, 2))));
            }
        }
        let d = datum("A2:sc;p=2");
        let g = TitsGroup::new(&d);
        let x = g.generator(0, 1);
        assert_eq!(g.mul(&x, &x).unwrap(), g.identity());
    }

    #[test]
    fn torus_is_abelian() {
        let d = datum("A2:ad");
        let g = TitsGroup::new(&d);
        let a = g.torus(&"1/3,0".parse().unwrap()).unwrap();
        let b = g.torus(&"1/4,1/2".parse().unwrap()).unwrap();
        let ab = g.mul(&a, &b).unwrap();
        assert_eq!(ab, g.mul(&b, &a).unwrap());
        assert_eq!(ab.t, g.reduce(&"7/12,1/2".parse().unwrap()));
    }

    #[test]
    fn ts_is_a_morphism() {
        let d = datum("C3:sc");
        let g = TitsGroup::new(&d);
        assert_eq!(g.ts(&BraidWord::new()).unwrap(), g.identity());
        let b = BraidWord {
            letters: vec![(0, 1), (0, -1)],
        };
        assert_eq!(g.ts(&b).unwrap(), g.identity());
        let a = BraidWord {
            letters: vec![(0, 1), (2, -1), (1, 1), (1, 1)],
        };
        let c = BraidWord {
            letters: vec![(1, -1), (0, 1), (2, 1)],
        };
        let lhs = g.ts(&a.concat(&c)).unwrap();
        let rhs = g.mul(&g.ts(&a).unwrap(), &g.ts(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let x = g.ts(&a).unwrap();
        assert_eq!(g.mul(&x, &g.inverse(&x)).unwrap(), g.identity());
        assert_eq!(g.pow(&x, -2), g.inverse(&g.pow(&x, 2)));
    }

    #[test]
    fn sigma_agrees_with_ts_of_lifts() {
        let d = datum("B3:sc");
        let g = TitsGroup::new(&d);
        for w in enumerate_weyl(&d, 1_000_000).unwrap() {
            assert_eq!(g.ts(&lift_weyl(&d, &w)).unwrap(), g.sigma(&w));
        }
    }

    #[test]
    fn principal_involution() {
        for name in ["A1:sc", "A3:sc", "D5:sc", "E7:sc", "B4:ad"] {
            let d = datum(name);
            let g = TitsGroup::new(&d);
            let w0 = longest_element(&d, &(0..d.rank()).collect::<Vec<_>>());
            let sq = g.pow(&g.sigma(&w0), 2);
            assert!(sq.is_torus());
            assert_eq!(sq.t, g.reduce(&d.rho_check()), "{name}");
        }
    }

    #[test]
    fn adams_vogan_small_cases() {
        let d = datum("A1:sc");
        let g = TitsGroup::new(&d);
        assert!(g.adams_vogan(&BraidWord::new()).unwrap().is_zero());
        assert_eq!(
            g.adams_vogan(&BraidWord::positive(&[0])).unwrap(),
            "1/2".parse().unwrap()
        );
    }

    #[test]
    fn involution_extremes() {
        let d = datum("B3:sc");
        let g = TitsGroup::new(&d);
        assert!(g.involution_torus(&[0, 1, 2]).unwrap().is_zero());
        assert_eq!(g.involution_torus(&[]).unwrap(), g.reduce(&d.rho_check()));
    }

    #[test]
    fn projection_to_adjoint() {
        let sc = datum("A3:sc");
        let ad = datum("A3:ad");
        let (gs, ga) = (TitsGroup::new(&sc), TitsGroup::new(&ad));
        let x = gs.torus(&sc.fundamental_coweight(0)).unwrap();
        assert!(!x.t.is_zero());
        assert!(gs.project(&x, &ga).unwrap().t.is_zero());
        assert!(ga.project(&x, &gs).is_err());
    }
}
