//! Braid words, lifts of Weyl elements and the Garside normal form.
//!
//! The normal form of a braid is `Δ^inf · x_1 ⋯ x_r` with `Δ` the lift of
//! `w_0`, each `x_i` a proper nontrivial simple element (a Weyl element),
//! and every pair left-weighted: `L(x_{i+1}) ⊆ R(x_i)`.

use std::fmt;

use crate::rootdata::RootDatum;
use crate::weyl::{longest_element, WeylElement};

/// A signed word in the braid generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    /// `(simple index, exponent)` with exponent `±1`.
    pub letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new() -> Self {
        BraidWord::default()
    }

    /// The positive word `s_{w[0]} s_{w[1]} ⋯`.
    pub fn positive(word: &[usize]) -> Self {
        BraidWord {
            letters: word.iter().map(|&i| (i, 1)).collect(),
        }
    }

    pub fn generator(i: usize, exponent: i8) -> Self {
        BraidWord {
            letters: vec![(i, exponent.signum())],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            letters: self.letters.iter().rev().map(|&(i, e)| (i, -e)).collect(),
        }
    }

    /// `b^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { letters }
    }

    /// The image in `W`.
    pub fn image(&self, r: &RootDatum) -> WeylElement {
        let mut w = WeylElement::identity(r);
        for &(i, _) in &self.letters {
            w = w.mul_simple(r, i);
        }
        w
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&(_, e)| e > 0)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(i, e)| {
                if e > 0 {
                    format!("s{}", i + 1)
                } else {
                    format!("s{}^-1", i + 1)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The lift `w ↦ 𝐰` through the canonical reduced word.
pub fn lift_weyl(r: &RootDatum, w: &WeylElement) -> BraidWord {
    BraidWord::positive(&w.reduced_word(r))
}

/// The anti-automorphism fixing every generator.
pub fn reverse(b: &BraidWord) -> BraidWord {
    BraidWord {
        letters: b.letters.iter().rev().copied().collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GarsideNormalForm {
    pub infimum: i64,
    pub factors: Vec<WeylElement>,
}

impl GarsideNormalForm {
    pub fn is_identity(&self) -> bool {
        self.infimum == 0 && self.factors.is_empty()
    }

    /// Canonical length `inf + r`.
    pub fn supremum(&self) -> i64 {
        self.infimum + self.factors.len() as i64
    }
}

/// The diagram automorphism `s ↦ w_0 s w_0` on simple indices.
fn delta_conjugation(r: &RootDatum, w0: &WeylElement) -> Vec<usize> {
    (0..r.rank())
        .map(|i| r.negate(w0.apply_root(i)))
        .collect()
}

/// Makes `(x, y)` left-weighted; returns whether anything changed.
fn left_weight(r: &RootDatum, x: &mut WeylElement, y: &mut WeylElement) -> bool {
    let mut changed = false;
    loop {
        let s = (0..r.rank()).find(|&s| y.is_left_descent(s) && !x.is_right_descent(s));
        match s {
            Some(s) => {
                *x = x.mul_simple(r, s);
                *y = y.simple_mul(r, s);
                changed = true;
            }
            None => return changed,
        }
    }
}

/// Left normal form of a braid word.
pub fn garside_nf(r: &RootDatum, b: &BraidWord) -> GarsideNormalForm {
    let w0 = longest_element(r, &(0..r.rank()).collect::<Vec<_>>());
    let phi = delta_conjugation(r, &w0);

    // Rewrite s^{-1} = Δ^{-1}·(w_0 s) and move every Δ^{-1} to the front;
    // a positive piece passed by c copies of Δ^{-1} is twisted by φ^c.
    let mut negatives_after = b.letters.iter().filter(|&&(_, e)| e < 0).count();
    let k = negatives_after as i64;
    let mut simples: Vec<WeylElement> = Vec::with_capacity(b.len());
    for &(i, e) in &b.letters {
        if e < 0 {
            negatives_after -= 1;
        }
        let j = if negatives_after % 2 == 1 { phi[i] } else { i };
        if e > 0 {
            simples.push(WeylElement::simple(r, j));
        } else {
            simples.push(w0.mul(&WeylElement::simple(r, j)));
        }
    }

    let mut factors: Vec<WeylElement> = Vec::new();
    for x in simples {
        if x.is_identity() {
            continue;
        }
        factors.push(x);
        let mut j = factors.len() - 1;
        while j > 0 {
            let (head, tail) = factors.split_at_mut(j);
            if !left_weight(r, &mut head[j - 1], &mut tail[0]) {
                break;
            }
            j -= 1;
        }
        while factors.last().is_some_and(|f| f.is_identity()) {
            factors.pop();
        }
    }
    debug_assert!(factors
        .windows(2)
        .all(|p| p[1].left_descents(r.rank()) & !p[0].right_descents(r.rank()) == 0));

    let deltas = factors.iter().take_while(|f| **f == w0).count();
    factors.drain(..deltas);
    GarsideNormalForm {
        infimum: deltas as i64 - k,
        factors,
    }
}

/// Equality in the braid group.
pub fn braid_equal(r: &RootDatum, a: &BraidWord, b: &BraidWord) -> bool {
    garside_nf(r, a) == garside_nf(r, b)
}
