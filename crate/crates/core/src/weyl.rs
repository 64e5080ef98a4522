//! Weyl group elements as permutations of the root set.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use num_traits::Zero;

use crate::lattice::{Rational, RationalVector};
use crate::rootdata::{CartanType, Component, Family, RootDatum, RootId};

/// An element of `W`, stored as the permutation it induces on root ids
/// (together with its inverse) and its length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<u16>,
    inv: Vec<u16>,
    length: u32,
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement(len {})", self.length)
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.length
            .cmp(&other.length)
            .then_with(|| self.perm.cmp(&other.perm))
    }
}

/// Bit set of simple indices.
pub type NodeSet = u64;

impl WeylElement {
    pub fn identity(r: &RootDatum) -> Self {
        let perm: Vec<u16> = (0..r.num_roots() as u16).collect();
        WeylElement {
            inv: perm.clone(),
            perm,
            length: 0,
        }
    }

    pub fn simple(r: &RootDatum, i: usize) -> Self {
        let perm = r.simple_reflection_perm(i).to_vec();
        WeylElement {
            inv: perm.clone(),
            perm,
            length: 1,
        }
    }

    /// Product of simple reflections `s_{w[0]} s_{w[1]} ...`.
    pub fn from_word(r: &RootDatum, word: &[usize]) -> Self {
        let mut w = WeylElement::identity(r);
        for &i in word {
            w = w.mul_simple(r, i);
        }
        w
    }

    fn from_perm(r: &RootDatum, perm: Vec<u16>) -> Self {
        let mut inv = vec![0u16; perm.len()];
        for (a, &b) in perm.iter().enumerate() {
            inv[b as usize] = a as u16;
        }
        let npos = r.num_positive();
        let length = perm[..npos].iter().filter(|&&b| b as usize >= npos).count() as u32;
        WeylElement { perm, inv, length }
    }

    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Image of a root.
    pub fn apply_root(&self, alpha: RootId) -> RootId {
        self.perm[alpha] as RootId
    }

    pub fn apply_root_inverse(&self, alpha: RootId) -> RootId {
        self.inv[alpha] as RootId
    }

    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    /// `self · other`.
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let perm: Vec<u16> = other.perm.iter().map(|&a| self.perm[a as usize]).collect();
        let inv: Vec<u16> = self.inv.iter().map(|&a| other.inv[a as usize]).collect();
        let npos = perm.len() / 2;
        let length = perm[..npos].iter().filter(|&&b| b as usize >= npos).count() as u32;
        WeylElement { perm, inv, length }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            perm: self.inv.clone(),
            inv: self.perm.clone(),
            length: self.length,
        }
    }

    pub fn pow(&self, r: &RootDatum, k: u64) -> WeylElement {
        let mut acc = WeylElement::identity(r);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self · s_i`.
    pub fn mul_simple(&self, r: &RootDatum, i: usize) -> WeylElement {
        let s = r.simple_reflection_perm(i);
        let npos = r.num_positive();
        let up = (self.perm[i] as usize) < npos;
        let perm: Vec<u16> = s.iter().map(|&a| self.perm[a as usize]).collect();
        let inv: Vec<u16> = self.inv.iter().map(|&a| s[a as usize]).collect();
        WeylElement {
            perm,
            inv,
            length: if up { self.length + 1 } else { self.length - 1 },
        }
    }

    /// `s_i · self`.
    pub fn simple_mul(&self, r: &RootDatum, i: usize) -> WeylElement {
        let s = r.simple_reflection_perm(i);
        let npos = r.num_positive();
        let up = (self.inv[i] as usize) < npos;
        let perm: Vec<u16> = self.perm.iter().map(|&a| s[a as usize]).collect();
        let inv: Vec<u16> = s.iter().map(|&a| self.inv[a as usize]).collect();
        WeylElement {
            perm,
            inv,
            length: if up { self.length + 1 } else { self.length - 1 },
        }
    }

    /// `l(w s_i) < l(w)`.
    pub fn is_right_descent(&self, i: usize) -> bool {
        self.perm[i] as usize >= self.perm.len() / 2
    }

    /// `l(s_i w) < l(w)`.
    pub fn is_left_descent(&self, i: usize) -> bool {
        self.inv[i] as usize >= self.inv.len() / 2
    }

    pub fn right_descents(&self, rank: usize) -> NodeSet {
        (0..rank)
            .filter(|&i| self.is_right_descent(i))
            .fold(0, |acc, i| acc | 1 << i)
    }

    pub fn left_descents(&self, rank: usize) -> NodeSet {
        (0..rank)
            .filter(|&i| self.is_left_descent(i))
            .fold(0, |acc, i| acc | 1 << i)
    }

    /// Lexicographically smallest reduced word: at each step the smallest
    /// left descent is peeled off.
    pub fn reduced_word(&self, r: &RootDatum) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while w.length > 0 {
            let i = (0..r.rank())
                .find(|&i| w.is_left_descent(i))
                .expect("nontrivial elements have a left descent");
            word.push(i);
            w = w.simple_mul(r, i);
        }
        word
    }

    /// Action on a cocharacter `λ` (coroot + central coordinates).
    pub fn act(&self, r: &RootDatum, lambda: &RationalVector) -> RationalVector {
        let n = r.rank();
        let mut coords = vec![Rational::zero(); lambda.dim()];
        coords[n..].clone_from_slice(&lambda.coords()[n..]);
        let mut out = RationalVector::new(coords);
        for i in 0..n {
            out.add_scaled_int(&lambda[i], &r.root(self.perm[i] as usize).coroot.coords);
        }
        out
    }

    /// Action on an integer vector in simple-coroot coordinates.
    pub fn act_int(&self, r: &RootDatum, v: &[i64]) -> Vec<i64> {
        let n = r.rank();
        let mut out = vec![0i64; n];
        for (i, &c) in v.iter().enumerate().take(n) {
            if c == 0 {
                continue;
            }
            let co = &r.root(self.perm[i] as usize).coroot.coords;
            for k in 0..n {
                out[k] += c * co[k];
            }
        }
        out
    }

    /// Order of the element.
    pub fn order(&self) -> u64 {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.mul(self);
            k += 1;
        }
        k
    }

    /// Whether the element maps the set `roots` onto itself.
    pub fn stabilizes(&self, roots: &HashSet<RootId>) -> bool {
        roots.iter().all(|&a| roots.contains(&self.apply_root(a)))
    }
}

/// The reflection `s_α : λ ↦ λ − <α, λ> α^∨`.
pub fn reflection(r: &RootDatum, alpha: RootId) -> Result<WeylElement> {
    if alpha >= r.num_roots() {
        return Err(Error::NotARoot);
    }
    let co = &r.root(alpha).coroot.coords;
    let a = &r.root(alpha).coords;
    let perm = r
        .roots()
        .iter()
        .map(|b| {
            let k: i64 = b.pairing.iter().zip(co).map(|(x, y)| x * y).sum();
            let img: Vec<i64> = b.coords.iter().zip(a).map(|(x, y)| x - k * y).collect();
            r.root_id(&img).expect("reflections permute roots") as u16
        })
        .collect();
    Ok(WeylElement::from_perm(r, perm))
}

/// The reflection in a root given by its simple-root coordinates.
pub fn reflection_of(r: &RootDatum, coords: &[i64]) -> Result<WeylElement> {
    reflection(r, r.root_id(coords).ok_or(Error::NotARoot)?)
}

/// The longest element `w_I` of the parabolic subgroup `W_I`.
pub fn longest_element(r: &RootDatum, nodes: &[usize]) -> WeylElement {
    let mut w = WeylElement::identity(r);
    while let Some(&i) = nodes.iter().find(|&&i| !w.is_right_descent(i)) {
        w = w.mul_simple(r, i);
    }
    w
}

/// `|W|` from the product formula.
pub fn weyl_order(r: &RootDatum) -> u128 {
    r.cartan_type().weyl_order()
}

/// All elements of `W`, in breadth-first order from the identity.
/// Refuses when `|W| > limit`.
pub fn enumerate_weyl(r: &RootDatum, limit: u128) -> Result<Vec<WeylElement>> {
    let order = weyl_order(r);
    if order > limit {
        return Err(Error::TooLarge { order, limit });
    }
    let id = WeylElement::identity(r);
    let mut seen: HashSet<Vec<u16>> = HashSet::with_capacity(order as usize);
    seen.insert(id.perm.clone());
    let mut out = Vec::with_capacity(order as usize);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for i in 0..r.rank() {
            if w.is_right_descent(i) {
                continue;
            }
            let v = w.mul_simple(r, i);
            if seen.insert(v.perm.clone()) {
                queue.push_back(v);
            }
        }
        out.push(w);
    }
    Ok(out)
}

/// A classified reflection subsystem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsystem {
    pub cartan_type: CartanType,
    /// Simple roots of the subsystem with respect to `Φ⁺`.
    pub simple_roots: Vec<RootId>,
    pub weyl_order: u128,
}

/// `<β, γ^∨>` for two roots.
pub fn root_pairing(r: &RootDatum, beta: RootId, gamma: RootId) -> i64 {
    r.root(beta)
        .pairing
        .iter()
        .zip(&r.root(gamma).coroot.coords)
        .map(|(x, y)| x * y)
        .sum()
}

fn reflect_root(r: &RootDatum, beta: RootId, gamma: RootId) -> Option<RootId> {
    let k = root_pairing(r, beta, gamma);
    let img: Vec<i64> = r
        .root(beta)
        .coords
        .iter()
        .zip(&r.root(gamma).coords)
        .map(|(x, y)| x - k * y)
        .collect();
    r.root_id(&img)
}

/// Cartan type of a root subsystem, read off from its simple system.
pub fn classify_subsystem(r: &RootDatum, roots: &[RootId]) -> Result<Subsystem> {
    let set: HashSet<RootId> = roots.iter().copied().collect();
    for &a in &set {
        if a >= r.num_roots() {
            return Err(Error::NotARoot);
        }
        if !set.contains(&r.negate(a)) {
            return Err(Error::NotASubsystem("not closed under negation".into()));
        }
    }
    for &a in &set {
        for &b in &set {
            match reflect_root(r, b, a) {
                Some(c) if set.contains(&c) => {}
                _ => {
                    return Err(Error::NotASubsystem(
                        "not closed under its reflections".into(),
                    ))
                }
            }
        }
    }
    let mut positive: Vec<RootId> = set.iter().copied().filter(|&a| r.is_positive(a)).collect();
    positive.sort_unstable();
    // β is simple iff s_β makes exactly one positive root of the subsystem negative.
    let simple: Vec<RootId> = positive
        .iter()
        .copied()
        .filter(|&b| {
            positive
                .iter()
                .filter(|&&g| !r.is_positive(reflect_root(r, g, b).unwrap()))
                .count()
                == 1
        })
        .collect();
    let cartan_type = classify_cartan(r, &simple)?;
    Ok(Subsystem {
        weyl_order: cartan_type.weyl_order(),
        cartan_type: cartan_type.canonical(),
        simple_roots: simple,
    })
}

/// Classifies the Cartan matrix `A[i][j] = <b_j, b_i^∨>` of a simple system.
pub fn classify_cartan(r: &RootDatum, simple: &[RootId]) -> Result<CartanType> {
    let m = simple.len();
    let a: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| root_pairing(r, simple[j], simple[i])).collect())
        .collect();
    let mut seen = vec![false; m];
    let mut components = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..m {
                if !seen[j] && a[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        components.push(classify_connected(&a, &comp)?);
    }
    Ok(CartanType::new(components, 0))
}

fn classify_connected(a: &[Vec<i64>], nodes: &[usize]) -> Result<Component> {
    let rank = nodes.len();
    let bad = || Error::NotASubsystem("Cartan matrix of unknown type".into());
    let neighbors = |i: usize| -> Vec<usize> {
        nodes
            .iter()
            .copied()
            .filter(|&j| j != i && a[i][j] != 0)
            .collect()
    };
    let mut multiple = None;
    let mut edges = 0;
    for (x, &i) in nodes.iter().enumerate() {
        for &j in &nodes[x + 1..] {
            let prod = a[i][j] * a[j][i];
            if prod != 0 {
                edges += 1;
            }
            if prod > 1 {
                multiple = Some((i, j, prod));
            }
        }
    }
    if edges != rank - 1 {
        return Err(bad());
    }
    let family = match multiple {
        Some((_, _, 3)) => Family::G,
        Some((i, j, 2)) => {
            if rank == 2 {
                Family::B
            } else if rank == 4 && neighbors(i).len() == 2 && neighbors(j).len() == 2 {
                Family::F
            } else {
                let (end, other) = if neighbors(i).len() == 1 { (i, j) } else { (j, i) };
                // |<other, end^∨>| = 2 means `end` is short.
                if a[end][other].abs() == 2 {
                    Family::B
                } else {
                    Family::C
                }
            }
        }
        Some(_) => return Err(bad()),
        None => {
            let branch: Vec<usize> = nodes
                .iter()
                .copied()
                .filter(|&i| neighbors(i).len() >= 3)
                .collect();
            match branch.as_slice() {
                [] => Family::A,
                [b] => {
                    let mut legs: Vec<usize> = neighbors(*b)
                        .into_iter()
                        .map(|start| {
                            let (mut prev, mut cur, mut len) = (*b, start, 1);
                            loop {
                                let next: Vec<usize> =
                                    neighbors(cur).into_iter().filter(|&x| x != prev).collect();
                                match next.as_slice() {
                                    [] => break len,
                                    [nx] => {
                                        prev = cur;
                                        cur = *nx;
                                        len += 1;
                                    }
                                    _ => break usize::MAX,
                                }
                            }
                        })
                        .collect();
                    legs.sort_unstable();
                    match legs.as_slice() {
                        [1, 1, _] => Family::D,
                        [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Family::E,
                        _ => return Err(bad()),
                    }
                }
                _ => return Err(bad()),
            }
        }
    };
    Component::new(family, rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    fn sc(s: &str) -> RootDatum {
        s.parse::<RootDatum>()
            .unwrap_or_else(|_| RootDatum::simply_connected(s.parse().unwrap()).unwrap())
    }

    #[test]
    fn reflection_acts_on_coweights() {
        let d = sc("A1");
        let s = reflection(&d, 0).unwrap();
        let half = RationalVector::new(vec![rat(1, 2)]);
        assert_eq!(s.act(&d, &half), RationalVector::new(vec![rat(-1, 2)]));
        assert!(s.mul(&s).is_identity());
        assert!(reflection(&d, 7).is_err());
    }

    #[test]
    fn braid_relation_a2() {
        let d = sc("A2");
        let a = WeylElement::from_word(&d, &[0, 1, 0]);
        let b = WeylElement::from_word(&d, &[1, 0, 1]);
        assert_eq!(a, b);
        assert_eq!(a, reflection_of(&d, &[1, 1]).unwrap());
        assert_ne!(
            WeylElement::from_word(&d, &[0, 1]),
            WeylElement::from_word(&d, &[1, 0])
        );
    }

    #[test]
    fn longest_elements() {
        let d = sc("D4");
        let w0 = longest_element(&d, &[0, 1, 2, 3]);
        assert_eq!(w0.length(), 12);
        assert_eq!(w0.reduced_word(&d).len(), 12);
        assert!(w0.mul(&w0).is_identity());
        for i in 0..4 {
            assert!(!d.is_positive(w0.apply_root(i)));
        }
        assert!(longest_element(&d, &[]).is_identity());
        let e6 = sc("E6");
        assert_eq!(longest_element(&e6, &[1, 2, 3, 4]).length(), 12);
        let a1 = sc("A1");
        assert_eq!(longest_element(&a1, &[0]), WeylElement::simple(&a1, 0));
    }

    #[test]
    fn reduced_words_are_lexicographically_least() {
        let d = sc("A2");
        let w0 = longest_element(&d, &[0, 1]);
        assert_eq!(w0.reduced_word(&d), vec![0, 1, 0]);
        assert!(WeylElement::identity(&d).reduced_word(&d).is_empty());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_weyl(&sc("A2"), 1_000_000).unwrap().len(), 6);
        assert_eq!(enumerate_weyl(&sc("F4"), 1_000_000).unwrap().len(), 1152);
        assert_eq!(enumerate_weyl(&sc("E6"), 1_000_000).unwrap().len(), 51840);
        assert!(matches!(
            enumerate_weyl(&sc("E8"), 1_000_000),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn length_is_inversion_count() {
        for t in ["A3", "B3", "C3", "G2"] {
            let d = sc(t);
            for w in enumerate_weyl(&d, 1_000_000).unwrap() {
                let inv = (0..d.num_positive())
                    .filter(|&a| !d.is_positive(w.apply_root(a)))
                    .count();
                assert_eq!(w.length(), inv);
                for i in 0..d.rank() {
                    let l = w.mul_simple(&d, i).length() as i64;
                    assert_eq!((l - w.length() as i64).abs(), 1);
                }
                assert_eq!(WeylElement::from_word(&d, &w.reduced_word(&d)), w);
            }
        }
    }

    #[test]
    fn classify_whole_and_empty() {
        let d = sc("E6");
        let all: Vec<RootId> = (0..d.num_roots()).collect();
        let s = classify_subsystem(&d, &all).unwrap();
        assert_eq!(s.cartan_type.to_string(), "E6");
        assert_eq!(s.weyl_order, 51840);
        let e = classify_subsystem(&d, &[]).unwrap();
        assert_eq!(e.cartan_type, CartanType::trivial());
        assert_eq!(e.weyl_order, 1);
        assert!(classify_subsystem(&d, &[0]).is_err());
    }

    #[test]
    fn classify_long_roots_of_b2() {
        let d = sc("B2");
        // In B2 with α_1 short, the long roots are ±α_2 and ±(2α_1+α_2).
        let ids: Vec<RootId> = [[0, 1], [2, 1], [0, -1], [-2, -1]]
            .iter()
            .map(|c| d.root_id(c).unwrap())
            .collect();
        let s = classify_subsystem(&d, &ids).unwrap();
        assert_eq!(s.cartan_type.to_string(), "A1xA1");
        assert_eq!(s.weyl_order, 4);
    }

    #[test]
    fn classify_types_of_full_systems() {
        for t in ["B3", "C4", "F4", "G2", "D5", "E7", "A1xB2"] {
            let d = sc(t);
            let all: Vec<RootId> = (0..d.num_roots()).collect();
            let s = classify_subsystem(&d, &all).unwrap();
            let want: CartanType = t.parse().unwrap();
            assert_eq!(s.cartan_type, want.canonical(), "{t}");
        }
    }
}
