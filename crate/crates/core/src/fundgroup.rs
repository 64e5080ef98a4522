//! The group `𝒜 = N_W(Π ∪ {α̃_1, …, α̃_k})` of extended-diagram symmetries,
//! the isomorphism `ϖ^∨ : 𝒜 → P^∨/Q^∨`, the map `ι` to the center of the
//! simply connected group, and the subgroup `𝒜_G`.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::invariant_factors;
use crate::lattice::{Lattice, RationalVector};
use crate::rootdata::{RootDatum, RootId};
use crate::weyl::{longest_element, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FundamentalGroupElement {
    pub w: WeylElement,
    /// Image of each extended node: simple nodes `0..n`, then `α̃_k` as `n + k`.
    pub node_perm: Vec<usize>,
    /// `ϖ^∨(a)`, reduced modulo `Q^∨`.
    pub varpi: RationalVector,
    pub order: u64,
}

/// `𝒜` for the semisimple part of a root datum.
#[derive(Clone, Debug)]
pub struct FundamentalGroup {
    datum: RootDatum,
    /// `(node j, c_j)` for each minuscule node.
    pub generators: Vec<(usize, FundamentalGroupElement)>,
    /// All elements, identity first, in breadth-first order from the generators.
    pub elements: Vec<FundamentalGroupElement>,
}

/// Root ids of the extended diagram nodes.
pub fn extended_nodes(r: &RootDatum) -> Vec<RootId> {
    let mut nodes: Vec<RootId> = (0..r.rank()).collect();
    nodes.extend((0..r.num_components()).map(|k| r.lowest_root(k)));
    nodes
}

/// Vertices `{0} ∪ {ϖ_i^∨ / m_i}` of the alcove of component `k`.
fn alcove_vertices(r: &RootDatum, k: usize) -> HashSet<RationalVector> {
    let marks = r.marks(k);
    let mut out = HashSet::from([RationalVector::zeros(r.dim())]);
    for (i, m) in r.component_nodes(k).zip(marks) {
        out.insert(r.fundamental_coweight(i).scale(&crate::lattice::rat(1, m)));
    }
    out
}

impl FundamentalGroup {
    pub fn new(r: &RootDatum) -> Result<Self> {
        let ext = extended_nodes(r);
        let mut generators = Vec::new();
        for k in 0..r.num_components() {
            let nodes: Vec<usize> = r.component_nodes(k).collect();
            let ws = longest_element(r, &nodes);
            for (j, _) in r.minuscule_coweights() {
                if r.component_of_node(j) != k {
                    continue;
                }
                let rest: Vec<usize> = nodes.iter().copied().filter(|&i| i != j).collect();
                let c = ws.mul(&longest_element(r, &rest));
                generators.push((j, Self::make(r, &ext, c)?));
            }
        }
        let identity = Self::make(r, &ext, WeylElement::identity(r))?;
        let mut seen: HashSet<WeylElement> = HashSet::from([identity.w.clone()]);
        let mut elements = vec![];
        let mut queue = VecDeque::from([identity]);
        while let Some(a) = queue.pop_front() {
            for (_, g) in &generators {
                let w = a.w.mul(&g.w);
                if seen.insert(w.clone()) {
                    queue.push_back(Self::make(r, &ext, w)?);
                }
            }
            elements.push(a);
        }
        Ok(FundamentalGroup {
            datum: r.clone(),
            generators,
            elements,
        })
    }

    fn make(r: &RootDatum, ext: &[RootId], w: WeylElement) -> Result<FundamentalGroupElement> {
        let pos: HashMap<RootId, usize> = ext.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let node_perm = ext
            .iter()
            .map(|&a| {
                pos.get(&w.apply_root(a)).copied().ok_or_else(|| {
                    Error::verification("fundamental-group", "element does not permute the extended diagram")
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let varpi = varpi_of(r, &w)?;
        let order = w.order();
        Ok(FundamentalGroupElement {
            w,
            node_perm,
            varpi,
            order,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    /// `c_j = w_S w_{S∖{j}}` for the minuscule node `j` (0-based).
    pub fn generator(&self, j: usize) -> Option<&FundamentalGroupElement> {
        self.generators.iter().find(|(k, _)| *k == j).map(|(_, c)| c)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> &FundamentalGroupElement {
        &self.elements[0]
    }

    /// Invariant factors of `𝒜`.
    pub fn structure(&self) -> Vec<u64> {
        invariant_factors(&self.elements.iter().map(|a| a.order).collect::<Vec<_>>())
    }

    pub fn find(&self, w: &WeylElement) -> Option<&FundamentalGroupElement> {
        self.elements.iter().find(|a| a.w == *w)
    }

    pub fn mul(&self, a: &FundamentalGroupElement, b: &FundamentalGroupElement) -> &FundamentalGroupElement {
        let w = a.w.mul(&b.w);
        self.find(&w).expect("𝒜 is closed under multiplication")
    }

    /// `𝒜_G = {a : ϖ^∨(a) ∈ Y}`.
    pub fn a_sub_g(&self, r: &RootDatum) -> Result<Vec<FundamentalGroupElement>> {
        self.check_datum(r)?;
        let mut out = Vec::new();
        for a in &self.elements {
            if r.y().contains(&a.varpi)? {
                out.push(a.clone());
            }
        }
        Ok(out)
    }

    fn check_datum(&self, r: &RootDatum) -> Result<()> {
        if r.cartan_type() != self.datum.cartan_type() {
            return Err(Error::DatumMismatch(format!(
                "{} has a different Cartan type from {}",
                r, self.datum
            )));
        }
        Ok(())
    }

    /// `ι(a)`: the `p'`-part of `ϖ^∨(a)` as a class modulo `Q^∨`.
    pub fn iota(&self, a: &FundamentalGroupElement) -> Result<RationalVector> {
        let p = self.datum.p();
        if p != 0 && a.order.is_multiple_of(p) {
            return Err(Error::OrderDivisibleByP { order: a.order, p });
        }
        Lattice::standard(self.datum.dim()).p_prime_part(&a.varpi, p)
    }

    /// `𝒜_{p'}`: elements whose order is prime to `p`.
    pub fn p_prime_elements(&self) -> Vec<&FundamentalGroupElement> {
        let p = self.datum.p();
        self.elements
            .iter()
            .filter(|a| p == 0 || a.order % p != 0)
            .collect()
    }
}

/// `ϖ^∨(a)`: the translation `μ` (mod `Q^∨`) such that `x ↦ a(x) + μ`
/// permutes the vertices of the fundamental alcove.
pub fn varpi_of(r: &RootDatum, w: &WeylElement) -> Result<RationalVector> {
    let mut total = RationalVector::zeros(r.dim());
    for k in 0..r.num_components() {
        let verts = alcove_vertices(r, k);
        let mut candidates = vec![RationalVector::zeros(r.dim())];
        for (j, v) in r.minuscule_coweights() {
            if r.component_of_node(j) == k {
                candidates.push(v);
            }
        }
        let mu = candidates
            .into_iter()
            .find(|mu| verts.iter().all(|v| verts.contains(&(&w.act(r, v) + mu))))
            .ok_or_else(|| {
                Error::verification("varpi", "Weyl element does not stabilize the alcove")
            })?;
        total += &mu;
    }
    Lattice::standard(r.dim()).reduce(&total)
}

/// `ϖ^∨(a)` for an element of `𝒜`.
pub fn varpi_check(a: &FundamentalGroupElement) -> &RationalVector {
    &a.varpi
}

/// Whether `w` permutes `Π ∪ {α̃_k}`.
pub fn stabilizes_extended_diagram(r: &RootDatum, w: &WeylElement) -> bool {
    let ext = extended_nodes(r);
    let set: HashSet<RootId> = ext.iter().copied().collect();
    ext.iter().all(|&a| set.contains(&w.apply_root(a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;
    use crate::weyl::enumerate_weyl;

    fn datum(s: &str) -> RootDatum {
        s.parse().unwrap()
    }

    #[test]
    fn orders_equal_connection_index() {
        for t in ["A1", "A4", "B3", "C2", "D4", "D5", "E6", "E7", "E8", "F4", "G2", "A1xA2"] {
            let d = datum(&format!("{t}:sc"));
            let f = FundamentalGroup::new(&d).unwrap();
            assert_eq!(f.order(), d.cartan_type().connection_index(), "{t}");
        }
    }

    #[test]
    fn structures() {
        let s = |t: &str| FundamentalGroup::new(&datum(t)).unwrap().structure();
        assert_eq!(s("D4:sc"), vec![2, 2]);
        assert_eq!(s("D5:sc"), vec![4]);
        assert_eq!(s("A3:sc"), vec![4]);
        assert!(s("E8:sc").is_empty());
    }

    #[test]
    fn type_a_generator() {
        let d = datum("A3:sc");
        let f = FundamentalGroup::new(&d).unwrap();
        let c = f.generator(2).unwrap();
        assert_eq!(c.w, WeylElement::from_word(&d, &[0, 1, 2]));
        // ϖ^∨(c) = −ϖ_3^∨ = (−α_1^∨ − 2α_2^∨ − 3α_3^∨)/4 mod Q^∨.
        let expect = Lattice::standard(3)
            .reduce(&RationalVector::new(vec![rat(-1, 4), rat(-2, 4), rat(-3, 4)]))
            .unwrap();
        assert_eq!(c.varpi, expect);
        assert_eq!(c.order, 4);
    }

    #[test]
    fn generators_map_to_minus_fundamental_coweights() {
        for t in ["A5", "B4", "C3", "D4", "D5", "D6", "E6", "E7"] {
            let d = datum(&format!("{t}:sc"));
            let f = FundamentalGroup::new(&d).unwrap();
            for (j, c) in &f.generators {
                let expect = Lattice::standard(d.dim())
                    .reduce(&-&d.fundamental_coweight(*j))
                    .unwrap();
                assert_eq!(c.varpi, expect, "{t} node {}", j + 1);
            }
        }
    }

    #[test]
    fn varpi_is_a_homomorphism() {
        let d = datum("D4:sc");
        let f = FundamentalGroup::new(&d).unwrap();
        let z = Lattice::standard(4);
        for a in &f.elements {
            for b in &f.elements {
                let ab = f.mul(a, b);
                assert_eq!(ab.varpi, z.reduce(&(&a.varpi + &b.varpi)).unwrap());
            }
        }
    }

    #[test]
    fn full_stabilizer_by_brute_force() {
        for t in ["A3", "B3", "C4", "D4", "G2", "A1xA2"] {
            let d = datum(&format!("{t}:sc"));
            let f = FundamentalGroup::new(&d).unwrap();
            let brute: HashSet<WeylElement> = enumerate_weyl(&d, 1_000_000)
                .unwrap()
                .into_iter()
                .filter(|w| stabilizes_extended_diagram(&d, w))
                .collect();
            let ours: HashSet<WeylElement> = f.elements.iter().map(|a| a.w.clone()).collect();
            assert_eq!(brute, ours, "{t}");
        }
    }

    #[test]
    fn iota_and_a_sub_g() {
        let d = datum("A1:sc");
        let f = FundamentalGroup::new(&d).unwrap();
        assert!(f.iota(f.identity()).unwrap().is_zero());
        assert_eq!(f.iota(&f.generators[0].1).unwrap(), "1/2".parse().unwrap());
        assert_eq!(f.a_sub_g(&d).unwrap().len(), 1);
        assert_eq!(f.a_sub_g(&datum("A1:ad")).unwrap().len(), 2);

        let d3 = datum("A2:sc;p=3");
        let f3 = FundamentalGroup::new(&d3).unwrap();
        assert_eq!(f3.p_prime_elements().len(), 1);
        assert!(matches!(
            f3.iota(&f3.generators[0].1),
            Err(Error::OrderDivisibleByP { .. })
        ));

        for iso in RootDatum::standard_isogenies(&"D4".parse().unwrap()).unwrap().intermediate {
            let fi = FundamentalGroup::new(&iso).unwrap();
            assert_eq!(fi.a_sub_g(&iso).unwrap().len(), 2);
        }
    }

    #[test]
    fn iota_lands_in_the_center() {
        for t in ["A4", "C3", "D5", "E6", "E7"] {
            let d = datum(&format!("{t}:sc"));
            let f = FundamentalGroup::new(&d).unwrap();
            let mut images = HashSet::new();
            for a in &f.elements {
                let z = f.iota(a).unwrap();
                assert!(d.vanishes_on_roots(&z));
                images.insert(z);
            }
            assert_eq!(images.len(), f.order(), "{t}");
        }
    }
}
