//! Root data: a Cartan type together with an isogeny lattice `Y` of
//! cocharacters, `Q^∨ ⊆ Y`, in simple-coroot plus central coordinates.

mod cartan;
mod parse;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{Signed, Zero};

pub use cartan::{CartanType, Component, Family};

use crate::error::{Error, Result};
use crate::lattice::{invert, int, Lattice, Rational, RationalVector};

/// Index of a root in [`RootDatum::roots`].
pub type RootId = usize;

/// A coroot in simple-coroot coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coroot {
    pub coords: Vec<i64>,
}

/// A root in simple-root coordinates, with its coroot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coords: Vec<i64>,
    pub coroot: Coroot,
    pub positive: bool,
    pub height: i64,
    /// Irreducible component containing the root.
    pub component: usize,
    /// `<α, α_k^∨>` for every simple coroot `α_k^∨`.
    pub pairing: Vec<i64>,
}

#[derive(Debug)]
pub(crate) struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, RootId>,
    npos: usize,
    simple_perms: Vec<Vec<u16>>,
    /// Row `i` is `ϖ_i^∨` in simple-coroot coordinates.
    fundamental: Vec<Vec<Rational>>,
    highest: Vec<RootId>,
    component_of_node: Vec<usize>,
}

impl RootSystem {
    fn build(cartan_type: &CartanType) -> RootSystem {
        let cartan = cartan_type.cartan_matrix();
        let n = cartan.len();
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };
        let mut coroot_of: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            coroot_of.insert(unit(i), unit(i));
            queue.push_back(unit(i));
        }
        while let Some(b) = queue.pop_front() {
            let c = coroot_of[&b].clone();
            for i in 0..n {
                let k: i64 = (0..n).map(|j| b[j] * cartan[i][j]).sum();
                let l: i64 = (0..n).map(|m| c[m] * cartan[m][i]).sum();
                let mut b2 = b.clone();
                b2[i] -= k;
                if coroot_of.contains_key(&b2) {
                    continue;
                }
                let mut c2 = c.clone();
                c2[i] -= l;
                coroot_of.insert(b2.clone(), c2);
                queue.push_back(b2);
            }
        }

        let mut component_of_node = vec![0; n];
        for (k, off) in cartan_type.offsets().into_iter().enumerate() {
            for node in off..off + cartan_type.components[k].rank {
                component_of_node[node] = k;
            }
        }

        let mut positives: Vec<Vec<i64>> = coroot_of
            .keys()
            .filter(|b| b.iter().all(|&x| x >= 0))
            .cloned()
            .collect();
        positives.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let npos = positives.len();
        let make = |b: Vec<i64>, positive: bool| {
            let coroot = Coroot {
                coords: coroot_of[&b].clone(),
            };
            let pairing = (0..n)
                .map(|k| (0..n).map(|j| b[j] * cartan[k][j]).sum())
                .collect();
            let node = b.iter().position(|&x| x != 0).unwrap_or(0);
            Root {
                height: b.iter().sum(),
                component: component_of_node[node],
                coords: b,
                coroot,
                positive,
                pairing,
            }
        };
        let mut roots: Vec<Root> = positives.iter().map(|b| make(b.clone(), true)).collect();
        for b in &positives {
            roots.push(make(b.iter().map(|x| -x).collect(), false));
        }
        let index: HashMap<Vec<i64>, RootId> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coords.clone(), i))
            .collect();

        let simple_perms = (0..n)
            .map(|i| {
                roots
                    .iter()
                    .map(|r| {
                        let mut b = r.coords.clone();
                        b[i] -= r.pairing[i];
                        index[&b] as u16
                    })
                    .collect()
            })
            .collect();

        let rat_cartan: Vec<Vec<Rational>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        let fundamental = invert(&rat_cartan).expect("Cartan matrices are invertible");

        let highest = (0..cartan_type.components.len())
            .map(|k| {
                (0..npos)
                    .filter(|&r| roots[r].component == k)
                    .max_by_key(|&r| roots[r].height)
                    .expect("every component has roots")
            })
            .collect();

        RootSystem {
            cartan_type: cartan_type.clone(),
            cartan,
            roots,
            index,
            npos,
            simple_perms,
            fundamental,
            highest,
            component_of_node,
        }
    }

    fn shared(cartan_type: &CartanType) -> Arc<RootSystem> {
        static CACHE: OnceLock<Mutex<HashMap<CartanType, Arc<RootSystem>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(sys) = cache.lock().unwrap().get(cartan_type) {
            return sys.clone();
        }
        let sys = Arc::new(RootSystem::build(cartan_type));
        cache
            .lock()
            .unwrap()
            .entry(cartan_type.clone())
            .or_insert(sys)
            .clone()
    }
}

/// A reductive root datum with ambient characteristic `p` (0 or a prime).
#[derive(Clone, Debug)]
pub struct RootDatum {
    sys: Arc<RootSystem>,
    y: Lattice,
    p: u64,
    name: String,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.sys.cartan_type == other.sys.cartan_type && self.y == other.y && self.p == other.p
    }
}

impl Eq for RootDatum {}

/// The isogeny classes of a Cartan type, ordered by `|Y / Q^∨|`.
#[derive(Clone, Debug)]
pub struct Isogenies {
    pub sc: RootDatum,
    pub ad: RootDatum,
    pub intermediate: Vec<RootDatum>,
}

impl Isogenies {
    /// All data in order: simply connected, intermediates, adjoint.
    pub fn all(&self) -> Vec<RootDatum> {
        let mut out = vec![self.sc.clone()];
        out.extend(self.intermediate.iter().cloned());
        if self.ad != self.sc {
            out.push(self.ad.clone());
        }
        out
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl RootDatum {
    /// Root datum with cocharacter lattice `y`, which must satisfy
    /// `Q^∨ ⊆ Y` and pair integrally with every root.
    pub fn new(cartan_type: CartanType, y: Lattice, p: u64) -> Result<Self> {
        let sys = RootSystem::shared(&cartan_type);
        let n = cartan_type.semisimple_rank();
        let dim = n + cartan_type.central_rank;
        if y.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: y.dim(),
            });
        }
        if p != 0 && !is_prime(p) {
            return Err(Error::InvalidType(format!("p = {p} is neither 0 nor prime")));
        }
        for i in 0..n {
            let mut e = vec![0; dim];
            e[i] = 1;
            if !y.contains(&RationalVector::from_ints(&e))? {
                return Err(Error::InvalidLattice(format!(
                    "lattice does not contain the simple coroot {}",
                    i + 1
                )));
            }
        }
        for b in y.basis() {
            for i in 0..n {
                let v: Rational = (0..n).fold(Rational::zero(), |acc, k| {
                    acc + &b[k] * int(sys.cartan[k][i])
                });
                if !v.is_integer() {
                    return Err(Error::InvalidLattice(format!(
                        "basis vector {b} pairs non-integrally with α_{}",
                        i + 1
                    )));
                }
            }
        }
        let mut datum = RootDatum {
            sys,
            y,
            p,
            name: String::new(),
        };
        datum.name = datum.describe_lattice();
        Ok(datum)
    }

    pub fn simply_connected(cartan_type: CartanType) -> Result<Self> {
        let dim = cartan_type.semisimple_rank() + cartan_type.central_rank;
        let mut d = RootDatum::new(cartan_type, Lattice::standard(dim), 0)?;
        d.name = format!("{}:sc", d.cartan_type());
        Ok(d)
    }

    pub fn adjoint(cartan_type: CartanType) -> Result<Self> {
        let sc = RootDatum::simply_connected(cartan_type)?;
        let dim = sc.dim();
        let mut gens: Vec<RationalVector> = (0..sc.rank())
            .map(|i| sc.fundamental_coweight(i))
            .collect();
        for k in sc.rank()..dim {
            let mut e = vec![0; dim];
            e[k] = 1;
            gens.push(RationalVector::from_ints(&e));
        }
        let y = Lattice::from_generators(dim, &gens)?;
        let mut d = RootDatum::new(sc.cartan_type().clone(), y, 0)?;
        d.name = format!("{}:ad", d.cartan_type());
        Ok(d)
    }

    /// Every isogeny class, one per subgroup of `P^∨/Q^∨`.
    pub fn standard_isogenies(cartan_type: &CartanType) -> Result<Isogenies> {
        let sc = RootDatum::simply_connected(cartan_type.clone())?;
        let ad = RootDatum::adjoint(cartan_type.clone())?;
        let subgroups = sc.coweight_subgroups();
        let last = subgroups.len() - 1;
        let mut intermediate = Vec::new();
        for (k, sub) in subgroups.iter().enumerate() {
            if k == 0 || k == last {
                continue;
            }
            let mut d = sc.with_coweight_classes(sub)?;
            d.name = format!("{cartan_type}:iso({k})");
            intermediate.push(d);
        }
        Ok(Isogenies { sc, ad, intermediate })
    }

    /// The datum `Y = Q^∨ + span(classes)` (plus the central lattice).
    fn with_coweight_classes(&self, classes: &[Vec<Rational>]) -> Result<RootDatum> {
        let dim = self.dim();
        let mut gens: Vec<RationalVector> = (0..dim)
            .map(|k| {
                let mut e = vec![0; dim];
                e[k] = 1;
                RationalVector::from_ints(&e)
            })
            .collect();
        for c in classes {
            gens.push(RationalVector::new(c.clone()).resized(dim));
        }
        let y = Lattice::from_generators(dim, &gens)?;
        RootDatum::new(self.cartan_type().clone(), y, self.p)
    }

    /// Subgroups of `P^∨/Q^∨`, each as a sorted list of reduced
    /// representatives; ordered by size, trivial first and full last.
    pub(crate) fn coweight_subgroups(&self) -> Vec<Vec<Vec<Rational>>> {
        let n = self.rank();
        let reduce = |v: &[Rational]| -> Vec<Rational> {
            v.iter().map(|x| x - x.floor()).collect()
        };
        let add = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
            reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
        };
        let closure = |gens: &BTreeSet<Vec<Rational>>| -> BTreeSet<Vec<Rational>> {
            let mut set: BTreeSet<Vec<Rational>> = BTreeSet::new();
            set.insert(vec![Rational::zero(); n]);
            let mut queue: Vec<Vec<Rational>> = set.iter().cloned().collect();
            while let Some(x) = queue.pop() {
                for g in gens {
                    let y = add(&x, g);
                    if set.insert(y.clone()) {
                        queue.push(y);
                    }
                }
            }
            set
        };
        let all_gens: BTreeSet<Vec<Rational>> = (0..n)
            .map(|i| reduce(&self.sys.fundamental[i]))
            .collect();
        let group = closure(&all_gens);
        let mut found: BTreeSet<BTreeSet<Vec<Rational>>> = BTreeSet::new();
        let mut queue = vec![closure(&BTreeSet::new())];
        found.insert(queue[0].clone());
        while let Some(sub) = queue.pop() {
            for g in &group {
                if sub.contains(g) {
                    continue;
                }
                let mut gens = sub.clone();
                gens.insert(g.clone());
                let bigger = closure(&gens);
                if found.insert(bigger.clone()) {
                    queue.push(bigger);
                }
            }
        }
        let mut subs: Vec<Vec<Vec<Rational>>> = found
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        subs
    }

    /// The same datum over characteristic `p`.
    pub fn with_p(&self, p: u64) -> Result<RootDatum> {
        if p != 0 && !is_prime(p) {
            return Err(Error::InvalidType(format!("p = {p} is neither 0 nor prime")));
        }
        let mut d = self.clone();
        d.p = p;
        Ok(d)
    }

    /// The derived datum: `Y ∩ QΦ^∨` on the semisimple coordinates.
    pub fn derived(&self) -> Result<RootDatum> {
        if self.central_rank() == 0 {
            return Ok(self.clone());
        }
        let keep: Vec<usize> = (0..self.rank()).collect();
        let y = self.y.restrict_to_coordinates(&keep)?;
        let t = CartanType::new(self.cartan_type().components.clone(), 0);
        RootDatum::new(t, y, self.p)
    }

    fn describe_lattice(&self) -> String {
        let rows: Vec<String> = self
            .y
            .basis()
            .iter()
            .map(|b| format!("[{}]", b.to_strings().join(",")))
            .collect();
        format!("{}:lattice({})", self.cartan_type(), rows.join(","))
    }

    /// Canonical text form accepted by the parser.
    pub fn name(&self) -> String {
        if self.p == 0 {
            self.name.clone()
        } else {
            format!("{};p={}", self.name, self.p)
        }
    }

    pub(crate) fn set_name(&mut self, name: String) {
        self.name = name;
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.sys.cartan_type
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.sys.cartan
    }

    /// Semisimple rank.
    pub fn rank(&self) -> usize {
        self.sys.cartan.len()
    }

    pub fn central_rank(&self) -> usize {
        self.sys.cartan_type.central_rank
    }

    /// Dimension of the cocharacter space.
    pub fn dim(&self) -> usize {
        self.rank() + self.central_rank()
    }

    pub fn y(&self) -> &Lattice {
        &self.y
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_simply_connected(&self) -> bool {
        self.y == Lattice::standard(self.dim())
    }

    pub fn check_same(&self, other: &RootDatum) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DatumMismatch(format!("{} vs {}", self.name(), other.name())))
        }
    }

    // ---- roots ----

    /// All roots: positive roots by increasing height, then their negatives
    /// in the same order. The first `rank()` roots are the simple roots.
    pub fn roots(&self) -> &[Root] {
        &self.sys.roots
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.sys.roots[id]
    }

    pub fn num_roots(&self) -> usize {
        self.sys.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.sys.npos
    }

    pub fn root_id(&self, coords: &[i64]) -> Option<RootId> {
        self.sys.index.get(coords).copied()
    }

    pub fn negate(&self, id: RootId) -> RootId {
        let npos = self.sys.npos;
        if id < npos {
            id + npos
        } else {
            id - npos
        }
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        id < self.sys.npos
    }

    /// Permutation of root ids induced by the simple reflection `s_i`.
    pub fn simple_reflection_perm(&self, i: usize) -> &[u16] {
        &self.sys.simple_perms[i]
    }

    pub fn component_of_node(&self, i: usize) -> usize {
        self.sys.component_of_node[i]
    }

    /// Node indices of each irreducible component.
    pub fn component_nodes(&self, k: usize) -> std::ops::Range<usize> {
        let off = self.cartan_type().offsets()[k];
        off..off + self.cartan_type().components[k].rank
    }

    pub fn num_components(&self) -> usize {
        self.cartan_type().components.len()
    }

    /// `<α, λ>` for `λ` in coroot + central coordinates.
    pub fn pairing(&self, alpha: RootId, lambda: &RationalVector) -> Result<Rational> {
        self.check_dim(lambda)?;
        Ok(self.pairing_unchecked(alpha, lambda))
    }

    pub(crate) fn pairing_unchecked(&self, alpha: RootId, lambda: &RationalVector) -> Rational {
        lambda.dot_int(&self.sys.roots[alpha].pairing)
    }

    pub(crate) fn check_dim(&self, v: &RationalVector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// The coroot of `alpha` as a cocharacter (padded with central zeros).
    pub fn coroot_vector(&self, alpha: RootId) -> RationalVector {
        RationalVector::from_ints(&self.sys.roots[alpha].coroot.coords).resized(self.dim())
    }

    /// `ϖ_i^∨` in coroot + central coordinates.
    pub fn fundamental_coweight(&self, i: usize) -> RationalVector {
        RationalVector::new(self.sys.fundamental[i].clone()).resized(self.dim())
    }

    /// `ρ^∨`, the half sum of the positive coroots.
    pub fn rho_check(&self) -> RationalVector {
        let mut acc = vec![0i64; self.rank()];
        for r in &self.sys.roots[..self.sys.npos] {
            for (a, c) in acc.iter_mut().zip(&r.coroot.coords) {
                *a += c;
            }
        }
        RationalVector::from_fraction(&acc, 2).resized(self.dim())
    }

    /// `ρ_I^∨` for the parabolic subsystem spanned by the simple roots in `nodes`.
    pub fn rho_check_parabolic(&self, nodes: &[usize]) -> RationalVector {
        let mut acc = vec![0i64; self.rank()];
        for r in &self.sys.roots[..self.sys.npos] {
            let inside = r
                .coords
                .iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || nodes.contains(&i));
            if inside {
                for (a, c) in acc.iter_mut().zip(&r.coroot.coords) {
                    *a += c;
                }
            }
        }
        RationalVector::from_fraction(&acc, 2).resized(self.dim())
    }

    /// The highest root of each irreducible component.
    pub fn highest_roots(&self) -> &[RootId] {
        &self.sys.highest
    }

    /// `α̃_k`, the opposite of the highest root of component `k`.
    pub fn lowest_root(&self, k: usize) -> RootId {
        self.negate(self.sys.highest[k])
    }

    /// Coefficients of the highest root of component `k` on its simple roots.
    pub fn marks(&self, k: usize) -> Vec<i64> {
        let h = &self.sys.roots[self.sys.highest[k]].coords;
        self.component_nodes(k).map(|i| h[i]).collect()
    }

    /// Nodes `j` (0-based) whose highest-root coefficient is 1, with `ϖ_j^∨`.
    pub fn minuscule_coweights(&self) -> Vec<(usize, RationalVector)> {
        let mut out = Vec::new();
        for k in 0..self.num_components() {
            let h = &self.sys.roots[self.sys.highest[k]].coords;
            for j in self.component_nodes(k) {
                if h[j] == 1 {
                    out.push((j, self.fundamental_coweight(j)));
                }
            }
        }
        out
    }

    // ---- torus classes ----

    /// Canonical representative of the `p'`-part of the class of `v` mod `Y`.
    pub fn torus_class(&self, v: &RationalVector) -> Result<RationalVector> {
        self.check_dim(v)?;
        self.y.p_prime_part(v, self.p)
    }

    /// True iff `v ∈ Y`.
    pub fn in_y(&self, v: &RationalVector) -> Result<bool> {
        self.y.contains(v)
    }

    /// True iff `<α, v> ∈ Z` for every root.
    pub fn vanishes_on_roots(&self, v: &RationalVector) -> bool {
        (0..self.rank()).all(|i| self.pairing_unchecked(i, v).is_integer())
    }

    /// Order of the class of `v` in `P^∨ / Q^∨`-style quotients: smallest
    /// `k ≥ 1` with `k·v ∈ Y`.
    pub fn class_order(&self, v: &RationalVector) -> Result<u64> {
        let o = self.y.class_order(v)?;
        u64::try_from(&o).map_err(|_| Error::Unsupported(format!("class order {o} too large")))
    }

    /// Index `[Y : Q^∨]`.
    pub fn isogeny_index(&self) -> u64 {
        let c = self.y.covolume();
        let inv = c.recip();
        debug_assert!(inv.is_integer() && inv.is_positive());
        u64::try_from(inv.to_integer()).unwrap_or(u64::MAX)
    }

    /// Whether `v` lies in `Q^∨` (semisimple coordinates integral, central zero).
    pub fn in_coroot_lattice(&self, v: &RationalVector) -> bool {
        let n = self.rank();
        v.coords()[..n].iter().all(|x| x.is_integer())
            && v.coords()[n..].iter().all(|x| x.is_zero())
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
