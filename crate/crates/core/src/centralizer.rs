//! Centralizers of semisimple elements `s`, given by a representative
//! `λ ∈ Y ⊗ Q` of the class of `s`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fundgroup::{FundamentalGroup, FundamentalGroupElement};
use crate::group::invariant_factors;
use crate::lattice::{int, invert, rat, Rational, RationalVector};
use crate::rootdata::{CartanType, RootDatum, RootId};
use crate::weyl::{classify_cartan, classify_subsystem, enumerate_weyl, WeylElement};

/// The class of a semisimple element of finite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleClass {
    datum: RootDatum,
    lambda: RationalVector,
    /// Set when the input had `p`-torsion and was replaced by its `p'`-part.
    pub projected: bool,
}

impl SemisimpleClass {
    pub fn new(datum: &RootDatum, lambda: RationalVector) -> Result<Self> {
        datum.check_dim(&lambda)?;
        let p = datum.p();
        if p != 0 {
            let order = datum.class_order(&lambda)?;
            if order % p == 0 {
                let lambda = datum.torus_class(&lambda)?;
                return Ok(SemisimpleClass {
                    datum: datum.clone(),
                    lambda,
                    projected: true,
                });
            }
        }
        Ok(SemisimpleClass {
            datum: datum.clone(),
            lambda,
            projected: false,
        })
    }

    /// `λ` given in fundamental-coweight coordinates (central coordinates last).
    pub fn from_fundamental(datum: &RootDatum, coeffs: &RationalVector) -> Result<Self> {
        datum.check_dim(coeffs)?;
        let n = datum.rank();
        let mut lambda = RationalVector::zeros(datum.dim());
        for i in 0..n {
            lambda += &datum.fundamental_coweight(i).scale(&coeffs[i]);
        }
        let mut c = lambda.into_coords();
        for k in n..datum.dim() {
            c[k] = coeffs[k].clone();
        }
        SemisimpleClass::new(datum, RationalVector::new(c))
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn lambda(&self) -> &RationalVector {
        &self.lambda
    }

    /// Whether `λ` lies in the closed fundamental alcove.
    pub fn is_normalized(&self) -> bool {
        in_alcove(&self.datum, &self.lambda)
    }
}

/// `λ' = w(λ) + μ` with `μ ∈ Q^∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugator {
    pub w: WeylElement,
    pub mu: RationalVector,
}

/// `<α_i, λ> ≥ 0` for simple roots and `<θ_k, λ> ≤ 1` for each highest root.
pub fn in_alcove(r: &RootDatum, lambda: &RationalVector) -> bool {
    (0..r.rank()).all(|i| !r.pairing_unchecked(i, lambda).is_negative())
        && r
            .highest_roots()
            .iter()
            .all(|&t| r.pairing_unchecked(t, lambda) <= Rational::one())
}

/// Moves `λ` into the closed fundamental alcove by the affine Weyl group
/// `Q^∨ ⋊ W`. The lowest-index violated wall is reflected first; simple
/// walls are checked before the affine walls.
pub fn normalize_to_alcove(s: &SemisimpleClass) -> (SemisimpleClass, Conjugator) {
    let r = &s.datum;
    let n = r.rank();
    let mut mu = RationalVector::zeros(r.dim());
    if !in_alcove(r, &s.lambda) {
        let c: Vec<Rational> = (0..r.dim())
            .map(|k| if k < n { -s.lambda[k].floor() } else { Rational::zero() })
            .collect();
        mu = &mu + &RationalVector::new(c);
    }
    let mut lambda = &s.lambda + &mu;
    let mut w = WeylElement::identity(r);
    loop {
        if let Some(i) = (0..n).find(|&i| r.pairing_unchecked(i, &lambda).is_negative()) {
            let k = r.pairing_unchecked(i, &lambda);
            lambda = &lambda - &r.coroot_vector(i).scale(&k);
            let km = r.pairing_unchecked(i, &mu);
            mu = &mu - &r.coroot_vector(i).scale(&km);
            w = w.simple_mul(r, i);
            continue;
        }
        let violated = r
            .highest_roots()
            .iter()
            .copied()
            .find(|&t| r.pairing_unchecked(t, &lambda) > Rational::one());
        match violated {
            Some(t) => {
                // λ ↦ s_θ(λ) + θ^∨
                let theta = r.coroot_vector(t);
                let k = r.pairing_unchecked(t, &lambda);
                lambda = &(&lambda - &theta.scale(&k)) + &theta;
                let km = r.pairing_unchecked(t, &mu);
                mu = &(&mu - &theta.scale(&km)) + &theta;
                let s_theta = crate::weyl::reflection(r, t).expect("highest root is a root");
                w = s_theta.mul(&w);
            }
            None => break,
        }
    }
    debug_assert_eq!(&w.act(r, &s.lambda) + &mu, lambda);
    (
        SemisimpleClass {
            datum: r.clone(),
            lambda,
            projected: s.projected,
        },
        Conjugator { w, mu },
    )
}

/// `Φ(s) = {α : <α, λ> ∈ Z}`.
pub fn phi_of_s(s: &SemisimpleClass) -> Vec<RootId> {
    let r = &s.datum;
    (0..r.num_roots())
        .filter(|&a| r.pairing_unchecked(a, &s.lambda).is_integer())
        .collect()
}

/// Basis of `Φ(s)` for `λ` in the alcove: the simple roots vanishing on `λ`
/// and the `α̃_k` with `<λ, α̃_k> = −1`.
pub fn basis_of_phi_s(s: &SemisimpleClass) -> Result<Vec<RootId>> {
    if !s.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let r = &s.datum;
    let mut basis: Vec<RootId> = (0..r.rank())
        .filter(|&i| r.pairing_unchecked(i, &s.lambda).is_zero())
        .collect();
    for k in 0..r.num_components() {
        let a = r.lowest_root(k);
        if r.pairing_unchecked(a, &s.lambda) == int(-1) {
            basis.push(a);
        }
    }
    Ok(basis)
}

/// Coordinates of each root of `phi` against `basis`; fails if a root is not
/// `±` a nonnegative integral combination.
fn basis_coordinates(r: &RootDatum, basis: &[RootId], phi: &[RootId]) -> Result<HashMap<RootId, Vec<i64>>> {
    let m = basis.len();
    let n = r.rank();
    let rows: Vec<Vec<i64>> = basis.iter().map(|&b| r.root(b).coords.clone()).collect();
    // pivot columns of the row echelon form give an invertible minor
    let mut ech: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..n {
        let row = pivots.len();
        if row == m {
            break;
        }
        let Some(piv) = (row..m).find(|&i| !ech[i][col].is_zero()) else {
            continue;
        };
        ech.swap(row, piv);
        for i in row + 1..m {
            if !ech[i][col].is_zero() {
                let f = &ech[i][col] / &ech[row][col];
                for c in col..n {
                    let t = &f * &ech[row][c];
                    ech[i][c] -= t;
                }
            }
        }
        pivots.push(col);
    }
    if pivots.len() != m {
        return Err(Error::verification("phi-s-basis", "basis roots are linearly dependent"));
    }
    let minor: Vec<Vec<Rational>> = rows
        .iter()
        .map(|row| pivots.iter().map(|&c| int(row[c])).collect())
        .collect();
    let inv = invert(&minor).expect("pivot minor is invertible");
    let mut out = HashMap::new();
    for &a in phi {
        let beta = &r.root(a).coords;
        let x: Vec<Rational> = (0..m)
            .map(|j| (0..m).fold(Rational::zero(), |acc, i| acc + int(beta[pivots[i]]) * &inv[i][j]))
            .collect();
        if x.iter().any(|c| !c.is_integer()) {
            return Err(Error::verification("phi-s-basis", "root not an integral combination"));
        }
        let xi: Vec<i64> = x.iter().map(|c| c.to_integer().to_i64().unwrap()).collect();
        let recon: Vec<i64> = (0..n)
            .map(|c| (0..m).map(|j| xi[j] * rows[j][c]).sum())
            .collect();
        if &recon != beta {
            return Err(Error::verification("phi-s-basis", "root outside the span of the basis"));
        }
        let nonneg = xi.iter().all(|&c| c >= 0);
        let nonpos = xi.iter().all(|&c| c <= 0);
        if !nonneg && !nonpos {
            return Err(Error::verification(
                "phi-s-basis",
                "root is not a signed nonnegative combination of the basis",
            ));
        }
        out.insert(a, xi);
    }
    Ok(out)
}

/// Everything computed about the centralizer of `s`.
#[derive(Clone, Debug)]
pub struct CentralizerData {
    pub original: SemisimpleClass,
    pub normalized: SemisimpleClass,
    pub conjugator: Conjugator,
    pub phi_s: Vec<RootId>,
    pub basis_s: Vec<RootId>,
    pub phi_pos_s: Vec<RootId>,
    pub w0s_type: CartanType,
    pub w0s_order: u128,
    pub a_w_s: Vec<FundamentalGroupElement>,
}

impl CentralizerData {
    /// Invariant factors of `A_W(s) ≅ A_G(s)`.
    pub fn a_g_structure(&self) -> Vec<u64> {
        invariant_factors(&self.a_w_s.iter().map(|a| a.order).collect::<Vec<_>>())
    }
}

/// `Φ^+(s)`: the nonnegative combinations of the basis.
pub fn positive_system(s: &SemisimpleClass) -> Result<(Vec<RootId>, Vec<RootId>)> {
    let basis = basis_of_phi_s(s)?;
    let phi = phi_of_s(s);
    let coords = basis_coordinates(&s.datum, &basis, &phi)?;
    let pos = phi
        .iter()
        .copied()
        .filter(|a| coords[a].iter().all(|&c| c >= 0))
        .collect();
    Ok((basis, pos))
}

/// `A_W(s) = {c ∈ 𝒜_G : c(λ) ≡ λ mod Y, c(Φ^+(s)) = Φ^+(s)}`.
pub fn a_w_of_s(s: &SemisimpleClass, fg: &FundamentalGroup) -> Result<Vec<FundamentalGroupElement>> {
    let (_, pos) = positive_system(s)?;
    a_w_filter(s, fg, &pos)
}

fn a_w_filter(
    s: &SemisimpleClass,
    fg: &FundamentalGroup,
    pos: &[RootId],
) -> Result<Vec<FundamentalGroupElement>> {
    let r = &s.datum;
    let pos_set: HashSet<RootId> = pos.iter().copied().collect();
    let mut out = Vec::new();
    for c in fg.a_sub_g(r)? {
        let diff = &c.w.act(r, &s.lambda) - &s.lambda;
        if r.in_y(&diff)? && c.w.stabilizes(&pos_set) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Runs the whole pipeline for an arbitrary `λ`.
pub fn analyze(s: &SemisimpleClass, fg: &FundamentalGroup) -> Result<CentralizerData> {
    let (normalized, conjugator) = normalize_to_alcove(s);
    let phi_s = phi_of_s(&normalized);
    let (basis_s, phi_pos_s) = positive_system(&normalized)?;
    let w0s_type = classify_cartan(&normalized.datum, &basis_s)?.canonical();
    let w0s_order = w0s_type.weyl_order();
    let a_w_s = a_w_filter(&normalized, fg, &phi_pos_s)?;
    Ok(CentralizerData {
        original: s.clone(),
        normalized,
        conjugator,
        phi_s,
        basis_s,
        phi_pos_s,
        w0s_type,
        w0s_order,
        a_w_s,
    })
}

/// Points of the closed alcove `Σ (s_i/d) ϖ_i^∨` with `Σ m_i s_i ≤ d`
/// (Kac coordinates) for every `d ≤ max_den`, together with every vertex
/// `ϖ_i^∨/m_i`. Central coordinates are zero. Sorted and deduplicated.
pub fn alcove_points(r: &RootDatum, max_den: i64) -> Vec<RationalVector> {
    let mut per_component: Vec<BTreeSet<Vec<Rational>>> = Vec::new();
    for k in 0..r.num_components() {
        let nodes: Vec<usize> = r.component_nodes(k).collect();
        let marks = r.marks(k);
        let mut set: BTreeSet<Vec<Rational>> = BTreeSet::new();
        for d in 1..=max_den {
            let mut coeffs = vec![0i64; nodes.len()];
            kac_rec(&marks, d, 0, &mut coeffs, &mut |c| {
                set.insert(c.iter().map(|&x| rat(x, d)).collect());
            });
        }
        for (i, &m) in marks.iter().enumerate() {
            let mut c = vec![Rational::zero(); nodes.len()];
            c[i] = rat(1, m);
            set.insert(c);
        }
        per_component.push(set);
    }
    let mut combos: Vec<Vec<Rational>> = vec![vec![]];
    for set in &per_component {
        let mut next = Vec::new();
        for prefix in &combos {
            for c in set {
                let mut v = prefix.clone();
                v.extend(c.iter().cloned());
                next.push(v);
            }
        }
        combos = next;
    }
    let mut out: BTreeSet<RationalVector> = BTreeSet::new();
    for coeffs in combos {
        let mut lambda = RationalVector::zeros(r.dim());
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                lambda += &r.fundamental_coweight(i).scale(c);
            }
        }
        out.insert(lambda);
    }
    out.into_iter().collect()
}

fn kac_rec(marks: &[i64], budget: i64, i: usize, coeffs: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if i == marks.len() {
        // the remaining budget is s_0 ≥ 0
        f(coeffs);
        return;
    }
    let mut s = 0;
    while s * marks[i] <= budget {
        coeffs[i] = s;
        kac_rec(marks, budget - s * marks[i], i + 1, coeffs, f);
        s += 1;
    }
    coeffs[i] = 0;
}

// ---- brute-force oracle ----

/// Action matrices of every element of `W` on simple-coroot coordinates:
/// row `i` of element `w` is `w(α_i^∨)`.
pub struct WeylTable {
    pub rank: usize,
    pub matrices: Vec<i32>,
}

impl WeylTable {
    pub fn len(&self) -> usize {
        self.matrices.len() / (self.rank * self.rank).max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn matrix(&self, k: usize) -> &[i32] {
        let s = self.rank * self.rank;
        &self.matrices[k * s..(k + 1) * s]
    }

    fn act(&self, k: usize, v: &[i64]) -> Vec<i64> {
        let n = self.rank;
        let m = self.matrix(k);
        let mut out = vec![0i64; n];
        for i in 0..n {
            if v[i] != 0 {
                for j in 0..n {
                    out[j] += v[i] * m[i * n + j] as i64;
                }
            }
        }
        out
    }
}

/// Cached table for the Cartan type of `r`.
pub fn weyl_table(r: &RootDatum, limit: u128) -> Result<Arc<WeylTable>> {
    static CACHE: OnceLock<Mutex<HashMap<CartanType, Arc<WeylTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(r.cartan_type()) {
        if t.len() as u128 <= limit {
            return Ok(t.clone());
        }
    }
    let elements = enumerate_weyl(r, limit)?;
    let n = r.rank();
    let mut matrices = Vec::with_capacity(elements.len() * n * n);
    for w in &elements {
        for i in 0..n {
            let co = &r.root(w.apply_root(i)).coroot.coords;
            matrices.extend(co.iter().map(|&x| x as i32));
        }
    }
    let table = Arc::new(WeylTable { rank: n, matrices });
    cache
        .lock()
        .unwrap()
        .insert(r.cartan_type().clone(), table.clone());
    Ok(table)
}

/// What the oracle reports about `W(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub w_s_order: u64,
    pub w0_s_order: u64,
    pub invariant_factors: Vec<u64>,
}

/// Integer membership test for `x/d ∈ Y ∩ QΦ^∨`.
struct IntegralTest {
    dual: Vec<Vec<i128>>,
    den: i128,
}

impl IntegralTest {
    fn new(r: &RootDatum) -> Result<Self> {
        let keep: Vec<usize> = (0..r.rank()).collect();
        let y = r.y().restrict_to_coordinates(&keep)?;
        let inv = invert(&y.basis().iter().map(|b| b.coords().to_vec()).collect::<Vec<_>>())
            .expect("lattice bases are invertible");
        let den = inv
            .iter()
            .flatten()
            .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let dual = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * Rational::from_integer(den.clone())).to_integer().to_i128().unwrap())
                    .collect()
            })
            .collect();
        Ok(IntegralTest {
            dual,
            den: den.to_i128().unwrap(),
        })
    }

    fn contains(&self, x: &[i64], d: i128) -> bool {
        let n = x.len();
        let modulus = d * self.den;
        (0..n).all(|j| {
            let s: i128 = (0..n).map(|i| x[i] as i128 * self.dual[i][j]).sum();
            s % modulus == 0
        })
    }
}

fn dominant_for(r: &RootDatum, simple: &[RootId], x: &mut Vec<i64>) {
    loop {
        let mut moved = false;
        for &a in simple {
            let k: i64 = r.root(a).pairing.iter().zip(x.iter()).map(|(p, v)| p * v).sum();
            if k < 0 {
                for (xi, c) in x.iter_mut().zip(&r.root(a).coroot.coords) {
                    *xi -= k * c;
                }
                moved = true;
            }
        }
        if !moved {
            return;
        }
    }
}

/// Direct enumeration of `W(s) = {w : w(λ) ≡ λ mod Y}` and of `W^0(s)`.
pub fn brute_force_w_of_s(s: &SemisimpleClass, limit: u128) -> Result<OracleResult> {
    let r = &s.datum;
    let n = r.rank();
    let table = weyl_table(r, limit)?;
    let ss = RationalVector::new(s.lambda.coords()[..n].to_vec());
    let (v, d) = ss
        .to_scaled_i64()
        .ok_or_else(|| Error::Unsupported("λ has huge coordinates".into()))?;
    let test = IntegralTest::new(r)?;

    let mut members: Vec<usize> = Vec::new();
    for k in 0..table.len() {
        let wv = table.act(k, &v);
        let diff: Vec<i64> = wv.iter().zip(&v).map(|(a, b)| a - b).collect();
        if test.contains(&diff, d as i128) {
            members.push(k);
        }
    }

    let phi = phi_of_s(s);
    let sub = classify_subsystem(r, &phi)?;
    let rho2: Vec<i64> = {
        let rho = r.rho_check().scale_int(2);
        (0..n).map(|i| rho[i].to_integer().to_i64().unwrap()).collect()
    };
    // |W^0(s)| as the orbit size of the regular vector 2ρ^∨.
    let w0_s_order = {
        let mut seen: HashSet<Vec<i64>> = HashSet::from([rho2.clone()]);
        let mut queue = VecDeque::from([rho2.clone()]);
        while let Some(x) = queue.pop_front() {
            for &a in &sub.simple_roots {
                let k: i64 = r.root(a).pairing.iter().zip(&x).map(|(p, v)| p * v).sum();
                let y: Vec<i64> = x
                    .iter()
                    .zip(&r.root(a).coroot.coords)
                    .map(|(xi, c)| xi - k * c)
                    .collect();
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.len() as u64
    };

    // Coset label of w: the W^0(s)-dominant representative of w(2ρ^∨).
    let label = |k: usize| -> Vec<i64> {
        let mut x = table.act(k, &rho2);
        dominant_for(r, &sub.simple_roots, &mut x);
        x
    };
    let mut reps: HashMap<Vec<i64>, usize> = HashMap::new();
    for &k in &members {
        reps.entry(label(k)).or_insert(k);
    }
    let quotient = reps.len() as u64;
    if quotient * w0_s_order != members.len() as u64 {
        return Err(Error::verification(
            "oracle",
            "W^0(s) orbit count does not divide W(s)",
        ));
    }
    // Orders in the quotient: act by representatives on dominant labels.
    let act_label = |k: usize, x: &[i64]| -> Vec<i64> {
        let mut y = table.act(k, x);
        dominant_for(r, &sub.simple_roots, &mut y);
        y
    };
    let base = {
        let mut x = rho2.clone();
        dominant_for(r, &sub.simple_roots, &mut x);
        x
    };
    let mut orders = Vec::new();
    for &k in reps.values() {
        // w·(W^0 x) = W^0 (w x) since W^0(s) is normal in W(s).
        let mut x = act_label(k, &base);
        let mut o = 1;
        while x != base {
            x = act_label(k, &x);
            o += 1;
        }
        orders.push(o);
    }
    Ok(OracleResult {
        w_s_order: members.len() as u64,
        w0_s_order,
        invariant_factors: invariant_factors(&orders),
    })
}
