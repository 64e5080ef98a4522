//! Lifts of `𝒜` to the Tits group satisfying condition (♭), the morphism
//! `τ_2 : 𝒜_G → N`, and splitting certificates for `A_W(s)`.
//!
//! Condition (♭) for `a` of order `o`: `τ(a)^o = ι(a^{o/2})` when `o` is
//! even and `τ(a)^o = 1` otherwise.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::braid::lift_weyl;
use crate::centralizer::{analyze, CentralizerData, Conjugator, SemisimpleClass};
use crate::error::{Error, Result};
use crate::fundgroup::{FundamentalGroup, FundamentalGroupElement};
use crate::group::cyclic_decomposition;
use crate::lattice::{rat, RationalVector};
use crate::rootdata::{CartanType, Family, RootDatum, RootId};
use crate::tits::{TitsElement, TitsGroup};
use crate::weyl::WeylElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Sigma,
    BraidWord,
    TorusCorrected,
    Search,
}

#[derive(Clone, Debug)]
pub struct LiftedGenerator {
    /// Minuscule node `j` (0-based) with `a = c_j`.
    pub node: usize,
    pub element: FundamentalGroupElement,
    pub image: TitsElement,
    pub provenance: Provenance,
}

/// Lift of the generators of `𝒜` for one simple component.
#[derive(Clone, Debug)]
pub struct FlatLift {
    pub component: usize,
    pub generators: Vec<LiftedGenerator>,
    /// Indices into `generators` whose cyclic groups give `𝒜` as a direct product.
    pub basis: Vec<usize>,
}

/// The element `τ(a)^{o(a)}` must equal.
fn flat_target(tg: &TitsGroup, fg: &FundamentalGroup, a: &FundamentalGroupElement) -> Result<TitsElement> {
    let r = tg.datum();
    if a.order % 2 == 1 {
        return Ok(tg.identity());
    }
    let half = a.w.pow(r, a.order / 2);
    let h = fg
        .find(&half)
        .ok_or_else(|| Error::verification("flat", "a^(o/2) is not in 𝒜"))?;
    tg.torus(&h.varpi)
}

fn check_flat(tg: &TitsGroup, fg: &FundamentalGroup, a: &FundamentalGroupElement, x: &TitsElement) -> Result<()> {
    if x.w != a.w {
        return Err(Error::verification("flat-section", "lift does not project to its generator"));
    }
    let got = tg.pow(x, a.order as i64);
    let want = flat_target(tg, fg, a)?;
    if got != want {
        return Err(Error::verification(
            "flat",
            format!(
                "order {}: τ(a)^o = {} but expected {}",
                a.order, got.t, want.t
            ),
        ));
    }
    Ok(())
}

fn commute(tg: &TitsGroup, x: &TitsElement, y: &TitsElement) -> bool {
    tg.mul_unchecked(x, y) == tg.mul_unchecked(y, x)
}

/// Checks the invariants of a flat lift: sections, commutation and (♭).
pub fn verify_flat_lift(tg: &TitsGroup, fg: &FundamentalGroup, lift: &FlatLift) -> Result<()> {
    for g in &lift.generators {
        check_flat(tg, fg, &g.element, &g.image)?;
    }
    for (i, g) in lift.generators.iter().enumerate() {
        for h in &lift.generators[i + 1..] {
            if !commute(tg, &g.image, &h.image) {
                return Err(Error::verification(
                    "flat-commute",
                    format!("lifts of c_{} and c_{} do not commute", g.node + 1, h.node + 1),
                ));
            }
        }
    }
    Ok(())
}

/// Local (0-based) minuscule nodes used as generators, basis first.
fn recipe_nodes(family: Family, n: usize) -> (Vec<usize>, usize) {
    match family {
        Family::A | Family::B => (vec![n - 1], 1),
        Family::C => (vec![0], 1),
        Family::D if n.is_multiple_of(2) => (vec![0, 1, n - 1], 2),
        Family::D => (vec![0], 1),
        Family::E if n == 6 => (vec![5], 1),
        Family::E if n == 7 => (vec![6], 1),
        _ => (vec![], 0),
    }
}

fn check_sc(sc: &RootDatum) -> Result<()> {
    if !sc.is_simply_connected() || sc.central_rank() != 0 {
        return Err(Error::DatumMismatch(format!(
            "{} is not a semisimple simply connected datum",
            sc
        )));
    }
    Ok(())
}

fn generator_of(fg: &FundamentalGroup, j: usize) -> Result<FundamentalGroupElement> {
    fg.generator(j)
        .cloned()
        .ok_or_else(|| Error::verification("flat", format!("node {} is not minuscule", j + 1)))
}

/// Smallest `t_0 ∈ ½Q^∨/Q^∨` (supported on the component, lexicographic)
/// with `(t_0 x)^2` equal to `target`.
fn torus_correction(
    tg: &TitsGroup,
    nodes: std::ops::Range<usize>,
    x: &TitsElement,
    target: &TitsElement,
) -> Option<TitsElement> {
    let r = tg.datum();
    let n = nodes.len();
    for m in 0u64..(1 << n) {
        let mut t = RationalVector::zeros(r.dim());
        for (i, node) in nodes.clone().enumerate() {
            if (m >> (n - 1 - i)) & 1 == 1 {
                let mut c = t.into_coords();
                c[node] = rat(1, 2);
                t = RationalVector::new(c);
            }
        }
        let y = tg.mul_unchecked(&tg.torus(&t).ok()?, x);
        if tg.pow(&y, 2) == *target {
            return Some(y);
        }
    }
    None
}

/// The per-type lift of the generators of `𝒜` for component `k` of a
/// simply connected datum. For `p = 2` the section `σ` is used throughout.
pub fn flat_lift(sc: &RootDatum, fg: &FundamentalGroup, k: usize) -> Result<FlatLift> {
    check_sc(sc)?;
    let comp = sc.cartan_type().components[k];
    let nodes = sc.component_nodes(k);
    let off = nodes.start;
    let n = comp.rank;
    let tg = TitsGroup::new(sc);
    let (local, basis_len) = recipe_nodes(comp.family, n);
    let elems: Vec<FundamentalGroupElement> = local
        .iter()
        .map(|&j| generator_of(fg, off + j))
        .collect::<Result<_>>()?;

    let sigma_all = |provenance| -> Vec<LiftedGenerator> {
        local
            .iter()
            .zip(&elems)
            .map(|(&j, a)| LiftedGenerator {
                node: off + j,
                element: a.clone(),
                image: tg.sigma(&a.w),
                provenance,
            })
            .collect()
    };

    let generators = if sc.p() == 2 {
        sigma_all(Provenance::Sigma)
    } else {
        match comp.family {
            Family::B if n.is_multiple_of(2) => corrected(&tg, fg, nodes, local[0] + off, &elems[0])?,
            Family::C => corrected(&tg, fg, nodes, local[0] + off, &elems[0])?,
            Family::D if n.is_multiple_of(2) => {
                let (a, b, c) = (&elems[0], &elems[1], &elems[2]);
                let (ba, bb, bc) = (lift_weyl(sc, &a.w), lift_weyl(sc, &b.w), lift_weyl(sc, &c.w));
                let images = [
                    tg.ts(&bc.concat(&bb))?,
                    tg.ts(&bc.concat(&ba))?,
                    tg.ts(&bc.concat(&bb).concat(&bc).concat(&ba))?,
                ];
                local
                    .iter()
                    .zip(&elems)
                    .zip(images)
                    .map(|((&j, a), image)| LiftedGenerator {
                        node: off + j,
                        element: a.clone(),
                        image,
                        provenance: Provenance::BraidWord,
                    })
                    .collect()
            }
            _ => sigma_all(Provenance::Sigma),
        }
    };
    let lift = FlatLift {
        component: k,
        generators,
        basis: (0..basis_len).collect(),
    };
    verify_flat_lift(&tg, fg, &lift)?;
    Ok(lift)
}

fn corrected(
    tg: &TitsGroup,
    fg: &FundamentalGroup,
    nodes: std::ops::Range<usize>,
    node: usize,
    a: &FundamentalGroupElement,
) -> Result<Vec<LiftedGenerator>> {
    let x = tg.sigma(&a.w);
    let target = flat_target(tg, fg, a)?;
    let image = torus_correction(tg, nodes, &x, &target).ok_or_else(|| {
        Error::verification("flat-correction", "t + c(t) = ι(c) − σ(c)² has no solution")
    })?;
    let provenance = if image.t.is_zero() {
        Provenance::Sigma
    } else {
        Provenance::TorusCorrected
    };
    Ok(vec![LiftedGenerator {
        node,
        element: a.clone(),
        image,
        provenance,
    }])
}

/// Elements of `𝒜` supported on component `k`.
fn component_subgroup(fg: &FundamentalGroup, r: &RootDatum, k: usize) -> Vec<FundamentalGroupElement> {
    let gens: Vec<&FundamentalGroupElement> = fg
        .generators
        .iter()
        .filter(|(j, _)| r.component_of_node(*j) == k)
        .map(|(_, g)| g)
        .collect();
    let id = fg.identity().clone();
    let mut seen: HashSet<WeylElement> = HashSet::from([id.w.clone()]);
    let mut out = vec![];
    let mut queue = VecDeque::from([id]);
    while let Some(a) = queue.pop_front() {
        for g in &gens {
            let b = fg.mul(&a, g);
            if seen.insert(b.w.clone()) {
                queue.push_back(b.clone());
            }
        }
        out.push(a);
    }
    out
}

/// A flat lift found by searching torus corrections in `(1/2k)Q^∨/Q^∨`,
/// `k` the exponent of the component's `𝒜`, independent of the recipes.
pub fn flat_lift_generic(sc: &RootDatum, fg: &FundamentalGroup, k: usize) -> Result<FlatLift> {
    check_sc(sc)?;
    let tg = TitsGroup::new(sc);
    let sub = component_subgroup(fg, sc, k);
    let (_, gens) = cyclic_decomposition(&sub, fg.identity(), |a, b| fg.mul(a, b).clone());
    let exponent = sub.iter().map(|a| a.order).max().unwrap_or(1) as i64;
    let modulus = 2 * exponent;
    let nodes: Vec<usize> = sc.component_nodes(k).collect();

    let mut chosen: Vec<TitsElement> = Vec::new();
    let found = search_lift(&tg, fg, &sub, &gens, &nodes, modulus, &mut chosen)?;
    if !found {
        return Err(Error::verification(
            "flat-search",
            format!("no lift satisfying (♭) for component {}", k + 1),
        ));
    }
    let generators = gens
        .iter()
        .zip(chosen)
        .map(|(a, image)| LiftedGenerator {
            node: fg
                .generators
                .iter()
                .find(|(_, g)| g.w == a.w)
                .map(|(j, _)| *j)
                .unwrap_or(usize::MAX),
            element: a.clone(),
            image,
            provenance: Provenance::Search,
        })
        .collect::<Vec<_>>();
    let lift = FlatLift {
        component: k,
        basis: (0..generators.len()).collect(),
        generators,
    };
    verify_flat_lift(&tg, fg, &lift)?;
    Ok(lift)
}

fn search_lift(
    tg: &TitsGroup,
    fg: &FundamentalGroup,
    sub: &[FundamentalGroupElement],
    gens: &[FundamentalGroupElement],
    nodes: &[usize],
    modulus: i64,
    chosen: &mut Vec<TitsElement>,
) -> Result<bool> {
    let i = chosen.len();
    if i == gens.len() {
        let basis: Vec<(FundamentalGroupElement, TitsElement)> =
            gens.iter().cloned().zip(chosen.iter().cloned()).collect();
        return Ok(product_lift(tg, fg, &basis)
            .map(|tau| tau.len() == sub.len())
            .unwrap_or(false));
    }
    let a = &gens[i];
    let sigma = tg.sigma(&a.w);
    let mut digits = vec![0i64; nodes.len()];
    loop {
        let mut t = vec![rat(0, 1); tg.datum().dim()];
        for (d, &node) in digits.iter().zip(nodes) {
            t[node] = rat(*d, modulus);
        }
        let x = tg.mul_unchecked(&tg.torus(&RationalVector::new(t))?, &sigma);
        if check_flat(tg, fg, a, &x).is_ok() && chosen.iter().all(|y| commute(tg, &x, y)) {
            chosen.push(x);
            if search_lift(tg, fg, sub, gens, nodes, modulus, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        // odometer, last coordinate fastest
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Ok(false);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < modulus {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// `τ(∏ g_i^{m_i}) = ∏ τ(g_i)^{m_i}` over `0 ≤ m_i < o(g_i)`, with (♭)
/// verified for every element.
///
/// The bare product can miss (♭) on non-generators: in `Z/6` with
/// `τ(c)^6 = ι(c^3) ≠ 1`, `τ(c^2)^3 = ι(c^3)` although `c^2` has odd order.
/// Such elements are multiplied by the first central `ι(b)` that repairs
/// them; this keeps commutation and the image in `W`.
fn product_lift(
    tg: &TitsGroup,
    fg: &FundamentalGroup,
    basis: &[(FundamentalGroupElement, TitsElement)],
) -> Result<HashMap<WeylElement, TitsElement>> {
    let r = tg.datum();
    let mut tau: HashMap<WeylElement, TitsElement> = HashMap::new();
    tau.insert(WeylElement::identity(r), tg.identity());
    for (g, x) in basis {
        let current: Vec<(WeylElement, TitsElement)> = tau.iter().map(|(w, t)| (w.clone(), t.clone())).collect();
        let mut wp = WeylElement::identity(r);
        let mut xp = tg.identity();
        for _ in 1..g.order {
            wp = wp.mul(&g.w);
            xp = tg.mul_unchecked(&xp, x);
            for (w, t) in &current {
                let key = w.mul(&wp);
                if tau.insert(key, tg.mul_unchecked(t, &xp)).is_some() {
                    return Err(Error::verification("flat-product", "basis is not independent"));
                }
            }
        }
    }
    let central: Vec<TitsElement> = fg
        .p_prime_elements()
        .into_iter()
        .map(|b| fg.iota(b).and_then(|v| tg.torus(&v)))
        .collect::<Result<_>>()?;
    for (w, x) in tau.iter_mut() {
        let a = fg
            .find(w)
            .ok_or_else(|| Error::verification("flat-product", "product left 𝒜"))?;
        if let Err(e) = check_flat(tg, fg, a, x) {
            *x = central
                .iter()
                .map(|z| tg.mul_unchecked(x, z))
                .find(|y| check_flat(tg, fg, a, y).is_ok())
                .ok_or(e)?;
        }
    }
    Ok(tau)
}

/// The lift `τ` of all of `𝒜` from per-component flat lifts.
pub fn lift_products(
    sc: &RootDatum,
    fg: &FundamentalGroup,
    lifts: &[FlatLift],
) -> Result<HashMap<WeylElement, TitsElement>> {
    let tg = TitsGroup::new(sc);
    let basis: Vec<(FundamentalGroupElement, TitsElement)> = lifts
        .iter()
        .flat_map(|l| {
            l.basis
                .iter()
                .map(|&i| (l.generators[i].element.clone(), l.generators[i].image.clone()))
        })
        .collect();
    let tau = product_lift(&tg, fg, &basis)?;
    if tau.len() != fg.order() {
        return Err(Error::verification("flat-product", "lift does not cover 𝒜"));
    }
    Ok(tau)
}

/// How the per-component lifts are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftMethod {
    Recipe,
    Search,
}

/// `τ`, `τ_1` and `τ_2` for a fixed root datum.
#[derive(Clone, Debug)]
pub struct Lifter {
    target: RootDatum,
    sc: RootDatum,
    fg_sc: FundamentalGroup,
    fg: FundamentalGroup,
    tits: TitsGroup,
    pub flat: Vec<FlatLift>,
    tau: HashMap<WeylElement, TitsElement>,
    tau2: HashMap<WeylElement, TitsElement>,
}

impl Lifter {
    pub fn new(target: &RootDatum, method: LiftMethod) -> Result<Self> {
        let ss = CartanType::new(target.cartan_type().components.clone(), 0);
        let sc = RootDatum::simply_connected(ss)?.with_p(target.p())?;
        let fg_sc = FundamentalGroup::new(&sc)?;
        let fg = FundamentalGroup::new(target)?;
        let flat = (0..sc.num_components())
            .map(|k| match method {
                LiftMethod::Recipe => flat_lift(&sc, &fg_sc, k),
                LiftMethod::Search => flat_lift_generic(&sc, &fg_sc, k),
            })
            .collect::<Result<Vec<_>>>()?;
        let tau = lift_products(&sc, &fg_sc, &flat)?;
        let mut lifter = Lifter {
            target: target.clone(),
            tits: TitsGroup::new(target),
            sc,
            fg_sc,
            fg,
            flat,
            tau,
            tau2: HashMap::new(),
        };
        lifter.tau2 = lifter.group_lift()?;
        Ok(lifter)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.target
    }

    pub fn fundamental_group(&self) -> &FundamentalGroup {
        &self.fg
    }

    pub fn tits(&self) -> &TitsGroup {
        &self.tits
    }

    pub fn sc_datum(&self) -> &RootDatum {
        &self.sc
    }

    pub fn sc_fundamental_group(&self) -> &FundamentalGroup {
        &self.fg_sc
    }

    /// `τ(a)` in the Tits group of the simply connected datum.
    pub fn tau(&self, w: &WeylElement) -> Option<&TitsElement> {
        self.tau.get(w)
    }

    /// Projection `π` from the simply connected torus classes to `Y`.
    pub fn project(&self, x: &TitsElement) -> TitsElement {
        let t = x.t.resized(self.target.dim());
        TitsElement {
            t: self.tits.reduce(&t),
            w: x.w.clone(),
        }
    }

    /// `τ_1 = π ∘ τ` on `𝒜_G`, checked to preserve orders.
    pub fn tau1(&self, a: &FundamentalGroupElement) -> Result<TitsElement> {
        let x = self
            .tau
            .get(&a.w)
            .ok_or_else(|| Error::verification("tau1", "element is not in 𝒜"))?;
        let y = self.project(x);
        let o = self.tits.order(&y);
        if o != a.order {
            return Err(Error::verification(
                "tau1-order",
                format!("τ_1(a) has order {o}, a has order {}", a.order),
            ));
        }
        Ok(y)
    }

    /// `τ_2` on `𝒜_G` from a cyclic decomposition, verified to be a
    /// homomorphic section.
    fn group_lift(&self) -> Result<HashMap<WeylElement, TitsElement>> {
        let tg = &self.tits;
        let r = &self.target;
        let elems = self.fg.a_sub_g(r)?;
        let (factors, gens) = cyclic_decomposition(&elems, self.fg.identity(), |a, b| self.fg.mul(a, b).clone());
        let mut tau2: HashMap<WeylElement, TitsElement> = HashMap::new();
        tau2.insert(WeylElement::identity(r), tg.identity());
        for (g, &n) in gens.iter().zip(&factors) {
            let x = self.tau1(g)?;
            if tg.order(&x) != n {
                return Err(Error::verification("tau2-order", "τ_1(g) has the wrong order"));
            }
            let current: Vec<(WeylElement, TitsElement)> =
                tau2.iter().map(|(w, t)| (w.clone(), t.clone())).collect();
            let mut wp = WeylElement::identity(r);
            let mut xp = tg.identity();
            for _ in 1..n {
                wp = wp.mul(&g.w);
                xp = tg.mul_unchecked(&xp, &x);
                for (w, t) in &current {
                    tau2.insert(w.mul(&wp), tg.mul_unchecked(t, &xp));
                }
            }
        }
        if tau2.len() != elems.len() {
            return Err(Error::verification("tau2", "cyclic decomposition does not cover 𝒜_G"));
        }
        for a in &elems {
            for b in &elems {
                let ab = a.w.mul(&b.w);
                if tg.mul_unchecked(&tau2[&a.w], &tau2[&b.w]) != tau2[&ab] {
                    return Err(Error::verification("tau2-homomorphism", "τ_2(ab) ≠ τ_2(a)τ_2(b)"));
                }
            }
            if tau2[&a.w].w != a.w {
                return Err(Error::verification("tau2-section", "τ_2(a) does not lie over a"));
            }
        }
        Ok(tau2)
    }

    /// `τ_2(a)` for `a ∈ 𝒜_G`.
    pub fn tau2(&self, w: &WeylElement) -> Option<&TitsElement> {
        self.tau2.get(w)
    }

    /// Builds and verifies the splitting of `N_{C(s)}(T)` for any `λ`.
    pub fn certificate(&self, s: &SemisimpleClass) -> Result<SplittingCertificate> {
        let r = &self.target;
        if s.datum().cartan_type() != r.cartan_type() || s.datum().y() != r.y() || s.datum().p() != r.p() {
            return Err(Error::DatumMismatch(format!(
                "class belongs to {}, lifter to {}",
                s.datum(),
                r
            )));
        }
        let tg = &self.tits;
        let data = analyze(s, &self.fg)?;
        let lambda_n = data.normalized.lambda().clone();
        let pos: HashSet<RootId> = data.phi_pos_s.iter().copied().collect();
        let mut checks = Vec::new();

        let images: Vec<(FundamentalGroupElement, TitsElement)> = data
            .a_w_s
            .iter()
            .map(|a| {
                self.tau2
                    .get(&a.w)
                    .cloned()
                    .map(|x| (a.clone(), x))
                    .ok_or_else(|| Error::verification("certificate", "A_W(s) is not inside 𝒜_G"))
            })
            .collect::<Result<_>>()?;
        verify_section(tg, &images, &lambda_n, &pos, "")?;
        checks.extend(["section", "homomorphism", "injective", "centralizes-s", "normalizes-positive-system"]);

        // Back to the original λ through σ(w).
        let g = tg.sigma(&data.conjugator.w);
        let ginv = tg.inverse(&g);
        let winv = data.conjugator.w.inverse();
        let pos_orig: HashSet<RootId> = pos.iter().map(|&a| winv.apply_root(a)).collect();
        let conj: Vec<(FundamentalGroupElement, TitsElement)> = images
            .iter()
            .map(|(a, x)| {
                let y = tg.mul_unchecked(&tg.mul_unchecked(&ginv, x), &g);
                let mut b = a.clone();
                b.w = y.w.clone();
                (b, y)
            })
            .collect();
        verify_section(tg, &conj, s.lambda(), &pos_orig, "conjugated-")?;
        checks.extend([
            "conjugated-section",
            "conjugated-homomorphism",
            "conjugated-injective",
            "conjugated-centralizes-s",
            "conjugated-normalizes-positive-system",
        ]);

        let (factors, gens) = if data.a_w_s.is_empty() {
            (vec![], vec![])
        } else {
            cyclic_decomposition(&data.a_w_s, self.fg.identity(), |a, b| self.fg.mul(a, b).clone())
        };
        let pick = |list: &[(FundamentalGroupElement, TitsElement)], a: &FundamentalGroupElement| {
            let i = images.iter().position(|(b, _)| b.w == a.w).expect("generator is in A_W(s)");
            list[i].1.clone()
        };
        let normalized_generators: Vec<TitsElement> = gens.iter().map(|a| pick(&images, a)).collect();
        let generators: Vec<TitsElement> = gens.iter().map(|a| pick(&conj, a)).collect();
        for (x, &n) in generators.iter().zip(&factors) {
            if tg.order(x) != n {
                return Err(Error::verification("generator-order", "A_0 generator has the wrong order"));
            }
        }
        checks.push("generator-orders");

        Ok(SplittingCertificate {
            datum: r.name(),
            data,
            a_zero: conj.into_iter().map(|(_, x)| x).collect(),
            normalized_a_zero: images.into_iter().map(|(_, x)| x).collect(),
            generators,
            normalized_generators,
            generator_orders: factors,
            checks: checks.into_iter().map(String::from).collect(),
        })
    }
}

/// Section, homomorphism, injectivity and stabilizer checks for a finite
/// list of pairs `(a, x)` closed under multiplication.
fn verify_section(
    tg: &TitsGroup,
    list: &[(FundamentalGroupElement, TitsElement)],
    lambda: &RationalVector,
    pos: &HashSet<RootId>,
    prefix: &str,
) -> Result<()> {
    let r = tg.datum();
    let fail = |what: &str, detail: String| Error::verification(format!("{prefix}{what}"), detail);
    let index: HashMap<&WeylElement, &TitsElement> = list.iter().map(|(a, x)| (&a.w, x)).collect();
    for (a, x) in list {
        if x.w != a.w {
            return Err(fail("section", "image does not lie over its Weyl element".into()));
        }
        let moved = &x.w.act(r, lambda) - lambda;
        if !r.in_y(&moved)? {
            return Err(fail("centralizes-s", format!("w(λ) − λ = {moved} ∉ Y")));
        }
        if !x.w.stabilizes(pos) {
            return Err(fail("normalizes-positive-system", "Φ⁺(s) is not preserved".into()));
        }
    }
    for (a, x) in list {
        for (b, y) in list {
            let ab = a.w.mul(&b.w);
            let z = index
                .get(&ab)
                .ok_or_else(|| fail("homomorphism", "A_W(s) is not closed".into()))?;
            if tg.mul_unchecked(x, y) != **z {
                return Err(fail("homomorphism", "τ_2(ab) ≠ τ_2(a)τ_2(b)".into()));
            }
        }
    }
    let distinct: HashSet<&TitsElement> = list.iter().map(|(_, x)| x).collect();
    if distinct.len() != list.len() {
        return Err(fail("injective", "two elements share an image".into()));
    }
    Ok(())
}

/// Verified splitting `N_{C(s)}(T) = N_{C(s)^0}(T) ⋊ A_0`.
#[derive(Clone, Debug)]
pub struct SplittingCertificate {
    pub datum: String,
    pub data: CentralizerData,
    /// `A_0` for the original `λ`.
    pub a_zero: Vec<TitsElement>,
    /// `A_0` for the normalized `λ`.
    pub normalized_a_zero: Vec<TitsElement>,
    pub generators: Vec<TitsElement>,
    pub normalized_generators: Vec<TitsElement>,
    pub generator_orders: Vec<u64>,
    pub checks: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorJson {
    /// 1-based simple reflections.
    pub weyl_word: Vec<usize>,
    pub torus_class: Vec<String>,
    pub order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugatorJson {
    pub weyl_word: Vec<usize>,
    pub translation: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub generators: Vec<GeneratorJson>,
    pub normalized_generators: Vec<GeneratorJson>,
    pub conjugator: ConjugatorJson,
    pub order: usize,
    pub checks: Vec<String>,
}

pub fn weyl_word_1based(r: &RootDatum, w: &WeylElement) -> Vec<usize> {
    w.reduced_word(r).into_iter().map(|i| i + 1).collect()
}

impl ConjugatorJson {
    pub fn new(r: &RootDatum, c: &Conjugator) -> Self {
        ConjugatorJson {
            weyl_word: weyl_word_1based(r, &c.w),
            translation: c.mu.to_strings(),
        }
    }
}

impl SplittingCertificate {
    pub fn to_json(&self) -> CertificateJson {
        let r = self.data.original.datum();
        let gen = |list: &[TitsElement]| -> Vec<GeneratorJson> {
            list.iter()
                .zip(&self.generator_orders)
                .map(|(x, &order)| GeneratorJson {
                    weyl_word: weyl_word_1based(r, &x.w),
                    torus_class: x.t.to_strings(),
                    order,
                })
                .collect()
        };
        CertificateJson {
            generators: gen(&self.generators),
            normalized_generators: gen(&self.normalized_generators),
            conjugator: ConjugatorJson::new(r, &self.data.conjugator),
            order: self.a_zero.len(),
            checks: self.checks.clone(),
        }
    }
}

/// One-shot certificate for a single class.
pub fn splitting_certificate(s: &SemisimpleClass) -> Result<SplittingCertificate> {
    Lifter::new(s.datum(), LiftMethod::Recipe)?.certificate(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(t: &str) -> (RootDatum, FundamentalGroup) {
        let d = RootDatum::simply_connected(t.parse().unwrap()).unwrap();
        let fg = FundamentalGroup::new(&d).unwrap();
        (d, fg)
    }

    #[test]
    fn type_a_parity() {
        for n in 1..=7 {
            let (d, fg) = sc(&format!("A{n}"));
            let lift = flat_lift(&d, &fg, 0).unwrap();
            assert_eq!(lift.generators[0].provenance, Provenance::Sigma);
            // σ(c)^{n+1} = σ(w_0)^2 = ρ^∨, trivial mod Y iff n is even.
            let tg = TitsGroup::new(&d);
            let x = tg.pow(&lift.generators[0].image, n as i64 + 1);
            assert!(x.is_torus());
            assert_eq!(x.t, tg.reduce(&d.rho_check()));
            assert_eq!(d.in_y(&d.rho_check()).unwrap(), n % 2 == 0);
        }
    }

    #[test]
    fn recipes_and_search_cover_catalog() {
        for t in ["A1", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "D6", "E6", "E7", "E8", "F4", "G2"] {
            let (d, fg) = sc(t);
            let a = flat_lift(&d, &fg, 0).unwrap_or_else(|e| panic!("{t}: {e}"));
            let b = flat_lift_generic(&d, &fg, 0).unwrap_or_else(|e| panic!("{t}: {e}"));
            lift_products(&d, &fg, &[a]).unwrap();
            lift_products(&d, &fg, &[b]).unwrap();
        }
    }

    #[test]
    fn cyclic_of_order_six_needs_central_correction() {
        let (d, fg) = sc("A5");
        let tg = TitsGroup::new(&d);
        let lift = flat_lift(&d, &fg, 0).unwrap();
        let x = &lift.generators[0].image;
        let c2 = fg.find(&x.w.pow(&d, 2)).unwrap().clone();
        assert_eq!(c2.order, 3);
        // the bare square misses (♭): its cube is σ(c)^6 = ρ^∨ ≠ 1
        let bare = tg.pow(x, 2);
        assert!(check_flat(&tg, &fg, &c2, &bare).is_err());
        let tau = lift_products(&d, &fg, &[lift]).unwrap();
        let fixed = &tau[&c2.w];
        assert!(check_flat(&tg, &fg, &c2, fixed).is_ok());
        assert_eq!(fixed.w, bare.w);
        let z = tg.mul(&tg.inverse(&bare), fixed).unwrap();
        assert!(z.is_torus());
        assert!(fg.p_prime_elements().iter().any(|b| tg.torus(&fg.iota(b).unwrap()).unwrap() == z));
    }

    #[test]
    fn type_c_needs_correction_exactly_when_sigma_fails() {
        for n in 2..=4 {
            let (d, fg) = sc(&format!("C{n}"));
            let tg = TitsGroup::new(&d);
            let lift = flat_lift(&d, &fg, 0).unwrap();
            let g = &lift.generators[0];
            let sigma_ok = check_flat(&tg, &fg, &g.element, &tg.sigma(&g.element.w)).is_ok();
            assert_eq!(sigma_ok, g.provenance == Provenance::Sigma, "C{n}");
        }
    }

    #[test]
    fn d_even_lifts_commute() {
        for t in ["D4", "D6"] {
            let (d, fg) = sc(t);
            let lift = flat_lift(&d, &fg, 0).unwrap();
            assert_eq!(lift.generators.len(), 3);
            let tg = TitsGroup::new(&d);
            assert!(commute(&tg, &lift.generators[0].image, &lift.generators[1].image));
        }
    }

    #[test]
    fn product_with_mixed_generator() {
        let (d, fg) = sc("A1xA1");
        let lifts: Vec<FlatLift> = (0..2).map(|k| flat_lift(&d, &fg, k).unwrap()).collect();
        let tau = lift_products(&d, &fg, &lifts).unwrap();
        assert_eq!(tau.len(), 4);
    }

    #[test]
    fn adjoint_a3_orders() {
        let ad: RootDatum = "A3:ad".parse().unwrap();
        let l = Lifter::new(&ad, LiftMethod::Recipe).unwrap();
        for a in &l.fundamental_group().elements {
            assert_eq!(l.tits().order(&l.tau1(a).unwrap()), a.order);
        }
    }

    #[test]
    fn pgl2_certificate() {
        let ad: RootDatum = "A1:ad".parse().unwrap();
        let s = SemisimpleClass::new(&ad, "1/4".parse().unwrap()).unwrap();
        let cert = splitting_certificate(&s).unwrap();
        assert_eq!(cert.a_zero.len(), 2);
        assert_eq!(cert.generator_orders, vec![2]);
        let tg = TitsGroup::new(&ad);
        let x = &cert.generators[0];
        assert!(tg.pow(x, 2) == tg.identity());
        // σ(s)^2 = α^∨/2 ∈ Y for the adjoint datum
        assert!(tg.pow(&tg.sigma(&x.w), 2) == tg.identity());
    }

    #[test]
    fn sc_certificates_are_trivial() {
        let d: RootDatum = "B3:sc".parse().unwrap();
        let l = Lifter::new(&d, LiftMethod::Recipe).unwrap();
        let s = SemisimpleClass::new(&d, "1/2,0,1/2".parse().unwrap()).unwrap();
        let cert = l.certificate(&s).unwrap();
        assert_eq!(cert.a_zero.len(), 1);
    }

    #[test]
    fn unnormalized_lambda_conjugates_back() {
        let d: RootDatum = "A2:ad".parse().unwrap();
        let l = Lifter::new(&d, LiftMethod::Recipe).unwrap();
        // ϖ_1^∨ + ϖ_2^∨ moved by s_1 and a coroot translation
        let s = SemisimpleClass::new(&d, "-1/3,4/3".parse().unwrap()).unwrap();
        let cert = l.certificate(&s).unwrap();
        assert!(!cert.data.conjugator.w.is_identity() || !cert.data.conjugator.mu.is_zero());
        assert_eq!(cert.a_zero.len(), cert.data.a_w_s.len());
    }

    #[test]
    fn central_torus() {
        let d: RootDatum = "A1xT1:sc".parse().unwrap();
        let l = Lifter::new(&d, LiftMethod::Recipe).unwrap();
        let s = SemisimpleClass::new(&d, "1/4,1/3".parse().unwrap()).unwrap();
        l.certificate(&s).unwrap();
    }
}
