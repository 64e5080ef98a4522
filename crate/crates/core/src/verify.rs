//! Verification suites over the type catalog, with a deterministic report.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::{braid_equal, lift_weyl, reverse, BraidWord};
use crate::centralizer::{alcove_points, brute_force_w_of_s, SemisimpleClass};
use crate::error::{Error, Result};
use crate::frobenius::{centralizer_f_stable, f_stable_splitting, iota_equivariant, FrobeniusAction};
use crate::fundgroup::FundamentalGroup;
use crate::lattice::{rat, RationalVector};
use crate::lifting::{flat_lift, flat_lift_generic, lift_products, LiftMethod, Lifter};
use crate::rootdata::{CartanType, RootDatum};
use crate::tits::TitsGroup;
use crate::weyl::{enumerate_weyl, longest_element, weyl_order, WeylElement};

pub const REPORT_VERSION: u32 = 1;

/// Types swept by the centralizer suites.
pub const CATALOG: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "D6", "E6", "E7",
    "E8", "F4", "G2", "A1xA1", "A1xA2",
];

/// Quasi-simple types for the lifting suite.
pub const FLAT_CATALOG: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "D6", "E6", "E7",
    "E8", "F4", "G2",
];

/// Types enumerated exhaustively for the Adams–Vogan identity.
pub const ADAMS_VOGAN_EXHAUSTIVE: &[&str] = &[
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2",
];

/// Types sampled with random signed words.
pub const ADAMS_VOGAN_RANDOM: &[&str] = &["D6", "E6", "E7"];

/// Rank ≤ 4 types for the involution suite.
pub const INVOLUTION_CATALOG: &[&str] = &[
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2", "A1xA1",
];

pub const ODD_Q: &[u64] = &[3, 5, 7, 9, 27];
pub const EVEN_Q: &[u64] = &[2, 4, 8];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    AdamsVogan,
    Involution,
    Flat,
    Braid,
    E6Braid,
    Splitting,
    TypeC,
    FStable,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::AdamsVogan,
        Suite::Involution,
        Suite::Flat,
        Suite::Braid,
        Suite::E6Braid,
        Suite::Splitting,
        Suite::TypeC,
        Suite::FStable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::AdamsVogan => "adams-vogan",
            Suite::Involution => "involution",
            Suite::Flat => "flat",
            Suite::Braid => "braid",
            Suite::E6Braid => "e6-braid",
            Suite::Splitting => "splitting",
            Suite::TypeC => "type-c",
            Suite::FStable => "f-stable",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a suite name; `all` expands to every suite.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    s.split(',')
        .map(|part| part.trim().parse())
        .collect()
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("unknown suite `{s}`"),
            })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub max_rank: usize,
    pub oracle_limit: u128,
    pub random_words: usize,
    pub max_word_len: usize,
    pub max_denominator: i64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            max_rank: 8,
            oracle_limit: 51840,
            random_words: 1000,
            max_word_len: 30,
            max_denominator: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CaseResult {
    pub key: String,
    pub identity: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CaseResult {
    fn from_result(key: impl Into<String>, identity: &str, r: Result<Option<String>>) -> Self {
        let (ok, value, detail) = match r {
            Ok(v) => (true, v, None),
            Err(e) => (false, None, Some(e.to_string())),
        };
        CaseResult {
            key: key.into(),
            identity: identity.to_string(),
            ok,
            value,
            detail,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub count: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    fn new(suite: Suite, mut cases: Vec<CaseResult>, notes: Vec<String>) -> Self {
        cases.sort();
        let failures = cases.iter().filter(|c| !c.ok).count();
        SuiteReport {
            name: suite.name().to_string(),
            passed: failures == 0,
            count: cases.len(),
            failures,
            notes,
            cases,
        }
    }

    fn setup_error(suite: Suite, key: &str, e: Error) -> Self {
        SuiteReport::new(suite, vec![CaseResult::from_result(key, "setup", Err(e))], vec![])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub version: u32,
    pub seed: u64,
    pub max_rank: usize,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

pub fn run(suites: &[Suite], cfg: &VerifyConfig) -> VerifyReport {
    let mut suites: Vec<Suite> = suites.to_vec();
    suites.sort();
    suites.dedup();
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, cfg)).collect();
    VerifyReport {
        version: REPORT_VERSION,
        seed: cfg.seed,
        max_rank: cfg.max_rank,
        passed: reports.iter().all(|r| r.passed),
        suites: reports,
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    match suite {
        Suite::AdamsVogan => adams_vogan(cfg),
        Suite::Involution => involution(cfg),
        Suite::Flat => flat(cfg),
        Suite::Braid => braid(cfg),
        Suite::E6Braid => e6_braid(cfg),
        Suite::Splitting => splitting(cfg),
        Suite::TypeC => type_c(cfg),
        Suite::FStable => f_stable(cfg),
    }
}

fn within_rank(t: &str, cfg: &VerifyConfig) -> bool {
    t.parse::<CartanType>()
        .map(|c| c.semisimple_rank() <= cfg.max_rank)
        .unwrap_or(false)
}

fn sc(t: &str) -> Result<RootDatum> {
    RootDatum::simply_connected(t.parse()?)
}

fn word_string(r: &RootDatum, w: &WeylElement) -> String {
    let word = w.reduced_word(r);
    if word.is_empty() {
        "e".into()
    } else {
        word.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// Deterministic per-type stream derived from the global seed.
fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

pub fn random_signed_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    BraidWord {
        letters: (0..len)
            .map(|_| (rng.gen_range(0..rank), if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect(),
    }
}

// ---- suites ----

fn adams_vogan(cfg: &VerifyConfig) -> SuiteReport {
    let mut cases = Vec::new();
    for &t in ADAMS_VOGAN_EXHAUSTIVE.iter().filter(|t| within_rank(t, cfg)) {
        let r = match sc(t) {
            Ok(r) => r,
            Err(e) => return SuiteReport::setup_error(Suite::AdamsVogan, t, e),
        };
        let tg = TitsGroup::new(&r);
        let elems = match enumerate_weyl(&r, u128::MAX) {
            Ok(e) => e,
            Err(e) => return SuiteReport::setup_error(Suite::AdamsVogan, t, e),
        };
        let mut part: Vec<CaseResult> = elems
            .par_iter()
            .map(|w| {
                let b = lift_weyl(&r, w);
                CaseResult::from_result(
                    format!("{}|w={}", r.name(), word_string(&r, w)),
                    "ts(b)ts(rev b) = (ρ^∨ − w(ρ^∨))/2",
                    tg.adams_vogan(&b).map(|_| None),
                )
            })
            .collect();
        cases.append(&mut part);
    }
    for &t in ADAMS_VOGAN_RANDOM.iter().filter(|t| within_rank(t, cfg)) {
        let r = match sc(t) {
            Ok(r) => r,
            Err(e) => return SuiteReport::setup_error(Suite::AdamsVogan, t, e),
        };
        let tg = TitsGroup::new(&r);
        let mut rng = rng_for(cfg.seed, t);
        let words: Vec<BraidWord> = (0..cfg.random_words)
            .map(|_| random_signed_word(&mut rng, r.rank(), cfg.max_word_len))
            .collect();
        let mut part: Vec<CaseResult> = words
            .par_iter()
            .enumerate()
            .map(|(i, b)| {
                CaseResult::from_result(
                    format!("{}|random#{:04}|{}", r.name(), i, b),
                    "ts(b)ts(rev b) = (ρ^∨ − w(ρ^∨))/2",
                    tg.adams_vogan(b).map(|_| None),
                )
            })
            .collect();
        cases.append(&mut part);
    }
    SuiteReport::new(Suite::AdamsVogan, cases, vec![])
}

fn involution(cfg: &VerifyConfig) -> SuiteReport {
    let mut cases = Vec::new();
    for &t in INVOLUTION_CATALOG.iter().filter(|t| within_rank(t, cfg)) {
        let ct: CartanType = t.parse().expect("catalog entry");
        let data = match RootDatum::standard_isogenies(&ct) {
            Ok(i) => i.all(),
            Err(e) => return SuiteReport::setup_error(Suite::Involution, t, e),
        };
        for r in data {
            let tg = TitsGroup::new(&r);
            let n = r.rank();
            let all: Vec<usize> = (0..n).collect();
            let w0 = longest_element(&r, &all);
            let sq = tg.pow(&tg.sigma(&w0), 2);
            let expect = tg.reduce(&r.rho_check());
            let res = if sq.is_torus() && sq.t == expect {
                Ok(Some(sq.t.to_string()))
            } else {
                Err(Error::verification("sigma-w0-squared", format!("got {}", sq.t)))
            };
            cases.push(CaseResult::from_result(
                format!("{}|w0", r.name()),
                "σ(w_0)^2 = ρ^∨",
                res,
            ));
            let mut part: Vec<CaseResult> = (0u64..(1 << n))
                .into_par_iter()
                .map(|mask| {
                    let nodes: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                    let label: Vec<String> = nodes.iter().map(|i| (i + 1).to_string()).collect();
                    CaseResult::from_result(
                        format!("{}|I={{{}}}", r.name(), label.join(",")),
                        "σ(w_I w_0)σ(w_0 w_I) = ρ^∨ − ρ_I^∨",
                        tg.involution_torus(&nodes).map(|_| None),
                    )
                })
                .collect();
            cases.append(&mut part);
        }
    }
    SuiteReport::new(Suite::Involution, cases, vec![])
}

fn flat(cfg: &VerifyConfig) -> SuiteReport {
    let types: Vec<&str> = FLAT_CATALOG.iter().copied().filter(|t| within_rank(t, cfg)).collect();
    let mut cases: Vec<CaseResult> = types
        .par_iter()
        .flat_map(|&t| {
            let mut out = Vec::new();
            let setup = sc(t).and_then(|r| FundamentalGroup::new(&r).map(|fg| (r, fg)));
            let (r, fg) = match setup {
                Ok(x) => x,
                Err(e) => return vec![CaseResult::from_result(t, "setup", Err(e))],
            };
            let key = r.name();
            let recipe = flat_lift(&r, &fg, 0).and_then(|l| {
                let desc = l
                    .generators
                    .iter()
                    .map(|g| format!("c{}:{}", g.node + 1, serde_json::to_string(&g.provenance).unwrap_or_default()))
                    .collect::<Vec<_>>()
                    .join(" ");
                lift_products(&r, &fg, &[l]).map(|tau| Some(format!("{desc} |𝒜|={}", tau.len())))
            });
            out.push(CaseResult::from_result(key.clone(), "flat-lift (♭) recipe", recipe));
            let generic = flat_lift_generic(&r, &fg, 0).and_then(|l| {
                let desc = l
                    .generators
                    .iter()
                    .map(|g| format!("t={}", g.image.t))
                    .collect::<Vec<_>>()
                    .join(" ");
                lift_products(&r, &fg, &[l]).map(|_| Some(desc))
            });
            out.push(CaseResult::from_result(key.clone(), "flat-lift (♭) search", generic));
            out.extend(type_specific_flat(&r, &fg));
            out
        })
        .collect();
    cases.sort();
    SuiteReport::new(Suite::Flat, cases, vec![])
}

/// Congruences tied to individual types.
fn type_specific_flat(r: &RootDatum, fg: &FundamentalGroup) -> Vec<CaseResult> {
    let key = r.name();
    let tg = TitsGroup::new(r);
    let comp = r.cartan_type().components[0];
    let n = comp.rank;
    let name = r.cartan_type().to_string();
    let mut out = Vec::new();
    let rho = r.rho_check();
    if name.starts_with('A') {
        let in_y = r.in_y(&rho).unwrap_or(false);
        let res = if in_y == n.is_multiple_of(2) {
            Ok(Some(format!("ρ^∨ ∈ Y: {in_y}")))
        } else {
            Err(Error::verification("type-a-parity", format!("n = {n}, ρ^∨ ∈ Y is {in_y}")))
        };
        out.push(CaseResult::from_result(key.clone(), "ρ^∨ ∈ Y iff n even", res));
        let c = fg.generator(n - 1).map(|g| tg.pow(&tg.sigma(&g.w), n as i64 + 1));
        let res = match c {
            Some(x) if x.is_torus() && x.t == tg.reduce(&rho) => Ok(None),
            _ => Err(Error::verification("type-a-power", "σ(c)^{n+1} ≠ ρ^∨")),
        };
        out.push(CaseResult::from_result(key.clone(), "σ(c)^{n+1} = ρ^∨", res));
    }
    if name == "E6" {
        let j: Vec<usize> = vec![1, 2, 3, 4];
        let res = fg
            .generator(5)
            .map(|g| tg.pow(&tg.sigma(&g.w), 3))
            .filter(|x| x.is_torus())
            .map(|x| {
                let expect = tg.reduce(&(&rho - &r.rho_check_parabolic(&j)));
                if x.t == expect && x.t.is_zero() {
                    Ok(None)
                } else {
                    Err(Error::verification("e6-sigma-c3", format!("σ(c)^3 = {}", x.t)))
                }
            })
            .unwrap_or_else(|| Err(Error::verification("e6-sigma-c3", "σ(c)^3 is not a torus element")));
        out.push(CaseResult::from_result(key.clone(), "σ(c^3) = ρ^∨ − ρ_J^∨ = 1", res));
    }
    if name == "E7" {
        let expect = RationalVector::new(
            [0, 1, 0, 0, 1, 0, 1]
                .iter()
                .map(|&x| rat(x, 2))
                .collect(),
        );
        let ok = tg.reduce(&rho) == tg.reduce(&expect);
        let res = if ok {
            Ok(None)
        } else {
            Err(Error::verification("e7-rho", format!("ρ^∨ = {rho}")))
        };
        out.push(CaseResult::from_result(key.clone(), "ρ^∨ ≡ (α_2^∨+α_5^∨+α_7^∨)/2", res));
        let i: Vec<usize> = (0..6).collect();
        let res = fg
            .generator(6)
            .map(|g| tg.pow(&tg.sigma(&g.w), 2))
            .map(|x| {
                let a = tg.reduce(&(&rho - &r.rho_check_parabolic(&i)));
                let b = tg.reduce(&r.fundamental_coweight(6));
                if x.is_torus() && x.t == a && a == b {
                    Ok(None)
                } else {
                    Err(Error::verification("e7-sigma-c2", format!("σ(c)^2 = {}", x.t)))
                }
            })
            .unwrap_or_else(|| Err(Error::verification("e7-sigma-c2", "node 7 is not minuscule")));
        out.push(CaseResult::from_result(key.clone(), "σ(c)^2 = ρ^∨ − ρ_I^∨ ≡ ϖ_7^∨", res));
    }
    out
}

/// `s_{i_1} ⋯ s_{i_k}` from 1-based labels.
fn word(labels: &[usize]) -> BraidWord {
    BraidWord::positive(&labels.iter().map(|i| i - 1).collect::<Vec<_>>())
}

fn longest_lift(r: &RootDatum, labels: &[usize]) -> BraidWord {
    let nodes: Vec<usize> = labels.iter().map(|i| i - 1).collect();
    lift_weyl(r, &longest_element(r, &nodes))
}

fn braid_case(r: &RootDatum, identity: &str, a: &BraidWord, b: &BraidWord) -> CaseResult {
    let res = if braid_equal(r, a, b) {
        Ok(None)
    } else {
        Err(Error::verification("braid", format!("{a} ≠ {b}")))
    };
    CaseResult::from_result(r.name(), identity, res)
}

fn braid(cfg: &VerifyConfig) -> SuiteReport {
    let mut cases = Vec::new();
    let mut setup = |t: &str| -> Option<(RootDatum, FundamentalGroup)> {
        if !within_rank(t, cfg) {
            return None;
        }
        match sc(t).and_then(|r| FundamentalGroup::new(&r).map(|f| (r, f))) {
            Ok(x) => Some(x),
            Err(e) => {
                cases.push(CaseResult::from_result(t, "setup", Err(e)));
                None
            }
        }
    };
    let mut jobs: Vec<(RootDatum, FundamentalGroup)> = Vec::new();
    for t in ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "D6", "D7", "E6"] {
        if let Some(x) = setup(t) {
            jobs.push(x);
        }
    }
    let mut part: Vec<CaseResult> = jobs
        .par_iter()
        .flat_map(|(r, fg)| braid_cases(r, fg))
        .collect();
    cases.append(&mut part);
    SuiteReport::new(Suite::Braid, cases, vec![])
}

fn braid_cases(r: &RootDatum, fg: &FundamentalGroup) -> Vec<CaseResult> {
    let n = r.rank();
    let all: Vec<usize> = (1..=n).collect();
    let w0 = longest_lift(r, &all);
    let lift_gen = |j: usize| fg.generator(j - 1).map(|g| lift_weyl(r, &g.w));
    let name = r.cartan_type().to_string();
    let mut out = Vec::new();
    match name.chars().next() {
        Some('A') => {
            if let Some(c) = lift_gen(n) {
                out.push(braid_case(r, "c^{n+1} = w_0^2", &c.pow(n as i64 + 1), &w0.pow(2)));
            }
        }
        Some('D') => {
            let i_set: Vec<usize> = (3..=n).collect();
            let wi = longest_lift(r, &i_set);
            let alpha = word(&[vec![2], i_set.clone()].concat());
            let beta = word(&[vec![1], i_set.clone()].concat());
            let w2n = longest_lift(r, &[vec![2], i_set.clone()].concat());
            let w1n = longest_lift(r, &[vec![1], i_set.clone()].concat());
            out.push(braid_case(r, "w_{2..n} = w_I α", &w2n, &wi.concat(&alpha)));
            out.push(braid_case(r, "w_{2..n} = α̃ w_I", &w2n, &reverse(&alpha).concat(&wi)));
            out.push(braid_case(r, "w_{1,3..n} = w_I β", &w1n, &wi.concat(&beta)));
            out.push(braid_case(r, "w_{1,3..n} = β̃ w_I", &w1n, &reverse(&beta).concat(&wi)));
            let (Some(a), Some(c)) = (lift_gen(1), lift_gen(n)) else {
                return out;
            };
            out.push(braid_case(r, "c = β̃ α", &c, &reverse(&beta).concat(&alpha)));
            out.push(braid_case(r, "c = α̃ β", &c, &reverse(&alpha).concat(&beta)));
            if n.is_multiple_of(2) {
                if let Some(b) = lift_gen(2) {
                    out.push(braid_case(
                        r,
                        "c a c b = c b c a",
                        &c.concat(&a).concat(&c).concat(&b),
                        &c.concat(&b).concat(&c).concat(&a),
                    ));
                }
            } else {
                let bt = reverse(&beta);
                let x = bt.concat(&a).concat(&bt.inverse());
                let x2 = x.pow(2);
                out.push(braid_case(r, "(β̃ a β̃^{-1})^2 is reverse-invariant", &x2, &reverse(&x2)));
                out.push(d_odd_fourth_power(r, fg, &x));
            }
        }
        Some('E') if n == 6 => {
            out.push(e6_case(r, fg));
        }
        _ => {}
    }
    out
}

/// `ts(β̃ a β̃^{-1})^4 = (α_1^∨ + α_2^∨)/2 = ι(a^2)` in `D_n`, `n` odd.
fn d_odd_fourth_power(r: &RootDatum, fg: &FundamentalGroup, x: &BraidWord) -> CaseResult {
    let tg = TitsGroup::new(r);
    let res = (|| {
        let y = tg.pow(&tg.ts(x)?, 4);
        let mut half = vec![rat(0, 1); r.dim()];
        half[0] = rat(1, 2);
        half[1] = rat(1, 2);
        let expect = tg.reduce(&RationalVector::new(half));
        let a = fg
            .generator(0)
            .ok_or_else(|| Error::verification("d-odd", "node 1 is not minuscule"))?;
        let a2 = fg
            .find(&a.w.pow(r, 2))
            .ok_or_else(|| Error::verification("d-odd", "a^2 not in 𝒜"))?;
        let iota = tg.reduce(&fg.iota(a2)?);
        if y.is_torus() && y.t == expect && expect == iota {
            Ok(Some(y.t.to_string()))
        } else {
            Err(Error::verification("d-odd", format!("got {}, expected {expect}, ι(a^2) = {iota}", y.t)))
        }
    })();
    CaseResult::from_result(r.name(), "ts(β̃ a β̃^{-1})^4 = (α_1^∨+α_2^∨)/2 = ι(a^2)", res)
}

fn e6_case(r: &RootDatum, fg: &FundamentalGroup) -> CaseResult {
    let all: Vec<usize> = (1..=6).collect();
    let w0 = longest_lift(r, &all);
    let wj = longest_lift(r, &[2, 3, 4, 5]);
    match fg.generator(5) {
        Some(g) => {
            let c = lift_weyl(r, &g.w);
            braid_case(r, "c^3 = w_0^2 w_J^{-2}", &c.pow(3), &w0.pow(2).concat(&wj.pow(-2)))
        }
        None => CaseResult::from_result(r.name(), "c^3 = w_0^2 w_J^{-2}", Err(Error::verification("e6", "node 6 is not minuscule"))),
    }
}

fn e6_braid(cfg: &VerifyConfig) -> SuiteReport {
    if !within_rank("E6", cfg) {
        return SuiteReport::new(Suite::E6Braid, vec![], vec!["E6 excluded by --max-rank".into()]);
    }
    let case = match sc("E6").and_then(|r| FundamentalGroup::new(&r).map(|f| (r, f))) {
        Ok((r, fg)) => e6_case(&r, &fg),
        Err(e) => CaseResult::from_result("E6", "setup", Err(e)),
    };
    SuiteReport::new(Suite::E6Braid, vec![case], vec![])
}

/// Every datum of the sweep: catalog types times standard isogenies.
pub fn sweep_data(cfg: &VerifyConfig) -> Result<Vec<RootDatum>> {
    let mut out = Vec::new();
    for &t in CATALOG.iter().filter(|t| within_rank(t, cfg)) {
        out.extend(RootDatum::standard_isogenies(&t.parse()?)?.all());
    }
    Ok(out)
}

fn splitting(cfg: &VerifyConfig) -> SuiteReport {
    let data = match sweep_data(cfg) {
        Ok(d) => d,
        Err(e) => return SuiteReport::setup_error(Suite::Splitting, "catalog", e),
    };
    let lifters: Vec<Result<Lifter>> = data
        .par_iter()
        .map(|r| Lifter::new(r, LiftMethod::Recipe))
        .collect();
    let mut cases = Vec::new();
    let mut jobs = Vec::new();
    for (r, l) in data.iter().zip(&lifters) {
        match l {
            Ok(l) => {
                for p in alcove_points(r, cfg.max_denominator) {
                    jobs.push((l, p));
                }
            }
            Err(e) => cases.push(CaseResult::from_result(r.name(), "setup", Err(e.clone()))),
        }
    }
    let skipped = std::sync::atomic::AtomicUsize::new(0);
    let mut part: Vec<CaseResult> = jobs
        .par_iter()
        .flat_map(|(l, lambda)| {
            let r = l.datum();
            let key = format!("{}|λ={}", r.name(), lambda);
            let mut out = Vec::new();
            let s = match SemisimpleClass::new(r, lambda.clone()) {
                Ok(s) => s,
                Err(e) => return vec![CaseResult::from_result(key, "setup", Err(e))],
            };
            // certify a displaced representative w_0(λ) + (1, …, 1) so the
            // conjugation back to the alcove is exercised too
            let displaced = {
                let w0 = longest_element(r, &(0..r.rank()).collect::<Vec<_>>());
                let shift: Vec<i64> = (0..r.dim()).map(|k| i64::from(k < r.rank())).collect();
                SemisimpleClass::new(r, &w0.act(r, lambda) + &RationalVector::from_ints(&shift))
            };
            let cert = displaced.and_then(|d| l.certificate(&d));
            let a_g = cert.as_ref().ok().map(|c| c.data.a_g_structure());
            out.push(CaseResult::from_result(
                key.clone(),
                "splitting-certificate",
                cert.as_ref().map(|c| Some(format!("A_G(s)={:?} W0(s)={}", c.data.a_g_structure(), c.data.w0s_type))).map_err(Clone::clone),
            ));
            if let Ok(c) = &cert {
                if r.is_simply_connected() {
                    let res = if c.a_zero.len() == 1 {
                        Ok(None)
                    } else {
                        Err(Error::verification("sc-trivial", "A_G(s) is not trivial for a simply connected datum"))
                    };
                    out.push(CaseResult::from_result(key.clone(), "simply connected ⇒ A_G(s) = 1", res));
                }
                if weyl_order(r) <= cfg.oracle_limit {
                    let res = brute_force_w_of_s(&s, cfg.oracle_limit).and_then(|o| {
                        let ok = o.w0_s_order as u128 == c.data.w0s_order
                            && o.w_s_order as u128 == c.data.w0s_order * c.a_zero.len() as u128
                            && Some(&o.invariant_factors) == a_g.as_ref();
                        if ok {
                            Ok(None)
                        } else {
                            Err(Error::verification(
                                "oracle",
                                format!(
                                    "oracle |W(s)|={} |W0(s)|={} {:?}; pipeline |W0(s)|={} |A_0|={} {:?}",
                                    o.w_s_order, o.w0_s_order, o.invariant_factors, c.data.w0s_order, c.a_zero.len(), a_g
                                ),
                            ))
                        }
                    });
                    out.push(CaseResult::from_result(key.clone(), "|W(s)| = |W0(s)|·|A_W(s)| (oracle)", res));
                } else {
                    skipped.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                }
            }
            out
        })
        .collect();
    cases.append(&mut part);
    // spot value
    let spot = (|| {
        let r: RootDatum = "A1:ad".parse()?;
        let s = SemisimpleClass::new(&r, "1/4".parse()?)?;
        let c = Lifter::new(&r, LiftMethod::Recipe)?.certificate(&s)?;
        if c.data.a_g_structure() == vec![2] {
            Ok(Some("[2]".to_string()))
        } else {
            Err(Error::verification("pgl2-spot", format!("{:?}", c.data.a_g_structure())))
        }
    })();
    cases.push(CaseResult::from_result("A1:ad|λ=(1/4)|spot", "PGL_2 at α^∨/4 has A_G(s) = Z/2", spot));
    let notes = vec![format!(
        "oracle skipped for {} cases with |W| > {}",
        skipped.into_inner(),
        cfg.oracle_limit
    )];
    SuiteReport::new(Suite::Splitting, cases, notes)
}

fn type_c(cfg: &VerifyConfig) -> SuiteReport {
    let mut cases = Vec::new();
    for n in 2..=4usize {
        if n > cfg.max_rank {
            continue;
        }
        let key = format!("C{n}:sc");
        let res = (|| {
            let r = sc(&format!("C{n}"))?;
            let fg = FundamentalGroup::new(&r)?;
            let tg = TitsGroup::new(&r);
            let c = fg
                .generator(0)
                .ok_or_else(|| Error::verification("type-c", "node 1 is not minuscule"))?;
            let sq = tg.pow(&tg.sigma(&c.w), 2);
            if !sq.is_torus() {
                return Err(Error::verification("type-c", "σ(c)^2 is not a torus element"));
            }
            let word: Vec<usize> = c.w.reduced_word(&r);
            let m = sp_matrix_square(n, &word);
            let signs = torus_signs_type_c(&sq.t);
            let expected = if n % 2 == 0 { 1 } else { -1 };
            for i in 0..2 * n {
                for j in 0..2 * n {
                    let want = if i == j { expected } else { 0 };
                    if m[i][j] != want {
                        return Err(Error::verification("type-c-matrix", format!("entry ({i},{j}) = {}", m[i][j])));
                    }
                }
                if signs[i % n] != m[i][i] {
                    return Err(Error::verification(
                        "type-c-componentwise",
                        format!("coordinate {}: Tits sign {} vs matrix {}", i, signs[i % n], m[i][i]),
                    ));
                }
            }
            Ok(Some(format!("σ(c)^2 = {} = (−1)^{n}", sq.t)))
        })();
        cases.push(CaseResult::from_result(key, "σ(c)^2 = (−1)^n Id_{2n}", res));
    }
    SuiteReport::new(Suite::TypeC, cases, vec![])
}

/// Eigenvalue signs of a torus element `t ∈ ½Q^∨` of `Sp_{2n}` on
/// `e_1, …, e_n`, with `α_1^∨ = ε_1` and `α_i^∨ = ε_i − ε_{i−1}`.
fn torus_signs_type_c(t: &RationalVector) -> Vec<i64> {
    let n = t.dim();
    (0..n)
        .map(|k| {
            let next = if k + 1 < n { t[k + 1].clone() } else { rat(0, 1) };
            let x = &t[k] - next;
            let twice = (x * rat(2, 1)).to_integer();
            if twice.is_even_int() {
                1
            } else {
                -1
            }
        })
        .collect()
}

trait EvenInt {
    fn is_even_int(&self) -> bool;
}

impl EvenInt for num_bigint::BigInt {
    fn is_even_int(&self) -> bool {
        num_integer::Integer::is_even(self)
    }
}

type Mat = Vec<Vec<i64>>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn unipotent(x: &Mat, u: i64) -> Mat {
    let n = x.len();
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64 + u * x[i][j]).collect())
        .collect()
}

/// `(n_c)^2` in `Sp_{2n}` for the product of `n_α = x_α(1)x_{−α}(−1)x_α(1)`
/// along a reduced word (0-based nodes, `α_1` long).
fn sp_matrix_square(n: usize, word: &[usize]) -> Mat {
    let dim = 2 * n;
    let e = |k: usize| k;
    let f = |k: usize| n + k;
    let root_mats = |i: usize| -> (Mat, Mat) {
        let mut x = vec![vec![0i64; dim]; dim];
        let mut y = vec![vec![0i64; dim]; dim];
        if i == 0 {
            x[e(0)][f(0)] = 1;
            y[f(0)][e(0)] = 1;
        } else {
            x[e(i)][e(i - 1)] = 1;
            x[f(i - 1)][f(i)] = -1;
            y[e(i - 1)][e(i)] = 1;
            y[f(i)][f(i - 1)] = -1;
        }
        (x, y)
    };
    let mut acc: Mat = (0..dim).map(|i| (0..dim).map(|j| (i == j) as i64).collect()).collect();
    for &i in word {
        let (x, y) = root_mats(i);
        let ni = mat_mul(&mat_mul(&unipotent(&x, 1), &unipotent(&y, -1)), &unipotent(&x, 1));
        acc = mat_mul(&acc, &ni);
    }
    mat_mul(&acc, &acc)
}

fn f_stable(cfg: &VerifyConfig) -> SuiteReport {
    let data = match sweep_data(cfg) {
        Ok(d) => d,
        Err(e) => return SuiteReport::setup_error(Suite::FStable, "catalog", e),
    };
    let mut cases = Vec::new();
    let mut notes = Vec::new();
    // (datum, parity) lifters: odd q on the datum itself, even q with p = 2.
    let lifters: Vec<(Result<Lifter>, Result<Lifter>)> = data
        .par_iter()
        .map(|r| {
            (
                Lifter::new(r, LiftMethod::Recipe),
                r.with_p(2).and_then(|r2| Lifter::new(&r2, LiftMethod::Recipe)),
            )
        })
        .collect();
    let mut jobs = Vec::new();
    for (r, (odd, even)) in data.iter().zip(&lifters) {
        let points = alcove_points(r, cfg.max_denominator);
        for (l, qs) in [(odd, ODD_Q), (even, EVEN_Q)] {
            match l {
                Ok(l) => {
                    for &q in qs {
                        for p in &points {
                            jobs.push((l, q, p.clone()));
                        }
                    }
                }
                Err(e) => cases.push(CaseResult::from_result(r.name(), "setup", Err(e.clone()))),
            }
        }
    }
    let results: Vec<(u64, Option<CaseResult>)> = jobs
        .par_iter()
        .map(|(l, q, lambda)| {
            let r = l.datum();
            let key = format!("{}|λ={}|q={}", r.name(), lambda, q);
            let f = FrobeniusAction::new(*q).expect("catalog q ≥ 2");
            let s = match SemisimpleClass::new(r, lambda.clone()) {
                Ok(s) => s,
                Err(e) => return (*q, Some(CaseResult::from_result(key, "setup", Err(e)))),
            };
            match centralizer_f_stable(&s, f, l.fundamental_group()) {
                Ok(false) => (*q, None),
                Ok(true) => {
                    let res = f_stable_splitting(l, &s, f).map(|x| Some(format!("|A_0|={}", x.certificate.a_zero.len())));
                    (*q, Some(CaseResult::from_result(key, "A_0 is F-stable and (♯) splits", res)))
                }
                Err(e) => (*q, Some(CaseResult::from_result(key, "centralizer-F-stable", Err(e)))),
            }
        })
        .collect();
    for &q in ODD_Q.iter().chain(EVEN_Q) {
        let (stable, unstable): (Vec<_>, Vec<_>) = results.iter().filter(|(x, _)| *x == q).partition(|(_, c)| c.is_some());
        notes.push(format!("q={q}: {} F-stable centralizers checked, {} skipped", stable.len(), unstable.len()));
    }
    cases.extend(results.into_iter().filter_map(|(_, c)| c));
    // negative control
    let neg = (|| {
        let r: RootDatum = "A2:sc".parse()?;
        let fg = FundamentalGroup::new(&r)?;
        if iota_equivariant(&fg, FrobeniusAction::new(2)?)? {
            Err(Error::verification("iota-not-equivariant", "ι commuted with F for A2, q = 2"))
        } else {
            Ok(Some("expected failure observed".to_string()))
        }
    })();
    cases.push(CaseResult::from_result("A2:sc|q=2|negative-control", "ι ∘ F ≠ F ∘ ι", neg));
    SuiteReport::new(Suite::FStable, cases, notes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(parse_suites("all").unwrap().len(), 8);
        assert!(parse_suites("nope").is_err());
    }

    #[test]
    fn sp4_square() {
        // C2: c = s_1 s_2 s_1 style involution squares to the identity
        let r = sc("C2").unwrap();
        let fg = FundamentalGroup::new(&r).unwrap();
        let c = fg.generator(0).unwrap();
        let m = sp_matrix_square(2, &c.w.reduced_word(&r));
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, (i == j) as i64);
            }
        }
    }

    #[test]
    fn small_suites_pass() {
        let cfg = VerifyConfig {
            max_rank: 3,
            random_words: 10,
            ..Default::default()
        };
        for s in [Suite::AdamsVogan, Suite::Involution, Suite::Flat, Suite::Braid, Suite::TypeC] {
            let rep = run_suite(s, &cfg);
            let bad: Vec<_> = rep.cases.iter().filter(|c| !c.ok).collect();
            assert!(rep.passed, "{s}: {bad:?}");
        }
    }
}
