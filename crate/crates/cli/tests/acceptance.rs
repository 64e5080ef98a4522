//! End-to-end acceptance run: every criterion gets one PASS/FAIL line.
//! Runs without the libtest harness so the lines are never captured.
//!
//! The suites are driven through the binary; independent oracles below
//! (Weyl group orders, ρ^∨ from the Cartan matrix, a signed-permutation
//! model of Sp_2n) are computed here without the library's machinery.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, Output};

use centsplit::fundgroup::FundamentalGroup;
use centsplit::{RootDatum, TitsGroup};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_centsplit");

type Check = Result<String, String>;

fn run_bin(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("CENTSPLIT_ORACLE_LIMIT")
        .output()
        .expect("binary runs")
}

fn suite<'a>(report: &'a Value, name: &str) -> Result<&'a Value, String> {
    report["suites"]
        .as_array()
        .and_then(|s| s.iter().find(|x| x["name"] == name))
        .ok_or_else(|| format!("suite {name} missing from report"))
}

fn cases(s: &Value) -> impl Iterator<Item = &Value> {
    s["cases"].as_array().into_iter().flatten()
}

fn require_passed(s: &Value) -> Result<(), String> {
    if s["passed"] != true || s["failures"] != 0 {
        let bad: Vec<String> = cases(s)
            .filter(|c| c["ok"] != true)
            .take(5)
            .map(|c| format!("{} [{}]: {}", c["key"], c["identity"], c["detail"]))
            .collect();
        return Err(format!("{} failures: {}", s["failures"], bad.join("; ")));
    }
    Ok(())
}

fn keys_with(s: &Value, identity: &str) -> BTreeSet<String> {
    cases(s)
        .filter(|c| c["identity"].as_str().is_some_and(|i| i.contains(identity)))
        .filter_map(|c| c["key"].as_str())
        .map(|k| k.split('|').next().unwrap_or(k).to_string())
        .collect()
}

fn expect_keys(found: &BTreeSet<String>, want: &[&str], what: &str) -> Result<(), String> {
    let missing: Vec<&&str> = want.iter().filter(|w| !found.contains(**w)).collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(format!("{what} not checked for {missing:?}"))
    }
}

// ---- independent oracles ----

/// |W| from the classical formulas.
fn weyl_order(t: &str) -> usize {
    let n: usize = t[1..].parse().unwrap();
    let fact = |k: usize| (1..=k).product::<usize>();
    match &t[..1] {
        "A" => fact(n + 1),
        "B" | "C" => (1 << n) * fact(n),
        "D" => (1 << (n - 1)) * fact(n),
        "F" => 1152,
        "G" => 12,
        _ => panic!("no formula for {t}"),
    }
}

/// Coefficients of ρ^∨ on the simple coroots of a simply laced diagram,
/// solving `Σ_i c_i ⟨α_j, α_i^∨⟩ = 1` by exact Gaussian elimination on
/// doubled integers (all answers are half-integers).
fn rho_check_simply_laced(n: usize, edges: &[(usize, usize)]) -> Vec<(i64, i64)> {
    let mut a = vec![vec![0i128; n + 1]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
        row[n] = 1;
    }
    for &(i, j) in edges {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    // fraction-free elimination
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0).unwrap();
        a.swap(col, piv);
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let (f, g) = (a[col][col], a[r][col]);
                for k in 0..=n {
                    a[r][k] = a[r][k] * f - a[col][k] * g;
                }
            }
        }
    }
    (0..n)
        .map(|i| {
            let (num, den) = (a[i][n], a[i][i]);
            let g = gcd(num.abs(), den.abs());
            let s = if den < 0 { -1 } else { 1 };
            ((s * num / g) as i64, (s * den / g) as i64)
        })
        .collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

type Mat = Vec<Vec<i64>>;

fn identity(d: usize) -> Mat {
    (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect()
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let d = a.len();
    (0..d)
        .map(|i| (0..d).map(|j| (0..d).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Sp_2n on `e_0..e_{n-1}, f_0..f_{n-1}`; node 0 is the long root `2ε_0`,
/// node `i > 0` is `ε_i − ε_{i−1}`. Returns `x_α(1) x_{−α}(−1) x_α(1)`.
fn n_alpha(n: usize, i: usize) -> Mat {
    let d = 2 * n;
    let (mut x, mut y) = (vec![vec![0; d]; d], vec![vec![0; d]; d]);
    if i == 0 {
        x[0][n] = 1;
        y[n][0] = 1;
    } else {
        x[i][i - 1] = 1;
        x[n + i - 1][n + i] = -1;
        y[i - 1][i] = 1;
        y[n + i][n + i - 1] = -1;
    }
    let unip = |m: &Mat, u: i64| -> Mat {
        (0..d)
            .map(|r| (0..d).map(|c| (r == c) as i64 + u * m[r][c]).collect())
            .collect()
    };
    mul(&mul(&unip(&x, 1), &unip(&y, -1)), &unip(&x, 1))
}

/// Signed permutation `ε_k ↦ sign[k]·ε_{perm[k]}`.
#[derive(Clone, PartialEq)]
struct SignedPerm {
    perm: Vec<usize>,
    sign: Vec<i64>,
}

impl SignedPerm {
    fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (k, &c) in v.iter().enumerate() {
            out[self.perm[k]] += self.sign[k] * c;
        }
        out
    }

    fn times_simple(&self, i: usize) -> SignedPerm {
        let mut s = self.clone();
        if i == 0 {
            s.sign[0] = -s.sign[0];
        } else {
            s.perm.swap(i, i - 1);
            s.sign.swap(i, i - 1);
        }
        s
    }
}

fn simple_root(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    if i == 0 {
        v[0] = 2;
    } else {
        v[i] = 1;
        v[i - 1] = -1;
    }
    v
}

/// Positive iff the last nonzero coordinate is positive.
fn is_positive(v: &[i64]) -> bool {
    v.iter().rev().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

/// A reduced word for `c = w_0 w_{S∖{0}}`, which sends `ε_k ↦ −ε_{n−1−k}`.
fn type_c_generator_word(n: usize) -> Vec<usize> {
    let mut w = SignedPerm {
        perm: (0..n).map(|k| n - 1 - k).collect(),
        sign: vec![-1; n],
    };
    let id = SignedPerm {
        perm: (0..n).collect(),
        sign: vec![1; n],
    };
    let mut word = Vec::new();
    while w != id {
        let i = (0..n)
            .find(|&i| !is_positive(&w.apply(&simple_root(n, i))))
            .expect("nontrivial element has a descent");
        w = w.times_simple(i);
        word.push(i);
    }
    word.reverse();
    word
}

fn parse_rational(s: &str) -> (i64, i64) {
    match s.split_once('/') {
        Some((a, b)) => (a.parse().unwrap(), b.parse().unwrap()),
        None => (s.parse().unwrap(), 1),
    }
}

// ---- criteria ----

fn criterion_1(report: &Value) -> Check {
    let s = suite(report, "adams-vogan")?;
    require_passed(s)?;
    let exhaustive = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"];
    let mut per_type: BTreeMap<String, usize> = BTreeMap::new();
    for c in cases(s) {
        let key = c["key"].as_str().unwrap_or("");
        let t = key.split(':').next().unwrap_or("").to_string();
        *per_type.entry(t).or_default() += 1;
    }
    for t in exhaustive {
        let got = per_type.get(t).copied().unwrap_or(0);
        if got != weyl_order(t) {
            return Err(format!("{t}: {got} cases, |W| = {}", weyl_order(t)));
        }
    }
    for t in ["D6", "E6", "E7"] {
        let got = per_type.get(t).copied().unwrap_or(0);
        if got < 1000 {
            return Err(format!("{t}: only {got} random words"));
        }
    }
    let distinct: BTreeSet<&str> = cases(s).filter_map(|c| c["key"].as_str()).collect();
    if distinct.len() != s["count"].as_u64().unwrap_or(0) as usize {
        return Err("duplicate case keys".into());
    }
    Ok(format!("{} identities", s["count"]))
}

fn criterion_2(report: &Value) -> Check {
    let s = suite(report, "involution")?;
    require_passed(s)?;
    let types = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"];
    // per datum: every I ⊆ S once, plus σ(w_0)^2
    let mut per_datum: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for c in cases(s) {
        let key = c["key"].as_str().unwrap_or("");
        let datum = key.split('|').next().unwrap_or(key).to_string();
        let e = per_datum.entry(datum).or_default();
        if c["identity"].as_str().is_some_and(|i| i.contains("w_I w_0")) {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    for t in types {
        if !per_datum.contains_key(&format!("{t}:sc")) {
            return Err(format!("{t} not covered"));
        }
    }
    for (datum, &(subsets, w0)) in &per_datum {
        let ty = datum.split(':').next().unwrap_or("");
        let rank: usize = ty.split('x').map(|c| c[1..].parse::<usize>().unwrap_or(0)).sum();
        if subsets != 1 << rank || w0 != 1 {
            return Err(format!("{datum}: {subsets} subsets and {w0} σ(w_0)^2 checks"));
        }
    }
    Ok(format!("{} identities over {} data", s["count"], per_datum.len()))
}

fn criterion_3(report: &Value) -> Check {
    let s = suite(report, "flat")?;
    require_passed(s)?;
    let catalog = [
        "A1", "A2", "A3", "A4", "A5", "A6", "A7", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "D6", "E6", "E7",
        "E8", "F4", "G2",
    ];
    let want: Vec<String> = catalog.iter().map(|t| format!("{t}:sc")).collect();
    let want: Vec<&str> = want.iter().map(|s| s.as_str()).collect();
    expect_keys(&keys_with(s, "(♭) recipe"), &want, "recipe lift")?;
    expect_keys(&keys_with(s, "(♭) search"), &want, "generic lift")?;

    // A_n parity, against ρ^∨ = Σ i(n+1−i)/2 α_i^∨ computed here.
    for n in 1..=7usize {
        let r: RootDatum = format!("A{n}:sc").parse().map_err(|e| format!("{e}"))?;
        let half_integral = (1..=n).any(|i| (i * (n + 1 - i)) % 2 == 1);
        let lib = r.in_y(&r.rho_check()).map_err(|e| format!("{e}"))?;
        if lib == half_integral || lib != (n % 2 == 0) {
            return Err(format!("A{n}: ρ^∨ ∈ Y reported as {lib}"));
        }
    }
    let parity = cases(s)
        .filter(|c| c["identity"].as_str().is_some_and(|i| i.contains("iff n even")))
        .count();
    if parity != 7 {
        return Err(format!("parity checked for {parity} of 7 types"));
    }

    // E7: 1–3, 3–4, 4–5, 5–6, 6–7 and 2–4 (0-based below).
    let rho = rho_check_simply_laced(7, &[(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3)]);
    let halves: Vec<usize> = (0..7).filter(|&i| rho[i].1 == 2).collect();
    if halves != vec![1, 4, 6] || rho.iter().any(|&(_, d)| d > 2) {
        return Err(format!("independent E7 ρ^∨ = {rho:?}"));
    }
    let r: RootDatum = "E7:sc".parse().map_err(|e| format!("{e}"))?;
    let lib: Vec<(i64, i64)> = r.rho_check().to_strings().iter().map(|x| parse_rational(x)).collect();
    if lib != rho {
        return Err(format!("library ρ^∨ {lib:?} vs independent {rho:?}"));
    }
    expect_keys(&keys_with(s, "α_2^∨+α_5^∨+α_7^∨"), &["E7:sc"], "E7 congruence")?;
    Ok(format!("{} types, recipe and search", catalog.len()))
}

fn criterion_4(report: &Value) -> Check {
    let s = suite(report, "braid")?;
    require_passed(s)?;
    require_passed(suite(report, "e6-braid")?)?;
    expect_keys(&keys_with(s, "c^{n+1} = w_0^2"), &["A1:sc", "A2:sc", "A3:sc", "A4:sc", "A5:sc"], "c^{n+1}")?;
    expect_keys(&keys_with(s, "c a c b = c b c a"), &["D4:sc", "D6:sc"], "c a c b")?;
    expect_keys(&keys_with(s, "w_{2..n} = w_I α"), &["D4:sc", "D6:sc"], "w_{2..n} = w_I α")?;
    expect_keys(&keys_with(s, "w_{2..n} = α̃ w_I"), &["D4:sc", "D6:sc"], "w_{2..n} = α̃ w_I")?;
    expect_keys(&keys_with(s, "reverse-invariant"), &["D5:sc", "D7:sc"], "reverse invariance")?;
    expect_keys(&keys_with(s, "c^3 = w_0^2 w_J^{-2}"), &["E6:sc"], "E6 identity")?;
    Ok(format!("{} normal-form equalities", s["count"]))
}

fn criterion_5(report: &Value) -> Check {
    let s = suite(report, "splitting")?;
    require_passed(s)?;
    let certs = cases(s).filter(|c| c["identity"] == "splitting-certificate").count();
    let oracles = cases(s).filter(|c| c["identity"].as_str().is_some_and(|i| i.contains("oracle"))).count();
    if certs == 0 || oracles == 0 {
        return Err("no certificates or oracle comparisons".into());
    }
    // spot values through the CLI
    let out = run_bin(&["centralize", "A1:ad", "--lambda", "1/4", "--certify", "--oracle", "--json"]);
    if !out.status.success() {
        return Err(format!("PGL2 run failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    if v["a_g_s"] != serde_json::json!([2]) || v["oracle"]["w_s"] != 2 {
        return Err(format!("PGL2 at α^∨/4: A_G(s) = {}", v["a_g_s"]));
    }
    let out = run_bin(&["centralize", "A1:sc", "--lambda", "1/4", "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    if v["a_g_s"] != serde_json::json!([]) {
        return Err(format!("SL2 at α^∨/4: A_G(s) = {}", v["a_g_s"]));
    }
    Ok(format!("{certs} certificates, {oracles} oracle agreements"))
}

fn criterion_6(report: &Value) -> Check {
    require_passed(suite(report, "type-c")?)?;
    for n in 2..=4usize {
        let word = type_c_generator_word(n);
        let mut m = identity(2 * n);
        for &i in &word {
            m = mul(&m, &n_alpha(n, i));
        }
        let sq = mul(&m, &m);
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let scalar: Mat = identity(2 * n).into_iter().map(|r| r.into_iter().map(|x| x * sign).collect()).collect();
        if sq != scalar {
            return Err(format!("C{n}: matrix square is not (−1)^n"));
        }
        // abstract Tits group, mapped to eigenvalues on e_k: exp(2πi(c_k − c_{k+1}))
        let r: RootDatum = format!("C{n}:sc").parse().map_err(|e| format!("{e}"))?;
        let fg = FundamentalGroup::new(&r).map_err(|e| format!("{e}"))?;
        let tg = TitsGroup::new(&r);
        let c = fg.generator(0).ok_or("node 1 is not minuscule")?;
        if c.w.reduced_word(&r).len() != word.len() {
            return Err(format!("C{n}: generator length differs from the model"));
        }
        let x = tg.pow(&tg.sigma(&c.w), 2);
        if !x.is_torus() {
            return Err(format!("C{n}: σ(c)^2 is not in the torus"));
        }
        let coeffs: Vec<(i64, i64)> = x.t.to_strings().iter().map(|s| parse_rational(s)).collect();
        for k in 0..n {
            let (a, b) = coeffs[k];
            let (c2, d) = if k + 1 < n { coeffs[k + 1] } else { (0, 1) };
            // 2(a/b − c2/d) mod 2
            let twice = 2 * (a * d - c2 * b);
            let den = b * d;
            if twice % den != 0 {
                return Err(format!("C{n}: σ(c)^2 has non-sign eigenvalue"));
            }
            let tits_sign = if (twice / den).rem_euclid(2) == 0 { 1 } else { -1 };
            if tits_sign != sq[k][k] || tits_sign != sq[n + k][n + k] {
                return Err(format!("C{n}: coordinate {k} sign {tits_sign} vs matrix {}", sq[k][k]));
            }
        }
    }
    Ok("C2, C3, C4 agree with the matrix model".into())
}

fn criterion_7(report: &Value) -> Check {
    let s = suite(report, "f-stable")?;
    require_passed(s)?;
    let notes: Vec<&str> = s["notes"].as_array().into_iter().flatten().filter_map(|n| n.as_str()).collect();
    for q in [3, 5, 7, 9, 27, 2, 4, 8] {
        let prefix = format!("q={q}:");
        let note = notes
            .iter()
            .find(|n| n.starts_with(&prefix))
            .ok_or(format!("no sweep for q = {q}"))?;
        let checked: usize = note
            .split_whitespace()
            .nth(1)
            .and_then(|x| x.parse().ok())
            .unwrap_or(0);
        if checked == 0 {
            return Err(format!("q = {q}: nothing checked"));
        }
    }
    let negative = cases(s)
        .find(|c| c["identity"].as_str().is_some_and(|i| i.contains("ι ∘ F")))
        .ok_or("negative control missing")?;
    if negative["ok"] != true || !negative["key"].as_str().unwrap_or("").contains("A2:sc") {
        return Err(format!("negative control: {negative}"));
    }
    let out = run_bin(&["frobenius", "A1:ad", "--lambda", "1/4", "--q", "4", "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    if v["centralizer_f_stable"] != true || v["sigma_path"] != true {
        return Err(format!("PGL2, q = 4: {v}"));
    }
    Ok(format!("{} cases, ι-equivariance fails for A2 sc at q = 2 as expected", s["count"]))
}

fn main() {
    // Two concurrent runs feed both the determinism check and criteria 1–7.
    let spawn = || {
        Command::new(BIN)
            .args(["verify", "--suite", "all", "--seed", "42", "--json"])
            .env_remove("CENTSPLIT_ORACLE_LIMIT")
            .stdout(std::process::Stdio::piped())
            .stderr(std::process::Stdio::piped())
            .spawn()
            .expect("binary starts")
    };
    let (a, b) = (spawn(), spawn());
    let (a, b) = (a.wait_with_output().unwrap(), b.wait_with_output().unwrap());
    let report: Value = serde_json::from_slice(&a.stdout).unwrap_or(Value::Null);

    let mut results: Vec<(usize, &str, Check)> = vec![
        (1, "Adams–Vogan identity", criterion_1(&report)),
        (2, "involution identities", criterion_2(&report)),
        (3, "condition (♭) lifts", criterion_3(&report)),
        (4, "braid identities", criterion_4(&report)),
        (5, "splitting sweep", criterion_5(&report)),
        (6, "type C matrix model", criterion_6(&report)),
        (7, "F-stable splittings", criterion_7(&report)),
    ];
    let determinism = if !a.status.success() || !b.status.success() {
        Err(format!("exit codes {:?} and {:?}", a.status.code(), b.status.code()))
    } else if a.stdout != b.stdout {
        Err("reports differ".into())
    } else {
        Ok(format!("{} identical bytes", a.stdout.len()))
    };
    results.push((8, "deterministic report", determinism));

    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n} PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} FAIL {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
