//! A Frobenius root `F` acting on `W` trivially and on torus classes by
//! `t ↦ q·t`.

use std::collections::BTreeSet;

use crate::centralizer::{analyze, phi_of_s, SemisimpleClass};
use crate::error::{Error, Result};
use crate::fundgroup::FundamentalGroup;
use crate::lattice::RationalVector;
use crate::lifting::{LiftMethod, Lifter, SplittingCertificate};
use crate::rootdata::RootDatum;
use crate::tits::{TitsElement, TitsGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobeniusAction {
    q: u64,
}

impl FrobeniusAction {
    /// Any `q ≥ 2`; only the arithmetic `t ↦ qt` is modelled.
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::Unsupported(format!("q = {q} must be at least 2")));
        }
        Ok(FrobeniusAction { q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_odd(&self) -> bool {
        self.q % 2 == 1
    }

    pub fn act(&self, t: &RationalVector) -> RationalVector {
        t.scale_int(self.q as i64)
    }
}

/// `F(x) = x`, i.e. `(q − 1)·t ∈ Y`.
pub fn is_f_stable(tg: &TitsGroup, x: &TitsElement, f: FrobeniusAction) -> bool {
    let moved = x.t.scale_int(f.q as i64 - 1);
    tg.is_trivial_class(&moved)
}

/// Whether `C(s)` is `F`-stable: `Φ(qλ) = Φ(λ)` and `|A_W(qλ)| = |A_W(λ)|`.
pub fn centralizer_f_stable(s: &SemisimpleClass, f: FrobeniusAction, fg: &FundamentalGroup) -> Result<bool> {
    let fs = SemisimpleClass::new(s.datum(), f.act(s.lambda()))?;
    let a: BTreeSet<usize> = phi_of_s(s).into_iter().collect();
    let b: BTreeSet<usize> = phi_of_s(&fs).into_iter().collect();
    if a != b {
        return Ok(false);
    }
    Ok(analyze(s, fg)?.a_w_s.len() == analyze(&fs, fg)?.a_w_s.len())
}

/// A splitting certificate whose `A_0` is fixed by `F`.
#[derive(Clone, Debug)]
pub struct FStableSplitting {
    pub q: u64,
    pub certificate: SplittingCertificate,
    /// Whether the `p = 2` section path was used (even `q`).
    pub sigma_path: bool,
}

/// The datum the lift is built on: for even `q` the characteristic is 2.
pub fn frobenius_datum(r: &RootDatum, f: FrobeniusAction) -> Result<RootDatum> {
    if f.is_odd() {
        Ok(r.clone())
    } else {
        r.with_p(2)
    }
}

/// Certifies that `A_0` consists of `F`-fixed elements mapping onto
/// `A_G(s)^F = A_G(s)`. `lifter` must be built on [`frobenius_datum`].
pub fn f_stable_splitting(lifter: &Lifter, s: &SemisimpleClass, f: FrobeniusAction) -> Result<FStableSplitting> {
    let r = lifter.datum();
    let s = if s.datum().p() == r.p() {
        s.clone()
    } else {
        SemisimpleClass::new(r, s.lambda().clone())?
    };
    if !centralizer_f_stable(&s, f, lifter.fundamental_group())? {
        return Err(Error::verification(
            "centralizer-F-stable",
            format!("C(s) is not F-stable for q = {}", f.q),
        ));
    }
    let certificate = lifter.certificate(&s)?;
    let tg = lifter.tits();
    for (x, y) in certificate.a_zero.iter().zip(&certificate.normalized_a_zero) {
        if !is_f_stable(tg, x, f) || !is_f_stable(tg, y, f) {
            return Err(Error::verification(
                "F-stable",
                format!("A_0 element with torus part {} is moved by F (q = {})", x.t, f.q),
            ));
        }
    }
    // F acts trivially on A_G(s), so the sequence splits iff |A_0| = |A_G(s)|.
    if certificate.a_zero.len() != certificate.data.a_w_s.len() {
        return Err(Error::verification("sharp-splits", "|A_0| differs from |A_G(s)^F|"));
    }
    let mut certificate = certificate;
    certificate.checks.push("F-stable".into());
    certificate.checks.push("sharp-splits".into());
    Ok(FStableSplitting {
        q: f.q,
        certificate,
        sigma_path: !f.is_odd(),
    })
}

/// One-shot version building the lift for the class's datum.
pub fn f_stable_splitting_for(s: &SemisimpleClass, f: FrobeniusAction) -> Result<FStableSplitting> {
    let r = frobenius_datum(s.datum(), f)?;
    let lifter = Lifter::new(&r, LiftMethod::Recipe)?;
    f_stable_splitting(&lifter, s, f)
}

/// Whether `ι ∘ F = F ∘ ι` on `𝒜_{p'}`, with `F` trivial on `𝒜`.
pub fn iota_equivariant(fg: &FundamentalGroup, f: FrobeniusAction) -> Result<bool> {
    let r = fg.datum();
    let z = crate::lattice::Lattice::standard(r.dim());
    for a in fg.p_prime_elements() {
        let i = fg.iota(a)?;
        let fi = f.act(&i);
        if !z.contains(&(&fi - &i))? {
            return Ok(false);
        }
    }
    Ok(true)
}
