//! Substitutive presentation of a periodic sequence `m^ω`.
//!
//! Given a primitive `τ` on `A` with dominant eigenvalue `α`, builds a
//! primitive `ζ` on `D = A × {0, .., |m|-1}` and a letter-to-letter `φ`
//! with `φ(X_ζ) = m^ω`, so that `m^ω` is `α^k`-substitutive.

use crate::error::{invalid, Error, Result};
use crate::report::{all_passed, Check};
use crate::spectrum::{certify_equal_dominant, char_poly};
use crate::substitution::{fixed_point_prefix, Morphism, Substitution};
use crate::words::{Alphabet, Letter, Word};

/// Largest exponent tried for `k`.
pub const MAX_K: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicPresentation {
    pub m: Word,
    pub m_alphabet: Alphabet,
    pub k: u32,
    pub tau: Substitution,
    pub tau_k: Substitution,
    /// `ζ` on `D`, `(b, i)` stored as `b·|m| + i`.
    pub zeta: Substitution,
    /// `ψ(b) = (b,0)(b,1)..(b,|m|-1)`.
    pub psi: Morphism,
    /// `φ((b,i)) = m_i`.
    pub phi: Morphism,
}

impl PeriodicPresentation {
    /// Index of `(b, i)` in `D`.
    pub fn pair(&self, b: Letter, i: usize) -> Letter {
        b * self.m.len() + i
    }
}

/// Builds `ζ`, `ψ`, `φ` for the least `k` with `M_τ^k > 0` and every column
/// sum of `M_τ^k` above `|m|`, then checks the construction.
pub fn build_periodic_presentation(
    m: &[Letter],
    m_alphabet: &Alphabet,
    tau: &Substitution,
) -> Result<PeriodicPresentation> {
    if m.is_empty() {
        return invalid("the period word must be non-empty");
    }
    m_alphabet.check_word(m)?;
    tau.require_primitive()?;
    let len = m.len();
    let mat = tau.incidence_matrix();
    let mut k = None;
    let mut power = mat.clone();
    for e in 1..=MAX_K {
        if e > 1 {
            power = &power * &mat;
        }
        if power.is_positive() && power.column_sums().iter().all(|s| *s > len.into()) {
            k = Some(e);
            break;
        }
    }
    let k = k.ok_or(Error::ResourceLimit {
        what: "exponent k".into(),
        budget: MAX_K as usize,
    })?;
    let tau_k = tau.power(k)?;

    let a = tau.alphabet();
    let names: Vec<String> = (0..a.len())
        .flat_map(|b| (0..len).map(move |i| (b, i)))
        .map(|(b, i)| format!("({},{})", a.symbol(b), i))
        .collect();
    let d = Alphabet::new(names)?;
    let psi_images: Vec<Word> = (0..a.len()).map(|b| (b * len..(b + 1) * len).collect()).collect();
    let psi = Morphism::new(a.clone(), d.clone(), psi_images)?;
    let mut zeta_images = Vec::with_capacity(a.len() * len);
    for b in 0..a.len() {
        let img = tau_k.image(b);
        for i in 0..len {
            let piece = if i + 1 < len { &img[i..=i] } else { &img[i..] };
            zeta_images.push(psi.apply(piece).into_vec());
        }
    }
    let zeta = Substitution::from_images(d.clone(), zeta_images, tau.start() * len)?;
    let phi_images: Vec<Word> = (0..a.len() * len).map(|x| Word::letter(m[x % len])).collect();
    let phi = Morphism::new(d, m_alphabet.clone(), phi_images)?;

    let p = PeriodicPresentation {
        m: Word::from(m),
        m_alphabet: m_alphabet.clone(),
        k,
        tau: tau.clone(),
        tau_k,
        zeta,
        psi,
        phi,
    };
    let report = verify_presentation(&p, 0)?;
    if !report.passed() {
        let failed: Vec<String> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
        return Err(Error::InternalInconsistency(format!(
            "presentation checks failed: {}",
            failed.join(", ")
        )));
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    pub check_len: usize,
    pub checks: Vec<Check>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

/// Re-checks `ζψ = ψτ^k`, `φψ(b) = m`, primitivity of `ζ`, the prefix
/// `φ(X_ζ)[0..check_len] = m^ω[0..check_len]`, that the characteristic
/// polynomial of `M_τ^k` divides that of `M_ζ`, and that both have the
/// same dominant eigenvalue.
pub fn verify_presentation(p: &PeriodicPresentation, check_len: usize) -> Result<PresentationReport> {
    let mut checks = Vec::new();
    let lhs = p.zeta.morphism().compose(&p.psi)?;
    let rhs = p.psi.compose(p.tau_k.morphism())?;
    checks.push(Check::morphism_identity("ζψ = ψτ^k", &lhs, &rhs));
    let phipsi = p.phi.compose(&p.psi)?;
    let bad = phipsi.images().iter().position(|w| *w != p.m);
    checks.push(Check::new(
        "φψ(b) = m",
        bad.is_none(),
        bad.map(|b| format!("fails on {}", p.tau.alphabet().symbol(b))).unwrap_or_default(),
    ));
    let prim = p.zeta.primitivity();
    checks.push(Check::new(
        "ζ primitive",
        prim.primitive,
        prim.exponent.map(|e| format!("M_ζ^{e} > 0")).unwrap_or_default(),
    ));
    if check_len > 0 {
        let x = fixed_point_prefix(&p.zeta, check_len)?;
        let y = p.phi.apply(&x);
        let first_bad = (0..check_len).find(|&i| y[i] != p.m[i % p.m.len()]);
        checks.push(Check::new(
            "φ(X_ζ) = m^ω",
            first_bad.is_none(),
            match first_bad {
                Some(i) => format!("differs at index {i}"),
                None => format!("first {check_len} letters"),
            },
        ));
    }
    let mz = p.zeta.incidence_matrix();
    let mk = p.tau.incidence_matrix().pow(p.k)?;
    let (pz, pk) = (char_poly(&mz)?, char_poly(&mk)?);
    let divides = pz.div_rem(&pk).is_some_and(|(_, r)| r.is_zero());
    checks.push(Check::new(
        "char poly of M_τ^k divides char poly of M_ζ",
        divides,
        format!("{pk} | {pz}"),
    ));
    let dominant = certify_equal_dominant(&mz, &mk)?;
    checks.push(Check::new(
        "dominant eigenvalue of ζ = α^k",
        dominant.is_some(),
        dominant
            .map(|c| format!("common root in {}", c.intersection))
            .unwrap_or_else(|| "not certified".into()),
    ));
    Ok(PresentationReport { check_len, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn fibonacci_period_ab() {
        let fib = corpus::fibonacci();
        let p = build_periodic_presentation(&[0, 1], &ab(), &fib).unwrap();
        // M^2 = [[2,1],[1,1]] has column sums 3 and 2; M^3 has 5 and 3
        assert_eq!(p.k, 3);
        let r = verify_presentation(&p, 100).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        let x = fixed_point_prefix(&p.zeta, 100).unwrap();
        assert_eq!(ab().render(&p.phi.apply(&x)), "ab".repeat(50));
    }

    #[test]
    fn unary_period() {
        let a = Alphabet::new(["a"]).unwrap();
        let p = build_periodic_presentation(&[0], &a, &corpus::fibonacci()).unwrap();
        let r = verify_presentation(&p, 50).unwrap();
        assert!(r.passed());
        let x = fixed_point_prefix(&p.zeta, 50).unwrap();
        assert!(p.phi.apply(&x).iter().all(|&l| l == 0));
    }

    #[test]
    fn tampering_is_reported() {
        let mut p = build_periodic_presentation(&[0, 1, 0], &ab(), &corpus::fibonacci()).unwrap();
        let mut images: Vec<Vec<Letter>> = p.zeta.images().iter().map(|w| w.to_vec()).collect();
        // ζ((a,0)) = (a,0)(a,1)(a,2); overwrite its last letter
        let last = images[0].len() - 1;
        images[0][last] = images[0][last - 1];
        p.zeta = Substitution::from_images(p.zeta.alphabet().clone(), images, 0).unwrap();
        let r = verify_presentation(&p, 0).unwrap();
        assert!(!r.checks[0].passed);
        assert_eq!(r.checks[0].counterexample, Some(0));
        assert!(!r.checks.iter().any(|c| c.name == "φ(X_ζ) = m^ω"));
    }
}
