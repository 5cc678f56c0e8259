//! Return words, derived sequences and return substitutions.
//!
//! For a non-empty prefix `u` of a uniformly recurrent sequence `X`, the
//! return words on `u` are the factors of `X` between two successive
//! occurrences of `u`. Numbered by first appearance they define the coding
//! `Θ_u : R_u -> A*`, the derived sequence `D_u(X)` with `Θ_u(D_u(X)) = X`,
//! and, when `X = X_τ`, the return substitution `τ_u` with
//! `Θ_u ∘ τ_u = τ ∘ Θ_u`.
//!
//! Return letters are 0-based indices internally and are displayed as
//! `1, 2, ..` through [`Alphabet::numbered`].

use std::collections::HashMap;

use num_rational::Ratio;

use crate::error::{invalid, Error, Result};
use crate::limits::prefix_cap;
use crate::report::Check;
use crate::substitution::{fixed_point_prefix, FixedPointPrefix, Morphism, Substitution};
use crate::words::{detect_period, Alphabet, Letter, Matcher, Word};

/// Cap on the number of distinct return words discovered by a closure.
pub const MAX_RETURN_WORDS: usize = 100_000;

/// Return words on a prefix `u`, numbered by first appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnSystem {
    prefix: Word,
    base: Alphabet,
    words: Vec<Word>,
    lookup: HashMap<Word, Letter>,
    alphabet: Alphabet,
    complete: bool,
}

impl ReturnSystem {
    pub(crate) fn from_words(base: Alphabet, prefix: Word, words: Vec<Word>, complete: bool) -> Self {
        let lookup = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let alphabet = Alphabet::numbered(words.len().max(1));
        ReturnSystem {
            prefix,
            base,
            words,
            lookup,
            alphabet,
            complete,
        }
    }

    /// The prefix `u`.
    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    /// `Θ_u(b)` for `b = 0, 1, ..`.
    pub fn return_words(&self) -> &[Word] {
        &self.words
    }

    pub fn return_word(&self, b: Letter) -> &Word {
        &self.words[b]
    }

    /// `Card(R_u)`.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `R_u = {1, .., Card(R_u)}`.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Alphabet of the underlying sequence.
    pub fn base_alphabet(&self) -> &Alphabet {
        &self.base
    }

    /// False for systems observed on a finite word, where return words may be missing.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn index_of(&self, word: &[Letter]) -> Option<Letter> {
        self.lookup.get(word).copied()
    }

    /// `Θ_u` as a morphism `R_u -> A*`.
    pub fn coding(&self) -> Morphism {
        Morphism::new(self.alphabet.clone(), self.base.clone(), self.words.clone())
            .expect("return words are words over the base alphabet")
    }

    /// `Θ_u(letters)`.
    pub fn encode(&self, letters: &[Letter]) -> Word {
        let mut out = Vec::new();
        for &b in letters {
            out.extend_from_slice(&self.words[b]);
        }
        Word::new(out)
    }

    /// The unique preimage of a concatenation of return words.
    ///
    /// In `w·u` the occurrences of `u` are exactly the starts of the return
    /// words of the factorisation, plus the appended `u`; the word is cut
    /// at those occurrences and each piece looked up.
    pub fn decompose(&self, w: &[Letter]) -> Result<Word> {
        if w.is_empty() {
            return Ok(Word::empty());
        }
        let mut host = Vec::with_capacity(w.len() + self.prefix.len());
        host.extend_from_slice(w);
        host.extend_from_slice(&self.prefix);
        let occ = Matcher::new(&self.prefix).find_all(&host);
        if occ.first() != Some(&0) {
            return Err(Error::Decomposition { position: 0 });
        }
        let mut out = Vec::with_capacity(occ.len());
        for pair in occ.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            match self.lookup.get(&host[a..b]) {
                Some(&l) => out.push(l),
                None => return Err(Error::Decomposition { position: a }),
            }
        }
        let last = *occ.last().unwrap();
        if last != w.len() {
            return Err(Error::Decomposition { position: last });
        }
        Ok(Word::new(out))
    }

    /// The three-part characterisation of a return word `v` on `u`, checked
    /// against a finite prefix of the sequence: `v·u` occurs in `host`, `u`
    /// is a prefix of `v·u`, and `u` occurs exactly twice in `v·u`.
    pub fn characterises(&self, v: &[Letter], host: &[Letter]) -> bool {
        let vu = Word::from(v).concat(&self.prefix);
        let m = Matcher::new(&self.prefix);
        let in_language = !Matcher::new(&vu).find_from(host, 0, 1).is_empty();
        in_language && vu.starts_with(&self.prefix) && m.find_all(&vu).len() == 2
    }
}

/// Return words observed between successive occurrences of `u` in a finite
/// word, in order of first appearance. The result is observational: return
/// words not visible in `host` are missing.
pub fn return_words_of_prefix(host: &[Letter], u: &[Letter], base: &Alphabet) -> Result<ReturnSystem> {
    if u.is_empty() {
        return invalid("return words need a non-empty prefix");
    }
    if !host.starts_with(u) {
        return invalid("u is not a prefix of the host word");
    }
    base.check_word(host)?;
    let occ = Matcher::new(u).find_all(host);
    let mut words: Vec<Word> = Vec::new();
    let mut seen: HashMap<&[Letter], ()> = HashMap::new();
    for pair in occ.windows(2) {
        let seg = &host[pair[0]..pair[1]];
        if seen.insert(seg, ()).is_none() {
            words.push(Word::from(seg));
        }
    }
    Ok(ReturnSystem::from_words(base.clone(), Word::from(u), words, false))
}

/// Prefix `X[0..p]` up to the second occurrence `p` of `u` in the fixed point.
fn first_return_word(gen: &mut FixedPointPrefix, u: &[Letter]) -> Result<Word> {
    gen.ensure(u.len())?;
    if &gen.as_slice()[..u.len()] != u {
        return invalid("u is not a prefix of the fixed point");
    }
    let m = Matcher::new(u);
    let mut len = (2 * u.len()).max(64);
    loop {
        let cap = prefix_cap();
        gen.ensure(len.min(cap)).map_err(|_| Error::ResourceLimit {
            what: "prefix containing a second occurrence of u".into(),
            budget: cap,
        })?;
        if let Some(&p) = m.find_from(&gen.as_slice()[..len.min(cap)], 1, 1).first() {
            return Ok(Word::from(&gen.as_slice()[..p]));
        }
        if len >= cap {
            return Err(Error::ResourceLimit {
                what: "prefix containing a second occurrence of u".into(),
                budget: cap,
            });
        }
        len *= 2;
    }
}

/// The complete return system on `u` and the return substitution `τ_u`.
///
/// Seeded with the first return word, the set is closed under "apply `τ`
/// and cut at the occurrences of `u`": for a return word `w`, `τ(w)·u` is a
/// factor of `X_τ` starting and ending with `u`, so its pieces are return
/// words. Every return word occurs in some `τ^n(Θ_u(1))`, hence the closure
/// is complete. Letters are then renumbered by first appearance in the
/// fixed point of the provisional substitution, which is `D_u(X_τ)`.
pub fn return_substitution(tau: &Substitution, u: &[Letter]) -> Result<(ReturnSystem, Substitution)> {
    if u.is_empty() {
        return invalid("return substitution needs a non-empty prefix");
    }
    tau.require_primitive()?;
    let mut gen = FixedPointPrefix::new(tau.clone())?;
    let first = first_return_word(&mut gen, u)?;

    let matcher = Matcher::new(u);
    let mut words = vec![first.clone()];
    let mut lookup: HashMap<Word, Letter> = HashMap::from([(first, 0)]);
    let mut images: Vec<Vec<Letter>> = Vec::new();
    let mut i = 0;
    while i < words.len() {
        let mut host = tau.apply(&words[i]).into_vec();
        let img_len = host.len();
        if img_len > prefix_cap() {
            return Err(Error::ResourceLimit {
                what: "image of a return word".into(),
                budget: prefix_cap(),
            });
        }
        host.extend_from_slice(u);
        let occ = matcher.find_all(&host);
        if occ.first() != Some(&0) || occ.last() != Some(&img_len) {
            return Err(Error::InternalInconsistency(
                "image of a return word is not a concatenation of return words".into(),
            ));
        }
        let mut img = Vec::with_capacity(occ.len() - 1);
        for pair in occ.windows(2) {
            let seg = Word::from(&host[pair[0]..pair[1]]);
            let next = words.len();
            let id = *lookup.entry(seg.clone()).or_insert_with(|| {
                words.push(seg);
                next
            });
            img.push(id);
        }
        images.push(img);
        if words.len() > MAX_RETURN_WORDS {
            return Err(Error::ResourceLimit {
                what: "number of return words".into(),
                budget: MAX_RETURN_WORDS,
            });
        }
        i += 1;
    }

    let k = words.len();
    let provisional = Substitution::from_images(Alphabet::numbered(k), images, 0)?;
    let (canonical, order) = provisional.canonical_form()?;
    if order.len() != k {
        return Err(Error::InternalInconsistency("return letter renumbering".into()));
    }
    let words: Vec<Word> = order.iter().map(|&p| words[p].clone()).collect();
    let system = ReturnSystem::from_words(tau.alphabet().clone(), Word::from(u), words, true);
    let tau_u = canonical.with_alphabet(Alphabet::numbered(k))?;
    Ok((system, tau_u))
}

/// First letters of the derived sequence `D_u(X_τ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedPrefix {
    pub system: ReturnSystem,
    pub letters: Word,
}

/// Decomposes a generated prefix of `X_τ` into return words on `u`.
fn derive_from_fixed_point(tau: &Substitution, system: &ReturnSystem, n: usize) -> Result<Word> {
    if n == 0 {
        return Ok(Word::empty());
    }
    let u = system.prefix();
    let m = Matcher::new(u);
    let mut gen = FixedPointPrefix::new(tau.clone())?;
    let mut len = (4 * n).max(64);
    loop {
        let cap = prefix_cap();
        let l = len.min(cap);
        gen.ensure(l)?;
        let occ = m.find_from(&gen.as_slice()[..l], 0, n + 1);
        if occ.len() == n + 1 {
            let x = gen.as_slice();
            return occ
                .windows(2)
                .map(|p| {
                    system.index_of(&x[p[0]..p[1]]).ok_or_else(|| {
                        Error::InternalInconsistency("return word missing from the closure".into())
                    })
                })
                .collect::<Result<Vec<_>>>()
                .map(Word::new);
        }
        if l >= cap {
            return Err(Error::ResourceLimit {
                what: format!("prefix with {} occurrences of u", n + 1),
                budget: cap,
            });
        }
        len *= 2;
    }
}

/// `D_u(X_τ)[0..n]`, cross-checked against the fixed point of `τ_u`.
pub fn derived_prefix(tau: &Substitution, u: &[Letter], n: usize) -> Result<DerivedPrefix> {
    let (system, tau_u) = return_substitution(tau, u)?;
    let letters = derive_from_fixed_point(tau, &system, n)?;
    if n > 0 && fixed_point_prefix(&tau_u, n)? != letters {
        return Err(Error::InternalInconsistency(
            "derived sequence differs from the fixed point of the return substitution".into(),
        ));
    }
    Ok(DerivedPrefix { system, letters })
}

/// Report for the nested-derivation identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedDerivationReport {
    /// `w = Θ_u(v)·u`, when `v` was admissible.
    pub w: Option<Word>,
    pub checks: Vec<Check>,
}

impl NestedDerivationReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && crate::report::all_passed(&self.checks)
    }
}

/// For a non-empty prefix `v` of `D_u(X)`, with `w = Θ_u(v)·u`, checks that
/// `w` is a prefix of `X`, that `Θ_{X,u} ∘ Θ_{D_u(X),v} = Θ_{X,w}`, and that
/// `D_v(D_u(X)) = D_w(X)` on the first `check_len` letters.
pub fn nested_derivation(
    tau: &Substitution,
    u: &[Letter],
    v: &[Letter],
    check_len: usize,
) -> Result<NestedDerivationReport> {
    let mut checks = Vec::new();
    if v.is_empty() {
        checks.push(Check::new("v non-empty", false, "v is the empty word"));
        return Ok(NestedDerivationReport { w: None, checks });
    }
    let (sys_u, tau_u) = return_substitution(tau, u)?;
    let derived = fixed_point_prefix(&tau_u, v.len())?;
    if derived.as_slice() != v {
        checks.push(Check::new("v prefix of D_u(X)", false, format!("D_u(X) begins {derived}")));
        return Ok(NestedDerivationReport { w: None, checks });
    }
    checks.push(Check::new("v prefix of D_u(X)", true, ""));

    let w = sys_u.encode(v).concat(u);
    let x = fixed_point_prefix(tau, w.len())?;
    let w_is_prefix = x == w;
    checks.push(Check::new("w prefix of X", w_is_prefix, format!("|w| = {}", w.len())));
    if !w_is_prefix {
        return Ok(NestedDerivationReport { w: Some(w), checks });
    }

    let (sys_v, _) = return_substitution(&tau_u, v)?;
    let (sys_w, _) = return_substitution(tau, &w)?;
    let composed = sys_u.coding().compose(&sys_v.coding())?;
    checks.push(Check::morphism_identity(
        "Θ_{X,u} ∘ Θ_{D_u(X),v} = Θ_{X,w}",
        &composed,
        &sys_w.coding(),
    ));

    let lhs = derive_from_fixed_point(&tau_u, &sys_v, check_len)?;
    let rhs = derive_from_fixed_point(tau, &sys_w, check_len)?;
    checks.push(Check::new(
        "D_v(D_u(X)) = D_w(X)",
        lhs == rhs,
        format!("compared {check_len} letters"),
    ));
    Ok(NestedDerivationReport { w: Some(w), checks })
}

/// Prefix length and period bound of the non-periodicity check.
pub const NON_PERIODIC_CHECK: (usize, usize) = (8192, 256);

/// Bounded non-periodicity check: no eventual period `<= 256` on the first
/// 8192 letters. Periods that long relative to the window are ruled out
/// because finite prefixes of aperiodic words (Fibonacci, for one) end in
/// repetitions of exponent above 3.
pub(crate) fn require_non_periodic(tau: &Substitution) -> Result<()> {
    let (n, max_period) = NON_PERIODIC_CHECK;
    let x = fixed_point_prefix(tau, n)?;
    match detect_period(&x, max_period) {
        None => Ok(()),
        Some(p) => invalid(format!(
            "fixed point looks eventually periodic on its first {n} letters (preperiod {}, period {})",
            p.preperiod, p.period
        )),
    }
}

/// One level `u^(k)` of a derivation tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    /// `u^(k)`, a prefix of `X_τ`.
    pub prefix: Word,
    /// `Θ_{X, u^(k)}`.
    pub coding: Morphism,
    /// `τ_{u^(k)}`.
    pub substitution: Substitution,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTower {
    pub levels: Vec<TowerLevel>,
    /// First `(p, q)`, 1-based, `p < q`, with `τ_{u^(p)} = τ_{u^(q)}`.
    pub repetition: Option<(usize, usize)>,
}

/// `u^(1) = X[0]`, `u^(n+1) = Θ_{X,u^(n)}(1)·u^(n)` with the return
/// substitutions `τ_{u^(n)}`.
///
/// Each level is obtained by deriving the previous return substitution on
/// its first letter; the codings compose along the way.
pub fn derivation_tower(tau: &Substitution, depth: usize) -> Result<DerivationTower> {
    if depth == 0 {
        return invalid("tower depth must be at least 1");
    }
    tau.require_primitive()?;
    require_non_periodic(tau)?;
    let x0 = fixed_point_prefix(tau, 1)?;
    let (sys, sub) = return_substitution(tau, &x0)?;
    let mut levels = vec![TowerLevel {
        prefix: x0,
        coding: sys.coding(),
        substitution: sub,
    }];
    let mut repetition = None;
    let mut seen: HashMap<Substitution, usize> = HashMap::new();
    seen.insert(levels[0].substitution.clone(), 1);
    for q in 2..=depth {
        let prev = &levels[q - 2];
        let (sys1, sub) = return_substitution(&prev.substitution, &[0])?;
        let coding = prev.coding.compose(&sys1.coding())?;
        let prefix = prev.coding.image(0).concat(&prev.prefix);
        if repetition.is_none() {
            if let Some(&p) = seen.get(&sub) {
                repetition = Some((p, q));
            }
        }
        seen.entry(sub.clone()).or_insert(q);
        levels.push(TowerLevel {
            prefix,
            coding,
            substitution: sub,
        });
    }
    Ok(DerivationTower { levels, repetition })
}

/// Empirical bounds `H1·|u| <= |v| <= H2·|u|` and `Card(R_u) <= H3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnConstants {
    pub h1: Ratio<u64>,
    pub h2: Ratio<u64>,
    pub h3: usize,
    pub sampled: Vec<usize>,
}

/// Minimum and maximum of `|v|/|u|` and maximum `Card(R_u)` over the
/// prefixes of the given lengths.
pub fn estimate_constants(tau: &Substitution, prefix_lengths: &[usize]) -> Result<ReturnConstants> {
    if prefix_lengths.is_empty() || prefix_lengths.contains(&0) {
        return invalid("prefix lengths must be non-empty and positive");
    }
    let max_len = *prefix_lengths.iter().max().unwrap();
    let x = fixed_point_prefix(tau, max_len)?;
    let mut h1: Option<Ratio<u64>> = None;
    let mut h2: Option<Ratio<u64>> = None;
    let mut h3 = 0;
    for &n in prefix_lengths {
        let (sys, _) = return_substitution(tau, &x[..n])?;
        h3 = h3.max(sys.len());
        for v in sys.return_words() {
            let r = Ratio::new(v.len() as u64, n as u64);
            h1 = Some(h1.map_or(r, |h| h.min(r)));
            h2 = Some(h2.map_or(r, |h| h.max(r)));
        }
    }
    Ok(ReturnConstants {
        h1: h1.expect("at least one return word"),
        h2: h2.expect("at least one return word"),
        h3,
        sampled: prefix_lengths.to_vec(),
    })
}

/// Shortest return word on the prefix of length `n`.
pub fn min_return_length(tau: &Substitution, n: usize) -> Result<usize> {
    if n == 0 {
        return invalid("prefix length must be positive");
    }
    let x = fixed_point_prefix(tau, n)?;
    let (sys, _) = return_substitution(tau, &x)?;
    Ok(sys.return_words().iter().map(|w| w.len()).min().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn ab(s: &str) -> Word {
        s.bytes().map(|b| (b - b'a') as Letter).collect()
    }

    fn d(s: &str) -> Word {
        s.bytes().map(|b| (b - b'0') as Letter).collect()
    }

    #[test]
    fn observed_return_words() {
        let base = Alphabet::new(["a", "b", "c"]).unwrap();
        let host = ab("ababcababbbabababcababbbababaccababacc");
        let sys = return_words_of_prefix(&host, &ab("abab"), &base).unwrap();
        let got: Vec<String> = sys.return_words().iter().map(|w| base.render(w)).collect();
        assert_eq!(got, ["ababc", "ababbb", "ab", "ababacc"]);
        assert!(!sys.is_complete());

        let u = ab("abc");
        let sys = return_words_of_prefix(&u.concat(&u), &u, &base).unwrap();
        assert_eq!(sys.return_words(), std::slice::from_ref(&u));

        assert!(return_words_of_prefix(&host, &ab("b"), &base).is_err());
    }

    #[test]
    fn fibonacci_on_zero() {
        let fib = corpus::fibonacci();
        let x = fixed_point_prefix(&fib, 100).unwrap();
        let obs = return_words_of_prefix(&x, &d("0"), fib.alphabet()).unwrap();
        assert_eq!(obs.return_words(), &[d("01"), d("0")]);

        let (sys, sub) = return_substitution(&fib, &d("0")).unwrap();
        assert_eq!(sys.return_words(), &[d("01"), d("0")]);
        assert_eq!(sub.images(), &[d("01"), d("0")]);
        assert_eq!(sub.alphabet().symbols(), &["1", "2"]);
        assert_eq!(sys.decompose(&d("010")).unwrap(), d("01"));
        assert_eq!(sys.decompose(&[]).unwrap(), Word::empty());
        for b in 0..sys.len() {
            assert_eq!(sys.decompose(sys.return_word(b)).unwrap(), Word::letter(b));
        }
        assert!(matches!(sys.decompose(&d("11")), Err(Error::Decomposition { position: 0 })));
        assert!(matches!(sys.decompose(&d("011")), Err(Error::Decomposition { .. })));
    }

    #[test]
    fn fibonacci_is_its_own_return_substitution_on_01() {
        let fib = corpus::fibonacci();
        let (sys, sub) = return_substitution(&fib, &d("01")).unwrap();
        assert_eq!(sys.return_words(), &[d("010"), d("01")]);
        assert_eq!(sub.images(), fib.images());
    }

    #[test]
    fn morse_on_011_has_four_return_words() {
        let (sys, sub) = return_substitution(&corpus::morse(), &d("011")).unwrap();
        assert_eq!(sys.len(), 4);
        assert_eq!(sub.size(), 4);
    }

    #[test]
    fn prefix_and_primitivity_preconditions() {
        let fib = corpus::fibonacci();
        assert!(matches!(
            return_substitution(&fib, &d("1")),
            Err(Error::InvalidArgument(_))
        ));
        assert!(return_substitution(&fib, &[]).is_err());
        let a = Alphabet::new(["a", "b"]).unwrap();
        let non_primitive = Substitution::from_images(a, vec![vec![0, 0, 1], vec![1]], 0).unwrap();
        assert!(matches!(
            return_substitution(&non_primitive, &[0]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn derived_prefixes() {
        let fib = corpus::fibonacci();
        let dp = derived_prefix(&fib, &d("0"), 200).unwrap();
        // D_0(X) is X itself with 0 -> 1, 1 -> 2
        assert_eq!(dp.letters, fixed_point_prefix(&fib, 200).unwrap());
        assert_eq!(derived_prefix(&corpus::tribonacci(), &ab("ab"), 1).unwrap().letters, Word::letter(0));
        let morse = derived_prefix(&corpus::morse(), &d("011"), 20).unwrap();
        let (_, sub) = return_substitution(&corpus::morse(), &d("011")).unwrap();
        assert_eq!(morse.letters, fixed_point_prefix(&sub, 20).unwrap());
    }

    #[test]
    fn nested_derivation_identities() {
        let fib = corpus::fibonacci();
        let r = nested_derivation(&fib, &d("0"), &[0], 10_000).unwrap();
        assert_eq!(r.w, Some(d("010")));
        assert!(r.passed(), "{:?}", r.checks);

        let empty = nested_derivation(&fib, &d("0"), &[], 100).unwrap();
        assert!(!empty.passed());

        let morse = corpus::morse();
        let r = nested_derivation(&morse, &d("0"), &[0, 1], 5_000).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn towers() {
        let t = derivation_tower(&corpus::fibonacci(), 4).unwrap();
        assert_eq!(t.levels[0].prefix, d("0"));
        assert_eq!(t.levels[1].prefix, d("010"));
        assert!(t.repetition.is_some());
        let (p, _) = t.repetition.unwrap();
        assert_eq!(t.levels[p - 1].substitution.images(), corpus::fibonacci().images());

        let one = derivation_tower(&corpus::morse(), 1).unwrap();
        assert_eq!(one.levels.len(), 1);
        assert_eq!(one.repetition, None);
    }

    #[test]
    fn constants_and_minimal_lengths() {
        let fib = corpus::fibonacci();
        let lengths: Vec<usize> = (1..=50).collect();
        let c = estimate_constants(&fib, &lengths).unwrap();
        assert!(c.h3 <= 3);
        assert!(c.h1 > Ratio::from_integer(0));
        assert_eq!(min_return_length(&fib, 1).unwrap(), 1);
        let single = estimate_constants(&fib, &[1]).unwrap();
        assert_eq!(single.h1, Ratio::from_integer(1));
        assert_eq!(single.h2, Ratio::from_integer(2));
    }
}
