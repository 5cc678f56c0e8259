//! Interpretations of factors, synchronization delays and injectivity of a
//! substitution on concatenations of return words.
//!
//! All searches run on a generated prefix of the fixed point and report
//! the bounds they used; a pass means "no counterexample in the sample".

use std::collections::{HashMap, HashSet};

use crate::error::{invalid, Result};
use crate::limits::prefix_cap;
use crate::relations::GammaSearch;
use crate::report::Check;
use crate::returns::return_substitution;
use crate::substitution::{fixed_point_prefix, Substitution};
use crate::words::{Letter, Word};

/// `x = head · τ(core) · tail`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation {
    /// A proper suffix of some `τ(b)`, possibly empty.
    pub head: Word,
    /// A factor of the fixed point.
    pub core: Word,
    /// A proper prefix of some `τ(c)`, possibly empty.
    pub tail: Word,
}

impl Interpretation {
    /// Positions in `x` where the image of `core[i]` starts, followed by the
    /// end of `τ(core)`.
    pub fn cuts(&self, tau: &Substitution) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.core.len() + 1);
        let mut pos = self.head.len();
        out.push(pos);
        for &b in self.core.iter() {
            pos += tau.image(b).len();
            out.push(pos);
        }
        out
    }

    pub fn rebuild(&self, tau: &Substitution) -> Word {
        self.head.concat(&tau.apply(&self.core)).concat(&self.tail)
    }
}

/// Factors of `host` up to a length, as borrowed slices.
struct FactorIndex<'a> {
    set: HashSet<&'a [Letter]>,
    max_len: usize,
}

impl<'a> FactorIndex<'a> {
    fn new(host: &'a [Letter], max_len: usize) -> Self {
        let mut set = HashSet::new();
        for n in 0..=max_len.min(host.len()) {
            for w in host.windows(n.max(1)) {
                set.insert(if n == 0 { &w[..0] } else { w });
            }
        }
        FactorIndex { set, max_len }
    }

    fn contains(&self, w: &[Letter]) -> bool {
        debug_assert!(w.len() <= self.max_len);
        self.set.contains(w)
    }
}

fn is_proper_suffix_of_image(tau: &Substitution, s: &[Letter]) -> bool {
    s.is_empty() || tau.images().iter().any(|img| img.len() > s.len() && img.ends_with(s))
}

fn is_proper_prefix_of_image(tau: &Substitution, s: &[Letter]) -> bool {
    s.is_empty() || tau.images().iter().any(|img| img.len() > s.len() && img.starts_with(s))
}

fn interpretations_with(tau: &Substitution, x: &[Letter], factors: &FactorIndex) -> Vec<Interpretation> {
    fn walk(
        tau: &Substitution,
        x: &[Letter],
        factors: &FactorIndex,
        head: usize,
        pos: usize,
        core: &mut Vec<Letter>,
        out: &mut Vec<Interpretation>,
    ) {
        if is_proper_prefix_of_image(tau, &x[pos..]) {
            out.push(Interpretation {
                head: Word::from(&x[..head]),
                core: Word::from(core.as_slice()),
                tail: Word::from(&x[pos..]),
            });
        }
        for (b, img) in tau.images().iter().enumerate() {
            if x[pos..].starts_with(img) {
                core.push(b);
                if factors.contains(core) {
                    walk(tau, x, factors, head, pos + img.len(), core, out);
                }
                core.pop();
            }
        }
    }
    let mut out = Vec::new();
    for head in 0..=x.len() {
        if is_proper_suffix_of_image(tau, &x[..head]) {
            walk(tau, x, factors, head, head, &mut Vec::new(), &mut out);
        }
    }
    out.sort();
    out
}

/// Every interpretation of `x` whose core is a factor of the first
/// `search_prefix_len` letters of `X_τ`.
pub fn interpretations(tau: &Substitution, x: &[Letter], search_prefix_len: usize) -> Result<Vec<Interpretation>> {
    let host = fixed_point_prefix(tau, search_prefix_len)?;
    if x.is_empty() || !host.windows(x.len()).any(|w| w == x) {
        return invalid("x does not occur in the generated prefix");
    }
    let factors = FactorIndex::new(&host, x.len());
    Ok(interpretations_with(tau, x, &factors))
}

/// Least delay `D` such that every ordered pair of distinct interpretations
/// synchronises at every core index `i` with both sides longer than `D`.
/// For one pair this is the largest `min(left, right)` over the indices
/// that do not synchronise.
fn required_delay(tau: &Substitution, a: &Interpretation, b: &Interpretation, x_len: usize) -> usize {
    let ca = a.cuts(tau);
    let cb: HashMap<usize, Letter> = b
        .cuts(tau)
        .iter()
        .zip(b.core.iter())
        .map(|(&p, &l)| (p, l))
        .collect();
    let mut need = 0;
    for (i, &w_i) in a.core.iter().enumerate() {
        let left = ca[i];
        let right = x_len - ca[i + 1];
        if cb.get(&left) != Some(&w_i) {
            need = need.max(left.min(right));
        }
    }
    need
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncDelayReport {
    pub d_max: usize,
    pub sample_len: usize,
    pub prefix_len: usize,
    pub factors_checked: usize,
    /// Smallest delay consistent with the sample.
    pub observed: usize,
    pub delay: Option<usize>,
}

impl SyncDelayReport {
    pub fn verdict(&self) -> String {
        match self.delay {
            Some(d) => format!("D = {d} certified on the sample"),
            None => format!("no D <= {} on the sample (needs at least {})", self.d_max, self.observed),
        }
    }
}

/// Least `D <= d_max` consistent with all interpretations of all factors of
/// length `<= sample_len` in a prefix of length `50·sample_len`.
pub fn sync_delay_search(tau: &Substitution, d_max: usize, sample_len: usize) -> Result<SyncDelayReport> {
    tau.require_primitive()?;
    if sample_len == 0 {
        return invalid("sample length must be positive");
    }
    let prefix_len = (50 * sample_len).min(prefix_cap());
    let host = fixed_point_prefix(tau, prefix_len)?;
    let factors = FactorIndex::new(&host, sample_len);
    let mut observed = 0;
    let mut factors_checked = 0;
    for n in 1..=sample_len {
        let distinct: HashSet<&[Letter]> = host.windows(n).collect();
        let mut distinct: Vec<&[Letter]> = distinct.into_iter().collect();
        distinct.sort();
        for x in distinct {
            factors_checked += 1;
            let interp = interpretations_with(tau, x, &factors);
            for a in &interp {
                for b in &interp {
                    if a != b {
                        observed = observed.max(required_delay(tau, a, b, x.len()));
                    }
                }
            }
        }
    }
    Ok(SyncDelayReport {
        d_max,
        sample_len,
        prefix_len,
        factors_checked,
        observed,
        delay: (observed <= d_max).then_some(observed),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityCertificate {
    pub prefix: Word,
    pub max_len: usize,
    /// Length of the generated prefix that stands for `L(X)`.
    pub sample_len: usize,
    pub checked: usize,
    /// Two distinct words with the same image, when found.
    pub collision: Option<(Word, Word)>,
}

impl InjectivityCertificate {
    pub fn passed(&self) -> bool {
        self.collision.is_none()
    }
}

fn sample_length(max_len: usize) -> usize {
    (50 * max_len).clamp(10_000, prefix_cap())
}

/// Checks that `f` is one to one on the non-empty factors of `host` of
/// length `<= max_len` that are concatenations of `pieces`.
fn injective_on(
    f: &Substitution,
    host: &[Letter],
    pieces: &[Word],
    max_len: usize,
) -> (usize, Option<(Word, Word)>) {
    let factors = FactorIndex::new(host, max_len);
    let mut seen: HashMap<Word, Word> = HashMap::new();
    let mut stack: Vec<Word> = vec![Word::empty()];
    while let Some(w) = stack.pop() {
        for p in pieces {
            let next = w.concat(p);
            if next.len() > max_len || !factors.contains(&next) {
                continue;
            }
            let image = f.apply(&next);
            if let Some(other) = seen.get(&image) {
                if *other != next {
                    return (seen.len(), Some((other.clone(), next)));
                }
                continue;
            }
            seen.insert(image, next.clone());
            stack.push(next);
        }
    }
    (seen.len(), None)
}

/// `τ` is one to one on the words of length `<= max_len` of
/// `L(X) ∩ Θ_u(R_u*)`, with `L(X)` read off a generated prefix.
pub fn check_injectivity(tau: &Substitution, u: &[Letter], max_len: usize) -> Result<InjectivityCertificate> {
    let (sys, _) = return_substitution(tau, u)?;
    let sample_len = sample_length(max_len);
    let host = fixed_point_prefix(tau, sample_len)?;
    let (checked, collision) = injective_on(tau, &host, sys.return_words(), max_len);
    Ok(InjectivityCertificate {
        prefix: Word::from(u),
        max_len,
        sample_len,
        checked,
        collision,
    })
}

/// `τ_u` is one to one on the words of length `<= max_len` of its language.
pub fn check_return_injectivity(tau: &Substitution, u: &[Letter], max_len: usize) -> Result<InjectivityCertificate> {
    let (_, tau_u) = return_substitution(tau, u)?;
    let sample_len = sample_length(max_len);
    let host = fixed_point_prefix(&tau_u, sample_len)?;
    let letters: Vec<Word> = (0..tau_u.size()).map(Word::letter).collect();
    let (checked, collision) = injective_on(&tau_u, &host, &letters, max_len);
    Ok(InjectivityCertificate {
        prefix: Word::from(u),
        max_len,
        sample_len,
        checked,
        collision,
    })
}

/// Least prefix length `n <= max_prefix` at which both injectivity checks
/// pass with word length `max_len`.
pub fn find_n0(tau: &Substitution, max_len: usize, max_prefix: usize) -> Result<Option<usize>> {
    if max_prefix == 0 {
        return Ok(None);
    }
    tau.require_primitive()?;
    crate::returns::require_non_periodic(tau)?;
    let x = fixed_point_prefix(tau, max_prefix)?;
    for n in 1..=max_prefix {
        if check_injectivity(tau, &x[..n], max_len)?.passed()
            && check_return_injectivity(tau, &x[..n], max_len)?.passed()
        {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// `τ^{q-p} = Θ_u^{l_q - l_p}` for consecutive `p < q` of the set `I`
/// found by [`crate::relations::find_gamma`].
pub fn intermediate_power_checks(result: &GammaSearch) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (a, b) in result.set_i.iter().zip(&result.l_p).zip(result.set_i.iter().zip(&result.l_p).skip(1)) {
        let ((&p, &lp), (&q, &lq)) = (a, b);
        let tau_pow = result.tau.power(q - p)?;
        let mut theta_pow = result.theta.clone();
        for _ in 1..lq - lp {
            theta_pow = result.theta.compose(&theta_pow)?;
        }
        checks.push(Check::morphism_identity(
            format!("τ^{} = Θ^{}", q - p, lq - lp),
            tau_pow.morphism(),
            &theta_pow,
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::relations::find_gamma;

    fn d(s: &str) -> Word {
        s.bytes().map(|b| (b - b'0') as Letter).collect()
    }

    #[test]
    fn morse_interpretations() {
        let morse = corpus::morse();
        let all = interpretations(&morse, &d("0110"), 1000).unwrap();
        assert!(all.contains(&Interpretation {
            head: Word::empty(),
            core: d("01"),
            tail: Word::empty()
        }));
        for i in &all {
            assert_eq!(i.rebuild(&morse), d("0110"));
        }
        let single = interpretations(&morse, &d("1"), 1000).unwrap();
        assert!(single.iter().all(|i| i.core.is_empty()));
        assert!(!single.is_empty());
        assert!(interpretations(&morse, &d("000"), 1000).is_err());
    }

    #[test]
    fn whole_image_interpretation() {
        let fib = corpus::fibonacci();
        let all = interpretations(&fib, &d("01"), 1000).unwrap();
        assert!(all.contains(&Interpretation {
            head: Word::empty(),
            core: d("0"),
            tail: Word::empty()
        }));
    }

    #[test]
    fn delays() {
        for tau in [corpus::fibonacci(), corpus::morse()] {
            let r = sync_delay_search(&tau, 50, 12).unwrap();
            assert!(r.delay.is_some(), "{}", r.verdict());
        }
        let r = sync_delay_search(&corpus::morse(), 0, 8).unwrap();
        assert_eq!(r.delay, None);
    }

    #[test]
    fn injectivity() {
        let fib = corpus::fibonacci();
        assert!(check_injectivity(&fib, &d("01"), 30).unwrap().passed());
        let morse = corpus::morse();
        assert!(check_injectivity(&morse, &d("011"), 30).unwrap().passed());
        let vacuous = check_injectivity(&fib, &d("01"), 1).unwrap();
        assert!(vacuous.passed());
        assert_eq!(vacuous.checked, 0);
        assert!(find_n0(&fib, 20, 200).unwrap().is_some());
        assert_eq!(find_n0(&fib, 20, 0).unwrap(), None);
    }

    #[test]
    fn intermediate_powers() {
        let r = find_gamma(&corpus::fibonacci(), &d("01"), 8).unwrap();
        let checks = intermediate_power_checks(&r).unwrap();
        assert_eq!(checks.len(), 2);
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }
}
