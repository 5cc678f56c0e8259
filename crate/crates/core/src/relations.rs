//! Relations between return substitutions on different prefixes, the
//! matrix identities linking `M_τ` and `M_{τ_u}`, and the search for
//! shared return substitutions of two substitutions with one fixed point.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::limits::prefix_cap;
use crate::matrix::IntMatrix;
use crate::report::{all_passed, Check};
use crate::returns::{
    estimate_constants, require_non_periodic, return_substitution, ReturnSystem, NON_PERIODIC_CHECK,
};
use crate::spectrum::{nontrivial_eigenvalue_set, spectra_equal_mod_trivial};
use crate::substitution::{fixed_point_prefix, Morphism, Substitution};
use crate::words::{count_occurrences, detect_period, Letter, Matcher, Word};

/// Largest exponent tried by the κ and `n₀` searches.
pub const MAX_EXPONENT: u32 = 64;

fn require_prefixes(tau: &Substitution, u: &[Letter], v: &[Letter]) -> Result<()> {
    if u.is_empty() || u.len() >= v.len() {
        return invalid(format!("need 0 < |u| < |v|, got |u| = {}, |v| = {}", u.len(), v.len()));
    }
    let x = fixed_point_prefix(tau, v.len())?;
    if !x.starts_with(u) || x.as_slice() != v {
        return invalid("u and v must be prefixes of the fixed point");
    }
    Ok(())
}

/// `λ : R_v -> R_u⁺` with `Θ_u ∘ λ = Θ_v`.
pub fn lambda_morphism(tau: &Substitution, u: &[Letter], v: &[Letter]) -> Result<Morphism> {
    require_prefixes(tau, u, v)?;
    let (sys_u, _) = return_substitution(tau, u)?;
    let (sys_v, _) = return_substitution(tau, v)?;
    lambda_from(&sys_u, &sys_v)
}

fn lambda_from(sys_u: &ReturnSystem, sys_v: &ReturnSystem) -> Result<Morphism> {
    let images = sys_v
        .return_words()
        .iter()
        .map(|w| {
            sys_u.decompose(w).map_err(|_| {
                Error::InternalInconsistency("a return word on v does not split over R_u".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(sys_v.alphabet().clone(), sys_u.alphabet().clone(), images)
}

/// `(k, κ)` with `κ : R_u -> R_v⁺` and `Θ_v ∘ κ = τ^k ∘ Θ_u`, for the least
/// `k` such that `|τ^k(u)| > |v|` and every `τ^k(Θ_u(b))` splits over `R_v`.
pub fn kappa_morphism(tau: &Substitution, u: &[Letter], v: &[Letter]) -> Result<(u32, Morphism)> {
    require_prefixes(tau, u, v)?;
    let (sys_u, _) = return_substitution(tau, u)?;
    let (sys_v, _) = return_substitution(tau, v)?;
    kappa_from(tau, &sys_u, &sys_v)
}

fn kappa_from(tau: &Substitution, sys_u: &ReturnSystem, sys_v: &ReturnSystem) -> Result<(u32, Morphism)> {
    let v_len = sys_v.prefix().len();
    let mut tu = sys_u.prefix().clone();
    let mut images: Vec<Word> = sys_u.return_words().to_vec();
    for k in 1..=MAX_EXPONENT {
        tu = tau.apply(&tu);
        images = images.iter().map(|w| tau.apply(w)).collect();
        if images.iter().map(|w| w.len()).sum::<usize>() > prefix_cap() {
            break;
        }
        if tu.len() <= v_len {
            continue;
        }
        let split: Result<Vec<Word>> = images.iter().map(|w| sys_v.decompose(w)).collect();
        if let Ok(split) = split {
            let kappa = Morphism::new(sys_u.alphabet().clone(), sys_v.alphabet().clone(), split)?;
            return Ok((k, kappa));
        }
    }
    Err(Error::ResourceLimit {
        what: "exponent k for κ".into(),
        budget: MAX_EXPONENT as usize,
    })
}

/// λ, κ and the four commutation identities between `τ_u` and `τ_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub u: Word,
    pub v: Word,
    pub k: u32,
    pub lambda: Morphism,
    pub kappa: Morphism,
    /// `τ_v κ = κ τ_u`, `τ_u λ = λ τ_v`, `κ λ = τ_v^k`, `λ κ = τ_u^k`.
    pub identities: Vec<Check>,
    /// `M_κ M_λ = M_{τ_v}^k` and `M_λ M_κ = M_{τ_u}^k`.
    pub matrix_checks: Vec<Check>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.identities) && all_passed(&self.matrix_checks)
    }
}

pub fn verify_return_relations(tau: &Substitution, u: &[Letter], v: &[Letter]) -> Result<RelationReport> {
    require_prefixes(tau, u, v)?;
    let (sys_u, tau_u) = return_substitution(tau, u)?;
    let (sys_v, tau_v) = return_substitution(tau, v)?;
    let lambda = lambda_from(&sys_u, &sys_v)?;
    let (k, kappa) = kappa_from(tau, &sys_u, &sys_v)?;
    let tu = tau_u.morphism();
    let tv = tau_v.morphism();
    let tu_k = tau_u.power(k)?;
    let tv_k = tau_v.power(k)?;

    let identities = vec![
        Check::morphism_identity("τ_v κ = κ τ_u", &tv.compose(&kappa)?, &kappa.compose(tu)?),
        Check::morphism_identity("τ_u λ = λ τ_v", &tu.compose(&lambda)?, &lambda.compose(tv)?),
        Check::morphism_identity("κ λ = τ_v^k", &kappa.compose(&lambda)?, tv_k.morphism()),
        Check::morphism_identity("λ κ = τ_u^k", &lambda.compose(&kappa)?, tu_k.morphism()),
    ];
    let (mk, ml) = (kappa.incidence_matrix(), lambda.incidence_matrix());
    let kl = &mk * &ml;
    let lk = &ml * &mk;
    let matrix_checks = vec![
        Check::new(
            "M_κ M_λ = M_{τ_v}^k",
            kl == tau_v.incidence_matrix().pow(k)?,
            format!("{kl}"),
        ),
        Check::new(
            "M_λ M_κ = M_{τ_u}^k",
            lk == tau_u.incidence_matrix().pow(k)?,
            format!("{lk}"),
        ),
    ];
    Ok(RelationReport {
        u: Word::from(u),
        v: Word::from(v),
        k,
        lambda,
        kappa,
        identities,
        matrix_checks,
    })
}

/// Least `n >= 1` such that every `τ^n(b)` contains `u` at least twice.
pub fn two_occurrence_exponent(tau: &Substitution, u: &[Letter]) -> Result<u32> {
    if u.is_empty() {
        return invalid("u must be non-empty");
    }
    let m = Matcher::new(u);
    let mut images: Vec<Word> = tau.images().to_vec();
    for n in 1..=MAX_EXPONENT {
        if images.iter().all(|w| m.find_from(w, 0, 2).len() == 2) {
            return Ok(n);
        }
        images = images.iter().map(|w| tau.apply(w)).collect();
        if images.iter().map(|w| w.len()).sum::<usize>() > prefix_cap() {
            break;
        }
    }
    Err(Error::ResourceLimit {
        what: "exponent with two occurrences of u in every image".into(),
        budget: MAX_EXPONENT as usize,
    })
}

/// The matrices of `M_τ^l = M_{Θ_u} K_l + Q_l` and
/// `M_{τ_u}^l = K_l M_{Θ_u} + P_l`, with the residual bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixDecomposition {
    pub l: u32,
    pub n0: u32,
    pub theta: IntMatrix,
    pub k: IntMatrix,
    pub q: IntMatrix,
    pub p: IntMatrix,
    pub h1: Ratio<u64>,
    pub h2: Ratio<u64>,
    /// `(H2 + 2)|u|`.
    pub q_bound: BigRational,
    /// `2(H2 + 1)H2|u| / H1`.
    pub p_bound: BigRational,
    pub q_max: BigInt,
    pub p_max: BigInt,
    pub checks: Vec<Check>,
}

impl MatrixDecomposition {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

fn big_ratio(r: Ratio<u64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Prefix lengths sampled for the empirical `H1`, `H2` around a prefix `u`.
pub fn constant_sample(u_len: usize) -> Vec<usize> {
    (1..=u_len.max(16)).collect()
}

pub fn matrix_decomposition(tau: &Substitution, u: &[Letter], l: u32) -> Result<MatrixDecomposition> {
    let (sys, tau_u) = return_substitution(tau, u)?;
    let n0 = two_occurrence_exponent(tau, u)?;
    if l < n0 {
        return invalid(format!("l = {l} is below n₀ = {n0}"));
    }
    let tl = tau.power(l)?;
    let k_rows: Vec<Vec<u64>> = sys
        .return_words()
        .iter()
        .map(|ret| {
            let pat = ret.concat(u);
            tl.images()
                .iter()
                .map(|img| count_occurrences(&pat, &img.concat(u)) as u64)
                .collect()
        })
        .collect();
    let k = IntMatrix::from_rows(&k_rows);
    let theta = sys.coding().incidence_matrix();
    let q = &tau.incidence_matrix().pow(l)? - &(&theta * &k);
    let p = &tau_u.incidence_matrix().pow(l)? - &(&k * &theta);

    let c = estimate_constants(tau, &constant_sample(u.len()))?;
    let ulen = BigRational::from_integer(BigInt::from(u.len()));
    let two = BigRational::from_integer(BigInt::from(2));
    let one = BigRational::from_integer(BigInt::from(1));
    let (h1, h2) = (big_ratio(c.h1), big_ratio(c.h2));
    let q_bound = (&h2 + &two) * &ulen;
    let p_bound = &two * (&h2 + &one) * &h2 * &ulen / &h1;
    let q_max = q.max_abs_entry();
    let p_max = p.max_abs_entry();
    let as_rat = |x: &BigInt| BigRational::from_integer(x.clone());
    let checks = vec![
        Check::new("Q_l non-negative", q.is_nonnegative(), format!("Q_l = {q}")),
        Check::new(
            "Q_l entries < (H2+2)|u|",
            as_rat(&q_max) < q_bound,
            format!("max {q_max} vs bound {q_bound}"),
        ),
        Check::new(
            "|P_l| entries <= 2(H2+1)H2|u|/H1",
            as_rat(&p_max) <= p_bound,
            format!("max {p_max} vs bound {p_bound}"),
        ),
    ];
    Ok(MatrixDecomposition {
        l,
        n0,
        theta,
        k,
        q,
        p,
        h1: c.h1,
        h2: c.h2,
        q_bound,
        p_bound,
        q_max,
        p_max,
        checks,
    })
}

/// `τ` and `τ_u` have the same eigenvalues apart from 0 and roots of unity.
pub fn eigenvalue_transfer_check(tau: &Substitution, u: &[Letter]) -> Result<bool> {
    let (_, tau_u) = return_substitution(tau, u)?;
    spectra_equal_mod_trivial(&tau.incidence_matrix(), &tau_u.incidence_matrix())
}

/// `τ` renamed by first appearance, with `u` mapped along.
fn canonical_with_word(tau: &Substitution, u: &[Letter]) -> Result<(Substitution, Word)> {
    let (c, order) = tau.canonical_form()?;
    let mut rank = vec![0; order.len()];
    for (k, &l) in order.iter().enumerate() {
        rank[l] = k;
    }
    Ok((c, u.iter().map(|&l| rank[l]).collect()))
}

/// The four hypotheses under which `Θ_u` commutes with `τ` up to powers.
///
/// Letters of `A` are identified with return letters by index after
/// renaming `τ` by first appearance, so "1" is the start letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationHypotheses {
    /// Every image starts with the start letter.
    pub starts_with_first: Check,
    /// `τ_u = τ` on the same alphabet.
    pub self_return: Check,
    /// Bounded non-periodicity of `X_τ`.
    pub non_periodic: Check,
    /// Every letter occurs in every return word.
    pub full_return_words: Check,
}

impl CommutationHypotheses {
    pub fn all(&self) -> [&Check; 4] {
        [&self.starts_with_first, &self.self_return, &self.non_periodic, &self.full_return_words]
    }

    pub fn passed(&self) -> bool {
        self.all().iter().all(|c| c.passed)
    }
}

pub fn check_commutation_hypotheses(tau: &Substitution, u: &[Letter]) -> Result<CommutationHypotheses> {
    let (c, cu) = canonical_with_word(tau, u)?;
    let starts_with_first = {
        let bad = c.images().iter().position(|w| w[0] != 0);
        Check::new(
            "every τ(b) begins with 1",
            bad.is_none(),
            match bad {
                Some(b) => format!("τ({}) = {}", c.alphabet().symbol(b), c.alphabet().render(c.image(b))),
                None => String::new(),
            },
        )
    };
    let (n, max_period) = NON_PERIODIC_CHECK;
    let x = fixed_point_prefix(&c, n)?;
    let period = detect_period(&x, max_period);
    let non_periodic = Check::new(
        "fixed point non-periodic",
        period.is_none(),
        match period {
            None => format!("no period <= {max_period} on the first {n} letters"),
            Some(p) => format!("preperiod {}, period {} on the first {n} letters", p.preperiod, p.period),
        },
    );
    let (sys, tau_u) = return_substitution(&c, &cu)?;
    let same_size = sys.len() == c.size();
    let self_return = Check::new(
        "τ_u = τ",
        same_size && tau_u.images() == c.images(),
        if same_size {
            format!("τ_u = {}", tau_u.render())
        } else {
            format!("Card(R_u) = {} but Card(A) = {}", sys.len(), c.size())
        },
    );
    let missing = sys.return_words().iter().enumerate().find_map(|(ci, w)| {
        (0..c.size()).find(|b| !w.contains(b)).map(|b| (b, ci))
    });
    let full_return_words = Check::new(
        "every b occurs in every Θ_u(c)",
        same_size && missing.is_none(),
        match missing {
            Some((b, ci)) => format!("{} missing from Θ_u({})", c.alphabet().symbol(b), ci + 1),
            None if !same_size => "alphabets differ".to_string(),
            None => String::new(),
        },
    );
    Ok(CommutationHypotheses {
        starts_with_first,
        self_return,
        non_periodic,
        full_return_words,
    })
}

/// One `γ_p` with `Θ_{w_{l_p}} γ_p = τ^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaCandidate {
    pub p: u32,
    pub l_p: u32,
    pub gamma: Morphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSearch {
    pub hypotheses: CommutationHypotheses,
    pub p_max: u32,
    /// Least `k₀` with `u` a prefix of every `τ^{k₀}(b)`.
    pub k0: Option<u32>,
    pub candidates: Vec<GammaCandidate>,
    /// Exponents of the largest group of equal `γ_p`.
    pub set_i: Vec<u32>,
    pub l_p: Vec<u32>,
    pub gamma: Option<Morphism>,
    /// `Θ^{l_p} γ = τ^p` and `γ Θ^{l_p} = τ^p` for every `p` in `I`.
    pub checks: Vec<Check>,
    /// Largest `|γ_p(b)|` over all candidates.
    pub max_gamma_len: usize,
    /// The substitution `τ` in first-appearance order.
    pub tau: Substitution,
    /// `Θ_u` read as a morphism `A -> A⁺`.
    pub theta: Morphism,
}

impl GammaSearch {
    pub fn found(&self) -> bool {
        self.set_i.len() >= 2 && all_passed(&self.checks)
    }

    pub fn verdict(&self) -> String {
        if self.found() {
            format!("I = {:?}", self.set_i)
        } else {
            format!("inconclusive <= {}", self.p_max)
        }
    }
}

/// Computes `γ_p` for `k₀ < p <= p_max` and returns the largest group of
/// equal ones, provided it has at least two members.
pub fn find_gamma(tau: &Substitution, u: &[Letter], p_max: u32) -> Result<GammaSearch> {
    let hypotheses = check_commutation_hypotheses(tau, u)?;
    if !hypotheses.passed() {
        let failed: Vec<&str> = hypotheses.all().iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        return invalid(format!("hypotheses fail: {}", failed.join(", ")));
    }
    let (c, cu) = canonical_with_word(tau, u)?;
    let a = c.alphabet().clone();
    let (sys, _) = return_substitution(&c, &cu)?;
    let theta = Morphism::new(a.clone(), a.clone(), sys.return_words().to_vec())?;

    let mut result = GammaSearch {
        hypotheses,
        p_max,
        k0: None,
        candidates: Vec::new(),
        set_i: Vec::new(),
        l_p: Vec::new(),
        gamma: None,
        checks: Vec::new(),
        max_gamma_len: 0,
        tau: c.clone(),
        theta: theta.clone(),
    };

    // powers[n] = τ^n, n <= p_max
    let mut powers = vec![Morphism::identity(a.clone())];
    for n in 1..=p_max {
        let next = c.morphism().compose(&powers[n as usize - 1])?;
        if next.images().iter().map(|w| w.len()).sum::<usize>() > prefix_cap() {
            return Err(Error::ResourceLimit {
                what: format!("images of τ^{n}"),
                budget: prefix_cap(),
            });
        }
        powers.push(next);
    }
    let k0 = (1..=p_max).find(|&k| powers[k as usize].images().iter().all(|w| w.starts_with(&cu)));
    result.k0 = k0;
    let Some(k0) = k0 else {
        return Ok(result);
    };

    // w_1 = u, w_{n+1} = Θ^n(u) w_n, with Θ^n alongside
    let longest = powers[p_max as usize].image(0).len();
    let mut ws: Vec<Word> = vec![cu.clone()];
    let mut theta_pows = vec![Morphism::identity(a.clone()), theta.clone()];
    while ws.last().unwrap().len() <= longest {
        let n = ws.len();
        let next = theta_pows[n].apply(&cu).concat(&ws[n - 1]);
        ws.push(next);
        let tp = theta.compose(&theta_pows[n])?;
        theta_pows.push(tp);
    }

    for p in k0 + 1..=p_max {
        let t_prev = powers[p as usize - 1].image(0);
        let l_p = ws.iter().take_while(|w| t_prev.starts_with(w)).count() as u32;
        let w = &ws[l_p as usize - 1];
        let coding = &theta_pows[l_p as usize];
        let sys_w = ReturnSystem::from_words(a.clone(), w.clone(), coding.images().to_vec(), true);
        let images = powers[p as usize]
            .images()
            .iter()
            .map(|img| sys_w.decompose(img))
            .collect::<Result<Vec<_>>>()?;
        let gamma = Morphism::new(a.clone(), a.clone(), images)?;
        result.max_gamma_len = result.max_gamma_len.max(gamma.max_image_len());
        result.candidates.push(GammaCandidate { p, l_p, gamma });
    }

    let mut groups: BTreeMap<Vec<Word>, Vec<usize>> = BTreeMap::new();
    for (i, cand) in result.candidates.iter().enumerate() {
        groups.entry(cand.gamma.images().to_vec()).or_default().push(i);
    }
    let best = groups
        .values()
        .filter(|g| g.len() >= 2)
        .max_by(|x, y| x.len().cmp(&y.len()).then(y[0].cmp(&x[0])));
    if let Some(group) = best {
        let gamma = result.candidates[group[0]].gamma.clone();
        for &i in group {
            let cand = &result.candidates[i];
            let tl = &theta_pows[cand.l_p as usize];
            let tp = &powers[cand.p as usize];
            result.checks.push(Check::morphism_identity(
                format!("Θ^{} γ = τ^{}", cand.l_p, cand.p),
                &tl.compose(&gamma)?,
                tp,
            ));
            result.checks.push(Check::morphism_identity(
                format!("γ Θ^{} = τ^{}", cand.l_p, cand.p),
                &gamma.compose(tl)?,
                tp,
            ));
            result.set_i.push(cand.p);
            result.l_p.push(cand.l_p);
        }
        result.gamma = Some(gamma);
    }
    Ok(result)
}

/// Compared prefix length for the same-fixed-point gate.
pub fn gate_length(tau: &Substitution, sigma: &Substitution) -> usize {
    10_000.max(20 * tau.morphism().max_image_len().max(sigma.morphism().max_image_len()))
}

/// Checks that `τ` and `σ` share a fixed point on the gate length and
/// returns that length.
pub fn same_fixed_point_gate(tau: &Substitution, sigma: &Substitution) -> Result<usize> {
    if tau.alphabet() != sigma.alphabet() {
        return invalid("the two substitutions are on different alphabets");
    }
    let n = gate_length(tau, sigma);
    let x = fixed_point_prefix(tau, n)?;
    let y = fixed_point_prefix(sigma, n)?;
    if let Some(i) = x.iter().zip(y.iter()).position(|(a, b)| a != b) {
        return invalid(format!("fixed points differ at index {i}"));
    }
    Ok(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerCoincidence {
    pub gate_len: usize,
    pub bound: u32,
    pub witness: Option<(u32, u32)>,
}

impl PowerCoincidence {
    pub fn verdict(&self) -> String {
        match self.witness {
            Some((i, j)) => format!("(i, j) = ({i}, {j})"),
            None => format!("no witness <= {}", self.bound),
        }
    }
}

/// Least `(i, j)`, lexicographically, with `i, j <= bound` such that
/// `M_τ^i` and `M_σ^j` have the same eigenvalues apart from 0 and roots
/// of unity.
pub fn power_coincidence(tau: &Substitution, sigma: &Substitution, bound: u32) -> Result<PowerCoincidence> {
    tau.require_primitive()?;
    sigma.require_primitive()?;
    let gate_len = same_fixed_point_gate(tau, sigma)?;
    let sets = |m: &IntMatrix| -> Result<Vec<_>> {
        let mut out = Vec::with_capacity(bound as usize);
        let mut acc = m.clone();
        for i in 1..=bound {
            if i > 1 {
                acc = &acc * m;
            }
            out.push(nontrivial_eigenvalue_set(&acc)?);
        }
        Ok(out)
    };
    let left = sets(&tau.incidence_matrix())?;
    let right = sets(&sigma.incidence_matrix())?;
    let mut witness = None;
    'outer: for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            if a == b {
                witness = Some((i as u32 + 1, j as u32 + 1));
                break 'outer;
            }
        }
    }
    Ok(PowerCoincidence {
        gate_len,
        bound,
        witness,
    })
}

/// A prefix `u` with `τ_u^i = σ_u^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedWitness {
    pub u: Word,
    /// 1-based tower level of `u`.
    pub level: usize,
    pub i: u32,
    pub j: u32,
    pub tau_u: Substitution,
    pub sigma_u: Substitution,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedAnalysis {
    pub gate_len: usize,
    pub budget: u32,
    pub levels_tried: usize,
    pub witness: Option<SharedWitness>,
}

impl SharedAnalysis {
    pub fn verdict(&self) -> String {
        match &self.witness {
            Some(w) => format!("τ_u^{} = σ_u^{} at |u| = {}", w.i, w.j, w.u.len()),
            None => format!("no witness with i, j <= {} on {} prefixes", self.budget, self.levels_tried),
        }
    }
}

/// Number of tower prefixes tried by [`shared_fixed_point_analysis`].
pub const SHARED_TOWER_DEPTH: usize = 6;

fn powers_up_to(s: &Substitution, budget: u32) -> Vec<Substitution> {
    let mut out = vec![s.clone()];
    while (out.len() as u32) < budget {
        let total: usize = out.last().unwrap().images().iter().map(|w| w.len()).sum();
        if total.saturating_mul(s.morphism().max_image_len()) > prefix_cap() {
            break;
        }
        match s.then_after(out.last().unwrap()) {
            Ok(next) => out.push(next),
            Err(_) => break,
        }
    }
    out
}

/// Searches the prefixes `u^(1), u^(2), ..` of the derivation tower of `τ`
/// for exponents `i, j <= budget` with `τ_u^i = σ_u^j`. Both return
/// substitutions use the same return words, so equality is literal.
pub fn shared_fixed_point_analysis(
    tau: &Substitution,
    sigma: &Substitution,
    budget: u32,
) -> Result<SharedAnalysis> {
    if budget == 0 {
        return invalid("budget must be positive");
    }
    tau.require_primitive()?;
    sigma.require_primitive()?;
    let gate_len = same_fixed_point_gate(tau, sigma)?;
    require_non_periodic(tau)?;
    let x = fixed_point_prefix(tau, 1)?;
    let (mut sys, _) = return_substitution(tau, &x)?;
    let mut u = x;
    let mut levels_tried = 0;
    for level in 1..=SHARED_TOWER_DEPTH {
        if level > 1 {
            u = sys.return_word(0).concat(&u);
            sys = return_substitution(tau, &u)?.0;
        }
        levels_tried = level;
        let (_, tau_u) = return_substitution(tau, &u)?;
        let (sys_s, sigma_u) = return_substitution(sigma, &u)?;
        if sys_s.return_words() != sys.return_words() {
            return Err(Error::InternalInconsistency(
                "return words differ for a shared fixed point".into(),
            ));
        }
        let tp = powers_up_to(&tau_u, budget);
        let sp = powers_up_to(&sigma_u, budget);
        for (i, a) in tp.iter().enumerate() {
            let la = a.incidence_matrix();
            for (j, b) in sp.iter().enumerate() {
                if la != b.incidence_matrix() {
                    continue;
                }
                if a.images() == b.images() {
                    return Ok(SharedAnalysis {
                        gate_len,
                        budget,
                        levels_tried,
                        witness: Some(SharedWitness {
                            u,
                            level,
                            i: i as u32 + 1,
                            j: j as u32 + 1,
                            tau_u,
                            sigma_u,
                        }),
                    });
                }
            }
        }
    }
    Ok(SharedAnalysis {
        gate_len,
        budget,
        levels_tried,
        witness: None,
    })
}

/// A pair of substitutions with one fixed point, built from a repetition
/// `τ_{u^(p)} = τ_{u^(q)}` of the derivation tower: `γ = τ_{u^(p)}` and the
/// coding `Θ_v` of the return words of `X_γ` on the prefix `v` with
/// `Θ_{u^(p)}(v) u^(p) = u^(q)`, read as a substitution.
pub fn tower_pair(tau: &Substitution, depth: usize) -> Result<Option<(Substitution, Substitution)>> {
    let tower = crate::returns::derivation_tower(tau, depth)?;
    let Some((p, q)) = tower.repetition else {
        return Ok(None);
    };
    let gamma = tower.levels[p - 1].substitution.clone();
    let len = |k: usize| tower.levels[k].prefix.len();
    // v is the prefix of D_{u^(p)}(X) whose coding, followed by u^(p), is u^(q)
    let target = len(q - 1) - len(p - 1);
    let d = fixed_point_prefix(&gamma, target.max(1))?;
    let coding = &tower.levels[p - 1].coding;
    let mut v = Vec::new();
    let mut acc = 0;
    for &b in d.iter() {
        if acc >= target {
            break;
        }
        acc += coding.image(b).len();
        v.push(b);
    }
    if acc != target {
        return Err(Error::InternalInconsistency("tower prefixes do not align".into()));
    }
    let (sys, _) = return_substitution(&gamma, &v)?;
    if sys.len() != gamma.size() {
        return Ok(None);
    }
    let theta = Substitution::from_images(
        gamma.alphabet().clone(),
        sys.return_words().iter().map(|w| w.to_vec()).collect(),
        0,
    )?;
    Ok(Some((gamma, theta)))
}

/// Sum of absolute values, used by reports.
pub fn entry_sum(m: &IntMatrix) -> BigInt {
    m.entries().iter().map(|x| x.abs()).fold(BigInt::zero(), |a, b| a + b)
}
