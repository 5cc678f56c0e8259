//! One function per subcommand; each returns a [`Report`].

use std::path::Path;

use retword::circularity::{check_injectivity, find_n0, sync_delay_search};
use retword::limits::prefix_cap;
use retword::periodic::{build_periodic_presentation, verify_presentation};
use retword::relations::{
    eigenvalue_transfer_check, gate_length, matrix_decomposition, power_coincidence, same_fixed_point_gate,
    shared_fixed_point_analysis, two_occurrence_exponent, verify_return_relations,
};
use retword::returns::{derivation_tower, derived_prefix, return_substitution, return_words_of_prefix};
use retword::spectrum::{mult_dependent, nontrivial_eigenvalue_set, real_roots, default_precision, strip_trivial};
use retword::substitution::{fixed_point_prefix, morphic_image_prefix};
use retword::{Alphabet, Check, IntMatrix, Morphism, Spectrum, Substitution, Word};
use serde_json::{json, Value};

use crate::report::{interval, rational, strings, Report};
use crate::{parse_substitution, CliError, Command, SubstitutionFile};

type Outcome = Result<Report, CliError>;

pub fn load(path: &Path) -> Result<SubstitutionFile, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: shown.clone(),
        message: e.to_string(),
    })?;
    parse_substitution(&text).map_err(|source| CliError::Parse { path: shown, source })
}

fn word(s: &Substitution, text: &str) -> Result<Word, CliError> {
    let w = s.alphabet().parse_word(text)?;
    if w.is_empty() {
        return Err(CliError::Usage("the prefix must be non-empty".into()));
    }
    Ok(w)
}

fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| strings(r.iter())).collect())
}

fn numbered_words(a: &Alphabet, words: &[Word]) -> Value {
    strings(words.iter().enumerate().map(|(i, w)| format!("{} -> {}", i + 1, a.render(w))))
}

fn header(r: &mut Report) {
    r.config("prefix_cap", prefix_cap());
}

pub fn execute(command: &Command) -> Outcome {
    match command {
        Command::FixedPoint { file, length } => fixed_point(file, *length),
        Command::Spectrum { file, power } => spectrum(file, *power),
        Command::ReturnWords { file, prefix, length } => return_words(file, prefix, *length),
        Command::ReturnSub { file, prefix } => return_sub(file, prefix),
        Command::Derived { file, prefix, length } => derived(file, prefix, *length),
        Command::Tower { file, depth } => tower(file, *depth),
        Command::Relations { file, u, v, l } => relations(file, u, v, *l),
        Command::Circularity {
            file,
            prefix,
            max_len,
            d_max,
            sample_len,
            max_prefix,
        } => circularity(file, prefix.as_deref(), *max_len, *d_max, *sample_len, *max_prefix),
        Command::Shared { left, right, bound } => shared(left, right, *bound),
        Command::Cobham {
            left,
            right,
            coding_left,
            coding_right,
            bound,
            check_len,
        } => cobham(left, right, coding_left, coding_right, *bound, *check_len),
        Command::Periodic { file, period, check_len } => periodic(file, period, *check_len),
    }
}

fn fixed_point(file: &Path, length: usize) -> Outcome {
    let f = load(file)?;
    let s = &f.substitution;
    let x = fixed_point_prefix(s, length)?;
    let mut r = Report::new(format!("fixed-point {}", file.display()));
    header(&mut r);
    r.config("length", length);
    r.result("substitution", s.render());
    r.result("prefix", s.alphabet().render(&x));
    Ok(r)
}

fn spectrum_results(r: &mut Report, m: &IntMatrix) -> Result<(), CliError> {
    let s = Spectrum::of_matrix(m)?;
    r.result("matrix", matrix(m));
    r.result("char_poly", s.char_poly.to_string());
    let mut exact: Vec<String> = vec!["0".into(); s.zero_multiplicity];
    for (root, k) in &s.exact_roots {
        exact.extend(std::iter::repeat_n(root.to_string(), *k));
    }
    if s.integer_eigenvalues().is_some() {
        r.result("eigenvalues", strings(&exact));
    } else {
        if !exact.is_empty() {
            r.result("exact_eigenvalues", strings(&exact));
        }
        r.result("residual_factor", s.residual_factor.to_string());
        let prec = default_precision();
        let roots: Vec<Value> = real_roots(&s.residual_factor, &prec).iter().map(interval).collect();
        r.result("residual_real_roots", Value::Array(roots));
        r.config("precision", format!("{}", prec));
    }
    if let Some(d) = &s.dominant {
        r.result("dominant", interval(d));
    }
    let stripped = strip_trivial(&s);
    r.result("nontrivial_part", stripped.char_poly.to_string());
    let mut removed = Vec::new();
    if stripped.removed.zero > 0 {
        removed.push(match stripped.removed.zero {
            1 => "x".to_owned(),
            k => format!("x^{k}"),
        });
    }
    for (d, k) in &stripped.removed.cyclotomic {
        removed.push(if *k == 1 { format!("Φ_{d}") } else { format!("Φ_{d}^{k}") });
    }
    if !removed.is_empty() {
        r.result("removed_factors", strings(removed));
    }
    Ok(())
}

fn spectrum(file: &Path, power: u32) -> Outcome {
    if power == 0 {
        return Err(CliError::Usage("--power must be at least 1".into()));
    }
    let f = load(file)?;
    let s = &f.substitution;
    let m = s.incidence_matrix().pow(power)?;
    let mut r = Report::new(format!("spectrum {}", file.display()));
    header(&mut r);
    r.config("power", power);
    spectrum_results(&mut r, &m)?;
    let prim = s.primitivity();
    r.result("primitive", prim.primitive.to_string());
    if let Some(e) = prim.exponent {
        r.result("primitivity_exponent", e.to_string());
    }
    Ok(r)
}

fn return_words(file: &Path, prefix: &str, length: usize) -> Outcome {
    let f = load(file)?;
    let s = &f.substitution;
    let u = word(s, prefix)?;
    let x = fixed_point_prefix(s, length.max(u.len()))?;
    let observed = return_words_of_prefix(&x, &u, s.alphabet())?;
    let mut r = Report::new(format!("return-words {} --prefix {prefix}", file.display()));
    header(&mut r);
    r.config("length", length);
    r.result("return_words", numbered_words(s.alphabet(), observed.return_words()));
    if s.is_primitive() {
        let (complete, _) = return_substitution(s, &u)?;
        let missing: Vec<String> = observed
            .return_words()
            .iter()
            .filter(|w| complete.index_of(w).is_none())
            .map(|w| s.alphabet().render(w))
            .collect();
        r.check(
            "observed return words belong to the closure",
            missing.is_empty(),
            if missing.is_empty() {
                format!("{} of {} found in the prefix", observed.len(), complete.len())
            } else {
                format!("not in closure: {}", missing.join(", "))
            },
        );
    }
    Ok(r)
}

fn return_sub(file: &Path, prefix: &str) -> Outcome {
    let f = load(file)?;
    let s = &f.substitution;
    let u = word(s, prefix)?;
    let (sys, tau_u) = return_substitution(s, &u)?;
    let mut r = Report::new(format!("return-sub {} --prefix {prefix}", file.display()));
    header(&mut r);
    r.result("return_words", numbered_words(s.alphabet(), sys.return_words()));
    r.result("return_substitution", tau_u.render());
    let same = tau_u.size() == s.size() && tau_u.equal_up_to_canonical_renaming(s)?;
    r.result(
        "relation_to_input",
        if same { "τ_u = τ up to renaming of letters" } else { "τ_u differs from τ" },
    );
    let theta = sys.coding();
    r.checks_from(&[Check::morphism_identity(
        "Θ_u τ_u = τ Θ_u",
        &theta.compose(tau_u.morphism())?,
        &s.morphism().compose(&theta)?,
    )]);
    let transfer = eigenvalue_transfer_check(s, &u)?;
    r.check("τ and τ_u have the same eigenvalues apart from 0 and roots of unity", transfer, "");
    Ok(r)
}

fn derived(file: &Path, prefix: &str, length: usize) -> Outcome {
    let f = load(file)?;
    let s = &f.substitution;
    let u = word(s, prefix)?;
    let d = derived_prefix(s, &u, length)?;
    let mut r = Report::new(format!("derived {} --prefix {prefix}", file.display()));
    header(&mut r);
    r.config("length", length);
    r.result("return_words", numbered_words(s.alphabet(), d.system.return_words()));
    r.result("derived_prefix", d.system.alphabet().render(&d.letters));
    r.check("agrees with the fixed point of τ_u", true, format!("{length} letters"));
    Ok(r)
}

fn tower(file: &Path, depth: usize) -> Outcome {
    let f = load(file)?;
    let s = &f.substitution;
    let t = derivation_tower(s, depth)?;
    let mut r = Report::new(format!("tower {} --depth {depth}", file.display()));
    header(&mut r);
    r.config("depth", depth);
    let levels: Vec<Value> = t
        .levels
        .iter()
        .enumerate()
        .map(|(k, l)| {
            json!({
                "level": (k + 1).to_string(),
                "prefix": s.alphabet().render(&l.prefix),
                "return_substitution": l.substitution.render(),
            })
        })
        .collect();
    r.result("levels", Value::Array(levels));
    match t.repetition {
        Some((p, q)) => {
            r.result("repetition", format!("τ_u^({p}) = τ_u^({q})"));
        }
        None => {
            r.result("repetition", format!("no repetition <= {depth}"));
            r.exhausted = true;
        }
    }
    Ok(r)
}

fn relations(file: &Path, u: &str, v: &str, l: Option<u32>) -> Outcome {
    let f = load(file)?;
    let s = &f.substitution;
    let (uw, vw) = (word(s, u)?, word(s, v)?);
    let rel = verify_return_relations(s, &uw, &vw)?;
    let mut r = Report::new(format!("relations {} --u {u} --v {v}", file.display()));
    header(&mut r);
    r.result("k", rel.k.to_string());
    r.result("lambda", rel.lambda.render());
    r.result("kappa", rel.kappa.render());
    r.checks_from(&rel.identities);
    r.checks_from(&rel.matrix_checks);
    for (name, w) in [("u", &uw), ("v", &vw)] {
        let ok = eigenvalue_transfer_check(s, w)?;
        r.check(format!("τ and τ_{name} share non-trivial eigenvalues"), ok, "");
    }
    let n0 = two_occurrence_exponent(s, &uw)?;
    let l = l.unwrap_or(n0);
    r.config("l", l);
    let m = matrix_decomposition(s, &uw, l)?;
    r.result("n0", n0.to_string());
    r.result("K_l", matrix(&m.k));
    r.result("Q_l", matrix(&m.q));
    r.result("P_l", matrix(&m.p));
    r.result("H1", rational(&big(m.h1)));
    r.result("H2", rational(&big(m.h2)));
    r.result("Q_bound", rational(&m.q_bound));
    r.result("P_bound", rational(&m.p_bound));
    r.checks_from(&m.checks);
    Ok(r)
}

fn big(x: num_rational::Ratio<u64>) -> num_rational::BigRational {
    num_rational::BigRational::new((*x.numer()).into(), (*x.denom()).into())
}

fn circularity(
    file: &Path,
    prefix: Option<&str>,
    max_len: usize,
    d_max: usize,
    sample_len: usize,
    max_prefix: usize,
) -> Outcome {
    let f = load(file)?;
    let s = &f.substitution;
    let mut r = Report::new(format!("circularity {}", file.display()));
    header(&mut r);
    r.config("max_len", max_len);
    r.config("d_max", d_max);
    r.config("sample_len", sample_len);
    r.config("max_prefix", max_prefix);
    let sync = sync_delay_search(s, d_max, sample_len)?;
    r.config("sample_prefix_len", sync.prefix_len);
    r.result("synchronisation_delay", sync.verdict());
    r.result("factors_checked", sync.factors_checked.to_string());
    if sync.delay.is_none() {
        r.exhausted = true;
    }
    match find_n0(s, max_len, max_prefix)? {
        Some(n) => {
            r.result("n0", n.to_string());
        }
        None => {
            r.result("n0", format!("none <= {max_prefix}"));
            r.exhausted = true;
        }
    }
    if let Some(p) = prefix {
        let u = word(s, p)?;
        let cert = check_injectivity(s, &u, max_len)?;
        r.check(
            format!("τ one to one on return-word concatenations of length <= {max_len}"),
            cert.passed(),
            match &cert.collision {
                None => format!("{} words checked in a prefix of length {}", cert.checked, cert.sample_len),
                Some((a, b)) => format!("τ({}) = τ({})", s.alphabet().render(a), s.alphabet().render(b)),
            },
        );
    }
    Ok(r)
}

fn shared(left: &Path, right: &Path, bound: u32) -> Outcome {
    let (a, b) = (load(left)?, load(right)?);
    let (tau, sigma) = (&a.substitution, &b.substitution);
    let mut r = Report::new(format!("shared --left {} --right {}", left.display(), right.display()));
    header(&mut r);
    r.config("bound", bound);
    r.config("gate_len", gate_length(tau, sigma));
    if let Err(e) = same_fixed_point_gate(tau, sigma) {
        r.check("same fixed point", false, e.to_string());
        return Ok(r);
    }
    r.check("same fixed point", true, format!("first {} letters agree", gate_length(tau, sigma)));
    let pc = power_coincidence(tau, sigma, bound)?;
    r.result("power_coincidence", pc.verdict());
    let sh = shared_fixed_point_analysis(tau, sigma, bound)?;
    r.result("shared_return_substitution", sh.verdict());
    match &sh.witness {
        Some(w) => {
            r.result("u", tau.alphabet().render(&w.u));
            r.result("tau_u", w.tau_u.render());
            r.result("sigma_u", w.sigma_u.render());
            let lhs = w.tau_u.power(w.i)?;
            let rhs = w.sigma_u.power(w.j)?;
            r.checks_from(&[Check::morphism_identity(
                format!("τ_u^{} = σ_u^{}", w.i, w.j),
                lhs.morphism(),
                rhs.morphism(),
            )]);
        }
        None => r.exhausted = true,
    }
    if pc.witness.is_none() {
        r.exhausted = true;
    }
    Ok(r)
}

fn coding(f: &SubstitutionFile, name: &str, path: &Path) -> Result<Morphism, CliError> {
    f.coding(name)
        .ok_or_else(|| CliError::Usage(format!("{}: no coding named {name}", path.display())))
}

fn cobham(left: &Path, right: &Path, cl: &str, cr: &str, bound: u32, check_len: usize) -> Outcome {
    let (a, b) = (load(left)?, load(right)?);
    let (tau, sigma) = (&a.substitution, &b.substitution);
    let (phi_l, phi_r) = (coding(&a, cl, left)?, coding(&b, cr, right)?);
    let mut r = Report::new(format!(
        "cobham --left {} --right {} --coding-left {cl} --coding-right {cr} --bound {bound}",
        left.display(),
        right.display()
    ));
    header(&mut r);
    r.config("bound", bound);
    r.config("check_len", check_len);
    let x = morphic_image_prefix(&phi_l, tau, check_len)?;
    let y = morphic_image_prefix(&phi_r, sigma, check_len)?;
    let (xs, ys): (Vec<&str>, Vec<&str>) = (
        x.iter().map(|&l| phi_l.target().symbol(l)).collect(),
        y.iter().map(|&l| phi_r.target().symbol(l)).collect(),
    );
    let first_diff = xs.iter().zip(&ys).position(|(p, q)| p != q);
    r.check(
        "codings of the fixed points agree",
        first_diff.is_none(),
        match first_diff {
            None => format!("first {check_len} letters"),
            Some(i) => format!("differ at index {i}"),
        },
    );
    r.check("left primitive", tau.is_primitive(), "");
    r.check("right primitive", sigma.is_primitive(), "");
    if !(tau.is_primitive() && sigma.is_primitive()) {
        return Ok(r);
    }
    let (ml, mr) = (tau.incidence_matrix(), sigma.incidence_matrix());
    r.result("char_poly_left", retword::spectrum::char_poly(&ml)?.to_string());
    r.result("char_poly_right", retword::spectrum::char_poly(&mr)?.to_string());
    let search = mult_dependent(&ml, &mr, bound)?;
    r.result("dominant_left", interval(&search.alpha));
    r.result("dominant_right", interval(&search.beta));
    r.result("verdict", search.verdict());
    match &search.witness {
        Some(w) => {
            r.result("witness", format!("({}, {})", w.m, w.n));
            r.result("common_factor", w.certificate.common_factor.to_string());
            let c = &w.certificate;
            let shown = match (c.left.exact(), c.right.exact()) {
                (Some(p), Some(q)) => format!("{p} = {q}"),
                _ => format!("common root in {}", c.intersection),
            };
            r.result("dominant_powers", format!("α^{} = β^{}: {shown}", w.m, w.n));
        }
        None => r.exhausted = true,
    }
    let ns_l = nontrivial_eigenvalue_set(&ml)?;
    let ns_r = nontrivial_eigenvalue_set(&mr)?;
    r.result("nontrivial_left", ns_l.to_string());
    r.result("nontrivial_right", ns_r.to_string());
    Ok(r)
}

fn periodic(file: &Path, period: &str, check_len: usize) -> Outcome {
    let f = load(file)?;
    let tau = &f.substitution;
    let tokens: Vec<String> = if period.contains(char::is_whitespace) {
        period.split_whitespace().map(str::to_owned).collect()
    } else {
        period.chars().map(String::from).collect()
    };
    if tokens.is_empty() {
        return Err(CliError::Usage("--period must be non-empty".into()));
    }
    let mut names: Vec<String> = Vec::new();
    for t in &tokens {
        if !names.contains(t) {
            names.push(t.clone());
        }
    }
    let alphabet = Alphabet::new(names.clone())?;
    let m: Vec<usize> = tokens.iter().map(|t| names.iter().position(|n| n == t).unwrap()).collect();
    let p = build_periodic_presentation(&m, &alphabet, tau)?;
    let rep = verify_presentation(&p, check_len)?;
    let mut r = Report::new(format!("periodic {} --period {period}", file.display()));
    header(&mut r);
    r.config("check_len", check_len);
    r.result("k", p.k.to_string());
    r.result("zeta", p.zeta.render());
    r.result("psi", p.psi.render());
    r.result("phi", p.phi.render());
    r.checks_from(&rep.checks);
    Ok(r)
}
