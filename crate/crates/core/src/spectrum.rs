//! Characteristic polynomials and eigenvalue analysis of integer matrices.
//!
//! Everything that is asserted is decided exactly: characteristic
//! polynomials come from a division-free algorithm, real roots are isolated
//! with Sturm chains over rational intervals, and equality of algebraic
//! numbers is certified through gcds. Floating point only appears in the
//! advisory `numeric_roots` and in the screening step of [`mult_dependent`].

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::matrix::{is_primitive, IntMatrix};
use crate::poly::{euler_phi, root_bound, to_f64, IntPolynomial, SturmChain};

/// `det(xI - M)` by Berkowitz's division-free algorithm.
pub fn char_poly(m: &IntMatrix) -> Result<IntPolynomial> {
    if !m.is_square() {
        return invalid(format!(
            "characteristic polynomial of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        ));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(IntPolynomial::one());
    }
    // descending coefficients of the leading principal minors' polynomials
    let mut vect: Vec<BigInt> = vec![BigInt::one(), -m.get(0, 0).clone()];
    for r in 1..n {
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-m.get(r, r).clone());
        // v = A_r^k C, starting from the column above the diagonal
        let mut v: Vec<BigInt> = (0..r).map(|i| m.get(i, r).clone()).collect();
        for _ in 2..=r + 1 {
            let rv: BigInt = (0..r).map(|j| m.get(r, j) * &v[j]).sum();
            t.push(-rv);
            v = (0..r)
                .map(|i| (0..r).map(|j| m.get(i, j) * &v[j]).sum())
                .collect();
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, c) in vect.iter().enumerate().take(i + 1) {
                if i - j < t.len() {
                    *slot += &t[i - j] * c;
                }
            }
        }
        vect = next;
    }
    vect.reverse();
    Ok(IntPolynomial::new(vect))
}

/// Closed rational interval `[lo, hi]` isolating one real root of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootEnclosure {
    pub fn point(x: BigRational) -> Self {
        RootEnclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// The root, when it was found exactly.
    pub fn exact(&self) -> Option<&BigRational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn intersect(&self, other: &RootEnclosure) -> Option<RootEnclosure> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(RootEnclosure { lo, hi })
    }

    /// Interval power for a non-negative enclosure.
    pub fn pow(&self, k: u32) -> RootEnclosure {
        assert!(!self.lo.is_negative(), "interval power needs a non-negative enclosure");
        RootEnclosure {
            lo: num_traits::pow(self.lo.clone(), k as usize),
            hi: num_traits::pow(self.hi.clone(), k as usize),
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        rational_to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(2.into())))
    }
}

impl fmt::Display for RootEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(x) => write!(f, "{x}"),
            None => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

pub(crate) fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| to_f64(x.numer()) / to_f64(x.denom()))
}

fn half(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(2.into())
}

/// `2^-bits` as a rational.
pub fn precision_bits(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// Default enclosure width used when none is requested.
pub fn default_precision() -> BigRational {
    precision_bits(40)
}

/// Narrows an isolating interval `(lo, hi]` of a root of the chain's base
/// polynomial until the width is at most `precision` and `lo` is not a root.
fn refine(chain: &SturmChain, mut lo: BigRational, mut hi: BigRational, precision: &BigRational) -> RootEnclosure {
    let base = chain.base();
    let monic = base.leading().is_some_and(One::is_one);
    if base.sign_at(&hi) == 0 {
        return RootEnclosure::point(hi);
    }
    let mut tested_integer = false;
    loop {
        if monic && !tested_integer && &hi - &lo < BigRational::one() {
            // rational roots of a monic integer polynomial are integers
            tested_integer = true;
            let k = BigRational::from_integer(hi.floor().to_integer());
            if k >= lo && base.sign_at(&k) == 0 {
                return RootEnclosure::point(k);
            }
        }
        if &hi - &lo <= *precision && base.sign_at(&lo) != 0 {
            return RootEnclosure { lo, hi };
        }
        let mid = half(&lo, &hi);
        if base.sign_at(&mid) == 0 {
            if chain.count_half_open(&mid, &hi) == 0 {
                return RootEnclosure::point(mid);
            }
            lo = mid;
            continue;
        }
        if chain.count_half_open(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Isolating intervals `(lo, hi]` for every distinct real root, ascending.
fn isolate(chain: &SturmChain) -> Vec<(BigRational, BigRational)> {
    let base = chain.base();
    if base.is_constant() {
        return Vec::new();
    }
    let b = BigRational::from_integer(root_bound(base));
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone() - BigRational::one(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let c = chain.count_half_open(&lo, &hi);
        if c == 0 {
            continue;
        }
        if c == 1 {
            out.push((lo, hi));
            continue;
        }
        let mid = half(&lo, &hi);
        // right half pushed first so the left half is processed first
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out
}

/// Enclosures of every distinct real root, ascending, each of width at most `precision`.
pub fn real_roots(p: &IntPolynomial, precision: &BigRational) -> Vec<RootEnclosure> {
    let chain = SturmChain::new(p);
    isolate(&chain)
        .into_iter()
        .map(|(lo, hi)| refine(&chain, lo, hi, precision))
        .collect()
}

/// Enclosure of the largest real root of `p`, if `p` has a real root.
pub fn largest_real_root(p: &IntPolynomial, precision: &BigRational) -> Option<RootEnclosure> {
    let chain = SturmChain::new(p);
    let (lo, hi) = isolate(&chain).pop()?;
    Some(refine(&chain, lo, hi, precision))
}

/// Certified enclosure of the dominant (Perron) eigenvalue of a
/// non-negative square matrix, of width at most `precision`.
///
/// The spectral radius of a non-negative matrix is itself an eigenvalue, so
/// it is the largest real root of the characteristic polynomial.
pub fn dominant_eigenvalue(m: &IntMatrix, precision: &BigRational) -> Result<RootEnclosure> {
    if !m.is_square() {
        return invalid("dominant eigenvalue of a non-square matrix");
    }
    if !m.is_nonnegative() {
        return invalid("dominant eigenvalue requires a non-negative matrix");
    }
    if !precision.is_positive() {
        return invalid("precision must be positive");
    }
    let p = char_poly(m)?;
    largest_real_root(&p, precision)
        .ok_or_else(|| Error::InternalInconsistency("non-negative matrix without a real eigenvalue".into()))
}

/// Floating-point approximation of a complex root with an a-posteriori radius.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericRoot {
    pub re: f64,
    pub im: f64,
    /// Some root of the polynomial lies within this distance (`deg·|p/p'|`),
    /// up to floating-point error.
    pub radius: f64,
}

/// Durand–Kerner iteration on the floating-point image of `p`.
pub fn numeric_roots(p: &IntPolynomial) -> Vec<NumericRoot> {
    let Some(d) = p.degree() else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let lc = to_f64(p.leading().unwrap());
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| to_f64(c) / lc).collect();
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let deval = |z: Complex64| {
        coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, &c)| acc * z + c * i as f64)
    };
    let scale = to_f64(&root_bound(p)).max(1.0);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32) * scale * 0.5).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-12, 0.0);
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * scale {
            break;
        }
    }
    let mut roots: Vec<NumericRoot> = z
        .into_iter()
        .map(|r| {
            let dp = deval(r).norm();
            let radius = if dp == 0.0 { f64::INFINITY } else { d as f64 * eval(r).norm() / dp };
            let im = if r.im.abs() < 1e-12 * scale { 0.0 } else { r.im };
            NumericRoot { re: r.re, im, radius }
        })
        .collect();
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

/// Factors removed by [`strip_trivial`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrivialPart {
    /// Multiplicity of the eigenvalue 0.
    pub zero: usize,
    /// `(d, multiplicity)` for each cyclotomic factor `Φ_d`.
    pub cyclotomic: Vec<(u64, usize)>,
}

/// Eigenvalue data of an integer matrix.
///
/// `char_poly = x^zero_multiplicity · Π (x - r)^k over exact_roots · residual_factor`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub char_poly: IntPolynomial,
    pub zero_multiplicity: usize,
    /// Non-zero rational (hence integer) roots with multiplicities, ascending.
    pub exact_roots: Vec<(BigInt, usize)>,
    /// What is left after removing zero and rational roots.
    pub residual_factor: IntPolynomial,
    pub numeric_roots: Vec<NumericRoot>,
    /// Largest real root of `char_poly`; the Perron root for non-negative matrices.
    pub dominant: Option<RootEnclosure>,
    /// Populated by [`strip_trivial`].
    pub removed: TrivialPart,
}

impl Spectrum {
    pub fn of_matrix(m: &IntMatrix) -> Result<Self> {
        Ok(Self::from_char_poly(char_poly(m)?))
    }

    pub fn from_char_poly(p: IntPolynomial) -> Self {
        Self::with_precision(p, &default_precision())
    }

    pub fn with_precision(p: IntPolynomial, precision: &BigRational) -> Self {
        let zero_multiplicity = p.zero_multiplicity();
        let mut rest = p.strip_zero_roots();
        let mut exact_roots = Vec::new();
        let monic = rest.leading().is_some_and(One::is_one);
        let enclosures = real_roots(&rest, precision);
        if monic {
            for e in &enclosures {
                if let Some(r) = e.exact() {
                    if r.is_integer() {
                        let (q, k) = rest.remove_factor(&IntPolynomial::linear_root(&r.to_integer()));
                        rest = q;
                        exact_roots.push((r.to_integer(), k));
                    }
                }
            }
        }
        let dominant = largest_real_root(&p, precision);
        Spectrum {
            numeric_roots: numeric_roots(&rest),
            residual_factor: rest,
            char_poly: p,
            zero_multiplicity,
            exact_roots,
            dominant,
            removed: TrivialPart::default(),
        }
    }

    /// Total number of eigenvalues counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.char_poly.degree().unwrap_or(0)
    }

    /// Eigenvalues as display strings, exact ones first, with multiplicity.
    pub fn eigenvalue_strings(&self) -> Vec<String> {
        let mut out = vec!["0".to_owned(); self.zero_multiplicity];
        for (r, k) in &self.exact_roots {
            out.extend(std::iter::repeat_n(r.to_string(), *k));
        }
        for z in &self.numeric_roots {
            if z.im == 0.0 {
                out.push(format!("≈{:.10}", z.re));
            } else {
                out.push(format!("≈{:.10}{:+.10}i", z.re, z.im));
            }
        }
        out
    }

    /// When every eigenvalue is an integer, the sorted multiset.
    pub fn integer_eigenvalues(&self) -> Option<Vec<BigInt>> {
        if !self.residual_factor.is_constant() {
            return None;
        }
        let mut out = vec![BigInt::zero(); self.zero_multiplicity];
        for (r, k) in &self.exact_roots {
            out.extend(std::iter::repeat_n(r.clone(), *k));
        }
        out.sort();
        Some(out)
    }
}

/// Removes the eigenvalue 0 and every root of unity.
///
/// Cyclotomic factors `Φ_d` are searched exhaustively over `d <= 2·deg²`
/// with `φ(d) <= deg`, which covers every root of unity of degree at most
/// `deg`.
pub fn strip_trivial(s: &Spectrum) -> Spectrum {
    let mut p = s.char_poly.strip_zero_roots();
    let mut removed = TrivialPart {
        zero: s.char_poly.zero_multiplicity() + s.removed.zero,
        cyclotomic: s.removed.cyclotomic.clone(),
    };
    let deg = p.degree().unwrap_or(0) as u64;
    if deg > 0 {
        for d in 1..=2 * deg * deg {
            if euler_phi(d) > p.degree().unwrap_or(0) as u64 {
                continue;
            }
            let (q, k) = p.remove_factor(&IntPolynomial::cyclotomic(d));
            if k > 0 {
                p = q;
                removed.cyclotomic.push((d, k));
            }
            if p.is_constant() {
                break;
            }
        }
    }
    let mut out = Spectrum::from_char_poly(p);
    out.removed = removed;
    out
}

/// Squarefree part of the characteristic polynomial after [`strip_trivial`]:
/// a canonical representative of the non-trivial eigenvalue set.
pub fn nontrivial_eigenvalue_set(m: &IntMatrix) -> Result<IntPolynomial> {
    let s = strip_trivial(&Spectrum::of_matrix(m)?);
    Ok(s.char_poly.squarefree_part())
}

/// True iff both matrices have the same eigenvalue set once 0 and roots of
/// unity are discarded. Multiplicities are ignored.
pub fn spectra_equal_mod_trivial(m1: &IntMatrix, m2: &IntMatrix) -> Result<bool> {
    Ok(nontrivial_eigenvalue_set(m1)? == nontrivial_eigenvalue_set(m2)?)
}

/// Cooperative cancellation flag for long searches.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

/// Exact evidence that `α^m = β^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct EqualityCertificate {
    /// gcd of the characteristic polynomials of `M1^m` and `M2^n`.
    pub common_factor: IntPolynomial,
    pub left: RootEnclosure,
    pub right: RootEnclosure,
    pub intersection: RootEnclosure,
    /// Sturm count of `common_factor` on the intersection; 1 when certified.
    pub root_count: usize,
}

/// A pair `(m, n)` with `α^m = β^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DependenceWitness {
    pub m: u32,
    pub n: u32,
    pub certified: bool,
    pub certificate: EqualityCertificate,
}

/// Outcome of a bounded dependence search.
#[derive(Clone, Debug, PartialEq)]
pub struct DependenceSearch {
    pub bound: u32,
    pub alpha: RootEnclosure,
    pub beta: RootEnclosure,
    /// Pairs passing the floating-point screen.
    pub candidates: Vec<(u32, u32)>,
    pub witness: Option<DependenceWitness>,
}

impl DependenceSearch {
    /// One-line verdict; absence is always stated relative to the bound.
    pub fn verdict(&self) -> String {
        match &self.witness {
            Some(w) => format!(
                "multiplicatively dependent: α^{} = β^{} (certified exactly)",
                w.m, w.n
            ),
            None => format!("no witness ≤ {}", self.bound),
        }
    }
}

/// Decides whether the dominant roots of `a` and `b` coincide, exactly.
pub fn certify_equal_dominant(a: &IntMatrix, b: &IntMatrix) -> Result<Option<EqualityCertificate>> {
    let pa = char_poly(a)?;
    let pb = char_poly(b)?;
    let prec = default_precision();
    let left = largest_real_root(&pa, &prec)
        .ok_or_else(|| Error::InternalInconsistency("no real eigenvalue".into()))?;
    let right = largest_real_root(&pb, &prec)
        .ok_or_else(|| Error::InternalInconsistency("no real eigenvalue".into()))?;
    let Some(intersection) = left.intersect(&right) else {
        return Ok(None);
    };
    let g = pa.gcd(&pb);
    if g.is_constant() {
        return Ok(None);
    }
    let root_count = SturmChain::new(&g).count_closed(&intersection.lo, &intersection.hi);
    if root_count != 1 {
        return Ok(None);
    }
    Ok(Some(EqualityCertificate {
        common_factor: g,
        left,
        right,
        intersection,
        root_count,
    }))
}

/// Searches `1 <= m, n <= bound` for `α^m = β^n`, `α`, `β` the dominant
/// eigenvalues of two primitive matrices. Candidates come from a
/// floating-point screen of `m·ln α - n·ln β`; each is then certified
/// exactly by [`certify_equal_dominant`] on `M1^m` and `M2^n`. The least
/// certified pair in `(m, n)` lexicographic order is returned.
pub fn mult_dependent(m1: &IntMatrix, m2: &IntMatrix, bound: u32) -> Result<DependenceSearch> {
    mult_dependent_with_cancel(m1, m2, bound, &CancelToken::new())
}

pub fn mult_dependent_with_cancel(
    m1: &IntMatrix,
    m2: &IntMatrix,
    bound: u32,
    cancel: &CancelToken,
) -> Result<DependenceSearch> {
    for (name, m) in [("left", m1), ("right", m2)] {
        if !m.is_square() || !m.is_nonnegative() || !is_primitive(m)?.primitive {
            return invalid(format!("{name} matrix is not primitive"));
        }
    }
    if bound == 0 {
        return invalid("dependence search bound must be positive");
    }
    let prec = precision_bits(64);
    let alpha = dominant_eigenvalue(m1, &prec)?;
    let beta = dominant_eigenvalue(m2, &prec)?;
    let la = alpha.midpoint_f64().ln();
    let lb = beta.midpoint_f64().ln();
    let mut out = DependenceSearch {
        bound,
        alpha,
        beta,
        candidates: Vec::new(),
        witness: None,
    };
    for m in 1..=bound {
        if cancel.is_cancelled() {
            return Err(Error::Cancelled);
        }
        for n in 1..=bound {
            let lhs = m as f64 * la;
            let rhs = n as f64 * lb;
            let scale = lhs.abs().max(rhs.abs()).max(1.0);
            if (lhs - rhs).abs() > 1e-9 * scale {
                continue;
            }
            out.candidates.push((m, n));
            if let Some(certificate) = certify_equal_dominant(&m1.pow(m)?, &m2.pow(n)?)? {
                out.witness = Some(DependenceWitness {
                    m,
                    n,
                    certified: true,
                    certificate,
                });
                return Ok(out);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn counterexample_char_polys() {
        let t = corpus::counterexample_tau().incidence_matrix();
        assert_eq!(char_poly(&t).unwrap(), IntPolynomial::from_roots(&[1, 4]));
        let s = corpus::counterexample_sigma().incidence_matrix();
        assert_eq!(char_poly(&s).unwrap(), IntPolynomial::from_i64(&[8, -6, -3, 1]));
        assert_eq!(char_poly(&s).unwrap(), IntPolynomial::from_roots(&[1, -2, 4]));
        assert_eq!(
            char_poly(&IntMatrix::identity(2)).unwrap(),
            IntPolynomial::from_roots(&[1, 1])
        );
        assert!(char_poly(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn dominant_examples() {
        let t = corpus::counterexample_tau().incidence_matrix();
        let e = dominant_eigenvalue(&t, &precision_bits(30)).unwrap();
        assert_eq!(e.exact(), Some(&q(4, 1)));

        let fib = corpus::fibonacci().incidence_matrix();
        let e = dominant_eigenvalue(&fib, &q(1, 1_000_000_000)).unwrap();
        assert!(e.width() <= q(1, 1_000_000_000));
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(rational_to_f64(&e.lo) <= golden && golden <= rational_to_f64(&e.hi));

        let z = dominant_eigenvalue(&IntMatrix::zeros(3, 3), &q(1, 100)).unwrap();
        assert_eq!(z.exact(), Some(&q(0, 1)));
    }

    #[test]
    fn strip_examples() {
        let morse = Spectrum::of_matrix(&corpus::morse().incidence_matrix()).unwrap();
        assert_eq!(morse.integer_eigenvalues().unwrap(), vec![BigInt::zero(), BigInt::from(2)]);
        let stripped = strip_trivial(&morse);
        assert_eq!(stripped.char_poly, IntPolynomial::from_roots(&[2]));

        // eigenvalues 0, 0, -1, 2
        let p = IntPolynomial::from_roots(&[0, 0, -1, 2]);
        let s = strip_trivial(&Spectrum::from_char_poly(p));
        assert_eq!(s.char_poly, IntPolynomial::from_roots(&[2]));
        assert_eq!(s.removed.zero, 2);
        assert_eq!(s.removed.cyclotomic, vec![(2, 1)]);

        let id = strip_trivial(&Spectrum::of_matrix(&IntMatrix::identity(3)).unwrap());
        assert!(id.char_poly.is_constant());
        assert!(id.dominant.is_none());
    }

    #[test]
    fn strip_is_idempotent_on_mixed_factors() {
        // Φ_5 · Φ_3 · (x^2 - x - 1) · x
        let p = &(&IntPolynomial::cyclotomic(5) * &IntPolynomial::cyclotomic(3))
            * &IntPolynomial::from_i64(&[0, -1, -1, 1]);
        let once = strip_trivial(&Spectrum::from_char_poly(p));
        assert_eq!(once.char_poly, IntPolynomial::from_i64(&[-1, -1, 1]));
        let twice = strip_trivial(&once);
        assert_eq!(twice.char_poly, once.char_poly);
    }

    #[test]
    fn spectrum_factorisation_invariant() {
        let s = Spectrum::of_matrix(&corpus::counterexample_sigma().incidence_matrix()).unwrap();
        let mut rebuilt = s.residual_factor.shift(s.zero_multiplicity);
        for (r, k) in &s.exact_roots {
            for _ in 0..*k {
                rebuilt = &rebuilt * &IntPolynomial::linear_root(r);
            }
        }
        assert_eq!(rebuilt, s.char_poly);
        assert!(s.residual_factor.is_constant());
    }

    #[test]
    fn spectra_comparison() {
        let fib = corpus::fibonacci().incidence_matrix();
        let fib2 = fib.pow(2).unwrap();
        assert!(!spectra_equal_mod_trivial(&fib, &fib2).unwrap());
        assert!(spectra_equal_mod_trivial(&fib, &fib).unwrap());
        assert_eq!(nontrivial_eigenvalue_set(&fib).unwrap(), IntPolynomial::from_i64(&[-1, -1, 1]));
        assert_eq!(nontrivial_eigenvalue_set(&fib2).unwrap(), IntPolynomial::from_i64(&[1, -3, 1]));
    }

    #[test]
    fn numeric_roots_of_golden_polynomial() {
        let r = numeric_roots(&IntPolynomial::from_i64(&[-1, -1, 1]));
        assert_eq!(r.len(), 2);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((r[1].re - golden).abs() < 1e-12);
        assert!((r[0].re + 1.0 / golden).abs() < 1e-12);
        assert!(r.iter().all(|z| z.radius < 1e-9));
    }

    #[test]
    fn dependence_examples() {
        let t = corpus::counterexample_tau().incidence_matrix();
        let s = corpus::counterexample_sigma().incidence_matrix();
        let w = mult_dependent(&t, &s, 12).unwrap().witness.unwrap();
        assert_eq!((w.m, w.n), (1, 1));
        assert!(w.certified);

        let fib = corpus::fibonacci().incidence_matrix();
        let w = mult_dependent(&fib, &fib.pow(2).unwrap(), 12).unwrap().witness.unwrap();
        assert_eq!((w.m, w.n), (2, 1));

        assert!(mult_dependent(&IntMatrix::identity(2), &t, 3).is_err());
    }

    #[test]
    fn cancellation() {
        let t = corpus::counterexample_tau().incidence_matrix();
        let c = CancelToken::new();
        c.cancel();
        assert_eq!(
            mult_dependent_with_cancel(&t, &t, 4, &c),
            Err(Error::Cancelled)
        );
    }
}
