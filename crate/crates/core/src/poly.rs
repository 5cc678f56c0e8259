//! Exact polynomials with arbitrary-precision integer coefficients.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;
use crate::error::{invalid, Result};

/// Integer polynomial, coefficients in ascending degree order. The zero
/// polynomial has no coefficients; otherwise the last one is non-zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x - r`.
    pub fn linear_root(r: &BigInt) -> Self {
        Self::new(vec![-r.clone(), BigInt::one()])
    }

    /// Monic polynomial with the given integer roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, &r| &acc * &Self::linear_root(&BigInt::from(r)))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    /// gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Divides out the (positive) content only; preserves sign.
    fn without_content(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Multiplicity of the root 0.
    pub fn zero_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Removes the factor `x^k` with `k` the multiplicity of 0.
    pub fn strip_zero_roots(&self) -> Self {
        Self::new(self.coeffs[self.zero_multiplicity()..].to_vec())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `p(x)` at a rational point, computed without fractions.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let Some(d) = self.degree() else { return 0 };
        let (num, den) = (x.numer(), x.denom()); // den > 0
        // Σ c_i num^i den^(d-i)
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        let mut terms = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            terms.push(den_pow.clone());
            den_pow *= den;
        }
        let mut num_pow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &num_pow * &terms[d - i];
            }
            num_pow *= num;
        }
        sign(&acc)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// Division with remainder over the rationals, succeeding only when the
    /// quotient and remainder are integral.
    pub fn div_rem(&self, divisor: &IntPolynomial) -> Option<(IntPolynomial, IntPolynomial)> {
        let dd = divisor.degree()?;
        let lc = divisor.leading()?.clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Some((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient `self / divisor`, if it exists in `Z[x]`.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        match self.div_rem(divisor) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Pseudo-remainder of `self` by `divisor` scaled by the positive factor
    /// `|lc(divisor)|^(deg self - deg divisor + 1)`, so its sign matches the
    /// true remainder's.
    pub fn signed_pseudo_rem(&self, divisor: &IntPolynomial) -> IntPolynomial {
        let dd = divisor.degree().expect("pseudo-remainder by zero polynomial");
        let Some(nd) = self.degree() else { return Self::zero() };
        if nd < dd {
            return self.clone();
        }
        let lc = divisor.leading().unwrap().clone();
        let lc_abs = lc.abs();
        let lc_sign = BigInt::from(sign(&lc));
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            // rem <- |lc| * rem - sign(lc) * top * x^(rd-dd) * divisor
            let top = rem.leading().unwrap().clone();
            let t = divisor.shift(rd - dd).scale(&(&top * &lc_sign));
            rem = &rem.scale(&lc_abs) - &t;
        }
        rem
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.signed_pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// Product of the distinct irreducible factors (primitive, positive leading coefficient).
    pub fn squarefree_part(&self) -> IntPolynomial {
        if self.is_constant() {
            return if self.is_zero() { Self::zero() } else { Self::one() };
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .div_exact(&g)
            .expect("a polynomial is divisible by its gcd with its derivative")
            .primitive_part()
    }

    /// Divides out `factor` as many times as possible.
    pub fn remove_factor(&self, factor: &IntPolynomial) -> (IntPolynomial, usize) {
        let mut p = self.clone();
        let mut k = 0;
        if factor.is_constant() {
            return (p, 0);
        }
        while let Some(q) = p.div_exact(factor) {
            if q.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        (p, k)
    }

    /// Polynomial whose roots are the `k`-th powers of the roots of `self`
    /// (with multiplicity): the characteristic polynomial of `C^k`, `C` the
    /// companion matrix.
    pub fn root_power(&self, k: u32) -> Result<IntPolynomial> {
        let Some(d) = self.degree() else {
            return invalid("root power of the zero polynomial");
        };
        if self.leading() != Some(&BigInt::one()) {
            return invalid("root power needs a monic polynomial");
        }
        if d == 0 {
            return Ok(Self::one());
        }
        let mut c = IntMatrix::zeros(d, d);
        for i in 1..d {
            c.set(i, i - 1, BigInt::one());
        }
        for i in 0..d {
            c.set(i, d - 1, -self.coeff(i));
        }
        crate::spectrum::char_poly(&c.pow(k)?)
    }

    /// `Φ_n`, the `n`-th cyclotomic polynomial.
    pub fn cyclotomic(n: u64) -> IntPolynomial {
        assert!(n >= 1, "cyclotomic index must be positive");
        thread_local! {
            static CACHE: RefCell<HashMap<u64, IntPolynomial>> = RefCell::new(HashMap::new());
        }
        if let Some(p) = CACHE.with(|c| c.borrow().get(&n).cloned()) {
            return p;
        }
        // x^n - 1 = Π_{d | n} Φ_d
        let mut p = Self::one().shift(n as usize);
        p = &p - &Self::one();
        for d in 1..n {
            if n.is_multiple_of(d) {
                p = p
                    .div_exact(&Self::cyclotomic(d))
                    .expect("cyclotomic factors divide x^n - 1");
            }
        }
        CACHE.with(|c| c.borrow_mut().insert(n, p.clone()));
        p
    }

    /// Polynomial with leading coefficient at index 0 for display.
    pub fn to_descending_strings(&self) -> Vec<String> {
        self.coeffs.iter().rev().map(ToString::to_string).collect()
    }
}

pub(crate) fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    /// Conventional notation, e.g. `x^2 - 5x + 4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Sturm chain of the squarefree part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> Self {
        let p0 = p.squarefree_part();
        let mut chain = vec![p0.clone()];
        if p0.is_constant() {
            return SturmChain { chain };
        }
        let mut prev = p0;
        let mut cur = prev.derivative().without_content();
        while !cur.is_zero() {
            let next = (-&prev.signed_pseudo_rem(&cur)).without_content();
            chain.push(cur.clone());
            prev = cur;
            cur = next;
        }
        SturmChain { chain }
    }

    /// The squarefree polynomial the chain was built from.
    pub fn base(&self) -> &IntPolynomial {
        &self.chain[0]
    }

    pub fn sign_changes(&self, x: &BigRational) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_half_open(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b {
            return 0;
        }
        self.sign_changes(a) - self.sign_changes(b)
    }

    /// Number of distinct real roots in `[a, b]`.
    pub fn count_closed(&self, a: &BigRational, b: &BigRational) -> usize {
        if a > b {
            return 0;
        }
        let at_a = usize::from(self.base().sign_at(a) == 0);
        at_a + self.count_half_open(a, b)
    }
}

/// An upper bound on the modulus of every complex root (Cauchy).
pub fn root_bound(p: &IntPolynomial) -> BigInt {
    let Some(lc) = p.leading() else { return BigInt::zero() };
    let lc = lc.abs();
    let max = p.coeffs[..p.coeffs.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    BigInt::one() + max.div_ceil(&lc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn display() {
        assert_eq!(IntPolynomial::from_roots(&[1, 4]).to_string(), "x^2 - 5x + 4");
        assert_eq!(IntPolynomial::from_i64(&[0, -2, 1]).to_string(), "x^2 - 2x");
        assert_eq!(IntPolynomial::from_i64(&[-1]).to_string(), "-1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let p = IntPolynomial::from_roots(&[1, -2, 4]);
        let q1 = p.div_exact(&IntPolynomial::from_roots(&[-2])).unwrap();
        assert_eq!(q1, IntPolynomial::from_roots(&[1, 4]));
        assert!(p.div_exact(&IntPolynomial::from_roots(&[3])).is_none());
        // non-monic divisor: (2x - 1)(x + 3)
        let a = IntPolynomial::from_i64(&[-1, 2]);
        let b = IntPolynomial::from_i64(&[3, 1]);
        assert_eq!((&a * &b).div_exact(&a).unwrap(), b);
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = IntPolynomial::from_roots(&[1, 1, 2, 5]);
        let b = IntPolynomial::from_roots(&[1, 5, 7]);
        assert_eq!(a.gcd(&b), IntPolynomial::from_roots(&[1, 5]));
        assert_eq!(a.squarefree_part(), IntPolynomial::from_roots(&[1, 2, 5]));
        assert_eq!(IntPolynomial::from_roots(&[3]).gcd(&IntPolynomial::from_roots(&[4])), IntPolynomial::one());
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(IntPolynomial::cyclotomic(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(IntPolynomial::cyclotomic(2), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(IntPolynomial::cyclotomic(6), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(IntPolynomial::cyclotomic(12), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
        for n in 1..=60u64 {
            assert_eq!(IntPolynomial::cyclotomic(n).degree(), Some(euler_phi(n) as usize));
        }
    }

    #[test]
    fn sturm_counts_distinct_roots() {
        let p = IntPolynomial::from_roots(&[-2, 1, 1, 4]);
        let s = SturmChain::new(&p);
        assert_eq!(s.count_half_open(&q(-10, 1), &q(10, 1)), 3);
        assert_eq!(s.count_half_open(&q(1, 1), &q(4, 1)), 1);
        assert_eq!(s.count_closed(&q(1, 1), &q(4, 1)), 2);
        assert_eq!(s.count_closed(&q(3, 2), &q(7, 2)), 0);
        // x^2 - x - 1 has one root in (1, 2]
        let fib = IntPolynomial::from_i64(&[-1, -1, 1]);
        assert_eq!(SturmChain::new(&fib).count_half_open(&q(1, 1), &q(2, 1)), 1);
        // no real roots
        let c = IntPolynomial::from_i64(&[1, 0, 1]);
        assert_eq!(SturmChain::new(&c).count_half_open(&q(-5, 1), &q(5, 1)), 0);
    }

    #[test]
    fn sign_evaluation_matches_rational_evaluation() {
        let p = IntPolynomial::from_i64(&[3, -7, 0, 2]);
        for (n, d) in [(1, 3), (-5, 2), (7, 1), (0, 1), (22, 7)] {
            let x = q(n, d);
            let v = p.eval_rational(&x);
            let s = if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 };
            assert_eq!(p.sign_at(&x), s);
        }
    }

    #[test]
    fn root_powers() {
        // roots 1, -2, 4 squared -> 1, 4, 16
        let p = IntPolynomial::from_roots(&[1, -2, 4]);
        assert_eq!(p.root_power(2).unwrap(), IntPolynomial::from_roots(&[1, 4, 16]));
    }
}
