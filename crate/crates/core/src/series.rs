//! Univariate polynomials and rational generating functions whose
//! denominators are products of `(1 - y^a)^m`.
//!
//! Coefficients are generic over any commutative ring from `num-traits`;
//! the closed forms use [`BigInt`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Coefficient ring for [`Poly`] and [`RationalGf`].
pub trait Coefficient:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Coefficient for T where
    T: Clone + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Dense polynomial in `y`; index is the exponent. Trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    pub fn monomial(c: C, exp: usize) -> Self {
        let mut coeffs = vec![C::zero(); exp + 1];
        coeffs[exp] = c;
        Self::new(coeffs)
    }

    /// `1 - y^a`.
    pub fn one_minus_power(a: usize) -> Self {
        let mut p = Self::monomial(-C::one(), a);
        p = p + Self::one();
        p
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `y^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, y: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * y.clone() + c.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Product truncated to exponents `<= n`.
    pub fn mul_truncated(&self, other: &Self, n: usize) -> Self {
        let len = (n + 1).min((self.coeffs.len() + other.coeffs.len()).saturating_sub(1));
        let mut out = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n + 1).cloned().collect())
    }
}

impl<C: Coefficient> Add for Poly<C> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<C: Coefficient> Sub for Poly<C> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<C: Coefficient> Neg for Poly<C> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(Neg::neg).collect())
    }
}

impl<C: Coefficient> Mul for &Poly<C> {
    type Output = Poly<C>;

    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 2;
        self.mul_truncated(rhs, n)
    }
}

impl<C: Coefficient> Mul for Poly<C> {
    type Output = Poly<C>;

    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => f.write_str("y")?,
                1 => write!(f, "{c}*y")?,
                _ if c.is_one() => write!(f, "y^{i}")?,
                _ => write!(f, "{c}*y^{i}")?,
            }
        }
        Ok(())
    }
}

/// `numerator / Π (1 - y^a)^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGf<C> {
    numerator: Poly<C>,
    /// `(a, m)` pairs, sorted by `a`, each `a` once, all `a, m >= 1`.
    denominator: Vec<(u32, u32)>,
}

impl<C: Coefficient> RationalGf<C> {
    /// Panics if any order or multiplicity is zero.
    pub fn new(numerator: Poly<C>, factors: &[(u32, u32)]) -> Self {
        let mut denominator: Vec<(u32, u32)> = Vec::new();
        for &(a, m) in factors {
            assert!(a >= 1 && m >= 1, "denominator factor (1 - y^{a})^{m} is not allowed");
            match denominator.iter_mut().find(|(b, _)| *b == a) {
                Some(slot) => slot.1 += m,
                None => denominator.push((a, m)),
            }
        }
        denominator.sort_unstable();
        Self { numerator, denominator }
    }

    pub fn numerator(&self) -> &Poly<C> {
        &self.numerator
    }

    pub fn denominator(&self) -> &[(u32, u32)] {
        &self.denominator
    }

    /// The denominator multiplied out.
    pub fn denominator_poly(&self) -> Poly<C> {
        self.denominator
            .iter()
            .fold(Poly::one(), |acc, &(a, m)| &acc * &Poly::one_minus_power(a as usize).pow(m))
    }

    /// First `n + 1` Taylor coefficients at `y = 0`.
    ///
    /// Each `1/(1 - y^a)` acts as a running sum with stride `a`.
    pub fn expand(&self, n: usize) -> Vec<C> {
        let mut c: Vec<C> = (0..=n).map(|i| self.numerator.coeff(i)).collect();
        for &(a, m) in &self.denominator {
            let a = a as usize;
            for _ in 0..m {
                for i in a..=n {
                    c[i] = c[i].clone() + c[i - a].clone();
                }
            }
        }
        c
    }

    /// Sum over the common denominator.
    pub fn add_same_denominator(&self, other: &Self) -> Option<Self> {
        (self.denominator == other.denominator).then(|| Self {
            numerator: self.numerator.clone() + other.numerator.clone(),
            denominator: self.denominator.clone(),
        })
    }

    /// Period of the counting quasi-polynomial: lcm of the denominator orders.
    pub fn quasi_period(&self) -> u64 {
        self.denominator
            .iter()
            .fold(1u64, |acc, &(a, _)| num_integer::lcm(acc, u64::from(a)))
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for RationalGf<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        if self.denominator.is_empty() {
            return Ok(());
        }
        f.write_str(" / (")?;
        for (i, &(a, m)) in self.denominator.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match (a, m) {
                (1, 1) => f.write_str("(1-y)")?,
                (1, m) => write!(f, "(1-y)^{m}")?,
                (a, 1) => write!(f, "(1-y^{a})")?,
                (a, m) => write!(f, "(1-y^{a})^{m}")?,
            }
        }
        f.write_str(")")
    }
}

/// k-th forward difference of a sequence (length shrinks by `k`).
pub fn forward_difference<C: Coefficient>(seq: &[C], k: usize) -> Vec<C> {
    let mut cur = seq.to_vec();
    for _ in 0..k {
        cur = cur.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    }
    cur
}

fn int_poly(coeffs: &[i64]) -> Poly<BigInt> {
    Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

/// Count of all magic labellings by magic sum: `(1 + 3y + 3y^2 + y^3) / (1 - y)^6`.
pub fn closed_form_g() -> RationalGf<BigInt> {
    RationalGf::new(int_poly(&[1, 3, 3, 1]), &[(1, 6)])
}

const GSTAR_NUMERATOR: &str = include_str!("../data/gstar_numerator.txt");

/// The 87-coefficient factor `N` in the numerator of the distinct series.
pub fn gstar_numerator_factor() -> Poly<BigInt> {
    let coeffs = GSTAR_NUMERATOR
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.parse::<BigInt>().expect("numeric coefficient"))
        .collect();
    Poly::new(coeffs)
}

/// Orbit counts of distinct magic labellings:
/// `y^17 (1-y)^4 (1-y^2)^2 N / ((1-y^3)(1-y^16) Π_{i=5}^{14} (1-y^i))`.
pub fn closed_form_gstar() -> RationalGf<BigInt> {
    let numerator = &(&(&Poly::monomial(BigInt::one(), 17) * &Poly::one_minus_power(1).pow(4))
        * &Poly::one_minus_power(2).pow(2))
        * &gstar_numerator_factor();
    let mut factors = vec![(3, 1), (16, 1)];
    factors.extend((5..=14).map(|i| (i, 1)));
    RationalGf::new(numerator, &factors)
}

fn constrained_specialized() -> RationalGf<BigInt> {
    RationalGf::new(Poly::monomial(BigInt::one(), 8), &[(1, 4), (4, 1)])
}

/// The x6-second-smallest constrained series at every edge variable set to 1.
pub fn closed_form_f1_specialized() -> RationalGf<BigInt> {
    constrained_specialized()
}

/// The x4-second-smallest constrained series at every edge variable set to 1.
pub fn closed_form_f2_specialized() -> RationalGf<BigInt> {
    constrained_specialized()
}
