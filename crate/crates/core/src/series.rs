//! Generating-function arithmetic.
//!
//! Three layers: exact integer polynomials, rational functions whose
//! denominators stay in factored form (so displays read like the tables
//! they come from), and plain truncated series for everything that is
//! computed term by term. Rational functions expand to truncated series by
//! long division; all coefficient arithmetic is exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};

/// Dense integer polynomial, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x_power(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Ascending terms. Compact form ("x^3+4x^4") is used inside factored
    /// displays; the spaced form ("x^3 + 4x^4") stands alone.
    pub fn render(&self, compact: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.sign() == Sign::Minus;
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else if compact {
                out.push(if neg { '-' } else { '+' });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.magnitude();
            if k == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            if k > 0 {
                out.push('x');
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// A rational generating function `num / prod(factor_i ^ power_i)`. Every
/// denominator factor has constant term one and positive degree, so the
/// whole function is a well-defined power series. Factors are kept sorted
/// with merged powers; the zero function has an empty denominator.
#[derive(Clone, Debug)]
pub struct RationalGF {
    num: Polynomial,
    den: Vec<(Polynomial, u32)>,
}

impl RationalGF {
    pub fn new(num: Polynomial, den: Vec<(Polynomial, u32)>) -> Self {
        let mut merged: Vec<(Polynomial, u32)> = Vec::new();
        if !num.is_zero() {
            let mut factors = den;
            factors.sort_by(|a, b| a.0.cmp(&b.0));
            for (f, p) in factors {
                if p == 0 || f.is_one() {
                    continue;
                }
                assert!(
                    f.constant_term().is_one() && f.degree().unwrap_or(0) >= 1,
                    "denominator factor must have constant term one and positive degree"
                );
                match merged.last_mut() {
                    Some((last, lp)) if *last == f => *lp += p,
                    _ => merged.push((f, p)),
                }
            }
        }
        Self { num, den: merged }
    }

    pub fn from_polynomial(num: Polynomial) -> Self {
        Self::new(num, Vec::new())
    }

    pub fn zero() -> Self {
        Self::from_polynomial(Polynomial::zero())
    }

    pub fn monomial(k: usize) -> Self {
        Self::from_polynomial(Polynomial::x_power(k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &[(Polynomial, u32)] {
        &self.den
    }

    fn den_expanded(&self) -> Polynomial {
        let mut out = Polynomial::one();
        for (f, p) in &self.den {
            out = &out * &f.pow(*p);
        }
        out
    }

    pub fn mul(&self, rhs: &RationalGF) -> RationalGF {
        if self.is_zero() || rhs.is_zero() {
            return RationalGF::zero();
        }
        let mut den = self.den.clone();
        den.extend(rhs.den.iter().cloned());
        RationalGF::new(&self.num * &rhs.num, den)
    }

    pub fn add(&self, rhs: &RationalGF) -> RationalGF {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // common denominator: every distinct factor at its larger power
        let mut lcm: Vec<(Polynomial, u32)> = self.den.clone();
        for (f, p) in &rhs.den {
            match lcm.iter_mut().find(|(g, _)| g == f) {
                Some((_, q)) => *q = (*q).max(*p),
                None => lcm.push((f.clone(), *p)),
            }
        }
        let scale = |side: &RationalGF| -> Polynomial {
            let mut extra = Polynomial::one();
            for (f, p) in &lcm {
                let have = side
                    .den
                    .iter()
                    .find(|(g, _)| g == f)
                    .map(|(_, q)| *q)
                    .unwrap_or(0);
                extra = &extra * &f.pow(p - have);
            }
            &side.num * &extra
        };
        RationalGF::new(&scale(self) + &scale(rhs), lcm)
    }

    /// Coefficients up to `order` by long division; exact since every
    /// denominator factor starts with one.
    pub fn expand(&self, order: usize) -> TruncatedSeries {
        let den = self.den_expanded();
        let deg = den.degree().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for n in 0..=order {
            let mut acc = self.num.coeff(n);
            for j in 1..=deg.min(n) {
                let prev = coeffs[n - j].clone();
                acc -= den.coeff(j) * prev;
            }
            coeffs[n] = acc;
        }
        TruncatedSeries { coeffs }
    }
}

impl PartialEq for RationalGF {
    /// Equality of the underlying functions: cross-multiplied numerators
    /// agree.
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den_expanded() == &other.num * &self.den_expanded()
    }
}

impl Eq for RationalGF {}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return f.write_str(&self.num.render(false));
        }
        let single_term = self.num.coeffs.iter().filter(|c| !c.is_zero()).count() == 1;
        let num = self.num.render(true);
        if single_term && !num.starts_with('-') {
            write!(f, "{num}/")?;
        } else {
            write!(f, "({num})/")?;
        }
        for (fac, p) in &self.den {
            write!(f, "({})", fac.render(true))?;
            if *p > 1 {
                write!(f, "^{p}")?;
            }
        }
        Ok(())
    }
}

/// Series known only up to a fixed order; `coeffs` has `order + 1` entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        Self { coeffs }
    }

    pub fn from_counts(counts: &[u64], order: usize) -> Self {
        let mut coeffs: Vec<BigInt> = counts.iter().take(order + 1).map(|&c| c.into()).collect();
        coeffs.resize(order + 1, BigInt::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Sum truncated to the shorter order.
    pub fn add(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        Self {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }

    /// Product truncated to the shorter order.
    pub fn mul(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        Self { coeffs }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
