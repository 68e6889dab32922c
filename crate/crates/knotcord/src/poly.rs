//! Integer polynomial arithmetic: dense polynomials over `BigInt` and the
//! symmetric Laurent polynomials that hold Alexander polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Dense polynomial over the integers, coefficients ascending, no trailing
/// zeros. The empty vector is the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn one() -> Self {
        IntPoly(vec![BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = IntPoly(vec![c]);
        p.normalize();
        p
    }

    pub fn from_coeffs(c: Vec<BigInt>) -> Self {
        let mut p = IntPoly(c);
        p.normalize();
        p
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn normalize(&mut self) {
        while self.0.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; zero polynomial reports degree 0 by convention of callers
    /// that have already excluded it.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.0.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder; requires the division to stay integral,
    /// which holds for monic divisors and for exact divisions.
    /// Returns None when an intermediate coefficient fails to divide.
    pub fn div_rem_exact(&self, divisor: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let d = divisor.degree();
        let lead = divisor.leading();
        if rem.len() <= d {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = rem[i].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            quot[i - d] = q.clone();
            for j in 0..=d {
                let delta = &q * &divisor.0[j];
                rem[i - d + j] -= delta;
            }
        }
        Some((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }

    /// Exact division; panics if the divisor does not divide.
    pub fn div_exact(&self, divisor: &IntPoly) -> IntPoly {
        let (q, r) = self
            .div_rem_exact(divisor)
            .expect("exact polynomial division failed on a coefficient");
        assert!(r.is_zero(), "exact polynomial division left a remainder");
        q
    }

    pub fn derivative(&self) -> IntPoly {
        if self.0.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        IntPoly::from_coeffs(self.0.iter().map(|a| a / &c).collect())
    }

    /// GCD via the primitive pseudo-remainder sequence; result is primitive
    /// with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Pseudo-remainder: remainder of `lc(b)^(deg a - deg b + 1) * a` by `b`.
    fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let mut a = self.clone();
        let db = b.degree();
        let lb = b.leading();
        while !a.is_zero() && a.degree() >= db {
            let da = a.degree();
            let la = a.leading();
            let mut shifted = vec![BigInt::zero(); da - db];
            shifted.extend(b.0.iter().map(|c| c * &la));
            a = a.scale(&lb).sub(&IntPoly::from_coeffs(shifted));
            if !a.is_zero() && a.degree() == da {
                break; // cancellation failed; cannot happen with exact arithmetic
            }
        }
        a
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Reciprocal polynomial `x^deg * p(1/x)`, normalized primitive with
    /// positive leading coefficient. Requires a nonzero constant term.
    pub fn reciprocal_primitive(&self) -> IntPoly {
        assert!(!self.coeff(0).is_zero(), "reciprocal needs nonzero constant term");
        let mut c = self.0.clone();
        c.reverse();
        IntPoly::from_coeffs(c).primitive()
    }

    pub fn max_coeff_abs(&self) -> BigInt {
        self.0
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Integer Laurent polynomial: finite map exponent -> coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        let mut c = BTreeMap::new();
        c.insert(0, BigInt::one());
        LaurentPoly { coeffs: c }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = coeffs.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&e);
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn from_i64_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms = Vec::new();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                terms.push((e1 + e2, c1 * c2));
            }
        }
        LaurentPoly::from_terms(terms)
    }

    /// Substitution t -> 1/t.
    pub fn invert_variable(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (-e, c.clone())))
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn eval_at_minus_one(&self) -> BigInt {
        self.terms()
            .map(|(e, c)| if e.rem_euclid(2) == 0 { c.clone() } else { -c })
            .sum()
    }

    /// True when the polynomial is fixed by t -> 1/t.
    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_variable()
    }

    /// Canonical form up to units: recenter exponents so that
    /// min = -max, and flip the sign so the top coefficient is positive.
    /// Returns None when the exponent span is odd (no symmetric recentering
    /// exists).
    pub fn normalized_symmetric(&self) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        if (hi - lo) % 2 != 0 {
            return None;
        }
        let shift = (hi + lo) / 2;
        let flip = self.coeffs.get(&hi).map(|c| c.is_negative()).unwrap_or(false);
        Some(LaurentPoly::from_terms(self.terms().map(|(e, c)| {
            (e - shift, if flip { -c } else { c.clone() })
        })))
    }

    /// The ordinary polynomial sharing the unit class: coefficients shifted
    /// to start at exponent zero.
    pub fn to_int_poly(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        let mut out = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in self.terms() {
            out[(e - lo) as usize] = c.clone();
        }
        IntPoly::from_coeffs(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if *e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intpoly_basic_ops() {
        let p = IntPoly::from_i64(&[1, -1, 1]); // 1 - t + t^2
        let q = IntPoly::from_i64(&[-1, 1]); // t - 1
        assert_eq!(p.mul(&q), IntPoly::from_i64(&[-1, 2, -2, 1]));
        assert_eq!(p.mul(&q).div_exact(&q), p);
        assert_eq!(p.eval(&BigInt::from(2)), BigInt::from(3));
        assert_eq!(p.derivative(), IntPoly::from_i64(&[-1, 2]));
    }

    #[test]
    fn intpoly_gcd() {
        let p = IntPoly::from_i64(&[-1, 0, 1]); // (t-1)(t+1)
        let q = IntPoly::from_i64(&[1, 2, 1]); // (t+1)^2
        assert_eq!(p.gcd(&q), IntPoly::from_i64(&[1, 1]));
        let r = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(p.gcd(&r), IntPoly::one());
        // contents are stripped
        assert_eq!(
            IntPoly::from_i64(&[2, 2]).gcd(&IntPoly::from_i64(&[4, 4])),
            IntPoly::from_i64(&[1, 1])
        );
    }

    #[test]
    fn intpoly_reciprocal() {
        let p = IntPoly::from_i64(&[-1, 2]); // 2t - 1
        assert_eq!(p.reciprocal_primitive(), IntPoly::from_i64(&[2, -1]).primitive());
        let pal = IntPoly::from_i64(&[18, -35, 18]);
        assert_eq!(pal.reciprocal_primitive(), pal);
    }

    #[test]
    fn laurent_normalization() {
        // t^2 - t + 1 recenters to t - 1 + t^-1
        let p = LaurentPoly::from_i64_terms(&[(0, 1), (1, -1), (2, 1)]);
        let n = p.normalized_symmetric().unwrap();
        assert_eq!(n, LaurentPoly::from_i64_terms(&[(-1, 1), (0, -1), (1, 1)]));
        assert!(n.is_symmetric());
        assert_eq!(n.eval_at_one(), BigInt::one());
        assert_eq!(n.eval_at_minus_one(), BigInt::from(-3));

        // negative leading coefficient flips
        let m = LaurentPoly::from_i64_terms(&[(0, -1), (1, 1), (2, -1)]);
        assert_eq!(
            m.normalized_symmetric().unwrap(),
            LaurentPoly::from_i64_terms(&[(-1, 1), (0, -1), (1, 1)])
        );

        // odd span has no symmetric form
        assert!(LaurentPoly::from_i64_terms(&[(0, 1), (1, 1)])
            .normalized_symmetric()
            .is_none());
    }

    #[test]
    fn laurent_product_and_display() {
        let a = LaurentPoly::from_i64_terms(&[(-1, 2), (0, -5), (1, 2)]);
        let b = LaurentPoly::one();
        assert_eq!(a.mul(&b), a);
        assert_eq!(a.to_string(), "2*t - 5 + 2*t^-1");
        assert_eq!(a.to_int_poly(), IntPoly::from_i64(&[2, -5, 2]));
    }
}
