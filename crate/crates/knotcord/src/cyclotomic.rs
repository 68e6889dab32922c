//! Exact arithmetic in Z[x]/Φ_q(x) and certified sign determination of
//! real cyclotomic values.
//!
//! Elements of the ring are coefficient vectors of length deg(Φ_q). Matrix
//! work (characteristic polynomials) runs on an i128 fast path with checked
//! arithmetic and falls back to `BigInt` on overflow. Signs of nonzero real
//! values are decided exactly for deg <= 2 and otherwise by rational
//! interval arithmetic with adaptive precision; zero is decided exactly by
//! the canonical representation, so the interval refinement always
//! terminates on nonzero input.

use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Refinement cap was hit before a sign could be certified. Unreachable
/// for nonzero real values; surfaced instead of looping forever.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionExhausted;

/// The q-th cyclotomic polynomial, computed by dividing x^q - 1 by the
/// cyclotomic polynomials of the proper divisors of q.
pub fn cyclotomic_poly(q: u64) -> IntPoly {
    assert!(q >= 1);
    if q == 1 {
        return IntPoly::from_i64(&[-1, 1]);
    }
    let mut num = vec![BigInt::zero(); (q + 1) as usize];
    num[0] = -BigInt::one();
    num[q as usize] = BigInt::one();
    let mut poly = IntPoly::from_coeffs(num);
    for d in 1..q {
        if q % d == 0 {
            poly = poly.div_exact(&cyclotomic_poly(d));
        }
    }
    poly
}

/// Arithmetic context for a fixed q.
pub struct CycloCtx {
    pub q: u64,
    pub deg: usize,
    /// Monic Φ_q as i64 coefficients (all in {-1, 0, 1} for q < 105).
    phi: Vec<i64>,
}

impl CycloCtx {
    pub fn new(q: u64) -> Self {
        let phi_poly = cyclotomic_poly(q);
        let deg = phi_poly.degree();
        let phi: Vec<i64> = (0..=deg)
            .map(|i| {
                phi_poly
                    .coeff(i)
                    .to_i64()
                    .expect("cyclotomic coefficients fit i64 for small q")
            })
            .collect();
        CycloCtx { q, deg, phi }
    }

    /// Shared per-q context, cached process-wide.
    pub fn shared(q: u64) -> Arc<CycloCtx> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloCtx>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = cache.lock().unwrap();
        map.entry(q).or_insert_with(|| Arc::new(CycloCtx::new(q))).clone()
    }

    pub fn zero_big(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.deg]
    }

    pub fn one_big(&self) -> Vec<BigInt> {
        let mut v = self.zero_big();
        v[0] = BigInt::one();
        v
    }

    /// Reduce an arbitrary coefficient vector mod Φ_q into length `deg`.
    pub fn reduce_big(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.deg;
        let mut i = v.len();
        while i > d {
            i -= 1;
            if v[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut v[i], BigInt::zero());
            for j in 0..d {
                if self.phi[j] != 0 {
                    let delta = &c * self.phi[j];
                    v[i - d + j] -= delta;
                }
            }
        }
        v.resize(d, BigInt::zero());
        v
    }

    pub fn reduce_i128(&self, mut v: Vec<i128>) -> Option<Vec<i128>> {
        let d = self.deg;
        let mut i = v.len();
        while i > d {
            i -= 1;
            if v[i] == 0 {
                continue;
            }
            let c = std::mem::replace(&mut v[i], 0);
            for j in 0..d {
                if self.phi[j] != 0 {
                    let delta = c.checked_mul(self.phi[j] as i128)?;
                    v[i - d + j] = v[i - d + j].checked_sub(delta)?;
                }
            }
        }
        v.resize(d, 0);
        Some(v)
    }

    pub fn mul_big(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut prod = vec![BigInt::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        self.reduce_big(prod)
    }

    pub fn mul_i128(&self, a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
        let mut prod = vec![0i128; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                prod[i + j] = prod[i + j].checked_add(x.checked_mul(y)?)?;
            }
        }
        self.reduce_i128(prod)
    }

    /// x^k mod Φ_q as an element; exponents reduce mod q since ω^q = 1.
    pub fn omega_power(&self, k: u64) -> Vec<BigInt> {
        let e = (k % self.q) as usize;
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::one();
        self.reduce_big(v)
    }
}

// ---------------------------------------------------------------------------
// Characteristic polynomials over Z[ω] by the Faddeev-LeVerrier recursion.
// ---------------------------------------------------------------------------

/// Scalar specialization for deg(Φ_q) = 1 (ω = ±1): matrix row-major,
/// plain integers, no per-element allocation.
pub fn char_poly_scalar_i128(m: &[i128], n: usize) -> Option<Vec<i128>> {
    debug_assert_eq!(m.len(), n * n);
    let mut b: Vec<i128> = (0..n * n)
        .map(|i| if i % (n + 1) == 0 { 1 } else { 0 })
        .collect();
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(1i128);
    let mut ak = vec![0i128; n * n];
    for k in 1..=n {
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = 0;
                for l in 0..n {
                    acc = acc.checked_add(m[i * n + l].checked_mul(b[l * n + j])?)?;
                }
                ak[i * n + j] = acc;
            }
        }
        let mut tr: i128 = 0;
        for i in 0..n {
            tr = tr.checked_add(ak[i * n + i])?;
        }
        let kk = k as i128;
        debug_assert_eq!(tr % kk, 0);
        let ck = -(tr / kk);
        for i in 0..n {
            ak[i * n + i] = ak[i * n + i].checked_add(ck)?;
        }
        std::mem::swap(&mut b, &mut ak);
        coeffs.push(ck);
    }
    Some(coeffs)
}

/// Coefficients `[1, c1, ..., cn]` of `det(λI - M) = λ^n + c1 λ^{n-1} + ...`
/// for a matrix of cyclotomic elements. i128 path; None on overflow.
pub fn char_poly_i128(ctx: &CycloCtx, m: &[Vec<Vec<i128>>]) -> Option<Vec<Vec<i128>>> {
    let n = m.len();
    let d = ctx.deg;
    let zero = vec![0i128; d];
    let mut one = vec![0i128; d];
    one[0] = 1;

    let mut b: Vec<Vec<Vec<i128>>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
        .collect();
    let mut coeffs = vec![one.clone()];

    for k in 1..=n {
        // Ak = M * B
        let mut ak: Vec<Vec<Vec<i128>>> = vec![vec![zero.clone(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero.clone();
                for l in 0..n {
                    let prod = ctx.mul_i128(&m[i][l], &b[l][j])?;
                    for t in 0..d {
                        acc[t] = acc[t].checked_add(prod[t])?;
                    }
                }
                ak[i][j] = acc;
            }
        }
        // ck = -tr(Ak)/k
        let mut tr = zero.clone();
        for i in 0..n {
            for t in 0..d {
                tr[t] = tr[t].checked_add(ak[i][i][t])?;
            }
        }
        let kk = k as i128;
        let ck: Vec<i128> = tr
            .iter()
            .map(|&x| {
                debug_assert_eq!(x % kk, 0, "Faddeev-LeVerrier trace division must be exact");
                -(x / kk)
            })
            .collect();
        // B = Ak + ck I
        for i in 0..n {
            for t in 0..d {
                ak[i][i][t] = ak[i][i][t].checked_add(ck[t])?;
            }
        }
        b = ak;
        coeffs.push(ck);
    }
    Some(coeffs)
}

/// `BigInt` version of [`char_poly_i128`]; never overflows.
pub fn char_poly_big(ctx: &CycloCtx, m: &[Vec<Vec<BigInt>>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let d = ctx.deg;
    let zero = ctx.zero_big();
    let one = ctx.one_big();

    let mut b: Vec<Vec<Vec<BigInt>>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
        .collect();
    let mut coeffs = vec![one.clone()];

    for k in 1..=n {
        let mut ak: Vec<Vec<Vec<BigInt>>> = vec![vec![zero.clone(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero.clone();
                for l in 0..n {
                    let prod = ctx.mul_big(&m[i][l], &b[l][j]);
                    for t in 0..d {
                        acc[t] += &prod[t];
                    }
                }
                ak[i][j] = acc;
            }
        }
        let mut tr = zero.clone();
        for i in 0..n {
            for t in 0..d {
                tr[t] += &ak[i][i][t];
            }
        }
        let kk = BigInt::from(k);
        let ck: Vec<BigInt> = tr
            .iter()
            .map(|x| {
                let (q, r) = num_integer::Integer::div_rem(x, &kk);
                debug_assert!(r.is_zero(), "Faddeev-LeVerrier trace division must be exact");
                -q
            })
            .collect();
        for i in 0..n {
            for t in 0..d {
                ak[i][i][t] += &ck[t];
            }
        }
        b = ak;
        coeffs.push(ck);
    }
    coeffs
}

// ---------------------------------------------------------------------------
// Fixed-point interval arithmetic for certified signs.
// ---------------------------------------------------------------------------

fn shr_floor(x: &BigInt, s: u32) -> BigInt {
    // num-bigint shifts round toward negative infinity
    x >> s
}

fn shr_ceil(x: &BigInt, s: u32) -> BigInt {
    -((-x) >> s)
}

/// Closed interval with dyadic endpoints: the value lies in
/// [lo, hi] · 2^-prec. All operands of one computation share the scale, so
/// every operation is plain `BigInt` arithmetic plus outward-rounded
/// shifts.
#[derive(Clone, Debug)]
pub struct DyInt {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

impl DyInt {
    fn from_int(n: i64, prec: u32) -> Self {
        let v = BigInt::from(n) << prec;
        DyInt { lo: v.clone(), hi: v, prec }
    }

    fn add(&self, o: &DyInt) -> DyInt {
        debug_assert_eq!(self.prec, o.prec);
        DyInt {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
            prec: self.prec,
        }
    }

    fn sub(&self, o: &DyInt) -> DyInt {
        debug_assert_eq!(self.prec, o.prec);
        DyInt {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
            prec: self.prec,
        }
    }

    fn neg(&self) -> DyInt {
        DyInt {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
            prec: self.prec,
        }
    }

    fn mul(&self, o: &DyInt) -> DyInt {
        debug_assert_eq!(self.prec, o.prec);
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = cands.iter().min().unwrap();
        let hi = cands.iter().max().unwrap();
        DyInt {
            lo: shr_floor(lo, self.prec),
            hi: shr_ceil(hi, self.prec),
            prec: self.prec,
        }
    }

    /// Exact scaling by an integer.
    fn scale_big(&self, c: &BigInt) -> DyInt {
        if c.is_negative() {
            DyInt {
                lo: &self.hi * c,
                hi: &self.lo * c,
                prec: self.prec,
            }
        } else {
            DyInt {
                lo: &self.lo * c,
                hi: &self.hi * c,
                prec: self.prec,
            }
        }
    }

    fn div_uint(&self, k: u64) -> DyInt {
        let kb = BigInt::from(k);
        DyInt {
            lo: Integer::div_floor(&self.lo, &kb),
            hi: Integer::div_ceil(&self.hi, &kb),
            prec: self.prec,
        }
    }

    /// Pad both endpoints outward by `pad` mantissa units.
    fn widen(&self, pad: &BigInt) -> DyInt {
        DyInt {
            lo: &self.lo - pad,
            hi: &self.hi + pad,
            prec: self.prec,
        }
    }

    /// Largest absolute mantissa.
    fn mag_mantissa(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }

    fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Certified sign, or None when the interval straddles zero.
    fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    #[cfg(test)]
    fn to_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let scale = 2f64.powi(-(self.prec as i32));
        (
            self.lo.to_f64().unwrap() * scale,
            self.hi.to_f64().unwrap() * scale,
        )
    }
}

/// Enclosure of arctan(1/x) by the alternating series, x >= 2.
fn atan_inv(x: u64, prec: u32) -> DyInt {
    let xb = BigInt::from(x);
    let x2 = x * x;
    // pw encloses x^-(2k+1)
    let mut pw = DyInt {
        lo: Integer::div_floor(&(BigInt::one() << prec), &xb),
        hi: Integer::div_ceil(&(BigInt::one() << prec), &xb),
        prec,
    };
    let mut sum = DyInt::from_int(0, prec);
    let mut k: u64 = 0;
    loop {
        let contrib = pw.div_uint(2 * k + 1);
        sum = if k % 2 == 0 { sum.add(&contrib) } else { sum.sub(&contrib) };
        pw = pw.div_uint(x2);
        k += 1;
        let next = pw.div_uint(2 * k + 1);
        if next.mag_mantissa() <= BigInt::from(2) {
            // tail of the alternating series is within the next term
            return sum.widen(&(next.mag_mantissa() + 2));
        }
    }
}

fn pi_enclosure(prec: u32) -> DyInt {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let a = atan_inv(5, prec);
    let b = atan_inv(239, prec);
    a.scale_big(&BigInt::from(16)).sub(&b.scale_big(&BigInt::from(4)))
}

/// Enclosures of (cos x, sin x) by interval Taylor series; needs |x| < 7
/// so the tail-ratio bound applies.
fn cos_sin_enclosure(x: &DyInt) -> (DyInt, DyInt) {
    let prec = x.prec;
    debug_assert!(x.mag_mantissa() < BigInt::from(7) << prec);
    let x2 = x.mul(x);
    let x2_mag = x2.mag_mantissa();

    let run = |first: DyInt, odd: bool| -> DyInt {
        let mut term = first.clone();
        let mut sum = first;
        let mut k: u64 = 0;
        loop {
            let denom = if odd {
                (2 * k + 2) * (2 * k + 3)
            } else {
                (2 * k + 1) * (2 * k + 2)
            };
            term = term.mul(&x2).div_uint(denom).neg();
            sum = sum.add(&term);
            k += 1;
            let next_denom = if odd {
                (2 * k + 2) * (2 * k + 3)
            } else {
                (2 * k + 1) * (2 * k + 2)
            };
            // mantissa bound for the next term
            let bound = Integer::div_ceil(
                &shr_ceil(&(term.mag_mantissa() * &x2_mag), prec),
                &BigInt::from(next_denom),
            ) + 1;
            // once the term ratio is below 1/2 the tail is within twice
            // the next term
            let ratio_ok = &x2_mag < &(BigInt::from(next_denom / 2) << prec);
            if ratio_ok && bound <= BigInt::from(4) {
                return sum.widen(&(bound * 2 + 1));
            }
        }
    };

    let cos = run(DyInt::from_int(1, prec), false);
    let sin = run(x.clone(), true);
    (cos, sin)
}

type TrigTable = Arc<Vec<(DyInt, DyInt)>>;

fn trig_cache() -> &'static Mutex<HashMap<(u64, u64, u32), TrigTable>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64, u32), TrigTable>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Enclosures of ω^j = (cos, sin)(2π j p / q) for j in 0..deg(Φ_q),
/// computed at `bits` of working precision and cached per (q, p, bits).
fn omega_powers(q: u64, p: u64, deg: usize, bits: u32) -> TrigTable {
    let key = (q, p, bits);
    if let Some(t) = trig_cache().lock().unwrap().get(&key) {
        return t.clone();
    }
    let prec = bits + 32;
    let two_pi = {
        let pi = pi_enclosure(prec);
        pi.add(&pi)
    };
    let table: Vec<(DyInt, DyInt)> = (0..deg as u64)
        .map(|j| {
            let e = (j * p) % q;
            let x = two_pi.scale_big(&BigInt::from(e)).div_uint(q);
            cos_sin_enclosure(&x)
        })
        .collect();
    let arc = Arc::new(table);
    trig_cache().lock().unwrap().insert(key, arc.clone());
    arc
}

/// Certified sign of the *real* value represented by `elem` in Z[x]/Φ_q at
/// ω = exp(2πi p/q), gcd(p, q) = 1.
///
/// Zero is decided exactly from the canonical representation. For
/// deg(Φ_q) <= 2 real values have rational canonical form and the sign is
/// exact; otherwise the value is enclosed by interval arithmetic whose
/// precision starts above the coefficient size and quadruples until the
/// sign is certified. Panics if the value is provably not real (a caller
/// bug).
pub fn sign_of_real(ctx: &CycloCtx, elem: &[BigInt], p: u64) -> Result<i32, PrecisionExhausted> {
    assert_eq!(elem.len(), ctx.deg);
    if elem.iter().all(|c| c.is_zero()) {
        return Ok(0);
    }
    if ctx.deg == 1 {
        return Ok(if elem[0].is_negative() { -1 } else { 1 });
    }
    if ctx.deg == 2 {
        // value = e0 + e1 ω with Im ω != 0, so real forces e1 = 0
        assert!(
            elem[1].is_zero(),
            "value is not real: nonzero ω-coordinate in a quadratic cyclotomic field"
        );
        return Ok(if elem[0].is_negative() { -1 } else { 1 });
    }
    let coeff_bits = elem.iter().map(|c| c.bits()).max().unwrap_or(0) as u32;
    let mut bits = (coeff_bits + 64).next_power_of_two().max(128);
    for _ in 0..6 {
        let table = omega_powers(ctx.q, p, ctx.deg, bits);
        let prec = bits + 32;
        let mut re = DyInt::from_int(0, prec);
        let mut im = DyInt::from_int(0, prec);
        for (j, c) in elem.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (cosj, sinj) = &table[j];
            re = re.add(&cosj.scale_big(c));
            im = im.add(&sinj.scale_big(c));
        }
        assert!(
            im.contains_zero(),
            "value is not real: imaginary enclosure excludes zero"
        );
        match re.sign() {
            Some(s) if s != 0 => return Ok(s),
            _ => bits *= 4,
        }
    }
    Err(PrecisionExhausted)
}
