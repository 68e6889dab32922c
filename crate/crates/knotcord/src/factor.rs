//! Factorization of integer polynomials: squarefree reduction, mod-p
//! factorization (distinct-degree plus Cantor-Zassenhaus splitting),
//! quadratic Hensel lifting, and subset recombination.
//!
//! Sized for the degrees that show up in Alexander polynomials at desk
//! scale; the public entry point enforces a configurable degree cap.

use crate::poly::IntPoly;
use crate::sample::SmallRng;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("degree {degree} exceeds the factorization cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
}

/// `sign * content * prod factors[i].0 ^ factors[i].1`, with every factor
/// primitive, irreducible over Z, and with positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactorization {
    pub sign: i8,
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl IntFactorization {
    pub fn product(&self) -> IntPoly {
        let mut acc = IntPoly::constant(BigInt::from(self.sign) * &self.content);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

pub fn factor_int_poly(f: &IntPoly, degree_cap: usize) -> Result<IntFactorization, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    if f.degree() > degree_cap {
        return Err(FactorError::DegreeTooLarge {
            degree: f.degree(),
            cap: degree_cap,
        });
    }
    let sign = if f.leading().is_negative() { -1 } else { 1 };
    let content = f.content();
    let mut work = f.primitive();
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();

    // pull out powers of t
    let val = work.0.iter().take_while(|c| c.is_zero()).count();
    if val > 0 {
        work = IntPoly::from_coeffs(work.0[val..].to_vec());
        factors.push((IntPoly::from_i64(&[0, 1]), val as u32));
    }

    if work.degree() >= 1 {
        // squarefree kernel w = work / gcd(work, work')
        let g = work.gcd(&work.derivative());
        let kernel = work.div_exact(&g).primitive();
        for irreducible in factor_squarefree(&kernel) {
            let mut mult = 0u32;
            loop {
                match work.div_rem_exact(&irreducible) {
                    Some((q, r)) if r.is_zero() => {
                        work = q;
                        mult += 1;
                    }
                    _ => break,
                }
            }
            debug_assert!(mult > 0, "kernel factor must divide the polynomial");
            factors.push((irreducible, mult));
        }
        debug_assert!(work.degree() == 0, "all factors accounted for");
    }

    factors.sort_by(|a, b| (a.0.degree(), &a.0 .0).cmp(&(b.0.degree(), &b.0 .0)));
    Ok(IntFactorization {
        sign,
        content,
        factors,
    })
}

/// Factor a primitive squarefree polynomial into irreducibles over Z.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![f.primitive()];
    }

    // pick an odd prime keeping f squarefree with invertible lead
    let p = pick_prime(f);
    let fp = ModPoly::from_int(f, p);
    let modular = factor_mod_p(&fp, p);
    if modular.len() == 1 {
        return vec![f.primitive()];
    }

    // Landau-Mignotte style bound on factor coefficients, times the lead
    let bound = {
        let norm: BigInt = f.max_coeff_abs() * BigInt::from(n as u64 + 1);
        (BigInt::one() << n) * norm * f.leading().abs() * 2 + 1
    };
    let mut modulus = BigInt::from(p);
    while modulus < bound {
        modulus = &modulus * &modulus;
    }
    let lifted = hensel_lift_tree(p, &to_mod_big(f, &modulus), &modular, &modulus);

    recombine(f.clone(), lifted, &modulus)
}

fn pick_prime(f: &IntPoly) -> u64 {
    const PRIMES: [u64; 15] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    for &p in &PRIMES {
        if (f.leading() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = ModPoly::from_int(f, p);
        let dp = fp.derivative(p);
        if dp.is_zero() {
            continue;
        }
        if ModPoly::gcd(&fp, &dp, p).degree() == 0 {
            return p;
        }
    }
    // squarefree integer polynomials stay squarefree for all but finitely
    // many primes; scan onward
    let mut p = 59u64;
    loop {
        if is_prime_u64(p) && !(f.leading() % BigInt::from(p)).is_zero() {
            let fp = ModPoly::from_int(f, p);
            let dp = fp.derivative(p);
            if !dp.is_zero() && ModPoly::gcd(&fp, &dp, p).degree() == 0 {
                return p;
            }
        }
        p += 2;
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Arithmetic mod a small prime p.
// ---------------------------------------------------------------------------

/// Polynomial over F_p, coefficients ascending in [0, p), no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ModPoly(Vec<u64>);

impl ModPoly {
    fn from_int(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let mut out: Vec<u64> = f
            .0
            .iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                u64::try_from(r).expect("residue fits u64")
            })
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        ModPoly(out)
    }

    fn zero() -> Self {
        ModPoly(Vec::new())
    }

    fn one() -> Self {
        ModPoly(vec![1])
    }

    fn x() -> Self {
        ModPoly(vec![0, 1])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn normalize(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn sub(&self, other: &ModPoly, p: u64) -> ModPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            out[i] = (a + p - b) % p;
        }
        ModPoly(out).normalize()
    }

    fn mul(&self, other: &ModPoly, p: u64) -> ModPoly {
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero();
        }
        let mut out = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        ModPoly(out).normalize()
    }

    fn scale(&self, c: u64, p: u64) -> ModPoly {
        ModPoly(self.0.iter().map(|&a| a * c % p).collect()).normalize()
    }

    fn monic(&self, p: u64) -> ModPoly {
        if self.is_zero() {
            return ModPoly::zero();
        }
        let inv = inv_mod(*self.0.last().unwrap(), p);
        self.scale(inv, p)
    }

    fn div_rem(&self, divisor: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
        assert!(!divisor.is_zero());
        let mut rem = self.0.clone();
        let d = divisor.degree();
        let lead_inv = inv_mod(*divisor.0.last().unwrap(), p);
        if rem.len() <= d {
            return (ModPoly::zero(), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = c * lead_inv % p;
            quot[i - d] = q;
            for j in 0..=d {
                let sub = q * divisor.0[j] % p;
                rem[i - d + j] = (rem[i - d + j] + p - sub) % p;
            }
        }
        debug_assert!(rem[d..].iter().all(|&c| c == 0));
        (ModPoly(quot).normalize(), ModPoly(rem).normalize())
    }

    fn rem(&self, divisor: &ModPoly, p: u64) -> ModPoly {
        self.div_rem(divisor, p).1
    }

    fn gcd(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    fn derivative(&self, p: u64) -> ModPoly {
        if self.0.len() <= 1 {
            return ModPoly::zero();
        }
        ModPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * (i as u64 % p) % p)
                .collect(),
        )
        .normalize()
    }

    /// self^e mod (modulus), binary exponentiation.
    fn pow_mod(&self, e: &BigInt, modulus: &ModPoly, p: u64) -> ModPoly {
        let mut base = self.rem(modulus, p);
        let mut acc = ModPoly::one();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base, p).rem(modulus, p);
            }
            base = base.mul(&base, p).rem(modulus, p);
        }
        acc
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not invertible mod p");
    t.rem_euclid(p as i128) as u64
}

/// Monic irreducible factors of a squarefree monic-able polynomial mod p.
fn factor_mod_p(f: &ModPoly, p: u64) -> Vec<ModPoly> {
    let monic = f.monic(p);
    let mut rng = SmallRng::new(0x5EED_0F_C0FFEE ^ p);
    let mut out = Vec::new();
    // distinct-degree
    let mut w = monic.clone();
    let mut h = ModPoly::x();
    let mut d = 0usize;
    while w.degree() >= 1 {
        d += 1;
        if 2 * d > w.degree() {
            out.push(w.clone());
            break;
        }
        h = h.pow_mod(&BigInt::from(p), &w, p);
        let delta = h.sub(&ModPoly::x(), p);
        let g = ModPoly::gcd(&delta, &w, p);
        if g.degree() > 0 {
            equal_degree_split(&g, d, p, &mut rng, &mut out);
            w = w.div_rem(&g, p).0;
            h = h.rem(&w, p);
        }
    }
    out
}

/// Cantor-Zassenhaus: split a product of distinct degree-d irreducibles.
fn equal_degree_split(f: &ModPoly, d: usize, p: u64, rng: &mut SmallRng, out: &mut Vec<ModPoly>) {
    if f.degree() == d {
        out.push(f.monic(p));
        return;
    }
    let e = (BigInt::from(p).pow(d as u32) - 1) / 2;
    loop {
        let deg = f.degree();
        let coeffs: Vec<u64> = (0..deg).map(|_| rng.next_u64() % p).collect();
        let r = ModPoly(coeffs).normalize();
        if r.degree() < 1 && r.is_zero() {
            continue;
        }
        let t = r.pow_mod(&e, f, p);
        let t1 = t.sub(&ModPoly::one(), p);
        let g = ModPoly::gcd(&t1, f, p);
        if g.degree() > 0 && g.degree() < f.degree() {
            equal_degree_split(&g, d, p, rng, out);
            equal_degree_split(&f.div_rem(&g, p).0, d, p, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting mod p^k with BigInt coefficients.
// ---------------------------------------------------------------------------

/// Polynomial with coefficients in [0, m).
type BigModPoly = Vec<BigInt>;

fn bm_normalize(mut v: BigModPoly) -> BigModPoly {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn to_mod_big(f: &IntPoly, m: &BigInt) -> BigModPoly {
    bm_normalize(f.0.iter().map(|c| c.mod_floor(m)).collect())
}

fn from_mod_p(f: &ModPoly) -> BigModPoly {
    f.0.iter().map(|&c| BigInt::from(c)).collect()
}

fn bm_degree(f: &BigModPoly) -> usize {
    f.len().saturating_sub(1)
}

fn bm_add(a: &BigModPoly, b: &BigModPoly, m: &BigInt) -> BigModPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero)
            + b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out.push(x.mod_floor(m));
    }
    bm_normalize(out)
}

fn bm_sub(a: &BigModPoly, b: &BigModPoly, m: &BigInt) -> BigModPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero)
            - b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out.push(x.mod_floor(m));
    }
    bm_normalize(out)
}

fn bm_mul(a: &BigModPoly, b: &BigModPoly, m: &BigInt) -> BigModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    bm_normalize(out.into_iter().map(|c| c.mod_floor(m)).collect())
}

/// Division by a monic divisor, everything mod m.
fn bm_div_rem_monic(a: &BigModPoly, divisor: &BigModPoly, m: &BigInt) -> (BigModPoly, BigModPoly) {
    assert!(divisor.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let d = bm_degree(divisor);
    let mut rem: Vec<BigInt> = a.clone();
    if rem.len() <= d {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for i in (d..rem.len()).rev() {
        let c = rem[i].mod_floor(m);
        if c.is_zero() {
            rem[i] = BigInt::zero();
            continue;
        }
        quot[i - d] = c.clone();
        for j in 0..=d {
            let delta = &c * &divisor[j];
            rem[i - d + j] = (&rem[i - d + j] - delta).mod_floor(m);
        }
    }
    (bm_normalize(quot), bm_normalize(rem))
}

fn bm_scale(a: &BigModPoly, c: &BigInt, m: &BigInt) -> BigModPoly {
    bm_normalize(a.iter().map(|x| (x * c).mod_floor(m)).collect())
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient must be a unit mod p^k");
    e.x.mod_floor(m)
}

/// Lift `f = lc(f) * prod(factors)` from mod p to mod `modulus`
/// (a power of p), returning monic lifted factors.
fn hensel_lift_tree(
    p: u64,
    f: &BigModPoly,
    factors: &[ModPoly],
    modulus: &BigInt,
) -> Vec<BigModPoly> {
    if factors.len() == 1 {
        let lead = f.last().cloned().expect("nonzero polynomial");
        let inv = inv_mod_big(&lead, modulus);
        return vec![bm_scale(f, &inv, modulus)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let pm = BigInt::from(p);
    let u = left.iter().fold(ModPoly::one(), |acc, g| acc.mul(g, p));
    let v = right.iter().fold(ModPoly::one(), |acc, g| acc.mul(g, p));

    let lc_mod_p = f.last().cloned().unwrap().mod_floor(&pm);
    let g0 = bm_scale(&from_mod_p(&u), &lc_mod_p, &pm);
    let h0 = from_mod_p(&v);
    let (s0, t0) = bezout_mod_p(&u.scale(u64::try_from(&lc_mod_p).unwrap() % p, p), &v, p);

    let (g, h) = hensel_pair_lift(f, g0, h0, from_mod_p(&s0), from_mod_p(&t0), &pm, modulus);
    let mut out = hensel_lift_tree(p, &g, left, modulus);
    out.extend(hensel_lift_tree(p, &h, right, modulus));
    out
}

/// Extended Euclid over F_p: s*a + t*b = 1 with deg s < deg b, deg t < deg a.
fn bezout_mod_p(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (ModPoly::one(), ModPoly::zero());
    let (mut t0, mut t1) = (ModPoly::zero(), ModPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1, p);
        let ns = s0.sub(&q.mul(&s1, p), p);
        let nt = t0.sub(&q.mul(&t1, p), p);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, ns);
        (t0, t1) = (t1, nt);
    }
    assert_eq!(r0.degree(), 0, "factors must be coprime mod p");
    let inv = inv_mod(r0.0[0], p);
    (s0.scale(inv, p), t0.scale(inv, p))
}

/// Quadratic Hensel lift of a coprime pair, h monic, from mod p to at
/// least `target`, then reduced mod `target`.
#[allow(clippy::too_many_arguments)]
fn hensel_pair_lift(
    f: &BigModPoly,
    mut g: BigModPoly,
    mut h: BigModPoly,
    mut s: BigModPoly,
    mut t: BigModPoly,
    p: &BigInt,
    target: &BigInt,
) -> (BigModPoly, BigModPoly) {
    let mut m = p.clone();
    while m < *target {
        let m2 = &m * &m;
        let f_m2: BigModPoly = bm_normalize(f.iter().map(|c| c.mod_floor(&m2)).collect());
        // e = f - g h
        let e = bm_sub(&f_m2, &bm_mul(&g, &h, &m2), &m2);
        // (q, r) = divrem(s e, h)
        let (q, r) = bm_div_rem_monic(&bm_mul(&s, &e, &m2), &h, &m2);
        let g_new = bm_add(&bm_add(&g, &bm_mul(&t, &e, &m2), &m2), &bm_mul(&q, &g, &m2), &m2);
        let h_new = bm_add(&h, &r, &m2);
        // Bezout update
        let b = bm_sub(
            &bm_add(&bm_mul(&s, &g_new, &m2), &bm_mul(&t, &h_new, &m2), &m2),
            &vec![BigInt::one()],
            &m2,
        );
        let (c, d) = bm_div_rem_monic(&bm_mul(&s, &b, &m2), &h_new, &m2);
        let s_new = bm_sub(&s, &d, &m2);
        let t_new = bm_sub(&bm_sub(&t, &bm_mul(&t, &b, &m2), &m2), &bm_mul(&c, &g_new, &m2), &m2);
        g = g_new;
        h = h_new;
        s = s_new;
        t = t_new;
        m = m2;
    }
    let g = bm_normalize(g.iter().map(|c| c.mod_floor(target)).collect());
    let h = bm_normalize(h.iter().map(|c| c.mod_floor(target)).collect());
    debug_assert!(h.last().map(|c| c.is_one()).unwrap_or(false));
    (g, h)
}

// ---------------------------------------------------------------------------
// Zassenhaus recombination.
// ---------------------------------------------------------------------------

fn symmetric_rep(f: &BigModPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::from_coeffs(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn recombine(mut f: IntPoly, lifted: Vec<BigModPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut live: Vec<BigModPoly> = lifted;
    let mut card = 1usize;
    while 2 * card <= live.len() {
        match find_divisor(&f, &live, card, modulus) {
            Some((candidate, quotient, subset)) => {
                out.push(candidate);
                f = quotient.primitive();
                let mut keep = Vec::with_capacity(live.len() - subset.len());
                for (i, g) in live.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(g);
                    }
                }
                live = keep;
            }
            None => card += 1,
        }
    }
    if f.degree() > 0 {
        out.push(f.primitive());
    }
    out
}

/// Scan the size-`card` subsets of the lifted factors in lexicographic
/// order for one whose product gives a true divisor.
fn find_divisor(
    f: &IntPoly,
    live: &[BigModPoly],
    card: usize,
    modulus: &BigInt,
) -> Option<(IntPoly, IntPoly, Vec<usize>)> {
    let n = live.len();
    if card > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..card).collect();
    loop {
        let lead = f.leading().mod_floor(modulus);
        let mut prod = vec![lead];
        for &i in &idx {
            prod = bm_mul(&prod, &live[i], modulus);
        }
        let candidate = symmetric_rep(&prod, modulus).primitive();
        if candidate.degree() > 0 {
            if let Some((q, r)) = f.div_rem_exact(&candidate) {
                if r.is_zero() {
                    return Some((candidate, q, idx));
                }
            }
        }
        // next combination
        let mut i = card as isize - 1;
        while i >= 0 && idx[i as usize] == n - card + i as usize {
            i -= 1;
        }
        if i < 0 {
            return None;
        }
        let i = i as usize;
        idx[i] += 1;
        for j in i + 1..card {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
