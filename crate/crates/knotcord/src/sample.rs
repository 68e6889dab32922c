//! Deterministic sample generators used by tests and the verification
//! harness. The generator is a tiny xorshift so the library itself needs no
//! RNG dependency and runs are reproducible byte for byte.

use crate::expr::KnotExpr;
use crate::seifert::SeifertMatrix;

/// xorshift64* PRNG; deterministic and seedable.
#[derive(Clone, Debug)]
pub struct SmallRng(u64);

impl SmallRng {
    pub fn new(seed: u64) -> Self {
        SmallRng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform-ish value in `[lo, hi]` (inclusive).
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn range_usize(&mut self, lo: usize, hi: usize) -> usize {
        self.range_i64(lo as i64, hi as i64) as usize
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_u64() % den < num
    }
}

/// Random valid Seifert matrix of the given genus.
///
/// Starts from a block form whose intersection form is the standard
/// symplectic matrix, adds a random symmetric matrix (which leaves
/// V - V^T untouched) and applies a few unimodular congruences.
pub fn random_seifert(rng: &mut SmallRng, genus: usize, entry_bound: i64) -> SeifertMatrix {
    let n = 2 * genus;
    let mut v = vec![vec![0i64; n]; n];
    for g in 0..genus {
        let i = 2 * g;
        v[i][i] = rng.range_i64(-entry_bound, entry_bound);
        v[i][i + 1] = 1;
        v[i + 1][i] = 0;
        v[i + 1][i + 1] = rng.range_i64(-entry_bound, entry_bound);
    }
    for i in 0..n {
        for j in i..n {
            let s = rng.range_i64(-entry_bound, entry_bound);
            v[i][j] += s;
            if j > i {
                v[j][i] += s;
            }
        }
    }
    // congruences V <- E^T V E with E elementary keep det(V - V^T) = 1
    for _ in 0..n {
        let i = rng.range_usize(0, n - 1);
        let mut j = rng.range_usize(0, n - 1);
        if i == j {
            j = (j + 1) % n;
        }
        let c = if rng.chance(1, 2) { 1 } else { -1 };
        // column op then the matching row op
        for r in 0..n {
            v[r][j] += c * v[r][i];
        }
        for r in 0..n {
            let add = c * v[i][r];
            v[j][r] += add;
        }
    }
    SeifertMatrix::validate(v).expect("generator must produce valid matrices")
}

/// Random primitive nonzero integer vector.
pub fn random_primitive_vector(rng: &mut SmallRng, len: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.range_i64(-bound, bound)).collect();
        let mut g: i64 = 0;
        for &x in &v {
            g = gcd_i64(g, x);
        }
        if g == 1 {
            return v;
        }
        if g > 1 {
            return v.iter().map(|&x| x / g).collect();
        }
        // all zero: retry
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Random knot expression with evaluated genus in `[1, max_genus]`.
pub fn random_expr(rng: &mut SmallRng, max_genus: usize) -> KnotExpr {
    let mut expr = random_leaf(rng, max_genus);
    let mut genus = expr.g3_upper().expect("leaf is valid");
    while genus < max_genus && rng.chance(1, 2) {
        let extra = random_leaf(rng, max_genus - genus);
        genus += extra.g3_upper().expect("leaf is valid");
        expr = KnotExpr::sum(expr, extra);
    }
    for _ in 0..rng.range_usize(0, 2) {
        expr = match rng.range_usize(0, 2) {
            0 => KnotExpr::reverse(expr),
            1 => KnotExpr::inverse(expr),
            _ => KnotExpr::mirror(expr),
        };
    }
    expr
}

fn random_leaf(rng: &mut SmallRng, max_genus: usize) -> KnotExpr {
    let max_genus = max_genus.max(1);
    match rng.range_usize(0, 3) {
        0 => {
            let k = rng.range_usize(1, max_genus);
            let params: Vec<i64> = (0..2 * k + 1)
                .map(|_| 2 * rng.range_i64(0, 4) + 1)
                .collect();
            KnotExpr::Pretzel(params)
        }
        1 => {
            let g = rng.range_usize(1, max_genus);
            KnotExpr::Torus2(2 * g as i64 + 1)
        }
        2 => {
            let mut m = rng.range_i64(-4, 4);
            if m == 0 {
                m = 1;
            }
            KnotExpr::Twist(m)
        }
        _ => {
            let mut r = SmallRng::new(rng.next_u64());
            KnotExpr::Matrix(random_seifert(&mut r, rng.range_usize(1, max_genus), 2))
        }
    }
}
