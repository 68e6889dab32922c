//! Abelian knot invariants: Alexander polynomial, determinant, and exact
//! Levine-Tristram signatures at rational points of the unit circle.
//!
//! The signature engine works entirely in exact arithmetic. For an angle
//! p/q the Hermitian form M(ω) = (1-ω)V + (1-ω̄)V^T has entries in Z[ω];
//! its characteristic polynomial is computed exactly in Z[x]/Φ_q and the
//! eigenvalue sign counts fall out of Descartes' rule, which is exact for
//! polynomials with all-real roots. Coefficient signs are certified by the
//! canonical zero test plus adaptive-precision interval evaluation, so no
//! floating point enters any reported value. An independent floating-point
//! eigenvalue oracle (used by tests) lives in
//! [`hermitian_signature_oracle`].

use crate::cyclotomic::{self, CycloCtx};
use crate::linalg;
use crate::poly::LaurentPoly;
use crate::seifert::SeifertMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// Reduced fraction p/q in (0, 1), standing for ω = exp(2πi p/q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalAngle {
    p: u64,
    q: u64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AngleError {
    #[error("angle {0}/{1} is not strictly between 0 and 1")]
    OutOfRange(u64, u64),
}

impl RationalAngle {
    /// Builds the reduced form; rejects values outside (0, 1).
    pub fn new(p: u64, q: u64) -> Result<Self, AngleError> {
        if p == 0 || q == 0 || p >= q {
            return Err(AngleError::OutOfRange(p, q));
        }
        let g = gcd(p, q);
        Ok(RationalAngle { p: p / g, q: q / g })
    }

    pub fn numer(&self) -> u64 {
        self.p
    }

    pub fn denom(&self) -> u64 {
        self.q
    }

    /// The conjugate angle (q-p)/q; signatures agree at conjugate angles.
    pub fn conjugate(&self) -> RationalAngle {
        RationalAngle {
            p: self.q - self.p,
            q: self.q,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl PartialOrd for RationalAngle {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalAngle {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.p as u128 * other.q as u128).cmp(&(other.p as u128 * self.q as u128))
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl std::str::FromStr for RationalAngle {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| format!("expected p/q, got `{s}`"))?;
        let p: u64 = p.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
        let q: u64 = q.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
        RationalAngle::new(p, q).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("the Alexander polynomial vanishes at {0}; the signature jumps there and no value is defined")]
    AtJumpAngle(RationalAngle),
    #[error("interval refinement cap hit while certifying an eigenvalue sign count")]
    PrecisionExhausted,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("a floating eigenvalue is within tolerance of zero; the oracle is inconclusive")]
    MarginTooSmall,
}

/// Batch of signature samples plus the angles where the Alexander
/// polynomial vanishes (no value is stored there).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignatureProfile {
    pub samples: BTreeMap<RationalAngle, i64>,
    pub jump_angles: BTreeSet<RationalAngle>,
}

/// Alexander polynomial det(V - tV^T), normalized to the symmetric Laurent
/// form with positive top coefficient; the unknot gives 1.
pub fn alexander(v: &SeifertMatrix) -> LaurentPoly {
    let mut product = LaurentPoly::one();
    for block in v.diagonal_blocks() {
        let rows = v.submatrix(&block);
        product = product.mul(&alexander_block(&rows));
    }
    let normalized = product
        .normalized_symmetric()
        .expect("det(V - tV^T) of a valid Seifert matrix has even exponent span");
    debug_assert!(normalized.is_symmetric());
    debug_assert!(normalized.eval_at_one().abs().is_one());
    normalized
}

/// det(V - tV^T) for one diagonal block, by interpolation at integer points.
fn alexander_block(rows: &[Vec<i64>]) -> LaurentPoly {
    let n = rows.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    // values at t = 0..n determine the degree <= n polynomial
    let values: Vec<BigInt> = (0..=n as i64)
        .map(|t| {
            let m = linalg::IMat::from_fn(n, n, |i, j| {
                BigInt::from(rows[i][j]) - BigInt::from(t) * BigInt::from(rows[j][i])
            });
            linalg::determinant(&m)
        })
        .collect();
    let coeffs = interpolate_integer_poly(&values);
    LaurentPoly::from_terms(coeffs.into_iter().enumerate().map(|(e, c)| (e as i64, c)))
}

/// Lagrange interpolation through (i, values[i]) for i = 0..len-1; the
/// result must be integral.
fn interpolate_integer_poly(values: &[BigInt]) -> Vec<BigInt> {
    let n = values.len();
    let mut acc = vec![BigRational::zero(); n];
    for (i, y) in values.iter().enumerate() {
        if y.is_zero() {
            continue;
        }
        // numerator poly: prod_{j != i} (t - j)
        let mut numer = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); numer.len() + 1];
            let jr = BigRational::from_integer(BigInt::from(j as i64));
            for (k, c) in numer.iter().enumerate() {
                next[k] -= c * &jr;
                next[k + 1] += c;
            }
            numer = next;
            denom *= BigInt::from(i as i64 - j as i64);
        }
        let scale = BigRational::new(y.clone(), denom);
        for (k, c) in numer.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    acc.into_iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolation of det(V - tV^T) must be integral");
            c.to_integer()
        })
        .collect()
}

/// Knot determinant |det(V + V^T)| = |Δ(-1)|; always odd and positive.
pub fn determinant(v: &SeifertMatrix) -> BigInt {
    let mut product = BigInt::one();
    for block in v.diagonal_blocks() {
        let rows = v.submatrix(&block);
        let n = rows.len();
        let m = linalg::IMat::from_fn(n, n, |i, j| BigInt::from(rows[i][j] + rows[j][i]));
        product *= linalg::determinant(&m);
    }
    let d = product.abs();
    debug_assert!(d.is_odd(), "knot determinant is odd");
    d
}

/// Exact Levine-Tristram signature of V at ω = exp(2πi p/q).
///
/// Refuses jump angles (where Δ(ω) = 0) instead of picking an averaging
/// convention; the guard is exact, decided by the canonical form of
/// det(M(ω)) in Z[x]/Φ_q, which vanishes iff the Alexander polynomial
/// does at ω. The result is always even.
pub fn lt_signature(v: &SeifertMatrix, angle: RationalAngle) -> Result<i64, SignatureError> {
    if v.dim() == 0 {
        return Ok(0);
    }
    let ctx = CycloCtx::shared(angle.denom());
    let one_minus_omega: Vec<BigInt> = {
        let mut w = ctx.omega_power(1);
        for c in w.iter_mut() {
            *c = -std::mem::take(c);
        }
        w[0] += BigInt::one();
        w
    };
    let one_minus_omega_bar: Vec<BigInt> = {
        let mut w = ctx.omega_power(angle.denom() - 1);
        for c in w.iter_mut() {
            *c = -std::mem::take(c);
        }
        w[0] += BigInt::one();
        w
    };

    let mut total = 0i64;
    for block in v.diagonal_blocks() {
        let rows = v.submatrix(&block);
        total += block_signature(&ctx, &rows, &one_minus_omega, &one_minus_omega_bar, angle)?;
    }
    assert!(total % 2 == 0, "signature of a nonsingular even form is even");
    Ok(total)
}

fn block_signature(
    ctx: &CycloCtx,
    rows: &[Vec<i64>],
    a: &[BigInt],
    b: &[BigInt],
    angle: RationalAngle,
) -> Result<i64, SignatureError> {
    let n = rows.len();
    let signs = block_coefficient_signs(ctx, rows, a, b, angle)?;

    // Descartes on the coefficient signs: exact because a Hermitian matrix
    // has all-real eigenvalues, once the constant term (= ±det M(ω), a
    // unit multiple of Δ(ω)) is certified nonzero.
    if signs[n] == 0 {
        return Err(SignatureError::AtJumpAngle(angle));
    }
    let mut variations = 0i64;
    let mut last = signs[0];
    for &s in &signs[1..] {
        if s == 0 {
            continue;
        }
        if s != last {
            variations += 1;
        }
        last = s;
    }
    Ok(2 * variations - n as i64)
}

/// Signs of the characteristic-polynomial coefficients of M(ω) restricted
/// to one block, highest degree first.
fn block_coefficient_signs(
    ctx: &CycloCtx,
    rows: &[Vec<i64>],
    a: &[BigInt],
    b: &[BigInt],
    angle: RationalAngle,
) -> Result<Vec<i32>, SignatureError> {
    let n = rows.len();

    // scalar field (ω = -1): plain integer arithmetic end to end
    if ctx.deg == 1 {
        let scalar = (|| {
            let a0 = a[0].to_i128()?;
            let b0 = b[0].to_i128()?;
            let mut m = vec![0i128; n * n];
            for i in 0..n {
                for j in 0..n {
                    m[i * n + j] = a0
                        .checked_mul(rows[i][j] as i128)?
                        .checked_add(b0.checked_mul(rows[j][i] as i128)?)?;
                }
            }
            cyclotomic::char_poly_scalar_i128(&m, n)
        })();
        if let Some(cs) = scalar {
            return Ok(cs.iter().map(|&c| i128::signum(c) as i32).collect());
        }
    }

    let entry = |i: usize, j: usize| -> Vec<BigInt> {
        let vij = BigInt::from(rows[i][j]);
        let vji = BigInt::from(rows[j][i]);
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| x * &vij + y * &vji)
            .collect()
    };

    // i128 fast path, BigInt fallback
    let coeffs: Vec<Vec<BigInt>> = {
        let small: Option<Vec<Vec<Vec<i128>>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| entry(i, j).iter().map(|c| c.to_i128()).collect::<Option<Vec<i128>>>())
                    .collect()
            })
            .collect();
        let fast = small.and_then(|m| cyclotomic::char_poly_i128(ctx, &m));
        match fast {
            Some(cs) => cs
                .into_iter()
                .map(|c| c.into_iter().map(BigInt::from).collect())
                .collect(),
            None => {
                let m: Vec<Vec<Vec<BigInt>>> =
                    (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
                cyclotomic::char_poly_big(ctx, &m)
            }
        }
    };

    let mut signs = Vec::with_capacity(n + 1);
    for c in &coeffs {
        let s = cyclotomic::sign_of_real(ctx, c, angle.numer())
            .map_err(|_| SignatureError::PrecisionExhausted)?;
        signs.push(s);
    }
    Ok(signs)
}

/// Batch evaluation: samples at every non-jump angle, jump angles flagged.
pub fn signature_profile(v: &SeifertMatrix, angles: &[RationalAngle]) -> SignatureProfile {
    let mut profile = SignatureProfile::default();
    for &x in angles {
        match lt_signature(v, x) {
            Ok(s) => {
                profile.samples.insert(x, s);
            }
            Err(SignatureError::AtJumpAngle(_)) => {
                profile.jump_angles.insert(x);
            }
            Err(SignatureError::PrecisionExhausted) => {
                panic!("sign refinement exhausted although Δ(ω) != 0; this is a defect")
            }
        }
    }
    profile
}

/// Independent floating-point oracle: embeds M(ω) = X + iY as the doubled
/// real symmetric matrix [[X, -Y], [Y, X]], counts eigenvalue signs, and
/// refuses to answer when an eigenvalue is too close to zero.
pub fn hermitian_signature_oracle(
    v: &SeifertMatrix,
    angle: RationalAngle,
) -> Result<i64, OracleError> {
    let n = v.dim();
    if n == 0 {
        return Ok(0);
    }
    let theta = 2.0 * std::f64::consts::PI * (angle.numer() as f64) / (angle.denom() as f64);
    let (c, s) = (theta.cos(), theta.sin());
    let mut m = nalgebra::DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let x = (1.0 - c) * (v.entry(i, j) + v.entry(j, i)) as f64;
            let y = -s * (v.entry(i, j) - v.entry(j, i)) as f64;
            m[(i, j)] = x;
            m[(n + i, n + j)] = x;
            m[(i, n + j)] = -y;
            m[(n + i, j)] = y;
        }
    }
    let eigen = m.symmetric_eigenvalues();
    let scale = eigen.iter().fold(1.0f64, |acc, &l| acc.max(l.abs()));
    let tol = 1e-9 * scale;
    let mut pos = 0i64;
    let mut neg = 0i64;
    for &l in eigen.iter() {
        if l.abs() < tol {
            return Err(OracleError::MarginTooSmall);
        }
        if l > 0.0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    let diff = pos - neg;
    if diff % 2 != 0 {
        return Err(OracleError::MarginTooSmall);
    }
    Ok(diff / 2)
}

/// The default evaluation grid: the distinguished angles first
/// (1/2, 1/3, 1/7, 2/7, 3/7), then every other reduced p/q with q <= 24 in
/// increasing order.
pub fn default_angle_grid() -> Vec<RationalAngle> {
    let distinguished = [
        RationalAngle::new(1, 2).unwrap(),
        RationalAngle::new(1, 3).unwrap(),
        RationalAngle::new(1, 7).unwrap(),
        RationalAngle::new(2, 7).unwrap(),
        RationalAngle::new(3, 7).unwrap(),
    ];
    let mut rest = BTreeSet::new();
    for q in 2..=24u64 {
        for p in 1..q {
            if gcd(p, q) == 1 {
                rest.insert(RationalAngle::new(p, q).unwrap());
            }
        }
    }
    let mut grid: Vec<RationalAngle> = distinguished.to_vec();
    for x in rest {
        if !distinguished.contains(&x) {
            grid.push(x);
        }
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_seifert, SmallRng};

    fn angle(p: u64, q: u64) -> RationalAngle {
        RationalAngle::new(p, q).unwrap()
    }

    #[test]
    fn angles_reduce_and_order() {
        assert_eq!(angle(2, 4), angle(1, 2));
        assert!(RationalAngle::new(0, 3).is_err());
        assert!(RationalAngle::new(3, 3).is_err());
        assert!(RationalAngle::new(4, 3).is_err());
        assert!(angle(1, 3) < angle(1, 2));
        assert_eq!(angle(2, 7).conjugate(), angle(5, 7));
        assert_eq!(angle(1, 2).to_string(), "1/2");
        assert_eq!("3/7".parse::<RationalAngle>().unwrap(), angle(3, 7));
    }

    #[test]
    fn alexander_examples() {
        assert!(alexander(&SeifertMatrix::unknot()).is_one());

        let trefoil = SeifertMatrix::torus2(3).unwrap();
        assert_eq!(
            alexander(&trefoil),
            LaurentPoly::from_i64_terms(&[(-1, 1), (0, -1), (1, 1)])
        );

        // multiplicative over block sums
        let p = SeifertMatrix::pretzel(&[3, 5, 7]).unwrap();
        let sum = trefoil.connected_sum(&p);
        assert_eq!(
            alexander(&sum),
            alexander(&trefoil)
                .mul(&alexander(&p))
                .normalized_symmetric()
                .unwrap()
        );

        // twist knots
        let w2 = SeifertMatrix::twist(2).unwrap();
        assert_eq!(
            alexander(&w2),
            LaurentPoly::from_i64_terms(&[(-1, 2), (0, -5), (1, 2)])
        );
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&SeifertMatrix::unknot()), BigInt::one());
        assert_eq!(
            determinant(&SeifertMatrix::pretzel(&[3, 5, 7]).unwrap()),
            BigInt::from(71)
        );
        assert_eq!(determinant(&SeifertMatrix::torus2(7).unwrap()), BigInt::from(7));
        assert_eq!(determinant(&SeifertMatrix::twist(1).unwrap()), BigInt::from(5));
        assert_eq!(determinant(&SeifertMatrix::twist(2).unwrap()), BigInt::from(9));
    }

    #[test]
    fn pretzel_determinant_formula_oracle() {
        // independent oracle for the matrix convention: the three-strand
        // pretzel determinant is |p1 p2 + p2 p3 + p3 p1|
        for p1 in [1i64, 3, 5, 7, 9] {
            for p2 in [1i64, 3, 5, 7, 9] {
                for p3 in [1i64, 3, 5, 7, 9] {
                    let v = SeifertMatrix::pretzel(&[p1, p2, p3]).unwrap();
                    let expected = (p1 * p2 + p2 * p3 + p3 * p1).abs();
                    assert_eq!(
                        determinant(&v),
                        BigInt::from(expected),
                        "pretzel({p1},{p2},{p3})"
                    );
                }
            }
        }
        // second oracle: pretzel(1,1,1) carries the trefoil polynomial
        assert_eq!(
            alexander(&SeifertMatrix::pretzel(&[1, 1, 1]).unwrap()),
            alexander(&SeifertMatrix::torus2(3).unwrap())
        );
        // a corrupted banded convention (negated superdiagonal) is caught:
        // either validation or the determinant oracle rejects it
        match SeifertMatrix::validate(vec![vec![4, -3], vec![2, 6]]) {
            Err(_) => {}
            Ok(v) => assert_ne!(determinant(&v), BigInt::from(71)),
        }
    }

    #[test]
    fn signature_examples() {
        let trefoil = SeifertMatrix::torus2(3).unwrap();
        assert_eq!(lt_signature(&trefoil, angle(1, 2)), Ok(-2));

        let p = SeifertMatrix::pretzel(&[3, 5, 7]).unwrap();
        assert_eq!(lt_signature(&p, angle(1, 2)), Ok(2));

        assert_eq!(lt_signature(&SeifertMatrix::unknot(), angle(1, 5)), Ok(0));

        let t7 = SeifertMatrix::torus2(7).unwrap();
        assert_eq!(lt_signature(&t7, angle(3, 7)), Ok(-6));
        assert_eq!(lt_signature(&t7, angle(1, 2)), Ok(-6));

        // trefoil jumps at the sixth roots of unity
        assert_eq!(
            lt_signature(&trefoil, angle(1, 6)),
            Err(SignatureError::AtJumpAngle(angle(1, 6)))
        );
    }

    #[test]
    fn profile_examples() {
        let t7 = SeifertMatrix::torus2(7).unwrap();
        let profile = signature_profile(&t7, &[angle(1, 7), angle(2, 7), angle(3, 7)]);
        assert_eq!(profile.samples[&angle(1, 7)], -2);
        assert_eq!(profile.samples[&angle(2, 7)], -4);
        assert_eq!(profile.samples[&angle(3, 7)], -6);
        assert!(profile.jump_angles.is_empty());

        let trefoil = SeifertMatrix::torus2(3).unwrap();
        let profile = signature_profile(&trefoil, &[angle(1, 6)]);
        assert!(profile.jump_angles.contains(&angle(1, 6)));
        assert!(profile.samples.is_empty());

        let empty = signature_profile(&SeifertMatrix::unknot(), &[angle(1, 4)]);
        assert_eq!(empty.samples[&angle(1, 4)], 0);
    }

    #[test]
    fn oracle_agrees_on_examples() {
        let trefoil = SeifertMatrix::torus2(3).unwrap();
        assert_eq!(hermitian_signature_oracle(&trefoil, angle(1, 2)), Ok(-2));
        let p = SeifertMatrix::pretzel(&[3, 5, 7]).unwrap();
        assert_eq!(hermitian_signature_oracle(&p, angle(1, 2)), Ok(2));
        let t7 = SeifertMatrix::torus2(7).unwrap();
        assert_eq!(hermitian_signature_oracle(&t7, angle(3, 7)), Ok(-6));
    }

    #[test]
    fn signature_properties_randomized() {
        let mut rng = SmallRng::new(2024);
        let grid = [
            angle(1, 2),
            angle(1, 3),
            angle(1, 4),
            angle(1, 5),
            angle(2, 5),
            angle(1, 7),
            angle(3, 7),
            angle(1, 8),
            angle(5, 12),
        ];
        for _ in 0..40 {
            let genus = rng.range_usize(1, 3);
            let v = random_seifert(&mut rng, genus, 2);
            for x in grid {
                let s = match lt_signature(&v, x) {
                    Ok(s) => s,
                    Err(SignatureError::AtJumpAngle(_)) => continue,
                    Err(e) => panic!("{e}"),
                };
                // reversal invisibility
                assert_eq!(lt_signature(&v.reverse(), x), Ok(s));
                // mirror negates
                assert_eq!(lt_signature(&v.inverse(), x), Ok(-s));
                // conjugate angle symmetry
                assert_eq!(lt_signature(&v, x.conjugate()), Ok(s));
                // parity and genus bound
                assert_eq!(s % 2, 0);
                assert!(s.unsigned_abs() as usize <= 2 * v.genus());
                // exact engine vs floating oracle
                match hermitian_signature_oracle(&v, x) {
                    Ok(o) => assert_eq!(o, s, "oracle mismatch at {x} on {:?}", v.rows()),
                    Err(OracleError::MarginTooSmall) => {}
                }
            }
            // additivity on a random pair
            let w = random_seifert(&mut rng, 1, 2);
            let sum = v.connected_sum(&w);
            let x = grid[rng.range_usize(0, grid.len() - 1)];
            let sv = lt_signature(&v, x);
            let sw = lt_signature(&w, x);
            if let (Ok(sv), Ok(sw)) = (sv, sw) {
                assert_eq!(lt_signature(&sum, x), Ok(sv + sw));
            }
        }
    }

    #[test]
    fn concurrent_callers_share_caches() {
        // everything is immutable after construction; the trig and context
        // caches sit behind mutexes, so parallel evaluation must agree
        // with the sequential answers
        let v = SeifertMatrix::pretzel(&[1, 3, 5, 7, 9]).unwrap();
        let angles: Vec<RationalAngle> = (1..8).map(|p| angle(p, 17)).collect();
        let sequential: Vec<_> = angles.iter().map(|&x| lt_signature(&v, x)).collect();
        let parallel: Vec<_> = std::thread::scope(|scope| {
            let handles: Vec<_> = angles
                .iter()
                .map(|&x| scope.spawn({ let v = v.clone(); move || lt_signature(&v, x) }))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert_eq!(sequential, parallel);
    }

    #[test]
    fn grid_has_distinguished_points_first() {
        let grid = default_angle_grid();
        assert_eq!(grid[0], angle(1, 2));
        assert_eq!(grid[1], angle(1, 3));
        assert_eq!(grid[4], angle(3, 7));
        assert!(grid.len() > 150);
        // no duplicates
        let set: BTreeSet<_> = grid.iter().collect();
        assert_eq!(set.len(), grid.len());
    }
}
