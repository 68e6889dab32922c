//! Genus and cobordism-distance bounds, plus the slice obstructions used
//! to audit slice assertions at the abelian level.

use crate::expr::KnotExpr;
use crate::factor::{factor_int_poly, FactorError};
use crate::invariants::{alexander, determinant, lt_signature, RationalAngle, SignatureError};
use crate::poly::{IntPoly, LaurentPoly};
use crate::seifert::{GenusData, MatrixError, SeifertMatrix};
use num_bigint::BigInt;
use num_traits::Signed;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error("the bound requires a nontrivial knot; pass an explicit override for knots with trivial Alexander polynomial")]
    UnknotInput,
    #[error("inconsistent bounds: lower {lower} exceeds upper {upper} for {quantity}; this is a defect")]
    InconsistentBounds {
        quantity: String,
        lower: usize,
        upper: usize,
    },
}

/// Outcome of the Fox-Milnor factorization test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoxMilnor {
    /// The polynomial is f(t)·f(1/t) up to units; `witness` is one such f.
    Pass { witness: IntPoly },
    Fail,
}

impl FoxMilnor {
    pub fn passed(&self) -> bool {
        matches!(self, FoxMilnor::Pass { .. })
    }
}

/// Default cap on the degree handed to the integer factorizer.
pub const DEFAULT_FACTOR_DEGREE_CAP: usize = 24;

/// Fox-Milnor condition: does `poly` equal f(t)·f(1/t) up to a unit ±t^k?
///
/// Decided by integer factorization: the condition holds iff the content is
/// a square and the irreducible factors pair up with their reciprocals
/// (self-reciprocal factors with even multiplicity). Slice knots pass;
/// a failure obstructs sliceness.
pub fn fox_milnor(poly: &LaurentPoly, degree_cap: usize) -> Result<FoxMilnor, ObstructionError> {
    assert!(!poly.is_zero(), "Alexander polynomials are nonzero");
    let p = poly.to_int_poly();
    if p.degree() % 2 != 0 {
        return Ok(FoxMilnor::Fail);
    }
    let factorization = factor_int_poly(&p, degree_cap)?;
    let content_sqrt = exact_sqrt(&factorization.content);
    let Some(content_sqrt) = content_sqrt else {
        return Ok(FoxMilnor::Fail);
    };

    let by_poly: BTreeMap<Vec<BigInt>, u32> = factorization
        .factors
        .iter()
        .map(|(g, m)| (g.0.clone(), *m))
        .collect();
    let mut witness = IntPoly::constant(content_sqrt);
    for (g, &mult) in &by_poly {
        let gp = IntPoly::from_coeffs(g.clone());
        let recip = gp.reciprocal_primitive();
        if recip.0 == *g {
            if mult % 2 != 0 {
                return Ok(FoxMilnor::Fail);
            }
            for _ in 0..mult / 2 {
                witness = witness.mul(&gp);
            }
        } else {
            match by_poly.get(&recip.0) {
                Some(&m2) if m2 == mult => {
                    // count each pair once, from its smaller member
                    if *g < recip.0 {
                        for _ in 0..mult {
                            witness = witness.mul(&gp);
                        }
                    }
                }
                _ => return Ok(FoxMilnor::Fail),
            }
        }
    }
    Ok(FoxMilnor::Pass { witness })
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Fast necessary condition implied by Fox-Milnor: the knot determinant of
/// a slice form is a perfect square.
pub fn det_square_test(v: &SeifertMatrix) -> bool {
    exact_sqrt(&determinant(v)).is_some()
}

/// Classical signature bound: max over the grid of |σ_ω|/2 <= g4, with the
/// first maximizing angle as witness. Jump angles are skipped.
pub fn g4_lower(v: &SeifertMatrix, grid: &[RationalAngle]) -> (usize, Option<RationalAngle>) {
    let mut best = 0usize;
    let mut witness = None;
    for &x in grid {
        match lt_signature(v, x) {
            Ok(s) => {
                let bound = (s.unsigned_abs() as usize).div_ceil(2);
                if bound > best {
                    best = bound;
                    witness = Some(x);
                }
            }
            Err(SignatureError::AtJumpAngle(_)) => continue,
            Err(e) => panic!("{e}"),
        }
    }
    (best, witness)
}

/// Lower bound for the cobordism distance d(K, J) = g4(K # -J), computed
/// as the signature bound of the block sum V_K ⊕ (-V_J).
pub fn cobordism_lower(
    v_k: &SeifertMatrix,
    v_j: &SeifertMatrix,
    grid: &[RationalAngle],
) -> (usize, Option<RationalAngle>) {
    g4_lower(&v_k.connected_sum(&v_j.inverse()), grid)
}

/// Which upper bound on d(K, K^r) to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceBoundRule {
    /// d(K, K^r) <= g4(K) + g4(K^r) = 2 g4(K); needs no hypothesis.
    Triangle,
    /// Surgery along the zero-framed band sum on the Seifert surface of
    /// K # -K^r: d(K, K^r) <= 2 g3(K) - 1 for nontrivial K.
    ZeroFramedSurgery,
    /// The previous bound read through g3 = g4 (caller-asserted):
    /// d(K, K^r) <= 2 g4(K) - 1.
    TightGenusSurgery,
    /// k disjoint split unknotted curves on the surface (caller-asserted):
    /// d(K, K^r) <= 2 g4(K) - k.
    SplitUnlink { k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceUpper {
    pub value: usize,
    pub provenance: String,
    pub assumptions: Vec<String>,
}

/// Upper bound on d(K, K^r). Strict inequalities arrive as integer bounds
/// (a strict "< 2g" becomes "<= 2g - 1"). For the surgery rules the knot
/// must be nontrivial: positive genus and nontrivial Alexander polynomial,
/// or `assume_nontrivial` when the polynomial cannot see it.
pub fn d_upper(
    expr: &KnotExpr,
    rule: DistanceBoundRule,
    assume_nontrivial: bool,
) -> Result<DistanceUpper, ObstructionError> {
    let v = expr.eval()?;
    let g = v.genus();
    let nontrivial = g >= 1 && (assume_nontrivial || !alexander(&v).is_one());
    match rule {
        DistanceBoundRule::Triangle => Ok(DistanceUpper {
            value: 2 * g,
            provenance: "triangle inequality with the surface genus bounding g4".to_string(),
            assumptions: vec![],
        }),
        DistanceBoundRule::ZeroFramedSurgery => {
            if !nontrivial {
                return Err(ObstructionError::UnknotInput);
            }
            Ok(DistanceUpper {
                value: 2 * g - 1,
                provenance: "surgery along the zero-framed band sum class on the doubled surface"
                    .to_string(),
                assumptions: vec![],
            })
        }
        DistanceBoundRule::TightGenusSurgery => {
            if !nontrivial {
                return Err(ObstructionError::UnknotInput);
            }
            Ok(DistanceUpper {
                value: 2 * g - 1,
                provenance: "surgery bound read through g3 = g4".to_string(),
                assumptions: vec!["caller asserts g3(K) = g4(K)".to_string()],
            })
        }
        DistanceBoundRule::SplitUnlink { k } => {
            if !nontrivial {
                return Err(ObstructionError::UnknotInput);
            }
            if k == 0 || k > 2 * g {
                return Err(MatrixError::BadParameter(format!(
                    "split-unlink rank k = {k} must lie in 1..={}",
                    2 * g
                ))
                .into());
            }
            Ok(DistanceUpper {
                value: 2 * g - k,
                provenance: format!("surgery along {k} split unknotted curves"),
                assumptions: vec![
                    format!("caller asserts {k} disjoint curves forming a split unlink on the surface"),
                    "caller asserts g3(K) = g4(K)".to_string(),
                ],
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    FourGenus,
    CobordismDistanceToReverse,
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Quantity::FourGenus => write!(f, "g4"),
            Quantity::CobordismDistanceToReverse => write!(f, "d(K,K^r)"),
        }
    }
}

/// Reconciled lower/upper bounds for one quantity, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub subject: String,
    pub quantity: Quantity,
    pub lower: usize,
    pub lower_witness: Option<RationalAngle>,
    pub upper: usize,
    pub upper_provenance: String,
    pub tight: bool,
}

/// Assemble the bounds for g4(K) and d(K, K^r) and flag tight cases.
/// `InconsistentBounds` signals a defect and must never fire.
pub fn reconcile(expr: &KnotExpr, grid: &[RationalAngle]) -> Result<Vec<BoundReport>, ObstructionError> {
    let v = expr.eval()?;
    let subject = expr.to_string();
    let g = v.genus();

    let (g4_lo, g4_witness) = g4_lower(&v, grid);
    let genus_data = GenusData::new(g, g4_lo, g).ok_or(ObstructionError::InconsistentBounds {
        quantity: Quantity::FourGenus.to_string(),
        lower: g4_lo,
        upper: g,
    })?;
    let g4_report = BoundReport {
        subject: subject.clone(),
        quantity: Quantity::FourGenus,
        lower: genus_data.g4_lower(),
        lower_witness: g4_witness,
        upper: genus_data.g4_upper(),
        upper_provenance: "genus of the constructed Seifert surface".to_string(),
        tight: genus_data.g4_lower() == genus_data.g4_upper(),
    };

    let (d_lo, d_witness) = cobordism_lower(&v, &v.reverse(), grid);
    let d_up = if g == 0 {
        DistanceUpper {
            value: 0,
            provenance: "unknot".to_string(),
            assumptions: vec![],
        }
    } else {
        match d_upper(expr, DistanceBoundRule::ZeroFramedSurgery, false) {
            Ok(b) => b,
            Err(ObstructionError::UnknotInput) => d_upper(expr, DistanceBoundRule::Triangle, false)?,
            Err(e) => return Err(e),
        }
    };
    let d_report = BoundReport {
        subject,
        quantity: Quantity::CobordismDistanceToReverse,
        lower: d_lo,
        lower_witness: d_witness,
        upper: d_up.value,
        upper_provenance: d_up.provenance,
        tight: d_lo == d_up.value,
    };

    for r in [&g4_report, &d_report] {
        if r.lower > r.upper {
            return Err(ObstructionError::InconsistentBounds {
                quantity: r.quantity.to_string(),
                lower: r.lower,
                upper: r.upper,
            });
        }
    }
    Ok(vec![g4_report, d_report])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::default_angle_grid;
    use crate::sample::{random_seifert, SmallRng};

    fn angle(p: u64, q: u64) -> RationalAngle {
        RationalAngle::new(p, q).unwrap()
    }

    fn small_grid() -> Vec<RationalAngle> {
        vec![
            angle(1, 2),
            angle(1, 3),
            angle(1, 7),
            angle(2, 7),
            angle(3, 7),
            angle(1, 4),
            angle(1, 5),
            angle(2, 5),
            angle(3, 8),
            angle(5, 12),
        ]
    }

    #[test]
    fn fox_milnor_examples() {
        // trefoil fails: det 3 is not a square
        let trefoil = LaurentPoly::from_i64_terms(&[(-1, 1), (0, -1), (1, 1)]);
        assert_eq!(fox_milnor(&trefoil, 24).unwrap(), FoxMilnor::Fail);

        // 6_1 passes with witness 2t - 1
        let six_one = LaurentPoly::from_i64_terms(&[(-1, 2), (0, -5), (1, 2)]);
        match fox_milnor(&six_one, 24).unwrap() {
            FoxMilnor::Pass { witness } => {
                let p = six_one.to_int_poly();
                let candidate = witness.mul(&witness.reciprocal_primitive());
                assert!(p == candidate || p == candidate.neg());
            }
            FoxMilnor::Fail => panic!("6_1 is slice"),
        }

        // the unknot passes
        assert!(fox_milnor(&LaurentPoly::one(), 24).unwrap().passed());

        // pretzel(3,5,7) fails
        let p357 = alexander(&SeifertMatrix::pretzel(&[3, 5, 7]).unwrap());
        assert_eq!(fox_milnor(&p357, 24).unwrap(), FoxMilnor::Fail);
    }

    #[test]
    fn fox_milnor_on_metabolic_sums() {
        let mut rng = SmallRng::new(31);
        for _ in 0..20 {
            let genus = rng.range_usize(1, 2);
            let v = random_seifert(&mut rng, genus, 2);
            let sum = v.connected_sum(&v.inverse());
            let alex = alexander(&sum);
            assert!(
                fox_milnor(&alex, 24).unwrap().passed(),
                "V ⊕ -V must pass Fox-Milnor, Δ = {alex}"
            );
            assert!(det_square_test(&sum));
        }
    }

    #[test]
    fn det_square_examples() {
        assert!(!det_square_test(&SeifertMatrix::pretzel(&[3, 5, 7]).unwrap()));
        assert!(det_square_test(&SeifertMatrix::unknot()));
    }

    #[test]
    fn g4_lower_examples() {
        let t7 = SeifertMatrix::torus2(7).unwrap();
        assert_eq!(g4_lower(&t7, &small_grid()), (3, Some(angle(1, 2))));

        let p = SeifertMatrix::pretzel(&[3, 5, 7]).unwrap();
        assert_eq!(g4_lower(&p, &small_grid()).0, 1);

        assert_eq!(g4_lower(&SeifertMatrix::unknot(), &small_grid()), (0, None));
    }

    #[test]
    fn g4_lower_vanishes_on_metabolic_sums() {
        let mut rng = SmallRng::new(8);
        for _ in 0..10 {
            let genus = rng.range_usize(1, 2);
            let v = random_seifert(&mut rng, genus, 2);
            let sum = v.connected_sum(&v.inverse());
            assert_eq!(g4_lower(&sum, &small_grid()).0, 0);
        }
    }

    #[test]
    fn cobordism_lower_examples() {
        let t7 = SeifertMatrix::torus2(7).unwrap();
        let t3 = SeifertMatrix::torus2(3).unwrap();
        assert_eq!(cobordism_lower(&t7, &t3, &small_grid()), (2, Some(angle(1, 2))));
        assert_eq!(cobordism_lower(&t7, &t7, &small_grid()).0, 0);
        // reversal invisibility
        let mut rng = SmallRng::new(77);
        for _ in 0..10 {
            let genus = rng.range_usize(1, 3);
            let v = random_seifert(&mut rng, genus, 2);
            assert_eq!(cobordism_lower(&v, &v.reverse(), &small_grid()).0, 0);
        }
    }

    #[test]
    fn d_upper_examples() {
        let p = KnotExpr::Pretzel(vec![3, 5, 7]);
        let b = d_upper(&p, DistanceBoundRule::ZeroFramedSurgery, false).unwrap();
        assert_eq!(b.value, 1);

        let p5 = KnotExpr::Pretzel(vec![3, 5, 7, 9, 11]);
        let b = d_upper(&p5, DistanceBoundRule::SplitUnlink { k: 2 }, false).unwrap();
        assert_eq!(b.value, 2);
        assert_eq!(b.assumptions.len(), 2);

        assert_eq!(
            d_upper(&KnotExpr::Unknot, DistanceBoundRule::ZeroFramedSurgery, false),
            Err(ObstructionError::UnknotInput)
        );

        let tri = d_upper(&p, DistanceBoundRule::Triangle, false).unwrap();
        assert_eq!(tri.value, 2);
    }

    #[test]
    fn reconcile_examples() {
        let reports = reconcile(&KnotExpr::Pretzel(vec![3, 5, 7]), &small_grid()).unwrap();
        assert_eq!(reports[0].quantity, Quantity::FourGenus);
        assert_eq!((reports[0].lower, reports[0].upper, reports[0].tight), (1, 1, true));
        assert_eq!((reports[1].lower, reports[1].upper), (0, 1));

        let reports = reconcile(&KnotExpr::Torus2(7), &small_grid()).unwrap();
        assert_eq!((reports[0].lower, reports[0].upper, reports[0].tight), (3, 3, true));
        assert_eq!(reports[1].upper, 5);

        let reports = reconcile(&KnotExpr::Unknot, &small_grid()).unwrap();
        assert_eq!((reports[0].lower, reports[0].upper), (0, 0));
        assert_eq!((reports[1].lower, reports[1].upper, reports[1].tight), (0, 0, true));
    }

    #[test]
    fn reconcile_uses_default_grid() {
        let reports = reconcile(&KnotExpr::Torus2(5), &default_angle_grid()).unwrap();
        assert_eq!((reports[0].lower, reports[0].upper, reports[0].tight), (2, 2, true));
    }

    #[test]
    fn distance_bound_respects_triangle() {
        let mut rng = SmallRng::new(2718);
        for _ in 0..15 {
            let gk = rng.range_usize(1, 2);
            let k = random_seifert(&mut rng, gk, 2);
            let gj = rng.range_usize(1, 2);
            let j = random_seifert(&mut rng, gj, 2);
            let (lower, _) = cobordism_lower(&k, &j, &small_grid());
            assert!(lower <= k.genus() + j.genus());
            assert_eq!(cobordism_lower(&k, &k, &small_grid()).0, 0);
        }
    }

    #[test]
    fn fox_milnor_implies_det_square() {
        let mut rng = SmallRng::new(5150);
        for _ in 0..25 {
            let genus = rng.range_usize(1, 2);
            let v = random_seifert(&mut rng, genus, 2);
            let alex = alexander(&v);
            if fox_milnor(&alex, 24).unwrap().passed() {
                assert!(det_square_test(&v));
            }
        }
    }
}
