//! Expression trees over the knot constructors and the concordance
//! operators: connected sum, reversal, inverse, mirror.

use crate::seifert::{MatrixError, SeifertMatrix};
use std::fmt;

/// A formal knot built from constructor leaves and unary/binary operators.
///
/// Leaves carry raw parameters; they are validated when the expression is
/// evaluated (and by [`KnotExpr::check`]), so a tree built by hand is
/// checked before any arithmetic happens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotExpr {
    Unknot,
    Pretzel(Vec<i64>),
    Torus2(i64),
    Twist(i64),
    Matrix(SeifertMatrix),
    Sum(Box<KnotExpr>, Box<KnotExpr>),
    Reverse(Box<KnotExpr>),
    Inverse(Box<KnotExpr>),
    Mirror(Box<KnotExpr>),
}

impl KnotExpr {
    pub fn sum(a: KnotExpr, b: KnotExpr) -> KnotExpr {
        KnotExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn reverse(e: KnotExpr) -> KnotExpr {
        KnotExpr::Reverse(Box::new(e))
    }

    pub fn inverse(e: KnotExpr) -> KnotExpr {
        KnotExpr::Inverse(Box::new(e))
    }

    pub fn mirror(e: KnotExpr) -> KnotExpr {
        KnotExpr::Mirror(Box::new(e))
    }

    /// `K # -K^r`, the sum of the knot with the inverse of its reverse.
    pub fn sum_with_inverse_reverse(&self) -> KnotExpr {
        KnotExpr::sum(self.clone(), KnotExpr::inverse(KnotExpr::reverse(self.clone())))
    }

    /// Left-fold connected sum of `n` copies; `n = 0` is the unknot.
    pub fn multiple(&self, n: usize) -> KnotExpr {
        let mut acc = match n {
            0 => return KnotExpr::Unknot,
            _ => self.clone(),
        };
        for _ in 1..n {
            acc = KnotExpr::sum(acc, self.clone());
        }
        acc
    }

    /// Recursive evaluation to a validated Seifert matrix.
    pub fn eval(&self) -> Result<SeifertMatrix, MatrixError> {
        match self {
            KnotExpr::Unknot => Ok(SeifertMatrix::unknot()),
            KnotExpr::Pretzel(p) => SeifertMatrix::pretzel(p),
            KnotExpr::Torus2(q) => SeifertMatrix::torus2(*q),
            KnotExpr::Twist(m) => SeifertMatrix::twist(*m),
            KnotExpr::Matrix(m) => Ok(m.clone()),
            KnotExpr::Sum(a, b) => Ok(a.eval()?.connected_sum(&b.eval()?)),
            KnotExpr::Reverse(e) => Ok(e.eval()?.reverse()),
            KnotExpr::Inverse(e) => Ok(e.eval()?.inverse()),
            KnotExpr::Mirror(e) => Ok(e.eval()?.mirror()),
        }
    }

    /// Validates every leaf without keeping the evaluated matrix.
    pub fn check(&self) -> Result<(), MatrixError> {
        self.eval().map(|_| ())
    }

    /// Upper bound for the three-genus: the genus of the constructed
    /// Seifert surface.
    pub fn g3_upper(&self) -> Result<usize, MatrixError> {
        Ok(self.eval()?.genus())
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => write!(f, "unknot"),
            KnotExpr::Pretzel(p) => {
                let items: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "pretzel({})", items.join(","))
            }
            KnotExpr::Torus2(q) => write!(f, "torus(2,{q})"),
            KnotExpr::Twist(m) => write!(f, "twist({m})"),
            KnotExpr::Matrix(m) => {
                let rows: Vec<String> = m
                    .rows()
                    .iter()
                    .map(|r| {
                        let items: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                        format!("[{}]", items.join(","))
                    })
                    .collect();
                write!(f, "matrix([{}])", rows.join(","))
            }
            KnotExpr::Sum(a, b) => write!(f, "sum({a}, {b})"),
            KnotExpr::Reverse(e) => write!(f, "rev({e})"),
            KnotExpr::Inverse(e) => write!(f, "inv({e})"),
            KnotExpr::Mirror(e) => write!(f, "mirror({e})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        assert_eq!(KnotExpr::Unknot.eval().unwrap().dim(), 0);

        let k = KnotExpr::Pretzel(vec![1, 1, 1]);
        let w = k.sum_with_inverse_reverse().eval().unwrap();
        // V + (-V^T) as a 4x4 block matrix
        assert_eq!(
            w.rows(),
            vec![
                vec![1, 1, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, -1, 0],
                vec![0, 0, -1, -1],
            ]
        );

        assert_eq!(KnotExpr::Pretzel(vec![3, 5, 7]).g3_upper().unwrap(), 1);
        assert!(KnotExpr::Pretzel(vec![2, 3]).eval().is_err());
    }

    #[test]
    fn display_roundtrip_shapes() {
        let e = KnotExpr::sum(
            KnotExpr::Pretzel(vec![1, 1, 1]),
            KnotExpr::inverse(KnotExpr::reverse(KnotExpr::Pretzel(vec![1, 1, 1]))),
        );
        assert_eq!(
            e.to_string(),
            "sum(pretzel(1,1,1), inv(rev(pretzel(1,1,1))))"
        );
        let m = KnotExpr::Matrix(SeifertMatrix::validate(vec![vec![-1, 1], vec![0, -1]]).unwrap());
        assert_eq!(m.to_string(), "matrix([[-1,1],[0,-1]])");
    }

    #[test]
    fn multiples() {
        let t = KnotExpr::Torus2(7);
        assert_eq!(t.multiple(0), KnotExpr::Unknot);
        assert_eq!(t.multiple(1), t);
        assert_eq!(t.multiple(3).eval().unwrap().dim(), 18);
    }
}
