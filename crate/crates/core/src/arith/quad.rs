use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{format_rational, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn of(value: &Rational) -> Sign {
        if value.is_zero() {
            Sign::Zero
        } else if value.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

/// `a + b * sqrt(d)` with `d >= 0`.
///
/// All operands of a binary operation must share the same `d`. Values are
/// never collapsed to plain rationals, even when `d` is a perfect square;
/// equality and ordering go through [`quad_sign`] and therefore agree with
/// the real numbers being represented.
#[derive(Debug, Clone)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<Self> {
        if d.is_negative() {
            return Err(Error::InvalidArgument(format!(
                "negative discriminant {}",
                format_rational(&d)
            )));
        }
        Ok(QuadExt { a, b, d })
    }

    pub fn from_rational(a: Rational, d: &Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            d: d.clone(),
        }
    }

    pub fn zero(d: &Rational) -> Self {
        Self::from_rational(Rational::zero(), d)
    }

    pub fn one(d: &Rational) -> Self {
        Self::from_rational(Rational::one(), d)
    }

    /// The rational square root of `d`, if there is one.
    pub fn rational_sqrt_of_d(&self) -> Option<Rational> {
        rational_sqrt(&self.d)
    }

    /// The represented value as a rational, when it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.b.is_zero() {
            return Some(self.a.clone());
        }
        self.rational_sqrt_of_d().map(|r| &self.a + &self.b * r)
    }

    pub fn is_zero(&self) -> bool {
        quad_sign(self) == Sign::Zero
    }

    pub fn conjugate(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// Field norm `a^2 - b^2 d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * &self.d
    }

    fn check_field(&self, rhs: &QuadExt) -> Result<()> {
        if self.d != rhs.d {
            return Err(Error::DiscriminantMismatch {
                lhs: format_rational(&self.d),
                rhs: format_rational(&rhs.d),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &QuadExt) -> Result<QuadExt> {
        quad_arith(self, rhs, QuadOp::Add)
    }

    pub fn try_sub(&self, rhs: &QuadExt) -> Result<QuadExt> {
        quad_arith(self, rhs, QuadOp::Sub)
    }

    pub fn try_mul(&self, rhs: &QuadExt) -> Result<QuadExt> {
        quad_arith(self, rhs, QuadOp::Mul)
    }

    pub fn try_div(&self, rhs: &QuadExt) -> Result<QuadExt> {
        quad_arith(self, rhs, QuadOp::Div)
    }

    pub fn scale(&self, factor: &Rational) -> QuadExt {
        QuadExt {
            a: &self.a * factor,
            b: &self.b * factor,
            d: self.d.clone(),
        }
    }

    pub fn add_rational(&self, value: &Rational) -> QuadExt {
        QuadExt {
            a: &self.a + value,
            b: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn pow(&self, exp: u32) -> QuadExt {
        let mut result = QuadExt::one(&self.d);
        let mut base = self.clone();
        let mut exp = exp;
        while exp > 0 {
            if exp & 1 == 1 {
                result = mul_unchecked(&result, &base);
            }
            base = mul_unchecked(&base, &base);
            exp >>= 1;
        }
        result
    }

    pub fn abs(&self) -> QuadExt {
        match quad_sign(self) {
            Sign::Negative => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    pub fn try_cmp(&self, rhs: &QuadExt) -> Result<Ordering> {
        Ok(quad_sign(&self.try_sub(rhs)?).to_ordering())
    }

    pub fn cmp_rational(&self, rhs: &Rational) -> Ordering {
        quad_sign(&self.add_rational(&-rhs)).to_ordering()
    }

    /// Nearest double, for log-scale estimates only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.try_sub(other).map(|v| v.is_zero()).unwrap_or(false)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*sqrt({})",
            format_rational(&self.a),
            format_rational(&self.b),
            format_rational(&self.d)
        )
    }
}

fn mul_unchecked(lhs: &QuadExt, rhs: &QuadExt) -> QuadExt {
    QuadExt {
        a: &lhs.a * &rhs.a + &lhs.b * &rhs.b * &lhs.d,
        b: &lhs.a * &rhs.b + &lhs.b * &rhs.a,
        d: lhs.d.clone(),
    }
}

fn rational_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let p = value.numer().sqrt();
    let q = value.denom().sqrt();
    if &(&p * &p) == value.numer() && &(&q * &q) == value.denom() {
        Some(Rational::new(p, q))
    } else {
        None
    }
}

/// Exact field arithmetic in `Q(sqrt(d))`.
pub fn quad_arith(lhs: &QuadExt, rhs: &QuadExt, op: QuadOp) -> Result<QuadExt> {
    lhs.check_field(rhs)?;
    let d = lhs.d.clone();
    Ok(match op {
        QuadOp::Add => QuadExt {
            a: &lhs.a + &rhs.a,
            b: &lhs.b + &rhs.b,
            d,
        },
        QuadOp::Sub => QuadExt {
            a: &lhs.a - &rhs.a,
            b: &lhs.b - &rhs.b,
            d,
        },
        QuadOp::Mul => mul_unchecked(lhs, rhs),
        QuadOp::Div => {
            let norm = rhs.norm();
            if !norm.is_zero() {
                mul_unchecked(lhs, &rhs.conjugate()).scale(&norm.recip())
            } else {
                // A vanishing norm with a nonzero divisor only happens when
                // sqrt(d) is rational; divide by that rational directly.
                match rhs.to_rational() {
                    Some(r) if !r.is_zero() => lhs.scale(&r.recip()),
                    _ => return Err(Error::DivisionByZero),
                }
            }
        }
    })
}

/// Exact sign of `a + b sqrt(d)`.
pub fn quad_sign(v: &QuadExt) -> Sign {
    let sa = Sign::of(&v.a);
    let sb = if v.d.is_zero() {
        Sign::Zero
    } else {
        Sign::of(&v.b)
    };
    match (sa, sb) {
        (_, Sign::Zero) => sa,
        (Sign::Zero, _) => sb,
        _ if sa == sb => sa,
        _ => {
            let a2 = &v.a * &v.a;
            let b2d = &v.b * &v.b * &v.d;
            match a2.cmp(&b2d) {
                Ordering::Greater => sa,
                Ordering::Less => sb,
                Ordering::Equal => Sign::Zero,
            }
        }
    }
}

/// The roots `1/2 +- sqrt(1/4 + x)` of `t^2 - t - x`, larger root first.
pub fn lambda_pair(x: &Rational) -> Result<(QuadExt, QuadExt)> {
    crate::calculus::check_nondegenerate(x)?;
    let half = Rational::new(1.into(), 2.into());
    let d = Rational::one() + x * Rational::from_integer(4.into());
    let l1 = QuadExt {
        a: half.clone(),
        b: half.clone(),
        d: d.clone(),
    };
    let l2 = QuadExt {
        a: half.clone(),
        b: -half,
        d,
    };
    Ok((l1, l2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn q(a: Rational, b: Rational, d: i64) -> QuadExt {
        QuadExt::new(a, b, int(d)).unwrap()
    }

    #[test]
    fn conjugate_product() {
        let p = q(int(1), int(1), 2)
            .try_mul(&q(int(1), int(-1), 2))
            .unwrap();
        assert_eq!(p.a, int(-1));
        assert_eq!(p.b, int(0));
    }

    #[test]
    fn lambda_sum_and_product_in_square_field() {
        let l1 = q(rat(1, 2), rat(1, 2), 9);
        let l2 = q(rat(1, 2), rat(-1, 2), 9);
        let s = l1.try_add(&l2).unwrap();
        assert_eq!((s.a, s.b), (int(1), int(0)));
        let p = l1.try_mul(&l2).unwrap();
        assert_eq!((p.a, p.b), (int(-2), int(0)));
    }

    #[test]
    fn signs() {
        assert_eq!(quad_sign(&q(int(0), int(0), 5)), Sign::Zero);
        assert_eq!(quad_sign(&q(int(-1), int(1), 9)), Sign::Positive);
        assert_eq!(quad_sign(&q(int(1), int(-1), 2)), Sign::Negative);
        assert_eq!(quad_sign(&q(int(3), int(-1), 9)), Sign::Zero);
        assert_eq!(quad_sign(&q(int(-2), int(5), 0)), Sign::Negative);
    }

    #[test]
    fn mismatched_fields_rejected() {
        let err = q(int(1), int(1), 2).try_add(&q(int(1), int(1), 3));
        assert!(matches!(err, Err(Error::DiscriminantMismatch { .. })));
    }

    #[test]
    fn division() {
        let v = q(int(3), int(2), 2);
        let w = q(int(1), int(-1), 2);
        let r = v.try_div(&w).unwrap();
        assert_eq!(r.try_mul(&w).unwrap(), v);
        assert!(matches!(
            v.try_div(&QuadExt::zero(&int(2))),
            Err(Error::DivisionByZero)
        ));
        // 3 - sqrt(9) = 0 even though it is not syntactically zero
        assert!(matches!(
            q(int(3), int(2), 9).try_div(&q(int(3), int(-1), 9)),
            Err(Error::DivisionByZero)
        ));
        // norm vanishes but value 3 + sqrt(9) = 6 does not
        let six = q(int(3), int(1), 9);
        let r = q(int(12), int(0), 9).try_div(&six).unwrap();
        assert_eq!(r.to_rational(), Some(int(2)));
    }

    #[test]
    fn lambda_examples() {
        let (l1, l2) = lambda_pair(&int(2)).unwrap();
        assert_eq!(l1.to_rational(), Some(int(2)));
        assert_eq!(l2.to_rational(), Some(int(-1)));
        let (l1, l2) = lambda_pair(&int(6)).unwrap();
        assert_eq!(l1.to_rational(), Some(int(3)));
        assert_eq!(l2.to_rational(), Some(int(-2)));
        assert!(matches!(
            lambda_pair(&rat(-1, 4)),
            Err(Error::Degenerate { .. })
        ));
        assert!(matches!(
            lambda_pair(&int(0)),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn square_discriminant_agrees_with_rationals() {
        let v = q(int(1), int(2), 4);
        assert_eq!(v, QuadExt::from_rational(int(5), &int(4)));
        assert_eq!(v.cmp_rational(&int(5)), Ordering::Equal);
        assert_eq!(v.cmp_rational(&int(6)), Ordering::Less);
    }

    fn nondegenerate_x() -> impl Strategy<Value = Rational> {
        (-250i64..5000, 1i64..1000)
            .prop_map(|(p, q)| rat(p, q))
            .prop_filter("nondegenerate", |x| x > &rat(-1, 4) && !x.is_zero())
    }

    proptest! {
        #[test]
        fn vieta_and_root_identities(x in nondegenerate_x()) {
            let (l1, l2) = lambda_pair(&x).unwrap();
            let sum = l1.try_add(&l2).unwrap();
            prop_assert_eq!(sum.to_rational(), Some(int(1)));
            let prod = l1.try_mul(&l2).unwrap();
            prop_assert_eq!(prod.to_rational(), Some(-x.clone()));
            prop_assert_eq!(l1.add_rational(&x), l1.pow(2));
            prop_assert_eq!(l2.add_rational(&x), l2.pow(2));
            prop_assert_eq!(l1.try_cmp(&l2).unwrap(), Ordering::Greater);
        }

        #[test]
        fn sign_agrees_with_rationals_for_square_d(
            a in -50i64..50, b in -50i64..50, r in 0i64..20, s in 1i64..20
        ) {
            let d = rat(r * r, s * s);
            let v = QuadExt::new(int(a), int(b), d).unwrap();
            let exact = int(a) + int(b) * rat(r, s);
            prop_assert_eq!(quad_sign(&v), Sign::of(&exact));
        }

        #[test]
        fn ordering_is_transitive(
            a in prop::collection::vec((-20i64..20, -20i64..20), 3), d in 0i64..12
        ) {
            let vs: Vec<QuadExt> = a.iter().map(|&(x, y)| q(int(x), int(y), d)).collect();
            let c01 = vs[0].try_cmp(&vs[1]).unwrap();
            let c12 = vs[1].try_cmp(&vs[2]).unwrap();
            let c02 = vs[0].try_cmp(&vs[2]).unwrap();
            if c01 != Ordering::Greater && c12 != Ordering::Greater {
                prop_assert_ne!(c02, Ordering::Greater);
            }
            let fa = vs[0].to_f64();
            let fb = vs[1].to_f64();
            if (fa - fb).abs() > 1e-9 {
                prop_assert_eq!(c01, fa.partial_cmp(&fb).unwrap());
            }
        }
    }
}
