//! Exact scalars and rational points on the unit circle.

use std::fmt::{self, Debug};
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, NumAssign, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// An exact field of characteristic zero.
///
/// Every routine in this crate decides rank by testing entries against zero,
/// so only exact number types implement this trait. Floating-point types are
/// deliberately absent.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Num
    + NumAssign
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    fn from_int(v: i64) -> Self;
}

impl<I> Field for Ratio<I>
where
    I: Integer + Clone + NumAssign + Signed + From<i64> + Debug + Send + Sync + 'static,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(I::from(v))
    }
}

pub(crate) fn mul<T: Field>(a: &T, b: &T) -> T {
    let mut r = a.clone();
    r *= b;
    r
}

pub(crate) fn square<T: Field>(a: &T) -> T {
    mul(a, a)
}

/// `tan(θ/2)` for a rotation angle θ, with θ = π as the point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum HalfTangent<T> {
    Finite(T),
    Infinity,
}

/// The point `(cos θ, sin θ)` of a rotation angle, held exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CirclePoint<T> {
    c: T,
    s: T,
}

impl<T: Field> CirclePoint<T> {
    pub fn new(c: T, s: T) -> Result<Self> {
        if square(&c) + square(&s) != T::one() {
            return Err(Error::NotOnCircle(format!("{c:?}, {s:?}")));
        }
        Ok(Self { c, s })
    }

    pub fn identity() -> Self {
        Self {
            c: T::one(),
            s: T::zero(),
        }
    }

    /// `((1−t²)/(1+t²), 2t/(1+t²))`, or `(−1, 0)` at infinity.
    pub fn from_half_tangent(t: &HalfTangent<T>) -> Self {
        match t {
            HalfTangent::Infinity => Self {
                c: -T::one(),
                s: T::zero(),
            },
            HalfTangent::Finite(t) => {
                let t2 = square(t);
                let denom = T::one() + t2.clone();
                let c = (T::one() - t2) / denom.clone();
                let s = (T::from_int(2) * t.clone()) / denom;
                let point = Self { c, s };
                debug_assert!(point.on_circle());
                point
            }
        }
    }

    pub fn cos(&self) -> &T {
        &self.c
    }

    pub fn sin(&self) -> &T {
        &self.s
    }

    fn on_circle(&self) -> bool {
        square(&self.c) + square(&self.s) == T::one()
    }

    pub fn antipode(&self) -> Self {
        Self {
            c: -self.c.clone(),
            s: -self.s.clone(),
        }
    }

    /// Angle addition: the point of `θ + φ`.
    pub fn rotate_by(&self, other: &Self) -> Self {
        Self {
            c: mul(&self.c, &other.c) - mul(&self.s, &other.s),
            s: mul(&self.s, &other.c) + mul(&self.c, &other.s),
        }
    }

    /// The point of `−θ`.
    pub fn inverse(&self) -> Self {
        Self {
            c: self.c.clone(),
            s: -self.s.clone(),
        }
    }

    /// Applies `R_θ` to a plane vector.
    pub fn apply(&self, x: &T, y: &T) -> (T, T) {
        (
            mul(&self.c, x) - mul(&self.s, y),
            mul(&self.s, x) + mul(&self.c, y),
        )
    }
}

/// True iff the angles of `a` and `b` differ by neither 0 nor π.
pub fn distinct_mod_pi<T: Field>(a: &CirclePoint<T>, b: &CirclePoint<T>) -> bool {
    a != b && *a != b.antipode()
}

pub fn parse_rational(token: &str) -> Result<Rational> {
    let trimmed = token.trim();
    let bad = || Error::parse("rational", token);
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_half_tangent(token: &str) -> Result<HalfTangent<Rational>> {
    let token = token.trim();
    if token.eq_ignore_ascii_case("inf") {
        Ok(HalfTangent::Infinity)
    } else {
        parse_rational(token)
            .map(HalfTangent::Finite)
            .map_err(|_| Error::parse("half-tangent", token))
    }
}

/// Accepts `"t=<rational>"`, `"t=inf"` or `"c,s"`.
pub fn parse_circle_point(token: &str) -> Result<CirclePoint<Rational>> {
    let token = token.trim();
    if let Some(rest) = token.strip_prefix("t=") {
        return Ok(CirclePoint::from_half_tangent(&parse_half_tangent(rest)?));
    }
    let Some((c, s)) = token.split_once(',') else {
        return Err(Error::parse("circle point", token));
    };
    let c = parse_rational(c).map_err(|_| Error::parse("circle point", token))?;
    let s = parse_rational(s).map_err(|_| Error::parse("circle point", token))?;
    CirclePoint::new(c, s)
}

impl fmt::Display for CirclePoint<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.c, self.s)
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`.
///
/// Walks the continued-fraction convergents and compares the last admissible
/// one with the best semiconvergent.
pub fn limit_denominator(x: &Rational, max_den: &BigInt) -> Rational {
    assert!(max_den >= &BigInt::one(), "max_den must be positive");
    if x.denom() <= max_den {
        return x.clone();
    }
    let (mut p0, mut q0, mut p1, mut q1) =
        (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if &q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let r = &n - &a * &d;
        n = std::mem::replace(&mut d, r);
    }
    let k = (max_den - &q0).div_floor(&q1);
    let semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let conv = Rational::new(p1, q1);
    if (&conv - x).abs() <= (&semi - x).abs() {
        conv
    } else {
        semi
    }
}

/// Maps a real angle (radians, decimal text) to a nearby exact circle point.
///
/// The half tangent `tan(θ/2)` is evaluated in floating point and replaced by
/// its best rational approximation with denominator at most `max_denominator`.
/// Angles within 1e-12 of π (mod 2π) give `(−1, 0)`.
pub fn approximate_angle(theta: &str, max_denominator: u64) -> Result<CirclePoint<Rational>> {
    let value: f64 = theta
        .trim()
        .parse()
        .map_err(|_| Error::parse("angle", theta))?;
    if !value.is_finite() {
        return Err(Error::parse("angle", theta));
    }
    if max_denominator == 0 {
        return Err(Error::parse("max denominator", "0"));
    }
    let reduced = value.rem_euclid(std::f64::consts::TAU);
    if (reduced - std::f64::consts::PI).abs() < 1e-12 {
        return Ok(CirclePoint::from_half_tangent(&HalfTangent::Infinity));
    }
    let tangent = (value / 2.0).tan();
    let exact = Rational::from_f64(tangent).ok_or_else(|| Error::parse("angle", theta))?;
    let t = limit_denominator(&exact, &BigInt::from(max_denominator));
    Ok(CirclePoint::from_half_tangent(&HalfTangent::Finite(t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn point(c: &str, s: &str) -> CirclePoint<Rational> {
        CirclePoint::new(q(c), q(s)).unwrap()
    }

    #[test]
    fn half_tangent_examples() {
        let at = |t: &str| CirclePoint::from_half_tangent(&HalfTangent::Finite(q(t)));
        assert_eq!(at("0"), point("1", "0"));
        assert_eq!(at("1"), point("0", "1"));
        assert_eq!(at("1/2"), point("3/5", "4/5"));
        assert_eq!(
            CirclePoint::<Rational>::from_half_tangent(&HalfTangent::Infinity),
            point("-1", "0")
        );
    }

    #[test]
    fn distinctness_examples() {
        assert!(distinct_mod_pi(&point("1", "0"), &point("0", "1")));
        assert!(!distinct_mod_pi(
            &point("3/5", "4/5"),
            &point("-3/5", "-4/5")
        ));
        assert!(!distinct_mod_pi(&point("3/5", "4/5"), &point("3/5", "4/5")));
    }

    #[test]
    fn approximate_angle_examples() {
        assert_eq!(approximate_angle("0", 7).unwrap(), point("1", "0"));
        assert_eq!(
            approximate_angle("1.5707963267948966", 10).unwrap(),
            point("0", "1")
        );
        assert_eq!(
            approximate_angle("3.141592653589793", 10).unwrap(),
            point("-1", "0")
        );
        assert!(approximate_angle("abc", 10).is_err());
        assert!(approximate_angle("NaN", 10).is_err());
    }

    #[test]
    fn limit_denominator_matches_known_values() {
        let pi = Rational::from_f64(std::f64::consts::PI).unwrap();
        assert_eq!(limit_denominator(&pi, &BigInt::from(10)), q("22/7"));
        assert_eq!(limit_denominator(&pi, &BigInt::from(1000)), q("355/113"));
        assert_eq!(limit_denominator(&q("-7/3"), &BigInt::from(2)), q("-5/2"));
        assert_eq!(limit_denominator(&q("3/4"), &BigInt::from(4)), q("3/4"));
    }

    #[test]
    fn parsing_round_trips_and_rejects() {
        assert_eq!(q("6/8"), q("3/4"));
        assert_eq!(format_rational(&q("-6/3")), "-2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_circle_point("t=1/2").unwrap(), point("3/5", "4/5"));
        assert_eq!(parse_circle_point("t=inf").unwrap(), point("-1", "0"));
        assert_eq!(parse_circle_point(" 0 , -1 ").unwrap(), point("0", "-1"));
        assert!(matches!(
            parse_circle_point("1,1"),
            Err(Error::NotOnCircle(_))
        ));
        let err = parse_circle_point("t=zz").unwrap_err();
        assert!(err.to_string().contains("zz"));
        assert_eq!(point("3/5", "-4/5").to_string(), "3/5,-4/5");
    }

    #[test]
    fn rotation_composes_angles() {
        let quarter = point("0", "1");
        assert_eq!(quarter.rotate_by(&quarter), point("-1", "0"));
        let p = point("3/5", "4/5");
        assert_eq!(p.rotate_by(&p.inverse()), CirclePoint::identity());
        assert_eq!(p.apply(&q("1"), &q("0")), (q("3/5"), q("4/5")));
    }

    #[test]
    fn small_integer_rationals_are_fields_too() {
        let t = HalfTangent::Finite(Ratio::<i64>::new(1, 2));
        let p = CirclePoint::from_half_tangent(&t);
        assert_eq!(p.cos(), &Ratio::new(3, 5));
        assert_eq!(p.sin(), &Ratio::new(4, 5));
    }
}
