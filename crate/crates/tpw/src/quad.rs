//! Exact arithmetic for numbers of the form `a + b*sqrt(2)` with rational
//! `a`, `b`. All width thresholds of the recursive construction live in this
//! ring, and several of them sit close to integers, so every comparison in
//! control flow is done here exactly; floats are only used to seed floor/ceil
//! candidates and for display.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

const SQRT2_F64: f64 = std::f64::consts::SQRT_2;

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Rational number backed by `i128`, always reduced, denominator positive.
///
/// The magnitudes in this crate stay small (counts up to a few thousand and
/// products of a handful of them), far below overflow range; arithmetic is
/// checked and panics if that assumption is ever broken.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i128,
    den: i128,
}

impl Rat {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        Rat {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub const ZERO: Rat = Rat { num: 0, den: 1 };
    pub const ONE: Rat = Rat { num: 1, den: 1 };

    pub fn from_int(n: i128) -> Self {
        Rat { num: n, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn signum(&self) -> i32 {
        self.num.signum() as i32
    }

    pub fn abs(&self) -> Rat {
        Rat {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(self.num != 0, "reciprocal of zero");
        Rat::new(self.den, self.num)
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> i128 {
        self.num.div_euclid(self.den)
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> i128 {
        -((-*self).floor())
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn checked_mul_i128(a: i128, b: i128) -> i128 {
        a.checked_mul(b).expect("rational overflow")
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        let num = Rat::checked_mul_i128(self.num, rhs.den)
            .checked_add(Rat::checked_mul_i128(rhs.num, self.den))
            .expect("rational overflow");
        Rat::new(num, Rat::checked_mul_i128(self.den, rhs.den))
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        self + (-rhs)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat::new(
            Rat::checked_mul_i128(self.num, rhs.num),
            Rat::checked_mul_i128(self.den, rhs.den),
        )
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        // denominators positive, so cross multiplication preserves order
        Rat::checked_mul_i128(self.num, other.den).cmp(&Rat::checked_mul_i128(other.num, self.den))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Exact element of Q(sqrt 2): the value `a + b*sqrt(2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: Rat,
    b: Rat,
}

impl QuadNum {
    pub fn new(a: Rat, b: Rat) -> Self {
        QuadNum { a, b }
    }

    pub fn from_int(n: i128) -> Self {
        QuadNum {
            a: Rat::from_int(n),
            b: Rat::ZERO,
        }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadNum { a, b: Rat::ZERO }
    }

    pub fn sqrt2() -> Self {
        QuadNum {
            a: Rat::ZERO,
            b: Rat::ONE,
        }
    }

    /// `gamma = 1 + sqrt(2)`.
    pub fn gamma() -> Self {
        QuadNum {
            a: Rat::ONE,
            b: Rat::ONE,
        }
    }

    /// `alpha = 1 + 1/sqrt(2) = 1 + sqrt(2)/2`.
    pub fn alpha() -> Self {
        QuadNum {
            a: Rat::ONE,
            b: Rat::new(1, 2),
        }
    }

    pub fn rational_part(&self) -> Rat {
        self.a
    }

    pub fn sqrt2_part(&self) -> Rat {
        self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    pub fn mul_int(&self, n: i128) -> Self {
        let r = Rat::from_int(n);
        QuadNum {
            a: self.a * r,
            b: self.b * r,
        }
    }

    /// Exact sign of `a + b*sqrt(2)`: compare `a^2` against `2 b^2` when the
    /// parts disagree in sign (sqrt(2) is irrational, so zero only at 0+0).
    pub fn signum(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        match (sa, sb) {
            (0, 0) => 0,
            (_, 0) => sa,
            (0, _) => sb,
            _ if sa == sb => sa,
            _ => {
                // a and b have opposite signs: a + b*sqrt2 > 0 iff a^2 > 2 b^2
                // when a > 0, and iff 2 b^2 > a^2 when b > 0.
                let a2 = self.a * self.a;
                let b2 = (self.b * self.b) * Rat::from_int(2);
                match a2.cmp(&b2) {
                    Ordering::Equal => unreachable!("sqrt(2) is irrational"),
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn cmp_int(&self, n: i128) -> Ordering {
        (*self - QuadNum::from_int(n)).signum().cmp(&0)
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * SQRT2_F64
    }

    /// Exact floor: a float seeds the candidate, exact comparisons settle it.
    pub fn floor_int(&self) -> i128 {
        let mut c = self.to_f64().floor() as i128;
        while self.cmp_int(c) == Ordering::Less {
            c -= 1;
        }
        while self.cmp_int(c + 1) != Ordering::Less {
            c += 1;
        }
        c
    }

    /// Exact ceiling.
    pub fn ceil_int(&self) -> i128 {
        -((-*self).floor_int())
    }
}

impl Add for QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: QuadNum) -> QuadNum {
        QuadNum {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl Sub for QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: QuadNum) -> QuadNum {
        QuadNum {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl Mul for QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: QuadNum) -> QuadNum {
        // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r with r^2 = 2
        QuadNum {
            a: self.a * rhs.a + Rat::from_int(2) * (self.b * rhs.b),
            b: self.a * rhs.b + self.b * rhs.a,
        }
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &QuadNum) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &QuadNum) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt(2)", self.b)
        } else {
            write!(f, "{}+{}*sqrt(2)", self.a, self.b)
        }
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
