use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Element `re + w·im` of Q(w), where `w² + w + 1 = 0`.
///
/// Purely rational coefficients have `im = 0`; the polynomial ring's domain
/// decides whether a nonzero `im` is allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Coeff {
    pub re: BigRational,
    pub im: BigRational,
}

impl Coeff {
    pub fn rational(q: BigRational) -> Self {
        Coeff {
            re: q,
            im: BigRational::zero(),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The cube root of unity `w`.
    pub fn w() -> Self {
        Coeff {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn zero() -> Self {
        Coeff::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.re)
    }

    /// Field norm `re² − re·im + im²`, zero only for zero.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re - &self.re * &self.im + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        // conjugate of re + im·w is (re − im) − im·w
        Some(Coeff {
            re: (&self.re - &self.im) / &n,
            im: -&self.im / &n,
        })
    }

    pub fn scale(&self, q: &BigRational) -> Coeff {
        Coeff {
            re: &self.re * q,
            im: &self.im * q,
        }
    }

    pub(crate) fn needs_parens(&self) -> bool {
        !self.is_rational() && *self != Coeff::w()
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        Coeff {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        Coeff {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        if self.is_rational() && o.is_rational() {
            return Coeff::rational(&self.re * &o.re);
        }
        // w² = −1 − w
        let bd = &self.im * &o.im;
        Coeff {
            re: &self.re * &o.re - &bd,
            im: &self.re * &o.im + &self.im * &o.re - bd,
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write_w(f, &self.im, false),
            (false, false) => {
                write!(f, "{}", self.re)?;
                write_w(f, &self.im, true)
            }
        }
    }
}

fn write_w(f: &mut fmt::Formatter<'_>, im: &BigRational, signed: bool) -> fmt::Result {
    let neg = im < &BigRational::zero();
    let mag = if neg { -im } else { im.clone() };
    if signed {
        write!(f, "{}", if neg { " - " } else { " + " })?;
    } else if neg {
        write!(f, "-")?;
    }
    if mag.is_one() {
        write!(f, "w")
    } else {
        write!(f, "{mag}*w")
    }
}
