//! Dense univariate polynomials with arbitrary-precision integer
//! coefficients, plus certified real-root isolation.

mod roots;
mod sturm;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use roots::{
    format_decimal, isolate_real_roots, multiplicities_on, refine_root, IsolatedRoot, RootSet,
};
pub use sturm::SturmChain;

/// `coeffs[i]` is the coefficient of `x^i`; no trailing zeros, so the zero
/// polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn x() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: BigInt, power: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = c;
        IntPoly::new(coeffs)
    }

    /// `x - root`.
    pub fn x_minus(root: impl Into<BigInt>) -> Self {
        IntPoly::new(vec![-root.into(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `x^k * p`.
    pub fn mul_x_pow(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// `p / x^k`, failing unless the low `k` coefficients vanish.
    pub fn div_x_pow(&self, k: usize) -> Result<IntPoly> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible(format!("{self} by x^{k}")));
        }
        Ok(IntPoly::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Sign of `p(x)` computed in integers: for `x = a/b`, `b > 0`,
    /// `b^deg * p(a/b)` has the same sign.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        // acc = sum c_i a^i b^(deg-i) up to a positive factor of b.
        acc.sign_ordering()
    }

    /// `p(x - t)`, by Horner's scheme in `x - t`.
    pub fn shift_argument(&self, t: &BigInt) -> IntPoly {
        let step = IntPoly::x_minus(t.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(IntPoly::zero(), |acc, c| &(&acc * &step) + &IntPoly::constant(c.clone()))
    }

    /// Gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `p / content(p)`, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Primitive part normalised to a positive leading coefficient.
    pub fn normalized(&self) -> IntPoly {
        let p = self.primitive_part();
        if p.leading().is_some_and(Signed::is_negative) {
            -p
        } else {
            p
        }
    }

    /// Pseudo-remainder `lc(q)^(deg p - deg q + 1) * p mod q`.
    pub fn pseudo_rem(&self, q: &IntPoly) -> IntPoly {
        let dq = q.degree().expect("pseudo-remainder by zero polynomial");
        let lc = q.leading().expect("nonzero").clone();
        let mut r = self.coeffs.clone();
        let mut steps = 0usize;
        let top = match self.degree() {
            Some(d) if d >= dq => d,
            _ => return self.clone(),
        };
        for k in (dq..=top).rev() {
            let lead = r[k].clone();
            for c in r.iter_mut().take(k + 1) {
                *c *= &lc;
            }
            if !lead.is_zero() {
                for (j, qc) in q.coeffs.iter().enumerate() {
                    r[k - dq + j] -= &lead * qc;
                }
            }
            steps += 1;
        }
        debug_assert_eq!(steps, top - dq + 1);
        IntPoly::new(r)
    }

    /// Exact quotient `p / q`; fails unless `q` divides `p` with an integral
    /// quotient.
    pub fn exact_divide(&self, q: &IntPoly) -> Result<IntPoly> {
        let dq = q.degree().ok_or_else(|| Error::NotDivisible("division by zero".into()))?;
        let lc = q.leading().expect("nonzero");
        let Some(dp) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if dp < dq {
            return Err(Error::NotDivisible(format!("{self} by {q}")));
        }
        let mut r = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dp - dq + 1];
        for k in (dq..=dp).rev() {
            if r[k].is_zero() {
                continue;
            }
            let (t, rem) = r[k].div_rem(lc);
            if !rem.is_zero() {
                return Err(Error::NotDivisible(format!("{self} by {q}: non-integral quotient")));
            }
            for (j, qc) in q.coeffs.iter().enumerate() {
                r[k - dq + j] -= &t * qc;
            }
            quot[k - dq] = t;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible(format!("{self} by {q}: nonzero remainder")));
        }
        Ok(IntPoly::new(quot))
    }

    /// Monic-up-to-content gcd (primitive, positive leading coefficient).
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.normalized(), other.normalized());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).normalized();
            a = b;
            b = r;
        }
        a.normalized()
    }

    /// Product of the distinct irreducible factors: `p / gcd(p, p')`,
    /// primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.normalized();
        }
        let g = self.gcd(&self.derivative());
        self.normalized().exact_divide(&g).expect("gcd divides").normalized()
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |acc, p| &acc * &p)
    }
}
