use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::IntPoly;

/// Sturm sequence of a square-free polynomial, kept in primitive integer
/// form. Each member is a positive multiple of the classical rational
/// Sturm polynomial, so sign variations are unchanged.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl SturmChain {
    /// Builds the chain for the square-free part of `p`.
    pub fn new(p: &IntPoly) -> Self {
        let first = p.squarefree_part();
        let mut chain = vec![first.clone()];
        if first.degree().unwrap_or(0) == 0 {
            return SturmChain { chain };
        }
        chain.push(first.derivative().primitive_part());
        loop {
            let k = chain.len();
            let (a, b) = (&chain[k - 2], &chain[k - 1]);
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            // prem = lc(b)^e * rem, so -rem has the sign of -prem * sign(lc)^e.
            let e = a.degree().unwrap() - b.degree().unwrap() + 1;
            let mut next = -a.pseudo_rem(b);
            if b.leading().unwrap().is_negative() && e % 2 == 1 {
                next = -next;
            }
            if next.is_zero() {
                break;
            }
            chain.push(next.primitive_part());
        }
        SturmChain { chain }
    }

    /// The square-free polynomial the chain was built from.
    pub fn base(&self) -> &IntPoly {
        &self.chain[0]
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        variations(self.chain.iter().map(|p| p.leading().map_or(Ordering::Equal, |c| c.cmp(&BigInt::zero()))))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        variations(self.chain.iter().map(|p| {
            let s = p.leading().map_or(Ordering::Equal, |c| c.cmp(&BigInt::zero()));
            if p.degree().unwrap_or(0) % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations_at(a) - self.variations_at(b)
    }

    /// Distinct real roots strictly above `x`.
    pub fn count_above(&self, x: &BigRational) -> usize {
        self.variations_at(x) - self.variations_at_pos_inf()
    }

    /// Distinct real roots `>= x`.
    pub fn count_at_or_above(&self, x: &BigRational) -> usize {
        self.count_above(x) + self.base().sign_at(x).is_eq() as usize
    }

    /// Distinct real roots `<= x`.
    pub fn count_at_or_below(&self, x: &BigRational) -> usize {
        self.variations_at_neg_inf() - self.variations_at(x)
    }

    /// Distinct real roots overall.
    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}
