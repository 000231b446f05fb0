//! Integer coefficients that stay machine-sized until they overflow.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Invariant: `Big` is used only for values outside the `i64` range.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Coeff {
    Small(i64),
    Big(BigInt),
}

impl Coeff {
    pub fn from_big(v: BigInt) -> Coeff {
        match v.to_i64() {
            Some(s) => Coeff::Small(s),
            None => Coeff::Big(v),
        }
    }

    fn from_i128(v: i128) -> Coeff {
        match i64::try_from(v) {
            Ok(s) => Coeff::Small(s),
            Err(_) => Coeff::Big(BigInt::from(v)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Coeff::Small(s) => BigInt::from(*s),
            Coeff::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coeff::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Small(s) => *s < 0,
            Coeff::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Coeff {
        match self {
            Coeff::Small(s) => Coeff::from_i128((*s as i128).abs()),
            Coeff::Big(b) => Coeff::Big(b.abs()),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Small(s) => Coeff::from_i128(-(*s as i128)),
            Coeff::Big(b) => Coeff::from_big(-b),
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Small(a), Coeff::Small(b)) => Coeff::from_i128(*a as i128 + *b as i128),
            _ => Coeff::from_big(self.to_big() + other.to_big()),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Small(a), Coeff::Small(b)) => Coeff::from_i128(*a as i128 - *b as i128),
            _ => Coeff::from_big(self.to_big() - other.to_big()),
        }
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Small(a), Coeff::Small(b)) => Coeff::from_i128(*a as i128 * *b as i128),
            (Coeff::Small(a), Coeff::Big(b)) | (Coeff::Big(b), Coeff::Small(a)) => {
                Coeff::from_big(b * *a)
            }
            (Coeff::Big(a), Coeff::Big(b)) => Coeff::from_big(a * b),
        }
    }

    pub fn add_assign(&mut self, other: &Coeff) {
        if let (Coeff::Small(a), Coeff::Small(b)) = (&*self, other) {
            if let Some(s) = a.checked_add(*b) {
                *self = Coeff::Small(s);
                return;
            }
        }
        *self = self.add(other);
    }

    pub fn sub_assign(&mut self, other: &Coeff) {
        if let (Coeff::Small(a), Coeff::Small(b)) = (&*self, other) {
            if let Some(s) = a.checked_sub(*b) {
                *self = Coeff::Small(s);
                return;
            }
        }
        *self = self.sub(other);
    }

    /// `self / other` when the division is exact.
    pub fn div_exact(&self, other: &Coeff) -> Option<Coeff> {
        match (self, other) {
            (Coeff::Small(a), Coeff::Small(b)) => {
                let (a, b) = (*a as i128, *b as i128);
                (a % b == 0).then(|| Coeff::from_i128(a / b))
            }
            _ => {
                let (q, r) = self.to_big().div_rem(&other.to_big());
                r.is_zero().then(|| Coeff::from_big(q))
            }
        }
    }

    pub fn gcd_big(&self, acc: &BigInt) -> BigInt {
        acc.gcd(&self.to_big())
    }
}

impl PartialOrd for Coeff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.to_big().cmp(&other.to_big()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_on_overflow_and_demotes_back() {
        let big = Coeff::Small(i64::MAX).add(&Coeff::Small(1));
        assert!(matches!(big, Coeff::Big(_)));
        assert_eq!(big.sub(&Coeff::Small(1)), Coeff::Small(i64::MAX));
        let sq = Coeff::Small(i64::MIN).mul(&Coeff::Small(i64::MIN));
        assert_eq!(sq.to_big(), BigInt::from(i64::MIN) * BigInt::from(i64::MIN));
        assert_eq!(sq.div_exact(&Coeff::Small(i64::MIN)), Some(Coeff::Small(i64::MIN)));
        assert!(matches!(Coeff::Small(i64::MIN).neg(), Coeff::Big(_)));
    }

    #[test]
    fn in_place_ops() {
        let mut c = Coeff::Small(i64::MAX);
        c.add_assign(&Coeff::Small(2));
        c.sub_assign(&Coeff::Small(3));
        assert_eq!(c, Coeff::Small(i64::MAX - 1));
        assert_eq!(Coeff::Small(7).div_exact(&Coeff::Small(2)), None);
    }
}
