//! Sparse Laurent polynomials over the integers, the coefficient ring of
//! the Hecke algebra.
//!
//! The representation is canonical: no zero coefficients are stored, so
//! two polynomials are equal iff their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// An element of `Z[v, v^-1]` as a sparse exponent -> coefficient map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// The single term `coeff * v^exp` (zero coeff gives the zero polynomial).
    pub fn monomial(exp: i32, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// The quantum number `[m] = v^{-m+1} + v^{-m+3} + ... + v^{m-1}`.
    pub fn quantum(m: u32) -> Self {
        let mut p = Self::zero();
        let m = m as i32;
        let mut e = -m + 1;
        while e <= m - 1 {
            p.add_term(e, 1);
            e += 2;
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Terms in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (&e, &c) in &self.terms {
            terms.insert(-e, c);
        }
        Self { terms }
    }

    pub fn is_bar_symmetric(&self) -> bool {
        self == &self.bar()
    }

    /// True if every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// True if the polynomial lies in `v * Z[v]`, i.e. all exponents >= 1.
    pub fn in_v_times_z_v(&self) -> bool {
        self.terms.keys().all(|&e| e >= 1)
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(&e, &k)| (e, k * c)).collect();
        Self { terms }
    }

    pub fn mul_monomial(&self, exp: i32, coeff: i64) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(&e, &k)| (e + exp, k * coeff))
            .collect();
        Self { terms }
    }

    /// Evaluation at `v = 1` (specialization to the group algebra).
    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, &c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, &c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// Canonical form: terms in increasing exponent, constant terms printed
/// bare, e.g. `v^-1+2+v^3` or `v^-2-3+v^2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                1 => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "v")?;
                }
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "v^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(exp: i32) -> LaurentPoly {
        LaurentPoly::monomial(exp, 1)
    }

    #[test]
    fn quantum_numbers() {
        assert_eq!(LaurentPoly::quantum(1), LaurentPoly::one());
        assert_eq!(LaurentPoly::quantum(2), &v(1) + &v(-1));
        let three = &(&v(2) + &LaurentPoly::one()) + &v(-2);
        assert_eq!(LaurentPoly::quantum(3), three);
        // [2]^2 = [3] + [1]
        let sq = &LaurentPoly::quantum(2) * &LaurentPoly::quantum(2);
        assert_eq!(sq, &LaurentPoly::quantum(3) + &LaurentPoly::quantum(1));
    }

    #[test]
    fn display_canonical() {
        let p = &(&v(-1) + &LaurentPoly::monomial(0, 2)) + &v(3);
        assert_eq!(p.to_string(), "v^-1+2+v^3");
        let q = &(&v(-2) - &LaurentPoly::monomial(0, 3)) + &v(2);
        assert_eq!(q.to_string(), "v^-2-3+v^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::monomial(1, -2).to_string(), "-2*v");
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly(), b in poly(), c in poly()) {
            let ab_c = &(&a + &b) + &c;
            let a_bc = &a + &(&b + &c);
            prop_assert_eq!(&ab_c, &a_bc);
            let left = &a * &(&b + &c);
            let right = &(&a * &b) + &(&a * &c);
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(&(&a * &b), &(&b * &a));
        }

        #[test]
        fn bar_is_involutive_and_multiplicative(a in poly(), b in poly()) {
            prop_assert_eq!(&a.bar().bar(), &a);
            prop_assert_eq!(&(&a * &b).bar(), &(&a.bar() * &b.bar()));
        }
    }

    fn poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i32..=6, -9i64..=9), 0..6).prop_map(|ts| {
            let mut p = LaurentPoly::zero();
            for (e, c) in ts {
                p.add_term(e, c);
            }
            p
        })
    }
}
