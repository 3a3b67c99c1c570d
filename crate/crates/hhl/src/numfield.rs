//! Exact arithmetic in the real cyclotomic field `Q(2cos(pi/N))`.
//!
//! Every bond label `m` of a Coxeter matrix contributes the algebraic
//! integer `2cos(pi/m)`; all of them live in the maximal real subfield of
//! the `2N`-th cyclotomic field once `m` divides `N`. Elements are reduced
//! residues modulo the minimal polynomial of the generator `c = 2cos(pi/N)`,
//! so equality is coefficient equality and `sign` is decidable by interval
//! refinement against the isolated real root.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Dense rational polynomials (coefficients low -> high).
// ---------------------------------------------------------------------------

pub(crate) mod ratpoly {
    use super::Rat;
    use num_traits::Zero;

    pub fn trim(p: &mut Vec<Rat>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn deg(p: &[Rat]) -> Option<usize> {
        if p.is_empty() {
            None
        } else {
            Some(p.len() - 1)
        }
    }

    pub fn eval(p: &[Rat], x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in p.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(p: &[Rat]) -> Vec<Rat> {
        if p.len() <= 1 {
            return vec![];
        }
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from(num_bigint::BigInt::from(i as i64)))
            .collect()
    }

    pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                out[i + j] += ca * cb;
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut out = a.to_vec();
        if out.len() < b.len() {
            out.resize(b.len(), Rat::zero());
        }
        for (i, cb) in b.iter().enumerate() {
            out[i] -= cb;
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo `b` (`b` nonzero).
    pub fn rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = deg(b).expect("division by zero polynomial");
        let lead = b[db].clone();
        while deg(&r).is_some_and(|dr| dr >= db) {
            let dr = deg(&r).unwrap();
            let q = &r[dr] / &lead;
            let shift = dr - db;
            for (i, cb) in b.iter().enumerate() {
                let t = &q * cb;
                r[i + shift] -= t;
            }
            trim(&mut r);
        }
        r
    }

    /// Monic gcd.
    pub fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        if let Some(d) = deg(&x) {
            let lead = x[d].clone();
            for c in &mut x {
                *c /= lead.clone();
            }
        }
        x
    }

    /// Extended gcd: returns (g, u) with `u*a = g  (mod m)`, `g` monic.
    pub fn ext_gcd_mod(a: &[Rat], m: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        // Standard iterative extended Euclid tracking only the `a` cofactor.
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r0);
        trim(&mut r1);
        let mut u0: Vec<Rat> = vec![];
        let mut u1: Vec<Rat> = vec![Rat::one()];
        while !r1.is_empty() {
            // quotient of r0 by r1
            let mut q = vec![Rat::zero(); r0.len().saturating_sub(r1.len()) + 1];
            let mut r = r0.clone();
            let db = deg(&r1).unwrap();
            let lead = r1[db].clone();
            while deg(&r).is_some_and(|dr| dr >= db) {
                let dr = deg(&r).unwrap();
                let c = &r[dr] / &lead;
                let shift = dr - db;
                q[shift] = c.clone();
                for (i, cb) in r1.iter().enumerate() {
                    let t = &c * cb;
                    r[i + shift] -= t;
                }
                trim(&mut r);
            }
            trim(&mut q);
            let new_u = sub(&u0, &mul(&q, &u1));
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, new_u);
        }
        if let Some(d) = deg(&r0) {
            let lead = r0[d].clone();
            for c in &mut r0 {
                *c /= lead.clone();
            }
            for c in &mut u0 {
                *c /= lead.clone();
            }
        }
        (r0, u0)
    }

    use num_traits::One;
}

// ---------------------------------------------------------------------------
// Integer polynomials, cyclotomic polynomials and the real-subfield fold.
// ---------------------------------------------------------------------------

fn int_trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    int_trim(&mut out);
    out
}

/// Exact division of integer polynomials; panics if not divisible.
fn int_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut r = num.to_vec();
    int_trim(&mut r);
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); r.len().saturating_sub(dd)];
    while r.len() > dd {
        let dr = r.len() - 1;
        let c = &r[dr] / &den[dd];
        assert_eq!(&c * &den[dd], r[dr], "non-exact polynomial division");
        let shift = dr - dd;
        q[shift] = c.clone();
        for (i, cb) in den.iter().enumerate() {
            let t = &c * cb;
            r[i + shift] -= t;
        }
        int_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    assert!(r.is_empty(), "non-exact polynomial division");
    q
}

/// The `n`-th cyclotomic polynomial, by dividing `x^n - 1` by all lower ones.
pub fn cyclotomic(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut table: Vec<(u32, Vec<BigInt>)> = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        // x^d - 1
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = BigInt::from(-1);
        num[d as usize] = BigInt::one();
        let mut phi = num;
        for (e, p) in &table {
            if d % e == 0 {
                phi = int_div_exact(&phi, p);
            }
        }
        table.push((d, phi));
    }
    table.pop().unwrap().1
}

/// Given a palindromic polynomial `P` of even degree `2d`, find `Q` with
/// `P(x) = x^d * Q(x + 1/x)`.
fn fold_palindromic(p: &[BigInt]) -> Vec<BigInt> {
    let deg = p.len() - 1;
    assert!(deg % 2 == 0, "can only fold even-degree polynomials");
    let d = deg / 2;
    let mut remaining = p.to_vec();
    let mut q = vec![BigInt::zero(); d + 1];
    for k in (0..=d).rev() {
        let coeff = remaining
            .get(d + k)
            .cloned()
            .unwrap_or_else(BigInt::zero);
        q[k] = coeff.clone();
        if coeff.is_zero() {
            continue;
        }
        // subtract coeff * x^{d-k} * (x^2+1)^k
        let mut term = vec![BigInt::zero(); d - k];
        term.push(coeff);
        let x2p1 = vec![BigInt::one(), BigInt::zero(), BigInt::one()];
        for _ in 0..k {
            term = int_mul(&term, &x2p1);
        }
        let mut r = remaining.clone();
        if r.len() < term.len() {
            r.resize(term.len(), BigInt::zero());
        }
        for (i, t) in term.iter().enumerate() {
            r[i] -= t;
        }
        int_trim(&mut r);
        remaining = r;
    }
    assert!(remaining.is_empty(), "input was not palindromic");
    q
}

/// Minimal polynomial of `2cos(pi/n)` over `Q`, monic with integer
/// coefficients, returned as rationals (low -> high).
pub fn min_poly_two_cos(n: u32) -> Vec<Rat> {
    assert!(n >= 1);
    let ints = if n == 1 {
        // 2cos(pi) = -2
        vec![BigInt::from(2), BigInt::one()]
    } else {
        fold_palindromic(&cyclotomic(2 * n))
    };
    ints.into_iter().map(Rat::from).collect()
}

// ---------------------------------------------------------------------------
// Interval arithmetic with rational endpoints.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn point(x: Rat) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Self { lo, hi }
    }

    /// Sign if the interval excludes zero.
    pub fn definite_sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }
}

/// Horner evaluation of a polynomial on an interval.
pub fn eval_interval(p: &[Rat], x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(Rat::zero());
    for c in p.iter().rev() {
        acc = acc.mul(x).add(&RatInterval::point(c.clone()));
    }
    acc
}

// ---------------------------------------------------------------------------
// Sturm chains (used to certify root isolation).
// ---------------------------------------------------------------------------

fn sturm_chain(p: &[Rat]) -> Vec<Vec<Rat>> {
    let mut chain = vec![p.to_vec(), ratpoly::derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let mut r = ratpoly::rem(&chain[n - 2], &chain[n - 1]);
        for c in &mut r {
            *c = -c.clone();
        }
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn sign_variations(chain: &[Vec<Rat>], x: &Rat) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = ratpoly::eval(p, x);
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn sturm_count(p: &[Rat], a: &Rat, b: &Rat) -> usize {
    let chain = sturm_chain(p);
    sign_variations(&chain, a) - sign_variations(&chain, b)
}

// ---------------------------------------------------------------------------
// FieldSpec and AlgebraicReal.
// ---------------------------------------------------------------------------

/// The designated real cyclotomic field `Q(2cos(pi/N))`.
///
/// `min_poly` is the monic minimal polynomial of the generator and
/// `root_interval` isolates the generator among its conjugates (the
/// generator is the largest real root).
#[derive(Debug)]
pub struct FieldSpec {
    pub conductor: u32,
    pub min_poly: Vec<Rat>,
    pub degree: usize,
    pub root_interval: (Rat, Rat),
    /// c^d, ..., c^{2d-2} reduced modulo `min_poly`.
    power_table: Vec<Vec<Rat>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}
impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds the field for a given conductor, isolating the generator root.
    pub fn for_conductor(n: u32) -> Arc<Self> {
        assert!(n >= 1, "conductor must be positive");
        let min_poly = min_poly_two_cos(n);
        let degree = min_poly.len() - 1;

        let root_interval = if degree == 1 {
            // rational generator: -min_poly[0]
            let r = -min_poly[0].clone();
            (&r - rat(1, 2), &r + rat(1, 2))
        } else {
            // The generator 2cos(pi/N) is the largest root of its minimal
            // polynomial; isolate it by Sturm bisection from (-2, 2).
            let mut lo = rat_int(-2);
            let mut hi = rat_int(2);
            while sturm_count(&min_poly, &lo, &hi) > 1 {
                let mid = (&lo + &hi) / rat_int(2);
                if sturm_count(&min_poly, &mid, &hi) >= 1 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            // Tighten a little so downstream sign refinements start small.
            let (mut lo, mut hi) = (lo, hi);
            for _ in 0..20 {
                let mid = (&lo + &hi) / rat_int(2);
                let s_lo = ratpoly::eval(&min_poly, &lo);
                let s_mid = ratpoly::eval(&min_poly, &mid);
                debug_assert!(!s_mid.is_zero());
                if s_lo.is_positive() == s_mid.is_positive() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            (lo, hi)
        };

        let mut power_table = Vec::new();
        if degree >= 1 {
            // c^degree = -(a_0 + ... + a_{d-1} c^{d-1})
            let mut cur: Vec<Rat> = min_poly[..degree].iter().map(|c| -c.clone()).collect();
            power_table.push(cur.clone());
            for _ in degree + 1..=(2 * degree).saturating_sub(2) {
                // multiply by c
                let mut next = vec![Rat::zero(); degree];
                let top = cur[degree - 1].clone();
                for i in (1..degree).rev() {
                    next[i] = cur[i - 1].clone();
                }
                for (i, m) in power_table[0].iter().enumerate() {
                    next[i] += &top * m;
                }
                power_table.push(next.clone());
                cur = next;
            }
        }

        Arc::new(Self { conductor: n, min_poly, degree, root_interval, power_table })
    }

    /// Refines the generator's isolating interval to width below `2^-bits`.
    pub fn refined_interval(&self, bits: u32) -> RatInterval {
        let (mut lo, mut hi) = self.root_interval.clone();
        if self.degree == 1 {
            let r = -self.min_poly[0].clone();
            return RatInterval::point(r);
        }
        let target = Rat::new(BigInt::one(), BigInt::from(2).pow(bits));
        let s_lo_pos = ratpoly::eval(&self.min_poly, &lo).is_positive();
        let mut s_lo_pos = s_lo_pos;
        while &hi - &lo > target {
            let mid = (&lo + &hi) / rat_int(2);
            let s_mid = ratpoly::eval(&self.min_poly, &mid);
            debug_assert!(!s_mid.is_zero(), "irreducible min poly has no rational root");
            if s_mid.is_positive() == s_lo_pos {
                lo = mid;
            } else {
                hi = mid;
            }
            s_lo_pos = ratpoly::eval(&self.min_poly, &lo).is_positive();
        }
        RatInterval { lo, hi }
    }

    pub fn zero(self: &Arc<Self>) -> AlgebraicReal {
        AlgebraicReal { spec: Arc::clone(self), coeffs: vec![Rat::zero(); self.degree] }
    }

    pub fn one(self: &Arc<Self>) -> AlgebraicReal {
        self.from_rat(Rat::one())
    }

    pub fn from_rat(self: &Arc<Self>, r: Rat) -> AlgebraicReal {
        let mut coeffs = vec![Rat::zero(); self.degree];
        coeffs[0] = r;
        AlgebraicReal { spec: Arc::clone(self), coeffs }
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> AlgebraicReal {
        self.from_rat(rat_int(n))
    }

    /// The generator `c = 2cos(pi/N)`.
    pub fn generator(self: &Arc<Self>) -> AlgebraicReal {
        if self.degree == 1 {
            return self.from_rat(-self.min_poly[0].clone());
        }
        let mut coeffs = vec![Rat::zero(); self.degree];
        coeffs[1] = Rat::one();
        AlgebraicReal { spec: Arc::clone(self), coeffs }
    }

    /// The exact value `2cos(pi/m)`.
    ///
    /// Requires `m` to divide the conductor unless `2cos(pi/m)` is rational
    /// (`m <= 3`).
    pub fn two_cos_pi_over(self: &Arc<Self>, m: u32) -> Result<AlgebraicReal> {
        match m {
            0 => Err(Error::InvalidMatrix("bond label 0".into())),
            1 => Ok(self.from_int(-2)),
            2 => Ok(self.from_int(0)),
            3 => Ok(self.from_int(1)),
            _ => {
                if self.conductor % m != 0 {
                    return Err(Error::InvalidMatrix(format!(
                        "2cos(pi/{m}) does not lie in the field of conductor {}",
                        self.conductor
                    )));
                }
                // 2cos(k*pi/N) = D_k(c) with the Dickson recurrence
                // D_0 = 2, D_1 = c, D_{j+1} = c*D_j - D_{j-1}.
                let k = self.conductor / m;
                let c = self.generator();
                let mut d_prev = self.from_int(2);
                let mut d_cur = c.clone();
                if k == 0 {
                    unreachable!()
                }
                for _ in 1..k {
                    let next = &(&c * &d_cur) - &d_prev;
                    d_prev = d_cur;
                    d_cur = next;
                }
                Ok(d_cur)
            }
        }
    }
}

/// Returns the smallest designated field containing `2cos(pi/m)` for every
/// finite entry `m` of the Coxeter matrix.
///
/// Labels with rational cosine (`m <= 3`) impose no field constraint; the
/// conductor is the lcm of the remaining finite labels (1 if there are none).
/// `None` entries mean an infinite bond and are skipped.
pub fn field_for(matrix: &[Vec<Option<u32>>]) -> Result<Arc<FieldSpec>> {
    let mut n: u32 = 1;
    for row in matrix {
        for &entry in row {
            match entry {
                None => continue,
                Some(0) => return Err(Error::InvalidMatrix("entry m <= 0".into())),
                Some(m) if m >= 4 => {
                    n = num_integer::lcm(n, m);
                }
                Some(_) => {}
            }
        }
    }
    Ok(FieldSpec::for_conductor(n))
}

/// An element of the designated field, as the reduced residue of a
/// polynomial in the generator.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    pub spec: Arc<FieldSpec>,
    /// Length = field degree; entry i is the coefficient of c^i.
    pub coeffs: Vec<Rat>,
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.spec.conductor == other.spec.conductor && self.coeffs == other.coeffs
    }
}
impl Eq for AlgebraicReal {}

impl std::hash::Hash for AlgebraicReal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl AlgebraicReal {
    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.spec.conductor, other.spec.conductor,
            "mixed field arithmetic"
        );
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Self {
            spec: Arc::clone(&self.spec),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero field element");
        if let Some(r) = self.as_rational() {
            return self.spec.from_rat(r.recip());
        }
        let mut a = self.coeffs.clone();
        ratpoly::trim(&mut a);
        let (g, u) = ratpoly::ext_gcd_mod(&a, &self.spec.min_poly);
        assert_eq!(g.len(), 1, "min poly not coprime to nonzero element");
        let scale = g[0].recip();
        let mut coeffs = vec![Rat::zero(); self.spec.degree];
        for (i, c) in u.iter().enumerate() {
            coeffs[i] = c * &scale;
        }
        Self { spec: Arc::clone(&self.spec), coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The exact sign under the designated real embedding.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return if r.is_positive() { 1 } else { -1 };
        }
        // Interval refinement with doubling precision. Terminates because
        // the element is nonzero, so its value at the root is nonzero.
        let mut bits = 16u32;
        loop {
            let iv = self.spec.refined_interval(bits);
            if let Some(s) = eval_interval(&self.coeffs, &iv).definite_sign() {
                return s;
            }
            bits *= 2;
            assert!(bits < 1 << 20, "sign refinement failed to terminate");
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    /// Total order via exact sign of the difference.
    pub fn cmp_exact(&self, other: &Self) -> std::cmp::Ordering {
        match (self - other).sign() {
            1 => std::cmp::Ordering::Greater,
            -1 => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Equal,
        }
    }
}

impl Add for &AlgebraicReal {
    type Output = AlgebraicReal;
    fn add(self, rhs: &AlgebraicReal) -> AlgebraicReal {
        self.check_same(rhs);
        AlgebraicReal {
            spec: Arc::clone(&self.spec),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &AlgebraicReal {
    type Output = AlgebraicReal;
    fn sub(self, rhs: &AlgebraicReal) -> AlgebraicReal {
        self.check_same(rhs);
        AlgebraicReal {
            spec: Arc::clone(&self.spec),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &AlgebraicReal {
    type Output = AlgebraicReal;
    fn neg(self) -> AlgebraicReal {
        AlgebraicReal {
            spec: Arc::clone(&self.spec),
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl Mul for &AlgebraicReal {
    type Output = AlgebraicReal;
    fn mul(self, rhs: &AlgebraicReal) -> AlgebraicReal {
        self.check_same(rhs);
        let d = self.spec.degree;
        let mut conv = vec![Rat::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        let mut coeffs: Vec<Rat> = conv[..d].to_vec();
        for k in d..2 * d - 1 {
            if conv[k].is_zero() {
                continue;
            }
            let reduced = &self.spec.power_table[k - d];
            for (i, m) in reduced.iter().enumerate() {
                coeffs[i] += &conv[k] * m;
            }
        }
        AlgebraicReal { spec: Arc::clone(&self.spec), coeffs }
    }
}

impl Div for &AlgebraicReal {
    type Output = AlgebraicReal;
    fn div(self, rhs: &AlgebraicReal) -> AlgebraicReal {
        self * &rhs.inv()
    }
}

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Field elements print as polynomials in the generator `c` with rational
/// coefficients, terms in increasing exponent, e.g. `-1/2+3/2*c`.
impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if wrote {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let is_unit_mag = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 => {
                    if !is_unit_mag {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "c")?;
                }
                _ => {
                    if !is_unit_mag {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "c^{i}")?;
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: minimal polynomial of `2cos(pi/n)` by Chebyshev
    /// factorization. `D_n(x) + 2` has roots `2cos(k*pi/n)` for odd `k`;
    /// peeling the contributions of proper divisors and taking an exact
    /// square root leaves the minimal polynomial.
    fn min_poly_chebyshev(n: u32) -> Vec<Rat> {
        fn dickson(n: u32) -> Vec<Rat> {
            let mut prev = vec![rat_int(2)]; // D_0 = 2
            let mut cur = vec![rat_int(0), rat_int(1)]; // D_1 = x
            if n == 0 {
                return prev;
            }
            for _ in 1..n {
                // D_{k+1} = x*D_k - D_{k-1}
                let mut next = vec![Rat::zero()];
                next.extend_from_slice(&cur);
                let next = ratpoly::sub(&next, &prev);
                prev = cur;
                cur = next;
            }
            cur
        }
        if n == 1 {
            return vec![rat_int(2), rat_int(1)];
        }
        // D_n + 2
        let mut p = dickson(n);
        p[0] += rat_int(2);
        if n % 2 == 1 {
            // divide out the simple root at -2
            p = exact_div(&p, &[rat_int(2), rat_int(1)]);
        }
        // divide out squared minimal polynomials of proper "denominators"
        for g in 1..=n {
            if g == 1 || n % g != 0 || g % 2 == 0 {
                continue;
            }
            let np = n / g;
            if np <= 1 || np == n {
                continue;
            }
            let m = min_poly_chebyshev(np);
            p = exact_div(&p, &ratpoly::mul(&m, &m));
        }
        // p is now psi^2; recover psi as gcd(p, p').
        let g = ratpoly::gcd(&p, &ratpoly::derivative(&p));
        g
    }

    fn exact_div(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
        let r = ratpoly::rem(num, den);
        assert!(r.is_empty(), "not divisible");
        // quotient by long division
        let mut rem = num.to_vec();
        ratpoly::trim(&mut rem);
        let dd = ratpoly::deg(den).unwrap();
        let mut q = vec![Rat::zero(); rem.len() - dd];
        while ratpoly::deg(&rem).is_some_and(|d| d >= dd) {
            let dr = ratpoly::deg(&rem).unwrap();
            let c = &rem[dr] / &den[dd];
            q[dr - dd] = c.clone();
            for (i, cb) in den.iter().enumerate() {
                let t = &c * cb;
                rem[i + dr - dd] -= t;
            }
            ratpoly::trim(&mut rem);
        }
        q
    }

    #[test]
    fn min_polys_match_chebyshev_oracle() {
        for n in 2..=12u32 {
            let fold = min_poly_two_cos(n);
            let cheb = min_poly_chebyshev(n);
            assert_eq!(fold, cheb, "minimal polynomial mismatch at n = {n}");
        }
    }

    #[test]
    fn known_minimal_polynomials() {
        // 2cos(pi/5) = golden ratio: g^2 - g - 1 = 0
        assert_eq!(min_poly_two_cos(5), vec![rat_int(-1), rat_int(-1), rat_int(1)]);
        // (2cos(pi/4))^2 = 2
        assert_eq!(min_poly_two_cos(4), vec![rat_int(-2), rat_int(0), rat_int(1)]);
        assert_eq!(min_poly_two_cos(6), vec![rat_int(-3), rat_int(0), rat_int(1)]);
        assert_eq!(min_poly_two_cos(2), vec![rat_int(0), rat_int(1)]);
        assert_eq!(min_poly_two_cos(3), vec![rat_int(-1), rat_int(1)]);
        // 2cos(pi/7): x^3 - x^2 - 2x + 1
        assert_eq!(
            min_poly_two_cos(7),
            vec![rat_int(1), rat_int(-2), rat_int(-1), rat_int(1)]
        );
        // 2cos(pi/8): x^4 - 4x^2 + 2
        assert_eq!(
            min_poly_two_cos(8),
            vec![rat_int(2), rat_int(0), rat_int(-4), rat_int(0), rat_int(1)]
        );
    }

    #[test]
    fn field_for_examples() {
        // all m in {2,3}: field is Q
        let m = vec![
            vec![Some(1), Some(3), Some(2)],
            vec![Some(3), Some(1), Some(3)],
            vec![Some(2), Some(3), Some(1)],
        ];
        let spec = field_for(&m).unwrap();
        assert_eq!(spec.degree, 1);

        // m = 4 present: field contains sqrt(2): generator^2 = 2
        let m = vec![vec![Some(1), Some(4)], vec![Some(4), Some(1)]];
        let spec = field_for(&m).unwrap();
        let c = spec.generator();
        assert_eq!(&c * &c, spec.from_int(2));

        // m = 5: golden ratio satisfies g^2 - g - 1 = 0
        let m = vec![vec![Some(1), Some(5)], vec![Some(5), Some(1)]];
        let spec = field_for(&m).unwrap();
        let g = spec.generator();
        let expr = &(&(&g * &g) - &g) - &spec.one();
        assert!(expr.is_zero());

        // invalid entry
        let m = vec![vec![Some(1), Some(0)], vec![Some(0), Some(1)]];
        assert!(field_for(&m).is_err());

        // infinite bonds contribute nothing
        let m = vec![vec![Some(1), None], vec![None, Some(1)]];
        assert_eq!(field_for(&m).unwrap().degree, 1);
    }

    #[test]
    fn isolating_interval_contains_exactly_one_root() {
        for n in [4u32, 5, 6, 7, 8, 12, 15] {
            let spec = FieldSpec::for_conductor(n);
            let (lo, hi) = spec.root_interval.clone();
            assert_eq!(sturm_count(&spec.min_poly, &lo, &hi), 1, "n = {n}");
            // numeric sanity: the interval contains 2cos(pi/n)
            let target = 2.0 * (std::f64::consts::PI / n as f64).cos();
            let lo_f = lo.numer().to_string().parse::<f64>().unwrap()
                / lo.denom().to_string().parse::<f64>().unwrap();
            let hi_f = hi.numer().to_string().parse::<f64>().unwrap()
                / hi.denom().to_string().parse::<f64>().unwrap();
            assert!(lo_f <= target && target <= hi_f, "n = {n}");
        }
    }

    #[test]
    fn sign_examples() {
        let spec = FieldSpec::for_conductor(5);
        assert_eq!(spec.zero().sign(), 0);
        // 2cos(pi/5) - 1 = golden ratio - 1 > 0; interval oracle agrees.
        let x = &spec.generator() - &spec.one();
        assert_eq!(x.sign(), 1);
        let numeric = 2.0 * (std::f64::consts::PI / 5.0).cos() - 1.0;
        assert!(numeric > 0.0);

        // 2cos(pi/3) - 1 = 0
        let spec3 = FieldSpec::for_conductor(3);
        let y = &spec3.two_cos_pi_over(3).unwrap() - &spec3.one();
        assert_eq!(y.sign(), 0);

        // rational comparisons agree with rational arithmetic
        let a = spec.from_rat(rat(3, 7));
        let b = spec.from_rat(rat(2, 5));
        assert_eq!(a.cmp_exact(&b), std::cmp::Ordering::Greater);
    }

    #[test]
    fn two_cos_tower() {
        // In the conductor-12 field we see the values for m = 2,3,4,6,12.
        let spec = FieldSpec::for_conductor(12);
        assert!(spec.two_cos_pi_over(2).unwrap().is_zero());
        assert_eq!(spec.two_cos_pi_over(3).unwrap(), spec.one());
        let c4 = spec.two_cos_pi_over(4).unwrap();
        assert_eq!(&c4 * &c4, spec.from_int(2));
        let c6 = spec.two_cos_pi_over(6).unwrap();
        assert_eq!(&c6 * &c6, spec.from_int(3));
        assert!(spec.two_cos_pi_over(5).is_err());
    }

    #[test]
    fn inverse_and_division() {
        let spec = FieldSpec::for_conductor(7);
        let c = spec.generator();
        let x = &(&c * &c) - &spec.from_rat(rat(1, 3));
        let inv = x.inv();
        assert!((&x * &inv).is_one());
    }

    #[test]
    fn display_field_elements() {
        let spec = FieldSpec::for_conductor(5);
        let x = &spec.generator().scale(&rat(3, 2)) - &spec.from_rat(rat(1, 2));
        assert_eq!(x.to_string(), "-1/2+3/2*c");
        assert_eq!(spec.zero().to_string(), "0");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn ring_axioms_and_sign_multiplicativity(
            a in elem(), b in elem(), c in elem()
        ) {
            let spec = FieldSpec::for_conductor(5);
            let to = |v: &[i64; 2]| {
                let mut x = spec.zero();
                x.coeffs[0] = rat_int(v[0]);
                x.coeffs[1] = rat_int(v[1]);
                x
            };
            let (a, b, c) = (to(&a), to(&b), to(&c));
            prop_assert_eq!(&(&(&a + &b) + &c), &(&a + &(&b + &c)));
            prop_assert_eq!(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
            prop_assert_eq!((&a * &b).sign(), a.sign() * b.sign());
            prop_assert!((&a * &a).sign() >= 0);
        }
    }

    fn elem() -> impl Strategy<Value = [i64; 2]> {
        ((-9i64..=9), (-9i64..=9)).prop_map(|(x, y)| [x, y])
    }
}
