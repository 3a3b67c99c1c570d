//! Multivariate polynomials over the working field, with the group action
//! through the reflection representation and Demazure operators.
//!
//! Variables are coordinates on `h`, i.e. a basis of `h*`; the grading
//! used downstream doubles polynomial degree (`deg h* = 2`).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::linalg::Mat;
use crate::numfield::{AlgebraicReal, FieldSpec};
use crate::realization::Realization;

pub type Mono = Vec<u16>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub spec: Arc<FieldSpec>,
    terms: BTreeMap<Mono, AlgebraicReal>,
}

impl Poly {
    pub fn zero(spec: &Arc<FieldSpec>, nvars: usize) -> Self {
        Self { nvars, spec: Arc::clone(spec), terms: BTreeMap::new() }
    }

    pub fn constant(spec: &Arc<FieldSpec>, nvars: usize, c: AlgebraicReal) -> Self {
        let mut p = Self::zero(spec, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(spec: &Arc<FieldSpec>, nvars: usize) -> Self {
        Self::constant(spec, nvars, spec.one())
    }

    pub fn var(spec: &Arc<FieldSpec>, nvars: usize, i: usize) -> Self {
        let mut m = vec![0u16; nvars];
        m[i] = 1;
        let mut p = Self::zero(spec, nvars);
        p.add_term(m, spec.one());
        p
    }

    /// The linear polynomial with the given covector coordinates.
    pub fn linear(spec: &Arc<FieldSpec>, coords: &[AlgebraicReal]) -> Self {
        let nvars = coords.len();
        let mut p = Self::zero(spec, nvars);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                let mut m = vec![0u16; nvars];
                m[i] = 1;
                p.add_term(m, c.clone());
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: Mono, c: AlgebraicReal) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(mono.len(), self.nvars);
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = &*e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &AlgebraicReal)> + '_ {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in o.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in o.iter() {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &AlgebraicReal) -> Self {
        if c.is_zero() {
            return Self::zero(&self.spec, self.nvars);
        }
        let mut out = Self::zero(&self.spec, self.nvars);
        for (m, k) in self.iter() {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.spec, self.nvars);
        for (m1, c1) in self.iter() {
            for (m2, c2) in o.iter() {
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u16) -> Self {
        let mut acc = Self::one(&self.spec, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total polynomial degree (None for the zero polynomial).
    pub fn degree(&self) -> Option<u16> {
        self.terms
            .keys()
            .map(|m| m.iter().sum::<u16>())
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u16>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Homogeneous component of polynomial degree `d`.
    pub fn component(&self, d: u16) -> Self {
        let mut out = Self::zero(&self.spec, self.nvars);
        for (m, c) in self.iter() {
            if m.iter().sum::<u16>() == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// The augmentation: the constant coefficient.
    pub fn augmentation(&self) -> AlgebraicReal {
        self.terms
            .get(&vec![0u16; self.nvars])
            .cloned()
            .unwrap_or_else(|| self.spec.zero())
    }

    /// Substitute `x_i -> sum_j M[j][i] x_j` (the action of a matrix on
    /// covector coordinates, extended to a ring map).
    pub fn substitute_linear(&self, m: &Mat) -> Self {
        assert_eq!(m.rows, self.nvars);
        let images: Vec<Poly> = (0..self.nvars)
            .map(|i| Poly::linear(&self.spec, &m.col(i)))
            .collect();
        // cache powers of each image
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(&self.spec, self.nvars), p.clone()])
            .collect();
        let mut out = Self::zero(&self.spec, self.nvars);
        for (mono, c) in self.iter() {
            let mut term = Poly::constant(&self.spec, self.nvars, c.clone());
            for (i, &e) in mono.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Exact division by a linear polynomial; panics if not divisible.
    pub fn div_linear_exact(&self, linear: &Poly) -> Self {
        let pivot = linear
            .iter()
            .find(|(m, _)| m.iter().sum::<u16>() == 1)
            .map(|(m, c)| (m.iter().position(|&e| e == 1).unwrap(), c.clone()))
            .expect("divisor must have a linear term");
        let (j, lead) = pivot;
        let lead_inv = lead.inv();
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.spec, self.nvars);
        while !rem.is_zero() {
            // leading term by (exponent of x_j, monomial order)
            let (mono, coeff) = rem
                .terms
                .iter()
                .max_by(|(m1, _), (m2, _)| (m1[j], *m1).cmp(&(m2[j], *m2)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .unwrap();
            assert!(mono[j] > 0, "polynomial is not divisible by the linear form");
            let mut qm = mono.clone();
            qm[j] -= 1;
            let qc = &coeff * &lead_inv;
            let mut qterm = Self::zero(&self.spec, self.nvars);
            qterm.add_term(qm, qc);
            rem = rem.sub(&qterm.mul(linear));
            quot = quot.add(&qterm);
        }
        quot
    }
}

/// The action of `w` (given by its matrix on `h*`) on polynomials.
pub fn act(matrix: &Mat, f: &Poly) -> Poly {
    f.substitute_linear(matrix)
}

/// The Demazure operator `d_s(f) = (f - s f) / alpha_s`.
pub fn demazure(realization: &Realization, s: usize, f: &Poly) -> Poly {
    let sf = act(&realization.dual_gens[s], f);
    let num = f.sub(&sf);
    if num.is_zero() {
        return Poly::zero(&f.spec, f.nvars);
    }
    let alpha = Poly::linear(&f.spec, &realization.root(s));
    num.div_linear_exact(&alpha)
}

/// All exponent vectors of total degree `d`, in lexicographic order.
pub fn monomials_of_degree(nvars: usize, d: u16) -> Vec<Mono> {
    fn rec(nvars: usize, d: u16, prefix: &mut Mono, out: &mut Vec<Mono>) {
        if nvars == 1 {
            let mut m = prefix.clone();
            m.push(d);
            out.push(m);
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(nvars - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}
