//! The reflection representation: spaces `h` and `h*`, roots, coroots,
//! generator matrices and the dominant regular cone.
//!
//! Coroots are the first `|S|` standard basis vectors of `h`; roots are
//! covectors pairing against them by `-2cos(pi/m_st)`. When that pairing
//! matrix is singular (possible for infinite groups) the space is enlarged
//! minimally so that roots and coroots are both linearly independent.

use std::sync::Arc;

use crate::coxeter::{Bond, CoxeterMatrix};
use crate::error::Result;
use crate::linalg::Mat;
use crate::numfield::{rat, AlgebraicReal, FieldSpec, Rat};

/// An element of `h*` in coordinates dual to the basis of `h`.
pub type Covector = Vec<AlgebraicReal>;

#[derive(Clone, Debug)]
pub struct Realization {
    pub spec: Arc<FieldSpec>,
    pub rank: usize,
    pub dim: usize,
    /// Pairing values `<alpha_s, alpha_t^vee> = -2cos(pi/m_st)`.
    pub cartan: Mat,
    /// Row `s` holds the coordinates of the root `alpha_s` in `h*`.
    pub root_rows: Mat,
    /// `phi_s` acting on column coordinate vectors of covectors.
    pub dual_gens: Vec<Mat>,
    /// `phi_s^vee` acting on `h`.
    pub space_gens: Vec<Mat>,
    /// Left inverse of `root_rows^T`: maps a covector in the root span to
    /// its coordinates in the root basis.
    root_solver: Mat,
}

impl Realization {
    pub fn build(matrix: &CoxeterMatrix, spec: &Arc<FieldSpec>) -> Result<Self> {
        let rank = matrix.rank;
        let mut cartan = Mat::zeros(spec, rank, rank);
        for s in 0..rank {
            for t in 0..rank {
                let v = match matrix.bond(s, t) {
                    Bond::Infinite => spec.from_int(-2),
                    Bond::Finite(m) => -&spec.two_cos_pi_over(m)?,
                };
                *cartan.at_mut(s, t) = v;
            }
        }

        // Rows of the Cartan matrix that are dependent need an extra
        // coordinate each so the roots stay independent.
        let (_, pivots) = cartan.transpose().rref();
        let dependent: Vec<usize> = (0..rank).filter(|r| !pivots.contains(r)).collect();
        let extra = dependent.len();
        let dim = rank + extra;

        let mut root_rows = Mat::zeros(spec, rank, dim);
        for s in 0..rank {
            for t in 0..rank {
                *root_rows.at_mut(s, t) = cartan.at(s, t).clone();
            }
        }
        for (j, &r) in dependent.iter().enumerate() {
            *root_rows.at_mut(r, rank + j) = spec.one();
        }

        let mut dual_gens = Vec::with_capacity(rank);
        let mut space_gens = Vec::with_capacity(rank);
        for s in 0..rank {
            // phi_s(lambda) = lambda - lambda_s * alpha_s, on column coords.
            let mut d = Mat::identity(spec, dim);
            for i in 0..dim {
                let v = d.at(i, s) - root_rows.at(s, i);
                *d.at_mut(i, s) = v;
            }
            dual_gens.push(d);
            // phi_s^vee(v) = v - <alpha_s, v> e_s.
            let mut h = Mat::identity(spec, dim);
            for j in 0..dim {
                let v = h.at(s, j) - root_rows.at(s, j);
                *h.at_mut(s, j) = v;
            }
            space_gens.push(h);
        }

        // (R R^T)^{-1} R maps covectors in the root span to root coordinates.
        let gram = root_rows.matmul(&root_rows.transpose());
        let root_solver = gram
            .inverse()
            .expect("independent real rows have invertible Gram matrix")
            .matmul(&root_rows);

        Ok(Self {
            spec: Arc::clone(spec),
            rank,
            dim,
            cartan,
            root_rows,
            dual_gens,
            space_gens,
            root_solver,
        })
    }

    pub fn coroot(&self, s: usize) -> Vec<AlgebraicReal> {
        let mut v = vec![self.spec.zero(); self.dim];
        v[s] = self.spec.one();
        v
    }

    pub fn root(&self, s: usize) -> Covector {
        self.root_rows.row(s).to_vec()
    }

    /// Natural pairing of a covector with a vector (both in coordinates).
    pub fn pair(&self, lambda: &[AlgebraicReal], v: &[AlgebraicReal]) -> AlgebraicReal {
        let mut acc = self.spec.zero();
        for (a, b) in lambda.iter().zip(v) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }

    /// Coordinates of a covector in the root basis (the covector must lie in
    /// the root span; group images of roots always do).
    pub fn root_coords(&self, lambda: &[AlgebraicReal]) -> Vec<AlgebraicReal> {
        self.root_solver.matvec(lambda)
    }

    /// True iff the covector is a negative root combination (all root
    /// coordinates nonpositive).
    pub fn is_negative_root(&self, lambda: &[AlgebraicReal]) -> bool {
        self.root_coords(lambda).iter().all(|c| c.sign() <= 0)
    }

    /// `<lambda, alpha_s^vee> > 0` for every simple `s`, checked exactly.
    pub fn is_dominant_regular(&self, lambda: &[AlgebraicReal]) -> bool {
        (0..self.rank).all(|s| lambda[s].sign() > 0)
    }

    /// The covector with `<lambda, alpha_s^vee> = 1` for all `s`.
    pub fn canonical_dominant(&self) -> Covector {
        let mut v = vec![self.spec.zero(); self.dim];
        for s in 0..self.rank {
            v[s] = self.spec.one();
        }
        v
    }

    /// `count` distinct dominant regular covectors: the canonical point plus
    /// deterministic small rational perturbations (offset by `seed`).
    pub fn sample_dominant_regular(&self, count: usize, seed: u64) -> Vec<Covector> {
        assert!(count >= 1);
        let mut out = vec![self.canonical_dominant()];
        let mut k: u64 = 1;
        while out.len() < count {
            let mut v = self.canonical_dominant();
            for (i, entry) in v.iter_mut().enumerate().take(self.rank) {
                let idx = seed + k + i as u64;
                let num: i64 = if (idx + k) % 2 == 0 { 1 } else { -1 };
                let den = (3 + idx % 17 + 2 * k) as i64;
                let eps = self.spec.from_rat(rat(num, den));
                *entry = &*entry + &eps;
            }
            debug_assert!(self.is_dominant_regular(&v));
            if !out.contains(&v) {
                out.push(v);
            }
            k += 1;
        }
        out
    }

    /// Scales a covector by a rational (used in cone tests).
    pub fn scale_covector(&self, lambda: &[AlgebraicReal], c: &Rat) -> Covector {
        lambda.iter().map(|x| x.scale(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;
    use crate::numfield::field_for;

    fn build(m: CoxeterMatrix) -> Realization {
        let spec = field_for(&m.as_options()).unwrap();
        Realization::build(&m, &spec).unwrap()
    }

    #[test]
    fn rank_one() {
        let r = build(CoxeterMatrix::rank_one());
        assert_eq!(r.dim, 1);
        assert_eq!(r.cartan.at(0, 0), &r.spec.from_int(2));
        // s acts by -1 on h
        assert_eq!(r.space_gens[0].at(0, 0), &r.spec.from_int(-1));
    }

    #[test]
    fn a2_cartan_and_relations() {
        let r = build(CoxeterMatrix::symmetric_group(3));
        assert_eq!(r.dim, 2);
        assert_eq!(r.cartan.at(0, 1), &r.spec.from_int(-1));
        assert_eq!(r.cartan.at(0, 0), &r.spec.from_int(2));
        let st = r.dual_gens[0].matmul(&r.dual_gens[1]);
        let id = Mat::identity(&r.spec, 2);
        assert_ne!(st.pow(1), id);
        assert_ne!(st.pow(2), id);
        assert_eq!(st.pow(3), id);
    }

    #[test]
    fn involutions_and_duality() {
        for m in [
            CoxeterMatrix::symmetric_group(3),
            CoxeterMatrix::dihedral(5),
            CoxeterMatrix::type_b(3),
        ] {
            let r = build(m);
            let id = Mat::identity(&r.spec, r.dim);
            for s in 0..r.rank {
                assert_eq!(r.dual_gens[s].matmul(&r.dual_gens[s]), id);
                assert_eq!(r.space_gens[s].matmul(&r.space_gens[s]), id);
                // duality: action on h* is the inverse transpose of h
                let it = r.space_gens[s].transpose().inverse().unwrap();
                assert_eq!(r.dual_gens[s], it);
            }
        }
    }

    #[test]
    fn defining_relations_hold() {
        for m in [
            CoxeterMatrix::dihedral(4),
            CoxeterMatrix::dihedral(7),
            CoxeterMatrix::type_h3(),
        ] {
            let r = build(m.clone());
            for s in 0..r.rank {
                for t in 0..r.rank {
                    if let Bond::Finite(order) = m.bond(s, t) {
                        let prod = r.dual_gens[s].matmul(&r.dual_gens[t]);
                        assert_eq!(prod.pow(order as usize), Mat::identity(&r.spec, r.dim));
                        if s != t {
                            for e in 1..order {
                                assert_ne!(prod.pow(e as usize), Mat::identity(&r.spec, r.dim));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn infinite_dihedral_needs_three_dimensions() {
        // Cartan matrix ((2,-2),(-2,2)) is singular
        let r = build(CoxeterMatrix::dihedral_infinite());
        assert_eq!(r.dim, 3);
        assert_eq!(r.root_rows.rank(), 2);
        for s in 0..2 {
            assert_eq!(
                r.dual_gens[s].matmul(&r.dual_gens[s]),
                Mat::identity(&r.spec, 3)
            );
        }
    }

    #[test]
    fn dominant_cone() {
        let r = build(CoxeterMatrix::symmetric_group(3));
        let canonical = r.canonical_dominant();
        assert!(r.is_dominant_regular(&canonical));
        let zero = vec![r.spec.zero(), r.spec.zero()];
        assert!(!r.is_dominant_regular(&zero));
        // alpha_s is not dominant: <alpha_s, alpha_t^vee> = -1 < 0
        let alpha = r.root(0);
        assert!(!r.is_dominant_regular(&alpha));

        let samples = r.sample_dominant_regular(5, 0);
        assert_eq!(samples.len(), 5);
        for s in &samples {
            assert!(r.is_dominant_regular(s));
        }
        // the cone is closed under addition and positive scaling
        let sum: Covector = samples[0]
            .iter()
            .zip(&samples[1])
            .map(|(a, b)| a + b)
            .collect();
        assert!(r.is_dominant_regular(&sum));
        assert!(r.is_dominant_regular(&r.scale_covector(&sum, &rat(3, 7))));
    }
}
