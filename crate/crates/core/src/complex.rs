//! Finite chain complexes given by integer boundary matrices, with the
//! Smith normal form data of every boundary map computed once on demand.

use std::sync::OnceLock;

use crate::linalg::{presentation_from_snf, smith_normal_form, FgAbPresentation, Int, IntMatrix, Rat, Snf};

/// Boundary matrices `bd[n]: C_n -> C_{n-1}` for `n = 0..=top+1`.
#[derive(Debug)]
pub struct ChainData {
    dims: Vec<usize>,
    bd: Vec<IntMatrix>,
    empty: IntMatrix,
    snf: Vec<OnceLock<Snf>>,
    homology: Vec<OnceLock<FgAbPresentation>>,
    cohomology: Vec<OnceLock<FgAbPresentation>>,
}

impl ChainData {
    /// `bd[n]` must have shape `dims[n-1] x dims[n]`; `bd[0]` is `0 x dims[0]`.
    pub fn new(dims: Vec<usize>, mut bd: Vec<IntMatrix>) -> Self {
        let top = dims.len();
        assert_eq!(bd.len(), top, "one boundary matrix per degree");
        if let Some(&d) = dims.last() {
            bd.push(IntMatrix::zeros(d, 0));
        } else {
            bd.push(IntMatrix::zeros(0, 0));
        }
        let slots = top + 2;
        ChainData {
            dims,
            bd,
            empty: IntMatrix::zeros(0, 0),
            snf: (0..slots).map(|_| OnceLock::new()).collect(),
            homology: (0..slots).map(|_| OnceLock::new()).collect(),
            cohomology: (0..slots).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Highest degree with a nonempty basis, plus one; degrees at or above
    /// this are zero.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dim(&self, n: isize) -> usize {
        if n < 0 {
            0
        } else {
            self.dims.get(n as usize).copied().unwrap_or(0)
        }
    }

    /// `∂_n: C_n -> C_{n-1}`.
    pub fn bd(&self, n: isize) -> &IntMatrix {
        if n < 0 {
            return &self.empty;
        }
        self.bd.get(n as usize).unwrap_or(&self.empty)
    }

    /// Smith form of `∂_n`, computed once.
    pub fn snf(&self, n: isize) -> &Snf {
        if n < 0 || n as usize >= self.snf.len() {
            static EMPTY: OnceLock<Snf> = OnceLock::new();
            return EMPTY.get_or_init(|| smith_normal_form(&IntMatrix::zeros(0, 0)));
        }
        self.snf[n as usize].get_or_init(|| smith_normal_form(self.bd(n)))
    }

    pub fn boundary(&self, n: isize, c: &[Int]) -> Vec<Int> {
        self.bd(n).mul_vec(c)
    }

    pub fn boundary_rat(&self, n: isize, c: &[Rat]) -> Vec<Rat> {
        self.bd(n).mul_vec_rat(c)
    }

    /// `δ_n: C^n -> C^{n+1}`, the transpose of `∂_{n+1}`.
    pub fn coboundary(&self, n: isize, u: &[Rat]) -> Vec<Rat> {
        if n < -1 {
            return Vec::new();
        }
        self.bd(n + 1).tmul_vec_rat(u)
    }

    pub fn coboundary_int(&self, n: isize, u: &[Int]) -> Vec<Int> {
        if n < -1 {
            return Vec::new();
        }
        self.bd(n + 1).tmul_vec(u)
    }

    pub fn cycle_basis(&self, n: isize) -> Vec<Vec<Int>> {
        if n < 0 {
            return Vec::new();
        }
        self.snf(n).kernel_basis()
    }

    pub fn is_cycle(&self, n: isize, c: &[Int]) -> bool {
        self.boundary(n, c).iter().all(|v| v == &Int::default())
    }

    pub fn homology(&self, n: isize) -> &FgAbPresentation {
        let slot = n.max(0) as usize;
        if n < 0 || slot >= self.homology.len() {
            static EMPTY: OnceLock<FgAbPresentation> = OnceLock::new();
            return EMPTY.get_or_init(|| presentation_from_snf(&smith_normal_form(&IntMatrix::zeros(0, 0)), &IntMatrix::zeros(0, 0)));
        }
        self.homology[slot].get_or_init(|| presentation_from_snf(self.snf(n), self.bd(n + 1)))
    }

    /// Integral cohomology `ker δ_n / im δ_{n-1}`.
    pub fn cohomology(&self, n: isize) -> &FgAbPresentation {
        let slot = n.max(0) as usize;
        if n < 0 || slot >= self.cohomology.len() {
            static EMPTY: OnceLock<FgAbPresentation> = OnceLock::new();
            return EMPTY.get_or_init(|| presentation_from_snf(&smith_normal_form(&IntMatrix::zeros(0, 0)), &IntMatrix::zeros(0, 0)));
        }
        self.cohomology[slot].get_or_init(|| {
            let snf_delta = self.snf(n + 1).transposed();
            presentation_from_snf(&snf_delta, &self.bd(n).transpose())
        })
    }

    /// Integer chain `a` with `∂a = c`, if any.
    pub fn bounding_chain(&self, n: isize, c: &[Int]) -> Option<Vec<Int>> {
        self.snf(n + 1).solve_int(c)
    }

    /// Rational cochain `b` with `δb = u`.
    pub fn coboundary_preimage_rat(&self, n: isize, u: &[Rat]) -> Option<Vec<Rat>> {
        self.snf(n).solve_rat_t(u)
    }

    /// Rational cochain `s` in degree n-1 with `u + δs` integral.
    pub fn integralize_by_coboundary(&self, n: isize, u: &[Rat]) -> Option<Vec<Rat>> {
        let neg: Vec<Rat> = u.iter().map(|x| -x.clone()).collect();
        self.snf(n).solve_mod_lattice_t(&neg)
    }

    /// Integral cochain `b` with `δb = u` (u in degree n, b in degree n-1).
    pub fn coboundary_preimage_int(&self, n: isize, u: &[Int]) -> Option<Vec<Int>> {
        self.snf(n).solve_int_t(u)
    }
}
