//! Mapping cones of simplicial maps and quotient complexes of pairs.
//!
//! A cone chain of degree `n` is stored as one vector: the `X_n` block first,
//! then the `A_{n-1}` block. Cochains use the same layout, so the cone
//! coboundary is literally the transpose of the cone boundary.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::complex::ChainData;
use crate::error::{RelError, Result};
use crate::linalg::{smith_normal_form, zero_int_vec, Int, IntMatrix, Rat};
use crate::simplicial::{SimplicialMap, SimplicialSet};

#[derive(Debug)]
pub struct Cone {
    phi: Arc<SimplicialMap>,
    chain: ChainData,
}

impl Cone {
    pub fn new(phi: &Arc<SimplicialMap>) -> Arc<Cone> {
        let x = phi.target();
        let a = phi.source();
        let top = x.top_degree().max(a.top_degree() + 1);
        let xd = |n: usize| x.count(n);
        let ad = |n: isize| if n < 0 { 0 } else { a.count(n as usize) };
        let dims: Vec<usize> = (0..=top).map(|n| xd(n) + ad(n as isize - 1)).collect();
        let mut bds = vec![IntMatrix::zeros(0, dims[0])];
        for n in 1..=top {
            let (rx, ra) = (xd(n - 1), ad(n as isize - 2));
            let (cx, ca) = (xd(n), ad(n as isize - 1));
            let mut m = IntMatrix::zeros(rx + ra, cx + ca);
            for (i, j, v) in x.chain().bd(n as isize).triplets() {
                m.set(i, j, v.clone());
            }
            for (i, j, v) in phi.matrix(n - 1).triplets() {
                m.set(i, cx + j, v.clone());
            }
            for (i, j, v) in a.chain().bd(n as isize - 1).triplets() {
                m.set(rx + i, cx + j, -v.clone());
            }
            bds.push(m);
        }
        Arc::new(Cone { phi: phi.clone(), chain: ChainData::new(dims, bds) })
    }

    pub fn phi(&self) -> &Arc<SimplicialMap> {
        &self.phi
    }

    pub fn x(&self) -> &Arc<SimplicialSet> {
        self.phi.target()
    }

    pub fn a(&self) -> &Arc<SimplicialSet> {
        self.phi.source()
    }

    pub fn chain(&self) -> &ChainData {
        &self.chain
    }

    pub fn x_dim(&self, n: usize) -> usize {
        self.x().count(n)
    }

    pub fn a_dim(&self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            self.a().count(n - 1)
        }
    }

    /// Splits a degree-n cone vector into its `X_n` and `A_{n-1}` parts.
    pub fn split<T: Clone>(&self, n: usize, v: &[T]) -> (Vec<T>, Vec<T>) {
        let k = self.x_dim(n);
        (v[..k].to_vec(), v[k..].to_vec())
    }

    pub fn join<T: Clone>(&self, n: usize, x: &[T], a: &[T]) -> Result<Vec<T>> {
        if x.len() != self.x_dim(n) || a.len() != self.a_dim(n) {
            return Err(RelError::DimensionMismatch(format!("cone pair of shape ({}, {}) in degree {n}", x.len(), a.len())));
        }
        Ok(x.iter().chain(a).cloned().collect())
    }

    pub fn boundary(&self, n: usize, c: &[Int]) -> Result<Vec<Int>> {
        if n == 0 {
            return Err(RelError::DegreeOutOfRange("cone boundary in degree 0".into()));
        }
        self.check(n, c.len())?;
        Ok(self.chain.boundary(n as isize, c))
    }

    pub fn coboundary(&self, n: usize, u: &[Rat]) -> Result<Vec<Rat>> {
        self.check(n, u.len())?;
        Ok(self.chain.coboundary(n as isize, u))
    }

    fn check(&self, n: usize, len: usize) -> Result<()> {
        if len != self.chain.dim(n as isize) {
            return Err(RelError::DimensionMismatch(format!("cone vector of length {len} in degree {n}")));
        }
        Ok(())
    }

    /// `i: (z) -> (z, 0)` on chains.
    pub fn i_chain(&self, n: usize, z: &[Int]) -> Vec<Int> {
        let mut v = z.to_vec();
        v.resize(z.len() + self.a_dim(n), Int::zero());
        v
    }

    /// `p: (s, t) -> t` on chains, landing in degree n-1 of A.
    pub fn p_chain(&self, n: usize, c: &[Int]) -> Vec<Int> {
        self.split(n, c).1
    }

    /// Basis of `Z_n(φ)` adapted to `0 -> Z_n(X) -> Z_n(φ) -> Z_{n-1}(A)`.
    pub fn cycles_basis(&self, n: usize) -> ConeCycles {
        let xz: Vec<Vec<Int>> = self.x().chain().cycle_basis(n as isize).into_iter().map(|z| self.i_chain(n, &z)).collect();
        let all = self.chain.cycle_basis(n as isize);
        let ad = self.a_dim(n);
        let p = IntMatrix::from_columns(ad, &all.iter().map(|c| self.p_chain(n, c)).collect::<Vec<_>>());
        let snf = smith_normal_form(&p);
        let mut a_images = Vec::new();
        let mut lifts = Vec::new();
        for i in 0..snf.rank() {
            let coeffs = snf.v_t.row(i);
            let mut lift = zero_int_vec(self.chain.dim(n as isize));
            for (k, c) in coeffs {
                for (j, v) in all[*k].iter().enumerate() {
                    if !v.is_zero() {
                        lift[j] += c * v;
                    }
                }
            }
            a_images.push(self.p_chain(n, &lift));
            lifts.push(lift);
        }
        ConeCycles { x_cycles: xz, a_images, lifts }
    }

    /// Preimage in the long exact homology sequence of the cone, at the
    /// given position, for a class killed by the outgoing map.
    pub fn les_witness(&self, position: LesPosition, n: usize, class: &[Int]) -> Result<LesWitness> {
        let x = self.x().chain();
        let a = self.a().chain();
        match position {
            LesPosition::X => {
                // z in Z_n(X) with (z, 0) = ∂_φ(s, t): then z = ∂s + φ_* t.
                if !x.is_cycle(n as isize, class) {
                    return Err(RelError::NotACycle("class in H_n(X)".into()));
                }
                let target = self.i_chain(n, class);
                match self.chain.bounding_chain(n as isize, &target) {
                    Some(w) => {
                        let (_, t) = self.split(n + 1, &w);
                        Ok(LesWitness { preimage: t, certificate: w })
                    }
                    None => Err(self.refusal(n, &target)),
                }
            }
            LesPosition::Cone => {
                if !self.chain.is_cycle(n as isize, class) {
                    return Err(RelError::NotACycle("class in H_n(φ)".into()));
                }
                let (s, t) = self.split(n, class);
                let nm1 = n as isize - 1;
                match a.bounding_chain(nm1, &t) {
                    Some(u) => {
                        let mut z = s;
                        let pu = self.phi.pushforward(n, &u);
                        for (zi, v) in z.iter_mut().zip(pu) {
                            *zi += v;
                        }
                        Ok(LesWitness { preimage: z, certificate: u })
                    }
                    None => Err(refusal_in(a, nm1, &t)),
                }
            }
            LesPosition::A => {
                // t in Z_n(A) with φ_* t = ∂s', preimage (-s', t) in degree n+1.
                if !a.is_cycle(n as isize, class) {
                    return Err(RelError::NotACycle("class in H_n(A)".into()));
                }
                let pt = self.phi.pushforward(n, class);
                match x.bounding_chain(n as isize, &pt) {
                    Some(sp) => {
                        let neg: Vec<Int> = sp.iter().map(|v| -v.clone()).collect();
                        let pre = self.join(n + 1, &neg, class)?;
                        Ok(LesWitness { preimage: pre, certificate: sp })
                    }
                    None => Err(refusal_in(x, n as isize, &pt)),
                }
            }
        }
    }

    fn refusal(&self, n: usize, image: &[Int]) -> RelError {
        refusal_in(&self.chain, n as isize, image)
    }
}

fn refusal_in(c: &ChainData, n: isize, image: &[Int]) -> RelError {
    let coords = c.homology(n).coordinates(image);
    RelError::Precondition(format!(
        "class is not in the kernel; its image has coordinates {}",
        coords.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    ))
}

/// Positions of the homology sequence
/// `H_n(A) -> H_n(X) -> H_n(φ) -> H_{n-1}(A) -> H_{n-1}(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LesPosition {
    /// At `H_n(X)`; preimage in `H_n(A)`.
    X,
    /// At `H_n(φ)`; preimage in `H_n(X)`.
    Cone,
    /// At `H_n(A)`; preimage in `H_{n+1}(φ)`.
    A,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesWitness {
    pub preimage: Vec<Int>,
    /// Chain certifying that preimage and class agree in homology.
    pub certificate: Vec<Int>,
}

/// Cycle basis of a cone, split as `i(Z_n(X))` plus lifts `σ(t)`.
#[derive(Clone, Debug)]
pub struct ConeCycles {
    pub x_cycles: Vec<Vec<Int>>,
    /// Basis of the image of `Z_n(φ) -> Z_{n-1}(A)`.
    pub a_images: Vec<Vec<Int>>,
    pub lifts: Vec<Vec<Int>>,
}

impl ConeCycles {
    pub fn all(&self) -> Vec<Vec<Int>> {
        self.x_cycles.iter().chain(&self.lifts).cloned().collect()
    }

    pub fn rank(&self) -> usize {
        self.x_cycles.len() + self.lifts.len()
    }
}

/// The relative complex `C(X)/C(A)` for an injective simplicial map.
#[derive(Debug)]
pub struct Quotient {
    incl: Arc<SimplicialMap>,
    /// X cells outside A, per degree.
    keep: Vec<Vec<usize>>,
    /// Position in the quotient basis of each X cell, if kept.
    pos: Vec<Vec<Option<usize>>>,
    chain: ChainData,
}

impl Quotient {
    pub fn new(incl: &Arc<SimplicialMap>) -> Result<Arc<Quotient>> {
        if !incl.is_injective() {
            return Err(RelError::NotSubcomplex(format!("{} is not injective on simplices", incl.name())));
        }
        let x = incl.target();
        let top = x.top_degree();
        let mut keep = Vec::new();
        let mut pos = Vec::new();
        for n in 0..=top {
            let mut in_a = vec![false; x.count(n)];
            if n < incl.images().len() {
                for img in &incl.images()[n] {
                    in_a[img.cell.idx] = true;
                }
            }
            let k: Vec<usize> = (0..x.count(n)).filter(|&i| !in_a[i]).collect();
            let mut p = vec![None; x.count(n)];
            for (j, &i) in k.iter().enumerate() {
                p[i] = Some(j);
            }
            keep.push(k);
            pos.push(p);
        }
        let dims: Vec<usize> = keep.iter().map(|k| k.len()).collect();
        let mut bds = vec![IntMatrix::zeros(0, dims[0])];
        for n in 1..=top {
            let mut m = IntMatrix::zeros(dims[n - 1], dims[n]);
            for (i, j, v) in x.chain().bd(n as isize).triplets() {
                if let (Some(pi), Some(pj)) = (pos[n - 1][i], pos[n][j]) {
                    m.set(pi, pj, v.clone());
                }
            }
            bds.push(m);
        }
        Ok(Arc::new(Quotient { incl: incl.clone(), keep, pos, chain: ChainData::new(dims, bds) }))
    }

    pub fn incl(&self) -> &Arc<SimplicialMap> {
        &self.incl
    }

    pub fn x(&self) -> &Arc<SimplicialSet> {
        self.incl.target()
    }

    pub fn a(&self) -> &Arc<SimplicialSet> {
        self.incl.source()
    }

    pub fn chain(&self) -> &ChainData {
        &self.chain
    }

    pub fn dim(&self, n: usize) -> usize {
        self.keep.get(n).map_or(0, |k| k.len())
    }

    /// Indices of the X cells of degree `n` that survive in the quotient.
    pub fn kept(&self, n: usize) -> &[usize] {
        self.keep.get(n).map_or(&[], |k| k.as_slice())
    }

    /// Drops the coefficients on A cells.
    pub fn reduce<T: Clone>(&self, n: usize, v: &[T]) -> Vec<T> {
        self.keep.get(n).map_or(Vec::new(), |k| k.iter().map(|&i| v[i].clone()).collect())
    }

    /// Extends a quotient vector by zero on A cells.
    pub fn ext0<T: Clone + Zero>(&self, n: usize, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.x().count(n)];
        if let Some(k) = self.keep.get(n) {
            for (j, &i) in k.iter().enumerate() {
                out[i] = v[j].clone();
            }
        }
        out
    }

    /// Extends a cochain on A to X by zero off the image of A.
    pub fn ext_a<T: Clone + Zero>(&self, n: usize, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.x().count(n)];
        for (idx, img) in self.incl.images().get(n).into_iter().flatten().enumerate() {
            out[img.cell.idx] = v[idx].clone();
        }
        out
    }

    /// True when the X cochain vanishes on every A cell.
    pub fn vanishes_on_a<T: Zero>(&self, n: usize, v: &[T]) -> bool {
        self.pos.get(n).map_or(true, |p| p.iter().zip(v).all(|(q, x)| q.is_some() || x.is_zero()))
    }

    /// Cone cycle of the inclusion that `q` sends to the relative cycle `v`.
    pub fn cone_cycle(&self, cone: &Cone, n: usize, v: &[Int]) -> Result<Vec<Int>> {
        let vt = self.ext0(n, v);
        if n == 0 {
            return Ok(vt);
        }
        let d = self.x().chain().boundary(n as isize, &vt);
        // ∂v lies in A; pull it back along the injective inclusion.
        let mut w = zero_int_vec(self.a().count(n - 1));
        for (idx, img) in self.incl.images()[n - 1].iter().enumerate() {
            w[idx] = d[img.cell.idx].clone();
        }
        if self.incl.pushforward(n - 1, &w) != d {
            return Err(RelError::NotACycle("chain is not a relative cycle".into()));
        }
        let neg: Vec<Int> = w.iter().map(|x| -x.clone()).collect();
        cone.join(n, &vt, &neg)
    }

    /// `q: (v, w) -> v mod A` on chains.
    pub fn q_chain(&self, cone: &Cone, n: usize, c: &[Int]) -> Vec<Int> {
        self.reduce(n, &cone.split(n, c).0)
    }
}

/// Which complex a cochain lives on.
#[derive(Clone, Debug)]
pub enum Space {
    Abs(Arc<SimplicialSet>),
    Cone(Arc<Cone>),
    Quot(Arc<Quotient>),
}

impl Space {
    pub fn chain(&self) -> &ChainData {
        match self {
            Space::Abs(x) => x.chain(),
            Space::Cone(c) => c.chain(),
            Space::Quot(q) => q.chain(),
        }
    }

    pub fn dim(&self, n: isize) -> usize {
        self.chain().dim(n)
    }

    pub fn flavor(&self) -> &'static str {
        match self {
            Space::Abs(_) => "absolute",
            Space::Cone(_) => "cone",
            Space::Quot(_) => "quotient",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Space::Abs(x) => x.name().to_string(),
            Space::Cone(c) => format!("cone({})", c.phi().name()),
            Space::Quot(q) => format!("({},{})", q.x().name(), q.a().name()),
        }
    }

    pub fn same_as(&self, other: &Space) -> bool {
        match (self, other) {
            (Space::Abs(a), Space::Abs(b)) => a.same_as(b),
            (Space::Cone(a), Space::Cone(b)) => {
                Arc::ptr_eq(a, b) || (a.x().same_as(b.x()) && a.a().same_as(b.a()) && a.phi().images() == b.phi().images())
            }
            (Space::Quot(a), Space::Quot(b)) => {
                Arc::ptr_eq(a, b) || (a.x().same_as(b.x()) && a.a().same_as(b.a()) && a.incl().images() == b.incl().images())
            }
            _ => false,
        }
    }

    pub fn as_abs(&self) -> Result<&Arc<SimplicialSet>> {
        match self {
            Space::Abs(x) => Ok(x),
            _ => Err(RelError::FlavorMismatch(format!("expected an absolute space, got {}", self.flavor()))),
        }
    }

    pub fn as_cone(&self) -> Result<&Arc<Cone>> {
        match self {
            Space::Cone(c) => Ok(c),
            _ => Err(RelError::FlavorMismatch(format!("expected a mapping cone, got {}", self.flavor()))),
        }
    }

    pub fn as_quot(&self) -> Result<&Arc<Quotient>> {
        match self {
            Space::Quot(q) => Ok(q),
            _ => Err(RelError::FlavorMismatch(format!("expected a pair, got {}", self.flavor()))),
        }
    }
}

/// Pairing of a cochain with a chain in one degree.
pub fn pair(u: &[Rat], c: &[Int]) -> Rat {
    crate::simplicial::integrate(u, c)
}

/// Indicator cochain of basis element `i` in a space of dimension `n`.
pub fn unit_rat(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{int, rat, to_rat_vec};

    #[test]
    fn cone_of_deg2_has_z2_in_degree_one() {
        let c = Cone::new(&fixtures::deg2());
        let h = c.chain().homology(1);
        assert_eq!(h.free_rank, 0);
        assert_eq!(h.torsion_orders, vec![int(2)]);
        let (n, w) = &h.torsion_witnesses[0];
        let lhs = c.boundary(2, w).unwrap();
        let rhs: Vec<Int> = h.generators[0].iter().map(|v| v * n).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cone_boundary_of_pure_a_chain() {
        let f = fixtures::deg2();
        let c = Cone::new(&f);
        let z6 = fixtures::s1_6_cycle(f.source());
        let zeros = vec![Int::zero(); c.x_dim(2)];
        let chain = c.join(2, &zeros, &z6).unwrap();
        let b = c.boundary(2, &chain).unwrap();
        let (s, t) = c.split(1, &b);
        assert!(t.iter().all(|v| v.is_zero()));
        let z3 = fixtures::s1_cycle(f.target());
        assert_eq!(s, z3.iter().map(|v| v * 2).collect::<Vec<_>>());
    }

    #[test]
    fn identity_cone_is_acyclic() {
        let c = Cone::new(&fixtures::id_s1());
        for n in 0..=2 {
            assert!(c.chain().homology(n).is_trivial(), "degree {n}");
        }
    }

    #[test]
    fn relative_circle() {
        let c = Cone::new(&fixtures::pt_in_s1());
        assert_eq!(c.chain().homology(1).describe(), "Z");
        let q = Quotient::new(&fixtures::pt_in_s1()).unwrap();
        assert_eq!(q.chain().homology(1).describe(), "Z");
        assert_eq!(q.chain().homology(0).describe(), "0");
    }

    #[test]
    fn quotient_requires_injective_map() {
        assert!(matches!(Quotient::new(&fixtures::deg2()), Err(RelError::NotSubcomplex(_))));
    }

    #[test]
    fn cycles_basis_ranks() {
        let c = Cone::new(&fixtures::deg2());
        let b = c.cycles_basis(1);
        // Z_1(S1) has rank 1 and every 0-cycle of the hexagon with vanishing
        // augmentation lifts.
        assert_eq!(b.x_cycles.len(), 1);
        assert_eq!(b.lifts.len(), 5);
        for z in b.all() {
            assert!(c.chain().is_cycle(1, &z));
        }
        let b0 = c.cycles_basis(0);
        assert_eq!(b0.rank(), 3);
        assert!(b0.lifts.is_empty());
    }

    #[test]
    fn les_witness_at_x_for_deg2() {
        let f = fixtures::deg2();
        let c = Cone::new(&f);
        let z3 = fixtures::s1_cycle(f.target());
        let err = c.les_witness(LesPosition::X, 1, &z3).unwrap_err();
        assert!(matches!(err, RelError::Precondition(_)));
        let twice: Vec<Int> = z3.iter().map(|v| v * 2).collect();
        let w = c.les_witness(LesPosition::X, 1, &twice).unwrap();
        let pushed = f.pushforward(1, &w.preimage);
        let h = f.target().chain().homology(1);
        assert_eq!(h.coordinates(&pushed), h.coordinates(&twice));
    }

    #[test]
    fn cone_stokes_and_adjointness() {
        let c = Cone::new(&fixtures::deg2());
        for n in 1..=2usize {
            let u: Vec<Rat> = (0..c.chain().dim(n as isize - 1)).map(|i| rat(i as i64 % 4 - 1, 2)).collect();
            let x: Vec<Int> = (0..c.chain().dim(n as isize)).map(|i| int(i as i64 % 3 - 1)).collect();
            let lhs = pair(&c.coboundary(n - 1, &u).unwrap(), &x);
            let rhs = pair(&u, &c.boundary(n, &x).unwrap());
            assert_eq!(lhs, rhs);
        }
        let om = to_rat_vec(&vec![int(1); c.x_dim(1)]);
        let u = c.join(1, &om, &vec![Rat::zero(); c.a_dim(1)]).unwrap();
        let (dx, da) = c.split(2, &c.coboundary(1, &u).unwrap());
        assert_eq!(dx, c.x().coboundary(1, &om).unwrap());
        assert_eq!(da, c.phi().pullback(1, &om));
    }

    #[test]
    fn quotient_cycle_lifts_to_cone() {
        let incl = fixtures::pt_in_s1();
        let c = Cone::new(&incl);
        let q = Quotient::new(&incl).unwrap();
        let e01 = q.reduce(1, &fixtures::s1().chain_from(1, &[("e01", 1)]).unwrap());
        let z = q.cone_cycle(&c, 1, &e01).unwrap_err();
        assert!(matches!(z, RelError::NotACycle(_)));
        let g = q.chain().homology(1).generators[0].clone();
        let lifted = q.cone_cycle(&c, 1, &g).unwrap();
        assert!(c.chain().is_cycle(1, &lifted));
        assert_eq!(q.q_chain(&c, 1, &lifted), g);
    }
}
