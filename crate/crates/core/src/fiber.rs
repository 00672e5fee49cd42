//! Trivial bundles `X × F -> X` (or `φ × id_F` over a cone) with a fiber
//! fundamental chain, the transfer `λ = ez(- ⊗ z_F)` and fiber integration.

use std::sync::Arc;

use num_traits::Zero;

use crate::characters::{iota, pullback, pullback_pair, section_with_cov, Character};
use crate::cone::{Cone, Space};
use crate::error::{RelError, Result};
use crate::kunneth::ConeProduct;
use crate::linalg::{dot, to_int_vec, to_rat_vec, vec_neg, Int, Rat};
use crate::simplicial::{ez_chains, product_map, product_space, projection, SimplicialMap, SimplicialSet};

#[derive(Debug, Clone)]
pub struct TrivialBundle {
    base: Space,
    fiber: Arc<SimplicialSet>,
    dim: usize,
    z: Vec<Int>,
    bd: Vec<Int>,
    total: Space,
    cone_product: Option<ConeProduct>,
}

impl TrivialBundle {
    /// A bundle whose fiber chain may have a boundary.
    pub fn new(base: Space, fiber: &Arc<SimplicialSet>, dim: usize, z: Vec<Int>) -> Result<Self> {
        if z.len() != fiber.count(dim) {
            return Err(RelError::DimensionMismatch(format!("fiber chain has length {}, expected {}", z.len(), fiber.count(dim))));
        }
        let bd = if dim == 0 { Vec::new() } else { fiber.boundary(dim, &z)? };
        let (total, cone_product) = match &base {
            Space::Abs(x) => (Space::Abs(product_space(x, fiber)), None),
            Space::Cone(c) => {
                let cp = ConeProduct::new(c, fiber)?;
                (cp.space(), Some(cp))
            }
            Space::Quot(_) => return Err(RelError::FlavorMismatch("bundles over quotient complexes are not supported".into())),
        };
        Ok(TrivialBundle { base, fiber: fiber.clone(), dim, z, bd, total, cone_product })
    }

    /// A bundle with closed fiber: `∂z_F = 0` is required.
    pub fn closed(base: Space, fiber: &Arc<SimplicialSet>, dim: usize, z: Vec<Int>) -> Result<Self> {
        let b = Self::new(base, fiber, dim, z)?;
        if !b.is_closed() {
            return Err(RelError::NotACycle("fiber fundamental chain has nonzero boundary".into()));
        }
        Ok(b)
    }

    pub fn is_closed(&self) -> bool {
        self.bd.iter().all(|x| x.is_zero())
    }

    pub fn base(&self) -> &Space {
        &self.base
    }

    pub fn fiber(&self) -> &Arc<SimplicialSet> {
        &self.fiber
    }

    pub fn fiber_dim(&self) -> usize {
        self.dim
    }

    pub fn fundamental_chain(&self) -> &[Int] {
        &self.z
    }

    pub fn boundary_chain(&self) -> &[Int] {
        &self.bd
    }

    pub fn total(&self) -> &Space {
        &self.total
    }

    pub fn cone_product(&self) -> Option<&ConeProduct> {
        self.cone_product.as_ref()
    }

    /// `ez(c ⊗ y)` on the total space, for a base chain of degree n and a
    /// fiber chain of degree q.
    pub fn push(&self, n: usize, c: &[Int], q: usize, y: &[Int]) -> Result<Vec<Int>> {
        match (&self.total, &self.cone_product) {
            (Space::Abs(t), _) => ez_chains(t, n, c, q, y),
            (_, Some(cp)) => cp.cone_ez(n, c, q, y),
            _ => unreachable!("total space matches base flavor"),
        }
    }

    /// `λ(c) = ez(c ⊗ z_F)`.
    pub fn transfer(&self, n: usize, c: &[Int]) -> Result<Vec<Int>> {
        self.push(n, c, self.dim, &self.z)
    }

    /// Transfer along `∂z_F`.
    pub fn transfer_boundary(&self, n: usize, c: &[Int]) -> Result<Vec<Int>> {
        self.need_boundary()?;
        self.push(n, c, self.dim - 1, &self.bd)
    }

    fn need_boundary(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(RelError::Precondition("a 0-dimensional fiber chain has no boundary".into()));
        }
        Ok(())
    }

    /// `(∫_y u)(a) = u(ez(a ⊗ y))` for a cochain of degree n on the total space.
    pub fn integrate_over(&self, n: usize, u: &[Rat], q: usize, y: &[Int]) -> Result<Vec<Rat>> {
        if n < q {
            return Err(RelError::DegreeOutOfRange(format!("cannot integrate a degree-{n} cochain over a degree-{q} fiber chain")));
        }
        if u.len() != self.total.dim(n as isize) {
            return Err(RelError::DimensionMismatch(format!("cochain of length {} in degree {n}", u.len())));
        }
        let m = n - q;
        let nb = self.base.dim(m as isize);
        let mut out = Vec::with_capacity(nb);
        for i in 0..nb {
            let mut e = vec![Int::zero(); nb];
            e[i] = Int::from(1);
            let img = self.push(m, &e, q, y)?;
            out.push(dot(u, &to_rat_vec(&img)));
        }
        Ok(out)
    }

    pub fn fint(&self, n: usize, u: &[Rat]) -> Result<Vec<Rat>> {
        self.integrate_over(n, u, self.dim, &self.z)
    }

    pub fn fint_boundary(&self, n: usize, u: &[Rat]) -> Result<Vec<Rat>> {
        self.need_boundary()?;
        self.integrate_over(n, u, self.dim - 1, &self.bd)
    }

    fn check_total(&self, h: &Character) -> Result<()> {
        if !h.space().same_as(&self.total) {
            return Err(RelError::SpaceMismatch(format!("character lives on {}, bundle total space is {}", h.space().describe(), self.total.describe())));
        }
        Ok(())
    }

    fn integrate_triple(&self, h: &Character, q: usize, y: &[Int]) -> Result<Character> {
        self.check_total(h)?;
        let k = h.degree();
        if k < q + 1 {
            return Err(RelError::DegreeOutOfRange(format!("degree {k} is too low to integrate over a {q}-dimensional fiber")));
        }
        let c = self.integrate_over(k, &to_rat_vec(h.cocycle()), q, y)?;
        let lift = self.integrate_over(k - 1, h.lift(), q, y)?;
        let curv = self.integrate_over(k, h.curvature(), q, y)?;
        Character::new(self.base.clone(), k - q, to_int_vec(&c), lift, curv)
    }

    /// `π̂_! h` for a closed fiber.
    pub fn integrate(&self, h: &Character) -> Result<Character> {
        if !self.is_closed() {
            return Err(RelError::Precondition("fiber integration of characters needs a closed fiber".into()));
        }
        self.integrate_triple(h, self.dim, &self.z)
    }

    /// Integration over the boundary fiber, with the form that trivializes
    /// the result: `(-1)^{k - dim F} ∫_F (curv, cov)(h)`.
    pub fn integrate_boundary(&self, h: &Character) -> Result<(Character, Vec<Rat>)> {
        self.need_boundary()?;
        let out = self.integrate_triple(h, self.dim - 1, &self.bd)?;
        let k = h.degree();
        let mut theta = self.fint(k, h.curvature())?;
        if (k + self.dim) % 2 == 1 {
            theta = vec_neg(&theta);
        }
        Ok((out, theta))
    }

    /// The form `(-1)^{k-1-dim F} ∫_w curv(h)` by which `π̂_! h` moves when
    /// `z_F` is replaced by `z_F + ∂w`.
    pub fn transfer_correction(&self, h: &Character, w: &[Int]) -> Result<Vec<Rat>> {
        self.check_total(h)?;
        let k = h.degree();
        let v = self.integrate_over(k, h.curvature(), self.dim + 1, w)?;
        Ok(if (k + 1 + self.dim) % 2 == 1 { vec_neg(&v) } else { v })
    }

    /// The same bundle with fiber chain `z_F + ∂w`.
    pub fn shifted(&self, w: &[Int]) -> Result<Self> {
        let dw = self.fiber.boundary(self.dim + 1, w)?;
        let z: Vec<Int> = self.z.iter().zip(&dw).map(|(a, b)| a + b).collect();
        Self::new(self.base.clone(), &self.fiber, self.dim, z)
    }

    /// `π^* h` for a character on the base.
    pub fn pull_up(&self, h: &Character) -> Result<Character> {
        if !h.space().same_as(&self.base) {
            return Err(RelError::SpaceMismatch("character does not live on the base".into()));
        }
        match (&self.total, &self.cone_product) {
            (Space::Abs(t), _) => pullback(&projection(t, true)?, h),
            (_, Some(cp)) => {
                let f = projection(&cp.xy, true)?;
                let g = projection(&cp.ay, true)?;
                pullback_pair(&f, &g, &cp.product, h)
            }
            _ => unreachable!("total space matches base flavor"),
        }
    }
}

/// Bundle maps `(f × id_F, g × id_F)` over a map of maps `(f, g)`.
pub fn bundle_map(f: &Arc<SimplicialMap>, g: &Arc<SimplicialMap>, source: &TrivialBundle, target: &TrivialBundle) -> Result<(Arc<SimplicialMap>, Arc<SimplicialMap>)> {
    let (s, t) = match (source.cone_product(), target.cone_product()) {
        (Some(s), Some(t)) => (s, t),
        _ => return Err(RelError::FlavorMismatch("bundle maps are defined between cone bundles".into())),
    };
    if !s.other.same_as(&t.other) {
        return Err(RelError::SpaceMismatch("bundles have different fibers".into()));
    }
    let id = SimplicialMap::identity(&s.other);
    Ok((product_map(f, &id, &s.xy, &t.xy)?, product_map(g, &id, &s.ay, &t.ay)?))
}

/// A section of `π̂_! h` along `φ` built from bounding data: `over_a` is the
/// bundle `A × F'` whose fiber chain has boundary `j_* z_F`, and `h_ext` is
/// a character on `A × F'` restricting to `(φ × id_F)^* h`. The section has
/// covariant derivative `(-1)^{k + dim F'} ∫_{F'} curv(h_ext)`.
pub fn section_from_bounding(
    bundle: &TrivialBundle,
    h: &Character,
    cone: &Arc<Cone>,
    over_a: &TrivialBundle,
    j: &Arc<SimplicialMap>,
    h_ext: &Character,
) -> Result<Character> {
    let x = bundle.base().as_abs()?;
    let a = over_a.base().as_abs()?;
    if !x.same_as(cone.x()) || !a.same_as(cone.a()) {
        return Err(RelError::SpaceMismatch("bundles do not sit over the map".into()));
    }
    if !j.source().same_as(bundle.fiber()) || !j.target().same_as(over_a.fiber()) {
        return Err(RelError::InvalidMap("fiber inclusion does not match the bundles".into()));
    }
    if over_a.fiber_dim() != bundle.fiber_dim() + 1 || j.pushforward(bundle.fiber_dim(), bundle.fundamental_chain()) != over_a.boundary_chain() {
        return Err(RelError::InvalidWitness("bounding fiber chain does not have boundary j_* z_F".into()));
    }
    let e = bundle.total().as_abs()?;
    let e_a = product_space(a, bundle.fiber());
    let id_f = SimplicialMap::identity(bundle.fiber());
    let id_a = SimplicialMap::identity(a);
    let big_phi = product_map(cone.phi(), &id_f, &e_a, e)?;
    let restrict = product_map(&id_a, j, &e_a, over_a.total().as_abs()?)?;
    if !pullback(&restrict, h_ext)?.equals(&pullback(&big_phi, h)?)? {
        return Err(RelError::InvalidWitness("extension does not restrict to the pulled-back character".into()));
    }
    let k = h.degree();
    let mut cov = over_a.fint(k, h_ext.curvature())?;
    if (k + over_a.fiber_dim()) % 2 == 1 {
        cov = vec_neg(&cov);
    }
    let integrated = bundle.integrate(h)?;
    section_with_cov(&integrated, cone, &cov)?.ok_or_else(|| RelError::Precondition("integrated character has no section with the prescribed covariant derivative".into()))
}

/// `ι(θ)` on the base of a bundle, for comparison with boundary integrals.
pub fn base_iota(bundle: &TrivialBundle, k: usize, theta: &[Rat]) -> Result<Character> {
    iota(bundle.base(), k, theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{breve_i, breve_p};
    use crate::fixtures;
    use crate::kunneth::{star, ConeProduct};
    use crate::linalg::{rat, vec_add};
    use crate::simplicial::integrate;

    fn sample(space: &Space, k: usize, seed: i64) -> Character {
        let ch = space.chain();
        let lift: Vec<Rat> = (0..ch.dim(k as isize - 1)).map(|i| rat((i as i64 * 5 + seed) % 7 - 3, 2 + (i as i64 + seed).rem_euclid(3))).collect();
        let mut c = vec![Int::zero(); ch.dim(k as isize)];
        for (t, g) in ch.cohomology(k as isize).generators.iter().enumerate() {
            for (ci, gi) in c.iter_mut().zip(g) {
                *ci += gi * Int::from(seed + t as i64 + 1);
            }
        }
        let curv = vec_add(&ch.coboundary(k as isize - 1, &lift), &to_rat_vec(&c));
        Character::new(space.clone(), k, c, lift, curv).unwrap()
    }

    fn s1_bundle(base: Space) -> TrivialBundle {
        let s1 = fixtures::s1();
        let z = fixtures::s1_cycle(&s1);
        TrivialBundle::closed(base, &s1, 1, z).unwrap()
    }

    #[test]
    fn point_fiber_is_identity() {
        let pt = fixtures::pt();
        let b = TrivialBundle::closed(Space::Abs(fixtures::s1()), &pt, 0, fixtures::pt_cycle(&pt)).unwrap();
        let h = sample(b.total(), 2, 1);
        let out = b.integrate(&h).unwrap();
        assert_eq!(out.lift(), h.lift());
        assert_eq!(out.curvature(), h.curvature());
    }

    #[test]
    fn transfer_chain_map_and_duality() {
        let cone = Cone::new(&fixtures::deg2());
        let b = s1_bundle(Space::Cone(cone.clone()));
        let ch = cone.chain();
        for n in 1..=2usize {
            for i in 0..ch.dim(n as isize) {
                let mut e = vec![Int::zero(); ch.dim(n as isize)];
                e[i] = Int::from(1);
                let lhs = b.total().chain().boundary(n as isize + 1, &b.transfer(n, &e).unwrap());
                let rhs = b.transfer(n - 1, &ch.boundary(n as isize, &e)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let u: Vec<Rat> = (0..b.total().dim(2)).map(|i| rat(i as i64 % 4 - 1, 3)).collect();
        let f = b.fint(2, &u).unwrap();
        for i in 0..ch.dim(1) {
            let mut e = vec![Int::zero(); ch.dim(1)];
            e[i] = Int::from(1);
            assert_eq!(f[i], integrate(&u, &b.transfer(1, &e).unwrap()));
        }
        // δ ∘ fint = fint ∘ δ for a closed fiber.
        let du = b.total().chain().coboundary(2, &u);
        assert_eq!(ch.coboundary(1, &f), b.fint(3, &du).unwrap());
    }

    #[test]
    fn transfer_commutes_with_i_and_p() {
        let cone = Cone::new(&fixtures::deg2());
        let b = s1_bundle(Space::Cone(cone.clone()));
        let cp = b.cone_product().unwrap();
        let x = s1_bundle(Space::Abs(cone.x().clone()));
        let a = s1_bundle(Space::Abs(cone.a().clone()));
        let z = fixtures::s1_cycle(cone.x());
        assert_eq!(b.transfer(1, &cone.i_chain(1, &z)).unwrap(), cp.product.i_chain(2, &x.transfer(1, &z).unwrap()));
        let c: Vec<Int> = (0..cone.chain().dim(2)).map(|i| Int::from(i as i64 % 3 - 1)).collect();
        assert_eq!(cp.product.p_chain(3, &b.transfer(2, &c).unwrap()), a.transfer(1, &cone.p_chain(2, &c)).unwrap());
    }

    #[test]
    fn integrated_character_diagrams() {
        let cone = Cone::new(&fixtures::deg2());
        let b = s1_bundle(Space::Cone(cone.clone()));
        let h = sample(b.total(), 3, 2);
        let out = b.integrate(&h).unwrap();
        assert_eq!(out.curvature(), b.fint(3, h.curvature()).unwrap().as_slice());
        let theta: Vec<Rat> = (0..b.total().dim(2)).map(|i| rat(i as i64 % 5 - 2, 7)).collect();
        let lhs = b.integrate(&iota(b.total(), 3, &theta).unwrap()).unwrap();
        assert!(lhs.equals(&iota(b.base(), 2, &b.fint(2, &theta).unwrap()).unwrap()).unwrap());
        let a_bundle = s1_bundle(Space::Abs(cone.a().clone()));
        let x_bundle = s1_bundle(Space::Abs(cone.x().clone()));
        let g = sample(a_bundle.total(), 2, 1);
        let cp = b.cone_product().unwrap();
        let lhs = b.integrate(&breve_i(&g, &cp.product).unwrap()).unwrap();
        assert!(lhs.equals(&breve_i(&a_bundle.integrate(&g).unwrap(), &cone).unwrap()).unwrap());
        let lhs = breve_p(&b.integrate(&h).unwrap()).unwrap();
        assert!(lhs.equals(&x_bundle.integrate(&breve_p(&h).unwrap()).unwrap()).unwrap());
    }

    #[test]
    fn naturality_under_map_of_maps() {
        let source = Cone::new(&fixtures::deg2());
        let target = Cone::new(&fixtures::id_s1());
        let bs = s1_bundle(Space::Cone(source.clone()));
        let bt = s1_bundle(Space::Cone(target.clone()));
        let (ff, gg) = bundle_map(&fixtures::id_s1(), &fixtures::deg2(), &bs, &bt).unwrap();
        let h = sample(bt.total(), 3, 4);
        let lhs = bs.integrate(&pullback_pair(&ff, &gg, &bs.cone_product().unwrap().product, &h).unwrap()).unwrap();
        let rhs = pullback_pair(&fixtures::id_s1(), &fixtures::deg2(), &source, &bt.integrate(&h).unwrap()).unwrap();
        assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn up_down_formula() {
        let cone = Cone::new(&fixtures::deg2());
        let b = s1_bundle(Space::Cone(cone.clone()));
        let e = s1_bundle(Space::Abs(cone.x().clone()));
        let h = sample(&Space::Cone(cone.clone()), 2, 3);
        for k2 in 2..=3 {
            let h2 = sample(e.total(), k2, 5);
            let lhs = b.integrate(&star(&b.pull_up(&h).unwrap(), &h2).unwrap()).unwrap();
            let rhs = star(&h, &e.integrate(&h2).unwrap()).unwrap();
            assert!(lhs.equals(&rhs).unwrap(), "k' = {k2}");
        }
    }

    #[test]
    fn transfer_correction_identity() {
        let disk = SimplicialSet::from_facets("D2", &[vec![0, 1, 2]]).unwrap();
        let z = disk.chain_from(1, &[("e01", 1), ("e12", 1), ("e02", -1)]).unwrap();
        let cone = Cone::new(&fixtures::deg2());
        let b = TrivialBundle::closed(Space::Cone(cone), &disk, 1, z).unwrap();
        let w = disk.chain_from(2, &[("t012", 1)]).unwrap();
        let shifted = b.shifted(&w).unwrap();
        let h = sample(b.total(), 3, 1);
        let corr = b.transfer_correction(&h, &w).unwrap();
        let lhs = shifted.integrate(&h).unwrap();
        let rhs = b.integrate(&h).unwrap().add(&iota(b.base(), 2, &corr).unwrap()).unwrap();
        assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn stokes_and_boundary_integration() {
        let int = fixtures::int();
        let cone = Cone::new(&fixtures::deg2());
        let b = TrivialBundle::new(Space::Cone(cone.clone()), &int, 1, fixtures::int_chain(&int)).unwrap();
        assert!(!b.is_closed());
        for k in 1..=2usize {
            let u: Vec<Rat> = (0..b.total().dim(k as isize)).map(|i| rat((i as i64 * 3) % 7 - 3, 5)).collect();
            let lhs = cone.chain().coboundary(k as isize - 1, &b.fint(k, &u).unwrap());
            let du = b.total().chain().coboundary(k as isize, &u);
            let mut bnd = b.fint_boundary(k, &u).unwrap();
            if (k + 1) % 2 == 1 {
                bnd = vec_neg(&bnd);
            }
            assert_eq!(lhs, vec_add(&b.fint(k + 1, &du).unwrap(), &bnd));
        }
        let h = sample(b.total(), 2, 3);
        let (out, theta) = b.integrate_boundary(&h).unwrap();
        assert!(out.equals(&base_iota(&b, 2, &theta).unwrap()).unwrap());
    }

    #[test]
    fn lambda_and_cross_fiber_signs() {
        // φ = DEG2, F = S1, X' = S1, F' = PT.
        let phi = fixtures::deg2();
        let cone = Cone::new(&phi);
        let b = s1_bundle(Space::Cone(cone.clone()));
        let s1 = fixtures::s1();
        let pt = fixtures::pt();
        let b2 = TrivialBundle::closed(Space::Abs(s1.clone()), &pt, 0, fixtures::pt_cycle(&pt)).unwrap();
        let cp_total = ConeProduct::new(&b.cone_product().unwrap().product, b2.total().as_abs().unwrap()).unwrap();
        let cp_base = ConeProduct::new(&cone, &s1).unwrap();
        let ff = product_space(&fixtures::s1(), &pt);
        let big = TrivialBundle::closed(Space::Cone(cp_base.product.clone()), &ff, 1, ez_chains(&ff, 1, &fixtures::s1_cycle(&s1), 0, &fixtures::pt_cycle(&pt)).unwrap()).unwrap();
        let big_cp = big.cone_product().unwrap();
        // Middle swap (X×X')×(F×F') -> (X×F)×(X'×F'), on X and on A.
        let swap = |src: &Arc<SimplicialSet>, dst: &Arc<SimplicialSet>| -> Arc<SimplicialMap> {
            let p1 = projection(src, true).unwrap();
            let p2 = projection(src, false).unwrap();
            let si = src.product_info().unwrap();
            let di = dst.product_info().unwrap();
            let x = SimplicialMap::compose(&projection(&si.left, true).unwrap(), &p1).unwrap();
            let xp = SimplicialMap::compose(&projection(&si.left, false).unwrap(), &p1).unwrap();
            let f = SimplicialMap::compose(&projection(&si.right, true).unwrap(), &p2).unwrap();
            let fp = SimplicialMap::compose(&projection(&si.right, false).unwrap(), &p2).unwrap();
            let l = crate::simplicial::pair_map(&x, &f, &di.left).unwrap();
            let r = crate::simplicial::pair_map(&xp, &fp, &di.right).unwrap();
            crate::simplicial::pair_map(&l, &r, dst).unwrap()
        };
        let sx = swap(&big_cp.xy, &cp_total.xy);
        let sa = swap(&big_cp.ay, &cp_total.ay);
        // λ_φ(s,t) × λ'(z') = (-1)^{k'·dim F} λ_{φ×id}((s,t) × z'), k' = 1.
        let zc = cone.cycles_basis(1).all();
        let zp = fixtures::s1_cycle(&s1);
        for c in &zc {
            let lam = b.transfer(1, c).unwrap();
            let lam2 = b2.transfer(1, &zp).unwrap();
            let lhs = cp_total.cone_ez(2, &lam, 1, &lam2).unwrap();
            let rhs = big.transfer(2, &cp_base.cone_ez(1, c, 1, &zp).unwrap()).unwrap();
            let (bx, ba) = big_cp.product.split(3, &rhs);
            let pushed = cp_total.product.join(3, &sx.pushforward(3, &bx), &sa.pushforward(2, &ba)).unwrap();
            assert_eq!(pushed, lhs.iter().map(|v| -v).collect::<Vec<_>>());
        }
        // π̂_!h × π̂'_!h' = (-1)^{(k'-dim F')·dim F} (π×π')_!(h×h').
        let h = sample(b.total(), 3, 2);
        let h2 = sample(b2.total(), 1, 1);
        let lhs = crate::kunneth::cross_char(&b.integrate(&h).unwrap(), &b2.integrate(&h2).unwrap(), &cp_base).unwrap();
        let prod = crate::kunneth::cross_char(&h, &h2, &cp_total).unwrap();
        let pulled = pullback_pair(&sx, &sa, &big_cp.product, &prod).unwrap();
        let rhs = big.integrate(&pulled).unwrap();
        assert!(lhs.equals(&rhs.neg()).unwrap());
    }

    #[test]
    fn section_from_two_point_boundary() {
        let s1 = fixtures::s1();
        let s0 = fixtures::two_points();
        let int = fixtures::int();
        let j = fixtures::boundary_of_int();
        let z_s0: Vec<Int> = {
            let target = fixtures::int_chain(&int);
            let bd = int.boundary(1, &target).unwrap();
            // Pull the endpoint chain back through the injective inclusion.
            let mut z = vec![Int::zero(); s0.count(0)];
            for (i, img) in j.images()[0].iter().enumerate() {
                z[i] = bd[img.cell.idx].clone();
            }
            z
        };
        for phi in [fixtures::id_s1(), fixtures::deg2()] {
            let cone = Cone::new(&phi);
            let bundle = TrivialBundle::closed(Space::Abs(s1.clone()), &s0, 0, z_s0.clone()).unwrap();
            let over_a = TrivialBundle::new(Space::Abs(cone.a().clone()), &int, 1, fixtures::int_chain(&int)).unwrap();
            let s1_int = product_space(&s1, &int);
            let g = sample(&Space::Abs(s1_int.clone()), 2, 3);
            let restrict = product_map(&fixtures::id_s1(), &j, bundle.total().as_abs().unwrap(), &s1_int).unwrap();
            let h = pullback(&restrict, &g).unwrap();
            let id_int = SimplicialMap::identity(&int);
            let up = product_map(&phi, &id_int, over_a.total().as_abs().unwrap(), &s1_int).unwrap();
            let h_ext = pullback(&up, &g).unwrap();
            let sec = section_from_bounding(&bundle, &h, &cone, &over_a, &j, &h_ext).unwrap();
            assert!(breve_p(&sec).unwrap().equals(&bundle.integrate(&h).unwrap()).unwrap());
            let mut cov = over_a.fint(2, h_ext.curvature()).unwrap();
            cov = vec_neg(&cov);
            assert_eq!(sec.covariant_derivative().unwrap(), cov);
        }
    }
}
