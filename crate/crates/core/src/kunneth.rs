//! Products of characters and the cycle-level Künneth splitting for a mapping
//! cone times a space.
//!
//! For `φ: A -> X` and a space `Y`, the cone of `φ × id_Y` has chains
//! `C(X×Y) ⊕ C(A×Y)`. EZ and AW act on the two blocks separately.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::characters::Character;
use crate::cone::{Cone, Space};
use crate::error::{RelError, Result};
use crate::linalg::{frac, smith_normal_form, to_int_vec, to_rat, to_rat_vec, vec_add, Int, Rat, Snf};
use crate::simplicial::{aw, cross_cochain, cup, ez, integrate, product_map, product_space, Cell, SimplicialMap, SimplicialSet, Tensor};

/// Basis element of a cone chain group: `(degree, index)`.
pub type ConeCell = (usize, usize);

/// Formal sum of `cone basis ⊗ Y basis`.
pub type ConeTensor = BTreeMap<(ConeCell, Cell), Int>;

fn ct_add(t: &mut ConeTensor, key: (ConeCell, Cell), v: Int) {
    let e = t.entry(key).or_default();
    *e += v;
    if e.is_zero() {
        t.remove(&key);
    }
}

/// The cone of `φ × id_Y` together with its two product spaces.
#[derive(Debug, Clone)]
pub struct ConeProduct {
    pub base: Arc<Cone>,
    pub other: Arc<SimplicialSet>,
    pub xy: Arc<SimplicialSet>,
    pub ay: Arc<SimplicialSet>,
    pub product: Arc<Cone>,
}

impl ConeProduct {
    pub fn new(base: &Arc<Cone>, other: &Arc<SimplicialSet>) -> Result<Self> {
        let xy = product_space(base.x(), other);
        let ay = product_space(base.a(), other);
        let id = SimplicialMap::identity(other);
        let map = product_map(base.phi(), &id, &ay, &xy)?;
        let product = Cone::new(&map);
        Ok(ConeProduct { base: base.clone(), other: other.clone(), xy, ay, product })
    }

    pub fn space(&self) -> Space {
        Space::Cone(self.product.clone())
    }

    /// `EZ((s, t) ⊗ y) = (ez(s ⊗ y), ez(t ⊗ y))` for a cone chain of degree p.
    pub fn cone_ez(&self, p: usize, c: &[Int], q: usize, y: &[Int]) -> Result<Vec<Int>> {
        let (s, t) = self.base.split(p, c);
        let n = p + q;
        let xs = ez(&self.xy, &crate::simplicial::tensor_of(p, &s, q, y), n)?;
        let at = if p == 0 { vec![Int::zero(); self.product.a_dim(n)] } else { ez(&self.ay, &crate::simplicial::tensor_of(p - 1, &t, q, y), n - 1)? };
        self.product.join(n, &xs, &at)
    }

    /// EZ of a cone tensor of total degree n.
    pub fn cone_ez_tensor(&self, n: usize, t: &ConeTensor) -> Result<Vec<Int>> {
        let mut out = vec![Int::zero(); self.product.chain().dim(n as isize)];
        for (((p, idx), y), v) in t {
            let mut c = vec![Int::zero(); self.base.chain().dim(*p as isize)];
            c[*idx] = v.clone();
            let mut yv = vec![Int::zero(); self.other.count(y.dim)];
            yv[y.idx] = Int::one();
            let e = self.cone_ez(*p, &c, y.dim, &yv)?;
            for (o, x) in out.iter_mut().zip(e) {
                *o += x;
            }
        }
        Ok(out)
    }

    /// `AW(u, w) = aw(u) + aw(w)` with the A-factors placed in cone degree
    /// one higher.
    pub fn cone_aw(&self, n: usize, c: &[Int]) -> Result<ConeTensor> {
        let (u, w) = self.product.split(n, c);
        let mut out = ConeTensor::new();
        for ((a, b), v) in aw(&self.xy, n, &u)? {
            ct_add(&mut out, ((a.dim, a.idx), b), v);
        }
        if n > 0 {
            for ((a, b), v) in aw(&self.ay, n - 1, &w)? {
                let p = a.dim + 1;
                ct_add(&mut out, ((p, self.base.x_dim(p) + a.idx), b), v);
            }
        }
        Ok(out)
    }

    /// `(μ, ν) × σ = (μ × σ, ν × σ)`.
    pub fn cross_cochain(&self, p: usize, u: &[Rat], q: usize, v: &[Rat]) -> Result<Vec<Rat>> {
        let (mu, nu) = self.base.split(p, u);
        let n = p + q;
        let x = cross_cochain(&self.xy, p, &mu, q, v)?;
        let a = if p == 0 { Vec::new() } else { cross_cochain(&self.ay, p - 1, &nu, q, v)? };
        self.product.join(n, &x, &a)
    }

    /// Boundary of a cone tensor: `∂(c ⊗ y) = ∂c ⊗ y + (-1)^|c| c ⊗ ∂y`.
    pub fn tensor_boundary(&self, t: &ConeTensor) -> ConeTensor {
        let mut out = ConeTensor::new();
        for (((p, idx), y), v) in t {
            if *p > 0 {
                let col = self.base.chain().bd(*p as isize).column(*idx);
                for (i, x) in col.iter().enumerate() {
                    if !x.is_zero() {
                        ct_add(&mut out, ((p - 1, i), *y), x * v);
                    }
                }
            }
            if y.dim > 0 {
                for (i, f) in self.other.cell_faces(*y).iter().enumerate() {
                    if f.is_nondegenerate() {
                        let s = if (p + i) % 2 == 0 { v.clone() } else { -v.clone() };
                        ct_add(&mut out, ((*p, *idx), f.cell), s);
                    }
                }
            }
        }
        out
    }
}

/// Cross product on triples: `c × c'`, `lift × c' + (-1)^k curv × lift'`,
/// `curv × curv'`, for any bilinear cochain product `mul`.
fn triple_product(
    space: Space,
    h: &Character,
    h2: &Character,
    mul: impl Fn(usize, &[Rat], usize, &[Rat]) -> Result<Vec<Rat>>,
) -> Result<Character> {
    let (k, k2) = (h.degree(), h2.degree());
    let c = mul(k, &to_rat_vec(h.cocycle()), k2, &to_rat_vec(h2.cocycle()))?;
    let mut lift = mul(k - 1, h.lift(), k2, &to_rat_vec(h2.cocycle()))?;
    let second = mul(k, h.curvature(), k2 - 1, h2.lift())?;
    if k % 2 == 0 {
        lift = vec_add(&lift, &second);
    } else {
        lift = crate::linalg::vec_sub(&lift, &second);
    }
    let curv = mul(k, h.curvature(), k2, h2.curvature())?;
    Character::new(space, k + k2, to_int_vec(&c), lift, curv)
}

/// `h × h'` for a cone character `h` on φ and an absolute `h'` on Y.
pub fn cross_char(h: &Character, h2: &Character, cp: &ConeProduct) -> Result<Character> {
    let cone = h.space().as_cone()?;
    let y = h2.space().as_abs()?;
    if !Space::Cone(cone.clone()).same_as(&Space::Cone(cp.base.clone())) {
        return Err(RelError::SpaceMismatch("character does not live on the base cone".into()));
    }
    if !y.same_as(&cp.other) {
        return Err(RelError::SpaceMismatch("second character does not live on the second factor".into()));
    }
    triple_product(cp.space(), h, h2, |p, u, q, v| cp.cross_cochain(p, u, q, v))
}

/// `h × h'` for absolute characters, living on `product`.
pub fn cross_abs(h: &Character, h2: &Character, product: &Arc<SimplicialSet>) -> Result<Character> {
    let x = h.space().as_abs()?;
    let y = h2.space().as_abs()?;
    let info = product.product_info().ok_or_else(|| RelError::SpaceMismatch("target is not a product".into()))?;
    if !info.left.same_as(x) || !info.right.same_as(y) {
        return Err(RelError::SpaceMismatch("product factors do not match".into()));
    }
    triple_product(Space::Abs(product.clone()), h, h2, |p, u, q, v| cross_cochain(product, p, u, q, v))
}

/// Internal product of absolute characters on one space.
pub fn abs_star(h: &Character, h2: &Character) -> Result<Character> {
    let x = h.space().as_abs()?;
    if !x.same_as(h2.space().as_abs()?) {
        return Err(RelError::SpaceMismatch("characters live on different spaces".into()));
    }
    triple_product(h.space().clone(), h, h2, |p, u, q, v| Ok(cup(x, p, u, q, v)))
}

/// `u ∪_φ w = (u_X ∪ w, u_A ∪ φ^* w)` for a cone cochain `u`.
pub fn cone_cup(cone: &Cone, p: usize, u: &[Rat], q: usize, w: &[Rat]) -> Result<Vec<Rat>> {
    let (ux, ua) = cone.split(p, u);
    let x = cup(cone.x(), p, &ux, q, w);
    let a = if p == 0 { Vec::new() } else { cup(cone.a(), p - 1, &ua, q, &cone.phi().pullback(q, w)) };
    cone.join(p + q, &x, &a)
}

/// Module action `h ∗ h'` of an absolute character on X on a cone character.
pub fn star(h: &Character, h2: &Character) -> Result<Character> {
    let cone = h.space().as_cone()?;
    let x = h2.space().as_abs()?;
    if !x.same_as(cone.x()) {
        return Err(RelError::SpaceMismatch("module factor must live on the target of the map".into()));
    }
    triple_product(h.space().clone(), h, h2, |p, u, q, v| cone_cup(cone, p, u, q, v))
}

/// Künneth data in one total degree.
#[derive(Debug, Clone)]
pub struct KunnethSplit {
    pub degree: usize,
    /// `(p, q)` blocks, each with bases of `Z_p(φ)` and `Z_q(Y)`.
    pub blocks: Vec<KunnethBlock>,
    /// Basis of `Z_n(φ × id)`.
    pub cycles: Vec<Vec<Int>>,
    /// For each basis cycle `z`: `(N, w)` with `N (z - K S z) = ∂w`.
    pub complement: Vec<(Int, Vec<Int>)>,
}

#[derive(Debug, Clone)]
pub struct KunnethBlock {
    pub p: usize,
    pub q: usize,
    pub left: Vec<Vec<Int>>,
    pub right: Vec<Vec<Int>>,
}

/// Coordinates of `S z` indexed by block, left basis, right basis.
pub type SplitCoords = BTreeMap<(usize, usize, usize), Int>;

impl KunnethSplit {
    pub fn build(cp: &ConeProduct, n: usize) -> Result<Self> {
        let mut blocks = Vec::new();
        for p in 0..=n {
            let q = n - p;
            let left = cp.base.chain().cycle_basis(p as isize);
            let right = cp.other.chain().cycle_basis(q as isize);
            if !left.is_empty() && !right.is_empty() {
                blocks.push(KunnethBlock { p, q, left, right });
            }
        }
        let cycles = cp.product.chain().cycle_basis(n as isize);
        let mut split = KunnethSplit { degree: n, blocks, cycles, complement: Vec::new() };
        let next = cp.product.chain().bd(n as isize + 1);
        let snf_next = smith_normal_form(next);
        let mut complement = Vec::new();
        for z in &split.cycles {
            let ksz = split.k_map(cp, &split.s_map(cp, z)?)?;
            let rem: Vec<Rat> = z.iter().zip(&ksz).map(|(a, b)| to_rat(&(a - b))).collect();
            let w = snf_next
                .solve_rat(&rem)
                .ok_or_else(|| RelError::InvalidWitness("Künneth complement is not a rational boundary".into()))?;
            let mut den = Int::one();
            for x in &w {
                den = den.lcm(x.denom());
            }
            let wi = to_int_vec(&w.iter().map(|x| x * Rat::from_integer(den.clone())).collect::<Vec<_>>());
            complement.push((den, wi));
        }
        split.complement = complement;
        Ok(split)
    }

    fn retraction(snf: &Snf, x: &[Int]) -> Vec<Int> {
        snf.kernel_coords(x)
    }

    /// `S = (s_φ ⊗ s_Y) ∘ AW` in cycle coordinates.
    pub fn s_map(&self, cp: &ConeProduct, z: &[Int]) -> Result<SplitCoords> {
        let t = cp.cone_aw(self.degree, z)?;
        let mut out = SplitCoords::new();
        for (bi, b) in self.blocks.iter().enumerate() {
            let snf_l = cp.base.chain().snf(b.p as isize);
            let snf_r = cp.other.chain().snf(b.q as isize);
            // Collect the tensor entries of this bidegree as a matrix.
            let mut by_left: BTreeMap<usize, Vec<(usize, Int)>> = BTreeMap::new();
            for (((p, idx), y), v) in &t {
                if *p == b.p && y.dim == b.q {
                    by_left.entry(*idx).or_default().push((y.idx, v.clone()));
                }
            }
            let ldim = cp.base.chain().dim(b.p as isize);
            let rdim = cp.other.count(b.q);
            for (idx, ys) in by_left {
                let mut e = vec![Int::zero(); ldim];
                e[idx] = Int::one();
                let lc = Self::retraction(snf_l, &e);
                let mut yv = vec![Int::zero(); rdim];
                for (j, v) in ys {
                    yv[j] += v;
                }
                let rc = Self::retraction(snf_r, &yv);
                for (i, a) in lc.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, c) in rc.iter().enumerate() {
                        if !c.is_zero() {
                            let e = out.entry((bi, i, j)).or_default();
                            *e += a * c;
                        }
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// `K = EZ` on cycle coordinates.
    pub fn k_map(&self, cp: &ConeProduct, coords: &SplitCoords) -> Result<Vec<Int>> {
        let mut out = vec![Int::zero(); cp.product.chain().dim(self.degree as isize)];
        for ((bi, i, j), v) in coords {
            let b = &self.blocks[*bi];
            let e = cp.cone_ez(b.p, &b.left[*i], b.q, &b.right[*j])?;
            for (o, x) in out.iter_mut().zip(e) {
                *o += x * v;
            }
        }
        Ok(out)
    }

    /// Checks `S K = id` on every basis tensor.
    pub fn check_sk(&self, cp: &ConeProduct) -> Result<bool> {
        for (bi, b) in self.blocks.iter().enumerate() {
            for i in 0..b.left.len() {
                for j in 0..b.right.len() {
                    let mut e = SplitCoords::new();
                    e.insert((bi, i, j), Int::one());
                    if self.s_map(cp, &self.k_map(cp, &e)?)? != e {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Checks `N (z - K S z) = ∂w` for every stored witness.
    pub fn check_complement(&self, cp: &ConeProduct) -> Result<bool> {
        for (z, (n, w)) in self.cycles.iter().zip(&self.complement) {
            let ksz = self.k_map(cp, &self.s_map(cp, z)?)?;
            let lhs: Vec<Int> = z.iter().zip(&ksz).map(|(a, b)| (a - b) * n).collect();
            if cp.product.chain().boundary(self.degree as isize + 1, w) != lhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Value of `h × h'` on the basis cycle `index` of the split, computed from
/// the factor characters only: degree-split terms plus the torsion
/// remainder through its witness.
pub fn cross_formula_eval(h: &Character, h2: &Character, cp: &ConeProduct, split: &KunnethSplit, index: usize) -> Result<Rat> {
    let (k, k2) = (h.degree(), h2.degree());
    if split.degree + 1 != k + k2 {
        return Err(RelError::DegreeOutOfRange("split degree does not match the characters".into()));
    }
    let z = &split.cycles[index];
    let mut total = Rat::zero();
    for ((bi, i, j), v) in split.s_map(cp, z)? {
        let b = &split.blocks[bi];
        let (x, y) = (&b.left[i], &b.right[j]);
        let term = if b.p + 1 == k && b.q == k2 {
            h.evaluate(x)? * to_rat(&crate::linalg::dot(h2.cocycle(), y))
        } else if b.p == k && b.q + 1 == k2 {
            let per = integrate(h.curvature(), x);
            let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
            sign * per * h2.evaluate(y)?
        } else {
            Rat::zero()
        };
        total += term * to_rat(&v);
    }
    let (n, w) = &split.complement[index];
    if !w.iter().all(|x| x.is_zero()) {
        let curv = cp.cross_cochain(k, h.curvature(), k2, h2.curvature())?;
        let c = cp.cross_cochain(k, &to_rat_vec(h.cocycle()), k2, &to_rat_vec(h2.cocycle()))?;
        total += (integrate(&curv, w) - integrate(&c, w)) / to_rat(n);
    }
    Ok(frac(&total))
}

/// Tensor of two absolute chains as a [`Tensor`], re-exported for callers
/// building product cycles.
pub fn product_cycle(product: &SimplicialSet, p: usize, a: &[Int], q: usize, b: &[Int]) -> Result<Vec<Int>> {
    let t: Tensor = crate::simplicial::tensor_of(p, a, q, b);
    ez(product, &t, p + q)
}

/// The reassociation `(X×Y)×Z -> X×(Y×Z)`, given both products.
pub fn reassociate(left: &Arc<SimplicialSet>, right: &Arc<SimplicialSet>) -> Result<Arc<SimplicialMap>> {
    let inner_l = left.product_info().ok_or_else(|| RelError::SpaceMismatch("left side is not a product".into()))?.left.clone();
    let inner_r = right.product_info().ok_or_else(|| RelError::SpaceMismatch("right side is not a product".into()))?.right.clone();
    let p1 = crate::simplicial::projection(left, true)?;
    let p2 = crate::simplicial::projection(left, false)?;
    let x = SimplicialMap::compose(&crate::simplicial::projection(&inner_l, true)?, &p1)?;
    let y = SimplicialMap::compose(&crate::simplicial::projection(&inner_l, false)?, &p1)?;
    let yz = crate::simplicial::pair_map(&y, &p2, &inner_r)?;
    crate::simplicial::pair_map(&x, &yz, right)
}

/// `((f, g) × f')`: the map of maps `(f×f', g×f')` between product cones.
pub fn cross_map_of_maps(
    f: &Arc<SimplicialMap>,
    g: &Arc<SimplicialMap>,
    f2: &Arc<SimplicialMap>,
    source: &ConeProduct,
    target: &ConeProduct,
) -> Result<(Arc<SimplicialMap>, Arc<SimplicialMap>)> {
    Ok((product_map(f, f2, &source.xy, &target.xy)?, product_map(g, f2, &source.ay, &target.ay)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{breve_i, breve_p, iota, j, pullback, pullback_pair};
    use crate::fixtures;
    use crate::linalg::{int, rat};

    fn sample_abs(x: &Arc<SimplicialSet>, k: usize, seed: i64) -> Character {
        let sp = Space::Abs(x.clone());
        let ch = x.chain();
        let lift: Vec<Rat> = (0..ch.dim(k as isize - 1)).map(|i| rat((i as i64 * 7 + seed) % 5 - 2, 3 + (i as i64 % 2))).collect();
        let gens = &ch.cohomology(k as isize).generators;
        let mut c = vec![Int::zero(); ch.dim(k as isize)];
        for (t, g) in gens.iter().enumerate() {
            for (ci, gi) in c.iter_mut().zip(g) {
                *ci += gi * Int::from(seed + t as i64);
            }
        }
        let curv = vec_add(&ch.coboundary(k as isize - 1, &lift), &to_rat_vec(&c));
        Character::new(sp, k, c, lift, curv).unwrap()
    }

    fn sample_cone(cone: &Arc<Cone>, k: usize, seed: i64) -> Character {
        let sp = Space::Cone(cone.clone());
        let ch = cone.chain();
        let lift: Vec<Rat> = (0..ch.dim(k as isize - 1)).map(|i| rat((i as i64 * 3 + seed) % 7 - 3, 2 + (i as i64 % 3))).collect();
        let coh = ch.cohomology(k as isize);
        let mut c = vec![Int::zero(); ch.dim(k as isize)];
        for (t, g) in coh.generators.iter().enumerate() {
            for (ci, gi) in c.iter_mut().zip(g) {
                *ci += gi * Int::from(seed + t as i64 + 1);
            }
        }
        let curv = vec_add(&ch.coboundary(k as isize - 1, &lift), &to_rat_vec(&c));
        Character::new(sp, k, c, lift, curv).unwrap()
    }

    #[test]
    fn cone_ez_aw_roundtrip_and_chain_map() {
        let cone = Cone::new(&fixtures::deg2());
        let cp = ConeProduct::new(&cone, &fixtures::s1()).unwrap();
        for p in 0..=2usize {
            for q in 0..=1usize {
                for i in 0..cone.chain().dim(p as isize) {
                    for jj in 0..cp.other.count(q) {
                        let mut t = ConeTensor::new();
                        t.insert(((p, i), Cell { dim: q, idx: jj }), Int::one());
                        let c = cp.cone_ez_tensor(p + q, &t).unwrap();
                        assert_eq!(cp.cone_aw(p + q, &c).unwrap(), t);
                        if p + q > 0 {
                            let lhs = cp.product.chain().boundary((p + q) as isize, &c);
                            let rhs = cp.cone_ez_tensor(p + q - 1, &cp.tensor_boundary(&t)).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kunneth_split_deg2_times_circle() {
        let cone = Cone::new(&fixtures::deg2());
        let cp = ConeProduct::new(&cone, &fixtures::s1()).unwrap();
        for n in 0..=2 {
            let split = KunnethSplit::build(&cp, n).unwrap();
            assert!(split.check_sk(&cp).unwrap());
            assert!(split.check_complement(&cp).unwrap());
            for (m, _) in &split.complement {
                assert!(m == &int(1) || m == &int(2), "order {m}");
            }
        }
    }

    #[test]
    fn cross_lift_identity_and_oracle() {
        let cone = Cone::new(&fixtures::deg2());
        let s1 = fixtures::s1();
        let cp = ConeProduct::new(&cone, &s1).unwrap();
        let split = KunnethSplit::build(&cp, 2).unwrap();
        for seed in 0..3 {
            let h = sample_cone(&cone, 2, seed);
            let h2 = sample_abs(&s1, 1, seed + 1);
            let x = cross_char(&h, &h2, &cp).unwrap();
            for idx in 0..split.cycles.len() {
                assert_eq!(x.evaluate(&split.cycles[idx]).unwrap(), cross_formula_eval(&h, &h2, &cp, &split, idx).unwrap());
            }
        }
    }

    #[test]
    fn module_identities() {
        let cone = Cone::new(&fixtures::deg2());
        let s1 = fixtures::s1();
        let h = sample_cone(&cone, 2, 1);
        let hp = sample_abs(&s1, 1, 2);
        let hpp = sample_abs(&s1, 1, 3);
        let l = star(&star(&h, &hp).unwrap(), &hpp).unwrap();
        let r = star(&h, &abs_star(&hp, &hpp).unwrap()).unwrap();
        assert!(l.equals(&r).unwrap());
        // ĭ(g) ∗ h' = ĭ(g ∗ φ^*h').
        let a = cone.a();
        let g = sample_abs(a, 1, 4);
        let lhs = star(&breve_i(&g, &cone).unwrap(), &hp).unwrap();
        let rhs = breve_i(&abs_star(&g, &pullback(cone.phi(), &hp).unwrap()).unwrap(), &cone).unwrap();
        assert!(lhs.equals(&rhs).unwrap());
        let lhs = breve_p(&star(&h, &hp).unwrap()).unwrap();
        let rhs = abs_star(&breve_p(&h).unwrap(), &hp).unwrap();
        assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn graded_commutativity_of_classes_on_torus() {
        // Cochain cup products only commute up to homotopy, so compare the
        // integral classes rather than the triples.
        let t = fixtures::torus();
        let a = sample_abs(&t, 1, 1);
        let b = sample_abs(&t, 1, 2);
        let ab = abs_star(&a, &b).unwrap();
        let ba = abs_star(&b, &a).unwrap();
        let sum: Vec<Int> = ab.cocycle().iter().zip(ba.cocycle()).map(|(x, y)| x + y).collect();
        assert!(t.chain().coboundary_preimage_int(2, &sum).is_some());
        assert!(!ab.is_topologically_trivial());
    }

    #[test]
    fn star_is_diagonal_pullback_of_cross() {
        let s1 = fixtures::s1();
        let t = fixtures::torus();
        let id = SimplicialMap::identity(&s1);
        let diag = crate::simplicial::pair_map(&id, &id, &t).unwrap();
        let a = sample_abs(&s1, 1, 3);
        let b = sample_abs(&s1, 1, 5);
        let lhs = pullback(&diag, &cross_abs(&a, &b, &t).unwrap()).unwrap();
        assert!(lhs.equals(&abs_star(&a, &b).unwrap()).unwrap());
    }

    #[test]
    fn flat_and_iota_products() {
        let cone = Cone::new(&fixtures::deg2());
        let s1 = fixtures::s1();
        let cp = ConeProduct::new(&cone, &s1).unwrap();
        let sp = Space::Cone(cone.clone());
        let theta: Vec<Rat> = (0..cone.chain().dim(1)).map(|i| rat(i as i64, 4)).collect();
        let h2 = sample_abs(&s1, 1, 2);
        let lhs = cross_char(&iota(&sp, 2, &theta).unwrap(), &h2, &cp).unwrap();
        let rhs = iota(&cp.space(), 3, &cp.cross_cochain(1, &theta, 1, h2.curvature()).unwrap()).unwrap();
        assert!(lhs.equals(&rhs).unwrap());
        let zero = Character::zero(Space::Abs(s1.clone()), 1).unwrap();
        let z = cross_char(&iota(&sp, 2, &theta).unwrap(), &zero, &cp).unwrap();
        assert!(z.equals(&Character::zero(cp.space(), 3).unwrap()).unwrap());
        let _ = j;
    }
    #[test]
    fn associativity_after_reassociation() {
        let cone = Cone::new(&fixtures::deg2());
        let s1 = fixtures::s1();
        let int = fixtures::int();
        let h = sample_cone(&cone, 2, 2);
        let h1 = sample_abs(&s1, 1, 1);
        let h2 = sample_abs(&int, 1, 3);
        let cp1 = ConeProduct::new(&cone, &s1).unwrap();
        let left = ConeProduct::new(&cp1.product, &int).unwrap();
        let l = cross_char(&cross_char(&h, &h1, &cp1).unwrap(), &h2, &left).unwrap();
        let yz = product_space(&s1, &int);
        let right = ConeProduct::new(&cone, &yz).unwrap();
        let r = cross_char(&h, &cross_abs(&h1, &h2, &yz).unwrap(), &right).unwrap();
        let f = reassociate(&left.product.x().clone(), &right.xy).unwrap();
        let g = reassociate(&left.product.a().clone(), &right.ay).unwrap();
        let pulled = pullback_pair(&f, &g, &left.product, &r).unwrap();
        assert!(pulled.equals(&l).unwrap());
    }

    #[test]
    fn naturality_of_cross() {
        let deg2 = fixtures::deg2();
        let id = fixtures::id_s1();
        let source = Cone::new(&deg2);
        let target = Cone::new(&id);
        let h = sample_cone(&target, 2, 1);
        let h2 = sample_abs(&fixtures::s1(), 1, 2);
        let s16 = fixtures::s1_6();
        let cps = ConeProduct::new(&source, &s16).unwrap();
        let cpt = ConeProduct::new(&target, &fixtures::s1()).unwrap();
        let (ff, gg) = cross_map_of_maps(&id, &deg2, &deg2, &cps, &cpt).unwrap();
        let lhs = pullback_pair(&ff, &gg, &cps.product, &cross_char(&h, &h2, &cpt).unwrap()).unwrap();
        let rhs = cross_char(&pullback_pair(&id, &deg2, &source, &h).unwrap(), &pullback(&deg2, &h2).unwrap(), &cps).unwrap();
        assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn branch_table_on_torus() {
        let s1 = fixtures::s1();
        let t = fixtures::torus();
        let z = fixtures::s1_cycle(&s1);
        let v = fixtures::pt_cycle(&s1);
        for k in 1..=2usize {
            for k2 in 1..=2usize {
                let h = sample_abs(&s1, k, 2);
                let h2 = sample_abs(&s1, k2, 3);
                let x = cross_abs(&h, &h2, &t).unwrap();
                for (p, a) in [(0usize, &v), (1, &z)] {
                    for (q, b) in [(0usize, &v), (1, &z)] {
                        if p + q + 1 != k + k2 {
                            continue;
                        }
                        let cyc = product_cycle(&t, p, a, q, b).unwrap();
                        let expected = if p + 1 == k && q == k2 {
                            frac(&(h.evaluate(a).unwrap() * to_rat(&crate::linalg::dot(h2.cocycle(), b))))
                        } else if p == k && q + 1 == k2 {
                            let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
                            frac(&(sign * integrate(h.curvature(), a) * h2.evaluate(b).unwrap()))
                        } else {
                            Rat::zero()
                        };
                        assert_eq!(x.evaluate(&cyc).unwrap(), expected, "k={k} k'={k2} p={p} q={q}");
                    }
                }
            }
        }
    }

    #[test]
    fn identity_cone_split() {
        let cone = Cone::new(&fixtures::id_s1());
        let cp = ConeProduct::new(&cone, &fixtures::s1()).unwrap();
        for n in 0..=3 {
            let split = KunnethSplit::build(&cp, n).unwrap();
            assert!(split.cycles.len() >= split.blocks.len());
            assert!(split.check_sk(&cp).unwrap());
            assert!(split.check_complement(&cp).unwrap());
        }
    }
}
