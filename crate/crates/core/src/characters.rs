//! Differential characters as triples `(c, lift, curv)` with
//! `δ lift = curv - c`, on absolute spaces, mapping cones and pairs.
//!
//! A triple determines the character `z -> lift(z) mod 1` on cycles. Two
//! triples give the same character when their curvatures agree and the
//! difference of lifts is an integral cochain plus a rational coboundary.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cone::{Cone, Quotient, Space};
use crate::error::{RelError, Result};
use crate::linalg::{frac, is_integral_vec, solve_mixed, to_int_vec, to_rat, to_rat_vec, vec_add, vec_neg, vec_sub, Int, IntMatrix, Rat};
use crate::simplicial::{integrate, SimplicialMap};

#[derive(Clone, Debug)]
pub struct Character {
    space: Space,
    k: usize,
    c: Vec<Int>,
    lift: Vec<Rat>,
    curv: Vec<Rat>,
}

impl Character {
    /// Validates and builds a character of degree `k`.
    pub fn new(space: Space, k: usize, c: Vec<Int>, lift: Vec<Rat>, curv: Vec<Rat>) -> Result<Self> {
        let min = if matches!(space, Space::Abs(_)) { 1 } else { 2 };
        if k < min {
            return Err(RelError::DegreeOutOfRange(format!("{} characters need degree at least {min}, got {k}", space.flavor())));
        }
        let ch = space.chain();
        let (ki, km1) = (k as isize, k as isize - 1);
        if c.len() != ch.dim(ki) || curv.len() != ch.dim(ki) || lift.len() != ch.dim(km1) {
            return Err(RelError::DimensionMismatch(format!("triple does not fit degree {k} on {}", space.describe())));
        }
        if ch.coboundary_int(ki, &c).iter().any(|v| !v.is_zero()) {
            return Err(RelError::InvalidCharacter("characteristic cocycle is not closed".into()));
        }
        let dl = ch.coboundary(km1, &lift);
        if dl != vec_sub(&curv, &to_rat_vec(&c)) {
            return Err(RelError::InvalidCharacter("coboundary of the lift differs from curvature minus cocycle".into()));
        }
        Ok(Character { space, k, c, lift, curv })
    }

    pub fn zero(space: Space, k: usize) -> Result<Self> {
        let ch = space.chain();
        let (n, m) = (ch.dim(k as isize), ch.dim(k as isize - 1));
        Self::new(space, k, vec![Int::zero(); n], vec![Rat::zero(); m], vec![Rat::zero(); n])
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn cocycle(&self) -> &[Int] {
        &self.c
    }

    pub fn lift(&self) -> &[Rat] {
        &self.lift
    }

    pub fn curvature(&self) -> &[Rat] {
        &self.curv
    }

    pub fn is_flat(&self) -> bool {
        self.curv.iter().all(|v| v.is_zero())
    }

    /// A-part of the curvature of a cone character.
    pub fn covariant_derivative(&self) -> Result<Vec<Rat>> {
        let cone = self.space.as_cone()?;
        Ok(cone.split(self.k, &self.curv).1)
    }

    /// Coordinates of the characteristic class in the integral cohomology
    /// presentation of the space.
    pub fn class_coords(&self) -> Vec<Int> {
        self.space.chain().cohomology(self.k as isize).coordinates(&self.c)
    }

    pub fn is_topologically_trivial(&self) -> bool {
        self.space.chain().coboundary_preimage_int(self.k as isize, &self.c).is_some()
    }

    /// Holonomy along a cycle of degree `k-1`, as a rational in `[0, 1)`.
    pub fn evaluate(&self, z: &[Int]) -> Result<Rat> {
        let n = self.k as isize - 1;
        if z.len() != self.lift.len() {
            return Err(RelError::DimensionMismatch("cycle has the wrong length".into()));
        }
        if !self.space.chain().is_cycle(n, z) {
            return Err(RelError::NotACycle(format!("evaluation in degree {n}")));
        }
        Ok(frac(&integrate(&self.lift, z)))
    }

    fn check_compatible(&self, other: &Character) -> Result<()> {
        if self.k != other.k || !self.space.same_as(&other.space) {
            return Err(RelError::FlavorMismatch(format!(
                "degree {} on {} versus degree {} on {}",
                self.k,
                self.space.describe(),
                other.k,
                other.space.describe()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        self.check_compatible(other)?;
        Ok(Character {
            space: self.space.clone(),
            k: self.k,
            c: vec_add(&self.c, &other.c),
            lift: vec_add(&self.lift, &other.lift),
            curv: vec_add(&self.curv, &other.curv),
        })
    }

    pub fn neg(&self) -> Character {
        Character { space: self.space.clone(), k: self.k, c: vec_neg(&self.c), lift: vec_neg(&self.lift), curv: vec_neg(&self.curv) }
    }

    pub fn sub(&self, other: &Character) -> Result<Character> {
        self.add(&other.neg())
    }

    pub fn scale(&self, m: i64) -> Character {
        let (mi, mq) = (Int::from(m), Rat::from_integer(Int::from(m)));
        Character {
            space: self.space.clone(),
            k: self.k,
            c: self.c.iter().map(|v| v * &mi).collect(),
            lift: self.lift.iter().map(|v| v * &mq).collect(),
            curv: self.curv.iter().map(|v| v * &mq).collect(),
        }
    }

    /// Equality in the character group.
    pub fn equals(&self, other: &Character) -> Result<bool> {
        Ok(self.equivalence_witness(other)?.is_some())
    }

    /// Rational `s` of degree `k-2` such that `lift - other.lift + δs` is
    /// integral, when the two triples define the same character.
    pub fn equivalence_witness(&self, other: &Character) -> Result<Option<Vec<Rat>>> {
        self.check_compatible(other)?;
        if self.curv != other.curv {
            return Ok(None);
        }
        let dl = vec_sub(&self.lift, &other.lift);
        Ok(self.space.chain().integralize_by_coboundary(self.k as isize - 1, &dl))
    }

    /// Replaces the triple by `(c + δb, lift - b - δs, curv)`, an
    /// equivalent representative.
    pub fn perturb(&self, b: &[Int], s: &[Rat]) -> Result<Character> {
        let ch = self.space.chain();
        let n = self.k as isize - 1;
        let c = vec_add(&self.c, &ch.coboundary_int(n, b));
        let lift = vec_sub(&vec_sub(&self.lift, &to_rat_vec(b)), &ch.coboundary(n - 1, s));
        Character::new(self.space.clone(), self.k, c, lift, self.curv.clone())
    }
}

/// Closed cochain with integral periods.
pub fn has_integral_periods(space: &Space, n: usize, omega: &[Rat]) -> bool {
    let ch = space.chain();
    omega.len() == ch.dim(n as isize)
        && ch.coboundary(n as isize, omega).iter().all(|v| v.is_zero())
        && ch.integralize_by_coboundary(n as isize, omega).is_some()
}

/// `ι(θ) = (0, θ, δθ)` for a form of degree `k-1`.
pub fn iota(space: &Space, k: usize, theta: &[Rat]) -> Result<Character> {
    let ch = space.chain();
    let dtheta = ch.coboundary(k as isize - 1, theta);
    Character::new(space.clone(), k, vec![Int::zero(); ch.dim(k as isize)], theta.to_vec(), dtheta)
}

/// `j(u) = (-δu, u, 0)` for a cochain `u` of degree `k-1` that is closed
/// modulo integers.
pub fn j(space: &Space, k: usize, u: &[Rat]) -> Result<Character> {
    let ch = space.chain();
    let du = ch.coboundary(k as isize - 1, u);
    if !is_integral_vec(&du) {
        return Err(RelError::InvalidCharacter("cochain is not closed modulo integers".into()));
    }
    let c = to_int_vec(&vec_neg(&du));
    Character::new(space.clone(), k, c, u.to_vec(), vec![Rat::zero(); ch.dim(k as isize)])
}

/// A mod-one cocycle `u` with `j(u) = h`, for flat `h`.
pub fn flat_class(h: &Character) -> Result<Vec<Rat>> {
    if !h.is_flat() {
        return Err(RelError::Precondition("character is not flat".into()));
    }
    Ok(h.lift.clone())
}

/// A character with the given curvature, which must be closed with
/// integral periods.
pub fn with_curvature(space: &Space, k: usize, omega: &[Rat]) -> Result<Character> {
    let ch = space.chain();
    if ch.coboundary(k as isize, omega).iter().any(|v| !v.is_zero()) {
        return Err(RelError::Precondition("curvature is not closed".into()));
    }
    let s = ch
        .integralize_by_coboundary(k as isize, omega)
        .ok_or_else(|| RelError::Precondition("curvature has non-integral periods".into()))?;
    let c = to_int_vec(&vec_add(omega, &ch.coboundary(k as isize - 1, &s)));
    Character::new(space.clone(), k, c, vec_neg(&s), omega.to_vec())
}

/// A character with curvature `omega` and characteristic cocycle `c`,
/// provided `omega - c` is a rational coboundary.
pub fn with_curvature_and_class(space: &Space, k: usize, omega: &[Rat], c: &[Int]) -> Result<Character> {
    let ch = space.chain();
    let diff = vec_sub(omega, &to_rat_vec(c));
    let lift = ch
        .coboundary_preimage_rat(k as isize, &diff)
        .ok_or_else(|| RelError::Precondition("de Rham class of the curvature differs from the real class".into()))?;
    Character::new(space.clone(), k, c.to_vec(), lift, omega.to_vec())
}

pub enum Trivialization {
    Form(Vec<Rat>),
    /// Nonzero class coordinates of the characteristic class.
    Obstructed(Vec<Int>),
}

/// A form `θ` with `ι(θ) = h`, or the class obstructing it.
pub fn topological_trivialization(h: &Character) -> Trivialization {
    match h.space.chain().coboundary_preimage_int(h.k as isize, &h.c) {
        Some(b) => Trivialization::Form(vec_add(&h.lift, &to_rat_vec(&b))),
        None => Trivialization::Obstructed(h.class_coords()),
    }
}

/// Evaluation on a torsion cycle through a bounding chain: `N z = ∂w`.
pub fn eval_torsion(h: &Character, z: &[Int], n: &Int, w: &[Int]) -> Result<Rat> {
    let ch = h.space.chain();
    let k = h.k as isize;
    if n.is_zero() || w.len() != ch.dim(k) || z.len() != ch.dim(k - 1) {
        return Err(RelError::InvalidWitness("witness has the wrong shape".into()));
    }
    let nz: Vec<Int> = z.iter().map(|v| v * n).collect();
    if ch.boundary(k, w) != nz {
        return Err(RelError::InvalidWitness("boundary of the witness is not N times the cycle".into()));
    }
    let val = integrate(&h.curv, w) - integrate(&to_rat_vec(&h.c), w);
    Ok(frac(&(val / to_rat(n))))
}

/// `ĭ(h) = ((0,-c), (0,lift), (0,-curv))` from degree `k` on A to degree
/// `k+1` on the cone.
pub fn breve_i(h: &Character, cone: &Arc<Cone>) -> Result<Character> {
    let a = h.space.as_abs()?;
    if !a.same_as(cone.a()) {
        return Err(RelError::SpaceMismatch("character does not live on the source of the map".into()));
    }
    let k = h.k + 1;
    let c = cone.join(k, &vec![Int::zero(); cone.x_dim(k)], &vec_neg(&h.c))?;
    let lift = cone.join(k - 1, &vec![Rat::zero(); cone.x_dim(k - 1)], &h.lift)?;
    let curv = cone.join(k, &vec![Rat::zero(); cone.x_dim(k)], &vec_neg(&h.curv))?;
    Character::new(Space::Cone(cone.clone()), k, c, lift, curv)
}

/// `p̆(h)`: the X-components of a cone character.
pub fn breve_p(h: &Character) -> Result<Character> {
    let cone = h.space.as_cone()?;
    let k = h.k;
    Character::new(
        Space::Abs(cone.x().clone()),
        k,
        cone.split(k, &h.c).0,
        cone.split(k - 1, &h.lift).0,
        cone.split(k, &h.curv).0,
    )
}

/// `f^* h` for an absolute character on the target of `f`.
pub fn pullback(f: &Arc<SimplicialMap>, h: &Character) -> Result<Character> {
    let x = h.space.as_abs()?;
    if !x.same_as(f.target()) {
        return Err(RelError::SpaceMismatch(format!("{} does not map into {}", f.name(), x.name())));
    }
    let k = h.k;
    Character::new(Space::Abs(f.source().clone()), k, f.pullback(k, &h.c), f.pullback(k - 1, &h.lift), f.pullback(k, &h.curv))
}

/// Pullback of cone cochains along a map of maps `(f, g)` from `φ'` to `φ`,
/// i.e. `f φ' = φ g`.
pub fn cone_cochain_pullback<T: Clone + Zero>(f: &SimplicialMap, g: &SimplicialMap, target: &Cone, source: &Cone, n: usize, u: &[T]) -> Result<Vec<T>> {
    let (ux, ua) = target.split(n, u);
    let ga = if n == 0 { Vec::new() } else { g.pullback(n - 1, &ua) };
    source.join(n, &f.pullback(n, &ux), &ga)
}

/// `(f, g)^* h` for a cone character.
pub fn pullback_pair(f: &Arc<SimplicialMap>, g: &Arc<SimplicialMap>, source: &Arc<Cone>, h: &Character) -> Result<Character> {
    let target = h.space.as_cone()?;
    if !f.source().same_as(source.x()) || !g.source().same_as(source.a()) || !f.target().same_as(target.x()) || !g.target().same_as(target.a()) {
        return Err(RelError::SpaceMismatch("map of pairs does not match the cones".into()));
    }
    for n in 0..=source.a().top_degree() {
        for idx in 0..source.a().count(n) {
            let s = crate::simplicial::Simp::nondeg(crate::simplicial::Cell { dim: n, idx });
            if f.apply(&source.phi().apply(&s)) != target.phi().apply(&g.apply(&s)) {
                return Err(RelError::InvalidMap("square of maps does not commute".into()));
            }
        }
    }
    let k = h.k;
    Character::new(
        Space::Cone(source.clone()),
        k,
        cone_cochain_pullback(f, g, target, source, k, &h.c)?,
        cone_cochain_pullback(f, g, target, source, k - 1, &h.lift)?,
        cone_cochain_pullback(f, g, target, source, k, &h.curv)?,
    )
}

/// A section of `h` along the cone map, or the obstruction class
/// coordinates of `φ^* c(h)`.
pub fn section_along(h: &Character, cone: &Arc<Cone>) -> Result<std::result::Result<Character, Vec<Int>>> {
    let x = h.space.as_abs()?;
    if !x.same_as(cone.x()) {
        return Err(RelError::SpaceMismatch("character does not live on the target of the map".into()));
    }
    let k = h.k;
    if k < 2 {
        return Err(RelError::DegreeOutOfRange("sections need degree at least 2".into()));
    }
    let phi = cone.phi();
    let a = cone.a().chain();
    let pc = phi.pullback(k, &h.c);
    let Some(b_a) = a.coboundary_preimage_int(k as isize, &pc) else {
        return Ok(Err(a.cohomology(k as isize).coordinates(&pc)));
    };
    let c = cone.join(k, &h.c, &b_a)?;
    let lift = cone.join(k - 1, &h.lift, &vec![Rat::zero(); cone.a_dim(k - 1)])?;
    let cov = vec_add(&phi.pullback(k - 1, &h.lift), &to_rat_vec(&b_a));
    let curv = cone.join(k, &h.curv, &cov)?;
    Ok(Ok(Character::new(Space::Cone(cone.clone()), k, c, lift, curv)?))
}

/// A section of `h` whose covariant derivative is exactly `theta`, when one
/// exists.
pub fn section_with_cov(h: &Character, cone: &Arc<Cone>, theta: &[Rat]) -> Result<Option<Character>> {
    let Ok(s0) = section_along(h, cone)? else { return Ok(None) };
    let cov0 = s0.covariant_derivative()?;
    let target = vec_sub(&cov0, theta);
    let a = Space::Abs(cone.a().clone());
    if !has_integral_periods(&a, h.k - 1, &target) {
        return Ok(None);
    }
    let correction = with_curvature(&a, h.k - 1, &target)?;
    Ok(Some(s0.add(&breve_i(&correction, cone)?)?))
}

/// A section with vanishing covariant derivative, which exists exactly when
/// `φ^* h = 0`.
pub fn parallel_section(h: &Character, cone: &Arc<Cone>) -> Result<Option<Character>> {
    section_with_cov(h, cone, &vec![Rat::zero(); cone.a().count(h.k - 1)])
}

fn check_pair(cone: &Cone, quot: &Quotient) -> Result<()> {
    if !cone.x().same_as(quot.x()) || !cone.a().same_as(quot.a()) || cone.phi().images() != quot.incl().images() {
        return Err(RelError::SpaceMismatch("cone and pair come from different inclusions".into()));
    }
    Ok(())
}

/// Precomposition with `q: C(i_A) -> C(X, A)`.
pub fn quotient_to_cone(h: &Character, cone: &Arc<Cone>) -> Result<Character> {
    let quot = h.space.as_quot()?;
    check_pair(cone, quot)?;
    let k = h.k;
    let lift_cone = |n: usize, v: &[Rat]| cone.join(n, &quot.ext0(n, v), &vec![Rat::zero(); cone.a_dim(n)]);
    Character::new(
        Space::Cone(cone.clone()),
        k,
        cone.join(k, &quot.ext0(k, &h.c), &vec![Int::zero(); cone.a_dim(k)])?,
        lift_cone(k - 1, &h.lift)?,
        lift_cone(k, &h.curv)?,
    )
}

/// Inverse of [`quotient_to_cone`] on parallel characters.
pub fn cone_to_quotient(h: &Character, quot: &Arc<Quotient>) -> Result<Character> {
    let cone = h.space.as_cone()?;
    check_pair(cone, quot)?;
    let k = h.k;
    if h.covariant_derivative()?.iter().any(|v| !v.is_zero()) {
        return Err(RelError::Precondition("character is not parallel".into()));
    }
    let incl = quot.incl();
    let ext_a = |n: usize, v: &[Rat]| quot.ext_a(n, v);
    let (lx, la) = cone.split(k - 1, &h.lift);
    // Remove the A-part of the lift with s = (ext(la), 0).
    let m = if k >= 2 { vec_sub(&lx, &quot.x().coboundary(k - 2, &ext_a(k - 2, &la))?) } else { lx };
    // Now m restricted to A is integral; subtract its extension.
    let beta = ext_a(k - 1, &incl.pullback(k - 1, &m));
    if !is_integral_vec(&beta) {
        return Err(RelError::InvalidCharacter("restriction of the normalized lift is not integral".into()));
    }
    let lift = vec_sub(&m, &beta);
    let cx = cone.split(k, &h.c).0;
    let c = to_int_vec(&vec_add(&to_rat_vec(&cx), &quot.x().coboundary(k - 1, &beta)?));
    let curv_x = cone.split(k, &h.curv).0;
    if !quot.vanishes_on_a(k, &c) || !quot.vanishes_on_a(k - 1, &lift) || !quot.vanishes_on_a(k, &curv_x) {
        return Err(RelError::InvalidCharacter("normalized triple does not vanish on the subspace".into()));
    }
    Character::new(Space::Quot(quot.clone()), k, quot.reduce(k, &c), quot.reduce(k - 1, &lift), quot.reduce(k, &curv_x))
}

/// Covariant derivative closed with integral periods.
pub fn hs_in_h0(h: &Character) -> Result<bool> {
    let cone = h.space.as_cone()?;
    let cov = h.covariant_derivative()?;
    Ok(has_integral_periods(&Space::Abs(cone.a().clone()), h.k - 1, &cov))
}

/// A closed form `ω` on X with integral periods and `h1 - h2 = ι_φ(ω, 0)`,
/// if one exists. Both characters must lie in the subgroup `Ĥ₀`.
pub fn hs_difference_form(h1: &Character, h2: &Character) -> Result<Option<Vec<Rat>>> {
    h1.check_compatible(h2)?;
    if !hs_in_h0(h1)? || !hs_in_h0(h2)? {
        return Err(RelError::Precondition("both characters must have covariant derivative in the integral-period forms".into()));
    }
    let cone = h1.space.as_cone()?;
    let k = h1.k;
    let d = h1.sub(h2)?;
    let (wx, wa) = cone.split(k, &d.curv);
    if wx.iter().any(|v| !v.is_zero()) {
        return Ok(None);
    }
    let x = cone.x();
    let xc = x.chain();
    let cc = cone.chain();
    let nx = x.count(k - 1);
    let ns = cc.dim(k as isize - 2);
    let nsp = x.count(k.saturating_sub(2)) * usize::from(k >= 2);
    let ncols = nx + ns + nsp;
    // Exact part: δω = 0 and φ^*ω = cov difference.
    let mut e = Vec::new();
    for (i, j, v) in xc.bd(k as isize).triplets() {
        e.push((j, i, v.clone()));
    }
    let nrows_dx = x.count(k);
    for (i, j, v) in cone.phi().matrix(k - 1).triplets() {
        e.push((nrows_dx + j, i, v.clone()));
    }
    let e_mat = IntMatrix::from_triplets(nrows_dx + cone.a().count(k - 1), ncols, e);
    let mut e_rhs = vec![Rat::zero(); nrows_dx];
    e_rhs.extend(wa);
    // Modular part: ω + δs' ≡ 0, and -(ω,0) + δ_φ s ≡ -Δlift.
    let mut m = Vec::new();
    for i in 0..nx {
        m.push((i, i, Int::one()));
    }
    if k >= 2 {
        for (i, j, v) in xc.bd(k as isize - 1).triplets() {
            m.push((j, nx + ns + i, v.clone()));
        }
    }
    for i in 0..nx {
        m.push((nx + i, i, -Int::one()));
    }
    for (i, j, v) in cc.bd(k as isize - 1).triplets() {
        m.push((nx + j, nx + i, v.clone()));
    }
    let m_mat = IntMatrix::from_triplets(nx + cc.dim(k as isize - 1), ncols, m);
    let mut y = vec![Rat::zero(); nx];
    y.extend(vec_neg(&d.lift));
    Ok(solve_mixed(&e_mat, &e_rhs, &m_mat, &y)?.map(|sol| sol[..nx].to_vec()))
}

/// Equality in the quotient of `Ĥ₀` by the forms `ι_φ(ω, 0)`.
pub fn hs_equal(h1: &Character, h2: &Character) -> Result<bool> {
    Ok(hs_difference_form(h1, h2)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{int, rat};

    fn deg2_cone() -> Arc<Cone> {
        Cone::new(&fixtures::deg2())
    }

    /// Flat character on cone(DEG2) of degree 2 built from the torsion class
    /// of `H^2(φ; Z) = Z/2`: with `δa = 2 gen`, `j(a/2)` has cocycle `-gen`.
    fn flat_torsion(cone: &Arc<Cone>) -> Character {
        let space = Space::Cone(cone.clone());
        let h2 = cone.chain().cohomology(2);
        assert_eq!(h2.torsion_orders, vec![int(2)]);
        let (n, a) = &h2.torsion_witnesses[0];
        let half: Vec<Rat> = a.iter().map(|v| Rat::new(v.clone(), n.clone())).collect();
        let h = j(&space, 2, &half).unwrap();
        assert_eq!(h.cocycle(), &vec_neg(&h2.generators[0])[..]);
        h
    }

    #[test]
    fn zero_and_validation() {
        let s1 = Space::Abs(fixtures::s1());
        let z = Character::zero(s1.clone(), 2).unwrap();
        assert!(z.is_flat());
        let bad = Character::new(s1.clone(), 2, vec![], vec![Rat::one(); 2], vec![]);
        assert!(bad.is_err());
        let lift = vec![Rat::one(), Rat::zero(), Rat::zero()];
        assert!(matches!(Character::new(s1, 1, vec![int(0); 3], lift.clone(), lift), Err(RelError::InvalidCharacter(_))));
        assert!(Character::zero(Space::Cone(deg2_cone()), 1).is_err());
    }

    #[test]
    fn iota_of_a_third() {
        let s1 = fixtures::s1();
        let sp = Space::Abs(s1.clone());
        let mut theta = vec![Rat::zero(); 3];
        theta[s1.find("e01").unwrap().idx] = rat(1, 3);
        let h = iota(&sp, 2, &theta).unwrap();
        assert_eq!(h.evaluate(&fixtures::s1_cycle(&s1)).unwrap(), rat(1, 3));
        let integral: Vec<Rat> = vec![rat(2, 1), rat(-1, 1), rat(5, 1)];
        assert!(iota(&sp, 2, &integral).unwrap().equals(&Character::zero(sp.clone(), 2).unwrap()).unwrap());
    }

    #[test]
    fn flat_torsion_on_deg2() {
        let cone = deg2_cone();
        let h = flat_torsion(&cone);
        let h1 = cone.chain().homology(1);
        let z = &h1.generators[0];
        assert_eq!(h.evaluate(z).unwrap(), rat(1, 2));
        let (n, w) = &h1.torsion_witnesses[0];
        assert_eq!(eval_torsion(&h, z, n, w).unwrap(), rat(1, 2));
        let zero = Character::zero(h.space().clone(), 2).unwrap();
        assert!(!h.equals(&zero).unwrap());
        assert!(h.scale(2).equals(&zero).unwrap());
        match topological_trivialization(&h) {
            Trivialization::Obstructed(c) => assert_eq!(c, vec![int(1)]),
            Trivialization::Form(_) => panic!("torsion character cannot be trivialized"),
        }
    }

    #[test]
    fn breve_maps() {
        let cone = deg2_cone();
        let a = Space::Abs(cone.a().clone());
        let lift: Vec<Rat> = (0..6).map(|i| rat(i as i64, 7)).collect();
        let dl = cone.a().coboundary(0, &lift).unwrap();
        // Degree 1 character on the hexagon: curvature any 1-form.
        let h = Character::new(a.clone(), 1, vec![int(0); 6], lift.clone(), dl).unwrap();
        let bi = breve_i(&h, &cone).unwrap();
        assert_eq!(bi.covariant_derivative().unwrap(), vec_neg(h.curvature()));
        assert!(bi.cocycle().iter().all(|v| v.is_zero()));
        let p = breve_p(&bi).unwrap();
        assert!(p.equals(&Character::zero(Space::Abs(cone.x().clone()), 2).unwrap()).unwrap());
    }

    #[test]
    fn parallel_sections_for_identity_and_deg2() {
        let id = Cone::new(&fixtures::id_s1());
        let s1 = fixtures::s1();
        let sp = Space::Abs(s1.clone());
        let mut theta = vec![Rat::zero(); 3];
        theta[0] = rat(1, 4);
        let h = iota(&sp, 2, &theta).unwrap();
        assert!(parallel_section(&h, &id).unwrap().is_none());
        let sec = section_along(&h, &id).unwrap().unwrap();
        assert!(breve_p(&sec).unwrap().equals(&h).unwrap());

        let cone = deg2_cone();
        let mut half = vec![Rat::zero(); 3];
        half[0] = rat(1, 2);
        let h = iota(&sp, 2, &half).unwrap();
        // DEG2 pulls a half holonomy back to a full turn.
        let pulled = pullback(cone.phi(), &h).unwrap();
        assert!(pulled.equals(&Character::zero(pulled.space().clone(), 2).unwrap()).unwrap());
        let par = parallel_section(&h, &cone).unwrap().unwrap();
        assert!(par.covariant_derivative().unwrap().iter().all(|v| v.is_zero()));
        assert!(breve_p(&par).unwrap().equals(&h).unwrap());
    }

    #[test]
    fn comparison_roundtrip_on_relative_circle() {
        let incl = fixtures::pt_in_s1();
        let cone = Cone::new(&incl);
        let quot = Quotient::new(&incl).unwrap();
        let qs = Space::Quot(quot.clone());
        let lift: Vec<Rat> = (0..quot.dim(1)).map(|i| rat(i as i64 + 1, 3)).collect();
        let hq = iota(&qs, 2, &lift).unwrap();
        let hc = quotient_to_cone(&hq, &cone).unwrap();
        assert!(hc.covariant_derivative().unwrap().iter().all(|v| v.is_zero()));
        let back = cone_to_quotient(&hc, &quot).unwrap();
        assert!(back.equals(&hq).unwrap());
        // A cone character whose lift has an A-part still comes back.
        let shifted = hc.perturb(&vec![int(0); 4], &[rat(2, 5), rat(0, 1), rat(1, 7)]).unwrap();
        assert!(cone_to_quotient(&shifted, &quot).unwrap().equals(&hq).unwrap());
    }

    #[test]
    fn hs_equality() {
        let incl = fixtures::pt_in_s1();
        let cone = Cone::new(&incl);
        let sp = Space::Cone(cone.clone());
        let x = fixtures::s1();
        let h = Character::zero(sp.clone(), 2).unwrap();
        let omega: Vec<Rat> = x.chain_from(1, &[("e01", 1)]).unwrap().iter().map(to_rat).collect();
        let shifted = h.add(&iota(&sp, 2, &cone.join(1, &omega, &[Rat::zero()]).unwrap()).unwrap()).unwrap();
        assert!(hs_in_h0(&shifted).unwrap());
        assert!(hs_equal(&h, &shifted).unwrap());
        let third: Vec<Rat> = omega.iter().map(|v| v / rat(3, 1)).collect();
        let other = iota(&sp, 2, &cone.join(1, &third, &[Rat::zero()]).unwrap()).unwrap();
        assert!(hs_in_h0(&other).unwrap());
        assert!(!hs_equal(&h, &other).unwrap());
    }
}
