//! Constructive exactness: for an element in the kernel of one map of an
//! exact sequence, build an explicit preimage under the previous map.
//!
//! Each function returns the preimage only. Callers check it by mapping it
//! forward and comparing with [`Character::equals`].

use std::sync::Arc;

use num_traits::Zero;

use crate::characters::{
    breve_i, cone_to_quotient, flat_class, has_integral_periods, hs_difference_form, iota, j, parallel_section, pullback, section_along,
    topological_trivialization, with_curvature, with_curvature_and_class, Character, Trivialization,
};
use crate::cone::{Cone, Quotient, Space};
use crate::error::{RelError, Result};
use crate::linalg::{is_integral_vec, solve_mixed, to_int_vec, to_rat_vec, vec_add, vec_neg, vec_sub, Int, IntMatrix, Rat};

/// `θ` with `ι(θ) = h`, for topologically trivial `h`.
pub fn trivialization_preimage(h: &Character) -> Result<Vec<Rat>> {
    match topological_trivialization(h) {
        Trivialization::Form(t) => Ok(t),
        Trivialization::Obstructed(coords) => Err(RelError::Precondition(format!("characteristic class {coords:?} is nonzero"))),
    }
}

/// `u` with `j(u) = h`, for flat `h`.
pub fn flat_preimage(h: &Character) -> Result<Vec<Rat>> {
    flat_class(h)
}

/// A character with prescribed curvature (closed, integral periods).
pub fn curvature_preimage(space: &Space, k: usize, omega: &[Rat]) -> Result<Character> {
    with_curvature(space, k, omega)
}

/// A character whose characteristic cocycle is `c`.
pub fn class_preimage(space: &Space, k: usize, c: &[Int]) -> Result<Character> {
    if space.chain().coboundary_int(k as isize, c).iter().any(|v| !v.is_zero()) {
        return Err(RelError::NotACycle("class representative is not a cocycle".into()));
    }
    with_curvature_and_class(space, k, &to_rat_vec(c), c)
}

/// A character with curvature `omega` and characteristic cocycle `c`, for
/// a pair that agrees in real cohomology.
pub fn r_preimage(space: &Space, k: usize, omega: &[Rat], c: &[Int]) -> Result<Character> {
    with_curvature_and_class(space, k, omega, c)
}

/// A closed form `θ` with `ι(θ) = h`, for `h` with zero curvature and zero
/// class.
pub fn r_kernel_preimage(h: &Character) -> Result<Vec<Rat>> {
    if !h.is_flat() {
        return Err(RelError::Precondition("character has nonzero curvature".into()));
    }
    let t = trivialization_preimage(h)?;
    debug_assert!(h.space().chain().coboundary(h.degree() as isize - 1, &t).iter().all(|v| v.is_zero()));
    Ok(t)
}

/// Exactness of `H^{k-2}(X; Q/Z) -> Ĥ^{k-1}(A) -> Ĥ^k(φ)` at `Ĥ^{k-1}(A)`:
/// for `g` with `ĭ(g) = 0`, a mod-one cocycle `u` on X with `j(φ^* u) = g`.
pub fn les_preimage_at_a(g: &Character, cone: &Arc<Cone>) -> Result<Vec<Rat>> {
    let k = g.degree() + 1;
    let image = breve_i(g, cone)?;
    if !image.is_flat() {
        return Err(RelError::Precondition("ĭ(g) has nonzero curvature".into()));
    }
    let s = cone
        .chain()
        .integralize_by_coboundary(k as isize - 1, image.lift())
        .ok_or_else(|| RelError::Precondition("ĭ(g) is not the zero character".into()))?;
    let (sx, _) = cone.split(k - 2, &s);
    Ok(vec_neg(&sx))
}

/// Exactness at `Ĥ^k(φ)`: for `h` with `p̆(h) = 0`, a character `g` on A with
/// `ĭ(g) = h`.
pub fn les_preimage_at_cone(h: &Character) -> Result<Character> {
    let cone = h.space().as_cone()?.clone();
    let k = h.degree();
    let (wx, wa) = cone.split(k, h.curvature());
    if wx.iter().any(|v| !v.is_zero()) {
        return Err(RelError::Precondition("p̆(h) has nonzero curvature".into()));
    }
    let xc = cone.x().chain();
    let (lx, la) = cone.split(k - 1, h.lift());
    let sp = xc
        .integralize_by_coboundary(k as isize - 1, &lx)
        .ok_or_else(|| RelError::Precondition("p̆(h) is not the zero character".into()))?;
    let bx = vec_add(&lx, &xc.coboundary(k as isize - 2, &sp));
    let bx_int = to_int_vec(&bx);
    let la2 = vec_add(&la, &cone.phi().pullback(k - 2, &sp));
    let (_, ca) = cone.split(k, h.cocycle());
    let ca2: Vec<Int> = ca.iter().zip(cone.phi().pullback(k - 1, &bx_int)).map(|(a, b)| a + b).collect();
    let a = Space::Abs(cone.a().clone());
    Character::new(a, k - 1, ca2.iter().map(|v| -v).collect(), la2, vec_neg(&wa))
}

/// Exactness at `Ĥ^k(X)`: a section along φ, for `h` with `φ^* c(h) = 0`.
pub fn les_preimage_at_x(h: &Character, cone: &Arc<Cone>) -> Result<Character> {
    match section_along(h, cone)? {
        Ok(s) => Ok(s),
        Err(coords) => Err(RelError::Precondition(format!("φ^* c(h) has class {coords:?}"))),
    }
}

/// The map `Ĥ^k(X, A) -> Ĥ^k(X)`.
pub fn quotient_to_abs(h: &Character) -> Result<Character> {
    let q = h.space().as_quot()?;
    let k = h.degree();
    Character::new(Space::Abs(q.x().clone()), k, q.ext0(k, h.cocycle()), q.ext0(k - 1, h.lift()), q.ext0(k, h.curvature()))
}

/// Connecting map on mod-one cochains: `u` of degree n on A gives the
/// relative cochain `δ ext_A(u)` of degree n+1.
pub fn beta_mod_one(quot: &Quotient, n: usize, u: &[Rat]) -> Result<Vec<Rat>> {
    let d = quot.x().coboundary(n, &quot.ext_a(n, u))?;
    Ok(quot.reduce(n + 1, &d))
}

/// Exactness of the pair sequence at `Ĥ^k(X, A)`: for `h` mapping to zero in
/// `Ĥ^k(X)`, a mod-one cocycle `u` on A with `j(β(u)) = h`.
pub fn pair_les_preimage_at_pair(h: &Character) -> Result<Vec<Rat>> {
    let q = h.space().as_quot()?.clone();
    let hx = quotient_to_abs(h)?;
    if !hx.is_flat() {
        return Err(RelError::Precondition("image in Ĥ(X) has nonzero curvature".into()));
    }
    let k = h.degree();
    let s = q
        .x()
        .chain()
        .integralize_by_coboundary(k as isize - 1, hx.lift())
        .ok_or_else(|| RelError::Precondition("image in Ĥ(X) is not zero".into()))?;
    let sa = q.incl().pullback(k - 2, &s);
    Ok(vec_neg(&sa))
}

/// Exactness at `Ĥ^k(X)`: for `h` with `i_A^* h = 0`, a relative character
/// mapping to `h`.
pub fn pair_les_preimage_at_x(h: &Character, quot: &Arc<Quotient>) -> Result<Character> {
    let cone = Cone::new(quot.incl());
    let sec = parallel_section(h, &cone)?.ok_or_else(|| RelError::Precondition("i_A^* h is not zero".into()))?;
    cone_to_quotient(&sec, quot)
}

/// Exactness at `Ĥ^k(A)`: for `g` with `β(c(g)) = 0`, a character on X
/// restricting to `g`.
pub fn pair_les_preimage_at_a(g: &Character, quot: &Arc<Quotient>) -> Result<Character> {
    let a = g.space().as_abs()?;
    if !a.same_as(quot.a()) {
        return Err(RelError::SpaceMismatch("character does not live on the subspace".into()));
    }
    let k = g.degree();
    let x = quot.x();
    let ext = quot.ext_a(k, g.cocycle());
    let r = quot.reduce(k + 1, &x.chain().coboundary_int(k as isize, &ext));
    let b = quot
        .chain()
        .coboundary_preimage_int(k as isize + 1, &r)
        .ok_or_else(|| RelError::Precondition("β(c(g)) is nonzero".into()))?;
    let c2: Vec<Int> = ext.iter().zip(quot.ext0(k, &b)).map(|(p, q)| p - q).collect();
    let sx = Space::Abs(x.clone());
    let base = Character::new(sx.clone(), k, c2.clone(), vec![Rat::zero(); x.count(k - 1)], to_rat_vec(&c2))?;
    let diff = g.sub(&pullback(quot.incl(), &base)?)?;
    let theta = trivialization_preimage(&diff)?;
    base.add(&iota(&sx, k, &quot.ext_a(k - 1, &theta))?)
}

/// A character in `Ĥ₀(φ)` with covariant derivative `ϑ`, for `ϑ` closed
/// with integral periods: `ĭ(-g)` with `curv(g) = ϑ`.
pub fn h0_cov_preimage(cone: &Arc<Cone>, k: usize, theta: &[Rat]) -> Result<Character> {
    let g = with_curvature(&Space::Abs(cone.a().clone()), k - 1, theta)?;
    breve_i(&g.neg(), cone)
}

/// A closed form `ω` on X with integral periods and `φ^* ω = ϑ`.
pub fn closed_extension(cone: &Cone, n: usize, theta: &[Rat]) -> Result<Option<Vec<Rat>>> {
    let x = cone.x();
    let xc = x.chain();
    let nx = x.count(n);
    let ns = if n >= 1 { x.count(n - 1) } else { 0 };
    let mut e = Vec::new();
    for (i, jj, v) in xc.bd(n as isize + 1).triplets() {
        e.push((jj, i, v.clone()));
    }
    let rows_d = x.count(n + 1);
    for (i, jj, v) in cone.phi().matrix(n).triplets() {
        e.push((rows_d + jj, i, v.clone()));
    }
    let e_mat = IntMatrix::from_triplets(rows_d + cone.a().count(n), nx + ns, e);
    let mut rhs = vec![Rat::zero(); rows_d];
    rhs.extend(theta.iter().cloned());
    let mut m = Vec::new();
    for i in 0..nx {
        m.push((i, i, Int::from(1)));
    }
    if n >= 1 {
        for (i, jj, v) in xc.bd(n as isize).triplets() {
            m.push((jj, nx + i, v.clone()));
        }
    }
    let m_mat = IntMatrix::from_triplets(nx, nx + ns, m);
    Ok(solve_mixed(&e_mat, &rhs, &m_mat, &vec![Rat::zero(); nx])?.map(|s| s[..nx].to_vec()))
}

/// Exactness of `Ĥ(X, A) -> Ĥ₀(i_A) -> Ω₀(A)` in the middle: a parallel
/// character is the image of a relative one.
pub fn h0_kernel_preimage(h: &Character, quot: &Arc<Quotient>) -> Result<Character> {
    cone_to_quotient(h, quot)
}

/// Exactness of `Ĥ(X, A) -> Ȟ(i_A) -> Ω₀(A)/i^*Ω₀(X)` in the middle: for
/// `h ∈ Ĥ₀` with `cov(h) = i^* ω`, the relative character of
/// `h - ι(ω, 0)`.
pub fn hcheck_preimage(h: &Character, quot: &Arc<Quotient>) -> Result<Character> {
    let cone = h.space().as_cone()?;
    let k = h.degree();
    let cov = h.covariant_derivative()?;
    let omega = closed_extension(cone, k - 1, &cov)?.ok_or_else(|| RelError::Precondition("covariant derivative does not extend to X".into()))?;
    let form = cone.join(k - 1, &omega, &vec![Rat::zero(); cone.a_dim(k - 1)])?;
    let parallel = h.sub(&iota(h.space(), k, &form)?)?;
    cone_to_quotient(&parallel, quot)
}

/// Exactness of `Ω₀(X)/Ω̃(X) -> Ĥ₀(φ) -> Ȟ(φ)` in the middle: for `h ∈ Ĥ₀`
/// equal to zero in `Ȟ`, the form `ω` with `h = ι(ω, 0)`.
pub fn hs_kernel_preimage(h: &Character) -> Result<Vec<Rat>> {
    let zero = Character::zero(h.space().clone(), h.degree())?;
    hs_difference_form(h, &zero)?.ok_or_else(|| RelError::Precondition("character is nonzero in the quotient".into()))
}

/// `ι_φ(ω, 0)` for a form on X.
pub fn iota_x(cone: &Arc<Cone>, k: usize, omega: &[Rat]) -> Result<Character> {
    let form = cone.join(k - 1, omega, &vec![Rat::zero(); cone.a_dim(k - 1)])?;
    iota(&Space::Cone(cone.clone()), k, &form)
}

/// Checks that `j(u)` is defined: `δu` integral.
pub fn is_mod_one_cocycle(space: &Space, n: usize, u: &[Rat]) -> bool {
    is_integral_vec(&space.chain().coboundary(n as isize, u))
}

/// `ι` of the difference `ω - c` trivializes nothing unless the pair agrees
/// in real cohomology; this returns whether it does.
pub fn r_compatible(space: &Space, k: usize, omega: &[Rat], c: &[Int]) -> bool {
    has_integral_periods(space, k, omega) && space.chain().coboundary_preimage_rat(k as isize, &vec_sub(omega, &to_rat_vec(c))).is_some()
}

/// `j(φ^* u)` on A for a mod-one cocycle `u` on X.
pub fn j_pullback(cone: &Cone, k: usize, u: &[Rat]) -> Result<Character> {
    j(&Space::Abs(cone.a().clone()), k, &cone.phi().pullback(k - 1, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{breve_p, quotient_to_cone};
    use crate::fixtures;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cones() -> Vec<Arc<Cone>> {
        vec![Cone::new(&fixtures::deg2()), Cone::new(&fixtures::pt_in_s1())]
    }

    #[test]
    fn cone_les_positions() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for cone in cones() {
            let sx = Space::Abs(cone.x().clone());
            let sa = Space::Abs(cone.a().clone());
            for _ in 0..10 {
                // Kernel of ĭ: j(φ^* u).
                let u = sample::mod_one_cocycle(&mut rng, &sx, 0);
                let g = sample::perturb(&mut rng, &j_pullback(&cone, 1, &u).unwrap()).unwrap();
                assert!(breve_i(&g, &cone).unwrap().equals(&Character::zero(Space::Cone(cone.clone()), 2).unwrap()).unwrap());
                let w = les_preimage_at_a(&g, &cone).unwrap();
                assert!(is_mod_one_cocycle(&sx, 0, &w));
                assert!(j_pullback(&cone, 1, &w).unwrap().equals(&g).unwrap());
                // Kernel of p̆: ĭ(g).
                let g = sample::character(&mut rng, &sa, 1).unwrap();
                let h = sample::perturb(&mut rng, &breve_i(&g, &cone).unwrap()).unwrap();
                let pre = les_preimage_at_cone(&h).unwrap();
                assert!(breve_i(&pre, &cone).unwrap().equals(&h).unwrap());
                // Kernel of φ^* c: sections.
                let h = sample::character(&mut rng, &sx, 2).unwrap();
                let s = les_preimage_at_x(&h, &cone).unwrap();
                assert!(breve_p(&s).unwrap().equals(&h).unwrap());
            }
        }
    }

    #[test]
    fn pair_les_positions() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for incl in [fixtures::pt_in_s1(), fixtures::torus_pair()] {
            let quot = Quotient::new(&incl).unwrap();
            let sq = Space::Quot(quot.clone());
            let sx = Space::Abs(quot.x().clone());
            let sa = Space::Abs(quot.a().clone());
            for _ in 0..5 {
                let u = sample::mod_one_cocycle(&mut rng, &sa, 0);
                let h = sample::perturb(&mut rng, &j(&sq, 2, &beta_mod_one(&quot, 0, &u).unwrap()).unwrap()).unwrap();
                assert!(quotient_to_abs(&h).unwrap().equals(&Character::zero(sx.clone(), 2).unwrap()).unwrap());
                let w = pair_les_preimage_at_pair(&h).unwrap();
                assert!(j(&sq, 2, &beta_mod_one(&quot, 0, &w).unwrap()).unwrap().equals(&h).unwrap());

                let rel = sample::character(&mut rng, &sq, 2).unwrap();
                let hx = sample::perturb(&mut rng, &quotient_to_abs(&rel).unwrap()).unwrap();
                let pre = pair_les_preimage_at_x(&hx, &quot).unwrap();
                assert!(quotient_to_abs(&pre).unwrap().equals(&hx).unwrap());

                let big = sample::character(&mut rng, &sx, 2).unwrap();
                let g = sample::perturb(&mut rng, &pullback(quot.incl(), &big).unwrap()).unwrap();
                let pre = pair_les_preimage_at_a(&g, &quot).unwrap();
                assert!(pullback(quot.incl(), &pre).unwrap().equals(&g).unwrap());
            }
        }
    }

    #[test]
    fn short_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cone = Cone::new(&fixtures::deg2());
        let quot = Quotient::new(&fixtures::pt_in_s1()).unwrap();
        for sp in [Space::Cone(cone), Space::Quot(quot)] {
            for _ in 0..5 {
                let t0 = sample::trivial_character(&mut rng, &sp, 2).unwrap();
                let t = sample::perturb(&mut rng, &t0).unwrap();
                assert!(iota(&sp, 2, &trivialization_preimage(&t).unwrap()).unwrap().equals(&t).unwrap());
                let f0 = sample::flat_character(&mut rng, &sp, 2).unwrap();
                let f = sample::perturb(&mut rng, &f0).unwrap();
                assert!(j(&sp, 2, &flat_preimage(&f).unwrap()).unwrap().equals(&f).unwrap());
                let w = sample::omega0(&mut rng, &sp, 2);
                assert_eq!(curvature_preimage(&sp, 2, &w).unwrap().curvature(), w.as_slice());
                let c = sample::integral_cocycle(&mut rng, &sp, 2);
                assert_eq!(class_preimage(&sp, 2, &c).unwrap().cocycle(), c.as_slice());
            }
        }
    }

    #[test]
    fn hopkins_singer_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let quot = Quotient::new(&fixtures::pt_in_s1()).unwrap();
        let cone = Cone::new(quot.incl());
        let sp = Space::Cone(cone.clone());
        let sa = Space::Abs(cone.a().clone());
        let sx = Space::Abs(cone.x().clone());
        for _ in 0..5 {
            let theta = sample::omega0(&mut rng, &sa, 1);
            let h = h0_cov_preimage(&cone, 2, &theta).unwrap();
            assert_eq!(h.covariant_derivative().unwrap(), theta);
            let rel = sample::character(&mut rng, &Space::Quot(quot.clone()), 2).unwrap();
            let par = sample::perturb(&mut rng, &quotient_to_cone(&rel, &cone).unwrap()).unwrap();
            let pre = h0_kernel_preimage(&par, &quot).unwrap();
            assert!(quotient_to_cone(&pre, &cone).unwrap().equals(&par).unwrap());
            let om = sample::omega0(&mut rng, &sx, 1);
            let h = par.add(&iota_x(&cone, 2, &om).unwrap()).unwrap();
            let pre = hcheck_preimage(&h, &quot).unwrap();
            assert!(crate::characters::hs_equal(&quotient_to_cone(&pre, &cone).unwrap(), &h).unwrap());
            let k0 = sample::perturb(&mut rng, &iota_x(&cone, 2, &om).unwrap()).unwrap();
            let form = hs_kernel_preimage(&k0).unwrap();
            assert!(iota_x(&cone, 2, &form).unwrap().equals(&k0).unwrap());
        }
        let _ = sp;
    }
}
