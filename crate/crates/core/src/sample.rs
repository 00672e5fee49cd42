//! Seeded random generators for chains, forms and characters, used by the
//! property tests and the verification suites.

use num_traits::Zero;
use rand::Rng;

use crate::characters::{iota, j, Character};
use crate::cone::Space;
use crate::error::Result;
use crate::linalg::{to_rat_vec, vec_add, Int, Rat};

pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> Int {
    Int::from(rng.gen_range(-bound..=bound))
}

pub fn small_rat<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rat {
    Rat::new(small_int(rng, num), Int::from(rng.gen_range(1..=den)))
}

pub fn int_vec<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<Int> {
    (0..len).map(|_| small_int(rng, bound)).collect()
}

pub fn rat_vec<R: Rng>(rng: &mut R, len: usize) -> Vec<Rat> {
    (0..len).map(|_| small_rat(rng, 4, 6)).collect()
}

/// Integral cocycle of degree n: a random combination of cohomology
/// generators plus an integral coboundary.
pub fn integral_cocycle<R: Rng>(rng: &mut R, space: &Space, n: usize) -> Vec<Int> {
    let ch = space.chain();
    let mut c = vec![Int::zero(); ch.dim(n as isize)];
    for g in &ch.cohomology(n as isize).generators {
        let a = small_int(rng, 3);
        for (ci, gi) in c.iter_mut().zip(g) {
            *ci += gi * &a;
        }
    }
    if n > 0 {
        let b = int_vec(rng, ch.dim(n as isize - 1), 2);
        c = vec_add(&c, &ch.coboundary_int(n as isize - 1, &b));
    }
    c
}

/// Closed cochain with integral periods.
pub fn omega0<R: Rng>(rng: &mut R, space: &Space, n: usize) -> Vec<Rat> {
    let ch = space.chain();
    let c = to_rat_vec(&integral_cocycle(rng, space, n));
    if n == 0 {
        return c;
    }
    let s = rat_vec(rng, ch.dim(n as isize - 1));
    vec_add(&c, &ch.coboundary(n as isize - 1, &s))
}

/// Closed rational cochain of degree n: rational multiples of the free
/// cohomology generators plus a rational coboundary.
pub fn closed_form<R: Rng>(rng: &mut R, space: &Space, n: usize) -> Vec<Rat> {
    let ch = space.chain();
    let coh = ch.cohomology(n as isize);
    let mut u = vec![Rat::zero(); ch.dim(n as isize)];
    for g in &coh.generators[coh.torsion_orders.len()..] {
        let a = small_rat(rng, 5, 6);
        for (ui, gi) in u.iter_mut().zip(g) {
            *ui += Rat::from_integer(gi.clone()) * &a;
        }
    }
    if n > 0 {
        let s = rat_vec(rng, ch.dim(n as isize - 1));
        u = vec_add(&u, &ch.coboundary(n as isize - 1, &s));
    }
    u
}

/// A random character of degree k.
pub fn character<R: Rng>(rng: &mut R, space: &Space, k: usize) -> Result<Character> {
    let ch = space.chain();
    let c = integral_cocycle(rng, space, k);
    let lift = rat_vec(rng, ch.dim(k as isize - 1));
    let curv = vec_add(&ch.coboundary(k as isize - 1, &lift), &to_rat_vec(&c));
    Character::new(space.clone(), k, c, lift, curv)
}

/// Cochain of degree n that is closed modulo integers: rational multiples of
/// free cocycles, torsion witnesses `a/N` and noise that keeps `δu` integral.
pub fn mod_one_cocycle<R: Rng>(rng: &mut R, space: &Space, n: usize) -> Vec<Rat> {
    let ch = space.chain();
    let len = ch.dim(n as isize);
    let coh = ch.cohomology(n as isize);
    let mut u = vec![Rat::zero(); len];
    // Presentations list torsion generators first.
    for g in &coh.generators[coh.torsion_orders.len()..] {
        let a = small_rat(rng, 5, 6);
        for (ui, gi) in u.iter_mut().zip(g) {
            *ui += Rat::from_integer(gi.clone()) * &a;
        }
    }
    // Witnesses for the next degree's torsion: δa = N·gen, so δ(a/N) is integral.
    for (nn, a) in &ch.cohomology(n as isize + 1).torsion_witnesses {
        let m = Int::from(rng.gen_range(0..4));
        for (ui, ai) in u.iter_mut().zip(a) {
            *ui += Rat::new(ai * &m, nn.clone());
        }
    }
    let noise = int_vec(rng, len, 2);
    u = vec_add(&u, &to_rat_vec(&noise));
    if n > 0 {
        let s = rat_vec(rng, ch.dim(n as isize - 1));
        u = vec_add(&u, &ch.coboundary(n as isize - 1, &s));
    }
    u
}

/// A random flat character of degree k.
pub fn flat_character<R: Rng>(rng: &mut R, space: &Space, k: usize) -> Result<Character> {
    let u = mod_one_cocycle(rng, space, k - 1);
    j(space, k, &u)
}

/// A random topologically trivial character `ι(θ)`.
pub fn trivial_character<R: Rng>(rng: &mut R, space: &Space, k: usize) -> Result<Character> {
    let theta = rat_vec(rng, space.dim(k as isize - 1));
    iota(space, k, &theta)
}

/// The same character with a random equivalent triple.
pub fn perturb<R: Rng>(rng: &mut R, h: &Character) -> Result<Character> {
    let ch = h.space().chain();
    let k = h.degree() as isize;
    let b = int_vec(rng, ch.dim(k - 1), 2);
    let s = rat_vec(rng, ch.dim(k - 2));
    h.perturb(&b, &s)
}

/// A random integral chain of degree n.
pub fn chain<R: Rng>(rng: &mut R, space: &Space, n: usize) -> Vec<Int> {
    int_vec(rng, space.dim(n as isize), 3)
}

/// A random integral cycle of degree n from the cycle basis.
pub fn cycle<R: Rng>(rng: &mut R, space: &Space, n: usize) -> Vec<Int> {
    let ch = space.chain();
    let mut z = vec![Int::zero(); ch.dim(n as isize)];
    for b in ch.cycle_basis(n as isize) {
        let a = small_int(rng, 3);
        for (zi, bi) in z.iter_mut().zip(&b) {
            *zi += bi * &a;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Cone;
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_produce_valid_objects() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let sp = Space::Cone(Cone::new(&fixtures::deg2()));
        for _ in 0..20 {
            let h = character(&mut rng, &sp, 2).unwrap();
            assert!(h.equals(&perturb(&mut rng, &h).unwrap()).unwrap());
            assert!(flat_character(&mut rng, &sp, 2).unwrap().is_flat());
            let w = omega0(&mut rng, &sp, 2);
            assert!(crate::characters::has_integral_periods(&sp, 2, &w));
            let z = cycle(&mut rng, &sp, 1);
            assert!(sp.chain().is_cycle(1, &z));
        }
    }
}
