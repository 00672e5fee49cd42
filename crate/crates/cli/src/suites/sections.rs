//! Parallel sections along DEG2 and the identity of S1: one exists exactly
//! when the pulled-back character vanishes, and it is parallel on the nose.

use std::sync::Arc;

use rand::Rng;

use relchar_core::characters::{breve_p, iota, j, parallel_section, pullback};
use relchar_core::linalg::{rat, to_rat_vec, vec_add};
use relchar_core::{fixtures, sample, Character, Cone, Rat, Space};

use super::{holds, same, same_char, Runner};

pub fn run(seed: u64) -> super::Report {
    let mut r = Runner::new("parallel-sections");
    let mut rng = super::rng(seed);
    let k = 2;
    let maps = [fixtures::deg2(), fixtures::id_s1()];
    for phi in &maps {
        let cone = Cone::new(phi);
        let sx = Space::Abs(cone.x().clone());
        let sa = Space::Abs(cone.a().clone());
        let mut outcomes = (0usize, 0usize);
        let gen = sx.chain().cohomology(1).generators.last().cloned().expect("circle has a degree-one class");
        for i in 0..60 {
            let id = |what: &str| format!("{}/{what}/{i:02}", phi.name());
            // Alternate generic samples with ones built to pull back to zero.
            let h = match i % 4 {
                0 => sample::character(&mut rng, &sx, k),
                1 => {
                    // Half-integral multiples of the generator die under DEG2.
                    let m = rng.gen_range(0..4i64);
                    let mut u: Vec<Rat> = gen.iter().map(|g| Rat::from_integer(g.clone()) * rat(m, 2)).collect();
                    u = vec_add(&u, &to_rat_vec(&sample::int_vec(&mut rng, u.len(), 2)));
                    j(&sx, k, &u)
                }
                2 => {
                    let w = sample::omega0(&mut rng, &sx, k - 1);
                    iota(&sx, k, &w)
                }
                _ => sample::flat_character(&mut rng, &sx, k),
            }
            .and_then(|h| sample::perturb(&mut rng, &h))
            .expect("sampled character");
            match parallel_section(&h, &cone) {
                Ok(Some(_)) => outcomes.0 += 1,
                Ok(None) => outcomes.1 += 1,
                Err(_) => {}
            }
            check(&mut r, &id("criterion"), &h, &cone, &sa);
        }
        r.case(format!("{}/both-outcomes-sampled", phi.name()), || Ok(holds(outcomes.0 > 0 && outcomes.1 > 0, "sampling covers sections and obstructions")));
    }
    r.finish()
}

fn check(r: &mut Runner, id: &str, h: &Character, cone: &Arc<Cone>, sa: &Space) {
    let sec = parallel_section(h, cone);
    let sec2 = sec.clone();
    r.case(format!("{id}/iff"), || {
        let vanishes = pullback(cone.phi(), h)?.equals(&Character::zero(sa.clone(), h.degree())?)?;
        Ok(same(sec?.is_some(), vanishes))
    });
    r.case(format!("{id}/section"), || match sec2? {
        None => Ok(holds(true, "")),
        Some(s) => {
            let flat = s.covariant_derivative()?.iter().all(|v| v == &Rat::from_integer(0.into()));
            if !flat {
                return Ok(("covariant derivative is nonzero".into(), "zero".into()));
            }
            same_char(&breve_p(&s)?, h)
        }
    });
}
