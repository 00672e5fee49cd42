//! Evaluation of characters: additivity in both arguments, the value on
//! boundaries, and the torsion formula on cones of cyclic covers of S1.

use rand::Rng;

use relchar_core::characters::eval_torsion;
use relchar_core::linalg::{frac, vec_add};
use relchar_core::simplicial::integrate;
use relchar_core::{fixtures, sample, Cone, Int, Quotient, Space};

use super::{same, Runner};

pub fn run(seed: u64) -> super::Report {
    let mut r = Runner::new("character-axioms");
    let mut rng = super::rng(seed);
    let spaces: Vec<(&str, Space, usize)> = vec![
        ("S1", Space::Abs(fixtures::s1()), 1),
        ("S1", Space::Abs(fixtures::s1()), 2),
        ("S1xS1", Space::Abs(fixtures::torus()), 2),
        ("cone(DEG2)", Space::Cone(Cone::new(&fixtures::deg2())), 2),
        ("cone(PT_S1)", Space::Cone(Cone::new(&fixtures::pt_in_s1())), 2),
        ("cone(S1xPT_S1xS1)", Space::Cone(Cone::new(&fixtures::torus_pair())), 3),
        ("pair(PT_S1)", Space::Quot(Quotient::new(&fixtures::pt_in_s1()).expect("inclusion")), 2),
    ];
    for (name, sp, k) in &spaces {
        let k = *k;
        for i in 0..20 {
            let id = |what: &str| format!("{name}/deg{k}/{what}/{i:02}");
            let h1 = sample::character(&mut rng, sp, k).expect("sampled character");
            let h2 = sample::character(&mut rng, sp, k).expect("sampled character");
            let z1 = sample::cycle(&mut rng, sp, k - 1);
            let z2 = sample::cycle(&mut rng, sp, k - 1);
            let a = sample::chain(&mut rng, sp, k);
            let p = sample::perturb(&mut rng, &h1);
            r.case(id("additive-in-character"), || {
                let lhs = h1.add(&h2)?.evaluate(&z1)?;
                Ok(same(lhs, frac(&(h1.evaluate(&z1)? + h2.evaluate(&z1)?))))
            });
            r.case(id("additive-in-cycle"), || {
                let lhs = h1.evaluate(&vec_add(&z1, &z2))?;
                Ok(same(lhs, frac(&(h1.evaluate(&z1)? + h1.evaluate(&z2)?))))
            });
            r.case(id("boundary-value"), || {
                let b = sp.chain().boundary(k as isize, &a);
                Ok(same(h1.evaluate(&b)?, frac(&integrate(h1.curvature(), &a))))
            });
            r.case(id("perturbation-invariant"), || {
                let p = p?;
                Ok(same(p.evaluate(&z1)?, h1.evaluate(&z1)?))
            });
        }
    }
    // Every torsion cycle m·g + ∂b of the cone, degree 2, with the witness
    // m·w + N·b. Covers of degree 3 and 4 matter: with N = 2 a sign error in
    // the formula only moves values by integers.
    for d in 2..=4usize {
        let sp = Space::Cone(Cone::new(&fixtures::cyclic_cover(d)));
        let ch = sp.chain();
        let hom = ch.homology(1);
        for (t, (n, w)) in hom.torsion_witnesses.iter().enumerate() {
            let g = &hom.generators[t];
            for i in 0..30 {
                let h = match i % 3 {
                    0 => sample::character(&mut rng, &sp, 2),
                    1 => sample::flat_character(&mut rng, &sp, 2),
                    _ => sample::trivial_character(&mut rng, &sp, 2),
                }
                .expect("sampled character");
                let m = Int::from(rng.gen_range(0..n.clone().try_into().unwrap_or(2i64)));
                let b = sample::chain(&mut rng, &sp, 2);
                let z: Vec<Int> = g.iter().zip(ch.boundary(2, &b)).map(|(gi, bi)| gi * &m + bi).collect();
                let wz: Vec<Int> = w.iter().zip(&b).map(|(wi, bi)| wi * &m + bi * n).collect();
                r.case(format!("cone(DEG{d})/torsion-{t}/{i:02}"), || Ok(same(eval_torsion(&h, &z, n, &wz)?, h.evaluate(&z)?)));
            }
        }
    }
    r.finish()
}
