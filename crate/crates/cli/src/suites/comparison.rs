//! Parallel cone characters of an inclusion against relative characters of
//! the pair: the two maps are mutually inverse and respect curvature,
//! class and the flat inclusion.

use relchar_core::characters::{cone_to_quotient, j, quotient_to_cone};
use relchar_core::{fixtures, sample, Cone, Int, Quotient, Rat, Space};

use super::{holds, same, same_char, show_ints, show_rats, Runner};

pub fn run(seed: u64) -> super::Report {
    let mut r = Runner::new("comparison-theorem");
    let mut rng = super::rng(seed);
    let k = 2;
    let pairs: Vec<(String, std::sync::Arc<Quotient>, std::sync::Arc<Cone>)> = [fixtures::pt_in_s1(), fixtures::torus_pair()]
        .into_iter()
        .map(|m| (m.name().to_string(), Quotient::new(&m).expect("inclusion"), Cone::new(&m)))
        .collect();
    for i in 0..120 {
        let (name, quot, cone) = &pairs[i % pairs.len()];
        let sq = Space::Quot(quot.clone());
        let sc = Space::Cone(cone.clone());
        let id = |what: &str| format!("{name}/{what}/{i:03}");
        let rel = match i % 3 {
            0 => sample::character(&mut rng, &sq, k),
            1 => sample::flat_character(&mut rng, &sq, k),
            _ => sample::trivial_character(&mut rng, &sq, k),
        }
        .and_then(|h| sample::perturb(&mut rng, &h))
        .expect("sampled relative character");
        let h = quotient_to_cone(&rel, cone).and_then(|h| sample::perturb(&mut rng, &h)).expect("cone image");
        r.case(id("parallel"), || Ok(holds(h.covariant_derivative()?.iter().all(|v| v == &Rat::from_integer(0.into())), "covariant derivative vanishes")));
        r.case(id("cone-to-quotient-inverts"), || same_char(&cone_to_quotient(&h, quot)?, &rel));
        r.case(id("quotient-to-cone-inverts"), || same_char(&quotient_to_cone(&cone_to_quotient(&h, quot)?, cone)?, &h));
        r.case(id("curvature"), || {
            let (x, _) = cone.split(k, h.curvature());
            Ok(same(show_rats(&x), show_rats(&quot.ext0(k, rel.curvature()))))
        });
        r.case(id("class"), || {
            let coh = sc.chain().cohomology(k as isize);
            let pushed = cone.join(k, &quot.ext0(k, rel.cocycle()), &vec![Int::from(0); cone.a_dim(k)])?;
            Ok(same(show_ints(&coh.coordinates(h.cocycle())), show_ints(&coh.coordinates(&pushed))))
        });
        let u = sample::mod_one_cocycle(&mut rng, &sq, k - 1);
        r.case(id("flat"), || {
            let lhs = quotient_to_cone(&j(&sq, k, &u)?, cone)?;
            let ext = cone.join(k - 1, &quot.ext0(k - 1, &u), &vec![Rat::from_integer(0.into()); cone.a_dim(k - 1)])?;
            same_char(&lhs, &j(&sc, k, &ext)?)
        });
    }
    r.finish()
}
