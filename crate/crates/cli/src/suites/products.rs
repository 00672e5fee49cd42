//! Cross products, internal products and the module structure, checked on
//! sampled characters over the cone of DEG2 and over the torus.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;

use relchar_core::characters::{breve_i, breve_p, iota, pullback, pullback_pair};
use relchar_core::kunneth::{abs_star, cross_abs, cross_char, cross_formula_eval, cross_map_of_maps, product_cycle, reassociate, star};
use relchar_core::linalg::{dot, frac, to_rat, to_rat_vec};
use relchar_core::simplicial::{integrate, pair_map, product_space};
use relchar_core::{fixtures, sample, Character, Cone, ConeProduct, Int, KunnethSplit, Rat, Space, SimplicialMap};

use super::{holds, rng, same, same_char, show_rats, Runner};

const SAMPLES: usize = 12;

pub fn run(seed: u64) -> super::Report {
    let mut r = Runner::new("products");
    let mut rng = rng(seed);
    let cone = Cone::new(&fixtures::deg2());
    let cone_sp = Space::Cone(cone.clone());
    let s1 = fixtures::s1();
    let s1_sp = Space::Abs(s1.clone());
    let cp = ConeProduct::new(&cone, &s1).expect("product cone");

    for k2 in 1..=2usize {
        let split = KunnethSplit::build(&cp, 2 + k2 - 1).expect("split");
        for i in 0..SAMPLES / 2 {
            let h = sample::character(&mut rng, &cone_sp, 2).expect("sample");
            let h2 = sample::character(&mut rng, &s1_sp, k2).expect("sample");
            for idx in 0..split.cycles.len() {
                let (h, h2, cp, split) = (&h, &h2, &cp, &split);
                r.case(format!("cross-formula/deg2-{k2}/{i:02}/cycle-{idx}"), move || {
                    let x = cross_char(h, h2, cp)?;
                    Ok(same(x.evaluate(&split.cycles[idx])?, cross_formula_eval(h, h2, cp, split, idx)?))
                });
            }
        }
    }

    for i in 0..SAMPLES {
        let k2 = 1 + i % 2;
        let h = sample::character(&mut rng, &cone_sp, 2).expect("sample");
        let h_other = sample::character(&mut rng, &cone_sp, 2).expect("sample");
        let h2 = sample::character(&mut rng, &s1_sp, k2).expect("sample");
        let theta = sample::rat_vec(&mut rng, cone_sp.dim(1));
        let g = sample::character(&mut rng, &Space::Abs(cone.a().clone()), 1).expect("sample");
        let cp = &cp;
        r.case(format!("cross/bilinear/{i:02}"), || {
            let lhs = cross_char(&h.add(&h_other)?, &h2, cp)?;
            same_char(&lhs, &cross_char(&h, &h2, cp)?.add(&cross_char(&h_other, &h2, cp)?)?)
        });
        r.case(format!("cross/curvature/{i:02}"), || {
            let x = cross_char(&h, &h2, cp)?;
            Ok(same(show_rats(x.curvature()), show_rats(&cp.cross_cochain(2, h.curvature(), k2, h2.curvature())?)))
        });
        r.case(format!("cross/class/{i:02}"), || {
            let x = cross_char(&h, &h2, cp)?;
            let c = cp.cross_cochain(2, &to_rat_vec(h.cocycle()), k2, &to_rat_vec(h2.cocycle()))?;
            Ok(same(show_rats(&to_rat_vec(x.cocycle())), show_rats(&c)))
        });
        r.case(format!("cross/iota/{i:02}"), || {
            let lhs = cross_char(&iota(&cone_sp, 2, &theta)?, &h2, cp)?;
            same_char(&lhs, &iota(&cp.space(), 2 + k2, &cp.cross_cochain(1, &theta, k2, h2.curvature())?)?)
        });
        r.case(format!("cross/breve-i/{i:02}"), || {
            let lhs = cross_char(&breve_i(&g, &cone)?, &h2, cp)?;
            same_char(&lhs, &breve_i(&cross_abs(&g, &h2, &cp.ay)?, &cp.product)?)
        });
        r.case(format!("cross/breve-p/{i:02}"), || {
            let lhs = breve_p(&cross_char(&h, &h2, cp)?)?;
            same_char(&lhs, &cross_abs(&breve_p(&h)?, &h2, &cp.xy)?)
        });
    }

    associativity(&mut r, &mut rng, &cone, &cp);
    naturality(&mut r, &mut rng);
    module(&mut r, &mut rng, &cone, "DEG2");
    // ĭ kills everything pulled back along φ, and for DEG2 that is all of
    // degree 2 on A. Collapsing S1 to a point leaves degree 2 on A untouched.
    let collapse = SimplicialMap::from_vertex_map("S1_PT", &fixtures::s1(), &fixtures::pt(), &[0, 0, 0]).expect("collapse map");
    module(&mut r, &mut rng, &Cone::new(&collapse), "collapse");
    torus(&mut r, &mut rng);
    r.finish()
}

fn associativity<R: Rng>(r: &mut Runner, rng: &mut R, cone: &Arc<Cone>, cp1: &ConeProduct) {
    let s1 = fixtures::s1();
    let int = fixtures::int();
    let left = ConeProduct::new(&cp1.product, &int).expect("product cone");
    let yz = product_space(&s1, &int);
    let right = ConeProduct::new(cone, &yz).expect("product cone");
    let f = reassociate(left.product.x(), &right.xy).expect("reassociation");
    let g = reassociate(left.product.a(), &right.ay).expect("reassociation");
    for i in 0..SAMPLES / 3 {
        let h = sample::character(rng, &Space::Cone(cone.clone()), 2).expect("sample");
        let h1 = sample::character(rng, &Space::Abs(s1.clone()), 1).expect("sample");
        let h2 = sample::character(rng, &Space::Abs(int.clone()), 1).expect("sample");
        r.case(format!("cross/associative/{i:02}"), || {
            let l = cross_char(&cross_char(&h, &h1, cp1)?, &h2, &left)?;
            let rr = cross_char(&h, &cross_abs(&h1, &h2, &yz)?, &right)?;
            same_char(&pullback_pair(&f, &g, &left.product, &rr)?, &l)
        });
    }
}

fn naturality<R: Rng>(r: &mut Runner, rng: &mut R) {
    let deg2 = fixtures::deg2();
    let id = fixtures::id_s1();
    let source = Cone::new(&deg2);
    let target = Cone::new(&id);
    let cps = ConeProduct::new(&source, &fixtures::s1_6()).expect("product cone");
    let cpt = ConeProduct::new(&target, &fixtures::s1()).expect("product cone");
    let (ff, gg) = cross_map_of_maps(&id, &deg2, &deg2, &cps, &cpt).expect("maps");
    for i in 0..SAMPLES / 2 {
        let h = sample::character(rng, &Space::Cone(target.clone()), 2).expect("sample");
        let h2 = sample::character(rng, &Space::Abs(fixtures::s1()), 1).expect("sample");
        r.case(format!("cross/natural/{i:02}"), || {
            let lhs = pullback_pair(&ff, &gg, &cps.product, &cross_char(&h, &h2, &cpt)?)?;
            let rhs = cross_char(&pullback_pair(&id, &deg2, &source, &h)?, &pullback(&deg2, &h2)?, &cps)?;
            same_char(&lhs, &rhs)
        });
    }
}

fn module<R: Rng>(r: &mut Runner, rng: &mut R, cone: &Arc<Cone>, name: &str) {
    let sp = Space::Cone(cone.clone());
    let x = Space::Abs(cone.x().clone());
    for i in 0..SAMPLES {
        let h = sample::character(rng, &sp, 2).expect("sample");
        let hp = sample::character(rng, &x, 1).expect("sample");
        let hpp = sample::character(rng, &x, 1).expect("sample");
        let g = sample::character(rng, &Space::Abs(cone.a().clone()), 1).expect("sample");
        r.case(format!("module/{name}/associative/{i:02}"), || {
            same_char(&star(&star(&h, &hp)?, &hpp)?, &star(&h, &abs_star(&hp, &hpp)?)?)
        });
        r.case(format!("module/{name}/breve-i/{i:02}"), || {
            let lhs = star(&breve_i(&g, cone)?, &hp)?;
            same_char(&lhs, &breve_i(&abs_star(&g, &pullback(cone.phi(), &hp)?)?, cone)?)
        });
        r.case(format!("module/{name}/breve-p/{i:02}"), || same_char(&breve_p(&star(&h, &hp)?)?, &abs_star(&breve_p(&h)?, &hp)?));
        r.case(format!("module/{name}/curvature/{i:02}"), || {
            let s = star(&h, &hp)?;
            let c = relchar_core::kunneth::cone_cup(cone, 2, h.curvature(), 1, hp.curvature())?;
            Ok(same(show_rats(s.curvature()), show_rats(&c)))
        });
    }
}

/// Values of `h × h'` on the product cycles of S1×S1, the internal product
/// as the diagonal pullback, and graded commutativity of classes.
fn torus<R: Rng>(r: &mut Runner, rng: &mut R) {
    let s1 = fixtures::s1();
    let s1_sp = Space::Abs(s1.clone());
    let t = fixtures::torus();
    let z = fixtures::s1_cycle(&s1);
    let v = fixtures::pt_cycle(&s1);
    for i in 0..SAMPLES / 2 {
        for k in 1..=2usize {
            for k2 in 1..=2usize {
                let h = sample::character(rng, &s1_sp, k).expect("sample");
                let h2 = sample::character(rng, &s1_sp, k2).expect("sample");
                for (p, a) in [(0usize, &v), (1, &z)] {
                    for (q, b) in [(0usize, &v), (1, &z)] {
                        if p + q + 1 != k + k2 {
                            continue;
                        }
                        let (h, h2, t) = (&h, &h2, &t);
                        r.case(format!("torus/branch/{i:02}/{k}-{k2}/{p}-{q}"), move || {
                            let x = cross_abs(h, h2, t)?;
                            let cyc = product_cycle(t, p, a, q, b)?;
                            let expected = if p + 1 == k && q == k2 {
                                frac(&(h.evaluate(a)? * to_rat(&dot(h2.cocycle(), b))))
                            } else if p == k && q + 1 == k2 {
                                let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
                                frac(&(sign * integrate(h.curvature(), a) * h2.evaluate(b)?))
                            } else {
                                Rat::zero()
                            };
                            Ok(same(x.evaluate(&cyc)?, expected))
                        });
                    }
                }
            }
        }
    }
    let id = SimplicialMap::identity(&s1);
    let diag = pair_map(&id, &id, &t).expect("diagonal");
    let t_sp = Space::Abs(t.clone());
    for i in 0..SAMPLES {
        let a = sample::character(rng, &s1_sp, 1).expect("sample");
        let b = sample::character(rng, &s1_sp, 1).expect("sample");
        r.case(format!("internal/diagonal/{i:02}"), || same_char(&pullback(&diag, &cross_abs(&a, &b, &t)?)?, &abs_star(&a, &b)?));
        let a: Character = sample::character(rng, &t_sp, 1).expect("sample");
        let b = sample::character(rng, &t_sp, 1).expect("sample");
        let t = &t;
        r.case(format!("internal/graded-commutative/{i:02}"), move || {
            // Cup products commute only up to homotopy, so compare classes.
            let ab = abs_star(&a, &b)?;
            let ba = abs_star(&b, &a)?;
            let sum: Vec<Int> = ab.cocycle().iter().zip(ba.cocycle()).map(|(x, y)| x + y).collect();
            Ok(holds(t.chain().coboundary_preimage_int(2, &sum).is_some(), "c(a∗b) = -c(b∗a)"))
        });
    }
}
