//! Constructive exactness. For each position of each sequence, sample an
//! element of the kernel of the outgoing map, build a preimage with the
//! matching constructor and map it forward again.

use std::sync::Arc;

use rand::Rng;

use relchar_core::characters::{breve_i, breve_p, has_integral_periods, hs_equal, hs_in_h0, iota, j, pullback, quotient_to_cone, with_curvature};
use relchar_core::linalg::vec_add;
use relchar_core::sequences::*;
use relchar_core::{fixtures, sample, Character, Cone, Int, Quotient, Rat, Result, Space};

use super::{holds, same, same_char, show_ints, show_rats, Runner};

const PER_POSITION: usize = 50;

fn zero_like(h: &Character) -> Result<Character> {
    Character::zero(h.space().clone(), h.degree())
}

fn is_zero(h: &Character) -> Result<bool> {
    h.equals(&zero_like(h)?)
}

/// Both sides for "`u` is a mod-one cocycle and `j(u) = h`".
fn flat_check(sp: &Space, k: usize, u: &[Rat], h: &Character) -> Result<(String, String)> {
    if !is_mod_one_cocycle(sp, k - 1, u) {
        return Ok((format!("δ{} is not integral", show_rats(u)), "mod-one cocycle".into()));
    }
    same_char(&j(sp, k, u)?, h)
}

/// The two short rows and the real-cohomology sequence on one flavor of
/// space, under the given position prefix.
fn short_sequences<R: Rng>(r: &mut Runner, rng: &mut R, prefix: &str, spaces: &[(String, Space)]) {
    let k = 2;
    for i in 0..PER_POSITION {
        let (name, sp) = &spaces[i % spaces.len()];
        let id = |pos: &str| format!("{prefix}/{pos}/{name}/{i:02}");
        let f = sample::flat_character(rng, sp, k).and_then(|f| sample::perturb(rng, &f));
        r.case(id("flat"), || {
            let f = f?;
            flat_check(sp, k, &flat_preimage(&f)?, &f)
        });
        let w = sample::omega0(rng, sp, k);
        r.case(id("curvature-onto"), || Ok(same(show_rats(curvature_preimage(sp, k, &w)?.curvature()), show_rats(&w))));
        let t = sample::trivial_character(rng, sp, k).and_then(|t| sample::perturb(rng, &t));
        r.case(id("trivial"), || {
            let t = t?;
            same_char(&iota(sp, k, &trivialization_preimage(&t)?)?, &t)
        });
        let c = sample::integral_cocycle(rng, sp, k);
        r.case(id("class-onto"), || Ok(same(show_ints(class_preimage(sp, k, &c)?.cocycle()), show_ints(&c))));
        // Real-cohomology map R = (curv, c).
        let h = sample::character(rng, sp, k);
        let b = sample::int_vec(rng, sp.dim(k as isize - 1), 2);
        r.case(id("real-onto"), || {
            let h = h?;
            let c: Vec<Int> = vec_add(h.cocycle(), &sp.chain().coboundary_int(k as isize - 1, &b));
            let pre = r_preimage(sp, k, h.curvature(), &c)?;
            Ok(same(format!("{} {}", show_rats(pre.curvature()), show_ints(pre.cocycle())), format!("{} {}", show_rats(h.curvature()), show_ints(&c))))
        });
        let theta = sample::closed_form(rng, sp, k - 1);
        let h = iota(sp, k, &theta).and_then(|h| sample::perturb(rng, &h));
        r.case(id("real-kernel"), || {
            let h = h?;
            let t = r_kernel_preimage(&h)?;
            if sp.chain().coboundary(k as isize - 1, &t).iter().any(|v| v != &Rat::from_integer(0.into())) {
                return Ok(("preimage form is not closed".into(), "closed".into()));
            }
            same_char(&iota(sp, k, &t)?, &h)
        });
    }
}

fn cone_les<R: Rng>(r: &mut Runner, rng: &mut R, cones: &[(String, Arc<Cone>)]) {
    for i in 0..PER_POSITION {
        let (name, cone) = &cones[i % cones.len()];
        let id = |pos: &str| format!("cone-les/{pos}/{name}/{i:02}");
        let sx = Space::Abs(cone.x().clone());
        let sa = Space::Abs(cone.a().clone());
        let sc = Space::Cone(cone.clone());
        let u = sample::mod_one_cocycle(rng, &sx, 0);
        let g = j_pullback(cone, 1, &u).and_then(|g| sample::perturb(rng, &g));
        r.case(id("at-a"), || {
            let g = g?;
            let img = breve_i(&g, cone)?;
            if !is_zero(&img)? {
                return Ok(("sampled element is not in the kernel".into(), "kernel".into()));
            }
            let w = les_preimage_at_a(&g, cone)?;
            if !is_mod_one_cocycle(&sx, 0, &w) {
                return Ok(("preimage is not a mod-one cocycle".into(), "mod-one cocycle".into()));
            }
            same_char(&j_pullback(cone, 1, &w)?, &g)
        });
        let g = sample::character(rng, &sa, 1);
        let h = g.and_then(|g| breve_i(&g, cone)).and_then(|h| sample::perturb(rng, &h));
        r.case(id("at-cone"), || {
            let h = h?;
            if !is_zero(&breve_p(&h)?)? {
                return Ok(("sampled element is not in the kernel".into(), "kernel".into()));
            }
            same_char(&breve_i(&les_preimage_at_cone(&h)?, cone)?, &h)
        });
        // Kernel of Ĥ(X) -> H(A): pull back a class that dies on A.
        let h = sample::character(rng, &sx, 2);
        r.case(id("at-x"), || {
            let h = h?;
            let s = les_preimage_at_x(&h, cone)?;
            same_char(&breve_p(&s)?, &h)
        });
        let _ = sc;
    }
}

fn pair_les<R: Rng>(r: &mut Runner, rng: &mut R, pairs: &[(String, Arc<Quotient>)]) {
    for i in 0..PER_POSITION {
        let (name, quot) = &pairs[i % pairs.len()];
        let id = |pos: &str| format!("pair-les/{pos}/{name}/{i:02}");
        let sq = Space::Quot(quot.clone());
        let sx = Space::Abs(quot.x().clone());
        let sa = Space::Abs(quot.a().clone());
        let u = sample::mod_one_cocycle(rng, &sa, 0);
        let h = beta_mod_one(quot, 0, &u).and_then(|b| j(&sq, 2, &b)).and_then(|h| sample::perturb(rng, &h));
        r.case(id("at-pair"), || {
            let h = h?;
            if !is_zero(&quotient_to_abs(&h)?)? {
                return Ok(("sampled element is not in the kernel".into(), "kernel".into()));
            }
            let w = pair_les_preimage_at_pair(&h)?;
            same_char(&j(&sq, 2, &beta_mod_one(quot, 0, &w)?)?, &h)
        });
        let rel = sample::character(rng, &sq, 2);
        let hx = rel.and_then(|rel| quotient_to_abs(&rel)).and_then(|hx| sample::perturb(rng, &hx));
        r.case(id("at-x"), || {
            let hx = hx?;
            if !is_zero(&pullback(quot.incl(), &hx)?)? {
                return Ok(("sampled element is not in the kernel".into(), "kernel".into()));
            }
            same_char(&quotient_to_abs(&pair_les_preimage_at_x(&hx, quot)?)?, &hx)
        });
        let big = sample::character(rng, &sx, 2);
        let g = big.and_then(|b| pullback(quot.incl(), &b)).and_then(|g| sample::perturb(rng, &g));
        r.case(id("at-a"), || {
            let g = g?;
            same_char(&pullback(quot.incl(), &pair_les_preimage_at_a(&g, quot)?)?, &g)
        });
    }
}

fn hopkins_singer<R: Rng>(r: &mut Runner, rng: &mut R, cones: &[(String, Arc<Cone>)], pairs: &[(String, Arc<Quotient>)]) {
    let k = 2;
    for i in 0..PER_POSITION {
        let (name, cone) = &cones[i % cones.len()];
        let id = |pos: &str| format!("{pos}/{name}/{i:02}");
        let sc = Space::Cone(cone.clone());
        let sa = Space::Abs(cone.a().clone());
        let sx = Space::Abs(cone.x().clone());
        // Half of the samples lie in Ĥ₀ by construction.
        let h = if i % 2 == 0 {
            sample::character(rng, &sc, k)
        } else {
            let g = sample::character(rng, &sa, k - 1);
            let f = sample::flat_character(rng, &sc, k);
            g.and_then(|g| breve_i(&g, cone)).and_then(|a| a.add(&f?))
        };
        r.case(id("h0-sequence/identification"), || {
            let h = h?;
            let by_pullback = is_zero(&pullback(cone.phi(), &breve_p(&h)?)?)?;
            let by_periods = has_integral_periods(&sa, k - 1, &h.covariant_derivative()?);
            Ok(same(format!("{} {}", hs_in_h0(&h)?, by_pullback), format!("{by_periods} {by_periods}")))
        });
        let pair_form = sample::omega0(rng, &sc, k);
        r.case(id("h0-sequence/cov-onto"), || {
            let h = with_curvature(&sc, k, &pair_form)?;
            Ok(same(show_rats(&h.covariant_derivative()?), show_rats(&cone.split(k, &pair_form).1)))
        });
        let om = sample::omega0(rng, &sx, k - 1);
        let k0 = iota_x(cone, k, &om).and_then(|h| sample::perturb(rng, &h));
        r.case(id("hs-sequence/kernel"), || {
            let k0 = k0?;
            if !hs_equal(&k0, &zero_like(&k0)?)? {
                return Ok(("sampled element is nonzero in the quotient".into(), "kernel".into()));
            }
            let form = hs_kernel_preimage(&k0)?;
            if !has_integral_periods(&sx, k - 1, &form) {
                return Ok(("preimage form lacks integral periods".into(), "integral periods".into()));
            }
            same_char(&iota_x(cone, k, &form)?, &k0)
        });
    }
    for i in 0..PER_POSITION {
        let (name, quot) = &pairs[i % pairs.len()];
        let cone = Cone::new(quot.incl());
        let id = |pos: &str| format!("{pos}/{name}/{i:02}");
        let sq = Space::Quot(quot.clone());
        let sa = Space::Abs(quot.a().clone());
        let sx = Space::Abs(quot.x().clone());
        // Zero in disguise for even i, generic otherwise.
        let rel = if i % 2 == 0 {
            let w = sample::omega0(rng, &sq, k - 1);
            iota(&sq, k, &w).and_then(|h| sample::perturb(rng, &h))
        } else {
            sample::character(rng, &sq, k)
        };
        let rel2 = rel.clone();
        r.case(id("relative/injective"), || {
            let rel = rel?;
            let img = quotient_to_cone(&rel, &cone)?;
            Ok(same(is_zero(&img)?, is_zero(&rel)?))
        });
        r.case(id("relative-hs/injective"), || {
            let rel = rel2?;
            let img = quotient_to_cone(&rel, &cone)?;
            Ok(same(hs_equal(&img, &zero_like(&img)?)?, is_zero(&rel)?))
        });
        let base = sample::character(rng, &sq, k);
        let par = base.and_then(|b| quotient_to_cone(&b, &cone)).and_then(|p| sample::perturb(rng, &p));
        let om = sample::omega0(rng, &sx, k - 1);
        let par2 = par.clone();
        r.case(id("relative/middle"), || {
            let par = par?;
            if par.covariant_derivative()?.iter().any(|v| v != &Rat::from_integer(0.into())) {
                return Ok(("sampled element is not parallel".into(), "parallel".into()));
            }
            same_char(&quotient_to_cone(&h0_kernel_preimage(&par, quot)?, &cone)?, &par)
        });
        r.case(id("relative-hs/middle"), || {
            let h = par2?.add(&iota_x(&cone, k, &om)?)?;
            let pre = hcheck_preimage(&h, quot)?;
            Ok(holds(hs_equal(&quotient_to_cone(&pre, &cone)?, &h)?, "image of the preimage agrees in the quotient"))
        });
        let theta = sample::omega0(rng, &sa, k - 1);
        r.case(id("relative/cov-onto"), || {
            let h = h0_cov_preimage(&cone, k, &theta)?;
            Ok(same(format!("{} {}", show_rats(&h.covariant_derivative()?), hs_in_h0(&h)?), format!("{} true", show_rats(&theta))))
        });
    }
}

pub fn run(seed: u64) -> super::Report {
    let mut r = Runner::new("exact-sequences");
    let mut rng = super::rng(seed);
    let cones: Vec<(String, Arc<Cone>)> = [fixtures::deg2(), fixtures::pt_in_s1()].into_iter().map(|m| (m.name().to_string(), Cone::new(&m))).collect();
    let pairs: Vec<(String, Arc<Quotient>)> =
        [fixtures::pt_in_s1(), fixtures::torus_pair()].into_iter().map(|m| (m.name().to_string(), Quotient::new(&m).expect("inclusion"))).collect();
    let cone_spaces: Vec<(String, Space)> = cones.iter().map(|(n, c)| (n.clone(), Space::Cone(c.clone()))).collect();
    let pair_spaces: Vec<(String, Space)> = pairs.iter().map(|(n, q)| (n.clone(), Space::Quot(q.clone()))).collect();
    short_sequences(&mut r, &mut rng, "cone-rows", &cone_spaces);
    short_sequences(&mut r, &mut rng, "pair-rows", &pair_spaces);
    cone_les(&mut r, &mut rng, &cones);
    pair_les(&mut r, &mut rng, &pairs);
    hopkins_singer(&mut r, &mut rng, &cones, &pairs);
    r.finish()
}
