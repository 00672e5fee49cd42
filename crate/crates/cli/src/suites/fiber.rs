//! Fiber integration over trivial bundles: the transfer, integration of
//! cochains and characters, naturality, the up-down formula, Stokes for a
//! fiber with boundary and sections built from a bounding fiber.

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use relchar_core::characters::{breve_i, breve_p, iota, pullback, pullback_pair};
use relchar_core::fiber::{base_iota, bundle_map, section_from_bounding};
use relchar_core::kunneth::{cross_char, star};
use relchar_core::linalg::{vec_add, vec_neg};
use relchar_core::simplicial::{ez_chains, integrate, pair_map, product_map, product_space, projection};
use relchar_core::{fixtures, sample, Cone, ConeProduct, Int, SimplicialMap, SimplicialSet, Space, TrivialBundle};

use super::{rng, same, same_char, show_ints, show_rats, Runner};

const SAMPLES: usize = 10;

fn s1_bundle(base: Space) -> TrivialBundle {
    let s1 = fixtures::s1();
    TrivialBundle::closed(base, &s1, 1, fixtures::s1_cycle(&s1)).expect("circle bundle")
}

pub fn run(seed: u64) -> super::Report {
    let mut r = Runner::new("fiber-integration");
    let mut rng = rng(seed);
    let cone = Cone::new(&fixtures::deg2());
    let b = s1_bundle(Space::Cone(cone.clone()));
    transfer(&mut r, &mut rng, &cone, &b);
    diagrams(&mut r, &mut rng, &cone, &b);
    naturality(&mut r, &mut rng);
    up_down(&mut r, &mut rng, &cone, &b);
    correction(&mut r, &mut rng);
    stokes(&mut r, &mut rng, &cone);
    cross_fibers(&mut r, &mut rng, &cone, &b);
    sections(&mut r, &mut rng);
    r.finish()
}

fn transfer<R: Rng>(r: &mut Runner, rng: &mut R, cone: &Arc<Cone>, b: &TrivialBundle) {
    let ch = cone.chain();
    let x = s1_bundle(Space::Abs(cone.x().clone()));
    let a = s1_bundle(Space::Abs(cone.a().clone()));
    let cp = b.cone_product().expect("cone bundle");
    for n in 1..=3usize {
        for i in 0..ch.dim(n as isize) {
            r.case(format!("transfer/chain-map/{n}/{i}"), || {
                let mut e = vec![Int::zero(); ch.dim(n as isize)];
                e[i] = Int::from(1);
                let lhs = b.total().chain().boundary(n as isize + 1, &b.transfer(n, &e)?);
                Ok(same(show_ints(&lhs), show_ints(&b.transfer(n - 1, &ch.boundary(n as isize, &e))?)))
            });
        }
    }
    for s in 0..SAMPLES {
        let n = 1 + s % 2;
        let u = sample::rat_vec(rng, b.total().dim(n as isize + 1));
        let c = sample::chain(rng, &Space::Cone(cone.clone()), n);
        let z = sample::int_vec(rng, cone.x().count(1), 2);
        let c2 = sample::chain(rng, &Space::Cone(cone.clone()), 2);
        r.case(format!("transfer/duality/{s:02}"), || {
            let f = b.fint(n + 1, &u)?;
            Ok(same(integrate(&f, &c), integrate(&u, &b.transfer(n, &c)?)))
        });
        r.case(format!("transfer/fint-commutes-with-delta/{s:02}"), || {
            let du = b.total().chain().coboundary(n as isize + 1, &u);
            Ok(same(show_rats(&ch.coboundary(n as isize, &b.fint(n + 1, &u)?)), show_rats(&b.fint(n + 2, &du)?)))
        });
        r.case(format!("transfer/commutes-with-i/{s:02}"), || {
            let lhs = b.transfer(1, &cone.i_chain(1, &z))?;
            Ok(same(show_ints(&lhs), show_ints(&cp.product.i_chain(2, &x.transfer(1, &z)?))))
        });
        r.case(format!("transfer/commutes-with-p/{s:02}"), || {
            let lhs = cp.product.p_chain(3, &b.transfer(2, &c2)?);
            Ok(same(show_ints(&lhs), show_ints(&a.transfer(1, &cone.p_chain(2, &c2))?)))
        });
    }
}

fn diagrams<R: Rng>(r: &mut Runner, rng: &mut R, cone: &Arc<Cone>, b: &TrivialBundle) {
    let a_bundle = s1_bundle(Space::Abs(cone.a().clone()));
    let x_bundle = s1_bundle(Space::Abs(cone.x().clone()));
    let cp = b.cone_product().expect("cone bundle");
    for s in 0..SAMPLES {
        let h = sample::character(rng, b.total(), 3).expect("sample");
        let h_other = sample::character(rng, b.total(), 3).expect("sample");
        let theta = sample::rat_vec(rng, b.total().dim(2));
        let g = sample::character(rng, a_bundle.total(), 2).expect("sample");
        r.case(format!("integrate/curvature/{s:02}"), || {
            Ok(same(show_rats(b.integrate(&h)?.curvature()), show_rats(&b.fint(3, h.curvature())?)))
        });
        r.case(format!("integrate/additive/{s:02}"), || {
            same_char(&b.integrate(&h.add(&h_other)?)?, &b.integrate(&h)?.add(&b.integrate(&h_other)?)?)
        });
        r.case(format!("integrate/iota/{s:02}"), || {
            same_char(&b.integrate(&iota(b.total(), 3, &theta)?)?, &iota(b.base(), 2, &b.fint(2, &theta)?)?)
        });
        r.case(format!("integrate/breve-i/{s:02}"), || {
            same_char(&b.integrate(&breve_i(&g, &cp.product)?)?, &breve_i(&a_bundle.integrate(&g)?, cone)?)
        });
        r.case(format!("integrate/breve-p/{s:02}"), || {
            same_char(&breve_p(&b.integrate(&h)?)?, &x_bundle.integrate(&breve_p(&h)?)?)
        });
    }
}

fn naturality<R: Rng>(r: &mut Runner, rng: &mut R) {
    let source = Cone::new(&fixtures::deg2());
    let target = Cone::new(&fixtures::id_s1());
    let bs = s1_bundle(Space::Cone(source.clone()));
    let bt = s1_bundle(Space::Cone(target));
    let (ff, gg) = bundle_map(&fixtures::id_s1(), &fixtures::deg2(), &bs, &bt).expect("bundle map");
    let src_cone = &bs.cone_product().expect("cone bundle").product;
    for s in 0..SAMPLES {
        let h = sample::character(rng, bt.total(), 3).expect("sample");
        r.case(format!("integrate/natural/{s:02}"), || {
            let lhs = bs.integrate(&pullback_pair(&ff, &gg, src_cone, &h)?)?;
            same_char(&lhs, &pullback_pair(&fixtures::id_s1(), &fixtures::deg2(), &source, &bt.integrate(&h)?)?)
        });
    }
}

fn up_down<R: Rng>(r: &mut Runner, rng: &mut R, cone: &Arc<Cone>, b: &TrivialBundle) {
    let e = s1_bundle(Space::Abs(cone.x().clone()));
    let sp = Space::Cone(cone.clone());
    for s in 0..SAMPLES {
        let k2 = 2 + s % 2;
        let h = sample::character(rng, &sp, 2).expect("sample");
        let h2 = sample::character(rng, e.total(), k2).expect("sample");
        r.case(format!("integrate/up-down/{s:02}"), || {
            let lhs = b.integrate(&star(&b.pull_up(&h)?, &h2)?)?;
            same_char(&lhs, &star(&h, &e.integrate(&h2)?)?)
        });
    }
}

/// Replacing the fiber cycle by a homologous one moves the integral by a
/// topologically trivial character.
fn correction<R: Rng>(r: &mut Runner, rng: &mut R) {
    let disk = SimplicialSet::from_facets("D2", &[vec![0, 1, 2]]).expect("disk");
    let z = disk.chain_from(1, &[("e01", 1), ("e12", 1), ("e02", -1)]).expect("rim");
    let b = TrivialBundle::closed(Space::Cone(Cone::new(&fixtures::deg2())), &disk, 1, z).expect("disk bundle");
    for s in 0..SAMPLES {
        let m = 1 + (s as i64 % 3);
        let w = disk.chain_from(2, &[("t012", m)]).expect("disk chain");
        let h = sample::character(rng, b.total(), 3).expect("sample");
        r.case(format!("integrate/transfer-correction/{s:02}"), || {
            let shifted = b.shifted(&w)?;
            let corr = b.transfer_correction(&h, &w)?;
            same_char(&shifted.integrate(&h)?, &b.integrate(&h)?.add(&iota(b.base(), 2, &corr)?)?)
        });
    }
}

fn stokes<R: Rng>(r: &mut Runner, rng: &mut R, cone: &Arc<Cone>) {
    let int = fixtures::int();
    let b = TrivialBundle::new(Space::Cone(cone.clone()), &int, 1, fixtures::int_chain(&int)).expect("interval bundle");
    for s in 0..SAMPLES {
        let k = 1 + s % 2;
        let u = sample::rat_vec(rng, b.total().dim(k as isize));
        r.case(format!("stokes/cochains/{s:02}"), || {
            let lhs = cone.chain().coboundary(k as isize - 1, &b.fint(k, &u)?);
            let du = b.total().chain().coboundary(k as isize, &u);
            let mut bnd = b.fint_boundary(k, &u)?;
            if (k + 1) % 2 == 1 {
                bnd = vec_neg(&bnd);
            }
            Ok(same(show_rats(&lhs), show_rats(&vec_add(&b.fint(k + 1, &du)?, &bnd))))
        });
        let h = sample::character(rng, b.total(), 2).expect("sample");
        r.case(format!("stokes/characters/{s:02}"), || {
            let (out, theta) = b.integrate_boundary(&h)?;
            same_char(&out, &base_iota(&b, 2, &theta)?)
        });
    }
}

/// Integration over a product of fibers against the cross product, with
/// fibers S1 over the cone of DEG2 and a point over S1.
fn cross_fibers<R: Rng>(r: &mut Runner, rng: &mut R, cone: &Arc<Cone>, b: &TrivialBundle) {
    let s1 = fixtures::s1();
    let pt = fixtures::pt();
    let b2 = TrivialBundle::closed(Space::Abs(s1.clone()), &pt, 0, fixtures::pt_cycle(&pt)).expect("point bundle");
    let cp_total = ConeProduct::new(&b.cone_product().expect("cone bundle").product, b2.total().as_abs().expect("absolute")).expect("product cone");
    let cp_base = ConeProduct::new(cone, &s1).expect("product cone");
    let ff = product_space(&s1, &pt);
    let zf = ez_chains(&ff, 1, &fixtures::s1_cycle(&s1), 0, &fixtures::pt_cycle(&pt)).expect("fiber cycle");
    let big = TrivialBundle::closed(Space::Cone(cp_base.product.clone()), &ff, 1, zf).expect("product bundle");
    let big_cp = big.cone_product().expect("cone bundle");
    let sx = middle_swap(&big_cp.xy, &cp_total.xy);
    let sa = middle_swap(&big_cp.ay, &cp_total.ay);
    for s in 0..SAMPLES / 2 {
        let h = sample::character(rng, b.total(), 3).expect("sample");
        let h2 = sample::character(rng, b2.total(), 1).expect("sample");
        r.case(format!("integrate/cross-fibers/{s:02}"), || {
            let lhs = cross_char(&b.integrate(&h)?, &b2.integrate(&h2)?, &cp_base)?;
            let pulled = pullback_pair(&sx, &sa, &big_cp.product, &cross_char(&h, &h2, &cp_total)?)?;
            same_char(&lhs, &big.integrate(&pulled)?.neg())
        });
    }
}

/// `(X×X')×(F×F') -> (X×F)×(X'×F')`.
fn middle_swap(src: &Arc<SimplicialSet>, dst: &Arc<SimplicialSet>) -> Arc<SimplicialMap> {
    let p1 = projection(src, true).expect("product");
    let p2 = projection(src, false).expect("product");
    let si = src.product_info().expect("product");
    let di = dst.product_info().expect("product");
    let compose = |outer: &Arc<SimplicialSet>, first: bool, inner: &Arc<SimplicialMap>| {
        SimplicialMap::compose(&projection(outer, first).expect("product"), inner).expect("composable")
    };
    let x = compose(&si.left, true, &p1);
    let xp = compose(&si.left, false, &p1);
    let f = compose(&si.right, true, &p2);
    let fp = compose(&si.right, false, &p2);
    let l = pair_map(&x, &f, &di.left).expect("pair");
    let r = pair_map(&xp, &fp, &di.right).expect("pair");
    pair_map(&l, &r, dst).expect("pair")
}

/// The two-point fiber over S1 bounds the interval; the extension over
/// `A × INT` yields a section of the integrated character.
fn sections<R: Rng>(r: &mut Runner, rng: &mut R) {
    let s1 = fixtures::s1();
    let s0 = fixtures::two_points();
    let int = fixtures::int();
    let j = fixtures::boundary_of_int();
    let bd = int.boundary(1, &fixtures::int_chain(&int)).expect("boundary");
    let z_s0: Vec<Int> = j.images()[0].iter().map(|img| bd[img.cell.idx].clone()).collect();
    let s1_int = product_space(&s1, &int);
    let id_int = SimplicialMap::identity(&int);
    for phi in [fixtures::id_s1(), fixtures::deg2()] {
        let cone = Cone::new(&phi);
        let bundle = TrivialBundle::closed(Space::Abs(s1.clone()), &s0, 0, z_s0.clone()).expect("two-point bundle");
        let over_a = TrivialBundle::new(Space::Abs(cone.a().clone()), &int, 1, fixtures::int_chain(&int)).expect("interval bundle");
        let restrict = product_map(&fixtures::id_s1(), &j, bundle.total().as_abs().expect("absolute"), &s1_int).expect("restriction");
        let up = product_map(&phi, &id_int, over_a.total().as_abs().expect("absolute"), &s1_int).expect("extension");
        for s in 0..SAMPLES / 2 {
            let g = sample::character(rng, &Space::Abs(s1_int.clone()), 2).expect("sample");
            r.case(format!("section/{}/{s:02}", phi.name()), || {
                let h = pullback(&restrict, &g)?;
                let h_ext = pullback(&up, &g)?;
                let sec = section_from_bounding(&bundle, &h, &cone, &over_a, &j, &h_ext)?;
                if !breve_p(&sec)?.equals(&bundle.integrate(&h)?)? {
                    return Ok(("section does not lift the integral".into(), "lifts".into()));
                }
                let cov = vec_neg(&over_a.fint(2, h_ext.curvature())?);
                Ok(same(show_rats(&sec.covariant_derivative()?), show_rats(&cov)))
            });
        }
    }
}
