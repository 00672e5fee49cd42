//! Chain-level axioms on every fixture complex: squares of the differentials,
//! the cone differentials against their defining formulas, and the pairing
//! identity `<δu, c> = <u, ∂c>`.

use rand::Rng;

use relchar_core::cone::pair;
use relchar_core::linalg::{to_rat_vec, vec_add, vec_neg, vec_sub};
use relchar_core::{sample, Cone, Int, Quotient, Rat, Space};

use super::{holds, same, show_ints, show_rats, Runner};

pub(crate) fn fixture_spaces() -> Vec<(String, Space)> {
    use relchar_core::fixtures as f;
    let mut out: Vec<(String, Space)> =
        [f::pt(), f::int(), f::two_points(), f::s1(), f::s1_6(), f::torus(), f::s1_x_pt()].into_iter().map(|x| (x.name().to_string(), Space::Abs(x))).collect();
    for m in [f::deg2(), f::pt_in_s1(), f::id_s1(), f::boundary_of_int(), f::torus_pair()] {
        out.push((format!("cone({})", m.name()), Space::Cone(Cone::new(&m))));
    }
    for m in [f::pt_in_s1(), f::boundary_of_int(), f::torus_pair()] {
        out.push((format!("pair({})", m.name()), Space::Quot(Quotient::new(&m).expect("inclusion"))));
    }
    out
}

/// `∂_φ(s, t) = (∂s + φ_* t, -∂t)` assembled from the pieces.
fn cone_boundary_formula(cone: &Cone, n: usize, c: &[Int]) -> Vec<Int> {
    let (s, t) = cone.split(n, c);
    let xs = cone.x().chain().boundary(n as isize, &s);
    let mut x = if n >= 1 { xs } else { Vec::new() };
    if n >= 1 {
        x = vec_add(&x, &cone.phi().pushforward(n - 1, &t));
    }
    let a = if n >= 2 { vec_neg(&cone.a().chain().boundary(n as isize - 1, &t)) } else { Vec::new() };
    x.into_iter().chain(a).collect()
}

/// `δ_φ(ω, ϑ) = (δω, φ^*ω - δϑ)`.
fn cone_coboundary_formula(cone: &Cone, n: usize, u: &[Rat]) -> Vec<Rat> {
    let (w, th) = cone.split(n, u);
    let x = cone.x().chain().coboundary(n as isize, &w);
    let pw = cone.phi().pullback(n, &w);
    let a = if n >= 1 { vec_sub(&pw, &cone.a().chain().coboundary(n as isize - 1, &th)) } else { pw };
    x.into_iter().chain(a).collect()
}

pub fn run(seed: u64, stokes_only: bool) -> super::Report {
    let mut r = Runner::new(if stokes_only { "stokes" } else { "chain-axioms" });
    let mut rng = super::rng(seed);
    let spaces = fixture_spaces();
    let rounds = if stokes_only { 120 } else { 260 };
    for i in 0..rounds {
        let (name, sp) = &spaces[i % spaces.len()];
        let ch = sp.chain();
        let top = ch.len() - 1;
        let n = rng.gen_range(1..=top.max(1));
        let c = sample::chain(&mut rng, sp, n);
        let u = sample::rat_vec(&mut rng, ch.dim(n as isize - 1));
        let id = |what: &str| format!("{name}/{what}/{i:03}");
        r.case(id("pairing"), || {
            let lhs = pair(&ch.coboundary(n as isize - 1, &u), &c);
            let rhs = pair(&u, &ch.boundary(n as isize, &c));
            Ok(same(lhs, rhs))
        });
        if stokes_only {
            continue;
        }
        r.case(id("dd"), || {
            let dd = if n >= 2 { ch.boundary(n as isize - 1, &ch.boundary(n as isize, &c)) } else { Vec::new() };
            Ok(holds(dd.iter().all(|v| v == &Int::from(0)), &format!("∂∂ = {}", show_ints(&dd))))
        });
        r.case(id("deltadelta"), || {
            let dd = ch.coboundary(n as isize, &ch.coboundary(n as isize - 1, &u));
            Ok(holds(dd.iter().all(|v| v == &Rat::from_integer(0.into())), &format!("δδ = {}", show_rats(&dd))))
        });
        match sp {
            Space::Cone(cone) => {
                r.case(id("cone-boundary"), || Ok(same(show_ints(&cone.boundary(n, &c)?), show_ints(&cone_boundary_formula(cone, n, &c)))));
                r.case(id("cone-coboundary"), || {
                    let m = n - 1;
                    Ok(same(show_rats(&cone.coboundary(m, &u)?), show_rats(&cone_coboundary_formula(cone, m, &u))))
                });
            }
            Space::Quot(q) => {
                // The quotient differential is the restriction of the one on X.
                r.case(id("quotient-boundary"), || {
                    let lhs = q.ext0(n - 1, &ch.boundary(n as isize, &c));
                    let full = q.x().chain().boundary(n as isize, &q.ext0(n, &c));
                    let rhs = q.ext0(n - 1, &q.reduce(n - 1, &full));
                    Ok(same(show_ints(&lhs), show_ints(&rhs)))
                });
            }
            Space::Abs(x) => {
                r.case(id("rational-boundary"), || {
                    let lhs = x.chain().boundary_rat(n as isize, &to_rat_vec(&c));
                    Ok(same(show_rats(&lhs), show_rats(&to_rat_vec(&x.boundary(n, &c)?))))
                });
            }
        }
    }
    r.finish()
}
