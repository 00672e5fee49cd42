//! Homology presentations against known groups and against the dense
//! oracle, including the torsion witnesses.

use relchar_core::linalg::vec_scale;
use relchar_core::{fixtures, Cone, FgAbPresentation, Int, Quotient, Space};

use super::chain::fixture_spaces;
use super::{holds, same, show_ints, Runner};
use crate::oracle;

fn describe(free: usize, torsion: &[Int]) -> String {
    let mut parts = Vec::new();
    match free {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn oracle_homology(sp: &Space, n: isize) -> (usize, Vec<Int>) {
    let ch = sp.chain();
    oracle::homology(ch.dim(n), &ch.bd(n).to_dense(), &ch.bd(n + 1).to_dense())
}

fn check_witnesses(r: &mut Runner, id: &str, sp: &Space, n: isize, p: &FgAbPresentation) {
    let ch = sp.chain();
    for (t, (order, (nn, w))) in p.torsion_orders.iter().zip(&p.torsion_witnesses).enumerate() {
        let g = p.generators[t].clone();
        r.case(format!("{id}/witness-{t}"), || {
            let lhs = ch.boundary(n + 1, w);
            Ok(same(show_ints(&lhs), show_ints(&vec_scale(&g, nn))))
        });
        r.case(format!("{id}/witness-order-{t}"), || Ok(same(nn, order)));
        r.case(format!("{id}/not-a-boundary-{t}"), || Ok(holds(ch.is_cycle(n, &g) && ch.bounding_chain(n, &g).is_none(), "generator is a nonbounding cycle")));
    }
}

pub fn run(_seed: u64) -> super::Report {
    let mut r = Runner::new("homology-golden");
    let golden: Vec<(&str, Space, isize, &str)> = vec![
        ("S1", Space::Abs(fixtures::s1()), 1, "Z"),
        ("cone(DEG2)", Space::Cone(Cone::new(&fixtures::deg2())), 1, "Z/2"),
        ("pair(PT_S1)", Space::Quot(Quotient::new(&fixtures::pt_in_s1()).expect("inclusion")), 1, "Z"),
        ("cone(PT_S1)", Space::Cone(Cone::new(&fixtures::pt_in_s1())), 1, "Z"),
        ("S1xS1", Space::Abs(fixtures::torus()), 2, "Z"),
        ("S1xS1", Space::Abs(fixtures::torus()), 1, "Z^2"),
    ];
    for (name, sp, n, expected) in &golden {
        let id = format!("golden/{name}/H{n}");
        let p = sp.chain().homology(*n);
        r.case(format!("{id}/group"), || Ok(same(p.describe(), expected.to_string())));
        r.case(format!("{id}/oracle"), || {
            let (free, tors) = oracle_homology(sp, *n);
            Ok(same(describe(p.free_rank, &p.torsion_orders), describe(free, &tors)))
        });
        check_witnesses(&mut r, &id, sp, *n, p);
    }
    for (name, sp) in fixture_spaces() {
        let ch = sp.chain();
        for n in 0..=ch.len() as isize {
            let id = format!("oracle/{name}/H{n}");
            let p = ch.homology(n);
            r.case(format!("{id}/homology"), || {
                let (free, tors) = oracle_homology(&sp, n);
                Ok(same(describe(p.free_rank, &p.torsion_orders), describe(free, &tors)))
            });
            // Universal coefficients: H^n = Hom(H_n) + Ext(H_{n-1}).
            r.case(format!("{id}/cohomology"), || {
                let c = ch.cohomology(n);
                let (free, _) = oracle_homology(&sp, n);
                let (_, tors) = if n > 0 { oracle_homology(&sp, n - 1) } else { (0, Vec::new()) };
                Ok(same(describe(c.free_rank, &c.torsion_orders), describe(free, &tors)))
            });
            r.case(format!("{id}/coordinates"), || {
                let ok = p.generators.iter().enumerate().all(|(i, g)| {
                    let mut e = vec![Int::from(0); p.num_generators()];
                    e[i] = Int::from(1);
                    p.coordinates(g) == e && p.element(&e) == *g
                });
                Ok(holds(ok, "generator coordinates"))
            });
            check_witnesses(&mut r, &id, &sp, n, p);
        }
    }
    r.finish()
}
