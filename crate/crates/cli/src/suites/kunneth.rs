//! Künneth splittings for cones of DEG2 and of the identity of S1, each
//! crossed with S1: `S K = id` on every basis tensor, and each cycle differs
//! from `K S` of itself by a torsion element with a checked witness.

use relchar_core::kunneth::SplitCoords;
use relchar_core::{fixtures, Cone, ConeProduct, Int, KunnethSplit};

use super::{holds, same, show_ints, Runner};

pub fn run(_seed: u64) -> super::Report {
    let mut r = Runner::new("kunneth");
    for phi in [fixtures::deg2(), fixtures::id_s1()] {
        let cp = ConeProduct::new(&Cone::new(&phi), &fixtures::s1()).expect("product cone");
        for n in 0..=3usize {
            let prefix = format!("{}xS1/deg{n}", phi.name());
            let split = match KunnethSplit::build(&cp, n) {
                Ok(s) => s,
                Err(e) => {
                    r.case(format!("{prefix}/build"), || Err(e));
                    continue;
                }
            };
            for (bi, b) in split.blocks.iter().enumerate() {
                for i in 0..b.left.len() {
                    for j in 0..b.right.len() {
                        let split = &split;
                        let cp = &cp;
                        r.case(format!("{prefix}/sk/{}-{}/{i}-{j}", b.p, b.q), move || {
                            let mut e = SplitCoords::new();
                            e.insert((bi, i, j), Int::from(1));
                            let k = split.k_map(cp, &e)?;
                            if !cp.product.chain().is_cycle(n as isize, &k) {
                                return Ok(("K of a basis tensor is not a cycle".into(), "cycle".into()));
                            }
                            Ok(same(format!("{:?}", split.s_map(cp, &k)?), format!("{e:?}")))
                        });
                    }
                }
            }
            for (zi, (z, (nn, w))) in split.cycles.iter().zip(&split.complement).enumerate() {
                let split = &split;
                let cp = &cp;
                r.case(format!("{prefix}/complement/{zi:02}"), move || {
                    if nn < &Int::from(1) {
                        return Ok((format!("order {nn}"), "positive order".into()));
                    }
                    let ksz = split.k_map(cp, &split.s_map(cp, z)?)?;
                    let lhs: Vec<Int> = z.iter().zip(&ksz).map(|(a, b)| (a - b) * nn).collect();
                    Ok(same(show_ints(&cp.product.chain().boundary(n as isize + 1, w)), show_ints(&lhs)))
                });
            }
            let (split, cp) = (&split, &cp);
            r.case(format!("{prefix}/blocks-cover-rank"), move || {
                let tensors: usize = split.blocks.iter().map(|b| b.left.len() * b.right.len()).sum();
                Ok(holds(tensors <= split.cycles.len() && cp.product.chain().dim(n as isize) >= tensors, "tensor count is at most the cycle rank"))
            });
        }
    }
    r.finish()
}
