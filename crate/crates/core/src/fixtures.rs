//! Small named spaces and maps used throughout the tests and the CLI.
//!
//! Each constructor returns a shared instance, so maps built from these
//! spaces compose without re-validation of the underlying sets.

use std::sync::{Arc, OnceLock};

use crate::linalg::Int;
use crate::simplicial::{product_map, product_space, SimplicialMap, SimplicialSet};

macro_rules! shared {
    ($name:ident, $ty:ty, $body:expr) => {
        pub fn $name() -> Arc<$ty> {
            static CELL: OnceLock<Arc<$ty>> = OnceLock::new();
            CELL.get_or_init(|| $body).clone()
        }
    };
}

shared!(pt, SimplicialSet, SimplicialSet::from_facets("PT", &[vec![0]]).expect("point"));
shared!(int, SimplicialSet, SimplicialSet::from_facets("INT", &[vec![0, 1]]).expect("interval"));
shared!(two_points, SimplicialSet, SimplicialSet::from_facets("S0", &[vec![0], vec![1]]).expect("two points"));
shared!(s1, SimplicialSet, SimplicialSet::from_facets("S1", &[vec![0, 1], vec![1, 2], vec![0, 2]]).expect("circle"));

// Six vertices ordered so that the folding map onto S1 (w -> w/2) is monotone
// on every edge.
shared!(
    s1_6,
    SimplicialSet,
    SimplicialSet::from_facets("S1_6", &[vec![0, 2], vec![2, 4], vec![1, 4], vec![1, 3], vec![3, 5], vec![0, 5]]).expect("hexagon")
);

shared!(deg2, SimplicialMap, SimplicialMap::from_vertex_map("DEG2", &s1_6(), &s1(), &[0, 0, 1, 1, 2, 2]).expect("degree two map"));
shared!(pt_in_s1, SimplicialMap, SimplicialMap::from_vertex_map("PT_S1", &pt(), &s1(), &[0]).expect("base point"));
shared!(id_s1, SimplicialMap, SimplicialMap::identity(&s1()));
shared!(id_pt, SimplicialMap, SimplicialMap::identity(&pt()));
shared!(boundary_of_int, SimplicialMap, SimplicialMap::from_vertex_map("S0_INT", &two_points(), &int(), &[0, 1]).expect("endpoints"));

shared!(torus, SimplicialSet, product_space(&s1(), &s1()));
shared!(s1_x_pt, SimplicialSet, product_space(&s1(), &pt()));
shared!(
    torus_pair,
    SimplicialMap,
    product_map(&id_s1(), &pt_in_s1(), &s1_x_pt(), &torus()).expect("S1 x PT inside S1 x S1")
);

/// The d-fold cover of [`s1`] by a 3d-gon. Walking around the polygon, the
/// vertex at step p gets label `(p mod 3)·d + p div 3`, so dividing a label
/// by d gives its image and the map is monotone on every edge. For d = 2
/// this is [`deg2`].
pub fn cyclic_cover(d: usize) -> Arc<SimplicialMap> {
    assert!(d >= 1, "cover degree must be positive");
    let n = 3 * d;
    let label = |p: usize| (p % 3) * d + p / 3;
    let facets: Vec<Vec<usize>> = (0..n)
        .map(|p| {
            let (a, b) = (label(p), label((p + 1) % n));
            vec![a.min(b), a.max(b)]
        })
        .collect();
    let polygon = SimplicialSet::from_facets(&format!("S1_{n}"), &facets).expect("polygon");
    let vmap: Vec<usize> = (0..n).map(|v| v / d).collect();
    SimplicialMap::from_vertex_map(&format!("DEG{d}"), &polygon, &s1(), &vmap).expect("covering map")
}

/// `e01 + e12 - e02`.
pub fn s1_cycle(s1: &SimplicialSet) -> Vec<Int> {
    s1.chain_from(1, &[("e01", 1), ("e12", 1), ("e02", -1)]).expect("circle labels")
}

/// Fundamental cycle of the hexagon, oriented so that DEG2 maps it to twice
/// [`s1_cycle`].
pub fn s1_6_cycle(s: &SimplicialSet) -> Vec<Int> {
    s.chain_from(1, &[("e02", 1), ("e24", 1), ("e14", -1), ("e13", 1), ("e35", 1), ("e05", -1)])
        .expect("hexagon labels")
}

/// `v0` as the fundamental 0-cycle of the point.
pub fn pt_cycle(p: &SimplicialSet) -> Vec<Int> {
    p.chain_from(0, &[("v0", 1)]).expect("point label")
}

/// `e01` with boundary `v1 - v0`.
pub fn int_chain(i: &SimplicialSet) -> Vec<Int> {
    i.chain_from(1, &[("e01", 1)]).expect("interval label")
}

/// Names of the shipped fixture spaces.
pub const SPACE_NAMES: [&str; 6] = ["PT", "INT", "S0", "S1", "S1_6", "S1xS1"];
/// Names of the shipped fixture maps.
pub const MAP_NAMES: [&str; 6] = ["DEG2", "PT_S1", "ID_S1", "ID_PT", "S0_INT", "S1xPT_S1xS1"];

pub fn space_by_name(name: &str) -> Option<Arc<SimplicialSet>> {
    Some(match name {
        "PT" => pt(),
        "INT" => int(),
        "S0" => two_points(),
        "S1" => s1(),
        "S1_6" => s1_6(),
        "S1xS1" => torus(),
        "S1xPT" => s1_x_pt(),
        _ => return None,
    })
}

pub fn map_by_name(name: &str) -> Option<Arc<SimplicialMap>> {
    Some(match name {
        "DEG2" => deg2(),
        "PT_S1" => pt_in_s1(),
        "ID_S1" => id_s1(),
        "ID_PT" => id_pt(),
        "S0_INT" => boundary_of_int(),
        "S1xPT_S1xS1" => torus_pair(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Cone;

    #[test]
    fn cyclic_covers() {
        assert_eq!(cyclic_cover(2).images(), deg2().images());
        for d in 1..=4 {
            let expected = if d == 1 { "0".to_string() } else { format!("Z/{d}") };
            assert_eq!(Cone::new(&cyclic_cover(d)).chain().homology(1).describe(), expected);
        }
    }
}
