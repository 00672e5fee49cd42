//! Finite simplicial sets, normalized chains, Eilenberg-Zilber and
//! Alexander-Whitney maps, cup and cross products.
//!
//! A simplex of degree `n` is stored as a nondegenerate cell together with a
//! monotone surjection `[n] -> [dim cell]`; the cell is degenerate exactly
//! when the surjection is not the identity. Chains are dense integer vectors
//! over the nondegenerate cells of one degree, so degenerate simplices vanish
//! automatically.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::complex::ChainData;
use crate::error::{RelError, Result};
use crate::linalg::{zero_int_vec, zero_rat_vec, Int, IntMatrix, Rat};

/// A nondegenerate simplex: its degree and index within that degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub dim: usize,
    pub idx: usize,
}

/// `surj^* cell`, a possibly degenerate simplex of degree `surj.len() - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simp {
    pub cell: Cell,
    pub surj: Vec<usize>,
}

impl Simp {
    pub fn nondeg(cell: Cell) -> Simp {
        Simp { cell, surj: (0..=cell.dim).collect() }
    }

    pub fn degree(&self) -> usize {
        self.surj.len() - 1
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.degree() == self.cell.dim
    }
}

fn is_monotone(f: &[usize]) -> bool {
    f.windows(2).all(|w| w[0] <= w[1])
}

fn is_surjective_onto(f: &[usize], m: usize) -> bool {
    f.first() == Some(&0) && f.last() == Some(&m) && f.windows(2).all(|w| w[1] - w[0] <= 1)
}

/// Collapse the positions where every listed surjection repeats.
/// Returns the reduced surjections and the common collapse map.
fn split_common_degeneracy(maps: &[Vec<usize>]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = maps[0].len() - 1;
    let mut rho = Vec::with_capacity(n + 1);
    let mut keep = Vec::with_capacity(n + 1);
    let mut level = 0usize;
    rho.push(0);
    keep.push(0);
    for k in 0..n {
        let common = maps.iter().all(|f| f[k] == f[k + 1]);
        if !common {
            level += 1;
            keep.push(k + 1);
        }
        rho.push(level);
    }
    let reduced = maps.iter().map(|f| keep.iter().map(|&k| f[k]).collect()).collect();
    (reduced, rho)
}

#[derive(Debug)]
pub struct ProductInfo {
    pub left: Arc<SimplicialSet>,
    pub right: Arc<SimplicialSet>,
    /// Components of each nondegenerate cell, per degree.
    pub parts: Vec<Vec<(Simp, Simp)>>,
    index: HashMap<(Simp, Simp), usize>,
}

impl ProductInfo {
    /// Cell of the product represented by a pair of simplices of equal degree
    /// with no common degeneracy.
    pub fn lookup(&self, a: &Simp, b: &Simp) -> Option<Cell> {
        self.index.get(&(a.clone(), b.clone())).map(|&idx| Cell { dim: a.degree(), idx })
    }
}

/// A finite simplicial set.
#[derive(Debug)]
pub struct SimplicialSet {
    name: String,
    labels: Vec<Vec<String>>,
    /// `faces[n][idx][i]` is the i-th face of cell (n, idx); empty for n = 0.
    faces: Vec<Vec<Vec<Simp>>>,
    product: Option<ProductInfo>,
    chain: ChainData,
}

impl SimplicialSet {
    /// Builds and validates a simplicial set from labels and face data.
    pub fn new(name: impl Into<String>, labels: Vec<Vec<String>>, faces: Vec<Vec<Vec<Simp>>>) -> Result<Arc<Self>> {
        let s = Self::build(name.into(), labels, faces, None)?;
        s.validate()?;
        Ok(Arc::new(s))
    }

    fn build(name: String, labels: Vec<Vec<String>>, faces: Vec<Vec<Vec<Simp>>>, product: Option<ProductInfo>) -> Result<Self> {
        if labels.len() != faces.len() {
            return Err(RelError::SimplicialIdentity("labels and faces disagree on the top degree".into()));
        }
        for (n, per) in faces.iter().enumerate() {
            if per.len() != labels[n].len() {
                return Err(RelError::SimplicialIdentity(format!("degree {n}: {} labels but {} face lists", labels[n].len(), per.len())));
            }
            for (idx, fl) in per.iter().enumerate() {
                let expected = if n == 0 { 0 } else { n + 1 };
                if fl.len() != expected {
                    return Err(RelError::SimplicialIdentity(format!(
                        "simplex {} has {} faces, expected {expected}",
                        labels[n][idx],
                        fl.len()
                    )));
                }
                for f in fl {
                    if f.degree() + 1 != n
                        || f.cell.dim >= labels.len()
                        || f.cell.idx >= labels[f.cell.dim].len()
                        || f.cell.dim > f.degree()
                        || !is_surjective_onto(&f.surj, f.cell.dim)
                    {
                        return Err(RelError::SimplicialIdentity(format!("malformed face of {}", labels[n][idx])));
                    }
                }
            }
        }
        let dims: Vec<usize> = labels.iter().map(|l| l.len()).collect();
        let mut bds = vec![IntMatrix::zeros(0, dims.first().copied().unwrap_or(0))];
        for n in 1..dims.len() {
            let mut m = IntMatrix::zeros(dims[n - 1], dims[n]);
            for (idx, fl) in faces[n].iter().enumerate() {
                for (i, f) in fl.iter().enumerate() {
                    if f.is_nondegenerate() {
                        let sign = if i % 2 == 0 { Int::one() } else { -Int::one() };
                        let cur = m.get(f.cell.idx, idx);
                        m.set(f.cell.idx, idx, cur + sign);
                    }
                }
            }
            bds.push(m);
        }
        Ok(SimplicialSet { name, labels, faces, product, chain: ChainData::new(dims, bds) })
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on every cell.
    pub fn validate(&self) -> Result<()> {
        for n in 2..self.faces.len() {
            for idx in 0..self.faces[n].len() {
                let c = Simp::nondeg(Cell { dim: n, idx });
                for j in 0..=n {
                    for i in 0..j {
                        let lhs = self.face(&self.face(&c, j), i);
                        let rhs = self.face(&self.face(&c, i), j - 1);
                        if lhs != rhs {
                            return Err(RelError::SimplicialIdentity(format!(
                                "d_{i} d_{j} != d_{} d_{i} on {}",
                                j - 1,
                                self.labels[n][idx]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn chain(&self) -> &ChainData {
        &self.chain
    }

    pub fn top_degree(&self) -> usize {
        self.labels.len().saturating_sub(1)
    }

    pub fn count(&self, n: usize) -> usize {
        self.labels.get(n).map_or(0, |l| l.len())
    }

    pub fn label(&self, c: Cell) -> &str {
        &self.labels[c.dim][c.idx]
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Option<Cell> {
        for (dim, ls) in self.labels.iter().enumerate() {
            if let Some(idx) = ls.iter().position(|l| l == label) {
                return Some(Cell { dim, idx });
            }
        }
        None
    }

    pub fn cell_faces(&self, c: Cell) -> &[Simp] {
        &self.faces[c.dim][c.idx]
    }

    pub fn faces(&self) -> &[Vec<Vec<Simp>>] {
        &self.faces
    }

    /// Same object, or identical combinatorial data under the same name.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || (self.name == other.name && self.labels == other.labels && self.faces == other.faces)
    }

    pub fn product_info(&self) -> Option<&ProductInfo> {
        self.product.as_ref()
    }

    /// `theta^* cell` for a monotone `theta: [k] -> [dim cell]`.
    pub fn apply(&self, cell: Cell, theta: &[usize]) -> Simp {
        debug_assert!(is_monotone(theta));
        let m = cell.dim;
        if is_surjective_onto(theta, m) {
            return Simp { cell, surj: theta.to_vec() };
        }
        // theta misses some j; factor it through the j-th coface.
        let j = (0..=m).find(|v| !theta.contains(v)).expect("non-surjective map misses a vertex");
        let reduced: Vec<usize> = theta.iter().map(|&t| if t > j { t - 1 } else { t }).collect();
        let f = &self.faces[m][cell.idx][j];
        let composed: Vec<usize> = reduced.iter().map(|&t| f.surj[t]).collect();
        self.apply(f.cell, &composed)
    }

    /// Restriction of a simplex along a monotone map into its degree.
    pub fn restrict(&self, s: &Simp, theta: &[usize]) -> Simp {
        let composed: Vec<usize> = theta.iter().map(|&t| s.surj[t]).collect();
        self.apply(s.cell, &composed)
    }

    pub fn face(&self, s: &Simp, i: usize) -> Simp {
        let n = s.degree();
        let delta: Vec<usize> = (0..n).map(|t| if t < i { t } else { t + 1 }).collect();
        self.restrict(s, &delta)
    }

    /// Front face on vertices `0..=p`.
    pub fn front(&self, s: &Simp, p: usize) -> Simp {
        self.restrict(s, &(0..=p).collect::<Vec<_>>())
    }

    /// Back face on vertices `n-q..=n`.
    pub fn back(&self, s: &Simp, q: usize) -> Simp {
        let n = s.degree();
        self.restrict(s, &((n - q)..=n).collect::<Vec<_>>())
    }

    /// Basis chain of a cell.
    pub fn basis_chain(&self, c: Cell) -> Vec<Int> {
        let mut v = zero_int_vec(self.count(c.dim));
        v[c.idx] = Int::one();
        v
    }

    /// Chain from labelled coefficients.
    pub fn chain_from(&self, degree: usize, terms: &[(&str, i64)]) -> Result<Vec<Int>> {
        let mut v = zero_int_vec(self.count(degree));
        for (label, coef) in terms {
            let c = self.find(label).ok_or_else(|| RelError::SpaceMismatch(format!("no simplex {label} in {}", self.name)))?;
            if c.dim != degree {
                return Err(RelError::DegreeOutOfRange(format!("{label} has degree {}", c.dim)));
            }
            v[c.idx] += Int::from(*coef);
        }
        Ok(v)
    }

    pub fn boundary(&self, degree: usize, c: &[Int]) -> Result<Vec<Int>> {
        if degree == 0 {
            return Err(RelError::DegreeOutOfRange("boundary of a 0-chain".into()));
        }
        self.check_len(degree, c.len())?;
        Ok(self.chain.boundary(degree as isize, c))
    }

    pub fn coboundary(&self, degree: usize, u: &[Rat]) -> Result<Vec<Rat>> {
        self.check_len(degree, u.len())?;
        Ok(self.chain.coboundary(degree as isize, u))
    }

    fn check_len(&self, degree: usize, len: usize) -> Result<()> {
        if len != self.count(degree) {
            return Err(RelError::DimensionMismatch(format!(
                "vector of length {len} in degree {degree} of {}, expected {}",
                self.name,
                self.count(degree)
            )));
        }
        Ok(())
    }

    /// Simplicial set of an ordered simplicial complex given by its facets
    /// as vertex lists. Vertices are labelled `v<i>`, higher simplices by
    /// their vertex strings.
    pub fn from_facets(name: &str, facets: &[Vec<usize>]) -> Result<Arc<Self>> {
        let mut by_dim: Vec<std::collections::BTreeSet<Vec<usize>>> = Vec::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                let d = sub.len() - 1;
                while by_dim.len() <= d {
                    by_dim.push(Default::default());
                }
                by_dim[d].insert(sub);
            }
        }
        let lists: Vec<Vec<Vec<usize>>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index: Vec<HashMap<Vec<usize>, usize>> =
            lists.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        let wide = lists.first().map_or(false, |vs| vs.iter().any(|v| v[0] >= 10));
        let label = |s: &[usize]| -> String {
            let prefix = match s.len() {
                1 => "v",
                2 => "e",
                3 => "t",
                _ => "s",
            };
            let sep = if wide { "_" } else { "" };
            format!("{prefix}{}", s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep))
        };
        let labels = lists.iter().map(|l| l.iter().map(|s| label(s)).collect()).collect();
        let faces = lists
            .iter()
            .enumerate()
            .map(|(d, l)| {
                l.iter()
                    .map(|s| {
                        if d == 0 {
                            return Vec::new();
                        }
                        (0..=d)
                            .map(|i| {
                                let mut f = s.clone();
                                f.remove(i);
                                Simp::nondeg(Cell { dim: d - 1, idx: index[d - 1][&f] })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::new(name, labels, faces)
    }
}

/// Ordered lists of steps `(da, db)` from (0,0) to (p,q), each step moving
/// in at least one coordinate, of total length `n`.
fn grid_paths(p: usize, q: usize, n: usize, allow_diagonal: bool) -> Vec<Vec<(u8, u8)>> {
    fn rec(p: usize, q: usize, n: usize, diag: bool, cur: &mut Vec<(u8, u8)>, out: &mut Vec<Vec<(u8, u8)>>) {
        if n == 0 {
            if p == 0 && q == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if p + q < n || (p.max(q)) > n {
            return;
        }
        for step in [(1u8, 0u8), (0, 1), (1, 1)] {
            if step == (1, 1) && !diag {
                continue;
            }
            let (a, b) = (step.0 as usize, step.1 as usize);
            if a > p || b > q {
                continue;
            }
            cur.push(step);
            rec(p - a, q - b, n - 1, diag, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(p, q, n, allow_diagonal, &mut Vec::new(), &mut out);
    out
}

fn path_surjections(path: &[(u8, u8)]) -> (Vec<usize>, Vec<usize>) {
    let mut a = vec![0usize];
    let mut b = vec![0usize];
    for &(da, db) in path {
        a.push(a.last().unwrap() + da as usize);
        b.push(b.last().unwrap() + db as usize);
    }
    (a, b)
}

/// The product `X x Y` with cells enumerated by lattice paths.
pub fn product_space(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Arc<SimplicialSet> {
    let top = x.top_degree() + y.top_degree();
    let mut parts: Vec<Vec<(Simp, Simp)>> = vec![Vec::new(); top + 1];
    for n in 0..=top {
        for p in 0..=x.top_degree().min(n) {
            for xi in 0..x.count(p) {
                for q in 0..=y.top_degree().min(n) {
                    if p + q < n {
                        continue;
                    }
                    for yi in 0..y.count(q) {
                        for path in grid_paths(p, q, n, true) {
                            let (a, b) = path_surjections(&path);
                            parts[n].push((
                                Simp { cell: Cell { dim: p, idx: xi }, surj: a },
                                Simp { cell: Cell { dim: q, idx: yi }, surj: b },
                            ));
                        }
                    }
                }
            }
        }
    }
    while parts.len() > 1 && parts.last().map_or(false, |p| p.is_empty()) {
        parts.pop();
    }
    let index: HashMap<(Simp, Simp), usize> = parts
        .iter()
        .flat_map(|per| per.iter().enumerate().map(|(i, pr)| (pr.clone(), i)))
        .collect();
    let info = ProductInfo { left: x.clone(), right: y.clone(), parts, index };
    let simp_label = |s: &SimplicialSet, v: &Simp| -> String {
        if v.is_nondegenerate() {
            s.label(v.cell).to_string()
        } else {
            format!("{}{:?}", s.label(v.cell), v.surj)
        }
    };
    let labels: Vec<Vec<String>> = info
        .parts
        .iter()
        .map(|per| per.iter().map(|(a, b)| format!("({},{})", simp_label(x, a), simp_label(y, b))).collect())
        .collect();
    let faces: Vec<Vec<Vec<Simp>>> = info
        .parts
        .iter()
        .enumerate()
        .map(|(n, per)| {
            per.iter()
                .map(|(a, b)| {
                    if n == 0 {
                        return Vec::new();
                    }
                    (0..=n).map(|i| normalize_pair(&info, &x.face(a, i), &y.face(b, i))).collect()
                })
                .collect()
        })
        .collect();
    let name = format!("{}x{}", x.name(), y.name());
    Arc::new(SimplicialSet::build(name, labels, faces, Some(info)).expect("product data is well formed"))
}

/// The product simplex represented by a pair of simplices of equal degree.
pub fn normalize_pair(info: &ProductInfo, a: &Simp, b: &Simp) -> Simp {
    debug_assert_eq!(a.degree(), b.degree());
    let (red, rho) = split_common_degeneracy(&[a.surj.clone(), b.surj.clone()]);
    let ra = Simp { cell: a.cell, surj: red[0].clone() };
    let rb = Simp { cell: b.cell, surj: red[1].clone() };
    let cell = info.lookup(&ra, &rb).expect("reduced pair is a product cell");
    Simp { cell, surj: rho }
}

/// Simplicial map given by the image of every nondegenerate cell.
#[derive(Debug)]
pub struct SimplicialMap {
    name: String,
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    images: Vec<Vec<Simp>>,
}

impl SimplicialMap {
    pub fn new(name: impl Into<String>, source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, images: Vec<Vec<Simp>>) -> Result<Arc<Self>> {
        let m = SimplicialMap { name: name.into(), source, target, images };
        m.validate()?;
        Ok(Arc::new(m))
    }

    fn validate(&self) -> Result<()> {
        let s = &self.source;
        let t = &self.target;
        if self.images.len() < s.labels.len() {
            return Err(RelError::InvalidMap(format!("{}: missing images", self.name)));
        }
        for n in 0..s.labels.len() {
            if self.images[n].len() != s.count(n) {
                return Err(RelError::InvalidMap(format!("{}: wrong number of images in degree {n}", self.name)));
            }
            for (idx, img) in self.images[n].iter().enumerate() {
                if img.degree() != n || img.cell.dim >= t.labels.len() || img.cell.idx >= t.count(img.cell.dim) || !is_surjective_onto(&img.surj, img.cell.dim) {
                    return Err(RelError::InvalidMap(format!("{}: bad image of {}", self.name, s.labels[n][idx])));
                }
                if n == 0 {
                    continue;
                }
                let c = Simp::nondeg(Cell { dim: n, idx });
                for i in 0..=n {
                    if self.apply(&s.face(&c, i)) != t.face(img, i) {
                        return Err(RelError::InvalidMap(format!(
                            "{}: does not commute with face {i} of {}",
                            self.name, s.labels[n][idx]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn images(&self) -> &[Vec<Simp>] {
        &self.images
    }

    /// Image of an arbitrary simplex of the source.
    pub fn apply(&self, s: &Simp) -> Simp {
        let img = &self.images[s.cell.dim][s.cell.idx];
        Simp { cell: img.cell, surj: s.surj.iter().map(|&t| img.surj[t]).collect() }
    }

    pub fn identity(x: &Arc<SimplicialSet>) -> Arc<Self> {
        let images = (0..=x.top_degree()).map(|n| (0..x.count(n)).map(|i| Simp::nondeg(Cell { dim: n, idx: i })).collect()).collect();
        Arc::new(SimplicialMap { name: format!("id_{}", x.name()), source: x.clone(), target: x.clone(), images })
    }

    /// Builds a map by evaluating `f` on every nondegenerate source cell.
    pub fn from_fn(name: impl Into<String>, source: &Arc<SimplicialSet>, target: &Arc<SimplicialSet>, f: impl Fn(&Simp) -> Simp) -> Result<Arc<Self>> {
        let images = (0..=source.top_degree())
            .map(|n| (0..source.count(n)).map(|i| f(&Simp::nondeg(Cell { dim: n, idx: i }))).collect())
            .collect();
        Self::new(name, source.clone(), target.clone(), images)
    }

    /// Map of ordered complexes determined by a vertex map.
    pub fn from_vertex_map(name: &str, source: &Arc<SimplicialSet>, target: &Arc<SimplicialSet>, vmap: &[usize]) -> Result<Arc<Self>> {
        let vertices_of = |x: &SimplicialSet, c: Cell| -> Vec<usize> {
            (0..=c.dim).map(|v| x.restrict(&Simp::nondeg(c), &[v]).cell.idx).collect()
        };
        // Index target cells by their vertex lists.
        let mut tindex: HashMap<Vec<usize>, Cell> = HashMap::new();
        for n in 0..=target.top_degree() {
            for i in 0..target.count(n) {
                let c = Cell { dim: n, idx: i };
                tindex.insert(vertices_of(target, c), c);
            }
        }
        let images = (0..=source.top_degree())
            .map(|n| {
                (0..source.count(n))
                    .map(|i| {
                        let vs: Vec<usize> = vertices_of(source, Cell { dim: n, idx: i }).iter().map(|&v| vmap[v]).collect();
                        if !is_monotone(&vs) {
                            return Err(RelError::InvalidMap(format!("{name}: vertex map is not order preserving")));
                        }
                        let mut distinct = vs.clone();
                        distinct.dedup();
                        let cell = *tindex.get(&distinct).ok_or_else(|| RelError::InvalidMap(format!("{name}: image {distinct:?} is not a simplex")))?;
                        let mut surj = Vec::with_capacity(vs.len());
                        let mut level = 0;
                        for k in 0..vs.len() {
                            if k > 0 && vs[k] != vs[k - 1] {
                                level += 1;
                            }
                            surj.push(level);
                        }
                        Ok(Simp { cell, surj })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, source.clone(), target.clone(), images)
    }

    pub fn compose(g: &Arc<Self>, f: &Arc<Self>) -> Result<Arc<Self>> {
        if !f.target().same_as(g.source()) {
            return Err(RelError::SpaceMismatch(format!("cannot compose {} after {}", g.name, f.name)));
        }
        Self::from_fn(format!("{}.{}", g.name, f.name), f.source(), g.target(), |s| g.apply(&f.apply(s)))
    }

    /// Pushforward matrix in degree n (target rows, source columns).
    pub fn matrix(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.target.count(n), self.source.count(n));
        if n < self.images.len() {
            for (idx, img) in self.images[n].iter().enumerate() {
                if img.is_nondegenerate() {
                    m.set(img.cell.idx, idx, Int::one());
                }
            }
        }
        m
    }

    pub fn pushforward(&self, n: usize, c: &[Int]) -> Vec<Int> {
        let mut out = zero_int_vec(self.target.count(n));
        for (idx, v) in c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let img = &self.images[n][idx];
            if img.is_nondegenerate() {
                out[img.cell.idx] += v;
            }
        }
        out
    }

    pub fn pullback<T: Clone + Zero>(&self, n: usize, u: &[T]) -> Vec<T> {
        (0..self.source.count(n))
            .map(|idx| {
                let img = &self.images[n][idx];
                if img.is_nondegenerate() {
                    u[img.cell.idx].clone()
                } else {
                    T::zero()
                }
            })
            .collect()
    }

    /// True when distinct cells go to distinct nondegenerate cells.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().flatten().all(|img| img.is_nondegenerate() && seen.insert(img.cell))
    }
}

/// Projection of a product onto one factor.
pub fn projection(p: &Arc<SimplicialSet>, first: bool) -> Result<Arc<SimplicialMap>> {
    let info = p.product_info().ok_or_else(|| RelError::SpaceMismatch(format!("{} is not a product", p.name())))?;
    let target = if first { info.left.clone() } else { info.right.clone() };
    SimplicialMap::from_fn(if first { "pr1" } else { "pr2" }, p, &target, |s| {
        let (a, b) = &info.parts[s.cell.dim][s.cell.idx];
        let part = if first { a } else { b };
        Simp { cell: part.cell, surj: s.surj.iter().map(|&t| part.surj[t]).collect() }
    })
}

/// The map `z -> (f z, g z)` into a product.
pub fn pair_map(f: &Arc<SimplicialMap>, g: &Arc<SimplicialMap>, product: &Arc<SimplicialSet>) -> Result<Arc<SimplicialMap>> {
    let info = product.product_info().ok_or_else(|| RelError::SpaceMismatch("target is not a product".into()))?;
    if !f.source().same_as(g.source()) || !f.target().same_as(&info.left) || !g.target().same_as(&info.right) {
        return Err(RelError::SpaceMismatch("pair map factors do not match the product".into()));
    }
    SimplicialMap::from_fn(format!("<{},{}>", f.name(), g.name()), f.source(), product, |s| normalize_pair(info, &f.apply(s), &g.apply(s)))
}

/// `f x g` between products.
pub fn product_map(f: &Arc<SimplicialMap>, g: &Arc<SimplicialMap>, source: &Arc<SimplicialSet>, target: &Arc<SimplicialSet>) -> Result<Arc<SimplicialMap>> {
    let p1 = projection(source, true)?;
    let p2 = projection(source, false)?;
    let a = SimplicialMap::compose(f, &p1)?;
    let b = SimplicialMap::compose(g, &p2)?;
    let m = pair_map(&a, &b, target)?;
    SimplicialMap::new(format!("{}x{}", f.name(), g.name()), m.source.clone(), m.target.clone(), m.images.clone())
}

/// Formal sum of tensors of basis cells.
pub type Tensor = std::collections::BTreeMap<(Cell, Cell), Int>;

pub fn tensor_add(t: &mut Tensor, key: (Cell, Cell), v: Int) {
    let e = t.entry(key).or_default();
    *e += v;
    if e.is_zero() {
        t.remove(&key);
    }
}

/// Tensor product of two chains.
pub fn tensor_of(a_deg: usize, a: &[Int], b_deg: usize, b: &[Int]) -> Tensor {
    let mut t = Tensor::new();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                tensor_add(&mut t, (Cell { dim: a_deg, idx: i }, Cell { dim: b_deg, idx: j }), x * y);
            }
        }
    }
    t
}

/// Boundary on tensors: `∂(a⊗b) = ∂a⊗b + (-1)^|a| a⊗∂b`.
pub fn tensor_boundary(x: &SimplicialSet, y: &SimplicialSet, t: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for ((a, b), v) in t {
        if a.dim > 0 {
            for (i, f) in x.cell_faces(*a).iter().enumerate() {
                if f.is_nondegenerate() {
                    let s = if i % 2 == 0 { v.clone() } else { -v.clone() };
                    tensor_add(&mut out, (f.cell, *b), s);
                }
            }
        }
        if b.dim > 0 {
            for (i, f) in y.cell_faces(*b).iter().enumerate() {
                if f.is_nondegenerate() {
                    let s = if (a.dim + i) % 2 == 0 { v.clone() } else { -v.clone() };
                    tensor_add(&mut out, (*a, f.cell), s);
                }
            }
        }
    }
    out
}

/// Shuffle sign: parity of pairs where a second-factor step precedes a
/// first-factor step.
fn shuffle_sign(path: &[(u8, u8)]) -> bool {
    let mut seen_b = 0usize;
    let mut inversions = 0usize;
    for &(da, _) in path {
        if da == 1 {
            inversions += seen_b;
        } else {
            seen_b += 1;
        }
    }
    inversions % 2 == 1
}

/// Eilenberg-Zilber shuffle map `C(X) ⊗ C(Y) -> C(X x Y)` in one degree.
pub fn ez(product: &SimplicialSet, t: &Tensor, degree: usize) -> Result<Vec<Int>> {
    let info = product.product_info().ok_or_else(|| RelError::SpaceMismatch(format!("{} is not a product", product.name())))?;
    let mut out = zero_int_vec(product.count(degree));
    for ((a, b), v) in t {
        if a.dim + b.dim != degree {
            return Err(RelError::DegreeOutOfRange(format!("tensor term of degree {} in ez of degree {degree}", a.dim + b.dim)));
        }
        for path in grid_paths(a.dim, b.dim, degree, false) {
            let (sa, sb) = path_surjections(&path);
            let cell = info
                .lookup(&Simp { cell: *a, surj: sa }, &Simp { cell: *b, surj: sb })
                .expect("shuffle simplices are product cells");
            if shuffle_sign(&path) {
                out[cell.idx] -= v;
            } else {
                out[cell.idx] += v;
            }
        }
    }
    Ok(out)
}

/// `ez(a ⊗ b)` for two chains.
pub fn ez_chains(product: &SimplicialSet, a_deg: usize, a: &[Int], b_deg: usize, b: &[Int]) -> Result<Vec<Int>> {
    ez(product, &tensor_of(a_deg, a, b_deg, b), a_deg + b_deg)
}

/// Alexander-Whitney map `C(X x Y) -> C(X) ⊗ C(Y)`.
pub fn aw(product: &SimplicialSet, degree: usize, c: &[Int]) -> Result<Tensor> {
    let info = product.product_info().ok_or_else(|| RelError::SpaceMismatch(format!("{} is not a product", product.name())))?;
    let mut out = Tensor::new();
    for (idx, v) in c.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        for (a, b) in aw_cell(info, Cell { dim: degree, idx }) {
            tensor_add(&mut out, (a, b), v.clone());
        }
    }
    Ok(out)
}

/// Nonvanishing front ⊗ back terms of one product cell.
fn aw_cell(info: &ProductInfo, c: Cell) -> Vec<(Cell, Cell)> {
    let (a, b) = &info.parts[c.dim][c.idx];
    let n = c.dim;
    let mut out = Vec::new();
    for i in 0..=n {
        let fa = info.left.front(a, i);
        if !fa.is_nondegenerate() {
            continue;
        }
        let bb = info.right.back(b, n - i);
        if bb.is_nondegenerate() {
            out.push((fa.cell, bb.cell));
        }
    }
    out
}

/// Cochain cross product `(u × v)(σ) = (u ⊗ v)(aw σ)` on `X x Y`.
pub fn cross_cochain<T>(product: &SimplicialSet, p: usize, u: &[T], q: usize, v: &[T]) -> Result<Vec<T>>
where
    T: Clone + Zero + std::ops::Mul<Output = T>,
{
    let info = product.product_info().ok_or_else(|| RelError::SpaceMismatch(format!("{} is not a product", product.name())))?;
    let n = p + q;
    let out = (0..product.count(n))
        .map(|idx| {
            let mut s = T::zero();
            for (a, b) in aw_cell(info, Cell { dim: n, idx }) {
                if a.dim == p && b.dim == q {
                    s = s + u[a.idx].clone() * v[b.idx].clone();
                }
            }
            s
        })
        .collect();
    Ok(out)
}

/// Cup product with front/back face convention.
pub fn cup<T>(x: &SimplicialSet, p: usize, u: &[T], q: usize, v: &[T]) -> Vec<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T>,
{
    let n = p + q;
    (0..x.count(n))
        .map(|idx| {
            let s = Simp::nondeg(Cell { dim: n, idx });
            let f = x.front(&s, p);
            let b = x.back(&s, q);
            if f.is_nondegenerate() && b.is_nondegenerate() {
                u[f.cell.idx].clone() * v[b.cell.idx].clone()
            } else {
                T::zero()
            }
        })
        .collect()
}

/// Pairing of a cochain with a chain.
pub fn integrate(u: &[Rat], c: &[Int]) -> Rat {
    assert_eq!(u.len(), c.len(), "cochain and chain live in different degrees");
    let mut s = Rat::zero();
    for (x, y) in u.iter().zip(c) {
        if !y.is_zero() && !x.is_zero() {
            s += x * Rat::from_integer(y.clone());
        }
    }
    s
}

pub fn indicator(x: &SimplicialSet, c: Cell) -> Vec<Rat> {
    let mut u = zero_rat_vec(x.count(c.dim));
    u[c.idx] = Rat::one();
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{rat, to_rat_vec};

    #[test]
    fn circle_boundary_examples() {
        let s1 = fixtures::s1();
        let e01 = s1.chain_from(1, &[("e01", 1)]).unwrap();
        assert_eq!(s1.boundary(1, &e01).unwrap(), s1.chain_from(0, &[("v1", 1), ("v0", -1)]).unwrap());
        let z = fixtures::s1_cycle(&s1);
        assert!(s1.boundary(1, &z).unwrap().iter().all(|v| v.is_zero()));
        assert!(s1.boundary(0, &s1.chain_from(0, &[]).unwrap()).is_err());
    }

    #[test]
    fn coboundary_of_vertex_indicator() {
        let s1 = fixtures::s1();
        let u = indicator(&s1, s1.find("v0").unwrap());
        let du = s1.coboundary(0, &u).unwrap();
        let e01 = s1.find("e01").unwrap().idx;
        let e02 = s1.find("e02").unwrap().idx;
        let e12 = s1.find("e12").unwrap().idx;
        assert_eq!(du[e01], rat(-1, 1));
        assert_eq!(du[e02], rat(-1, 1));
        assert_eq!(du[e12], rat(0, 1));
    }

    #[test]
    fn torus_counts_and_homology() {
        let s1 = fixtures::s1();
        let t = product_space(&s1, &s1);
        let counts: Vec<usize> = (0..=2).map(|n| t.count(n)).collect();
        assert_eq!(counts, vec![9, 27, 18]);
        assert_eq!(t.chain().homology(1).free_rank, 2);
        assert_eq!(t.chain().homology(2).free_rank, 1);
        assert!(t.validate().is_ok());
    }

    #[test]
    fn point_is_a_unit() {
        let s1 = fixtures::s1();
        let p = product_space(&fixtures::pt(), &s1);
        for n in 0..=1 {
            assert_eq!(p.count(n), s1.count(n));
        }
    }

    #[test]
    fn ez_of_two_edges_has_two_shuffles() {
        let s1 = fixtures::s1();
        let t = product_space(&s1, &s1);
        let e = s1.chain_from(1, &[("e01", 1)]).unwrap();
        let c = ez_chains(&t, 1, &e, 1, &e).unwrap();
        let mut nz: Vec<i64> = c.iter().filter(|v| !v.is_zero()).map(|v| i64::try_from(v).unwrap()).collect();
        nz.sort();
        assert_eq!(nz, vec![-1, 1]);
    }

    #[test]
    fn ez_is_a_chain_map_and_aw_inverts_it() {
        let s1 = fixtures::s1();
        let t = product_space(&s1, &s1);
        for p in 0..=1 {
            for q in 0..=1 {
                for a in 0..s1.count(p) {
                    for b in 0..s1.count(q) {
                        let mut tt = Tensor::new();
                        tt.insert((Cell { dim: p, idx: a }, Cell { dim: q, idx: b }), Int::one());
                        let c = ez(&t, &tt, p + q).unwrap();
                        assert_eq!(aw(&t, p + q, &c).unwrap(), tt);
                        if p + q > 0 {
                            let lhs = t.boundary(p + q, &c).unwrap();
                            let rhs = ez(&t, &tensor_boundary(&s1, &s1, &tt), p + q - 1).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cup_of_circle_generators_on_torus() {
        let s1 = fixtures::s1();
        let t = product_space(&s1, &s1);
        let g = &s1.chain().cohomology(1).generators[0];
        let one = vec![Rat::one(); s1.count(0)];
        let gq = to_rat_vec(g);
        let a = cross_cochain(&t, 1, &gq, 0, &one).unwrap();
        let b = cross_cochain(&t, 0, &one, 1, &gq).unwrap();
        let ab = cup(&t, 1, &a, 1, &b);
        let fund = &t.chain().homology(2).generators[0];
        let val = integrate(&ab, fund);
        assert!(val == Rat::one() || val == -Rat::one());
    }

    #[test]
    fn degree_two_map_pushes_fundamental_cycle_to_twice() {
        let f = fixtures::deg2();
        let z6 = fixtures::s1_6_cycle(f.source());
        let z3 = fixtures::s1_cycle(f.target());
        let img = f.pushforward(1, &z6);
        let h = f.target().chain().homology(1);
        let c_img = h.coordinates(&img);
        let c_z3 = h.coordinates(&z3);
        assert_eq!(c_img[0], Int::from(2) * &c_z3[0]);
    }

    #[test]
    fn bad_face_data_is_rejected() {
        // An "edge" whose faces are swapped breaks nothing, but a triangle
        // whose faces do not share vertices must fail the identities.
        let labels = vec![
            vec!["a".into(), "b".into(), "c".into()],
            vec!["ab".into(), "bc".into(), "ac".into()],
            vec!["abc".into()],
        ];
        let v = |i| Simp::nondeg(Cell { dim: 0, idx: i });
        let e = |i| Simp::nondeg(Cell { dim: 1, idx: i });
        let faces = vec![
            vec![vec![], vec![], vec![]],
            vec![vec![v(1), v(0)], vec![v(2), v(1)], vec![v(2), v(0)]],
            vec![vec![e(1), e(1), e(0)]],
        ];
        let err = SimplicialSet::new("bad", labels, faces).unwrap_err();
        assert!(matches!(err, RelError::SimplicialIdentity(_)));
    }

    #[test]
    fn stokes_on_torus() {
        let s1 = fixtures::s1();
        let t = product_space(&s1, &s1);
        let u: Vec<Rat> = (0..t.count(1)).map(|i| rat(i as i64 % 5 - 2, 3)).collect();
        let c: Vec<Int> = (0..t.count(2)).map(|i| Int::from(i as i64 % 3 - 1)).collect();
        let lhs = integrate(&t.coboundary(1, &u).unwrap(), &c);
        let rhs = integrate(&u, &t.boundary(2, &c).unwrap());
        assert_eq!(lhs, rhs);
    }
}
