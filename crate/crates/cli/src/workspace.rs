//! Named store of spaces, maps, characters, bundles and Künneth splits,
//! persisted as a directory of canonical JSON documents.
//!
//! Every exact number is written as a decimal string (`"-3"`, `"5/6"`), and
//! object keys are emitted in sorted order, so saving a freshly loaded
//! workspace reproduces the input byte for byte. The on-disk schema is
//! described in `docs/workspace-format.md`.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use relchar_core::characters::{iota, j, with_curvature};
use relchar_core::linalg::{rat, Int, Rat};
use relchar_core::simplicial::{indicator, product_map, product_space};
use relchar_core::{fixtures, Cell, Character, Cone, ConeProduct, KunnethSplit, Quotient, RelError, Simp, SimplicialMap, SimplicialSet, Space, TrivialBundle};

pub const DOCUMENTS: [&str; 5] = ["bundles", "characters", "maps", "spaces", "splits"];

/// Environment variable naming a fixture directory to use instead of the
/// one shipped with the crate.
pub const FIXTURES_ENV: &str = "RELCHAR_FIXTURES";

#[derive(Debug, thiserror::Error)]
pub enum WorkspaceError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
    #[error("{context}: {source}")]
    Core { context: String, source: RelError },
}

pub type WsResult<T> = std::result::Result<T, WorkspaceError>;

fn invalid(context: impl Into<String>, message: impl Into<String>) -> WorkspaceError {
    WorkspaceError::Invalid { context: context.into(), message: message.into() }
}

fn core(context: impl Into<String>) -> impl FnOnce(RelError) -> WorkspaceError {
    let context = context.into();
    move |source| WorkspaceError::Core { context, source }
}

/// Where a character lives, by workspace name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SpaceRef {
    Abs(String),
    Cone(String),
    Pair(String),
}

impl SpaceRef {
    /// `S1`, `cone:DEG2` or `pair:PT_S1`.
    pub fn parse(text: &str) -> SpaceRef {
        if let Some(m) = text.strip_prefix("cone:") {
            SpaceRef::Cone(m.to_string())
        } else if let Some(m) = text.strip_prefix("pair:") {
            SpaceRef::Pair(m.to_string())
        } else {
            SpaceRef::Abs(text.to_string())
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SpaceRef::Abs(n) => json!({ "abs": n }),
            SpaceRef::Cone(n) => json!({ "cone": n }),
            SpaceRef::Pair(n) => json!({ "pair": n }),
        }
    }

    fn from_json(v: &Value, ctx: &str) -> WsResult<SpaceRef> {
        let obj = as_object(v, ctx)?;
        if obj.len() != 1 {
            return Err(invalid(ctx, "space reference needs exactly one of abs, cone, pair"));
        }
        let (kind, name) = obj.iter().next().expect("one entry");
        let name = as_str(name, ctx)?.to_string();
        match kind.as_str() {
            "abs" => Ok(SpaceRef::Abs(name)),
            "cone" => Ok(SpaceRef::Cone(name)),
            "pair" => Ok(SpaceRef::Pair(name)),
            other => Err(invalid(ctx, format!("unknown space kind {other}"))),
        }
    }
}

impl std::fmt::Display for SpaceRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpaceRef::Abs(n) => write!(f, "{n}"),
            SpaceRef::Cone(n) => write!(f, "cone:{n}"),
            SpaceRef::Pair(n) => write!(f, "pair:{n}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum SpaceDoc {
    Explicit,
    Product(String, String),
}

#[derive(Clone, Debug)]
pub struct SpaceEntry {
    pub set: Arc<SimplicialSet>,
    pub doc: SpaceDoc,
}

#[derive(Clone, Debug)]
pub enum MapDoc {
    Explicit { source: String, target: String },
    Identity(String),
    Product { factors: (String, String), source: String, target: String },
}

#[derive(Clone, Debug)]
pub struct MapEntry {
    pub map: Arc<SimplicialMap>,
    pub doc: MapDoc,
    pub cone: Arc<Cone>,
    /// Present when the map is injective on simplices.
    pub quot: Option<Arc<Quotient>>,
}

#[derive(Clone, Debug)]
pub struct CharEntry {
    pub space: SpaceRef,
    pub character: Character,
}

#[derive(Clone, Debug)]
pub struct BundleEntry {
    pub base: SpaceRef,
    pub fiber: String,
    pub dim: usize,
    pub bundle: TrivialBundle,
}

#[derive(Clone, Debug)]
pub struct SplitEntry {
    pub map: String,
    pub space: String,
    pub degree: usize,
    pub product: ConeProduct,
    pub split: KunnethSplit,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub spaces: BTreeMap<String, SpaceEntry>,
    pub maps: BTreeMap<String, MapEntry>,
    pub characters: BTreeMap<String, CharEntry>,
    pub bundles: BTreeMap<String, BundleEntry>,
    pub splits: BTreeMap<String, SplitEntry>,
}

// ---------------------------------------------------------------------------
// number and simplex encoding

pub fn int_json(v: &Int) -> Value {
    Value::String(v.to_string())
}

pub fn rat_json(v: &Rat) -> Value {
    Value::String(v.to_string())
}

pub fn ints_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn rats_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn parse_int(text: &str) -> Option<Int> {
    text.trim().parse().ok()
}

pub fn parse_rat(text: &str) -> Option<Rat> {
    let t = text.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rat::from_integer(t.parse().ok()?)),
    }
}

fn as_object<'a>(v: &'a Value, ctx: &str) -> WsResult<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| invalid(ctx, "expected an object"))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> WsResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| invalid(ctx, "expected an array"))
}

fn as_str<'a>(v: &'a Value, ctx: &str) -> WsResult<&'a str> {
    v.as_str().ok_or_else(|| invalid(ctx, "expected a string"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, ctx: &str) -> WsResult<&'a Value> {
    obj.get(key).ok_or_else(|| invalid(ctx, format!("missing field {key}")))
}

fn usize_field(obj: &Map<String, Value>, key: &str, ctx: &str) -> WsResult<usize> {
    as_str(field(obj, key, ctx)?, ctx)?.parse().map_err(|_| invalid(ctx, format!("{key} is not a nonnegative integer string")))
}

fn ints_field(obj: &Map<String, Value>, key: &str, ctx: &str) -> WsResult<Vec<Int>> {
    as_array(field(obj, key, ctx)?, ctx)?
        .iter()
        .map(|x| parse_int(as_str(x, ctx)?).ok_or_else(|| invalid(ctx, format!("{key}: bad integer {x}"))))
        .collect()
}

fn rats_field(obj: &Map<String, Value>, key: &str, ctx: &str) -> WsResult<Vec<Rat>> {
    as_array(field(obj, key, ctx)?, ctx)?
        .iter()
        .map(|x| parse_rat(as_str(x, ctx)?).ok_or_else(|| invalid(ctx, format!("{key}: bad rational {x}"))))
        .collect()
}

/// The stored form of a character living on `space`.
pub fn character_json(space: &SpaceRef, h: &Character) -> Value {
    json!({
        "space": space.to_json(),
        "degree": h.degree().to_string(),
        "c": ints_json(h.cocycle()),
        "lift": rats_json(h.lift()),
        "curv": rats_json(h.curvature()),
    })
}

/// `label` for a nondegenerate simplex, `label@0,0,1` for `surj^* label`.
fn simp_text(x: &SimplicialSet, s: &Simp) -> String {
    let label = x.label(s.cell);
    if s.is_nondegenerate() {
        label.to_string()
    } else {
        let surj: Vec<String> = s.surj.iter().map(|v| v.to_string()).collect();
        format!("{label}@{}", surj.join(","))
    }
}

fn parse_simp(text: &str, cells: &BTreeMap<&str, Cell>, ctx: &str) -> WsResult<Simp> {
    let (label, surj) = match text.split_once('@') {
        Some((l, s)) => (l, Some(s)),
        None => (text, None),
    };
    let cell = *cells.get(label).ok_or_else(|| invalid(ctx, format!("unknown simplex {label}")))?;
    let surj = match surj {
        None => (0..=cell.dim).collect(),
        Some(s) => s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| invalid(ctx, format!("bad degeneracy {text}"))))
            .collect::<WsResult<Vec<_>>>()?,
    };
    if surj.is_empty() {
        return Err(invalid(ctx, format!("empty degeneracy in {text}")));
    }
    Ok(Simp { cell, surj })
}

fn cell_index(x: &SimplicialSet) -> BTreeMap<&str, Cell> {
    let mut out = BTreeMap::new();
    for (dim, ls) in x.labels().iter().enumerate() {
        for (idx, l) in ls.iter().enumerate() {
            out.insert(l.as_str(), Cell { dim, idx });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// encoding of objects

fn explicit_space_json(x: &SimplicialSet) -> Value {
    let simplices: Vec<Value> = x.labels().iter().map(|ls| json!(ls)).collect();
    let mut faces = Map::new();
    for (dim, per) in x.faces().iter().enumerate().skip(1) {
        for (idx, fl) in per.iter().enumerate() {
            let label = x.label(Cell { dim, idx });
            faces.insert(label.to_string(), Value::Array(fl.iter().map(|f| Value::String(simp_text(x, f))).collect()));
        }
    }
    json!({ "simplices": simplices, "faces": faces })
}

fn explicit_map_json(m: &SimplicialMap, source: &str, target: &str) -> Value {
    let mut images = Map::new();
    for (dim, per) in m.images().iter().enumerate() {
        for (idx, img) in per.iter().enumerate() {
            let label = m.source().label(Cell { dim, idx });
            images.insert(label.to_string(), Value::String(simp_text(m.target(), img)));
        }
    }
    json!({ "source": source, "target": target, "images": images })
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Canonical JSON text of every document, keyed by document name.
    pub fn documents(&self) -> BTreeMap<&'static str, String> {
        let mut spaces = Map::new();
        for (name, e) in &self.spaces {
            let v = match &e.doc {
                SpaceDoc::Explicit => explicit_space_json(&e.set),
                SpaceDoc::Product(l, r) => json!({ "product": [l, r] }),
            };
            spaces.insert(name.clone(), v);
        }
        let mut maps = Map::new();
        for (name, e) in &self.maps {
            let v = match &e.doc {
                MapDoc::Explicit { source, target } => explicit_map_json(&e.map, source, target),
                MapDoc::Identity(x) => json!({ "identity": x }),
                MapDoc::Product { factors, source, target } => {
                    json!({ "product": [factors.0, factors.1], "source": source, "target": target })
                }
            };
            maps.insert(name.clone(), v);
        }
        let mut characters = Map::new();
        for (name, e) in &self.characters {
            characters.insert(name.clone(), character_json(&e.space, &e.character));
        }
        let mut bundles = Map::new();
        for (name, e) in &self.bundles {
            bundles.insert(
                name.clone(),
                json!({
                    "base": e.base.to_json(),
                    "fiber": e.fiber,
                    "dim": e.dim.to_string(),
                    "chain": ints_json(e.bundle.fundamental_chain()),
                }),
            );
        }
        let mut splits = Map::new();
        for (name, e) in &self.splits {
            splits.insert(name.clone(), json!({ "map": e.map, "space": e.space, "degree": e.degree.to_string() }));
        }
        let render = |m: Map<String, Value>| {
            let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json values always serialize");
            s.push('\n');
            s
        };
        BTreeMap::from([
            ("bundles", render(bundles)),
            ("characters", render(characters)),
            ("maps", render(maps)),
            ("spaces", render(spaces)),
            ("splits", render(splits)),
        ])
    }

    pub fn save(&self, dir: &Path) -> WsResult<()> {
        fs::create_dir_all(dir).map_err(|source| WorkspaceError::Io { path: dir.display().to_string(), source })?;
        for (name, text) in self.documents() {
            let path = dir.join(format!("{name}.json"));
            fs::write(&path, text).map_err(|source| WorkspaceError::Io { path: path.display().to_string(), source })?;
        }
        Ok(())
    }

    /// Reads and revalidates a workspace directory. Missing documents count
    /// as empty.
    pub fn load(dir: &Path) -> WsResult<Self> {
        let mut docs = BTreeMap::new();
        for name in DOCUMENTS {
            let path = dir.join(format!("{name}.json"));
            let value = if path.exists() {
                let text = fs::read_to_string(&path).map_err(|source| WorkspaceError::Io { path: path.display().to_string(), source })?;
                serde_json::from_str::<Value>(&text).map_err(|e| WorkspaceError::Parse {
                    path: path.display().to_string(),
                    line: e.line(),
                    column: e.column(),
                    message: e.to_string(),
                })?
            } else {
                Value::Object(Map::new())
            };
            let obj = value.as_object().cloned().ok_or_else(|| invalid(path.display().to_string(), "document must be a JSON object"))?;
            docs.insert(name, obj);
        }
        Self::from_documents(&docs)
    }

    pub fn from_documents(docs: &BTreeMap<&str, Map<String, Value>>) -> WsResult<Self> {
        let empty = Map::new();
        let doc = |k: &str| docs.get(k).unwrap_or(&empty);
        let mut ws = Workspace::new();
        let space_docs = doc("spaces");
        for name in space_docs.keys() {
            ws.load_space(name, space_docs, &mut BTreeSet::new())?;
        }
        let map_docs = doc("maps");
        for name in map_docs.keys() {
            ws.load_map(name, map_docs, &mut BTreeSet::new())?;
        }
        for (name, v) in doc("characters") {
            let ctx = format!("characters.{name}");
            let obj = as_object(v, &ctx)?;
            let space = SpaceRef::from_json(field(obj, "space", &ctx)?, &ctx)?;
            let sp = ws.resolve(&space).map_err(|e| invalid(&ctx, e.to_string()))?;
            let k = usize_field(obj, "degree", &ctx)?;
            let h = Character::new(sp, k, ints_field(obj, "c", &ctx)?, rats_field(obj, "lift", &ctx)?, rats_field(obj, "curv", &ctx)?).map_err(core(&ctx))?;
            ws.characters.insert(name.clone(), CharEntry { space, character: h });
        }
        for (name, v) in doc("bundles") {
            let ctx = format!("bundles.{name}");
            let obj = as_object(v, &ctx)?;
            let base = SpaceRef::from_json(field(obj, "base", &ctx)?, &ctx)?;
            let fiber = as_str(field(obj, "fiber", &ctx)?, &ctx)?.to_string();
            let dim = usize_field(obj, "dim", &ctx)?;
            let chain = ints_field(obj, "chain", &ctx)?;
            ws.add_bundle(name, base, &fiber, dim, chain).map_err(|e| invalid(&ctx, e.to_string()))?;
        }
        for (name, v) in doc("splits") {
            let ctx = format!("splits.{name}");
            let obj = as_object(v, &ctx)?;
            let map = as_str(field(obj, "map", &ctx)?, &ctx)?.to_string();
            let space = as_str(field(obj, "space", &ctx)?, &ctx)?.to_string();
            let degree = usize_field(obj, "degree", &ctx)?;
            ws.add_split(name, &map, &space, degree).map_err(|e| invalid(&ctx, e.to_string()))?;
        }
        Ok(ws)
    }

    fn load_space(&mut self, name: &str, docs: &Map<String, Value>, visiting: &mut BTreeSet<String>) -> WsResult<Arc<SimplicialSet>> {
        if let Some(e) = self.spaces.get(name) {
            return Ok(e.set.clone());
        }
        let ctx = format!("spaces.{name}");
        let v = docs.get(name).ok_or_else(|| invalid(&ctx, "unknown space"))?;
        if !visiting.insert(name.to_string()) {
            return Err(invalid(&ctx, "product definitions are cyclic"));
        }
        let obj = as_object(v, &ctx)?;
        if let Some(p) = obj.get("product") {
            let parts = as_array(p, &ctx)?;
            if parts.len() != 2 {
                return Err(invalid(&ctx, "product needs two factors"));
            }
            let l = as_str(&parts[0], &ctx)?.to_string();
            let r = as_str(&parts[1], &ctx)?.to_string();
            let ls = self.load_space(&l, docs, visiting)?;
            let rs = self.load_space(&r, docs, visiting)?;
            let set = product_space(&ls, &rs);
            self.spaces.insert(name.to_string(), SpaceEntry { set: set.clone(), doc: SpaceDoc::Product(l, r) });
            return Ok(set);
        }
        let labels: Vec<Vec<String>> = as_array(field(obj, "simplices", &ctx)?, &ctx)?
            .iter()
            .map(|row| as_array(row, &ctx)?.iter().map(|l| as_str(l, &ctx).map(str::to_string)).collect())
            .collect::<WsResult<_>>()?;
        let mut seen = BTreeSet::new();
        for l in labels.iter().flatten() {
            if l.contains('@') || !seen.insert(l.as_str()) {
                return Err(invalid(&ctx, format!("simplex label {l} is repeated or contains '@'")));
            }
        }
        let face_docs = as_object(field(obj, "faces", &ctx)?, &ctx)?;
        let mut cells = BTreeMap::new();
        for (dim, ls) in labels.iter().enumerate() {
            for (idx, l) in ls.iter().enumerate() {
                cells.insert(l.as_str(), Cell { dim, idx });
            }
        }
        let mut faces = Vec::new();
        for (dim, ls) in labels.iter().enumerate() {
            let mut per = Vec::new();
            for l in ls {
                if dim == 0 {
                    if face_docs.contains_key(l) {
                        return Err(invalid(&ctx, format!("vertex {l} cannot have faces")));
                    }
                    per.push(Vec::new());
                    continue;
                }
                let fl = as_array(face_docs.get(l).ok_or_else(|| invalid(&ctx, format!("no faces for {l}")))?, &ctx)?;
                per.push(fl.iter().map(|f| parse_simp(as_str(f, &ctx)?, &cells, &ctx)).collect::<WsResult<Vec<_>>>()?);
            }
            faces.push(per);
        }
        if let Some(extra) = face_docs.keys().find(|k| !cells.contains_key(k.as_str())) {
            return Err(invalid(&ctx, format!("faces given for unknown simplex {extra}")));
        }
        let set = SimplicialSet::new(name, labels, faces).map_err(core(&ctx))?;
        self.spaces.insert(name.to_string(), SpaceEntry { set: set.clone(), doc: SpaceDoc::Explicit });
        Ok(set)
    }

    pub fn space(&self, name: &str) -> std::result::Result<&Arc<SimplicialSet>, String> {
        self.spaces.get(name).map(|e| &e.set).ok_or_else(|| format!("unknown space {name}"))
    }

    fn load_map(&mut self, name: &str, docs: &Map<String, Value>, visiting: &mut BTreeSet<String>) -> WsResult<Arc<SimplicialMap>> {
        if let Some(e) = self.maps.get(name) {
            return Ok(e.map.clone());
        }
        let ctx = format!("maps.{name}");
        let v = docs.get(name).ok_or_else(|| invalid(&ctx, "unknown map"))?;
        if !visiting.insert(name.to_string()) {
            return Err(invalid(&ctx, "product definitions are cyclic"));
        }
        let obj = as_object(v, &ctx)?;
        let get_space = |ws: &Self, key: &str| -> WsResult<(String, Arc<SimplicialSet>)> {
            let n = as_str(field(obj, key, &ctx)?, &ctx)?.to_string();
            let s = ws.space(&n).map_err(|e| invalid(&ctx, e))?.clone();
            Ok((n, s))
        };
        let (map, doc) = if let Some(x) = obj.get("identity") {
            let n = as_str(x, &ctx)?.to_string();
            let s = self.space(&n).map_err(|e| invalid(&ctx, e))?;
            (SimplicialMap::identity(s), MapDoc::Identity(n))
        } else if let Some(p) = obj.get("product") {
            let parts = as_array(p, &ctx)?;
            if parts.len() != 2 {
                return Err(invalid(&ctx, "product needs two factors"));
            }
            let f = as_str(&parts[0], &ctx)?.to_string();
            let g = as_str(&parts[1], &ctx)?.to_string();
            let fm = self.load_map(&f, docs, visiting)?;
            let gm = self.load_map(&g, docs, visiting)?;
            let (sn, s) = get_space(self, "source")?;
            let (tn, t) = get_space(self, "target")?;
            let m = product_map(&fm, &gm, &s, &t).map_err(core(&ctx))?;
            (m, MapDoc::Product { factors: (f, g), source: sn, target: tn })
        } else {
            let (sn, s) = get_space(self, "source")?;
            let (tn, t) = get_space(self, "target")?;
            let imgs = as_object(field(obj, "images", &ctx)?, &ctx)?;
            let tcells = cell_index(&t);
            let mut images = Vec::new();
            for (dim, ls) in s.labels().iter().enumerate() {
                let mut per = Vec::new();
                for l in ls {
                    let img = imgs.get(l).ok_or_else(|| invalid(&ctx, format!("no image for {l}")))?;
                    per.push(parse_simp(as_str(img, &ctx)?, &tcells, &ctx)?);
                }
                let _ = dim;
                images.push(per);
            }
            let m = SimplicialMap::new(name, s, t, images).map_err(core(&ctx))?;
            (m, MapDoc::Explicit { source: sn, target: tn })
        };
        self.insert_map(name, map.clone(), doc);
        Ok(map)
    }

    pub fn insert_space(&mut self, name: &str, set: Arc<SimplicialSet>, doc: SpaceDoc) {
        self.spaces.insert(name.to_string(), SpaceEntry { set, doc });
    }

    pub fn insert_map(&mut self, name: &str, map: Arc<SimplicialMap>, doc: MapDoc) {
        let cone = Cone::new(&map);
        let quot = if map.is_injective() { Quotient::new(&map).ok() } else { None };
        self.maps.insert(name.to_string(), MapEntry { map, doc, cone, quot });
    }

    pub fn resolve(&self, r: &SpaceRef) -> std::result::Result<Space, String> {
        match r {
            SpaceRef::Abs(n) => Ok(Space::Abs(self.space(n)?.clone())),
            SpaceRef::Cone(n) => Ok(Space::Cone(self.map_entry(n)?.cone.clone())),
            SpaceRef::Pair(n) => {
                let e = self.map_entry(n)?;
                e.quot.clone().map(Space::Quot).ok_or_else(|| format!("{n} is not an inclusion"))
            }
        }
    }

    pub fn map_entry(&self, name: &str) -> std::result::Result<&MapEntry, String> {
        self.maps.get(name).ok_or_else(|| format!("unknown map {name}"))
    }

    pub fn character(&self, name: &str) -> std::result::Result<&Character, String> {
        self.characters.get(name).map(|e| &e.character).ok_or_else(|| format!("unknown character {name}"))
    }

    /// Workspace reference for a space built by some operation, if one of
    /// the stored spaces or maps describes it.
    pub fn find_ref(&self, sp: &Space) -> Option<SpaceRef> {
        match sp {
            Space::Abs(x) => self.spaces.iter().find(|(_, e)| e.set.same_as(x)).map(|(n, _)| SpaceRef::Abs(n.clone())),
            Space::Cone(c) => self
                .maps
                .iter()
                .find(|(_, e)| Arc::ptr_eq(&e.cone, c) || Space::Cone(e.cone.clone()).same_as(sp))
                .map(|(n, _)| SpaceRef::Cone(n.clone())),
            Space::Quot(q) => self
                .maps
                .iter()
                .find(|(_, e)| e.quot.is_some() && e.map.source().same_as(q.a()) && e.map.target().same_as(q.x()) && e.map.images() == q.incl().images())
                .map(|(n, _)| SpaceRef::Pair(n.clone())),
        }
    }

    /// Name of the stored product `l x r`, registering it when absent.
    pub fn ensure_product_space(&mut self, l: &str, r: &str) -> std::result::Result<String, String> {
        let ls = self.space(l)?.clone();
        let rs = self.space(r)?.clone();
        let p = product_space(&ls, &rs);
        if let Some(SpaceRef::Abs(n)) = self.find_ref(&Space::Abs(p.clone())) {
            return Ok(n);
        }
        let name = format!("{l}x{r}");
        if self.spaces.contains_key(&name) {
            return Err(format!("space name {name} is taken by a different space"));
        }
        self.insert_space(&name, p, SpaceDoc::Product(l.into(), r.into()));
        Ok(name)
    }

    /// Name of the stored map `φ x id_Y`, registering it and the spaces it
    /// needs when absent.
    pub fn ensure_product_with_identity(&mut self, map: &str, other: &str) -> std::result::Result<String, String> {
        let e = self.map_entry(map)?.clone();
        let (a, x) = (self.name_of(e.map.source())?, self.name_of(e.map.target())?);
        let ay = self.ensure_product_space(&a, other)?;
        let xy = self.ensure_product_space(&x, other)?;
        let id_name = self.ensure_identity(other)?;
        let id = self.maps[&id_name].map.clone();
        let m = product_map(&e.map, &id, &self.spaces[&ay].set, &self.spaces[&xy].set).map_err(|e| e.to_string())?;
        if let Some((n, _)) = self.maps.iter().find(|(_, f)| f.map.source().same_as(m.source()) && f.map.target().same_as(m.target()) && f.map.images() == m.images()) {
            return Ok(n.clone());
        }
        let name = format!("{map}x{other}");
        if self.maps.contains_key(&name) {
            return Err(format!("map name {name} is taken by a different map"));
        }
        self.insert_map(&name, m, MapDoc::Product { factors: (map.into(), id_name), source: ay, target: xy });
        Ok(name)
    }

    fn ensure_identity(&mut self, space: &str) -> std::result::Result<String, String> {
        let s = self.space(space)?.clone();
        if let Some((n, _)) = self.maps.iter().find(|(_, f)| f.map.source().same_as(&s) && f.map.target().same_as(&s) && f.map.images() == SimplicialMap::identity(&s).images()) {
            return Ok(n.clone());
        }
        let name = format!("ID_{space}");
        if self.maps.contains_key(&name) {
            return Err(format!("map name {name} is taken by a different map"));
        }
        self.insert_map(&name, SimplicialMap::identity(&s), MapDoc::Identity(space.into()));
        Ok(name)
    }

    pub fn name_of(&self, x: &Arc<SimplicialSet>) -> std::result::Result<String, String> {
        match self.find_ref(&Space::Abs(x.clone())) {
            Some(SpaceRef::Abs(n)) => Ok(n),
            _ => Err(format!("space {} is not stored in the workspace", x.name())),
        }
    }

    /// Stores a character, finding (or registering) a name for its space.
    pub fn insert_character(&mut self, name: &str, h: Character) -> std::result::Result<(), String> {
        let space = match self.find_ref(h.space()) {
            Some(r) => r,
            None => self.register_space_of(h.space())?,
        };
        self.characters.insert(name.to_string(), CharEntry { space, character: h });
        Ok(())
    }

    /// Registers products produced by cross products so that their results
    /// can be stored.
    fn register_space_of(&mut self, sp: &Space) -> std::result::Result<SpaceRef, String> {
        match sp {
            Space::Abs(x) => {
                let info = x.product_info().ok_or_else(|| format!("space {} is not stored in the workspace", x.name()))?;
                let (l, r) = (self.name_of(&info.left)?, self.name_of(&info.right)?);
                Ok(SpaceRef::Abs(self.ensure_product_space(&l, &r)?))
            }
            Space::Cone(c) => {
                let missing = || format!("{} is not stored in the workspace", sp.describe());
                let (ai, xi) = (c.a().product_info().ok_or_else(missing)?, c.x().product_info().ok_or_else(missing)?);
                let other = self.name_of(&ai.right)?;
                // Any stored map whose product with the identity is this cone will do.
                let candidates: Vec<String> = self
                    .maps
                    .iter()
                    .filter(|(_, e)| e.map.source().same_as(&ai.left) && e.map.target().same_as(&xi.left))
                    .map(|(n, _)| n.clone())
                    .collect();
                for base in candidates {
                    let r = SpaceRef::Cone(self.ensure_product_with_identity(&base, &other)?);
                    if self.resolve(&r)?.same_as(sp) {
                        return Ok(r);
                    }
                }
                Err(missing())
            }
            Space::Quot(_) => Err(format!("{} is not stored in the workspace", sp.describe())),
        }
    }

    pub fn add_bundle(&mut self, name: &str, base: SpaceRef, fiber: &str, dim: usize, chain: Vec<Int>) -> std::result::Result<(), String> {
        let sp = self.resolve(&base)?;
        let f = self.space(fiber)?.clone();
        let bundle = TrivialBundle::new(sp, &f, dim, chain).map_err(|e| e.to_string())?;
        self.bundles.insert(name.to_string(), BundleEntry { base, fiber: fiber.to_string(), dim, bundle });
        Ok(())
    }

    pub fn add_split(&mut self, name: &str, map: &str, space: &str, degree: usize) -> std::result::Result<(), String> {
        let cone = self.map_entry(map)?.cone.clone();
        let other = self.space(space)?.clone();
        let product = ConeProduct::new(&cone, &other).map_err(|e| e.to_string())?;
        let split = KunnethSplit::build(&product, degree).map_err(|e| e.to_string())?;
        self.splits.insert(name.to_string(), SplitEntry { map: map.into(), space: space.into(), degree, product, split });
        Ok(())
    }

    /// The fixture workspace built directly from the library constructors.
    pub fn builtin() -> Self {
        let mut ws = Workspace::new();
        for (name, set) in [("PT", fixtures::pt()), ("INT", fixtures::int()), ("S0", fixtures::two_points()), ("S1", fixtures::s1()), ("S1_6", fixtures::s1_6())] {
            ws.insert_space(name, set, SpaceDoc::Explicit);
        }
        ws.insert_space("S1xS1", fixtures::torus(), SpaceDoc::Product("S1".into(), "S1".into()));
        ws.insert_space("S1xPT", fixtures::s1_x_pt(), SpaceDoc::Product("S1".into(), "PT".into()));
        let explicit = |s: &str, t: &str| MapDoc::Explicit { source: s.into(), target: t.into() };
        ws.insert_map("DEG2", fixtures::deg2(), explicit("S1_6", "S1"));
        ws.insert_map("PT_S1", fixtures::pt_in_s1(), explicit("PT", "S1"));
        ws.insert_map("S0_INT", fixtures::boundary_of_int(), explicit("S0", "INT"));
        ws.insert_map("ID_S1", fixtures::id_s1(), MapDoc::Identity("S1".into()));
        ws.insert_map("ID_PT", fixtures::id_pt(), MapDoc::Identity("PT".into()));
        ws.insert_map(
            "S1xPT_S1xS1",
            fixtures::torus_pair(),
            MapDoc::Product { factors: ("ID_S1".into(), "PT_S1".into()), source: "S1xPT".into(), target: "S1xS1".into() },
        );

        let deg2 = Space::Cone(ws.maps["DEG2"].cone.clone());
        let flat2tor = j(&deg2, 2, &torsion_dual_cochain(&deg2)).expect("flat torsion character");
        ws.insert_character("flat2tor", flat2tor).expect("cone of a stored map");
        let s1 = Space::Abs(fixtures::s1());
        let mut u = vec![Rat::zero(); 3];
        u[0] = rat(1, 3);
        ws.insert_character("hol3", j(&s1, 2, &u).expect("flat holonomy")).expect("stored space");
        let s1_theta = iota(&s1, 1, &[rat(1, 4), rat(0, 1), rat(-1, 2)]).expect("degree one");
        ws.insert_character("fun4", s1_theta).expect("stored space");
        let torus = Space::Abs(fixtures::torus());
        let vol = indicator(&fixtures::torus(), Cell { dim: 2, idx: 0 });
        ws.insert_character("vol", with_curvature(&torus, 2, &vol).expect("integral periods")).expect("stored space");

        let s1_cycle = fixtures::s1_cycle(&fixtures::s1());
        ws.add_bundle("S1_over_S1", SpaceRef::Abs("S1".into()), "S1", 1, s1_cycle.clone()).expect("closed bundle");
        ws.add_bundle("S1_over_DEG2", SpaceRef::Cone("DEG2".into()), "S1", 1, s1_cycle).expect("cone bundle");
        ws.add_bundle("INT_over_S1", SpaceRef::Abs("S1".into()), "INT", 1, fixtures::int_chain(&fixtures::int())).expect("interval bundle");

        ws.add_split("DEG2_S1_1", "DEG2", "S1", 1).expect("split");
        ws.add_split("DEG2_S1_2", "DEG2", "S1", 2).expect("split");
        ws.add_split("ID_S1_S1_2", "ID_S1", "S1", 2).expect("split");
        ws
    }

    /// Directory of the shipped fixtures, or the one named by
    /// `RELCHAR_FIXTURES`.
    pub fn fixtures_dir() -> PathBuf {
        match std::env::var_os(FIXTURES_ENV) {
            Some(p) => PathBuf::from(p),
            None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"),
        }
    }
}

/// `a / N` for the torsion witness `δa = N gen` of the first torsion class in
/// degree 2, i.e. a mod-one cocycle pairing to `1/N` with the torsion
/// generator of degree 1 homology.
fn torsion_dual_cochain(sp: &Space) -> Vec<Rat> {
    let coh = sp.chain().cohomology(2);
    let (n, a) = &coh.torsion_witnesses[0];
    a.iter().map(|x| Rat::new(x.clone(), n.clone())).collect()
}
