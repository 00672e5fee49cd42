//! Command line definitions and their implementations. Every command
//! renders its output to a string so that tests can drive it without a
//! subprocess.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use relchar_core::characters::{parallel_section, section_along, topological_trivialization, eval_torsion, Trivialization};
use relchar_core::kunneth::{abs_star, cross_abs, cross_char, star};
use relchar_core::linalg::Int;
use relchar_core::{sample, Character, ConeProduct, KunnethSplit, Space};

use crate::suites::{self, ALIASES, SUITES};
use crate::workspace::{character_json, ints_json, rats_json, SpaceRef, Workspace};

#[derive(Parser, Debug)]
#[command(name = "relchar", version, about = "Exact differential characters on finite simplicial sets")]
pub struct Cli {
    /// Workspace directory. Defaults to the shipped fixtures, which are
    /// read-only; commands that save need an explicit directory.
    #[arg(long, global = true)]
    pub workspace: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integral homology of a space, of the cone of a map, or of a pair.
    Homology {
        /// A space name, a map name (its cone), or `cone:MAP` / `pair:MAP`.
        name: String,
        k: usize,
    },
    #[command(subcommand)]
    Char(CharCommand),
    #[command(subcommand)]
    Product(ProductCommand),
    /// Integrate a character on the total space of a bundle over the fiber.
    Fint {
        bundle: String,
        character: String,
        #[arg(long)]
        save: Option<String>,
    },
    /// Künneth splitting of the cone of `map × id_space` in degree k.
    Kunneth { map: String, space: String, k: usize },
    /// Run a verification suite and print its JSON report.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    #[command(subcommand)]
    Workspace(WorkspaceCommand),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Random,
    Flat,
    Trivial,
    Zero,
}

#[derive(Subcommand, Debug)]
pub enum CharCommand {
    /// Create and store a character.
    New {
        name: String,
        #[arg(long)]
        on: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Kind::Random)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Value on a cycle: `gen:I`, `torsion:I`, or terms like `e01,-2*e12`.
    Eval { character: String, cycle: String },
    Curv { character: String },
    Cov { character: String },
    Class { character: String },
    Equal { first: String, second: String },
    /// A form whose topologically trivial character is the given one.
    Trivialize { character: String },
    /// A section along a map of a character on its target.
    Section {
        character: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        save: Option<String>,
    },
    /// A section with vanishing covariant derivative.
    ParallelSection {
        character: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        save: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ProductCommand {
    /// `h × h'`: cone or absolute character times an absolute one.
    Cross {
        first: String,
        second: String,
        #[arg(long)]
        save: Option<String>,
    },
    /// `h ∗ h'`: internal product, or the module action on a cone.
    Star {
        first: String,
        second: String,
        #[arg(long)]
        save: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum WorkspaceCommand {
    /// Load and validate the workspace, then list its contents.
    Check,
    /// Write the workspace in canonical form to a directory.
    Save { dir: PathBuf },
    /// Write the built-in fixture workspace to a directory.
    Init { dir: PathBuf },
}

/// Failure with its process exit code.
#[derive(Debug)]
pub struct CmdError {
    pub code: i32,
    pub message: String,
}

impl CmdError {
    fn invalid(message: impl Into<String>) -> Self {
        CmdError { code: 1, message: message.into() }
    }
}

impl<E: std::fmt::Display> From<E> for CmdError {
    fn from(e: E) -> Self {
        CmdError::invalid(e.to_string())
    }
}

type CmdResult<T> = std::result::Result<T, CmdError>;

struct Context {
    ws: Workspace,
    dir: Option<PathBuf>,
}

impl Context {
    fn load(dir: Option<PathBuf>) -> CmdResult<Self> {
        let path = dir.clone().unwrap_or_else(Workspace::fixtures_dir);
        Ok(Context { ws: Workspace::load(&path)?, dir })
    }

    fn character(&self, name: &str) -> CmdResult<&Character> {
        Ok(self.ws.character(name)?)
    }

    fn persist(&self) -> CmdResult<()> {
        let dir = self.dir.as_ref().ok_or_else(|| CmdError::invalid("saving needs an explicit --workspace directory"))?;
        self.ws.save(dir)?;
        Ok(())
    }

    /// Resolves `NAME`, `cone:MAP` or `pair:MAP`. A bare map name means its cone.
    fn space_ref(&self, text: &str) -> SpaceRef {
        match SpaceRef::parse(text) {
            SpaceRef::Abs(n) if !self.ws.spaces.contains_key(&n) && self.ws.maps.contains_key(&n) => SpaceRef::Cone(n),
            r => r,
        }
    }

    /// Renders a character, storing it under `save` when asked.
    fn emit(&mut self, h: Character, save: Option<&str>) -> CmdResult<String> {
        let mut scratch = self.ws.clone();
        scratch.insert_character(save.unwrap_or("_"), h.clone())?;
        let space = scratch.characters[save.unwrap_or("_")].space.clone();
        if save.is_some() {
            self.ws = scratch;
            self.persist()?;
        }
        Ok(pretty(&character_json(&space, &h)))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

/// Basis labels of the chain group of degree n. Cone chains are listed as
/// `X.label` followed by `A.label`.
pub fn chain_labels(sp: &Space, n: usize) -> Vec<String> {
    let at = |x: &relchar_core::SimplicialSet, n: usize| -> Vec<String> { x.labels().get(n).cloned().unwrap_or_default() };
    match sp {
        Space::Abs(x) => at(x, n),
        Space::Cone(c) => {
            let mut out: Vec<String> = at(c.x(), n).into_iter().map(|l| format!("X.{l}")).collect();
            if n > 0 {
                out.extend(at(c.a(), n - 1).into_iter().map(|l| format!("A.{l}")));
            }
            out
        }
        Space::Quot(q) => {
            let labels = at(q.x(), n);
            q.kept(n).iter().map(|&i| labels[i].clone()).collect()
        }
    }
}

pub fn show_chain(sp: &Space, n: usize, c: &[Int]) -> String {
    let labels = chain_labels(sp, n);
    let terms: Vec<String> = c
        .iter()
        .zip(&labels)
        .filter(|(v, _)| v.sign() != num_bigint::Sign::NoSign)
        .map(|(v, l)| match v.to_string().as_str() {
            "1" => l.clone(),
            "-1" => format!("-{l}"),
            s => format!("{s}*{l}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

/// Parses comma separated terms `[coef*]label` into a chain of degree n.
pub fn parse_chain(sp: &Space, n: usize, text: &str) -> CmdResult<Vec<Int>> {
    let labels = chain_labels(sp, n);
    let mut c = vec![Int::from(0); labels.len()];
    for term in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (coef, label) = match term.split_once('*') {
            Some((a, l)) => (a.trim().parse::<Int>().map_err(|_| CmdError::invalid(format!("bad coefficient in {term}")))?, l.trim()),
            None => match term.strip_prefix('-') {
                Some(l) => (Int::from(-1), l),
                None => (Int::from(1), term),
            },
        };
        let i = labels.iter().position(|l| l == label).ok_or_else(|| CmdError::invalid(format!("no {n}-simplex named {label}")))?;
        c[i] += coef;
    }
    Ok(c)
}

/// Parses the command line and runs it. Returns the text to print, or the
/// error with its exit code.
pub fn execute(cli: Cli) -> CmdResult<String> {
    match &cli.command {
        Command::Verify { suite, seed } => return verify(suite, *seed),
        Command::Workspace(WorkspaceCommand::Init { dir }) => {
            Workspace::builtin().save(dir)?;
            return Ok(format!("wrote {}\n", dir.display()));
        }
        _ => {}
    }
    let mut cx = Context::load(cli.workspace.clone())?;
    match cli.command {
        Command::Homology { name, k } => homology(&cx, &name, k),
        Command::Char(c) => char_command(&mut cx, c),
        Command::Product(p) => product(&mut cx, p),
        Command::Fint { bundle, character, save } => fint(&mut cx, &bundle, &character, save.as_deref()),
        Command::Kunneth { map, space, k } => kunneth(&cx, &map, &space, k),
        Command::Verify { .. } | Command::Workspace(WorkspaceCommand::Init { .. }) => unreachable!("handled above"),
        Command::Workspace(WorkspaceCommand::Check) => {
            let ws = &cx.ws;
            Ok(pretty(&json!({
                "spaces": ws.spaces.keys().collect::<Vec<_>>(),
                "maps": ws.maps.keys().collect::<Vec<_>>(),
                "characters": ws.characters.keys().collect::<Vec<_>>(),
                "bundles": ws.bundles.keys().collect::<Vec<_>>(),
                "splits": ws.splits.keys().collect::<Vec<_>>(),
            })))
        }
        Command::Workspace(WorkspaceCommand::Save { dir }) => {
            cx.ws.save(&dir)?;
            Ok(format!("saved to {}\n", dir.display()))
        }
    }
}

fn verify(suite: &str, seed: u64) -> CmdResult<String> {
    let report = suites::run(suite, seed).ok_or_else(|| CmdError {
        code: 2,
        message: format!("unknown suite {suite}; expected one of {}", SUITES.iter().chain(ALIASES.iter()).copied().collect::<Vec<_>>().join(", ")),
    })?;
    let text = report.render();
    if report.ok() {
        Ok(text)
    } else {
        Err(CmdError { code: 1, message: text })
    }
}

fn homology(cx: &Context, name: &str, k: usize) -> CmdResult<String> {
    let sp = cx.ws.resolve(&cx.space_ref(name))?;
    let h = sp.chain().homology(k as isize);
    let mut out = format!("{}\n", h.describe());
    let nt = h.torsion_orders.len();
    for (i, (g, (order, w))) in h.generators.iter().zip(&h.torsion_witnesses).enumerate() {
        out += &format!("torsion {i}: order {order}, cycle {}\n", show_chain(&sp, k, g));
        out += &format!("  witness: {order} * cycle = boundary of {}\n", show_chain(&sp, k + 1, w));
    }
    for (i, g) in h.generators[nt..].iter().enumerate() {
        out += &format!("free {i}: cycle {}\n", show_chain(&sp, k, g));
    }
    Ok(out)
}

fn char_command(cx: &mut Context, c: CharCommand) -> CmdResult<String> {
    match c {
        CharCommand::New { name, on, degree, kind, seed } => {
            let sp = cx.ws.resolve(&cx.space_ref(&on))?;
            let mut rng = suites::rng(seed);
            let h = match kind {
                Kind::Random => sample::character(&mut rng, &sp, degree)?,
                Kind::Flat => sample::flat_character(&mut rng, &sp, degree)?,
                Kind::Trivial => sample::trivial_character(&mut rng, &sp, degree)?,
                Kind::Zero => Character::zero(sp, degree)?,
            };
            cx.emit(h, Some(&name))
        }
        CharCommand::Eval { character, cycle } => {
            let h = cx.character(&character)?;
            let sp = h.space();
            let n = h.degree() - 1;
            let hom = sp.chain().homology(n as isize);
            let index = |s: &str| s.parse::<usize>().map_err(|_| CmdError::invalid(format!("bad index {s}")));
            let value = if let Some(i) = cycle.strip_prefix("torsion:") {
                let i = index(i)?;
                let (order, w) = hom.torsion_witnesses.get(i).ok_or_else(|| CmdError::invalid(format!("H_{n} has {} torsion generators", hom.torsion_orders.len())))?;
                eval_torsion(h, &hom.generators[i], order, w)?
            } else if let Some(i) = cycle.strip_prefix("gen:") {
                let g = hom.generators.get(index(i)?).ok_or_else(|| CmdError::invalid(format!("H_{n} has {} generators", hom.generators.len())))?;
                h.evaluate(g)?
            } else {
                h.evaluate(&parse_chain(sp, n, &cycle)?)?
            };
            Ok(format!("{value}\n"))
        }
        CharCommand::Curv { character } => Ok(pretty(&rats_json(cx.character(&character)?.curvature()))),
        CharCommand::Cov { character } => Ok(pretty(&rats_json(&cx.character(&character)?.covariant_derivative()?))),
        CharCommand::Class { character } => {
            let h = cx.character(&character)?;
            let group = h.space().chain().cohomology(h.degree() as isize).describe();
            Ok(pretty(&json!({ "group": group, "coordinates": ints_json(&h.class_coords()) })))
        }
        CharCommand::Equal { first, second } => Ok(format!("{}\n", cx.character(&first)?.equals(cx.character(&second)?)?)),
        CharCommand::Trivialize { character } => match topological_trivialization(cx.character(&character)?) {
            Trivialization::Form(theta) => Ok(pretty(&json!({ "form": rats_json(&theta) }))),
            Trivialization::Obstructed(c) => Err(CmdError::invalid(format!("characteristic class is nonzero: {}", ints_json(&c)))),
        },
        CharCommand::Section { character, map, save } => {
            let cone = cx.ws.map_entry(&map)?.cone.clone();
            match section_along(cx.character(&character)?, &cone)? {
                Ok(s) => cx.emit(s, save.as_deref()),
                Err(c) => Err(CmdError::invalid(format!("pulled-back characteristic class is nonzero: {}", ints_json(&c)))),
            }
        }
        CharCommand::ParallelSection { character, map, save } => {
            let cone = cx.ws.map_entry(&map)?.cone.clone();
            match parallel_section(cx.character(&character)?, &cone)? {
                Some(s) => cx.emit(s, save.as_deref()),
                None => Err(CmdError::invalid(format!("{character} does not pull back to zero along {map}"))),
            }
        }
    }
}

fn product(cx: &mut Context, p: ProductCommand) -> CmdResult<String> {
    let (first, second, save, cross) = match p {
        ProductCommand::Cross { first, second, save } => (first, second, save, true),
        ProductCommand::Star { first, second, save } => (first, second, save, false),
    };
    let h = cx.character(&first)?.clone();
    let h2 = cx.character(&second)?.clone();
    let out = if !cross {
        match h.space() {
            Space::Cone(_) => star(&h, &h2)?,
            _ => abs_star(&h, &h2)?,
        }
    } else {
        let other = cx.ws.characters[&second].space.clone();
        let SpaceRef::Abs(y) = other else {
            return Err(CmdError::invalid("the second factor of a cross product must be an absolute character"));
        };
        match cx.ws.characters[&first].space.clone() {
            SpaceRef::Abs(x) => {
                let name = cx.ws.ensure_product_space(&x, &y)?;
                let product = cx.ws.space(&name)?.clone();
                cross_abs(&h, &h2, &product)?
            }
            SpaceRef::Cone(m) => {
                let cone = cx.ws.map_entry(&m)?.cone.clone();
                let cp = ConeProduct::new(&cone, cx.ws.space(&y)?)?;
                cross_char(&h, &h2, &cp)?
            }
            SpaceRef::Pair(_) => return Err(CmdError::invalid("cross products are defined for cone characters; convert the pair character first")),
        }
    };
    cx.emit(out, save.as_deref())
}

fn fint(cx: &mut Context, bundle: &str, character: &str, save: Option<&str>) -> CmdResult<String> {
    let b = cx.ws.bundles.get(bundle).ok_or_else(|| CmdError::invalid(format!("unknown bundle {bundle}")))?.bundle.clone();
    let h = cx.character(character)?.clone();
    if b.is_closed() {
        return cx.emit(b.integrate(&h)?, save);
    }
    let (out, theta) = b.integrate_boundary(&h)?;
    let rendered = cx.emit(out, save)?;
    let value: Value = serde_json::from_str(&rendered)?;
    Ok(pretty(&json!({ "boundary_integral": value, "trivializing_form": rats_json(&theta) })))
}

fn kunneth(cx: &Context, map: &str, space: &str, k: usize) -> CmdResult<String> {
    let cone = cx.ws.map_entry(map)?.cone.clone();
    let other: Arc<_> = cx.ws.space(space)?.clone();
    let cp = ConeProduct::new(&cone, &other)?;
    let split = KunnethSplit::build(&cp, k)?;
    let blocks: Vec<Value> = split
        .blocks
        .iter()
        .map(|b| json!({ "p": b.p.to_string(), "q": b.q.to_string(), "left": b.left.len().to_string(), "right": b.right.len().to_string() }))
        .collect();
    let orders: Vec<Int> = split.complement.iter().map(|(n, _)| n.clone()).collect();
    Ok(pretty(&json!({
        "map": map,
        "space": space,
        "degree": k.to_string(),
        "group": cp.space().chain().homology(k as isize).describe(),
        "blocks": blocks,
        "cycles": split.cycles.len().to_string(),
        "complement_orders": ints_json(&orders),
        "sk_identity": split.check_sk(&cp)?,
        "complement_witnesses": split.check_complement(&cp)?,
    })))
}
