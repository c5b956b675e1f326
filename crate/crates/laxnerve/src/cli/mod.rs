//! Command surface: every subcommand writes `OK`/`FAIL`/`INFO` lines and returns an exit code.
//!
//! Exit code 0 means every check passed, 1 that some check failed, 2 a usage error
//! (bad flags, unreadable or malformed input).

pub mod format;

use std::fmt::{self, Display};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::fibres::{
    audit_fibre_equivalences, comma_contraction, fibre_over, fibre_under, simplex_fibre, Fibre, Side, StrictFunctor,
};
use crate::grothendieck::{comma_comparison, fibre_embedding, grothendieck, iota_p_pair, projection, validate_two_diagram};
use crate::hocolim::{hocolim_diagram_of_2cats, hocolim_of_nerves, hocolim_two_functor, thomason_iso_i, thomason_iso_ii};
use crate::invariants::{homology, homology_compare, pi0};
use crate::nerves::{double_nerve, geometric_nerve, nerve_category, nerve_two_category, LaxSimplex};
use crate::report::ValidationReport;
use crate::simplicial::{SimplicialMap, TruncBisimplicialSet, TruncSimplicialSet};
use crate::twocat::{Category, TwoCategory, TwoFunctor};
use crate::{DEFAULT_BUDGET, DEFAULT_CAP};

use format::{parse, Document, FormatError, FunctorFile};

#[derive(Debug, Parser)]
#[command(name = "laxnerve", version, about = "Finite 2-category workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
struct Limits {
    /// Truncation dimension; homology is trusted through degree cap-1.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Enumeration budget in candidate cells.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    I,
    Ii,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Over,
    Under,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Over => Side::Over,
            SideArg::Under => Side::Under,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a file and run the validator of its kind.
    Validate {
        file: PathBuf,
        /// Print the canonical form instead of the report.
        #[arg(long)]
        canonical: bool,
    },
    /// The nerve: of a category, or the simplicial category N C of a 2-category.
    Nerve {
        file: PathBuf,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        homology: bool,
    },
    /// The double nerve NN C.
    Dnerve {
        file: PathBuf,
        #[command(flatten)]
        limits: Limits,
        /// Homology of the diagonal.
        #[arg(long)]
        homology: bool,
    },
    /// The geometric nerve of lax simplices.
    Gnerve {
        file: PathBuf,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        homology: bool,
    },
    /// The diagonal of the double nerve.
    Diag {
        file: PathBuf,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        homology: bool,
    },
    /// The codiagonal (total simplicial set) of the double nerve.
    Wbar {
        file: PathBuf,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        homology: bool,
    },
    /// The Zisman comparison from the diagonal to the codiagonal of the double nerve.
    Eta {
        file: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
    /// A homotopy-fibre 2-category of a strict functor file.
    Fibre {
        functor: PathBuf,
        /// Objects under `z` (witnesses z -> Fx).
        #[arg(long, value_name = "OBJECT", group = "base")]
        over: Option<String>,
        /// Objects over `z` (witnesses Fx -> z).
        #[arg(long, value_name = "OBJECT", group = "base")]
        under: Option<String>,
        /// A lax simplex of the target: objects, then 1-cells (i<j), then 2-cells (i<j<k).
        #[arg(long, value_name = "CELLS", group = "base")]
        simplex: Option<String>,
        /// Side for `--simplex`.
        #[arg(long, value_enum, default_value = "over")]
        side: SideArg,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        homology: bool,
        /// Write the fibre's canonical text to this path.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Comma 2-categories of the identity: `z//C` (--over) or `C//z` (--under).
    Comma {
        file: PathBuf,
        #[arg(long, value_name = "OBJECT", group = "base")]
        over: Option<String>,
        #[arg(long, value_name = "OBJECT", group = "base")]
        under: Option<String>,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        homology: bool,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// The Grothendieck 2-category of a diagram, with its projection and fibre comparisons.
    Grothendieck {
        diagram: PathBuf,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        homology: bool,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Homotopy colimits of a diagram.
    Hocolim {
        diagram: PathBuf,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        homology: bool,
    },
    /// The explicit bijections relating homotopy colimits and the Grothendieck construction.
    Thomason {
        diagram: PathBuf,
        #[arg(long, value_enum)]
        variant: Variant,
        #[command(flatten)]
        limits: Limits,
    },
    /// Integral homology of a simplicial set given as `construction:path`.
    Homology {
        spec: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Degreewise homology comparison of two constructions.
    Compare {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Checks that every induced w* between fibres is a homology equivalence.
    #[command(name = "audit-theorem-b")]
    AuditFibres {
        functor: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
}

/// The report and exit code of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Why a command could not produce its report.
#[derive(Debug)]
enum Abort {
    Usage(String),
    /// The input was read but failed its validator.
    Invalid(ValidationReport, String),
    /// A construction refused its input.
    Compute(String),
}

impl From<FormatError> for Abort {
    fn from(e: FormatError) -> Abort {
        match e {
            FormatError::Validation { path, kind, report } => Abort::Invalid(report, format!("{path}: invalid {kind}")),
            other => Abort::Usage(other.to_string()),
        }
    }
}

fn compute(e: impl Display) -> Abort {
    Abort::Compute(e.to_string())
}

/// Accumulates tagged report lines.
#[derive(Debug, Default)]
struct Report {
    lines: Vec<String>,
    failed: bool,
}

impl Report {
    fn info(&mut self, msg: impl Display) {
        self.lines.push(format!("INFO {msg}"));
    }
    fn check(&mut self, ok: bool, msg: impl Display) {
        self.failed |= !ok;
        self.lines.push(format!("{} {msg}", if ok { "OK" } else { "FAIL" }));
    }
    /// Appends pre-tagged lines, noting any failure among them.
    fn raw(&mut self, text: impl Display) {
        for l in text.to_string().lines() {
            self.failed |= l.starts_with("FAIL");
            self.lines.push(l.to_string());
        }
    }
    fn validation(&mut self, what: &str, r: &ValidationReport) {
        if r.is_ok() {
            self.check(true, format!("{what} valid"));
        } else {
            for v in r.violations() {
                self.check(false, format!("{what}: {}: {}", v.kind, v.witness));
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.lines.iter().try_for_each(|l| writeln!(f, "{l}"))
    }
}

/// Parses arguments (the first being the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut rep = Report::default();
    match execute(cli.command, &mut rep) {
        Ok(()) => Outcome {
            code: i32::from(rep.failed),
            stdout: rep.to_string(),
            stderr: String::new(),
        },
        Err(Abort::Usage(msg)) => Outcome {
            code: 2,
            stdout: rep.to_string(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Abort::Invalid(report, msg)) => {
            rep.validation(&msg, &report);
            Outcome {
                code: 1,
                stdout: rep.to_string(),
                stderr: String::new(),
            }
        }
        Err(Abort::Compute(msg)) => {
            rep.check(false, msg.lines().collect::<Vec<_>>().join("; "));
            Outcome {
                code: 1,
                stdout: rep.to_string(),
                stderr: String::new(),
            }
        }
    }
}

fn load_two_category(path: &Path) -> Result<TwoCategory, Abort> {
    Ok(format::load_two_category(path)?)
}

fn load_functor(path: &Path) -> Result<FunctorFile, Abort> {
    match parse(path)? {
        Document::Functor(f) => Ok(f),
        other => Err(Abort::Usage(format!(
            "{}: expected a functor file, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn load_diagram(path: &Path) -> Result<format::DiagramFile, Abort> {
    match parse(path)? {
        Document::Diagram(d) => Ok(d),
        other => Err(Abort::Usage(format!(
            "{}: expected a diagram file, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn find_object(c: &TwoCategory, name: &str) -> Result<crate::ObjId, Abort> {
    c.find_obj(name)
        .ok_or_else(|| Abort::Usage(format!("unknown object `{name}`")))
}

fn counts_line(c: &TwoCategory) -> String {
    format!(
        "{} objects, {} 1-cells, {} 2-cells (identities included)",
        c.num_objects(),
        c.num_mors(),
        c.num_defs()
    )
}

fn join<T: Display>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Counts, the simplicial-identity audit and optionally homology and π0.
fn describe(rep: &mut Report, name: &str, s: &TruncSimplicialSet, with_homology: bool) -> Result<(), Abort> {
    rep.info(format!("{name}: simplices per dimension 0..={}: {}", s.cap(), join(&s.counts())));
    rep.info(format!("{name}: nondegenerate: {}", join(&s.nondegenerate_counts())));
    rep.validation(&format!("{name}: simplicial identities"), &s.audit());
    if with_homology {
        rep.info(format!("{name}: pi0 = {}", pi0(s)));
        rep.raw(homology(s).map_err(compute)?);
    }
    Ok(())
}

fn describe_bisimplicial(rep: &mut Report, name: &str, s: &TruncBisimplicialSet) {
    for q in 0..=s.cap() {
        let row: Vec<usize> = (0..=s.cap() - q).map(|p| s.count(p, q)).collect();
        rep.info(format!("{name}: q = {q}, p = 0..: {}", join(&row)));
    }
    rep.validation(&format!("{name}: bisimplicial identities"), &s.audit());
}

fn execute(cmd: Command, rep: &mut Report) -> Result<(), Abort> {
    match cmd {
        Command::Validate { file, canonical } => {
            let doc = format::parse_unchecked(&file)?;
            if canonical {
                let r = doc.validate();
                if !r.is_ok() {
                    return Err(Abort::Invalid(r, format!("{}: invalid {}", file.display(), doc.kind())));
                }
                rep.lines.extend(doc.canonical_text().lines().map(str::to_string));
                return Ok(());
            }
            rep.info(format!("kind {}", doc.kind()));
            if let Some(c) = doc.as_two_category() {
                rep.info(counts_line(&c));
            }
            rep.validation(&format!("{} ({})", file.display(), doc.kind()), &doc.validate());
        }
        Command::Nerve { file, limits, homology } => match parse(&file)? {
            Document::Category(c) => nerve_of_category(rep, &c, limits, homology)?,
            doc => {
                let c = doc
                    .as_two_category()
                    .ok_or_else(|| Abort::Usage(format!("{}: not a category or 2-category", file.display())))?;
                let nc = nerve_two_category(&c, limits.cap).map_err(compute)?;
                for n in 0..=nc.cap() {
                    let l = nc.level(n);
                    rep.info(format!(
                        "N C level {n}: {} objects, {} arrows",
                        l.cat.num_objects(),
                        l.cat.num_arrows()
                    ));
                }
                rep.validation("N C: simplicial identities", &nc.audit());
                if homology {
                    nerve_of_category(rep, &Category::underlying(&c), limits, true)?;
                }
            }
        },
        Command::Dnerve { file, limits, homology } => {
            let c = load_two_category(&file)?;
            let nn = double_nerve(&c, limits.cap).map_err(compute)?;
            describe_bisimplicial(rep, "NN C", &nn);
            if homology {
                describe(rep, "diag NN C", &nn.diag(), true)?;
            }
        }
        Command::Gnerve { file, limits, homology } => {
            let c = load_two_category(&file)?;
            let d = geometric_nerve(&c, limits.cap, limits.budget).map_err(compute)?;
            describe(rep, "geometric nerve", &d, homology)?;
        }
        Command::Diag { file, limits, homology } => {
            let c = load_two_category(&file)?;
            let nn = double_nerve(&c, limits.cap).map_err(compute)?;
            describe(rep, "diag NN C", &nn.diag(), homology)?;
        }
        Command::Wbar { file, limits, homology } => {
            let c = load_two_category(&file)?;
            let nn = double_nerve(&c, limits.cap).map_err(compute)?;
            let w = nn.codiagonal().map_err(compute)?;
            describe(rep, "codiagonal of NN C", &w, homology)?;
        }
        Command::Eta { file, limits } => {
            let c = load_two_category(&file)?;
            let nn = double_nerve(&c, limits.cap).map_err(compute)?;
            let (diag, w) = (nn.diag(), nn.codiagonal().map_err(compute)?);
            let eta = nn.zisman(&diag, &w).map_err(compute)?;
            rep.validation("eta: simplicial map", &eta.validate(&diag, &w));
            rep.raw(homology_compare(&diag, &w, Some(&eta)).map_err(compute)?);
        }
        Command::Fibre {
            functor,
            over,
            under,
            simplex,
            side,
            limits,
            homology,
            emit,
        } => {
            let ff = load_functor(&functor)?;
            if !ff.is_strict() {
                return Err(Abort::Usage("fibres are built for strict functors only".into()));
            }
            let strict = ff.functor.to_strict();
            let f = StrictFunctor::new(&ff.src, &ff.tgt, &strict).map_err(compute)?;
            let fibre = match (over, under, simplex) {
                (Some(z), None, None) => fibre_over(&f, find_object(&ff.tgt, &z)?, limits.budget),
                (None, Some(z), None) => fibre_under(&f, find_object(&ff.tgt, &z)?, limits.budget),
                (None, None, Some(cells)) => {
                    let z = parse_simplex(&ff.tgt, &cells)?;
                    simplex_fibre(&f, &z, side.into(), limits.budget)
                }
                _ => return Err(Abort::Usage("give exactly one of --over, --under, --simplex".into())),
            }
            .map_err(compute)?;
            report_fibre(rep, "fibre", &fibre, limits, homology, emit.as_deref())?;
        }
        Command::Comma {
            file,
            over,
            under,
            limits,
            homology,
            emit,
        } => {
            let c = load_two_category(&file)?;
            match (over, under) {
                (Some(z), None) => {
                    let k = comma_contraction(&c, find_object(&c, &z)?, limits.budget).map_err(compute)?;
                    report_fibre(rep, "z//C", &k.fibre, limits, homology, emit.as_deref())?;
                    rep.validation("contraction onto the cone point", &k.check());
                }
                (None, Some(z)) => {
                    let x = find_object(&c, &z)?;
                    let id = TwoFunctor::identity(&c);
                    let f = StrictFunctor::new(&c, &c, &id).map_err(compute)?;
                    let fibre = fibre_under(&f, x, limits.budget).map_err(compute)?;
                    report_fibre(rep, "C//z", &fibre, limits, homology, emit.as_deref())?;
                    let cmp = comma_comparison(&c, x, limits.budget).map_err(compute)?;
                    rep.validation(
                        "Grothendieck 2-category of the hom diagram vs (C^co//z)^co: cellwise isomorphism",
                        &cmp.check(),
                    );
                }
                _ => return Err(Abort::Usage("give exactly one of --over, --under".into())),
            }
        }
        Command::Grothendieck {
            diagram,
            limits,
            homology,
            emit,
        } => {
            let df = load_diagram(&diagram)?;
            let d = &df.diagram;
            rep.validation("diagram", &validate_two_diagram(d));
            let g = grothendieck(d).map_err(compute)?;
            rep.info(format!("total 2-category: {}", counts_line(&g.cat)));
            rep.validation("total 2-category", &g.cat.validate());
            rep.validation("projection", &projection(&g).validate(&g.cat, &d.base));
            for z in d.base.objects() {
                let name = d.base.obj_name(z);
                let emb = fibre_embedding(&g, z).map_err(compute)?;
                rep.validation(&format!("fibre embedding at {name}"), &emb.validate(&d.fibres[z.ix()], &g.cat));
                let cmp = iota_p_pair(d, z, limits.budget).map_err(compute)?;
                rep.validation(&format!("p i = 1 and oplax i p => 1 at {name}"), &cmp.check());
            }
            if homology {
                let n = geometric_nerve(&g.cat, limits.cap, limits.budget).map_err(compute)?;
                describe(rep, "geometric nerve of the total 2-category", &n, true)?;
            }
            if let Some(path) = emit {
                write_emit(rep, &path, &format::write_two_category(&g.cat))?;
            }
        }
        Command::Hocolim {
            diagram,
            limits,
            homology,
        } => {
            let df = load_diagram(&diagram)?;
            let d = &df.diagram;
            match hocolim_two_functor(d, limits.cap) {
                Ok(h) => {
                    for n in 0..=h.cap() {
                        let l = h.level(n);
                        rep.info(format!(
                            "hocolim level {n}: {} objects, {} arrows",
                            l.cat.num_objects(),
                            l.cat.num_arrows()
                        ));
                    }
                    rep.validation("hocolim simplicial category", &h.audit());
                }
                Err(e) => rep.info(format!("simplicial-category hocolim skipped: {e}")),
            }
            match hocolim_diagram_of_2cats(d, limits.cap, limits.budget) {
                Ok(s) => {
                    describe_bisimplicial(rep, "hocolim of nerves", &s);
                    let diag = hocolim_of_nerves(d, limits.cap, limits.budget).map_err(compute)?;
                    let sd = s.diag();
                    let relabel = SimplicialMap::from_key_fn(&sd, &diag, |n, k| s.key(n, n, k[0]).clone());
                    rep.check(
                        relabel.is_ok_and(|m| m.validate(&sd, &diag).is_ok() && m.is_bijective(&diag)),
                        "diagonal is isomorphic to the direct hocolim of nerves",
                    );
                    if homology {
                        describe(rep, "diag hocolim", &diag, true)?;
                    }
                }
                Err(e) => rep.info(format!("hocolim of geometric nerves skipped: {e}")),
            }
        }
        Command::Thomason { diagram, variant, limits } => {
            let df = load_diagram(&diagram)?;
            let d = &df.diagram;
            let (report, counts) = match variant {
                Variant::I => {
                    let t = thomason_iso_i(d, limits.cap).map_err(compute)?;
                    (t.check(), t.wbar_hocolim.counts())
                }
                Variant::Ii => {
                    let t = thomason_iso_ii(d, limits.cap, limits.budget).map_err(compute)?;
                    (t.check(), t.wbar.counts())
                }
            };
            rep.info(format!("simplices per dimension 0..={}: {}", limits.cap, join(&counts)));
            if report.is_ok() {
                rep.check(true, format!("bijection verified at all dimensions <= {}", limits.cap));
            } else {
                rep.validation("bijection", &report);
            }
        }
        Command::Homology { spec, limits } => {
            let s = construct(&spec, limits)?;
            describe(rep, &spec, &s, true)?;
        }
        Command::Compare { a, b, limits } => {
            let (sa, sb) = std::thread::scope(|sc| {
                let ha = sc.spawn(|| construct(&a, limits));
                let hb = sc.spawn(|| construct(&b, limits));
                (join_thread(ha), join_thread(hb))
            });
            let (sa, sb) = (sa?, sb?);
            rep.info(format!("{a} vs {b}"));
            rep.raw(homology_compare(&sa, &sb, None).map_err(compute)?);
        }
        Command::AuditFibres { functor, limits } => {
            let ff = load_functor(&functor)?;
            if !ff.is_strict() {
                return Err(Abort::Usage("the audit needs a strict functor".into()));
            }
            let strict = ff.functor.to_strict();
            let f = StrictFunctor::new(&ff.src, &ff.tgt, &strict).map_err(compute)?;
            rep.raw(audit_fibre_equivalences(&f, limits.cap, limits.budget).map_err(compute)?);
            for z in ff.tgt.objects() {
                let fib = fibre_over(&f, z, limits.budget).map_err(compute)?;
                let n = geometric_nerve(&fib.cat, limits.cap, limits.budget).map_err(compute)?;
                let h = homology(&n).map_err(compute)?;
                let groups: Vec<String> = h.groups.iter().map(ToString::to_string).collect();
                rep.info(format!(
                    "fibre under {}: H_0..H_{} = {}",
                    ff.tgt.obj_name(z),
                    h.max_degree(),
                    groups.join(", ")
                ));
            }
        }
    }
    Ok(())
}

fn join_thread(
    h: std::thread::ScopedJoinHandle<'_, Result<TruncSimplicialSet, Abort>>,
) -> Result<TruncSimplicialSet, Abort> {
    h.join().unwrap_or_else(|_| Err(Abort::Compute("construction panicked".into())))
}

fn nerve_of_category(rep: &mut Report, c: &Category, limits: Limits, with_homology: bool) -> Result<(), Abort> {
    let n = nerve_category(c, limits.cap);
    describe(rep, "nerve", &n, with_homology)
}

fn report_fibre(
    rep: &mut Report,
    name: &str,
    fibre: &Fibre,
    limits: Limits,
    with_homology: bool,
    emit: Option<&Path>,
) -> Result<(), Abort> {
    rep.info(format!("{name}: {}", counts_line(&fibre.cat)));
    rep.validation(name, &fibre.cat.validate());
    if with_homology {
        let n = geometric_nerve(&fibre.cat, limits.cap, limits.budget).map_err(compute)?;
        describe(rep, &format!("geometric nerve of {name}"), &n, true)?;
    }
    if let Some(path) = emit {
        write_emit(rep, path, &format::write_two_category(&fibre.cat))?;
    }
    Ok(())
}

fn write_emit(rep: &mut Report, path: &Path, text: &str) -> Result<(), Abort> {
    std::fs::write(path, text).map_err(|e| Abort::Usage(format!("{}: {e}", path.display())))?;
    rep.info(format!("wrote {}", path.display()));
    Ok(())
}

/// Reads `objects, 1-cells (i<j), 2-cells (i<j<k)` of a lax simplex by name.
fn parse_simplex(c: &TwoCategory, cells: &str) -> Result<LaxSimplex, Abort> {
    let toks: Vec<&str> = cells.split([' ', ',']).filter(|t| !t.is_empty()).collect();
    let size = |n: usize| (n + 1) + (n + 1) * n / 2 + (n + 1) * n * n.saturating_sub(1) / 6;
    let n = (0..8)
        .find(|&n| size(n) == toks.len())
        .ok_or_else(|| Abort::Usage(format!("{} cells do not describe a simplex", toks.len())))?;
    let w = n + 1;
    let objs = toks[..w]
        .iter()
        .map(|t| find_object(c, t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut mors = std::collections::HashMap::new();
    let mut defs = std::collections::HashMap::new();
    let mut next = w;
    for i in 0..w {
        for j in i + 1..w {
            let t = toks[next];
            next += 1;
            mors.insert((i, j), c.find_mor(t).ok_or_else(|| Abort::Usage(format!("unknown 1-cell `{t}`")))?);
        }
    }
    for i in 0..w {
        for j in i + 1..w {
            for k in j + 1..w {
                let t = toks[next];
                next += 1;
                defs.insert(
                    (i, j, k),
                    c.find_def(t).ok_or_else(|| Abort::Usage(format!("unknown 2-cell `{t}`")))?,
                );
            }
        }
    }
    let s = LaxSimplex::from_parts(c, objs, |i, j| mors[&(i, j)], |i, j, k| defs[&(i, j, k)]);
    let r = s.validate(c);
    if !r.is_ok() {
        return Err(Abort::Invalid(r, "simplex".into()));
    }
    Ok(s)
}

/// Builds the simplicial set named by `construction:path`.
///
/// Constructions: `gnerve`, `dnerve` (diagonal of the double nerve), `diag` (same),
/// `wbar`, `nerve` (of the underlying category), `grothendieck` (geometric nerve of the
/// total 2-category of a diagram), `hocolim` (of a diagram's geometric nerves),
/// `point` and `points:N` (a discrete set).
fn construct(spec: &str, limits: Limits) -> Result<TruncSimplicialSet, Abort> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let path = Path::new(arg);
    let cap = limits.cap;
    match kind {
        "point" => Ok(TruncSimplicialSet::point(cap)),
        "points" => {
            let n: usize = arg
                .parse()
                .map_err(|_| Abort::Usage(format!("`{arg}` is not a count")))?;
            let mut s = TruncSimplicialSet::point(cap);
            if n == 0 {
                return Err(Abort::Usage("points:0 is empty".into()));
            }
            for _ in 1..n {
                s = TruncSimplicialSet::coproduct(&s, &TruncSimplicialSet::point(cap)).map_err(compute)?;
            }
            Ok(s)
        }
        "gnerve" => geometric_nerve(&load_two_category(path)?, cap, limits.budget).map_err(compute),
        "dnerve" | "diag" => Ok(double_nerve(&load_two_category(path)?, cap).map_err(compute)?.diag()),
        "wbar" => double_nerve(&load_two_category(path)?, cap)
            .map_err(compute)?
            .codiagonal()
            .map_err(compute),
        "nerve" => Ok(nerve_category(&Category::underlying(&load_two_category(path)?), cap)),
        "grothendieck" => {
            let g = grothendieck(&load_diagram(path)?.diagram).map_err(compute)?;
            geometric_nerve(&g.cat, cap, limits.budget).map_err(compute)
        }
        "hocolim" => hocolim_of_nerves(&load_diagram(path)?.diagram, cap, limits.budget).map_err(compute),
        _ => Err(Abort::Usage(format!("unknown construction `{kind}` in `{spec}`"))),
    }
}
