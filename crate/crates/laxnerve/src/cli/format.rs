//! The line-oriented workspace format.
//!
//! A file is a `format 1` line, a `kind <tag>` line and declarations, one per line, with
//! `#` starting a comment. Identities and every composite they force are implicit. The
//! canonical form puts the two header lines first and the declarations after them, sorted
//! bytewise, single-spaced and line-feed terminated; writing a parsed file reproduces it.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::grothendieck::{validate_two_diagram, TwoDiagram};
use crate::report::{ValidationReport, ViolationKind};
use crate::twocat::{
    composable_pairs, one_object_from_monoidal, BuildError, Category, CategoryBuilder, DefId, LaxTransformation,
    MorId, NormalLaxFunctor, ObjId, StrictMonoidal, TransformationKind, TwoCategory, TwoCategoryBuilder, TwoFunctor,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    TwoCat,
    Category,
    Monoidal,
    Diagram,
    Functor,
    Transformation,
}

impl Kind {
    fn tag(self) -> &'static str {
        match self {
            Kind::TwoCat => "twocat",
            Kind::Category => "category",
            Kind::Monoidal => "monoidal",
            Kind::Diagram => "diagram",
            Kind::Functor => "functor",
            Kind::Transformation => "transformation",
        }
    }

    fn from_tag(tag: &str) -> Option<Kind> {
        [
            Kind::TwoCat,
            Kind::Category,
            Kind::Monoidal,
            Kind::Diagram,
            Kind::Functor,
            Kind::Transformation,
        ]
        .into_iter()
        .find(|k| k.tag() == tag)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}:{line}:{col}: {msg}")]
    Syntax {
        path: String,
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{path}: invalid {kind}\n{report}")]
    Validation {
        path: String,
        kind: Kind,
        report: ValidationReport,
    },
    #[error("{path}: unknown kind `{kind}`")]
    UnknownKind { path: String, kind: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl FormatError {
    /// The validation report, for errors that carry one.
    pub fn report(&self) -> Option<&ValidationReport> {
        match self {
            FormatError::Validation { report, .. } => Some(report),
            _ => None,
        }
    }
}

/// A strict or normal lax functor together with the files of its endpoints.
#[derive(Debug, Clone)]
pub struct FunctorFile {
    pub source: String,
    pub target: String,
    pub src: TwoCategory,
    pub tgt: TwoCategory,
    pub functor: NormalLaxFunctor,
}

impl FunctorFile {
    /// True when every constraint is an identity.
    pub fn is_strict(&self) -> bool {
        self.functor.is_strict(&self.tgt)
    }
}

/// A lax or oplax transformation between two functors sharing endpoints.
#[derive(Debug, Clone)]
pub struct TransformationFile {
    pub source: String,
    pub target: String,
    pub from: FunctorFile,
    pub to: FunctorFile,
    pub transformation: LaxTransformation,
}

/// A 2-diagram with the files of its base and of each fibre, indexed by base object.
#[derive(Debug, Clone)]
pub struct DiagramFile {
    pub base_path: String,
    pub fibre_paths: Vec<String>,
    pub diagram: TwoDiagram,
}

#[derive(Debug, Clone)]
pub enum Document {
    TwoCat(TwoCategory),
    Category(Category),
    Monoidal(StrictMonoidal),
    Diagram(DiagramFile),
    Functor(FunctorFile),
    Transformation(TransformationFile),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::TwoCat(_) => Kind::TwoCat,
            Document::Category(_) => Kind::Category,
            Document::Monoidal(_) => Kind::Monoidal,
            Document::Diagram(_) => Kind::Diagram,
            Document::Functor(_) => Kind::Functor,
            Document::Transformation(_) => Kind::Transformation,
        }
    }

    /// Runs the validator of the owning module.
    pub fn validate(&self) -> ValidationReport {
        match self {
            Document::TwoCat(c) => c.validate(),
            Document::Category(c) => c.validate(),
            Document::Monoidal(m) => m.validate(),
            Document::Diagram(d) => validate_two_diagram(&d.diagram),
            Document::Functor(f) => f.functor.validate(&f.src, &f.tgt),
            Document::Transformation(t) => {
                let mut r = ValidationReport::new();
                r.extend(t.from.functor.validate(&t.from.src, &t.from.tgt), "source functor");
                r.extend(t.to.functor.validate(&t.to.src, &t.to.tgt), "target functor");
                if r.is_ok() {
                    r.extend(
                        t.transformation
                            .validate(&t.from.src, &t.from.tgt, &t.from.functor, &t.to.functor),
                        "transformation",
                    );
                }
                r
            }
        }
    }

    /// The 2-category this document denotes, if it denotes one.
    pub fn as_two_category(&self) -> Option<TwoCategory> {
        match self {
            Document::TwoCat(c) => Some(c.clone()),
            Document::Category(c) => c.to_two_category().ok(),
            Document::Monoidal(m) => one_object_from_monoidal(m).ok(),
            _ => None,
        }
    }

    pub fn canonical_text(&self) -> String {
        match self {
            Document::TwoCat(c) => write_two_category(c),
            Document::Category(c) => write_category(c),
            Document::Monoidal(m) => write_monoidal(m),
            Document::Diagram(d) => write_diagram(d),
            Document::Functor(f) => write_functor(f),
            Document::Transformation(t) => write_transformation(t),
        }
    }
}

/// Reads, parses and validates a file.
pub fn parse(path: &Path) -> Result<Document, FormatError> {
    let doc = parse_unchecked(path)?;
    check(doc, &path.display().to_string())
}

/// Parses text as if read from `origin`; references resolve relative to its directory.
pub fn parse_str(text: &str, origin: &Path) -> Result<Document, FormatError> {
    let doc = parse_str_unchecked(text, origin)?;
    check(doc, &origin.display().to_string())
}

/// Reads and parses a file without running the owning validator.
pub fn parse_unchecked(path: &Path) -> Result<Document, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_str_unchecked(&text, path)
}

pub fn parse_str_unchecked(text: &str, origin: &Path) -> Result<Document, FormatError> {
    let file = SourceFile::new(text, origin);
    let kind = file.header()?;
    match kind {
        Kind::TwoCat => file.two_category().map(Document::TwoCat),
        Kind::Category => file.category().map(Document::Category),
        Kind::Monoidal => file.monoidal().map(Document::Monoidal),
        Kind::Functor => file.functor().map(Document::Functor),
        Kind::Transformation => file.transformation().map(Document::Transformation),
        Kind::Diagram => file.diagram().map(Document::Diagram),
    }
}

fn check(doc: Document, path: &str) -> Result<Document, FormatError> {
    let report = doc.validate();
    if report.is_ok() {
        Ok(doc)
    } else {
        Err(FormatError::Validation {
            path: path.to_string(),
            kind: doc.kind(),
            report,
        })
    }
}

/// Loads a validated 2-category from a `twocat`, `category` or `monoidal` file.
pub fn load_two_category(path: &Path) -> Result<TwoCategory, FormatError> {
    let doc = parse(path)?;
    let shown = path.display().to_string();
    let kind = doc.kind();
    doc.as_two_category().ok_or_else(|| FormatError::Syntax {
        path: shown,
        line: 1,
        col: 1,
        msg: format!("expected a 2-category, category or monoidal file, found {kind}"),
    })
}

// Tokenizing.

struct Line<'a> {
    no: usize,
    toks: Vec<(usize, &'a str)>,
    end_col: usize,
}

impl<'a> Line<'a> {
    fn keyword(&self) -> &'a str {
        self.toks[0].1
    }

    fn col_of(&self, name: &str) -> usize {
        self.toks.iter().find(|t| t.1 == name).map_or(1, |t| t.0)
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start: Option<usize> = None;
        let mut col = 0;
        let mut start_col = 0;
        for (b, ch) in body.char_indices() {
            col += 1;
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    toks.push((start_col, &body[s..b]));
                }
            } else if start.is_none() {
                start = Some(b);
                start_col = col;
            }
        }
        if let Some(s) = start {
            toks.push((start_col, &body[s..]));
        }
        if !toks.is_empty() {
            out.push(Line {
                no: i + 1,
                toks,
                end_col: col + 1,
            });
        }
    }
    out
}

struct SourceFile<'a> {
    path: String,
    dir: PathBuf,
    lines: Vec<Line<'a>>,
}

/// Placeholder for a name in a declaration pattern.
const SLOT: &str = "_";

impl<'a> SourceFile<'a> {
    fn new(text: &'a str, origin: &Path) -> Self {
        SourceFile {
            path: origin.display().to_string(),
            dir: origin.parent().map(Path::to_path_buf).unwrap_or_default(),
            lines: tokenize(text),
        }
    }

    fn syntax(&self, line: usize, col: usize, msg: impl Into<String>) -> FormatError {
        FormatError::Syntax {
            path: self.path.clone(),
            line,
            col,
            msg: msg.into(),
        }
    }

    fn invalid(&self, kind: Kind, report: ValidationReport) -> FormatError {
        FormatError::Validation {
            path: self.path.clone(),
            kind,
            report,
        }
    }

    /// Matches `line` against a pattern such as `cell1 _ : _ -> _`, returning the slots.
    fn fields(&self, line: &Line<'a>, pattern: &str) -> Result<Vec<&'a str>, FormatError> {
        let pat: Vec<&str> = pattern.split_whitespace().collect();
        let mut out = Vec::new();
        for (i, p) in pat.iter().enumerate() {
            let Some(&(col, tok)) = line.toks.get(i) else {
                return Err(self.syntax(line.no, line.end_col, format!("expected `{pattern}`")));
            };
            if *p == SLOT {
                out.push(tok);
            } else if tok != *p {
                return Err(self.syntax(line.no, col, format!("expected `{p}`, found `{tok}`")));
            }
        }
        if let Some(&(col, tok)) = line.toks.get(pat.len()) {
            return Err(self.syntax(line.no, col, format!("unexpected `{tok}`")));
        }
        Ok(out)
    }

    /// Checks the header and that every other keyword belongs to the kind.
    fn header(&self) -> Result<Kind, FormatError> {
        let mut version = None;
        let mut kind = None;
        for l in &self.lines {
            match l.keyword() {
                "format" => {
                    let v = self.fields(l, "format _")?[0];
                    if version.replace(v).is_some() {
                        return Err(self.syntax(l.no, 1, "duplicate `format` line"));
                    }
                    if v != FORMAT_VERSION.to_string() {
                        return Err(self.syntax(l.no, l.toks[1].0, format!("unsupported format version `{v}`")));
                    }
                }
                "kind" => {
                    let k = self.fields(l, "kind _")?[0];
                    if kind.replace(k).is_some() {
                        return Err(self.syntax(l.no, 1, "duplicate `kind` line"));
                    }
                }
                _ => {}
            }
        }
        if version.is_none() {
            return Err(self.syntax(1, 1, "missing `format` line"));
        }
        let tag = kind.ok_or_else(|| self.syntax(1, 1, "missing `kind` line"))?;
        let kind = Kind::from_tag(tag).ok_or_else(|| FormatError::UnknownKind {
            path: self.path.clone(),
            kind: tag.to_string(),
        })?;
        let allowed: &[&str] = match kind {
            Kind::TwoCat => &["object", "cell1", "cell2", "hcomp1", "vcomp", "hcomp2"],
            Kind::Category => &["object", "cell1", "hcomp1"],
            Kind::Monoidal => &["object", "cell1", "hcomp1", "unit", "tensor", "tensor1"],
            Kind::Functor => &["source", "target", "map0", "map1", "map2", "constraint"],
            Kind::Transformation => &["source", "target", "variance", "component", "component2"],
            Kind::Diagram => &["base", "fibre", "restrict0", "restrict1", "restrict2", "deform", "zeta"],
        };
        for l in &self.lines {
            let kw = l.keyword();
            if kw != "format" && kw != "kind" && !allowed.contains(&kw) {
                return Err(self.syntax(l.no, 1, format!("`{kw}` is not a {kind} declaration")));
            }
        }
        Ok(kind)
    }

    fn with_kw<'s>(&'s self, kw: &'static str) -> impl Iterator<Item = &'s Line<'a>> + 's {
        self.lines.iter().filter(move |l| l.keyword() == kw)
    }

    fn build_err(&self, line: &Line<'a>, e: BuildError) -> FormatError {
        let col = match &e {
            BuildError::DuplicateName(n) | BuildError::UnknownName(n) | BuildError::ReservedName(n) => line.col_of(n),
            _ => 1,
        };
        self.syntax(line.no, col, e.to_string())
    }

    /// Objects and 1-cells shared by the `twocat`, `category` and `monoidal` kinds.
    /// Endpoints naming no declared cell are reported as boundary mismatches.
    fn two_category_builder(&self, kind: Kind, with_defs: bool) -> Result<TwoCategoryBuilder, FormatError> {
        let mut b = TwoCategoryBuilder::new();
        let mut dangling = ValidationReport::new();
        for l in self.with_kw("object") {
            let f = self.fields(l, "object _")?;
            b.object(f[0]).map_err(|e| self.build_err(l, e))?;
        }
        for l in self.with_kw("cell1") {
            let f = self.fields(l, "cell1 _ : _ -> _")?;
            match b.mor(f[0], f[1], f[2]) {
                Err(BuildError::UnknownName(n)) => dangling.push(
                    ViolationKind::BoundaryMismatch,
                    format!("line {}: 1-cell `{}` has undeclared endpoint `{n}`", l.no, f[0]),
                ),
                r => {
                    r.map_err(|e| self.build_err(l, e))?;
                }
            }
        }
        if with_defs {
            for l in self.with_kw("cell2") {
                let f = self.fields(l, "cell2 _ : _ => _")?;
                match b.def(f[0], f[1], f[2]) {
                    Err(BuildError::UnknownName(n)) => dangling.push(
                        ViolationKind::BoundaryMismatch,
                        format!("line {}: 2-cell `{}` has undeclared boundary `{n}`", l.no, f[0]),
                    ),
                    r => {
                        r.map_err(|e| self.build_err(l, e))?;
                    }
                }
            }
        }
        if !dangling.is_ok() {
            return Err(self.invalid(kind, dangling));
        }
        for l in self.with_kw("hcomp1") {
            let f = self.fields(l, "hcomp1 _ o _ = _")?;
            b.hcomp1(f[0], f[1], f[2]).map_err(|e| self.build_err(l, e))?;
        }
        Ok(b)
    }

    fn two_category(&self) -> Result<TwoCategory, FormatError> {
        let mut b = self.two_category_builder(Kind::TwoCat, true)?;
        for l in self.with_kw("vcomp") {
            let f = self.fields(l, "vcomp _ . _ = _")?;
            b.vcomp(f[0], f[1], f[2]).map_err(|e| self.build_err(l, e))?;
        }
        for l in self.with_kw("hcomp2") {
            let f = self.fields(l, "hcomp2 _ o _ = _")?;
            b.hcomp2(f[0], f[1], f[2]).map_err(|e| self.build_err(l, e))?;
        }
        Ok(b.build())
    }

    fn category(&self) -> Result<Category, FormatError> {
        let mut dangling = ValidationReport::new();
        let mut b = CategoryBuilder::new();
        for l in self.with_kw("object") {
            let f = self.fields(l, "object _")?;
            if f[0].starts_with("id:") {
                return Err(self.build_err(l, BuildError::ReservedName(f[0].to_string())));
            }
            b.object(f[0]).map_err(|e| self.build_err(l, e))?;
        }
        for l in self.with_kw("cell1") {
            let f = self.fields(l, "cell1 _ : _ -> _")?;
            if f[0].starts_with("id:") {
                return Err(self.build_err(l, BuildError::ReservedName(f[0].to_string())));
            }
            match b.arrow(f[0], f[1], f[2]) {
                Err(BuildError::UnknownName(n)) => dangling.push(
                    ViolationKind::BoundaryMismatch,
                    format!("line {}: arrow `{}` has undeclared endpoint `{n}`", l.no, f[0]),
                ),
                r => {
                    r.map_err(|e| self.build_err(l, e))?;
                }
            }
        }
        if !dangling.is_ok() {
            return Err(self.invalid(Kind::Category, dangling));
        }
        for l in self.with_kw("hcomp1") {
            let f = self.fields(l, "hcomp1 _ o _ = _")?;
            b.compose(f[0], f[1], f[2]).map_err(|e| self.build_err(l, e))?;
        }
        Ok(b.build())
    }

    fn monoidal(&self) -> Result<StrictMonoidal, FormatError> {
        let cat = self.category()?;
        let obj = |l: &Line<'a>, n: &str| {
            cat.find_obj(n)
                .ok_or_else(|| self.syntax(l.no, l.col_of(n), format!("unknown object `{n}`")))
        };
        let arrow = |l: &Line<'a>, n: &str| {
            cat.find_arrow(n)
                .ok_or_else(|| self.syntax(l.no, l.col_of(n), format!("unknown arrow `{n}`")))
        };
        let mut unit = None;
        for l in self.with_kw("unit") {
            let f = self.fields(l, "unit _")?;
            if unit.replace(obj(l, f[0])?).is_some() {
                return Err(self.syntax(l.no, 1, "duplicate `unit` line"));
            }
        }
        let unit = unit.ok_or_else(|| self.syntax(1, 1, "missing `unit` line"))?;
        let mut tensor_obj = HashMap::new();
        for l in self.with_kw("tensor") {
            let f = self.fields(l, "tensor _ * _ = _")?;
            tensor_obj.insert((obj(l, f[0])?, obj(l, f[1])?), obj(l, f[2])?);
        }
        let mut tensor_arrow = HashMap::new();
        for l in self.with_kw("tensor1") {
            let f = self.fields(l, "tensor1 _ * _ = _")?;
            tensor_arrow.insert((arrow(l, f[0])?, arrow(l, f[1])?), arrow(l, f[2])?);
        }
        for (&(a, b), &c) in &tensor_obj {
            tensor_arrow.entry((cat.id(a), cat.id(b))).or_insert(cat.id(c));
        }
        Ok(StrictMonoidal {
            cat,
            unit,
            tensor_obj,
            tensor_arrow,
        })
    }

    /// The single `kw _` line, as a path relative to this file.
    fn reference(&self, kw: &'static str) -> Result<(&'a str, PathBuf, &Line<'a>), FormatError> {
        let mut found = None;
        for l in self.with_kw(kw) {
            let f = self.fields(l, &format!("{kw} _"))?;
            if found.replace((f[0], l)).is_some() {
                return Err(self.syntax(l.no, 1, format!("duplicate `{kw}` line")));
            }
        }
        let (rel, l) = found.ok_or_else(|| self.syntax(1, 1, format!("missing `{kw}` line")))?;
        Ok((rel, self.dir.join(rel), l))
    }

    /// Loads a referenced file; a missing or malformed file is reported at the reference.
    fn load_ref<T>(
        &self,
        l: &Line<'a>,
        rel: &str,
        full: &Path,
        load: impl FnOnce(&Path) -> Result<T, FormatError>,
    ) -> Result<T, FormatError> {
        load(full).map_err(|e| match e {
            FormatError::Validation { .. } => e,
            other => self.syntax(l.no, l.col_of(rel), format!("cannot resolve `{rel}`: {other}")),
        })
    }

    fn functor(&self) -> Result<FunctorFile, FormatError> {
        let (source, src_path, sl) = self.reference("source")?;
        let (target, tgt_path, tl) = self.reference("target")?;
        let src = self.load_ref(sl, source, &src_path, load_two_category)?;
        let tgt = self.load_ref(tl, target, &tgt_path, load_two_category)?;
        let named = |l: &Line<'a>, n: &str, what: &str, found: bool| {
            if found {
                Ok(())
            } else {
                Err(self.syntax(l.no, l.col_of(n), format!("unknown {what} `{n}`")))
            }
        };
        let mut obj: Vec<Option<ObjId>> = vec![None; src.num_objects()];
        for l in self.with_kw("map0") {
            let f = self.fields(l, "map0 _ -> _")?;
            let (x, y) = (src.find_obj(f[0]), tgt.find_obj(f[1]));
            named(l, f[0], "source object", x.is_some())?;
            named(l, f[1], "target object", y.is_some())?;
            obj[x.unwrap().ix()] = y;
        }
        let mut missing = ValidationReport::new();
        for x in src.objects().filter(|x| obj[x.ix()].is_none()) {
            missing.push(ViolationKind::MissingTableEntry, format!("no image for object {}", src.obj_name(x)));
        }
        if !missing.is_ok() {
            return Err(self.invalid(Kind::Functor, missing));
        }
        let obj: Vec<ObjId> = obj.into_iter().flatten().collect();
        let mut mor: Vec<Option<MorId>> = src
            .mors()
            .map(|u| src.is_identity_mor(u).then(|| tgt.id_mor(obj[src.src(u).ix()])))
            .collect();
        for l in self.with_kw("map1") {
            let f = self.fields(l, "map1 _ -> _")?;
            let (u, v) = (src.find_mor(f[0]), tgt.find_mor(f[1]));
            named(l, f[0], "source 1-cell", u.is_some())?;
            named(l, f[1], "target 1-cell", v.is_some())?;
            mor[u.unwrap().ix()] = v;
        }
        for u in src.mors().filter(|u| mor[u.ix()].is_none()) {
            missing.push(ViolationKind::MissingTableEntry, format!("no image for 1-cell {}", src.mor_name(u)));
        }
        if !missing.is_ok() {
            return Err(self.invalid(Kind::Functor, missing));
        }
        let mor: Vec<MorId> = mor.into_iter().flatten().collect();
        let mut def: Vec<Option<DefId>> = src
            .defs()
            .map(|a| src.is_identity_def(a).then(|| tgt.id_def(mor[src.def_src(a).ix()])))
            .collect();
        for l in self.with_kw("map2") {
            let f = self.fields(l, "map2 _ -> _")?;
            let (a, b) = (src.find_def(f[0]), tgt.find_def(f[1]));
            named(l, f[0], "source 2-cell", a.is_some())?;
            named(l, f[1], "target 2-cell", b.is_some())?;
            def[a.unwrap().ix()] = b;
        }
        for a in src.defs().filter(|a| def[a.ix()].is_none()) {
            missing.push(ViolationKind::MissingTableEntry, format!("no image for 2-cell {}", src.def_name(a)));
        }
        if !missing.is_ok() {
            return Err(self.invalid(Kind::Functor, missing));
        }
        let def: Vec<DefId> = def.into_iter().flatten().collect();
        let mut constraint: HashMap<(MorId, MorId), DefId> = composable_pairs(&src)
            .into_iter()
            .map(|(u, v)| ((u, v), tgt.id_def(mor[src.compose(u, v).ix()])))
            .collect();
        for l in self.with_kw("constraint") {
            let f = self.fields(l, "constraint _ o _ = _")?;
            let (u, v, a) = (src.find_mor(f[0]), src.find_mor(f[1]), tgt.find_def(f[2]));
            named(l, f[0], "source 1-cell", u.is_some())?;
            named(l, f[1], "source 1-cell", v.is_some())?;
            named(l, f[2], "target 2-cell", a.is_some())?;
            let key = (u.unwrap(), v.unwrap());
            if !constraint.contains_key(&key) {
                return Err(self.syntax(l.no, l.col_of(f[0]), "constraint on a non-composable pair"));
            }
            constraint.insert(key, a.unwrap());
        }
        Ok(FunctorFile {
            source: source.to_string(),
            target: target.to_string(),
            src,
            tgt,
            functor: NormalLaxFunctor {
                obj,
                mor,
                def,
                constraint,
            },
        })
    }

    fn transformation(&self) -> Result<TransformationFile, FormatError> {
        let (source, src_path, sl) = self.reference("source")?;
        let (target, tgt_path, tl) = self.reference("target")?;
        let load_functor = |p: &Path| match parse(p)? {
            Document::Functor(f) => Ok(f),
            other => Err(self.syntax(1, 1, format!("expected a functor file, found {}", other.kind()))),
        };
        let from = self.load_ref(sl, source, &src_path, load_functor)?;
        let to = self.load_ref(tl, target, &tgt_path, load_functor)?;
        if write_two_category(&from.src) != write_two_category(&to.src)
            || write_two_category(&from.tgt) != write_two_category(&to.tgt)
        {
            return Err(self.syntax(tl.no, tl.col_of(target), "functors do not share source and target"));
        }
        let mut variance = None;
        for l in self.with_kw("variance") {
            let f = self.fields(l, "variance _")?;
            let k = match f[0] {
                "lax" => TransformationKind::Lax,
                "oplax" => TransformationKind::Oplax,
                v => return Err(self.syntax(l.no, l.toks[1].0, format!("variance must be lax or oplax, not `{v}`"))),
            };
            if variance.replace(k).is_some() {
                return Err(self.syntax(l.no, 1, "duplicate `variance` line"));
            }
        }
        let kind = variance.ok_or_else(|| self.syntax(1, 1, "missing `variance` line"))?;
        let (b, c) = (&from.src, &from.tgt);
        let mut at_obj: Vec<Option<MorId>> = vec![None; b.num_objects()];
        for l in self.with_kw("component") {
            let f = self.fields(l, "component _ = _")?;
            let x = b.find_obj(f[0]).ok_or_else(|| self.syntax(l.no, l.col_of(f[0]), "unknown object"))?;
            let m = c.find_mor(f[1]).ok_or_else(|| self.syntax(l.no, l.col_of(f[1]), "unknown 1-cell"))?;
            at_obj[x.ix()] = Some(m);
        }
        let mut missing = ValidationReport::new();
        for x in b.objects().filter(|x| at_obj[x.ix()].is_none()) {
            missing.push(ViolationKind::MissingTableEntry, format!("no component at {}", b.obj_name(x)));
        }
        if !missing.is_ok() {
            return Err(self.invalid(Kind::Transformation, missing));
        }
        let at_obj: Vec<MorId> = at_obj.into_iter().flatten().collect();
        let mut at_mor: Vec<Option<DefId>> = b
            .mors()
            .map(|u| b.is_identity_mor(u).then(|| c.id_def(at_obj[b.src(u).ix()])))
            .collect();
        for l in self.with_kw("component2") {
            let f = self.fields(l, "component2 _ = _")?;
            let u = b.find_mor(f[0]).ok_or_else(|| self.syntax(l.no, l.col_of(f[0]), "unknown 1-cell"))?;
            let a = c.find_def(f[1]).ok_or_else(|| self.syntax(l.no, l.col_of(f[1]), "unknown 2-cell"))?;
            at_mor[u.ix()] = Some(a);
        }
        for u in b.mors().filter(|u| at_mor[u.ix()].is_none()) {
            missing.push(ViolationKind::MissingTableEntry, format!("no component at {}", b.mor_name(u)));
        }
        if !missing.is_ok() {
            return Err(self.invalid(Kind::Transformation, missing));
        }
        Ok(TransformationFile {
            source: source.to_string(),
            target: target.to_string(),
            from,
            to,
            transformation: LaxTransformation {
                kind,
                at_obj,
                at_mor: at_mor.into_iter().flatten().collect(),
            },
        })
    }

    fn diagram(&self) -> Result<DiagramFile, FormatError> {
        let (base_rel, base_path, bl) = self.reference("base")?;
        let base = self.load_ref(bl, base_rel, &base_path, load_two_category)?;
        let mut fibre_paths: Vec<Option<String>> = vec![None; base.num_objects()];
        let mut fibres: Vec<Option<TwoCategory>> = vec![None; base.num_objects()];
        for l in self.with_kw("fibre") {
            let f = self.fields(l, "fibre _ = _")?;
            let x = base
                .find_obj(f[0])
                .ok_or_else(|| self.syntax(l.no, l.col_of(f[0]), format!("unknown base object `{}`", f[0])))?;
            if fibre_paths[x.ix()].is_some() {
                return Err(self.syntax(l.no, 1, format!("duplicate fibre for `{}`", f[0])));
            }
            fibres[x.ix()] = Some(self.load_ref(l, f[1], &self.dir.join(f[1]), load_two_category)?);
            fibre_paths[x.ix()] = Some(f[1].to_string());
        }
        if let Some(x) = base.objects().find(|x| fibres[x.ix()].is_none()) {
            return Err(self.syntax(bl.no, 1, format!("no fibre declared for `{}`", base.obj_name(x))));
        }
        let fibres: Vec<TwoCategory> = fibres.into_iter().flatten().collect();
        let fib = |x: ObjId| &fibres[x.ix()];

        let find_mor = |l: &Line<'a>, n: &str| {
            base.find_mor(n)
                .ok_or_else(|| self.syntax(l.no, l.col_of(n), format!("unknown base 1-cell `{n}`")))
        };
        let in_fibre = |l: &Line<'a>, n: &str, found: bool| {
            if found {
                Ok(())
            } else {
                Err(self.syntax(l.no, l.col_of(n), format!("unknown fibre cell `{n}`")))
            }
        };

        // `u*: F_{tgt u} → F_{src u}`; identity base 1-cells default to identity functors.
        let mut obj_map: Vec<Vec<Option<ObjId>>> = base
            .mors()
            .map(|u| {
                let from = fib(base.tgt(u));
                from.objects().map(|a| base.is_identity_mor(u).then_some(a)).collect()
            })
            .collect();
        for l in self.with_kw("restrict0") {
            let f = self.fields(l, "restrict0 _ : _ -> _")?;
            let u = find_mor(l, f[0])?;
            let (from, to) = (fib(base.tgt(u)), fib(base.src(u)));
            let (a, b) = (from.find_obj(f[1]), to.find_obj(f[2]));
            in_fibre(l, f[1], a.is_some())?;
            in_fibre(l, f[2], b.is_some())?;
            obj_map[u.ix()][a.unwrap().ix()] = b;
        }
        let mut missing = ValidationReport::new();
        for u in base.mors() {
            for a in fib(base.tgt(u)).objects().filter(|a| obj_map[u.ix()][a.ix()].is_none()) {
                missing.push(
                    ViolationKind::MissingTableEntry,
                    format!("no restriction along {} of object {}", base.mor_name(u), fib(base.tgt(u)).obj_name(a)),
                );
            }
        }
        if !missing.is_ok() {
            return Err(self.invalid(Kind::Diagram, missing));
        }
        let obj_map: Vec<Vec<ObjId>> = obj_map.into_iter().map(|v| v.into_iter().flatten().collect()).collect();

        let mut mor_map: Vec<Vec<Option<MorId>>> = base
            .mors()
            .map(|u| {
                let (from, to) = (fib(base.tgt(u)), fib(base.src(u)));
                from.mors()
                    .map(|m| {
                        if base.is_identity_mor(u) {
                            Some(m)
                        } else {
                            from.is_identity_mor(m).then(|| to.id_mor(obj_map[u.ix()][from.src(m).ix()]))
                        }
                    })
                    .collect()
            })
            .collect();
        for l in self.with_kw("restrict1") {
            let f = self.fields(l, "restrict1 _ : _ -> _")?;
            let u = find_mor(l, f[0])?;
            let (from, to) = (fib(base.tgt(u)), fib(base.src(u)));
            let (a, b) = (from.find_mor(f[1]), to.find_mor(f[2]));
            in_fibre(l, f[1], a.is_some())?;
            in_fibre(l, f[2], b.is_some())?;
            mor_map[u.ix()][a.unwrap().ix()] = b;
        }
        for u in base.mors() {
            for m in fib(base.tgt(u)).mors().filter(|m| mor_map[u.ix()][m.ix()].is_none()) {
                missing.push(
                    ViolationKind::MissingTableEntry,
                    format!("no restriction along {} of 1-cell {}", base.mor_name(u), fib(base.tgt(u)).mor_name(m)),
                );
            }
        }
        if !missing.is_ok() {
            return Err(self.invalid(Kind::Diagram, missing));
        }
        let mor_map: Vec<Vec<MorId>> = mor_map.into_iter().map(|v| v.into_iter().flatten().collect()).collect();

        let mut def_map: Vec<Vec<Option<DefId>>> = base
            .mors()
            .map(|u| {
                let (from, to) = (fib(base.tgt(u)), fib(base.src(u)));
                from.defs()
                    .map(|a| {
                        if base.is_identity_mor(u) {
                            Some(a)
                        } else {
                            from.is_identity_def(a).then(|| to.id_def(mor_map[u.ix()][from.def_src(a).ix()]))
                        }
                    })
                    .collect()
            })
            .collect();
        for l in self.with_kw("restrict2") {
            let f = self.fields(l, "restrict2 _ : _ -> _")?;
            let u = find_mor(l, f[0])?;
            let (from, to) = (fib(base.tgt(u)), fib(base.src(u)));
            let (a, b) = (from.find_def(f[1]), to.find_def(f[2]));
            in_fibre(l, f[1], a.is_some())?;
            in_fibre(l, f[2], b.is_some())?;
            def_map[u.ix()][a.unwrap().ix()] = b;
        }
        for u in base.mors() {
            for a in fib(base.tgt(u)).defs().filter(|a| def_map[u.ix()][a.ix()].is_none()) {
                missing.push(
                    ViolationKind::MissingTableEntry,
                    format!("no restriction along {} of 2-cell {}", base.mor_name(u), fib(base.tgt(u)).def_name(a)),
                );
            }
        }
        if !missing.is_ok() {
            return Err(self.invalid(Kind::Diagram, missing));
        }
        let restrict: Vec<TwoFunctor> = base
            .mors()
            .map(|u| TwoFunctor {
                obj: obj_map[u.ix()].clone(),
                mor: mor_map[u.ix()].clone(),
                def: def_map[u.ix()].iter().flatten().copied().collect(),
            })
            .collect();

        // `α*_a: u*a → v*a` in `F_{src u}`; identity 2-cells default to identities.
        let mut deform: Vec<Vec<Option<MorId>>> = base
            .defs()
            .map(|al| {
                let u = base.def_src(al);
                let to = fib(base.src(u));
                fib(base.tgt(u))
                    .objects()
                    .map(|a| base.is_identity_def(al).then(|| to.id_mor(restrict[u.ix()].on_obj(a))))
                    .collect()
            })
            .collect();
        for l in self.with_kw("deform") {
            let f = self.fields(l, "deform _ _ = _")?;
            let al = base
                .find_def(f[0])
                .ok_or_else(|| self.syntax(l.no, l.col_of(f[0]), format!("unknown base 2-cell `{}`", f[0])))?;
            let u = base.def_src(al);
            let (from, to) = (fib(base.tgt(u)), fib(base.src(u)));
            let (a, m) = (from.find_obj(f[1]), to.find_mor(f[2]));
            in_fibre(l, f[1], a.is_some())?;
            in_fibre(l, f[2], m.is_some())?;
            deform[al.ix()][a.unwrap().ix()] = m;
        }
        for al in base.defs() {
            let from = fib(base.tgt(base.def_src(al)));
            for a in from.objects().filter(|a| deform[al.ix()][a.ix()].is_none()) {
                missing.push(
                    ViolationKind::MissingTableEntry,
                    format!("no component of {} at {}", base.def_name(al), from.obj_name(a)),
                );
            }
        }
        if !missing.is_ok() {
            return Err(self.invalid(Kind::Diagram, missing));
        }

        // `ζ_{u,v,a}: v*u*a → (u∘v)*a` in `F_{src v}`; pairs with an identity default to identities.
        let mut zeta: HashMap<(MorId, MorId), Vec<Option<MorId>>> = composable_pairs(&base)
            .into_iter()
            .map(|(u, v)| {
                let to = fib(base.src(v));
                let trivial = base.is_identity_mor(u) || base.is_identity_mor(v);
                let col = fib(base.tgt(u))
                    .objects()
                    .map(|a| {
                        trivial.then(|| to.id_mor(restrict[v.ix()].on_obj(restrict[u.ix()].on_obj(a))))
                    })
                    .collect();
                ((u, v), col)
            })
            .collect();
        for l in self.with_kw("zeta") {
            let f = self.fields(l, "zeta _ _ _ = _")?;
            let (u, v) = (find_mor(l, f[0])?, find_mor(l, f[1])?);
            let Some(col) = zeta.get_mut(&(u, v)) else {
                return Err(self.syntax(l.no, l.col_of(f[0]), "zeta on a non-composable pair"));
            };
            let (from, to) = (fib(base.tgt(u)), fib(base.src(v)));
            let (a, m) = (from.find_obj(f[2]), to.find_mor(f[3]));
            in_fibre(l, f[2], a.is_some())?;
            in_fibre(l, f[3], m.is_some())?;
            col[a.unwrap().ix()] = m;
        }
        let mut pairs: Vec<&(MorId, MorId)> = zeta.keys().collect();
        pairs.sort();
        for &(u, v) in pairs {
            let from = fib(base.tgt(u));
            for a in from.objects().filter(|a| zeta[&(u, v)][a.ix()].is_none()) {
                missing.push(
                    ViolationKind::MissingTableEntry,
                    format!("no zeta for ({}, {}) at {}", base.mor_name(u), base.mor_name(v), from.obj_name(a)),
                );
            }
        }
        if !missing.is_ok() {
            return Err(self.invalid(Kind::Diagram, missing));
        }

        Ok(DiagramFile {
            base_path: base_rel.to_string(),
            fibre_paths: fibre_paths.into_iter().flatten().collect(),
            diagram: TwoDiagram {
                base,
                fibres,
                restrict,
                deform: deform.into_iter().map(|v| v.into_iter().flatten().collect()).collect(),
                zeta: zeta
                    .into_iter()
                    .map(|(k, v)| (k, v.into_iter().flatten().collect()))
                    .collect(),
            },
        })
    }
}

// Canonical writers.

fn finish(kind: Kind, mut decls: Vec<String>) -> String {
    decls.sort();
    decls.dedup();
    let mut out = format!("format {FORMAT_VERSION}\nkind {kind}\n");
    for d in decls {
        out.push_str(&d);
        out.push('\n');
    }
    out
}

fn two_category_decls(c: &TwoCategory, with_defs: bool) -> Vec<String> {
    let mut d = Vec::new();
    for x in c.objects() {
        d.push(format!("object {}", c.obj_name(x)));
    }
    for u in c.mors().filter(|&u| !c.is_identity_mor(u)) {
        d.push(format!("cell1 {} : {} -> {}", c.mor_name(u), c.obj_name(c.src(u)), c.obj_name(c.tgt(u))));
    }
    let (hcomp1, vcomp, hcomp2) = c.raw_tables();
    for (&(u, v), &w) in hcomp1 {
        let implied = (v == c.id_mor(c.src(u)) && w == u) || (u == c.id_mor(c.tgt(v)) && w == v);
        if !implied {
            d.push(format!("hcomp1 {} o {} = {}", c.mor_name(u), c.mor_name(v), c.mor_name(w)));
        }
    }
    if !with_defs {
        return d;
    }
    for a in c.defs().filter(|&a| !c.is_identity_def(a)) {
        d.push(format!("cell2 {} : {} => {}", c.def_name(a), c.mor_name(c.def_src(a)), c.mor_name(c.def_tgt(a))));
    }
    for (&(b, a), &e) in vcomp {
        let implied = (a == c.id_def(c.def_src(b)) && e == b) || (b == c.id_def(c.def_tgt(a)) && e == a);
        if !implied {
            d.push(format!("vcomp {} . {} = {}", c.def_name(b), c.def_name(a), c.def_name(e)));
        }
    }
    for (&(b, a), &e) in hcomp2 {
        let (x, y) = (c.src(c.def_src(b)), c.tgt(c.def_src(a)));
        let unit = |z: ObjId| c.id_def(c.id_mor(z));
        let from_ids = c.is_identity_def(b)
            && c.is_identity_def(a)
            && hcomp1
                .get(&(c.def_src(b), c.def_src(a)))
                .is_some_and(|&w| e == c.id_def(w));
        let implied = (a == unit(x) && e == b) || (b == unit(y) && e == a) || from_ids;
        if !implied {
            d.push(format!("hcomp2 {} o {} = {}", c.def_name(b), c.def_name(a), c.def_name(e)));
        }
    }
    d
}

pub fn write_two_category(c: &TwoCategory) -> String {
    finish(Kind::TwoCat, two_category_decls(c, true))
}

fn category_decls(c: &Category) -> Vec<String> {
    let mut d = Vec::new();
    for x in c.objects() {
        d.push(format!("object {}", c.obj_name(x)));
    }
    for f in c.arrows().filter(|&f| !c.is_identity(f)) {
        d.push(format!("cell1 {} : {} -> {}", c.arrow_name(f), c.obj_name(c.src(f)), c.obj_name(c.tgt(f))));
    }
    for f in c.arrows() {
        for g in c.arrows() {
            let Some(h) = c.try_compose(f, g) else { continue };
            let implied = (c.is_identity(g) && h == f) || (c.is_identity(f) && h == g);
            if !implied {
                d.push(format!("hcomp1 {} o {} = {}", c.arrow_name(f), c.arrow_name(g), c.arrow_name(h)));
            }
        }
    }
    d
}

pub fn write_category(c: &Category) -> String {
    finish(Kind::Category, category_decls(c))
}

pub fn write_monoidal(m: &StrictMonoidal) -> String {
    let c = &m.cat;
    let mut d = category_decls(c);
    d.push(format!("unit {}", c.obj_name(m.unit)));
    for (&(a, b), &e) in &m.tensor_obj {
        d.push(format!("tensor {} * {} = {}", c.obj_name(a), c.obj_name(b), c.obj_name(e)));
    }
    for (&(f, g), &h) in &m.tensor_arrow {
        let implied = c.is_identity(f)
            && c.is_identity(g)
            && m.tensor_obj.get(&(c.src(f), c.src(g))).is_some_and(|&x| h == c.id(x));
        if !implied {
            d.push(format!("tensor1 {} * {} = {}", c.arrow_name(f), c.arrow_name(g), c.arrow_name(h)));
        }
    }
    finish(Kind::Monoidal, d)
}

pub fn write_functor(f: &FunctorFile) -> String {
    let (s, t, g) = (&f.src, &f.tgt, &f.functor);
    let mut d = vec![format!("source {}", f.source), format!("target {}", f.target)];
    for x in s.objects() {
        d.push(format!("map0 {} -> {}", s.obj_name(x), t.obj_name(g.on_obj(x))));
    }
    for u in s.mors() {
        if !(s.is_identity_mor(u) && g.on_mor(u) == t.id_mor(g.on_obj(s.src(u)))) {
            d.push(format!("map1 {} -> {}", s.mor_name(u), t.mor_name(g.on_mor(u))));
        }
    }
    for a in s.defs() {
        if !(s.is_identity_def(a) && g.on_def(a) == t.id_def(g.on_mor(s.def_src(a)))) {
            d.push(format!("map2 {} -> {}", s.def_name(a), t.def_name(g.on_def(a))));
        }
    }
    for (&(u, v), &a) in &g.constraint {
        if a != t.id_def(g.on_mor(s.compose(u, v))) {
            d.push(format!("constraint {} o {} = {}", s.mor_name(u), s.mor_name(v), t.def_name(a)));
        }
    }
    finish(Kind::Functor, d)
}

pub fn write_transformation(t: &TransformationFile) -> String {
    let (b, c, x) = (&t.from.src, &t.from.tgt, &t.transformation);
    let variance = match x.kind {
        TransformationKind::Lax => "lax",
        TransformationKind::Oplax => "oplax",
    };
    let mut d = vec![
        format!("source {}", t.source),
        format!("target {}", t.target),
        format!("variance {variance}"),
    ];
    for o in b.objects() {
        d.push(format!("component {} = {}", b.obj_name(o), c.mor_name(x.at_obj[o.ix()])));
    }
    for u in b.mors() {
        let a = x.at_mor[u.ix()];
        if !(b.is_identity_mor(u) && a == c.id_def(x.at_obj[b.src(u).ix()])) {
            d.push(format!("component2 {} = {}", b.mor_name(u), c.def_name(a)));
        }
    }
    finish(Kind::Transformation, d)
}

pub fn write_diagram(df: &DiagramFile) -> String {
    let dg = &df.diagram;
    let base = &dg.base;
    let fib = |x: ObjId| &dg.fibres[x.ix()];
    let mut d = vec![format!("base {}", df.base_path)];
    for x in base.objects() {
        d.push(format!("fibre {} = {}", base.obj_name(x), df.fibre_paths[x.ix()]));
    }
    for u in base.mors() {
        let (from, to, r) = (fib(base.tgt(u)), fib(base.src(u)), &dg.restrict[u.ix()]);
        let ident = base.is_identity_mor(u);
        let name = base.mor_name(u);
        for a in from.objects() {
            if !(ident && r.on_obj(a) == a) {
                d.push(format!("restrict0 {name} : {} -> {}", from.obj_name(a), to.obj_name(r.on_obj(a))));
            }
        }
        for m in from.mors() {
            let default = if ident {
                Some(m)
            } else {
                from.is_identity_mor(m).then(|| to.id_mor(r.on_obj(from.src(m))))
            };
            if default != Some(r.on_mor(m)) {
                d.push(format!("restrict1 {name} : {} -> {}", from.mor_name(m), to.mor_name(r.on_mor(m))));
            }
        }
        for a in from.defs() {
            let default = if ident {
                Some(a)
            } else {
                from.is_identity_def(a).then(|| to.id_def(r.on_mor(from.def_src(a))))
            };
            if default != Some(r.on_def(a)) {
                d.push(format!("restrict2 {name} : {} -> {}", from.def_name(a), to.def_name(r.on_def(a))));
            }
        }
    }
    for al in base.defs() {
        let u = base.def_src(al);
        let (from, to) = (fib(base.tgt(u)), fib(base.src(u)));
        for a in from.objects() {
            let m = dg.deform[al.ix()][a.ix()];
            if !(base.is_identity_def(al) && m == to.id_mor(dg.restrict[u.ix()].on_obj(a))) {
                d.push(format!("deform {} {} = {}", base.def_name(al), from.obj_name(a), to.mor_name(m)));
            }
        }
    }
    for (&(u, v), col) in &dg.zeta {
        let (from, to) = (fib(base.tgt(u)), fib(base.src(v)));
        let trivial = base.is_identity_mor(u) || base.is_identity_mor(v);
        for a in from.objects() {
            let m = col[a.ix()];
            let vu = dg.restrict[v.ix()].on_obj(dg.restrict[u.ix()].on_obj(a));
            if !(trivial && m == to.id_mor(vu)) {
                d.push(format!(
                    "zeta {} {} {} = {}",
                    base.mor_name(u),
                    base.mor_name(v),
                    from.obj_name(a),
                    to.mor_name(m)
                ));
            }
        }
    }
    finish(Kind::Diagram, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twocat::ArrowId;

    fn origin() -> PathBuf {
        PathBuf::from("mem.tc")
    }

    #[test]
    fn walking_two_cell_round_trips() {
        let e = TwoCategory::walking_two_cell();
        let text = write_two_category(&e);
        assert_eq!(
            text,
            "format 1\nkind twocat\ncell1 u : 1 -> 0\ncell1 v : 1 -> 0\ncell2 a : u => v\nobject 0\nobject 1\n"
        );
        let Document::TwoCat(back) = parse_str(&text, &origin()).unwrap() else {
            panic!("wrong kind")
        };
        assert_eq!(write_two_category(&back), text);
    }

    #[test]
    fn suspension_round_trips_through_monoidal_and_twocat() {
        let m = StrictMonoidal::cyclic_discrete(3);
        let text = write_monoidal(&m);
        let Document::Monoidal(back) = parse_str(&text, &origin()).unwrap() else {
            panic!("wrong kind")
        };
        assert_eq!(write_monoidal(&back), text);
        let c = TwoCategory::suspended_cyclic(3);
        let t2 = write_two_category(&c);
        let Document::TwoCat(c2) = parse_str(&t2, &origin()).unwrap() else {
            panic!("wrong kind")
        };
        assert_eq!(write_two_category(&c2), t2);
        assert!(t2.contains("hcomp1 g1 o g2 = id:*"));
    }

    #[test]
    fn comments_and_spacing_are_ignored() {
        let text = "# E\nformat 1\nkind   twocat\nobject 0 # target\nobject 1\ncell1 u : 1 -> 0\n\n";
        let doc = parse_str(text, &origin()).unwrap();
        assert_eq!(doc.canonical_text(), "format 1\nkind twocat\ncell1 u : 1 -> 0\nobject 0\nobject 1\n");
    }

    #[test]
    fn dangling_target_is_a_boundary_mismatch() {
        let text = "format 1\nkind twocat\nobject x\ncell1 u : x -> y\n";
        let err = parse_str(text, &origin()).unwrap_err();
        assert!(err.report().unwrap().has(ViolationKind::BoundaryMismatch), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let text = "format 1\nkind twocat\nobject x\ncell1 u x -> x\n";
        match parse_str(text, &origin()).unwrap_err() {
            FormatError::Syntax { line, col, .. } => assert_eq!((line, col), (4, 9)),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn unknown_kind_is_reported() {
        let text = "format 1\nkind operad\n";
        assert!(matches!(parse_str(text, &origin()), Err(FormatError::UnknownKind { .. })));
    }

    #[test]
    fn missing_fibre_file_is_a_resolution_error() {
        let dir = std::env::temp_dir().join(format!("laxnerve-format-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("pt.tc"), write_two_category(&TwoCategory::terminal())).unwrap();
        let text = "format 1\nkind diagram\nbase pt.tc\nfibre * = nowhere.tc\n";
        let err = parse_str(text, &dir.join("d.2d")).unwrap_err();
        match err {
            FormatError::Syntax { line, msg, .. } => {
                assert_eq!(line, 4);
                assert!(msg.contains("nowhere.tc"));
            }
            e => panic!("unexpected {e}"),
        }
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn arrow_identity_tensors_are_implicit() {
        let m = StrictMonoidal::idempotent();
        let text = write_monoidal(&m);
        assert!(text.contains("tensor1 f * f = f"));
        assert!(!text.contains("tensor1 id:e * id:e"));
        let Document::Monoidal(back) = parse_str(&text, &origin()).unwrap() else {
            panic!("wrong kind")
        };
        assert_eq!(back.tensor_arrow.len(), 4);
        let _: ArrowId = back.tensor_arrows(back.cat.id(back.unit), back.cat.id(back.unit));
    }
}
