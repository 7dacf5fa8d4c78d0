//! The `.pxl` fixture format.
//!
//! Line oriented, `#` starts a comment. A file is either lattice style:
//!
//! ```text
//! lattice C3
//! elements 0 m 1
//! hasse 0<m m<1
//! prox 0<0 0<m 0<1 m<1 1<1
//! ```
//!
//! or axiom style:
//!
//! ```text
//! entail T
//! generators a b
//! axiom a |- b
//! axiom |- a b
//! approx a<a b<b
//! ```
//!
//! Either kind may carry `grid p1 p2 ...`. Lines holding only pairs continue
//! the preceding `hasse`, `prox` or `approx` section.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use proxlat_core::constructions::RationalGrid;
use proxlat_core::{AxiomSet, BinRel, DistLattice, FinSet, Universe};

/// Syntax or reference error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Content {
    Lattice {
        lattice: DistLattice,
        /// `None` means `≺` is the order.
        prox: Option<BinRel>,
    },
    Axioms {
        axioms: AxiomSet,
        /// `None` means `≺` is the identity.
        approx: Option<BinRel>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureFile {
    pub path: Option<PathBuf>,
    pub name: String,
    pub content: Content,
    pub grid: Option<RationalGrid>,
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.into() }
    }
}

fn tokenize(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut column = 0;
    for (byte, ch) in line.char_indices() {
        column += 1;
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((byte, column)),
            (true, Some((b, c))) => {
                out.push(Token { text: &line[b..byte], line: line_no, column: c });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        out.push(Token { text: &line[b..], line: line_no, column: c });
    }
    out
}

const KEYWORDS: [&str; 9] = ["lattice", "entail", "elements", "hasse", "prox", "generators", "axiom", "approx", "grid"];

/// Whether `s` can appear as an element or generator name.
pub fn is_valid_label(s: &str) -> bool {
    !s.is_empty()
        && !s.contains('<')
        && !s.contains('#')
        && s != "|-"
        && !s.chars().any(char::is_whitespace)
        && !KEYWORDS.contains(&s)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Hasse,
    Prox,
    Approx,
}

#[derive(Default)]
struct Builder<'a> {
    header: Option<(bool, String, Token<'a>)>,
    labels: Option<(Vec<String>, Token<'a>)>,
    covers: Vec<(usize, usize)>,
    hasse_at: Option<Token<'a>>,
    prec: Option<Vec<(usize, usize)>>,
    axioms: Vec<(FinSet, FinSet)>,
    grid: Option<RationalGrid>,
}

impl<'a> Builder<'a> {
    fn is_lattice(&self) -> bool {
        matches!(self.header, Some((true, _, _)))
    }

    fn declared(&self, kw: &Token<'a>) -> Result<&[String], ParseError> {
        match &self.labels {
            Some((l, _)) => Ok(l),
            None => {
                let what = if self.is_lattice() { "elements" } else { "generators" };
                Err(kw.error(format!("`{}` before `{what}`", kw.text)))
            }
        }
    }

    fn symbol(&self, t: &Token<'a>, text: &str, offset: usize) -> Result<usize, ParseError> {
        let labels = self.labels.as_ref().map(|(l, _)| l.as_slice()).unwrap_or(&[]);
        labels.iter().position(|l| l == text).ok_or_else(|| ParseError {
            line: t.line,
            column: t.column + offset,
            message: format!("unknown symbol `{text}`"),
        })
    }

    fn pair(&self, t: &Token<'a>) -> Result<(usize, usize), ParseError> {
        let Some((a, b)) = t.text.split_once('<') else {
            return Err(t.error(format!("expected a pair `a<b`, found `{}`", t.text)));
        };
        if a.is_empty() || b.is_empty() || b.contains('<') {
            return Err(t.error(format!("malformed pair `{}`", t.text)));
        }
        let left = self.symbol(t, a, 0)?;
        let right = self.symbol(t, b, a.chars().count() + 1)?;
        Ok((left, right))
    }

    fn pairs(&mut self, section: Section, tokens: &[Token<'a>]) -> Result<(), ParseError> {
        for t in tokens {
            let p = self.pair(t)?;
            match section {
                Section::Hasse => self.covers.push(p),
                Section::Prox | Section::Approx => self.prec.get_or_insert_with(Vec::new).push(p),
                Section::None => unreachable!("pairs outside a section"),
            }
        }
        Ok(())
    }
}

/// Parses fixture text. References must follow the `elements` or
/// `generators` line that declares them.
pub fn parse_fixture(text: &str) -> Result<FixtureFile, ParseError> {
    let mut b = Builder::default();
    let mut section = Section::None;
    let mut last = (1, 1);
    for (i, line) in text.lines().enumerate() {
        let tokens = tokenize(i + 1, line);
        last = (i + 1, line.chars().count() + 1);
        let Some((kw, rest)) = tokens.split_first() else { continue };
        let Some((is_lattice, _, _)) = &b.header else {
            let lattice = match kw.text {
                "lattice" => true,
                "entail" => false,
                _ => return Err(kw.error("expected `lattice NAME` or `entail NAME`")),
            };
            match rest {
                [name] => b.header = Some((lattice, name.text.to_string(), *kw)),
                [] => return Err(kw.error(format!("`{}` needs a name", kw.text))),
                [_, extra, ..] => return Err(extra.error("unexpected token after the name")),
            }
            continue;
        };
        let is_lattice = *is_lattice;
        let allowed: &[&str] = if is_lattice {
            &["elements", "hasse", "prox", "grid"]
        } else {
            &["generators", "axiom", "approx", "grid"]
        };
        if !KEYWORDS.contains(&kw.text) {
            if section == Section::None {
                return Err(kw.error(format!("unexpected `{}`", kw.text)));
            }
            b.pairs(section, &tokens)?;
            continue;
        }
        if !allowed.contains(&kw.text) {
            let kind = if is_lattice { "a lattice" } else { "an entail" };
            return Err(kw.error(format!("`{}` is not allowed in {kind} fixture", kw.text)));
        }
        section = Section::None;
        match kw.text {
            "elements" | "generators" => {
                if b.labels.is_some() {
                    return Err(kw.error(format!("duplicate `{}` line", kw.text)));
                }
                let mut labels: Vec<String> = Vec::new();
                for t in rest {
                    if !is_valid_label(t.text) {
                        return Err(t.error(format!("`{}` is not a valid name", t.text)));
                    }
                    if labels.iter().any(|l| l == t.text) {
                        return Err(t.error(format!("duplicate name `{}`", t.text)));
                    }
                    labels.push(t.text.to_string());
                }
                if is_lattice && labels.is_empty() {
                    return Err(kw.error("a lattice needs at least one element"));
                }
                b.labels = Some((labels, *kw));
            }
            "hasse" => {
                b.declared(kw)?;
                b.hasse_at.get_or_insert(*kw);
                section = Section::Hasse;
                b.pairs(section, rest)?;
            }
            "prox" | "approx" => {
                b.declared(kw)?;
                section = if is_lattice { Section::Prox } else { Section::Approx };
                b.prec.get_or_insert_with(Vec::new);
                b.pairs(section, rest)?;
            }
            "axiom" => {
                b.declared(kw)?;
                let Some(turn) = rest.iter().position(|t| t.text == "|-") else {
                    return Err(kw.error("axiom without `|-`"));
                };
                if let Some(t) = rest[turn + 1..].iter().find(|t| t.text == "|-") {
                    return Err(t.error("second `|-` in one axiom"));
                }
                let side = |ts: &[Token<'_>]| -> Result<FinSet, ParseError> {
                    ts.iter().try_fold(FinSet::EMPTY, |acc, t| Ok(acc.with(b.symbol(t, t.text, 0)?)))
                };
                let axiom = (side(&rest[..turn])?, side(&rest[turn + 1..])?);
                b.axioms.push(axiom);
            }
            "grid" => {
                if b.grid.is_some() {
                    return Err(kw.error("duplicate `grid` line"));
                }
                if rest.is_empty() {
                    return Err(kw.error("empty grid"));
                }
                let values = rest
                    .iter()
                    .map(|t| RationalGrid::parse_value(t.text).map_err(|e| t.error(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                b.grid = Some(RationalGrid::new(values));
            }
            _ => unreachable!("keyword list is exhaustive"),
        }
    }
    let eof = ParseError { line: last.0, column: last.1, message: String::new() };
    let Some((is_lattice, name, head)) = b.header.clone() else {
        return Err(ParseError { message: "empty fixture: expected `lattice NAME` or `entail NAME`".into(), ..eof });
    };
    let Some((labels, decl)) = b.labels.clone() else {
        let what = if is_lattice { "elements" } else { "generators" };
        return Err(ParseError { message: format!("missing `{what}` line"), ..eof });
    };
    let n = labels.len();
    let semantic = |t: &Token<'_>, e: proxlat_core::Error| t.error(e.to_string());
    let prec = b.prec.as_ref().map(|p| BinRel::from_pairs(n, n, p)).transpose().map_err(|e| semantic(&decl, e))?;
    let content = if is_lattice {
        let at = b.hasse_at.unwrap_or(decl);
        let lattice = DistLattice::from_hasse(labels, &b.covers).map_err(|e| semantic(&at, e))?;
        Content::Lattice { lattice, prox: prec }
    } else {
        let universe = Universe::new(labels).map_err(|e| semantic(&decl, e))?;
        let axioms = AxiomSet::with_axioms(universe, b.axioms).map_err(|e| semantic(&head, e))?;
        Content::Axioms { axioms, approx: prec }
    };
    Ok(FixtureFile { path: None, name, content, grid: b.grid })
}

/// Reads and parses a file, recording its path.
pub fn load_fixture(path: &Path) -> Result<FixtureFile, LoadError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LoadError::Io { path: path.to_path_buf(), message: e.to_string() })?;
    let mut f = parse_fixture(&text).map_err(|error| LoadError::Parse { path: path.to_path_buf(), error })?;
    f.path = Some(path.to_path_buf());
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error("{}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    #[error("{}: {error}", path.display())]
    Parse { path: PathBuf, error: ParseError },
}

const PAIRS_PER_LINE: usize = 8;

fn write_pairs(out: &mut String, keyword: &str, pairs: &[(usize, usize)], labels: &[String]) {
    let shown: Vec<String> = pairs.iter().map(|&(a, b)| format!("{}<{}", labels[a], labels[b])).collect();
    let mut chunks = shown.chunks(PAIRS_PER_LINE);
    match chunks.next() {
        Some(first) => {
            let _ = writeln!(out, "{keyword} {}", first.join(" "));
        }
        None => {
            let _ = writeln!(out, "{keyword}");
        }
    }
    for chunk in chunks {
        let _ = writeln!(out, "  {}", chunk.join(" "));
    }
}

fn bare(u: &Universe, a: FinSet) -> String {
    u.show_bare(a)
}

/// Renders a fixture so that [`parse_fixture`] gives it back. The Hasse
/// diagram is printed as covers, so redundant input edges are dropped.
pub fn print_fixture(f: &FixtureFile) -> String {
    let mut out = String::new();
    match &f.content {
        Content::Lattice { lattice, prox } => {
            let _ = writeln!(out, "lattice {}", f.name);
            let _ = writeln!(out, "elements {}", lattice.labels().join(" "));
            write_pairs(&mut out, "hasse", &lattice.covers(), lattice.labels());
            if let Some(p) = prox {
                write_pairs(&mut out, "prox", &p.pairs().collect::<Vec<_>>(), lattice.labels());
            }
        }
        Content::Axioms { axioms, approx } => {
            let u = axioms.universe();
            let _ = writeln!(out, "entail {}", f.name);
            let _ = writeln!(out, "generators {}", u.labels().join(" "));
            for &(a, b) in axioms.axioms() {
                let parts: Vec<String> =
                    [bare(u, a), "|-".into(), bare(u, b)].into_iter().filter(|s| !s.is_empty()).collect();
                let _ = writeln!(out, "axiom {}", parts.join(" "));
            }
            if let Some(p) = approx {
                write_pairs(&mut out, "approx", &p.pairs().collect::<Vec<_>>(), u.labels());
            }
        }
    }
    if let Some(g) = &f.grid {
        let _ = writeln!(out, "grid {g}");
    }
    out
}

impl FixtureFile {
    /// Element or generator names.
    pub fn labels(&self) -> &[String] {
        match &self.content {
            Content::Lattice { lattice, .. } => lattice.labels(),
            Content::Axioms { axioms, .. } => axioms.universe().labels(),
        }
    }

    pub fn is_lattice(&self) -> bool {
        matches!(self.content, Content::Lattice { .. })
    }
}
