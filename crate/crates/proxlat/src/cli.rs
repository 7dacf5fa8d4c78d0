//! Subcommands and the exit-code contract: 0 success, 1 a check failed,
//! 2 invalid input, 3 a size cap was hit.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use proxlat_core::constructions::{construct, Kind, RationalGrid};
use proxlat_core::duality::{verify_duality_theorem, TheoremId};
use proxlat_core::entail::{generated_scent_witness, validate_scent, ScentViolation};
use proxlat_core::fixtures::Fixture;
use proxlat_core::lattice::{validate_lattice, LatticeViolation};
use proxlat_core::prox::{functor_f, functor_g, validate_prox_relation, ProxLat, ProxRel};
use proxlat_core::spectra::{frame_iso, models_of_scent, points, rounded_ideals};
use proxlat_core::{generate_entailment, AxiomSet, BinRel, DistLattice, Error, FinSet, SCEnt, Universe};

use crate::dot::hasse_dot;
use crate::format::{load_fixture, print_fixture, Content, FixtureFile, LoadError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_SIZE_CAP: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "proxlat", version, about = "Strong proximity lattices, entailment relations and de Groot duality")]
pub struct Cli {
    /// Largest accepted number of elements or generators.
    #[arg(long, global = true, default_value_t = 64, value_name = "N")]
    pub max_size: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// List every entailed pair instead of a generating set of axioms.
    #[arg(long, global = true)]
    pub emit_relation: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every validator for the fixture kind.
    Validate { file: PathBuf },
    /// Build a construction and print it as an `entail` fixture.
    Construct {
        #[arg(value_parser = parse_kind)]
        kind: Kind,
        file: PathBuf,
        /// Rational grid for the valuation constructions, e.g. "0 1/2 1".
        #[arg(long)]
        grid: Option<String>,
    },
    /// De Groot dual of the fixture.
    Dual { file: PathBuf },
    /// Frame of rounded ideals.
    Spectrum { file: PathBuf },
    /// Rounded prime filters.
    Points { file: PathBuf },
    /// Models of the presented theory.
    Models { file: PathBuf },
    /// Verify one duality theorem.
    Check {
        #[arg(value_parser = parse_theorem)]
        theorem: TheoremId,
        file: PathBuf,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Search for an isomorphism between the spectra of two fixtures.
    Compare { first: PathBuf, second: PathBuf },
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit code with the text for standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{what} has {actual}, above --max-size {limit}")]
    TooLarge { what: String, actual: usize, limit: usize },
    #[error("--format dot is not available for `{0}`")]
    NoDot(&'static str),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(Error::SizeCap { .. }) | Failure::TooLarge { .. } => EXIT_SIZE_CAP,
            _ => EXIT_INVALID,
        }
    }
}

struct Report {
    code: u8,
    text: String,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { code: EXIT_OK, text }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_INVALID, stdout: String::new(), stderr: text },
            };
        }
    };
    match run(&cli) {
        Ok(r) => Outcome { code: r.code, stdout: r.text, stderr: String::new() },
        Err(e) => Outcome { code: e.code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let ctx = Context { cli };
    match &cli.command {
        Command::Validate { file } => ctx.validate(&ctx.load(file)?),
        Command::Construct { kind, file, grid } => ctx.construct(*kind, &ctx.load(file)?, grid.as_deref()),
        Command::Dual { file } => ctx.dual(&ctx.load(file)?),
        Command::Spectrum { file } => ctx.spectrum(&ctx.load(file)?),
        Command::Points { file } => ctx.no_dot("points")?.points(&ctx.load(file)?),
        Command::Models { file } => ctx.no_dot("models")?.models(&ctx.load(file)?),
        Command::Check { theorem, file, grid } => {
            ctx.no_dot("check")?.check(*theorem, &ctx.load(file)?, grid.as_deref())
        }
        Command::Compare { first, second } => ctx.no_dot("compare")?.compare(&ctx.load(first)?, &ctx.load(second)?),
    }
}

struct Context<'a> {
    cli: &'a Cli,
}

fn plural(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn show_elems(labels: &[String], set: FinSet) -> String {
    let parts: Vec<&str> = set.iter().map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

fn scent_violation(u: &Universe, v: &ScentViolation) -> String {
    match v {
        ScentViolation::NotIdempotent(a, b) => {
            format!("≺ is not idempotent at {} ≺ {}", u.label(*a), u.label(*b))
        }
        ScentViolation::UpperNotLower(a, b) => {
            format!(
                "{} ≺_U A′ ⊢ {} for some A′, but no B′ with {} ⊢ B′ ≺_L {}",
                u.show(*a),
                u.show(*b),
                u.show(*a),
                u.show(*b)
            )
        }
        ScentViolation::LowerNotUpper(a, b) => {
            format!(
                "{} ⊢ B′ ≺_L {} for some B′, but no A′ with {} ≺_U A′ ⊢ {}",
                u.show(*a),
                u.show(*b),
                u.show(*a),
                u.show(*b)
            )
        }
        ScentViolation::SizeMismatch => "≺ and ⊢ have different carriers".into(),
    }
}

impl<'a> Context<'a> {
    fn load(&self, path: &Path) -> Result<FixtureFile, Failure> {
        let f = load_fixture(path)?;
        let n = f.labels().len();
        if n > self.cli.max_size {
            let what = if f.is_lattice() { "lattice elements" } else { "generators" };
            return Err(Failure::TooLarge {
                what: format!("{} ({what})", f.name),
                actual: n,
                limit: self.cli.max_size,
            });
        }
        Ok(f)
    }

    fn no_dot(&self, command: &'static str) -> Result<&Self, Failure> {
        match self.cli.format {
            Format::Text => Ok(self),
            Format::Dot => Err(Failure::NoDot(command)),
        }
    }

    fn grid(&self, flag: Option<&str>, f: &FixtureFile) -> Result<Option<RationalGrid>, Failure> {
        match flag {
            Some(s) => Ok(Some(s.parse().map_err(|e: Error| Failure::Invalid(format!("--grid: {e}")))?)),
            None => Ok(f.grid.clone()),
        }
    }

    fn validate(&self, f: &FixtureFile) -> Result<Report, Failure> {
        self.no_dot("validate")?;
        let mut out = String::new();
        let code = match &f.content {
            Content::Lattice { lattice, prox } => validate_lattice_fixture(&mut out, &f.name, lattice, prox.as_ref())?,
            Content::Axioms { axioms, approx } => validate_axiom_fixture(&mut out, &f.name, axioms, approx.as_ref())?,
        };
        Ok(Report { code, text: out })
    }

    fn construct(&self, kind: Kind, f: &FixtureFile, grid: Option<&str>) -> Result<Report, Failure> {
        let base = strong_prox_lat(f)?;
        let grid = match self.grid(grid, f)? {
            None if kind.needs_grid() => Some(RationalGrid::uniform(4)),
            g if kind.needs_grid() => g,
            _ => None,
        };
        let c = construct(kind, &base, grid.as_ref())?;
        let u = c.universe().clone();
        if u.len() > self.cli.max_size {
            return Err(Failure::TooLarge {
                what: format!("{kind}({})", f.name),
                actual: u.len(),
                limit: self.cli.max_size,
            });
        }
        let check = c.check()?;
        let name = format!("{kind}({})", f.name);
        if self.cli.format == Format::Dot {
            let image = functor_f(&c.scent)?;
            return Ok(Report::ok(hasse_dot(&name, image.prox.lattice())));
        }
        let listed = if self.cli.emit_relation {
            c.scent.ent.pairs()?
        } else {
            match &c.axioms {
                Some(ax) => ax.canonical(),
                None => c.scent.ent.minimal_pairs()?,
            }
        };
        let fixture = FixtureFile {
            path: None,
            name: name.clone(),
            content: Content::Axioms {
                axioms: AxiomSet::with_axioms(u.clone(), listed.clone())?,
                approx: Some(c.scent.approx.clone()),
            },
            grid: grid.clone(),
        };
        let mut out = String::new();
        let _ = writeln!(out, "# {kind} of {}", f.name);
        if let Some(g) = &grid {
            let _ = writeln!(out, "# grid: {g}");
        }
        let _ = writeln!(out, "# generators: {}", u.len());
        match (&c.axioms, self.cli.emit_relation) {
            (_, true) => {
                let _ = writeln!(out, "# entailed pairs: {}", listed.len());
            }
            (Some(ax), false) => {
                let _ = writeln!(out, "# axioms: {}", ax.canonical().len());
            }
            (None, false) => {
                let _ = writeln!(out, "# minimal pairs: {} (built from the closed form)", listed.len());
            }
        }
        let _ = writeln!(out, "# models: {}", c.scent.ent.len());
        let _ = writeln!(out, "# approximation pairs: {}", c.scent.approx.len());
        for v in &check.report.violations {
            let _ = writeln!(out, "# strong continuity violation: {}", scent_violation(&u, v));
        }
        match check.generated {
            Some(true) => out.push_str("# generated conditions: hold\n"),
            Some(false) => {
                if let Some(((a, b), m)) =
                    generated_scent_witness(c.axioms.as_ref().expect("checked"), &c.scent.approx)?
                {
                    let _ = writeln!(
                        out,
                        "# generated conditions: fail at axiom {} ⊢ {} in model {}",
                        u.show(a),
                        u.show(b),
                        u.show(m)
                    );
                }
            }
            None => {}
        }
        let verdict = if check.holds() { "yes" } else { "no" };
        let _ = writeln!(out, "# strong continuous: {verdict}");
        out.push_str(&print_fixture(&fixture));
        let code = if check.holds() { EXIT_OK } else { EXIT_CHECK_FAILED };
        Ok(Report { code, text: out })
    }

    fn dual(&self, f: &FixtureFile) -> Result<Report, Failure> {
        let name = format!("dual({})", f.name);
        let content = match &f.content {
            Content::Lattice { lattice, prox } => {
                prox_lat(lattice, prox.as_ref())?;
                Content::Lattice { lattice: lattice.dual(), prox: prox.as_ref().map(BinRel::transpose) }
            }
            Content::Axioms { axioms, approx } => {
                scent_of(axioms, approx.as_ref())?;
                Content::Axioms { axioms: axioms.reversed(), approx: approx.as_ref().map(BinRel::transpose) }
            }
        };
        let d = FixtureFile { path: None, name, content, grid: f.grid.clone() };
        if self.cli.format == Format::Dot {
            let lattice = match &d.content {
                Content::Lattice { lattice, .. } => lattice.clone(),
                Content::Axioms { axioms, approx } => {
                    functor_f(&scent_of(axioms, approx.as_ref())?)?.prox.lattice().clone()
                }
            };
            return Ok(Report::ok(hasse_dot(&d.name, &lattice)));
        }
        if self.cli.emit_relation {
            if let Content::Axioms { axioms, approx } = &d.content {
                let e = scent_of(axioms, approx.as_ref())?;
                let listed = AxiomSet::with_axioms(axioms.universe().clone(), e.ent.pairs()?)?;
                let full = FixtureFile { content: Content::Axioms { axioms: listed, approx: approx.clone() }, ..d };
                return Ok(Report::ok(print_fixture(&full)));
            }
        }
        Ok(Report::ok(print_fixture(&d)))
    }

    fn spectrum(&self, f: &FixtureFile) -> Result<Report, Failure> {
        let p = any_prox_lat(f)?;
        let frame = rounded_ideals(&p)?;
        let name = format!("RIdl({})", f.name);
        if self.cli.format == Format::Dot {
            return Ok(Report::ok(hasse_dot(&name, frame.lattice())));
        }
        let as_fixture = FixtureFile {
            path: None,
            name,
            content: Content::Lattice { lattice: frame.lattice().clone(), prox: None },
            grid: None,
        };
        let mut out = format!("# {}\n", plural(frame.len(), "rounded ideal", "rounded ideals"));
        out.push_str(&print_fixture(&as_fixture));
        Ok(Report::ok(out))
    }

    fn points(&self, f: &FixtureFile) -> Result<Report, Failure> {
        let p = any_prox_lat(f)?;
        let pts = points(&p)?;
        let shown: Vec<String> = pts.iter().map(|&x| show_elems(p.lattice().labels(), x)).collect();
        Ok(Report::ok(listing(pts.len(), "point", "points", &shown)))
    }

    fn models(&self, f: &FixtureFile) -> Result<Report, Failure> {
        let e = match &f.content {
            Content::Lattice { lattice, prox } => functor_g(&prox_lat(lattice, prox.as_ref())?)?,
            Content::Axioms { axioms, approx } => scent_of(axioms, approx.as_ref())?,
        };
        let mut models = models_of_scent(&e);
        models.sort_unstable();
        let u = e.ent.universe();
        let shown: Vec<String> = models.iter().map(|&m| u.show(m)).collect();
        Ok(Report::ok(listing(models.len(), "model", "models", &shown)))
    }

    fn check(&self, id: TheoremId, f: &FixtureFile, grid: Option<&str>) -> Result<Report, Failure> {
        let fixture = Fixture { name: f.name.clone(), prox: strong_prox_lat(f)? };
        let grid = self.grid(grid, f)?;
        let c = verify_duality_theorem(id, &fixture, grid.as_ref())?;
        let code = if c.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
        let mut text = c.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        if let Some(e) = c.counterexample() {
            let _ = writeln!(text, "counterexample: {}", e.claim);
        }
        Ok(Report { code, text })
    }

    fn compare(&self, a: &FixtureFile, b: &FixtureFile) -> Result<Report, Failure> {
        let fa = rounded_ideals(&any_prox_lat(a)?)?;
        let fb = rounded_ideals(&any_prox_lat(b)?)?;
        let mut out = String::new();
        let _ = writeln!(out, "RIdl({}): {} elements, RIdl({}): {} elements", a.name, fa.len(), b.name, fb.len());
        match frame_iso(&fa, &fb)? {
            Some(map) => {
                out.push_str("isomorphic\n");
                for (x, &y) in map.iter().enumerate() {
                    let _ = writeln!(out, "  {} ↦ {}", fa.lattice().label(x), fb.lattice().label(y));
                }
                Ok(Report::ok(out))
            }
            None => {
                out.push_str("not isomorphic\n");
                let _ = writeln!(out, "counterexample: {}", frame_obstruction(fa.lattice(), fb.lattice()));
                Ok(Report { code: EXIT_CHECK_FAILED, text: out })
            }
        }
    }
}

fn listing(n: usize, one: &str, many: &str, shown: &[String]) -> String {
    if shown.is_empty() {
        format!("{}\n", plural(n, one, many))
    } else {
        format!("{}: {}\n", plural(n, one, many), shown.join(", "))
    }
}

/// An invariant telling two non-isomorphic finite lattices apart.
fn frame_obstruction(a: &DistLattice, b: &DistLattice) -> String {
    if a.len() != b.len() {
        return format!("sizes differ ({} vs {})", a.len(), b.len());
    }
    let profile = |l: &DistLattice| {
        let mut v: Vec<(u32, u32)> =
            (0..l.len()).map(|x| (l.down_set(x).count_ones(), l.up_set(x).count_ones())).collect();
        v.sort_unstable();
        v
    };
    if profile(a) != profile(b) {
        return "the multisets of (|↓x|, |↑x|) differ".into();
    }
    let covers = |l: &DistLattice| l.covers().len();
    if covers(a) != covers(b) {
        return format!("cover counts differ ({} vs {})", covers(a), covers(b));
    }
    "exhaustive search found no order isomorphism".into()
}

fn prox_lat(lattice: &DistLattice, prox: Option<&BinRel>) -> Result<ProxLat, Failure> {
    let report = validate_lattice(lattice);
    if !report.is_valid() {
        return Err(Failure::Invalid(report.to_string().trim_end().into()));
    }
    Ok(match prox {
        Some(p) => ProxLat::new(lattice.clone(), p.clone())?,
        None => ProxLat::with_order(lattice.clone()),
    })
}

fn scent_of(axioms: &AxiomSet, approx: Option<&BinRel>) -> Result<SCEnt, Failure> {
    let ent = generate_entailment(axioms)?;
    let approx = match approx {
        Some(p) => p.clone(),
        None => BinRel::identity(axioms.universe().len())?,
    };
    let report = validate_scent(&ent, &approx);
    if let Some(v) = report.violations.first() {
        return Err(Failure::Invalid(format!("not strong continuous: {}", scent_violation(ent.universe(), v))));
    }
    Ok(SCEnt::new(ent, approx)?)
}

/// A proximity lattice for either kind; axiom fixtures go through `F`.
fn any_prox_lat(f: &FixtureFile) -> Result<ProxLat, Failure> {
    match &f.content {
        Content::Lattice { lattice, prox } => prox_lat(lattice, prox.as_ref()),
        Content::Axioms { axioms, approx } => Ok(functor_f(&scent_of(axioms, approx.as_ref())?)?.prox),
    }
}

fn strong_prox_lat(f: &FixtureFile) -> Result<ProxLat, Failure> {
    let p = any_prox_lat(f)?;
    let c = p.classify();
    if !c.strong() {
        let first = c.describe(p.lattice()).lines().find(|l| l.contains("fails")).unwrap_or_default().to_string();
        return Err(Failure::Invalid(format!("{} is not a strong proximity lattice: {first}", f.name)));
    }
    Ok(p)
}

fn law_name(v: &LatticeViolation) -> &'static str {
    match v {
        LatticeViolation::Reflexivity(_) => "reflexivity",
        LatticeViolation::Antisymmetry(..) => "antisymmetry",
        LatticeViolation::Transitivity(..) => "transitivity",
        LatticeViolation::Meet(..) => "meet",
        LatticeViolation::Join(..) => "join",
        LatticeViolation::Bottom => "bottom",
        LatticeViolation::Top => "top",
        LatticeViolation::Distributivity(..) => "distributivity",
    }
}

fn validate_lattice_fixture(
    out: &mut String,
    name: &str,
    l: &DistLattice,
    prox: Option<&BinRel>,
) -> Result<u8, Failure> {
    let _ = writeln!(out, "lattice {name}: {}", plural(l.len(), "element", "elements"));
    let report = validate_lattice(l);
    if report.is_valid() {
        out.push_str("lattice: valid\n");
    }
    for (kind, witness) in &report.violations {
        let _ = writeln!(out, "{} fails: {witness}", law_name(kind));
    }
    if !report.is_valid() {
        out.push_str("result: invalid\n");
        return Ok(EXIT_INVALID);
    }
    let prec = match prox {
        Some(p) => p.clone(),
        None => {
            out.push_str("≺: the order\n");
            ProxRel::order(l).rel().clone()
        }
    };
    let rel = ProxRel::new(l.clone(), l.clone(), prec.clone())?;
    let report = validate_prox_relation(&rel);
    out.push_str(&report.to_string());
    if !report.is_valid() {
        out.push_str("result: invalid\n");
        return Ok(EXIT_INVALID);
    }
    let square = prec.then(&prec)?;
    match square.first_difference(&prec).or_else(|| prec.first_difference(&square)) {
        Some((a, b)) => {
            let _ = writeln!(out, "idempotence: fails at ({}, {})", l.label(a), l.label(b));
            out.push_str("result: invalid\n");
            return Ok(EXIT_INVALID);
        }
        None => out.push_str("idempotence: holds\n"),
    }
    let p = ProxLat::new(l.clone(), prec)?;
    let c = p.classify();
    out.push_str(&c.describe(l));
    if c.strong() {
        out.push_str("result: strong proximity lattice\n");
        Ok(EXIT_OK)
    } else {
        out.push_str("result: proximity lattice, not strong\n");
        Ok(EXIT_CHECK_FAILED)
    }
}

fn validate_axiom_fixture(out: &mut String, name: &str, ax: &AxiomSet, approx: Option<&BinRel>) -> Result<u8, Failure> {
    let u = ax.universe();
    let _ = writeln!(
        out,
        "entail {name}: {}, {}",
        plural(u.len(), "generator", "generators"),
        plural(ax.axioms().len(), "axiom", "axioms")
    );
    let ent = generate_entailment(ax)?;
    let _ = writeln!(out, "entailment: {}", plural(ent.len(), "model", "models"));
    let approx = match approx {
        Some(p) => p.clone(),
        None => {
            out.push_str("≺: the identity\n");
            BinRel::identity(u.len())?
        }
    };
    let report = validate_scent(&ent, &approx);
    if !report.is_valid() {
        for v in &report.violations {
            let _ = writeln!(out, "strong continuity violation: {}", scent_violation(u, v));
        }
        out.push_str("result: invalid\n");
        return Ok(EXIT_INVALID);
    }
    out.push_str("strong continuity: holds\n");
    match generated_scent_witness(ax, &approx)? {
        None => out.push_str("generated conditions: hold\n"),
        Some(((a, b), m)) => {
            let _ = writeln!(
                out,
                "generated conditions: not met at axiom {} ⊢ {} in model {} (sufficient only)",
                u.show(a),
                u.show(b),
                u.show(m)
            );
        }
    }
    out.push_str("result: strong continuous entailment relation\n");
    Ok(EXIT_OK)
}
