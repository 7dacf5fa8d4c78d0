use std::path::PathBuf;

use proxlat::cli::{EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_OK, EXIT_SIZE_CAP};
use proxlat::{parse_fixture, run_command, Content, Outcome};
use proxlat_core::constructions::{construct, Kind, RationalGrid};
use proxlat_core::fixtures::{c3, c3w, m2};
use proxlat_core::generate_entailment;
use proxlat_core::prox::ProxLat;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Outcome {
    run_command(std::iter::once("proxlat").chain(args.iter().copied()))
}

/// A scratch file removed on drop.
struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str, text: &str) -> Self {
        let p = std::env::temp_dir().join(format!("proxlat-{}-{tag}.pxl", std::process::id()));
        std::fs::write(&p, text).unwrap();
        Scratch(p)
    }

    fn path(&self) -> &str {
        self.0.to_str().unwrap()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

#[test]
fn points_of_the_chain() {
    let o = run(&["points", &fixture("c3.pxl")]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "2 points: {1}, {m,1}\n");
    assert_eq!(run(&["points", &fixture("bool2.pxl")]).stdout, "1 point: {1}\n");
}

#[test]
fn upper_lower_duality_passes_on_the_chain() {
    let o = run(&["check", "T-UL", &fixture("c3.pxl")]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.starts_with("T-UL PASS on C3"));
}

#[test]
fn pentagon_is_rejected_with_a_distributivity_witness() {
    let o = run(&["validate", &fixture("broken.pxl")]);
    assert_eq!(o.code, EXIT_INVALID);
    assert!(o.stdout.contains("distributivity fails: b ∧ (a ∨ c) = b but (b ∧ a) ∨ (b ∧ c) = a"));
}

#[test]
fn validate_reports_each_kind() {
    let o = run(&["validate", &fixture("c3w.pxl")]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.ends_with("result: strong proximity lattice\n"));
    let coarse = run(&["validate", &fixture("m2-coarse.pxl")]);
    assert_eq!(coarse.code, EXIT_CHECK_FAILED);
    assert!(coarse.stdout.contains("Prox∨ fails"));
    let s = run(&["validate", &fixture("sierpinski.pxl")]);
    assert_eq!(s.code, EXIT_OK);
    assert!(s.stdout.contains("1 model"));
}

#[test]
fn constructions_refuse_weak_lattices() {
    let o = run(&["construct", "sigma", &fixture("m2-coarse.pxl")]);
    assert_eq!(o.code, EXIT_INVALID);
    assert!(o.stderr.contains("not a strong proximity lattice"));
}

#[test]
fn parse_errors_carry_positions() {
    let f = Scratch::new("decimal", "lattice X\nelements 0 1\nhasse 0<1\ngrid 1/4 0.5\n");
    let o = run(&["points", f.path()]);
    assert_eq!(o.code, EXIT_INVALID);
    assert!(o.stderr.contains("line 4, column 10"), "{}", o.stderr);
    let g = Scratch::new("unknown", "entail T\ngenerators a\naxiom a |- z\n");
    assert!(run(&["validate", g.path()]).stderr.contains("line 3, column 12: unknown symbol `z`"));
}

#[test]
fn unreadable_and_unknown_inputs_are_invalid() {
    assert_eq!(run(&["points", "/nonexistent/x.pxl"]).code, EXIT_INVALID);
    assert_eq!(run(&["check", "T-XX", &fixture("c3.pxl")]).code, EXIT_INVALID);
    assert_eq!(run(&["construct", "nope", &fixture("c3.pxl")]).code, EXIT_INVALID);
    assert_eq!(run(&["frobnicate"]).code, EXIT_INVALID);
    assert_eq!(run(&["points", &fixture("c3.pxl"), "--format", "dot"]).code, EXIT_INVALID);
    let help = run(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("construct"));
}

#[test]
fn size_caps_exit_with_three() {
    let o = run(&["--max-size", "2", "points", &fixture("c3.pxl")]);
    assert_eq!(o.code, EXIT_SIZE_CAP);
    assert!(o.stderr.contains("--max-size 2"));
    let wide = run(&["construct", "scent-lower", &fixture("m2.pxl"), "--emit-relation"]);
    assert_eq!(wide.code, EXIT_SIZE_CAP, "{}", wide.stderr);
    let grown = run(&["construct", "vietoris", &fixture("c3.pxl"), "--max-size", "5"]);
    assert_eq!(grown.code, EXIT_SIZE_CAP);
}

#[test]
fn failed_theorem_exits_with_one_and_a_counterexample() {
    let o = run(&["check", "T-VAL", &fixture("bool2.pxl")]);
    assert_eq!(o.code, EXIT_CHECK_FAILED);
    assert!(o.stdout.contains("[FAILED]"));
    assert!(o.stdout.contains("counterexample:"));
    let open = run(&["check", "T-VAL", &fixture("bool2.pxl"), "--grid", "0 1/3 1"]);
    assert_eq!(open.code, EXIT_INVALID);
}

#[test]
fn emitted_relations_replay_exactly() {
    let cases = [
        (Kind::Sigma, ProxLat::with_order(c3()), "c3.pxl"),
        (Kind::Upper, c3w(), "c3w.pxl"),
        (Kind::Double, ProxLat::with_order(m2()), "m2.pxl"),
        (Kind::Vietoris, ProxLat::with_order(c3()), "c3.pxl"),
        (Kind::Patch, c3w(), "c3w.pxl"),
    ];
    for (kind, prox, file) in cases {
        let o = run(&["construct", kind.name(), &fixture(file), "--emit-relation"]);
        assert_eq!(o.code, EXIT_OK, "{kind}: {}", o.stderr);
        let parsed = parse_fixture(&o.stdout).unwrap();
        let Content::Axioms { axioms, approx } = &parsed.content else { panic!("{kind}") };
        let listed = axioms.axioms().to_vec();
        let mut sorted = listed.clone();
        sorted.sort_unstable();
        assert_eq!(listed, sorted, "{kind}: listing order");
        let expected = construct(kind, &prox, None).unwrap();
        assert_eq!(generate_entailment(axioms).unwrap(), expected.scent.ent, "{kind}");
        assert_eq!(approx.as_ref(), Some(&expected.scent.approx), "{kind}");
        let replay = Scratch::new(&format!("replay-{kind}"), &o.stdout);
        assert_eq!(run(&["validate", replay.path()]).code, EXIT_OK, "{kind}");
    }
}

#[test]
fn construct_output_without_listing_generates_the_same_relation() {
    let grid = RationalGrid::uniform(4);
    for kind in [Kind::Lower, Kind::ScentUpper, Kind::Val] {
        let o = run(&["construct", kind.name(), &fixture("bool2.pxl"), "--grid", "0 1/4 1/2 3/4 1"]);
        let parsed = parse_fixture(&o.stdout).unwrap();
        let Content::Axioms { axioms, .. } = &parsed.content else { panic!() };
        let expected = construct(kind, &ProxLat::with_order(proxlat_core::fixtures::bool2()), Some(&grid)).unwrap();
        assert_eq!(generate_entailment(axioms).unwrap(), expected.scent.ent, "{kind}");
        let want = if expected.check().unwrap().holds() { EXIT_OK } else { EXIT_CHECK_FAILED };
        assert_eq!(o.code, want, "{kind}");
    }
}

#[test]
fn dual_twice_is_the_identity() {
    for name in ["c3w.pxl", "m2.pxl", "sierpinski.pxl"] {
        let once = run(&["dual", &fixture(name)]);
        assert_eq!(once.code, EXIT_OK);
        let f = Scratch::new(&format!("dual-{name}"), &once.stdout);
        let twice = parse_fixture(&run(&["dual", f.path()]).stdout).unwrap();
        let original = parse_fixture(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        assert_eq!(twice.content, original.content, "{name}");
        assert_eq!(twice.name, format!("dual(dual({}))", original.name));
    }
}

#[test]
fn spectrum_and_models() {
    let s = run(&["spectrum", &fixture("c3w.pxl")]);
    assert_eq!(s.stdout, "# 2 rounded ideals\nlattice RIdl(C3w)\nelements {0} {0,m,1}\nhasse {0}<{0,m,1}\n");
    assert_eq!(run(&["models", &fixture("c3.pxl")]).stdout, "2 models: {1}, {m,1}\n");
    assert_eq!(run(&["models", &fixture("sierpinski.pxl")]).stdout, "2 models: {}, {p}\n");
}

#[test]
fn dot_output_draws_covers_with_member_sets() {
    let d = run(&["spectrum", &fixture("m2.pxl"), "--format", "dot"]);
    assert_eq!(d.code, EXIT_OK);
    assert_eq!(d.stdout.matches("->").count(), 4);
    assert!(d.stdout.contains("label=\"{0,a}\""));
    let dual = run(&["dual", &fixture("c3.pxl"), "--format", "dot"]);
    assert_eq!(dual.stdout.matches("->").count(), 2);
}

#[test]
fn compare_finds_witnesses() {
    let same = run(&["compare", &fixture("c3.pxl"), &fixture("c3.pxl")]);
    assert_eq!(same.code, EXIT_OK);
    assert!(same.stdout.contains("{0,m} ↦ {0,m}"));
    let other = run(&["compare", &fixture("c3.pxl"), &fixture("c3w.pxl")]);
    assert_eq!(other.code, EXIT_CHECK_FAILED);
    assert!(other.stdout.contains("counterexample: sizes differ (3 vs 2)"));
    // Three opens against the two of the one-point locale.
    let s = run(&["compare", &fixture("sierpinski.pxl"), &fixture("bool2.pxl")]);
    assert_eq!(s.code, EXIT_CHECK_FAILED, "{}", s.stdout);
}

#[test]
fn models_of_a_presented_theory_are_sets_of_generators() {
    let f = Scratch::new("theory", "entail T\ngenerators a b\naxiom a |- b\n");
    let o = run(&["models", f.path()]);
    assert_eq!(o.stdout, "3 models: {}, {b}, {a,b}\n");
}
