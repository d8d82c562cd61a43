use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stonework::corpus::{self, CorpusEntry, EntryKind};
use stonework::duality::{
    clifford_check, round_trip_groupoid, round_trip_monoid, verify_k_laws, weak_morphism_pullback,
};
use stonework::filter::UltrafilterGroupoid;
use stonework::groupoid::{
    all_bisections_monoid_bounded, CoveringFunctor, FiniteGroupoid, DEFAULT_BISECTION_BOUND,
};
use stonework::laws::{algebra_suite, filter_laws, order_laws, LawReport};
use stonework::monoid::examples::{
    boolean_algebra, brandt_monoid, chain_monoid, clifford_example, group_with_zero,
    symmetric_inverse_monoid,
};
use stonework::monoid::{InverseMonoid, MonoidConfig};
use stonework::morphism::MonoidMorphism;
use stonework::polycyclic::{check_alphabet, CnElement, CuntzArrow, PolyElement};

/// Boolean inverse monoids, boolean groupoids and their duality.
#[derive(Parser)]
#[command(name = "stonework", version, about)]
struct Cli {
    /// Directory holding stored entries as `<name>.json`.
    #[arg(
        long,
        global = true,
        env = "STONEWORK_STORE",
        default_value = "stonework-store"
    )]
    store: PathBuf,
    /// Seed for every sampled check.
    #[arg(long, global = true, env = "STONEWORK_SEED", default_value_t = 0x5EED)]
    seed: u64,
    /// Largest monoid that will be built or dualized.
    #[arg(
        long,
        global = true,
        env = "STONEWORK_MAX_SIZE",
        default_value_t = 4096
    )]
    max_size: usize,
    #[arg(long, global = true, env = "STONEWORK_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named example and write it to the store.
    Build(BuildArgs),
    /// Run a law set against an entry; exit 1 on any failure.
    Check {
        /// Stored or built-in name; a path to a JSON entry also works.
        entry: String,
        #[arg(long, value_enum, default_value_t = LawSet::All)]
        laws: LawSet,
    },
    /// Compute the dual of an entry: G(S) for a monoid, A(G) for a groupoid.
    Dualize {
        entry: String,
        /// Also certify the round trip back to the original.
        #[arg(long)]
        round_trip: bool,
        /// Store name for the dual; defaults to `<entry>-dual`.
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Generator {
    Ix,
    BoolAlgebra,
    GroupWithZero,
    Clifford,
    Brandt,
    Chain,
    PairGroupoid,
    CyclicGroup,
    /// A built-in corpus entry, selected with `--name`.
    Corpus,
    PolyElement,
    CnElement,
    CuntzArrow,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(value_enum)]
    generator: Generator,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    atoms: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    len: Option<usize>,
    /// Alphabet size for polycyclic elements.
    #[arg(long)]
    n: Option<usize>,
    /// Expression for polycyclic elements.
    #[arg(long)]
    expr: Option<String>,
    /// Store name; a default is derived from the parameters.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LawSet {
    /// Everything applicable to the entry's kind.
    All,
    /// BM1-BM3 on a monoid.
    Bm,
    /// Order and compatibility laws.
    Order,
    /// Filter and ultrafilter laws.
    Filters,
    /// Properties of the basic open sets K_s.
    KLaws,
    /// A⁻¹A = AA⁻¹ and d = r for Clifford monoids.
    Clifford,
    /// Star bijectivity of a functor.
    Covering,
    /// Homomorphism and M1-M3 for a morphism.
    Morphism,
    /// Pullback of ultrafilters along a morphism.
    WeakPullback,
}

/// Input problems exit with status 2; law failures with status 1.
struct Outcome {
    passed: bool,
    json: Value,
    text: String,
    dot: Option<String>,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Self {
            passed: true,
            json,
            text,
            dot: None,
        }
    }
}

fn param(value: Option<usize>, flag: &str) -> Result<usize> {
    value.ok_or_else(|| anyhow!("this generator needs --{flag}"))
}

fn config(cli: &Cli) -> MonoidConfig {
    MonoidConfig {
        seed: cli.seed,
        max_size: cli.max_size,
        ..MonoidConfig::default()
    }
}

fn entry_path(store: &Path, name: &str) -> PathBuf {
    store.join(format!("{name}.json"))
}

fn save(store: &Path, entry: &CorpusEntry) -> Result<PathBuf> {
    fs::create_dir_all(store).with_context(|| format!("creating store {}", store.display()))?;
    let path = entry_path(store, &entry.name);
    fs::write(&path, serde_json::to_string_pretty(entry)?)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn load(store: &Path, name: &str) -> Result<CorpusEntry> {
    let direct = Path::new(name);
    let path = if direct.is_file() {
        Some(direct.to_path_buf())
    } else {
        let p = entry_path(store, name);
        p.is_file().then_some(p)
    };
    match path {
        Some(p) => {
            let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))
        }
        None => corpus::named(name).map_err(|_| {
            anyhow!(
                "unknown entry {name:?}: no file {} and no built-in entry of that name (built-in: {})",
                entry_path(store, name).display(),
                corpus::NAMES.join(", ")
            )
        }),
    }
}

fn monoid_summary(name: &str, m: &InverseMonoid) -> (Value, String) {
    let cert = m.check_boolean();
    let json = json!({
        "name": name,
        "kind": "monoid",
        "elements": m.size(),
        "idempotents": m.idempotents().len(),
        "boolean": cert,
    });
    let text = format!(
        "{name}: monoid with {} elements, {} idempotents, boolean = {}{}",
        m.size(),
        m.idempotents().len(),
        cert.is_boolean,
        cert.witness.map(|w| format!(" ({w})")).unwrap_or_default()
    );
    (json, text)
}

fn groupoid_summary(name: &str, g: &FiniteGroupoid) -> (Value, String) {
    let json = json!({
        "name": name,
        "kind": "groupoid",
        "arrows": g.len(),
        "objects": g.identities().len(),
        "group_bundle": g.is_group_bundle(),
    });
    let text = format!(
        "{name}: groupoid with {} arrows on {} objects",
        g.len(),
        g.identities().len()
    );
    (json, text)
}

fn build(cli: &Cli, args: &BuildArgs) -> Result<Outcome> {
    let monoid = |name: String, m: InverseMonoid| -> Result<Outcome> {
        if m.size() > cli.max_size {
            bail!(
                "{name} has {} elements, above --max-size {}",
                m.size(),
                cli.max_size
            );
        }
        let path = save(&cli.store, &CorpusEntry::monoid(name.clone(), &m)?)?;
        let (mut json, text) = monoid_summary(&name, &m);
        json["path"] = json!(path);
        Ok(Outcome::ok(json, text))
    };
    let groupoid = |name: String, g: FiniteGroupoid| -> Result<Outcome> {
        let path = save(&cli.store, &CorpusEntry::groupoid(name.clone(), &g)?)?;
        let (mut json, text) = groupoid_summary(&name, &g);
        json["path"] = json!(path);
        Ok(Outcome {
            dot: Some(g.to_dot(&name)),
            ..Outcome::ok(json, text)
        })
    };
    let named = |default: String| args.name.clone().unwrap_or(default);
    match args.generator {
        Generator::Ix => {
            let k = param(args.size, "size")?;
            monoid(named(format!("ix{k}")), symmetric_inverse_monoid(k)?)
        }
        Generator::BoolAlgebra => {
            let a = param(args.atoms, "atoms")?;
            monoid(
                named(format!("bool-algebra-{}", 1usize << a.min(63))),
                boolean_algebra(a)?,
            )
        }
        Generator::GroupWithZero => {
            let k = param(args.order, "order")?;
            monoid(named(format!("z{k}-zero")), group_with_zero(k)?)
        }
        Generator::Clifford => monoid(named("clifford".into()), clifford_example()?),
        Generator::Brandt => monoid(named("brandt".into()), brandt_monoid()?),
        Generator::Chain => {
            let k = param(args.len, "len")?;
            monoid(named(format!("chain{k}")), chain_monoid(k)?)
        }
        Generator::PairGroupoid => {
            let k = param(args.points, "points")?;
            groupoid(named(format!("pair{k}")), FiniteGroupoid::pair(k)?)
        }
        Generator::CyclicGroup => {
            let k = param(args.order, "order")?;
            groupoid(named(format!("z{k}")), FiniteGroupoid::cyclic_group(k)?)
        }
        Generator::Corpus => {
            let name = args.name.clone().ok_or_else(|| {
                anyhow!(
                    "--name selects the corpus entry; known: {}",
                    corpus::NAMES.join(", ")
                )
            })?;
            let entry = corpus::named(&name)?;
            let path = save(&cli.store, &entry)?;
            let (json, text) = match entry.kind {
                EntryKind::Monoid => monoid_summary(&name, &entry.to_monoid()?),
                EntryKind::Groupoid => groupoid_summary(&name, &entry.to_groupoid()?),
                kind => (
                    json!({ "name": name, "kind": kind }),
                    format!("{name}: {kind:?}"),
                ),
            };
            let mut json = json;
            json["path"] = json!(path);
            Ok(Outcome::ok(json, text))
        }
        Generator::PolyElement => {
            let expr = args
                .expr
                .as_deref()
                .ok_or_else(|| anyhow!("this generator needs --expr"))?;
            let n = param(args.n, "n")?;
            check_alphabet(n)?;
            let a: PolyElement = expr.parse()?;
            if !a.fits(n) {
                bail!("{expr} uses letters beyond a{n}");
            }
            let psi = CnElement::psi(n, &a)?;
            Ok(Outcome::ok(
                json!({ "kind": "poly-element", "n": n, "element": a.to_string(), "idempotent": a.is_idempotent(), "psi": psi.to_string() }),
                format!(
                    "P_{n} element {a}, idempotent = {}, psi = {psi}",
                    a.is_idempotent()
                ),
            ))
        }
        Generator::CnElement => {
            let expr = args
                .expr
                .as_deref()
                .ok_or_else(|| anyhow!("this generator needs --expr"))?;
            let n = param(args.n, "n")?;
            let a = CnElement::parse(n, expr)?;
            let unit = a.is_unit();
            Ok(Outcome::ok(
                json!({ "kind": "cn-element", "n": n, "canonical": a.to_string(), "pairs": a.pairs().len(), "unit": unit }),
                format!("C_{n} element {a}, unit = {unit}"),
            ))
        }
        Generator::CuntzArrow => {
            let expr = args
                .expr
                .as_deref()
                .ok_or_else(|| anyhow!("this generator needs --expr"))?;
            let g: CuntzArrow = expr.parse()?;
            Ok(Outcome::ok(
                json!({ "kind": "cuntz-arrow", "canonical": g.to_string(), "k": g.k(), "target": g.target().to_string(), "source": g.source().to_string() }),
                format!("arrow {g}: ({}, {}, {})", g.target(), g.k(), g.source()),
            ))
        }
    }
}

fn report_outcome(entry: &str, law_set: &str, report: &LawReport) -> Outcome {
    let failing: Vec<&str> = report
        .laws
        .iter()
        .filter(|l| !l.passed())
        .map(|l| l.name.as_str())
        .collect();
    Outcome {
        passed: report.passed(),
        json: json!({
            "entry": entry,
            "laws": law_set,
            "passed": report.passed(),
            "instances": report.instance_count(),
            "failures": report.failure_count(),
            "report": report,
        }),
        text: format!(
            "{entry} [{law_set}]: {} instances, {} failures{}",
            report.instance_count(),
            report.failure_count(),
            if failing.is_empty() {
                String::new()
            } else {
                format!(" in {}", failing.join(", "))
            }
        ),
        dot: None,
    }
}

fn check_monoid(name: &str, m: &InverseMonoid, laws: LawSet) -> Result<Outcome> {
    let cert = m.check_boolean();
    let boolean_outcome = || Outcome {
        passed: cert.is_boolean,
        json: json!({ "entry": name, "laws": "bm", "passed": cert.is_boolean, "boolean": cert }),
        text: match cert.witness {
            None => format!("{name} [bm]: boolean = true"),
            Some(w) => format!(
                "{name} [bm]: boolean = false, witness {} on {:?}: {w}",
                w.axiom(),
                w.elements()
            ),
        },
        dot: None,
    };
    if laws == LawSet::Bm || !cert.is_boolean {
        if !matches!(laws, LawSet::Bm | LawSet::All) {
            bail!(
                "{name} is not boolean ({}), so the {} law set does not apply",
                cert.witness.map(|w| w.to_string()).unwrap_or_default(),
                laws.to_possible_value()
                    .map(|v| v.get_name().to_string())
                    .unwrap_or_default()
            );
        }
        return Ok(boolean_outcome());
    }
    match laws {
        LawSet::Order => Ok(report_outcome(name, "order", &order_laws(m)?)),
        LawSet::Filters => Ok(report_outcome(name, "filters", &filter_laws(m)?)),
        LawSet::KLaws => Ok(report_outcome(name, "k-laws", &verify_k_laws(m)?)),
        LawSet::Clifford => {
            let r = clifford_check(m)?;
            Ok(Outcome {
                passed: r.holds(),
                text: format!(
                    "{name} [clifford]: clifford = {}, d = r: {:?}, {} groups",
                    r.is_clifford, r.d_equals_r, r.components
                ),
                json: json!({ "entry": name, "laws": "clifford", "passed": r.holds(), "report": r }),
                dot: None,
            })
        }
        LawSet::All => {
            let mut report = algebra_suite(m)?;
            report.extend(verify_k_laws(m)?);
            Ok(report_outcome(name, "all", &report))
        }
        other => bail!(
            "the {} law set applies to {}, not to monoids",
            other
                .to_possible_value()
                .map(|v| v.get_name().to_string())
                .unwrap_or_default(),
            if other == LawSet::Covering {
                "functors"
            } else {
                "morphisms"
            }
        ),
    }
}

fn check(cli: &Cli, entry_name: &str, laws: LawSet) -> Result<Outcome> {
    let entry = load(&cli.store, entry_name)?;
    let name = entry.name.clone();
    match entry.kind {
        EntryKind::Monoid => check_monoid(&name, &entry.to_monoid()?, laws),
        EntryKind::Groupoid => {
            if !matches!(laws, LawSet::All) {
                bail!("groupoids support only the default law set");
            }
            // loading re-verified the groupoid axioms; the round trip is the remaining check
            let g = entry.to_groupoid()?;
            let cert = round_trip_groupoid(&g, &config(cli))?;
            let (mut json, text) = groupoid_summary(&name, &g);
            json["passed"] = json!(true);
            json["round_trip"] = serde_json::to_value(&cert)?;
            Ok(Outcome {
                dot: Some(g.to_dot(&name)),
                ..Outcome::ok(
                    json,
                    format!("{text}; G(A(G)) has {} arrows", cert.target_size),
                )
            })
        }
        EntryKind::Functor => {
            if !matches!(laws, LawSet::All | LawSet::Covering) {
                bail!("functors support the covering law set");
            }
            let (source, target, map) = entry.to_functor_parts()?;
            let f = CoveringFunctor::new(&source, &target, map)?;
            let result = f.check_covering();
            Ok(Outcome {
                passed: result.is_ok(),
                json: json!({
                    "entry": name,
                    "laws": "covering",
                    "passed": result.is_ok(),
                    "witness": result.err().map(|v| json!({ "axiom": v.name(), "detail": v, "message": v.to_string() })),
                }),
                text: match result {
                    Ok(()) => format!("{name} [covering]: covering functor"),
                    Err(v) => format!("{name} [covering]: fails {v}"),
                },
                dot: None,
            })
        }
        EntryKind::Morphism => {
            let (source, target, map) = entry.to_morphism_parts()?;
            let theta = MonoidMorphism::new(&source, &target, map)?;
            match laws {
                LawSet::All | LawSet::Morphism => {
                    let result = theta.validate();
                    Ok(Outcome {
                        passed: result.is_ok(),
                        text: match &result {
                            Ok(()) => {
                                format!("{name} [morphism]: homomorphism, M1, M2 and M3 hold")
                            }
                            Err(v) => format!("{name} [morphism]: fails {v}"),
                        },
                        json: json!({ "entry": name, "laws": "morphism", "passed": result.is_ok(), "witness": result.err() }),
                        dot: None,
                    })
                }
                LawSet::WeakPullback => {
                    let r = weak_morphism_pullback(&theta)?;
                    Ok(Outcome {
                        passed: r.idempotent_claim_holds(),
                        text: format!(
                            "{name} [weak-pullback]: {} idempotent ultrafilters, {} failures, {} flagged",
                            r.idempotent_checked,
                            r.idempotent_failures.len(),
                            r.flagged.len()
                        ),
                        json: json!({ "entry": name, "laws": "weak-pullback", "passed": r.idempotent_claim_holds(), "report": r }),
                        dot: None,
                    })
                }
                _ => bail!("morphisms support the morphism and weak-pullback law sets"),
            }
        }
    }
}

fn dualize(
    cli: &Cli,
    entry_name: &str,
    round_trip: bool,
    dual_name: Option<&str>,
) -> Result<Outcome> {
    let entry = load(&cli.store, entry_name)?;
    let dual_name = dual_name
        .map(str::to_string)
        .unwrap_or_else(|| format!("{}-dual", entry.name));
    let config = config(cli);
    match entry.kind {
        EntryKind::Monoid => {
            let m = entry.to_monoid()?;
            if m.size() > cli.max_size {
                bail!(
                    "{} has {} elements, above --max-size {}; raise the bound to dualize it",
                    entry.name,
                    m.size(),
                    cli.max_size
                );
            }
            m.require_boolean()?;
            let gs = UltrafilterGroupoid::new(&m)?;
            let g = gs.groupoid();
            let path = save(&cli.store, &CorpusEntry::groupoid(dual_name.clone(), g)?)?;
            let (mut json, mut text) = groupoid_summary(&dual_name, g);
            json["source"] = json!(entry.name);
            json["path"] = json!(path);
            json["ultrafilters"] = serde_json::to_value(gs.to_json())?;
            if round_trip {
                let cert = round_trip_monoid(&m, &config)?;
                text.push_str(&format!(
                    "; round trip s -> K_s: |S| = {}, |A(G(S))| = {}",
                    cert.source_size, cert.target_size
                ));
                json["certificate"] = serde_json::to_value(&cert)?;
            }
            Ok(Outcome {
                dot: Some(g.to_dot(&dual_name)),
                ..Outcome::ok(json, text)
            })
        }
        EntryKind::Groupoid => {
            let g = entry.to_groupoid()?;
            if g.len() > DEFAULT_BISECTION_BOUND {
                bail!(
                    "{} has {} arrows; bisections are enumerated only up to {DEFAULT_BISECTION_BOUND} arrows",
                    entry.name,
                    g.len()
                );
            }
            let a = all_bisections_monoid_bounded(&g, DEFAULT_BISECTION_BOUND, &config)?;
            let m = a.monoid();
            let path = save(&cli.store, &CorpusEntry::monoid(dual_name.clone(), m)?)?;
            let (mut json, mut text) = monoid_summary(&dual_name, m);
            json["source"] = json!(entry.name);
            json["path"] = json!(path);
            if round_trip {
                let cert = round_trip_groupoid(&g, &config)?;
                text.push_str(&format!(
                    "; round trip g -> F_g: |G| = {}, |G(A(G))| = {}",
                    cert.source_size, cert.target_size
                ));
                json["certificate"] = serde_json::to_value(&cert)?;
            }
            Ok(Outcome::ok(json, text))
        }
        kind => bail!(
            "only monoids and groupoids can be dualized, {} is a {kind:?}",
            entry.name
        ),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Build(args) => build(cli, args),
        Command::Check { entry, laws } => check(cli, entry, *laws),
        Command::Dualize {
            entry,
            round_trip,
            name,
        } => dualize(cli, entry, *round_trip, name.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match cli.format {
        Format::Json => match serde_json::to_string_pretty(&outcome.json) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        Format::Text => println!("{}", outcome.text),
        Format::Dot => match &outcome.dot {
            Some(d) => print!("{d}"),
            None => {
                eprintln!("error: DOT output is available only for groupoids");
                return ExitCode::from(2);
            }
        },
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn load_falls_back_to_the_built_in_corpus() {
        let dir = std::env::temp_dir().join("stonework-unit-empty-store");
        assert_eq!(load(&dir, "pair3").unwrap().to_groupoid().unwrap().len(), 9);
        assert!(load(&dir, "missing").is_err());
    }

    #[test]
    fn missing_parameters_are_input_errors() {
        assert!(param(None, "size").is_err());
        assert_eq!(param(Some(3), "size").unwrap(), 3);
    }
}
