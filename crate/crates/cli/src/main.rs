use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cycpres::acceptance::{run_criterion, CRITERIA};
use cycpres::fixtures::{fixture_by_name, special_fixtures};
use cycpres::search::{crossvalidate, find_special, EnumSpec, Filters, DEFAULT_BUDGET};
use cycpres::special::{certificate_json, is_special_direct, theorem_verdict, verdicts_agree, Verdict};
use cycpres::stargraph::{build_star_graph, to_dot, GraphJson};
use cycpres::{CyclicPresentation, RedundancyKind};
use serde_json::json;

#[derive(Parser)]
#[command(name = "cycpres", version, about = "Analyse cyclic presentations of groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Redundancy classification of P_n(w).
    Analyze(Target),
    /// Relators of the concise refinement.
    Refine(Target),
    /// Star graph with metrics, as JSON or DOT.
    Stargraph(Target),
    /// Direct and theorem-based special classification.
    Special(Target),
    /// Enumerate defining words and hunt for special presentations.
    Search(SearchArgs),
    /// Run the acceptance suite.
    Selftest {
        /// Only the criteria that use the named fixtures.
        #[arg(long)]
        fixtures: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
    Dot,
}

#[derive(Args)]
struct Target {
    /// Number of generators.
    #[arg(short = 'n', required_unless_present = "fixture")]
    n: Option<u32>,
    /// Defining word, e.g. "x0 x1^-1 x2".
    #[arg(short = 'w', required_unless_present = "fixture")]
    word: Option<String>,
    /// Use a built-in fixture instead of -n/-w.
    #[arg(long, conflicts_with_all = ["n", "word"])]
    fixture: Option<String>,
    #[arg(short = 'o', value_enum, default_value = "json")]
    output: Output,
}

#[derive(Args)]
struct SearchArgs {
    /// Inclusive generator range, a..b.
    #[arg(long, default_value = "3..6", value_parser = parse_range)]
    n_range: (u64, u64),
    /// Inclusive word-length range, a..b.
    #[arg(long, default_value = "3..6", value_parser = parse_range)]
    k_range: (u64, u64),
    #[arg(long)]
    positive_only: bool,
    #[arg(long)]
    up_to_symmetry: bool,
    #[arg(long)]
    irreducible_only: bool,
    #[arg(long)]
    not_proper_power: bool,
    /// Maximum number of raw candidates.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Run every consistency check instead of listing special presentations.
    #[arg(long)]
    crossvalidate: bool,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got `{s}`"))?;
    let a: u64 = a.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

enum Failure {
    Usage(String),
    Suite(Option<String>),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Suite(msg)) => {
            if let Some(msg) = msg {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
    }
}

fn presentation(t: &Target) -> Result<CyclicPresentation, Failure> {
    if let Some(name) = &t.fixture {
        return fixture_by_name(name).ok_or_else(|| Failure::Usage(format!("unknown fixture `{name}`")));
    }
    let (n, w) = (t.n.expect("required by clap"), t.word.as_deref().expect("required by clap"));
    CyclicPresentation::parse(n, w).map_err(|e| Failure::Usage(e.to_string()))
}

fn emit(out: &mut impl Write, text: impl std::fmt::Display) {
    let _ = writeln!(out, "{text}");
}

fn run(command: Command, out: &mut impl Write) -> Result<(), Failure> {
    match command {
        Command::Analyze(t) => analyze(&presentation(&t)?, t.output, out),
        Command::Refine(t) => refine(&presentation(&t)?, t.output, out),
        Command::Stargraph(t) => stargraph(&presentation(&t)?, t.output, out),
        Command::Special(t) => special(&presentation(&t)?, t.output, out),
        Command::Search(s) => search(&s, out),
        Command::Selftest { fixtures } => selftest(fixtures, out),
    }
}

fn no_dot(output: Output) -> Result<(), Failure> {
    if output == Output::Dot {
        return Err(Failure::Usage("-o dot is only available for stargraph".into()));
    }
    Ok(())
}

fn analyze(p: &CyclicPresentation, output: Output, out: &mut impl Write) -> Result<(), Failure> {
    no_dot(output)?;
    let r = p.classify_redundancy();
    if output == Output::Json {
        emit(out, r.to_json());
        return Ok(());
    }
    emit(out, p);
    emit(out, format_args!("kind: {}", r.kind));
    emit(out, format_args!("root: {} (power {})", r.root, r.root_power));
    emit(
        out,
        format_args!("period: u = {}, w = prod theta^(i*{})(u)", r.period.u, r.period.h),
    );
    if let (Some(s), Some(u)) = (r.rotation, &r.half_word) {
        emit(
            out,
            format_args!("normal form: phi^{s}(w) = u theta^{}(u)^-1 with u = {u}", p.n() / 2),
        );
    }
    emit(
        out,
        format_args!("concise refinement: t = {}, deficiency {}", r.refinement_size, r.deficiency()),
    );
    Ok(())
}

fn refine(p: &CyclicPresentation, output: Output, out: &mut impl Write) -> Result<(), Failure> {
    no_dot(output)?;
    let t = p.concise_refinement();
    let relators: Vec<String> = t.relators().iter().map(|r| r.to_string()).collect();
    if output == Output::Json {
        emit(out, json!({"n": t.n, "t": t.t, "deficiency": t.deficiency(), "relators": relators}));
    } else {
        emit(out, format_args!("P_{{{},{}}}({}), deficiency {}", t.n, t.t, t.word, t.deficiency()));
        for r in relators {
            emit(out, r);
        }
    }
    Ok(())
}

fn stargraph(p: &CyclicPresentation, output: Output, out: &mut impl Write) -> Result<(), Failure> {
    let g = build_star_graph(&p.relators(), p.n()).map_err(|e| Failure::Usage(e.to_string()))?;
    match output {
        Output::Dot => {
            let _ = write!(out, "{}", to_dot(&g));
        }
        Output::Json => emit(out, serde_json::to_string(&GraphJson::new(p.n(), &g)).expect("serializes")),
        Output::Text => {
            let j = GraphJson::new(p.n(), &g);
            emit(out, format_args!("star graph of {p}"));
            emit(out, format_args!("vertices: {}, edges: {}", g.order(), g.edge_count()));
            emit(out, format_args!("components: {}, diameters {:?}", j.components, j.diameter));
            emit(out, format_args!("girth: {}", j.girth.map_or("infinite".into(), |x| x.to_string())));
            emit(out, format_args!("regular: {}", j.regular.map_or("no".into(), |x| x.to_string())));
            for [a, b] in j.edges {
                emit(out, format_args!("{a} -- {b}"));
            }
        }
    }
    Ok(())
}

fn special(p: &CyclicPresentation, output: Output, out: &mut impl Write) -> Result<(), Failure> {
    no_dot(output)?;
    let direct = is_special_direct(p);
    let theorem = theorem_verdict(p);
    if output == Output::Json {
        emit(out, certificate_json(p));
    } else {
        emit(out, p);
        match direct.tuple() {
            Some((m, k, nu)) => emit(out, format_args!("direct: ({m},{k},{nu})-special")),
            None => emit(
                out,
                format_args!("direct: not special ({})", direct.reason.as_deref().unwrap_or("")),
            ),
        }
        for (i, c) in direct.per_component.iter().enumerate() {
            emit(
                out,
                format_args!(
                    "  component {i}: {} vertices, girth {:?}, diameter {}, min degree {}, {}",
                    c.vertices, c.girth, c.diameter, c.min_degree, c.recognized_as
                ),
            );
        }
        let verdict = match &theorem.verdict {
            Verdict::Special { m, k, nu, .. } => format!("({m},{k},{nu})-special"),
            Verdict::NotSpecial { failed_clause } => format!("not special, fails {failed_clause}"),
            Verdict::NotApplicable { reason } => format!("not applicable ({reason})"),
        };
        emit(out, format_args!("theorem [{}]: {verdict}", theorem.checker));
    }
    if verdicts_agree(&direct, &theorem) {
        Ok(())
    } else {
        Err(Failure::Suite(Some("direct and theorem verdicts disagree".into())))
    }
}

fn search(s: &SearchArgs, out: &mut impl Write) -> Result<(), Failure> {
    let to_u32 = |x: u64| u32::try_from(x).map_err(|_| Failure::Usage(format!("{x} is too large")));
    let spec = EnumSpec {
        n_range: to_u32(s.n_range.0)?..=to_u32(s.n_range.1)?,
        k_range: s.k_range.0 as usize..=s.k_range.1 as usize,
        filters: Filters {
            cyclically_reduced: true,
            not_proper_power: s.not_proper_power,
            positive_only: s.positive_only,
            irreducible_only: s.irreducible_only,
            up_to_symmetry: s.up_to_symmetry,
        },
        budget: s.budget,
    };
    if s.crossvalidate {
        let report = crossvalidate(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
        let _ = write!(out, "{}", report.json_lines());
        return if report.is_clean() {
            Ok(())
        } else {
            Err(Failure::Suite(None))
        };
    }
    let start = std::time::Instant::now();
    let hits = find_special(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
    for (p, cert) in &hits {
        let (m, k, nu) = cert.tuple().expect("hits are special");
        let shapes: Vec<String> = cert.per_component.iter().map(|c| c.recognized_as.to_string()).collect();
        emit(
            out,
            json!({"type": "hit", "n": p.n(), "word": p.word().to_string(), "m": m, "k": k, "nu": nu,
                   "kind": p.classify_redundancy().kind, "components": shapes}),
        );
    }
    emit(
        out,
        json!({"type": "summary", "hits": hits.len(), "wall_time_ms": start.elapsed().as_millis() as u64}),
    );
    Ok(())
}

fn selftest(fixtures_only: bool, out: &mut impl Write) -> Result<(), Failure> {
    let ids: Vec<u8> = if fixtures_only {
        vec![1, 2, 7, 8]
    } else {
        CRITERIA.iter().map(|(id, _)| *id).collect()
    };
    if fixtures_only {
        for f in special_fixtures() {
            let direct = is_special_direct(&f.presentation);
            let theorem = theorem_verdict(&f.presentation);
            let kind = match f.kind {
                RedundancyKind::NonOrientable => "non-orientable",
                _ => "orientable",
            };
            emit(
                out,
                format_args!(
                    "{:<18} {:<15} expected {:?} direct {:?} theorem {:?}",
                    f.name,
                    kind,
                    f.tuple,
                    direct.tuple(),
                    theorem.tuple()
                ),
            );
        }
    }
    let mut failed = 0;
    for id in ids {
        let r = run_criterion(id);
        failed += usize::from(!r.passed);
        emit(out, &r);
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Suite(Some(format!("{failed} criteria failed"))))
    }
}
