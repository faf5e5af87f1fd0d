//! Command-line driver for the connectivity and class-algebra pipelines.
//! Commands print JSON lines on stdout (--format text gives a terse
//! human-readable form, graph also accepts --format dot). Exit codes:
//! 0 all checks matched, 1 a min-n sweep exhausted its cap with nothing
//! asserted either way, 2 a computed value contradicted an asserted
//! expectation, 3 construction or data errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use engel_core::classalg::monster::{load_monster_constants, monster_checks};
use engel_core::classalg::ops::{
    class_constant_bruteforce, class_constant_formula, component_lower_bound, delta_graph,
    involution_slices, match_classes, perm_character, power_fusion, ClassMatch,
};
use engel_core::classalg::table::{load_character_table, CharacterTable};
use engel_core::connectivity::{
    extension_criterion, hall_criterion, is_strong_at, run_spec, run_suite, ConnError,
    ConnectivityReport, GroupSpec, LeastDepth, Prediction, SuiteConfig,
};
use engel_core::engel::{engel_depth, Depth, EngelGraphView};
use engel_core::field::factor_prime_power;
use engel_core::group::Group;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;
use std::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "engel", version, about = "Depth-n graph connectivity and class-algebra checks for small finite groups")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Largest depth swept by min-n searches.
    #[arg(long, global = true, default_value_t = 8)]
    n_cap: u32,
    /// Seed for every randomized subgroup search.
    #[arg(long, global = true, default_value_t = 1729)]
    seed: u64,
    /// Worker threads for suite commands.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Directory holding gens/, chartab/ and monster.txt.
    #[arg(long, global = true, default_value = "data")]
    data_dir: PathBuf,
    /// Cache directory for group enumerations.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock timings in suite reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Hall,
    Extension,
    All,
}

#[derive(Args)]
struct GroupArgs {
    /// Group spec, e.g. --group psl2 11 (also accepted positionally).
    #[arg(long, num_args = 1..)]
    group: Vec<String>,
    /// Positional spec tokens: alt5, sym 6, psl3 4, m11, file x.gens.
    #[arg(num_args = 0..)]
    spec: Vec<String>,
}

impl GroupArgs {
    fn parse_spec(&self) -> Result<GroupSpec, ConnError> {
        let tokens = if self.group.is_empty() { &self.spec } else { &self.group };
        GroupSpec::parse(tokens)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print order, degree, class count and element-order spectrum.
    Group(GroupArgs),
    /// Least depth in [2, n-cap] whose graph is strongly connected.
    /// Exits 1 when the cap is reached without an asserted expectation.
    MinN(GroupArgs),
    /// Decide strong connectivity at a single depth.
    Check {
        n: u32,
        #[command(flatten)]
        grp: GroupArgs,
        /// direct double-BFS, hall or extension criterion, or all of
        /// them cross-checked (exit 2 on disagreement).
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
    },
    /// Least k with [x,_k y] = 1 for elements given by index, if any.
    Depth {
        x: u32,
        y: u32,
        #[command(flatten)]
        grp: GroupArgs,
    },
    /// Emit the depth-n graph of a group with at most 2000 elements.
    Graph {
        n: u32,
        #[command(flatten)]
        grp: GroupArgs,
    },
    /// Reproduce the least-depth table over the standard small groups.
    Table1 {
        /// Largest field size for the psl2 rows (max 31); the psl3(4)
        /// row is included from 13 up.
        #[arg(long, default_value_t = 13)]
        max_q: u64,
    },
    /// Depth-2 connectivity of the small sporadic groups.
    Sporadic {
        /// Also run the heavy stretch instance m12.
        #[arg(long)]
        stretch: bool,
    },
    /// Class-algebra checks against the bundled character tables.
    Classalg {
        #[command(subcommand)]
        sub: ClassalgCmd,
    },
    /// Verify the recorded large-group constants file.
    Monster {
        /// Constants file; defaults to <data-dir>/monster.txt.
        #[arg(long)]
        constants: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ClassalgCmd {
    /// Character-formula vs brute-force class constants, every triple.
    Crosscheck {
        #[command(flatten)]
        grp: GroupArgs,
    },
    /// Coset-graph component analysis of a built-in instance.
    Delta {
        /// Built-in instance: alt5 or sym4.
        #[arg(long, default_value = "alt5")]
        instance: String,
    },
    /// Exact component lower bound against the computed count.
    Bound {
        #[arg(long, default_value = "alt5")]
        instance: String,
    },
    /// Involution slice sizes m_Y |Y| / |I| for every involution class.
    Slices {
        #[command(flatten)]
        grp: GroupArgs,
    },
}

fn main() -> ExitCode {
    // die silently on a closed pipe (e.g. `engel graph ... | head`)
    // instead of panicking on the failed stdout write
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Box<dyn Error>> {
    let c = &cli.common;
    match &cli.cmd {
        Cmd::Group(grp) => cmd_group(c, grp),
        Cmd::MinN(grp) => cmd_min_n(c, grp),
        Cmd::Check { n, grp, method } => cmd_check(c, *n, grp, *method),
        Cmd::Depth { x, y, grp } => cmd_depth(c, *x, *y, grp),
        Cmd::Graph { n, grp } => cmd_graph(c, *n, grp),
        Cmd::Table1 { max_q } => cmd_table1(c, *max_q),
        Cmd::Sporadic { stretch } => cmd_sporadic(c, *stretch),
        Cmd::Classalg { sub } => match sub {
            ClassalgCmd::Crosscheck { grp } => cmd_crosscheck(c, grp),
            ClassalgCmd::Delta { instance } => cmd_delta(c, instance),
            ClassalgCmd::Bound { instance } => cmd_bound(c, instance),
            ClassalgCmd::Slices { grp } => cmd_slices(c, grp),
        },
        Cmd::Monster { constants } => cmd_monster(c, constants.as_deref()),
    }
}

fn suite_config(c: &Common) -> SuiteConfig {
    SuiteConfig {
        n_cap: c.n_cap,
        seed: c.seed,
        threads: c.threads,
        data_dir: c.data_dir.clone(),
        cache_dir: c.cache_dir.clone(),
        timing: c.timing,
    }
}

fn build(c: &Common, grp: &GroupArgs) -> Result<(GroupSpec, Group), Box<dyn Error>> {
    let spec = grp.parse_spec()?;
    let group = spec.build(&c.data_dir, c.cache_dir.as_deref())?;
    Ok((spec, group))
}

/// One report line in the chosen format.
fn emit(c: &Common, value: serde_json::Value, text: String) -> Result<(), Box<dyn Error>> {
    match c.format {
        Format::Json => println!("{value}"),
        Format::Text => println!("{text}"),
        Format::Dot => return Err("dot output is only available for the graph command".into()),
    }
    Ok(())
}

fn cmd_group(c: &Common, grp: &GroupArgs) -> Result<u8, Box<dyn Error>> {
    let (spec, g) = build(c, grp)?;
    let mut spectrum: Vec<(u64, usize)> = Vec::new();
    for i in 0..g.order() as u32 {
        let o = g.element_order(i);
        match spectrum.iter_mut().find(|(ord, _)| *ord == o) {
            Some((_, n)) => *n += 1,
            None => spectrum.push((o, 1)),
        }
    }
    spectrum.sort_unstable();
    let text = format!(
        "{}: order {}, degree {}, {} classes, spectrum {}",
        spec.id(),
        g.order(),
        g.degree(),
        g.conjugacy_classes().len(),
        spectrum
            .iter()
            .map(|(o, n)| format!("{o}^{n}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    emit(
        c,
        json!({
            "group": spec.id(),
            "order": g.order(),
            "degree": g.degree(),
            "classes": g.conjugacy_classes().len(),
            "spectrum": spectrum,
        }),
        text,
    )?;
    Ok(0)
}

fn describe_outcome(outcome: &LeastDepth) -> String {
    match outcome {
        LeastDepth::Connected { n } => format!("least depth {n}"),
        LeastDepth::NoneUpToCap { n_cap } => format!("none up to {n_cap}"),
    }
}

fn describe_prediction(p: &Option<Prediction>) -> String {
    match p {
        Some(Prediction::Exact { n }) => format!("expected {n}"),
        Some(Prediction::DoesNotExist) => "expected none".into(),
        Some(Prediction::Recorded) => "recorded".into(),
        None => "no expectation".into(),
    }
}

fn report_text(r: &ConnectivityReport) -> String {
    let m = match r.matched {
        Some(true) => ", match",
        Some(false) => ", MISMATCH",
        None => "",
    };
    format!(
        "{}: order {}, {} ({}{m})",
        r.group,
        r.order,
        describe_outcome(&r.outcome),
        describe_prediction(&r.prediction)
    )
}

fn cmd_min_n(c: &Common, grp: &GroupArgs) -> Result<u8, Box<dyn Error>> {
    let spec = grp.parse_spec()?;
    let report = run_spec(&spec, &suite_config(c))?;
    emit(c, serde_json::to_value(&report)?, report_text(&report))?;
    Ok(match (&report.outcome, report.matched) {
        (_, Some(false)) => 2,
        (LeastDepth::NoneUpToCap { .. }, None) => 1,
        _ => 0,
    })
}

fn cmd_check(c: &Common, n: u32, grp: &GroupArgs, method: Method) -> Result<u8, Box<dyn Error>> {
    let (spec, g) = build(c, grp)?;
    let id = spec.id();
    match method {
        Method::Direct => {
            let sc = is_strong_at(&g, n)?;
            emit(
                c,
                json!({"group": id, "n": n, "method": "direct", "strongly_connected": sc}),
                format!("{id} depth {n}: {}", if sc { "strongly connected" } else { "not strongly connected" }),
            )?;
            Ok(0)
        }
        Method::Hall => {
            let out = hall_criterion(&g, n, c.seed)?;
            let text = if out.connected {
                format!("{id} depth {n}: strongly connected ({} witnesses)", out.witnesses.len())
            } else {
                format!(
                    "{id} depth {n}: not strongly connected (prime set {:?}, {} direction)",
                    out.failed_psi.as_deref().unwrap_or(&[]),
                    out.failed_direction.unwrap_or("?")
                )
            };
            emit(
                c,
                json!({"group": id, "n": n, "method": "hall", "outcome": serde_json::to_value(&out)?}),
                text,
            )?;
            Ok(0)
        }
        Method::Extension => {
            let r = extension_criterion(&g, n, c.seed)?;
            let text = if r.applies {
                format!("{id} depth {n}: strongly connected (every outside vertex links both ways)")
            } else {
                format!("{id} depth {n}: inconclusive ({} uncovered vertices)", r.uncovered.len())
            };
            emit(
                c,
                json!({"group": id, "n": n, "method": "extension",
                       "omega_size": r.omega_size, "outside": r.outside,
                       "covered_by_normalizer": r.covered_by_normalizer,
                       "covered_by_scan": r.covered_by_scan,
                       "uncovered": r.uncovered, "applies": r.applies}),
                text,
            )?;
            Ok(0)
        }
        Method::All => {
            let sc = is_strong_at(&g, n)?;
            let hall = match hall_criterion(&g, n, c.seed) {
                Ok(out) => Some(out.connected),
                Err(ConnError::CriterionInapplicable(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let ext = match extension_criterion(&g, n, c.seed) {
                Ok(r) => Some(r.applies),
                Err(ConnError::CriterionInapplicable(_)) => None,
                Err(e) => return Err(e.into()),
            };
            // the hall answer is exact; the extension one only certifies
            let agree = hall.map_or(true, |h| h == sc) && ext.map_or(true, |a| !a || sc);
            emit(
                c,
                json!({"group": id, "n": n, "method": "all", "direct": sc,
                       "hall": hall, "extension_applies": ext, "agree": agree}),
                format!(
                    "{id} depth {n}: direct {sc}, hall {hall:?}, extension {ext:?}{}",
                    if agree { "" } else { " DISAGREE" }
                ),
            )?;
            Ok(if agree { 0 } else { 2 })
        }
    }
}

fn cmd_depth(c: &Common, x: u32, y: u32, grp: &GroupArgs) -> Result<u8, Box<dyn Error>> {
    let (spec, g) = build(c, grp)?;
    let order = g.order() as u32;
    if x >= order || y >= order {
        return Err(format!("element index out of range (order {order})").into());
    }
    let d = engel_depth(&g, x, y);
    let text = match d {
        Depth::Finite(k) => format!("{}: [{x},_{k} {y}] = 1", spec.id()),
        Depth::Infinite => format!("{}: the iterated commutator of {x} and {y} never dies", spec.id()),
    };
    emit(
        c,
        json!({"group": spec.id(), "x": x, "y": y,
               "order_x": g.element_order(x), "order_y": g.element_order(y),
               "depth": serde_json::to_value(d)?}),
        text,
    )?;
    Ok(0)
}

fn cmd_graph(c: &Common, n: u32, grp: &GroupArgs) -> Result<u8, Box<dyn Error>> {
    const GRAPH_CAP: usize = 2000;
    let (_, g) = build(c, grp)?;
    let view = EngelGraphView::new(&g, n)?;
    match c.format {
        Format::Dot => println!("{}", view.to_dot(GRAPH_CAP)?),
        Format::Json | Format::Text => println!("{}", view.to_json(GRAPH_CAP)?),
    }
    Ok(0)
}

fn suite_rows(
    c: &Common,
    name: &str,
    specs: &[GroupSpec],
) -> Result<u8, Box<dyn Error>> {
    let results = run_suite(specs, &suite_config(c));
    let mut mismatches = 0usize;
    let mut errors = 0usize;
    for (id, result) in &results {
        match result {
            Ok(report) => {
                if report.matched == Some(false) {
                    mismatches += 1;
                }
                emit(c, serde_json::to_value(report)?, report_text(report))?;
            }
            Err(e) => {
                errors += 1;
                emit(
                    c,
                    json!({"group": id, "error": e.to_string()}),
                    format!("{id}: ERROR {e}"),
                )?;
            }
        }
    }
    emit(
        c,
        json!({"suite": name, "groups": results.len(),
               "mismatches": mismatches, "errors": errors}),
        format!(
            "{name}: {} groups, {mismatches} mismatches, {errors} errors",
            results.len()
        ),
    )?;
    Ok(if errors > 0 {
        3
    } else if mismatches > 0 {
        2
    } else {
        0
    })
}

fn cmd_table1(c: &Common, max_q: u64) -> Result<u8, Box<dyn Error>> {
    if max_q > 31 {
        return Err("rows above q = 31 are out of scope; largest supported is 31".into());
    }
    let mut specs = vec![GroupSpec::Alt(6), GroupSpec::Named("m10".into())];
    for q in 4..=max_q {
        if factor_prime_power(q).is_some() {
            specs.push(GroupSpec::Psl2(q));
        }
    }
    if max_q >= 13 {
        specs.push(GroupSpec::Psl3(4));
    }
    suite_rows(c, "table1", &specs)
}

fn cmd_sporadic(c: &Common, stretch: bool) -> Result<u8, Box<dyn Error>> {
    let mut specs = vec![GroupSpec::Named("m11".into())];
    if stretch {
        specs.push(GroupSpec::Named("m12".into()));
    }
    suite_rows(c, "sporadic", &specs)
}

/// The bundled character table matching a group spec, if any.
fn bundled_table(spec: &GroupSpec) -> Option<&'static str> {
    match spec.id().as_str() {
        "sym3" => Some("sym3"),
        "sym4" => Some("sym4"),
        "alt5" => Some("alt5"),
        "psl2(7)" => Some("psl2_7"),
        _ => None,
    }
}

fn load_bundled(
    c: &Common,
    spec: &GroupSpec,
) -> Result<(Group, CharacterTable, ClassMatch, String), Box<dyn Error>> {
    let name = bundled_table(spec).ok_or_else(|| {
        format!(
            "no bundled character table for {}; available: sym3, sym4, alt5, psl2(7)",
            spec.id()
        )
    })?;
    let g = spec.build(&c.data_dir, c.cache_dir.as_deref())?;
    let path = c.data_dir.join(format!("chartab/{name}.ct"));
    let table = load_character_table(&path)?;
    let cm = match_classes(&g, &table)?;
    Ok((g, table, cm, format!("{name}.ct")))
}

fn cmd_crosscheck(c: &Common, grp: &GroupArgs) -> Result<u8, Box<dyn Error>> {
    let spec = grp.parse_spec()?;
    let (g, table, cm, table_file) = load_bundled(c, &spec)?;
    let k = table.class_count();
    let mut mismatches = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for v in 0..k {
                let f = class_constant_formula(&table, i, j, v)?;
                let b = class_constant_bruteforce(
                    &g,
                    cm.table_to_group[i],
                    cm.table_to_group[j],
                    cm.table_to_group[v],
                );
                if f != b && mismatches.len() < 8 {
                    mismatches.push(json!({"i": i, "j": j, "v": v, "formula": f, "bruteforce": b}));
                }
            }
        }
    }
    let ok = mismatches.is_empty();
    emit(
        c,
        json!({"group": spec.id(), "table": table_file, "classes": k,
               "triples": k * k * k, "mismatches": mismatches, "all_equal": ok}),
        format!(
            "{} vs {table_file}: {} triples, {}",
            spec.id(),
            k * k * k,
            if ok { "all equal" } else { "MISMATCH" }
        ),
    )?;
    Ok(if ok { 0 } else { 2 })
}

struct Instance {
    name: &'static str,
    group: Group,
    table: CharacterTable,
    cm: ClassMatch,
    sub: Vec<u32>,
    sub_desc: &'static str,
    class_idx: usize,
    class_order: u64,
}

/// Built-in coset-graph instances: a subgroup H and a cyclic-generator
/// class C with H disjoint from the conjugate closure of C - 1.
fn builtin_instance(name: &str, c: &Common) -> Result<Instance, Box<dyn Error>> {
    match name {
        "alt5" => {
            let g = GroupSpec::Alt(5).build(&c.data_dir, c.cache_dir.as_deref())?;
            let table = load_character_table(&c.data_dir.join("chartab/alt5.ct"))?;
            let cm = match_classes(&g, &table)?;
            let sub: Vec<u32> = (0..g.order() as u32).filter(|&e| g.elem(e).apply(4) == 4).collect();
            let class_idx = g
                .conjugacy_classes()
                .iter()
                .position(|cl| cl.order == 5)
                .expect("alt5 has order-5 elements");
            Ok(Instance {
                name: "alt5",
                group: g,
                table,
                cm,
                sub,
                sub_desc: "point stabilizer, order 12",
                class_idx,
                class_order: 5,
            })
        }
        "sym4" => {
            let g = GroupSpec::Sym(4).build(&c.data_dir, c.cache_dir.as_deref())?;
            let table = load_character_table(&c.data_dir.join("chartab/sym4.ct"))?;
            let cm = match_classes(&g, &table)?;
            let sub = g
                .sylow_subgroup(2, c.seed)
                .ok_or("no Sylow 2-subgroup found in sym4")?;
            let class_idx = g
                .conjugacy_classes()
                .iter()
                .position(|cl| cl.order == 3)
                .expect("sym4 has 3-cycles");
            Ok(Instance {
                name: "sym4",
                group: g,
                table,
                cm,
                sub,
                sub_desc: "Sylow 2-subgroup, order 8",
                class_idx,
                class_order: 3,
            })
        }
        other => Err(format!("unknown instance {other}; built-ins: alt5, sym4").into()),
    }
}

fn cmd_delta(c: &Common, instance: &str) -> Result<u8, Box<dyn Error>> {
    let inst = builtin_instance(instance, c)?;
    let delta = delta_graph(&inst.group, &inst.sub, inst.class_idx)?;
    let text = format!(
        "{} ({}, order-{} class): {} vertices, {} components of sizes {:?}, {} cosets, hypotheses {}",
        inst.name,
        inst.sub_desc,
        inst.class_order,
        delta.vertex_count,
        delta.components,
        delta.component_sizes,
        delta.coset_count,
        if delta.hypotheses.all() { "satisfied" } else { "NOT satisfied" },
    );
    emit(
        c,
        json!({"instance": inst.name, "subgroup": inst.sub_desc,
               "subgroup_order": inst.sub.len(), "class_order": inst.class_order,
               "report": serde_json::to_value(&delta)?}),
        text,
    )?;
    Ok(0)
}

fn cmd_bound(c: &Common, instance: &str) -> Result<u8, Box<dyn Error>> {
    let inst = builtin_instance(instance, c)?;
    let delta = delta_graph(&inst.group, &inst.sub, inst.class_idx)?;
    let rep = perm_character(&inst.group, &inst.table, &inst.cm, &inst.sub)?;
    let fusion = power_fusion(&inst.group, &inst.cm, inst.class_idx);
    let index = (inst.group.order() / inst.sub.len()) as u64;
    let bound = component_lower_bound(&inst.table, &rep.multiplicities, &fusion, index)?;
    let components = BigRational::from_integer(BigInt::from(delta.components as u64));
    let valid = bound <= components;
    let attained = bound == components;
    emit(
        c,
        json!({"instance": inst.name, "subgroup_index": index,
               "components": delta.components, "bound": bound.to_string(),
               "multiplicities": rep.multiplicities,
               "valid": valid, "attained": attained}),
        format!(
            "{}: bound {} vs {} components ({})",
            inst.name,
            bound,
            delta.components,
            if attained { "attained" } else if valid { "valid" } else { "VIOLATED" },
        ),
    )?;
    Ok(if valid { 0 } else { 2 })
}

fn cmd_slices(c: &Common, grp: &GroupArgs) -> Result<u8, Box<dyn Error>> {
    let spec = grp.parse_spec()?;
    let (g, table, cm, table_file) = load_bundled(c, &spec)?;
    let mut lines = Vec::new();
    let mut reports = Vec::new();
    for iclass in 0..table.class_count() {
        if table.classes[iclass].elt_order != 2 {
            continue;
        }
        let report = involution_slices(&g, &cm, iclass)?;
        lines.push(format!(
            "  class {} (size {}): slices {:?} totalling {}",
            table.classes[iclass].name,
            table.classes[iclass].size,
            report.rows.iter().map(|r| r.slice_size).collect::<Vec<_>>(),
            report.total,
        ));
        reports.push(json!({"class": table.classes[iclass].name,
                            "size": table.classes[iclass].size,
                            "report": serde_json::to_value(&report)?}));
    }
    emit(
        c,
        json!({"group": spec.id(), "table": table_file, "involution_classes": reports}),
        format!("{} vs {table_file}:\n{}", spec.id(), lines.join("\n")),
    )?;
    Ok(0)
}

fn cmd_monster(c: &Common, constants: Option<&std::path::Path>) -> Result<u8, Box<dyn Error>> {
    let path = constants
        .map(PathBuf::from)
        .unwrap_or_else(|| c.data_dir.join("monster.txt"));
    let consts = load_monster_constants(&path)?;
    let report = monster_checks(&consts);
    for check in &report.checks {
        emit(
            c,
            serde_json::to_value(check)?,
            format!("{}: {} ({})", check.name, if check.pass { "pass" } else { "FAIL" }, check.detail),
        )?;
    }
    let passed = report.checks.iter().filter(|ch| ch.pass).count();
    emit(
        c,
        json!({"constants": path.display().to_string(),
               "passed": passed, "total": report.checks.len(),
               "all_pass": report.all_pass()}),
        format!("{passed}/{} checks pass", report.checks.len()),
    )?;
    Ok(if report.all_pass() { 0 } else { 2 })
}
