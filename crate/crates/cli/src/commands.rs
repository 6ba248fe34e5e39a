use std::fs;
use std::path::{Path, PathBuf};

use diagdisc::channels::{
    builtin, commutes_with_pi, is_discord_nongenerating, parse_channel, ConditionReport,
    QuantumChannel, Verdict, BUILTIN_NAMES,
};
use diagdisc::discord::{
    diagonal_discord_with, generalized_discord_with, optimized_discord_2q, pi_a_with, pi_multi,
    DegeneracyPolicy, DistanceMeasure,
};
use diagdisc::experiments::{
    format_real, rows_csv, run_channel_classification, run_continuity_check, run_monotonicity,
    run_xstate_comparison, summary_csv, ClassificationConfig, ContinuityConfig, ExperimentRecord,
    MonotonicityConfig, XStateConfig,
};
use diagdisc::linalg::random::RandomSource;
use diagdisc::linalg::{hermitian_eig, von_neumann_entropy};
use diagdisc::states::{
    parse_multipartite, parse_state, random_bipartite_with_gap, sample_x_state, write_state,
    BipartiteState,
};

use crate::error::{CliError, CliResult};
use crate::svg;
use crate::{
    ClassifyArgs, Command, DiscordArgs, DiscordMode, ExperimentCmd, RunArgs, SampleArgs, SampleCmd,
};

/// `println!` that reports write failures instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        writeln!(std::io::stdout(), $($arg)*).map_err(|e| CliError::io("<stdout>", e))?
    }};
}

pub fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Discord(args) => discord(args),
        Command::Experiment { which } => experiment(which),
        Command::Classify(args) => classify(args),
        Command::Sample { which } => sample(which),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Creates `dir` if needed and checks that files can be written into it.
fn ensure_writable(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let probe = dir.join(".diagdisc-write-test");
    fs::write(&probe, b"").map_err(|e| CliError::io(dir, e))?;
    fs::remove_file(&probe).map_err(|e| CliError::io(&probe, e))
}

fn check_tol(name: &str, v: f64) -> CliResult<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--{name} must be positive and finite, got {v}"
        )))
    }
}

fn check_count(name: &str, v: usize) -> CliResult<()> {
    if v == 0 {
        return Err(CliError::Usage(format!("--{name} must be at least 1")));
    }
    Ok(())
}

fn bits(x: f64) -> String {
    format!("{x:.12}")
}

fn discord(args: DiscordArgs) -> CliResult<()> {
    let path = &args.state_file;
    let text = read(path)?;
    let policy = if args.optimize_degenerate {
        DegeneracyPolicy::Optimize
    } else {
        DegeneracyPolicy::Reject
    };
    let in_file = |e| CliError::in_file(path, e);
    let result = match args.mode {
        DiscordMode::Multi => {
            let state = parse_multipartite(&text).map_err(in_file)?;
            let parties = if args.parties.is_empty() {
                (0..state.parties()).collect()
            } else {
                args.parties.clone()
            };
            let dephased = pi_multi(&state, &parties).map_err(in_file)?;
            let value =
                (von_neumann_entropy(dephased.rho())? - von_neumann_entropy(state.rho())?).max(0.0);
            out!("mode multi");
            out!("dims {}", join(state.dims().iter()));
            out!("parties {}", join(parties.iter()));
            out!("discord_bits {}", bits(value));
            return Ok(());
        }
        _ => {
            let state = parse_state(&text).map_err(in_file)?;
            report_bipartite(&state, args.mode, args.p, policy)
        }
    };
    if let Err(CliError::Core(e @ diagdisc::Error::DegenerateMarginal { .. })) = result {
        eprintln!(
            "hint: rerun with --optimize-degenerate to minimize over the degenerate eigenspace"
        );
        return Err(CliError::in_file(path, e));
    }
    result
}

fn join<T: ToString>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn report_bipartite(
    state: &BipartiteState,
    mode: DiscordMode,
    p: f64,
    policy: DegeneracyPolicy,
) -> CliResult<()> {
    let spec = hermitian_eig(&state.marginal_a())?;
    let mut lines = vec![format!("dims {} {}", state.dim_a(), state.dim_b())];
    lines.push(format!(
        "marginal_a_eigenvalues {}",
        join(spec.eigenvalues.iter().map(|&l| format_real(l)))
    ));
    lines.push(format!("marginal_a_min_gap {}", format_real(spec.min_gap)));
    let value = match mode {
        DiscordMode::Optimized => {
            let opt = optimized_discord_2q(state)?;
            lines.push(format!(
                "best_angles {} {}",
                format_real(opt.best_angles.0),
                format_real(opt.best_angles.1)
            ));
            opt.value
        }
        DiscordMode::Diagonal | DiscordMode::Generalized => {
            let pi = pi_a_with(state, policy)?;
            lines.push(format!("degenerate {}", pi.degenerate));
            lines.push(format!(
                "optimized_over_degeneracy {}",
                pi.optimized_over_degeneracy
            ));
            for (k, col) in pi.basis_used.columns().iter().enumerate() {
                let entries = col
                    .iter()
                    .map(|z| format!("{} {}", format_real(z.re), format_real(z.im)));
                lines.push(format!("basis_a_{k} {}", join(entries)));
            }
            if mode == DiscordMode::Diagonal {
                diagonal_discord_with(state, policy)?
            } else {
                lines.push(format!("schatten_p {p}"));
                generalized_discord_with(state, DistanceMeasure::SchattenNorm { p }, policy)?
            }
        }
        DiscordMode::Multi => unreachable!("handled by the caller"),
    };
    let name = match mode {
        DiscordMode::Diagonal => "diagonal",
        DiscordMode::Optimized => "optimized",
        _ => "generalized",
    };
    out!("mode {name}");
    let unit = if mode == DiscordMode::Generalized {
        "discord"
    } else {
        "discord_bits"
    };
    out!("{unit} {}", bits(value));
    for l in lines {
        out!("{l}");
    }
    Ok(())
}

fn threads(run: &RunArgs) -> CliResult<usize> {
    match run.threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn load_channel(name: &str, file: Option<&Path>) -> CliResult<(QuantumChannel, String)> {
    match file {
        Some(path) => {
            let ch = parse_channel(&read(path)?).map_err(|e| CliError::in_file(path, e))?;
            Ok((ch, path.display().to_string()))
        }
        None => builtin(name)
            .map(|ch| (ch, name.to_string()))
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown channel `{name}`; built-ins are {}",
                    BUILTIN_NAMES.join(", ")
                ))
            }),
    }
}

fn experiment(which: ExperimentCmd) -> CliResult<()> {
    let (record, run) = match which {
        ExperimentCmd::Monotonicity {
            channel,
            channel_file,
            samples,
            dim_b,
            rank,
            tol_violation,
            run,
        } => {
            check_count("samples", samples)?;
            check_count("dim-b", dim_b)?;
            check_tol("tol-violation", tol_violation)?;
            ensure_writable(&run.output_dir)?;
            let (ch, name) = load_channel(&channel, channel_file.as_deref())?;
            let mut cfg = MonotonicityConfig::new(ch, &name, samples, run.seed);
            cfg.dim_b = dim_b;
            cfg.rank = rank;
            cfg.tol = tol_violation;
            cfg.threads = threads(&run)?;
            (run_monotonicity(&cfg)?, run)
        }
        ExperimentCmd::Xstate {
            samples,
            tol_equality,
            run,
        } => {
            check_count("samples", samples)?;
            check_tol("tol-equality", tol_equality)?;
            ensure_writable(&run.output_dir)?;
            let mut cfg = XStateConfig::new(samples, run.seed);
            cfg.equality_tol = tol_equality;
            cfg.threads = threads(&run)?;
            (run_xstate_comparison(&cfg)?, run)
        }
        ExperimentCmd::Continuity {
            dims,
            eps,
            samples,
            schatten_p,
            run,
        } => {
            check_count("samples", samples)?;
            for &e in &eps {
                if !(e.is_finite() && e >= 0.0) {
                    return Err(CliError::Usage(format!(
                        "--eps values must be finite and non-negative, got {e}"
                    )));
                }
            }
            ensure_writable(&run.output_dir)?;
            let mut cfg = ContinuityConfig::new(dims[0], dims[1], samples, eps, run.seed);
            cfg.schatten_p = schatten_p;
            cfg.threads = threads(&run)?;
            (run_continuity_check(&cfg)?, run)
        }
        ExperimentCmd::ClassifySweep {
            dim,
            per_class,
            trials,
            mu_terms,
            run,
        } => {
            check_count("per-class", per_class)?;
            check_count("trials", trials)?;
            check_count("mu-terms", mu_terms)?;
            ensure_writable(&run.output_dir)?;
            let mut cfg = ClassificationConfig::new(dim, per_class, trials, run.seed);
            cfg.mu_terms = mu_terms;
            cfg.threads = threads(&run)?;
            (run_channel_classification(&cfg)?, run)
        }
    };
    write_record(&record, &run)?;
    let failures = record.invariant_failures();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invariant(failures.join("; ")))
    }
}

/// Axes of the scatter plot for each experiment.
fn scatter_axes(id: &str) -> Option<(&'static str, &'static str, &'static str, &'static str)> {
    match id {
        "monotonicity" => Some((
            "d_before",
            "d_after",
            "diagonal discord before",
            "diagonal discord after",
        )),
        "xstate" => Some((
            "d_optimized",
            "d_diagonal",
            "optimized discord",
            "diagonal discord",
        )),
        "continuity" => Some((
            "bound",
            "abs_change",
            "continuity bound",
            "|change of diagonal discord|",
        )),
        _ => None,
    }
}

fn write_record(record: &ExperimentRecord, run: &RunArgs) -> CliResult<()> {
    let id = &record.experiment_id;
    let dir = &run.output_dir;
    let rows_path = dir.join(format!("{id}_rows.csv"));
    let summary_path = dir.join(format!("{id}_summary.csv"));
    write(&rows_path, &rows_csv(record))?;
    write(&summary_path, &summary_csv(record))?;
    let mut written: Vec<PathBuf> = vec![rows_path, summary_path];
    if run.svg {
        match scatter_axes(id) {
            Some((xc, yc, xl, yl)) => {
                let xs = record.column(xc).expect("experiment has its plot columns");
                let ys = record.column(yc).expect("experiment has its plot columns");
                let path = dir.join(format!("{id}.svg"));
                write(&path, &svg::scatter(id, xl, yl, &xs, &ys))?;
                written.push(path);
            }
            None => eprintln!("note: no scatter plot is defined for `{id}`"),
        }
    }
    for (k, v) in record.summary.iter().chain(&record.counters) {
        out!("{k} {}", format_real(*v));
    }
    for p in written {
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}

fn verdict_word(v: Verdict, holds: &'static str, violated: &'static str) -> &'static str {
    match v {
        Verdict::Holds => holds,
        Verdict::Violated => violated,
        Verdict::Inconclusive => "inconclusive",
    }
}

/// Verdict under user thresholds; the defaults match `Verdict` in the core crate.
fn verdict(report: &ConditionReport, tol_commuting: f64, tol_violation: f64) -> Verdict {
    if report.evaluated() == 0 {
        Verdict::Inconclusive
    } else if report.max_deviation <= tol_commuting {
        Verdict::Holds
    } else if report.max_deviation >= tol_violation {
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    }
}

fn classify(args: ClassifyArgs) -> CliResult<()> {
    check_count("trials", args.trials)?;
    check_tol("tol-commuting", args.tol_commuting)?;
    check_tol("tol-violation", args.tol_violation)?;
    if args.tol_commuting >= args.tol_violation {
        return Err(CliError::Usage(
            "--tol-commuting must be below --tol-violation".into(),
        ));
    }
    let (channel, _) = load_channel(
        args.builtin.as_deref().unwrap_or_default(),
        args.channel_file.as_deref(),
    )?;
    let mut rng = RandomSource::from_seed(args.seed);
    let commute = commutes_with_pi(&channel, args.trials, &mut rng);
    let nongen = is_discord_nongenerating(&channel, args.trials, &mut rng);
    out!("class {}", channel.class_name());
    out!("dim {}", channel.dim());
    let mut witnesses = Vec::new();
    for (name, report, holds, violated) in [
        ("commuting", &commute, "commuting", "non-commuting"),
        ("nongenerating", &nongen, "nongenerating", "generating"),
    ] {
        let v = verdict(report, args.tol_commuting, args.tol_violation);
        out!("{name} {}", verdict_word(v, holds, violated));
        out!("{name}_max_deviation {}", format_real(report.max_deviation));
        out!("{name}_evaluated_trials {}", report.evaluated());
        if v == Verdict::Violated {
            if let Some(w) = &report.witness {
                witnesses.push((name, w.clone()));
            }
        }
    }
    if !witnesses.is_empty() {
        ensure_writable(&args.output_dir)?;
    }
    for (name, w) in witnesses {
        let path = args.output_dir.join(format!("{name}_witness.state"));
        write(&path, &write_state(&w))?;
        out!("{name}_witness {}", path.display());
    }
    Ok(())
}

fn emit_states(
    kind: &str,
    common: &SampleArgs,
    mut draw: impl FnMut(&mut RandomSource) -> CliResult<BipartiteState>,
) -> CliResult<()> {
    check_count("count", common.count)?;
    let mut rng = RandomSource::from_seed(common.seed);
    match &common.output_dir {
        None if common.count > 1 => {
            Err(CliError::Usage("--count above 1 needs --output-dir".into()))
        }
        None => {
            print!("{}", write_state(&draw(&mut rng)?));
            Ok(())
        }
        Some(dir) => {
            ensure_writable(dir)?;
            for i in 0..common.count {
                let path = dir.join(format!("{kind}_{i:04}.state"));
                write(&path, &write_state(&draw(&mut rng)?))?;
                out!("{}", path.display());
            }
            Ok(())
        }
    }
}

fn sample(which: SampleCmd) -> CliResult<()> {
    match which {
        SampleCmd::Xstate { common } => {
            emit_states("xstate", &common, |rng| Ok(sample_x_state(rng)))
        }
        SampleCmd::Random {
            dims,
            rank,
            min_gap,
            common,
        } => {
            let (da, db) = (dims[0], dims[1]);
            if !(min_gap.is_finite() && min_gap >= 0.0) {
                return Err(CliError::Usage(format!(
                    "--min-gap must be finite and non-negative, got {min_gap}"
                )));
            }
            let rank = rank.unwrap_or(da * db);
            emit_states("random", &common, |rng| {
                Ok(random_bipartite_with_gap(rng, da, db, rank, min_gap)?.0)
            })
        }
    }
}
