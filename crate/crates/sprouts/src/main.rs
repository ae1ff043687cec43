use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use sprouts::analysis::analyze;
use sprouts::playouts::run_playouts;
use sprouts::sweep::verify_cs4;
use sprouts::{parse_position, SharedTable};
use sprouts_core::formulas::{
    bs_p4_move_bounds, cs4_nimber_formula, first_player_wins_planar, forest_moves, girth_forces_tree,
    nonorientable_moves, orientable_moves, GameSpec,
};

#[derive(Parser)]
#[command(name = "sprouts", version, about = "Sprague-Grundy engine for Circular sprout and two-spot Brussels sprout games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nimber, winner and best move of a position such as `CS[3,1,4,1]`,
    /// `BS2[3,3]` or `CS[0,1,0,1]+CS[1,1,2,1]`.
    Nimber {
        state: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Compare searched nimbers of [p,1,q,1] with the closed form for
    /// 0 <= p <= q <= max-q. Exits nonzero on any mismatch.
    VerifyCs4 {
        #[arg(long, default_value_t = 14)]
        max_q: u32,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Random unconstrained playouts on the sphere. Exits nonzero unless every
    /// playout has the predicted length and passes the Euler check.
    Playout {
        #[arg(short = 't', long, value_delimiter = ',', required = true)]
        tips: Vec<u32>,
        /// Number of spots; must match the tip list when given.
        #[arg(short = 'n')]
        spots: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// One JSON record per playout followed by a summary line.
        #[arg(long)]
        json: bool,
    },
    /// Closed-form move counts, winners and bounds.
    Formulas(FormulaArgs),
    /// Run the HTTP play service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FormulaArgs {
    #[arg(short = 'n')]
    spots: Option<usize>,
    #[arg(short = 't', long, value_delimiter = ',')]
    tips: Vec<u32>,
    /// Surface genus (handles or crosscaps).
    #[arg(short = 'k', default_value_t = 0)]
    genus: u32,
    /// Girth bound of the graph family.
    #[arg(short = 'g')]
    girth: Option<u32>,
    #[arg(long)]
    forest: bool,
    #[arg(long)]
    orientable: bool,
    #[arg(long)]
    nonorientable: bool,
    #[arg(long)]
    winner: bool,
    #[arg(long)]
    girth_tree: bool,
    #[arg(long)]
    bounds_p4: bool,
    /// Closed-form nimber of [p,1,q,1], given as `p,q`.
    #[arg(long, value_delimiter = ',')]
    cs4: Option<Vec<u32>>,
    #[arg(long)]
    json: bool,
}

fn load_table(cache: &Option<PathBuf>) -> anyhow::Result<SharedTable> {
    match cache {
        Some(path) => SharedTable::load_or_new(path).with_context(|| format!("loading {}", path.display())),
        None => Ok(SharedTable::new()),
    }
}

fn save_table(table: &SharedTable, cache: &Option<PathBuf>) -> anyhow::Result<()> {
    if let Some(path) = cache {
        table.save(path).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_nimber(state: &str, json: bool, cache: &Option<PathBuf>) -> anyhow::Result<ExitCode> {
    let position = parse_position(state).with_context(|| format!("cannot parse {state:?}"))?;
    let table = load_table(cache)?;
    let a = analyze(&position, &table);
    if json {
        println!("{}", serde_json::to_string(&a)?);
    } else {
        println!("state      {}", a.state);
        println!("nimber     {}", a.nimber);
        if a.component_nimbers.len() > 1 {
            let parts: Vec<String> = a.component_nimbers.iter().map(u64::to_string).collect();
            println!("components {}", parts.join(" xor "));
        }
        if a.terminal {
            println!("terminal   no legal moves, the player to move loses");
        }
        println!("winner     {} wins", a.winner);
        println!("length     {}..={} moves", a.min_moves, a.max_moves);
        match (&a.best_move_text, a.winning) {
            (Some(m), true) => println!("best move  {m} (leaves nimber 0)"),
            (Some(m), false) => println!("best move  none wins; {m} (losing position)"),
            (None, _) => {}
        }
    }
    save_table(&table, cache)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(max_q: u32, json: bool, cache: &Option<PathBuf>) -> anyhow::Result<ExitCode> {
    let table = load_table(cache)?;
    let report = verify_cs4(max_q, &table);
    if json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        println!("{:>3} {:>3} {:>8} {:>8}  match", "p", "q", "formula", "search");
        for c in &report.cells {
            println!("{:>3} {:>3} {:>8} {:>8}  {}", c.p, c.q, c.formula, c.oracle, if c.matches { "ok" } else { "MISMATCH" });
        }
        let bad = report.mismatches().count();
        println!("{} cells, {} mismatches: {}", report.cells.len(), bad, if report.pass { "PASS" } else { "FAIL" });
    }
    eprintln!("wall time {:.3}s", report.wall_time.as_secs_f64());
    save_table(&table, cache)?;
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_playout(tips: &[u32], spots: Option<usize>, trials: u32, seed: u64, json: bool) -> anyhow::Result<ExitCode> {
    if let Some(n) = spots {
        if n != tips.len() {
            bail!("-n {n} does not match {} tip counts", tips.len());
        }
    }
    if trials < 1 {
        bail!("--trials must be at least 1");
    }
    let report = run_playouts(tips, trials, seed);
    if json {
        for r in &report.records {
            println!("{}", serde_json::to_string(r)?);
        }
        println!(
            "{}",
            json!({
                "summary": {
                    "tips": report.tips,
                    "trials": report.trials,
                    "seed": report.seed,
                    "expected_moves": report.expected_moves,
                    "histogram": report.histogram,
                    "euler_pass_rate": report.euler_pass_rate,
                    "pass": report.pass(),
                }
            })
        );
    } else {
        println!("tips {:?}, {} trials from seed {}", report.tips, report.trials, report.seed);
        match report.expected_moves {
            Some(e) => println!("predicted length {e}"),
            None => println!("predicted length is negative: degenerate tip vector"),
        }
        for (len, count) in &report.histogram {
            println!("  {len:>4} moves: {count}");
        }
        println!("euler check pass rate {:.3}", report.euler_pass_rate);
        println!("{}", if report.pass() { "PASS" } else { "FAIL" });
    }
    Ok(if report.pass() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_formulas(args: &FormulaArgs) -> anyhow::Result<ExitCode> {
    let mut rows: Vec<(&str, serde_json::Value, String)> = Vec::new();
    if let Some(pq) = &args.cs4 {
        if pq.len() != 2 {
            bail!("--cs4 takes two values p,q");
        }
        let v = cs4_nimber_formula(pq[0].into(), pq[1].into()).0;
        rows.push(("cs4_nimber", json!(v), v.to_string()));
    }
    let any_mode = args.forest || args.orientable || args.nonorientable || args.winner || args.girth_tree || args.bounds_p4;
    if !args.tips.is_empty() || args.spots.is_some() || any_mode {
        let spec = match args.spots {
            Some(n) => GameSpec::with_spots(n, args.tips.clone())?,
            None => GameSpec::new(args.tips.clone())?,
        }
        .genus(args.genus);
        let all = !any_mode;
        if all || args.forest {
            let v = forest_moves(&spec);
            rows.push(("forest_moves", json!(v), v.to_string()));
        }
        if all || args.orientable {
            let v = orientable_moves(&spec)?;
            rows.push(("orientable_moves", json!(v.values().collect::<Vec<_>>()), v.to_string()));
        }
        if all || args.nonorientable {
            let v = nonorientable_moves(&spec)?;
            rows.push(("nonorientable_moves", json!(v.values().collect::<Vec<_>>()), v.to_string()));
        }
        if all || args.winner {
            let first = first_player_wins_planar(&spec);
            let text = if first { "first player" } else { "second player" };
            rows.push(("orientable_winner", json!(text), text.to_string()));
        }
        if args.girth_tree || (all && args.girth.is_some()) {
            let Some(g) = args.girth else { bail!("--girth-tree needs -g") };
            let v = girth_forces_tree(spec.spots(), g)?;
            rows.push(("girth_forces_tree", json!(v), v.to_string()));
        }
        if args.bounds_p4 {
            let (lo, hi) = bs_p4_move_bounds(&spec)?;
            rows.push(("bounds_p4", json!([lo, hi]), format!("({lo},{hi})")));
        } else if all {
            if let Ok((lo, hi)) = bs_p4_move_bounds(&spec) {
                rows.push(("bounds_p4", json!([lo, hi]), format!("({lo},{hi})")));
            }
        }
    }
    if rows.is_empty() {
        bail!("nothing to evaluate: give -t tip counts or --cs4 p,q");
    }
    if args.json {
        let obj: serde_json::Map<String, serde_json::Value> =
            rows.into_iter().map(|(k, v, _)| (k.to_string(), v)).collect();
        println!("{}", serde_json::Value::Object(obj));
    } else {
        for (k, _, text) in rows {
            println!("{k:<20} {text}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Nimber { state, json, cache } => cmd_nimber(&state, json, &cache),
        Command::VerifyCs4 { max_q, json, cache } => cmd_verify(max_q, json, &cache),
        Command::Playout { tips, spots, trials, seed, json } => cmd_playout(&tips, spots, trials, seed, json),
        Command::Formulas(args) => cmd_formulas(&args),
        Command::Serve { port, cache } => {
            let table = Arc::new(load_table(&cache)?);
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(sprouts::service::serve(port, Arc::clone(&table)))?;
            save_table(&table, &cache)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
