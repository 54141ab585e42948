use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fibsnow_core::turtle::{classify, snowflake_path, trace};
use fibsnow_core::words::{fibonacci_word, snowflake_word, TurnWord, DEFAULT_ORDER_CAP};
use serde::Serialize;
use serde_json::json;

use crate::report::{
    boxdim_summary, build_report, crofton_summary, histogram_csv, verify_order, Format, RunConfig,
    DEFAULT_K_MIN, DEFAULT_SAMPLES, DEFAULT_SEED,
};
use crate::svg::{render_svg, DEFAULT_SIZE, DEFAULT_STROKE_WIDTH};

#[derive(Debug, Parser)]
#[command(
    name = "fibsnow",
    version,
    about = "Fibonacci snowflake polygons and their complexity"
)]
pub struct Cli {
    /// Worker threads for Monte Carlo sampling (0 = all cores). Results do not
    /// depend on this value.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WordKind {
    /// The Fibonacci turn word q_n.
    Qn,
    /// (q_{3n+1})^4 without its last letter.
    Snowflake,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a turn word and its length.
    Gen {
        #[arg(long)]
        order: u32,
        #[arg(long, value_enum, default_value_t = WordKind::Snowflake)]
        word: WordKind,
    },
    /// Trace a word and print its vertices and classification as JSON.
    Trace {
        #[arg(long, conflicts_with = "stdin", required_unless_present = "stdin")]
        word: Option<String>,
        /// Read the word from the first line of standard input.
        #[arg(long)]
        stdin: bool,
    },
    /// Print the vertices of the order-N snowflake as JSON.
    Snowflake {
        #[arg(long)]
        order: u32,
    },
    /// Check length, closure, simplicity and bounding-box laws for orders 0..=N.
    Verify {
        #[arg(long)]
        max_order: u32,
    },
    /// Draw the order-N snowflake as an SVG polyline.
    Render {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_STROKE_WIDTH)]
        stroke_width: f64,
        #[arg(long, default_value_t = DEFAULT_SIZE)]
        size: u32,
    },
    /// Random-line crossing statistics for the order-N snowflake.
    Crofton {
        #[arg(long)]
        order: u32,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Box-count series and dimension fit of the normalized order-N snowflake.
    Boxdim {
        #[arg(long)]
        order: u32,
        #[arg(long, default_value_t = DEFAULT_K_MIN)]
        kmin: u32,
        /// Defaults to the largest scale above the floor.
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full report over orders 0..=N as JSON.
    Report {
        #[arg(long)]
        order: u32,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_K_MIN)]
        kmin: u32,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn check_order(order: u32) -> Result<()> {
    if order > DEFAULT_ORDER_CAP {
        bail!("order {order} exceeds the cap of {DEFAULT_ORDER_CAP}");
    }
    Ok(())
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn to_compact_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    Ok(s)
}

fn parse_word(raw: &str) -> Result<TurnWord> {
    raw.trim()
        .parse()
        .with_context(|| format!("invalid word {:?}", raw.trim()))
}

/// Runs a parsed command line. Returns the process exit code for outcomes
/// that are not errors (a failed `verify` is exit code 1).
pub fn run(cli: Cli) -> Result<i32> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if cli.threads > 0 {
        pool = pool.num_threads(cli.threads);
    }
    let pool = pool.build()?;
    pool.install(|| dispatch(cli.command))
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Gen { order, word } => {
            let w = match word {
                WordKind::Qn => fibonacci_word(order)?,
                WordKind::Snowflake => {
                    check_order(order)?;
                    snowflake_word(order)?
                }
            };
            emit(None, &format!("{w}\nlength {}\n", w.len()))?;
        }
        Command::Trace { word, stdin } => {
            let raw = if stdin {
                let mut line = String::new();
                io::stdin().lock().read_line(&mut line)?;
                line
            } else {
                word.unwrap_or_default()
            };
            let w = parse_word(&raw)?;
            let path = trace(&w);
            let class = classify(&path);
            let value = json!({
                "word_length": w.len(),
                "segments": path.segment_count(),
                "closed": class.closed,
                "non_intersecting": class.non_intersecting,
                "vertices": path,
            });
            emit(None, &to_compact_json(&value)?)?;
        }
        Command::Snowflake { order } => {
            check_order(order)?;
            let path = snowflake_path(order)?;
            let value = json!({
                "order": order,
                "segments": path.segment_count(),
                "vertices": path,
            });
            emit(None, &to_compact_json(&value)?)?;
        }
        Command::Verify { max_order } => {
            check_order(max_order)?;
            let mut table = String::from(
                "order  word_len  segments  4F(3n+1)  closed  simple  box          2P(n+1)-1  ok\n",
            );
            let mut all_ok = true;
            for n in 0..=max_order {
                let r = verify_order(n)?;
                all_ok &= r.passes();
                table.push_str(&format!(
                    "{:<5}  {:<8}  {:<8}  {:<8}  {:<6}  {:<6}  {:<11}  {:<9}  {}\n",
                    r.order,
                    r.word_length,
                    r.segments,
                    r.expected_segments,
                    r.closed,
                    r.non_intersecting,
                    format!("{}x{}", r.box_width, r.box_height),
                    r.pell_side,
                    if r.passes() { "PASS" } else { "FAIL" }
                ));
            }
            emit(None, &table)?;
            if !all_ok {
                eprintln!("verification failed");
                return Ok(1);
            }
        }
        Command::Render {
            order,
            out,
            stroke_width,
            size,
        } => {
            check_order(order)?;
            if size == 0 || stroke_width.is_nan() || stroke_width <= 0.0 {
                bail!("--size and --stroke-width must be positive");
            }
            let path = snowflake_path(order)?;
            emit(Some(&out), &render_svg(&path, size, stroke_width))?;
        }
        Command::Crofton {
            order,
            samples,
            seed,
            format,
            out,
        } => {
            check_order(order)?;
            let path = snowflake_path(order)?;
            let config = RunConfig {
                samples,
                seed,
                format,
                ..RunConfig::new(order)
            };
            let summary = crofton_summary(&path, samples, seed, config.bootstrap_resamples)?;
            let text = match format {
                Format::Json => to_json(&json!({ "config": config, "crofton": summary }))?,
                Format::Csv => histogram_csv(&summary.raw_histogram),
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Boxdim {
            order,
            kmin,
            kmax,
            out,
        } => {
            check_order(order)?;
            let summary = boxdim_summary(order, kmin, kmax)?;
            emit(out.as_deref(), &to_json(&summary)?)?;
        }
        Command::Report {
            order,
            samples,
            seed,
            kmin,
            kmax,
            out,
        } => {
            check_order(order)?;
            let config = RunConfig {
                samples,
                seed,
                k_min: kmin,
                k_max: kmax,
                ..RunConfig::new(order)
            };
            let report = build_report(&config)?;
            emit(out.as_deref(), &to_json(&report)?)?;
        }
    }
    Ok(0)
}
