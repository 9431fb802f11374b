use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use genpr::caps::{
    cap_area_fraction, cap_fraction_approx, cap_volume_fraction, nn_distance_event, nn_fraction,
    CapKind, CapQuery, DistanceEvent,
};
use genpr::formats::{read_features, read_images, write_features};
use genpr::grid::{parse_grid, parse_int_grid};
use genpr::metrics::DEFAULT_K;
use genpr::plot::render_svg;
use genpr::samplers::sample;
use genpr::sweep::{
    embedding_rng, run_contrast_sweep, run_feature_sweep, run_synthetic_sweep, DEFAULT_N,
    DEFAULT_RADII, DEFAULT_SCALES, DEFAULT_TRIALS, FAST_N,
};
use genpr::table::{read_csv, write_csv};
use genpr::transforms::random_embed;
use genpr::{
    evaluate_suite, init_thread_pool, Error, ErrorKind, Metric, PairFamily, RngSpec, SupportFamily,
    SupportSpec, SweepConfig, SweepResult,
};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

/// k-NN precision/recall metrics and high-dimensional asymmetry experiments.
///
/// Set GENPR_THREADS to cap the number of worker threads (0 = automatic).
#[derive(Debug, Parser)]
#[command(name = "genpr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Radius x dimension sweep over a synthetic support family.
    Sweep(SweepArgs),
    /// Scale generated features about their mean and score them against real features.
    FeatureSweep(FeatureSweepArgs),
    /// Vary image contrast, embed randomly and score against real features.
    ContrastSweep(ContrastSweepArgs),
    /// Score two FV32 feature files.
    Metrics(MetricsArgs),
    /// Hyperspherical cap volume and area fractions.
    Cap(CapArgs),
    /// Monte Carlo nearest-neighbor distance events on the unit sphere.
    NnEvent(NnEventArgs),
    /// Render a sweep CSV as SVG.
    Plot(PlotArgs),
    /// Draw points from a synthetic support into an FV32 file.
    Sample(SampleArgs),
    /// Embed an IMU8 image file with the random projection used by contrast sweeps.
    Embed(EmbedArgs),
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// sphere, cube or gaussian
    #[arg(long, default_value = "sphere")]
    family: String,
    /// Comma list or start:stop:step.
    #[arg(long, default_value = "2,4,8,16,32,64,128,256,512")]
    dims: String,
    #[arg(long, default_value = DEFAULT_RADII)]
    radii: String,
    /// Samples per cloud (defaults to 10000, or 2000 with --fast).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_K)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use the reduced sample count.
    #[arg(long)]
    fast: bool,
    #[arg(long)]
    out: PathBuf,
    /// Also render all six metrics to this SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FeatureSweepArgs {
    #[arg(long)]
    real: PathBuf,
    #[arg(long)]
    gen: PathBuf,
    #[arg(long, default_value = DEFAULT_SCALES)]
    scales: String,
    #[arg(long, default_value_t = DEFAULT_K)]
    k: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ContrastSweepArgs {
    #[arg(long)]
    images: PathBuf,
    #[arg(long)]
    real_features: PathBuf,
    #[arg(long, default_value = "0.4:2:0.1")]
    scales: String,
    #[arg(long, default_value_t = 64)]
    embed_dim: usize,
    #[arg(long, default_value_t = DEFAULT_K)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MetricsArgs {
    #[arg(long)]
    real: PathBuf,
    #[arg(long)]
    gen: PathBuf,
    #[arg(long, default_value_t = DEFAULT_K)]
    k: usize,
}

#[derive(Debug, Args)]
struct CapArgs {
    /// Ambient dimension (>= 2).
    #[arg(long)]
    d: usize,
    /// Colatitude in radians, in (0, pi/2].
    #[arg(long)]
    phi: f64,
}

#[derive(Debug, Args)]
struct NnEventArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Distance threshold on the unit sphere.
    #[arg(long, default_value_t = std::f64::consts::SQRT_2)]
    t: f64,
    /// min_exceeds or max_below
    #[arg(long, default_value = "min_exceeds")]
    event: String,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct PlotArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Comma separated metric names; all six by default.
    #[arg(long)]
    metrics: Option<String>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// sphere_surface, ball, cube_surface or gaussian
    #[arg(long)]
    family: String,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    stream: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct EmbedArgs {
    #[arg(long)]
    images: PathBuf,
    #[arg(long, default_value_t = 64)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn parse_metrics(list: Option<&str>) -> genpr::Result<Vec<Metric>> {
    match list {
        None => Ok(Metric::ALL.to_vec()),
        Some(s) => s
            .split(',')
            .map(|m| {
                Metric::from_key(m.trim())
                    .ok_or_else(|| Error::InvalidInput(format!("unknown metric {m:?}")))
            })
            .collect(),
    }
}

fn write_outputs(result: &SweepResult, out: &PathBuf, svg: Option<&PathBuf>) -> genpr::Result<()> {
    write_csv(result, out)?;
    if let Some(svg) = svg {
        if !result.is_empty() {
            render_svg(result, &Metric::ALL, svg)?;
        }
    }
    eprintln!("wrote {} records to {}", result.len(), out.display());
    Ok(())
}

fn run(cmd: Command) -> genpr::Result<()> {
    match cmd {
        Command::Sweep(a) => {
            let cfg = SweepConfig {
                family: a.family.parse::<PairFamily>()?,
                dims: parse_int_grid(&a.dims)?,
                radii: parse_grid(&a.radii)?,
                n: a.n.unwrap_or(if a.fast { FAST_N } else { DEFAULT_N }),
                k: a.k,
                trials: a.trials,
                seed: a.seed,
                out_path: None,
            };
            let result = run_synthetic_sweep(&cfg)?;
            write_outputs(&result, &a.out, a.svg.as_ref())
        }
        Command::FeatureSweep(a) => {
            let scales = parse_grid(&a.scales)?;
            let result = run_feature_sweep(&a.real, &a.gen, &scales, a.k, None)?;
            write_outputs(&result, &a.out, a.svg.as_ref())
        }
        Command::ContrastSweep(a) => {
            let scales = parse_grid(&a.scales)?;
            let result = run_contrast_sweep(
                &a.images,
                &a.real_features,
                &scales,
                a.embed_dim,
                a.k,
                a.seed,
                None,
            )?;
            write_outputs(&result, &a.out, a.svg.as_ref())
        }
        Command::Metrics(a) => {
            let real = read_features(&a.real)?;
            let gen = read_features(&a.gen)?;
            print!("{}", evaluate_suite(&real, &gen, a.k)?);
            Ok(())
        }
        Command::Cap(a) => {
            let q = CapQuery::new(a.d, a.phi)?;
            println!("d={} phi={}", a.d, a.phi);
            println!("volume_fraction  {:.17e}", cap_volume_fraction(q)?);
            println!("area_fraction    {:.17e}", cap_area_fraction(q)?);
            if a.phi < std::f64::consts::FRAC_PI_2 {
                println!(
                    "volume_approx    {:.17e}",
                    cap_fraction_approx(q, CapKind::Volume)?
                );
                println!(
                    "area_approx      {:.17e}",
                    cap_fraction_approx(q, CapKind::Area)?
                );
            }
            Ok(())
        }
        Command::NnEvent(a) => {
            let event: DistanceEvent = a.event.parse()?;
            let rng = RngSpec::new(a.seed, 0);
            let est = nn_distance_event(a.d, a.n, a.t, event, a.trials, rng)?;
            let frac = nn_fraction(a.d, a.n, a.t, a.trials, rng)?;
            println!("d={} n={} t={} trials={}", a.d, a.n, a.t, a.trials);
            println!(
                "{event} frequency  {} ({}/{})",
                est.frequency, est.hits, est.trials
            );
            println!("nn_fraction >= t    {frac}");
            Ok(())
        }
        Command::Plot(a) => {
            let metrics = parse_metrics(a.metrics.as_deref())?;
            let result = read_csv(&a.input)?;
            render_svg(&result, &metrics, &a.out)
        }
        Command::Sample(a) => {
            let family: SupportFamily = a.family.parse()?;
            let spec = SupportSpec::new(family, a.scale, a.d)?;
            let cloud = sample(&spec, a.n, RngSpec::new(a.seed, a.stream))?;
            write_features(&cloud, &a.out)
        }
        Command::Embed(a) => {
            let images = read_images(&a.images)?;
            let cloud = random_embed(&images, a.dim, embedding_rng(a.seed))?;
            write_features(&cloud, &a.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let threads = match std::env::var("GENPR_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) => t,
            Err(_) => {
                eprintln!("error: GENPR_THREADS must be a non-negative integer, got {v:?}");
                return ExitCode::from(EXIT_USAGE);
            }
        },
        Err(_) => 0,
    };
    if let Err(e) = init_thread_pool(threads) {
        eprintln!("warning: could not size thread pool: {e}");
    }

    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Usage => EXIT_USAGE,
                ErrorKind::Data => EXIT_DATA,
                ErrorKind::Numeric => EXIT_NUMERIC,
            })
        }
    }
}
