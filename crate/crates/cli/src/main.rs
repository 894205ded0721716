use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use polya_cli::data::read_libsvm;
use polya_cli::experiment::{rows_to_csv, run_experiment, ExperimentConfig, Model, ModelBundle, TaskKind};
use polya_core::learn::{cross_validate, Family, Normalizer, SearchSpace, Task};
use polya_core::rng::derive_seed;
use polya_core::{FeatureMap, FeatureMapConfig, KernelSpec, MapKernel, MapKind};
use serde_json::json;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Polya kernels and random feature maps.
#[derive(Parser)]
#[command(name = "polya", version)]
struct Cli {
    /// Master seed for every random stream.
    #[arg(long, global = true, env = "POLYA_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a kernel, its Fourier transform or a table of both.
    #[command(subcommand)]
    Kernel(KernelCmd),
    /// Write random features of a dataset in LIBSVM form plus a JSON sidecar.
    Features(FeaturesArgs),
    /// Compare expected and observed Frobenius error of the approximate kernel matrix.
    ApproxError(ExperimentArgs),
    /// Fit a ridge model and save it as JSON.
    Fit(FitArgs),
    /// Predict with a saved model.
    Predict(PredictArgs),
    /// Grid-search (shape, τ, λ) by k-fold cross-validation.
    Cv(CvArgs),
    /// Approximation error and test metric for every method and D.
    Bench(ExperimentArgs),
}

#[derive(Subcommand)]
enum KernelCmd {
    Eval {
        #[command(flatten)]
        kernel: KernelArg,
        /// Distances, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        r: Vec<f64>,
    },
    Ft {
        #[command(flatten)]
        kernel: KernelArg,
        /// Frequencies, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        t: Vec<f64>,
    },
    /// r, k(r), the recovered cdf at r and the Fourier transform at t = r.
    Table {
        #[command(flatten)]
        kernel: KernelArg,
        #[arg(long, default_value_t = 10.0)]
        max: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
}

#[derive(Args)]
struct KernelArg {
    /// e.g. `gamma:s=2,theta=1`, `poisson:mu=2;tau=0.5`.
    #[arg(long)]
    kernel: String,
    /// Spread τ; sets ρ = E[X]/τ.
    #[arg(long)]
    tau: Option<f64>,
}

impl KernelArg {
    fn spec(&self) -> Result<KernelSpec> {
        let spec: KernelSpec = self.kernel.parse()?;
        Ok(match self.tau {
            Some(tau) => KernelSpec::with_tau(spec.dist, tau)?,
            None => spec,
        })
    }
}

/// Apply `--tau` to a map kernel: ρ for Polya kernels, σ for the Fourier
/// baselines.
fn map_kernel(text: &str, tau: Option<f64>) -> Result<MapKernel> {
    let k: MapKernel = text.parse()?;
    Ok(match (k, tau) {
        (k, None) => k,
        (MapKernel::Polya(spec), Some(t)) => MapKernel::Polya(KernelSpec::with_tau(spec.dist, t)?),
        (MapKernel::Laplace { .. }, Some(t)) => MapKernel::Laplace {
            sigma: positive(t, "tau")?,
        },
        (MapKernel::Gaussian { .. }, Some(t)) => MapKernel::Gaussian {
            sigma: positive(t, "tau")?,
        },
    })
}

fn positive(v: f64, name: &str) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        bail!(polya_core::Error::InvalidParameter(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

#[derive(Args)]
struct MapArgs {
    /// rf, rf-complex or rb.
    #[arg(long, default_value = "rb")]
    map: String,
    #[arg(long, default_value = "laplace:sigma=1")]
    kernel: String,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long, default_value_t = 64)]
    copies: usize,
}

impl MapArgs {
    fn config(&self, dim: usize, seed: u64) -> Result<FeatureMapConfig> {
        let kind: MapKind = self.map.parse()?;
        let cfg = FeatureMapConfig::new(kind, map_kernel(&self.kernel, self.tau)?, self.copies, dim, seed);
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct FeaturesArgs {
    #[arg(long)]
    data: PathBuf,
    #[command(flatten)]
    map: MapArgs,
    /// Keep raw attributes instead of normalizing them to [−1, 1].
    #[arg(long)]
    no_normalize: bool,
    #[arg(long)]
    subsample: Option<usize>,
    /// Feature file; the sidecar goes to `<out>.json`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    /// LIBSVM dataset; generated uniform points when omitted.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Points generated when no dataset is given.
    #[arg(long, default_value_t = 50)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long, default_value = "regression")]
    task: String,
    /// Map kinds, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "rf-complex,rf,rb")]
    map: Vec<String>,
    /// Kernels (repeatable); every map is paired with every kernel.
    #[arg(long, default_value = "laplace:sigma=1")]
    kernel: Vec<String>,
    #[arg(long)]
    tau: Option<f64>,
    /// D values, comma separated and ascending.
    #[arg(long, value_delimiter = ',', default_value = "1,4,16")]
    copies: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0.1)]
    lambda: f64,
    #[arg(long)]
    subsample: Option<usize>,
    #[arg(long, default_value_t = 0.2)]
    test_fraction: f64,
    /// Cap on the points entering the kernel matrix.
    #[arg(long, default_value_t = 100)]
    approx_points: usize,
    /// CSV output; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ExperimentArgs {
    fn config(&self, seed: u64, learn: bool) -> Result<ExperimentConfig> {
        let mut methods = Vec::new();
        for m in &self.map {
            let kind: MapKind = m.parse()?;
            for k in &self.kernel {
                let kernel = map_kernel(k, self.tau)?;
                FeatureMapConfig::new(kind, kernel, 1, 1, 0).validate()?;
                methods.push((kind, kernel));
            }
        }
        Ok(ExperimentConfig {
            data: self.data.clone(),
            synthetic_n: self.n,
            synthetic_dim: self.dim,
            task: self.task.parse()?,
            methods,
            copies: self.copies.clone(),
            trials: self.trials,
            seed,
            lambda: self.lambda,
            subsample: self.subsample,
            test_fraction: self.test_fraction,
            approx_points: self.approx_points,
            learn,
        })
    }
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value = "regression")]
    task: String,
    #[command(flatten)]
    map: MapArgs,
    #[arg(long, default_value_t = 0.1)]
    lambda: f64,
    #[arg(long)]
    subsample: Option<usize>,
    /// Model bundle (JSON).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    data: PathBuf,
    /// One prediction per line; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CvArgs {
    #[arg(long)]
    data: PathBuf,
    /// poisson, gamma, nakagami, weibull, laplace or gaussian.
    #[arg(long, default_value = "gamma")]
    family: String,
    #[arg(long, default_value = "regression")]
    task: String,
    #[arg(long, default_value_t = 64)]
    copies: usize,
    #[arg(long, default_value_t = 4)]
    folds: usize,
    /// Shape grid; the family default when omitted.
    #[arg(long, value_delimiter = ',')]
    shapes: Vec<f64>,
    /// τ grid; powers of two from 1/8 to 8 when omitted.
    #[arg(long, value_delimiter = ',')]
    tau: Vec<f64>,
    /// λ grid; 0.01, 0.1, 1 when omitted.
    #[arg(long, value_delimiter = ',')]
    lambda: Vec<f64>,
    #[arg(long)]
    subsample: Option<usize>,
    /// Full grid as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load(path: &Path, subsample: Option<usize>, seed: u64) -> Result<polya_core::learn::Dataset> {
    let ds = read_libsvm(path)?;
    Ok(match subsample {
        Some(m) => ds.subsample(m, derive_seed(seed, &[0x5AB])),
        None => ds,
    })
}

fn kernel_cmd(cmd: KernelCmd) -> Result<()> {
    let mut out = String::new();
    match cmd {
        KernelCmd::Eval { kernel, r } => {
            let spec = kernel.spec()?;
            out.push_str("r,k\n");
            for r in r {
                out.push_str(&format!("{r},{}\n", spec.eval_kernel(r)));
            }
        }
        KernelCmd::Ft { kernel, t } => {
            let spec = kernel.spec()?;
            out.push_str("t,ft\n");
            for t in t {
                out.push_str(&format!("{t},{}\n", spec.eval_ft(t)?.value));
            }
        }
        KernelCmd::Table { kernel, max, steps } => {
            let spec = kernel.spec()?;
            if steps == 0 || !(max > 0.0 && max.is_finite()) {
                bail!(polya_core::Error::InvalidParameter("need steps ≥ 1 and max > 0".into()));
            }
            out.push_str("r,k,cdf,ft\n");
            for i in 0..=steps {
                let r = max * i as f64 / steps as f64;
                let cdf = spec.kernel_to_cdf(r);
                out.push_str(&format!(
                    "{r},{},{cdf},{}\n",
                    spec.eval_kernel(r),
                    spec.eval_ft(r)?.value
                ));
            }
        }
    }
    write_output(None, &out)
}

fn features(args: FeaturesArgs, seed: u64) -> Result<()> {
    let ds = load(&args.data, args.subsample, seed)?;
    let points = if args.no_normalize {
        ds.points.clone()
    } else {
        Normalizer::fit(&ds.points)?.apply_all(&ds.points)
    };
    let cfg = args.map.config(ds.dim, seed)?;
    let mut map = FeatureMap::build(cfg)?;
    let z = map.featurize(&points)?;
    let mut text = String::new();
    for (i, y) in ds.targets.iter().enumerate() {
        text.push_str(&y.to_string());
        for (col, v) in z.row_entries(i)? {
            text.push_str(&format!(" {}:{v}", col + 1));
        }
        text.push('\n');
    }
    std::fs::write(&args.out, text).with_context(|| format!("writing {}", args.out.display()))?;
    let meta = json!({
        "seed": seed,
        "D": cfg.copies,
        "kind": cfg.kind.name(),
        "kernel": cfg.kernel.to_string(),
        "dim": cfg.dim,
        "columns": z.feature_count(),
        "points": ds.len(),
        "normalized": !args.no_normalize,
    });
    let mut sidecar = args.out.clone().into_os_string();
    sidecar.push(".json");
    std::fs::write(&sidecar, format!("{meta}\n")).context("writing sidecar")?;
    Ok(())
}

fn experiment(args: ExperimentArgs, seed: u64, learn: bool) -> Result<()> {
    let cfg = args.config(seed, learn)?;
    let rows = run_experiment(&cfg)?;
    write_output(args.out.as_deref(), &rows_to_csv(&rows)?)
}

fn fit(args: FitArgs, seed: u64) -> Result<()> {
    let ds = load(&args.data, args.subsample, seed)?;
    let task: TaskKind = args.task.parse()?;
    let normalizer = Normalizer::fit(&ds.points)?;
    let points = normalizer.apply_all(&ds.points);
    let map = FeatureMap::build(args.map.config(ds.dim, seed)?)?;
    let mut model = Model::fit(task, map, &points, &ds.targets, args.lambda)?;
    let pred = model.predict(&points)?;
    let train_score = model.score(&pred, &ds.targets);
    let bundle = ModelBundle {
        dim: ds.dim,
        normalizer,
        model,
    };
    std::fs::write(&args.out, serde_json::to_string(&bundle)?)
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "{}",
        json!({ "points": ds.len(), "train_metric": task.metric_name(), "train_value": train_score })
    );
    Ok(())
}

fn predict(args: PredictArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.model)
        .map_err(|e| polya_core::Error::Io(format!("{}: {e}", args.model.display())))?;
    let mut bundle: ModelBundle = serde_json::from_str(&text).context("reading model bundle")?;
    let ds = read_libsvm(&args.data)?;
    let pred = bundle.predict(&ds.points)?;
    let lines: String = pred.iter().map(|p| format!("{p}\n")).collect();
    write_output(args.out.as_deref(), &lines)?;
    if args.out.is_some() {
        let name = match bundle.model {
            Model::Regression(_) => "mse",
            Model::Classification(_) => "accuracy",
        };
        println!(
            "{}",
            json!({ "points": ds.len(), "metric": name, "value": bundle.model.score(&pred, &ds.targets) })
        );
    }
    Ok(())
}

fn cv(args: CvArgs, seed: u64) -> Result<()> {
    let ds = load(&args.data, args.subsample, seed)?;
    let family: Family = args.family.parse()?;
    let task = match args.task.parse::<TaskKind>()? {
        TaskKind::Regression => Task::Regression,
        _ => Task::Classification,
    };
    let norm = Normalizer::fit(&ds.points)?;
    let train = polya_core::learn::Dataset::new(norm.apply_all(&ds.points), ds.targets.clone())?;
    let mut space = SearchSpace::new(family, task, args.copies, seed);
    space.folds = args.folds;
    if !args.shapes.is_empty() {
        space.shapes = args.shapes;
    }
    if !args.tau.is_empty() {
        space.taus = args.tau;
    }
    if !args.lambda.is_empty() {
        space.lambdas = args.lambda;
    }
    let res = cross_validate(&train, &space)?;
    let loss_name = match task {
        Task::Regression => "mse",
        Task::Classification => "error_rate",
    };
    if let Some(path) = &args.out {
        let mut csv = format!("shape,tau,lambda,{loss_name}\n");
        for (p, loss) in &res.table {
            csv.push_str(&format!("{},{},{},{loss}\n", p.shape, p.tau, p.lambda));
        }
        write_output(Some(path), &csv)?;
    }
    let shape = if res.best.shape.is_nan() {
        None
    } else {
        Some(res.best.shape)
    };
    println!(
        "{}",
        json!({ "family": args.family, "shape": shape, "tau": res.best.tau, "lambda": res.best.lambda, loss_name: res.best_loss })
    );
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let seed = cli.seed;
    match cli.command {
        Command::Kernel(cmd) => kernel_cmd(cmd),
        Command::Features(a) => features(a, seed),
        Command::ApproxError(a) => experiment(a, seed, false),
        Command::Fit(a) => fit(a, seed),
        Command::Predict(a) => predict(a),
        Command::Cv(a) => cv(a, seed),
        Command::Bench(a) => experiment(a, seed, true),
    }
}

fn error_kind(err: &anyhow::Error) -> &'static str {
    if let Some(e) = err.downcast_ref::<polya_core::Error>() {
        e.kind()
    } else if err.downcast_ref::<serde_json::Error>().is_some() {
        "parse"
    } else if err.downcast_ref::<std::io::Error>().is_some() {
        "io"
    } else {
        "error"
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let text = e.to_string();
            let msg: Vec<&str> = text
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:"))
                .filter(|l| !l.is_empty())
                .collect();
            let msg = msg.join(" ");
            eprintln!(
                "{}",
                json!({ "error": "usage", "message": msg.trim_start_matches("error: ") })
            );
            std::process::exit(2);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!(
            "{}",
            json!({ "error": error_kind(&err), "message": format!("{err:#}") })
        );
        std::process::exit(1);
    }
}
