//! Command-line front end: one subcommand per computation, deterministic
//! CSV or JSON tables on stdout or `--out`.
//!
//! Exit codes: 0 success, 1 resource-guard refusal, 2 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use symwalk::cycletypes::{e_bound_cycles, e_bound_ibis, e_bound_imin, orbit_growth};
use symwalk::degrees;
use symwalk::mixing;
use symwalk::partitions;
use symwalk::simulate::{self, GlueSpec, SimRng};
use symwalk::slicing::{self, SliceSpec};
use symwalk::zeta::{self, Subset, ZetaQuery};
use symwalk::{CycleType, Error, Limits, Partition};

#[derive(Parser)]
#[command(
    name = "symwalk",
    version,
    about = "Symmetric-group combinatorics and class-walk mixing estimates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap the worker-thread count (sampling output is identical either way).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for all Monte Carlo subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the partitions of n in reverse-lexicographic order.
    Partitions {
        #[arg(long)]
        n: u32,
    },
    /// Dimension of an irreducible representation.
    Dim {
        #[arg(long)]
        lambda: String,
    },
    /// Virtual degree, dimension and exponent gap of a diagram.
    Vdeg {
        #[arg(long)]
        lambda: String,
    },
    /// Augmented dimension of a diagram.
    Augdim {
        #[arg(long)]
        lambda: String,
    },
    /// Sliced hook products and the slicing ratio of a diagram.
    Slice {
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = SliceKind::Abdelta)]
        slicing: SliceKind,
        /// Restrict the product to a subdiagram (defaults to the whole diagram).
        #[arg(long)]
        sub: Option<String>,
    },
    /// Character values ch^lambda(class), one row per diagram.
    Char {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        class: String,
        /// Evaluate a single diagram instead of the full column.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Orbit growth sequence data and bounds for a cycle type.
    Egrowth {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        class: String,
    },
    /// Witten zeta sum over a family of representations.
    Zeta {
        #[arg(long)]
        n: u32,
        /// starstar, lambda:K or lambdasym:K.
        #[arg(long, default_value = "starstar")]
        subset: String,
        #[arg(long)]
        s: f64,
        /// Truncation depth for the large-n path.
        #[arg(long)]
        truncate: Option<u32>,
    },
    /// Diaconis-Shahshahani L2 upper bound for a product of classes.
    DsBound {
        #[arg(long)]
        n: Option<u32>,
        /// Repeat to multiply different classes in order.
        #[arg(long, required = true)]
        class: Vec<String>,
        /// Repeat a single class t times.
        #[arg(long)]
        t: Option<u32>,
    },
    /// Exact total-variation distance of the t-step walk to its coset.
    ExactTv {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        class: String,
        #[arg(long)]
        t: u32,
    },
    /// Cutoff time ln n / ln(n/f) of a class walk.
    Cutoff {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        class: String,
    },
    /// Histogram of fixed points of the t-step walk (Monte Carlo).
    Walk {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 2)]
        t: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Splitting statistic of the two-step walk at the event f1 >= m.
    Split {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Random polygon gluings: vertex-count law against the coset baseline.
    Maps {
        /// Face degrees, e.g. 3^20 for twenty triangles.
        #[arg(long)]
        faces: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Grid sweep driven by a key = value config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SliceKind {
    Lambda1,
    Lambdaup1,
    Abdelta,
}

impl SliceKind {
    fn spec(self) -> SliceSpec {
        match self {
            SliceKind::Lambda1 => SliceSpec::Lambda1,
            SliceKind::Lambdaup1 => SliceSpec::LambdaUp1,
            SliceKind::Abdelta => SliceSpec::AbDelta,
        }
    }

    fn label(self) -> &'static str {
        match self {
            SliceKind::Lambda1 => "lambda1",
            SliceKind::Lambdaup1 => "lambdaup1",
            SliceKind::Abdelta => "abdelta",
        }
    }
}

/// A rendered table: column names, stringly rows, echoed inputs.
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    inputs: Vec<(String, String)>,
}

impl Table {
    fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
            inputs: Vec::new(),
        }
    }

    fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.push((key.to_string(), value.to_string()));
    }

    fn row(&mut self, values: Vec<String>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push(values);
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = String::new();
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let inputs: serde_json::Map<String, serde_json::Value> = self
                    .inputs
                    .iter()
                    .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                    .collect();
                let rows: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        self.columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| (c.to_string(), serde_json::Value::String(v.clone())))
                            .collect::<serde_json::Map<_, _>>()
                            .into()
                    })
                    .collect();
                let doc = serde_json::json!({
                    "schema_version": 1,
                    "inputs": inputs,
                    "rows": rows,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("static json");
                s.push('\n');
                s
            }
        }
    }
}

/// Reals print with 12 significant digits; integers print exactly.
fn real(x: f64) -> String {
    format!("{x:.11e}")
}

fn parse_partition(text: &str) -> Result<Partition, Error> {
    Partition::parse(text)
}

fn parse_class(text: &str, n: Option<u32>) -> Result<CycleType, Error> {
    CycleType::parse(text, n)
}

fn run(cli: &Cli) -> Result<Table, Error> {
    let limits = Limits::from_env();
    match &cli.command {
        Command::Partitions { n } => {
            let mut t = Table::new(vec!["index", "lambda"]);
            t.input("n", n);
            for (i, lam) in partitions::enumerate(*n).enumerate() {
                t.row(vec![i.to_string(), lam.compact()]);
            }
            Ok(t)
        }
        Command::Dim { lambda } => {
            let lam = parse_partition(lambda)?;
            let mut t = Table::new(vec!["lambda", "n", "dim", "ln_dim"]);
            t.input("lambda", lam.compact());
            let d = degrees::dimension(&lam);
            t.row(vec![
                lam.compact(),
                lam.size().to_string(),
                d.to_string(),
                real(degrees::log_dimension(&lam).ln()),
            ]);
            Ok(t)
        }
        Command::Vdeg { lambda } => {
            let lam = parse_partition(lambda)?;
            let mut t = Table::new(vec!["lambda", "n", "dim", "vdeg", "augdim", "exponent_gap"]);
            t.input("lambda", lam.compact());
            let rep = degrees::degree_report(&lam);
            t.row(vec![
                lam.compact(),
                lam.size().to_string(),
                rep.dimension.to_string(),
                rep.virtual_degree.to_string(),
                rep.augmented_dimension.to_string(),
                rep.exponent_gap
                    .map(real)
                    .unwrap_or_else(|| "undefined".into()),
            ]);
            Ok(t)
        }
        Command::Augdim { lambda } => {
            let lam = parse_partition(lambda)?;
            let mut t = Table::new(vec!["lambda", "n", "augdim"]);
            t.input("lambda", lam.compact());
            t.row(vec![
                lam.compact(),
                lam.size().to_string(),
                degrees::augmented_dimension(&lam).to_string(),
            ]);
            Ok(t)
        }
        Command::Slice {
            lambda,
            slicing,
            sub,
        } => {
            let lam = parse_partition(lambda)?;
            let spec = slicing.spec();
            let sub_diagram = match sub {
                Some(text) => parse_partition(text)?,
                None => lam.clone(),
            };
            let mut t = Table::new(vec![
                "lambda",
                "slicing",
                "sub",
                "blocks",
                "sliced_product",
                "full_product",
                "ratio",
            ]);
            t.input("lambda", lam.compact());
            t.input("slicing", slicing.label());
            t.input("sub", sub_diagram.compact());
            let blocks = spec.resolve(&lam)?;
            let sliced = slicing::sliced_hook_product(&lam, &spec, sub_diagram.cells())?;
            let full = lam.hook_product(sub_diagram.cells())?;
            let ratio = slicing::hook_ratio(&lam, &sub_diagram, &spec)?;
            t.row(vec![
                lam.compact(),
                slicing.label().to_string(),
                sub_diagram.compact(),
                blocks.len().to_string(),
                sliced.to_string(),
                full.to_string(),
                real(ratio.log.value()),
            ]);
            Ok(t)
        }
        Command::Char { n, class, lambda } => {
            let rho = parse_class(class, *n)?;
            let mut t = Table::new(vec!["lambda", "class", "ch", "chi"]);
            t.input("class", rho.compact());
            t.input("n", rho.n());
            match lambda {
                Some(text) => {
                    let lam = parse_partition(text)?;
                    let ch = symwalk::characters::character(&lam, &rho)?;
                    let d = degrees::dimension(&lam);
                    let chi = ch as f64 / d.to_f64().unwrap_or(f64::INFINITY);
                    t.row(vec![
                        lam.compact(),
                        rho.compact(),
                        ch.to_string(),
                        real(chi),
                    ]);
                }
                None => {
                    let col = symwalk::characters::character_column(rho.n(), &rho, &limits)?;
                    for (lam, &ch) in &col.values {
                        let d = degrees::dimension(lam);
                        let chi = ch as f64 / d.to_f64().unwrap_or(f64::INFINITY);
                        t.row(vec![
                            lam.compact(),
                            rho.compact(),
                            ch.to_string(),
                            real(chi),
                        ]);
                    }
                }
            }
            Ok(t)
        }
        Command::Egrowth { n, class } => {
            let c = parse_class(class, *n)?;
            let growth = orbit_growth(&c)?;
            let mut t = Table::new(vec![
                "class",
                "n",
                "cyc",
                "sign",
                "imin",
                "ibis",
                "f",
                "E",
                "B",
                "bound_cycles",
                "bound_imin",
                "bound_ibis",
                "class_size",
            ]);
            t.input("class", c.compact());
            t.input("n", c.n());
            let ibis_bound = if c.fixed_points() >= 1 && !c.is_identity() {
                real(e_bound_ibis(&c)?)
            } else {
                "undefined".into()
            };
            t.row(vec![
                c.compact(),
                c.n().to_string(),
                c.cycle_count().to_string(),
                c.sign().to_string(),
                growth.i_min.to_string(),
                growth
                    .i_bis
                    .map(|v| v.to_string())
                    .unwrap_or_else(|| "undefined".into()),
                growth.f_cap.to_string(),
                real(growth.exponent),
                real(growth.b_exponent),
                real(e_bound_cycles(&c)),
                real(e_bound_imin(&c)),
                ibis_bound,
                c.class_size().to_string(),
            ]);
            Ok(t)
        }
        Command::Zeta {
            n,
            subset,
            s,
            truncate,
        } => {
            let subset = Subset::parse(subset)?;
            let mut t = Table::new(vec!["n", "subset", "s", "zeta", "tail_estimate", "method"]);
            t.input("n", n);
            t.input("subset", subset.label());
            t.input("s", real(*s));
            let use_full = truncate.is_none() && *n <= limits.zeta_enum_max_n;
            if use_full {
                let z = zeta::zeta(ZetaQuery {
                    n: *n,
                    subset,
                    s: *s,
                });
                t.row(vec![
                    n.to_string(),
                    subset.label(),
                    real(*s),
                    real(z),
                    real(0.0),
                    "full".into(),
                ]);
            } else {
                let cut = truncate.unwrap_or(zeta::DEFAULT_ZETA_CUT);
                let z = zeta::zeta_truncated(*n, subset, *s, cut)?;
                t.row(vec![
                    n.to_string(),
                    subset.label(),
                    real(*s),
                    real(z.value),
                    real(z.tail_estimate),
                    format!("truncated:{}", z.cut),
                ]);
            }
            Ok(t)
        }
        Command::DsBound { n, class, t } => {
            let classes: Vec<CycleType> = class
                .iter()
                .map(|c| parse_class(c, *n))
                .collect::<Result<_, _>>()?;
            let family = if let (Some(t), 1) = (t, classes.len()) {
                mixing::ClassFamily::repeated(&classes[0], *t)?
            } else {
                mixing::ClassFamily::new(classes)?
            };
            let mut table = Table::new(vec!["n", "classes", "t", "coset", "ds_bound", "exact_tv"]);
            let classes_label = family
                .classes
                .iter()
                .map(|c| c.compact())
                .collect::<Vec<_>>()
                .join("+");
            table.input("classes", &classes_label);
            table.input("t", family.steps());
            let rep = mixing::mixing_report(&family, &limits)?;
            let tv = rep
                .exact_tv
                .map(|v| real(symwalk::numeric::ratio_to_f64(&v)))
                .unwrap_or_else(|| "skipped".into());
            table.row(vec![
                family.n.to_string(),
                classes_label,
                rep.steps.to_string(),
                rep.target_coset.to_string(),
                real(rep.ds_bound),
                tv,
            ]);
            Ok(table)
        }
        Command::ExactTv { n, class, t } => {
            let c = parse_class(class, *n)?;
            let tv = mixing::exact_tv(&c, *t, &limits)?;
            let mut table = Table::new(vec!["n", "class", "t", "coset", "tv_exact", "tv"]);
            table.input("class", c.compact());
            table.input("t", t);
            table.row(vec![
                c.n().to_string(),
                c.compact(),
                t.to_string(),
                mixing::coset_after_steps(&c, *t).to_string(),
                tv.to_string(),
                real(symwalk::numeric::ratio_to_f64(&tv)),
            ]);
            Ok(table)
        }
        Command::Cutoff { n, class } => {
            let c = parse_class(class, *n)?;
            let mut t = Table::new(vec!["n", "class", "f", "cutoff_time"]);
            t.input("class", c.compact());
            t.row(vec![
                c.n().to_string(),
                c.compact(),
                c.f_cap().to_string(),
                real(mixing::cutoff_time(&c)?),
            ]);
            Ok(t)
        }
        Command::Walk {
            n,
            class,
            t,
            samples,
        } => {
            let c = parse_class(class, *n)?;
            if *t < 1 {
                return Err(Error::Domain("walks need t >= 1".into()));
            }
            let hist = simulate::walk_fixed_points(&c, *t, *samples, &SimRng::new(cli.seed));
            let mut table = Table::new(vec!["fixed_points", "count", "frequency", "seed"]);
            table.input("class", c.compact());
            table.input("n", c.n());
            table.input("t", t);
            table.input("samples", samples);
            table.input("seed", cli.seed);
            for (v, count) in hist.iter() {
                table.row(vec![
                    v.to_string(),
                    count.to_string(),
                    real(count as f64 / *samples as f64),
                    cli.seed.to_string(),
                ]);
            }
            Ok(table)
        }
        Command::Split {
            n,
            class,
            m,
            samples,
        } => {
            let c = parse_class(class, *n)?;
            let rep = simulate::splitting_statistic(&c, *m, *samples, &SimRng::new(cli.seed))?;
            let mut table = Table::new(vec![
                "class",
                "n",
                "m",
                "samples",
                "walk_tail",
                "coset_tail",
                "statistic",
                "alpha",
                "poisson_floor",
                "seed",
            ]);
            table.input("class", c.compact());
            table.input("m", m);
            table.input("samples", samples);
            table.input("seed", cli.seed);
            table.row(vec![
                c.compact(),
                c.n().to_string(),
                m.to_string(),
                samples.to_string(),
                real(rep.walk_tail),
                real(rep.coset_tail),
                real(rep.statistic),
                real(rep.alpha),
                real(rep.poisson_floor),
                cli.seed.to_string(),
            ]);
            Ok(table)
        }
        Command::Maps { faces, samples } => {
            let spec = GlueSpec::parse(faces)?;
            let report = simulate::vertex_count_comparison(&spec, *samples, &SimRng::new(cli.seed));
            let mut table = Table::new(vec![
                "vertices",
                "count",
                "frequency",
                "baseline",
                "tv_estimate",
                "euler_violations",
                "mean_genus",
                "baseline_coset",
                "seed",
            ]);
            table.input("faces", spec.compact());
            table.input("edges", spec.edges());
            table.input("samples", samples);
            table.input("seed", cli.seed);
            table.input("regime_ok", report.regime_ok);
            let mut keys: Vec<u32> = report.histogram.iter().map(|(v, _)| v).collect();
            keys.extend(report.baseline.keys().copied());
            keys.sort_unstable();
            keys.dedup();
            for v in keys {
                table.row(vec![
                    v.to_string(),
                    report.histogram.count(v).to_string(),
                    real(report.histogram.frequency(v)),
                    real(report.baseline.get(&v).copied().unwrap_or(0.0)),
                    real(report.tv_estimate),
                    report.euler_violations.to_string(),
                    real(report.mean_genus),
                    report.baseline_parity.to_string(),
                    cli.seed.to_string(),
                ]);
            }
            Ok(table)
        }
        Command::Sweep { config } => run_sweep(config, &limits),
    }
}

/// Config grammar: `key = value` lines, `#` comments. Keys: `subcommand`
/// (only `zeta`), `n` (range `4..20` or list), `alpha` (list), `k` (int),
/// unknown keys are usage errors.
fn run_sweep(path: &PathBuf, limits: &Limits) -> Result<Table, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let mut subcommand = None;
    let mut n_grid: Vec<u32> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut k = 1u32;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "subcommand" => subcommand = Some(value.to_string()),
            "n" => n_grid = parse_grid(value)?,
            "alpha" => {
                alphas = value
                    .split(',')
                    .map(|v| {
                        v.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::Parse(format!("bad alpha `{v}`")))
                    })
                    .collect::<Result<_, _>>()?
            }
            "k" => {
                k = value
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad k `{value}`")))?
            }
            other => return Err(Error::Parse(format!("unknown sweep key `{other}`"))),
        }
    }
    match subcommand.as_deref() {
        Some("zeta") => {}
        other => {
            return Err(Error::Parse(format!(
                "sweep supports `subcommand = zeta`, got {other:?}"
            )))
        }
    }
    if n_grid.is_empty() || alphas.is_empty() {
        return Err(Error::Parse("sweep needs `n` and `alpha` grids".into()));
    }
    let rows = zeta::threshold_scan(&n_grid, &alphas, k, limits)?;
    let mut table = Table::new(vec![
        "n",
        "alpha",
        "s",
        "zeta",
        "tail_estimate",
        "reference",
    ]);
    table.input("subcommand", "zeta");
    table.input("k", k);
    for r in rows {
        table.row(vec![
            r.n.to_string(),
            real(r.alpha),
            real(r.s),
            real(r.zeta),
            real(r.tail_estimate),
            real(r.reference),
        ]);
    }
    Ok(table)
}

/// `4..20` (inclusive), or a comma list, or a single integer.
fn parse_grid(value: &str) -> Result<Vec<u32>, Error> {
    if let Some((a, b)) = value.split_once("..") {
        let a: u32 = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad range start `{a}`")))?;
        let b: u32 = b
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad range end `{b}`")))?;
        if a > b {
            return Err(Error::Parse(format!("empty range `{value}`")));
        }
        Ok((a..=b).collect())
    } else {
        value
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad grid entry `{v}`")))
            })
            .collect()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // ignore failures from double-initialization in tests
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli) {
        Ok(table) => {
            let rendered = table.render(cli.format);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    if stdout.write_all(rendered.as_bytes()).is_err() {
                        return ExitCode::from(1);
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceGuard { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
