use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use lamina_core::dispersion::{DispersionLaw, WaveVector};
use lamina_core::dynamics::{bve_coefficients, demo_triad, integrate_triad_sampled, AmplitudeState};
use lamina_core::exact::Rational;
use lamina_core::report::{
    graph_to_dot, write_search_csv, write_search_json, ClassTable, Format, GraphExport, RunConfig, SearchExport,
    SpectrumSeries, TrajectoryExport,
};
use lamina_core::search::{
    brute_force_search_with, build_interaction_graph, class_based_search_with, validate_certificate, SolutionSet,
};
use lamina_core::{Error, Result};

/// Exact resonance search, class tables, triad dynamics and spectrum data.
#[derive(Parser)]
#[command(name = "lamina", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML run configuration; defaults to $LAMINA_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Dispersion law: rossby, drift, capillary, gravity, power:P/Q:BASE or float:...
    #[arg(long, global = true)]
    law: Option<String>,
    /// Number of modes (3 or 4).
    #[arg(long, global = true)]
    arity: Option<usize>,
    /// Sign pattern such as ++- or ++--.
    #[arg(long, global = true, allow_hyphen_values = true)]
    signs: Option<String>,
    /// frequency-only, frequency-and-vector or frequency-and-zonal.
    #[arg(long, global = true)]
    conservation: Option<String>,
    /// Lattice bound D.
    #[arg(long, global = true)]
    domain: Option<u32>,
    /// json, csv or dot.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Class table of the domain modes.
    Classes,
    /// Resonant tuples in the domain.
    Search {
        /// Use brute force instead of the class-based search.
        #[arg(long, conflicts_with = "verify")]
        oracle: bool,
        /// Run both searches and fail if they differ.
        #[arg(long)]
        verify: bool,
    },
    /// Integrate the amplitude equations of a spherical triad.
    Simulate {
        /// Three modes `m,n;m,n;m,n` with m1 + m2 = m3, or `demo`.
        #[arg(long, conflicts_with = "from")]
        triad: Option<String>,
        /// Search export to pick a triad from.
        #[arg(long, requires = "index")]
        from: Option<PathBuf>,
        /// Zero-based solution index in the export.
        #[arg(long)]
        index: Option<usize>,
        /// Initial amplitudes, each `re` or `re:im`.
        #[arg(long, default_value = "0.1,0.1,0.1", allow_hyphen_values = true)]
        amplitudes: String,
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        horizon: Option<f64>,
        /// Keep every N-th step.
        #[arg(long)]
        sample_every: Option<usize>,
    },
    /// Power-law spectrum over the domain wavenumbers.
    Spectrum {
        /// Exponent as `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        exponent: String,
        #[arg(long, default_value_t = 1.0)]
        constant: f64,
        /// Explicit wavenumbers instead of the domain.
        #[arg(long, value_delimiter = ',', conflicts_with = "holes_from")]
        wavenumbers: Option<Vec<f64>>,
        /// Search export whose modes are flagged as holes.
        #[arg(long)]
        holes_from: Option<PathBuf>,
    },
    /// Interaction graph of a search export.
    Graph {
        #[arg(long)]
        from: PathBuf,
    },
}

fn config(c: &Common) -> Result<RunConfig> {
    let mut cfg = RunConfig::discover(c.config.as_deref())?;
    if let Some(l) = &c.law {
        cfg.law = Some(l.clone());
    }
    if let Some(a) = c.arity {
        cfg.condition.arity = Some(a);
        if c.signs.is_none() {
            cfg.condition.signs = None;
        }
    }
    if let Some(s) = &c.signs {
        cfg.condition.signs = Some(s.clone());
        if c.arity.is_none() {
            cfg.condition.arity = None;
        }
    }
    if let Some(s) = &c.conservation {
        cfg.condition.conservation = Some(s.clone());
    }
    if let Some(d) = c.domain {
        cfg.domain = Some(d);
    }
    if let Some(f) = &c.format {
        cfg.format = Some(f.parse()?);
    }
    if let Some(o) = &c.out {
        cfg.out = Some(o.clone());
    }
    if let Some(w) = c.workers {
        cfg.workers = Some(w);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    emit_with(cfg, |w| Ok(w.write_all(text.as_bytes())?))
}

fn emit_with(cfg: &RunConfig, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let mut w: BufWriter<Box<dyn Write>> = BufWriter::new(match &cfg.out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(std::io::stdout().lock()),
    });
    f(&mut w)?;
    w.flush()?;
    Ok(())
}

fn unsupported(format: Format, what: &str) -> Error {
    Error::Config(format!("{what} cannot be written as {format}"))
}

fn read_export(path: &Path) -> Result<SearchExport> {
    let text = std::fs::read_to_string(path)?;
    SearchExport::parse(&text)
}

fn classes(cfg: &RunConfig) -> Result<()> {
    let table = ClassTable::build(&cfg.law()?, &cfg.domain()?)?;
    match cfg.format() {
        Format::Json => emit(cfg, &table.to_json()?),
        Format::Csv => emit(cfg, &table.to_csv()?),
        f => Err(unsupported(f, "a class table")),
    }
}

fn search(cfg: &RunConfig, oracle: bool, verify: bool) -> Result<()> {
    let law = cfg.law()?;
    let cond = cfg.condition(&law)?;
    let domain = cfg.domain()?;
    let opts = cfg.search_options();
    let sets = if verify {
        let fast = class_based_search_with(&law, &cond, &domain, &opts)?;
        let slow = brute_force_search_with(&law, &cond, &domain, &opts)?;
        let (only_fast, only_slow) = fast.difference(&slow);
        if !only_fast.is_empty() || !only_slow.is_empty() {
            return Err(Error::Inconsistency(format!(
                "class-based and brute-force searches differ: {} only in the former, {} only in the latter",
                only_fast.len(),
                only_slow.len()
            )));
        }
        for s in fast.iter() {
            if !validate_certificate(&law, s)? {
                return Err(Error::Inconsistency(format!(
                    "certificate of {:?} does not validate",
                    s.modes()
                )));
            }
        }
        fast
    } else if oracle || !law.is_exact() {
        brute_force_search_with(&law, &cond, &domain, &opts)?
    } else {
        class_based_search_with(&law, &cond, &domain, &opts)?
    };
    match cfg.format() {
        Format::Json => emit_with(cfg, |w| write_search_json(w, &law, &cond, &domain, &sets)),
        Format::Csv => emit_with(cfg, |w| write_search_csv(w, &law, &sets)),
        Format::Dot => emit(
            cfg,
            &graph_to_dot(&build_interaction_graph(sets.as_slice(), &domain.modes(&law))),
        ),
    }
}

fn parse_triad(s: &str) -> Result<[WaveVector; 3]> {
    if s.trim() == "demo" {
        return Ok(demo_triad());
    }
    let bad = || Error::Precondition(format!("malformed triad `{s}`; expected `m,n;m,n;m,n`"));
    let modes: Vec<WaveVector> = s
        .split(';')
        .map(|p| {
            let v: Vec<i32> = p
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            match v.as_slice() {
                [m, n] => Ok(WaveVector::new(*m, *n)),
                _ => Err(bad()),
            }
        })
        .collect::<Result<_>>()?;
    modes.try_into().map_err(|_| bad())
}

fn parse_amplitudes(s: &str) -> Result<[Complex64; 3]> {
    let bad = || {
        Error::Precondition(format!(
            "malformed amplitudes `{s}`; expected three values `re` or `re:im`"
        ))
    };
    let v: Vec<Complex64> = s
        .split(',')
        .map(|p| {
            let mut it = p.split(':').map(|x| x.trim().parse::<f64>().map_err(|_| bad()));
            let re = it.next().ok_or_else(bad)??;
            let im = it.next().transpose()?.unwrap_or(0.0);
            if it.next().is_some() {
                return Err(bad());
            }
            Ok(Complex64::new(re, im))
        })
        .collect::<Result<_>>()?;
    v.try_into().map_err(|_| bad())
}

fn triad_from_export(path: &Path, index: usize) -> Result<[WaveVector; 3]> {
    let e = read_export(path)?;
    if e.law != DispersionLaw::RossbySphere || e.condition.arity != 3 {
        return Err(Error::Precondition(format!(
            "{} does not hold spherical Rossby triads",
            path.display()
        )));
    }
    let s = e.solutions.get(index).ok_or_else(|| {
        Error::Precondition(format!(
            "index {index} is out of range; the export holds {} triads",
            e.solutions.len()
        ))
    })?;
    let modes: Vec<WaveVector> = s.modes.iter().map(|p| WaveVector::new(p[0], p[1])).collect();
    modes
        .try_into()
        .map_err(|_| Error::Precondition("selected solution is not a triad".into()))
}

struct SimulateArgs<'a> {
    triad: Option<&'a str>,
    from: Option<&'a Path>,
    index: Option<usize>,
    amplitudes: &'a str,
    step: Option<f64>,
    horizon: Option<f64>,
    sample_every: Option<usize>,
}

fn simulate(cfg: &mut RunConfig, a: SimulateArgs<'_>) -> Result<()> {
    cfg.integrator.step = a.step.or(cfg.integrator.step);
    cfg.integrator.horizon = a.horizon.or(cfg.integrator.horizon);
    cfg.integrator.sample_every = a.sample_every.or(cfg.integrator.sample_every);
    cfg.validate()?;
    let modes = match (a.triad, a.from, a.index) {
        (Some(t), _, _) => parse_triad(t)?,
        (None, Some(p), Some(i)) => triad_from_export(p, i)?,
        _ => {
            return Err(Error::Precondition(
                "select a triad with --triad or --from/--index".into(),
            ))
        }
    };
    let amps = parse_amplitudes(a.amplitudes)?;
    let triad = bve_coefficients(modes, &cfg.bve_options())?;
    let system = triad.system()?;
    let traj = integrate_triad_sampled(
        &system,
        &AmplitudeState::new(amps),
        cfg.horizon(),
        cfg.step(),
        cfg.sample_every(),
    )?;
    let export = TrajectoryExport::new(Some(&triad), &traj, cfg.step(), cfg.horizon())?;
    match cfg.format() {
        Format::Json => emit(cfg, &export.to_json()?),
        Format::Csv => emit(cfg, &export.to_csv()?),
        f => Err(unsupported(f, "a trajectory")),
    }
}

fn spectrum(cfg: &RunConfig, exponent: &str, constant: f64, ks: Option<&[f64]>, holes: Option<&Path>) -> Result<()> {
    let exponent: Rational = exponent.parse()?;
    let series = match ks {
        Some(ks) => SpectrumSeries::from_wavenumbers(ks, exponent, constant)?,
        None => {
            let export = match holes {
                Some(p) => Some(read_export(p).map_err(|e| {
                    Error::Dependency(format!(
                        "hole flags need a readable search export at {}: {e}",
                        p.display()
                    ))
                })?),
                None => None,
            };
            let law = match (&cfg.law, &export) {
                (None, Some(e)) => e.law,
                _ => cfg.law()?,
            };
            let domain = match (cfg.domain, &export) {
                (None, Some(e)) => e.domain,
                _ => cfg.domain()?,
            };
            let solutions: Option<SolutionSet> = match &export {
                Some(e) if e.law != law => {
                    return Err(Error::Dependency(format!(
                        "search export is for `{}`, not `{law}`",
                        e.law
                    )));
                }
                Some(e) => Some(e.to_solutions()?),
                None => None,
            };
            SpectrumSeries::over_domain(&law, &domain, exponent, constant, solutions.as_ref())?
        }
    };
    match cfg.format() {
        Format::Json => emit(cfg, &series.to_json()?),
        Format::Csv => emit(cfg, &series.to_csv()?),
        f => Err(unsupported(f, "a spectrum")),
    }
}

fn graph(cfg: &RunConfig, from: &Path) -> Result<()> {
    let e = read_export(from)?;
    let sets = e.to_solutions()?;
    let g = build_interaction_graph(sets.as_slice(), &e.domain.modes(&e.law));
    match cfg.format.unwrap_or(Format::Dot) {
        Format::Dot => emit(cfg, &graph_to_dot(&g)),
        Format::Json => emit(cfg, &GraphExport::new(&g).to_json()?),
        f => Err(unsupported(f, "a graph")),
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = config(&cli.common)?;
    match cli.command {
        Command::Classes => classes(&cfg),
        Command::Search { oracle, verify } => search(&cfg, oracle, verify),
        Command::Simulate {
            triad,
            from,
            index,
            amplitudes,
            step,
            horizon,
            sample_every,
        } => simulate(
            &mut cfg,
            SimulateArgs {
                triad: triad.as_deref(),
                from: from.as_deref(),
                index,
                amplitudes: &amplitudes,
                step,
                horizon,
                sample_every,
            },
        ),
        Command::Spectrum {
            exponent,
            constant,
            wavenumbers,
            holes_from,
        } => spectrum(&cfg, &exponent, constant, wavenumbers.as_deref(), holes_from.as_deref()),
        Command::Graph { from } => graph(&cfg, &from),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lamina: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
