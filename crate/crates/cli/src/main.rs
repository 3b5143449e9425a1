mod registry;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use capideal::choquet::{self, functional_properties, HarnessConfig, StepSequence};
use capideal::ideals::{self, exh_norm, HorizonSchedule, DEFAULT_HORIZON};
use capideal::rational;
use capideal::representation::{self, build_subalgebra, represent_function, RepresentationCertificate};
use capideal::riesz::{schmeidler_roundtrip, CoordinateIdeal, RoundtripConfig};
use capideal::wire::{RepresentJson, RoundtripJson, SetJson};
use capideal::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::registry::NamedFunctional;

const SCHEMAS: &str = "\
JSON formats:
  rational   \"p/q\" or \"p\", lowest terms, sign on the numerator
  set        {\"finite\":[1,5,9]}
             {\"ep\":{\"n0\":N,\"p\":P,\"res\":[..],\"exc_in\":[..],\"exc_out\":[..]}}
               beyond n0: n is in the set iff n mod p is in res;
               below n0: additionally exc_in are in, exc_out are out
             {\"rule\":{\"name\":\"powers-of-two\"|\"squares\",\"after\":N}}
             {\"window\":{\"h\":H,\"elements\":[..]}}   known only on [1, H]
  ideal      {\"kind\":\"fin\"} | {\"kind\":\"density\"} | {\"kind\":\"summable\",\"power\":0|1}
             {\"kind\":\"exh\",\"phi\":{\"type\":\"sup-density\"|\"harmonic\"}}
             {\"kind\":\"exh\",\"phi\":{\"type\":\"geometric\",\"ratio\":\"p/q\"}}
  capacity   {\"n\":N,\"values\":{\"<bitmask>\":\"p/q\",..}}   all 2^N masks required
  vector     [\"p/q\",..]
  generators [set,..] or a comma-separated list of set names

Arguments taking JSON also accept a file path or a registry name:
  sets          evens, odds, naturals, empty, multiples-of-K, interval-N, point-M,
                block, block-H, powers-of-two, squares
  ideals        fin, density, summable, exh-sup-density
  submeasures   sup-density, harmonic, geometric-P/Q
  capacities    uniform-N, min-N, max-N, dirac-N-I, random-N
  set capacities  upper-density, lower-density, ideal-indicator, exh-sup-density, principal-M
  functionals   choquet-random, min, max, dirac-J, linear, midrange-counterexample

Exit codes: 0 success, 1 property failure of a conforming functional,
2 input error, 3 non-invariance counterexample.";

#[derive(Parser)]
#[command(name = "capideal", version, about = "Exact Choquet integrals, ideals on N and capacity representations", after_long_help = SCHEMAS)]
struct Cli {
    /// Seed for random capacities and trial vectors.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Trial vectors per property or roundtrip check.
    #[arg(long, global = true, default_value_t = 256)]
    trials: usize,
    /// Comma-separated increasing horizons [default: 1,2,4,...,65536].
    #[arg(long, global = true, value_delimiter = ',')]
    schedule: Option<Vec<u64>>,
    /// Spaces per indentation level; 0 prints compact JSON.
    #[arg(long, global = true, default_value_t = 2)]
    json_indent: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Upper,
    Lower,
}

#[derive(Subcommand)]
enum Command {
    /// Upper or lower asymptotic density: {"value","exact"}.
    Density {
        set: String,
        #[arg(long, value_enum, default_value = "upper")]
        mode: Mode,
        /// Truncation horizon [default: last schedule point].
        #[arg(long)]
        horizon: Option<u64>,
    },
    /// Membership of a set in an ideal: {"verdict": "in"|"out"|"estimate_only", ..}.
    IdealMember { ideal: String, set: String },
    /// Whether A △ B lies in the ideal.
    SymmDiff { ideal: String, a: String, b: String },
    /// φ(A ∖ [1, n]) along the schedule, raw and normalized by ‖N‖_φ.
    ExhNorm { phi: String, set: String },
    /// Choquet integral of a vector against a finite capacity: "p/q".
    Choquet { capacity: String, vector: String },
    /// Whether two vectors are comonotone.
    Comonotone { x: String, y: String },
    /// Randomized check of normalization, monotonicity, unit-additivity,
    /// unit-modularity and the Lipschitz bound.
    Properties {
        functional: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Evaluate trials in parallel.
        #[arg(long)]
        parallel: bool,
    },
    /// Recover ν(A) = V(1_A) on subsets of K and compare V with the Choquet
    /// integral over K; the functional acts on the coordinates in K.
    Schmeidler {
        functional: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// 1-based coordinates of K [default: all].
        #[arg(long = "K", value_delimiter = ',')]
        k: Vec<usize>,
        /// Skip the property pre-check.
        #[arg(long)]
        skip_properties: bool,
    },
    /// Atoms of the generated subalgebra and either ρ on the non-null atoms
    /// or a counterexample pair.
    Represent {
        capacity: String,
        ideal: String,
        generators: String,
    },
    /// Compare ∫x dν with ∫x dρ for a function given by one value per atom.
    RepresentFunction {
        capacity: String,
        ideal: String,
        generators: String,
        values: String,
    },
}

enum Failure {
    Input(Error),
    Counterexample,
    Properties,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

struct Output {
    indent: usize,
    path: Option<PathBuf>,
}

impl Output {
    fn emit(&self, value: &impl Serialize) -> Result<(), Failure> {
        let mut buf = Vec::new();
        if self.indent == 0 {
            serde_json::to_writer(&mut buf, value)
        } else {
            let pad = vec![b' '; self.indent];
            let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
            value.serialize(&mut serde_json::Serializer::with_formatter(&mut buf, fmt))
        }
        .map_err(|e| Error::Parse(e.to_string()))?;
        buf.push(b'\n');
        let written = match &self.path {
            Some(p) => std::fs::write(p, &buf),
            None => std::io::stdout().lock().write_all(&buf),
        };
        written.map_err(|e| Failure::Input(Error::Parse(format!("write failed: {e}"))))
    }
}

#[derive(Serialize)]
struct Value {
    value: String,
    exact: bool,
}

#[derive(Serialize)]
struct SymmDiff<'a> {
    difference: SetJson<'a>,
    #[serde(flatten)]
    verdict: ideals::Verdict,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let schedule = match &cli.schedule {
        Some(points) => HorizonSchedule::new(points.clone())?,
        None => HorizonSchedule::default(),
    };
    let horizon = cli.schedule.as_ref().map_or(DEFAULT_HORIZON, |_| schedule.last());
    let out = Output {
        indent: cli.json_indent,
        path: cli.output.clone(),
    };
    match &cli.command {
        Command::Density {
            set,
            mode,
            horizon: h,
        } => {
            let h = h.unwrap_or(horizon);
            let set = registry::set(set, h)?;
            let schedule = if cli.schedule.is_some() {
                schedule
            } else {
                HorizonSchedule::geometric(h)?
            };
            let d = match mode {
                Mode::Upper => ideals::upper_density_with(&set, &schedule, h)?,
                Mode::Lower => ideals::lower_density_with(&set, &schedule, h)?,
            };
            out.emit(&Value {
                value: rational::format(&d.value),
                exact: d.exact,
            })
        }
        Command::IdealMember { ideal, set } => {
            let ideal = registry::ideal(ideal)?;
            let set = registry::set(set, horizon)?;
            out.emit(&ideals::member(&ideal, &set)?)
        }
        Command::SymmDiff { ideal, a, b } => {
            let ideal = registry::ideal(ideal)?;
            let a = registry::set(a, horizon)?;
            let b = registry::set(b, horizon)?;
            let difference = a.symmetric_difference(&b)?;
            let verdict = ideals::member(&ideal, &difference)?;
            out.emit(&SymmDiff {
                difference: SetJson(&difference),
                verdict,
            })
        }
        Command::ExhNorm { phi, set } => {
            let phi = registry::submeasure(phi)?;
            let set = registry::set(set, horizon)?;
            out.emit(&exh_norm(&phi, &set, &schedule)?)
        }
        Command::Choquet { capacity, vector } => {
            let nu = registry::finite_capacity(capacity, cli.seed)?;
            let x = registry::vector(vector)?;
            out.emit(&rational::format(&choquet::choquet_integral(&x, &nu)?))
        }
        Command::Comonotone { x, y } => {
            let x = registry::vector(x)?;
            let y = registry::vector(y)?;
            out.emit(&serde_json::json!({ "comonotone": choquet::comonotone(&x, &y)? }))
        }
        Command::Properties {
            functional,
            n,
            parallel,
        } => {
            let v = NamedFunctional::new(functional, *n, (0..*n).collect(), cli.seed)?;
            let config = HarnessConfig {
                trials: cli.trials,
                seed: cli.seed,
                parallel: *parallel,
            };
            let report = functional_properties(&v, *n, &config);
            out.emit(&report)?;
            if v.conforming() && !report.all_pass() {
                return Err(Failure::Properties);
            }
            Ok(())
        }
        Command::Schmeidler {
            functional,
            n,
            k,
            skip_properties,
        } => {
            let ideal = if k.is_empty() {
                CoordinateIdeal::new(*n, 0..*n)?
            } else {
                if k.contains(&0) {
                    return Err(Error::InvalidIdeal("K is 1-based".into()).into());
                }
                CoordinateIdeal::new(*n, k.iter().map(|i| i - 1))?
            };
            let v = NamedFunctional::new(functional, *n, ideal.zero_set().to_vec(), cli.seed)?;
            let config = RoundtripConfig {
                trials: cli.trials,
                seed: cli.seed,
                check_properties: !skip_properties,
                parallel: false,
            };
            let report = schmeidler_roundtrip(&v, &ideal, &config)?;
            out.emit(&RoundtripJson::new(&report))?;
            if v.conforming() && !report.pass() {
                return Err(Failure::Properties);
            }
            Ok(())
        }
        Command::Represent {
            capacity,
            ideal,
            generators,
        } => {
            let ideal = registry::ideal(ideal)?;
            let nu = registry::set_capacity(capacity, &ideal, horizon)?;
            let algebra = build_subalgebra(registry::generators(generators, horizon)?, &ideal)?;
            let cert = representation::represent(nu.as_ref(), &ideal, &algebra)?;
            out.emit(&RepresentJson::new(&algebra, &cert))?;
            match cert {
                RepresentationCertificate::Rho(_) => Ok(()),
                RepresentationCertificate::Counterexample { .. } => Err(Failure::Counterexample),
            }
        }
        Command::RepresentFunction {
            capacity,
            ideal,
            generators,
            values,
        } => {
            let ideal = registry::ideal(ideal)?;
            let nu = registry::set_capacity(capacity, &ideal, horizon)?;
            let algebra = build_subalgebra(registry::generators(generators, horizon)?, &ideal)?;
            let values = registry::vector(values)?;
            let x = StepSequence::new(&algebra, values.into_entries())?;
            if let RepresentationCertificate::Counterexample { .. } =
                representation::represent(nu.as_ref(), &ideal, &algebra)?
            {
                return Err(Failure::Counterexample);
            }
            let report = represent_function(&x, nu.as_ref(), &ideal)?;
            out.emit(&report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Properties) => ExitCode::from(1),
        Err(Failure::Counterexample) => ExitCode::from(3),
        Err(Failure::Input(e)) => {
            eprintln!("{}", serde_json::json!({ "error": e.to_string() }));
            match e {
                Error::NotRepresentable(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

