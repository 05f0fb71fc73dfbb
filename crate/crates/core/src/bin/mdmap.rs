use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mdmap::constellation::{Constellation, ConstellationKind};
use mdmap::error::Error;
use mdmap::fixtures::FIXTURES;
use mdmap::mapping::{
    check_propositions_with_limit, parse_mapping_file, serialize_mapping_file, MdMapping,
};
use mdmap::metrics::{evaluate, MetricReport, BEFORE_FEEDBACK_LIMIT};
use mdmap::optimizer::{search, SearchConfig};
use mdmap::sim::{
    ber_csv, exit_decoder, exit_demapper, genie_floor, ia_grid, round_interleaver_len, run_bicmid,
    ChannelKind, SimConfig, SIM_LABEL_LIMIT,
};

#[derive(Parser)]
#[command(
    name = "mdmap",
    version,
    about = "Multi-dimensional mappings for BICM-ID"
)]
struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a constellation as `index,re,im` CSV.
    Gen {
        #[arg(long)]
        constellation: ConstellationKind,
        #[arg(long)]
        m: u32,
        /// Scale to per-symbol energy 1/n.
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print harmonic means and cost bound of a mapping file.
    Eval {
        file: PathBuf,
        /// Override the vector length stored in the file.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value = "csv")]
        format: String,
        /// Largest label width for the exact before-feedback value.
        #[arg(long, default_value_t = BEFORE_FEEDBACK_LIMIT)]
        before_limit: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a mapping and write it with a per-restart trace.
    Optimize {
        #[arg(long)]
        constellation: ConstellationKind,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        it_num_r: usize,
        #[arg(long, default_value_t = 10)]
        it_num_l: usize,
        #[arg(long, default_value_t = 32)]
        it_num: usize,
        /// Binary switching rounds per pass (default 2^m).
        #[arg(long)]
        bsa_rounds: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        /// Trace CSV path (default: `<out>.trace.csv`).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check bijectivity, parity structure and the neighbour bound.
    Verify {
        file: PathBuf,
        #[arg(long)]
        n: Option<u32>,
        /// Largest label width checked by enumeration.
        #[arg(long, default_value_t = 20)]
        limit: u32,
    },
    /// Monte-Carlo BER of the iterative receiver.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        n: Option<u32>,
        /// Comma-separated values or `start:step:stop`.
        #[arg(long)]
        ebn0: String,
        #[arg(long, default_value_t = 7)]
        iterations: usize,
        /// Coded bits per frame; rounded to a multiple of the label width.
        #[arg(long, default_value_t = 10_000)]
        interleaver_len: usize,
        #[arg(long, default_value_t = 300)]
        min_errors: u64,
        #[arg(long, default_value_t = 2000)]
        max_frames: u64,
        #[arg(long, default_value = "rayleigh")]
        channel: ChannelKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use genie feedback instead of the iterative receiver.
        #[arg(long)]
        genie: bool,
        /// Allow label widths above the default simulation limit.
        #[arg(long)]
        allow_large: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Demapper and decoder transfer curves.
    ExitChart {
        file: PathBuf,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        ebn0: f64,
        #[arg(long, default_value_t = 11)]
        points: usize,
        /// Vectors per point for the demapper, information bits for the decoder.
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value = "rayleigh")]
        channel: ChannelKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        allow_large: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        decoder_out: Option<PathBuf>,
    },
    /// Write the published tables as mapping files.
    ExportFixtures {
        #[arg(long)]
        out: PathBuf,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Guard { .. } => 3,
        Error::Parse { .. } | Error::Io(_) => 4,
        _ => 2,
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(file: &Path, n: Option<u32>) -> Result<MdMapping, Error> {
    let text = fs::read_to_string(file)?;
    let mut parts = parse_mapping_file(&text)?;
    if let Some(n) = n {
        parts.n = n;
    }
    MdMapping::new(parts)
}

fn parse_ebn0(spec: &str) -> Result<Vec<f64>, Error> {
    let bad = || Error::Config(format!("cannot read Eb/N0 list `{spec}`"));
    if spec.contains(':') {
        let v: Vec<f64> = spec
            .split(':')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let [start, step, stop] = v[..] else {
            return Err(bad());
        };
        if step <= 0.0 || stop < start {
            return Err(bad());
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        return Ok((0..count).map(|k| start + k as f64 * step).collect());
    }
    spec.split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect()
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Gen {
            constellation,
            m,
            n,
            out,
        } => {
            let c = Constellation::new(constellation, m)?.scale_for_vector(n)?;
            write_or_print(out.as_deref(), &c.to_csv())?;
            Ok(0)
        }
        Command::Eval {
            file,
            n,
            format,
            before_limit,
            out,
        } => {
            let mapping = load(&file, n)?;
            let report = evaluate(&mapping, before_limit)?;
            let text = match format.as_str() {
                "csv" => format!("{}\n{}\n", MetricReport::CSV_HEADER, report.csv_row()),
                "json" => format!("{}\n", report.json_line()),
                other => return Err(Error::Config(format!("unknown format `{other}`"))),
            };
            if report.phi_before.is_none() {
                eprintln!(
                    "note: phi_before skipped, {} label bits exceed the limit {before_limit}",
                    mapping.width()
                );
            }
            write_or_print(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Optimize {
            constellation,
            m,
            n,
            seed,
            it_num_r,
            it_num_l,
            it_num,
            bsa_rounds,
            out,
            trace,
        } => {
            let mut config = SearchConfig::new(constellation, m, n).with_seed(seed);
            config.it_num_r = it_num_r;
            config.it_num_l = it_num_l;
            config.it_num = it_num;
            if let Some(r) = bsa_rounds {
                config.bsa_max_rounds = r;
            }
            let result = search(&config)?;
            fs::write(&out, serialize_mapping_file(result.mapping.parts()))?;
            let trace_path = trace.unwrap_or_else(|| {
                let mut p = out.clone().into_os_string();
                p.push(".trace.csv");
                PathBuf::from(p)
            });
            fs::write(&trace_path, result.trace_csv())?;
            println!("{}", MetricReport::CSV_HEADER);
            println!("{}", result.report.csv_row());
            Ok(0)
        }
        Command::Verify { file, n, limit } => {
            let text = fs::read_to_string(&file)?;
            let mut parts = parse_mapping_file(&text)?;
            if let Some(n) = n {
                parts.n = n;
            }
            let report = check_propositions_with_limit(&parts, limit);
            println!("label bits: {}", report.width);
            println!("tables consistent: {}", report.tables_consistent);
            println!("partition: {}", report.partition_ok);
            let opt = |v: Option<bool>| v.map_or("skipped".to_string(), |b| b.to_string());
            println!("bijective: {}", opt(report.bijective));
            println!("parity structure: {}", opt(report.parity_structure));
            for (name, v) in [
                ("even", report.max_neighbor_distance_even),
                ("odd", report.max_neighbor_distance_odd),
            ] {
                match v {
                    Some(d) => println!(
                        "max neighbour label distance ({name}): {d} (bound {})",
                        parts.m + 1
                    ),
                    None => println!("max neighbour label distance ({name}): skipped"),
                }
            }
            for f in &report.failures {
                println!("FAIL: {f}");
            }
            Ok(if report.passed() {
                0
            } else if report.guard_exceeded {
                3
            } else {
                2
            })
        }
        Command::Simulate {
            file,
            n,
            ebn0,
            iterations,
            interleaver_len,
            min_errors,
            max_frames,
            channel,
            seed,
            genie,
            allow_large,
            out,
        } => {
            let mapping = load(&file, n)?;
            guard_sim(&mapping, allow_large)?;
            let mut cfg = SimConfig::new(mapping.labeling()?, parse_ebn0(&ebn0)?);
            cfg.iterations = iterations;
            cfg.interleaver_len = round_interleaver_len(interleaver_len, mapping.width());
            cfg.min_bit_errors = min_errors;
            cfg.max_frames = max_frames;
            cfg.channel = channel;
            cfg.seed = seed;
            if allow_large {
                cfg.label_limit = mapping.width();
            }
            let points = if genie {
                genie_floor(&cfg)?
            } else {
                run_bicmid(&cfg)?
            };
            fs::write(&out, ber_csv(&points))?;
            for p in &points {
                println!("{}", p.csv_row());
            }
            Ok(0)
        }
        Command::ExitChart {
            file,
            n,
            ebn0,
            points,
            samples,
            channel,
            seed,
            allow_large,
            out,
            decoder_out,
        } => {
            let mapping = load(&file, n)?;
            guard_sim(&mapping, allow_large)?;
            let grid = ia_grid(points.max(2));
            let curve = exit_demapper(&mapping.labeling()?, ebn0, &grid, samples, channel, seed)?;
            fs::write(&out, curve.csv())?;
            if let Some(path) = decoder_out {
                let dec = exit_decoder(&grid, samples, seed)?;
                fs::write(path, dec.csv())?;
            }
            Ok(0)
        }
        Command::ExportFixtures { out } => {
            fs::create_dir_all(&out)?;
            for (name, text) in FIXTURES {
                let parts = parse_mapping_file(text)?;
                fs::write(
                    out.join(format!("{name}.map")),
                    serialize_mapping_file(&parts),
                )?;
            }
            Ok(0)
        }
    }
}

fn guard_sim(mapping: &MdMapping, allow_large: bool) -> Result<(), Error> {
    if !allow_large && mapping.width() > SIM_LABEL_LIMIT {
        return Err(Error::Guard {
            what: "simulation demapper",
            bits: mapping.width(),
            limit: SIM_LABEL_LIMIT,
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
