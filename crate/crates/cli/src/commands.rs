use std::f64::consts::FRAC_PI_4;
use std::fs;
use std::path::Path;

use daqc_core::daqc::{
    build_bdaqc_schedule, build_sdaqc_schedule, solve_times, BangedStep, Mode,
};
use daqc_core::nn2ata::{
    cover_report, hp_permutation, nn_line, paths_for_reading, verify_nn_simulates_ata,
    HamiltonianPath, HpReading, MAX_VERIFY_SIZE,
};
use daqc_core::noise::{beta_grid, sweep_beta as run_beta, sweep_error_scale as run_scale, NoiseConfig};
use daqc_core::qft::build_qft_plan;
use daqc_core::report::{dump_paths, parse_coupling_file, read_records, write_records};
use daqc_core::sim::IsingSpec;

use crate::args::{CompileArgs, Nn2ataArgs, PlotArgs, RunArgs, SweepBetaArgs, SweepScaleArgs};
use crate::manifest::{manifest_path, RunManifest};
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

fn resolve_config(run: &RunArgs, ideal: bool) -> Result<NoiseConfig> {
    let mut cfg = match &run.noise_config {
        Some(path) => NoiseConfig::from_json(&read_file(path)?)?,
        None if ideal => NoiseConfig::ideal(),
        None => NoiseConfig::default(),
    };
    if let Some(seed) = run.seed {
        cfg.seed = seed;
    }
    if let Some(dt) = run.delta_t {
        cfg.delta_t = dt;
    }
    cfg.validate()?;
    if run.shots == 0 {
        return Err(CliError::Input("--shots must be at least 1".into()));
    }
    if run.qubits.is_empty() || run.protocols.is_empty() {
        return Err(CliError::Input("--qubits and --protocols must not be empty".into()));
    }
    Ok(cfg)
}

fn command_line() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

fn emit(run: &RunArgs, records: &[daqc_core::noise::ExperimentRecord], manifest: &RunManifest) -> Result<()> {
    let mut csv = Vec::new();
    write_records(&mut csv, records)?;
    write_file(&run.out, &csv)?;
    let json = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    write_file(&manifest_path(&run.out), json.as_bytes())?;
    eprintln!("wrote {} rows to {}", records.len(), run.out.display());
    Ok(())
}

pub fn sweep_beta(args: &SweepBetaArgs) -> Result<()> {
    let cfg = resolve_config(&args.run, args.ideal)?;
    if args.beta_points == 0 {
        return Err(CliError::Input("--beta-points must be at least 1".into()));
    }
    let betas = beta_grid(args.beta_points);
    let records = run_beta(&args.run.protocols, &args.run.qubits, &betas, args.run.shots, &cfg)?;
    let mut manifest = RunManifest::new(&command_line(), &cfg);
    manifest.protocols = args.run.protocols.clone();
    manifest.qubits = args.run.qubits.clone();
    manifest.shots = args.run.shots;
    manifest.betas = betas;
    manifest.error_scales = vec![cfg.error_scale];
    emit(&args.run, &records, &manifest)
}

pub fn sweep_error_scale(args: &SweepScaleArgs) -> Result<()> {
    let cfg = resolve_config(&args.run, false)?;
    if args.scales.is_empty() {
        return Err(CliError::Input("--scales must not be empty".into()));
    }
    let records = run_scale(&args.run.protocols, &args.run.qubits, &args.scales, args.run.shots, &cfg)?;
    let mut manifest = RunManifest::new(&command_line(), &cfg);
    manifest.protocols = args.run.protocols.clone();
    manifest.qubits = args.run.qubits.clone();
    manifest.shots = args.run.shots;
    manifest.betas = vec![FRAC_PI_4];
    manifest.error_scales = args.scales.clone();
    emit(&args.run, &records, &manifest)
}

fn compile_target(args: &CompileArgs) -> Result<IsingSpec> {
    let spec = match args.target.strip_prefix("qft-block:") {
        Some(m) => {
            let m: usize = m
                .parse()
                .map_err(|_| CliError::Input(format!("bad block index '{m}'")))?;
            let plan = build_qft_plan(args.qubits)?;
            plan.blocks()
                .iter()
                .find(|b| b.index == m)
                .map(|b| b.couplings.clone())
                .ok_or_else(|| {
                    CliError::Input(format!(
                        "qft-block:{m} does not exist for {} qubits (blocks 1..={})",
                        args.qubits,
                        args.qubits.saturating_sub(1)
                    ))
                })?
        }
        None => parse_coupling_file(&read_file(Path::new(&args.target))?, args.qubits)?,
    };
    Ok(spec
        .with_resource_coupling(args.coupling)?
        .with_target_time(args.target_time)?)
}

pub fn compile(args: &CompileArgs) -> Result<()> {
    let target = compile_target(args)?;
    let solution = solve_times(&target)?;
    let mode: Mode = args.mode.into();
    let schedule = match mode {
        Mode::Stepwise => build_sdaqc_schedule(&solution)?,
        Mode::Banged => build_bdaqc_schedule(&solution, args.delta_t)?,
    };
    println!("# mode {mode}, {} qubits, g = {}, t_F = {}", args.qubits, args.coupling, args.target_time);
    println!("# alpha n m duration");
    print!("{}", schedule.dump());
    if mode == Mode::Banged {
        println!("# banged timeline, delta_t = {}", args.delta_t);
        for step in schedule.banged_steps() {
            match step {
                BangedStep::Pulse { qubits } => println!("#   pulse X on {qubits:?}"),
                BangedStep::Segment { alpha, duration } => {
                    println!("#   segment {alpha} {duration:.12}")
                }
            }
        }
    }
    println!("# residual {:.3e}", solution.residual);
    Ok(())
}

fn print_paths(paths: &[HamiltonianPath]) {
    print!("{}", dump_paths(paths.iter().map(|p| p.vertices())));
}

pub fn nn2ata(args: &Nn2ataArgs) -> Result<()> {
    let l = args.size;
    // validates L >= 2
    hp_permutation(l, 0)?;
    let mut chosen = None;
    for reading in HpReading::ALL {
        match paths_for_reading(l, reading)? {
            Some(paths) => {
                let report = cover_report(l, &paths);
                println!("# reading [{reading}]: {} paths, exact cover: {}", paths.len(), report.is_exact());
                if chosen.is_none() {
                    chosen = Some((reading, paths, report));
                }
                if chosen.as_ref().is_some_and(|c| c.2.is_exact()) {
                    break;
                }
            }
            None => println!("# reading [{reading}]: not a permutation"),
        }
    }
    let Some((reading, paths, report)) = chosen else {
        return Err(CliError::Runtime(format!("no reading yields permutations for L={l}")));
    };
    println!("# chosen reading [{reading}]");
    print_paths(&paths);
    if !report.is_exact() {
        println!("# cover FAIL: missing {:?}, duplicated {:?}", report.missing, report.duplicated);
        return Err(CliError::Runtime(format!("K_{l} is not covered exactly by Hamiltonian paths")));
    }
    println!("# cover PASS");
    if l > MAX_VERIFY_SIZE {
        println!("# dense verification skipped (L > {MAX_VERIFY_SIZE})");
        return Ok(());
    }
    let v = verify_nn_simulates_ata(l, &nn_line(l, 1.0)?, args.time)?;
    println!(
        "# dense verification {}: distance {:.3e} at t = {}",
        if v.passed() { "PASS" } else { "FAIL" },
        v.distance,
        args.time
    );
    if !v.passed() {
        return Err(CliError::Runtime("dense verification failed".into()));
    }
    Ok(())
}

pub fn plot(args: &PlotArgs) -> Result<()> {
    let text = read_file(&args.input)?;
    let records = read_records(text.as_bytes())?;
    let svg = crate::plot::render(&records, args.x).map_err(CliError::Input)?;
    write_file(&args.out, svg.as_bytes())
}
