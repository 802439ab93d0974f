use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use seqdelib::analytics::write_distortion_csv;
use seqdelib::deliberation::write_trace_csv;
use seqdelib::experiments::{
    find_experiment, registry, report_from_runs, simulate_runs_on, ExperimentParams,
};
use seqdelib::spaces::MEDIAN_CHECK_LIMIT;
use seqdelib::{
    stationary_bit_probability, stationary_distortion, validate_median_graph,
    worst_case_distortion, BargainScheme, DecisionSpace, Error, Mechanism, PopulationSpec,
    SimulationConfig, SpaceSpec,
};

use crate::args::{
    ExperimentArgs, Format, SchemeArg, SimulateArgs, SpaceArg, TheoryArgs, ValidateArgs,
};

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn space_spec(args: &SimulateArgs) -> Result<SpaceSpec> {
    Ok(match &args.space {
        SpaceArg::Line => SpaceSpec::Line {
            alternatives: args.alternatives.unwrap_or(50),
        },
        SpaceArg::Hypercube => {
            let n = args.alternatives.unwrap_or(256);
            if !n.is_power_of_two() || n < 2 {
                return Err(Error::InvalidInput(format!(
                    "hypercube needs a power-of-two alternative count, got {n}"
                ))
                .into());
            }
            SpaceSpec::Hypercube {
                dim: n.trailing_zeros(),
            }
        }
        SpaceArg::Star => {
            let n = args.alternatives.unwrap_or(51);
            if n < 2 {
                return Err(
                    Error::InvalidInput("star needs at least two alternatives".into()).into(),
                );
            }
            SpaceSpec::Star { leaves: n - 1 }
        }
        SpaceArg::Graph(path) => {
            if args.alternatives.is_some() {
                return Err(Error::InvalidInput(
                    "--alternatives is implied by the graph file".into(),
                )
                .into());
            }
            SpaceSpec::Graph { path: path.clone() }
        }
    })
}

pub fn config_from_args(args: &SimulateArgs) -> Result<SimulationConfig> {
    let mechanism = match args.scheme {
        SchemeArg::Nash => Mechanism::Deliberation(BargainScheme::Nash),
        SchemeArg::Selfish => Mechanism::Deliberation(BargainScheme::Selfish),
        SchemeArg::Unselfish => Mechanism::Deliberation(BargainScheme::Unselfish {
            shift_scale: args.shift_scale,
        }),
        SchemeArg::Dictator => Mechanism::Dictator,
        SchemeArg::Median3 => Mechanism::Median3,
    };
    if !(args.shift_scale > 0.0 && args.shift_scale.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "--shift-scale must be positive, got {}",
            args.shift_scale
        ))
        .into());
    }
    Ok(SimulationConfig {
        space: space_spec(args)?,
        population: PopulationSpec::with_agents(args.agents),
        mechanism,
        steps: args.steps,
        runs: args.runs,
        master_seed: args.seed,
        epsilon: args.epsilon,
    })
}

pub fn simulate(args: &SimulateArgs) -> Result<()> {
    let config = config_from_args(args)?;
    config.validate()?;
    let space = config.space.build()?;
    let runs = simulate_runs_on(&config, &space)?;
    let report = report_from_runs(&config, &runs)?;

    if let Some(path) = &args.out {
        let mut out = create(path)?;
        match args.format {
            Format::Csv => {
                let matrix: Vec<Vec<f64>> = runs.iter().map(|r| r.distortions.clone()).collect();
                write_distortion_csv(&matrix, &mut out)?;
            }
            Format::Json => writeln!(out, "{}", report.to_json()?)?,
        }
        out.flush()?;
    }
    if let Some(path) = &args.steps_out {
        let mut out = create(path)?;
        report.write_steps_csv(&mut out)?;
        out.flush()?;
    }
    if let Some(path) = &args.trace_out {
        let mut out = create(path)?;
        let traces = runs
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.trace.as_ref().map(|t| (i, t)));
        write_trace_csv(&space, traces, &mut out)?;
        out.flush()?;
    }

    println!("scheme: {}", config.mechanism.name());
    println!(
        "runs: {}  steps: {}  seed: {}",
        config.runs, config.steps, config.master_seed
    );
    println!("mean distortion: {:.6}", report.mean);
    println!("q1: {:.6}  q3: {:.6}", report.q1, report.q3);
    println!("second moment: {:.6}", report.second_moment);
    if report.infinite_count > 0 {
        println!("infinite runs: {}", report.infinite_count);
    }
    if let Some(m) = report.initial_population_mean {
        println!("mean vs initial population: {m:.6}");
    }
    Ok(())
}

pub fn theory(args: &TheoryArgs) -> Result<()> {
    if let Some(f) = args.f {
        println!("f: {f}");
        println!(
            "stationary bit probability: {:.6}",
            stationary_bit_probability(f)?
        );
        println!("distortion: {:.6}", stationary_distortion(f)?);
    }
    let (f_star, worst) = worst_case_distortion();
    println!("worst case: f* = {f_star:.8}  distortion = {worst:.8}");
    if let Some(path) = &args.out {
        if args.points < 2 {
            return Err(Error::InvalidInput("--points must be at least 2".into()).into());
        }
        let mut out = create(path)?;
        writeln!(out, "f,pi1,distortion")?;
        // endpoints are excluded: the optimum costs nothing there
        for i in 1..args.points {
            let f = i as f64 / args.points as f64;
            writeln!(
                out,
                "{f},{},{}",
                stationary_bit_probability(f)?,
                stationary_distortion(f)?
            )?;
        }
        out.flush()?;
    }
    Ok(())
}

pub fn experiment(args: &ExperimentArgs) -> Result<()> {
    if args.name == "list" {
        for e in registry() {
            println!("{:<22} {}", e.name, e.description);
        }
        return Ok(());
    }
    let Some(info) = find_experiment(&args.name) else {
        let names: Vec<_> = registry().iter().map(|e| e.name).collect();
        return Err(Error::InvalidInput(format!(
            "unknown experiment `{}`; known: {}",
            args.name,
            names.join(", ")
        ))
        .into());
    };
    let params = ExperimentParams {
        runs: args.runs,
        seed: args.seed,
        epsilon: args.epsilon,
        f: args.f,
        k: args.k,
        steps: args.steps,
    };
    let output = info.run(&params)?;
    println!("experiment: {}", output.name);
    for (key, value) in &output.summary {
        println!("{key}: {value:.6}");
    }
    if let Some(path) = &args.out {
        let mut out = create(path)?;
        match (args.format, &output.report) {
            (Format::Json, _) => writeln!(out, "{}", serde_json::to_string_pretty(&output)?)?,
            (Format::Csv, Some(report)) => report.write_steps_csv(&mut out)?,
            (Format::Csv, None) => {
                writeln!(out, "key,value")?;
                for (key, value) in &output.summary {
                    writeln!(out, "{key},{value}")?;
                }
            }
        }
        out.flush()?;
    }
    Ok(())
}

pub fn validate_space(args: &ValidateArgs) -> Result<bool> {
    let space = DecisionSpace::from_edge_file(&args.path)
        .with_context(|| format!("cannot load graph {}", args.path.display()))?;
    let median = if space.len() <= MEDIAN_CHECK_LIMIT {
        space.is_median_graph()
    } else {
        validate_median_graph(&space)?
    };
    println!(
        "vertices: {}  edges: {}",
        space.len(),
        space.edges().map_or(0, <[_]>::len)
    );
    if median {
        println!("median graph");
    } else {
        println!("not a median graph");
    }
    Ok(median)
}
