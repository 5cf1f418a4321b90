use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use gencube::constructions::{
    appendix2_checks, appendix3_symmetry_deviation, bell_cube_certificates, error_per_gate_bounds, lemma8_report,
    lemma8_search, Lemma8Report, CJ_TOL, NPT_TOL,
};
use gencube::gates::{footnote_orbit, NoiseFamily};
use gencube::hn_sim::{histogram_csv, normalize, simulate_dense, tvd, Circuit, HnSimulator, RNG_NAME};
use gencube::pauli::BlochOp;
use gencube::separability::{appendix1_certificates, verify_certificate, DEGENERACY_TOL, FEAS_TOL, RATIONAL_DEN};
use gencube::state_spaces::{
    operator_compatible, vertex_bits, vertex_index, Compatibility, IncompatibleReason, PovmSet, SpaceKind,
    StateSpaceSpec, COMPAT_RESIDUAL_TOL,
};
use gencube::thresholds::{curve, curve_csv, min_noise, Criterion, InputPolicy, ThresholdQuery, BISECTION_TOL};

#[derive(Parser)]
#[command(name = "gencube", version, about = "Separability thresholds for noisy two-qubit gates")]
struct Cli {
    /// Decimal places for numeric output.
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Noise {
    JointDepol,
    LocalDepol,
    LocalDephase,
}

impl From<Noise> for NoiseFamily {
    fn from(n: Noise) -> Self {
        match n {
            Noise::JointDepol => NoiseFamily::JointDepol,
            Noise::LocalDepol => NoiseFamily::LocalDepol,
            Noise::LocalDephase => NoiseFamily::LocalDephase,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Cube,
    Sphere,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Worst,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Item {
    Appendix1,
    Appendix2,
    Appendix3,
    Bell,
    Lemma8,
    EpgBounds,
    Orbit,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal noise for a gate to preserve the state space.
    Threshold {
        #[arg(long)]
        noise: Noise,
        #[arg(long)]
        space: Space,
        #[arg(long = "R")]
        r: f64,
        /// Vertex inputs for cubes.
        #[arg(long, value_enum, default_value_t = Policy::Worst)]
        policy: Policy,
        /// Grid points per axis for spheres.
        #[arg(long, default_value_t = gencube::thresholds::SPHERE_GRID_DEFAULT)]
        grid: usize,
    },
    /// Threshold as a function of R, as CSV.
    Curve {
        #[arg(long)]
        noise: Noise,
        #[arg(long)]
        space: Space,
        #[arg(long)]
        r_min: f64,
        #[arg(long)]
        r_max: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named check and print PASS/FAIL per item.
    Verify {
        item: Item,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// lemma8 only: check one parameter pair instead of searching.
        #[arg(long, requires = "epsilon")]
        alpha: Option<f64>,
        #[arg(long, requires = "alpha")]
        epsilon: Option<f64>,
    },
    /// Sample a circuit with cube-separable gates.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compute the exact distribution and report the TVD.
        #[arg(long)]
        compare_dense: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Operator compatibility of a set of measurements.
    Compat {
        #[arg(long)]
        povms: PathBuf,
    },
}

struct Report {
    prec: usize,
    failed: usize,
}

impl Report {
    fn line(&mut self, ok: bool, text: impl AsRef<str>) {
        if !ok {
            self.failed += 1;
        }
        println!("{} {}", if ok { "PASS" } else { "FAIL" }, text.as_ref());
    }

    fn f(&self, x: f64) -> String {
        format!("{x:.*}", self.prec)
    }

    fn e(&self, x: f64) -> String {
        format!("{x:.*e}", self.prec.min(6))
    }
}

fn print_tolerances() {
    eprintln!(
        "# tolerances: feasibility={FEAS_TOL:e} degeneracy={DEGENERACY_TOL:e} rational_den={RATIONAL_DEN} \
         bisection={BISECTION_TOL:e} compat_residual={COMPAT_RESIDUAL_TOL:e} cj_marginal={CJ_TOL:e} npt={NPT_TOL:e}"
    );
}

fn space_spec(space: Space, r: f64) -> Result<StateSpaceSpec> {
    let kind = match space {
        Space::Cube => SpaceKind::Cube,
        Space::Sphere => SpaceKind::Sphere,
    };
    Ok(StateSpaceSpec::new(kind, r)?)
}

fn query(noise: Noise, space: Space, r: f64, policy: Policy, grid: usize) -> Result<ThresholdQuery> {
    let spec = space_spec(space, r)?;
    Ok(match space {
        Space::Cube => ThresholdQuery {
            family: noise.into(),
            space: spec,
            criterion: Criterion::CubeSeparable,
            input_policy: match policy {
                Policy::Worst => InputPolicy::WorstVertex,
                Policy::All => InputPolicy::AllVertices,
            },
        },
        Space::Sphere => ThresholdQuery { input_policy: InputPolicy::SphereGrid(grid), ..ThresholdQuery::standard(noise.into(), spec) },
    })
}

fn lemma8_lines(rep: &mut Report, r: &Lemma8Report) {
    println!("# alpha={} epsilon={}", r.alpha, r.epsilon);
    rep.line(r.epsilon > 0.0, format!("epsilon positive: {}", r.epsilon));
    let bad: Vec<String> = r.infeasible_pairs.iter().map(|(u, v)| format!("{}x{}", vertex_bits(*u), vertex_bits(*v))).collect();
    rep.line(
        r.all_vertices_feasible(),
        format!("vertex outputs cube-separable: {}/64{}", r.feasible_count(), if bad.is_empty() { String::new() } else { format!(" (infeasible: {})", bad.join(" ")) }),
    );
    rep.line(r.entangles_product_input(), format!("(|T>+|Tbar>)/sqrt2 input entangled: min PT eigenvalue {}", rep.e(r.witness_min_pt)));
    rep.line(r.trace_preserving(), format!("CJ marginal on (A1,B1) is I/4: deviation {}", rep.e(r.marginal_deviation)));
    rep.line(r.cj_pt_in_out < -NPT_TOL, format!("CJ NPT across input:output split: {}", rep.e(r.cj_pt_in_out)));
    rep.line(r.cj_pt_a_b < -NPT_TOL, format!("CJ NPT across A:B split: {}", rep.e(r.cj_pt_a_b)));
    println!("# a2_distance_to_t={}", rep.f(r.a2_distance_to_t));
}

fn verify(rep: &mut Report, item: Item, seed: u64, params: Option<(f64, f64)>) -> Result<()> {
    match item {
        Item::Appendix1 => {
            for it in appendix1_certificates() {
                let res = it.verify(1e-12);
                let detail = res.map(|r| format!("residual {}", rep.e(r))).unwrap_or_else(|| "does not verify".into());
                rep.line(res.is_some_and(|r| r < 1e-12), format!("item {} {}: {detail}", it.index, it.name));
            }
        }
        Item::Appendix2 => {
            let r = appendix2_checks(1000, seed);
            rep.line(r.stated_probability == -0.5, format!("vertex choice Born probability: {}", rep.f(r.stated_probability)));
            rep.line(r.over_unit_witnessed == r.samples, format!("over-unit Bloch vectors violated: {}/{}", r.over_unit_witnessed, r.samples));
            rep.line(r.in_ball_witnessed == 0, format!("unit-ball vectors violated: {}/{}", r.in_ball_witnessed, r.samples));
        }
        Item::Appendix3 => {
            let d = appendix3_symmetry_deviation(200, seed)?;
            rep.line(d < 1e-10, format!("half-turn symmetry preserves spectra: max deviation {}", rep.e(d)));
        }
        Item::Bell => {
            for b in bell_cube_certificates() {
                let ok = verify_certificate(&b.certificate, &b.target, 1.0, 1e-12);
                let res = b.certificate.mixture().max_abs_diff(&b.target);
                rep.line(ok, format!("{} cube-separable: residual {}", b.name, rep.e(res)));
            }
        }
        Item::Lemma8 => match params {
            Some((a, e)) => lemma8_lines(rep, &lemma8_report(a, e)?),
            None => {
                let s = lemma8_search()?;
                println!("# searched {} parameter pairs", s.tried.len());
                let shown = s.found.as_ref().or(s.best()).context("no CJ candidates")?;
                rep.line(s.found.is_some(), "search found parameters passing every check");
                lemma8_lines(rep, shown);
            }
        },
        Item::EpgBounds => {
            let b = error_per_gate_bounds()?;
            rep.line(b.w_identity_residual < 1e-12, format!("magic-basis identity: residual {}", rep.e(b.w_identity_residual)));
            rep.line(b.lower == 0.2, format!("lower bound: {}", rep.f(b.lower)));
            rep.line(b.upper_feasible == 64, format!("upper bound {}: {}/64 vertex outputs separable", rep.f(b.upper), b.upper_feasible));
        }
        Item::Orbit => {
            let orbit = footnote_orbit();
            let idx: Vec<usize> = orbit.iter().filter_map(|v| vertex_index(&BlochOp::new(*v))).collect();
            let mut distinct = idx.clone();
            distinct.sort();
            distinct.dedup();
            let path: Vec<String> = idx.iter().map(|&k| vertex_bits(k)).collect();
            rep.line(distinct.len() == 8, format!("X,Y,X,S,X,Y,X orbit visits {}/8 vertices: {}", distinct.len(), path.join(" ")));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let prec = cli.precision;
    match cli.command {
        Command::Threshold { noise, space, r, policy, grid } => {
            let t = min_noise(&query(noise, space, r, policy, grid)?, BISECTION_TOL)?;
            println!("{:.*}", prec, t.lambda_star);
            Ok(true)
        }
        Command::Curve { noise, space, r_min, r_max, steps, out } => {
            let points = curve(&query(noise, space, 1.0, Policy::Worst, gencube::thresholds::SPHERE_GRID_DEFAULT)?, r_min, r_max, steps)?;
            let csv = curve_csv(&points);
            match out {
                Some(p) => fs::write(&p, csv).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{csv}"),
            }
            for p in points.iter().filter(|p| p.error.is_some()) {
                eprintln!("gap at R={}: {}", p.r, p.error.as_deref().unwrap_or(""));
            }
            Ok(true)
        }
        Command::Verify { item, seed, alpha, epsilon } => {
            let mut rep = Report { prec, failed: 0 };
            verify(&mut rep, item, seed, alpha.zip(epsilon))?;
            Ok(rep.failed == 0)
        }
        Command::Simulate { circuit, shots, seed, compare_dense, out } => {
            let text = fs::read_to_string(&circuit).with_context(|| format!("reading {}", circuit.display()))?;
            let c = Circuit::parse(&text)?;
            let hist = HnSimulator::new(&c)?.run(shots, seed);
            let csv = histogram_csv(&hist);
            println!("# rng {RNG_NAME} seed {seed} shots {shots}");
            match out {
                Some(p) => fs::write(&p, &csv).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{csv}"),
            }
            if !compare_dense {
                return Ok(true);
            }
            let exact = simulate_dense(&c)?;
            let d = tvd(&normalize(&hist), &exact);
            let envelope = 3.0 * (exact.len() as f64 / shots.max(1) as f64).sqrt();
            println!("# tvd {:.*} envelope {:.*}", prec, d, prec, envelope);
            let mut rep = Report { prec, failed: 0 };
            rep.line(d < envelope, format!("sampled distribution within 3*sqrt(K/shots) of exact: tvd {}", rep.f(d)));
            Ok(rep.failed == 0)
        }
        Command::Compat { povms } => {
            let text = fs::read_to_string(&povms).with_context(|| format!("reading {}", povms.display()))?;
            match operator_compatible(&PovmSet::parse(&text)?) {
                Compatibility::Compatible(corners) => {
                    println!("compatible: {} corners", corners.len());
                    for c in corners {
                        let choice: Vec<String> = c.choice.iter().map(ToString::to_string).collect();
                        let d = c.operator.dim();
                        let entries: Vec<String> = (0..d * d)
                            .map(|k| {
                                let z = c.operator[(k / d, k % d)];
                                format!("{:.*}{:+.*}i", prec, z.re, prec, z.im)
                            })
                            .collect();
                        println!("corner {} residual {:.1e}: {}", choice.join(","), c.relative_residual, entries.join(" "));
                    }
                }
                Compatibility::Incompatible(IncompatibleReason::CountingBound { total_outcomes, bound }) => {
                    println!("incompatible: {total_outcomes} outcomes exceed the counting bound {bound}");
                }
                Compatibility::Incompatible(IncompatibleReason::Unsolvable { choice, relative_residual }) => {
                    let choice: Vec<String> = choice.iter().map(ToString::to_string).collect();
                    println!("incompatible: corner {} unsolvable, relative residual {relative_residual:.3e}", choice.join(","));
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var("GENCUBE_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: GENCUBE_THREADS must be a positive integer, got `{n}`");
                return ExitCode::from(2);
            }
        }
    }
    print_tolerances();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn unknown_flags_rejected() {
        assert!(Cli::try_parse_from(["gencube", "threshold", "--noise", "joint-depol", "--space", "cube", "--R", "1", "--bogus"]).is_err());
        assert!(Cli::try_parse_from(["gencube", "verify", "lemma8", "--alpha", "0.9"]).is_err());
    }
}
