//! `finsler`: command-line access to root systems, Weyl groups, thickenings,
//! dual polytopes, flat Finsler geometry and flag dynamics in `SL(n,ℝ)`.

mod commands;
mod parse;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{CliError, Report};

#[derive(Parser)]
#[command(name = "finsler", version, about = "Weyl-group combinatorics, dual polytopes and polyhedral Finsler geometry")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for parallel stages.
    #[arg(long, default_value_t = 1, global = true)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Root system data.
    #[command(subcommand)]
    Rootsys(RootsysCmd),
    /// Weyl group enumeration and Bruhat order.
    #[command(subcommand)]
    Weyl(WeylCmd),
    /// Thickenings: classification, complements, metric and balanced ones.
    #[command(subcommand)]
    Thickening(ThickeningCmd),
    /// Unit ball, dual ball and the cube structure.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// Finsler geometry of the model flat.
    #[command(subcommand)]
    Finsler(FinslerCmd),
    /// Cartan projections, flag limits, relative positions and limit sets.
    #[command(subcommand)]
    Symspace(SymspaceCmd),
    /// Worked examples.
    #[command(subcommand)]
    Example(ExampleCmd),
}

#[derive(Args)]
struct TypeArg {
    /// Cartan type tag such as A2, B3 or A1xA1.
    #[arg(long = "type", short = 't')]
    cartan_type: String,
}

#[derive(Args)]
struct FunctionalArg {
    /// Coefficients of the functional in fundamental weights (default all 1).
    #[arg(long)]
    functional: Option<String>,
}

#[derive(Subcommand)]
enum RootsysCmd {
    /// Roots, coroots, Cartan matrix and fundamental vertices.
    Info {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        l: FunctionalArg,
    },
}

#[derive(Subcommand)]
enum WeylCmd {
    /// All elements with reduced words and lengths, w0 and ι.
    Enumerate {
        #[command(flatten)]
        t: TypeArg,
    },
    /// Compare two elements, or their cosets when --face is given.
    Bruhat {
        #[command(flatten)]
        t: TypeArg,
        /// Reduced word, e.g. "s1 s2" or "e".
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
        /// Face type such as "{1}"; compares the cosets W_J u and W_J w.
        #[arg(long)]
        face: Option<String>,
    },
}

#[derive(Subcommand)]
enum ThickeningCmd {
    /// Ideal, fat, slim, balanced and invariance flags of a subset.
    Classify {
        #[command(flatten)]
        t: TypeArg,
        /// Comma-separated words, e.g. "e, s1, s2".
        #[arg(long)]
        elements: String,
    },
    /// The complementary thickening w0 (W − Th).
    Complement {
        #[command(flatten)]
        t: TypeArg,
        #[arg(long)]
        elements: String,
    },
    /// {w : ∠(w θ, θ0) ≤ r}.
    Metric {
        #[command(flatten)]
        t: TypeArg,
        #[arg(long)]
        theta0: String,
        #[arg(long)]
        theta: String,
        /// Radius, e.g. 1.2 or pi/2.
        #[arg(long, default_value = "pi/2")]
        radius: String,
    },
    /// Balanced thickenings invariant under W_J.
    Balanced {
        #[command(flatten)]
        t: TypeArg,
        #[arg(long)]
        face: Option<String>,
        /// Required when the group is too large for exhaustive search.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum PolytopeCmd {
    /// The unit ball B.
    Ball {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        l: FunctionalArg,
    },
    /// The dual ball B* with the duality map.
    Dual {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        l: FunctionalArg,
    },
    /// Certify that Δ* ∩ B* is combinatorially a cube.
    CubeCheck {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        l: FunctionalArg,
    },
}

#[derive(Subcommand)]
enum FinslerCmd {
    /// d(x, y) with maximizing group elements.
    Dist {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        l: FunctionalArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Whether z lies in the diamond of the segment xy.
    Diamond {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        l: FunctionalArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
    },
    /// Convergence of normalized distance functions to a mixed Busemann function.
    Horolimit {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        l: FunctionalArg,
        #[arg(long)]
        face: Option<String>,
        /// Chamber anchor of the face, as a word.
        #[arg(long, default_value = "e")]
        anchor: String,
        /// Basepoint p (default origin).
        #[arg(long)]
        basepoint: Option<String>,
        /// Radius of the compact set of test points.
        #[arg(long, default_value_t = 5.0)]
        radius: f64,
        #[arg(long, default_value_t = 40)]
        steps: usize,
        /// Grid points per axis.
        #[arg(long, default_value_t = 11)]
        grid: usize,
    },
    /// Coordinates α_i in the compactified chamber of a point or sequence.
    Coords {
        #[command(flatten)]
        t: TypeArg,
        #[arg(long, conflicts_with = "sequence", required_unless_present = "sequence")]
        x: Option<String>,
        /// Points separated by ";".
        #[arg(long)]
        sequence: Option<String>,
    },
    /// Whether the Finsler norm is positive.
    Positivity {
        #[command(flatten)]
        t: TypeArg,
        #[command(flatten)]
        l: FunctionalArg,
    },
}

#[derive(Subcommand)]
enum SymspaceCmd {
    /// Cartan projection of a matrix or Δ-distance of two points.
    Cartan {
        /// Rows separated by ";".
        #[arg(long, required_unless_present_all = ["x", "y"], conflicts_with_all = ["x", "y"])]
        matrix: Option<String>,
        #[arg(long, requires = "y")]
        x: Option<String>,
        #[arg(long, requires = "x")]
        y: Option<String>,
        /// Functional on A_{n−1} in fundamental weights, for the Finsler value.
        #[arg(long)]
        functional: Option<String>,
    },
    /// Forward and backward flag limits of the powers g, g², …, g^k.
    Flaglimit {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 30)]
        power: usize,
        #[arg(long)]
        face: Option<String>,
        #[arg(long, default_value_t = 1000)]
        mesh: usize,
        /// Required for partial flag types, whose test flags are random.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Relative position of a full flag with respect to a reference flag.
    Pos {
        /// Spanning columns, rows separated by ";".
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        tau: String,
        /// Dimensions of the reference flag (default full).
        #[arg(long)]
        tau_dims: Option<String>,
    },
    /// Sampled flag limit set of a finitely generated group.
    Limitset {
        /// Matrices separated by "|", or "psl3" for the diagonal ℤ² example.
        #[arg(long)]
        generators: String,
        #[arg(long, default_value_t = 8)]
        radius: usize,
        #[arg(long)]
        face: Option<String>,
        #[arg(long, default_value_t = 0.3)]
        norm_fraction: f64,
        #[arg(long, default_value_t = 0.05)]
        min_gap: f64,
    },
}

#[derive(Subcommand)]
enum ExampleCmd {
    /// The balanced thickening of A2.
    A2Balanced,
    /// Limit sets and domain membership for the diagonal ℤ² < PSL(3,ℝ).
    Psl3Domain {
        /// Required for the random sweep.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        radius: usize,
        /// Classify a single flag instead (spanning columns p, q).
        #[arg(long)]
        flag: Option<String>,
    },
}

fn run(cmd: Command) -> Result<Report, CliError> {
    use commands as c;
    match cmd {
        Command::Rootsys(RootsysCmd::Info { t, l }) => c::rootsys_info(&t.cartan_type, l.functional.as_deref()),
        Command::Weyl(WeylCmd::Enumerate { t }) => c::weyl_enumerate(&t.cartan_type),
        Command::Weyl(WeylCmd::Bruhat { t, u, w, face }) => c::weyl_bruhat(&t.cartan_type, &u, &w, face.as_deref()),
        Command::Thickening(ThickeningCmd::Classify { t, elements }) => c::thickening_classify(&t.cartan_type, &elements),
        Command::Thickening(ThickeningCmd::Complement { t, elements }) => c::thickening_complement(&t.cartan_type, &elements),
        Command::Thickening(ThickeningCmd::Metric { t, theta0, theta, radius }) => {
            c::thickening_metric(&t.cartan_type, &theta0, &theta, &radius)
        }
        Command::Thickening(ThickeningCmd::Balanced { t, face, seed, samples }) => {
            c::thickening_balanced(&t.cartan_type, face.as_deref(), seed, samples)
        }
        Command::Polytope(PolytopeCmd::Ball { t, l }) => c::polytope_ball(&t.cartan_type, l.functional.as_deref()),
        Command::Polytope(PolytopeCmd::Dual { t, l }) => c::polytope_dual(&t.cartan_type, l.functional.as_deref()),
        Command::Polytope(PolytopeCmd::CubeCheck { t, l }) => c::polytope_cube(&t.cartan_type, l.functional.as_deref()),
        Command::Finsler(FinslerCmd::Dist { t, l, x, y }) => c::finsler_dist(&t.cartan_type, l.functional.as_deref(), &x, &y),
        Command::Finsler(FinslerCmd::Diamond { t, l, x, y, z }) => {
            c::finsler_diamond(&t.cartan_type, l.functional.as_deref(), &x, &y, &z)
        }
        Command::Finsler(FinslerCmd::Horolimit { t, l, face, anchor, basepoint, radius, steps, grid }) => c::finsler_horolimit(
            &t.cartan_type,
            l.functional.as_deref(),
            c::HoroArgs { face: face.as_deref(), anchor: &anchor, basepoint: basepoint.as_deref(), radius, steps, grid },
        ),
        Command::Finsler(FinslerCmd::Coords { t, x, sequence }) => c::finsler_coords(&t.cartan_type, x.as_deref(), sequence.as_deref()),
        Command::Finsler(FinslerCmd::Positivity { t, l }) => c::finsler_positivity(&t.cartan_type, l.functional.as_deref()),
        Command::Symspace(SymspaceCmd::Cartan { matrix, x, y, functional }) => {
            c::symspace_cartan(matrix.as_deref(), x.as_deref().zip(y.as_deref()), functional.as_deref())
        }
        Command::Symspace(SymspaceCmd::Flaglimit { matrix, power, face, mesh, seed }) => {
            c::symspace_flaglimit(&matrix, power, face.as_deref(), mesh, seed)
        }
        Command::Symspace(SymspaceCmd::Pos { sigma, tau, tau_dims }) => c::symspace_pos(&sigma, &tau, tau_dims.as_deref()),
        Command::Symspace(SymspaceCmd::Limitset { generators, radius, face, norm_fraction, min_gap }) => {
            c::symspace_limitset(&generators, radius, face.as_deref(), norm_fraction, min_gap)
        }
        Command::Example(ExampleCmd::A2Balanced) => c::example_a2_balanced(),
        Command::Example(ExampleCmd::Psl3Domain { seed, samples, radius, flag }) => {
            c::example_psl3_domain(seed, samples, radius, flag.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads == 0 {
        eprintln!("error[cli.usage]: --threads must be at least 1");
        return ExitCode::from(2);
    }
    rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global().expect("first pool");
    match run(cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.json()),
                Format::Text => print!("{}", report.text()),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {}", e.code(), e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
