use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cuboid_newton::closedform::{format_decimal, Format};
use cuboid_newton::exactnum::parse_rational;
use cuboid_newton::exactnum::rational::to_f64;
use cuboid_newton::pipeline::{demo_spec, dump_integrand, run, Stage, DEMOS};
use cuboid_newton::problem::{parse_indices, parse_point, Source};
use cuboid_newton::reference::waldvogel_potential;
use cuboid_newton::{CuboidSpec, Error, Kind, ProblemSpec};

/// Exact potentials and forces between axis-parallel cuboids.
#[derive(Parser)]
#[command(name = "cuboid-newton", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Run a built-in problem instead of a subcommand.
    #[arg(long, value_name = "NAME", value_parser = clap::builder::PossibleValuesParser::new(DEMOS))]
    demo: Option<String>,

    /// text, latex or json.
    #[arg(long, global = true, default_value = "text")]
    format: String,

    /// Significant digits of the decimal value.
    #[arg(long, global = true, default_value_t = 12)]
    digits: u32,

    /// Print an intermediate integrand (factors, raw or renormalized) instead of the result.
    #[arg(long, global = true, value_name = "STAGE")]
    dump: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// ∬ x^n y^m / |x-y|.
    Potential(TwoBody),
    /// ∬ x^n y^m (x_k - y_k) / |x-y|³.
    Force {
        #[command(flatten)]
        body: TwoBody,
        #[arg(long)]
        axis: usize,
    },
    /// ∬ x^n y^m / |x-y|³.
    InverseCube(TwoBody),
    /// ∫ x^n / |x-y|, or the force component along --axis, at a point y.
    Point {
        #[arg(long)]
        q: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        axis: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
    },
}

#[derive(Args)]
struct TwoBody {
    /// Bounds "a1,b1;a2,b2;..." of the first cuboid.
    #[arg(long)]
    q: String,
    /// Bounds of the second cuboid.
    #[arg(long)]
    qp: String,
    /// Exponents of the first cuboid's monomial weight.
    #[arg(long)]
    n: Option<String>,
    /// Exponents of the second cuboid's monomial weight.
    #[arg(long)]
    m: Option<String>,
    /// Regularization ρ ≥ 0, dimensions 1 and 2 only.
    #[arg(long)]
    rho: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
}

fn indices(s: &Option<String>, d: usize) -> Result<Vec<u32>, Error> {
    s.as_deref().map_or(Ok(vec![0; d]), parse_indices)
}

fn check_dim(dim: Option<usize>, q: &CuboidSpec) -> Result<(), Error> {
    match dim {
        Some(d) if d != q.dim() => Err(Error::InvalidSpec(format!("--dim {d} but the cuboid has dimension {}", q.dim()))),
        _ => Ok(()),
    }
}

fn two_body(kind: Kind, b: &TwoBody) -> Result<ProblemSpec, Error> {
    let q = CuboidSpec::parse(&b.q)?;
    check_dim(b.dim, &q)?;
    let qp = CuboidSpec::parse(&b.qp)?;
    let d = q.dim();
    let mut spec = ProblemSpec::two_body(kind, q, qp, indices(&b.n, d)?, indices(&b.m, d)?);
    if let Some(rho) = &b.rho {
        spec = spec.with_rho(parse_rational(rho)?);
    }
    Ok(spec)
}

fn build_spec(cli: &Cli) -> Result<ProblemSpec, Error> {
    let mut spec = match (&cli.command, &cli.demo) {
        (None, Some(name)) => demo_spec(name)?,
        (Some(_), Some(_)) => return Err(Error::InvalidSpec("--demo cannot be combined with a subcommand".into())),
        (None, None) => return Err(Error::InvalidSpec("expected a subcommand or --demo".into())),
        (Some(cmd), None) => match cmd {
            Command::Potential(b) => two_body(Kind::Potential, b)?,
            Command::Force { body, axis } => two_body(Kind::Force { axis: *axis }, body)?,
            Command::InverseCube(b) => two_body(Kind::InverseCube, b)?,
            Command::Point { q, y, n, axis, dim } => {
                let q = CuboidSpec::parse(q)?;
                check_dim(*dim, &q)?;
                let kind = axis.map_or(Kind::PointPotential, |axis| Kind::PointForce { axis });
                let d = q.dim();
                ProblemSpec::point(kind, q, parse_point(y)?, indices(n, d)?)
            }
        },
    };
    spec.digits = cli.digits;
    Ok(spec)
}

/// The closed-form reference for a point potential in three dimensions.
fn reference_line(spec: &ProblemSpec, value: f64, digits: u32) -> Option<String> {
    let (Kind::PointPotential, Source::Point(y)) = (spec.kind, &spec.source) else { return None };
    if spec.dim() != 3 || spec.n.iter().any(|&k| k != 0) {
        return None;
    }
    let b = spec.q.bounds_f64();
    let w = waldvogel_potential([b[0], b[1], b[2]], [to_f64(&y[0]), to_f64(&y[1]), to_f64(&y[2])]);
    Some(format!("reference: {}\ndifference: {:.1e}", format_decimal(w, digits), (w - value).abs()))
}

fn execute(cli: &Cli) -> Result<String, Error> {
    let format: Format = cli.format.parse()?;
    let spec = build_spec(cli)?;
    if let Some(stage) = &cli.dump {
        let stage: Stage = stage.parse()?;
        return dump_integrand(&spec, stage, format == Format::Latex);
    }
    let result = run(&spec)?;
    let mut out = result.render(format);
    if cli.demo.as_deref() == Some("waldvogel-check") && format == Format::Text {
        if let Some(line) = reference_line(&spec, result.value, spec.digits) {
            out.push('\n');
            out.push_str(&line);
        }
    }
    Ok(out)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidSpec(_) | Error::Parse(_) | Error::InvalidInterval { .. } => 2,
        Error::Divergent(_) => 3,
        Error::QuadratureFailure(_) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            // a closed pipe (`| head`) is not an error worth a panic
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
