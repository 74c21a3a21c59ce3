use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hypdyn::classify::{mandelbrot_member, quadchotomy};
use hypdyn::oracle::{reference_parameters, verify_mandelbrot_square, verify_quadchotomy};
use hypdyn::realdyn::classify_real;
use hypdyn::render::{colorize, render_julia, render_mandelbrot, write_counts, write_ppm};
use hypdyn::{hyper_orbit, EscapeConfig, Frame, GridSpec, HyperbolicNumber, IterationGrid};

mod config;

#[derive(Parser, Debug)]
#[command(
    name = "hypdyn",
    version,
    about = "Quadratic dynamics over the hyperbolic numbers",
    args_override_self = true,
    allow_negative_numbers = true
)]
struct Cli {
    /// Read default flag values from a `key = value` file; flags on the command line win.
    #[arg(long, value_name = "PATH", global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Render the Mandelbrot set (one escape test per parameter pixel).
    Mandelbrot(RenderArgs),
    /// Render the filled Julia set of z² + c.
    Julia {
        #[command(flatten)]
        param: ParamArgs,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Print the analytic classification of a parameter.
    Classify(ParamArgs),
    /// Print an orbit as CSV.
    Orbit(OrbitArgs),
    /// Run the empirical verification suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct ParamArgs {
    /// Real part c₁ of c = c₁ + τc₂.
    #[arg(long, allow_negative_numbers = true)]
    c_re: Option<f64>,
    /// τ part c₂ of c = c₁ + τc₂.
    #[arg(long, allow_negative_numbers = true)]
    c_im: Option<f64>,
    /// c in characteristic coordinates, as `X,Y`.
    #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
    c_char: Option<String>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long, value_enum, default_value_t = FrameArg::Characteristic)]
    frame: FrameArg,
    #[arg(long, allow_negative_numbers = true)]
    min_u: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    max_u: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    min_v: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    max_v: Option<f64>,
    #[arg(long, default_value_t = 800)]
    width: usize,
    #[arg(long, default_value_t = 800)]
    height: usize,
    #[command(flatten)]
    escape: EscapeArgs,
    /// PPM output path, or `-` for standard output.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    /// Optional CSV of per-pixel escape steps (0 = survived).
    #[arg(long, value_name = "PATH")]
    counts: Option<PathBuf>,
    #[command(flatten)]
    workers: WorkerArgs,
}

#[derive(Args, Debug)]
struct EscapeArgs {
    #[arg(long, default_value_t = 200)]
    max_iter: u32,
    #[arg(long, default_value_t = 4.0)]
    bound: f64,
}

#[derive(Args, Debug)]
struct WorkerArgs {
    /// Worker threads (default: all available cores).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    z0_re: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    z0_im: f64,
    #[arg(long, allow_negative_numbers = true)]
    c_re: f64,
    #[arg(long, allow_negative_numbers = true)]
    c_im: f64,
    #[arg(long)]
    steps: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[arg(long, default_value_t = 512)]
    resolution: usize,
    #[arg(long, default_value_t = 0.05)]
    margin: f64,
    #[command(flatten)]
    escape: EscapeArgs,
    #[command(flatten)]
    workers: WorkerArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FrameArg {
    Cartesian,
    Characteristic,
}

impl From<FrameArg> for Frame {
    fn from(f: FrameArg) -> Self {
        match f {
            FrameArg::Cartesian => Frame::Cartesian,
            FrameArg::Characteristic => Frame::Characteristic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Mandelbrot,
    Quadchotomy,
    All,
}

enum Failure {
    /// Bad flag values; exit 2.
    Usage(String),
    /// Reading or writing failed; exit 1.
    Io(String),
    /// A verification suite reported failures; exit 1.
    Verify,
}

impl From<hypdyn::Error> for Failure {
    fn from(e: hypdyn::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn io_failure(what: &str, e: io::Error) -> Failure {
    Failure::Io(format!("{what}: {e}"))
}

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args().collect()) {
        Ok(argv) => argv,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::try_parse_from(argv).unwrap_or_else(|e| e.exit());
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verify) => ExitCode::from(1),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Mandelbrot(args) => {
            let spec = grid(&args, (-3.0, 1.25))?;
            let cfg = escape_config(&args.escape)?;
            let grid = render_mandelbrot(&spec, &cfg, workers(&args.workers)?)?;
            write_outputs(&grid, &args)
        }
        Command::Julia { param, render } => {
            let c = parameter(&param)?;
            let spec = grid(&render, (-2.5, 2.5))?;
            let cfg = escape_config(&render.escape)?;
            let grid = render_julia(c, &spec, &cfg, workers(&render.workers)?)?;
            write_outputs(&grid, &render)
        }
        Command::Classify(param) => {
            let c = parameter(&param)?;
            let cc = c.to_char();
            emit(format!(
                "c_char={},{} mandelbrot={} chamber={} factor_X={} factor_Y={}\n",
                cc.big_x,
                cc.big_y,
                mandelbrot_member(c),
                quadchotomy(c),
                classify_real(cc.big_x),
                classify_real(cc.big_y),
            ))
        }
        Command::Orbit(args) => {
            let z0 = finite_number(args.z0_re, args.z0_im, "z0")?;
            let c = finite_number(args.c_re, args.c_im, "c")?;
            let mut text = String::from("n,x,y,X,Y,norm\n");
            for (n, z) in hyper_orbit(z0, c, args.steps).into_iter().enumerate() {
                match z {
                    Some(z) => {
                        let zc = z.to_char();
                        text.push_str(&format!(
                            "{n},{},{},{},{},{}\n",
                            z.x(),
                            z.y(),
                            zc.big_x,
                            zc.big_y,
                            z.quad_form()
                        ));
                    }
                    None => text.push_str(&format!("{n},inf,inf,inf,inf,inf\n")),
                }
            }
            emit(text)
        }
        Command::Verify(args) => {
            if args.resolution == 0 {
                return Err(Failure::Usage("--resolution must be at least 1".into()));
            }
            if !(args.margin > 0.0) || !args.margin.is_finite() {
                return Err(Failure::Usage(format!(
                    "--margin must be positive, got {}",
                    args.margin
                )));
            }
            let cfg = escape_config(&args.escape)?;
            let workers = workers(&args.workers)?;
            let mut ok = true;
            let mut text = String::new();
            if matches!(args.suite, Suite::Mandelbrot | Suite::All) {
                let report = verify_mandelbrot_square(args.resolution, args.margin, &cfg, workers)?;
                ok &= report.passed();
                text.push_str(&report.to_string());
            }
            if matches!(args.suite, Suite::Quadchotomy | Suite::All) {
                let report =
                    verify_quadchotomy(&reference_parameters(), args.resolution, &cfg, workers)?;
                ok &= report.all_passed();
                text.push_str(&report.to_string());
            }
            emit(text)?;
            if ok {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
    }
}

fn emit(text: String) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .map_err(|e| io_failure("standard output", e))
}

fn finite_number(x: f64, y: f64, name: &str) -> Result<HyperbolicNumber, Failure> {
    HyperbolicNumber::try_new(x, y)
        .map_err(|_| Failure::Usage(format!("{name} must be finite, got ({x}, {y})")))
}

fn parameter(p: &ParamArgs) -> Result<HyperbolicNumber, Failure> {
    match (p.c_re, p.c_im, &p.c_char) {
        (Some(re), Some(im), None) => finite_number(re, im, "c"),
        (None, None, Some(text)) => {
            let (x, y) = text
                .split_once(',')
                .and_then(|(x, y)| Some((x.trim().parse::<f64>().ok()?, y.trim().parse::<f64>().ok()?)))
                .ok_or_else(|| Failure::Usage(format!("--c-char expects X,Y, got `{text}`")))?;
            if !(x.is_finite() && y.is_finite()) {
                return Err(Failure::Usage(format!("--c-char must be finite, got `{text}`")));
            }
            Ok(HyperbolicNumber::from_char_xy(x, y))
        }
        (None, None, None) => Err(Failure::Usage(
            "a parameter is required: --c-re R --c-im I or --c-char X,Y".into(),
        )),
        (_, _, Some(_)) => Err(Failure::Usage(
            "give either --c-re/--c-im or --c-char, not both".into(),
        )),
        _ => Err(Failure::Usage("--c-re and --c-im must be given together".into())),
    }
}

fn grid(args: &RenderArgs, (lo, hi): (f64, f64)) -> Result<GridSpec, Failure> {
    let spec = GridSpec::new(
        args.frame.into(),
        (args.min_u.unwrap_or(lo), args.max_u.unwrap_or(hi)),
        (args.min_v.unwrap_or(lo), args.max_v.unwrap_or(hi)),
        args.width,
        args.height,
    )?;
    Ok(spec)
}

fn escape_config(args: &EscapeArgs) -> Result<EscapeConfig, Failure> {
    Ok(EscapeConfig::new(args.max_iter, args.bound)?)
}

fn workers(args: &WorkerArgs) -> Result<usize, Failure> {
    match args.workers {
        Some(0) => Err(Failure::Usage("--workers must be at least 1".into())),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn write_outputs(grid: &IterationGrid, args: &RenderArgs) -> Result<(), Failure> {
    let image = colorize(grid);
    write_to(&args.out, |w| write_ppm(&image, w))?;
    if let Some(path) = &args.counts {
        write_to(path, |w| write_counts(grid, w))?;
    }
    Ok(())
}

fn write_to(
    path: &PathBuf,
    write: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), Failure> {
    let shown = path.display().to_string();
    if path.as_os_str() == "-" {
        let mut out = io::stdout().lock();
        return write(&mut out).map_err(|e| io_failure(&shown, e));
    }
    let file = File::create(path).map_err(|e| io_failure(&shown, e))?;
    let mut out = BufWriter::new(file);
    write(&mut out)
        .and_then(|()| out.flush())
        .map_err(|e| io_failure(&shown, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("hypdyn").chain(args.iter().copied()))
    }

    #[test]
    fn negative_values_parse() {
        let cli = parse(&["julia", "--c-char", "-1,-1", "--min-u", "-2", "--out", "j.ppm"]).unwrap();
        let Command::Julia { param, render } = cli.command else {
            panic!("wrong subcommand");
        };
        assert_eq!(param.c_char.as_deref(), Some("-1,-1"));
        assert_eq!(render.min_u, Some(-2.0));
        assert_eq!(parameter(&param).ok(), Some(HyperbolicNumber::from_char_xy(-1.0, -1.0)));
    }

    #[test]
    fn later_flags_win() {
        let cli = parse(&["mandelbrot", "--width=8", "--width", "16", "--out", "m.ppm"]).unwrap();
        let Command::Mandelbrot(args) = cli.command else {
            panic!("wrong subcommand");
        };
        assert_eq!(args.width, 16);
        assert_eq!(args.height, 800);
    }

    #[test]
    fn parameter_forms() {
        let p = |re, im, ch: Option<&str>| ParamArgs {
            c_re: re,
            c_im: im,
            c_char: ch.map(str::to_string),
        };
        assert!(parameter(&p(Some(0.2), Some(0.0), None)).is_ok());
        assert!(parameter(&p(None, None, Some("1,1"))).is_ok());
        assert!(parameter(&p(Some(0.2), Some(0.0), Some("1,1"))).is_err());
        assert!(parameter(&p(None, None, None)).is_err());
        assert!(parameter(&p(Some(0.2), None, None)).is_err());
        assert!(parameter(&p(None, None, Some("1;1"))).is_err());
        assert!(parameter(&p(None, None, Some("nan,1"))).is_err());
    }

    #[test]
    fn required_and_enumerated_flags() {
        assert!(parse(&["mandelbrot"]).is_err());
        assert!(parse(&["verify", "--suite", "bogus"]).is_err());
        assert!(parse(&["mandelbrot", "--frame", "polar", "--out", "m.ppm"]).is_err());
        assert!(parse(&["orbit", "--c-re", "0", "--c-im", "0"]).is_err());
    }

    #[test]
    fn worker_default_is_positive() {
        assert!(workers(&WorkerArgs { workers: None }).ok().unwrap() >= 1);
        assert!(workers(&WorkerArgs { workers: Some(0) }).is_err());
    }
}
