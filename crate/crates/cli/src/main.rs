mod csv;
mod parse;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use bergkern::annulus::{self, AnnulusPoint, Approach, KernelMethod};
use bergkern::circular::{self, AnnulusFamily, CircularDomainBasis, DomainKind, RadiusFunction};
use bergkern::levi::{psh_scan, strict_psh_scan, ScanConfig, StepRule, DEFAULT_TOL};
use bergkern::suites::{self, Suite, SuiteConfig};
use bergkern::{Complex64, RectLattice};
use clap::{Args, Parser, Subcommand};

use csv::{num, opt, Table};

#[derive(Parser)]
#[command(name = "bergkern", version, about = "Bergman kernels of annuli and their Levi forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weierstrass functions on the lattice 2ω₁ℤ + 2πiℤ.
    Pw {
        #[command(subcommand)]
        cmd: PwCmd,
    },
    /// Bergman kernel of the planar annulus {|ζ| < |z| < 1}.
    Annulus {
        #[command(subcommand)]
        cmd: AnnulusCmd,
    },
    /// Series kernel of Ω − ρ(ζ)·Ω̄ for the unit ball or polydisc.
    Circular {
        #[command(subcommand)]
        cmd: CircularCmd,
    },
    /// Plurisubharmonicity scan of log K over (ζ, z).
    Scan(ScanArgs),
    /// Run a named check suite and write a JSON report.
    Check(CheckArgs),
    /// ζ-direction Levi expression along a boundary approach.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LatticeArg {
    /// Real half-period ω₁.
    #[arg(long)]
    omega1: Option<f64>,
    /// |ζ|, giving ω₁ = −log|ζ|.
    #[arg(long)]
    zeta_abs: Option<f64>,
}

#[derive(Subcommand)]
enum PwCmd {
    /// ℘, ℘′ and ζ at u.
    Eval {
        #[command(flatten)]
        lattice: LatticeArg,
        /// Argument as RE or RE,IM.
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        u: Complex64,
        #[command(flatten)]
        output: Output,
    },
    /// η = ζ(ω₁), c = η/ω₁ and ζ(πi).
    Quasi {
        #[command(flatten)]
        lattice: LatticeArg,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ZetaArg {
    /// Parameter ζ as RE or RE,IM.
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    zeta: Option<Complex64>,
    /// Parameter on the positive real axis.
    #[arg(long)]
    zeta_abs: Option<f64>,
}

impl ZetaArg {
    fn value(&self) -> Complex64 {
        self.zeta
            .unwrap_or_else(|| Complex64::new(self.zeta_abs.unwrap_or(f64::NAN), 0.0))
    }
}

#[derive(Args)]
struct AnnulusPointArgs {
    #[command(flatten)]
    zeta: ZetaArg,
    /// Point z as RE or RE,IM.
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    z: Complex64,
}

impl AnnulusPointArgs {
    fn point(&self) -> Result<AnnulusPoint, CliError> {
        Ok(AnnulusPoint::new(self.zeta.value(), self.z)?)
    }
}

#[derive(Subcommand)]
enum AnnulusCmd {
    /// K_ζ(z) on the diagonal.
    Kernel {
        #[command(flatten)]
        point: AnnulusPointArgs,
        /// closed or series.
        #[arg(long, default_value = "closed")]
        method: KernelMethod,
        /// Series truncation bound; defaults to far below one ulp.
        #[arg(long)]
        eps: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// ∂²log K/∂ζ∂ζ̄ by finite differences and by the closed expression.
    Levi {
        #[command(flatten)]
        point: AnnulusPointArgs,
        /// Finite-difference step; defaults to 1e-4 × min(|ζ|, |z| − |ζ|).
        #[arg(long)]
        h: Option<f64>,
        /// Kernel evaluator under the finite differences.
        #[arg(long, default_value = "closed")]
        method: KernelMethod,
        #[command(flatten)]
        output: Output,
    },
    /// ∂²K/∂ζ∂ζ̄ against |∂K/∂ζ|².
    Remark {
        #[command(flatten)]
        point: AnnulusPointArgs,
        #[arg(long)]
        h: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// ball or polydisc.
    #[arg(long, default_value = "ball")]
    domain: DomainKind,
    /// Complex dimension n of Ω.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// abs, abs-power, sqnorm-affine or gauss-bump.
    #[arg(long, default_value = "abs")]
    rho: String,
    /// Complex dimension m of the parameter domain.
    #[arg(long, default_value_t = 1)]
    rho_dim: usize,
    /// Exponent for abs-power.
    #[arg(long)]
    exponent: Option<f64>,
    /// Series truncation bound.
    #[arg(long, default_value_t = 1e-15)]
    eps: f64,
}

impl FamilyArgs {
    fn family(&self) -> Result<AnnulusFamily, CliError> {
        let basis = CircularDomainBasis::new(self.domain, self.dim)?;
        let rho = RadiusFunction::from_catalog(&self.rho, self.rho_dim, self.exponent)?;
        Ok(AnnulusFamily::new(basis, rho, self.eps))
    }
}

#[derive(Subcommand)]
enum CircularCmd {
    /// K_ζ(z) with certified truncation.
    Kernel {
        #[command(flatten)]
        family: FamilyArgs,
        /// ζ ∈ ℂ^m as RE,IM;RE,IM;…
        #[arg(long, value_parser = parse::point, allow_hyphen_values = true)]
        zeta: ::std::vec::Vec<Complex64>,
        /// z ∈ ℂⁿ as RE,IM;RE,IM;…
        #[arg(long, value_parser = parse::point, allow_hyphen_values = true)]
        z: ::std::vec::Vec<Complex64>,
        #[command(flatten)]
        output: Output,
    },
    /// log of the degree-≤k partial sum.
    Partial {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_parser = parse::point, allow_hyphen_values = true)]
        zeta: ::std::vec::Vec<Complex64>,
        #[arg(long, value_parser = parse::point, allow_hyphen_values = true)]
        z: ::std::vec::Vec<Complex64>,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: Output,
    },
    /// u₀(ζ) = −log(1 − ρ(ζ)^{2n}).
    U0 {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_parser = parse::point, allow_hyphen_values = true)]
        zeta: ::std::vec::Vec<Complex64>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Number of accepted samples.
    #[arg(long, default_value_t = 100)]
    grid: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Fixed step; defaults to 1e-4 × boundary distance, floor 1e-6.
    #[arg(long)]
    h: Option<f64>,
    /// Flag samples whose minimum eigenvalue is below +tol.
    #[arg(long)]
    strict: bool,
    /// Sample z within 0.05 of the origin.
    #[arg(long)]
    near_origin: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CheckArgs {
    /// identities, theorem12, remark32, corollary13, theorem11 or remark21.
    #[arg(long)]
    suite: Suite,
    /// Half-periods for the identity suite, comma-separated.
    #[arg(long, value_parser = parse::list::<f64>)]
    omega1: Option<::std::vec::Vec<f64>>,
    /// Tolerance: identity residuals, or scan eigenvalues.
    #[arg(long)]
    tol: Option<f64>,
    /// Finite-difference step for the comparison suites.
    #[arg(long)]
    h: Option<f64>,
    /// |ζ| for the decay suite.
    #[arg(long)]
    zeta_abs: Option<f64>,
    #[arg(long, value_parser = parse::list::<i32>)]
    ks: Option<::std::vec::Vec<i32>>,
    /// Scan samples.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    eps: Option<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    zeta: ZetaArg,
    /// outer (|z| → 1) or inner (|z| → |ζ|).
    #[arg(long, default_value = "outer")]
    approach: Approach,
    /// Exponents k, comma-separated and increasing.
    #[arg(long, value_parser = parse::list::<i32>, default_value = "1,2,3,4")]
    ks: ::std::vec::Vec<i32>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug)]
enum CliError {
    /// Invalid input values; exit status 2.
    Input(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}

input_error!(
    annulus::AnnulusError,
    circular::CircularError,
    bergkern::EllipticError
);

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn emit(output: &Output, text: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn lattice(arg: &LatticeArg) -> Result<RectLattice, CliError> {
    Ok(match (arg.omega1, arg.zeta_abs) {
        (Some(w), _) => RectLattice::new(w)?,
        (None, Some(r)) => RectLattice::from_modulus(r)?,
        (None, None) => return Err(CliError::Input("need --omega1 or --zeta-abs".into())),
    })
}

fn run_pw(cmd: PwCmd) -> Result<u8, CliError> {
    match cmd {
        PwCmd::Eval { lattice: l, u, output } => {
            let lat = lattice(&l)?;
            let e = lat.evaluate(u)?;
            let mut t = Table::new(&[
                "omega1", "u_re", "u_im", "wp_re", "wp_im", "wp_prime_re", "wp_prime_im", "zeta_re",
                "zeta_im", "condition",
            ]);
            t.row(
                [
                    lat.omega1(),
                    u.re,
                    u.im,
                    e.wp.re,
                    e.wp.im,
                    e.wp_prime.re,
                    e.wp_prime.im,
                    e.zeta.re,
                    e.zeta.im,
                    e.condition,
                ]
                .map(num)
                .to_vec(),
            );
            emit(&output, &t.finish())?;
        }
        PwCmd::Quasi { lattice: l, output } => {
            let lat = lattice(&l)?;
            let q = lat.quasi_periods()?;
            let mut t = Table::new(&["omega1", "eta", "c", "zeta_pi_i_im"]);
            t.row([lat.omega1(), q.eta, q.c, lat.eta_imag().im].map(num).to_vec());
            emit(&output, &t.finish())?;
        }
    }
    Ok(0)
}

fn run_annulus(cmd: AnnulusCmd) -> Result<u8, CliError> {
    match cmd {
        AnnulusCmd::Kernel { point, method, eps, output } => {
            let p = point.point()?;
            let k = match (method, eps) {
                (KernelMethod::Series, Some(eps)) => annulus::kernel_series(p.zeta_abs(), p.z_abs(), eps)?,
                _ => annulus::kernel(&p, method)?,
            };
            let mut t = Table::new(&["zeta_abs", "z_abs", "method", "value"]);
            t.row(vec![num(p.zeta_abs()), num(p.z_abs()), method.to_string(), num(k.value)]);
            emit(&output, &t.finish())?;
        }
        AnnulusCmd::Levi { point, h, method, output } => {
            let p = point.point()?;
            let h = h.unwrap_or_else(|| annulus::default_step(&p));
            let fd = annulus::levi_zeta_fd(&p, h, method)?;
            let expr = annulus::levi_zeta_component(&p)?;
            let mut t = Table::new(&["zeta_abs", "z_abs", "h", "method", "fd", "expression"]);
            t.row(vec![num(p.zeta_abs()), num(p.z_abs()), num(h), method.to_string(), num(fd), num(expr)]);
            emit(&output, &t.finish())?;
        }
        AnnulusCmd::Remark { point, h, output } => {
            let p = point.point()?;
            let h = h.unwrap_or_else(|| annulus::default_step(&p));
            let r = annulus::remark_identity_residual(&p, h)?;
            let mut t = Table::new(&["zeta_abs", "z_abs", "h", "lhs", "rhs", "residual"]);
            t.row([p.zeta_abs(), p.z_abs(), h, r.lhs, r.rhs, r.residual].map(num).to_vec());
            emit(&output, &t.finish())?;
        }
    }
    Ok(0)
}

fn family_cells(f: &FamilyArgs) -> Vec<String> {
    vec![f.domain.to_string(), f.dim.to_string(), f.rho.clone()]
}

fn run_circular(cmd: CircularCmd) -> Result<u8, CliError> {
    match cmd {
        CircularCmd::Kernel { family, zeta, z, output } => {
            let fam = family.family()?;
            let k = circular::kernel_general(&fam.basis, &fam.rho, &zeta, &z, fam.eps)?;
            let mut t = Table::new(&["domain", "dim", "rho", "value", "degree_cutoff", "tail_bound"]);
            let mut row = family_cells(&family);
            row.extend([num(k.value), k.degree_cutoff.to_string(), num(k.tail_bound)]);
            t.row(row);
            emit(&output, &t.finish())?;
        }
        CircularCmd::Partial { family, zeta, z, k, output } => {
            let fam = family.family()?;
            let v = circular::truncated_log_kernel(&fam.basis, &fam.rho, &zeta, &z, k)?;
            let mut t = Table::new(&["domain", "dim", "rho", "k", "log_partial_sum"]);
            let mut row = family_cells(&family);
            row.extend([k.to_string(), num(v)]);
            t.row(row);
            emit(&output, &t.finish())?;
        }
        CircularCmd::U0 { family, zeta, output } => {
            let fam = family.family()?;
            let v = circular::u0_eval(&fam.rho, &zeta, family.dim)?;
            let mut t = Table::new(&["domain", "dim", "rho", "u0"]);
            let mut row = family_cells(&family);
            row.push(num(v));
            t.row(row);
            emit(&output, &t.finish())?;
        }
    }
    Ok(0)
}

fn run_scan(args: ScanArgs) -> Result<u8, CliError> {
    let fam = args.family.family()?;
    let sampler = if args.near_origin {
        let zeta = fam.default_sampler().zeta;
        fam.sampler((zeta.r_min, zeta.r_max), suites::NEAR_ORIGIN_Z_SHELL)
    } else {
        fam.default_sampler()
    };
    let config = ScanConfig {
        samples: args.grid,
        step: args.h.map_or_else(StepRule::default, |h| StepRule::Fixed { h }),
        tol: args.tol,
        seed: args.seed,
    };
    let field = |w: &[Complex64]| fam.log_kernel(w);
    let report = if args.strict {
        strict_psh_scan(field, &sampler, &config)
    } else {
        psh_scan(field, &sampler, &config)
    };

    let dim = fam.dim();
    let mut header = vec!["index".to_string(), "sequence_index".to_string()];
    for i in 0..dim {
        header.push(format!("w{i}_re"));
        header.push(format!("w{i}_im"));
    }
    header.extend(["h", "min_eigenvalue", "violation", "error"].map(String::from));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut t = Table::new(&header);
    for s in &report.samples {
        let mut row = vec![s.index.to_string(), s.sequence_index.to_string()];
        for w in &s.point {
            row.push(num(w.re));
            row.push(num(w.im));
        }
        let violation = report.violations.binary_search(&s.index).is_ok();
        row.extend([
            num(s.h),
            opt(s.min_eigenvalue),
            violation.to_string(),
            s.error.clone().unwrap_or_default().replace(',', ";"),
        ]);
        t.row(row);
    }
    emit(&args.output, &t.finish())?;
    eprintln!(
        "samples {}, global min {}, violations {}, failures {}",
        report.sample_count,
        opt(report.global_min),
        report.violations.len(),
        report.failures.len()
    );
    Ok(if report.passed() { 0 } else { 1 })
}

fn run_check(args: CheckArgs) -> Result<u8, CliError> {
    let mut cfg = SuiteConfig::default();
    if let Some(w) = args.omega1 {
        cfg.omega1s = w;
    }
    if let Some(tol) = args.tol {
        cfg.identity_tol = tol;
        cfg.scan.tol = tol;
    }
    if let Some(h) = args.h {
        cfg.step = h;
    }
    if let Some(r) = args.zeta_abs {
        cfg.zeta_abs = r;
    }
    if let Some(ks) = args.ks {
        cfg.ks = ks;
    }
    if let Some(n) = args.grid {
        cfg.scan.samples = n;
    }
    if let Some(seed) = args.seed {
        cfg.scan.seed = seed;
    }
    if let Some(eps) = args.eps {
        cfg.eps = eps;
    }
    let report = suites::run(args.suite, &cfg);
    emit(&args.output, &(report.to_json() + "\n"))?;
    for c in report.failures() {
        eprintln!("FAIL {}", c.name);
    }
    Ok(report.exit_status as u8)
}

fn run_sweep(args: SweepArgs) -> Result<u8, CliError> {
    let profile = annulus::boundary_decay_profile(args.zeta.value(), args.approach, &args.ks)?;
    let mut t = Table::new(&["approach", "k", "z_abs", "u", "levi_value", "ratio_to_previous"]);
    for r in &profile.rows {
        t.row(vec![
            profile.approach.to_string(),
            r.k.to_string(),
            num(r.z_abs),
            num(r.u),
            num(r.levi_value),
            opt(r.ratio_to_previous),
        ]);
    }
    emit(&args.output, &t.finish())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    bergkern::init_thread_pool();
    let result = match cli.command {
        Command::Pw { cmd } => run_pw(cmd),
        Command::Annulus { cmd } => run_annulus(cmd),
        Command::Circular { cmd } => run_circular(cmd),
        Command::Scan(args) => run_scan(args),
        Command::Check(args) => run_check(args),
        Command::Sweep(args) => run_sweep(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
