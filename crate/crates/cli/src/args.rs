use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "quatfn",
    version,
    about = "Quaternionic functions in the complex-pair model: D, classification, residue currents",
    after_help = "Points are four reals x1,y1,x2,y2 meaning q = (x1 + i y1) + (x2 + i y2) j.\n\
                  Functions are catalogue names (see `quatfn catalogue`) or literals `F1 ; F2`\n\
                  in z1, c1 = conj(z1), z2, c2 = conj(z2).\n\
                  QR_THREADS caps the number of worker threads."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Exit with code 4 when a pairing does not converge.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Record failed preconditions as warnings instead of refusing.
    #[arg(long, global = true)]
    pub soft: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hyperholomorphy, hypermeromorphy and closure under sums and products.
    Classify {
        #[command(flatten)]
        f: FunctionArgs,
        /// Partner functions for the closure checks (repeatable).
        #[arg(long)]
        partner: Vec<String>,
    },
    /// Exact Df, optionally evaluated at a point.
    ApplyD {
        #[command(flatten)]
        f: FunctionArgs,
        #[command(flatten)]
        at: PointArg,
    },
    /// Right inverse 1/f.
    Inverse {
        #[command(flatten)]
        f: FunctionArgs,
        #[command(flatten)]
        at: PointArg,
    },
    /// Residual of the Leibniz rule for D(f*g).
    ProductRule {
        #[command(flatten)]
        f: FunctionArgs,
        #[arg(long)]
        partner: String,
    },
    /// The residual pair deciding whether 1/f stays hyperholomorphic.
    Hypermero {
        #[command(flatten)]
        f: FunctionArgs,
        #[command(flatten)]
        at: PointArg,
    },
    /// Conditions for f*g to stay hypermeromorphic.
    ProductCompat {
        #[command(flatten)]
        f: FunctionArgs,
        #[arg(long)]
        partner: String,
    },
    /// Res[f⁻¹df](φ) by shrinking level sets.
    Residue {
        #[command(flatten)]
        f: FunctionArgs,
        #[command(flatten)]
        phi: Form2Args,
        #[command(flatten)]
        pairing: PairingArgs,
    },
    /// Vp[f⁻¹df](ψ) by excising shrinking balls.
    Pv {
        #[command(flatten)]
        f: FunctionArgs,
        #[command(flatten)]
        psi: Form3Args,
        #[command(flatten)]
        pairing: PairingArgs,
    },
    /// One-variable residue or principal value of z^(-k) against a test function.
    #[command(name = "oracle-1d")]
    Oracle1d {
        /// Pole order k.
        #[arg(long, default_value_t = 1)]
        pole: usize,
        /// Polynomial factor in z1 and c1 = conj(z1); the bump is implicit.
        #[arg(long, default_value = "bump")]
        phi: String,
        #[arg(long = "R", default_value_t = 1.0)]
        radius: f64,
        /// Bump center x,y.
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        #[arg(long, value_enum, default_value_t = OneDimMode::Residue)]
        mode: OneDimMode,
        /// `default`, `1d` or `eps0,ratio,count`.
        #[arg(long, default_value = "1d")]
        schedule: String,
        #[arg(long, default_value_t = 256)]
        n_theta: usize,
    },
    /// Built-in functions with their known flags and zero sets.
    Catalogue {
        /// Show one entry (with optional --params).
        #[arg(long)]
        function: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OneDimMode {
    Residue,
    Pv,
}

#[derive(Args, Debug)]
pub struct FunctionArgs {
    /// Catalogue name or literal `F1 ; F2`.
    #[arg(long)]
    pub function: String,
    /// Comma-separated real parameters of a catalogue entry.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
}

#[derive(Args, Debug)]
pub struct PointArg {
    /// x1,y1,x2,y2
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<String>,
}

#[derive(Args, Debug)]
pub struct Form2Args {
    /// Coefficient of dz1∧dz̄1: polynomial factor or `bump`.
    #[arg(long)]
    pub phi11: Option<String>,
    /// Coefficient of dz1∧dz̄2.
    #[arg(long)]
    pub phi12: Option<String>,
    /// Coefficient of dz2∧dz̄1.
    #[arg(long)]
    pub phi21: Option<String>,
    /// Coefficient of dz2∧dz̄2.
    #[arg(long)]
    pub phi22: Option<String>,
}

#[derive(Args, Debug)]
pub struct Form3Args {
    /// Coefficient of dz̄1∧dz2∧dz̄2.
    #[arg(long)]
    pub psi1: Option<String>,
    /// Coefficient of dz1∧dz̄1∧dz̄2.
    #[arg(long)]
    pub psi2: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    /// ‖q‖ = ε or ‖q‖ ≥ ε.
    Metric,
    /// |f| = ε or |f| ≥ ε.
    Level,
}

#[derive(Args, Debug)]
pub struct PairingArgs {
    /// Bump radius shared by all coefficients.
    #[arg(long = "R", default_value_t = 1.0)]
    pub radius: f64,
    /// Bump center x1,y1,x2,y2.
    #[arg(long, allow_hyphen_values = true)]
    pub center: Option<String>,
    /// `default`, `1d` or `eps0,ratio,count`.
    #[arg(long, default_value = "default")]
    pub schedule: String,
    /// Gauss-Legendre nodes in η (per panel when η is adaptive).
    #[arg(long)]
    pub n_eta: Option<usize>,
    /// Trapezoid nodes in each of ξ1, ξ2.
    #[arg(long)]
    pub n_xi: Option<usize>,
    /// Excised region; residue defaults to `level`, pv to `metric`.
    #[arg(long, value_enum)]
    pub domain: Option<DomainArg>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::ApplyD { .. } => "apply-d",
            Command::Inverse { .. } => "inverse",
            Command::ProductRule { .. } => "product-rule",
            Command::Hypermero { .. } => "hypermero",
            Command::ProductCompat { .. } => "product-compat",
            Command::Residue { .. } => "residue",
            Command::Pv { .. } => "pv",
            Command::Oracle1d { .. } => "oracle-1d",
            Command::Catalogue { .. } => "catalogue",
        }
    }
}
