mod report;
mod suite;

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use finspace::complexity::{cat, cat_square, cc, parse_certificate, verify_certificate, CcOptions};
use finspace::order_complex::{order_complex, ExportFormat};
use finspace::{parse_poset, Error, FinitePoset, Limits};
use serde::Serialize;

use report::{to_structured, CcSummary, CoreSummary, Report};

#[derive(Parser)]
#[command(name = "finspace", version, about = "Homotopy invariants of finite spaces")]
struct Cli {
    /// Ceiling on enumerated elements and search states.
    #[arg(long, global = true, default_value_t = Limits::default().max_elements)]
    limit: usize,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Every invariant of a poset, with the inequalities between them checked.
    Report {
        file: PathBuf,
        #[arg(long)]
        m_max: Option<usize>,
    },
    /// Bracket for the combinatorial complexity CC(P).
    Cc {
        file: PathBuf,
        /// Largest fence length tried (default: the number of elements).
        #[arg(long)]
        m_max: Option<usize>,
        /// Write the section certificate for the upper bound here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// LS-category cat(P), or cat(PxP) with --square.
    Cat {
        file: PathBuf,
        #[arg(long)]
        square: bool,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Beat-point core.
    Core { file: PathBuf },
    /// Order complex statistics, or an export of it.
    Complex {
        file: PathBuf,
        /// `facet-list` or `structured`.
        #[arg(long)]
        export: Option<String>,
    },
    /// Check a certificate against a poset.
    Verify { cert: PathBuf, file: PathBuf },
    /// Recompute the built-in examples and compare with their known values.
    PaperSuite,
}

/// Failures by exit code: 1 a claim or certificate does not hold, 2 bad
/// input, 3 a size ceiling was hit.
enum Failure {
    Assertion(String),
    Input(String),
    Limit(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Assertion(_) => 1,
            Failure::Input(_) => 2,
            Failure::Limit(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Assertion(m) | Failure::Input(m) | Failure::Limit(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimit { .. } => Failure::Limit(e.to_string()),
            Error::Invalid(_) => Failure::Assertion(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(Vec<u8>, FinitePoset), Failure> {
    let bytes = read_input(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure::Input(format!("{}: not UTF-8", path.display())))?;
    let p = parse_poset(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((bytes, p))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct CcOutput {
    input: report::Input,
    #[serde(flatten)]
    cc: CcSummary,
}

#[derive(Serialize)]
struct CatOutput {
    input: report::Input,
    square: bool,
    value: usize,
    certificate: String,
}

#[derive(Serialize)]
struct CoreOutput {
    input: report::Input,
    #[serde(flatten)]
    core: CoreSummary,
}

#[derive(Serialize)]
struct ComplexOutput {
    input: report::Input,
    f_vector: Vec<usize>,
    euler_characteristic: i64,
    betti: Vec<usize>,
}

#[derive(Serialize)]
struct VerifyOutput {
    valid: bool,
    reason: Option<String>,
}

fn run(cli: Cli) -> Result<String, Failure> {
    let limits = Limits::new(cli.limit);
    let structured = cli.format == Format::Structured;
    match cli.command {
        Command::Report { file, m_max } => {
            let (bytes, p) = load(&file)?;
            let r = Report::build(&bytes, &p, m_max, &limits)?;
            let text = if structured { to_structured(&r) } else { r.to_text() };
            if r.holds() {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Assertion("an inequality check failed".into()))
            }
        }
        Command::Cc { file, m_max, cert } => {
            let (bytes, p) = load(&file)?;
            let b = cc(&p, CcOptions { m_max, with_cohomology: true }, &limits)?;
            let summary = CcSummary::new(&p, b);
            if let Some(path) = cert {
                match &summary.certificate {
                    Some(text) => write_file(&path, text)?,
                    None => eprintln!("no certificate: CC_m is infinite for every m tried"),
                }
            }
            if structured {
                return Ok(to_structured(&CcOutput {
                    input: report::Input::new(&bytes, &p),
                    cc: summary,
                }));
            }
            let mut out = format!("{}\n", summary.upper);
            summary.write_text(&mut out);
            Ok(out)
        }
        Command::Cat { file, square, cert } => {
            let (bytes, p) = load(&file)?;
            let (value, certificate) = if square {
                let v = cat_square(&p, &limits)?;
                (v.value, v.certificate.to_text(&p.product(&p)))
            } else {
                let v = cat(&p, &limits)?;
                (v.value, v.certificate.to_text(&p))
            };
            if let Some(path) = cert {
                write_file(&path, &certificate)?;
            }
            if structured {
                return Ok(to_structured(&CatOutput {
                    input: report::Input::new(&bytes, &p),
                    square,
                    value,
                    certificate,
                }));
            }
            Ok(format!("{value}\n"))
        }
        Command::Core { file } => {
            let (bytes, p) = load(&file)?;
            let core = CoreSummary::new(&p);
            if structured {
                return Ok(to_structured(&CoreOutput {
                    input: report::Input::new(&bytes, &p),
                    core,
                }));
            }
            let mut out = format!("{} element(s): {}\n", core.size, core.elements.join(" "));
            for r in &core.removed {
                out.push_str(&format!("removed {r}\n"));
            }
            Ok(out)
        }
        Command::Complex { file, export } => {
            let (bytes, p) = load(&file)?;
            let k = order_complex(&p, &limits)?;
            if let Some(fmt) = export {
                let fmt: ExportFormat = fmt.parse()?;
                return Ok(k.export(fmt));
            }
            let out = ComplexOutput {
                input: report::Input::new(&bytes, &p),
                f_vector: k.f_vector(),
                euler_characteristic: k.euler_characteristic(),
                betti: finspace::cohomology::betti_numbers(&k),
            };
            if structured {
                return Ok(to_structured(&out));
            }
            Ok(format!(
                "f-vector {:?}\neuler characteristic {}\nmod-2 betti {:?}\n",
                out.f_vector, out.euler_characteristic, out.betti
            ))
        }
        Command::Verify { cert, file } => {
            let (_, p) = load(&file)?;
            let text = String::from_utf8(read_input(&cert)?)
                .map_err(|_| Failure::Input(format!("{}: not UTF-8", cert.display())))?;
            let certificate =
                parse_certificate(&text, &p).map_err(|e| Failure::Input(format!("{}: {e}", cert.display())))?;
            let verdict = verify_certificate(&p, &certificate);
            let out = if structured {
                to_structured(&VerifyOutput {
                    valid: verdict.is_ok(),
                    reason: verdict.as_ref().err().cloned(),
                })
            } else {
                match &verdict {
                    Ok(()) => "valid\n".to_string(),
                    Err(reason) => format!("invalid: {reason}\n"),
                }
            };
            match verdict {
                Ok(()) => Ok(out),
                Err(_) => {
                    print!("{out}");
                    Err(Failure::Assertion("certificate rejected".into()))
                }
            }
        }
        Command::PaperSuite => {
            let claims = suite::run(&limits)?;
            let out = if structured { to_structured(&claims) } else { suite::to_text(&claims) };
            if claims.iter().all(|c| c.ok) {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Assertion("a paper value was not reproduced".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
