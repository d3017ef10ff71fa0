//! Command-line entry point: construct group algebras, duals, doubles and
//! twists as JSON files, analyze their representation data, and run the
//! verification suites.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 unusable input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use hopfdouble::double::{build_double, quasitriangular};
use hopfdouble::groups::{make_group, parse_group_name, FiniteGroup, GroupSpec};
use hopfdouble::hopf::{dual_hopf, group_algebra, validate_hopf, Elt2, HopfAlgebra};
use hopfdouble::json::{
    fusion_csv, hopf_from_json, hopf_to_json, irrep_table_to_json, modular_to_json, s_matrix_csv,
    twist_to_json, FactorsJson, HopfJson, HopfObject,
};
use hopfdouble::modular::s_matrix;
use hopfdouble::rep::wedderburn;
use hopfdouble::report::{run_full_suite, Suite, SuiteInput};
use hopfdouble::scalar::{C64, Rat, Scalar, ToleranceConfig};
use hopfdouble::triangular::bicharacter_twist;

#[derive(Parser)]
#[command(
    name = "hopfdouble",
    about = "Semisimple Hopf algebras at desk scale: group algebras, duals, Drinfeld doubles, twists, and the verification suites for their modular data",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Residual tolerance for structural identities.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Tolerance for integer recognition.
    #[arg(long = "int-tol", global = true)]
    int_tol: Option<f64>,

    /// RNG seed for the Wedderburn decomposition.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Scalar backend for constructed files.
    #[arg(long, global = true, value_parser = ["rational", "complex"], default_value = "rational")]
    scalar: String,

    /// Output directory for generated files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    /// Output format: json (always), csv for tables, md for reports.
    #[arg(long, global = true, value_parser = ["json", "csv", "md"], default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct an object and write it as JSON.
    Make {
        #[command(subcommand)]
        kind: MakeKind,
    },
    /// Decompose into irreducible blocks and, with an R-matrix, compute the
    /// S-matrix and fusion data.
    Analyze {
        #[command(flatten)]
        source: Source,
    },
    /// Run a verification suite and print the report.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = ["all", "modular", "triangular", "divisibility"], default_value = "all")]
        suite: String,
    },
}

#[derive(Subcommand)]
enum MakeKind {
    /// The group algebra kG.
    Group {
        #[command(flatten)]
        source: GroupSource,
    },
    /// The dual Hopf algebra of a group algebra or of a Hopf JSON file.
    Dual {
        #[command(flatten)]
        source: Source,
    },
    /// The Drinfeld double with its canonical R-matrix.
    Double {
        #[command(flatten)]
        source: Source,
    },
    /// A bicharacter twist of an abelian group algebra: writes the twist
    /// file and the twisted Hopf algebra with its triangular R-matrix.
    Twist {
        #[arg(long)]
        group: String,
        /// Exponent expression such as "a1b2" or "a1b2+a2b1" over the
        /// cyclic coordinates.
        #[arg(long)]
        bicharacter: String,
    },
}

#[derive(Args)]
struct GroupSource {
    /// Built-in name: C2, C3, C5, C2xC2, S3, S4, D4, Q8, or products like C2xC4.
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    cyclic: Option<usize>,
    #[arg(long)]
    dihedral: Option<usize>,
    #[arg(long)]
    symmetric: Option<usize>,
    #[arg(long)]
    quaternion: bool,
}

#[derive(Args)]
struct Source {
    #[command(flatten)]
    group: GroupSource,
    /// Hopf JSON (or twist JSON, for verify) input file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// With a group source: pass to the Drinfeld double.
    #[arg(long)]
    double: bool,
}

impl GroupSource {
    fn spec(&self) -> anyhow::Result<Option<(String, GroupSpec)>> {
        let mut picks: Vec<(String, GroupSpec)> = Vec::new();
        if let Some(name) = &self.group {
            picks.push((name.clone(), parse_group_name(name)?));
        }
        if let Some(n) = self.cyclic {
            picks.push((format!("C{n}"), GroupSpec::Cyclic(n)));
        }
        if let Some(n) = self.dihedral {
            picks.push((format!("D{n}"), GroupSpec::Dihedral(n)));
        }
        if let Some(n) = self.symmetric {
            picks.push((format!("S{n}"), GroupSpec::Symmetric(n)));
        }
        if self.quaternion {
            picks.push(("Q8".into(), GroupSpec::Quaternion8));
        }
        match picks.len() {
            0 => Ok(None),
            1 => Ok(Some(picks.pop().unwrap())),
            _ => bail!("give exactly one group selector"),
        }
    }
}

fn tolerances(cli: &Cli) -> anyhow::Result<ToleranceConfig> {
    let mut cfg = ToleranceConfig::default();
    if let Some(t) = cli.tol {
        cfg.residual_tol = t;
    }
    if let Some(t) = cli.int_tol {
        cfg.integer_tol = t;
    }
    if let Some(s) = cli.seed {
        cfg.rng_seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_file(dir: &Path, name: &str, contents: &str) -> anyhow::Result<PathBuf> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(path)
}

fn hopf_object_of_group(g: &FiniteGroup, complex_mode: bool) -> anyhow::Result<HopfObject> {
    Ok(if complex_mode {
        HopfObject::Complex {
            hopf: Arc::new(group_algebra::<C64>(g)?),
            r: None,
        }
    } else {
        HopfObject::Rational {
            hopf: Arc::new(group_algebra::<Rat>(g)?),
            r: None,
        }
    })
}

fn load_hopf_file(path: &Path) -> anyhow::Result<(HopfJson, HopfObject)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let json: HopfJson = serde_json::from_str(&text)
        .with_context(|| format!("parsing {} as a Hopf JSON", path.display()))?;
    let obj = hopf_from_json(&json)?;
    Ok((json, obj))
}

fn source_object(source: &Source, complex_mode: bool) -> anyhow::Result<(String, HopfObject)> {
    match (&source.input, source.group.spec()?) {
        (Some(path), None) => {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "input".into());
            let (_, obj) = load_hopf_file(path)?;
            Ok((stem, obj))
        }
        (None, Some((name, spec))) => {
            let g = make_group(&spec)?;
            Ok((name, hopf_object_of_group(&g, complex_mode)?))
        }
        (None, None) => bail!("give --input FILE or a group selector"),
        (Some(_), Some(_)) => bail!("give either --input or a group selector, not both"),
    }
}

fn cmd_make(cli: &Cli, kind: &MakeKind, cfg: &ToleranceConfig) -> anyhow::Result<()> {
    let complex_mode = cli.scalar == "complex";
    match kind {
        MakeKind::Group { source } => {
            let (name, spec) = source
                .spec()?
                .ok_or_else(|| anyhow!("give a group selector"))?;
            let g = make_group(&spec)?;
            let obj = hopf_object_of_group(&g, complex_mode)?;
            let json = hopf_to_json(&obj, None);
            write_file(
                &cli.out,
                &format!("group_{name}.json"),
                &serde_json::to_string_pretty(&json)?,
            )?;
        }
        MakeKind::Dual { source } => {
            let (name, obj) = source_object(source, complex_mode)?;
            let dual = match obj {
                HopfObject::Rational { hopf, .. } => HopfObject::Rational {
                    hopf: Arc::new(dual_hopf(&hopf)),
                    r: None,
                },
                HopfObject::Complex { hopf, .. } => HopfObject::Complex {
                    hopf: Arc::new(dual_hopf(&hopf)),
                    r: None,
                },
            };
            let json = hopf_to_json(&dual, None);
            write_file(
                &cli.out,
                &format!("dual_{name}.json"),
                &serde_json::to_string_pretty(&json)?,
            )?;
        }
        MakeKind::Double { source } => {
            let (name, obj) = source_object(source, complex_mode)?;
            let json = match obj {
                HopfObject::Rational { hopf, .. } => {
                    let n = hopf.bi.dim;
                    let dd = build_double(&hopf, cfg)?;
                    hopf_to_json(
                        &HopfObject::Rational {
                            hopf: Arc::clone(dd.double()),
                            r: Some(dd.quasi.r.clone()),
                        },
                        Some(FactorsJson {
                            dual_dim: n,
                            alg_dim: n,
                        }),
                    )
                }
                HopfObject::Complex { hopf, .. } => {
                    let n = hopf.bi.dim;
                    let dd = build_double(&hopf, cfg)?;
                    hopf_to_json(
                        &HopfObject::Complex {
                            hopf: Arc::clone(dd.double()),
                            r: Some(dd.quasi.r.clone()),
                        },
                        Some(FactorsJson {
                            dual_dim: n,
                            alg_dim: n,
                        }),
                    )
                }
            };
            write_file(
                &cli.out,
                &format!("double_{name}.json"),
                &serde_json::to_string_pretty(&json)?,
            )?;
        }
        MakeKind::Twist { group, bicharacter } => {
            let spec = parse_group_name(group)?;
            let g = make_group(&spec)?;
            let coords = g
                .cyclic
                .as_ref()
                .ok_or_else(|| anyhow!("twists need a product-of-cyclic group like C2xC2"))?;
            let exponents = parse_bicharacter(bicharacter, coords.moduli.len())?;
            let twist = bicharacter_twist(&g, &exponents, cfg)?;
            let twist_json = twist_to_json(&twist);
            write_file(
                &cli.out,
                &format!("twist_{group}.json"),
                &serde_json::to_string_pretty(&twist_json)?,
            )?;
            let (twisted, data) = hopfdouble::triangular::twist_group_algebra(&twist, cfg)?;
            let json = hopf_to_json(
                &HopfObject::Rational {
                    hopf: twisted,
                    r: Some(data.quasi.r.clone()),
                },
                None,
            );
            write_file(
                &cli.out,
                &format!("twisted_{group}.json"),
                &serde_json::to_string_pretty(&json)?,
            )?;
        }
    }
    Ok(())
}

/// Parse exponent expressions like "a1b2" or "a1b1+a2b1" into a k x k
/// matrix over the cyclic coordinates.
fn parse_bicharacter(expr: &str, k: usize) -> anyhow::Result<Vec<Vec<u64>>> {
    let mut b = vec![vec![0u64; k]; k];
    for term in expr.split('+') {
        let term = term.trim();
        let rest = term
            .strip_prefix('a')
            .ok_or_else(|| anyhow!("bad bicharacter term `{term}`: expected aIbJ"))?;
        let bpos = rest
            .find('b')
            .ok_or_else(|| anyhow!("bad bicharacter term `{term}`: expected aIbJ"))?;
        let i: usize = rest[..bpos].parse().context("bicharacter row index")?;
        let j: usize = rest[bpos + 1..].parse().context("bicharacter column index")?;
        if i == 0 || j == 0 || i > k || j > k {
            bail!("bicharacter indices must lie in 1..={k}");
        }
        b[i - 1][j - 1] += 1;
    }
    Ok(b)
}

fn cmd_analyze(cli: &Cli, source: &Source, cfg: &ToleranceConfig) -> anyhow::Result<u8> {
    let complex_mode = cli.scalar == "complex";
    // Group sources may pass to the double first.
    let (name, obj) = if source.double {
        let (name, spec) = source
            .group
            .spec()?
            .ok_or_else(|| anyhow!("--double needs a group selector"))?;
        let g = make_group(&spec)?;
        let hopf = Arc::new(group_algebra::<Rat>(&g)?);
        let dd = build_double(&hopf, cfg)?;
        (
            format!("double_{name}"),
            HopfObject::Rational {
                hopf: Arc::clone(dd.double()),
                r: Some(dd.quasi.r.clone()),
            },
        )
    } else {
        source_object(source, complex_mode)?
    };

    fn analyze_backend<S: Scalar>(
        cli: &Cli,
        name: &str,
        hopf: &Arc<HopfAlgebra<S>>,
        r: Option<Elt2<S>>,
        cfg: &ToleranceConfig,
    ) -> anyhow::Result<u8> {
        let report = validate_hopf(hopf)?;
        if !report.passes(cfg) {
            let worst = report.worst().unwrap();
            eprintln!(
                "validation failed: {} at residual {:.3e}",
                worst.name, worst.residual
            );
            return Ok(1);
        }
        let complex = hopfdouble::hopf::to_complex_generic(hopf);
        let table = wedderburn(&complex, cfg)?;
        let irreps = irrep_table_to_json(&table);
        write_file(
            &cli.out,
            &format!("analyze_{name}_irreps.json"),
            &serde_json::to_string_pretty(&irreps)?,
        )?;
        println!("blocks: {:?}", table.dims());
        if let Some(r) = r {
            let (quasi, qreport) = quasitriangular(Arc::clone(hopf), r, cfg)?;
            if !qreport.passes(cfg) {
                let worst = qreport.worst().unwrap();
                eprintln!(
                    "quasitriangularity failed: {} at residual {:.3e}",
                    worst.name, worst.residual
                );
                return Ok(1);
            }
            let md = s_matrix(&quasi, &table, cfg)?;
            write_file(
                &cli.out,
                &format!("analyze_{name}_modular.json"),
                &serde_json::to_string_pretty(&modular_to_json(&md, cfg.integer_tol))?,
            )?;
            if cli.format == "csv" {
                write_file(&cli.out, &format!("analyze_{name}_s.csv"), &s_matrix_csv(&md))?;
                write_file(
                    &cli.out,
                    &format!("analyze_{name}_fusion.csv"),
                    &fusion_csv(&md.fusion_bf),
                )?;
            }
        }
        Ok(0)
    }

    match obj {
        HopfObject::Rational { hopf, r } => analyze_backend(cli, &name, &hopf, r, cfg),
        HopfObject::Complex { hopf, r } => analyze_backend(cli, &name, &hopf, r, cfg),
    }
}

fn cmd_verify(cli: &Cli, source: &Source, suite: &str, cfg: &ToleranceConfig) -> anyhow::Result<u8> {
    let suite = Suite::parse(suite)?;
    let input = match (&source.input, source.group.spec()?) {
        (Some(path), None) => SuiteInput::File {
            name: path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "input".into()),
            text: std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?,
        },
        (None, Some((name, _))) => SuiteInput::Group {
            name,
            double: source.double,
        },
        _ => bail!("give --input FILE or a group selector"),
    };
    let report = run_full_suite(&input, suite, cfg)?;
    let rendered = if cli.format == "md" {
        report.to_markdown()
    } else {
        report.to_json_string()
    };
    println!("{rendered}");
    if cli.out != Path::new(".") {
        let ext = if cli.format == "md" { "md" } else { "json" };
        write_file(&cli.out, &format!("report_{}.{ext}", report.subject), &rendered)?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn run() -> anyhow::Result<u8> {
    let cli = Cli::parse();
    let cfg = tolerances(&cli)?;
    match &cli.cmd {
        Cmd::Make { kind } => {
            cmd_make(&cli, kind, &cfg)?;
            Ok(0)
        }
        Cmd::Analyze { source } => cmd_analyze(&cli, source, &cfg),
        Cmd::Verify { source, suite } => cmd_verify(&cli, source, suite, &cfg),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
