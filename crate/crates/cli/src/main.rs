use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use twisted_homology::catalog::{
    expected_h1, mcg_action, mcg_module, mcg_presentation, prop4_generators, SurfaceSpec,
};
use twisted_homology::coefficients::{check_action_compatibility, trivial_module, CoefficientModule};
use twisted_homology::homology::{abelianization, twisted_h1, verify_kernel_generator_variants, H1Result};
use twisted_homology::linalg::AbelianGroupStructure;
use twisted_homology::presentation::{format_presentation, parse_presentation, validate, GroupPresentation};
use twisted_homology::representation::{verify_representation_modulo, MatrixRepresentation};

mod render;

const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "twisted-homology", version, about = "H1 of finitely presented groups with twisted integer coefficients")]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// H1 of the mapping class group of N_{g,s} with coefficients in H1(N_{g,s}).
    Compute {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value_t = Coeffs::Twisted)]
        coeffs: Coeffs,
    },
    /// Computed and expected H1 for a range of surfaces.
    Table {
        #[arg(long = "g-min")]
        g_min: usize,
        #[arg(long = "g-max")]
        g_max: usize,
        #[arg(long, value_enum, default_value_t = Boundary::Both)]
        s: Boundary,
    },
    /// Check the catalog action or the cycle lattice generators.
    Verify {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        s: usize,
        #[arg(value_enum)]
        what: VerifyTarget,
    },
    /// H1 for a presentation, representation and module read from files.
    Run {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        representation: PathBuf,
        /// Defaults to the free module of the representation's dimension.
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Write a catalog artifact to standard output.
    Emit {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value_t = Artifact::Presentation)]
        artifact: Artifact,
        /// dsl for the presentation, json for the representation and module.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeffs {
    Twisted,
    Trivial,
}

#[derive(Clone, Copy, ValueEnum)]
enum Boundary {
    #[value(name = "0")]
    Closed,
    #[value(name = "1")]
    One,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Action,
    Kernel,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Artifact {
    Presentation,
    Representation,
    Module,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dsl,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn surface(g: usize, s: usize) -> Result<SurfaceSpec, Failure> {
    SurfaceSpec::new(g, s).map_err(|e| input_error(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute { g, s, coeffs } => cmd_compute(g, s, coeffs, cli.json),
        Command::Table { g_min, g_max, s } => cmd_table(g_min, g_max, s, cli.json),
        Command::Verify { g, s, what } => cmd_verify(g, s, what, cli.json),
        Command::Run {
            presentation,
            representation,
            module,
        } => cmd_run(&presentation, &representation, module.as_deref(), cli.json),
        Command::Emit { g, s, artifact, format } => cmd_emit(g, s, artifact, format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

struct Row {
    spec: SurfaceSpec,
    coeffs: Coeffs,
    result: H1Result,
    expected: AbelianGroupStructure,
}

impl Row {
    fn matched(&self) -> bool {
        self.result.invariants == self.expected
    }

    fn to_json(&self) -> Value {
        json!({
            "genus": self.spec.genus(),
            "boundary": self.spec.boundary(),
            "coefficients": match self.coeffs { Coeffs::Twisted => "twisted", Coeffs::Trivial => "trivial" },
            "free_rank": self.result.invariants.free_rank,
            "torsion": render::torsion_json(&self.result.invariants),
            "kernel_rank": self.result.kernel_rank,
            "matched_expected": self.matched(),
        })
    }
}

fn compute_row(spec: SurfaceSpec, coeffs: Coeffs) -> Result<Row, Failure> {
    let p = mcg_presentation(&spec);
    let (rep, m, expected) = match coeffs {
        Coeffs::Twisted => (mcg_action(&spec), mcg_module(&spec), expected_h1(&spec)),
        Coeffs::Trivial => (
            MatrixRepresentation::trivial(&p.generator_names(), 1),
            trivial_module(),
            abelianization(&p),
        ),
    };
    let result = twisted_h1(&p, &rep, &m).map_err(|e| Failure {
        code: EXIT_MISMATCH,
        message: format!("{spec}: {e}"),
    })?;
    Ok(Row {
        spec,
        coeffs,
        result,
        expected,
    })
}

fn cmd_compute(g: usize, s: usize, coeffs: Coeffs, as_json: bool) -> CmdResult {
    let row = compute_row(surface(g, s)?, coeffs)?;
    if as_json {
        println!("{}", render::pretty(&row.to_json()));
    } else {
        let kind = match coeffs {
            Coeffs::Twisted => "coefficients H1(N; Z)",
            Coeffs::Trivial => "trivial Z coefficients",
        };
        println!("{}, {kind}", row.spec);
        print!("{}", render::h1_text(&row.result));
        println!(
            "expected: {} ({})",
            row.expected,
            if row.matched() { "match" } else { "MISMATCH" }
        );
    }
    Ok(if row.matched() { 0 } else { EXIT_MISMATCH })
}

fn cmd_table(g_min: usize, g_max: usize, s: Boundary, as_json: bool) -> CmdResult {
    if g_min < 3 || g_min > g_max {
        return Err(input_error(format!("genus range {g_min}..={g_max} is empty or below 3")));
    }
    let boundaries: &[usize] = match s {
        Boundary::Closed => &[0],
        Boundary::One => &[1],
        Boundary::Both => &[1, 0],
    };
    let specs = SurfaceSpec::range(g_min, g_max, boundaries);
    if specs.is_empty() {
        return Err(input_error("no supported surface in the requested range"));
    }
    let rows: Vec<Row> = specs
        .into_par_iter()
        .map(|spec| compute_row(spec, Coeffs::Twisted))
        .collect::<Result<_, _>>()?;
    let all = rows.iter().all(Row::matched);
    if as_json {
        let doc = json!({
            "rows": rows.iter().map(Row::to_json).collect::<Vec<_>>(),
            "all_matched": all,
        });
        println!("{}", render::pretty(&doc));
    } else {
        print!("{}", render::table_text(rows.iter().map(|r| (r.spec, &r.result.invariants, &r.expected))));
        println!("{} of {} rows match", rows.iter().filter(|r| r.matched()).count(), rows.len());
    }
    Ok(if all { 0 } else { EXIT_MISMATCH })
}

fn cmd_verify(g: usize, s: usize, what: VerifyTarget, as_json: bool) -> CmdResult {
    let spec = surface(g, s)?;
    let p = mcg_presentation(&spec);
    let rep = mcg_action(&spec);
    let m = mcg_module(&spec);
    let internal = |e: String| Failure {
        code: EXIT_MISMATCH,
        message: e,
    };
    let passed = match what {
        VerifyTarget::Action => {
            let report = verify_representation_modulo(&p, &rep, &m.lattice()).map_err(|e| internal(e.to_string()))?;
            let compatible = check_action_compatibility(&m, &rep).map_err(|e| internal(e.to_string()))?;
            if as_json {
                println!("{}", render::pretty(&render::action_json(&spec, &report, compatible)));
            } else {
                print!("{}", render::action_text(&spec, &report, compatible));
            }
            report.passed && compatible
        }
        VerifyTarget::Kernel => {
            let cands = prop4_generators(&spec);
            let (winner, reports) =
                verify_kernel_generator_variants(&p, &rep, &m, &cands.variants()).map_err(|e| internal(e.to_string()))?;
            if as_json {
                println!("{}", render::pretty(&render::kernel_json(&spec, winner.as_deref(), &reports)));
            } else {
                print!("{}", render::kernel_text(&spec, winner.as_deref(), &reports));
            }
            winner.is_some()
        }
    };
    Ok(if passed { 0 } else { EXIT_MISMATCH })
}

fn read(path: &std::path::Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_inputs(
    presentation: &std::path::Path,
    representation: &std::path::Path,
    module: Option<&std::path::Path>,
) -> Result<(GroupPresentation, MatrixRepresentation, CoefficientModule), Failure> {
    let p = parse_presentation(&read(presentation)?).map_err(|e| input_error(format!("{}: {e}", presentation.display())))?;
    if let Some(issue) = validate(&p).first() {
        return Err(input_error(format!("{}: {issue}", presentation.display())));
    }
    let rep = MatrixRepresentation::from_json(&read(representation)?)
        .and_then(|r| r.aligned_to(&p))
        .map_err(|e| input_error(format!("{}: {e}", representation.display())))?;
    let m = match module {
        Some(path) => CoefficientModule::from_json(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))?,
        None => CoefficientModule::free(rep.dimension()),
    };
    if m.rank != rep.dimension() {
        return Err(input_error(format!(
            "module rank {} does not match representation dimension {}",
            m.rank,
            rep.dimension()
        )));
    }
    Ok((p, rep, m))
}

fn cmd_run(
    presentation: &std::path::Path,
    representation: &std::path::Path,
    module: Option<&std::path::Path>,
    as_json: bool,
) -> CmdResult {
    let (p, rep, m) = load_inputs(presentation, representation, module)?;
    let result = twisted_h1(&p, &rep, &m).map_err(|e| input_error(e.to_string()))?;
    if as_json {
        let doc = json!({
            "group": p.name,
            "generators": p.num_generators(),
            "relations": p.relations.len(),
            "module_rank": m.rank,
            "free_rank": result.invariants.free_rank,
            "torsion": render::torsion_json(&result.invariants),
            "kernel_rank": result.kernel_rank,
        });
        println!("{}", render::pretty(&doc));
    } else {
        if !p.name.is_empty() {
            println!("{}", p.name);
        }
        print!("{}", render::h1_text(&result));
    }
    Ok(0)
}

fn cmd_emit(g: usize, s: usize, artifact: Artifact, format: Option<Format>) -> CmdResult {
    let spec = surface(g, s)?;
    let expected = if artifact == Artifact::Presentation { Format::Dsl } else { Format::Json };
    if format.is_some_and(|f| f != expected) {
        return Err(input_error(match artifact {
            Artifact::Presentation => "the presentation is emitted as dsl",
            _ => "representations and modules are emitted as json",
        }));
    }
    match artifact {
        Artifact::Presentation => print!("{}", format_presentation(&mcg_presentation(&spec))),
        Artifact::Representation => print!("{}", mcg_action(&spec).to_json()),
        Artifact::Module => print!("{}", mcg_module(&spec).to_json()),
    }
    Ok(0)
}
