//! `symhom`: runs the engine's checks on shipped fixtures or user-supplied
//! oracles and prints `CHECK <name> PASS|FAIL <detail>` reports.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symhom::verify::{self, Report};
use symhom::{
    check_oracle, fixtures, DeclarativeOracle, Element, Engine, FiniteComplex, Flavor, Label, Oracle, TorusDiagram,
    TorusOracle, Transport, Variant,
};

#[derive(Parser)]
#[command(name = "symhom", version, about = "Symbol homology checks over GF(2)")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Declarative oracle table (JSON).
    #[arg(long, global = true, visible_alias = "file", value_name = "PATH")]
    oracle: Option<PathBuf>,
    /// Genus-one Heegaard diagram (JSON).
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "oracle")]
    diagram: Option<PathBuf>,
    /// A shipped fixture by name.
    #[arg(long, global = true, value_enum, conflicts_with_all = ["oracle", "diagram"])]
    fixture: Option<Fixture>,
    /// Word-length truncation of finite complexes.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    max_word_len: u32,
    /// Degree bound for U-expansions.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    max_u_degree: u32,
    /// Domain multiplicity bound of the torus backend.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    max_multiplicity: u32,
    /// Seed for the random oracles of `check-axioms`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Fuzz the algebra laws over the shipped and random oracles.
    CheckAxioms {
        /// Number of random declarative oracles.
        #[arg(long, default_value_t = 1000)]
        random: usize,
        /// Random instances per law and oracle.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Check end parity of an oracle; without a source, every shipped fixture.
    CheckOracle,
    /// Homology of the closure of some elements (default: all generators).
    Homology {
        /// Seed elements in the element syntax.
        #[arg(long = "element", value_name = "EXPR")]
        elements: Vec<String>,
    },
    /// Reproduce a worked example.
    VerifyExample {
        #[arg(value_enum)]
        example: Example,
    },
    /// Recover the Floer differential of `CF(alpha, beta)` from symbols.
    RecoverCf {
        #[arg(long, default_value = "a")]
        alpha: String,
        #[arg(long, default_value = "b")]
        beta: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Both)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = FlavorArg::Hat)]
        flavor: FlavorArg,
        /// A map symbol whose transport is compared with its evaluation.
        #[arg(long, value_name = "EXPR")]
        map: Option<String>,
    },
    /// Evaluate an element to a map between Floer complexes.
    Ev {
        #[arg(value_name = "EXPR")]
        element: String,
    },
    /// Apply the filtering morphisms and check they commute with the differential.
    Filter {
        #[arg(value_name = "EXPR")]
        element: String,
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    TMl,
    TMm,
    TMmW,
    Triple,
    Ex1,
    Ex2,
    Corrupted,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Ex1,
    Ex2,
    Triangle,
    Floer,
    Filter,
    Recovery,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Homology,
    Cohomology,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Hat,
    KnotHat,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    W,
    U,
    Both,
}

enum Source {
    Torus(TorusOracle),
    Table(DeclarativeOracle),
}

impl Source {
    fn oracle(&self) -> &dyn Oracle {
        match self {
            Source::Torus(o) => o,
            Source::Table(o) => o,
        }
    }
}

fn torus(text: &str, bound: u32) -> symhom::Result<TorusOracle> {
    Ok(TorusOracle::with_bound(TorusDiagram::from_json(text)?, bound))
}

fn read(path: &Path) -> symhom::Result<String> {
    fs::read_to_string(path).map_err(|e| symhom::Error::Parse(format!("{}: {e}", path.display())))
}

impl Opts {
    /// The selected oracle, or `default` when none was given.
    fn source(&self, default: Fixture) -> symhom::Result<Source> {
        if let Some(p) = &self.oracle {
            return Ok(Source::Table(DeclarativeOracle::from_json(&read(p)?)?));
        }
        if let Some(p) = &self.diagram {
            return torus(&read(p)?, self.max_multiplicity).map(Source::Torus);
        }
        let bound = self.max_multiplicity;
        Ok(match self.fixture.unwrap_or(default) {
            Fixture::TMl => Source::Torus(torus(fixtures::T_ML, bound)?),
            Fixture::TMm => Source::Torus(torus(fixtures::T_MM, bound)?),
            Fixture::TMmW => Source::Torus(torus(fixtures::T_MM_W_IN_B1, bound)?),
            Fixture::Triple => Source::Table(fixtures::triple()?),
            Fixture::Ex1 => Source::Table(fixtures::ex1()?),
            Fixture::Ex2 => Source::Table(fixtures::ex2()?),
            Fixture::Corrupted => Source::Table(fixtures::corrupted()?),
        })
    }

    fn selected(&self) -> bool {
        self.oracle.is_some() || self.diagram.is_some() || self.fixture.is_some()
    }
}

fn run(cli: &Cli) -> symhom::Result<Report> {
    let o = &cli.opts;
    let len = o.max_word_len as usize;
    let u = o.max_u_degree;
    match &cli.command {
        Command::CheckAxioms { random, samples } => verify::verify_axioms(*random, *samples, o.seed),
        Command::CheckOracle if !o.selected() => verify::verify_oracles(),
        Command::CheckOracle => {
            let r = check_oracle(o.source(Fixture::Triple)?.oracle())?;
            let mut rep = Report::default();
            rep.push(
                "oracle",
                r.is_clean(),
                format!(
                    "{} spaces, {} ends, {} violations",
                    r.spaces,
                    r.ends,
                    r.violations.len()
                ),
            );
            for v in &r.violations {
                rep.push("oracle.violation", false, v.clone());
            }
            Ok(rep)
        }
        Command::Homology { elements } => {
            let src = o.source(Fixture::TMl)?;
            homology(&Engine::new(src.oracle()), elements, len, u)
        }
        Command::VerifyExample { example } => match example {
            Example::Ex1 => verify::verify_ex1(o.source(Fixture::TMl)?.oracle(), len),
            Example::Ex2 => verify::verify_ex2(o.source(Fixture::TMm)?.oracle(), len.min(3)),
            Example::Triangle => verify::verify_triangle(o.source(Fixture::Triple)?.oracle(), len, u),
            Example::Floer => {
                let bound = o.max_multiplicity;
                verify::verify_floer(&torus(fixtures::T_ML, bound)?, &torus(fixtures::T_MM, bound)?, u)
            }
            Example::Filter => {
                let bound = o.max_multiplicity;
                let mut rep = Report::default();
                for (name, f) in [
                    ("t_ml", Fixture::TMl),
                    ("t_mm", Fixture::TMm),
                    ("t_mm_w", Fixture::TMmW),
                    ("triple", Fixture::Triple),
                ] {
                    rep.extend(verify::verify_filter_commutes(name, o.source(f)?.oracle(), u)?);
                }
                rep.extend(verify::verify_strata(&torus(fixtures::T_MM_W_IN_B1, bound)?, u)?);
                Ok(rep)
            }
            Example::Recovery => {
                let mut rep = verify::verify_recovery("t_ml", o.source(Fixture::TMl)?.oracle())?;
                rep.extend(verify::verify_recovery("t_mm", o.source(Fixture::TMm)?.oracle())?);
                Ok(rep)
            }
        },
        Command::RecoverCf {
            alpha,
            beta,
            variant,
            flavor,
            map,
        } => {
            let src = o.source(Fixture::TMm)?;
            let eng = Engine::new(src.oracle());
            let (a, b) = (Label::new(alpha)?, Label::new(beta)?);
            let flavor = match flavor {
                FlavorArg::Hat => Flavor::Hat,
                FlavorArg::KnotHat => Flavor::KnotHat,
            };
            let variants: &[(Variant, &str)] = match variant {
                VariantArg::Homology => &[(Variant::Homology, "homology")],
                VariantArg::Cohomology => &[(Variant::Cohomology, "cohomology")],
                VariantArg::Both => &[(Variant::Homology, "homology"), (Variant::Cohomology, "cohomology")],
            };
            let mut rep = Report::default();
            for (v, tag) in variants {
                let r = eng.recover_cf(&a, &b, *v, flavor)?;
                rep.push(&format!("recover.{tag}"), r.commutes(), r.to_string());
            }
            if let Some(text) = map {
                let r = eng.recover_map(&eng.parse(text)?)?;
                rep.push("recover.map", r.commutes(), r.to_string());
            }
            Ok(rep)
        }
        Command::Ev { element } => {
            let src = o.source(Fixture::TMm)?;
            let eng = Engine::new(src.oracle());
            let m = eng.ev(&eng.parse(element)?)?;
            let mut rep = Report::default();
            rep.push("ev", !m.is_omega(), m.to_string());
            Ok(rep)
        }
        Command::Filter { element, kind } => {
            let src = o.source(Fixture::TMmW)?;
            let eng = Engine::new(src.oracle());
            let x = eng.parse(element)?;
            let kinds: &[(Transport, &str)] = match kind {
                KindArg::W => &[(Transport::Filter, "w")],
                KindArg::U => &[(Transport::FilterU, "u")],
                KindArg::Both => &[(Transport::Filter, "w"), (Transport::FilterU, "u")],
            };
            let dx = eng.diff(&x)?;
            let mut rep = Report::default();
            for (t, tag) in kinds {
                let fx = eng.transport(&x, *t, u)?;
                let lhs = eng.transport(&dx, *t, u)?;
                let rhs = eng.diff(&fx)?;
                rep.push(
                    &format!("filter.{tag}"),
                    lhs == rhs,
                    format!("image {fx}; d of image {rhs}"),
                );
            }
            Ok(rep)
        }
    }
}

fn homology(eng: &Engine, elements: &[String], len: usize, u: u32) -> symhom::Result<Report> {
    let seeds: Vec<Element> = if elements.is_empty() {
        verify::fixture_generators(eng)?
            .iter()
            .filter(|g| g.space().dimension() == 0)
            .map(|g| eng.generator(g))
            .collect::<symhom::Result<_>>()?
    } else {
        elements.iter().map(|e| eng.parse(e)).collect::<symhom::Result<_>>()?
    };
    let seeds: Vec<Element> = seeds.into_iter().filter(|x| !x.is_zero()).collect();
    let c = FiniteComplex::closure(eng, &seeds, len, u)?;
    let mut rep = Report::default();
    rep.push(
        "homology.closure",
        c.squares_to_zero(),
        format!(
            "{} seeds, {} basis terms, rank of d {}",
            seeds.len(),
            c.len(),
            c.rank_d()
        ),
    );
    let classes: Vec<String> = c.homology_basis().iter().map(ToString::to_string).collect();
    rep.push(
        "homology.rank",
        true,
        format!("{} classes: {}", classes.len(), classes.join(", ")),
    );
    Ok(rep)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rep) => {
            let text = rep.to_string();
            print!("{text}");
            if let Some(p) = &cli.opts.out {
                if let Err(e) = fs::write(p, &text) {
                    eprintln!("error: {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            }
            if rep.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
