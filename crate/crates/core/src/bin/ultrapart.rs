use std::fmt::Display;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ultrapart::filter::{all_ultrafilters, is_principal};
use ultrapart::partition::{
    noncompactness_escape, prime_residue_family, witness_coarse_orthogonal, witness_fine_orthogonal,
};
use ultrapart::semilattice::Splitting;
use ultrapart::stone::framework_report;
use ultrapart::table::{corpus_report, verification_table};
use ultrapart::{
    Complementation, EpPartition, Error, Format, Report, ScMeet, ScPartition, Semilattice, Side,
    StoneSpace,
};

#[derive(Parser)]
#[command(
    name = "ultrapart",
    version,
    about = "Ultrafilter spaces and partition lattices, computed exactly"
)]
struct Cli {
    /// Output layout.
    #[arg(long, value_enum, default_value_t = OutFormat::Text, global = true)]
    format: OutFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Mode {
    Coarse,
    Fine,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Pos,
    Neg,
}

#[derive(Subcommand)]
enum Command {
    /// Finite semilattices and their ultrafilter spaces.
    #[command(subcommand)]
    Lat(LatCommand),
    /// Partitions with finitely many blocks (`ep;prefix=…;period=…`).
    #[command(subcommand)]
    Part(PartCommand),
    /// Column partitions with infinitely many blocks (`sc;runs=…;periodic=…`).
    #[command(subcommand)]
    Pinf(PinfCommand),
    /// Finite-analogue verification table.
    Table {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum LatCommand {
    /// Validate a semilattice file and print its basic structure.
    Check { file: String },
    /// List ultrafilters with their generators.
    Ultrafilters { file: String },
    /// Build the positive or negative space and check its properties.
    Stone {
        file: String,
        #[arg(long, value_enum, default_value_t = SideArg::Pos)]
        side: SideArg,
    },
    /// Check the general ultrafilter-space facts on one semilattice.
    Framework { file: String },
    /// Run the framework checks on every semilattice up to a size.
    Corpus {
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
}

#[derive(Subcommand)]
enum PartCommand {
    /// Meet in the chosen order (coarse: finest common coarsening).
    Meet {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = Mode::Coarse)]
        mode: Mode,
    },
    /// Join in the chosen order (coarse: coarsest common refinement).
    Join {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = Mode::Coarse)]
        mode: Mode,
    },
    /// A below B in the chosen order (coarse: A is coarser than B).
    Leq {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = Mode::Coarse)]
        mode: Mode,
    },
    /// Orthogonality in the chosen order.
    Orth {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = Mode::Coarse)]
        mode: Mode,
    },
    /// Glue all blocks meeting {0,…,N-1}.
    Glue { a: String, n: usize },
    /// Block minima.
    Mmins { a: String },
    /// The N-th block by increasing minimum.
    Block {
        a: String,
        n: usize,
        #[arg(long, default_value_t = 8)]
        show: usize,
    },
    /// A 2-block partition orthogonal to every input.
    Witness {
        #[arg(long, value_enum)]
        mode: Mode,
        parts: Vec<String>,
    },
    /// Residue partitions modulo the first K primes.
    Primes { k: usize },
    /// Escape certificate: no finite subfamily of basic opens covers.
    DemoNoncompact { parts: Vec<String> },
}

#[derive(Subcommand)]
enum PinfCommand {
    /// Finest common coarsening.
    Meet {
        a: String,
        b: String,
        #[arg(long)]
        show_cuts: Option<usize>,
    },
    /// A is coarser than B.
    Leq { a: String, b: String },
    /// Least n with glue(A, n) coarser than B, or `absent`.
    Leqstar { a: String, b: String },
    /// Coarse orthogonality.
    Orth { a: String, b: String },
    /// Glue all blocks meeting {0,…,N-1}.
    Glue {
        a: String,
        n: u64,
        #[arg(long)]
        show_cuts: Option<usize>,
    },
    /// The first COUNT block minima.
    Mmins {
        a: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// The N-th block by increasing minimum.
    Block { a: String, n: usize },
    /// Canonical form and the first K cuts.
    Cuts { a: String, k: usize },
}

/// Collects output lines; key/value pairs are rendered per format.
struct Out {
    format: Format,
    lines: Vec<String>,
}

impl Out {
    fn kv(&mut self, key: &str, value: impl Display) {
        let value = value.to_string();
        self.lines.push(match (self.format, value.is_empty()) {
            (_, true) => key.to_string(),
            (Format::Text, false) => format!("{key} {value}"),
            (Format::Tsv, false) => format!("{key}\t{value}"),
        });
    }

    fn line(&mut self, value: impl Display) {
        self.lines.push(value.to_string());
    }

    fn report(&mut self, r: &Report) {
        self.lines
            .extend(r.render(self.format).lines().map(str::to_string));
    }
}

fn read_arg(arg: &str) -> Result<String, Error> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Error::Syntax {
                line: 0,
                message: format!("{path}: {e}"),
            }),
        None => Ok(arg.to_string()),
    }
}

fn ep(arg: &str) -> Result<EpPartition, Error> {
    read_arg(arg)?.parse()
}

fn sc(arg: &str) -> Result<ScPartition, Error> {
    read_arg(arg)?.parse()
}

fn lattice(path: &str) -> Result<Semilattice, Error> {
    let path = path.strip_prefix('@').unwrap_or(path);
    let text = fs::read_to_string(path).map_err(|e| Error::Syntax {
        line: 0,
        message: format!("{path}: {e}"),
    })?;
    Semilattice::parse(&text)
}

fn show_cuts(out: &mut Out, p: &ScPartition, k: Option<usize>) {
    if let Some(k) = k {
        let cuts: Vec<String> = p.cuts().take(k).map(|c| c.to_string()).collect();
        out.kv("cuts", cuts.join(","));
    }
}

/// Runs a command; `Ok(code)` is 0 or 1 depending on FAIL lines.
fn run(cli: Cli, out: &mut Out) -> Result<u8, Error> {
    let mut code = 0;
    match cli.command {
        Command::Lat(cmd) => match cmd {
            LatCommand::Check { file } => {
                let l = lattice(&file)?;
                out.kv("elements", l.len());
                out.kv("zero", l.name(l.zero()));
                let atoms: Vec<&str> = l.atoms().into_iter().map(|a| l.name(a)).collect();
                out.kv("atoms", atoms.join(","));
                match l.downward_splitting() {
                    Splitting::Splits { .. } => out.kv("downward_splitting", "true"),
                    Splitting::Violated { element } => out.kv(
                        "downward_splitting",
                        format!("false violator={}", l.name(element)),
                    ),
                }
                match l.complementation() {
                    Complementation::Present(map) => {
                        let pairs: Vec<String> = l
                            .elements()
                            .map(|x| format!("{}->{}", l.name(x), l.name(map.apply(x))))
                            .collect();
                        out.kv("complemented", format!("true {}", pairs.join(",")));
                    }
                    Complementation::Absent { element, reason } => out.kv(
                        "complemented",
                        format!("false at={} ({reason})", l.name(element)),
                    ),
                }
            }
            LatCommand::Ultrafilters { file } => {
                let l = lattice(&file)?;
                for u in all_ultrafilters(&l)? {
                    let generator = is_principal(&l, &u).map_or("none", |g| l.name(g));
                    out.kv(
                        "ultrafilter",
                        format!("{} generator={generator}", u.render(&l)),
                    );
                }
            }
            LatCommand::Stone { file, side } => {
                let l = lattice(&file)?;
                let side = match side {
                    SideArg::Pos => Side::Pos,
                    SideArg::Neg => Side::Neg,
                };
                let s = StoneSpace::generate(&l, side)?;
                out.kv("side", side);
                for (i, p) in s.points().iter().enumerate() {
                    out.kv(&format!("p{i}"), p.render(&l));
                }
                out.kv("opens", s.opens().len());
                let r = s.property_report();
                out.report(&r);
            }
            LatCommand::Framework { file } => {
                let r = framework_report(&lattice(&file)?);
                out.report(&r);
                code = r.exit_code() as u8;
            }
            LatCommand::Corpus { max_size } => {
                let r = corpus_report(max_size)?;
                out.report(&r);
                code = r.exit_code() as u8;
            }
        },

        Command::Part(cmd) => match cmd {
            PartCommand::Meet { a, b, mode } => {
                let (a, b) = (ep(&a)?, ep(&b)?);
                match mode {
                    Mode::Coarse => out.line(a.coarse_meet(&b)),
                    Mode::Fine => out.line(a.fine_join(&b)),
                }
            }
            PartCommand::Join { a, b, mode } => {
                let (a, b) = (ep(&a)?, ep(&b)?);
                match mode {
                    Mode::Coarse => out.line(a.fine_join(&b)),
                    Mode::Fine => out.line(a.coarse_meet(&b)),
                }
            }
            PartCommand::Leq { a, b, mode } => {
                let (a, b) = (ep(&a)?, ep(&b)?);
                out.line(match mode {
                    Mode::Coarse => a.is_coarser(&b),
                    Mode::Fine => b.is_coarser(&a),
                });
            }
            PartCommand::Orth { a, b, mode } => {
                let (a, b) = (ep(&a)?, ep(&b)?);
                out.line(match mode {
                    Mode::Coarse => a.orth_coarse(&b),
                    Mode::Fine => a.orth_fine(&b),
                });
            }
            PartCommand::Glue { a, n } => out.line(ep(&a)?.glue_below(n)?),
            PartCommand::Mmins { a } => {
                let mins: Vec<String> = ep(&a)?.mmins().iter().map(|m| m.to_string()).collect();
                out.line(mins.join(","));
            }
            PartCommand::Block { a, n, show } => {
                let p = ep(&a)?;
                let b = p.nth_block(n)?;
                out.kv("color", b.color());
                out.kv("min", b.min());
                let members: Vec<String> = b.members().take(show).map(|m| m.to_string()).collect();
                out.kv("members", format!("{},...", members.join(",")));
            }
            PartCommand::Witness { mode, parts } => {
                let xs = parts.iter().map(|p| ep(p)).collect::<Result<Vec<_>, _>>()?;
                match mode {
                    Mode::Coarse => {
                        let y = witness_coarse_orthogonal(&xs)?;
                        out.kv("witness", &y);
                        for (i, x) in xs.iter().enumerate() {
                            let ok = y.orth_coarse(x);
                            code |= u8::from(!ok);
                            out.kv(&format!("orth_coarse X{i}"), ok);
                        }
                    }
                    Mode::Fine => {
                        let w = witness_fine_orthogonal(&xs)?;
                        out.kv("witness", &w.witness);
                        for (c, x) in w.certificates.iter().zip(&xs) {
                            let ok = w.witness.orth_fine(x) && !c.block.is_empty();
                            code |= u8::from(!ok);
                            let block: Vec<String> =
                                c.block.iter().map(|m| m.to_string()).collect();
                            out.kv(
                                &format!("certificate X{}", c.index),
                                format!("point={} block={{{}}}", c.point, block.join(",")),
                            );
                        }
                    }
                }
            }
            PartCommand::Primes { k } => {
                for p in prime_residue_family(k)? {
                    out.line(p);
                }
            }
            PartCommand::DemoNoncompact { parts } => {
                let xs = parts.iter().map(|p| ep(p)).collect::<Result<Vec<_>, _>>()?;
                let cert = noncompactness_escape(&xs)?;
                for l in cert.lines() {
                    out.line(l);
                }
                code = u8::from(!cert.holds());
            }
        },

        Command::Pinf(cmd) => match cmd {
            PinfCommand::Meet { a, b, show_cuts: k } => {
                let m = sc(&a)?.coarse_meet(&sc(&b)?);
                out.line(&m);
                if let ScMeet::Partition(p) = &m {
                    show_cuts(out, p, k);
                }
            }
            PinfCommand::Leq { a, b } => out.line(sc(&a)?.is_coarser(&sc(&b)?)),
            PinfCommand::Leqstar { a, b } => match sc(&a)?.leq_star(&sc(&b)?) {
                Some(n) => out.line(n),
                None => out.line("absent"),
            },
            PinfCommand::Orth { a, b } => out.line(sc(&a)?.orth_coarse(&sc(&b)?)),
            PinfCommand::Glue { a, n, show_cuts: k } => {
                let g = sc(&a)?.glue_below(n);
                out.line(&g);
                show_cuts(out, &g, k);
            }
            PinfCommand::Mmins { a, count } => {
                let p = sc(&a)?;
                let mins: Vec<String> = p.mmins().take(count).map(|m| m.to_string()).collect();
                out.line(mins.join(","));
            }
            PinfCommand::Block { a, n } => {
                let b = sc(&a)?.nth_block(n);
                out.kv("columns", format!("{}..{}", b.first_column, b.end_column));
                out.kv("min", b.min());
            }
            PinfCommand::Cuts { a, k } => {
                let p = sc(&a)?;
                out.line(&p);
                show_cuts(out, &p, Some(k));
            }
        },

        Command::Table { seed } => {
            let t = verification_table(seed);
            out.report(&t);
            code = t.exit_code() as u8;
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutFormat::Text => Format::Text,
        OutFormat::Tsv => Format::Tsv,
    };
    let mut out = Out {
        format,
        lines: Vec::new(),
    };
    match run(cli, &mut out) {
        Ok(code) => {
            for l in &out.lines {
                println!("{l}");
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
