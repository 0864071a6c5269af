use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ellft::catalog::{dual_indices, Catalog, Leading};
use ellft::chartab::CharTable;
use ellft::verify::{run, CheckKind, Filter};

// stdout writes that end quietly when the reader goes away (e.g. `| head`)
fn out(args: std::fmt::Arguments) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

macro_rules! print {
    ($($t:tt)*) => { out(format_args!($($t)*)) };
}

macro_rules! println {
    () => { out(format_args!("\n")) };
    ($($t:tt)*) => {{ out(format_args!($($t)*)); out(format_args!("\n")) }};
}

#[derive(Parser)]
#[command(name = "ellft", version, about = "Check Fourier duality of elliptic restrictions against a catalog")]
struct Cli {
    /// Catalog JSON file (defaults to the built-in catalog)
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Main,
    Zeta,
    Selfdual,
    Counts,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a labelled character table
    Chartab {
        /// A family group (1, C2, S3, S4, S5) or a finite group of the catalog
        group: String,
    },
    /// Print the Fourier matrix of a family
    Ft { family: String },
    /// List the elliptic pairs of a unipotent class
    Pairs {
        #[arg(long)]
        group: String,
        #[arg(long)]
        unipotent: String,
    },
    /// Run checks and print a report
    Verify {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        unipotent: Option<String>,
        #[arg(long, value_enum, default_value = "all")]
        check: CheckArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Accept partial results (each is still listed)
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        allow_partial: bool,
    },
}

fn print_table(t: &CharTable) {
    let g = t.group();
    let head: Vec<String> = (0..g.num_classes()).map(|c| g.class_name(c)).collect();
    let rows: Vec<(String, Vec<String>)> = (0..t.num_chars())
        .map(|i| {
            let vals = (0..g.num_classes()).map(|c| t.value(i, c).to_string()).collect();
            (t.char_name(i), vals)
        })
        .collect();
    let w = head
        .iter()
        .chain(rows.iter().flat_map(|r| r.1.iter()))
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1);
    let nw = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(1).max(4);
    print!("{:nw$}", "");
    for h in &head {
        print!(" {h:>w$}");
    }
    println!();
    for (name, vals) in rows {
        print!("{name:nw$}");
        for v in vals {
            print!(" {v:>w$}");
        }
        println!();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cat = match &cli.catalog {
        Some(p) => Catalog::load(p),
        None => Catalog::builtin(),
    };
    let cat = match cat {
        Ok(c) => c,
        Err(e) => {
            eprintln!("catalog error: {e}");
            return ExitCode::from(3);
        }
    };
    match cli.cmd {
        Cmd::Chartab { group } => {
            if let Some(st) = cat.structures.get(&group) {
                print_table(&st.blocks()[0].table);
            } else if let Some(t) = cat.finite_groups.get(&group).and_then(|f| f.table.as_ref()) {
                print_table(t);
            } else {
                eprintln!("no character table for {group:?}");
                return ExitCode::from(2);
            }
        }
        Cmd::Ft { family } => match cat.families.get(&family) {
            Some(f) => print!("{f}"),
            None => {
                eprintln!("unknown family {family:?}");
                return ExitCode::from(2);
            }
        },
        Cmd::Pairs { group, unipotent } => {
            let Some(u) = cat.unipotent(&group, &unipotent) else {
                eprintln!("unknown unipotent class {group}/{unipotent}");
                return ExitCode::from(2);
            };
            println!(
                "{}/{}: A_u = {}, family {}, {} pairs ({:?})",
                u.group,
                u.label,
                u.component_group,
                u.family,
                u.pair_count,
                u.count_rule
            );
            let duals = match dual_indices(&cat, u) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("catalog error: {e}");
                    return ExitCode::from(3);
                }
            };
            for (p, d) in u.pairs.iter().zip(duals) {
                let dual = d
                    .map(|j| format!("({},{})", u.pairs[j].s, u.pairs[j].h))
                    .unwrap_or_else(|| "?".into());
                let lead = match &p.leading {
                    Some(Leading::Family { family, x, y }) => format!("σ({family};{x},{y})"),
                    Some(Leading::Singleton(s)) => s.clone(),
                    None => "-".into(),
                };
                println!(
                    "  ({},{})  dual {dual}  {}  torus dim {}  leading {lead}",
                    p.s,
                    p.h,
                    if p.split { "split" } else { "non-split" },
                    p.torus_dim
                );
            }
        }
        Cmd::Verify {
            group,
            unipotent,
            check,
            format,
            allow_partial,
        } => {
            let kind = match check {
                CheckArg::Main => CheckKind::Main,
                CheckArg::Zeta => CheckKind::Zeta,
                CheckArg::Selfdual => CheckKind::SelfDual,
                CheckArg::Counts => CheckKind::Counts,
                CheckArg::All => CheckKind::All,
            };
            let rep = run(&cat, kind, &Filter { group, unipotent });
            match format {
                Format::Text => print!("{}", rep.to_text()),
                Format::Json => println!("{}", rep.to_json()),
            }
            if !rep.ok(allow_partial) {
                return ExitCode::from(1);
            }
        }
    }
    ExitCode::SUCCESS
}
