use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use reflchar::groups::{classify, parse_group, GroupId};
use reflchar::report::compute_report;
use reflchar::verify::verify_family;

#[derive(Parser)]
#[command(name = "reflchar", version, about = "Equivariant Euler characteristics of discriminant Milnor fibres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one group: degrees, poset, coefficients, chi,
    /// classifier, and Euler characteristics of the quotients.
    Compute {
        /// Group spec, e.g. "G(4,2,3)" or "G37".
        group: String,
        /// Ambient cyclic order (defaults to the discriminant degree).
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Tabulate chi for the exceptional groups or an r,l-range of the
    /// infinite family.
    Sweep {
        /// All irreducible exceptional groups G4..G37.
        #[arg(long, conflicts_with = "family")]
        exceptionals: bool,
        /// Bounds RMAX LMAX for G(r,p,l) with r <= RMAX, l <= LMAX.
        #[arg(long, num_args = 2, value_names = ["RMAX", "LMAX"])]
        family: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cross-check the formulas against brute-force enumeration.  Exit
    /// status is the number of failed checks, capped at 125.
    Verify {
        /// Skip groups with more elements than this.
        #[arg(long, default_value_t = 20000)]
        cap: u128,
        /// Bounds RMAX LMAX for the family sweep.
        #[arg(long, num_args = 2, value_names = ["RMAX", "LMAX"])]
        family: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<u8, reflchar::Error> {
    match cli.command {
        Command::Compute { group, m, format } => {
            let report = compute_report(&group, m)?;
            match format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                ),
            }
            Ok(0)
        }
        Command::Sweep {
            exceptionals,
            family,
            format,
        } => {
            let groups: Vec<GroupId> = if exceptionals {
                (4..=37).map(|n| GroupId::Exceptional { n }).collect()
            } else if let Some(bounds) = family {
                let (rmax, lmax) = (bounds[0], bounds[1]);
                let mut groups = Vec::new();
                for r in 1..=rmax {
                    for p in (1..=r).filter(|p| r % p == 0) {
                        for l in 1..=lmax {
                            let g = GroupId::Infinite { r, p, l };
                            if classify(g)?.irreducible {
                                groups.push(g);
                            }
                        }
                    }
                }
                groups
            } else {
                eprintln!("sweep requires --exceptionals or --family RMAX LMAX");
                return Ok(1);
            };
            let mut reports = Vec::new();
            for g in groups {
                reports.push(compute_report(&g.to_string(), None)?);
            }
            match format {
                Format::Text => {
                    if exceptionals {
                        // G3 = G(r,1,1) has chi = I_r for every r; emit the
                        // symbolic row so the table matches the rank-2 figure.
                        println!("G3 Ir");
                    }
                    for r in &reports {
                        println!("{} {}", r.group, r.chi);
                    }
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&reports).expect("serializable")
                ),
            }
            Ok(0)
        }
        Command::Verify { cap, family, format } => {
            let (rmax, lmax) = match family {
                Some(bounds) => (bounds[0], bounds[1]),
                None => (12, 8),
            };
            let report = verify_family(rmax, lmax, cap)?;
            if report.groups.is_empty() {
                eprintln!("warning: no groups within cap");
            }
            match format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                ),
            }
            Ok(report.failures().min(125) as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // Exercise the parser early so usage errors exit with status 1.
    if let Command::Compute { group, .. } = &cli.command {
        if parse_group(group).is_err() {
            eprintln!("error: unrecognized group spec {group:?}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
