//! Command-line surface: curve-file parsing, subcommand dispatch, and
//! text/JSON output.

pub mod output;
pub mod parse;

use crate::error::{Error, Result};
use crate::funcfield::{RatFnField, XPoly};
use crate::localdim::{classify_reduction, local_dim_from_info};
use crate::modl::classify;
use crate::report::{build_report, torsion_sanity};
use clap::{Args, Parser, Subcommand};
use output::*;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "vchow",
    about = "Local and global mod-l invariants of elliptic curves over F_q(t)",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Curve input file.
    file: PathBuf,
    /// Emit one JSON document instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print c4, c6, the discriminant and j, with factorizations.
    Invariants {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// List the bad places with their reduction types.
    Places {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Reduction data and the local dimension at one place.
    Local {
        #[command(flatten)]
        common: CommonArgs,
        /// A monic irreducible polynomial in t, or `inf`.
        #[arg(long)]
        place: String,
        /// The prime l (distinct from the characteristic).
        #[arg(long)]
        l: u64,
        /// Exit with code 5 if the result is not a point value.
        #[arg(long)]
        require_known: bool,
    },
    /// Rational l-torsion rank and points.
    Torsion {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        l: u64,
    },
    /// Mod-l Galois image classification.
    Classify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        l: u64,
        /// Candidate kernel polynomial in x (verified, may repeat).
        #[arg(long)]
        kernel: Vec<String>,
        #[arg(long)]
        require_known: bool,
    },
    /// Full global report: local dims, coinvariants, kernel/cokernel.
    Report {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        l: u64,
        /// Candidate kernel polynomial in x (verified, may repeat).
        #[arg(long)]
        kernel: Vec<String>,
        #[arg(long)]
        require_known: bool,
        /// Append the torsion-structure sanity advisory.
        #[arg(long)]
        sanity: bool,
    },
}

fn load_curve(path: &PathBuf) -> Result<(RatFnField, crate::curve::GlobalCurve)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        col: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    parse::parse_curve(&text)
}

fn parse_kernels(kernels: &[String], k: &RatFnField) -> Result<Vec<XPoly>> {
    kernels
        .iter()
        .map(|s| parse::eval_xpoly(&parse::parse_expression(s)?, k))
        .collect()
}

fn emit<T: serde::Serialize>(json: bool, dto: &T, human: impl FnOnce() -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(dto).expect("serializable")
        );
    } else {
        print!("{}", human());
    }
}

/// Run a parsed command line; the return value is the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Invariants { common } => {
            let (_, c) = load_curve(&common.file)?;
            let dto = InvariantsDto::new(&c)?;
            emit(common.json, &dto, || {
                format!(
                    "curve: {}\nc4   = {}\nc6   = {}\ndisc = {}\nj    = {}\n",
                    dto.curve.equation, dto.c4_factored, dto.c6, dto.disc_factored, dto.j_factored
                )
            });
            Ok(0)
        }
        Command::Places { common } => {
            let (_, c) = load_curve(&common.file)?;
            let places = crate::curve::bad_places(&c)?;
            let mut dtos = Vec::new();
            let mut infinity_is_bad = false;
            for place in &places {
                if place.is_infinity() {
                    infinity_is_bad = true;
                }
                let info = classify_reduction(&c, place)?;
                dtos.push(PlaceDto::new(&info, None, None)?);
            }
            let dto = PlacesDto {
                curve: CurveDto::new(&c),
                bad_places: dtos,
                infinity_is_bad,
            };
            emit(common.json, &dto, || {
                let mut out = format!("curve: {}\nbad places:\n", dto.curve.equation);
                for p in &dto.bad_places {
                    out.push_str(&human_place_line(p));
                    out.push('\n');
                }
                if dto.bad_places.is_empty() {
                    out.push_str("  (none; the curve has everywhere good reduction)\n");
                }
                out
            });
            Ok(0)
        }
        Command::Local {
            common,
            place,
            l,
            require_known,
        } => {
            let (k, c) = load_curve(&common.file)?;
            check_l(&k, l)?;
            let place = parse::parse_place(&place, &k)?;
            let info = classify_reduction(&c, &place)?;
            let dim = local_dim_from_info(&info, l)?;
            let dto = PlaceDto::new(&info, Some(l), Some(&dim.verdict))?;
            let known = dto
                .local_dim
                .as_ref()
                .map(|d| d.is_known())
                .unwrap_or(false);
            emit(common.json, &dto, || {
                let mut out = format!(
                    "place {} (degree {}, residue order {}):\n",
                    dto.place, dto.degree, dto.residue_order
                );
                out.push_str(&format!("  reduction: {}\n", dto.reduction_type));
                out.push_str(&format!(
                    "  v(disc) = {}, v(c4) = {}, v(j) = {}\n",
                    dto.vdisc,
                    dto.vc4.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                    dto.vj.map(|v| v.to_string()).unwrap_or_else(|| "-".into())
                ));
                if let (Some(gv), Some(gl)) = (&dto.gamma_valuation, &dto.gamma_leading) {
                    out.push_str(&format!("  gamma = -c4/c6: valuation {gv}, leading {gl}\n"));
                }
                if let (Some(vq), Some(ql)) = (&dto.tate_vq, &dto.tate_q_leading) {
                    out.push_str(&format!(
                        "  Tate parameter: v(q) = {vq}, leading {ql}, l-th power: {}\n",
                        dto.tate_lth_power
                            .map(|b| b.to_string())
                            .unwrap_or_else(|| "-".into())
                    ));
                }
                if let Some(d) = &dto.local_dim {
                    out.push_str(&format!("  dim V(E_v)/{} = {}\n", l, dim_str(d)));
                }
                out
            });
            Ok(if require_known && !known { 5 } else { 0 })
        }
        Command::Torsion { common, l } => {
            let (k, c) = load_curve(&common.file)?;
            check_l(&k, l)?;
            let tor = crate::modl::rational_l_torsion(&c, l)?;
            let dto = TorsionDto {
                l,
                rank: tor.rank,
                points: tor
                    .points
                    .iter()
                    .filter_map(|p| p.xy())
                    .map(|(x, y)| PointDto {
                        x: x.to_string(),
                        y: y.to_string(),
                    })
                    .collect(),
            };
            emit(common.json, &dto, || {
                let mut out = format!("rational {l}-torsion rank: {}\n", dto.rank);
                for p in &dto.points {
                    out.push_str(&format!("  ({}, {})\n", p.x, p.y));
                }
                out
            });
            Ok(0)
        }
        Command::Classify {
            common,
            l,
            kernel,
            require_known,
        } => {
            let (k, c) = load_curve(&common.file)?;
            check_l(&k, l)?;
            let extra = parse_kernels(&kernel, &k)?;
            let cls = classify(&c, l, &extra)?;
            let dto = ClassDto::new(&cls);
            let known = dto.coinvariant_dim.is_known();
            emit(common.json, &dto, || {
                let mut out = format!(
                    "case = {}, torsion rank = {}, chi trivial = {}, search complete = {}\n",
                    dto.case, dto.torsion_rank, dto.chi_trivial, dto.isogeny_search_complete
                );
                for iso in &dto.isogenies {
                    out.push_str(&format!("  isogeny kernel: {}\n", iso.kernel_poly));
                }
                out.push_str(&format!(
                    "dim E[{l}]_G = {}\n",
                    dim_str(&dto.coinvariant_dim)
                ));
                for n in &dto.notes {
                    out.push_str(&format!("note: {n}\n"));
                }
                out
            });
            Ok(if require_known && !known { 5 } else { 0 })
        }
        Command::Report {
            common,
            l,
            kernel,
            require_known,
            sanity,
        } => {
            let (k, c) = load_curve(&common.file)?;
            check_l(&k, l)?;
            let extra = parse_kernels(&kernel, &k)?;
            let report = build_report(&c, l, &extra)?;
            let sanity_report = if sanity {
                Some(torsion_sanity(&c)?)
            } else {
                None
            };
            let dto = ReportDto::new(&report, sanity_report.as_ref())?;
            let known = dto.ker_dim.is_known() && dto.coker_dim.is_known();
            emit(common.json, &dto, || human_report(&dto));
            Ok(if require_known && !known { 5 } else { 0 })
        }
    }
}

fn check_l(k: &RatFnField, l: u64) -> Result<()> {
    let p = k.base().p();
    if l == p {
        return Err(Error::LEqualsCharacteristic { l });
    }
    if l < 2 || (2..l).take_while(|d| d * d <= l).any(|d| l % d == 0) {
        return Err(Error::NotPrime(l));
    }
    Ok(())
}

/// Entry point used by the binary: returns the process exit code and
/// prints errors (JSON mode prints a structured error object).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = args.into_iter().map(|a| a.into()).collect();
    let json_mode = argv.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap usage errors
            let _ = e.print();
            return 2;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code_for(&e);
            if json_mode {
                let dto = ErrorDto {
                    error: ErrorBody {
                        kind: error_kind(&e),
                        message: e.to_string(),
                        exit_code: code,
                    },
                };
                println!(
                    "{}",
                    serde_json::to_string_pretty(&dto).expect("serializable")
                );
            } else {
                eprintln!("error: {e}");
            }
            code
        }
    }
}
