//! Command-line front end: parse a quiver and element expressions, run the
//! algebra operations and verification suites, and print text, JSON, or
//! DOT.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports failures,
//! 2 on usage or parse errors.

use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use necklace_algebra::coloring::coproduct;
use necklace_algebra::envelope;
use necklace_algebra::heightlink::{
    n_product, nelement_to_string, normalize, parse_nelement_raw, Link,
};
use necklace_algebra::maps;
use necklace_algebra::necklace::{
    cobracket_lin, bracket_lin, lelement_to_string, parse_lelement,
};
use necklace_algebra::quiver::Quiver;
use necklace_algebra::scalars::LinComb;
use necklace_algebra::verify::{run as run_suite, Suite};

#[derive(Parser)]
#[command(
    name = "necklace",
    version,
    about = "Exact computations in the necklace Lie bialgebra of a quiver \
             and its two-parameter link quantization"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lie bracket of two combinations of necklaces.
    Bracket {
        /// Path to a quiver description file.
        #[arg(long)]
        quiver: PathBuf,
        /// First operand, e.g. "a a*".
        x: String,
        /// Second operand, e.g. "b* b a* a*".
        y: String,
    },
    /// Lie cobracket of a combination of necklaces.
    Cobracket {
        #[arg(long)]
        quiver: PathBuf,
        /// Operand, e.g. "a a*" or "[v1]".
        x: String,
    },
    /// Product of two link combinations, in standard height form.
    NqMul {
        #[arg(long)]
        quiver: PathBuf,
        /// First operand, e.g. "(a,1)(a*,2)".
        x: String,
        /// Second operand.
        y: String,
    },
    /// n-fold coproduct of a link combination, one term per line as
    /// `coeff : part1 | part2 | ...`.
    NqCoproduct {
        #[arg(long)]
        quiver: PathBuf,
        /// Number of output slots.
        #[arg(long, default_value_t = 2)]
        n: u32,
        x: String,
    },
    /// Rewrite a raw link combination into standard height form.
    Normalize {
        #[arg(long)]
        quiver: PathBuf,
        x: String,
    },
    /// Apply one of the structure maps to a link combination.
    Map {
        #[arg(long)]
        quiver: PathBuf,
        /// Which map to apply.
        #[arg(long, value_enum)]
        which: Which,
        x: String,
    },
    /// Run a seeded property suite and print a JSON report.
    Verify {
        /// Suite name: lie-bialgebra, nq-bialgebra, quantization,
        /// coquantization, diagram, confluence, or schedler-h1.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Edge budget for randomly generated elements.
        #[arg(long, default_value_t = 8)]
        max_edges: usize,
    },
    /// Print a DOT rendering of the double quiver or of a link.
    EmitDot {
        #[arg(long)]
        quiver: PathBuf,
        /// What to draw.
        what: DotKind,
        /// The link to draw (required with `link`), e.g. "(a,1)(a*,2)".
        x: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    /// Collapse a standard link to its underlying necklace (single knots
    /// and lone vertices; everything else to 0).
    Q,
    /// Expansion into the tensor coalgebra, `J`.
    #[value(name = "J", alias = "j")]
    J,
    /// Reduction to the enveloping algebra (split parameter to 0).
    #[value(name = "p_h")]
    PH,
    /// Reduction to the symmetric coalgebra (join parameter to 0).
    #[value(name = "p_hbar")]
    PHbar,
    /// Full classical reduction (both parameters to 0).
    P,
    /// Classical reduction of the symmetric-coalgebra image.
    #[value(name = "q_h")]
    QH,
    /// Classical reduction of the enveloping-algebra image.
    #[value(name = "q_hbar")]
    QHbar,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_quiver(path: &PathBuf) -> necklace_algebra::Result<Quiver> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        necklace_algebra::Error::Parse(format!("reading {}: {e}", path.display()))
    })?;
    Quiver::parse(&text)
}

/// Write one line to stdout; when the reader has gone away (e.g. piped into
/// `head`), leave quietly instead of panicking mid-pipeline.
fn emit(line: &str) {
    use std::io::Write;
    if writeln!(std::io::stdout(), "{line}").is_err() {
        std::process::exit(0);
    }
}

fn dispatch(cmd: Cmd) -> necklace_algebra::Result<ExitCode> {
    match cmd {
        Cmd::Bracket { quiver, x, y } => {
            let q = load_quiver(&quiver)?;
            let a = parse_lelement(&q, &x)?;
            let b = parse_lelement(&q, &y)?;
            emit(&lelement_to_string(&q, &bracket_lin(&q, &a, &b)?));
        }
        Cmd::Cobracket { quiver, x } => {
            let q = load_quiver(&quiver)?;
            let a = parse_lelement(&q, &x)?;
            let out = cobracket_lin(&q, &a)?;
            emit(&out.display_with(|(l, r)| {
                format!("{} (x) {}", l.display(&q), r.display(&q))
            }));
        }
        Cmd::NqMul { quiver, x, y } => {
            let q = load_quiver(&quiver)?;
            let a = parse_nelement_raw(&q, &x)?;
            let b = parse_nelement_raw(&q, &y)?;
            emit(&nelement_to_string(&q, &n_product(&q, &a, &b)?));
        }
        Cmd::NqCoproduct { quiver, n, x } => {
            let q = load_quiver(&quiver)?;
            let a = parse_nelement_raw(&q, &x)?;
            for (slots, c) in coproduct(&q, &a, n)?.iter() {
                let row = slots.iter().map(|l| l.display(&q)).collect::<Vec<_>>().join(" | ");
                emit(&format!("{c} : {row}"));
            }
        }
        Cmd::Normalize { quiver, x } => {
            let q = load_quiver(&quiver)?;
            let a = parse_nelement_raw(&q, &x)?;
            emit(&nelement_to_string(&q, &normalize(&q, &a)?));
        }
        Cmd::Map { quiver, which, x } => {
            let q = load_quiver(&quiver)?;
            let a = parse_nelement_raw(&q, &x)?;
            let a = normalize(&q, &a)?;
            let printed = match which {
                Which::Q => lelement_to_string(&q, &maps::q_map(&q, &a)?),
                Which::J => {
                    maps::j_map(&q, &a)?.display_with(|w| w.display(&q))
                }
                Which::PH => {
                    maps::p_h_map(&q, &a)?.display_with(|w| w.display(&q))
                }
                Which::PHbar => {
                    maps::p_hbar_map(&q, &a)?.display_with(|m| m.display(&q))
                }
                Which::P => maps::p_map(&q, &a)?.display_with(|m| m.display(&q)),
                Which::QH => maps::q_h_map(&maps::p_hbar_map(&q, &a)?)
                    .display_with(|m| m.display(&q)),
                Which::QHbar => envelope::q_hbar_map(&maps::p_h_map(&q, &a)?)
                    .display_with(|m| m.display(&q)),
            };
            emit(&printed);
        }
        Cmd::Verify { suite, samples, seed, max_edges } => {
            let suite = Suite::from_name(&suite).ok_or_else(|| {
                necklace_algebra::Error::Parse(format!("unknown suite `{suite}`"))
            })?;
            let report = run_suite(suite, samples, seed, max_edges);
            emit(&serde_json::to_string_pretty(&report).expect("report serializes"));
            let verdict = if report.passed { style("ok", GREEN) } else { style("FAIL", RED) };
            eprintln!(
                "{}: {} over {} samples (seed {seed}, max edges {max_edges}): {verdict}",
                report.suite, report.identity, report.samples
            );
            if !report.passed {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::EmitDot { quiver, what, x } => {
            let q = load_quiver(&quiver)?;
            match what {
                DotKind::Quiver => {
                    if x.is_some() {
                        return Err(necklace_algebra::Error::Parse(
                            "`emit-dot quiver` takes no element".to_string(),
                        ));
                    }
                    emit(&quiver_dot(&q));
                }
                DotKind::Link => {
                    let x = x.ok_or_else(|| {
                        necklace_algebra::Error::Parse(
                            "`emit-dot link` needs a link expression".to_string(),
                        )
                    })?;
                    let parsed = parse_nelement_raw(&q, &x)?;
                    let link = single_basis_link(&parsed)?;
                    emit(&link_dot(&q, &link));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Clone, Copy, ValueEnum)]
enum DotKind {
    Quiver,
    Link,
}

/// The one link in a combination that is a single basis element with
/// coefficient 1; drawing anything else is ambiguous.
fn single_basis_link(x: &LinComb<Link>) -> necklace_algebra::Result<Link> {
    let mut terms = x.iter();
    match (terms.next(), terms.next()) {
        (Some((l, c)), None) if c.is_one() => Ok(l.clone()),
        _ => Err(necklace_algebra::Error::Parse(
            "expected a single link, not a combination".to_string(),
        )),
    }
}

/// DOT for the double quiver: one node per vertex, one labeled edge per
/// edge (each arrow and its star).
fn quiver_dot(q: &Quiver) -> String {
    fn node(v: usize) -> String {
        format!("n{v}")
    }
    let mut out = String::from("digraph quiver {\n");
    for v in 0..q.vertices().len() {
        out.push_str(&format!("  {} [label=\"{}\"];\n", node(v), q.vertex_name(v)));
    }
    for e in q.edges() {
        out.push_str(&format!(
            "  {} -> {} [label=\"{}\"];\n",
            node(q.source(e)),
            node(q.target(e)),
            q.edge_name(e)
        ));
    }
    out.push('}');
    out
}

/// DOT for a link: each knot is a directed cycle through the vertices it
/// visits, with edges labeled `name (height)`; lone vertices are isolated
/// nodes.
fn link_dot(q: &Quiver, link: &Link) -> String {
    let mut out = String::from("digraph link {\n");
    for (ki, knot) in link.knots().iter().enumerate() {
        let entries = knot.entries();
        for (oi, &(e, h)) in entries.iter().enumerate() {
            let from = format!("k{ki}_{oi}");
            let to = format!("k{ki}_{}", (oi + 1) % entries.len());
            out.push_str(&format!(
                "  {from} [label=\"{}\"];\n",
                q.vertex_name(q.source(e))
            ));
            out.push_str(&format!(
                "  {from} -> {to} [label=\"{} ({h})\"];\n",
                q.edge_name(e)
            ));
        }
    }
    for (vi, &v) in link.vertices().iter().enumerate() {
        out.push_str(&format!("  v{vi} [label=\"{}\"];\n", q.vertex_name(v)));
    }
    out.push('}');
    out
}

const GREEN: &str = "\x1b[32m";
const RED: &str = "\x1b[31m";

/// Wrap `text` in an ANSI color when allowed: `NECKLACE_COLOR=never`
/// disables styling, and the default `auto` styles only terminals.
fn style(text: &str, color: &str) -> String {
    let allowed = match std::env::var("NECKLACE_COLOR").as_deref() {
        Ok("never") => false,
        _ => std::io::stderr().is_terminal(),
    };
    if allowed {
        format!("{color}{text}\x1b[0m")
    } else {
        text.to_string()
    }
}
