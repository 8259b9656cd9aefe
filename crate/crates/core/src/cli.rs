//! Command-line front end. Everything here parses, calls the library and
//! renders; no algebra lives in this module.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::automorphism::{invert, Automorphism};
use crate::cosets::{coset_product, star_product, tuple_product};
use crate::error::Error;
use crate::json::{
    automorphism_from_str, AutomorphismJson, GroupJson, MatrixJson, ProductJson, TupleProductJson,
};
use crate::rep::{builtin_group, FiniteGroup, RepEngine, Subgroup, DEFAULT_MAX_POINTS};
use crate::verify::{run_suite, Suite};
use crate::word::{format_word, parse_word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dcoset", version, about = "Double-coset semigroups of Aut(F_inf) and their Markov representations")]
struct Cli {
    /// Render human-readable text instead of JSON.
    #[arg(long, global = true)]
    text: bool,

    #[command(subcommand)]
    command: Command,
}

/// Automorphism input: a file path, `-` for stdin, or inline JSON.
type Source = String;

#[derive(Debug, Args)]
struct ProductArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    g: Source,
    #[arg(long)]
    h: Source,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Freely reduce a word such as "x1 x2 x2^-1".
    Reduce { word: String },
    /// Compose two automorphisms: x -> a(b(x)).
    Compose {
        #[arg(long)]
        a: Source,
        #[arg(long)]
        b: Source,
    },
    /// Invert an automorphism.
    Invert {
        #[arg(long)]
        a: Source,
    },
    /// Product g o h in H\G/H.
    CosetProduct(ProductArgs),
    /// Product g * h in G//H.
    StarProduct(ProductArgs),
    /// Componentwise product in H\G^k/H; repeat --g and --h k times each.
    TupleProduct {
        #[arg(long)]
        m: u32,
        #[arg(long = "g", required = true)]
        gs: Vec<Source>,
        #[arg(long = "h", required = true)]
        hs: Vec<Source>,
    },
    /// Exact matrix of P T(g) on L^2(K^m), optionally compressed to U-invariants.
    RepMatrix {
        /// Built-in group: c<n>, s3, d8, q8 (also cyclic(n), symmetric(3), ...).
        #[arg(long, conflicts_with = "group_file", required_unless_present = "group_file")]
        group: Option<String>,
        /// Group table as JSON {"order", "mul", "unit"}.
        #[arg(long)]
        group_file: Option<Source>,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        g: Source,
        /// `trivial`, `all`, or a comma-separated element list.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, env = "COSET_MAX_POINTS", default_value_t = DEFAULT_MAX_POINTS)]
        max_points: u64,
    },
    /// Run a randomized self-check suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Inputs<'_> {
    fn read(&mut self, src: &str) -> Result<String, Failure> {
        if src.trim_start().starts_with('{') {
            return Ok(src.to_string());
        }
        if src == "-" {
            if self.stdin_used {
                return Err(Failure::Usage("stdin can only be read once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
            return Ok(s);
        }
        std::fs::read_to_string(src).map_err(|e| Failure::Usage(format!("reading {src}: {e}")))
    }

    fn automorphism(&mut self, src: &str) -> Result<Automorphism, Failure> {
        Ok(automorphism_from_str(&self.read(src)?)?)
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn automorphism_text(a: &Automorphism) -> String {
    let mut s = String::new();
    if a.is_identity() {
        s.push_str("id\n");
    }
    for (g, w) in a.fwd().images() {
        let _ = writeln!(s, "x{} -> {}", g.index(), format_word(w));
    }
    s
}

fn parse_subgroup(k: &FiniteGroup, choice: &str) -> Result<Subgroup, Failure> {
    match choice {
        "trivial" => Ok(Subgroup::trivial(k)),
        "all" => Ok(Subgroup::whole(k)),
        list => {
            let members = list
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::Usage(format!("bad subgroup list `{list}`")))?;
            Ok(Subgroup::from_members(k, &members)?)
        }
    }
}

fn execute(cli: Cli, inputs: &mut Inputs<'_>) -> Result<(String, bool), Failure> {
    let text = cli.text;
    let out = match cli.command {
        Command::Reduce { word } => {
            let w = parse_word(&word)?;
            if text {
                format!("{}\n", format_word(&w))
            } else {
                json_line(&format_word(&w))
            }
        }
        Command::Compose { a, b } => {
            let c = inputs.automorphism(&a)?.compose(&inputs.automorphism(&b)?);
            render_aut(&c, text)
        }
        Command::Invert { a } => render_aut(&invert(&inputs.automorphism(&a)?), text),
        Command::CosetProduct(p) => {
            let (g, h) = (inputs.automorphism(&p.g)?, inputs.automorphism(&p.h)?);
            let r = coset_product(p.m, &g, &h);
            render_product(ProductJson::from(&r), &r.rep, text)
        }
        Command::StarProduct(p) => {
            let (g, h) = (inputs.automorphism(&p.g)?, inputs.automorphism(&p.h)?);
            let r = star_product(p.m, &g, &h);
            render_product(ProductJson::from(&r), &r.rep, text)
        }
        Command::TupleProduct { m, gs, hs } => {
            let gs = gs
                .iter()
                .map(|s| inputs.automorphism(s))
                .collect::<Result<Vec<_>, _>>()?;
            let hs = hs
                .iter()
                .map(|s| inputs.automorphism(s))
                .collect::<Result<Vec<_>, _>>()?;
            let t = tuple_product(m, &gs, &hs)?;
            if text {
                let mut s = format!("m = {}, N = {}\n", t.m, t.n);
                for (i, r) in t.reps.iter().enumerate() {
                    let _ = writeln!(s, "[{i}]");
                    s.push_str(&automorphism_text(r));
                }
                s
            } else {
                json_line(&TupleProductJson::from(&t))
            }
        }
        Command::RepMatrix {
            group,
            group_file,
            m,
            g,
            subgroup,
            max_points,
        } => {
            let (name, k) = match (group, group_file) {
                (Some(name), _) => {
                    let k = builtin_group(&name)?;
                    (name, k)
                }
                (None, Some(src)) => {
                    let j: GroupJson = serde_json::from_str(&inputs.read(&src)?).map_err(Error::from)?;
                    ("file".to_string(), j.into_group("file")?)
                }
                (None, None) => return Err(Failure::Usage("--group or --group-file is required".into())),
            };
            let aut = inputs.automorphism(&g)?;
            let engine = RepEngine::new(k).with_max_points(max_points);
            let mut mat = engine.markov_matrix(&aut, m)?;
            let mut members = None;
            if let Some(choice) = subgroup {
                let u = parse_subgroup(engine.group(), &choice)?;
                mat = engine.compress_to_invariants(&u, m, &mat)?;
                members = Some(u.members().to_vec());
            }
            if text {
                mat.to_string()
            } else {
                json_line(&MatrixJson {
                    group: name,
                    m,
                    subgroup: members,
                    matrix: mat.to_strings(),
                })
            }
        }
        Command::Verify { suite, seed } => {
            let report = run_suite(suite, seed);
            let ok = report.passed();
            let out = if text {
                report.to_string()
            } else {
                #[derive(Serialize)]
                struct Check<'a> {
                    name: &'a str,
                    trials: usize,
                    failures: usize,
                    passed: bool,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    note: &'a Option<String>,
                }
                #[derive(Serialize)]
                struct Doc<'a> {
                    seed: u64,
                    passed: bool,
                    checks: Vec<Check<'a>>,
                }
                json_line(&Doc {
                    seed,
                    passed: ok,
                    checks: report
                        .checks
                        .iter()
                        .map(|c| Check {
                            name: c.name,
                            trials: c.trials,
                            failures: c.failures,
                            passed: c.passed(),
                            note: &c.note,
                        })
                        .collect(),
                })
            };
            return Ok((out, ok));
        }
    };
    Ok((out, true))
}

fn render_aut(a: &Automorphism, text: bool) -> String {
    if text {
        automorphism_text(a)
    } else {
        json_line(&AutomorphismJson::from(a))
    }
}

fn render_product(doc: ProductJson, rep: &Automorphism, text: bool) -> String {
    if text {
        format!("m = {}, N = {}\n{}", doc.m, doc.n, automorphism_text(rep))
    } else {
        json_line(&doc)
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let mut inputs = Inputs {
        stdin,
        stdin_used: false,
    };
    match execute(cli, &mut inputs) {
        Ok((stdout, true)) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Ok((stdout, false)) => Outcome {
            code: EXIT_DOMAIN,
            stdout,
            stderr: "verification failed\n".into(),
        },
        Err(Failure::Domain(e)) => Outcome {
            code: EXIT_DOMAIN,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let argv = std::iter::once("dcoset").chain(args.iter().copied());
        run(argv, &mut std::io::empty())
    }

    #[test]
    fn reduce_outputs() {
        let o = run_args(&["reduce", "x1 x1^-1"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "\"\"\n"));
        let o = run_args(&["--text", "reduce", "x2 x1 x1^-1 x3"]);
        assert_eq!(o.stdout, "x2 x3\n");
    }

    #[test]
    fn error_codes() {
        assert_eq!(run_args(&["reduce", "x0"]).code, EXIT_DOMAIN);
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["invert", "--a", "/nonexistent/file.json"]).code, EXIT_USAGE);
        let bad = r#"{"images":{"1":[[1,1],[2,1]]},"inverse_images":{}}"#;
        let o = run_args(&["invert", "--a", bad]);
        assert_eq!(o.code, EXIT_DOMAIN);
        assert!(o.stderr.contains("not mutually inverse"));
        assert_eq!(run_args(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn inline_inputs() {
        let g = r#"{"images":{"1":[[1,1],[2,1]]},"inverse_images":{"1":[[1,1],[2,-1]]}}"#;
        let o = run_args(&["invert", "--a", g]);
        assert_eq!(
            o.stdout,
            "{\"images\":{\"1\":[[1,1],[2,-1]]},\"inverse_images\":{\"1\":[[1,1],[2,1]]}}\n"
        );
        let o = run_args(&["--text", "compose", "--a", g, "--b", g]);
        assert_eq!(o.stdout, "x1 -> x1 x2 x2\n");
    }

    #[test]
    fn stdin_input() {
        let g = r#"{"images":{"2":[[2,-1]]},"inverse_images":{"2":[[2,-1]]}}"#;
        let argv = ["dcoset", "--text", "invert", "--a", "-"];
        let o = run(argv, &mut g.as_bytes());
        assert_eq!(o.stdout, "x2 -> x2^-1\n");
    }

    #[test]
    fn subgroup_compression() {
        let g = r#"{"images":{"1":[[1,1],[2,1]]},"inverse_images":{"1":[[1,1],[2,-1]]}}"#;
        let o = run_args(&["rep-matrix", "--group", "s3", "--m", "1", "--g", g, "--subgroup", "all"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let doc: MatrixJson = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(doc.matrix.len(), 3);
        let o = run_args(&["rep-matrix", "--group", "s3", "--m", "1", "--g", g, "--subgroup", "0,3"]);
        assert_eq!(o.code, EXIT_DOMAIN);
        let o = run_args(&["rep-matrix", "--group", "s3", "--m", "1", "--g", g, "--max-points", "3"]);
        assert_eq!(o.code, EXIT_DOMAIN);
    }
}
