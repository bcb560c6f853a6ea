//! Command-line front end. Reports are `key value` lines; exit code 0 means
//! success, 1 a mathematical negative, 2 a usage or input error.

use std::io::Read as _;
use std::sync::Arc;

use clap::{Arg, ArgAction, ArgMatches, Command};

use crate::algebra::{direct_product, ideal_closure, quotient, tensor_product, Algebra};
use crate::error::{Error, Result};
use crate::format::{parse_algebra, parse_element, parse_quiver, parse_tensor, write_algebra, write_tensor};
use crate::frobenius::{frobenius_space, verify_coproduct, Coproduct};
use crate::scalar::Field;
use crate::separability::{is_normalized, is_separable, semisimple_char0};
use crate::zoo;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn failure(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

const COMMANDS: [&str; 10] = [
    "validate",
    "frobdim",
    "frobbasis",
    "separable",
    "semisimple",
    "verify",
    "product",
    "tensor",
    "quotient",
    "zoo",
];

fn command() -> Command {
    Command::new("frobkit")
        .about("Nearly Frobenius coproducts, Frobenius dimension and separability of finite-dimensional algebras")
        .arg(
            Arg::new("command")
                .required(true)
                .value_parser(COMMANDS)
                .help("Subcommand to run"),
        )
        .arg(
            Arg::new("in")
                .long("in")
                .action(ArgAction::Append)
                .value_name("FILE")
                .help("Algebra description file, `-` for stdin"),
        )
        .arg(
            Arg::new("zoo")
                .long("zoo")
                .action(ArgAction::Append)
                .num_args(2)
                .value_names(["FAMILY", "ARG"])
                .help("Builtin algebra: cyclic N, abelian N1,N2,..., matrix N, truncpoly N, pathalg FILE"),
        )
        .arg(
            Arg::new("prime")
                .long("prime")
                .value_parser(clap::value_parser!(u64))
                .value_name("P")
                .help("Build --zoo algebras over F_P instead of Q"),
        )
        .arg(
            Arg::new("bound")
                .long("bound")
                .value_parser(clap::value_parser!(usize))
                .value_name("L")
                .help("Maximal path length for pathalg quivers with cycles"),
        )
        .arg(
            Arg::new("tensor")
                .long("tensor")
                .value_name("FILE")
                .help("Tensor file holding Δ(1) for `verify`"),
        )
        .arg(
            Arg::new("gen")
                .long("gen")
                .action(ArgAction::Append)
                .value_name("ELEMENT")
                .help("Ideal generator for `quotient`, as `i:c` terms separated by commas or spaces"),
        )
        .arg(
            Arg::new("out")
                .long("out")
                .value_name("FILE")
                .help("Write the resulting algebra or certificate to FILE"),
        )
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("frobkit")).chain(args.into_iter().map(Into::into));
    let matches = match command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::report(code, text)
            };
        }
    };
    match dispatch(&matches) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::failure(e),
    }
}

enum Source {
    File(String),
    Zoo(String, String),
}

fn sources(m: &ArgMatches) -> Vec<Source> {
    let mut found: Vec<(usize, Source)> = Vec::new();
    if let (Some(idx), Some(vals)) = (m.indices_of("in"), m.get_many::<String>("in")) {
        found.extend(idx.zip(vals).map(|(i, v)| (i, Source::File(v.clone()))));
    }
    if let (Some(idx), Some(vals)) = (m.indices_of("zoo"), m.get_many::<String>("zoo")) {
        let idx: Vec<usize> = idx.collect();
        let vals: Vec<&String> = vals.collect();
        for (pair, at) in vals.chunks(2).zip(idx.chunks(2)) {
            found.push((at[0], Source::Zoo(pair[0].clone(), pair[1].clone())));
        }
    }
    found.sort_by_key(|(i, _)| *i);
    found.into_iter().map(|(_, s)| s).collect()
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::InvalidInput(format!("cannot read stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read `{path}`: {e}")))
    }
}

fn build_zoo(family: &str, arg: &str, field: Field, bound: Option<usize>) -> Result<Algebra> {
    if family == "pathalg" {
        let qf = parse_quiver(&read_input(arg)?, field)?;
        return zoo::path_algebra(&qf.quiver, bound.or(qf.bound));
    }
    zoo::family(field, family, arg)
}

fn load(m: &ArgMatches) -> Result<Vec<Arc<Algebra>>> {
    let field = match m.get_one::<u64>("prime") {
        Some(&p) => Field::prime(p)?,
        None => Field::Rational,
    };
    let bound = m.get_one::<usize>("bound").copied();
    sources(m)
        .into_iter()
        .map(|s| {
            let a = match s {
                Source::File(path) => parse_algebra(&read_input(&path)?)
                    .map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?,
                Source::Zoo(family, arg) => build_zoo(&family, &arg, field, bound)?,
            };
            Ok(Arc::new(a))
        })
        .collect()
}

fn expect_inputs(algebras: &[Arc<Algebra>], n: usize, command: &str) -> Result<()> {
    if algebras.len() != n {
        return Err(Error::InvalidInput(format!(
            "`{command}` takes {n} input algebra{}, {} given",
            if n == 1 { "" } else { "s" },
            algebras.len()
        )));
    }
    Ok(())
}

fn emit(m: &ArgMatches, text: String) -> Result<Outcome> {
    match m.get_one::<String>("out") {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Error::InvalidInput(format!("cannot write `{path}`: {e}")))?;
            Ok(Outcome::report(EXIT_OK, format!("written {path}\n")))
        }
        None => Ok(Outcome::report(EXIT_OK, text)),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(m: &ArgMatches) -> Result<Outcome> {
    let cmd = m.get_one::<String>("command").expect("required").as_str();
    let algebras = load(m)?;
    let single = |name| -> Result<&Arc<Algebra>> {
        expect_inputs(&algebras, 1, name)?;
        Ok(&algebras[0])
    };
    match cmd {
        "validate" => {
            let a = single(cmd)?;
            Ok(Outcome::report(
                EXIT_OK,
                format!(
                    "valid true\nfield {}\ndim {}\ncommutative {}\n",
                    a.field(),
                    a.dim(),
                    a.is_commutative()
                ),
            ))
        }
        "frobdim" => {
            let a = single(cmd)?;
            Ok(Outcome::report(EXIT_OK, format!("frobdim {}\n", crate::frobenius::frobdim(a))))
        }
        "frobbasis" => {
            let a = single(cmd)?;
            let space = frobenius_space(a);
            let mut out = format!("frobdim {}\n", space.dim());
            for (k, t) in space.basis().iter().enumerate() {
                out.push_str(&format!("basis {k} {}\n", a.format_tensor(t)));
            }
            Ok(Outcome::report(EXIT_OK, out))
        }
        "separable" => {
            let a = single(cmd)?;
            let v = is_separable(a)?;
            let mut out = format!("separable {}\n", v.separable);
            if let Some(e) = &v.certificate {
                out.push_str(&format!("certificate {}\n", a.format_tensor(e)));
                if let Some(path) = m.get_one::<String>("out") {
                    std::fs::write(path, write_tensor(e))
                        .map_err(|err| Error::InvalidInput(format!("cannot write `{path}`: {err}")))?;
                }
            }
            out.push_str(&format!(
                "char0_trace_criterion {}\nseparable_implies_semisimple {}\n",
                yes_no(v.notes.char_zero_trace_criterion),
                yes_no(v.notes.separable_implies_semisimple)
            ));
            let code = if v.separable { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Outcome::report(code, out))
        }
        "semisimple" => {
            let a = single(cmd)?;
            match semisimple_char0(a) {
                Ok(s) => Ok(Outcome::report(
                    if s { EXIT_OK } else { EXIT_NEGATIVE },
                    format!("semisimple {s}\n"),
                )),
                Err(e @ Error::UnsupportedField(_)) => {
                    let sep = is_separable(a)?.separable;
                    Ok(Outcome {
                        code: EXIT_USAGE,
                        stdout: format!(
                            "semisimple unsupported\nseparable {sep}\nsemisimple_implied {}\n",
                            if sep { "yes" } else { "unknown" }
                        ),
                        stderr: format!("error: {e}\n"),
                    })
                }
                Err(e) => Err(e),
            }
        }
        "verify" => {
            let a = single(cmd)?;
            let path = m
                .get_one::<String>("tensor")
                .ok_or_else(|| Error::InvalidInput("`verify` needs --tensor FILE".into()))?;
            let t = parse_tensor(&read_input(path)?, a.field())
                .map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
            match verify_coproduct(a, &t) {
                Ok(()) => {
                    let d = Coproduct::new(Arc::clone(a), t)?;
                    Ok(Outcome::report(
                        EXIT_OK,
                        format!("coproduct valid\nnormalized {}\n", is_normalized(a, &d)),
                    ))
                }
                Err(v) => Ok(Outcome::report(
                    EXIT_NEGATIVE,
                    format!("coproduct invalid\nviolation {v}\n"),
                )),
            }
        }
        "product" => {
            expect_inputs(&algebras, 2, cmd)?;
            let p = direct_product(&algebras[0], &algebras[1])?;
            emit(m, write_algebra(&p.algebra))
        }
        "tensor" => {
            expect_inputs(&algebras, 2, cmd)?;
            emit(m, write_algebra(&tensor_product(&algebras[0], &algebras[1])?))
        }
        "quotient" => {
            let a = single(cmd)?;
            let gens = m
                .get_many::<String>("gen")
                .ok_or_else(|| Error::InvalidInput("`quotient` needs at least one --gen".into()))?
                .map(|g| {
                    let words: Vec<&str> = g.split([',', ' ']).filter(|w| !w.is_empty()).collect();
                    parse_element(a.field(), a.dim(), &words)
                })
                .collect::<Result<Vec<_>>>()?;
            let ideal = ideal_closure(a, &gens)?;
            let q = quotient(a, &ideal)?;
            emit(m, write_algebra(&q.algebra))
        }
        "zoo" => {
            let a = single(cmd)?;
            emit(m, write_algebra(a))
        }
        _ => unreachable!("restricted by the value parser"),
    }
}
