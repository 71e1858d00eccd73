use std::io::Read;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use crate::algebra::{act, ModuleVector};
use crate::chain::{AdicWord, DivisorChain};
use crate::deep::{frankenstein_act, TailVector};
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::gradings::{AbelianGroup, ElementaryGrading, LetterGrading};
use crate::presentations::{aar_check, aar_witnesses, chain_witnesses, matrix_root, nilpotency_index};
use crate::representations::{ann_codim, lift_step, ls_isomorphic, tensor_rank, LocallySimpleSpec, TensorVector};

use super::eval::{evaluate, AlgebraKind, SessionConfig, Value};
use super::json;
use super::parse::parse;

#[derive(Debug, Parser)]
#[command(
    name = "supermat",
    version,
    about = "Exact arithmetic in supernatural matrix, Leavitt and deep matrix algebras"
)]
pub struct Cli {
    /// Scalar field: `q` or `fp:<p>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: FieldDescriptor,
    /// Algebra the expression is evaluated in.
    #[arg(long, global = true, default_value = "core", value_parser = parse_algebra)]
    algebra: AlgebraKind,
    /// Aligned text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

fn parse_field(s: &str) -> Result<FieldDescriptor> {
    s.parse()
}

fn parse_algebra(s: &str) -> Result<AlgebraKind> {
    s.parse()
}

fn parse_chain(s: &str) -> Result<DivisorChain> {
    s.parse()
}

fn parse_word(s: &str) -> Result<AdicWord> {
    s.parse()
}

#[derive(Debug, Args)]
struct ChainArgs {
    /// Radices `m1,m2,…`, optionally with `+repeat` or `+last`.
    #[arg(long, value_parser = parse_chain, conflicts_with = "m")]
    chain: Option<DivisorChain>,
    /// Homogeneous chain `m+repeat`.
    #[arg(long)]
    m: Option<usize>,
}

impl ChainArgs {
    fn resolve(&self) -> Result<DivisorChain> {
        match (&self.chain, self.m) {
            (Some(c), _) => Ok(c.clone()),
            (None, Some(m)) => DivisorChain::homogeneous(m),
            (None, None) => DivisorChain::homogeneous(2),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression to canonical form.
    Eval {
        #[command(flatten)]
        chain: ChainArgs,
        /// Expression, or `-` for stdin.
        expr: String,
    },
    /// Canonicalize a JSON core element `{chain, level, entries}`.
    Canon {
        /// File path, or `-` for stdin.
        input: String,
    },
    /// Dense dump of the first diagonal blocks.
    Realize {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long, default_value_t = 1)]
        blocks: usize,
        expr: String,
    },
    /// Apply an element to the basis vector of a word.
    Act {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long, value_parser = parse_word)]
        word: AdicWord,
        expr: String,
    },
    /// Witnesses a, b, c with b^n = 0 and ab^k + b^(n-k)c = 1.
    Aar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// An m-th root of the n-shift.
    AarRoot {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Generators a, c, b_1, …, b_T presenting the algebra of a chain.
    ChainWitness {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Degree and homogeneous components under an elementary or letter grading.
    Grade {
        #[command(flatten)]
        chain: ChainArgs,
        /// `Z`, `Z^2`, `Z/3`, `ZxZ/2`, ….
        #[arg(long, default_value = "Z")]
        group: String,
        /// `t:h_{t,0},h_{t,1},…;…`; omitted entries are zero.
        #[arg(long, default_value = "")]
        h: String,
        #[arg(long)]
        depth: Option<usize>,
        expr: String,
    },
    /// Tensor rank of a `dim W × l` array.
    Rank { array: String },
    /// Annihilator codimension of a `dim W × l` array.
    Ann { array: String },
    /// Whether two locally simple specs give isomorphic modules.
    Iso {
        #[command(flatten)]
        chain: ChainArgs,
        /// `alpha_1;alpha_2;…` with comma-separated entries.
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 1)]
        from: usize,
    },
    /// Apply the band map `id ⊗ phi` to a `dim W × l` array.
    BandLift {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        array: String,
    },
}

fn read_arg(arg: &str) -> Result<String> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    Ok(s)
}

fn eval_arg(cli: &Cli, chain: &ChainArgs, expr: &str) -> Result<Value> {
    let config = SessionConfig::new(cli.field, cli.algebra, chain.resolve()?);
    evaluate(&parse(&read_arg(expr)?)?, &config)
}

fn parse_specs(chain: &DivisorChain, field: FieldDescriptor, text: &str) -> Result<LocallySimpleSpec> {
    let alphas = text
        .split(';')
        .map(|level| {
            level
                .split(',')
                .map(|s| field.parse_scalar(s))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    LocallySimpleSpec::new(chain, field, alphas)
}

pub fn run(cli: &Cli) -> Result<Json> {
    let body = match &cli.command {
        Command::Eval { chain, expr } => json::value(&eval_arg(cli, chain, expr)?),
        Command::Canon { input } => {
            let text = if input == "-" {
                read_arg(input)?
            } else {
                std::fs::read_to_string(input).map_err(|e| Error::Parse(format!("{input}: {e}")))?
            };
            let x = json::read_core(&text, cli.field)?;
            let mut doc = json::core(&x.compress());
            doc["input_level"] = json!(x.level());
            doc
        }
        Command::Realize { chain, blocks, expr } => {
            let (matrix, field) = match eval_arg(cli, chain, expr)? {
                Value::Core(x) => (x.realize(*blocks)?, x.field()),
                Value::Mixed(x) => {
                    let n = x.recurrent_part().compress().size();
                    let window = blocks * n;
                    let mut m = crate::sparse::SparseMatrix::zero(window, window);
                    for ((r, c), s) in x.truncate(window)? {
                        m.add_entry(r, c, s)?;
                    }
                    (m, x.field())
                }
                other => return Err(Error::KindMismatch(other.kind().to_string(), "core or mixed".into())),
            };
            json!({
                "rows": matrix.rows(),
                "cols": matrix.cols(),
                "matrix": json::sparse_dense(&matrix, field),
            })
        }
        Command::Act { chain, word, expr } => match eval_arg(cli, chain, expr)? {
            Value::Core(x) => json::module_vector(&act(&x, &ModuleVector::basis(x.chain(), x.field(), word)?)?),
            Value::Deep(x) => {
                json::tail_vector(&frankenstein_act(&x, &TailVector::basis(x.chain(), x.field(), word)?)?)
            }
            other => return Err(Error::KindMismatch(other.kind().to_string(), "core or deep".into())),
        },
        Command::Aar { n, k } => {
            let t = aar_witnesses(*n, *k, cli.field)?;
            json!({
                "n": n,
                "k": k,
                "a": json::core(&t.a),
                "b": json::core(&t.b),
                "c": json::core(&t.c),
                "verified": aar_check(&t.a, &t.b, &t.c, *n, *k),
            })
        }
        Command::AarRoot { n, m } => {
            let r = matrix_root(*n, *m, cli.field)?;
            let limit = (n * m + 1) as u32;
            json!({
                "n": n,
                "m": m,
                "root": json::core(&r.root),
                "shift": json::core(&r.shift),
                "convention": serde_json::to_value(r.convention).expect("plain enum"),
                "nilpotency_index": nilpotency_index(&r.root, limit)?,
                "verified": r.root.pow(*m as u32)? == r.shift,
            })
        }
        Command::ChainWitness { chain, depth } => {
            let rc = chain_witnesses(&chain.resolve()?, cli.field, *depth)?;
            json!({
                "chain": rc.chain.to_string(),
                "a": json::core(&rc.a),
                "c": json::core(&rc.c),
                "roots": rc.roots.iter().map(json::core).collect::<Vec<_>>(),
                "verified": rc.verify()?,
            })
        }
        Command::Grade {
            chain,
            group,
            h,
            depth,
            expr,
        } => {
            let group: AbelianGroup = group.parse()?;
            let resolved = chain.resolve()?;
            let components: Vec<(String, Json)> = match eval_arg(cli, chain, expr)? {
                Value::Core(x) => {
                    let depth = depth.or(resolved.depth()).unwrap_or(x.level()).max(x.level());
                    let grading = ElementaryGrading::parse(&resolved, group, Some(depth), h)?;
                    grading
                        .components(&x)?
                        .iter()
                        .map(|(g, c)| (g.to_string(), json::core(c)))
                        .collect()
                }
                Value::Leavitt(x) => {
                    let letters = ElementaryGrading::parse(&resolved, group.clone(), Some(1), h)?;
                    let grading = LetterGrading::new(group, letters.h()[0].clone())?;
                    grading
                        .components(&x)?
                        .iter()
                        .map(|(g, c)| (g.to_string(), json::leavitt(c)))
                        .collect()
                }
                other => return Err(Error::KindMismatch(other.kind().to_string(), "core or leavitt".into())),
            };
            let degree = match components.as_slice() {
                [] => Some("0".to_string()),
                [(g, _)] => Some(g.clone()),
                _ => None,
            };
            json!({
                "homogeneous": degree.is_some(),
                "degree": degree,
                "components": components
                    .into_iter()
                    .map(|(g, c)| json!({ "degree": g, "element": c }))
                    .collect::<Vec<_>>(),
            })
        }
        Command::Rank { array } => {
            let m = json::read_dense(&read_arg(array)?, cli.field)?;
            let x = TensorVector::new(1, 0, m)?;
            json!({ "rows": x.dim(), "cols": x.ell(), "rank": tensor_rank(&x) })
        }
        Command::Ann { array } => {
            let m = json::read_dense(&read_arg(array)?, cli.field)?;
            let x = TensorVector::new(1, 0, m)?;
            let (raw, normalized) = ann_codim(&x);
            json!({ "dim": x.dim(), "rank": tensor_rank(&x), "raw": raw, "normalized": normalized })
        }
        Command::Iso {
            chain,
            alpha,
            beta,
            from,
        } => {
            let c = chain.resolve()?;
            let a = parse_specs(&c, cli.field, alpha)?;
            let b = parse_specs(&c, cli.field, beta)?;
            json!({ "from": from, "depth": a.depth(), "isomorphic": ls_isomorphic(&a, &b, *from)? })
        }
        Command::BandLift { p, steps, array } => {
            let mut x = TensorVector::new(*p, 0, json::read_dense(&read_arg(array)?, cli.field)?)?;
            for _ in 0..*steps {
                x = lift_step(&x)?;
            }
            json!({
                "p": p,
                "ell": x.ell(),
                "level": x.level(),
                "rank": tensor_rank(&x),
                "array": json::dense_matrix(x.array()),
            })
        }
    };
    Ok(json::document(body))
}

/// Runs the command line; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            if cli.pretty {
                print!("{}", json::pretty(&doc));
            } else {
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            }
            0
        }
        Err(e) => {
            eprintln!("{}", json::error(&e));
            1
        }
    }
}
