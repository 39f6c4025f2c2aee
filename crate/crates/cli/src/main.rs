use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use dagger_core::exactnum::{
    format_rat, hilbert_symbol, parse_rat, quadratic_defect, rat_int, set_factor_bound, Place,
    Valuation,
};
use dagger_core::json::{
    AlgebraJson, CertificateJson, ClassificationJson, InvolutionJson, LatticeJson,
};
use dagger_core::lattices::Order4;
use dagger_core::localquad::{classify, count_classes};
use dagger_core::maximality::{
    enlarge_to_maximal_dagger_with_budget, is_maximal_dagger_order, DEFAULT_BUDGET,
};
use dagger_core::quatalg::{algebra_discriminant, involution_discriminant, involution_ideal};
use dagger_core::{Algebra, Error, Involution, Quat};

/// Largest prime for which local-classify also enumerates representatives.
const ENUMERATION_LIMIT: u32 = 31;

#[derive(Parser)]
#[command(
    name = "dagger",
    version,
    about = "Orders in quaternion algebras with orthogonal involutions"
)]
struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit plain text instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(short, allow_hyphen_values = true)]
    a: String,
    #[arg(short, allow_hyphen_values = true)]
    b: String,
}

impl AlgebraArgs {
    fn algebra(&self) -> Result<Algebra, Error> {
        Algebra::new(parse_rat(&self.a)?, parse_rat(&self.b)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reduced discriminant of (a, b / Q).
    DiscAlgebra(AlgebraArgs),
    /// Discriminant of x -> u conj(x) u^-1 for a pure quaternion u.
    DiscInvolution {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Coordinates of u on i, j, ij, comma separated.
        #[arg(short, allow_hyphen_values = true, value_delimiter = ',')]
        u: Vec<String>,
    },
    /// Intersection of two orders, or of an order with its image under an involution.
    Intersect {
        order: PathBuf,
        other: Option<PathBuf>,
        #[arg(long)]
        involution: Option<PathBuf>,
    },
    /// Certify whether a dagger-order is maximal.
    CheckMaximal { order: PathBuf, involution: PathBuf },
    /// Enlarge an order to a maximal dagger-order.
    Enlarge {
        order: PathBuf,
        involution: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Count classes of maximal dagger-orders in Mat(2, Q_p).
    LocalClassify {
        #[arg(short)]
        p: BigInt,
        #[arg(short, long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Quadratic defect of a at p.
    Defect {
        #[arg(short, allow_hyphen_values = true)]
        a: String,
        #[arg(short)]
        p: BigInt,
    },
    /// Hilbert symbol (a, b)_p; p may be "inf".
    Hilbert {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(short)]
        p: String,
    },
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn bad_json(path: &Path, e: serde_json::Error) -> Error {
    Error::Invalid(format!("{}: {e}", path.display()))
}

fn read_order(path: &Path) -> Result<Order4, Error> {
    let j: LatticeJson = serde_json::from_str(&read_file(path)?).map_err(|e| bad_json(path, e))?;
    j.decode_order()
}

fn read_involution(path: &Path, h: &Algebra) -> Result<Involution, Error> {
    let j: InvolutionJson =
        serde_json::from_str(&read_file(path)?).map_err(|e| bad_json(path, e))?;
    j.decode(Some(h))
}

fn order_report(o: &Order4) -> Result<Value, Error> {
    Ok(json!({
        "order": LatticeJson::from(o),
        "disc": o.reduced_discriminant()?.to_string(),
    }))
}

fn valuation_json(v: Valuation) -> Value {
    match v {
        Valuation::Finite(k) => json!(k),
        Valuation::Infinite => json!("inf"),
    }
}

fn run(command: &Command) -> Result<Value, Error> {
    match command {
        Command::DiscAlgebra(args) => {
            let h = args.algebra()?;
            Ok(json!({ "disc": algebra_discriminant(&h)?.to_string() }))
        }
        Command::DiscInvolution { algebra, u } => {
            let h = algebra.algebra()?;
            let c: Vec<_> = u.iter().map(|s| parse_rat(s)).collect::<Result<_, _>>()?;
            if c.len() != 3 {
                return Err(Error::Invalid("u needs three coordinates".into()));
            }
            let u = Quat::new(rat_int(0), c[0].clone(), c[1].clone(), c[2].clone());
            let inv = Involution::new(h, u)?;
            Ok(json!({
                "disc": involution_discriminant(&inv)?.representative().to_string(),
                "ideal": involution_ideal(&inv)?.to_string(),
            }))
        }
        Command::Intersect {
            order,
            other,
            involution,
        } => {
            let o = read_order(order)?;
            let result = match (other, involution) {
                (Some(p), None) => o.intersect(&read_order(p)?)?,
                (None, Some(p)) => o.dagger_core(&read_involution(p, o.algebra())?)?,
                _ => return Err(Error::Invalid("give a second order or --involution".into())),
            };
            order_report(&result)
        }
        Command::CheckMaximal { order, involution } => {
            let o = read_order(order)?;
            let inv = read_involution(involution, o.algebra())?;
            let cert = is_maximal_dagger_order(&o, &inv)?;
            serde_json::to_value(CertificateJson::from(&cert))
                .map_err(|e| Error::Internal(e.to_string()))
        }
        Command::Enlarge {
            order,
            involution,
            budget,
        } => {
            let o = read_order(order)?;
            let inv = read_involution(involution, o.algebra())?;
            order_report(&enlarge_to_maximal_dagger_with_budget(&o, &inv, *budget)?)
        }
        Command::LocalClassify { p, lambda } => {
            let lambda = parse_rat(lambda)?;
            let classes = count_classes(p, &lambda)?;
            if *p > BigInt::from(ENUMERATION_LIMIT) {
                let p: Value = serde_json::from_str(&p.to_string())
                    .map_err(|e| Error::Internal(e.to_string()))?;
                return Ok(json!({ "p": p, "lambda": format_rat(&lambda), "classes": classes }));
            }
            let c = classify(p, &lambda)?;
            if c.class_count() != classes {
                return Err(Error::Internal(format!(
                    "enumeration found {} classes, expected {classes}",
                    c.class_count()
                )));
            }
            serde_json::to_value(ClassificationJson::from(&c))
                .map_err(|e| Error::Internal(e.to_string()))
        }
        Command::Defect { a, p } => {
            let d = quadratic_defect(&parse_rat(a)?, p)?;
            Ok(json!({ "defect": d.to_string(), "valuation": valuation_json(d.valuation) }))
        }
        Command::Hilbert { algebra, p } => {
            let place = if p == "inf" || p == "infinity" {
                Place::Infinite
            } else {
                Place::Finite(
                    p.parse()
                        .map_err(|_| Error::Invalid(format!("bad place {p:?}")))?,
                )
            };
            let s = hilbert_symbol(&parse_rat(&algebra.a)?, &parse_rat(&algebra.b)?, &place)?;
            Ok(
                json!({ "symbol": s, "place": place.to_string(), "algebra": AlgebraJson { a: algebra.a.clone(), b: algebra.b.clone() } }),
            )
        }
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if x.is_object() || x.is_array() {
                    out.push_str(&format!("{pad}{k}:\n"));
                    text(x, indent + 2, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x)));
                }
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = xs.iter().map(scalar).collect();
            out.push_str(&format!("{pad}{}\n", items.join("  ")));
        }
        Value::Array(xs) => {
            for x in xs {
                if x.is_object() {
                    out.push_str(&format!("{pad}-\n"));
                    text(x, indent + 2, out);
                } else {
                    text(x, indent, out);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar(x))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = std::env::var("DAGGER_FACTOR_BOUND")
        .ok()
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map(set_factor_bound)
                .map_err(|_| Error::Invalid(format!("DAGGER_FACTOR_BOUND={s:?} is not an integer")))
        })
        .transpose()
        .and_then(|_| run(&cli.command));
    match result {
        Ok(v) => {
            if cli.text {
                let mut s = String::new();
                text(&v, 0, &mut s);
                print!("{s}");
            } else {
                println!("{v}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.text {
                eprintln!("error: {e}");
            } else {
                println!("{}", json!({ "error": e.to_string() }));
            }
            ExitCode::from(2)
        }
    }
}
