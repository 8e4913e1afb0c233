//! Command-line front end.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::extcalc::{
    ext_divided_vs_twisted, ext_untwisted_from_fk, ext_weyl_schur_twisted, ext_weyl_vs_fk_schur, ExtAnswer, ExtError,
};
use crate::graded::{a_space, ShiftSpec};
use crate::kan::{self, FunctorExpr, KanError, RewriteContext};
use crate::oracle;
use crate::partition::{f_k_iterated_with, p_core_quotient_with, partitions_of, Partition, QuotientConvention};
use crate::symchar::{character_table_with, CycleType};

pub const RUNNER_OFFSET_VAR: &str = "TWISTEXT_RUNNER_OFFSET";

#[derive(Parser, Debug)]
#[command(name = "twistext", version, about = "Ext groups between Frobenius-twisted functors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ext(W_μ^(i), S_λ^(i)) as a Poincaré polynomial.
    ExtWeylSchur {
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[command(flatten)]
        twist: TwistArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Ext(D^λ(i), F^(i)) for a functor expression F.
    ExtDivided {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long)]
        functor: String,
        #[command(flatten)]
        twist: TwistArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Ext(I^d(i), S_ν) for ν = F_k^i(λ).
    ExtFk {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Ext(W_μ^(i+j), S_ν^(j)) for ν = F_k^i(λ).
    ExtWeylFk {
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Rewrite an expression to normal form and print the derivation.
    KanNormalize {
        #[arg(long)]
        functor: String,
        #[arg(long, value_parser = parse_prime)]
        p: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// p-core and p-quotient of λ on the abacus.
    PartitionCoreQuotient {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long, value_parser = parse_prime)]
        p: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// F_k^i(λ) with its core and quotient.
    PartitionFk {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long, value_parser = parse_prime)]
        p: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        i: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Character table of Σ_d.
    CharTable {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Re-run the brute-force certification at desk scale.
    #[command(hide = true)]
    OracleCheck {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct TwistArgs {
    #[arg(long, value_parser = parse_prime)]
    p: u32,
    #[arg(long)]
    i: u32,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Integer value substituted for a symbolic shift h(i,k).
    #[arg(long, allow_hyphen_values = true)]
    shift: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: crate::partition::PartitionError| e.to_string())
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn parse_prime(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|_| format!("'{s}' is not a positive integer"))?;
    if is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}

/// Shift as it appears in JSON output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftJson {
    Symbolic([u32; 2]),
    Value(i64),
}

/// JSON form of an Ext answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtReport {
    pub query: String,
    pub p: u32,
    pub i: Option<u32>,
    pub j: Option<u32>,
    pub k: Option<u32>,
    pub mu: Option<Partition>,
    pub lambda: Option<Partition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functor: Option<String>,
    pub poincare: crate::graded::PoincarePoly,
    pub shift: ShiftJson,
    pub label: Option<String>,
    pub provenance: String,
}

impl ExtReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TraceJson {
    rule: String,
    statement: String,
    before: String,
    after: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct NormalizeJson {
    query: String,
    p: u32,
    input: String,
    normal_form: String,
    trace: Vec<TraceJson>,
    value: Option<ExtReport>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Unsupported(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Unsupported(_) => 3,
            Failure::Internal(_) => 1,
        }
    }

    fn message(self) -> String {
        match self {
            Failure::Usage(m) | Failure::Internal(m) => format!("error: {m}\n"),
            Failure::Unsupported(m) => format!("error: unsupported functor family: {m}\n"),
        }
    }
}

impl From<ExtError> for Failure {
    fn from(e: ExtError) -> Self {
        match e {
            ExtError::Unsupported(m) => Failure::Unsupported(m),
            ExtError::Poly(p) => Failure::Internal(p.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<KanError> for Failure {
    fn from(e: KanError) -> Self {
        match e {
            KanError::UnsupportedNormalForm(m) => Failure::Unsupported(m),
            KanError::Ext(inner) => inner.into(),
            KanError::StepLimit(_) => Failure::Internal(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Accepts the two-word spellings `char table` and `oracle check`.
fn normalize_argv(argv: &[String]) -> Vec<String> {
    let mut out: Vec<String> = argv.to_vec();
    if out.len() >= 2 {
        let joined = match (out[0].as_str(), out[1].as_str()) {
            ("char", "table") => Some("char-table"),
            ("oracle", "check") => Some("oracle-check"),
            _ => None,
        };
        if let Some(j) = joined {
            out.splice(0..2, [j.to_string()]);
        }
    }
    out
}

fn convention_from_env() -> Result<QuotientConvention, Failure> {
    match std::env::var(RUNNER_OFFSET_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .map(QuotientConvention::with_offset)
            .map_err(|_| Failure::Usage(format!("{RUNNER_OFFSET_VAR} must be a nonnegative integer, got '{v}'"))),
        Err(_) => Ok(QuotientConvention::default()),
    }
}

/// Runs one command; `argv` excludes the program name.
pub fn run(argv: &[String]) -> (i32, String) {
    let args = std::iter::once("twistext".to_string()).chain(normalize_argv(argv));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (code, e.render().to_string());
        }
    };
    let result = convention_from_env().and_then(|conv| dispatch(cli.command, conv));
    match result {
        Ok(out) => (0, out),
        Err(f) => (f.code(), f.message()),
    }
}

fn report(query: &str, p: u32, answer: &ExtAnswer, shift: Option<i64>) -> ExtReport {
    let h = fold_shift(&answer.shift, shift);
    let shift = match (h.as_single_symbol(), h.terms().is_empty()) {
        (Some((i, k)), _) => ShiftJson::Symbolic([i, k]),
        (None, true) => ShiftJson::Value(h.constant()),
        // mixed shifts never arise from the closed formulas
        (None, false) => ShiftJson::Value(h.constant()),
    };
    ExtReport {
        query: query.to_string(),
        p,
        i: None,
        j: None,
        k: None,
        mu: None,
        lambda: None,
        functor: None,
        poincare: answer.poincare.clone(),
        shift,
        label: answer.module_label.as_ref().map(ToString::to_string),
        provenance: answer.provenance.formula().to_string(),
    }
}

fn fold_shift(h: &ShiftSpec, value: Option<i64>) -> ShiftSpec {
    match value {
        Some(v) => {
            let overrides: BTreeMap<(u32, u32), i64> = h.terms().keys().map(|&ik| (ik, v)).collect();
            h.resolve(&overrides)
        }
        None => h.clone(),
    }
}

fn render_polynomial(r: &ExtReport, latex: bool) -> String {
    let body = if latex {
        r.poincare.to_latex()
    } else {
        r.poincare.to_string()
    };
    let body = if body.is_empty() { "0".to_string() } else { body };
    match r.shift {
        ShiftJson::Value(0) => body,
        ShiftJson::Value(n) if n > 0 && !latex => r.poincare.shift_up(n as usize).to_string(),
        ShiftJson::Value(n) if n > 0 => r.poincare.shift_up(n as usize).to_latex(),
        ShiftJson::Value(n) => format!("t^{{{n}}} * ({body})"),
        ShiftJson::Symbolic([i, k]) if latex => format!("t^{{h^{{{i}}}_{{{k}}}}} \\cdot ({body})"),
        ShiftJson::Symbolic([i, k]) => format!("t^{{h({i},{k})}} * ({body})"),
    }
}

fn render_report(r: &ExtReport, format: Format) -> String {
    match format {
        Format::Json => r.to_json() + "\n",
        Format::Latex => {
            let mut s = render_polynomial(r, true) + "\n";
            if let Some(l) = &r.label {
                let _ = writeln!(s, "% module: {l}");
            }
            let _ = writeln!(s, "% {}", r.provenance);
            s
        }
        Format::Text => {
            let mut s = render_polynomial(r, false) + "\n";
            if let Some(l) = &r.label {
                let _ = writeln!(s, "module: {l}");
            }
            let _ = writeln!(s, "dimension: {}", r.poincare.dimension());
            let _ = writeln!(s, "formula: {}", r.provenance);
            s
        }
    }
}

fn check_twist(i: u32, flag: &str) -> Result<(), Failure> {
    if i > 8 {
        return Err(Failure::Usage(format!("--{flag} {i} is too large")));
    }
    Ok(())
}

fn dispatch(command: Command, conv: QuotientConvention) -> Result<String, Failure> {
    match command {
        Command::ExtWeylSchur { mu, lambda, twist, out } => {
            check_twist(twist.i, "i")?;
            let answer = ext_weyl_schur_twisted(&mu, &lambda, twist.p, twist.i)?;
            let mut r = report("ext-weyl-schur", twist.p, &answer, out.shift);
            r.i = Some(twist.i);
            r.mu = Some(mu);
            r.lambda = Some(lambda);
            Ok(render_report(&r, out.format))
        }
        Command::ExtDivided {
            lambda,
            functor,
            twist,
            out,
        } => {
            check_twist(twist.i, "i")?;
            let ctx = RewriteContext::new(twist.p).with_convention(conv);
            let f = kan::parse_expr_with(&functor, &ctx).map_err(|e| Failure::Usage(format!("--functor: {e}")))?;
            let answer = ext_divided_vs_twisted(&lambda, &f, twist.p, twist.i)?;
            let mut r = report("ext-divided", twist.p, &answer, out.shift);
            r.i = Some(twist.i);
            r.lambda = Some(lambda);
            r.functor = Some(f.to_string());
            Ok(render_report(&r, out.format))
        }
        Command::ExtFk { lambda, twist, k, out } => {
            check_twist(twist.i, "i")?;
            if k >= twist.p {
                return Err(Failure::Usage(format!("--k {k} must be below --p {}", twist.p)));
            }
            let answer = ext_untwisted_from_fk(&lambda, twist.p, twist.i, k)?;
            let mut r = report("ext-fk", twist.p, &answer, out.shift);
            r.i = Some(twist.i);
            r.k = Some(k);
            r.lambda = Some(lambda);
            Ok(render_report(&r, out.format))
        }
        Command::ExtWeylFk {
            mu,
            lambda,
            twist,
            j,
            k,
            out,
        } => {
            check_twist(twist.i, "i")?;
            check_twist(j, "j")?;
            if k >= twist.p {
                return Err(Failure::Usage(format!("--k {k} must be below --p {}", twist.p)));
            }
            let answer = ext_weyl_vs_fk_schur(&mu, &lambda, twist.p, twist.i, j, k)?;
            let mut r = report("ext-weyl-fk", twist.p, &answer, out.shift);
            r.i = Some(twist.i);
            r.j = Some(j);
            r.k = Some(k);
            r.mu = Some(mu);
            r.lambda = Some(lambda);
            Ok(render_report(&r, out.format))
        }
        Command::KanNormalize { functor, p, out } => {
            let ctx = RewriteContext::new(p).with_convention(conv);
            let e = kan::parse_expr_with(&functor, &ctx).map_err(|e| Failure::Usage(format!("--functor: {e}")))?;
            let derivation = kan::normalize_with(&e, &ctx)?;
            let value = match &derivation.normal_form {
                FunctorExpr::ExtQuery(..) | FunctorExpr::Shift(..) => {
                    kan::evaluate_normal_form(&derivation.normal_form)
                        .ok()
                        .map(|a| report("kan-normalize", p, &a, out.shift))
                }
                _ => None,
            };
            Ok(match out.format {
                Format::Json => {
                    let j = NormalizeJson {
                        query: "kan-normalize".into(),
                        p,
                        input: derivation.input.to_string(),
                        normal_form: derivation.normal_form.to_string(),
                        trace: derivation
                            .trace
                            .iter()
                            .map(|s| TraceJson {
                                rule: s.rule.name().into(),
                                statement: s.rule.statement().into(),
                                before: s.before.to_string(),
                                after: s.after.to_string(),
                            })
                            .collect(),
                        value,
                    };
                    serde_json::to_string_pretty(&j).expect("serializes") + "\n"
                }
                Format::Text | Format::Latex => {
                    let mut s = format!("{derivation}\n");
                    if let Some(v) = value {
                        let _ = writeln!(s, "value: {}", render_polynomial(&v, out.format == Format::Latex));
                    }
                    s
                }
            })
        }
        Command::PartitionCoreQuotient { lambda, p, out } => {
            let data = p_core_quotient_with(&lambda, p, conv).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(match out.format {
                Format::Json => {
                    let v = serde_json::json!({
                        "query": "partition-core-quotient",
                        "p": p,
                        "lambda": lambda,
                        "core": data.core,
                        "quotient": data.quotient,
                        "runner_offset": conv.runner_offset,
                    });
                    serde_json::to_string_pretty(&v).expect("serializes") + "\n"
                }
                _ => format!(
                    "core: {:?}\nquotient: {}\nweight: {} = {} + {}*{}\n",
                    data.core,
                    quotient_text(&data.quotient),
                    lambda.weight(),
                    data.core.weight(),
                    p,
                    data.quotient_weight()
                ),
            })
        }
        Command::PartitionFk { lambda, p, k, i, out } => {
            if k >= p {
                return Err(Failure::Usage(format!("--k {k} must be below --p {p}")));
            }
            if i == 0 {
                return Err(Failure::Usage("--i must be positive".into()));
            }
            check_twist(i, "i")?;
            let nu = f_k_iterated_with(&lambda, p, k, i, conv).map_err(|e| Failure::Usage(e.to_string()))?;
            let data = p_core_quotient_with(&nu, p, conv).map_err(|e| Failure::Internal(e.to_string()))?;
            Ok(match out.format {
                Format::Json => {
                    let v = serde_json::json!({
                        "query": "partition-fk",
                        "p": p,
                        "i": i,
                        "k": k,
                        "lambda": lambda,
                        "partition": nu,
                        "weight": nu.weight(),
                        "core": data.core,
                        "quotient": data.quotient,
                        "runner_offset": conv.runner_offset,
                    });
                    serde_json::to_string_pretty(&v).expect("serializes") + "\n"
                }
                _ => format!(
                    "{:?}\nweight: {}\ncore: {:?}\nquotient: {}\n",
                    nu,
                    nu.weight(),
                    data.core,
                    quotient_text(&data.quotient)
                ),
            })
        }
        Command::CharTable { d, out } => {
            if d == 0 || d > 20 {
                return Err(Failure::Usage(format!("--d {d} must lie in 1..=20")));
            }
            let table = character_table_with(d, Execution::default());
            Ok(match out.format {
                Format::Json => {
                    let rows: Vec<_> = table
                        .irreducibles
                        .iter()
                        .zip(&table.values)
                        .map(|(l, vals)| serde_json::json!({ "lambda": l, "values": vals }))
                        .collect();
                    let classes: Vec<&Partition> = table.classes.iter().map(CycleType::cycles).collect();
                    let v = serde_json::json!({ "query": "char-table", "d": d, "classes": classes, "rows": rows });
                    serde_json::to_string_pretty(&v).expect("serializes") + "\n"
                }
                _ => char_table_text(&table.irreducibles, &table.classes, &table.values),
            })
        }
        Command::OracleCheck { d, out } => oracle_check(d, out.format),
    }
}

fn quotient_text(q: &[Partition]) -> String {
    let parts: Vec<String> = q.iter().map(|x| format!("{x:?}")).collect();
    format!("({})", parts.join(", "))
}

fn char_table_text(irr: &[Partition], classes: &[CycleType], values: &[Vec<i64>]) -> String {
    let header: Vec<String> = classes.iter().map(|c| format!("{:?}", c.cycles())).collect();
    let labels: Vec<String> = irr.iter().map(|l| format!("{l:?}")).collect();
    let lw = labels.iter().map(String::len).max().unwrap_or(0);
    let cw = header
        .iter()
        .map(String::len)
        .chain(values.iter().flatten().map(|v| v.to_string().len()))
        .max()
        .unwrap_or(1);
    let mut s = format!("{:lw$}", "");
    for h in &header {
        let _ = write!(s, " {h:>cw$}");
    }
    s.push('\n');
    for (l, row) in labels.iter().zip(values) {
        let _ = write!(s, "{l:lw$}");
        for v in row {
            let _ = write!(s, " {v:>cw$}");
        }
        s.push('\n');
    }
    s
}

fn oracle_check(d: usize, format: Format) -> Result<String, Failure> {
    if d == 0 || d > oracle::MAX_TRACE_DEGREE {
        return Err(Failure::Usage(format!(
            "--d {d} must lie in 1..={}",
            oracle::MAX_TRACE_DEGREE
        )));
    }
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 1..=oracle::MAX_SPECHT_DEGREE.min(5) {
        let table = character_table_with(n, Execution::default());
        let brute = oracle::character_table(n).map_err(|e| Failure::Internal(e.to_string()))?;
        let agree = table.to_map().iter().all(|(key, v)| brute.get(key) == Some(v));
        ok &= agree;
        lines.push((format!("characters d={n}"), agree));
    }
    for (p, max_d) in [(2u32, d), (3, d.min(2))] {
        let u = a_space(p, 1);
        for n in 1..=max_d {
            let mut agree = true;
            for mu in partitions_of(n) {
                for lambda in partitions_of(n) {
                    let direct = ext_weyl_schur_twisted(&mu, &lambda, p, 1)?.poincare;
                    let brute = oracle::graded_isotypic_trace(&mu, &lambda, &u, n)
                        .map_err(|e| Failure::Internal(e.to_string()))?;
                    agree &= direct == brute;
                }
            }
            ok &= agree;
            lines.push((format!("isotypic traces p={p} i=1 d={n}"), agree));
        }
    }
    let text = match format {
        Format::Json => {
            let v: Vec<_> = lines
                .iter()
                .map(|(name, pass)| serde_json::json!({ "check": name, "pass": pass }))
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({ "query": "oracle-check", "checks": v }))
                .expect("serializes")
                + "\n"
        }
        _ => lines
            .iter()
            .map(|(name, pass)| format!("{} {name}\n", if *pass { "ok  " } else { "FAIL" }))
            .collect(),
    };
    if ok {
        Ok(text)
    } else {
        Err(Failure::Internal(format!("oracle disagreement\n{text}")))
    }
}
