//! `jring`: command-line front end for the join-ring library.

mod report;
mod sweep;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use join_ring::arith::{
    classify_field_delta, classify_group_algebra_delta, classify_join_delta, rooted_equivalence_report,
    DeltaOptions,
};
use join_ring::ffield::{field_arith, format_poly, FieldCtx, FieldElement, FieldOp};
use join_ring::groupring::{gr_unit_count_general, wedderburn_abelian, GroupRingElem};
use join_ring::groups::{FiniteGroup, Subgroup};
use join_ring::joinring::{
    diagonal_unit_count, join_decompose, join_idempotents, join_unit_count_general, JoinElem, JoinShape,
};
use join_ring::oracle::{
    self, semimagic_ring, EnumerableRing, GroupRingOracle, JoinOracle, DEFAULT_CAP,
};
use join_ring::zeta::{
    zeta_group_algebra, zeta_join, zeta_matrix_ring, zeta_semimagic, ZetaFunction,
};
use join_ring::Error;

use report::Report;

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "jring", version, about = "Join rings of group rings over finite fields")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for anything randomized.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Enumeration cap, in ring elements.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field data, or one operation: add|sub|mul|div A B, pow A N, inv A, order A.
    Field { spec: String, op: Option<String>, a: Option<String>, b: Option<String> },
    /// Group data.
    Group {
        spec: String,
        /// Also print the Cayley table.
        #[arg(long)]
        table: bool,
    },
    /// Group-ring calculator: info|units|mul|add|sub|inv|unit|order|circulant.
    Gr {
        #[arg(long)]
        field: String,
        #[arg(long)]
        group: String,
        #[arg(default_value = "info")]
        op: String,
        a: Option<String>,
        b: Option<String>,
    },
    /// Join-ring calculator: info|units|mul|add|sub|inv|unit|order|embed|aug|decompose|idempotents.
    Join {
        #[arg(long)]
        shape: String,
        #[arg(default_value = "info")]
        op: String,
        a: Option<String>,
        b: Option<String>,
    },
    /// Zeta function of a group algebra, join ring, semimagic or matrix ring.
    Zeta(RingArgs),
    /// The rooted-case equivalences for cyclic blocks of prime order.
    Rooted {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        base: u64,
    },
    /// Whether every unit satisfies u^(p^r) = 1.
    Delta {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        /// Rings up to this size are also enumerated.
        #[arg(long, default_value_t = 4096)]
        oracle_limit: u64,
    },
    /// Exhaustive queries: units|exponent|order M|radical|delta N|factorization|expu1.
    Oracle {
        #[command(flatten)]
        ring: RingArgs,
        query: String,
        n: Option<u64>,
    },
    /// Grid sweeps: rooted|field-delta|group-delta|join-delta|mul.
    Sweep {
        name: String,
        /// Sample count for randomized sweeps.
        #[arg(long, default_value_t = 10_000)]
        count: usize,
    },
}

#[derive(Args, Clone, Default)]
struct RingArgs {
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    shape: Option<String>,
    /// Semimagic squares of this size (with --field).
    #[arg(long)]
    semimagic: Option<usize>,
    /// Full matrix ring of this size (with --field; zeta only).
    #[arg(long)]
    matrix: Option<u64>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            report.print(cli.json);
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Internal(_) => 3,
                Error::Parse(_) => 2,
                _ => 1,
            })
        }
    }
}

fn run(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Field { spec, op, a, b } => field_cmd(spec, op.as_deref(), a.as_deref(), b.as_deref()),
        Command::Group { spec, table } => group_cmd(spec, *table),
        Command::Gr { field, group, op, a, b } => gr_cmd(field, group, op, a.as_deref(), b.as_deref(), cli.cap),
        Command::Join { shape, op, a, b } => join_cmd(shape, op, a.as_deref(), b.as_deref(), cli.cap),
        Command::Zeta(ring) => zeta_cmd(ring),
        Command::Rooted { primes, base } => {
            let r = rooted_equivalence_report(primes, *base)?;
            let verdict = if r.all_rooted { "all three conditions hold" } else { "all three conditions fail" };
            Ok(Report::from_serialize(format!("agreement: {verdict}"), &r))
        }
        Command::Delta { ring, p, r, oracle_limit } => {
            delta_cmd(ring, *p, *r, DeltaOptions { cap: cli.cap, oracle_limit: *oracle_limit })
        }
        Command::Oracle { ring, query, n } => oracle_cmd(ring, query, *n, cli.cap),
        Command::Sweep { name, count } => sweep::run(name, *count, cli.seed, cli.cap),
    }
}

fn need<'a>(v: Option<&'a str>, what: &str) -> CliResult<&'a str> {
    v.map_or_else(|| usage(format!("missing operand {what}")), Ok)
}

fn field_cmd(spec: &str, op: Option<&str>, a: Option<&str>, b: Option<&str>) -> CliResult<Report> {
    let f = FieldCtx::parse_spec(spec)?;
    let mut rep = Report::new(f.label());
    rep.field("field", f.label());
    rep.field("characteristic", f.characteristic());
    rep.field("degree", f.degree());
    rep.field("order", f.order());
    rep.field("modulus", format_poly(f.modulus()));
    let Some(op) = op else { return Ok(rep) };
    let x = FieldElement::parse(&f, need(a, "A")?)?;
    let result: Value = match op {
        "add" | "sub" | "mul" | "div" => {
            let y = FieldElement::parse(&f, need(b, "B")?)?;
            let op = match op {
                "add" => FieldOp::Add,
                "sub" => FieldOp::Sub,
                "mul" => FieldOp::Mul,
                _ => FieldOp::Div,
            };
            json!(field_arith(&x, &y, op)?.to_string())
        }
        "pow" => {
            let e: u64 = need(b, "N")?.parse().map_err(|_| CliError::Usage("exponent must be an integer".into()))?;
            json!(x.pow(e).to_string())
        }
        "inv" => json!(x.inverse()?.to_string()),
        "order" => json!(x.mult_order()?),
        other => return usage(format!("unknown field operation {other:?}")),
    };
    rep.set_summary(result.as_str().map_or_else(|| result.to_string(), str::to_string));
    rep.field("result", result);
    Ok(rep)
}

fn group_cmd(spec: &str, table: bool) -> CliResult<Report> {
    let g = FiniteGroup::parse_spec(spec)?;
    let mut rep = Report::new(g.label().to_string());
    rep.field("group", g.label());
    rep.field("order", g.order());
    rep.field("abelian", g.is_abelian());
    rep.field("exponent", g.exponent());
    if let Some(inv) = g.invariants() {
        rep.field("invariants", inv);
    }
    rep.field("element_orders", g.order_counts());
    let primes: Vec<u64> = join_ring::arith::factorize(g.order() as u64).into_iter().map(|(p, _)| p).collect();
    let sylow: Vec<Value> = primes
        .iter()
        .map(|&p| json!({ "p": p, "normal": Subgroup::normal_sylow(&g, p).map(|h| h.elements().to_vec()) }))
        .collect();
    rep.field("normal_sylow", sylow);
    if table {
        let rows: Vec<Vec<u32>> = g.elements().map(|a| g.row(a).to_vec()).collect();
        rep.field("table", rows);
    }
    Ok(rep)
}

fn gr_elem(f: &Arc<FieldCtx>, g: &Arc<FiniteGroup>, s: &str) -> CliResult<GroupRingElem> {
    if s.trim_start().starts_with('[') {
        let coeffs: Vec<u64> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(GroupRingElem::from_coeffs(f, g, coeffs)?)
    } else {
        Ok(GroupRingElem::parse(f, g, s)?)
    }
}

fn elem_fields(rep: &mut Report, key: &str, e: &GroupRingElem) {
    rep.set_summary(e.to_string());
    rep.field(key, e.to_string());
    rep.field("coeffs", e.coeffs());
}

fn gr_cmd(field: &str, group: &str, op: &str, a: Option<&str>, b: Option<&str>, cap: u64) -> CliResult<Report> {
    let f = FieldCtx::parse_spec(field)?;
    let g = FiniteGroup::parse_spec(group)?;
    let mut rep = Report::new(format!("{}[{}]", f.label(), g.label()));
    rep.field("ring", format!("{}[{}]", f.label(), g.label()));
    match op {
        "info" | "units" => {
            rep.field("dimension", g.order());
            match gr_unit_count_general(&g, &f) {
                Ok(n) => rep.field("unit_count", n.to_string()),
                Err(e) => rep.field("unit_count", format!("unavailable: {e}")),
            }
            if let Ok(w) = wedderburn_abelian(&g, &f) {
                let entries: Vec<Value> = w
                    .entries
                    .iter()
                    .map(|e| json!({ "d": e.d, "n_d": e.n_d, "count": e.count, "degree": e.degree }))
                    .collect();
                rep.field("wedderburn", entries);
            }
            if op == "units" {
                let ring = GroupRingOracle::new(&f, &g);
                match oracle::enumerate_units(&ring, cap) {
                    Ok(n) => rep.field("enumerated_unit_count", n.to_string()),
                    Err(Error::CapExceeded { .. }) => rep.field("enumerated_unit_count", "beyond cap"),
                    Err(e) => return Err(e.into()),
                }
            }
        }
        "mul" | "add" | "sub" => {
            let x = gr_elem(&f, &g, need(a, "A")?)?;
            let y = gr_elem(&f, &g, need(b, "B")?)?;
            let z = match op {
                "mul" => x.mul(&y)?,
                "add" => x.add(&y)?,
                _ => x.sub(&y)?,
            };
            elem_fields(&mut rep, "result", &z);
        }
        "inv" => {
            let z = gr_elem(&f, &g, need(a, "A")?)?.inverse()?;
            elem_fields(&mut rep, "result", &z);
        }
        "unit" => {
            let u = gr_elem(&f, &g, need(a, "A")?)?.is_unit();
            rep.set_summary(u.to_string());
            rep.field("unit", u);
        }
        "order" => {
            let n = gr_elem(&f, &g, need(a, "A")?)?.unit_order()?;
            rep.set_summary(n.to_string());
            rep.field("order", n);
        }
        "circulant" => {
            let m = gr_elem(&f, &g, need(a, "A")?)?.to_circulant();
            rep.field("matrix", m.to_rows());
        }
        other => return usage(format!("unknown group-ring operation {other:?}")),
    }
    Ok(rep)
}

fn join_elem(shape: &Arc<JoinShape>, s: &str) -> CliResult<JoinElem> {
    if s.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let e = JoinElem::from_json(&v)?;
        if e.shape().label() != shape.label() {
            return Err(Error::ShapeMismatch.into());
        }
        Ok(e)
    } else {
        Ok(JoinElem::parse(shape, s)?)
    }
}

fn join_fields(rep: &mut Report, key: &str, e: &JoinElem) {
    rep.set_summary(e.to_string());
    rep.field(key, e.to_string());
    rep.field("element", e.to_json());
}

fn join_cmd(shape: &str, op: &str, a: Option<&str>, b: Option<&str>, cap: u64) -> CliResult<Report> {
    let s = JoinShape::parse(shape)?;
    let mut rep = Report::new(s.label());
    rep.field("shape", s.label());
    let whole: Vec<Subgroup> = s.groups().iter().map(Subgroup::whole).collect();
    match op {
        "info" | "units" => {
            rep.field("d", s.d());
            rep.field("size", s.size());
            rep.field("dimension", s.dim());
            rep.field("nonmodular_blocks", s.r());
            rep.field("semisimple", s.is_semisimple());
            match join_unit_count_general(&s) {
                Ok(n) => rep.field("unit_count", n.to_string()),
                Err(e) => rep.field("unit_count", format!("unavailable: {e}")),
            }
            match diagonal_unit_count(&s) {
                Ok(n) => rep.field("diagonal_unit_count", n.to_string()),
                Err(e) => rep.field("diagonal_unit_count", format!("unavailable: {e}")),
            }
            if op == "units" {
                match oracle::enumerate_units(&JoinOracle::new(&s), cap) {
                    Ok(n) => rep.field("enumerated_unit_count", n.to_string()),
                    Err(Error::CapExceeded { .. }) => rep.field("enumerated_unit_count", "beyond cap"),
                    Err(e) => return Err(e.into()),
                }
            }
        }
        "mul" | "add" | "sub" => {
            let x = join_elem(&s, need(a, "A")?)?;
            let y = join_elem(&s, need(b, "B")?)?;
            let z = match op {
                "mul" => x.mul(&y)?,
                "add" => x.add(&y)?,
                _ => x.sub(&y)?,
            };
            join_fields(&mut rep, "result", &z);
        }
        "inv" => {
            let z = join_elem(&s, need(a, "A")?)?.inverse()?;
            join_fields(&mut rep, "result", &z);
        }
        "unit" => {
            let u = join_elem(&s, need(a, "A")?)?.is_unit();
            rep.set_summary(u.to_string());
            rep.field("unit", u);
        }
        "order" => {
            let n = join_elem(&s, need(a, "A")?)?.unit_order()?;
            rep.set_summary(n.to_string());
            rep.field("order", n);
        }
        "embed" => {
            let m = join_elem(&s, need(a, "A")?)?.embed();
            rep.field("matrix", m.to_rows());
        }
        "aug" => {
            let x = join_elem(&s, need(a, "A")?)?;
            rep.field("matrix", x.augmentation_matrix().to_rows());
        }
        "decompose" => {
            let x = join_elem(&s, need(a, "A")?)?;
            let (eps, deltas) = join_decompose(&x, &whole)?;
            rep.field("augmented", eps.to_string());
            let parts: Vec<String> = deltas.iter().map(ToString::to_string).collect();
            rep.field("delta_parts", parts);
        }
        "idempotents" => {
            let es = join_idempotents(&s, &whole)?;
            let parts: Vec<String> = es.iter().map(ToString::to_string).collect();
            rep.field("idempotents", parts);
        }
        other => return usage(format!("unknown join-ring operation {other:?}")),
    }
    Ok(rep)
}

fn field_arg(ring: &RingArgs) -> CliResult<Arc<FieldCtx>> {
    match &ring.field {
        Some(f) => Ok(FieldCtx::parse_spec(f)?),
        None => usage("--field is required"),
    }
}

fn zeta_cmd(ring: &RingArgs) -> CliResult<Report> {
    let (subject, z): (String, ZetaFunction) = if let Some(shape) = &ring.shape {
        let s = JoinShape::parse(shape)?;
        (s.label(), zeta_join(&s)?)
    } else if let Some(n) = ring.semimagic {
        let f = field_arg(ring)?;
        (format!("SM{n}({})", f.label()), zeta_semimagic(n as u64, &f)?)
    } else if let Some(n) = ring.matrix {
        let f = field_arg(ring)?;
        (format!("M{n}({})", f.label()), zeta_matrix_ring(n, f.order())?)
    } else if let Some(g) = &ring.group {
        let f = field_arg(ring)?;
        let g = FiniteGroup::parse_spec(g)?;
        (format!("{}[{}]", f.label(), g.label()), zeta_group_algebra(&g, &f)?)
    } else {
        return usage("one of --shape, --group, --semimagic, --matrix is required");
    };
    let mut rep = Report::new(z.to_string());
    rep.field("ring", subject);
    rep.field("zeta", z.to_string());
    rep.field("t_form", z.t_form());
    rep.field("q", z.q());
    rep.field("factors", z.to_json()["factors"].clone());
    rep.field("pole_order", z.pole_order_at_zero());
    Ok(rep)
}

fn delta_cmd(ring: &RingArgs, p: u64, r: u32, opts: DeltaOptions) -> CliResult<Report> {
    let c = if let Some(shape) = &ring.shape {
        classify_join_delta(&JoinShape::parse(shape)?, p, r, &opts)?
    } else {
        let f = field_arg(ring)?;
        match &ring.group {
            Some(g) => classify_group_algebra_delta(f.order(), &FiniteGroup::parse_spec(g)?, p, r, &opts)?,
            None => classify_field_delta(f.order(), p, r)?,
        }
    };
    Ok(Report::from_serialize(c.to_string(), &c))
}

fn oracle_ring(ring: &RingArgs) -> CliResult<Box<dyn EnumerableRing>> {
    if let Some(shape) = &ring.shape {
        return Ok(Box::new(JoinOracle::new(&JoinShape::parse(shape)?)));
    }
    let f = field_arg(ring)?;
    if let Some(n) = ring.semimagic {
        return Ok(Box::new(semimagic_ring(n, &f)?));
    }
    match &ring.group {
        Some(g) => Ok(Box::new(GroupRingOracle::new(&f, &FiniteGroup::parse_spec(g)?))),
        None => usage("one of --shape, --group, --semimagic is required"),
    }
}

fn oracle_cmd(ring: &RingArgs, query: &str, n: Option<u64>, cap: u64) -> CliResult<Report> {
    let start = Instant::now();
    let mut rep = if query == "expu1" {
        let f = field_arg(ring)?;
        let Some(g) = &ring.group else { return usage("expu1 needs --group") };
        let g = FiniteGroup::parse_spec(g)?;
        let e = oracle::exp_u1(&g, &f, cap)?;
        let mut rep = Report::new(e.to_string());
        rep.field("ring", format!("{}[{}]", f.label(), g.label()));
        rep.field("exp_u1", e);
        rep
    } else {
        let r = oracle_ring(ring)?;
        let r: &dyn EnumerableRing = r.as_ref();
        let mut rep = Report::new(r.label());
        rep.field("ring", r.label());
        rep.field("dimension", r.dim());
        match query {
            "units" => {
                let c = oracle::enumerate_units(r, cap)?;
                rep.set_summary(c.to_string());
                rep.field("units", c);
            }
            "exponent" => {
                let e = oracle::unit_group_exponent(r, cap)?;
                rep.set_summary(e.to_string());
                rep.field("exponent", e);
            }
            "order" => {
                let m = n.map_or_else(|| usage("order needs M"), Ok)?;
                let c = oracle::units_of_order(r, m, cap)?;
                rep.set_summary(c.to_string());
                rep.field("order", m);
                rep.field("count", c);
            }
            "radical" => {
                let rad = oracle::jacobson_radical(r, cap)?;
                rep.set_summary(rad.size().to_string());
                rep.field("size", rad.size());
                rep.field("dimension_over_field", rad.basis.dim());
                let elems: Vec<String> = rad.elements.iter().map(|x| r.format(x)).collect();
                rep.field("elements", elems);
            }
            "delta" => {
                let m = n.map_or_else(|| usage("delta needs N"), Ok)?;
                let c = oracle::is_delta_n(r, m, cap)?;
                rep.set_summary(if c.holds { "yes".to_string() } else { "no".to_string() });
                rep.field("n", m);
                rep.field("holds", c.holds);
                rep.field("units", c.units);
                rep.field("witness", c.witness);
                rep.field("witness_order", c.witness_order);
            }
            "factorization" => {
                let fac = oracle::unit_factorization(r, cap)?;
                rep.set_summary(if fac.holds() { "holds" } else { "fails" }.to_string());
                rep.field("units", fac.units);
                rep.field("radical", fac.radical);
                rep.field("semisimple_units", fac.semisimple_units);
                rep.field("holds", fac.holds());
            }
            other => return usage(format!("unknown oracle query {other:?}")),
        }
        rep
    };
    rep.field("elapsed_ms", start.elapsed().as_millis() as u64);
    Ok(rep)
}
