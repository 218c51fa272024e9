//! Command-line front end: materialize Weyl groups, run the structure
//! verifiers, and decide quotient obstructions for pairs or whole surveys.
//!
//! Exit codes are part of the interface: 0 means the requested property
//! holds (a claim verified, an obstruction found, an iso-trivial pair
//! flagged), 1 means it was checked and is false, 2 means the request
//! itself was malformed, 3 means a size or enumeration bound refused the
//! work, and 4 means a pair decision ran out of budget undecided.

mod report;

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use weylcheck::finite_group::{
    alternating_group, cyclic_group, dihedral_group, groupfile, klein_four_group,
    symmetric_group, FiniteGroup, GroupError, GroupFileError, SimpleFactor,
};
use weylcheck::quotient_obstruction::{
    decide_pair, default_types, nonquotient_matrix, verify_jh_compositum, DecideOptions, Outcome,
};
use weylcheck::root_weyl::{
    static_facts, weyl_group, CartanType, Series, TypeParseError, WeylError,
};
use weylcheck::weyl_structure::{
    is_isotrivial_pair, jh_type, verify_exponent_orthogonal, verify_f4_structure,
    verify_invariant_subspaces, verify_isotrivial_pair, verify_normal_subgroups_d,
    verify_product_decomposition, PermSubgroup, Verdict, VerifyError,
};

use report::ReportEnvelope;

#[derive(Parser)]
#[command(name = "weylcheck", version, about = "Weyl groups as explicit finite groups, with verifiers for their structure theory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Largest number of factors a compositum may glue in pair decisions.
    #[arg(long = "max-r", global = true, default_value_t = 2)]
    max_r: u32,

    /// Cap on normal-subgroup lattice scans, in group elements. The
    /// WEYLCHECK_BOUND environment variable overrides this flag.
    #[arg(long, global = true, default_value_t = 10_000)]
    bound: usize,

    /// Emit the JSON report envelope instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,

    /// Reserved. Every search in this version is already deterministic, so
    /// the flag is rejected rather than silently accepted.
    #[arg(long = "seed-free", global = true)]
    seed_free: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Materialize one Weyl group and print its profile
    Group {
        /// Cartan type, e.g. B4, F_4, e6
        r#type: String,
        /// Write the group to this path in the group-description format
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one structure-theory verifier
    Verify {
        /// Claim identifier; `verify help` lists them
        lemma: String,
        /// Rank parameter, for the claims that take one
        #[arg(long)]
        n: Option<usize>,
        /// Restriction subgroup for invariant-subspaces
        #[arg(long, default_value = "symmetric", value_parser = ["symmetric", "alternating", "klein"])]
        subgroup: String,
        /// Claim-specific arguments: two types for isotrivial, factor specs
        /// (sym:N alt:N cyc:N dih:N klein weyl:TYPE) for jh-compositum
        args: Vec<String>,
    },
    /// Decide whether W(TYPE1) is a quotient of some compositum of
    /// quotients of W(TYPE2)
    CheckPair {
        type1: String,
        type2: String,
    },
    /// Pairwise obstruction survey over a list of types (default: the nine
    /// canonical small types)
    Matrix {
        types: Vec<String>,
    },
}

/// A failure with the exit code it maps to.
struct CliFailure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> CliFailure {
    CliFailure { code: 2, message: message.into() }
}

fn bounds(message: impl Into<String>) -> CliFailure {
    CliFailure { code: 3, message: message.into() }
}

impl From<TypeParseError> for CliFailure {
    fn from(e: TypeParseError) -> CliFailure {
        usage(e.to_string())
    }
}

impl From<WeylError> for CliFailure {
    fn from(e: WeylError) -> CliFailure {
        bounds(e.to_string())
    }
}

impl From<GroupError> for CliFailure {
    fn from(e: GroupError) -> CliFailure {
        bounds(e.to_string())
    }
}

impl From<GroupFileError> for CliFailure {
    fn from(e: GroupFileError) -> CliFailure {
        bounds(e.to_string())
    }
}

impl From<std::io::Error> for CliFailure {
    fn from(e: std::io::Error) -> CliFailure {
        bounds(e.to_string())
    }
}

impl From<VerifyError> for CliFailure {
    fn from(e: VerifyError) -> CliFailure {
        match e {
            VerifyError::Unsupported(_) => usage(e.to_string()),
            _ => bounds(e.to_string()),
        }
    }
}

fn main() {
    let started = Instant::now();
    let cli = Cli::parse();
    match run(&cli, started) {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            std::process::exit(f.code);
        }
    }
}

fn run(cli: &Cli, started: Instant) -> Result<i32, CliFailure> {
    if cli.seed_free {
        return Err(usage(
            "--seed-free is reserved for a future release; \
             every search in this version is already deterministic",
        ));
    }
    let bound = effective_bound(cli.bound)?;
    let opts = DecideOptions {
        max_r: cli.max_r,
        normal_bound: bound,
        ..DecideOptions::default()
    };
    match &cli.cmd {
        Cmd::Group { r#type, out } => cmd_group(cli, r#type, out.as_deref(), started),
        Cmd::Verify { lemma, n, subgroup, args } => {
            cmd_verify(cli, lemma, *n, subgroup, args, bound, started)
        }
        Cmd::CheckPair { type1, type2 } => cmd_check_pair(cli, type1, type2, &opts, started),
        Cmd::Matrix { types } => cmd_matrix(cli, types, &opts, started),
    }
}

/// `--bound`, unless the WEYLCHECK_BOUND environment variable overrides it.
fn effective_bound(flag: usize) -> Result<usize, CliFailure> {
    match std::env::var("WEYLCHECK_BOUND") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| usage(format!("WEYLCHECK_BOUND must be an integer, got `{s}`"))),
        Err(std::env::VarError::NotPresent) => Ok(flag),
        Err(e) => Err(usage(format!("WEYLCHECK_BOUND: {e}"))),
    }
}

fn factor_label(f: &SimpleFactor) -> String {
    if f.abelian {
        format!("Z/{}", f.order)
    } else {
        format!("simple of order {}", f.order)
    }
}

fn factors_str(jh: &[SimpleFactor]) -> String {
    let parts: Vec<String> = jh.iter().map(factor_label).collect();
    format!("{{{}}}", parts.join(", "))
}

fn factor_json(f: &SimpleFactor) -> Value {
    json!({ "order": f.order, "abelian": f.abelian })
}

/// Order of the center: the elements commuting with every generator.
fn center_order(w: &FiniteGroup) -> u64 {
    w.elements()
        .iter()
        .filter(|z| w.generators().iter().all(|g| z.compose(g) == g.compose(z)))
        .count() as u64
}

fn cmd_group(
    cli: &Cli,
    type_str: &str,
    out: Option<&std::path::Path>,
    started: Instant,
) -> Result<i32, CliFailure> {
    let t: CartanType = type_str.parse()?;
    if !t.enumerable() {
        let f = static_facts(t);
        let exponent = match f.exponent {
            Some(e) => e.to_string(),
            None => "not on record".to_owned(),
        };
        return Err(bounds(format!(
            "W({t}) has {} elements, beyond full enumeration; its static facts remain \
             available without it (order {}, exponent {}, composition factors {}) and \
             drive `weylcheck verify` and the rule stages of `check-pair` and `matrix`",
            t.order(),
            f.order,
            exponent,
            factors_str(&f.jh),
        )));
    }
    let w = weyl_group(t)?;
    let order = w.order();
    let exponent = w.exponent();
    let center = center_order(&w);
    let class = jh_type(t);
    let facts = static_facts(t);
    let mut wrote: Option<String> = None;
    if let Some(path) = out {
        std::fs::write(path, groupfile::serialize(&w)?)?;
        wrote = Some(path.display().to_string());
    }
    if cli.json {
        let mut env = ReportEnvelope::new("group");
        env.input("type", json!(t.to_string()));
        if let Some(p) = &wrote {
            env.input("out", json!(p));
        }
        env.push_result(json!({
            "type": t.to_string(),
            "order": order,
            "exponent": exponent,
            "center-order": center,
            "jh-class": class.to_string(),
            "composition-factors": facts.jh.iter().map(factor_json).collect::<Vec<_>>(),
        }));
        println!("{}", env.render(started));
    } else {
        println!("type: {t}");
        println!("order: {order}");
        println!("exponent: {exponent}");
        println!("center order: {center}");
        println!("composition factors: {} (class {class})", factors_str(&facts.jh));
        if let Some(p) = &wrote {
            println!("wrote group file: {p}");
        }
    }
    Ok(0)
}

const LEMMAS: &str = "exponent-orthogonal, invariant-subspaces, normal-subgroups-d, \
                      product-decomposition, isotrivial, f4-structure, jh-compositum";

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    cli: &Cli,
    lemma: &str,
    n: Option<usize>,
    subgroup: &str,
    args: &[String],
    bound: usize,
    started: Instant,
) -> Result<i32, CliFailure> {
    let need_n = || n.ok_or_else(|| usage(format!("lemma `{lemma}` needs --n")));
    let verdict: Verdict = match lemma {
        "exponent-orthogonal" => verify_exponent_orthogonal(need_n()?)?,
        "invariant-subspaces" => {
            let h = match subgroup {
                "symmetric" => PermSubgroup::Symmetric,
                "alternating" => PermSubgroup::Alternating,
                _ => PermSubgroup::Klein,
            };
            verify_invariant_subspaces(need_n()?, h)?
        }
        "normal-subgroups-d" => verify_normal_subgroups_d(need_n()?, bound)?,
        "product-decomposition" => verify_product_decomposition(need_n()?, bound)?,
        "isotrivial" => match args {
            [a, b] => verify_isotrivial_pair(a.parse()?, b.parse()?)?,
            _ => return Err(usage("lemma `isotrivial` takes exactly two types, e.g. `verify isotrivial B3 C3`")),
        },
        "f4-structure" => verify_f4_structure()?,
        "jh-compositum" => {
            let mut factors = Vec::new();
            let mut labels = Vec::new();
            for spec in args {
                let (g, label) = parse_factor(spec)?;
                factors.push(g);
                labels.push(label);
            }
            verify_jh_compositum(&factors, &labels, 1_000_000)?
        }
        other => {
            return Err(usage(format!("unknown lemma `{other}`; known lemmas: {LEMMAS}")));
        }
    };
    if cli.json {
        let mut env = ReportEnvelope::new("verify");
        env.input("lemma", json!(lemma));
        if let Some(n) = n {
            env.input("n", json!(n));
        }
        if lemma == "invariant-subspaces" {
            env.input("subgroup", json!(subgroup));
        }
        if !args.is_empty() {
            env.input("args", json!(args));
        }
        env.input("bound", json!(bound));
        env.push_result(serde_json::to_value(&verdict).expect("verdict serializes"));
        println!("{}", env.render(started));
    } else {
        println!("claim: {}", verdict.claim_id);
        println!("params: {}", Value::Object(verdict.params.clone()));
        println!("holds: {}", verdict.holds);
        let witness =
            serde_json::to_string_pretty(&verdict.witness).expect("witness serializes");
        println!("witness: {witness}");
    }
    Ok(if verdict.holds { 0 } else { 1 })
}

/// One compositum factor from a spec string like `sym:4`, `cyc:6`, `klein`,
/// or `weyl:B3`.
fn parse_factor(spec: &str) -> Result<(Arc<FiniteGroup>, String), CliFailure> {
    let (kind, arg) = match spec.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (spec, None),
    };
    let size = |floor: usize, cap: usize| -> Result<usize, CliFailure> {
        let a = arg
            .ok_or_else(|| usage(format!("factor `{spec}` needs a size, e.g. `{kind}:4`")))?;
        let n: usize = a
            .parse()
            .map_err(|_| usage(format!("factor `{spec}`: `{a}` is not a size")))?;
        if n < floor || n > cap {
            return Err(usage(format!("factor `{spec}`: size must be {floor}..={cap}")));
        }
        Ok(n)
    };
    let g = match kind {
        "sym" => symmetric_group(size(1, 8)?),
        "alt" => alternating_group(size(1, 8)?),
        "cyc" => cyclic_group(size(1, 10_000)?),
        "dih" => dihedral_group(size(3, 5_000)?),
        "klein" => {
            if arg.is_some() {
                return Err(usage(format!("factor `{spec}`: klein takes no size")));
            }
            klein_four_group()
        }
        "weyl" => {
            let a = arg
                .ok_or_else(|| usage(format!("factor `{spec}` needs a type, e.g. `weyl:B3`")))?;
            let t: CartanType = a.parse()?;
            return Ok((weyl_group(t)?, spec.to_owned()));
        }
        _ => {
            return Err(usage(format!(
                "factor `{spec}`: unknown kind `{kind}` (sym, alt, cyc, dih, klein, weyl)"
            )));
        }
    };
    Ok((Arc::new(g), spec.to_owned()))
}

/// Whether the two type strings name literally the same group, as opposed to
/// abstractly isomorphic groups on different root systems.
fn same_weyl_group(a: CartanType, b: CartanType) -> bool {
    let a3d3 = |x: CartanType, y: CartanType| {
        x.series == Series::A && x.rank == 3 && y.series == Series::D && y.rank == 3
    };
    a.isogenous(b) || a3d3(a, b) || a3d3(b, a)
}

fn cmd_check_pair(
    cli: &Cli,
    s1: &str,
    s2: &str,
    opts: &DecideOptions,
    started: Instant,
) -> Result<i32, CliFailure> {
    let t1: CartanType = s1.parse()?;
    let t2: CartanType = s2.parse()?;
    if same_weyl_group(t1, t2) || is_isotrivial_pair(t1, t2) {
        let detail = if same_weyl_group(t1, t2) {
            "the two type strings name one group"
        } else {
            "the root systems differ but the groups are isomorphic"
        };
        if cli.json {
            let mut env = ReportEnvelope::new("check-pair");
            env.input("type1", json!(t1.to_string()));
            env.input("type2", json!(t2.to_string()));
            env.push_result(json!({
                "pair": [t1.to_string(), t2.to_string()],
                "outcome": "iso-trivial",
                "detail": detail,
            }));
            println!("{}", env.render(started));
        } else {
            println!("iso-trivial: W({t1}) and W({t2}) are isomorphic ({detail}); no obstruction attempted");
        }
        return Ok(0);
    }
    let rep = decide_pair(t1, t2, opts)?;
    let code = match &rep.outcome {
        Outcome::Obstructed { .. } => 0,
        Outcome::QuotientExists { .. } => 1,
        Outcome::Undecided { .. } => 4,
    };
    if cli.json {
        let mut env = ReportEnvelope::new("check-pair");
        env.input("type1", json!(t1.to_string()));
        env.input("type2", json!(t2.to_string()));
        env.input("max-r", json!(opts.max_r));
        env.input("bound", json!(opts.normal_bound));
        env.push_result(rep.to_json());
        println!("{}", env.render(started));
    } else {
        println!("{}", rep.summary_line());
    }
    Ok(code)
}

fn cmd_matrix(
    cli: &Cli,
    type_strs: &[String],
    opts: &DecideOptions,
    started: Instant,
) -> Result<i32, CliFailure> {
    let types: Vec<CartanType> = if type_strs.is_empty() {
        default_types()
    } else {
        type_strs
            .iter()
            .map(|s| s.parse::<CartanType>())
            .collect::<Result<_, _>>()?
    };
    if types.len() == 1 {
        return Err(usage(
            "matrix needs at least two types (or none for the default nine-type survey)",
        ));
    }
    let m = nonquotient_matrix(&types, opts)?;
    let code = if m.all_non_skipped_obstructed() { 0 } else { 1 };
    if cli.json {
        let mut env = ReportEnvelope::new("matrix");
        env.input(
            "types",
            Value::Array(types.iter().map(|t| json!(t.to_string())).collect()),
        );
        env.input("max-r", json!(opts.max_r));
        env.input("bound", json!(opts.normal_bound));
        env.push_result(m.to_json());
        println!("{}", env.render(started));
    } else {
        print!("{}", m.render_text());
    }
    Ok(code)
}
