use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use groupcodes::codes::{
    code_from_ideal, count_group_codes, dihedral_dual_ideal, min_distance, verify_distance, Budget, CodeParams,
    IdealSpec, LinearCode, Strategy,
};
use groupcodes::expr::{element_from_json, format_element, parse_element, parse_generator_names, parse_group};
use groupcodes::galg::{build_iso, left_ideal_from_element, Group};
use groupcodes::gf::SmallField;
use groupcodes::quantum::css_build;
use groupcodes::repro::{run_repro, TABLES};
use groupcodes::wa::{decompose_group, GroupSpec};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "groupcodes", version, about = "Group algebras over finite fields and the codes they carry")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for distance searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Syndrome-matching budget for exact distances, in patterns.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Wedderburn-Artin decomposition of F_q[G].
    Decompose {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        group: String,
    },
    /// Number of group codes (left ideals) of F_q[G].
    Count {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        group: String,
    },
    /// The code F_q[G]·u of an element u.
    ElementCode {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        group: String,
        /// Element text, or @file holding text or element JSON.
        #[arg(long)]
        elem: String,
        /// Generator names per factor, e.g. "x,y:z".
        #[arg(long)]
        gens: Option<String>,
        /// exhaustive, low-weight, estimate or auto.
        #[arg(long)]
        distance: Option<String>,
    },
    /// The code of a blockwise ideal.
    BuildCode {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        group: String,
        /// Ideal JSON, inline or @file.
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        distance: Option<String>,
    },
    /// Dual of an ideal of F_q[D_n] by the dihedral dual tables.
    Dual {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        group: String,
        #[arg(long)]
        ideal: String,
    },
    /// CSS parameters from two ideals of F_q[D_n].
    Css {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        group: String,
        #[arg(long)]
        ideal1: String,
        #[arg(long)]
        ideal2: String,
    },
    /// Minimum distance of a code given as JSON.
    Distance {
        /// Code JSON ({"q","n","generator"}), inline or @file.
        #[arg(long)]
        code: String,
        #[arg(long, default_value = "auto")]
        strategy: String,
        /// Certify this distance instead of searching.
        #[arg(long)]
        claim: Option<usize>,
    },
    /// Recompute a published table and compare.
    Repro {
        /// counts, d4c4, dncr-table, dndm-table, css16 or css20.
        table: String,
    },
}

fn read_arg(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}")),
        None => Ok(s.to_string()),
    }
}

fn read_json(s: &str) -> Result<Value> {
    let text = read_arg(s)?;
    serde_json::from_str(&text).context("parsing JSON")
}

fn read_code(s: &str) -> Result<LinearCode> {
    let v = read_json(s)?;
    let v = v.get("code").cloned().unwrap_or(v);
    Ok(LinearCode::from_json(&v)?)
}

fn read_ideal(q: u64, spec: &GroupSpec, s: &str) -> Result<(groupcodes::galg::AlgebraIso, IdealSpec)> {
    let iso = build_iso(q, spec)?;
    let ideal = IdealSpec::from_json(&iso.decomposition, &read_json(s)?)?;
    Ok((iso, ideal))
}

fn dihedral(group: &str) -> Result<GroupSpec> {
    let spec = parse_group(group)?;
    if !matches!(spec, GroupSpec::Dihedral(_)) {
        bail!("expected a dihedral group D<n>, got {spec}");
    }
    Ok(spec)
}

fn params(code: &LinearCode, strategy: Option<&str>, budget: &Budget) -> Result<CodeParams> {
    let d = match strategy {
        Some(s) if code.k() > 0 => Some(min_distance(code, s.parse::<Strategy>()?, budget)?),
        _ => None,
    };
    Ok(CodeParams { n: code.n, k: code.k(), d })
}

fn describe(p: &CodeParams, q: usize) -> String {
    match &p.d {
        None => format!("[{}, {}]_{}", p.n, p.k, q),
        Some(d) => {
            let mark = if d.status == groupcodes::codes::DistanceStatus::Exact { "" } else { "≤" };
            format!("[{}, {}, {}{}]_{} ({})", p.n, p.k, mark, d.value, q, d.method)
        }
    }
}

fn emit(json: bool, v: Value, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    } else {
        println!("{text}");
    }
}

fn run(cli: Cli) -> Result<bool> {
    let mut budget = Budget::default();
    if let Some(b) = cli.budget {
        budget.ops = b;
    }
    let json = cli.json;
    match cli.command {
        Command::Decompose { q, group } => {
            let dec = decompose_group(q, &parse_group(&group)?)?;
            emit(json, serde_json::to_value(&dec)?, format!("F_{q}[{group}] = {dec}"));
        }
        Command::Count { q, group } => {
            let dec = decompose_group(q, &parse_group(&group)?)?;
            let n = count_group_codes(&dec);
            emit(
                json,
                json!({ "q": q, "group": group, "decomposition": dec.to_string(), "count": n.to_string() }),
                n.to_string(),
            );
        }
        Command::ElementCode { q, group, elem, gens, distance } => {
            let g = Group::new(&parse_group(&group)?)?;
            let field = SmallField::new(q)?;
            let names = gens.as_deref().map(parse_generator_names);
            let text = read_arg(&elem)?;
            let u = match serde_json::from_str::<Value>(&text) {
                Ok(v) if v.get("coeffs").is_some() => element_from_json(&v)?,
                _ => parse_element(&text, &g, &field, names.as_deref())?,
            };
            if u.group.spec() != g.spec() || u.field.q != field.q {
                bail!("element belongs to F_{}[{}]", u.field.q, u.group.spec());
            }
            let code = left_ideal_from_element(&u);
            let p = params(&code, distance.as_deref(), &budget)?;
            emit(
                json,
                json!({ "element": format_element(&u, names.as_deref())?, "params": p, "code": code }),
                describe(&p, code.q()),
            );
        }
        Command::BuildCode { q, group, ideal, distance } => {
            let (iso, ideal) = read_ideal(q, &parse_group(&group)?, &ideal)?;
            let code = code_from_ideal(&iso, &ideal)?;
            let p = params(&code, distance.as_deref(), &budget)?;
            emit(json, json!({ "params": p, "code": code }), describe(&p, code.q()));
        }
        Command::Dual { q, group, ideal } => {
            let spec = dihedral(&group)?;
            let (_, ideal) = read_ideal(q, &spec, &ideal)?;
            let GroupSpec::Dihedral(n) = spec else { unreachable!() };
            let dual = dihedral_dual_ideal(q, n, &ideal)?;
            let v = dual.to_json();
            emit(json, v.clone(), serde_json::to_string(&v)?);
        }
        Command::Css { q, group, ideal1, ideal2 } => {
            let spec = dihedral(&group)?;
            let (iso, i1) = read_ideal(q, &spec, &ideal1)?;
            let i2 = IdealSpec::from_json(&iso.decomposition, &read_json(&ideal2)?)?;
            let c1 = code_from_ideal(&iso, &i1)?;
            let c2 = code_from_ideal(&iso, &i2)?;
            let p = css_build(&c1, &c2, &budget)?;
            emit(json, serde_json::to_value(&p)?, p.to_string());
        }
        Command::Distance { code, strategy, claim } => {
            let code = read_code(&code)?;
            if let Some(d) = claim {
                let cert = verify_distance(&code, d, &budget)?;
                let ok = cert.certified(d);
                emit(
                    json,
                    json!({ "claim": d, "certified": ok, "certificate": cert }),
                    if ok { format!("d = {d} certified") } else { format!("d = {d} not certified") },
                );
                return Ok(ok);
            }
            let p = params(&code, Some(&strategy), &budget)?;
            emit(json, serde_json::to_value(&p)?, describe(&p, code.q()));
        }
        Command::Repro { table } => {
            if !TABLES.contains(&table.as_str()) {
                bail!("unknown table {table:?}; expected one of {}", TABLES.join(", "));
            }
            let report = run_repro(&table, &budget)?;
            let mut text = String::new();
            for r in &report.rows {
                let status = match r.status {
                    groupcodes::repro::RowStatus::Match => "ok",
                    groupcodes::repro::RowStatus::UpperBoundOnly => "upper bound",
                    groupcodes::repro::RowStatus::Mismatch => "MISMATCH",
                };
                text.push_str(&format!("{:<28} expected {:<18} got {:<18} {status}", r.label, r.expected, r.got));
                if let Some(n) = &r.note {
                    text.push_str(&format!("\n    {n}"));
                }
                text.push('\n');
            }
            emit(json, json!({ "table": report.table, "ok": report.ok(), "rows": report.rows }), text.trim_end().into());
            return Ok(report.ok());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
