//! The `rvq` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::components::{
    canonical_rep, criterion_vertex, hyperelliptic_test, verify_extension_table, verify_low_genus, ComponentCatalog,
    RowReport,
};
use crate::double_cover::{cover_stratum, to_perm_involution};
use crate::error::{Error, Result};
use crate::extensions::{search_extensions, split_even_zero, split_singularity, ExtensionWitness};
use crate::gp::{GeneralizedPermutation, Reducibility};
use crate::group_analysis::{cycles_closure, harvest_cycles, GroupKind, HarvestConfig};
use crate::homology::{kz_minus_walk, kz_walk};
use crate::induction::{
    cache_dir, cache_path, enumerate_class_with, export_graph, load_class, parse_walk, save_class, ClassMode,
    LocalInverse, RauzyClass, DEFAULT_CLASS_BUDGET,
};
use crate::strata::{orbit_order, parse_orders, stratum_signature, turning_orbits};

#[derive(Parser, Debug)]
#[command(name = "rvq", version, about = "Rauzy–Veech induction on generalized permutations")]
struct Cli {
    /// JSON-lines output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Vertex / group element budget.
    #[arg(long, global = true, default_value_t = DEFAULT_CLASS_BUDGET)]
    budget: usize,
    /// Class cache directory (default: $RVQ_CACHE_DIR or ./.rvq-cache).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GpArg {
    /// Permutation such as "1 2 3 A A 4 / 4 3 B B 2 1", or a representative
    /// label such as tau_zorich(3).
    gp: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Well-formedness, convention and irreducibility.
    Validate(GpArg),
    /// Stratum and genus.
    Stratum(GpArg),
    /// Enumerate the Rauzy class.
    Class {
        #[command(flatten)]
        gp: GpArg,
        /// Identify vertices up to relabeling.
        #[arg(long)]
        reduced: bool,
        /// Print the graph in DOT format.
        #[arg(long)]
        dot: bool,
        /// Store the class in the cache directory.
        #[arg(long)]
        save: bool,
    },
    /// Cocycle matrix along a walk over t, b, T, B.
    Cocycle {
        #[command(flatten)]
        gp: GpArg,
        #[arg(long)]
        walk: String,
        #[arg(long)]
        minus: bool,
    },
    /// Orientation double cover.
    Cover(GpArg),
    /// Split a singularity.
    Extend {
        #[command(flatten)]
        gp: GpArg,
        /// Orbit index, as listed by `stratum --json`.
        #[arg(long)]
        singularity: usize,
        /// Two orders, or three for a split into a permutation with
        /// duplicates in both rows.
        #[arg(long)]
        orders: String,
    },
    /// Scan a Rauzy class for two-letter extensions into a stratum.
    Search {
        /// Seed of the class to scan (permutation or representative label)
        #[arg(long)]
        from: String,
        /// Stratum label such as "Q(3,3,-1,-1)"
        #[arg(long)]
        target_stratum: String,
        /// Keep only extensions failing the hyperelliptic criterion.
        #[arg(long)]
        nonhyp: bool,
        #[arg(long, default_value_t = 10)]
        max: usize,
    },
    /// Connected component.
    Identify(GpArg),
    /// Rauzy–Veech group modulo a prime.
    Group {
        #[command(flatten)]
        gp: GpArg,
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u64,
        #[arg(long)]
        minus: bool,
        #[arg(long, default_value_t = 200)]
        cycles: usize,
        #[arg(long, default_value_t = 60)]
        maxlen: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow reversed arrows in the harvested cycles.
        #[arg(long)]
        mixed: bool,
    },
    /// Verify the table of exceptional extensions.
    VerifyTable {
        /// Rows such as `1-12` or `1,3,5`.
        #[arg(long, default_value = "1-12")]
        rows: String,
        /// Also verify the genus-two and genus-three extensions.
        #[arg(long)]
        low_genus: bool,
    },
}

enum Failure {
    /// Semantic negative: exit 1.
    Negative,
    /// Library error: exit 2.
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Error(e.into())
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Ctx<'a> {
    json: bool,
    budget: usize,
    cache_dir: PathBuf,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, human: impl FnOnce() -> String, value: Value) -> std::io::Result<()> {
        if self.json {
            writeln!(self.out, "{value}")
        } else {
            writeln!(self.out, "{}", human())
        }
    }

    fn catalog(&self) -> ComponentCatalog {
        ComponentCatalog::new(Some(self.cache_dir.clone()), self.budget)
    }
}

fn parse_gp(s: &str) -> Result<GeneralizedPermutation> {
    let s = s.trim();
    if s.contains('/') {
        s.parse()
    } else {
        canonical_rep(s)
    }
}

/// Parses `1-12` or `1,3,5-7`.
fn parse_rows(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::OutOfRange(format!("bad row list `{s}`"));
    let mut rows = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                rows.extend(a..=b);
            }
            None => rows.push(part.parse().map_err(|_| bad())?),
        }
    }
    Ok(rows)
}

/// Runs the command line and returns the exit code: 0 on success, 1 on a
/// negative answer, 2 on usage or input errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // Fails when a pool already exists (repeated calls in one process).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut ctx = Ctx { json: cli.json, budget: cli.budget, cache_dir: cli.cache_dir.unwrap_or_else(cache_dir), out };
    match dispatch(&mut ctx, cli.command) {
        Ok(()) => 0,
        Err(Failure::Negative) => 1,
        Err(Failure::Error(e)) => {
            if ctx.json {
                let _ = writeln!(ctx.out, "{}", json!({ "error": e.to_string() }));
            }
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(ctx: &mut Ctx, cmd: Command) -> Outcome {
    match cmd {
        Command::Validate(a) => validate(ctx, &a.gp),
        Command::Stratum(a) => stratum(ctx, &parse_gp(&a.gp)?),
        Command::Class { gp, reduced, dot, save } => class(ctx, &parse_gp(&gp.gp)?, reduced, dot, save),
        Command::Cocycle { gp, walk, minus } => cocycle(ctx, &parse_gp(&gp.gp)?, &walk, minus),
        Command::Cover(a) => cover(ctx, &parse_gp(&a.gp)?),
        Command::Extend { gp, singularity, orders } => extend(ctx, &parse_gp(&gp.gp)?, singularity, &orders),
        Command::Search { from, target_stratum, nonhyp, max } => search(ctx, &parse_gp(&from)?, &target_stratum, nonhyp, max),
        Command::Identify(a) => identify(ctx, &parse_gp(&a.gp)?),
        Command::Group { gp, modulus, minus, cycles, maxlen, seed, mixed } => {
            let cfg = HarvestConfig { cycles, max_len: maxlen, seed, mixed, ..Default::default() };
            group(ctx, &parse_gp(&gp.gp)?, modulus, minus, &cfg)
        }
        Command::VerifyTable { rows, low_genus } => verify_table(ctx, &parse_rows(&rows)?, low_genus),
    }
}

fn validate(ctx: &mut Ctx, text: &str) -> Outcome {
    let gp = match parse_gp(text) {
        Ok(g) => g,
        Err(e) => {
            ctx.emit(|| format!("invalid: {e}"), json!({ "valid": false, "error": e.to_string() }))?;
            return Err(Failure::Negative);
        }
    };
    let report = gp.validate();
    let red = gp.reducibility();
    let irreducible = red.is_irreducible();
    let ok = irreducible && report.convention_holds;
    let decomposition = match &red {
        Reducibility::Reducible(d) => Some(d),
        Reducibility::Irreducible => None,
    };
    ctx.emit(
        || {
            let mut s = format!(
                "{} ell={} m={} genuine={} convention={} irreducible={}",
                gp, report.ell, report.m, report.genuine, report.convention_holds, irreducible
            );
            if let Some(d) = decomposition {
                let (i1, i2, i3, i4) = d.cuts(gp.ell(), gp.m());
                s += &format!(" cuts=({i1},{i2},{i3},{i4}) pattern={:?}", d.pattern);
            }
            for v in &report.violations {
                s += &format!("\n  {v}");
            }
            s
        },
        json!({ "gp": gp.to_string(), "valid": ok, "report": report, "irreducible": irreducible, "decomposition": decomposition }),
    )?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn stratum(ctx: &mut Ctx, gp: &GeneralizedPermutation) -> Outcome {
    let sig = stratum_signature(gp)?;
    let orbits: Vec<Value> = turning_orbits(gp)
        .iter()
        .enumerate()
        .map(|(i, o)| json!({ "index": i, "positions": o, "order": orbit_order(gp, o) }))
        .collect();
    ctx.emit(
        || format!("{sig} genus={}", sig.genus),
        json!({ "gp": gp.to_string(), "stratum": sig.to_string(), "signature": sig, "orbits": orbits }),
    )?;
    Ok(())
}

fn load_or_enumerate(ctx: &Ctx, gp: &GeneralizedPermutation, mode: ClassMode, save: bool) -> Result<RauzyClass> {
    let path = cache_path(&ctx.cache_dir, gp, mode);
    if path.exists() {
        if let Ok(c) = load_class(&path) {
            if c.is_complete() && c.contains(gp) {
                return Ok(c);
            }
        }
    }
    let c = enumerate_class_with(gp, mode, ctx.budget)?;
    if save {
        save_class(&c, &path)?;
    }
    Ok(c)
}

fn class(ctx: &mut Ctx, gp: &GeneralizedPermutation, reduced: bool, dot: bool, save: bool) -> Outcome {
    let mode = if reduced { ClassMode::Reduced } else { ClassMode::Labeled };
    let (c, complete) = match load_or_enumerate(ctx, gp, mode, save) {
        Ok(c) => (c, true),
        Err(Error::ClassBudgetExceeded(partial)) => (*partial, false),
        Err(e) => return Err(e.into()),
    };
    if dot {
        write!(ctx.out, "{}", export_graph(&c))?;
    } else {
        let connected = complete && c.is_strongly_connected();
        ctx.emit(
            || format!("vertices={} arrows={} complete={complete} strongly_connected={connected} mode={mode}", c.len(), c.arrow_count()),
            json!({ "base": gp.to_string(), "mode": mode.to_string(), "vertices": c.len(), "arrows": c.arrow_count(),
                    "complete": complete, "strongly_connected": connected }),
        )?;
    }
    if complete {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn cocycle(ctx: &mut Ctx, gp: &GeneralizedPermutation, walk: &str, minus: bool) -> Outcome {
    let steps = parse_walk(walk)?;
    let resolver = LocalInverse;
    let c = if minus { kz_minus_walk(gp, &steps, Some(&resolver))? } else { kz_walk(gp, &steps, Some(&resolver))? };
    let rows = c.matrix.to_i64_rows().ok_or_else(|| Error::OutOfRange("matrix entry exceeds 64 bits".into()))?;
    ctx.emit(
        || c.matrix.to_string().trim_end().to_string(),
        json!({ "gp": gp.to_string(), "walk": walk, "minus": minus, "end": c.end.to_string(), "matrix": rows }),
    )?;
    Ok(())
}

fn cover(ctx: &mut Ctx, gp: &GeneralizedPermutation) -> Outcome {
    let sig = stratum_signature(gp)?;
    let c = cover_stratum(&sig);
    let table = to_perm_involution(gp)?;
    ctx.emit(
        || {
            format!(
                "{} genus={} marked={} minus_eligible={}\n{}",
                c, c.genus, c.marked_points, c.minus_eligible, table
            )
        },
        json!({ "gp": gp.to_string(), "stratum": sig.to_string(), "cover": c.to_string(), "detail": c, "involution": table }),
    )?;
    Ok(())
}

fn witness_json(w: &ExtensionWitness) -> Value {
    json!({ "base": w.base.to_string(), "extended": w.extended.to_string(), "letter": w.letter,
            "convention_holds": w.convention_holds })
}

fn extend(ctx: &mut Ctx, gp: &GeneralizedPermutation, singularity: usize, orders: &str) -> Outcome {
    let o: Vec<i64> = orders
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::MalformedText(format!("bad orders `{orders}`"))))
        .collect::<Result<_>>()?;
    if !(2..=3).contains(&o.len()) {
        return Err(Error::MalformedText(format!("expected two or three orders, got `{orders}`")).into());
    }
    let orbits = turning_orbits(gp);
    let orbit = orbits.get(singularity).ok_or(Error::NoSuchSingularity(singularity))?;
    let total = orbit_order(gp, orbit);
    if o.iter().sum::<i64>() != total {
        return Err(Error::BadSplit { order: total, m11: o[0], m12: o[1..].iter().sum() }.into());
    }
    let witnesses = match o[..] {
        [m11, _] => vec![split_singularity(gp, singularity, m11)?],
        [m11, m12, m13] => {
            let (a, b) = split_even_zero(gp, singularity, m11, m12, m13)?;
            vec![a, b]
        }
        _ => return Err(Error::MalformedText(format!("expected two or three orders, got `{orders}`")).into()),
    };
    let end = &witnesses.last().expect("non-empty").extended;
    let sig = stratum_signature(end)?;
    ctx.emit(
        || format!("{end} {sig} genus={}", sig.genus),
        json!({ "extended": end.to_string(), "stratum": sig.to_string(), "steps": witnesses.iter().map(witness_json).collect::<Vec<_>>() }),
    )?;
    Ok(())
}

fn search(ctx: &mut Ctx, from: &GeneralizedPermutation, target: &str, nonhyp: bool, max: usize) -> Outcome {
    let orders = parse_orders(target)?;
    let class = load_or_enumerate(ctx, from, ClassMode::Reduced, false)?;
    let accept = |g: &GeneralizedPermutation| {
        !nonhyp || criterion_vertex(g, 10_000).and_then(|v| hyperelliptic_test(&v).ok()) == Some(false)
    };
    let found = search_extensions(&class, &orders, accept, ctx.budget, max)?;
    for f in &found {
        let (base, ext) = (f.base().to_string(), f.extended().to_string());
        ctx.emit(|| format!("{ext}  from  {base}"), json!({ "base": base, "extended": ext }))?;
    }
    if found.is_empty() {
        ctx.emit(|| "no extension found".to_string(), json!({ "found": 0 }))?;
        return Err(Failure::Negative);
    }
    Ok(())
}

fn identify(ctx: &mut Ctx, gp: &GeneralizedPermutation) -> Outcome {
    match ctx.catalog().identify(gp)? {
        Some(id) => {
            ctx.emit(|| format!("{}  ({})", id.label, id.evidence), json!({ "gp": gp.to_string(), "identification": id }))?;
            Ok(())
        }
        None => {
            let sig = stratum_signature(gp)?;
            ctx.emit(|| format!("{sig}: component not determined"), json!({ "gp": gp.to_string(), "identification": null }))?;
            Err(Failure::Negative)
        }
    }
}

fn group(ctx: &mut Ctx, gp: &GeneralizedPermutation, p: u64, minus: bool, cfg: &HarvestConfig) -> Outcome {
    let kind = if minus { GroupKind::Minus } else { GroupKind::Plus };
    let class = load_or_enumerate(ctx, gp, ClassMode::Reduced, false)?;
    let cycles = harvest_cycles(gp, &class, kind, cfg)?;
    let r = cycles_closure(gp, &cycles, kind, &class, p, ctx.budget)?;
    ctx.emit(
        || {
            format!(
                "order={} index={} |Sp({},F_{})|={} cycles={} maxlen={} seed={} kind={}",
                r.order,
                r.index,
                2 * r.genus,
                r.p,
                r.sp_order,
                cycles.len(),
                cfg.max_len,
                cfg.seed,
                if minus { "minus" } else { "plus" }
            )
        },
        json!({ "gp": gp.to_string(), "kind": kind, "p": r.p, "genus": r.genus, "order": r.order.to_string(),
                "index": r.index.to_string(), "sp_order": r.sp_order.to_string(), "cycles": cycles.len(),
                "max_len": cfg.max_len, "seed": cfg.seed, "mixed": cfg.mixed }),
    )?;
    Ok(())
}

fn row_line(r: &RowReport) -> String {
    let status = if r.passed { "PASS" } else { "FAIL" };
    let mut s = format!("{status} row {}: {} -> {}  {}", r.row, r.start, r.end, r.gp);
    for f in &r.failures {
        s += &format!("\n  {f}");
    }
    s
}

fn verify_table(ctx: &mut Ctx, rows: &[usize], low_genus: bool) -> Outcome {
    let catalog = ctx.catalog();
    let mut reports = verify_extension_table(&catalog, rows)?;
    if low_genus {
        reports.extend(verify_low_genus(&catalog)?);
    }
    for r in &reports {
        ctx.emit(|| row_line(r), serde_json::to_value(r).expect("serializable"))?;
    }
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("rvq").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn rows() {
        assert_eq!(parse_rows("1-3,7").unwrap(), vec![1, 2, 3, 7]);
        assert!(parse_rows("x").is_err());
    }

    #[test]
    fn stratum_line() {
        let (code, out, _) = run_args(&["stratum", "1 2 3 A A 4 / 4 3 B B 2 1"]);
        assert_eq!((code, out.trim()), (0, "Q(6,-1,-1) genus=2"));
        let (_, out, _) = run_args(&["stratum", "tau_sym(4)"]);
        assert_eq!(out.trim(), "H(2) [as Q(4)] genus=2");
    }

    #[test]
    fn validate_codes() {
        let (code, out, _) = run_args(&["validate", "1 2 / 2 2 1"]);
        assert_eq!(code, 1);
        assert!(out.contains("letter"), "{out}");
        assert_eq!(run_args(&["validate", "1 2 / 2 1"]).0, 0);
        assert_eq!(run_args(&["validate", "1 2 / 1 2"]).0, 1);
        assert_eq!(run_args(&["bogus"]).0, 2);
        assert_eq!(run_args(&["stratum", "1 2 / 2 2 1"]).0, 2);
    }
}
