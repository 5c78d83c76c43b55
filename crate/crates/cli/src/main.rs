//! `cbct`: c-DDT / c-BCT tables, Weil sums, golden-table reproduction,
//! and verification sweeps over GF(2^n), from the command line.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error,
//! 3 size-guardrail trip (pass --force to override where supported).
//! All data output is deterministic: integers only, fixed orderings, no
//! timestamps.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cbct_core::equiv::{
    check_c_inverse_symmetry, check_input_composition, check_input_translation,
    check_output_composition, compare_table1, reproduce_table1, table1_to_csv, EquivError,
    EquivalenceReport,
};
use cbct_core::field::{FieldElement, FieldError, FieldSpec, GoldParams};
use cbct_core::gold::{closed_entry, decomposition_entry, Classification, SAlphaBetaTable};
use cbct_core::tables::{
    cbct_brute_guarded, cddt_guarded, DdtWeilIdentity, SBox, SpectrumTable, TableError,
    TableExport, TableKind,
};
use cbct_core::verify::{run_suite, Suite};
use cbct_core::weil::{weil_brute, weil_closed, SumMethod, WeilResult};

#[derive(Parser)]
#[command(name = "cbct", version, about = "c-boomerang and c-difference tables over GF(2^n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a field (modulus, generator) as text or JSON.
    Field(FieldArgs),
    /// Evaluate the Weil sum S(u, v) of the Gold map, brute or closed.
    Weil(WeilArgs),
    /// Compute a full c-DDT table and its uniformity.
    Ddt(DdtArgs),
    /// Compute a c-BCT row at fixed a (brute) or closed-form entries at a = 1.
    Bct(BctArgs),
    /// Reproduce the bundled F_64 entry-set table and compare it.
    Table1(Table1Args),
    /// Equivalence experiments: multiplier inversion, input/output
    /// composition, translations.
    Equiv(EquivArgs),
    /// Run verification sweeps (closed forms against brute oracles).
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct FieldArgs {
    /// Extension degree (2..=24).
    #[arg(long)]
    n: u32,
    /// Reduction polynomial as hex (little-endian bits), e.g. 0x5B.
    #[arg(long)]
    poly: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    out: OutFormat,
}

#[derive(Args)]
struct WeilArgs {
    #[arg(long)]
    n: u32,
    /// Gold exponent parameter: the map is x^(2^k+1).
    #[arg(long)]
    k: u32,
    /// Coefficient of the Gold term (`g^i`, `0xHH`, or `0`).
    #[arg(long)]
    u: String,
    /// Coefficient of the linear term.
    #[arg(long)]
    v: String,
    #[arg(long, value_enum, default_value = "brute")]
    method: Method,
    #[arg(long)]
    poly: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    out: OutFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Closed,
    Decomp,
    DdtWeil,
}

#[derive(Args)]
struct DdtArgs {
    #[arg(long)]
    n: u32,
    /// Gold parameter k (the function is x^(2^k+1)).
    #[arg(long, conflicts_with = "d")]
    k: Option<u32>,
    /// Arbitrary power exponent d (the function is x^d).
    #[arg(long)]
    d: Option<u64>,
    /// The multiplier c (nonzero).
    #[arg(long)]
    c: String,
    #[arg(long)]
    poly: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    out: OutFormat,
    /// Override the size guardrail.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct BctArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, conflicts_with = "d")]
    k: Option<u32>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    c: String,
    /// Input difference (brute rows only; closed methods fix a = 1).
    #[arg(long, default_value = "g^0")]
    a: String,
    /// Single output difference; omit to sweep every b.
    #[arg(long)]
    b: Option<String>,
    #[arg(long, value_enum, default_value = "brute")]
    method: Method,
    /// S-sum method for --method decomp.
    #[arg(long, value_enum, default_value = "closed")]
    s_method: SMethod,
    #[arg(long)]
    poly: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    out: OutFormat,
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SMethod {
    Brute,
    Closed,
}

#[derive(Args)]
struct Table1Args {
    #[arg(long, value_enum, default_value = "text")]
    out: OutFormat,
}

#[derive(Args)]
struct EquivArgs {
    #[arg(long, default_value = "6")]
    n: u32,
    /// Which transformation to check.
    #[arg(long, value_enum)]
    check: EquivCheck,
    #[arg(long)]
    c: String,
    /// Power exponent of the base function x^d.
    #[arg(long, default_value = "17")]
    d: u64,
    /// The composed linear map is x^(2^lk) + lu * x.
    #[arg(long, default_value = "2")]
    lk: u32,
    #[arg(long, default_value = "g")]
    lu: String,
    /// Translation offset for --check translate.
    #[arg(long, default_value = "g")]
    t: String,
    #[arg(long)]
    poly: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EquivCheck {
    /// c against c^-1; must always be preserved.
    Inverse,
    /// Linear map composed on the input; must always be preserved.
    Input,
    /// Linear map composed on the output; reported, not asserted.
    Output,
    /// x -> x + t on the input; reported, not asserted.
    Translate,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: all, weil, kernel, c1, gold, decomp, identity, table1,
    /// symmetry, uniformity, properties, partition, equivalence.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest extension degree the scalable sweeps run at.
    #[arg(long, default_value = "8")]
    n_max: u32,
    #[arg(long)]
    force: bool,
}

enum Failure {
    Usage(String),
    Mismatch(String),
    Guardrail(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Mismatch(_) => 1,
            Failure::Guardrail(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Mismatch(m) | Failure::Guardrail(m) => m,
        }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Self {
        match e {
            TableError::SweepTooLarge { .. } => Failure::Guardrail(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<EquivError> for Failure {
    fn from(e: EquivError) -> Self {
        match e {
            EquivError::Table(t) => t.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Field(args) => cmd_field(args),
        Command::Weil(args) => cmd_weil(args),
        Command::Ddt(args) => cmd_ddt(args),
        Command::Bct(args) => cmd_bct(args),
        Command::Table1(args) => cmd_table1(args),
        Command::Equiv(args) => cmd_equiv(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn build_field(n: u32, poly: &Option<String>) -> Result<Arc<FieldSpec>, Failure> {
    let field = match poly {
        None => FieldSpec::new(n)?,
        Some(text) => {
            let hex = text
                .strip_prefix("0x")
                .or_else(|| text.strip_prefix("0X"))
                .unwrap_or(text);
            let bits = u64::from_str_radix(hex, 16)
                .map_err(|_| Failure::Usage(format!("cannot parse modulus {text:?} as hex")))?;
            FieldSpec::with_modulus(n, bits)?
        }
    };
    Ok(Arc::new(field))
}

fn parse_el(field: &FieldSpec, text: &str, what: &str) -> Result<FieldElement, Failure> {
    field
        .parse_element(text)
        .map_err(|e| Failure::Usage(format!("{what}: {e}")))
}

fn gold_exponent(n: u32, k: Option<u32>, d: Option<u64>) -> Result<(Option<u32>, u64), Failure> {
    match (k, d) {
        (Some(k), None) => {
            if k == 0 || k >= n {
                return Err(Failure::Usage(format!("need 1 <= k < n, got k={k}, n={n}")));
            }
            Ok((Some(k), (1u64 << k) + 1))
        }
        (None, Some(d)) => {
            if d == 0 {
                return Err(Failure::Usage("exponent d must be positive".into()));
            }
            Ok((None, d))
        }
        (None, None) => Err(Failure::Usage("pass --k (Gold map) or --d (power map)".into())),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

fn cmd_field(args: FieldArgs) -> Result<(), Failure> {
    let field = build_field(args.n, &args.poly)?;
    let description = field.describe();
    match args.out {
        OutFormat::Json => println!(
            "{}",
            serde_json::to_string(&description).expect("description serializes")
        ),
        _ => {
            println!("GF(2^{}), modulus {} ({})", field.n(), description.poly, cbct_core::field::poly_string(field.modulus()));
            println!("generator g = y, order {}", u64::from(field.q()) - 1);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct WeilPayload {
    n: u32,
    k: u32,
    poly: String,
    u: String,
    v: String,
    method: &'static str,
    value: i64,
    case: Option<&'static str>,
}

fn cmd_weil(args: WeilArgs) -> Result<(), Failure> {
    let field = build_field(args.n, &args.poly)?;
    if args.k == 0 || args.k >= args.n {
        return Err(Failure::Usage(format!(
            "need 1 <= k < n, got k={}, n={}",
            args.k, args.n
        )));
    }
    let u = parse_el(&field, &args.u, "--u")?;
    let v = parse_el(&field, &args.v, "--v")?;
    let result: WeilResult = match args.method {
        Method::Brute => weil_brute(&field, args.k, u, v),
        Method::Closed => {
            let params = GoldParams::new(args.n, args.k);
            weil_closed(&field, &params, u, v)
        }
        _ => return Err(Failure::Usage("weil supports --method brute|closed".into())),
    };
    let payload = WeilPayload {
        n: args.n,
        k: args.k,
        poly: format!("0x{:X}", field.modulus()),
        u: field.format_element(u),
        v: field.format_element(v),
        method: match args.method {
            Method::Brute => "brute",
            _ => "closed",
        },
        value: result.value,
        case: result.case.map(|c| c.label()),
    };
    match args.out {
        OutFormat::Json => println!("{}", serde_json::to_string(&payload).expect("serializes")),
        _ => match payload.case {
            Some(case) => println!("S(u, v) = {} [{case}]", payload.value),
            None => println!("S(u, v) = {}", payload.value),
        },
    }
    Ok(())
}

fn emit_table(table: &SpectrumTable, out: OutFormat) {
    match out {
        OutFormat::Csv => print!("{}", table.to_csv()),
        OutFormat::Json => println!("{}", table.to_json()),
        OutFormat::Text => {
            let kind = match table.kind() {
                TableKind::CDdt => "c-DDT",
                TableKind::CBctRow => "c-BCT row",
                TableKind::CBctFull => "c-BCT",
            };
            println!("{kind}: uniformity {}", table.uniformity());
            println!("entry set {:?}", table.entry_set(true));
        }
    }
}

fn cmd_ddt(args: DdtArgs) -> Result<(), Failure> {
    let field = build_field(args.n, &args.poly)?;
    let (_, d) = gold_exponent(args.n, args.k, args.d)?;
    let c = parse_el(&field, &args.c, "--c")?;
    let sbox = SBox::power(&field, d);
    let table = cddt_guarded(&sbox, c, args.force)?;
    emit_table(&table, args.out);
    Ok(())
}

fn closed_row_export(
    field: &Arc<FieldSpec>,
    c: FieldElement,
    entry: impl Fn(FieldElement) -> u64,
) -> TableExport {
    let mut counts = BTreeMap::new();
    let mut entry_set = std::collections::BTreeSet::new();
    let mut uniformity = 0u64;
    for b in field.elements().skip(1) {
        let v = entry(b);
        counts.insert(field.format_element(b), v);
        entry_set.insert(v);
        uniformity = uniformity.max(v);
    }
    TableExport {
        kind: "cBCT-row".to_string(),
        n: field.n(),
        poly: format!("0x{:X}", field.modulus()),
        c: field.format_element(c),
        a: Some(field.format_element(FieldElement::ONE)),
        counts,
        uniformity,
        entry_set: entry_set.into_iter().collect(),
    }
}

fn emit_export(export: &TableExport, out: OutFormat) {
    match out {
        OutFormat::Json => {
            println!("{}", serde_json::to_string(export).expect("serializes"))
        }
        OutFormat::Csv => {
            println!("b,count");
            for (b, v) in &export.counts {
                println!("{b},{v}");
            }
        }
        OutFormat::Text => {
            println!("{}: uniformity {}", export.kind, export.uniformity);
            println!("entry set {:?}", export.entry_set);
        }
    }
}

fn cmd_bct(args: BctArgs) -> Result<(), Failure> {
    let field = build_field(args.n, &args.poly)?;
    let (k, d) = gold_exponent(args.n, args.k, args.d)?;
    let c = parse_el(&field, &args.c, "--c")?;
    if c.is_zero() {
        return Err(Failure::Usage("c must be nonzero".into()));
    }
    let a = parse_el(&field, &args.a, "--a")?;
    let single_b = match &args.b {
        Some(text) => Some(parse_el(&field, text, "--b")?),
        None => None,
    };

    match args.method {
        Method::Brute => {
            let sbox = SBox::power(&field, d);
            let row = cbct_brute_guarded(&sbox, c, a, args.force)?;
            if let Some(b) = single_b {
                println!("{}", row.row_count(b));
            } else {
                emit_table(&row, args.out);
            }
        }
        Method::Closed => {
            let k = k.ok_or_else(|| {
                Failure::Usage("--method closed needs the Gold parameter --k".into())
            })?;
            if a != FieldElement::ONE {
                return Err(Failure::Usage("closed-form entries are defined at a = 1".into()));
            }
            let params = GoldParams::new(args.n, k);
            let cls = Classification::new_guarded(&field, params, c, args.force)?;
            if let Some(b) = single_b {
                if b.is_zero() {
                    return Err(Failure::Usage("closed-form entries need b != 0".into()));
                }
                println!("{}", closed_entry(&cls, b));
            } else {
                let export = closed_row_export(&field, c, |b| closed_entry(&cls, b));
                emit_export(&export, args.out);
            }
        }
        Method::Decomp => {
            let k = k.ok_or_else(|| {
                Failure::Usage("--method decomp needs the Gold parameter --k".into())
            })?;
            if a != FieldElement::ONE {
                return Err(Failure::Usage("the decomposition is defined at a = 1".into()));
            }
            let params = GoldParams::new(args.n, k);
            let method = match args.s_method {
                SMethod::Brute => SumMethod::Brute,
                SMethod::Closed => SumMethod::Closed,
            };
            let table = SAlphaBetaTable::new(&field, params, method)?;
            if let Some(b) = single_b {
                if b.is_zero() {
                    return Err(Failure::Usage("the decomposition needs b != 0".into()));
                }
                println!("{}", decomposition_entry(&table, c, b));
            } else {
                let export =
                    closed_row_export(&field, c, |b| decomposition_entry(&table, c, b));
                emit_export(&export, args.out);
            }
        }
        Method::DdtWeil => {
            if a != FieldElement::ONE {
                return Err(Failure::Usage("the identity is defined at a = 1".into()));
            }
            let identity = DdtWeilIdentity::new_guarded(&field, d, c, args.force)?;
            if let Some(b) = single_b {
                if b.is_zero() {
                    return Err(Failure::Usage("the identity needs b != 0".into()));
                }
                println!("{}", identity.entry(b));
            } else {
                let export = closed_row_export(&field, c, |b| identity.entry(b));
                emit_export(&export, args.out);
            }
        }
    }
    Ok(())
}

fn cmd_table1(args: Table1Args) -> Result<(), Failure> {
    let rows = reproduce_table1();
    let mismatches = compare_table1(&rows);
    match args.out {
        OutFormat::Csv => print!("{}", table1_to_csv(&rows)),
        _ => {
            let fmt = |s: &[u64]| {
                s.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            };
            for row in &rows {
                let status = if mismatches.iter().any(|m| m.exponent == row.exponent) {
                    "MISMATCH"
                } else {
                    "ok"
                };
                println!(
                    "c=g^{:<2} x^17: {{{}}}  x^5+g*x^17: {{{}}}  {status}",
                    row.exponent,
                    fmt(&row.f_entries),
                    fmt(&row.g_entries)
                );
            }
        }
    }
    if mismatches.is_empty() {
        println!("table1: all 62 entry sets match");
        Ok(())
    } else {
        for m in &mismatches {
            eprintln!(
                "mismatch at c=g^{} ({}): computed {:?}, expected {:?}",
                m.exponent, m.column, m.computed, m.expected
            );
        }
        Err(Failure::Mismatch(format!("{} of 62 entry sets differ", mismatches.len())))
    }
}

fn describe_report(report: &EquivalenceReport, field: &FieldSpec) -> String {
    match (&report.preserved, &report.witness) {
        (true, _) => "preserved".to_string(),
        (false, Some(w)) => format!(
            "not preserved: at (a={}, b={}) the entries are {} vs {}",
            field.format_element(w.a),
            field.format_element(w.b),
            w.left,
            w.right
        ),
        (false, None) => unreachable!("non-preservation carries a witness"),
    }
}

fn cmd_equiv(args: EquivArgs) -> Result<(), Failure> {
    let field = build_field(args.n, &args.poly)?;
    let c = parse_el(&field, &args.c, "--c")?;
    let sbox = SBox::power(&field, args.d);
    match args.check {
        EquivCheck::Inverse => {
            let report = check_c_inverse_symmetry(&sbox, c)?;
            println!("multiplier inversion: {}", describe_report(&report, &field));
            if !report.preserved {
                return Err(Failure::Mismatch("c vs c^-1 symmetry must hold".into()));
            }
        }
        EquivCheck::Input | EquivCheck::Output => {
            if args.lk == 0 || args.lk >= args.n {
                return Err(Failure::Usage(format!(
                    "need 1 <= lk < n, got lk={}, n={}",
                    args.lk, args.n
                )));
            }
            let lu = parse_el(&field, &args.lu, "--lu")?;
            let linear = SBox::from_fn(&field, |x| {
                field.add(field.pow(x, 1 << args.lk), field.mul(lu, x))
            });
            if args.check == EquivCheck::Input {
                let report = check_input_composition(&sbox, &linear, c)?;
                println!("input composition: {}", describe_report(&report, &field));
                if !report.preserved {
                    return Err(Failure::Mismatch("input composition must preserve the spectrum".into()));
                }
            } else {
                let report = check_output_composition(&sbox, &linear, c)?;
                println!("output composition: {}", describe_report(&report, &field));
            }
        }
        EquivCheck::Translate => {
            let t = parse_el(&field, &args.t, "--t")?;
            let report = check_input_translation(&sbox, t, c)?;
            println!("input translation: {}", describe_report(&report, &field));
        }
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let suite = Suite::from_name(&args.suite).ok_or_else(|| {
        Failure::Usage(format!(
            "unknown suite {:?}; expected one of {}",
            args.suite,
            Suite::ALL_NAMES.join(", ")
        ))
    })?;
    let reports = run_suite(suite, args.n_max, args.force)?;
    let mut failed = false;
    for report in &reports {
        println!("{}", report.summary());
        for f in &report.failures {
            println!("  {f}");
        }
        if report.total_failures > report.failures.len() as u64 {
            println!(
                "  ... and {} more",
                report.total_failures - report.failures.len() as u64
            );
        }
        failed |= !report.passed();
    }
    if failed {
        return Err(Failure::Mismatch("verification failures above".into()));
    }
    println!("all suites passed");
    Ok(())
}
