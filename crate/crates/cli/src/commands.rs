use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use rbj_core::constructions::{
    build_bigc, build_example4, build_example5, build_j3, solve_example4_params, solve_example5_params,
    solve_j3_params, Example4Params, Example5Params, J3Params,
};
use rbj_core::quadform::{isotropic_vector_bounded, represent, unit_representation_bounded};
use rbj_core::rbindex::{
    census, rb_index_bruteforce, rb_index_certified, rb_index_table, Census, PruningRules, RbIndexVerdict,
    SearchConfig, SearchMode,
};
use rbj_core::{
    check_rb, nilpotency_index, BilinearForm, CliffordAlgebra, DiagonalForm, Error, FieldCtx, LinOperator, Scalar,
    Solution,
};
use serde::Serialize;

use crate::render;
use crate::{Certify, Command, ConstructParams, Family, Format, Mode, SearchArgs, SolveKind};

pub const BUDGET_ENV: &str = "RB_SEARCH_BUDGET";

pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

type Outcome = Result<u8, Failure>;

fn usage(error: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 2, error: error.into() }
}

fn domain(error: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 1, error: error.into() }
}

/// Malformed input is a usage failure; everything else the library reports
/// is a domain failure.
fn core(e: Error) -> Failure {
    match e {
        Error::Parse(_) | Error::InvalidPrime(_) | Error::DegenerateForm(_) => usage(e),
        _ => domain(e),
    }
}

fn parse_field(text: &str) -> Result<FieldCtx, Failure> {
    text.parse().map_err(usage)
}

fn parse_form(ctx: &FieldCtx, text: &str) -> Result<BilinearForm, Failure> {
    BilinearForm::parse(ctx, text).map_err(usage)
}

fn parse_scalar(ctx: &FieldCtx, text: &str, name: &str) -> Result<Scalar, Failure> {
    ctx.parse_scalar(text).with_context(|| format!("--{name}")).map_err(usage)
}

fn required<'a>(value: &'a Option<String>, name: &str, family: &str) -> Result<&'a str, Failure> {
    value
        .as_deref()
        .ok_or_else(|| usage(anyhow!("{family} needs --{name} (or --auto)")))
}

fn print(text: &str) {
    print!("{text}");
}

fn csv_unsupported(command: &str) -> Failure {
    usage(anyhow!("csv output is not available for `{command}`"))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(domain)
}

pub fn run(command: Command, format: Format) -> Outcome {
    match command {
        Command::Verify { file, weight } => verify(&file, &weight, format),
        Command::Construct { family, field, form, params, auto, out } => {
            construct(family, &field, &form, &params, auto, out.as_deref(), format)
        }
        Command::Index { field, form, certify, witness_out, search } => {
            index(&field, &form, certify, witness_out.as_deref(), &search, format)
        }
        Command::Search { field, form, search, witness_out } => {
            search_cmd(&field, &form, &search, witness_out.as_deref(), format)
        }
        Command::Census { field, forms, search } => census_cmd(&field, &forms, &search, format),
        Command::SolveForm { kind, field, coefficients, bound } => solve_form(kind, &field, &coefficients, bound, format),
    }
}

fn verify(file: &Path, weight: &str, format: Format) -> Outcome {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("reading {}", file.display()))
        .map_err(usage)?;
    let r = LinOperator::parse_file(&text)
        .with_context(|| format!("parsing {}", file.display()))
        .map_err(usage)?;
    let weight = parse_scalar(r.algebra().ctx(), weight, "weight")?;
    let report = check_rb(&r, &weight);
    match format {
        Format::Text => print(&render::report_text(&report)),
        Format::Json => print(&render::json(&report)),
        Format::Csv => return Err(csv_unsupported("verify")),
    }
    Ok(if report.is_rb { 0 } else { 1 })
}

fn not_found<T>(what: &str, s: Solution<T>) -> Result<T, Failure> {
    match s {
        Solution::Found(x) => Ok(x),
        Solution::Absent => Err(domain(anyhow!("no {what} parameters exist for this form"))),
        Solution::Undecided => Err(domain(anyhow!("no {what} parameters found within the search bound"))),
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum Params {
    J3(J3Params),
    Example4(Example4Params),
    Example5(Example5Params),
    None,
}

fn construct(
    family: Family,
    field: &str,
    form: &str,
    params: &ConstructParams,
    auto: bool,
    out: Option<&Path>,
    format: Format,
) -> Outcome {
    let ctx = parse_field(field)?;
    let form = parse_form(&ctx, form)?;
    let algebra = CliffordAlgebra::new(ctx.clone(), form).map_err(core)?;
    let list = |text: &str, name: &str| ctx.parse_list(text).with_context(|| format!("--{name}")).map_err(usage);

    let (r, used) = match family {
        Family::J3 => {
            let p = if auto {
                not_found("j3", solve_j3_params(&algebra).map_err(core)?)?
            } else {
                let get = |v: &Option<String>, n: &str| parse_scalar(&ctx, required(v, n, "j3")?, n);
                J3Params {
                    a: get(&params.a, "a")?,
                    b: get(&params.b, "b")?,
                    c: get(&params.c, "c")?,
                    k: get(&params.k, "k")?,
                    l: get(&params.l, "l")?,
                }
            };
            (build_j3(&algebra, &p).map_err(core)?, Params::J3(p))
        }
        Family::Example4 => {
            let p = if auto {
                let splits: Vec<usize> = match params.split {
                    Some(s) => vec![s],
                    None => (1..algebra.n()).collect(),
                };
                let mut found = None;
                let mut last = Solution::Absent;
                for s in splits {
                    match solve_example4_params(&algebra, s).map_err(core)? {
                        Solution::Found(p) => {
                            found = Some(p);
                            break;
                        }
                        other => last = other,
                    }
                }
                match found {
                    Some(p) => p,
                    None => not_found("example4", last)?,
                }
            } else {
                let split = params.split.ok_or_else(|| usage(anyhow!("example4 needs --split (or --auto)")))?;
                Example4Params {
                    split,
                    l: list(required(&params.l, "l", "example4")?, "l")?,
                    k: list(required(&params.k, "k", "example4")?, "k")?,
                }
            };
            (build_example4(&algebra, &p).map_err(core)?, Params::Example4(p))
        }
        Family::Example5 => {
            let p = if auto {
                not_found("example5", solve_example5_params(&algebra).map_err(core)?)?
            } else {
                let k = list(required(&params.k, "k", "example5")?, "k")?;
                let k: [Scalar; 3] = k
                    .try_into()
                    .map_err(|k: Vec<Scalar>| usage(anyhow!("--k needs 3 entries, got {}", k.len())))?;
                let x0 = parse_scalar(&ctx, required(&params.x0, "x0", "example5")?, "x0")?;
                Example5Params { k, x0 }
            };
            (build_example5(&algebra, &p).map_err(core)?, Params::Example5(p))
        }
        Family::Bigc => (build_bigc(&algebra).map_err(core)?, Params::None),
    };

    let text = r.to_file_string();
    let idx = nilpotency_index(&r);
    if let Some(path) = out {
        write_file(path, &text)?;
    }
    match format {
        Format::Text => match out {
            Some(path) => println!("wrote {} (nilpotency index {})", path.display(), idx.unwrap_or(0)),
            None => print(&text),
        },
        Format::Json => {
            #[derive(Serialize)]
            struct View<'a> {
                family: String,
                params: Params,
                nilpotency_index: Option<usize>,
                operator: &'a LinOperator,
                file: Option<&'a Path>,
            }
            let family = format!("{family:?}").to_lowercase();
            print(&render::json(&View { family, params: used, nilpotency_index: idx, operator: &r, file: out }));
        }
        Format::Csv => return Err(csv_unsupported("construct")),
    }
    Ok(0)
}

fn search_config(args: &SearchArgs) -> Result<SearchConfig, Failure> {
    let mut cfg = SearchConfig::default();
    if let Ok(v) = std::env::var(BUDGET_ENV) {
        cfg.max_naive_space = v
            .trim()
            .parse()
            .with_context(|| format!("{BUDGET_ENV}={v:?} is not a nonnegative integer"))
            .map_err(usage)?;
    }
    cfg.mode = match args.mode {
        Mode::Auto => SearchMode::Auto,
        Mode::Naive => SearchMode::Naive,
        Mode::Pruned => SearchMode::Pruned,
    };
    if args.mode == Mode::Naive {
        cfg.pruning = PruningRules::none();
    }
    if let Some(w) = args.width {
        if w == 0 {
            return Err(usage(anyhow!("--width must be positive")));
        }
        cfg.parallel_width = w;
    }
    if let Some(n) = args.max_nodes {
        cfg.max_pruned_nodes = n;
    }
    Ok(cfg)
}

#[derive(Serialize)]
struct VerdictView {
    value: usize,
    method: String,
    witness: Option<PathBuf>,
    witness_index: Option<usize>,
    note: Option<String>,
    census: Option<Census>,
}

impl VerdictView {
    fn new(v: &RbIndexVerdict, witness: Option<PathBuf>) -> Self {
        VerdictView {
            value: v.value,
            method: v.method.to_string(),
            witness,
            witness_index: v.witness.as_ref().and_then(nilpotency_index),
            note: v.note.clone(),
            census: v.census.clone(),
        }
    }

    fn text(&self, prefix: &str) -> String {
        let mut out = format!("{prefix}rb: {}\n{prefix}method: {}\n", self.value, self.method);
        if let Some(path) = &self.witness {
            out += &format!("{prefix}witness: {}\n", path.display());
        } else if let Some(i) = self.witness_index {
            out += &format!("{prefix}witness: available (index {i}, use --witness-out)\n");
        }
        if let Some(c) = &self.census {
            let counts: Vec<String> = c.by_index.iter().map(|(i, n)| format!("{i}:{n}")).collect();
            out += &format!("{prefix}census ({}): {}\n", c.certification, counts.join(" "));
        }
        if let Some(note) = &self.note {
            out += &format!("{prefix}note: {note}\n");
        }
        out
    }
}

fn save_witness(v: &RbIndexVerdict, path: Option<&Path>) -> Result<Option<PathBuf>, Failure> {
    match (path, &v.witness) {
        (Some(path), Some(w)) => {
            write_file(path, &w.to_file_string())?;
            Ok(Some(path.to_path_buf()))
        }
        _ => Ok(None),
    }
}

#[derive(Serialize)]
struct IndexRow {
    field: String,
    form: String,
    value: usize,
    method: String,
}

fn index(
    field: &str,
    form: &str,
    certify: Certify,
    witness_out: Option<&Path>,
    search: &SearchArgs,
    format: Format,
) -> Outcome {
    let ctx = parse_field(field)?;
    let form = parse_form(&ctx, form)?;
    let cfg = search_config(search)?;
    let row = |v: &RbIndexVerdict| IndexRow {
        field: ctx.to_string(),
        form: form.to_string(),
        value: v.value,
        method: v.method.to_string(),
    };
    match certify {
        Certify::Table | Certify::Brute => {
            let v = if certify == Certify::Table {
                rb_index_table(&ctx, &form)
            } else {
                rb_index_certified(&ctx, &form, &cfg)
            }
            .map_err(core)?;
            let view = VerdictView::new(&v, save_witness(&v, witness_out)?);
            match format {
                Format::Text => print(&view.text("")),
                Format::Json => print(&render::json(&view)),
                Format::Csv => print(&render::csv(&[row(&v)]).map_err(domain)?),
            }
            Ok(0)
        }
        Certify::Both => {
            let table = rb_index_table(&ctx, &form).map_err(core)?;
            let brute = rb_index_certified(&ctx, &form, &cfg).map_err(core)?;
            let agree = table.value == brute.value;
            let witness = save_witness(&table, witness_out)?;
            #[derive(Serialize)]
            struct Both {
                value: usize,
                agree: bool,
                table: VerdictView,
                brute: VerdictView,
            }
            let view = Both {
                value: table.value,
                agree,
                table: VerdictView::new(&table, witness),
                brute: VerdictView::new(&brute, None),
            };
            match format {
                Format::Text => {
                    print(&format!("rb: {}\nagree: {}\n", view.value, if agree { "yes" } else { "no" }));
                    print(&view.table.text("table."));
                    print(&view.brute.text("brute."));
                }
                Format::Json => print(&render::json(&view)),
                Format::Csv => print(&render::csv(&[row(&table), row(&brute)]).map_err(domain)?),
            }
            if agree {
                Ok(0)
            } else {
                Err(domain(anyhow!("table gives {} but the search gives {}", table.value, brute.value)))
            }
        }
    }
}

fn search_cmd(field: &str, form: &str, search: &SearchArgs, witness_out: Option<&Path>, format: Format) -> Outcome {
    let ctx = parse_field(field)?;
    let form = parse_form(&ctx, form)?;
    let cfg = search_config(search)?;
    let v = rb_index_bruteforce(&ctx, &form, &cfg).map_err(core)?;
    let view = VerdictView::new(&v, save_witness(&v, witness_out)?);
    let c = v.census.as_ref().expect("search verdicts carry a census");
    match format {
        Format::Text => {
            print(&format!("rb: {}\n", v.value));
            if let Some(path) = &view.witness {
                print(&format!("witness: {}\n", path.display()));
            }
            print(&render::census_text(c));
        }
        Format::Json => print(&render::json(&view)),
        Format::Csv => print(&render::csv(&c.csv_rows()).map_err(domain)?),
    }
    Ok(0)
}

fn census_cmd(field: &str, forms: &[String], search: &SearchArgs, format: Format) -> Outcome {
    let ctx = parse_field(field)?;
    let forms = forms.iter().map(|f| parse_form(&ctx, f)).collect::<Result<Vec<_>, _>>()?;
    let cfg = search_config(search)?;
    let all = forms
        .iter()
        .map(|f| census(&ctx, f, &cfg).map_err(core))
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Text => {
            let blocks: Vec<String> = all.iter().map(render::census_text).collect();
            print(&blocks.join("\n"));
        }
        Format::Json => print(&render::json(&all)),
        Format::Csv => {
            let rows: Vec<_> = all.iter().flat_map(Census::csv_rows).collect();
            print(&render::csv(&rows).map_err(domain)?);
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct SolveView {
    kind: String,
    field: String,
    coefficients: String,
    outcome: &'static str,
    solution: Option<String>,
}

fn tuple(xs: &[Scalar]) -> String {
    let parts: Vec<String> = xs.iter().map(Scalar::to_string).collect();
    format!("({})", parts.join(","))
}

fn solve_form(kind: SolveKind, field: &str, coefficients: &str, bound: u64, format: Format) -> Outcome {
    let ctx = parse_field(field)?;
    let coeffs = ctx.parse_list(coefficients).map_err(usage)?;
    let solution: Solution<Vec<Scalar>> = match kind {
        SolveKind::Isotropic | SolveKind::Unit => {
            let form = DiagonalForm::new(ctx.clone(), coeffs.clone()).map_err(core)?;
            if kind == SolveKind::Isotropic {
                isotropic_vector_bounded(&form, bound)
            } else {
                unit_representation_bounded(&form, bound)
            }
            .map_err(core)?
        }
        SolveKind::Represent => {
            let [a, b, c]: [Scalar; 3] = coeffs
                .clone()
                .try_into()
                .map_err(|_| usage(anyhow!("represent needs exactly three coefficients a,b,c")))?;
            match represent(&a, &b, &c, &ctx).map_err(core)? {
                Some((x, y)) => Solution::Found(vec![x, y]),
                None => Solution::Absent,
            }
        }
    };
    let (outcome, value) = match &solution {
        Solution::Found(x) => ("found", Some(tuple(x))),
        Solution::Absent => ("absent", None),
        Solution::Undecided => ("undecided", None),
    };
    let view = SolveView {
        kind: format!("{kind:?}").to_lowercase(),
        field: ctx.to_string(),
        coefficients: rbj_core::scalars::format_list(&coeffs),
        outcome,
        solution: value,
    };
    match format {
        Format::Text => println!("{}", view.solution.as_deref().unwrap_or(outcome)),
        Format::Json => print(&render::json(&view)),
        Format::Csv => print(&render::csv(&[&view]).map_err(domain)?),
    }
    Ok(if matches!(solution, Solution::Undecided) { 1 } else { 0 })
}
