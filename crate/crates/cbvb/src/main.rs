use std::io::Write;
use std::process::ExitCode;

use cbvb::json::{resource_to_ast, term_to_ast, termset_to_ast};
use cbvb::{read_termset_arg, Corpus, InputError};
use cbvb_core::syntax::{print_resource, print_term, print_termset, render_tree};
use cbvb_core::*;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

#[derive(Parser)]
#[command(
    name = "cbvb",
    version,
    about = "Call-by-value λ-calculus, Böhm trees and Taylor expansion"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Reduction steps allowed
    #[arg(long, global = true, default_value_t = 500)]
    fuel: usize,
    /// Largest bag kept in Taylor expansions
    #[arg(long, global = true, default_value_t = 2)]
    max_bag: usize,
    /// Greatest height kept in Taylor expansions
    #[arg(long, global = true, default_value_t = 8)]
    max_height: usize,
    /// Cut Böhm trees below this depth
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = StrategyArg::Lmo)]
    strategy: StrategyArg,
    /// Seed for the random strategy
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print one JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Print λ and ⊥ instead of \ and bot
    #[arg(long, global = true)]
    unicode: bool,
    /// Bag bound used while normalizing (default: max-bag + 1)
    #[arg(long, global = true)]
    enum_bag: Option<usize>,
    /// Height bound used while normalizing (default: max-height + 2)
    #[arg(long, global = true)]
    enum_height: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Lmo,
    Random,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and print in canonical form
    Parse {
        input: String,
        /// Read a resource term or term set instead of a λ-term
        #[arg(long)]
        resource: bool,
    },
    /// Reduce with βv and σ
    Reduce {
        term: String,
        /// Print every intermediate term
        #[arg(long)]
        trace: bool,
    },
    /// Classify a term as a v-normal form
    Nf { term: String },
    /// Böhm tree as far as the fuel allows
    Bt { term: String },
    /// Is the approximant below the Böhm tree of the term?
    ApproxOf { approximant: String, term: String },
    /// Bounded Taylor expansion
    Taylor { term: String },
    /// Membership of a resource term in a Taylor expansion
    InTaylor { resource: String, term: String },
    /// Normal form of a term set (`@file`, `{ … }` or one resource term)
    Rnf { set: String },
    /// Coherence of two resource terms
    Coherent { left: String, right: String },
    /// Is the set pairwise coherent?
    Clique { set: String },
    /// Rebuild a λ-term from a clique
    Infer { set: String },
    /// Normal form of the bounded Taylor expansion
    TaylorNf { term: String },
    /// Normalized Taylor expansion of the Böhm tree
    TnBt { term: String },
    /// Compare NF(T(M)) with Tn(BT(M))
    CheckTheorem { term: String },
    /// Compare C[M] and C[N] for a head context C
    CtxCheck {
        m: String,
        n: String,
        /// Binder of the context, outermost first
        #[arg(long = "binder")]
        binders: Vec<String>,
        /// Value argument of the context, leftmost first
        #[arg(long = "arg")]
        args: Vec<String>,
    },
}

/// A result: text, its JSON form and the exit code.
struct Report {
    text: String,
    json: Json,
    code: u8,
}

impl Report {
    fn new(text: impl Into<String>, json: Json, code: u8) -> Self {
        Report {
            text: text.into(),
            json,
            code,
        }
    }
}

struct Ctx {
    opts: Opts,
    corpus: Corpus,
}

impl Ctx {
    fn term(&self, src: &str) -> Result<Term, InputError> {
        self.corpus.resolve(src).map_err(|e| InputError {
            origin: String::new(),
            message: e.to_string(),
        })
    }

    fn resource(&self, src: &str) -> Result<Resource, InputError> {
        parse_resource(src).map_err(|e| InputError {
            origin: String::new(),
            message: e.to_string(),
        })
    }

    fn filter(&self) -> Bounds {
        Bounds::new(self.opts.max_bag, self.opts.max_height)
    }

    fn enumeration(&self) -> Bounds {
        let f = self.filter().enlarged();
        Bounds::new(
            self.opts.enum_bag.unwrap_or(f.max_bag),
            self.opts.enum_height.unwrap_or(f.max_height),
        )
    }

    fn show(&self, t: &Term) -> String {
        print_term(t, self.opts.unicode)
    }

    fn show_set(&self, s: &TermSet) -> String {
        print_termset(s, self.opts.unicode)
    }

    /// A set literal spread over lines, one element per line.
    fn show_set_lines(&self, s: &TermSet) -> String {
        if s.is_empty() {
            return "{}".into();
        }
        let elems: Vec<_> = s
            .iter()
            .map(|e| format!("  {}", print_resource(e, self.opts.unicode)))
            .collect();
        format!("{{\n{}\n}}", elems.join(" ;\n"))
    }
}

fn status_name(s: BtStatus) -> &'static str {
    match s {
        BtStatus::Exact => "exact",
        BtStatus::Partial => "partial",
    }
}

fn bool_report(b: bool) -> Report {
    Report::new(b.to_string(), json!({ "result": b }), if b { 0 } else { 1 })
}

fn run(cmd: &Cmd, cx: &Ctx) -> Result<Report, InputError> {
    let o = &cx.opts;
    Ok(match cmd {
        Cmd::Parse { input, resource: false } => {
            let t = cx.term(input)?;
            Report::new(cx.show(&t), json!({ "term": term_to_ast(&t) }), 0)
        }
        Cmd::Parse { input, resource: true } => {
            let s = read_termset_arg(input)?;
            match (input.trim_start().starts_with(['{', '@']), s.iter().next()) {
                (false, Some(e)) => Report::new(
                    print_resource(e, o.unicode),
                    json!({ "resource": resource_to_ast(e) }),
                    0,
                ),
                _ => Report::new(cx.show_set_lines(&s), json!({ "set": termset_to_ast(&s) }), 0),
            }
        }
        Cmd::Reduce { term, trace } => {
            let m = cx.term(term)?;
            let strategy = match o.strategy {
                StrategyArg::Lmo => Strategy::LeftmostOutermost,
                StrategyArg::Random => Strategy::RandomSeeded(o.seed),
            };
            let mut seen = vec![cx.show(&m)];
            let out = reduction::reduce_with(&m, strategy, o.fuel, |n| {
                if *trace {
                    seen.push(cx.show(n));
                }
            });
            let normal = out.status == ReductionStatus::NormalForm;
            let status = if normal { "normal form" } else { "fuel exhausted" };
            let mut lines = if *trace { seen.clone() } else { vec![cx.show(&out.term)] };
            lines.push(format!("steps: {}", out.steps_used));
            lines.push(format!("status: {status}"));
            let mut j = json!({
                "term": term_to_ast(&out.term),
                "printed": cx.show(&out.term),
                "steps": out.steps_used,
                "status": if normal { "normal" } else { "fuel-exhausted" },
            });
            if *trace {
                j["trace"] = json!(seen);
            }
            Report::new(lines.join("\n"), j, if normal { 0 } else { 2 })
        }
        Cmd::Nf { term } => {
            let m = cx.term(term)?;
            let (class, code) = match classify_nf(&m) {
                NfClass::GH => ("GH", 0),
                NfClass::GR => ("GR", 0),
                NfClass::NotNormal => ("not normal", 1),
            };
            let redex = find_redexes(&m).into_iter().next();
            let mut text = class.to_string();
            if let Some(r) = &redex {
                text += &format!("\nredex: {:?} at {:?}", r.kind, r.position);
            }
            let j = json!({
                "class": class,
                "redex": redex.map(|r| json!({ "kind": format!("{:?}", r.kind), "position": r.position })),
            });
            Report::new(text, j, code)
        }
        Cmd::Bt { term } => {
            let bt = boehm_tree(&cx.term(term)?, o.fuel, o.depth);
            let text = render_tree(&bt, o.unicode);
            let j = json!({
                "bt": bt.tree.as_ref().map(|a| term_to_ast(&a.term)),
                "status": status_name(bt.status),
                "truncated": bt.truncated,
            });
            let code = if bt.status == BtStatus::Exact { 0 } else { 2 };
            Report::new(text.trim_end(), j, code)
        }
        Cmd::ApproxOf { approximant, term } => {
            let (a, m) = (cx.term(approximant)?, cx.term(term)?);
            let (answer, code) = if is_approximant(&a).is_none() {
                ("no: not an approximant", 1)
            } else {
                match is_approximant_of(&a, &m, o.fuel) {
                    Certainty::Yes => ("yes", 0),
                    Certainty::Unknown => ("unknown", 2),
                }
            };
            Report::new(answer, json!({ "result": answer.split(':').next().unwrap() }), code)
        }
        Cmd::Taylor { term } => {
            let s = taylor(&cx.term(term)?, cx.filter());
            Report::new(
                cx.show_set_lines(&s),
                json!({ "set": termset_to_ast(&s), "size": s.len() }),
                0,
            )
        }
        Cmd::InTaylor { resource, term } => bool_report(in_taylor(&cx.resource(resource)?, &cx.term(term)?)),
        Cmd::Rnf { set } => {
            let s = read_termset_arg(set)?;
            let order = match o.strategy {
                StrategyArg::Lmo => NormalizationOrder::Deterministic,
                StrategyArg::Random => NormalizationOrder::RandomSeeded(o.seed),
            };
            let nf = r_normalize(&s, order);
            Report::new(cx.show_set_lines(&nf), json!({ "set": termset_to_ast(&nf) }), 0)
        }
        Cmd::Coherent { left, right } => bool_report(coherent(&cx.resource(left)?, &cx.resource(right)?)),
        Cmd::Clique { set } => bool_report(is_clique(&read_termset_arg(set)?)),
        Cmd::Infer { set } => match infer_term(&read_termset_arg(set)?) {
            Ok(m) => Report::new(
                cx.show(&m),
                json!({ "term": term_to_ast(&m), "printed": cx.show(&m) }),
                0,
            ),
            Err(e) => {
                let code = if e == InferError::Ambiguous { 2 } else { 1 };
                Report::new(
                    e.to_string(),
                    json!({ "error": format!("{e:?}"), "message": e.to_string() }),
                    code,
                )
            }
        },
        Cmd::TaylorNf { term } => {
            let nf = taylor_nf(&cx.term(term)?, cx.enumeration(), cx.filter());
            let text = format!("{}\nsaturated: {}", cx.show_set_lines(&nf.set), nf.saturated);
            let j = json!({ "set": termset_to_ast(&nf.set), "saturated": nf.saturated });
            Report::new(text, j, if nf.saturated { 0 } else { 2 })
        }
        Cmd::TnBt { term } => {
            let (s, status) = normalized_taylor_of_bt(&cx.term(term)?, o.fuel, cx.filter());
            let text = format!("{}\nbt: {}", cx.show_set_lines(&s), status_name(status));
            let j = json!({ "set": termset_to_ast(&s), "bt_status": status_name(status) });
            Report::new(text, j, if status == BtStatus::Exact { 0 } else { 2 })
        }
        Cmd::CheckTheorem { term } => {
            let r = check_commutation(&cx.term(term)?, o.fuel, cx.enumeration(), cx.filter());
            let (verdict, code) = match r.verdict() {
                Verdict::Equal => ("equal", 0),
                Verdict::Mismatch => ("mismatch", 1),
                Verdict::Inconclusive => ("inconclusive", 2),
            };
            let mut lines = vec![
                verdict.to_string(),
                format!("bt: {}", status_name(r.bt_status)),
                format!("saturated: {}", r.saturated),
                format!("filter: bag {} height {}", r.filter.max_bag, r.filter.max_height),
                format!("NF(T(M)): {}", cx.show_set(&r.left)),
                format!("Tn(BT(M)): {}", cx.show_set(&r.right)),
            ];
            if !r.equal {
                lines.push(format!("witnesses: {}", cx.show_set(&r.witnesses)));
            }
            let j = json!({
                "left": termset_to_ast(&r.left),
                "right": termset_to_ast(&r.right),
                "filter": { "max_bag": r.filter.max_bag, "max_height": r.filter.max_height },
                "bt_status": status_name(r.bt_status),
                "equal": r.equal,
                "witnesses": termset_to_ast(&r.witnesses),
                "saturated": r.saturated,
                "verdict": verdict,
            });
            Report::new(lines.join("\n"), j, code)
        }
        Cmd::CtxCheck { m, n, binders, args } => {
            let (m, n) = (cx.term(m)?, cx.term(n)?);
            let args = args.iter().map(|a| cx.term(a)).collect::<Result<Vec<_>, _>>()?;
            let binders = binders.iter().map(|b| Name::new(b)).collect();
            let c = HeadContext::new(binders, args).map_err(|e| InputError {
                origin: String::new(),
                message: e.to_string(),
            })?;
            let (verdict, code) = match taylor_context_check(&m, &n, &c, cx.enumeration(), cx.filter()) {
                ContextVerdict::Agree => ("agree", 0),
                ContextVerdict::Disagree => ("disagree", 1),
                ContextVerdict::Inconclusive => ("inconclusive", 2),
                ContextVerdict::PreconditionUnmet => ("precondition unmet", 2),
            };
            Report::new(verdict, json!({ "verdict": verdict }), code)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    let corpus = match Corpus::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("cbvb: {e}");
            return ExitCode::from(3);
        }
    };
    let cx = Ctx { opts: cli.opts, corpus };
    match run(&cli.cmd, &cx) {
        Ok(r) => {
            let out = if cx.opts.json { r.json.to_string() } else { r.text };
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{out}");
            ExitCode::from(r.code)
        }
        Err(e) => {
            eprintln!("cbvb: {e}");
            ExitCode::from(3)
        }
    }
}
