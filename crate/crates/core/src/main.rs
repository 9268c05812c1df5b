use std::collections::BTreeSet;
use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use quizforge::assemble::{assemble_test, parse_test_spec};
use quizforge::bank::{parse_bank, pretty_print_bank, validate_bank, ProblemBank};
use quizforge::emit::{render_key, render_keys, render_test, OutputDialect, RenderOptions};
use quizforge::instantiate::count_variants;
use quizforge::score::{
    cohort_statistics, group_statistics, parse_keys, parse_reports, parse_responses, random_guess_simulation,
    render_bar_chart, render_bar_chart_svg, render_reports, round2, score_sheets, ScoringRule,
};

#[derive(Parser)]
#[command(name = "quizforge", version, about = "Parametric multiple-choice quiz engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct RuleArgs {
    /// Points for a right answer
    #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
    right: i64,
    /// Points for a wrong answer
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    wrong: i64,
    /// Points for a blank answer
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    blank: i64,
    /// Lowest passing score
    #[arg(long, default_value_t = 30, allow_negative_numbers = true)]
    threshold: i64,
}

impl RuleArgs {
    fn rule(self) -> Result<ScoringRule> {
        Ok(ScoringRule::new(self.right, self.wrong, self.blank, self.threshold)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a bank and print its checkout listing
    Validate { bank: PathBuf },
    /// Count the distinct versions of every question
    Count {
        bank: PathBuf,
        /// Also count answer orderings
        #[arg(long)]
        ordered: bool,
        /// Wrong answers shown per question
        #[arg(long = "wrong", default_value_t = 3)]
        n_wrong: usize,
    },
    /// Assemble test copies and write documents and keys
    Generate {
        bank: PathBuf,
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "latex")]
        dialect: OutputDialect,
        /// Include worked solutions (teacher's copy)
        #[arg(long)]
        solutions: bool,
    },
    /// Grade response sheets
    Score {
        key: PathBuf,
        responses: PathBuf,
        /// 1-based positions credited to everybody, e.g. 7,12
        #[arg(long, value_delimiter = ',')]
        grant: Vec<usize>,
        /// Report file; standard output if omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        rule: RuleArgs,
    },
    /// Right/blank/wrong fractions per topic group
    Stats {
        key: PathBuf,
        responses: PathBuf,
        /// Text bar chart output
        #[arg(long)]
        chart: PathBuf,
        /// SVG bar chart output
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        width: u64,
    },
    /// Compare two sittings person by person
    Cohort { first: PathBuf, second: PathBuf },
    /// Score distribution under random guessing
    GuessSim {
        #[arg(long, default_value_t = 20)]
        questions: usize,
        #[arg(long, default_value_t = 4)]
        choices: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        rule: RuleArgs,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_bank(path: &Path) -> Result<ProblemBank> {
    parse_bank(&read(path)?).map_err(|e| anyhow!("{}:{e}", path.display()))
}

fn color() -> bool {
    match std::env::var("QUIZFORGE_COLOR").as_deref() {
        Ok("always") => true,
        Ok("never") => false,
        _ => std::io::stderr().is_terminal(),
    }
}

fn paint(text: &str, code: &str) -> String {
    if color() {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

/// Ok(true) when the command found problems in its input.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Validate { bank } => {
            let b = load_bank(&bank)?;
            let diags = validate_bank(&b);
            for d in &diags {
                eprintln!("{} {d}", paint("warning:", "1;33"));
            }
            print!("{}", pretty_print_bank(&b));
            Ok(!diags.is_empty())
        }
        Command::Count { bank, ordered, n_wrong } => {
            let b = load_bank(&bank)?;
            for p in b.problems() {
                for qi in 0..p.questions.len() {
                    println!("{}\t{}\t{}", p.name, qi + 1, count_variants(p, qi, n_wrong, ordered));
                }
            }
            Ok(false)
        }
        Command::Generate { bank, spec, out, dialect, solutions } => {
            let b = load_bank(&bank)?;
            let s = parse_test_spec(&read(&spec)?).map_err(|e| anyhow!("{}:{e}", spec.display()))?;
            let (tests, keys) = assemble_test(&b, &s)?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let opts = RenderOptions { solutions };
            for (t, k) in tests.iter().zip(&keys) {
                write(&out.join(format!("{}.{}", t.test_id, dialect.extension())), &render_test(t, dialect, opts))?;
                write(&out.join(format!("{}.key.tsv", t.test_id)), &render_key(k))?;
            }
            write(&out.join(format!("{}.keys.tsv", s.name)), &render_keys(&keys))?;
            println!("{} copies of {} written to {}", tests.len(), s.name, out.display());
            Ok(false)
        }
        Command::Score { key, responses, grant, out, rule } => {
            let keys = parse_keys(&read(&key)?).map_err(|e| anyhow!("{}: {e}", key.display()))?;
            let sheets = parse_responses(&read(&responses)?).map_err(|e| anyhow!("{}: {e}", responses.display()))?;
            let granted: BTreeSet<usize> = grant.into_iter().collect();
            let reports = score_sheets(&sheets, &keys, &rule.rule()?, &granted)?;
            let text = render_reports(&reports);
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(false)
        }
        Command::Stats { key, responses, chart, svg, width } => {
            let keys = parse_keys(&read(&key)?).map_err(|e| anyhow!("{}: {e}", key.display()))?;
            let sheets = parse_responses(&read(&responses)?).map_err(|e| anyhow!("{}: {e}", responses.display()))?;
            let stats = group_statistics(&sheets, &keys)?;
            println!("group\tright\tblank\twrong");
            for g in &stats {
                println!("{}\t{}\t{}\t{}", g.group, round2(g.right()), round2(g.blank()), round2(g.wrong()));
            }
            write(&chart, &render_bar_chart(&stats, width))?;
            if let Some(path) = svg {
                write(&path, &render_bar_chart_svg(&stats))?;
            }
            Ok(false)
        }
        Command::Cohort { first, second } => {
            let a = parse_reports(&read(&first)?).map_err(|e| anyhow!("{}: {e}", first.display()))?;
            let b = parse_reports(&read(&second)?).map_err(|e| anyhow!("{}: {e}", second.display()))?;
            print!("{}", cohort_statistics(&a, &b)?);
            Ok(false)
        }
        Command::GuessSim { questions, choices, trials, seed, rule } => {
            if trials == 0 || choices == 0 {
                return Err(anyhow!("--trials and --choices must be positive"));
            }
            let g = random_guess_simulation(&rule.rule()?, questions, choices, trials, seed);
            println!("closed form  mean {:.4}  sd {:.4}", g.closed_form_mean, g.closed_form_sd);
            println!("simulated    mean {:.4}  sd {:.4}  ({trials} trials, seed {seed})", g.mean, g.sd);
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{} {e:#}", paint("error:", "1;31"));
            ExitCode::from(2)
        }
    }
}
