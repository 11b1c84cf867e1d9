//! The `corpuscope` command line.
//!
//! Every subcommand renders one [`Report`]: CSV with `#` header comments, or
//! a JSON object with a `header` key and one array of row objects per table.
//!
//! | subcommand | tables and columns |
//! |------------|--------------------|
//! | `stats`    | `descriptives`: measure, one column per corpus; `overlap` (two corpora): corpus_a, corpus_b, shared_authors |
//! | `profile`  | `profile`: measure, one column per corpus |
//! | `compare`  | `profile`: measure, a, b, higher, stopword_dependent; `t_test`; `divergences` |
//! | `zipf`     | `lengths`: rank, length |
//! | `baseline` | `baselines`: scheme, train, test, f, precision, recall |
//! | `classify` | `summary`, `per_class`, `confusion` |
//! | `protocol` | `baselines`, `results`, `best`, `significance` |

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::builder::TypedValueParser;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::classifiers::{ClassifierConfig, TrainedModel};
use crate::corpus_io::{
    author_overlap, corpus_summary, filter_unambiguous, load_corpus, AmbiguityRule, Corpus,
    SentimentLabel,
};
use crate::error::Error;
use crate::evaluation::{
    cross_corpus_eval, cross_validate, run_protocol, EvalReport, ProtocolConfig, ProtocolReport,
    ProtocolRow, DEFAULT_FOLDS, DEFAULT_SEED,
};
use crate::features::{
    build_space, merge_lexicons, Dataset, FeatureConfig, FeatureSet, FeatureSpace, Lexicon,
    DEFAULT_MIN_COUNT,
};
use crate::lexical::{
    divergences, lexical_profile, LexicalProfile, StopWordList, DEFAULT_MID_THRESHOLD,
};
use crate::report::{Cell, Format, InputDigest, Report, ReportHeader, Table};
use crate::spectrum::{build_spectrum, descriptives_of, post_length_series};
use crate::stats::student_t_unpaired;
use crate::tokenizer::tokenize_corpus;

#[derive(Debug, Parser)]
#[command(
    name = "corpuscope",
    version,
    about = "Corpus comparability statistics and cross-corpus classification"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "csv")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Data-set parameters and size statistics.
    Stats(StatsArgs),
    /// Lexical richness and density measures.
    Profile(ProfileArgs),
    /// Two-corpus profile comparison with t-test and divergences.
    Compare(CompareArgs),
    /// Post lengths ranked longest first.
    Zipf(ZipfArgs),
    /// Majority-class baselines for the four train/test schemes.
    Baseline(BaselineArgs),
    /// One classifier, cross-validated or trained on one corpus and tested on another.
    Classify(ClassifyArgs),
    /// All schemes, feature sets and classifiers, plus significance tests.
    Protocol(ProtocolArgs),
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    /// Annotator agreement rule: unanimous or strict-majority.
    #[arg(long, default_value = "unanimous")]
    pub rule: AmbiguityRule,
}

#[derive(Debug, Args)]
pub struct LexicalArgs {
    /// Stop-word list, one word per line (default: built-in English list).
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    /// Minimum frequency of a mid-range type.
    #[arg(long, default_value_t = DEFAULT_MID_THRESHOLD, value_parser = clap::value_parser!(u64).range(1..).map(|v| v as usize))]
    pub mid_threshold: usize,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Corpus file (JSONL); repeat for several corpora.
    #[arg(long = "corpus", required = true)]
    pub corpora: Vec<PathBuf>,
    #[command(flatten)]
    pub filter: FilterArgs,
    #[command(flatten)]
    pub lexical: LexicalArgs,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// Corpus file (JSONL); repeat for several corpora.
    #[arg(long = "corpus", required = true)]
    pub corpora: Vec<PathBuf>,
    #[command(flatten)]
    pub lexical: LexicalArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// First corpus (JSONL).
    #[arg(long)]
    pub corpus_a: PathBuf,
    /// Second corpus (JSONL).
    #[arg(long)]
    pub corpus_b: PathBuf,
    #[command(flatten)]
    pub lexical: LexicalArgs,
}

#[derive(Debug, Args)]
pub struct ZipfArgs {
    /// Corpus file (JSONL).
    #[arg(long)]
    pub corpus: PathBuf,
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    /// Cross-validation folds.
    #[arg(long, default_value_t = DEFAULT_FOLDS, value_parser = clap::value_parser!(u64).range(2..).map(|v| v as usize))]
    pub folds: usize,
    /// Seed for the fold assignment.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub filter: FilterArgs,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    /// First corpus (JSONL).
    #[arg(long)]
    pub corpus_a: PathBuf,
    /// Second corpus (JSONL).
    #[arg(long)]
    pub corpus_b: PathBuf,
    #[command(flatten)]
    pub scheme: SchemeArgs,
}

#[derive(Debug, Args)]
pub struct FeatureArgs {
    /// Sentiment lexicon file; repeat to merge several.
    #[arg(long = "lexicon")]
    pub lexicons: Vec<PathBuf>,
    /// Minimum corpus frequency of a bag-of-words term.
    #[arg(long, default_value_t = DEFAULT_MIN_COUNT, value_parser = clap::value_parser!(u64).range(1..).map(|v| v as usize))]
    pub min_count: usize,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Training corpus; cross-validated when --test is absent.
    #[arg(long)]
    pub train: PathBuf,
    /// Test corpus for cross-corpus evaluation.
    #[arg(long)]
    pub test: Option<PathBuf>,
    /// bow, lexicon or selected.
    #[arg(long, default_value = "bow")]
    pub features: FeatureSet,
    /// majority, mnb, dmnb, gnb or svm.
    #[arg(long, default_value = "mnb")]
    pub classifier: ClassifierConfig,
    /// Save the feature space and a model trained on all of --train as JSON.
    #[arg(long)]
    pub model_out: Option<PathBuf>,
    #[command(flatten)]
    pub feature: FeatureArgs,
    #[command(flatten)]
    pub scheme: SchemeArgs,
}

#[derive(Debug, Args)]
pub struct ProtocolArgs {
    /// First corpus (JSONL).
    #[arg(long)]
    pub corpus_a: PathBuf,
    /// Second corpus (JSONL).
    #[arg(long)]
    pub corpus_b: PathBuf,
    /// Comma-separated feature sets.
    #[arg(long, value_delimiter = ',', default_value = "bow")]
    pub features: Vec<FeatureSet>,
    /// Comma-separated classifiers; empty for baselines only.
    #[arg(long, value_delimiter = ',', default_value = "mnb,dmnb,gnb,svm")]
    pub classifiers: Vec<String>,
    #[command(flatten)]
    pub feature: FeatureArgs,
    #[command(flatten)]
    pub scheme: SchemeArgs,
}

/// Why a run failed; usage problems exit with 2, data problems with 1.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Data(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Data(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Model file written by `classify --model-out`.
#[derive(Debug, Serialize, Deserialize)]
pub struct SavedModel {
    pub features: FeatureSpace,
    pub model: TrainedModel,
}

fn corpus_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

struct Inputs {
    header: ReportHeader,
}

impl Inputs {
    fn new(command: &str) -> Self {
        Inputs {
            header: ReportHeader::new(command),
        }
    }

    fn digest(&mut self, path: &Path) -> CliResult<()> {
        self.header.inputs.push(InputDigest::of_file(path)?);
        Ok(())
    }

    fn corpus(&mut self, path: &Path) -> CliResult<Corpus> {
        self.digest(path)?;
        Ok(load_corpus(path, &corpus_name(path))?)
    }

    fn labeled(&mut self, path: &Path, rule: AmbiguityRule) -> CliResult<Corpus> {
        let corpus = self.corpus(path)?;
        Ok(filter_unambiguous(&corpus, rule)?)
    }

    fn stopwords(&mut self, path: Option<&Path>) -> CliResult<StopWordList> {
        match path {
            Some(p) => {
                self.digest(p)?;
                Ok(StopWordList::load(p)?)
            }
            None => Ok(StopWordList::default_english()),
        }
    }

    fn lexicon(&mut self, paths: &[PathBuf]) -> CliResult<Option<Lexicon>> {
        if paths.is_empty() {
            return Ok(None);
        }
        let mut lexicons = Vec::new();
        for p in paths {
            self.digest(p)?;
            lexicons.push(Lexicon::load(p)?);
        }
        Ok(Some(merge_lexicons(&lexicons)))
    }

    fn report(self, tables: Vec<Table>) -> Report {
        Report {
            header: self.header,
            tables,
        }
    }
}

fn feature_config(
    set: FeatureSet,
    args: &FeatureArgs,
    lexicon: Option<&Lexicon>,
) -> CliResult<FeatureConfig> {
    if set == FeatureSet::Lexicon && lexicon.is_none() {
        return Err(Failure::Usage(
            "the lexicon feature set needs at least one --lexicon file".into(),
        ));
    }
    let mut config = FeatureConfig::new(set);
    config.min_count = args.min_count;
    config.lexicon = lexicon.cloned();
    Ok(config)
}

/// Runs one parsed command line and returns the rendered report.
pub fn run(cli: &Cli) -> CliResult<String> {
    let report = match &cli.command {
        Command::Stats(a) => stats(a)?,
        Command::Profile(a) => profile(a)?,
        Command::Compare(a) => compare(a)?,
        Command::Zipf(a) => zipf(a)?,
        Command::Baseline(a) => baseline(a)?,
        Command::Classify(a) => classify(a)?,
        Command::Protocol(a) => protocol(a)?,
    };
    Ok(report.render(cli.format)?)
}

/// Parses `args`, runs, writes the report and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = run(&cli).and_then(|text| match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Data(Error::io(path, e))),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match outcome {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("corpuscope: {f}");
            f.exit_code()
        }
    }
}

fn stats(args: &StatsArgs) -> CliResult<Report> {
    let mut inputs = Inputs::new("stats");
    let stops = inputs.stopwords(args.lexical.stopwords.as_deref())?;
    let corpora = args
        .corpora
        .iter()
        .map(|p| inputs.corpus(p))
        .collect::<CliResult<Vec<_>>>()?;

    let mut columns = vec!["measure".to_string()];
    columns.extend(corpora.iter().map(|c| c.name.clone()));
    let mut table = Table {
        name: "descriptives".into(),
        columns,
        rows: Vec::new(),
    };
    let mut values: Vec<Vec<Cell>> = Vec::new();
    for corpus in &corpora {
        let summary = corpus_summary(corpus, args.filter.rule)?;
        let tokenized = tokenize_corpus(corpus);
        let d = descriptives_of(&tokenized)?;
        let spectrum = build_spectrum(&tokenized)?;
        let p = lexical_profile(&spectrum, &stops, args.lexical.mid_threshold)?;
        values.push(vec![
            summary.authors.into(),
            summary.topics.into(),
            summary.posts.into(),
            Cell::float(summary.posts_per_topic, 1),
            Cell::float(summary.posts_per_author, 1),
            summary.ambiguous.into(),
            summary.unambiguous.into(),
            d.words.into(),
            d.types.into(),
            d.sentences.into(),
            Cell::float(d.words_per_post, 1),
            Cell::float(d.sentences_per_post, 1),
            Cell::float(d.words_per_sentence, 1),
            spectrum.types_with_frequency(1).into(),
            spectrum.types_with_frequency(2).into(),
            spectrum.types_with_frequency(3).into(),
            p.mid_count.into(),
        ]);
    }
    let names = [
        "authors",
        "topics",
        "posts",
        "posts_per_topic",
        "posts_per_author",
        "ambiguous_posts",
        "unambiguous_posts",
        "words",
        "types",
        "sentences",
        "words_per_post",
        "sentences_per_post",
        "words_per_sentence",
        "V(1,N)",
        "V(2,N)",
        "V(3,N)",
        "mid_m",
    ];
    for (i, name) in names.iter().enumerate() {
        let mut row = vec![Cell::from(*name)];
        row.extend(values.iter().map(|v| v[i].clone()));
        table.push(row);
    }
    let mut tables = vec![table];
    if let [a, b] = corpora.as_slice() {
        let mut overlap = Table::new("overlap", &["corpus_a", "corpus_b", "shared_authors"]);
        overlap.push(vec![
            a.name.clone().into(),
            b.name.clone().into(),
            author_overlap(a, b).into(),
        ]);
        tables.push(overlap);
    }
    Ok(inputs.report(tables))
}

fn profile_rows(p: &LexicalProfile) -> Vec<(&'static str, Cell)> {
    let mut rows = vec![("N", p.tokens.into()), ("V", p.types.into())];
    for (name, value) in LexicalProfile::MEASURE_NAMES.iter().zip(p.measures()) {
        rows.push((name, Cell::float(value, 5)));
    }
    rows.push(("mid m", p.mid_count.into()));
    rows
}

fn corpus_profile(
    corpus: &Corpus,
    args: &LexicalArgs,
    stops: &StopWordList,
) -> CliResult<(LexicalProfile, crate::spectrum::FrequencySpectrum)> {
    let spectrum = build_spectrum(&tokenize_corpus(corpus))?;
    Ok((
        lexical_profile(&spectrum, stops, args.mid_threshold)?,
        spectrum,
    ))
}

fn profile(args: &ProfileArgs) -> CliResult<Report> {
    let mut inputs = Inputs::new("profile");
    let stops = inputs.stopwords(args.lexical.stopwords.as_deref())?;
    let mut names = vec!["measure".to_string()];
    let mut columns = Vec::new();
    for path in &args.corpora {
        let corpus = inputs.corpus(path)?;
        names.push(corpus.name.clone());
        columns.push(profile_rows(
            &corpus_profile(&corpus, &args.lexical, &stops)?.0,
        ));
    }
    let mut table = Table {
        name: "profile".into(),
        columns: names,
        rows: Vec::new(),
    };
    for i in 0..columns[0].len() {
        let mut row = vec![Cell::from(columns[0][i].0)];
        row.extend(columns.iter().map(|c| c[i].1.clone()));
        table.push(row);
    }
    Ok(inputs.report(vec![table]))
}

fn compare(args: &CompareArgs) -> CliResult<Report> {
    let mut inputs = Inputs::new("compare");
    let stops = inputs.stopwords(args.lexical.stopwords.as_deref())?;
    let a = inputs.corpus(&args.corpus_a)?;
    let b = inputs.corpus(&args.corpus_b)?;
    let (pa, sa) = corpus_profile(&a, &args.lexical, &stops)?;
    let (pb, sb) = corpus_profile(&b, &args.lexical, &stops)?;

    let mut table = Table::new(
        "profile",
        &["measure", "a", "b", "higher", "stopword_dependent"],
    );
    for ((name, x), y) in LexicalProfile::MEASURE_NAMES
        .iter()
        .zip(pa.measures())
        .zip(pb.measures())
    {
        let higher = if x > y {
            "a"
        } else if y > x {
            "b"
        } else {
            "equal"
        };
        let dependent = if *name == "V(mid m,N)/V" { "yes" } else { "no" };
        table.push(vec![
            (*name).into(),
            Cell::float(x, 5),
            Cell::float(y, 5),
            higher.into(),
            dependent.into(),
        ]);
    }

    let t = student_t_unpaired(&pa.measures(), &pb.measures())?;
    let mut t_table = Table::new(
        "t_test",
        &[
            "t",
            "df",
            "p_two_tailed",
            "mean_a",
            "mean_b",
            "sd_a",
            "sd_b",
        ],
    );
    t_table.push(vec![
        Cell::float(t.t, 4),
        t.df.into(),
        Cell::float(t.p_two_tailed, 4),
        Cell::float(t.mean_a, 5),
        Cell::float(t.mean_b, 5),
        Cell::float(t.sd_a, 5),
        Cell::float(t.sd_b, 5),
    ]);

    let d = divergences(&sa, &sb);
    let mut d_table = Table::new("divergences", &["kl_ab", "kl_ba", "cross_entropy_ab", "js"]);
    d_table.push(vec![
        Cell::float(d.kl_ab, 6),
        Cell::float(d.kl_ba, 6),
        Cell::float(d.cross_entropy_ab, 6),
        Cell::float(d.js, 6),
    ]);
    Ok(inputs.report(vec![table, t_table, d_table]))
}

fn zipf(args: &ZipfArgs) -> CliResult<Report> {
    let mut inputs = Inputs::new("zipf");
    let corpus = inputs.corpus(&args.corpus)?;
    let series = post_length_series(&tokenize_corpus(&corpus));
    let mut table = Table::new("lengths", &["rank", "length"]);
    for (i, len) in series.lengths.iter().enumerate() {
        table.push(vec![(i + 1).into(), (*len).into()]);
    }
    Ok(inputs.report(vec![table]))
}

const SCORE_COLUMNS: [&str; 3] = ["f", "precision", "recall"];

fn scores(r: &EvalReport) -> [Cell; 3] {
    [
        Cell::float(r.weighted.f1, 3),
        Cell::float(r.weighted.precision, 3),
        Cell::float(r.weighted.recall, 3),
    ]
}

fn protocol_table(name: &str, rows: &[ProtocolRow], with_model: bool) -> Table {
    let mut columns = vec!["scheme", "train", "test"];
    if with_model {
        columns.extend(["feature_set", "classifier"]);
    }
    columns.extend(SCORE_COLUMNS);
    let mut table = Table::new(name, &columns);
    for row in rows {
        let r = &row.report;
        let mut cells: Vec<Cell> = vec![
            row.scheme.as_str().into(),
            r.train_name.clone().into(),
            r.test_name.clone().into(),
        ];
        if with_model {
            cells.push(r.feature_set.clone().into());
            cells.push(r.classifier.clone().into());
        }
        cells.extend(scores(r));
        table.push(cells);
    }
    table
}

fn baseline(args: &BaselineArgs) -> CliResult<Report> {
    let mut inputs = Inputs::new("baseline");
    inputs.header.seed = Some(args.scheme.seed);
    let a = inputs.labeled(&args.corpus_a, args.scheme.filter.rule)?;
    let b = inputs.labeled(&args.corpus_b, args.scheme.filter.rule)?;
    let config = ProtocolConfig {
        feature_sets: Vec::new(),
        classifiers: Vec::new(),
        folds: args.scheme.folds,
        seed: args.scheme.seed,
    };
    let report = run_protocol(&a, &b, &config)?;
    Ok(inputs.report(vec![protocol_table("baselines", &report.baselines, false)]))
}

fn classify(args: &ClassifyArgs) -> CliResult<Report> {
    let mut inputs = Inputs::new("classify");
    inputs.header.seed = Some(args.scheme.seed);
    let train = inputs.labeled(&args.train, args.scheme.filter.rule)?;
    let test = args
        .test
        .as_deref()
        .map(|p| inputs.labeled(p, args.scheme.filter.rule))
        .transpose()?;
    let lexicon = inputs.lexicon(&args.feature.lexicons)?;
    let features = feature_config(args.features, &args.feature, lexicon.as_ref())?;

    let result = match &test {
        Some(test) => cross_corpus_eval(&train, test, &features, &args.classifier)?,
        None => cross_validate(
            &train,
            &features,
            &args.classifier,
            args.scheme.folds,
            args.scheme.seed,
        )?,
    };
    if let Some(path) = &args.model_out {
        let corpora: Vec<&Corpus> = std::iter::once(&train).chain(test.as_ref()).collect();
        let space = build_space(&features, &corpora)?;
        let model = args
            .classifier
            .train(&Dataset::from_corpora(&[&train], &space)?)?;
        let saved = SavedModel {
            features: space,
            model,
        };
        let json = serde_json::to_string(&saved).map_err(Error::from)?;
        fs::write(path, json).map_err(|e| Error::io(path, e))?;
    }

    let mut summary = Table::new(
        "summary",
        &[
            "scheme",
            "train",
            "test",
            "feature_set",
            "classifier",
            "posts",
            "f",
            "precision",
            "recall",
        ],
    );
    let mut row: Vec<Cell> = vec![
        result.scheme.as_str().into(),
        result.train_name.clone().into(),
        result.test_name.clone().into(),
        result.feature_set.clone().into(),
        result.classifier.clone().into(),
        result.confusion.total().into(),
    ];
    row.extend(scores(&result));
    summary.push(row);

    let mut per_class = Table::new(
        "per_class",
        &["label", "precision", "recall", "f", "support"],
    );
    for c in &result.per_class {
        per_class.push(vec![
            c.label.as_str().into(),
            Cell::float(c.scores.precision, 3),
            Cell::float(c.scores.recall, 3),
            Cell::float(c.scores.f1, 3),
            c.scores.support.into(),
        ]);
    }

    let mut columns = vec!["gold"];
    columns.extend(SentimentLabel::ALL.map(SentimentLabel::as_str));
    let mut confusion = Table::new("confusion", &columns);
    for gold in SentimentLabel::ALL {
        let mut row: Vec<Cell> = vec![gold.as_str().into()];
        row.extend(
            SentimentLabel::ALL
                .iter()
                .map(|&p| Cell::from(result.confusion.get(gold, p))),
        );
        confusion.push(row);
    }
    Ok(inputs.report(vec![summary, per_class, confusion]))
}

fn protocol_report_tables(report: &ProtocolReport) -> Vec<Table> {
    let mut significance = Table::new(
        "significance",
        &["test", "description", "t", "df", "p_two_tailed"],
    );
    for s in &report.significance {
        significance.push(vec![
            s.name.clone().into(),
            s.description.clone().into(),
            Cell::float(s.result.t, 4),
            s.result.df.into(),
            Cell::float(s.result.p_two_tailed, 4),
        ]);
    }
    vec![
        protocol_table("baselines", &report.baselines, false),
        protocol_table("results", &report.rows, true),
        protocol_table("best", &report.best, true),
        significance,
    ]
}

fn protocol(args: &ProtocolArgs) -> CliResult<Report> {
    let classifiers = args
        .classifiers
        .iter()
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<ClassifierConfig>()
                .map_err(|e| Failure::Usage(e.to_string()))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut inputs = Inputs::new("protocol");
    inputs.header.seed = Some(args.scheme.seed);
    let a = inputs.labeled(&args.corpus_a, args.scheme.filter.rule)?;
    let b = inputs.labeled(&args.corpus_b, args.scheme.filter.rule)?;
    let lexicon = inputs.lexicon(&args.feature.lexicons)?;
    let feature_sets = args
        .features
        .iter()
        .map(|&set| feature_config(set, &args.feature, lexicon.as_ref()))
        .collect::<CliResult<Vec<_>>>()?;
    let config = ProtocolConfig {
        feature_sets,
        classifiers,
        folds: args.scheme.folds,
        seed: args.scheme.seed,
    };
    let report = run_protocol(&a, &b, &config)?;
    Ok(inputs.report(protocol_report_tables(&report)))
}
