//! Acceptance checks. Prints one line per criterion and exits non-zero if
//! any criterion fails.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::LN_2;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use corpuscope::classifiers::ClassifierConfig;
use corpuscope::corpus_io::{Corpus, Post, SentimentLabel};
use corpuscope::evaluation::{
    cross_validate, prf_from_counts, run_protocol, significance_battery, weighted_prf,
    ConfusionMatrix, ProtocolConfig, SchemeScores, WeightedPrf,
};
use corpuscope::features::{
    cfs_select, Dataset, FeatureConfig, FeatureSet, FeatureSpace, Instance, SparseVector,
};
use corpuscope::lexical::{divergences, LexicalProfile};
use corpuscope::spectrum::{build_spectrum, CorpusDescriptives};
use corpuscope::stats::{student_t_unpaired, t_cdf};
use corpuscope::tokenizer::{tokenize_post, tokenize_text};

enum Status {
    Pass,
    Fail,
    /// The stated target cannot be met by any correct computation.
    Unattainable,
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    status: Status,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        status: Status::Pass,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        status: Status::Fail,
        detail: detail.into(),
    }
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn labeled_post(id: String, text: String, label: SentimentLabel) -> Post {
    Post {
        id,
        author_id: "u".into(),
        topic_id: "t".into(),
        text,
        label: Some(label),
        annotations: None,
    }
}

// 1
fn profile_ratios() -> Outcome {
    let cases = [
        (
            "A",
            (120_077, 6375, [2738, 988, 491], 2105),
            ["0.05309", "0.33020", "0.42949", "0.15498", "0.07702"],
        ),
        (
            "B",
            (108_245, 6297, [2870, 904, 448], 1999),
            ["0.05817", "0.31745", "0.45577", "0.14356", "0.07115"],
        ),
    ];
    let mut matched = 0;
    let mut misses = Vec::new();
    for (name, (n, v, by_m, mid), expected) in cases {
        let p = LexicalProfile::from_counts(n, v, by_m, mid).unwrap();
        for ((measure, value), want) in LexicalProfile::MEASURE_NAMES
            .iter()
            .zip(p.measures())
            .zip(expected)
        {
            let got = format!("{value:.5}");
            if got == want {
                matched += 1;
            } else {
                misses.push((name, *measure, value, want));
            }
        }
    }
    let known = misses.len() == 1 && {
        let (name, measure, value, want) = misses[0];
        name == "B"
            && measure == "V(3,N)/V"
            && (value - 448.0 / 6297.0).abs() < 1e-15
            && (value - want.parse::<f64>().unwrap()).abs() < 1e-5
    };
    let mut detail = format!("{matched}/10 values match to 5 decimals");
    for (name, measure, value, want) in &misses {
        detail.push_str(&format!(
            "; corpus {name} {measure} = {value:.7} rounds to {value:.5}, expected {want}"
        ));
    }
    let status = match (misses.is_empty(), known) {
        (true, _) => Status::Pass,
        (false, true) => {
            detail.push_str(
                " (448/6297 = 0.0711449897; the expected digits need rounding half-up twice)",
            );
            Status::Unattainable
        }
        (false, false) => Status::Fail,
    };
    Outcome { status, detail }
}

// 2
fn descriptive_ratios() -> Outcome {
    let a = CorpusDescriptives::from_counts(120_077, 6375, 984, 8853).unwrap();
    let b = CorpusDescriptives::from_counts(108_245, 6297, 970, 7973).unwrap();
    let fmt = |d: &CorpusDescriptives| {
        format!(
            "{:.0} {:.1} {:.1}",
            d.words_per_post, d.sentences_per_post, d.words_per_sentence
        )
    };
    let (ga, gb) = (fmt(&a), fmt(&b));
    check(
        ga == "122 9.0 13.6" && gb == "112 8.2 13.6",
        format!("A: {ga}; B: {gb}"),
    )
}

// 3
fn p_value_battery() -> Outcome {
    let table_a = [0.05309, 0.33020, 0.42949, 0.15498, 0.07702];
    let table_b = [0.05817, 0.31745, 0.45577, 0.14356, 0.07115];
    let cv_a = [0.628, 0.641, 0.744];
    let cv_b = [0.560, 0.573, 0.630];
    let cv_a_pr = [0.628, 0.641, 0.744, 0.629, 0.644, 0.745];
    let cv_b_pr = [0.560, 0.573, 0.630, 0.568, 0.576, 0.632];
    let cross_f_ab = [0.473, 0.510, 0.537];
    let cross_f_ba = [0.475, 0.525, 0.565];
    let recall_ba = [0.506, 0.547, 0.579];
    let recall_ab = [0.484, 0.509, 0.539];
    let cases: [(&[f64], &[f64], f64, usize); 5] = [
        (&table_a, &table_b, 0.9981, 8),
        (&cv_a, &cv_b, 0.1216, 4),
        (&cv_a_pr, &cv_b_pr, 0.0117, 10),
        (&cross_f_ab, &cross_f_ba, 0.6633, 4),
        (&recall_ba, &recall_ab, 0.2759, 4),
    ];
    let mut ok = true;
    let mut got = Vec::new();
    for (xs, ys, p, df) in cases {
        let r = student_t_unpaired(xs, ys).unwrap();
        ok &= (r.p_two_tailed - p).abs() <= 1e-3 && r.df == df;
        got.push(format!("{:.4}(df {})", r.p_two_tailed, r.df));
    }

    // the same four comparisons through the protocol's battery
    let prf = |f: f64, precision: f64, recall: f64| WeightedPrf {
        precision,
        recall,
        f1: f,
    };
    let scores = SchemeScores {
        a_to_b: vec![
            prf(0.473, 0.639, 0.484),
            prf(0.510, 0.549, 0.509),
            prf(0.537, 0.621, 0.539),
        ],
        a_cv: vec![
            prf(0.628, 0.629, 0.639),
            prf(0.641, 0.644, 0.652),
            prf(0.744, 0.745, 0.745),
        ],
        b_to_a: vec![
            prf(0.475, 0.607, 0.506),
            prf(0.525, 0.604, 0.547),
            prf(0.565, 0.632, 0.579),
        ],
        b_cv: vec![
            prf(0.560, 0.568, 0.592),
            prf(0.573, 0.576, 0.598),
            prf(0.630, 0.632, 0.634),
        ],
    };
    let battery = significance_battery(&scores).unwrap();
    let targets = [0.1216, 0.0117, 0.6633, 0.2759];
    for (test, p) in battery.iter().zip(targets) {
        ok &= (test.result.p_two_tailed - p).abs() <= 1e-3;
    }
    ok &= battery.len() == 4;
    got.push(format!(
        "battery {}",
        battery
            .iter()
            .map(|t| format!("{:.4}", t.result.p_two_tailed))
            .collect::<Vec<_>>()
            .join("/")
    ));
    check(ok, got.join(", "))
}

fn synthetic_corpus(name: &str, counts: [usize; 4], seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = [
        "pain", "doctor", "week", "hope", "thank", "why", "clinic", "test",
    ];
    let mut posts = Vec::new();
    for (label, n) in SentimentLabel::ALL.into_iter().zip(counts) {
        for i in 0..n {
            let len = rng.gen_range(1..8);
            let text: Vec<&str> = (0..len).map(|_| *words.choose(&mut rng).unwrap()).collect();
            posts.push(labeled_post(
                format!("{name}{label}{i}"),
                text.join(" "),
                label,
            ));
        }
    }
    posts.shuffle(&mut rng);
    Corpus::new(name, posts).unwrap()
}

// 4
fn majority_baselines() -> Outcome {
    let a = synthetic_corpus("a", [117, 310, 124, 433], 11);
    let b = synthetic_corpus("b", [146, 494, 69, 261], 12);
    let config = ProtocolConfig {
        feature_sets: vec![FeatureConfig::new(FeatureSet::Bow)],
        classifiers: vec![ClassifierConfig::Majority],
        ..ProtocolConfig::default()
    };
    let report = run_protocol(&a, &b, &config).unwrap();
    let expected = [
        "0.114 0.072 0.269",
        "0.269 0.194 0.440",
        "0.151 0.099 0.315",
        "0.344 0.259 0.509",
    ];
    let got: Vec<String> = report
        .baselines
        .iter()
        .map(|r| {
            let w = r.report.weighted;
            format!("{:.3} {:.3} {:.3}", w.f1, w.precision, w.recall)
        })
        .collect();
    let ok = got == expected && report.rows.is_empty();
    check(ok, format!("F Pr R per scheme: {}", got.join(" | ")))
}

// 5
fn learners_on_separable_data() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let vocab: [[&str; 8]; 4] = [
        [
            "puzzled", "unclear", "unsure", "lost", "wonder", "huh", "baffled", "doubt",
        ],
        [
            "strong", "courage", "hang", "fight", "believe", "cheer", "brave", "onward",
        ],
        [
            "thanks",
            "grateful",
            "appreciate",
            "bless",
            "kind",
            "helped",
            "owe",
            "glad",
        ],
        [
            "dose",
            "milligram",
            "schedule",
            "clinic",
            "study",
            "result",
            "percent",
            "label",
        ],
    ];
    let shared = ["the", "and", "my", "it", "is", "today"];
    let mut posts = Vec::new();
    for (k, label) in SentimentLabel::ALL.into_iter().enumerate() {
        for i in 0..50 {
            let mut words: Vec<&str> = (0..rng.gen_range(3..7))
                .map(|_| *vocab[k].choose(&mut rng).unwrap())
                .collect();
            words.extend((0..rng.gen_range(0..4)).map(|_| *shared.choose(&mut rng).unwrap()));
            words.shuffle(&mut rng);
            posts.push(labeled_post(format!("p{k}-{i}"), words.join(" "), label));
        }
    }
    posts.shuffle(&mut rng);
    let corpus = Corpus::new("separable", posts).unwrap();
    let features = FeatureConfig::new(FeatureSet::Bow);

    let majority = cross_validate(&corpus, &features, &ClassifierConfig::Majority, 10, 1)
        .unwrap()
        .weighted
        .f1;
    // every class holds a quarter of the posts: p * 2p / (1 + p) with p = 1/4
    let analytic = 0.25 * 0.5 / 1.25;
    let mut ok = (majority - analytic).abs() < 1e-12;
    let mut parts = vec![format!("majority {majority:.3}")];
    for learner in ClassifierConfig::learners() {
        let f = cross_validate(&corpus, &features, &learner, 10, 1)
            .unwrap()
            .weighted
            .f1;
        ok &= f >= 0.95 && f > analytic;
        parts.push(format!("{} {f:.3}", learner.name()));
    }
    check(
        ok,
        format!("weighted F under 10-fold CV: {}", parts.join(", ")),
    )
}

// 6a: per-class scores from expanded (gold, predicted) pairs, weighted
// averages in exact rational arithmetic.
fn prf_oracle(counts: &[Vec<u64>]) -> (Vec<(f64, f64, f64)>, [f64; 3]) {
    let k = counts.len();
    let mut pairs = Vec::new();
    for (g, row) in counts.iter().enumerate() {
        for (p, &n) in row.iter().enumerate() {
            pairs.extend(std::iter::repeat_n((g, p), n as usize));
        }
    }
    let total = pairs.len() as u128;
    let mut per_class = Vec::new();
    // weighted sums as fractions support * num / den, accumulated over a common denominator
    let mut sums = [(0u128, 1u128); 3];
    let add = |acc: (u128, u128), num: u128, den: u128| {
        let n = acc.0 * den + num * acc.1;
        let d = acc.1 * den;
        let g = gcd(n, d);
        (n / g, d / g)
    };
    for c in 0..k {
        let tp = pairs.iter().filter(|&&(g, p)| g == c && p == c).count() as u128;
        let fp = pairs.iter().filter(|&&(g, p)| g != c && p == c).count() as u128;
        let fnn = pairs.iter().filter(|&&(g, p)| g == c && p != c).count() as u128;
        let support = tp + fnn;
        let (pn, pd) = if tp + fp == 0 { (0, 1) } else { (tp, tp + fp) };
        let (rn, rd) = if support == 0 { (0, 1) } else { (tp, support) };
        // f = 2 tp / (2 tp + fp + fn) whenever tp > 0, else 0
        let (fn_, fd) = if tp == 0 {
            (0, 1)
        } else {
            (2 * tp, 2 * tp + fp + fnn)
        };
        per_class.push((
            pn as f64 / pd as f64,
            rn as f64 / rd as f64,
            if tp == 0 { 0.0 } else { fn_ as f64 / fd as f64 },
        ));
        sums[0] = add(sums[0], support * pn, pd);
        sums[1] = add(sums[1], support * rn, rd);
        sums[2] = add(sums[2], support * fn_, fd);
    }
    let w = sums.map(|(n, d)| n as f64 / (d * total) as f64);
    (per_class, w)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn prf_matches_oracle(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for trial in 0..1000 {
        let k = if trial % 2 == 0 {
            4
        } else {
            rng.gen_range(1..=6)
        };
        let mut counts: Vec<Vec<u64>> = (0..k)
            .map(|_| {
                (0..k)
                    .map(|_| {
                        if rng.gen_bool(0.3) {
                            0
                        } else {
                            rng.gen_range(0..12)
                        }
                    })
                    .collect()
            })
            .collect();
        if counts.iter().flatten().all(|&c| c == 0) {
            counts[0][0] = 1;
        }
        let (per_class, w) = if k == 4 {
            let mut cm = ConfusionMatrix::new();
            for (g, row) in counts.iter().enumerate() {
                cm.counts[g].copy_from_slice(row);
            }
            let s = weighted_prf(&cm).unwrap();
            (
                s.per_class.iter().map(|c| c.scores).collect::<Vec<_>>(),
                s.weighted,
            )
        } else {
            prf_from_counts(&counts).unwrap()
        };
        let (oracle, ow) = prf_oracle(&counts);
        for (c, o) in per_class.iter().zip(&oracle) {
            if c.precision != o.0 || c.recall != o.1 || (c.f1 - o.2).abs() > 1e-15 {
                return Err(format!("trial {trial}: per-class {c:?} vs {o:?}"));
            }
        }
        let got = [w.precision, w.recall, w.f1];
        if got.iter().zip(ow).any(|(a, b)| (a - b).abs() > 1e-14) {
            return Err(format!("trial {trial}: weighted {got:?} vs {ow:?}"));
        }
    }
    Ok(())
}

// 6b: symmetric uncertainty from a dense presence matrix, base-2 logs.
fn su(x: &[usize], y: &[usize]) -> f64 {
    let n = x.len() as f64;
    let h = |v: &[usize]| {
        let mut m: HashMap<usize, usize> = HashMap::new();
        for &a in v {
            *m.entry(a).or_default() += 1;
        }
        m.values()
            .map(|&c| -(c as f64 / n) * (c as f64 / n).log2())
            .sum::<f64>()
    };
    let joint: Vec<usize> = x.iter().zip(y).map(|(a, b)| a * 16 + b).collect();
    let (hx, hy, hxy) = (h(x), h(y), h(&joint));
    if hx + hy == 0.0 {
        0.0
    } else {
        2.0 * (hx + hy - hxy) / (hx + hy)
    }
}

fn cfs_matches_exhaustive(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut fixtures = Vec::new();
    // two identical informative features plus independent noise
    {
        let labels: Vec<SentimentLabel> = (0..24)
            .map(|i| {
                if i % 2 == 0 {
                    SentimentLabel::Facts
                } else {
                    SentimentLabel::Gratitude
                }
            })
            .collect();
        let rows: Vec<Vec<u32>> = (0..24)
            .map(|i| {
                let informative = u32::from(i % 2 == 0);
                vec![
                    informative,
                    informative,
                    u32::from(i % 3 == 0),
                    u32::from(i % 5 < 2),
                ]
            })
            .collect();
        fixtures.push((rows, labels));
    }
    for _ in 0..300 {
        let dims = rng.gen_range(2..=6);
        let classes = rng.gen_range(2..=4);
        let n = rng.gen_range(8..40);
        let rates: Vec<Vec<f64>> = (0..classes)
            .map(|_| (0..dims).map(|_| rng.gen_range(0.05..0.95)).collect())
            .collect();
        let mut labels = Vec::new();
        let mut rows = Vec::new();
        for i in 0..n {
            let c = if i < classes {
                i
            } else {
                rng.gen_range(0..classes)
            };
            labels.push(SentimentLabel::from_index(c).unwrap());
            rows.push(
                (0..dims)
                    .map(|j| {
                        if rng.gen_bool(rates[c][j]) {
                            rng.gen_range(1..4)
                        } else {
                            0
                        }
                    })
                    .collect(),
            );
        }
        fixtures.push((rows, labels));
    }

    for (fx, (rows, labels)) in fixtures.iter().enumerate() {
        let dims = rows[0].len();
        let dataset = Dataset {
            space: FeatureSpace::new((0..dims).map(|j| format!("f{j}")).collect()).unwrap(),
            rows: rows
                .iter()
                .zip(labels)
                .enumerate()
                .map(|(i, (r, &label))| Instance {
                    vector: SparseVector {
                        entries: r
                            .iter()
                            .enumerate()
                            .filter(|(_, &v)| v > 0)
                            .map(|(j, &v)| (j, v))
                            .collect(),
                    },
                    label,
                    post_id: i.to_string(),
                })
                .collect(),
        };
        let class: Vec<usize> = labels.iter().map(|l| l.index()).collect();
        let presence: Vec<Vec<usize>> = (0..dims)
            .map(|j| rows.iter().map(|r| usize::from(r[j] > 0)).collect())
            .collect();
        let r_cf: Vec<f64> = presence.iter().map(|p| su(p, &class)).collect();
        let merit = |subset: &[usize]| {
            if subset.is_empty() {
                return 0.0;
            }
            let k = subset.len() as f64;
            let num: f64 = subset.iter().map(|&f| r_cf[f]).sum();
            let mut pairs = 0.0;
            for (i, &f) in subset.iter().enumerate() {
                for &g in &subset[i + 1..] {
                    pairs += su(&presence[f], &presence[g]);
                }
            }
            let den = (k + 2.0 * pairs).sqrt();
            if den > 0.0 {
                num / den
            } else {
                0.0
            }
        };
        let best = (1u32..1 << dims)
            .map(|mask| {
                let s: Vec<usize> = (0..dims).filter(|j| mask & (1 << j) != 0).collect();
                merit(&s)
            })
            .fold(0.0f64, f64::max);
        let selected: Vec<usize> = cfs_select(&dataset)
            .unwrap()
            .features()
            .iter()
            .map(|t| t[1..].parse().unwrap())
            .collect();
        let got = merit(&selected);
        if (got - best).abs() > 1e-12 {
            return Err(format!(
                "fixture {fx}: selected {selected:?} merit {got} < exhaustive {best}"
            ));
        }
        if fx == 0 && (selected.len() != 1 || selected[0] > 1) {
            return Err(format!("duplicate fixture selected {selected:?}"));
        }
    }
    Ok(fixtures.len())
}

fn random_text(rng: &mut ChaCha8Rng, vocab: &[&str]) -> String {
    let seps = [" ", "  ", ", ", ". ", "! ", "?", "\n", "-", "'", "3"];
    let mut s = String::new();
    for _ in 0..rng.gen_range(0..25) {
        let w = vocab.choose(rng).unwrap();
        if rng.gen_bool(0.2) {
            s.push_str(&w.to_uppercase());
        } else {
            s.push_str(w);
        }
        s.push_str(seps.choose(rng).unwrap());
    }
    s
}

const VOCAB: [&str; 14] = [
    "a", "the", "pain", "dose", "café", "naïve", "straße", "δόση", "ok", "x", "thanks", "i", "you",
    "why",
];

fn spectrum_matches_counting(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for trial in 0..1000 {
        let posts: Vec<String> = (0..rng.gen_range(1..6))
            .map(|_| random_text(rng, &VOCAB))
            .collect();
        let tokenized: Vec<_> = posts
            .iter()
            .enumerate()
            .map(|(i, t)| tokenize_post(&i.to_string(), t))
            .collect();
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        let mut n = 0;
        for text in &posts {
            let normalized: String = text
                .chars()
                .flat_map(char::to_lowercase)
                .map(|c| if c.is_alphabetic() { c } else { ' ' })
                .collect();
            for w in normalized.split_whitespace() {
                *counts.entry(w.to_string()).or_default() += 1;
                n += 1;
            }
        }
        match build_spectrum(&tokenized) {
            Err(_) if n == 0 => continue,
            Err(e) => return Err(format!("trial {trial}: {e}")),
            Ok(s) => {
                let mut by_m: BTreeMap<usize, usize> = BTreeMap::new();
                for &m in counts.values() {
                    *by_m.entry(m).or_default() += 1;
                }
                let freq: BTreeMap<String, usize> =
                    s.freq.iter().map(|(k, v)| (k.clone(), *v)).collect();
                let spectrum_by_m: BTreeMap<usize, usize> = by_m
                    .keys()
                    .map(|&m| (m, s.types_with_frequency(m)))
                    .collect();
                if s.tokens != n
                    || s.types != counts.len()
                    || freq != counts
                    || spectrum_by_m != by_m
                {
                    return Err(format!(
                        "trial {trial}: spectrum differs from counting oracle"
                    ));
                }
            }
        }
    }
    Ok(())
}

// 6
fn oracle_equivalences() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let prf = prf_matches_oracle(&mut rng);
    let cfs = cfs_matches_exhaustive(&mut rng);
    let spectrum = spectrum_matches_counting(&mut rng);
    match (&prf, &cfs, &spectrum) {
        (Ok(()), Ok(fixtures), Ok(())) => pass(format!(
            "weighted P/R/F on 1000 matrices (per-class exact, weighted within 1e-14 of rational oracle); \
             subset selection equals exhaustive optimum on {fixtures} fixtures; spectrum equals counting oracle on 1000 corpora"
        )),
        _ => fail(format!("{prf:?}; {cfs:?}; {spectrum:?}")),
    }
}

// 7
fn spectrum_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for trial in 0..1000 {
        let posts: Vec<_> = (0..rng.gen_range(1..8))
            .map(|i| tokenize_post(&i.to_string(), &random_text(&mut rng, &VOCAB)))
            .collect();
        let Ok(s) = build_spectrum(&posts) else {
            continue;
        };
        checked += 1;
        let types: usize = (1..=s.max_frequency())
            .map(|m| s.types_with_frequency(m))
            .sum();
        let tokens: usize = (1..=s.max_frequency())
            .map(|m| m * s.types_with_frequency(m))
            .sum();
        if types != s.types || tokens != s.tokens {
            return fail(format!(
                "trial {trial}: sum V(m) = {types}, sum m V(m) = {tokens}"
            ));
        }
    }
    pass(format!(
        "both identities exact on {checked} non-empty corpora of 1000 generated"
    ))
}

// 8
fn t_cdf_accuracy() -> Outcome {
    let p = t_cdf(2.776, 4.0).unwrap();
    let symmetric = (1..=30).all(|df| t_cdf(0.0, df as f64).unwrap() == 0.5);
    check(
        (p - 0.975).abs() <= 1e-4 && symmetric,
        format!("t_cdf(2.776, 4) = {p:.6}; t_cdf(0, df) = 0.5 for df 1..=30: {symmetric}"),
    )
}

fn random_unicode(rng: &mut ChaCha8Rng) -> String {
    let pools: [(u32, u32); 8] = [
        (0x20, 0x7e),
        (0xa0, 0x24f),
        (0x370, 0x3ff),
        (0x400, 0x4ff),
        (0x300, 0x36f),
        (0x4e00, 0x4e80),
        (0x1f600, 0x1f64f),
        (0x0, 0x10ffff),
    ];
    (0..rng.gen_range(0..40))
        .filter_map(|_| {
            let (lo, hi) = *pools.choose(rng).unwrap();
            char::from_u32(rng.gen_range(lo..=hi))
        })
        .collect()
}

// 9
fn tokenizer_contract() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..10_000 {
        let s = random_unicode(&mut rng);
        let tokens = tokenize_text(&s);
        for t in &tokens {
            let closed = !t.is_empty()
                && t.chars().all(char::is_alphabetic)
                && tokenize_text(t) == [t.clone()];
            if !closed {
                return fail(format!("trial {trial}: token {t:?} of {s:?} is not closed"));
            }
        }
        if tokenize_text(&tokens.join(" ")) != tokens {
            return fail(format!(
                "trial {trial}: re-tokenizing {s:?} changed the tokens"
            ));
        }
    }
    let example = tokenize_text("Don't stop!");
    check(
        example == ["don", "t", "stop"],
        format!("closure and idempotence on 10000 strings; \"Don't stop!\" -> {example:?}"),
    )
}

// 10
fn divergence_sanity() -> Outcome {
    let spectrum = |text: &str| build_spectrum(&[tokenize_post("p", text)]).unwrap();
    let (x, y) = (spectrum("x x"), spectrum("y y"));
    let d = divergences(&x, &y);
    let kl_ok = (d.kl_ab - 0.5 * 3f64.ln()).abs() <= 1e-12;
    let self_js = divergences(&x, &x).js;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut max_js: f64 = 0.0;
    for _ in 0..200 {
        let a = random_text(&mut rng, &VOCAB) + " pain";
        let b = random_text(&mut rng, &VOCAB[..7]) + " dose";
        max_js = max_js.max(divergences(&spectrum(&a), &spectrum(&b)).js);
    }
    check(
        kl_ok && self_js == 0.0 && max_js <= LN_2,
        format!(
            "KL(x x || y y) = {:.15} (0.5 ln 3 = {:.15}); JS(a, a) = {self_js}; max JS over 200 pairs = {max_js:.6}",
            d.kl_ab,
            0.5 * 3f64.ln()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "lexical profile ratios from reference counts",
            profile_ratios,
        ),
        ("size ratios from reference counts", descriptive_ratios),
        ("t-test p-values from reference scores", p_value_battery),
        (
            "majority baselines under the four schemes",
            majority_baselines,
        ),
        (
            "four learners on separable synthetic data",
            learners_on_separable_data,
        ),
        ("oracle equivalences", oracle_equivalences),
        ("frequency spectrum identities", spectrum_identities),
        ("t distribution accuracy", t_cdf_accuracy),
        ("tokenizer contract", tokenizer_contract),
        ("divergence sanity", divergence_sanity),
    ];
    let mut failed = 0;
    let mut unattainable = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            fail(format!("panicked: {msg}"))
        });
        let tag = match outcome.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed += 1;
                "FAIL"
            }
            Status::Unattainable => {
                unattainable += 1;
                "UNATTAINABLE"
            }
        };
        println!("criterion {:>2} [{tag}] {name}: {}", i + 1, outcome.detail);
    }
    println!(
        "acceptance: {} passed, {failed} failed, {unattainable} unattainable as stated",
        criteria.len() - failed - unattainable
    );
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
