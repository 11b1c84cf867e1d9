//! Lexical richness and density measures, and divergences between corpora.
//!
//! All ratios are taken over the vocabulary size `V` except the type/token
//! ratio `V/N`. The mid-range band counts non-stop-word types occurring at
//! least `mid_threshold` times (4 by default).

use std::collections::BTreeSet;
use std::f64::consts::LN_2;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::FrequencySpectrum;
use crate::tokenizer::tokenize_text;

pub const DEFAULT_MID_THRESHOLD: usize = 4;

const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords_en.txt");

/// Normalized stop-word types.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StopWordList {
    entries: BTreeSet<String>,
}

impl StopWordList {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Normalizes each line with the tokenizer. A line that splits into
    /// several tokens (`don't`) contributes all of them.
    pub fn from_lines<'a>(lines: impl IntoIterator<Item = &'a str>) -> Self {
        let entries = lines.into_iter().flat_map(tokenize_text).collect();
        StopWordList { entries }
    }

    /// The shipped English list.
    pub fn default_english() -> Self {
        Self::from_lines(DEFAULT_STOPWORDS.lines())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::from_lines(text.lines()))
    }

    pub fn contains(&self, token: &str) -> bool {
        self.entries.contains(token)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(String::as_str)
    }
}

/// Richness and density measures of one corpus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LexicalProfile {
    pub tokens: usize,
    pub types: usize,
    /// `V/N`
    pub ttr: f64,
    /// `V(1,N)/V`
    pub hapax_ratio: f64,
    /// `V(2,N)/V`
    pub dis_ratio: f64,
    /// `V(3,N)/V`
    pub tris_ratio: f64,
    pub mid_count: usize,
    /// `mid_count / V`
    pub mid_density: f64,
}

impl LexicalProfile {
    /// Profile from raw counts `N`, `V`, `V(1..=3, N)` and the mid-range type count.
    pub fn from_counts(
        tokens: usize,
        types: usize,
        by_frequency: [usize; 3],
        mid_count: usize,
    ) -> Result<Self> {
        if tokens == 0 || types == 0 {
            return Err(Error::EmptySpectrum);
        }
        let v = types as f64;
        Ok(LexicalProfile {
            tokens,
            types,
            ttr: v / tokens as f64,
            hapax_ratio: by_frequency[0] as f64 / v,
            dis_ratio: by_frequency[1] as f64 / v,
            tris_ratio: by_frequency[2] as f64 / v,
            mid_count,
            mid_density: mid_count as f64 / v,
        })
    }

    /// The five measures in report order: V/N, mid density, V(1)/V, V(2)/V, V(3)/V.
    pub fn measures(&self) -> [f64; 5] {
        [
            self.ttr,
            self.mid_density,
            self.hapax_ratio,
            self.dis_ratio,
            self.tris_ratio,
        ]
    }

    pub const MEASURE_NAMES: [&'static str; 5] =
        ["V/N", "V(mid m,N)/V", "V(1,N)/V", "V(2,N)/V", "V(3,N)/V"];
}

pub fn lexical_profile(
    spectrum: &FrequencySpectrum,
    stops: &StopWordList,
    mid_threshold: usize,
) -> Result<LexicalProfile> {
    let mid_count = mid_m_count(spectrum, stops, mid_threshold)?;
    LexicalProfile::from_counts(
        spectrum.tokens,
        spectrum.types,
        [
            spectrum.types_with_frequency(1),
            spectrum.types_with_frequency(2),
            spectrum.types_with_frequency(3),
        ],
        mid_count,
    )
}

/// Number of non-stop-word types with frequency `>= threshold`.
pub fn mid_m_count(
    spectrum: &FrequencySpectrum,
    stops: &StopWordList,
    threshold: usize,
) -> Result<usize> {
    if threshold == 0 {
        return Err(Error::InvalidArgument(
            "mid-range threshold must be >= 1".into(),
        ));
    }
    Ok(spectrum
        .freq
        .iter()
        .filter(|(t, &m)| m >= threshold && !stops.contains(t))
        .count())
}

/// Types more frequent than `anchor`, most frequent first (ties alphabetical).
///
/// Used to inspect the upper end of the mid-range band by hand.
pub fn anchor_report(spectrum: &FrequencySpectrum, anchor: &str) -> Result<Vec<(String, usize)>> {
    let anchor_freq = spectrum
        .frequency(anchor)
        .ok_or_else(|| Error::AnchorAbsent(anchor.to_string()))?;
    let mut above: Vec<(String, usize)> = spectrum
        .freq
        .iter()
        .filter(|(_, &m)| m > anchor_freq)
        .map(|(t, &m)| (t.clone(), m))
        .collect();
    above.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(above)
}

/// Divergences in nats between the add-one smoothed unigram distributions
/// of two corpora over their joint vocabulary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivergenceReport {
    pub kl_ab: f64,
    pub kl_ba: f64,
    pub cross_entropy_ab: f64,
    pub js: f64,
}

pub fn divergences(a: &FrequencySpectrum, b: &FrequencySpectrum) -> DivergenceReport {
    let vocab: BTreeSet<&str> = a
        .freq
        .keys()
        .chain(b.freq.keys())
        .map(String::as_str)
        .collect();
    let size = vocab.len() as f64;
    let smoothed = |s: &FrequencySpectrum, t: &str| {
        (s.frequency(t).unwrap_or(0) as f64 + 1.0) / (s.tokens as f64 + size)
    };

    let (mut kl_ab, mut kl_ba, mut ce, mut js) = (0.0, 0.0, 0.0, 0.0);
    for t in vocab {
        let p = smoothed(a, t);
        let q = smoothed(b, t);
        let m = 0.5 * (p + q);
        kl_ab += p * (p / q).ln();
        kl_ba += q * (q / p).ln();
        ce -= p * q.ln();
        js += 0.5 * p * (p / m).ln() + 0.5 * q * (q / m).ln();
    }
    DivergenceReport {
        kl_ab: kl_ab.max(0.0),
        kl_ba: kl_ba.max(0.0),
        cross_entropy_ab: ce,
        js: js.clamp(0.0, LN_2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::build_spectrum;
    use crate::tokenizer::tokenize_post;
    use proptest::prelude::*;

    fn spectrum(text: &str) -> FrequencySpectrum {
        build_spectrum(&[tokenize_post("p", text)]).unwrap()
    }

    fn round5(x: f64) -> String {
        format!("{x:.5}")
    }

    #[test]
    fn profiles_from_table_counts() {
        // 448 / 6297 = 0.0711449897, so the last ratio rounds down
        let a = LexicalProfile::from_counts(120_077, 6375, [2738, 988, 491], 2105).unwrap();
        let got: Vec<String> = a.measures().iter().copied().map(round5).collect();
        assert_eq!(got, ["0.05309", "0.33020", "0.42949", "0.15498", "0.07702"]);
        let b = LexicalProfile::from_counts(108_245, 6297, [2870, 904, 448], 1999).unwrap();
        let got: Vec<String> = b.measures().iter().copied().map(round5).collect();
        assert_eq!(got, ["0.05817", "0.31745", "0.45577", "0.14356", "0.07114"]);
    }

    #[test]
    fn all_distinct_words() {
        let p = lexical_profile(
            &spectrum("one two three four"),
            &StopWordList::empty(),
            DEFAULT_MID_THRESHOLD,
        )
        .unwrap();
        assert_eq!((p.ttr, p.hapax_ratio, p.mid_count), (1.0, 1.0, 0));
    }

    #[test]
    fn mid_m_examples() {
        let s = spectrum("scan scan scan scan the the the the the doc");
        let stops = StopWordList::from_lines(["the"]);
        assert_eq!(mid_m_count(&s, &stops, 4).unwrap(), 1);
        assert_eq!(mid_m_count(&s, &StopWordList::empty(), 1).unwrap(), s.types);
        assert_eq!(mid_m_count(&s, &stops, s.max_frequency() + 1).unwrap(), 0);
        assert!(mid_m_count(&s, &stops, 0).is_err());
    }

    #[test]
    fn anchor_examples() {
        let s = spectrum("scan scan scan scan the the the the the");
        assert_eq!(anchor_report(&s, "scan").unwrap(), [("the".to_string(), 5)]);
        assert!(anchor_report(&s, "the").unwrap().is_empty());
        assert!(matches!(
            anchor_report(&s, "clinic"),
            Err(Error::AnchorAbsent(_))
        ));
    }

    #[test]
    fn stopwords_are_normalized() {
        let s = StopWordList::from_lines(["The", "DON'T", "  ", "it's"]);
        let got: Vec<&str> = s.iter().collect();
        assert_eq!(got, ["don", "it", "s", "t", "the"]);
        for t in StopWordList::default_english().iter() {
            assert_eq!(tokenize_text(t), [t]);
        }
        assert!(StopWordList::default_english().contains("the"));
    }

    #[test]
    fn hand_kl_example() {
        let d = divergences(&spectrum("x x"), &spectrum("y y"));
        assert!((d.kl_ab - 0.5 * 3f64.ln()).abs() < 1e-12);
        assert!((d.kl_ba - 0.5 * 3f64.ln()).abs() < 1e-12);
        // cross entropy = H(p) + KL(p||q)
        let h = -(0.75f64 * 0.75f64.ln() + 0.25 * 0.25f64.ln());
        assert!((d.cross_entropy_ab - (h + d.kl_ab)).abs() < 1e-12);
    }

    #[test]
    fn kl_is_asymmetric() {
        let d = divergences(&spectrum("x x x y"), &spectrum("y y z"));
        assert!((d.kl_ab - d.kl_ba).abs() > 1e-3);
    }

    #[test]
    fn identical_spectra() {
        let s = spectrum("a b b c c c");
        let d = divergences(&s, &s);
        assert_eq!((d.kl_ab, d.kl_ba, d.js), (0.0, 0.0, 0.0));
        let n = (s.tokens + s.types) as f64;
        let h: f64 = s
            .freq
            .values()
            .map(|&c| {
                let p = (c as f64 + 1.0) / n;
                -p * p.ln()
            })
            .sum();
        assert!((d.cross_entropy_ab - h).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn js_bounds_and_symmetry(a in "[a-f]( [a-f]){0,30}", b in "[d-k]( [d-k]){0,30}") {
            let (sa, sb) = (spectrum(&a), spectrum(&b));
            let ab = divergences(&sa, &sb);
            let ba = divergences(&sb, &sa);
            prop_assert!(ab.js >= 0.0 && ab.js <= LN_2);
            prop_assert!((ab.js - ba.js).abs() < 1e-12);
            prop_assert!(ab.kl_ab >= 0.0 && ab.kl_ba >= 0.0);
            prop_assert!((ab.kl_ab - ba.kl_ba).abs() < 1e-12);
        }

        #[test]
        fn mid_m_monotone(text in "[a-e]( [a-e]){0,40}", t in 1usize..8, extra in "[a-e]") {
            let s = spectrum(&text);
            let stops = StopWordList::from_lines(["a"]);
            prop_assert!(mid_m_count(&s, &stops, t + 1).unwrap() <= mid_m_count(&s, &stops, t).unwrap());
            let more = StopWordList::from_lines(["a", extra.as_str()]);
            prop_assert!(mid_m_count(&s, &more, t).unwrap() <= mid_m_count(&s, &stops, t).unwrap());
        }

        #[test]
        fn profile_ratios_are_bounded(text in "[a-h]( [a-h]){0,60}") {
            let p = lexical_profile(&spectrum(&text), &StopWordList::empty(), 4).unwrap();
            for r in p.measures() {
                prop_assert!((0.0..=1.0).contains(&r));
            }
            prop_assert!(p.hapax_ratio + p.dis_ratio + p.tris_ratio <= 1.0 + 1e-12);
            prop_assert!(p.mid_count <= p.types);
        }
    }
}
