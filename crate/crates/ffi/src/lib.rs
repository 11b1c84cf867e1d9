//! C ABI over the `corpuscope` library.
//!
//! Conventions:
//! - every fallible function returns a [`CsStatus`] and writes its result
//!   through an out pointer; on failure the out pointer is left untouched and
//!   [`cs_last_error_message`] describes the problem;
//! - corpora and spectra are opaque handles released with their `_free`
//!   function;
//! - strings returned by the library are released with [`cs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use corpuscope::classifiers::ClassifierConfig;
use corpuscope::corpus_io::{filter_unambiguous, load_corpus, AmbiguityRule, Corpus};
use corpuscope::evaluation::{prf_from_counts, run_protocol, ProtocolConfig};
use corpuscope::features::{merge_lexicons, FeatureConfig, FeatureSet, Lexicon};
use corpuscope::lexical::{divergences, lexical_profile, StopWordList};
use corpuscope::spectrum::{build_spectrum, FrequencySpectrum};
use corpuscope::stats::{student_t_unpaired, t_cdf};
use corpuscope::tokenizer::tokenize_corpus;
use corpuscope::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    InvalidInput = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsAmbiguityRule {
    Unanimous = 0,
    StrictMajority = 1,
}

/// Loaded corpus.
pub struct CsCorpus(Corpus);

/// Token frequency spectrum of a corpus.
pub struct CsSpectrum(FrequencySpectrum);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CsLexicalProfile {
    pub tokens: usize,
    pub types: usize,
    pub ttr: f64,
    pub hapax_ratio: f64,
    pub dis_ratio: f64,
    pub tris_ratio: f64,
    pub mid_count: usize,
    pub mid_density: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CsDivergences {
    pub kl_ab: f64,
    pub kl_ba: f64,
    pub cross_entropy_ab: f64,
    pub js: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CsTTest {
    pub t: f64,
    pub df: usize,
    pub p_two_tailed: f64,
    pub mean_a: f64,
    pub mean_b: f64,
    pub sd_a: f64,
    pub sd_b: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CsWeightedPrf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

struct Failure(CsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Io { .. } => CsStatus::Io,
            Error::Parse { .. } | Error::Json(_) | Error::Csv(_) => CsStatus::Parse,
            _ => CsStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CsStatus::NullPointer, format!("{what} is NULL"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CsStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            CsStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CsStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cs_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a JSONL corpus; `name` may be NULL to use the file stem.
///
/// # Safety
/// `path` and `name` must be NULL or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_corpus_load(
    path: *const c_char,
    name: *const c_char,
    out: *mut *mut CsCorpus,
) -> CsStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let name = if name.is_null() {
            Path::new(path)
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default()
        } else {
            str_arg(name, "name")?.to_string()
        };
        let corpus = load_corpus(path, &name)?;
        write_out(out, Box::into_raw(Box::new(CsCorpus(corpus))))
    })
}

/// New corpus holding the posts on which annotators agree under `rule`, a
/// [`CsAmbiguityRule`] value.
///
/// # Safety
/// `corpus` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_corpus_filter(
    corpus: *const CsCorpus,
    rule: c_int,
    out: *mut *mut CsCorpus,
) -> CsStatus {
    guard(|| {
        let corpus = handle(corpus, "corpus")?;
        let rule = match rule {
            r if r == CsAmbiguityRule::Unanimous as c_int => AmbiguityRule::Unanimous,
            r if r == CsAmbiguityRule::StrictMajority as c_int => AmbiguityRule::StrictMajority,
            other => return Err(invalid(format!("unknown ambiguity rule {other}"))),
        };
        let filtered = filter_unambiguous(&corpus.0, rule)?;
        write_out(out, Box::into_raw(Box::new(CsCorpus(filtered))))
    })
}

/// Number of posts; 0 for NULL.
///
/// # Safety
/// `corpus` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_corpus_len(corpus: *const CsCorpus) -> usize {
    corpus.as_ref().map_or(0, |c| c.0.len())
}

/// # Safety
/// `corpus` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_corpus_free(corpus: *mut CsCorpus) {
    if !corpus.is_null() {
        drop(Box::from_raw(corpus));
    }
}

/// # Safety
/// `corpus` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_spectrum_from_corpus(
    corpus: *const CsCorpus,
    out: *mut *mut CsSpectrum,
) -> CsStatus {
    guard(|| {
        let corpus = handle(corpus, "corpus")?;
        let spectrum = build_spectrum(&tokenize_corpus(&corpus.0))?;
        write_out(out, Box::into_raw(Box::new(CsSpectrum(spectrum))))
    })
}

/// Token count N; 0 for NULL.
///
/// # Safety
/// `spectrum` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_spectrum_tokens(spectrum: *const CsSpectrum) -> usize {
    spectrum.as_ref().map_or(0, |s| s.0.tokens)
}

/// Type count V; 0 for NULL.
///
/// # Safety
/// `spectrum` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_spectrum_types(spectrum: *const CsSpectrum) -> usize {
    spectrum.as_ref().map_or(0, |s| s.0.types)
}

/// V(m, N): number of types occurring exactly `m` times; 0 for NULL.
///
/// # Safety
/// `spectrum` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_spectrum_types_with_frequency(
    spectrum: *const CsSpectrum,
    m: usize,
) -> usize {
    spectrum.as_ref().map_or(0, |s| s.0.types_with_frequency(m))
}

/// # Safety
/// `spectrum` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_spectrum_free(spectrum: *mut CsSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// Lexical profile of a spectrum. `stopwords_path` may be NULL for the
/// built-in English list.
///
/// # Safety
/// `spectrum` must be a live handle, `stopwords_path` NULL or NUL-terminated,
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_lexical_profile(
    spectrum: *const CsSpectrum,
    stopwords_path: *const c_char,
    mid_threshold: usize,
    out: *mut CsLexicalProfile,
) -> CsStatus {
    guard(|| {
        let spectrum = handle(spectrum, "spectrum")?;
        let stops = if stopwords_path.is_null() {
            StopWordList::default_english()
        } else {
            StopWordList::load(str_arg(stopwords_path, "stopwords_path")?)?
        };
        let p = lexical_profile(&spectrum.0, &stops, mid_threshold)?;
        write_out(
            out,
            CsLexicalProfile {
                tokens: p.tokens,
                types: p.types,
                ttr: p.ttr,
                hapax_ratio: p.hapax_ratio,
                dis_ratio: p.dis_ratio,
                tris_ratio: p.tris_ratio,
                mid_count: p.mid_count,
                mid_density: p.mid_density,
            },
        )
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_divergences(
    a: *const CsSpectrum,
    b: *const CsSpectrum,
    out: *mut CsDivergences,
) -> CsStatus {
    guard(|| {
        let d = divergences(&handle(a, "a")?.0, &handle(b, "b")?.0);
        write_out(
            out,
            CsDivergences {
                kl_ab: d.kl_ab,
                kl_ba: d.kl_ba,
                cross_entropy_ab: d.cross_entropy_ab,
                js: d.js,
            },
        )
    })
}

/// Pooled-variance two-tailed t-test of `xs[0..nx]` against `ys[0..ny]`.
///
/// # Safety
/// `xs`/`ys` must point to `nx`/`ny` readable doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_t_test(
    xs: *const f64,
    nx: usize,
    ys: *const f64,
    ny: usize,
    out: *mut CsTTest,
) -> CsStatus {
    guard(|| {
        let r = student_t_unpaired(slice_arg(xs, nx, "xs")?, slice_arg(ys, ny, "ys")?)?;
        write_out(
            out,
            CsTTest {
                t: r.t,
                df: r.df,
                p_two_tailed: r.p_two_tailed,
                mean_a: r.mean_a,
                mean_b: r.mean_b,
                sd_a: r.sd_a,
                sd_b: r.sd_b,
            },
        )
    })
}

/// Student's t cumulative distribution.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_t_cdf(t: f64, df: f64, out: *mut f64) -> CsStatus {
    guard(|| write_out(out, t_cdf(t, df)?))
}

/// Support-weighted precision, recall and F of a row-major `k` x `k`
/// confusion matrix (rows gold, columns predicted).
///
/// # Safety
/// `counts` must point to `k * k` readable values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_weighted_prf(
    counts: *const u64,
    k: usize,
    out: *mut CsWeightedPrf,
) -> CsStatus {
    guard(|| {
        let len = k
            .checked_mul(k)
            .ok_or_else(|| Failure(CsStatus::InvalidInput, "matrix too large".into()))?;
        let flat = slice_arg(counts, len, "counts")?;
        let rows: Vec<Vec<u64>> = flat.chunks(k.max(1)).map(<[u64]>::to_vec).collect();
        let (_, w) = prf_from_counts(&rows)?;
        write_out(
            out,
            CsWeightedPrf {
                precision: w.precision,
                recall: w.recall,
                f1: w.f1,
            },
        )
    })
}

fn invalid(message: String) -> Failure {
    Failure(CsStatus::InvalidInput, message)
}

fn string_list(
    config: &serde_json::Value,
    key: &str,
    default: &[&str],
) -> Result<Vec<String>, Failure> {
    match config.get(key) {
        None => Ok(default.iter().map(|s| s.to_string()).collect()),
        Some(serde_json::Value::Array(items)) => items
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| invalid(format!("{key} must hold strings")))
            })
            .collect(),
        Some(_) => Err(invalid(format!("{key} must be an array"))),
    }
}

fn protocol_config(json: Option<&str>) -> Result<ProtocolConfig, Failure> {
    let config: serde_json::Value = match json {
        Some(text) => serde_json::from_str(text).map_err(Error::from)?,
        None => serde_json::Value::Object(Default::default()),
    };
    let mut lexicons = Vec::new();
    for path in string_list(&config, "lexicons", &[])? {
        lexicons.push(Lexicon::load(&path)?);
    }
    let lexicon = (!lexicons.is_empty()).then(|| merge_lexicons(&lexicons));
    let feature_sets = string_list(&config, "features", &["bow"])?
        .iter()
        .map(|s| {
            let set: FeatureSet = s.parse()?;
            let mut fc = FeatureConfig::new(set);
            fc.lexicon = lexicon.clone();
            Ok(fc)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let classifiers = string_list(&config, "classifiers", &["mnb", "dmnb", "gnb", "svm"])?
        .iter()
        .map(|s| s.parse::<ClassifierConfig>())
        .collect::<Result<Vec<_>, Error>>()?;
    let mut protocol = ProtocolConfig {
        feature_sets,
        classifiers,
        ..ProtocolConfig::default()
    };
    if let Some(folds) = config.get("folds") {
        protocol.folds = folds
            .as_u64()
            .ok_or_else(|| invalid("folds must be a non-negative integer".into()))?
            as usize;
    }
    if let Some(seed) = config.get("seed") {
        protocol.seed = seed
            .as_u64()
            .ok_or_else(|| invalid("seed must be a non-negative integer".into()))?;
    }
    Ok(protocol)
}

/// Runs the two-corpus protocol and returns the full report as JSON.
///
/// `config_json` may be NULL; otherwise an object with optional keys
/// `features` (array of "bow", "lexicon", "selected"), `classifiers`,
/// `lexicons` (file paths), `folds` and `seed`. Both corpora must be
/// labeled (see [`cs_corpus_filter`]). Free the result with
/// [`cs_string_free`].
///
/// # Safety
/// `a` and `b` must be live handles, `config_json` NULL or NUL-terminated,
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_protocol_run(
    a: *const CsCorpus,
    b: *const CsCorpus,
    config_json: *const c_char,
    out: *mut *mut c_char,
) -> CsStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        let text = if config_json.is_null() {
            None
        } else {
            Some(str_arg(config_json, "config_json")?)
        };
        let config = protocol_config(text)?;
        let report = run_protocol(&a.0, &b.0, &config)?;
        let json = serde_json::to_string(&report).map_err(Error::from)?;
        let json = CString::new(json).map_err(|_| invalid("report contains NUL".into()))?;
        write_out(out, json.into_raw())
    })
}
