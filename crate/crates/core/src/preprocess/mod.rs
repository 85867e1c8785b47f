//! Raw case-file text to a structured [`Document`]: normalization, sentence
//! segmentation, tokenization, stopword removal, stemming and noun tagging.

mod porter;
mod tagger;

pub use porter::stem;
pub use tagger::tag_nouns_with;

use std::collections::{BTreeSet, HashSet};
use std::io;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A raw case file: full text plus the case title (possibly empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInput {
    pub text: String,
    pub title: String,
}

impl RawInput {
    pub fn new(text: impl Into<String>, title: impl Into<String>) -> Self {
        RawInput { text: text.into(), title: title.into() }
    }
}

/// One segmented sentence with its processed token views.
///
/// `tokens` are lowercased, stopword-free and stemmed; `nouns` are the
/// lowercased surface forms the tagger classified as nouns (unstemmed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub position: usize,
    pub raw: String,
    pub tokens: Vec<String>,
    pub nouns: BTreeSet<String>,
}

/// A preprocessed document ready for vectorization and clustering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub title_nouns: BTreeSet<String>,
    pub sentences: Vec<Sentence>,
}

/// A plain word list: one token per line, `#` starts a comment.
///
/// Backs both the stopword list and the tagger's exclusion lexicon. The
/// defaults ship embedded in the binary; [`WordList::from_path`] loads a
/// replacement from disk.
#[derive(Debug, Clone, Default)]
pub struct WordList {
    words: HashSet<String>,
}

impl WordList {
    pub fn parse(text: &str) -> Self {
        let words = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .filter(|w| !w.is_empty())
            .map(|w| w.to_string())
            .collect();
        WordList { words }
    }

    pub fn from_path(path: impl AsRef<Path>) -> io::Result<Self> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Embedded English stopword list (~180 entries).
pub fn default_stopwords() -> &'static WordList {
    static LIST: OnceLock<WordList> = OnceLock::new();
    LIST.get_or_init(|| WordList::parse(include_str!("../../data/stopwords.txt")))
}

/// Embedded exclusion lexicon for the noun tagger.
pub fn default_tagger_lexicon() -> &'static WordList {
    static LIST: OnceLock<WordList> = OnceLock::new();
    LIST.get_or_init(|| WordList::parse(include_str!("../../data/tagger_lexicon.txt")))
}

/// Cleans up case-file text: merges dotted acronyms ("F.C.A" -> "FCA"),
/// collapses runs of periods, replaces stray control characters and
/// collapses whitespace runs to single spaces. Idempotent.
pub fn normalize_text(raw: &str) -> String {
    let replaced: String = raw
        .chars()
        .map(|c| if c.is_control() && c != '\n' && c != '\t' { ' ' } else { c })
        .collect();
    let collapsed = collapse_period_runs(&replaced);
    let merged = merge_acronyms(&collapsed);
    collapse_whitespace(&merged)
}

fn collapse_period_runs(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut in_run = false;
    for c in s.chars() {
        if c == '.' {
            if !in_run {
                out.push('.');
                in_run = true;
            }
        } else {
            in_run = false;
            out.push(c);
        }
    }
    out
}

/// Merges runs of period-separated single uppercase letters. Requires at
/// least two letter-period pairs, so "v." and "i.e." survive for the
/// sentence splitter's abbreviation handling.
fn merge_acronyms(s: &str) -> String {
    let cs: Vec<char> = s.chars().collect();
    let mut out = String::with_capacity(s.len());
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        let at_boundary = i == 0 || !cs[i - 1].is_alphanumeric();
        if c.is_ascii_uppercase() && at_boundary {
            if let Some((letters, end)) = match_acronym(&cs, i) {
                out.push_str(&letters);
                i = end;
                continue;
            }
        }
        out.push(c);
        i += 1;
    }
    out
}

/// Tries to match `(L.)+L?` starting at `i` with >= 2 dotted letters and a
/// non-alphanumeric character (or end of text) after the match. Returns the
/// merged letters and the index just past the match.
fn match_acronym(cs: &[char], i: usize) -> Option<(String, usize)> {
    let single_upper = |j: usize| cs.get(j).is_some_and(|c| c.is_ascii_uppercase());
    let mut j = i;
    let mut letters = String::new();
    let mut dotted = 0usize;
    while single_upper(j) && cs.get(j + 1) == Some(&'.') {
        letters.push(cs[j]);
        dotted += 1;
        j += 2;
    }
    let next_is_alnum = |j: usize| cs.get(j).is_some_and(|c| c.is_alphanumeric());
    if single_upper(j) && !next_is_alnum(j + 1) {
        // trailing letter without its own period, as in "F.C.A"
        letters.push(cs[j]);
        j += 1;
    } else if next_is_alnum(j) && dotted > 0 {
        // the final period actually separates the acronym from what follows
        letters.pop();
        dotted -= 1;
        j -= 2;
        if single_upper(j) {
            letters.push(cs[j]);
            j += 1;
        }
    }
    if dotted >= 2 && !next_is_alnum(j) {
        Some((letters, j))
    } else {
        None
    }
}

fn collapse_whitespace(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut in_ws = false;
    for c in s.chars() {
        if c.is_whitespace() {
            in_ws = true;
        } else {
            if in_ws && !out.is_empty() {
                out.push(' ');
            }
            in_ws = false;
            out.push(c);
        }
    }
    out
}

/// Abbreviations whose trailing period never ends a sentence. Compared
/// against the lowercased token immediately before the period; dotted forms
/// like "e.g" cover "e.g.".
const SPLIT_EXCEPTIONS: &[&str] = &[
    "v", "vs", "no", "nos", "pty", "ltd", "mr", "mrs", "ms", "dr", "prof", "hon", "s", "p", "pp",
    "cf", "e.g", "i.e", "etc", "viz", "vol", "cl", "para", "art", "sec", "ch", "pt", "fn", "ed",
    "eds", "al", "st", "co", "inc", "corp", "j", "jj", "cj", "ca", "approx", "reg", "subs",
];

fn split_exceptions() -> &'static HashSet<&'static str> {
    static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| SPLIT_EXCEPTIONS.iter().copied().collect())
}

/// True when the period at `cs[dot]` terminates a known abbreviation.
fn abbreviation_before(cs: &[char], dot: usize) -> bool {
    let mut start = dot;
    while start > 0 {
        let prev = cs[start - 1];
        if prev.is_alphanumeric() || prev == '.' {
            start -= 1;
        } else {
            break;
        }
        if dot - start > 16 {
            return false;
        }
    }
    if start == dot {
        return false;
    }
    let token: String = cs[start..dot].iter().collect::<String>().to_lowercase();
    split_exceptions().contains(token.as_str())
}

/// Segments normalized text into sentences.
///
/// A split happens at `.`, `!` or `?` followed by whitespace and then an
/// uppercase letter or digit (or at end of text). Periods after known
/// abbreviations ("v.", "No.", "Pty." ...) never split.
pub fn split_sentences(normalized: &str) -> Result<Vec<(usize, String)>> {
    let cs: Vec<char> = normalized.chars().collect();
    let mut raw_sentences: Vec<String> = Vec::new();
    let mut push = |chunk: &[char]| {
        let s: String = chunk.iter().collect();
        let s = s.trim();
        if !s.is_empty() {
            raw_sentences.push(s.to_string());
        }
    };

    let mut start = 0;
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c == '.' || c == '!' || c == '?' {
            let mut j = i + 1;
            while j < cs.len() && cs[j].is_whitespace() {
                j += 1;
            }
            let boundary = if j >= cs.len() {
                true
            } else {
                j > i + 1 && (cs[j].is_uppercase() || cs[j].is_ascii_digit())
            };
            if boundary && !(c == '.' && abbreviation_before(&cs, i)) {
                push(&cs[start..=i]);
                start = j;
                i = j;
                continue;
            }
        }
        i += 1;
    }
    if start < cs.len() {
        push(&cs[start..]);
    }

    if raw_sentences.is_empty() {
        return Err(Error::EmptyDocument);
    }
    Ok(raw_sentences.into_iter().enumerate().collect())
}

/// Tokens with their original casing, used by the noun tagger.
pub(crate) fn raw_tokens(text: &str) -> Vec<String> {
    let cs: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for (i, &c) in cs.iter().enumerate() {
        if c.is_alphanumeric() {
            cur.push(c);
        } else if (c == '\'' || c == '\u{2019}' || c == '-')
            && !cur.is_empty()
            && cs.get(i + 1).is_some_and(|n| n.is_alphanumeric())
        {
            cur.push(if c == '\u{2019}' { '\'' } else { c });
        } else if !cur.is_empty() {
            tokens.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    tokens
}

/// Lowercased maximal runs of alphanumeric characters; hyphens and
/// apostrophes are kept word-internal, all other punctuation is dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    raw_tokens(text).iter().map(|t| t.to_lowercase()).collect()
}

/// Order-preserving removal of embedded-list stopwords.
pub fn remove_stopwords(tokens: Vec<String>) -> Vec<String> {
    remove_stopwords_with(tokens, default_stopwords())
}

pub fn remove_stopwords_with(mut tokens: Vec<String>, stopwords: &WordList) -> Vec<String> {
    tokens.retain(|t| !stopwords.contains(t));
    tokens
}

/// Noun tagging with the embedded exclusion lexicon; see [`tag_nouns_with`].
pub fn tag_nouns(sentence_text: &str) -> BTreeSet<String> {
    tag_nouns_with(sentence_text, default_tagger_lexicon())
}

/// Full preprocessing with the embedded word lists.
pub fn preprocess_document(input: &RawInput) -> Result<Document> {
    preprocess_document_with(input, default_stopwords(), default_tagger_lexicon())
}

/// Full preprocessing: normalize, split, then per sentence tokenize,
/// remove stopwords and stem; nouns are tagged on the raw sentence text.
pub fn preprocess_document_with(
    input: &RawInput,
    stopwords: &WordList,
    lexicon: &WordList,
) -> Result<Document> {
    let normalized = normalize_text(&input.text);
    let sentences = split_sentences(&normalized)?
        .into_iter()
        .map(|(position, raw)| {
            let tokens = remove_stopwords_with(tokenize(&raw), stopwords)
                .iter()
                .map(|t| stem(t))
                .collect();
            let nouns = tag_nouns_with(&raw, lexicon);
            Sentence { position, raw, tokens, nouns }
        })
        .collect();
    Ok(Document {
        title_nouns: tag_nouns_with(&input.title, lexicon),
        sentences,
    })
}
