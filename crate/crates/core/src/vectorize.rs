//! Sentence-level tf-idf model.
//!
//! Sentences are the idf units: `N` is the sentence count and `df` the
//! number of sentences containing a term. A term's weight in a sentence is
//! its raw occurrence count times `log(N / df)`; terms present in every
//! sentence carry weight exactly zero and are dropped from sparse storage.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::preprocess::Document;
use crate::scalar::Scalar;

/// Logarithm base for the idf factor. Immaterial to rankings and cluster
/// assignments (uniform scaling); fixed to natural log by default so golden
/// outputs are byte-stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdfScale {
    #[default]
    Natural,
    Log10,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermEntry {
    pub term: String,
    pub df: usize,
}

/// Term table with dense ids in first-appearance order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vocabulary {
    terms: Vec<TermEntry>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn id(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, id: usize) -> &str {
        &self.terms[id].term
    }

    pub fn df(&self, id: usize) -> usize {
        self.terms[id].df
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &TermEntry)> {
        self.terms.iter().enumerate()
    }
}

/// Sparse vector over the vocabulary dimension: strictly increasing term
/// ids, all weights positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector<S> {
    entries: Vec<(usize, S)>,
}

impl<S: Scalar> SparseVector<S> {
    /// Builds from entries already sorted by term id with positive weights.
    pub fn from_sorted(entries: Vec<(usize, S)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(_, w)| w > S::zero()));
        SparseVector { entries }
    }

    pub fn empty() -> Self {
        SparseVector { entries: Vec::new() }
    }

    pub fn entries(&self) -> &[(usize, S)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of weights, accumulated in entry order.
    pub fn sum(&self) -> S {
        self.entries.iter().fold(S::zero(), |acc, &(_, w)| acc + w)
    }

    pub fn norm_sq(&self) -> S {
        self.entries.iter().fold(S::zero(), |acc, &(_, w)| acc + w * w)
    }

    pub fn norm(&self) -> S {
        self.norm_sq().sqrt()
    }

    /// Unit-norm copy; the zero vector stays zero.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == S::zero() {
            return self.clone();
        }
        SparseVector {
            entries: self.entries.iter().map(|&(t, w)| (t, w / n)).collect(),
        }
    }

    /// Dot product against a dense vector indexed by term id.
    pub fn dot_dense(&self, dense: &[S]) -> S {
        self.entries
            .iter()
            .fold(S::zero(), |acc, &(t, w)| acc + w * dense[t])
    }

    /// Squared Euclidean distance to another sparse vector.
    pub fn distance_sq(&self, other: &Self) -> S {
        let mut dot = S::zero();
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    dot = dot + a[i].1 * b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        let d = self.norm_sq() + other.norm_sq() - (dot + dot);
        d.max(S::zero())
    }
}

/// Euclidean norm of a sparse vector.
pub fn vector_norm<S: Scalar>(v: &SparseVector<S>) -> S {
    v.norm()
}

/// The fitted model: vocabulary, one sparse weight vector per sentence, and
/// the whole-document weight mass used as the sentence-score denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct TfIdfModel<S> {
    pub vocabulary: Vocabulary,
    pub n_sentences: usize,
    pub vectors: Vec<SparseVector<S>>,
    pub total_weight: S,
}

/// Builds the tf-idf model with natural-log idf.
pub fn build_model<S: Scalar>(doc: &Document) -> Result<TfIdfModel<S>> {
    build_model_scaled(doc, IdfScale::Natural)
}

/// Builds the tf-idf model with an explicit idf log base.
pub fn build_model_scaled<S: Scalar>(doc: &Document, scale: IdfScale) -> Result<TfIdfModel<S>> {
    if doc.sentences.is_empty() {
        return Err(Error::EmptyDocument);
    }
    let n = doc.sentences.len();

    let mut vocabulary = Vocabulary::default();
    // df by last-seen sentence marker, term ids in first-appearance order
    let mut last_seen: Vec<usize> = Vec::new();
    for (si, sentence) in doc.sentences.iter().enumerate() {
        for token in &sentence.tokens {
            let id = match vocabulary.index.get(token) {
                Some(&id) => id,
                None => {
                    let id = vocabulary.terms.len();
                    vocabulary.index.insert(token.clone(), id);
                    vocabulary.terms.push(TermEntry { term: token.clone(), df: 0 });
                    last_seen.push(usize::MAX);
                    id
                }
            };
            if last_seen[id] != si {
                last_seen[id] = si;
                vocabulary.terms[id].df += 1;
            }
        }
    }

    let n_scalar = S::from_usize(n);
    let idf = |df: usize| -> S {
        let ratio = n_scalar / S::from_usize(df);
        match scale {
            IdfScale::Natural => ratio.ln(),
            IdfScale::Log10 => ratio.log10(),
        }
    };

    let mut vectors = Vec::with_capacity(n);
    let mut total_weight = S::zero();
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for sentence in &doc.sentences {
        counts.clear();
        for token in &sentence.tokens {
            *counts.entry(vocabulary.index[token]).or_insert(0) += 1;
        }
        let mut entries: Vec<(usize, S)> = counts
            .iter()
            .filter(|&(&id, _)| vocabulary.terms[id].df < n)
            .map(|(&id, &tf)| (id, S::from_usize(tf) * idf(vocabulary.terms[id].df)))
            .collect();
        entries.sort_unstable_by_key(|&(id, _)| id);
        let v = SparseVector::from_sorted(entries);
        total_weight = total_weight + v.sum();
        vectors.push(v);
    }

    Ok(TfIdfModel { vocabulary, n_sentences: n, vectors, total_weight })
}

impl<S: Scalar> TfIdfModel<S> {
    /// Debug dump: `{"n_sentences", "vocab": [{"term","df"}...],
    /// "vectors": [[[term_id, weight], ...], ...]}` with weights at 12
    /// significant digits.
    pub fn to_debug_json(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{{\"n_sentences\": {}, \"vocab\": [", self.n_sentences));
        for (i, entry) in self.vocabulary.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!(
                "{{\"term\": \"{}\", \"df\": {}}}",
                json_escape(&entry.term),
                entry.df
            ));
        }
        out.push_str("], \"vectors\": [");
        for (i, v) in self.vectors.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push('[');
            for (j, &(t, w)) in v.entries().iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                out.push_str(&format!("[{}, {}]", t, format_sig12(w.to_f64())));
            }
            out.push(']');
        }
        out.push_str("]}");
        out
    }
}

/// A float rendered to 12 significant digits as a JSON number.
pub(crate) fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{x:.11e}")
}

pub(crate) fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::Sentence;
    use std::collections::BTreeSet;

    fn doc_from_tokens(token_lists: &[&[&str]]) -> Document {
        let sentences = token_lists
            .iter()
            .enumerate()
            .map(|(position, toks)| Sentence {
                position,
                raw: toks.join(" "),
                tokens: toks.iter().map(|t| t.to_string()).collect(),
                nouns: BTreeSet::new(),
            })
            .collect();
        Document { title_nouns: BTreeSet::new(), sentences }
    }

    #[test]
    fn weights_match_hand_computation() {
        // ["appeal","appeal"], ["court"], ["court","appeal"]: df(appeal)=2,
        // df(court)=2, N=3, so every weight is a multiple of ln(3/2).
        let doc = doc_from_tokens(&[&["appeal", "appeal"], &["court"], &["court", "appeal"]]);
        let model: TfIdfModel<f64> = build_model(&doc).unwrap();
        let ln15 = (3.0f64 / 2.0).ln();

        let id_appeal = model.vocabulary.id("appeal").unwrap();
        let id_court = model.vocabulary.id("court").unwrap();
        assert_eq!(model.vocabulary.df(id_appeal), 2);
        assert_eq!(model.vocabulary.df(id_court), 2);

        let w = |s: usize, id: usize| -> f64 {
            model.vectors[s]
                .entries()
                .iter()
                .find(|&&(t, _)| t == id)
                .map(|&(_, w)| w)
                .unwrap_or(0.0)
        };
        assert!((w(0, id_appeal) - 2.0 * ln15).abs() < 1e-12);
        assert!((w(0, id_appeal) - 0.8109302162163288).abs() < 1e-12);
        assert!((w(1, id_court) - ln15).abs() < 1e-12);
        assert!((w(2, id_court) - ln15).abs() < 1e-12);
        assert!((w(2, id_appeal) - ln15).abs() < 1e-12);
        assert!((model.total_weight - 5.0 * ln15).abs() < 1e-12);
    }

    #[test]
    fn ubiquitous_terms_are_dropped() {
        let doc = doc_from_tokens(&[&["court", "a"], &["court", "b"], &["court"]]);
        let model: TfIdfModel<f64> = build_model(&doc).unwrap();
        let id = model.vocabulary.id("court").unwrap();
        assert_eq!(model.vocabulary.df(id), 3);
        for v in &model.vectors {
            assert!(v.entries().iter().all(|&(t, _)| t != id));
        }
    }

    #[test]
    fn single_sentence_document_is_all_zero() {
        let doc = doc_from_tokens(&[&["court", "appeal", "court"]]);
        let model: TfIdfModel<f64> = build_model(&doc).unwrap();
        assert_eq!(model.n_sentences, 1);
        assert!(model.vectors[0].is_empty());
        assert_eq!(model.total_weight, 0.0);
    }

    #[test]
    fn empty_document_rejected() {
        let doc = Document { title_nouns: BTreeSet::new(), sentences: vec![] };
        assert!(matches!(build_model::<f64>(&doc), Err(Error::EmptyDocument)));
    }

    #[test]
    fn vector_norm_examples() {
        assert_eq!(vector_norm(&SparseVector::<f64>::empty()), 0.0);
        let v = SparseVector::from_sorted(vec![(0, 3.0), (2, 4.0)]);
        assert_eq!(vector_norm(&v), 5.0);
        let v = SparseVector::from_sorted(vec![(1, 0.8109)]);
        assert!((vector_norm(&v) - 0.8109_f64).abs() < 1e-15);
    }

    #[test]
    fn total_weight_matches_recomputation() {
        let doc = doc_from_tokens(&[
            &["a", "b", "c"],
            &["a", "d"],
            &["b", "d", "e", "e"],
            &["f"],
        ]);
        let model: TfIdfModel<f64> = build_model(&doc).unwrap();
        let recomputed: f64 = model.vectors.iter().map(|v| v.sum()).sum();
        assert!((model.total_weight - recomputed).abs() <= 1e-9 * recomputed.abs().max(1.0));
        assert!(model.total_weight >= 0.0);
    }

    #[test]
    fn rebuild_is_deterministic() {
        let doc = doc_from_tokens(&[&["a", "b"], &["b", "c"], &["c", "a", "a"]]);
        let m1: TfIdfModel<f64> = build_model(&doc).unwrap();
        let m2: TfIdfModel<f64> = build_model(&doc).unwrap();
        assert_eq!(m1, m2);
    }

    #[test]
    fn log10_scales_uniformly() {
        let doc = doc_from_tokens(&[&["a", "b"], &["b", "c"], &["c", "a", "a"], &["d"]]);
        let nat: TfIdfModel<f64> = build_model_scaled(&doc, IdfScale::Natural).unwrap();
        let ten: TfIdfModel<f64> = build_model_scaled(&doc, IdfScale::Log10).unwrap();
        let c = std::f64::consts::LN_10;
        for (vn, vt) in nat.vectors.iter().zip(&ten.vectors) {
            assert_eq!(vn.nnz(), vt.nnz());
            for (&(ti, wn), &(tj, wt)) in vn.entries().iter().zip(vt.entries()) {
                assert_eq!(ti, tj);
                assert!((wn / c - wt).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn debug_json_shape() {
        let doc = doc_from_tokens(&[&["a", "b"], &["b"]]);
        let model: TfIdfModel<f64> = build_model(&doc).unwrap();
        let json = model.to_debug_json();
        assert!(json.starts_with("{\"n_sentences\": 2"));
        assert!(json.contains("\"term\": \"a\""));
        assert!(json.contains("\"vectors\": "));
    }
}
