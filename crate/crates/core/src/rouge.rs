//! ROUGE-1/2/L/W scoring of a candidate summary against a reference.
//!
//! ROUGE-N counts clipped n-gram overlap, ROUGE-L uses the longest common
//! subsequence of the full token streams, and ROUGE-W is the weighted LCS
//! that credits runs of consecutive matches through `f(k) = k^alpha`.
//! All variants report precision, recall and the balanced F-measure.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::preprocess::{stem, tokenize};
use crate::scalar::Scalar;

/// Precision / recall / F-measure triple, each in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RougeScore<S> {
    pub precision: S,
    pub recall: S,
    pub f_measure: S,
}

impl<S: Scalar> RougeScore<S> {
    pub fn zero() -> Self {
        RougeScore { precision: S::zero(), recall: S::zero(), f_measure: S::zero() }
    }

    /// Balanced F-measure (beta = 1); 0 when both components are 0.
    fn from_pr(precision: S, recall: S) -> Self {
        let two = S::from_usize(2);
        let f_measure = if precision + recall > S::zero() {
            two * precision * recall / (precision + recall)
        } else {
            S::zero()
        };
        RougeScore { precision, recall, f_measure }
    }
}

/// Token stream for evaluation: same tokenizer as preprocessing, stopwords
/// kept, stemming off unless requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalTokens {
    tokens: Vec<String>,
}

impl EvalTokens {
    pub fn new(text: &str) -> Self {
        Self::with_stemming(text, false)
    }

    pub fn with_stemming(text: &str, apply_stemming: bool) -> Self {
        let mut tokens = tokenize(text);
        if apply_stemming {
            tokens = tokens.iter().map(|t| stem(t)).collect();
        }
        EvalTokens { tokens }
    }

    /// Wraps an existing token list; empty tokens are dropped.
    pub fn from_tokens(tokens: Vec<String>) -> Self {
        EvalTokens { tokens: tokens.into_iter().filter(|t| !t.is_empty()).collect() }
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// The four reported variants, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RougeVariant {
    Rouge1,
    Rouge2,
    RougeL,
    RougeW,
}

impl RougeVariant {
    pub const ALL: [RougeVariant; 4] = [
        RougeVariant::Rouge1,
        RougeVariant::Rouge2,
        RougeVariant::RougeL,
        RougeVariant::RougeW,
    ];
}

impl fmt::Display for RougeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RougeVariant::Rouge1 => "ROUGE-1",
            RougeVariant::Rouge2 => "ROUGE-2",
            RougeVariant::RougeL => "ROUGE-L",
            RougeVariant::RougeW => "ROUGE-W",
        };
        f.write_str(name)
    }
}

/// Scores for all four variants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RougeReport<S> {
    pub rouge_1: RougeScore<S>,
    pub rouge_2: RougeScore<S>,
    pub rouge_l: RougeScore<S>,
    pub rouge_w: RougeScore<S>,
}

impl<S: Scalar> RougeReport<S> {
    pub fn get(&self, variant: RougeVariant) -> RougeScore<S> {
        match variant {
            RougeVariant::Rouge1 => self.rouge_1,
            RougeVariant::Rouge2 => self.rouge_2,
            RougeVariant::RougeL => self.rouge_l,
            RougeVariant::RougeW => self.rouge_w,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (RougeVariant, RougeScore<S>)> + '_ {
        RougeVariant::ALL.into_iter().map(|v| (v, self.get(v)))
    }
}

fn ngram_counts(tokens: &[String], n: usize) -> HashMap<&[String], usize> {
    let mut counts = HashMap::new();
    if n > 0 && tokens.len() >= n {
        for gram in tokens.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// ROUGE-N: clipped n-gram overlap.
pub fn rouge_n<S: Scalar>(candidate: &EvalTokens, reference: &EvalTokens, n: usize) -> RougeScore<S> {
    let cand = ngram_counts(candidate.tokens(), n);
    let reff = ngram_counts(reference.tokens(), n);
    let overlap: usize = cand
        .iter()
        .map(|(gram, &c)| c.min(reff.get(gram).copied().unwrap_or(0)))
        .sum();
    let total = |len: usize| if n > 0 && len >= n { len - n + 1 } else { 0 };
    let cand_total = total(candidate.len());
    let ref_total = total(reference.len());
    let ratio = |num: usize, den: usize| {
        if den == 0 {
            S::zero()
        } else {
            S::from_usize(num) / S::from_usize(den)
        }
    };
    RougeScore::from_pr(ratio(overlap, cand_total), ratio(overlap, ref_total))
}

/// Longest-common-subsequence length, two-row dynamic program.
fn lcs_length(a: &[String], b: &[String]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y {
                prev[j] + 1
            } else {
                prev[j + 1].max(cur[j])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// ROUGE-L over the full token streams.
pub fn rouge_l<S: Scalar>(candidate: &EvalTokens, reference: &EvalTokens) -> RougeScore<S> {
    if candidate.is_empty() || reference.is_empty() {
        return RougeScore::zero();
    }
    let lcs = S::from_usize(lcs_length(candidate.tokens(), reference.tokens()));
    RougeScore::from_pr(
        lcs / S::from_usize(candidate.len()),
        lcs / S::from_usize(reference.len()),
    )
}

/// ROUGE-W: weighted LCS with `f(k) = k^alpha`, so consecutive matches earn
/// more credit than scattered ones. Requires `alpha > 1`.
pub fn rouge_w<S: Scalar>(
    candidate: &EvalTokens,
    reference: &EvalTokens,
    alpha: f64,
) -> Result<RougeScore<S>> {
    if alpha <= 1.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    if candidate.is_empty() || reference.is_empty() {
        return Ok(RougeScore::zero());
    }
    let a = candidate.tokens();
    let b = reference.tokens();
    let alpha_s = S::from_f64(alpha);
    let f = |k: usize| S::from_usize(k).powf(alpha_s);

    // two-row DP over (score, run length ending here)
    let cols = b.len() + 1;
    let mut score_prev = vec![S::zero(); cols];
    let mut score_cur = vec![S::zero(); cols];
    let mut run_prev = vec![0usize; cols];
    let mut run_cur = vec![0usize; cols];
    for x in a {
        score_cur[0] = S::zero();
        run_cur[0] = 0;
        for (j, y) in b.iter().enumerate() {
            if x == y {
                let k = run_prev[j];
                score_cur[j + 1] = score_prev[j] + f(k + 1) - f(k);
                run_cur[j + 1] = k + 1;
            } else {
                score_cur[j + 1] = if score_prev[j + 1] > score_cur[j] {
                    score_prev[j + 1]
                } else {
                    score_cur[j]
                };
                run_cur[j + 1] = 0;
            }
        }
        std::mem::swap(&mut score_prev, &mut score_cur);
        std::mem::swap(&mut run_prev, &mut run_cur);
    }
    let wlcs = score_prev[b.len()];

    let inv_alpha = S::one() / alpha_s;
    let precision = (wlcs / f(candidate.len())).powf(inv_alpha);
    let recall = (wlcs / f(reference.len())).powf(inv_alpha);
    Ok(RougeScore::from_pr(precision, recall))
}

/// Scores all four variants on pre-tokenized streams.
pub fn evaluate_tokens<S: Scalar>(
    candidate: &EvalTokens,
    reference: &EvalTokens,
    alpha: f64,
) -> Result<RougeReport<S>> {
    Ok(RougeReport {
        rouge_1: rouge_n(candidate, reference, 1),
        rouge_2: rouge_n(candidate, reference, 2),
        rouge_l: rouge_l(candidate, reference),
        rouge_w: rouge_w(candidate, reference, alpha)?,
    })
}

/// Tokenizes both texts (stopwords kept, no stemming) and scores all four
/// variants.
pub fn evaluate_all<S: Scalar>(
    candidate_text: &str,
    reference_text: &str,
    alpha: f64,
) -> Result<RougeReport<S>> {
    evaluate_tokens(
        &EvalTokens::new(candidate_text),
        &EvalTokens::new(reference_text),
        alpha,
    )
}
