//! Sentence ranking and extract assembly.
//!
//! Each sentence carries two scores: its share of the document's total
//! tf-idf mass, and a title-similarity score over shared nouns. Clusters
//! are ranked by the sum, and the extract takes an equal quota from each
//! cluster, redistributing leftover slots to the clusters with the best
//! next candidates.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::cluster::{kmeans, select_k, Clustering, KMeansConfig};
use crate::error::Result;
use crate::preprocess::{preprocess_document, Document, RawInput, Sentence};
use crate::scalar::Scalar;
use crate::vectorize::{build_model, TfIdfModel};

/// One sentence with its scores and cluster id.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedSentence<S> {
    pub position: usize,
    pub cluster: usize,
    /// Share of the document's tf-idf mass, in [0, 1].
    pub tfidf_score: S,
    /// Shared-noun similarity to the title, at most 0.1.
    pub title_score: S,
    /// `tfidf_score + title_score`.
    pub rank_score: S,
}

/// The final extract: positions in document order and the joined text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub selected_positions: Vec<usize>,
    pub text: String,
    /// Base per-cluster quota `floor(target / k)`.
    pub per_cluster_quota: usize,
}

/// `sum(sentence weights) / total_weight`; 0 when the document carries no
/// weight at all.
pub fn sentence_tfidf_score<S: Scalar>(sentence_position: usize, model: &TfIdfModel<S>) -> S {
    if model.total_weight == S::zero() {
        return S::zero();
    }
    model.vectors[sentence_position].sum() / model.total_weight
}

/// `|shared nouns| * 0.1 / |title nouns|`; 0 for an empty title.
pub fn title_similarity_score<S: Scalar>(sentence: &Sentence, title_nouns: &BTreeSet<String>) -> S {
    if title_nouns.is_empty() {
        return S::zero();
    }
    let shared = sentence.nouns.intersection(title_nouns).count();
    S::from_usize(shared) * S::from_f64(0.1) / S::from_usize(title_nouns.len())
}

/// Scores every sentence and sorts each cluster by rank descending, ties
/// toward the earlier position.
pub fn rank_clusters<S: Scalar>(
    doc: &Document,
    model: &TfIdfModel<S>,
    clustering: &Clustering<S>,
) -> Vec<Vec<RankedSentence<S>>> {
    debug_assert_eq!(clustering.assignments.len(), doc.sentences.len());
    let mut clusters: Vec<Vec<RankedSentence<S>>> = vec![Vec::new(); clustering.k];
    for sentence in &doc.sentences {
        let tfidf_score = sentence_tfidf_score(sentence.position, model);
        let title_score = title_similarity_score(sentence, &doc.title_nouns);
        let cluster = clustering.assignments[sentence.position];
        clusters[cluster].push(RankedSentence {
            position: sentence.position,
            cluster,
            tfidf_score,
            title_score,
            rank_score: tfidf_score + title_score,
        });
    }
    for list in &mut clusters {
        list.sort_by(compare_ranked);
    }
    clusters
}

fn compare_ranked<S: Scalar>(a: &RankedSentence<S>, b: &RankedSentence<S>) -> Ordering {
    b.rank_score
        .partial_cmp(&a.rank_score)
        .unwrap_or(Ordering::Equal)
        .then(a.position.cmp(&b.position))
}

/// Selects `min(target, n)` sentences: a base quota of `floor(target / k)`
/// top-ranked sentences per cluster, then repeated rounds handing one slot
/// each to the clusters whose next-best candidate ranks highest. Output is
/// in document order.
pub fn extract_summary<S: Scalar>(
    doc: &Document,
    ranked: &[Vec<RankedSentence<S>>],
    target_sentences: usize,
) -> Summary {
    let k = ranked.len();
    let n: usize = ranked.iter().map(|c| c.len()).sum();
    let goal = target_sentences.min(n);
    let base = if k > 0 { target_sentences / k } else { 0 };

    let mut taken: Vec<usize> = ranked.iter().map(|c| c.len().min(base)).collect();
    let mut remaining = goal - taken.iter().sum::<usize>();
    while remaining > 0 {
        let mut eligible: Vec<usize> = (0..k).filter(|&c| taken[c] < ranked[c].len()).collect();
        if eligible.is_empty() {
            break;
        }
        eligible.sort_by(|&a, &b| compare_ranked(&ranked[a][taken[a]], &ranked[b][taken[b]]));
        for &c in eligible.iter().take(remaining) {
            taken[c] += 1;
        }
        remaining = goal - taken.iter().sum::<usize>();
    }

    let mut selected_positions: Vec<usize> = ranked
        .iter()
        .zip(&taken)
        .flat_map(|(cluster, &t)| cluster[..t].iter().map(|r| r.position))
        .collect();
    selected_positions.sort_unstable();

    let text = selected_positions
        .iter()
        .map(|&p| doc.sentences[p].raw.as_str())
        .collect::<Vec<_>>()
        .join(" ");

    Summary { selected_positions, text, per_cluster_quota: base }
}

/// Everything the pipeline produced, for callers that need the
/// intermediate stages (scores, cluster assignments) alongside the
/// summary.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineRun<S> {
    pub document: Document,
    pub model: TfIdfModel<S>,
    pub clustering: Clustering<S>,
    pub ranked: Vec<Vec<RankedSentence<S>>>,
    pub summary: Summary,
}

/// Full pipeline: preprocess, build the tf-idf model, cluster, rank,
/// extract.
pub fn run_pipeline<S: Scalar>(
    input: &RawInput,
    config: &KMeansConfig,
    target_sentences: usize,
) -> Result<PipelineRun<S>> {
    let document = preprocess_document(input)?;
    let model = build_model(&document)?;
    run_pipeline_with_model(document, model, config, target_sentences)
}

/// Pipeline tail for callers supplying a prebuilt document and model.
pub fn run_pipeline_with_model<S: Scalar>(
    document: Document,
    model: TfIdfModel<S>,
    config: &KMeansConfig,
    target_sentences: usize,
) -> Result<PipelineRun<S>> {
    let k = select_k(document.sentences.len(), target_sentences, config.k);
    let resolved = KMeansConfig { k: Some(k), ..config.clone() };
    let clustering = kmeans(&model, &resolved)?;
    let ranked = rank_clusters(&document, &model, &clustering);
    let summary = extract_summary(&document, &ranked, target_sentences);
    Ok(PipelineRun { document, model, clustering, ranked, summary })
}

/// Summarizes raw input text to `target_sentences` extracted sentences.
pub fn summarize_document<S: Scalar>(
    input: &RawInput,
    config: &KMeansConfig,
    target_sentences: usize,
) -> Result<Summary> {
    run_pipeline::<S>(input, config, target_sentences).map(|run| run.summary)
}
