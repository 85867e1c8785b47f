//! Rule-based noun tagger.
//!
//! Recall-biased: a token is a noun unless something says otherwise. Rules
//! apply in order: exclusion lexicon, capitalization (proper nouns), noun
//! suffixes, verb suffixes, then the default.

use std::collections::BTreeSet;

use super::{raw_tokens, WordList};

const NOUN_SUFFIXES: &[&str] = &["tion", "ment", "ness", "ity", "er", "or"];

/// Noun surface forms of `sentence_text`, lowercased.
pub fn tag_nouns_with(sentence_text: &str, lexicon: &WordList) -> BTreeSet<String> {
    let mut nouns = BTreeSet::new();
    for (i, token) in raw_tokens(sentence_text).iter().enumerate() {
        let lower = token.to_lowercase();
        if lexicon.contains(&lower) {
            continue;
        }
        let capitalized = token.chars().next().is_some_and(|c| c.is_uppercase());
        if i > 0 && capitalized {
            // mid-sentence capitalization marks a proper noun
            nouns.insert(lower);
            continue;
        }
        if has_noun_suffix(&lower) {
            nouns.insert(lower);
            continue;
        }
        if is_verb_form(&lower) {
            continue;
        }
        nouns.insert(lower);
    }
    nouns
}

fn has_noun_suffix(token: &str) -> bool {
    let suffixed = |t: &str| {
        NOUN_SUFFIXES
            .iter()
            .any(|s| t.ends_with(s) && t.len() > s.len() + 1)
    };
    if suffixed(token) {
        return true;
    }
    // plural -s after a noun-suffixed stem, e.g. "orders", "judgments"
    token.strip_suffix('s').is_some_and(suffixed)
}

fn is_verb_form(token: &str) -> bool {
    (token.ends_with("ed") && token.len() >= 5) || (token.ends_with("ing") && token.len() >= 6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::{default_tagger_lexicon, tag_nouns};

    fn set(words: &[&str]) -> BTreeSet<String> {
        words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn lexicon_and_verb_suffixes_excluded() {
        assert_eq!(tag_nouns("The court dismissed the appeal"), set(&["court", "appeal"]));
    }

    #[test]
    fn empty_text() {
        assert!(tag_nouns("").is_empty());
    }

    #[test]
    fn mid_sentence_capitals_are_proper_nouns() {
        assert_eq!(tag_nouns("Nationwide News appealed"), set(&["nationwide", "news"]));
    }

    #[test]
    fn noun_suffixes_tagged() {
        let got = tag_nouns("The judgment ordered compensation for negligence");
        assert!(got.contains("judgment"));
        assert!(got.contains("compensation"));
        assert!(got.contains("negligence"));
        assert!(!got.contains("ordered"), "got: {got:?}");
    }

    #[test]
    fn plural_noun_suffixes_tagged() {
        let got = tag_nouns_with("orders and payments", default_tagger_lexicon());
        assert_eq!(got, set(&["orders", "payments"]));
    }

    #[test]
    fn case_title_nouns() {
        let got = tag_nouns("Rush v Nationwide News Pty Ltd (No 7) [2019] FCA 496");
        for w in ["rush", "nationwide", "news", "pty", "ltd", "fca", "2019", "496", "7"] {
            assert!(got.contains(w), "missing {w:?} in {got:?}");
        }
        assert!(!got.contains("v"));
    }

    #[test]
    fn nouns_subset_of_tokens() {
        let text = "The Full Court allowed the appeal against Nationwide News";
        let tokens: BTreeSet<String> = crate::preprocess::tokenize(text).into_iter().collect();
        for noun in tag_nouns(text) {
            assert!(tokens.contains(&noun));
        }
    }
}
