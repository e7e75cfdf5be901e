//! Sentence segmentation and the token-matching concept extractor.

use std::collections::{BTreeMap, HashMap};

use rust_stemmers::{Algorithm, Stemmer};

use super::store::{ConceptId, ConceptStore};

/// Sentences with fewer whitespace tokens are discarded.
pub const MIN_SENTENCE_WORDS: usize = 3;

/// Concepts extracted per sentence by default.
pub const SEEDS_PER_SENTENCE: usize = 2;

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '”' | '’' | '»')
}

/// Splits on terminal punctuation followed by whitespace (or end of text).
fn segment(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut chars = text.char_indices().peekable();
    while let Some((_, c)) = chars.next() {
        if !is_terminal(c) {
            continue;
        }
        while let Some(&(_, n)) = chars.peek() {
            if is_terminal(n) || is_closer(n) {
                chars.next();
            } else {
                break;
            }
        }
        match chars.peek() {
            Some(&(i, n)) if n.is_whitespace() => {
                out.push(&text[start..i]);
                start = i;
            }
            None => {
                out.push(&text[start..]);
                start = text.len();
            }
            _ => {}
        }
    }
    if start < text.len() {
        out.push(&text[start..]);
    }
    out.into_iter()
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

fn long_enough(s: &str) -> bool {
    s.split_whitespace().count() >= MIN_SENTENCE_WORDS
}

/// Premise sentences followed by the conclusion as a single unit; short
/// sentences are dropped from both.
pub fn split_sentences(premise: &str, conclusion: Option<&str>) -> Vec<String> {
    let mut out: Vec<String> = segment(premise)
        .into_iter()
        .filter(|s| long_enough(s))
        .map(str::to_owned)
        .collect();
    if let Some(c) = conclusion.map(str::trim) {
        if long_enough(c) {
            out.push(c.to_owned());
        }
    }
    out
}

/// Lowercased, stemmed alphanumeric tokens.
pub struct Tokenizer {
    stemmer: Stemmer,
}

impl Default for Tokenizer {
    fn default() -> Self {
        Tokenizer {
            stemmer: Stemmer::create(Algorithm::English),
        }
    }
}

impl Tokenizer {
    pub fn tokens(&self, text: &str) -> Vec<String> {
        text.split(|c: char| !c.is_alphanumeric())
            .filter(|t| !t.is_empty())
            .map(|t| self.stemmer.stem(&t.to_lowercase()).into_owned())
            .collect()
    }
}

/// Index of concept labels by their stemmed token sequence.
pub struct ConceptMatcher {
    tokenizer: Tokenizer,
    by_tokens: HashMap<Vec<String>, Vec<ConceptId>>,
    max_len: usize,
}

impl ConceptMatcher {
    pub fn new(store: &ConceptStore) -> Self {
        let tokenizer = Tokenizer::default();
        let mut by_tokens: HashMap<Vec<String>, Vec<ConceptId>> = HashMap::new();
        let mut max_len = 0;
        for (id, label) in store.labels().iter().enumerate() {
            let toks = tokenizer.tokens(label);
            if toks.is_empty() {
                continue;
            }
            max_len = max_len.max(toks.len());
            by_tokens.entry(toks).or_default().push(id as ConceptId);
        }
        ConceptMatcher {
            tokenizer,
            by_tokens,
            max_len,
        }
    }

    /// Up to `k` concepts mentioned in `sentence`.
    ///
    /// Candidates are ranked by label length in tokens (longest first), then
    /// store degree, then label. A candidate whose every occurrence lies inside
    /// the span of an already selected concept is skipped, so `sport hunting`
    /// subsumes `hunting`.
    pub fn extract(&self, sentence: &str, store: &ConceptStore, k: usize) -> Vec<ConceptId> {
        let toks = self.tokenizer.tokens(sentence);
        let mut spans: BTreeMap<ConceptId, Vec<(usize, usize)>> = BTreeMap::new();
        for start in 0..toks.len() {
            for len in 1..=self.max_len.min(toks.len() - start) {
                if let Some(ids) = self.by_tokens.get(&toks[start..start + len]) {
                    for &id in ids {
                        spans.entry(id).or_default().push((start, start + len));
                    }
                }
            }
        }
        let mut ranked: Vec<(ConceptId, Vec<(usize, usize)>)> = spans.into_iter().collect();
        ranked.sort_by(|(x, xs), (y, ys)| {
            let len = |s: &[(usize, usize)]| s[0].1 - s[0].0;
            len(ys)
                .cmp(&len(xs))
                .then(store.degree(*y).cmp(&store.degree(*x)))
                .then(x.cmp(y))
        });
        let mut chosen = Vec::new();
        let mut covered: Vec<(usize, usize)> = Vec::new();
        for (id, occurrences) in ranked {
            if chosen.len() == k {
                break;
            }
            let subsumed = occurrences
                .iter()
                .all(|&(s, e)| covered.iter().any(|&(cs, ce)| cs <= s && e <= ce));
            if subsumed {
                continue;
            }
            chosen.push(id);
            covered.extend(occurrences);
        }
        chosen
    }
}

#[cfg(test)]
mod tests {
    use super::super::store::ConceptStoreBuilder;
    use super::*;

    #[test]
    fn short_sentences_dropped() {
        assert_eq!(
            split_sentences("Hunting kills animals. Ban it.", None),
            vec!["Hunting kills animals."]
        );
    }

    #[test]
    fn single_sentence_kept() {
        let s = "one two three four five six seven eight nine ten";
        assert_eq!(split_sentences(s, None), vec![s]);
    }

    #[test]
    fn hand_counted_premise() {
        let p = "We should stop this now. Why not? Hunting is cruel to every animal!";
        assert_eq!(
            split_sentences(p, None),
            vec!["We should stop this now.", "Hunting is cruel to every animal!"]
        );
    }

    #[test]
    fn conclusion_appended_whole() {
        let got = split_sentences(
            "Animals feel pain like us.",
            Some("Hunting should be banned. Really."),
        );
        assert_eq!(
            got,
            vec!["Animals feel pain like us.", "Hunting should be banned. Really."]
        );
        assert!(split_sentences("Too short.", Some("Ban it.")).is_empty());
    }

    #[test]
    fn punctuation_inside_tokens_does_not_split() {
        let got = split_sentences("It costs $3.50 per animal. (That is a lot.) Yes it is.", None);
        assert_eq!(got, vec!["It costs $3.50 per animal.", "(That is a lot.)", "Yes it is."]);
    }

    fn store(edges: &[(&str, &str)]) -> ConceptStore {
        let mut b = ConceptStoreBuilder::new();
        for (x, y) in edges {
            b.add(x, y, "IsA", 1.0);
        }
        b.build()
    }

    #[test]
    fn longest_match_first() {
        let s = store(&[("hunting", "x1"), ("hunting", "x2"), ("sport hunting", "ban")]);
        let m = ConceptMatcher::new(&s);
        let got: Vec<&str> = m
            .extract("sport hunting should be banned", &s, 2)
            .into_iter()
            .map(|id| s.label(id))
            .collect();
        assert_eq!(got, vec!["sport hunting", "ban"]);
    }

    #[test]
    fn no_match() {
        let s = store(&[("dog", "cat")]);
        let m = ConceptMatcher::new(&s);
        assert!(m.extract("nothing relevant here", &s, 2).is_empty());
    }

    #[test]
    fn degree_breaks_length_ties() {
        let s = store(&[
            ("meat", "a"),
            ("meat", "b"),
            ("meat", "c"),
            ("meat", "d"),
            ("meat", "e"),
            ("fish", "a"),
            ("fish", "b"),
            ("fish", "c"),
        ]);
        let m = ConceptMatcher::new(&s);
        let got: Vec<&str> = m
            .extract("fish and meat", &s, 2)
            .into_iter()
            .map(|id| s.label(id))
            .collect();
        assert_eq!(got, vec!["meat", "fish"]);
    }
}
