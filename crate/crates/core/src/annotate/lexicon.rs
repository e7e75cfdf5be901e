//! Trigger-term baseline for frames and values.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labels::{FrameClass, Label, ValueClass};
use crate::model::Argument;

/// Trigger terms per class. Loaded from JSON shaped like
/// `{"frames": {"economic": ["$", "tax"]}, "values": {"tradition": ["custom"]}}`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lexicon {
    #[serde(default)]
    pub frames: BTreeMap<FrameClass, Vec<String>>,
    #[serde(default)]
    pub values: BTreeMap<ValueClass, Vec<String>>,
}

impl Lexicon {
    pub fn load(path: &Path) -> Result<Lexicon> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
    }
}

/// Classes with at least one trigger occurring, case-insensitively, in the
/// text. Empty triggers never match.
pub fn lexicon_labels<L: Label>(text: &str, triggers: &BTreeMap<L, Vec<String>>) -> BTreeSet<L> {
    let haystack = text.to_lowercase();
    triggers
        .iter()
        .filter(|(_, terms)| {
            terms
                .iter()
                .any(|t| !t.is_empty() && haystack.contains(&t.to_lowercase()))
        })
        .map(|(class, _)| *class)
        .collect()
}

fn searchable(arg: &Argument) -> String {
    format!("{}\n{}", arg.header, arg.premise)
}

/// Labels an argument from its header and premise.
pub fn lexicon_annotate<L: Label>(arg: &Argument, triggers: &BTreeMap<L, Vec<String>>) -> BTreeSet<L> {
    lexicon_labels(&searchable(arg), triggers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn currency_symbol() {
        let lex = BTreeMap::from([(FrameClass::Economic, vec!["$".to_owned(), "tax".to_owned()])]);
        assert_eq!(
            lexicon_labels("It costs $40 a license", &lex),
            BTreeSet::from([FrameClass::Economic])
        );
    }

    #[test]
    fn empty_lexicon() {
        let lex: BTreeMap<FrameClass, Vec<String>> = BTreeMap::new();
        assert!(lexicon_labels("anything at all", &lex).is_empty());
    }

    #[test]
    fn multi_label_and_case() {
        let lex = BTreeMap::from([
            (FrameClass::Economic, vec!["TAX".to_owned()]),
            (FrameClass::Morality, vec!["cruel".to_owned()]),
            (FrameClass::Political, vec![String::new()]),
        ]);
        assert_eq!(
            lexicon_labels("Cruel and taxing", &lex),
            BTreeSet::from([FrameClass::Economic, FrameClass::Morality])
        );
    }

    #[test]
    fn lexicon_json() {
        let lex: Lexicon =
            serde_json::from_str(r#"{"frames": {"Economic": ["$"]}, "values": {"tradition": ["custom"]}}"#)
                .unwrap();
        assert_eq!(lex.frames[&FrameClass::Economic], vec!["$"]);
        assert!(serde_json::from_str::<Lexicon>(r#"{"frames": {"happiness": []}}"#).is_err());
    }
}
