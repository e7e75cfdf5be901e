//! Few-shot prompt for conclusion generation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Stance;

pub const MODEL: &str = "gpt-3.5-turbo";
pub const TEMPERATURE: f64 = 0.5;
pub const TOP_P: f64 = 1.0;
/// Extra tokens allowed beyond the topic and reply lengths.
pub const TOKEN_SLACK: usize = 5;

const PREAMBLE: &str = "Task: Generate a one-sentence conclusion, given title and reply. Here are a few examples:

Title: Is there anything wrong about homosexuality and SSM? If so, what? (If you comment, please send me a message so we can discuss further.)

Reply: [No] It is morally unethical?

Conclusion Claim: Homosexuality and SSM is morally unethical.

Title: Should presidents be able to use tax money to take vacations during their presidency?

Reply: [Yes] Yes the should

Conclusion Claim: Presidents should be able to use tax money to take vacations during their presidency.

Title: Are unicorns real?

Reply: [No] More real then your brain cells

Conclusion Claim: Intelligence disproves the existence of unicorns.

Please generate the conclusion claim now.

";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecodingMetadata {
    pub model: String,
    pub temperature: f64,
    pub top_p: f64,
    /// How `max_tokens` was counted.
    pub token_counting: String,
}

impl Default for DecodingMetadata {
    fn default() -> Self {
        DecodingMetadata {
            model: MODEL.to_owned(),
            temperature: TEMPERATURE,
            top_p: TOP_P,
            token_counting: "whitespace".to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConclusionPrompt {
    pub topic: String,
    pub reply: String,
    pub stance: Stance,
    pub rendered_prompt: String,
    pub max_tokens: usize,
    pub metadata: DecodingMetadata,
}

pub fn whitespace_tokens(text: &str) -> usize {
    text.split_whitespace().count()
}

/// Renders the prompt for topic `t`, reply `r` and stance `s`.
pub fn build_conclusion_prompt(t: &str, r: &str, s: Stance) -> Result<ConclusionPrompt> {
    if t.trim().is_empty() {
        return Err(Error::invalid("empty topic"));
    }
    if r.trim().is_empty() {
        return Err(Error::invalid("empty reply"));
    }
    let rendered_prompt = format!(
        "{PREAMBLE}Title: {t}\n\nReply: [{}] {r}\n\nConclusion Claim:",
        s.yes_no()
    );
    Ok(ConclusionPrompt {
        topic: t.to_owned(),
        reply: r.to_owned(),
        stance: s,
        rendered_prompt,
        max_tokens: whitespace_tokens(t) + whitespace_tokens(r) + TOKEN_SLACK,
        metadata: DecodingMetadata::default(),
    })
}
