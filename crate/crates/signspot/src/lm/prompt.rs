//! Prompt construction for completion-style LLM scoring.

use crate::error::{Error, Result};
use crate::lm::TransitionQuery;

/// Rendered in place of the context when no gloss has been decoded yet.
pub const EMPTY_CONTEXT_SENTINEL: &str = "(start of sentence)";

const CONTEXT_SLOT: &str = "{CONTEXT}";
const CANDIDATES_SLOT: &str = "{CANDIDATES}";

/// Casing applied when rendering glosses into prose.
///
/// Glosses are stored uppercase; prompts read more naturally to an LLM in
/// sentence case, so by default the context is lowercased (with its first
/// letter re-capitalized) and each candidate is capitalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PromptStyle {
    pub lowercase_context: bool,
    pub capitalize_candidates: bool,
}

impl Default for PromptStyle {
    fn default() -> Self {
        Self {
            lowercase_context: true,
            capitalize_candidates: true,
        }
    }
}

fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().collect::<String>() + chars.as_str(),
        None => String::new(),
    }
}

/// A template with `{CONTEXT}` and `{CANDIDATES}` placeholders, each required
/// to appear exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptTemplate {
    text: String,
    candidate_separator: String,
}

impl Default for PromptTemplate {
    fn default() -> Self {
        Self {
            text: "You are predicting the next word of a sign-language gloss \
                   sentence. Sentence so far: \"{CONTEXT}\". Choose exactly one \
                   of these options as the next word: {CANDIDATES}. The next \
                   word is:"
                .into(),
            candidate_separator: ", ".into(),
        }
    }
}

impl PromptTemplate {
    pub fn new(text: &str, candidate_separator: &str) -> Result<Self> {
        for slot in [CONTEXT_SLOT, CANDIDATES_SLOT] {
            match text.matches(slot).count() {
                1 => {}
                n => {
                    return Err(Error::Template(format!(
                        "placeholder {slot} must appear exactly once, found {n}"
                    )))
                }
            }
        }
        Ok(Self {
            text: text.into(),
            candidate_separator: candidate_separator.into(),
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Renders the context prefix alone, applying `style`.
    pub fn render_context(query: &TransitionQuery, style: &PromptStyle) -> String {
        if query.context().is_empty() {
            return EMPTY_CONTEXT_SENTINEL.into();
        }
        let joined = if style.lowercase_context {
            let lowered: Vec<String> = query.context().iter().map(|g| g.to_lowercase()).collect();
            capitalize(&lowered.join(" "))
        } else {
            query.context().join(" ")
        };
        joined
    }

    /// Renders one candidate the way it appears in the prompt (and the way it
    /// is sent as a continuation to a remote endpoint).
    pub fn render_candidate(gloss: &str, style: &PromptStyle) -> String {
        if style.capitalize_candidates {
            capitalize(&gloss.to_lowercase())
        } else {
            gloss.into()
        }
    }

    /// Deterministically substitutes the query into the template.
    pub fn render(&self, query: &TransitionQuery, style: &PromptStyle) -> String {
        let context = Self::render_context(query, style);
        let candidates = query
            .candidates()
            .iter()
            .map(|g| Self::render_candidate(g, style))
            .collect::<Vec<_>>()
            .join(&self.candidate_separator);
        self.text
            .replacen(CONTEXT_SLOT, &context, 1)
            .replacen(CANDIDATES_SLOT, &candidates, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn query(context: &[&str], candidates: &[&str]) -> TransitionQuery {
        TransitionQuery::new(
            context.iter().map(|s| s.to_string()).collect(),
            candidates.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn renders_context_and_candidates() {
        let template = PromptTemplate::default();
        let q = query(&["TOGETHER", "WE"], &["SHORT", "SECRET", "MAKE"]);
        let prompt = template.render(&q, &PromptStyle::default());
        assert!(prompt.contains("Together we"), "{prompt}");
        assert!(prompt.contains("Short, Secret, Make"), "{prompt}");
    }

    #[test]
    fn empty_context_uses_sentinel() {
        let template = PromptTemplate::default();
        let q = query(&[], &["HELLO"]);
        let prompt = template.render(&q, &PromptStyle::default());
        assert!(prompt.contains(EMPTY_CONTEXT_SENTINEL));
    }

    #[test]
    fn rendering_is_deterministic() {
        let template = PromptTemplate::default();
        let q = query(&["WE", "ALL"], &["GO", "STAY"]);
        let a = template.render(&q, &PromptStyle::default());
        let b = template.render(&q, &PromptStyle::default());
        assert_eq!(a, b);
    }

    #[test]
    fn verbatim_style_keeps_gloss_case() {
        let template = PromptTemplate::default();
        let style = PromptStyle {
            lowercase_context: false,
            capitalize_candidates: false,
        };
        let q = query(&["WE-ALL"], &["FS_CHRIS"]);
        let prompt = template.render(&q, &style);
        assert!(prompt.contains("WE-ALL"));
        assert!(prompt.contains("FS_CHRIS"));
    }

    #[test]
    fn rejects_malformed_templates() {
        assert!(PromptTemplate::new("no placeholders", ", ").is_err());
        assert!(PromptTemplate::new("{CONTEXT} {CONTEXT} {CANDIDATES}", ", ").is_err());
        assert!(PromptTemplate::new("{CONTEXT} only", ", ").is_err());
        assert!(PromptTemplate::new("{CONTEXT} and {CANDIDATES}", " | ").is_ok());
    }
}
