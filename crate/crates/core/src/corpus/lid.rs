//! Language-ID tokens prepended to training targets.

use thiserror::Error;

use crate::script::LanguageId;

/// Placeholder replaced by the lowercase language name.
pub const LANG_PLACEHOLDER: &str = "{lang}";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LidError {
    #[error("transcript already starts with the LID token `{0}`")]
    AlreadyTagged(String),
    #[error("text does not start with a known LID token")]
    MissingLid,
    #[error("invalid LID format `{template}`: {reason}")]
    BadFormat { template: String, reason: &'static str },
}

/// Surface form of LID tokens, e.g. `<{lang}` → `<hindi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LidFormat {
    template: String,
    surfaces: [String; 5],
}

impl Default for LidFormat {
    fn default() -> Self {
        LidFormat::new("<{lang}").unwrap()
    }
}

impl LidFormat {
    /// The template must contain `{lang}` exactly once, contain no
    /// whitespace, and produce tokens that cannot be mistaken for CLS labels.
    pub fn new(template: &str) -> Result<Self, LidError> {
        let bad = |reason| LidError::BadFormat {
            template: template.to_string(),
            reason,
        };
        if template.matches(LANG_PLACEHOLDER).count() != 1 {
            return Err(bad("must contain {lang} exactly once"));
        }
        if template.chars().any(char::is_whitespace) {
            return Err(bad("must not contain whitespace"));
        }
        if template.replace(LANG_PLACEHOLDER, "").chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit()) {
            return Err(bad("needs a character outside a-z0-9 to stay distinct from CLS labels"));
        }
        if template.contains('|') {
            return Err(bad("must not contain the word boundary `|`"));
        }
        let surfaces = LanguageId::ALL.map(|l| template.replace(LANG_PLACEHOLDER, l.name()));
        Ok(LidFormat {
            template: template.to_string(),
            surfaces,
        })
    }

    pub fn template(&self) -> &str {
        &self.template
    }

    pub fn surface(&self, lang: LanguageId) -> &str {
        let i = LanguageId::ALL.iter().position(|&l| l == lang).unwrap();
        &self.surfaces[i]
    }

    /// Language of a single token, if it is a LID surface.
    pub fn parse_token(&self, token: &str) -> Option<LanguageId> {
        LanguageId::ALL.into_iter().find(|&l| self.surface(l) == token)
    }

    /// Split off a leading LID token: `(lang, remainder)`.
    ///
    /// Exactly one separator character after the token is consumed, so
    /// `strip(inject(l, t)) == (l, t)` for any `t`.
    pub fn strip<'a>(&self, tagged: &'a str) -> Result<(LanguageId, &'a str), LidError> {
        let end = tagged.find(char::is_whitespace).unwrap_or(tagged.len());
        let lang = self.parse_token(&tagged[..end]).ok_or(LidError::MissingLid)?;
        let rest = &tagged[end..];
        let rest = match rest.chars().next() {
            Some(c) => &rest[c.len_utf8()..],
            None => rest,
        };
        Ok((lang, rest))
    }

    /// Prepend the LID token and a single space. An empty transcript yields
    /// the bare token.
    pub fn inject(&self, lang: LanguageId, transcript: &str) -> Result<String, LidError> {
        let first = transcript.split(char::is_whitespace).next().unwrap_or("");
        if self.parse_token(first).is_some() {
            return Err(LidError::AlreadyTagged(first.to_string()));
        }
        let surface = self.surface(lang);
        if transcript.is_empty() {
            return Ok(surface.to_string());
        }
        Ok(format!("{surface} {transcript}"))
    }
}

/// [`LidFormat::inject`] with the default `<{lang}` format.
pub fn inject_lid(lang: LanguageId, transcript: &str) -> Result<String, LidError> {
    LidFormat::default().inject(lang, transcript)
}

/// [`LidFormat::strip`] with the default `<{lang}` format.
pub fn strip_lid(tagged: &str) -> Result<(LanguageId, String), LidError> {
    LidFormat::default().strip(tagged).map(|(l, r)| (l, r.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inject_examples() {
        assert_eq!(inject_lid(LanguageId::Hindi, "आ").unwrap(), "<hindi आ");
        assert_eq!(inject_lid(LanguageId::Gujarati, "").unwrap(), "<gujarati");
        assert_eq!(
            inject_lid(LanguageId::Hindi, "<hindi आ"),
            Err(LidError::AlreadyTagged("<hindi".into()))
        );
        assert!(matches!(inject_lid(LanguageId::Hindi, "<odia"), Err(LidError::AlreadyTagged(_))));
    }

    #[test]
    fn strip_examples() {
        assert_eq!(strip_lid("<hindi आ").unwrap(), (LanguageId::Hindi, "आ".to_string()));
        assert_eq!(strip_lid("आ"), Err(LidError::MissingLid));
        assert_eq!(strip_lid("<odia").unwrap(), (LanguageId::Odia, String::new()));
        assert_eq!(strip_lid(""), Err(LidError::MissingLid));
        assert_eq!(strip_lid("<hindix आ"), Err(LidError::MissingLid));
    }

    #[test]
    fn surfaces_are_distinct_and_round_trip() {
        let f = LidFormat::default();
        for a in LanguageId::ALL {
            assert_eq!(f.parse_token(f.surface(a)), Some(a));
            for b in LanguageId::ALL {
                if a != b {
                    assert_ne!(f.surface(a), f.surface(b));
                }
            }
        }
    }

    #[test]
    fn custom_formats() {
        let f = LidFormat::new("<{lang}>").unwrap();
        assert_eq!(f.inject(LanguageId::Odia, "x").unwrap(), "<odia> x");
        let f = LidFormat::new("__{lang}__").unwrap();
        assert_eq!(f.surface(LanguageId::Bengali), "__bengali__");
        assert!(LidFormat::new("{lang}").is_err());
        assert!(LidFormat::new("lid{lang}").is_err());
        assert!(LidFormat::new("<lang>").is_err());
        assert!(LidFormat::new("< {lang}").is_err());
        assert!(LidFormat::new("<{lang}{lang}").is_err());
    }

    fn any_lang() -> impl Strategy<Value = LanguageId> {
        prop::sample::select(LanguageId::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn strip_inverts_inject(lang in any_lang(), text in "[^<]{0,20}") {
            let tagged = inject_lid(lang, &text).unwrap();
            prop_assert_eq!(strip_lid(&tagged).unwrap(), (lang, text));
        }

        #[test]
        fn inject_inverts_strip(lang in any_lang(), text in "[a-z ]{1,20}") {
            let tagged = inject_lid(lang, &text).unwrap();
            let (l, rest) = strip_lid(&tagged).unwrap();
            prop_assert_eq!(inject_lid(l, &rest).unwrap(), tagged);
        }
    }
}
