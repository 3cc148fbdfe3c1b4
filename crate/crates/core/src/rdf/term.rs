use alloc::string::{String, ToString};
use core::fmt;

use super::vocab::xsd;

/// Errors raised when constructing terms from raw strings.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("invalid IRI <{0}>")]
    InvalidIri(String),
    #[error("invalid blank node label _:{0}")]
    InvalidBlankNode(String),
    #[error("invalid language tag @{0}")]
    InvalidLanguageTag(String),
    #[error("invalid variable name ?{0}")]
    InvalidVariable(String),
    #[error("literal cannot be used as a subject")]
    LiteralSubject,
}

/// An IRI. Non-empty, no whitespace, no angle brackets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self, TermError> {
        let value = value.into();
        if is_valid_iri(&value) {
            Ok(Iri(value))
        } else {
            Err(TermError::InvalidIri(value))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The part after the last `#` or `/`.
    pub fn local_name(&self) -> &str {
        let cut = self.0.rfind(['#', '/']).map(|i| i + 1).unwrap_or(0);
        &self.0[cut..]
    }
}

pub(crate) fn is_valid_iri(value: &str) -> bool {
    !value.is_empty() && !value.chars().any(|c| c.is_whitespace() || c == '<' || c == '>')
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlankNode(String);

impl BlankNode {
    pub fn new(label: impl Into<String>) -> Result<Self, TermError> {
        let label = label.into();
        if is_identifier(&label) {
            Ok(BlankNode(label))
        } else {
            Err(TermError::InvalidBlankNode(label))
        }
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

/// `[A-Za-z][A-Za-z0-9_]*`, shared by blank node labels and variable names.
pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum LiteralTag {
    Datatype(Iri),
    Language(String),
}

/// A literal has either a datatype or a language tag, never both.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    tag: LiteralTag,
}

impl Literal {
    /// Plain literal typed `xsd:string`.
    pub fn string(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            tag: LiteralTag::Datatype(Iri(xsd::STRING.to_string())),
        }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Literal {
            lexical: lexical.into(),
            tag: LiteralTag::Datatype(datatype),
        }
    }

    pub fn lang(lexical: impl Into<String>, language: impl Into<String>) -> Result<Self, TermError> {
        let language = language.into();
        if !is_language_tag(&language) {
            return Err(TermError::InvalidLanguageTag(language));
        }
        Ok(Literal {
            lexical: lexical.into(),
            tag: LiteralTag::Language(language),
        })
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> Option<&Iri> {
        match &self.tag {
            LiteralTag::Datatype(dt) => Some(dt),
            LiteralTag::Language(_) => None,
        }
    }

    pub fn language(&self) -> Option<&str> {
        match &self.tag {
            LiteralTag::Language(l) => Some(l),
            LiteralTag::Datatype(_) => None,
        }
    }
}

pub(crate) fn is_language_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let first_ok = parts
        .next()
        .is_some_and(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphabetic()));
    first_ok && parts.all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

/// An RDF term. Ordering and equality are structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
    BlankNode(BlankNode),
}

impl Term {
    pub fn iri(value: impl Into<String>) -> Result<Self, TermError> {
        Iri::new(value).map(Term::Iri)
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::BlankNode(b)
    }
}

/// N-Triples rendering; used as the canonical "serialized value" for ordering.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => iri.fmt(f),
            Term::BlankNode(b) => write!(f, "_:{}", b.0),
            Term::Literal(l) => {
                f.write_str("\"")?;
                write_escaped(f, &l.lexical)?;
                f.write_str("\"")?;
                match &l.tag {
                    LiteralTag::Language(lang) => write!(f, "@{lang}"),
                    LiteralTag::Datatype(dt) if dt.as_str() == xsd::STRING => Ok(()),
                    LiteralTag::Datatype(dt) => write!(f, "^^{dt}"),
                }
            }
        }
    }
}

pub(crate) fn write_escaped(out: &mut impl fmt::Write, s: &str) -> fmt::Result {
    for c in s.chars() {
        match c {
            '"' => out.write_str("\\\"")?,
            '\\' => out.write_str("\\\\")?,
            '\n' => out.write_str("\\n")?,
            '\r' => out.write_str("\\r")?,
            '\t' => out.write_str("\\t")?,
            c if (c as u32) < 0x20 || c == '\u{7f}' => write!(out, "\\u{:04X}", c as u32)?,
            c => out.write_char(c)?,
        }
    }
    Ok(())
}

/// A statement. The predicate is always an IRI and the subject never a literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    subject: Term,
    predicate: Iri,
    object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Term>, predicate: Iri, object: impl Into<Term>) -> Result<Self, TermError> {
        let subject = subject.into();
        if subject.is_literal() {
            return Err(TermError::LiteralSubject);
        }
        Ok(Triple {
            subject,
            predicate,
            object: object.into(),
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Iri {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    #[test]
    fn iri_rejects_whitespace_and_brackets() {
        assert!(Iri::new("http://x#a").is_ok());
        assert!(Iri::new("").is_err());
        assert!(Iri::new("http://x a").is_err());
        assert!(Iri::new("http://x<a").is_err());
    }

    #[test]
    fn local_names() {
        assert_eq!(Iri::new("http://www.ucd.ie/consus/AgriOnt#SoilPH").unwrap().local_name(), "SoilPH");
        assert_eq!(Iri::new("http://x/y/z").unwrap().local_name(), "z");
        assert_eq!(Iri::new("urn:x").unwrap().local_name(), "urn:x");
    }

    #[test]
    fn blank_node_labels() {
        assert!(BlankNode::new("b0").is_ok());
        assert!(BlankNode::new("0b").is_err());
        assert!(BlankNode::new("a-b").is_err());
    }

    #[test]
    fn literal_tag_is_exclusive() {
        let plain = Literal::string("x");
        assert_eq!(plain.datatype().unwrap().as_str(), xsd::STRING);
        assert!(plain.language().is_none());
        let tagged = Literal::lang("x", "en-GB").unwrap();
        assert!(tagged.datatype().is_none());
        assert!(Literal::lang("x", "en_GB").is_err());
    }

    #[test]
    fn literal_subject_rejected() {
        let p = Iri::new("http://x#p").unwrap();
        assert_eq!(
            Triple::new(Literal::string("s"), p.clone(), Literal::string("o")),
            Err(TermError::LiteralSubject)
        );
    }

    #[test]
    fn ntriples_rendering() {
        let dt = Iri::new(xsd::INTEGER).unwrap();
        assert_eq!(format!("{}", Term::from(Literal::typed("5", dt))), "\"5\"^^<http://www.w3.org/2001/XMLSchema#integer>");
        assert_eq!(format!("{}", Term::from(Literal::string("a\"b\n"))), "\"a\\\"b\\n\"");
    }
}
