//! Turtle subset: `@prefix`/`PREFIX`, IRIs, prefixed names, `a`, single-line
//! strings with `@lang` or `^^datatype`, integers, decimals, `;` and `,`
//! lists, comments and labeled blank nodes.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::graph::{Graph, Prefixes};
use super::lexer::{Lexer, Spanned, Token};
use super::term::{write_escaped, BlankNode, Iri, Literal, Term, Triple};
use super::vocab::{self, rdf, xsd};
use super::RdfError;

/// Parses Turtle text. `base` prefixes are visible to the document and are
/// carried into the returned prefix map, overridden by in-document declarations.
pub fn parse_turtle(text: &str, base: Option<&Prefixes>) -> Result<Graph, RdfError> {
    let mut parser = TurtleParser {
        lexer: Lexer::new(text),
        graph: Graph::with_prefixes(base.cloned().unwrap_or_default()),
    };
    parser.document()?;
    Ok(parser.graph)
}

/// Byte-level entry point; invalid UTF-8 is reported as a syntax error.
pub fn parse_turtle_bytes(bytes: &[u8], base: Option<&Prefixes>) -> Result<Graph, RdfError> {
    match core::str::from_utf8(bytes) {
        Ok(text) => parse_turtle(text, base),
        Err(e) => {
            let prefix = core::str::from_utf8(&bytes[..e.valid_up_to()]).unwrap_or_default();
            let line = prefix.matches('\n').count() + 1;
            let column = prefix.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            Err(RdfError::Syntax {
                line,
                column,
                message: "invalid UTF-8".into(),
            })
        }
    }
}

struct TurtleParser<'a> {
    lexer: Lexer<'a>,
    graph: Graph,
}

impl TurtleParser<'_> {
    fn error_at(&self, at: Option<&Spanned>, message: impl Into<String>) -> RdfError {
        let (line, column) = at.map_or_else(|| self.lexer.position(), |t| (t.line, t.column));
        RdfError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn expect_next(&mut self, what: &str) -> Result<Spanned, RdfError> {
        match self.lexer.next_token()? {
            Some(t) => Ok(t),
            None => Err(self.error_at(None, alloc::format!("unexpected end of input, expected {what}"))),
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<(), RdfError> {
        let t = self.expect_next(&alloc::format!("'{c}'"))?;
        if t.token == Token::Punct(c) {
            Ok(())
        } else {
            Err(self.error_at(Some(&t), alloc::format!("expected '{c}', found {}", t.token.describe())))
        }
    }

    fn document(&mut self) -> Result<(), RdfError> {
        while let Some(t) = self.lexer.next_token()? {
            match &t.token {
                Token::At(w) if w == "prefix" => {
                    self.prefix_declaration()?;
                    self.expect_punct('.')?;
                }
                Token::Word(w) if w.eq_ignore_ascii_case("prefix") => self.prefix_declaration()?,
                Token::At(w) if w == "base" => return Err(self.error_at(Some(&t), "base IRIs are not supported")),
                Token::Word(w) if w.eq_ignore_ascii_case("base") => {
                    return Err(self.error_at(Some(&t), "base IRIs are not supported"));
                }
                _ => {
                    let subject = self.subject(t)?;
                    self.predicate_object_list(&subject)?;
                    self.expect_punct('.')?;
                }
            }
        }
        Ok(())
    }

    fn prefix_declaration(&mut self) -> Result<(), RdfError> {
        let t = self.expect_next("prefix label")?;
        let Token::PrefixedName { prefix, local } = &t.token else {
            return Err(self.error_at(Some(&t), "expected a prefix label such as 'ex:'"));
        };
        if !local.is_empty() {
            return Err(self.error_at(Some(&t), "prefix label must end with ':'"));
        }
        let prefix = prefix.clone();
        let t = self.expect_next("namespace IRI")?;
        let Token::IriRef(ns) = t.token else {
            return Err(self.error_at(Some(&t), "expected a namespace IRI"));
        };
        self.graph.prefixes.insert(prefix, ns);
        Ok(())
    }

    fn iri(&self, t: &Spanned) -> Result<Option<Iri>, RdfError> {
        match &t.token {
            Token::IriRef(value) => Iri::new(value.as_str())
                .map(Some)
                .map_err(|_| self.error_at(Some(t), "invalid IRI")),
            Token::PrefixedName { prefix, local } => {
                let ns = self
                    .graph
                    .prefixes
                    .get(prefix)
                    .ok_or_else(|| RdfError::UnknownPrefix(prefix.clone()))?;
                Iri::new(alloc::format!("{ns}{local}"))
                    .map(Some)
                    .map_err(|_| self.error_at(Some(t), "invalid IRI"))
            }
            _ => Ok(None),
        }
    }

    fn unsupported(&self, t: &Spanned) -> Option<RdfError> {
        match t.token {
            Token::Punct('[') => Some(self.error_at(Some(t), "anonymous blank nodes are not supported")),
            Token::Punct('(') => Some(self.error_at(Some(t), "collections are not supported")),
            _ => None,
        }
    }

    fn subject(&mut self, t: Spanned) -> Result<Term, RdfError> {
        if let Some(iri) = self.iri(&t)? {
            return Ok(Term::Iri(iri));
        }
        if let Token::BlankNode(label) = &t.token {
            return Ok(Term::BlankNode(BlankNode::new(label.as_str()).expect("lexer checked label")));
        }
        Err(self
            .unsupported(&t)
            .unwrap_or_else(|| self.error_at(Some(&t), alloc::format!("expected a subject, found {}", t.token.describe()))))
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), RdfError> {
        loop {
            let t = self.expect_next("predicate")?;
            let predicate = match &t.token {
                Token::Word(w) if w == "a" => vocab::iri(rdf::TYPE),
                _ => self.iri(&t)?.ok_or_else(|| {
                    self.error_at(Some(&t), alloc::format!("expected a predicate, found {}", t.token.describe()))
                })?,
            };
            loop {
                let object = self.object()?;
                let triple = Triple::new(subject.clone(), predicate.clone(), object).expect("subject is never a literal");
                self.graph.insert(triple);
                if self.lexer.peek()?.is_some_and(|t| t.token == Token::Punct(',')) {
                    self.lexer.next_token()?;
                } else {
                    break;
                }
            }
            if !self.lexer.peek()?.is_some_and(|t| t.token == Token::Punct(';')) {
                return Ok(());
            }
            while self.lexer.peek()?.is_some_and(|t| t.token == Token::Punct(';')) {
                self.lexer.next_token()?;
            }
            // a trailing ';' before '.' is legal
            if self.lexer.peek()?.is_some_and(|t| t.token == Token::Punct('.')) {
                return Ok(());
            }
        }
    }

    fn object(&mut self) -> Result<Term, RdfError> {
        let t = self.expect_next("object")?;
        if let Some(iri) = self.iri(&t)? {
            return Ok(Term::Iri(iri));
        }
        match &t.token {
            Token::BlankNode(label) => Ok(Term::BlankNode(BlankNode::new(label.as_str()).expect("lexer checked label"))),
            Token::Integer(n) => Ok(Literal::typed(n.as_str(), vocab::iri(xsd::INTEGER)).into()),
            Token::Decimal(n) => Ok(Literal::typed(n.as_str(), vocab::iri(xsd::DECIMAL)).into()),
            Token::String(value) => {
                let value = value.clone();
                match self.lexer.peek()?.map(|t| t.token.clone()) {
                    Some(Token::At(lang)) => {
                        let at = self.lexer.next_token()?;
                        Literal::lang(value, lang)
                            .map(Term::Literal)
                            .map_err(|_| self.error_at(at.as_ref(), "invalid language tag"))
                    }
                    Some(Token::DoubleCaret) => {
                        self.lexer.next_token()?;
                        let dt = self.expect_next("datatype IRI")?;
                        let datatype = self
                            .iri(&dt)?
                            .ok_or_else(|| self.error_at(Some(&dt), "expected a datatype IRI"))?;
                        Ok(Literal::typed(value, datatype).into())
                    }
                    _ => Ok(Literal::string(value).into()),
                }
            }
            _ => Err(self
                .unsupported(&t)
                .unwrap_or_else(|| self.error_at(Some(&t), alloc::format!("expected an object, found {}", t.token.describe())))),
        }
    }
}

/// Serializes a graph deterministically: prefixes in label order, then one
/// block per subject with predicates and objects sorted by their rendering.
pub fn serialize_turtle(graph: &Graph) -> String {
    let prefixes = &graph.prefixes;
    let mut out = String::new();
    for (label, ns) in prefixes.iter() {
        let _ = writeln!(out, "@prefix {label}: <{ns}> .");
    }

    let mut blocks: BTreeMap<String, BTreeMap<String, Vec<String>>> = BTreeMap::new();
    for triple in graph {
        let predicate = if triple.predicate().as_str() == rdf::TYPE {
            String::from("a")
        } else {
            render_iri(triple.predicate(), prefixes)
        };
        blocks
            .entry(render_term(triple.subject(), prefixes))
            .or_default()
            .entry(predicate)
            .or_default()
            .push(render_term(triple.object(), prefixes));
    }

    for (subject, predicates) in blocks {
        out.push('\n');
        out.push_str(&subject);
        let count = predicates.len();
        for (i, (predicate, mut objects)) in predicates.into_iter().enumerate() {
            objects.sort();
            objects.dedup();
            if i > 0 {
                out.push_str("    ");
            } else {
                out.push(' ');
            }
            out.push_str(&predicate);
            out.push(' ');
            out.push_str(&objects.join(" , "));
            out.push_str(if i + 1 == count { " .\n" } else { " ;\n" });
        }
    }
    out
}

pub(crate) fn render_iri(iri: &Iri, prefixes: &Prefixes) -> String {
    match prefixes.abbreviate(iri) {
        Some((label, local)) => alloc::format!("{label}:{local}"),
        None => alloc::format!("<{}>", iri.as_str()),
    }
}

pub(crate) fn render_term(term: &Term, prefixes: &Prefixes) -> String {
    match term {
        Term::Iri(iri) => render_iri(iri, prefixes),
        Term::BlankNode(b) => alloc::format!("_:{}", b.label()),
        Term::Literal(l) => {
            let lexical = l.lexical();
            if let Some(dt) = l.datatype() {
                if dt.as_str() == xsd::INTEGER && is_integer_lexical(lexical)
                    || dt.as_str() == xsd::DECIMAL && is_decimal_lexical(lexical)
                {
                    return lexical.into();
                }
            }
            let mut s = String::from("\"");
            let _ = write_escaped(&mut s, lexical);
            s.push('"');
            if let Some(lang) = l.language() {
                s.push('@');
                s.push_str(lang);
            } else if let Some(dt) = l.datatype().filter(|dt| dt.as_str() != xsd::STRING) {
                s.push_str("^^");
                s.push_str(&render_iri(dt, prefixes));
            }
            s
        }
    }
}

fn strip_sign(s: &str) -> &str {
    s.strip_prefix(['+', '-']).unwrap_or(s)
}

fn is_integer_lexical(s: &str) -> bool {
    let digits = strip_sign(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn is_decimal_lexical(s: &str) -> bool {
    match strip_sign(s).split_once('.') {
        Some((int, frac)) => {
            int.bytes().all(|b| b.is_ascii_digit()) && !frac.is_empty() && frac.bytes().all(|b| b.is_ascii_digit())
        }
        None => false,
    }
}
