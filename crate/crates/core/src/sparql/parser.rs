use alloc::string::String;
use alloc::vec::Vec;

use super::{Projection, Query, SparqlError};
use crate::rdf::lexer::{Lexer, Spanned, Token};
use crate::rdf::vocab::{self, rdf, xsd};
use crate::rdf::{Iri, Literal, Prefixes, RdfError, Term};
use crate::store::{PatternTerm, TriplePattern, Variable};

/// Keywords outside the subset, reported by name when encountered.
const UNSUPPORTED_KEYWORDS: &[&str] = &[
    "OPTIONAL", "FILTER", "UNION", "MINUS", "BIND", "VALUES", "SERVICE", "GRAPH", "DISTINCT", "REDUCED",
    "OFFSET", "HAVING", "FROM", "NAMED", "BASE", "CONSTRUCT", "ASK", "DESCRIBE", "INSERT", "DELETE", "LOAD",
    "CLEAR", "DROP", "CREATE", "ADD", "MOVE", "COPY", "WITH", "EXISTS", "NOT",
];

fn unsupported_keyword(word: &str) -> Option<String> {
    let upper = word.to_ascii_uppercase();
    match upper.as_str() {
        "ORDER" => Some("ORDER BY".into()),
        "GROUP" => Some("GROUP BY".into()),
        _ => UNSUPPORTED_KEYWORDS.contains(&upper.as_str()).then_some(upper),
    }
}

impl From<RdfError> for SparqlError {
    fn from(e: RdfError) -> Self {
        match e {
            RdfError::Syntax { line, column, message } => SparqlError::Syntax { line, column, message },
            RdfError::UnknownPrefix(p) => SparqlError::UnknownPrefix(p),
            RdfError::InvalidPrefixedName(n) => SparqlError::Syntax {
                line: 0,
                column: 0,
                message: alloc::format!("invalid prefixed name {n}"),
            },
        }
    }
}

pub fn parse_query(text: &str) -> Result<Query, SparqlError> {
    let mut p = QueryParser {
        lexer: Lexer::new(text),
        prefixes: Prefixes::new(),
    };
    p.query()
}

struct QueryParser<'a> {
    lexer: Lexer<'a>,
    prefixes: Prefixes,
}

fn is_keyword(t: &Token, kw: &str) -> bool {
    matches!(t, Token::Word(w) if w.eq_ignore_ascii_case(kw))
}

impl QueryParser<'_> {
    fn syntax(&self, at: Option<&Spanned>, message: impl Into<String>) -> SparqlError {
        let (line, column) = at.map_or_else(|| self.lexer.position(), |t| (t.line, t.column));
        SparqlError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    /// Reports a keyword outside the subset by name, or a syntax error.
    fn reject(&self, t: &Spanned, expected: &str) -> SparqlError {
        if let Token::Word(w) = &t.token {
            if let Some(feature) = unsupported_keyword(w) {
                return SparqlError::UnsupportedFeature(feature);
            }
        }
        self.syntax(Some(t), alloc::format!("expected {expected}, found {}", t.token.describe()))
    }

    fn next(&mut self, expected: &str) -> Result<Spanned, SparqlError> {
        self.lexer
            .next_token()?
            .ok_or_else(|| self.syntax(None, alloc::format!("unexpected end of query, expected {expected}")))
    }

    fn peek_token(&mut self) -> Result<Option<Token>, SparqlError> {
        Ok(self.lexer.peek()?.map(|t| t.token.clone()))
    }

    fn query(&mut self) -> Result<Query, SparqlError> {
        // prologue
        let select = loop {
            let t = self.next("SELECT")?;
            if is_keyword(&t.token, "PREFIX") {
                self.prefix_decl()?;
            } else if is_keyword(&t.token, "SELECT") {
                break t;
            } else {
                return Err(self.reject(&t, "PREFIX or SELECT"));
            }
        };

        let projection = self.projection()?;

        let mut t = self.next("WHERE or '{'")?;
        if is_keyword(&t.token, "WHERE") {
            t = self.next("'{'")?;
        }
        if t.token != Token::Punct('{') {
            return Err(self.reject(&t, "'{'"));
        }
        let patterns = self.group()?;
        if patterns.is_empty() {
            return Err(self.syntax(Some(&select), "empty group pattern"));
        }

        let mut limit = None;
        while let Some(t) = self.lexer.next_token()? {
            if is_keyword(&t.token, "LIMIT") && limit.is_none() {
                let n = self.next("integer")?;
                limit = match &n.token {
                    Token::Integer(v) if !v.starts_with(['+', '-']) => match v.parse::<usize>() {
                        Ok(0) | Err(_) => None,
                        Ok(v) => Some(v),
                    },
                    _ => None,
                };
                if limit.is_none() {
                    return Err(self.syntax(Some(&n), "LIMIT expects a positive integer"));
                }
            } else {
                return Err(self.reject(&t, "LIMIT or end of query"));
            }
        }

        if let Projection::Vars(vars) = &projection {
            for v in vars {
                let used = patterns.iter().any(|p| p.positions().iter().any(|t| t.var() == Some(v)));
                if !used {
                    return Err(self.syntax(
                        Some(&select),
                        alloc::format!("projected variable {v} does not occur in the pattern"),
                    ));
                }
            }
        }

        Ok(Query {
            prefixes: core::mem::take(&mut self.prefixes),
            projection,
            patterns,
            limit,
        })
    }

    fn prefix_decl(&mut self) -> Result<(), SparqlError> {
        let t = self.next("prefix label")?;
        let Token::PrefixedName { prefix, local } = &t.token else {
            return Err(self.syntax(Some(&t), "expected a prefix label such as 'ex:'"));
        };
        if !local.is_empty() {
            return Err(self.syntax(Some(&t), "prefix label must end with ':'"));
        }
        let prefix = prefix.clone();
        let t = self.next("namespace IRI")?;
        let Token::IriRef(ns) = t.token else {
            return Err(self.syntax(Some(&t), "expected a namespace IRI"));
        };
        self.prefixes.insert(prefix, ns);
        Ok(())
    }

    fn projection(&mut self) -> Result<Projection, SparqlError> {
        let mut vars = Vec::new();
        loop {
            match self.peek_token()? {
                Some(Token::Variable(name)) => {
                    self.lexer.next_token()?;
                    vars.push(Variable::new(name).expect("lexer checked variable name"));
                }
                Some(Token::Punct('*')) if vars.is_empty() => {
                    self.lexer.next_token()?;
                    return Ok(Projection::All);
                }
                Some(Token::Punct('(')) => return Err(SparqlError::UnsupportedFeature("expression".into())),
                Some(Token::Word(w)) if unsupported_keyword(&w).is_some() => {
                    return Err(SparqlError::UnsupportedFeature(unsupported_keyword(&w).unwrap_or_default()));
                }
                _ => break,
            }
        }
        if vars.is_empty() {
            let t = self.next("variable or '*'")?;
            return Err(self.reject(&t, "variable or '*'"));
        }
        Ok(Projection::Vars(vars))
    }

    /// Triple patterns up to the closing '}' (already consumed '{').
    fn group(&mut self) -> Result<Vec<TriplePattern>, SparqlError> {
        let mut patterns = Vec::new();
        loop {
            let t = self.next("triple pattern or '}'")?;
            match &t.token {
                Token::Punct('}') => return Ok(patterns),
                Token::Punct('{') => {
                    self.group()?;
                    if let Some(Token::Word(w)) = self.peek_token()? {
                        if let Some(feature) = unsupported_keyword(&w) {
                            return Err(SparqlError::UnsupportedFeature(feature));
                        }
                    }
                    return Err(SparqlError::UnsupportedFeature("nested group".into()));
                }
                _ => {
                    let subject = self.pattern_term(&t, Position::Subject)?;
                    let t = self.next("predicate")?;
                    let predicate = self.pattern_term(&t, Position::Predicate)?;
                    let t = self.next("object")?;
                    let object = self.pattern_term(&t, Position::Object)?;
                    patterns.push(TriplePattern {
                        subject,
                        predicate,
                        object,
                    });
                    match self.peek_token()? {
                        Some(Token::Punct('.')) => {
                            self.lexer.next_token()?;
                        }
                        Some(Token::Punct('}')) => {}
                        Some(Token::Punct(c @ (';' | ','))) => {
                            return Err(SparqlError::UnsupportedFeature(alloc::format!("'{c}' abbreviation")));
                        }
                        Some(Token::Punct('/' | '|' | '*')) => {
                            return Err(SparqlError::UnsupportedFeature("property path".into()));
                        }
                        _ => {
                            let t = self.next("'.' or '}'")?;
                            return Err(self.reject(&t, "'.' or '}'"));
                        }
                    }
                }
            }
        }
    }

    fn pattern_term(&mut self, t: &Spanned, position: Position) -> Result<PatternTerm, SparqlError> {
        let iri = |p: &Self, value: String| Iri::new(value).map_err(|_| p.syntax(Some(t), "invalid IRI"));
        let term = match &t.token {
            Token::Variable(name) => return Ok(PatternTerm::Var(Variable::new(name.as_str()).expect("lexer checked"))),
            Token::IriRef(value) => Term::Iri(iri(self, value.clone())?),
            Token::PrefixedName { prefix, local } => {
                let ns = self
                    .prefixes
                    .get(prefix)
                    .ok_or_else(|| SparqlError::UnknownPrefix(prefix.clone()))?;
                Term::Iri(iri(self, alloc::format!("{ns}{local}"))?)
            }
            Token::Word(w) if w == "a" && position == Position::Predicate => Term::Iri(vocab::iri(rdf::TYPE)),
            Token::BlankNode(_) => return Err(SparqlError::UnsupportedFeature("blank node".into())),
            Token::Punct('[' | '(') => return Err(SparqlError::UnsupportedFeature("blank node".into())),
            Token::Punct('/' | '|' | '*' | '!') if position != Position::Subject => {
                return Err(SparqlError::UnsupportedFeature("property path".into()));
            }
            Token::Integer(n) if position == Position::Object => Literal::typed(n.as_str(), vocab::iri(xsd::INTEGER)).into(),
            Token::Decimal(n) if position == Position::Object => Literal::typed(n.as_str(), vocab::iri(xsd::DECIMAL)).into(),
            Token::String(value) if position == Position::Object => self.literal(value.clone())?,
            _ => return Err(self.reject(t, position.describe())),
        };
        Ok(PatternTerm::Bound(term))
    }

    fn literal(&mut self, value: String) -> Result<Term, SparqlError> {
        match self.peek_token()? {
            Some(Token::At(lang)) => {
                let at = self.lexer.next_token()?;
                Literal::lang(value, lang)
                    .map(Term::Literal)
                    .map_err(|_| self.syntax(at.as_ref(), "invalid language tag"))
            }
            Some(Token::DoubleCaret) => {
                self.lexer.next_token()?;
                let dt = self.next("datatype IRI")?;
                match self.pattern_term(&dt, Position::Predicate)? {
                    PatternTerm::Bound(Term::Iri(iri)) => Ok(Literal::typed(value, iri).into()),
                    _ => Err(self.syntax(Some(&dt), "expected a datatype IRI")),
                }
            }
            _ => Ok(Literal::string(value).into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Position {
    Subject,
    Predicate,
    Object,
}

impl Position {
    fn describe(self) -> &'static str {
        match self {
            Position::Subject => "a subject",
            Position::Predicate => "a predicate",
            Position::Object => "an object",
        }
    }
}
