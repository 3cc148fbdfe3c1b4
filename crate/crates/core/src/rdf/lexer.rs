//! Tokenizer shared by the Turtle and SPARQL parsers.
//!
//! Tokens are produced on demand so a parser can stop at the first construct
//! it does not support without lexing the rest of the input.

use alloc::string::{String, ToString};

use super::graph::{is_local_name, is_name_char, is_prefix_label};
use super::term::is_identifier;
use super::RdfError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token {
    IriRef(String),
    PrefixedName { prefix: String, local: String },
    BlankNode(String),
    Variable(String),
    String(String),
    /// `@word`: a language tag, or `@prefix` / `@base`.
    At(String),
    DoubleCaret,
    Integer(String),
    Decimal(String),
    /// Bare word: keywords and `a`.
    Word(String),
    Punct(char),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Spanned {
    pub token: Token,
    pub line: usize,
    pub column: usize,
}

pub(crate) struct Lexer<'a> {
    input: &'a str,
    pos: usize,
    line: usize,
    column: usize,
    peeked: Option<Option<Spanned>>,
}

impl<'a> Lexer<'a> {
    pub fn new(input: &'a str) -> Self {
        Lexer {
            input,
            pos: 0,
            line: 1,
            column: 1,
            peeked: None,
        }
    }

    /// Current position, for errors at end of input.
    pub fn position(&self) -> (usize, usize) {
        (self.line, self.column)
    }

    pub fn peek(&mut self) -> Result<Option<&Spanned>, RdfError> {
        if self.peeked.is_none() {
            let next = self.lex()?;
            self.peeked = Some(next);
        }
        Ok(self.peeked.as_ref().and_then(Option::as_ref))
    }

    pub fn next_token(&mut self) -> Result<Option<Spanned>, RdfError> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }

    fn current(&self) -> Option<char> {
        self.input[self.pos..].chars().next()
    }

    fn nth(&self, n: usize) -> Option<char> {
        self.input[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.current()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, column: usize, message: impl Into<String>) -> RdfError {
        RdfError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.current() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.current().is_some_and(&pred) {
            self.bump();
        }
        self.input[start..self.pos].to_string()
    }

    fn lex(&mut self) -> Result<Option<Spanned>, RdfError> {
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        let Some(c) = self.current() else {
            return Ok(None);
        };
        let token = match c {
            '<' => self.lex_iri(line, column)?,
            '"' | '\'' => self.lex_string(c, line, column)?,
            '@' => {
                self.bump();
                let word = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
                if word.is_empty() {
                    return Err(self.error(line, column, "expected a word after '@'"));
                }
                Token::At(word)
            }
            '^' => {
                self.bump();
                if self.bump() != Some('^') {
                    return Err(self.error(line, column, "expected '^^'"));
                }
                Token::DoubleCaret
            }
            '?' | '$' => {
                self.bump();
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                if !is_identifier(&name) {
                    return Err(self.error(line, column, "invalid variable name"));
                }
                Token::Variable(name)
            }
            '_' if self.nth(1) == Some(':') => {
                self.bump();
                self.bump();
                let label = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                if !is_identifier(&label) {
                    return Err(self.error(line, column, "invalid blank node label"));
                }
                Token::BlankNode(label)
            }
            '0'..='9' | '+' | '-' | '.'
                if c.is_ascii_digit()
                    || (c != '.' && self.nth(1).is_some_and(|d| d.is_ascii_digit() || d == '.'))
                    || (c == '.' && self.nth(1).is_some_and(|d| d.is_ascii_digit())) =>
            {
                self.lex_number(line, column)?
            }
            '.' | ';' | ',' | '{' | '}' | '(' | ')' | '[' | ']' | '*' | '=' | '!' | '&' | '|' | '/' => {
                self.bump();
                Token::Punct(c)
            }
            c if c.is_ascii_alphabetic() || c == ':' => self.lex_name(line, column)?,
            other => {
                return Err(self.error(line, column, alloc::format!("unexpected character {other:?}")));
            }
        };
        Ok(Some(Spanned { token, line, column }))
    }

    fn lex_iri(&mut self, line: usize, column: usize) -> Result<Token, RdfError> {
        self.bump();
        let start = self.pos;
        loop {
            match self.current() {
                Some('>') => break,
                Some(c) if c.is_whitespace() || c == '<' => {
                    return Err(self.error(line, column, "illegal character in IRI"));
                }
                Some(_) => {
                    self.bump();
                }
                None => return Err(self.error(line, column, "unterminated IRI")),
            }
        }
        let value = self.input[start..self.pos].to_string();
        self.bump();
        if value.is_empty() {
            return Err(self.error(line, column, "empty IRI"));
        }
        Ok(Token::IriRef(value))
    }

    fn lex_string(&mut self, quote: char, line: usize, column: usize) -> Result<Token, RdfError> {
        if self.nth(1) == Some(quote) && self.nth(2) == Some(quote) {
            return Err(self.error(line, column, "multi-line strings are not supported"));
        }
        self.bump();
        let mut value = String::new();
        loop {
            let Some(c) = self.bump() else {
                return Err(self.error(line, column, "unterminated string"));
            };
            match c {
                c if c == quote => break,
                '\n' | '\r' => return Err(self.error(line, column, "line break in string")),
                '\\' => {
                    let (el, ec) = (self.line, self.column);
                    let escaped = match self.bump() {
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.lex_hex(4, el, ec)?,
                        Some('U') => self.lex_hex(8, el, ec)?,
                        _ => return Err(self.error(el, ec, "invalid escape sequence")),
                    };
                    value.push(escaped);
                }
                c => value.push(c),
            }
        }
        Ok(Token::String(value))
    }

    fn lex_hex(&mut self, digits: usize, line: usize, column: usize) -> Result<char, RdfError> {
        let mut code = 0u32;
        for _ in 0..digits {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.error(line, column, "invalid unicode escape"))?;
            code = code * 16 + d;
        }
        char::from_u32(code).ok_or_else(|| self.error(line, column, "invalid unicode scalar"))
    }

    fn lex_number(&mut self, line: usize, column: usize) -> Result<Token, RdfError> {
        let start = self.pos;
        if matches!(self.current(), Some('+' | '-')) {
            self.bump();
        }
        self.take_while(|c| c.is_ascii_digit());
        let mut decimal = false;
        if self.current() == Some('.') && self.nth(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            self.take_while(|c| c.is_ascii_digit());
            decimal = true;
        }
        if matches!(self.current(), Some('e' | 'E')) {
            return Err(self.error(line, column, "double literals are not supported"));
        }
        let text = self.input[start..self.pos].to_string();
        if !text.bytes().any(|b| b.is_ascii_digit()) {
            return Err(self.error(line, column, "malformed number"));
        }
        Ok(if decimal { Token::Decimal(text) } else { Token::Integer(text) })
    }

    fn lex_name(&mut self, line: usize, column: usize) -> Result<Token, RdfError> {
        let prefix = self.take_while(is_name_char);
        if self.current() != Some(':') {
            return Ok(Token::Word(prefix));
        }
        self.bump();
        let local = self.take_while(is_name_char);
        if !is_prefix_label(&prefix) || !is_local_name(&local) {
            return Err(self.error(line, column, "malformed prefixed name"));
        }
        Ok(Token::PrefixedName { prefix, local })
    }
}

impl Token {
    pub fn describe(&self) -> String {
        match self {
            Token::IriRef(i) => alloc::format!("<{i}>"),
            Token::PrefixedName { prefix, local } => alloc::format!("{prefix}:{local}"),
            Token::BlankNode(b) => alloc::format!("_:{b}"),
            Token::Variable(v) => alloc::format!("?{v}"),
            Token::String(_) => "string literal".into(),
            Token::At(w) => alloc::format!("@{w}"),
            Token::DoubleCaret => "'^^'".into(),
            Token::Integer(n) | Token::Decimal(n) => n.clone(),
            Token::Word(w) => w.clone(),
            Token::Punct(c) => alloc::format!("'{c}'"),
        }
    }
}
