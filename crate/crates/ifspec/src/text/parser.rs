//! Recursive-descent parser from `.ifm` source to [`InterfaceModel`].

use std::collections::HashSet;

use super::lexer::{tokenize, Keyword, Token, TokenKind};
use super::{ParseError, ParseErrorCode, SourceSpan};
use crate::model::{
    EventDecl, EventKind, InterfaceModel, Param, Response, RuleCase, RuleOutcome, Sort,
};

/// Parse `.ifm` source into a structurally well-formed model.
///
/// Declaration order is preserved. Name resolution, completeness, and
/// determinism of the rule table are left to `InterfaceModel::validate`;
/// the parser only rejects what the grammar cannot express, plus repeated
/// declarations of the same event or state. All failures are reported as
/// [`ParseError`] values with accurate spans; malformed input never panics.
pub fn parse(input: &str) -> Result<InterfaceModel, Vec<ParseError>> {
    let tokens = tokenize(input).map_err(|e| vec![e])?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        errors: Vec::new(),
    };
    match parser.model() {
        Ok(model) if parser.errors.is_empty() => Ok(model),
        Ok(_) => Err(parser.errors),
        Err(fatal) => {
            parser.errors.push(fatal);
            Err(parser.errors)
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    /// Non-fatal diagnostics (duplicate declarations, unknown sorts); the
    /// parse continues so several can be reported at once.
    errors: Vec<ParseError>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn at_kw(&self, kw: Keyword) -> bool {
        self.peek().kind == TokenKind::Kw(kw)
    }

    fn syntax(&self, span: SourceSpan, message: impl Into<String>) -> ParseError {
        ParseError {
            span,
            code: ParseErrorCode::Syntax,
            message: message.into(),
        }
    }

    fn expect_kw(&mut self, kw: Keyword) -> Result<Token, ParseError> {
        if self.at_kw(kw) {
            Ok(self.advance())
        } else {
            let tok = self.peek();
            Err(self.syntax(
                tok.span,
                format!("expected `{}`, found {}", kw.as_str(), tok.kind.describe()),
            ))
        }
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<Token, ParseError> {
        if self.peek().kind == kind {
            Ok(self.advance())
        } else {
            let tok = self.peek();
            Err(self.syntax(
                tok.span,
                format!("expected {what}, found {}", tok.kind.describe()),
            ))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, SourceSpan), ParseError> {
        match &self.peek().kind {
            TokenKind::Ident(_) => {
                let tok = self.advance();
                match tok.kind {
                    TokenKind::Ident(name) => Ok((name, tok.span)),
                    _ => unreachable!(),
                }
            }
            other => {
                let span = self.peek().span;
                Err(self.syntax(span, format!("expected {what}, found {}", other.describe())))
            }
        }
    }

    fn model(&mut self) -> Result<InterfaceModel, ParseError> {
        self.expect_kw(Keyword::Interface)?;
        let (name, _) = self.ident("interface name")?;
        self.expect(TokenKind::LBrace, "`{`")?;
        self.expect_kw(Keyword::Initial)?;
        let (initial, _) = self.ident("initial state name")?;
        self.expect(TokenKind::Semi, "`;`")?;

        let mut alphabet: Vec<EventDecl> = Vec::new();
        let mut event_names: HashSet<String> = HashSet::new();
        loop {
            let kind = if self.at_kw(Keyword::In) {
                EventKind::Stimulus
            } else if self.at_kw(Keyword::Out) {
                EventKind::Notification
            } else if self.at_kw(Keyword::Reply) {
                EventKind::Reply
            } else {
                break;
            };
            self.advance();
            let (name, span) = self.ident("event name")?;
            let params = if kind == EventKind::Stimulus && self.peek().kind == TokenKind::LParen {
                self.params()?
            } else {
                Vec::new()
            };
            self.expect(TokenKind::Semi, "`;`")?;
            if !event_names.insert(name.clone()) {
                self.errors.push(ParseError {
                    span,
                    code: ParseErrorCode::DuplicateDeclaration,
                    message: format!("event `{name}` is already declared"),
                });
            }
            alphabet.push(EventDecl { name, kind, params });
        }
        if alphabet.is_empty() {
            let span = self.peek().span;
            return Err(self.syntax(span, "expected at least one `in`/`out`/`reply` declaration"));
        }

        let mut states: Vec<String> = Vec::new();
        let mut state_names: HashSet<String> = HashSet::new();
        let mut rules: Vec<RuleCase> = Vec::new();
        while self.at_kw(Keyword::State) {
            self.advance();
            let (state, span) = self.ident("state name")?;
            if !state_names.insert(state.clone()) {
                self.errors.push(ParseError {
                    span,
                    code: ParseErrorCode::DuplicateDeclaration,
                    message: format!("state `{state}` is already declared"),
                });
            } else {
                states.push(state.clone());
            }
            self.expect(TokenKind::LBrace, "`{`")?;
            let mut any_rule = false;
            while self.at_kw(Keyword::On) {
                rules.push(self.rule(&state)?);
                any_rule = true;
            }
            if !any_rule {
                let span = self.peek().span;
                return Err(self.syntax(span, "expected at least one `on` rule"));
            }
            self.expect(TokenKind::RBrace, "`}`")?;
        }
        if states.is_empty() {
            let span = self.peek().span;
            return Err(self.syntax(span, "expected at least one `state` block"));
        }

        self.expect(TokenKind::RBrace, "`}`")?;
        self.expect(TokenKind::Eof, "end of input")?;

        Ok(InterfaceModel {
            name,
            alphabet,
            states,
            initial,
            rules,
        })
    }

    fn params(&mut self) -> Result<Vec<Param>, ParseError> {
        self.expect(TokenKind::LParen, "`(`")?;
        let mut params = Vec::new();
        loop {
            let (name, _) = self.ident("parameter name")?;
            self.expect(TokenKind::Colon, "`:`")?;
            let sort = match &self.peek().kind {
                TokenKind::Kw(Keyword::Int) => {
                    self.advance();
                    Sort::Int
                }
                TokenKind::Kw(Keyword::StringSort) => {
                    self.advance();
                    Sort::Str
                }
                TokenKind::Ident(other) => {
                    let other = other.clone();
                    let span = self.peek().span;
                    self.errors.push(ParseError {
                        span,
                        code: ParseErrorCode::UnknownSort,
                        message: format!("unknown sort `{other}`; expected `int` or `string`"),
                    });
                    self.advance();
                    Sort::Int
                }
                other => {
                    let span = self.peek().span;
                    return Err(self.syntax(
                        span,
                        format!("expected a sort, found {}", other.describe()),
                    ));
                }
            };
            params.push(Param { name, sort });
            if self.peek().kind == TokenKind::Comma {
                self.advance();
            } else {
                break;
            }
        }
        self.expect(TokenKind::RParen, "`)`")?;
        Ok(params)
    }

    fn rule(&mut self, state: &str) -> Result<RuleCase, ParseError> {
        self.expect_kw(Keyword::On)?;
        let (stimulus, _) = self.ident("stimulus name")?;
        let outcome = if self.at_kw(Keyword::Illegal) {
            self.advance();
            RuleOutcome::Illegal
        } else {
            self.expect(TokenKind::Arrow, "`illegal` or `->`")?;
            let (target, _) = self.ident("target state name")?;
            let mut notifications = Vec::new();
            if self.at_kw(Keyword::Notify) {
                self.advance();
                loop {
                    let (n, _) = self.ident("notification name")?;
                    notifications.push(n);
                    if self.peek().kind == TokenKind::Comma {
                        self.advance();
                    } else {
                        break;
                    }
                }
            }
            self.expect_kw(Keyword::Reply)?;
            let (reply, _) = self.ident("reply name")?;
            RuleOutcome::Legal(Response {
                notifications,
                reply,
                target,
            })
        };
        self.expect(TokenKind::Semi, "`;`")?;
        Ok(RuleCase {
            state: state.to_string(),
            stimulus,
            outcome,
        })
    }
}
