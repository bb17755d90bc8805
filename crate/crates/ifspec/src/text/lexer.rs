//! Tokenizer for the `.ifm` language.

use super::{ParseError, ParseErrorCode, SourceSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Keyword {
    Interface,
    Initial,
    In,
    Out,
    Reply,
    State,
    On,
    Illegal,
    Notify,
    Int,
    StringSort,
}

impl Keyword {
    fn from_word(word: &str) -> Option<Keyword> {
        Some(match word {
            "interface" => Keyword::Interface,
            "initial" => Keyword::Initial,
            "in" => Keyword::In,
            "out" => Keyword::Out,
            "reply" => Keyword::Reply,
            "state" => Keyword::State,
            "on" => Keyword::On,
            "illegal" => Keyword::Illegal,
            "notify" => Keyword::Notify,
            "int" => Keyword::Int,
            "string" => Keyword::StringSort,
            _ => return None,
        })
    }

    pub(crate) fn as_str(self) -> &'static str {
        match self {
            Keyword::Interface => "interface",
            Keyword::Initial => "initial",
            Keyword::In => "in",
            Keyword::Out => "out",
            Keyword::Reply => "reply",
            Keyword::State => "state",
            Keyword::On => "on",
            Keyword::Illegal => "illegal",
            Keyword::Notify => "notify",
            Keyword::Int => "int",
            Keyword::StringSort => "string",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident(String),
    Kw(Keyword),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Colon,
    Comma,
    Arrow,
    Eof,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Ident(name) => format!("identifier `{name}`"),
            TokenKind::Kw(kw) => format!("`{}`", kw.as_str()),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Semi => "`;`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Arrow => "`->`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

pub(crate) fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line: u32 = 1;
    let mut column: u32 = 1;
    let mut chars = input.chars().peekable();

    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                column += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    column += 1;
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = column;
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                let span = SourceSpan::new(line, start, word.len() as u32);
                let kind = match Keyword::from_word(&word) {
                    Some(kw) => TokenKind::Kw(kw),
                    None => TokenKind::Ident(word),
                };
                tokens.push(Token { kind, span });
            }
            '-' => {
                let start = column;
                chars.next();
                column += 1;
                if chars.peek() == Some(&'>') {
                    chars.next();
                    column += 1;
                    tokens.push(Token {
                        kind: TokenKind::Arrow,
                        span: SourceSpan::new(line, start, 2),
                    });
                } else {
                    return Err(ParseError {
                        span: SourceSpan::new(line, start, 1),
                        code: ParseErrorCode::Syntax,
                        message: "expected `->`".into(),
                    });
                }
            }
            '{' | '}' | '(' | ')' | ';' | ':' | ',' => {
                let kind = match c {
                    '{' => TokenKind::LBrace,
                    '}' => TokenKind::RBrace,
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    ';' => TokenKind::Semi,
                    ':' => TokenKind::Colon,
                    _ => TokenKind::Comma,
                };
                tokens.push(Token {
                    kind,
                    span: SourceSpan::new(line, column, 1),
                });
                chars.next();
                column += 1;
            }
            other => {
                return Err(ParseError {
                    span: SourceSpan::new(line, column, other.len_utf8() as u32),
                    code: ParseErrorCode::Syntax,
                    message: format!("unexpected character `{}`", other.escape_default()),
                });
            }
        }
    }

    tokens.push(Token {
        kind: TokenKind::Eof,
        span: SourceSpan::new(line, column, 1),
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizes_symbols_and_words() {
        let toks = tokenize("interface M { initial S; on x -> Y }").unwrap();
        let kinds: Vec<&TokenKind> = toks.iter().map(|t| &t.kind).collect();
        assert!(matches!(kinds[0], TokenKind::Kw(Keyword::Interface)));
        assert!(matches!(kinds[1], TokenKind::Ident(n) if n == "M"));
        assert!(kinds.contains(&&TokenKind::Arrow));
        assert_eq!(*kinds.last().unwrap(), &TokenKind::Eof);
    }

    #[test]
    fn comments_run_to_end_of_line() {
        let toks = tokenize("a # b c d\n e").unwrap();
        assert_eq!(toks.len(), 3); // a, e, eof
        assert_eq!(toks[1].span.line, 2);
        assert_eq!(toks[1].span.column, 2);
    }

    #[test]
    fn spans_are_one_based() {
        let toks = tokenize("ab\n  cd").unwrap();
        assert_eq!((toks[0].span.line, toks[0].span.column), (1, 1));
        assert_eq!((toks[1].span.line, toks[1].span.column), (2, 3));
        assert_eq!(toks[1].span.length, 2);
    }

    #[test]
    fn lone_dash_is_syntax_error() {
        let err = tokenize("a - b").unwrap_err();
        assert_eq!(err.code, ParseErrorCode::Syntax);
        assert_eq!((err.span.line, err.span.column), (1, 3));
    }

    #[test]
    fn stray_bytes_are_errors_not_panics() {
        for input in ["\u{0}", "é", "a @ b", "\"quoted\""] {
            assert!(tokenize(input).is_err());
        }
    }
}
