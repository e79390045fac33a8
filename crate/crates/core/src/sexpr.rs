//! S-expression reader shared by the term and path grammars.
//!
//! Two bracket styles: `(...)` for nodes and `[...]` for index lists
//! (tree locations such as `[0 1 0]`). Atoms are bare symbols or numbers.

use thiserror::Error;

/// Syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { line, col, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexpr {
    /// Bare symbol or number.
    Atom { text: String, line: usize, col: usize },
    /// Parenthesized node.
    List { items: Vec<Sexpr>, line: usize, col: usize },
    /// Bracketed index list.
    Indices { items: Vec<Sexpr>, line: usize, col: usize },
}

impl Sexpr {
    pub fn pos(&self) -> (usize, usize) {
        match self {
            Sexpr::Atom { line, col, .. }
            | Sexpr::List { line, col, .. }
            | Sexpr::Indices { line, col, .. } => (*line, *col),
        }
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.pos();
        ParseError::new(line, col, message)
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexpr::Atom { text, .. } => Some(text),
            _ => None,
        }
    }
}

struct Token {
    kind: TokenKind,
    line: usize,
    col: usize,
}

enum TokenKind {
    Open,
    Close,
    OpenBracket,
    CloseBracket,
    Atom(String),
}

fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '(' => {
                tokens.push(Token { kind: TokenKind::Open, line, col });
                chars.next();
                col += 1;
            }
            ')' => {
                tokens.push(Token { kind: TokenKind::Close, line, col });
                chars.next();
                col += 1;
            }
            '[' => {
                tokens.push(Token { kind: TokenKind::OpenBracket, line, col });
                chars.next();
                col += 1;
            }
            ']' => {
                tokens.push(Token { kind: TokenKind::CloseBracket, line, col });
                chars.next();
                col += 1;
            }
            ';' => {
                // comment to end of line
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            _ => {
                let start_col = col;
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || "()[];".contains(c) {
                        break;
                    }
                    text.push(c);
                    chars.next();
                    col += 1;
                }
                tokens.push(Token { kind: TokenKind::Atom(text), line, col: start_col });
            }
        }
    }
    Ok(tokens)
}

/// Parse a single s-expression; trailing input is an error.
pub fn parse(input: &str) -> Result<Sexpr, ParseError> {
    let tokens = tokenize(input)?;
    let mut pos = 0usize;
    let expr = parse_at(&tokens, &mut pos)?;
    if pos != tokens.len() {
        let t = &tokens[pos];
        return Err(ParseError::new(t.line, t.col, "unexpected trailing input"));
    }
    Ok(expr)
}

fn parse_at(tokens: &[Token], pos: &mut usize) -> Result<Sexpr, ParseError> {
    let Some(tok) = tokens.get(*pos) else {
        return Err(ParseError::new(1, 1, "unexpected end of input"));
    };
    match &tok.kind {
        TokenKind::Atom(text) => {
            *pos += 1;
            Ok(Sexpr::Atom { text: text.clone(), line: tok.line, col: tok.col })
        }
        TokenKind::Open => {
            let (line, col) = (tok.line, tok.col);
            *pos += 1;
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(ParseError::new(line, col, "unclosed '('")),
                    Some(t) if matches!(t.kind, TokenKind::Close) => {
                        *pos += 1;
                        return Ok(Sexpr::List { items, line, col });
                    }
                    Some(_) => items.push(parse_at(tokens, pos)?),
                }
            }
        }
        TokenKind::OpenBracket => {
            let (line, col) = (tok.line, tok.col);
            *pos += 1;
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(ParseError::new(line, col, "unclosed '['")),
                    Some(t) if matches!(t.kind, TokenKind::CloseBracket) => {
                        *pos += 1;
                        return Ok(Sexpr::Indices { items, line, col });
                    }
                    Some(_) => items.push(parse_at(tokens, pos)?),
                }
            }
        }
        TokenKind::Close => Err(ParseError::new(tok.line, tok.col, "unexpected ')'")),
        TokenKind::CloseBracket => Err(ParseError::new(tok.line, tok.col, "unexpected ']'")),
    }
}
