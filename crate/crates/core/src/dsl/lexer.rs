use super::error::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Integer,
    Identifier,
    /// `+`, `-`, `*`
    Operator,
    /// `<`, `<=`, `>`, `>=`, `==`, `!=`
    Comparator,
    /// `and`, `or`, `not`
    Keyword,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub text: &'a str,
    /// Character offset of the first character.
    pub position: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token<'_>>, ParseError> {
    let mut tokens = Vec::new();
    // (char offset, byte offset, char)
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let byte_at = |i: usize| chars.get(i).map_or(src.len(), |&(b, _)| b);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i].1;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let kind = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            TokenKind::Integer
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            match &src[byte_at(start)..byte_at(i)] {
                "and" | "or" | "not" => TokenKind::Keyword,
                _ => TokenKind::Identifier,
            }
        } else {
            let next = chars.get(i + 1).map(|&(_, c)| c);
            let (kind, len) = match (c, next) {
                ('+' | '-' | '*', _) => (TokenKind::Operator, 1),
                ('<' | '>', Some('=')) | ('=' | '!', Some('=')) => (TokenKind::Comparator, 2),
                ('<' | '>', _) => (TokenKind::Comparator, 1),
                ('(', _) => (TokenKind::LParen, 1),
                (')', _) => (TokenKind::RParen, 1),
                (',', _) => (TokenKind::Comma, 1),
                _ => return Err(ParseError::new(start, ParseErrorKind::InvalidCharacter(c))),
            };
            i += len;
            kind
        };
        tokens.push(Token {
            kind,
            text: &src[byte_at(start)..byte_at(i)],
            position: start,
        });
    }
    Ok(tokens)
}
