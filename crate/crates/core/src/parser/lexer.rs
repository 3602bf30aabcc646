use crate::error::{Error, Result};
use crate::numbers::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum TokenKind {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
pub(super) struct Token {
    pub kind: TokenKind,
    pub offset: usize,
    pub end: usize,
}

/// Identifiers are a run of ASCII letters; `x` and `h` may carry a numeric
/// suffix and `h` an indexed family `h[r]i`.
pub(super) fn tokenize(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k];
        let start = k;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                k += 1;
                continue;
            }
            b'+' => TokenKind::Plus,
            b'-' => TokenKind::Minus,
            b'*' => TokenKind::Star,
            b'/' => TokenKind::Slash,
            b'^' => TokenKind::Caret,
            b'(' => TokenKind::LParen,
            b')' => TokenKind::RParen,
            b'0'..=b'9' => {
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                let n = src[start..k].parse().expect("ascii digits");
                out.push(Token {
                    kind: TokenKind::Int(n),
                    offset: start,
                    end: k,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while k < bytes.len() && bytes[k].is_ascii_alphabetic() {
                    k += 1;
                }
                let word = &src[start..k];
                if word == "x" || word == "h" {
                    if word == "h" && bytes.get(k) == Some(&b'[') {
                        let mut j = k + 1;
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        if bytes.get(j) == Some(&b']') {
                            k = j + 1;
                        }
                    }
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                }
                out.push(Token {
                    kind: TokenKind::Ident(src[start..k].to_string()),
                    offset: start,
                    end: k,
                });
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    offset: start,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        };
        k += 1;
        out.push(Token {
            kind,
            offset: start,
            end: k,
        });
    }
    out.push(Token {
        kind: TokenKind::End,
        offset: src.len(),
        end: src.len(),
    });
    Ok(out)
}
