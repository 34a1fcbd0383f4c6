//! Per-line tokenizer for the `.sst` notation.

use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum TokenKind {
    /// `"…"` with escapes resolved.
    Str(String),
    /// `( … )` label, whitespace tidied.
    Label(String),
    /// Run of `:` characters; anything but one colon is a syntax error.
    Colons(usize),
    Equals,
    Word(String),
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    /// 1-based character column of the first character.
    pub column: usize,
    /// Raw source text of the token.
    pub raw: String,
}

fn is_word_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '"' | '(' | ')' | ':' | '=' | '#')
}

/// Splits one line (without its terminator) into tokens. A `#` outside a
/// string or label starts a comment that runs to the end of the line; its
/// text is returned separately.
pub(crate) fn tokenize(line: &str, line_no: usize) -> Result<(Vec<Token>, Option<String>), ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let raw = |from: usize, to: usize| chars[from..to].iter().collect::<String>();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '#' => {
                let text: String = chars[i + 1..].iter().collect();
                let text = text.strip_prefix(' ').unwrap_or(&text).trim_end().to_string();
                return Ok((tokens, Some(text)));
            }
            '"' => {
                let mut value = String::new();
                let mut j = i + 1;
                let mut closed = false;
                while j < chars.len() {
                    match chars[j] {
                        '"' => {
                            closed = true;
                            break;
                        }
                        '\\' => {
                            match chars.get(j + 1) {
                                Some(&e @ ('"' | '\\')) => value.push(e),
                                Some(&other) => {
                                    return Err(ParseError::new(
                                        line_no,
                                        j + 1,
                                        format!("unknown escape sequence `\\{other}`"),
                                        raw(j, j + 2),
                                    ))
                                }
                                None => break,
                            }
                            j += 2;
                        }
                        other => {
                            value.push(other);
                            j += 1;
                        }
                    }
                }
                if !closed {
                    return Err(ParseError::new(line_no, column, "unterminated string", raw(i, chars.len())));
                }
                tokens.push(Token { kind: TokenKind::Str(value), column, raw: raw(i, j + 1) });
                i = j + 1;
            }
            '(' => {
                let Some(close) = chars[i + 1..].iter().position(|&c| c == ')' || c == '(') else {
                    return Err(ParseError::new(line_no, column, "unterminated link label", raw(i, chars.len())));
                };
                let end = i + 1 + close;
                if chars[end] == '(' {
                    return Err(ParseError::new(line_no, end + 1, "nested `(` inside a link label", "("));
                }
                let text = raw(i + 1, end);
                let label = crate::alias::tidy_label(&text);
                if label.is_empty() {
                    return Err(ParseError::new(line_no, column, "empty link label", raw(i, end + 1)));
                }
                tokens.push(Token { kind: TokenKind::Label(label), column, raw: raw(i, end + 1) });
                i = end + 1;
            }
            ')' => {
                return Err(ParseError::new(line_no, column, "unmatched `)`", ")"));
            }
            ':' => {
                let mut j = i;
                while j < chars.len() && chars[j] == ':' {
                    j += 1;
                }
                tokens.push(Token { kind: TokenKind::Colons(j - i), column, raw: raw(i, j) });
                i = j;
            }
            '=' => {
                tokens.push(Token { kind: TokenKind::Equals, column, raw: "=".into() });
                i += 1;
            }
            _ => {
                let mut j = i;
                while j < chars.len() && is_word_char(chars[j]) {
                    j += 1;
                }
                let word = raw(i, j);
                tokens.push(Token { kind: TokenKind::Word(word.clone()), column, raw: word });
                i = j;
            }
        }
    }
    Ok((tokens, None))
}
