use std::fmt;

use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    /// Decimal literal; `integral` is true when it is an unsigned digit string.
    Number {
        value: f64,
        integral: bool,
        text: String,
    },
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Arrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number { text, .. } => write!(f, "number `{text}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Splits `src` into tokens. `#` starts a comment running to the end of the line.
pub fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, message: String| ParseError {
        line,
        col,
        message,
        expected: Vec::new(),
    };
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let mut push = |tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned {
                tok,
                line: start_line,
                col: start_col,
            });
            *i += width;
            *col += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '{' => push(Tok::LBrace, 1, &mut i, &mut col),
            '}' => push(Tok::RBrace, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            ':' => push(Tok::Colon, 1, &mut i, &mut col),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Arrow, 2, &mut i, &mut col),
            c if c == '-' || c.is_ascii_digit() || c == '.' => {
                let mut j = i;
                if chars[j] == '-' {
                    j += 1;
                }
                let digits_start = j;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let int_digits = j - digits_start;
                let mut frac_digits = 0;
                let has_dot = j < chars.len() && chars[j] == '.';
                if has_dot {
                    j += 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                        frac_digits += 1;
                    }
                }
                let text: String = chars[i..j].iter().collect();
                if int_digits + frac_digits == 0 {
                    return Err(err(line, col, format!("malformed number `{text}`")));
                }
                if j < chars.len() && matches!(chars[j], 'e' | 'E') {
                    return Err(err(
                        line,
                        col + (j - i),
                        "scientific notation is not supported; write a plain decimal".into(),
                    ));
                }
                if j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    return Err(err(
                        line,
                        col + (j - i),
                        format!("unexpected `{}` after number", chars[j]),
                    ));
                }
                let value: f64 = text
                    .parse()
                    .map_err(|_| err(line, col, format!("malformed number `{text}`")))?;
                let integral = !has_dot && !text.starts_with('-');
                push(
                    Tok::Number {
                        value,
                        integral,
                        text,
                    },
                    j - i,
                    &mut i,
                    &mut col,
                );
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                push(Tok::Ident(word), j - i, &mut i, &mut col);
            }
            other => return Err(err(line, col, format!("unexpected character `{other}`"))),
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}
