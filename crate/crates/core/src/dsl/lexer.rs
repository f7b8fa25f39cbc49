//! Tokens with positions. Comments run from `#` to the end of the line.

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    Str(String),
    /// `--name`
    Flag(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eq,
    Colon,
    Le,
    Arrow,
    DoubleArrow,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Str(s) => format!("string \"{s}\""),
            Tok::Flag(s) => format!("flag `--{s}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.text()),
        }
    }

    pub fn text(&self) -> &'static str {
        match self {
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Eq => "=",
            Tok::Colon => ":",
            Tok::Le => "<=",
            Tok::Arrow => "->",
            Tok::DoubleArrow => "<->",
            _ => "",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Tok,
    pub pos: Pos,
}

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let peek = chars.get(i + 1).copied();
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, c);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                let c = chars[i];
                advance(&mut i, &mut line, &mut col, c);
            }
            continue;
        }
        let mut take = |n: usize, tok: Tok, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
            out.push(Spanned { tok, pos });
        };
        match c {
            '{' => take(1, Tok::LBrace, &mut i, &mut col),
            '}' => take(1, Tok::RBrace, &mut i, &mut col),
            '(' => take(1, Tok::LParen, &mut i, &mut col),
            ')' => take(1, Tok::RParen, &mut i, &mut col),
            '[' => take(1, Tok::LBracket, &mut i, &mut col),
            ']' => take(1, Tok::RBracket, &mut i, &mut col),
            ',' => take(1, Tok::Comma, &mut i, &mut col),
            ';' => take(1, Tok::Semi, &mut i, &mut col),
            '=' => take(1, Tok::Eq, &mut i, &mut col),
            ':' => take(1, Tok::Colon, &mut i, &mut col),
            '<' if peek == Some('=') => take(2, Tok::Le, &mut i, &mut col),
            '<' if peek == Some('-') && chars.get(i + 2) == Some(&'>') => {
                take(3, Tok::DoubleArrow, &mut i, &mut col)
            }
            '-' if peek == Some('>') => take(2, Tok::Arrow, &mut i, &mut col),
            '-' if peek == Some('-') && chars.get(i + 2).is_some_and(|c| ident_start(*c)) => {
                let start = i + 2;
                let mut j = start;
                while j < chars.len() && (ident_continue(chars[j]) || chars[j] == '-') {
                    j += 1;
                }
                let name: String = chars[start..j].iter().collect();
                take(j - i, Tok::Flag(name), &mut i, &mut col);
            }
            '"' => {
                let mut j = i + 1;
                while j < chars.len() && chars[j] != '"' && chars[j] != '\n' {
                    j += 1;
                }
                if j >= chars.len() || chars[j] != '"' {
                    return Err(ParseError::new("E002", pos, "unterminated string literal"));
                }
                let s: String = chars[i + 1..j].iter().collect();
                take(j + 1 - i, Tok::Str(s), &mut i, &mut col);
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                let n = s
                    .parse()
                    .map_err(|_| ParseError::new("E001", pos, format!("number `{s}` is too large")))?;
                take(j - i, Tok::Num(n), &mut i, &mut col);
            }
            c if ident_start(c) => {
                let mut j = i;
                while j < chars.len()
                    && (ident_continue(chars[j])
                        || (chars[j] == '-' && chars.get(j + 1).is_some_and(|c| c.is_alphabetic())))
                {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                take(j - i, Tok::Ident(s), &mut i, &mut col);
            }
            other => {
                return Err(ParseError::new("E001", pos, format!("unexpected character `{other}`")));
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}
