use super::ast::Pos;
use super::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(String),
    Str(String),
    Sym(&'static str),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(s) => format!("number `{s}`"),
            Tok::Str(s) => format!("string \"{s}\""),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
    /// Column just past the token.
    pub end: usize,
}

const SYMBOLS: [&str; 16] = ["->", "{", "}", "(", ")", "[", "]", ";", ":", ",", "=", "+", "-", "*", "/", "^"];

pub fn lex(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos { line: li + 1, col: i + 1 };
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
                break;
            }
            let start = i;
            let tok = if c.is_ascii_alphabetic() || c == '_' {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[start..i].iter().collect())
            } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                Tok::Num(chars[start..i].iter().collect())
            } else if c == '"' {
                i += 1;
                while i < chars.len() && chars[i] != '"' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(SyntaxError::new(pos, "unterminated string", "\""));
                }
                i += 1;
                Tok::Str(chars[start + 1..i - 1].iter().collect())
            } else {
                let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
                match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                    Some(s) => {
                        i += s.len();
                        Tok::Sym(s)
                    }
                    None => return Err(SyntaxError::new(pos, "unexpected character", &c.to_string())),
                }
            };
            out.push(Token { tok, pos, end: i + 1 });
        }
    }
    let line = src.lines().count().max(1);
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col: src.lines().last().map_or(1, |l| l.chars().count() + 1) },
        end: 0,
    });
    Ok(out)
}
