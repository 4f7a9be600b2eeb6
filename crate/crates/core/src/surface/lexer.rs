use super::{ParseError, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(String),
    Tensor,
    ParOp,
    LParen,
    RParen,
    Tilde,
    Bang,
    Quest,
    Colon,
    Comma,
    Turnstile,
    Bar,
    Dot,
    Lt,
    Gt,
    Star,
    LBrack,
    RBrack,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(s) => format!("`{s}`"),
            Tok::Tensor => "`(*)`".into(),
            Tok::ParOp => "`(%)`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Quest => "`?`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Star => "`*`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub start: usize,
    pub end: usize,
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(file: &str, text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let simple = |t: Tok, len: usize| (t, len);
        let (tok, len) = match c {
            '(' if text[i..].starts_with("(*)") => simple(Tok::Tensor, 3),
            '(' if text[i..].starts_with("(%)") => simple(Tok::ParOp, 3),
            '(' => simple(Tok::LParen, 1),
            ')' => simple(Tok::RParen, 1),
            '~' => simple(Tok::Tilde, 1),
            '!' => simple(Tok::Bang, 1),
            '?' => simple(Tok::Quest, 1),
            ':' => simple(Tok::Colon, 1),
            ',' => simple(Tok::Comma, 1),
            '|' if text[i..].starts_with("|-") => simple(Tok::Turnstile, 2),
            '|' => simple(Tok::Bar, 1),
            '.' => simple(Tok::Dot, 1),
            '<' => simple(Tok::Lt, 1),
            '>' => simple(Tok::Gt, 1),
            '*' => simple(Tok::Star, 1),
            '[' => simple(Tok::LBrack, 1),
            ']' => simple(Tok::RBrack, 1),
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                    j += 1;
                }
                (Tok::Num(text[i..j].to_string()), j - i)
            }
            c if is_ident_start(c) => {
                let mut j = i;
                while j < bytes.len() && is_ident_char(bytes[j] as char) {
                    j += 1;
                }
                (Tok::Ident(text[i..j].to_string()), j - i)
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    span: SourceSpan::new(file, start, start + ch.len_utf8()),
                    message: format!("unexpected character `{ch}`"),
                    expected: Vec::new(),
                });
            }
        };
        i += len;
        out.push(Token { tok, start, end: i });
    }
    out.push(Token { tok: Tok::Eof, start: text.len(), end: text.len() });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_token_is_not_a_paren() {
        let toks: Vec<Tok> = tokenize("t", "a (*) (*u(x).0)").unwrap().into_iter().map(|t| t.tok).collect();
        assert_eq!(toks[1], Tok::Tensor);
        assert_eq!(toks[2], Tok::LParen);
        assert_eq!(toks[3], Tok::Star);
    }

    #[test]
    fn primes_in_names_and_comments() {
        let toks: Vec<Tok> = tokenize("t", "u'1 # note\n|- x").unwrap().into_iter().map(|t| t.tok).collect();
        assert_eq!(toks, vec![Tok::Ident("u'1".into()), Tok::Turnstile, Tok::Ident("x".into()), Tok::Eof]);
    }

    #[test]
    fn bad_character_has_span() {
        let err = tokenize("t", "a $ b").unwrap_err();
        assert_eq!((err.span.start, err.span.end), (2, 3));
    }
}
