//! Tokenizer shared by every registry sub-language.

use super::RegistryError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokKind {
    Int(i64),
    Ident(String),
    Punct(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tok {
    pub kind: TokKind,
    pub line: usize,
    pub col: usize,
}

const PUNCT: &[&str] = &["||", "==", "≡", "(", ")", "[", "]", ",", "+", "-", "*", "/", "^", "=", "|", ":"];

/// Tokenize `text`, whose first character sits at `line:col` of the
/// registry file. Newlines inside `text` advance the line counter.
pub fn tokenize(text: &str, line: usize, col: usize) -> Result<Vec<Tok>, RegistryError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (line, col);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if ch.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let start_col = col;
        if ch.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().collect();
            let value = digits.parse::<i64>().map_err(|_| RegistryError::Parse {
                line,
                col: start_col,
                msg: format!("integer {digits} out of range"),
            })?;
            out.push(Tok { kind: TokKind::Int(value), line, col: start_col });
            col += j - i;
            i = j;
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '.') {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            out.push(Tok { kind: TokKind::Ident(word), line, col: start_col });
            col += j - i;
            i = j;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match PUNCT.iter().find(|p| rest.starts_with(**p)) {
            Some(p) => {
                let width = p.chars().count();
                out.push(Tok { kind: TokKind::Punct(p), line, col: start_col });
                col += width;
                i += width;
            }
            None => {
                return Err(RegistryError::Parse { line, col, msg: format!("unexpected character {ch:?}") });
            }
        }
    }
    Ok(out)
}

/// Cursor over a token list with error positions.
pub struct Cursor {
    toks: Vec<Tok>,
    pos: usize,
    end: (usize, usize),
}

impl Cursor {
    pub fn new(toks: Vec<Tok>, end: (usize, usize)) -> Self {
        Cursor { toks, pos: 0, end }
    }

    pub fn peek(&self) -> Option<&TokKind> {
        self.toks.get(self.pos).map(|t| &t.kind)
    }

    pub fn peek_at(&self, k: usize) -> Option<&TokKind> {
        self.toks.get(self.pos + k).map(|t| &t.kind)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn position(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => self.end,
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> RegistryError {
        let (line, col) = self.position();
        RegistryError::Parse { line, col, msg: msg.into() }
    }

    pub fn next(&mut self) -> Option<TokKind> {
        let t = self.toks.get(self.pos).map(|t| t.kind.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(TokKind::Punct(q)) if *q == p)
    }

    pub fn is_ident(&self, word: &str) -> bool {
        matches!(self.peek(), Some(TokKind::Ident(w)) if w == word)
    }

    pub fn eat_punct(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn eat_ident(&mut self, word: &str) -> bool {
        if self.is_ident(word) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_punct(&mut self, p: &str) -> Result<(), RegistryError> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            Err(self.error(format!("expected {p:?}")))
        }
    }

    pub fn expect_ident(&mut self, word: &str) -> Result<(), RegistryError> {
        if self.eat_ident(word) {
            Ok(())
        } else {
            Err(self.error(format!("expected {word:?}")))
        }
    }

    pub fn expect_int(&mut self) -> Result<i64, RegistryError> {
        match self.peek() {
            Some(TokKind::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    /// An integer with an optional leading minus sign.
    pub fn expect_signed_int(&mut self) -> Result<i64, RegistryError> {
        let neg = self.eat_punct("-");
        let v = self.expect_int()?;
        Ok(if neg { -v } else { v })
    }

    pub fn expect_end(&self) -> Result<(), RegistryError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_kinds() {
        let toks = tokenize("phi(q^3)\n  + 4*q ≡ ||", 3, 10).unwrap();
        assert_eq!(toks[0], Tok { kind: TokKind::Ident("phi".into()), line: 3, col: 10 });
        assert_eq!(toks[4].kind, TokKind::Int(3));
        let plus = toks.iter().find(|t| t.kind == TokKind::Punct("+")).unwrap();
        assert_eq!((plus.line, plus.col), (4, 3));
        assert!(toks.iter().any(|t| t.kind == TokKind::Punct("≡")));
        assert_eq!(toks.last().unwrap().kind, TokKind::Punct("||"));
    }

    #[test]
    fn bad_character() {
        let err = tokenize("phi(q) $", 1, 1).unwrap_err();
        assert_eq!(err, RegistryError::Parse { line: 1, col: 8, msg: "unexpected character '$'".into() });
    }
}
