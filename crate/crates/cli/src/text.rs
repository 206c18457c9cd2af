//! Line-oriented tokenizing shared by every input format. `#` starts a
//! comment; tokens are separated by whitespace and carry 1-based positions.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use stringnet::field::Field;

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub struct Source {
    pub path: PathBuf,
    /// Non-empty lines only.
    pub lines: Vec<Vec<Token>>,
    /// Where input ends, for "unexpected end of file" errors.
    end: (usize, usize),
}

impl Source {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Ok(Source::from_text(path, &text))
    }

    pub fn from_text(path: &Path, text: &str) -> Self {
        let mut lines = Vec::new();
        let mut end = (1, 1);
        for (i, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (j, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(j),
                    (true, Some(s)) => {
                        let col = content[..s].chars().count() + 1;
                        tokens.push(Token { text: content[s..j].to_string(), line: i + 1, col });
                        start = None;
                    }
                    _ => {}
                }
            }
            end = (i + 1, raw.chars().count() + 1);
            if !tokens.is_empty() {
                lines.push(tokens);
            }
        }
        Source { path: path.to_path_buf(), lines, end }
    }

    pub fn error(&self, at: &Token, message: impl Into<String>) -> CliError {
        CliError::Parse { path: self.path.clone(), line: at.line, col: at.col, message: message.into() }
    }

    pub fn error_at_end(&self, message: impl Into<String>) -> CliError {
        CliError::Parse { path: self.path.clone(), line: self.end.0, col: self.end.1, message: message.into() }
    }

    pub fn cursor(&self) -> Cursor<'_> {
        Cursor { source: self, tokens: self.lines.iter().flatten().collect(), pos: 0 }
    }

    pub fn number<T: FromStr>(&self, t: &Token, what: &str) -> Result<T> {
        t.text.parse().map_err(|_| self.error(t, format!("expected {what}, found `{}`", t.text)))
    }

    pub fn scalar<F: Field>(&self, t: &Token) -> Result<F> {
        F::parse(&t.text).ok_or_else(|| {
            self.error(t, format!("`{}` is not an element of {}", t.text, F::descriptor()))
        })
    }
}

/// A flat token stream, for formats that ignore line structure.
pub struct Cursor<'a> {
    source: &'a Source,
    tokens: Vec<&'a Token>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos).copied()
    }

    pub fn next(&mut self, what: &str) -> Result<&'a Token> {
        let t = self.peek().ok_or_else(|| self.source.error_at_end(format!("unexpected end of file, expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    pub fn usize(&mut self, what: &str) -> Result<usize> {
        let t = self.next(what)?;
        self.source.number(t, what)
    }

    pub fn scalars<F: Field>(&mut self, n: usize, what: &str) -> Result<Vec<F>> {
        (0..n).map(|_| self.next(what).and_then(|t| self.source.scalar(t))).collect()
    }

    pub fn finish(&self) -> Result<()> {
        match self.peek() {
            Some(t) => Err(self.source.error(t, format!("unexpected trailing token `{}`", t.text))),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_skip_comments_and_blank_lines() {
        let s = Source::from_text(Path::new("t"), "# head\n\n  a  bc # tail\nd\n");
        let flat: Vec<_> = s.lines.iter().flatten().map(|t| (t.text.as_str(), t.line, t.col)).collect();
        assert_eq!(flat, vec![("a", 3, 3), ("bc", 3, 6), ("d", 4, 1)]);
    }

    #[test]
    fn end_of_input_is_located() {
        let s = Source::from_text(Path::new("t"), "2\n1");
        let mut c = s.cursor();
        c.usize("n").unwrap();
        c.usize("n").unwrap();
        let e = c.usize("n").unwrap_err().to_string();
        assert_eq!(e, "t:2:2: unexpected end of file, expected n");
    }
}
