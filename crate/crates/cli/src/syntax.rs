//! Value syntax shared by scenario files and command-line literals.
//!
//! ```text
//! value := '[' (value (sep value)*)? ']'
//!        | '{' (IDENT ':' value (sep IDENT ':' value)*)? '}'
//!        | atom
//! sep   := ',' | newline
//! ```
//!
//! An atom is raw text up to the next separator or closing bracket outside
//! parentheses; its meaning (integer, polynomial, name) is decided by the
//! reader. `#` starts a comment that runs to the end of the line.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Atom { text: String, pos: Pos },
    List { items: Vec<Value>, pos: Pos },
    Map { entries: Vec<Entry>, pos: Pos },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub key: String,
    pub pos: Pos,
    pub value: Value,
}

impl Value {
    pub fn pos(&self) -> Pos {
        match self {
            Value::Atom { pos, .. } | Value::List { pos, .. } | Value::Map { pos, .. } => *pos,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Value::Atom { .. } => "a scalar",
            Value::List { .. } => "a list",
            Value::Map { .. } => "a map",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Atom { text, .. } => f.write_str(text),
            Value::List { items, .. } => {
                f.write_str("[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
            Value::Map { entries, .. } => {
                f.write_str("{")?;
                for (i, e) in entries.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}: {}", e.key, e.value)?;
                }
                f.write_str("}")
            }
        }
    }
}

/// A located error message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub pos: Pos,
    pub message: String,
}

impl Diagnostic {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic { pos, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

pub type Parsed<T> = Result<T, Diagnostic>;

pub struct Cursor {
    chars: Vec<char>,
    i: usize,
    line: usize,
    column: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Self {
        Cursor { chars: text.chars().collect(), i: 0, line: 1, column: 1 }
    }

    pub fn pos(&self) -> Pos {
        Pos { line: self.line, column: self.column }
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    pub fn at_end(&self) -> bool {
        self.i >= self.chars.len()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_comment(&mut self) {
        while self.peek().is_some_and(|c| c != '\n') {
            self.bump();
        }
    }

    /// Spaces, tabs and comments, but not newlines.
    pub fn skip_blank(&mut self) {
        while let Some(c) = self.peek() {
            match c {
                '#' => self.skip_comment(),
                '\n' => break,
                c if c.is_whitespace() => {
                    self.bump();
                }
                _ => break,
            }
        }
    }

    /// Whitespace of any kind, including newlines, and comments.
    pub fn skip_space(&mut self) {
        loop {
            self.skip_blank();
            if self.peek() == Some('\n') {
                self.bump();
            } else {
                break;
            }
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Diagnostic {
        Diagnostic::new(self.pos(), message)
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some('\n') => "end of line".into(),
            Some(c) => format!("`{c}`"),
        }
    }

    pub fn expect(&mut self, c: char) -> Parsed<()> {
        self.skip_blank();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.describe_next())))
        }
    }

    pub fn eat(&mut self, c: char) -> bool {
        self.skip_blank();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn ident(&mut self) -> Parsed<(String, Pos)> {
        self.skip_blank();
        let pos = self.pos();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || (c == '-' && !s.is_empty()) {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if s.is_empty() || s.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(Diagnostic::new(pos, format!("expected a name, found {}", self.describe_next())));
        }
        Ok((s, pos))
    }

    /// A map key: a name or a non-negative integer.
    fn key(&mut self) -> Parsed<(String, Pos)> {
        self.skip_blank();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return self.ident();
        }
        let pos = self.pos();
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        Ok((s, pos))
    }

    /// The rest of the current line, trimmed, with comments removed.
    pub fn rest_of_line(&mut self) -> Parsed<(String, Pos)> {
        self.skip_blank();
        let pos = self.pos();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c == '\n' || c == '#' {
                break;
            }
            s.push(c);
            self.bump();
        }
        let s = s.trim_end().to_string();
        if s.is_empty() {
            return Err(Diagnostic::new(pos, "expected a value"));
        }
        Ok((s, pos))
    }

    /// Consumes blanks and requires a newline or the end of input.
    pub fn end_of_statement(&mut self) -> Parsed<()> {
        self.skip_blank();
        match self.peek() {
            None => Ok(()),
            Some('\n') => {
                self.bump();
                Ok(())
            }
            Some(_) => Err(self.error(format!("unexpected {} after statement", self.describe_next()))),
        }
    }

    /// Skips to the next line that starts in the first column with a letter.
    pub fn recover(&mut self) {
        while let Some(c) = self.bump() {
            if c == '\n' && self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                break;
            }
        }
    }

    pub fn value(&mut self) -> Parsed<Value> {
        self.skip_blank();
        match self.peek() {
            Some('[') => self.list(),
            Some('{') => self.map(),
            _ => self.atom(),
        }
    }

    /// After an item inside brackets: a comma, a newline or the closer.
    fn separator(&mut self, close: char) -> Parsed<()> {
        self.skip_blank();
        match self.peek() {
            Some(',') | Some('\n') => {
                self.bump();
                Ok(())
            }
            Some(c) if c == close => Ok(()),
            _ => Err(self.error(format!("expected `,` or `{close}`, found {}", self.describe_next()))),
        }
    }

    fn list(&mut self) -> Parsed<Value> {
        let pos = self.pos();
        self.bump();
        let mut items = Vec::new();
        loop {
            self.skip_space();
            if self.peek() == Some(']') {
                self.bump();
                return Ok(Value::List { items, pos });
            }
            if self.at_end() {
                return Err(Diagnostic::new(pos, "unclosed `[`"));
            }
            items.push(self.value()?);
            self.separator(']')?;
        }
    }

    fn map(&mut self) -> Parsed<Value> {
        let pos = self.pos();
        self.bump();
        let mut entries: Vec<Entry> = Vec::new();
        loop {
            self.skip_space();
            if self.peek() == Some('}') {
                self.bump();
                return Ok(Value::Map { entries, pos });
            }
            if self.at_end() {
                return Err(Diagnostic::new(pos, "unclosed `{`"));
            }
            let (key, kpos) = self.key()?;
            if entries.iter().any(|e| e.key == key) {
                return Err(Diagnostic::new(kpos, format!("duplicate key `{key}`")));
            }
            self.expect(':')?;
            let value = self.value()?;
            entries.push(Entry { key, pos: kpos, value });
            self.separator('}')?;
        }
    }

    fn atom(&mut self) -> Parsed<Value> {
        let pos = self.pos();
        let mut text = String::new();
        let mut depth = 0usize;
        while let Some(c) = self.peek() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => return Err(self.error("unbalanced `)`")),
                ')' => depth -= 1,
                '\n' | '#' if depth == 0 => break,
                ',' | ']' | '}' if depth == 0 => break,
                _ => {}
            }
            text.push(c);
            self.bump();
        }
        let text = text.trim_end().to_string();
        if text.is_empty() {
            return Err(Diagnostic::new(pos, format!("expected a value, found {}", self.describe_next())));
        }
        Ok(Value::Atom { text, pos })
    }
}

/// Parses a single value occupying all of `text`.
pub fn parse_value(text: &str) -> Parsed<Value> {
    let mut c = Cursor::new(text);
    c.skip_space();
    let v = c.value()?;
    c.skip_space();
    if !c.at_end() {
        return Err(c.error("unexpected text after value"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_values_with_positions() {
        let v = parse_value("{ kind: quantum_affine, degrees: [1, 1],\n  q: [[1, -1], [-1, 1]] }").unwrap();
        let Value::Map { entries, .. } = v else { panic!() };
        assert_eq!(entries.iter().map(|e| e.key.as_str()).collect::<Vec<_>>(), ["kind", "degrees", "q"]);
        assert_eq!(entries[2].pos, Pos { line: 2, column: 3 });
        assert_eq!(entries[2].value.to_string(), "[[1, -1], [-1, 1]]");
        assert_eq!(parse_value("{1: 1, 27: 1}").unwrap().to_string(), "{1: 1, 27: 1}");
    }

    #[test]
    fn atoms_keep_parenthesized_commas() {
        let v = parse_value("[(1-t)/((1-t^2)(1+t)), 2z^2 + 1]").unwrap();
        let Value::List { items, .. } = v else { panic!() };
        assert_eq!(items[0].to_string(), "(1-t)/((1-t^2)(1+t))");
        assert_eq!(items[1].pos(), Pos { line: 1, column: 24 });
    }

    #[test]
    fn newline_separates_items() {
        let v = parse_value("[\n  1 # one\n  2\n]").unwrap();
        assert_eq!(v.to_string(), "[1, 2]");
    }

    #[test]
    fn errors_are_located() {
        let e = parse_value("[1, 2").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, column: 6 });
        assert!(e.message.contains("end of input"));
        let e = parse_value("[1,\n").unwrap_err();
        assert_eq!((e.pos, e.message.as_str()), (Pos { line: 1, column: 1 }, "unclosed `[`"));
        let e = parse_value("{a 1}").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, column: 4 });
        let e = parse_value("{a: 1, a: 2}").unwrap_err();
        assert!(e.message.contains("duplicate"));
    }
}
