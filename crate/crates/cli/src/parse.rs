//! Matrix grammar.
//!
//! ```text
//! matrix := row ';' row
//! row    := entry ',' entry
//! entry  := int | [int] 'i' | int ('+' | '-') [digits] 'i'
//! int    := ['+' | '-'] digits
//! ```
//!
//! An omitted imaginary coefficient means 1. Whitespace is ignored anywhere.

use std::fmt;

use nk_core::{BigInt, Error as CoreError, GaussianInt, GaussianMatrix2};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// `column` is 1-based in the original text.
    Syntax { column: usize, message: String },
    Determinant { det: GaussianInt },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { column, message } => {
                write!(f, "syntax error at column {column}: {message}")
            }
            ParseError::Determinant { det } => {
                write!(f, "matrix must have determinant 1, got det = {det}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

struct Cursor {
    /// Non-whitespace characters with their 1-based columns.
    chars: Vec<(usize, char)>,
    pos: usize,
    end_column: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Cursor {
            chars,
            pos: 0,
            end_column: text.chars().count() + 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end_column, |&(col, _)| col)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            column: self.column(),
            message: message.into(),
        })
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".into(),
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected '{want}', found {}", self.describe_next()))
        }
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.bump();
                Some(false)
            }
            Some('-') => {
                self.bump();
                Some(true)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        (!s.is_empty()).then(|| s.parse().expect("ascii digits"))
    }

    fn entry(&mut self) -> Result<GaussianInt, ParseError> {
        let negative = self.sign().unwrap_or(false);
        let apply = |neg: bool, v: BigInt| if neg { -v } else { v };
        let lead = self.digits();
        if self.peek() == Some('i') {
            self.bump();
            let coeff = apply(negative, lead.unwrap_or_else(|| BigInt::from(1)));
            return Ok(GaussianInt::new(0, coeff));
        }
        let Some(re) = lead else {
            return self.error(format!("expected a digit or 'i', found {}", self.describe_next()));
        };
        let re = apply(negative, re);
        let Some(im_negative) = self.sign() else {
            return Ok(GaussianInt::new(re, 0));
        };
        let im = self.digits().unwrap_or_else(|| BigInt::from(1));
        self.expect('i')?;
        Ok(GaussianInt::new(re, apply(im_negative, im)))
    }
}

pub fn parse_entries(text: &str) -> Result<[GaussianInt; 4], ParseError> {
    let mut c = Cursor::new(text);
    let a11 = c.entry()?;
    c.expect(',')?;
    let a12 = c.entry()?;
    c.expect(';')?;
    let a21 = c.entry()?;
    c.expect(',')?;
    let a22 = c.entry()?;
    if c.peek().is_some() {
        return c.error(format!("unexpected {} after the second row", c.describe_next()));
    }
    Ok([a11, a12, a21, a22])
}

pub fn parse_matrix(text: &str) -> Result<GaussianMatrix2, ParseError> {
    let [a, b, c, d] = parse_entries(text)?;
    let det = &(&a * &d) - &(&b * &c);
    GaussianMatrix2::new(a, b, c, d).map_err(|e| match e {
        CoreError::InvalidInput(_) => ParseError::Determinant { det },
        other => unreachable!("unexpected construction error {other}"),
    })
}

/// Inverse of [`parse_matrix`]: `"a11,a12;a21,a22"` with canonical entries.
pub fn render_matrix(a: &GaussianMatrix2) -> String {
    let [a11, a12, a21, a22] = a.entries();
    format!("{a11},{a12};{a21},{a22}")
}
