//! Parser for O_n expressions.
//!
//! ```text
//! expression := term (('+' | '-') term)*
//! term       := [complex] word
//! complex    := '(' float ',' float ')' | '(' float [('+'|'-') float 'i'] ')' | '(' float 'i' ')'
//! word       := '1' | vtok+
//! vtok       := 'v' digits ['*']
//! ```
//!
//! Juxtaposition is multiplication, so the canonical rendering of an element
//! parses back to the same element. A bare `0` is the zero element.

use num_complex::Complex64;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn float(&mut self) -> Result<f64> {
        self.skip_ws();
        let bytes = self.rest().as_bytes();
        let mut end = 0;
        if matches!(bytes.first(), Some(b'+' | b'-')) {
            end += 1;
        }
        let digits_start = end;
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
            end += 1;
        }
        if end == digits_start {
            return self.err("expected a number");
        }
        if end < bytes.len() && matches!(bytes[end], b'e' | b'E') {
            let mut k = end + 1;
            if k < bytes.len() && matches!(bytes[k], b'+' | b'-') {
                k += 1;
            }
            let exp_digits = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            if k > exp_digits {
                end = k;
            }
        }
        let text = &self.rest()[..end];
        match text.parse::<f64>() {
            Ok(x) => {
                self.pos += end;
                Ok(x)
            }
            Err(_) => self.err(format!("malformed number {text:?}")),
        }
    }

    fn complex(&mut self) -> Result<Complex64> {
        let re = self.float()?;
        if self.eat(',') {
            let im = self.float()?;
            if !self.eat(')') {
                return self.err("expected ')'");
            }
            return Ok(Complex64::new(re, im));
        }
        if self.eat('i') {
            if !self.eat(')') {
                return self.err("expected ')'");
            }
            return Ok(Complex64::new(0.0, re));
        }
        if self.eat(')') {
            return Ok(Complex64::new(re, 0.0));
        }
        let sign = match self.peek() {
            Some('+') => 1.0,
            Some('-') => -1.0,
            _ => return self.err("expected ',', '+', '-', 'i' or ')'"),
        };
        self.pos += 1;
        let im = self.float()?;
        if !self.eat('i') {
            return self.err("expected 'i'");
        }
        if !self.eat(')') {
            return self.err("expected ')'");
        }
        Ok(Complex64::new(re, sign * im))
    }

    fn letter(&mut self) -> Result<AlgebraElement> {
        let start = self.pos;
        self.pos += 1; // 'v'
        let digits = self.rest().bytes().take_while(|b| b.is_ascii_digit()).count();
        if digits == 0 {
            return self.err("expected generator index after 'v'");
        }
        let text = &self.rest()[..digits];
        let a: usize = match text.parse() {
            Ok(a) => a,
            Err(_) => return self.err("generator index too large"),
        };
        self.pos += digits;
        let adjoint = self.rest().starts_with('*');
        if adjoint {
            self.pos += 1;
        }
        if a == 0 || a > self.n {
            self.pos = start;
            return Err(Error::LetterOutOfRange { letter: a, n: self.n });
        }
        if adjoint {
            AlgebraElement::generator_adjoint(self.n, a)
        } else {
            AlgebraElement::generator(self.n, a)
        }
    }

    fn word(&mut self) -> Result<AlgebraElement> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                    return self.err("expected '1' or a generator");
                }
                Ok(AlgebraElement::unit(self.n))
            }
            Some('v') => {
                let mut acc = self.letter()?;
                while self.peek() == Some('v') {
                    acc = acc.mul(&self.letter()?)?;
                }
                Ok(acc)
            }
            _ => self.err("expected '1' or a generator"),
        }
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        let coeff = if self.eat('(') { self.complex()? } else { Complex64::new(1.0, 0.0) };
        Ok(self.word()?.scale(coeff))
    }

    fn expression(&mut self) -> Result<AlgebraElement> {
        let mut sign = 1.0;
        if self.eat('-') {
            sign = -1.0;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?.scale(Complex64::new(sign, 0.0));
        loop {
            let sign = match self.peek() {
                Some('+') => 1.0,
                Some('-') => -1.0,
                None => break,
                Some(_) => return self.err("expected '+', '-' or end of input"),
            };
            self.pos += 1;
            acc = acc.add(&self.term()?.scale(Complex64::new(sign, 0.0)))?;
        }
        Ok(acc)
    }
}

/// Parse an expression over O_n.
pub fn parse_element(text: &str, n: usize) -> Result<AlgebraElement> {
    if n < 2 {
        return Err(Error::BadAmbient(n));
    }
    if text.trim() == "0" {
        return Ok(AlgebraElement::zero(n));
    }
    let mut p = Parser { src: text, pos: 0, n };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    p.expression()
}
