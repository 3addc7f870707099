//! Text input for spaces of forms and staircase rendering.
//!
//! An input file declares the variable count, then lists one form per line:
//!
//! ```text
//! vars: 3
//! # comments run to the end of the line
//! seed: 7
//! x1*x2^2 + x1*x3^2
//! 1/2*x1^2*x2 - x2*x3^2
//! p = x1^3
//! ```
//!
//! Terms are `[sign] [rational] ['*'] factor ('*' factor)*` with factors
//! `x<k>` or `x<k>^e`, or a bare rational. There are no parentheses.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formspace::FormSpace;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::polynomial::Polynomial;
use crate::scalar::Scalar;
use crate::stable::MonomialSpace;

/// Options a file may set; command-line flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DocumentOptions {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub range: Option<u64>,
    pub maxdeg: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InputDocument {
    pub nvars: usize,
    pub polynomials: Vec<Polynomial>,
    /// Named forms such as `p = x1^3`, kept apart from the space.
    pub candidates: BTreeMap<String, Polynomial>,
    pub options: DocumentOptions,
}

impl InputDocument {
    /// Common degree of the listed forms, if any were listed.
    pub fn degree(&self) -> Option<u32> {
        self.polynomials.first().map(Polynomial::degree)
    }

    /// Span of the listed forms.
    pub fn form_space(&self) -> Result<FormSpace> {
        let d = self
            .degree()
            .ok_or_else(|| Error::Empty("the input lists no forms".into()))?;
        FormSpace::from_polynomials(self.nvars, d, &self.polynomials)
    }

    pub fn candidate(&self, name: &str) -> Result<&Polynomial> {
        self.candidates
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("no candidate named `{name}` in the input")))
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    /// Column of `chars[0]` in the original line (1-based).
    offset: usize,
}

impl Scanner {
    fn new(src: &str, line: usize, offset: usize) -> Self {
        Scanner {
            chars: src.chars().collect(),
            pos: 0,
            line,
            offset,
        }
    }

    fn column(&self) -> usize {
        self.offset + self.pos
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        parse_error(self.line, self.column(), message)
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn rational(&mut self) -> Result<Option<Scalar>> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let num: BigInt = num.parse().expect("ascii digits");
        if self.peek() == Some('/') {
            self.pos += 1;
            let col = self.column();
            let den = self
                .digits()
                .ok_or_else(|| parse_error(self.line, col, "expected a denominator after `/`"))?;
            let den: BigInt = den.parse().expect("ascii digits");
            if den.is_zero() {
                return Err(parse_error(self.line, col, "zero denominator"));
            }
            return Ok(Some(Scalar::new(num, den)));
        }
        Ok(Some(Scalar::from_integer(num)))
    }

    fn small_int(&mut self, what: &str) -> Result<u64> {
        let col = self.column();
        let s = self
            .digits()
            .ok_or_else(|| parse_error(self.line, col, format!("expected {what}")))?;
        s.parse()
            .map_err(|_| parse_error(self.line, col, format!("{what} `{s}` is too large")))
    }

    /// `x<k>['^'e]`, multiplied into `exps`.
    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let col = self.column();
        match self.peek() {
            Some('x') => self.pos += 1,
            Some(c) => return Err(self.error(format!("unexpected `{c}`, expected a variable x<k>"))),
            None => return Err(self.error("unexpected end of line, expected a variable x<k>")),
        }
        let k = self.small_int("a variable index")? as usize;
        if k == 0 || k > exps.len() {
            return Err(parse_error(
                self.line,
                col,
                format!("variable x{k} out of range 1..{}", exps.len()),
            ));
        }
        let mut e = 1u64;
        if self.peek() == Some('^') {
            self.pos += 1;
            e = self.small_int("an exponent")?;
        }
        let total = u64::from(exps[k - 1]) + e;
        exps[k - 1] = u32::try_from(total)
            .map_err(|_| parse_error(self.line, col, "exponent too large"))?;
        Ok(())
    }

    /// One term after its sign has been consumed.
    fn term(&mut self, nvars: usize) -> Result<(Monomial, Scalar)> {
        let mut exps = vec![0u32; nvars];
        let coeff = self.rational()?;
        let has_coeff = coeff.is_some();
        if has_coeff {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    self.factor(&mut exps)?;
                }
                Some('x') => self.factor(&mut exps)?,
                _ => return Ok((Monomial::new(exps), coeff.expect("checked"))),
            }
        } else {
            self.factor(&mut exps)?;
        }
        while self.peek() == Some('*') {
            self.pos += 1;
            self.factor(&mut exps)?;
        }
        Ok((Monomial::new(exps), coeff.unwrap_or_else(|| Scalar::from_integer(1.into()))))
    }

    fn polynomial(&mut self, nvars: usize) -> Result<Polynomial> {
        let mut terms = Vec::new();
        let mut degree: Option<(u32, usize)> = None;
        let mut first = true;
        loop {
            let mut negative = false;
            match self.peek() {
                Some('+') if !first => self.pos += 1,
                Some('-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some('+') => self.pos += 1,
                None if first => return Err(self.error("empty expression")),
                None => return Err(self.error("expected a term after the operator")),
                _ if !first => {
                    let c = self.peek().expect("checked");
                    return Err(self.error(format!("unexpected `{c}`, expected `+` or `-`")));
                }
                _ => {}
            }
            first = false;
            let col = {
                self.skip_ws();
                self.column()
            };
            if self.peek().is_none() {
                return Err(self.error("expected a term after the sign"));
            }
            let (m, c) = self.term(nvars)?;
            match degree {
                None => degree = Some((m.degree(), col)),
                Some((d, _)) if d != m.degree() => {
                    return Err(parse_error(
                        self.line,
                        col,
                        format!("term of degree {} in a form of degree {d}", m.degree()),
                    ))
                }
                _ => {}
            }
            terms.push((m, if negative { -c } else { c }));
            if self.peek().is_none() {
                break;
            }
        }
        Polynomial::from_terms(nvars, terms)
    }
}

/// Parse one form in `nvars` variables.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial> {
    parse_polynomial_at(text, nvars, 1, 1)
}

fn parse_polynomial_at(text: &str, nvars: usize, line: usize, offset: usize) -> Result<Polynomial> {
    Scanner::new(text, line, offset).polynomial(nvars)
}

fn option_value<T: std::str::FromStr>(value: &str, line: usize, column: usize, key: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| parse_error(line, column, format!("invalid value `{}` for `{key}`", value.trim())))
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(c) = chars.next() else {
        return false;
    };
    if !(c.is_ascii_alphabetic() || c == '_') || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return false;
    }
    // x1, x2, ... are variables
    !(s.starts_with('x') && s.len() > 1 && s[1..].chars().all(|c| c.is_ascii_digit()))
}

/// Parse an input document.
pub fn parse(text: &str) -> Result<InputDocument> {
    let mut nvars: Option<usize> = None;
    let mut polynomials: Vec<Polynomial> = Vec::new();
    let mut first_degree: Option<(u32, usize)> = None;
    let mut candidates = BTreeMap::new();
    let mut options = DocumentOptions::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let body = content.trim();
        let col0 = indent + 1;

        if let Some((key, value)) = body.split_once(':') {
            let key = key.trim();
            let value_col = col0 + body.find(':').expect("split") + 1;
            match key {
                "vars" => {
                    if nvars.is_some() {
                        return Err(parse_error(line, col0, "`vars` declared twice"));
                    }
                    let n: usize = option_value(value, line, value_col, key)?;
                    if n == 0 {
                        return Err(parse_error(line, value_col, "at least one variable is required"));
                    }
                    nvars = Some(n);
                }
                "seed" => options.seed = Some(option_value(value, line, value_col, key)?),
                "trials" => options.trials = Some(option_value(value, line, value_col, key)?),
                "range" => options.range = Some(option_value(value, line, value_col, key)?),
                "maxdeg" => options.maxdeg = Some(option_value(value, line, value_col, key)?),
                _ => return Err(parse_error(line, col0, format!("unknown option `{key}`"))),
            }
            continue;
        }

        let n = nvars.ok_or_else(|| parse_error(line, col0, "expected `vars: n` before the first form"))?;
        if let Some((name, expr)) = body.split_once('=') {
            let name = name.trim();
            if !is_name(name) {
                return Err(parse_error(line, col0, format!("invalid candidate name `{name}`")));
            }
            let expr_col = col0 + body.find('=').expect("split") + 1;
            let p = parse_polynomial_at(expr, n, line, expr_col)?;
            if candidates.insert(name.to_string(), p).is_some() {
                return Err(parse_error(line, col0, format!("candidate `{name}` defined twice")));
            }
            continue;
        }

        let p = parse_polynomial_at(body, n, line, col0)?;
        if p.is_zero() {
            continue;
        }
        match first_degree {
            None => first_degree = Some((p.degree(), line)),
            Some((d, l)) if d != p.degree() => {
                return Err(parse_error(
                    line,
                    col0,
                    format!("form of degree {} but line {l} has degree {d}", p.degree()),
                ))
            }
            _ => {}
        }
        polynomials.push(p);
    }
    let nvars = nvars.ok_or_else(|| parse_error(1, 1, "missing `vars: n` header"))?;
    Ok(InputDocument {
        nvars,
        polynomials,
        candidates,
        options,
    })
}

/// Inverse of [`parse`] for a list of forms.
pub fn print_document(nvars: usize, polynomials: &[Polynomial]) -> String {
    let mut out = format!("vars: {nvars}\n");
    for p in polynomials {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StaircaseFormat {
    Ascii,
    Json,
}

/// Presence of every monomial of one degree in a monomial space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseDiagram {
    pub degree: u32,
    pub nvars: usize,
    pub marks: Vec<(Monomial, bool)>,
}

#[derive(Serialize)]
struct StaircaseJson<'a> {
    degree: u32,
    n: usize,
    present: Vec<&'a [u32]>,
}

impl StaircaseDiagram {
    pub fn new(s: &MonomialSpace) -> Self {
        let marks = monomials_of_degree(s.nvars(), s.degree())
            .into_iter()
            .map(|m| {
                let present = s.contains(&m);
                (m, present)
            })
            .collect();
        StaircaseDiagram {
            degree: s.degree(),
            nvars: s.nvars(),
            marks,
        }
    }

    fn present(&self, m: &Monomial) -> bool {
        self.marks.iter().any(|(k, p)| *p && k == m)
    }

    /// Triangle with one row per power of `x3`, `x3^d` on top; within a
    /// row the power of `x2` increases to the right.
    fn ascii(&self) -> Result<String> {
        if self.nvars != 3 {
            return Err(Error::UnsupportedFormat(format!(
                "ascii staircases need 3 variables, got {}",
                self.nvars
            )));
        }
        let d = self.degree;
        let mut out = String::new();
        for k in (0..=d).rev() {
            let row: Vec<&str> = (0..=d - k)
                .map(|j| {
                    let m = Monomial::new(vec![d - k - j, j, k]);
                    if self.present(&m) {
                        "x"
                    } else {
                        "o"
                    }
                })
                .collect();
            out.push_str(&" ".repeat(k as usize));
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        Ok(out)
    }

    pub fn render(&self, format: StaircaseFormat) -> Result<String> {
        match format {
            StaircaseFormat::Ascii => self.ascii(),
            StaircaseFormat::Json => {
                let json = StaircaseJson {
                    degree: self.degree,
                    n: self.nvars,
                    present: self
                        .marks
                        .iter()
                        .filter(|(_, p)| *p)
                        .map(|(m, _)| m.exponents())
                        .collect(),
                };
                Ok(serde_json::to_string(&json).expect("plain data") + "\n")
            }
        }
    }
}

pub fn render_staircase(s: &MonomialSpace, format: StaircaseFormat) -> Result<String> {
    StaircaseDiagram::new(s).render(format)
}
