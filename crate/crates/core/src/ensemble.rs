//! POVMs, ensembles of POVMs, validation, builtin witnesses and the text
//! file format.
//!
//! ```text
//! # comment
//! ensemble "half-half"
//! povm
//! element 1/2 0 0 0
//! element 1/2 0 0 0
//! ```

use std::fmt;

use thiserror::Error;

use crate::operator::{format_rational, parse_rational, rational, QubitOperator};

/// One measurement: an ordered list of effects. Slots are indexed from 0.
///
/// Construction does not validate; see [`Ensemble::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Povm {
    elements: Vec<QubitOperator>,
}

impl Povm {
    pub fn new(elements: Vec<QubitOperator>) -> Self {
        Povm { elements }
    }

    pub fn elements(&self) -> &[QubitOperator] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `𝟙 − Σ Mᵢ`; zero exactly when the POVM is complete.
    pub fn deficit(&self) -> QubitOperator {
        &QubitOperator::identity() - &self.elements.iter().sum::<QubitOperator>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ensemble {
    name: String,
    povms: Vec<Povm>,
}

/// A single problem found by [`Ensemble::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    NoPovms,
    EmptyPovm { povm: usize },
    NotPositive { povm: usize, slot: usize },
    ZeroElement { povm: usize, slot: usize },
    Incomplete { povm: usize, deficit: QubitOperator },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::NoPovms => write!(f, "ensemble has no POVMs"),
            ValidationIssue::EmptyPovm { povm } => write!(f, "povm {povm}: no elements"),
            ValidationIssue::NotPositive { povm, slot } => {
                write!(f, "povm {povm} slot {slot}: not positive semidefinite")
            }
            ValidationIssue::ZeroElement { povm, slot } => {
                write!(f, "povm {povm} slot {slot}: zero element")
            }
            ValidationIssue::Incomplete { povm, deficit } => {
                write!(f, "povm {povm}: elements do not sum to identity, deficit {deficit}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidationOptions {
    pub allow_zero_elements: bool,
}

pub const BUILTIN_NAMES: [&str; 3] = ["one", "half-half", "cabello-xyz"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown builtin ensemble `{0}` (expected one of: one, half-half, cabello-xyz)")]
pub struct UnknownBuiltin(pub String);

impl Ensemble {
    pub fn new(name: impl Into<String>, povms: Vec<Povm>) -> Self {
        Ensemble {
            name: name.into(),
            povms,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn povms(&self) -> &[Povm] {
        &self.povms
    }

    pub fn shape(&self) -> Vec<usize> {
        self.povms.iter().map(Povm::len).collect()
    }

    pub fn validate(&self) -> ValidationReport {
        self.validate_with(ValidationOptions::default())
    }

    pub fn validate_with(&self, options: ValidationOptions) -> ValidationReport {
        let mut issues = Vec::new();
        if self.povms.is_empty() {
            issues.push(ValidationIssue::NoPovms);
        }
        for (p, povm) in self.povms.iter().enumerate() {
            if povm.is_empty() {
                issues.push(ValidationIssue::EmptyPovm { povm: p });
                continue;
            }
            for (slot, m) in povm.elements.iter().enumerate() {
                if !m.is_psd() {
                    issues.push(ValidationIssue::NotPositive { povm: p, slot });
                } else if m.is_zero() && !options.allow_zero_elements {
                    issues.push(ValidationIssue::ZeroElement { povm: p, slot });
                }
            }
            let deficit = povm.deficit();
            if !deficit.is_zero() {
                issues.push(ValidationIssue::Incomplete { povm: p, deficit });
            }
        }
        ValidationReport { issues }
    }

    pub fn builtin(name: &str) -> Result<Ensemble, UnknownBuiltin> {
        let z = (0, 1);
        let quarter = (1, 4);
        let neg_quarter = (-1, 4);
        match name {
            "one" => Ok(Ensemble::new("one", vec![Povm::new(vec![QubitOperator::identity()])])),
            "half-half" => {
                let h = QubitOperator::scalar(rational(1, 2));
                Ok(Ensemble::new("half-half", vec![Povm::new(vec![h.clone(), h])]))
            }
            "cabello-xyz" => {
                // A, B, C are the +z, +x, +y projectors; each POVM lists
                // {X/2, X⊥/2, Y/2, Y⊥/2}.
                let a = QubitOperator::from_ratios(quarter, [z, z, quarter]);
                let a_perp = QubitOperator::from_ratios(quarter, [z, z, neg_quarter]);
                let b = QubitOperator::from_ratios(quarter, [quarter, z, z]);
                let b_perp = QubitOperator::from_ratios(quarter, [neg_quarter, z, z]);
                let c = QubitOperator::from_ratios(quarter, [z, quarter, z]);
                let c_perp = QubitOperator::from_ratios(quarter, [z, neg_quarter, z]);
                Ok(Ensemble::new(
                    "cabello-xyz",
                    vec![
                        Povm::new(vec![a.clone(), a_perp.clone(), b.clone(), b_perp.clone()]),
                        Povm::new(vec![a, a_perp, c.clone(), c_perp.clone()]),
                        Povm::new(vec![b, b_perp, c, c_perp]),
                    ],
                ))
            }
            other => Err(UnknownBuiltin(other.to_string())),
        }
    }

    /// Canonical file text. `parse(&e.serialize()) == Ok(e)` for every
    /// ensemble.
    pub fn serialize(&self) -> String {
        let mut out = format!("ensemble {}\n", quote(&self.name));
        for povm in &self.povms {
            out.push_str("povm\n");
            for m in &povm.elements {
                let [x, y, z] = m.bloch();
                out.push_str(&format!(
                    "element {} {} {} {}\n",
                    format_rational(m.alpha()),
                    format_rational(x),
                    format_rational(y),
                    format_rational(z)
                ));
            }
        }
        out
    }

    /// Syntax-only parse: the result may still fail [`Ensemble::validate`].
    pub fn parse(text: &str) -> Result<Ensemble, ParseError> {
        Parser::default().run(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: {message}")]
    Semantic {
        line: usize,
        column: usize,
        message: String,
    },
}

impl ParseError {
    pub fn location(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, column, .. } | ParseError::Semantic { line, column, .. } => {
                (*line, *column)
            }
        }
    }
}

fn quote(name: &str) -> String {
    let mut out = String::with_capacity(name.len() + 2);
    out.push('"');
    for c in name.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// A whitespace-separated token and its 1-based column.
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                tokens.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        tokens.push(Token { text: &line[s..], column: line[..s].chars().count() + 1 });
    }
    tokens
}

/// Strips a trailing `#` comment that is not inside a quoted string.
fn strip_comment(line: &str) -> &str {
    let mut in_quote = false;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        if in_quote {
            match (escaped, c) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_quote = false,
                _ => {}
            }
        } else if c == '"' {
            in_quote = true;
        } else if c == '#' {
            return &line[..i];
        }
    }
    line
}

#[derive(Default)]
struct Parser {
    name: Option<String>,
    povms: Vec<Povm>,
    open: Option<Vec<QubitOperator>>,
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Ensemble, ParseError> {
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw);
            let Some(first) = tokenize(line).into_iter().next() else {
                continue;
            };
            match first.text {
                "ensemble" => self.header(line, first.column, line_no)?,
                "povm" => self.povm(line, line_no)?,
                "element" => self.element(line, line_no)?,
                other => {
                    return Err(ParseError::Syntax {
                        line: line_no,
                        column: first.column,
                        message: format!("unknown statement `{other}`"),
                    })
                }
            }
        }
        if let Some(open) = self.open.take() {
            self.povms.push(Povm::new(open));
        }
        let name = self.name.ok_or(ParseError::Semantic {
            line: 1,
            column: 1,
            message: "missing `ensemble` header".into(),
        })?;
        Ok(Ensemble::new(name, self.povms))
    }

    fn header(&mut self, line: &str, column: usize, line_no: usize) -> Result<(), ParseError> {
        if self.name.is_some() {
            return Err(ParseError::Semantic {
                line: line_no,
                column,
                message: "duplicate `ensemble` header".into(),
            });
        }
        if self.open.is_some() || !self.povms.is_empty() {
            return Err(ParseError::Semantic {
                line: line_no,
                column,
                message: "`ensemble` header must precede all povms".into(),
            });
        }
        let keyword_end = line.find("ensemble").unwrap() + "ensemble".len();
        let rest = &line[keyword_end..];
        let trimmed = rest.trim_start();
        let offset = keyword_end + (rest.len() - trimmed.len());
        let col = line[..offset].chars().count() + 1;
        let syntax = |column: usize, message: &str| ParseError::Syntax {
            line: line_no,
            column,
            message: message.to_string(),
        };
        let mut chars = trimmed.char_indices();
        match chars.next() {
            Some((_, '"')) => {}
            _ => return Err(syntax(col, "expected quoted ensemble name")),
        }
        let mut name = String::new();
        let mut end = None;
        while let Some((i, c)) = chars.next() {
            match c {
                '"' => {
                    end = Some(i + 1);
                    break;
                }
                '\\' => match chars.next() {
                    Some((_, '"')) => name.push('"'),
                    Some((_, '\\')) => name.push('\\'),
                    Some((_, 'n')) => name.push('\n'),
                    _ => return Err(syntax(col + i, "invalid escape in name")),
                },
                c => name.push(c),
            }
        }
        let end = end.ok_or_else(|| syntax(col, "unterminated quoted name"))?;
        if !trimmed[end..].trim().is_empty() {
            let extra = trimmed[end..].len() - trimmed[end..].trim_start().len();
            return Err(syntax(col + trimmed[..end + extra].chars().count(), "unexpected text after name"));
        }
        self.name = Some(name);
        Ok(())
    }

    fn povm(&mut self, line: &str, line_no: usize) -> Result<(), ParseError> {
        let tokens = tokenize(line);
        if let Some(extra) = tokens.get(1) {
            return Err(ParseError::Semantic {
                line: line_no,
                column: extra.column,
                message: "`povm` takes no arguments".into(),
            });
        }
        if self.name.is_none() {
            return Err(ParseError::Semantic {
                line: line_no,
                column: tokens[0].column,
                message: "`povm` before `ensemble` header".into(),
            });
        }
        if let Some(open) = self.open.replace(Vec::new()) {
            self.povms.push(Povm::new(open));
        }
        Ok(())
    }

    fn element(&mut self, line: &str, line_no: usize) -> Result<(), ParseError> {
        let tokens = tokenize(line);
        let Some(open) = self.open.as_mut() else {
            return Err(ParseError::Semantic {
                line: line_no,
                column: tokens[0].column,
                message: "`element` outside of a povm".into(),
            });
        };
        let args = &tokens[1..];
        if args.len() != 4 {
            let column = args.get(4).map_or(line.trim_end().chars().count() + 1, |t| t.column);
            return Err(ParseError::Semantic {
                line: line_no,
                column,
                message: format!("`element` expects 4 rationals, found {}", args.len()),
            });
        }
        let mut coeffs = Vec::with_capacity(4);
        for token in args {
            let value = parse_rational(token.text).map_err(|e| ParseError::Syntax {
                line: line_no,
                column: token.column,
                message: format!("bad rational `{}`: {e}", token.text),
            })?;
            coeffs.push(value);
        }
        let mut it = coeffs.into_iter();
        let alpha = it.next().unwrap();
        let r = [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()];
        open.push(QubitOperator::new(alpha, r));
        Ok(())
    }
}
