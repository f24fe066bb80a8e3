use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactalg::{Int, Rational};
use crate::front::{AbstractLinkData, FrontDiagram, FrontError, MorseEvent};
use crate::surgery::{ContactSurgeryDiagram, SurgeryCoefficient};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownLabel(String),
    DuplicateSurgery(String),
    DuplicateKnot(String),
    MixedModes,
    ZeroSurgery,
    InvalidFront(FrontError),
    FrontOnly(&'static str),
    AbstractOnly(&'static str),
}

impl ParseErrorKind {
    /// Stable reason code for machine consumption.
    pub fn code(&self) -> &'static str {
        match self {
            ParseErrorKind::Syntax(_) => "syntax-error",
            ParseErrorKind::UnknownLabel(_) => "unknown-label",
            ParseErrorKind::DuplicateSurgery(_) => "duplicate-surgery",
            ParseErrorKind::DuplicateKnot(_) => "duplicate-knot",
            ParseErrorKind::MixedModes => "mixed-modes",
            ParseErrorKind::ZeroSurgery => "zero-surgery",
            ParseErrorKind::InvalidFront(_) => "invalid-front",
            ParseErrorKind::FrontOnly(_) => "front-only-statement",
            ParseErrorKind::AbstractOnly(_) => "abstract-only-statement",
        }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownLabel(name) => write!(f, "unknown label `{name}`"),
            ParseErrorKind::DuplicateSurgery(name) => {
                write!(f, "duplicate surgery assignment for `{name}`")
            }
            ParseErrorKind::DuplicateKnot(name) => write!(f, "duplicate knot `{name}`"),
            ParseErrorKind::MixedModes => {
                write!(f, "front and abstract modes cannot be mixed in one document")
            }
            ParseErrorKind::ZeroSurgery => write!(f, "0-surgery excluded"),
            ParseErrorKind::InvalidFront(e) => write!(f, "invalid front: {e}"),
            ParseErrorKind::FrontOnly(stmt) => {
                write!(f, "`{stmt}` applies to front diagrams only")
            }
            ParseErrorKind::AbstractOnly(stmt) => {
                write!(f, "`{stmt}` applies to abstract diagrams only")
            }
        }
    }
}

/// A parsed document: the diagram plus the source position of every front
/// event (line, column), in event order.
#[derive(Clone, Debug)]
pub struct ParsedDocument {
    pub diagram: ContactSurgeryDiagram,
    pub event_spans: Vec<(usize, usize)>,
}

/// A document read as a framed smooth link: the surgery integers are
/// topological framings (zero allowed), the knot data supplies the
/// Legendrian hints. `None` marks components without a framing statement.
#[derive(Clone, Debug)]
pub struct ParsedFramedLink {
    pub link: crate::front::LinkData,
    pub framings: Vec<Option<Rational>>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(Int),
    LBrace,
    RBrace,
    Semi,
    Eq,
    Slash,
    Plus,
    Minus,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
        }
    }
}

struct Lexer {
    tokens: Vec<(Tok, usize, usize)>,
    end: (usize, usize),
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if let Some(c) = c {
                if c == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump!();
                }
            }
            '{' => {
                bump!();
                tokens.push((Tok::LBrace, l0, c0));
            }
            '}' => {
                bump!();
                tokens.push((Tok::RBrace, l0, c0));
            }
            ';' => {
                bump!();
                tokens.push((Tok::Semi, l0, c0));
            }
            '=' => {
                bump!();
                tokens.push((Tok::Eq, l0, c0));
            }
            '/' => {
                bump!();
                tokens.push((Tok::Slash, l0, c0));
            }
            '+' | '-' => {
                bump!();
                if chars.peek().is_some_and(char::is_ascii_digit) {
                    let mut digits = String::new();
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_digit() {
                            digits.push(d);
                            bump!();
                        } else {
                            break;
                        }
                    }
                    let mut n: Int = digits.parse().expect("digit string");
                    if c == '-' {
                        n = -n;
                    }
                    tokens.push((Tok::Int(n), l0, c0));
                } else if c == '+' {
                    tokens.push((Tok::Plus, l0, c0));
                } else {
                    tokens.push((Tok::Minus, l0, c0));
                }
            }
            d if d.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        bump!();
                    } else {
                        break;
                    }
                }
                tokens.push((Tok::Int(digits.parse().expect("digit string")), l0, c0));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        bump!();
                    } else {
                        break;
                    }
                }
                tokens.push((Tok::Ident(name), l0, c0));
            }
            other => {
                return Err(ParseError {
                    line: l0,
                    col: c0,
                    kind: ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                })
            }
        }
    }
    Ok(Lexer {
        tokens,
        end: (line, col),
    })
}

struct Parser {
    tokens: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, kind }
    }

    fn err_at(&self, (line, col): (usize, usize), kind: ParseErrorKind) -> ParseError {
        ParseError { line, col, kind }
    }

    fn next(&mut self) -> Option<(Tok, usize, usize)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(usize, usize), ParseError> {
        match self.next() {
            Some((t, l, c)) if t == want => Ok((l, c)),
            Some((t, l, c)) => Err(self.err_at(
                (l, c),
                ParseErrorKind::Syntax(format!("expected {want}, found {t}")),
            )),
            None => Err(self.err(ParseErrorKind::Syntax(format!(
                "expected {want}, found end of input"
            )))),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<(Int, usize, usize), ParseError> {
        match self.next() {
            Some((Tok::Int(n), l, c)) => Ok((n, l, c)),
            Some((t, l, c)) => Err(self.err_at(
                (l, c),
                ParseErrorKind::Syntax(format!("expected {what}, found {t}")),
            )),
            None => Err(self.err(ParseErrorKind::Syntax(format!(
                "expected {what}, found end of input"
            )))),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, usize, usize), ParseError> {
        match self.next() {
            Some((Tok::Ident(s), l, c)) => Ok((s, l, c)),
            Some((t, l, c)) => Err(self.err_at(
                (l, c),
                ParseErrorKind::Syntax(format!("expected {what}, found {t}")),
            )),
            None => Err(self.err(ParseErrorKind::Syntax(format!(
                "expected {what}, found end of input"
            )))),
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<(), ParseError> {
        let (name, l, c) = self.expect_ident(&format!("`{word}`"))?;
        if name == word {
            Ok(())
        } else {
            Err(self.err_at(
                (l, c),
                ParseErrorKind::Syntax(format!("expected `{word}`, found `{name}`")),
            ))
        }
    }
}

enum Mode {
    Unset,
    Front,
    Abstract,
}

#[derive(Clone)]
struct KnotDecl {
    name: String,
    tb: Int,
    rot: Int,
}

/// An assigned value (`None` = `inf`) plus the source position of the
/// coefficient token.
type RawCoefficient = (Option<Rational>, (usize, usize));

struct RawDocument {
    link: crate::front::LinkData,
    event_spans: Vec<(usize, usize)>,
    coefficients: Vec<Option<RawCoefficient>>,
}

/// Parses a `.csd` document into a validated diagram.
pub fn parse(text: &str) -> Result<ParsedDocument, ParseError> {
    let raw = parse_raw(text)?;
    let mut coefficients = vec![SurgeryCoefficient::Infinity; raw.coefficients.len()];
    for (i, slot) in raw.coefficients.iter().enumerate() {
        if let Some((value, span)) = slot {
            coefficients[i] = match value {
                None => SurgeryCoefficient::Infinity,
                Some(r) => SurgeryCoefficient::finite(r.clone()).map_err(|_| ParseError {
                    line: span.0,
                    col: span.1,
                    kind: ParseErrorKind::ZeroSurgery,
                })?,
            };
        }
    }
    let diagram = ContactSurgeryDiagram::new(raw.link, coefficients)
        .expect("coefficient count matches construction");
    Ok(ParsedDocument {
        diagram,
        event_spans: raw.event_spans,
    })
}

/// Parses a document as a framed smooth link: surgery integers become
/// topological framings, and zero framings are legal.
pub fn parse_framed_link(text: &str) -> Result<ParsedFramedLink, ParseError> {
    let raw = parse_raw(text)?;
    let framings = raw
        .coefficients
        .into_iter()
        .map(|slot| slot.and_then(|(value, _)| value))
        .collect();
    Ok(ParsedFramedLink {
        link: raw.link,
        framings,
    })
}

fn parse_raw(text: &str) -> Result<RawDocument, ParseError> {
    let lexer = lex(text)?;
    let mut p = Parser {
        tokens: lexer.tokens,
        pos: 0,
        end: lexer.end,
    };

    let mut mode = Mode::Unset;
    let mut events: Vec<MorseEvent> = Vec::new();
    let mut event_spans: Vec<(usize, usize)> = Vec::new();
    let mut knots: Vec<KnotDecl> = Vec::new();
    let mut lk_decls: Vec<(String, String, Int, (usize, usize))> = Vec::new();
    let mut labels: Vec<(Int, String, (usize, usize))> = Vec::new();
    let mut orients: Vec<(Int, bool, (usize, usize))> = Vec::new();
    struct SurgeryStmt {
        target: Result<Int, String>,
        value: Option<Rational>,
        coeff_span: (usize, usize),
        span: (usize, usize),
        display: String,
    }
    let mut surgeries: Vec<SurgeryStmt> = Vec::new();

    while let Some(tok) = p.peek() {
        let stmt_span = p.here();
        let Tok::Ident(word) = tok else {
            return Err(p.err(ParseErrorKind::Syntax(format!(
                "expected a statement keyword, found {tok}"
            ))));
        };
        match word.as_str() {
            "front" => {
                match mode {
                    Mode::Unset => mode = Mode::Front,
                    Mode::Front => {}
                    Mode::Abstract => return Err(p.err_at(stmt_span, ParseErrorKind::MixedModes)),
                }
                p.next();
                p.expect(Tok::LBrace)?;
                loop {
                    match p.peek() {
                        Some(Tok::RBrace) => {
                            p.next();
                            break;
                        }
                        Some(Tok::Ident(_)) => {
                            let (name, l, c) = p.expect_ident("an event")?;
                            let event = parse_event(&name).ok_or_else(|| {
                                p.err_at(
                                    (l, c),
                                    ParseErrorKind::Syntax(format!(
                                        "expected an event like `L1`, found `{name}`"
                                    )),
                                )
                            })?;
                            p.expect(Tok::Semi)?;
                            events.push(event);
                            event_spans.push((l, c));
                        }
                        Some(t) => {
                            let msg = format!("expected an event or `}}`, found {t}");
                            return Err(p.err(ParseErrorKind::Syntax(msg)));
                        }
                        None => {
                            return Err(p.err(ParseErrorKind::Syntax(
                                "unclosed `front` block".into(),
                            )))
                        }
                    }
                }
            }
            "abstract" => {
                match mode {
                    Mode::Unset => mode = Mode::Abstract,
                    Mode::Abstract => {}
                    Mode::Front => return Err(p.err_at(stmt_span, ParseErrorKind::MixedModes)),
                }
                p.next();
            }
            "knot" => {
                if matches!(mode, Mode::Front) {
                    return Err(p.err_at(stmt_span, ParseErrorKind::MixedModes));
                }
                mode = Mode::Abstract;
                p.next();
                let (name, nl, nc) = p.expect_ident("a knot name")?;
                if is_keyword(&name) {
                    return Err(p.err_at(
                        (nl, nc),
                        ParseErrorKind::Syntax(format!("`{name}` is a reserved word")),
                    ));
                }
                if knots.iter().any(|k| k.name == name) {
                    return Err(p.err_at((nl, nc), ParseErrorKind::DuplicateKnot(name)));
                }
                p.expect_keyword("tb")?;
                p.expect(Tok::Eq)?;
                let (tb, _, _) = p.expect_int("the tb value")?;
                p.expect_keyword("rot")?;
                p.expect(Tok::Eq)?;
                let (rot, _, _) = p.expect_int("the rot value")?;
                p.expect(Tok::Semi)?;
                knots.push(KnotDecl { name, tb, rot });
            }
            "lk" => {
                if matches!(mode, Mode::Front) {
                    return Err(p.err_at(stmt_span, ParseErrorKind::MixedModes));
                }
                mode = Mode::Abstract;
                p.next();
                let (a, al, ac) = p.expect_ident("a knot name")?;
                let (b, _, _) = p.expect_ident("a knot name")?;
                p.expect(Tok::Eq)?;
                let (v, _, _) = p.expect_int("the linking number")?;
                p.expect(Tok::Semi)?;
                lk_decls.push((a, b, v, (al, ac)));
            }
            "label" => {
                p.next();
                let (idx, il, ic) = p.expect_int("a component index")?;
                let (name, nl, nc) = p.expect_ident("a label name")?;
                if is_keyword(&name) {
                    return Err(p.err_at(
                        (nl, nc),
                        ParseErrorKind::Syntax(format!("`{name}` is a reserved word")),
                    ));
                }
                labels.push((idx, name, (il, ic)));
            }
            "orient" => {
                p.next();
                let (idx, il, ic) = p.expect_int("a component index")?;
                let rightward = match p.next() {
                    Some((Tok::Plus, _, _)) => true,
                    Some((Tok::Minus, _, _)) => false,
                    Some((t, l, c)) => {
                        return Err(p.err_at(
                            (l, c),
                            ParseErrorKind::Syntax(format!("expected `+` or `-`, found {t}")),
                        ))
                    }
                    None => {
                        return Err(p.err(ParseErrorKind::Syntax(
                            "expected `+` or `-`, found end of input".into(),
                        )))
                    }
                };
                orients.push((idx, rightward, (il, ic)));
            }
            "surgery" => {
                p.next();
                let (target, display, span) = match p.next() {
                    Some((Tok::Int(n), l, c)) => (Ok(n.clone()), n.to_string(), (l, c)),
                    Some((Tok::Ident(s), l, c)) => (Err(s.clone()), s, (l, c)),
                    Some((t, l, c)) => {
                        return Err(p.err_at(
                            (l, c),
                            ParseErrorKind::Syntax(format!(
                                "expected a component index or label, found {t}"
                            )),
                        ))
                    }
                    None => {
                        return Err(p.err(ParseErrorKind::Syntax(
                            "expected a component index or label".into(),
                        )))
                    }
                };
                p.expect(Tok::Eq)?;
                let (value, coeff_span) = parse_coefficient(&mut p)?;
                surgeries.push(SurgeryStmt {
                    target,
                    value,
                    coeff_span,
                    span,
                    display,
                });
            }
            other => {
                return Err(p.err(ParseErrorKind::Syntax(format!(
                    "unknown statement `{other}`"
                ))))
            }
        }
    }

    // Assemble the link.
    let (link, label_names): (crate::front::LinkData, Vec<Option<String>>) = match mode {
        Mode::Abstract => {
            let t = knots.len();
            let index_of = |name: &str| knots.iter().position(|k| k.name == name);
            let mut lk = vec![vec![Int::zero(); t]; t];
            let mut seen_lk = vec![vec![false; t]; t];
            for (a, b, v, span) in &lk_decls {
                let (Some(i), Some(j)) = (index_of(a), index_of(b)) else {
                    let missing = if index_of(a).is_none() { a } else { b };
                    return Err(p.err_at(*span, ParseErrorKind::UnknownLabel(missing.clone())));
                };
                if i == j {
                    return Err(p.err_at(
                        *span,
                        ParseErrorKind::Syntax(format!("`{a}` cannot link itself")),
                    ));
                }
                if seen_lk[i][j] {
                    return Err(p.err_at(
                        *span,
                        ParseErrorKind::Syntax(format!("duplicate lk declaration for `{a}` `{b}`")),
                    ));
                }
                seen_lk[i][j] = true;
                seen_lk[j][i] = true;
                lk[i][j] = v.clone();
                lk[j][i] = v.clone();
            }
            if let Some((_, _, span)) = orients.first() {
                return Err(p.err_at(*span, ParseErrorKind::FrontOnly("orient")));
            }
            let mut data = AbstractLinkData::new(
                knots.iter().map(|k| k.tb.clone()).collect(),
                knots.iter().map(|k| k.rot.clone()).collect(),
                lk,
            );
            data.labels = knots.iter().map(|k| Some(k.name.clone())).collect();
            for (idx, name, span) in &labels {
                let i = usize::try_from(idx).ok().filter(|i| (1..=t).contains(i));
                let Some(i) = i else {
                    return Err(p.err_at(*span, ParseErrorKind::UnknownLabel(idx.to_string())));
                };
                data.labels[i - 1] = Some(name.clone());
            }
            let names = data.labels.clone();
            (crate::front::LinkData::Abstract(data), names)
        }
        Mode::Front | Mode::Unset => {
            debug_assert!(knots.is_empty(), "knot declarations force abstract mode");
            let mut front = FrontDiagram::from_word(events).map_err(|e| {
                let span = match &e {
                    FrontError::SlotOutOfRange { event, .. } => event_spans[*event],
                    _ => event_spans.last().copied().unwrap_or((1, 1)),
                };
                p.err_at(span, ParseErrorKind::InvalidFront(e))
            })?;
            let count = front.component_count();
            let resolve_index = |idx: &Int, span: (usize, usize)| -> Result<usize, ParseError> {
                let i = usize::try_from(idx).ok().filter(|i| (1..=count).contains(i));
                i.map(|i| i - 1).ok_or_else(|| {
                    p.err_at(span, ParseErrorKind::UnknownLabel(idx.to_string()))
                })
            };
            for (idx, name, span) in &labels {
                let i = resolve_index(idx, *span)?;
                front.set_label(i, Some(name.clone())).unwrap();
            }
            for (idx, rightward, span) in &orients {
                let i = resolve_index(idx, *span)?;
                front.set_seed(i, *rightward).unwrap();
            }
            let names = front.labels().to_vec();
            (crate::front::LinkData::Front(front), names)
        }
    };

    // Resolve surgery statements.
    let count = link.component_count();
    let mut coefficients = vec![None; count];
    for stmt in &surgeries {
        let index = match &stmt.target {
            Ok(idx) => usize::try_from(idx)
                .ok()
                .filter(|i| (1..=count).contains(i))
                .map(|i| i - 1),
            Err(name) => label_names
                .iter()
                .position(|l| l.as_deref() == Some(name.as_str())),
        };
        let Some(i) = index else {
            return Err(p.err_at(
                stmt.span,
                ParseErrorKind::UnknownLabel(stmt.display.clone()),
            ));
        };
        if coefficients[i].is_some() {
            return Err(p.err_at(
                stmt.span,
                ParseErrorKind::DuplicateSurgery(stmt.display.clone()),
            ));
        }
        coefficients[i] = Some((stmt.value.clone(), stmt.coeff_span));
    }

    Ok(RawDocument {
        link,
        event_spans,
        coefficients,
    })
}

fn parse_event(name: &str) -> Option<MorseEvent> {
    let (kind, digits) = name.split_at(1);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let slot: usize = digits.parse().ok()?;
    match kind {
        "L" => Some(MorseEvent::LeftCusp(slot)),
        "R" => Some(MorseEvent::RightCusp(slot)),
        "X" => Some(MorseEvent::Crossing(slot)),
        _ => None,
    }
}

/// Parses `INT`, `INT / INT` or `inf`; zero handling is the caller's
/// business (surgery coefficients exclude it, framings allow it).
fn parse_coefficient(
    p: &mut Parser,
) -> Result<(Option<Rational>, (usize, usize)), ParseError> {
    match p.next() {
        Some((Tok::Int(n), l, c)) => {
            if matches!(p.peek(), Some(Tok::Slash)) {
                p.next();
                let (d, dl, dc) = p.expect_int("a denominator")?;
                if d.is_zero() {
                    return Err(p.err_at(
                        (dl, dc),
                        ParseErrorKind::Syntax("zero denominator".into()),
                    ));
                }
                Ok((Some(Rational::new(n, d)), (l, c)))
            } else {
                Ok((Some(Rational::from(n)), (l, c)))
            }
        }
        Some((Tok::Ident(s), l, c)) if s == "inf" => Ok((None, (l, c))),
        Some((t, l, c)) => Err(p.err_at(
            (l, c),
            ParseErrorKind::Syntax(format!("expected a surgery coefficient, found {t}")),
        )),
        None => Err(p.err(ParseErrorKind::Syntax(
            "expected a surgery coefficient, found end of input".into(),
        ))),
    }
}

fn is_keyword(name: &str) -> bool {
    matches!(
        name,
        "front" | "abstract" | "label" | "orient" | "surgery" | "knot" | "lk" | "tb" | "rot"
            | "inf"
    )
}
