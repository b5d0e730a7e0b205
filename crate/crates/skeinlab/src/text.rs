//! The line-oriented diagram format.
//!
//! A document is a sequence of header lines (`surface`, `framing`,
//! `colours`, `profile`) followed by either event lines (`cup`, `cap`, `x`)
//! or a single `braid` clause. `#` starts a comment. See the repository
//! README for the grammar.

use std::fmt;

use skeinlab_core::{Colour, DiagramError, Event, Framing, MorseWord, Orientation, Over, Strand, Surface, Turn};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticClass {
    Lexical,
    Syntactic,
    Semantic,
}

impl fmt::Display for DiagnosticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagnosticClass::Lexical => "lexical",
            DiagnosticClass::Syntactic => "syntax",
            DiagnosticClass::Semantic => "semantic",
        })
    }
}

/// A located problem in a source document. Lines and columns are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct Diagnostic {
    pub class: DiagnosticClass,
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// Tokens that would have been accepted here, for syntax errors.
    pub expected: Vec<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at line {}, column {} ({} error)",
            self.message, self.line, self.column, self.class
        )?;
        if !self.expected.is_empty() {
            write!(f, "; expected one of: {}", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl Diagnostic {
    fn new(class: DiagnosticClass, line: usize, column: usize, message: impl Into<String>) -> Self {
        Diagnostic {
            class,
            line,
            column,
            message: message.into(),
            expected: Vec::new(),
        }
    }

    fn expecting(mut self, expected: &[&str]) -> Self {
        self.expected = expected.iter().map(|s| format!("`{}`", s)).collect();
        self
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Int(i64),
    Gt,
    Lt,
    Colon,
    Semi,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{}`", w),
            Tok::Int(i) => format!("`{}`", i),
            Tok::Gt => "`>`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn lex_line(line: &str, lineno: usize) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '>' => {
                out.push(Token { tok: Tok::Gt, col });
                i += 1;
            }
            '<' => {
                out.push(Token { tok: Tok::Lt, col });
                i += 1;
            }
            ':' => {
                out.push(Token { tok: Tok::Colon, col });
                i += 1;
            }
            ';' => {
                out.push(Token { tok: Tok::Semi, col });
                i += 1;
            }
            c if c.is_ascii_digit() || (c == '-' || c == '+') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text.parse::<i64>().map_err(|_| {
                    Diagnostic::new(DiagnosticClass::Lexical, lineno, col, format!("integer `{}` out of range", text))
                })?;
                out.push(Token { tok: Tok::Int(v), col });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Word(chars[start..i].iter().collect()),
                    col,
                });
            }
            other => {
                return Err(Diagnostic::new(
                    DiagnosticClass::Lexical,
                    lineno,
                    col,
                    format!("unexpected character `{}`", other.escape_debug()),
                ))
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

/// A parsed document before the framing is settled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceDocument {
    pub surface: Surface,
    /// `None` when the document does not say; annulus words then need a
    /// framing from elsewhere.
    pub framing: Option<Framing>,
    pub colours: u8,
    pub profile: Vec<Strand>,
    body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Body {
    Events(Vec<(Event, usize, usize)>),
    Braid {
        strands: usize,
        word: Vec<i32>,
        close: bool,
    },
}

struct LineCursor<'a> {
    toks: &'a [Token],
    at: usize,
    line: usize,
    line_len: usize,
}

impl<'a> LineCursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.at)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.at);
        self.at += 1;
        t
    }

    /// Reports the token just consumed (or the end of line) as unexpected.
    fn error(&self, found: Option<&Token>, expected: &[&str]) -> Diagnostic {
        let column = found.map(|t| t.col).unwrap_or(self.line_len + 1);
        let found = found.map(|t| t.tok.describe()).unwrap_or_else(|| "end of line".into());
        Diagnostic::new(DiagnosticClass::Syntactic, self.line, column, format!("unexpected {}", found))
            .expecting(expected)
    }

    fn word(&mut self, expected: &[&str]) -> Result<(&'a str, usize), Diagnostic> {
        match self.next() {
            Some(Token { tok: Tok::Word(w), col }) => Ok((w.as_str(), *col)),
            other => Err(self.error(other, expected)),
        }
    }

    fn int(&mut self, what: &str) -> Result<(i64, usize), Diagnostic> {
        match self.next() {
            Some(Token { tok: Tok::Int(v), col }) => Ok((*v, *col)),
            other => Err(self.error(other, &[what])),
        }
    }

    fn position(&mut self) -> Result<usize, Diagnostic> {
        let (v, col) = self.int("position")?;
        if v < 1 {
            return Err(Diagnostic::new(
                DiagnosticClass::Semantic,
                self.line,
                col,
                format!("position {} must be at least 1", v),
            ));
        }
        Ok(v as usize)
    }

    fn end(&mut self) -> Result<(), Diagnostic> {
        match self.next() {
            None => Ok(()),
            other => Err(self.error(other, &["end of line"])),
        }
    }
}

fn colour_token(w: &str) -> Option<Colour> {
    match w {
        "g" => Some(Colour::Slot(1)),
        "r" => Some(Colour::Slot(2)),
        "v" => Some(Colour::Slot(3)),
        "o" => Some(Colour::Orange),
        _ => None,
    }
}

fn colour_name(c: Colour) -> &'static str {
    match c {
        Colour::Slot(1) => "g",
        Colour::Slot(2) => "r",
        Colour::Slot(3) => "v",
        Colour::Orange => "o",
        Colour::Slot(_) => "?",
    }
}

/// Colours a document must declare to use `c`.
fn colours_needed(c: Colour) -> u8 {
    match c {
        Colour::Slot(s) => s,
        Colour::Orange => 2,
    }
}

const HEADERS_AND_EVENTS: &[&str] = &["surface", "framing", "colours", "profile", "cup", "cap", "x", "braid"];

#[derive(Default)]
struct Seen {
    surface: Option<usize>,
    framing: Option<usize>,
    colours: Option<usize>,
    profile: Option<usize>,
    braid: Option<usize>,
    events: Option<usize>,
}

fn duplicate(line: usize, col: usize, what: &str, first: usize) -> Diagnostic {
    Diagnostic::new(
        DiagnosticClass::Semantic,
        line,
        col,
        format!("duplicate `{}` header (first given at line {})", what, first),
    )
}

fn turn_of(cur: &mut LineCursor<'_>) -> Result<Turn, Diagnostic> {
    match cur.next() {
        Some(Token { tok: Tok::Gt, .. }) => Ok(Turn::Right),
        Some(Token { tok: Tok::Lt, .. }) => Ok(Turn::Left),
        other => Err(cur.error(other, &[">", "<"])),
    }
}

/// Parses a document without validating the diagram it describes.
pub fn parse_document(text: &str) -> Result<SourceDocument, Diagnostic> {
    let mut surface = Surface::Plane;
    let mut framing = None;
    let mut colours: Option<(u8, usize)> = None;
    let mut profile: Vec<(Strand, usize, usize)> = Vec::new();
    let mut events = Vec::new();
    let mut braid = None;
    let mut seen = Seen::default();
    // Colour uses, checked once the `colours` header is known.
    let mut uses: Vec<(Colour, usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = lex_line(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = LineCursor {
            toks: &toks,
            at: 0,
            line,
            line_len: raw.chars().count(),
        };
        let (kw, col) = cur.word(HEADERS_AND_EVENTS)?;
        match kw {
            "surface" => {
                if let Some(first) = seen.surface {
                    return Err(duplicate(line, col, "surface", first));
                }
                seen.surface = Some(line);
                let (v, _) = cur.word(&["plane", "annulus"])?;
                surface = match v {
                    "plane" => Surface::Plane,
                    "annulus" => Surface::Annulus,
                    _ => return Err(cur.error(cur.toks.get(cur.at - 1), &["plane", "annulus"])),
                };
                cur.end()?;
            }
            "framing" => {
                if let Some(first) = seen.framing {
                    return Err(duplicate(line, col, "framing", first));
                }
                seen.framing = Some(line);
                let (v, _) = cur.word(&["blackboard", "radial"])?;
                framing = Some(match v {
                    "blackboard" => Framing::Blackboard,
                    "radial" => Framing::Radial,
                    _ => return Err(cur.error(cur.toks.get(cur.at - 1), &["blackboard", "radial"])),
                });
                cur.end()?;
            }
            "colours" => {
                if let Some(first) = seen.colours {
                    return Err(duplicate(line, col, "colours", first));
                }
                seen.colours = Some(line);
                let (n, ncol) = cur.int("colour count")?;
                if !(1..=3).contains(&n) {
                    return Err(Diagnostic::new(
                        DiagnosticClass::Semantic,
                        line,
                        ncol,
                        format!("colour count {} not in 1..=3", n),
                    ));
                }
                colours = Some((n as u8, line));
                cur.end()?;
            }
            "profile" => {
                if let Some(first) = seen.profile {
                    return Err(duplicate(line, col, "profile", first));
                }
                seen.profile = Some(line);
                while cur.peek().is_some() {
                    let (o, scol) = cur.word(&["up", "down"])?;
                    let orientation = match o {
                        "up" => Orientation::Up,
                        "down" => Orientation::Down,
                        _ => return Err(cur.error(cur.toks.get(cur.at - 1), &["up", "down"])),
                    };
                    let mut colour = Colour::default();
                    if let Some(Token { tok: Tok::Colon, .. }) = cur.peek() {
                        cur.next();
                        let (c, ccol) = cur.word(&["g", "r", "v", "o"])?;
                        colour = colour_token(c).ok_or_else(|| {
                            cur.error(cur.toks.get(cur.at - 1), &["g", "r", "v", "o"])
                        })?;
                        uses.push((colour, line, ccol));
                    }
                    profile.push((Strand::new(orientation, colour), line, scol));
                }
            }
            "cup" | "cap" | "x" => {
                if let Some(b) = seen.braid {
                    return Err(Diagnostic::new(
                        DiagnosticClass::Semantic,
                        line,
                        col,
                        format!("event lines cannot follow the braid clause at line {}", b),
                    ));
                }
                seen.events.get_or_insert(line);
                let pos = cur.position()?;
                let ev = match kw {
                    "cup" => {
                        let turn = turn_of(&mut cur)?;
                        let mut colour = Colour::default();
                        if let Some(t) = cur.peek() {
                            match &t.tok {
                                Tok::Word(w) if colour_token(w).is_some() => {
                                    colour = colour_token(w).expect("checked");
                                    uses.push((colour, line, t.col));
                                    cur.next();
                                }
                                _ => {
                                    let t = cur.next();
                                    return Err(cur.error(t, &["g", "r", "v", "o", "end of line"]));
                                }
                            }
                        }
                        Event::Cup { pos, turn, colour }
                    }
                    "cap" => Event::cap(pos, turn_of(&mut cur)?),
                    _ => {
                        let over = match cur.next() {
                            Some(Token { tok: Tok::Word(w), .. }) if w == "o" => Over::Left,
                            Some(Token { tok: Tok::Word(w), .. }) if w == "u" => Over::Right,
                            other => return Err(cur.error(other, &["o", "u"])),
                        };
                        Event::crossing(pos, over)
                    }
                };
                cur.end()?;
                events.push((ev, line, col));
            }
            "braid" => {
                if let Some(first) = seen.braid {
                    return Err(duplicate(line, col, "braid", first));
                }
                if let Some(e) = seen.events {
                    return Err(Diagnostic::new(
                        DiagnosticClass::Semantic,
                        line,
                        col,
                        format!("a braid clause cannot follow event lines (first event at line {})", e),
                    ));
                }
                seen.braid = Some(line);
                let (n, ncol) = cur.int("strand count")?;
                if n < 1 {
                    return Err(Diagnostic::new(
                        DiagnosticClass::Semantic,
                        line,
                        ncol,
                        "a braid needs at least one strand",
                    ));
                }
                match cur.next() {
                    Some(Token { tok: Tok::Colon, .. }) => {}
                    other => return Err(cur.error(other, &[":"])),
                }
                let mut word = Vec::new();
                let mut close = false;
                loop {
                    match cur.next() {
                        None => break,
                        Some(Token { tok: Tok::Int(g), col: gcol }) => {
                            if *g == 0 || g.unsigned_abs() as i64 >= n {
                                return Err(Diagnostic::new(
                                    DiagnosticClass::Semantic,
                                    line,
                                    *gcol,
                                    format!("generator {} out of range for {} strands", g, n),
                                ));
                            }
                            word.push(*g as i32);
                        }
                        Some(Token { tok: Tok::Semi, .. }) => {
                            let (w, _) = cur.word(&["close"])?;
                            if w != "close" {
                                return Err(cur.error(cur.toks.get(cur.at - 1), &["close"]));
                            }
                            close = true;
                            cur.end()?;
                            break;
                        }
                        other => return Err(cur.error(other, &["generator", ";", "end of line"])),
                    }
                }
                braid = Some((n as usize, word, close, line, col));
            }
            _ => {
                return Err(cur.error(cur.toks.first(), HEADERS_AND_EVENTS));
            }
        }
    }

    let colours_n = colours.map(|(n, _)| n).unwrap_or(1);
    for (c, line, col) in uses {
        if colours_needed(c) > colours_n {
            return Err(Diagnostic::new(
                DiagnosticClass::Semantic,
                line,
                col,
                format!(
                    "colour `{}` is not declared (add `colours {}`)",
                    colour_name(c),
                    colours_needed(c)
                ),
            ));
        }
    }
    if surface == Surface::Plane {
        if let Some((_, line, col)) = profile.first() {
            return Err(Diagnostic::new(
                DiagnosticClass::Semantic,
                *line,
                *col,
                "plane diagrams have no boundary profile",
            ));
        }
        if framing == Some(Framing::Radial) {
            return Err(Diagnostic::new(
                DiagnosticClass::Semantic,
                seen.framing.unwrap_or(1),
                1,
                "radial framing is only defined on the annulus",
            ));
        }
        framing = Some(Framing::Blackboard);
    }
    let body = match braid {
        Some((strands, word, close, line, col)) => {
            if surface == Surface::Plane && !close {
                return Err(Diagnostic::new(
                    DiagnosticClass::Semantic,
                    line,
                    col,
                    "a braid in the plane must end with `; close`",
                ));
            }
            if let Some((_, pline, pcol)) = profile.first() {
                return Err(Diagnostic::new(
                    DiagnosticClass::Semantic,
                    *pline,
                    *pcol,
                    "a braid clause sets its own profile",
                ));
            }
            Body::Braid { strands, word, close }
        }
        None => Body::Events(events),
    };
    Ok(SourceDocument {
        surface,
        framing,
        colours: colours_n,
        profile: profile.into_iter().map(|(s, _, _)| s).collect(),
        body,
    })
}

impl SourceDocument {
    /// Builds and validates the word. `framing` overrides the document's
    /// own framing; an annulus word with neither is an error.
    pub fn into_word(self, framing: Option<Framing>) -> Result<MorseWord, Diagnostic> {
        let framing = match (self.surface, framing.or(self.framing)) {
            (Surface::Plane, Some(Framing::Radial)) => {
                return Err(Diagnostic::new(
                    DiagnosticClass::Semantic,
                    1,
                    1,
                    "radial framing is only defined on the annulus",
                ))
            }
            (Surface::Plane, _) => Framing::Blackboard,
            (Surface::Annulus, Some(f)) => f,
            (Surface::Annulus, None) => {
                return Err(Diagnostic::new(
                    DiagnosticClass::Semantic,
                    1,
                    1,
                    "annulus input needs a framing: add `framing radial` or `framing blackboard`, or pass --framing",
                ))
            }
        };
        let (word, locations) = match self.body {
            Body::Braid { strands, word, close } => {
                let w = match (self.surface, close) {
                    (Surface::Plane, _) => MorseWord::braid_closure(strands, &word),
                    (Surface::Annulus, true) => MorseWord {
                        surface: Surface::Annulus,
                        framing,
                        ..MorseWord::braid_closure(strands, &word)
                    },
                    (Surface::Annulus, false) => MorseWord::annulus_braid(strands, &word, framing),
                };
                (w, Vec::new())
            }
            Body::Events(events) => {
                let locations: Vec<(usize, usize)> = events.iter().map(|(_, l, c)| (*l, *c)).collect();
                let events = events.into_iter().map(|(e, _, _)| e).collect();
                let w = match self.surface {
                    Surface::Plane => MorseWord::plane(events),
                    Surface::Annulus => MorseWord::annulus(self.profile, events, framing),
                };
                (w, locations)
            }
        };
        word.validate().map_err(|e| locate(e, &locations))?;
        Ok(word)
    }
}

fn locate(e: DiagramError, locations: &[(usize, usize)]) -> Diagnostic {
    let (line, column) = match e.event {
        Some(i) => locations.get(i).copied().unwrap_or((1, 1)),
        None => locations.last().copied().unwrap_or((1, 1)),
    };
    Diagnostic::new(DiagnosticClass::Semantic, line, column, e.kind.to_string())
}

/// Parses and validates a diagram; annulus documents must name a framing.
pub fn parse_morse(text: &str) -> Result<MorseWord, Diagnostic> {
    parse_document(text)?.into_word(None)
}

/// Like [`parse_morse`], with a framing that overrides the document's.
pub fn parse_morse_with(text: &str, framing: Option<Framing>) -> Result<MorseWord, Diagnostic> {
    parse_document(text)?.into_word(framing)
}

// ---------------------------------------------------------------------------
// Serializer

fn max_colours(w: &MorseWord) -> u8 {
    w.colours().into_iter().map(colours_needed).max().unwrap_or(1)
}

fn event_text(e: &Event) -> String {
    let turn = |t: &Turn| match t {
        Turn::Right => ">",
        Turn::Left => "<",
    };
    match e {
        Event::Cup { pos, turn: t, colour } => {
            if *colour == Colour::default() {
                format!("cup {} {}", pos, turn(t))
            } else {
                format!("cup {} {} {}", pos, turn(t), colour_name(*colour))
            }
        }
        Event::Cap { pos, turn: t } => format!("cap {} {}", pos, turn(t)),
        Event::Crossing { pos, over } => format!(
            "x {} {}",
            pos,
            match over {
                Over::Left => "o",
                Over::Right => "u",
            }
        ),
    }
}

fn strand_text(s: &Strand) -> String {
    if s.colour == Colour::default() {
        s.orientation.to_string()
    } else {
        format!("{}:{}", s.orientation, colour_name(s.colour))
    }
}

/// Serializes a word in the document format; [`parse_morse`] reads it back
/// to the same word.
pub fn write_morse(w: &MorseWord) -> String {
    let mut out = String::new();
    match w.surface {
        Surface::Plane => out.push_str("surface plane\n"),
        Surface::Annulus => {
            out.push_str("surface annulus\n");
            out.push_str(match w.framing {
                Framing::Blackboard => "framing blackboard\n",
                Framing::Radial => "framing radial\n",
            });
        }
    }
    let n = max_colours(w);
    if n > 1 {
        out.push_str(&format!("colours {}\n", n));
    }
    if w.surface == Surface::Annulus {
        out.push_str("profile");
        for s in &w.profile {
            out.push(' ');
            out.push_str(&strand_text(s));
        }
        out.push('\n');
    }
    for e in &w.events {
        out.push_str(&event_text(e));
        out.push('\n');
    }
    out
}

/// The empty diagram, as a token.
pub const EMPTY_TOKEN: &str = "1_∅";

/// One-line form used inside coproduct terms: events separated by `; `, the
/// annulus profile in brackets, `1_∅` for the empty diagram.
pub fn write_morse_inline(w: &MorseWord) -> String {
    if w.is_empty() {
        return EMPTY_TOKEN.to_string();
    }
    let mut parts = Vec::new();
    if w.surface == Surface::Annulus {
        let strands: Vec<String> = w.profile.iter().map(strand_text).collect();
        parts.push(format!("[{}]", strands.join(" ")));
    }
    parts.extend(w.events.iter().map(event_text));
    parts.join("; ")
}
