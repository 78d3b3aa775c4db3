use std::collections::BTreeMap;

use super::{ErrorKind, ParseError, Pos, SourceSpan, GENERATED_PRAGMA};
use crate::marking::Marking;
use crate::model::{ActivityLabel, ArcWeight, ObjectType, OcNet, Violation, EMPTY_TYPE};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(String),
    Str(String),
    LBrace,
    RBrace,
    Semi,
    Colon,
    Arrow,
    Eq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Nat(s) => format!("number `{s}`"),
            Tok::Str(_) => "string".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    text: &'a str,
    file: Option<&'a str>,
    pos: Pos,
}

impl<'a> Lexer<'a> {
    fn peek_char(&self) -> Option<char> {
        self.text[self.pos.offset..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek_char()?;
        self.pos.offset += c.len_utf8();
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn span(&self, start: Pos) -> SourceSpan {
        SourceSpan {
            file: self.file.map(str::to_owned),
            start,
            end: self.pos,
        }
    }

    fn error(&self, start: Pos, message: impl Into<String>) -> ParseError {
        ParseError {
            kind: ErrorKind::Syntax,
            message: message.into(),
            span: self.span(start),
        }
    }

    fn next(&mut self) -> Result<(Tok, SourceSpan), ParseError> {
        loop {
            match self.peek_char() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while self.peek_char().is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let start = self.pos;
        let Some(c) = self.bump() else {
            return Ok((Tok::Eof, self.span(start)));
        };
        let tok = match c {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            '=' => Tok::Eq,
            '-' => {
                if self.peek_char() == Some('>') {
                    self.bump();
                    Tok::Arrow
                } else {
                    return Err(self.error(start, "expected `->`"));
                }
            }
            '"' => {
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None | Some('\n') => return Err(self.error(start, "unterminated string")),
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            Some('n') => s.push('\n'),
                            Some('t') => s.push('\t'),
                            _ => return Err(self.error(start, "invalid escape in string")),
                        },
                        Some(ch) => s.push(ch),
                    }
                }
                Tok::Str(s)
            }
            c if c.is_ascii_digit() => {
                while self.peek_char().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                if self.peek_char().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
                    return Err(self.error(start, "identifiers must not start with a digit"));
                }
                Tok::Nat(self.text[start.offset..self.pos.offset].to_owned())
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while self
                    .peek_char()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
                {
                    self.bump();
                }
                Tok::Ident(self.text[start.offset..self.pos.offset].to_owned())
            }
            'ε' => Tok::Ident(EMPTY_TYPE.to_owned()),
            other => return Err(self.error(start, format!("unexpected character `{other}`"))),
        };
        Ok((tok, self.span(start)))
    }
}

/// Source locations of a parsed net.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Spans {
    pub net: Option<SourceSpan>,
    pub types: BTreeMap<String, SourceSpan>,
    /// Place and transition declarations.
    pub nodes: BTreeMap<String, SourceSpan>,
    pub arcs: BTreeMap<(String, String), SourceSpan>,
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    span: SourceSpan,
    generated: bool,
    net: OcNet,
    marking: Marking,
    spans: Spans,
}

impl<'a> Parser<'a> {
    fn advance(&mut self) -> Result<(Tok, SourceSpan), ParseError> {
        let (tok, span) = self.lex.next()?;
        Ok((
            std::mem::replace(&mut self.tok, tok),
            std::mem::replace(&mut self.span, span),
        ))
    }

    fn fail<T>(&self, kind: ErrorKind, span: &SourceSpan, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            kind,
            message: message.into(),
            span: span.clone(),
        })
    }

    fn expect(&mut self, want: Tok) -> Result<SourceSpan, ParseError> {
        if self.tok == want {
            Ok(self.advance()?.1)
        } else {
            self.fail(
                ErrorKind::Syntax,
                &self.span,
                format!("expected {}, found {}", want.describe(), self.tok.describe()),
            )
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, SourceSpan), ParseError> {
        match &self.tok {
            Tok::Ident(_) => match self.advance()? {
                (Tok::Ident(s), span) => Ok((s, span)),
                _ => unreachable!(),
            },
            other => self.fail(
                ErrorKind::Syntax,
                &self.span,
                format!("expected {what}, found {}", other.describe()),
            ),
        }
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(&self.tok, Tok::Ident(s) if s == kw)
    }

    fn nat(&mut self) -> Result<(u64, SourceSpan), ParseError> {
        match &self.tok {
            Tok::Nat(s) => {
                let parsed = s.parse::<u64>();
                let span = self.span.clone();
                self.advance()?;
                match parsed {
                    Ok(n) => Ok((n, span)),
                    Err(_) => self.fail(ErrorKind::Syntax, &span, "number out of range"),
                }
            }
            other => self.fail(
                ErrorKind::Syntax,
                &self.span,
                format!("expected a number, found {}", other.describe()),
            ),
        }
    }

    fn duplicate(&self, id: &str, span: &SourceSpan) -> Result<(), ParseError> {
        match self.spans.nodes.get(id) {
            Some(prev) => self.fail(
                ErrorKind::DuplicateId,
                span,
                format!("duplicate id `{id}` (first declared at {prev})"),
            ),
            None => Ok(()),
        }
    }

    fn decl(&mut self) -> Result<(), ParseError> {
        let start = self.span.clone();
        let (kw, kw_span) = self.ident("a declaration")?;
        match kw.as_str() {
            "type" => {
                let (name, span) = self.ident("a type name")?;
                let end = self.expect(Tok::Semi)?;
                if let Some(prev) = self.spans.types.get(&name) {
                    return self.fail(
                        ErrorKind::DuplicateId,
                        &span,
                        format!("duplicate type `{name}` (first declared at {prev})"),
                    );
                }
                if name == EMPTY_TYPE {
                    if !self.generated {
                        return self.fail(
                            ErrorKind::ReservedType,
                            &span,
                            format!("the type name `{EMPTY_TYPE}` is reserved"),
                        );
                    }
                    self.net.ensure_type(ObjectType::empty());
                } else {
                    self.net
                        .add_type(name.as_str())
                        .expect("fresh, nonempty, non-reserved type");
                }
                self.spans.types.insert(name, start.join(&end));
            }
            "place" => {
                let (id, span) = self.ident("a place id")?;
                self.expect(Tok::Colon)?;
                let (ty, ty_span) = self.ident("a type name")?;
                let mut init = 0;
                if self.keyword("init") {
                    self.advance()?;
                    self.expect(Tok::Eq)?;
                    init = self.nat()?.0;
                }
                let end = self.expect(Tok::Semi)?;
                self.duplicate(&id, &span)?;
                if !self.spans.types.contains_key(&ty) {
                    return self.fail(ErrorKind::UnknownType, &ty_span, format!("unknown type `{ty}`"));
                }
                self.net.add_place(id.as_str(), ty.as_str()).expect("checked place");
                if init > 0 {
                    self.marking.set(id.clone(), init);
                }
                self.spans.nodes.insert(id, start.join(&end));
            }
            "trans" => {
                let (id, span) = self.ident("a transition id")?;
                let label = if self.keyword("tau") {
                    self.advance()?;
                    ActivityLabel::Silent
                } else if self.keyword("label") {
                    self.advance()?;
                    match self.advance()? {
                        (Tok::Str(s), sspan) => {
                            if s.is_empty() {
                                return self.fail(ErrorKind::Syntax, &sspan, "labels must be nonempty");
                            }
                            ActivityLabel::Visible(s)
                        }
                        (other, sspan) => {
                            return self.fail(
                                ErrorKind::Syntax,
                                &sspan,
                                format!("expected a string, found {}", other.describe()),
                            )
                        }
                    }
                } else {
                    return self.fail(
                        ErrorKind::Syntax,
                        &self.span,
                        format!("expected `label` or `tau`, found {}", self.tok.describe()),
                    );
                };
                let end = self.expect(Tok::Semi)?;
                self.duplicate(&id, &span)?;
                self.net.add_transition(id.as_str(), label).expect("checked transition");
                self.spans.nodes.insert(id, start.join(&end));
            }
            "arc" => {
                let (from, from_span) = self.ident("an arc source")?;
                self.expect(Tok::Arrow)?;
                let (to, to_span) = self.ident("an arc target")?;
                self.expect(Tok::Colon)?;
                let weight = if self.keyword("var") {
                    self.advance()?;
                    ArcWeight::Var
                } else {
                    let (k, kspan) = self.nat()?;
                    if k == 0 {
                        return self.fail(ErrorKind::ZeroWeight, &kspan, "arc weights must be positive");
                    }
                    match u32::try_from(k).ok().and_then(ArcWeight::nat) {
                        Some(w) => w,
                        None => return self.fail(ErrorKind::Syntax, &kspan, "arc weight out of range"),
                    }
                };
                let end = self.expect(Tok::Semi)?;
                let span = start.join(&end);
                for (id, s) in [(&from, &from_span), (&to, &to_span)] {
                    if !self.net.contains_node(id) {
                        return self.fail(ErrorKind::UnknownNode, s, format!("unknown place or transition `{id}`"));
                    }
                }
                let key = (from.clone(), to.clone());
                if let Some(prev) = self.spans.arcs.get(&key) {
                    return self.fail(
                        ErrorKind::DuplicateId,
                        &span,
                        format!("duplicate arc {from} -> {to} (first declared at {prev})"),
                    );
                }
                if self.net.add_arc(&from, &to, weight).is_err() {
                    return self.fail(
                        ErrorKind::InvalidArc,
                        &span,
                        format!("arc {from} -> {to} must connect a place and a transition"),
                    );
                }
                self.spans.arcs.insert(key, span);
            }
            other => {
                return self.fail(
                    ErrorKind::Syntax,
                    &kw_span,
                    format!("expected `type`, `place`, `trans` or `arc`, found `{other}`"),
                )
            }
        }
        Ok(())
    }

    fn net(&mut self) -> Result<(), ParseError> {
        let start = self.span.clone();
        match &self.tok {
            Tok::Ident(s) if s == "ocnet" => {
                self.advance()?;
            }
            other => {
                return self.fail(
                    ErrorKind::Syntax,
                    &self.span,
                    format!("expected `ocnet`, found {}", other.describe()),
                )
            }
        }
        let (name, _) = self.ident("a net name")?;
        self.net.set_name(name);
        self.expect(Tok::LBrace)?;
        while self.tok != Tok::RBrace {
            if self.tok == Tok::Eof {
                return self.fail(ErrorKind::Syntax, &self.span, "expected `}`, found end of input");
            }
            self.decl()?;
        }
        let end = self.expect(Tok::RBrace)?;
        if self.tok != Tok::Eof {
            return self.fail(
                ErrorKind::Syntax,
                &self.span,
                format!("unexpected {} after the net", self.tok.describe()),
            );
        }
        self.spans.net = Some(start.join(&end));
        Ok(())
    }

    fn check_violations(&self) -> Result<(), ParseError> {
        let Some(v) = self.net.validate().into_iter().next() else {
            return Ok(());
        };
        let span = match &v {
            Violation::UnpairedVariableOutput { transition, place } => self.spans.arcs.get(&(transition.clone(), place.clone())),
            Violation::UnpairedVariableInput { transition, place } => self.spans.arcs.get(&(place.clone(), transition.clone())),
            Violation::MixedTypeAdjacency { transition, place } => self
                .spans
                .arcs
                .get(&(place.clone(), transition.clone()))
                .or_else(|| self.spans.arcs.get(&(transition.clone(), place.clone()))),
            Violation::AmbiguousVariablePair { transition, .. } => self.spans.nodes.get(transition),
        };
        let span = span.or(self.spans.net.as_ref()).expect("parsed net has a span");
        self.fail(ErrorKind::InvalidNet, span, v.to_string())
    }
}

/// Parses a net and the initial marking given by its `init` annotations.
pub fn parse(text: &str) -> Result<(OcNet, Marking), ParseError> {
    parse_with_spans(text, None).map(|(n, m, _)| (n, m))
}

/// [`parse`] with the file name used in diagnostics.
pub fn parse_file(text: &str, file: &str) -> Result<(OcNet, Marking), ParseError> {
    parse_with_spans(text, Some(file)).map(|(n, m, _)| (n, m))
}

/// [`parse`] also returning the source location of every declaration.
pub fn parse_with_spans(text: &str, file: Option<&str>) -> Result<(OcNet, Marking, Spans), ParseError> {
    let mut lex = Lexer {
        text,
        file,
        pos: Pos {
            offset: 0,
            line: 1,
            column: 1,
        },
    };
    let (tok, span) = lex.next()?;
    let generated = text.lines().next().is_some_and(|l| l.trim_end() == GENERATED_PRAGMA);
    let mut p = Parser {
        lex,
        tok,
        span,
        generated,
        net: OcNet::new(""),
        marking: Marking::new(),
        spans: Spans::default(),
    };
    p.net()?;
    p.check_violations()?;
    Ok((p.net, p.marking, p.spans))
}
