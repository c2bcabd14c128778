//! Parser and canonical printer for the ASCII sentence syntax.
//!
//! Grammar (precedence from loosest to tightest):
//!
//! ```text
//! sentence := ('exists'|'forall') ID '.' sentence | implies
//! implies  := or ('->' implies)?                    (right-associative)
//! or       := and ('|' and)*                        (left-associative)
//! and      := unary ('&' unary)*                    (left-associative)
//! unary    := '!' unary | '<>' unary | '[]' unary
//!           | '<' ID '>' '(' sentence {',' sentence} ')'
//!           | '[' ID ']' '(' sentence {',' sentence} ')'
//!           | 'nom' ID | '@' ID unary
//!           | '(' sentence ')' | atom
//! atom     := ID | ID '(' term {',' term} ')'
//! term     := ID | ID '(' term {',' term} ')'
//! ```
//!
//! `ID`, `<>`, `[]`, `nom`/`@` targets and quantifier binders may carry a
//! layer suffix `^0`/`^1` (double-layered logic); an untagged token means the
//! outer layer.

use crate::error::{Error, Result};
use crate::logic::{capabilities, LogicId};
use crate::sentence::{check_sentence, Layer, Sentence, Term, DEFAULT_LAYER};
use crate::signature::SignatureDesc;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String, Option<Layer>),
    KwNom,
    KwExists,
    KwForall,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Dia(Layer),
    Boxm(Layer),
    Lt,
    Gt,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Comma,
    Dot,
    AtSign,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    // Reads an optional `^0` / `^1` suffix starting at `i`.
    let suffix = |i: &mut usize| -> Result<Option<Layer>> {
        if bytes.get(*i) == Some(&b'^') {
            let d = bytes.get(*i + 1).copied();
            match d {
                Some(b'0') => {
                    *i += 2;
                    Ok(Some(0))
                }
                Some(b'1') => {
                    *i += 2;
                    Ok(Some(1))
                }
                _ => Err(err(*i, "layer suffix must be ^0 or ^1")),
            }
        } else {
            Ok(None)
        }
    };
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '!' => {
                i += 1;
                out.push((start, Tok::Bang));
            }
            '&' => {
                i += 1;
                out.push((start, Tok::Amp));
            }
            '|' => {
                i += 1;
                out.push((start, Tok::Pipe));
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    i += 2;
                    out.push((start, Tok::Arrow));
                } else {
                    return Err(err(i, "expected `->`"));
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    i += 2;
                    let layer = suffix(&mut i)?.unwrap_or(DEFAULT_LAYER);
                    out.push((start, Tok::Dia(layer)));
                } else {
                    i += 1;
                    out.push((start, Tok::Lt));
                }
            }
            '>' => {
                i += 1;
                out.push((start, Tok::Gt));
            }
            '[' => {
                if bytes.get(i + 1) == Some(&b']') {
                    i += 2;
                    let layer = suffix(&mut i)?.unwrap_or(DEFAULT_LAYER);
                    out.push((start, Tok::Boxm(layer)));
                } else {
                    i += 1;
                    out.push((start, Tok::LBrack));
                }
            }
            ']' => {
                i += 1;
                out.push((start, Tok::RBrack));
            }
            '(' => {
                i += 1;
                out.push((start, Tok::LParen));
            }
            ')' => {
                i += 1;
                out.push((start, Tok::RParen));
            }
            ',' => {
                i += 1;
                out.push((start, Tok::Comma));
            }
            '.' => {
                i += 1;
                out.push((start, Tok::Dot));
            }
            '@' => {
                i += 1;
                out.push((start, Tok::AtSign));
            }
            _ if c.is_ascii_alphabetic() => {
                let mut j = i + 1;
                while j < bytes.len()
                    && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let word = &text[i..j];
                i = j;
                match word {
                    "nom" => out.push((start, Tok::KwNom)),
                    "exists" => out.push((start, Tok::KwExists)),
                    "forall" => out.push((start, Tok::KwForall)),
                    _ => {
                        let layer = suffix(&mut i)?;
                        out.push((start, Tok::Id(word.to_string(), layer)));
                    }
                }
            }
            _ => return Err(err(i, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    logic: LogicId,
    sig: &'a SignatureDesc,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, desc: &str) -> Result<()> {
        let p = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(err(p, format!("expected {desc}"))),
        }
    }

    fn ident(&mut self, desc: &str) -> Result<(String, Option<Layer>)> {
        let p = self.here();
        match self.bump() {
            Some(Tok::Id(name, layer)) => Ok((name, layer)),
            _ => Err(err(p, format!("expected {desc}"))),
        }
    }

    fn layer_of(&self, tagged: Option<Layer>) -> Layer {
        tagged.unwrap_or(DEFAULT_LAYER)
    }

    fn sentence(&mut self) -> Result<Sentence> {
        match self.peek() {
            Some(Tok::KwExists) | Some(Tok::KwForall) => {
                let universal = matches!(self.peek(), Some(Tok::KwForall));
                let p = self.here();
                self.bump();
                let (name, tag) = self.ident("a bound symbol after the quantifier")?;
                self.expect(Tok::Dot, "`.` after the bound symbol")?;
                let body = self.sentence()?;
                self.build_quantifier(p, universal, name, tag, body)
            }
            _ => self.implies(),
        }
    }

    fn build_quantifier(
        &self,
        p: usize,
        universal: bool,
        name: String,
        tag: Option<Layer>,
        body: Sentence,
    ) -> Result<Sentence> {
        let caps = capabilities(self.logic);
        let layer = self.layer_of(tag);
        let as_nom = |b: Sentence| {
            if universal {
                Sentence::ForallNom(layer, name.clone(), Box::new(b))
            } else {
                Sentence::ExistsNom(layer, name.clone(), Box::new(b))
            }
        };
        let as_var = |b: Sentence| {
            if universal {
                Sentence::ForallVar(name.clone(), Box::new(b))
            } else {
                Sentence::ExistsVar(name.clone(), Box::new(b))
            }
        };
        match (caps.exists_var, caps.exists_nom) {
            (true, false) => Ok(as_var(body)),
            (false, true) => Ok(as_nom(body)),
            (true, true) => {
                // An explicit layer tag marks a nominal binder outright.
                if tag.is_some() {
                    return Ok(as_nom(body));
                }
                // Otherwise classify by how the bound name is used.
                let (nom_use, var_use) = occurrences(&body, &name);
                match (nom_use, var_use) {
                    (true, true) => Err(err(
                        p,
                        format!("`{name}` is used both as a nominal and as a variable"),
                    )),
                    (true, false) => Ok(as_nom(body)),
                    _ => Ok(as_var(body)),
                }
            }
            (false, false) => Err(err(p, format!("logic {} has no quantifiers", self.logic))),
        }
    }

    fn implies(&mut self) -> Result<Sentence> {
        let lhs = self.or()?;
        if matches!(self.peek(), Some(Tok::Arrow)) {
            self.bump();
            let rhs = self.implies()?;
            Ok(Sentence::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Sentence> {
        let mut lhs = self.and()?;
        while matches!(self.peek(), Some(Tok::Pipe)) {
            self.bump();
            let rhs = self.and()?;
            lhs = Sentence::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Sentence> {
        let mut lhs = self.unary()?;
        while matches!(self.peek(), Some(Tok::Amp)) {
            self.bump();
            let rhs = self.unary()?;
            lhs = Sentence::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn arg_list(&mut self) -> Result<Vec<Sentence>> {
        self.expect(Tok::LParen, "`(` before the modality arguments")?;
        let mut args = vec![self.sentence()?];
        while matches!(self.peek(), Some(Tok::Comma)) {
            self.bump();
            args.push(self.sentence()?);
        }
        self.expect(Tok::RParen, "`)` after the modality arguments")?;
        Ok(args)
    }

    fn unary(&mut self) -> Result<Sentence> {
        let p = self.here();
        match self.peek().cloned() {
            Some(Tok::Bang) => {
                self.bump();
                Ok(Sentence::not(self.unary()?))
            }
            Some(Tok::Dia(layer)) => {
                self.bump();
                Ok(Sentence::Dia(layer, Box::new(self.unary()?)))
            }
            Some(Tok::Boxm(layer)) => {
                self.bump();
                Ok(Sentence::BoxM(layer, Box::new(self.unary()?)))
            }
            Some(Tok::Lt) => {
                self.bump();
                let (name, _) = self.ident("a modality name after `<`")?;
                self.expect(Tok::Gt, "`>` after the modality name")?;
                Ok(Sentence::PolyDia(name, self.arg_list()?))
            }
            Some(Tok::LBrack) => {
                self.bump();
                let (name, _) = self.ident("a modality name after `[`")?;
                self.expect(Tok::RBrack, "`]` after the modality name")?;
                Ok(Sentence::PolyBox(name, self.arg_list()?))
            }
            Some(Tok::KwNom) => {
                self.bump();
                let (name, tag) = self.ident("a nominal after `nom`")?;
                Ok(Sentence::Nom(self.layer_of(tag), name))
            }
            Some(Tok::AtSign) => {
                self.bump();
                let (name, tag) = self.ident("a nominal after `@`")?;
                let body = self.unary()?;
                Ok(Sentence::At(self.layer_of(tag), name, Box::new(body)))
            }
            Some(Tok::LParen) => {
                self.bump();
                let s = self.sentence()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(s)
            }
            Some(Tok::Id(_, _)) => self.atom(),
            _ => Err(err(p, "expected a sentence")),
        }
    }

    fn atom(&mut self) -> Result<Sentence> {
        let p = self.here();
        let (name, tag) = self.ident("an atom")?;
        if tag.is_some() {
            return Err(err(p, "layer suffixes are not allowed on atoms"));
        }
        if matches!(self.peek(), Some(Tok::LParen)) {
            self.bump();
            let mut args = vec![self.term()?];
            while matches!(self.peek(), Some(Tok::Comma)) {
                self.bump();
                args.push(self.term()?);
            }
            self.expect(Tok::RParen, "`)` after the argument terms")?;
            return Ok(Sentence::FolAtom(name, args));
        }
        if self.sig.props.contains(&name) {
            Ok(Sentence::Prop(name))
        } else if self.sig.preds.get(&name) == Some(&0) {
            Ok(Sentence::FolAtom(name, Vec::new()))
        } else {
            Err(err(p, format!("`{name}` is neither a proposition nor a nullary predicate")))
        }
    }

    fn term(&mut self) -> Result<Term> {
        let p = self.here();
        let (name, tag) = self.ident("a term")?;
        if tag.is_some() {
            return Err(err(p, "layer suffixes are not allowed in terms"));
        }
        if matches!(self.peek(), Some(Tok::LParen)) {
            self.bump();
            let mut args = vec![self.term()?];
            while matches!(self.peek(), Some(Tok::Comma)) {
                self.bump();
                args.push(self.term()?);
            }
            self.expect(Tok::RParen, "`)` after the argument terms")?;
            Ok(Term::App(name, args))
        } else if self.sig.funcs.contains_key(&name) {
            Ok(Term::App(name, Vec::new()))
        } else {
            Ok(Term::Var(name))
        }
    }
}

/// How `name` occurs in `s`: as a nominal (in `nom`/`@` position) and/or as a
/// term variable.
fn occurrences(s: &Sentence, name: &str) -> (bool, bool) {
    fn term_uses(t: &Term, name: &str) -> bool {
        match t {
            Term::Var(x) => x == name,
            Term::App(_, args) => args.iter().any(|a| term_uses(a, name)),
        }
    }
    match s {
        Sentence::Prop(_) => (false, false),
        Sentence::FolAtom(_, args) => (false, args.iter().any(|a| term_uses(a, name))),
        Sentence::Nom(_, i) => (i == name, false),
        Sentence::At(_, i, a) => {
            let (n, v) = occurrences(a, name);
            (n || i == name, v)
        }
        Sentence::Not(a)
        | Sentence::Dia(_, a)
        | Sentence::BoxM(_, a)
        | Sentence::ExistsVar(_, a)
        | Sentence::ForallVar(_, a)
        | Sentence::ExistsNom(_, _, a)
        | Sentence::ForallNom(_, _, a) => occurrences(a, name),
        Sentence::And(a, b) | Sentence::Or(a, b) | Sentence::Implies(a, b) => {
            let (n1, v1) = occurrences(a, name);
            let (n2, v2) = occurrences(b, name);
            (n1 || n2, v1 || v2)
        }
        Sentence::PolyDia(_, args) | Sentence::PolyBox(_, args) => args
            .iter()
            .map(|a| occurrences(a, name))
            .fold((false, false), |(n1, v1), (n2, v2)| (n1 || n2, v1 || v2)),
    }
}

/// Parses `text` into a well-formed sentence of the logic over `sig`.
pub fn parse_sentence(logic: LogicId, sig: &SignatureDesc, text: &str) -> Result<Sentence> {
    let toks = lex(text)?;
    let mut p = Parser {
        logic,
        sig,
        toks,
        pos: 0,
        end: text.len(),
    };
    let s = p.sentence()?;
    if p.pos != p.toks.len() {
        return Err(err(p.here(), "trailing input after the sentence"));
    }
    check_sentence(logic, sig, &s)?;
    Ok(s)
}

fn layer_tag(layer: Layer) -> &'static str {
    if layer == 0 {
        "^0"
    } else {
        ""
    }
}

/// Nominal binders always render an explicit layer tag so that in logics
/// with both variable and nominal quantifiers a binder whose name does not
/// occur in the body still parses back to the same constructor.
fn binder_tag(layer: Layer) -> &'static str {
    if layer == 0 {
        "^0"
    } else {
        "^1"
    }
}

fn render_term(t: &Term) -> String {
    match t {
        Term::Var(x) => x.clone(),
        Term::App(f, args) if args.is_empty() => f.clone(),
        Term::App(f, args) => {
            let parts: Vec<String> = args.iter().map(render_term).collect();
            format!("{f}({})", parts.join(", "))
        }
    }
}

/// Canonical fully parenthesized rendering; `parse_sentence` inverts it.
pub fn render_sentence(s: &Sentence) -> String {
    match s {
        Sentence::Prop(p) => p.clone(),
        Sentence::FolAtom(p, args) if args.is_empty() => p.clone(),
        Sentence::FolAtom(p, args) => {
            let parts: Vec<String> = args.iter().map(render_term).collect();
            format!("{p}({})", parts.join(", "))
        }
        Sentence::Not(a) => format!("(! {})", render_sentence(a)),
        Sentence::And(a, b) => format!("({} & {})", render_sentence(a), render_sentence(b)),
        Sentence::Or(a, b) => format!("({} | {})", render_sentence(a), render_sentence(b)),
        Sentence::Implies(a, b) => format!("({} -> {})", render_sentence(a), render_sentence(b)),
        Sentence::Dia(l, a) => format!("(<>{} {})", layer_tag(*l), render_sentence(a)),
        Sentence::BoxM(l, a) => format!("([]{} {})", layer_tag(*l), render_sentence(a)),
        Sentence::PolyDia(l, args) => {
            let parts: Vec<String> = args.iter().map(render_sentence).collect();
            format!("(<{l}>({}))", parts.join(", "))
        }
        Sentence::PolyBox(l, args) => {
            let parts: Vec<String> = args.iter().map(render_sentence).collect();
            format!("([{l}]({}))", parts.join(", "))
        }
        Sentence::Nom(l, i) => format!("(nom {i}{})", layer_tag(*l)),
        Sentence::At(l, i, a) => format!("(@ {i}{} {})", layer_tag(*l), render_sentence(a)),
        Sentence::ExistsVar(x, a) => format!("(exists {x} . {})", render_sentence(a)),
        Sentence::ForallVar(x, a) => format!("(forall {x} . {})", render_sentence(a)),
        Sentence::ExistsNom(l, i, a) => {
            format!("(exists {i}{} . {})", binder_tag(*l), render_sentence(a))
        }
        Sentence::ForallNom(l, i, a) => {
            format!("(forall {i}{} . {})", binder_tag(*l), render_sentence(a))
        }
    }
}
