//! Instance files: a signature, a group, generator images, and optionally a
//! square-root pair and canonical glide markings, stored as TOML.
//!
//! ```toml
//! [signature]
//! genus = 2
//! sign = "-"
//! periods = [2]
//!
//! [group]
//! expr = "direct_product(cyclic(16), cyclic(2, t))"
//!
//! [images]
//! d1 = "u"
//! d2 = "u^3*t"
//! x1 = "(u^8, 1)"
//!
//! [pair]
//! g1 = "u"
//! g2 = "u*t"
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, ParseError};
use crate::group::{Construction, Elem, FiniteGroup};
use crate::monodromy::Monodromy;
use crate::presentation::{canonical_presentation, Presentation};
use crate::signature::{NecSignature, Sign};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub signature: NecSignature,
    pub group: FiniteGroup,
    /// Images in the order of the canonical presentation's generators.
    pub images: Vec<Elem>,
    pub pair: Option<(Elem, Elem)>,
    pub marking: Marking,
}

/// Candidate canonical glides for the subgroups generated by `g1` and `g2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Marking {
    pub g1: Option<Vec<Word>>,
    pub g2: Option<Vec<Word>>,
}

impl Instance {
    pub fn presentation(&self) -> Presentation {
        canonical_presentation(&self.signature)
    }

    pub fn monodromy(&self) -> Result<Monodromy, Error> {
        Monodromy::new(self.presentation(), self.group.clone(), self.images.clone())
    }

    /// Canonical TOML text; parsing it gives back an equal instance.
    pub fn to_toml(&self) -> String {
        let pres = self.presentation();
        let sig = &self.signature;
        let mut out = String::new();
        let periods: Vec<String> = sig.periods().iter().map(u32::to_string).collect();
        let sign = match sig.sign() {
            Sign::Plus => "+",
            Sign::Minus => "-",
        };
        let _ = writeln!(out, "[signature]");
        let _ = writeln!(out, "genus = {}", sig.genus());
        let _ = writeln!(out, "sign = \"{sign}\"");
        let _ = writeln!(out, "periods = [{}]", periods.join(", "));
        let _ = writeln!(out, "empty_cycles = {}", sig.empty_cycles());
        let _ = writeln!(out, "\n[group]\nexpr = \"{}\"", self.group);
        let _ = writeln!(out, "\n[images]");
        for (s, &e) in pres.symbols().iter().zip(&self.images) {
            let _ = writeln!(out, "{} = \"{}\"", pres.name(s), self.group.label(e));
        }
        if let Some((g1, g2)) = self.pair {
            let _ = writeln!(out, "\n[pair]\ng1 = \"{}\"\ng2 = \"{}\"", self.group.label(g1), self.group.label(g2));
        }
        let marked: Vec<(&str, &Vec<Word>)> =
            [("g1", &self.marking.g1), ("g2", &self.marking.g2)].into_iter().filter_map(|(k, v)| Some((k, v.as_ref()?))).collect();
        if !marked.is_empty() {
            let _ = writeln!(out, "\n[marking]");
            for (k, words) in marked {
                let ws: Vec<String> = words.iter().map(|w| format!("\"{}\"", pres.format_word(w))).collect();
                let _ = writeln!(out, "{k} = [{}]", ws.join(", "));
            }
        }
        out
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    signature: RawSignature,
    group: RawGroup,
    images: BTreeMap<Spanned<String>, Spanned<String>>,
    pair: Option<RawPair>,
    marking: Option<RawMarking>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSignature {
    genus: u32,
    sign: Spanned<String>,
    #[serde(default)]
    periods: Vec<u32>,
    #[serde(default)]
    empty_cycles: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    expr: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    g1: Spanned<String>,
    g2: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMarking {
    g1: Option<Vec<Spanned<String>>>,
    g2: Option<Vec<Spanned<String>>>,
}

/// 1-based line and column of a byte offset.
pub(crate) fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Error inside a quoted TOML string starting at `span.start`.
fn at(text: &str, span_start: usize, inner: usize, message: impl Into<String>) -> Error {
    let (line, column) = line_col(text, span_start + 1 + inner);
    Error::Parse(ParseError::new(line, column, message))
}

fn header_position(text: &str, header: &str) -> (usize, usize) {
    text.find(header).map_or((1, 1), |o| line_col(text, o))
}

pub fn parse_instance(text: &str) -> Result<Instance, Error> {
    let raw: RawInstance = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_col(text, s.start));
        Error::Parse(ParseError::new(line, column, e.message().to_string()))
    })?;

    let sign = match raw.signature.sign.get_ref().as_str() {
        "+" => Sign::Plus,
        "-" => Sign::Minus,
        other => {
            return Err(at(text, raw.signature.sign.span().start, 0, format!("sign must be \"+\" or \"-\", not {other:?}")))
        }
    };
    let signature = NecSignature::new(raw.signature.genus, sign, raw.signature.periods, raw.signature.empty_cycles)
        .map_err(|e| {
            let (line, column) = header_position(text, "[signature]");
            Error::Parse(ParseError::new(line, column, e.to_string()))
        })?;

    let expr = &raw.group.expr;
    let group = parse_group(expr.get_ref()).map_err(|(o, m)| at(text, expr.span().start, o, m))?;

    let pres = canonical_presentation(&signature);
    let mut images: Vec<Option<Elem>> = vec![None; pres.symbols().len()];
    for (name, value) in &raw.images {
        let s = pres.lookup(name.get_ref()).ok_or_else(|| {
            let (line, column) = line_col(text, name.span().start);
            Error::Parse(ParseError::new(line, column, format!("`{}` is not a generator of {}", name.get_ref(), signature)))
        })?;
        let k = pres.index_of(&s).expect("lookup returns declared symbols");
        if images[k].is_some() {
            let (line, column) = line_col(text, name.span().start);
            return Err(Error::Parse(ParseError::new(line, column, format!("{} assigned twice", pres.name(&s)))));
        }
        images[k] = Some(parse_element(&group, value.get_ref()).map_err(|(o, m)| at(text, value.span().start, o, m))?);
    }
    let images = images
        .into_iter()
        .zip(pres.symbols())
        .map(|(e, s)| {
            e.ok_or_else(|| {
                let (line, column) = header_position(text, "[images]");
                Error::Parse(ParseError::new(line, column, format!("no image for {}", pres.name(s))))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let element = |v: &Spanned<String>| parse_element(&group, v.get_ref()).map_err(|(o, m)| at(text, v.span().start, o, m));
    let pair = match &raw.pair {
        Some(p) => Some((element(&p.g1)?, element(&p.g2)?)),
        None => None,
    };
    let words = |ws: &Option<Vec<Spanned<String>>>| -> Result<Option<Vec<Word>>, Error> {
        ws.as_ref()
            .map(|ws| {
                ws.iter()
                    .map(|w| parse_word(&pres, w.get_ref()).map_err(|(o, m)| at(text, w.span().start, o, m)))
                    .collect()
            })
            .transpose()
    };
    let marking = match &raw.marking {
        Some(m) => Marking { g1: words(&m.g1)?, g2: words(&m.g2)? },
        None => Marking::default(),
    };
    Ok(Instance { signature, group, images, pair, marking })
}

/// Result of a sub-parser: an error carries a byte offset into its input.
type Sub<T> = Result<T, (usize, String)>;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Sub<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn error(&mut self, message: impl Into<String>) -> (usize, String) {
        self.skip_ws();
        (self.pos, message.into())
    }

    fn ident(&mut self) -> Sub<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        if len == 0 || !rest.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
            return Err((start, "expected a name".into()));
        }
        self.pos += len;
        Ok((start, &rest[..len]))
    }

    fn int(&mut self) -> Sub<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let sign_len = usize::from(rest.starts_with('-'));
        let digits = rest[sign_len..].find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len() - sign_len);
        if digits == 0 {
            return Err((start, "expected an integer".into()));
        }
        self.pos += sign_len + digits;
        rest[..sign_len + digits].parse().map_err(|_| (start, "integer out of range".into()))
    }

    fn end(&mut self) -> Sub<()> {
        if self.peek().is_some() {
            Err(self.error("unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

fn positive(c: &mut Cursor, what: &str) -> Sub<usize> {
    let start = c.pos;
    let n = c.int()?;
    if n < 1 {
        return Err((start, format!("{what} must be positive")));
    }
    Ok(n as usize)
}

/// `cyclic(n[, name])`, `direct_product(G, H)`, `semidirect_c2(n, t)`,
/// `dicyclic(k)`.
pub fn parse_group(src: &str) -> Sub<FiniteGroup> {
    let mut c = Cursor::new(src);
    let g = group_expr(&mut c)?;
    c.end()?;
    Ok(g)
}

fn group_expr(c: &mut Cursor) -> Sub<FiniteGroup> {
    let (start, name) = c.ident()?;
    c.expect('(')?;
    let wrap = |r: Result<FiniteGroup, Error>| r.map_err(|e| (start, e.to_string()));
    let g = match name {
        "cyclic" => {
            let n = positive(c, "order")?;
            if c.eat(',') {
                let (_, gen) = c.ident()?;
                FiniteGroup::cyclic_named(n, gen)
            } else {
                FiniteGroup::cyclic(n)
            }
        }
        "direct_product" => {
            let a = group_expr(c)?;
            c.expect(',')?;
            let b = group_expr(c)?;
            wrap(FiniteGroup::direct_product(&a, &b))?
        }
        "semidirect_c2" => {
            let n = positive(c, "order")?;
            c.expect(',')?;
            let t = c.int()?;
            wrap(FiniteGroup::semidirect_c2(n, t))?
        }
        "dicyclic" => {
            let k = positive(c, "k")?;
            wrap(FiniteGroup::dicyclic(k))?
        }
        other => {
            return Err((
                start,
                format!("unknown constructor `{other}` (cyclic, direct_product, semidirect_c2, dicyclic)"),
            ))
        }
    };
    c.expect(')')?;
    Ok(g)
}

/// Products of `name^k` factors, `1`, and `(a, b)` tuples for direct
/// products.
pub fn parse_element(g: &FiniteGroup, src: &str) -> Sub<Elem> {
    let mut c = Cursor::new(src);
    let e = element_expr(g, &mut c)?;
    c.end()?;
    Ok(e)
}

fn element_expr(g: &FiniteGroup, c: &mut Cursor) -> Sub<Elem> {
    let mut acc = element_factor(g, c)?;
    while c.eat('*') {
        let f = element_factor(g, c)?;
        acc = g.mul(acc, f);
    }
    Ok(acc)
}

fn element_factor(g: &FiniteGroup, c: &mut Cursor) -> Sub<Elem> {
    let base = match c.peek() {
        Some('1') => {
            c.pos += 1;
            g.identity()
        }
        Some('(') => {
            let open = c.pos;
            c.pos += 1;
            let Construction::DirectProduct { left, right } = g.construction() else {
                let inner = element_expr(g, c)?;
                c.expect(')')?;
                return power(g, c, inner);
            };
            let a = element_expr(left, c)?;
            if !c.eat(',') {
                return Err((open, "a direct-product tuple needs two components".into()));
            }
            let b = element_expr(right, c)?;
            c.expect(')')?;
            a * right.order() + b
        }
        _ => {
            let (start, name) = c.ident()?;
            g.generator(name).ok_or_else(|| {
                let known: Vec<&str> = g.gen_names().keys().map(String::as_str).collect();
                (start, format!("unknown generator `{name}` (group has {})", known.join(", ")))
            })?
        }
    };
    power(g, c, base)
}

fn power(g: &FiniteGroup, c: &mut Cursor, base: Elem) -> Sub<Elem> {
    if c.eat('^') {
        let k = c.int()?;
        Ok(g.pow(base, k))
    } else {
        Ok(base)
    }
}

/// Words in the canonical generators: `d1*d2^2`, `(d1*d2)^-1`, `1`.
pub fn parse_word(pres: &Presentation, src: &str) -> Sub<Word> {
    let mut c = Cursor::new(src);
    let w = word_expr(pres, &mut c)?;
    c.end()?;
    Ok(w)
}

fn word_expr(pres: &Presentation, c: &mut Cursor) -> Sub<Word> {
    let mut acc = word_factor(pres, c)?;
    while c.eat('*') {
        acc = acc.mul(&word_factor(pres, c)?);
    }
    Ok(acc)
}

fn word_factor(pres: &Presentation, c: &mut Cursor) -> Sub<Word> {
    let base = match c.peek() {
        Some('1') => {
            c.pos += 1;
            Word::identity()
        }
        Some('(') => {
            c.pos += 1;
            let w = word_expr(pres, c)?;
            c.expect(')')?;
            w
        }
        _ => {
            let (start, name) = c.ident()?;
            let s = pres
                .lookup(name)
                .ok_or_else(|| (start, format!("`{name}` is not a generator of {}", pres.signature())))?;
            Word::gen(s)
        }
    };
    if c.eat('^') {
        let k = c.int()?;
        Ok(base.pow(k))
    } else {
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX1: &str = r#"
[signature]
genus = 2
sign = "-"
periods = [2]

[group]
expr = "direct_product(cyclic(16), cyclic(2, t))"

[images]
d1 = "u"
d2 = "u^3*t"
x = "u^8"
"#;

    #[test]
    fn parses_ex1() {
        let inst = parse_instance(EX1).unwrap();
        let w = inst.monodromy().unwrap();
        assert!(w.validate().is_valid());
        assert_eq!(inst.group.label(inst.images[1]), "u^3*t");
    }

    #[test]
    fn tuples() {
        let g = parse_group("direct_product(cyclic(8), cyclic(3, t))").unwrap();
        assert_eq!(parse_element(&g, "(u^7, 1)"), parse_element(&g, "u^7"));
        assert_eq!(parse_element(&g, "(1,t^2)"), parse_element(&g, "t^-1"));
        assert_eq!(parse_element(&g, "(u, t) * (u, t)"), parse_element(&g, "u^2*t^2"));
        let c = parse_group("semidirect_c2(8, 5)").unwrap();
        assert_eq!(c.label(parse_element(&c, "c*u").unwrap()), "c*u");
        assert_eq!(parse_element(&c, "(c*u)^2"), parse_element(&c, "u^6"));
    }

    #[test]
    fn caret_positions() {
        let bad = EX1.replace("d1 = \"u\"", "d1 = \"u^\"");
        let Err(Error::Parse(e)) = parse_instance(&bad) else { panic!("expected a parse error") };
        assert_eq!((e.line, e.column), (11, 9));
        let bad = EX1.replace("d2 = \"u^3*t\"", "d2 = \"u^3*s\"");
        let Err(Error::Parse(e)) = parse_instance(&bad) else { panic!("expected a parse error") };
        assert_eq!((e.line, e.column), (12, 11));
        assert!(e.message.contains("unknown generator"));
        let bad = EX1.replace("x = ", "a1 = ");
        let Err(Error::Parse(e)) = parse_instance(&bad) else { panic!("expected a parse error") };
        assert_eq!((e.line, e.column), (13, 1));
        let bad = EX1.replace("cyclic(16)", "cyclic(16, 3)");
        assert!(matches!(parse_instance(&bad), Err(Error::Parse(_))));
        let bad = EX1.replace("periods = [2]", "periods = [2\n");
        assert!(matches!(parse_instance(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn missing_image() {
        let bad = EX1.replace("x = \"u^8\"\n", "");
        let Err(Error::Parse(e)) = parse_instance(&bad) else { panic!("expected a parse error") };
        assert!(e.message.contains("x1"), "{e}");
    }

    #[test]
    fn round_trip() {
        let mut text = EX1.to_string();
        text.push_str("\n[pair]\ng1 = \"u\"\ng2 = \"(u, t)\"\n\n[marking]\ng1 = [\"d2*d1*d2^-1\", \"d1*d2^2\"]\n");
        let inst = parse_instance(&text).unwrap();
        let printed = inst.to_toml();
        assert_eq!(parse_instance(&printed).unwrap(), inst);
        assert_eq!(parse_instance(&printed).unwrap().to_toml(), printed);
        assert!(printed.contains("g2 = \"u*t\""));
    }

    #[test]
    fn words() {
        let p = canonical_presentation(&NecSignature::closed(2, Sign::Minus, &[2]).unwrap());
        let w = parse_word(&p, "(d1*d2)^-1 * x").unwrap();
        assert_eq!(p.format_word(&w), "d2^-1*d1^-1*x1");
        assert_eq!(parse_word(&p, "1").unwrap(), Word::identity());
        assert_eq!(parse_word(&p, "d1 * d3").unwrap_err().0, 5);
    }
}
