//! Canonical text and JSON forms of elements.
//!
//! Text form: terms joined by ` + ` / ` - `, each term written as
//! `x^{(c₁,…,cₙ)}t1^2t1b * 3/2` where `cₖ` are coordinates on the `Γ₀`
//! generators followed by the `Γ₁` generators. Parsing also accepts
//! `x^{e1+2e2}`, explicit `*` between factors, and coefficients anywhere
//! in a term.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Instance, Monomial};
use crate::error::{Error, Result};
use crate::lattice::GroupElement;
use crate::scalar::{fmt_q, parse_q, Q};

fn file_order(inst: &Instance, m: &Monomial) -> (Vec<i64>, Vec<i64>, Vec<u32>) {
    (m.grade.a0.clone(), m.grade.a1.clone(), inst.shape().to_interleaved(&m.t))
}

/// Terms in canonical order: lexicographic on `(a0, a1, i)` with `i` in
/// interleaved order.
pub fn canonical_terms<'a>(inst: &Instance, u: &'a Element) -> Vec<(&'a Monomial, &'a Q)> {
    let mut v: Vec<_> = u.terms().collect();
    v.sort_by(|x, y| file_order(inst, x.0).cmp(&file_order(inst, y.0)));
    v
}

fn monomial_body(inst: &Instance, m: &Monomial) -> String {
    let mut s = String::new();
    if !m.grade.is_zero() {
        let c: Vec<String> = m.grade.coords().iter().map(i64::to_string).collect();
        s.push_str(&format!("x^{{({})}}", c.join(",")));
    }
    let shape = inst.shape();
    let mut ps: Vec<usize> = shape.all_indices().filter(|&p| m.t[p - 1] > 0).collect();
    ps.sort_by_key(|&p| shape.interleaved_position(p));
    for p in ps {
        s.push_str(&shape.t_label(p));
        if m.t[p - 1] > 1 {
            s.push_str(&format!("^{}", m.t[p - 1]));
        }
    }
    s
}

pub fn to_text(inst: &Instance, u: &Element) -> String {
    if u.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in canonical_terms(inst, u).into_iter().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        let body = monomial_body(inst, m);
        if body.is_empty() {
            out.push_str(&fmt_q(&mag));
        } else if mag.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&format!("{body} * {}", fmt_q(&mag)));
        }
    }
    out
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::parse(format!("char {}", self.pos), msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).expect("ascii"))
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        self.skip_ws();
        let d = self.digits().ok_or_else(|| self.err("expected an integer"))?;
        let v: i64 = d.parse().map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }
}

fn parse_grade(inst: &Instance, cur: &mut Cursor) -> Result<GroupElement> {
    let n = inst.gamma().rank();
    let m0 = inst.gamma().m0();
    cur.skip_ws();
    let mut coords = vec![0i64; n];
    if cur.eat(b'(') {
        cur.skip_ws();
        let mut vals = Vec::new();
        if !cur.eat(b')') {
            loop {
                vals.push(cur.int()?);
                cur.skip_ws();
                if cur.eat(b')') {
                    break;
                }
                if !cur.eat(b',') {
                    return Err(cur.err("expected ',' or ')'"));
                }
            }
        }
        if vals.len() != n {
            return Err(cur.err(&format!("grade has {} coordinates, expected {n}", vals.len())));
        }
        coords = vals;
    } else {
        let mut first = true;
        loop {
            cur.skip_ws();
            if cur.peek() == Some(b'}') {
                break;
            }
            let neg = if cur.eat(b'-') {
                true
            } else {
                if !cur.eat(b'+') && !first {
                    return Err(cur.err("expected '+' or '-'"));
                }
                false
            };
            first = false;
            cur.skip_ws();
            let k: i64 = match cur.digits() {
                Some(d) => d.parse().map_err(|_| cur.err("integer out of range"))?,
                None => 1,
            };
            if cur.eat(b'e') {
                let idx: usize = cur.digits().ok_or_else(|| cur.err("expected generator index"))?.parse().map_err(|_| cur.err("bad index"))?;
                if idx == 0 || idx > n {
                    return Err(cur.err(&format!("generator e{idx} out of range")));
                }
                coords[idx - 1] += if neg { -k } else { k };
            } else if k != 0 {
                return Err(cur.err("expected a generator e<k>"));
            }
        }
    }
    cur.skip_ws();
    if !cur.eat(b'}') {
        return Err(cur.err("expected '}'"));
    }
    Ok(GroupElement::from_coords(&coords, m0))
}

fn parse_term(inst: &Instance, cur: &mut Cursor) -> Result<(Monomial, Q)> {
    let shape = inst.shape();
    let mut grade = inst.zero_grade();
    let mut t = inst.zero_t();
    let mut coeff = Q::one();
    let mut factors = 0;
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some(b'*') if factors > 0 => {
                cur.pos += 1;
                continue;
            }
            Some(b'x') => {
                cur.pos += 1;
                if !(cur.eat(b'^') && cur.eat(b'{')) {
                    return Err(cur.err("expected 'x^{'"));
                }
                grade = grade.add(&parse_grade(inst, cur)?);
            }
            Some(b't') => {
                let start = cur.pos;
                cur.pos += 1;
                cur.digits().ok_or_else(|| cur.err("expected variable index"))?;
                cur.eat(b'b');
                let label = std::str::from_utf8(&cur.s[start..cur.pos]).expect("ascii");
                let p = shape.parse_t_label(label).ok_or_else(|| cur.err(&format!("unknown variable {label}")))?;
                if !shape.t_allowed(p) {
                    return Err(cur.err(&format!("{label} is not a variable of this instance")));
                }
                let e = if cur.eat(b'^') {
                    cur.digits().ok_or_else(|| cur.err("expected exponent"))?.parse::<u32>().map_err(|_| cur.err("exponent out of range"))?
                } else {
                    1
                };
                t[p - 1] += e;
            }
            Some(c) if c.is_ascii_digit() => {
                let start = cur.pos;
                cur.digits();
                if cur.eat(b'/') {
                    cur.digits().ok_or_else(|| cur.err("expected denominator"))?;
                }
                let text = std::str::from_utf8(&cur.s[start..cur.pos]).expect("ascii");
                coeff *= parse_q(text).map_err(|_| cur.err("bad coefficient"))?;
            }
            _ => break,
        }
        factors += 1;
    }
    if factors == 0 {
        return Err(cur.err("expected a term"));
    }
    Ok((Monomial::new(grade, t), coeff))
}

pub fn parse_text(inst: &Instance, text: &str) -> Result<Element> {
    let mut cur = Cursor { s: text.as_bytes(), pos: 0 };
    let mut out = Element::zero();
    cur.skip_ws();
    let mut neg = cur.eat(b'-');
    if !neg {
        cur.eat(b'+');
    }
    loop {
        let (m, c) = parse_term(inst, &mut cur)?;
        out.add_term(m, if neg { -c } else { c });
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'+') => neg = false,
            Some(b'-') => neg = true,
            Some(_) => return Err(cur.err("unexpected character")),
        }
        cur.pos += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub a0: Vec<i64>,
    pub a1: Vec<i64>,
    /// Exponents in interleaved order `t1, t1b, t2, …`.
    pub t: Vec<u32>,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub terms: Vec<TermJson>,
}

pub fn to_json(inst: &Instance, u: &Element) -> ElementJson {
    ElementJson {
        terms: canonical_terms(inst, u)
            .into_iter()
            .map(|(m, c)| TermJson {
                a0: m.grade.a0.clone(),
                a1: m.grade.a1.clone(),
                t: inst.shape().to_interleaved(&m.t),
                c: fmt_q(c),
            })
            .collect(),
    }
}

pub fn from_json(inst: &Instance, e: &ElementJson) -> Result<Element> {
    let mut out = Element::zero();
    for (k, term) in e.terms.iter().enumerate() {
        let path = format!("terms[{k}]");
        if term.t.len() != inst.shape().dim() {
            return Err(Error::parse(format!("{path}.t"), format!("expected {} exponents", inst.shape().dim())));
        }
        let m = Monomial::new(GroupElement::new(term.a0.clone(), term.a1.clone()), inst.shape().from_interleaved(&term.t));
        inst.check_monomial(&m).map_err(|e| Error::parse(path.clone(), e.to_string()))?;
        let c = parse_q(&term.c).map_err(|_| Error::parse(format!("{path}.c"), "bad rational"))?;
        out.add_term(m, c);
    }
    Ok(out)
}

/// Parses either form; JSON is recognized by a leading `{`.
pub fn parse_element(inst: &Instance, input: &str) -> Result<Element> {
    let s = input.trim();
    if s.starts_with('{') {
        let e: ElementJson = serde_json::from_str(s).map_err(|e| Error::parse("element", e.to_string()))?;
        from_json(inst, &e)
    } else {
        let u = parse_text(inst, s)?;
        inst.check(&u).map_err(|e| Error::parse("element", e.to_string()))?;
        Ok(u)
    }
}
