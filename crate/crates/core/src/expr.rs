//! Text forms of groups and group-algebra elements.
//!
//! Groups: `C<n>`, `D<n>`, `Q<n>` joined by `x` (or `×`), e.g. `D4xC4`.
//! Elements: signed sums of monomials such as `x + z - z^2 + 2*x^2y`, where a
//! monomial is a product of generators with optional exponents, multiplied
//! left to right in the group. Coefficients are integers reduced mod p, or
//! bracketed coefficient vectors `[c0,c1]` over the power basis of F_q.

use crate::error::{Error, Result};
use crate::galg::{default_generator_names, AlgebraElement, Group};
use crate::gf::SmallField;
use crate::wa::GroupSpec;
use serde_json::{json, Value};
use std::sync::Arc;

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(s: &str) -> Cursor {
        Cursor { chars: s.chars().collect(), pos: 0 }
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
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn number(&mut self) -> Result<Option<u64>> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map(Some).map_err(|_| perr(start, "number too large"))
    }
    fn done(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parse `D4xC4`, `C5`, `Q3xD2`, ... Products are flattened left to right.
pub fn parse_group(s: &str) -> Result<GroupSpec> {
    let mut cur = Cursor::new(s);
    let mut factors = Vec::new();
    loop {
        let pos = {
            cur.skip_ws();
            cur.pos
        };
        let kind = cur.peek().ok_or_else(|| perr(pos, "expected C, D or Q"))?;
        cur.pos += 1;
        let n = cur.number()?.ok_or_else(|| perr(pos + 1, "expected a positive integer"))?;
        if n == 0 {
            return Err(perr(pos + 1, "order parameter must be positive"));
        }
        factors.push(match kind.to_ascii_uppercase() {
            'C' => GroupSpec::Cyclic(n),
            'D' => GroupSpec::Dihedral(n),
            'Q' => GroupSpec::Quaternion(n),
            _ => return Err(perr(pos, format!("unknown group family {kind:?}"))),
        });
        if cur.done() {
            break;
        }
        let at = cur.pos;
        if !(cur.eat('x') || cur.eat('X') || cur.eat('×') || cur.eat('*')) {
            return Err(perr(at, "expected 'x' between factors"));
        }
    }
    Ok(if factors.len() == 1 { factors.pop().unwrap() } else { GroupSpec::Product(factors) })
}

/// Generator names from a `--gens` style string: factors separated by `:` or
/// `;`, names within a factor by `,`. Example: `x,y:z`.
pub fn parse_generator_names(s: &str) -> Vec<Vec<String>> {
    s.split([':', ';'])
        .map(|f| f.split(',').map(|n| n.trim().to_string()).filter(|n| !n.is_empty()).collect())
        .collect()
}

/// Generator names to use for `group`, checked against its factor shapes.
pub fn resolve_names(group: &Group, names: Option<&[Vec<String>]>) -> Result<Vec<Vec<String>>> {
    let names = match names {
        None => return Ok(default_generator_names(group.spec())),
        Some(n) => n.to_vec(),
    };
    if names.len() != group.factors().len() {
        return Err(Error::Invalid(format!("{} generator groups given for {} factors", names.len(), group.factors().len())));
    }
    for (ns, f) in names.iter().zip(group.factors()) {
        let want = if matches!(f, GroupSpec::Cyclic(_)) { 1 } else { 2 };
        if ns.len() != want {
            return Err(Error::Invalid(format!("factor {f} needs {want} generator name(s)")));
        }
        if let Some(bad) = ns.iter().find(|n| !n.chars().next().is_some_and(char::is_alphabetic)) {
            return Err(Error::Invalid(format!("generator name {bad:?} must start with a letter")));
        }
    }
    let mut all: Vec<&String> = names.iter().flatten().collect();
    all.sort();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Invalid("generator names must be distinct".into()));
    }
    Ok(names)
}

fn coefficient(cur: &mut Cursor, field: &SmallField) -> Result<Option<u8>> {
    let start = {
        cur.skip_ws();
        cur.pos
    };
    if cur.eat('[') {
        let mut digits = Vec::new();
        loop {
            let at = cur.pos;
            let c = cur.number()?.ok_or_else(|| perr(at, "expected an integer in coefficient vector"))?;
            digits.push(c % field.p as u64);
            if cur.eat(']') {
                break;
            }
            if !cur.eat(',') {
                return Err(perr(cur.pos, "expected ',' or ']'"));
            }
        }
        let e = field.field.k();
        if digits.len() > e {
            return Err(perr(start, format!("coefficient vector longer than the degree {e} of F_{}", field.q)));
        }
        let byte = digits.iter().rev().fold(0u64, |acc, &d| acc * field.p as u64 + d);
        return Ok(Some(byte as u8));
    }
    Ok(cur.number()?.map(|c| (c % field.p as u64) as u8))
}

/// Parse a signed sum of monomials into F_q[G].
pub fn parse_element(
    s: &str,
    group: &Arc<Group>,
    field: &Arc<SmallField>,
    names: Option<&[Vec<String>]>,
) -> Result<AlgebraElement> {
    let names = resolve_names(group, names)?;
    // (name, group element index), longest names first for greedy matching.
    let mut gens: Vec<(Vec<char>, usize)> = Vec::new();
    for (f, ns) in names.iter().enumerate() {
        for (name, g) in ns.iter().zip(group.generators_of(f)) {
            gens.push((name.chars().collect(), g));
        }
    }
    gens.sort_by_key(|(n, _)| std::cmp::Reverse(n.len()));

    let mut cur = Cursor::new(s);
    let mut out = AlgebraElement::zero(group, field);
    if cur.done() {
        return Err(perr(0, "empty expression"));
    }
    let mut first = true;
    while !cur.done() {
        let term_start = cur.pos;
        let mut negative = false;
        let mut signed = false;
        loop {
            if cur.eat('+') {
                signed = true;
            } else if cur.eat('-') || cur.eat('−') {
                negative = !negative;
                signed = true;
            } else {
                break;
            }
        }
        if !first && !signed {
            return Err(perr(cur.pos, "expected '+' or '-'"));
        }
        first = false;
        let mut coef = coefficient(&mut cur, field)?;
        let star = coef.is_some() && cur.eat('*');
        let mut g = group.identity();
        let mut any = false;
        loop {
            cur.skip_ws();
            let at = cur.pos;
            let rest = &cur.chars[cur.pos..];
            let Some((name, gen)) = gens.iter().find(|(n, _)| rest.starts_with(n)) else {
                if rest.first().is_some_and(|c| c.is_alphabetic()) {
                    return Err(perr(at, format!("unknown generator {:?}", rest[0])));
                }
                break;
            };
            cur.pos += name.len();
            let exp = if cur.eat('^') {
                let ep = cur.pos;
                cur.number()?.ok_or_else(|| perr(ep, "expected an exponent"))?
            } else {
                1
            };
            let mut p = group.identity();
            let e = exp % group.order() as u64;
            for _ in 0..e {
                p = group.mul(p, *gen);
            }
            g = group.mul(g, p);
            any = true;
            let save = cur.pos;
            if !cur.eat('*') {
                continue;
            }
            // A '*' must be followed by another generator.
            let rest = &cur.chars[cur.pos.min(cur.chars.len())..];
            let nxt: Vec<char> = rest.iter().copied().skip_while(|c| c.is_whitespace()).collect();
            if !gens.iter().any(|(n, _)| nxt.starts_with(n)) {
                cur.pos = save;
                return Err(perr(save, "expected a generator after '*'"));
            }
        }
        if star && !any {
            return Err(perr(cur.pos, "expected a generator after '*'"));
        }
        if coef.is_none() && !any {
            return Err(perr(term_start, "malformed monomial"));
        }
        let c = coef.take().unwrap_or(1);
        let c = if negative { field.neg_u8(c) } else { c };
        out.coeffs[g] = field.add_u8(out.coeffs[g], c);
    }
    Ok(out)
}

fn format_coeff(field: &SmallField, c: u8) -> (bool, String) {
    if field.is_prime() {
        let p = field.p as u64;
        let v = c as u64;
        if v * 2 > p {
            (true, if p - v == 1 { String::new() } else { (p - v).to_string() })
        } else {
            (false, if v == 1 { String::new() } else { v.to_string() })
        }
    } else {
        let e = field.field.k();
        let mut digits = Vec::with_capacity(e);
        let mut v = c as u64;
        for _ in 0..e {
            digits.push((v % field.p as u64).to_string());
            v /= field.p as u64;
        }
        (false, if c == 1 { String::new() } else { format!("[{}]", digits.join(",")) })
    }
}

fn format_monomial(group: &Group, names: &[Vec<String>], g: usize) -> String {
    let mut s = String::new();
    let pow = |s: &mut String, name: &str, e: usize| match e {
        0 => {}
        1 => s.push_str(name),
        _ => s.push_str(&format!("{name}^{e}")),
    };
    for ((part, f), ns) in group.split(g).into_iter().zip(group.factors()).zip(names) {
        match f {
            GroupSpec::Cyclic(_) => pow(&mut s, &ns[0], part),
            _ => {
                pow(&mut s, &ns[0], part / 2);
                pow(&mut s, &ns[1], part % 2);
            }
        }
    }
    s
}

/// Canonical text form: terms in canonical group order, each monomial written
/// x^i y^j per dihedral or quaternion factor. `parse_element` reads it back.
pub fn format_element(u: &AlgebraElement, names: Option<&[Vec<String>]>) -> Result<String> {
    let names = resolve_names(&u.group, names)?;
    let mut out = String::new();
    for (g, &c) in u.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (neg, mut coef) = format_coeff(&u.field, c);
        let mono = format_monomial(&u.group, &names, g);
        if mono.is_empty() && coef.is_empty() {
            coef = "1".into();
        }
        if !coef.is_empty() && !mono.is_empty() {
            coef.push('*');
        }
        match (out.is_empty(), neg) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" - "),
        }
        out.push_str(&coef);
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    Ok(out)
}

/// JSON form: `{"group": "D4xC4", "q": 3, "coeffs": [...]}`.
pub fn element_to_json(u: &AlgebraElement) -> Value {
    json!({ "group": u.group.spec().to_string(), "q": u.field.q, "coeffs": u.coeffs })
}

pub fn element_from_json(v: &Value) -> Result<AlgebraElement> {
    let bad = |m: &str| Error::Invalid(format!("element JSON: {m}"));
    let spec = parse_group(v["group"].as_str().ok_or_else(|| bad("missing group"))?)?;
    let q = v["q"].as_u64().ok_or_else(|| bad("missing q"))?;
    let coeffs = v["coeffs"]
        .as_array()
        .ok_or_else(|| bad("missing coeffs"))?
        .iter()
        .map(|c| c.as_u64().filter(|&c| c < q).map(|c| c as u8).ok_or_else(|| bad("coefficient out of range")))
        .collect::<Result<Vec<u8>>>()?;
    let group = Group::new(&spec)?;
    let field = SmallField::new(q)?;
    AlgebraElement::from_coeffs(&group, &field, coeffs)
}
