//! ASCII rendering and parsing of class sets.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! set   := term ( ("|" | "&" | "\") term )*        left-associative
//! term  := ("-" | "~")* atom ("^c")*
//! atom  := "I" | "-I" | "{I}" | "{-I}" | "G+" | "G"
//!        | "C2[" S S "]" | "C3[" RAT "]" | "C4[" RAT "]" | "C4+" | "C4-"
//!        | "C3" LB RAT "," RAT RB
//! LB    := "<[" | "[" | "]" | "("        RB := "]>" | "]" | "[" | ")"
//! S     := "+" | "-"                     RAT := int ("/" int)?
//! ```
//!
//! Angles are rationals in π-units (`C3[1/2]` is the quarter-turn class);
//! `C4` takes λ with |λ| > 1. Interval brackets follow the decorated
//! interval convention: a closure at 0, π or 2π adjoins the neighbouring
//! parabolic class, and `<[` / `]>` additionally adjoin a full hyperbolic
//! component.

use crate::class::{ClassId, Sign};
use crate::error::ParseError;
use crate::rat::{parse_rat, rat_to_string, Rat};
use crate::set::{bracket_set, ClassSet, End, HypSet};

// ---------------------------------------------------------------------
// formatting

/// Renders a set in the grammar above, preferring compact complement and
/// decorated-interval forms; `parse_notation(format_notation(x)) == x`.
pub fn format_notation(set: &ClassSet) -> String {
    if *set == ClassSet::full() {
        return "G".to_string();
    }
    if set.is_empty() {
        return "G^c".to_string();
    }
    if *set == ClassSet::gplus() {
        return "G+".to_string();
    }
    let direct = union_atoms(set);
    let co = set.complement();
    let co_atoms = union_atoms(&co);
    if co_atoms.len() < direct.len() {
        if co_atoms.len() == 1 {
            return format!("{}^c", co_atoms[0]);
        }
        let mut s = "G".to_string();
        for a in co_atoms {
            s.push('\\');
            s.push_str(&a);
        }
        return s;
    }
    direct.join("|")
}

/// Decomposes a set into grammar atoms, absorbing parabolic flags and full
/// hyperbolic components into interval closures where the decorated
/// notation allows it.
fn union_atoms(set: &ClassSet) -> Vec<String> {
    let mut out = Vec::new();
    let rest = set;
    if rest.has_i {
        out.push("{I}".to_string());
    }
    if rest.has_neg_i {
        out.push("{-I}".to_string());
    }
    let hyp_pos_full = rest.hyp_pos.is_full();
    let hyp_neg_full = rest.hyp_neg.is_full();
    let mut used_pp = false;
    let mut used_pm = false;
    let mut used_mp = false;
    let mut used_mm = false;
    let mut used_hp = false;
    let mut used_hn = false;
    let zero = Rat::from_integer(0);
    let one = Rat::from_integer(1);
    let two = Rat::from_integer(2);
    for iv in rest.ell.atoms() {
        if iv.lo == iv.hi {
            out.push(format!("C3[{}]", rat_to_string(iv.lo)));
            continue;
        }
        let (lb, rb);
        if iv.lo == zero && rest.par_pp {
            used_pp = true;
            if hyp_pos_full {
                used_hp = true;
                lb = "<[".to_string();
            } else {
                lb = "[".to_string();
            }
        } else if iv.lo == one && rest.par_mm {
            used_mm = true;
            if hyp_neg_full {
                used_hn = true;
                lb = "<[".to_string();
            } else {
                lb = "[".to_string();
            }
        } else if iv.lo_closed {
            lb = "[".to_string();
        } else {
            lb = "]".to_string();
        }
        if iv.hi == one && rest.par_mp {
            used_mp = true;
            if hyp_neg_full {
                used_hn = true;
                rb = "]>".to_string();
            } else {
                rb = "]".to_string();
            }
        } else if iv.hi == two && rest.par_pm {
            used_pm = true;
            if hyp_pos_full {
                used_hp = true;
                rb = "]>".to_string();
            } else {
                rb = "]".to_string();
            }
        } else if iv.hi_closed {
            rb = "]".to_string();
        } else {
            rb = "[".to_string();
        }
        out.push(format!(
            "C3{}{},{}{}",
            lb,
            rat_to_string(iv.lo),
            rat_to_string(iv.hi),
            rb
        ));
    }
    if rest.par_pp && !used_pp {
        out.push("C2[++]".to_string());
    }
    if rest.par_pm && !used_pm {
        out.push("C2[+-]".to_string());
    }
    if rest.par_mp && !used_mp {
        out.push("C2[-+]".to_string());
    }
    if rest.par_mm && !used_mm {
        out.push("C2[--]".to_string());
    }
    let hyp_atoms = |set: &HypSet, used_full: bool, plus: bool, out: &mut Vec<String>| {
        let tag = if plus { "C4+" } else { "C4-" };
        match set {
            HypSet::Finite(v) => {
                for l in v {
                    out.push(format!("C4[{}]", rat_to_string(*l)));
                }
            }
            HypSet::Cofinite(ex) if ex.is_empty() => {
                if !used_full {
                    out.push(tag.to_string());
                }
            }
            HypSet::Cofinite(ex) => {
                // full-minus-finite has no atom form; render as a difference
                let mut s = tag.to_string();
                for l in ex {
                    s.push_str(&format!("\\C4[{}]", rat_to_string(*l)));
                }
                out.push(s);
            }
        }
    };
    hyp_atoms(&rest.hyp_pos, used_hp, true, &mut out);
    hyp_atoms(&rest.hyp_neg, used_hn, false, &mut out);
    out
}

// ---------------------------------------------------------------------
// parsing

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(ParseError::new(self.pos, format!("expected `{token}`")))
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
            i += 1;
        }
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i < bytes.len() && bytes[i] == b'/' {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
        if i == start {
            return Err(ParseError::new(start, "expected rational"));
        }
        let text = &self.src[start..i];
        self.pos = i;
        parse_rat(text, start)
    }

    fn sign(&mut self) -> Result<Sign, ParseError> {
        if self.eat("+") {
            Ok(Sign::Pos)
        } else if self.eat("-") {
            Ok(Sign::Neg)
        } else {
            Err(ParseError::new(self.pos, "expected `+` or `-`"))
        }
    }

    fn set(&mut self) -> Result<ClassSet, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat("|") {
                acc = acc.union(&self.term()?);
            } else if self.eat("&") {
                acc = acc.intersect(&self.term()?);
            } else if self.eat("\\") {
                acc = acc.minus(&self.term()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ClassSet, ParseError> {
        self.skip_ws();
        // `-I` is an atom of its own; any other `-` is the negation prefix
        if self.src[self.pos..].starts_with('-') && !self.src[self.pos..].starts_with("-I") {
            self.pos += 1;
            return Ok(self.term()?.negate());
        }
        if self.eat("~") {
            return Ok(self.term()?.invert());
        }
        let mut s = self.atom()?;
        while self.eat("^c") {
            s = s.complement();
        }
        Ok(s)
    }

    fn atom(&mut self) -> Result<ClassSet, ParseError> {
        self.skip_ws();
        let at = self.pos;
        if self.eat("{I}") {
            return Ok(ClassSet::singleton(ClassId::Scalar(Sign::Pos)));
        }
        if self.eat("{-I}") {
            return Ok(ClassSet::singleton(ClassId::Scalar(Sign::Neg)));
        }
        if self.eat("-I") {
            return Ok(ClassSet::singleton(ClassId::Scalar(Sign::Neg)));
        }
        if self.eat("I") {
            return Ok(ClassSet::singleton(ClassId::Scalar(Sign::Pos)));
        }
        if self.eat("G+") {
            return Ok(ClassSet::gplus());
        }
        if self.eat("G") {
            return Ok(ClassSet::full());
        }
        if self.eat("C2[") {
            let eps = self.sign()?;
            let delta = self.sign()?;
            self.expect("]")?;
            return Ok(ClassSet::singleton(ClassId::Parabolic(eps, delta)));
        }
        if self.eat("C4+") {
            let mut s = ClassSet::empty();
            s.hyp_pos = HypSet::full();
            return Ok(s);
        }
        if self.eat("C4-") {
            let mut s = ClassSet::empty();
            s.hyp_neg = HypSet::full();
            return Ok(s);
        }
        if self.eat("C4[") {
            let r = self.rational()?;
            self.expect("]")?;
            let one = Rat::from_integer(1);
            if r.abs() <= one {
                return Err(ParseError::new(at, format!("C4 needs |lambda| > 1, got {}", rat_to_string(r))));
            }
            return Ok(ClassSet::singleton(ClassId::hyperbolic(r)));
        }
        if self.eat("C3") {
            return self.c3_tail(at);
        }
        Err(ParseError::new(at, "expected an atom"))
    }

    fn c3_tail(&mut self, at: usize) -> Result<ClassSet, ParseError> {
        let lb = if self.eat("<[") {
            End::Hyp
        } else if self.eat("[") {
            End::Closed
        } else if self.eat("]") || self.eat("(") {
            End::Open
        } else {
            return Err(ParseError::new(self.pos, "expected `<[`, `[`, `]` or `(` after C3"));
        };
        let first = self.rational()?;
        if self.peek() == Some(',') {
            self.expect(",")?;
            let second = self.rational()?;
            let rb = if self.eat("]>") {
                End::Hyp
            } else if self.eat("]") {
                End::Closed
            } else if self.eat("[") || self.eat(")") {
                End::Open
            } else {
                return Err(ParseError::new(self.pos, "expected `]>`, `]`, `[` or `)`"));
            };
            return build_interval(lb, first, second, rb, at);
        }
        // singleton form C3[r]
        if lb != End::Closed {
            return Err(ParseError::new(at, "singleton angle needs the C3[r] form"));
        }
        self.expect("]")?;
        validate_angle(first, at)?;
        Ok(ClassSet::singleton(ClassId::elliptic(first)))
    }
}

fn validate_angle(r: Rat, at: usize) -> Result<(), ParseError> {
    let zero = Rat::from_integer(0);
    let one = Rat::from_integer(1);
    let two = Rat::from_integer(2);
    if r <= zero || r >= two || r == one {
        return Err(ParseError::new(
            at,
            format!("angle {} pi outside ]0,2pi[ minus {{pi}}", rat_to_string(r)),
        ));
    }
    Ok(())
}

fn build_interval(lb: End, lo: Rat, hi: Rat, rb: End, at: usize) -> Result<ClassSet, ParseError> {
    let zero = Rat::from_integer(0);
    let one = Rat::from_integer(1);
    let two = Rat::from_integer(2);
    if lo < zero || hi > two || lo > hi {
        return Err(ParseError::new(at, "interval endpoints must satisfy 0 <= lo <= hi <= 2"));
    }
    let special = |r: Rat| r == zero || r == one || r == two;
    if lb == End::Hyp && !special(lo) || rb == End::Hyp && !special(hi) {
        return Err(ParseError::new(at, "`<[` / `]>` closures only exist at 0, pi, 2pi"));
    }
    if lo == hi {
        if special(lo) {
            return Err(ParseError::new(at, "degenerate interval at a non-angle"));
        }
        if lb == End::Closed && rb == End::Closed {
            return Ok(ClassSet::singleton(ClassId::elliptic(lo)));
        }
        return Err(ParseError::new(at, "degenerate interval must be closed on both ends"));
    }
    Ok(bracket_set(lb, lo, hi, rb))
}

/// Parses the grammar at the top of this module.
pub fn parse_notation(src: &str) -> Result<ClassSet, ParseError> {
    let mut p = Parser::new(src);
    let s = p.set()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(ParseError::new(p.pos, "trailing input"));
    }
    Ok(s)
}

/// Parses a `*`-separated list of single-class factors; each factor must
/// denote exactly one conjugacy class (scalars, `C2[..]`, `C3[r]`,
/// `C4[r]`, optionally under `-`/`~`).
pub fn parse_factors(src: &str) -> Result<Vec<ClassId>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in src.split('*') {
        let at = offset;
        offset += piece.len() + 1;
        let set = {
            let mut p = Parser::new(piece);
            let s = p.set()?;
            p.skip_ws();
            if p.pos != piece.len() {
                return Err(ParseError::new(at + p.pos, "trailing input in factor"));
            }
            s
        };
        match single_class(&set) {
            Some(id) => out.push(id),
            None => {
                return Err(ParseError::new(
                    at,
                    format!("factor `{}` is not a single conjugacy class", piece.trim()),
                ))
            }
        }
    }
    Ok(out)
}

/// Extracts the unique class of a singleton set.
pub fn single_class(set: &ClassSet) -> Option<ClassId> {
    let mut found: Vec<ClassId> = Vec::new();
    if set.has_i {
        found.push(ClassId::Scalar(Sign::Pos));
    }
    if set.has_neg_i {
        found.push(ClassId::Scalar(Sign::Neg));
    }
    for (flag, e, d) in [
        (set.par_pp, Sign::Pos, Sign::Pos),
        (set.par_pm, Sign::Pos, Sign::Neg),
        (set.par_mp, Sign::Neg, Sign::Pos),
        (set.par_mm, Sign::Neg, Sign::Neg),
    ] {
        if flag {
            found.push(ClassId::Parabolic(e, d));
        }
    }
    for iv in set.ell.atoms() {
        if iv.lo != iv.hi {
            return None;
        }
        found.push(ClassId::elliptic(iv.lo));
    }
    match (&set.hyp_pos, &set.hyp_neg) {
        (HypSet::Finite(a), HypSet::Finite(b)) => {
            for l in a.iter().chain(b) {
                found.push(ClassId::hyperbolic(*l));
            }
        }
        _ => return None,
    }
    if found.len() == 1 {
        Some(found[0])
    } else {
        None
    }
}

// ---------------------------------------------------------------------
// JSON rendering

/// Renders the component-wise JSON form: flags, parabolic list, elliptic
/// atoms with rational endpoints in π-units, and finite/cofinite
/// hyperbolic families.
pub fn to_json(set: &ClassSet) -> serde_json::Value {
    use serde_json::{json, Value};
    let mut par = Vec::new();
    for (flag, name) in [
        (set.par_pp, "++"),
        (set.par_pm, "+-"),
        (set.par_mp, "-+"),
        (set.par_mm, "--"),
    ] {
        if flag {
            par.push(Value::String(name.to_string()));
        }
    }
    let ell: Vec<Value> = set
        .ell
        .atoms()
        .iter()
        .map(|iv| {
            json!({
                "lo": rat_to_string(iv.lo),
                "lo_closed": iv.lo_closed,
                "hi": rat_to_string(iv.hi),
                "hi_closed": iv.hi_closed,
            })
        })
        .collect();
    let hyp = |h: &HypSet| -> Value {
        match h {
            HypSet::Cofinite(ex) if ex.is_empty() => Value::String("full".to_string()),
            HypSet::Cofinite(ex) => json!({
                "cofinite": ex.iter().map(|l| rat_to_string(*l)).collect::<Vec<_>>()
            }),
            HypSet::Finite(v) => {
                Value::Array(v.iter().map(|l| Value::String(rat_to_string(*l))).collect())
            }
        }
    };
    json!({
        "I": set.has_i,
        "negI": set.has_neg_i,
        "par": par,
        "ell": ell,
        "hyp_pos": hyp(&set.hyp_pos),
        "hyp_neg": hyp(&set.hyp_neg),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn rt(src: &str) -> ClassSet {
        let s = parse_notation(src).unwrap();
        let rendered = format_notation(&s);
        let back = parse_notation(&rendered).unwrap_or_else(|e| panic!("reparse `{rendered}`: {e}"));
        assert_eq!(back, s, "round trip through `{rendered}`");
        s
    }

    #[test]
    fn parses_paper_interval() {
        // ⟨[0,π] = C4+ ∪ C2[++] ∪ ]0,π[ ∪ C2[-+]
        let s = rt("C3<[0,1]");
        assert!(s.hyp_pos.is_full());
        assert!(s.par_pp && s.par_mp && !s.par_pm && !s.par_mm);
        assert!(s.ell.contains(rat(1, 2)));
        assert!(!s.has_i && !s.has_neg_i);
    }

    #[test]
    fn parses_g_and_complement() {
        assert_eq!(rt("G"), ClassSet::full());
        assert_eq!(rt("G^c"), ClassSet::empty());
        assert_eq!(rt("G+"), ClassSet::gplus());
        let s = rt("I^c");
        assert!(!s.has_i && s.has_neg_i);
    }

    #[test]
    fn formats_scalar_complements() {
        let s = ClassSet::singleton(ClassId::Scalar(Sign::Neg)).complement();
        assert_eq!(format_notation(&s), "{-I}^c");
        let s = ClassSet::singleton(ClassId::Scalar(Sign::Pos)).complement();
        assert_eq!(format_notation(&s), "{I}^c");
    }

    #[test]
    fn set_operators() {
        let s = rt("C2[++] | C2[--]");
        assert!(s.par_pp && s.par_mm);
        let s = rt("G \\ I \\ -I");
        assert!(!s.has_i && !s.has_neg_i && s.par_pp && s.hyp_pos.is_full());
        let s = rt("-C2[+-]");
        assert!(s.par_mp);
        let s = rt("~C3[1/2]");
        assert!(s.ell.contains(rat(3, 2)));
    }

    #[test]
    fn interval_bracket_variants() {
        let open = rt("C3]1/3,1/2[");
        assert!(!open.ell.contains(rat(1, 3)) && !open.ell.contains(rat(1, 2)));
        assert!(open.ell.contains(rat(2, 5)));
        let parens = parse_notation("C3(1/3,1/2)").unwrap();
        assert_eq!(open, parens);
        let closed = rt("C3[1/3,1/2]");
        assert!(closed.ell.contains(rat(1, 3)) && closed.ell.contains(rat(1, 2)));
        let hyp = rt("C3<[1,2]>");
        assert!(hyp.hyp_neg.is_full() && hyp.hyp_pos.is_full());
        assert!(hyp.par_mm && hyp.par_pm);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_notation("C3[5/3,1/2]").unwrap_err();
        assert!(err.msg.contains("lo <= hi"), "{err}");
        assert!(parse_notation("C3<[1/3,1/2]").is_err());
        assert!(parse_notation("C4[1/2]").is_err());
        assert!(parse_notation("C3[1]").is_err());
        assert!(parse_notation("C2[+*]").is_err());
        let err = parse_notation("C2[++] @").unwrap_err();
        assert_eq!(err.pos, 8);
    }

    #[test]
    fn factor_lists() {
        let f = parse_factors("C2[++] * C3[1/2] * -I").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f[1], ClassId::elliptic(rat(1, 2)));
        assert!(parse_factors("C2[++] * G").is_err());
    }

    #[test]
    fn json_shape() {
        let s = parse_notation("C3<[0,1] | C4[3/2] | -I").unwrap();
        let v = to_json(&s);
        assert_eq!(v["negI"], serde_json::Value::Bool(true));
        assert_eq!(v["hyp_pos"], serde_json::Value::String("full".into()));
        assert_eq!(v["par"][0], serde_json::Value::String("++".into()));
        // hmm: C4[3/2] is swallowed by the full positive component
        assert_eq!(v["ell"].as_array().unwrap().len(), 1);
    }
}
