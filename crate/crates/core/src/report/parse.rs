//! The line-oriented problem file format.
//!
//! ```text
//! # pendulum
//! dimensions L T M
//! quantity t T
//! quantity l L
//! quantity m M
//! quantity theta 1
//! quantity g L T^-2
//! dependent t
//! kappa auto
//! ```
//!
//! Other directives: `symmetric <name> <name>`, `substitute <name> = <monomial>`
//! and `mode unbalanced|balanced`. `dimensions` comes first and only once.

use std::collections::HashMap;

use crate::engine::{KappaPolicy, Mode, Problem, Substitution};
use crate::error::{Error, ParseError, ParseErrorKind};
use crate::monomial::render_power;
use crate::qspace::DimExp;

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col0, (byte, c)) in line.char_indices().enumerate() {
        if c == '#' {
            if let Some((b, col)) = start.take() {
                out.push(Token { text: &line[b..byte], col });
            }
            return out;
        }
        if c.is_whitespace() || c == '=' {
            if let Some((b, col)) = start.take() {
                out.push(Token { text: &line[b..byte], col });
            }
            if c == '=' {
                out.push(Token { text: &line[byte..byte + 1], col: col0 + 1 });
            }
        } else if start.is_none() {
            start = Some((byte, col0 + 1));
        }
    }
    if let Some((b, col)) = start {
        out.push(Token { text: &line[b..], col });
    }
    out
}

struct Ctx {
    line: usize,
}

impl Ctx {
    fn err(&self, col: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, col, kind }
    }

    fn syntax(&self, col: usize, msg: impl Into<String>) -> ParseError {
        self.err(col, ParseErrorKind::Syntax(msg.into()))
    }
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && !s.contains(['#', '^', '='])
}

/// `Name` or `Name^int`.
fn factor(ctx: &Ctx, tok: &Token) -> Result<(String, i64), ParseError> {
    let (name, exp) = match tok.text.split_once('^') {
        Some((name, exp)) => {
            let exp: i64 = exp
                .parse()
                .map_err(|_| ctx.syntax(tok.col, format!("bad exponent in `{}`", tok.text)))?;
            (name, exp)
        }
        None => (tok.text, 1),
    };
    if !is_identifier(name) {
        return Err(ctx.syntax(tok.col, format!("expected a name in `{}`", tok.text)));
    }
    Ok((name.to_string(), exp))
}

fn dim_expr(ctx: &Ctx, dims: &[String], toks: &[Token]) -> Result<DimExp, ParseError> {
    if toks.is_empty() {
        return Err(ctx.syntax(0, "missing dimension expression"));
    }
    let mut exps = vec![0i64; dims.len()];
    for tok in toks {
        if tok.text == "1" {
            continue;
        }
        let (name, e) = factor(ctx, tok)?;
        let i = dims
            .iter()
            .position(|d| *d == name)
            .ok_or_else(|| ctx.err(tok.col, ParseErrorKind::UnknownDimension(name)))?;
        exps[i] = exps[i]
            .checked_add(e)
            .ok_or_else(|| ctx.err(tok.col, ParseErrorKind::Invalid(Error::Overflow)))?;
    }
    Ok(DimExp::new(exps))
}

fn expect_name<'a>(ctx: &Ctx, toks: &[Token<'a>], i: usize, what: &str) -> Result<Token<'a>, ParseError> {
    let col = toks.last().map_or(1, |t| t.col + t.text.chars().count());
    let tok = toks.get(i).ok_or_else(|| ctx.syntax(col, format!("expected {what}")))?;
    if !is_identifier(tok.text) {
        return Err(ctx.syntax(tok.col, format!("`{}` is not a valid {what}", tok.text)));
    }
    Ok(tok.clone())
}

fn no_more(ctx: &Ctx, toks: &[Token], n: usize) -> Result<(), ParseError> {
    match toks.get(n) {
        Some(t) => Err(ctx.syntax(t.col, format!("unexpected `{}`", t.text))),
        None => Ok(()),
    }
}

/// Position of a name reference, kept for validation after all lines are
/// read.
#[derive(Clone, Copy)]
struct Pos {
    line: usize,
    col: usize,
}

impl Pos {
    fn err(self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, col: self.col, kind }
    }
}

pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    let mut problem: Option<Problem> = None;
    let mut var_pos: HashMap<String, Pos> = HashMap::new();
    let mut dependent_pos = None;
    let mut kappa_seen = false;
    let mut mode_seen = false;
    let mut symmetry_pos: Vec<(Pos, Pos, Pos)> = Vec::new();
    let mut subst_pos: Vec<(Pos, Vec<Pos>)> = Vec::new();
    let mut last_line = 1;

    for (i, raw) in text.lines().enumerate() {
        let ctx = Ctx { line: i + 1 };
        last_line = i + 1;
        let toks = tokenize(raw);
        let Some(head) = toks.first() else { continue };
        let pos = |t: &Token| Pos { line: ctx.line, col: t.col };

        let Some(p) = problem.as_mut() else {
            if head.text != "dimensions" {
                return Err(ctx.syntax(head.col, "the first directive must be `dimensions`"));
            }
            let mut dims: Vec<String> = Vec::new();
            for t in &toks[1..] {
                if !is_identifier(t.text) || t.text == "1" {
                    return Err(ctx.syntax(t.col, format!("`{}` is not a valid dimension name", t.text)));
                }
                if dims.iter().any(|d| d == t.text) {
                    return Err(ctx.syntax(t.col, format!("dimension `{}` listed twice", t.text)));
                }
                dims.push(t.text.to_string());
            }
            if dims.is_empty() {
                return Err(ctx.syntax(head.col, "`dimensions` needs at least one name"));
            }
            problem = Some(Problem::new(dims));
            continue;
        };

        match head.text {
            "dimensions" => return Err(ctx.syntax(head.col, "`dimensions` given twice")),
            "quantity" => {
                let name = expect_name(&ctx, &toks, 1, "quantity name")?;
                let dim = dim_expr(&ctx, &p.base_dims, &toks[2..]).map_err(|e| {
                    if e.col == 0 {
                        ctx.syntax(name.col + name.text.chars().count(), "missing dimension expression")
                    } else {
                        e
                    }
                })?;
                if var_pos.contains_key(name.text) {
                    return Err(ctx.err(name.col, ParseErrorKind::DuplicateVariable(name.text.into())));
                }
                var_pos.insert(name.text.to_string(), pos(&name));
                p.vars.push(crate::engine::Variable { name: name.text.to_string(), dim });
            }
            "dependent" => {
                let name = expect_name(&ctx, &toks, 1, "variable name")?;
                no_more(&ctx, &toks, 2)?;
                if dependent_pos.is_some() {
                    return Err(ctx.syntax(head.col, "`dependent` given twice"));
                }
                dependent_pos = Some(pos(&name));
                p.dependent = Some(name.text.to_string());
            }
            "kappa" => {
                let tok = expect_name(&ctx, &toks, 1, "`auto` or a positive integer")?;
                no_more(&ctx, &toks, 2)?;
                if kappa_seen {
                    return Err(ctx.syntax(head.col, "`kappa` given twice"));
                }
                kappa_seen = true;
                p.kappa = match tok.text {
                    "auto" => KappaPolicy::Auto,
                    s => match s.parse::<i64>() {
                        Ok(k) if k > 0 => KappaPolicy::Fixed(k),
                        _ => return Err(ctx.syntax(tok.col, format!("bad kappa `{s}`"))),
                    },
                };
            }
            "mode" => {
                let tok = expect_name(&ctx, &toks, 1, "`unbalanced` or `balanced`")?;
                no_more(&ctx, &toks, 2)?;
                if mode_seen {
                    return Err(ctx.syntax(head.col, "`mode` given twice"));
                }
                mode_seen = true;
                p.mode = match tok.text {
                    "unbalanced" => Mode::Unbalanced,
                    "balanced" => Mode::Balanced,
                    s => return Err(ctx.syntax(tok.col, format!("bad mode `{s}`"))),
                };
            }
            "symmetric" => {
                let u = expect_name(&ctx, &toks, 1, "variable name")?;
                let v = expect_name(&ctx, &toks, 2, "variable name")?;
                no_more(&ctx, &toks, 3)?;
                symmetry_pos.push((pos(head), pos(&u), pos(&v)));
                p.symmetries.push((u.text.to_string(), v.text.to_string()));
            }
            "substitute" => {
                let name = expect_name(&ctx, &toks, 1, "composite name")?;
                match toks.get(2) {
                    Some(t) if t.text == "=" => {}
                    Some(t) => return Err(ctx.syntax(t.col, "expected `=`")),
                    None => return Err(ctx.syntax(name.col, "expected `=`")),
                }
                let mut factors: Vec<(String, i64)> = Vec::new();
                let mut positions = Vec::new();
                for t in &toks[3..] {
                    if t.text == "1" {
                        continue;
                    }
                    let (n, e) = factor(&ctx, t)?;
                    match factors.iter().position(|(m, _)| *m == n) {
                        Some(j) => factors[j].1 += e,
                        None => {
                            factors.push((n, e));
                            positions.push(pos(t));
                        }
                    }
                }
                let (factors, positions): (Vec<_>, Vec<_>) =
                    factors.into_iter().zip(positions).filter(|((_, e), _)| *e != 0).unzip();
                subst_pos.push((pos(&name), positions));
                p.substitutions.push(Substitution { name: name.text.to_string(), factors });
            }
            other => return Err(ctx.syntax(head.col, format!("unknown directive `{other}`"))),
        }
    }

    let Some(p) = problem else {
        return Err(ParseError {
            line: last_line,
            col: 1,
            kind: ParseErrorKind::Syntax("missing `dimensions` directive".into()),
        });
    };

    // Name resolution. Composite names count as variables for `dependent`
    // and `symmetric`.
    let composite = |n: &str| p.substitutions.iter().position(|s| s.name == n);
    let known = |n: &str| var_pos.contains_key(n) || composite(n).is_some();
    for (i, (s, (name_pos, positions))) in p.substitutions.iter().zip(&subst_pos).enumerate() {
        if let Some(other) = var_pos.get(&s.name) {
            let at = if other.line > name_pos.line { *other } else { *name_pos };
            return Err(at.err(ParseErrorKind::DuplicateVariable(s.name.clone())));
        }
        if p.substitutions[..i].iter().any(|t| t.name == s.name) {
            return Err(name_pos.err(ParseErrorKind::DuplicateVariable(s.name.clone())));
        }
        for ((n, _), at) in s.factors.iter().zip(positions) {
            if !var_pos.contains_key(n) {
                return Err(at.err(ParseErrorKind::UnknownName(n.clone())));
            }
        }
    }
    if let (Some(dep), Some(at)) = (&p.dependent, dependent_pos) {
        if !known(dep) {
            return Err(at.err(ParseErrorKind::UnknownName(dep.clone())));
        }
    }
    for ((u, v), (_, pu, pv)) in p.symmetries.iter().zip(&symmetry_pos) {
        if !known(u) {
            return Err(pu.err(ParseErrorKind::UnknownName(u.clone())));
        }
        if !known(v) {
            return Err(pv.err(ParseErrorKind::UnknownName(v.clone())));
        }
    }

    p.validate().map_err(|e| {
        let subst_line = |n: &str| {
            p.substitutions
                .iter()
                .zip(&subst_pos)
                .rfind(|(s, _)| s.factors.iter().any(|(f, _)| f == n))
                .map(|(_, (at, _))| *at)
        };
        let fallback = Pos { line: last_line, col: 1 };
        match e {
            Error::SymmetryDimensionMismatch(u, v) => {
                let at = p
                    .symmetries
                    .iter()
                    .zip(&symmetry_pos)
                    .find(|((a, b), _)| *a == u && *b == v)
                    .map_or(fallback, |(_, (at, _, _))| *at);
                at.err(ParseErrorKind::DimensionMismatch(u, v))
            }
            Error::OverlappingSubstitution(ref n) | Error::DanglingVariable(ref n, _) => {
                let at = subst_line(n).unwrap_or(fallback);
                at.err(ParseErrorKind::Invalid(e))
            }
            Error::EmptySubstitution(ref n) => {
                let at = p
                    .substitutions
                    .iter()
                    .zip(&subst_pos)
                    .find(|(s, _)| s.name == *n)
                    .map_or(fallback, |(_, (at, _))| *at);
                at.err(ParseErrorKind::Invalid(e))
            }
            e => fallback.err(ParseErrorKind::Invalid(e)),
        }
    })?;
    Ok(p)
}

fn render_dim(base: &[String], dim: &DimExp) -> String {
    let parts: Vec<String> = base
        .iter()
        .zip(dim.exponents())
        .filter(|(_, &e)| e != 0)
        .map(|(n, &e)| render_power(n, e))
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Writes a problem back out in the file format. `parse_problem` of the
/// result gives back an equal problem.
pub fn render_problem(p: &Problem) -> String {
    let mut out = format!("dimensions {}\n", p.base_dims.join(" "));
    for v in &p.vars {
        out.push_str(&format!("quantity {} {}\n", v.name, render_dim(&p.base_dims, &v.dim)));
    }
    for s in &p.substitutions {
        let rhs: Vec<String> = s.factors.iter().map(|(n, e)| render_power(n, *e)).collect();
        out.push_str(&format!("substitute {} = {}\n", s.name, rhs.join(" ")));
    }
    if let Some(dep) = &p.dependent {
        out.push_str(&format!("dependent {dep}\n"));
    }
    for (u, v) in &p.symmetries {
        out.push_str(&format!("symmetric {u} {v}\n"));
    }
    match p.kappa {
        KappaPolicy::Auto => out.push_str("kappa auto\n"),
        KappaPolicy::Fixed(k) => out.push_str(&format!("kappa {k}\n")),
    }
    out.push_str(match p.mode {
        Mode::Unbalanced => "mode unbalanced\n",
        Mode::Balanced => "mode balanced\n",
    });
    out
}
