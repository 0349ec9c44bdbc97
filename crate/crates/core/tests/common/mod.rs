//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use statrs::function::gamma::ln_gamma;

use skintone::{EmojiToken, SkinTone};

pub const BASES: [char; 5] = [
    '\u{1F44D}',
    '\u{1F44B}',
    '\u{270B}',
    '\u{261D}',
    '\u{1F3C3}',
];
pub const MODIFIERS: [char; 5] = [
    '\u{1F3FB}',
    '\u{1F3FC}',
    '\u{1F3FD}',
    '\u{1F3FE}',
    '\u{1F3FF}',
];
pub const FE0F: char = '\u{FE0F}';

// ---------- scanner ----------

/// Reference scanner for strings over letters, [`BASES`], [`MODIFIERS`] and
/// U+FE0F. Tries the longest pattern at each position.
pub fn reference_scan(text: &str) -> Vec<EmojiToken> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let byte_at = |i: usize| chars.get(i).map(|c| c.0).unwrap_or(text.len());
    let is_base = |i: usize| chars.get(i).is_some_and(|c| BASES.contains(&c.1));
    let is_fe0f = |i: usize| chars.get(i).is_some_and(|c| c.1 == FE0F);
    let tone_at = |i: usize| {
        chars
            .get(i)
            .and_then(|c| MODIFIERS.iter().position(|&m| m == c.1))
            .map(|p| SkinTone::TONED[p])
    };

    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let start = byte_at(i);
        if is_base(i) {
            let (tone, consumed) = if is_fe0f(i + 1) && tone_at(i + 2).is_some() {
                (tone_at(i + 2).unwrap(), 3)
            } else if let Some(t) = tone_at(i + 1) {
                (t, 2)
            } else if is_fe0f(i + 1) {
                (SkinTone::Default, 2)
            } else {
                (SkinTone::Default, 1)
            };
            out.push(EmojiToken {
                base: chars[i].1.to_string(),
                tone,
                byte_offset: start,
                byte_len: byte_at(i + consumed) - start,
                orphan: false,
                modifier_base: true,
            });
            i += consumed;
        } else if let Some(t) = tone_at(i) {
            out.push(EmojiToken {
                base: chars[i].1.to_string(),
                tone: t,
                byte_offset: start,
                byte_len: byte_at(i + 1) - start,
                orphan: true,
                modifier_base: false,
            });
            i += 1;
        } else {
            i += 1;
        }
    }
    out
}

// ---------- statistics ----------

pub fn t_pdf(t: f64, df: f64) -> f64 {
    let ln_norm =
        ln_gamma((df + 1.0) / 2.0) - ln_gamma(df / 2.0) - 0.5 * (df * std::f64::consts::PI).ln();
    (ln_norm - (df + 1.0) / 2.0 * (t * t / df).ln_1p()).exp()
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson integral of `f` over `[a, b]`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Upper tail of Student's t by integrating the density from 0 to |t|.
pub fn t_sf_quadrature(t: f64, df: f64) -> f64 {
    let mass = integrate(&|x| t_pdf(x, df), 0.0, t.abs(), 1e-14);
    if t >= 0.0 {
        0.5 - mass
    } else {
        0.5 + mass
    }
}

/// Pearson's r from raw sums.
pub fn pearson_direct(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let syy: f64 = y.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    (n * sxy - sx * sy) / ((n * sxx - sx * sx) * (n * syy - sy * sy)).sqrt()
}

/// Intercept and slope from the 2×2 normal equations by Cramer's rule.
pub fn ols_normal_equations(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let det = n * sxx - sx * sx;
    let intercept = (sy * sxx - sx * sxy) / det;
    let slope = (n * sxy - sx * sy) / det;
    (intercept, slope)
}

// ---------- SVG ----------

/// Minimal XML well-formedness check: balanced tags, quoted attributes and
/// known entities only.
pub fn check_well_formed(doc: &str) -> Result<(), String> {
    let mut stack: Vec<String> = Vec::new();
    let mut rest = doc;
    let mut seen_root = false;
    while !rest.is_empty() {
        if let Some(after) = rest.strip_prefix("<!--") {
            let end = after.find("-->").ok_or("unterminated comment")?;
            rest = &after[end + 3..];
        } else if let Some(after) = rest.strip_prefix("<?") {
            let end = after.find("?>").ok_or("unterminated declaration")?;
            rest = &after[end + 2..];
        } else if let Some(after) = rest.strip_prefix("</") {
            let end = after.find('>').ok_or("unterminated end tag")?;
            let name = after[..end].trim();
            match stack.pop() {
                Some(open) if open == name => {}
                other => return Err(format!("end tag </{name}> does not close {other:?}")),
            }
            rest = &after[end + 1..];
        } else if let Some(after) = rest.strip_prefix('<') {
            let end = tag_end(after).ok_or("unterminated start tag")?;
            let body = &after[..end];
            let self_closing = body.ends_with('/');
            let body = body.trim_end_matches('/');
            let name_len = body.find(|c: char| c.is_whitespace()).unwrap_or(body.len());
            let name = &body[..name_len];
            if name.is_empty()
                || !name
                    .chars()
                    .all(|c| c.is_alphanumeric() || "-_:".contains(c))
            {
                return Err(format!("bad tag name `{name}`"));
            }
            check_attributes(&body[name_len..])?;
            if stack.is_empty() {
                if seen_root {
                    return Err("more than one root element".into());
                }
                seen_root = true;
            }
            if !self_closing {
                stack.push(name.to_string());
            }
            rest = &after[end + 1..];
        } else {
            let end = rest.find('<').unwrap_or(rest.len());
            let text = &rest[..end];
            if stack.is_empty() && !text.trim().is_empty() {
                return Err("text outside the root element".into());
            }
            check_text(text)?;
            rest = &rest[end..];
        }
    }
    if !stack.is_empty() {
        return Err(format!("unclosed elements {stack:?}"));
    }
    if !seen_root {
        return Err("no root element".into());
    }
    Ok(())
}

fn tag_end(s: &str) -> Option<usize> {
    let mut quote = None;
    for (i, c) in s.char_indices() {
        match (quote, c) {
            (None, '"' | '\'') => quote = Some(c),
            (Some(q), c) if c == q => quote = None,
            (None, '>') => return Some(i),
            (None, '<') => return None,
            _ => {}
        }
    }
    None
}

fn check_attributes(mut s: &str) -> Result<(), String> {
    let mut names = Vec::new();
    loop {
        s = s.trim_start();
        if s.is_empty() {
            return Ok(());
        }
        let eq = s
            .find('=')
            .ok_or(format!("attribute without value in `{s}`"))?;
        let name = s[..eq].trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(format!("bad attribute name `{name}`"));
        }
        if names.contains(&name) {
            return Err(format!("duplicate attribute `{name}`"));
        }
        names.push(name);
        let after = s[eq + 1..].trim_start();
        let q = after.chars().next().ok_or("missing attribute value")?;
        if q != '"' && q != '\'' {
            return Err(format!("unquoted value for `{name}`"));
        }
        let close = after[1..].find(q).ok_or("unterminated attribute value")?;
        let value = &after[1..1 + close];
        if value.contains('<') {
            return Err(format!("`<` in value of `{name}`"));
        }
        check_text(value)?;
        s = &after[close + 2..];
    }
}

fn check_text(text: &str) -> Result<(), String> {
    let mut rest = text;
    while let Some(amp) = rest.find('&') {
        let after = &rest[amp + 1..];
        let semi = after.find(';').ok_or("bare `&`")?;
        let entity = &after[..semi];
        let ok = matches!(entity, "amp" | "lt" | "gt" | "quot" | "apos")
            || (entity.starts_with('#') && entity.len() > 1);
        if !ok {
            return Err(format!("unknown entity `&{entity};`"));
        }
        rest = &after[semi + 1..];
    }
    Ok(())
}
