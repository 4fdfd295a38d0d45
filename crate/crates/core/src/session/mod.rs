//! The line-oriented input format.
//!
//! ```text
//! # comment
//! field p=3 e=1 gen=a depth=0
//! params d, e
//! relation pivot=d : d^(p^2) - d + a*e^p
//! group V vars=X,Y pivot=X : X^(p^2) - X + a*Y^(p^2)
//! group U vars=X,Y pivot=X : X^p - X + a*Y^p
//! extension E center=U base=V : h1 = X*X'^p - X^p*X' ; h2 = X*Y'^p - X'*Y^p
//! map phi from=V to=U : X -> d^p*X + d*X^p ; Y -> e*X + d*Y^p
//! ```
//!
//! Objects must be declared before they are used, and all names are distinct.
//! `Ga` denotes the affine line with coordinate `T`.

pub mod expr;

use std::collections::BTreeMap;

pub use expr::{parse_elem, parse_poly};

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec, ParamRing, FQ_GENERATOR};
use crate::groups::{CocycleExtension, HypersurfaceGroup, Space, LINE_VAR};
use crate::homs::PPolyMap;
use crate::poly::{p_log, Monomial, Poly};
use crate::ppoly::PPoly;

/// Everything declared in one input file, over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    field: FieldSpec,
    params: ParamRing,
    groups: Vec<HypersurfaceGroup>,
    extensions: Vec<CocycleExtension>,
    maps: Vec<PPolyMap>,
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parameters may carry trailing primes, as in X', Y', Z'.
fn is_param_ident(s: &str) -> bool {
    is_ident(s.trim_end_matches('\''))
}

/// `key=value` pairs of a statement head.
fn keyed<'a>(words: &[&'a str]) -> std::result::Result<BTreeMap<&'a str, &'a str>, String> {
    let mut out = BTreeMap::new();
    for w in words {
        let (k, v) = w
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, found {w:?}"))?;
        if out.insert(k, v).is_some() {
            return Err(format!("{k} given twice"));
        }
    }
    Ok(out)
}

fn take<'a>(keys: &mut BTreeMap<&str, &'a str>, key: &str) -> std::result::Result<&'a str, String> {
    keys.remove(key).ok_or_else(|| format!("missing {key}="))
}

fn no_extra(keys: &BTreeMap<&str, &str>) -> std::result::Result<(), String> {
    match keys.keys().next() {
        Some(k) => Err(format!("unknown key {k}")),
        None => Ok(()),
    }
}

/// Read a polynomial as a p-polynomial: every term c * V^(p^e).
pub fn poly_to_ppoly(p: &Poly) -> std::result::Result<PPoly<FieldElem>, String> {
    p.to_ppoly()
        .ok_or_else(|| "not a p-polynomial: every term must be c*V^(p^e)".to_string())
}

impl Session {
    pub fn new(field: FieldSpec) -> Self {
        Session {
            params: ParamRing::empty(&field),
            field,
            groups: Vec::new(),
            extensions: Vec::new(),
            maps: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Session> {
        let mut session: Option<Session> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: i + 1, message };
            let keyword = line.split_whitespace().next().unwrap();
            if keyword == "field" {
                if session.is_some() {
                    return Err(err("field declared twice".into()));
                }
                session = Some(Session::new(Self::parse_field(line).map_err(err)?));
                continue;
            }
            let s = session
                .as_mut()
                .ok_or_else(|| err("the first statement must be `field`".into()))?;
            s.statement(keyword, line).map_err(err)?;
        }
        session.ok_or_else(|| Error::Parse {
            line: 0,
            message: "no field statement".into(),
        })
    }

    fn parse_field(line: &str) -> std::result::Result<FieldSpec, String> {
        let words: Vec<&str> = line.split_whitespace().skip(1).collect();
        let mut keys = keyed(&words)?;
        let num = |v: &str, k: &str| {
            v.parse::<u32>()
                .map_err(|_| format!("{k}= expects a nonnegative integer"))
        };
        let p = num(take(&mut keys, "p")?, "p")?;
        let e = keys.remove("e").map(|v| num(v, "e")).transpose()?.unwrap_or(1);
        let gen = keys.remove("gen").unwrap_or("a");
        let depth = keys.remove("depth").map(|v| num(v, "depth")).transpose()?.unwrap_or(0);
        no_extra(&keys)?;
        FieldSpec::new(p, e, gen, depth).map_err(|e| e.to_string())
    }

    fn statement(&mut self, keyword: &str, line: &str) -> std::result::Result<(), String> {
        let rest = line[keyword.len()..].trim();
        match keyword {
            "params" => self.parse_params(rest),
            "relation" | "group" | "extension" | "map" => {
                let (head, body) = rest.split_once(':').ok_or("expected `:` before the definition")?;
                let words: Vec<&str> = head.split_whitespace().collect();
                match keyword {
                    "relation" => self.parse_relation(&words, body),
                    "group" => self.parse_group(&words, body),
                    "extension" => self.parse_extension(&words, body),
                    _ => self.parse_map(&words, body),
                }
            }
            other => Err(format!("unknown statement {other}")),
        }
    }

    fn check_new_symbol(&self, name: &str, primes: bool) -> std::result::Result<(), String> {
        let ok = if primes { is_param_ident(name) } else { is_ident(name) };
        if !ok {
            return Err(format!("bad name {name:?}"));
        }
        let reserved = name == "p" || name == self.field.gen_name() || (self.field.e() > 1 && name == FQ_GENERATOR);
        if reserved {
            return Err(format!("{name} is reserved"));
        }
        Ok(())
    }

    fn check_new_object(&self, name: &str) -> std::result::Result<(), String> {
        self.check_new_symbol(name, false)?;
        let taken = name == "Ga"
            || self.groups.iter().any(|g| g.name() == name)
            || self.extensions.iter().any(|e| e.name() == name)
            || self.maps.iter().any(|m| m.name() == name);
        if taken {
            return Err(format!("name {name} is already used"));
        }
        Ok(())
    }

    fn parse_params(&mut self, rest: &str) -> std::result::Result<(), String> {
        if !self.params.is_empty() {
            return Err("params declared twice".into());
        }
        if !self.maps.is_empty() {
            return Err("params must come before maps".into());
        }
        let names: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).collect();
        for n in &names {
            self.check_new_symbol(n, true)?;
        }
        self.params = ParamRing::new(&self.field, names).map_err(|e| e.to_string())?;
        Ok(())
    }

    fn parse_relation(&mut self, words: &[&str], body: &str) -> std::result::Result<(), String> {
        if !self.maps.is_empty() {
            return Err("relations must come before maps".into());
        }
        let mut keys = keyed(words)?;
        let pivot = take(&mut keys, "pivot")?;
        no_extra(&keys)?;
        let names = self.params.names().to_vec();
        let pivot = names
            .iter()
            .position(|n| n == pivot)
            .ok_or_else(|| format!("unknown parameter {pivot}"))?;
        let poly = poly_to_ppoly(&parse_poly(&self.field, &names, body.trim())?)?;
        self.params.add_relation(poly, pivot).map_err(|e| e.to_string())
    }

    fn parse_group(&mut self, words: &[&str], body: &str) -> std::result::Result<(), String> {
        let (name, rest) = words.split_first().ok_or("missing group name")?;
        self.check_new_object(name)?;
        let mut keys = keyed(rest)?;
        let vars: Vec<String> = take(&mut keys, "vars")?.split(',').map(str::to_string).collect();
        let pivot = take(&mut keys, "pivot")?;
        no_extra(&keys)?;
        for (i, v) in vars.iter().enumerate() {
            self.check_new_symbol(v, false)?;
            if vars[..i].contains(v) {
                return Err(format!("variable {v} listed twice"));
            }
        }
        let pivot = vars
            .iter()
            .position(|v| v == pivot)
            .ok_or_else(|| format!("pivot {pivot} is not a variable"))?;
        let poly = poly_to_ppoly(&parse_poly(&self.field, &vars, body.trim())?)?;
        let g = HypersurfaceGroup::new(name, vars, poly, pivot).map_err(|e| e.to_string())?;
        self.groups.push(g);
        Ok(())
    }

    fn parse_extension(&mut self, words: &[&str], body: &str) -> std::result::Result<(), String> {
        let (name, rest) = words.split_first().ok_or("missing extension name")?;
        self.check_new_object(name)?;
        let mut keys = keyed(rest)?;
        let center = self
            .group(take(&mut keys, "center")?)
            .map_err(|e| e.to_string())?
            .clone();
        let base = self.group(take(&mut keys, "base")?).map_err(|e| e.to_string())?.clone();
        no_extra(&keys)?;
        let vars: Vec<String> = base
            .vars()
            .iter()
            .cloned()
            .chain(base.vars().iter().map(|v| format!("{v}'")))
            .collect();
        let mut comps: Vec<Option<Poly>> = vec![None; center.nvars()];
        for part in body.split(';') {
            let (label, text) = part.split_once('=').ok_or("expected h<i> = <poly>")?;
            let label = label.trim();
            let idx: usize = label
                .strip_prefix('h')
                .and_then(|s| s.parse().ok())
                .filter(|&i| (1..=comps.len()).contains(&i))
                .ok_or_else(|| format!("bad component label {label}"))?;
            if comps[idx - 1].is_some() {
                return Err(format!("{label} given twice"));
            }
            comps[idx - 1] = Some(parse_poly(&self.field, &vars, text.trim())?);
        }
        let h = comps
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| format!("missing h{}", i + 1)))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let ext = CocycleExtension::new(name, center, base, h).map_err(|e| e.to_string())?;
        self.extensions.push(ext);
        Ok(())
    }

    fn parse_map(&mut self, words: &[&str], body: &str) -> std::result::Result<(), String> {
        let (name, rest) = words.split_first().ok_or("missing map name")?;
        self.check_new_object(name)?;
        let mut keys = keyed(rest)?;
        let source = self.space(take(&mut keys, "from")?).map_err(|e| e.to_string())?;
        let target = self.space(take(&mut keys, "to")?).map_err(|e| e.to_string())?;
        no_extra(&keys)?;
        let tgt_vars = target.var_names();
        let mut coords: Vec<Option<PPoly<Poly>>> = vec![None; tgt_vars.len()];
        for part in body.split(';') {
            let (var, text) = part.split_once("->").ok_or("expected <var> -> <p-poly>")?;
            let var = var.trim();
            let idx = tgt_vars
                .iter()
                .position(|v| v == var)
                .ok_or_else(|| format!("{var} is not a target coordinate"))?;
            if coords[idx].is_some() {
                return Err(format!("coordinate {var} given twice"));
            }
            coords[idx] = Some(self.parse_param_ppoly(&source.var_names(), text.trim())?);
        }
        let coords = coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| format!("missing coordinate {}", tgt_vars[i])))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let m = PPolyMap::new(name, source, target, self.params.clone(), coords).map_err(|e| e.to_string())?;
        self.maps.push(m);
        Ok(())
    }

    /// A p-polynomial in `vars` whose coefficients may involve the parameters.
    pub fn parse_param_ppoly(&self, vars: &[String], text: &str) -> std::result::Result<PPoly<Poly>, String> {
        let params = self.params.names();
        if let Some(clash) = vars.iter().find(|v| params.contains(v)) {
            return Err(format!("{clash} is both a variable and a parameter"));
        }
        let all: Vec<String> = vars.iter().chain(params).cloned().collect();
        let poly = parse_poly(&self.field, &all, text)?;
        let n = vars.len();
        let ring = self.params.ring();
        let mut out = PPoly::zero(&ring, n);
        for (m, c) in poly.terms() {
            let exps = m.exponents();
            let mut occurring = exps[..n].iter().enumerate().filter(|(_, &e)| e > 0);
            let (v, &k) = occurring.next().ok_or("every term must contain one variable")?;
            if occurring.next().is_some() {
                return Err("terms may not multiply two variables".into());
            }
            let e = p_log(self.field.p(), k).ok_or("variable exponents must be powers of p")?;
            let coeff = Poly::term(&ring, Monomial::from_exponents(exps[n..].to_vec()), c.clone());
            out.add_term(v, e, coeff);
        }
        Ok(out)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn params(&self) -> &ParamRing {
        &self.params
    }

    pub fn groups(&self) -> &[HypersurfaceGroup] {
        &self.groups
    }

    pub fn extensions(&self) -> &[CocycleExtension] {
        &self.extensions
    }

    pub fn maps(&self) -> &[PPolyMap] {
        &self.maps
    }

    pub fn group(&self, name: &str) -> Result<&HypersurfaceGroup> {
        self.groups
            .iter()
            .find(|g| g.name() == name)
            .ok_or_else(|| Error::Input(format!("no group named {name}")))
    }

    /// A declared group, or `Ga`.
    pub fn space(&self, name: &str) -> Result<Space> {
        if name == "Ga" {
            return Ok(Space::AffineLine);
        }
        Ok(Space::Group(self.group(name)?.clone()))
    }

    pub fn extension(&self, name: &str) -> Result<&CocycleExtension> {
        self.extensions
            .iter()
            .find(|e| e.name() == name)
            .ok_or_else(|| Error::Input(format!("no extension named {name}")))
    }

    pub fn map(&self, name: &str) -> Result<&PPolyMap> {
        self.maps
            .iter()
            .find(|m| m.name() == name)
            .ok_or_else(|| Error::Input(format!("no map named {name}")))
    }

    pub fn add_group(&mut self, g: HypersurfaceGroup) -> Result<()> {
        self.check_new_object(g.name()).map_err(Error::Input)?;
        self.groups.push(g);
        Ok(())
    }

    /// Canonical text of every declaration, in an order that parses back.
    pub fn serialize(&self) -> String {
        let mut out = vec![self.field.header()];
        if !self.params.is_empty() {
            out.push(format!("params {}", self.params.names().join(", ")));
        }
        for r in self.params.relations().relations() {
            out.push(format!(
                "relation pivot={} : {}",
                self.params.names()[r.pivot],
                r.poly.display_with(self.params.names())
            ));
        }
        out.extend(self.groups.iter().map(HypersurfaceGroup::statement));
        out.extend(self.extensions.iter().map(CocycleExtension::statement));
        out.extend(self.maps.iter().map(PPolyMap::statement));
        out.join("\n") + "\n"
    }
}

/// Variable names of the affine line.
pub fn line_vars() -> Vec<String> {
    vec![LINE_VAR.to_string()]
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOM: &str = "\
# Hom(V, U) at p = 3
field p=3 e=1 gen=a depth=0
params d, e
relation pivot=d : d^(p^2) - d + a*e^p
group V vars=X,Y pivot=X : X^(p^2) - X + a*Y^(p^2)
group U vars=X,Y pivot=X : X^p - X + a*Y^p
group W vars=X,Y pivot=X : X^(p^2) - X + a*Y^p
extension E center=U base=V : h1 = X*X'^p + X^p*X' ; h2 = X*Y'^p + X'*Y^p
map phi from=V to=U : X -> d^p*X + d*X^p ; Y -> e*X + d*Y^p
";

    #[test]
    fn parses_and_round_trips() {
        let s = Session::parse(HOM).unwrap();
        assert_eq!(s.groups().len(), 3);
        assert_eq!(s.params().names(), &["d".to_string(), "e".to_string()]);
        let text = s.serialize();
        let again = Session::parse(&text).unwrap();
        assert_eq!(again, s);
        assert_eq!(again.serialize(), text);
    }

    #[test]
    fn phi_is_a_homomorphism() {
        let s = Session::parse(HOM).unwrap();
        assert!(s.map("phi").unwrap().verify_hom().unwrap().holds);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "field p=3\ngroup G vars=X pivot=X : X*X\n";
        assert!(matches!(Session::parse(bad), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(
            Session::parse("group G vars=X pivot=X : X"),
            Err(Error::Parse { line: 1, .. })
        ));
        let dup = "field p=3\ngroup G vars=X pivot=X : X\ngroup G vars=X pivot=X : X\n";
        assert!(matches!(Session::parse(dup), Err(Error::Parse { line: 3, .. })));
        assert!(Session::parse("field p=4").is_err());
        assert!(Session::parse("field p=3\nmap m from=Ga to=Ga : T -> T*T").is_err());
    }

    #[test]
    fn affine_line_maps() {
        let s = Session::parse("field p=3 depth=1\ngroup W vars=X,Y pivot=X : X + X^p + a*Y^p\nmap g from=Ga to=W : X -> -T^p ; Y -> a^(-1/p)*T + a^(-1/p)*T^p\n").unwrap();
        let g = s.map("g").unwrap();
        assert!(g.verify_hom().unwrap().holds);
        assert_eq!(
            g.statement(),
            "map g from=Ga to=W : X -> 2*T^(p^1) ; Y -> (1/a^(1/p^1))*T^(p^0) + (1/a^(1/p^1))*T^(p^1)"
        );
        assert_eq!(Session::parse(&s.serialize()).unwrap(), s);
    }
}
