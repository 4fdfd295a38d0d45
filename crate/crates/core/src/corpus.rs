//! The worked examples of wound unipotent groups, replayed as a regression suite.

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::FieldElem;
use crate::groups::{classify, HypersurfaceGroup, IdentityCheck};
use crate::homs::{
    derive_hom_constraints, relative_frobenius_map, verify_mutual_inverse, AnsatzCaps, ConstraintSystem,
};
use crate::poly::{Poly, PolyRing, RelationSet};
use crate::ppoly::{DecideOptions, ZeroDecision};
use crate::report::{check_line, classification, tuple_string, Report};
use crate::session::Session;

/// Groups, the Gabber extension and phi_b over F_p(a), for odd p.
pub fn main_text(p: u32) -> String {
    format!(
        "\
field p={p} e=1 gen=a depth=0
params d, e
relation pivot=d : d^(p^2) - d + a*e^p
group W_a vars=X,Y pivot=X : X + X^p + a*Y^p
group V_a vars=X,Y pivot=X : X^(p^2) - X + a*Y^(p^2)
group U vars=X,Y pivot=X : X^p - X + a*Y^p
group W vars=X,Y pivot=X : X^(p^2) - X + a*Y^p
extension U_a center=W_a base=V_a : h1 = X*X'^p - X^p*X' ; h2 = X*Y'^p - X'*Y^p
map phi_b from=V_a to=U : X -> d^p*X + d*X^p ; Y -> e*X + d*Y^p
"
    )
}

/// W_a and its splitting over F_p(a^(1/p)).
pub fn splitting_text(p: u32) -> String {
    format!(
        "\
field p={p} e=1 gen=a depth=1
group W_a vars=X,Y pivot=X : X + X^p + a*Y^p
map f from=W_a to=Ga : T -> X + a^(1/p)*Y
map g from=Ga to=W_a : X -> -T^p ; Y -> a^(-1/p)*T + a^(-1/p)*T^p
"
    )
}

/// The Frobenius twist of W_a, split over F_p(a) itself.
pub fn twist_text(p: u32) -> Result<String> {
    let base = Session::parse(&format!(
        "field p={p} e=1 gen=a depth=0\ngroup W_a vars=X,Y pivot=X : X + X^p + a*Y^p\n"
    ))?;
    let twisted = base.group("W_a")?.twist(1);
    let n = twisted.name();
    Ok(format!(
        "\
field p={p} e=1 gen=a depth=0
group W_a vars=X,Y pivot=X : X + X^p + a*Y^p
{}
map f from={n} to=Ga : T -> X + a*Y
map g from=Ga to={n} : X -> -T^p ; Y -> T/a + T^p/a
",
        twisted.statement()
    ))
}

/// V, U and the b_2 map with parameters on W_2, for p = 2.
pub fn p2_text() -> String {
    "\
field p=2 e=1 gen=a depth=0
params X', Y', Z'
relation pivot=X' : X'^4 + X' + a*Y'^2 + a^2*Z'^8
group V vars=X,Y pivot=X : X^4 + X + a*Y^4
group U vars=X,Y pivot=X : X^2 + X + a*Y^2
group W_2 vars=X,Y,Z pivot=X : X^4 + X + a*Y^2 + a^2*Z^8
map b_2 from=V to=U : X -> X*X'^2 + a*X*Z'^4 + X^2*X' + a*Y^2*Z'^2 ; Y -> X*Y' + X^2*Z'^2 + Y*Z' + Y^2*X'
"
    .to_string()
}

/// One example with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusItem {
    pub name: String,
    pub passed: bool,
    pub report: Report,
    /// Every polynomial identity decided for this item.
    pub checks: Vec<IdentityCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusReport {
    pub p: u32,
    pub items: Vec<CorpusItem>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn checks(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.items.iter().flat_map(|i| &i.checks)
    }

    pub fn to_report(&self) -> Report {
        let mut out = Report::new();
        out.push("selftest", format!("p={}", self.p));
        for item in &self.items {
            out.push("item", &item.name);
            out.extend(item.report.clone());
            out.push("result", if item.passed { "pass" } else { "FAIL" });
        }
        let passed = self.items.iter().filter(|i| i.passed).count();
        out.push("summary", format!("{passed}/{} passed", self.items.len()));
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CorpusOptions {
    pub decide: DecideOptions,
    /// Runs independent items concurrently; the order of the report is fixed.
    pub exec: Execution,
}

#[derive(Clone, Debug)]
enum Expect {
    Wound,
    Split(Vec<FieldElem>),
}

fn classify_item(s: &Session, group: &str, expect: Expect, opts: &CorpusOptions) -> Result<CorpusItem> {
    let g = s.group(group)?;
    let r = classify(g, &opts.decide)?;
    let report = classification(g, &r);
    let mut checks = Vec::new();
    let passed = r.smooth
        && match (&expect, &r.wound) {
            (Expect::Wound, ZeroDecision::NoZero(c)) => c.verify(),
            (Expect::Split(w), ZeroDecision::Zero { witness, .. }) => {
                let check = witness_check(&r.principal_part, witness)?;
                let ok = check.holds && witness == w;
                checks.push(check);
                ok
            }
            _ => false,
        };
    let name = match expect {
        Expect::Wound => format!("{group} is wound"),
        Expect::Split(w) => format!("{group} has the zero {}", tuple_string(&w)),
    };
    Ok(CorpusItem {
        name,
        passed,
        report,
        checks,
    })
}

/// The principal part evaluated at a witness, as a constant identity.
fn witness_check(principal: &crate::ppoly::PPoly<FieldElem>, witness: &[FieldElem]) -> Result<IdentityCheck> {
    let field = principal.field();
    let value = principal.evaluate(witness)?;
    let ring = PolyRing::new(field, 0);
    IdentityCheck::decide(
        format!("principal part vanishes at {}", tuple_string(witness)),
        vec![Poly::constant(&ring, value)],
        RelationSet::new(field, 0),
    )
}

/// Item passing iff every check has the expected outcome.
fn checks_item(name: &str, checks: Vec<(IdentityCheck, bool)>) -> CorpusItem {
    let mut report = Report::new();
    let mut passed = true;
    for (c, expected) in &checks {
        check_line(&mut report, c);
        passed &= c.holds == *expected;
    }
    CorpusItem {
        name: name.into(),
        passed,
        report,
        checks: checks.into_iter().map(|(c, _)| c).collect(),
    }
}

fn all_hold(checks: Vec<IdentityCheck>) -> Vec<(IdentityCheck, bool)> {
    checks.into_iter().map(|c| (c, true)).collect()
}

/// For the default ansatz (cX + dX^p + F(Y), eX + fX^p + G(Y)) of Hom(V, U):
/// c - d^p - af^p, d - c^p - ae^p and the Y-coefficients of
/// F(Y)^p - F(Y) + aG(Y)^p - (ad^p + a^2f^p)Y^(p^2).
pub fn expected_hom_equations(cs: &ConstraintSystem) -> Result<Vec<Poly>> {
    let names = cs.unknown_names();
    let var = |n: String| -> Result<Poly> {
        let i = names
            .iter()
            .position(|x| *x == n)
            .ok_or_else(|| Error::Input(format!("ansatz lacks {n}")))?;
        Ok(Poly::var(&cs.ring, i))
    };
    let field = cs.ring.field();
    let p = field.p() as u64;
    let a = Poly::constant(&cs.ring, FieldElem::gen(field));
    let (c, d, e, f) = (
        var("c0_X0".into())?,
        var("c0_X1".into())?,
        var("c1_X0".into())?,
        var("c1_X1".into())?,
    );
    let ycap = names.iter().filter(|n| n.starts_with("c0_Y")).count();
    let fy: Vec<Poly> = (0..ycap).map(|j| var(format!("c0_Y{j}"))).collect::<Result<_>>()?;
    let gy: Vec<Poly> = (0..ycap).map(|j| var(format!("c1_Y{j}"))).collect::<Result<_>>()?;
    let zero = Poly::zero(&cs.ring);
    let mut eqs = vec![
        c.sub(&d.pow(p)).sub(&a.mul(&f.pow(p))),
        d.sub(&c.pow(p)).sub(&a.mul(&e.pow(p))),
    ];
    for j in 0..=ycap {
        let fj = fy.get(j).unwrap_or(&zero);
        let mut eq = fj.neg();
        if j > 0 {
            eq = eq.add(&fy[j - 1].pow(p)).add(&a.mul(&gy[j - 1].pow(p)));
        }
        if j == 2 {
            eq = eq.sub(&a.mul(&d.pow(p))).sub(&a.pow(2).mul(&f.pow(p)));
        }
        eqs.push(eq);
    }
    Ok(eqs)
}

/// Whether two lists agree as sets after normalization.
pub fn same_equations(got: &[Poly], expected: &[Poly]) -> bool {
    let norm = |ps: &[Poly]| -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for q in ps.iter().filter(|q| !q.is_zero()).map(crate::homs::normalize) {
            if !out.contains(&q) {
                out.push(q);
            }
        }
        out
    };
    let (g, e) = (norm(got), norm(expected));
    g.len() == e.len() && g.iter().all(|q| e.contains(q))
}

fn derive_item(s: &Session) -> Result<CorpusItem> {
    let (v, u) = (s.space("V_a")?, s.space("U")?);
    let cs = derive_hom_constraints(s.field(), &v, &u, &AnsatzCaps::default_for(&v, &u))?;
    let expected = expected_hom_equations(&cs)?;
    let passed = same_equations(&cs.constraints, &expected);
    let mut report = Report::new();
    report.push("unknowns", cs.unknown_names().join(", "));
    report.push("constraints", cs.constraints.len());
    report.push("matches expected equations", passed);
    Ok(CorpusItem {
        name: "Hom(V_a, U) constraints".into(),
        passed,
        report,
        checks: Vec::new(),
    })
}

type ItemFn<'a> = Box<dyn Fn() -> Result<CorpusItem> + Send + Sync + 'a>;

fn odd_items<'a>(
    main: &'a Session,
    split: &'a Session,
    twist: &'a Session,
    opts: &'a CorpusOptions,
) -> Vec<ItemFn<'a>> {
    let field = twist.field();
    let minus_a = FieldElem::gen(field).neg();
    let witness = vec![minus_a, FieldElem::one(field)];
    let twisted = twist.groups()[1].name().to_string();
    let mut items: Vec<ItemFn<'a>> = ["W_a", "V_a", "U", "W"]
        .into_iter()
        .map(|g| Box::new(move || classify_item(main, g, Expect::Wound, opts)) as ItemFn<'a>)
        .collect();
    items.push(Box::new(move || {
        let report = verify_mutual_inverse(split.map("f")?, split.map("g")?)?;
        Ok(checks_item("W_a splits over F_p(a^(1/p))", all_hold(report.checks)))
    }));
    items.push(Box::new(move || {
        let ext = main.extension("U_a")?;
        let mut checks = all_hold(ext.check_biadditive()?);
        checks.push((ext.is_alternating()?, true));
        checks.push((ext.check_lands_in()?, true));
        Ok(checks_item("Gabber cocycle h", checks))
    }));
    items.push(Box::new(move || {
        let ext = main.extension("U_a")?;
        let mut checks = all_hold(ext.check_group_axioms()?.checks);
        checks.push((ext.is_commutative()?, false));
        Ok(checks_item("U_a is a non-commutative group", checks))
    }));
    items.push(Box::new(move || {
        Ok(checks_item(
            "phi_b is a homomorphism",
            vec![(main.map("phi_b")?.verify_hom()?, true)],
        ))
    }));
    items.push(Box::new(move || derive_item(main)));
    items.push(Box::new(move || {
        classify_item(twist, &twisted, Expect::Split(witness.clone()), opts)
    }));
    items.push(Box::new(move || {
        let report = verify_mutual_inverse(twist.map("f")?, twist.map("g")?)?;
        Ok(checks_item(
            "Frobenius twist of W_a splits over F_p(a)",
            all_hold(report.checks),
        ))
    }));
    items.push(Box::new(move || {
        let frob = relative_frobenius_map(twist.group("W_a")?, 1);
        let mut item = checks_item("relative Frobenius of W_a", vec![(frob.verify_hom()?, true)]);
        item.report.lines.insert(0, ("map".into(), frob.statement()));
        Ok(item)
    }));
    items
}

fn p2_items<'a>(s: &'a Session, opts: &'a CorpusOptions) -> Vec<ItemFn<'a>> {
    vec![
        Box::new(move || classify_item(s, "W_2", Expect::Wound, opts)),
        Box::new(move || Ok(checks_item("b_2 lands in U", vec![(s.map("b_2")?.verify_hom()?, true)]))),
    ]
}

/// Every example for the prime p (2, 3 or 5).
pub fn selftest(p: u32, opts: &CorpusOptions) -> Result<CorpusReport> {
    let run = |items: Vec<ItemFn<'_>>| -> Result<Vec<CorpusItem>> {
        opts.exec.map(items.len(), |i| items[i]()).into_iter().collect()
    };
    let items = match p {
        2 => {
            let s = Session::parse(&p2_text())?;
            run(p2_items(&s, opts))?
        }
        3 | 5 => {
            let main = Session::parse(&main_text(p))?;
            let split = Session::parse(&splitting_text(p))?;
            let twist = Session::parse(&twist_text(p)?)?;
            run(odd_items(&main, &split, &twist, opts))?
        }
        _ => return Err(Error::Input(format!("no examples for p = {p}; choose 2, 3 or 5"))),
    };
    Ok(CorpusReport { p, items })
}

/// A group of the examples (p = 2 uses the W_2 file).
pub fn example_group(p: u32, name: &str) -> Result<HypersurfaceGroup> {
    let s = Session::parse(&if p == 2 { p2_text() } else { main_text(p) })?;
    s.group(name).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_corpus_passes() {
        for p in [3, 5] {
            let r = selftest(p, &CorpusOptions::default()).unwrap();
            assert!(r.passed(), "{}", r.to_report());
        }
    }

    #[test]
    fn p2_corpus_passes() {
        let r = selftest(2, &CorpusOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.to_report());
    }

    #[test]
    fn texts_round_trip() {
        for text in [main_text(3), splitting_text(5), twist_text(3).unwrap(), p2_text()] {
            let s = Session::parse(&text).unwrap();
            assert_eq!(Session::parse(&s.serialize()).unwrap(), s);
        }
    }
}
