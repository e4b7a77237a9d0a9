//! The acceptance battery: seventeen checks over the catalog and the
//! enumerated algebras, each reported with a status and, on failure, a
//! witness.

use std::fmt;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{validate_axioms, Elem, FiniteAlgebra, Signature};
use crate::catalog::{battery_names, Catalog};
use crate::constructions::{diamond, is_test_d, is_test_i, TestWitness};
use crate::enumeration::{count_crosscheck, enumerate_algebras, EnumFilter};
use crate::morphisms::{
    all_homomorphisms, embeds, homomorphisms, is_absolute_retract_relative, is_embedding,
    is_injective_relative, is_isomorphic, is_retract_of, is_rigid, is_self_injective,
    maximum_simple, retraction_along, MaximumSimple, SearchConstraint, SearchMode,
};
use crate::structure::{
    all_congruences, all_filters, cep_check, congruence_of_filter, filter_of, is_simple,
    radical_report,
};
use crate::varieties::{classify, holds_equation, EquationId, Variety};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub group: &'static str,
    /// The mathematical statement the check exercises.
    pub anchor: &'static str,
    pub status: Status,
    pub witness: Option<String>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    /// The report without timing fields, for comparing runs.
    pub fn timeless(&self) -> String {
        self.checks
            .iter()
            .map(|c| format!("{} {} {} {:?}\n", c.id, c.name, c.status, c.witness))
            .collect()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(
                f,
                "{} {:02} {:<28} [{}] {}",
                c.status, c.id, c.name, c.group, c.anchor
            )?;
            if c.status != Status::Skip {
                write!(f, " ({:.1} ms)", c.wall_ms)?;
            }
            writeln!(f)?;
            if let Some(w) = &c.witness {
                writeln!(f, "     witness: {w}")?;
            }
        }
        let run = self
            .checks
            .iter()
            .filter(|c| c.status != Status::Skip)
            .count();
        let failed = self
            .checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count();
        writeln!(
            f,
            "{} checks run, {} failed: {}",
            run,
            failed,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

type CheckFn = fn(&Universe) -> Result<(), String>;

pub struct CheckSpec {
    pub id: usize,
    pub name: &'static str,
    pub group: &'static str,
    pub anchor: &'static str,
    run: CheckFn,
}

pub const CHECKS: &[CheckSpec] = &[
    CheckSpec {
        id: 1,
        name: "catalog-validity",
        group: "catalog",
        anchor: "catalog algebras satisfy their axioms and residuals are unique",
        run: catalog_validity,
    },
    CheckSpec {
        id: 2,
        name: "filter-congruence",
        group: "filters",
        anchor: "implicative filters correspond to congruences",
        run: filter_congruence,
    },
    CheckSpec {
        id: 3,
        name: "radical-coherence",
        group: "radical",
        anchor: "radical is the set of unities and contains the dense elements",
        run: radical_coherence,
    },
    CheckSpec {
        id: 4,
        name: "simplicity-coherence",
        group: "simplicity",
        anchor: "simple iff every element below 1 is nilpotent",
        run: simplicity_coherence,
    },
    CheckSpec {
        id: 5,
        name: "diamond-battery",
        group: "diamond",
        anchor: "the diamond extension is a residuated lattice containing A",
        run: diamond_battery,
    },
    CheckSpec {
        id: 6,
        name: "diamond-no-retraction",
        group: "diamond",
        anchor: "A is never a retract of its diamond along the diagonal",
        run: diamond_no_retraction,
    },
    CheckSpec {
        id: 7,
        name: "simple-wnm",
        group: "wnm",
        anchor: "simple WNM algebras are the ordinal algebras",
        run: simple_wnm,
    },
    CheckSpec {
        id: 8,
        name: "simple-nm",
        group: "nm",
        anchor: "simple NM algebras embed in L3, the maximum simple NM algebra",
        run: simple_nm,
    },
    CheckSpec {
        id: 9,
        name: "boolean-injectivity",
        group: "srl",
        anchor: "2 is injective among SRL algebras",
        run: boolean_injectivity,
    },
    CheckSpec {
        id: 10,
        name: "test-d-obstruction",
        group: "obstruction",
        anchor: "H4 obstructs H3 from being an absolute retract",
        run: test_d_obstruction,
    },
    CheckSpec {
        id: 11,
        name: "test-i-obstruction",
        group: "obstruction",
        anchor: "nm:6 is a test_I-algebra with no map onto I4 fixing the witness",
        run: test_i_obstruction,
    },
    CheckSpec {
        id: 12,
        name: "no-maximum-simple-imtl",
        group: "imtl",
        anchor: "no simple IMTL chain receives both L4 and I6",
        run: no_maximum_simple_imtl,
    },
    CheckSpec {
        id: 13,
        name: "pismtl-idempotent-dense",
        group: "pismtl",
        anchor: "in PiSMTL the top is the only idempotent dense element",
        run: pismtl_idempotent_dense,
    },
    CheckSpec {
        id: 14,
        name: "cep",
        group: "cep",
        anchor: "residuated lattices have the congruence extension property",
        run: cep,
    },
    CheckSpec {
        id: 15,
        name: "mtl-unities",
        group: "mtl",
        anchor: "MTL unities exceed their negations and the radical has a minimum",
        run: mtl_unities,
    },
    CheckSpec {
        id: 16,
        name: "hoop-simple-mv",
        group: "hoops",
        anchor: "simple bounded hoops are MV-algebras and maps between them fix 0",
        run: hoop_simple_mv,
    },
    CheckSpec {
        id: 17,
        name: "enumeration-oracle",
        group: "enumeration",
        anchor: "two enumeration strategies agree and outputs are pairwise non-isomorphic",
        run: enumeration_oracle,
    },
];

/// Catalog access plus enumerations shared between checks.
pub struct Universe<'a> {
    catalog: &'a Catalog,
    rl: [OnceLock<Vec<FiniteAlgebra>>; 4],
}

impl<'a> Universe<'a> {
    pub fn new(catalog: &'a Catalog) -> Self {
        Self {
            catalog,
            rl: Default::default(),
        }
    }

    fn get(&self, name: &str) -> Result<FiniteAlgebra, String> {
        self.catalog.get(name).map_err(|e| e.to_string())
    }

    /// Residuated lattices of size `n` in `2..=5`, one per class.
    fn rl(&self, n: usize) -> &[FiniteAlgebra] {
        self.rl[n - 2].get_or_init(|| {
            enumerate_algebras(n, Signature::ResiduatedLattice, &EnumFilter::default())
                .expect("size in range")
        })
    }

    fn rl_upto(&self, n: usize) -> Vec<&FiniteAlgebra> {
        (2..=n).flat_map(|k| self.rl(k)).collect()
    }

    /// Enumerated members of `v` up to size `n`; an empty class is an error
    /// so that no check passes vacuously.
    fn rl_in(&self, n: usize, v: Variety) -> Result<Vec<&FiniteAlgebra>, String> {
        let out: Vec<&FiniteAlgebra> = self
            .rl_upto(n)
            .into_iter()
            .filter(|a| classify(a).is(v))
            .collect();
        ensure(!out.is_empty(), || {
            format!("no enumerated {v} algebra of size <= {n}")
        })?;
        Ok(out)
    }

    fn catalog_upto(&self, n: usize) -> Result<Vec<FiniteAlgebra>, String> {
        let all: Result<Vec<FiniteAlgebra>, String> =
            battery_names().iter().map(|name| self.get(name)).collect();
        Ok(all?.into_iter().filter(|a| a.size() <= n).collect())
    }

    /// Catalog algebras of size at most 6 and enumerated ones of size at
    /// most 4.
    fn standard_set(&self) -> Result<Vec<FiniteAlgebra>, String> {
        let mut out = self.catalog_upto(6)?;
        out.extend(self.rl_upto(4).into_iter().cloned());
        Ok(out)
    }
}

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn catalog_validity(u: &Universe) -> Result<(), String> {
    let algebras: Vec<FiniteAlgebra> = battery_names()
        .iter()
        .map(|n| u.get(n))
        .collect::<Result<_, _>>()?;
    algebras.par_iter().try_for_each(|a| {
        let report = validate_axioms(a);
        ensure(report.is_valid(), || {
            format!("{} fails validation: {report}", a.label())
        })?;
        let mut parts = a.clone().into_parts();
        for x in a.elements() {
            for y in a.elements() {
                let original = a.imp(x, y);
                for v in a.elements().filter(|&v| v != original) {
                    parts.imp.set(x, y, v);
                    let mutated = FiniteAlgebra::new(parts.clone()).map_err(|e| e.to_string())?;
                    ensure(!validate_axioms(&mutated).is_valid(), || {
                        format!("{} still validates with imp({x},{y}) = {v}", a.label())
                    })?;
                }
                parts.imp.set(x, y, original);
            }
        }
        Ok(())
    })
}

fn filter_congruence(u: &Universe) -> Result<(), String> {
    u.standard_set()?.par_iter().try_for_each(|a| {
        let filters = all_filters(a, false);
        let congruences = all_congruences(a);
        ensure(filters.len() == congruences.len(), || {
            format!(
                "{}: {} filters but {} congruences",
                a.label(),
                filters.len(),
                congruences.len()
            )
        })?;
        for f in &filters {
            let theta = congruence_of_filter(a, f);
            ensure(
                congruences.contains(&theta) && &filter_of(a, &theta) == f,
                || format!("{}: filter {f} does not round-trip", a.label()),
            )?;
        }
        for theta in &congruences {
            ensure(
                &congruence_of_filter(a, &filter_of(a, theta)) == theta,
                || {
                    format!(
                        "{}: congruence {:?} does not round-trip",
                        a.label(),
                        theta.classes()
                    )
                },
            )?;
        }
        Ok(())
    })
}

fn radical_coherence(u: &Universe) -> Result<(), String> {
    // radical_report errors when the two radical computations disagree
    for a in u.standard_set()? {
        let r = radical_report(&a).map_err(|e| format!("{}: {e}", a.label()))?;
        ensure(r.dense.members().is_subset(r.radical.members()), || {
            format!(
                "{}: dense set {} is not inside radical {}",
                a.label(),
                r.dense,
                r.radical
            )
        })?;
    }
    let mut must_match: Vec<FiniteAlgebra> =
        u.rl_in(4, Variety::Srl)?.into_iter().cloned().collect();
    must_match.extend(u.rl_in(5, Variety::Bl)?.into_iter().cloned());
    must_match.extend(
        u.catalog_upto(5)?
            .into_iter()
            .filter(|a| classify(a).is(Variety::Bl)),
    );
    for a in must_match {
        let r = radical_report(&a).map_err(|e| format!("{}: {e}", a.label()))?;
        ensure(r.radical == r.dense, || {
            format!(
                "{}: radical {} but dense set {}",
                a.label(),
                r.radical,
                r.dense
            )
        })?;
    }
    Ok(())
}

fn simplicity_coherence(u: &Universe) -> Result<(), String> {
    for a in u.standard_set()? {
        is_simple(&a).map_err(|e| format!("{}: {e}", a.label()))?;
    }
    let simple = |name: &str| -> Result<bool, String> {
        is_simple(&u.get(name)?).map_err(|e| format!("{name}: {e}"))
    };
    ensure(simple("I6")?, || "I6 is not simple".into())?;
    ensure(!simple("I4")?, || "I4 is simple".into())?;
    ensure(simple("L3")?, || "L3 is not simple".into())
}

fn diamond_battery(u: &Universe) -> Result<(), String> {
    for a in u.rl_upto(4) {
        let d = diamond(a).map_err(|e| e.to_string())?;
        let da = &d.algebra;
        let report = validate_axioms(da);
        ensure(report.is_valid(), || {
            format!("diamond({}) invalid: {report}", a.label())
        })?;
        ensure(is_embedding(a, da, &d.embedding), || {
            format!("diagonal of {} is not an embedding", a.label())
        })?;
        for (i, &(x, y)) in d.pairs.iter().enumerate() {
            let (nx, ny) = (a.neg(x).unwrap_or(x), a.neg(y).unwrap_or(y));
            ensure(da.neg(i).map(|z| d.pairs[z]) == Some((ny, nx)), || {
                format!(
                    "diamond({}): negation of ({x},{y}) is not ({ny},{nx})",
                    a.label()
                )
            })?;
        }
        for eq in [EquationId::Inv, EquationId::Dist] {
            let base = holds_equation(a, eq).map_err(|e| e.to_string())?.holds;
            let ext = holds_equation(da, eq).map_err(|e| e.to_string())?.holds;
            ensure(base == ext, || {
                format!(
                    "{}: {} is {base} but {ext} on its diamond",
                    a.label(),
                    eq.name()
                )
            })?;
        }
    }
    let d2 = diamond(&u.get("2")?).map_err(|e| e.to_string())?;
    ensure(is_isomorphic(&d2.algebra, &u.get("L3")?), || {
        "diamond(2) is not L3".into()
    })
}

fn diamond_no_retraction(u: &Universe) -> Result<(), String> {
    for a in u.rl_upto(4) {
        let d = diamond(a).map_err(|e| e.to_string())?;
        if let Some(f) = retraction_along(a, &d.algebra, &d.embedding) {
            return Err(format!("{} is a retract of its diamond via {f}", a.label()));
        }
    }
    // the forced values of a putative retraction, computed on diamond(2)
    let two = u.get("2")?;
    let d = diamond(&two).map_err(|e| e.to_string())?;
    let da = &d.algebra;
    let at = |x: Elem, y: Elem| {
        d.index_of(x, y)
            .ok_or_else(|| format!("({x},{y}) is not in diamond(2)"))
    };
    let mid = at(0, two.top())?;
    ensure(da.neg(mid) == Some(mid), || {
        "(0,1) is not a negation fixpoint".into()
    })?;
    for x in two.elements() {
        let x1 = at(x, two.top())?;
        let xx = at(x, x)?;
        ensure(da.imp(mid, xx) == x1, || {
            format!("(0,1) -> ({x},{x}) is not ({x},1)")
        })?;
        let sq = da.prod(x1, x1);
        ensure(d.pairs[sq] == (two.prod(x, x), x) && da.leq(sq, xx), || {
            format!(
                "({x},1)^2 = {:?} is not ({x}*{x},{x}) below ({x},{x})",
                d.pairs[sq]
            )
        })?;
    }
    ensure(all_homomorphisms(da, &two).is_empty(), || {
        "diamond(2) maps onto 2".into()
    })
}

fn simple_wnm(u: &Universe) -> Result<(), String> {
    for n in 2..=5 {
        let ord = u.get(&format!("ordwnm:{n}"))?;
        for a in u.rl(n).iter().filter(|a| classify(a).is(Variety::Wnm)) {
            let simple = is_simple(a).map_err(|e| e.to_string())?;
            let ordinal = is_isomorphic(a, &ord);
            ensure(simple == ordinal, || {
                format!("{}: simple={simple} but ordinal={ordinal}", a.label())
            })?;
        }
    }
    for n in 2..=8 {
        let ord = u.get(&format!("ordwnm:{n}"))?;
        ensure(is_simple(&ord).map_err(|e| e.to_string())?, || {
            format!("ordwnm:{n} is not simple")
        })?;
    }
    Ok(())
}

fn simple_nm(u: &Universe) -> Result<(), String> {
    let (two, l3) = (u.get("2")?, u.get("L3")?);
    let simple: Vec<FiniteAlgebra> = u
        .rl_in(5, Variety::Nm)?
        .into_iter()
        .filter(|a| is_simple(a).unwrap_or(false))
        .cloned()
        .collect();
    for a in &simple {
        ensure(is_isomorphic(a, &two) || is_isomorphic(a, &l3), || {
            format!("{} is simple NM but not 2 or L3", a.label())
        })?;
    }
    ensure(is_self_injective(&l3), || "L3 is not self-injective".into())?;
    ensure(is_rigid(&l3), || "L3 is not rigid".into())?;
    match maximum_simple(&simple) {
        MaximumSimple::Found(i) if is_isomorphic(&simple[i], &l3) => Ok(()),
        other => Err(format!("maximum simple NM is {other:?}")),
    }
}

fn boolean_injectivity(u: &Universe) -> Result<(), String> {
    let class: Vec<FiniteAlgebra> = u.rl_in(4, Variety::Srl)?.into_iter().cloned().collect();
    is_injective_relative(&u.get("2")?, &class).map_err(|f| {
        format!(
            "{} -> {} mono {} with map {} does not extend",
            class[f.domain_index].label(),
            class[f.codomain_index].label(),
            f.mono,
            f.map
        )
    })
}

fn test_d_obstruction(u: &Universe) -> Result<(), String> {
    let (h3, h4) = (u.get("H3")?, u.get("H4")?);
    let r = is_test_d(&h4).ok_or("H4 has no radical report")?;
    ensure(r.witness == Some(TestWitness { epsilon: 2, t: 1 }), || {
        format!("H4 test_d witness is {:?}", r.witness)
    })?;
    let pinned = SearchConstraint::mode(SearchMode::Exists).pin(2, 1);
    let found = homomorphisms(&h4, &h3, &pinned).map_err(|e| e.to_string())?;
    ensure(found.count() == 0, || {
        format!("H4 -> H3 with a -> e exists: {found:?}")
    })?;
    ensure(
        is_absolute_retract_relative(&h3, std::slice::from_ref(&h4)).is_err(),
        || "H3 is an absolute retract relative to {H4}".into(),
    )?;
    ensure(is_retract_of(&h3, &h4).is_some(), || {
        "H3 is not a retract of H4".into()
    })
}

fn test_i_obstruction(u: &Universe) -> Result<(), String> {
    let (nm6, i4) = (u.get("nm:6")?, u.get("I4")?);
    let w = is_test_i(&nm6);
    ensure(w == Some(TestWitness { epsilon: 4, t: 3 }), || {
        format!("nm:6 test_I witness is {w:?}")
    })?;
    let pinned = SearchConstraint::mode(SearchMode::Exists)
        .pin(4, 2)
        .pin(3, 2);
    let found = homomorphisms(&nm6, &i4, &pinned).map_err(|e| e.to_string())?;
    ensure(found.count() == 0, || {
        format!("nm:6 -> I4 with e, t -> a exists: {found:?}")
    })
}

fn no_maximum_simple_imtl(u: &Universe) -> Result<(), String> {
    let (l4, i6) = (u.get("luk:4")?, u.get("I6")?);
    let filter = EnumFilter::variety(Variety::Imtl).chains();
    let mut class = Vec::new();
    for n in 2..=6 {
        let found = enumerate_algebras(n, Signature::ResiduatedLattice, &filter)
            .map_err(|e| e.to_string())?;
        class.extend(found.into_iter().filter(|a| is_simple(a).unwrap_or(false)));
    }
    let position = |b: &FiniteAlgebra| class.iter().position(|a| is_isomorphic(a, b));
    let (pl, pi) = (
        position(&l4).ok_or("L4 not among simple IMTL chains")?,
        position(&i6).ok_or("I6 not among simple IMTL chains")?,
    );
    if let Some(c) = class.iter().find(|c| embeds(&l4, c) && embeds(&i6, c)) {
        return Err(format!("{} receives both L4 and I6", c.label()));
    }
    match maximum_simple(&class) {
        MaximumSimple::None { certificates } => {
            let key = (pl.min(pi), pl.max(pi));
            ensure(certificates.contains(&key), || {
                format!("certificates {certificates:?} miss {key:?}")
            })
        }
        MaximumSimple::Found(i) => Err(format!("{} reported as maximum simple", class[i].label())),
    }
}

fn pismtl_idempotent_dense(u: &Universe) -> Result<(), String> {
    for a in u.rl_in(4, Variety::PiSmtl)? {
        let bad = a
            .elements()
            .find(|&x| x != a.top() && a.is_idempotent(x) && a.is_dense(x) == Some(true));
        ensure(bad.is_none(), || {
            format!("{}: {bad:?} is idempotent and dense", a.label())
        })?;
    }
    Ok(())
}

fn cep(u: &Universe) -> Result<(), String> {
    u.standard_set()?.par_iter().try_for_each(|a| {
        let c = cep_check(a);
        ensure(c.holds, || format!("{}: {:?}", a.label(), c.witness))
    })
}

fn mtl_unities(u: &Universe) -> Result<(), String> {
    for a in u.rl_in(4, Variety::Mtl)? {
        for e in a.elements().filter(|&e| a.is_unity(e) == Some(true)) {
            ensure(a.neg(e).is_some_and(|ne| a.lt(ne, e)), || {
                format!("{}: unity {e} has no neg below it", a.label())
            })?;
        }
        let r = radical_report(a).map_err(|e| e.to_string())?;
        let p = r
            .principal_unity
            .ok_or_else(|| format!("{}: radical {} has no minimum", a.label(), r.radical))?;
        let np = a.neg(p).ok_or("no negation")?;
        for x in r.radical.members().iter() {
            ensure(a.imp(x, np) == np, || {
                format!("{}: {x} -> neg {p} differs from neg {p}", a.label())
            })?;
        }
    }
    Ok(())
}

fn hoop_simple_mv(_u: &Universe) -> Result<(), String> {
    let mut simple = Vec::new();
    for n in 2..=4 {
        let hoops = enumerate_algebras(n, Signature::BoundedHoop, &EnumFilter::default())
            .map_err(|e| e.to_string())?;
        simple.extend(hoops.into_iter().filter(|h| is_simple(h).unwrap_or(false)));
    }
    for h in &simple {
        ensure(
            holds_equation(h, EquationId::Inv).is_ok_and(|c| c.holds),
            || format!("{} fails INV", h.label()),
        )?;
        let rl = h.with_derived_join().map_err(|e| e.to_string())?;
        let report = validate_axioms(&rl);
        ensure(report.is_valid() && classify(&rl).is(Variety::Mv), || {
            format!(
                "{} with derived join is not an MV-algebra: {report}",
                h.label()
            )
        })?;
    }
    for s in &simple {
        for t in &simple {
            let (sb, tb) = (s.bot().ok_or("no bottom")?, t.bot().ok_or("no bottom")?);
            for f in all_homomorphisms(&s.hoop_reduct(), &t.hoop_reduct()) {
                ensure(f.apply(sb) == tb, || {
                    format!("{} -> {} via {f} moves the bottom", s.label(), t.label())
                })?;
            }
        }
    }
    Ok(())
}

fn enumeration_oracle(u: &Universe) -> Result<(), String> {
    for (n, expected) in [(2, 1), (3, 2)] {
        let c = count_crosscheck(n, Signature::ResiduatedLattice).map_err(|e| e.to_string())?;
        ensure(c.count_a == expected && c.count_b == expected, || {
            format!("size {n}: {c:?}, expected {expected}")
        })?;
    }
    let c = count_crosscheck(4, Signature::ResiduatedLattice).map_err(|e| e.to_string())?;
    ensure(c.agree, || format!("size 4 strategies disagree: {c:?}"))?;
    for n in 2..=4 {
        let out = u.rl(n);
        for (i, a) in out.iter().enumerate() {
            for b in &out[i + 1..] {
                ensure(!is_isomorphic(a, b), || {
                    format!("{} and {} are isomorphic", a.label(), b.label())
                })?;
            }
        }
    }
    Ok(())
}

/// Whether `selector` picks out the check: an id, a name or a group.
pub fn selects(spec: &CheckSpec, selector: &str) -> bool {
    selector == spec.name
        || selector == spec.group
        || selector.parse::<usize>().is_ok_and(|i| i == spec.id)
}

/// Runs the checks picked by `only` (all when empty) against `catalog`.
/// Checks run concurrently; the report lists them in id order.
pub fn paper_suite(catalog: &Catalog, only: &[String]) -> SuiteReport {
    let universe = Universe::new(catalog);
    let checks: Vec<CheckResult> = CHECKS
        .par_iter()
        .map(|spec| {
            let chosen = only.is_empty() || only.iter().any(|s| selects(spec, s));
            let (status, witness, wall_ms) = if chosen {
                let start = Instant::now();
                let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
                    (spec.run)(&universe)
                }))
                .unwrap_or_else(|_| Err("check panicked".to_string()));
                let ms = start.elapsed().as_secs_f64() * 1e3;
                match outcome {
                    Ok(()) => (Status::Pass, None, ms),
                    Err(w) => (Status::Fail, Some(w), ms),
                }
            } else {
                (Status::Skip, None, 0.0)
            };
            CheckResult {
                id: spec.id,
                name: spec.name,
                group: spec.group,
                anchor: spec.anchor,
                status,
                witness,
                wall_ms,
            }
        })
        .collect();
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    SuiteReport { passed, checks }
}

pub fn unknown_selectors(only: &[String]) -> Vec<String> {
    only.iter()
        .filter(|s| !CHECKS.iter().any(|c| selects(c, s)))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::i4;

    #[test]
    fn selection_by_group_name_and_id() {
        let only = ["diamond".to_string()];
        let chosen: Vec<usize> = CHECKS
            .iter()
            .filter(|c| only.iter().any(|s| selects(c, s)))
            .map(|c| c.id)
            .collect();
        assert_eq!(chosen, vec![5, 6]);
        assert!(selects(&CHECKS[0], "1"));
        assert!(selects(&CHECKS[0], "catalog-validity"));
        assert_eq!(
            unknown_selectors(&["nope".to_string(), "cep".to_string()]),
            vec!["nope".to_string()]
        );
    }

    #[test]
    fn mutated_i4_fails_catalog_check_and_reports_the_rest() {
        let mut parts = i4().into_parts();
        parts.prod.set(2, 2, 1);
        let broken = FiniteAlgebra::new(parts).unwrap();
        let catalog = Catalog::standard().with_override("I4", broken);
        let only = [
            "catalog-validity",
            "simplicity-coherence",
            "test-i-obstruction",
        ]
        .map(String::from);
        let report = paper_suite(&catalog, &only);
        assert!(!report.passed);
        assert_eq!(report.checks[0].status, Status::Fail);
        assert!(report.checks[0].witness.as_deref().unwrap().contains("I4"));
        let run: Vec<usize> = report
            .checks
            .iter()
            .filter(|c| c.status != Status::Skip)
            .map(|c| c.id)
            .collect();
        assert_eq!(run, vec![1, 4, 11]);
    }
}
