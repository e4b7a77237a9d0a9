//! Homomorphism search and the retract and injectivity predicates,
//! relativized to finite classes.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Elem, FiniteAlgebra, Signature, Table};
use crate::constructions::{all_subalgebras, subalgebra_on};
use crate::structure::{is_simple, simplicity_report};

/// A map between carriers, stored as the image of each source index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct Morphism {
    map: Vec<Elem>,
}

impl Morphism {
    pub fn new(map: Vec<Elem>) -> Self {
        Self { map }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn source_size(&self) -> usize {
        self.map.len()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.iter().all(|y| seen.insert(*y))
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Morphism) -> Morphism {
        Morphism::new(self.map.iter().map(|&y| then.apply(y)).collect())
    }
}

impl std::fmt::Display for Morphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (x, y) in self.map.iter().enumerate() {
            if x > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}->{y}")?;
        }
        write!(f, "]")
    }
}

/// `f` preserves every operation and constant of the common signature.
pub fn is_homomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra, f: &Morphism) -> bool {
    if a.signature() != b.signature()
        || f.source_size() != a.size()
        || f.map.iter().any(|&y| y >= b.size())
    {
        return false;
    }
    if a.constants()
        .iter()
        .zip(b.constants())
        .any(|(&c, d)| f.apply(c) != d)
    {
        return false;
    }
    let ops_b = b.operations();
    a.operations().iter().zip(&ops_b).all(|((_, ta), (_, tb))| {
        a.elements().all(|x| {
            a.elements()
                .all(|y| f.apply(ta.get(x, y)) == tb.get(f.apply(x), f.apply(y)))
        })
    })
}

pub fn is_embedding(a: &FiniteAlgebra, b: &FiniteAlgebra, f: &Morphism) -> bool {
    f.is_injective() && is_homomorphism(a, b, f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    #[default]
    All,
    Mono,
    Iso,
    Count,
    Exists,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SearchConstraint {
    pub pins: Vec<(Elem, Elem)>,
    pub mode: SearchMode,
}

impl SearchConstraint {
    pub fn mode(mode: SearchMode) -> Self {
        Self {
            pins: Vec::new(),
            mode,
        }
    }

    pub fn pin(mut self, source: Elem, target: Elem) -> Self {
        self.pins.push((source, target));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchResult {
    Morphisms(Vec<Morphism>),
    Count(usize),
    Exists(Option<Morphism>),
}

impl SearchResult {
    pub fn count(&self) -> usize {
        match self {
            SearchResult::Morphisms(v) => v.len(),
            SearchResult::Count(c) => *c,
            SearchResult::Exists(w) => usize::from(w.is_some()),
        }
    }

    pub fn into_morphisms(self) -> Vec<Morphism> {
        match self {
            SearchResult::Morphisms(v) => v,
            SearchResult::Exists(w) => w.into_iter().collect(),
            SearchResult::Count(_) => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("signatures differ: {0} vs {1}")]
    SignatureMismatch(Signature, Signature),
    #[error("pin {source_elem}->{target} is out of range")]
    PinOutOfRange { source_elem: Elem, target: Elem },
    #[error("element {source_elem} is pinned to both {first} and {second}")]
    InconsistentPins {
        source_elem: Elem,
        first: Elem,
        second: Elem,
    },
}

const UNSET: Elem = usize::MAX;

/// Partial map with forward propagation through the operation tables.
#[derive(Clone)]
struct Partial<'a> {
    ops: &'a [(&'a Table, &'a Table)],
    map: Vec<Elem>,
    used: Vec<bool>,
    injective: bool,
}

impl<'a> Partial<'a> {
    fn new(ops: &'a [(&'a Table, &'a Table)], n: usize, m: usize, injective: bool) -> Self {
        Self {
            ops,
            map: vec![UNSET; n],
            used: vec![false; m],
            injective,
        }
    }

    /// Assigns `x ↦ v` and everything it forces. False on contradiction.
    fn assign(&mut self, x: Elem, v: Elem) -> bool {
        let mut queue = vec![(x, v)];
        while let Some((x, v)) = queue.pop() {
            match self.map[x] {
                UNSET => {}
                w if w == v => continue,
                _ => return false,
            }
            if self.injective {
                if self.used[v] {
                    return false;
                }
                self.used[v] = true;
            }
            self.map[x] = v;
            for y in 0..self.map.len() {
                let w = self.map[y];
                if w == UNSET {
                    continue;
                }
                for (ta, tb) in self.ops {
                    queue.push((ta.get(x, y), tb.get(v, w)));
                    queue.push((ta.get(y, x), tb.get(w, v)));
                }
            }
        }
        true
    }

    fn first_unset(&self) -> Option<Elem> {
        self.map.iter().position(|&v| v == UNSET)
    }
}

/// Depth-first in carrier index order; `visit` returns false to stop.
fn dfs(p: Partial<'_>, m: usize, visit: &mut dyn FnMut(&[Elem]) -> bool) -> bool {
    let Some(x) = p.first_unset() else {
        return visit(&p.map);
    };
    for v in 0..m {
        let mut q = p.clone();
        if q.assign(x, v) && !dfs(q, m, visit) {
            return false;
        }
    }
    true
}

fn pairs_of<'a>(a: &'a FiniteAlgebra, b: &'a FiniteAlgebra) -> Vec<(&'a Table, &'a Table)> {
    a.operations()
        .into_iter()
        .zip(b.operations())
        .map(|((_, ta), (_, tb))| (ta, tb))
        .collect()
}

/// Homomorphisms `A → B` satisfying the constraint, in lexicographic order
/// of their maps.
pub fn homomorphisms(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    c: &SearchConstraint,
) -> Result<SearchResult, SearchError> {
    if a.signature() != b.signature() {
        return Err(SearchError::SignatureMismatch(a.signature(), b.signature()));
    }
    let mut pinned: Vec<Option<Elem>> = vec![None; a.size()];
    for &(s, t) in &c.pins {
        if s >= a.size() || t >= b.size() {
            return Err(SearchError::PinOutOfRange {
                source_elem: s,
                target: t,
            });
        }
        match pinned[s] {
            Some(first) if first != t => {
                return Err(SearchError::InconsistentPins {
                    source_elem: s,
                    first,
                    second: t,
                })
            }
            _ => pinned[s] = Some(t),
        }
    }
    let injective = matches!(c.mode, SearchMode::Mono | SearchMode::Iso);
    let empty = || match c.mode {
        SearchMode::Count => SearchResult::Count(0),
        SearchMode::Exists => SearchResult::Exists(None),
        _ => SearchResult::Morphisms(Vec::new()),
    };
    if c.mode == SearchMode::Iso && a.size() != b.size() {
        return Ok(empty());
    }
    let ops = pairs_of(a, b);
    let m = b.size();
    let mut root = Partial::new(&ops, a.size(), m, injective);
    let forced = a.constants().into_iter().zip(b.constants()).chain(
        pinned
            .iter()
            .enumerate()
            .filter_map(|(s, t)| t.map(|t| (s, t))),
    );
    for (s, t) in forced.collect::<Vec<_>>() {
        if !root.assign(s, t) {
            return Ok(empty());
        }
    }
    Ok(match c.mode {
        SearchMode::Exists => {
            let mut found = None;
            dfs(root, m, &mut |map| {
                found = Some(Morphism::new(map.to_vec()));
                false
            });
            SearchResult::Exists(found)
        }
        SearchMode::Count => {
            let count = split_root(&root, m)
                .into_par_iter()
                .map(|p| {
                    let mut n = 0usize;
                    dfs(p, m, &mut |_| {
                        n += 1;
                        true
                    });
                    n
                })
                .sum();
            SearchResult::Count(count)
        }
        _ => {
            let chunks: Vec<Vec<Morphism>> = split_root(&root, m)
                .into_par_iter()
                .map(|p| {
                    let mut out = Vec::new();
                    dfs(p, m, &mut |map| {
                        out.push(Morphism::new(map.to_vec()));
                        true
                    });
                    out
                })
                .collect();
            SearchResult::Morphisms(chunks.into_iter().flatten().collect())
        }
    })
}

/// The consistent children of the first branching point, in value order.
fn split_root<'a>(root: &Partial<'a>, m: usize) -> Vec<Partial<'a>> {
    match root.first_unset() {
        None => vec![root.clone()],
        Some(x) => (0..m)
            .filter_map(|v| {
                let mut q = root.clone();
                q.assign(x, v).then_some(q)
            })
            .collect(),
    }
}

fn search(a: &FiniteAlgebra, b: &FiniteAlgebra, c: &SearchConstraint) -> SearchResult {
    homomorphisms(a, b, c).unwrap_or(SearchResult::Morphisms(Vec::new()))
}

pub fn all_homomorphisms(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Morphism> {
    search(a, b, &SearchConstraint::default()).into_morphisms()
}

pub fn embeddings(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Morphism> {
    search(a, b, &SearchConstraint::mode(SearchMode::Mono)).into_morphisms()
}

pub fn embeds(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    a.size() <= b.size() && first_with_mode(a, b, SearchMode::Mono, Vec::new()).is_some()
}

fn first_with_mode(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    mode: SearchMode,
    pins: Vec<(Elem, Elem)>,
) -> Option<Morphism> {
    let c = SearchConstraint {
        pins,
        mode: SearchMode::Exists,
    };
    if mode == SearchMode::Exists {
        return search(a, b, &c).into_morphisms().pop();
    }
    // exists-with-injectivity: run the injective search and stop at the first hit
    if a.signature() != b.signature() || (mode == SearchMode::Iso && a.size() != b.size()) {
        return None;
    }
    let ops = pairs_of(a, b);
    let mut root = Partial::new(&ops, a.size(), b.size(), true);
    for (s, t) in a.constants().into_iter().zip(b.constants()).chain(c.pins) {
        if !root.assign(s, t) {
            return None;
        }
    }
    let mut found = None;
    dfs(root, b.size(), &mut |map| {
        found = Some(Morphism::new(map.to_vec()));
        false
    });
    found
}

/// An isomorphism witness, if any.
pub fn isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Morphism> {
    if a.size() != b.size() || a.signature() != b.signature() {
        return None;
    }
    first_with_mode(a, b, SearchMode::Iso, Vec::new())
}

pub fn is_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    isomorphism(a, b).is_some()
}

/// A homomorphism `A → B` agreeing with the given pins, if any.
pub fn extension(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    pins: Vec<(Elem, Elem)>,
) -> Option<Morphism> {
    first_with_mode(a, b, SearchMode::Exists, pins)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetractWitness {
    /// `g : B ↪ A`
    pub embedding: Morphism,
    /// `f : A → B` with `f ∘ g = id`
    pub retraction: Morphism,
}

/// Looks for `g : B ↪ A` and `f : A → B` with `f ∘ g = 1_B`.
pub fn is_retract_of(b: &FiniteAlgebra, a: &FiniteAlgebra) -> Option<RetractWitness> {
    embeddings(b, a).into_iter().find_map(|g| {
        retraction_along(b, a, &g).map(|f| RetractWitness {
            embedding: g,
            retraction: f,
        })
    })
}

/// A left inverse of `g : B ↪ A`, if any.
pub fn retraction_along(b: &FiniteAlgebra, a: &FiniteAlgebra, g: &Morphism) -> Option<Morphism> {
    extension(a, b, b.elements().map(|x| (g.apply(x), x)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbsoluteRetractFailure {
    pub class_index: usize,
    pub embedding: Morphism,
}

/// `A` is a retract of every extension of it inside `class`. Only a finite
/// surrogate: a positive answer holds relative to this class.
pub fn is_absolute_retract_relative(
    a: &FiniteAlgebra,
    class: &[FiniteAlgebra],
) -> Result<(), AbsoluteRetractFailure> {
    for (i, c) in class.iter().enumerate() {
        if c.signature() != a.signature() {
            continue;
        }
        for g in embeddings(a, c) {
            if retraction_along(a, c, &g).is_none() {
                return Err(AbsoluteRetractFailure {
                    class_index: i,
                    embedding: g,
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectivityFailure {
    pub domain_index: usize,
    pub codomain_index: usize,
    /// `f : B ↪ C`
    pub mono: Morphism,
    /// `g : B → A` with no `h : C → A` such that `h ∘ f = g`
    pub map: Morphism,
}

/// Every `g : B → A` extends along every mono `f : B ↪ C`, for `B, C` in
/// `class`.
pub fn is_injective_relative(
    a: &FiniteAlgebra,
    class: &[FiniteAlgebra],
) -> Result<(), InjectivityFailure> {
    let homs_into_a: Vec<Vec<Morphism>> = class
        .iter()
        .map(|b| {
            if b.signature() == a.signature() {
                all_homomorphisms(b, a)
            } else {
                Vec::new()
            }
        })
        .collect();
    for (bi, b) in class.iter().enumerate() {
        if homs_into_a[bi].is_empty() {
            continue;
        }
        for (ci, c) in class.iter().enumerate() {
            if c.signature() != b.signature() || b.size() > c.size() {
                continue;
            }
            for f in embeddings(b, c) {
                for g in &homs_into_a[bi] {
                    let pins = b.elements().map(|x| (f.apply(x), g.apply(x))).collect();
                    if extension(c, a, pins).is_none() {
                        return Err(InjectivityFailure {
                            domain_index: bi,
                            codomain_index: ci,
                            mono: f,
                            map: g.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Every homomorphism from a subalgebra into `A` extends to an endomorphism.
pub fn is_self_injective(a: &FiniteAlgebra) -> bool {
    all_subalgebras(a).iter().all(|s| {
        let (sub, inclusion) = subalgebra_on(a, s);
        all_homomorphisms(&sub, a).iter().all(|g| {
            let pins = sub
                .elements()
                .map(|x| (inclusion.apply(x), g.apply(x)))
                .collect();
            extension(a, a, pins).is_some()
        })
    })
}

/// The identity is the only automorphism.
pub fn is_rigid(a: &FiniteAlgebra) -> bool {
    search(a, a, &SearchConstraint::mode(SearchMode::Iso)).count() == 1
}

/// Simple with every subalgebra simple. False for algebras without a bottom
/// or with a single element.
pub fn is_hereditarily_simple(a: &FiniteAlgebra) -> bool {
    simplicity_report(a)
        .map(|r| r.hereditarily_simple)
        .unwrap_or(false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaximumSimple {
    /// Index of a member into which every simple member embeds.
    Found(usize),
    /// Pairs of simple members with no common extension in the class.
    None { certificates: Vec<(usize, usize)> },
}

/// The simple member receiving every simple member, or every certificate
/// pair that rules one out.
pub fn maximum_simple(class: &[FiniteAlgebra]) -> MaximumSimple {
    let simple: Vec<usize> = (0..class.len())
        .filter(|&i| !class[i].is_trivial() && is_simple(&class[i]).unwrap_or(false))
        .collect();
    let embeds_into: Vec<Vec<bool>> = simple
        .iter()
        .map(|&s| {
            (0..class.len())
                .map(|t| embeds(&class[s], &class[t]))
                .collect()
        })
        .collect();
    if let Some(k) = simple
        .iter()
        .position(|&m| (0..simple.len()).all(|j| embeds_into[j][m]))
    {
        return MaximumSimple::Found(simple[k]);
    }
    let mut certificates = Vec::new();
    for i in 0..simple.len() {
        for j in i + 1..simple.len() {
            if !(0..class.len()).any(|t| embeds_into[i][t] && embeds_into[j][t]) {
                certificates.push((simple[i], simple[j]));
            }
        }
    }
    MaximumSimple::None { certificates }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;
    use crate::constructions::diamond;

    // oracle: every map whose constants are right, filtered by is_homomorphism
    fn exhaustive(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Morphism> {
        let (n, m) = (a.size(), b.size());
        let total = m.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut map = vec![0; n];
                for x in (0..n).rev() {
                    map[x] = code % m;
                    code /= m;
                }
                Morphism::new(map)
            })
            .filter(|f| is_homomorphism(a, b, f))
            .collect()
    }

    #[test]
    fn h4_to_h3() {
        let homs = all_homomorphisms(&h4(), &h3());
        assert_eq!(
            homs,
            vec![
                Morphism::new(vec![0, 1, 2, 2]),
                Morphism::new(vec![0, 2, 2, 2])
            ]
        );
        let c = SearchConstraint::mode(SearchMode::Exists).pin(2, 1);
        assert_eq!(
            homomorphisms(&h4(), &h3(), &c).unwrap(),
            SearchResult::Exists(None)
        );
        let c = SearchConstraint::mode(SearchMode::Count).pin(2, 1);
        assert_eq!(
            homomorphisms(&h4(), &h3(), &c).unwrap(),
            SearchResult::Count(0)
        );
    }

    #[test]
    fn two_maps_uniquely() {
        for a in small_catalog().into_iter().filter(|a| !a.is_trivial()) {
            assert_eq!(all_homomorphisms(&two(), &a).len(), 1, "{}", a.label());
        }
    }

    #[test]
    fn pins_are_checked() {
        let c = SearchConstraint::default().pin(1, 0).pin(1, 2);
        assert!(matches!(
            homomorphisms(&h4(), &h3(), &c),
            Err(SearchError::InconsistentPins { .. })
        ));
        let c = SearchConstraint::default().pin(9, 0);
        assert!(matches!(
            homomorphisms(&h4(), &h3(), &c),
            Err(SearchError::PinOutOfRange { .. })
        ));
        assert!(homomorphisms(&h4(), &h3().hoop_reduct(), &SearchConstraint::default()).is_err());
    }

    #[test]
    fn embeddings_and_isomorphisms() {
        assert_eq!(embeddings(&h3(), &h4()).len(), 2);
        assert!(is_isomorphic(&diamond(&two()).unwrap().algebra, &l3()));
        assert!(embeddings(&lukasiewicz_chain(4), &i6()).is_empty());
        assert!(is_isomorphic(&godel_chain(4), &h4()));
        assert!(!is_isomorphic(&h3(), &l3()));
    }

    #[test]
    fn search_matches_exhaustive_oracle() {
        let algebras = small_catalog();
        for a in &algebras {
            for b in &algebras {
                if (b.size() as f64).powi(a.size() as i32) > 1e6 {
                    continue;
                }
                let found = all_homomorphisms(a, b);
                assert_eq!(found, exhaustive(a, b), "{} -> {}", a.label(), b.label());
                let monos: Vec<Morphism> =
                    found.iter().filter(|f| f.is_injective()).cloned().collect();
                assert_eq!(embeddings(a, b), monos);
                assert_eq!(
                    homomorphisms(a, b, &SearchConstraint::mode(SearchMode::Count))
                        .unwrap()
                        .count(),
                    found.len()
                );
            }
        }
    }

    #[test]
    fn composition_closure() {
        let algebras: Vec<FiniteAlgebra> = small_catalog()
            .into_iter()
            .filter(|a| a.size() <= 4)
            .collect();
        for a in &algebras {
            for b in &algebras {
                for c in &algebras {
                    for f in all_homomorphisms(a, b) {
                        for g in all_homomorphisms(b, c) {
                            assert!(is_homomorphism(a, c, &f.then(&g)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn retracts() {
        let w = is_retract_of(&h3(), &h4()).unwrap();
        assert!(is_homomorphism(&h4(), &h3(), &w.retraction));
        assert_eq!(w.embedding.then(&w.retraction), Morphism::identity(3));
        assert_eq!(w.embedding, Morphism::new(vec![0, 1, 3]));
        assert_eq!(w.retraction, Morphism::new(vec![0, 1, 2, 2]));
        assert!(is_retract_of(&l3(), &h4()).is_none());
        for a in small_catalog().into_iter().filter(|a| !a.is_trivial()) {
            let has_two_quotient = !all_homomorphisms(&a, &two()).is_empty();
            assert_eq!(
                is_retract_of(&two(), &a).is_some(),
                has_two_quotient,
                "{}",
                a.label()
            );
        }
    }

    #[test]
    fn absolute_retracts() {
        let err = is_absolute_retract_relative(&h3(), &[h4()]).unwrap_err();
        assert_eq!(err.embedding, Morphism::new(vec![0, 2, 3]));
        for a in small_catalog() {
            assert!(is_absolute_retract_relative(&a, std::slice::from_ref(&a)).is_ok());
        }
    }

    #[test]
    fn relative_injectivity() {
        assert!(is_injective_relative(&h3(), &[h3(), h4()]).is_err());
        assert!(is_injective_relative(&two(), &[two(), boolean_cube(2), h3(), h4()]).is_ok());
        // Ł₃ has no homomorphism onto 2
        assert!(is_injective_relative(&two(), &[two(), l3()]).is_err());
    }

    #[test]
    fn self_injective_rigid_hereditary() {
        assert!(is_self_injective(&l3()));
        assert!(is_rigid(&l3()));
        assert!(!is_rigid(&boolean_cube(2)));
        assert!(is_hereditarily_simple(&i6()));
        assert!(!is_hereditarily_simple(&h4()));
    }

    #[test]
    fn maximum_simple_members() {
        let class = [two(), l3(), h3()];
        assert_eq!(maximum_simple(&class), MaximumSimple::Found(1));
        let class = [l3(), lukasiewicz_chain(4), i6()];
        let MaximumSimple::None { certificates } = maximum_simple(&class) else {
            panic!()
        };
        assert!(certificates.contains(&(1, 2)));
    }

    #[test]
    fn simple_sources_give_monomorphisms() {
        let algebras = small_catalog();
        for s in algebras
            .iter()
            .filter(|s| !s.is_trivial() && is_simple(s).unwrap())
        {
            for b in algebras.iter().filter(|b| !b.is_trivial()) {
                for f in all_homomorphisms(s, b) {
                    assert!(f.is_injective(), "{} -> {}", s.label(), b.label());
                }
            }
        }
    }
}
