//! Implicative filters and the congruences they determine.
//!
//! A filter `F` contains `1`, is closed upward and under `⊙`. It determines
//! the congruence `θ_F = {(x, y) : x → y ∈ F and y → x ∈ F}`, and every
//! congruence arises this way from the class of `1`.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraParts, Elem, FiniteAlgebra, Table};
use crate::constructions::{all_subalgebras, subalgebra_on};
use crate::morphisms::Morphism;
use crate::set::ElementSet;
use crate::varieties::{holds_equation, is_linearly_ordered, EquationId};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct Filter(ElementSet);

impl Filter {
    pub fn members(&self) -> &ElementSet {
        &self.0
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.0.contains(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// A filter is proper when it misses the bottom, equivalently when it is
    /// not the whole carrier.
    pub fn is_proper(&self) -> bool {
        !self.0.is_full()
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.0.members()
    }
}

impl std::fmt::Display for Filter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `set` contains the top and is closed upward and under `⊙`.
pub fn is_filter(a: &FiniteAlgebra, set: &ElementSet) -> bool {
    if !set.contains(a.top()) {
        return false;
    }
    for x in set.iter() {
        for y in a.elements() {
            if a.leq(x, y) && !set.contains(y) {
                return false;
            }
        }
        for y in set.iter() {
            if !set.contains(a.prod(x, y)) {
                return false;
            }
        }
    }
    true
}

/// Checks a member list and wraps it as a filter.
pub fn filter_from_members(a: &FiniteAlgebra, members: &[Elem]) -> Option<Filter> {
    if members.iter().any(|&x| x >= a.size()) {
        return None;
    }
    let set = ElementSet::from_members(a.size(), members.iter().copied());
    is_filter(a, &set).then_some(Filter(set))
}

/// The least filter containing `seed`: the upward closure of the
/// `⊙`-closure of `seed ∪ {1}`.
pub fn filter_generated(a: &FiniteAlgebra, seed: &ElementSet) -> Filter {
    let mut closed = seed.clone();
    closed.insert(a.top());
    let mut frontier: Vec<Elem> = closed.members();
    while let Some(x) = frontier.pop() {
        let current: Vec<Elem> = closed.members();
        for y in current {
            let p = a.prod(x, y);
            if closed.insert(p) {
                frontier.push(p);
            }
        }
    }
    let mut up = closed.clone();
    for x in closed.iter() {
        for y in a.elements() {
            if a.leq(x, y) {
                up.insert(y);
            }
        }
    }
    Filter(up)
}

pub fn principal_filter(a: &FiniteAlgebra, x: Elem) -> Filter {
    filter_generated(a, &ElementSet::from_members(a.size(), [x]))
}

/// Every filter (or only the maximal proper ones), sorted by member list.
///
/// Filters are grown from `{1}` by adjoining one element at a time and
/// closing; every filter is reached because any `G ⊋ F` contains
/// `⟨F ∪ {x}⟩ ⊋ F` for each `x ∈ G \ F`.
pub fn all_filters(a: &FiniteAlgebra, maximal_only: bool) -> Vec<Filter> {
    let start = filter_generated(a, &ElementSet::empty(a.size()));
    let mut seen: HashSet<Filter> = HashSet::new();
    seen.insert(start.clone());
    let mut stack = vec![start];
    while let Some(f) = stack.pop() {
        for x in a.elements().filter(|&x| !f.contains(x)) {
            let mut seed = f.0.clone();
            seed.insert(x);
            let g = filter_generated(a, &seed);
            if seen.insert(g.clone()) {
                stack.push(g);
            }
        }
    }
    let mut out: Vec<Filter> = seen.into_iter().collect();
    if maximal_only {
        let proper: Vec<Filter> = out.iter().filter(|f| f.is_proper()).cloned().collect();
        out = proper
            .iter()
            .filter(|f| !proper.iter().any(|g| g != *f && f.0.is_subset(&g.0)))
            .cloned()
            .collect();
    }
    out.sort();
    out
}

pub fn maximal_filters(a: &FiniteAlgebra) -> Vec<Filter> {
    all_filters(a, true)
}

/// A partition of the carrier, stored as a block index per element. Block
/// indices are assigned in order of first occurrence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct CongruencePartition {
    blocks: Vec<usize>,
}

impl CongruencePartition {
    /// Normalizes arbitrary block labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut rename: Vec<Option<usize>> = Vec::new();
        let mut next = 0;
        let blocks = labels
            .iter()
            .map(|&l| {
                if l >= rename.len() {
                    rename.resize(l + 1, None);
                }
                *rename[l].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        Self { blocks }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            blocks: (0..n).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self { blocks: vec![0; n] }
    }

    pub fn block_of(&self, x: Elem) -> usize {
        self.blocks[x]
    }

    pub fn related(&self, x: Elem, y: Elem) -> bool {
        self.blocks[x] == self.blocks[y]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.blocks.len()
    }

    pub fn classes(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.blocks.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    pub fn labels(&self) -> &[usize] {
        &self.blocks
    }

    /// Intersection of two equivalence relations.
    pub fn intersect(&self, other: &CongruencePartition) -> CongruencePartition {
        let n = self.blocks.len();
        let pairs: Vec<usize> = (0..n)
            .map(|x| self.blocks[x] * n + other.blocks[x])
            .collect();
        Self::from_labels(&pairs)
    }
}

/// Every operation of the signature respects the partition.
pub fn is_congruence(a: &FiniteAlgebra, theta: &CongruencePartition) -> bool {
    let ops = a.operations();
    for x in a.elements() {
        for x2 in a.elements().filter(|&x2| x2 > x && theta.related(x, x2)) {
            for y in a.elements() {
                for (_, t) in &ops {
                    if !theta.related(t.get(x, y), t.get(x2, y))
                        || !theta.related(t.get(y, x), t.get(y, x2))
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `θ_F`.
pub fn congruence_of_filter(a: &FiniteAlgebra, f: &Filter) -> CongruencePartition {
    let n = a.size();
    let mut labels = vec![usize::MAX; n];
    for x in 0..n {
        if labels[x] != usize::MAX {
            continue;
        }
        labels[x] = x;
        for y in x + 1..n {
            if labels[y] == usize::MAX && f.contains(a.imp(x, y)) && f.contains(a.imp(y, x)) {
                labels[y] = x;
            }
        }
    }
    CongruencePartition::from_labels(&labels)
}

/// The class of the top.
pub fn filter_of(a: &FiniteAlgebra, theta: &CongruencePartition) -> Filter {
    let top_block = theta.block_of(a.top());
    Filter(ElementSet::from_members(
        a.size(),
        a.elements().filter(|&x| theta.block_of(x) == top_block),
    ))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }
}

/// The least congruence containing `theta` and the pair `(x, y)`.
fn congruence_join_pair(
    a: &FiniteAlgebra,
    theta: &CongruencePartition,
    x: Elem,
    y: Elem,
) -> CongruencePartition {
    let n = a.size();
    let ops = a.operations();
    let mut uf = UnionFind::new(n);
    let mut pending: Vec<(Elem, Elem)> = vec![(x, y)];
    for (z, &b) in theta.labels().iter().enumerate() {
        let rep = theta.labels().iter().position(|&c| c == b).unwrap();
        if rep != z {
            pending.push((rep, z));
        }
    }
    while let Some((p, q)) = pending.pop() {
        if !uf.union(p, q) {
            continue;
        }
        for z in 0..n {
            for (_, t) in &ops {
                pending.push((t.get(p, z), t.get(q, z)));
                pending.push((t.get(z, p), t.get(z, q)));
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|z| uf.find(z)).collect();
    CongruencePartition::from_labels(&labels)
}

/// `Cg(x, y)`.
pub fn principal_congruence(a: &FiniteAlgebra, x: Elem, y: Elem) -> CongruencePartition {
    congruence_join_pair(a, &CongruencePartition::identity(a.size()), x, y)
}

/// Every congruence, found by closing `{Δ}` under joins with principal
/// congruences. Works on the partition side only, never through filters.
pub fn all_congruences(a: &FiniteAlgebra) -> Vec<CongruencePartition> {
    let n = a.size();
    let mut seen: BTreeSet<CongruencePartition> = BTreeSet::new();
    let start = CongruencePartition::identity(n);
    seen.insert(start.clone());
    let mut stack = vec![start];
    while let Some(theta) = stack.pop() {
        for x in 0..n {
            for y in x + 1..n {
                if theta.related(x, y) {
                    continue;
                }
                let next = congruence_join_pair(a, &theta, x, y);
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// `A/F` with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: FiniteAlgebra,
    pub projection: Morphism,
}

/// The quotient by `θ_F`. Blocks are relabeled so the bottom block is 0, the
/// top block is last and the others follow in order of their least member.
pub fn quotient(a: &FiniteAlgebra, f: &Filter) -> Quotient {
    quotient_by(a, &congruence_of_filter(a, f))
}

pub fn quotient_by(a: &FiniteAlgebra, theta: &CongruencePartition) -> Quotient {
    let classes = theta.classes();
    let top_block = theta.block_of(a.top());
    let bot_block = a.bot().map(|b| theta.block_of(b));
    // classes are already ordered by least member
    let mut order: Vec<usize> = Vec::with_capacity(classes.len());
    if let Some(b) = bot_block {
        order.push(b);
    }
    order.extend((0..classes.len()).filter(|&c| Some(c) != bot_block && c != top_block));
    if Some(top_block) != bot_block {
        order.push(top_block);
    }
    let mut new_index = vec![0; classes.len()];
    for (i, &c) in order.iter().enumerate() {
        new_index[c] = i;
    }
    let m = classes.len();
    let reps: Vec<Elem> = order.iter().map(|&c| classes[c][0]).collect();
    let image = |x: Elem| new_index[theta.block_of(x)];
    let lift = |t: &Table| Table::from_fn(m, |i, j| image(t.get(reps[i], reps[j])));
    let algebra = FiniteAlgebra::new(AlgebraParts {
        name: a.name().map(|n| format!("{n}/~")),
        signature: a.signature(),
        meet: if a.signature().is_hoop() {
            None
        } else {
            Some(lift(a.meet_table()))
        },
        join: a.join_table().map(lift),
        prod: lift(a.prod_table()),
        imp: lift(a.imp_table()),
        bot: a.bot().map(image),
        top: image(a.top()),
    })
    .expect("quotient tables are well-shaped");
    let projection = Morphism::new(a.elements().map(image).collect());
    Quotient {
        algebra,
        projection,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureOpError {
    #[error("the operation needs a bottom element")]
    NoBottom,
    #[error("the operation needs a nontrivial algebra")]
    Trivial,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadicalReport {
    pub radical: Filter,
    pub dense: Filter,
    /// Least element of the radical.
    pub principal_unity: Option<Elem>,
    pub semisimple: bool,
    pub radical_dense: bool,
}

/// Radical computed as the intersection of the maximal filters and, again,
/// as the set of unities; the two must agree.
pub fn radical_report(a: &FiniteAlgebra) -> Result<RadicalReport, StructureOpError> {
    let bot = a.bot().ok_or(StructureOpError::NoBottom)?;
    let n = a.size();
    let by_filters = maximal_filters(a)
        .iter()
        .fold(ElementSet::full(n), |acc, f| acc.intersection(f.members()));
    let by_unities =
        ElementSet::from_members(n, a.elements().filter(|&x| a.is_unity(x) == Some(true)));
    if by_filters != by_unities {
        return Err(StructureOpError::Inconsistent(format!(
            "radical by maximal filters {by_filters} differs from unity set {by_unities}"
        )));
    }
    let dense = ElementSet::from_members(n, a.elements().filter(|&x| a.imp(x, bot) == bot));
    let product = by_unities.iter().fold(a.top(), |acc, x| a.prod(acc, x));
    let principal_unity = by_unities
        .iter()
        .all(|x| a.leq(product, x))
        .then_some(product);
    if !is_filter(a, &dense) {
        return Err(StructureOpError::Inconsistent(format!(
            "dense set {dense} is not a filter"
        )));
    }
    Ok(RadicalReport {
        semisimple: by_unities.len() == 1 && by_unities.contains(a.top()),
        radical_dense: by_unities == dense,
        radical: Filter(by_unities),
        dense: Filter(dense),
        principal_unity,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub simple: bool,
    pub hereditarily_simple: bool,
}

/// Simple iff exactly two filters, cross-checked against "every element
/// below the top is nilpotent".
pub fn is_simple(a: &FiniteAlgebra) -> Result<bool, StructureOpError> {
    let bot = a.bot().ok_or(StructureOpError::NoBottom)?;
    if a.is_trivial() {
        return Err(StructureOpError::Trivial);
    }
    let by_filters = all_filters(a, false).len() == 2;
    let by_nilpotence = a
        .elements()
        .filter(|&x| x != a.top())
        .all(|x| a.stable_power(x).1 == bot);
    if by_filters != by_nilpotence {
        return Err(StructureOpError::Inconsistent(format!(
            "filter count says simple={by_filters}, nilpotence says simple={by_nilpotence}"
        )));
    }
    Ok(by_filters)
}

pub fn simplicity_report(a: &FiniteAlgebra) -> Result<SimplicityReport, StructureOpError> {
    let simple = is_simple(a)?;
    let mut hereditarily_simple = simple;
    if simple {
        for sub in all_subalgebras(a) {
            let (b, _) = subalgebra_on(a, &sub);
            if !is_simple(&b)? {
                hereditarily_simple = false;
                break;
            }
        }
    }
    Ok(SimplicityReport {
        simple,
        hereditarily_simple,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ChainDecomposition {
    /// Filters whose quotients are chains and whose congruences meet in `Δ`.
    Chains(Vec<Filter>),
    /// `(x → y) ∨ (y → x) ≠ 1` at this pair.
    NotPrelinear { x: Elem, y: Elem },
}

/// A subdirect representation by chains, when the algebra is prelinear.
///
/// Candidate filters are those with a nontrivial linearly ordered quotient;
/// a family separating every pair is picked greedily (largest number of
/// newly separated pairs first, ties to the smaller filter). The family is
/// small but not guaranteed to be minimum.
pub fn chain_decomposition(a: &FiniteAlgebra) -> ChainDecomposition {
    if a.signature().has_join() {
        if let Ok(check) = holds_equation(a, EquationId::Prelin) {
            if !check.holds {
                let w = check.witness.expect("failed check has a witness");
                return ChainDecomposition::NotPrelinear { x: w[0], y: w[1] };
            }
        }
    }
    let n = a.size();
    let candidates: Vec<(Filter, CongruencePartition)> = all_filters(a, false)
        .into_iter()
        .filter(|f| f.is_proper())
        .filter(|f| is_linearly_ordered(&quotient(a, f).algebra))
        .map(|f| {
            let theta = congruence_of_filter(a, &f);
            (f, theta)
        })
        .collect();
    let mut uncovered: BTreeSet<(Elem, Elem)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    let mut chosen: Vec<Filter> = Vec::new();
    while !uncovered.is_empty() {
        let best = candidates
            .iter()
            .map(|(f, theta)| {
                (
                    uncovered
                        .iter()
                        .filter(|&&(x, y)| !theta.related(x, y))
                        .count(),
                    f,
                    theta,
                )
            })
            .filter(|(gain, _, _)| *gain > 0)
            .max_by(|l, r| l.0.cmp(&r.0).then_with(|| r.1.cmp(l.1)));
        let Some((_, f, theta)) = best else {
            // unreachable for prelinear algebras; report what was achieved
            break;
        };
        uncovered.retain(|&(x, y)| theta.related(x, y));
        chosen.push(f.clone());
    }
    chosen.sort();
    ChainDecomposition::Chains(chosen)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CepCheck {
    pub holds: bool,
    /// A subalgebra and a filter of it that no filter of the whole algebra
    /// restricts to.
    pub witness: Option<(ElementSet, ElementSet)>,
}

/// Congruence extension: every filter `F` of every subalgebra `B` is
/// `G ∩ B` for some filter `G` of the algebra. It suffices to try `G = ⟨F⟩`.
pub fn cep_check(a: &FiniteAlgebra) -> CepCheck {
    for sub in all_subalgebras(a) {
        let (b, inclusion) = subalgebra_on(a, &sub);
        for fb in all_filters(&b, false) {
            let image =
                ElementSet::from_members(a.size(), fb.members().iter().map(|x| inclusion.apply(x)));
            let extended = filter_generated(a, &image);
            if extended.members().intersection(&sub) != image {
                return CepCheck {
                    holds: false,
                    witness: Some((sub, image)),
                };
            }
        }
    }
    CepCheck {
        holds: true,
        witness: None,
    }
}

/// The map `A/Rad(A) → B/Rad(B)` induced by `f`, or `None` when `f` does not
/// send radical classes into radical classes.
pub fn induced_on_radical_quotients(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    f: &Morphism,
) -> Option<Morphism> {
    let ra = radical_report(a).ok()?;
    let rb = radical_report(b).ok()?;
    let qa = quotient(a, &ra.radical);
    let qb = quotient(b, &rb.radical);
    let mut map = vec![usize::MAX; qa.algebra.size()];
    for x in a.elements() {
        let src = qa.projection.apply(x);
        let dst = qb.projection.apply(f.apply(x));
        if map[src] != usize::MAX && map[src] != dst {
            return None;
        }
        map[src] = dst;
    }
    Some(Morphism::new(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::morphisms::{is_homomorphism, is_isomorphic};

    fn set(n: usize, xs: &[Elem]) -> ElementSet {
        ElementSet::from_members(n, xs.iter().copied())
    }

    // oracle: test every subset
    fn filters_by_subsets(a: &FiniteAlgebra) -> Vec<Filter> {
        let n = a.size();
        let mut out: Vec<Filter> = (0u32..1 << n)
            .map(|mask| ElementSet::from_members(n, (0..n).filter(|&i| mask >> i & 1 == 1)))
            .filter(|s| is_filter(a, s))
            .map(Filter)
            .collect();
        out.sort();
        out
    }

    // oracle: test every set partition (restricted growth strings)
    fn congruences_by_partitions(a: &FiniteAlgebra) -> Vec<CongruencePartition> {
        fn rec(
            a: &FiniteAlgebra,
            labels: &mut Vec<usize>,
            max: usize,
            out: &mut Vec<CongruencePartition>,
        ) {
            if labels.len() == a.size() {
                let p = CongruencePartition::from_labels(labels);
                if is_congruence(a, &p) {
                    out.push(p);
                }
                return;
            }
            for l in 0..=max + 1 {
                labels.push(l);
                rec(a, labels, max.max(l), out);
                labels.pop();
            }
        }
        let mut out = Vec::new();
        let mut labels = vec![0];
        rec(a, &mut labels, 0, &mut out);
        out.sort();
        out
    }

    #[test]
    fn generated_filters() {
        let h4 = catalog::h4();
        assert_eq!(filter_generated(&h4, &set(4, &[2])).to_vec(), vec![2, 3]);
        let l3 = catalog::l3();
        let f = filter_generated(&l3, &set(3, &[1]));
        assert_eq!(f.to_vec(), vec![0, 1, 2]);
        assert!(!f.is_proper());
        assert_eq!(filter_generated(&h4, &set(4, &[])).to_vec(), vec![3]);
    }

    #[test]
    fn filter_lists() {
        let h4 = catalog::h4();
        let all: Vec<Vec<Elem>> = all_filters(&h4, false).iter().map(Filter::to_vec).collect();
        assert_eq!(
            all,
            vec![vec![0, 1, 2, 3], vec![1, 2, 3], vec![2, 3], vec![3]]
        );
        assert_eq!(all_filters(&catalog::l3(), false).len(), 2);
        let max: Vec<Vec<Elem>> = maximal_filters(&h4).iter().map(Filter::to_vec).collect();
        assert_eq!(max, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn growth_matches_subset_oracle() {
        for a in catalog::small_catalog()
            .into_iter()
            .filter(|a| a.size() <= 5)
        {
            assert_eq!(
                all_filters(&a, false),
                filters_by_subsets(&a),
                "{}",
                a.label()
            );
        }
    }

    #[test]
    fn congruence_generation_matches_partition_oracle() {
        for a in catalog::small_catalog() {
            assert_eq!(
                all_congruences(&a),
                congruences_by_partitions(&a),
                "{}",
                a.label()
            );
        }
    }

    #[test]
    fn theta_of_filters() {
        let h4 = catalog::h4();
        let f = filter_from_members(&h4, &[1, 2, 3]).unwrap();
        assert_eq!(
            congruence_of_filter(&h4, &f).classes(),
            vec![vec![0], vec![1, 2, 3]]
        );
        for a in catalog::small_catalog() {
            let n = a.size();
            let top_only = filter_from_members(&a, &[a.top()]).unwrap();
            assert!(congruence_of_filter(&a, &top_only).is_identity());
            let all = Filter(ElementSet::full(n));
            assert_eq!(congruence_of_filter(&a, &all).block_count(), 1);
        }
    }

    #[test]
    fn filter_congruence_bijection() {
        for a in catalog::small_catalog() {
            let filters = all_filters(&a, false);
            let congruences = all_congruences(&a);
            assert_eq!(filters.len(), congruences.len(), "{}", a.label());
            for f in &filters {
                let theta = congruence_of_filter(&a, f);
                assert!(is_congruence(&a, &theta));
                assert_eq!(&filter_of(&a, &theta), f);
            }
            for theta in &congruences {
                assert_eq!(&congruence_of_filter(&a, &filter_of(&a, theta)), theta);
            }
        }
    }

    #[test]
    fn quotients() {
        let h4 = catalog::h4();
        let q = quotient(&h4, &filter_from_members(&h4, &[1, 2, 3]).unwrap());
        assert!(is_isomorphic(&q.algebra, &catalog::two()));
        assert!(is_homomorphism(&h4, &q.algebra, &q.projection));
        for a in catalog::small_catalog() {
            let id = quotient(&a, &filter_from_members(&a, &[a.top()]).unwrap());
            assert_eq!(id.algebra.prod_table(), a.prod_table());
            let all = quotient(&a, &Filter(ElementSet::full(a.size())));
            assert_eq!(all.algebra.size(), 1);
            for f in all_filters(&a, false) {
                let q = quotient(&a, &f);
                assert!(crate::algebra::validate_axioms(&q.algebra).is_valid());
                assert!(is_homomorphism(&a, &q.algebra, &q.projection));
                assert!(q.algebra.is_canonically_placed());
            }
        }
    }

    #[test]
    fn radicals() {
        let r = radical_report(&catalog::h4()).unwrap();
        assert_eq!(r.radical.to_vec(), vec![1, 2, 3]);
        assert_eq!(r.dense, r.radical);
        assert_eq!(r.principal_unity, Some(1));
        assert!(!r.semisimple);
        assert!(r.radical_dense);

        let r = radical_report(&catalog::l3()).unwrap();
        assert_eq!(r.radical.to_vec(), vec![2]);
        assert!(r.semisimple);

        let r = radical_report(&catalog::i4()).unwrap();
        assert_eq!(r.radical.to_vec(), vec![2, 3]);
        assert_eq!(r.dense.to_vec(), vec![3]);
        assert!(!r.radical_dense);
        assert_eq!(r.principal_unity, Some(2));

        let hoop = catalog::h4().hoop_reduct().hoop_reduct();
        assert_eq!(radical_report(&hoop), Err(StructureOpError::NoBottom));
    }

    #[test]
    fn simplicity() {
        let r = simplicity_report(&catalog::i6()).unwrap();
        assert!(r.simple);
        assert!(r.hereditarily_simple);
        assert!(!simplicity_report(&catalog::i4()).unwrap().simple);
        let r = simplicity_report(&catalog::l3()).unwrap();
        assert!(r.simple && r.hereditarily_simple);
        assert_eq!(
            simplicity_report(&catalog::trivial()),
            Err(StructureOpError::Trivial)
        );
    }

    #[test]
    fn chain_decompositions() {
        let sq = catalog::boolean_cube(2);
        let ChainDecomposition::Chains(fs) = chain_decomposition(&sq) else {
            panic!("square is prelinear")
        };
        assert_eq!(fs.len(), 2);
        let mut meet = CongruencePartition::full(4);
        for f in &fs {
            assert!(is_isomorphic(&quotient(&sq, f).algebra, &catalog::two()));
            meet = meet.intersect(&congruence_of_filter(&sq, f));
        }
        assert!(meet.is_identity());

        let ChainDecomposition::Chains(fs) = chain_decomposition(&catalog::h3()) else {
            panic!()
        };
        assert_eq!(fs, vec![filter_from_members(&catalog::h3(), &[2]).unwrap()]);

        assert_eq!(
            chain_decomposition(&heyting_pentagon()),
            ChainDecomposition::NotPrelinear { x: 1, y: 2 }
        );
    }

    /// 0 < a, b < a∨b < 1 with the Heyting implication.
    pub(crate) fn heyting_pentagon() -> FiniteAlgebra {
        // 0 = 0, a = 1, b = 2, c = a∨b = 3, 1 = 4
        let up: [&[Elem]; 5] = [&[0, 1, 2, 3, 4], &[1, 3, 4], &[2, 3, 4], &[3, 4], &[4]];
        let leq = |x: Elem, y: Elem| up[x].contains(&y);
        let meet = Table::from_fn(5, |x, y| glb(&leq, x, y));
        let join = Table::from_fn(5, |x, y| lub(&leq, x, y));
        let imp = Table::from_fn(5, |x, y| {
            let cands: Vec<Elem> = (0..5).filter(|&z| leq(glb(&leq, z, x), y)).collect();
            *cands
                .iter()
                .find(|&&m| cands.iter().all(|&z| leq(z, m)))
                .unwrap()
        });
        let prod = meet.clone();
        FiniteAlgebra::residuated_lattice(meet, join, prod, imp).unwrap()
    }

    fn glb(leq: &impl Fn(Elem, Elem) -> bool, x: Elem, y: Elem) -> Elem {
        let lower: Vec<Elem> = (0..5).filter(|&z| leq(z, x) && leq(z, y)).collect();
        *lower
            .iter()
            .find(|&&m| lower.iter().all(|&z| leq(z, m)))
            .unwrap()
    }

    fn lub(leq: &impl Fn(Elem, Elem) -> bool, x: Elem, y: Elem) -> Elem {
        let upper: Vec<Elem> = (0..5).filter(|&z| leq(x, z) && leq(y, z)).collect();
        *upper
            .iter()
            .find(|&&m| upper.iter().all(|&z| leq(m, z)))
            .unwrap()
    }

    #[test]
    fn pentagon_is_a_valid_heyting_algebra() {
        assert!(crate::algebra::validate_axioms(&heyting_pentagon()).is_valid());
    }

    #[test]
    fn cep_on_small_algebras() {
        assert!(cep_check(&catalog::h4()).holds);
        assert!(cep_check(&catalog::i6()).holds);
        assert!(cep_check(&heyting_pentagon()).holds);
    }
}
