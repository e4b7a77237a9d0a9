//! All residuated lattices and bounded hoops of a small size, one per
//! isomorphism class.
//!
//! The main strategy fixes a bounded lattice on `{0, .., n-1}` with `0` at
//! the bottom and `n-1` at the top, labeled so that `x ≤ y` implies the
//! index of `x` is at most that of `y`, and then fills the product table
//! cell by cell under integrality, monotonicity, associativity and
//! distributivity over joins. The implication is derived from the order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    derive_residual, validate_axioms, AlgebraParts, Elem, FiniteAlgebra, OrderMatrix, Signature,
    Table,
};
use crate::varieties::{classify, Variety};

/// Largest size accepted for unrestricted enumeration.
pub const MAX_GENERAL_SIZE: usize = 7;
/// Largest size accepted when only chains are requested.
pub const MAX_CHAIN_SIZE: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("size {n} is outside the supported range 2..={max}")]
    SizeOutOfRange { n: usize, max: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumFilter {
    /// Every emitted algebra belongs to all of these.
    pub varieties: Vec<Variety>,
    pub chains_only: bool,
}

impl EnumFilter {
    pub fn variety(v: Variety) -> Self {
        Self {
            varieties: vec![v],
            chains_only: false,
        }
    }

    pub fn chains(mut self) -> Self {
        self.chains_only = true;
        self
    }

    pub fn accepts(&self, a: &FiniteAlgebra) -> bool {
        if self.varieties.is_empty() && !self.chains_only {
            return true;
        }
        let profile = classify(a);
        (!self.chains_only || profile.linearly_ordered)
            && self.varieties.iter().all(|&v| profile.is(v))
    }
}

/// Bytes identifying an isomorphism class: the tables under the
/// order-preserving relabeling that minimizes them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Every bijection onto `0..n` that is increasing along `leq`, as
/// `perm[old] = new`.
pub fn linear_extensions(n: usize, leq: impl Fn(Elem, Elem) -> bool) -> Vec<Vec<Elem>> {
    fn rec(
        n: usize,
        leq: &dyn Fn(Elem, Elem) -> bool,
        placed: &mut Vec<bool>,
        perm: &mut Vec<Elem>,
        next: usize,
        out: &mut Vec<Vec<Elem>>,
    ) {
        if next == n {
            out.push(perm.clone());
            return;
        }
        for x in 0..n {
            if placed[x] || (0..n).any(|y| y != x && !placed[y] && leq(y, x)) {
                continue;
            }
            placed[x] = true;
            perm[x] = next;
            rec(n, leq, placed, perm, next + 1, out);
            placed[x] = false;
        }
    }
    let mut out = Vec::new();
    rec(n, &leq, &mut vec![false; n], &mut vec![0; n], 0, &mut out);
    out
}

fn encode(a: &FiniteAlgebra) -> Vec<u8> {
    let mut key = vec![a.signature() as u8, a.size() as u8];
    for (_, t) in a.operations() {
        key.extend(t.cells().iter().map(|&c| c as u8));
    }
    key.extend(a.constants().iter().map(|&c| c as u8));
    key
}

/// The minimal key over all order-preserving relabelings, with the
/// relabeled algebra.
pub fn canonical_form(a: &FiniteAlgebra) -> (CanonicalKey, FiniteAlgebra) {
    linear_extensions(a.size(), |x, y| a.leq(x, y))
        .into_iter()
        .map(|perm| {
            let b = a.relabel(&perm);
            (CanonicalKey(encode(&b)), b)
        })
        .min_by(|l, r| l.0.cmp(&r.0))
        .expect("every finite order has a linear extension")
}

pub fn canonical_key(a: &FiniteAlgebra) -> CanonicalKey {
    canonical_form(a).0
}

/// A bounded lattice on `0..n`, naturally labeled.
#[derive(Clone, Debug)]
struct Lattice {
    leq: Vec<bool>,
    meet: Table,
    join: Table,
}

impl Lattice {
    fn from_leq(n: usize, leq: Vec<bool>) -> Option<Lattice> {
        let le = |x: Elem, y: Elem| leq[x * n + y];
        let bound = |x: Elem, y: Elem, upper: bool| {
            let cands: Vec<Elem> = (0..n)
                .filter(|&z| {
                    if upper {
                        le(x, z) && le(y, z)
                    } else {
                        le(z, x) && le(z, y)
                    }
                })
                .collect();
            cands.iter().copied().find(|&m| {
                cands
                    .iter()
                    .all(|&z| if upper { le(m, z) } else { le(z, m) })
            })
        };
        let mut meet = Table::from_fn(n, |_, _| 0);
        let mut join = Table::from_fn(n, |_, _| 0);
        for x in 0..n {
            for y in 0..n {
                meet.set(x, y, bound(x, y, false)?);
                join.set(x, y, bound(x, y, true)?);
            }
        }
        Some(Lattice { leq, meet, join })
    }

    fn le(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.meet.size() + y]
    }

    fn order(&self) -> OrderMatrix {
        let n = self.meet.size();
        OrderMatrix::from_fn(n, |x, y| self.le(x, y))
    }
}

fn chain_lattice(n: usize) -> Lattice {
    Lattice::from_leq(n, (0..n * n).map(|c| c / n <= c % n).collect()).expect("chains are lattices")
}

/// Bounded lattices on `n` points, naturally labeled, one per isomorphism
/// class.
fn lattices(n: usize) -> Vec<Lattice> {
    if n <= 2 {
        return vec![chain_lattice(n)];
    }
    let inner: Vec<Elem> = (1..n - 1).collect();
    let pairs: Vec<(Elem, Elem)> = inner
        .iter()
        .flat_map(|&i| inner.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
        .collect();
    let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
            leq[x] = true;
            leq[x * n + n - 1] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let transitive = (0..n).all(|x| {
            (0..n).all(|y| !leq[x * n + y] || (0..n).all(|z| !leq[y * n + z] || leq[x * n + z]))
        });
        if !transitive {
            continue;
        }
        let canon = linear_extensions(n, |x, y| leq[x * n + y])
            .into_iter()
            .map(|perm| {
                let mut r = vec![false; n * n];
                for x in 0..n {
                    for y in 0..n {
                        r[perm[x] * n + perm[y]] = leq[x * n + y];
                    }
                }
                r
            })
            .min()
            .expect("nonempty");
        if !seen.insert(canon) {
            continue;
        }
        if let Some(l) = Lattice::from_leq(n, leq) {
            out.push(l);
        }
    }
    out
}

const UNSET: Elem = usize::MAX;

/// Product tables on a fixed lattice, filled cell by cell.
struct MonoidSearch<'a> {
    lat: &'a Lattice,
    n: usize,
    cells: Vec<(Elem, Elem)>,
    prod: Vec<Elem>,
}

impl<'a> MonoidSearch<'a> {
    fn new(lat: &'a Lattice) -> Self {
        let n = lat.meet.size();
        let top = n - 1;
        let mut prod = vec![UNSET; n * n];
        for x in 0..n {
            prod[x] = 0;
            prod[x * n] = 0;
            prod[top * n + x] = x;
            prod[x * n + top] = x;
        }
        let cells = (1..top)
            .flat_map(|x| (x..top).map(move |y| (x, y)))
            .collect();
        Self {
            lat,
            n,
            cells,
            prod,
        }
    }

    fn p(&self, x: Elem, y: Elem) -> Elem {
        self.prod[x * self.n + y]
    }

    fn consistent(&self) -> bool {
        let n = self.n;
        let lat = self.lat;
        for x in 0..n {
            for y in 0..n {
                let xy = self.p(x, y);
                if xy == UNSET {
                    continue;
                }
                for z in 0..n {
                    // monotone in the left argument
                    if lat.le(x, z) {
                        let zy = self.p(z, y);
                        if zy != UNSET && !lat.le(xy, zy) {
                            return false;
                        }
                    }
                    // associative
                    let yz = self.p(y, z);
                    if yz != UNSET {
                        let l = self.p(xy, z);
                        let r = self.p(x, yz);
                        if l != UNSET && r != UNSET && l != r {
                            return false;
                        }
                    }
                    // distributes over joins
                    let xz = self.p(x, z);
                    let yjz = lat.join.get(y, z);
                    let xyjz = self.p(x, yjz);
                    if xz != UNSET && xyjz != UNSET && xyjz != lat.join.get(xy, xz) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize, out: &mut Vec<Table>) {
        if k == self.cells.len() {
            let n = self.n;
            out.push(Table::from_fn(n, |x, y| self.p(x, y)));
            return;
        }
        let (x, y) = self.cells[k];
        let bound = self.lat.meet.get(x, y);
        for v in (0..self.n - 1).filter(|&v| self.lat.le(v, bound)) {
            self.prod[x * self.n + y] = v;
            self.prod[y * self.n + x] = v;
            if self.consistent() {
                self.run(k + 1, out);
            }
        }
        self.prod[x * self.n + y] = UNSET;
        self.prod[y * self.n + x] = UNSET;
    }
}

fn assemble(lat: &Lattice, prod: Table) -> Option<FiniteAlgebra> {
    let imp = derive_residual(&lat.order(), &prod).ok()?;
    let a =
        FiniteAlgebra::residuated_lattice(lat.meet.clone(), lat.join.clone(), prod, imp).ok()?;
    validate_axioms(&a).is_valid().then_some(a)
}

fn check_size(n: usize, chains_only: bool) -> Result<(), EnumError> {
    let max = if chains_only {
        MAX_CHAIN_SIZE
    } else {
        MAX_GENERAL_SIZE
    };
    if n < 2 || n > max {
        return Err(EnumError::SizeOutOfRange { n, max });
    }
    Ok(())
}

/// Residuated lattices of size `n`, lattice first, keyed canonically.
fn residuated_lattices(n: usize, chains_only: bool) -> BTreeMap<CanonicalKey, FiniteAlgebra> {
    let lats = if chains_only {
        vec![chain_lattice(n)]
    } else {
        lattices(n)
    };
    let found: Vec<(CanonicalKey, FiniteAlgebra)> = lats
        .par_iter()
        .flat_map_iter(|lat| {
            let mut tables = Vec::new();
            MonoidSearch::new(lat).run(0, &mut tables);
            tables
                .into_iter()
                .filter_map(|t| assemble(lat, t))
                .map(|a| canonical_form(&a))
                .collect::<Vec<_>>()
        })
        .collect();
    found.into_iter().collect()
}

/// Finite hoops have a least element absorbing under `⊙`, so bounded hoops
/// and hoops of size `n` are the divisible residuated lattices of size `n`
/// read in the hoop signatures.
fn to_signature(a: FiniteAlgebra, sig: Signature) -> Option<FiniteAlgebra> {
    match sig {
        Signature::ResiduatedLattice => Some(a),
        _ => {
            let divisible = a
                .elements()
                .all(|x| a.elements().all(|y| a.prod(x, a.imp(x, y)) == a.meet(x, y)));
            if !divisible {
                return None;
            }
            let bounded = a.hoop_reduct();
            Some(if sig == Signature::Hoop {
                bounded.hoop_reduct()
            } else {
                bounded
            })
        }
    }
}

fn tag(sig: Signature) -> &'static str {
    sig.tag()
}

/// One representative per isomorphism class passing the filter, sorted by
/// canonical key and named `<signature><n>_<index>`.
pub fn enumerate_algebras(
    n: usize,
    sig: Signature,
    filter: &EnumFilter,
) -> Result<Vec<FiniteAlgebra>, EnumError> {
    check_size(n, filter.chains_only)?;
    let mut by_key: BTreeMap<CanonicalKey, FiniteAlgebra> = BTreeMap::new();
    for (_, a) in residuated_lattices(n, filter.chains_only) {
        if let Some(b) = to_signature(a, sig) {
            if filter.accepts(&b) {
                let (key, canon) = canonical_form(&b);
                by_key.insert(key, canon);
            }
        }
    }
    Ok(by_key
        .into_values()
        .enumerate()
        .map(|(i, a)| a.with_name(format!("{}{n}_{i:03}", tag(sig))))
        .collect())
}

pub fn count_algebras(n: usize, sig: Signature, filter: &EnumFilter) -> Result<usize, EnumError> {
    enumerate_algebras(n, sig, filter).map(|v| v.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub count_a: usize,
    pub count_b: usize,
    pub agree: bool,
}

/// Counts by the lattice-first strategy and, independently, by fixing the
/// monoid first and then trying every labeled bounded lattice order.
pub fn count_crosscheck(n: usize, sig: Signature) -> Result<CrossCheck, EnumError> {
    let count_a = count_algebras(n, sig, &EnumFilter::default())?;
    let count_b = monoid_first(n, sig)?.len();
    Ok(CrossCheck {
        count_a,
        count_b,
        agree: count_a == count_b,
    })
}

/// Commutative monoids on `0..n` with identity `n-1`, absorbing `0`, and
/// no product of two non-identity elements equal to the identity.
fn integral_monoids(n: usize) -> Vec<Table> {
    fn rec(n: usize, cells: &[(Elem, Elem)], k: usize, prod: &mut Vec<Elem>, out: &mut Vec<Table>) {
        let p = |prod: &Vec<Elem>, x: Elem, y: Elem| prod[x * n + y];
        if k == cells.len() {
            out.push(Table::from_fn(n, |x, y| p(prod, x, y)));
            return;
        }
        let (x, y) = cells[k];
        for v in 0..n - 1 {
            prod[x * n + y] = v;
            prod[y * n + x] = v;
            let ok = (0..n).all(|a| {
                (0..n).all(|b| {
                    let ab = p(prod, a, b);
                    ab == UNSET
                        || (0..n).all(|c| {
                            let bc = p(prod, b, c);
                            if bc == UNSET {
                                return true;
                            }
                            let (l, r) = (p(prod, ab, c), p(prod, a, bc));
                            l == UNSET || r == UNSET || l == r
                        })
                })
            });
            if ok {
                rec(n, cells, k + 1, prod, out);
            }
        }
        prod[x * n + y] = UNSET;
        prod[y * n + x] = UNSET;
    }
    let top = n - 1;
    let mut prod = vec![UNSET; n * n];
    for x in 0..n {
        prod[x] = 0;
        prod[x * n] = 0;
        prod[top * n + x] = x;
        prod[x * n + top] = x;
    }
    let cells: Vec<(Elem, Elem)> = (1..top)
        .flat_map(|x| (x..top).map(move |y| (x, y)))
        .collect();
    let mut out = Vec::new();
    rec(n, &cells, 0, &mut prod, &mut out);
    out
}

/// Every bounded lattice order on the labeled set `0..n` with `0` least and
/// `n-1` greatest.
fn labeled_lattices(n: usize) -> Vec<Lattice> {
    let inner: Vec<Elem> = (1..n.saturating_sub(1)).collect();
    // all permutations of the inner points
    let perms = linear_extensions(inner.len(), |x, y| x == y);
    let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut out = Vec::new();
    for lat in lattices(n) {
        for p in &perms {
            let mut perm: Vec<Elem> = (0..n).collect();
            for (i, &x) in inner.iter().enumerate() {
                perm[x] = inner[p[i]];
            }
            let mut leq = vec![false; n * n];
            for x in 0..n {
                for y in 0..n {
                    leq[perm[x] * n + perm[y]] = lat.le(x, y);
                }
            }
            if seen.insert(leq.clone()) {
                out.push(Lattice::from_leq(n, leq).expect("relabeled lattice"));
            }
        }
    }
    out
}

fn monoid_first(n: usize, sig: Signature) -> Result<BTreeSet<CanonicalKey>, EnumError> {
    check_size(n, false)?;
    let orders = labeled_lattices(n);
    let keys = integral_monoids(n)
        .par_iter()
        .flat_map_iter(|m| {
            orders
                .iter()
                .filter(|lat| {
                    (0..n).all(|x| {
                        (0..n).all(|z| {
                            !lat.le(x, z) || (0..n).all(|y| lat.le(m.get(x, y), m.get(z, y)))
                        })
                    })
                })
                .filter_map(|lat| {
                    let imp = derive_residual(&lat.order(), m).ok()?;
                    let a = FiniteAlgebra::new(AlgebraParts {
                        name: None,
                        signature: Signature::ResiduatedLattice,
                        meet: Some(lat.meet.clone()),
                        join: Some(lat.join.clone()),
                        prod: m.clone(),
                        imp,
                        bot: Some(0),
                        top: n - 1,
                    })
                    .ok()?;
                    validate_axioms(&a).is_valid().then_some(a)
                })
                .filter_map(|a| to_signature(a, sig))
                .map(|a| canonical_key(&a))
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(keys)
}
