//! Products, subalgebras, the diamond extension and the test-algebra
//! predicates.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraParts, Elem, FiniteAlgebra, Signature, Table};
use crate::catalog;
use crate::morphisms::{is_isomorphic, Morphism};
use crate::set::ElementSet;
use crate::structure::radical_report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("signatures differ: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },
    #[error("{what} needs a residuated lattice, got {got}")]
    NeedsResiduatedLattice { what: &'static str, got: Signature },
}

/// `A × B` on carrier indices `a * |B| + b`.
pub fn direct_product(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
) -> Result<FiniteAlgebra, ConstructionError> {
    if a.signature() != b.signature() {
        return Err(ConstructionError::SignatureMismatch {
            left: a.signature(),
            right: b.signature(),
        });
    }
    let nb = b.size();
    let n = a.size() * nb;
    let pair = |x: Elem, y: Elem| x * nb + y;
    let lift = |ta: &Table, tb: &Table| {
        Table::from_fn(n, |p, q| {
            pair(ta.get(p / nb, q / nb), tb.get(p % nb, q % nb))
        })
    };
    let name = match (a.name(), b.name()) {
        (Some(x), Some(y)) => Some(format!("{x}x{y}")),
        _ => None,
    };
    let explicit_meet = !a.signature().is_hoop();
    let parts = AlgebraParts {
        name,
        signature: a.signature(),
        meet: explicit_meet.then(|| lift(a.meet_table(), b.meet_table())),
        join: match (a.join_table(), b.join_table()) {
            (Some(ja), Some(jb)) => Some(lift(ja, jb)),
            _ => None,
        },
        prod: lift(a.prod_table(), b.prod_table()),
        imp: lift(a.imp_table(), b.imp_table()),
        bot: a.bot().zip(b.bot()).map(|(x, y)| pair(x, y)),
        top: pair(a.top(), b.top()),
    };
    Ok(FiniteAlgebra::new(parts).expect("product tables are well-shaped"))
}

/// The two projections out of `direct_product(a, b)`.
pub fn projections(a: &FiniteAlgebra, b: &FiniteAlgebra) -> (Morphism, Morphism) {
    let nb = b.size();
    let n = a.size() * nb;
    (
        Morphism::new((0..n).map(|p| p / nb).collect()),
        Morphism::new((0..n).map(|p| p % nb).collect()),
    )
}

/// Least subset containing `seed` and the constants that is closed under
/// every operation of the signature.
pub fn subalgebra_closure(a: &FiniteAlgebra, seed: &ElementSet) -> ElementSet {
    let mut set = seed.clone();
    for c in a.constants() {
        set.insert(c);
    }
    let ops = a.operations();
    let mut frontier = set.members();
    while let Some(x) = frontier.pop() {
        for y in set.members() {
            for (_, t) in &ops {
                for v in [t.get(x, y), t.get(y, x)] {
                    if set.insert(v) {
                        frontier.push(v);
                    }
                }
            }
        }
    }
    set
}

/// The algebra carried by an operation-closed subset, with elements kept in
/// ascending index order, and its inclusion map.
pub fn subalgebra_on(a: &FiniteAlgebra, members: &ElementSet) -> (FiniteAlgebra, Morphism) {
    let elems = members.members();
    let mut index = vec![usize::MAX; a.size()];
    for (i, &x) in elems.iter().enumerate() {
        index[x] = i;
    }
    let m = elems.len();
    let lift = |t: &Table| Table::from_fn(m, |i, j| index[t.get(elems[i], elems[j])]);
    let parts = AlgebraParts {
        name: a.name().map(|n| format!("{n}|{members}")),
        signature: a.signature(),
        meet: (!a.signature().is_hoop()).then(|| lift(a.meet_table())),
        join: a.join_table().map(lift),
        prod: lift(a.prod_table()),
        imp: lift(a.imp_table()),
        bot: a.bot().map(|b| index[b]),
        top: index[a.top()],
    };
    let sub = FiniteAlgebra::new(parts).expect("closed subset gives well-shaped tables");
    (sub, Morphism::new(elems))
}

#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub members: ElementSet,
    pub algebra: FiniteAlgebra,
    pub inclusion: Morphism,
}

pub fn subalgebra_generated(a: &FiniteAlgebra, seed: &ElementSet) -> Subalgebra {
    let members = subalgebra_closure(a, seed);
    let (algebra, inclusion) = subalgebra_on(a, &members);
    Subalgebra {
        members,
        algebra,
        inclusion,
    }
}

/// Every subuniverse, by size and then by member list.
pub fn all_subalgebras(a: &FiniteAlgebra) -> Vec<ElementSet> {
    let base = subalgebra_closure(a, &ElementSet::empty(a.size()));
    let mut seen = std::collections::HashSet::new();
    seen.insert(base.clone());
    let mut stack = vec![base];
    while let Some(s) = stack.pop() {
        for x in a.elements().filter(|&x| !s.contains(x)) {
            let mut seed = s.clone();
            seed.insert(x);
            let t = subalgebra_closure(a, &seed);
            if seen.insert(t.clone()) {
                stack.push(t);
            }
        }
    }
    let mut out: Vec<ElementSet> = seen.into_iter().collect();
    out.sort_by(|l, r| l.len().cmp(&r.len()).then_with(|| l.cmp(r)));
    out
}

#[derive(Clone, Debug)]
pub struct Diamond {
    pub algebra: FiniteAlgebra,
    /// `pairs[i]` is the pair `(a, b)` at index `i`.
    pub pairs: Vec<(Elem, Elem)>,
    /// The diagonal `a ↦ (a, a)`.
    pub embedding: Morphism,
}

impl Diamond {
    pub fn index_of(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.pairs.iter().position(|&p| p == (a, b))
    }
}

/// `A^◇` on the pairs `a ≤ b`, sorted by `(b, a)`.
pub fn diamond(a: &FiniteAlgebra) -> Result<Diamond, ConstructionError> {
    if a.signature() != Signature::ResiduatedLattice {
        return Err(ConstructionError::NeedsResiduatedLattice {
            what: "diamond",
            got: a.signature(),
        });
    }
    let mut pairs: Vec<(Elem, Elem)> = a
        .elements()
        .flat_map(|x| a.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| a.leq(x, y))
        .collect();
    pairs.sort_by_key(|&(x, y)| (y, x));
    let n = a.size();
    let mut index = vec![usize::MAX; n * n];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        index[x * n + y] = i;
    }
    let at = |(x, y): (Elem, Elem)| index[x * n + y];
    let join = |x, y| a.join(x, y).expect("residuated lattices carry a join");
    let m = pairs.len();
    let table = |f: &dyn Fn((Elem, Elem), (Elem, Elem)) -> (Elem, Elem)| {
        Table::from_fn(m, |i, j| at(f(pairs[i], pairs[j])))
    };
    let meet = table(&|(a1, b1), (a2, b2)| (a.meet(a1, a2), a.meet(b1, b2)));
    let join_t = table(&|(a1, b1), (a2, b2)| (join(a1, a2), join(b1, b2)));
    let prod = table(&|(a1, b1), (a2, b2)| (a.prod(a1, a2), join(a.prod(a1, b2), a.prod(a2, b1))));
    let imp = table(&|(a1, b1), (a2, b2)| (a.meet(a.imp(a1, a2), a.imp(b1, b2)), a.imp(a1, b2)));
    let bot = a.bot().expect("residuated lattices have a bottom");
    let algebra = FiniteAlgebra::new(AlgebraParts {
        name: a.name().map(|s| format!("{s}^d")),
        signature: Signature::ResiduatedLattice,
        meet: Some(meet),
        join: Some(join_t),
        prod,
        imp,
        bot: Some(at((bot, bot))),
        top: at((a.top(), a.top())),
    })
    .expect("diamond tables are well-shaped");
    let embedding = Morphism::new(a.elements().map(|x| at((x, x))).collect());
    Ok(Diamond {
        algebra,
        pairs,
        embedding,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TestWitness {
    pub epsilon: Elem,
    pub t: Elem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TestDReport {
    pub witness: Option<TestWitness>,
    pub radical_dense: bool,
}

/// Looks for `ε, t` in the radical with `ε` idempotent and below the top,
/// `t < ε` and `ε → t ≤ ε`. Returns the least pair in `(ε, t)` order.
pub fn is_test_d(a: &FiniteAlgebra) -> Option<TestDReport> {
    let rad = radical_report(a).ok()?;
    let r = rad.radical.members();
    let witness = r
        .iter()
        .filter(|&e| e != a.top() && a.is_idempotent(e))
        .flat_map(|e| r.iter().map(move |t| (e, t)))
        .find(|&(e, t)| a.lt(t, e) && a.leq(a.imp(e, t), e))
        .map(|(epsilon, t)| TestWitness { epsilon, t });
    Some(TestDReport {
        witness,
        radical_dense: rad.radical_dense,
    })
}

/// Looks for `ε` with `¬ε < ε` such that `{0, ¬ε, ε, 1}` is a subalgebra
/// isomorphic to `I₄` sending `a` to `ε`, and `t` in the radical below `ε`.
pub fn is_test_i(a: &FiniteAlgebra) -> Option<TestWitness> {
    let rad = radical_report(a).ok()?;
    let i4 = catalog::i4();
    for e in a.elements() {
        let ne = a.neg(e)?;
        if !a.lt(ne, e) {
            continue;
        }
        let sub = subalgebra_generated(a, &ElementSet::from_members(a.size(), [e]));
        if sub.members.len() != 4 || !is_isomorphic(&sub.algebra, &i4) {
            continue;
        }
        if let Some(t) = rad.radical.members().iter().find(|&t| a.lt(t, e)) {
            return Some(TestWitness { epsilon: e, t });
        }
    }
    None
}
