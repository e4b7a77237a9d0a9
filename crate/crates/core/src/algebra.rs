//! Finite residuated lattices and (bounded) hoops stored as operation tables.
//!
//! The carrier of an algebra of size `n` is `{0, .., n-1}`. Every binary
//! operation is a total `n × n` table indexed `[left][right]`. The natural
//! order is read off the meet table: `x ≤ y` iff `x ∧ y = x`. For hoops the
//! meet is not part of the signature and is derived as `x ⊙ (x → y)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::set::ElementSet;

/// Index of a carrier element.
pub type Elem = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Signature {
    /// `⟨∧, ∨, ⊙, →, 0, 1⟩`
    #[serde(rename = "rl")]
    ResiduatedLattice,
    /// `⟨⊙, →, 1⟩`
    #[serde(rename = "hoop")]
    Hoop,
    /// `⟨⊙, →, 0, 1⟩`
    #[serde(rename = "bounded_hoop")]
    BoundedHoop,
}

impl Signature {
    pub fn has_join(self) -> bool {
        matches!(self, Signature::ResiduatedLattice)
    }

    pub fn has_bot(self) -> bool {
        !matches!(self, Signature::Hoop)
    }

    pub fn is_hoop(self) -> bool {
        !self.has_join()
    }

    pub fn tag(self) -> &'static str {
        match self {
            Signature::ResiduatedLattice => "rl",
            Signature::Hoop => "hoop",
            Signature::BoundedHoop => "bounded_hoop",
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A total binary operation on `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Table {
    size: usize,
    cells: Vec<Elem>,
}

impl Table {
    pub fn from_fn(size: usize, mut f: impl FnMut(Elem, Elem) -> Elem) -> Self {
        let mut cells = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                cells.push(f(x, y));
            }
        }
        Self { size, cells }
    }

    /// Builds a table from row-major rows, checking shape and range.
    pub fn from_rows(op: Op, size: usize, rows: &[Vec<Elem>]) -> Result<Self, StructureError> {
        if rows.len() != size || rows.iter().any(|r| r.len() != size) {
            return Err(StructureError::WrongDimensions {
                op,
                expected: size,
                rows: rows.len(),
                cols: rows
                    .iter()
                    .map(Vec::len)
                    .find(|&l| l != size)
                    .unwrap_or(size),
            });
        }
        for (x, row) in rows.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(StructureError::OutOfRange {
                        op,
                        row: x,
                        col: y,
                        value: v,
                    });
                }
            }
        }
        Ok(Self {
            size,
            cells: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, x: Elem, y: Elem) -> Elem {
        self.cells[x * self.size + y]
    }

    #[inline]
    pub fn set(&mut self, x: Elem, y: Elem, v: Elem) {
        self.cells[x * self.size + y] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.cells
            .chunks(self.size.max(1))
            .take(self.size)
            .map(<[Elem]>::to_vec)
            .collect()
    }

    pub fn cells(&self) -> &[Elem] {
        &self.cells
    }

    /// Table of the same operation after renaming every element `x` to `perm[x]`.
    pub fn relabel(&self, perm: &[Elem]) -> Table {
        let mut out = Table {
            size: self.size,
            cells: vec![0; self.cells.len()],
        };
        for x in 0..self.size {
            for y in 0..self.size {
                out.set(perm[x], perm[y], perm[self.get(x, y)]);
            }
        }
        out
    }
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Names of the binary operations, used in diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Meet,
    Join,
    Prod,
    Imp,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Meet => "meet",
            Op::Join => "join",
            Op::Prod => "prod",
            Op::Imp => "imp",
        })
    }
}

/// Malformed input: a table or constant that cannot describe any algebra of the
/// declared signature. Distinct from an axiom failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("carrier must be nonempty")]
    EmptyCarrier,
    #[error(
        "{op} table must be {expected}x{expected}, got {rows} rows (offending row length {cols})"
    )]
    WrongDimensions {
        op: Op,
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("{op}[{row}][{col}] = {value} is outside the carrier")]
    OutOfRange {
        op: Op,
        row: Elem,
        col: Elem,
        value: Elem,
    },
    #[error("signature {signature} requires a {what}")]
    Missing {
        signature: Signature,
        what: &'static str,
    },
    #[error("signature {signature} does not carry a {what}")]
    Unexpected {
        signature: Signature,
        what: &'static str,
    },
    #[error("constant {name} = {value} is outside the carrier")]
    ConstantOutOfRange { name: &'static str, value: Elem },
}

/// Raw ingredients of an algebra, before shape checks.
#[derive(Clone, Debug)]
pub struct AlgebraParts {
    pub name: Option<String>,
    pub signature: Signature,
    pub meet: Option<Table>,
    pub join: Option<Table>,
    pub prod: Table,
    pub imp: Table,
    pub bot: Option<Elem>,
    pub top: Elem,
}

/// A finite algebra in one of the three supported signatures.
///
/// Construction only checks shape. Use [`validate_axioms`] (or
/// [`FiniteAlgebra::validated`]) before relying on any algebraic law.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: Option<String>,
    signature: Signature,
    meet: Table,
    join: Option<Table>,
    prod: Table,
    imp: Table,
    bot: Option<Elem>,
    top: Elem,
    // for hoops: whether `meet` was supplied rather than derived
    explicit_hoop_meet: bool,
}

impl FiniteAlgebra {
    pub fn new(parts: AlgebraParts) -> Result<Self, StructureError> {
        let n = parts.prod.size();
        if n == 0 {
            return Err(StructureError::EmptyCarrier);
        }
        let check = |op: Op, t: &Table| {
            if t.size() != n {
                Err(StructureError::WrongDimensions {
                    op,
                    expected: n,
                    rows: t.size(),
                    cols: t.size(),
                })
            } else {
                Ok(())
            }
        };
        check(Op::Imp, &parts.imp)?;
        let sig = parts.signature;
        match (sig.has_join(), &parts.join) {
            (true, None) => {
                return Err(StructureError::Missing {
                    signature: sig,
                    what: "join table",
                })
            }
            (false, Some(_)) => {
                return Err(StructureError::Unexpected {
                    signature: sig,
                    what: "join table",
                })
            }
            (_, Some(j)) => check(Op::Join, j)?,
            _ => {}
        }
        match (sig.has_bot(), parts.bot) {
            (true, None) => {
                return Err(StructureError::Missing {
                    signature: sig,
                    what: "bottom constant",
                })
            }
            (false, Some(_)) => {
                return Err(StructureError::Unexpected {
                    signature: sig,
                    what: "bottom constant",
                })
            }
            (_, Some(b)) if b >= n => {
                return Err(StructureError::ConstantOutOfRange {
                    name: "bot",
                    value: b,
                })
            }
            _ => {}
        }
        if parts.top >= n {
            return Err(StructureError::ConstantOutOfRange {
                name: "top",
                value: parts.top,
            });
        }
        let explicit_hoop_meet = sig.is_hoop() && parts.meet.is_some();
        let meet = match parts.meet {
            Some(m) => {
                check(Op::Meet, &m)?;
                m
            }
            None if sig.is_hoop() => {
                Table::from_fn(n, |x, y| parts.prod.get(x, parts.imp.get(x, y)))
            }
            None => {
                return Err(StructureError::Missing {
                    signature: sig,
                    what: "meet table",
                })
            }
        };
        Ok(Self {
            name: parts.name,
            signature: sig,
            meet,
            join: parts.join,
            prod: parts.prod,
            imp: parts.imp,
            bot: parts.bot,
            top: parts.top,
            explicit_hoop_meet,
        })
    }

    /// Builds and validates in one step.
    pub fn validated(parts: AlgebraParts) -> Result<Self, AlgebraError> {
        let a = Self::new(parts)?;
        let report = validate_axioms(&a);
        if report.is_valid() {
            Ok(a)
        } else {
            Err(AlgebraError::Invalid(report))
        }
    }

    /// Residuated lattice from its four tables, with `0` at index 0 and `1` at `n-1`.
    pub fn residuated_lattice(
        meet: Table,
        join: Table,
        prod: Table,
        imp: Table,
    ) -> Result<Self, StructureError> {
        let top = prod.size().saturating_sub(1);
        Self::new(AlgebraParts {
            name: None,
            signature: Signature::ResiduatedLattice,
            meet: Some(meet),
            join: Some(join),
            prod,
            imp,
            bot: Some(0),
            top,
        })
    }

    pub fn into_parts(self) -> AlgebraParts {
        let meet = if self.signature.is_hoop() && !self.explicit_hoop_meet {
            None
        } else {
            Some(self.meet)
        };
        AlgebraParts {
            name: self.name,
            signature: self.signature,
            meet,
            join: self.join,
            prod: self.prod,
            imp: self.imp,
            bot: self.bot,
            top: self.top,
        }
    }

    pub fn size(&self) -> usize {
        self.prod.size()
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("<{} of size {}>", self.signature, self.size()))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet.get(x, y)
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.join.as_ref().map(|t| t.get(x, y))
    }

    #[inline]
    pub fn prod(&self, x: Elem, y: Elem) -> Elem {
        self.prod.get(x, y)
    }

    #[inline]
    pub fn imp(&self, x: Elem, y: Elem) -> Elem {
        self.imp.get(x, y)
    }

    pub fn bot(&self) -> Option<Elem> {
        self.bot
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn meet_table(&self) -> &Table {
        &self.meet
    }

    pub fn join_table(&self) -> Option<&Table> {
        self.join.as_ref()
    }

    pub fn prod_table(&self) -> &Table {
        &self.prod
    }

    pub fn imp_table(&self) -> &Table {
        &self.imp
    }

    /// `x ≤ y` in the natural order.
    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.meet(x, y) == x
    }

    #[inline]
    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    /// `¬x = x → 0`, when the signature has a bottom.
    pub fn neg(&self, x: Elem) -> Option<Elem> {
        self.bot.map(|b| self.imp(x, b))
    }

    /// `x^k` for `k ≥ 1`.
    pub fn power(&self, x: Elem, k: usize) -> Elem {
        assert!(k >= 1, "powers start at 1");
        let mut p = x;
        for _ in 1..k {
            p = self.prod(p, x);
        }
        p
    }

    /// Least `m` with `x^{m+1} = x^m`, together with `x^m`.
    pub fn stable_power(&self, x: Elem) -> (usize, Elem) {
        let mut m = 1;
        let mut p = x;
        loop {
            let next = self.prod(p, x);
            if next == p {
                return (m, p);
            }
            p = next;
            m += 1;
        }
    }

    pub fn is_idempotent(&self, x: Elem) -> bool {
        self.prod(x, x) == x
    }

    /// `x^n = 0` where `n` is the carrier size. `None` without a bottom.
    pub fn is_nilpotent(&self, x: Elem) -> Option<bool> {
        self.bot.map(|b| self.stable_power(x).1 == b)
    }

    pub fn is_dense(&self, x: Elem) -> Option<bool> {
        self.bot.map(|b| self.imp(x, b) == b)
    }

    /// `¬(x^k)` is nilpotent for every `k`; decided on the stabilized power.
    pub fn is_unity(&self, x: Elem) -> Option<bool> {
        let (_, stable) = self.stable_power(x);
        self.neg(stable).and_then(|n| self.is_nilpotent(n))
    }

    /// The natural order as a boolean matrix.
    pub fn order(&self) -> OrderMatrix {
        OrderMatrix::from_fn(self.size(), |x, y| self.leq(x, y))
    }

    /// The binary operations of the signature, in a fixed order.
    pub fn operations(&self) -> Vec<(Op, &Table)> {
        let mut ops = Vec::with_capacity(4);
        if !self.signature.is_hoop() {
            ops.push((Op::Meet, &self.meet));
        }
        if let Some(j) = &self.join {
            ops.push((Op::Join, j));
        }
        ops.push((Op::Prod, &self.prod));
        ops.push((Op::Imp, &self.imp));
        ops
    }

    /// Constants of the signature: bottom (if any) then top.
    pub fn constants(&self) -> Vec<Elem> {
        self.bot
            .into_iter()
            .chain(std::iter::once(self.top))
            .collect()
    }

    /// Renames every element `x` to `perm[x]`.
    pub fn relabel(&self, perm: &[Elem]) -> FiniteAlgebra {
        assert_eq!(
            perm.len(),
            self.size(),
            "permutation length must equal carrier size"
        );
        FiniteAlgebra {
            name: self.name.clone(),
            signature: self.signature,
            meet: self.meet.relabel(perm),
            join: self.join.as_ref().map(|j| j.relabel(perm)),
            prod: self.prod.relabel(perm),
            imp: self.imp.relabel(perm),
            bot: self.bot.map(|b| perm[b]),
            top: perm[self.top],
            explicit_hoop_meet: self.explicit_hoop_meet,
        }
    }

    /// True when bottom sits at index 0 and top at index `n-1`.
    pub fn is_canonically_placed(&self) -> bool {
        self.top == self.size() - 1 && self.bot.is_none_or(|b| b == 0)
    }

    /// Relabels so that bottom is 0 and top is `n-1`, keeping the relative
    /// order of the remaining elements. Returns the permutation used.
    pub fn normalize_constants(&self) -> (FiniteAlgebra, Vec<Elem>) {
        let n = self.size();
        let mut order: Vec<Elem> = Vec::with_capacity(n);
        if let Some(b) = self.bot {
            order.push(b);
        }
        order.extend((0..n).filter(|&x| Some(x) != self.bot && x != self.top));
        if Some(self.top) != self.bot {
            order.push(self.top);
        }
        let mut perm = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        (self.relabel(&perm), perm)
    }

    /// The same tables read as a hoop: drops the join (rl → bounded hoop) or
    /// the bottom constant (bounded hoop → hoop).
    pub fn hoop_reduct(&self) -> FiniteAlgebra {
        let signature = match self.signature {
            Signature::ResiduatedLattice => Signature::BoundedHoop,
            _ => Signature::Hoop,
        };
        FiniteAlgebra {
            name: self.name.clone(),
            signature,
            meet: Table::from_fn(self.size(), |x, y| self.prod(x, self.imp(x, y))),
            join: None,
            prod: self.prod.clone(),
            imp: self.imp.clone(),
            bot: if signature.has_bot() { self.bot } else { None },
            top: self.top,
            explicit_hoop_meet: false,
        }
    }

    /// A bounded hoop read as a residuated lattice with join `(x → y) → y`.
    ///
    /// The result is a lattice exactly when the hoop is Wajsberg.
    pub fn with_derived_join(&self) -> Result<FiniteAlgebra, StructureError> {
        let bot = self.bot.ok_or(StructureError::Missing {
            signature: self.signature,
            what: "bottom constant",
        })?;
        let join = Table::from_fn(self.size(), |x, y| self.imp(self.imp(x, y), y));
        FiniteAlgebra::new(AlgebraParts {
            name: self.name.clone(),
            signature: Signature::ResiduatedLattice,
            meet: Some(self.meet.clone()),
            join: Some(join),
            prod: self.prod.clone(),
            imp: self.imp.clone(),
            bot: Some(bot),
            top: self.top,
        })
    }
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAlgebra")
            .field("name", &self.name)
            .field("signature", &self.signature)
            .field("bot", &self.bot)
            .field("top", &self.top)
            .field("prod", &self.prod)
            .field("imp", &self.imp)
            .finish()
    }
}

/// Errors from constructors that both shape-check and validate.
#[derive(Debug, Clone, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("algebra fails its axioms: {0}")]
    Invalid(ValidationReport),
}

/// A reflexive relation stored as a boolean matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderMatrix {
    size: usize,
    cells: Vec<bool>,
}

impl OrderMatrix {
    pub fn from_fn(size: usize, mut f: impl FnMut(Elem, Elem) -> bool) -> Self {
        let mut cells = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                cells.push(f(x, y));
            }
        }
        Self { size, cells }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.cells[x * self.size + y]
    }

    pub fn is_total(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.leq(x, y) || self.leq(y, x)))
    }
}

/// Which law a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    ProdCommutative,
    ProdAssociative,
    ProdIdentity,
    MeetCommutative,
    MeetAssociative,
    MeetIdempotent,
    JoinCommutative,
    JoinAssociative,
    JoinIdempotent,
    Absorption,
    BotLeast,
    TopGreatest,
    /// `(x ⊙ y) → z = x → (y → z)`
    ImpCurrying,
    /// `((x → y) ⊙ x) ∧ y = (x → y) ⊙ x`
    ModusPonens,
    /// `(x ∧ y) → y = 1`
    MeetImpTop,
    /// `x ⊙ y ≤ z` iff `x ≤ y → z`
    Residuation,
    /// `x → x = 1`
    ImpReflexive,
    /// `(x → y) ⊙ x = (y → x) ⊙ y`
    Divisibility,
    /// supplied hoop meet differs from `x ⊙ (x → y)`
    DerivedMeet,
    /// `0 → x = 1`
    BotImp,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::ProdCommutative => "x*y = y*x",
            Axiom::ProdAssociative => "(x*y)*z = x*(y*z)",
            Axiom::ProdIdentity => "x*1 = x",
            Axiom::MeetCommutative => "x^y = y^x",
            Axiom::MeetAssociative => "(x^y)^z = x^(y^z)",
            Axiom::MeetIdempotent => "x^x = x",
            Axiom::JoinCommutative => "xvy = yvx",
            Axiom::JoinAssociative => "(xvy)vz = xv(yvz)",
            Axiom::JoinIdempotent => "xvx = x",
            Axiom::Absorption => "x^(xvy) = x = xv(x^y)",
            Axiom::BotLeast => "0 <= x",
            Axiom::TopGreatest => "x <= 1",
            Axiom::ImpCurrying => "(x*y)->z = x->(y->z)",
            Axiom::ModusPonens => "((x->y)*x)^y = (x->y)*x",
            Axiom::MeetImpTop => "(x^y)->y = 1",
            Axiom::Residuation => "x*y <= z iff x <= y->z",
            Axiom::ImpReflexive => "x->x = 1",
            Axiom::Divisibility => "(x->y)*x = (y->x)*y",
            Axiom::DerivedMeet => "x^y = x*(x->y)",
            Axiom::BotImp => "0->x = 1",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

/// Outcome of [`validate_axioms`]: every violation found, not just the first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn first(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    /// Violated axioms without repetition, in enum order.
    pub fn axioms(&self) -> Vec<Axiom> {
        let mut axioms: Vec<Axiom> = self.violations.iter().map(|v| v.axiom).collect();
        axioms.sort();
        axioms.dedup();
        axioms
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for axiom in self.axioms() {
            let first = self.first(axiom).expect("axiom comes from the list");
            let count = self.violations.iter().filter(|v| v.axiom == axiom).count();
            write!(
                f,
                "; {axiom} fails at {:?} ({count} case(s))",
                first.witness
            )?;
        }
        Ok(())
    }
}

/// Checks every axiom of the algebra's declared signature and collects all
/// violations with witnesses.
pub fn validate_axioms(a: &FiniteAlgebra) -> ValidationReport {
    let n = a.size();
    let mut out = Vec::new();
    let mut push = |axiom: Axiom, witness: &[Elem]| {
        out.push(Violation {
            axiom,
            witness: witness.to_vec(),
        })
    };
    let top = a.top();

    for x in 0..n {
        if a.prod(x, top) != x || a.prod(top, x) != x {
            push(Axiom::ProdIdentity, &[x]);
        }
        if a.meet(x, x) != x {
            push(Axiom::MeetIdempotent, &[x]);
        }
        if let Some(j) = a.join(x, x) {
            if j != x {
                push(Axiom::JoinIdempotent, &[x]);
            }
        }
        if !a.leq(x, top) {
            push(Axiom::TopGreatest, &[x]);
        }
        if let Some(b) = a.bot() {
            if !a.leq(b, x) {
                push(Axiom::BotLeast, &[x]);
            }
            if a.signature().is_hoop() && a.imp(b, x) != top {
                push(Axiom::BotImp, &[x]);
            }
        }
        if a.signature().is_hoop() && a.imp(x, x) != top {
            push(Axiom::ImpReflexive, &[x]);
        }
    }

    for x in 0..n {
        for y in 0..n {
            if a.prod(x, y) != a.prod(y, x) {
                push(Axiom::ProdCommutative, &[x, y]);
            }
            if a.meet(x, y) != a.meet(y, x) {
                push(Axiom::MeetCommutative, &[x, y]);
            }
            if let (Some(j), Some(k)) = (a.join(x, y), a.join(y, x)) {
                if j != k {
                    push(Axiom::JoinCommutative, &[x, y]);
                }
                if a.meet(x, j) != x || a.join(x, a.meet(x, y)) != Some(x) {
                    push(Axiom::Absorption, &[x, y]);
                }
            }
            let xy = a.imp(x, y);
            match a.signature() {
                Signature::ResiduatedLattice => {
                    let t = a.prod(xy, x);
                    if a.meet(t, y) != t {
                        push(Axiom::ModusPonens, &[x, y]);
                    }
                    if a.imp(a.meet(x, y), y) != top {
                        push(Axiom::MeetImpTop, &[x, y]);
                    }
                }
                Signature::Hoop | Signature::BoundedHoop => {
                    if a.prod(xy, x) != a.prod(a.imp(y, x), y) {
                        push(Axiom::Divisibility, &[x, y]);
                    }
                    if a.explicit_hoop_meet && a.meet(x, y) != a.prod(x, xy) {
                        push(Axiom::DerivedMeet, &[x, y]);
                    }
                }
            }
        }
    }

    for x in 0..n {
        for y in 0..n {
            let xy = a.prod(x, y);
            let mxy = a.meet(x, y);
            let jxy = a.join(x, y);
            for z in 0..n {
                if a.prod(xy, z) != a.prod(x, a.prod(y, z)) {
                    push(Axiom::ProdAssociative, &[x, y, z]);
                }
                if a.meet(mxy, z) != a.meet(x, a.meet(y, z)) {
                    push(Axiom::MeetAssociative, &[x, y, z]);
                }
                if let Some(j) = jxy {
                    if a.join(j, z) != a.join(y, z).and_then(|yz| a.join(x, yz)) {
                        push(Axiom::JoinAssociative, &[x, y, z]);
                    }
                }
                if a.imp(xy, z) != a.imp(x, a.imp(y, z)) {
                    push(Axiom::ImpCurrying, &[x, y, z]);
                }
                if a.leq(xy, z) != a.leq(x, a.imp(y, z)) {
                    push(Axiom::Residuation, &[x, y, z]);
                }
            }
        }
    }
    ValidationReport { violations: out }
}

/// The order-theoretic residual of `prod`: `x → y` is the largest `z` with
/// `z ⊙ x ≤ y`. Fails with the first pair (in index order) where no such
/// largest element exists.
pub fn derive_residual(order: &OrderMatrix, prod: &Table) -> Result<Table, NotResiduated> {
    let n = order.size();
    let mut imp = Table::from_fn(n, |_, _| 0);
    for x in 0..n {
        for y in 0..n {
            let below: Vec<Elem> = (0..n).filter(|&z| order.leq(prod.get(z, x), y)).collect();
            let max = below
                .iter()
                .copied()
                .find(|&m| below.iter().all(|&z| order.leq(z, m)));
            match max {
                Some(m) => imp.set(x, y, m),
                None => return Err(NotResiduated { x, y }),
            }
        }
    }
    Ok(imp)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("no largest z with z*{x} <= {y}")]
pub struct NotResiduated {
    pub x: Elem,
    pub y: Elem,
}

/// Facts about one element that need the bottom constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NegationProfile {
    pub negation: Elem,
    /// Least `k` with `x^k = 0`; `None` when `x` is not nilpotent.
    pub nilpotence_order: Option<usize>,
    pub dense: bool,
    pub unity: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ElementProfile {
    pub element: Elem,
    /// `x^m` for the least `m` where the powers stop decreasing.
    pub stable_power: Elem,
    pub stable_exponent: usize,
    pub idempotent: bool,
    pub coatom: bool,
    /// `None` for hoops without a bottom: negation, density and unity are
    /// unavailable there.
    pub negation: Option<NegationProfile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error("element {element} is outside a carrier of size {size}")]
    OutOfRange { element: Elem, size: usize },
}

pub fn element_profile(a: &FiniteAlgebra, x: Elem) -> Result<ElementProfile, ElementError> {
    if x >= a.size() {
        return Err(ElementError::OutOfRange {
            element: x,
            size: a.size(),
        });
    }
    let (stable_exponent, stable_power) = a.stable_power(x);
    let negation = a.bot().map(|b| {
        let nilpotence_order = if stable_power == b {
            (1..=stable_exponent).find(|&k| a.power(x, k) == b)
        } else {
            None
        };
        NegationProfile {
            negation: a.imp(x, b),
            nilpotence_order,
            dense: a.imp(x, b) == b,
            unity: a.is_unity(x).unwrap_or(false),
        }
    });
    Ok(ElementProfile {
        element: x,
        stable_power,
        stable_exponent,
        idempotent: a.is_idempotent(x),
        coatom: is_coatom(a, x),
        negation,
    })
}

fn is_coatom(a: &FiniteAlgebra, x: Elem) -> bool {
    let top = a.top();
    x != top && a.elements().all(|y| !(a.lt(x, y) && a.lt(y, top)))
}

/// Elements covered by the top.
pub fn coatoms(a: &FiniteAlgebra) -> Vec<Elem> {
    a.elements().filter(|&x| is_coatom(a, x)).collect()
}

/// The principal up-set `[x)`.
pub fn up_set(a: &FiniteAlgebra, x: Elem) -> ElementSet {
    ElementSet::from_members(a.size(), a.elements().filter(|&y| a.leq(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    // H4: 0 < b < a < 1 at indices 0..3
    const B: Elem = 1;
    const A: Elem = 2;

    fn h4() -> FiniteAlgebra {
        catalog::h4()
    }

    #[test]
    fn printed_tables_validate() {
        assert!(validate_axioms(&h4()).is_valid());
        assert!(validate_axioms(&catalog::i4()).is_valid());
        assert!(validate_axioms(&catalog::i6()).is_valid());
    }

    #[test]
    fn broken_product_reports_modus_ponens_witness() {
        let mut parts = h4().into_parts();
        parts.prod.set(B, A, A);
        let a = FiniteAlgebra::new(parts).unwrap();
        let report = validate_axioms(&a);
        assert!(!report.is_valid());
        // (a→b)⊙a = b⊙a = a, which is not below b
        assert!(report.violations.contains(&Violation {
            axiom: Axiom::ModusPonens,
            witness: vec![A, B]
        }));
        assert!(report.violates(Axiom::ProdCommutative));
    }

    #[test]
    fn malformed_tables_are_structural_errors() {
        let rows = vec![vec![0, 1], vec![1]];
        assert!(matches!(
            Table::from_rows(Op::Prod, 2, &rows),
            Err(StructureError::WrongDimensions { .. })
        ));
        let rows = vec![vec![0, 5], vec![1, 1]];
        assert!(matches!(
            Table::from_rows(Op::Imp, 2, &rows),
            Err(StructureError::OutOfRange {
                op: Op::Imp,
                row: 0,
                col: 1,
                value: 5
            })
        ));
        let mut parts = h4().into_parts();
        parts.join = None;
        assert!(matches!(
            FiniteAlgebra::new(parts),
            Err(StructureError::Missing { .. })
        ));
    }

    fn chain_order(n: usize) -> OrderMatrix {
        OrderMatrix::from_fn(n, |x, y| x <= y)
    }

    // oracle: the largest z with z⊙x ≤ y on a chain is the max of the candidates
    fn chain_residual_oracle(prod: &Table) -> Table {
        let n = prod.size();
        Table::from_fn(n, |x, y| {
            (0..n).filter(|&z| prod.get(z, x) <= y).max().unwrap()
        })
    }

    #[test]
    fn residual_of_three_chains() {
        let order = chain_order(3);
        // ε² = 0 gives ε → 0 = ε
        let luk = Table::from_fn(3, |x, y| {
            if x == 2 {
                y
            } else if y == 2 {
                x
            } else {
                0
            }
        });
        let imp = derive_residual(&order, &luk).unwrap();
        assert_eq!(imp, chain_residual_oracle(&luk));
        assert_eq!(
            imp.rows(),
            vec![vec![2, 2, 2], vec![1, 2, 2], vec![0, 1, 2]]
        );
        // ε² = ε gives ε → 0 = 0
        let godel = Table::from_fn(3, |x, y| x.min(y));
        let imp = derive_residual(&order, &godel).unwrap();
        assert_eq!(
            imp.rows(),
            vec![vec![2, 2, 2], vec![0, 2, 2], vec![0, 1, 2]]
        );
    }

    #[test]
    fn residual_of_boolean_square_is_classical() {
        // 0 = 00, 1 = 01, 2 = 10, 3 = 11
        let order = OrderMatrix::from_fn(4, |x, y| x & y == x);
        let prod = Table::from_fn(4, |x, y| x & y);
        let imp = derive_residual(&order, &prod).unwrap();
        assert_eq!(imp, Table::from_fn(4, |x, y| (!x & 3) | y));
    }

    #[test]
    fn non_residuated_product_is_reported() {
        // on the square, an operation that is not join-preserving
        let order = OrderMatrix::from_fn(4, |x, y| x & y == x);
        let prod = Table::from_fn(4, |x, y| {
            if x == 3 {
                y
            } else if y == 3 {
                x
            } else {
                0
            }
        });
        // z⊙1 ≤ 0 holds for z ∈ {0,1,2} but 1∨2 = 3 fails, so no maximum
        assert_eq!(
            derive_residual(&order, &prod),
            Err(NotResiduated { x: 1, y: 0 })
        );
    }

    #[test]
    fn element_profiles_match_hand_computation() {
        let l3 = catalog::l3();
        let p = element_profile(&l3, 1).unwrap();
        let neg = p.negation.unwrap();
        assert_eq!(neg.nilpotence_order, Some(2));
        assert!(!neg.dense);
        assert!(!neg.unity);

        let i4 = catalog::i4();
        let p = element_profile(&i4, 2).unwrap();
        let neg = p.negation.unwrap();
        assert!(p.idempotent);
        assert!(neg.unity);
        assert!(!neg.dense);
        assert_eq!(neg.negation, 1);

        let p = element_profile(&h4(), B).unwrap();
        let neg = p.negation.unwrap();
        assert!(neg.dense);
        assert!(neg.unity);
        assert_eq!(neg.nilpotence_order, None);

        assert!(matches!(
            element_profile(&h4(), 9),
            Err(ElementError::OutOfRange { .. })
        ));
    }

    #[test]
    fn hoop_without_bottom_has_no_negation_facts() {
        let hoop = h4().hoop_reduct().hoop_reduct();
        assert_eq!(hoop.signature(), Signature::Hoop);
        assert!(validate_axioms(&hoop).is_valid());
        let p = element_profile(&hoop, A).unwrap();
        assert!(p.negation.is_none());
        assert!(p.idempotent);
    }

    #[test]
    fn coatoms_of_small_algebras() {
        assert_eq!(coatoms(&h4()), vec![A]);
        assert_eq!(coatoms(&catalog::boolean_cube(2)), vec![1, 2]);
        assert_eq!(coatoms(&catalog::trivial()), Vec::<Elem>::new());
    }

    // brute-force unity: ¬(x^k) nilpotent for k = 1..2n, nilpotence by k = 1..2n
    fn unity_oracle(a: &FiniteAlgebra, x: Elem) -> bool {
        let bot = a.bot().unwrap();
        let n = a.size();
        (1..=2 * n).all(|k| {
            let neg = a.imp(a.power(x, k), bot);
            (1..=2 * n).any(|m| a.power(neg, m) == bot)
        })
    }

    #[test]
    fn unity_reduction_agrees_with_bounded_quantifier() {
        for a in catalog::small_catalog() {
            for x in a.elements() {
                assert_eq!(
                    a.is_unity(x),
                    Some(unity_oracle(&a, x)),
                    "{} element {x}",
                    a.label()
                );
            }
        }
    }

    #[test]
    fn powers_decrease_and_stabilize() {
        for a in catalog::small_catalog() {
            for x in a.elements() {
                let (m, p) = a.stable_power(x);
                assert!(m <= a.size());
                for k in 1..=a.size() + 1 {
                    assert!(a.leq(a.power(x, k + 1), a.power(x, k)));
                    if k >= m {
                        assert_eq!(a.power(x, k), p);
                    }
                }
            }
        }
    }

    #[test]
    fn integrality_and_residual_uniqueness() {
        for a in catalog::small_catalog() {
            for x in a.elements() {
                for y in a.elements() {
                    assert!(a.leq(a.prod(x, y), a.meet(x, y)));
                }
            }
            assert_eq!(
                &derive_residual(&a.order(), a.prod_table()).unwrap(),
                a.imp_table()
            );
        }
    }

    #[test]
    fn hoop_meet_and_wajsberg_join() {
        // Gödel chains are BL, so their ⊙/→ reduct is a bounded hoop whose
        // derived meet is the chain minimum
        let hoop = catalog::godel_chain(5).hoop_reduct();
        assert!(validate_axioms(&hoop).is_valid());
        for x in hoop.elements() {
            for y in hoop.elements() {
                assert_eq!(hoop.meet(x, y), x.min(y));
            }
        }
        // I4 is not divisible: a⊙(a→b) = 0 but b⊙(b→a) = b
        let report = validate_axioms(&catalog::i4().hoop_reduct());
        assert!(report.violates(Axiom::Divisibility));
        // Łukasiewicz chains are Wajsberg: (x→y)→y recovers the join
        let l5 = catalog::lukasiewicz_chain(5).hoop_reduct();
        let back = l5.with_derived_join().unwrap();
        assert!(validate_axioms(&back).is_valid());
        assert_eq!(
            back.join_table(),
            catalog::lukasiewicz_chain(5).join_table()
        );
    }

    #[test]
    fn normalization_moves_constants() {
        let h = h4();
        // swap bottom and top
        let perm = vec![3, 1, 2, 0];
        let moved = h.relabel(&perm);
        assert!(!moved.is_canonically_placed());
        let (back, _) = moved.normalize_constants();
        assert!(back.is_canonically_placed());
        assert!(validate_axioms(&back).is_valid());
    }
}
