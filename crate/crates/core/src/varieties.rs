//! Named equations and the variety memberships they induce.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Elem, FiniteAlgebra, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EquationId {
    /// `(x → y) ∨ (y → x) = 1`
    Prelin,
    /// `x ∧ ¬x = 0`
    S,
    /// `¬(x ⊙ y) ∨ ((x ∧ y) → (x ⊙ y)) = 1`
    W,
    /// `(¬¬z ⊙ ((x ⊙ z) → (y ⊙ z))) → (x → y) = 1`
    Pi,
    /// `x ⊙ (x → y) = x ∧ y`
    B,
    /// `¬¬x = x`
    Inv,
    /// `x ⊙ y = x ∧ y`
    Godel,
    /// `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`
    Dist,
    /// `(x → y) → y = (y → x) → x`
    T,
}

impl EquationId {
    pub const ALL: [EquationId; 9] = [
        EquationId::Prelin,
        EquationId::S,
        EquationId::W,
        EquationId::Pi,
        EquationId::B,
        EquationId::Inv,
        EquationId::Godel,
        EquationId::Dist,
        EquationId::T,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EquationId::Prelin => "PRELIN",
            EquationId::S => "S",
            EquationId::W => "W",
            EquationId::Pi => "PI",
            EquationId::B => "B",
            EquationId::Inv => "INV",
            EquationId::Godel => "GODEL",
            EquationId::Dist => "DIST",
            EquationId::T => "T",
        }
    }

    fn arity(self) -> usize {
        match self {
            EquationId::S | EquationId::Inv => 1,
            EquationId::Pi | EquationId::Dist => 3,
            _ => 2,
        }
    }

    fn needs_join(self) -> bool {
        matches!(self, EquationId::Prelin | EquationId::W | EquationId::Dist)
    }

    fn needs_bot(self) -> bool {
        matches!(
            self,
            EquationId::S | EquationId::W | EquationId::Pi | EquationId::Inv
        )
    }
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Variety {
    Rl,
    Drl,
    Gm,
    Dgm,
    Mtl,
    Wnm,
    Imtl,
    Nm,
    Smtl,
    #[serde(rename = "PiSMTL")]
    PiSmtl,
    Bl,
    Mv,
    Prod,
    Hl,
    Srl,
    Heyting,
    Ba,
    Hoop,
    WajsbergHoop,
    BoundedHoop,
}

impl Variety {
    pub const ALL: [Variety; 20] = [
        Variety::Rl,
        Variety::Drl,
        Variety::Gm,
        Variety::Dgm,
        Variety::Mtl,
        Variety::Wnm,
        Variety::Imtl,
        Variety::Nm,
        Variety::Smtl,
        Variety::PiSmtl,
        Variety::Bl,
        Variety::Mv,
        Variety::Prod,
        Variety::Hl,
        Variety::Srl,
        Variety::Heyting,
        Variety::Ba,
        Variety::Hoop,
        Variety::WajsbergHoop,
        Variety::BoundedHoop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variety::Rl => "RL",
            Variety::Drl => "DRL",
            Variety::Gm => "GM",
            Variety::Dgm => "DGM",
            Variety::Mtl => "MTL",
            Variety::Wnm => "WNM",
            Variety::Imtl => "IMTL",
            Variety::Nm => "NM",
            Variety::Smtl => "SMTL",
            Variety::PiSmtl => "PiSMTL",
            Variety::Bl => "BL",
            Variety::Mv => "MV",
            Variety::Prod => "PROD",
            Variety::Hl => "HL",
            Variety::Srl => "SRL",
            Variety::Heyting => "HEYTING",
            Variety::Ba => "BA",
            Variety::Hoop => "HOOP",
            Variety::WajsbergHoop => "WAJSBERG_HOOP",
            Variety::BoundedHoop => "BOUNDED_HOOP",
        }
    }

    /// The variety this one refines, and the equation it adds. `None` for the
    /// base classes decided by signature.
    pub fn definition(self) -> Option<(Variety, EquationId)> {
        use EquationId as E;
        use Variety as V;
        Some(match self {
            V::Rl | V::Hoop | V::BoundedHoop => return None,
            V::Drl => (V::Rl, E::Dist),
            V::Gm => (V::Rl, E::Inv),
            V::Dgm => (V::Gm, E::Dist),
            V::Mtl => (V::Rl, E::Prelin),
            V::Wnm => (V::Mtl, E::W),
            V::Imtl => (V::Mtl, E::Inv),
            V::Nm => (V::Wnm, E::Inv),
            V::Smtl => (V::Mtl, E::S),
            V::PiSmtl => (V::Smtl, E::Pi),
            V::Bl => (V::Mtl, E::B),
            V::Mv => (V::Bl, E::Inv),
            V::Prod => (V::PiSmtl, E::B),
            V::Hl => (V::Bl, E::Godel),
            V::Srl => (V::Rl, E::S),
            V::Heyting => (V::Rl, E::Godel),
            V::Ba => (V::Heyting, E::Inv),
            V::WajsbergHoop => (V::Hoop, E::T),
        })
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown variety {0:?}")]
pub struct UnknownVariety(pub String);

impl FromStr for Variety {
    type Err = UnknownVariety;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variety::ALL
            .iter()
            .copied()
            .find(|v| v.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownVariety(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("equation {equation} needs a {needs}, which signature {signature} lacks")]
pub struct Inapplicable {
    pub equation: EquationId,
    pub signature: Signature,
    pub needs: &'static str,
}

/// Result of checking one identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationCheck {
    pub holds: bool,
    /// Lexicographically least violating tuple, when `holds` is false.
    pub witness: Option<Vec<Elem>>,
}

fn lhs_rhs(a: &FiniteAlgebra, eq: EquationId, v: &[Elem]) -> (Elem, Elem) {
    let top = a.top();
    let bot = a.bot().unwrap_or(0);
    let join = |x, y| a.join(x, y).expect("join checked by applicability");
    let neg = |x| a.imp(x, bot);
    match eq {
        EquationId::Prelin => (join(a.imp(v[0], v[1]), a.imp(v[1], v[0])), top),
        EquationId::S => (a.meet(v[0], neg(v[0])), bot),
        EquationId::W => {
            let (x, y) = (v[0], v[1]);
            let p = a.prod(x, y);
            (join(neg(p), a.imp(a.meet(x, y), p)), top)
        }
        EquationId::Pi => {
            let (x, y, z) = (v[0], v[1], v[2]);
            let lhs = a.prod(neg(neg(z)), a.imp(a.prod(x, z), a.prod(y, z)));
            (a.imp(lhs, a.imp(x, y)), top)
        }
        EquationId::B => (a.prod(v[0], a.imp(v[0], v[1])), a.meet(v[0], v[1])),
        EquationId::Inv => (neg(neg(v[0])), v[0]),
        EquationId::Godel => (a.prod(v[0], v[1]), a.meet(v[0], v[1])),
        EquationId::Dist => {
            let (x, y, z) = (v[0], v[1], v[2]);
            (a.meet(x, join(y, z)), join(a.meet(x, y), a.meet(x, z)))
        }
        EquationId::T => {
            let (x, y) = (v[0], v[1]);
            (a.imp(a.imp(x, y), y), a.imp(a.imp(y, x), x))
        }
    }
}

/// Checks an identity over every tuple, scanning tuples in lexicographic
/// order so that the reported witness is the least one.
pub fn holds_equation(a: &FiniteAlgebra, eq: EquationId) -> Result<EquationCheck, Inapplicable> {
    let sig = a.signature();
    if eq.needs_join() && !sig.has_join() {
        return Err(Inapplicable {
            equation: eq,
            signature: sig,
            needs: "join",
        });
    }
    if eq.needs_bot() && !sig.has_bot() {
        return Err(Inapplicable {
            equation: eq,
            signature: sig,
            needs: "bottom",
        });
    }
    let n = a.size();
    let k = eq.arity();
    let mut tuple = vec![0; k];
    loop {
        let (l, r) = lhs_rhs(a, eq, &tuple);
        if l != r {
            return Ok(EquationCheck {
                holds: false,
                witness: Some(tuple),
            });
        }
        // odometer, last position fastest
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(EquationCheck {
                    holds: true,
                    witness: None,
                });
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < n {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// Which equations hold and which varieties the algebra belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarietyProfile {
    pub equation_flags: BTreeMap<EquationId, bool>,
    pub memberships: BTreeSet<Variety>,
    pub linearly_ordered: bool,
}

impl VarietyProfile {
    pub fn is(&self, v: Variety) -> bool {
        self.memberships.contains(&v)
    }

    pub fn flag(&self, eq: EquationId) -> Option<bool> {
        self.equation_flags.get(&eq).copied()
    }
}

pub fn is_linearly_ordered(a: &FiniteAlgebra) -> bool {
    a.elements()
        .all(|x| a.elements().all(|y| a.leq(x, y) || a.leq(y, x)))
}

/// Evaluates every applicable equation and closes the flags under the
/// variety definitions. Equations that do not apply to the signature are
/// left out of `equation_flags`.
pub fn classify(a: &FiniteAlgebra) -> VarietyProfile {
    let equation_flags: BTreeMap<EquationId, bool> = EquationId::ALL
        .iter()
        .filter_map(|&eq| holds_equation(a, eq).ok().map(|c| (eq, c.holds)))
        .collect();
    let memberships = memberships_from_flags(a.signature(), &equation_flags);
    VarietyProfile {
        equation_flags,
        memberships,
        linearly_ordered: is_linearly_ordered(a),
    }
}

/// Closure of equation flags under the variety definitions.
pub fn memberships_from_flags(
    sig: Signature,
    flags: &BTreeMap<EquationId, bool>,
) -> BTreeSet<Variety> {
    let mut out = BTreeSet::new();
    match sig {
        Signature::ResiduatedLattice => {
            out.insert(Variety::Rl);
        }
        Signature::Hoop => {
            out.insert(Variety::Hoop);
        }
        Signature::BoundedHoop => {
            out.insert(Variety::Hoop);
            out.insert(Variety::BoundedHoop);
        }
    }
    // definitions are listed parent-before-child in Variety::ALL
    for v in Variety::ALL {
        if let Some((parent, eq)) = v.definition() {
            if out.contains(&parent) && flags.get(&eq).copied().unwrap_or(false) {
                out.insert(v);
            }
        }
    }
    out
}
