//! Named algebras and parameterized families.
//!
//! Chains are stored bottom-up: index `i` of a chain of size `n` stands for
//! the grid value `i/(n-1)`. Grid formulas are evaluated on the integer
//! numerators over the common denominator `n-1`, which is exact.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{AlgebraParts, Elem, FiniteAlgebra, Signature, Table};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog algebra {0:?}")]
    UnknownName(String),
    #[error("{family} needs a parameter of at least {min}, got {got}")]
    ParameterTooSmall {
        family: &'static str,
        min: usize,
        got: usize,
    },
    #[error("malformed parameter in {0:?}")]
    BadParameter(String),
}

/// One entry of `catalog list`.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub parameterized: bool,
    pub description: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "2",
        parameterized: false,
        description: "two-element boolean algebra",
    },
    CatalogEntry {
        name: "H3",
        parameterized: false,
        description: "three-element Heyting chain 0 < e < 1",
    },
    CatalogEntry {
        name: "H4",
        parameterized: false,
        description: "four-element Heyting chain 0 < b < a < 1",
    },
    CatalogEntry {
        name: "I4",
        parameterized: false,
        description: "four-element IMTL chain, a idempotent, b = -a",
    },
    CatalogEntry {
        name: "I6",
        parameterized: false,
        description: "six-element simple IMTL chain 0 < a3 < a2 < t < a1 < 1",
    },
    CatalogEntry {
        name: "L3",
        parameterized: false,
        description: "three-element Lukasiewicz chain",
    },
    CatalogEntry {
        name: "bool:k",
        parameterized: true,
        description: "boolean algebra with 2^k elements, k >= 1",
    },
    CatalogEntry {
        name: "luk:n",
        parameterized: true,
        description: "Lukasiewicz chain on {0, 1/(n-1), .., 1}",
    },
    CatalogEntry {
        name: "godel:n",
        parameterized: true,
        description: "Goedel (Heyting) chain with n elements",
    },
    CatalogEntry {
        name: "nm:n",
        parameterized: true,
        description: "nilpotent minimum chain on {0, 1/(n-1), .., 1}",
    },
    CatalogEntry {
        name: "ordwnm:n",
        parameterized: true,
        description: "simple WNM chain with n elements (ordinal algebra)",
    },
];

/// The catalog, optionally with some names replaced by doctored tables.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    overrides: BTreeMap<String, FiniteAlgebra>,
}

impl Catalog {
    pub fn standard() -> Self {
        Self::default()
    }

    pub fn with_override(mut self, name: &str, algebra: FiniteAlgebra) -> Self {
        self.overrides.insert(name.to_string(), algebra);
        self
    }

    pub fn get(&self, name: &str) -> Result<FiniteAlgebra, CatalogError> {
        if let Some(a) = self.overrides.get(name) {
            return Ok(a.clone());
        }
        catalog_get(name)
    }
}

/// Resolves a catalog name such as `"H4"` or `"nm:6"`.
pub fn catalog_get(name: &str) -> Result<FiniteAlgebra, CatalogError> {
    match name {
        "2" => return Ok(two()),
        "H3" => return Ok(h3()),
        "H4" => return Ok(h4()),
        "I4" => return Ok(i4()),
        "I6" => return Ok(i6()),
        "L3" => return Ok(l3()),
        _ => {}
    }
    let (family, param) = name
        .split_once(':')
        .ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    let n: usize = param
        .parse()
        .map_err(|_| CatalogError::BadParameter(name.to_string()))?;
    let need = |family: &'static str, min: usize| {
        if n < min {
            Err(CatalogError::ParameterTooSmall {
                family,
                min,
                got: n,
            })
        } else {
            Ok(())
        }
    };
    match family {
        "bool" => need("bool", 1).map(|_| boolean_cube(n)),
        "luk" => need("luk", 2).map(|_| lukasiewicz_chain(n)),
        "godel" => need("godel", 2).map(|_| godel_chain(n)),
        "nm" => need("nm", 2).map(|_| nm_chain(n)),
        "ordwnm" => need("ordwnm", 2).map(|_| ordinal_wnm(n)),
        _ => Err(CatalogError::UnknownName(name.to_string())),
    }
}

fn named(a: FiniteAlgebra, name: impl Into<String>) -> FiniteAlgebra {
    a.with_name(name)
}

/// A chain `0 < 1 < .. < n-1` with the given `⊙` and `→`.
pub fn chain(
    n: usize,
    prod: impl FnMut(Elem, Elem) -> Elem,
    imp: impl FnMut(Elem, Elem) -> Elem,
) -> FiniteAlgebra {
    FiniteAlgebra::residuated_lattice(
        Table::from_fn(n, |x, y| x.min(y)),
        Table::from_fn(n, |x, y| x.max(y)),
        Table::from_fn(n, prod),
        Table::from_fn(n, imp),
    )
    .expect("chain tables are well-shaped")
}

fn from_rows(prod: &[[Elem; 6]], imp: &[[Elem; 6]], n: usize) -> FiniteAlgebra {
    let rows = |t: &[[Elem; 6]]| t.iter().map(|r| r[..n].to_vec()).collect::<Vec<_>>();
    let top = n - 1;
    FiniteAlgebra::new(AlgebraParts {
        name: None,
        signature: Signature::ResiduatedLattice,
        meet: Some(Table::from_fn(n, |x, y| x.min(y))),
        join: Some(Table::from_fn(n, |x, y| x.max(y))),
        prod: Table::from_rows(crate::algebra::Op::Prod, n, &rows(prod)).expect("printed table"),
        imp: Table::from_rows(crate::algebra::Op::Imp, n, &rows(imp)).expect("printed table"),
        bot: Some(0),
        top,
    })
    .expect("printed tables are well-shaped")
}

/// The one-element algebra.
pub fn trivial() -> FiniteAlgebra {
    named(chain(1, |_, _| 0, |_, _| 0), "1")
}

pub fn two() -> FiniteAlgebra {
    named(godel_chain(2), "2")
}

pub fn h3() -> FiniteAlgebra {
    named(godel_chain(3), "H3")
}

/// `0 < b < a < 1` at indices 0..3, `⊙ = ∧`, `x → y = 1` if `x ≤ y` else `y`.
pub fn h4() -> FiniteAlgebra {
    named(godel_chain(4), "H4")
}

/// `0 < b < a < 1` at indices 0..3 with `a² = a`, `a ⊙ b = b² = 0`, `¬a = b`.
pub fn i4() -> FiniteAlgebra {
    const PROD: [[Elem; 6]; 4] = [
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 2, 2, 0, 0],
        [0, 1, 2, 3, 0, 0],
    ];
    const IMP: [[Elem; 6]; 4] = [
        [3, 3, 3, 3, 0, 0],
        [2, 3, 3, 3, 0, 0],
        [1, 1, 3, 3, 0, 0],
        [0, 1, 2, 3, 0, 0],
    ];
    named(from_rows(&PROD, &IMP, 4), "I4")
}

/// `0 < a3 < a2 < t < a1 < 1` at indices 0..5.
pub fn i6() -> FiniteAlgebra {
    const PROD: [[Elem; 6]; 6] = [
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 1, 2],
        [0, 0, 0, 1, 1, 3],
        [0, 0, 1, 1, 2, 4],
        [0, 1, 2, 3, 4, 5],
    ];
    const IMP: [[Elem; 6]; 6] = [
        [5, 5, 5, 5, 5, 5],
        [4, 5, 5, 5, 5, 5],
        [3, 4, 5, 5, 5, 5],
        [2, 4, 4, 5, 5, 5],
        [1, 3, 4, 4, 5, 5],
        [0, 1, 2, 3, 4, 5],
    ];
    named(from_rows(&PROD, &IMP, 6), "I6")
}

pub fn l3() -> FiniteAlgebra {
    named(lukasiewicz_chain(3), "L3")
}

/// The boolean algebra of subsets of a `k`-element set, elements as bitmasks.
pub fn boolean_cube(k: usize) -> FiniteAlgebra {
    let n = 1usize << k;
    let mask = n - 1;
    let a = FiniteAlgebra::residuated_lattice(
        Table::from_fn(n, |x, y| x & y),
        Table::from_fn(n, |x, y| x | y),
        Table::from_fn(n, |x, y| x & y),
        Table::from_fn(n, |x, y| (!x & mask) | y),
    )
    .expect("boolean tables are well-shaped");
    named(a, format!("bool:{k}"))
}

/// `x ⊙ y = max(0, x + y - 1)`, `x → y = min(1, 1 - x + y)` on the grid.
pub fn lukasiewicz_chain(n: usize) -> FiniteAlgebra {
    let d = n - 1;
    let a = chain(
        n,
        |x, y| (x + y).saturating_sub(d),
        |x, y| (d + y).saturating_sub(x).min(d),
    );
    named(a, format!("luk:{n}"))
}

/// `⊙ = ∧`, `x → y = 1` if `x ≤ y` else `y`.
pub fn godel_chain(n: usize) -> FiniteAlgebra {
    let top = n - 1;
    let a = chain(n, |x, y| x.min(y), |x, y| if x <= y { top } else { y });
    named(a, format!("godel:{n}"))
}

/// `x ⊙ y = x ∧ y` if `1 < x + y` else 0; `x → y = 1` if `x ≤ y` else
/// `max(y, 1 - x)`, on the grid.
pub fn nm_chain(n: usize) -> FiniteAlgebra {
    let d = n - 1;
    let a = chain(
        n,
        |x, y| if x + y > d { x.min(y) } else { 0 },
        |x, y| if x <= y { d } else { y.max(d - x) },
    );
    named(a, format!("nm:{n}"))
}

/// The simple WNM chain of size `n`: everything below the top multiplies to
/// 0 and `x → y` is the coatom whenever `y < x < 1`.
pub fn ordinal_wnm(n: usize) -> FiniteAlgebra {
    let top = n - 1;
    let coatom = n.saturating_sub(2);
    let a = chain(
        n,
        |x, y| {
            if x == top {
                y
            } else if y == top {
                x
            } else {
                0
            }
        },
        |x, y| {
            if x <= y {
                top
            } else if x == top {
                y
            } else {
                coatom
            }
        },
    );
    named(a, format!("ordwnm:{n}"))
}

/// Names of every catalog algebra the acceptance battery requires to
/// validate.
pub fn battery_names() -> Vec<String> {
    let mut out: Vec<String> = ["2", "H3", "H4", "I4", "I6", "L3"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    out.extend((1..=3).map(|k| format!("bool:{k}")));
    for family in ["luk", "godel", "nm"] {
        out.extend((2..=6).map(|n| format!("{family}:{n}")));
    }
    out.extend((2..=8).map(|n| format!("ordwnm:{n}")));
    out
}

pub fn full_battery() -> Vec<FiniteAlgebra> {
    battery_names()
        .iter()
        .map(|n| catalog_get(n).expect("battery names resolve"))
        .collect()
}

/// Catalog algebras of size at most 6 (used by the cheaper batteries).
pub fn small_catalog() -> Vec<FiniteAlgebra> {
    full_battery()
        .into_iter()
        .filter(|a| a.size() <= 6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_axioms;

    #[test]
    fn every_entry_validates() {
        for a in full_battery() {
            let report = validate_axioms(&a);
            assert!(report.is_valid(), "{}: {report}", a.label());
        }
        assert!(validate_axioms(&trivial()).is_valid());
    }

    #[test]
    fn names_resolve() {
        assert_eq!(catalog_get("nm:5").unwrap().size(), 5);
        assert_eq!(catalog_get("bool:3").unwrap().size(), 8);
        assert_eq!(catalog_get("I6").unwrap().name(), Some("I6"));
        assert!(matches!(
            catalog_get("nope"),
            Err(CatalogError::UnknownName(_))
        ));
        assert!(matches!(
            catalog_get("luk:1"),
            Err(CatalogError::ParameterTooSmall { .. })
        ));
        assert!(matches!(
            catalog_get("luk:x"),
            Err(CatalogError::BadParameter(_))
        ));
    }

    #[test]
    fn i6_powers_match_the_printed_table() {
        let a = i6();
        // t³ = 0 and a1⁴ = 0
        assert_eq!(a.power(3, 3), 0);
        assert_eq!(a.power(3, 2), 1);
        assert_eq!(a.power(4, 4), 0);
        assert_eq!(a.power(4, 3), 1);
        // ¬ is the order-reversing involution
        for x in a.elements() {
            assert_eq!(a.neg(x), Some(5 - x));
        }
    }

    #[test]
    fn grid_families_agree_at_the_two_element_chain() {
        let two = two();
        for a in [
            lukasiewicz_chain(2),
            nm_chain(2),
            godel_chain(2),
            ordinal_wnm(2),
        ] {
            assert_eq!(a.prod_table(), two.prod_table());
            assert_eq!(a.imp_table(), two.imp_table());
        }
    }

    #[test]
    fn overrides_replace_only_their_name() {
        let cat = Catalog::standard().with_override("I4", two());
        assert_eq!(cat.get("I4").unwrap().size(), 2);
        assert_eq!(cat.get("nm:4").unwrap().size(), 4);
    }
}
