//! Axioms that involve both operations of a [`TwoOpModel`].

use super::{check_law, AxiomError, AxiomResult, Law, Witness};
use crate::model::{CellSet, HyperTable, TwoOpModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingAxiom {
    DistributiveEqual,
    DistributiveInclusion,
    SignRule,
    AbsorbingZero,
    AdditiveAbelianGroup,
    MultiplicativeGroup,
    MultiplicativeSemigroup,
    MulNondegenerateAssociative,
    MulSemihypergroup,
}

impl RingAxiom {
    pub const ALL: [RingAxiom; 9] = [
        RingAxiom::DistributiveEqual,
        RingAxiom::DistributiveInclusion,
        RingAxiom::SignRule,
        RingAxiom::AbsorbingZero,
        RingAxiom::AdditiveAbelianGroup,
        RingAxiom::MultiplicativeGroup,
        RingAxiom::MultiplicativeSemigroup,
        RingAxiom::MulNondegenerateAssociative,
        RingAxiom::MulSemihypergroup,
    ];

    pub fn id(self) -> &'static str {
        match self {
            RingAxiom::DistributiveEqual => "distributive-equal",
            RingAxiom::DistributiveInclusion => "distributive-inclusion",
            RingAxiom::SignRule => "sign-rule",
            RingAxiom::AbsorbingZero => "absorbing-zero",
            RingAxiom::AdditiveAbelianGroup => "additive-abelian-group",
            RingAxiom::MultiplicativeGroup => "multiplicative-group-on-H*",
            RingAxiom::MultiplicativeSemigroup => "multiplicative-semigroup-on-H*",
            RingAxiom::MulNondegenerateAssociative => "mul-nondegenerate-associative",
            RingAxiom::MulSemihypergroup => "mul-semihypergroup",
        }
    }
}

impl std::str::FromStr for RingAxiom {
    type Err = AxiomError;

    fn from_str(s: &str) -> Result<Self, AxiomError> {
        RingAxiom::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| AxiomError::Unknown(s.to_string()))
    }
}

impl std::fmt::Display for RingAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

pub fn check_ring_axioms(m: &TwoOpModel, axiom: RingAxiom) -> Result<AxiomResult, AxiomError> {
    Ok(match axiom {
        RingAxiom::DistributiveEqual => distributive(m, axiom.id(), |l, r| l == r),
        RingAxiom::DistributiveInclusion => distributive(m, axiom.id(), |l, r| l.is_subset(r)),
        RingAxiom::SignRule => sign_rule(m)?,
        RingAxiom::AbsorbingZero => absorbing_zero(m),
        RingAxiom::AdditiveAbelianGroup => abelian_group(m.add(), m.zero()),
        RingAxiom::MultiplicativeGroup => nonzero_group(m),
        RingAxiom::MultiplicativeSemigroup => nonzero_semigroup(m),
        RingAxiom::MulNondegenerateAssociative => {
            let d = check_law(m.mul(), Law::Degenerate);
            if d.holds {
                AxiomResult::fail(
                    Witness::new(axiom.id(), &[0, 0], CellSet::EMPTY, CellSet::EMPTY)
                        .with_clause("degenerate"),
                )
            } else {
                relabel(
                    check_law(m.mul(), Law::Associative),
                    axiom.id(),
                    "associative",
                )
            }
        }
        RingAxiom::MulSemihypergroup => relabel(
            check_law(m.mul(), Law::Associative),
            axiom.id(),
            "associative",
        )
        .and_then(|| {
            relabel(
                check_law(m.mul(), Law::CellwiseNonempty),
                axiom.id(),
                "nonempty",
            )
        }),
    })
}

fn relabel(r: AxiomResult, id: &str, clause: &str) -> AxiomResult {
    match r.witness {
        None => r,
        Some(mut w) => {
            w.axiom = id.to_string();
            w.clause = Some(clause.to_string());
            AxiomResult::fail(w)
        }
    }
}

/// `a(b + c)` against `ab + ac`, then `(b + c)a` against `ba + ca`, per
/// triple `(a, b, c)` in row-major order.
fn distributive(m: &TwoOpModel, id: &str, ok: impl Fn(CellSet, CellSet) -> bool) -> AxiomResult {
    let (add, mul) = (m.add(), m.mul());
    let n = m.order();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = mul.product_left(a, add.get(b, c));
                let rhs = add.product(mul.get(a, b), mul.get(a, c));
                if !ok(lhs, rhs) {
                    return AxiomResult::fail(
                        Witness::new(id, &[a, b, c], lhs, rhs).with_clause("left"),
                    );
                }
                let lhs = mul.product_right(add.get(b, c), a);
                let rhs = add.product(mul.get(b, a), mul.get(c, a));
                if !ok(lhs, rhs) {
                    return AxiomResult::fail(
                        Witness::new(id, &[a, b, c], lhs, rhs).with_clause("right"),
                    );
                }
            }
        }
    }
    AxiomResult::HOLDS
}

/// Group inverses of a single-valued table with identity `zero`.
fn group_inverses(t: &HyperTable, zero: usize) -> Option<Vec<usize>> {
    (0..t.order())
        .map(|x| {
            (0..t.order()).find(|&y| t.value(x, y) == Some(zero) && t.value(y, x) == Some(zero))
        })
        .collect()
}

/// `a(-b) = (-a)b = -(ab)`, negation elementwise through the additive
/// group inverse. Requires the additive table to be an abelian group.
fn sign_rule(m: &TwoOpModel) -> Result<AxiomResult, AxiomError> {
    let id = RingAxiom::SignRule.id();
    let group = abelian_group(m.add(), m.zero());
    if !group.holds {
        return Err(AxiomError::Precondition {
            axiom: id.into(),
            reason: "the additive table is not an abelian group with identity zero".into(),
        });
    }
    let neg = group_inverses(m.add(), m.zero()).expect("group has inverses");
    let mul = m.mul();
    let n = m.order();
    for a in 0..n {
        for b in 0..n {
            let target = mul.get(a, b).map(|x| neg[x]);
            let l = mul.get(a, neg[b]);
            if l != target {
                return Ok(AxiomResult::fail(
                    Witness::new(id, &[a, b], l, target).with_clause("left"),
                ));
            }
            let r = mul.get(neg[a], b);
            if r != target {
                return Ok(AxiomResult::fail(
                    Witness::new(id, &[a, b], r, target).with_clause("right"),
                ));
            }
        }
    }
    Ok(AxiomResult::HOLDS)
}

fn absorbing_zero(m: &TwoOpModel) -> AxiomResult {
    let zero = m.zero();
    let z = CellSet::singleton(zero);
    for x in 0..m.order() {
        if m.mul().get(zero, x) != z {
            return AxiomResult::fail(
                Witness::new("absorbing-zero", &[x], m.mul().get(zero, x), z).with_clause("left"),
            );
        }
        if m.mul().get(x, zero) != z {
            return AxiomResult::fail(
                Witness::new("absorbing-zero", &[x], m.mul().get(x, zero), z).with_clause("right"),
            );
        }
    }
    AxiomResult::HOLDS
}

/// Single-valued, associative, commutative, `zero` an identity, inverses.
pub(crate) fn abelian_group(t: &HyperTable, zero: usize) -> AxiomResult {
    let id = RingAxiom::AdditiveAbelianGroup.id();
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            if t.get(x, y).len() != 1 {
                return AxiomResult::fail(
                    Witness::new(id, &[x, y], t.get(x, y), CellSet::EMPTY)
                        .with_clause("single-valued"),
                );
            }
        }
    }
    for x in 0..n {
        let me = CellSet::singleton(x);
        if t.get(zero, x) != me || t.get(x, zero) != me {
            return AxiomResult::fail(
                Witness::new(id, &[x], t.get(zero, x), t.get(x, zero)).with_clause("identity"),
            );
        }
    }
    relabel(check_law(t, Law::Associative), id, "associative")
        .and_then(|| relabel(check_law(t, Law::Commutative), id, "commutative"))
        .and_then(|| {
            let z = CellSet::singleton(zero);
            (0..n)
                .find(|&x| !(0..n).any(|y| t.get(x, y) == z))
                .map(|x| {
                    AxiomResult::fail(
                        Witness::new(id, &[x], CellSet::EMPTY, z).with_clause("inverse"),
                    )
                })
                .unwrap_or(AxiomResult::HOLDS)
        })
}

/// Closure and associativity of the restriction of `mul` to `H* = H \ {0}`.
fn nonzero_semigroup_with(m: &TwoOpModel, id: &str) -> AxiomResult {
    let (mul, zero, n) = (m.mul(), m.zero(), m.order());
    let nonzero = CellSet::full(n).difference(CellSet::singleton(zero));
    if nonzero.is_empty() {
        return AxiomResult::fail(
            Witness::new(id, &[zero], nonzero, CellSet::EMPTY).with_clause("empty"),
        );
    }
    for a in nonzero {
        for b in nonzero {
            let c = mul.get(a, b);
            if c.len() != 1 || !c.is_subset(nonzero) {
                return AxiomResult::fail(
                    Witness::new(id, &[a, b], c, nonzero).with_clause("closure"),
                );
            }
        }
    }
    for a in nonzero {
        for b in nonzero {
            for c in nonzero {
                let (l, r) = (mul.left_assoc(a, b, c), mul.right_assoc(a, b, c));
                if l != r {
                    return AxiomResult::fail(
                        Witness::new(id, &[a, b, c], l, r).with_clause("associative"),
                    );
                }
            }
        }
    }
    AxiomResult::HOLDS
}

fn nonzero_semigroup(m: &TwoOpModel) -> AxiomResult {
    nonzero_semigroup_with(m, RingAxiom::MultiplicativeSemigroup.id())
}

/// The multiplicative identity of `H*`, if it has one.
pub(crate) fn nonzero_identity(m: &TwoOpModel) -> Option<usize> {
    let (mul, zero, n) = (m.mul(), m.zero(), m.order());
    let nonzero = || (0..n).filter(move |&x| x != zero);
    nonzero().find(|&e| nonzero().all(|a| mul.value(e, a) == Some(a) && mul.value(a, e) == Some(a)))
}

/// `(H*, .)` is a group; when the model names a one, it must be the identity.
fn nonzero_group(m: &TwoOpModel) -> AxiomResult {
    let id = RingAxiom::MultiplicativeGroup.id();
    let sg = nonzero_semigroup_with(m, id);
    if !sg.holds {
        return sg;
    }
    let (mul, zero, n) = (m.mul(), m.zero(), m.order());
    let Some(e) = nonzero_identity(m) else {
        return AxiomResult::fail(
            Witness::new(id, &[zero], CellSet::EMPTY, CellSet::EMPTY).with_clause("identity"),
        );
    };
    if let Some(one) = m.one() {
        if one != e {
            return AxiomResult::fail(
                Witness::new(id, &[one], CellSet::singleton(one), CellSet::singleton(e))
                    .with_clause("one"),
            );
        }
    }
    for a in (0..n).filter(|&x| x != zero) {
        if !(0..n).any(|b| b != zero && mul.value(a, b) == Some(e) && mul.value(b, a) == Some(e)) {
            return AxiomResult::fail(
                Witness::new(id, &[a], CellSet::EMPTY, CellSet::singleton(e))
                    .with_clause("inverse"),
            );
        }
    }
    AxiomResult::HOLDS
}
