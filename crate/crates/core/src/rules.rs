//! Three-valued forward chaining over facts about a group or space, with the
//! implications between formality, (quasi-)Kähler and related properties
//! encoded as cited rules.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

macro_rules! facts {
    ($($variant:ident => $id:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Fact { $($variant),* }

        impl Fact {
            pub const ALL: &'static [Fact] = &[$(Fact::$variant),*];

            pub fn id(self) -> &'static str {
                match self { $(Fact::$variant => $id),* }
            }

            pub fn from_id(s: &str) -> Option<Self> {
                match s { $($id => Some(Fact::$variant),)* _ => None }
            }
        }
    };
}

facts! {
    B1Le1 => "b1_le_1",
    B1Even => "b1_even",
    OneFormal => "one_formal",
    Formal => "formal",
    Free => "free",
    KahlerGroup => "kahler_group",
    QuasiKahlerGroup => "quasi_kahler_group",
    CommutatorRelators => "commutator_relators",
    CupZero => "cup_zero",
    ClosedOrientable3Mfld => "closed_orientable_3mfld",
    FibersOverCircle => "fibers_over_circle",
    JordanBlockGe2 => "jordan_block_ge_2",
    ResonanceNonlinear => "resonance_nonlinear",
    PositionObstructionFails => "position_obstruction_fails",
    AlexanderMultiVariable => "alexander_multi_variable",
    B1Ne2 => "b1_ne_2",
    ProductOfOneFormal => "product_of_one_formal",
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Truth::True => Some(true),
            Truth::False => Some(false),
            Truth::Unknown => None,
        }
    }
}

impl From<Option<bool>> for Truth {
    fn from(b: Option<bool>) -> Self {
        match b {
            Some(true) => Truth::True,
            Some(false) => Truth::False,
            None => Truth::Unknown,
        }
    }
}

/// A fact with a truth value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub fact: Fact,
    pub value: bool,
}

impl Literal {
    pub const fn is(fact: Fact) -> Self {
        Self { fact, value: true }
    }

    pub const fn not(fact: Fact) -> Self {
        Self { fact, value: false }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value {
            write!(f, "{}", self.fact)
        } else {
            write!(f, "¬{}", self.fact)
        }
    }
}

/// Known facts; absent facts are unknown.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactSet {
    values: BTreeMap<Fact, bool>,
}

impl FactSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fails when `lits` assigns both values to one fact.
    pub fn from_literals(lits: impl IntoIterator<Item = Literal>) -> Result<Self> {
        let mut s = Self::new();
        for l in lits {
            s.set(l.fact, l.value)?;
        }
        Ok(s)
    }

    /// Setting a fact to the value it already has is a no-op.
    pub fn set(&mut self, fact: Fact, value: bool) -> Result<()> {
        match self.values.insert(fact, value) {
            Some(old) if old != value => {
                self.values.insert(fact, old);
                Err(Error::InconsistentFacts(alloc::format!("{} is given as both true and false", fact)))
            }
            _ => Ok(()),
        }
    }

    pub fn get(&self, fact: Fact) -> Truth {
        self.values.get(&fact).copied().into()
    }

    pub fn holds(&self, lit: Literal) -> bool {
        self.values.get(&lit.fact) == Some(&lit.value)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.values.iter().map(|(&fact, &value)| Literal { fact, value })
    }

    pub fn merge(&mut self, other: &FactSet) -> Result<()> {
        for l in other.literals() {
            self.set(l.fact, l.value)?;
        }
        Ok(())
    }

    /// Definitional consistency: `b1 ≤ 1` excludes `b1 = 2`, and Kähler
    /// groups are quasi-Kähler.
    pub fn check_consistency(&self) -> Result<()> {
        if self.holds(Literal::is(Fact::B1Le1)) && self.holds(Literal::not(Fact::B1Ne2)) {
            return Err(Error::InconsistentFacts("b1_le_1 is true but b1_ne_2 is false".into()));
        }
        if self.holds(Literal::is(Fact::KahlerGroup)) && self.holds(Literal::not(Fact::QuasiKahlerGroup)) {
            return Err(Error::InconsistentFacts("kahler_group is true but quasi_kahler_group is false".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleConclusion {
    Derive(Literal),
    /// The premises cannot hold together.
    Contradiction,
}

/// An implication between facts, with the result it encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rule {
    pub id: &'static str,
    pub premises: &'static [Literal],
    pub conclusion: RuleConclusion,
    /// Short name of the underlying result.
    pub source: &'static str,
    /// The result, stated in full.
    pub statement: &'static str,
}

use Fact::*;

pub const RULES: &[Rule] = &[
    Rule {
        id: "R1",
        premises: &[Literal::is(B1Le1)],
        conclusion: RuleConclusion::Derive(Literal::is(OneFormal)),
        source: "small first Betti number",
        statement: "a finitely generated group with b1 ≤ 1 is 1-formal",
    },
    Rule {
        id: "R2",
        premises: &[Literal::is(KahlerGroup)],
        conclusion: RuleConclusion::Derive(Literal::is(OneFormal)),
        source: "formality of Kähler manifolds",
        statement: "compact Kähler manifolds are formal, and 1-formality of a space depends only on its fundamental group, so Kähler groups are 1-formal",
    },
    Rule {
        id: "R3",
        premises: &[Literal::is(CommutatorRelators), Literal::is(OneFormal), Literal::is(CupZero)],
        conclusion: RuleConclusion::Derive(Literal::is(Free)),
        source: "commutator-relators groups",
        statement: "a 1-formal group with a commutator-relators presentation and vanishing cup product on H¹ is free",
    },
    Rule {
        id: "R4",
        premises: &[Literal::is(CommutatorRelators), Literal::is(CupZero), Literal::not(Free)],
        conclusion: RuleConclusion::Derive(Literal::not(OneFormal)),
        source: "commutator-relators groups",
        statement: "a non-free group with a commutator-relators presentation and vanishing cup product on H¹ is not 1-formal",
    },
    Rule {
        id: "R5",
        premises: &[Literal::is(OneFormal), Literal::is(ResonanceNonlinear)],
        conclusion: RuleConclusion::Contradiction,
        source: "linearity of resonance",
        statement: "for a 1-formal group every irreducible component of every resonance variety R_d is a rational linear subspace",
    },
    Rule {
        id: "R6",
        premises: &[Literal::is(QuasiKahlerGroup), Literal::is(OneFormal), Literal::is(PositionObstructionFails)],
        conclusion: RuleConclusion::Contradiction,
        source: "position of resonance components",
        statement: "for a 1-formal quasi-Kähler group each positive-dimensional component of R_1 is p-isotropic of dimension at least 2p + 2 for some p ∈ {0, 1}",
    },
    Rule {
        id: "R7",
        premises: &[Literal::is(QuasiKahlerGroup), Literal::is(B1Ne2), Literal::is(AlexanderMultiVariable)],
        conclusion: RuleConclusion::Contradiction,
        source: "Alexander polynomial of quasi-Kähler groups",
        statement: "the multivariable Alexander polynomial of a quasi-Kähler group with b1 ≠ 2 has a single essential variable",
    },
    Rule {
        id: "R8",
        premises: &[Literal::is(ClosedOrientable3Mfld), Literal::is(B1Even), Literal::is(OneFormal)],
        conclusion: RuleConclusion::Derive(Literal::not(FibersOverCircle)),
        source: "fibrations of 1-formal 3-manifolds",
        statement: "a closed orientable 3-manifold with even b1 and 1-formal fundamental group does not fiber smoothly over the circle",
    },
    Rule {
        id: "R9",
        premises: &[Literal::is(ClosedOrientable3Mfld), Literal::is(B1Le1)],
        conclusion: RuleConclusion::Derive(Literal::is(Formal)),
        source: "formality of 3-manifolds",
        statement: "a closed orientable 3-manifold with b1 ≤ 1 is formal",
    },
    Rule {
        id: "R10",
        premises: &[Literal::is(OneFormal), Literal::is(JordanBlockGe2)],
        conclusion: RuleConclusion::Contradiction,
        source: "monodromy of fibrations over mapping tori",
        statement: "if M fibers over a mapping torus U_h and M is 1-formal, every Jordan block of h_* at the eigenvalue 1 has size 1",
    },
    Rule {
        id: "R11",
        premises: &[Literal::is(ProductOfOneFormal)],
        conclusion: RuleConclusion::Derive(Literal::is(OneFormal)),
        source: "products and free products",
        statement: "direct products and free products of 1-formal groups are 1-formal",
    },
    Rule {
        id: "R12",
        premises: &[Literal::is(Formal)],
        conclusion: RuleConclusion::Derive(Literal::is(OneFormal)),
        source: "formality implies 1-formality",
        statement: "a formal space is 1-formal",
    },
];

/// Results that bear on the facts but are not rules: their hypotheses hold only
/// up to Malcev completion or need data outside the fact vocabulary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Note {
    pub source: &'static str,
    pub statement: &'static str,
}

pub const NOTES: &[Note] = &[
    Note {
        source: "Kähler 3-manifold groups",
        statement: "if a closed 3-manifold group is a Kähler group, it is a finite group acting freely on the 3-sphere through O(4)",
    },
    Note {
        source: "quasi-Kähler 3-manifold groups",
        statement: "a closed 3-manifold group that is quasi-Kähler is, up to Malcev completion, free or Z times a surface group",
    },
];

pub fn rule(id: &str) -> Option<&'static Rule> {
    RULES.iter().find(|r| r.id == id)
}

/// A fact derived by one rule application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub literal: Literal,
    pub rule: &'static str,
    pub premises: Vec<Literal>,
    /// Rule ids, in application order, leading from inputs to this fact.
    pub chain: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contradiction {
    pub rule: &'static str,
    /// Premises of the firing rule.
    pub premises: Vec<Literal>,
    /// For a derived literal opposing a known value: that known literal.
    pub opposed: Option<Literal>,
    /// Rule chain behind the firing rule's premises.
    pub chain: Vec<&'static str>,
    /// Rule chain behind the opposed literal (empty when it is an input).
    pub opposed_chain: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub inputs: FactSet,
    /// Inputs plus everything derived.
    pub facts: FactSet,
    pub derived: Vec<Derivation>,
    pub contradictions: Vec<Contradiction>,
    /// Input facts that no fired rule used.
    pub unused_inputs: Vec<Fact>,
    /// Passes over the rule list until nothing changed.
    pub iterations: usize,
}

impl ObstructionReport {
    pub fn value(&self, fact: Fact) -> Truth {
        self.facts.get(fact)
    }

    pub fn derivation(&self, fact: Fact) -> Option<&Derivation> {
        self.derived.iter().find(|d| d.literal.fact == fact)
    }

    pub fn has_contradiction(&self) -> bool {
        !self.contradictions.is_empty()
    }

    /// Re-applies the chain of a derived fact from the inputs alone and
    /// checks that every step fires and the last one yields the fact.
    pub fn replay(&self, fact: Fact) -> bool {
        let Some(d) = self.derivation(fact) else {
            return false;
        };
        let mut known = self.inputs.clone();
        for id in &d.chain {
            let Some(r) = rule(id) else { return false };
            if !r.premises.iter().all(|&p| known.holds(p)) {
                return false;
            }
            if let RuleConclusion::Derive(l) = r.conclusion {
                if known.set(l.fact, l.value).is_err() {
                    return false;
                }
            }
        }
        known.holds(d.literal)
    }
}

fn chain_of(lits: &[Literal], derived: &BTreeMap<Fact, Derivation>) -> Vec<&'static str> {
    let mut out: Vec<&'static str> = Vec::new();
    for l in lits {
        if let Some(d) = derived.get(&l.fact) {
            for id in &d.chain {
                if !out.contains(id) {
                    out.push(id);
                }
            }
        }
    }
    out
}

/// Forward chaining to a fixpoint. A rule fires only when every premise is
/// known with the required value.
pub fn infer(inputs: &FactSet) -> Result<ObstructionReport> {
    inputs.check_consistency()?;
    let mut facts = inputs.clone();
    let mut derived: BTreeMap<Fact, Derivation> = BTreeMap::new();
    let mut order: Vec<Fact> = Vec::new();
    let mut contradictions: Vec<Contradiction> = Vec::new();
    let mut used: BTreeSet<Fact> = BTreeSet::new();
    let mut iterations = 0;
    loop {
        iterations += 1;
        let mut changed = false;
        for r in RULES {
            if !r.premises.iter().all(|&p| facts.holds(p)) {
                continue;
            }
            let premises = r.premises.to_vec();
            let mut chain = chain_of(&premises, &derived);
            match r.conclusion {
                RuleConclusion::Derive(l) => match facts.get(l.fact).as_bool() {
                    None => {
                        used.extend(premises.iter().map(|p| p.fact));
                        chain.push(r.id);
                        facts.set(l.fact, l.value)?;
                        derived.insert(l.fact, Derivation { literal: l, rule: r.id, premises, chain });
                        order.push(l.fact);
                        changed = true;
                    }
                    Some(v) if v == l.value => {}
                    Some(_) => {
                        if contradictions.iter().any(|c| c.rule == r.id) {
                            continue;
                        }
                        used.extend(premises.iter().map(|p| p.fact));
                        let opposed = Literal { fact: l.fact, value: !l.value };
                        used.insert(l.fact);
                        chain.push(r.id);
                        let opposed_chain = derived.get(&l.fact).map(|d| d.chain.clone()).unwrap_or_default();
                        contradictions.push(Contradiction { rule: r.id, premises, opposed: Some(opposed), chain, opposed_chain });
                        changed = true;
                    }
                },
                RuleConclusion::Contradiction => {
                    if contradictions.iter().any(|c| c.rule == r.id) {
                        continue;
                    }
                    used.extend(premises.iter().map(|p| p.fact));
                    chain.push(r.id);
                    contradictions.push(Contradiction { rule: r.id, premises, opposed: None, chain, opposed_chain: Vec::new() });
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let unused_inputs = inputs.literals().map(|l| l.fact).filter(|f| !used.contains(f)).collect();
    let derived = order.into_iter().map(|f| derived.remove(&f).expect("recorded derivation")).collect();
    Ok(ObstructionReport { inputs: inputs.clone(), facts, derived, contradictions, unused_inputs, iterations })
}

/// Renders a rule as `R4: a ∧ b ∧ ¬c ⇒ ¬d`.
pub fn describe(r: &Rule) -> String {
    let lhs: Vec<String> = r.premises.iter().map(|l| alloc::format!("{}", l)).collect();
    let rhs = match r.conclusion {
        RuleConclusion::Derive(l) => alloc::format!("{}", l),
        RuleConclusion::Contradiction => "⊥".into(),
    };
    alloc::format!("{}: {} ⇒ {}", r.id, lhs.join(" ∧ "), rhs)
}
