//! Runs the module computations on the supplied objects, turns their
//! outcomes into facts and hands those to the rule engine.

use alloc::string::String;
use alloc::vec::Vec;

use crate::cdga::{cohomology, massey_triple, FiniteCdga};
use crate::cup::CupData;
use crate::error::{Error, Result};
use crate::graph::{artin_kernel_formality, classify_bb, classify_raag, raag_cup_data, ArtinKernelVerdict, SimpleGraph};
use crate::resonance::{alexander_single_variable, position_obstruction, AlexanderVerdict, LinearSubspace, PositionVerdict};
use crate::rules::{infer, Fact, FactSet, ObstructionReport, Truth};
use crate::torus::{analyze_monodromy, is_orientation_preserving, JordanObstruction, MonodromyMatrix};

/// Largest `b1` for which all basis triples are tried for Massey products.
pub const MASSEY_SEARCH_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphGroup {
    /// Right-angled Artin group `G_Γ`.
    Raag,
    /// Bestvina–Brady group `N_Γ`.
    BestvinaBrady,
}

#[derive(Clone, Debug, Default)]
pub struct PipelineInput {
    pub cdga: Option<FiniteCdga>,
    pub graph: Option<(SimpleGraph, GraphGroup)>,
    pub monodromy: Option<MonodromyMatrix>,
    pub cup: Option<CupData>,
    /// Candidate components of `R_1` for the position test (needs `cup`).
    pub components: Vec<LinearSubspace>,
    pub alexander: Option<crate::resonance::LaurentPoly>,
    /// Facts supplied directly by the caller.
    pub facts: FactSet,
}

/// A module outcome, as a sentence with its justification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub module: &'static str,
    pub statement: String,
    pub citation: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NotQuasiKahler,
    NonFormal,
    Formal,
    OneFormal,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NotQuasiKahler => "not-quasi-kahler",
            Verdict::NonFormal => "non-formal",
            Verdict::Formal => "formal",
            Verdict::OneFormal => "one-formal",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub findings: Vec<Finding>,
    /// Facts produced by the modules, merged with the caller's facts.
    pub facts: FactSet,
    pub report: ObstructionReport,
    pub verdict: Verdict,
}

const CITE_MASSEY: &str = "a nonvanishing Massey triple product of degree-1 classes obstructs 1-formality";
const CITE_ARTIN: &str = "all Artin groups are 1-formal";
const CITE_RAAG: &str = crate::graph::RAAG_THEOREM;
const CITE_BB: &str = crate::graph::BB_THEOREM;
const CITE_ARTIN_KERNEL: &str =
    "N_Γ is 1-formal when the reduced rational homology of the flag complex vanishes up to degree 1";
const CITE_RELATORS: &str = "right-angled Artin groups are presented by commutator relators";

fn set(facts: &mut FactSet, fact: Fact, value: bool) -> Result<()> {
    facts.set(fact, value)
}

fn betti_facts(facts: &mut FactSet, b1: usize) -> Result<()> {
    set(facts, Fact::B1Le1, b1 <= 1)?;
    set(facts, Fact::B1Even, b1.is_multiple_of(2))?;
    set(facts, Fact::B1Ne2, b1 != 2)
}

/// Runs every requested computation and infers what follows.
pub fn analyze(input: &PipelineInput) -> Result<AnalysisReport> {
    let mut findings = Vec::new();
    let mut facts = FactSet::new();

    if let Some(a) = &input.cdga {
        a.validate()?;
        let h = cohomology(a);
        let c = h.cup_data(a)?;
        betti_facts(&mut facts, c.b1())?;
        set(&mut facts, Fact::CupZero, c.is_zero())?;
        let b1 = h.dim(1);
        if b1 <= MASSEY_SEARCH_LIMIT {
            let classes: Vec<_> = (0..b1).map(|i| h.basis_class(a, 1, i)).collect::<Result<_>>()?;
            'search: for i in 0..b1 {
                for j in 0..b1 {
                    for k in 0..b1 {
                        let v = massey_triple(a, &h, [&classes[i], &classes[j], &classes[k]])?;
                        if v.is_nonvanishing() {
                            let rep = v.representative.expect("defined product has a representative");
                            let names: Vec<String> = rep
                                .representative
                                .iter()
                                .enumerate()
                                .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                                .map(|(t, x)| alloc::format!("{}·{}", x, a.name(t)))
                                .collect();
                            findings.push(Finding {
                                module: "cdga",
                                statement: alloc::format!(
                                    "the Massey product of basis classes ({}, {}, {}) is represented by {} and does not vanish",
                                    i, j, k, names.join(" + ")
                                ),
                                citation: CITE_MASSEY,
                            });
                            set(&mut facts, Fact::OneFormal, false)?;
                            set(&mut facts, Fact::Formal, false)?;
                            break 'search;
                        }
                    }
                }
            }
        }
    }

    if let Some((g, kind)) = &input.graph {
        match kind {
            GraphGroup::Raag => {
                let v = classify_raag(g);
                findings.push(Finding {
                    module: "graph",
                    statement: alloc::format!(
                        "G_Γ is {}quasi-Kähler and {}Kähler ({})",
                        if v.quasi_kahler { "" } else { "not " },
                        if v.kahler { "" } else { "not " },
                        v.witness
                    ),
                    citation: CITE_RAAG,
                });
                findings.push(Finding { module: "graph", statement: "G_Γ is 1-formal".into(), citation: CITE_ARTIN });
                set(&mut facts, Fact::QuasiKahlerGroup, v.quasi_kahler)?;
                set(&mut facts, Fact::KahlerGroup, v.kahler)?;
                set(&mut facts, Fact::OneFormal, true)?;
                let c = raag_cup_data(g);
                betti_facts(&mut facts, c.b1())?;
                set(&mut facts, Fact::CupZero, c.is_zero())?;
                set(&mut facts, Fact::CommutatorRelators, true)?;
                set(&mut facts, Fact::Free, g.edge_count() == 0)?;
                findings.push(Finding {
                    module: "graph",
                    statement: "G_Γ has a commutator-relators presentation".into(),
                    citation: CITE_RELATORS,
                });
            }
            GraphGroup::BestvinaBrady => {
                let v = classify_bb(g)?;
                findings.push(Finding {
                    module: "graph",
                    statement: alloc::format!(
                        "N_Γ is {}quasi-Kähler and {}Kähler ({})",
                        if v.quasi_kahler { "" } else { "not " },
                        if v.kahler { "" } else { "not " },
                        v.witness
                    ),
                    citation: CITE_BB,
                });
                set(&mut facts, Fact::QuasiKahlerGroup, v.quasi_kahler)?;
                set(&mut facts, Fact::KahlerGroup, v.kahler)?;
                let k = artin_kernel_formality(g)?;
                match &k.verdict {
                    ArtinKernelVerdict::OneFormal => {
                        set(&mut facts, Fact::OneFormal, true)?;
                        findings.push(Finding {
                            module: "graph",
                            statement: alloc::format!(
                                "N_Γ is 1-formal (integral H̃_1 of the flag complex: {}{})",
                                k.integral_h1,
                                if k.torsion_warning { "; torsion present, N_Γ is not finitely presented" } else { "" }
                            ),
                            citation: CITE_ARTIN_KERNEL,
                        });
                    }
                    ArtinKernelVerdict::CriterionFails { degree, group } => findings.push(Finding {
                        module: "graph",
                        statement: alloc::format!("the 1-formality criterion fails: H̃_{} = {}", degree, group),
                        citation: CITE_ARTIN_KERNEL,
                    }),
                }
            }
        }
    }

    if let Some(h) = &input.monodromy {
        let r = analyze_monodromy(h)?;
        if r.symplectic && is_orientation_preserving(h) {
            set(&mut facts, Fact::ClosedOrientable3Mfld, true)?;
        }
        set(&mut facts, Fact::FibersOverCircle, true)?;
        betti_facts(&mut facts, r.b1)?;
        set(&mut facts, Fact::JordanBlockGe2, r.jordan_obstruction == JordanObstruction::Obstructed)?;
        if r.jordan_obstruction == JordanObstruction::Obstructed {
            set(&mut facts, Fact::OneFormal, false)?;
        }
        findings.push(Finding {
            module: "torus",
            statement: alloc::format!("H_1(U_h; Z) = {}, b1 = {}", r.h1, r.b1),
            citation: "Wang sequence of the fibration U → U_h → S¹",
        });
        for c in r.conclusions {
            findings.push(Finding { module: "torus", statement: c.statement, citation: c.citation });
        }
    }

    if let Some(c) = &input.cup {
        if !input.components.is_empty() {
            match position_obstruction(c, &input.components)? {
                PositionVerdict::Pass => set(&mut facts, Fact::PositionObstructionFails, false)?,
                PositionVerdict::Fail { component, reason } => {
                    findings.push(Finding {
                        module: "resonance",
                        statement: alloc::format!("component {} of R_1 is {}", component, reason),
                        citation: crate::rules::rule("R6").expect("rule exists").statement,
                    });
                    set(&mut facts, Fact::PositionObstructionFails, true)?;
                }
            }
        }
        if facts.get(Fact::CupZero) == Truth::Unknown {
            set(&mut facts, Fact::CupZero, c.is_zero())?;
        }
        if facts.get(Fact::B1Le1) == Truth::Unknown {
            betti_facts(&mut facts, c.b1())?;
        }
    } else if !input.components.is_empty() {
        return Err(Error::InvalidParameter("resonance components given without cup data".into()));
    }

    if let Some(d) = &input.alexander {
        let multi = matches!(alexander_single_variable(d), AlexanderVerdict::MultipleVariables { .. });
        set(&mut facts, Fact::AlexanderMultiVariable, multi)?;
    }

    facts.merge(&input.facts)?;
    let report = infer(&facts)?;
    let verdict = verdict_of(&report);
    Ok(AnalysisReport { findings, facts, report, verdict })
}

fn verdict_of(r: &ObstructionReport) -> Verdict {
    let refuted = |ids: &[&str]| r.contradictions.iter().any(|c| ids.contains(&c.rule));
    if r.value(Fact::QuasiKahlerGroup) == Truth::False || refuted(&["R6", "R7"]) {
        Verdict::NotQuasiKahler
    } else if r.value(Fact::OneFormal) == Truth::False || r.value(Fact::Formal) == Truth::False || refuted(&["R5", "R10"]) {
        Verdict::NonFormal
    } else if r.value(Fact::Formal) == Truth::True {
        Verdict::Formal
    } else if r.value(Fact::OneFormal) == Truth::True {
        Verdict::OneFormal
    } else {
        Verdict::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::heisenberg;
    use crate::linalg::IntMatrix;
    use crate::torus::a_n;

    #[test]
    fn heisenberg_cdga_is_not_one_formal() {
        let r = analyze(&PipelineInput { cdga: Some(heisenberg()), ..Default::default() }).unwrap();
        assert_eq!(r.report.value(Fact::OneFormal), Truth::False);
        assert_eq!(r.verdict, Verdict::NonFormal);
        assert!(r.findings.iter().any(|f| f.statement.contains("1·az")));
    }

    #[test]
    fn complete_graph_raag_is_kahler() {
        let g = SimpleGraph::complete(4);
        let r = analyze(&PipelineInput { graph: Some((g, GraphGroup::Raag)), ..Default::default() }).unwrap();
        assert_eq!(r.report.value(Fact::KahlerGroup), Truth::True);
        assert_eq!(r.verdict, Verdict::OneFormal);
        assert!(r.findings.iter().any(|f| f.citation == CITE_RAAG));
    }

    #[test]
    fn anosov_monodromy() {
        let h = MonodromyMatrix::new(a_n(2)).unwrap();
        let r = analyze(&PipelineInput { monodromy: Some(h), ..Default::default() }).unwrap();
        assert!(r.findings.iter().any(|f| f.statement.contains("no Kähler metric")));
        assert_eq!(r.report.value(Fact::Formal), Truth::True);
        assert_eq!(r.verdict, Verdict::Formal);
    }

    #[test]
    fn heisenberg_monodromy() {
        let h = MonodromyMatrix::new(IntMatrix::from_i64(&[[1, 1], [0, 1]])).unwrap();
        let r = analyze(&PipelineInput { monodromy: Some(h), ..Default::default() }).unwrap();
        assert_eq!(r.verdict, Verdict::NonFormal);
    }

    #[test]
    fn position_failure_refutes_quasi_kahler() {
        let mut facts = FactSet::new();
        facts.set(Fact::QuasiKahlerGroup, true).unwrap();
        let comps = alloc::vec![LinearSubspace::coordinate(2, &[0]).unwrap()];
        let input = PipelineInput { cup: Some(CupData::zero(2)), components: comps, facts, ..Default::default() };
        let mut r = analyze(&input).unwrap();
        assert_eq!(r.report.value(Fact::PositionObstructionFails), Truth::True);
        // without 1-formality R6 cannot fire
        assert!(!r.report.has_contradiction());
        let mut facts = r.facts.clone();
        facts.set(Fact::OneFormal, true).unwrap();
        r.report = infer(&facts).unwrap();
        assert_eq!(verdict_of(&r.report), Verdict::NotQuasiKahler);
    }
}
