use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};

use formality_core::analyze::{analyze, GraphGroup, PipelineInput};
use formality_core::cdga::{cohomology, extract_cup_data, massey_triple, FiniteCdga};
use formality_core::cup::CupData;
use formality_core::graph::{
    artin_kernel_formality, barycentric_subdivision, classify_bb, classify_raag, flag_complex, simplicial_homology,
    ArtinKernelVerdict, ClassificationVerdict, ClassificationWitness, SimpleGraph, SimplicialComplex,
};
use formality_core::lie::{holonomy_ranks, lyndon_basis, witt};
use formality_core::linalg::{
    char_poly, cokernel, factor_monic, jordan_block_at_one, rank, smith_normal_form, JordanAtOne,
};
use formality_core::resonance::{
    alexander_single_variable, isotropicity, maximality_check, membership, position_obstruction,
    resonance_dimension, sigma_upper_bound, subspace_in_resonance, AlexanderVerdict, Isotropy, PositionVerdict,
    SigmaBoundKind,
};
use formality_core::rules::{describe, infer, rule, Fact, NOTES, FactSet, ObstructionReport, RuleConclusion, Truth};
use formality_core::torus::{analyze_monodromy, nonkahler_family, MonodromyMatrix, QuasiKahlerObstruction};

use crate::json::{self as j, load};
use crate::{
    AnalyzeArgs, CdgaOp, CdgaSource, Cli, Command, CupSource, GraphOp, GraphSource, GroupKind, HolonomyOp,
    InferArgs, LinalgOp, ResonanceOp, TorusOp,
};

/// Raised when a request exceeds the `--budget` cap.
#[derive(Debug)]
pub struct BudgetError(pub String);

impl std::fmt::Display for BudgetError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "budget exceeded: {}", self.0)
    }
}

impl std::error::Error for BudgetError {}

pub struct Output {
    pub json: Value,
    pub text: Vec<String>,
    pub contradiction: bool,
}

impl Output {
    fn new(json: Value, text: Vec<String>) -> Self {
        Self { json, text, contradiction: false }
    }
}

fn check_budget(cli: &Cli, what: &str, needed: u128) -> Result<()> {
    match cli.budget {
        Some(limit) if needed > limit => Err(BudgetError(format!("{what} needs {needed}, limit is {limit}")).into()),
        _ => Ok(()),
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Linalg { op } => linalg(op),
        Command::Cdga { op } => cdga_cmd(op),
        Command::Holonomy { op } => holonomy(cli, op),
        Command::Resonance { op } => resonance(op),
        Command::Graph { op } => graph(cli, op),
        Command::Torus { op } => torus(cli, op),
        Command::Infer(args) => {
            let facts = fact_set(args)?;
            let report = infer(&facts)?;
            Ok(report_output(cli, &report, Map::new(), Vec::new()))
        }
        Command::Analyze(args) => analyze_cmd(cli, args),
    }
}

// ---------------------------------------------------------------------------
// linalg
// ---------------------------------------------------------------------------

fn jordan_str(j: JordanAtOne) -> &'static str {
    match j {
        JordanAtOne::NoEigenvalueOne => "no_eigenvalue_one",
        JordanAtOne::AllBlocksSizeOne => "all_blocks_size_one",
        JordanAtOne::BlockOfSizeGeTwo => "block_of_size_ge_two",
    }
}

fn linalg(op: &LinalgOp) -> Result<Output> {
    let matrix = |p: &Path| -> Result<_> { load::<j::MatrixJson>(p)?.int() };
    Ok(match op {
        LinalgOp::Snf { matrix: p } => {
            let m = matrix(p)?;
            let s = smith_normal_form(&m);
            let divs: Vec<String> = s.divisors.iter().map(ToString::to_string).collect();
            Output::new(
                json!({
                    "u": j::int_matrix(&s.u),
                    "d": j::int_matrix(&s.d),
                    "v": j::int_matrix(&s.v),
                    "divisors": s.divisors.iter().map(j::int).collect::<Vec<_>>(),
                }),
                vec![format!("elementary divisors: [{}]", divs.join(", ")), format!("D =\n{}", s.d)],
            )
        }
        LinalgOp::Cokernel { matrix: p } => {
            let g = cokernel(&matrix(p)?);
            Output::new(j::group(&g), vec![format!("coker = {g}")])
        }
        LinalgOp::Rank { matrix: p } => {
            let r = rank(&load::<j::MatrixJson>(p)?.rat()?);
            Output::new(json!({ "rank": r }), vec![format!("rank = {r}")])
        }
        LinalgOp::Charpoly { matrix: p } => {
            let m = matrix(p)?;
            let cp = char_poly(&m)?;
            let factors = factor_monic(&cp)?;
            let mut text = vec![format!("char poly: {cp}")];
            for f in &factors {
                text.push(format!(
                    "  ({})^{}{}{}",
                    f.poly,
                    f.multiplicity,
                    if f.cyclotomic { "  cyclotomic" } else { "" },
                    if f.irreducible_certified { "" } else { "  (irreducibility not certified)" }
                ));
            }
            Output::new(
                json!({ "char_poly": j::poly(&cp), "factors": factors.iter().map(j::factor).collect::<Vec<_>>() }),
                text,
            )
        }
        LinalgOp::Jordan { matrix: p } => {
            let r = jordan_block_at_one(&matrix(p)?)?;
            Output::new(json!({ "jordan_at_one": jordan_str(r) }), vec![jordan_str(r).to_string()])
        }
        LinalgOp::Factor { poly } => {
            let f = load::<j::PolyJson>(poly)?.poly()?;
            let factors = factor_monic(&f)?;
            let text = factors.iter().map(|x| format!("({})^{}{}", x.poly, x.multiplicity, if x.cyclotomic { "  cyclotomic" } else { "" })).collect();
            Output::new(json!({ "factors": factors.iter().map(j::factor).collect::<Vec<_>>() }), text)
        }
    })
}

// ---------------------------------------------------------------------------
// cdga
// ---------------------------------------------------------------------------

fn load_cdga(source: &CdgaSource) -> Result<FiniteCdga> {
    match (&source.cdga, &source.builtin) {
        (Some(p), None) => load::<j::CdgaJson>(p)?.cdga(),
        (None, Some(b)) => j::builtin_cdga(b),
        _ => bail!("give exactly one of --cdga or --builtin"),
    }
}

fn element(a: &FiniteCdga, v: &[formality_core::Rat]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.numer().eq(&0.into()))
        .map(|(i, c)| if c == &formality_core::Rat::from_integer(1.into()) { a.name(i).to_string() } else { format!("{c}·{}", a.name(i)) })
        .collect();
    if terms.is_empty() { "0".into() } else { terms.join(" + ") }
}

fn cdga_cmd(op: &CdgaOp) -> Result<Output> {
    match op {
        CdgaOp::Validate(src) => {
            let a = load_cdga(src)?;
            a.validate().map_err(formality_core::Error::from)?;
            Ok(Output::new(json!({ "valid": true, "dim": a.dim() }), vec![format!("valid cdga of dimension {}", a.dim())]))
        }
        CdgaOp::Cohomology(src) => {
            let a = load_cdga(src)?;
            a.validate().map_err(formality_core::Error::from)?;
            let h = cohomology(&a);
            let betti = h.betti();
            let mut reps = Map::new();
            let mut text = vec![format!("betti numbers: {betti:?}")];
            for k in 0..betti.len() {
                let r: Vec<String> = h.representatives(&a, k).iter().map(|v| element(&a, v)).collect();
                text.push(format!("H^{k}: [{}]", r.join(", ")));
                reps.insert(k.to_string(), json!(r));
            }
            let c = extract_cup_data(&a)?;
            text.push(format!("cup product on H^1 is {}", if c.is_zero() { "zero" } else { "nonzero" }));
            Ok(Output::new(json!({ "betti": betti, "representatives": reps, "cup": j::cup(&c) }), text))
        }
        CdgaOp::Massey { source, triple } => {
            let a = load_cdga(source)?;
            a.validate().map_err(formality_core::Error::from)?;
            let h = cohomology(&a);
            let b1 = h.dim(1);
            let classes = (0..b1).map(|i| h.basis_class(&a, 1, i)).collect::<formality_core::Result<Vec<_>>>()?;
            let triples: Vec<[usize; 3]> = match triple {
                Some(t) => {
                    let v = t.split(',').map(|x| x.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>().context("--triple")?;
                    if v.len() != 3 || v.iter().any(|&i| i >= b1) {
                        bail!("--triple needs three indices below b1 = {b1}");
                    }
                    vec![[v[0], v[1], v[2]]]
                }
                None => (0..b1).flat_map(|i| (0..b1).flat_map(move |j| (0..b1).map(move |k| [i, j, k]))).collect(),
            };
            let mut rows = Vec::new();
            let mut text = Vec::new();
            for [i, jj, k] in triples {
                let v = massey_triple(&a, &h, [&classes[i], &classes[jj], &classes[k]])?;
                if triple.is_none() && !v.is_nonvanishing() {
                    continue;
                }
                let rep = v.representative.as_ref().map(|c| element(&a, &c.representative));
                text.push(format!(
                    "<{i},{jj},{k}>: {}",
                    if !v.defined {
                        "not defined".to_string()
                    } else if v.vanishes {
                        format!("vanishes (representative {})", rep.clone().unwrap_or_else(|| "0".into()))
                    } else {
                        format!("nonvanishing, represented by {}", rep.clone().unwrap_or_default())
                    }
                ));
                rows.push(json!({
                    "triple": [i, jj, k],
                    "defined": v.defined,
                    "vanishes": v.vanishes,
                    "representative": rep,
                    "indeterminacy_dim": v.indeterminacy_dim,
                }));
            }
            if text.is_empty() {
                text.push("no nonvanishing Massey triple product of basis classes".into());
            }
            Ok(Output::new(json!({ "b1": b1, "products": rows }), text))
        }
    }
}

// ---------------------------------------------------------------------------
// holonomy
// ---------------------------------------------------------------------------

fn load_cup(src: &CupSource) -> Result<CupData> {
    match (&src.cup, &src.cdga, &src.builtin) {
        (Some(p), None, None) => load::<j::CupJson>(p)?.cup(),
        (None, Some(p), None) => {
            let a = load::<j::CdgaJson>(p)?.cdga()?;
            a.validate().map_err(formality_core::Error::from)?;
            Ok(extract_cup_data(&a)?)
        }
        (None, None, Some(b)) => {
            let a = j::builtin_cdga(b)?;
            Ok(extract_cup_data(&a)?)
        }
        _ => bail!("give exactly one of --cup, --cdga or --builtin"),
    }
}

fn holonomy(cli: &Cli, op: &HolonomyOp) -> Result<Output> {
    match op {
        HolonomyOp::Ranks(src) => {
            let c = load_cup(src)?;
            let d = cli.max_degree;
            let needed = (1..=d).map(|k| witt(c.b1(), k).unwrap_or(u128::MAX)).fold(0u128, u128::saturating_add);
            check_budget(cli, "free Lie algebra dimension", needed)?;
            let r = holonomy_ranks(&c, d)?;
            let text = r.pairs().map(|(k, p)| format!("φ_{k} = {p}")).collect();
            Ok(Output::new(json!({ "b1": c.b1(), "max_degree": d, "ranks": r.ranks() }), text))
        }
        HolonomyOp::Lyndon { n, degree } => {
            let words = lyndon_basis(*n, *degree)?;
            check_budget(cli, "Lyndon words", words.len() as u128)?;
            let text = words.iter().map(|w| format!("{}  {}", w.word_string(), w.bracketing())).collect();
            Ok(Output::new(
                json!({
                    "n": n,
                    "degree": degree,
                    "words": words.iter().map(|w| json!({ "word": w.word_string(), "bracket": w.bracketing() })).collect::<Vec<_>>(),
                }),
                text,
            ))
        }
    }
}

// ---------------------------------------------------------------------------
// resonance
// ---------------------------------------------------------------------------

fn isotropy_str(k: Isotropy) -> &'static str {
    match k {
        Isotropy::ZeroIsotropic => "0-isotropic",
        Isotropy::OneIsotropic => "1-isotropic",
        Isotropy::Neither => "neither",
    }
}

fn resonance(op: &ResonanceOp) -> Result<Output> {
    match op {
        ResonanceOp::Member { source, point, depth } => {
            let c = load_cup(source)?;
            let x = j::parse_point(point)?;
            let dim = resonance_dimension(&c, &x)?;
            let member = membership(&c, &x, *depth)?;
            Ok(Output::new(
                json!({ "point": j::rat_vec(&x), "depth": depth, "member": member, "resonance_dimension": dim }),
                vec![format!("resonance dimension {dim}; point is {}in R_{depth}", if member { "" } else { "not " })],
            ))
        }
        ResonanceOp::Component { source, subspace, depth } => {
            let c = load_cup(source)?;
            let l = load::<j::SubspaceJson>(subspace)?.subspace()?;
            let contained = subspace_in_resonance(&c, &l, *depth)?;
            let iso = isotropicity(&c, &l)?;
            let extend = if contained { maximality_check(&c, &l, *depth)? } else { Vec::new() };
            let mut text = vec![
                format!("subspace of dimension {} is {}contained in R_{depth}", l.dim(), if contained { "" } else { "not " }),
                format!("isotropicity: {} (cup image dimension {})", isotropy_str(iso.kind), iso.image_dim),
            ];
            if contained {
                text.push(if extend.is_empty() {
                    "no coordinate direction enlarges it inside the variety".into()
                } else {
                    format!("enlarges inside the variety along coordinates {extend:?}")
                });
            }
            Ok(Output::new(
                json!({
                    "contained": contained,
                    "depth": depth,
                    "isotropicity": isotropy_str(iso.kind),
                    "image_dim": iso.image_dim,
                    "witness": iso.witness.as_deref().map(j::rat_vec),
                    "extending_directions": extend,
                }),
                text,
            ))
        }
        ResonanceOp::Position { source, components } => {
            let c = load_cup(source)?;
            let comps = load::<j::Subspaces>(components)?.all()?;
            Ok(match position_obstruction(&c, &comps)? {
                PositionVerdict::Pass => Output::new(
                    json!({ "verdict": "pass" }),
                    vec!["every component is isotropic of sufficient dimension".into()],
                ),
                PositionVerdict::Fail { component, reason } => Output::new(
                    json!({ "verdict": "fail", "component": component, "reason": reason.to_string() }),
                    vec![format!("component {component} fails: {reason}")],
                ),
            })
        }
        ResonanceOp::Sigma { source, candidates } => {
            let c = load_cup(source)?;
            let cands = match candidates {
                Some(p) => load::<j::Subspaces>(p)?.all()?,
                None => Vec::new(),
            };
            let s = sigma_upper_bound(&c, &cands)?;
            let kind = match s.kind {
                SigmaBoundKind::Empty => "empty",
                SigmaBoundKind::ComplementOfPieces => "complement_of_pieces",
            };
            let text = vec![
                match s.kind {
                    SigmaBoundKind::Empty => "R_1 is all of H^1, so the bound is the empty set".to_string(),
                    SigmaBoundKind::ComplementOfPieces => {
                        format!("Σ^1 lies in the complement of {} verified linear pieces of R_1", s.verified.len())
                    }
                },
                format!("{} candidates rejected; {} of {} samples unexplained", s.rejected.len(), s.samples_unexplained, s.samples_tested),
            ];
            Ok(Output::new(
                json!({
                    "kind": kind,
                    "verified": s.verified.iter().map(j::subspace).collect::<Vec<_>>(),
                    "rejected": s.rejected.iter().map(j::subspace).collect::<Vec<_>>(),
                    "samples_tested": s.samples_tested,
                    "samples_unexplained": s.samples_unexplained,
                }),
                text,
            ))
        }
        ResonanceOp::Alexander { poly } => {
            let d = load::<j::LaurentJson>(poly)?.poly()?;
            Ok(match alexander_single_variable(&d) {
                AlexanderVerdict::SingleVariable { p, e, shift } => Output::new(
                    json!({ "single_variable": true, "p": j::poly(&p), "e": e, "shift": shift }),
                    vec![format!("Δ = t^{shift:?} · P(t^{e:?}) with P = {p}")],
                ),
                AlexanderVerdict::MultipleVariables { witness } => Output::new(
                    json!({ "single_variable": false, "witness": [witness.0, witness.1] }),
                    vec![format!("two independent support directions: {:?} and {:?}", witness.0, witness.1)],
                ),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// graph
// ---------------------------------------------------------------------------

fn load_graph(src: &GraphSource) -> Result<SimpleGraph> {
    match (&src.graph, &src.named) {
        (Some(p), None) => load::<j::GraphJson>(p)?.graph(),
        (None, Some(s)) => j::named_graph(s),
        _ => bail!("give exactly one of --graph or --named"),
    }
}

fn witness_json(w: &ClassificationWitness) -> Value {
    match w {
        ClassificationWitness::Partition(p) => json!({ "partition": p }),
        ClassificationWitness::Tree => json!("tree"),
        ClassificationWitness::InducedOneEdge(t) => json!({ "induced_one_edge": t }),
    }
}

fn classification(cli: &Cli, group: &str, v: &ClassificationVerdict) -> Output {
    let mut text = vec![
        format!("{group} quasi-Kähler: {}", v.quasi_kahler),
        format!("{group} Kähler: {}", v.kahler),
        format!("witness: {}", v.witness.to_string()),
    ];
    let mut out = json!({ "quasi_kahler": v.quasi_kahler, "kahler": v.kahler, "witness": witness_json(&v.witness) });
    if cli.cite {
        text.push(format!("  [{}]", v.theorem));
        out["citation"] = json!(v.theorem);
    }
    Output::new(out, text)
}

fn faces_json(k: &SimplicialComplex) -> Value {
    json!({ "n": k.n(), "facets": k.facets(), "f_vector": k.f_vector(), "euler_characteristic": k.euler_characteristic() })
}

fn homology_output(k: &SimplicialComplex) -> Output {
    let top = k.dim().unwrap_or(0);
    let h = simplicial_homology(k, top);
    let text = h.iter().enumerate().map(|(i, g)| format!("H̃_{i} = {g}")).collect();
    Output::new(json!({ "reduced_homology": h.iter().map(j::group).collect::<Vec<_>>() }), text)
}

fn graph(cli: &Cli, op: &GraphOp) -> Result<Output> {
    match op {
        GraphOp::ClassifyRaag(src) => Ok(classification(cli, "G_Γ", &classify_raag(&load_graph(src)?))),
        GraphOp::ClassifyBb(src) => Ok(classification(cli, "N_Γ", &classify_bb(&load_graph(src)?)?)),
        GraphOp::ArtinKernel(src) => {
            let r = artin_kernel_formality(&load_graph(src)?)?;
            let (verdict, text) = match &r.verdict {
                ArtinKernelVerdict::OneFormal => (json!("one_formal"), "N_Γ is 1-formal".to_string()),
                ArtinKernelVerdict::CriterionFails { degree, group } => (
                    json!({ "criterion_fails": { "degree": degree, "group": j::group(group) } }),
                    format!("criterion fails: H̃_{degree} = {group}"),
                ),
            };
            let presentation = match r.presentation {
                formality_core::graph::PresentationStatus::NotFinitelyPresented => "not_finitely_presented",
                formality_core::graph::PresentationStatus::NecessaryConditionsOnly => "necessary-conditions-only",
            };
            let mut lines = vec![
                text,
                format!("integral H̃_0 = {}, H̃_1 = {}", r.integral_h0, r.integral_h1),
                format!("finite presentation: {presentation}"),
            ];
            if r.torsion_warning {
                lines.push("warning: integral H̃_1 has torsion".into());
            }
            Ok(Output::new(
                json!({
                    "verdict": verdict,
                    "integral_h0": j::group(&r.integral_h0),
                    "integral_h1": j::group(&r.integral_h1),
                    "torsion_warning": r.torsion_warning,
                    "presentation": presentation,
                }),
                lines,
            ))
        }
        GraphOp::Homology { source, complex } => {
            let k = match complex {
                Some(p) => load::<j::ComplexJson>(p)?.complex()?,
                None => flag_complex(&load_graph(source)?)?,
            };
            Ok(homology_output(&k))
        }
        GraphOp::Flag(src) => {
            let k = flag_complex(&load_graph(src)?)?;
            check_budget(cli, "faces", k.face_count() as u128)?;
            let text = vec![format!("f-vector {:?}, {} facets", k.f_vector(), k.facets().len())];
            Ok(Output::new(faces_json(&k), text))
        }
        GraphOp::Subdivide { complex, rp2 } => {
            let k = match (complex, rp2) {
                (Some(p), false) => load::<j::ComplexJson>(p)?.complex()?,
                (None, true) => SimplicialComplex::rp2_six_vertex(),
                _ => bail!("give exactly one of --complex or --rp2"),
            };
            let sd = barycentric_subdivision(&k)?;
            check_budget(cli, "faces", sd.face_count() as u128)?;
            let g = sd.one_skeleton();
            let mut out = faces_json(&sd);
            out["flag"] = json!(sd.is_flag());
            out["graph"] = json!({ "n": g.n(), "edges": g.edges() });
            let text = vec![format!("subdivision: {} vertices, f-vector {:?}, flag: {}", sd.n(), sd.f_vector(), sd.is_flag())];
            Ok(Output::new(out, text))
        }
    }
}

// ---------------------------------------------------------------------------
// torus
// ---------------------------------------------------------------------------

fn qk_json(q: &QuasiKahlerObstruction) -> Value {
    match q {
        QuasiKahlerObstruction::Obstructed { witness } => json!({ "obstructed": true, "witness": j::factor(witness) }),
        QuasiKahlerObstruction::NotObstructed => json!({ "obstructed": false }),
    }
}

fn conclusions(cli: &Cli, cs: &[formality_core::torus::Conclusion], text: &mut Vec<String>) -> Value {
    let mut out = Vec::new();
    for c in cs {
        text.push(format!("⇒ {}", c.statement));
        if cli.cite {
            text.push(format!("  [{}]", c.citation));
            out.push(json!({ "statement": c.statement, "citation": c.citation }));
        } else {
            out.push(json!({ "statement": c.statement }));
        }
    }
    Value::Array(out)
}

fn torus(cli: &Cli, op: &TorusOp) -> Result<Output> {
    match op {
        TorusOp::Analyze { matrix } => {
            let h = MonodromyMatrix::new(load::<j::MatrixJson>(matrix)?.int()?)?;
            let r = analyze_monodromy(&h)?;
            let mut text = vec![
                format!("H_1(U_h; Z) = {}, b1 = {}", r.h1, r.b1),
                format!("char poly: {}", r.character.char_poly),
                format!("symplectic: {}{}", r.symplectic, r.genus.map(|g| format!(" (genus {g})")).unwrap_or_default()),
                format!("Jordan structure at 1: {}", jordan_str(r.jordan)),
                format!("quasi-Kähler obstruction: {}", if r.quasi_kahler.is_obstructed() { "obstructed" } else { "not obstructed" }),
            ];
            let cs = conclusions(cli, &r.conclusions, &mut text);
            Ok(Output::new(
                json!({
                    "size": r.size,
                    "symplectic": r.symplectic,
                    "genus": r.genus,
                    "b1": r.b1,
                    "h1": j::group(&r.h1),
                    "char_poly": j::poly(&r.character.char_poly),
                    "factors": r.character.factors.iter().map(j::factor).collect::<Vec<_>>(),
                    "one_in_character_component": r.character.contains_one,
                    "jordan_at_one": jordan_str(r.jordan),
                    "jordan_obstruction": r.jordan_obstruction == formality_core::torus::JordanObstruction::Obstructed,
                    "quasi_kahler_obstruction": qk_json(&r.quasi_kahler),
                    "conclusions": cs,
                }),
                text,
            ))
        }
        TorusOp::Family { g, n } => {
            let r = nonkahler_family(*g, *n)?;
            let mut text = vec![
                format!("B_{{{g},{n}}} char poly: {}", r.char_poly),
                format!("H_1(U_h; Z) = {}", r.h1_mapping_torus),
                format!("H_1(W; Z) = {}", r.h1),
            ];
            let cs = conclusions(cli, &r.conclusions, &mut text);
            Ok(Output::new(
                json!({
                    "g": g,
                    "n": n,
                    "monodromy": j::int_matrix(r.monodromy.matrix()),
                    "char_poly": j::poly(&r.char_poly),
                    "h1_mapping_torus": j::group(&r.h1_mapping_torus),
                    "h1": j::group(&r.h1),
                    "quasi_kahler_obstruction": qk_json(&r.obstruction),
                    "conclusions": cs,
                }),
                text,
            ))
        }
        TorusOp::Sweep { g_max, n_max } => {
            let count = (*g_max as u128) * (n_max.saturating_sub(1).max(0) as u128);
            check_budget(cli, "family members", count)?;
            let mut rows = Vec::new();
            let mut text = vec![format!("{:>3} {:>4}  {:<28} {}", "g", "n", "H_1(W; Z)", "obstructed")];
            for g in 1..=*g_max {
                for n in 2..=*n_max {
                    let r = nonkahler_family(g, n)?;
                    text.push(format!("{g:>3} {n:>4}  {:<28} {}", r.h1.to_string(), r.obstruction.is_obstructed()));
                    rows.push(json!({ "g": g, "n": n, "h1": j::group(&r.h1), "obstructed": r.obstruction.is_obstructed() }));
                }
            }
            let distinct = {
                let mut seen: Vec<String> = rows.iter().map(|r| r["h1"]["text"].to_string()).collect();
                seen.sort();
                seen.dedup();
                seen.len() == rows.len()
            };
            text.push(format!("pairwise distinct H_1: {distinct}"));
            Ok(Output::new(json!({ "rows": rows, "pairwise_distinct": distinct }), text))
        }
    }
}

// ---------------------------------------------------------------------------
// rules and the pipeline
// ---------------------------------------------------------------------------

fn fact_set(args: &InferArgs) -> Result<FactSet> {
    let mut facts = match &args.facts {
        Some(p) => j::facts(&load::<Map<String, Value>>(p)?)?,
        None => FactSet::new(),
    };
    for f in &args.fact {
        let (k, v) = f.split_once('=').ok_or_else(|| anyhow!("--fact expects name=true|false, got {f:?}"))?;
        let fact = Fact::from_id(k.trim()).ok_or_else(|| anyhow!("unknown fact {k:?}"))?;
        let v: bool = v.trim().parse().with_context(|| format!("--fact {f:?}"))?;
        facts.set(fact, v)?;
    }
    Ok(facts)
}

fn truth_json(t: Truth) -> Value {
    match t {
        Truth::True => json!(true),
        Truth::False => json!(false),
        Truth::Unknown => Value::Null,
    }
}

fn rule_text(cli: &Cli, id: &str) -> String {
    let r = rule(id).expect("reports only name known rules");
    if cli.cite {
        format!("{}  [{}: {}]", describe(r), r.source, r.statement)
    } else {
        describe(r)
    }
}

fn report_output(cli: &Cli, report: &ObstructionReport, mut extra: Map<String, Value>, mut text: Vec<String>) -> Output {
    let mut facts = Map::new();
    for f in Fact::ALL {
        facts.insert(f.id().into(), truth_json(report.value(*f)));
    }
    let derived: Vec<Value> = report
        .derived
        .iter()
        .map(|d| {
            let mut v = json!({
                "fact": d.literal.fact.id(),
                "value": d.literal.value,
                "rule": d.rule,
                "premises": d.premises.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "chain": d.chain,
            });
            if cli.cite {
                let r = rule(d.rule).expect("derived by a known rule");
                v["citation"] = json!({ "source": r.source, "statement": r.statement });
            }
            v
        })
        .collect();
    let contradictions: Vec<Value> = report
        .contradictions
        .iter()
        .map(|c| {
            let mut v = json!({
                "rule": c.rule,
                "premises": c.premises.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "opposed": c.opposed.map(|l| l.to_string()),
                "chain": c.chain,
                "opposed_chain": c.opposed_chain,
            });
            if cli.cite {
                let r = rule(c.rule).expect("raised by a known rule");
                v["citation"] = json!({ "source": r.source, "statement": r.statement });
            }
            v
        })
        .collect();

    for d in &report.derived {
        text.push(format!("derived {} via {}", d.literal, d.chain.join(" → ")));
        text.push(format!("  {}", rule_text(cli, d.rule)));
    }
    for c in &report.contradictions {
        let r = rule(c.rule).expect("raised by a known rule");
        let what = match (r.conclusion, c.opposed) {
            (RuleConclusion::Derive(l), Some(o)) => format!("{l} contradicts {o}"),
            _ => "premises are jointly impossible".into(),
        };
        text.push(format!("CONTRADICTION via {}: {what}", c.rule));
        text.push(format!("  {}", rule_text(cli, c.rule)));
        if !c.chain.is_empty() {
            text.push(format!("  premise chain: {}", c.chain.join(" → ")));
        }
        if !c.opposed_chain.is_empty() {
            text.push(format!("  opposing chain: {}", c.opposed_chain.join(" → ")));
        }
    }
    if report.derived.is_empty() && report.contradictions.is_empty() {
        text.push("nothing derived".into());
    }
    if !report.unused_inputs.is_empty() {
        let unused: Vec<&str> = report.unused_inputs.iter().map(|f| f.id()).collect();
        text.push(format!("unused inputs: {}", unused.join(", ")));
    }

    if cli.cite {
        text.push("not encoded as rules:".into());
        for n in NOTES {
            text.push(format!("  {}: {}", n.source, n.statement));
        }
        extra.insert(
            "notes".into(),
            json!(NOTES.iter().map(|n| json!({ "source": n.source, "statement": n.statement })).collect::<Vec<_>>()),
        );
    }
    extra.insert("facts".into(), Value::Object(facts));
    extra.insert("derived".into(), Value::Array(derived));
    extra.insert("contradictions".into(), Value::Array(contradictions));
    extra.insert("unused_inputs".into(), json!(report.unused_inputs.iter().map(|f| f.id()).collect::<Vec<_>>()));
    extra.insert("iterations".into(), json!(report.iterations));
    Output { json: Value::Object(extra), text, contradiction: report.has_contradiction() }
}

fn analyze_cmd(cli: &Cli, args: &AnalyzeArgs) -> Result<Output> {
    let mut input = PipelineInput::default();
    match (&args.cdga, &args.builtin) {
        (Some(_), Some(_)) => bail!("give at most one of --cdga or --builtin"),
        (Some(p), None) => input.cdga = Some(load::<j::CdgaJson>(p)?.cdga()?),
        (None, Some(b)) => input.cdga = Some(j::builtin_cdga(b)?),
        (None, None) => {}
    }
    if args.graph.graph.is_some() || args.graph.named.is_some() {
        let kind = match args.group {
            GroupKind::Raag => GraphGroup::Raag,
            GroupKind::Bb => GraphGroup::BestvinaBrady,
        };
        input.graph = Some((load_graph(&args.graph)?, kind));
    }
    if let Some(p) = &args.matrix {
        input.monodromy = Some(MonodromyMatrix::new(load::<j::MatrixJson>(p)?.int()?)?);
    }
    if let Some(p) = &args.cup {
        input.cup = Some(load::<j::CupJson>(p)?.cup()?);
    }
    if let Some(p) = &args.components {
        input.components = load::<j::Subspaces>(p)?.all()?;
    }
    if let Some(p) = &args.alexander {
        input.alexander = Some(load::<j::LaurentJson>(p)?.poly()?);
    }
    input.facts = fact_set(&args.facts)?;

    let r = analyze(&input)?;
    let mut text = Vec::new();
    let mut findings = Vec::new();
    for f in &r.findings {
        text.push(format!("[{}] {}", f.module, f.statement));
        if cli.cite {
            text.push(format!("  [{}]", f.citation));
            findings.push(json!({ "module": f.module, "statement": f.statement, "citation": f.citation }));
        } else {
            findings.push(json!({ "module": f.module, "statement": f.statement }));
        }
    }
    let mut extra = Map::new();
    extra.insert("verdict".into(), json!(r.verdict.as_str()));
    extra.insert("findings".into(), Value::Array(findings));
    let mut out = report_output(cli, &r.report, extra, text);
    out.text.push(format!("verdict: {}", r.verdict.as_str()));
    Ok(out)
}
