use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use lpa_core::classify::{
    acyclic_structure, center_description, chain_conditions, compare, dichotomy, gk_dimension,
    graded_ideals_with_guard, ideal_families_with_guard, lie_bracket_simple, predicate_battery, singular_count,
    Center, Dichotomy, GkDimension, LieVerdict,
};
use lpa_core::graph::{
    condition_k, condition_l, cycles, enumerate_hereditary_saturated_with_guard, has_cycle, is_cofinal,
    is_downward_directed, vertex_classes, DEFAULT_GUARD,
};
use lpa_core::ktheory::{det_i_minus_a, i_minus_a, invariant_factors, k0, smith_normal_form};
use lpa_core::monoid::{
    equal_bounded, group_without_zero_check, presentation, refinement_probe, separativity_probe, Equality,
};
use lpa_core::moves::{apply_script, compare_invariants, move_search, parse_script, SearchOutcome};
use lpa_core::numtheory::{count_achievable_partitions, extend_partition, i_r_inverse_check, partition};
use lpa_core::symbolic::{load_fixture, parse_element, verify_dagger, Bindings};
use lpa_core::{families, parse_graph, Field, Graph, LpaContext, Verdict, VertexSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::Section;

/// Errors with the module they came from.
#[derive(Debug)]
pub enum CliError {
    Core(lpa_core::Error),
    Io(String, std::io::Error),
    Usage(String),
}

impl CliError {
    pub fn module(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.module(),
            CliError::Io(..) => "io",
            CliError::Usage(_) => "cli",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "io: {path}: {e}"),
            CliError::Usage(msg) => write!(f, "cli: {msg}"),
        }
    }
}

impl<E: Into<lpa_core::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Core(e.into())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.into(), e))
}

/// A graph file, or `family:NAME` for a built-in family (R4, A3, B5, D3, E2, E4, toeplitz, three-vertex).
pub fn load_graph(arg: &str) -> Result<Graph> {
    if let Some(name) = arg.strip_prefix("family:") {
        if !Path::new(arg).exists() {
            return families::by_name(name).ok_or_else(|| CliError::Usage(format!("unknown family `{name}`")));
        }
    }
    Ok(parse_graph(&read(arg)?)?)
}

pub fn field(characteristic: u64) -> Result<Field> {
    Ok(Field::with_characteristic(characteristic)?)
}

/// Vertex count above which subset enumeration is refused; LPA_GUARD_VERTICES overrides it.
pub fn guard() -> Result<usize> {
    match std::env::var("LPA_GUARD_VERTICES") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("LPA_GUARD_VERTICES must be a number, got `{v}`"))),
        Err(_) => Ok(DEFAULT_GUARD),
    }
}

fn names(g: &Graph, s: &VertexSet) -> Vec<String> {
    g.vertex_set_ids(s)
}

fn set_text(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn list_text(items: &[String]) -> String {
    if items.is_empty() { "none".into() } else { items.join(", ") }
}

pub fn graph_section(g: &Graph) -> Section {
    Section::new("graph")
        .entry("vertices", g.vertex_count().to_string(), g.vertex_count())
        .entry("edges", g.edge_count().to_string(), g.edge_count())
        .entry("infinite bundles", g.omega_pairs().len().to_string(), g.omega_pairs().len())
}

fn sizes_text(blocks: &[(String, String)]) -> String {
    let parts: Vec<String> = blocks.iter().map(|(_, n)| format!("M_{n}(K)")).collect();
    format!("L ≅ {}", parts.join(" ⊕ "))
}

pub fn analyze(g: &Graph, characteristic: Option<u64>) -> Result<Vec<Section>> {
    let guard = guard()?;
    let row_finite = g.is_row_finite();
    let mut out = vec![graph_section(g)];

    let c = vertex_classes(g);
    let ids = |s: &VertexSet| names(g, s);
    out.push(
        Section::new("vertex classes")
            .entry("sinks", list_text(&ids(&c.sinks)), ids(&c.sinks))
            .entry("sources", list_text(&ids(&c.sources)), ids(&c.sources))
            .entry("regular", list_text(&ids(&c.regular)), ids(&c.regular))
            .entry("infinite emitters", list_text(&ids(&c.infinite_emitters)), ids(&c.infinite_emitters)),
    );

    let cs = cycles(g);
    let cycle_ids: Vec<Vec<String>> = cs.iter().map(|c| c.edges.iter().map(|&e| g.edge(e).id.clone()).collect()).collect();
    let cycle_text: Vec<String> = cycle_ids.iter().map(|c| c.join(".")).collect();
    out.push(
        Section::new("conditions")
            .entry("cycles", list_text(&cycle_text), &cycle_ids)
            .flag("condition (L)", condition_l(g))
            .flag("condition (K)", condition_k(g))
            .flag("cofinal", is_cofinal(g))
            .flag("downward directed", is_downward_directed(g)),
    );

    let lattice = enumerate_hereditary_saturated_with_guard(g, guard)?;
    let lattice_ids: Vec<Vec<String>> = lattice.iter().map(|h| ids(h)).collect();
    let lattice_text: Vec<String> = lattice_ids.iter().map(|h| set_text(h)).collect();
    out.push(
        Section::new("hereditary saturated sets")
            .entry("count", lattice.len().to_string(), lattice.len())
            .entry("sets", lattice_text.join(", "), &lattice_ids),
    );

    let pairs = graded_ideals_with_guard(g, guard)?;
    let pair_ids: Vec<(Vec<String>, Vec<String>)> = pairs.iter().map(|p| (ids(&p.h), ids(&p.s))).collect();
    let pair_text: Vec<String> =
        pair_ids.iter().map(|(h, s)| format!("(H = {}, S = {})", set_text(h), set_text(s))).collect();
    let mut ideals = Section::new("graded ideals")
        .cite("Structure Theorem for graded ideals (admissible pairs)")
        .entry("graded ideals", pairs.len().to_string(), pairs.len())
        .entry("pairs", pair_text.join(", "), &pair_ids);
    if row_finite {
        let fams = ideal_families_with_guard(g, guard)?;
        let fam_text: Vec<String> = fams
            .iter()
            .map(|f| {
                let cyc: Vec<String> =
                    f.cycles.iter().map(|c| c.edges.iter().map(|&e| g.edge(e).id.as_str()).collect::<Vec<_>>().join(".")).collect();
                format!("C_{} = {}", set_text(&ids(&f.h)), set_text(&cyc))
            })
            .collect();
        ideals = ideals.entry("cycle families", fam_text.join("; "), &fam_text);
    }
    out.push(ideals);

    let b = predicate_battery(g);
    out.push(
        Section::new("predicates")
            .cite("Simplicity Theorem; Purely Infinite Simplicity Theorem; primeness and primitivity criteria; exchange iff Condition (K)")
            .flag("prime", b.prime)
            .flag("primitive", b.primitive)
            .flag("exchange", b.exchange)
            .flag("simple", b.simple)
            .flag("purely infinite simple", b.purely_infinite_simple),
    );

    let structure = match dichotomy(g)? {
        Dichotomy::MatrixAlgebra(n) => Section::new("structure")
            .cite("structure theorem for finite acyclic graphs")
            .entry("algebra", format!("L ≅ M_{n}(K)"), serde_json::json!({ "MatrixAlgebra": n.to_string() })),
        Dichotomy::PurelyInfiniteSimple => Section::new("structure")
            .cite("Purely Infinite Simplicity Theorem (simple implies matrix algebra or purely infinite simple)")
            .entry("algebra", "purely infinite simple", "PurelyInfiniteSimple"),
        Dichotomy::NotSimple if row_finite && !has_cycle(g) => {
            let blocks: Vec<(String, String)> =
                acyclic_structure(g)?.into_iter().map(|b| (b.sink, b.size.to_string())).collect();
            Section::new("structure")
                .cite("structure theorem for finite acyclic graphs")
                .entry("algebra", sizes_text(&blocks), &blocks)
        }
        Dichotomy::NotSimple => Section::new("structure").entry("algebra", "not simple", "NotSimple"),
    };
    out.push(structure);

    if row_finite {
        let gk = gk_dimension(g)?;
        let gk_text = match gk {
            GkDimension::Exponential => "exponential growth".to_string(),
            GkDimension::Polynomial(d) => d.to_string(),
        };
        let cc = chain_conditions(g)?;
        out.push(
            Section::new("growth and chain conditions")
                .cite("GK-dimension theorem; chain conditions on graded ideals")
                .entry("GK dimension", gk_text, gk)
                .flag("dcc on ideals", cc.dcc)
                .flag("acc on ideals", cc.acc),
        );
    }

    let center = center_description(g);
    let center_text = match center {
        Center::ScalarMultiplesOfUnit => "K·1",
        Center::Zero => "0",
        Center::Unknown => "not determined",
    };
    out.push(Section::new("center").cite("center of simple Leavitt path algebras").entry("center", center_text, center));

    if row_finite {
        let mut lie = Section::new("Lie algebra [L, L]").cite("simplicity criterion for [L, L] via the row space of A_E - I");
        let mut chars = vec![0];
        chars.extend(characteristic.filter(|&p| p != 0));
        for p in chars {
            let f = field(p)?;
            let v = lie_bracket_simple(g, f)?;
            let text = match v {
                LieVerdict::Simple => "simple",
                LieVerdict::NotSimple => "not simple",
                LieVerdict::Inapplicable => "not applicable (L not simple or one vertex)",
            };
            lie = lie.entry(&format!("over {}", if p == 0 { "Q".to_string() } else { format!("F_{p}") }), text, v);
        }
        out.push(lie);
    }
    Ok(out)
}

fn k0_text(g: &Graph) -> Result<(String, lpa_core::FgAbelianGroup, String)> {
    let group = k0(g)?;
    let d = det_i_minus_a(g)?;
    Ok((format!("{group}; det = {d}"), group, d.to_string()))
}

pub fn k_theory(g: &Graph) -> Result<Vec<Section>> {
    let (text, group, d) = k0_text(g)?;
    let m = i_minus_a(g)?;
    let (_, diag, _) = smith_normal_form(&m);
    let factors: Vec<String> = invariant_factors(&diag).iter().map(|x| x.to_string()).collect();
    let rows: Vec<String> =
        (0..m.rows()).map(|i| format!("[{}]", m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
    let sinks = !vertex_classes(g).sinks.is_empty();
    let theorem = if sinks {
        "cokernel of I - A_E (the flow invariant; K0 itself differs when there are sinks)"
    } else {
        "K0 is the cokernel of I - A_E (graph monoid relations [v] = Σ [r(e)])"
    };
    Ok(vec![
        graph_section(g),
        Section::new("K-theory")
            .cite(theorem)
            .entry("K0", text, serde_json::json!({ "group": group, "det": d }))
            .entry("I - A", rows.join("\n"), &rows)
            .entry("Smith diagonal", factors.join(", "), &factors)
            .entry("singular vertices", singular_count(g).to_string(), singular_count(g)),
    ])
}

pub fn compare_graphs(e: &Graph, f: &Graph) -> Result<Vec<Section>> {
    let c = compare(e, f);
    let opt = |x: &Option<num_bigint::BigInt>| x.as_ref().map_or("undefined".to_string(), |d| d.to_string());
    let theorem = match c.verdict {
        Verdict::Isomorphic => "Restricted Algebraic Kirchberg-Phillips Theorem",
        Verdict::MoritaEquivalent => "Franks' classification of flow equivalence with Morita invariance of graph moves",
        Verdict::NotMoritaEquivalent => "K0 is a Morita invariant",
        Verdict::OpenKP => "Algebraic Kirchberg-Phillips Question (open when det(I - A) differs)",
        Verdict::Inapplicable => "classification applies to purely infinite simple algebras only",
    };
    let group_text = |g: &Option<lpa_core::FgAbelianGroup>| g.as_ref().map_or("undefined".to_string(), |g| g.to_string());
    let mut s = Section::new("comparison")
        .cite(theorem)
        .entry("verdict", format!("{:?}; det {} vs {}", c.verdict, opt(&c.det_e), opt(&c.det_f)), &c)
        .text("K0(E)", group_text(&c.k0_e))
        .text("K0(F)", group_text(&c.k0_f));
    if let Some(p) = c.pointed_iso {
        s = s.entry("unit-preserving isomorphism", format!("{p:?}"), p);
    }
    s = s
        .flag("E purely infinite simple", predicate_battery(e).purely_infinite_simple)
        .flag("F purely infinite simple", predicate_battery(f).purely_infinite_simple);
    Ok(vec![s])
}

pub fn move_apply(g: &Graph, script: &str) -> Result<Vec<Section>> {
    let moves = parse_script(script)?;
    let graphs = apply_script(g, &moves)?;
    let mut steps = Section::new("moves").cite("graph moves preserve coker(I - A) and det(I - A) (Franks)");
    let mut all = true;
    for (i, m) in moves.iter().enumerate() {
        let check = compare_invariants(&graphs[i], &graphs[i + 1])?;
        all &= check.preserved();
        let text = format!(
            "{m}: {} -> {}; det {} -> {}; {}",
            check.k0_before,
            check.k0_after,
            check.det_before,
            check.det_after,
            if check.preserved() { "preserved" } else { "CHANGED" }
        );
        steps = steps.entry(&format!("step {}", i + 1), text, serde_json::json!({ "move": m, "check": check }));
    }
    let last = graphs.last().expect("input graph");
    steps = steps.flag("invariants preserved", all).text("result", last.to_string().trim_end());
    Ok(vec![graph_section(g), steps])
}

pub fn move_search_cmd(e: &Graph, f: &Graph, depth: usize) -> Result<Vec<Section>> {
    let outcome = move_search(e, f, depth)?;
    let text = match &outcome {
        SearchOutcome::SequenceFound(ms) if ms.is_empty() => "graphs are isomorphic".to_string(),
        SearchOutcome::SequenceFound(ms) => ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("; "),
        SearchOutcome::NotFoundWithinDepth { explored, reason } => {
            format!("no sequence within depth {depth} ({explored} graphs explored): {reason}")
        }
    };
    Ok(vec![Section::new("move search")
        .cite("Franks' Theorem: flow equivalent graphs are joined by graph moves")
        .entry("outcome", text, &outcome)])
}

pub struct MonoidOptions {
    pub bound: u32,
    pub queries: Vec<String>,
    pub group: bool,
    pub probes: usize,
    pub seed: u64,
}

pub fn monoid(g: &Graph, opts: &MonoidOptions) -> Result<Vec<Section>> {
    let p = presentation(g);
    let relations: Vec<String> = p
        .relations
        .iter()
        .map(|r| {
            let rhs = lpa_core::monoid::MonoidElement(r.rhs.clone());
            format!("{} = {}", p.generators[r.vertex], p.display(&rhs))
        })
        .collect();
    let mut out = vec![Section::new("presentation")
        .entry("generators", p.generators.join(", "), &p.generators)
        .entry("relations", if relations.is_empty() { "none".into() } else { relations.join("\n") }, &relations)];
    if !opts.queries.is_empty() {
        let mut s = Section::new("word problem").entry("bound", opts.bound.to_string(), opts.bound);
        for q in &opts.queries {
            let (l, r) = q.split_once('=').ok_or_else(|| CliError::Usage(format!("query `{q}` needs `=`")))?;
            let (x, y) = (p.parse_element(l)?, p.parse_element(r)?);
            let verdict = equal_bounded(&p, &x, &y, opts.bound)?;
            let text = match verdict {
                Equality::Equal => "equal".to_string(),
                Equality::NotEqualWithinBound => format!("not equal within bound {}", opts.bound),
            };
            s = s.entry(q.trim(), text, verdict);
        }
        out.push(s);
    }
    if opts.group {
        let check = group_without_zero_check(g, opts.bound)?;
        out.push(
            Section::new("nonzero classes")
                .cite("graph monoid of a purely infinite simple algebra: nonzero classes form K0")
                .entry("status", format!("{:?}: {}", check.status, check.detail), &check),
        );
    }
    if opts.probes > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let sep = separativity_probe(&p, opts.probes, opts.bound, &mut rng);
        let refi = refinement_probe(&p, opts.probes, opts.bound, &mut rng);
        let text = |r: &lpa_core::monoid::ProbeReport| format!("{} samples, {} tested, {} violations", r.samples, r.tested, r.violations);
        out.push(
            Section::new("probes")
                .cite("graph monoids are refinement monoids and separative")
                .entry("separativity", text(&sep), &sep)
                .entry("refinement", text(&refi), &refi),
        );
    }
    Ok(out)
}

pub fn dagger(text: &str) -> Result<Vec<Section>> {
    let fx = load_fixture(text)?;
    let report = verify_dagger(&fx.xs, &fx.ys)?;
    Ok(vec![Section::new("relations")
        .cite("Y_i X_j = δ_ij I and Σ X_i Y_i = I")
        .entry("matrices", format!("{} pairs of {}×{}", report.n, report.dim, report.dim), serde_json::json!({ "n": report.n, "dim": report.dim }))
        .entry("result", report.to_string(), &report)])
}

pub fn normal_form(g: &Graph, expr: &str, characteristic: u64) -> Result<Vec<Section>> {
    let ctx = LpaContext::new(g.clone(), field(characteristic)?)?;
    let x = parse_element(&ctx, expr, &Bindings::new())?;
    let designated: Vec<String> = (0..g.vertex_count())
        .filter_map(|v| ctx.designated_edge(v).map(|e| format!("{}: {}", g.vertex_id(v), g.edge(e).id)))
        .collect();
    Ok(vec![Section::new("normal form")
        .cite("basis of normal monomials αβ* (CK2 eliminated at one edge per vertex)")
        .text("input", expr.trim())
        .entry("excluded edges", list_text(&designated), &designated)
        .text("normal form", &x)
        .entry("terms", x.len().to_string(), x.len())])
}

pub fn partition_cmd(d: u64, r: u64, extend: Option<u64>) -> Result<Vec<Section>> {
    let p = partition(d, r)?;
    let show = |xs: &BTreeSet<u64>| set_text(&xs.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    let seq = |xs: &[u64]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    let mut s = Section::new("partition")
        .entry("sequence", seq(&p.sigma), &p.sigma)
        .entry("step", p.s.to_string(), p.s)
        .entry("i_r", p.i_r.to_string(), p.i_r)
        .flag("i_r (r - 1) ≡ 1 mod d", i_r_inverse_check(d, r)?)
        .entry("S1", show(&p.s1), &p.s1)
        .entry("S2", show(&p.s2), &p.s2);
    let c = count_achievable_partitions(d)?;
    s = s.entry("partitions for this d", format!("{} (φ(d) = {})", c.count, c.phi), serde_json::json!({ "count": c.count, "phi": c.phi }));
    let mut out = vec![s];
    if let Some(n) = extend {
        let e = extend_partition(d, n)?;
        if e.r != r {
            return Err(CliError::Usage(format!("n = {n} is {} mod {d}, not r = {r}", e.r)));
        }
        out.push(Section::new("extension").entry("n", n.to_string(), n).entry("S1", show(&e.s1), &e.s1).entry("S2", show(&e.s2), &e.s2));
    }
    Ok(out)
}

pub fn splice(g: &Graph, v: &str) -> Result<Vec<Section>> {
    let h = g.cuntz_splice(v)?;
    let check = compare_invariants(g, &h)?;
    Ok(vec![Section::new("Cuntz splice")
        .cite("the Cuntz splice keeps coker(I - A) and flips the sign of det(I - A)")
        .text("K0 before", &check.k0_before)
        .text("K0 after", &check.k0_after)
        .entry("det", format!("{} -> {}", check.det_before, check.det_after), serde_json::json!([check.det_before.to_string(), check.det_after.to_string()]))
        .text("graph", h.to_string().trim_end())])
}
