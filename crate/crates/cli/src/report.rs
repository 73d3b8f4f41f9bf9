use std::fmt::Write as _;
use std::io::Write as _;

use anyhow::Result;
use gmatk::gma::{first_non_c_chordal_circuit, first_non_quadratic_circuit, first_non_t_chordal_circuit, is_line_closed, LINE_CLOSED_CAP};
use gmatk::graph::{
    find_induced_trampoline, is_chordal, is_strongly_chordal, mat_labeling, strong_edge_elimination_order, verify_seeo,
    Chordality, MatLabeling, TrampolineSearch,
};
use gmatk::groebner::{
    certify_order, first_non_mat_circuit, lex_initial_ideal, search_strong_elimination_order, SearchOptions, Strategy,
};
use gmatk::reproduce::{run_criterion, Context, CRITERIA};
use gmatk::resolution::{check_trampoline_functional_equation, hs_poincare_residual, koszul_probe, StructuredAlgebra};
use gmatk::{build_gma, ElementOrder, ElementSet, Error, Graph, NamedMatroid};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{BettiArgs, ChordalityArgs, Format, GroebnerArgs, MatroidArgs, ReproduceArgs, RunConfig};

/// Rendered output and exit code.
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }

    fn json(value: Value) -> Self {
        Output::ok(format!("{}\n", serde_json::to_string_pretty(&value).expect("JSON value serializes")))
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn no_dot(what: &str) -> anyhow::Error {
    Error::BadArgument(format!("--format dot is not available for {what}")).into()
}

pub fn matroid_info(config: &RunConfig, args: &MatroidArgs) -> Result<Output> {
    let inst = config.load()?;
    let m = &inst.matroid;
    let lattice = m.flats()?;
    if config.format == Format::Dot {
        return Ok(Output::ok(lattice.to_dot()));
    }
    let whitney = lattice.whitney_numbers();
    let max_size = m.circuits().iter().map(|c| c.len()).max().unwrap_or(0);
    let mut by_size = vec![0usize; max_size + 1];
    for c in m.circuits() {
        by_size[c.len()] += 1;
    }
    if config.format == Format::Json {
        let mut v = json!({
            "instance": inst.name,
            "ground": m.ground_size(),
            "rank": m.rank(),
            "circuits": m.circuits().len(),
            "circuits_by_size": by_size,
            "whitney": whitney,
            "flats": lattice.len(),
            "simple": m.is_simple(),
        });
        if args.lattice {
            v["lattice"] = lattice.to_json();
        }
        return Ok(Output::json(v));
    }
    let mut s = String::new();
    let _ = writeln!(s, "instance:   {}", inst.name);
    let _ = writeln!(s, "ground set: {}", m.ground_size());
    let _ = writeln!(s, "rank:       {}", m.rank());
    let sizes: Vec<String> = by_size
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(k, n)| format!("{n} of size {k}"))
        .collect();
    if sizes.is_empty() {
        let _ = writeln!(s, "circuits:   0");
    } else {
        let _ = writeln!(s, "circuits:   {} ({})", m.circuits().len(), sizes.join(", "));
    }
    let _ = writeln!(s, "Whitney:    {}", tuple(&whitney));
    let _ = writeln!(s, "flats:      {}", lattice.len());
    let _ = writeln!(s, "simple:     {}", yes(m.is_simple()));
    if args.lattice {
        for r in 0..=lattice.rank() {
            let flats: Vec<String> = lattice.of_rank(r).map(|f| lattice.flat(f).elements.to_string()).collect();
            let _ = writeln!(s, "rank {r} flats: {}", flats.join(" "));
        }
    }
    Ok(Output::ok(s))
}

struct GraphReport {
    chordality: Chordality,
    strongly_chordal: bool,
    trampoline: Option<TrampolineSearch>,
    labeling: Option<MatLabeling>,
    seeo: Option<(Vec<usize>, bool)>,
}

fn graph_report(g: &Graph) -> Result<GraphReport> {
    let chordality = is_chordal(g);
    let strongly_chordal = is_strongly_chordal(g).is_some();
    let trampoline = if chordality.is_chordal() && !strongly_chordal {
        Some(find_induced_trampoline(g)?)
    } else {
        None
    };
    let labeling = mat_labeling(g);
    let seeo = strong_edge_elimination_order(g).map(|order| {
        let ok = verify_seeo(g, &order, false).ok;
        (order, ok)
    });
    Ok(GraphReport {
        chordality,
        strongly_chordal,
        trampoline,
        labeling,
        seeo,
    })
}

fn graph_dot(g: &Graph, labeling: Option<&MatLabeling>) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(s, "  v{v};");
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match labeling {
            Some(lab) => {
                let _ = writeln!(s, "  v{u} -- v{v} [label=\"{}\"];", lab.labels[e]);
            }
            None => {
                let _ = writeln!(s, "  v{u} -- v{v};");
            }
        }
    }
    s.push_str("}\n");
    s
}

pub fn chordality(config: &RunConfig, _args: &ChordalityArgs) -> Result<Output> {
    let inst = config.load()?;
    let m = &inst.matroid;
    let graph = match &inst.graph {
        Some(g) => Some(graph_report(g)?),
        None => None,
    };
    if config.format == Format::Dot {
        let g = inst.graph.as_ref().ok_or_else(|| no_dot("a matroid without a graph"))?;
        let labeling = graph.as_ref().and_then(|r| r.labeling.as_ref());
        return Ok(Output::ok(graph_dot(g, labeling)));
    }
    let not_c = first_non_c_chordal_circuit(m)?;
    let not_t = first_non_t_chordal_circuit(m)?;
    let line_closed = is_line_closed(m, LINE_CLOSED_CAP)?;
    let not_quadratic = first_non_quadratic_circuit(m)?;

    if config.format == Format::Json {
        let mut v = json!({
            "instance": inst.name,
            "matroid": {
                "c_chordal": not_c.is_none(),
                "t_chordal": not_t.is_none(),
                "line_closed": line_closed,
                "quadratic": not_quadratic.is_none(),
                "non_c_chordal_circuit": not_c,
                "non_t_chordal_circuit": not_t,
                "non_quadratic_circuit": not_quadratic,
            },
        });
        if let (Some(r), Some(g)) = (&graph, &inst.graph) {
            let trampoline = match &r.trampoline {
                Some(TrampolineSearch::Found { n, vertices }) => json!({"n": n, "vertices": vertices}),
                _ => Value::Null,
            };
            v["graph"] = json!({
                "chordal": r.chordality.is_chordal(),
                "elimination_order": r.chordality.order(),
                "chordless_cycle": match &r.chordality {
                    Chordality::NotChordal(c) => Some(c.clone()),
                    Chordality::Chordal(_) => None,
                },
                "strongly_chordal": r.strongly_chordal,
                "trampoline": trampoline,
                "mat_labeling": r.labeling.as_ref().map(|l| l.to_json(g)),
                "seeo": r.seeo.as_ref().map(|(order, _)| order),
                "seeo_verified": r.seeo.as_ref().map(|(_, ok)| ok),
            });
        }
        return Ok(Output::json(v));
    }

    let mut s = String::new();
    let _ = writeln!(s, "instance: {}", inst.name);
    if let (Some(r), Some(g)) = (&graph, &inst.graph) {
        match &r.chordality {
            Chordality::Chordal(order) => {
                let _ = writeln!(s, "chordal: yes (perfect elimination order {})", tuple(order));
            }
            Chordality::NotChordal(cycle) => {
                let _ = writeln!(s, "chordal: no (chordless cycle {})", tuple(cycle));
            }
        }
        let _ = writeln!(s, "strongly chordal: {}", yes(r.strongly_chordal));
        if let Some(TrampolineSearch::Found { n, vertices }) = &r.trampoline {
            let _ = writeln!(s, "induced trampoline: n = {n} on vertices {}", tuple(vertices));
        }
        match &r.labeling {
            Some(lab) => {
                let parts: Vec<String> = g
                    .edges()
                    .iter()
                    .zip(&lab.labels)
                    .map(|(&(u, v), l)| format!("{u}{v}:{l}"))
                    .collect();
                let _ = writeln!(s, "MAT-labeling: {}", parts.join(" "));
            }
            None => {
                let _ = writeln!(s, "MAT-labeling: none");
            }
        }
        match &r.seeo {
            Some((order, ok)) => {
                let _ = writeln!(
                    s,
                    "strong edge elimination order: {} ({})",
                    tuple(order),
                    if *ok { "verified" } else { "FAILED verification" }
                );
            }
            None => {
                let _ = writeln!(s, "strong edge elimination order: none");
            }
        }
    }
    let witness = |c: &Option<ElementSet>| match c {
        Some(c) => format!("no (circuit {c})"),
        None => "yes".to_string(),
    };
    let _ = writeln!(s, "C-chordal: {}", witness(&not_c));
    let _ = writeln!(s, "T-chordal: {}", witness(&not_t));
    let _ = writeln!(s, "line-closed: {}", yes(line_closed));
    let _ = writeln!(s, "quadratic: {}", witness(&not_quadratic));
    let code = match &graph {
        Some(GraphReport { seeo: Some((_, false)), .. }) => 4,
        _ => 0,
    };
    Ok(Output { text: s, code })
}

fn parse_order(spec: &str, n: usize, seed: u64) -> Result<ElementOrder> {
    if spec == "random" {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        return Ok(ElementOrder::new(order)?);
    }
    let order = spec
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad element id '{t}' in --order"))))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if order.len() != n {
        return Err(Error::BadArgument(format!("--order lists {} elements, the ground set has {n}", order.len())).into());
    }
    Ok(ElementOrder::new(order)?)
}

pub fn groebner(config: &RunConfig, args: &GroebnerArgs) -> Result<Output> {
    let inst = config.load()?;
    let m = &inst.matroid;
    if config.format == Format::Dot {
        return Err(no_dot("groebner"));
    }
    if let Some(spec) = &args.order {
        m.require_simple()?;
        let order = parse_order(spec, m.ground_size(), config.seed)?;
        let certified = certify_order(m, &order)?;
        let witness = first_non_mat_circuit(m, &order);
        let initial = lex_initial_ideal(m, &order);
        if config.format == Format::Json {
            return Ok(Output::json(json!({
                "instance": inst.name,
                "order": order.elements(),
                "certified": certified,
                "non_mat_circuit": witness,
                "initial_ideal": {
                    "degree_histogram": initial.degree_histogram(),
                    "quadratic": initial.is_quadratic(),
                    "squarefree_generators": initial.squarefree,
                },
            })));
        }
        let mut s = String::new();
        let _ = writeln!(s, "instance: {}", inst.name);
        let _ = writeln!(s, "order: {}", tuple(order.elements()));
        let _ = writeln!(s, "certified: {}", yes(certified));
        if let Some(c) = witness {
            let _ = writeln!(s, "circuit that is not a MAT-circuit: {c}");
        }
        let degrees: Vec<String> = initial
            .degree_histogram()
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(d, n)| format!("{n} of degree {d}"))
            .collect();
        let _ = writeln!(s, "lex initial ideal generators: {}", degrees.join(", "));
        let _ = writeln!(s, "lex initial ideal quadratic: {}", yes(initial.is_quadratic()));
        return Ok(Output::ok(s));
    }

    let strategy: Strategy = match &args.strategy {
        Some(s) => s.parse()?,
        None if inst.graph.is_some() => Strategy::GraphicMat,
        None => Strategy::DfsPruned,
    };
    let mut options = SearchOptions::new(strategy);
    options.node_limit = args.node_limit;
    let report = search_strong_elimination_order(m, &options, inst.graph.as_ref())?;
    if config.format == Format::Json {
        let mut v = report.to_json();
        v["instance"] = json!(inst.name);
        return Ok(Output::json(v));
    }
    let mut s = String::new();
    let _ = writeln!(s, "instance: {}", inst.name);
    let _ = writeln!(s, "strategy: {}", strategy.name());
    let _ = writeln!(s, "outcome: {}", report.outcome_name());
    if let Some(order) = report.found() {
        let _ = writeln!(s, "order: {}", tuple(order.elements()));
    }
    let _ = writeln!(s, "orders examined: {}", report.orders_examined);
    let _ = writeln!(s, "nodes visited: {}", report.nodes_visited);
    let _ = writeln!(s, "prefixes pruned: {}", report.pruned);
    if let Some(c) = report.witness_circuit {
        let _ = writeln!(s, "most frequent failing circuit: {c}");
    }
    if let Some(note) = &report.note {
        let _ = writeln!(s, "note: {note}");
    }
    Ok(Output::ok(s))
}

pub fn betti(config: &RunConfig, args: &BettiArgs) -> Result<Output> {
    let inst = config.load()?;
    if config.format == Format::Dot {
        return Err(no_dot("betti"));
    }
    let steps = args.steps;
    let degree_cap = args.degree_cap.unwrap_or(steps + 2);
    if degree_cap == 0 || degree_cap < steps {
        return Err(Error::BadArgument(format!("--degree-cap {degree_cap} must be positive and at least --steps {steps}")).into());
    }
    let alg = StructuredAlgebra::from_gma(&build_gma(&inst.matroid)?);
    let probe = koszul_probe(&alg, config.characteristic, steps, degree_cap - steps)?;
    let table = &probe.table;
    let partial = table.stopped_at.is_some();

    let mut hs = None;
    let mut functional = None;
    if args.check_identities && !partial {
        hs = Some(hs_poincare_residual(&alg, table));
        if let Some(NamedMatroid::Trampoline(n) | NamedMatroid::BrokenTrampoline(n)) = inst.named {
            functional = Some(check_trampoline_functional_equation(n, config.characteristic, steps)?);
        }
    }
    let code = if partial { 3 } else { 0 };

    if config.format == Format::Json {
        let v = json!({
            "instance": inst.name,
            "table": table.to_json(),
            "koszul_probe": {
                "linear_through": probe.linear_through,
                "first_nonlinear": probe.first_nonlinear,
            },
            "partial": partial,
            "hs_poincare_residual": hs,
            "functional_equation": functional.as_ref().map(|f| json!({
                "n": f.n,
                "holds": f.holds(),
                "residual": f.residual,
            })),
        });
        let mut out = Output::json(v);
        out.code = code;
        return Ok(out);
    }
    let mut s = String::new();
    let field = match config.characteristic {
        0 => "QQ".to_string(),
        p => format!("GF({p})"),
    };
    let _ = writeln!(s, "Betti table of k over the graded Möbius algebra of {}, {field}", inst.name);
    let _ = writeln!(s, "steps <= {steps}, internal degrees <= {degree_cap}");
    s.push('\n');
    s.push_str(&table.to_text());
    s.push('\n');
    if partial {
        let _ = writeln!(s, "PARTIAL: the size limit was reached; missing entries are unknown, not zero");
    }
    match probe.first_nonlinear {
        Some((i, j)) => {
            let _ = writeln!(s, "first nonlinear entry: beta_{i},{j} = {}", table.get(i, j));
        }
        None => {
            let _ = writeln!(s, "no nonlinear entry in range");
        }
    }
    let _ = writeln!(s, "linear through step {}", probe.linear_through);
    if let Some(r) = &hs {
        let _ = writeln!(s, "HS(t) P(-t) - 1 through t^{steps} (zero when Koszul): {r:?}");
    }
    if let Some(f) = &functional {
        if f.holds() {
            let _ = writeln!(s, "functional equation (n = {}): holds", f.n);
        } else {
            let _ = writeln!(s, "functional equation (n = {}): residual {:?}", f.n, f.residual);
        }
    }
    if args.check_identities && partial {
        let _ = writeln!(s, "identities not checked on a partial table");
    }
    Ok(Output { text: s, code })
}

pub fn reproduce(config: &RunConfig, args: &ReproduceArgs) -> Result<Output> {
    let ids: Vec<usize> = if args.criteria.is_empty() {
        (1..=CRITERIA).collect()
    } else {
        args.criteria.clone()
    };
    if let Some(&bad) = ids.iter().find(|&&id| id == 0 || id > CRITERIA) {
        return Err(Error::BadArgument(format!("no criterion {bad}; criteria are 1..={CRITERIA}")).into());
    }
    let mut ctx = Context::new();
    let mut results = Vec::with_capacity(ids.len());
    for id in ids {
        let r = run_criterion(id, &mut ctx);
        if config.format == Format::Text {
            println!("{r}");
            let _ = std::io::stdout().flush();
        }
        log::info!("criterion {id} done in {:.1}s", r.seconds);
        results.push(r);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let code = if failed == 0 { 0 } else { 4 };
    let text = match config.format {
        Format::Text => format!("{} passed, {failed} failed\n", results.len() - failed),
        Format::Json => {
            let v = json!({
                "passed": failed == 0,
                "criteria": serde_json::to_value(&results)?,
            });
            format!("{}\n", serde_json::to_string_pretty(&v)?)
        }
        Format::Dot => return Err(no_dot("reproduce-paper")),
    };
    Ok(Output { text, code })
}
