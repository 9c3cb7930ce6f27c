use std::collections::BTreeSet;
use std::fmt::Write as _;

use closure_lattice::oracle::{enumerate_closures_naive, mlb_closure_by_intersection, INTERSECTION_LIMIT, NAIVE_CLOSURE_LIMIT};
use closure_lattice::{
    check_anti_exchange, closed_form_char_poly, closed_maximals, has_cover_property, ElementSet, LcLattice,
    Polynomial, Poset,
};
use serde_json::{json, Value};

use crate::{CliError, Settings};

/// Output of one verb: human text, the JSON mirror, and an invariant
/// violation if a guaranteed property failed.
#[derive(Debug, Clone)]
pub struct Report {
    pub human: String,
    pub json: Value,
    pub violation: Option<String>,
}

impl Report {
    fn violate(&mut self, message: String) {
        if self.violation.is_none() {
            self.violation = Some(message);
        }
    }
}

fn labels(p: &Poset, set: ElementSet) -> Value {
    json!(p.labels_of(set))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub(crate) fn build_lattice(p: &Poset, settings: Settings) -> Result<LcLattice, CliError> {
    Ok(LcLattice::build(p, settings.size_limit)?)
}

/// Appends the brute-force cross-check when `--oracle` is set.
fn oracle_section(p: &Poset, lattice: &LcLattice, settings: Settings, report: &mut Report) {
    if !settings.oracle {
        return;
    }
    if p.len() > NAIVE_CLOSURE_LIMIT {
        let _ = writeln!(
            report.human,
            "oracle: SKIPPED (|P| = {} exceeds the naive enumeration limit {NAIVE_CLOSURE_LIMIT})",
            p.len()
        );
        report.json["oracle"] = json!({ "status": "skipped" });
        return;
    }
    let naive: BTreeSet<Vec<usize>> = enumerate_closures_naive(p)
        .expect("size checked above")
        .into_iter()
        .map(|h| h.image().to_vec())
        .collect();
    let built: BTreeSet<Vec<usize>> = lattice.closures().into_iter().map(|h| h.image().to_vec()).collect();
    let closures_agree = naive == built;
    let floor_agrees = p.len() > INTERSECTION_LIMIT
        || mlb_closure_by_intersection(p, ElementSet::EMPTY).expect("size checked") == closed_maximals(p);
    let agree = closures_agree && floor_agrees;
    let _ = writeln!(
        report.human,
        "oracle: {} ({} closures by brute force, {} in the lattice)",
        if agree { "AGREE" } else { "DISAGREE" },
        naive.len(),
        built.len()
    );
    report.json["oracle"] = json!({
        "status": if agree { "agree" } else { "disagree" },
        "naive_closures": naive.len(),
        "lattice_closures": built.len(),
    });
    if !agree {
        report.violate(format!(
            "brute-force enumeration found {} closures, the lattice has {}",
            naive.len(),
            built.len()
        ));
    }
}

pub fn info(p: &Poset, settings: Settings) -> Result<Report, CliError> {
    let maximal = p.maximal_elements();
    let floor = closed_maximals(p);
    let greatest = p.greatest_element().map(|x| p.label(x).to_owned());
    let least = p.least_element().map(|x| p.label(x).to_owned());
    let mut human = String::new();
    let _ = writeln!(human, "elements: {} ({})", p.len(), p.labels().join(", "));
    let _ = writeln!(human, "cover pairs: {}", p.cover_pairs().len());
    let _ = writeln!(human, "maximal elements M: {}", p.format_set(maximal));
    let _ = writeln!(human, "mlb-closure of M: {}", p.format_set(floor));
    let _ = writeln!(human, "greatest element: {}", greatest.as_deref().unwrap_or("none"));
    let _ = writeln!(human, "least element: {}", least.as_deref().unwrap_or("none"));
    let _ = writeln!(human, "unique-cover elements: {}", p.format_set(p.covered_by_unique()));
    let _ = writeln!(human, "is a lattice: {}", yes(p.is_lattice()));
    let covers: Vec<[&str; 2]> = p.cover_pairs().into_iter().map(|(x, y)| [p.label(x), p.label(y)]).collect();
    let mut report = Report {
        human,
        json: json!({
            "elements": p.labels(),
            "covers": covers,
            "maximal": labels(p, maximal),
            "closed_maximals": labels(p, floor),
            "greatest": greatest,
            "least": least,
            "unique_cover_elements": labels(p, p.covered_by_unique()),
            "is_lattice": p.is_lattice(),
        }),
        violation: None,
    };
    if settings.oracle {
        let lattice = build_lattice(p, settings)?;
        oracle_section(p, &lattice, settings, &mut report);
    }
    Ok(report)
}

pub fn closures(p: &Poset, settings: Settings, maps: bool) -> Result<Report, CliError> {
    let lattice = build_lattice(p, settings)?;
    let mut human = String::new();
    let _ = writeln!(human, "{} closure relations", lattice.len());
    let mut entries = Vec::new();
    for node in 0..lattice.len() {
        let h = lattice.closure(node);
        if maps {
            let _ = writeln!(human, "# node {node}");
            human.push_str(&h.to_string());
        } else {
            let _ = writeln!(human, "{}", h.display_closed());
        }
        let image: Vec<[&str; 2]> = (0..p.len()).map(|x| [p.label(x), p.label(h.apply(x))]).collect();
        entries.push(json!({
            "node": node,
            "closed": labels(p, h.closed_set()),
            "map": image,
        }));
    }
    let mut report = Report {
        human,
        json: json!({ "count": lattice.len(), "closures": entries }),
        violation: None,
    };
    oracle_section(p, &lattice, settings, &mut report);
    Ok(report)
}

fn node_table(p: &Poset, lattice: &LcLattice, extra: Option<(&str, &dyn Fn(usize) -> String)>) -> String {
    let mut out = String::new();
    match extra {
        Some((title, _)) => {
            let _ = writeln!(out, "{:>4}  {:>4}  {:>4}  {:<8} closed set", "node", "rank", "μ", title);
        }
        None => {
            let _ = writeln!(out, "{:>4}  {:>4}  {:>4}  closed set", "node", "rank", "μ");
        }
    }
    for node in 0..lattice.len() {
        let set = p.format_set(lattice.closed_set(node));
        let (rank, mu) = (lattice.rank(node), lattice.mobius()[node]);
        match extra {
            Some((_, cell)) => {
                let _ = writeln!(out, "{node:>4}  {rank:>4}  {mu:>4}  {:<8} {set}", cell(node));
            }
            None => {
                let _ = writeln!(out, "{node:>4}  {rank:>4}  {mu:>4}  {set}");
            }
        }
    }
    out
}

pub fn lattice(p: &Poset, settings: Settings) -> Result<Report, CliError> {
    let lattice = build_lattice(p, settings)?;
    let top = lattice.top();
    let atoms = lattice.atoms();
    let mut human = String::new();
    let _ = writeln!(human, "nodes: {}", lattice.len());
    let _ = writeln!(human, "cover edges: {}", lattice.hasse().len());
    let _ = writeln!(human, "rank: {}", lattice.rank(top));
    let _ = writeln!(human, "ranked: {}", yes(lattice.is_ranked()));
    let _ = writeln!(human, "atoms: {}", atoms.len());
    for &a in &atoms {
        let _ = writeln!(human, "  {}", lattice.closure(a).display_closed());
    }
    human.push_str(&node_table(p, &lattice, None));

    let nodes: Vec<Value> = (0..lattice.len())
        .map(|n| {
            json!({
                "node": n,
                "rank": lattice.rank(n),
                "mobius": lattice.mobius()[n],
                "closed": labels(p, lattice.closed_set(n)),
            })
        })
        .collect();
    let mut report = Report {
        human,
        json: json!({
            "nodes": lattice.len(),
            "cover_edges": lattice.hasse(),
            "rank": lattice.rank(top),
            "ranked": lattice.is_ranked(),
            "atoms": atoms,
            "table": nodes,
        }),
        violation: None,
    };
    let expected_rank = p.len() - closed_maximals(p).len();
    if !lattice.is_ranked() || lattice.rank(top) != expected_rank {
        report.violate(format!(
            "rank of top is {} (expected |P| - |closure(M)| = {expected_rank}), ranked = {}",
            lattice.rank(top),
            lattice.is_ranked()
        ));
    }
    oracle_section(p, &lattice, settings, &mut report);
    Ok(report)
}

fn poly_json(poly: &Polynomial) -> Value {
    json!({
        "factored": poly.factored("λ"),
        "expanded": poly.expanded("λ"),
        "coefficients": poly.coefficients(),
    })
}

pub fn charpoly(p: &Poset, settings: Settings) -> Result<Report, CliError> {
    let lattice = build_lattice(p, settings)?;
    let definitional = lattice.characteristic_polynomial();
    let mut human = String::new();
    let _ = writeln!(
        human,
        "definitional: {}    = {}",
        definitional,
        definitional.expanded("λ")
    );
    let mut json = json!({ "definitional": poly_json(&definitional) });
    let mut violation = None;
    match closed_form_char_poly(p) {
        Ok(closed) => {
            let agree = closed.polynomial == definitional;
            let _ = writeln!(
                human,
                "closed form:  {}    (s = {}, m = {}, |P| = {})",
                closed.polynomial,
                closed.unique_covers,
                closed.closed_maximals,
                p.len()
            );
            let _ = writeln!(human, "coefficients: {:?}", definitional.coefficients());
            let _ = writeln!(human, "verdict: {}", if agree { "AGREE" } else { "DISAGREE" });
            json["closed_form"] = poly_json(&closed.polynomial);
            json["s"] = json!(closed.unique_covers);
            json["m"] = json!(closed.closed_maximals);
            json["verdict"] = json!(if agree { "AGREE" } else { "DISAGREE" });
            if !agree {
                violation = Some(format!(
                    "Möbius sum {} differs from closed form {}",
                    definitional, closed.polynomial
                ));
            }
        }
        Err(e) => {
            let _ = writeln!(human, "closed form: unavailable ({e})");
            let _ = writeln!(human, "verdict: DISAGREE");
            json["closed_form"] = Value::Null;
            json["verdict"] = json!("DISAGREE");
            violation = Some(e.to_string());
        }
    }
    let atoms = lattice.atoms().len();
    let multiplicity = definitional.root_multiplicity(1);
    let _ = writeln!(human, "atoms: {atoms}, multiplicity of root 1: {multiplicity}");
    json["atoms"] = json!(atoms);
    json["root_one_multiplicity"] = json!(multiplicity);
    let mut report = Report { human, json, violation };
    if atoms != multiplicity {
        report.violate(format!("{atoms} atoms but root 1 has multiplicity {multiplicity}"));
    }
    oracle_section(p, &lattice, settings, &mut report);
    Ok(report)
}

pub fn modular(p: &Poset, settings: Settings) -> Result<Report, CliError> {
    let lattice = build_lattice(p, settings)?;
    let has_top = p.greatest_element().is_some();
    let flags: Vec<bool> = (0..lattice.len())
        .map(|n| {
            if has_top {
                has_cover_property(&lattice.closure(n)).expect("poset has a greatest element")
            } else {
                lattice.is_modular_bruteforce(n)
            }
        })
        .collect();
    let method = if has_top { "cover property" } else { "brute force" };

    let mut human = String::new();
    if !has_top {
        let _ = writeln!(
            human,
            "note: P has no greatest element, so the cover-property test does not apply; checking all pairs instead"
        );
    }
    let cell = |n: usize| yes(flags[n]).to_owned();
    human.push_str(&node_table(p, &lattice, Some(("modular", &cell))));
    let count = flags.iter().filter(|&&f| f).count();
    let _ = writeln!(human, "modular elements: {count} of {}", lattice.len());
    let _ = writeln!(human, "method: {method}");

    let nodes: Vec<Value> = (0..lattice.len())
        .map(|n| json!({ "node": n, "closed": labels(p, lattice.closed_set(n)), "modular": flags[n] }))
        .collect();
    let mut report = Report {
        human,
        json: json!({ "method": method, "modular_count": count, "nodes": nodes }),
        violation: None,
    };

    if has_top && settings.oracle {
        let mismatches: Vec<usize> = (0..lattice.len())
            .filter(|&n| lattice.is_modular_bruteforce(n) != flags[n])
            .collect();
        let _ = writeln!(
            report.human,
            "brute-force modularity: {}",
            if mismatches.is_empty() { "AGREE" } else { "DISAGREE" }
        );
        report.json["bruteforce_agrees"] = json!(mismatches.is_empty());
        if let Some(&n) = mismatches.first() {
            report.violate(format!(
                "node {n} ({}) : cover property and brute-force modularity disagree",
                p.format_set(lattice.closed_set(n))
            ));
        }
    }
    for &end in &[lattice.bottom(), lattice.top()] {
        if !flags[end] {
            report.violate(format!("extreme node {end} reported as not modular"));
        }
    }
    oracle_section(p, &lattice, settings, &mut report);
    Ok(report)
}

pub fn mchain(p: &Poset, settings: Settings) -> Result<Report, CliError> {
    let lattice = build_lattice(p, settings)?;
    let chain = lattice.m_chain()?;
    let extension: Vec<&str> = p.linear_extension().into_iter().map(|x| p.label(x)).collect();
    let mut human = String::new();
    let _ = writeln!(human, "linear extension: {}", extension.join(", "));
    let _ = writeln!(human, "M-chain ({} nodes, bottom to top):", chain.len());
    let mut all_modular = true;
    for &n in &chain {
        let modular = lattice.is_modular_bruteforce(n);
        all_modular &= modular;
        let _ = writeln!(
            human,
            "{n:>4}  rank {}  modular {}  {}",
            lattice.rank(n),
            yes(modular),
            lattice.closure(n).display_closed()
        );
    }
    let maximal = chain.len() == lattice.rank(lattice.top()) + 1
        && chain.first() == Some(&lattice.bottom())
        && chain.last() == Some(&lattice.top())
        && chain.windows(2).all(|w| lattice.covers(w[0], w[1]));
    let _ = writeln!(human, "maximal chain: {}", yes(maximal));
    let _ = writeln!(human, "all modular: {}", yes(all_modular));

    let nodes: Vec<Value> = chain
        .iter()
        .map(|&n| json!({ "node": n, "rank": lattice.rank(n), "closed": labels(p, lattice.closed_set(n)) }))
        .collect();
    let mut report = Report {
        human,
        json: json!({
            "linear_extension": extension,
            "chain": nodes,
            "maximal": maximal,
            "all_modular": all_modular,
        }),
        violation: None,
    };
    if !maximal {
        report.violate("M-chain is not a maximal chain".to_owned());
    }
    if !all_modular {
        report.violate("M-chain contains a non-modular node".to_owned());
    }
    oracle_section(p, &lattice, settings, &mut report);
    Ok(report)
}

pub fn convexity(p: &Poset, settings: Settings) -> Result<Report, CliError> {
    let lattice = build_lattice(p, settings)?;
    let anti_exchange = check_anti_exchange(p, settings.size_limit)?;
    let join_distributive = lattice.join_distributive_violation();
    let semimodular = lattice.semimodular_violation();
    let ranked = lattice.is_ranked();

    let mut human = String::new();
    let mut report_json = json!({
        "anti_exchange": anti_exchange.is_none(),
        "join_distributive": join_distributive.is_none(),
        "semimodular": semimodular.is_none(),
        "ranked": ranked,
    });
    let mut violations = Vec::new();

    let _ = writeln!(human, "anti-exchange: {}", yes(anti_exchange.is_none()));
    if let Some(w) = anti_exchange {
        let text = format!(
            "closed set {} with {} and {} each in the other's closure",
            p.format_set(w.closed),
            p.label(w.x),
            p.label(w.y)
        );
        let _ = writeln!(human, "  witness: {text}");
        report_json["anti_exchange_witness"] = json!({
            "closed": labels(p, w.closed), "x": p.label(w.x), "y": p.label(w.y)
        });
        violations.push(format!("anti-exchange fails: {text}"));
    }
    let _ = writeln!(human, "join-distributive: {}", yes(join_distributive.is_none()));
    if let Some(q) = join_distributive {
        let text = format!("interval above node {q} {} is not Boolean", p.format_set(lattice.closed_set(q)));
        let _ = writeln!(human, "  witness: {text}");
        report_json["join_distributive_witness"] = json!(q);
        violations.push(format!("join-distributivity fails: {text}"));
    }
    let _ = writeln!(human, "semimodular: {}", yes(semimodular.is_none()));
    if let Some((a, b)) = semimodular {
        let text = format!("nodes {a} and {b} cover their meet but their join covers neither");
        let _ = writeln!(human, "  witness: {text}");
        report_json["semimodular_witness"] = json!([a, b]);
        violations.push(format!("semimodularity fails: {text}"));
    }
    let _ = writeln!(human, "ranked: {}", yes(ranked));
    if !ranked {
        violations.push("lattice is not ranked".to_owned());
    }

    let mut report = Report {
        human,
        json: report_json,
        violation: violations.into_iter().next(),
    };
    oracle_section(p, &lattice, settings, &mut report);
    Ok(report)
}

pub fn sublattice(p: &Poset, settings: Settings) -> Result<Report, CliError> {
    if p.greatest_element().is_none() {
        return Err(CliError::Input(
            "sublattice needs a poset with a greatest element".to_owned(),
        ));
    }
    let lattice = build_lattice(p, settings)?;
    let verdict = lattice.check_sublattice_of_partitions()?;

    let mut human = String::new();
    let failure_text = verdict.meet_failure.map(|f| {
        format!(
            "{},{} have maximal lower bounds {}",
            p.label(f.x),
            p.label(f.y),
            p.labels_of(f.bounds).join(",")
        )
    });
    if verdict.bottom_is_lattice {
        let _ = writeln!(human, "sublattice of Π(P): 0̂+P is a lattice");
    } else {
        let _ = writeln!(
            human,
            "NOT a sublattice of Π(P): 0̂+P is not a lattice (witness: {})",
            failure_text.as_deref().unwrap_or("no pair found")
        );
    }
    let _ = writeln!(human, "route 1 (0̂+P is a lattice): {}", yes(verdict.bottom_is_lattice));
    let _ = writeln!(human, "route 2 (every meet is a partition meet): {}", yes(verdict.meets_agree));
    let witness_json = verdict.partition_witness.map(|(a, b)| {
        let _ = writeln!(
            human,
            "  partition witness: nodes {a} {} and {b} {}",
            p.format_set(lattice.closed_set(a)),
            p.format_set(lattice.closed_set(b))
        );
        json!([labels(p, lattice.closed_set(a)), labels(p, lattice.closed_set(b))])
    });
    let agree = verdict.routes_agree();
    let _ = writeln!(human, "routes: {}", if agree { "AGREE" } else { "DISAGREE" });

    let mut report = Report {
        human,
        json: json!({
            "sublattice": verdict.bottom_is_lattice,
            "bottom_adjoined_is_lattice": verdict.bottom_is_lattice,
            "meets_are_partition_meets": verdict.meets_agree,
            "meet_failure": verdict.meet_failure.map(|f| json!({
                "pair": [p.label(f.x), p.label(f.y)],
                "maximal_lower_bounds": labels(p, f.bounds),
            })),
            "partition_witness": witness_json,
            "routes_agree": agree,
        }),
        violation: None,
    };
    if !agree {
        report.violate("the two sublattice tests disagree".to_owned());
    }
    oracle_section(p, &lattice, settings, &mut report);
    Ok(report)
}
