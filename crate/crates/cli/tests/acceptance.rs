//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use closure_lattice::oracle::{enumerate_closures_naive, random_poset, RandomPosetSpec};
use closure_lattice::{
    check_anti_exchange, closed_form_char_poly, closed_maximals, fixtures, has_cover_property, parse_poset,
    ClosureRelation, ElementSet, JoinAlgorithm, LcLattice, Polynomial, Poset, DEFAULT_SIZE_LIMIT,
};
use closure_lattice_cli::asciify;

const RANDOM_COUNT: u64 = 120;
const PROBABILITIES: [f64; 6] = [0.0, 0.2, 0.35, 0.5, 0.7, 1.0];

struct Case {
    name: String,
    poset: Poset,
    lattice: LcLattice,
    naive: Vec<ClosureRelation>,
}

/// The outcome of one criterion: failures are listed, a summary is printed either way.
struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), summary: String::new() }
    }

    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(message());
        }
    }
}

fn manifest_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn random_posets() -> Vec<(String, Poset)> {
    (0..RANDOM_COUNT)
        .map(|seed| {
            let require_top = seed % 4 == 0;
            let size = if require_top { 1 + seed % 5 } else { 1 + seed % 6 } as usize;
            let edge_probability = PROBABILITIES[(seed / 6) as usize % PROBABILITIES.len()];
            let spec = RandomPosetSpec { size, edge_probability, seed, require_top };
            let poset = random_poset(spec).expect("valid spec");
            (format!("random#{seed}(n={},p={edge_probability},top={require_top})", poset.len()), poset)
        })
        .collect()
}

/// μ(0̂, q), rank and χ computed straight from the naive closure list.
fn mobius_oracle(poset: &Poset, closures: &[ClosureRelation]) -> Polynomial {
    let n = closures.len();
    let leq = |a: &ClosureRelation, b: &ClosureRelation| (0..poset.len()).all(|x| poset.leq(a.apply(x), b.apply(x)));
    let less: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && leq(&closures[i], &closures[j])).collect())
        .collect();
    let bottom = (0..n).find(|&i| (0..n).all(|j| i == j || less[i][j])).expect("identity is least");
    let top = (0..n).find(|&i| (0..n).all(|j| i == j || less[j][i])).expect("lattice has a top");

    // process in an order where everything below q comes first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&q| (0..n).filter(|&p| less[p][q]).count());
    let mut mu = vec![0i64; n];
    let mut height = vec![0usize; n];
    for &q in &order {
        mu[q] = if q == bottom { 1 } else { -(0..n).filter(|&p| less[p][q]).map(|p| mu[p]).sum::<i64>() };
        height[q] = (0..n).filter(|&p| less[p][q]).map(|p| height[p] + 1).max().unwrap_or(0);
    }
    let mut coefficients = vec![0i64; height[top] + 1];
    for q in 0..n {
        coefficients[height[top] - height[q]] += mu[q];
    }
    Polynomial::new(coefficients)
}

fn criterion_1(cases: &[Case], elapsed: Duration) -> Outcome {
    let mut o = Outcome::new();
    for case in cases {
        let naive: BTreeSet<ElementSet> = case.naive.iter().map(|h| h.closed_set()).collect();
        let built: BTreeSet<ElementSet> = case.lattice.closed_sets().iter().copied().collect();
        o.check(naive == built && naive.len() == case.naive.len(), || {
            format!("{}: naive {} closures, build {} nodes", case.name, case.naive.len(), built.len())
        });
        for h in &case.naive {
            let same = case.lattice.node_of(h).map(|i| case.lattice.closure(i) == *h).unwrap_or(false);
            o.check(same, || format!("{}: closure {:?} missing or different in build", case.name, h.image()));
        }
    }
    o.check(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"));
    o.summary = format!("{} posets, naive enumeration = build node set ({:.2?})", cases.len(), elapsed);
    o
}

fn criterion_2(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    let mut pairs = 0usize;
    for case in cases {
        let p = &case.poset;
        let closures = case.lattice.closures();
        for (i, h) in closures.iter().enumerate() {
            for k in &closures[i..] {
                pairs += 1;
                let by_partition = h.join_with(k, JoinAlgorithm::PartitionJoin);
                let by_intersection = h.join_with(k, JoinAlgorithm::ClosedSetIntersection);
                match (by_partition, by_intersection) {
                    (Ok(a), Ok(b)) => {
                        o.check(a == b, || format!("{}: joins differ for {:?} and {:?}", case.name, h.image(), k.image()));
                        for block in a.to_partition().block_sets() {
                            let greatest = p.maximal_in(block);
                            let ok = greatest.len() == 1 && block.iter().all(|x| p.leq(x, greatest.first().unwrap()));
                            o.check(ok, || format!("{}: block {} has no greatest element", case.name, p.format_set(block)));
                        }
                    }
                    (a, b) => o.failures.push(format!("{}: join error {:?} / {:?}", case.name, a.err(), b.err())),
                }
            }
        }
    }
    o.summary = format!("{pairs} closure pairs, partition join = closed-set intersection");
    o
}

fn criterion_3(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for case in cases {
        let chi = case.lattice.characteristic_polynomial();
        match closed_form_char_poly(&case.poset) {
            Ok(closed) => o.check(chi == closed.polynomial, || {
                format!("{}: definitional {chi} vs closed form {}", case.name, closed.polynomial)
            }),
            Err(e) => o.failures.push(format!("{}: closed form failed: {e}", case.name)),
        }
        let oracle = mobius_oracle(&case.poset, &case.naive);
        o.check(chi == oracle, || format!("{}: lattice χ {chi} vs oracle {oracle}", case.name));
    }
    for (name, expected) in [("chain3", vec![1, -2, 1]), ("diamond", vec![0, 1, -2, 1])] {
        let case = cases.iter().find(|c| c.name == name).expect("fixture present");
        let oracle = mobius_oracle(&case.poset, &case.naive);
        o.check(oracle.coefficients() == expected.as_slice(), || format!("{name}: oracle gives {oracle}"));
        let golden = std::fs::read_to_string(manifest_path(&format!("tests/golden/charpoly_{name}.txt"))).unwrap_or_default();
        let line = format!("definitional: {}", asciify(&oracle.to_string()));
        o.check(golden.starts_with(&line), || format!("{name}: golden file lacks `{line}`"));
    }
    o.summary = format!("{} posets, χ by Möbius = closed form; CHAIN3 (λ-1)^2, DIAMOND (λ-1)^2·λ", cases.len());
    o
}

fn criterion_4(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    let mut count = 0;
    for case in cases.iter().filter(|c| c.poset.greatest_element().is_some()) {
        count += 1;
        let l = &case.lattice;
        for node in 0..l.len() {
            let cover = has_cover_property(&l.closure(node)).expect("poset has a top");
            o.check(cover == l.is_modular_bruteforce(node), || {
                format!("{}: node {} cover property {cover}, modular {}", case.name, node, !cover)
            });
        }
    }
    o.summary = format!("{count} posets with a greatest element, cover property = modular");
    o
}

fn criterion_5(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for case in cases {
        let l = &case.lattice;
        let chain = match l.m_chain() {
            Ok(chain) => chain,
            Err(e) => {
                o.failures.push(format!("{}: m_chain failed: {e}", case.name));
                continue;
            }
        };
        o.check(chain.len() == l.rank(l.top()) + 1, || format!("{}: chain of {} nodes", case.name, chain.len()));
        o.check(chain.first() == Some(&l.bottom()) && chain.last() == Some(&l.top()), || {
            format!("{}: chain does not run bottom to top", case.name)
        });
        o.check(chain.windows(2).all(|w| l.covers(w[0], w[1])), || format!("{}: chain skips a cover", case.name));
        for &node in &chain {
            o.check(l.is_modular_bruteforce(node), || format!("{}: chain node {node} not modular", case.name));
        }
    }
    o.summary = format!("{} posets, maximal chain of modular elements of length rank+1", cases.len());
    o
}

fn criterion_6(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for case in cases {
        match check_anti_exchange(&case.poset, DEFAULT_SIZE_LIMIT) {
            Ok(None) => {}
            Ok(Some(w)) => o.failures.push(format!("{}: anti-exchange fails: {w:?}", case.name)),
            Err(e) => o.failures.push(format!("{}: {e}", case.name)),
        }
        let l = &case.lattice;
        o.check(l.check_join_distributive(), || {
            format!("{}: not join-distributive at node {:?}", case.name, l.join_distributive_violation())
        });
        o.check(l.check_semimodular(), || {
            format!("{}: not semimodular at {:?}", case.name, l.semimodular_violation())
        });
    }
    o.summary = format!("{} posets, anti-exchange, join-distributive, semimodular", cases.len());
    o
}

fn criterion_7(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    let mut count = 0;
    for case in cases.iter().filter(|c| c.poset.greatest_element().is_some()) {
        count += 1;
        match case.lattice.check_sublattice_of_partitions() {
            Ok(report) => {
                o.check(report.routes_agree(), || format!("{}: routes disagree: {report:?}", case.name));
                let expected = match case.name.as_str() {
                    "bowtie1" => Some(false),
                    "diamond" => Some(true),
                    _ => None,
                };
                if let Some(expected) = expected {
                    o.check(report.bottom_is_lattice == expected && report.meets_agree == expected, || {
                        format!("{}: expected {expected}, got {report:?}", case.name)
                    });
                }
            }
            Err(e) => o.failures.push(format!("{}: {e}", case.name)),
        }
    }
    for name in ["bowtie1", "diamond"] {
        let output = cli(&["--ascii", "sublattice", &fixture_file(name)]);
        let golden = std::fs::read_to_string(manifest_path(&format!("tests/golden/sublattice_{name}.txt"))).unwrap_or_default();
        o.check(output.stdout == golden.as_bytes(), || format!("{name}: CLI output differs from golden file"));
    }
    o.summary = format!("{count} posets with 1̂, routes agree; BOWTIE1 false, DIAMOND true (golden)");
    o
}

fn criterion_8(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    for case in cases {
        let l = &case.lattice;
        let expected = case.poset.len() - closed_maximals(&case.poset).len();
        o.check(l.rank(l.top()) == expected, || format!("{}: rank(top) {} vs {expected}", case.name, l.rank(l.top())));
        let multiplicity = l.characteristic_polynomial().root_multiplicity(1);
        o.check(l.atoms().len() == multiplicity, || {
            format!("{}: {} atoms, root 1 multiplicity {multiplicity}", case.name, l.atoms().len())
        });
    }
    let case = cases.iter().find(|c| c.name == "hanging_vee").expect("fixture present");
    let m = closed_maximals(&case.poset);
    o.check(
        case.poset.len() == 6 && m == case.poset.set_of(&["a", "b", "c"]).unwrap() && case.lattice.rank(case.lattice.top()) == 3,
        || format!("hanging_vee: closure of maximals {}, rank {}", case.poset.format_set(m), case.lattice.rank(case.lattice.top())),
    );
    o.summary = format!("{} posets, rank(top) = |P| - |closure of maximals|, atoms = root-1 multiplicity; 6-element case rank 3", cases.len());
    o
}

fn fixture_file(name: &str) -> String {
    manifest_path(&format!("tests/fixtures/{name}.poset")).display().to_string()
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_closure-lattice"))
        .args(args)
        .output()
        .expect("CLI binary runs")
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    let mut files: Vec<PathBuf> = std::fs::read_dir(manifest_path("tests/fixtures"))
        .expect("fixture directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "poset"))
        .collect();
    files.sort();
    let verbs: [&[&str]; 12] = [
        &["info"],
        &["closures"],
        &["closures", "--maps"],
        &["lattice"],
        &["charpoly", "--oracle"],
        &["modular"],
        &["mchain"],
        &["convexity"],
        &["sublattice"],
        &["dot", "--mu"],
        &["--json", "lattice"],
        &["--json", "--ascii", "charpoly"],
    ];
    let mut runs = 0;
    for file in &files {
        let path = file.display().to_string();
        for verb in verbs {
            let mut args: Vec<&str> = verb.to_vec();
            args.push(&path);
            let (a, b) = (cli(&args), cli(&args));
            runs += 2;
            o.check(a.stdout == b.stdout && a.stderr == b.stderr && a.status == b.status, || {
                format!("{} {}: output differs between runs", verb.join(" "), file.display())
            });
            o.check(a.status.code().is_some_and(|c| c == 0 || c == 1), || {
                format!("{} {}: exit {:?}", verb.join(" "), file.display(), a.status.code())
            });
        }
    }
    o.summary = format!("{} fixtures, {runs} CLI runs, byte-identical in pairs", files.len());
    o
}

fn main() {
    let mut inputs: Vec<(String, Poset)> = fixtures::all().into_iter().map(|(n, p)| (n.to_owned(), p)).collect();
    // the fixture files must describe the same posets as the library fixtures
    for (name, poset) in &inputs {
        let text = std::fs::read_to_string(fixture_file(name)).expect("fixture file exists");
        assert_eq!(&parse_poset(&text).expect("fixture parses"), poset, "fixture file {name}");
    }
    inputs.extend(random_posets());
    assert!(inputs.iter().all(|(_, p)| p.len() <= 6));

    let start = Instant::now();
    let cases: Vec<Case> = inputs
        .into_iter()
        .map(|(name, poset)| {
            let naive = enumerate_closures_naive(&poset).expect("small poset");
            let lattice = LcLattice::build(&poset, DEFAULT_SIZE_LIMIT).expect("small poset");
            Case { name, poset, lattice, naive }
        })
        .collect();
    let elapsed = start.elapsed();

    let outcomes = [
        ("bijection", criterion_1(&cases, elapsed)),
        ("join equivalence", criterion_2(&cases)),
        ("characteristic polynomial", criterion_3(&cases)),
        ("modularity equivalence", criterion_4(&cases)),
        ("supersolvability", criterion_5(&cases)),
        ("convex geometry", criterion_6(&cases)),
        ("sublattice criterion", criterion_7(&cases)),
        ("rank and atoms", criterion_8(&cases)),
        ("determinism", criterion_9()),
    ];

    let mut failed = 0;
    for (i, (title, outcome)) in outcomes.iter().enumerate() {
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} {} {title}: {}", i + 1, outcome.summary);
        for failure in outcome.failures.iter().take(5) {
            println!("     {failure}");
        }
        if outcome.failures.len() > 5 {
            println!("     ... {} more", outcome.failures.len() - 5);
        }
        if !outcome.failures.is_empty() {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
