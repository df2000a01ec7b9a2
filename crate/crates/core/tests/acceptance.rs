//! Acceptance suite. Runs each criterion, prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bipdiv::divisor_graphs::{diameter_case, DivisorGraphs};
use bipdiv::families::save_corpus;
use bipdiv::permgroup::{DEFAULT_CAP, Hypothesis};
use bipdiv::verify::{
    check_cycle_theorems, check_psl2_even_family, check_union_of_paths_theorem, random_degree_sets, Subject,
};
use bipdiv::{
    abelian_dual_orbit_indices, build_graph, builtin_corpus, cd_set, character_degrees, parse_cycles, psl2_degrees, rho,
    DegreeSet, Flavor, GroupError, GroupRecord, PermGroup, Shape, Status,
};

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn set(values: &[u64]) -> DegreeSet {
    DegreeSet::new(values.iter().copied()).expect("valid degree set")
}

fn record(name: &str) -> GroupRecord {
    builtin_corpus().into_iter().find(|r| r.name == name).unwrap_or_else(|| panic!("no corpus record {name}"))
}

fn group_of(name: &str) -> PermGroup {
    record(name).generators.expect("generators").group(DEFAULT_CAP).expect("group enumerates")
}

fn diameters(x: &DegreeSet) -> [usize; 3] {
    Flavor::ALL.map(|f| build_graph(x, f).diameter().unwrap_or(0))
}

fn extremal_diameters() -> Outcome {
    let x = record("extremal-diam7").degree_set().expect("degrees").map_err(|e| e.to_string())?;
    ensure!(x.cd_size() == 11, "expected 11 degrees, found {}", x.cd_size());
    let [b, d, g] = diameters(&x);
    ensure!((d, g, b) == (3, 3, 7), "diam Δ = {d}, Γ = {g}, B = {b}");
    let oracle = common::oracle_bipartite(&x.degrees()).diameter();
    ensure!(oracle == 7, "Floyd-Warshall gives diam B = {oracle}");
    Ok("diam Δ = 3, diam Γ = 3, diam B = 7".into())
}

fn union_of_paths_examples() -> Outcome {
    let mut detail = Vec::new();
    for (x, lengths, rho_size) in [(set(&[1, 9, 10, 16]), vec![1, 3], 3), (set(&[1, 13, 24, 25, 26]), vec![1, 5], 4)] {
        let shape = build_graph(&x, Flavor::Bipartite).classify_shape().shape;
        ensure!(shape == Shape::UnionOfPaths(lengths.clone()), "{x}: B = {shape}");
        ensure!(rho(&x).len() == rho_size, "{x}: |ρ| = {}", rho(&x).len());
        let r = check_union_of_paths_theorem(&Subject::set("example", &x).solvable(false));
        ensure!(r.status == Status::Pass, "{x}: {}", r.detail);
        detail.push(format!("{x} -> {shape}, |ρ| = {rho_size}"));
    }
    Ok(detail.join("; "))
}

fn psl2_even_sweep() -> Outcome {
    let mut summary = Vec::new();
    for n in 2..=8u32 {
        let q = 1u64 << n;
        let hypothesis = [q - 1, q + 1].iter().all(|&m| common::trial_primes(m).len() <= 2);
        let verdict = build_graph(&psl2_degrees(q).map_err(|e| e.to_string())?, Flavor::Bipartite).classify_shape();
        let three_paths = verdict.component_shapes.len() == 3 && verdict.component_shapes.iter().all(Shape::is_path);
        ensure!(three_paths == hypothesis, "n = {n}: hypothesis {hypothesis} but three paths {three_paths}");
        let r = check_psl2_even_family(n);
        let expected = if hypothesis { Status::Pass } else { Status::Inapplicable };
        ensure!(r.status == expected, "n = {n}: status {:?}, {}", r.status, r.detail);
        summary.push(format!("{n}:{}", if hypothesis { "pass" } else { "inapplicable" }));
    }
    Ok(summary.join(" "))
}

fn cycle_examples() -> Outcome {
    let c4 = set(&[1, 6, 12]);
    let graphs = DivisorGraphs::new(&c4);
    ensure!(graphs.bipartite.classify_shape().shape == Shape::Cycle(4), "{{1,6,12}}: B is not C4");
    ensure!(graphs.common.vertex_count() == 2 && graphs.common.is_complete(), "{{1,6,12}}: Γ is not K2");

    let c6 = set(&[1, 21, 1183, 6591]);
    let graphs = DivisorGraphs::new(&c6);
    ensure!(graphs.bipartite.classify_shape().shape == Shape::Cycle(6), "B is not C6");
    ensure!(graphs.common.vertex_count() == 3 && graphs.common.is_complete(), "Γ is not K3");
    ensure!(graphs.prime.classify_shape().shape == Shape::Cycle(3), "Δ is not C3");

    for x in [&c4, &c6] {
        ensure!(x.cd_size() <= 4, "|cd| = {}", x.cd_size());
        let r = check_cycle_theorems(&Subject::set("example", x));
        ensure!(r.status == Status::Pass, "{x}: {}", r.detail);
    }
    Ok("C4 with Γ = K2; C6 with Γ = K3, Δ = C3".into())
}

fn dixon_degrees() -> Outcome {
    let expected: [(&str, &[u64]); 5] = [
        ("S3", &[1, 1, 2]),
        ("S4", &[1, 1, 2, 3, 3]),
        ("A5", &[1, 3, 3, 4, 5]),
        ("GL(2,3)", &[1, 1, 2, 2, 2, 3, 3, 4]),
        ("PSL(2,7)", &[1, 3, 3, 6, 7, 8]),
    ];
    for (name, degrees) in expected {
        let g = group_of(name);
        let got = character_degrees(&g).map_err(|e| e.to_string())?;
        ensure!(got == degrees, "{name}: {got:?}");
        ensure!(got.len() == g.class_count(), "{name}: degree count differs from class count");
    }
    let mut checked = 0;
    for r in builtin_corpus() {
        let Some(gens) = &r.generators else { continue };
        let g = gens.group(DEFAULT_CAP).map_err(|e| e.to_string())?;
        let degrees = character_degrees(&g).map_err(|e| format!("{}: {e}", r.name))?;
        let sum: u64 = degrees.iter().map(|d| d * d).sum();
        ensure!(sum == g.order(), "{}: Σd² = {sum}, |G| = {}", r.name, g.order());
        checked += 1;
    }
    Ok(format!("5 exact multisets; Σd² = |G| on {checked} corpus groups"))
}

fn cross_validation() -> Outcome {
    let mut checked = 0;
    for r in builtin_corpus() {
        let Some(gens) = &r.generators else { continue };
        let stored = r.degree_set().expect("degrees").map_err(|e| e.to_string())?;
        let computed = cd_set(&gens.group(DEFAULT_CAP).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure!(computed == stored, "{}: computed {computed}, stored {stored}", r.name);
        checked += 1;
    }
    let a5 = cd_set(&group_of("A5")).map_err(|e| e.to_string())?;
    for q in [4, 5] {
        let family = psl2_degrees(q).map_err(|e| e.to_string())?;
        ensure!(a5 == family, "cd(A5) = {a5} but psl2({q}) = {family}");
    }
    Ok(format!("{checked} generator-backed records agree; cd(A5) = psl2(4) = psl2(5)"))
}

fn inertia_indices() -> Outcome {
    let cases = [("S3", 3, "(1 2 3)"), ("D4", 4, "(1 2 3 4)")];
    for (name, deg, normal) in cases {
        let g = group_of(name);
        let n = parse_cycles(normal, deg).map_err(|e| e.to_string())?;
        let orbits = abelian_dual_orbit_indices(&g, &[n]).map_err(|e| e.to_string())?;
        let cd = cd_set(&g).map_err(|e| e.to_string())?;
        ensure!(orbits.index_set() == [1, 2], "{name}: indices {:?}", orbits.index_set());
        ensure!(orbits.index_set() == cd.degrees(), "{name}: indices differ from cd = {cd}");
    }
    let s3 = group_of("S3");
    let transposition = parse_cycles("(1 2)", 3).map_err(|e| e.to_string())?;
    match abelian_dual_orbit_indices(&s3, &[transposition]) {
        Err(GroupError::Precondition(Hypothesis::Normal)) => {}
        other => return Err(format!("non-normal subgroup gave {other:?}")),
    }
    Ok("S3/A3 and D4/Z4 give {1,2} = cd; <(1 2)> in S3 rejected as non-normal".into())
}

fn property_suite() -> Outcome {
    let sets = random_degree_sets(20_240_601, 1000);
    let mut small = 0;
    for x in &sets {
        let graphs = DivisorGraphs::new(x);
        let [b, d, g] = graphs.component_counts();
        ensure!(b == d && d == g, "{x}: component counts {b}, {d}, {g}");
        for t in graphs.matched_components() {
            ensure!(t.aligned, "{x}: components not aligned");
            ensure!(
                diameter_case(t.bipartite_diameter, t.prime_diameter, t.common_diameter).is_some(),
                "{x}: diameters {} / {} / {}",
                t.bipartite_diameter,
                t.prime_diameter,
                t.common_diameter
            );
            ensure!(t.prime_diameter.abs_diff(t.common_diameter) <= 1, "{x}: |diam Δ - diam Γ| > 1");
        }
        let bip = &graphs.bipartite;
        for (i, j) in bip.edges() {
            ensure!(bip.vertices()[i].kind != bip.vertices()[j].kind, "{x}: B edge inside one side");
        }
        ensure!((0..bip.vertex_count()).all(|i| bip.vertex_degree(i) > 0), "{x}: isolated vertex in B");

        if bip.vertex_count() <= 20 {
            small += 1;
            let oracles = [
                common::oracle_bipartite(&x.degrees()),
                common::oracle_prime(&x.degrees()),
                common::oracle_common(&x.degrees()),
            ];
            for (flavor, oracle) in Flavor::ALL.iter().zip(&oracles) {
                let graph = graphs.get(*flavor);
                ensure!(graph.vertex_count() == oracle.len(), "{x}: vertex count of {}", flavor.name());
                for i in 0..graph.vertex_count() {
                    ensure!(graph.distances_from(i) == oracle.dist[i], "{x}: distances in {} differ", flavor.name());
                }
            }
        }
    }
    ensure!(small >= 100, "only {small} small instances");
    Ok(format!("{} sets, {small} cross-checked against Floyd-Warshall", sets.len()))
}

fn derived_series() -> Outcome {
    let s4 = group_of("S4");
    let orders: Vec<u64> = s4.derived_series().iter().map(PermGroup::order).collect();
    ensure!(orders == [24, 12, 4, 1], "S4 derived series orders {orders:?}");
    let dl = s4.derived_length().ok_or("S4 reported nonsolvable")?;
    ensure!(dl == 3 && dl <= 5, "dl(S4) = {dl}");
    ensure!(!group_of("A5").is_solvable(), "A5 reported solvable");
    Ok("S4: [24, 12, 4, 1], dl = 3; A5 nonsolvable".into())
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_bipdiv");
    let pristine = Command::new(bin).arg("verify").output().map_err(|e| e.to_string())?;
    ensure!(pristine.status.code() == Some(0), "pristine verify exited {:?}", pristine.status.code());

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("tampered.json");
    let mut corpus = builtin_corpus();
    let s4 = corpus.iter_mut().find(|r| r.name == "S4").expect("S4 record");
    s4.degrees = Some(vec![1, 2, 4]);
    save_corpus(&corpus, &path).map_err(|e| e.to_string())?;
    let tampered = Command::new(bin)
        .args(["verify", "--random", "0", "--corpus"])
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(tampered.status.code() == Some(3), "tampered verify exited {:?}", tampered.status.code());

    let dot = Command::new(bin)
        .args(["graph", "--degrees", "1,6,12", "--emit", "dot"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(dot.status.success(), "graph exited {:?}", dot.status.code());
    let text = String::from_utf8(dot.stdout).map_err(|e| e.to_string())?;
    let (nodes, edges) = common::validate_dot(&text)?;
    ensure!((nodes, edges) == (4, 4), "DOT has {nodes} nodes and {edges} edges");
    Ok("verify exits 0 pristine, 3 tampered; DOT output validates".into())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: "AC1", title: "extremal diameters", limit: Some(Duration::from_secs(1)), run: extremal_diameters },
        Criterion { id: "AC2", title: "union-of-paths examples", limit: Some(Duration::from_secs(1)), run: union_of_paths_examples },
        Criterion { id: "AC3", title: "PSL(2,2^n) sweep", limit: Some(Duration::from_secs(1)), run: psl2_even_sweep },
        Criterion { id: "AC4", title: "cycle examples", limit: Some(Duration::from_secs(1)), run: cycle_examples },
        Criterion { id: "AC5", title: "Dixon degrees", limit: Some(Duration::from_secs(10)), run: dixon_degrees },
        Criterion { id: "AC6", title: "cross-validation", limit: None, run: cross_validation },
        Criterion { id: "AC7", title: "inertia indices", limit: None, run: inertia_indices },
        Criterion { id: "AC8", title: "property suite", limit: None, run: property_suite },
        Criterion { id: "AC9", title: "derived series", limit: None, run: derived_series },
        Criterion { id: "AC10", title: "CLI contract", limit: None, run: cli_contract },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(&p))));
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {} {} ({elapsed:.2?}): {detail}", c.id, c.title),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {} {} ({elapsed:.2?}): {why}", c.id, c.title);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown panic".into())
}
