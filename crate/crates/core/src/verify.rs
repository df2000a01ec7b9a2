//! Machine checks of the graph-theoretic statements about character degree
//! sets, run over a corpus of groups and over random degree sets.
//!
//! Each check evaluates its own hypotheses and answers `inapplicable` when
//! they do not hold, so only genuine counterexamples produce `fail`.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{factorize, rho, DegreeSet, MAX_VALUE};
use crate::chardeg::character_degrees;
use crate::divisor_graphs::{diameter_case, DiameterCase, DivisorGraphs, Shape};
use crate::families::{psl2_degrees, GroupRecord};
use crate::permgroup::{abelian_dual_orbit_indices, parse_cycles, PermGroup, DEFAULT_CAP};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_RANDOM_SETS: usize = 1000;

/// Every check id with the statement it tests.
pub const REGISTRY: &[(&str, &str)] = &[
    ("component-identity", "B, the prime degree graph and the common divisor graph have the same number of connected components"),
    ("diameter-relations", "per component, diam B = 2 max(diam Δ, diam Γ) or diam B = 2 diam Δ + 1 = 2 diam Γ + 1, and |diam Δ - diam Γ| <= 1"),
    ("shape-transfer", "if B is a path then Δ and Γ are paths; if B is a cycle of length at least 6 then Δ and Γ are cycles"),
    ("solvable-diameter-bound", "for a solvable group, diam B <= 7"),
    ("path-theorems", "for a solvable group with B = P_n: n <= 6, Δ is not P_3, |cd| <= 5 and dl <= 5; flags the pattern {1, p^a, q^b, p^a q^b}"),
    ("union-of-paths-theorem", "for a nonsolvable group whose B is a union of paths: B is disconnected; with two components |ρ| is 3 or 4, one component is P_1 and the other P_n with n in {|ρ|, |ρ|+1}; with three components cd is that of PSL(2,2^k)"),
    ("nonsolvable-component-bound", "for a nonsolvable group, B has at most 3 connected components"),
    ("cycle-theorems", "if B is a cycle: its length is 4 or 6, Γ is complete, |cd| <= 4, the group is solvable with dl <= |cd|, and for length 6 both Δ and Γ are cycles"),
    ("c8-impossible", "no group has B equal to an 8-cycle"),
    ("generator-degree-agreement", "the degree set computed from generators equals the stored degree set"),
    ("degree-square-sum", "the squared irreducible degrees sum to the group order, one degree per conjugacy class"),
    ("solvability-flag", "the stored solvability flag matches the derived series computed from generators"),
    ("inertia-index-degrees", "for N abelian and normal with G/N abelian, cd(G) is the set of inertia indices [G : I_G(λ)]"),
    ("psl2-even-family", "when |π(2^n - 1)| <= 2 and |π(2^n + 1)| <= 2, B of PSL(2,2^n) has three components, each a path"),
];

/// Statement tested by `check_id`.
pub fn claim(check_id: &str) -> Option<&'static str> {
    REGISTRY.iter().find(|(id, _)| *id == check_id).map(|(_, c)| *c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub subject: String,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    fn new(check_id: &str, subject: &str, status: Status, detail: impl Into<String>) -> Self {
        CheckResult { check_id: check_id.into(), subject: subject.into(), status, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(results: Vec<CheckResult>) -> Self {
        let mut summary = Summary::default();
        for r in &results {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Inapplicable => summary.inapplicable += 1,
            }
        }
        Report { results, summary }
    }

    pub fn is_clean(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub random_sets: usize,
    pub cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: DEFAULT_SEED, random_sets: DEFAULT_RANDOM_SETS, cap: DEFAULT_CAP }
    }
}

/// What the checks know about one degree set.
#[derive(Debug, Clone)]
pub struct Subject<'a> {
    pub name: &'a str,
    pub degrees: &'a DegreeSet,
    /// Known solvability, from generators when available.
    pub solvable: Option<bool>,
    /// Derived length, known only for solvable groups given by generators.
    pub derived_length: Option<usize>,
    /// Whether a group witness (generators) backs the degree set.
    pub witnessed: bool,
}

impl<'a> Subject<'a> {
    /// A bare degree set with nothing known about any group.
    pub fn set(name: &'a str, degrees: &'a DegreeSet) -> Self {
        Subject { name, degrees, solvable: None, derived_length: None, witnessed: false }
    }

    pub fn solvable(mut self, solvable: bool) -> Self {
        self.solvable = Some(solvable);
        self
    }
}

/// Uniform random degree sets: 1 to 8 degrees, each a product of 1 to 4
/// distinct primes below 100 with exponents 1 to 4. Degrees above 2^63 - 1
/// are redrawn. Every set contains 1.
pub fn random_degree_sets(seed: u64, count: usize) -> Vec<DegreeSet> {
    const PRIMES: [u64; 25] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=8);
            let mut degrees = vec![1u64];
            while degrees.len() <= k {
                let t = rng.gen_range(1..=4);
                let mut value: Option<u64> = Some(1);
                for &p in PRIMES.choose_multiple(&mut rng, t) {
                    let e = rng.gen_range(1..=4u32);
                    value = value.and_then(|v| p.checked_pow(e).and_then(|pe| v.checked_mul(pe)));
                }
                if let Some(v) = value.filter(|&v| v <= MAX_VALUE) {
                    degrees.push(v);
                }
            }
            DegreeSet::new(degrees).expect("positive degrees within range")
        })
        .collect()
}

fn shapes_text(shapes: &[Shape]) -> String {
    let parts: Vec<String> = shapes.iter().map(Shape::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn check_component_identity(s: &Subject) -> CheckResult {
    let graphs = DivisorGraphs::new(s.degrees);
    let [b, d, g] = graphs.component_counts();
    let status = if b == d && d == g { Status::Pass } else { Status::Fail };
    let mut detail = format!("n(B) = {b}, n(Δ) = {d}, n(Γ) = {g}");
    if status == Status::Fail {
        let _ = write!(detail, "; witness {}", s.degrees);
    }
    CheckResult::new("component-identity", s.name, status, detail)
}

pub fn check_diameter_relations(s: &Subject) -> CheckResult {
    let graphs = DivisorGraphs::new(s.degrees);
    let triples = graphs.matched_components();
    if triples.is_empty() {
        return CheckResult::new("diameter-relations", s.name, Status::Pass, "no components");
    }
    let mut ok = true;
    let mut parts = Vec::new();
    for (i, t) in triples.iter().enumerate() {
        let (b, d, g) = (t.bipartite_diameter, t.prime_diameter, t.common_diameter);
        let case = diameter_case(b, d, g);
        let gap = d.abs_diff(g);
        let good = t.aligned && case.is_some() && gap <= 1;
        ok &= good;
        let how = match case {
            Some(DiameterCase::Even) => format!("= 2*max({d},{g})"),
            Some(DiameterCase::Odd) => format!("= 2*{d}+1"),
            None => "matches neither alternative".to_string(),
        };
        let mut part = format!("component {i}: diam B = {b} {how}, diam Δ = {d}, diam Γ = {g}");
        if !t.aligned {
            part.push_str(", components do not correspond");
        }
        parts.push(part);
    }
    let mut detail = parts.join("; ");
    if !ok {
        let _ = write!(detail, "; witness {}", s.degrees);
    }
    CheckResult::new("diameter-relations", s.name, if ok { Status::Pass } else { Status::Fail }, detail)
}

pub fn check_shape_transfer(s: &Subject) -> CheckResult {
    let graphs = DivisorGraphs::new(s.degrees);
    let b = graphs.bipartite.classify_shape().shape;
    let d = graphs.prime.classify_shape().shape;
    let g = graphs.common.classify_shape().shape;
    let detail = format!("B = {b}, Δ = {d}, Γ = {g}");
    let status = match b {
        Shape::Path(_) => {
            if d.is_path() && g.is_path() {
                Status::Pass
            } else {
                Status::Fail
            }
        }
        Shape::Cycle(n) if n >= 6 => {
            if d.is_cycle() && g.is_cycle() {
                Status::Pass
            } else {
                Status::Fail
            }
        }
        _ => Status::Inapplicable,
    };
    let detail = if status == Status::Fail { format!("{detail}; witness {}", s.degrees) } else { detail };
    CheckResult::new("shape-transfer", s.name, status, detail)
}

pub fn check_solvable_diameter_bound(s: &Subject) -> CheckResult {
    let id = "solvable-diameter-bound";
    match s.solvable {
        Some(true) => {}
        Some(false) => return CheckResult::new(id, s.name, Status::Inapplicable, "group is nonsolvable"),
        None => return CheckResult::new(id, s.name, Status::Inapplicable, "solvability unknown"),
    }
    let graphs = DivisorGraphs::new(s.degrees);
    match graphs.bipartite.diameter() {
        Ok(diam) if diam <= 7 => CheckResult::new(id, s.name, Status::Pass, format!("diam B = {diam}")),
        Ok(diam) => CheckResult::new(id, s.name, Status::Fail, format!("diam B = {diam} for {}", s.degrees)),
        Err(_) => CheckResult::new(id, s.name, Status::Inapplicable, "B is empty"),
    }
}

/// `{1, m, n, mn}` with `m`, `n` powers of distinct primes.
pub fn is_prime_power_product_pattern(x: &DegreeSet) -> bool {
    let degrees: Vec<u64> = x.nonlinear().collect();
    let [a, b, c] = degrees[..] else {
        return false;
    };
    let pp = |v: u64| x.factorization(v).is_some_and(|f| f.is_prime_power());
    [(a, b, c), (a, c, b), (b, c, a)]
        .iter()
        .any(|&(m, n, l)| pp(m) && pp(n) && crate::arith::gcd(m, n) == 1 && m.checked_mul(n) == Some(l))
}

pub fn check_path_theorems(s: &Subject) -> CheckResult {
    let id = "path-theorems";
    let graphs = DivisorGraphs::new(s.degrees);
    let verdict = graphs.bipartite.classify_shape();
    let Shape::Path(n) = verdict.shape else {
        return CheckResult::new(
            id,
            s.name,
            Status::Inapplicable,
            format!("B is not a path; component shapes {}", shapes_text(&verdict.component_shapes)),
        );
    };
    match s.solvable {
        Some(true) => {}
        Some(false) => return CheckResult::new(id, s.name, Status::Inapplicable, format!("B = P{n} but the group is nonsolvable")),
        None => return CheckResult::new(id, s.name, Status::Inapplicable, format!("B = P{n}, solvability unknown")),
    }
    let delta = graphs.prime.classify_shape().shape;
    let cd = s.degrees.cd_size();
    let mut problems = Vec::new();
    if n > 6 {
        problems.push(format!("path length {n} exceeds 6"));
    }
    if delta == Shape::Path(3) {
        problems.push("Δ is P3".to_string());
    }
    if cd > 5 {
        problems.push(format!("|cd| = {cd} exceeds 5"));
    }
    if let Some(dl) = s.derived_length.filter(|&dl| dl > 5) {
        problems.push(format!("dl = {dl} exceeds 5"));
    }
    let mut detail = format!("B = P{n}, Δ = {delta}, |cd| = {cd}");
    if let Some(dl) = s.derived_length {
        let _ = write!(detail, ", dl = {dl}");
    }
    if n == 4 && is_prime_power_product_pattern(s.degrees) {
        detail.push_str("; pattern {1, p^a, q^b, p^a q^b}");
    }
    if problems.is_empty() {
        CheckResult::new(id, s.name, Status::Pass, detail)
    } else {
        CheckResult::new(id, s.name, Status::Fail, format!("{detail}; {}; witness {}", problems.join(", "), s.degrees))
    }
}

/// `k` with `x = cd(PSL(2, 2^k))`, if any.
fn psl2_even_exponent(x: &DegreeSet) -> Option<u32> {
    let q = x.nonlinear().find(|d| d.is_power_of_two())?;
    let k = q.trailing_zeros();
    let expected = psl2_degrees(q).ok()?;
    (k >= 2 && expected.degrees() == x.clone().with_one().degrees()).then_some(k)
}

pub fn check_union_of_paths_theorem(s: &Subject) -> CheckResult {
    let id = "union-of-paths-theorem";
    match s.solvable {
        Some(false) => {}
        Some(true) => return CheckResult::new(id, s.name, Status::Inapplicable, "group is solvable"),
        None => return CheckResult::new(id, s.name, Status::Inapplicable, "solvability unknown"),
    }
    let graphs = DivisorGraphs::new(s.degrees);
    let verdict = graphs.bipartite.classify_shape();
    if !verdict.shape.is_paths() {
        return CheckResult::new(id, s.name, Status::Inapplicable, format!("B = {} is not a union of paths", verdict.shape));
    }
    let rho_size = rho(s.degrees).len();
    let components = verdict.component_shapes.len();
    let detail = format!("B = {}, |ρ| = {rho_size}", verdict.shape);
    let fail = |why: String| CheckResult::new(id, s.name, Status::Fail, format!("{detail}; {why}; witness {}", s.degrees));
    match (components, &verdict.shape) {
        (2, Shape::UnionOfPaths(lengths)) => {
            if !(3..=4).contains(&rho_size) {
                return fail(format!("|ρ| = {rho_size} is not 3 or 4"));
            }
            let (short, long) = (lengths[0], lengths[1]);
            if short == 1 && (long == rho_size || long == rho_size + 1) {
                CheckResult::new(id, s.name, Status::Pass, format!("{detail}; components P1 and P{long}"))
            } else {
                fail("component lengths do not match".into())
            }
        }
        (3, _) => match psl2_even_exponent(s.degrees) {
            Some(k) => CheckResult::new(id, s.name, Status::Pass, format!("{detail}; cd = cd(PSL(2,2^{k}))")),
            None => fail("three components but cd is not that of PSL(2,2^k)".into()),
        },
        (1, _) => fail("B is connected".into()),
        _ => fail(format!("{components} components")),
    }
}

pub fn check_nonsolvable_component_bound(s: &Subject) -> CheckResult {
    let id = "nonsolvable-component-bound";
    if s.solvable != Some(false) {
        let why = if s.solvable.is_none() { "solvability unknown" } else { "group is solvable" };
        return CheckResult::new(id, s.name, Status::Inapplicable, why);
    }
    let n = DivisorGraphs::new(s.degrees).bipartite.component_count();
    let status = if n <= 3 { Status::Pass } else { Status::Fail };
    CheckResult::new(id, s.name, status, format!("n(B) = {n}"))
}

pub fn check_cycle_theorems(s: &Subject) -> CheckResult {
    let id = "cycle-theorems";
    let graphs = DivisorGraphs::new(s.degrees);
    let b = graphs.bipartite.classify_shape().shape;
    let Shape::Cycle(n) = b else {
        return CheckResult::new(id, s.name, Status::Inapplicable, format!("B = {b} is not a cycle"));
    };
    let d = graphs.prime.classify_shape().shape;
    let g = graphs.common.classify_shape().shape;
    let complete = graphs.common.is_complete();
    let cd = s.degrees.cd_size();
    let mut detail = format!(
        "B = C{n}, Δ = {d}, Γ = {g}{}, |cd| = {cd}",
        if complete { format!(" complete on {} vertices", graphs.common.vertex_count()) } else { String::new() }
    );
    let mut problems = Vec::new();
    if n != 4 && n != 6 {
        problems.push(format!("length {n} is not 4 or 6"));
    }
    if !complete {
        problems.push("Γ is not complete".to_string());
    }
    if cd > 4 {
        problems.push(format!("|cd| = {cd} exceeds 4"));
    }
    if n >= 6 && !(d.is_cycle() && g.is_cycle()) {
        problems.push("Δ and Γ are not both cycles".to_string());
    }
    if s.solvable == Some(false) {
        problems.push("group is nonsolvable".to_string());
    }
    if let Some(dl) = s.derived_length {
        let _ = write!(detail, ", dl = {dl}");
        if dl > cd {
            problems.push(format!("dl = {dl} exceeds |cd|"));
        }
    }
    if problems.is_empty() {
        CheckResult::new(id, s.name, Status::Pass, detail)
    } else {
        CheckResult::new(id, s.name, Status::Fail, format!("{detail}; {}; witness {}", problems.join(", "), s.degrees))
    }
}

/// Scans the subjects for an 8-cycle B. Only a degree set backed by group
/// generators counts as a counterexample; unwitnessed 8-cycles are reported
/// as purely combinatorial.
pub fn check_c8_impossible(subjects: &[Subject]) -> CheckResult {
    let id = "c8-impossible";
    let synthetic = DegreeSet::new([1, 6, 15, 35, 14]).expect("valid set");
    let synthetic_shape = DivisorGraphs::new(&synthetic).bipartite.classify_shape().shape;
    let mut combinatorial = 0;
    let mut witnessed = Vec::new();
    for s in subjects {
        if DivisorGraphs::new(s.degrees).bipartite.classify_shape().shape == Shape::Cycle(8) {
            if s.witnessed {
                witnessed.push(format!("{} {}", s.name, s.degrees));
            } else {
                combinatorial += 1;
            }
        }
    }
    let detail = format!(
        "scanned {} degree sets; {combinatorial} unwitnessed 8-cycles; the set {synthetic} has B = {synthetic_shape} combinatorially, with no group witness",
        subjects.len()
    );
    if witnessed.is_empty() {
        CheckResult::new(id, "corpus+random", Status::Pass, detail)
    } else {
        CheckResult::new(id, "corpus+random", Status::Fail, format!("{detail}; witnessed: {}", witnessed.join(", ")))
    }
}

/// Whether `|π(m)| <= 2`.
fn at_most_two_primes(m: u64) -> bool {
    factorize(m).map(|f| f.factors().len() <= 2).unwrap_or(false)
}

pub fn check_psl2_even_family(n: u32) -> CheckResult {
    let id = "psl2-even-family";
    let subject = format!("PSL(2,2^{n})");
    let q = 1u64 << n;
    let degrees = match psl2_degrees(q) {
        Ok(d) => d,
        Err(e) => return CheckResult::new(id, &subject, Status::Fail, e.to_string()),
    };
    let verdict = DivisorGraphs::new(&degrees).bipartite.classify_shape();
    let components = verdict.component_shapes.len();
    let all_paths = verdict.component_shapes.iter().all(Shape::is_path);
    let detail = format!("cd = {degrees}, B components {}", shapes_text(&verdict.component_shapes));
    if !(at_most_two_primes(q - 1) && at_most_two_primes(q + 1)) {
        return CheckResult::new(id, &subject, Status::Inapplicable, format!("{detail}; |π(2^n ± 1)| > 2"));
    }
    let status = if components == 3 && all_paths { Status::Pass } else { Status::Fail };
    CheckResult::new(id, &subject, status, detail)
}

struct GroupFacts {
    order: u64,
    degrees: Vec<u64>,
    classes: usize,
    cd: DegreeSet,
    solvable: bool,
    derived_length: Option<usize>,
    orbit_indices: Option<Result<Vec<u64>, String>>,
}

fn analyse_group(record: &GroupRecord, cap: usize) -> Option<Result<GroupFacts, String>> {
    let gens = record.generators.as_ref()?;
    let run = || -> Result<GroupFacts, String> {
        let g: PermGroup = gens.group(cap).map_err(|e| e.to_string())?;
        let degrees = character_degrees(&g).map_err(|e| e.to_string())?;
        let cd = DegreeSet::new(degrees.iter().copied()).map_err(|e| e.to_string())?;
        let series = g.derived_series();
        let derived_length = crate::permgroup::derived_length(&series);
        let orbit_indices = record.abelian_normal_generators().map(|perms| {
            let n = perms
                .iter()
                .map(|p| parse_cycles(p, gens.deg))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            abelian_dual_orbit_indices(&g, &n).map(|o| o.index_set()).map_err(|e| e.to_string())
        });
        Ok(GroupFacts {
            order: g.order(),
            classes: g.class_count(),
            degrees,
            cd,
            solvable: derived_length.is_some(),
            derived_length,
            orbit_indices,
        })
    };
    Some(run())
}

fn record_group_checks(record: &GroupRecord, stored: Option<&DegreeSet>, facts: Option<&Result<GroupFacts, String>>) -> Vec<CheckResult> {
    let name = record.name.as_str();
    let ids = ["generator-degree-agreement", "degree-square-sum", "solvability-flag", "inertia-index-degrees"];
    let Some(facts) = facts else {
        return ids.iter().map(|id| CheckResult::new(id, name, Status::Inapplicable, "no generators")).collect();
    };
    let facts = match facts {
        Ok(f) => f,
        Err(e) => {
            return ids
                .iter()
                .map(|id| CheckResult::new(id, name, Status::Fail, format!("group computation failed: {e}")))
                .collect()
        }
    };
    let mut out = Vec::new();
    out.push(match stored {
        Some(stored) => {
            let same = stored.clone().with_one().degrees() == facts.cd.degrees();
            let detail = format!("computed {}, stored {}", facts.cd, stored);
            CheckResult::new(ids[0], name, if same { Status::Pass } else { Status::Fail }, detail)
        }
        None => CheckResult::new(ids[0], name, Status::Inapplicable, format!("no stored degrees; computed {}", facts.cd)),
    });
    let squares: u64 = facts.degrees.iter().map(|d| d * d).sum();
    let mut ok = squares == facts.order && facts.degrees.len() == facts.classes;
    let mut detail = format!("sum of squares {squares}, |G| = {}, {} degrees for {} classes", facts.order, facts.degrees.len(), facts.classes);
    if let Some(order) = record.order {
        let _ = write!(detail, ", stored order {order}");
        ok &= order == facts.order;
    }
    out.push(CheckResult::new(ids[1], name, if ok { Status::Pass } else { Status::Fail }, detail));
    out.push(match record.solvable {
        Some(flag) => {
            let detail = format!("stored {flag}, computed {}", facts.solvable);
            CheckResult::new(ids[2], name, if flag == facts.solvable { Status::Pass } else { Status::Fail }, detail)
        }
        None => CheckResult::new(ids[2], name, Status::Inapplicable, format!("no stored flag; computed {}", facts.solvable)),
    });
    out.push(match &facts.orbit_indices {
        None => CheckResult::new(ids[3], name, Status::Inapplicable, "no abelian normal subgroup recorded"),
        Some(Err(e)) => CheckResult::new(ids[3], name, Status::Fail, e.clone()),
        Some(Ok(indices)) => {
            let same = indices == &facts.cd.degrees();
            let detail = format!("inertia indices {indices:?}, Dixon cd {}", facts.cd);
            CheckResult::new(ids[3], name, if same { Status::Pass } else { Status::Fail }, detail)
        }
    });
    out
}

fn degree_checks(s: &Subject) -> Vec<CheckResult> {
    vec![
        check_component_identity(s),
        check_diameter_relations(s),
        check_shape_transfer(s),
        check_solvable_diameter_bound(s),
        check_path_theorems(s),
        check_union_of_paths_theorem(s),
        check_nonsolvable_component_bound(s),
        check_cycle_theorems(s),
    ]
}

/// A corpus degree set kept alive for the final 8-cycle scan.
struct Scanned {
    name: String,
    degrees: DegreeSet,
    solvable: Option<bool>,
    derived_length: Option<usize>,
    witnessed: bool,
}

/// Runs every check over `records`, the PSL(2,2^n) sweep for n = 2..8 and
/// `options.random_sets` random degree sets.
pub fn verify_all(records: &[GroupRecord], options: VerifyOptions) -> Report {
    let mut results = Vec::new();
    let mut scanned: Vec<Scanned> = Vec::new();
    for record in records {
        let stored = record.degree_set();
        let facts = analyse_group(record, options.cap);
        let stored_set = match stored {
            Some(Ok(set)) => Some(set),
            Some(Err(e)) => {
                results.push(CheckResult::new("component-identity", &record.name, Status::Fail, format!("invalid degrees: {e}")));
                None
            }
            None => None,
        };
        let ok_facts = facts.as_ref().and_then(|f| f.as_ref().ok());
        let degrees = stored_set.clone().or_else(|| ok_facts.map(|f| f.cd.clone()));
        let solvable = ok_facts.map(|f| f.solvable).or(record.solvable);
        let derived_length = ok_facts.and_then(|f| f.derived_length);
        if let Some(degrees) = degrees {
            let subject = Subject {
                name: &record.name,
                degrees: &degrees,
                solvable,
                derived_length,
                witnessed: ok_facts.is_some(),
            };
            results.extend(degree_checks(&subject));
            scanned.push(Scanned {
                name: record.name.clone(),
                degrees: degrees.clone(),
                solvable,
                derived_length,
                witnessed: ok_facts.is_some(),
            });
        }
        results.extend(record_group_checks(record, stored_set.as_ref(), facts.as_ref()));
    }
    if records.is_empty() && options.random_sets == 0 {
        return Report::new(results);
    }
    for n in 2..=8 {
        results.push(check_psl2_even_family(n));
    }
    let random = random_degree_sets(options.seed, options.random_sets);
    let names: Vec<String> = (0..random.len()).map(|i| format!("random#{i}")).collect();
    let random_subjects: Vec<Subject> =
        random.iter().zip(&names).map(|(set, name)| Subject::set(name, set)).collect();
    if !random_subjects.is_empty() {
        let label = format!("random(seed={}, count={})", options.seed, random_subjects.len());
        type Check = fn(&Subject) -> CheckResult;
        let combinatorial: [(&str, Check); 3] = [
            ("component-identity", check_component_identity),
            ("diameter-relations", check_diameter_relations),
            ("shape-transfer", check_shape_transfer),
        ];
        for (id, check) in combinatorial {
            results.push(aggregate(id, &label, random_subjects.iter().map(check)));
        }
    }
    let mut scan: Vec<Subject> = scanned
        .iter()
        .map(|s| Subject {
            name: &s.name,
            degrees: &s.degrees,
            solvable: s.solvable,
            derived_length: s.derived_length,
            witnessed: s.witnessed,
        })
        .collect();
    scan.extend(random_subjects);
    results.push(check_c8_impossible(&scan));
    Report::new(results)
}

/// Runs `verify_all` with the default options.
pub fn verify_corpus(records: &[GroupRecord]) -> Report {
    verify_all(records, VerifyOptions { random_sets: 0, ..VerifyOptions::default() })
}

fn aggregate(id: &str, label: &str, results: impl Iterator<Item = CheckResult>) -> CheckResult {
    let (mut pass, mut inapplicable, mut total) = (0, 0, 0);
    let mut first_failure = None;
    let mut failures = 0;
    for r in results {
        total += 1;
        match r.status {
            Status::Pass => pass += 1,
            Status::Inapplicable => inapplicable += 1,
            Status::Fail => {
                failures += 1;
                first_failure.get_or_insert(r);
            }
        }
    }
    let mut detail = format!("{total} sets: {pass} pass, {inapplicable} inapplicable, {failures} fail");
    match first_failure {
        Some(f) => {
            let _ = write!(detail, "; first failure {}: {}", f.subject, f.detail);
            CheckResult::new(id, label, Status::Fail, detail)
        }
        None => CheckResult::new(id, label, Status::Pass, detail),
    }
}
