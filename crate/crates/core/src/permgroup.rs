//! Desk-scale permutation groups.
//!
//! Groups are stored by full element enumeration, which is fine up to a few
//! hundred thousand elements. Products compose left to right: `a.then(b)`
//! applies `a` first, matching the usual cycle-notation convention.

use std::borrow::Borrow;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::arith::lcm;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 200_000;

/// Groups up to this order compute the derived subgroup from all pairwise
/// element commutators; larger groups use the normal closure of generator
/// commutators.
pub const PAIRWISE_COMMUTATOR_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cycle notation error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Hypotheses of the inertia-index computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// N is a subgroup of G.
    Subgroup,
    /// N is normal in G.
    Normal,
    /// N is abelian.
    Abelian,
    /// G/N is abelian.
    AbelianQuotient,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::Subgroup => "N is not contained in G",
            Hypothesis::Normal => "N is not normal in G",
            Hypothesis::Abelian => "N is not abelian",
            Hypothesis::AbelianQuotient => "G/N is not abelian",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("group enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("permutation on {found} points given for a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    NotBijection(String),
    #[error("precondition failed: {0}")]
    Precondition(Hypothesis),
    #[error("internal error: {0}")]
    Internal(String),
}

/// A permutation of `{1, ..., degree}`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// From 1-based images: `images[i - 1]` is the image of point `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(GroupError::NotBijection(format!("{images:?}")));
            }
            seen[img - 1] = true;
            out.push((img - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inverse().then(&b.inverse()).then(a).then(b)
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut acc = 1u64;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            acc = lcm(acc, len).expect("permutation order fits in u64");
        }
        acc
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Parses disjoint-cycle notation such as `"(1 2 3)(4 5)"` on
    /// `{1, ..., degree}`. `"()"` is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self, ParseError> {
        parse_cycles(text, degree)
    }
}

impl Borrow<[u32]> for Permutation {
    fn borrow(&self) -> &[u32] {
        &self.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            let parts: Vec<String> = cycle.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Parser for `PERM := "()" | CYCLE+`, `CYCLE := "(" INT (WS INT)* ")"`.
/// Whitespace is allowed around and between cycles but not inside the
/// parentheses except as a separator.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, ParseError> {
    let bytes = text.as_bytes();
    let err = |position: usize, message: String| ParseError { position, message };
    let skip_ws = |mut i: usize| {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        i
    };
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let mut pos = skip_ws(0);
    if pos == bytes.len() {
        return Err(err(pos, "expected '('".into()));
    }
    if text[pos..].starts_with("()") {
        let end = skip_ws(pos + 2);
        if end != bytes.len() {
            return Err(err(end, "nothing may follow the identity \"()\"".into()));
        }
        return Ok(Permutation { images });
    }
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(err(pos, format!("expected '(', found {:?}", bytes[pos] as char)));
        }
        pos += 1;
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(match bytes.get(pos) {
                    Some(&c) => err(pos, format!("expected a point, found {:?}", c as char)),
                    None => err(pos, "unexpected end of input, expected a point".into()),
                });
            }
            let point: usize = text[start..pos]
                .parse()
                .map_err(|_| err(start, format!("point {} is too large", &text[start..pos])))?;
            if point == 0 || point > degree {
                return Err(err(start, format!("point {point} outside 1..={degree}")));
            }
            if used[point - 1] {
                return Err(err(start, format!("point {point} repeated")));
            }
            used[point - 1] = true;
            cycle.push(point - 1);
            match bytes.get(pos) {
                Some(b')') => {
                    pos += 1;
                    break;
                }
                Some(c) if c.is_ascii_whitespace() => pos = skip_ws(pos),
                Some(&c) => return Err(err(pos, format!("unexpected {:?} inside cycle", c as char))),
                None => return Err(err(pos, "unclosed '('".into())),
            }
        }
        for (i, &p) in cycle.iter().enumerate() {
            images[p] = cycle[(i + 1) % cycle.len()] as u32;
        }
        pos = skip_ws(pos);
    }
    Ok(Permutation { images })
}

/// One conjugacy class, stored as element indices into its group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: usize,
    pub size: u64,
    pub inverse_class: usize,
    pub rep_order: u64,
    pub members: Vec<usize>,
}

/// A fully enumerated permutation group. Conjugacy classes are computed on
/// first use.
///
/// Element 0 is the identity and class 0 is its class. Classes are sorted by
/// element order, then by first appearance in the enumeration.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    classes: OnceLock<ClassData>,
}

#[derive(Debug, Clone)]
struct ClassData {
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
}

impl PermGroup {
    /// Enumerates the group generated by `generators` on `degree` points.
    pub fn generate(
        degree: usize,
        generators: &[Permutation],
        cap: usize,
    ) -> Result<PermGroup, GroupError> {
        for g in generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let (elements, lookup) = enumerate(degree, generators, cap)?;
        Ok(PermGroup {
            degree,
            generators: generators.to_vec(),
            elements,
            lookup,
            classes: OnceLock::new(),
        })
    }

    /// Parses cycle-notation generators and enumerates the group.
    pub fn from_cycles<S: AsRef<str>>(
        degree: usize,
        generators: &[S],
        cap: usize,
    ) -> Result<PermGroup, GroupError> {
        let gens = generators
            .iter()
            .map(|s| parse_cycles(s.as_ref(), degree))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::generate(degree, &gens, cap)
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> ClassData {
        let n = self.elements.len();
        let gen_pairs: Vec<(Permutation, Permutation)> =
            self.generators.iter().map(|g| (g.inverse(), g.clone())).collect();
        let mut assigned = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if assigned[start] != usize::MAX {
                continue;
            }
            let label = raw.len();
            assigned[start] = label;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for (ginv, g) in &gen_pairs {
                    let y = ginv.then(&self.elements[x]).then(g);
                    let yi = self.lookup[&y];
                    if assigned[yi] == usize::MAX {
                        assigned[yi] = label;
                        members.push(yi);
                        queue.push_back(yi);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
        let mut keyed: Vec<(u64, usize, Vec<usize>)> = raw
            .into_iter()
            .map(|m| (self.elements[m[0]].order(), m[0], m))
            .collect();
        keyed.sort_by_key(|&(order, first, _)| (order, first));
        let mut class_of = vec![0; n];
        for (ci, (_, _, members)) in keyed.iter().enumerate() {
            for &m in members {
                class_of[m] = ci;
            }
        }
        let mut classes: Vec<ConjClass> = keyed
            .into_iter()
            .map(|(rep_order, first, members)| ConjClass {
                representative: first,
                size: members.len() as u64,
                inverse_class: 0,
                rep_order,
                members,
            })
            .collect();
        for class in classes.iter_mut() {
            let inv = self.elements[class.representative].inverse();
            class.inverse_class = class_of[self.lookup[&inv]];
        }
        ClassData { classes, class_of }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.lookup.contains_key(p)
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.class_data().classes
    }

    pub fn class_count(&self) -> usize {
        self.classes().len()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_data().class_of[element]
    }

    pub fn class_sizes(&self) -> Vec<u64> {
        self.classes().iter().map(|c| c.size).collect()
    }

    pub fn representative(&self, class: usize) -> &Permutation {
        &self.elements[self.classes()[class].representative]
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.classes()
            .iter()
            .fold(1, |acc, c| lcm(acc, c.rep_order).expect("exponent fits in u64"))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..].iter().all(|b| a.then(b) == b.then(a))
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Whether every element of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Whether `self` is normalized by `other` (conjugation by the
    /// generators of `other` preserves `self`).
    pub fn is_normalized_by(&self, other: &PermGroup) -> bool {
        other
            .generators
            .iter()
            .all(|g| self.generators.iter().all(|n| self.contains(&n.conjugate_by(g))))
    }

    /// The commutator subgroup.
    ///
    /// Up to [`PAIRWISE_COMMUTATOR_LIMIT`] elements this closes the set of
    /// all element commutators; beyond it, it takes the normal closure of
    /// the generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        if self.elements.len() <= PAIRWISE_COMMUTATOR_LIMIT {
            self.derived_subgroup_pairwise()
        } else {
            self.derived_subgroup_normal_closure()
        }
    }

    pub(crate) fn derived_subgroup_pairwise(&self) -> PermGroup {
        let inverses: Vec<Permutation> = self.elements.iter().map(Permutation::inverse).collect();
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = self.trivial_subgroup();
        let mut buf = vec![0u32; self.degree];
        for (x, xinv) in self.elements.iter().zip(&inverses) {
            for (y, yinv) in self.elements.iter().zip(&inverses) {
                for (i, slot) in buf.iter_mut().enumerate() {
                    let a = xinv.images[i] as usize;
                    let b = yinv.images[a] as usize;
                    *slot = y.images[x.images[b] as usize];
                }
                if !current.lookup.contains_key(buf.as_slice()) {
                    gens.push(Permutation { images: buf.clone() });
                    current = PermGroup::generate(self.degree, &gens, usize::MAX)
                        .expect("subgroup of an enumerated group");
                }
            }
        }
        current
    }

    pub(crate) fn derived_subgroup_normal_closure(&self) -> PermGroup {
        let mut seeds = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                seeds.push(Permutation::commutator(a, b));
            }
        }
        self.normal_closure(seeds)
    }

    /// Smallest subgroup containing `candidates`, built incrementally so
    /// only candidates outside the current subgroup become generators.
    fn closure_of(&self, candidates: Vec<Permutation>) -> PermGroup {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = self.trivial_subgroup();
        for c in candidates {
            if !current.contains(&c) {
                gens.push(c);
                current = PermGroup::generate(self.degree, &gens, usize::MAX)
                    .expect("subgroup of an enumerated group");
            }
        }
        current
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: Vec<Permutation>) -> PermGroup {
        let mut current = self.closure_of(seeds);
        loop {
            let missing: Vec<Permutation> = current
                .generators
                .iter()
                .flat_map(|n| self.generators.iter().map(move |g| n.conjugate_by(g)))
                .filter(|c| !current.contains(c))
                .collect();
            if missing.is_empty() {
                return current;
            }
            let mut gens = current.generators.clone();
            gens.extend(missing);
            let gens = minimal_generators(self.degree, gens);
            current = PermGroup::generate(self.degree, &gens, usize::MAX)
                .expect("subgroup of an enumerated group");
        }
    }

    fn trivial_subgroup(&self) -> PermGroup {
        PermGroup::generate(self.degree, &[], 1).expect("trivial group")
    }

    /// Subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<PermGroup, GroupError> {
        for g in gens {
            if g.degree() != self.degree {
                return Err(GroupError::DegreeMismatch { expected: self.degree, found: g.degree() });
            }
            if !self.contains(g) {
                return Err(GroupError::Precondition(Hypothesis::Subgroup));
            }
        }
        PermGroup::generate(self.degree, gens, self.elements.len())
    }

    /// `G = G^0 > G^1 > ...`, stopping at the first term equal to its own
    /// derived subgroup. A solvable group's series ends in the trivial group.
    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().expect("nonempty series");
            if last.is_trivial() {
                break;
            }
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(PermGroup::is_trivial)
    }

    /// Derived length, or `None` for a nonsolvable group.
    pub fn derived_length(&self) -> Option<usize> {
        derived_length(&self.derived_series())
    }
}

/// Number of strict steps in a series that ends in the trivial group.
pub fn derived_length(series: &[PermGroup]) -> Option<usize> {
    series.last().filter(|g| g.is_trivial()).map(|_| series.len() - 1)
}

fn minimal_generators(degree: usize, gens: Vec<Permutation>) -> Vec<Permutation> {
    let mut kept: Vec<Permutation> = Vec::new();
    let mut current = PermGroup::generate(degree, &[], 1).expect("trivial group");
    for g in gens {
        if !current.contains(&g) {
            kept.push(g);
            current = PermGroup::generate(degree, &kept, usize::MAX).expect("finite group");
        }
    }
    kept
}

#[allow(clippy::type_complexity)]
fn enumerate(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<(Vec<Permutation>, HashMap<Permutation, usize>), GroupError> {
    let identity = Permutation::identity(degree);
    let mut elements = vec![identity.clone()];
    let mut lookup = HashMap::from([(identity, 0)]);
    if cap == 0 {
        return Err(GroupError::CapExceeded { cap });
    }
    let mut next = 0;
    while next < elements.len() {
        for g in generators {
            let h = elements[next].then(g);
            if !lookup.contains_key(&h) {
                if elements.len() == cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                lookup.insert(h.clone(), elements.len());
                elements.push(h);
            }
        }
        next += 1;
    }
    Ok((elements, lookup))
}

/// Orbit of one irreducible character of `N` under conjugation by `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterOrbit {
    /// Smallest character of the orbit, as exponents on the cyclic factors.
    pub representative: Vec<u64>,
    /// Orbit length, equal to the inertia index `[G : I_G(λ)]`.
    pub index: u64,
}

/// Result of the inertia-index computation for an abelian normal subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualOrbits {
    /// Orders of the cyclic factors of `N`.
    pub cyclic_factors: Vec<u64>,
    pub orbits: Vec<CharacterOrbit>,
    /// `[G : N]`.
    pub quotient_order: u64,
}

impl DualOrbits {
    /// One inertia index per orbit, ascending.
    pub fn indices(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.orbits.iter().map(|o| o.index).collect();
        out.sort_unstable();
        out
    }

    /// The distinct inertia indices.
    pub fn index_set(&self) -> Vec<u64> {
        let mut out = self.indices();
        out.dedup();
        out
    }

    /// Number of characters of `N` (sum of orbit lengths).
    pub fn character_count(&self) -> u64 {
        self.orbits.iter().map(|o| o.index).sum()
    }
}

/// For `N = <n_gens>` abelian and normal in `G` with `G/N` abelian, returns
/// the orbits of `G` on `Irr(N)`. The distinct orbit lengths
/// `[G : I_G(λ)]` are the character degrees of `G` in this situation.
pub fn abelian_dual_orbit_indices(
    g: &PermGroup,
    n_gens: &[Permutation],
) -> Result<DualOrbits, GroupError> {
    let n = g.subgroup(n_gens)?;
    if !n.is_normalized_by(g) {
        return Err(GroupError::Precondition(Hypothesis::Normal));
    }
    if !n.is_abelian() {
        return Err(GroupError::Precondition(Hypothesis::Abelian));
    }
    for (i, a) in g.generators().iter().enumerate() {
        for b in &g.generators()[i + 1..] {
            if !n.contains(&Permutation::commutator(a, b)) {
                return Err(GroupError::Precondition(Hypothesis::AbelianQuotient));
            }
        }
    }

    let basis = cyclic_decomposition(&n)?;
    let factors: Vec<u64> = basis.iter().map(|&b| n.element(b).order()).collect();
    let coords = coordinates(&n, &basis, &factors)?;
    let exponent = factors.iter().fold(1, |acc, &f| lcm(acc, f).expect("small exponent"));

    // λ = (l_1, ..., l_t) sends b_i to exp(2πi l_i / n_i); values are
    // tracked as numerators over the exponent of N.
    let value = |lambda: &[u64], x: usize| -> u64 {
        coords[x]
            .iter()
            .zip(lambda)
            .zip(&factors)
            .map(|((&c, &l), &f)| c * l % f * (exponent / f))
            .sum::<u64>()
            % exponent
    };
    let total: u64 = factors.iter().product();
    let encode = |lambda: &[u64]| -> usize {
        lambda.iter().zip(&factors).fold(0usize, |acc, (&l, &f)| acc * f as usize + l as usize)
    };
    let decode = |mut idx: usize| -> Vec<u64> {
        let mut out = vec![0; factors.len()];
        for (slot, &f) in out.iter_mut().zip(&factors).rev() {
            *slot = (idx % f as usize) as u64;
            idx /= f as usize;
        }
        out
    };
    // conjugates of each basis element by each generator of G, as indices in N
    let conj_basis: Vec<Vec<usize>> = g
        .generators()
        .iter()
        .map(|h| {
            basis
                .iter()
                .map(|&b| n.index_of(&n.element(b).conjugate_by(h)).expect("N is normal"))
                .collect()
        })
        .collect();
    let act = |lambda: &[u64], gen: usize| -> Vec<u64> {
        conj_basis[gen]
            .iter()
            .zip(&factors)
            .map(|(&x, &f)| value(lambda, x) / (exponent / f))
            .collect()
    };

    let mut seen = vec![false; total as usize];
    let mut orbits = Vec::new();
    for start in 0..total as usize {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut size = 1u64;
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            let lambda = decode(cur);
            for gen in 0..conj_basis.len() {
                let next = encode(&act(&lambda, gen));
                if !seen[next] {
                    seen[next] = true;
                    size += 1;
                    queue.push_back(next);
                }
            }
        }
        orbits.push(CharacterOrbit { representative: decode(start), index: size });
    }
    Ok(DualOrbits { cyclic_factors: factors, orbits, quotient_order: g.order() / n.order() })
}

// Elements of an abelian group are closed under products, so a subgroup is a
// sorted list of element indices.
fn abelian_closure(n: &PermGroup, base: &[usize], extra: usize) -> Vec<usize> {
    let mut members: HashSet<usize> = base.iter().copied().collect();
    members.insert(0);
    let mut queue: VecDeque<usize> = members.iter().copied().collect();
    let step = n.element(extra).clone();
    let mut gens: Vec<Permutation> = base.iter().map(|&b| n.element(b).clone()).collect();
    gens.push(step);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = n.index_of(&n.element(x).then(g)).expect("closed in N");
            if members.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<usize> = members.into_iter().collect();
    out.sort_unstable();
    out
}

/// Basis `b_1, ..., b_t` of the abelian group `n`, so that every element is
/// uniquely a product of powers of the `b_i`.
///
/// Repeatedly takes an element of maximal order in the remaining subgroup
/// and searches for a complement to the cyclic group it generates.
fn cyclic_decomposition(n: &PermGroup) -> Result<Vec<usize>, GroupError> {
    let mut basis = Vec::new();
    let mut remaining: Vec<usize> = (0..n.elements().len()).collect();
    while remaining.len() > 1 {
        let &top = remaining
            .iter()
            .max_by_key(|&&x| (n.element(x).order(), std::cmp::Reverse(x)))
            .expect("nonempty");
        let cyclic = abelian_closure(n, &[], top);
        let target = remaining.len() / cyclic.len();
        let complement = find_complement(n, &remaining, &cyclic, &[0], target)
            .ok_or_else(|| GroupError::Internal("no complement to a cyclic factor".into()))?;
        basis.push(top);
        remaining = complement;
    }
    Ok(basis)
}

fn find_complement(
    n: &PermGroup,
    ambient: &[usize],
    cyclic: &[usize],
    current: &[usize],
    target: usize,
) -> Option<Vec<usize>> {
    if current.len() == target {
        return Some(current.to_vec());
    }
    for &x in ambient {
        if current.binary_search(&x).is_ok() || cyclic.binary_search(&x).is_ok() {
            continue;
        }
        let grown = abelian_closure(n, current, x);
        let meets = grown.iter().filter(|y| cyclic.binary_search(y).is_ok()).count();
        if meets != 1 || !target.is_multiple_of(grown.len()) {
            continue;
        }
        if let Some(found) = find_complement(n, ambient, cyclic, &grown, target) {
            return Some(found);
        }
    }
    None
}

fn coordinates(
    n: &PermGroup,
    basis: &[usize],
    factors: &[u64],
) -> Result<Vec<Vec<u64>>, GroupError> {
    let size = n.elements().len();
    let mut coords: Vec<Option<Vec<u64>>> = vec![None; size];
    let mut stack: Vec<(Permutation, Vec<u64>)> =
        vec![(Permutation::identity(n.degree()), Vec::new())];
    // expand one basis element at a time
    for (&b, &f) in basis.iter().zip(factors) {
        let gen = n.element(b);
        let mut next = Vec::with_capacity(stack.len() * f as usize);
        for (elem, coord) in stack {
            let mut cur = elem;
            for k in 0..f {
                let mut c = coord.clone();
                c.push(k);
                next.push((cur.clone(), c));
                cur = cur.then(gen);
            }
        }
        stack = next;
    }
    for (elem, coord) in stack {
        let idx = n.index_of(&elem).expect("product lies in N");
        if coords[idx].replace(coord).is_some() {
            return Err(GroupError::Internal("cyclic factors are not independent".into()));
        }
    }
    coords
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| GroupError::Internal("cyclic factors do not span N".into()))
}

/// Element-order histogram, handy for identifying small groups.
pub fn order_statistics(g: &PermGroup) -> BTreeMap<u64, usize> {
    let mut out = BTreeMap::new();
    for c in g.classes() {
        *out.entry(c.rep_order).or_insert(0) += c.members.len();
    }
    out
}
