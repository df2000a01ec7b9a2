//! Closed-form degree sets for named group families, degree-set products,
//! and the bundled corpus of example groups with its JSON format.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{factorize, ArithError, DegreeSet, MAX_VALUE};
use crate::permgroup::{parse_cycles, GroupError, PermGroup, Permutation};

/// Tag prefix carrying generators of an abelian normal subgroup with
/// abelian quotient, as `;`-separated cycle strings.
pub const ABELIAN_NORMAL_TAG: &str = "abelian-normal=";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("q = {0} must be at least 4")]
    TooSmall(u64),
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("degree product {0} * {1} exceeds 2^63 - 1")]
    Overflow(u64, u64),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot access corpus file: {0}")]
    Io(#[from] std::io::Error),
    #[error("corpus is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("record {index}, field `{field}`: {message}")]
    Record { index: usize, field: String, message: String },
}

/// `cd(PSL(2, q))` for a prime power `q ≥ 4`.
///
/// Even `q` gives `{1, q-1, q, q+1}`. Odd `q` adds `(q + ε)/2` with
/// `ε = (-1)^((q-1)/2)`; for `q = 5` the degree `q + 1` does not occur
/// (PSL(2,5) ≅ A5 has degrees 1, 3, 3, 4, 5).
pub fn psl2_degrees(q: u64) -> Result<DegreeSet, FamilyError> {
    if q < 4 {
        return Err(FamilyError::TooSmall(q));
    }
    if !factorize(q)?.is_prime_power() {
        return Err(FamilyError::NotPrimePower(q));
    }
    let plus = q.checked_add(1).filter(|&x| x <= MAX_VALUE).ok_or(FamilyError::Overflow(q, 1))?;
    let mut degrees = vec![1, q - 1, q];
    if q.is_multiple_of(2) {
        degrees.push(plus);
    } else {
        let half = if q % 4 == 1 { plus / 2 } else { (q - 1) / 2 };
        degrees.push(half);
        if q != 5 {
            degrees.push(plus);
        }
    }
    Ok(DegreeSet::new(degrees)?)
}

/// `{xy : x ∈ X, y ∈ Y}`, the degree set of a direct product. The member 1
/// is present in the result when it is recorded in both factors.
pub fn direct_product_degrees(x: &DegreeSet, y: &DegreeSet) -> Result<DegreeSet, FamilyError> {
    let xs = with_one(x);
    let ys = with_one(y);
    let mut out = BTreeSet::new();
    for &a in &xs {
        for &b in &ys {
            let prod = a.checked_mul(b).filter(|&p| p <= MAX_VALUE).ok_or(FamilyError::Overflow(a, b))?;
            out.insert(prod);
        }
    }
    if !(x.contains_one() && y.contains_one()) {
        out.remove(&1);
    }
    Ok(DegreeSet::new(out)?)
}

fn with_one(x: &DegreeSet) -> Vec<u64> {
    let mut v: Vec<u64> = x.nonlinear().collect();
    v.insert(0, 1);
    v
}

/// Permutation generators of a corpus group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generators {
    pub deg: usize,
    pub perms: Vec<String>,
}

impl Generators {
    pub fn new<S: Into<String>>(deg: usize, perms: impl IntoIterator<Item = S>) -> Self {
        Generators { deg, perms: perms.into_iter().map(Into::into).collect() }
    }

    pub fn parse(&self) -> Result<Vec<Permutation>, GroupError> {
        self.perms.iter().map(|p| Ok(parse_cycles(p, self.deg)?)).collect()
    }

    pub fn group(&self, cap: usize) -> Result<PermGroup, GroupError> {
        PermGroup::generate(self.deg, &self.parse()?, cap)
    }
}

/// One corpus entry: a named group with its degree set, its generators, or
/// both.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Generators>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solvable: Option<bool>,
    pub tags: Vec<String>,
    pub source: String,
}

impl GroupRecord {
    pub fn from_degrees(name: &str, degrees: &[u64], source: &str) -> Self {
        GroupRecord {
            name: name.into(),
            order: None,
            degrees: Some(degrees.to_vec()),
            generators: None,
            solvable: None,
            tags: Vec::new(),
            source: source.into(),
        }
    }

    pub fn with_generators(mut self, deg: usize, perms: &[&str]) -> Self {
        self.generators = Some(Generators::new(deg, perms.iter().copied()));
        self
    }

    pub fn with_order(mut self, order: u64) -> Self {
        self.order = Some(order);
        self
    }

    pub fn with_solvable(mut self, solvable: bool) -> Self {
        self.solvable = Some(solvable);
        self
    }

    pub fn with_tags(mut self, tags: &[&str]) -> Self {
        self.tags.extend(tags.iter().map(|t| t.to_string()));
        self
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    /// The stored degree set, if any.
    pub fn degree_set(&self) -> Option<Result<DegreeSet, ArithError>> {
        self.degrees.as_ref().map(|d| DegreeSet::new(d.iter().copied()))
    }

    /// Generators of an abelian normal subgroup recorded in the tags.
    pub fn abelian_normal_generators(&self) -> Option<Vec<String>> {
        self.tags.iter().find_map(|t| {
            t.strip_prefix(ABELIAN_NORMAL_TAG)
                .map(|rest| rest.split(';').map(|s| s.trim().to_string()).collect())
        })
    }

    fn validate(&self, index: usize) -> Result<(), CorpusError> {
        let bad = |field: &str, message: String| CorpusError::Record {
            index,
            field: field.into(),
            message,
        };
        if self.degrees.is_none() && self.generators.is_none() {
            return Err(bad("degrees", "record needs degrees, generators, or both".into()));
        }
        if let Some(degrees) = &self.degrees {
            if let Err(e) = DegreeSet::new(degrees.iter().copied()) {
                return Err(bad("degrees", e.to_string()));
            }
        }
        if self.order == Some(0) {
            return Err(bad("order", "order must be positive".into()));
        }
        if let Some(gens) = &self.generators {
            if gens.deg == 0 {
                return Err(bad("generators", "deg must be positive".into()));
            }
            if let Err(e) = gens.parse() {
                return Err(bad("generators", e.to_string()));
            }
        }
        if let Some(normal) = self.abelian_normal_generators() {
            let deg = self.generators.as_ref().map(|g| g.deg).ok_or_else(|| {
                bad("tags", format!("{ABELIAN_NORMAL_TAG} needs generators"))
            })?;
            for p in normal {
                parse_cycles(&p, deg).map_err(|e| bad("tags", e.to_string()))?;
            }
        }
        Ok(())
    }
}

/// Parses and validates a corpus document.
pub fn parse_corpus(text: &str) -> Result<Vec<GroupRecord>, CorpusError> {
    let raw: Vec<serde_json::Value> = serde_json::from_str(text)?;
    let mut records = Vec::with_capacity(raw.len());
    for (index, value) in raw.into_iter().enumerate() {
        let record: GroupRecord = serde_json::from_value(value).map_err(|e| CorpusError::Record {
            index,
            field: schema_field(&e.to_string()),
            message: e.to_string(),
        })?;
        record.validate(index)?;
        records.push(record);
    }
    Ok(records)
}

// serde_json reports the offending field inside backticks
fn schema_field(message: &str) -> String {
    message
        .split('`')
        .nth(1)
        .map_or_else(|| "record".to_string(), str::to_string)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<GroupRecord>, CorpusError> {
    parse_corpus(&fs::read_to_string(path)?)
}

pub fn save_corpus(records: &[GroupRecord], path: impl AsRef<Path>) -> Result<(), CorpusError> {
    let mut text = serde_json::to_string_pretty(records)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn normal_tag(perms: &[&str]) -> String {
    format!("{ABELIAN_NORMAL_TAG}{}", perms.join(";"))
}

/// The bundled corpus.
pub fn builtin_corpus() -> Vec<GroupRecord> {
    let extremal = [
        1,
        3,
        5,
        15,
        7 * 31 * 151,
        (1 << 7) * 7 * 31 * 151,
        (1 << 12) * 31 * 151,
        (1 << 12) * 3 * 31 * 151,
        (1 << 12) * 7 * 31 * 151,
        (1 << 13) * 7 * 31 * 151,
        (1 << 15) * 3 * 31 * 151,
    ];
    let n588 = [
        "(1 2 3 4 5 6 7)(8 9 10 11 12 13 14)(15 16 17 18 19 20 21)(22 23 24 25 26 27 28)(29 30 31 32 33 34 35)(36 37 38 39 40 41 42)(43 44 45 46 47 48 49)",
        "(1 8 15 22 29 36 43)(2 9 16 23 30 37 44)(3 10 17 24 31 38 45)(4 11 18 25 32 39 46)(5 12 19 26 33 40 47)(6 13 20 27 34 41 48)(7 14 21 28 35 42 49)",
    ];
    let g588 = [
        n588[0],
        n588[1],
        "(2 4 3 7 5 6)(8 22 15 43 29 36)(9 25 17 49 33 41)(10 28 19 48 30 39)(11 24 21 47 34 37)(12 27 16 46 31 42)(13 23 18 45 35 40)(14 26 20 44 32 38)",
        "(8 43)(9 44)(10 45)(11 46)(12 47)(13 48)(14 49)(15 36)(16 37)(17 38)(18 39)(19 40)(20 41)(21 42)(22 29)(23 30)(24 31)(25 32)(26 33)(27 34)(28 35)",
    ];
    vec![
        GroupRecord::from_degrees(
            "M10",
            &[1, 9, 10, 16],
            "published degree set of the Mathieu group M10; Dixon multiset 1,1,9,9,10,10,10,16",
        )
        .with_order(720)
        .with_solvable(false)
        .with_generators(
            10,
            &["(1 4 7)(2 5 8)(3 6 9)", "(2 6 3 8)(4 5 7 9)", "(1 10)(2 6)(3 8)(4 7)", "(2 7 3 4)(5 8 9 6)"],
        )
        .with_tags(&["union-of-paths", "nonsolvable"]),
        GroupRecord::from_degrees(
            "PSL(2,25)",
            &[1, 13, 24, 25, 26],
            "published degree set of PSL(2,25); Dixon multiset has 15 degrees, squares sum to 7800",
        )
        .with_order(7800)
        .with_solvable(false)
        .with_generators(
            26,
            &[
                "(1 6 11 16 21)(2 7 12 17 22)(3 8 13 18 23)(4 9 14 19 24)(5 10 15 20 25)",
                "(2 15 25 3 24 19 5 17 7 4 8 13)(6 20 14 11 9 22 21 12 18 16 23 10)",
                "(1 26)(2 19)(3 25)(4 7)(5 13)(6 21)(8 17)(9 14)(10 12)(15 24)(18 23)(20 22)",
            ],
        )
        .with_tags(&["union-of-paths", "nonsolvable", "psl2-odd"]),
        GroupRecord::from_degrees(
            "extremal-diam7",
            &extremal,
            "solvable group whose bipartite divisor graph attains diameter 7",
        )
        .with_solvable(true)
        .with_tags(&["diam7"]),
        GroupRecord::from_degrees("S3:A4", &[1, 2, 3, 6], "semidirect product S3 by A4, order 72")
            .with_order(72)
            .with_solvable(true)
            .with_tags(&["path"]),
        GroupRecord::from_degrees(
            "order588-C4",
            &[1, 6, 12],
            "the two nonabelian groups of order 588 (out of 66) whose bipartite divisor graph is a 4-cycle",
        )
        .with_order(588)
        .with_solvable(true)
        .with_tags(&["cycle"]),
        GroupRecord::from_degrees(
            "(Z7xZ7):(Z2xZ6)",
            &[1, 6, 12],
            "permutation witness of order 588 on 49 points; Dixon multiset 1^12, 6^4, 12^3",
        )
        .with_order(588)
        .with_solvable(true)
        .with_generators(49, &g588)
        .with_tags(&["cycle", &normal_tag(&n588)]),
        GroupRecord::from_degrees(
            "cycle6-p13-q7",
            &[1, 21, 1183, 6591],
            "degree pattern {1, 3q, p^2 q, 3p^3} at p = 13, q = 7, realized by a Camina p-group extension",
        )
        .with_solvable(true)
        .with_tags(&["cycle"]),
        GroupRecord::from_degrees("S3", &[1, 2], "derived: Dixon multiset 1,1,2; squares sum to 6")
            .with_order(6)
            .with_solvable(true)
            .with_generators(3, &["(1 2)", "(1 2 3)"])
            .with_tags(&["small", &normal_tag(&["(1 2 3)"])]),
        GroupRecord::from_degrees("S4", &[1, 2, 3], "derived: Dixon multiset 1,1,2,3,3; squares sum to 24")
            .with_order(24)
            .with_solvable(true)
            .with_generators(4, &["(1 2 3 4)", "(1 2)"])
            .with_tags(&["small"]),
        GroupRecord::from_degrees("A4", &[1, 3], "derived: Dixon multiset 1,1,1,3; squares sum to 12")
            .with_order(12)
            .with_solvable(true)
            .with_generators(4, &["(1 2 3)", "(2 3 4)"])
            .with_tags(&["small"]),
        GroupRecord::from_degrees(
            "A5",
            &[1, 3, 4, 5],
            "PSL(2,4) = PSL(2,5); derived: Dixon multiset 1,3,3,4,5; squares sum to 60",
        )
        .with_order(60)
        .with_solvable(false)
        .with_generators(5, &["(1 2 3 4 5)", "(1 2 3)"])
        .with_tags(&["small", "nonsolvable", "psl2-even"]),
        GroupRecord::from_degrees("D4", &[1, 2], "dihedral of order 8; derived: Dixon multiset 1,1,1,1,2")
            .with_order(8)
            .with_solvable(true)
            .with_generators(4, &["(1 2 3 4)", "(1 3)"])
            .with_tags(&["small", &normal_tag(&["(1 2 3 4)"])]),
        GroupRecord::from_degrees("Q8", &[1, 2], "quaternion; derived: Dixon multiset 1,1,1,1,2")
            .with_order(8)
            .with_solvable(true)
            .with_generators(8, &["(1 3 2 4)(5 8 6 7)", "(1 5 2 6)(3 7 4 8)"])
            .with_tags(&["small"]),
        GroupRecord::from_degrees("SL(2,3)", &[1, 2, 3], "derived: Dixon multiset 1,1,1,2,2,2,3; squares sum to 24")
            .with_order(24)
            .with_solvable(true)
            .with_generators(8, &["(1 4 7)(2 8 5)", "(1 6 2 3)(4 7 8 5)"])
            .with_tags(&["small"]),
        GroupRecord::from_degrees("GL(2,3)", &[1, 2, 3, 4], "derived: Dixon multiset 1,1,2,2,2,3,3,4; squares sum to 48")
            .with_order(48)
            .with_solvable(true)
            .with_generators(8, &["(1 4 7)(2 8 5)", "(1 6 2 3)(4 7 8 5)", "(3 6)(4 7)(5 8)"])
            .with_tags(&["small"]),
        GroupRecord::from_degrees("PSL(2,7)", &[1, 3, 6, 7, 8], "derived: Dixon multiset 1,3,3,6,7,8; squares sum to 168")
            .with_order(168)
            .with_solvable(false)
            .with_generators(8, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)", "(1 8)(2 7)(3 4)(5 6)"])
            .with_tags(&["nonsolvable", "psl2-odd"]),
        GroupRecord::from_degrees("PSL(2,8)", &[1, 7, 8, 9], "derived: Dixon multiset 1,7,7,7,7,8,9,9,9; squares sum to 504")
            .with_order(504)
            .with_solvable(false)
            .with_generators(9, &["(1 5)(2 6)(3 7)(4 8)", "(2 4 6 3 7 8 5)", "(1 9)(2 8)(3 6)(4 7)"])
            .with_tags(&["nonsolvable", "psl2-even"]),
        GroupRecord::from_degrees("Z2xZ2", &[1], "abelian; every irreducible character is linear")
            .with_order(4)
            .with_solvable(true)
            .with_generators(4, &["(1 2)", "(3 4)"])
            .with_tags(&["small", "abelian", &normal_tag(&["(1 2)", "(3 4)"])]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u64]) -> DegreeSet {
        DegreeSet::new(xs.iter().copied()).unwrap()
    }

    #[test]
    fn psl2_examples() {
        assert_eq!(psl2_degrees(4).unwrap().degrees(), vec![1, 3, 4, 5]);
        assert_eq!(psl2_degrees(25).unwrap().degrees(), vec![1, 13, 24, 25, 26]);
        assert_eq!(psl2_degrees(5).unwrap().degrees(), vec![1, 3, 4, 5]);
        assert_eq!(psl2_degrees(7).unwrap().degrees(), vec![1, 3, 6, 7, 8]);
        assert_eq!(psl2_degrees(8).unwrap().degrees(), vec![1, 7, 8, 9]);
        assert_eq!(psl2_degrees(9).unwrap().degrees(), vec![1, 5, 8, 9, 10]);
    }

    #[test]
    fn psl2_rejects_bad_q() {
        assert_eq!(psl2_degrees(3), Err(FamilyError::TooSmall(3)));
        assert_eq!(psl2_degrees(6), Err(FamilyError::NotPrimePower(6)));
        assert_eq!(psl2_degrees(0), Err(FamilyError::TooSmall(0)));
        assert_eq!(psl2_degrees(12), Err(FamilyError::NotPrimePower(12)));
    }

    #[test]
    fn product_examples() {
        let x = set(&[1, 3, 4, 5]);
        assert_eq!(direct_product_degrees(&x, &set(&[1])).unwrap(), x);
        assert_eq!(direct_product_degrees(&set(&[1, 2]), &set(&[1, 3])).unwrap().degrees(), vec![1, 2, 3, 6]);
        let big = set(&[1, 1 << 40]);
        assert_eq!(direct_product_degrees(&big, &big), Err(FamilyError::Overflow(1 << 40, 1 << 40)));
    }

    #[test]
    fn product_brute_force() {
        let x = set(&[1, 2, 6, 9]);
        let y = set(&[1, 4, 15]);
        let mut expect = BTreeSet::new();
        for a in [1, 2, 6, 9] {
            for b in [1, 4, 15] {
                expect.insert(a * b);
            }
        }
        let got: BTreeSet<u64> = direct_product_degrees(&x, &y).unwrap().degrees().into_iter().collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn corpus_contents() {
        let corpus = builtin_corpus();
        assert!(corpus.len() >= 15);
        let find = |n: &str| corpus.iter().find(|r| r.name == n).unwrap();
        let m10 = find("M10");
        assert_eq!(m10.degrees.as_deref(), Some(&[1, 9, 10, 16][..]));
        assert_eq!(m10.solvable, Some(false));
        let a5 = find("A5");
        assert_eq!(a5.generators.as_ref().unwrap().deg, 5);
        assert_eq!(a5.degrees.as_deref(), Some(&[1, 3, 4, 5][..]));
        let ext = find("extremal-diam7");
        assert_eq!(ext.degrees.as_ref().unwrap().len(), 11);
        assert!(ext.has_tag("diam7"));
        assert_eq!(find("cycle6-p13-q7").degrees.as_deref(), Some(&[1, 21, 1183, 6591][..]));
        for r in &corpus {
            r.validate(0).unwrap();
        }
    }

    #[test]
    fn normal_tag_round_trip() {
        let corpus = builtin_corpus();
        let s3 = corpus.iter().find(|r| r.name == "S3").unwrap();
        assert_eq!(s3.abelian_normal_generators(), Some(vec!["(1 2 3)".to_string()]));
        let v4 = corpus.iter().find(|r| r.name == "Z2xZ2").unwrap();
        assert_eq!(v4.abelian_normal_generators().unwrap().len(), 2);
    }

    #[test]
    fn save_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.json");
        let corpus = builtin_corpus();
        save_corpus(&corpus, &path).unwrap();
        assert_eq!(load_corpus(&path).unwrap(), corpus);
    }

    #[test]
    fn json_field_names() {
        let r = GroupRecord::from_degrees("X", &[1, 2], "s").with_generators(2, &["(1 2)"]);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"name":"X","degrees":[1,2],"generators":{"deg":2,"perms":["(1 2)"]},"tags":[],"source":"s"}"#
        );
    }

    #[test]
    fn rejects_bad_records() {
        let missing = r#"[{"name":"a","degrees":[1,2],"tags":[],"source":""},{"name":"b","tags":[],"source":""}]"#;
        match parse_corpus(missing) {
            Err(CorpusError::Record { index, field, .. }) => {
                assert_eq!(index, 1);
                assert_eq!(field, "degrees");
            }
            other => panic!("unexpected {other:?}"),
        }
        let zero = r#"[{"name":"a","degrees":[0,2],"tags":[],"source":""}]"#;
        assert!(matches!(parse_corpus(zero), Err(CorpusError::Record { index: 0, .. })));
        let bad_perm = r#"[{"name":"a","generators":{"deg":3,"perms":["(1 4)"]},"tags":[],"source":""}]"#;
        assert!(matches!(
            parse_corpus(bad_perm),
            Err(CorpusError::Record { field, .. }) if field == "generators"
        ));
        let no_source = r#"[{"name":"a","degrees":[1],"tags":[]}]"#;
        assert!(matches!(
            parse_corpus(no_source),
            Err(CorpusError::Record { field, .. }) if field == "source"
        ));
        let unknown = r#"[{"name":"a","degrees":[1],"tags":[],"source":"","extra":1}]"#;
        assert!(matches!(parse_corpus(unknown), Err(CorpusError::Record { .. })));
        assert!(matches!(parse_corpus("{"), Err(CorpusError::Json(_))));
        assert_eq!(parse_corpus("[]").unwrap(), Vec::new());
    }
}
