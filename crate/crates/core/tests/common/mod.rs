//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's graph code.

#![allow(dead_code)]

/// Prime divisors by plain trial division.
pub fn trial_primes(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A graph given by vertex labels `(is_prime, value)` and an adjacency
/// matrix, with all-pairs distances from Floyd-Warshall.
pub struct OracleGraph {
    pub labels: Vec<(bool, u64)>,
    pub adjacent: Vec<Vec<bool>>,
    pub dist: Vec<Vec<Option<usize>>>,
}

impl OracleGraph {
    fn new(labels: Vec<(bool, u64)>, adjacent: Vec<Vec<bool>>) -> Self {
        let n = labels.len();
        let mut dist = vec![vec![None; n]; n];
        for i in 0..n {
            dist[i][i] = Some(0);
            for j in 0..n {
                if adjacent[i][j] {
                    dist[i][j] = Some(1);
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if let (Some(a), Some(b)) = (dist[i][k], dist[k][j]) {
                        if dist[i][j].is_none_or(|d| a + b < d) {
                            dist[i][j] = Some(a + b);
                        }
                    }
                }
            }
        }
        OracleGraph { labels, adjacent, dist }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for i in 0..self.len() {
            if seen[i] {
                continue;
            }
            let comp: Vec<usize> = (0..self.len()).filter(|&j| self.dist[i][j].is_some()).collect();
            for &j in &comp {
                seen[j] = true;
            }
            out.push(comp);
        }
        out
    }

    pub fn diameter_of(&self, comp: &[usize]) -> usize {
        let mut best = 0;
        for &i in comp {
            for &j in comp {
                best = best.max(self.dist[i][j].expect("same component"));
            }
        }
        best
    }

    pub fn diameter(&self) -> usize {
        self.components().iter().map(|c| self.diameter_of(c)).max().unwrap_or(0)
    }

    /// The component containing the vertex with this label.
    pub fn component_of(&self, label: (bool, u64)) -> Vec<usize> {
        let i = self.labels.iter().position(|&l| l == label).expect("label present");
        (0..self.len()).filter(|&j| self.dist[i][j].is_some()).collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacent[i].iter().filter(|&&a| a).count()
    }
}

fn nonlinear(degrees: &[u64]) -> Vec<u64> {
    let mut d: Vec<u64> = degrees.iter().copied().filter(|&d| d > 1).collect();
    d.sort_unstable();
    d.dedup();
    d
}

fn primes_of(degrees: &[u64]) -> Vec<u64> {
    let mut p: Vec<u64> = nonlinear(degrees).into_iter().flat_map(trial_primes).collect();
    p.sort_unstable();
    p.dedup();
    p
}

pub fn oracle_bipartite(degrees: &[u64]) -> OracleGraph {
    let primes = primes_of(degrees);
    let degs = nonlinear(degrees);
    let labels: Vec<(bool, u64)> =
        primes.iter().map(|&p| (true, p)).chain(degs.iter().map(|&d| (false, d))).collect();
    let n = labels.len();
    let mut adjacent = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (ip, a) = labels[i];
            let (jp, b) = labels[j];
            adjacent[i][j] = (ip && !jp && b % a == 0) || (!ip && jp && a % b == 0);
        }
    }
    OracleGraph::new(labels, adjacent)
}

pub fn oracle_prime(degrees: &[u64]) -> OracleGraph {
    let primes = primes_of(degrees);
    let degs = nonlinear(degrees);
    let labels: Vec<(bool, u64)> = primes.iter().map(|&p| (true, p)).collect();
    let n = labels.len();
    let mut adjacent = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (p, q) = (primes[i], primes[j]);
            adjacent[i][j] = i != j && degs.iter().any(|&d| d % p == 0 && d % q == 0);
        }
    }
    OracleGraph::new(labels, adjacent)
}

pub fn oracle_common(degrees: &[u64]) -> OracleGraph {
    let degs = nonlinear(degrees);
    let labels: Vec<(bool, u64)> = degs.iter().map(|&d| (false, d)).collect();
    let n = labels.len();
    let mut adjacent = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            adjacent[i][j] = i != j && gcd(degs[i], degs[j]) > 1;
        }
    }
    OracleGraph::new(labels, adjacent)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Id(String),
    Punct(&'static str),
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '"' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i] != '"' {
                if chars[i] == '\\' {
                    i += 1;
                }
                i += 1;
            }
            if i >= chars.len() {
                return Err("unterminated string".into());
            }
            out.push(Token::Id(chars[start..i].iter().collect()));
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'-') {
            out.push(Token::Punct("--"));
            i += 2;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Token::Punct("->"));
            i += 2;
        } else if "{}[]=;,".contains(c) {
            let p = match c {
                '{' => "{",
                '}' => "}",
                '[' => "[",
                ']' => "]",
                '=' => "=",
                ';' => ";",
                _ => ",",
            };
            out.push(Token::Punct(p));
            i += 1;
        } else if c.is_alphanumeric() || c == '_' || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                i += 1;
            }
            out.push(Token::Id(chars[start..i].iter().collect()));
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

/// Grammar-level check of undirected DOT:
/// `graph ID? { (node_stmt | edge_stmt) ;? ... }` where
/// `node_stmt := ID attrs?`, `edge_stmt := ID (-- ID)+ attrs?` and
/// `attrs := [ (ID = ID ,?)* ]`. Edge endpoints must be declared nodes.
pub fn validate_dot(text: &str) -> Result<(usize, usize), String> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    let id = |t: Option<&Token>| match t {
        Some(Token::Id(s)) => Some(s.clone()),
        _ => None,
    };
    let expect = |pos: &mut usize, p: &str| -> Result<(), String> {
        match tokens.get(*pos) {
            Some(Token::Punct(q)) if *q == p => {
                *pos += 1;
                Ok(())
            }
            other => Err(format!("expected {p:?} at token {pos}, found {other:?}")),
        }
    };
    if id(tokens.get(pos)).as_deref() != Some("graph") {
        return Err("must start with `graph`".into());
    }
    pos += 1;
    if id(tokens.get(pos)).is_some() {
        pos += 1;
    }
    expect(&mut pos, "{")?;
    let mut nodes = std::collections::HashSet::new();
    let mut edges = 0;
    loop {
        match tokens.get(pos) {
            Some(Token::Punct("}")) => {
                pos += 1;
                break;
            }
            Some(Token::Id(first)) => {
                let first = first.clone();
                pos += 1;
                let mut chain = vec![first];
                while tokens.get(pos) == Some(&Token::Punct("--")) {
                    pos += 1;
                    chain.push(id(tokens.get(pos)).ok_or("edge needs a target")?);
                    pos += 1;
                }
                if tokens.get(pos) == Some(&Token::Punct("[")) {
                    pos += 1;
                    while tokens.get(pos) != Some(&Token::Punct("]")) {
                        id(tokens.get(pos)).ok_or("attribute name expected")?;
                        pos += 1;
                        expect(&mut pos, "=")?;
                        id(tokens.get(pos)).ok_or("attribute value expected")?;
                        pos += 1;
                        if tokens.get(pos) == Some(&Token::Punct(",")) {
                            pos += 1;
                        }
                    }
                    pos += 1;
                }
                if chain.len() == 1 {
                    nodes.insert(chain.remove(0));
                } else {
                    for n in &chain {
                        if !nodes.contains(n) {
                            return Err(format!("edge endpoint {n} is not declared"));
                        }
                    }
                    edges += chain.len() - 1;
                }
                if tokens.get(pos) == Some(&Token::Punct(";")) {
                    pos += 1;
                }
            }
            other => return Err(format!("unexpected token {other:?}")),
        }
    }
    if pos != tokens.len() {
        return Err("trailing tokens after closing brace".into());
    }
    Ok((nodes.len(), edges))
}
