//! Generators and reference implementations for the property suites. The
//! runners use a fixed seed so the acceptance report is reproducible.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestError, TestRng, TestRunner};

use mdo::io::{parse_ntriples, parse_turtle, serialize_ntriples, serialize_turtle, PrefixMap};
use mdo::query::{evaluate, parse_query};
use mdo::rdf::{isomorphic, Graph, Literal, Term};
use mdo::vocab::ns;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config.clone(), TestRng::deterministic_rng(config.rng_algorithm))
}

fn report<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| match e {
        TestError::Abort(why) => format!("aborted: {why}"),
        TestError::Fail(why, input) => format!("{why}\nminimal input: {input:#?}"),
    })
}

// ---------------------------------------------------------------- graphs

fn arb_iri() -> impl Strategy<Value = Term> {
    prop_oneof![
        (prop::sample::select(vec![ns::CORE, ns::STRUCTURE, ns::QUDT, ns::PROV, ns::XSD]), "[A-Za-z_][A-Za-z0-9_-]{0,8}")
            .prop_map(|(n, l)| format!("{n}{l}")),
        "[a-zA-Z0-9._~%!$&'()*+,;=:@/?#-]{0,12}".prop_map(|s| format!("http://example.org/{s}")),
        "[a-zé λ中]{0,4}".prop_map(|s| format!("urn:x:{}", s.replace(' ', "_"))),
        Just("http://example.org/a.".to_owned()),
        Just("http://example.org/".to_owned()),
    ]
    .prop_map(|s| Term::iri(s).expect("generated IRI is valid"))
}

fn arb_blank() -> impl Strategy<Value = Term> {
    (0..10u8).prop_map(|i| Term::blank(format!("b{i}")).unwrap())
}

fn arb_literal() -> impl Strategy<Value = Term> {
    let special = prop::sample::select(vec!["", "\"", "\\", "\n", "\r\n", "\t", "'''", "a\"\"\"b", "# not a comment", "é中🙂"]);
    prop_oneof![
        "\\PC{0,12}".prop_map(Term::string),
        special.prop_map(Term::string),
        ("[a-z ]{0,6}", "[a-z]{2}(-[A-Z]{2})?").prop_map(|(s, l)| Term::literal(Literal::lang(s, l).unwrap())),
        any::<i64>().prop_map(|i| Term::typed(i.to_string(), ns::XSD_INTEGER).unwrap()),
        any::<f64>().prop_filter("finite", |x| x.is_finite()).prop_map(|x| Term::typed(format!("{x:e}"), ns::XSD_DOUBLE).unwrap()),
        (-10_000i32..10_000, 0u32..4).prop_map(|(m, e)| {
            let lex = format!("{}.{:0>w$}", m / 10i32.pow(e).max(1), (m % 10i32.pow(e).max(1)).abs(), w = e.max(1) as usize);
            Term::typed(lex, ns::XSD_DECIMAL).unwrap()
        }),
        prop::sample::select(vec![
            ("1.0E5", ns::XSD_DOUBLE),
            ("INF", ns::XSD_DOUBLE),
            ("NaN", ns::XSD_DOUBLE),
            ("+01", ns::XSD_INTEGER),
            ("abc", ns::XSD_INTEGER),
            (".5", ns::XSD_DECIMAL),
            ("true", ns::XSD_BOOLEAN),
            ("0", ns::XSD_BOOLEAN),
            ("2016-09-12", "http://www.w3.org/2001/XMLSchema#date"),
            ("x y", "http://example.org/dt"),
        ])
        .prop_map(|(l, d)| Term::typed(l, d).unwrap()),
    ]
}

/// Graphs of at most 200 triples over at most 10 blank nodes.
pub fn arb_graph() -> impl Strategy<Value = Graph> {
    let subject = prop_oneof![3 => arb_iri(), 1 => arb_blank()];
    let object = prop_oneof![2 => arb_iri(), 1 => arb_blank(), 3 => arb_literal()];
    prop::collection::vec((subject, arb_iri(), object), 0..=200).prop_map(|triples| {
        let mut g = Graph::new();
        for (s, p, o) in triples {
            g.insert_terms(s, p, o).unwrap();
        }
        g
    })
}

pub fn roundtrip_turtle(g: &Graph) -> Result<(), String> {
    let text = serialize_turtle(g, &PrefixMap::standard());
    let back = parse_turtle(&text, None).map_err(|e| format!("{e}\n{text}"))?.0;
    if !isomorphic(g, &back) {
        return Err(format!("Turtle round trip is not isomorphic\n{text}"));
    }
    Ok(())
}

pub fn roundtrip_ntriples(g: &Graph) -> Result<(), String> {
    let text = serialize_ntriples(g);
    let back = parse_ntriples(&text).map_err(|e| format!("{e}\n{text}"))?;
    if !isomorphic(g, &back) {
        return Err(format!("N-Triples round trip is not isomorphic\n{text}"));
    }
    Ok(())
}

/// parse(serialize(g)) is isomorphic to g in both syntaxes.
pub fn roundtrip(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&arb_graph(), |g| {
        prop_assert!(g.len() <= 200 && g.blank_nodes().len() <= 10);
        roundtrip_turtle(&g).map_err(TestCaseError::fail)?;
        roundtrip_ntriples(&g).map_err(TestCaseError::fail)?;
        Ok(())
    }))
}

// --------------------------------------------------------------- queries

const EX: &str = "http://example.org/";

#[derive(Debug, Clone, PartialEq)]
pub enum Atom {
    Var(usize),
    Const(Term),
}

#[derive(Debug, Clone)]
pub enum Filter {
    Atom(Atom),
    Not(Box<Filter>),
    And(Box<Filter>, Box<Filter>),
    Or(Box<Filter>, Box<Filter>),
    Cmp(&'static str, Atom, Atom),
}

#[derive(Debug, Clone)]
pub struct Case {
    pub graph: Vec<(Term, Term, Term)>,
    pub patterns: Vec<[Atom; 3]>,
    pub filter: Option<Filter>,
    pub select: Vec<usize>,
}

fn node(i: usize) -> Term {
    Term::iri(format!("{EX}n{i}")).unwrap()
}

fn pred(i: usize) -> Term {
    Term::iri(format!("{EX}p{i}")).unwrap()
}

/// Literal pool; numeric values are multiples of 1/4 so `f64` is exact.
fn literal_pool() -> Vec<Term> {
    let t = |l: &str, d: &str| Term::typed(l, d).unwrap();
    vec![
        t("1", ns::XSD_INTEGER),
        t("01", ns::XSD_INTEGER),
        t("-3", ns::XSD_INTEGER),
        t("0", ns::XSD_INTEGER),
        t("7", ns::XSD_INTEGER),
        t("1.0", ns::XSD_DECIMAL),
        t("2.25", ns::XSD_DECIMAL),
        t("-0.5", ns::XSD_DECIMAL),
        t("1e0", ns::XSD_DOUBLE),
        t("2.25e0", ns::XSD_DOUBLE),
        t("5.5e0", ns::XSD_DOUBLE),
        t("-1.25e1", ns::XSD_DOUBLE),
        t("abc", ns::XSD_INTEGER),
        Term::string(""),
        Term::string("a"),
        Term::string("b"),
        Term::string("band_gap"),
        Term::literal(Literal::lang("a", "en").unwrap()),
        t("true", ns::XSD_BOOLEAN),
        t("false", ns::XSD_BOOLEAN),
        t("x", "http://example.org/dt"),
        t("y", "http://example.org/dt"),
    ]
}

const OPS: [&str; 6] = ["=", "!=", "<", "<=", ">", ">="];

fn arb_filter(vars: usize, nodes: usize) -> BoxedStrategy<Filter> {
    let lits = literal_pool();
    let constant = prop_oneof![3 => prop::sample::select(lits), 1 => (0..nodes).prop_map(node)];
    let atom = prop_oneof![2 => (0..vars).prop_map(Atom::Var), 1 => constant.prop_map(Atom::Const)];
    let leaf = prop_oneof![
        4 => (prop::sample::select(OPS.to_vec()), atom.clone(), atom.clone()).prop_map(|(op, a, b)| Filter::Cmp(op, a, b)),
        1 => atom.prop_map(Filter::Atom),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| Filter::Not(Box::new(f))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Filter::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Filter::Or(Box::new(a), Box::new(b))),
        ]
    })
    .boxed()
}

/// A graph of at most 1,000 triples and a query of 1 to 4 connected
/// patterns with at most one filter.
pub fn arb_case() -> impl Strategy<Value = Case> {
    (0usize..=1000).prop_flat_map(|size| {
        let nodes = 8 + size / 6;
        let blanks = 3;
        let preds: usize = 6;
        let lits = literal_pool();
        let subject = prop_oneof![6 => (0..nodes).prop_map(node), 1 => (0..blanks).prop_map(|i| Term::blank(format!("x{i}")).unwrap())];
        let object = prop_oneof![
            5 => (0..nodes).prop_map(node),
            1 => (0..blanks).prop_map(|i| Term::blank(format!("x{i}")).unwrap()),
            3 => prop::sample::select(lits.clone()),
        ];
        let graph = prop::collection::vec((subject, (0..preds).prop_map(pred), object), size);
        let index = any::<prop::sample::Index>();
        let shape = prop::collection::vec((0u8..16, 0u8..16, 0u8..16, index.clone(), index.clone(), index), 1..=4);
        (graph, shape, Just(nodes), prop::sample::select(lits)).prop_flat_map(move |(graph, shape, nodes, lit)| {
            // Each pattern is cut from a seed triple; the seeds form a walk so
            // that joined variables agree on at least one solution. Position
            // kinds: below 7 a variable, 15 a random constant that may miss,
            // otherwise the seed's constant.
            let mut patterns: Vec<[Atom; 3]> = Vec::new();
            let mut bound: Vec<Term> = Vec::new();
            for (s, p, o, i, j, k) in &shape {
                let seed = if graph.is_empty() {
                    (node(i.index(nodes)), pred(j.index(6)), node(k.index(nodes)))
                } else if bound.is_empty() {
                    graph[i.index(graph.len())].clone()
                } else {
                    let at = &bound[j.index(bound.len())];
                    let next: Vec<_> = graph.iter().filter(|t| &t.0 == at || &t.2 == at).collect();
                    if next.is_empty() { graph[i.index(graph.len())].clone() } else { next[k.index(next.len())].clone() }
                };
                let before = bound.len();
                let mut pat = Vec::new();
                let seed = [seed.0, seed.1, seed.2];
                let join = seed.iter().enumerate().find_map(|(pos, t)| Some((pos, bound[..before].iter().position(|b| b == t)?)));
                // an all-variable pattern would make the brute-force product huge
                let p = if *s < 7 && *p < 7 && *o < 7 { 8 } else { *p };
                for (pos, (kind, term)) in [*s, p, *o].into_iter().zip(seed).enumerate() {
                    let atom = if kind < 7 || term.is_blank() {
                        match bound.iter().position(|b| b == &term) {
                            Some(v) => Atom::Var(v),
                            None => {
                                bound.push(term);
                                Atom::Var(bound.len() - 1)
                            }
                        }
                    } else if kind == 15 {
                        Atom::Const(match pos {
                            0 => node(i.index(nodes)),
                            1 => pred(j.index(6)),
                            _ if k.index(2) == 0 => lit.clone(),
                            _ => node(k.index(nodes)),
                        })
                    } else {
                        Atom::Const(term)
                    };
                    pat.push(atom);
                }
                let mut pat: [Atom; 3] = pat.try_into().unwrap();
                let shares = pat.iter().any(|a| matches!(a, Atom::Var(v) if *v < before));
                if before > 0 && !shares {
                    let (pos, v) = join.unwrap_or((0, i.index(before)));
                    pat[pos] = Atom::Var(v);
                }
                patterns.push(pat);
            }
            if bound.is_empty() {
                patterns[0][0] = Atom::Var(0);
            }
            let used: Vec<usize> = {
                let mut v: Vec<usize> = patterns.iter().flatten().filter_map(|a| match a { Atom::Var(v) => Some(*v), _ => None }).collect();
                v.sort();
                v.dedup();
                v
            };
            let vars = used.len();
            let filter = if vars == 0 {
                Just(None).boxed()
            } else {
                let used = used.clone();
                prop_oneof![1 => Just(None), 3 => arb_filter(vars, nodes).prop_map(move |f| Some(remap(f, &used)))].boxed()
            };
            let select = if vars == 0 {
                Just(Vec::new()).boxed()
            } else {
                prop::sample::subsequence(used.clone(), 1..=vars).boxed()
            };
            (Just(graph.clone()), Just(patterns), filter, select)
                .prop_map(|(graph, patterns, filter, select)| Case { graph, patterns, filter, select })
        })
    })
}

fn remap(f: Filter, used: &[usize]) -> Filter {
    let a = |x: Atom| match x {
        Atom::Var(i) => Atom::Var(used[i]),
        c => c,
    };
    match f {
        Filter::Atom(x) => Filter::Atom(a(x)),
        Filter::Not(x) => Filter::Not(Box::new(remap(*x, used))),
        Filter::And(x, y) => Filter::And(Box::new(remap(*x, used)), Box::new(remap(*y, used))),
        Filter::Or(x, y) => Filter::Or(Box::new(remap(*x, used)), Box::new(remap(*y, used))),
        Filter::Cmp(op, x, y) => Filter::Cmp(op, a(x), a(y)),
    }
}

fn atom_text(a: &Atom) -> String {
    match a {
        Atom::Var(v) => format!("?v{v}"),
        Atom::Const(t) => t.to_ntriples(),
    }
}

fn filter_text(f: &Filter) -> String {
    match f {
        Filter::Atom(a) => atom_text(a),
        Filter::Not(x) => format!("!({})", filter_text(x)),
        Filter::And(x, y) => format!("({} && {})", filter_text(x), filter_text(y)),
        Filter::Or(x, y) => format!("({} || {})", filter_text(x), filter_text(y)),
        Filter::Cmp(op, x, y) => format!("{} {op} {}", atom_text(x), atom_text(y)),
    }
}

impl Case {
    pub fn query_text(&self, order: &[usize]) -> String {
        let mut q = String::from("SELECT");
        for v in &self.select {
            q.push_str(&format!(" ?v{v}"));
        }
        q.push_str(" WHERE {\n");
        for &i in order {
            let [s, p, o] = &self.patterns[i];
            q.push_str(&format!("  {} {} {} .\n", atom_text(s), atom_text(p), atom_text(o)));
        }
        if let Some(f) = &self.filter {
            q.push_str(&format!("  FILTER ({})\n", filter_text(f)));
        }
        q.push('}');
        q
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::new();
        for (s, p, o) in &self.graph {
            g.insert_terms(s.clone(), p.clone(), o.clone()).unwrap();
        }
        g
    }
}

// Reference filter semantics over f64, written independently of the engine.

#[derive(Debug, Clone, PartialEq)]
enum V {
    Num(f64),
    BadNum,
    Str(String),
    Lang(String),
    Bool(bool),
    Node,
    Other,
}

fn value(t: &Term) -> V {
    match t {
        Term::Iri(_) | Term::Blank(_) => V::Node,
        Term::Literal(l) if l.language().is_some() => V::Lang(l.lexical().to_owned()),
        Term::Literal(l) => match l.datatype().as_str() {
            ns::XSD_INTEGER | ns::XSD_DECIMAL | ns::XSD_DOUBLE => {
                l.lexical().parse::<f64>().map_or(V::BadNum, V::Num)
            }
            ns::XSD_STRING => V::Str(l.lexical().to_owned()),
            ns::XSD_BOOLEAN => V::Bool(l.lexical() == "true"),
            _ => V::Other,
        },
    }
}

fn ebv(t: &Term) -> Option<bool> {
    match value(t) {
        V::Num(x) => Some(x != 0.0),
        V::BadNum => Some(false),
        V::Str(s) | V::Lang(s) => Some(!s.is_empty()),
        V::Bool(b) => Some(b),
        V::Node | V::Other => None,
    }
}

fn cmp(op: &str, a: &Term, b: &Term) -> Option<bool> {
    let ord = match (value(a), value(b)) {
        (V::BadNum, _) | (_, V::BadNum) => return None,
        (V::Num(x), V::Num(y)) => x.partial_cmp(&y)?,
        (V::Str(x), V::Str(y)) => x.cmp(&y),
        (V::Bool(x), V::Bool(y)) => x.cmp(&y),
        (x, y) if op == "=" || op == "!=" => {
            let node_a = x == V::Node;
            let node_b = y == V::Node;
            if a == b {
                Ordering::Equal
            } else if node_a || node_b {
                // a node differs from every other term
                Ordering::Less
            } else {
                return None;
            }
        }
        _ => return None,
    };
    Some(match op {
        "=" => ord == Ordering::Equal,
        "!=" => ord != Ordering::Equal,
        "<" => ord == Ordering::Less,
        "<=" => ord != Ordering::Greater,
        ">" => ord == Ordering::Greater,
        ">=" => ord != Ordering::Less,
        _ => unreachable!(),
    })
}

fn resolve<'a>(a: &'a Atom, row: &'a BTreeMap<usize, Term>) -> &'a Term {
    match a {
        Atom::Var(v) => &row[v],
        Atom::Const(t) => t,
    }
}

/// `None` is a type error.
fn holds(f: &Filter, row: &BTreeMap<usize, Term>) -> Option<bool> {
    match f {
        Filter::Atom(a) => ebv(resolve(a, row)),
        Filter::Not(x) => holds(x, row).map(|b| !b),
        Filter::And(x, y) => match (holds(x, row), holds(y, row)) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        },
        Filter::Or(x, y) => match (holds(x, row), holds(y, row)) {
            (Some(true), _) | (_, Some(true)) => Some(true),
            (Some(false), Some(false)) => Some(false),
            _ => None,
        },
        Filter::Cmp(op, x, y) => cmp(op, resolve(x, row), resolve(y, row)),
    }
}

/// Matches of one pattern by a linear scan of the triple list.
fn scan(triples: &[(Term, Term, Term)], pat: &[Atom; 3]) -> Vec<BTreeMap<usize, Term>> {
    let mut out = Vec::new();
    'triples: for (s, p, o) in triples {
        let mut row = BTreeMap::new();
        for (a, t) in pat.iter().zip([s, p, o]) {
            match a {
                Atom::Const(c) if c != t => continue 'triples,
                Atom::Const(_) => {}
                Atom::Var(v) => match row.get(v) {
                    Some(bound) if bound != t => continue 'triples,
                    _ => {
                        row.insert(*v, t.clone());
                    }
                },
            }
        }
        out.push(row);
    }
    out
}

/// Cartesian product of per-pattern matches, keeping compatible
/// combinations, then the filter, then the projection.
pub fn brute_force(case: &Case) -> Vec<Vec<String>> {
    let mut triples = case.graph.clone();
    triples.sort();
    triples.dedup();
    let per_pattern: Vec<Vec<BTreeMap<usize, Term>>> = case.patterns.iter().map(|p| scan(&triples, p)).collect();
    let mut rows = vec![BTreeMap::new()];
    for matches in &per_pattern {
        let mut next = Vec::new();
        for row in &rows {
            for m in matches {
                if m.iter().all(|(v, t)| row.get(v).is_none_or(|b| b == t)) {
                    let mut merged = row.clone();
                    merged.extend(m.iter().map(|(v, t)| (*v, t.clone())));
                    next.push(merged);
                }
            }
        }
        rows = next;
    }
    let mut out: Vec<Vec<String>> = rows
        .iter()
        .filter(|r| case.filter.as_ref().is_none_or(|f| holds(f, r) == Some(true)))
        .map(|r| case.select.iter().map(|v| r[v].to_ntriples()).collect())
        .collect();
    out.sort();
    out
}

pub fn engine(case: &Case, order: &[usize]) -> Result<Vec<Vec<String>>, String> {
    let text = case.query_text(order);
    let q = parse_query(&text).map_err(|e| format!("{e}\n{text}"))?;
    let table = evaluate(&q, &case.graph());
    let mut rows: Vec<Vec<String>> = table.rows.iter().map(|r| r.iter().map(Term::to_ntriples).collect()).collect();
    rows.sort();
    Ok(rows)
}

/// The engine's solution multiset equals the brute-force evaluator's.
pub fn query_oracle(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&arb_case(), |case| {
        let order: Vec<usize> = (0..case.patterns.len()).collect();
        let got = engine(&case, &order).map_err(TestCaseError::fail)?;
        let want = brute_force(&case);
        prop_assert_eq!(got, want, "query:\n{}", case.query_text(&order));
        Ok(())
    }))
}

/// Every permutation of the pattern list gives the same multiset.
pub fn join_order(cases: u32) -> Result<(), String> {
    let strategy = arb_case().prop_flat_map(|case| {
        let n = case.patterns.len();
        (Just(case), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    });
    report(runner(cases).run(&strategy, |(case, order)| {
        let base: Vec<usize> = (0..case.patterns.len()).collect();
        let a = engine(&case, &base).map_err(TestCaseError::fail)?;
        let b = engine(&case, &order).map_err(TestCaseError::fail)?;
        prop_assert_eq!(a, b, "query:\n{}", case.query_text(&order));
        Ok(())
    }))
}
