use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::Query;
use crate::rdf::Term;
use crate::store::{PatternTerm, Store, TriplePattern, Variable};

/// Solutions of a query, one row per solution, columns in projection order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BindingSet {
    vars: Vec<Variable>,
    rows: Vec<Vec<Term>>,
}

impl BindingSet {
    pub fn new(vars: Vec<Variable>, rows: Vec<Vec<Term>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == vars.len()));
        BindingSet { vars, rows }
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn rows(&self) -> &[Vec<Term>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn value(&self, row: usize, var: &str) -> Option<&Term> {
        let col = self.vars.iter().position(|v| v.name() == var)?;
        self.rows.get(row).map(|r| &r[col])
    }

    /// Every value bound to `var`, in row order.
    pub fn column<'a>(&'a self, var: &str) -> impl Iterator<Item = &'a Term> + 'a {
        let col = self.vars.iter().position(|v| v.name() == var);
        self.rows.iter().filter_map(move |r| col.map(|c| &r[c]))
    }
}

#[derive(Debug, Clone)]
enum Slot {
    Const(Term),
    Var(usize),
}

struct Compiled {
    vars: Vec<Variable>,
    patterns: Vec<[Slot; 3]>,
}

fn compile(query: &Query) -> Compiled {
    let vars = query.pattern_variables();
    let slot = |p: &PatternTerm| match p {
        PatternTerm::Bound(t) => Slot::Const(t.clone()),
        PatternTerm::Var(v) => Slot::Var(vars.iter().position(|x| x == v).expect("collected above")),
    };
    let patterns = query
        .patterns
        .iter()
        .map(|p| [slot(&p.subject), slot(&p.predicate), slot(&p.object)])
        .collect();
    Compiled { vars, patterns }
}

/// Join order: repeatedly take the pattern with the most bound positions
/// (constants plus variables bound by earlier patterns), breaking ties by the
/// index probe count of its constants and then by textual position.
pub fn plan(query: &Query, store: &Store) -> Vec<usize> {
    let compiled = compile(query);
    let probes: Vec<usize> = query.patterns.iter().map(|p| store.count(p)).collect();
    let mut bound = vec![false; compiled.vars.len()];
    let mut remaining: Vec<usize> = (0..query.patterns.len()).collect();
    let mut order = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let bound_positions = |i: usize| {
            compiled.patterns[i]
                .iter()
                .filter(|s| match s {
                    Slot::Const(_) => true,
                    Slot::Var(v) => bound[*v],
                })
                .count()
        };
        let (pick, _) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &i)| (core::cmp::Reverse(bound_positions(i)), probes[i], i))
            .expect("remaining is non-empty");
        let i = remaining.remove(pick);
        for s in &compiled.patterns[i] {
            if let Slot::Var(v) = s {
                bound[*v] = true;
            }
        }
        order.push(i);
    }
    order
}

pub fn evaluate(query: &Query, store: &Store) -> BindingSet {
    evaluate_with_order(query, store, &plan(query, store))
}

/// Evaluates with an explicit join order (a permutation of pattern indexes).
pub fn evaluate_with_order(query: &Query, store: &Store, order: &[usize]) -> BindingSet {
    let compiled = compile(query);
    let mut partial: Vec<Vec<Option<Term>>> = vec![vec![None; compiled.vars.len()]];

    for &i in order {
        let slots = &compiled.patterns[i];
        let mut next = Vec::new();
        for solution in &partial {
            let probe = |s: &Slot, name: &str| -> PatternTerm {
                match s {
                    Slot::Const(t) => PatternTerm::Bound(t.clone()),
                    Slot::Var(v) => match &solution[*v] {
                        Some(t) => PatternTerm::Bound(t.clone()),
                        None => PatternTerm::Var(Variable::new(name).expect("static name")),
                    },
                }
            };
            let pattern = TriplePattern::new(probe(&slots[0], "s"), probe(&slots[1], "p"), probe(&slots[2], "o"));
            for triple in store.match_pattern(&pattern) {
                let predicate = Term::Iri(triple.predicate().clone());
                let terms = [triple.subject(), &predicate, triple.object()];
                let mut extended = solution.clone();
                let consistent = slots.iter().zip(terms).all(|(slot, term)| match slot {
                    Slot::Const(_) => true,
                    Slot::Var(v) => match &extended[*v] {
                        Some(existing) => existing == term,
                        None => {
                            extended[*v] = Some(term.clone());
                            true
                        }
                    },
                });
                if consistent {
                    next.push(extended);
                }
            }
        }
        partial = next;
        if partial.is_empty() {
            break;
        }
    }

    let projected = query.projected();
    let columns: Vec<usize> = projected
        .iter()
        .map(|v| compiled.vars.iter().position(|x| x == v).expect("projected variables occur in patterns"))
        .collect();
    let mut rows: Vec<(Vec<String>, Vec<Term>)> = partial
        .into_iter()
        .map(|sol| {
            let row: Vec<Term> = columns
                .iter()
                .map(|&c| sol[c].clone().expect("every pattern variable is bound"))
                .collect();
            let key = row.iter().map(|t| alloc::format!("{t}")).collect();
            (key, row)
        })
        .collect();
    rows.sort();
    if let Some(limit) = query.limit {
        rows.truncate(limit);
    }
    BindingSet::new(projected, rows.into_iter().map(|(_, r)| r).collect())
}
