//! Finite groups as multiplication tables.

use std::fmt;

/// A group axiom that failed while loading a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupAxiomError {
    Shape { order: usize, entries: usize },
    OutOfRange { a: usize, b: usize, value: usize },
    /// `(ab)c != a(bc)`
    Associativity { a: usize, b: usize, c: usize },
    NoIdentity,
    NoInverse { a: usize },
}

impl fmt::Display for GroupAxiomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupAxiomError::Shape { order, entries } => {
                write!(f, "table of order {order} needs {} entries, got {entries}", order * order)
            }
            GroupAxiomError::OutOfRange { a, b, value } => write!(f, "product {a}*{b} = {value} is out of range"),
            GroupAxiomError::Associativity { a, b, c } => write!(f, "associativity fails for ({a}, {b}, {c})"),
            GroupAxiomError::NoIdentity => write!(f, "no two-sided identity"),
            GroupAxiomError::NoInverse { a } => write!(f, "element {a} has no inverse"),
        }
    }
}

impl std::error::Error for GroupAxiomError {}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupTable {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl GroupTable {
    /// Checks closure, associativity, identity and inverses.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<usize>) -> Result<Self, GroupAxiomError> {
        if order == 0 || table.len() != order * order {
            return Err(GroupAxiomError::Shape { order, entries: table.len() });
        }
        let m = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            for b in 0..order {
                if m(a, b) >= order {
                    return Err(GroupAxiomError::OutOfRange { a, b, value: m(a, b) });
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(GroupAxiomError::Associativity { a, b, c });
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or(GroupAxiomError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or(GroupAxiomError::NoInverse { a })?;
            inverse.push(inv);
        }
        let labels = (0..order).map(|i| i.to_string()).collect();
        Ok(GroupTable { name: name.into(), order, table, identity, inverse, labels })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = labels;
        self
    }

    /// `Z/n` with elements `0..n` under addition.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        GroupTable::from_table(format!("Z{n}"), n, table).expect("cyclic group")
    }

    /// `S_3` acting on `{1,2,3}`, with `(st)(i) = s(t(i))`. Elements in order:
    /// `()`, `(12)`, `(13)`, `(23)`, `(123)`, `(132)`.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let labels = ["()", "(12)", "(13)", "(23)", "(123)", "(132)"];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let mut table = Vec::with_capacity(36);
        for s in &perms {
            for t in &perms {
                table.push(index([s[t[0]], s[t[1]], s[t[2]]]));
            }
        }
        GroupTable::from_table("S3", 6, table)
            .expect("symmetric group")
            .with_labels(labels.iter().map(|s| s.to_string()).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn conjugate(&self, c: usize, g: usize) -> usize {
        self.mul(self.mul(c, g), self.inv(c))
    }

    /// Conjugacy classes, each sorted, in order of their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|c| self.conjugate(c, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &h in &class {
                seen[h] = true;
            }
            out.push(class);
        }
        out
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order).filter(|&c| self.mul(c, g) == self.mul(g, c)).collect()
    }

    /// The subgroup on the given elements (which must be closed) as a table
    /// on `0..k`, in the listed order.
    pub fn subgroup(&self, elements: &[usize]) -> Option<GroupTable> {
        let k = elements.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in elements {
            for &b in elements {
                table.push(elements.iter().position(|&x| x == self.mul(a, b))?);
            }
        }
        let labels = elements.iter().map(|&a| self.labels[a].clone()).collect();
        GroupTable::from_table(format!("{}_sub", self.name), k, table).ok().map(|g| g.with_labels(labels))
    }
}
