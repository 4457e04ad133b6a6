//! Bounded Todd–Coxeter enumeration of the cosets of the trivial subgroup,
//! HLT style: relators are scanned from every live coset in order, with
//! coincidences merged through a union-find on coset indices.

use serde::Serialize;

use crate::diagram::{check_alternating, split_components, LinkDiagram};
use crate::error::{Error, Result};
use crate::homology::h1_order;
use crate::orderability::{component_status, Status};
use crate::pipeline::{analyze, Options};
use crate::presentation::{GroupPresentation, Word};

pub const DEFAULT_MAX_COSETS: usize = 10_000;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum CosetStatus {
    Closed { order: usize },
    Exceeded { limit: usize },
}

/// Columns are `2g` for generator `g` and `2g + 1` for its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generators: usize,
    rows: Vec<Vec<Option<usize>>>,
    status: CosetStatus,
}

impl CosetTable {
    pub fn status(&self) -> CosetStatus {
        self.status
    }

    pub fn order(&self) -> Option<usize> {
        match self.status {
            CosetStatus::Closed { order } => Some(order),
            CosetStatus::Exceeded { .. } => None,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Live cosets; row 0 is the trivial coset.
    pub fn rows(&self) -> &[Vec<Option<usize>>] {
        &self.rows
    }

    pub fn image(&self, coset: usize, generator: usize, exponent: i8) -> Option<usize> {
        self.rows[coset][column(generator, exponent)]
    }

    /// Every relator read from every coset returns to that coset.
    pub fn is_consistent_with(&self, relators: &[Word]) -> bool {
        (0..self.rows.len()).all(|start| {
            relators.iter().all(|w| {
                w.syllables()
                    .iter()
                    .try_fold(start, |c, s| self.image(c, s.generator, s.exponent))
                    == Some(start)
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self.status {
            CosetStatus::Closed { order } => {
                serde_json::json!({ "status": "Closed", "order": order })
            }
            CosetStatus::Exceeded { limit } => {
                serde_json::json!({ "status": "Exceeded", "limit": limit })
            }
        }
    }
}

fn column(generator: usize, exponent: i8) -> usize {
    2 * generator + (exponent < 0) as usize
}

struct BudgetExceeded;

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    max_live: usize,
}

impl Enumerator {
    fn new(cols: usize, max_live: usize) -> Self {
        Enumerator {
            cols,
            table: vec![vec![NONE; cols]],
            parent: vec![0],
            live: 1,
            max_live,
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> std::result::Result<(), BudgetExceeded> {
        if self.live >= self.max_live {
            return Err(BudgetExceeded);
        }
        let fresh = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(fresh);
        self.live += 1;
        self.table[c][x] = fresh;
        self.table[fresh][x ^ 1] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (keep, drop) = (a.min(b), a.max(b));
            self.parent[drop] = keep;
            self.live -= 1;
            queue.push(drop);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let dead = queue[i];
            i += 1;
            for x in 0..self.cols {
                let target = self.table[dead][x];
                if target == NONE {
                    continue;
                }
                if self.table[target][x ^ 1] == dead {
                    self.table[target][x ^ 1] = NONE;
                }
                let (mu, nu) = (self.rep(dead), self.rep(target));
                if self.table[mu][x] != NONE {
                    let y = self.table[mu][x];
                    self.merge(nu, y, &mut queue);
                } else if self.table[nu][x ^ 1] != NONE {
                    let y = self.table[nu][x ^ 1];
                    self.merge(mu, y, &mut queue);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][x ^ 1] = mu;
                }
            }
        }
    }

    fn scan_and_fill(
        &mut self,
        start: usize,
        word: &[usize],
    ) -> std::result::Result<(), BudgetExceeded> {
        if word.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (start, start);
        let (mut i, mut j) = (0usize, word.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f][word[i]] != NONE {
                f = self.table[f][word[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][word[j as usize] ^ 1] != NONE {
                b = self.table[b][word[j as usize] ^ 1];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][word[i]] = b;
                self.table[b][word[i] ^ 1] = f;
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    fn run(&mut self, relators: &[Vec<usize>]) -> std::result::Result<(), BudgetExceeded> {
        let mut c = 0;
        while c < self.table.len() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan_and_fill(c, r)?;
            }
            for x in 0..self.cols {
                if self.is_live(c) && self.table[c][x] == NONE {
                    self.define(c, x)?;
                }
            }
            c += 1;
        }
        Ok(())
    }

    /// Renumbers live cosets consecutively, keeping creation order.
    fn compact(mut self) -> Vec<Vec<Option<usize>>> {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.is_live(c)).collect();
        let mut index = vec![NONE; self.table.len()];
        for (i, &c) in live.iter().enumerate() {
            index[c] = i;
        }
        let mut rows = Vec::with_capacity(live.len());
        for &c in &live {
            let row = (0..self.cols)
                .map(|x| match self.table[c][x] {
                    NONE => None,
                    t => Some(index[self.rep(t)]),
                })
                .collect();
            rows.push(row);
        }
        rows
    }
}

/// Enumerates the cosets of the trivial subgroup using at most
/// `max_cosets` simultaneously live cosets.
pub fn enumerate(p: &GroupPresentation, max_cosets: usize) -> Result<CosetTable> {
    enumerate_words(p.generator_count(), p.reduced_relators(), max_cosets)
}

pub fn enumerate_words(
    generators: usize,
    relators: &[Word],
    max_cosets: usize,
) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::ZeroBudget);
    }
    if generators == 0 {
        return Err(Error::Presentation("no generators".into()));
    }
    let mut words = Vec::new();
    for w in relators {
        let mut cols = Vec::with_capacity(w.len());
        for s in w.reduced().syllables() {
            if s.generator >= generators {
                return Err(Error::Presentation(format!(
                    "unknown generator x{}",
                    s.generator + 1
                )));
            }
            cols.push(column(s.generator, s.exponent));
        }
        if !cols.is_empty() {
            words.push(cols);
        }
    }
    let mut e = Enumerator::new(2 * generators, max_cosets);
    let outcome = e.run(&words);
    let rows = e.compact();
    let status = match outcome {
        Ok(()) => CosetStatus::Closed { order: rows.len() },
        Err(BudgetExceeded) => CosetStatus::Exceeded { limit: max_cosets },
    };
    Ok(CosetTable {
        generators,
        rows,
        status,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossCheck {
    Consistent,
    Inconsistent(String),
    Inconclusive,
}

/// Compares coset enumeration against the determinant and the verdict,
/// component by component.
pub fn cross_check(d: &LinkDiagram, max_cosets: usize) -> Result<CrossCheck> {
    let mut inconclusive = false;
    for (i, part) in split_components(d).iter().enumerate() {
        let analysis = analyze(part, &Options::default())?;
        let h1 = h1_order(&analysis.presentation);
        let alternating = check_alternating(part).alternating;
        let status = component_status(alternating, &h1);
        let table = enumerate(&analysis.presentation, max_cosets)?;
        let Some(k) = table.order() else {
            inconclusive = true;
            continue;
        };
        let fail = |msg: String| Ok(CrossCheck::Inconsistent(format!("component {i}: {msg}")));
        match &h1.order {
            None => return fail(format!("finite group of order {k} with infinite H1")),
            Some(h) if (num_bigint::BigInt::from(k) % h) != num_bigint::BigInt::from(0) => {
                return fail(format!("coset order {k} not divisible by |H1| = {h}"))
            }
            _ => {}
        }
        if !alternating {
            continue;
        }
        if (k == 1) != (status == Status::LeftOrderable) {
            return fail(format!("coset order {k} but verdict {status:?}"));
        }
        if k > 1 && status != Status::NotLeftOrderable {
            return fail(format!("coset order {k} but verdict {status:?}"));
        }
    }
    Ok(if inconclusive {
        CrossCheck::Inconclusive
    } else {
        CrossCheck::Consistent
    })
}
