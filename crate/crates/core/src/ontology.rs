//! Immutable single-rooted subsumption DAG.
//!
//! Terms are indexed densely in lexicographic order of their identifiers, so
//! every table derived from an [`Ontology`] has a deterministic row order.
//! Closures are held as bit rows:
//!
//! - `ancestors(t)` is reflexive: it contains `t` itself and the root.
//! - `descendants(t)` is strict: it never contains `t`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::{BitMatrix, Ones};
use crate::error::OntologyError;

/// Dense handle of a term inside one [`Ontology`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermIdx(pub(crate) u32);

impl TermIdx {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub(crate) fn from_usize(i: usize) -> Self {
        TermIdx(i as u32)
    }
}

impl fmt::Display for TermIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An owned set of terms of a particular ontology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermSet {
    words: Vec<u64>,
}

impl TermSet {
    pub(crate) fn from_words(words: Vec<u64>) -> Self {
        TermSet { words }
    }

    pub fn len(&self) -> usize {
        crate::bitset::popcount(&self.words)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn contains(&self, t: TermIdx) -> bool {
        let i = t.index();
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = TermIdx> + '_ {
        Ones::new(&self.words).map(TermIdx::from_usize)
    }
}

#[derive(Clone, Debug)]
pub struct Ontology {
    ids: Vec<String>,
    index: BTreeMap<String, TermIdx>,
    edges: Vec<(TermIdx, TermIdx)>,
    parents: Vec<Vec<TermIdx>>,
    children: Vec<Vec<TermIdx>>,
    root: TermIdx,
    ancestors: BitMatrix,
    descendants: BitMatrix,
    depth: Vec<u32>,
}

impl Ontology {
    /// Validates the graph and precomputes closures and depths.
    ///
    /// `edges` are `(child, parent)` pairs. Duplicate edges are collapsed.
    pub fn build<S, E, A, B>(terms: S, edges: E) -> Result<Ontology, OntologyError>
    where
        S: IntoIterator,
        S::Item: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut ids: Vec<String> = terms.into_iter().map(Into::into).collect();
        if ids.is_empty() {
            return Err(OntologyError::Empty);
        }
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(OntologyError::DuplicateTerm(w[0].clone()));
        }
        if ids.len() > u32::MAX as usize {
            return Err(OntologyError::TooManyTerms(ids.len()));
        }
        let n = ids.len();
        let index: BTreeMap<String, TermIdx> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), TermIdx::from_usize(i)))
            .collect();

        let mut edge_list = Vec::new();
        for (child, parent) in edges {
            let (child, parent) = (child.as_ref(), parent.as_ref());
            let lookup = |s: &str| index.get(s).copied();
            match (lookup(child), lookup(parent)) {
                (Some(c), Some(p)) => edge_list.push((c, p)),
                _ => {
                    return Err(OntologyError::UnknownTermInEdge {
                        child: child.into(),
                        parent: parent.into(),
                    })
                }
            }
        }
        edge_list.sort_unstable();
        edge_list.dedup();

        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        for &(c, p) in &edge_list {
            parents[c.index()].push(p);
            children[p.index()].push(c);
        }

        let order = topological_order(&parents, &children).map_err(|cycle| {
            OntologyError::CycleDetected(cycle.iter().map(|t| ids[t.index()].clone()).collect())
        })?;

        let roots: Vec<TermIdx> = (0..n)
            .filter(|&i| parents[i].is_empty())
            .map(TermIdx::from_usize)
            .collect();
        // An acyclic graph always has at least one parentless term.
        if roots.len() != 1 {
            return Err(OntologyError::MultipleRoots(
                roots.iter().map(|t| ids[t.index()].clone()).collect(),
            ));
        }
        let root = roots[0];

        let mut ancestors = BitMatrix::new(n, n);
        for &t in &order {
            let ti = t.index();
            ancestors.insert(ti, ti);
            for p in &parents[ti] {
                ancestors.union_rows(ti, p.index());
            }
        }
        let mut descendants = BitMatrix::new(n, n);
        for t in 0..n {
            for u in Ones::new(ancestors.row(t)) {
                if u != t {
                    descendants.insert(u, t);
                }
            }
        }

        let mut depth = vec![u32::MAX; n];
        depth[root.index()] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(t) = queue.pop_front() {
            let d = depth[t.index()] + 1;
            for &c in &children[t.index()] {
                if depth[c.index()] == u32::MAX {
                    depth[c.index()] = d;
                    queue.push_back(c);
                }
            }
        }

        Ok(Ontology {
            ids,
            index,
            edges: edge_list,
            parents,
            children,
            root,
            ancestors,
            descendants,
            depth,
        })
    }

    /// Number of terms, `|N|`.
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Number of distinct subsumption edges, `|E|`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn root(&self) -> TermIdx {
        self.root
    }

    pub fn term(&self, id: &str) -> Result<TermIdx, OntologyError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| OntologyError::UnknownTerm(id.into()))
    }

    pub fn id(&self, t: TermIdx) -> &str {
        &self.ids[t.index()]
    }

    /// All terms in index (= lexicographic id) order.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = TermIdx> + '_ {
        (0..self.ids.len()).map(TermIdx::from_usize)
    }

    /// `(child, parent)` edges sorted by child then parent.
    pub fn edges(&self) -> &[(TermIdx, TermIdx)] {
        &self.edges
    }

    pub fn parents(&self, t: TermIdx) -> &[TermIdx] {
        &self.parents[t.index()]
    }

    pub fn children(&self, t: TermIdx) -> &[TermIdx] {
        &self.children[t.index()]
    }

    pub fn is_leaf(&self, t: TermIdx) -> bool {
        self.children[t.index()].is_empty()
    }

    /// Reflexive ancestor set of `id`.
    pub fn ancestors(&self, id: &str) -> Result<TermSet, OntologyError> {
        let t = self.term(id)?;
        Ok(TermSet::from_words(self.ancestor_row(t).to_vec()))
    }

    /// Strict descendant set of `id`.
    pub fn descendants(&self, id: &str) -> Result<TermSet, OntologyError> {
        let t = self.term(id)?;
        Ok(TermSet::from_words(self.descendant_row(t).to_vec()))
    }

    /// Minimum number of edges between `id` and the root.
    pub fn min_depth(&self, id: &str) -> Result<u32, OntologyError> {
        self.term(id).map(|t| self.depth_of(t))
    }

    #[inline]
    pub fn depth_of(&self, t: TermIdx) -> u32 {
        self.depth[t.index()]
    }

    #[inline]
    pub fn ancestor_row(&self, t: TermIdx) -> &[u64] {
        self.ancestors.row(t.index())
    }

    #[inline]
    pub fn descendant_row(&self, t: TermIdx) -> &[u64] {
        self.descendants.row(t.index())
    }

    /// `a ∈ Π_t`.
    #[inline]
    pub fn is_ancestor(&self, a: TermIdx, t: TermIdx) -> bool {
        self.ancestors.contains(t.index(), a.index())
    }

    pub fn ancestor_count(&self, t: TermIdx) -> usize {
        self.ancestors.count_row(t.index())
    }

    pub fn descendant_count(&self, t: TermIdx) -> usize {
        self.descendants.count_row(t.index())
    }

    pub fn iter_ancestors(&self, t: TermIdx) -> impl Iterator<Item = TermIdx> + '_ {
        self.ancestors.iter_row(t.index()).map(TermIdx::from_usize)
    }

    pub fn iter_descendants(&self, t: TermIdx) -> impl Iterator<Item = TermIdx> + '_ {
        self.descendants
            .iter_row(t.index())
            .map(TermIdx::from_usize)
    }

    pub(crate) fn words_per_row(&self) -> usize {
        crate::bitset::words_for(self.len())
    }
}

/// Kahn's algorithm from the parentless terms downward. On failure returns
/// one cycle, listed so that each term's successor is one of its parents.
fn topological_order(
    parents: &[Vec<TermIdx>],
    children: &[Vec<TermIdx>],
) -> Result<Vec<TermIdx>, Vec<TermIdx>> {
    let n = parents.len();
    let mut pending: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut queue: VecDeque<TermIdx> = (0..n)
        .filter(|&i| pending[i] == 0)
        .map(TermIdx::from_usize)
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(t) = queue.pop_front() {
        order.push(t);
        for &c in &children[t.index()] {
            pending[c.index()] -= 1;
            if pending[c.index()] == 0 {
                queue.push_back(c);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }

    // Every unprocessed term has an unprocessed parent; walking parents from
    // any of them must revisit a term.
    let start = (0..n).find(|&i| pending[i] > 0).expect("unprocessed term");
    let mut seen_at = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut cur = start;
    while seen_at[cur] == usize::MAX {
        seen_at[cur] = path.len();
        path.push(TermIdx::from_usize(cur));
        cur = parents[cur]
            .iter()
            .map(|p| p.index())
            .find(|&p| pending[p] > 0)
            .expect("unprocessed parent");
    }
    Err(path.split_off(seen_at[cur]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn ids(o: &Ontology, s: &TermSet) -> Vec<String> {
        s.iter().map(|t| String::from(o.id(t))).collect()
    }

    fn diamond() -> Ontology {
        Ontology::build(
            ["r", "a", "b", "c"],
            [("a", "r"), ("b", "r"), ("c", "a"), ("c", "b")],
        )
        .unwrap()
    }

    #[test]
    fn single_node() {
        let o = Ontology::build(["r"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(ids(&o, &o.ancestors("r").unwrap()), ["r"]);
        assert!(o.descendants("r").unwrap().is_empty());
        assert_eq!(o.min_depth("r").unwrap(), 0);
    }

    #[test]
    fn diamond_closures() {
        let o = diamond();
        assert_eq!(ids(&o, &o.ancestors("c").unwrap()), ["a", "b", "c", "r"]);
        assert_eq!(ids(&o, &o.descendants("r").unwrap()), ["a", "b", "c"]);
        assert_eq!(o.min_depth("c").unwrap(), 2);
        assert_eq!(o.id(o.root()), "r");
        assert_eq!(o.edge_count(), 4);
    }

    #[test]
    fn chain_queries() {
        let o = Ontology::build(["r", "a", "b"], [("a", "r"), ("b", "a")]).unwrap();
        assert_eq!(ids(&o, &o.ancestors("b").unwrap()), ["a", "b", "r"]);
        assert_eq!(ids(&o, &o.descendants("a").unwrap()), ["b"]);
        assert_eq!(o.min_depth("b").unwrap(), 2);
        assert_eq!(ids(&o, &o.ancestors("r").unwrap()), ["r"]);
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = Ontology::build(["a", "b"], [("a", "b"), ("b", "a")]).unwrap_err();
        match err {
            OntologyError::CycleDetected(mut c) => {
                c.sort();
                assert_eq!(c, ["a", "b"]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cycle_below_a_root_is_reported() {
        let err = Ontology::build(
            ["r", "a", "b", "c"],
            [("a", "r"), ("b", "a"), ("c", "b"), ("a", "c")],
        )
        .unwrap_err();
        let OntologyError::CycleDetected(mut c) = err else {
            panic!("expected cycle");
        };
        c.sort();
        assert_eq!(c, ["a", "b", "c"]);
    }

    #[test]
    fn self_loop_is_a_cycle() {
        let err = Ontology::build(["r", "a"], [("a", "r"), ("a", "a")]).unwrap_err();
        assert!(matches!(err, OntologyError::CycleDetected(c) if c == ["a"]));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Ontology::build(["r", "a", "b"], [("a", "r")]),
            Err(OntologyError::MultipleRoots(r)) if r == ["b", "r"]
        ));
        assert!(matches!(
            Ontology::build(["r"], [("x", "r")]),
            Err(OntologyError::UnknownTermInEdge { .. })
        ));
        assert!(matches!(
            Ontology::build(["r", "r"], Vec::<(&str, &str)>::new()),
            Err(OntologyError::DuplicateTerm(_))
        ));
        assert!(matches!(
            Ontology::build(Vec::<String>::new(), Vec::<(&str, &str)>::new()),
            Err(OntologyError::Empty)
        ));
        assert!(matches!(
            diamond().ancestors("zz"),
            Err(OntologyError::UnknownTerm(_))
        ));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let o = Ontology::build(["r", "a"], [("a", "r"), ("a", "r")]).unwrap();
        assert_eq!(o.edge_count(), 1);
    }
}
