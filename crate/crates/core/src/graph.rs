//! Reachability, strongly connected components, trimming and the pair
//! automaton over the transition graph of a partial automaton.

use std::collections::{BTreeSet, VecDeque};

use crate::automaton::{Acceptor, Letter, PartialDfa, State};
use crate::stateset::StateSet;

/// States reachable from `start` (inclusive) along defined transitions.
pub fn reachable_from(dfa: &PartialDfa, start: &StateSet) -> StateSet {
    let mut seen = start.clone();
    let mut queue: VecDeque<State> = start.iter().collect();
    while let Some(s) = queue.pop_front() {
        for a in 0..dfa.letter_count() {
            if let Some(t) = dfa.delta(s, a) {
                if seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
    }
    seen
}

/// States from which some state of `targets` is reachable (inclusive).
pub fn coreachable_to(dfa: &PartialDfa, targets: &StateSet) -> StateSet {
    let n = dfa.state_count();
    let mut preds: Vec<Vec<State>> = vec![Vec::new(); n];
    for (s, _, t) in dfa.transitions() {
        preds[t].push(s);
    }
    let mut seen = targets.clone();
    let mut queue: VecDeque<State> = targets.iter().collect();
    while let Some(t) = queue.pop_front() {
        for &s in &preds[t] {
            if seen.insert(s) {
                queue.push_back(s);
            }
        }
    }
    seen
}

/// SCC decomposition with its condensation DAG.
///
/// Components are numbered by their smallest member state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    pub component_of: Vec<usize>,
    pub components: Vec<Vec<State>>,
    /// Edges between distinct components.
    pub edges: BTreeSet<(usize, usize)>,
}

impl Condensation {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Components with no incoming condensation edge.
    pub fn sources(&self) -> Vec<usize> {
        let mut has_incoming = vec![false; self.components.len()];
        for &(_, to) in &self.edges {
            has_incoming[to] = true;
        }
        (0..self.components.len())
            .filter(|&c| !has_incoming[c])
            .collect()
    }

    /// Components with no outgoing condensation edge.
    pub fn sinks(&self) -> Vec<usize> {
        let mut has_outgoing = vec![false; self.components.len()];
        for &(from, _) in &self.edges {
            has_outgoing[from] = true;
        }
        (0..self.components.len())
            .filter(|&c| !has_outgoing[c])
            .collect()
    }
}

/// Tarjan's algorithm, iterative so deep automata do not overflow the stack.
pub fn scc(dfa: &PartialDfa) -> Condensation {
    let n = dfa.state_count();
    let k = dfa.letter_count();
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut raw_components: Vec<Vec<State>> = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        // (state, next letter to explore)
        let mut call: Vec<(State, Letter)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(top) = call.last_mut() {
            let v = top.0;
            if top.1 < k {
                let a = top.1;
                top.1 += 1;
                let Some(w) = dfa.delta(v, a) else { continue };
                if index[w] == UNVISITED {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    raw_components.push(comp);
                }
            }
        }
    }

    raw_components.sort_by_key(|c| c[0]);
    let mut component_of = vec![0; n];
    for (c, members) in raw_components.iter().enumerate() {
        for &s in members {
            component_of[s] = c;
        }
    }
    let edges = dfa
        .transitions()
        .map(|(s, _, t)| (component_of[s], component_of[t]))
        .filter(|(a, b)| a != b)
        .collect();
    Condensation {
        component_of,
        components: raw_components,
        edges,
    }
}

/// True iff every state reaches every other state. Vacuously true for one
/// state; false for the zero-state automaton.
pub fn is_strongly_connected(dfa: &PartialDfa) -> bool {
    let n = dfa.state_count();
    if n == 0 {
        return false;
    }
    let root = StateSet::singleton(n, 0);
    reachable_from(dfa, &root).len() == n && coreachable_to(dfa, &root).len() == n
}

/// Result of [`trim`]: the useful part of an acceptor and the index map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trimmed {
    pub acceptor: Acceptor,
    /// `index_map[old] = Some(new)` for kept states.
    pub index_map: Vec<Option<State>>,
}

/// Restricts an acceptor to states that are both reachable from the initial
/// state and co-reachable to an accepting state, re-packing indices in
/// increasing order of the old ones.
pub fn trim(acc: &Acceptor) -> Trimmed {
    let dfa = acc.dfa();
    let n = dfa.state_count();
    let Some(initial) = acc.initial() else {
        return Trimmed {
            acceptor: Acceptor::empty(dfa.alphabet()),
            index_map: vec![None; n],
        };
    };
    let useful = reachable_from(dfa, &StateSet::singleton(n, initial))
        .intersection(&coreachable_to(dfa, acc.accepting()));
    if !useful.contains(initial) {
        return Trimmed {
            acceptor: Acceptor::empty(dfa.alphabet()),
            index_map: vec![None; n],
        };
    }
    let mut index_map = vec![None; n];
    for (new, old) in useful.iter().enumerate() {
        index_map[old] = Some(new);
    }
    let kept: Vec<State> = useful.iter().collect();
    let trimmed = PartialDfa::from_fn(kept.len(), dfa.alphabet().iter().cloned(), |s, a| {
        dfa.delta(kept[s], a).and_then(|t| index_map[t])
    })
    .expect("trimmed table is valid");
    let accepting = StateSet::from_states(
        kept.len(),
        acc.accepting().iter().filter_map(|s| index_map[s]),
    )
    .expect("accepting indices are re-packed");
    let initial = index_map[initial].expect("initial state is useful");
    Trimmed {
        acceptor: Acceptor::new(trimmed, initial, accepting).expect("valid trimmed acceptor"),
        index_map,
    }
}

/// A node of the pair automaton: a subset of size at most two, or the empty
/// subset (`Dead`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairNode {
    /// Invariant: `.0 < .1`.
    Pair(State, State),
    Singleton(State),
    Dead,
}

impl PairNode {
    /// Unordered constructor: `pair(p, q) == pair(q, p)`, and `pair(p, p)`
    /// is the singleton `{p}`.
    pub fn pair(p: State, q: State) -> Self {
        match p.cmp(&q) {
            std::cmp::Ordering::Less => PairNode::Pair(p, q),
            std::cmp::Ordering::Greater => PairNode::Pair(q, p),
            std::cmp::Ordering::Equal => PairNode::Singleton(p),
        }
    }

    fn from_images(p: Option<State>, q: Option<State>) -> Self {
        match (p, q) {
            (Some(p), Some(q)) => PairNode::pair(p, q),
            (Some(s), None) | (None, Some(s)) => PairNode::Singleton(s),
            (None, None) => PairNode::Dead,
        }
    }
}

/// The subautomaton of the power automaton induced by subsets of size at
/// most two, as an explicit complete transition table.
///
/// Node order: all pairs in lexicographic order, then singletons, then dead.
#[derive(Debug, Clone)]
pub struct PairAutomaton {
    state_count: usize,
    letter_count: usize,
    table: Vec<usize>,
}

impl PairAutomaton {
    pub fn new(dfa: &PartialDfa) -> Self {
        let n = dfa.state_count();
        let k = dfa.letter_count();
        let mut pa = PairAutomaton {
            state_count: n,
            letter_count: k,
            table: Vec::new(),
        };
        let node_count = pa.node_count();
        let mut table = Vec::with_capacity(node_count * k);
        for i in 0..node_count {
            for a in 0..k {
                let next = match pa.node(i) {
                    PairNode::Pair(p, q) => PairNode::from_images(dfa.delta(p, a), dfa.delta(q, a)),
                    PairNode::Singleton(p) => PairNode::from_images(dfa.delta(p, a), None),
                    PairNode::Dead => PairNode::Dead,
                };
                table.push(pa.index_of(next));
            }
        }
        pa.table = table;
        pa
    }

    fn pair_count(&self) -> usize {
        self.state_count * self.state_count.saturating_sub(1) / 2
    }

    pub fn node_count(&self) -> usize {
        self.pair_count() + self.state_count + 1
    }

    pub fn letter_count(&self) -> usize {
        self.letter_count
    }

    pub fn index_of(&self, node: PairNode) -> usize {
        let n = self.state_count;
        match node {
            PairNode::Pair(p, q) => {
                debug_assert!(p < q && q < n);
                p * (2 * n - p - 1) / 2 + (q - p - 1)
            }
            PairNode::Singleton(p) => self.pair_count() + p,
            PairNode::Dead => self.pair_count() + n,
        }
    }

    pub fn node(&self, index: usize) -> PairNode {
        let n = self.state_count;
        let pairs = self.pair_count();
        if index < pairs {
            let mut p = 0;
            let mut offset = index;
            while offset >= n - p - 1 {
                offset -= n - p - 1;
                p += 1;
            }
            PairNode::Pair(p, p + 1 + offset)
        } else if index < pairs + n {
            PairNode::Singleton(index - pairs)
        } else {
            PairNode::Dead
        }
    }

    pub fn step(&self, index: usize, letter: Letter) -> usize {
        self.table[index * self.letter_count + letter]
    }

    /// Shortest word taking `{p, q}` to a singleton, i.e. merging the two
    /// states or killing exactly one of them.
    pub fn shortest_singleton_word(&self, p: State, q: State) -> Option<Vec<Letter>> {
        self.shortest_from_sources(&[self.index_of(PairNode::pair(p, q))])
            .map(|(_, w)| w)
    }

    /// Multi-source breadth-first search for a singleton. Sources are
    /// expanded in the given order, so among the sources with a shortest
    /// word of minimum length the earliest one wins. Returns the winning
    /// source index (into `sources`) and its word.
    pub(crate) fn shortest_from_sources(&self, sources: &[usize]) -> Option<(usize, Vec<Letter>)> {
        const NONE: usize = usize::MAX;
        let node_count = self.node_count();
        // parent[node] = (previous node, letter, source id); sources use NONE as previous
        let mut parent: Vec<(usize, Letter, usize)> = vec![(NONE, 0, NONE); node_count];
        let mut queue = VecDeque::new();
        for (id, &src) in sources.iter().enumerate() {
            if let PairNode::Singleton(_) = self.node(src) {
                return Some((id, Vec::new()));
            }
            if parent[src].2 == NONE {
                parent[src] = (NONE, 0, id);
                queue.push_back(src);
            }
        }
        while let Some(u) = queue.pop_front() {
            for a in 0..self.letter_count {
                let v = self.step(u, a);
                if parent[v].2 != NONE {
                    continue;
                }
                parent[v] = (u, a, parent[u].2);
                match self.node(v) {
                    PairNode::Singleton(_) => {
                        let mut word = vec![a];
                        let mut cur = u;
                        while parent[cur].0 != NONE {
                            word.push(parent[cur].1);
                            cur = parent[cur].0;
                        }
                        word.reverse();
                        return Some((parent[v].2, word));
                    }
                    PairNode::Pair(..) => queue.push_back(v),
                    PairNode::Dead => {}
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::fixtures::*;

    #[test]
    fn strong_connectivity_examples() {
        assert!(is_strongly_connected(&p2()));
        assert!(!is_strongly_connected(&m2()));
        let lone = PartialDfa::from_table(1, ["a"], vec![None]).unwrap();
        assert!(is_strongly_connected(&lone));
        assert!(is_strongly_connected(&c4()));
    }

    #[test]
    fn scc_examples() {
        let c = scc(&m2());
        assert_eq!(c.components, vec![vec![0], vec![1]]);
        assert_eq!(c.edges.iter().copied().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(c.sources(), vec![0]);
        assert_eq!(c.sinks(), vec![1]);
        assert_eq!(scc(&p2()).components, vec![vec![0, 1]]);
        assert_eq!(scc(&c4()).component_count(), 1);
    }

    #[test]
    fn c4_all_pairs_reachable_by_brute_force() {
        let c = c4();
        for s in 0..4 {
            for t in 0..4 {
                let found = (0..=3usize).any(|len| {
                    (0..(1usize << len)).any(|bits| {
                        let w: Vec<_> = (0..len).map(|i| (bits >> i) & 1).collect();
                        c.delta_word(s, &w.into()) == Some(t)
                    })
                });
                assert!(found, "{s} -> {t}");
            }
        }
    }

    #[test]
    fn trim_examples() {
        let acc = Acceptor::new(m2(), 0, set(2, &[1])).unwrap();
        let t = trim(&acc);
        assert_eq!(t.acceptor, acc);
        assert_eq!(t.index_map, vec![Some(0), Some(1)]);

        let acc = Acceptor::new(m2(), 1, set(2, &[1])).unwrap();
        let t = trim(&acc);
        assert_eq!(t.acceptor.dfa().state_count(), 1);
        assert_eq!(t.acceptor.initial(), Some(0));
        assert_eq!(t.index_map, vec![None, Some(0)]);

        let acc = Acceptor::new(m2(), 0, set(2, &[])).unwrap();
        let t = trim(&acc);
        assert!(t.acceptor.is_empty());
        assert_eq!(t.acceptor.dfa().state_count(), 0);
        assert_eq!(trim(&t.acceptor).acceptor, t.acceptor);
    }

    #[test]
    fn pair_automaton_examples() {
        let pa = PairAutomaton::new(&m2());
        let pair = pa.index_of(PairNode::pair(1, 0));
        assert_eq!(pa.node(pa.step(pair, 0)), PairNode::Singleton(1));

        let pa = PairAutomaton::new(&d2());
        assert_eq!(pa.node(pa.step(pair, 0)), PairNode::Singleton(1));
        let single = pa.index_of(PairNode::Singleton(1));
        assert_eq!(pa.node(pa.step(single, 0)), PairNode::Dead);

        let pa = PairAutomaton::new(&p2());
        assert_eq!(pa.node(pa.step(pair, 0)), PairNode::Pair(0, 1));
        assert_eq!(pa.shortest_singleton_word(0, 1), None);
    }

    #[test]
    fn pair_indexing_roundtrip() {
        for n in 0..7 {
            let dfa = PartialDfa::from_table(n, ["a"], vec![None; n]).unwrap();
            let pa = PairAutomaton::new(&dfa);
            assert_eq!(pa.node_count(), n * n.saturating_sub(1) / 2 + n + 1);
            for i in 0..pa.node_count() {
                assert_eq!(pa.index_of(pa.node(i)), i);
            }
        }
    }

    #[test]
    fn c4_pair_merge_words() {
        let pa = PairAutomaton::new(&c4());
        assert_eq!(pa.shortest_singleton_word(0, 1), Some(vec![1]));
        // {1,2}: needs a rotation before b can merge anything
        let w = pa.shortest_singleton_word(1, 2).unwrap();
        let c = c4();
        assert_eq!(c.delta_word(1, &w.clone().into()), c.delta_word(2, &w.into()));
    }
}
