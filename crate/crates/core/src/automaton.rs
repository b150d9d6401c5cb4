//! Minimal acyclic deterministic automaton over bytes with labelled final
//! states.
//!
//! Construction follows the incremental algorithm for sorted input of
//! Daciuk, Mihov, Watson and Watson: keys arrive in strictly increasing
//! byte order, and after each key the part of the previous key's path that
//! can no longer change is merged into a register of canonical states.
//! Two states are equivalent when they carry the same final label and the
//! same outgoing transitions to the same canonical targets.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

pub const NO_LABEL: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("keys must be inserted in strictly increasing byte order")]
pub struct OrderError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct State {
    pub first: u32,
    pub count: u32,
    /// Final label, or [`NO_LABEL`].
    pub label: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub byte: u8,
    pub target: u32,
}

/// Frozen automaton. State 0 is the start state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dafsa {
    states: Vec<State>,
    transitions: Vec<Transition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("automaton has no start state")]
    NoStates,
    #[error("state {0} has a transition range outside the table")]
    Range(u32),
    #[error("state {0} has unsorted or duplicate transitions")]
    Unsorted(u32),
    #[error("transition target {0} out of range")]
    Target(u32),
    #[error("automaton contains a cycle")]
    Cycle,
}

impl Dafsa {
    /// Reassembles an automaton from raw tables, checking that it is
    /// deterministic, in bounds and acyclic.
    pub fn from_parts(states: Vec<State>, transitions: Vec<Transition>) -> Result<Self, StructureError> {
        if states.is_empty() {
            return Err(StructureError::NoStates);
        }
        let n = states.len() as u64;
        for (i, s) in states.iter().enumerate() {
            let end = s.first as u64 + s.count as u64;
            if end > transitions.len() as u64 {
                return Err(StructureError::Range(i as u32));
            }
            let out = &transitions[s.first as usize..end as usize];
            if out.windows(2).any(|w| w[0].byte >= w[1].byte) {
                return Err(StructureError::Unsorted(i as u32));
            }
            if let Some(t) = out.iter().find(|t| t.target as u64 >= n) {
                return Err(StructureError::Target(t.target));
            }
        }
        let dafsa = Dafsa { states, transitions };
        if !dafsa.is_acyclic() {
            return Err(StructureError::Cycle);
        }
        Ok(dafsa)
    }

    fn is_acyclic(&self) -> bool {
        // Kahn's algorithm over the whole state table.
        let mut indegree = alloc::vec![0u32; self.states.len()];
        for t in &self.transitions_in_use() {
            indegree[t.target as usize] += 1;
        }
        let mut queue: Vec<usize> = (0..self.states.len()).filter(|&i| indegree[i] == 0).collect();
        let mut seen = 0;
        while let Some(s) = queue.pop() {
            seen += 1;
            for t in self.out(s) {
                let d = &mut indegree[t.target as usize];
                *d -= 1;
                if *d == 0 {
                    queue.push(t.target as usize);
                }
            }
        }
        seen == self.states.len()
    }

    fn transitions_in_use(&self) -> Vec<Transition> {
        (0..self.states.len()).flat_map(|s| self.out(s).iter().copied()).collect()
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    fn out(&self, state: usize) -> &[Transition] {
        let s = &self.states[state];
        &self.transitions[s.first as usize..(s.first + s.count) as usize]
    }

    fn step(&self, state: usize, byte: u8) -> Option<usize> {
        let out = self.out(state);
        out.binary_search_by_key(&byte, |t| t.byte)
            .ok()
            .map(|i| out[i].target as usize)
    }

    /// Label of `key`, if accepted.
    pub fn get(&self, key: &[u8]) -> Option<u32> {
        let mut state = 0;
        for &b in key {
            state = self.step(state, b)?;
        }
        match self.states[state].label {
            NO_LABEL => None,
            label => Some(label),
        }
    }

    /// Every accepted key with its label, in byte order.
    pub fn entries(&self) -> Vec<(Vec<u8>, u32)> {
        let mut out = Vec::new();
        let mut key = Vec::new();
        // (state, next transition index)
        let mut stack: Vec<(usize, usize)> = alloc::vec![(0, 0)];
        if self.states[0].label != NO_LABEL {
            out.push((Vec::new(), self.states[0].label));
        }
        while let Some(&mut (state, ref mut next)) = stack.last_mut() {
            let trans = self.out(state);
            if *next == trans.len() {
                stack.pop();
                key.pop();
                continue;
            }
            let t = trans[*next];
            *next += 1;
            key.push(t.byte);
            let target = t.target as usize;
            if self.states[target].label != NO_LABEL {
                out.push((key.clone(), self.states[target].label));
            }
            stack.push((target, 0));
        }
        out
    }
}

struct Node {
    label: u32,
    trans: Vec<(u8, usize)>,
}

/// Incremental builder; see the module docs.
pub struct DafsaBuilder {
    nodes: Vec<Node>,
    register: BTreeMap<(u32, Vec<(u8, usize)>), usize>,
    /// `path[i]` is the node reached after the first `i` bytes of `last`.
    path: Vec<usize>,
    last: Option<Vec<u8>>,
}

impl Default for DafsaBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl DafsaBuilder {
    pub fn new() -> Self {
        DafsaBuilder {
            nodes: alloc::vec![Node {
                label: NO_LABEL,
                trans: Vec::new(),
            }],
            register: BTreeMap::new(),
            path: alloc::vec![0],
            last: None,
        }
    }

    pub fn insert(&mut self, key: &[u8], label: u32) -> Result<(), OrderError> {
        let prefix = match &self.last {
            Some(last) => {
                if key <= last.as_slice() {
                    return Err(OrderError);
                }
                last.iter().zip(key).take_while(|(a, b)| a == b).count()
            }
            None => 0,
        };
        self.settle(prefix);
        for &b in &key[prefix..] {
            let node = self.nodes.len();
            self.nodes.push(Node {
                label: NO_LABEL,
                trans: Vec::new(),
            });
            let parent = *self.path.last().expect("path holds the root");
            self.nodes[parent].trans.push((b, node));
            self.path.push(node);
        }
        let end = *self.path.last().expect("path holds the root");
        self.nodes[end].label = label;
        self.last = Some(key.to_vec());
        Ok(())
    }

    /// Replaces or registers every path node deeper than `depth`.
    fn settle(&mut self, depth: usize) {
        while self.path.len() > depth + 1 {
            let child = self.path.pop().expect("checked length");
            let parent = *self.path.last().expect("checked length");
            let sig = (self.nodes[child].label, self.nodes[child].trans.clone());
            match self.register.get(&sig) {
                Some(&canonical) => {
                    self.nodes[parent].trans.last_mut().expect("child edge").1 = canonical;
                }
                None => {
                    self.register.insert(sig, child);
                }
            }
        }
    }

    /// Freezes the automaton, renumbering reachable states in depth-first
    /// preorder with transitions in byte order.
    pub fn finish(mut self) -> Dafsa {
        self.settle(0);
        let mut ids: Vec<u32> = alloc::vec![u32::MAX; self.nodes.len()];
        let mut order = Vec::new();
        let mut stack = alloc::vec![0usize];
        while let Some(n) = stack.pop() {
            if ids[n] != u32::MAX {
                continue;
            }
            ids[n] = order.len() as u32;
            order.push(n);
            for &(_, t) in self.nodes[n].trans.iter().rev() {
                if ids[t] == u32::MAX {
                    stack.push(t);
                }
            }
        }
        let mut states = Vec::with_capacity(order.len());
        let mut transitions = Vec::new();
        for &n in &order {
            let node = &self.nodes[n];
            states.push(State {
                first: transitions.len() as u32,
                count: node.trans.len() as u32,
                label: node.label,
            });
            transitions.extend(node.trans.iter().map(|&(byte, t)| Transition {
                byte,
                target: ids[t],
            }));
        }
        Dafsa { states, transitions }
    }
}
