//! Small integral max-flow. Arcs are scanned in insertion order, so the flow
//! found is a deterministic function of the construction order.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    rev: usize,
    cap: u64,
}

#[derive(Clone, Debug)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
}

/// Handle to a forward arc, for reading its flow afterwards.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ArcId {
    from: usize,
    index: usize,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowNetwork { adj: vec![Vec::new(); nodes] }
    }

    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: u64) -> ArcId {
        let index = self.adj[from].len();
        let rev = self.adj[to].len() + usize::from(from == to);
        self.adj[from].push(Arc { to, rev, cap });
        self.adj[to].push(Arc { to: from, rev: index, cap: 0 });
        ArcId { from, index }
    }

    /// Flow currently pushed through `arc` (the residual of its reverse).
    pub(crate) fn flow(&self, arc: ArcId) -> u64 {
        let a = &self.adj[arc.from][arc.index];
        self.adj[a.to][a.rev].cap
    }

    /// Edmonds–Karp: shortest augmenting paths, ties broken by arc order.
    pub(crate) fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let mut total = 0;
        // parent[v] = (u, arc index in adj[u]) on the BFS tree
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.adj.len()];
        let mut queue = VecDeque::new();
        loop {
            parent.iter_mut().for_each(|p| *p = None);
            queue.clear();
            queue.push_back(source);
            while let Some(v) = queue.pop_front() {
                if v == sink {
                    break;
                }
                for (e, arc) in self.adj[v].iter().enumerate() {
                    if arc.cap > 0 && arc.to != source && parent[arc.to].is_none() {
                        parent[arc.to] = Some((v, e));
                        queue.push_back(arc.to);
                    }
                }
            }
            if parent[sink].is_none() {
                return total;
            }
            let mut pushed = u64::MAX;
            let mut v = sink;
            while let Some((u, e)) = parent[v] {
                pushed = pushed.min(self.adj[u][e].cap);
                v = u;
            }
            let mut v = sink;
            while let Some((u, e)) = parent[v] {
                let rev = self.adj[u][e].rev;
                self.adj[u][e].cap -= pushed;
                self.adj[v][rev].cap += pushed;
                v = u;
            }
            total += pushed;
        }
    }
}
