//! Strongly connected components without recursion.

/// Directed graph in compressed adjacency form.
#[derive(Debug, Clone)]
pub struct Digraph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Digraph {
    pub fn from_edges(num_nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        let mut offsets = vec![0usize; num_nodes + 1];
        for &(s, _) in &edges {
            offsets[s + 1] += 1;
        }
        for i in 0..num_nodes {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0usize; edges.len()];
        for (s, t) in edges {
            targets[fill[s]] = t;
            fill[s] += 1;
        }
        Digraph { offsets, targets }
    }

    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }
}

/// Component assignment produced by [`tarjan`].
///
/// Components are numbered in the order Tarjan completes them, which is a
/// reverse topological order of the condensation: every edge `u -> v` between
/// different components has `component[u] > component[v]`.
#[derive(Debug, Clone)]
pub struct Components {
    pub component: Vec<usize>,
    pub count: usize,
}

impl Components {
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &c in &self.component {
            sizes[c] += 1;
        }
        sizes
    }
}

pub fn tarjan(g: &Digraph) -> Components {
    const UNVISITED: usize = usize::MAX;
    let n = g.num_nodes();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut component = vec![UNVISITED; n];
    let mut scc_stack: Vec<usize> = Vec::new();
    // (node, position in its successor list)
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0usize;
    let mut count = 0usize;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        scc_stack.push(root);
        on_stack[root] = true;
        call.push((root, 0));

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let succ = g.successors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    scc_stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                lowlink[parent] = lowlink[parent].min(lowlink[v]);
            }
            if lowlink[v] == index[v] {
                loop {
                    let w = scc_stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    Components { component, count }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cycles_and_a_bridge() {
        let g = Digraph::from_edges(5, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 2), (3, 4)]);
        let c = tarjan(&g);
        assert_eq!(c.count, 3);
        assert_eq!(c.component[0], c.component[1]);
        assert_eq!(c.component[2], c.component[3]);
        assert_ne!(c.component[0], c.component[2]);
        // reverse topological numbering
        assert!(c.component[0] > c.component[2]);
        assert!(c.component[3] > c.component[4]);
    }

    #[test]
    fn long_chain_does_not_overflow() {
        let n = 200_000;
        let g = Digraph::from_edges(n, (0..n - 1).map(|i| (i, i + 1)).chain([(n - 1, 0)]));
        let c = tarjan(&g);
        assert_eq!(c.count, 1);
    }

    #[test]
    fn self_loop_is_singleton() {
        let g = Digraph::from_edges(2, [(0, 0), (0, 1)]);
        let c = tarjan(&g);
        assert_eq!(c.count, 2);
        assert_eq!(c.sizes(), vec![1, 1]);
    }

    #[test]
    fn edges_point_to_lower_components() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(1..30);
            let edges: Vec<(usize, usize)> =
                (0..rng.gen_range(0..80)).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
            let g = Digraph::from_edges(n, edges.clone());
            let c = tarjan(&g);
            for (u, v) in edges {
                assert!(c.component[u] >= c.component[v]);
            }
        }
    }
}
