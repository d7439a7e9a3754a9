use crate::formula::{Assignment, Instance};

use super::{NaeError, SolveOutcome};

#[inline]
fn node(var: u32, positive: bool) -> usize {
    2 * (var as usize - 1) + (!positive) as usize
}

/// Linear-time 2-SAT through strongly connected components of the implication graph.
/// 1-clauses are allowed.
pub fn solve_2sat(f: &Instance) -> Result<SolveOutcome, NaeError> {
    if f.max_len() > 2 {
        return Err(NaeError::Precondition(format!("2-SAT given a clause of length {}", f.max_len())));
    }
    let n = f.num_vars();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    for c in f.clauses() {
        let l = c.literals();
        let a = l[0];
        let b = *l.get(1).unwrap_or(&a);
        adj[node(a.var(), !a.is_positive())].push(node(b.var(), b.is_positive()));
        adj[node(b.var(), !b.is_positive())].push(node(a.var(), a.is_positive()));
    }
    let comp = tarjan(&adj);
    let mut alpha = Assignment::all_false(n);
    for v in 1..=n as u32 {
        let (p, q) = (comp[node(v, true)], comp[node(v, false)]);
        if p == q {
            return Ok(SolveOutcome::Unsatisfiable);
        }
        // components are numbered in reverse topological order
        alpha.set(v, p < q);
    }
    Ok(SolveOutcome::Satisfiable(alpha))
}

/// Iterative Tarjan; returns the component id of every node.
fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if *edge == 0 && index[v] == UNSEEN {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(*edge) {
                *edge += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("non-empty");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}
