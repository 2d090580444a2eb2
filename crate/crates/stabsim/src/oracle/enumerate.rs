//! Whole-state-space and whole-graph-class enumeration for small instances.

use std::collections::HashSet;

use super::OracleError;
use crate::graph::Graph;
use crate::state::{GlobalState, LocalState, Membership};

/// Hard cap on enumerated states so every exhaustive check stays fast.
pub const MAX_STATES: u64 = 16_384;

/// All `2^n` membership states, ordered by bitmask (bit `i-1` set means node
/// `i` is in).
pub fn member_states(n: u32) -> Result<impl Iterator<Item = GlobalState>, OracleError> {
    if n >= 16 || (1u64 << n) > MAX_STATES {
        return Err(OracleError::TooLarge {
            what: format!("2^{n} membership states"),
            limit: MAX_STATES,
        });
    }
    Ok((0u32..(1 << n)).map(move |mask| {
        GlobalState::new(
            (0..n)
                .map(|bit| {
                    LocalState::Member(if mask >> bit & 1 == 1 {
                        Membership::In
                    } else {
                        Membership::Out
                    })
                })
                .collect(),
        )
    }))
}

/// Colour cap used when enumerating colouring states: one escape step above
/// the largest id.
pub fn colour_cap(n: u32) -> u32 {
    2 * n
}

/// All states with every colour in `[1, cap]`, odometer order.
pub fn colour_states(n: u32, cap: u32) -> Result<impl Iterator<Item = GlobalState>, OracleError> {
    let total = (cap as u64).checked_pow(n).filter(|&t| t <= MAX_STATES);
    if total.is_none() {
        return Err(OracleError::TooLarge {
            what: format!("{cap}^{n} colouring states"),
            limit: MAX_STATES,
        });
    }
    let mut odometer = vec![1u32; n as usize];
    let mut done = false;
    Ok(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let state = GlobalState::from_colours(&odometer);
        let mut idx = 0;
        loop {
            if idx == odometer.len() {
                done = true;
                break;
            }
            if odometer[idx] < cap {
                odometer[idx] += 1;
                break;
            }
            odometer[idx] = 1;
            idx += 1;
        }
        Some(state)
    }))
}

/// One representative per isomorphism class of simple graphs on `n` nodes.
pub fn non_isomorphic_graphs(n: u32) -> Vec<Graph> {
    assert!((1..=6).contains(&n), "supported for 1 <= n <= 6");
    let nodes = n as usize;
    let pairs: Vec<(usize, usize)> = (0..nodes)
        .flat_map(|u| ((u + 1)..nodes).map(move |v| (u, v)))
        .collect();
    let mut pair_index = vec![vec![usize::MAX; nodes]; nodes];
    for (idx, &(u, v)) in pairs.iter().enumerate() {
        pair_index[u][v] = idx;
        pair_index[v][u] = idx;
    }
    let perms = permutations(nodes);

    let mut seen: HashSet<u32> = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canon = perms
            .iter()
            .map(|p| {
                let mut remapped = 0u32;
                for (idx, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> idx & 1 == 1 {
                        remapped |= 1 << pair_index[p[u]][p[v]];
                    }
                }
                remapped
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(idx, _)| mask >> idx & 1 == 1)
                .map(|(_, &(u, v))| (u as u32 + 1, v as u32 + 1))
                .collect();
            out.push(Graph::new(n, &edges).unwrap());
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn member_states_count_and_order() {
        let states: Vec<_> = member_states(2).unwrap().collect();
        assert_eq!(states.len(), 4);
        assert_eq!(states[0].to_string(), "(OUT,OUT)");
        assert_eq!(states[1].to_string(), "(IN,OUT)");
        assert_eq!(states[3].to_string(), "(IN,IN)");
        assert!(member_states(30).is_err());
    }

    #[test]
    fn colour_states_cover_the_box() {
        let states: Vec<_> = colour_states(2, 3).unwrap().collect();
        assert_eq!(states.len(), 9);
        assert_eq!(states[0].to_string(), "(1,1)");
        assert_eq!(states[8].to_string(), "(3,3)");
        assert!(colour_states(10, 10).is_err());
    }

    /// Known counts of isomorphism classes of simple graphs on 1..=5 nodes.
    #[test]
    fn graph_class_counts_match_the_literature() {
        assert_eq!(non_isomorphic_graphs(1).len(), 1);
        assert_eq!(non_isomorphic_graphs(2).len(), 2);
        assert_eq!(non_isomorphic_graphs(3).len(), 4);
        assert_eq!(non_isomorphic_graphs(4).len(), 11);
        assert_eq!(non_isomorphic_graphs(5).len(), 34);
    }
}
