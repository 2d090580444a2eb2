//! Distance-to-feasibility and slack-above-minimality scores, by exhaustive
//! subset search.

use super::{check_feasible, OracleError};
use crate::algo::Task;
use crate::graph::NodeId;
use crate::instance::SdmdsInstance;
use crate::state::{GlobalState, LocalState, Membership};

const MAX_N: u32 = 16;

/// Minimum number of nodes that must be added to the current set to make it
/// dominating. Zero exactly on feasible states.
pub fn rank(inst: &SdmdsInstance, state: &GlobalState) -> Result<u32, OracleError> {
    let n = inst.graph().n();
    if n > MAX_N {
        return Err(OracleError::TooLarge {
            what: format!("rank on {n} nodes"),
            limit: MAX_N as u64,
        });
    }
    let task = Task::Sdmds(inst);
    let outs: Vec<NodeId> = inst
        .graph()
        .ids()
        .filter(|&i| !state.member(i).is_in())
        .collect();
    let mut best: Option<u32> = None;
    for mask in 0u32..(1 << outs.len()) {
        let adds = mask.count_ones();
        if best.is_some_and(|b| adds >= b) {
            continue;
        }
        let mut alt = state.clone();
        for (bit, &i) in outs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                alt.set(i, LocalState::Member(Membership::In));
            }
        }
        if check_feasible(task, &alt) {
            best = Some(adds);
        }
    }
    // Adding every non-member always dominates.
    Ok(best.expect("full set is dominating"))
}

/// Maximum number of members that can be removed while staying dominating.
/// Zero exactly on minimal (optimal) dominating sets.
pub fn badness(inst: &SdmdsInstance, state: &GlobalState) -> Result<u32, OracleError> {
    let n = inst.graph().n();
    if n > MAX_N {
        return Err(OracleError::TooLarge {
            what: format!("badness on {n} nodes"),
            limit: MAX_N as u64,
        });
    }
    let task = Task::Sdmds(inst);
    if !check_feasible(task, state) {
        return Err(OracleError::Infeasible);
    }
    let ins: Vec<NodeId> = state.members_in();
    let mut best = 0u32;
    for mask in 0u32..(1 << ins.len()) {
        let drops = mask.count_ones();
        if drops <= best {
            continue;
        }
        let mut alt = state.clone();
        for (bit, &i) in ins.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                alt.set(i, LocalState::Member(Membership::Out));
            }
        }
        if check_feasible(task, &alt) {
            best = drops;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn g4_uniform() -> SdmdsInstance {
        SdmdsInstance::uniform(Graph::new(4, &[(1, 2), (3, 4)]).unwrap())
    }

    #[test]
    fn rank_counts_missing_coverage() {
        let inst = g4_uniform();
        // Feasible state: already dominating.
        assert_eq!(rank(&inst, &GlobalState::from_members(4, &[1, 3])), Ok(0));
        // Empty set: one endpoint per disjoint edge.
        assert_eq!(rank(&inst, &GlobalState::from_members(4, &[])), Ok(2));
        assert_eq!(rank(&inst, &GlobalState::from_members(4, &[1])), Ok(1));
    }

    #[test]
    fn badness_counts_removable_slack() {
        let inst = g4_uniform();
        assert_eq!(
            badness(&inst, &GlobalState::from_members(4, &[1, 3])),
            Ok(0)
        );
        assert_eq!(
            badness(&inst, &GlobalState::from_members(4, &[1, 2, 3, 4])),
            Ok(2)
        );
        let k2 = SdmdsInstance::uniform(Graph::new(2, &[(1, 2)]).unwrap());
        assert_eq!(badness(&k2, &GlobalState::from_members(2, &[1, 2])), Ok(1));
    }

    #[test]
    fn badness_requires_feasibility() {
        let inst = g4_uniform();
        assert_eq!(
            badness(&inst, &GlobalState::from_members(4, &[])),
            Err(OracleError::Infeasible)
        );
    }

    #[test]
    fn caps_apply() {
        let big = SdmdsInstance::uniform(Graph::gen_gnm(20, 30, 1).unwrap());
        let s = GlobalState::all_member(20, Membership::In);
        assert!(matches!(rank(&big, &s), Err(OracleError::TooLarge { .. })));
    }
}
