use alloc::vec;
use alloc::vec::Vec;

use super::{structure_from_patterns, DiscretePattern, Stance};
use crate::params::ModelParams;
use crate::structure::PowerStructure;

/// Three unit-size agents whose relations are reciprocal in sign.
#[derive(Debug, Clone, PartialEq)]
pub struct Triad {
    /// Relations between agents (0,1), (0,2) and (1,2).
    pub relations: [Stance; 3],
    pub structure: PowerStructure,
}

/// Weighted triad for the given relations.
pub fn triad_structure(relations: [Stance; 3], params: &ModelParams) -> PowerStructure {
    let [r01, r02, r12] = relations;
    let patterns = [
        DiscretePattern { owner: 0, stances: vec![Stance::Neutral, r01, r02] },
        DiscretePattern { owner: 1, stances: vec![r01, Stance::Neutral, r12] },
        DiscretePattern { owner: 2, stances: vec![r02, r12, Stance::Neutral] },
    ];
    structure_from_patterns(vec![1.0; 3], &patterns, params.rho).expect("3x3 by construction")
}

/// The 18 triads distinct from agent 0's point of view.
///
/// Swapping agents 1 and 2 exchanges the first two relations; of each pair
/// of swap-equivalent triples the lexicographically smaller one is kept, and
/// the result is in lexicographic order.
pub fn enumerate_triads(params: &ModelParams) -> Vec<Triad> {
    let mut out = Vec::with_capacity(18);
    for a in Stance::ALL {
        for b in Stance::ALL {
            for c in Stance::ALL {
                let relations = [a, b, c];
                if relations <= [b, a, c] {
                    out.push(Triad { relations, structure: triad_structure(relations, params) });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::validate_structure;

    #[test]
    fn eighteen_valid_triads() {
        let p = ModelParams::default();
        let triads = enumerate_triads(&p);
        assert_eq!(triads.len(), 18);
        for t in &triads {
            assert!(validate_structure(&t.structure, &p).is_ok());
        }
        assert_eq!(triads[0].relations, [Stance::Neutral; 3]);
    }

    #[test]
    fn swap_partners_collapse() {
        use Stance::*;
        let triads = enumerate_triads(&ModelParams::default());
        let has = |r: [Stance; 3]| triads.iter().any(|t| t.relations == r);
        assert!(has([Positive, Negative, Neutral]));
        assert!(!has([Negative, Positive, Neutral]));
    }
}
