//! Conductors and torsion orders of small-conductor curves from the standard
//! tables, checked against minimalization, Tate's algorithm and Lutz–Nagell.

use ecs_core::curve::WeierstrassModel;
use ecs_core::reduction::global_reduction;
use ecs_core::torsion::{torsion_subgroup, TorsionStructure};
use ecs_core::BigInt;

const TABLE: &[(&str, [i64; 5], u64, TorsionStructure)] = &[
    ("11a1", [0, -1, 1, -10, -20], 11, TorsionStructure::Cyclic(5)),
    ("14a1", [1, 0, 1, 4, -6], 14, TorsionStructure::Cyclic(6)),
    ("15a1", [1, 1, 1, -10, -10], 15, TorsionStructure::Product(2, 4)),
    ("17a1", [1, -1, 1, -1, -14], 17, TorsionStructure::Cyclic(4)),
    ("19a1", [0, 1, 1, -9, -15], 19, TorsionStructure::Cyclic(3)),
    ("20a1", [0, 1, 0, 4, 4], 20, TorsionStructure::Cyclic(6)),
    ("21a1", [1, 0, 0, -4, -1], 21, TorsionStructure::Product(2, 4)),
    ("24a1", [0, -1, 0, -4, 4], 24, TorsionStructure::Product(2, 4)),
    ("26b1", [1, -1, 1, -3, 3], 26, TorsionStructure::Cyclic(7)),
    ("27a1", [0, 0, 1, 0, -7], 27, TorsionStructure::Cyclic(3)),
    ("30a1", [1, 0, 1, 1, 2], 30, TorsionStructure::Cyclic(6)),
    ("37a1", [0, 0, 1, -1, 0], 37, TorsionStructure::Cyclic(1)),
    ("389a1", [0, 1, 1, -2, 0], 389, TorsionStructure::Cyclic(1)),
];

#[test]
fn conductors_and_torsion() {
    for (label, a, conductor, structure) in TABLE {
        let e = WeierstrassModel::from_i64(*a).unwrap();
        let g = global_reduction(&e).unwrap();
        assert_eq!(g.minimal_model, e, "{label} is already minimal");
        assert_eq!(g.conductor(), BigInt::from(*conductor), "{label}");
        assert_eq!(torsion_subgroup(&e).unwrap().structure, *structure, "{label}");
    }
}

#[test]
fn scaled_models_keep_their_invariants() {
    for (label, a, conductor, structure) in TABLE {
        // x = 4x', y = 8y' multiplies a_i by 2^i.
        let scaled: Vec<i64> = a.iter().zip([1, 2, 3, 4, 6]).map(|(c, i)| c * 2i64.pow(i)).collect();
        let e = WeierstrassModel::from_i64(scaled.try_into().unwrap()).unwrap();
        let g = global_reduction(&e).unwrap();
        assert_eq!(g.conductor(), BigInt::from(*conductor), "{label}");
        assert_eq!(torsion_subgroup(&e).unwrap().structure, *structure, "{label}");
    }
}
