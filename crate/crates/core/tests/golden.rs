//! Printed pyramids and the printed representative, box by box.

use orbitforge::orbits::build_nilpotent;
use orbitforge::partitions::{build_pyramid, Epsilon, Partition};

/// (row, col) of the crossed boxes in the same figures.
pub fn printed_crossed() -> Vec<Vec<(i32, i32)>> {
    vec![
        vec![(3, -3), (3, -1), (-3, 1), (-3, 3)],
        vec![(4, -1), (-4, 1)],
        vec![],
        vec![(1, -4), (1, -2), (-1, 2), (-1, 4)],
    ]
}

/// (label, row, col) for every box of the four printed pyramids.
type Printed = (&'static str, Epsilon, Vec<(i32, i32, i32)>);

pub fn printed_pyramids() -> Vec<Printed> {
    vec![
        (
            "5,5,4",
            Epsilon::Minus,
            vec![
                (1, 1, -4),
                (2, 1, -2),
                (3, 1, 0),
                (4, 1, 2),
                (5, 1, 4),
                (6, 3, 1),
                (7, 3, 3),
                (-1, -1, 4),
                (-2, -1, 2),
                (-3, -1, 0),
                (-4, -1, -2),
                (-5, -1, -4),
                (-6, -3, -1),
                (-7, -3, -3),
            ],
        ),
        (
            "4,3,3,2",
            Epsilon::Minus,
            vec![
                (1, 0, 1),
                (2, 0, 3),
                (3, 2, -2),
                (4, 2, 0),
                (5, 2, 2),
                (6, 4, 1),
                (-1, 0, -1),
                (-2, 0, -3),
                (-3, -2, 2),
                (-4, -2, 0),
                (-5, -2, -2),
                (-6, -4, -1),
            ],
        ),
        (
            "4,4,3,1,1",
            Epsilon::Plus,
            vec![
                (0, 0, 0),
                (1, 0, 2),
                (2, 2, -3),
                (3, 2, -1),
                (4, 2, 1),
                (5, 2, 3),
                (6, 4, 0),
                (-1, 0, -2),
                (-2, -2, 3),
                (-3, -2, 1),
                (-4, -2, -1),
                (-5, -2, -3),
                (-6, -4, 0),
            ],
        ),
        (
            "5,2,2,1",
            Epsilon::Plus,
            vec![
                (1, 1, 0),
                (2, 1, 2),
                (3, 1, 4),
                (4, 3, -1),
                (5, 3, 1),
                (-1, -1, 0),
                (-2, -1, -2),
                (-3, -1, -4),
                (-4, -3, 1),
                (-5, -3, -1),
            ],
        ),
    ]
}

#[test]
fn pyramids_match_figures() {
    for ((s, eps, boxes), crossed) in printed_pyramids().into_iter().zip(printed_crossed()) {
        let pyr = build_pyramid(&Partition::parse(s).unwrap(), eps).unwrap();
        let mut got = pyr.crossed.clone();
        got.sort();
        let mut want = crossed;
        want.sort();
        assert_eq!(got, want, "{s} crossed boxes");
        assert_eq!(pyr.boxes.len(), boxes.len(), "{s}");
        for (label, row, col) in boxes {
            assert_eq!(
                (pyr.row(label), pyr.col(label)),
                (row, col),
                "{s} box {label}"
            );
        }
    }
}

#[test]
fn representative_5221() {
    let rep = build_nilpotent(&Partition::parse("5,2,2,1").unwrap(), Epsilon::Plus).unwrap();
    let mut t = rep.terms.clone();
    t.sort();
    let mut want = vec![
        (5, 4, 1),
        (-4, -5, -1),
        (3, 2, 1),
        (-2, -3, -1),
        (2, 1, 1),
        (-1, -2, -1),
        (1, -2, 1),
        (2, -1, -1),
    ];
    want.sort();
    assert_eq!(t, want);
}
