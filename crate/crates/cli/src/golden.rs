//! Published unordered component tables, degrees 1 to 8.

use std::collections::BTreeMap;

use logtangent_core::aggregate::ContributionTable;
use logtangent_core::exactq::parse_rat;
use logtangent_core::locgraph::{Mode, MultiDegree};

pub const MAX_DEGREE: u32 = 8;

type Rows = &'static [([u32; 3], &'static str)];

const ROWS: &[(u32, Rows)] = &[
    (1, &[([1, 0, 0], "9")]),
    (2, &[([2, 0, 0], "63/4"), ([1, 1, 0], "18")]),
    (3, &[([3, 0, 0], "55"), ([2, 1, 0], "162"), ([1, 1, 1], "27")]),
    (
        4,
        &[
            ([4, 0, 0], "4095/16"),
            ([3, 1, 0], "936"),
            ([2, 2, 0], "1089/2"),
            ([2, 1, 1], "576"),
        ],
    ),
    (
        5,
        &[
            ([5, 0, 0], "34884/25"),
            ([4, 1, 0], "6120"),
            ([3, 2, 0], "8190"),
            ([3, 1, 1], "4680"),
            ([2, 2, 1], "5040"),
        ],
    ),
    (
        6,
        &[
            ([6, 0, 0], "33649/4"),
            ([5, 1, 0], "43092"),
            ([4, 2, 0], "130815/2"),
            ([4, 1, 1], "40014"),
            ([3, 3, 0], "36992"),
            ([3, 2, 1], "96228"),
            ([2, 2, 2], "67797/4"),
        ],
    ),
    (
        7,
        &[
            ([7, 0, 0], "2664090/49"),
            ([6, 1, 0], "318780"),
            ([5, 2, 0], "541926"),
            ([5, 1, 1], "350658"),
            ([4, 3, 0], "682290"),
            ([4, 2, 1], "948528"),
            ([3, 3, 1], "513639"),
            ([3, 2, 2], "547344"),
        ],
    ),
    (
        8,
        &[
            ([8, 0, 0], "23666175/64"),
            ([7, 1, 0], "2442960"),
            ([6, 2, 0], "4601610"),
            ([6, 1, 1], "3116880"),
            ([5, 3, 0], "6375600"),
            ([5, 2, 1], "9448560"),
            ([4, 4, 0], "28227969/8"),
            ([4, 3, 1], "11139552"),
            ([4, 2, 2], "6045264"),
            ([3, 3, 2], "6407712"),
        ],
    ),
];

const TOTALS: [&str; MAX_DEGREE as usize] = [
    "9",
    "135/4",
    "244",
    "36999/16",
    "635634/25",
    "307095",
    "193919175/49",
    "3422490759/64",
];

pub fn table(d: u32) -> Option<ContributionTable> {
    let (_, rows) = ROWS.iter().find(|(deg, _)| *deg == d)?;
    let rows: BTreeMap<MultiDegree, _> = rows
        .iter()
        .map(|(p, v)| (MultiDegree::unordered(*p), parse_rat(v).expect("valid literal")))
        .collect();
    Some(ContributionTable::new(d, Mode::Unordered, rows).expect("valid golden table"))
}

pub fn total(d: u32) -> Option<logtangent_core::exactq::Rat> {
    let s = TOTALS.get((d as usize).checked_sub(1)?)?;
    Some(parse_rat(s).expect("valid literal"))
}
