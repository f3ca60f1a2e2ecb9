//! Parameter grids behind the `--table` presets (desk scale, N < 51,000).

/// One grid entry of a preset: family name plus parameter assignments.
#[derive(Clone)]
pub struct TableEntry {
    pub family: &'static str,
    /// (name, value) pairs, e.g. [("n", 1000)] or [("m", 7), ("n", 5)].
    pub params: Vec<(&'static str, i64)>,
}

const SPIRAL_NS: [i64; 20] = [
    10, 20, 30, 40, 50, 100, 200, 300, 400, 500, 1000, 2000, 3000, 4000, 5000, 10000, 20000,
    30000, 40000, 50000,
];

const HEALPIX_KS: [i64; 18] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 25, 30, 35, 40, 45, 50];
const RADIAL_KS: [i64; 13] = [1, 2, 3, 4, 5, 6, 7, 10, 15, 20, 30, 40, 50];
const CUBED_KS: [i64; 17] = [2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 25, 30, 35, 40, 45, 50];
const OCTA_KS: [i64; 21] = [
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 25, 30, 40, 50, 60, 70, 80, 90, 100,
];
const ICOS_MN: [(i64, i64); 19] = [
    (1, 0),
    (1, 1),
    (2, 0),
    (2, 1),
    (3, 0),
    (3, 1),
    (4, 1),
    (5, 2),
    (7, 1),
    (7, 5),
    (12, 4),
    (16, 3),
    (16, 7),
    (19, 6),
    (19, 18),
    (31, 21),
    (37, 27),
    (40, 33),
    (42, 40),
];

fn by_n(family: &'static str, ns: &[i64], offset: i64) -> Vec<TableEntry> {
    ns.iter()
        .map(|&n| TableEntry {
            family,
            params: vec![("n", n + offset)],
        })
        .collect()
}

fn by_k(family: &'static str, ks: &[i64]) -> Vec<TableEntry> {
    ks.iter()
        .map(|&k| TableEntry {
            family,
            params: vec![("k", k)],
        })
        .collect()
}

pub fn table(k: usize) -> Option<Vec<TableEntry>> {
    Some(match k {
        1 => by_n("gen_spiral", &SPIRAL_NS, 0),
        2 => by_n("fibonacci", &SPIRAL_NS, 1),
        3 => by_n("zonal", &SPIRAL_NS, 0),
        4 => by_k("healpix", &HEALPIX_KS),
        5 => by_k("radial_icosahedral", &RADIAL_KS),
        6 => by_k("cubed_sphere", &CUBED_KS),
        7 => by_k("octahedral", &OCTA_KS),
        8 => ICOS_MN
            .iter()
            .map(|&(m, n)| TableEntry {
                family: "icos_equal_area",
                params: vec![("m", m), ("n", n)],
            })
            .collect(),
        _ => return None,
    })
}
