//! Partitions admissible for orthogonal and symplectic Lie algebras, the
//! block-pairing involution, Dynkin pyramids, and the rigidity predicates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Sign of the bilinear form: `Plus` gives so_N, `Minus` gives sp_N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Epsilon {
    Plus,
    Minus,
}

impl Epsilon {
    pub fn sign(self) -> i64 {
        match self {
            Epsilon::Plus => 1,
            Epsilon::Minus => -1,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "+1" | "+" | "so" => Ok(Epsilon::Plus),
            "-1" | "−1" | "-" | "sp" => Ok(Epsilon::Minus),
            other => Err(Error::InvalidAlgebra(format!(
                "epsilon must be 1 or -1, got {other}"
            ))),
        }
    }

    /// ε·(-1)^m
    pub fn twist(self, m: usize) -> i64 {
        self.sign() * if m.is_multiple_of(2) { 1 } else { -1 }
    }
}

impl Serialize for Epsilon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.sign())
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign())
    }
}

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Parse "5,2,2,1".
    pub fn parse(s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<usize>, _> = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>())
            .collect();
        let parts = parts.map_err(|_| Error::InvalidPartition(s.to_string()))?;
        if parts.is_empty() {
            return Err(Error::InvalidPartition(s.to_string()));
        }
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Conjugate partition λ'.
    pub fn conjugate(&self) -> Vec<usize> {
        let top = self.parts.first().copied().unwrap_or(0);
        (1..=top)
            .map(|k| self.parts.iter().filter(|&&p| p >= k).count())
            .collect()
    }

    pub fn odd_parts(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 1).count()
    }

    pub fn is_zero_orbit(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// λ ∈ P_ε(N): for ε = 1 even parts have even multiplicity, for ε = -1 odd
/// parts have even multiplicity.
pub fn validate_partition(lambda: &Partition, eps: Epsilon) -> bool {
    if eps == Epsilon::Minus && lambda.total() % 2 == 1 {
        return false;
    }
    let bad_parity = match eps {
        Epsilon::Plus => 0,
        Epsilon::Minus => 1,
    };
    lambda
        .multiplicities()
        .iter()
        .all(|(&v, &m)| v % 2 != bad_parity || m % 2 == 0)
}

/// ε = 1, every part even and every multiplicity even.
pub fn is_very_even(lambda: &Partition, eps: Epsilon) -> bool {
    eps == Epsilon::Plus
        && lambda
            .multiplicities()
            .iter()
            .all(|(&v, &m)| v % 2 == 0 && m % 2 == 0)
}

pub fn admissible_partitions(n: usize, eps: Epsilon) -> Vec<Partition> {
    all_partitions(n)
        .into_iter()
        .filter(|l| validate_partition(l, eps))
        .collect()
}

fn require(lambda: &Partition, eps: Epsilon) -> Result<()> {
    if validate_partition(lambda, eps) {
        Ok(())
    } else {
        Err(Error::NotAdmissible {
            partition: lambda.to_string(),
            eps: eps.sign() as i8,
        })
    }
}

/// Involution i ↦ i' on part indices (0-based internally).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Involution {
    map: Vec<usize>,
}

impl Involution {
    pub fn partner(&self, i: usize) -> usize {
        self.map[i]
    }
    pub fn len(&self) -> usize {
        self.map.len()
    }
    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
    pub fn is_fixed(&self, i: usize) -> bool {
        self.map[i] == i
    }
    /// 1-based pairs (i, i') for display.
    pub fn one_based(&self) -> Vec<(usize, usize)> {
        self.map
            .iter()
            .enumerate()
            .map(|(i, j)| (i + 1, j + 1))
            .collect()
    }
    pub fn from_map(map: Vec<usize>) -> Self {
        Involution { map }
    }
}

/// Fixed points are the parts with ε(-1)^{λ_i} = -1; the remaining parts are
/// paired with an adjacent equal part in increasing index order.
pub fn pairing_involution(lambda: &Partition, eps: Epsilon) -> Result<Involution> {
    require(lambda, eps)?;
    let n = lambda.len();
    let mut map = vec![usize::MAX; n];
    let mut i = 0;
    while i < n {
        let v = lambda.parts[i];
        if eps.twist(v) == -1 {
            map[i] = i;
            i += 1;
        } else {
            // admissibility guarantees an equal neighbour
            if i + 1 >= n || lambda.parts[i + 1] != v {
                return Err(Error::Verification(format!(
                    "no partner for part {v} in {lambda}"
                )));
            }
            map[i] = i + 1;
            map[i + 1] = i;
            i += 2;
        }
    }
    Ok(Involution { map })
}

/// One box of a Dynkin pyramid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PyramidBox {
    pub idx: i32,
    pub row: i32,
    pub col: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynkinPyramid {
    pub n: usize,
    pub boxes: Vec<PyramidBox>,
    pub skew_rows: BTreeSet<i32>,
    /// Coordinates (row, col) of crossed boxes.
    pub crossed: Vec<(i32, i32)>,
}

impl DynkinPyramid {
    pub fn get(&self, idx: i32) -> Option<&PyramidBox> {
        self.boxes.iter().find(|b| b.idx == idx)
    }
    pub fn row(&self, idx: i32) -> i32 {
        self.get(idx).expect("box").row
    }
    pub fn col(&self, idx: i32) -> i32 {
        self.get(idx).expect("box").col
    }
    pub fn at(&self, row: i32, col: i32) -> Option<i32> {
        self.boxes
            .iter()
            .find(|b| b.row == row && b.col == col)
            .map(|b| b.idx)
    }
    pub fn is_skew(&self, row: i32) -> bool {
        self.skew_rows.contains(&row)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "boxes": self.boxes.iter().map(|b| serde_json::json!({"idx": b.idx, "row": b.row, "col": b.col})).collect::<Vec<_>>(),
            "skew_rows": self.skew_rows.iter().collect::<Vec<_>>(),
        })
    }

    /// ASCII picture, top row first; crossed boxes shown as `x`.
    pub fn render(&self) -> String {
        let rows: BTreeSet<i32> = self
            .boxes
            .iter()
            .map(|b| b.row)
            .chain(self.crossed.iter().map(|c| c.0))
            .collect();
        let minc = self
            .boxes
            .iter()
            .map(|b| b.col)
            .chain(self.crossed.iter().map(|c| c.1))
            .min()
            .unwrap_or(0);
        let maxc = self
            .boxes
            .iter()
            .map(|b| b.col)
            .chain(self.crossed.iter().map(|c| c.1))
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for r in rows.iter().rev() {
            let mut line = String::new();
            for c in minc..=maxc {
                let cell = if let Some(i) = self.at(*r, c) {
                    format!("{i:>3}")
                } else if self.crossed.contains(&(*r, c)) {
                    "  x".to_string()
                } else {
                    "   ".to_string()
                };
                line.push_str(&cell);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug)]
enum RowItem {
    Mirror(usize),
    /// Pair of odd parts l > m sharing a pair of skew rows (ε = 1).
    SkewOrth(usize, usize),
    /// Self-paired even part split over a pair of skew rows (ε = -1).
    SkewSymp(usize),
}

impl RowItem {
    fn key(&self) -> (usize, u8) {
        match self {
            RowItem::Mirror(v) => (*v, 0),
            RowItem::SkewOrth(l, _) => (*l, 1),
            RowItem::SkewSymp(b) => (*b, 1),
        }
    }
}

fn step2(lo: i32, hi: i32) -> Vec<i32> {
    let mut v = Vec::new();
    let mut c = lo;
    while c <= hi {
        v.push(c);
        c += 2;
    }
    v
}

/// Lay out the Dynkin pyramid of λ.
pub fn build_pyramid(lambda: &Partition, eps: Epsilon) -> Result<DynkinPyramid> {
    require(lambda, eps)?;
    let n = lambda.total();
    let mut mult = lambda.multiplicities();
    let mut row0: Option<usize> = None;
    let mut items: Vec<RowItem> = Vec::new();

    match eps {
        Epsilon::Plus => {
            let odd: Vec<usize> = mult
                .iter()
                .rev()
                .filter(|(v, m)| *v % 2 == 1 && *m % 2 == 1)
                .map(|(v, _)| *v)
                .collect();
            let mut rest: &[usize] = &odd;
            if odd.len() % 2 == 1 {
                row0 = Some(odd[0]);
                rest = &odd[1..];
            }
            for pair in rest.chunks(2) {
                items.push(RowItem::SkewOrth(pair[0], pair[1]));
            }
            for v in &odd {
                *mult.get_mut(v).unwrap() -= 1;
            }
        }
        Epsilon::Minus => {
            let even: Vec<usize> = mult
                .iter()
                .rev()
                .filter(|(v, m)| *v % 2 == 0 && *m % 2 == 1)
                .map(|(v, _)| *v)
                .collect();
            let top = lambda.parts[0];
            for &v in &even {
                if v == top && row0.is_none() {
                    row0 = Some(v);
                } else {
                    items.push(RowItem::SkewSymp(v));
                }
            }
            for v in &even {
                *mult.get_mut(v).unwrap() -= 1;
            }
        }
    }
    for (&v, &m) in &mult {
        debug_assert!(m % 2 == 0);
        for _ in 0..m / 2 {
            items.push(RowItem::Mirror(v));
        }
    }
    items.sort_by(|a, b| {
        let (ka, ta) = a.key();
        let (kb, tb) = b.key();
        kb.cmp(&ka).then(ta.cmp(&tb))
    });

    // (row, col, is_real) for the upper half plane including row 0
    let mut upper: Vec<(i32, i32, bool)> = Vec::new();
    let mut skew_rows = BTreeSet::new();
    if let Some(v) = row0 {
        let v = v as i32;
        for c in step2(-(v - 1), v - 1) {
            upper.push((0, c, true));
        }
        skew_rows.insert(0);
    }
    let mut r = if row0.is_some() { 2 } else { 1 };
    for it in &items {
        match it {
            RowItem::Mirror(v) => {
                let v = *v as i32;
                for c in step2(-(v - 1), v - 1) {
                    upper.push((r, c, true));
                }
            }
            RowItem::SkewOrth(l, m) => {
                let (l, m) = (*l as i32, *m as i32);
                for c in step2(-(l - 1), -(m + 1)) {
                    upper.push((r, c, false));
                }
                for c in step2(-(m - 1), l - 1) {
                    upper.push((r, c, true));
                }
                skew_rows.insert(r);
                skew_rows.insert(-r);
            }
            RowItem::SkewSymp(b) => {
                let b = *b as i32;
                for c in step2(-(b - 1), -1) {
                    upper.push((r, c, false));
                }
                for c in step2(1, b - 1) {
                    upper.push((r, c, true));
                }
                skew_rows.insert(r);
                skew_rows.insert(-r);
            }
        }
        r += 2;
    }

    let mut boxes = Vec::new();
    let mut crossed = Vec::new();
    let mut label = 1i32;
    for &(row, col, real) in &upper {
        if !real {
            crossed.push((row, col));
            crossed.push((-row, -col));
            continue;
        }
        if row == 0 {
            if col == 0 {
                boxes.push(PyramidBox {
                    idx: 0,
                    row: 0,
                    col: 0,
                });
            } else if col > 0 {
                boxes.push(PyramidBox {
                    idx: label,
                    row: 0,
                    col,
                });
                boxes.push(PyramidBox {
                    idx: -label,
                    row: 0,
                    col: -col,
                });
                label += 1;
            }
            continue;
        }
        boxes.push(PyramidBox {
            idx: label,
            row,
            col,
        });
        boxes.push(PyramidBox {
            idx: -label,
            row: -row,
            col: -col,
        });
        label += 1;
    }
    boxes.sort_by_key(|b| (b.idx <= 0, b.idx.abs()));
    crossed.sort();
    if boxes.len() != n {
        return Err(Error::Verification(format!(
            "pyramid for {lambda} has {} boxes, expected {n}",
            boxes.len()
        )));
    }
    Ok(DynkinPyramid {
        n,
        boxes,
        skew_rows,
        crossed,
    })
}

/// λ_i − λ_{i+1} ≤ 1 for all i, with λ_{n+1} = 0.
pub fn is_almost_rigid(lambda: &Partition) -> bool {
    let p = &lambda.parts;
    p.windows(2).all(|w| w[0] - w[1] <= 1) && p.last().is_none_or(|&x| x <= 1)
}

/// Almost rigid and no part value m with ε(-1)^m = -1 of multiplicity 2.
pub fn is_rigid(lambda: &Partition, eps: Epsilon) -> Result<bool> {
    require(lambda, eps)?;
    Ok(is_almost_rigid(lambda)
        && lambda
            .multiplicities()
            .iter()
            .all(|(&v, &m)| !(eps.twist(v) == -1 && m == 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(validate_partition(&p("5,5,4"), Epsilon::Minus));
        assert!(validate_partition(&p("3,1"), Epsilon::Plus));
        assert!(!validate_partition(&p("2"), Epsilon::Plus));
        assert!(is_very_even(&p("2,2"), Epsilon::Plus));
    }

    #[test]
    fn counts_of_partitions() {
        assert_eq!(all_partitions(8).len(), 22);
        assert_eq!(all_partitions(12).len(), 77);
    }

    #[test]
    fn almost_rigid_examples() {
        assert!(is_almost_rigid(&p("2,2,1,1")));
        assert!(!is_almost_rigid(&p("3,1")));
        assert!(!is_almost_rigid(&p("5,5,4")));
    }
}
