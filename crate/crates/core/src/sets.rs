//! Small helpers around [`FixedBitSet`], the set type used for element sets.

use fixedbitset::FixedBitSet;

pub type ElemSet = FixedBitSet;

pub fn empty(universe: usize) -> ElemSet {
    FixedBitSet::with_capacity(universe)
}

pub fn from_iter<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> ElemSet {
    let mut s = FixedBitSet::with_capacity(universe);
    for i in items {
        s.insert(i);
    }
    s
}

pub fn singleton(universe: usize, x: usize) -> ElemSet {
    from_iter(universe, [x])
}

pub fn full(universe: usize) -> ElemSet {
    let mut s = FixedBitSet::with_capacity(universe);
    s.insert_range(..);
    s
}

pub fn members(s: &ElemSet) -> Vec<usize> {
    s.ones().collect()
}

pub fn union(a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut u = a.clone();
    u.union_with(b);
    u
}

pub fn intersection(a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut u = a.clone();
    u.intersect_with(b);
    u
}

/// Canonical comparison key: cardinality first, then sorted members.
pub fn canonical_key(s: &ElemSet) -> (usize, Vec<usize>) {
    (s.count_ones(..), members(s))
}

/// Formats `s` as `{a,b,c}` using the supplied element names.
pub fn format_set(s: &ElemSet, names: &[String]) -> String {
    let parts: Vec<&str> = s.ones().map(|i| names[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}
