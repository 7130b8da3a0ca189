//! Substitutions bundled with the crate, as `.sub` text.

use crate::substitution::Substitution;

pub const ENTRIES: &[(&str, &str)] = &[
    ("fibonacci", include_str!("../corpus/fibonacci.sub")),
    ("brother", include_str!("../corpus/brother.sub")),
    ("thue_morse", include_str!("../corpus/thue_morse.sub")),
    ("base2", include_str!("../corpus/base2.sub")),
    ("identity", include_str!("../corpus/identity.sub")),
    ("tree", include_str!("../corpus/tree.sub")),
    ("tree_fixed", include_str!("../corpus/tree_fixed.sub")),
    ("semi1", include_str!("../corpus/semi1.sub")),
    ("semi2", include_str!("../corpus/semi2.sub")),
    ("semi3", include_str!("../corpus/semi3.sub")),
    ("semi4", include_str!("../corpus/semi4.sub")),
    ("semi5", include_str!("../corpus/semi5.sub")),
    ("semi6", include_str!("../corpus/semi6.sub")),
    ("semi7", include_str!("../corpus/semi7.sub")),
    ("nonsemi", include_str!("../corpus/nonsemi.sub")),
    ("recurrence", include_str!("../corpus/recurrence.sub")),
    ("product_left", include_str!("../corpus/product_left.sub")),
    ("product_right", include_str!("../corpus/product_right.sub")),
    (
        "reverse_example",
        include_str!("../corpus/reverse_example.sub"),
    ),
];

/// Source text of a bundled substitution.
pub fn source(name: &str) -> Option<&'static str> {
    ENTRIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

pub fn get(name: &str) -> Option<Substitution> {
    source(name).map(|text| Substitution::parse(text).expect("bundled files parse"))
}

/// Every bundled substitution with its name.
pub fn all() -> Vec<(&'static str, Substitution)> {
    ENTRIES
        .iter()
        .map(|(n, text)| (*n, Substitution::parse(text).expect("bundled files parse")))
        .collect()
}
