use serde::{Deserialize, Serialize};

use crate::notation::OrbifoldSignature;

/// Conway's name for a Euclidean pattern: a prefix counting the directions from which the
/// pattern looks the same, and a descriptor grouping similar patterns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConwayName {
    pub prefix: String,
    pub descriptor: String,
    pub full: String,
}

const TABLE: [(&str, &str); 17] = [
    ("*632", "scopic"),
    ("*442", "scopic"),
    ("*333", "scopic"),
    ("*2222", "scopic"),
    ("**", "scopic"),
    ("632", "tropic"),
    ("442", "tropic"),
    ("333", "tropic"),
    ("2222", "tropic"),
    ("o", "tropic"),
    ("4*2", "gyro"),
    ("3*3", "gyro"),
    ("22*", "gyro"),
    ("22x", "glide"),
    ("xx", "glide"),
    ("2*22", "rhombic"),
    ("*x", "rhombic"),
];

pub fn prefix_for_order(order: u32) -> Option<&'static str> {
    match order {
        1 => Some("mono"),
        2 => Some("di"),
        3 => Some("tri"),
        4 => Some("tetra"),
        6 => Some("hexa"),
        _ => None,
    }
}

/// The name of one of the 17 Euclidean signatures, `None` for anything else.
pub fn conway_name(sig: &OrbifoldSignature) -> Option<ConwayName> {
    let canonical = sig.canonicalize().to_string();
    let (_, descriptor) = TABLE.iter().find(|(s, _)| *s == canonical)?;
    let prefix = prefix_for_order(sig.max_rotation_order())?;
    Some(ConwayName {
        prefix: prefix.to_string(),
        descriptor: descriptor.to_string(),
        full: format!("{prefix}{descriptor}"),
    })
}
