//! Model files shipped with the crate, also found under `models/`.

use crate::model::format::{normalize, parse, serialize};
use crate::model::{Model, TwoOpModel};

pub const FILES: [(&str, &str); 8] = [
    ("krasner", include_str!("../models/krasner.txt")),
    (
        "sign_hyperfield",
        include_str!("../models/sign_hyperfield.txt"),
    ),
    ("z2", include_str!("../models/z2.txt")),
    ("z3", include_str!("../models/z3.txt")),
    ("degenerate2", include_str!("../models/degenerate2.txt")),
    ("total2", include_str!("../models/total2.txt")),
    ("difference3", include_str!("../models/difference3.txt")),
    (
        "krasner_module",
        include_str!("../models/krasner_module.txt"),
    ),
];

pub fn text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn model(name: &str) -> Option<Model> {
    text(name).map(|t| parse(t).expect("bundled models parse"))
}

/// The Krasner hyperfield on `{0, 1}`.
pub fn krasner() -> TwoOpModel {
    match model("krasner") {
        Some(Model::TwoOp { model, .. }) => model,
        _ => unreachable!("krasner.txt is a two-operation model"),
    }
}

/// Whether `text` survives a parse and serialize round trip.
pub fn round_trips(text: &str) -> bool {
    parse(text).is_ok_and(|m| normalize(&serialize(&m)) == normalize(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_file_round_trips() {
        for (name, t) in FILES {
            assert!(
                round_trips(t),
                "{name}:\n{}",
                parse(t).map(|m| serialize(&m)).unwrap_or_default()
            );
        }
    }
}
