//! The built-in benchmark corpus.

use crate::generators::{Family, GenError};
use crate::graph::Graph;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub graph: Graph,
}

const RANDOM_ORDERS: [usize; 10] = [10, 13, 17, 20, 23, 27, 30, 33, 37, 40];

/// Complete graphs K4..K8, wheels W5..W9, prisms over 3..5-cycles, the
/// Petersen graph and ten random 3-connected graphs on 10 to 40 vertices.
/// The random graphs depend only on `seed`.
pub fn builtin(seed: u64) -> Result<Vec<CorpusEntry>, GenError> {
    let mut families: Vec<(Family, u64)> = Vec::new();
    families.extend((4..=8).map(|n| (Family::Complete(n), 0)));
    families.extend((5..=9).map(|n| (Family::Wheel(n), 0)));
    families.extend((3..=5).map(|k| (Family::Prism(k), 0)));
    families.push((Family::Petersen, 0));
    for (i, &n) in RANDOM_ORDERS.iter().enumerate() {
        let family = Family::Random3c { n, extra: n / 4 };
        families.push((family, seed.wrapping_mul(1_000_003).wrapping_add(i as u64)));
    }
    families
        .into_iter()
        .map(|(f, s)| {
            Ok(CorpusEntry {
                id: f.to_string(),
                graph: f.generate(s)?,
            })
        })
        .collect()
}
