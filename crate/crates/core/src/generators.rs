//! Deterministic graph families used as the test and benchmark corpus.

use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown graph family {0:?}")]
    UnknownFamily(String),
    #[error("{family}: {message}")]
    BadParams { family: &'static str, message: String },
}

/// A named graph family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `C_n`, n >= 3.
    Cycle(usize),
    /// `K_n`, n >= 1.
    Complete(usize),
    /// Hub 0 joined to the rim cycle `1..n`; n >= 4 vertices in total.
    Wheel(usize),
    /// Two k-cycles `0..k` and `k..2k` joined by the matching `i ~ i + k`.
    Prism(usize),
    Petersen,
    /// `P_n`, n >= 1. Not 3-connected; used for tree checks.
    Path(usize),
    /// K4 grown by vertices of degree 3, then `extra` random non-edges.
    Random3c {
        n: usize,
        extra: usize,
    },
}

impl Family {
    /// Parses a family name and its integer parameters, as on the command
    /// line (`random3c` takes `n` and optionally the extra-edge count).
    pub fn parse(name: &str, params: &[usize]) -> Result<Self, GenError> {
        let need = |family: &'static str, count: usize| -> Result<(), GenError> {
            if params.len() == count {
                Ok(())
            } else {
                Err(GenError::BadParams {
                    family,
                    message: format!("expected {count} parameter(s), got {}", params.len()),
                })
            }
        };
        let family = match name {
            "cycle" => {
                need("cycle", 1)?;
                Family::Cycle(params[0])
            }
            "complete" => {
                need("complete", 1)?;
                Family::Complete(params[0])
            }
            "wheel" => {
                need("wheel", 1)?;
                Family::Wheel(params[0])
            }
            "prism" => {
                need("prism", 1)?;
                Family::Prism(params[0])
            }
            "petersen" => {
                need("petersen", 0)?;
                Family::Petersen
            }
            "path" => {
                need("path", 1)?;
                Family::Path(params[0])
            }
            "random3c" => match params {
                [n] => Family::Random3c { n: *n, extra: 0 },
                [n, extra] => Family::Random3c { n: *n, extra: *extra },
                _ => {
                    return Err(GenError::BadParams {
                        family: "random3c",
                        message: format!("expected n and optional extra-edge count, got {} values", params.len()),
                    })
                }
            },
            other => return Err(GenError::UnknownFamily(other.to_string())),
        };
        family.validate()?;
        Ok(family)
    }

    fn validate(&self) -> Result<(), GenError> {
        let (family, ok, message) = match *self {
            Family::Cycle(n) => ("cycle", n >= 3, "n must be at least 3"),
            Family::Complete(n) => ("complete", n >= 1, "n must be at least 1"),
            Family::Wheel(n) => ("wheel", n >= 4, "n must be at least 4"),
            Family::Prism(k) => ("prism", k >= 3, "k must be at least 3"),
            Family::Petersen => ("petersen", true, ""),
            Family::Path(n) => ("path", n >= 1, "n must be at least 1"),
            Family::Random3c { n, extra } => {
                let room = n * n.saturating_sub(1) / 2 - if n >= 4 { 6 + 3 * (n - 4) } else { 0 };
                if n < 4 {
                    ("random3c", false, "n must be at least 4")
                } else if extra > room {
                    return Err(GenError::BadParams {
                        family: "random3c",
                        message: format!("only {room} non-edges available, {extra} requested"),
                    });
                } else {
                    ("random3c", true, "")
                }
            }
        };
        if ok {
            Ok(())
        } else {
            Err(GenError::BadParams {
                family,
                message: message.to_string(),
            })
        }
    }

    /// Builds the graph. Only `Random3c` consumes `seed`.
    pub fn generate(&self, seed: u64) -> Result<Graph, GenError> {
        self.validate()?;
        let g = match *self {
            Family::Cycle(n) => build(n, (0..n).map(|i| (i, (i + 1) % n))),
            Family::Complete(n) => build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))),
            Family::Wheel(n) => {
                let rim = n - 1;
                build(
                    n,
                    (1..n)
                        .map(|i| (0, i))
                        .chain((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim))),
                )
            }
            Family::Prism(k) => build(
                2 * k,
                (0..k).flat_map(|i| [(i, (i + 1) % k), (k + i, k + (i + 1) % k), (i, k + i)]),
            ),
            Family::Petersen => build(
                10,
                (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]),
            ),
            Family::Path(n) => build(n, (1..n).map(|i| (i - 1, i))),
            Family::Random3c { n, extra } => random_3_connected(n, extra, seed),
        };
        Ok(g)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cycle(n) => write!(f, "cycle{n}"),
            Family::Complete(n) => write!(f, "K{n}"),
            Family::Wheel(n) => write!(f, "W{n}"),
            Family::Prism(k) => write!(f, "prism{k}"),
            Family::Petersen => write!(f, "petersen"),
            Family::Path(n) => write!(f, "path{n}"),
            Family::Random3c { n, extra } => write!(f, "random3c_n{n}_e{extra}"),
        }
    }
}

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("family construction yields a simple graph")
}

/// Name-based entry point: `gen_family("prism", &[4], 0)`.
pub fn gen_family(name: &str, params: &[usize], seed: u64) -> Result<Graph, GenError> {
    Family::parse(name, params)?.generate(seed)
}

fn random_3_connected(n: usize, extra: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    let mut add = |adj: &mut Vec<Vec<bool>>, u: usize, v: usize| {
        adj[u][v] = true;
        adj[v][u] = true;
        edges.push((u, v));
    };
    for u in 0..4 {
        for v in u + 1..4 {
            add(&mut adj, u, v);
        }
    }
    // a new vertex with three neighbors in a 3-connected graph keeps it 3-connected
    for v in 4..n {
        let mut picks = sample(&mut rng, v, 3).into_vec();
        picks.sort_unstable();
        for u in picks {
            add(&mut adj, u, v);
        }
    }
    let mut non_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !adj[u][v])
        .collect();
    for _ in 0..extra {
        let i = rng.gen_range(0..non_edges.len());
        let (u, v) = non_edges.swap_remove(i);
        add(&mut adj, u, v);
    }
    build(n, edges)
}
