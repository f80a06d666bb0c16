//! Colorings for ears: paths hung between two distinct vertices of H.
//!
//! A path of `L` edges gets `⌈(L-1)/2⌉` fresh colors. The first half uses
//! them in order and the second half repeats the same order; for odd `L`
//! the single middle edge takes the reuse color instead. Every internal
//! vertex then reaches one end of the ear using only fresh colors, and any
//! two internal vertices are joined either along the ear or around through
//! H, where only old colors appear.

use thiserror::Error;

use super::ColorSlot;
use crate::rainbow::Color;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("an ear extension needs s + t >= 3, got s = {s}, t = {t}")]
pub struct EarError {
    pub s: usize,
    pub t: usize,
}

/// Slots for a path of `len` edges, `len >= 2`.
pub fn ear_slots(len: usize) -> Vec<ColorSlot> {
    assert!(len >= 2, "an ear has at least two edges");
    let half = len / 2;
    let fresh = (1..=half as u32).map(ColorSlot::Fresh);
    if len.is_multiple_of(2) {
        fresh.clone().chain(fresh).collect()
    } else {
        fresh
            .clone()
            .chain(std::iter::once(ColorSlot::Reuse))
            .chain(fresh)
            .collect()
    }
}

/// Colors for the `s + t + 2` edges of `a u1..us x v1..vt b` and for the
/// extra edge `e0`, with fresh colors numbered from `next_new`.
pub fn ear_color_sequence(s: usize, t: usize, next_new: Color, reuse: Color) -> Result<(Vec<Color>, Color), EarError> {
    if s + t < 3 {
        return Err(EarError { s, t });
    }
    let colors = ear_slots(s + t + 2)
        .into_iter()
        .map(|slot| match slot {
            ColorSlot::Fresh(i) => next_new + i - 1,
            ColorSlot::Reuse => reuse,
        })
        .collect();
    Ok((colors, reuse))
}

/// Fresh colors spent on an ear with `internal` vertices.
pub fn ear_fresh_colors(internal: usize) -> u32 {
    internal.div_ceil(2) as u32
}
