//! Permutations of `[r]` with cycle utilities.
//!
//! The twin-gadget instances hide a uniform random permutation whose longest
//! cycle controls the longest path of the generated graph, so cycle
//! extraction is the reference the generators are tested against.

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

/// A proposed image table that is not a bijection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image {img} out of range for {r} elements")]
    ImageOutOfRange { img: usize, r: usize },
    #[error("image {img} repeated; not a bijection")]
    RepeatedImage { img: usize },
}

/// A bijection on `{0, 1, …, r−1}`, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// The identity on `r` elements.
    pub fn identity(r: usize) -> Permutation {
        Permutation {
            map: (0..r).collect(),
        }
    }

    /// Build from an image table, verifying bijectivity.
    pub fn from_vec(map: Vec<usize>) -> Result<Permutation, PermError> {
        let r = map.len();
        let mut seen = vec![false; r];
        for &img in &map {
            if img >= r {
                return Err(PermError::ImageOutOfRange { img, r });
            }
            if seen[img] {
                return Err(PermError::RepeatedImage { img });
            }
            seen[img] = true;
        }
        Ok(Permutation { map })
    }

    /// A uniform random permutation (Fisher–Yates).
    pub fn uniform(r: usize, rng: &mut impl Rng) -> Permutation {
        let mut map: Vec<usize> = (0..r).collect();
        map.shuffle(rng);
        Permutation { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// σ(i).
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// The image table.
    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// σ⁻¹.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &img) in self.map.iter().enumerate() {
            inv[img] = i;
        }
        Permutation { map: inv }
    }

    /// Cycle decomposition; each cycle starts at its smallest element and
    /// cycles are ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let r = self.map.len();
        let mut seen = vec![false; r];
        let mut cycles = Vec::new();
        for start in 0..r {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.map[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.map[cur];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// All `r!` permutations in lexicographic order of their image tables.
    /// Intended for exhaustive tests; keep `r` small.
    pub fn enumerate_all(r: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut map: Vec<usize> = (0..r).collect();
        loop {
            out.push(Permutation { map: map.clone() });
            // Next lexicographic permutation, or stop after the last one.
            let Some(i) = (0..map.len().saturating_sub(1))
                .rev()
                .find(|&i| map[i] < map[i + 1])
            else {
                break;
            };
            let j = (i + 1..map.len()).rev().find(|&j| map[j] > map[i]).unwrap();
            map.swap(i, j);
            map[i + 1..].reverse();
        }
        out
    }
}

/// Length of a longest cycle of σ (0 for the empty permutation).
pub fn longest_cycle(sigma: &Permutation) -> usize {
    sigma.cycles().iter().map(Vec::len).max().unwrap_or(0)
}
