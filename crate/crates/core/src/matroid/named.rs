//! Named matroid instances, with the labellings used in the literature
//! examples they come from.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::Matroid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedMatroid {
    /// Fano plane; ids 0..6 are the points 100, 010, 001, 011, 101, 110, 111.
    Fano,
    /// Affine plane over GF(3); point `3x + y` is `(x, y)`.
    AG23,
    /// Betsy Ross matroid on 11 points: 0 centre, 1..5 star tips, 6..10 inner points.
    BetsyRoss,
    /// Rank-three whirl; element `k` here is element `k + 1` in the usual labelling.
    Whirl3,
    /// `U(3,5)` with one basis turned into a 3-point line (elements 2, 3, 4).
    L23,
    Uniform(usize, usize),
    CycleMatroid(Graph),
    Trampoline(usize),
    BrokenTrampoline(usize),
    /// Four-cycle with one chord, edges a..e = 0..4.
    Example21,
}

impl NamedMatroid {
    pub fn build(&self) -> Result<Matroid> {
        match self {
            NamedMatroid::Fano => {
                let pts: [u8; 7] = [0b100, 0b010, 0b001, 0b011, 0b101, 0b110, 0b111];
                let mut lines = Vec::new();
                for a in 0..7 {
                    for b in a + 1..7 {
                        for c in b + 1..7 {
                            if pts[a] ^ pts[b] ^ pts[c] == 0 {
                                lines.push(vec![a, b, c]);
                            }
                        }
                    }
                }
                Matroid::from_lines(7, &lines)
            }
            NamedMatroid::AG23 => {
                let mut lines = Vec::new();
                for a in 0..9 {
                    for b in a + 1..9 {
                        for c in b + 1..9 {
                            let (xa, ya) = (a / 3, a % 3);
                            let (xb, yb) = (b / 3, b % 3);
                            let (xc, yc) = (c / 3, c % 3);
                            if (xa + xb + xc) % 3 == 0 && (ya + yb + yc) % 3 == 0 {
                                lines.push(vec![a, b, c]);
                            }
                        }
                    }
                }
                Matroid::from_lines(9, &lines)
            }
            NamedMatroid::BetsyRoss => {
                let lines = vec![
                    vec![0, 1, 6],
                    vec![0, 2, 7],
                    vec![0, 3, 8],
                    vec![0, 4, 9],
                    vec![0, 5, 10],
                    vec![1, 3, 9, 10],
                    vec![2, 4, 6, 10],
                    vec![3, 5, 6, 7],
                    vec![1, 4, 7, 8],
                    vec![2, 5, 8, 9],
                ];
                Matroid::from_lines(11, &lines)
            }
            NamedMatroid::Whirl3 => Matroid::from_lines(6, &[vec![0, 1, 2], vec![2, 3, 4], vec![0, 4, 5]]),
            NamedMatroid::L23 => Matroid::from_lines(5, &[vec![2, 3, 4]]),
            NamedMatroid::Uniform(r, n) => Matroid::uniform(*r, *n),
            NamedMatroid::CycleMatroid(g) => Matroid::from_graph(g),
            NamedMatroid::Trampoline(n) => Matroid::from_graph(&Graph::trampoline(*n)?),
            NamedMatroid::BrokenTrampoline(n) => {
                Matroid::from_graph(&Graph::broken_trampoline(*n)?)
            }
            NamedMatroid::Example21 => Matroid::from_graph(&Graph::example21()),
        }
    }

    /// Underlying graph for graphic instances.
    pub fn graph(&self) -> Option<Graph> {
        match self {
            NamedMatroid::CycleMatroid(g) => Some(g.clone()),
            NamedMatroid::Trampoline(n) => Graph::trampoline(*n).ok(),
            NamedMatroid::BrokenTrampoline(n) => Graph::broken_trampoline(*n).ok(),
            NamedMatroid::Example21 => Some(Graph::example21()),
            _ => None,
        }
    }

    /// Instances used by the corpus-wide checks.
    pub fn registry() -> Vec<NamedMatroid> {
        vec![
            NamedMatroid::Fano,
            NamedMatroid::AG23,
            NamedMatroid::BetsyRoss,
            NamedMatroid::Whirl3,
            NamedMatroid::L23,
            NamedMatroid::Example21,
            NamedMatroid::Uniform(2, 3),
            NamedMatroid::Uniform(2, 5),
            NamedMatroid::Uniform(3, 5),
            NamedMatroid::Trampoline(3),
            NamedMatroid::BrokenTrampoline(3),
            NamedMatroid::BrokenTrampoline(4),
        ]
    }
}

impl fmt::Display for NamedMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedMatroid::Fano => write!(f, "fano"),
            NamedMatroid::AG23 => write!(f, "ag23"),
            NamedMatroid::BetsyRoss => write!(f, "betsy-ross"),
            NamedMatroid::Whirl3 => write!(f, "whirl3"),
            NamedMatroid::L23 => write!(f, "l23"),
            NamedMatroid::Uniform(r, n) => write!(f, "u{r}{n}"),
            NamedMatroid::CycleMatroid(g) => write!(f, "graph({} vertices)", g.vertex_count()),
            NamedMatroid::Trampoline(n) => write!(f, "trampoline{n}"),
            NamedMatroid::BrokenTrampoline(n) => write!(f, "broken-trampoline{n}"),
            NamedMatroid::Example21 => write!(f, "example-2-1"),
        }
    }
}

impl FromStr for NamedMatroid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        let named = match s.as_str() {
            "fano" => NamedMatroid::Fano,
            "ag23" | "ag(2,3)" => NamedMatroid::AG23,
            "betsy-ross" | "betsyross" => NamedMatroid::BetsyRoss,
            "whirl3" => NamedMatroid::Whirl3,
            "l23" => NamedMatroid::L23,
            "example-2-1" | "example21" => NamedMatroid::Example21,
            _ => {
                let parse_n = |rest: &str| -> Result<usize> {
                    rest.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("unknown named matroid '{s}'")))
                };
                if let Some(rest) = s.strip_prefix("broken-trampoline") {
                    NamedMatroid::BrokenTrampoline(parse_n(rest)?)
                } else if let Some(rest) = s.strip_prefix("trampoline") {
                    NamedMatroid::Trampoline(parse_n(rest)?)
                } else if let Some(rest) = s.strip_prefix('u') {
                    // u25 or u2,5
                    let (r, n) = match rest.split_once(',') {
                        Some((r, n)) => (parse_n(r)?, parse_n(n)?),
                        None if rest.len() >= 2 => (parse_n(&rest[..1])?, parse_n(&rest[1..])?),
                        None => return Err(Error::Parse(format!("unknown named matroid '{s}'"))),
                    };
                    NamedMatroid::Uniform(r, n)
                } else {
                    return Err(Error::Parse(format!("unknown named matroid '{s}'")));
                }
            }
        };
        Ok(named)
    }
}
