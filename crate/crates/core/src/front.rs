//! Pareto fronts and the solution file format.
//!
//! ```text
//! c <k> solutions
//! s <c1> <c2>
//! p <v1> <v2> ... <vn>      (only with paths; 1-based ids)
//! ```

use std::io::{BufRead, Write};

use crate::cost::CostPair;
use crate::error::{Error, Result};
use crate::graph::StateId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontEntry {
    pub cost: CostPair,
    /// Start-to-goal state sequence, when reconstructed.
    pub path: Option<Vec<StateId>>,
}

/// Cost-unique non-dominated solutions sorted by increasing `c1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParetoFront {
    pub entries: Vec<FrontEntry>,
}

impl ParetoFront {
    pub fn from_costs(costs: impl IntoIterator<Item = CostPair>) -> Self {
        ParetoFront { entries: costs.into_iter().map(|cost| FrontEntry { cost, path: None }).collect() }
    }

    pub fn costs(&self) -> Vec<CostPair> {
        self.entries.iter().map(|e| e.cost).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Strictly increasing `c1` and strictly decreasing `c2`.
    pub fn is_well_formed(&self) -> bool {
        is_strict_front(&self.costs())
    }

    pub fn write<W: Write>(&self, mut out: W, with_paths: bool) -> Result<()> {
        writeln!(out, "c {} solutions", self.entries.len())?;
        for e in &self.entries {
            writeln!(out, "s {} {}", e.cost.c1, e.cost.c2)?;
            if with_paths {
                if let Some(path) = &e.path {
                    write!(out, "p")?;
                    for s in path {
                        write!(out, " {}", s + 1)?;
                    }
                    writeln!(out)?;
                }
            }
        }
        Ok(())
    }

    pub fn parse<R: BufRead>(reader: R) -> Result<ParetoFront> {
        let mut declared = None;
        let mut entries: Vec<FrontEntry> = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let bad = |msg: &str| Error::Parse { line: lineno, message: msg.to_string() };
            let mut fields = line.split_ascii_whitespace();
            match fields.next() {
                None => {}
                Some("c") => {
                    if let (Some(k), Some("solutions")) = (fields.next(), fields.next()) {
                        declared = Some(k.parse::<usize>().map_err(|_| bad("invalid solution count"))?);
                    }
                }
                Some("s") => {
                    let mut num = || -> Result<u64> {
                        fields.next().and_then(|f| f.parse().ok()).ok_or_else(|| bad("expected `s <c1> <c2>`"))
                    };
                    let cost = CostPair::new(num()?, num()?);
                    entries.push(FrontEntry { cost, path: None });
                }
                Some("p") => {
                    let last = entries.last_mut().ok_or_else(|| bad("path line before any solution"))?;
                    let path = fields
                        .map(|f| match f.parse::<u64>() {
                            Ok(id) if id >= 1 => Ok((id - 1) as StateId),
                            _ => Err(bad("invalid state id in path")),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    last.path = Some(path);
                }
                Some(other) => return Err(bad(&format!("unknown line tag `{other}`"))),
            }
        }
        if let Some(k) = declared {
            if k != entries.len() {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("header declares {k} solutions, found {}", entries.len()),
                });
            }
        }
        Ok(ParetoFront { entries })
    }
}

pub fn is_strict_front(costs: &[CostPair]) -> bool {
    costs.windows(2).all(|w| w[0].c1 < w[1].c1 && w[0].c2 > w[1].c2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn writes_expected_text() {
        let front = ParetoFront {
            entries: vec![
                FrontEntry { cost: CostPair::new(4, 6), path: Some(vec![0, 1, 2, 4]) },
                FrontEntry { cost: CostPair::new(7, 3), path: Some(vec![0, 3, 2, 4]) },
            ],
        };
        let mut out = Vec::new();
        front.write(&mut out, true).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "c 2 solutions\ns 4 6\np 1 2 3 5\ns 7 3\np 1 4 3 5\n");
        let mut out = Vec::new();
        front.write(&mut out, false).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "c 2 solutions\ns 4 6\ns 7 3\n");
    }

    #[test]
    fn empty_front() {
        let mut out = Vec::new();
        ParetoFront::default().write(&mut out, true).unwrap();
        assert_eq!(out, b"c 0 solutions\n");
    }

    #[test]
    fn rejects_count_mismatch() {
        assert!(ParetoFront::parse("c 2 solutions\ns 1 2\n".as_bytes()).is_err());
        assert!(ParetoFront::parse("p 1 2\n".as_bytes()).is_err());
    }

    proptest! {
        #[test]
        fn file_round_trip(raw in prop::collection::vec((0u64..1000, 0u64..1000, prop::collection::vec(0u32..100, 1..6)), 0..8), paths in any::<bool>()) {
            let front = ParetoFront {
                entries: raw.into_iter().map(|(a, b, p)| FrontEntry {
                    cost: CostPair::new(a, b),
                    path: paths.then_some(p),
                }).collect(),
            };
            let mut out = Vec::new();
            front.write(&mut out, true).unwrap();
            prop_assert_eq!(ParetoFront::parse(out.as_slice()).unwrap(), front);
        }
    }
}
