use crate::partition::VClass;
use serde::Serialize;
use thiserror::Error;

/// How the last block of a path is typed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind4Reading {
    /// Kind 4 only when the last block's tail is empty or a single V4;
    /// other last blocks keep the kind their shape gives them.
    Narrow,
    /// Every last block is Kind 4.
    Broad,
}

/// A maximal run `x` of V2 positions followed by its tail `p` (V5
/// positions dropped). Positions index the path's vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub x: Vec<usize>,
    pub p: Vec<usize>,
    pub kind: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("block at position {position}: tail {tail:?} is neither one V3 nor two V4")]
pub struct BlockError {
    pub position: usize,
    pub tail: Vec<VClass>,
}

pub fn decompose_blocks(classes: &[VClass]) -> Result<Vec<Block>, BlockError> {
    decompose_blocks_with(classes, Kind4Reading::Narrow)
}

/// Scans a class-annotated path from left to right. The end vertices are
/// never part of a block.
pub fn decompose_blocks_with(
    classes: &[VClass],
    reading: Kind4Reading,
) -> Result<Vec<Block>, BlockError> {
    let end = classes.len().saturating_sub(1);
    let mut raw = Vec::new();
    let mut i = 1;
    while i < end && !classes[i].is_v2() {
        i += 1;
    }
    while i < end {
        let mut x = Vec::new();
        while i < end && classes[i].is_v2() {
            x.push(i);
            i += 1;
        }
        let mut p = Vec::new();
        while i < end && !classes[i].is_v2() {
            if classes[i] != VClass::V5 {
                p.push(i);
            }
            i += 1;
        }
        raw.push((x, p));
    }
    let m = raw.len();
    let mut out = Vec::with_capacity(m);
    for (k, (x, p)) in raw.into_iter().enumerate() {
        let last = k + 1 == m;
        let tail: Vec<VClass> = p.iter().map(|&j| classes[j]).collect();
        let shaped = match (x.len(), tail.as_slice()) {
            (1, [VClass::V3]) => Some(1),
            (1, [VClass::V4, VClass::V4]) => Some(2),
            (k, t) if k > 1 && !t.is_empty() => Some(3),
            _ => None,
        };
        let structural = matches!(tail.as_slice(), [VClass::V3] | [VClass::V4, VClass::V4]);
        if !last && !structural {
            return Err(BlockError {
                position: x[0],
                tail,
            });
        }
        let short_tail = matches!(tail.as_slice(), [] | [VClass::V4]);
        let kind = match (last, reading) {
            (true, Kind4Reading::Broad) => 4,
            (true, Kind4Reading::Narrow) if short_tail => 4,
            _ => match shaped {
                Some(kind) => kind,
                None => {
                    return Err(BlockError {
                        position: x[0],
                        tail,
                    })
                }
            },
        };
        out.push(Block { x, p, kind });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use VClass::*;

    #[test]
    fn mixed_sequence() {
        let b = decompose_blocks(&[V1, V2a, V3, V2a, V4, V4, V2a, V5, V4, V1]).unwrap();
        assert_eq!(
            b,
            vec![
                Block {
                    x: vec![1],
                    p: vec![2],
                    kind: 1
                },
                Block {
                    x: vec![3],
                    p: vec![4, 5],
                    kind: 2
                },
                Block {
                    x: vec![6],
                    p: vec![8],
                    kind: 4
                },
            ]
        );
    }

    #[test]
    fn no_v2_no_blocks() {
        assert!(decompose_blocks(&[V1, V5, V5, V1]).unwrap().is_empty());
        assert!(decompose_blocks(&[V1, V1]).unwrap().is_empty());
    }

    #[test]
    fn long_run_is_kind_three() {
        let b = decompose_blocks(&[V1, V2b, V2b, V3, V1]).unwrap();
        assert_eq!(
            b,
            vec![Block {
                x: vec![1, 2],
                p: vec![3],
                kind: 3
            }]
        );
    }

    #[test]
    fn readings_differ_on_shaped_last_blocks() {
        let seq = [V1, V2a, V4, V4, V1];
        assert_eq!(decompose_blocks(&seq).unwrap()[0].kind, 2);
        assert_eq!(
            decompose_blocks_with(&seq, Kind4Reading::Broad).unwrap()[0].kind,
            4
        );
    }

    #[test]
    fn malformed_middle_tail() {
        let e = decompose_blocks(&[V1, V2a, V4, V2a, V1]).unwrap_err();
        assert_eq!(
            e,
            BlockError {
                position: 1,
                tail: vec![V4]
            }
        );
    }
}
