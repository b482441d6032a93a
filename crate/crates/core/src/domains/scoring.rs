//! Substitution costs and gap cost for protein alignment.

use crate::error::Error;

/// The twenty standard amino acids, in matrix order.
pub const AMINO_ACIDS: &[u8; 20] = b"ARNDCQEGHILKMFPSTWYV";

const PAM250: &str = include_str!("../../data/pam250.txt");

/// Index of an amino-acid letter (either case) in [`AMINO_ACIDS`].
pub fn residue_index(c: u8) -> Option<u8> {
    let c = c.to_ascii_uppercase();
    AMINO_ACIDS.iter().position(|&a| a == c).map(|i| i as u8)
}

/// Sum-of-pairs column costs: a substitution cost for two residues, a gap
/// cost for a residue against a gap, and zero for two gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoringScheme {
    sub: [[u32; 20]; 20],
    gap: u32,
    /// Similarity-to-cost offset the matrix was converted with.
    offset: i32,
}

impl ScoringScheme {
    /// PAM-250 with `cost = 17 - score` and a gap cost of 8.
    pub fn pam250() -> ScoringScheme {
        ScoringScheme::parse(PAM250).expect("bundled PAM-250 file is valid")
    }

    /// Parses a scheme file: `offset C` and `gap G` lines, an alphabet row,
    /// then one row of similarity scores per residue. Costs are `C - score`.
    pub fn parse(text: &str) -> Result<ScoringScheme, Error> {
        let mut offset = None;
        let mut gap = None;
        let mut columns: Option<Vec<u8>> = None;
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut toks = line.split_whitespace();
            let first = toks.next().unwrap();
            let int = |tok: Option<&str>| -> Result<i32, Error> {
                let tok = tok.ok_or_else(|| Error::parse(ln, "missing value"))?;
                tok.parse()
                    .map_err(|_| Error::parse(ln, format!("bad integer {tok:?}")))
            };
            match first {
                "offset" => offset = Some(int(toks.next())?),
                "gap" => {
                    let g = int(toks.next())?;
                    if g < 0 {
                        return Err(Error::parse(ln, "gap cost must be nonnegative"));
                    }
                    gap = Some(g as u32);
                }
                _ if columns.is_none() => {
                    let cols: Vec<u8> = line
                        .split_whitespace()
                        .map(|t| {
                            let b = t.as_bytes();
                            (b.len() == 1)
                                .then(|| residue_index(b[0]))
                                .flatten()
                                .ok_or_else(|| Error::parse(ln, format!("bad residue {t:?}")))
                        })
                        .collect::<Result<_, _>>()?;
                    columns = Some(cols);
                }
                _ => {
                    let b = first.as_bytes();
                    let r = (b.len() == 1)
                        .then(|| residue_index(b[0]))
                        .flatten()
                        .ok_or_else(|| Error::parse(ln, format!("bad residue {first:?}")))?;
                    let scores: Vec<i32> = toks.map(|t| int(Some(t))).collect::<Result<_, _>>()?;
                    rows.push((ln, r, scores));
                }
            }
        }
        let offset = offset.ok_or_else(|| Error::Validation("scheme has no offset line".into()))?;
        let gap = gap.ok_or_else(|| Error::Validation("scheme has no gap line".into()))?;
        let columns = columns.ok_or_else(|| Error::Validation("scheme has no alphabet row".into()))?;
        if columns.len() != 20 || rows.len() != 20 {
            return Err(Error::Validation("matrix must be 20×20".into()));
        }
        let mut score = [[None::<i32>; 20]; 20];
        for (ln, r, scores) in rows {
            if scores.len() != 20 {
                return Err(Error::parse(ln, "row must have 20 scores"));
            }
            for (c, s) in columns.iter().zip(scores) {
                score[r as usize][*c as usize] = Some(s);
            }
        }
        let mut sub = [[0u32; 20]; 20];
        for a in 0..20 {
            for b in 0..20 {
                let s = score[a][b]
                    .ok_or_else(|| Error::Validation("matrix has missing entries".into()))?;
                if score[b][a] != Some(s) {
                    return Err(Error::Validation("matrix is not symmetric".into()));
                }
                let cost = offset - s;
                if cost < 0 {
                    return Err(Error::Validation(format!(
                        "offset {offset} leaves a negative cost"
                    )));
                }
                sub[a][b] = cost as u32;
            }
        }
        Ok(ScoringScheme { sub, gap, offset })
    }

    pub fn with_gap(mut self, gap: u32) -> ScoringScheme {
        self.gap = gap;
        self
    }

    /// Cost of aligning residues with indices `a` and `b`.
    pub fn substitution(&self, a: u8, b: u8) -> u32 {
        self.sub[a as usize][b as usize]
    }

    pub fn gap(&self) -> u32 {
        self.gap
    }

    pub fn offset(&self) -> i32 {
        self.offset
    }
}
