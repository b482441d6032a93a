//! Minimal FASTA reader for protein sequences.

use crate::domains::scoring::residue_index;
use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    pub name: String,
    /// Residue letters, upper case.
    pub residues: Vec<u8>,
}

impl Sequence {
    /// Residues as indices into the scoring alphabet.
    pub fn indices(&self) -> Vec<u8> {
        self.residues
            .iter()
            .map(|&r| residue_index(r).expect("validated on load"))
            .collect()
    }
}

/// Parses `>name` records. Every residue must be one of the twenty
/// standard amino acids.
pub fn load_fasta(text: &str) -> Result<Vec<Sequence>, Error> {
    let mut out: Vec<Sequence> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with(';') {
            continue;
        }
        if let Some(name) = line.strip_prefix('>') {
            out.push(Sequence {
                name: name.trim().to_string(),
                residues: Vec::new(),
            });
            continue;
        }
        let seq = out
            .last_mut()
            .ok_or_else(|| Error::parse(ln, "sequence data before the first '>' header"))?;
        for ch in line.chars() {
            if ch.is_whitespace() {
                continue;
            }
            if !ch.is_ascii() || residue_index(ch as u8).is_none() {
                return Err(Error::parse(
                    ln,
                    format!("invalid residue {ch:?} in sequence {:?}", seq.name),
                ));
            }
            seq.residues.push(ch.to_ascii_uppercase() as u8);
        }
    }
    if out.is_empty() {
        return Err(Error::parse(1, "no sequences"));
    }
    Ok(out)
}

pub fn to_fasta(seqs: &[Sequence]) -> String {
    let mut s = String::new();
    for q in seqs {
        s.push('>');
        s.push_str(&q.name);
        s.push('\n');
        for chunk in q.residues.chunks(60) {
            s.push_str(std::str::from_utf8(chunk).expect("ascii residues"));
            s.push('\n');
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_records() {
        let seqs = load_fasta(">a\nACDE\nfgh\n>b desc\n\nWY\n").unwrap();
        assert_eq!(seqs.len(), 2);
        assert_eq!(seqs[0].residues, b"ACDEFGH");
        assert_eq!(seqs[1].name, "b desc");
        assert_eq!(load_fasta(&to_fasta(&seqs)).unwrap(), seqs);
    }

    #[test]
    fn names_bad_character() {
        let err = load_fasta(">a\nACXD\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("'X'"), "{msg}");
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn data_before_header() {
        assert!(matches!(load_fasta("ACD\n"), Err(Error::Parse { line: 1, .. })));
    }
}
