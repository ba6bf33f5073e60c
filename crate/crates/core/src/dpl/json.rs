use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Component, DiagonalPeriodic, DplUnion};
use crate::error::{Error, Result};
use crate::parikh::Alphabet;
use crate::{Count, Progression};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnionJson {
    alphabet: Vec<String>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    fixed: BTreeMap<String, Count>,
    progs: BTreeMap<String, ProgJson>,
    support: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProgJson {
    k: Count,
    p: Count,
}

fn single_letter(s: &str, alphabet: &Alphabet) -> Result<usize> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => alphabet.try_index(c),
        _ => Err(Error::Format(format!("expected a single letter, got {s:?}"))),
    }
}

impl DplUnion {
    pub fn to_json_value(&self) -> serde_json::Value {
        let letter = |i: usize| self.alphabet.letter(i).to_string();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut fixed = BTreeMap::new();
                let mut progs = BTreeMap::new();
                for (i, c) in t.components().iter().enumerate() {
                    match c {
                        Component::Fixed(0) => {}
                        Component::Fixed(n) => {
                            fixed.insert(letter(i), *n);
                        }
                        Component::Periodic(p) => {
                            progs.insert(letter(i), ProgJson { k: p.offset(), p: p.period() });
                        }
                    }
                }
                TermJson { fixed, progs, support: t.support().iter().map(letter).collect() }
            })
            .collect();
        let doc = UnionJson { alphabet: self.alphabet.letters().iter().map(char::to_string).collect(), terms };
        serde_json::to_value(doc).expect("plain data serializes")
    }

    /// Canonical JSON: sorted keys, terms in normal-form order.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("plain data serializes")
    }

    pub fn from_json_str(s: &str) -> Result<DplUnion> {
        let doc: UnionJson =
            serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_json_doc(doc)
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<DplUnion> {
        let doc: UnionJson =
            serde_json::from_value(v).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_json_doc(doc)
    }

    fn from_json_doc(doc: UnionJson) -> Result<DplUnion> {
        let mut letters = Vec::with_capacity(doc.alphabet.len());
        for s in &doc.alphabet {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => letters.push(c),
                _ => return Err(Error::Format(format!("expected a single letter, got {s:?}"))),
            }
        }
        let alphabet = Alphabet::new(letters)?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in doc.terms {
            let mut components = vec![Component::Fixed(0); alphabet.len()];
            for (s, n) in &t.fixed {
                components[single_letter(s, &alphabet)?] = Component::Fixed(*n);
            }
            for (s, p) in &t.progs {
                let i = single_letter(s, &alphabet)?;
                if components[i] != Component::Fixed(0) {
                    return Err(Error::Format(format!("letter {s} is both fixed and periodic")));
                }
                components[i] = Component::Periodic(Progression::new(p.k, p.p).ok_or(Error::ZeroModulus)?);
            }
            let term = DiagonalPeriodic::new(components);
            let mut declared = Vec::with_capacity(t.support.len());
            for s in &t.support {
                declared.push(single_letter(s, &alphabet)?);
            }
            declared.sort_unstable();
            if declared != term.support().iter().collect::<Vec<_>>() {
                return Err(Error::Format("support does not match progs".to_string()));
            }
            terms.push(term);
        }
        DplUnion::new(alphabet, terms)
    }
}
