//! JSON documents for automorphisms, products, groups and matrices.
//!
//! Letters are `[index, sign]` pairs, image maps are keyed by the generator
//! index written as a string.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::automorphism::{Automorphism, Endomorphism};
use crate::cosets::{ConjClassRep, DoubleCosetRep, TupleRep};
use crate::error::Error;
use crate::rep::{FiniteGroup, RationalMatrix};
use crate::word::{Generator, Word};

pub type LetterJson = (u32, i64);

pub fn word_to_json(w: &Word) -> Vec<LetterJson> {
    w.to_pairs().into_iter().map(|(i, s)| (i, s as i64)).collect()
}

pub fn word_from_json(letters: &[LetterJson]) -> Result<Word, Error> {
    Word::from_pairs(letters.iter().copied())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismJson {
    pub images: BTreeMap<u32, Vec<LetterJson>>,
    pub inverse_images: BTreeMap<u32, Vec<LetterJson>>,
}

fn endo_to_json(e: &Endomorphism) -> BTreeMap<u32, Vec<LetterJson>> {
    e.images()
        .iter()
        .map(|(g, w)| (g.index(), word_to_json(w)))
        .collect()
}

fn endo_from_json(map: &BTreeMap<u32, Vec<LetterJson>>) -> Result<Endomorphism, Error> {
    let images = map
        .iter()
        .map(|(&i, letters)| Ok((Generator::new(i)?, word_from_json(letters)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Endomorphism::from_images(images))
}

impl From<&Automorphism> for AutomorphismJson {
    fn from(a: &Automorphism) -> Self {
        AutomorphismJson {
            images: endo_to_json(a.fwd()),
            inverse_images: endo_to_json(a.inv()),
        }
    }
}

impl TryFrom<&AutomorphismJson> for Automorphism {
    type Error = Error;

    /// Rejects pairs that are not mutually inverse.
    fn try_from(j: &AutomorphismJson) -> Result<Self, Error> {
        Automorphism::new(endo_from_json(&j.images)?, endo_from_json(&j.inverse_images)?)
    }
}

pub fn automorphism_from_str(s: &str) -> Result<Automorphism, Error> {
    let j: AutomorphismJson = serde_json::from_str(s)?;
    Automorphism::try_from(&j)
}

pub fn automorphism_to_string(a: &Automorphism) -> String {
    serde_json::to_string(&AutomorphismJson::from(a)).expect("serializable")
}

/// `{"m": .., "N": .., "rep": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductJson {
    pub m: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub rep: AutomorphismJson,
}

impl From<&DoubleCosetRep> for ProductJson {
    fn from(p: &DoubleCosetRep) -> Self {
        ProductJson {
            m: p.m,
            n: p.n,
            rep: (&p.rep).into(),
        }
    }
}

impl From<&ConjClassRep> for ProductJson {
    fn from(p: &ConjClassRep) -> Self {
        ProductJson {
            m: p.m,
            n: p.n,
            rep: (&p.rep).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleProductJson {
    pub m: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub reps: Vec<AutomorphismJson>,
}

impl From<&TupleRep> for TupleProductJson {
    fn from(t: &TupleRep) -> Self {
        TupleProductJson {
            m: t.m,
            n: t.n,
            reps: t.reps.iter().map(Into::into).collect(),
        }
    }
}

/// `{"order": n, "mul": [[..]], "unit": 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    pub unit: usize,
}

impl GroupJson {
    pub fn into_group(self, name: &str) -> Result<FiniteGroup, Error> {
        if self.mul.len() != self.order {
            return Err(Error::InvalidGroup(format!(
                "order {} but {} rows",
                self.order,
                self.mul.len()
            )));
        }
        FiniteGroup::from_table(name, self.mul, self.unit)
    }
}

impl From<&FiniteGroup> for GroupJson {
    fn from(k: &FiniteGroup) -> Self {
        GroupJson {
            order: k.order(),
            mul: k.table(),
            unit: k.unit(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub group: String,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<usize>>,
    pub matrix: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn matrix(&self) -> Result<RationalMatrix, Error> {
        RationalMatrix::from_strings(&self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::{nielsen_right_mult, random_automorphism};

    #[test]
    fn automorphism_schema() {
        let a = nielsen_right_mult(1, 2).unwrap();
        let j = AutomorphismJson::from(&a);
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(
            s,
            r#"{"images":{"1":[[1,1],[2,1]]},"inverse_images":{"1":[[1,1],[2,-1]]}}"#
        );
        assert_eq!(automorphism_from_str(&s).unwrap(), a);
    }

    #[test]
    fn numeric_key_order() {
        let a = random_automorphism(0, 12, 40, 3).unwrap();
        let s = automorphism_to_string(&a);
        assert_eq!(automorphism_from_str(&s).unwrap(), a);
        let keys: Vec<u32> = AutomorphismJson::from(&a).images.keys().copied().collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn loader_rejects_bad_documents() {
        let not_inverse = r#"{"images":{"1":[[1,1],[2,1]]},"inverse_images":{"1":[[2,1],[1,1]]}}"#;
        assert!(matches!(automorphism_from_str(not_inverse), Err(Error::NotInverse)));
        let bad_sign = r#"{"images":{"1":[[1,2]]},"inverse_images":{}}"#;
        assert!(matches!(automorphism_from_str(bad_sign), Err(Error::BadSign(2))));
        let zero = r#"{"images":{"0":[[1,1]]},"inverse_images":{}}"#;
        assert!(automorphism_from_str(zero).is_err());
        assert!(matches!(automorphism_from_str("{"), Err(Error::Json(_))));
    }

    #[test]
    fn group_schema() {
        let j: GroupJson = serde_json::from_str(r#"{"order":2,"mul":[[0,1],[1,0]],"unit":0}"#).unwrap();
        let k = j.into_group("file").unwrap();
        assert_eq!(k.order(), 2);
        let bad: GroupJson = serde_json::from_str(r#"{"order":3,"mul":[[0,1],[1,0]],"unit":0}"#).unwrap();
        assert!(bad.into_group("file").is_err());
    }
}
