//! Group input files.
//!
//! JSON schema:
//!
//! ```json
//! { "name": "A4", "kind": "permgens", "gens": ["(1 2 3)", "(1 2)(3 4)"] }
//! { "name": "Z6", "kind": "cayley", "table": [[0,1,...], ...] }
//! { "name": "Qd3", "kind": "construction", "construction": {"family": "qd", "p": 3} }
//! ```
//!
//! Cayley tables must put the identity at index 0. Permutation generators
//! use disjoint-cycle notation with 1-based points.

use serde::{Deserialize, Serialize};

use crate::build::Construction;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub kind: GroupFileKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gens: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupFileKind {
    Cayley,
    Permgens,
    Construction,
}

impl GroupFile {
    pub fn realize(&self) -> Result<Group> {
        match self.kind {
            GroupFileKind::Cayley => {
                let table = self
                    .table
                    .as_ref()
                    .ok_or_else(|| Error::invalid("kind \"cayley\" requires \"table\""))?;
                crate::group::GroupTable::from_rows(self.name.clone(), table.clone(), None, true)
            }
            GroupFileKind::Permgens => {
                let gens = self
                    .gens
                    .as_ref()
                    .ok_or_else(|| Error::invalid("kind \"permgens\" requires \"gens\""))?;
                let degree = perm::max_point(gens)?;
                let perms: Vec<perm::Perm> = gens
                    .iter()
                    .map(|s| perm::parse_cycles(s, degree))
                    .collect::<Result<_>>()?;
                perm::group_from_perms(self.name.clone(), &perms)
            }
            GroupFileKind::Construction => {
                let c = self.construction.as_ref().ok_or_else(|| {
                    Error::invalid("kind \"construction\" requires \"construction\"")
                })?;
                Ok(crate::build::build(c)?.with_name(self.name.clone()))
            }
        }
    }

    /// Serializes a group for later re-ingestion. Constructions keep their
    /// descriptor; everything else is dumped as a Cayley table.
    pub fn snapshot(name: &str, construction: Option<&Construction>, g: &Group) -> GroupFile {
        match construction {
            Some(c) => GroupFile {
                name: name.to_string(),
                kind: GroupFileKind::Construction,
                table: None,
                gens: None,
                construction: Some(c.clone()),
            },
            None => GroupFile {
                name: name.to_string(),
                kind: GroupFileKind::Cayley,
                table: Some(g.mul_rows()),
                gens: None,
                construction: None,
            },
        }
    }
}

pub fn group_from_json(json: &str) -> Result<Group> {
    let file: GroupFile =
        serde_json::from_str(json).map_err(|e| Error::invalid(format!("JSON parse: {e}")))?;
    file.realize()
}
