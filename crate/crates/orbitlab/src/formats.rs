//! JSON file formats.
//!
//! | object            | shape                                           |
//! |-------------------|-------------------------------------------------|
//! | partial injection | `{"n": N, "pairs": [[a, b], ...]}` sorted by `a`  |
//! | permutation       | `{"n": N, "images": [...]}`                     |
//! | partition         | `{"n": N, "classes": [[...], ...]}` sorted      |
//! | graphing          | `{"n": N, "maps": [<partial injection>, ...]}`  |
//! | pre-p-cycle       | same as a graphing; map order is significant    |
//! | generator list    | `[<permutation>, ...]`                          |
//! | certificate       | `{"in_full_group", "generated_order", "full_group_order", "generates"}` |

use std::fs;
use std::path::Path;

use orbitlab_core::cycles::{validate_precycle, PrePCycle};
use orbitlab_core::group::GenerationCertificate;
use orbitlab_core::{Graphing, PartialInjection, Partition, Permutation};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}: malformed JSON at `{field}`: {message}")]
    Json {
        origin: String,
        field: String,
        message: String,
    },
    #[error("{origin}: invalid `{field}`: {source}")]
    Invalid {
        origin: String,
        field: String,
        #[source]
        source: orbitlab_core::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialInjectionJson {
    pub n: usize,
    pub pairs: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationJson {
    pub n: usize,
    pub images: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionJson {
    pub n: usize,
    pub classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphingJson {
    pub n: usize,
    pub maps: Vec<PartialInjectionJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub in_full_group: bool,
    pub generated_order: String,
    pub full_group_order: String,
    pub generates: bool,
}

impl From<&PartialInjection> for PartialInjectionJson {
    fn from(phi: &PartialInjection) -> Self {
        PartialInjectionJson {
            n: phi.space_size(),
            pairs: phi.pairs().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl From<&Permutation> for PermutationJson {
    fn from(t: &Permutation) -> Self {
        PermutationJson {
            n: t.degree(),
            images: t.images().to_vec(),
        }
    }
}

impl From<&Partition> for PartitionJson {
    fn from(r: &Partition) -> Self {
        PartitionJson {
            n: r.space_size(),
            classes: r.classes(),
        }
    }
}

impl From<&Graphing> for GraphingJson {
    fn from(g: &Graphing) -> Self {
        GraphingJson {
            n: g.space_size(),
            maps: g.maps().iter().map(Into::into).collect(),
        }
    }
}

impl From<&PrePCycle> for GraphingJson {
    fn from(c: &PrePCycle) -> Self {
        GraphingJson {
            n: c.space_size(),
            maps: c.maps().iter().map(Into::into).collect(),
        }
    }
}

impl From<&GenerationCertificate> for CertificateJson {
    fn from(c: &GenerationCertificate) -> Self {
        CertificateJson {
            in_full_group: c.in_full_group,
            generated_order: c.generated_order.to_string(),
            full_group_order: c.full_group_order.to_string(),
            generates: c.generates,
        }
    }
}

fn invalid(
    origin: &str,
    field: impl Into<String>,
    err: impl Into<orbitlab_core::Error>,
) -> FormatError {
    FormatError::Invalid {
        origin: origin.to_owned(),
        field: field.into(),
        source: err.into(),
    }
}

impl PartialInjectionJson {
    pub fn to_core(&self, origin: &str, field: &str) -> Result<PartialInjection, FormatError> {
        let pairs = self.pairs.iter().map(|&[a, b]| (a, b)).collect();
        PartialInjection::new(self.n, pairs)
            .map_err(|e| invalid(origin, format!("{field}pairs"), e))
    }
}

impl PermutationJson {
    pub fn to_core(&self, origin: &str, field: &str) -> Result<Permutation, FormatError> {
        if self.images.len() != self.n {
            let err = orbitlab_core::space::SpaceError::SizeMismatch {
                left: self.n,
                right: self.images.len(),
            };
            return Err(invalid(origin, format!("{field}images"), err));
        }
        Permutation::from_images(self.images.clone())
            .map_err(|e| invalid(origin, format!("{field}images"), e))
    }
}

impl PartitionJson {
    pub fn to_core(&self, origin: &str) -> Result<Partition, FormatError> {
        Partition::from_classes(self.n, &self.classes).map_err(|e| invalid(origin, "classes", e))
    }
}

impl GraphingJson {
    pub fn to_core(&self, origin: &str) -> Result<Graphing, FormatError> {
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let field = format!("maps[{i}].");
                let map = m.to_core(origin, &field)?;
                if map.space_size() != self.n {
                    let err = orbitlab_core::space::SpaceError::SizeMismatch {
                        left: self.n,
                        right: m.n,
                    };
                    return Err(invalid(origin, format!("{field}n"), err));
                }
                Ok(map)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Graphing::new(self.n, maps).map_err(|e| invalid(origin, "n", e))
    }

    pub fn to_precycle(&self, origin: &str) -> Result<PrePCycle, FormatError> {
        let graphing = self.to_core(origin)?;
        validate_precycle(&graphing).map_err(|e| invalid(origin, "maps", e))
    }
}

/// Parses a JSON document, naming the offending field on failure.
pub fn parse<T: DeserializeOwned>(origin: &str, text: &str) -> Result<T, FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        FormatError::Json {
            origin: origin.to_owned(),
            field,
            message: e.into_inner().to_string(),
        }
    })
}

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    let origin = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: origin.clone(),
        source,
    })?;
    parse(&origin, &text)
}

pub fn read_partition(path: &Path) -> Result<Partition, FormatError> {
    read::<PartitionJson>(path)?.to_core(&path.display().to_string())
}

pub fn read_graphing(path: &Path) -> Result<Graphing, FormatError> {
    read::<GraphingJson>(path)?.to_core(&path.display().to_string())
}

pub fn read_precycle(path: &Path) -> Result<PrePCycle, FormatError> {
    read::<GraphingJson>(path)?.to_precycle(&path.display().to_string())
}

pub fn read_permutation(path: &Path) -> Result<Permutation, FormatError> {
    read::<PermutationJson>(path)?.to_core(&path.display().to_string(), "")
}

pub fn read_generators(path: &Path) -> Result<Vec<Permutation>, FormatError> {
    let origin = path.display().to_string();
    read::<Vec<PermutationJson>>(path)?
        .iter()
        .enumerate()
        .map(|(i, p)| p.to_core(&origin, &format!("[{i}].")))
        .collect()
}
