//! On-disk JSON cache of built irreps.
//!
//! File `irrep_<group>_<labels>.json` holds
//! `{group, hw, dim, weight_labels, generators: {label: [[re, im], ...]}}`
//! with generator matrices flattened row-major. Writes go to a temporary
//! file in the same directory followed by a rename.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use super::{build_irrep, HighestWeight, Irrep};
use crate::error::{Error, Result};
use crate::lie::GroupId;
use crate::linalg::{from_row_major_pairs, row_major_pairs};

#[derive(Serialize, Deserialize)]
struct IrrepFile {
    group: GroupId,
    hw: Vec<u32>,
    dim: usize,
    weight_labels: Vec<Vec<i64>>,
    generators: BTreeMap<String, Vec<[f64; 2]>>,
}

impl Irrep {
    pub fn to_json(&self) -> Result<String> {
        let file = IrrepFile {
            group: self.group(),
            hw: self.hw.labels(),
            dim: self.dim,
            weight_labels: self.weight_labels.clone(),
            generators: self.generators.iter().map(|(k, m)| (k.clone(), row_major_pairs(m))).collect(),
        };
        Ok(serde_json::to_string(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: IrrepFile = serde_json::from_str(text)?;
        let labels: Vec<i64> = file.hw.iter().map(|&x| x as i64).collect();
        let hw = HighestWeight::from_labels(file.group, &labels)?;
        let generators = file
            .generators
            .iter()
            .map(|(k, pairs)| Ok((k.clone(), from_row_major_pairs(file.dim, pairs)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let irrep = Irrep { hw, dim: file.dim, generators, weight_labels: file.weight_labels };
        irrep.validate()?;
        Ok(irrep)
    }
}

#[derive(Debug, Clone)]
pub struct IrrepCache {
    dir: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl IrrepCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        IrrepCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn file_name(hw: HighestWeight) -> String {
        let labels: Vec<String> = hw.labels().iter().map(|l| l.to_string()).collect();
        format!("irrep_{}_{}.json", hw.group(), labels.join("_"))
    }

    pub fn path(&self, hw: HighestWeight) -> PathBuf {
        self.dir.join(Self::file_name(hw))
    }

    /// Loads a cached irrep; a missing file is `Ok(None)`.
    pub fn load(&self, hw: HighestWeight) -> Result<Option<Irrep>> {
        let path = self.path(hw);
        match fs::read_to_string(&path) {
            Ok(text) => {
                let irrep = Irrep::from_json(&text)?;
                if irrep.hw != hw {
                    return Err(Error::Consistency(format!(
                        "{} holds {} instead of {hw}",
                        path.display(),
                        irrep.hw
                    )));
                }
                Ok(Some(irrep))
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    pub fn store(&self, irrep: &Irrep) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let target = self.path(irrep.hw);
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            Self::file_name(irrep.hw),
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(irrep.to_json()?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &target)?;
        Ok(target)
    }

    /// Returns the cached irrep, building and storing it on a miss.
    pub fn get_or_build(&self, hw: HighestWeight) -> Result<Irrep> {
        if let Some(irrep) = self.load(hw)? {
            return Ok(irrep);
        }
        let irrep = build_irrep(hw)?;
        self.store(&irrep)?;
        Ok(irrep)
    }
}
