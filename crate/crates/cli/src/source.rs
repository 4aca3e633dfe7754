//! Resolving the group argument: the builtin `h3` or a JSON file of
//! generator matrices.

use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use polyreal_core::cgroups::{self, LabelledClass};
use polyreal_core::groups::{FiniteGroup, DEFAULT_ORDER_BOUND};
use polyreal_core::wythoff::{builtin_representation, Representation, BUILTIN_REPRESENTATIONS};
use polyreal_core::{h3, Execution, Mat3, QSqrt5};

pub struct GroupSource {
    pub name: String,
    pub builtin: bool,
    pub matrices: Vec<Mat3>,
    pub group: Arc<FiniteGroup>,
    pub classes: Vec<LabelledClass>,
}

/// Generator matrices as rows of exact `p/q+r/s*sqrt5` strings.
pub fn read_matrices(path: &Path) -> Result<Vec<Mat3>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let rows: Vec<[[QSqrt5; 3]; 3]> =
        serde_json::from_str(&text).with_context(|| format!("{} is not a list of 3x3 matrices", path.display()))?;
    if rows.is_empty() {
        bail!("{} lists no generators", path.display());
    }
    Ok(rows.into_iter().map(Mat3::from_rows).collect())
}

/// Generators that fail the involution relation, by index.
pub fn broken_involutions(matrices: &[Mat3]) -> Vec<usize> {
    (0..matrices.len()).filter(|&k| matrices[k].mul(&matrices[k]) != Mat3::identity()).collect()
}

pub fn load(group_arg: &str, mode: Execution) -> Result<GroupSource> {
    if group_arg == "h3" {
        return Ok(GroupSource {
            name: "h3".into(),
            builtin: true,
            matrices: builtin_representation("phi1")?.generator_images().to_vec(),
            group: h3::group(),
            classes: h3::classes(),
        });
    }
    let path = Path::new(group_arg);
    if !path.exists() {
        bail!("unknown group {group_arg:?}: expected `h3` or a generator-matrix JSON file");
    }
    let matrices = read_matrices(path)?;
    let names: Vec<String> = (0..matrices.len()).map(|i| format!("g{i}")).collect();
    let group = Arc::new(
        FiniteGroup::generate(&matrices, &names, DEFAULT_ORDER_BOUND)
            .with_context(|| format!("generating the group of {}", path.display()))?,
    );
    let found = cgroups::enumerate_string_cgroups_with(&group, mode);
    let mut classes = cgroups::assign_labels(found, &[]);
    classes.sort_by(cgroups::compare_labelled);
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("group").to_string();
    Ok(GroupSource { name, builtin: false, matrices, group, classes })
}

impl GroupSource {
    /// Representation names meaningful for this group, in column order.
    pub fn representation_names(&self) -> Vec<String> {
        if self.builtin {
            BUILTIN_REPRESENTATIONS.iter().map(|s| s.to_string()).collect()
        } else {
            vec!["native".into()]
        }
    }

    /// `native` is the group's own matrices; for `h3` that is `phi1`.
    pub fn representation(&self, name: &str) -> Result<Representation> {
        match name {
            "native" if self.builtin => Ok(builtin_representation("phi1")?),
            "native" => Ok(Representation::new("native", self.matrices.clone())),
            _ => Ok(builtin_representation(name)?),
        }
    }

    pub fn resolve(&self, selector: &str) -> Result<&LabelledClass> {
        let sel: cgroups::Selector = selector.parse()?;
        Ok(sel.resolve(&self.classes)?)
    }
}
