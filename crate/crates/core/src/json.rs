//! JSON input documents and their resolution into validated objects.
//!
//! CM types are given by coset representatives: any element of a coset names
//! that coset. Resolution errors carry the path of the offending field.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cmtype::{self, CMFactor, CMType, CosetSpace};
use crate::error::Error;
use crate::groups::{self, CentralInvolution, FiniteGroup, GroupSpec, Subgroup};
use crate::mtgroup::PairInput;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldError {
    pub field: String,
    pub error: Error,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "field `{}`: {}", self.field, self.error)
    }
}

impl std::error::Error for FieldError {}

fn at(field: impl Into<String>) -> impl FnOnce(Error) -> FieldError {
    let field = field.into();
    move |error| FieldError { field, error }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorJson {
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    pub phi: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub group: GroupSpec,
    pub rho: usize,
    pub factor1: FactorJson,
    pub factor2: FactorJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CMTypeJson {
    pub group: GroupSpec,
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    pub phi: Vec<usize>,
    pub rho: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchJson {
    pub group: GroupSpec,
    pub rho: usize,
    #[serde(rename = "H1")]
    pub h1: Vec<usize>,
    #[serde(rename = "H2")]
    pub h2: Vec<usize>,
}

pub fn resolve_group(spec: &GroupSpec) -> Result<Arc<FiniteGroup>, FieldError> {
    groups::make_group(spec).map(Arc::new).map_err(at("group"))
}

pub fn resolve_rho(group: &FiniteGroup, rho: usize) -> Result<CentralInvolution, FieldError> {
    CentralInvolution::new(group, rho).map_err(at("rho"))
}

/// Subgroup not containing `ρ`; a subgroup containing `ρ` is reported against `rho`.
pub fn resolve_subgroup(
    group: &FiniteGroup,
    elems: &[usize],
    rho: CentralInvolution,
    field: &str,
) -> Result<Subgroup, FieldError> {
    let sub = Subgroup::new(group, elems).map_err(at(field))?;
    if sub.contains(rho.elem()) {
        return Err(FieldError {
            field: "rho".into(),
            error: Error::RhoInSubgroup(rho.elem()),
        });
    }
    Ok(sub)
}

pub fn resolve_phi(
    space: &Arc<CosetSpace>,
    reps: &[usize],
    rho: CentralInvolution,
    field: &str,
) -> Result<CMType, FieldError> {
    let group = space.group();
    let mut cosets = Vec::with_capacity(reps.len());
    for &r in reps {
        group.check_element(r).map_err(at(field))?;
        let c = space.coset_of(r);
        if cosets.contains(&c) {
            return Err(FieldError {
                field: field.into(),
                error: Error::NotACMType(format!(
                    "element {} names coset {} a second time",
                    group.label(r),
                    space.coset_label(c)
                )),
            });
        }
        cosets.push(c);
    }
    cmtype::validate_cm_type(space, &cosets, rho).map_err(at(field))
}

fn resolve_type(
    group: &Arc<FiniteGroup>,
    h: &[usize],
    phi: &[usize],
    rho: CentralInvolution,
    prefix: &str,
) -> Result<CMType, FieldError> {
    let path = |f: &str| {
        if prefix.is_empty() {
            f.to_string()
        } else {
            format!("{prefix}.{f}")
        }
    };
    let sub = resolve_subgroup(group, h, rho, &path("H"))?;
    let space = Arc::new(groups::right_cosets(group, &sub));
    resolve_phi(&space, phi, rho, &path("phi"))
}

impl PairJson {
    pub fn resolve(&self) -> Result<PairInput, FieldError> {
        let group = resolve_group(&self.group)?;
        let rho = resolve_rho(&group, self.rho)?;
        let factor = |f: &FactorJson, name: &str, default: &str| -> Result<CMFactor, FieldError> {
            let t = resolve_type(&group, &f.h, &f.phi, rho, name)?;
            Ok(CMFactor::new(t, f.label.clone().unwrap_or_else(|| default.to_string())))
        };
        let f1 = factor(&self.factor1, "factor1", "A1")?;
        let f2 = factor(&self.factor2, "factor2", "A2")?;
        PairInput::new(f1, f2).map_err(at("factor2"))
    }

    pub fn from_input(input: &PairInput, group: GroupSpec) -> PairJson {
        let f = |c: &CMFactor| FactorJson {
            h: c.cm_type.subgroup().elems().to_vec(),
            phi: c.cm_type.representatives(),
            label: Some(c.label.clone()),
        };
        PairJson {
            group,
            rho: input.rho.elem(),
            factor1: f(&input.factor1),
            factor2: f(&input.factor2),
        }
    }
}

impl CMTypeJson {
    pub fn resolve(&self) -> Result<CMType, FieldError> {
        let group = resolve_group(&self.group)?;
        let rho = resolve_rho(&group, self.rho)?;
        resolve_type(&group, &self.h, &self.phi, rho, "")
    }
}

/// Resolved search request.
#[derive(Clone, Debug)]
pub struct SearchInput {
    pub group: Arc<FiniteGroup>,
    pub rho: CentralInvolution,
    pub h1: Subgroup,
    pub h2: Subgroup,
}

impl SearchJson {
    pub fn resolve(&self) -> Result<SearchInput, FieldError> {
        let group = resolve_group(&self.group)?;
        let rho = resolve_rho(&group, self.rho)?;
        let h1 = resolve_subgroup(&group, &self.h1, rho, "H1")?;
        let h2 = resolve_subgroup(&group, &self.h2, rho, "H2")?;
        Ok(SearchInput { group, rho, h1, h2 })
    }
}
